export {
  DumpError,
  getField,
  parseCsvDump,
  parseVtkDump,
  readDump,
  sameGrid,
} from "./io.js";
export type { FieldDump, GridInfo } from "./io.js";
export {
  contourLevels,
  fieldRange,
  isDegenerate,
  parseRange,
} from "./levels.js";
export type { LevelRange } from "./levels.js";
export { DEFAULT_STYLE, renderContours } from "./render.js";
export type { RenderResult, StyleConfig } from "./render.js";
export { expandGlob, renderSeries } from "./series.js";
