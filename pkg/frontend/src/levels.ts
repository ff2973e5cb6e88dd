/** Contour level placement and range handling. */

export interface LevelRange {
  min: number;
  max: number;
}

/**
 * N equally spaced levels between a and b inclusive:
 * a + k (b - a) / (N - 1) for k = 0..N-1.  N=2 gives exactly {a, b}.
 */
export function contourLevels(range: LevelRange, count: number): number[] {
  if (!Number.isInteger(count) || count < 2) {
    throw new RangeError(`contour count must be an integer >= 2, got ${count}`);
  }
  if (!(range.max >= range.min)) {
    throw new RangeError(`invalid level range [${range.min}, ${range.max}]`);
  }
  const levels: number[] = [];
  for (let k = 0; k < count; k++) {
    levels.push(range.min + (k * (range.max - range.min)) / (count - 1));
  }
  return levels;
}

export function fieldRange(values: ArrayLike<number>): LevelRange {
  let lo = Infinity;
  let hi = -Infinity;
  for (let i = 0; i < values.length; i++) {
    const v = values[i];
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!(lo <= hi)) throw new RangeError("cannot take the range of no values");
  return { min: lo, max: hi };
}

/** Parse a CLI range spec 'min:max' (either bound may be negative). */
export function parseRange(spec: string): LevelRange {
  const sep = spec.indexOf(":", 1); // skip a leading minus sign
  if (sep < 0) throw new RangeError(`range must be 'min:max', got '${spec}'`);
  const min = Number(spec.slice(0, sep));
  const max = Number(spec.slice(sep + 1));
  if (Number.isNaN(min) || Number.isNaN(max)) {
    throw new RangeError(`non-numeric range '${spec}'`);
  }
  return { min, max };
}

export function isDegenerate(range: LevelRange): boolean {
  return range.max === range.min;
}
