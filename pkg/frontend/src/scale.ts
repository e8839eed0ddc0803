/** Logarithmic axis mapping and decade ticks. */

export interface LogScale {
  min: number;
  max: number;
  pixelMin: number;
  pixelMax: number;
}

export function logPosition(scale: LogScale, value: number): number {
  const t = (Math.log10(value) - Math.log10(scale.min)) / (Math.log10(scale.max) - Math.log10(scale.min));
  return scale.pixelMin + t * (scale.pixelMax - scale.pixelMin);
}

/** Powers of ten covering [min, max]. */
export function decadeTicks(min: number, max: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(min) - 1e-9); e <= Math.floor(Math.log10(max) + 1e-9); e++) {
    ticks.push(10 ** e);
  }
  return ticks;
}

export function formatDecade(value: number): string {
  const exponent = Math.round(Math.log10(value));
  return `1e${exponent}`;
}

/** Round a range outwards to whole decades, so curves never touch the frame. */
export function padToDecades(min: number, max: number): [number, number] {
  return [10 ** Math.floor(Math.log10(min)), 10 ** Math.ceil(Math.log10(max))];
}
