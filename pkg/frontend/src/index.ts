export { parseSweepCsv, SchemaError, EXPECTED_COLUMNS } from "./schema.js";
export type { SweepRow } from "./schema.js";
export { renderFigure } from "./svg.js";
export type { Curve, FigureOptions } from "./svg.js";
export { decadeTicks, formatDecade, logPosition, padToDecades } from "./scale.js";
export type { LogScale } from "./scale.js";
export { main, parseArgs } from "./cli.js";
