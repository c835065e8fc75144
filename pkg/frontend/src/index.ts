export { parseTable, loadTable, requireColumns, column, SchemaError } from "./csv";
export type { Table, Cell } from "./csv";
export { FIGURES, renderFigure } from "./figures";
export type { Figure } from "./figures";
export * as svg from "./svg";
