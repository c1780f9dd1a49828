/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const decompose_json: (a: number, b: number, c: number, d: number) => [number, number];
export const density_curve: (a: number, b: number, c: number) => [number, number];
export const ehk_bracket: (a: number, b: number, c: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
