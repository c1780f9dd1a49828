/* tslint:disable */
/* eslint-disable */

/**
 * Splitting of `F^s_*(O(a))`.
 */
export function decompose_json(n: number, p: number, s: number, a: number): string;

/**
 * Sampled density on `[0, n]`; `p = 0` means the limit `p -> inf`.
 */
export function density_curve(n: number, p: number, samples: number): string;

/**
 * Bracket for the HK multiplicity, with the limit value `1 + m_{n+1}` alongside.
 */
export function ehk_bracket(n: number, p: number, digits: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly decompose_json: (a: number, b: number, c: number, d: number) => [number, number];
    readonly density_curve: (a: number, b: number, c: number) => [number, number];
    readonly ehk_bracket: (a: number, b: number, c: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
