/* tslint:disable */
/* eslint-disable */

/**
 * One mass profile and potential in a field of fixed strength; the flux
 * is supplied per call.
 */
export class System {
    free(): void;
    [Symbol.dispose](): void;
    energyVsFlux(m: number, n_rho: number, alpha_min: number, alpha_max: number, samples: number): Float64Array;
    constructor(model: string, coupling: number, potential: Float64Array, e: number, b0: number, kz2: number);
    radialSamples(alpha: number, m: number, n_rho: number, rho_max: number, samples: number): Float64Array;
}

/**
 * The `n + 1` values of δ̃ truncating `H_B(α̃, β̃, α̃+2+2n, δ̃)` at degree `n`.
 */
export function heunRoots(alpha: number, beta: number, n: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_system_free: (a: number, b: number) => void;
    readonly heunRoots: (a: number, b: number, c: number) => [number, number, number, number];
    readonly system_energyVsFlux: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly system_new: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
    readonly system_radialSamples: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
