/* tslint:disable */
/* eslint-disable */

export class Plot {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    names(): string[];
    /**
     * Series `i`; `NaN` marks points where it is undefined.
     */
    series(i: number): Float64Array;
    x(): Float64Array;
}

export function chiralCurves(n_atoms: number, kappa_t_max: number, points: number): Plot;

export function continuumProfile(kappa_t: number, ksigma: number, points: number): Plot;

export function disorderAverage(n_atoms: number, ksigma: number, realizations: number, seed: bigint, kappa_t_max: number, points: number): Plot;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_plot_free: (a: number, b: number) => void;
    readonly chiralCurves: (a: number, b: number, c: number) => [number, number, number];
    readonly continuumProfile: (a: number, b: number, c: number) => [number, number, number];
    readonly disorderAverage: (a: number, b: number, c: number, d: bigint, e: number, f: number) => [number, number, number];
    readonly plot_names: (a: number) => [number, number];
    readonly plot_series: (a: number, b: number) => [number, number];
    readonly plot_x: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __externref_drop_slice: (a: number, b: number) => void;
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
