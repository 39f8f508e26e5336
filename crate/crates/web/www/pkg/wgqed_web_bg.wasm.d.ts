/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_plot_free: (a: number, b: number) => void;
export const chiralCurves: (a: number, b: number, c: number) => [number, number, number];
export const continuumProfile: (a: number, b: number, c: number) => [number, number, number];
export const disorderAverage: (a: number, b: number, c: number, d: bigint, e: number, f: number) => [number, number, number];
export const plot_names: (a: number) => [number, number];
export const plot_series: (a: number, b: number) => [number, number];
export const plot_x: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __externref_drop_slice: (a: number, b: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
