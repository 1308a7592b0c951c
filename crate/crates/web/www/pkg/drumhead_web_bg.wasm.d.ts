/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_membrane_free: (a: number, b: number) => void;
export const membrane_modeCount: (a: number) => number;
export const membrane_new: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const membrane_renderMode: (a: number, b: number, c: number) => [number, number, number, number];
export const membrane_spectrumJson: (a: number, b: number, c: number) => [number, number, number, number];
export const render_density: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
