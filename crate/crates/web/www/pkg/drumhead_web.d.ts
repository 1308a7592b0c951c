/* tslint:disable */
/* eslint-disable */

/**
 * One solved membrane, kept so modes can be drawn without solving again.
 */
export class Membrane {
    free(): void;
    [Symbol.dispose](): void;
    modeCount(): number;
    constructor(sigma: number, k: number, xi: number, eps: number, n_r: number, n_theta: number, n_modes: number);
    /**
     * RGBA raster of the eigenfunction with 1-based `rank`.
     */
    renderMode(rank: number, size: number): Uint8Array;
    /**
     * Spectrum report plus `quality` as JSON text.
     */
    spectrumJson(normalize: string): string;
}

export function render_density(sigma: number, k: number, xi: number, eps: number, size: number): Uint8Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_membrane_free: (a: number, b: number) => void;
    readonly membrane_modeCount: (a: number) => number;
    readonly membrane_new: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly membrane_renderMode: (a: number, b: number, c: number) => [number, number, number, number];
    readonly membrane_spectrumJson: (a: number, b: number, c: number) => [number, number, number, number];
    readonly render_density: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
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
