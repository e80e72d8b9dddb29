/* tslint:disable */
/* eslint-disable */

/**
 * Analyse a graph document: validation, balance, S³ check, summand bound,
 * plus DOT and SVG drawings.
 */
export function analyze_graph(document: string): string;

/**
 * Build one of the graph families (`lemma34`, `prop35`, `section5-g`,
 * `section5-l`) and analyse it.
 */
export function generate_family(family: string, n: number): string;

/**
 * The Lorenz template with the twist bit of strip `i` taken from bit `i`
 * of `twists`, as a template document.
 */
export function lorenz_document(twists: number): string;

/**
 * Boundary of the thickened template described by a template document.
 */
export function template_boundary(document: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyze_graph: (a: number, b: number) => [number, number];
    readonly generate_family: (a: number, b: number, c: number) => [number, number];
    readonly lorenz_document: (a: number) => [number, number];
    readonly template_boundary: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
