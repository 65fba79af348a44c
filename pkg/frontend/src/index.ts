/**
 * Array-in/array-out bindings for the pathsig signature library.
 *
 * The binding layer contains no math of its own: every call shells out to
 * the pathsig CLI, which prints numbers with 17 significant digits, so the
 * parsed doubles are bit-identical to the core library's results.  All
 * validation errors and backend failures are thrown as catchable errors;
 * the host process is never aborted.
 */

import { execFileSync } from 'node:child_process';
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';

/** Raised when the backend CLI reports a failure (exit code 2 or 3). */
export class PathsigError extends Error {
    constructor(message: string, public readonly exitCode: number | null) {
        super(message);
        this.name = 'PathsigError';
    }
}

export interface BindingOptions {
    /** Command used to launch the backend; defaults to $PATHSIG_PYTHON or "python3". */
    python?: string;
}

export interface FeatureMatrixResult {
    words: string[];
    rows: number[][];
    labels: number[] | null;
    means: number[] | null;
    stds: number[] | null;
}

export interface FeatureOptions extends BindingOptions {
    depth?: number;
    embedding?: 'linear' | 'rectilinear' | 'leadlag' | 'cumsum-leadlag' | 'leadlag-time' | 'missing';
    log?: boolean;
    standardize?: boolean;
    /** Per-stream class labels, appended as a trailing CSV column. */
    labels?: number[];
}

function backendCommand(options?: BindingOptions): string {
    return options?.python ?? process.env.PATHSIG_PYTHON ?? 'python3';
}

function checkDepth(depth: number): void {
    if (!Number.isInteger(depth) || depth < 1) {
        throw new RangeError(`depth must be a positive integer, got ${depth}`);
    }
}

function checkFiniteVector(values: readonly number[], what: string): void {
    if (!Array.isArray(values) || values.length === 0) {
        throw new TypeError(`${what} must be a non-empty array of numbers`);
    }
    for (const v of values) {
        if (typeof v !== 'number' || !Number.isFinite(v)) {
            throw new TypeError(`${what} must contain finite numbers, got ${v}`);
        }
    }
}

function checkPath(path: readonly (readonly number[])[]): number {
    if (!Array.isArray(path) || path.length === 0) {
        throw new TypeError('path must be a non-empty array of points');
    }
    const dim = Array.isArray(path[0]) ? path[0].length : -1;
    if (dim < 1) {
        throw new TypeError('path points must be non-empty arrays of numbers');
    }
    for (const row of path) {
        if (!Array.isArray(row) || row.length !== dim) {
            throw new TypeError(`path rows must all have ${dim} coordinates`);
        }
        checkFiniteVector(row, 'path row');
    }
    return dim;
}

function run(args: string[], inputCsv: string, outputName: string, options?: BindingOptions): string {
    const dir = mkdtempSync(join(tmpdir(), 'pathsig-'));
    try {
        const inputFile = join(dir, 'input.csv');
        const outputFile = join(dir, outputName);
        writeFileSync(inputFile, inputCsv);
        try {
            execFileSync(backendCommand(options), ['-m', 'pathsig', args[0], inputFile, ...args.slice(1), '-o', outputFile], {
                stdio: ['ignore', 'pipe', 'pipe'],
            });
        } catch (err) {
            const failure = err as { status?: number | null; stderr?: Buffer; code?: string };
            const detail = failure.stderr?.toString().trim() || failure.code || String(err);
            throw new PathsigError(`pathsig backend failed: ${detail}`, failure.status ?? null);
        }
        return readFileSync(outputFile, 'utf8');
    } finally {
        rmSync(dir, { recursive: true, force: true });
    }
}

function toCsv(rows: readonly (readonly number[])[]): string {
    return rows.map((row) => row.join(',')).join('\n') + '\n';
}

function parseNumericCsv(text: string): number[][] {
    const lines = text.trim().split('\n');
    return lines.slice(1).map((line) => line.split(',').map(Number));
}

/**
 * Truncated signature coefficients of an (N, d) path, flat and level-major;
 * index 0 is the empty-word term (always 1).
 */
export function sig(path: readonly (readonly number[])[], depth: number, options?: BindingOptions): Float64Array {
    checkPath(path);
    checkDepth(depth);
    const out = run(
        ['sig', '--depth', String(depth), '--embedding', 'linear', '--layout', 'columns'],
        toCsv(path),
        'sig.csv',
        options,
    );
    return Float64Array.from(parseNumericCsv(out)[0]);
}

/** Log-signature coordinates of an (N, d) path over the Lyndon-word basis. */
export function logsig(path: readonly (readonly number[])[], depth: number, options?: BindingOptions): Float64Array {
    checkPath(path);
    checkDepth(depth);
    const out = run(
        ['sig', '--depth', String(depth), '--embedding', 'linear', '--layout', 'columns', '--log'],
        toCsv(path),
        'logsig.csv',
        options,
    );
    return Float64Array.from(parseNumericCsv(out)[0]);
}

/**
 * Lead-lag path of a scalar stream: (2n - 1) rows of [lagged, leading]
 * copies, oriented so the enclosed signed area is minus half the
 * quadratic variation.
 */
export function leadlag(values: readonly number[], options?: BindingOptions): number[][] {
    checkFiniteVector(values, 'values');
    const out = run(['embed', '--embedding', 'leadlag'], values.join('\n') + '\n', 'path.csv', options);
    return parseNumericCsv(out);
}

/** Partial sums with a prepended zero basepoint; length n + 1. */
export function cumsumBasepoint(values: readonly number[], options?: BindingOptions): Float64Array {
    checkFiniteVector(values, 'values');
    const out = run(['embed', '--embedding', 'cumsum-basepoint'], values.join('\n') + '\n', 'path.csv', options);
    return Float64Array.from(parseNumericCsv(out).map((row) => row[0]));
}

/**
 * Signature feature matrix of many scalar streams (one row per stream,
 * constant term dropped), with optional standardization and labels.
 */
export function features(streams: readonly (readonly number[])[], options?: FeatureOptions): FeatureMatrixResult {
    if (!Array.isArray(streams) || streams.length === 0) {
        throw new TypeError('streams must be a non-empty array of streams');
    }
    const allowMissing = options?.embedding === 'missing';
    streams.forEach((stream, i) => {
        if (!Array.isArray(stream) || stream.length === 0) {
            throw new TypeError(`stream ${i} must be a non-empty array of numbers`);
        }
        for (const v of stream) {
            if (typeof v !== 'number' || (!Number.isFinite(v) && !(allowMissing && Number.isNaN(v)))) {
                throw new TypeError(`stream ${i} must contain finite numbers, got ${v}`);
            }
        }
    });
    const depth = options?.depth ?? 2;
    checkDepth(depth);
    const labels = options?.labels;
    if (labels !== undefined && labels.length !== streams.length) {
        throw new TypeError(`${labels.length} labels for ${streams.length} streams`);
    }
    const body = streams
        .map((stream, i) => {
            const cells = stream.map((v: number) => (Number.isNaN(v) ? '' : String(v)));
            if (labels !== undefined) cells.push(String(labels[i]));
            return cells.join(',');
        })
        .join('\n');
    const args = ['features', '--depth', String(depth), '--embedding', options?.embedding ?? 'cumsum-leadlag'];
    if (options?.log) args.push('--log');
    if (options?.standardize) args.push('--standardize');
    if (labels !== undefined) args.push('--labels');
    const out = run(args, body + '\n', 'features.json', options);
    return JSON.parse(out) as FeatureMatrixResult;
}
