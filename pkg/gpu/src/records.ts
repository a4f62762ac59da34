/**
 * Bridge to the benchmark harness's file formats.
 *
 * The harness consumes trial records as CSV with the exact header
 * `backend,n,trial,seconds,flops` (floats at 17 significant digits, so the
 * round trip is lossless) plus a JSON metadata sidecar at
 * `<path>.meta.json` with keys timestamp/host/cores/config. Files written
 * here feed straight into `tilebench analyze` / `tilebench report`.
 */

import { writeFileSync } from "node:fs";
import * as os from "node:os";

import type { Device } from "./executor.js";
import { gpuTiledMultiply } from "./multiply.js";
import { KernelLaunchConfig, defaultLaunchConfig } from "./limits.js";

export interface TrialRecord {
  backend: string;
  n: number;
  trial: number;
  seconds: number;
  flops: number;
}

export const CSV_HEADER = "backend,n,trial,seconds,flops";

/** Exact operation count of the classic n x n product: 2n^3 - n^2. */
export function flopCount(n: number): number {
  if (!Number.isInteger(n) || n < 1) {
    throw new RangeError(`matrix size must be a positive integer, got ${n}`);
  }
  return 2 * n ** 3 - n ** 2;
}

function fmt(x: number): string {
  return x.toPrecision(17);
}

export function recordsToCsv(records: TrialRecord[]): string {
  const lines = [CSV_HEADER];
  for (const r of records) {
    lines.push(`${r.backend},${r.n},${r.trial},${fmt(r.seconds)},${fmt(r.flops)}`);
  }
  return lines.join("\n") + "\n";
}

export interface RunMetadata {
  timestamp: string;
  host: string;
  cores: number;
  config: Record<string, unknown>;
}

export function captureMetadata(config: Record<string, unknown>): RunMetadata {
  return {
    timestamp: new Date().toISOString(),
    host: `${os.platform()} ${os.release()} / ${os.arch()} (simulated device)`,
    cores: os.cpus().length,
    config,
  };
}

export function writeRunFiles(path: string, records: TrialRecord[], metadata: RunMetadata): void {
  writeFileSync(path, recordsToCsv(records));
  writeFileSync(`${path}.meta.json`, JSON.stringify(metadata, null, 2) + "\n");
}

/** Seeded uniform [lo, hi] generator for benchmark operands. */
export function uniformMatrix(elements: number, lo: number, hi: number, seed: number): Float64Array {
  let state = seed >>> 0;
  const out = new Float64Array(elements);
  for (let i = 0; i < elements; i++) {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    out[i] = lo + (((t ^ (t >>> 14)) >>> 0) / 4294967296) * (hi - lo);
  }
  return out;
}

export interface BenchmarkOptions {
  backend?: string;
  sizes: number[];
  trials: number;
  warmup?: number;
  seed?: number;
  cfg?: KernelLaunchConfig;
  lo?: number;
  hi?: number;
}

/**
 * Run the square-matrix trial protocol on a device: fresh operands per
 * trial, untimed warmups, device-reported kernel seconds only.
 */
export function benchmarkDevice(device: Device, opts: BenchmarkOptions): TrialRecord[] {
  const backend = opts.backend ?? "gpu-tiled";
  const cfg = opts.cfg ?? defaultLaunchConfig();
  const warmup = opts.warmup ?? 1;
  const seed = opts.seed ?? 1;
  const lo = opts.lo ?? 2.0;
  const hi = opts.hi ?? 5.0;
  const records: TrialRecord[] = [];
  for (const n of opts.sizes) {
    const count = flopCount(n);
    for (let t = 0; t < warmup + opts.trials; t++) {
      const a = uniformMatrix(n * n, lo, hi, seed + 7919 * n + 2 * t);
      const b = uniformMatrix(n * n, lo, hi, seed + 7919 * n + 2 * t + 1);
      const { deviceSeconds } = gpuTiledMultiply(device, a, b, n, n, n, cfg);
      if (t < warmup) continue;
      records.push({
        backend,
        n,
        trial: t - warmup,
        seconds: deviceSeconds,
        flops: count / deviceSeconds,
      });
    }
  }
  return records;
}
