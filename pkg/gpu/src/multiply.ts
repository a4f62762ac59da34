/**
 * Public multiplication entry points over a device.
 *
 * `gpuTiledMultiply` is the ergonomic form; `gpuTiledMultiplyFlat` is the
 * flat foreign-function-shaped form (plain buffers, dimensions, tile edge,
 * out-parameters, integer status) whose exported symbol names are the
 * package's stable binding surface:
 *
 *   gpuTiledMultiplyFlat(a, b, m, k, n, tileEdge, outC, outSeconds) -> status
 *
 * Status codes: 0 ok, 1 bad dimensions, 2 launch config over device limits,
 * 3 no device.
 */

import type { Device } from "./executor.js";
import { tiledKernelThread } from "./kernel.js";
import { KernelLaunchConfig, defaultLaunchConfig } from "./limits.js";

export interface MultiplyResult {
  out: Float64Array;
  rows: number;
  cols: number;
  /** Kernel-only execution seconds as reported by the device. */
  deviceSeconds: number;
}

export function gpuTiledMultiply(
  device: Device,
  a: Float64Array,
  b: Float64Array,
  m: number,
  k: number,
  n: number,
  cfg: KernelLaunchConfig = defaultLaunchConfig(),
): MultiplyResult {
  if (!Number.isInteger(m) || !Number.isInteger(k) || !Number.isInteger(n) || m < 1 || k < 1 || n < 1) {
    throw new RangeError(`dimensions must be positive integers, got ${m}x${k} @ ${k}x${n}`);
  }
  const { out, deviceSeconds } = device.launch(
    tiledKernelThread,
    { m, k, n, tileEdge: cfg.tileEdge },
    cfg,
    a,
    b,
  );
  return { out, rows: m, cols: n, deviceSeconds };
}

export const STATUS_OK = 0;
export const STATUS_BAD_DIMS = 1;
export const STATUS_OVER_LIMITS = 2;
export const STATUS_NO_DEVICE = 3;

export function gpuTiledMultiplyFlat(
  device: Device | null,
  a: Float64Array,
  b: Float64Array,
  m: number,
  k: number,
  n: number,
  tileEdge: number,
  outC: Float64Array,
  outSeconds: Float64Array,
): number {
  if (device === null) return STATUS_NO_DEVICE;
  if (outC.length !== m * n || outSeconds.length < 1) return STATUS_BAD_DIMS;
  let result: MultiplyResult;
  try {
    result = gpuTiledMultiply(device, a, b, m, k, n, { tileEdge });
  } catch (err) {
    if (err instanceof RangeError) {
      return /limit|binary64/.test(err.message) ? STATUS_OVER_LIMITS : STATUS_BAD_DIMS;
    }
    throw err;
  }
  outC.set(result.out);
  outSeconds[0] = result.deviceSeconds;
  return STATUS_OK;
}
