/**
 * Devices that can launch a thread program over a block grid.
 *
 * The simulated device executes the kernel with honest barrier semantics:
 * between two barriers the threads of a block run in a seeded-shuffled order,
 * so any read that should have waited for a barrier sees whatever mix of
 * loaded and stale shared memory the schedule happened to produce - exactly
 * the failure a missing barrier causes on real hardware, minus the
 * nondeterminism. With the barriers in place the shuffle cannot change the
 * result, and a fixed seed makes runs reproducible.
 *
 * Launch timing covers kernel execution only; operand upload and result
 * download are plain copies outside the clock, mirroring device-event
 * timestamps that bracket the kernel alone.
 */

import { performance } from "node:perf_hooks";

import type { ProblemDims, SharedTiles, ThreadProgram } from "./kernel.js";
import {
  DeviceLimits,
  KernelLaunchConfig,
  SIMULATED_LIMITS,
  gridDim,
  validateLaunch,
} from "./limits.js";

export interface LaunchResult {
  /** The product buffer as the device wrote it. */
  out: Float64Array;
  /** Kernel execution time in seconds (copies excluded). */
  deviceSeconds: number;
}

export interface Device {
  readonly kind: "webgpu" | "simulated";
  readonly limits: DeviceLimits;
  launch(
    program: ThreadProgram,
    dims: ProblemDims,
    cfg: KernelLaunchConfig,
    a: Float64Array,
    b: Float64Array,
  ): LaunchResult;
}

/** Deterministic 32-bit mixer; good enough to shuffle thread schedules. */
function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function shuffled(order: Int32Array, rand: () => number): void {
  for (let i = order.length - 1; i > 0; i--) {
    const j = Math.floor(rand() * (i + 1));
    const tmp = order[i];
    order[i] = order[j];
    order[j] = tmp;
  }
}

export class SimulatedDevice implements Device {
  readonly kind = "simulated" as const;
  readonly limits: DeviceLimits;
  private readonly scheduleSeed: number;

  constructor(scheduleSeed = 0x7d0, limits: DeviceLimits = SIMULATED_LIMITS) {
    this.scheduleSeed = scheduleSeed;
    this.limits = limits;
  }

  launch(
    program: ThreadProgram,
    dims: ProblemDims,
    cfg: KernelLaunchConfig,
    a: Float64Array,
    b: Float64Array,
  ): LaunchResult {
    validateLaunch(cfg, this.limits);
    if (a.length !== dims.m * dims.k || b.length !== dims.k * dims.n) {
      throw new RangeError(
        `buffer sizes ${a.length}/${b.length} do not match dims ` +
          `${dims.m}x${dims.k} @ ${dims.k}x${dims.n}`,
      );
    }
    const K = cfg.tileEdge;
    // "Upload": device-global copies, outside the kernel clock.
    const devA = a.slice();
    const devB = b.slice();
    const devC = new Float64Array(dims.m * dims.n);
    const rand = mulberry32(this.scheduleSeed);

    const gridX = gridDim(dims.n, K);
    const gridY = gridDim(dims.m, K);
    const threadsPerBlock = K * K;
    const order = new Int32Array(threadsPerBlock);

    const started = performance.now();
    for (let by = 0; by < gridY; by++) {
      for (let bx = 0; bx < gridX; bx++) {
        const shared: SharedTiles = {
          left: new Float64Array(threadsPerBlock),
          right: new Float64Array(threadsPerBlock),
        };
        const threads: Generator<void, void, void>[] = new Array(threadsPerBlock);
        for (let ty = 0; ty < K; ty++) {
          for (let tx = 0; tx < K; tx++) {
            threads[ty * K + tx] = program(
              { bx, by, tx, ty },
              { ...dims, tileEdge: K },
              devA,
              devB,
              devC,
              shared,
            );
          }
        }
        for (let i = 0; i < threadsPerBlock; i++) order[i] = i;
        // Run segment by segment: a round advances every thread to its next
        // barrier (or completion) in shuffled order. Threads of one block
        // must hit barriers uniformly, as on hardware.
        let live = threadsPerBlock;
        while (live > 0) {
          shuffled(order, rand);
          let finished = 0;
          for (let i = 0; i < threadsPerBlock; i++) {
            if (threads[order[i]].next().done) finished++;
          }
          if (finished !== 0 && finished !== live) {
            throw new Error(
              `barrier divergence: ${finished} of ${live} threads exited mid-phase`,
            );
          }
          live -= finished;
        }
      }
    }
    const deviceSeconds = (performance.now() - started) / 1000;
    return { out: devC, deviceSeconds };
  }
}

/**
 * Probe for a real fp64-capable device.
 *
 * WebGPU (when a runtime exposes it) has no binary64 shader arithmetic, so
 * it cannot honor this kernel's float64 contract; Node 20 exposes no device
 * API at all. The probe therefore reports absence rather than offering a
 * device that would silently compute in the wrong precision. Absence is not
 * an error: registration simply becomes a no-op.
 */
export function probeDevice(): Device | null {
  const gpu = (globalThis as { navigator?: { gpu?: unknown } }).navigator?.gpu;
  if (gpu === undefined) return null;
  return null; // present but fp64-incapable: same answer, see note above
}
