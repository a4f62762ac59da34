/**
 * The two-barrier discipline, made observable.
 *
 * The executor interleaves threads in a seeded-shuffled order between
 * barriers, so deleting either barrier from the kernel produces concretely
 * wrong results here, the deterministic analog of the nondeterministic
 * corruption a real device would show.
 */

import { describe, expect, it } from "vitest";

import { SimulatedDevice } from "../src/executor.js";
import { maxAbsRelDiff, naiveMultiply, tiledKernelThread } from "../src/kernel.js";
import type { ThreadProgram } from "../src/kernel.js";
import { uniformMatrix } from "../src/records.js";

const N = 64;
const TILE = 32;

function operands(): [Float64Array, Float64Array, Float64Array] {
  const a = uniformMatrix(N * N, 2, 5, 21);
  const b = uniformMatrix(N * N, 2, 5, 22);
  return [a, b, naiveMultiply(a, b, N, N, N)];
}

function launch(program: ThreadProgram, a: Float64Array, b: Float64Array): Float64Array {
  return new SimulatedDevice().launch(
    program,
    { m: N, k: N, n: N, tileEdge: TILE },
    { tileEdge: TILE },
    a,
    b,
  ).out;
}

/** Kernel missing the barrier between load and accumulate. */
const missingLoadBarrier: ThreadProgram = function* (ctx, dims, a, b, c, shared) {
  const { bx, by, tx, ty } = ctx;
  const { m, k, n, tileEdge: K } = dims;
  const row = by * K + ty;
  const col = bx * K + tx;
  const slot = ty * K + tx;
  let acc = 0;
  const phases = Math.ceil(k / K);
  for (let phase = 0; phase < phases; phase++) {
    const aCol = phase * K + tx;
    shared.left[slot] = row < m && aCol < k ? a[row * k + aCol] : 0;
    const bRow = phase * K + ty;
    shared.right[slot] = bRow < k && col < n ? b[bRow * n + col] : 0;
    // missing: yield (load barrier)
    for (let kk = 0; kk < K; kk++) {
      acc += shared.left[ty * K + kk] * shared.right[kk * K + tx];
    }
    yield; // keeps barrier counts uniform so the launch itself completes
    yield;
  }
  if (row < m && col < n) c[row * n + col] = acc;
};

/** Kernel missing the barrier between accumulate and the next load. */
const missingReuseBarrier: ThreadProgram = function* (ctx, dims, a, b, c, shared) {
  const { bx, by, tx, ty } = ctx;
  const { m, k, n, tileEdge: K } = dims;
  const row = by * K + ty;
  const col = bx * K + tx;
  const slot = ty * K + tx;
  let acc = 0;
  const phases = Math.ceil(k / K);
  for (let phase = 0; phase < phases; phase++) {
    const aCol = phase * K + tx;
    shared.left[slot] = row < m && aCol < k ? a[row * k + aCol] : 0;
    const bRow = phase * K + ty;
    shared.right[slot] = bRow < k && col < n ? b[bRow * n + col] : 0;
    yield;
    yield; // misplaced: nothing separates this phase's reads...
    for (let kk = 0; kk < K; kk++) {
      acc += shared.left[ty * K + kk] * shared.right[kk * K + tx];
    }
    // ...from the next phase's loads
  }
  if (row < m && col < n) c[row * n + col] = acc;
};

describe("barrier discipline", () => {
  it("with both barriers the shuffled schedule is harmless", () => {
    const [a, b, want] = operands();
    expect(maxAbsRelDiff(launch(tiledKernelThread, a, b), want)).toBeLessThanOrEqual(1e-10);
  });

  it("removing the load barrier corrupts the product", () => {
    const [a, b, want] = operands();
    expect(maxAbsRelDiff(launch(missingLoadBarrier, a, b), want)).toBeGreaterThan(1e-6);
  });

  it("removing the reuse barrier corrupts the product", () => {
    const [a, b, want] = operands();
    expect(maxAbsRelDiff(launch(missingReuseBarrier, a, b), want)).toBeGreaterThan(1e-6);
  });

  it("non-uniform barrier counts are rejected as divergence", () => {
    const divergent: ThreadProgram = function* (ctx) {
      if (ctx.tx === 0 && ctx.ty === 0) {
        yield; // only one thread ever barriers
      }
    };
    const a = new Float64Array(4);
    const b = new Float64Array(4);
    expect(() =>
      new SimulatedDevice().launch(
        divergent,
        { m: 2, k: 2, n: 2, tileEdge: 2 },
        { tileEdge: 2 },
        a,
        b,
      ),
    ).toThrow(/divergence/);
  });
});
