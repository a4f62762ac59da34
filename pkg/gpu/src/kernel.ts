/**
 * The tiled multiplication kernel, written as a per-thread program.
 *
 * One block computes one output tile. Per phase along the inner dimension:
 * every thread cooperatively loads one cell of the left tile and one of the
 * right tile into block-shared memory (zero-filled where the tile hangs off
 * the matrix edge), the block barriers, each thread accumulates its cell's
 * partial dot product into a register, and the block barriers again before
 * the next phase may overwrite the shared tiles. After the last phase each
 * thread writes its register to global memory behind a boundary check, so
 * every output element is written exactly once by exactly one thread.
 *
 * `yield` is the barrier: the executor runs all threads of a block up to
 * their next yield before any thread proceeds past it. The zero-fill keeps
 * the inner accumulation loop branch-free, and padding cells contribute
 * exactly 0 to every dot product.
 */

export interface ThreadContext {
  /** Block coordinates in the grid (tile column, tile row). */
  bx: number;
  by: number;
  /** Thread coordinates inside the block. */
  tx: number;
  ty: number;
}

export interface ProblemDims {
  /** Left operand is m x k, right is k x n, product is m x n (row-major). */
  m: number;
  k: number;
  n: number;
  tileEdge: number;
}

export interface SharedTiles {
  left: Float64Array;
  right: Float64Array;
}

export type ThreadProgram = (
  ctx: ThreadContext,
  dims: ProblemDims,
  a: Float64Array,
  b: Float64Array,
  c: Float64Array,
  shared: SharedTiles,
) => Generator<void, void, void>;

export const tiledKernelThread: ThreadProgram = function* (ctx, dims, a, b, c, shared) {
  const { bx, by, tx, ty } = ctx;
  const { m, k, n, tileEdge: K } = dims;
  const row = by * K + ty;
  const col = bx * K + tx;
  const slot = ty * K + tx;

  let acc = 0; // register-held running sum for this thread's output cell
  const phases = Math.ceil(k / K);
  for (let phase = 0; phase < phases; phase++) {
    const aCol = phase * K + tx;
    shared.left[slot] = row < m && aCol < k ? a[row * k + aCol] : 0;
    const bRow = phase * K + ty;
    shared.right[slot] = bRow < k && col < n ? b[bRow * n + col] : 0;

    yield; // barrier: every tile cell loaded before anyone reads

    const rowBase = ty * K;
    for (let kk = 0; kk < K; kk++) {
      acc += shared.left[rowBase + kk] * shared.right[kk * K + tx];
    }

    yield; // barrier: every read done before the next phase overwrites
  }

  if (row < m && col < n) {
    c[row * n + col] = acc;
  }
};

/** Untiled reference product used as the on-host oracle. */
export function naiveMultiply(
  a: Float64Array,
  b: Float64Array,
  m: number,
  k: number,
  n: number,
): Float64Array {
  const c = new Float64Array(m * n);
  for (let i = 0; i < m; i++) {
    for (let j = 0; j < n; j++) {
      let sum = 0;
      for (let p = 0; p < k; p++) {
        sum += a[i * k + p] * b[p * n + j];
      }
      c[i * n + j] = sum;
    }
  }
  return c;
}

/** Largest elementwise |a-b| / max(|a|, |b|, 1). */
export function maxAbsRelDiff(a: Float64Array, b: Float64Array): number {
  if (a.length !== b.length) {
    throw new RangeError(`length mismatch: ${a.length} vs ${b.length}`);
  }
  let worst = 0;
  for (let i = 0; i < a.length; i++) {
    const denom = Math.max(Math.abs(a[i]), Math.abs(b[i]), 1.0);
    const diff = Math.abs(a[i] - b[i]) / denom;
    if (diff > worst) worst = diff;
  }
  return worst;
}
