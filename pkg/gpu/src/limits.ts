/**
 * Device limits and kernel launch configuration.
 *
 * A launch uses one thread block per output tile: block = tileEdge x
 * tileEdge threads, grid = ceil(rows/tileEdge) x ceil(cols/tileEdge) blocks.
 * Two shared tiles (left and right operand) live in block-shared memory, so
 * the shared allocation is 2 * tileEdge^2 * 8 bytes.
 */

export interface DeviceLimits {
  /** Maximum threads per block (1024 on the server-class parts this targets). */
  maxThreadsPerBlock: number;
  /** Shared memory available to one block, in bytes. */
  maxSharedBytesPerBlock: number;
  /** Whether the device does IEEE-754 binary64 arithmetic. */
  fp64: boolean;
}

/** Limits of the reference simulated device (modeled on a 64 KB/SM part). */
export const SIMULATED_LIMITS: DeviceLimits = {
  maxThreadsPerBlock: 1024,
  maxSharedBytesPerBlock: 64 * 1024,
  fp64: true,
};

export const BYTES_PER_ELEMENT = 8;

export interface KernelLaunchConfig {
  /** Tile edge K; the block is K x K threads. Default 32 (= 1024 threads). */
  tileEdge: number;
}

export const DEFAULT_TILE_EDGE = 32;

export function defaultLaunchConfig(): KernelLaunchConfig {
  return { tileEdge: DEFAULT_TILE_EDGE };
}

/** Threads in one block for a config. */
export function blockThreads(cfg: KernelLaunchConfig): number {
  return cfg.tileEdge * cfg.tileEdge;
}

/** Shared bytes one block allocates for its two operand tiles. */
export function sharedBytes(cfg: KernelLaunchConfig): number {
  return 2 * cfg.tileEdge * cfg.tileEdge * BYTES_PER_ELEMENT;
}

/** Blocks along one axis of length `extent`. */
export function gridDim(extent: number, tileEdge: number): number {
  return Math.ceil(extent / tileEdge);
}

/**
 * Validate a launch config against device limits.
 * Throws RangeError with the violated budget spelled out.
 */
export function validateLaunch(cfg: KernelLaunchConfig, limits: DeviceLimits): void {
  if (!Number.isInteger(cfg.tileEdge) || cfg.tileEdge < 1) {
    throw new RangeError(`tile edge must be a positive integer, got ${cfg.tileEdge}`);
  }
  const threads = blockThreads(cfg);
  if (threads > limits.maxThreadsPerBlock) {
    throw new RangeError(
      `block of ${threads} threads (${cfg.tileEdge}x${cfg.tileEdge}) exceeds ` +
        `the device limit of ${limits.maxThreadsPerBlock} threads per block`,
    );
  }
  const shared = sharedBytes(cfg);
  if (shared > limits.maxSharedBytesPerBlock) {
    throw new RangeError(
      `shared tiles need ${shared} bytes, over the per-block limit of ` +
        `${limits.maxSharedBytesPerBlock} bytes`,
    );
  }
  if (!limits.fp64) {
    throw new RangeError("device cannot do binary64 arithmetic");
  }
}
