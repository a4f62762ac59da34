export {
  BYTES_PER_ELEMENT,
  DEFAULT_TILE_EDGE,
  SIMULATED_LIMITS,
  blockThreads,
  defaultLaunchConfig,
  gridDim,
  sharedBytes,
  validateLaunch,
} from "./limits.js";
export type { DeviceLimits, KernelLaunchConfig } from "./limits.js";
export { maxAbsRelDiff, naiveMultiply, tiledKernelThread } from "./kernel.js";
export type { ProblemDims, SharedTiles, ThreadContext, ThreadProgram } from "./kernel.js";
export { SimulatedDevice, probeDevice } from "./executor.js";
export type { Device, LaunchResult } from "./executor.js";
export {
  STATUS_BAD_DIMS,
  STATUS_NO_DEVICE,
  STATUS_OK,
  STATUS_OVER_LIMITS,
  gpuTiledMultiply,
  gpuTiledMultiplyFlat,
} from "./multiply.js";
export type { MultiplyResult } from "./multiply.js";
export { BackendRegistry, GPU_BACKEND_NAME, registerGpuBackend } from "./registry.js";
export type { BackendDescriptor, MultiplyFn } from "./registry.js";
export {
  CSV_HEADER,
  benchmarkDevice,
  captureMetadata,
  flopCount,
  recordsToCsv,
  uniformMatrix,
  writeRunFiles,
} from "./records.js";
export type { BenchmarkOptions, RunMetadata, TrialRecord } from "./records.js";
