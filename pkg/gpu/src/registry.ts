/**
 * Backend registration, mirroring the harness's external-backend semantics:
 * unique names, conflict on duplicates, name-based resolution.
 *
 * `registerGpuBackend` adds "gpu-tiled" only when a capable device is
 * actually present; with no device it is a silent no-op so everything else
 * keeps working unchanged.
 */

import { Device, probeDevice } from "./executor.js";
import { gpuTiledMultiply } from "./multiply.js";
import { KernelLaunchConfig, defaultLaunchConfig } from "./limits.js";

export interface BackendDescriptor {
  name: string;
  parallel: boolean;
  requiresExternal: boolean;
}

export type MultiplyFn = (
  a: Float64Array,
  b: Float64Array,
  m: number,
  k: number,
  n: number,
) => { out: Float64Array; deviceSeconds: number };

export class BackendRegistry {
  private entries = new Map<string, { descriptor: BackendDescriptor; fn: MultiplyFn }>();

  register(descriptor: BackendDescriptor, fn: MultiplyFn): BackendDescriptor {
    if (this.entries.has(descriptor.name)) {
      throw new Error(`backend '${descriptor.name}' is already registered`);
    }
    this.entries.set(descriptor.name, { descriptor, fn });
    return descriptor;
  }

  names(): string[] {
    return [...this.entries.keys()];
  }

  resolve(name: string): MultiplyFn {
    const entry = this.entries.get(name);
    if (!entry) {
      throw new Error(`unknown backend '${name}'; registered: ${this.names().join(", ")}`);
    }
    return entry.fn;
  }
}

export const GPU_BACKEND_NAME = "gpu-tiled";

/**
 * Register the device kernel when a device exists; no-op otherwise.
 * Returns the descriptor when registered, null when no device was found.
 */
export function registerGpuBackend(
  registry: BackendRegistry,
  device: Device | null = probeDevice(),
  cfg: KernelLaunchConfig = defaultLaunchConfig(),
): BackendDescriptor | null {
  if (device === null) return null;
  return registry.register(
    { name: GPU_BACKEND_NAME, parallel: true, requiresExternal: true },
    (a, b, m, k, n) => {
      const result = gpuTiledMultiply(device, a, b, m, k, n, cfg);
      return { out: result.out, deviceSeconds: result.deviceSeconds };
    },
  );
}
