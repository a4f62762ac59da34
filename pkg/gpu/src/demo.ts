/**
 * Walk-through of the device kernel on the simulated device, ending with
 * record files the host harness can analyze:
 *
 *   npm run demo
 *   tilebench analyze --in /tmp/gpu-records.csv --bootstrap 1000
 */

import { SimulatedDevice, probeDevice } from "./executor.js";
import { maxAbsRelDiff, naiveMultiply } from "./kernel.js";
import { blockThreads, gridDim, sharedBytes } from "./limits.js";
import { gpuTiledMultiply } from "./multiply.js";
import { BackendRegistry, registerGpuBackend } from "./registry.js";
import { benchmarkDevice, captureMetadata, uniformMatrix, writeRunFiles } from "./records.js";

const real = probeDevice();
console.log("real fp64 device:", real ? real.kind : "none (registration is a no-op)");

const device = new SimulatedDevice();
const registry = new BackendRegistry();
registerGpuBackend(registry, device);
console.log("backends with simulated device:", registry.names().join(", "));

// N = 33 with a 32-wide tile: every border block has hanging threads, so the
// zero-filled loads and boundary-checked writes both get exercised.
const n = 33;
const a = uniformMatrix(n * n, 2, 5, 1);
const b = uniformMatrix(n * n, 2, 5, 2);
const cfg = { tileEdge: 32 };
console.log(
  `launch: grid ${gridDim(n, cfg.tileEdge)}x${gridDim(n, cfg.tileEdge)}, ` +
    `block ${blockThreads(cfg)} threads, shared ${sharedBytes(cfg)} bytes`,
);
const result = gpuTiledMultiply(device, a, b, n, n, n, cfg);
const oracle = naiveMultiply(a, b, n, n, n);
console.log("max relative diff vs host oracle:", maxAbsRelDiff(result.out, oracle));
console.log(`kernel time (simulated device): ${(result.deviceSeconds * 1e3).toFixed(2)} ms`);

// Trial records in the harness's CSV schema + metadata sidecar.
const records = benchmarkDevice(device, { sizes: [16, 32], trials: 5, warmup: 1 });
const metadata = captureMetadata({ sizes: [16, 32], trials: 5, tile: 32, device: "simulated" });
writeRunFiles("/tmp/gpu-records.csv", records, metadata);
console.log(`wrote ${records.length} records to /tmp/gpu-records.csv (+ .meta.json)`);
