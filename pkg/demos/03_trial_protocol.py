"""Running the timed trial protocol and persisting records.

Each (backend, size) pair gets fresh random operands per trial, one untimed
warmup, and a compute-only timing: the clock brackets the multiplication
alone, never generation or allocation. Records round-trip losslessly through
CSV with a JSON metadata sidecar.
"""

import tempfile
from pathlib import Path

from tilebench import RunConfig, TileConfig, read_records, run_trials, write_records
from tilebench.backends import PoolConfig

config = RunConfig(
    backends=("naive", "tiled-seq", "tiled-pool"),
    sizes=(32, 64),
    trials=5,
    warmup=1,
    seed=2024,
    tile=TileConfig(32),
    threads=PoolConfig(2),
)

records, metadata = run_trials(config)
print(f"collected {len(records)} records "
      f"({len(config.backends)} backends x {len(config.sizes)} sizes x {config.trials} trials)")
print("host:", metadata.host)
print("cores:", metadata.cores)

# A record carries the backend, size, trial index, seconds, and FLOPS
# (= exact flop count / seconds).
for record in records[:3]:
    print(record)

# Round-trip through the CSV schema: backend,n,trial,seconds,flops.
out = Path(tempfile.mkdtemp()) / "records.csv"
write_records(out, records, metadata)
loaded, loaded_metadata = read_records(out)
print("lossless round trip:", loaded == records)
print("files:", out, "and", out.with_name(out.name + ".meta.json"))
