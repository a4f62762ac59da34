"""Trial protocol: repeated compute-only timings per (backend, size) pair.

For every pair the harness generates fresh operand matrices per trial from a
seed derived deterministically from (run seed, backend name, size, trial), so
reruns of the same configuration multiply exactly the same inputs. Warmup
iterations draw from a separate derivation stream and are never timed.

The timed region covers arithmetic only: generation and allocation happen
before the clock starts. Pairs run strictly one after another; parallelism
exists only inside a backend call.
"""

from __future__ import annotations

import hashlib
import os
import platform
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Callable

import numpy as np

from .backends import (
    BackendRegistry,
    MultiplyFn,
    PoolConfig,
    TileConfig,
    default_registry,
    naive_multiply,
)
from .errors import InvalidConfigError, RecordValidationError, TrialError
from .matrices import GenSpec, flop_count, generate, max_abs_rel_diff

__all__ = ["RunConfig", "TrialRecord", "RunMetadata", "time_once", "run_trials"]

CLOCK = time.perf_counter
MAX_CLOCK_RESOLUTION = 1e-6  # need microsecond fidelity for desk-size trials
FLOPS_CONSISTENCY_RTOL = 1e-12
ORACLE_RTOL = 1e-10  # acceptable reordering error vs the untiled oracle


def _require_fine_clock() -> None:
    resolution = time.get_clock_info("perf_counter").resolution
    if resolution > MAX_CLOCK_RESOLUTION:
        raise InvalidConfigError(
            f"monotonic clock resolution {resolution:.2e}s is coarser than "
            f"{MAX_CLOCK_RESOLUTION:.0e}s; timings would be meaningless"
        )


@dataclass(frozen=True)
class RunConfig:
    """Full description of one benchmark run."""

    backends: tuple[str, ...]
    sizes: tuple[int, ...]
    trials: int = 30
    warmup: int = 1
    seed: int = 0
    tile: TileConfig = TileConfig()
    threads: PoolConfig = field(default_factory=PoolConfig)
    lo: float = 2.0
    hi: float = 5.0
    verify: bool = False

    def validate(self, registry: BackendRegistry) -> None:
        if not self.backends:
            raise InvalidConfigError("at least one backend is required")
        if not self.sizes:
            raise InvalidConfigError("at least one matrix size is required")
        if any(n < 1 for n in self.sizes):
            raise InvalidConfigError(f"matrix sizes must be positive, got {self.sizes}")
        if self.trials < 1:
            raise InvalidConfigError(f"trials must be >= 1, got {self.trials}")
        if self.warmup < 0:
            raise InvalidConfigError(f"warmup must be >= 0, got {self.warmup}")
        self.tile.validate()
        self.threads.validate()
        GenSpec(1, 1, self.lo, self.hi, self.seed).validate()
        for name in self.backends:
            registry.descriptor(name)  # raises UnknownBackendError

    def as_dict(self) -> dict:
        return {
            "backends": list(self.backends),
            "sizes": list(self.sizes),
            "trials": self.trials,
            "warmup": self.warmup,
            "seed": self.seed,
            "tile": self.tile.k,
            "threads": self.threads.threads,
            "lo": self.lo,
            "hi": self.hi,
            "verify": self.verify,
        }


@dataclass(frozen=True)
class TrialRecord:
    """One timed multiplication."""

    backend: str
    n: int
    trial: int
    seconds: float
    flops: float

    def __post_init__(self):
        if self.n < 1:
            raise RecordValidationError(f"n must be >= 1, got {self.n}")
        if self.trial < 0:
            raise RecordValidationError(f"trial index must be >= 0, got {self.trial}")
        if not self.seconds > 0.0:
            raise RecordValidationError(f"seconds must be > 0, got {self.seconds}")
        if not self.flops > 0.0:
            raise RecordValidationError(f"flops must be > 0, got {self.flops}")
        expected = flop_count(self.n) / self.seconds
        if abs(self.flops - expected) > FLOPS_CONSISTENCY_RTOL * expected:
            raise RecordValidationError(
                f"flops field {self.flops!r} disagrees with count/seconds {expected!r}"
            )


@dataclass(frozen=True)
class RunMetadata:
    """Environment capture persisted beside every run."""

    timestamp: str
    host: str
    cores: int
    config: dict

    @classmethod
    def capture(cls, config: RunConfig) -> "RunMetadata":
        return cls(
            timestamp=datetime.now(timezone.utc).isoformat(),
            host=f"{platform.platform()} / {platform.processor() or platform.machine()}",
            cores=os.cpu_count() or 1,
            config=config.as_dict(),
        )


def _backend_key(name: str) -> int:
    return int.from_bytes(hashlib.blake2b(name.encode(), digest_size=8).digest(), "big")


def derive_seed(seed: int, backend: str, n: int, stream: int, index: int, operand: int) -> int:
    """Deterministic 64-bit seed for one operand of one (backend, n, trial)."""
    ss = np.random.SeedSequence([seed, _backend_key(backend), n, stream, index, operand])
    return int(ss.generate_state(1, np.uint64)[0])


def trial_operands(config: RunConfig, backend: str, n: int, trial: int, warmup: bool = False):
    """The exact A, B pair a given trial multiplies (regenerable at will)."""
    stream = 1 if warmup else 0
    a = generate(GenSpec(n, n, config.lo, config.hi, derive_seed(config.seed, backend, n, stream, trial, 0)))
    b = generate(GenSpec(n, n, config.lo, config.hi, derive_seed(config.seed, backend, n, stream, trial, 1)))
    return a, b


def time_once(backend_fn: MultiplyFn, a: np.ndarray, b: np.ndarray) -> tuple[float, np.ndarray]:
    """Run one multiplication and return (compute seconds, product).

    Only the backend call sits between the clock reads; the product is
    returned so callers can spot-check correctness after timing.
    """
    start = CLOCK()
    out = backend_fn(a, b)
    seconds = CLOCK() - start
    return seconds, out


ProgressFn = Callable[[str, int, int, int], None]


def run_trials(
    config: RunConfig,
    registry: BackendRegistry | None = None,
    progress: ProgressFn | None = None,
    on_record: Callable[[TrialRecord], None] | None = None,
) -> tuple[list[TrialRecord], RunMetadata]:
    """Execute the full protocol for every (backend, size) pair.

    Emits exactly ``trials`` records per pair (warmups are untimed), strictly
    one pair at a time. A failing backend raises :class:`TrialError` carrying
    the backend name; records collected so far are visible to ``on_record``
    before the raise.
    """
    registry = registry if registry is not None else default_registry()
    config.validate(registry)
    _require_fine_clock()
    metadata = RunMetadata.capture(config)
    records: list[TrialRecord] = []
    for name in config.backends:
        fn = registry.resolve(name, config.tile, config.threads)
        for n in config.sizes:
            count = flop_count(n)
            last = None
            for w in range(config.warmup):
                a, b = trial_operands(config, name, n, w, warmup=True)
                _run_backend(fn, name, a, b)
            for trial in range(config.trials):
                a, b = trial_operands(config, name, n, trial)
                seconds, out = _timed_backend(fn, name, a, b)
                if seconds <= 0.0:
                    raise TrialError(name, f"clock measured {seconds}s at n={n}; below timer resolution")
                record = TrialRecord(
                    backend=name, n=n, trial=trial, seconds=seconds, flops=count / seconds
                )
                records.append(record)
                last = (a, b, out)
                if on_record is not None:
                    on_record(record)
                if progress is not None:
                    progress(name, n, trial, config.trials)
            if config.verify and last is not None:
                _verify_pair(name, *last)
    return records, metadata


def _run_backend(fn: MultiplyFn, name: str, a, b) -> np.ndarray:
    try:
        return fn(a, b)
    except Exception as exc:
        raise TrialError(name, str(exc)) from exc


def _timed_backend(fn: MultiplyFn, name: str, a, b) -> tuple[float, np.ndarray]:
    try:
        return time_once(fn, a, b)
    except Exception as exc:
        raise TrialError(name, str(exc)) from exc


def _verify_pair(name: str, a, b, out) -> None:
    # Post-timing correctness check against the untiled oracle; kept out of
    # the timed loop so it cannot pollute cache state between trials.
    reference = naive_multiply(a, b)
    diff = max_abs_rel_diff(out, reference)
    if diff > ORACLE_RTOL:
        raise TrialError(name, f"verification failed: max relative diff {diff:.3e}")
