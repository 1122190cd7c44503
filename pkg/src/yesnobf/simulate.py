"""Monte-Carlo parameter sweeps for the yes-no filter.

Each trial draws fresh random member/query sets and a fresh hash allocation,
builds a yes-no filter, and counts the residual false positives among the
queried non-members. A sweep repeats that over a range of one parameter and
reports mean, spread, and the analytic expectations of two classic-Bloom
baselines: one of the same total length m, one the size of the yes-filter
alone.

Trials are independent; trial i of point j draws its PRNG stream from
(seed, j, i), so results do not depend on scheduling.
"""

from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass

import numpy as np

from .analysis import FilterShape, expected_fp_count, fp_prob_exact
from .bitcore import MODE_RANDOM, derive_seed
from .yesno import Classification, ConstructionReport, Sketcher, YesNoFilter, YesNoParams

SWEPT_CHOICES = ("k", "k_prime", "n", "q", "r_fixed_p", "r_fixed_m")

CSV_HEADER = ("swept", "value", "mean_fp", "std_fp", "min", "q25", "median",
              "q75", "max", "baseline_bf_m", "baseline_bf_p")

_UNIVERSE = 1 << 64


def draw_elements(trial_seed: int, n: int, t: int) -> tuple[list[int], list[int]]:
    """n member ids and t queryable ids: distinct random 64-bit ints."""
    if n < 0 or t < 0:
        raise ValueError("n and t must be >= 0")
    rng = random.Random(trial_seed)
    drawn: list[int] = []
    seen: set[int] = set()
    while len(drawn) < n + t:
        value = rng.getrandbits(64)
        if value not in seen:  # collisions are ~never, but determinism is cheap
            seen.add(value)
            drawn.append(value)
    return drawn[:n], drawn[n:]


def trial_outcome(params: YesNoParams, n: int, t: int, trial_seed: int,
                  mode: str = MODE_RANDOM
                  ) -> tuple[ConstructionReport, Classification]:
    """One randomized build, fully classified."""
    members, candidates = draw_elements(trial_seed, n, t)
    sk = Sketcher(params, trial_seed, mode)
    member_pairs = [(e, sk.sketch(e)) for e in members]
    candidate_pairs = [(e, sk.sketch(e)) for e in candidates]
    built, report = YesNoFilter.build_from_sketches(
        params, [s for _, s in member_pairs], [s for _, s in candidate_pairs],
        seed=trial_seed, mode=mode)
    return report, built.classify_sketches(member_pairs, candidate_pairs)


def run_trial(params: YesNoParams, n: int, t: int, trial_seed: int,
              mode: str = MODE_RANDOM) -> int:
    """Residual false-positive count of one randomized build."""
    _, outcome = trial_outcome(params, n, t, trial_seed, mode)
    return outcome.fp_count


@dataclass(frozen=True)
class SweepConfig:
    """One swept parameter over an inclusive range, everything else fixed.

    The base geometry is p + q*r = m bits (defaults 160 + 32*3 = 256).
    Sweeping q or r_fixed_p recomputes m; r_fixed_m holds m and recomputes
    p = m - q*r. k_bf is the hash count of the analytic m-sized baseline,
    except in the k sweep, where that baseline follows the swept k, and the
    n sweep, where it is retuned to the optimum round(m/n * ln 2) so the
    comparison at each load is against the BF someone would deploy there.
    """

    swept: str
    start: int
    stop: int
    step: int = 1
    p: int = 160
    q: int = 32
    r: int = 3
    k: int = 4
    k_prime: int = 5
    n: int = 30
    t: int = 100
    trials: int = 10_000
    seed: int = 0
    k_bf: int = 6
    mode: str = MODE_RANDOM
    allow_false_negatives: bool = False

    def __post_init__(self):
        if self.swept not in SWEPT_CHOICES:
            raise ValueError(f"swept must be one of {SWEPT_CHOICES}, got {self.swept!r}")
        if self.step < 1:
            raise ValueError(f"step must be >= 1, got {self.step}")
        if self.start > self.stop:
            raise ValueError(f"empty range {self.start}..{self.stop}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.t < 0 or self.n < 0:
            raise ValueError("n and t must be >= 0")

    @property
    def m(self) -> int:
        return self.p + self.q * self.r

    def values(self) -> list[int]:
        return list(range(self.start, self.stop + 1, self.step))


@dataclass(frozen=True)
class SweepPoint:
    """Summary of all trials at one swept value; error set iff the derived
    geometry was invalid, in which case the statistics are None."""

    swept: str
    value: int
    mean_fp: float | None = None
    std_fp: float | None = None
    min_fp: float | None = None
    q25: float | None = None
    median: float | None = None
    q75: float | None = None
    max_fp: float | None = None
    baseline_bf_m: float | None = None
    baseline_bf_p: float | None = None
    error: str | None = None


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    points: tuple[SweepPoint, ...]

    def to_csv(self) -> str:
        return sweep_result_to_csv(self)


def _point_geometry(config: SweepConfig, value: int) -> tuple[YesNoParams, int]:
    """Derived (params, n) at one swept value; raises ValueError when the
    geometry is impossible."""
    c = config
    afn = c.allow_false_negatives
    if c.swept == "k":
        return YesNoParams.of(c.p, c.q, c.r, value, c.k_prime, afn), c.n
    if c.swept == "k_prime":
        return YesNoParams.of(c.p, c.q, c.r, c.k, value, afn), c.n
    if c.swept == "n":
        if value < 0:
            raise ValueError(f"n must be >= 0, got {value}")
        return YesNoParams.of(c.p, c.q, c.r, c.k, c.k_prime, afn), value
    if c.swept == "q":
        return YesNoParams.of(c.p, value, c.r, c.k, c.k_prime, afn), c.n
    if c.swept == "r_fixed_p":
        return YesNoParams.of(c.p, c.q, value, c.k, c.k_prime, afn), c.n
    # r_fixed_m: total length stays put, the yes-filter gives up the bits
    return YesNoParams(c.m, c.m - c.q * value, c.q, value, c.k, c.k_prime, afn), c.n


def optimal_hash_count(m: int, n: int) -> int:
    """Hash count minimizing the classic-BF false positive rate at (m, n)."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    return max(1, round(m / n * math.log(2)))


def _comparison_hashes(config: SweepConfig, params: YesNoParams, value: int,
                       n: int) -> int:
    """Hash count for the same-length baseline: the comparison filter at each
    point is the classic BF someone would deploy there. Sweeping k compares
    against a BF with that k; sweeping n retunes the BF's k for the load;
    everywhere else the configured k_bf stands."""
    if config.swept == "k":
        return value
    if config.swept == "n":
        return optimal_hash_count(params.m, max(1, n))
    return config.k_bf


def sweep(config: SweepConfig) -> SweepResult:
    """Run the full sweep; geometry errors become per-point error entries."""
    points = []
    for index, value in enumerate(config.values()):
        try:
            params, n = _point_geometry(config, value)
        except ValueError as exc:
            points.append(SweepPoint(config.swept, value, error=str(exc)))
            continue
        counts = np.empty(config.trials, dtype=np.int64)
        for trial in range(config.trials):
            trial_seed = derive_seed(config.seed, index, trial)
            counts[trial] = run_trial(params, n, config.t, trial_seed, config.mode)
        quartiles = np.quantile(counts, (0.25, 0.5, 0.75))
        k_m = _comparison_hashes(config, params, value, n)
        points.append(SweepPoint(
            swept=config.swept,
            value=value,
            mean_fp=float(counts.mean()),
            std_fp=float(counts.std(ddof=1)) if config.trials > 1 else 0.0,
            min_fp=float(counts.min()),
            q25=float(quartiles[0]),
            median=float(quartiles[1]),
            q75=float(quartiles[2]),
            max_fp=float(counts.max()),
            baseline_bf_m=expected_fp_count(
                config.t, fp_prob_exact(FilterShape(params.m, k_m, n))),
            baseline_bf_p=expected_fp_count(
                config.t, fp_prob_exact(FilterShape(params.p, params.k, n))),
        ))
    return SweepResult(config, tuple(points))


def sweep_result_to_csv(result: SweepResult) -> str:
    """Fixed-schema CSV, floats at 6 decimals; an error column is appended
    only when some point failed, so clean sweeps keep the plain header."""
    with_errors = any(pt.error is not None for pt in result.points)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = CSV_HEADER + ("error",) if with_errors else CSV_HEADER
    writer.writerow(header)
    for pt in result.points:
        if pt.error is not None:
            row = [pt.swept, pt.value] + [""] * 9 + [pt.error]
        else:
            row = [pt.swept, pt.value] + [
                f"{v:.6f}" for v in (pt.mean_fp, pt.std_fp, pt.min_fp, pt.q25,
                                     pt.median, pt.q75, pt.max_fp,
                                     pt.baseline_bf_m, pt.baseline_bf_p)]
            if with_errors:
                row.append("")
        writer.writerow(row)
    return buf.getvalue()
