"""Operation-count and wall-clock scaling runs for sequential majority."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional

import numpy as np

from .aggregation import run_seq_majority
from .errors import ParameterError
from .residue import FRAME2, FrameSpec
from .sampling import random_order, random_profile, rng_from


@dataclass(frozen=True)
class BenchPoint:
    r: int
    k: int
    strategy: str
    trials: int
    ops_mean: float
    seconds_mean: float


@dataclass
class BenchReport:
    seed: Optional[int]
    n: int
    points: list[BenchPoint] = field(default_factory=list)
    # (strategy, k) -> fitted exponent of ops against r
    exponents: dict[tuple[str, int], float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "n": self.n,
            "points": [asdict(p) for p in self.points],
            "fits": [
                {"strategy": s, "k": k, "exponent": e} for (s, k), e in sorted(self.exponents.items())
            ],
        }


def fit_exponent(xs: Iterable[float], ys: Iterable[float]) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    lx = np.log(np.asarray(list(xs), dtype=float))
    ly = np.log(np.asarray(list(ys), dtype=float))
    if len(lx) < 2 or np.ptp(lx) == 0:
        raise ParameterError("exponent fit needs at least two distinct r values")
    slope, _ = np.polyfit(lx, ly, 1)
    return float(slope)


def run_bench(
    rs: Iterable[int],
    ks: Iterable[int],
    strategies: Iterable[str] = ("general", "interval"),
    trials: int = 1,
    n: int = 3,
    seed: Optional[int] = 0,
) -> BenchReport:
    """Run seq_majority with ``A = [0, k]`` on seeded random profiles and orders."""
    rs, ks, strategies = list(rs), list(ks), list(strategies)
    if trials < 1:
        raise ParameterError("trials must be at least 1")
    rng = rng_from(seed)
    report = BenchReport(seed, n)
    for k in ks:
        for r in rs:
            spec = FrameSpec(FRAME2, r, k, range(k + 1))
            inputs = [(random_profile(spec, n, rng, keep_judgments=False), random_order(r, rng)) for _ in range(trials)]
            for strategy in strategies:
                ops = secs = 0.0
                for profile, order in inputs:
                    t0 = time.perf_counter()
                    res = run_seq_majority(profile, spec, order, strategy)
                    secs += time.perf_counter() - t0
                    ops += res.ops
                report.points.append(BenchPoint(r, k, strategy, trials, ops / trials, secs / trials))
    if len(set(rs)) >= 2:
        for strategy in strategies:
            for k in ks:
                pts = [p for p in report.points if p.strategy == strategy and p.k == k]
                report.exponents[(strategy, k)] = fit_exponent([p.r for p in pts], [p.ops_mean for p in pts])
    return report
