"""Seeded random profiles and issue orders.

Individuals are always rational: small moduli draw uniformly from the full list
of rational sets, large ones read the induced set off a random valuation.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

import numpy as np

from .aggregation import IssueOrder, Profile
from .covering import JudgmentPair
from .oracle import MAX_R_ENUMERATE, enumerate_rational_sets
from .residue import FrameSpec, ResidueSet

KEEP_JUDGMENTS_UP_TO = 256


@lru_cache(maxsize=64)
def _rational_sets(spec: FrameSpec) -> tuple[JudgmentPair, ...]:
    return tuple(enumerate_rational_sets(spec))


def default_density(spec: FrameSpec) -> float:
    """Per-world probability that makes each ``P_w`` true with probability 1/2."""
    return 0.5 ** (1.0 / len(spec.A))


def rng_from(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_profile(
    spec: FrameSpec,
    n: int,
    rng: np.random.Generator,
    density: Optional[float] = None,
    keep_judgments: Optional[bool] = None,
) -> Profile:
    r = spec.r
    if keep_judgments is None:
        keep_judgments = r <= KEEP_JUDGMENTS_UP_TO
    if r <= MAX_R_ENUMERATE and density is None:
        pool = _rational_sets(spec)
        picks = rng.integers(0, len(pool), size=n)
        return Profile.from_judgments([pool[i] for i in picks], spec)

    q = default_density(spec) if density is None else density
    V = rng.random((n, r)) < q
    accepted = np.ones((n, r), dtype=bool)
    for a in spec.A.members:
        accepted &= np.roll(V, -a, axis=1)
    counts = accepted.sum(axis=0)
    judgments = None
    if keep_judgments:
        judgments = []
        for row in accepted:
            plus = np.flatnonzero(row).tolist()
            minus = np.flatnonzero(~row).tolist()
            judgments.append(JudgmentPair(ResidueSet(r, plus), ResidueSet(r, minus)))
    return Profile(n, counts.tolist(), judgments)


def random_order(r: int, rng: np.random.Generator) -> IssueOrder:
    return IssueOrder(tuple(rng.permutation(r).tolist()))
