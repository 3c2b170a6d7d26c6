"""Whole-model evaluation over every valuation at once, for exhaustive sweeps.

``truth[v, w]`` holds ``M ⊨ w : phi`` for the Frame 2 model whose valuation has
bit pattern ``v``. It follows the successor definition directly (``w -> w + a``)
and shares no code with the package's evaluators.
"""

import itertools

import numpy as np

from modalagg.kripke import Op
from modalagg.residue import FRAME2, FrameSpec, ResidueSet, is_k_symmetric


def all_valuations(r):
    vals = np.arange(1 << r, dtype=np.int64)
    return ((vals[:, None] >> np.arange(r)) & 1).astype(bool)


def eval_all(spec, prefix, base=None):
    S = all_valuations(spec.r) if base is None else base
    for op in reversed(tuple(prefix)):
        succ = [np.roll(S, -a, axis=1) for a in spec.A]  # column w holds S[:, w + a]
        if op is Op.BOX:
            S = np.logical_and.reduce(succ)
        else:
            S = np.logical_or.reduce(succ)
    return S


def symmetric_frame2_specs(r_values):
    """Every Frame 2 spec with k < r and k-symmetric A, {0, k} ⊆ A ⊆ [0, k]."""
    for r in r_values:
        for k in range(1, r):
            inner = range(1, k)
            for n in range(len(inner) + 1):
                for extra in itertools.combinations(inner, n):
                    A = ResidueSet(r, (0, k) + extra)
                    if is_k_symmetric(A, k, r):
                        yield FrameSpec(FRAME2, r, k, A)


def prefixes(max_len):
    for n in range(max_len + 1):
        yield from itertools.product((Op.BOX, Op.DIAMOND), repeat=n)
