"""Brute-force ground truth for small instances.

Everything here enumerates valuations, subsets or profiles directly from the
definitions and refuses instances above hard size guards with ResourceError.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from .aggregation import IssueOrder, Profile, majority_accepts, seq_majority
from .covering import JudgmentPair, consistent_bits
from .errors import ParameterError, ResourceError
from .residue import FrameSpec, ResidueSet

MAX_R_CONSISTENT = 20
MAX_R_MIN_INCONSISTENT = 14
MAX_JP_MIN_INCONSISTENT = 16
MAX_R_LT0 = 8
MAX_R_ENUMERATE = 14
MAX_PROFILES = 10**6

Literal = tuple[int, bool]  # (w, True) is P_w, (w, False) is ¬P_w


@lru_cache(maxsize=16)
def _truth_table(r: int, A: tuple[int, ...]) -> np.ndarray:
    """``T[v, w]`` is whether ``A + w ⊆ V`` for the valuation whose bit pattern is ``v``."""
    vals = np.arange(1 << r, dtype=np.uint32)
    bits = ((vals[:, None] >> np.arange(r, dtype=np.uint32)) & 1).astype(bool)
    T = np.ones((1 << r, r), dtype=bool)
    for w in range(r):
        for a in A:
            T[:, w] &= bits[:, (w + a) % r]
    T.setflags(write=False)
    return T


def truth_table(spec: FrameSpec) -> np.ndarray:
    if spec.r > MAX_R_CONSISTENT:
        raise ResourceError(f"valuation enumeration needs r <= {MAX_R_CONSISTENT}, got {spec.r}")
    return _truth_table(spec.r, spec.A.members)


@lru_cache(maxsize=16)
def _packed_truths(r: int, A: tuple[int, ...]) -> np.ndarray:
    """Row ``v`` of the truth table packed into an integer (bit ``w`` is ``P_w``)."""
    T = _truth_table(r, A)
    return T.astype(np.int64) @ (np.int64(1) << np.arange(r, dtype=np.int64))


def _satisfied(literals: Sequence[Literal], spec: FrameSpec) -> np.ndarray:
    """``S[v, i]``: valuation ``v`` makes literal ``i`` true."""
    T = truth_table(spec)
    if not literals:
        return np.ones((T.shape[0], 0), dtype=bool)
    ws = np.array([w % spec.r for w, _ in literals])
    signs = np.array([s for _, s in literals])
    return T[:, ws] == signs


def _literals(jp: JudgmentPair) -> list[Literal]:
    return [(w, True) for w in jp.plus] + [(w, False) for w in jp.minus]


def brute_consistent_literals(literals: Sequence[Literal], spec: FrameSpec) -> bool:
    return bool(_satisfied(literals, spec).all(axis=1).any())


def brute_consistent(jp: JudgmentPair, spec: FrameSpec) -> bool:
    """Some valuation makes every member of ``jp`` true."""
    if jp.r != spec.r:
        raise ParameterError("judgment pair and frame use different moduli")
    truth_table(spec)  # size guard
    rows = _packed_truths(spec.r, spec.A.members)
    p, m = jp.plus.bits, jp.minus.bits
    return bool(np.any(((rows & p) == p) & ((rows & m) == 0)))


def _consistent_subsets(literals: Sequence[Literal], spec: FrameSpec) -> np.ndarray:
    """Boolean array over all ``2^L`` subsets (as bitmasks): is that subset consistent."""
    L = len(literals)
    S = _satisfied(literals, spec)
    weights = (1 << np.arange(L, dtype=np.int64)) if L else np.zeros(0, dtype=np.int64)
    sat_masks = np.unique(S.astype(np.int64) @ weights)
    ok = np.zeros(1 << L, dtype=bool)
    ok[sat_masks] = True
    idx = np.arange(1 << L)
    # Down-close: a subset is consistent iff it sits below some valuation's satisfied set.
    for b in range(L):
        has = idx[(idx >> b) & 1 == 1]
        ok[has ^ (1 << b)] |= ok[has]
    return ok


def brute_min_inconsistent_literals(literals: Sequence[Literal], spec: FrameSpec) -> bool:
    if spec.r > MAX_R_MIN_INCONSISTENT or len(literals) > MAX_JP_MIN_INCONSISTENT:
        raise ResourceError(
            f"minimal-inconsistency oracle needs r <= {MAX_R_MIN_INCONSISTENT} "
            f"and at most {MAX_JP_MIN_INCONSISTENT} members"
        )
    ok = _consistent_subsets(literals, spec)
    full = (1 << len(literals)) - 1
    return not ok[full] and bool(ok[:full].all())


def brute_min_inconsistent(jp: JudgmentPair, spec: FrameSpec) -> bool:
    """``jp`` is inconsistent while each of its proper subsets is consistent."""
    return brute_min_inconsistent_literals(_literals(jp), spec)


def lt0_context(u: int, v: int, spec: FrameSpec) -> Optional[list[Literal]]:
    """A smallest signed ``Γ0`` avoiding indices ``u`` and ``v`` that witnesses ``P_u <0 P_v``."""
    r = spec.r
    if r > MAX_R_LT0:
        raise ResourceError(f"<0 oracle needs r <= {MAX_R_LT0}, got {r}")
    u, v = u % r, v % r
    others = [w for w in range(r) if w not in (u, v)]
    for size in range(len(others) + 1):
        for chosen in itertools.combinations(others, size):
            for signs in itertools.product((True, False), repeat=size):
                ctx = list(zip(chosen, signs))
                if not brute_min_inconsistent_literals(ctx + [(u, True), (v, False)], spec):
                    continue
                if brute_consistent_literals(ctx + [(u, False), (v, True)], spec):
                    return ctx
    return None


def brute_lt0(u: int, v: int, spec: FrameSpec) -> bool:
    return lt0_context(u, v, spec) is not None


def enumerate_rational_sets(spec: FrameSpec) -> list[JudgmentPair]:
    """All complete consistent pairs, ordered lexicographically by accepted indices."""
    r = spec.r
    if r > MAX_R_ENUMERATE:
        raise ResourceError(f"rational-set enumeration needs r <= {MAX_R_ENUMERATE}, got {r}")
    full = (1 << r) - 1
    out = []
    for plus in range(1 << r):
        if consistent_bits(plus, full ^ plus, spec):
            out.append(JudgmentPair(ResidueSet.from_bits(r, plus), ResidueSet.from_bits(r, full ^ plus)))
    out.sort(key=lambda jp: jp.plus.members)
    return out


# --------------------------------------------------------------------------- #
# Aggregation rules and axioms

Rule = Callable[[tuple[JudgmentPair, ...], FrameSpec], JudgmentPair]


def dictator_rule(i0: int = 1) -> Rule:
    def rule(profile, spec):
        return profile[i0 - 1]

    rule.__name__ = f"dictator_{i0}"
    return rule


def majority_rule(profile: tuple[JudgmentPair, ...], spec: FrameSpec) -> JudgmentPair:
    n, r = len(profile), spec.r
    plus = [w for w in range(r) if majority_accepts(sum(w in jp.plus for jp in profile), n)]
    return JudgmentPair.of(r, plus, set(range(r)) - set(plus))


def seq_majority_rule(order: Optional[Sequence[int]] = None, strategy: str = "general") -> Rule:
    def rule(profile, spec):
        prof = Profile.from_judgments(profile, spec)
        pi = IssueOrder(tuple(order)) if order is not None else None
        return seq_majority(prof, spec, pi, strategy)

    rule.__name__ = "seq_majority"
    return rule


def _literal_str(w: int, positive: bool) -> str:
    return ("" if positive else "¬") + f"P_{w}"


@dataclass
class AxiomReport:
    unanimity: bool = True
    unanimity_counterexample: Optional[dict] = None
    independence: bool = True
    independence_counterexample: Optional[dict] = None
    pn_neutrality: bool = True
    pn_neutrality_counterexample: Optional[dict] = None
    dictator: Optional[int] = None
    rationality_closure: bool = True
    rationality_counterexample: Optional[dict] = None
    profiles_checked: int = 0

    @property
    def dictatorship(self) -> bool:
        return self.dictator is not None

    def to_dict(self) -> dict:
        return {
            "unanimity": {"holds": self.unanimity, "counterexample": self.unanimity_counterexample},
            "independence": {"holds": self.independence, "counterexample": self.independence_counterexample},
            "pn_neutrality": {"holds": self.pn_neutrality, "counterexample": self.pn_neutrality_counterexample},
            "dictatorship": {"holds": self.dictatorship, "dictator": self.dictator},
            "rationality_closure": {"holds": self.rationality_closure, "counterexample": self.rationality_counterexample},
            "profiles_checked": self.profiles_checked,
        }


def _profile_doc(f) -> list[dict]:
    return [jp.to_dict() for jp in f]


def check_axioms(rule: Rule, spec: FrameSpec, n: int) -> AxiomReport:
    """Exhaustively test a rule on every profile in ``𝒥^n``.

    Outputs must be complete; they may be inconsistent, which is reported
    under rationality closure. Counterexamples carry explicit profiles so
    they can be replayed.
    """
    if n < 2:
        raise ParameterError("axioms are stated for n >= 2")
    J = enumerate_rational_sets(spec)
    total = len(J) ** n
    if total > MAX_PROFILES:
        raise ResourceError(f"|J|^n = {total} exceeds the {MAX_PROFILES} profile guard")
    r = spec.r
    rep = AxiomReport(profiles_checked=total)
    profiles = list(itertools.product(range(len(J)), repeat=n))
    plus_bits = [jp.plus.bits for jp in J]
    outputs = []
    for idx in profiles:
        f = tuple(J[i] for i in idx)
        out = rule(f, spec)
        if not out.is_complete():
            raise ParameterError(f"rule returned an incomplete set on profile {idx}")
        outputs.append(out)
        if rep.rationality_closure and not consistent_bits(out.plus.bits, out.minus.bits, spec):
            rep.rationality_closure = False
            rep.rationality_counterexample = {"profile": _profile_doc(f), "output": out.to_dict()}
    out_bits = [o.plus.bits for o in outputs]

    everyone = (1 << n) - 1
    for w in range(r):
        # seen[(acceptors of P_w as a bitmask over individuals, P_w in output)] = first profile
        seen: dict[tuple[int, bool], int] = {}
        for p, idx in enumerate(profiles):
            acc = 0
            for i, j in enumerate(idx):
                if plus_bits[j] >> w & 1:
                    acc |= 1 << i
            got = bool(out_bits[p] >> w & 1)
            seen.setdefault((acc, got), p)
            if rep.unanimity and (acc == everyone and not got or acc == 0 and got):
                rep.unanimity = False
                rep.unanimity_counterexample = {
                    "profile": _profile_doc(J[j] for j in idx),
                    "formula": _literal_str(w, acc == everyone),
                }
        for (acc, got), p in seen.items():
            if rep.independence and got and (acc, False) in seen:
                rep.independence = False
                rep.independence_counterexample = {
                    "f": _profile_doc(J[j] for j in profiles[p]),
                    "g": _profile_doc(J[j] for j in profiles[seen[(acc, False)]]),
                    "formula": _literal_str(w, True),
                }
            # f^-1(P_w) = g^-1(¬P_w) means g's acceptors of P_w are the complement;
            # P_w in F(f) must then match ¬P_w in F(g).
            q = seen.get((everyone ^ acc, got))
            if rep.pn_neutrality and q is not None:
                rep.pn_neutrality = False
                rep.pn_neutrality_counterexample = {
                    "f": _profile_doc(J[j] for j in profiles[p]),
                    "g": _profile_doc(J[j] for j in profiles[q]),
                    "formula": _literal_str(w, True),
                }

    for i0 in range(1, n + 1):
        if all(outputs[p] == J[idx[i0 - 1]] for p, idx in enumerate(profiles)):
            rep.dictator = i0
            break
    return rep
