"""Consistency as a covering problem over translates ``A + w``.

A judgment pair ``(J+, J-)`` stands for ``{P_w}_{w∈J+} ∪ {¬P_w}_{w∈J-}``. It is
consistent iff no rejected translate ``A + w0`` is covered by the accepted ones;
the witness valuation is the union of the accepted translates.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Iterable, Optional

from .errors import ConsistencyError, ParameterError
from .kripke import IndexedProposition
from .residue import FRAME1, FrameSpec, ResidueSet, check_theorem_params, is_k_symmetric, rotate

# Above this many elements the subset re-check in is_minimally_inconsistent is refused.
MAX_SUBSET_CHECK = 20
MAX_CHAIN_MATRIX = 64


@dataclass(frozen=True)
class JudgmentPair:
    """Accepted and rejected indices; partial pairs are allowed."""

    plus: ResidueSet
    minus: ResidueSet

    def __post_init__(self):
        if self.plus.r != self.minus.r:
            raise ParameterError("plus and minus use different moduli")
        if not self.plus.isdisjoint(self.minus):
            both = (self.plus & self.minus).to_list()
            raise ParameterError(f"indices {both} are both accepted and rejected")

    @classmethod
    def of(cls, r: int, plus: Iterable[int] = (), minus: Iterable[int] = ()) -> "JudgmentPair":
        return cls(ResidueSet(r, plus), ResidueSet(r, minus))

    @classmethod
    def from_dict(cls, d: dict, r: int) -> "JudgmentPair":
        try:
            return cls.of(r, [int(x) for x in d.get("accept", ())], [int(x) for x in d.get("reject", ())])
        except (TypeError, AttributeError) as exc:
            raise ParameterError(f"malformed judgment document: {exc}") from None

    @property
    def r(self) -> int:
        return self.plus.r

    def __len__(self) -> int:
        return len(self.plus) + len(self.minus)

    def is_complete(self) -> bool:
        return (self.plus.bits | self.minus.bits) == (1 << self.r) - 1

    def propositions(self) -> list[IndexedProposition]:
        return [IndexedProposition(w, True) for w in self.minus] + [
            IndexedProposition(w) for w in self.plus
        ]

    def accepts(self, prop: IndexedProposition) -> bool:
        return prop.index % self.r in (self.minus if prop.negated else self.plus)

    def to_dict(self) -> dict:
        return {"accept": self.plus.to_list(), "reject": self.minus.to_list()}

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.propositions())) + "}"


def cover_bits(plus_bits: int, spec: FrameSpec) -> int:
    """Mask of ``⋃_{w ∈ plus} A + w``."""
    acc = 0
    for a in spec.A:
        acc |= rotate(plus_bits, a, spec.r)
    return acc


def covered_bits(cover: int, spec: FrameSpec) -> int:
    """Mask of every ``w`` with ``A + w ⊆ cover``."""
    acc = (1 << spec.r) - 1
    for a in spec.A:
        acc &= rotate(cover, -a, spec.r)
    return acc


def consistent_bits(plus_bits: int, minus_bits: int, spec: FrameSpec) -> bool:
    return covered_bits(cover_bits(plus_bits, spec), spec) & minus_bits == 0


def is_consistent(jp: JudgmentPair, spec: FrameSpec) -> bool:
    """True iff no ``A + w0`` with ``w0 ∈ J-`` lies inside ``⋃_{w∈J+} A + w``."""
    _check_modulus(jp, spec)
    return consistent_bits(jp.plus.bits, jp.minus.bits, spec)


def _check_modulus(jp: JudgmentPair, spec: FrameSpec) -> None:
    if jp.r != spec.r:
        raise ParameterError(f"judgment pair over Z/{jp.r} used with frame over Z/{spec.r}")


def complete_judgment(jp: JudgmentPair, spec: FrameSpec) -> JudgmentPair:
    """Extend a consistent pair to the rational set induced by ``V = ⋃_{w∈J+} A + w``."""
    if not is_consistent(jp, spec):
        raise ConsistencyError(f"{jp} is inconsistent and has no rational extension")
    accepted = covered_bits(cover_bits(jp.plus.bits, spec), spec)
    full = (1 << spec.r) - 1
    return JudgmentPair(ResidueSet.from_bits(spec.r, accepted), ResidueSet.from_bits(spec.r, full ^ accepted))


def induced_judgment(V: ResidueSet, spec: FrameSpec) -> JudgmentPair:
    """The rational set read off a valuation: accept ``P_w`` iff ``A + w ⊆ V``."""
    accepted = covered_bits(V.bits, spec)
    full = (1 << spec.r) - 1
    return JudgmentPair(ResidueSet.from_bits(spec.r, accepted), ResidueSet.from_bits(spec.r, full ^ accepted))


def is_minimally_inconsistent(jp: JudgmentPair, spec: FrameSpec) -> bool:
    """Inconsistent, with every proper sub-pair consistent (all subsets enumerated)."""
    if is_consistent(jp, spec):
        return False
    elems = [(w, True) for w in jp.plus] + [(w, False) for w in jp.minus]
    if len(elems) > MAX_SUBSET_CHECK:
        raise ParameterError(f"refusing to enumerate 2^{len(elems)} sub-pairs")
    for size in range(len(elems) - 1, -1, -1):
        for sub in combinations(elems, size):
            p = m = 0
            for w, pos in sub:
                if pos:
                    p |= 1 << w
                else:
                    m |= 1 << w
            if not consistent_bits(p, m, spec):
                return False
    return True


# --------------------------------------------------------------------------- #
# Pointed minimal covers


@dataclass(frozen=True)
class PointedMinimalCover:
    w0: int
    w1: int
    S0: ResidueSet

    def __post_init__(self):
        r = self.S0.r
        object.__setattr__(self, "w0", self.w0 % r)
        object.__setattr__(self, "w1", self.w1 % r)
        if len(self.S0) < 2:
            raise ParameterError("S0 must have at least two elements")
        if self.w1 not in self.S0:
            raise ParameterError(f"w1={self.w1} is not a member of S0")

    def translate(self, w: int) -> "PointedMinimalCover":
        return PointedMinimalCover(self.w0 + w, self.w1 + w, self.S0.translate(w))

    def to_dict(self) -> dict:
        return {"w0": self.w0, "w1": self.w1, "S0": self.S0.to_list()}


def is_pointed_minimal_cover(pmc: PointedMinimalCover, spec: FrameSpec) -> bool:
    r = spec.r
    if pmc.S0.r != r:
        raise ParameterError("cover and frame use different moduli")
    target = spec.A.translate(pmc.w0).bits
    if target & ~cover_bits(pmc.S0.bits, spec):
        return False
    # Covering is monotone in S1, so the maximal proper subsets decide minimality.
    for s in pmc.S0:
        if target & ~cover_bits(pmc.S0.bits & ~(1 << s), spec) == 0:
            return False
    rest = (pmc.S0.bits & ~(1 << pmc.w1)) | (1 << pmc.w0)
    return spec.A.translate(pmc.w1).bits & ~cover_bits(rest, spec) != 0


def _construct_pmc(w: int, spec: FrameSpec) -> Optional[PointedMinimalCover]:
    """Greedy minimal subcover of ``{k} ∪ {a - k | a ∈ A∖{k}}`` at 0, translated to ``w``.

    Returns None when the construction does not yield a valid pointed minimal
    cover (possible outside the theorem's parameter regime).
    """
    r, k = spec.r, spec.k
    target = spec.A.bits
    cands = {k % r} | {(a - k) % r for a in spec.A if a != k % r}
    bits = 0
    for c in cands:
        bits |= 1 << c
    if target & ~cover_bits(bits, spec):
        return None
    for c in sorted(cands - {k % r}):
        trial = bits & ~(1 << c)
        if target & ~cover_bits(trial, spec) == 0:
            bits = trial
    S0 = ResidueSet.from_bits(r, bits)
    if len(S0) < 2:
        return None
    pmc = PointedMinimalCover(0, k, S0).translate(w)
    return pmc if is_pointed_minimal_cover(pmc, spec) else None


def _require_regime(spec: FrameSpec) -> None:
    report = check_theorem_params(spec)
    if not report.passed:
        failed = [name for name, ok in report.to_dict().items() if ok is False and name != "passed"]
        raise ParameterError(f"frame parameters outside the theorem regime: {failed}")


def find_pointed_minimal_cover(w: int, spec: FrameSpec) -> PointedMinimalCover:
    """A pointed minimal cover ``(w, w + k, S0)``; deterministic and translation-equivariant."""
    _require_regime(spec)
    pmc = _construct_pmc(w, spec)
    if pmc is None:
        raise RuntimeError(f"construction failed at w={w} despite a passing regime check")
    return pmc


def min_inconsistent_from_pmc(pmc: PointedMinimalCover, spec: FrameSpec) -> JudgmentPair:
    """``({P_s}_{s∈S0}, {¬P_w0})``, re-verified by enumerating all proper sub-pairs."""
    if not is_pointed_minimal_cover(pmc, spec):
        raise ParameterError(f"{pmc} is not a pointed minimal cover")
    jp = JudgmentPair(pmc.S0, ResidueSet(spec.r, [pmc.w0]))
    if not is_minimally_inconsistent(jp, spec):
        raise RuntimeError(f"{jp} failed the minimal-inconsistency re-check")
    return jp


@dataclass(frozen=True)
class Lt0Certificate:
    """Evidence that ``P_lower <₀ P_upper`` with positive context ``{P_s}_{s∈context}``."""

    lower: int
    upper: int
    context: ResidueSet
    pmc: PointedMinimalCover

    def inconsistent_side(self) -> JudgmentPair:
        return JudgmentPair(self.context | ResidueSet(self.context.r, [self.lower]), ResidueSet(self.context.r, [self.upper]))

    def consistent_side(self) -> JudgmentPair:
        return JudgmentPair(self.context | ResidueSet(self.context.r, [self.upper]), ResidueSet(self.context.r, [self.lower]))

    def verify(self, spec: FrameSpec) -> bool:
        return is_minimally_inconsistent(self.inconsistent_side(), spec) and is_consistent(
            self.consistent_side(), spec
        )

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "context": self.context.to_list(),
            "pmc": self.pmc.to_dict(),
        }


def _certificate(pmc: PointedMinimalCover, spec: FrameSpec) -> Lt0Certificate:
    context = pmc.S0 - ResidueSet(spec.r, [pmc.w1])
    return Lt0Certificate(pmc.w1, pmc.w0, context, pmc)


def lt0_witness(w: int, spec: FrameSpec) -> Lt0Certificate:
    """Certificate that ``P_{w+k} <₀ P_w``."""
    cert = _certificate(find_pointed_minimal_cover(w, spec), spec)
    if not cert.verify(spec):
        raise RuntimeError(f"certificate for P_{cert.lower} <0 P_{cert.upper} failed verification")
    return cert


# --------------------------------------------------------------------------- #
# Impossibility-frame verification


@dataclass(frozen=True)
class ImpossibilityReport:
    spec: FrameSpec
    params: dict
    agenda_reducible: bool
    agenda_indices_complete: bool
    minimally_connected: bool
    min_inconsistent_witness: Optional[JudgmentPair]
    strongly_path_connected: bool
    unconnected_pair: Optional[tuple[int, int]]
    chain_lengths: Optional[list[list[int]]]
    lt0_edges: list[Lt0Certificate] = field(default_factory=list)

    @property
    def impossibility_frame(self) -> bool:
        return (
            self.agenda_reducible
            and self.agenda_indices_complete
            and self.minimally_connected
            and self.strongly_path_connected
        )

    def to_dict(self, witnesses: bool = False) -> dict:
        d = {
            "frame": self.spec.to_dict(),
            "params": self.params,
            "agenda_reducible": self.agenda_reducible,
            "agenda_indices_complete": self.agenda_indices_complete,
            "minimally_connected": self.minimally_connected,
            "strongly_path_connected": self.strongly_path_connected,
            "unconnected_pair": list(self.unconnected_pair) if self.unconnected_pair else None,
            "lt0_edge_count": len(self.lt0_edges),
            "impossibility_frame": self.impossibility_frame,
        }
        if witnesses:
            w = self.min_inconsistent_witness
            d["min_inconsistent_witness"] = w.to_dict() if w is not None else None
            d["lt0_edges"] = [c.to_dict() for c in self.lt0_edges]
            d["chain_lengths"] = self.chain_lengths
        return d


def _bfs(adj: dict[int, list[int]], src: int, r: int) -> list[int]:
    dist = [-1] * r
    dist[src] = 0
    q = deque([src])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def verify_impossibility_frame(spec: FrameSpec) -> ImpossibilityReport:
    """Check minimal connectedness and strong path-connectedness of the reduced agenda.

    ``P_{w+k} <₀ P_w`` edges are constructed and verified for every ``w``;
    connectivity is then decided by search over the verified edges, not assumed
    from coprimality. Nothing is raised for frames outside the regime.
    """
    r = spec.r
    params = check_theorem_params(spec).to_dict()
    reducible = spec.kind == FRAME1 or is_k_symmetric(spec.A, spec.k, r)
    indices_complete = gcd(r, spec.k) == 1

    edges: list[Lt0Certificate] = []
    witness = None
    for w in range(r):
        pmc = _construct_pmc(w, spec)
        if pmc is None:
            continue
        if witness is None:
            jp = JudgmentPair(pmc.S0, ResidueSet(r, [pmc.w0]))
            if len(jp) >= 3 and is_minimally_inconsistent(jp, spec):
                witness = jp
        cert = _certificate(pmc, spec)
        if cert.verify(spec):
            edges.append(cert)

    adj: dict[int, list[int]] = {u: [] for u in range(r)}
    radj: dict[int, list[int]] = {u: [] for u in range(r)}
    for c in edges:
        adj[c.lower].append(c.upper)
        radj[c.upper].append(c.lower)

    forward = _bfs(adj, 0, r)
    backward = _bfs(radj, 0, r)
    connected = min(forward) >= 0 and min(backward) >= 0
    unconnected = None
    matrix = None
    if not connected or r <= MAX_CHAIN_MATRIX:
        rows = []
        for u in range(r):
            dist = _bfs(adj, u, r)
            if unconnected is None and min(dist) < 0:
                unconnected = (u, dist.index(-1))
            if r <= MAX_CHAIN_MATRIX:
                rows.append(dist)
            elif unconnected is not None:
                break
        matrix = rows if r <= MAX_CHAIN_MATRIX else None

    return ImpossibilityReport(
        spec=spec,
        params=params,
        agenda_reducible=reducible,
        agenda_indices_complete=indices_complete,
        minimally_connected=witness is not None,
        min_inconsistent_witness=witness,
        strongly_path_connected=connected,
        unconnected_pair=unconnected,
        chain_lengths=matrix,
        lt0_edges=edges,
    )
