"""Majority-based aggregation procedures that always return rational sets.

``horn_aggregate`` takes the proposition-wise majority winners and closes them
under the covering implications. ``seq_majority`` decides issues one at a time
along an order, overriding the majority whenever the running collective set
already forces the answer. Three interchangeable consistency checks drive it:

* ``reference`` re-tests the whole covering condition from scratch,
* ``general`` keeps a ``cover`` array and only inspects nearby rejections,
* ``interval`` (``A = [0, k]`` only) keeps ``cvle``/``cvri`` distance arrays
  and answers each query in O(1) or O(k).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .covering import (
    JudgmentPair,
    consistent_bits,
    complete_judgment,
    find_pointed_minimal_cover,
    is_consistent,
    min_inconsistent_from_pmc,
)
from .errors import ParameterError
from .residue import FrameSpec, ResidueSet, residue_set_from_flags

STRATEGIES = ("reference", "general", "interval")

UNDECIDED, ACCEPTED, REJECTED = 0, 1, 2
_ACCEPTED_FLAG = bytes(1 if i == ACCEPTED else 0 for i in range(256))
_REJECTED_FLAG = bytes(1 if i == REJECTED else 0 for i in range(256))


def majority_accepts(c: int, n: int) -> bool:
    """Majority with ties going to acceptance."""
    return c >= n - c


@dataclass(frozen=True)
class Profile:
    """Acceptance counts ``c(w)`` for ``n`` individuals, optionally with the individual sets."""

    n: int
    counts: tuple[int, ...]
    judgments: Optional[tuple[JudgmentPair, ...]] = None

    def __post_init__(self):
        if self.n < 2:
            raise ParameterError(f"population size must be at least 2, got {self.n}")
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        bad = [w for w, c in enumerate(self.counts) if not 0 <= c <= self.n]
        if bad:
            raise ParameterError(f"counts outside [0, {self.n}] at indices {bad[:10]}")
        if self.judgments is not None:
            js = tuple(self.judgments)
            object.__setattr__(self, "judgments", js)
            if len(js) != self.n:
                raise ParameterError(f"{len(js)} judgment sets for n={self.n}")
            if tally(js, len(self.counts)) != self.counts:
                raise ParameterError("counts do not match the listed judgment sets")

    @property
    def r(self) -> int:
        return len(self.counts)

    @classmethod
    def from_judgments(cls, judgments: Sequence[JudgmentPair], spec: FrameSpec) -> "Profile":
        js = tuple(judgments)
        for i, jp in enumerate(js, start=1):
            if not jp.is_complete() or not is_consistent(jp, spec):
                raise ParameterError(f"judgment set of individual {i} is not rational: {jp}")
        return cls(len(js), tally(js, spec.r), js)

    def validate(self, spec: FrameSpec) -> None:
        if self.r != spec.r:
            raise ParameterError(f"profile has {self.r} counts but r={spec.r}")
        if self.judgments is not None:
            Profile.from_judgments(self.judgments, spec)

    def to_dict(self) -> dict:
        if self.judgments is not None:
            return {"n": self.n, "judgments": [jp.to_dict() for jp in self.judgments]}
        return {"n": self.n, "counts": list(self.counts)}

    @classmethod
    def from_dict(cls, d: dict, spec: FrameSpec) -> "Profile":
        if "judgments" in d:
            js = [JudgmentPair.from_dict(j, spec.r) for j in d["judgments"]]
            prof = cls.from_judgments(js, spec)
            if "n" in d and int(d["n"]) != prof.n:
                raise ParameterError(f"n={d['n']} but {prof.n} judgment sets listed")
            return prof
        try:
            prof = cls(int(d["n"]), d["counts"])
        except KeyError as exc:
            raise ParameterError(f"profile document lacks {exc}") from None
        prof.validate(spec)
        return prof


def tally(judgments: Sequence[JudgmentPair], r: int) -> tuple[int, ...]:
    counts = [0] * r
    for jp in judgments:
        for w in jp.plus:
            counts[w] += 1
    return tuple(counts)


def majority_outcome(profile: Profile) -> JudgmentPair:
    """Proposition-wise majority (ties accept); may be inconsistent."""
    r = profile.r
    plus = [w for w in range(r) if majority_accepts(profile.counts[w], profile.n)]
    return JudgmentPair.of(r, plus, set(range(r)) - set(plus))


@dataclass(frozen=True)
class IssueOrder:
    pi: tuple[int, ...]

    def __post_init__(self):
        pi = tuple(int(x) for x in self.pi)
        object.__setattr__(self, "pi", pi)
        if sorted(pi) != list(range(len(pi))):
            raise ParameterError("issue order must be a permutation of 0..r-1")

    @classmethod
    def identity(cls, r: int) -> "IssueOrder":
        return cls(tuple(range(r)))

    def __len__(self) -> int:
        return len(self.pi)

    def __iter__(self):
        return iter(self.pi)


# --------------------------------------------------------------------------- #
# Horn-style forward chaining


class HornResult(NamedTuple):
    valuation: ResidueSet
    outcome: JudgmentPair


def horn_aggregate(profile: Profile, spec: FrameSpec) -> HornResult:
    """Mark ``A + w`` for every majority winner ``P_w``, then read every ``P_w`` off the marks."""
    profile.validate(spec)
    r, A, n = spec.r, spec.A.members, profile.n
    cover = bytearray(r)
    for w, c in enumerate(profile.counts):
        if majority_accepts(c, n):
            for a in A:
                cover[(w + a) % r] = 1
    plus = [w for w in range(r) if all(cover[(w + a) % r] for a in A)]
    V = ResidueSet(r, (u for u in range(r) if cover[u]))
    outcome = JudgmentPair.of(r, plus, set(range(r)) - set(plus))
    return HornResult(V, outcome)


# --------------------------------------------------------------------------- #
# Sequential majority


class SeqState:
    """Running collective set plus the strategy-specific lookup arrays.

    ``cover[u]`` is 1 iff ``u`` lies in some accepted translate. On the interval
    strategy ``cvle[w]``/``cvri[w]`` hold the distance to the nearest accepted
    index within ``k`` to the left/right of ``w``, or ``k + 1``.
    ``ops`` counts primitive array reads and writes. The ``plus_bits`` and
    ``minus_bits`` masks are only maintained for the reference strategy.
    """

    def __init__(self, spec: FrameSpec, strategy: str = "general"):
        if strategy not in STRATEGIES:
            raise ParameterError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
        if strategy == "interval":
            if not spec.is_interval():
                raise ParameterError("interval strategy requires A = [0, k]")
        self.spec = spec
        self.strategy = strategy
        r, k = spec.r, spec.k
        self.status = bytearray(r)
        self.plus_bits = 0
        self.minus_bits = 0
        self.ops = 0
        self.cover = bytearray(r)
        self.in_A = bytearray(r)
        for a in spec.A:
            self.in_A[a] = 1
        members = spec.A.members
        self.offsets = sorted({(a1 - a0) % r for a0 in members for a1 in members} - {0})
        if strategy == "interval":
            self.cvle = [k + 1] * r
            self.cvri = [k + 1] * r

    @classmethod
    def from_pair(cls, jp: JudgmentPair, spec: FrameSpec, strategy: str = "general") -> "SeqState":
        """State reached after deciding exactly the indices of a consistent pair."""
        if not is_consistent(jp, spec):
            raise ParameterError(f"{jp} is inconsistent")
        state = cls(spec, strategy)
        for w in jp.plus:
            state.accept(w)
        for w in jp.minus:
            state.reject(w)
        state.ops = 0
        return state

    @property
    def jp(self) -> JudgmentPair:
        r, st = self.spec.r, self.status
        plus = residue_set_from_flags(r, st.translate(_ACCEPTED_FLAG))
        minus = residue_set_from_flags(r, st.translate(_REJECTED_FLAG))
        return JudgmentPair(plus, minus)

    def accept(self, m: int, already_covered: bool = False) -> None:
        r, k = self.spec.r, self.spec.k
        self.status[m] = ACCEPTED
        if self.strategy == "reference":
            self.plus_bits |= 1 << m
        if self.strategy == "interval":
            cvle, cvri = self.cvle, self.cvri
            for d in range(k + 1):
                w = (m + d) % r
                if d < cvle[w]:
                    cvle[w] = d
                w = (m - d) % r
                if d < cvri[w]:
                    cvri[w] = d
            self.ops += 2 * (k + 1)
        if not already_covered or self.strategy != "general":
            cover = self.cover
            for a in self.spec.A.members:
                cover[(m + a) % r] = 1
            if self.strategy == "general":
                self.ops += len(self.spec.A)

    def reject(self, m: int) -> None:
        self.status[m] = REJECTED
        if self.strategy == "reference":
            self.minus_bits |= 1 << m
        self.ops += 1


def _masks(state: SeqState) -> tuple[int, int]:
    if state.strategy == "reference":
        return state.plus_bits, state.minus_bits
    jp = state.jp
    return jp.plus.bits, jp.minus.bits


def _resolve(state: SeqState, strategy: Optional[str]) -> str:
    strategy = strategy or state.strategy
    if strategy not in STRATEGIES:
        raise ParameterError(f"unknown strategy {strategy!r}")
    if strategy == "interval" and state.strategy != "interval":
        raise ParameterError("interval checks need a state built with the interval strategy")
    return strategy


def check_accept_forced(state: SeqState, m: int, spec: FrameSpec, strategy: Optional[str] = None) -> bool:
    """Whether adding ``¬P_m`` to the (consistent) running set makes it inconsistent."""
    strategy = _resolve(state, strategy)
    r = spec.r
    m %= r
    if strategy == "reference":
        plus, minus = _masks(state)
        return not consistent_bits(plus, minus | (1 << m), spec)
    if strategy == "general":
        cover = state.cover
        state.ops += len(spec.A)
        return all(cover[(m + a) % r] for a in spec.A.members)
    state.ops += 2
    return state.cvle[m] + state.cvri[m] <= spec.k + 1


def check_reject_forced(state: SeqState, m: int, spec: FrameSpec, strategy: Optional[str] = None) -> bool:
    """Whether adding ``P_m`` to the (consistent) running set makes it inconsistent.

    Only rejected ``w0`` whose translate meets ``A + m`` can become covered, so
    the non-reference strategies look at ``w0 ∈ m + (A - A)`` alone.
    """
    strategy = _resolve(state, strategy)
    r = spec.r
    m %= r
    if strategy == "reference":
        plus, minus = _masks(state)
        return not consistent_bits(plus | (1 << m), minus, spec)
    status = state.status
    if strategy == "general":
        cover, in_A, A = state.cover, state.in_A, spec.A.members
        for d in state.offsets:
            w0 = (m + d) % r
            state.ops += 1
            if status[w0] != REJECTED:
                continue
            state.ops += len(A)
            if all(cover[(w0 + a) % r] or in_A[(w0 + a - m) % r] for a in A):
                return True
        return False
    k = spec.k
    cvle, cvri = state.cvle, state.cvri
    limit = k + 1
    for d in range(1, k + 1):
        state.ops += 2
        w0 = (m - d) % r
        if status[w0] == REJECTED:
            state.ops += 2
            if cvle[w0] + min(cvri[w0], d) <= limit:
                return True
        w0 = (m + d) % r
        if status[w0] == REJECTED:
            state.ops += 2
            if min(cvle[w0], d) + cvri[w0] <= limit:
                return True
    return False


class Step(NamedTuple):
    issue: int
    rule: str  # "a" forced accept, "b" forced reject, "c" majority
    accepted: bool


class SeqResult(NamedTuple):
    outcome: JudgmentPair
    trace: list[Step]
    ops: int


def run_seq_majority(
    profile: Profile,
    spec: FrameSpec,
    order: Optional[IssueOrder | Sequence[int]] = None,
    strategy: str = "general",
    trace: bool = False,
) -> SeqResult:
    """Sequential majority with per-issue trace and operation count."""
    profile.validate(spec)
    r, n, counts = spec.r, profile.n, profile.counts
    if order is None:
        order = IssueOrder.identity(r)
    elif not isinstance(order, IssueOrder):
        order = IssueOrder(tuple(order))
    if len(order) != r:
        raise ParameterError(f"issue order has length {len(order)}, expected {r}")

    state = SeqState(spec, strategy)
    steps: list[Step] = []
    for m in order.pi:
        forced_accept = check_accept_forced(state, m, spec, strategy)
        forced_reject = check_reject_forced(state, m, spec, strategy)
        # Both firing would mean the running set itself is inconsistent.
        assert not (forced_accept and forced_reject), f"running set inconsistent at issue {m}"
        if forced_accept:
            state.accept(m, already_covered=True)
            rule, acc = "a", True
        elif forced_reject:
            state.reject(m)
            rule, acc = "b", False
        else:
            acc = majority_accepts(counts[m], n)
            state.ops += 1
            if acc:
                state.accept(m)
            else:
                state.reject(m)
            rule = "c"
        if trace:
            steps.append(Step(m, rule, acc))
    return SeqResult(state.jp, steps, state.ops)


def seq_majority(
    profile: Profile,
    spec: FrameSpec,
    order: Optional[IssueOrder | Sequence[int]] = None,
    strategy: str = "general",
) -> JudgmentPair:
    return run_seq_majority(profile, spec, order, strategy).outcome


# --------------------------------------------------------------------------- #
# Doctrinal-paradox witness


class ParadoxWitness(NamedTuple):
    profile: Profile
    majority: JudgmentPair
    core: JudgmentPair
    core_order: tuple[tuple[int, bool], ...]


def paradox_witness(spec: FrameSpec, n: int = 3) -> ParadoxWitness:
    """Rational individual sets whose proposition-wise majority is inconsistent.

    Take the minimally inconsistent ``Y = {¬P_0} ∪ {P_s}_{s∈S0}`` built from the
    pointed minimal cover at 0. Individual ``i`` swaps one member of ``Y`` for its
    negation (the ``i``-th for the first three, then cyclically wherever the tie
    rule still leaves room) and is completed to a rational set. Majority then
    accepts all of ``Y``.
    """
    if n < 3:
        raise ParameterError("a majority paradox needs at least 3 individuals")
    pmc = find_pointed_minimal_cover(0, spec)
    core = min_inconsistent_from_pmc(pmc, spec)
    rest = sorted(s for s in pmc.S0 if s != pmc.w1)
    elems = ((pmc.w0, False),) + tuple((s, True) for s in rest) + ((pmc.w1, True),)

    # Ties go to acceptance, so ¬P_w0 survives only if fewer than n/2 judges flip it,
    # while each P_s survives up to n/2 flips.
    L = len(elems)
    room = [(n - 1) // 2] + [n // 2] * (L - 1)
    judgments = []
    for i in range(n):
        flip = next(j % L for j in range(i, i + L) if room[j % L] > 0)
        room[flip] -= 1
        plus, minus = [], []
        for j, (w, pos) in enumerate(elems):
            keep = pos if j != flip else not pos
            (plus if keep else minus).append(w)
        judgments.append(complete_judgment(JudgmentPair.of(spec.r, plus, minus), spec))
    profile = Profile.from_judgments(judgments, spec)
    return ParadoxWitness(profile, majority_outcome(profile), core, elems)
