"""Single-variable modal formulas, Kripke evaluation, and agenda reduction.

Agenda formulas are evaluated at the designated world (``x`` on Frame 1, ``0`` on
Frame 2) and collapse to indexed propositions ``P_w``, read as ``A + w ⊆ V``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Hashable, Iterable, Union

from .errors import AgendaError, ParameterError, ParseError
from .residue import (
    FRAME1,
    FRAME2,
    X_WORLD,
    FrameSpec,
    ResidueSet,
    as_residue_set,
    is_k_symmetric,
    rotate,
)


class Op(str, enum.Enum):
    BOX = "B"
    DIAMOND = "D"


_ALIASES = {"¬": "!", "□": "B", "◇": "D", "◊": "D"}
_UNICODE = {Op.BOX: "□", Op.DIAMOND: "◇"}


@dataclass(frozen=True)
class ModalFormula:
    """``[¬] α1 α2 ... αn p`` with every ``αi`` a box or a diamond.

    Double negation is not representable: negating a negated formula returns
    the plain one.
    """

    negated: bool = False
    prefix: tuple[Op, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(Op(o) for o in self.prefix))

    def negate(self) -> "ModalFormula":
        return ModalFormula(not self.negated, self.prefix)

    def positive(self) -> "ModalFormula":
        return ModalFormula(False, self.prefix)

    def render(self, unicode: bool = False) -> str:
        if unicode:
            body = "".join(_UNICODE[o] for o in self.prefix)
            return ("¬" if self.negated else "") + body + "p"
        return ("!" if self.negated else "") + "".join(o.value for o in self.prefix) + "p"

    def __str__(self) -> str:
        return self.render(unicode=True)


def parse(text: str) -> ModalFormula:
    """Parse ``['!'] ('B'|'D')* 'p'``; ``¬``, ``□`` and ``◇`` are accepted as aliases."""
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    if not s:
        raise ParseError("empty formula", offset)
    i = 0
    negated = False
    if _ALIASES.get(s[0], s[0]) == "!":
        negated = True
        i = 1
    prefix = []
    while i < len(s):
        ch = _ALIASES.get(s[i], s[i])
        if ch == "B":
            prefix.append(Op.BOX)
        elif ch == "D":
            prefix.append(Op.DIAMOND)
        elif ch == "p":
            if i != len(s) - 1:
                raise ParseError("trailing characters after 'p'", offset + i + 1)
            return ModalFormula(negated, tuple(prefix))
        elif ch == "!":
            raise ParseError("negation is only allowed once, at the front", offset + i)
        else:
            raise ParseError(f"unexpected character {s[i]!r}", offset + i)
        i += 1
    raise ParseError("formula must end with the atom 'p'", offset + len(s))


def render(phi: ModalFormula, unicode: bool = False) -> str:
    return phi.render(unicode)


# --------------------------------------------------------------------------- #
# Frames and models

World = Hashable


@dataclass(frozen=True)
class ExplicitFrame:
    """A finite frame given by its worlds and accessibility edges."""

    worlds: tuple
    edges: tuple

    def __post_init__(self):
        ws = set(self.worlds)
        for u, v in self.edges:
            if u not in ws or v not in ws:
                raise ParameterError(f"edge ({u}, {v}) has an endpoint outside W")

    def successors(self, w: World) -> tuple:
        return tuple(v for u, v in self.edges if u == w)


Frame = Union[FrameSpec, ExplicitFrame]


def worlds(frame: Frame) -> tuple:
    if isinstance(frame, ExplicitFrame):
        return tuple(frame.worlds)
    cycle = tuple(range(frame.r))
    return (X_WORLD,) + cycle if frame.kind == FRAME1 else cycle


def successors(frame: Frame, w: World) -> tuple:
    """Accessible worlds of ``w``; for frame specs these are derived, never stored."""
    if isinstance(frame, ExplicitFrame):
        return frame.successors(w)
    r = frame.r
    if frame.kind == FRAME1:
        if w == X_WORLD:
            return frame.A.members
        return ((w + frame.k) % r,)
    return tuple((w + a) % r for a in frame.A)


@dataclass(frozen=True)
class KripkeModel:
    frame: Frame
    valuation: frozenset

    def __post_init__(self):
        V = self.valuation
        if isinstance(V, ResidueSet):
            V = V.members
        V = frozenset(V)
        W = set(worlds(self.frame))
        bad = V - W
        if bad:
            raise ParameterError(f"valuation contains worlds outside W: {sorted(map(str, bad))}")
        object.__setattr__(self, "valuation", V)


def evaluate(model: KripkeModel, world: World, phi: ModalFormula) -> bool:
    """``model ⊨ world : phi`` by memoized recursion over (world, prefix position).

    A box at a world without successors is vacuously true; a diamond there is false.
    """
    frame = model.frame
    if world not in set(worlds(frame)):
        raise ParameterError(f"unknown world {world!r}")
    prefix = phi.prefix
    V = model.valuation
    memo: dict = {}

    def holds(w, i):
        key = (w, i)
        if key in memo:
            return memo[key]
        if i == len(prefix):
            val = w in V
        elif prefix[i] is Op.BOX:
            val = all(holds(v, i + 1) for v in successors(frame, w))
        else:
            val = any(holds(v, i + 1) for v in successors(frame, w))
        memo[key] = val
        return val

    return holds(world, 0) != phi.negated


def truth_set(model: KripkeModel, phi: ModalFormula) -> frozenset:
    """All worlds satisfying ``phi``, computed layer by layer from the atom outwards."""
    frame = model.frame
    W = worlds(frame)
    succ = {w: successors(frame, w) for w in W}
    current = set(model.valuation)
    for op in reversed(phi.prefix):
        if op is Op.BOX:
            current = {w for w in W if all(v in current for v in succ[w])}
        else:
            current = {w for w in W if any(v in current for v in succ[w])}
    if phi.negated:
        current = set(W) - current
    return frozenset(current)


def truth_mask(spec: FrameSpec, vbits: int, prefix: Iterable[Op], x_in_V: bool = False) -> int:
    """Bitmask version of :func:`truth_set` for frame specs (positive formulas).

    Bit ``i < r`` stands for residue ``i``; on Frame 1 bit ``r`` stands for ``x``.
    """
    r, A = spec.r, spec.A.members
    full = (1 << r) - 1
    S = vbits & full
    if spec.kind == FRAME2:
        for op in reversed(tuple(prefix)):
            if op is Op.BOX:
                acc = full
                for a in A:
                    acc &= rotate(S, -a, r)
            else:
                acc = 0
                for a in A:
                    acc |= rotate(S, -a, r)
            S = acc
        return S
    a_mask = spec.A.bits
    x = x_in_V
    for op in reversed(tuple(prefix)):
        if op is Op.BOX:
            x = S & a_mask == a_mask
        else:
            x = S & a_mask != 0
        S = rotate(S, -spec.k, r)
    return S | (int(x) << r)


# --------------------------------------------------------------------------- #
# Reduction to indexed propositions


@dataclass(frozen=True)
class IndexedProposition:
    """``P_index`` (``A + index ⊆ V``), or its negation."""

    index: int
    negated: bool = False

    def negate(self) -> "IndexedProposition":
        return IndexedProposition(self.index, not self.negated)

    def __str__(self) -> str:
        return ("¬" if self.negated else "") + f"P_{self.index}"


def _require_symmetric_frame2(spec: FrameSpec) -> None:
    if spec.kind != FRAME2:
        raise ParameterError("box-diamond collapse only applies to Frame 2")
    if not is_k_symmetric(spec.A, spec.k, spec.r):
        raise ParameterError(f"A={spec.A.to_list()} is not {spec.k}-symmetric")


def reduce_step(spec: FrameSpec, w: int, phi: ModalFormula) -> tuple[int, ModalFormula]:
    """Collapse a leading ``□◇□`` at ``w`` into ``□`` at ``w + k``."""
    _require_symmetric_frame2(spec)
    if phi.prefix[:3] != (Op.BOX, Op.DIAMOND, Op.BOX):
        raise ParameterError(f"{phi} does not start with □◇□")
    return (w + spec.k) % spec.r, ModalFormula(phi.negated, phi.prefix[2:])


def agenda_depth(spec: FrameSpec, phi: ModalFormula) -> int:
    """The ``j`` such that ``phi`` is (the negation of) the ``j``-th agenda formula."""
    pre = phi.prefix
    if spec.kind == FRAME1:
        if pre and all(o is Op.BOX for o in pre):
            return len(pre)
        raise AgendaError(f"{phi} is not of the form □^j p with j >= 1")
    if len(pre) % 2 == 1 and all(
        o is (Op.BOX if i % 2 == 0 else Op.DIAMOND) for i, o in enumerate(pre)
    ):
        return len(pre) // 2
    raise AgendaError(f"{phi} is not of the form (□◇)^j □p")


def agenda_formula(spec: FrameSpec, j: int, negated: bool = False) -> ModalFormula:
    if spec.kind == FRAME1:
        if j < 1:
            raise AgendaError("Frame 1 agenda starts at j = 1")
        return ModalFormula(negated, (Op.BOX,) * j)
    if j < 0:
        raise AgendaError("Frame 2 agenda starts at j = 0")
    return ModalFormula(negated, (Op.BOX, Op.DIAMOND) * j + (Op.BOX,))


def reduce_agenda_formula(spec: FrameSpec, phi: ModalFormula) -> IndexedProposition:
    """Map an agenda formula (evaluated at the designated world) to ``±P_w``.

    Frame 1: ``□^j p`` becomes ``P_{(j-1)k}``. Frame 2 (k-symmetric A):
    ``(□◇)^j □p`` becomes ``P_{jk}``.
    """
    j = agenda_depth(spec, phi)
    if spec.kind == FRAME1:
        index = (j - 1) * spec.k
    else:
        _require_symmetric_frame2(spec)
        index = j * spec.k
    return IndexedProposition(index % spec.r, phi.negated)


def indexed_truth(spec: FrameSpec, V, prop: IndexedProposition) -> bool:
    """Truth of ``±P_w`` under valuation ``V`` (Frame 1's ``x`` is ignored)."""
    if not isinstance(V, ResidueSet):
        V = as_residue_set((v for v in V if v != X_WORLD), spec.r)
    held = spec.A.translate(prop.index).issubset(V)
    return held != prop.negated
