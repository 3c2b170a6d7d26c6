"""Residues modulo r, bitset-backed residue sets, and frame parameters.

Residues are plain ``int`` values in ``[0, r-1]``. Every public function accepts
arbitrary integers and normalizes them at the boundary, so ``-1`` and ``r-1``
mean the same world.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator

import numpy as np

from .errors import ParameterError

MAX_MODULUS = 2**32
# Above this many bits, conversions go through numpy bit packing.
_PACKED_THRESHOLD = 256

FRAME1 = 1
FRAME2 = 2


def normalize(a: int, r: int) -> int:
    """Canonical representative of ``a`` modulo ``r``."""
    if r < 2:
        raise ParameterError(f"modulus must be at least 2, got {r}")
    return a % r


class ResidueSet:
    """Immutable subset of Z/rZ stored as an ``r``-bit integer.

    Bit ``i`` is set iff residue ``i`` is a member. Union, intersection and
    subset tests are word-parallel; translation is a bit rotation.
    """

    __slots__ = ("r", "bits", "_members")

    def __init__(self, r: int, members: Iterable[int] = ()):
        if r < 2 or r > MAX_MODULUS:
            raise ParameterError(f"modulus must be in [2, 2**32], got {r}")
        self.r = r
        self.bits = _pack(members, r)
        self._members: tuple[int, ...] | None = None

    @classmethod
    def from_bits(cls, r: int, bits: int) -> "ResidueSet":
        if bits < 0 or bits >> r:
            raise ParameterError("bit pattern has members outside [0, r-1]")
        out = cls.__new__(cls)
        out.r = r
        out.bits = bits
        out._members = None
        return out

    @classmethod
    def empty(cls, r: int) -> "ResidueSet":
        return cls(r)

    @classmethod
    def full(cls, r: int) -> "ResidueSet":
        return cls.from_bits(r, (1 << r) - 1)

    @classmethod
    def interval(cls, a: int, b: int, r: int) -> "ResidueSet":
        """The residues of the integers ``a, a+1, ..., b`` (empty if b < a)."""
        return cls(r, range(a, b + 1))

    @property
    def members(self) -> tuple[int, ...]:
        if self._members is None:
            self._members = _unpack(self.bits, self.r)
        return self._members

    def __contains__(self, a: object) -> bool:
        if not isinstance(a, int):
            return False
        return bool((self.bits >> (a % self.r)) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ResidueSet):
            return NotImplemented
        return self.r == other.r and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.r, self.bits))

    def __repr__(self) -> str:
        return f"ResidueSet(r={self.r}, {{{', '.join(map(str, self.members))}}})"

    def _check(self, other: "ResidueSet") -> None:
        if other.r != self.r:
            raise ParameterError(f"modulus mismatch: {self.r} vs {other.r}")

    def __or__(self, other: "ResidueSet") -> "ResidueSet":
        self._check(other)
        return ResidueSet.from_bits(self.r, self.bits | other.bits)

    def __and__(self, other: "ResidueSet") -> "ResidueSet":
        self._check(other)
        return ResidueSet.from_bits(self.r, self.bits & other.bits)

    def __sub__(self, other: "ResidueSet") -> "ResidueSet":
        self._check(other)
        return ResidueSet.from_bits(self.r, self.bits & ~other.bits)

    def __le__(self, other: "ResidueSet") -> bool:
        return self.issubset(other)

    def issubset(self, other: "ResidueSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def isdisjoint(self, other: "ResidueSet") -> bool:
        self._check(other)
        return self.bits & other.bits == 0

    def complement(self) -> "ResidueSet":
        return ResidueSet.from_bits(self.r, ((1 << self.r) - 1) ^ self.bits)

    def translate(self, w: int) -> "ResidueSet":
        """``{s + w mod r | s in self}``."""
        return ResidueSet.from_bits(self.r, rotate(self.bits, w, self.r))

    def to_list(self) -> list[int]:
        return list(self.members)


def _pack(members: Iterable[int], r: int) -> int:
    ms = members if isinstance(members, (list, tuple, range)) else list(members)
    if len(ms) <= _PACKED_THRESHOLD:
        bits = 0
        for m in ms:
            bits |= 1 << (m % r)
        return bits
    flags = np.zeros(r, dtype=bool)
    flags[np.asarray(ms, dtype=np.int64) % r] = True
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def _unpack(bits: int, r: int) -> tuple[int, ...]:
    if r <= _PACKED_THRESHOLD:
        out = []
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return tuple(out)
    raw = np.frombuffer(bits.to_bytes((r + 7) // 8, "little"), dtype=np.uint8)
    return tuple(np.flatnonzero(np.unpackbits(raw, bitorder="little")[:r]).tolist())


def residue_set_from_flags(r: int, flags) -> ResidueSet:
    """Build from a length-``r`` sequence of 0/1 flags (bytes, bytearray or array)."""
    arr = np.frombuffer(bytes(flags), dtype=np.uint8) if isinstance(flags, (bytes, bytearray)) else np.asarray(flags)
    if arr.shape != (r,):
        raise ParameterError(f"expected {r} flags, got shape {arr.shape}")
    packed = np.packbits(arr.astype(bool), bitorder="little").tobytes()
    return ResidueSet.from_bits(r, int.from_bytes(packed, "little"))


def rotate(bits: int, w: int, r: int) -> int:
    """Translate an ``r``-bit residue mask by ``w`` (bit ``i`` moves to ``i+w``)."""
    w %= r
    if w == 0:
        return bits
    mask = (1 << r) - 1
    return ((bits << w) | (bits >> (r - w))) & mask


def translate(S: ResidueSet, w: int) -> ResidueSet:
    return S.translate(w)


def as_residue_set(A: Iterable[int] | ResidueSet, r: int) -> ResidueSet:
    if isinstance(A, ResidueSet):
        if A.r != r:
            raise ParameterError(f"modulus mismatch: {A.r} vs {r}")
        return A
    return ResidueSet(r, A)


def is_k_symmetric(A: Iterable[int] | ResidueSet, k: int, r: int) -> bool:
    """True iff ``a -> k - a`` maps A into itself."""
    A = as_residue_set(A, r)
    return all((k - a) % r in A for a in A)


@dataclass(frozen=True)
class FrameSpec:
    """Frame 1 (entry world ``x`` then the ``+k`` cycle) or Frame 2 (``w -> w + A``).

    ``A`` may be passed as any iterable of integers; it is normalized into a
    :class:`ResidueSet`.
    """

    kind: int
    r: int
    k: int
    A: ResidueSet

    def __post_init__(self):
        if self.kind not in (FRAME1, FRAME2):
            raise ParameterError(f"frame kind must be 1 or 2, got {self.kind!r}")
        if not isinstance(self.r, int) or self.r < 2 or self.r > MAX_MODULUS:
            raise ParameterError(f"r must be an integer in [2, 2**32], got {self.r!r}")
        if not isinstance(self.k, int) or not 1 <= self.k < self.r:
            raise ParameterError(f"k must satisfy 1 <= k < r, got k={self.k!r}, r={self.r}")
        object.__setattr__(self, "A", as_residue_set(self.A, self.r))
        if not self.A:
            raise ParameterError("A must be nonempty")

    @property
    def designated_world(self):
        """World at which agenda formulas are evaluated: ``x`` or ``0``."""
        return X_WORLD if self.kind == FRAME1 else 0

    def is_interval(self) -> bool:
        """Whether A is exactly [0, k]."""
        return self.A == ResidueSet.interval(0, self.k, self.r)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "r": self.r, "k": self.k, "A": self.A.to_list()}

    @classmethod
    def from_dict(cls, d: dict) -> "FrameSpec":
        try:
            return cls(int(d["kind"]), int(d["r"]), int(d["k"]), [int(a) for a in d["A"]])
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"malformed frame document: {exc}") from None


# Frame 1's entry world. It lives outside Z/rZ so residue arithmetic never sees it.
X_WORLD = "x"


@dataclass(frozen=True)
class ParamReport:
    coprime: bool
    k_below_third: bool
    endpoints_in_A: bool
    A_within_interval: bool
    k_symmetric: bool
    symmetry_required: bool

    @property
    def passed(self) -> bool:
        ok = self.coprime and self.k_below_third and self.endpoints_in_A and self.A_within_interval
        return ok and (self.k_symmetric or not self.symmetry_required)

    def to_dict(self) -> dict:
        return {
            "coprime": self.coprime,
            "k_below_third": self.k_below_third,
            "endpoints_in_A": self.endpoints_in_A,
            "A_within_interval": self.A_within_interval,
            "k_symmetric": self.k_symmetric,
            "symmetry_required": self.symmetry_required,
            "passed": self.passed,
        }


def check_theorem_params(spec: FrameSpec) -> ParamReport:
    """Check the parameter regime under which the impossibility result holds.

    Failures are reported in the returned object, never raised.
    """
    r, k, A = spec.r, spec.k, spec.A
    return ParamReport(
        coprime=gcd(r, k) == 1,
        k_below_third=3 * k < r,
        endpoints_in_A=0 in A and k in A,
        A_within_interval=A.issubset(ResidueSet.interval(0, k, r)),
        k_symmetric=is_k_symmetric(A, k, r),
        symmetry_required=spec.kind == FRAME2,
    )


def regime_specs(max_r: int, kinds=(FRAME1, FRAME2), min_r: int = 4) -> Iterator[FrameSpec]:
    """Every frame spec with ``min_r <= r <= max_r`` that passes :func:`check_theorem_params`."""
    for r in range(max(min_r, 2), max_r + 1):
        for k in range(1, r):
            if 3 * k >= r:
                break
            if gcd(r, k) != 1:
                continue
            inner = list(range(1, k))
            for mask in range(1 << len(inner)):
                A = [0, k] + [a for i, a in enumerate(inner) if mask >> i & 1]
                for kind in kinds:
                    spec = FrameSpec(kind, r, k, A)
                    if check_theorem_params(spec).passed:
                        yield spec
