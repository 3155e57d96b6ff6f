"""Motif classes, counter arrays, and the merge from counters to a census.

A motif class is identified by a canonical *signature*: the three edges of
an instance in time order, with nodes relabelled 1, 2, 3 by first
appearance (source before destination).  ``"12|12|31"`` is two edges
``1 -> 2`` followed by ``3 -> 1``.  There are exactly 36 valid signatures:
4 pair (2-node), 24 star and 8 triangle.

The counting engines never build signatures themselves.  They fill
fixed-shape counter arrays whose cells stand for one motif class as seen
from a center node, and :func:`merge_census` folds cells into signatures.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Iterable, Mapping, Sequence

import numpy as np

from .graph import Direction

__all__ = [
    "StarType",
    "TriType",
    "TriangleMode",
    "CounterOverflowError",
    "MotifClassificationError",
    "InternalConsistencyError",
    "StarCounter",
    "PairCounter",
    "TriCounter",
    "MotifCensus",
    "canonical_signature",
    "signature_category",
    "star_cell_signature",
    "pair_cell_signature",
    "tri_cell_signature",
    "merge_census",
    "label_for_signature",
    "ALL_SIGNATURES",
    "PAIR_SIGNATURES",
    "STAR_SIGNATURES",
    "TRIANGLE_SIGNATURES",
    "LABEL_TABLE_VERSION",
]

U64_MAX = 2**64 - 1


class StarType(IntEnum):
    """Time position of the isolated edge of a star."""

    I = 0  # noqa: E741
    II = 1
    III = 2

    def __str__(self) -> str:
        return self.name


class TriType(IntEnum):
    """Time position of the edge opposite the center of a triangle."""

    I = 0  # noqa: E741
    II = 1
    III = 2

    def __str__(self) -> str:
        return self.name


class TriangleMode(str, Enum):
    COUNT_ALL = "countall"
    REMOVAL = "removal"


class CounterOverflowError(ArithmeticError):
    pass


class MotifClassificationError(ValueError):
    pass


class InternalConsistencyError(RuntimeError):
    pass


class _Counter:
    shape: tuple[int, ...] = ()

    def __init__(self, cells=None):
        if cells is None:
            self.cells = np.zeros(self.shape, dtype=np.uint64)
        else:
            arr = np.asarray(cells)
            if arr.shape != self.shape:
                raise ValueError(f"expected shape {self.shape}, got {arr.shape}")
            if arr.dtype.kind in "iu" and arr.size and int(arr.min()) < 0:
                raise ValueError("counts must be non-negative")
            self.cells = arr.astype(np.uint64)

    @classmethod
    def keys(cls):
        return list(itertools.product(*(range(n) for n in cls.shape)))

    def __getitem__(self, key) -> int:
        return int(self.cells[tuple(int(k) for k in key)])

    def __setitem__(self, key, value: int) -> None:
        if not 0 <= value <= U64_MAX:
            raise CounterOverflowError(f"count {value} outside unsigned 64-bit range")
        self.cells[tuple(int(k) for k in key)] = value

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        a, b = self.cells, other.cells
        if np.any(a > np.uint64(U64_MAX) - b):
            raise CounterOverflowError(f"{type(self).__name__} overflow on merge")
        return type(self)(a + b)

    def __iadd__(self, other):
        total = self + other
        self.cells = total.cells
        return self

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and np.array_equal(self.cells, other.cells)

    def total(self) -> int:
        return sum(int(x) for x in self.cells.ravel())

    def nonzero(self) -> dict:
        """Nonzero cells as ``{(type, d1, d2, d3): count}`` with enum keys."""
        out = {}
        for key in self.keys():
            value = int(self.cells[key])
            if value:
                out[self._label_key(key)] = value
        return out

    def _label_key(self, key):
        return tuple(Direction(k) for k in key)

    def __repr__(self) -> str:
        body = ", ".join(
            f"[{','.join(str(x) for x in k)}]={v}" for k, v in self.nonzero().items()
        )
        return f"{type(self).__name__}({body})"


class StarCounter(_Counter):
    """``Star[type, d1, d2, d3]``: 3 x 2 x 2 x 2 cells."""

    shape = (3, 2, 2, 2)

    def _label_key(self, key):
        return (StarType(key[0]),) + tuple(Direction(k) for k in key[1:])


class PairCounter(_Counter):
    """``Pair[d1, d2, d3]``: 2 x 2 x 2 cells."""

    shape = (2, 2, 2)


class TriCounter(_Counter):
    """``Tri[type, d_i, d_j, d_k]``: 3 x 2 x 2 x 2 cells.

    ``d_i`` and ``d_j`` are relative to the center, ``d_k`` (the closing
    edge) relative to the earlier neighbor.
    """

    shape = (3, 2, 2, 2)

    def _label_key(self, key):
        return (TriType(key[0]),) + tuple(Direction(k) for k in key[1:])


def canonical_signature(triple: Sequence[tuple]) -> str:
    """Signature of three time-ordered ``(src, dst)`` node pairs."""
    if len(triple) != 3:
        raise MotifClassificationError("a signature needs exactly three edges")
    labels: dict = {}
    groups = []
    for src, dst in triple:
        if src == dst:
            raise MotifClassificationError(f"self-loop on {src!r}")
        for x in (src, dst):
            if x not in labels:
                labels[x] = len(labels) + 1
        groups.append(f"{labels[src]}{labels[dst]}")
    if len(labels) > 3:
        raise MotifClassificationError("edges span more than three nodes")
    # each later edge must touch a node already seen, else the triple is disconnected
    seen = set(triple[0])
    pending = [set(e) for e in triple[1:]]
    while pending:
        linked = [e for e in pending if e & seen]
        if not linked:
            raise MotifClassificationError("edges do not form a connected graph")
        for e in linked:
            seen |= e
            pending.remove(e)
    return "|".join(groups)


def signature_category(sig: str) -> str:
    """``"pair"``, ``"star"`` or ``"triangle"``."""
    groups = sig.split("|")
    if "3" not in sig:
        return "pair"
    pairs = {frozenset(g) for g in groups}
    return "triangle" if len(pairs) == 3 else "star"


def _enumerate_signatures() -> list[str]:
    found = set()
    for labels in itertools.product((1, 2, 3), repeat=6):
        triple = [(labels[0], labels[1]), (labels[2], labels[3]), (labels[4], labels[5])]
        try:
            sig = canonical_signature(triple)
        except MotifClassificationError:
            continue
        found.add(sig)
    return sorted(found)


ALL_SIGNATURES: tuple[str, ...] = tuple(_enumerate_signatures())
PAIR_SIGNATURES = tuple(s for s in ALL_SIGNATURES if signature_category(s) == "pair")
STAR_SIGNATURES = tuple(s for s in ALL_SIGNATURES if signature_category(s) == "star")
TRIANGLE_SIGNATURES = tuple(s for s in ALL_SIGNATURES if signature_category(s) == "triangle")


def _edge(a, b, d) -> tuple:
    return (a, b) if d == Direction.OUT else (b, a)


def star_cell_signature(kind: StarType, d1: Direction, d2: Direction, d3: Direction) -> str:
    u, v, w = "u", "v", "w"
    others = {StarType.I: (w, v, v), StarType.II: (v, w, v), StarType.III: (v, v, w)}[StarType(kind)]
    return canonical_signature([_edge(u, x, d) for x, d in zip(others, (d1, d2, d3))])


def pair_cell_signature(d1: Direction, d2: Direction, d3: Direction) -> str:
    return canonical_signature([_edge("u", "w", d) for d in (d1, d2, d3)])


def tri_cell_signature(kind: TriType, d_i: Direction, d_j: Direction, d_k: Direction) -> str:
    e_i = _edge("u", "v", d_i)
    e_j = _edge("u", "w", d_j)
    e_k = _edge("v", "w", d_k)
    order = {TriType.I: (e_k, e_i, e_j), TriType.II: (e_i, e_k, e_j),
             TriType.III: (e_i, e_j, e_k)}[TriType(kind)]
    return canonical_signature(order)


_STAR_MAP = {k: star_cell_signature(*k) for k in StarCounter.keys()}
_PAIR_MAP = {k: pair_cell_signature(*k) for k in PairCounter.keys()}
_TRI_MAP = {k: tri_cell_signature(*k) for k in TriCounter.keys()}


def _fibers(mapping: Mapping) -> dict[str, list]:
    out: dict[str, list] = {}
    for key, sig in mapping.items():
        out.setdefault(sig, []).append(key)
    return out


PAIR_CLASSES = _fibers(_PAIR_MAP)
TRIANGLE_CLASSES = _fibers(_TRI_MAP)

LABEL_TABLE_VERSION = "1"
# Only anchored classes are named; "M_26" is the cyclic triangle not already named M_25.
_LABELS = {
    "12|23|32": "M_24",
    "12|31|23": "M_25",
    "12|23|31": "M_26",
    "12|32|31": "M_46",
    "12|12|12": "M_55",
    "12|21|21": "M_56",
    "12|12|31": "M_63",
    "12|21|12": "M_65",
    "12|12|21": "M_66",
}


def label_for_signature(sig: str) -> str:
    if sig not in ALL_SIGNATURES:
        raise MotifClassificationError(f"not a valid signature: {sig!r}")
    return _LABELS.get(sig, sig)


@dataclass
class MotifCensus:
    """Count per motif signature; always carries all 36 signatures."""

    counts: dict[str, int]
    delta: int
    labels: dict[str, str] | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        extra = set(self.counts) - set(ALL_SIGNATURES)
        if extra:
            raise MotifClassificationError(f"unknown signatures: {sorted(extra)}")
        for sig, value in self.counts.items():
            if not 0 <= value <= U64_MAX:
                raise CounterOverflowError(f"count for {sig} out of range: {value}")
        self.counts = {s: int(self.counts.get(s, 0)) for s in ALL_SIGNATURES}

    @classmethod
    def zeros(cls, delta: int = 0) -> "MotifCensus":
        return cls({}, delta)

    @classmethod
    def from_signatures(cls, signatures: Iterable[str], delta: int) -> "MotifCensus":
        counts: dict[str, int] = {}
        for sig in signatures:
            counts[sig] = counts.get(sig, 0) + 1
        return cls(counts, delta)

    def __getitem__(self, sig: str) -> int:
        return self.counts[sig]

    def __eq__(self, other) -> bool:
        return isinstance(other, MotifCensus) and self.counts == other.counts

    def __add__(self, other: "MotifCensus") -> "MotifCensus":
        return MotifCensus({s: self.counts[s] + other.counts[s] for s in ALL_SIGNATURES},
                           self.delta)

    def total(self) -> int:
        return sum(self.counts.values())

    def restrict(self, category: str) -> dict[str, int]:
        return {s: c for s, c in self.counts.items() if signature_category(s) == category}

    def diff(self, other: "MotifCensus") -> dict[str, tuple[int, int]]:
        return {s: (self.counts[s], other.counts[s]) for s in ALL_SIGNATURES
                if self.counts[s] != other.counts[s]}

    def with_labels(self) -> "MotifCensus":
        self.labels = {s: label_for_signature(s) for s in ALL_SIGNATURES}
        return self


def merge_census(star: StarCounter, pair: PairCounter, tri: TriCounter,
                 tri_mode: TriangleMode | str = TriangleMode.COUNT_ALL,
                 delta: int = 0) -> MotifCensus:
    """Fold full-run counters into a census.

    Star cells map one-to-one onto star signatures.  Each pair instance is
    seen once from each endpoint, in complementary cells, so a pair class
    takes the value of one cell after checking both agree.  In count-all
    mode each triangle instance lands once in each of its class's three
    cells, so the class count is the cell sum divided by three.
    """
    tri_mode = TriangleMode(tri_mode)
    counts: dict[str, int] = {}
    for key, sig in _STAR_MAP.items():
        counts[sig] = star[key]
    for sig, keys in PAIR_CLASSES.items():
        values = {pair[k] for k in keys}
        if len(values) != 1:
            raise InternalConsistencyError(
                f"pair cells for {sig} disagree: {[pair[k] for k in keys]}")
        counts[sig] = values.pop()
    for sig, keys in TRIANGLE_CLASSES.items():
        total = sum(tri[k] for k in keys)
        if tri_mode is TriangleMode.COUNT_ALL:
            if total % 3:
                raise InternalConsistencyError(
                    f"triangle cells for {sig} sum to {total}, not a multiple of 3")
            total //= 3
        counts[sig] = total
    return MotifCensus(counts, delta)
