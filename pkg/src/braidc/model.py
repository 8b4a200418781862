"""Fibonacci anyon data: charges, fusion rules, fusion trees, F and R symbols.

Symbol lookups never raise on inadmissible labels; they return 0 so that the
consistency identities can be summed over every label assignment.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterator, Mapping

TAU = (math.sqrt(5.0) - 1.0) / 2.0  # inverse golden ratio


class Charge(IntEnum):
    VACUUM = 0
    TAU = 1

    def dual(self) -> Charge:
        # both charges are self-dual
        return self


CHARGES = (Charge.VACUUM, Charge.TAU)


def fuse(a: Charge, b: Charge) -> frozenset[Charge]:
    """Admissible outcomes of fusing ``a`` with ``b``."""
    a, b = Charge(a), Charge(b)
    if a is Charge.VACUUM:
        return frozenset({b})
    if b is Charge.VACUUM:
        return frozenset({a})
    return frozenset({Charge.VACUUM, Charge.TAU})


def multiplicity(a: Charge, b: Charge, c: Charge) -> int:
    """Fusion multiplicity N^c_ab (0 or 1 for this model)."""
    return int(Charge(c) in fuse(a, b))


@dataclass(frozen=True)
class FusionTree:
    """Left-to-right fusion of ``leaves``.

    ``intermediates[k]`` is the charge of leaves 0..k+1 fused together, so the
    last intermediate equals ``total`` whenever there are two or more leaves.
    """

    leaves: tuple[Charge, ...]
    intermediates: tuple[Charge, ...]
    total: Charge

    def __post_init__(self):
        if len(self.leaves) == 0:
            if self.intermediates or self.total is not Charge.VACUUM:
                raise ValueError("empty tree must have vacuum total")
            return
        if len(self.intermediates) != len(self.leaves) - 1:
            raise ValueError("need one intermediate per fusion step")
        running = self.leaves[0]
        for leaf, mid in zip(self.leaves[1:], self.intermediates):
            if mid not in fuse(running, leaf):
                raise ValueError(f"{running.name} x {leaf.name} cannot give {mid.name}")
            running = mid
        if running is not self.total:
            raise ValueError("total does not match last fusion outcome")


def _trees(leaves: tuple[Charge, ...]) -> Iterator[FusionTree]:
    # Vacuum < Tau at every step gives lexicographic order on intermediates.
    def grow(running: Charge, rest: tuple[Charge, ...], mids: tuple[Charge, ...]):
        if not rest:
            yield mids, running
            return
        for out in sorted(fuse(running, rest[0])):
            yield from grow(out, rest[1:], mids + (out,))

    if not leaves:
        yield FusionTree((), (), Charge.VACUUM)
        return
    for mids, total in grow(leaves[0], leaves[1:], ()):
        yield FusionTree(leaves, mids, total)


def enumerate_basis(n: int, total: Charge) -> list[FusionTree]:
    """Fusion-tree basis for ``n`` Tau anyons with the given total charge.

    For ``n=3, total=TAU`` the result is ``[|0>, |1>]``: the first pair fuses
    to vacuum in ``|0>`` and to Tau in ``|1>``.
    """
    if n < 1:
        raise ValueError("need at least one anyon")
    total = Charge(total)
    return [t for t in _trees((Charge.TAU,) * n) if t.total is total]


def fusion_space_dim(n: int, total: Charge | None = None) -> int:
    """Number of fusion trees on ``n`` Tau anyons with the given total charge.

    ``total=None`` is the dimension usually quoted for the model, 1, 1, 2, 3,
    5, 8, ... for n = 1, 2, 3, ...: n anyons fusing to an overall Tau, the
    sector a qubit is prepared in.  Add the VACUUM count to get the size of
    the unconstrained space.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    # counts[c] = number of trees on the first k leaves with running charge c
    counts = {Charge.VACUUM: 1, Charge.TAU: 0}
    for _ in range(n):
        nxt = {Charge.VACUUM: 0, Charge.TAU: 0}
        for c, k in counts.items():
            for out in fuse(c, Charge.TAU):
                nxt[out] += k
        counts = nxt
    if total is None:
        total = Charge.TAU
    return counts[Charge(total)]


FKey = tuple[int, int, int, int, int, int]
RKey = tuple[int, int, int]


def f_admissible(a, b, c, d, i, j) -> bool:
    """Whether (F^d_abc)^i_j connects two valid trees: i = a*b, j = b*c."""
    return bool(multiplicity(a, b, i) and multiplicity(i, c, d)
                and multiplicity(b, c, j) and multiplicity(a, j, d))


@dataclass(frozen=True)
class FSymbols:
    """Table of F-move coefficients (F^d_abc)^i_j keyed by ``(a, b, c, d, i, j)``.

    ``i`` labels the fusion of (a, b) and ``j`` the fusion of (b, c).
    Missing keys read as 0.
    """

    entries: Mapping[FKey, complex] = field(default_factory=dict)

    @classmethod
    def fibonacci(cls) -> FSymbols:
        entries: dict[FKey, complex] = {}
        for key in itertools.product((0, 1), repeat=6):
            if not f_admissible(*key):
                continue
            a, b, c, d, i, j = key
            if (a, b, c, d) == (1, 1, 1, 1):
                entries[key] = ((TAU, math.sqrt(TAU)), (math.sqrt(TAU), -TAU))[i][j]
            else:
                entries[key] = 1.0
        return cls(entries)

    def __call__(self, a, b, c, d, i, j) -> complex:
        return self.entries.get((int(a), int(b), int(c), int(d), int(i), int(j)), 0.0)

    def matrix(self, a, b, c, d) -> list[list[complex]]:
        """Full 2x2 block over (i, j), including inadmissible zeros."""
        return [[self(a, b, c, d, i, j) for j in (0, 1)] for i in (0, 1)]

    def with_entry(self, key: FKey, value: complex) -> FSymbols:
        entries = dict(self.entries)
        entries[key] = value
        return FSymbols(entries)


@dataclass(frozen=True)
class RSymbols:
    """Clockwise exchange phases R^c_ab keyed by ``(a, b, c)``; missing keys read as 0."""

    entries: Mapping[RKey, complex] = field(default_factory=dict)

    @classmethod
    def fibonacci(cls) -> RSymbols:
        entries: dict[RKey, complex] = {}
        for a, b, c in itertools.product((0, 1), repeat=3):
            if not multiplicity(a, b, c):
                continue
            if (a, b) == (1, 1):
                entries[(a, b, c)] = cmath.exp(-4j * math.pi / 5) if c == 0 else cmath.exp(3j * math.pi / 5)
            else:
                entries[(a, b, c)] = 1.0
        return cls(entries)

    def __call__(self, a, b, c) -> complex:
        return self.entries.get((int(a), int(b), int(c)), 0.0)

    def with_entry(self, key: RKey, value: complex) -> RSymbols:
        entries = dict(self.entries)
        entries[key] = value
        return RSymbols(entries)


FIBONACCI_F = FSymbols.fibonacci()
FIBONACCI_R = RSymbols.fibonacci()


def f_symbol(a, b, c, d, i, j) -> complex:
    return FIBONACCI_F(a, b, c, d, i, j)


def r_symbol(a, b, c) -> complex:
    return FIBONACCI_R(a, b, c)


def f_matrix() -> list[list[float]]:
    """The 2x2 block F^1_111 on the qubit space, basis {1x1->0, 1x1->1}."""
    return [[FIBONACCI_F(1, 1, 1, 1, i, j).real for j in (0, 1)] for i in (0, 1)]


def pentagon_residuals(F: FSymbols = FIBONACCI_F) -> Iterator[tuple[tuple[int, ...], float]]:
    """Yield ``(labels, |lhs - rhs|)`` for every assignment of (a,b,c,d,e,i,j,k,m)."""
    for labels in itertools.product((0, 1), repeat=9):
        a, b, c, d, e, i, j, k, m = labels
        lhs = F(j, c, d, e, i, k) * F(a, b, k, e, j, m)
        rhs = sum(F(a, b, c, i, j, l) * F(a, l, d, e, i, m) * F(b, c, d, m, l, k) for l in (0, 1))
        yield labels, abs(lhs - rhs)


def hexagon_residuals(F: FSymbols = FIBONACCI_F,
                      R: RSymbols = FIBONACCI_R) -> Iterator[tuple[tuple[int, ...], float]]:
    """Yield ``(labels, |lhs - rhs|)`` for every assignment of (a,b,c,d,i,j)."""
    for labels in itertools.product((0, 1), repeat=6):
        a, b, c, d, i, j = labels
        lhs = sum(F(c, a, b, d, i, k) * R(k, c, d) * F(a, b, c, d, k, j) for k in (0, 1))
        rhs = R(a, c, i) * F(a, c, b, d, i, j) * R(b, c, j)
        yield labels, abs(lhs - rhs)


def verify_pentagon(F: FSymbols = FIBONACCI_F) -> float:
    """Largest pentagon residual over all 2**9 label assignments."""
    return max(r for _, r in pentagon_residuals(F))


def verify_hexagon(F: FSymbols = FIBONACCI_F, R: RSymbols = FIBONACCI_R) -> float:
    """Largest hexagon residual over all 2**6 label assignments."""
    return max(r for _, r in hexagon_residuals(F, R))
