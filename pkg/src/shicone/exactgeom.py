"""Exact rational linear geometry: feasibility and affine flats.

All arithmetic is over ``fractions.Fraction``; there is no floating
point anywhere and no tolerances.  Feasibility of mixed strict and
non-strict systems is decided by Fourier-Motzkin elimination with exact
witness extraction; the kernel lives in ``_fmcore_c`` (compiled) with a
pure-Python twin ``_fmcore_py`` selected as fallback at import time.

Ambient dimension is capped at 4: open cones of the rank <= 4 Weyl
groups are the only customers, and the cap keeps elimination blow-up
irrelevant.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

try:  # pragma: no cover - exercised indirectly via either backend
    from . import _fmcore_c as _fmcore

    KERNEL_BACKEND = "compiled"
except ImportError:  # pragma: no cover
    from . import _fmcore_py as _fmcore

    KERNEL_BACKEND = "pure-python"

EQ, GE, GT = _fmcore.EQ, _fmcore.GE, _fmcore.GT

MAX_DIM = 4


class Relation(Enum):
    EQ = "=="
    GT = ">"
    LT = "<"
    GE = ">="
    LE = "<="


@dataclass(frozen=True)
class LinearConstraint:
    """``normal . x  <relation>  rhs`` with exact rational data."""

    normal: tuple
    rhs: Fraction
    relation: Relation

    @classmethod
    def of(cls, normal: Sequence, relation: Relation, rhs) -> "LinearConstraint":
        return cls(tuple(Fraction(c) for c in normal), Fraction(rhs), relation)

    def constant_truth(self) -> Optional[bool]:
        """For a zero normal, the constraint's fixed truth value; else None."""
        if any(self.normal):
            return None
        zero = Fraction(0)
        return {
            Relation.EQ: zero == self.rhs,
            Relation.GT: zero > self.rhs,
            Relation.LT: zero < self.rhs,
            Relation.GE: zero >= self.rhs,
            Relation.LE: zero <= self.rhs,
        }[self.relation]

    def holds_at(self, point: Sequence) -> bool:
        value = sum(c * x for c, x in zip(self.normal, point))
        return {
            Relation.EQ: value == self.rhs,
            Relation.GT: value > self.rhs,
            Relation.LT: value < self.rhs,
            Relation.GE: value >= self.rhs,
            Relation.LE: value <= self.rhs,
        }[self.relation]


def _to_kernel_row(c: LinearConstraint):
    scale = 1
    for f in (*c.normal, c.rhs):
        scale = lcm(scale, f.denominator)
    coeffs = [int(f * scale) for f in c.normal]
    rhs = int(c.rhs * scale)
    if c.relation is Relation.EQ:
        return coeffs, rhs, EQ
    if c.relation is Relation.GE:
        return coeffs, rhs, GE
    if c.relation is Relation.GT:
        return coeffs, rhs, GT
    if c.relation is Relation.LE:
        return [-x for x in coeffs], -rhs, GE
    return [-x for x in coeffs], -rhs, GT


def feasible(constraints: Iterable[LinearConstraint]) -> Optional[tuple]:
    """An exact interior witness of the system, or None if infeasible.

    The witness is re-substituted into every constraint before being
    returned; exact arithmetic means the check is equality-sharp.
    """
    constraints = list(constraints)
    dims = {len(c.normal) for c in constraints}
    if len(dims) > 1:
        raise ValueError("constraints live in different dimensions")
    dim = dims.pop() if dims else 0
    if dim > MAX_DIM:
        raise ValueError(f"dimension {dim} exceeds the supported bound {MAX_DIM}")
    rows = []
    for c in constraints:
        truth = c.constant_truth()
        if truth is False:
            return None
        if truth is None:
            rows.append(_to_kernel_row(c))
    witness = feasible_rows(dim, rows)
    if witness is None:
        return None
    for c in constraints:
        if not c.holds_at(witness):
            raise AssertionError("witness failed re-substitution")
    return witness


def feasible_rows(dim: int, rows) -> Optional[tuple]:
    """Kernel-format fast path: integer rows ``(coeffs, rhs, kind)``."""
    result = _fmcore.solve(dim, rows)
    if result is None:
        return None
    nums, den = result
    return tuple(Fraction(n, den) for n in nums)


# -- affine flats ---------------------------------------------------------


@dataclass(frozen=True)
class AffineFlat:
    """Solution set of a linear system, in canonical reduced form.

    ``rref`` is the reduced row-echelon form of the augmented system and
    is a canonical key for the flat: two hyperplane collections cut out
    the same flat exactly when their reduced systems agree.  The empty
    flat is encoded by a single contradictory row.
    """

    dim: int
    basepoint: Optional[tuple]
    directions: tuple
    rref: tuple

    @property
    def is_empty(self) -> bool:
        return self.basepoint is None

    @property
    def codim(self) -> int:
        if self.is_empty:
            raise ValueError("the empty flat has no codimension")
        return self.dim - len(self.directions)

    def __repr__(self) -> str:
        if self.is_empty:
            return f"AffineFlat(dim={self.dim}, empty)"
        return f"AffineFlat(dim={self.dim}, codim={self.codim})"


def intersect_hyperplanes(dim: int, rows: Iterable[tuple]) -> AffineFlat:
    """Exact intersection of hyperplanes ``normal . x = rhs``.

    No rows yields the ambient space; an inconsistent system yields the
    empty flat.
    """
    if dim > MAX_DIM:
        raise ValueError(f"dimension {dim} exceeds the supported bound {MAX_DIM}")
    work = []
    for normal, rhs in rows:
        if len(normal) != dim:
            raise ValueError("hyperplane dimension mismatch")
        work.append([Fraction(c) for c in normal] + [Fraction(rhs)])

    pivot_cols = []
    r = 0
    for col in range(dim):
        piv = next((i for i in range(r, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        p = work[r][col]
        work[r] = [x / p for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col]:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivot_cols.append(col)
        r += 1
    for i in range(r, len(work)):
        if work[i][dim]:
            return empty_flat(dim)

    rref = tuple(tuple(row) for row in work[:r])
    basepoint = [Fraction(0)] * dim
    for row, col in zip(rref, pivot_cols):
        basepoint[col] = row[dim]
    free_cols = [c for c in range(dim) if c not in pivot_cols]
    directions = []
    for f in free_cols:
        v = [Fraction(0)] * dim
        v[f] = Fraction(1)
        for row, col in zip(rref, pivot_cols):
            v[col] = -row[f]
        directions.append(tuple(v))
    return AffineFlat(dim, tuple(basepoint), tuple(directions), rref)


def empty_flat(dim: int) -> AffineFlat:
    marker = tuple([Fraction(0)] * dim + [Fraction(1)])
    return AffineFlat(dim, None, (), (marker,))


def full_space(dim: int) -> AffineFlat:
    return intersect_hyperplanes(dim, [])


def flat_contains(flat: AffineFlat, normal: Sequence, rhs) -> bool:
    """Whether every point of a nonempty flat lies on the hyperplane."""
    if flat.is_empty:
        raise ValueError("empty flat")
    rhs = Fraction(rhs)
    if sum(c * x for c, x in zip(normal, flat.basepoint)) != rhs:
        return False
    return all(
        sum(c * x for c, x in zip(normal, d)) == 0 for d in flat.directions
    )


def contains_flat(outer: AffineFlat, inner: AffineFlat) -> bool:
    """Whether ``outer`` contains ``inner``, both nonempty."""
    if outer.is_empty or inner.is_empty:
        raise ValueError("empty flat")
    for row in outer.rref:
        normal, rhs = row[:-1], row[-1]
        if sum(c * x for c, x in zip(normal, inner.basepoint)) != rhs:
            return False
        for d in inner.directions:
            if sum(c * x for c, x in zip(normal, d)) != 0:
                return False
    return True


def matrix_rank(rows: Iterable[Sequence]) -> int:
    """Rank over the rationals of a collection of vectors."""
    work = [[Fraction(x) for x in row] for row in rows]
    if not work:
        return 0
    dim = len(work[0])
    rank = 0
    for col in range(dim):
        piv = next((i for i in range(rank, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        p = work[rank][col]
        for i in range(len(work)):
            if i != rank and work[i][col]:
                f = work[i][col] / p
                work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
        rank += 1
    return rank
