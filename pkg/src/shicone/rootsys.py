"""Irreducible crystallographic root systems and their Weyl groups.

Conventions
-----------
Roots are integer coordinate vectors in the simple-root basis, so the
simple roots are the unit vectors and a root is positive exactly when
all coordinates are >= 0 (and not all zero).  The Euclidean structure
is carried by the symmetrized Cartan form ``form[i][j] = (a_i, a_j)``;
no embedding into standard coordinates is used.

``cartan[i][j] = 2 (a_i, a_j) / (a_j, a_j)``, so the simple reflection
``s_i`` sends a coordinate vector v to v - (sum_j v_j cartan[j][i]) e_i.

Simple-root numbering: chains are numbered consecutively.  For B_n the
first simple root is the short one and for C_n the first is the long
one, so that in B2 the positive roots read a, b, a+b, 2a+b with a short.
Supported families: A (n>=1), B, C (n>=2), D (n>=3), G2, F4.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .poly import IntPolynomial
from .posets import FinitePoset

RootVector = tuple  # integer coordinates in the simple-root basis
Matrix = tuple  # tuple of row tuples

_FAMILY_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3, "G": 2, "F": 4}
_FIXED_RANK = {"G": 2, "F": 4}

#: Hard bound on Weyl-group enumeration (largest supported group is F4).
MAX_WEYL_RANK = 4


@dataclass(frozen=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        fam, n = self.family, self.rank
        if fam == "E":
            raise ValueError(
                "family 'E' is not supported: its Weyl groups exceed the "
                f"rank-{MAX_WEYL_RANK} enumeration bound this library is built around"
            )
        if fam not in _FAMILY_MIN_RANK:
            raise ValueError(f"unknown Cartan family {fam!r}")
        if not isinstance(n, int) or n < _FAMILY_MIN_RANK[fam]:
            raise ValueError(f"inadmissible rank {n} for family {fam}")
        if fam in _FIXED_RANK and n != _FIXED_RANK[fam]:
            raise ValueError(f"family {fam} only exists in rank {_FIXED_RANK[fam]}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        m = re.fullmatch(r"\s*([A-Za-z])\s*(\d+)\s*", text)
        if not m:
            raise ValueError(f"cannot parse Cartan type {text!r} (expected e.g. 'B2')")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def _cartan_matrix(ctype: CartanType) -> Matrix:
    fam, n = ctype.family, ctype.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, ij=-1, ji=-1):
        a[i][j] = ij
        a[j][i] = ji

    if fam in ("A", "B", "C"):
        for i in range(n - 1):
            bond(i, i + 1)
        if fam == "B" and n >= 2:
            bond(0, 1, -1, -2)  # node 0 short
        if fam == "C" and n >= 2:
            bond(0, 1, -2, -1)  # node 0 long
    elif fam == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif fam == "G":
        bond(0, 1, -1, -3)  # node 0 short
    elif fam == "F":
        bond(0, 1)
        bond(1, 2, -2, -1)  # nodes 0,1 long; 2,3 short
        bond(2, 3)
    return tuple(tuple(row) for row in a)


def _root_norms(ctype: CartanType) -> tuple:
    """Squared lengths (a_i, a_i) of the simple roots."""
    fam, n = ctype.family, ctype.rank
    if fam in ("A", "D"):
        return (2,) * n
    if fam == "B":
        return (1,) + (2,) * (n - 1)
    if fam == "C":
        return (4,) + (2,) * (n - 1)
    if fam == "G":
        return (2, 6)
    return (2, 2, 1, 1)  # F4


_DEGREES = {
    "A": lambda n: tuple(range(2, n + 2)),
    "B": lambda n: tuple(2 * i for i in range(1, n + 1)),
    "C": lambda n: tuple(2 * i for i in range(1, n + 1)),
    "D": lambda n: tuple(2 * i for i in range(1, n)) + (n,),
    "G": lambda n: (2, 6),
    "F": lambda n: (2, 6, 8, 12),
}


@dataclass(frozen=True)
class RootSystem:
    ctype: CartanType
    cartan: Matrix
    form: Matrix  # Fractions; form[i][j] = (a_i, a_j)
    positive_roots: tuple  # RootVectors sorted by (height, coords)
    coxeter_number: int
    degrees: tuple

    @property
    def rank(self) -> int:
        return self.ctype.rank

    def __hash__(self) -> int:
        # the type determines everything else; a full-field hash would
        # grind through the Fraction form matrix on every cache lookup
        return hash(self.ctype)

    def __repr__(self) -> str:
        return f"RootSystem({self.ctype}, {len(self.positive_roots)} positive roots)"


@dataclass(frozen=True)
class WeylElement:
    """Group element as its action matrix on simple-root coordinates.

    ``matrix[i][j]`` is the coefficient of a_i in the image of a_j, so the
    image of a coordinate vector v is the matrix-vector product.  ``word``
    is a product expression in simple reflections, left factor first; for
    elements produced by :func:`weyl_group` it is a reduced word.
    """

    matrix: Matrix
    word: tuple

    @property
    def length(self) -> int:
        return len(self.word)

    def __repr__(self) -> str:
        return f"WeylElement(word={''.join(str(i + 1) for i in self.word) or 'e'})"


def is_positive_vec(coords: Sequence[int]) -> bool:
    return all(c >= 0 for c in coords) and any(c > 0 for c in coords)


def is_negative_vec(coords: Sequence[int]) -> bool:
    return all(c <= 0 for c in coords) and any(c < 0 for c in coords)


def height(coords: Sequence[int]) -> int:
    return sum(coords)


def _reflect_simple(cartan: Matrix, v: Sequence[int], i: int) -> RootVector:
    c = sum(v[j] * cartan[j][i] for j in range(len(v)))
    out = list(v)
    out[i] -= c
    return tuple(out)


def _assert_positive_definite(form: Matrix) -> None:
    n = len(form)
    rows = [[Fraction(x) for x in row] for row in form]
    # Fraction-free-ish Gaussian elimination; all pivots must be positive.
    for k in range(n):
        if rows[k][k] <= 0:
            raise AssertionError("bilinear form is not positive definite")
        for i in range(k + 1, n):
            f = rows[i][k] / rows[k][k]
            for j in range(k, n):
                rows[i][j] -= f * rows[k][j]


@lru_cache(maxsize=None)
def build_root_system(ctype: CartanType) -> RootSystem:
    """Construct a root system by reflection closure of the simple roots."""
    n = ctype.rank
    cartan = _cartan_matrix(ctype)
    norms = _root_norms(ctype)
    form = tuple(
        tuple(Fraction(cartan[i][j] * norms[j], 2) for j in range(n)) for i in range(n)
    )
    for i in range(n):
        for j in range(n):
            assert form[i][j] == form[j][i]
    _assert_positive_definite(form)

    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots = set(simples)
    queue = list(simples)
    while queue:
        v = queue.pop()
        for i in range(n):
            w = _reflect_simple(cartan, v, i)
            if is_positive_vec(w) and w not in roots:
                roots.add(w)
                queue.append(w)
    positive = tuple(sorted(roots, key=lambda r: (height(r), r)))

    h = 2 * len(positive) // n
    degrees = _DEGREES[ctype.family](n)
    assert h == _coxeter_table(ctype), "closure disagrees with Coxeter number table"
    assert len(positive) == n * h // 2
    assert set(positive[:n]) == set(simples), "simple roots must come first"

    rs = RootSystem(ctype, cartan, form, positive, h, degrees)
    assert _catalan(rs) > 0
    return rs


def _coxeter_table(ctype: CartanType) -> int:
    fam, n = ctype.family, ctype.rank
    return {
        "A": n + 1,
        "B": 2 * n,
        "C": 2 * n,
        "D": 2 * n - 2,
        "G": 6,
        "F": 12,
    }[fam]


@lru_cache(maxsize=None)
def root_index(rs: RootSystem) -> dict:
    """Coordinate vector -> index into ``positive_roots``."""
    return {r: i for i, r in enumerate(rs.positive_roots)}


def inner_product(rs: RootSystem, beta: Sequence, gamma: Sequence) -> Fraction:
    """Exact bilinear form value for coordinate vectors of length rank."""
    n = rs.rank
    if len(beta) != n or len(gamma) != n:
        raise ValueError("coordinate vectors must have length rank")
    total = Fraction(0)
    for i in range(n):
        if beta[i]:
            row = rs.form[i]
            total += beta[i] * sum(row[j] * gamma[j] for j in range(n) if gamma[j])
    return total


@lru_cache(maxsize=None)
def simple_reflections(rs: RootSystem) -> tuple:
    """Matrices of the simple reflections acting on coordinates."""
    n = rs.rank
    mats = []
    for i in range(n):
        m = [[1 if k == j else 0 for j in range(n)] for k in range(n)]
        for j in range(n):
            m[i][j] -= rs.cartan[j][i]
        mats.append(tuple(tuple(row) for row in m))
    return tuple(mats)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def mat_vec(m: Matrix, v: Sequence) -> tuple:
    n = len(m)
    return tuple(sum(m[i][j] * v[j] for j in range(n)) for i in range(n))


def identity_element(rs: RootSystem) -> WeylElement:
    n = rs.rank
    eye = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return WeylElement(eye, ())


def element_from_word(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    """Weyl element for an arbitrary (not necessarily reduced) word."""
    gens = simple_reflections(rs)
    word = tuple(word)
    m = identity_element(rs).matrix
    for i in word:
        if not 0 <= i < rs.rank:
            raise ValueError(f"generator index {i} out of range")
        m = mat_mul(m, gens[i])
    return WeylElement(m, word)


@lru_cache(maxsize=None)
def weyl_group(rs: RootSystem) -> tuple:
    """All Weyl group elements by breadth-first closure over the generators.

    Each element carries the first reduced word the BFS reached it by
    (generator index order breaks ties).  The identity comes first and
    word length is monotone along the sequence.
    """
    if rs.rank > MAX_WEYL_RANK:
        raise ValueError(
            f"Weyl group enumeration is limited to rank <= {MAX_WEYL_RANK}"
        )
    gens = simple_reflections(rs)
    e = identity_element(rs)
    seen = {e.matrix: e}
    order = [e]
    frontier = [e]
    while frontier:
        nxt = []
        for w in frontier:
            for i, g in enumerate(gens):
                m = mat_mul(w.matrix, g)
                if m not in seen:
                    elt = WeylElement(m, w.word + (i,))
                    seen[m] = elt
                    order.append(elt)
                    nxt.append(elt)
        frontier = nxt
    return tuple(order)


def inverse_element(rs: RootSystem, w: WeylElement) -> WeylElement:
    """Inverse; the reversed word is a valid (reduced if w's was) word."""
    return element_from_word(rs, tuple(reversed(w.word)))


def act(rs: RootSystem, w: WeylElement, coords: Sequence[int]) -> RootVector:
    """Image of a root under w; the result is again a root."""
    idx = root_index(rs)
    if tuple(coords) not in idx and tuple(-c for c in coords) not in idx:
        raise ValueError(f"{tuple(coords)} is not a root")
    out = mat_vec(w.matrix, coords)
    assert out in idx or tuple(-c for c in out) in idx
    return out


def inversion_set(rs: RootSystem, w: WeylElement) -> frozenset:
    """Indices of positive roots sent to negative roots by w^{-1}."""
    minv = inverse_element(rs, w).matrix
    return frozenset(
        i
        for i, r in enumerate(rs.positive_roots)
        if is_negative_vec(mat_vec(minv, r))
    )


@lru_cache(maxsize=None)
def root_poset(rs: RootSystem) -> FinitePoset:
    """Root poset on indices into ``positive_roots``.

    Covers are the pairs whose difference is a simple root; the order is
    the transitive closure of those covers.
    """
    idx = root_index(rs)
    n = rs.rank
    rel = []
    for i, r in enumerate(rs.positive_roots):
        for s in range(n):
            up = list(r)
            up[s] += 1
            j = idx.get(tuple(up))
            if j is not None:
                rel.append((i, j))
    return FinitePoset(range(len(rs.positive_roots)), rel)


def _catalan(rs: RootSystem) -> int:
    value = Fraction(1)
    for d in rs.degrees:
        value *= Fraction(d + rs.coxeter_number, d)
    assert value.denominator == 1
    return int(value)


@dataclass(frozen=True)
class Numerology:
    catalan: int
    parking: int
    narayana: IntPolynomial


def numerology(rs: RootSystem) -> Numerology:
    """Catalan and parking-function counts plus the Narayana refinement."""
    catalan = _catalan(rs)
    parking = (rs.coxeter_number + 1) ** rs.rank
    narayana = root_poset(rs).antichain_polynomial()
    assert narayana(1) == catalan
    return Numerology(catalan, parking, narayana)
