"""Exact combinatorics of Shi arrangements restricted to Weyl cones.

Construct crystallographic root systems, enumerate regions and flats of
Shi arrangements (and their deletions and level extensions) inside Weyl
cones, and compute the order ring of a finite poset, all in exact
rational arithmetic.
"""

from .exactgeom import KERNEL_BACKEND
from .poly import IntPolynomial
from .posets import FinitePoset
from .rootsys import (
    CartanType,
    RootSystem,
    WeylElement,
    build_root_system,
    inner_product,
    inversion_set,
    numerology,
    root_poset,
    weyl_group,
)

__all__ = [
    "CartanType",
    "FinitePoset",
    "IntPolynomial",
    "KERNEL_BACKEND",
    "RootSystem",
    "WeylElement",
    "build_root_system",
    "inner_product",
    "inversion_set",
    "numerology",
    "root_poset",
    "weyl_group",
]
