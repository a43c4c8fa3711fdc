"""orefield: exact arithmetic for twisted polynomial rings and their towers.

The layers, bottom to top:

* `ground`   — coefficient skew fields (rationals, number fields, quaternion
               algebras) with an automorphism of finite order;
* `skewpoly` — twisted polynomials with the rule  t*a = sigma(a)*t;
* `skewfrac` — the fraction skew field, canonical reduced left fractions;
* `laurent`  — twisted Laurent series at explicit finite precision, the
               canonical embedding of fractions, Newton root lifting;
* `extend`   — scalar extension by a commutative field of central series
               roots, with Galois action, fixed spaces and the series
               realisation of the tensor algebra;
* `tower`    — compatible systems of finite groups realised by nested
               extensions, with restriction/compatibility checks;
* `cli`      — the `orefield` command line driver.
"""

from .errors import OrefieldError
from .ground import (
    GroundElement,
    GroundField,
    gauss_conjugation,
    hamilton_rationals,
    make_number_field,
    make_quaternions,
    make_rationals,
)

__all__ = [
    "OrefieldError",
    "GroundElement",
    "GroundField",
    "make_rationals",
    "make_number_field",
    "make_quaternions",
    "hamilton_rationals",
    "gauss_conjugation",
]

__version__ = "0.1.0"
