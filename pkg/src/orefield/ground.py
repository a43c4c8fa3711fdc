"""Ground fields: exact coefficient skew fields for the twisted rings.

Three kinds are supported, all with coordinates in `fractions.Fraction`
over a fixed rational basis:

* the rationals;
* a number field  Q[y]/(p)  for a monic integer polynomial p, with an
  automorphism given by the image of the generator;
* a quaternion algebra  (alpha, beta / k)  over the rationals or a number
  field k, with basis 1, i, j, ij, where i^2 = alpha, j^2 = beta and
  ji = -ij.  The automorphism acts coordinatewise through the base field.

An element is a flat tuple of Fractions of length `field.dim`; every
operation (including the automorphism, realised as a precomputed rational
matrix) is exact.  The field also derives, once, the data the twisted layers
need: the center, the invariant subfield fixed by the automorphism, and a
basis of the whole field over that invariant subfield.

Quaternion configurations are assumed to describe division algebras (true
for the classical choices with alpha, beta < 0 over the rationals);
if a nonzero element turns out to be non invertible the arithmetic raises
`NotInvertible` rather than returning garbage.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from . import linalg
from .errors import (
    CapExceeded,
    DivisionByZero,
    InfiniteOrder,
    MixedFields,
    NotAnAutomorphism,
    NotCentral,
    NotInvertible,
    ReduciblePolynomial,
)

DEGREE_CAP = 8
ORDER_CAP = 24

Coords = tuple[Fraction, ...]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def format_fraction(x: Fraction) -> str:
    return str(x)


class GroundElement:
    """Element of a ground field; a thin immutable wrapper over coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: "GroundField", coords: Coords) -> None:
        self.field = field
        self.coords = coords

    def __add__(self, other: "GroundElement") -> "GroundElement":
        self.field.check_same(other.field)
        return GroundElement(
            self.field, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "GroundElement") -> "GroundElement":
        self.field.check_same(other.field)
        return GroundElement(
            self.field, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "GroundElement":
        return GroundElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other: "GroundElement") -> "GroundElement":
        self.field.check_same(other.field)
        return GroundElement(self.field, self.field.mul_coords(self.coords, other.coords))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GroundElement)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash(self.coords)

    def inv(self) -> "GroundElement":
        return GroundElement(self.field, self.field.inv_coords(self.coords))

    def sigma(self, power: int = 1) -> "GroundElement":
        return GroundElement(self.field, self.field.sigma_coords(self.coords, power))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def is_central(self) -> bool:
        return self.field.is_central_coords(self.coords)

    def is_invariant(self) -> bool:
        """Central and fixed by the automorphism (no exception variant)."""
        return self.is_central() and self.sigma() == self

    def __str__(self) -> str:
        return "[" + ",".join(format_fraction(a) for a in self.coords) + "]"

    __repr__ = __str__


class GroundField:
    """A concrete coefficient skew field; see the module docstring."""

    def __init__(
        self,
        kind: str,
        base_poly: Coords | None,
        alpha: Coords | None,
        beta: Coords | None,
        sigma_base: list[list[Fraction]],
        name: str,
        order_cap: int = ORDER_CAP,
    ) -> None:
        self.kind = kind
        self.base_poly = base_poly
        self.base_dim = 1 if base_poly is None else len(base_poly) - 1
        self.alpha = alpha
        self.beta = beta
        self.dim = self.base_dim * (4 if kind == "quaternions" else 1)
        self.name = name
        if base_poly is not None:
            self._nf_red = self._reduction_rows(base_poly)
        self.sigma_matrix = self._expand_sigma(sigma_base)
        self.sigma_is_identity = self.sigma_matrix == linalg.identity(self.dim)
        self.sigma_order = self._find_order(order_cap)
        self._sigma_pows = self._power_matrices()
        self._alpha_beta = (
            self._base_mul(alpha, beta) if kind == "quaternions" else None
        )
        self.center_basis = self._compute_center_basis()
        self.invariant_basis = self._compute_invariant_basis()
        self.h_basis = self._compute_h_basis()

    # -- construction helpers -------------------------------------------

    @staticmethod
    def _reduction_rows(poly: Coords) -> list[Coords]:
        """Coordinates of y^m mod p for m = d .. 2d-2."""
        d = len(poly) - 1
        rows: list[Coords] = []
        # y^d = -(p_0 + p_1 y + ... + p_{d-1} y^{d-1})
        cur = [-poly[m] for m in range(d)]
        rows.append(tuple(cur))
        for _ in range(d - 2):
            nxt = [Fraction(0)] + cur[:-1]
            top = cur[-1]
            if top:
                for m in range(d):
                    nxt[m] += top * rows[0][m]
            cur = nxt
            rows.append(tuple(cur))
        return rows

    def _expand_sigma(self, sigma_base: list[list[Fraction]]) -> list[list[Fraction]]:
        if self.kind != "quaternions":
            return sigma_base
        d = self.base_dim
        mat = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for blk in range(4):
            for r in range(d):
                for c in range(d):
                    mat[blk * d + r][blk * d + c] = sigma_base[r][c]
        return mat

    def _find_order(self, cap: int) -> int:
        if self.sigma_is_identity:
            return 1
        ident = linalg.identity(self.dim)
        power = self.sigma_matrix
        for k in range(1, cap + 1):
            if power == ident:
                return k
            power = linalg.matmul(power, self.sigma_matrix)
        raise InfiniteOrder(f"automorphism order exceeds cap {cap}")

    def _power_matrices(self) -> list[list[list[Fraction]]]:
        pows = [linalg.identity(self.dim)]
        for _ in range(self.sigma_order - 1):
            pows.append(linalg.matmul(pows[-1], self.sigma_matrix))
        return pows

    # -- basic coordinate arithmetic -------------------------------------

    def check_same(self, other: "GroundField") -> None:
        if self is not other and self != other:
            raise MixedFields(f"cannot mix elements of {self.name} and {other.name}")

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, GroundField)
            and self.kind == other.kind
            and self.base_poly == other.base_poly
            and self.alpha == other.alpha
            and self.beta == other.beta
            and self.sigma_matrix == other.sigma_matrix
        )

    __hash__ = None  # type: ignore[assignment]

    def zero(self) -> GroundElement:
        return GroundElement(self, (Fraction(0),) * self.dim)

    def one(self) -> GroundElement:
        return self.from_rational(Fraction(1))

    def from_rational(self, x) -> GroundElement:
        coords = [Fraction(0)] * self.dim
        coords[0] = _frac(x)
        return GroundElement(self, tuple(coords))

    def element(self, coords: Iterable) -> GroundElement:
        tup = tuple(_frac(c) for c in coords)
        if len(tup) != self.dim:
            raise ValueError(f"{self.name} needs {self.dim} coordinates, got {len(tup)}")
        return GroundElement(self, tup)

    def basis_element(self, m: int) -> GroundElement:
        coords = [Fraction(0)] * self.dim
        coords[m] = Fraction(1)
        return GroundElement(self, tuple(coords))

    def add_coords(self, a: Coords, b: Coords) -> Coords:
        return tuple(x + y for x, y in zip(a, b))

    def sub_coords(self, a: Coords, b: Coords) -> Coords:
        return tuple(x - y for x, y in zip(a, b))

    def neg_coords(self, a: Coords) -> Coords:
        return tuple(-x for x in a)

    def _base_mul(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
        """Multiply in the base number field (or the rationals)."""
        d = self.base_dim
        if d == 1:
            return [a[0] * b[0]]
        conv = [Fraction(0)] * (2 * d - 1)
        for m, am in enumerate(a):
            if am:
                for l, bl in enumerate(b):
                    if bl:
                        conv[m + l] += am * bl
        out = conv[:d]
        for m in range(d, 2 * d - 1):
            top = conv[m]
            if top:
                row = self._nf_red[m - d]
                for r in range(d):
                    if row[r]:
                        out[r] += top * row[r]
        return out

    def mul_coords(self, a: Coords, b: Coords) -> Coords:
        if self.kind != "quaternions":
            return tuple(self._base_mul(a, b))
        if self.base_dim == 1:
            # scalar structure constants: spell the product out, the generic
            # path below costs seventeen nested base multiplications
            a0, a1, a2, a3 = a
            b0, b1, b2, b3 = b
            al, be, ab = self.alpha[0], self.beta[0], self._alpha_beta[0]
            return (
                a0 * b0 + al * (a1 * b1) + be * (a2 * b2) - ab * (a3 * b3),
                a0 * b1 + a1 * b0 - be * (a2 * b3) + be * (a3 * b2),
                a0 * b2 + a2 * b0 + al * (a1 * b3) - al * (a3 * b1),
                a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1,
            )
        d = self.base_dim
        a0, a1, a2, a3 = (a[k * d : (k + 1) * d] for k in range(4))
        b0, b1, b2, b3 = (b[k * d : (k + 1) * d] for k in range(4))
        mul, alpha, beta = self._base_mul, self.alpha, self.beta
        ab = self._alpha_beta

        def madd(*terms):
            out = [Fraction(0)] * d
            for sign, t in terms:
                for r in range(d):
                    out[r] = out[r] + t[r] if sign > 0 else out[r] - t[r]
            return out

        c0 = madd(
            (1, mul(a0, b0)),
            (1, mul(alpha, mul(a1, b1))),
            (1, mul(beta, mul(a2, b2))),
            (-1, mul(ab, mul(a3, b3))),
        )
        c1 = madd(
            (1, mul(a0, b1)),
            (1, mul(a1, b0)),
            (-1, mul(beta, mul(a2, b3))),
            (1, mul(beta, mul(a3, b2))),
        )
        c2 = madd(
            (1, mul(a0, b2)),
            (1, mul(a2, b0)),
            (1, mul(alpha, mul(a1, b3))),
            (-1, mul(alpha, mul(a3, b1))),
        )
        c3 = madd((1, mul(a0, b3)), (1, mul(a3, b0)), (1, mul(a1, b2)), (-1, mul(a2, b1)))
        return tuple(c0 + c1 + c2 + c3)

    def inv_coords(self, a: Coords) -> Coords:
        if all(x == 0 for x in a):
            raise DivisionByZero(f"inversion of zero in {self.name}")
        if self.kind == "rationals":
            return (Fraction(1) / a[0],)
        if self.kind == "number-field":
            return self._base_inv(a)
        d = self.base_dim
        a0, a1, a2, a3 = (list(a[k * d : (k + 1) * d]) for k in range(4))
        mul, alpha, beta = self._base_mul, self.alpha, self.beta
        ab = self._base_mul(alpha, beta)
        norm = [
            w - x - y + z
            for w, x, y, z in zip(
                mul(a0, a0),
                mul(alpha, mul(a1, a1)),
                mul(beta, mul(a2, a2)),
                mul(ab, mul(a3, a3)),
            )
        ]
        if all(x == 0 for x in norm):
            raise NotInvertible(
                f"nonzero element with zero norm in {self.name}; "
                "the configured quaternion algebra is not a division ring"
            )
        ninv = self._base_inv(tuple(norm))
        conj = a0 + [-x for x in a1] + [-x for x in a2] + [-x for x in a3]
        out: list[Fraction] = []
        for blk in range(4):
            out += mul(conj[blk * d : (blk + 1) * d], ninv)
        return tuple(out)

    def _base_inv(self, a: Sequence[Fraction]) -> Coords:
        d = self.base_dim
        if d == 1:
            if a[0] == 0:
                raise DivisionByZero(f"inversion of zero in {self.name}")
            return (Fraction(1) / a[0],)
        cols = [self._base_mul(a, _unit(d, j)) for j in range(d)]
        rows = [[cols[j][i] for j in range(d)] for i in range(d)]
        sol = linalg.solve(rows, list(_unit(d, 0)))
        if sol is None:
            raise DivisionByZero(f"inversion of zero divisor in {self.name}")
        return tuple(sol)

    def sigma_coords(self, a: Coords, power: int = 1) -> Coords:
        if self.sigma_is_identity:
            return a
        k = power % self.sigma_order
        if k == 0:
            return a
        return linalg.mat_vec(self._sigma_pows[k], a)

    # -- derived structure ------------------------------------------------

    def mult_matrices(self, e: Coords) -> tuple[list, list]:
        """Public alias: matrices of left and right multiplication by e."""
        return self._mult_matrices(e)

    def _mult_matrices(self, e: Coords) -> tuple[list, list]:
        """Matrices of left and right multiplication by e."""
        left, right = [], []
        for j in range(self.dim):
            u = _unit(self.dim, j)
            left.append(self.mul_coords(e, u))
            right.append(self.mul_coords(u, e))
        lm = [[left[j][i] for j in range(self.dim)] for i in range(self.dim)]
        rm = [[right[j][i] for j in range(self.dim)] for i in range(self.dim)]
        return lm, rm

    def _compute_center_basis(self) -> tuple[Coords, ...]:
        if self.kind != "quaternions":
            return tuple(_unit(self.dim, j) for j in range(self.dim))
        rows: list[list[Fraction]] = []
        for m in range(self.dim):
            lm, rm = self._mult_matrices(_unit(self.dim, m))
            for i in range(self.dim):
                rows.append([lm[i][j] - rm[i][j] for j in range(self.dim)])
        return tuple(linalg.nullspace(rows, self.dim))

    def _compute_invariant_basis(self) -> tuple[Coords, ...]:
        if self.sigma_is_identity:
            return self.center_basis
        rows: list[list[Fraction]] = []
        if self.kind == "quaternions":
            for m in range(self.dim):
                lm, rm = self._mult_matrices(_unit(self.dim, m))
                for i in range(self.dim):
                    rows.append([lm[i][j] - rm[i][j] for j in range(self.dim)])
        ident = linalg.identity(self.dim)
        for i in range(self.dim):
            rows.append(
                [self.sigma_matrix[i][j] - ident[i][j] for j in range(self.dim)]
            )
        return tuple(linalg.nullspace(rows, self.dim))

    def _compute_h_basis(self) -> tuple[GroundElement, ...]:
        """Greedy basis of the field over its invariant subfield."""
        chosen: list[GroundElement] = []
        span_rows: list[list[Fraction]] = []
        rank = 0
        for m in range(self.dim):
            e = _unit(self.dim, m)
            candidate_rows = span_rows + [
                list(self.mul_coords(b, e)) for b in self.invariant_basis
            ]
            new_rank = linalg.rank(candidate_rows)
            if new_rank > rank:
                chosen.append(GroundElement(self, e))
                span_rows = candidate_rows
                rank = new_rank
            if rank == self.dim:
                break
        if rank != self.dim:
            raise NotAnAutomorphism(
                "invariant multiples of the ambient basis do not span the field"
            )
        return tuple(chosen)

    def is_central_coords(self, a: Coords) -> bool:
        if self.kind != "quaternions":
            return True
        for m in range(self.dim):
            e = _unit(self.dim, m)
            if self.mul_coords(a, e) != self.mul_coords(e, a):
                return False
        return True

    def in_invariant_subfield(self, a: GroundElement) -> bool:
        """Whether a central element is fixed by the automorphism.

        Raises NotCentral for elements outside the center, since membership
        in the invariant subfield of the center is not defined for them.
        """
        if not self.is_central_coords(a.coords):
            raise NotCentral(f"{a} does not commute with the field basis")
        return self.sigma_coords(a.coords) == a.coords

    def __repr__(self) -> str:
        return f"GroundField({self.name})"


def _unit(n: int, j: int) -> Coords:
    return tuple(Fraction(int(i == j)) for i in range(n))


def _check_min_poly(coeffs: Sequence) -> Coords:
    poly = tuple(_frac(c) for c in coeffs)
    if len(poly) < 2:
        raise ValueError("defining polynomial must have degree >= 1")
    if len(poly) - 1 > DEGREE_CAP:
        raise CapExceeded(f"defining polynomial degree exceeds cap {DEGREE_CAP}")
    if poly[-1] != 1:
        raise ValueError("defining polynomial must be monic")
    if any(c.denominator != 1 for c in poly):
        raise ValueError("defining polynomial must have integer coefficients")
    y = sympy.symbols("y")
    expr = sum(int(c) * y**m for m, c in enumerate(poly))
    if not sympy.Poly(expr, y, domain="QQ").is_irreducible:
        raise ReduciblePolynomial("defining polynomial is reducible over the rationals")
    return poly


def make_rationals() -> GroundField:
    return GroundField(
        "rationals", None, None, None, linalg.identity(1), name="Q"
    )


def _sigma_base_matrix(poly: Coords, image: Coords | None) -> list[list[Fraction]]:
    d = len(poly) - 1
    if image is None:
        return linalg.identity(d)
    if len(image) != d:
        raise NotAnAutomorphism(f"generator image needs {d} coordinates")
    # columns are the images s(y)^m mod p
    tmp = GroundField("number-field", poly, None, None, linalg.identity(d), name="tmp")
    cols = [_unit(d, 0)]
    for _ in range(d - 1):
        cols.append(tmp.mul_coords(cols[-1], image))
    # the map is an automorphism iff p(s(y)) = 0 mod p
    value = [Fraction(0)] * d
    for m, c in enumerate(poly):
        if c:
            power = _unit(d, 0)
            for _ in range(m):
                power = tmp.mul_coords(power, image)
            value = [v + c * w for v, w in zip(value, power)]
    if any(v != 0 for v in value):
        raise NotAnAutomorphism("generator image is not a root of the defining polynomial")
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def make_number_field(
    min_poly: Sequence,
    sigma_image: Sequence | None = None,
    name: str | None = None,
    order_cap: int = ORDER_CAP,
) -> GroundField:
    poly = _check_min_poly(min_poly)
    image = None if sigma_image is None else tuple(_frac(c) for c in sigma_image)
    mat = _sigma_base_matrix(poly, image)
    label = name or f"Q[y]/({_poly_label(poly)})"
    return GroundField("number-field", poly, None, None, mat, name=label, order_cap=order_cap)


def make_quaternions(
    alpha,
    beta,
    min_poly: Sequence | None = None,
    sigma_image: Sequence | None = None,
    name: str | None = None,
    order_cap: int = ORDER_CAP,
) -> GroundField:
    if min_poly is None:
        poly = None
        base_dim = 1
        mat = linalg.identity(1)
    else:
        poly = _check_min_poly(min_poly)
        base_dim = len(poly) - 1
        image = None if sigma_image is None else tuple(_frac(c) for c in sigma_image)
        mat = _sigma_base_matrix(poly, image)
    a = _coerce_base(alpha, base_dim)
    b = _coerce_base(beta, base_dim)
    if all(x == 0 for x in a) or all(x == 0 for x in b):
        raise NotAnAutomorphism("quaternion constants must be nonzero")
    if linalg.mat_vec(mat, a) != a or linalg.mat_vec(mat, b) != b:
        raise NotAnAutomorphism(
            "automorphism must fix the quaternion constants alpha and beta"
        )
    label = name or f"({a},{b} / {'Q' if poly is None else 'Q[y]'})"
    return GroundField("quaternions", poly, a, b, mat, name=label, order_cap=order_cap)


def _coerce_base(value, base_dim: int) -> Coords:
    if isinstance(value, (int, Fraction)):
        out = [Fraction(0)] * base_dim
        out[0] = _frac(value)
        return tuple(out)
    tup = tuple(_frac(c) for c in value)
    if len(tup) != base_dim:
        raise NotAnAutomorphism(f"constant needs {base_dim} base coordinates")
    return tup


def _poly_label(poly: Coords) -> str:
    parts = []
    for m, c in enumerate(poly):
        if c == 0:
            continue
        if m == 0:
            parts.append(format_fraction(c))
        elif m == 1:
            parts.append(f"{format_fraction(c)}*y")
        else:
            parts.append(f"{format_fraction(c)}*y^{m}")
    return " + ".join(parts)


def hamilton_rationals() -> GroundField:
    """The rational Hamilton quaternions (i^2 = j^2 = -1, ji = -ij)."""
    return make_quaternions(-1, -1, name="H_Q")


def gauss_conjugation() -> GroundField:
    """Q(i) with complex conjugation as the automorphism."""
    return make_number_field([1, 0, 1], sigma_image=[0, -1], name="Q(i)/conj")
