"""Exact polynomials and the L2 inner product on symmetric intervals [-nu, nu].

Coefficients are stored densely in ascending degree as Fractions.  Square
roots only appear when a basis is normalized, which happens lazily in
floating point (see :meth:`OrthoBasis.normalized_coeffs`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .rational import as_fraction


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = [as_fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> Polynomial:
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int | None:
        """Index of the leading coefficient; ``None`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __add__(self, other) -> Polynomial:
        other = _coerce(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self.coeff(k) + other.coeff(k) for k in range(size)))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> Polynomial:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> Polynomial:
        return _coerce(other) - self

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    def __rmul__(self, other) -> Polynomial:
        return self * other

    def scale(self, c) -> Polynomial:
        c = as_fraction(c)
        return Polynomial(tuple(c * a for a in self.coeffs))

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def compose_affine(self, a, b) -> Polynomial:
        """Return the polynomial ``t -> self(a*t + b)``."""
        inner = Polynomial((b, a))
        out = Polynomial()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def derivative(self) -> Polynomial:
        return Polynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def even_part(self) -> Polynomial:
        return Polynomial(tuple(c if k % 2 == 0 else 0 for k, c in enumerate(self.coeffs)))

    def float_coeffs(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs], dtype=float)

    def __call__(self, t):
        return eval_poly(self, t)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Polynomial(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(f"{c}" if k == 0 else f"{c}*x^{k}")
        return "Polynomial(" + " + ".join(terms) + ")"


def _coerce(p) -> Polynomial:
    return p if isinstance(p, Polynomial) else Polynomial.constant(p)


X = Polynomial((0, 1))


def eval_poly(p: Polynomial, t):
    """Horner evaluation.

    Exact (a Fraction) for int/Fraction arguments; floats and numpy arrays
    are evaluated in double precision.
    """
    if isinstance(t, (float, np.floating, np.ndarray)):
        acc = np.zeros_like(t, dtype=float) if isinstance(t, np.ndarray) else 0.0
        for c in reversed(p.coeffs):
            acc = acc * t + float(c)
        return acc
    t = as_fraction(t)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * t + c
    return acc


@dataclass(frozen=True)
class Interval:
    """The symmetric interval [-nu, nu]."""

    nu: Fraction

    def __post_init__(self):
        nu = as_fraction(self.nu)
        if nu < 0:
            raise ValueError(f"interval half-width must be nonnegative, got {nu}")
        object.__setattr__(self, "nu", nu)

    def contains(self, t) -> bool:
        return -self.nu <= t <= self.nu


def monomial_inner_product(A: int, B: int, nu) -> Fraction:
    """Integral of x^A * x^B over [-nu, nu]."""
    if A < 0 or B < 0:
        raise ValueError("exponents must be nonnegative")
    s = A + B
    if s % 2:
        return Fraction(0)
    return Fraction(2, s + 1) * as_fraction(nu) ** (s + 1)


def inner_product(p: Polynomial, q: Polynomial, nu) -> Fraction:
    nu = as_fraction(nu)
    total = Fraction(0)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(q.coeffs):
            if b != 0 and (i + j) % 2 == 0:
                total += a * b * monomial_inner_product(i, j, nu)
    return total


@dataclass(frozen=True)
class OrthoBasis:
    """Monic orthogonal polynomials on [-nu, nu] with their squared norms.

    ``monic[i] / sqrt(sq_norms[i])`` is the orthonormal family (the scaled
    Legendre polynomials).  Only the exact monic form is stored.
    """

    interval: Interval
    monic: tuple[Polynomial, ...]
    sq_norms: tuple[Fraction, ...]

    @property
    def nu(self) -> Fraction:
        return self.interval.nu

    @property
    def max_degree(self) -> int:
        return len(self.monic) - 1

    @cached_property
    def normalizers(self) -> np.ndarray:
        return np.array([1.0 / math.sqrt(s) for s in self.sq_norms])

    def normalized_coeffs(self) -> np.ndarray:
        """Row i holds the ascending float coefficients of the i-th orthonormal polynomial."""
        size = len(self.monic)
        out = np.zeros((size, size))
        for i, p in enumerate(self.monic):
            out[i, : len(p.coeffs)] = p.float_coeffs() * self.normalizers[i]
        return out

    def evaluate_monic(self, t) -> tuple[Fraction, ...]:
        t = as_fraction(t)
        return tuple(p(t) for p in self.monic)

    def evaluate(self, t) -> np.ndarray:
        """Orthonormal basis values at ``t``, computed from the exact monic values."""
        return np.array([float(v) for v in self.evaluate_monic(t)]) * self.normalizers


def gram_schmidt_basis(max_degree: int, interval: Interval) -> OrthoBasis:
    """Exact Gram-Schmidt on 1, x, ..., x^max_degree over ``interval``."""
    if not isinstance(interval, Interval):
        interval = Interval(interval)
    if interval.nu <= 0:
        raise ValueError("basis construction needs nu > 0")
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    nu = interval.nu
    monic: list[Polynomial] = []
    sq_norms: list[Fraction] = []
    for k in range(max_degree + 1):
        p = Polynomial.monomial(k)
        for q, qq in zip(monic, sq_norms):
            # parity makes half of these projections vanish
            if (k + q.degree) % 2 == 0:
                p = p - q.scale(inner_product(Polynomial.monomial(k), q, nu) / qq)
        monic.append(p)
        sq_norms.append(inner_product(p, p, nu))
    return OrthoBasis(interval, tuple(monic), tuple(sq_norms))


def binomial_expand_difference(p: Polynomial) -> dict[tuple[int, int], Fraction]:
    """Coefficients c[(i, j)] with p(x - y) = sum c[(i, j)] x^i y^j."""
    out: dict[tuple[int, int], Fraction] = {}
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        for i in range(k + 1):
            j = k - i
            term = c * math.comb(k, i) * (-1) ** j
            out[(i, j)] = out.get((i, j), Fraction(0)) + term
    return {key: v for key, v in out.items() if v != 0}


def moments(basis: OrthoBasis, max_power: int) -> list[list[Fraction]]:
    """``m[i][k] = monic_i . x^k`` for k in 0..max_power."""
    return [
        [inner_product(p, Polynomial.monomial(k), basis.nu) for k in range(max_power + 1)]
        for p in basis.monic
    ]


def as_polynomial(obj: Polynomial | Sequence) -> Polynomial:
    return obj if isinstance(obj, Polynomial) else Polynomial(tuple(obj))
