"""Exact integer polynomials, (inverse) cyclotomic polynomials and gap extraction.

Coefficients live in dense ``int64`` numpy arrays indexed by exponent. Every
operation that can grow coefficients checks a magnitude bound first and
raises :class:`CoefficientOverflowError` instead of wrapping around.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .numtheory import PrimeFactorization, divisors, euler_phi, psi_degree

__all__ = [
    "CoefficientOverflowError",
    "DegreeCeilingError",
    "ZeroPolynomialError",
    "IntPolynomial",
    "MaxGapReport",
    "BlockDecomposition",
    "BlockProperties",
    "DEFAULT_DEGREE_CEILING",
    "cyclotomic",
    "inverse_cyclotomic",
    "support",
    "max_gap",
    "block_decompose",
    "verify_block_properties",
]

DEFAULT_DEGREE_CEILING = 10**8

_I64_MAX = np.iinfo(np.int64).max


class CoefficientOverflowError(ArithmeticError):
    """A coefficient would leave the signed 64-bit range."""


class DegreeCeilingError(MemoryError):
    """The requested polynomial exceeds the configured degree ceiling."""


class ZeroPolynomialError(ValueError):
    """The operation is undefined on the zero polynomial."""


def _as_int64(values) -> np.ndarray:
    arr = np.asarray(values)
    if arr.size == 0:
        return np.zeros(0, dtype=np.int64)
    if arr.dtype == object:
        if max(abs(int(v)) for v in arr.flat) > _I64_MAX:
            raise CoefficientOverflowError("coefficient exceeds int64")
        return arr.astype(np.int64)
    if arr.dtype.kind not in "iu":
        raise TypeError(f"integer coefficients required, got {arr.dtype}")
    if arr.dtype == np.uint64 and int(arr.max()) > _I64_MAX:
        raise CoefficientOverflowError("coefficient exceeds int64")
    return arr.astype(np.int64, copy=False)


def _max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    # abs(INT64_MIN) wraps, so compare both ends instead.
    return max(int(a.max()), -int(a.min()))


class IntPolynomial:
    """Immutable dense polynomial with exact integer coefficients.

    ``coeffs[i]`` is the coefficient of ``x**i``; trailing zeros are trimmed,
    so the zero polynomial has an empty coefficient array and degree -1.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] | np.ndarray = ()):
        c = _as_int64(np.array(coeffs, copy=True) if not isinstance(coeffs, np.ndarray)
                      else coeffs.copy())
        if c.ndim != 1:
            raise ValueError("coefficients must be one-dimensional")
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else c[:0]
        c.flags.writeable = False
        self._c = c

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> IntPolynomial:
        # Skips the defensive copy; caller hands over ownership of ``arr``.
        obj = cls.__new__(cls)
        nz = np.flatnonzero(arr)
        arr = arr[: nz[-1] + 1] if nz.size else arr[:0]
        arr.flags.writeable = False
        obj._c = arr
        return obj

    @classmethod
    def from_terms(cls, terms: Mapping[int, int]) -> IntPolynomial:
        if not terms:
            return cls()
        if min(terms) < 0:
            raise ValueError("negative exponent")
        arr = np.zeros(max(terms) + 1, dtype=np.int64)
        for e, c in terms.items():
            arr[e] += c
        return cls._wrap(arr)

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> IntPolynomial:
        return cls.from_terms({exponent: coeff})

    @classmethod
    def x_pow_minus_one(cls, n: int) -> IntPolynomial:
        return cls.from_terms({n: 1, 0: -1})

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return len(self._c) == 0

    def coeff(self, i: int) -> int:
        return int(self._c[i]) if 0 <= i < len(self._c) else 0

    def height(self) -> int:
        return _max_abs(self._c)

    def terms(self) -> list[tuple[int, int]]:
        """``(exponent, coefficient)`` pairs of the nonzero terms, ascending."""
        idx = np.flatnonzero(self._c)
        return [(int(i), int(self._c[i])) for i in idx]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in self._c[::-1].tolist():
            acc = acc * x + c
        return acc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return np.array_equal(self._c, other._c)

    def __hash__(self) -> int:
        return hash(self._c.tobytes())

    def __repr__(self) -> str:
        if self.is_zero():
            return "IntPolynomial(0)"
        parts = []
        for e, c in self.terms():
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            if mono and abs(c) == 1:
                s = mono if c > 0 else "-" + mono
            else:
                s = f"{c}{'*' + mono if mono else ''}"
            parts.append(s)
        return "IntPolynomial(" + " + ".join(parts).replace("+ -", "- ") + ")"

    def _binary_add(self, other: IntPolynomial, sign: int) -> IntPolynomial:
        if _max_abs(self._c) + _max_abs(other._c) > _I64_MAX:
            raise CoefficientOverflowError("sum exceeds int64")
        out = np.zeros(max(len(self._c), len(other._c)), dtype=np.int64)
        out[: len(self._c)] += self._c
        out[: len(other._c)] += sign * other._c
        return IntPolynomial._wrap(out)

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        return self._binary_add(other, 1)

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self._binary_add(other, -1)

    def __neg__(self) -> IntPolynomial:
        if self._c.size and int(self._c.min()) == np.iinfo(np.int64).min:
            raise CoefficientOverflowError("negation exceeds int64")
        return IntPolynomial._wrap(-self._c)

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        bound = _max_abs(self._c) * _max_abs(other._c) * min(len(self._c), len(other._c))
        if bound <= _I64_MAX:
            return IntPolynomial._wrap(np.convolve(self._c, other._c))
        exact = np.convolve(self._c.astype(object), other._c.astype(object))
        return IntPolynomial._wrap(_as_int64(exact))

    def shift(self, e: int) -> IntPolynomial:
        """Multiply by ``x**e``."""
        if self.is_zero():
            return self
        return IntPolynomial._wrap(np.concatenate([np.zeros(e, dtype=np.int64), self._c]))

    def compose_power(self, p: int) -> IntPolynomial:
        """``f(x**p)``."""
        if self.is_zero():
            return self
        out = np.zeros(self.degree * p + 1, dtype=np.int64)
        out[::p] = self._c
        return IntPolynomial._wrap(out)

    def truncate(self, r: int) -> IntPolynomial:
        """``rem(f, x**r)``: the terms of degree below ``r``."""
        return IntPolynomial._wrap(self._c[:r].copy())

    def trailing_degree(self) -> int:
        """Lowest exponent with a nonzero coefficient."""
        if self.is_zero():
            raise ZeroPolynomialError("zero polynomial has no trailing degree")
        return int(np.flatnonzero(self._c)[0])

    def divmod(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Division with remainder by a divisor whose leading coefficient is +-1."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead = int(divisor._c[-1])
        if lead not in (1, -1):
            raise ValueError("divisor must have unit leading coefficient")
        rem = [int(v) for v in self._c]
        d = [int(v) for v in divisor._c]
        dd = len(d) - 1
        if len(rem) <= dd:
            return IntPolynomial(), self
        quot = [0] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i] * lead
            if c:
                quot[i - dd] = c
                base = i - dd
                for j in range(dd + 1):
                    rem[base + j] -= c * d[j]
        return (IntPolynomial._wrap(_as_int64(np.array(quot, dtype=object))),
                IntPolynomial._wrap(_as_int64(np.array(rem[:dd] or [0], dtype=object))))

    def exact_div(self, divisor: IntPolynomial) -> IntPolynomial:
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q


# -- truncated power series kernels -------------------------------------------

def _mul_one_minus_xd(a: np.ndarray, d: int) -> None:
    """In place: ``a <- a * (1 - x**d)`` truncated to ``len(a)``."""
    if _max_abs(a) * 2 > _I64_MAX:
        raise CoefficientOverflowError("coefficient growth exceeds int64")
    if d < len(a):
        a[d:] -= a[:-d].copy()


def _div_one_minus_xd(a: np.ndarray, d: int) -> None:
    """In place: ``a <- a / (1 - x**d)`` as a power series truncated to ``len(a)``."""
    n = len(a)
    if d >= n:
        return
    bound = _max_abs(a) * n
    if bound > _I64_MAX and float(np.abs(a.astype(np.float64)).sum()) > 2.0**62:
        raise CoefficientOverflowError("partial sums exceed int64")
    rows = -(-n // d)
    if rows * d == n:
        np.cumsum(a.reshape(rows, d), axis=0, out=a.reshape(rows, d))
    else:
        buf = np.zeros(rows * d, dtype=np.int64)
        buf[:n] = a
        np.cumsum(buf.reshape(rows, d), axis=0, out=buf.reshape(rows, d))
        a[:] = buf[:n]


def _check_degree(deg: int, ceiling: int | None) -> None:
    ceiling = DEFAULT_DEGREE_CEILING if ceiling is None else ceiling
    if deg > ceiling:
        raise DegreeCeilingError(f"degree {deg} exceeds ceiling {ceiling}")


def _binomial_series(factors: list[tuple[int, int]], length: int) -> np.ndarray:
    """``prod (1 - x**d)**e`` for ``e`` in {+1, -1}, truncated to ``length`` terms.

    Numerator factors are applied before denominators so the running product
    stays a polynomial divisible by the remaining denominators.
    """
    a = np.zeros(length, dtype=np.int64)
    a[0] = 1
    for d, e in factors:
        if e > 0:
            _mul_one_minus_xd(a, d)
    for d, e in factors:
        if e < 0:
            _div_one_minus_xd(a, d)
    return a


def _cyclotomic_sparse(f: PrimeFactorization) -> IntPolynomial:
    # Phi_n = prod_{d | n} (1 - x^d)^{mu(n/d)}; the sign is +1 for n > 1.
    factors = [(d.value, d.mu) for d in divisors(f)]
    return IntPolynomial._wrap(_binomial_series(factors, euler_phi(f) + 1))


def _cyclotomic_division(f: PrimeFactorization) -> IntPolynomial:
    # Phi_p = 1 + x + ... + x^(p-1); Phi_{mp}(x) = Phi_m(x^p) / Phi_m(x).
    phi = IntPolynomial(np.ones(f.primes[0], dtype=np.int64))
    for p in f.primes[1:]:
        phi = phi.compose_power(p).exact_div(phi)
    return phi


def cyclotomic(
    f: PrimeFactorization,
    degree_ceiling: int | None = None,
    method: str = "sparse",
) -> IntPolynomial:
    """The n-th cyclotomic polynomial for ``n = f.n``.

    ``method="sparse"`` multiplies and divides truncated power series by the
    binomials ``1 - x**d``; ``method="division"`` runs the textbook recurrence
    ``Phi_{mp}(x) = Phi_m(x**p) / Phi_m(x)`` with exact long division. Both give
    identical coefficients; the second is quadratic and only suited to small n.
    """
    _check_degree(euler_phi(f), degree_ceiling)
    if method == "sparse":
        return _cyclotomic_sparse(f)
    if method == "division":
        return _cyclotomic_division(f)
    raise ValueError(f"unknown method {method!r}")


def inverse_cyclotomic(
    f: PrimeFactorization,
    degree_ceiling: int | None = None,
    method: str = "sparse",
) -> IntPolynomial:
    """The n-th inverse cyclotomic polynomial ``(x**n - 1) / Phi_n``."""
    deg = psi_degree(f)
    _check_degree(deg, degree_ceiling)
    if method == "division":
        return IntPolynomial.x_pow_minus_one(f.n).exact_div(cyclotomic(f, degree_ceiling))
    if method != "sparse":
        raise ValueError(f"unknown method {method!r}")
    # Psi_n = -prod_{d | n, d < n} (1 - x^d)^{-mu(n/d)}
    factors = [(d.value, -d.mu) for d in divisors(f) if d.value != f.n]
    a = _binomial_series(factors, deg + 1)
    np.negative(a, out=a)
    return IntPolynomial._wrap(a)


# -- gaps ---------------------------------------------------------------------

@dataclass(frozen=True)
class MaxGapReport:
    """Largest distance between consecutive exponents of the support.

    ``witness_low``/``witness_high`` is the lowest pair attaining the gap; for a
    monomial both equal its exponent and the gap is 0.
    """

    gap: int
    witness_low: int
    witness_high: int


def support(p: IntPolynomial) -> list[int]:
    return np.flatnonzero(p.coeffs).tolist()


def _gap_of_array(c: np.ndarray) -> MaxGapReport:
    idx = np.flatnonzero(c)
    if idx.size == 0:
        raise ZeroPolynomialError("maximum gap of the zero polynomial is undefined")
    if idx.size == 1:
        e = int(idx[0])
        return MaxGapReport(0, e, e)
    diffs = np.diff(idx)
    i = int(np.argmax(diffs))
    return MaxGapReport(int(diffs[i]), int(idx[i]), int(idx[i + 1]))


def max_gap(p: IntPolynomial) -> MaxGapReport:
    return _gap_of_array(p.coeffs)


# -- block decomposition ------------------------------------------------------

@dataclass(frozen=True)
class BlockDecomposition:
    """Coefficients of ``Phi_{mp}`` cut into rows of width ``p`` and sub-blocks
    of width ``m``.

    ``blocks[i, j]`` holds the coefficients of ``f_{m,p,i,j}``, so that
    ``Phi_{mp} = sum_i sum_j f_{m,p,i,j} x^(jm + ip)``. The last sub-block of a
    row only has ``r = p mod m`` meaningful entries; the rest are zero.
    """

    m: int
    p: int
    q: int
    r: int
    blocks: np.ndarray  # shape (phi(m), q + 1, m)

    @property
    def rows(self) -> int:
        return self.blocks.shape[0]

    def block(self, i: int, j: int) -> IntPolynomial:
        return IntPolynomial(self.blocks[i, j])

    def row(self, i: int) -> IntPolynomial:
        """``f_{m,p,i}`` (degree below p)."""
        return IntPolynomial(self.blocks[i].reshape(-1)[: self.p])

    def reassemble(self) -> IntPolynomial:
        rows, q1, m = self.blocks.shape
        out = np.zeros(rows * self.p, dtype=np.int64)
        for i in range(rows):
            out[i * self.p : (i + 1) * self.p] = self.blocks[i].reshape(-1)[: self.p]
        return IntPolynomial._wrap(out)


def block_decompose(
    m: PrimeFactorization,
    p: int,
    phi_mp: IntPolynomial | None = None,
    degree_ceiling: int | None = None,
) -> BlockDecomposition:
    """Split ``Phi_{mp}`` into the blocks ``f_{m,p,i,j}`` for a prime ``p > m``."""
    if p <= m.n:
        raise ValueError(f"p = {p} must exceed m = {m.n}")
    if m.n % p == 0:
        raise ValueError("p divides m")
    if phi_mp is None:
        phi_mp = cyclotomic(PrimeFactorization(m.primes + (p,)), degree_ceiling)
    q, r = divmod(p, m.n)
    rows = euler_phi(m)
    flat = np.zeros(rows * p, dtype=np.int64)
    flat[: len(phi_mp.coeffs)] = phi_mp.coeffs
    # Each row of length p = q*m + r is padded to (q + 1) * m.
    padded = np.zeros((rows, (q + 1) * m.n), dtype=np.int64)
    padded[:, :p] = flat.reshape(rows, p)
    blocks = padded.reshape(rows, q + 1, m.n)
    blocks.flags.writeable = False
    return BlockDecomposition(m.n, p, q, r, blocks)


@dataclass(frozen=True)
class BlockProperties:
    """Repetition (c1), truncation (c2) and residue invariance (c3) of blocks.

    ``c3`` is ``None`` when no second decomposition was supplied.
    """

    c1: bool
    c2: bool
    c3: bool | None

    def all(self) -> bool:
        return self.c1 and self.c2 and self.c3 is not False


def verify_block_properties(
    b: BlockDecomposition, b2: BlockDecomposition | None = None
) -> BlockProperties:
    first = b.blocks[:, 0, :]
    c1 = bool(np.all(b.blocks[:, : b.q, :] == first[:, None, :]))
    tail = b.blocks[:, b.q, :]
    c2 = bool(np.all(tail[:, : b.r] == first[:, : b.r]) and np.all(tail[:, b.r :] == 0))
    c3 = None
    if b2 is not None:
        if b2.m != b.m:
            raise ValueError(f"decompositions use different m ({b.m} vs {b2.m})")
        if b2.p % b.m != b.p % b.m:
            raise ValueError("primes are not congruent modulo m")
        c3 = bool(np.array_equal(first, b2.blocks[:, 0, :]))
    return BlockProperties(c1, c2, c3)
