"""Primes, square-free factorizations and divisor-lattice arithmetic.

Every integer handled here is a product of distinct odd primes, so the
Moebius function of a divisor reduces to a parity of its prime count.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd, prod

__all__ = [
    "FactorizationError",
    "EvenInputError",
    "NotSquareFreeError",
    "UnitInputError",
    "SearchCeilingError",
    "PrimeFactorization",
    "Divisor",
    "is_prime",
    "primes_up_to",
    "factorize_odd_squarefree",
    "divisors",
    "parity",
    "mobius_complement",
    "euler_phi",
    "psi_degree",
    "next_prime_in_class",
    "odd_squarefree_up_to",
]

# Deterministic witness set for every n < 2**64 (Jim Sinclair's bases suffice
# as well, but the first twelve primes are easier to audit).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_U64 = 1 << 64


class FactorizationError(ValueError):
    """Base class for rejected inputs to :func:`factorize_odd_squarefree`."""


class EvenInputError(FactorizationError):
    pass


class NotSquareFreeError(FactorizationError):
    pass


class UnitInputError(FactorizationError):
    pass


class SearchCeilingError(RuntimeError):
    """Raised when a prime search passes its configured ceiling."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin test, exact for ``0 <= n < 2**64``."""
    if n >= _U64:
        raise ValueError(f"{n} does not fit in 64 bits")
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(limit: int) -> list[int]:
    """All primes ``<= limit`` by a plain Eratosthenes sieve."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


@dataclass(frozen=True)
class Divisor:
    """A divisor ``value`` of n together with ``omega`` and ``mu`` = mu(n/value)."""

    value: int
    omega: int
    mu: int


@dataclass(frozen=True)
class PrimeFactorization:
    """``n = p_1 * ... * p_k`` with ``p_1 < ... < p_k`` odd primes."""

    primes: tuple[int, ...]

    def __post_init__(self) -> None:
        ps = tuple(int(p) for p in self.primes)
        object.__setattr__(self, "primes", ps)
        if not ps:
            raise UnitInputError("empty factorization (n = 1)")
        if any(b <= a for a, b in zip(ps, ps[1:])):
            raise NotSquareFreeError(f"primes must be strictly increasing: {ps}")
        for p in ps:
            if p == 2:
                raise EvenInputError("n must be odd")
            if not is_prime(p):
                raise FactorizationError(f"{p} is not prime")

    @classmethod
    def of(cls, *primes: int) -> PrimeFactorization:
        return cls(tuple(sorted(primes)))

    @property
    def k(self) -> int:
        return len(self.primes)

    @cached_property
    def n(self) -> int:
        return prod(self.primes)

    def prefix(self, r: int) -> int:
        """The prefix product ``n_r = p_1 * ... * p_r`` (1 for ``r = 0``)."""
        if not 0 <= r <= self.k:
            raise ValueError(f"prefix index {r} outside 0..{self.k}")
        return prod(self.primes[:r])

    def prefix_factorization(self, r: int) -> PrimeFactorization:
        return PrimeFactorization(self.primes[:r])

    def omega_of(self, d: int) -> int:
        if self.n % d:
            raise ValueError(f"{d} does not divide {self.n}")
        return sum(1 for p in self.primes if d % p == 0)

    def __str__(self) -> str:
        return "*".join(map(str, self.primes))


def factorize_odd_squarefree(n: int) -> PrimeFactorization:
    """Factor an odd square-free ``n >= 3`` by trial division.

    >>> factorize_odd_squarefree(105).primes
    (3, 5, 7)
    """
    n = int(n)
    if n == 1:
        raise UnitInputError("n = 1 has no prime factors")
    if n < 1:
        raise FactorizationError(f"n must be positive, got {n}")
    if n % 2 == 0:
        raise EvenInputError(f"{n} is even")
    primes = []
    m, p = n, 3
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                raise NotSquareFreeError(f"{p}^2 divides {n}")
            primes.append(p)
        p += 2
    if m > 1:
        primes.append(m)
    return PrimeFactorization(tuple(primes))


def divisors(f: PrimeFactorization) -> list[Divisor]:
    """All ``2**k`` divisors of ``f.n`` in ascending order."""
    k = f.k
    out = []
    for mask in range(1 << k):
        value, omega = 1, 0
        for i, p in enumerate(f.primes):
            if mask >> i & 1:
                value *= p
                omega += 1
        out.append(Divisor(value, omega, parity(k - omega)))
    out.sort(key=lambda d: d.value)
    return out


def parity(i: int) -> int:
    """``(-1)**i``."""
    return -1 if i % 2 else 1


def mobius_complement(f: PrimeFactorization, d: int) -> int:
    """mu(n/d) for a divisor ``d`` of n."""
    return parity(f.k - f.omega_of(d))


def euler_phi(f: PrimeFactorization | int) -> int:
    """Euler phi of an odd square-free number, ``prod(p - 1)``.

    A plain ``1`` is accepted for the empty prefix product.
    """
    if isinstance(f, int):
        if f == 1:
            return 1
        f = factorize_odd_squarefree(f)
    return prod(p - 1 for p in f.primes)


def psi_degree(f: PrimeFactorization | int) -> int:
    """Degree of the inverse cyclotomic polynomial, ``n - phi(n)``."""
    if isinstance(f, int):
        return f - euler_phi(f)
    return f.n - euler_phi(f)


def next_prime_in_class(m: int, r: int, ceiling: int | None = None) -> int:
    """Smallest prime ``p > m`` with ``p % m == r``."""
    if not 1 <= r < m:
        raise ValueError(f"residue {r} outside 1..{m - 1}")
    if gcd(m, r) != 1:
        raise ValueError(f"gcd({m}, {r}) != 1")
    p = m + r
    while not is_prime(p):
        p += m
        if ceiling is not None and p > ceiling:
            raise SearchCeilingError(
                f"no prime = {r} mod {m} found below {ceiling}"
            )
    return p


def odd_squarefree_up_to(bound: int, min_k: int = 1) -> list[PrimeFactorization]:
    """Odd square-free ``n < bound`` with at least ``min_k`` prime factors,
    ascending in n."""
    if bound <= 3:
        return []
    # Smallest-prime-factor sieve over odd numbers.
    spf = list(range(bound))
    for i in range(3, int(bound**0.5) + 1, 2):
        if spf[i] == i:
            for j in range(i * i, bound, 2 * i):
                if spf[j] == j:
                    spf[j] = i
    out = []
    for n in range(3, bound, 2):
        primes = []
        m = n
        ok = True
        while m > 1:
            p = spf[m]
            m //= p
            if primes and primes[-1] == p:
                ok = False
                break
            primes.append(p)
        if ok and len(primes) >= min_k:
            out.append(PrimeFactorization(tuple(primes)))
    return out
