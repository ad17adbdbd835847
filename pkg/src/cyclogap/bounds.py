"""Lower bounds on the maximum gap of Phi_n (sign ``+``) and Psi_n (sign ``-``).

Signs are passed as ``+1``/``-1`` (the strings ``"+"``, ``"-"``, ``"plus"`` and
``"minus"`` are accepted too). A bound whose defining maximum ranges over an
empty index set is returned as ``None``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

from .numtheory import (
    PrimeFactorization,
    divisors,
    euler_phi,
    parity,
    psi_degree,
)
from .polynomial import cyclotomic, inverse_cyclotomic, max_gap

__all__ = [
    "EnumerationInfeasibleError",
    "DivisorPartition",
    "EpsilonResult",
    "BoundsReport",
    "DEFAULT_MAX_K",
    "as_sign",
    "alpha_bound",
    "beta_bound",
    "gamma_bound",
    "delta_minus",
    "c_condition",
    "epsilon_bound",
    "restricted_B",
    "restriction_term",
    "delta_sufficient",
    "lemma_suff2_condition",
    "special_max",
    "bounds_report",
]

SignLike = Union[int, str]

DEFAULT_MAX_K = 4
_CHUNK = 1 << 15


class EnumerationInfeasibleError(ValueError):
    """Too many prime factors for exhaustive partition enumeration."""


def as_sign(s: SignLike) -> int:
    if s in (1, "+", "plus", "phi"):
        return 1
    if s in (-1, "-", "minus", "psi"):
        return -1
    raise ValueError(f"not a sign: {s!r}")


def _eligible_r(k: int, s: int) -> list[int]:
    # Sign s keeps the r with (-1)^(k - r) == -s.
    return [r for r in range(1, k) if parity(k - r) == -s]


def _max_or_none(values: Iterable[int]) -> int | None:
    values = list(values)
    return max(values) if values else None


def alpha_bound(f: PrimeFactorization, sign: SignLike) -> int | None:
    s = as_sign(sign)
    ps = f.primes
    return _max_or_none(ps[r - 1] - euler_phi(f.prefix(r - 1)) for r in _eligible_r(f.k, s))


def beta_bound(f: PrimeFactorization, sign: SignLike) -> int | None:
    s = as_sign(sign)
    ps = f.primes
    return _max_or_none(
        min(ps[r], f.prefix(r)) - psi_degree(f.prefix_factorization(r))
        for r in _eligible_r(f.k, s)
    )


def gamma_bound(f: PrimeFactorization, sign: SignLike) -> int | None:
    s = as_sign(sign)
    divs = divisors(f)
    return _max_or_none(
        f.prefix(r) - sum(s * d.mu * d.value for d in divs if d.omega < r)
        for r in _eligible_r(f.k, s)
    )


def delta_minus(f: PrimeFactorization) -> int:
    return 2 * (f.n // f.primes[0]) - psi_degree(f)


def special_max(f: PrimeFactorization, sign: SignLike) -> int | None:
    """Largest defined special bound for the sign (delta only for ``-``)."""
    s = as_sign(sign)
    vals = [alpha_bound(f, s), beta_bound(f, s), gamma_bound(f, s)]
    if s < 0:
        vals.append(delta_minus(f))
    return _max_or_none(v for v in vals if v is not None)


def c_condition(B: Iterable[int], f: PrimeFactorization, sign: SignLike) -> bool:
    """Admissibility of a divisor set ``B``.

    At every divisor ``d`` of every element of ``B``, the members of ``B``
    that are multiples of ``d`` with ``mu(n/c) == sign`` must be at least as
    many as those with ``mu(n/c) == -sign``.
    """
    s = as_sign(sign)
    B = set(B)
    n = f.n
    for c in B:
        if n % c:
            raise ValueError(f"{c} does not divide {n}")
    weight = {d.value: s * d.mu for d in divisors(f)}
    below = {d.value for d in divisors(f) if any(c % d.value == 0 for c in B)}
    for d in below:
        if sum(weight[c] for c in B if c % d == 0) < 0:
            return False
    return True


@dataclass(frozen=True)
class DivisorPartition:
    """A split ``A + B`` of the proper divisors of n, with ``u = min A`` and
    ``l`` the signed sum over ``B``."""

    A: tuple[int, ...]
    B: tuple[int, ...]
    sign: int
    u: int
    l: int

    @property
    def value(self) -> int:
        return self.u - self.l


@dataclass(frozen=True)
class EpsilonResult:
    value: int
    admissible_pairs: int
    argmax: DivisorPartition


def _signed_sum(f: PrimeFactorization, B: Iterable[int], s: int) -> int:
    mu = {d.value: d.mu for d in divisors(f)}
    return sum(s * mu[c] * c for c in B)


def epsilon_bound(
    f: PrimeFactorization, sign: SignLike, max_k: int = DEFAULT_MAX_K
) -> EpsilonResult:
    """Maximise ``min A - l(B)`` over all admissible partitions.

    Every subset ``B`` of the ``2**k - 1`` proper divisors is encoded as a
    bitmask (bit ``i`` = i-th smallest divisor) and checked with numpy in
    fixed-size chunks. Ties go to the smallest bitmask.
    """
    s = as_sign(sign)
    if f.k > max_k:
        raise EnumerationInfeasibleError(
            f"k = {f.k} exceeds the enumeration ceiling {max_k}"
        )
    proper = [d for d in divisors(f) if d.value != f.n]
    P = len(proper)
    values = np.array([d.value for d in proper], dtype=np.int64)
    weights = np.array([s * d.mu for d in proper], dtype=np.int64)
    # inc[c, d] is True when proper[d] divides proper[c]
    inc = (values[:, None] % values[None, :]) == 0

    lw = weights * values
    incw = inc * weights[:, None]
    inc64 = inc.astype(np.int64)
    shifts = np.arange(P)
    total = (1 << P) - 1  # the full mask would leave A empty
    best_score, best, count = None, 0, 0
    for start in range(0, total, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        bits = (masks[:, None] >> shifts) & 1
        signed = bits @ incw
        covered = (bits @ inc64) > 0
        admissible = np.all(~covered | (signed >= 0), axis=1)
        count += int(admissible.sum())
        if not admissible.any():
            continue
        # smallest divisor left in A
        score = values[np.argmin(bits, axis=1)] - bits @ lw
        score = np.where(admissible, score, np.iinfo(np.int64).min)
        i = int(np.argmax(score))
        if best_score is None or score[i] > best_score:
            best_score, best = int(score[i]), int(masks[i])

    B = tuple(int(values[i]) for i in range(P) if best >> i & 1)
    A = tuple(int(values[i]) for i in range(P) if not best >> i & 1)
    u = min(A)
    part = DivisorPartition(A, B, s, u, u - best_score)
    return EpsilonResult(best_score, count, part)


def restricted_B(f: PrimeFactorization, j: int, r: int) -> list[int]:
    """Divisors of ``p_1...p_j`` with fewer than ``r`` prime factors."""
    if not 1 <= r < f.k:
        raise ValueError(f"r = {r} outside 1..{f.k - 1}")
    if not r - 1 <= j <= f.k:
        raise ValueError(f"j = {j} outside {r - 1}..{f.k}")
    nj = f.prefix(j)
    return [d.value for d in divisors(f) if nj % d.value == 0 and d.omega < r]


def restriction_term(f: PrimeFactorization, j: int, r: int, sign: SignLike) -> int:
    """``u - l`` for the partition whose ``B`` is :func:`restricted_B`."""
    s = as_sign(sign)
    B = set(restricted_B(f, j, r))
    A = [d.value for d in divisors(f) if d.value != f.n and d.value not in B]
    return min(A) - _signed_sum(f, B, s)


def delta_sufficient(f: PrimeFactorization) -> bool:
    """``delta^-(n) >= n / (2 p_1)``, compared in integers."""
    return 2 * f.primes[0] * delta_minus(f) >= f.n


def lemma_suff2_condition(f: PrimeFactorization) -> bool | None:
    """``p_2 > (k - 1)(2 p_1 - 3)``; ``None`` when ``k < 2``."""
    if f.k < 2:
        return None
    p1, p2 = f.primes[:2]
    return p2 > (f.k - 1) * (2 * p1 - 3)


@dataclass(frozen=True)
class BoundsReport:
    n: int
    primes: tuple[int, ...]
    g_phi: int
    g_psi: int
    alpha_p: int | None
    beta_p: int | None
    gamma_p: int | None
    eps_p: int | None
    alpha_m: int | None
    beta_m: int | None
    gamma_m: int | None
    delta_m: int
    eps_m: int | None
    exact: dict[str, bool] = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.primes)

    @property
    def special_p(self) -> int | None:
        return _max_or_none(v for v in (self.alpha_p, self.beta_p, self.gamma_p) if v is not None)

    @property
    def special_m(self) -> int | None:
        return _max_or_none(
            v for v in (self.alpha_m, self.beta_m, self.gamma_m, self.delta_m) if v is not None
        )

    @property
    def special_exact_phi(self) -> bool:
        return self.special_p == self.g_phi

    @property
    def special_exact_psi(self) -> bool:
        return self.special_m == self.g_psi

    @property
    def eps_exact_phi(self) -> bool:
        return self.eps_p == self.g_phi

    @property
    def eps_exact_psi(self) -> bool:
        return self.eps_m == self.g_psi

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "primes": list(self.primes),
            "g_phi": self.g_phi,
            "alpha_p": self.alpha_p,
            "beta_p": self.beta_p,
            "gamma_p": self.gamma_p,
            "eps_p": self.eps_p,
            "g_psi": self.g_psi,
            "alpha_m": self.alpha_m,
            "beta_m": self.beta_m,
            "gamma_m": self.gamma_m,
            "delta_m": self.delta_m,
            "eps_m": self.eps_m,
            "exact": dict(self.exact),
            "special_exact_phi": self.special_exact_phi,
            "special_exact_psi": self.special_exact_psi,
            "eps_exact_phi": self.eps_exact_phi,
            "eps_exact_psi": self.eps_exact_psi,
        }


def bounds_report(
    f: PrimeFactorization,
    max_k: int = DEFAULT_MAX_K,
    g_phi: int | None = None,
    g_psi: int | None = None,
) -> BoundsReport:
    """Every bound for n next to the measured gaps.

    ``eps_*`` is ``None`` when ``k > max_k``. Known gaps may be passed in to
    skip recomputing the polynomials.
    """
    if g_phi is None:
        g_phi = max_gap(cyclotomic(f)).gap
    if g_psi is None:
        g_psi = max_gap(inverse_cyclotomic(f)).gap
    eps_p = eps_m = None
    if f.k <= max_k:
        eps_p = epsilon_bound(f, 1, max_k).value
        eps_m = epsilon_bound(f, -1, max_k).value
    values = {
        "alpha_p": alpha_bound(f, 1),
        "beta_p": beta_bound(f, 1),
        "gamma_p": gamma_bound(f, 1),
        "eps_p": eps_p,
        "alpha_m": alpha_bound(f, -1),
        "beta_m": beta_bound(f, -1),
        "gamma_m": gamma_bound(f, -1),
        "delta_m": delta_minus(f),
        "eps_m": eps_m,
    }
    exact = {
        name: v == (g_phi if name.endswith("_p") else g_psi)
        for name, v in values.items()
        if v is not None
    }
    return BoundsReport(f.n, f.primes, g_phi, g_psi, exact=exact, **values)
