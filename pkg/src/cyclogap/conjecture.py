"""Finite verification of ``g(Phi_{mp}) = phi(m)  <=>  p > m`` for all primes p.

Because ``g(Phi_{mp})`` for a prime ``p > m`` only depends on ``p mod m``, one
prime per residue class coprime to m settles every ``p > m``; the finitely many
primes between the largest factor of m and m are checked directly.
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd

from .numtheory import (
    PrimeFactorization,
    euler_phi,
    factorize_odd_squarefree,
    is_prime,
    next_prime_in_class,
    odd_squarefree_up_to,
    primes_up_to,
)
from .polynomial import (
    BlockDecomposition,
    CoefficientOverflowError,
    DegreeCeilingError,
    IntPolynomial,
    _gap_of_array,
    block_decompose,
    cyclotomic,
    max_gap,
    verify_block_properties,
)

__all__ = [
    "InvarianceViolation",
    "Counterexample",
    "ConjectureVerdict",
    "gap_phi_mp",
    "invariance_check",
    "gap_from_blocks",
    "check_conjecture_for_m",
    "scan_m_range",
]

log = logging.getLogger(__name__)


class InvarianceViolation(AssertionError):
    """Two congruent primes gave different gaps (or blocks broke C1-C3)."""


def _factor(m: int | PrimeFactorization) -> PrimeFactorization:
    return m if isinstance(m, PrimeFactorization) else factorize_odd_squarefree(m)


def _with_prime(m: PrimeFactorization, p: int) -> PrimeFactorization:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m.n % p == 0:
        raise ValueError(f"{p} divides {m.n}")
    return PrimeFactorization(tuple(sorted(m.primes + (p,))))


def gap_phi_mp(
    m: int | PrimeFactorization, p: int, degree_ceiling: int | None = None
) -> int:
    """``g(Phi_{mp})`` for a prime p not dividing m."""
    mf = _factor(m)
    return max_gap(cyclotomic(_with_prime(mf, p), degree_ceiling)).gap


def invariance_check(
    m: int | PrimeFactorization, p: int, p2: int, degree_ceiling: int | None = None
) -> bool:
    mf = _factor(m)
    for prime in (p, p2):
        if prime <= mf.n or not is_prime(prime):
            raise ValueError(f"{prime} must be a prime larger than m = {mf.n}")
    if (p - p2) % mf.n:
        raise ValueError(f"{p} and {p2} are not congruent modulo {mf.n}")
    same = gap_phi_mp(mf, p, degree_ceiling) == gap_phi_mp(mf, p2, degree_ceiling)
    if not same:
        log.error("invariance fails for m=%d, p=%d, p'=%d", mf.n, p, p2)
    return same


def gap_from_blocks(b: BlockDecomposition) -> int:
    """Recompute ``g(Phi_{mp})`` from the first sub-block of every row.

    Only ``f_{m,p,i,0}``, ``m``, ``p`` and ``r`` are used; the remaining
    sub-blocks are implied by repetition and truncation. Every first
    sub-block must be nonzero.
    """
    m, p, q, r = b.m, b.p, b.q, b.r
    firsts = [b.blocks[i, 0] for i in range(b.rows)]
    heads = []
    for i, c in enumerate(firsts):
        nz = c.nonzero()[0]
        if nz.size == 0:
            raise ValueError(f"first sub-block of row {i} is zero")
        heads.append((int(nz[0]), int(nz[-1])))

    def row_gap(i: int) -> int:
        lo, hi = heads[i]
        inner = _gap_of_array(firsts[i]).gap
        tail_nonzero = lo < r
        # gaps across consecutive copies exist when there is a second copy
        if q >= 2 or tail_nonzero:
            return max(inner, m + lo - hi)
        return inner

    def cross_gap(i: int) -> int:
        lo_next = heads[i + 1][0]
        lo, hi = heads[i]
        if lo >= r:  # the truncated tail of row i is zero
            return r + m + lo_next - hi
        tail_hi = int(firsts[i][:r].nonzero()[0][-1])
        return r + lo_next - tail_hi

    best = max(row_gap(i) for i in range(b.rows))
    if b.rows > 1:
        best = max(best, max(cross_gap(i) for i in range(b.rows - 1)))
    return best


@dataclass(frozen=True)
class Counterexample:
    p: int
    gap: int
    expected: str


@dataclass
class ConjectureVerdict:
    """Outcome for one m: ``"confirmed"``, ``"refuted"`` or ``"incomplete"``."""

    m: int
    verdict: str
    counterexample: Counterexample | None = None
    residues_checked: int = 0
    primes_below_m_checked: int = 0
    errors: list[str] = field(default_factory=list)

    @property
    def confirmed(self) -> bool:
        return self.verdict == "confirmed"


def check_conjecture_for_m(
    m: int | PrimeFactorization,
    degree_ceiling: int | None = None,
    block_check_fraction: float = 0.0,
    seed: int = 0,
) -> ConjectureVerdict:
    """Run both phases of the check for one odd square-free m.

    ``block_check_fraction`` of the residue classes additionally get their
    block decomposition checked against the repetition/truncation properties
    and the block-based gap formula; a failure raises
    :class:`InvarianceViolation`.
    """
    mf = _factor(m)
    mn = mf.n
    target = euler_phi(mf)
    rng = random.Random(seed * 1_000_003 + mn)
    out = ConjectureVerdict(mn, "confirmed")

    # Phase 1: primes between the largest factor of m and m must miss phi(m).
    for p in primes_up_to(mn - 1):
        if p <= mf.primes[-1]:
            continue
        try:
            g = gap_phi_mp(mf, p, degree_ceiling)
        except (DegreeCeilingError, CoefficientOverflowError) as exc:
            out.errors.append(f"p={p}: {exc}")
            out.verdict = "incomplete"
            continue
        out.primes_below_m_checked += 1
        if g == target:
            out.verdict = "refuted"
            out.counterexample = Counterexample(p, g, f"p < m but g = phi(m) = {target}")
            return out

    # Phase 2: one prime per residue class coprime to m must hit phi(m).
    for r in range(1, mn):
        if gcd(mn, r) != 1:
            continue
        p = next_prime_in_class(mn, r)
        try:
            phi_mp = cyclotomic(_with_prime(mf, p), degree_ceiling)
        except (DegreeCeilingError, CoefficientOverflowError) as exc:
            out.errors.append(f"r={r}, p={p}: {exc}")
            out.verdict = "incomplete"
            continue
        g = max_gap(phi_mp).gap
        out.residues_checked += 1
        if block_check_fraction and rng.random() < block_check_fraction:
            _check_blocks(mf, p, phi_mp, g)
        if g != target:
            out.verdict = "refuted"
            out.counterexample = Counterexample(p, g, f"p > m but g != phi(m) = {target}")
            return out
    return out


def _check_blocks(mf: PrimeFactorization, p: int, phi_mp: IntPolynomial, g: int) -> None:
    b = block_decompose(mf, p, phi_mp)
    props = verify_block_properties(b)
    if not (props.c1 and props.c2):
        raise InvarianceViolation(f"block properties fail for m={mf.n}, p={p}: {props}")
    if gap_from_blocks(b) != g:
        raise InvarianceViolation(f"block-based gap differs for m={mf.n}, p={p}")


def _check_worker(args: tuple) -> ConjectureVerdict:
    m, degree_ceiling, fraction = args
    return check_conjecture_for_m(m, degree_ceiling, fraction)


def scan_m_range(
    m_max: int,
    jobs: int = 1,
    degree_ceiling: int | None = None,
    block_check_fraction: float = 0.0,
) -> list[ConjectureVerdict]:
    """Verdicts for every odd square-free ``3 <= m < m_max``, sorted by m."""
    if m_max < 3:
        raise ValueError("m_max must be at least 3")
    ms = [f.n for f in odd_squarefree_up_to(m_max, 1)]
    work = [(m, degree_ceiling, block_check_fraction) for m in ms]
    if jobs <= 1:
        results = [_check_worker(w) for w in work]
    else:
        # Largest m first keeps the pool busy until the end.
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_worker, work[::-1], chunksize=1))
    return sorted(results, key=lambda v: v.m)
