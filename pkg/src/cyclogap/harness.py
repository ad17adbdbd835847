"""Corpus scans, exactness statistics and their CSV / NDJSON persistence."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Iterator

import numpy as np

from .bounds import DEFAULT_MAX_K, BoundsReport, bounds_report
from .numtheory import PrimeFactorization, is_prime, odd_squarefree_up_to, primes_up_to
from .polynomial import cyclotomic, inverse_cyclotomic, max_gap

__all__ = [
    "QUALITY_BOUND",
    "CSV_COLUMNS",
    "QualityStats",
    "DeltaRatioStats",
    "enumerate_corpus",
    "scan_row",
    "scan_rows",
    "quality_stats",
    "quality_scan",
    "delta_ratio_scan",
    "write_quality_csv",
    "write_delta_csv",
    "load_cache",
    "render_ratio",
]

QUALITY_BOUND = 15013

CSV_COLUMNS = (
    "n", "k", "factors",
    "g_phi", "alpha_p", "beta_p", "gamma_p", "eps_p",
    "g_psi", "alpha_m", "beta_m", "gamma_m", "delta_m", "eps_m",
    "special_exact_phi", "special_exact_psi", "eps_exact_phi", "eps_exact_psi",
)


def render_ratio(x: Fraction, places: int = 4) -> str:
    """Decimal rendering with round-half-even."""
    if x.denominator == 0:
        return "nan"
    q = Decimal(x.numerator) / Decimal(x.denominator)
    return str(q.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


def enumerate_corpus(b: int, min_k: int = 2) -> Iterator[PrimeFactorization]:
    """Odd square-free ``n < b`` with at least ``min_k`` prime factors, ascending."""
    yield from odd_squarefree_up_to(b, min_k)


# -- per-n rows ---------------------------------------------------------------

def _support_digest(coeffs: np.ndarray) -> str:
    idx = np.flatnonzero(coeffs).astype("<i8")
    return hashlib.sha256(idx.tobytes()).hexdigest()[:16]


def scan_row(f: PrimeFactorization, max_k: int = DEFAULT_MAX_K) -> dict:
    """Everything the quality scan needs about one n, as a JSON-ready dict."""
    phi = cyclotomic(f)
    psi = inverse_cyclotomic(f)
    rep = bounds_report(f, max_k, max_gap(phi).gap, max_gap(psi).gap)
    row = {col: None for col in CSV_COLUMNS}
    row.update(
        n=f.n,
        k=f.k,
        factors="-".join(map(str, f.primes)),
        g_phi=rep.g_phi, alpha_p=rep.alpha_p, beta_p=rep.beta_p,
        gamma_p=rep.gamma_p, eps_p=rep.eps_p,
        g_psi=rep.g_psi, alpha_m=rep.alpha_m, beta_m=rep.beta_m,
        gamma_m=rep.gamma_m, delta_m=rep.delta_m, eps_m=rep.eps_m,
        special_exact_phi=_special_exact(rep, 1),
        special_exact_psi=_special_exact(rep, -1),
        eps_exact_phi=rep.eps_exact_phi,
        eps_exact_psi=rep.eps_exact_psi,
    )
    row["phi_support"] = _support_digest(phi.coeffs)
    row["psi_support"] = _support_digest(psi.coeffs)
    return row


def _special_exact(rep: BoundsReport, s: int) -> bool:
    # For a prime every special bound for Phi is an empty maximum; the gap is
    # 1 in closed form and the prime counts as matched.
    if rep.k == 1:
        return True
    return rep.special_exact_phi if s > 0 else rep.special_exact_psi


def load_cache(path: str | os.PathLike) -> dict[int, dict]:
    """Rows from an NDJSON cache, keyed by n. Unparsable (truncated) lines are skipped."""
    rows: dict[int, dict] = {}
    if not os.path.exists(path):
        return rows
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError:
                continue
            rows[int(row["n"])] = row
    return rows


def _open_for_append(path):
    # An interrupted run can leave a partial last line; start on a fresh one.
    dangling = False
    if os.path.exists(path) and os.path.getsize(path):
        with open(path, "rb") as fh:
            fh.seek(-1, os.SEEK_END)
            dangling = fh.read(1) != b"\n"
    sink = open(path, "a", encoding="utf-8")
    if dangling:
        sink.write("\n")
    return sink


def _row_worker(args: tuple) -> dict:
    primes, max_k = args
    return scan_row(PrimeFactorization(primes), max_k)


def scan_rows(
    b: int,
    min_k: int = 1,
    jobs: int = 1,
    cache: str | os.PathLike | None = None,
    max_k: int = DEFAULT_MAX_K,
) -> list[dict]:
    """Rows for every corpus n below b, sorted by n.

    With ``cache`` set, rows already present are reused and new ones are
    appended as they are computed, so an interrupted scan can resume.
    """
    corpus = list(enumerate_corpus(b, min_k))
    known = load_cache(cache) if cache else {}
    todo = [(f.primes, max_k) for f in corpus if f.n not in known]
    sink = _open_for_append(cache) if cache else None
    try:
        if jobs <= 1:
            results = map(_row_worker, todo)
            pool = None
        else:
            pool = ProcessPoolExecutor(max_workers=jobs)
            results = pool.map(_row_worker, todo, chunksize=16)
        for row in results:
            known[row["n"]] = row
            if sink:
                sink.write(json.dumps(row, sort_keys=True) + "\n")
        if pool:
            pool.shutdown()
    finally:
        if sink:
            sink.close()
    return [known[f.n] for f in corpus]


# -- quality statistics -------------------------------------------------------

@dataclass(frozen=True)
class QualityStats:
    """How often the special / general bounds equal the measured gaps.

    ``population`` is the number of odd square-free ``n < b`` with at least
    ``min_k`` prime factors; ``population_k1`` and ``population_k2`` are the
    counts under the two usual conventions.
    """

    b: int
    min_k: int
    population: int
    population_k1: int
    population_k2: int
    hits_special_phi: int
    hits_special_psi: int
    hits_eps_phi: int
    hits_eps_psi: int

    def _ratio(self, hits: int) -> Fraction:
        return Fraction(hits, self.population) if self.population else Fraction(0)

    @property
    def f_plus_special(self) -> Fraction:
        return self._ratio(self.hits_special_phi)

    @property
    def f_minus_special(self) -> Fraction:
        return self._ratio(self.hits_special_psi)

    @property
    def f_plus_eps(self) -> Fraction:
        return self._ratio(self.hits_eps_phi)

    @property
    def f_minus_eps(self) -> Fraction:
        return self._ratio(self.hits_eps_psi)

    def as_dict(self) -> dict:
        return {
            "b": self.b,
            "min_k": self.min_k,
            "population": self.population,
            "population_k1": self.population_k1,
            "population_k2": self.population_k2,
            "hits_special_phi": self.hits_special_phi,
            "hits_special_psi": self.hits_special_psi,
            "hits_eps_phi": self.hits_eps_phi,
            "hits_eps_psi": self.hits_eps_psi,
            "f_plus_special": render_ratio(self.f_plus_special),
            "f_minus_special": render_ratio(self.f_minus_special),
            "f_plus_eps": render_ratio(self.f_plus_eps),
            "f_minus_eps": render_ratio(self.f_minus_eps),
        }


def quality_stats(rows: list[dict], b: int, min_k: int = 1) -> QualityStats:
    """Aggregate rows (any superset of the population is fine) into ratios."""
    rows = [r for r in rows if r["n"] < b]
    pop = [r for r in rows if r["k"] >= min_k]
    return QualityStats(
        b=b,
        min_k=min_k,
        population=len(pop),
        population_k1=sum(1 for r in rows if r["k"] >= 1),
        population_k2=sum(1 for r in rows if r["k"] >= 2),
        hits_special_phi=sum(bool(r["special_exact_phi"]) for r in pop),
        hits_special_psi=sum(bool(r["special_exact_psi"]) for r in pop),
        hits_eps_phi=sum(bool(r["eps_exact_phi"]) for r in pop),
        hits_eps_psi=sum(bool(r["eps_exact_psi"]) for r in pop),
    )


def quality_scan(
    b: int = QUALITY_BOUND,
    min_k: int = 1,
    jobs: int = 1,
    cache: str | os.PathLike | None = None,
    out: str | os.PathLike | None = None,
) -> QualityStats:
    """Exactness ratios over the corpus below b.

    The default population counts every odd square-free ``n < b`` including
    the primes; ``min_k=2`` restricts it to composite n. Rows for all
    ``k >= 1`` are always computed so both population counts are reported.
    """
    if b > 3 * 5 * 7 * 11 * 13:
        raise ValueError("bound above 15015 would need k = 5 partitions")
    rows = scan_rows(b, 1, jobs, cache)
    if out is not None:
        write_quality_csv(rows, out)
    return quality_stats(rows, b, min_k)


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    return str(v)


def write_quality_csv(rows: list[dict], path: str | os.PathLike | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in sorted(rows, key=lambda r: r["n"]):
        w.writerow([_csv_cell(r[c]) for c in CSV_COLUMNS])
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


# -- delta ratio --------------------------------------------------------------

@dataclass(frozen=True)
class DeltaRatioStats:
    k: int
    p: int
    b: int
    numerator: int
    denominator: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.numerator, self.denominator) if self.denominator else Fraction(0)

    def as_dict(self) -> dict:
        return {
            "k": self.k, "p": self.p, "b": self.b,
            "numerator": self.numerator, "denominator": self.denominator,
            "ratio": render_ratio(self.ratio),
        }


def delta_ratio_scan(k: int, p: int, b: int) -> DeltaRatioStats:
    """Fraction of ``n = p * p_2 * ... * p_k`` with ``p_k <= b`` that satisfy
    ``delta^-(n) >= n / (2p)``.

    With ``p_1 = p`` cancelled, the condition reads
    ``2 (p - 1) prod(p_i - 1) >= (2p - 3) prod(p_i)`` over ``i >= 2``.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    tail = [q for q in primes_up_to(b) if q > p]
    lhs_c, rhs_c = 2 * (p - 1), 2 * p - 3
    num = den = 0
    for combo in combinations(tail, k - 1):
        den += 1
        if lhs_c * prod(q - 1 for q in combo) >= rhs_c * prod(combo):
            num += 1
    return DeltaRatioStats(k, p, b, num, den)


def write_delta_csv(stats: list[DeltaRatioStats], path: str | os.PathLike | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "p", "b", "numerator", "denominator", "ratio"])
    for s in stats:
        d = s.as_dict()
        w.writerow([d[c] for c in ("k", "p", "b", "numerator", "denominator", "ratio")])
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
