"""Exhaustive checks of the GMMH* delta-probability claims.

Everything here counts keys one by one (through the enumeration kernel) and
never touches the gcd closed form, so it can serve as an oracle for
``family.delta_probability``.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from . import _backend
from .errors import BudgetExceededError, InvalidArgumentError
from .family import (
    DeltaQuery,
    FamilyParams,
    ResidueVector,
    SeedStream,
    Seed,
    delta_probability,
    epsilon_bound,
)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**6
_MIN_CHUNK = 4096


def _check_budget(required: int, budget: int, what: str):
    if budget < 1:
        raise InvalidArgumentError(f"budget must be positive, got {budget}")
    if required > budget:
        raise BudgetExceededError(required, budget, what)


class _KeyEnumerator:
    """Histogram of m.x - m'.x over all keys, optionally split across threads.

    Chunk counts are summed, so the result does not depend on the worker count.
    """

    def __init__(self, params: FamilyParams, workers: int = 1):
        if workers < 1:
            raise InvalidArgumentError(f"workers must be >= 1, got {workers}")
        self.params = params
        self.total = params.key_count
        chunks = min(workers, max(1, self.total // _MIN_CHUNK))
        bounds = [self.total * i // chunks for i in range(chunks + 1)]
        self.ranges = list(zip(bounds, bounds[1:]))
        self._pool = ThreadPoolExecutor(chunks) if chunks > 1 else None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        if self._pool is not None:
            self._pool.shutdown()

    def histogram(self, m, mp) -> list[int]:
        n = self.params.n
        hist = _backend.kernels.delta_histogram
        if self._pool is None:
            return list(hist(m, mp, n, 0, self.total))
        parts = self._pool.map(lambda r: hist(m, mp, n, r[0], r[1]), self.ranges)
        return [sum(col) for col in zip(*parts)]


def brute_force_delta_probability(
    params: FamilyParams, q: DeltaQuery, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> Fraction:
    _check_budget(params.key_count, budget, "key enumeration")
    if q.params != params:
        raise InvalidArgumentError(f"query is over {q.params}, expected {params}")
    with _KeyEnumerator(params, workers) as keys:
        counts = keys.histogram(q.m.entries, q.m_prime.entries)
    return Fraction(counts[q.b], keys.total)


@dataclass(frozen=True)
class _Scan:
    max_probability: Fraction
    min_probability: Fraction
    witness: DeltaQuery
    keys_enumerated: int
    queries_scored: int


def _scan_differences(params: FamilyParams, budget: int, workers: int) -> _Scan:
    total = params.key_count
    _check_budget(total * (total - 1) * params.n, budget, "difference-vector scan")
    zero = (0,) * params.k
    best_count, best = -1, None
    low_count = total
    with _KeyEnumerator(params, workers) as keys:
        for a in product(range(params.n), repeat=params.k):
            if a == zero:
                continue
            counts = keys.histogram(a, zero)
            top = max(counts)
            # strict comparison keeps the lexicographically first (a, b)
            if top > best_count:
                best_count, best = top, (a, counts.index(top))
            low_count = min(low_count, min(counts))
    a, b = best
    witness = DeltaQuery(params.vector(a), params.zero(), b)
    return _Scan(
        Fraction(best_count, total),
        Fraction(low_count, total),
        witness,
        keys_enumerated=total * (total - 1),
        queries_scored=(total - 1) * params.n,
    )


def max_delta_probability(
    params: FamilyParams, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> tuple[Fraction, DeltaQuery]:
    """Largest brute-force delta probability over all a != 0 and b.

    Pairs are represented by their difference a (m = a, m' = 0); ties go to
    the lexicographically smallest (a, b).
    """
    scan = _scan_differences(params, budget, workers)
    return scan.max_probability, scan.witness


def _fmt_prob(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _parse_prob(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den or 1))


def _fmt_bool(v: bool) -> str:
    return "true" if v else "false"


@dataclass(frozen=True)
class VerificationReport:
    params: FamilyParams
    max_delta_probability: Fraction
    min_delta_probability: Fraction
    bound: Fraction
    witness: DeltaQuery
    keys_enumerated: int
    pairs_checked: int

    @property
    def bound_holds(self) -> bool:
        return self.max_delta_probability <= self.bound

    @property
    def bound_tight(self) -> bool:
        return self.max_delta_probability == self.bound

    @property
    def is_delta_universal(self) -> bool:
        uniform = Fraction(1, self.params.n)
        return self.max_delta_probability == uniform == self.min_delta_probability

    def fields(self) -> list[tuple[str, str]]:
        w = self.witness
        return [
            ("n", str(self.params.n)),
            ("k", str(self.params.k)),
            ("max", _fmt_prob(self.max_delta_probability)),
            ("bound", _fmt_prob(self.bound)),
            ("tight", _fmt_bool(self.bound_tight)),
            ("holds", _fmt_bool(self.bound_holds)),
            ("delta_universal", _fmt_bool(self.is_delta_universal)),
            ("min", _fmt_prob(self.min_delta_probability)),
            ("witness_m", str(w.m)),
            ("witness_m_prime", str(w.m_prime)),
            ("witness_b", str(w.b)),
            ("keys_enumerated", str(self.keys_enumerated)),
            ("pairs_checked", str(self.pairs_checked)),
        ]

    def to_text(self, fmt: str = "lines") -> str:
        """``field=value`` pairs, one per line (``lines``) or space separated (``text``)."""
        sep = "\n" if fmt == "lines" else " "
        return sep.join(f"{k}={v}" for k, v in self.fields()) + "\n"

    @classmethod
    def from_text(cls, text: str) -> VerificationReport:
        values = dict(item.split("=", 1) for item in text.split())
        params = FamilyParams(int(values["n"]), int(values["k"]))
        vec = lambda s: params.vector(int(e) for e in s.split(","))  # noqa: E731
        report = cls(
            params,
            _parse_prob(values["max"]),
            _parse_prob(values["min"]),
            _parse_prob(values["bound"]),
            DeltaQuery(vec(values["witness_m"]), vec(values["witness_m_prime"]), int(values["witness_b"])),
            int(values["keys_enumerated"]),
            int(values["pairs_checked"]),
        )
        for name, value in report.fields():
            if values.get(name) != value:
                raise InvalidArgumentError(f"inconsistent report field {name}={values.get(name)}")
        return report


def verify_theorem(
    params: FamilyParams, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> VerificationReport:
    """Exhaustively compare the worst-case delta probability with 1/p."""
    scan = _scan_differences(params, budget, workers)
    return VerificationReport(
        params,
        scan.max_probability,
        scan.min_probability,
        epsilon_bound(params),
        scan.witness,
        scan.keys_enumerated,
        scan.queries_scored,
    )


def _random_query(params: FamilyParams, stream: SeedStream) -> DeltaQuery:
    m = stream.vector(params)
    while True:
        mp = stream.vector(params)
        if mp != m:
            return DeltaQuery(m, mp, stream.below(params.n))


def find_fast_path_disagreement(
    params: FamilyParams, trials: int, seed: Seed, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> Optional[tuple[DeltaQuery, Fraction, Fraction]]:
    """First random query where the closed form and enumeration differ, if any."""
    if trials < 1:
        raise InvalidArgumentError(f"trials must be >= 1, got {trials}")
    _check_budget(params.key_count, budget, "key enumeration")
    stream = SeedStream(seed)
    with _KeyEnumerator(params, workers) as keys:
        for _ in range(trials):
            q = _random_query(params, stream)
            brute = Fraction(keys.histogram(q.m.entries, q.m_prime.entries)[q.b], keys.total)
            fast = delta_probability(params, q)
            if brute != fast:
                return q, fast, brute
    return None


def cross_check_fast_path(
    params: FamilyParams, trials: int, seed: Seed, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> bool:
    found = find_fast_path_disagreement(params, trials, seed, budget, workers)
    if found is not None:
        q, fast, brute = found
        log.error(
            "closed form %s != enumeration %s for m=%s m'=%s b=%d (n=%d, k=%d)",
            fast, brute, q.m, q.m_prime, q.b, params.n, params.k,
        )
        return False
    return True


def translation_spot_check(
    params: FamilyParams, trials: int, seed: Seed, budget: int = DEFAULT_BUDGET
) -> bool:
    """Enumerated probability of (a + t, t, b) equals that of (a, 0, b)."""
    _check_budget(params.key_count, budget, "key enumeration")
    stream = SeedStream(seed)
    with _KeyEnumerator(params) as keys:
        for _ in range(trials):
            a = stream.vector(params)
            while a.is_zero():
                a = stream.vector(params)
            t = stream.vector(params)
            shifted = keys.histogram((a + t).entries, t.entries)
            if shifted != keys.histogram(a.entries, params.zero().entries):
                log.error("translation by t=%s changes histogram for a=%s", t, a)
                return False
    return True


def pairwise_delta_extremes(
    params: FamilyParams, budget: int = DEFAULT_BUDGET
) -> tuple[Fraction, Fraction, int]:
    """(min, max, pair count) of the enumerated probability over every ordered
    pair of distinct messages and every b, without using shift invariance."""
    total = params.key_count
    _check_budget(total**3, budget, "message-pair scan")
    low, high, pairs = total, 0, 0
    vectors = list(product(range(params.n), repeat=params.k))
    with _KeyEnumerator(params) as keys:
        for m in vectors:
            for mp in vectors:
                if m == mp:
                    continue
                counts = keys.histogram(m, mp)
                low = min(low, min(counts))
                high = max(high, max(counts))
                pairs += 1
    return Fraction(low, total), Fraction(high, total), pairs
