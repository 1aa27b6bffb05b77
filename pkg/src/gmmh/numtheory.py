"""Exact integer primitives: gcd, factorization, modular products and
counts of solutions to a linear congruence."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from operator import mul
from typing import Iterable, Sequence

from . import _backend
from .errors import BudgetExceededError, InvalidArgumentError

U64_LIMIT = 1 << 64
TRIAL_DIVISION_LIMIT = 10**6

# Deterministic for every n < 3.3e24, which covers all 64-bit inputs.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def gcd_with_modulus(values: Sequence[int], n: int) -> int:
    """Return gcd(values..., n)."""
    if n < 1:
        raise InvalidArgumentError(f"modulus must be >= 1, got {n}")
    if len(values) == 0:
        raise InvalidArgumentError("value list is empty")
    return math.gcd(n, *values)


def is_prime(n: int) -> bool:
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


def _brent_rho(n: int) -> int:
    """Return a nontrivial factor of the odd composite n (Brent's variant)."""
    for c in range(1, n):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed on {n}")  # pragma: no cover


def _large_prime_factors(n: int) -> list[int]:
    if n == 1:
        return []
    if is_prime(n):
        return [n]
    d = _brent_rho(n)
    return _large_prime_factors(d) + _large_prime_factors(n // d)


def _trial_divisors() -> Iterable[int]:
    yield 2
    yield 3
    d = 5
    while d <= TRIAL_DIVISION_LIMIT:
        yield d
        yield d + 2
        d += 6


@dataclass(frozen=True)
class Factorization:
    """n = p1^r1 * ... * ps^rs with strictly increasing primes."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev = 1
        for p, e in self.factors:
            if p <= prev or e < 1 or not is_prime(p):
                raise InvalidArgumentError(f"bad factor entry ({p}, {e})")
            prev = p

    @property
    def value(self) -> int:
        return math.prod(p**e for p, e in self.factors)

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def __str__(self):
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


def factorize(n: int) -> Factorization:
    if n < 2:
        raise InvalidArgumentError(f"cannot factorize {n}")
    if n >= U64_LIMIT:
        raise InvalidArgumentError(f"{n} does not fit in 64 bits")
    counts: dict[int, int] = {}
    rest = n
    for d in _trial_divisors():
        if d * d > rest:
            break
        while rest % d == 0:
            counts[d] = counts.get(d, 0) + 1
            rest //= d
    if rest > 1:
        for p in _large_prime_factors(rest):
            counts[p] = counts.get(p, 0) + 1
    return Factorization(tuple(sorted(counts.items())))


def smallest_prime_divisor(n: int) -> int:
    if n < 2:
        raise InvalidArgumentError(f"{n} has no prime divisor")
    if n >= U64_LIMIT:
        raise InvalidArgumentError(f"{n} does not fit in 64 bits")
    for d in _trial_divisors():
        if d * d > n:
            return n
        if n % d == 0:
            return d
    return min(_large_prime_factors(n))


def mulmod(a: int, b: int, n: int) -> int:
    """(a * b) mod n for residues a, b of a 64-bit modulus n."""
    if not 1 <= n < U64_LIMIT:
        raise InvalidArgumentError(f"modulus {n} out of range [1, 2^64)")
    return _backend.kernels.mulmod(a % n, b % n, n)


@dataclass(frozen=True)
class CongruenceInstance:
    """a_1 x_1 + ... + a_k x_k = b (mod n); inputs are reduced on construction."""

    coeffs: tuple[int, ...]
    target: int
    modulus: int

    def __post_init__(self):
        n = self.modulus
        if n < 1:
            raise InvalidArgumentError(f"modulus must be >= 1, got {n}")
        if len(self.coeffs) == 0:
            raise InvalidArgumentError("congruence needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(a % n for a in self.coeffs))
        object.__setattr__(self, "target", self.target % n)

    @property
    def k(self) -> int:
        return len(self.coeffs)

    @property
    def ell(self) -> int:
        return gcd_with_modulus(self.coeffs, self.modulus)


def count_congruence_solutions(c: CongruenceInstance) -> int:
    """Number of x in Z_n^k solving the congruence: ell * n^(k-1) if ell | b, else 0."""
    ell = c.ell
    if c.target % ell:
        return 0
    return ell * c.modulus ** (c.k - 1)


def enumerate_congruence_solutions(c: CongruenceInstance, cap: int) -> list[tuple[int, ...]]:
    """All solutions in lexicographic order, by checking every vector of Z_n^k."""
    n, k = c.modulus, c.k
    total = n**k
    if total > cap:
        raise BudgetExceededError(total, cap, "congruence enumeration")
    *head, last = c.coeffs
    b = c.target
    out = []
    # every candidate is tested; the prefix sum is shared by the last coordinate
    for prefix in product(range(n), repeat=k - 1):
        s = sum(map(mul, head, prefix))
        out += [prefix + (xk,) for xk in range(n) if (s + last * xk) % n == b]
    return out
