"""The GMMH* family: h_x(m) = sum(m_i * x_i) mod n over Z_n^k.

With a prime modulus this is MMH*. Probabilities are exact ``Fraction``s.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import _backend
from .errors import InvalidArgumentError, KeyFileError
from .numtheory import U64_LIMIT, gcd_with_modulus, smallest_prime_divisor

ExactProbability = Fraction
Seed = Union[bytes, int, str]


@dataclass(frozen=True)
class FamilyParams:
    n: int
    k: int
    p: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or not 2 <= self.n < U64_LIMIT:
            raise InvalidArgumentError(f"modulus n must be in [2, 2^64), got {self.n}")
        if not isinstance(self.k, int) or self.k < 1:
            raise InvalidArgumentError(f"dimension k must be >= 1, got {self.k}")
        object.__setattr__(self, "p", smallest_prime_divisor(self.n))

    @property
    def key_count(self) -> int:
        return self.n**self.k

    def vector(self, entries: Iterable[int]) -> ResidueVector:
        return ResidueVector(self, tuple(entries))

    def reduce(self, entries: Iterable[int]) -> ResidueVector:
        return ResidueVector(self, tuple(e % self.n for e in entries))

    def zero(self) -> ResidueVector:
        return ResidueVector(self, (0,) * self.k)


@dataclass(frozen=True)
class ResidueVector:
    """An element of Z_n^k. Used for keys, messages and difference vectors."""

    params: FamilyParams
    entries: tuple[int, ...]

    def __post_init__(self):
        n, k = self.params.n, self.params.k
        if len(self.entries) != k:
            raise InvalidArgumentError(f"expected {k} entries, got {len(self.entries)}")
        for i, e in enumerate(self.entries):
            if not isinstance(e, int) or not 0 <= e < n:
                raise InvalidArgumentError(f"entry {i} = {e!r} is not a residue mod {n}")

    def _check_peer(self, other: ResidueVector):
        if other.params != self.params:
            raise InvalidArgumentError(f"vectors over {self.params} and {other.params}")

    def __add__(self, other: ResidueVector) -> ResidueVector:
        self._check_peer(other)
        n = self.params.n
        return ResidueVector(self.params, tuple((a + b) % n for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: ResidueVector) -> ResidueVector:
        self._check_peer(other)
        n = self.params.n
        return ResidueVector(self.params, tuple((a - b) % n for a, b in zip(self.entries, other.entries)))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __str__(self):
        return ",".join(map(str, self.entries))


@dataclass(frozen=True)
class DeltaQuery:
    """The event h_x(m) - h_x(m_prime) = b, for distinct messages."""

    m: ResidueVector
    m_prime: ResidueVector
    b: int

    def __post_init__(self):
        self.m._check_peer(self.m_prime)
        if self.m == self.m_prime:
            raise InvalidArgumentError("delta query needs two distinct messages")
        if not 0 <= self.b < self.m.params.n:
            raise InvalidArgumentError(f"b = {self.b} is not a residue mod {self.m.params.n}")

    @property
    def params(self) -> FamilyParams:
        return self.m.params

    @property
    def difference(self) -> ResidueVector:
        return self.m - self.m_prime


def _bound(params: FamilyParams, v: ResidueVector, what: str):
    if v.params != params:
        raise InvalidArgumentError(f"{what} is over {v.params}, expected {params}")


def evaluate(params: FamilyParams, key: ResidueVector, msg: ResidueVector) -> int:
    _bound(params, key, "key")
    _bound(params, msg, "message")
    return _backend.kernels.dot_mod(key.entries, msg.entries, params.n)


def epsilon_bound(params: FamilyParams) -> Fraction:
    return Fraction(1, params.p)


def delta_probability(params: FamilyParams, q: DeltaQuery) -> Fraction:
    """Exact Pr_x[h_x(m) - h_x(m') = b] from the congruence solution count."""
    _bound(params, q.m, "query")
    if q.m == q.m_prime:
        raise InvalidArgumentError("delta query needs two distinct messages")
    ell = gcd_with_modulus(q.difference.entries, params.n)
    if q.b % ell:
        return Fraction(0)
    return Fraction(ell, params.n)


def tightness_witness(params: FamilyParams) -> DeltaQuery:
    """Query attaining the 1/p bound: a = (n/p, 0, ..., 0), b = 0."""
    m = params.vector((params.n // params.p,) + (0,) * (params.k - 1))
    return DeltaQuery(m, params.zero(), 0)


# -- seeded sampling --------------------------------------------------------


def coerce_seed(seed: Seed) -> bytes:
    """Normalize a 256-bit seed given as 32 bytes, an int or 64 hex digits."""
    if isinstance(seed, bytes):
        if len(seed) != 32:
            raise InvalidArgumentError(f"seed must be 32 bytes, got {len(seed)}")
        return seed
    if isinstance(seed, str):
        if len(seed) != 64:
            raise InvalidArgumentError("hex seed must have 64 digits")
        try:
            return bytes.fromhex(seed)
        except ValueError as exc:
            raise InvalidArgumentError(f"bad hex seed: {exc}") from None
    if isinstance(seed, int) and 0 <= seed < 1 << 256:
        return seed.to_bytes(32, "big")
    raise InvalidArgumentError(f"seed must be a 256-bit value, got {seed!r}")


class SeedStream:
    """64-bit words from SHA-256(seed || counter), with unbiased draws below n."""

    def __init__(self, seed: Seed):
        self._seed = coerce_seed(seed)
        self._counter = 0
        self._words: list[int] = []

    def word(self) -> int:
        if not self._words:
            block = hashlib.sha256(self._seed + self._counter.to_bytes(8, "big")).digest()
            self._counter += 1
            self._words = list(struct.unpack("<4Q", block))[::-1]
        return self._words.pop()

    def below(self, n: int) -> int:
        # reject the top partial block so every residue is equally likely
        limit = U64_LIMIT - U64_LIMIT % n
        while True:
            w = self.word()
            if w < limit:
                return w % n

    def vector(self, params: FamilyParams) -> ResidueVector:
        return ResidueVector(params, tuple(self.below(params.n) for _ in range(params.k)))


def sample_key(params: FamilyParams, seed: Seed) -> ResidueVector:
    return SeedStream(seed).vector(params)


# -- key/message text format ------------------------------------------------


def _parse_int(text: str, line: int, column: int) -> int:
    if not text or not text.isdigit() or not text.isascii():
        raise KeyFileError(line, column, f"expected a decimal integer, got {text!r}")
    return int(text)


def parse_residues(raw: str, n: int, line: int, name: str) -> list[int]:
    """Comma-separated residues mod n from the value of ``name=raw`` on ``line``."""
    column = len(name) + 2
    out = []
    for part in raw.split(","):
        e = _parse_int(part, line, column)
        if e >= n:
            raise KeyFileError(line, column, f"{e} is not a residue mod {n}")
        out.append(e)
        column += len(part) + 1
    return out


def parse_key_text(
    text: str, extra: Sequence[str] = ()
) -> tuple[FamilyParams, ResidueVector, dict[str, tuple[int, str]]]:
    """Parse ``n=``, ``k=``, ``x=`` lines plus optional ``extra`` fields.

    Returns (params, key, {extra name: (line number, raw value)}).
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    expected = ["n", "k", "x"]
    if len(lines) < 3:
        raise KeyFileError(len(lines) + 1, 1, f"missing '{expected[len(lines)]}=' line")
    fields: dict[str, tuple[int, str]] = {}
    for lineno, raw in enumerate(lines, start=1):
        name, sep, value = raw.partition("=")
        want = expected[lineno - 1] if lineno <= 3 else None
        if not sep:
            raise KeyFileError(lineno, 1, "expected 'name=value'")
        if want is not None and name != want:
            raise KeyFileError(lineno, 1, f"expected '{want}=', got {name!r}")
        if want is None and (name not in extra or name in fields):
            raise KeyFileError(lineno, 1, f"unexpected field {name!r}")
        fields[name] = (lineno, value)
    n = _parse_int(fields["n"][1], 1, 3)
    if not 2 <= n < U64_LIMIT:
        raise KeyFileError(1, 3, f"modulus must be in [2, 2^64), got {n}")
    k = _parse_int(fields["k"][1], 2, 3)
    if k < 1:
        raise KeyFileError(2, 3, "dimension must be >= 1")
    params = FamilyParams(n, k)
    entries = parse_residues(fields["x"][1], n, 3, "x")
    if len(entries) != k:
        raise KeyFileError(3, 3, f"expected {k} residues, got {len(entries)}")
    return params, params.vector(entries), {name: fields[name] for name in extra if name in fields}


def format_key_text(key: ResidueVector, extra: Sequence[tuple[str, str]] = ()) -> str:
    p = key.params
    lines = [f"n={p.n}", f"k={p.k}", f"x={key}"]
    lines += [f"{name}={value}" for name, value in extra]
    return "\n".join(lines) + "\n"
