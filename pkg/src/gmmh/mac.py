"""One-time MAC: tag = h_x(m) + r mod n with a fresh pad r per message.

The forgery bound of this scheme is the epsilon of the underlying
delta-universal family, i.e. 1/p for GMMH*. The attack model implemented
here is substitution: the adversary sees one (message, tag) pair and
submits a different message with a tag of its choosing.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import BudgetExceededError, InvalidArgumentError, KeyExhaustedError, KeyFileError
from .family import (
    FamilyParams,
    ResidueVector,
    Seed,
    SeedStream,
    evaluate,
    format_key_text,
    parse_key_text,
    parse_residues,
    tightness_witness,
)


@dataclass
class MacKey:
    """Hash key plus a list of one-time pads.

    Mutable: signing advances ``next_pad_index``. Do not share across threads.
    """

    hash_key: ResidueVector
    pads: list[int]
    next_pad_index: int = 0

    def __post_init__(self):
        n = self.hash_key.params.n
        if any(not 0 <= r < n for r in self.pads):
            raise InvalidArgumentError(f"pads must be residues mod {n}")
        if not 0 <= self.next_pad_index <= len(self.pads):
            raise InvalidArgumentError(f"next_pad_index {self.next_pad_index} out of range")

    @property
    def params(self) -> FamilyParams:
        return self.hash_key.params

    @property
    def remaining(self) -> int:
        return len(self.pads) - self.next_pad_index

    @classmethod
    def generate(cls, params: FamilyParams, pad_count: int, seed: Seed) -> MacKey:
        """Hash key then pads, drawn from one seeded stream.

        The hash key equals ``sample_key(params, seed)``.
        """
        stream = SeedStream(seed)
        key = stream.vector(params)
        return cls(key, [stream.below(params.n) for _ in range(pad_count)])

    def to_text(self) -> str:
        return format_key_text(
            self.hash_key,
            [("pads", ",".join(map(str, self.pads))), ("next", str(self.next_pad_index))],
        )

    @classmethod
    def from_text(cls, text: str) -> MacKey:
        params, key, extra = parse_key_text(text, extra=("pads", "next"))
        if "pads" not in extra:
            raise KeyFileError(4, 1, "missing 'pads=' line")
        line, raw = extra["pads"]
        pads = parse_residues(raw, params.n, line, "pads") if raw else []
        next_index = 0
        if "next" in extra:
            line, raw = extra["next"]
            if not raw.isdigit() or int(raw) > len(pads):
                raise KeyFileError(line, 6, f"bad pad index {raw!r}")
            next_index = int(raw)
        return cls(key, pads, next_index)


@dataclass(frozen=True)
class Tag:
    value: int
    pad_index: int


def _check_key(params: FamilyParams, key: MacKey):
    if key.params != params:
        raise InvalidArgumentError(f"MAC key is over {key.params}, expected {params}")


def mac_sign(params: FamilyParams, key: MacKey, msg: ResidueVector) -> Tag:
    _check_key(params, key)
    if key.next_pad_index >= len(key.pads):
        raise KeyExhaustedError(f"all {len(key.pads)} pads have been used")
    i = key.next_pad_index
    value = (evaluate(params, key.hash_key, msg) + key.pads[i]) % params.n
    key.next_pad_index = i + 1
    return Tag(value, i)


def mac_verify(params: FamilyParams, key: MacKey, msg: ResidueVector, tag: Tag) -> bool:
    _check_key(params, key)
    if not 0 <= tag.pad_index < len(key.pads):
        raise InvalidArgumentError(f"unknown pad index {tag.pad_index}")
    return (evaluate(params, key.hash_key, msg) + key.pads[tag.pad_index]) % params.n == tag.value


def forgery_experiment(params: FamilyParams, trials: int, seed: Seed) -> Fraction:
    """Empirical success rate of the best substitution attack.

    Each trial draws a fresh key and pad, signs a random message, and the
    adversary submits m + (n/p, 0, ..., 0) under the same tag.
    """
    if trials < 1:
        raise InvalidArgumentError(f"trials must be >= 1, got {trials}")
    shift = tightness_witness(params).m
    stream = SeedStream(seed)
    successes = 0
    for _ in range(trials):
        key = MacKey(stream.vector(params), [stream.below(params.n)])
        msg = stream.vector(params)
        tag = mac_sign(params, key, msg)
        successes += mac_verify(params, key, msg + shift, tag)
    return Fraction(successes, trials)


def best_substitution_probability(params: FamilyParams, budget: int = 10**7) -> Fraction:
    """Exact success probability of the optimal substitution adversary.

    Enumerates every (key, pad) for each observed message and, for each
    observed tag, the best reply (m', tag'). Independent of the gcd formula.
    """
    n, q = params.n, params.key_count
    cost = q * (q - 1) * q * n
    if cost > budget:
        raise BudgetExceededError(cost, budget, "adversary enumeration")
    vectors = [params.vector(v) for v in product(range(n), repeat=params.k)]
    digest = [[evaluate(params, x, m) for m in vectors] for x in vectors]
    best = Fraction(0)
    for mi in range(q):
        wins = 0
        for tag in range(n):
            # keys consistent with the observed tag, each with its forced pad
            consistent = [(xi, (tag - digest[xi][mi]) % n) for xi in range(q)]
            top = 0
            for mj in range(q):
                if mj == mi:
                    continue
                replies = Counter((digest[xi][mj] + r) % n for xi, r in consistent)
                top = max(top, max(replies.values()))
            wins += top
        best = max(best, Fraction(wins, q * n))
    return best
