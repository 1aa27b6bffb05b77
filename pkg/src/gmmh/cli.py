"""``gmmh`` command-line front end.

Exit codes: 0 success, 1 runtime error (budget, key file), 2 usage error.
"""

from __future__ import annotations

import argparse
import random
from array import array
import sys
import time
from dataclasses import dataclass
from functools import reduce
from operator import xor
from typing import Optional, Sequence

from . import _backend
from .errors import GMMHError, InvalidArgumentError
from .family import (
    FamilyParams,
    ResidueVector,
    Seed,
    coerce_seed,
    evaluate,
    format_key_text,
    parse_key_text,
    sample_key,
)
from .mac import MacKey, Tag, mac_sign, mac_verify
from .numtheory import CongruenceInstance, count_congruence_solutions, enumerate_congruence_solutions
from .verifier import DEFAULT_BUDGET, verify_theorem

DEFAULT_SEED = "0" * 64


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class BenchReport:
    backend: str
    messages: int
    residues: int
    checksum: int
    seconds: float

    @property
    def messages_per_second(self) -> float:
        return self.messages / self.seconds

    @property
    def residues_per_second(self) -> float:
        return self.residues / self.seconds


def bench(params: FamilyParams, message_count: int, seed: Seed = DEFAULT_SEED) -> BenchReport:
    """Hash ``message_count`` pseudo-random messages under one sampled key.

    Only the hashing is timed; the checksum is the XOR of all digests.
    """
    if message_count < 1:
        raise InvalidArgumentError(f"message count must be >= 1, got {message_count}")
    key = sample_key(params, seed)
    rng = random.Random(coerce_seed(seed))
    msgs = array("Q", (rng.randrange(params.n) for _ in range(message_count * params.k)))
    kernels = _backend.kernels
    start = time.perf_counter()
    digests = kernels.hash_many(array("Q", key.entries), msgs, params.n)
    # floor keeps the rates finite for tiny runs
    elapsed = max(time.perf_counter() - start, 1e-9)
    return BenchReport(_backend.NAME, len(digests), len(msgs), reduce(xor, digests, 0), elapsed)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {v}")
    return v


def _vector_arg(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from None


def _seed_arg(text: str) -> bytes:
    try:
        return coerce_seed(text)
    except InvalidArgumentError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gmmh", description="GMMH* hashing, verification and one-time MACs")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "lines"), default="text")

    family = _Parser(add_help=False)
    family.add_argument("--n", type=_positive)
    family.add_argument("--k", type=_positive)

    p = sub.add_parser("keygen", parents=[common, family], help="sample a hash or MAC key")
    p.add_argument("--seed", type=_seed_arg, default=DEFAULT_SEED)
    p.add_argument("--pads", type=_nonneg, help="also draw this many one-time pads (MAC key)")
    p.add_argument("--key-file", help="write the key here instead of stdout")

    p = sub.add_parser("hash", parents=[common, family], help="evaluate h_x(m)")
    p.add_argument("--key", type=_vector_arg)
    p.add_argument("--key-file")
    p.add_argument("--msg", type=_vector_arg, required=True)

    p = sub.add_parser("solve", parents=[common], help="count solutions of a.x = b (mod n)")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--coeffs", type=_vector_arg, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--enumerate", action="store_true", help="also list every solution")
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)

    p = sub.add_parser("verify", parents=[common, family], help="exhaustively check the 1/p bound")
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=_positive, default=1)

    p = sub.add_parser("mac-sign", parents=[common], help="tag a message, consuming one pad")
    p.add_argument("--key-file", required=True)
    p.add_argument("--msg", type=_vector_arg, required=True)

    p = sub.add_parser("mac-verify", parents=[common], help="check a tag")
    p.add_argument("--key-file", required=True)
    p.add_argument("--msg", type=_vector_arg, required=True)
    p.add_argument("--tag", type=_nonneg, required=True)
    p.add_argument("--pad-index", type=_nonneg, required=True)

    p = sub.add_parser("bench", parents=[common, family], help="hashing throughput")
    p.add_argument("--count", type=_positive, default=100_000)
    p.add_argument("--seed", type=_seed_arg, default=DEFAULT_SEED)
    return parser


def _emit(out, pairs: Sequence[tuple[str, object]], fmt: str):
    sep = "\n" if fmt == "lines" else " "
    out.write(sep.join(f"{k}={v}" for k, v in pairs) + "\n")


def _params(args) -> FamilyParams:
    if args.n is None or args.k is None:
        raise UsageError("--n and --k are required")
    if args.n < 2:
        raise UsageError(f"--n must be >= 2, got {args.n}")
    try:
        return FamilyParams(args.n, args.k)
    except InvalidArgumentError as exc:
        raise UsageError(str(exc)) from None


def _message(params: FamilyParams, values: list[int], flag: str) -> ResidueVector:
    try:
        return params.vector(values)
    except InvalidArgumentError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _cmd_keygen(args, out):
    params = _params(args)
    if args.pads is not None:
        text = MacKey.generate(params, args.pads, args.seed).to_text()
    else:
        text = format_key_text(sample_key(params, args.seed))
    if args.key_file:
        _write(args.key_file, text)
    else:
        out.write(text)


def _cmd_hash(args, out):
    if (args.key is None) == (args.key_file is None):
        raise UsageError("give exactly one of --key and --key-file")
    if args.key_file:
        params, key, _ = parse_key_text(_read(args.key_file), extra=("pads", "next"))
    else:
        params = _params(args)
        key = _message(params, args.key, "--key")
    digest = evaluate(params, key, _message(params, args.msg, "--msg"))
    if args.format == "lines":
        _emit(out, [("digest", digest)], "lines")
    else:
        out.write(f"{digest}\n")


def _cmd_solve(args, out):
    c = CongruenceInstance(tuple(args.coeffs), args.b, args.n)
    count = count_congruence_solutions(c)
    if args.format == "lines":
        pairs = [("n", c.modulus), ("ell", c.ell), ("solvable", str(count > 0).lower()), ("count", count)]
    else:
        pairs = [("count", count)]
    if args.enumerate:
        sols = enumerate_congruence_solutions(c, args.budget)
        pairs.append(("solutions", ";".join(",".join(map(str, x)) for x in sols)))
    _emit(out, pairs, args.format)


def _cmd_verify(args, out):
    report = verify_theorem(_params(args), args.budget, args.workers)
    out.write(report.to_text(args.format))


def _cmd_mac_sign(args, out):
    key = MacKey.from_text(_read(args.key_file))
    tag = mac_sign(key.params, key, _message(key.params, args.msg, "--msg"))
    _write(args.key_file, key.to_text())
    _emit(out, [("tag", tag.value), ("pad_index", tag.pad_index)], args.format)


def _cmd_mac_verify(args, out):
    key = MacKey.from_text(_read(args.key_file))
    ok = mac_verify(key.params, key, _message(key.params, args.msg, "--msg"), Tag(args.tag, args.pad_index))
    _emit(out, [("valid", str(ok).lower())], args.format)


def _cmd_bench(args, out):
    r = bench(_params(args), args.count, args.seed)
    _emit(
        out,
        [
            ("backend", r.backend),
            ("messages", r.messages),
            ("residues", r.residues),
            ("checksum", r.checksum),
            ("seconds", f"{r.seconds:.6f}"),
            ("messages_per_second", f"{r.messages_per_second:.0f}"),
            ("residues_per_second", f"{r.residues_per_second:.0f}"),
        ],
        args.format,
    )


_COMMANDS = {
    "keygen": _cmd_keygen,
    "hash": _cmd_hash,
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "mac-sign": _cmd_mac_sign,
    "mac-verify": _cmd_mac_verify,
    "bench": _cmd_bench,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return exc.code or 0
    except (GMMHError, OSError) as exc:
        err.write(f"gmmh: {exc}\n")
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
