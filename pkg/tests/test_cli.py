import io
import os
import subprocess
import sys
from pathlib import Path

import pytest

from gmmh.cli import bench, run
from gmmh.family import FamilyParams

GOLDEN = Path(__file__).with_name("golden")
SEED = "0123456789abcdef" * 4
REGEN = bool(os.environ.get("GMMH_REGEN_GOLDEN"))


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def check_golden(name, text):
    path = GOLDEN / f"{name}.txt"
    if REGEN:
        path.write_text(text)
    assert text == path.read_text()


GOLDEN_CASES = {
    "hash": ["hash", "--n", "10", "--k", "3", "--key", "1,2,3", "--msg", "4,5,6"],
    "hash_lines": ["hash", "--n", "10", "--k", "3", "--key", "1,2,3", "--msg", "4,5,6", "--format", "lines"],
    "solve": ["solve", "--coeffs", "2", "--b", "0", "--n", "4"],
    "solve_unsolvable": ["solve", "--coeffs", "2", "--b", "1", "--n", "4"],
    "solve_lines": ["solve", "--coeffs", "3,0", "--b", "3", "--n", "6", "--format", "lines", "--enumerate"],
    "verify": ["verify", "--n", "6", "--k", "2"],
    "verify_prime_lines": ["verify", "--n", "7", "--k", "2", "--format", "lines"],
    "verify_12_1": ["verify", "--n", "12", "--k", "1", "--workers", "2"],
    "keygen": ["keygen", "--n", "1000003", "--k", "4", "--seed", SEED],
    "keygen_mac": ["keygen", "--n", "10", "--k", "3", "--pads", "4", "--seed", SEED],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name):
    code, out, err = call(*GOLDEN_CASES[name])
    assert code == 0, err
    check_golden(name, out)
    # byte-identical on repeat
    assert call(*GOLDEN_CASES[name])[1] == out


def test_documented_examples():
    assert call(*GOLDEN_CASES["hash"])[1] == "2\n"
    assert "max=1/2 bound=1/2 tight=true" in call(*GOLDEN_CASES["verify"])[1]
    assert call(*GOLDEN_CASES["solve"])[1] == "count=2\n"


def test_mac_session(tmp_path):
    key_file = tmp_path / "key.txt"
    assert call("keygen", "--n", "10", "--k", "3", "--pads", "2", "--seed", SEED, "--key-file", str(key_file))[0] == 0
    signed = [call("mac-sign", "--key-file", str(key_file), "--msg", m) for m in ("4,5,6", "1,1,1")]
    assert [s[0] for s in signed] == [0, 0]
    check_golden("mac_sign", "".join(s[1] for s in signed))
    assert key_file.read_text().endswith("next=2\n")

    code, out, err = call("mac-sign", "--key-file", str(key_file), "--msg", "4,5,6")
    assert code == 1 and "pads" in err

    tag = signed[0][1].split()[0].split("=")[1]
    assert call("mac-verify", "--key-file", str(key_file), "--msg", "4,5,6", "--tag", tag, "--pad-index", "0")[1] == "valid=true\n"
    bad = str((int(tag) + 1) % 10)
    assert call("mac-verify", "--key-file", str(key_file), "--msg", "4,5,6", "--tag", bad, "--pad-index", "0")[1] == "valid=false\n"
    code, out, err = call("mac-verify", "--key-file", str(key_file), "--msg", "4,5,6", "--tag", tag, "--pad-index", "5")
    assert code == 1


def test_hash_from_key_file(tmp_path):
    key_file = tmp_path / "key.txt"
    key_file.write_text("n=10\nk=3\nx=1,2,3\n")
    assert call("hash", "--key-file", str(key_file), "--msg", "4,5,6") == (0, "2\n", "")


def test_key_file_parse_error(tmp_path):
    key_file = tmp_path / "key.txt"
    key_file.write_text("n=10\nk=3\nx=1,2,33\n")
    code, out, err = call("hash", "--key-file", str(key_file), "--msg", "4,5,6")
    assert code == 1 and "line 3, column 7" in err


def test_bench_deterministic_fields():
    code, out, err = call("bench", "--n", "1000003", "--k", "4", "--count", "1000", "--seed", SEED, "--format", "lines")
    assert code == 0
    fields = dict(line.split("=") for line in out.splitlines())
    assert float(fields["messages_per_second"]) > 0
    stable = "".join(f"{k}={fields[k]}\n" for k in ("messages", "residues", "checksum"))
    check_golden("bench", stable)


def test_bench_function():
    r = bench(FamilyParams(97, 3), 1, seed=0)
    assert r.messages == 1 and r.residues == 3 and r.messages_per_second > 0
    assert bench(FamilyParams(97, 3), 50, seed=1).checksum == bench(FamilyParams(97, 3), 50, seed=1).checksum


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["hash", "--n", "10", "--k", "3", "--key", "1,2,3"],
        ["hash", "--n", "10", "--k", "3", "--key", "1,2,3", "--msg", "4,5"],
        ["hash", "--n", "10", "--k", "3", "--key", "1,2,30", "--msg", "4,5,6"],
        ["hash", "--n", "1", "--k", "3", "--key", "0,0,0", "--msg", "0,0,0"],
        ["verify", "--n", "6", "--k", "0"],
        ["verify", "--n", "6"],
        ["verify", "--n", "6", "--k", "2", "--bogus"],
        ["verify", "--n", "6", "--k", "2", "--format", "json"],
        ["keygen", "--n", "6", "--k", "2", "--seed", "abc"],
        ["bench", "--n", "6", "--k", "2", "--count", "0"],
    ],
)
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 2
    assert out == "" and err


def test_budget_exceeded_is_runtime_error():
    code, out, err = call("verify", "--n", "12", "--k", "3")
    assert code == 1 and "budget" in err
    assert call("verify", "--n", "12", "--k", "3", "--budget", "100000000")[0] == 0


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gmmh.cli", "hash", "--n", "10", "--k", "3", "--key", "1,2,3", "--msg", "4,5,6"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "2\n"
    proc = subprocess.run([sys.executable, "-m", "gmmh.cli", "nope"], capture_output=True, text=True)
    assert proc.returncode == 2 and "usage" in proc.stderr
