import importlib
import json
import subprocess
import sys

import pytest

from heckoid import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sseq(capsys):
    code, out, _ = run(capsys, "sseq", "10/37")
    data = json.loads(out)
    assert code == 0 and data["schema"] == cli.SCHEMA
    assert data["s_sequence"] == [4, 4, 4, 3, 4, 4, 3, 4, 4, 3, 4, 4, 4, 3, 4, 4, 3, 4, 4, 3]


def test_intervals(capsys):
    code, out, _ = run(capsys, "intervals", "3/10", "2")
    assert json.loads(out)["closed"] == [["0/1", "5/17"], ["7/23", "1/1"]]


def test_conjugate(capsys):
    code, out, _ = run(capsys, "conjugate", "1/2", "2", "1/4", "3/4")
    data = json.loads(out)
    assert code == 0 and data["conjugate"] is False
    assert data["certificates"][0]["kind"] == "non-conjugate"


def test_continued_fraction_input(capsys):
    _, a, _ = run(capsys, "word", "[3,3]")
    _, b, _ = run(capsys, "word", "3/10")
    assert a == b


@pytest.mark.parametrize(
    "argv",
    [
        ["word", "0"],
        ["decomp", "8/35"],
        ["tseq", "[2,1,5]"],
        ["normalize", "1/2", "2", "7/4", "-5/3"],
        ["trivial", "1/2", "2", "9/16"],
        ["peripheral", "1/2", "2", "1/4", "inf"],
        ["torsion", "1/3", "2", "1/3", "2/7"],
        ["smallcancel", "1/2", "2"],
        ["pieces", "1/3", "2", "--word", "abaBAB", "--reduce", "abaBABabaBAB"],
        ["rep", "1/2", "2", "0"],
        ["rep", "1/2", "3", "1/4", "3/4", "--all-orders"],
        ["verify", "properties", "--max-denom", "10"],
        ["sseq", "10/37", "--table"],
    ],
)
def test_commands_succeed(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    assert out.strip()


def test_exit_codes(capsys):
    assert run(capsys, "word", "1/x")[0] == 2
    assert run(capsys, "verify", "nonsense")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    code, _, err = run(capsys, "decomp", "0")
    assert code == 1 and json.loads(err)["error"] == "SlopeError"
    assert run(capsys, "intervals", "1/2", "1")[0] == 1
    assert run(capsys, "tseq", "1/3")[0] == 1


def test_dispatch_covers_every_operation():
    reached = {op for ops in cli.OPERATIONS.values() for op in ops}
    assert set(cli.OPERATIONS) == set(cli.COMMANDS)
    for op in reached:
        mod, name = op.split(".")
        assert callable(getattr(importlib.import_module(f"heckoid.{mod}"), name)), op
    public = {
        "presentation": ["riley_word", "slope_s_sequence", "t_sequence", "reduced_slope",
                         "s1_s2_decomposition", "recover_slope", "check_corollary_patterns"],
        "farey": ["fundamental_intervals", "normalize", "in_orbit_of_infinity"],
        "smallcancel": ["relator_set", "compute_pieces", "verify_C", "verify_T4", "min_piece_count",
                        "dehn_reduce", "bounded_conjugacy_search", "forbidden_pattern_report"],
        "kleinian": ["trace_polynomial", "solve_representations", "trace_of_slope", "certify"],
        "decide": ["classify", "conjugate", "is_peripheral", "is_torsion"],
    }
    for mod, names in public.items():
        for name in names:
            assert f"{mod}.{name}" in reached, f"{mod}.{name} unreachable from the CLI"


def test_output_is_byte_stable():
    argv = [sys.executable, "-m", "heckoid", "conjugate", "1/3", "2", "1/5", "2/5"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second
