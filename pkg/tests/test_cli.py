import json
import subprocess
import sys

import pytest

from odometer.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_equal_bisim(capsys):
    code, out, _ = call(capsys, "--n", "2", "equal", "tau*tau", "wreath(tau, tau;)", "--bisim")
    assert code == 0 and out.startswith("Equal")


def test_equal_not_equal_and_unknown(capsys):
    code, out, _ = call(capsys, "--n", "4", "equal", "tau", "tau^5")
    assert code == 1 and out.startswith("NotEqual(witness=0)")
    code, out, _ = call(capsys, "--n", "4", "equal", "tau", "id", "--bisim")
    assert code == 1 and out.startswith("NotEqual(witness=)")
    code, out, _ = call(capsys, "--n", "2", "--budget", "2", "equal",
                        "conj(tau, lambda(5))", "tau^5", "--bisim")
    assert code == 2 and out.startswith("Unknown")


def test_conjugate_to_tau(capsys):
    code, out, _ = call(capsys, "--n", "4", "conjugate-to-tau",
                        "conj(tau, wreath(rigid((0 1)), id, id, id;))", "--levels", "6")
    assert code == 0
    assert "certified-depth 6 PASS" in out
    assert out.rstrip().endswith("RESULT PASS")


def test_conjugate_to_tau_strict_and_errors(capsys):
    expr = "conj(tau, wreath(rigid((0 1)), id, id, id;))"
    code, out, _ = call(capsys, "--n", "4", "conjugate-to-tau", expr, "--levels", "4", "--strict")
    assert code == 1 and "RESULT FAIL" in out
    code, _, err = call(capsys, "--n", "4", "conjugate-to-tau", "tau^2")
    assert code == 65 and "evaluation error" in err


def test_dot(capsys):
    code, out, _ = call(capsys, "--n", "4", "dot", "tau")
    assert code == 0
    assert out.count("[label=") == 2 + 8
    assert "doublecircle" in out
    code, out, _ = call(capsys, "--n", "4", "dot", "conj(tau, lambda(5))", "--budget", "3")
    assert code == 2 and out.strip() == "UNKNOWN"


def test_eval_and_apply(capsys):
    code, out, _ = call(capsys, "--n", "2", "eval", "tau", "--depth", "1")
    assert code == 0 and out == "(•, •)(0 1)\n"
    code, out, _ = call(capsys, "--n", "2", "--names", "eval", "wreath(tau, id;)", "--depth", "3")
    assert out == "(tau, id)()\n"
    code, out, _ = call(capsys, "--n", "4", "apply", "tau", "30")
    assert code == 0 and out == "01\n"
    code, out, _ = call(capsys, "--n", "12", "apply", "tau", "11,11,3")
    assert out == "0,0,4\n"


def test_commutes(capsys):
    code, out, _ = call(capsys, "--n", "4", "commutes", "tau", "tau^1/3")
    assert code == 0 and out.startswith("true")
    code, out, _ = call(capsys, "--n", "4", "--depth", "2", "commutes", "tau", "rigid((0 1))")
    assert code == 1 and out.startswith("false witness=")


def test_verify(capsys):
    code, out, _ = call(capsys, "--n", "4", "verify", "wreath", "--param", "m=2", "--param", "s=2")
    assert code == 0 and out.endswith("SUITE wreath PASS\n")
    code, out, _ = call(capsys, "--n", "4", "--depth", "5", "verify", "commutation",
                        "--param", "beta=wreath(rigid((0 1)), id, tau, id; (0 2))")
    assert code == 1 and "SUITE commutation FAIL" in out


@pytest.mark.parametrize("argv,code", [
    (["equal", "tau", "tau"], 64),
    (["--n", "1", "eval", "tau"], 64),
    (["--n", "4", "--depth", "-1", "eval", "tau"], 64),
    (["--n", "4", "--budget", "0", "dot", "tau"], 64),
    (["--n", "4", "frobnicate"], 64),
    (["--n", "4"], 64),
    (["--n", "x", "eval", "tau"], 64),
    (["--n", "4", "--format", "xml", "eval", "tau"], 64),
    (["--n", "4", "verify", "nope"], 64),
    (["--n", "4", "verify", "wreath", "--param", "q=1"], 64),
    (["--n", "4", "verify", "wreath", "--param", "m"], 64),
    (["--n", "4", "eval", "tau *"], 65),
    (["--n", "4", "eval", "tau^1/2"], 65),
    (["--n", "3", "eval", "theta"], 65),
    (["--n", "4", "apply", "tau", "9"], 65),
    (["--n", "4", "verify", "commutation", "--param", "beta=tau^"], 65),
    (["--n", "4", "verify", "wreath", "--param", "m=3", "--param", "s=2"], 65),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = call(capsys, *argv)
    assert got == code
    assert err


def test_json_matches_text(capsys):
    for argv in [["equal", "tau", "tau^5"], ["equal", "tau*tau", "wreath(tau, tau;)", "--bisim"],
                 ["commutes", "tau", "iota"]]:
        c1, text, _ = call(capsys, "--n", "2", *argv)
        c2, raw, _ = call(capsys, "--n", "2", "--format", "json", *argv)
        data = json.loads(raw)
        assert c1 == c2
        if "verdict" in data:
            assert text.startswith(data["verdict"])
        else:
            assert text.startswith("true" if data["commutes"] else "false")


def test_verify_json(capsys):
    code, raw, _ = call(capsys, "--n", "4", "--format", "json", "--seed", "4", "verify", "symmetric")
    data = json.loads(raw)
    assert code == 0 and data["suite"] == "symmetric" and data["seed"] == 4
    assert all(r["status"] == "PASS" for r in data["relations"])


def test_output_is_byte_identical(capsys):
    argvs = [
        ["--n", "4", "verify", "n4", "--seed", "2", "--depth", "6"],
        ["--n", "4", "conjugate-to-tau", "conj(tau, wreath(rigid((0 1)), id, id, id;))"],
        ["--n", "3", "dot", "iota * tau"],
        ["--n", "3", "eval", "conj(tau, lambda(4))", "--depth", "3"],
    ]
    for argv in argvs:
        first = call(capsys, *argv)
        second = call(capsys, *argv)
        assert first == second


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "odometer", "--n", "2", "equal", "tau*tau",
                           "wreath(tau, tau;)", "--bisim"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("Equal")
