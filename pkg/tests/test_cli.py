import csv
import io
import json
import math
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polylcm import InvalidInput, Polynomial, build_factor_table
from polylcm.cli import ParseError, parse_polynomial, run
from polylcm.report import (
    RunReport,
    cache_key,
    decode_factor_log,
    encode_factor_log,
    load_table,
    store_table,
)

from conftest import CUBIC, X2P1


def _json(argv, capsys):
    rep, code = run(argv)
    out = capsys.readouterr().out
    return json.loads(out) if out.strip().startswith("{") else out, code


@pytest.mark.parametrize(
    "text, coeffs",
    [
        ("x^2+1", (1, 0, 1)),
        ("(x+1)^2 - 2*x", (1, 0, 1)),
        ("1,0,1", (1, 0, 1)),
        (" -2 , 0, 0, 1 ", (-2, 0, 0, 1)),
        ("x**3 - 2", (-2, 0, 0, 1)),
        ("2x^4 + x + 3", (3, 1, 0, 0, 2)),
        ("-x^2 + 3", (3, 0, -1)),
        ("x(x+1)+1", (1, 1, 1)),
        ("x^2 + 0*x^5 + 1", (1, 0, 1)),
        ("x^2 − 1", (-1, 0, 1)),
    ],
)
def test_parse_examples(text, coeffs):
    assert parse_polynomial(text).coeffs == coeffs


@pytest.mark.parametrize(
    "text, offset",
    [("x^2 + $", 6), ("x^2 +", 5), ("(x+1", 4), ("x^y", 2), ("x^2 1)", 5), ("é + x", 0)],
)
def test_parse_errors_carry_byte_offset(text, offset):
    with pytest.raises(ParseError) as exc:
        parse_polynomial(text)
    assert exc.value.offset == offset


def test_parse_rejects_decimals_and_constants():
    with pytest.raises(ParseError, match="non-integer"):
        parse_polynomial("1.5*x + 1")
    with pytest.raises(InvalidInput, match="degree 0"):
        parse_polynomial("(x+1) - x")
    with pytest.raises(InvalidInput):
        parse_polynomial("7")


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-10**6, 10**6), min_size=2, max_size=8).filter(lambda c: c[-1] != 0))
def test_canonical_round_trip(cs):
    f = Polynomial(tuple(cs))
    assert parse_polynomial(f.canonical()) == f
    assert parse_polynomial(str(f)) == f


def test_constants_degree_3(capsys):
    rep, code = _json(["constants", "--degree", "3", "--no-timing"], capsys)
    assert code == 0 and rep["schema"] == 1
    row = rep["outputs"]["rows"][0]
    assert row["table1"] == 0.8632
    assert row["schedule"] == "iwaniec+vanilla"
    assert row["main_bound_coefficient"] == pytest.approx(0.0, abs=1e-4)


def test_constants_all_and_eh(capsys):
    rep, _ = _json(["constants", "--no-timing"], capsys)
    assert [r["degree"] for r in rep["outputs"]["rows"]] == list(range(1, 9))
    rep, _ = _json(["constants", "--degree", "2", "--eh-delta", "0.99", "--no-timing"], capsys)
    assert rep["config"]["eh"] is True
    row = rep["outputs"]["rows"][0]
    # 0.99 lies outside the Wu-Xi support: no bound integral is claimed
    assert row["delta"] == 0.99 and row["main_bound_coefficient"] is None


def test_lcm_growth_seed(capsys):
    rep, code = _json(["lcm-growth", "--poly", "x^2+1", "--x", "10", "--no-timing"], capsys)
    assert code == 0
    row = rep["outputs"]["rows"][-1]
    assert row["log_L"] == pytest.approx(math.log(650), abs=1e-9)
    assert row["log_Q"] == pytest.approx(math.log(65000), abs=1e-9)
    assert rep["polynomial"] == "1,0,1" and rep["certification"] == "deterministic"


def test_lcm_growth_checkpoints_and_integers(capsys):
    rep, _ = _json(
        ["lcm-growth", "--poly", "x^2+1", "--checkpoints", "10,100,1000", "--args", "integers",
         "--no-timing"],
        capsys,
    )
    rows = rep["outputs"]["rows"]
    assert [r["x"] for r in rows] == [10, 100, 1000]
    assert rows[0]["log_L"] == pytest.approx(math.log(math.lcm(*(n * n + 1 for n in range(1, 10)))))
    assert [r["log_L"] for r in rows] == sorted(r["log_L"] for r in rows)


def test_density_seed(capsys):
    rep, code = _json(
        ["density", "--poly", "x^2+1", "--x", "10", "--exponent", "0.847", "--no-timing"], capsys
    )
    assert code == 0
    assert rep["outputs"]["N"] == 3 and rep["outputs"]["fraction"] == 0.75


def test_density_default_exponent(capsys):
    rep, _ = _json(["density", "--poly", "x^2+1", "--x", "1000", "--no-timing"], capsys)
    assert rep["config"]["exponent"] == pytest.approx(0.847)


def test_decompose_report(capsys):
    rep, code = _json(["decompose", "--poly", "x^2+1", "--x", "1e4", "--no-timing"], capsys)
    assert code == 0
    o = rep["outputs"]
    assert rep["config"]["delta"] == 0.847 and rep["config"]["B"] == 6.0
    assert abs(sum(o["decomposition"].values()) - o["log_Q"]) <= 1e-9 * o["log_Q"]
    rep, _ = _json(
        ["decompose", "--poly", "x^3-2", "--x", "1e4", "--eh-delta", "0.99", "--no-timing"], capsys
    )
    assert rep["config"]["delta_mode"] == "conditional-on-EH" and rep["config"]["eh"] is True


def test_mertens_report(capsys):
    rep, code = _json(["mertens", "--poly", "x^2+1", "--x", "1e5", "--no-timing"], capsys)
    assert code == 0
    cps = rep["outputs"]["checkpoints"]
    assert [c["x"] for c in cps] == [10, 100, 1000, 10**4, 10**5]
    assert cps[-1]["drift"] == pytest.approx(-1.2720650285259065, rel=1e-12)
    assert rep["outputs"]["root_count_vs_li"]["li_lower_limit"] == 2


def test_verify_report(capsys):
    rep, code = _json(["verify", "--poly", "x^3-2", "--x", "3000", "--m-max", "300", "--no-timing"], capsys)
    assert code == 0 and rep["outputs"]["all_passed"]
    assert len(rep["outputs"]["checks"]) == 13


def test_exit_codes(capsys):
    assert run(["lcm-growth", "--poly", "x^2-1", "--x", "10"])[1] == 1  # reducible
    assert run(["lcm-growth", "--poly", "x^4+1", "--x", "10"])[1] == 1  # inconclusive
    assert run(["lcm-growth", "--poly", "x^4+1", "--x", "10", "--assume-irreducible"])[1] == 0
    assert run(["lcm-growth", "--poly", "x^2+", "--x", "10"])[1] == 1
    assert run(["decompose", "--poly", "x^2+1", "--x", "100", "--delta", "1.5"])[1] == 1
    assert run(["nonsense"])[1] == 1
    assert run(["density", "--poly", "x^2+1", "--x", "5e9"])[1] == 2  # sieve budget
    err = capsys.readouterr().err
    assert "byte offset" in err and "resource limit" in err


def test_exit_code_on_failed_verification(monkeypatch, capsys):
    from polylcm import cli
    from polylcm.verify import CheckResult

    monkeypatch.setattr(cli, "run_checks", lambda *a, **k: [CheckResult("rigged", False)])
    assert run(["verify", "--poly", "x^2+1", "--no-timing"])[1] == 3


def test_no_timing_is_byte_identical(capsys):
    argv = ["lcm-growth", "--poly", "x^3-2", "--x", "20000", "--no-timing"]
    run(argv)
    a = capsys.readouterr().out
    run(argv + ["--threads", "4"])
    b = capsys.readouterr().out
    assert a == b and "timing" not in a
    run(argv[:-1])
    assert "timing" in capsys.readouterr().out


def test_report_round_trip(capsys):
    rep, _ = run(["decompose", "--poly", "x^2+1", "--x", "1000"])
    capsys.readouterr()
    again = RunReport.from_json(rep.to_json())
    assert again == rep and again.to_json() == rep.to_json()
    bad = json.loads(rep.to_json()) | {"schema": 2}
    with pytest.raises(ValueError):
        RunReport.from_json(json.dumps(bad))


@pytest.mark.parametrize(
    "argv, header",
    [
        (["constants"], "degree,schedule,epsilon"),
        (["lcm-growth", "--poly", "x^2+1", "--x", "100"], "x,arguments,records,log_Q"),
        (["decompose", "--poly", "x^2+1", "--x", "100"], "x,B,delta,x_b,log_Q,log_Q_S"),
        (["density", "--poly", "x^2+1", "--x", "10"], "q,largest_prime,exceeds"),
        (["mertens", "--poly", "x^2+1", "--x", "100"], "x,S,drift"),
    ],
)
def test_csv_output(argv, header, capsys):
    _, code = run(argv + ["--format", "csv"])
    out = capsys.readouterr().out
    assert code == 0 and out.startswith(header)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows
    if argv[0] == "density":
        assert [(r["q"], r["largest_prime"], r["exceeds"]) for r in rows] == [
            ("2", "5", "True"), ("3", "5", "True"), ("5", "13", "True"), ("7", "5", "False"),
        ]


def test_output_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert run(["constants", "--degree", "1", "-o", str(path)])[1] == 0
    assert capsys.readouterr().out == ""
    assert json.loads(path.read_text())["outputs"]["rows"][0]["table1"] == 0.6265


def test_factor_log_round_trip():
    t = build_factor_table(CUBIC, 5000)
    blob = encode_factor_log(t.records)
    assert decode_factor_log(blob) == list(t.records)
    # q=2 for x^2+1: 5 = 5^1 -> u64 q, u16 count, u16 len, 0x05, u16 exponent
    seed = build_factor_table(X2P1, 3).records
    assert encode_factor_log(seed) == bytes.fromhex("0200000000000000" "0100" "0100" "05" "0100")


def test_big_primes_in_factor_log():
    from polylcm.valuations import FactorRecord

    p = 2**89 - 1
    rec = FactorRecord(7, p * p, ((p, 2),))
    assert decode_factor_log(encode_factor_log([rec])) == [rec]


def test_cache_store_load_and_validation(tmp_path):
    t = build_factor_table(X2P1, 2000)
    store_table(tmp_path, t)
    got = load_table(tmp_path, X2P1, 2000, t.l0)
    assert got.records == t.records and got.n_arguments == t.n_arguments
    assert load_table(tmp_path, X2P1, 2001, t.l0) is None
    key = cache_key(X2P1, 2000, t.l0)
    binp = tmp_path / f"{key}.bin"
    blob = bytearray(binp.read_bytes())
    blob[-1] ^= 1
    binp.write_bytes(bytes(blob))
    assert load_table(tmp_path, X2P1, 2000, t.l0) is None


def test_cli_uses_cache(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("POLYLCM_CACHE", str(tmp_path))
    argv = ["lcm-growth", "--poly", "x^2+1", "--x", "3000", "--no-timing"]
    run(argv)
    first = capsys.readouterr().out
    assert len(list(tmp_path.glob("*.bin"))) == 1

    from polylcm import cli

    def boom(*a, **k):
        raise AssertionError("cache miss")

    monkeypatch.setattr(cli, "build_factor_table", boom)
    assert run(argv)[1] == 0
    assert capsys.readouterr().out == first


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "polylcm.cli", "constants", "--degree", "8", "--no-timing"],
        capture_output=True, text=True, check=True,
    ).stdout
    assert json.loads(out)["outputs"]["rows"][0]["table1"] == 0.9887
