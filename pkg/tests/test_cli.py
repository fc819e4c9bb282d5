import csv
import io
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from halfgcd import bench, polyfile
from halfgcd.cli import main
from halfgcd.field import QQ, prime_field
from halfgcd.polynomial import Poly

P_LINE = f"p={prime_field().p}"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, text, name="in.txt"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


# -- file format ------------------------------------------------------------------------------


@given(st.lists(st.lists(st.integers(0, prime_field().p - 1), max_size=12), min_size=1, max_size=4))
def test_round_trip_prime(blocks):
    F = prime_field()
    polys = [Poly(F, c) for c in blocks]
    field, back = polyfile.parse(polyfile.emit(F, polys))
    assert field == F and back == polys


@given(st.lists(st.lists(st.fractions(), max_size=8), min_size=1, max_size=4))
def test_round_trip_rational(blocks):
    polys = [Poly(QQ, c) for c in blocks]
    field, back = polyfile.parse(polyfile.emit(QQ, polys))
    assert field is QQ and back == polys


def test_parse_details():
    F, (P, Q) = polyfile.parse("p=17\n-1\n  20 \n\n\n\n0\n")
    assert P == Poly(F, [16, 3]) and Q.is_zero()
    _, (R,) = polyfile.parse("Q\n1/2\n-3/6\n")
    assert R == Poly(QQ, [Fraction(1, 2), Fraction(-1, 2)])
    for bad in ("p=17\nabc\n", "p=17\n1/2\n", "Q\n1/0\n", "", "\n1\n"):
        with pytest.raises(polyfile.PolyFileError):
            polyfile.parse(bad)
    for bad in ("p=15\n1\n", "GF(4)\n1\n", "p=2\n1\n"):
        with pytest.raises(polyfile.UnsupportedField):
            polyfile.parse(bad)


# -- gcd / xgcd / hgcd ------------------------------------------------------------------------


def test_gcd_command(tmp_path, capsys):
    path = write(tmp_path, f"{P_LINE}\n-1\n0\n1\n\n-1\n1\n")
    code, out, _ = run(capsys, "gcd", path)
    assert code == 0
    assert polyfile.parse(out)[1] == [Poly(prime_field(), [-1, 1])]


def test_gcd_with_zero(tmp_path, capsys):
    path = write(tmp_path, "Q\n2\n0\n4\n\n0\n")
    code, out, _ = run(capsys, "gcd", path, "--alg", "general-basic")
    assert code == 0 and out == "Q\n1/2\n0\n1\n"


def test_xgcd_command(tmp_path, capsys):
    path = write(tmp_path, "Q\n0\n0\n0\n1\n\n1\n0\n1\n")
    code, out, _ = run(capsys, "xgcd", path)
    assert code == 0
    _, (g, u, v) = polyfile.parse(out)
    assert g == Poly(QQ, [1]) and u == Poly.x(QQ) and v == Poly(QQ, [1, 0, -1])


def test_hgcd_command(tmp_path, capsys):
    path = write(tmp_path, "Q\n0\n0\n0\n1\n\n0\n1\n")
    code, out, _ = run(capsys, "hgcd", path, "--k", "3")
    assert code == 0
    _, entries = polyfile.parse(out)
    assert entries == [Poly.zero(QQ), Poly(QQ, [1]), Poly(QQ, [1]), Poly(QQ, [0, 0, -1])]


def test_parse_failures_exit_2(tmp_path, capsys):
    assert run(capsys, "gcd", write(tmp_path, f"{P_LINE}\n1\nabc\n\n1\n"))[0] == 2
    assert run(capsys, "gcd", write(tmp_path, f"{P_LINE}\n1\n"))[0] == 2
    assert run(capsys, "gcd", str(tmp_path / "missing.txt"))[0] == 2
    assert run(capsys, "gcd", write(tmp_path, f"{P_LINE}\n0\n\n0\n"))[0] == 2
    assert run(capsys, "hgcd", write(tmp_path, "Q\n1\n\n0\n1\n"), "--k", "1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["gcd"])
    assert exc.value.code == 2


def test_unsupported_field_exit_3(tmp_path, capsys):
    code, _, err = run(capsys, "gcd", write(tmp_path, "GF(9)\n1\n\n1\n"))
    assert code == 3 and "unsupported" in err
    assert run(capsys, "gcd", write(tmp_path, "p=21\n1\n\n1\n"))[0] == 3
    # normal-fft needs length-8 transforms that Q does not have
    assert run(capsys, "hgcd", write(tmp_path, "Q\n" + "0\n" * 16 + "1\n\n1\n"), "--k", "8", "--alg", "normal-fft")[0] == 3


def test_no_fallback_reports_failure(tmp_path, capsys):
    path = write(tmp_path, "Q\n0\n0\n0\n0\n1\n\n0\n0\n1\n")
    assert run(capsys, "gcd", path, "--alg", "normal-basic")[0] == 0
    code, _, err = run(capsys, "gcd", path, "--alg", "normal-basic", "--no-fallback")
    assert code == 1 and "AbnormalSequence" in err


# -- bench ------------------------------------------------------------------------------------


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_bench_columns_and_determinism(capsys):
    argv = ["bench", "--alg", "hgcd-normal-fft,hgcd-general-fft,euclid-ref", "--sizes", "32,64", "--seeds", "0..2", "--no-timing"]
    code, out1, _ = run(capsys, *argv)
    assert code == 0
    code, out2, _ = run(capsys, *argv)
    assert out1 == out2
    table = rows(out1)
    assert list(table[0]) == list(bench.COLUMNS)
    assert len(table) == 3 * 2 * 3
    keys = [(r["algorithm"], int(r["k"]), int(r["seed"])) for r in table]
    assert keys == sorted(keys)
    for r in table:
        assert r["wall_time_ns"] == "0"
        k = int(r["k"])
        lg = k.bit_length() - 1
        assert float(r["normalized_constant"]) == pytest.approx(int(r["field_mults"]) / (k * lg * lg), abs=1e-6)


def test_bench_parallel_matches_serial(capsys):
    argv = ["bench", "--alg", "hgcd-general,euclid-ref", "--sizes", "16,32", "--seeds", "1,2", "--no-timing"]
    _, serial, _ = run(capsys, *argv)
    _, parallel, _ = run(capsys, *argv, "--jobs", "2")
    assert serial == parallel


def test_bench_euclid_is_quadratic(capsys):
    _, out, _ = run(capsys, "bench", "--alg", "euclid-ref", "--sizes", "256,512", "--seeds", "0..3", "--no-timing")
    by_k = {}
    for r in rows(out):
        by_k.setdefault(int(r["k"]), []).append(int(r["field_mults"]))
    ratio = sum(by_k[512]) / sum(by_k[256])
    assert 3.5 <= ratio <= 4.5


def test_bench_normal_fft_constant_decreases(capsys):
    _, out, _ = run(capsys, "bench", "--alg", "hgcd-normal-fft", "--sizes", "64..1024", "--exact-accounting", "--no-timing")
    consts = [float(r["normalized_constant"]) for r in rows(out)]
    assert len(consts) == 5
    assert all(b <= a for a, b in zip(consts, consts[1:]))


def test_bench_exact_accounting_forces_threshold_one():
    jobs = bench.plan_jobs(["hgcd-normal-fft"], [64], [0], threshold=16, exact_accounting=True)
    assert jobs[0].threshold == 1


def test_bench_errors(capsys):
    assert run(capsys, "bench", "--alg", "euclid-ref", "--sizes", "")[0] == 2
    assert run(capsys, "bench", "--alg", "euclid-ref", "--sizes", "48")[0] == 2
    assert run(capsys, "bench", "--alg", "quantum", "--sizes", "64")[0] == 2
    assert run(capsys, "bench", "--alg", "euclid-ref", "--sizes", "x")[0] == 2
    assert run(capsys, "bench", "--alg", "hgcd-normal-fft", "--sizes", "2147483648")[0] == 3
    assert run(capsys, "bench", "--alg", "hgcd-general-fft", "--sizes", "64", "--prime", "97")[0] == 3


def test_bench_output_file(tmp_path, capsys):
    target = tmp_path / "out.csv"
    code, out, _ = run(capsys, "bench", "--alg", "ntt-mul", "--sizes", "8", "--no-timing", "-o", str(target))
    assert code == 0 and out == ""
    (row,) = rows(target.read_text())
    assert row["transforms_total"] == "3" and row["field_mults"] == str(3 * 8 * 4 + 16)


# -- selftest ---------------------------------------------------------------------------------


def test_selftest_green(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and "FAIL" not in out


def test_selftest_filter(capsys):
    code, out, _ = run(capsys, "selftest", "--filter", "hgcd")
    assert code == 0
    assert "3/3 fixtures passed" in out


def test_selftest_detects_injected_fault(capsys):
    code, out, _ = run(capsys, "selftest", "--inject-fault")
    assert code == 1 and "FAIL" in out
    # the poisoned plan is discarded again
    assert run(capsys, "selftest", "--filter", "ntt")[0] == 0


def test_selftest_unknown_filter(capsys):
    assert run(capsys, "selftest", "--filter", "nothing-matches-this")[0] == 2


def test_module_entry_point(tmp_path):
    path = write(tmp_path, f"{P_LINE}\n-1\n0\n1\n\n-1\n1\n")
    proc = subprocess.run([sys.executable, "-m", "halfgcd", "gcd", path], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1:] == [str(prime_field().p - 1), "1"]
