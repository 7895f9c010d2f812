import json
import subprocess
import sys

import pytest

from zonalfn import cli
from zonalfn.cli import (
    EXIT_NOCONV,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFY,
    HEADER,
    OutputRecord,
    emit,
    format_records,
    parse_records,
    run,
)
from zonalfn.zonal import HORN13_TABLE

HEADER_LINE = "p,q,sigma_re,sigma_im,eps,alpha,method,value_re,value_im,abs_err_est,work\n"


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def sample_record(**kw):
    base = dict(
        p=4, q=3, sigma_re=-2.5, sigma_im=1.3, eps=0, alpha=0.1 + 0.2, method="horn13",
        value_re=1 / 3, value_im=-2e-300, abs_err_est=5e-324, work=17,
    )
    base.update(kw)
    return OutputRecord(**base)


# -- emit -------------------------------------------------------------------


def test_header_constant():
    assert ",".join(HEADER) + "\n" == HEADER_LINE


def test_emit_empty_csv(capsys):
    emit([], "csv")
    assert capsys.readouterr().out == HEADER_LINE


def test_csv_round_trip():
    rec = sample_record()
    text = format_records([rec])
    assert text.startswith(HEADER_LINE)
    assert parse_records(text) == [rec]
    assert "0.30000000000000004" in text


def test_json_two_records():
    recs = [sample_record(), sample_record(alpha=2.0, method="integral", work=4096)]
    text = format_records(recs, "json")
    rows = json.loads(text)
    assert [list(r) for r in rows] == [list(HEADER)] * 2
    assert [r["alpha"] for r in rows] == [0.30000000000000004, 2.0]
    assert parse_records(text, "json") == recs


def test_emit_to_file(tmp_path):
    path = tmp_path / "out.csv"
    emit([sample_record()], "csv", str(path))
    assert path.read_bytes() == format_records([sample_record()]).encode()
    with pytest.raises(ValueError):
        format_records([], "xml")


# -- commands ---------------------------------------------------------------


def test_eval_alpha_zero(capsys):
    code, out, _ = call(capsys, "eval", "--p", "3", "--q", "3", "--rho", "1.3", "--alpha", "0", "--method", "horn13")
    assert code == EXIT_OK
    (rec,) = parse_records(out)
    assert abs(rec.value_re - 1) <= 1e-12 and abs(rec.value_im) <= 1e-12
    assert (rec.p, rec.q, rec.sigma_re, rec.sigma_im, rec.method) == (3, 3, -2.0, 1.3, "horn13")


def test_eval_explicit_sigma_and_original_order(capsys):
    code, out, _ = call(capsys, "eval", "--p", "2", "--q", "5", "--sigma-re", "-1", "--sigma-im", "0.5", "--alpha", "0.4", "--format", "json")
    assert code == EXIT_OK
    (rec,) = parse_records(out, "json")
    assert (rec.p, rec.q, rec.sigma_re, rec.sigma_im, rec.method) == (2, 5, -1.0, 0.5, "horn13")


def test_eval_odd_eps(capsys):
    code, _, err = call(capsys, "eval", "--p", "3", "--q", "3", "--rho", "1.3", "--alpha", "0.8", "--eps", "1")
    assert code == EXIT_USAGE
    assert "EpsOdd" in err


def test_eval_nonconvergence(capsys):
    code, out, err = call(capsys, "eval", "--p", "4", "--q", "3", "--rho", "1", "--alpha", "3", "--method", "horn13", "--max-shells", "10")
    assert code == EXIT_NOCONV and out == ""
    assert "ConvergenceError" in err
    code, _, err = call(
        capsys, "eval", "--p", "3", "--q", "3", "--rho", "40", "--alpha", "3", "--method", "integral",
        "--quad-base-order", "8", "--quad-max-order", "16",
    )
    assert code == EXIT_NOCONV
    assert "QuadratureNotConverged" in err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["eval", "--p", "3", "--q", "3", "--alpha", "0.5"],
        ["eval", "--p", "3", "--q", "3", "--rho", "1", "--sigma-re", "1", "--alpha", "0.5"],
        ["eval", "--p", "3", "--q", "3", "--rho", "1", "--alpha", "0.5", "--method", "bogus"],
        ["eval", "--p", "3", "--q", "3", "--rho", "1", "--alpha", "0.5", "--tol", "0"],
        ["eval", "--p", "1", "--q", "1", "--rho", "1", "--alpha", "0.5"],
        ["eval", "--p", "3", "--q", "3", "--rho", "1", "--alpha", "0.5", "--quad-base-order", "1"],
        ["eval", "--p", "3", "--q", "3", "--rho", "1", "--alpha", "0.5", "--method", "closed_q1"],
        ["eval", "--p", "3", "--q", "3", "--rho", "x", "--alpha", "0.5"],
        ["verify", "--p", "3", "--q", "3", "--rho", "1", "--alpha-list", "0.1,abc"],
        ["verify", "--p", "3", "--q", "3", "--rho", "1", "--alpha-list", ","],
        ["table", "--p", "3", "--q", "2", "--rho-list", "0", "--alpha-min", "0", "--alpha-max", "1", "--alpha-steps", "0"],
        ["describe", "--p", "3", "--q", "2", "--form", "15"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == EXIT_USAGE
    assert out == "" and "error" in err


def test_output_io_error(capsys, tmp_path):
    target = str(tmp_path / "missing" / "out.csv")
    code, _, err = call(capsys, "eval", "--p", "3", "--q", "3", "--rho", "1", "--alpha", "0.5", "--output", target)
    assert code == EXIT_USAGE


def test_help(capsys):
    assert run(["--help"]) == 0


def test_table(capsys):
    argv = ["table", "--p", "3", "--q", "2", "--rho-list", "0,0.7", "--alpha-min", "0", "--alpha-max", "3", "--alpha-steps", "4"]
    code, out, _ = call(capsys, *argv)
    assert code == EXIT_OK
    recs = parse_records(out)
    assert [r.alpha for r in recs] == [0.0, 1.0, 2.0, 3.0] * 2
    assert [r.sigma_im for r in recs] == [0.0] * 4 + [0.7] * 4
    assert recs[-1].method == "integral" and recs[0].method == "horn13"
    assert call(capsys, *argv)[1] == out


def test_verify_pass(capsys):
    argv = ["verify", "--p", "4", "--q", "3", "--rho", "1.3", "--alpha-list", "0.25,0.8,1.5"]
    code, out, err = call(capsys, *argv)
    assert code == EXIT_OK
    assert out.startswith(HEADER_LINE)
    recs = parse_records(out)
    assert len(recs) == 12
    assert {r.method for r in recs} == {"integral", "series12", "horn13", "horn14"}
    assert err.rstrip().endswith("PASS")
    assert call(capsys, *argv)[1] == out


def test_verify_fault_injected(capsys, monkeypatch):
    rows = list(HORN13_TABLE["rows"])
    side, w, (c0, cs, cp, cq) = rows[0]
    rows[0] = (side, w, (c0 + 0.5, cs, cp, cq))
    monkeypatch.setitem(HORN13_TABLE, "rows", tuple(rows))
    code, out, err = call(capsys, "verify", "--p", "4", "--q", "3", "--rho", "1.3", "--alpha-list", "0.25,0.8,1.5")
    assert code == EXIT_VERIFY
    assert out.startswith(HEADER_LINE)
    assert "FAIL (suspect: horn13)" in err


def test_describe(capsys, tmp_path):
    code, out, _ = call(capsys, "describe", "--p", "4", "--q", "3", "--form", "13")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "Z^(4,3)_sigma(alpha) = cosh(alpha)^-1 * H(tanh^2 alpha, tanh^2 alpha)"
    assert lines[2] == "4F2  (r = 2)"
    assert "  01 : 3/2 + sigma/2" in lines
    code, out, _ = call(capsys, "describe", "--p", "3", "--q", "4", "--form", "14")
    assert "[evaluated as SO(4,3)]" in out.splitlines()[0]
    path = tmp_path / "d.txt"
    assert call(capsys, "describe", "--p", "4", "--q", "3", "--form", "14", "--output", str(path))[1] == ""
    assert path.read_text().splitlines()[2] == "4F2  (r = 2)"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "zonalfn", "eval", "--p", "3", "--q", "3", "--rho", "1.3", "--alpha", "0.8", "--eps", "1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == EXIT_USAGE
    proc = subprocess.run(
        [sys.executable, "-m", "zonalfn", "eval", "--p", "3", "--q", "3", "--rho", "1.3", "--alpha", "0.8"],
        capture_output=True, text=True,
    )
    assert proc.returncode == EXIT_OK and proc.stdout.startswith(HEADER_LINE)
