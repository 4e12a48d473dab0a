import csv
import importlib
import io

import pytest

from threegap.cf import PeriodicSource, SurdSource, rule_source
from threegap.cli import (
    CSV_HEADER,
    EXIT_DISAGREE,
    EXIT_PRECISION,
    EXIT_USAGE,
    AlphaSpec,
    ParseError,
    main,
    render_alpha,
)
from threegap.exact import surd_normalize

PHI = "surd:(1+1*sqrt(5))/2"


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_expand_phi():
    code, text = run(["expand", PHI, "--terms", "3"])
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0
    assert [r["a"] for r in rows] == ["1", "1", "1", "1"]
    assert [r["q"] for r in rows] == ["1", "1", "2", "3"]
    assert rows[0]["eta"] == "0.618033988750"
    assert {r["eta_err"] for r in rows} == {"0"}


def test_expand_rational_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["expand", "surd:(0+1*sqrt(4))/1"])
    assert exc.value.code == EXIT_USAGE
    assert "rational value" in capsys.readouterr().err


def test_expand_periodic_cf():
    code, text = run(["expand", "cf:[0;(1,2)]", "--terms", "4"])
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["a"] for r in rows] == ["0", "1", "2", "1", "2"]
    assert all(float(r["eta_err"]) < 1e-30 for r in rows)


def test_gaps_phi_m3():
    code, text = run(["gaps", PHI, "--m", "3"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "m=3 k=2 r=1 s=0"
    assert lines[1].split() == ["SHORT", "length=0.236067977500", "count=2"]
    assert lines[2].split() == ["MID", "length=0.145898033750", "count=1"]
    assert lines[3].split() == ["LONG", "length=0.381966011250", "count=1"]
    assert "epsilon=1" in lines[5] and "branch=r=a" in lines[5]


def test_gaps_degenerate_long_row():
    _, text = run(["gaps", PHI, "--m", "1"])
    long_row = [l for l in text.splitlines() if l.startswith("LONG")][0]
    assert "degenerate (q_k = s+1)" in long_row


def test_gaps_m_zero_is_usage_error():
    code, _ = run(["gaps", PHI, "--m", "0"])
    assert code == EXIT_USAGE


def test_scan_phi_csv(tmp_path):
    path = tmp_path / "phi.csv"
    code, summary = run(["scan", PHI, "--max-m", "10000", "--csv", str(path)])
    assert code == 0
    assert "sup_ratio=2.61803398875" in summary
    assert "certified=True" in summary and "bound_B_plus_2=3" in summary
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == CSV_HEADER
    assert len(rows) == 10001
    assert [r[0] for r in rows[1:4]] == ["1", "2", "3"]
    assert {r[5] for r in rows[1:]} <= {"r=a", "r<a"}


def test_scan_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        run(["scan", "cf:[0;(1,2)]", "--max-m", "200", "--csv", str(p)])
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()


def test_scan_sqrt2_below_four(tmp_path):
    path = tmp_path / "s.csv"
    run(["scan", "surd:(0+1*sqrt(2))/1", "--max-m", "100", "--csv", str(path)])
    rows = list(csv.DictReader(open(path)))
    assert len(rows) == 100
    assert max(float(r["ratio"]) for r in rows) < 4


def test_scan_rule_convergents_only(tmp_path):
    path = tmp_path / "n.csv"
    code, summary = run(["scan", "rule:natural", "--convergents-only", "--max-k", "15", "--csv", str(path)])
    rows = list(csv.DictReader(open(path)))
    assert code == 0 and len(rows) == 16
    ratios = [float(r["ratio"]) for r in rows]
    assert ratios == sorted(ratios) and ratios[-1] > 17
    assert all(float(r["ratio_err"]) < 1e-9 for r in rows)
    assert "certified=False" in summary


def test_scan_requires_range():
    code, _ = run(["scan", PHI])
    assert code == EXIT_USAGE


def test_verify_exit_codes():
    code, text = run(["verify", PHI, "--max-m", "300"])
    assert code == 0 and "0 disagreement" in text
    code, text = run(["verify", "cf:[0;(1,2)]", "--max-m", "100"])
    assert code == 0 and "interval mode" in text


def test_verify_precision_exhausted(monkeypatch):
    import threegap.cli as cli
    from threegap.errors import PrecisionExhausted

    def boom(*a, **k):
        raise PrecisionExhausted("cap reached")
    monkeypatch.setattr(cli, "verify", boom)
    code, _ = run(["verify", PHI, "--max-m", "5"])
    assert code == EXIT_PRECISION


def test_verify_disagreement_exit(monkeypatch):
    v = importlib.import_module("threegap.verify")

    def wrong(m, table, sample):
        return f"m={m}: planted" if m == 7 else None
    monkeypatch.setattr(v, "_check_exact", wrong)
    code, text = run(["verify", PHI, "--max-m", "10"])
    assert code == EXIT_DISAGREE
    assert "first divergence: m=7: planted" in text


@pytest.mark.parametrize("text", [
    "surd:(1+1*sqrt(5))/2",
    "surd:(1-1*sqrt(5))/2",
    "surd:(0+2*sqrt(8))/4",
    "surd:( -3 + 7*sqrt(11) ) / -5",
    "cf:[0;(1,2)]",
    "cf:[(1)]",
    "cf:[-2;3,4,(5,6)]",
    "rule:natural",
])
def test_alpha_round_trip(text):
    src = AlphaSpec.parse(text).source()
    rendered = render_alpha(src)
    again = AlphaSpec.parse(rendered).source()
    assert render_alpha(again) == rendered
    assert again.terms(12) == src.terms(12)


def test_render_canonical_forms():
    assert render_alpha(SurdSource(surd_normalize(0, 2, 8, 4))) == "surd:(0+1*sqrt(2))/1"
    assert render_alpha(PeriodicSource([0], [1, 2])) == "cf:[0;(1,2)]"
    assert render_alpha(rule_source("natural")) == "rule:natural"


@pytest.mark.parametrize("text, token", [
    ("surd:(1+1*sqrt(5)/2", "'/'"),
    ("surd:(1*1*sqrt(5))/2", "'*'"),
    ("cf:[0;1,x]", "'x'"),
    ("cf:[0;(1,2)", "end of input"),
    ("rule:primes", "primes"),
    ("poly:[1]", "poly"),
])
def test_parse_errors_name_token(text, token):
    with pytest.raises(ParseError) as exc:
        AlphaSpec.parse(text)
    assert token in str(exc.value)
