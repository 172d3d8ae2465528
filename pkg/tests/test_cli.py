from fractions import Fraction

import pytest

from hyperwron.algebra import HomogeneousPoly, format_poly, read_poly
from hyperwron.cli import main, parse_range, parse_sos
from hyperwron.manifest import Manifest, ManifestError, dumps, load, loads, write_bundle

x1, x2 = (HomogeneousPoly.variable(2, i) for i in range(2))
y = [HomogeneousPoly.variable(3, i) for i in range(3)]


def product_manifest(tmp_path, q=None, v=(1, 1)):
    m = Manifest(type="hyperwron", p="p.poly", e=(1, 1), q="q.poly", u=(1, 1), v=tuple(map(Fraction, v)))
    return write_bundle(tmp_path, m, {"p.poly": [x1 * x2], "q.poly": [q if q is not None else x1**2 + x2**2]})


def test_manifest_round_trip():
    m = Manifest(type="hyperzout", p="p.poly", e=(Fraction(1, 2), 1), q="q.poly", u=(1, 1), v=(0, 1),
                 phi="phi.poly", mu=2, xi="xi.poly", seed=7, samples={"hyperbolicity": 5, "nonneg": 6, "psd": 7},
                 verdict={"kind": "sampled", "n": 5, "seed": 7})
    assert loads(dumps(m)) == m
    m2 = Manifest(type="interlacer", p="p.poly", e=(1, 1, 1), q="c.poly", interlacer="r.poly")
    assert loads(dumps(m2)) == m2


def test_manifest_validation():
    with pytest.raises(ManifestError):
        loads("type: hyperwron\np: a\ne: [1]\nq: b\n")  # no u, v
    with pytest.raises(ManifestError):
        loads("type: wat\np: a\ne: [1]\nq: b\n")
    with pytest.raises(ManifestError):
        loads("type: hyperwron\np: a\ne: [1/0]\nq: b\nu: [1]\nv: [1]\n")
    with pytest.raises(ManifestError):
        loads("[1, 2")


def test_verify_pass(tmp_path, capsys):
    path = product_manifest(tmp_path)
    assert main(["verify", str(path), "--samples", "300"]) == 0
    out = capsys.readouterr().out
    assert out.strip().endswith("RESULT: PASS") and "seed: 0" in out


def test_verify_tampered_identity(tmp_path, capsys):
    path = product_manifest(tmp_path, q=x1**2 - x2**2)
    assert main(["verify", str(path), "--samples", "50"]) == 1
    out = capsys.readouterr().out
    assert "identity             FAIL" in out


def test_verify_tampered_cone(tmp_path, capsys):
    path = product_manifest(tmp_path, q=HomogeneousPoly.zero(2, 2), v=(-1, 1))
    # Theta for v outside the cone; identity may or may not hold, the cone must fail
    assert main(["verify", str(path), "--samples", "50"]) == 1
    assert "cone                 FAIL" in capsys.readouterr().out


def test_verify_input_errors(tmp_path, capsys):
    assert main(["verify", str(tmp_path / "missing.yaml")]) == 2
    path = product_manifest(tmp_path)
    (tmp_path / "p.poly").write_text("poly m=2 deg=2\n1/1 [1,0]\n")
    assert main(["verify", str(path)]) == 2
    bad = tmp_path / "bad.yaml"
    bad.write_text("type: hyperwron\np: p.poly\ne: [1, 1, 1]\nq: q.poly\nu: [1, 1]\nv: [1, 1]\n")
    (tmp_path / "p.poly").write_text(format_poly(x1 * x2))
    assert main(["verify", str(bad)]) == 2


def test_verify_writes_out_file(tmp_path):
    path = product_manifest(tmp_path)
    out = tmp_path / "report.txt"
    assert main(["verify", str(path), "--samples", "10", "--out", str(out)]) == 0
    assert out.read_text().strip().endswith("RESULT: PASS")


def test_hyperzout_manifest(tmp_path, capsys):
    m = Manifest(type="hyperzout", p="p.poly", e=(1, 1), q="q.poly", u=(1, 1), v=(1, 1), mu=2, xi="xi.poly")
    eta = (x1**2 + x2**2) + 2 * x1 * (x1 + x2) + 2 * x1**2
    path = write_bundle(tmp_path, m, {"p.poly": [x1 * x2], "q.poly": [eta],
                                      "xi.poly": [HomogeneousPoly.constant(2, 1), x1]})
    assert main(["verify", str(path), "--samples", "10", "--psd-samples", "50", "--exact-psd"]) == 0
    out = capsys.readouterr().out
    assert "sos-factor           PASS" in out and "bezoutian-psd" in out


def test_interlacer_manifest(tmp_path, capsys):
    p = y[0] * y[1] * y[2]
    r = p.directional_derivative((1, 1, 1))
    cert = p.directional_derivative((1, 1, 1)) ** 2 - p * r.directional_derivative((1, 1, 1))
    m = Manifest(type="interlacer", p="p.poly", e=(1, 1, 1), q="c.poly", interlacer="r.poly")
    path = write_bundle(tmp_path, m, {"p.poly": [p], "c.poly": [cert], "r.poly": [r]})
    assert main(["verify", str(path), "--samples", "100", "--hyp-samples", "20"]) == 0
    lines = capsys.readouterr().out.splitlines()
    checks = [ln.split()[0] for ln in lines if ln.split() and ln.split()[1] in ("PASS", "SAMPLED-OK")]
    assert checks[0] == "identity" and "interlacing" in checks


def test_sos2wron_round_trips(tmp_path, capsys):
    src = tmp_path / "in.sos"
    src.write_text("sos m=2 deg=4\nweight 1\n" + format_poly(x1**2) + "weight 1\n" + format_poly(x2**2))
    assert main(["sos2wron", str(src), "--out-dir", str(tmp_path / "cert")]) == 0
    assert read_poly(tmp_path / "cert" / "q.poly") == x1**4 + x2**4
    assert main(["verify", str(tmp_path / "cert" / "manifest.yaml"), "--samples", "200"]) == 0
    loaded = load(tmp_path / "cert" / "manifest.yaml")
    assert loaded.manifest.verdict["kind"] == "certified"


def test_sos2wron_empty_and_nonsquare(tmp_path):
    src = tmp_path / "empty.sos"
    src.write_text("sos m=3 deg=2\n")
    assert main(["sos2wron", str(src), "--out-dir", str(tmp_path / "z")]) == 0
    q = read_poly(tmp_path / "z" / "q.poly")
    assert q.is_zero() and q.degree == 2
    assert main(["verify", str(tmp_path / "z" / "manifest.yaml"), "--samples", "10"]) == 0
    ns = tmp_path / "ns.sos"
    ns.write_text("sos m=1 deg=2\nweight 3\npoly m=1 deg=1\n1/1 [1]\n")
    assert main(["sos2wron", str(ns), "--out-dir", str(tmp_path / "n")]) == 2
    assert main(["sos2wron", str(ns), "--out-dir", str(tmp_path / "n"), "--four-square"]) == 0


def test_sos_parser_errors():
    with pytest.raises(ValueError):
        parse_sos("weight 1\n")
    with pytest.raises(ValueError):
        parse_sos("sos m=2 deg=3\n")
    assert len(parse_sos("sos m=1 deg=2  # c\nweight 1/4\npoly m=1 deg=1\n2 [1]\n")) == 1


def test_gate_command(capsys):
    assert main(["gate", "--m-range", "4..4", "--y-range", "4..4", "--tsv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1].split("\t") == ["4", "8", "165", "(3,2)", "164", "1", "yes", "TRUE"]
    assert main(["gate", "--m-range", "5..3"]) == 2
    assert parse_range("7") == range(7, 8)


def test_gate_bezoutian_first_true(capsys):
    assert main(["gate", "--bezoutian", "--m-range", "3..40", "--y-range", "2..2", "--tsv"]) == 0
    rows = [ln.split("\t") for ln in capsys.readouterr().out.splitlines()[1:]]
    first = next(int(r[0]) for r in rows if r[-1] == "TRUE")
    assert first <= 38


def test_hyperbolic_check_command(tmp_path, capsys):
    f = tmp_path / "sq.poly"
    f.write_text(format_poly(x1**2 + x2**2))
    assert main(["hyperbolic", "check", str(f), "--e", "1,0"]) == 1
    assert "refuted(not-real-rooted, x=(0, 1))" in capsys.readouterr().out
    g = tmp_path / "prod.poly"
    g.write_text(format_poly(x1 * x2))
    assert main(["hyperbolic", "check", str(g), "--e", "1,1"]) == 0


def test_bezout_command(tmp_path, capsys):
    g = tmp_path / "prod.poly"
    g.write_text(format_poly(x1 * x2))
    assert main(["bezout", str(g), "--u", "1,1", "--v", "1,1"]) == 0
    out = capsys.readouterr().out
    assert "# B[0,0]\npoly m=2 deg=2\n1/1 [2,0]\n1/1 [0,2]" in out


def test_example_restriction(capsys):
    assert main(["example", "--check", "restriction"]) == 0
    assert "restriction          PASS" in capsys.readouterr().out


def test_example_escalation_exit_code(monkeypatch):
    import hyperwron.cli as cli
    from hyperwron.algebra import ModularEscalationError

    def boom(*a, **k):
        raise ModularEscalationError({3: 1, 5: 2, 7: 3})

    monkeypatch.setattr(cli, "example_report", boom)
    assert main(["example", "--check", "extremal"]) == 3
