"""Command-line interface.

Exit codes: 0 PASS, 1 verification FAIL, 2 input error, 3 modular
ranks disagreed (rerun with ``--mode exact``).
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algebra import (
    HomogeneousPoly,
    ModularEscalationError,
    PolyFormatError,
    format_poly,
    is_real_rooted,
    parse_poly,
    read_poly,
    restrict_line,
)
from .bezoutian import mu2_hyperzout_to_sos, parameterized_bezoutian, verify_hyperzout
from .gate import format_gate_table, gate_table
from .hyperbolic import NotHyperbolicError, Refuted, check_hyperbolic
from .manifest import Manifest, ManifestError, read_manifest, resolve, verdict_to_dict, write_bundle
from .quaternion import example_report
from .report import FAIL, INFO, PASS, Check, Report
from .wronskian import (
    NonSquareWeightError,
    WeightedSOS,
    build_hyperwron,
    interlacer_certificate,
    sos_to_hyperwron,
    verify_hyperwron,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_ESCALATE = 0, 1, 2, 3


class InputError(ValueError):
    pass


def parse_vector(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(x.strip()) for x in text.split(",") if x.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational vector {text!r}: {exc}") from exc


def parse_range(text: str) -> range:
    m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", text.strip())
    if not m:
        raise InputError(f"bad range {text!r}; use A..B or A")
    lo = int(m.group(1))
    hi = int(m.group(2) or lo)
    if hi < lo:
        raise InputError(f"empty range {text!r}")
    return range(lo, hi + 1)


# -- sum-of-squares input files --------------------------------------------------------------

_SOS_HEADER = re.compile(r"^sos\s+m=(\d+)\s+deg=(\d+)$")
_WEIGHT = re.compile(r"^weight\s+(\S+)$")


def parse_sos(text: str) -> WeightedSOS:
    """``sos m=<m> deg=<2s>`` followed by ``weight w`` lines, each before one ``poly`` block."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not _SOS_HEADER.match(lines[0]):
        raise InputError("SOS file must start with 'sos m=<int> deg=<int>'")
    head = _SOS_HEADER.match(lines[0])
    m, deg = int(head.group(1)), int(head.group(2))
    if deg % 2:
        raise InputError("a sum of squares has even degree")
    chunks: list[tuple[Fraction, list[str]]] = []
    for ln in lines[1:]:
        w = _WEIGHT.match(ln)
        if w:
            try:
                chunks.append((Fraction(w.group(1)), []))
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"bad weight {w.group(1)!r}") from exc
        elif not chunks:
            raise InputError("expected a 'weight' line before the first square")
        else:
            chunks[-1][1].append(ln)
    terms = []
    for w, body in chunks:
        g = parse_poly("\n".join(body))
        if g.nvars != m:
            raise InputError(f"square in {g.nvars} variables, header says m={m}")
        terms.append((w, g))
    try:
        return WeightedSOS.of(terms, nvars=m, half_degree=deg // 2)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# -- commands ---------------------------------------------------------------------------


def _emit(report: Report, out: str | None) -> int:
    text = report.render()
    print(text)
    if out:
        Path(out).write_text(text + "\n")
    return EXIT_PASS if report.passed else EXIT_FAIL


def verify_loaded(loaded, exact_psd: bool = False) -> Report:
    m = loaded.manifest
    s = m.samples
    if m.type == "hyperwron":
        report = verify_hyperwron(loaded.witness, loaded.q, samples=s["nonneg"], seed=m.seed)
    elif m.type == "hyperzout":
        report = verify_hyperzout(loaded.witness, loaded.q, psd_samples=s["psd"], seed=m.seed)
        if exact_psd:
            if loaded.witness.mu == 2:
                try:
                    sos = mu2_hyperzout_to_sos(loaded.witness)
                    ok = sos.expand() == loaded.q
                    report.add("sos-factor", PASS if ok else FAIL, f"{len(sos)} weighted squares")
                except (ValueError, NotHyperbolicError) as exc:
                    report.add("sos-factor", FAIL, str(exc))
            else:
                report.add("sos-factor", INFO, "exact factorization is only available for mu = 2")
    else:
        cert, report = interlacer_certificate(
            loaded.pair, loaded.interlacer, loaded.phi, samples=s["hyperbolicity"], seed=m.seed,
            nonneg_samples=s["nonneg"],
        )
        report.checks.insert(0, _identity_check(cert, loaded.q))
    report.meta["hyperbolicity-samples"] = s["hyperbolicity"]
    return report


def _identity_check(cert: HomogeneousPoly, q: HomogeneousPoly) -> Check:
    if cert == q:
        return Check("identity", PASS, f"degree {cert.degree}, {len(cert)} terms")
    return Check("identity", FAIL, "the certificate differs from the claimed form")


def cmd_verify(args) -> int:
    path = Path(args.manifest)
    m = read_manifest(path).with_samples(nonneg=args.samples, psd=args.psd_samples, hyperbolicity=args.hyp_samples)
    if args.seed is not None:
        m = replace(m, seed=args.seed)
    return _emit(verify_loaded(resolve(m, path.parent), exact_psd=args.exact_psd), args.out)


def cmd_sos2wron(args) -> int:
    sos = parse_sos(Path(args.input).read_text())
    try:
        w = sos_to_hyperwron(sos, four_square=args.four_square)
    except NonSquareWeightError as exc:
        raise InputError(f"non-square weights {', '.join(map(str, exc.weights))}; pass --four-square to split them") from exc
    q = build_hyperwron(w)
    m = Manifest(
        type="hyperwron", p="p.poly", e=w.pair.e, q="q.poly", u=w.u, v=w.v, phi="phi.poly",
        seed=args.seed, verdict=verdict_to_dict(w.pair.verdict),
    )
    path = write_bundle(args.out_dir, m, {"p.poly": [w.pair.p], "phi.poly": list(w.map), "q.poly": [q]})
    print(f"wrote {path}")
    if q != sos.expand():
        print("internal error: the hyperwron does not reproduce the sum of squares", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_PASS


def cmd_gate(args) -> int:
    t0 = time.perf_counter()
    reports = gate_table(parse_range(args.m_range), parse_range(args.y_range), bezoutian=args.bezoutian)
    print(format_gate_table(reports, tsv=args.tsv))
    if not args.tsv:
        print(f"# {'hyperzout' if args.bezoutian else 'hyperwron'} gate, {len(reports)} cells, "
              f"{time.perf_counter() - t0:.3f} s")
    return EXIT_PASS


def cmd_bezout(args) -> int:
    p = read_poly(args.poly)
    e = parse_vector(args.e) if args.e else parse_vector(args.u)
    pair = check_hyperbolic(p, e, samples=args.samples, seed=args.seed)
    u, v = parse_vector(args.u), parse_vector(args.v)
    if len(u) != p.nvars or len(v) != p.nvars:
        raise InputError("u and v need one coordinate per variable of p")
    print(f"# hyperbolicity: {pair.verdict}")
    B = parameterized_bezoutian(pair, u, v)
    for j, row in enumerate(B):
        for l, entry in enumerate(row):
            if l < j:
                continue
            print(f"# B[{j},{l}]")
            print(format_poly(entry), end="")
    return EXIT_FAIL if pair.refuted else EXIT_PASS


def cmd_hyperbolic_check(args) -> int:
    p = read_poly(args.poly)
    e = parse_vector(args.e)
    pair = check_hyperbolic(p, e, strategy=args.strategy, samples=args.samples, seed=args.seed)
    report = Report("hyperbolicity", meta={"seed": args.seed, "samples": args.samples, "strategy": args.strategy})
    v = pair.verdict
    if isinstance(v, Refuted):
        detail = str(v)
        if v.reason == "not-real-rooted":
            confirmed = not is_real_rooted(restrict_line(p, v.witness, pair.e))
            detail += f"; p(t e - x) real-rooted: {not confirmed}"
        report.add("hyperbolicity", FAIL, detail)
    else:
        report.add("hyperbolicity", PASS, str(v) + (f" [{pair.family}]" if pair.family else ""))
    return _emit(report, args.out)


def cmd_example(args) -> int:
    report = example_report(args.check, mode=args.mode, seed=args.seed)
    return _emit(report, args.out)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hyperwron", description="Hyperbolic certificates of nonnegativity.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify a certificate manifest")
    v.add_argument("manifest")
    v.add_argument("--samples", type=int, help="nonnegativity sample points")
    v.add_argument("--psd-samples", type=int, help="Bezoutian PSD sample points")
    v.add_argument("--hyp-samples", type=int, help="hyperbolicity sample directions")
    v.add_argument("--seed", type=int)
    v.add_argument("--exact-psd", action="store_true",
                   help="for mu = 2 hyperzouts, also factor B into an exact sum of squares")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sos2wron", help="turn a weighted sum of squares into a hyperwron manifest")
    s.add_argument("input")
    s.add_argument("--out-dir", required=True)
    s.add_argument("--four-square", action="store_true", help="split non-square weights into four squares")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_sos2wron)

    g = sub.add_parser("gate", help="dimension-count gate table")
    g.add_argument("--m-range", default="3..12")
    g.add_argument("--y-range", default="2..8")
    g.add_argument("--bezoutian", action="store_true")
    g.add_argument("--tsv", action="store_true")
    g.add_argument("--seed", type=int, default=0, help="accepted for uniformity; the table is deterministic")
    g.set_defaults(func=cmd_gate)

    b = sub.add_parser("bezout", help="print the parameterized Bezoutian of a hyperbolic form")
    b.add_argument("poly")
    b.add_argument("--u", required=True)
    b.add_argument("--v", required=True)
    b.add_argument("--e", help="hyperbolic direction (default: u)")
    b.add_argument("--samples", type=int, default=200)
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=cmd_bezout)

    h = sub.add_parser("hyperbolic", help="hyperbolicity tools")
    hsub = h.add_subparsers(dest="hcommand", required=True)
    hc = hsub.add_parser("check", help="certify, sample or refute hyperbolicity")
    hc.add_argument("poly")
    hc.add_argument("--e", required=True)
    hc.add_argument("--strategy", default="auto", choices=["auto", "quadratic", "known-family", "sampled"])
    hc.add_argument("--samples", type=int, default=200)
    hc.add_argument("--seed", type=int, default=0)
    hc.add_argument("--out")
    hc.set_defaults(func=cmd_hyperbolic_check)

    x = sub.add_parser("example", help="checks on the quaternionic quartic det_M(X X*)")
    x.add_argument("--check", default="all", choices=["invariance", "restriction", "rank-one", "nullspace-U",
                                                      "extremal", "all"])
    x.add_argument("--mode", default="modular", choices=["modular", "exact"])
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--out")
    x.set_defaults(func=cmd_example)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ModularEscalationError as exc:
        print(f"error: {exc}; rerun with --mode exact", file=sys.stderr)
        return EXIT_ESCALATE
    except (InputError, ManifestError, PolyFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
