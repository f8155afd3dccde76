"""Command-line entry point.

Exit status is 0 when every executed check passes, 1 when any fails and 2
on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional

from . import congr, dseq, padic, partitions, suites, ubasis
from .errors import Tspp5Error
from .etaq import named_series
from .report import VerificationReport, summary_table


class ConfigError(Exception):
    pass


def parse_mod(text: Optional[str]) -> Optional[int]:
    """Accept ``5^k`` or a plain integer."""
    if text is None:
        return None
    try:
        if "^" in text:
            base, exp = text.split("^", 1)
            value = int(base) ** int(exp)
        else:
            value = int(text)
    except ValueError:
        raise ConfigError(f"cannot parse modulus {text!r}") from None
    if value < 2:
        raise ConfigError("modulus must be at least 2")
    return value


def _five_exponent(mod: int) -> int:
    e = 0
    while mod % 5 == 0:
        mod //= 5
        e += 1
    if mod != 1 or e == 0:
        raise ConfigError("congruence moduli must be powers of 5")
    return e


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _render_values(values: List[int], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "value"])
        for n, v in enumerate(values):
            w.writerow([n, v])
        return buf.getvalue()
    if fmt == "table":
        return "\n".join(f"{n:>8}  {v}" for n, v in enumerate(values))
    return json.dumps([str(v) for v in values])


def _render_reports(reports: List[VerificationReport], fmt: str) -> str:
    if fmt == "table":
        return summary_table(reports)
    return "\n".join(r.to_line() for r in reports)


def _finish(reports: List[VerificationReport], args) -> int:
    _emit(_render_reports(reports, args.format), args.out)
    if args.format != "table" and args.out is None and sys.stderr.isatty():
        print(summary_table(reports), file=sys.stderr)
    return 0 if all(r.passed for r in reports) else 1


# -- subcommands -----------------------------------------------------------


def cmd_compute(args) -> int:
    mod = parse_mod(args.mod)
    if args.what == "s":
        values = list(partitions.s_series(args.upto, mod).values)
    elif args.what == "g":
        values = list(partitions.g_series(args.upto, mod).values)
    else:
        f = named_series(args.name, args.prec, mod)
        _emit(json.dumps(f.to_json()), args.out)
        return 0
    _emit(_render_values(values, args.format), args.out)
    return 0


def cmd_matrices(args) -> int:
    if args.action == "regen":
        if args.rows < 5:
            raise ConfigError("--rows must be at least 5")
        A, B = ubasis.compute_base_rows(args.prec)
        mats = {"A": A.extended(args.rows), "B": B.extended(args.rows)}
        kinds = ["A", "B"] if args.kind == "both" else [args.kind]
        payload = [mats[k].to_json() for k in kinds]
        _emit(json.dumps(payload[0] if len(payload) == 1 else payload), args.out)
        return 0
    # verify-appendix
    PA, PB = ubasis.appendix_rows()
    if args.input:
        with open(args.input) as fh:
            data = json.load(fh)
        found = {m.kind: m for m in map(ubasis.CoeffMatrix.from_json, data if isinstance(data, list) else [data])}
        report = VerificationReport("appendix rows vs file", {"file": args.input})
        for kind, P in (("A", PA), ("B", PB)):
            if kind not in found:
                continue
            for i in range(1, 6):
                report.checked += 1
                if found[kind].row(i) != P.row(i):
                    report.fail((kind, i), "row differs")
        if not report.checked:
            report.fail("file", "no A or B matrix found")
    else:
        report = suites.check_appendix(args.prec)
    return _finish([report], args)


def cmd_dseq(args) -> int:
    if args.alpha < 1:
        raise ConfigError("--alpha must be positive")
    if args.via == "t":
        if args.alpha % 2 == 0:
            raise ConfigError("--via t only produces odd alpha")
        d = dseq.d_sequence_via_t(args.alpha)
    else:
        d = dseq.d_sequence(args.alpha)
    _emit(json.dumps(d.to_json()), args.out)
    return 0


def cmd_bounds(args) -> int:
    A, B = ubasis.appendix_rows()
    if args.which == "a":
        report = padic.check_bound_a(A.extended(args.imax), args.imax, args.jmax)
    elif args.which == "b":
        report = padic.check_bound_b(B.extended(args.imax), args.imax, args.jmax)
    elif args.which == "t":
        A = A.extended(args.imax)
        B = B.extended(5 * args.imax + 1)
        report = padic.check_bound_t(ubasis.t_matrix(A, B, args.imax), A, args.imax, args.jmax)
    else:
        top = 2 * args.imax - 1 if args.imax > 0 else 5
        ds = [dseq.d_sequence(a) for a in range(1, min(top, 5) + 1, 2)]
        report = padic.check_bound_d(ds, args.jmax or None)
    return _finish([report], args)


def cmd_verify(args) -> int:
    if args.what == "all":
        reports = suites.run_profile(args.profile)
    elif args.what == "claim":
        mod = parse_mod(args.mod)
        claim = congr.CongruenceClaim(args.target.upper(), _five_exponent(mod), args.stride, args.offset, args.nmax)
        reports = [congr.verify_claim(claim)]
    elif args.what == "thd":
        reports = [dseq.verify_thd(args.alpha, args.prec)]
    elif args.what == "thgd":
        reports = [dseq.verify_thgd(args.alpha, args.prec)]
    elif args.what == "theta":
        reports = [congr.verify_phi_lemmas(args.prec), congr.verify_x_phi_mod5(args.prec), congr.verify_phi_gaps(args.prec)]
    else:
        reports = [congr.main_theorem_reduction(args.alpha, args.nmax)]
    return _finish(reports, args)


def cmd_report(args) -> int:
    reports = []
    with open(args.file) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            d = json.loads(line)
            r = VerificationReport(d["name"], d.get("params", {}), [tuple(w) for w in d.get("witnesses", [])],
                                   d.get("elapsedMillis", 0), d.get("details", {}), d.get("checked", 0))
            reports.append(r)
    if args.format == "json":
        _emit(_render_reports(reports, "json"), args.out)
    else:
        _emit(summary_table(reports), args.out)
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to FILE instead of stdout")
    common.add_argument("--format", choices=["json", "csv", "table"], default="json")

    p = argparse.ArgumentParser(prog="tspp5", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="counting tables and named series")
    csub = c.add_subparsers(dest="what", required=True)
    for what in ("s", "g"):
        cc = csub.add_parser(what, parents=[common])
        cc.add_argument("--upto", type=int, required=True)
        cc.add_argument("--mod")
    cs = csub.add_parser("series", parents=[common])
    cs.add_argument("name", choices=["xi", "X", "g", "phi-neg", "M1", "M2"])
    cs.add_argument("--prec", type=int, default=50)
    cs.add_argument("--mod")
    c.set_defaults(func=cmd_compute)

    m = sub.add_parser("matrices", help="the a/b matrices")
    msub = m.add_subparsers(dest="action", required=True)
    mr = msub.add_parser("regen", parents=[common])
    mr.add_argument("--rows", type=int, default=5)
    mr.add_argument("--prec", type=int, default=ubasis.DEFAULT_PREC)
    mr.add_argument("--kind", choices=["A", "B", "both"], default="both")
    mv = msub.add_parser("verify-appendix", parents=[common])
    mv.add_argument("--prec", type=int, default=ubasis.DEFAULT_PREC)
    mv.add_argument("--in", dest="input", help="check a file written by 'matrices regen'")
    m.set_defaults(func=cmd_matrices)

    d = sub.add_parser("dseq", parents=[common], help="d-sequences")
    d.add_argument("--alpha", type=int, required=True)
    d.add_argument("--via", choices=["t", "ab"], default="ab")
    d.set_defaults(func=cmd_dseq)

    b = sub.add_parser("bounds", parents=[common], help="5-adic floor bounds")
    b.add_argument("--which", choices=["a", "b", "t", "d"], required=True)
    b.add_argument("--imax", type=int, default=12)
    b.add_argument("--jmax", type=int, default=60)
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", help="verification suites")
    vsub = v.add_subparsers(dest="what", required=True)
    va = vsub.add_parser("all", parents=[common])
    va.add_argument("--profile", choices=sorted(suites.PROFILES), default="quick")
    vc = vsub.add_parser("claim", parents=[common])
    vc.add_argument("--target", choices=["s", "g"], required=True)
    vc.add_argument("--mod", required=True)
    vc.add_argument("--stride", type=int, required=True)
    vc.add_argument("--offset", type=int, required=True)
    vc.add_argument("--nmax", type=int, required=True)
    for name in ("thd", "thgd"):
        vt = vsub.add_parser(name, parents=[common])
        vt.add_argument("--alpha", type=int, required=True)
        vt.add_argument("--prec", type=int, required=True)
    vth = vsub.add_parser("theta", parents=[common])
    vth.add_argument("--prec", type=int, default=1000)
    vr = vsub.add_parser("reduction", parents=[common])
    vr.add_argument("--alpha", type=int, default=1)
    vr.add_argument("--nmax", type=int, default=600)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", help="render a JSON-lines report file")
    r.add_argument("file")
    r.add_argument("--out")
    r.add_argument("--format", choices=["json", "table"], default="table")
    r.set_defaults(func=cmd_report)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, Tspp5Error, ValueError) as exc:
        print(f"tspp5: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
