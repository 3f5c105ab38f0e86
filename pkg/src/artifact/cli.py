"""Command line: bounds, coefficient tables, verification suites, families, trees, Maroni data.

Exit status is 2 for bad flags or inputs, 1 when a verification assertion
fails and 0 otherwise.  Rationals are printed as "p/q" in both formats.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional

from . import boundary as bd
from . import maroni as mr
from . import slopes as sl
from .suites import SUITES, run_suite
from .symkernel import MPoly, Quotient, fmt_rational
from .trees import parse_tree_file


class UsageError(Exception):
    pass


def text(v) -> Optional[str]:
    if v is None:
        return None
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, Fraction)):
        return fmt_rational(v)
    if isinstance(v, Quotient) and v.is_constant():
        return fmt_rational(v.value())
    if isinstance(v, MPoly) and v.is_constant():
        return fmt_rational(v.constant_value())
    return str(v)


def emit(rows: List[Dict[str, object]], fmt: str, out) -> None:
    """Rows share their keys; TSV gets one header line."""
    rows = [{k: text(v) for k, v in r.items()} for r in rows]
    if fmt == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
        return
    if not rows:
        return
    keys = list(rows[0])
    out.write("\t".join(keys) + "\n")
    for r in rows:
        out.write("\t".join("" if r.get(k) is None else r[k] for k in keys) + "\n")


def _parse_params(raw: str) -> Dict[str, int]:
    params = {}
    for item in filter(None, (raw or "").split(",")):
        if "=" not in item:
            raise UsageError(f"bad --param entry {item!r}; expected key=value")
        k, v = item.split("=", 1)
        try:
            params[k.strip()] = int(v)
        except ValueError:
            raise UsageError(f"--param {k}: integer expected, got {v!r}") from None
    return params


def cmd_bounds(a):
    row = {"genus": a.genus}
    for name in ("general", "hyperelliptic", "trigonal_max", "trigonal_semistable", "tetragonal"):
        row[name] = sl.bound(name, a.genus).value
    if a.d is not None:
        row["pencil"] = sl.bound("pencil", a.genus, d=a.d).value
        if a.fd is not None:
            row["conjecture_Fd"] = sl.bound("conjecture_Fd", a.genus, d=a.d, fd=a.fd).value
    if a.cliff is not None:
        row["clifford"] = sl.bound("clifford", a.genus, cliff=a.cliff).value
    return [row], 0


def cmd_coeffs(a):
    if a.symbolic == (a.genus is not None):
        raise UsageError("give exactly one of --genus or --symbolic")
    table = bd.coeff_table(None if a.symbolic else a.genus, include_t10=a.include_t10)
    rows = []
    for r in table.trigonal:
        rows.append({"kind": r.kind, "i": r.i, "c": r.c, "c_tilde": r.c_tilde, "d": r.d, "d_tilde": r.d_tilde})
    for r in table.hyperelliptic:
        rows.append({"kind": r.kind, "i": r.i, "c": r.c, "c_tilde": r.c_tilde, "d": None, "d_tilde": None})
    return rows, 0


def cmd_verify(a):
    results = run_suite(a.suite)
    rows = [{"status": "PASS" if ok else "FAIL", "assertion": name} for name, ok in results]
    return rows, 0 if all(ok for _, ok in results) else 1


def cmd_family(a):
    res = sl.family(a.name, _parse_params(a.param))
    row = {"family": res.spec.name, "genus": res.spec.genus}
    row.update(res.spec.params)
    row.update({f"cond_{k}": v for k, v in res.spec.conditions.items()})
    row.update(res.report.as_dict())
    row.update(res.slope.as_dict())
    row["mu"] = res.mu
    row["maroni_criterion"] = res.maroni_criterion
    return [row], 0


def cmd_tree(a):
    try:
        with open(a.input, encoding="utf-8") as fh:
            tree, head = parse_tree_file(fh.read())
    except OSError as exc:
        raise UsageError(str(exc)) from None
    g = head["genus"]
    adj = {"mu_total": head["mu"], "ram1": head["ram1"], "ram2": head["ram2"]}
    from .invariants import general_invariants
    rep = general_invariants([tree], g + 2, "d", "c2", adj, g=g)
    c_T, d_T = bd.direct_contribution(tree, g, adj)
    row = {"genus": g}
    row.update(rep.as_dict())
    row.update({"c_T": c_T, "d_T": d_T})
    if head["alpha"]:
        alphas = {(k, i): n for k, i, n in head["alpha"]}
        bd.decompose_special_fiber(alphas, g, tree, adj)
        row["decomposition"] = " + ".join(f"{n}*delta_{k},{i}" for (k, i), n in sorted(alphas.items()))
    return [row], 0


def cmd_maroni(a):
    rep = mr.maroni_report(a.genus, a.k)
    row = dict(rep.__dict__)
    row["locus_kind"] = mr.locus_kind(a.genus)
    return [row], 0


def build_parser() -> argparse.ArgumentParser:
    def common():
        # --format is accepted before or after the verb
        c = argparse.ArgumentParser(add_help=False)
        c.add_argument("--format", choices=("tsv", "json"), default=argparse.SUPPRESS)
        return c

    p = argparse.ArgumentParser(prog="artifact", description=__doc__.splitlines()[0], parents=[common()])
    p.set_defaults(format="tsv")
    sub = p.add_subparsers(dest="verb", required=True)

    b = sub.add_parser("bounds", parents=[common()], help="slope bounds at a genus")
    b.add_argument("--genus", type=int, required=True)
    b.add_argument("--d", type=int)
    b.add_argument("--fd", type=Fraction)
    b.add_argument("--cliff", type=int)
    b.set_defaults(fn=cmd_bounds)

    c = sub.add_parser("coeffs", parents=[common()], help="boundary coefficient table")
    c.add_argument("--genus", type=int)
    c.add_argument("--symbolic", action="store_true")
    c.add_argument("--include-t10", action="store_true")
    c.set_defaults(fn=cmd_coeffs)

    v = sub.add_parser("verify", parents=[common()], help="run identity suites")
    v.add_argument("--suite", choices=("all",) + tuple(SUITES), default="all")
    v.set_defaults(fn=cmd_verify)

    f = sub.add_parser("family", parents=[common()], help="witness family invariants")
    f.add_argument("--name", choices=sl.FAMILY_NAMES, required=True)
    f.add_argument("--param", default="")
    f.set_defaults(fn=cmd_family)

    t = sub.add_parser("tree", parents=[common()], help="evaluate a special-fiber tree file")
    t.add_argument("--input", required=True)
    t.set_defaults(fn=cmd_tree)

    m = sub.add_parser("maroni", parents=[common()], help="Maroni invariant and locus dimension")
    m.add_argument("--genus", type=int, required=True)
    m.add_argument("--k", type=int)
    m.set_defaults(fn=cmd_maroni)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rows, status = args.fn(args)
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        print(f"artifact {args.verb}: {exc}", file=sys.stderr)
        return 2
    emit(rows, args.format, out)
    return status


if __name__ == "__main__":
    sys.exit(main())
