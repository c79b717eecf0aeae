"""Command-line front end: ``entcert construct|certify|verify-protocol|reproduce-paper``.

Exit codes: 0 pass, 1 fail, 2 inconclusive, 64 usage error, 65 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import constructions as C
from .distillability import certify_one_distillable
from .entanglement import INCONCLUSIVE, UBB, NotBiseparableError, NotOrthogonalError, certify_ges, certify_ubb
from .fixtures import ERRATA, M_PRINTED, M_PRINTED_RANK, u_protocol_tree, verify_fixtures
from .exactla import ExactMatrix
from .locc import ProtocolError, loads_tree, verify_tree
from .nonlocality import certify_strong_nonlocality
from .states import PARTY_NAMES, Grouping, StateFormatError, dumps_state_set, loads_state_set, tripartite_groupings

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE = 0, 1, 2
EXIT_USAGE, EXIT_DATA = 64, 65

BUILTIN_TREE = "builtin:u-tree"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which would read as "inconclusive"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def threads() -> int:
    raw = os.environ.get("ENTCERT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parallel_map(fn, items):
    """Ordered map, spread over ``ENTCERT_THREADS`` worker processes."""
    items = list(items)
    n = min(threads(), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def parse_cut(text: str, n_parties: int = 3) -> Grouping:
    """``"A|BC"``, ``"CA|B"`` ... to a :class:`Grouping`."""
    if text.count("|") != 1:
        raise UsageError(f"cut must look like 'A|BC', got {text!r}")
    left, right = text.split("|")
    try:
        lp = {PARTY_NAMES.index(c) for c in left.strip().upper()}
        rp = {PARTY_NAMES.index(c) for c in right.strip().upper()}
    except ValueError:
        raise UsageError(f"unknown party letter in {text!r}") from None
    if lp & rp or lp | rp != set(range(n_parties)) or not lp or not rp:
        raise UsageError(f"{text!r} is not a bipartition of {PARTY_NAMES[:n_parties]}")
    return Grouping.of(lp, n_parties)


def _read_states(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(str(exc)) from None
    try:
        return loads_state_set(text)
    except StateFormatError as exc:
        raise StateFormatError(f"{path}: {exc}") from None


def _write(text: str, out: str | None):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")


# -- markdown -----------------------------------------------------------------

def _md_value(v) -> str:
    if isinstance(v, (dict, list)):
        return "`" + json.dumps(v, separators=(",", ":")) + "`"
    return str(v).replace("|", "\\|")


def report_markdown(report: dict) -> str:
    lines = [f"# {report.get('property', 'report')}", ""]
    for k, v in report.items():
        if k == "certificates" and isinstance(v, list) and v and isinstance(v[0], dict):
            continue
        if k != "property":
            lines.append(f"- **{k}**: {_md_value(v)}")
    for key in ("certificates",):
        certs = report.get(key)
        if isinstance(certs, list) and certs and isinstance(certs[0], dict):
            cols = [c for c in certs[0] if c not in ("witness", "stacked_map")]
            lines += ["", "| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
            for c in certs:
                lines.append("| " + " | ".join(_md_value(c.get(col)) for col in cols) + " |")
            for c in certs:
                if c.get("witness"):
                    lines += ["", f"Witness on {c.get('active_parties')} of {c.get('grouping')}:", "", "```json", json.dumps(c["witness"], indent=1), "```"]
    return "\n".join(lines) + "\n"


# -- construct ------------------------------------------------------------------

def cmd_construct(args) -> int:
    rot = None
    if args.rot is not None:
        try:
            rot = C.RotationTriple.parse(args.rot)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    try:
        states = C.build_family(args.family, rot, args.d, args.r)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(dumps_state_set(states), args.out)
    return EXIT_PASS


# -- certify --------------------------------------------------------------------

def _exit_for(report: dict) -> int:
    if report.get("pass"):
        return EXIT_PASS
    return EXIT_INCONCLUSIVE if report.get("verdict") == INCONCLUSIVE else EXIT_FAIL


def _fixture_gate() -> dict | None:
    checks = verify_fixtures()
    bad = [c for c in checks if not c.ok]
    if bad:
        return {
            "property": "fixture verification",
            "verdict": "fixtures disagree with generated states",
            "pass": False,
            "failures": [{"name": c.name, "detail": c.detail} for c in bad],
        }
    return None


def run_certify(kind: str, states, complement=None) -> dict:
    if kind == "ges":
        return certify_ges(states).to_dict()
    if kind == "ubb":
        try:
            return certify_ubb(states, complement).to_dict()
        except (NotOrthogonalError, NotBiseparableError) as exc:
            return {"property": "unextendible biseparable basis", "verdict": "precondition failed", "pass": False, "reason": str(exc)}
    if kind == "strong-nonlocality":
        return certify_strong_nonlocality(states).to_dict()
    if kind == "distillable":
        return certify_one_distillable(states).to_dict()
    raise UsageError(f"unknown certificate kind {kind!r}")


def cmd_certify(args) -> int:
    if args.verify_fixtures:
        gate = _fixture_gate()
        if gate is not None:
            _emit(gate, args)
            return EXIT_FAIL
    states = _read_states(args.file)
    complement = None
    if args.complement:
        if args.kind != "ubb":
            raise UsageError("--complement only applies to 'certify ubb'")
        complement = list(_read_states(args.complement))
    try:
        report = run_certify(args.kind, states, complement)
    except ValueError as exc:
        if isinstance(exc, StateFormatError):
            raise
        report = {"property": args.kind, "verdict": "error", "pass": False, "reason": str(exc)}
    report["file"] = args.file
    _emit(report, args)
    return _exit_for(report)


def _emit(report: dict, args):
    text = report_markdown(report) if args.md else json.dumps(report, indent=2) + "\n"
    _write(text, getattr(args, "out", None))


# -- verify-protocol -------------------------------------------------------------

def cmd_verify_protocol(args) -> int:
    states = _read_states(args.states)
    g = parse_cut(args.cut, states.system.parties)
    if args.protocol == BUILTIN_TREE:
        tree = u_protocol_tree()
    else:
        try:
            tree = loads_tree(Path(args.protocol).read_text(encoding="utf-8"))
        except OSError as exc:
            raise UsageError(str(exc)) from None
    out = verify_tree(states, g, tree)
    report = out.to_dict()
    report["cut"] = g.name
    _emit(report, args)
    return EXIT_PASS if out.distinguished else EXIT_FAIL


# -- reproduce-paper --------------------------------------------------------------

def _rotation_summary(rot: tuple[int, int, int]) -> dict:
    f = C.family_333(rot)
    ges = certify_ges(f.ges_basis)
    kernel = certify_ubb(f.U)
    omega = certify_ubb(f.U, list(f.ges_basis))
    snl = certify_strong_nonlocality(f.U, with_witness=False)
    return {
        "rot": "".join(map(str, rot)),
        "ges_spans": [c.span_dim for c in ges.certificates],
        "ubb_kernel": (kernel.verdict, kernel.complement_dim),
        "ubb_omega": (omega.verdict, omega.complement_dim),
        "strongly_nonlocal": snl.strongly_nonlocal,
        "oplm": [(c.grouping.name, c.side_name, c.span_dim, c.solution_dim) for c in snl.certificates],
    }


def reproduce_rows() -> list[dict]:
    rows: list[dict] = []

    def row(name, expected, computed):
        rows.append({"item": name, "expected": expected, "computed": computed, "pass": expected == computed})

    for c in verify_fixtures():
        row(f"fixture: {c.name}", "match (errata documented)", "match (errata documented)" if c.ok else f"mismatch {c.detail}")
    rows.append({"item": "documented errata in printed tables", "expected": len(ERRATA), "computed": len(ERRATA), "pass": True})

    for name, m in M_PRINTED.items():
        row(f"rank of printed M^{name} (2x2x2)", M_PRINTED_RANK, ExactMatrix.from_rows(m).rank())
    om = C.omega_222()
    for cert in certify_ges(om).certificates:
        row(f"span dim, omega set 2x2x2, {cert.grouping.name}", 4, cert.span_dim)

    u = C.family_222().U
    for source, comp in (("kernel", None), ("omega set", list(om))):
        rep = certify_ubb(u, comp)
        row(f"UBB verdict for U ({source} complement)", UBB, rep.verdict)
        row(f"complement dim for U ({source})", 2, rep.complement_dim)
    snl_u = certify_strong_nonlocality(u)
    row("U strongly nonlocal", False, snl_u.strongly_nonlocal)
    w = snl_u.witness
    row("U: OPLM witness location", "BC side of A|BC", f"{w.side_name} side of {w.grouping.name}" if w else None)
    row("U: protocol tree across A|BC", "distinguished", verify_tree(u, tripartite_groupings()[0], u_protocol_tree()).verdict)

    summaries = parallel_map(_rotation_summary, [(r.h, r.q, r.m) for r in C.all_rotations()])
    s000 = summaries[0]
    for cut, span in zip(("A|BC", "B|CA", "C|AB"), s000["ges_spans"]):
        row(f"GES span dim (rot 000), {cut}", 64, span)
    row("GES span dim 64 in all cuts, 27 rotations", 81, sum(span == 64 for s in summaries for span in s["ges_spans"]))
    for gname, side, span, sol in s000["oplm"]:
        if len(side) == 2:
            left, right = gname.split("|")
            row(f"OPLM span dim (U_000), {side}|{left if side == right else right}", 80, span)
        else:
            row(f"OPLM solution dim (U_000), {side} side of {gname}", 1, sol)
    row("U_hqm strongly nonlocal, 27 rotations", 27, sum(s["strongly_nonlocal"] for s in summaries))
    row("U_hqm UBB via kernel complement (dim 8), 27 rotations", 27, sum(s["ubb_kernel"] == (UBB, 8) for s in summaries))
    row("U_hqm UBB via omega complement (dim 8), 27 rotations", 27, sum(s["ubb_omega"] == (UBB, 8) for s in summaries))

    dist = certify_one_distillable(C.family_333((0, 0, 0)).ges_basis)
    row("subset-rank violations (GES_000, 255 subsets x 3 parties)", 0, len(dist.table.violations) if dist.table else None)
    row("GES_000 1-distillable in every bipartition", "pass", dist.verdict)
    return rows


def cmd_reproduce_paper(args) -> int:
    t0 = time.perf_counter()
    rows = reproduce_rows()
    elapsed = time.perf_counter() - t0
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    summary = {"rows": rows, "all_pass": all(r["pass"] for r in rows), "seconds": round(elapsed, 2)}
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    md = ["# Reproduced values", "", "| item | expected | computed | pass |", "|---|---|---|---|"]
    for r in rows:
        cells = [_md_value(r["item"]), _md_value(r["expected"]), _md_value(r["computed"]), "yes" if r["pass"] else "NO"]
        md.append("| " + " | ".join(cells) + " |")
    md += ["", "## Errata in the printed tables", ""]
    for e in ERRATA:
        md.append(f"- {e.fixture} at {e.where}: printed {e.printed}, computed {e.computed}. {e.note}")
    (out / "report.md").write_text("\n".join(md) + "\n", encoding="utf-8")
    print(f"{sum(r['pass'] for r in rows)}/{len(rows)} rows pass; wrote {out / 'report.md'} and {out / 'summary.json'}")
    return EXIT_PASS if summary["all_pass"] else EXIT_FAIL


# -- entry point -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="entcert", description="Exact certificates for biseparable bases and entangled subspaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="write a named state family as JSON")
    c.add_argument("family", help=", ".join(C.FAMILIES))
    c.add_argument("--rot", help="rotation triple h,q,m for the 3x3x3 families")
    c.add_argument("--d", type=int, default=3, help="local dimension for 'stopper'")
    c.add_argument("--r", type=int, default=3, help="number of parties for 'stopper'")
    c.add_argument("--out", help="output path (default stdout)")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("certify", help="certify a property of a state-set file")
    c.add_argument("kind", choices=["ges", "ubb", "strong-nonlocality", "distillable"])
    c.add_argument("file")
    fmt = c.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--md", action="store_true", help="markdown report")
    c.add_argument("--complement", help="state-set file spanning the complement (ubb only)")
    c.add_argument("--verify-fixtures", action="store_true", help="check the transcribed tables first")
    c.add_argument("--out", help="report path (default stdout)")
    c.set_defaults(func=cmd_certify)

    c = sub.add_parser("verify-protocol", help="check a discrimination protocol tree")
    c.add_argument("states")
    c.add_argument("protocol", help=f"protocol JSON file, or {BUILTIN_TREE}")
    c.add_argument("--cut", required=True, help="bipartition such as A|BC")
    fmt = c.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--md", action="store_true")
    c.add_argument("--out")
    c.set_defaults(func=cmd_verify_protocol)

    c = sub.add_parser("reproduce-paper", help="recompute every published value")
    c.add_argument("--out", default="reproduction", help="output directory")
    c.set_defaults(func=cmd_reproduce_paper)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"entcert: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (StateFormatError, ProtocolError) as exc:
        print(f"entcert: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
