"""Command line interface.

Exit codes: 0 success, 1 usage or parse error, 2 s1I or hypothesis
violation, 3 failed mathematical check.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import gkz
from .errors import DegeneracyError, GraphStructureError, HypothesisError, S1IError
from .family import verify_family, worker_count
from .graph import FeynmanGraph, enumerate_forests, massive_path_exists, validate_s1i
from .io import DocumentError, load_graph_document
from .matroids import (
    Matroid,
    check_exchange_axiom,
    feynman_matroid,
    graphic_matroid,
    is_quotient,
    massive_truncation_matroid,
    matroid_polytope_edge_directions,
    momentous_matroid,
    two_forest_matroid,
)
from .semigroup import DEFAULT_KMAX, build_support_matrix, saturation_check
from .symanzik import classify_2forest, gm_support, momentous_2forests

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_HYPOTHESIS = 2
EXIT_CHECK = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fmt_set(labels) -> str:
    return "{" + ",".join(sorted(labels, key=_natural)) + "}"


def _natural(s: str):
    head = s.rstrip("0123456789")
    tail = s[len(head):]
    return (head, int(tail) if tail else -1, s)


class _Output:
    """Collects report text; writes to --out or stdout."""

    def __init__(self):
        self.lines: list[str] = []

    def __call__(self, line: str = ""):
        self.lines.append(line)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _emit(args, text: str):
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _load(path) -> tuple[FeynmanGraph, object]:
    doc = load_graph_document(path)
    return doc.graph, doc.degeneracy


def _require_s1i(g: FeynmanGraph):
    rep = validate_s1i(g)
    if not rep.ok:
        raise S1IError(rep)


# -- subcommands -------------------------------------------------------------


def cmd_forests(args) -> int:
    g, _ = _load(args.file)
    _require_s1i(g)
    i = args.i
    forests = enumerate_forests(g, i)
    rows = []
    for f in forests:
        row = {"edges": sorted(g.edge_set(f.mask), key=_natural), "components": [sorted(c) for c in f.components]}
        if i == 2:
            row["tags"] = list(classify_2forest(g, f).tags)
        rows.append(row)
    if args.json:
        _emit(args, _dump({"i": i, "count": len(rows), "forests": rows}))
        return EXIT_OK
    out = _Output()
    out(f"{len(rows)} {i}-forest(s)")
    for row in rows:
        comps = " | ".join(" ".join(c) for c in row["components"])
        tags = ""
        if "tags" in row:
            tags = "  [" + (", ".join(row["tags"]) or "no contribution") + "]"
        out(f"  {_fmt_set(row['edges'])}  components: {comps}{tags}")
    _emit(args, out.text())
    return EXIT_OK


def _matroid_summary(m: Matroid) -> dict:
    ex = check_exchange_axiom(m)
    pe = matroid_polytope_edge_directions(m)
    return {
        "rank": m.rank,
        "bases": [list(b) for b in m.sorted_bases()],
        "exchange": {"weak": ex.weak_ok, "strong": ex.strong_ok},
        "polytope_edges": len(pe.edges),
        "polytope_edges_ok": pe.ok,
    }


def cmd_matroids(args) -> int:
    g, _ = _load(args.file)
    _require_s1i(g)
    m1 = graphic_matroid(g)
    mats: dict[str, Matroid] = {"graphic": m1, "two_forest": two_forest_matroid(g)}
    diagnostics: list[str] = []
    if momentous_2forests(g):
        mats["momentous"] = momentous_matroid(g)
    else:
        diagnostics.append("no momentous 2-forest: the external vertices are never separated")
    if g.massive_mask:
        mats["massive_truncation"] = massive_truncation_matroid(g)
    else:
        diagnostics.append("no massive edge: no massive truncations")
    try:
        mats["feynman"] = feynman_matroid(g)
    except HypothesisError:
        raise HypothesisError(
            "no 2-forest term in G_m: no momentous 2-forest and no massive edge"
        ) from None

    summaries = {name: _matroid_summary(m) for name, m in mats.items()}
    quotients = {}
    for name in ("momentous", "massive_truncation"):
        if name in mats:
            quotients[name] = is_quotient(mats[name], m1)
    by_path = all(massive_path_exists(g, v) for v in g.vertices)
    by_bases = mats["feynman"].base_masks == mats["two_forest"].base_masks

    failed = [n for n, s in summaries.items() if not (s["exchange"]["weak"] and s["exchange"]["strong"])]
    failed += [n for n, s in summaries.items() if not s["polytope_edges_ok"]]
    failed += [f"quotient:{n}" for n, w in quotients.items() if not w.holds]

    if args.json:
        doc = {
            "matroids": summaries,
            "quotients": {
                n: {
                    "holds": w.holds,
                    "witnesses": [
                        {"circuit": sorted(c, key=_natural), "covered_by": [sorted(x, key=_natural) for x in xs]}
                        for c, xs in w.coverings
                    ],
                }
                for n, w in quotients.items()
            },
            "all_two_forests_contribute": by_bases,
            "massive_paths_to_external": by_path,
            "diagnostics": diagnostics,
            "failures": failed,
        }
        _emit(args, _dump(doc))
    else:
        out = _Output()
        for d in diagnostics:
            out(f"diagnostic: {d}")
        for name, s in summaries.items():
            ex = s["exchange"]
            out(
                f"{name}: rank {s['rank']}, {len(s['bases'])} bases, exchange weak={_yn(ex['weak'])} "
                f"strong={_yn(ex['strong'])}, polytope edges {s['polytope_edges']} "
                f"{'all of type e_i - e_j' if s['polytope_edges_ok'] else 'NOT all of type e_i - e_j'}"
            )
        for name, w in quotients.items():
            out(f"{name} is a quotient of graphic: {_yn(w.holds)}")
            for c, xs in w.coverings:
                cover = " + ".join(_fmt_set(x) for x in xs) if xs else "not covered"
                out(f"  circuit {_fmt_set(c)} = {cover}")
        out(f"every 2-forest contributes: {_yn(by_bases)}")
        out(f"every vertex has a massive path to an external vertex: {_yn(by_path)}")
        out("result: " + ("all checks passed" if not failed else "FAILED " + ", ".join(failed)))
        _emit(args, out.text())
    return EXIT_CHECK if failed else EXIT_OK


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def _support_matrix(g, d):
    s = gm_support(g, d)
    if not s.f_part:
        raise HypothesisError("no 2-forest term in G_m")
    return s, build_support_matrix(s, allow_degenerate=True)


def cmd_saturation(args) -> int:
    if args.kmax < 1:
        raise UsageError("--kmax must be at least 1")
    g, d = _load(args.file)
    _require_s1i(g)
    s, a = _support_matrix(g, d)
    rep = saturation_check(a, args.kmax, graph=g, support=s)
    if args.json:
        doc = rep.to_dict()
        doc["matrix"] = a.rows
        _emit(args, _dump(doc))
    else:
        out = _Output()
        rows, cols = a.shape
        out(f"support matrix A: {rows} x {cols} ({a.u_count} from U, {cols - a.u_count} from F)")
        for row in a.rows:
            out("  " + " ".join(f"{x:>2}" for x in row))
        idx = "" if rep.lattice_index is None else f", index {rep.lattice_index}"
        out(f"lattice Z A: rank {rep.lattice_rank}{idx}; holes taken in {rep.lattice_used}")
        for k in range(1, rep.k_max + 1):
            hs = rep.holes.get(k, ())
            out(f"degree {k}: {len(hs)} hole(s)" + (": " + " ".join(_vec(h) for h in hs) if hs else ""))
        out("Q_A generators: " + (" ".join(_vec(h) for h in rep.qa_generators) or "none"))
        v = rep.verdicts
        if v is not None:
            out(f"theorem verdict: {v.verdict}" + (f" ({v.reason})" if v.reason else ""))
        for note in rep.notes:
            out(f"note: {note}")
        out(f"verdict: {rep.verdict}")
        _emit(args, out.text())
    return EXIT_OK if rep.consistent else EXIT_CHECK


def _vec(v) -> str:
    return "(" + ",".join(map(str, v)) + ")"


def cmd_gkz(args) -> int:
    g, d = _load(args.file)
    _require_s1i(g)
    _, a = _support_matrix(g, d)
    doc = gkz.gkz_document(a)
    if args.json or args.out:
        _emit(args, _dump(doc))
    else:
        _emit(args, gkz.format_operators(a) + "\n")
    return EXIT_OK


def cmd_verify_family(args) -> int:
    if args.max_edges < 1:
        raise UsageError("--max-edges must be at least 1")
    try:
        workers = worker_count(default=1)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = verify_family(args.max_edges, workers=workers)
    _emit(args, rep.to_json() if args.json else rep.to_text())
    return EXIT_OK if rep.ok else EXIT_CHECK


# -- wiring -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="feyngkz", description="Symanzik supports, 2-forest matroids and GKZ saturation.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, with_file=True):
        if with_file:
            sp.add_argument("file", help="graph JSON file")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--out", metavar="PATH", help="write the report to PATH instead of stdout")

    sp = sub.add_parser("forests", help="list i-forests, with 2-forest classification")
    common(sp)
    sp.add_argument("-i", type=int, default=2, help="forest order (default 2)")
    sp.set_defaults(func=cmd_forests)

    sp = sub.add_parser("matroids", help="build and check the 2-forest matroids")
    common(sp)
    sp.set_defaults(func=cmd_matroids)

    sp = sub.add_parser("saturation", help="bounded saturation test and theorem verdicts")
    common(sp)
    sp.add_argument("--kmax", type=int, default=DEFAULT_KMAX, help=f"degree bound (default {DEFAULT_KMAX})")
    sp.set_defaults(func=cmd_saturation)

    sp = sub.add_parser("gkz", help="Euler operators and kernel binomials")
    common(sp)
    sp.set_defaults(func=cmd_gkz)

    sp = sub.add_parser("verify-family", help="run every invariant suite over the small-graph family")
    common(sp, with_file=False)
    sp.add_argument("--max-edges", type=int, default=5, help="largest edge count (default 5)")
    sp.set_defaults(func=cmd_verify_family)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "i", 1) < 1:
            raise UsageError("-i must be at least 1")
        return args.func(args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DocumentError, GraphStructureError, DegeneracyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except S1IError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for v in exc.report.violations:
            print(f"  violation: {v.kind}" + (f" {v.item}" if v.item else ""), file=sys.stderr)
        return EXIT_HYPOTHESIS
    except HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
