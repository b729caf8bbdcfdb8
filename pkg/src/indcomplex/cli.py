"""Command-line front end.

    indcomplex psi GRAPH [--trace]
    indcomplex indcomp GRAPH
    indcomplex sd FACETS
    indcomplex encode FACETS
    indcomplex homology FACETS
    indcomplex verify GRAPH
    indcomplex scan [FILE | --max-n N] [--workers W] [--out PREFIX]
    indcomplex present PRESENTATION
    indcomplex enumerate N

Inputs are files or '-' for standard input. Exit codes: 0 ok, 1 usage or
format error, 2 bound violation.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional

from .complex import (
    ComplexFormatError,
    barycentric_subdivision,
    complex_to_graph,
    independence_complex,
    parse_facets,
    parse_presentation,
    write_facets,
)
from .graph import (
    Graph,
    GraphFormatError,
    enumerate_graphs,
    parse_edge_list,
    write_edge_list,
    write_graph6,
)
from .homology import DEFAULT_TIETZE_BUDGET, reduced_homology
from .psi import PsiMemo, fmt_ext, format_trace, psi, psi_trace
from .verify import (
    DEFAULT_FACE_CEILING,
    DEFAULT_PSI_CEILING,
    BoundViolation,
    PipelineTooLarge,
    is_chordal,
    pipeline_presentation,
    read_graph6_lines,
    scan,
    write_report,
)


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def _content_lines(text: str) -> list[str]:
    return [ln.split("#", 1)[0].strip() for ln in text.splitlines() if ln.split("#", 1)[0].strip()]


def _is_graph6_token(s: str) -> bool:
    return " " not in s and "\t" not in s and all(63 <= ord(c) <= 126 for c in s)


def _is_int_line(s: str) -> bool:
    toks = s.split()
    if toks and toks[0] == "n":
        toks = toks[1:]
    try:
        [int(t) for t in toks]
    except ValueError:
        return False
    return bool(toks)


def detect_graph_format(text: str) -> str:
    lines = _content_lines(text)
    if not lines:
        raise GraphFormatError("no graph in input")
    g6 = all(_is_graph6_token(ln) for ln in lines)
    el = _is_int_line(lines[0])
    if g6 and el:
        raise GraphFormatError("input is ambiguous between graph6 and edge-list; pass --format")
    if g6:
        return "graph6"
    if el:
        return "edgelist"
    raise GraphFormatError("could not detect graph format (graph6 or edge-list); pass --format")


def read_graphs(text: str, fmt: Optional[str] = None) -> list[Graph]:
    fmt = fmt or detect_graph_format(text)
    if fmt == "edgelist":
        return [parse_edge_list(text)]
    return list(read_graph6_lines(text.splitlines()))


def _out(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# subcommands; each returns (stdout text, exit code)
# --------------------------------------------------------------------------

def cmd_psi(args) -> int:
    graphs = read_graphs(_read(args.input), args.format)
    memo = PsiMemo()
    chunks = []
    for g in graphs:
        chunks.append(f"psi = {fmt_ext(psi(g, memo))}\n")
        if args.trace:
            chunks.append(format_trace(psi_trace(g)) + "\n")
    _out("".join(chunks), args.out)
    return 0


def cmd_indcomp(args) -> int:
    graphs = read_graphs(_read(args.input), args.format)
    if len(graphs) != 1:
        raise UsageError("indcomp expects exactly one graph")
    _out(write_facets(independence_complex(graphs[0])), args.out)
    return 0


def cmd_sd(args) -> int:
    k = parse_facets(_read(args.input))
    _out(write_facets(barycentric_subdivision(k)), args.out)
    return 0


def cmd_encode(args) -> int:
    k = parse_facets(_read(args.input))
    if k.is_empty():
        raise UsageError("encode needs a non-void complex")
    _out(write_edge_list(complex_to_graph(k)), args.out)
    return 0


def cmd_homology(args) -> int:
    k = parse_facets(_read(args.input))
    h = reduced_homology(k)
    _out("".join(line + "\n" for line in h.lines()), args.out)
    return 0


def cmd_verify(args) -> int:
    graphs = read_graphs(_read(args.input), args.format)
    summary, reports = scan(graphs, tietze_budget=args.tietze_budget, abort_on_violation=False)
    _out(write_report(reports), args.out)
    sys.stderr.write(summary.text())
    return 2 if summary.violations else 0


def _scan_graphs(args, skipped: list):
    if args.input is not None:
        text = _read(args.input)
        return list(read_graph6_lines(text.splitlines(), args.skip_malformed, skipped))
    if args.max_n is None:
        raise UsageError("scan needs an input file or --max-n")
    lo = args.min_n if args.min_n is not None else 1
    graphs = [g for n in range(lo, args.max_n + 1) for g in enumerate_graphs(n)]
    if args.chordal:
        graphs = [g for g in graphs if is_chordal(g)]
    return graphs


def cmd_scan(args) -> int:
    skipped: list[str] = []
    graphs = _scan_graphs(args, skipped)
    try:
        summary, reports = scan(graphs, workers=args.workers, tietze_budget=args.tietze_budget)
    except BoundViolation as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    summary.skipped_lines = skipped
    if args.out:
        write_report(reports, summary, f"{args.out}.tsv", f"{args.out}.summary.txt")
    else:
        sys.stdout.write(write_report(reports))
    sys.stderr.write(summary.text())
    sys.stderr.write(
        f"wall time {summary.wall_time:.2f}s, psi memo hit rate {summary.hit_rate:.3f}\n"
    )
    return 0


def cmd_present(args) -> int:
    p = parse_presentation(_read(args.input))
    try:
        report = pipeline_presentation(
            p,
            psi_ceiling=args.psi_ceiling,
            face_ceiling=args.face_ceiling,
            tietze_budget=args.tietze_budget,
        )
    except PipelineTooLarge as exc:
        raise UsageError(str(exc)) from None
    _out("".join(line + "\n" for line in report.lines()), args.out)
    return 0 if report.consistent else 2


def cmd_enumerate(args) -> int:
    graphs = enumerate_graphs(args.n)
    if args.chordal:
        graphs = (g for g in graphs if is_chordal(g))
    _out("".join(write_graph6(g) + "\n" for g in graphs), args.out)
    return 0


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="indcomplex", description=__doc__.split("\n\n")[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_, input_="input"):
        sp = sub.add_parser(name, help=help_)
        if input_:
            sp.add_argument(input_, nargs="?" if name == "scan" else None, default=None,
                            help="input file, or '-' for stdin")
        sp.add_argument("-o", "--out", help="output path (scan: path prefix)")
        sp.set_defaults(func=func)
        return sp

    def graph_fmt(sp):
        sp.add_argument("--format", choices=["graph6", "edgelist"], help="override auto-detection")

    sp = add("psi", cmd_psi, "compute psi of graph(s)")
    graph_fmt(sp)
    sp.add_argument("--trace", action="store_true", help="print the derivation")

    graph_fmt(add("indcomp", cmd_indcomp, "independence complex as a facet file"))
    add("sd", cmd_sd, "barycentric subdivision of a facet file")
    add("encode", cmd_encode, "face-incomparability graph of a complex, as an edge list")
    add("homology", cmd_homology, "reduced integral homology of a facet file")

    sp = add("verify", cmd_verify, "check the psi bound for graph(s), TSV to stdout")
    graph_fmt(sp)
    sp.add_argument("--tietze-budget", type=_positive, default=DEFAULT_TIETZE_BUDGET)

    sp = add("scan", cmd_scan, "scan graph6 input or all graphs up to --max-n")
    sp.add_argument("--max-n", type=int)
    sp.add_argument("--min-n", type=int)
    sp.add_argument("--chordal", action="store_true", help="only chordal graphs (with --max-n)")
    sp.add_argument("--workers", type=_positive, default=1)
    sp.add_argument("--tietze-budget", type=_positive, default=DEFAULT_TIETZE_BUDGET)
    sp.add_argument("--skip-malformed", action="store_true")

    sp = add("present", cmd_present, "run a presentation through complex -> graph -> psi")
    sp.add_argument("--psi-ceiling", type=_positive, default=DEFAULT_PSI_CEILING)
    sp.add_argument("--face-ceiling", type=_positive, default=DEFAULT_FACE_CEILING)
    sp.add_argument("--tietze-budget", type=_positive, default=DEFAULT_TIETZE_BUDGET)

    sp = add("enumerate", cmd_enumerate, "graph6 list of all graphs on N vertices", input_=None)
    sp.add_argument("n", type=int)
    sp.add_argument("--chordal", action="store_true")
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    if args.command == "scan" and args.max_n is not None and args.input is not None:
        ap.error("give either an input file or --max-n, not both")
    try:
        return args.func(args)
    except (UsageError, GraphFormatError, ComplexFormatError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
