"""Exhaustive checks of the psi connectivity bound and conjecture-gap triage."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .complex import (
    Presentation,
    IsomorphismBudgetExceeded,
    barycentric_subdivision,
    complex_to_graph,
    independence_complex,
    is_isomorphic,
    presentation_complex,
)
from .graph import Graph, GraphFormatError, parse_graph6, write_graph6
from .homology import (
    DEFAULT_TIETZE_BUDGET,
    TriState,
    abelian_invariants,
    edge_path_presentation,
    homological_connectivity,
    is_collapsible,
    is_connected,
    reduced_homology,
    simple_connectivity,
)
from .psi import INF, PsiMemo, fmt_ext, psi

log = logging.getLogger(__name__)

TSV_COLUMNS = ("graph6", "n", "m", "psi", "homconn", "pi1", "collapsible", "bound_ok", "gap_flag")


class BoundViolation(RuntimeError):
    """Reduced homology of I_G is non-zero at or below psi(G).

    The bound is a theorem, so this always means a bug here.
    """

    def __init__(self, report: "GraphReport"):
        super().__init__(
            f"bound violated for {report.graph6}: psi={fmt_ext(report.psi)} "
            f"homconn={fmt_ext(report.homconn)}"
        )
        self.report = report


@dataclass
class GraphReport:
    graph6: str
    n: int
    m: int
    psi: float
    homconn: float
    pi1: Optional[TriState]
    collapsible: bool
    bound_ok: bool
    gap_flag: bool
    gap_grade: str
    timings: dict = field(default_factory=dict, compare=False)
    memo_hits: int = field(default=0, compare=False)
    memo_misses: int = field(default=0, compare=False)

    def tsv_row(self) -> str:
        vals = (
            self.graph6,
            str(self.n),
            str(self.m),
            fmt_ext(self.psi),
            fmt_ext(self.homconn),
            self.pi1.status if self.pi1 else "-",
            _flag(self.collapsible),
            _flag(self.bound_ok),
            _flag(self.gap_flag),
        )
        return "\t".join(vals)


def _flag(b: bool) -> str:
    return "true" if b else "false"


def check_lower_bound(
    g: Graph,
    memo: Optional[PsiMemo] = None,
    tietze_budget: int = DEFAULT_TIETZE_BUDGET,
) -> GraphReport:
    """psi(G) against the reduced homology of I_G, plus gap triage.

    ``gap_grade`` is one of:
      refuted       homology or pi_1 shows I_G is not (psi+1)-connected
      contractible  I_G collapses, which the conjecture allows
      candidate     homology vanishes through psi+1 and pi_1 is trivial or
                    not needed (higher homotopy is not examined)
      review        as candidate but pi_1 is unknown
      unresolved    psi = +inf, all homology vanishes, collapsing failed
      -             psi = +inf and I_G collapses, or psi = -2
    """
    if memo is None:
        memo = PsiMemo()
    t0 = time.perf_counter()
    hits, misses = memo.hits, memo.misses
    p = psi(g, memo)
    t1 = time.perf_counter()
    k = independence_complex(g)
    h = reduced_homology(k)
    hc = homological_connectivity(k, h)
    collapsible = is_collapsible(k)
    t2 = time.perf_counter()

    bound_ok = hc >= p
    pi1 = None
    relevant = p >= 1 or (p >= 0 and hc >= p + 1)
    if relevant and is_connected(k):
        pi1 = simple_connectivity(k, budget=tietze_budget, summary=h)
    t3 = time.perf_counter()

    if p == INF:
        grade = "-" if collapsible or hc != INF else "unresolved"
        gap = False
    elif p == -2:
        grade, gap = "-", False
    elif hc < p + 1 or (p + 1 >= 1 and pi1 is not None and pi1.status == "no"):
        grade, gap = "refuted", False
    elif collapsible:
        grade, gap = "contractible", False
    else:
        gap = True
        grade = "review" if p + 1 >= 1 and (pi1 is None or pi1.status != "yes") else "candidate"

    return GraphReport(
        graph6=write_graph6(g),
        n=g.n,
        m=g.m,
        psi=p,
        homconn=hc,
        pi1=pi1,
        collapsible=collapsible,
        bound_ok=bound_ok,
        gap_flag=gap,
        gap_grade=grade,
        timings={"psi": t1 - t0, "homology": t2 - t1, "pi1": t3 - t2},
        memo_hits=memo.hits - hits,
        memo_misses=memo.misses - misses,
    )


def is_chordal(g: Graph) -> bool:
    """Maximum cardinality search, then check the reverse order is a perfect
    elimination ordering."""
    n = g.n
    weight = [0] * n
    order: list[int] = []
    done = [False] * n
    for _ in range(n):
        v = max((u for u in range(n) if not done[u]), key=lambda u: (weight[u], -u))
        done[v] = True
        order.append(v)
        for w in g.neighbors(v):
            if not done[w]:
                weight[w] += 1
    pos = {v: i for i, v in enumerate(order)}
    # each vertex's earlier neighbours must form a clique
    for v in order:
        earlier = [w for w in g.neighbors(v) if pos[w] < pos[v]]
        if not earlier:
            continue
        parent = max(earlier, key=lambda w: pos[w])
        need = set(earlier) - {parent}
        if not need <= set(g.neighbors(parent)):
            return False
    return True


# --------------------------------------------------------------------------
# scanning
# --------------------------------------------------------------------------

@dataclass
class ScanSummary:
    total: int = 0
    violations: int = 0
    gap_candidates: list[tuple[str, str]] = field(default_factory=list)
    unresolved: list[str] = field(default_factory=list)
    unknown_pi1: int = 0
    skipped_lines: list[str] = field(default_factory=list)
    wall_time: float = 0.0
    memo_hits: int = 0
    memo_misses: int = 0

    @property
    def hit_rate(self) -> float:
        total = self.memo_hits + self.memo_misses
        return self.memo_hits / total if total else 0.0

    def add(self, r: GraphReport) -> None:
        self.total += 1
        self.violations += not r.bound_ok
        if r.gap_flag:
            self.gap_candidates.append((r.graph6, r.gap_grade))
        if r.gap_grade == "unresolved":
            self.unresolved.append(r.graph6)
        if r.pi1 is not None and r.pi1.status == "unknown":
            self.unknown_pi1 += 1
        self.memo_hits += r.memo_hits
        self.memo_misses += r.memo_misses

    def text(self) -> str:
        """Deterministic summary block (no timings)."""
        lines = [
            f"{self.total} graphs, {self.violations} violations",
            f"gap candidates: {len(self.gap_candidates)}",
        ]
        lines += [f"  {g6}\t{grade}" for g6, grade in self.gap_candidates]
        lines.append(f"unknown pi1: {self.unknown_pi1}")
        lines.append(f"unresolved: {len(self.unresolved)}")
        lines += [f"  {g6}" for g6 in self.unresolved]
        if self.skipped_lines:
            lines.append(f"skipped input lines: {len(self.skipped_lines)}")
            lines += [f"  {msg}" for msg in self.skipped_lines]
        return "\n".join(lines) + "\n"


def read_graph6_lines(lines: Iterable[str], skip_malformed: bool = False,
                      skipped: Optional[list] = None) -> Iterator[Graph]:
    for lineno, line in enumerate(lines, 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            yield parse_graph6(s)
        except GraphFormatError as exc:
            msg = f"line {lineno}: {exc}"
            if not skip_malformed:
                raise GraphFormatError(msg) from None
            log.warning("skipping %s", msg)
            if skipped is not None:
                skipped.append(msg)


_worker_memo: Optional[PsiMemo] = None
_worker_budget = DEFAULT_TIETZE_BUDGET


def _init_worker(budget: int) -> None:
    global _worker_memo, _worker_budget
    _worker_memo = PsiMemo()
    _worker_budget = budget


def _check_in_worker(g: Graph) -> GraphReport:
    return check_lower_bound(g, _worker_memo, _worker_budget)


def scan(
    graphs: Iterable[Graph],
    workers: int = 1,
    tietze_budget: int = DEFAULT_TIETZE_BUDGET,
    memo: Optional[PsiMemo] = None,
    abort_on_violation: bool = True,
) -> tuple[ScanSummary, list[GraphReport]]:
    """Check every graph; reports come back in input order whatever ``workers`` is.

    Raises :class:`BoundViolation` on the first failing graph unless
    ``abort_on_violation`` is False.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    summary = ScanSummary()
    reports: list[GraphReport] = []
    start = time.perf_counter()
    if workers == 1:
        memo = memo if memo is not None else PsiMemo()
        results: Iterable[GraphReport] = (check_lower_bound(g, memo, tietze_budget) for g in graphs)
        pool = None
    else:
        pool = ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(tietze_budget,))
        results = pool.map(_check_in_worker, list(graphs), chunksize=16)
    try:
        for r in results:
            reports.append(r)
            summary.add(r)
            if not r.bound_ok and abort_on_violation:
                raise BoundViolation(r)
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    summary.wall_time = time.perf_counter() - start
    return summary, reports


def write_report(reports: Iterable[GraphReport], summary: Optional[ScanSummary] = None,
                 tsv_path=None, summary_path=None) -> str:
    """TSV text (header plus one row per report). Written to ``tsv_path`` if
    given; the summary block goes to ``summary_path``."""
    text = "\t".join(TSV_COLUMNS) + "\n" + "".join(r.tsv_row() + "\n" for r in reports)
    if tsv_path is not None:
        with open(tsv_path, "w", newline="\n") as fh:
            fh.write(text)
    if summary_path is not None and summary is not None:
        with open(summary_path, "w", newline="\n") as fh:
            fh.write(summary.text())
    return text


# --------------------------------------------------------------------------
# presentation -> complex -> graph
# --------------------------------------------------------------------------

DEFAULT_PSI_CEILING = 10
DEFAULT_FACE_CEILING = 2000


class PipelineTooLarge(RuntimeError):
    pass


@dataclass
class PipelineReport:
    presentation: Presentation
    f_vector: list[int]
    abelianization: tuple[int, list[int]]
    edge_path_abelianization: tuple[int, list[int]]
    h1: tuple[int, list[int]]
    graph_n: int
    graph_m: int
    isomorphic: Optional[bool]
    psi: Optional[float]
    psi_note: str
    pi1: TriState

    @property
    def abelian_match(self) -> bool:
        return self.abelianization == self.edge_path_abelianization == self.h1

    @property
    def consistent(self) -> bool:
        """psi >= 1 forces simple connectivity; a 'no' there would contradict the bound."""
        return not (self.psi is not None and self.psi >= 1 and self.pi1.status == "no")

    @property
    def sign_agrees(self) -> Optional[bool]:
        """Whether 'psi > 0' matches the simple-connectivity verdict, when both are known."""
        if self.psi is None or self.pi1.status == "unknown":
            return None
        return (self.psi > 0) == (self.pi1.status == "yes")

    def lines(self) -> list[str]:
        iso = {True: "ok", False: "FAILED", None: "unknown (budget)"}[self.isomorphic]
        fr, tor = self.abelianization
        agree = self.sign_agrees
        return [
            f"presentation: {self.presentation}",
            f"complex f-vector: {self.f_vector}",
            f"abelianization: rank={fr} torsion={tor}",
            f"edge-path abelianization: rank={self.edge_path_abelianization[0]} "
            f"torsion={self.edge_path_abelianization[1]}",
            f"H1: betti={self.h1[0]} torsion={self.h1[1]}",
            f"abelian match: {'ok' if self.abelian_match else 'FAILED'}",
            f"graph: n={self.graph_n} m={self.graph_m}",
            f"isomorphism: {iso}",
            f"psi = {fmt_ext(self.psi)}" if self.psi is not None else f"psi: skipped ({self.psi_note})",
            f"pi1: {self.pi1.status.capitalize()}"
            + (f" ({self.pi1.witness})" if self.pi1.witness else ""),
            f"psi sign vs pi1: {'-' if agree is None else ('agree' if agree else 'disagree')}",
            f"consistent with bound: {'yes' if self.consistent else 'NO'}",
        ]


def pipeline_presentation(
    p: Presentation,
    psi_ceiling: int = DEFAULT_PSI_CEILING,
    face_ceiling: int = DEFAULT_FACE_CEILING,
    tietze_budget: int = DEFAULT_TIETZE_BUDGET,
    memo: Optional[PsiMemo] = None,
) -> PipelineReport:
    k = presentation_complex(p)
    n_faces = len(k.face_set)
    if n_faces > face_ceiling:
        raise PipelineTooLarge(f"presentation complex has {n_faces} faces (ceiling {face_ceiling})")
    h = reduced_homology(k)
    h1 = (h.betti[1], h.torsion[1]) if len(h.betti) > 1 else (0, [])
    g = complex_to_graph(k)
    ig = independence_complex(g)
    try:
        iso = is_isomorphic(ig, barycentric_subdivision(k))
    except IsomorphismBudgetExceeded as exc:
        log.warning("isomorphism check gave up: %s", exc)
        iso = None
    if g.n <= psi_ceiling:
        value, note = psi(g, memo), ""
    else:
        value, note = None, f"graph has {g.n} vertices, ceiling {psi_ceiling}"
    return PipelineReport(
        presentation=p,
        f_vector=k.f_vector(),
        abelianization=abelian_invariants(p),
        edge_path_abelianization=abelian_invariants(edge_path_presentation(k)),
        h1=h1,
        graph_n=g.n,
        graph_m=g.m,
        isomorphic=iso,
        psi=value,
        psi_note=note,
        pi1=simple_connectivity(ig, budget=tietze_budget),
    )
