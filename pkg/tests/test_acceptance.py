"""Acceptance gate: one check per headline criterion, each printing a single
PASS/FAIL line. Run with ``pytest tests/test_acceptance.py`` or directly as a
script."""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from indcomplex.complex import (  # noqa: E402
    Presentation,
    SimplicialComplex,
    barycentric_subdivision,
    complex_to_graph,
    cone,
    independence_complex,
    is_isomorphic,
    presentation_complex,
    projective_plane,
    simplex_boundary,
)
from indcomplex.graph import Graph, enumerate_graphs  # noqa: E402
from indcomplex.homology import (  # noqa: E402
    IntMatrix,
    abelian_invariants,
    determinant,
    edge_path_presentation,
    reduced_homology,
    smith_normal_form,
)
from indcomplex.psi import INF, psi, psi_naive  # noqa: E402
from indcomplex.verify import is_chordal, pipeline_presentation, scan, write_report  # noqa: E402

from oracles import brute_class_count, complexes_up_to  # noqa: E402


def _report(name: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
    print(line)
    assert ok, line


def _time(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def check_psi_base_cases():
    ok = psi(Graph(0)) == -2 and all(psi(Graph(n)) == INF for n in range(1, 9))
    _report("psi base cases", ok, "psi(empty) = -2, psi(discrete n) = +inf for n = 1..8")


def check_oracle_equivalence():
    def run():
        counts, bad = {}, []
        for n in range(1, 6):
            for g in enumerate_graphs(n):
                counts[n] = counts.get(n, 0) + 1
                if psi(g) != psi_naive(g):
                    bad.append(g)
        return counts, bad

    (counts, bad), dt = _time(run)
    brute5 = brute_class_count(5)
    ok = not bad and counts[5] == 34 == brute5 and dt < 10
    _report(
        "oracle equivalence",
        ok,
        f"{sum(counts.values())} classes for n <= 5 ({counts[5]} at n = 5, brute force {brute5}), "
        f"{len(bad)} disagreements, {dt:.2f}s (limit 10s)",
    )


def _all_up_to(n_max):
    return [g for n in range(1, n_max + 1) for g in enumerate_graphs(n)]


def check_lower_bound_up_to_seven():
    graphs = _all_up_to(7)
    s1, r1 = scan(graphs, workers=1, abort_on_violation=False)
    s4, r4 = scan(graphs, workers=4, abort_on_violation=False)
    ok = (
        s1.total == 1252 and s1.violations == 0 and s4.violations == 0
        and s1.wall_time < 600 and s4.wall_time < 180
        and write_report(r1) == write_report(r4)
    )
    _report(
        "homology vanishes up to psi (n <= 7)",
        ok,
        f"{s1.total} graphs, {s1.violations} violations, "
        f"{s1.wall_time:.1f}s with 1 worker (limit 600s), {s4.wall_time:.1f}s with 4 (limit 180s)",
    )


def check_encoding_isomorphism():
    def run():
        classes = complexes_up_to(4)
        bad = [
            f for f in classes
            if not is_isomorphic(
                independence_complex(complex_to_graph(SimplicialComplex(f))),
                barycentric_subdivision(SimplicialComplex(f)),
            )
        ]
        return classes, bad

    (classes, bad), dt = _time(run)
    ok = not bad and dt < 60
    _report(
        "encoding isomorphism",
        ok,
        f"{len(classes)} complexes on <= 4 vertices, {len(bad)} failures, {dt:.2f}s (limit 60s)",
    )


def _dense_h(k):
    # independent route: dense SNF of every augmented boundary map
    from indcomplex.homology import boundary_matrix

    ranks, factors = [], []
    for d in range(k.dim + 2):
        m = boundary_matrix(k, d)
        fs = [x for x in smith_normal_form(m)[0].diagonal() if x] if m.rows and m.cols else []
        ranks.append(len(fs))
        factors.append(fs)
    f = k.f_vector()
    return (
        [f[d] - ranks[d] - ranks[d + 1] for d in range(k.dim + 1)],
        [[x for x in factors[d + 1] if x > 1] for d in range(k.dim + 1)],
    )


def check_homology_corpus():
    rp2 = projective_plane()
    corpus = {
        "triangle": (simplex_boundary(3), ([0, 1], [[], []])),
        "tetrahedron": (simplex_boundary(4), ([0, 0, 1], [[], [], []])),
        "rp2": (rp2, ([0, 0, 0], [[], [2], []])),
        "cone triangle": (cone(simplex_boundary(3)), ([0, 0, 0], [[], [], []])),
        "cone tetrahedron": (cone(simplex_boundary(4)), ([0] * 4, [[]] * 4)),
        "cone rp2": (cone(rp2), ([0] * 4, [[]] * 4)),
    }
    bad = []
    for name, (k, expected) in corpus.items():
        h = reduced_homology(k)
        hs = reduced_homology(barycentric_subdivision(k))
        got = (h.betti, h.torsion)
        if got != expected or got != _dense_h(k) or (hs.betti, hs.torsion) != got:
            bad.append(name)
    _report(
        "homology corpus",
        not bad,
        f"{len(corpus)} complexes checked against hand values, dense SNF and subdivision"
        + (f"; mismatches: {', '.join(bad)}" if bad else ""),
    )


def check_snf_certificates():
    rng = random.Random(0)
    failures = 0
    for size in range(1, 9):
        for _ in range(100):
            a = IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(size)] for _ in range(size)])
            d, u, v = smith_normal_form(a)
            diag = d.diagonal()
            nz = [x for x in diag if x]
            ok = (
                u @ a @ v == d
                and abs(determinant(u)) == 1 and abs(determinant(v)) == 1
                and all(d.data[i][j] == 0 for i in range(size) for j in range(size) if i != j)
                and all(x >= 0 for x in diag) and diag[: len(nz)] == nz
                and all(y % x == 0 for x, y in zip(nz, nz[1:]))
            )
            failures += not ok
    _report("SNF certificates", failures == 0,
            f"800 random matrices, sizes 1..8, entries in [-9, 9], {failures} failures")


def check_tightness_spot_checks():
    c5 = Graph.cycle(5)
    h = reduced_homology(independence_complex(c5))
    c5_ok = psi(c5) == 0 and h.betti[:2] == [0, 1] and h.torsion[1] == []
    chordal = [g for g in _all_up_to(6) if is_chordal(g)]
    summary, reports = scan(chordal)
    finite = [r for r in reports if r.psi != INF]
    flagged = [r for r in finite if r.gap_flag]
    for r in flagged:
        print(f"  gap candidate ({r.gap_grade}): {r.graph6} psi={r.psi}")
    graded = all(r.gap_grade in ("candidate", "review") for r in flagged)
    ok = c5_ok and summary.violations == 0 and graded
    _report(
        "tightness spot checks",
        ok,
        f"C5 psi=0 with reduced H1 = Z; {len(chordal)} chordal graphs on <= 6 vertices, "
        f"{len(finite)} with finite psi, {len(flagged)} gap candidates surfaced",
    )


def check_determinism():
    import tempfile

    graphs = _all_up_to(6)
    with tempfile.TemporaryDirectory() as d:
        blobs = []
        for w in (1, 4):
            summary, reports = scan(graphs, workers=w)
            tsv, txt = Path(d) / f"w{w}.tsv", Path(d) / f"w{w}.summary.txt"
            write_report(reports, summary, tsv, txt)
            blobs.append((tsv.read_bytes(), txt.read_bytes()))
    _report("determinism", blobs[0] == blobs[1],
            f"{len(graphs)} graphs, TSV and summary byte-identical for 1 and 4 workers")


def _random_presentations(count, seed=2):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        rels = tuple(
            tuple(rng.choice([1, -1]) * rng.randint(1, 2) for _ in range(rng.randint(1, 4)))
            for _ in range(rng.randint(1, 2))
        )
        out.append(Presentation(2, rels))
    return out


def check_presentation_pipeline():
    named = [Presentation(1, ((1,),)), Presentation(1), Presentation(1, ((1, 1),))]
    presentations = named + _random_presentations(10)

    def run():
        bad = []
        for p in presentations:
            k = presentation_complex(p)
            edge_path_ok = abelian_invariants(edge_path_presentation(k)) == abelian_invariants(p)
            r = pipeline_presentation(p)
            if not (edge_path_ok and r.abelian_match and r.isomorphic is True):
                bad.append(str(p))
        return bad

    bad, dt = _time(run)
    ok = not bad and dt < 60
    _report(
        "presentation pipeline",
        ok,
        f"{len(presentations)} presentations, {len(bad)} failures, {dt:.2f}s (limit 60s)"
        + (f"; failing: {'; '.join(bad)}" if bad else ""),
    )


CHECKS = [
    check_psi_base_cases,
    check_oracle_equivalence,
    check_lower_bound_up_to_seven,
    check_encoding_isomorphism,
    check_homology_corpus,
    check_snf_certificates,
    check_tightness_spot_checks,
    check_determinism,
    check_presentation_pipeline,
]


@pytest.mark.parametrize("check", CHECKS, ids=[c.__name__[len("check_"):] for c in CHECKS])
def test_criterion(check, capsys):
    with capsys.disabled():
        print()
        check()


if __name__ == "__main__":
    failed = 0
    for check in CHECKS:
        try:
            check()
        except AssertionError:
            failed += 1
    print(f"{len(CHECKS) - failed}/{len(CHECKS)} criteria passed")
    sys.exit(1 if failed else 0)
