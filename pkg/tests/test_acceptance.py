"""Acceptance suite.

Each test covers one numbered acceptance criterion and prints exactly one
PASS/FAIL line to the real terminal (bypassing pytest capture), so the
verdicts are visible in any run.  Tolerances are pinned here on purpose;
changing them is a contract change, not a refactor.

The exhaustive order-7 extension of criterion 7 enumerates about 2.1
million edge subsets and is opt-in: set RANDIC_SCAN_N7=1 to include it.
"""

import math
import os
import random
import time

import pytest

from randic.graphs import (
    Graph,
    encode_graph6,
    enumerate_connected_graphs,
    generate,
    parse_graph6,
    subdivision,
)
from randic.identities import (
    is_strongly_regular,
    local_condition_residuals,
    scan_small_graphs,
    verify_k_distinct_identity,
    verify_local_conditions,
)
from randic.linalg import cluster_distinct, symmetric_eigenvalues
from randic.spectra import perron_residual, randic_energy, randic_matrix, randic_spectrum

SWEEP_ORDERS = range(2, 7)
SCAN_CHECKS_USED = ("charpoly", "correspondence", "energy", "identity", "classification")
CONNECTED_COUNTS = {2: 1, 3: 4, 4: 38, 5: 728, 6: 26704, 7: 1866256}


def record(capfd, number, title, ok, detail):
    with capfd.disabled():
        print(f"ACCEPTANCE {number:02d} {title}: {'PASS' if ok else 'FAIL'} [{detail}]")
    assert ok, f"criterion {number} ({title}): {detail}"


@pytest.fixture(scope="session")
def scans():
    """Exhaustive single-threaded scans for orders 2..6, with timings."""
    out = {}
    for n in SWEEP_ORDERS:
        t0 = time.perf_counter()
        summary = scan_small_graphs(n, checks=SCAN_CHECKS_USED, jobs=1)
        out[n] = (summary, time.perf_counter() - t0)
    return out


@pytest.fixture(scope="session")
def sweep():
    """One pass over every connected graph of order 2..6 collecting the
    spectral hygiene aggregates and the perturbed-root negative control."""
    stats = {
        "graphs": 0,
        "worst_trace": 0.0,  # |sum of eigenvalues| / (n * 1e-9)
        "worst_leak": 0.0,  # how far any eigenvalue leaves [-1-1e-9, 1+1e-9]
        "worst_perron": 0.0,  # perron residual / (n * 1e-10)
        "worst_identity": 0.0,  # identity residual / (n^2 * 1e-8)
        "control_total": 0,
        "control_hits": 0,  # perturbed-root residual exceeded 1e-3
    }
    for n in SWEEP_ORDERS:
        for g in enumerate_connected_graphs(n):
            rho = symmetric_eigenvalues(randic_matrix(g))
            stats["graphs"] += 1
            stats["worst_trace"] = max(
                stats["worst_trace"], abs(math.fsum(rho)) / (n * 1e-9)
            )
            leak = max(rho[0] - (1 + 1e-9), (-1 - 1e-9) - rho[-1], 0.0)
            stats["worst_leak"] = max(stats["worst_leak"], leak)
            stats["worst_perron"] = max(
                stats["worst_perron"], perron_residual(g) / (n * 1e-10)
            )
            distinct, _ = cluster_distinct(rho)
            roots = tuple(distinct[1:])
            report = verify_k_distinct_identity(g, roots=roots)
            stats["worst_identity"] = max(
                stats["worst_identity"], report.residuals["identity"] / (n * n * 1e-8)
            )
            # corrupt one root but keep the graph's own constant, so the
            # corruption has to show up instead of rescaling both sides
            perturbed = (roots[0] + 0.01,) + roots[1:]
            control = verify_k_distinct_identity(
                g, roots=perturbed, constant=report.values["constant"]
            )
            stats["control_total"] += 1
            if control.residuals["identity"] > 1e-3:
                stats["control_hits"] += 1
    return stats


def test_01_star_subdivision_energy_closed_form(capfd):
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(3, 51):
        energy = randic_energy(subdivision(generate("star", n)))
        expected = math.sqrt(2) * n + 2 - 2 * math.sqrt(2)
        worst = max(worst, abs(energy - expected))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-9 and elapsed < 5.0
    record(
        capfd,
        1,
        "star subdivision energy closed form (n=3..50)",
        ok,
        f"worst dev {worst:.2e}, {elapsed:.2f}s",
    )


def test_02_complete_graph_spectrum(capfd):
    worst_value = worst_energy = 0.0
    clusters_ok = True
    for n in range(2, 13):
        s = randic_spectrum(generate("complete", n))
        clusters_ok = clusters_ok and s.k == 2 and s.multiplicities == (1, n - 1)
        worst_value = max(worst_value, abs(s.values[0] - 1.0))
        worst_value = max(
            worst_value, max(abs(v + 1.0 / (n - 1)) for v in s.values[1:])
        )
        worst_energy = max(
            worst_energy, abs(randic_energy(generate("complete", n)) - 2.0)
        )
    ok = clusters_ok and worst_value < 1e-10 and worst_energy < 1e-9
    record(
        capfd,
        2,
        "complete graph two-value spectrum (n=2..12)",
        ok,
        f"worst value dev {worst_value:.2e}, worst energy dev {worst_energy:.2e}",
    )


def test_03_subdivision_charpoly_exhaustive(capfd, scans):
    failures = sum(
        1
        for summary, _ in scans.values()
        for c in summary.counterexamples
        if c.check == "charpoly"
    )
    worst = max(
        summary.worst_residuals.get("charpoly.cross_multiplied", 0.0)
        for summary, _ in scans.values()
    )
    total_graphs = sum(summary.graph_count for summary, _ in scans.values())
    elapsed = sum(dt for _, dt in scans.values())
    ok = failures == 0 and worst < 1e-8 and elapsed < 120.0
    record(
        capfd,
        3,
        "subdivision charpoly identity on all connected graphs n<=6",
        ok,
        f"{total_graphs} graphs, worst residual {worst:.2e}, {elapsed:.1f}s",
    )


def test_04_eigenvalue_correspondence_exhaustive(capfd, scans):
    failures = sum(
        1
        for summary, _ in scans.values()
        for c in summary.counterexamples
        if c.check == "correspondence"
    )
    worst = max(
        summary.worst_residuals.get("correspondence.eigenvalue_match", 0.0)
        for summary, _ in scans.values()
    )
    ok = failures == 0 and worst < 1e-8
    record(
        capfd,
        4,
        "subdivision eigenvalue correspondence on all connected graphs n<=6",
        ok,
        f"worst per-entry deviation {worst:.2e}",
    )


def test_05_subdivision_energy_exhaustive(capfd, scans):
    failures = sum(
        1
        for summary, _ in scans.values()
        for c in summary.counterexamples
        if c.check == "energy"
    )
    worst = max(
        summary.worst_residuals.get("energy.energy_match", 0.0)
        for summary, _ in scans.values()
    )
    ok = failures == 0 and worst < 1e-9
    record(
        capfd,
        5,
        "subdivision energy formula on all connected graphs n<=6",
        ok,
        f"worst deviation {worst:.2e}",
    )


def test_06_rank_one_identity_and_negative_control(capfd, scans, sweep):
    scan_failures = sum(
        1
        for summary, _ in scans.values()
        for c in summary.counterexamples
        if c.check == "identity"
    )
    fraction = sweep["control_hits"] / sweep["control_total"]
    ok = (
        scan_failures == 0
        and sweep["worst_identity"] < 1.0
        and fraction >= 0.99
    )
    record(
        capfd,
        6,
        "rank-one product identity with perturbed-root control",
        ok,
        f"worst residual at {sweep['worst_identity']:.2e} of budget, "
        f"control caught {fraction:.4%}",
    )


def test_07_classification_scan(capfd, scans):
    problems = []
    for n in (5, 6):
        summary, _ = scans[n]
        bad = [c for c in summary.counterexamples if c.check == "classification"]
        if summary.graph_count != CONNECTED_COUNTS[n]:
            problems.append(f"order {n} count {summary.graph_count}")
        if bad:
            problems.append(f"order {n}: {len(bad)} classification failures")
    extra = "order 7 skipped (set RANDIC_SCAN_N7=1 to include)"
    if os.environ.get("RANDIC_SCAN_N7"):
        summary7 = scan_small_graphs(7, checks=("classification",), jobs=1)
        bad7 = [c for c in summary7.counterexamples if c.check == "classification"]
        if summary7.graph_count != CONNECTED_COUNTS[7]:
            problems.append(f"order 7 count {summary7.graph_count}")
        if bad7:
            problems.append(f"order 7: {len(bad7)} classification failures")
        extra = f"order 7 included: {summary7.graph_count} graphs"
    ok = not problems
    record(
        capfd,
        7,
        "distinct-count classification scan (complete/strongly-regular)",
        ok,
        "; ".join(problems) if problems else f"orders 5,6 clean; {extra}",
    )


def test_08_petersen_case_study(capfd):
    g = generate("petersen")
    s = randic_spectrum(g)
    target = [1.0] + [1.0 / 3.0] * 5 + [-2.0 / 3.0] * 4
    spectrum_dev = max(abs(a - b) for a, b in zip(s.values, target))
    params = is_strongly_regular(g)
    srg_ok = params is not None and (
        params.order,
        params.degree,
        params.adjacent_common,
        params.nonadjacent_common,
    ) == (10, 3, 0, 1)
    identity = verify_k_distinct_identity(g)
    c_dev = abs(identity.values["constant"] - 1.0 / 27.0)
    weighted = verify_local_conditions(g)
    counts = local_condition_residuals(g)
    literal_fails = counts["count_nonadjacent"] > 1e-8
    ok = (
        spectrum_dev < 1e-10
        and srg_ok
        and identity.residuals["identity"] < 1e-9
        and c_dev < 1e-12
        and weighted.passed
        and literal_fails
    )
    record(
        capfd,
        8,
        "Petersen case study",
        ok,
        f"spectrum dev {spectrum_dev:.2e}, c dev {c_dev:.2e}, "
        f"raw-count nonadjacent reading off by {counts['count_nonadjacent']:.3f} as expected",
    )


def test_09_numerical_hygiene(capfd, sweep):
    worst_trace = sweep["worst_trace"]
    worst_leak = sweep["worst_leak"]
    worst_perron = sweep["worst_perron"]
    named = (
        [generate("star", n) for n in range(3, 51)]
        + [generate("complete", n) for n in range(2, 13)]
        + [generate("petersen")]
    )
    for g in named:
        rho = symmetric_eigenvalues(randic_matrix(g))
        worst_trace = max(worst_trace, abs(math.fsum(rho)) / (g.n * 1e-9))
        worst_leak = max(
            worst_leak, rho[0] - (1 + 1e-9), (-1 - 1e-9) - rho[-1]
        )
        worst_perron = max(worst_perron, perron_residual(g) / (g.n * 1e-10))
    ok = worst_trace < 1.0 and worst_leak <= 0.0 and worst_perron < 1.0
    record(
        capfd,
        9,
        "trace, bounds, and positive-vector hygiene on every graph tested",
        ok,
        f"{sweep['graphs']} swept + {len(named)} named; trace at {worst_trace:.2e} "
        f"and perron at {worst_perron:.2e} of budget",
    )


def test_10_graph6_roundtrip(capfd):
    rng = random.Random(108301)
    failures = 0
    for _ in range(10_000):
        n = rng.randint(1, 20)
        p = rng.random()
        edges = [
            (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
        ]
        g = Graph.from_edges(n, edges)
        code = encode_graph6(g)
        back = parse_graph6(code)
        if back != g or encode_graph6(back) != code:
            failures += 1
    ok = failures == 0
    record(
        capfd,
        10,
        "graph6 encode/parse round-trip on 10,000 random graphs",
        ok,
        f"{failures} mismatches",
    )
