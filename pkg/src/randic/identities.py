"""Mechanical verification of structural identities of R = D^(-1/2)AD^(-1/2).

Every check returns a VerificationReport whose ``passed`` flag is exactly
"all residuals below the report tolerance".  Checks never round a failure
away: numerical trouble raises, and a genuinely violated identity shows up
as a large residual, not an exception.

The subdivision checks compare a graph G (n vertices, m edges) against the
graph S obtained by placing one new vertex on every edge:

* charpoly:        2^n x^n phi_R(S; x)  ==  x^m phi_Q(G; 2 x^2)
                   where phi_Q is the characteristic polynomial of I + R(G),
                   equivalently [x^(n+m-2i)] phi_R(S) == 2^(-i) [x^(n-i)] phi_Q
* correspondence:  eigenvalues of R(S) are +-sqrt(theta/2) over the spectrum
                   theta of I + R(G), padded with zeros to length n + m
* energy:          sum |rho(S)| == sqrt(2) * sum sqrt(theta)

The rank-one check: for connected G with distinct R-eigenvalues
rho_1 = 1 > rho_2 > ... > rho_k,

    prod_{i=2..k} (R - rho_i I)  ==  c * a a^T,   a = (sqrt(d_1), ..., sqrt(d_n)),
    c = prod_{i=2..k} (1 - rho_i) / (2m),

with the left side also required to be nonzero (no factor can be dropped).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError, PreconditionError
from .graphs import (
    Graph,
    _connected_masks,
    edge_mask_count,
    encode_graph6,
    is_connected,
    subdivision,
)
from .linalg import (
    CLUSTER_TOL,
    Polynomial,
    charpoly_from_eigenvalues,
    cluster_distinct,
    coefficient_residual,
    product_over_roots,
    substitute_quadratic,
    symmetric_eigenvalues,
)
from .spectra import energy_of, normalized_signless_laplacian, randic_matrix

CHARPOLY_TOL = 1e-8
CORRESPONDENCE_TOL = 1e-8
ENERGY_TOL = 1e-9
IDENTITY_TOL_SCALE = 1e-8  # multiplied by n^2
LOCAL_TOL = 1e-8

# Eigenvalues of I + R this close to zero are treated as exact zeros before
# taking square roots; otherwise solver noise of order 1e-15 turns into
# sqrt-noise of order 3e-8 and drowns the real residuals.
ZERO_EIGENVALUE_SLACK = 1e-9


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one identity check on one graph.

    ``passed`` is true exactly when every entry of ``residuals`` is below
    ``tolerance``.  ``values`` carries informational quantities (constants,
    energies, counts) that are not part of the verdict.
    """

    name: str
    passed: bool
    tolerance: float
    residuals: dict[str, float]
    values: dict[str, float] = field(default_factory=dict)
    detail: str = ""


def _report(
    name: str,
    tolerance: float,
    residuals: dict[str, float],
    values: dict[str, float] | None = None,
    detail: str = "",
) -> VerificationReport:
    passed = all(r < tolerance for r in residuals.values())
    return VerificationReport(
        name=name,
        passed=passed,
        tolerance=tolerance,
        residuals=residuals,
        values=values or {},
        detail=detail,
    )


def _clamp_small(values: np.ndarray, slack: float = ZERO_EIGENVALUE_SLACK) -> np.ndarray:
    """Zero out entries within ``slack`` of zero; reject anything below
    -slack, which would mean the solver returned a nonsense spectrum for a
    positive semidefinite matrix."""
    out = np.where(np.abs(values) <= slack, 0.0, values)
    if np.any(out < 0.0):
        worst = float(np.min(out))
        raise ConvergenceError(
            f"eigenvalue {worst:.3e} of I + R is negative beyond slack {slack:g}"
        )
    return out


def _signless_values(g: Graph) -> np.ndarray:
    """Spectrum of I + R(G), descending, with near-zeros clamped to zero."""
    return _clamp_small(symmetric_eigenvalues(normalized_signless_laplacian(g)))


# ---------------------------------------------------------------------------
# Subdivision checks
# ---------------------------------------------------------------------------


def _charpoly_residuals(
    g: Graph, theta: np.ndarray, rho_s: np.ndarray
) -> dict[str, float]:
    n, m = g.n, g.m
    phi_s = charpoly_from_eigenvalues(rho_s)
    phi_q = charpoly_from_eigenvalues(theta)
    lhs = phi_s.shifted(n).scaled(float(2**n))
    rhs = substitute_quadratic(phi_q, 2.0).shifted(m)
    cross = coefficient_residual(lhs, rhs)

    # Same identity read off coefficient by coefficient: the x^(n+m-2i)
    # coefficient of phi_R(S) must equal 2^(-i) times the x^(n-i)
    # coefficient of phi_Q, for i = 0..n.
    worst = 0.0
    largest = 1.0
    for i in range(n + 1):
        a = phi_s.coefficient(n + m - 2 * i)
        b = phi_q.coefficient(n - i) / float(2**i)
        worst = max(worst, abs(a - b))
        largest = max(largest, abs(a), abs(b))
    return {"cross_multiplied": cross, "coefficient_positions": worst / largest}


def verify_subdivision_charpoly(
    g: Graph, subdivided: Graph | None = None
) -> VerificationReport:
    """Check the characteristic-polynomial identity between G and its
    subdivision.  ``subdivided`` substitutes a claimed subdivision graph in
    place of the constructed one (useful as a negative control)."""
    if g.m == 0:
        raise PreconditionError("subdivision checks need at least one edge")
    s = subdivision(g) if subdivided is None else subdivided
    theta = _signless_values(g)
    rho_s = symmetric_eigenvalues(randic_matrix(s))
    # a wrong-order claimed subdivision still compares cleanly: coefficient
    # lookups past a polynomial's stored degree read as zero
    residuals = _charpoly_residuals(g, theta, rho_s)
    return _report("subdivision-charpoly", CHARPOLY_TOL, residuals)


def _correspondence_residual(g: Graph, theta: np.ndarray, rho_s: np.ndarray) -> float:
    total = g.n + g.m
    nonzero = [t for t in theta.tolist() if t > 0.0]
    expected = []
    for t in nonzero:
        r = math.sqrt(t / 2.0)
        expected.append(r)
        expected.append(-r)
    pad = total - len(expected)
    if pad < 0:
        raise ConvergenceError(
            "spectrum of I + R has fewer zeros than the subdivision order requires"
        )
    expected.extend([0.0] * pad)
    expected.sort()
    actual = np.sort(rho_s)
    return float(np.max(np.abs(actual - np.array(expected))))


def verify_eigenvalue_correspondence(
    g: Graph, subdivided: Graph | None = None
) -> VerificationReport:
    """Check that R(S) has exactly the eigenvalues +-sqrt(theta/2), padded
    with zeros, where theta runs over the spectrum of I + R(G)."""
    if g.m == 0:
        raise PreconditionError("subdivision checks need at least one edge")
    s = subdivision(g) if subdivided is None else subdivided
    theta = _signless_values(g)
    rho_s = symmetric_eigenvalues(randic_matrix(s))
    if len(rho_s) != g.n + g.m:
        return _report(
            "subdivision-correspondence",
            CORRESPONDENCE_TOL,
            {"order_mismatch": float(abs(len(rho_s) - (g.n + g.m)))},
            detail="claimed subdivision has the wrong number of vertices",
        )
    residual = _correspondence_residual(g, theta, rho_s)
    return _report(
        "subdivision-correspondence",
        CORRESPONDENCE_TOL,
        {"eigenvalue_match": residual},
    )


def _energy_residuals(theta: np.ndarray, rho_s: np.ndarray) -> dict[str, float]:
    direct = energy_of(rho_s)
    closed = math.sqrt(2.0) * math.fsum(math.sqrt(t) for t in theta.tolist())
    return {"energy_match": abs(direct - closed)}


def verify_subdivision_energy(
    g: Graph, subdivided: Graph | None = None
) -> VerificationReport:
    """Check sum |rho(S)| == sqrt(2) * sum sqrt(theta) for the subdivision."""
    if g.m == 0:
        raise PreconditionError("subdivision checks need at least one edge")
    s = subdivision(g) if subdivided is None else subdivided
    theta = _signless_values(g)
    rho_s = symmetric_eigenvalues(randic_matrix(s))
    residuals = _energy_residuals(theta, rho_s)
    direct = energy_of(rho_s)
    return _report(
        "subdivision-energy",
        ENERGY_TOL,
        residuals,
        values={"energy": direct},
    )


# ---------------------------------------------------------------------------
# Rank-one product identity over the distinct eigenvalues
# ---------------------------------------------------------------------------


def verify_k_distinct_identity(
    g: Graph,
    roots: Sequence[float] | None = None,
    constant: float | None = None,
    cluster_tol: float = CLUSTER_TOL,
) -> VerificationReport:
    """Check prod_{i>=2} (R - rho_i I) == c a a^T on a connected graph.

    ``roots`` overrides the computed distinct eigenvalues rho_2..rho_k, so a
    deliberately wrong list demonstrates the check can fail.  ``constant``
    pins c instead of deriving it from the root list; pinning it to the
    graph's true value makes a single corrupted root reliably visible,
    whereas a rederived c shifts both sides together and can mask most of
    the damage.  The reported residuals include a minimality term that
    fails when the product is the zero matrix, i.e. when the root list is
    too long.
    """
    if not is_connected(g):
        raise PreconditionError("the rank-one identity needs a connected graph")
    if g.m == 0:
        raise PreconditionError("the rank-one identity needs at least one edge")
    r = randic_matrix(g)
    tolerance = IDENTITY_TOL_SCALE * g.n * g.n
    if roots is None:
        distinct, _ = cluster_distinct(symmetric_eigenvalues(r), cluster_tol)
        if abs(distinct[0] - 1.0) > tolerance:
            raise ConvergenceError(
                f"largest eigenvalue {distinct[0]!r} is not 1 within tolerance"
            )
        roots = distinct[1:]
    roots = tuple(float(x) for x in roots)
    product = product_over_roots(r, roots)
    c = (
        constant
        if constant is not None
        else math.prod(1.0 - x for x in roots) / (2.0 * g.m)
    )
    alpha = np.sqrt(np.array(g.degrees, dtype=np.float64))
    target = c * np.outer(alpha, alpha)
    identity = float(np.max(np.abs(product - target)))
    # passed requires max|product| > tolerance, phrased as a residual so the
    # report invariant stays "all residuals below tolerance"
    peak = float(np.max(np.abs(product)))
    minimality = max(0.0, 2.0 * tolerance - peak)
    return _report(
        "rank-one-identity",
        tolerance,
        {"identity": identity, "minimality": minimality},
        values={"constant": c, "distinct_count": float(len(roots) + 1)},
        detail=f"roots used: {', '.join(repr(x) for x in roots)}",
    )


# ---------------------------------------------------------------------------
# Classification by the number of distinct eigenvalues
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SrgParameters:
    """Parameters of a strongly regular graph: order, common degree, and
    the common-neighbor counts for adjacent and nonadjacent pairs."""

    order: int
    degree: int
    adjacent_common: int
    nonadjacent_common: int


def is_strongly_regular(g: Graph) -> SrgParameters | None:
    """Structural test, no spectra involved.

    Requires connected, regular, neither complete nor edgeless, and uniform
    common-neighbor counts over adjacent pairs and over nonadjacent pairs.
    """
    if g.n < 2 or not is_connected(g) or not g.is_regular():
        return None
    if g.m == 0 or g.m == g.n * (g.n - 1) // 2:
        return None
    adjacent: set[int] = set()
    nonadjacent: set[int] = set()
    for i in range(g.n):
        ni = g.neighbors(i)
        for j in range(i + 1, g.n):
            count = len(ni & g.neighbors(j))
            (adjacent if j in ni else nonadjacent).add(count)
            if len(adjacent) > 1 or len(nonadjacent) > 1:
                return None
    return SrgParameters(
        order=g.n,
        degree=g.degrees[0],
        adjacent_common=adjacent.pop(),
        nonadjacent_common=nonadjacent.pop(),
    )


@dataclass(frozen=True)
class Classification:
    """Spectral head-count of a connected graph set against its structure."""

    distinct_count: int
    is_complete: bool
    is_regular: bool
    srg: SrgParameters | None
    consistent: bool
    detail: str


def classify_distinct_count(g: Graph, cluster_tol: float = CLUSTER_TOL) -> Classification:
    """Count distinct R-eigenvalues and test the structural equivalences:
    two distinct values exactly for complete graphs, and, among regular
    graphs, three distinct values exactly for strongly regular ones."""
    if not is_connected(g):
        raise PreconditionError("classification needs a connected graph")
    if g.n < 2:
        raise PreconditionError("classification needs at least two vertices")
    distinct, _ = cluster_distinct(symmetric_eigenvalues(randic_matrix(g)), cluster_tol)
    k = len(distinct)
    complete = g.m == g.n * (g.n - 1) // 2
    regular = g.is_regular()
    srg = is_strongly_regular(g)
    two_ok = (k == 2) == complete
    three_ok = (regular and k == 3) == (srg is not None)
    consistent = two_ok and three_ok
    parts = [f"k={k}", f"complete={complete}", f"regular={regular}"]
    if srg is not None:
        parts.append(
            f"srg=({srg.order},{srg.degree},{srg.adjacent_common},{srg.nonadjacent_common})"
        )
    return Classification(
        distinct_count=k,
        is_complete=complete,
        is_regular=regular,
        srg=srg,
        consistent=consistent,
        detail=" ".join(parts),
    )


# ---------------------------------------------------------------------------
# Local (entrywise) conditions for exactly three distinct eigenvalues
# ---------------------------------------------------------------------------


def local_condition_residuals(
    g: Graph, cluster_tol: float = CLUSTER_TOL
) -> dict[str, float]:
    """Residuals of the entrywise conditions on a connected graph with
    exactly three distinct R-eigenvalues 1 > rho_2 > rho_3.

    With c the rank-one constant, the diagonal of the expanded product
    forces, at every vertex i,

        sum_{j ~ i} 1/d_j  ==  c d_i^2 - rho_2 rho_3 d_i

    and the off-diagonal entries force, over common neighbors k of i, j,

        sum 1/d_k  ==  c d_i d_j + rho_2 + rho_3   (i, j adjacent)
        sum 1/d_k  ==  c d_i d_j                   (i, j nonadjacent).

    The plain common-neighbor counts satisfy the same right-hand sides only
    in special cases, so their residuals are reported separately under the
    ``count_*`` keys; they are informational, not part of any verdict.
    """
    if not is_connected(g):
        raise PreconditionError("local conditions need a connected graph")
    distinct, _ = cluster_distinct(symmetric_eigenvalues(randic_matrix(g)), cluster_tol)
    if len(distinct) != 3:
        raise PreconditionError(
            f"local conditions need exactly three distinct eigenvalues, got {len(distinct)}"
        )
    rho2, rho3 = distinct[1], distinct[2]
    c = (1.0 - rho2) * (1.0 - rho3) / (2.0 * g.m)
    deg = g.degrees
    worst_degree = 0.0
    for i in range(g.n):
        lhs = math.fsum(1.0 / deg[j] for j in g.neighbors(i))
        rhs = c * deg[i] ** 2 - rho2 * rho3 * deg[i]
        worst_degree = max(worst_degree, abs(lhs - rhs))
    worst_adj = worst_nonadj = 0.0
    worst_adj_count = worst_nonadj_count = 0.0
    for i in range(g.n):
        ni = g.neighbors(i)
        for j in range(i + 1, g.n):
            common = ni & g.neighbors(j)
            weighted = math.fsum(1.0 / deg[k] for k in common)
            count = float(len(common))
            if j in ni:
                rhs = c * deg[i] * deg[j] + rho2 + rho3
                worst_adj = max(worst_adj, abs(weighted - rhs))
                worst_adj_count = max(worst_adj_count, abs(count - rhs))
            else:
                rhs = c * deg[i] * deg[j]
                worst_nonadj = max(worst_nonadj, abs(weighted - rhs))
                worst_nonadj_count = max(worst_nonadj_count, abs(count - rhs))
    return {
        "degree_sums": worst_degree,
        "adjacent_weighted": worst_adj,
        "nonadjacent_weighted": worst_nonadj,
        "count_adjacent": worst_adj_count,
        "count_nonadjacent": worst_nonadj_count,
    }


def verify_local_conditions(g: Graph, cluster_tol: float = CLUSTER_TOL) -> VerificationReport:
    """Report form of the three-eigenvalue local conditions.

    The verdict covers the degree-sum condition and the two weighted
    common-neighborhood conditions.  The raw-count variants are surfaced in
    ``values`` and ``detail`` only, since they fail on ordinary graphs."""
    res = local_condition_residuals(g, cluster_tol)
    verdict = {
        "degree_sums": res["degree_sums"],
        "adjacent_weighted": res["adjacent_weighted"],
        "nonadjacent_weighted": res["nonadjacent_weighted"],
    }
    info = {
        "count_adjacent": res["count_adjacent"],
        "count_nonadjacent": res["count_nonadjacent"],
    }
    return _report(
        "three-eigenvalue-local",
        LOCAL_TOL,
        verdict,
        values=info,
        detail=(
            "plain common-neighbor counts deviate by "
            f"{max(info.values()):.3g} at worst (informational)"
        ),
    )


# ---------------------------------------------------------------------------
# Exhaustive scan over all connected graphs of one order
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    graph6: str
    check: str
    residuals: dict[str, float]


@dataclass(frozen=True)
class ScanSummary:
    order: int
    checks: tuple[str, ...]
    graph_count: int
    counterexamples: tuple[Counterexample, ...]
    worst_residuals: dict[str, float]
    lowest_energy: tuple[str, float] | None = None
    highest_energy: tuple[str, float] | None = None

    @property
    def passed(self) -> bool:
        return not self.counterexamples


SCAN_CHECKS = (
    "charpoly",
    "correspondence",
    "energy",
    "identity",
    "classification",
    "local",
)


def _scan_one(
    g: Graph, checks: Sequence[str]
) -> tuple[list[tuple[str, bool, dict[str, float]]], float | None]:
    """Run the requested checks on one graph, sharing eigensolves.

    Returns (per-check outcomes, direct R-energy of the graph); the energy
    is computed only when at least one spectral quantity was needed anyway.
    """
    r = randic_matrix(g)
    rho = symmetric_eigenvalues(r)
    energy = energy_of(rho)
    need_subdivision = any(c in checks for c in ("charpoly", "correspondence", "energy"))
    theta = rho_s = None
    if need_subdivision:
        theta = _clamp_small(1.0 + rho)
        rho_s = symmetric_eigenvalues(randic_matrix(subdivision(g)))
    outcomes: list[tuple[str, bool, dict[str, float]]] = []
    for name in checks:
        if name == "charpoly":
            res = _charpoly_residuals(g, theta, rho_s)
            outcomes.append((name, all(v < CHARPOLY_TOL for v in res.values()), res))
        elif name == "correspondence":
            res = {"eigenvalue_match": _correspondence_residual(g, theta, rho_s)}
            outcomes.append((name, res["eigenvalue_match"] < CORRESPONDENCE_TOL, res))
        elif name == "energy":
            res = _energy_residuals(theta, rho_s)
            outcomes.append((name, res["energy_match"] < ENERGY_TOL, res))
        elif name == "identity":
            report = verify_k_distinct_identity(g)
            outcomes.append((name, report.passed, report.residuals))
        elif name == "classification":
            cls = classify_distinct_count(g)
            outcomes.append(
                (name, cls.consistent, {"consistent": 0.0 if cls.consistent else 1.0})
            )
        elif name == "local":
            distinct, _ = cluster_distinct(rho, CLUSTER_TOL)
            if len(distinct) == 3:
                res = local_condition_residuals(g)
                verdict = {
                    k: res[k]
                    for k in ("degree_sums", "adjacent_weighted", "nonadjacent_weighted")
                }
                outcomes.append((name, all(v < LOCAL_TOL for v in verdict.values()), verdict))
        else:
            raise ValueError(f"unknown scan check {name!r}")
    return outcomes, energy


def _merge_extreme(
    current: tuple[str, float] | None, candidate: tuple[str, float], better: Callable
) -> tuple[str, float]:
    if current is None or better(candidate[1], current[1]):
        return candidate
    return current


def _scan_range(
    order: int, start: int, stop: int, checks: tuple[str, ...], rank_energy: bool
) -> dict:
    count = 0
    counterexamples: list[Counterexample] = []
    worst: dict[str, float] = {}
    low = high = None
    for _, edges in _connected_masks(order, start, stop):
        g = Graph(order, edges)
        outcomes, energy = _scan_one(g, checks)
        count += 1
        code = None
        for name, passed, residuals in outcomes:
            for key, value in residuals.items():
                label = f"{name}.{key}"
                if label not in worst or value > worst[label]:
                    worst[label] = value
            if not passed:
                if code is None:
                    code = encode_graph6(g)
                counterexamples.append(Counterexample(code, name, dict(residuals)))
        if rank_energy:
            code = code or encode_graph6(g)
            low = _merge_extreme(low, (code, energy), lambda a, b: a < b)
            high = _merge_extreme(high, (code, energy), lambda a, b: a > b)
    return {
        "count": count,
        "counterexamples": counterexamples,
        "worst": worst,
        "low": low,
        "high": high,
    }


def scan_small_graphs(
    order: int,
    checks: Sequence[str] = SCAN_CHECKS,
    jobs: int = 1,
    rank_energy: bool = False,
) -> ScanSummary:
    """Run the chosen checks over every labeled connected graph of the
    given order (2..7) and aggregate the outcome.

    The enumeration walks edge-subset masks in increasing order, so results
    are deterministic; with ``jobs`` > 1 the mask range is split into
    contiguous chunks whose partial results merge in range order, keeping
    the output identical to a serial run.  ``rank_energy`` additionally
    records the graphs of smallest and largest R-energy (first such graph
    in mask order on ties).
    """
    checks = tuple(checks)
    unknown = [c for c in checks if c not in SCAN_CHECKS]
    if unknown:
        raise ValueError(f"unknown scan checks: {', '.join(unknown)}")
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    if not 2 <= order <= 7:
        raise ValueError(f"scan supports orders 2..7, got {order}")
    total = edge_mask_count(order)
    if jobs == 1:
        parts = [_scan_range(order, 0, total, checks, rank_energy)]
    else:
        bounds = [total * i // jobs for i in range(jobs + 1)]
        spans = [
            (order, bounds[i], bounds[i + 1], checks, rank_energy)
            for i in range(jobs)
            if bounds[i] < bounds[i + 1]
        ]
        with ProcessPoolExecutor(max_workers=len(spans)) as pool:
            parts = list(pool.map(_scan_range_star, spans))
    count = 0
    counterexamples: list[Counterexample] = []
    worst: dict[str, float] = {}
    low = high = None
    for part in parts:
        count += part["count"]
        counterexamples.extend(part["counterexamples"])
        for key, value in part["worst"].items():
            if value > worst.get(key, 0.0):
                worst[key] = value
        if part["low"] is not None:
            low = _merge_extreme(low, part["low"], lambda a, b: a < b)
        if part["high"] is not None:
            high = _merge_extreme(high, part["high"], lambda a, b: a > b)
    return ScanSummary(
        order=order,
        checks=checks,
        graph_count=count,
        counterexamples=tuple(counterexamples),
        worst_residuals={k: worst[k] for k in sorted(worst)},
        lowest_energy=low,
        highest_energy=high,
    )


def _scan_range_star(args: tuple) -> dict:
    return _scan_range(*args)


__all__ = [
    "VerificationReport",
    "SrgParameters",
    "Classification",
    "Counterexample",
    "ScanSummary",
    "SCAN_CHECKS",
    "CHARPOLY_TOL",
    "CORRESPONDENCE_TOL",
    "ENERGY_TOL",
    "IDENTITY_TOL_SCALE",
    "LOCAL_TOL",
    "ZERO_EIGENVALUE_SLACK",
    "verify_subdivision_charpoly",
    "verify_eigenvalue_correspondence",
    "verify_subdivision_energy",
    "verify_k_distinct_identity",
    "verify_local_conditions",
    "local_condition_residuals",
    "classify_distinct_count",
    "is_strongly_regular",
    "scan_small_graphs",
]
