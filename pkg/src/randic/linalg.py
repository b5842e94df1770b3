"""Dense symmetric eigensolver and small polynomial utilities.

The eigensolver is a cyclic Jacobi iteration: full matrix storage, plane
rotations applied in row-major pair order, convergence declared when the
off-diagonal Frobenius mass drops below ``1e-12 * max(1, ||M||_F)``.  Two
interchangeable implementations exist, a numba-compiled kernel and a pure
numpy one, sharing the algorithm exactly; failure to converge within the
sweep cap raises ConvergenceError rather than returning junk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ConvergenceError

DEFAULT_MAX_SWEEPS = 100
CONVERGENCE_RTOL = 1e-12
CLUSTER_TOL = 1e-7

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency
    _HAVE_NUMBA = False


def _offdiagonal_norm(a: np.ndarray) -> float:
    n = a.shape[0]
    total = 0.0
    for p in range(n - 1):
        for q in range(p + 1, n):
            total += a[p, q] * a[p, q]
    return math.sqrt(2.0 * total)


def _jacobi_numpy(a: np.ndarray, max_sweeps: int, target: float) -> bool:
    """Reference implementation; mutates ``a`` toward diagonal form."""
    n = a.shape[0]
    if n < 2:
        return True
    idx = np.arange(n)
    for _ in range(max_sweeps):
        off = math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))
        if off < target:
            return True
        skip = target / n
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                theta = (aqq - app) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (
                    abs(theta) + math.sqrt(theta * theta + 1.0)
                )
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                rest = (idx != p) & (idx != q)
                akp = a[rest, p].copy()
                akq = a[rest, q].copy()
                a[rest, p] = akp - s * (akq + tau * akp)
                a[rest, q] = akq + s * (akp - tau * akq)
                a[p, rest] = a[rest, p]
                a[q, rest] = a[rest, q]
    return math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2))) < target


if _HAVE_NUMBA:

    @njit(cache=True)
    def _jacobi_compiled(a, max_sweeps, target):  # pragma: no cover - jitted
        n = a.shape[0]
        if n < 2:
            return True
        for _ in range(max_sweeps):
            off = 0.0
            for p in range(n - 1):
                for q in range(p + 1, n):
                    off += a[p, q] * a[p, q]
            if math.sqrt(2.0 * off) < target:
                return True
            skip = target / n
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if abs(apq) <= skip:
                        continue
                    app = a[p, p]
                    aqq = a[q, q]
                    theta = (aqq - app) / (2.0 * apq)
                    if theta >= 0.0:
                        t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                    else:
                        t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                    c = 1.0 / math.sqrt(t * t + 1.0)
                    s = t * c
                    tau = s / (1.0 + c)
                    a[p, p] = app - t * apq
                    a[q, q] = aqq + t * apq
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    for k in range(n):
                        if k != p and k != q:
                            akp = a[k, p]
                            akq = a[k, q]
                            a[k, p] = akp - s * (akq + tau * akp)
                            a[k, q] = akq + s * (akp - tau * akq)
                            a[p, k] = a[k, p]
                            a[q, k] = a[k, q]
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        return math.sqrt(2.0 * off) < target


def symmetric_eigenvalues(
    m: np.ndarray,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
    use_compiled: bool | None = None,
) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix, sorted descending.

    ``use_compiled`` picks the kernel: None prefers the numba build when
    importable, True insists on it, False forces the numpy path.  Raises
    ConvergenceError if the sweep cap is exhausted.
    """
    a = np.asarray(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.size and not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    scale = float(np.linalg.norm(a)) if a.size else 0.0
    if a.size:
        asym = float(np.max(np.abs(a - a.T)))
        if asym > 1e-8 * max(1.0, scale):
            raise ValueError(f"matrix is not symmetric (max asymmetry {asym:.3e})")
    work = np.ascontiguousarray(0.5 * (a + a.T))
    target = CONVERGENCE_RTOL * max(1.0, scale)
    if use_compiled is None:
        use_compiled = _HAVE_NUMBA
    if use_compiled and not _HAVE_NUMBA:
        raise RuntimeError("compiled eigensolver requested but numba is unavailable")
    runner = _jacobi_compiled if use_compiled else _jacobi_numpy
    if not runner(work, max_sweeps, target):
        raise ConvergenceError(
            f"Jacobi sweep cap of {max_sweeps} reached without convergence "
            f"(order {a.shape[0]})"
        )
    return np.sort(np.diagonal(work))[::-1].copy()


def warm_eigensolver() -> None:
    """Force numba compilation up front so later timings exclude it."""
    symmetric_eigenvalues(np.array([[0.0, 1.0], [1.0, 0.0]]))


def cluster_distinct(
    values: Iterable[float], tol: float = CLUSTER_TOL
) -> tuple[tuple[float, ...], tuple[int, ...]]:
    """Collapse near-equal values into (representatives, multiplicities).

    Values are grouped descending with a greedy gap rule: a value joins the
    current cluster when it sits within ``tol`` of the cluster's most recent
    member.  Each representative is the cluster mean, which keeps the
    operation idempotent for well separated spectra.
    """
    vals = sorted(values, reverse=True)
    if not vals:
        return (), ()
    clusters: list[list[float]] = [[vals[0]]]
    for v in vals[1:]:
        if clusters[-1][-1] - v <= tol:
            clusters[-1].append(v)
        else:
            clusters.append([v])
    reps = tuple(math.fsum(c) / len(c) for c in clusters)
    mults = tuple(len(c) for c in clusters)
    return reps, mults


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of one symmetric matrix, with multiplicity clustering."""

    values: tuple[float, ...]
    distinct: tuple[float, ...]
    multiplicities: tuple[int, ...]

    @property
    def k(self) -> int:
        """Number of distinct eigenvalues."""
        return len(self.distinct)


def eigenvalues(m: np.ndarray, tol: float = CLUSTER_TOL) -> Spectrum:
    vals = symmetric_eigenvalues(m)
    distinct, mults = cluster_distinct(vals, tol)
    return Spectrum(tuple(vals.tolist()), distinct, mults)


# ---------------------------------------------------------------------------
# Polynomials with ascending coefficients: coeffs[k] multiplies x**k.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("polynomial needs at least a constant coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def scaled(self, factor: float) -> "Polynomial":
        return Polynomial(tuple(factor * c for c in self.coeffs))

    def shifted(self, k: int) -> "Polynomial":
        """Multiply by x**k."""
        if k < 0:
            raise ValueError("shift must be non-negative")
        return Polynomial((0.0,) * k + self.coeffs)

    def coefficient(self, k: int) -> float:
        """Coefficient of x**k, zero beyond the stored degree."""
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0.0


def charpoly_from_eigenvalues(values: Sequence[float]) -> Polynomial:
    """Monic polynomial with the given roots, prod (x - r), expanded."""
    desc = np.poly(np.asarray(values, dtype=np.float64)) if len(values) else np.array([1.0])
    return Polynomial(tuple(desc[::-1].tolist()))


def substitute_quadratic(p: Polynomial, a: float) -> Polynomial:
    """Expand p(a * x**2) as a polynomial in x."""
    out = [0.0] * (2 * p.degree + 1)
    for k, ck in enumerate(p.coeffs):
        out[2 * k] = ck * a**k
    return Polynomial(tuple(out))


def coefficient_residual(p: Polynomial, q: Polynomial) -> float:
    """Worst coefficient gap between two polynomials, relative to the
    largest coefficient magnitude present (floored at 1)."""
    width = max(len(p.coeffs), len(q.coeffs))
    worst = 0.0
    largest = 1.0
    for k in range(width):
        a = p.coefficient(k)
        b = q.coefficient(k)
        worst = max(worst, abs(a - b))
        largest = max(largest, abs(a), abs(b))
    return worst / largest


def product_over_roots(m: np.ndarray, roots: Sequence[float]) -> np.ndarray:
    """Evaluate prod_i (M - r_i I) by repeated multiplication, in order."""
    n = m.shape[0]
    out = np.eye(n)
    eye = np.eye(n)
    for r in roots:
        out = out @ (m - r * eye)
    return out
