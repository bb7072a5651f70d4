"""Seeded random-matrix ensembles and empirical spectral statistics.

Draw ``r`` of an ensemble always comes from the child stream ``(seed, r)``,
so results do not depend on how draws are batched or ordered.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import partitions as P
from .errors import NonHermitianEnsemble
from .laws import DensityLaw, MomentSequence
from .numeric import Rng, complex_gaussians, gaussians, hermitian_eigvals

__all__ = [
    "EnsembleSpec", "EmpiricalStats", "sample", "sample_batch", "scale_factor",
    "partial_transpose", "empirical_moment", "eigen_histogram", "compare",
    "histogram_l1", "monomial_average", "stats_json", "histogram_csv",
]

KINDS = ("complex_gaussian", "wigner", "wishart", "block_wishart", "haar_orthogonal", "haar_unitary")
HERMITIAN = ("wigner", "wishart", "block_wishart")
SCALINGS = ("by_sqrtN", "by_N", "by_d", "by_dm", "none")


@dataclass(frozen=True)
class EnsembleSpec:
    """Ensemble parameters.  ``N`` is the side of square ensembles, ``(N, M)``
    the shape of the Wishart factor and ``(d, n, m)`` the block-Wishart shape."""

    kind: str
    N: int | None = None
    t: float = 1.0
    M: int | None = None
    d: int | None = None
    n: int | None = None
    m: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ensemble {self.kind!r}")
        if self.t <= 0:
            raise ValueError("t must be positive")
        need = {"wishart": ("N", "M"), "block_wishart": ("d", "n", "m")}.get(self.kind, ("N",))
        for name in need:
            v = getattr(self, name)
            if v is None or v < 1:
                raise ValueError(f"{self.kind} needs a positive {name}")

    @property
    def dim(self) -> int:
        return self.d * self.n if self.kind == "block_wishart" else self.N

    @property
    def hermitian(self) -> bool:
        return self.kind in HERMITIAN

    def params(self) -> dict:
        keys = {"complex_gaussian": ("N", "t"), "wigner": ("N", "t"), "wishart": ("N", "M"),
                "block_wishart": ("d", "n", "m"), "haar_orthogonal": ("N",),
                "haar_unitary": ("N",)}[self.kind]
        return {k: getattr(self, k) for k in keys}


def partial_transpose(w: np.ndarray, d: int, n: int) -> np.ndarray:
    """W~_{ia,jb} = W_{ib,ja} for row index i*n + a, i < d, a < n."""
    return w.reshape(d, n, d, n).transpose(0, 3, 2, 1).reshape(d * n, d * n)


def _hermitize(w: np.ndarray) -> np.ndarray:
    # (W + W*)/2 is Hermitian bitwise since float addition commutes
    return (w + w.conj().T) / 2


def _haar(rng: Rng, N: int, complex_: bool) -> np.ndarray:
    z = complex_gaussians(rng, (N, N)) if complex_ else gaussians(rng, N * N).reshape(N, N)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    phase = diag / np.abs(diag)
    return q * phase[None, :]


def sample(spec: EnsembleSpec, draw: int = 0) -> np.ndarray:
    """One unscaled draw; deterministic in (seed, draw)."""
    rng = Rng(spec.seed).child(draw)
    k = spec.kind
    if k == "complex_gaussian":
        return complex_gaussians(rng, (spec.N, spec.N), spec.t)
    if k == "wigner":
        N = spec.N
        diag = gaussians(rng, N, spec.t)
        iu = np.triu_indices(N, 1)
        upper = np.zeros((N, N), dtype=complex)
        upper[iu] = complex_gaussians(rng, len(iu[0]), spec.t)
        return upper + upper.conj().T + np.diag(diag)
    if k == "wishart":
        y = complex_gaussians(rng, (spec.N, spec.M))
        return _hermitize(y @ y.conj().T)
    if k == "block_wishart":
        y = complex_gaussians(rng, (spec.d * spec.n, spec.d * spec.m))
        return partial_transpose(_hermitize(y @ y.conj().T), spec.d, spec.n)
    return _haar(rng, spec.N, k == "haar_unitary")


def sample_batch(spec: EnsembleSpec, draws: int, start: int = 0) -> np.ndarray:
    """Stack of draws start .. start + draws - 1; Haar draws share one batched QR."""
    if spec.kind not in ("haar_orthogonal", "haar_unitary"):
        return np.stack([sample(spec, r) for r in range(start, start + draws)])
    root, N = Rng(spec.seed), spec.N
    cplx = spec.kind == "haar_unitary"
    z = np.empty((draws, N, N), dtype=complex if cplx else float)
    for r in range(draws):
        rng = root.child(start + r)
        z[r] = complex_gaussians(rng, (N, N)) if cplx else gaussians(rng, N * N).reshape(N, N)
    q, rr = np.linalg.qr(z)
    diag = np.diagonal(rr, axis1=1, axis2=2)
    return q * (diag / np.abs(diag))[:, None, :]


def scale_factor(spec: EnsembleSpec, scaling: str) -> float:
    if scaling not in SCALINGS:
        raise ValueError(f"unknown scaling {scaling!r}")
    if scaling == "none":
        return 1.0
    if scaling in ("by_d", "by_dm"):
        if spec.kind != "block_wishart":
            raise ValueError(f"{scaling} applies to block_wishart only")
        return 1.0 / (spec.d if scaling == "by_d" else spec.d * spec.m)
    N = spec.N if spec.N is not None else spec.dim
    return 1.0 / math.sqrt(N) if scaling == "by_sqrtN" else 1.0 / N


def _mean_stderr(vals: np.ndarray):
    est = vals.mean()
    n = len(vals)
    if n < 2:
        err = 0.0
    else:
        err = math.sqrt((np.var(vals.real, ddof=1) + np.var(vals.imag, ddof=1)) / n)
    if np.iscomplexobj(est) and abs(est.imag) <= 1e-9 * max(1.0, abs(est.real)) and np.all(
            np.abs(vals.imag) <= 1e-9 * np.maximum(1.0, np.abs(vals.real))):
        est = est.real
    return (float(est) if not np.iscomplexobj(est) else complex(est)), err


def empirical_moment(spec: EnsembleSpec, word, scaling: str = "none", draws: int = 50):
    """Mean over draws of tr(X^{e_1} ... X^{e_k}) / dim, with its standard error.

    ``word`` is an integer k (plain powers) or a color word where ``*``
    letters take the adjoint.
    """
    if draws < 1:
        raise ValueError("need at least one draw")
    w = P.as_word(word)
    c = scale_factor(spec, scaling)
    vals = np.empty(draws, dtype=complex)
    for r in range(draws):
        x = sample(spec, r) * c
        xs = x.conj().T
        prod = np.eye(spec.dim, dtype=complex)
        for letter in w.letters:
            prod = prod @ (xs if letter == P.BLACK else x)
        vals[r] = np.trace(prod) / spec.dim
    return _mean_stderr(vals)


def monomial_average(spec: EnsembleSpec, factors: Sequence[tuple[int, int, bool]], draws: int):
    """Monte-Carlo mean and standard error of prod u_{ij}^{(*)} under a Haar ensemble."""
    vals = np.ones(draws, dtype=complex)
    chunk = 20000
    for start in range(0, draws, chunk):
        u = sample_batch(spec, min(chunk, draws - start), start)
        part = np.ones(u.shape[0], dtype=complex)
        for i, j, star in factors:
            e = u[:, i - 1, j - 1]
            part = part * (np.conj(e) if star else e)
        vals[start:start + len(part)] = part
    return _mean_stderr(vals)


@dataclass
class EmpiricalStats:
    kind: str
    params: dict
    draws: int
    dimension: int
    eigenvalues: np.ndarray = field(repr=False)
    per_draw: np.ndarray = field(repr=False)
    bin_edges: np.ndarray = field(repr=False)
    counts: np.ndarray = field(repr=False)
    scaling: str = "none"
    moments: list = field(default_factory=list)

    @property
    def sample_count(self) -> int:
        return self.draws

    def moment(self, k: int):
        """Mean and standard error of the k-th spectral moment across draws."""
        return _mean_stderr((self.per_draw ** k).mean(axis=1))

    def mean(self) -> float:
        return float(self.eigenvalues.mean())

    def variance(self) -> float:
        return float(self.eigenvalues.var())


def eigen_histogram(spec: EnsembleSpec, scaling: str = "none", draws: int = 50, bins: int = 64,
                    value_range: tuple[float, float] | None = None, max_moment: int = 4,
                    solver: str = "lapack") -> EmpiricalStats:
    """Pool the eigenvalues of scaled draws and bin them.

    Without ``value_range`` the bins span the pooled spectrum so counts add
    up to draws * dimension.
    """
    if not spec.hermitian:
        raise NonHermitianEnsemble(f"{spec.kind} draws are not Hermitian")
    c = scale_factor(spec, scaling)
    ev = np.stack([hermitian_eigvals(sample(spec, r) * c, solver=solver) for r in range(draws)])
    pooled = ev.ravel()
    lo, hi = value_range if value_range else (pooled.min(), pooled.max())
    counts, edges = np.histogram(pooled, bins=bins, range=(lo, hi))
    stats = EmpiricalStats(spec.kind, spec.params(), draws, spec.dim, pooled, ev, edges, counts, scaling)
    stats.moments = [(k, *stats.moment(k)) for k in range(1, max_moment + 1)]
    return stats


def histogram_l1(eigenvalues: np.ndarray, law: DensityLaw, bins: int = 64, pad: float = 0.05) -> float:
    """sum over bins of |empirical fraction - law mass|, plus empirical mass off the grid.

    Bins cover the law's support widened by ``pad`` of its length on each side.
    """
    a, b = law.support
    width = b - a
    edges = np.linspace(a - pad * width, b + pad * width, bins + 1)
    counts, _ = np.histogram(eigenvalues, bins=edges)
    total = len(eigenvalues)
    frac = counts / total
    mass = np.array([law.mass(lo, hi) for lo, hi in zip(edges[:-1], edges[1:])])
    outside = 1.0 - counts.sum() / total
    return float(np.abs(frac - mass).sum() + outside)


def compare(stats: EmpiricalStats, target, tol: float | None = None, bins: int = 64) -> dict:
    """Per-moment z-scores, plus histogram L1 when the target is a density law."""
    report: dict = {"kind": stats.kind, "params": stats.params, "draws": stats.draws}
    if isinstance(target, DensityLaw):
        K = len(stats.moments)
        exact = [target.moment(k) for k in range(K + 1)]
        report["l1"] = histogram_l1(stats.eigenvalues, target, bins)
        report["truncated"] = False
    else:
        seq = target.values if isinstance(target, MomentSequence) else tuple(target)
        exact = [float(x) for x in seq]
        K = min(len(stats.moments), len(exact) - 1)
        report["truncated"] = K != len(stats.moments) or K != len(exact) - 1
    zs = []
    for k, est, err in stats.moments[:K]:
        z = (est - exact[k]) / err if err > 0 else (0.0 if est == exact[k] else math.inf)
        zs.append({"k": k, "est": est, "stderr": err, "target": exact[k], "z": z})
    report["moments"] = zs
    if tol is not None and "l1" in report:
        report["passed"] = report["l1"] <= tol
    return report


def stats_json(stats: EmpiricalStats) -> dict:
    return {"kind": stats.kind, "params": stats.params, "draws": stats.draws,
            "moments": [{"k": k, "est": est, "stderr": err} for k, est, err in stats.moments]}


def histogram_csv(stats: EmpiricalStats) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["bin_left", "bin_right", "count"])
    for lo, hi, c in zip(stats.bin_edges[:-1], stats.bin_edges[1:], stats.counts):
        w.writerow([repr(float(lo)), repr(float(hi)), int(c)])
    return buf.getvalue()
