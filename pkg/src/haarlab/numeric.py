"""Exact rational matrices, a cyclic Jacobi eigensolver and seeded Gaussians."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .errors import NoConvergence, SingularMatrix

__all__ = [
    "RationalMatrix", "rat_invert", "rat_det", "sym_eigen",
    "hermitian_eigvals", "Rng", "gaussians", "complex_gaussians",
]


class RationalMatrix:
    """Dense matrix of :class:`fractions.Fraction` entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Sequence[Sequence]):
        rows = [[Fraction(x) for x in r] for r in data]
        cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        self.rows, self.cols, self._data = len(rows), cols, rows

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        return cls([[0] * cols for _ in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = list(zip(*other._data)) if other.rows else [()] * other.cols
        return RationalMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in ot]
                               for r in self._data])

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self._data == other._data

    def trace(self) -> Fraction:
        return sum((self._data[i][i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"RationalMatrix([{body}])"


def _integer_rows(m: RationalMatrix):
    """Scale each row to integers; returns (int rows, row scale factors)."""
    out, scales = [], []
    for r in m._data:
        d = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * d) for x in r])
        scales.append(d)
    return out, scales


def _pivot_row(a, k, n):
    # largest numerator magnitude in column k at or below row k
    best, best_row = 0, -1
    for i in range(k, n):
        v = abs(a[i][k])
        if v > best:
            best, best_row = v, i
    return best_row


def rat_det(m: RationalMatrix) -> Fraction:
    """Exact determinant by Bareiss fraction-free elimination."""
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    a, scales = _integer_rows(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        p = _pivot_row(a, k, n)
        if p < 0:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (akk * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    den = 1
    for s in scales:
        den *= s
    return Fraction(sign * a[n - 1][n - 1], den)


def rat_invert(m: RationalMatrix) -> RationalMatrix:
    """Exact inverse by fraction-free Gauss-Jordan elimination.

    Raises :class:`SingularMatrix` when the determinant vanishes.
    """
    if not m.is_square:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    a, scales = _integer_rows(m)
    for i, row in enumerate(a):
        row.extend(int(i == j) for j in range(n))
    width = 2 * n
    prev = 1
    for k in range(n):
        p = _pivot_row(a, k, n)
        if p < 0:
            raise SingularMatrix("matrix is singular")
        if p != k:
            a[k], a[p] = a[p], a[k]
        row_k = a[k]
        akk = row_k[k]
        for i in range(n):
            if i == k:
                continue
            row_i = a[i]
            aik = row_i[k]
            for j in range(width):
                if j != k:
                    row_i[j] = (akk * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    # left block is now det * I; undo the row scaling: A^-1 = (DA)^-1 D
    det = prev
    return RationalMatrix([[Fraction(a[i][n + j] * scales[j], det) for j in range(n)]
                           for i in range(n)])


# ---------------------------------------------------------------------------
# symmetric eigenproblem

def sym_eigen(m, tol: float = 1e-12, max_sweeps: int = 100):
    """Cyclic Jacobi diagonalisation of a real symmetric matrix.

    Returns ``(eigenvalues, U)`` with eigenvalues ascending and the
    eigenvectors as orthonormal columns of ``U``.  Iterates until the
    off-diagonal Frobenius norm is at most ``tol * ||m||_F``.
    """
    a = np.array(m, dtype=float, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("sym_eigen needs a square matrix")
    n = a.shape[0]
    scale = np.linalg.norm(a)
    if not np.allclose(a, a.T, rtol=1e-12, atol=1e-12 * max(scale, 1.0)):
        raise ValueError("matrix is not symmetric")
    a = (a + a.T) / 2
    v = np.eye(n)
    target = tol * scale

    def off(x):
        return np.linalg.norm(x - np.diag(np.diag(x)))

    for _ in range(max_sweeps):
        if off(a) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta       # theta^2 would overflow
                elif theta:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                else:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        if off(a) > target:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")
    evals = np.diag(a).copy()
    order = np.argsort(evals, kind="stable")
    return evals[order], v[:, order]


def hermitian_eigvals(h, solver: str = "jacobi") -> np.ndarray:
    """Eigenvalues of a complex Hermitian matrix, ascending.

    ``solver="jacobi"`` embeds ``H = A + iB`` as the real symmetric
    ``[[A, -B], [B, A]]`` (each eigenvalue doubled) and keeps every other
    eigenvalue; ``solver="lapack"`` calls :func:`numpy.linalg.eigvalsh`.
    """
    h = np.asarray(h)
    if solver == "lapack":
        return np.linalg.eigvalsh(h)
    if solver != "jacobi":
        raise ValueError(f"unknown solver {solver!r}")
    a, b = h.real, h.imag
    big = np.block([[a, -b], [b, a]])
    evals, _ = sym_eigen(big)
    return evals[::2].copy()


# ---------------------------------------------------------------------------
# random numbers

class Rng:
    """Seeded stream of uniforms; Box-Muller on top gives Gaussians.

    Child streams for parallel work are derived from ``(seed, index)``
    through :class:`numpy.random.SeedSequence` hashing.
    """

    def __init__(self, seed: int = 0):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self._gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed)))
        self.counter = 0

    def child(self, index: int) -> Rng:
        state = np.random.SeedSequence([self.seed, int(index)]).generate_state(1, np.uint64)
        return Rng(int(state[0]))

    def uniforms(self, count: int) -> np.ndarray:
        """Uniforms on the half-open interval (0, 1]."""
        self.counter += count
        return 1.0 - self._gen.random(count)

    def poisson(self, lam, size):
        self.counter += int(np.prod(size))
        return self._gen.poisson(lam, size)


def gaussians(rng: Rng, count: int, t: float = 1.0) -> np.ndarray:
    """``count`` centred normal draws of variance ``t`` (Box-Muller)."""
    if t <= 0:
        raise ValueError("variance must be positive")
    half = (count + 1) // 2
    u1 = rng.uniforms(half)
    u2 = rng.uniforms(half)
    r = np.sqrt(-2.0 * np.log(u1) * t)
    z = np.empty(2 * half)
    z[0::2] = r * np.cos(2 * np.pi * u2)
    z[1::2] = r * np.sin(2 * np.pi * u2)
    return z[:count]


def complex_gaussians(rng: Rng, shape, t: float = 1.0) -> np.ndarray:
    """Complex normals (a + ib)/sqrt(2), a and b real of variance t, so E|z|^2 = t."""
    n = int(np.prod(shape))
    z = gaussians(rng, 2 * n, t)
    return ((z[0::2] + 1j * z[1::2]) / np.sqrt(2.0)).reshape(shape)
