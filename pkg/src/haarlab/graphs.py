"""Rooted graphs: loop counts, spectral measures at the root and circular measures.

The ADE constructors follow the usual Dynkin pictures with the root at the
marked vertex.  Adjacency entries are nonnegative integers; the only entry
above 1 is the double edge of the two-vertex affine graph.
"""
from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import UnsupportedFamily
from .laws import AtomicMeasure, merge_atoms
from .numeric import sym_eigen

__all__ = [
    "RootedGraph", "ade", "ade_names", "loop_count", "spectral_measure",
    "positive_spectral_measure", "circular_measure", "ade_circular_check",
    "cyclotomic_target",
]

EIGEN_MERGE_TOL = 1e-8
CIRCLE_MERGE_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class RootedGraph:
    adjacency: np.ndarray
    root: int = 0
    name: str = ""

    def __post_init__(self):
        a = np.array(self.adjacency, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be square")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        if np.any(np.diag(a) != 0) or np.any(a < 0):
            raise ValueError("adjacency needs a zero diagonal and nonnegative entries")
        if not 0 <= self.root < a.shape[0]:
            raise ValueError("root outside the vertex range")
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)

    @property
    def vertex_count(self) -> int:
        return self.adjacency.shape[0]

    @classmethod
    def from_edges(cls, n: int, edges: Sequence[Sequence[int]], root: int = 0, name: str = "") -> RootedGraph:
        a = np.zeros((n, n), dtype=np.int64)
        for i, j in edges:
            if i == j:
                raise ValueError("self-loops are not allowed")
            a[i, j] += 1
            a[j, i] += 1
        return cls(a, root, name)

    @classmethod
    def from_json(cls, doc: dict) -> RootedGraph:
        return cls.from_edges(int(doc["n"]), doc["edges"], int(doc.get("root", 0)), doc.get("name", ""))

    def to_json(self) -> dict:
        n = self.vertex_count
        edges = [[i, j] for i in range(n) for j in range(i + 1, n) for _ in range(self.adjacency[i, j])]
        return {"n": n, "edges": edges, "root": self.root}

    def degrees(self) -> list[int]:
        return [int(x) for x in self.adjacency.sum(axis=1)]


# ---------------------------------------------------------------------------
# ADE constructors

def _path(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(n - 1)]


def _star_with_arms(arms: Sequence[int]) -> tuple[int, list[tuple[int, int]], int]:
    """Branch vertex 0 with arms of the given lengths; returns (n, edges, end of first arm)."""
    edges, nxt, first_end = [], 1, None
    for a, length in enumerate(arms):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        if a == 0:
            first_end = prev
    return nxt, edges, first_end


def _a(n: int) -> RootedGraph:
    if n < 2:
        raise ValueError("A(n) needs n >= 2")
    return RootedGraph.from_edges(n, _path(n), 0, f"A({n})")


def _atilde(m: int) -> RootedGraph:
    if m < 2 or m % 2:
        raise ValueError("Atilde(2n) needs an even size >= 2")
    if m == 2:
        return RootedGraph.from_edges(2, [(0, 1), (0, 1)], 0, "Atilde(2)")
    return RootedGraph.from_edges(m, _path(m) + [(m - 1, 0)], 0, f"Atilde({m})")


def _d(n: int) -> RootedGraph:
    # path v0 .. v_{n-3}, two leaves on v_{n-3}; root v0
    if n < 3:
        raise ValueError("D(n) needs n >= 3")
    k = n - 2
    edges = _path(k) + [(k - 1, k), (k - 1, k + 1)]
    return RootedGraph.from_edges(n, edges, 0, f"D({n})")


def _dtilde(n: int) -> RootedGraph:
    # n + 1 vertices: leaves r, l1 on b1; path b1 .. b2; leaves l2, l3 on b2; root r
    if n + 1 < 5:
        raise ValueError("Dtilde(n) needs n + 1 >= 5")
    spine = n - 3                        # vertices b1 .. b2
    r, l1 = 0, 1
    b = list(range(2, 2 + spine))
    l2, l3 = 2 + spine, 3 + spine
    edges = [(r, b[0]), (l1, b[0])] + [(b[i], b[i + 1]) for i in range(spine - 1)]
    edges += [(b[-1], l2), (b[-1], l3)]
    return RootedGraph.from_edges(n + 1, edges, r, f"Dtilde({n})")


_E_ARMS = {"E6": (2, 2, 1), "E7": (3, 2, 1), "E8": (4, 2, 1),
           "E6tilde": (2, 2, 2), "E7tilde": (3, 3, 1), "E8tilde": (5, 2, 1)}


def _e(name: str) -> RootedGraph:
    n, edges, end = _star_with_arms(_E_ARMS[name])
    return RootedGraph.from_edges(n, edges, end, name)


_NAME = re.compile(r"^\s*(A|Atilde|D|Dtilde|E6|E7|E8)(tilde)?\s*(?:\(?\s*(\d+)\s*\)?)?\s*$")


def ade(name: str, n: int | None = None) -> RootedGraph:
    """Build an ADE graph from ``"A(5)"``, ``"Atilde(8)"``, ``"E7tilde"`` or ``ade("D", 6)``."""
    m = _NAME.match(name)
    if not m:
        raise ValueError(f"unknown ADE name {name!r}")
    fam, tilde, size = m.group(1), m.group(2), m.group(3)
    if fam.startswith("E"):
        if size is not None or n is not None:
            raise ValueError("E-series graphs take no size")
        return _e(fam + (tilde or ""))
    if tilde:
        fam += tilde
    size = int(size) if size is not None else n
    if size is None:
        raise ValueError(f"{fam} needs a size")
    return {"A": _a, "Atilde": _atilde, "D": _d, "Dtilde": _dtilde}[fam](size)


def ade_names(max_vertices: int = 12) -> list[str]:
    """Every ADE graph with at most ``max_vertices`` vertices."""
    out = [f"A({n})" for n in range(2, max_vertices + 1)]
    out += [f"Atilde({m})" for m in range(2, max_vertices + 1, 2)]
    out += [f"D({n})" for n in range(3, max_vertices + 1)]
    out += [f"Dtilde({n})" for n in range(4, max_vertices)]
    out += [e for e in _E_ARMS if ade(e).vertex_count <= max_vertices]
    return out


# ---------------------------------------------------------------------------
# loops and measures

def loop_count(g: RootedGraph, k: int) -> int:
    """Number of length-k loops at the root, with exact integer arithmetic."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    rows = [[int(x) for x in r] for r in g.adjacency]
    v = [0] * g.vertex_count
    v[g.root] = 1
    for _ in range(k):
        v = [sum(a * x for a, x in zip(r, v) if a) for r in rows]
    return v[g.root]


def spectral_measure(g: RootedGraph) -> AtomicMeasure:
    """sum_i U_{*i}^2 delta_{lambda_i}, coincident eigenvalues merged."""
    evals, vecs = sym_eigen(g.adjacency.astype(float))
    pairs = [(float(lam), float(vecs[g.root, i] ** 2)) for i, lam in enumerate(evals)]
    return AtomicMeasure.from_pairs(_drop_null(pairs), tol=EIGEN_MERGE_TOL)


def _drop_null(pairs, eps: float = 1e-15):
    return [(x, w) for x, w in pairs if w > eps]


def positive_spectral_measure(g: RootedGraph) -> AtomicMeasure:
    """Law of d^2 at the root: eigenvalues squared and merged."""
    mu = spectral_measure(g)
    return AtomicMeasure.from_pairs([(x * x, w) for x, w in mu.atoms], tol=EIGEN_MERGE_TOL)


def _circle_points(x: float) -> list[complex]:
    """The four solutions of (q + 1/q)^2 = x."""
    if abs(x - 4) < 1e-9:
        x = 4.0
    if abs(x) < 1e-12:
        x = 0.0
    r = math.sqrt(x)
    out = []
    for s in (r, -r):
        disc = cmath.sqrt(s * s - 4)
        out += [(s + disc) / 2, (s - disc) / 2]
    return out


def circular_measure(g: RootedGraph) -> AtomicMeasure:
    """Pull the positive spectral measure back along q -> (q + 1/q)^2."""
    pairs = []
    for x, p in positive_spectral_measure(g).atoms:
        for q in _circle_points(float(x)):
            pairs.append((complex(q), p / 4))
    return AtomicMeasure.from_pairs(pairs, tol=CIRCLE_MERGE_TOL)


# ---------------------------------------------------------------------------
# closed forms on roots of unity

def _roots(order: int, odd_only: bool = False) -> list[complex]:
    idx = range(1, order, 2) if odd_only else range(order)
    return [cmath.exp(2j * math.pi * j / order) for j in idx]


def _weighted(points: list[complex], density: bool) -> list[tuple[complex, float]]:
    w = [(1 - q * q).real if density else 1.0 for q in points]
    total = sum(w)
    return [(q, x / total) for q, x in zip(points, w) if x / total > 1e-15]


def cyclotomic_target(name: str) -> tuple[str, list[tuple[complex, float]]]:
    """The closed-form circular measure predicted for an A, Atilde, D or Dtilde graph."""
    g = ade(name)
    fam = re.match(r"[A-Za-z]+", name.strip()).group(0)
    n = g.vertex_count
    if fam == "A":
        m = n + 1
        return f"alpha_{m}", _weighted(_roots(2 * m), True)
    if fam == "Atilde":
        m = n // 2
        return f"d_{m}", _weighted(_roots(2 * m), False)
    if fam == "D":
        m = n - 1
        return f"alpha'_{m}", _weighted(_roots(4 * m, odd_only=True), True)
    if fam == "Dtilde":
        m = n - 3
        half = [(q, w / 2) for q, w in _weighted(_roots(2 * m), False)]
        half += [(q, w / 2) for q, w in _weighted(_roots(4, odd_only=True), False)]
        return f"(d_{m} + d'_1)/2", [(q, w) for q, w in
                                    AtomicMeasure.from_pairs(half, tol=CIRCLE_MERGE_TOL).atoms]
    raise UnsupportedFamily(f"no closed-form circular measure check for {name}")


def atom_deviation(a, b, tol: float = CIRCLE_MERGE_TOL) -> float:
    """Max weight difference after matching atoms by position."""
    diff = merge_atoms([(complex(p), w) for p, w in a] + [(complex(p), -w) for p, w in b], tol)
    return max((abs(w) for _, w in diff), default=0.0)


def ade_circular_check(name: str) -> dict:
    """Compare the computed circular measure of an ADE graph with its closed form."""
    if name.strip().startswith("E"):
        raise UnsupportedFamily("E-series closed forms are not checked")
    target_name, target = cyclotomic_target(name)
    got = circular_measure(ade(name))
    return {"graph": name, "target": target_name,
            "max_deviation": atom_deviation(got.atoms, target),
            "atoms": len(got.atoms)}
