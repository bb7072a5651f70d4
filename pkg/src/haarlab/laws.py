"""Probability laws as atoms, moment sequences and closed-form densities.

Exact arithmetic is kept whenever the inputs allow it: integer or
:class:`~fractions.Fraction` positions, weights and parameters stay exact
through convolution, moment sums and the moment-cumulant transforms.
"""
from __future__ import annotations

import cmath
import csv
import io
import math
import warnings
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Number
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import integrate

from . import partitions as P
from .errors import ComplexAtoms, EvaluationOutsideDomain

__all__ = [
    "AtomicMeasure", "MomentSequence", "CumulantSequence", "DensityLaw",
    "convolve", "fourier", "poisson_atoms", "bessel_atoms", "plt_iterate",
    "total_variation", "named_moments", "moments_to_cumulants",
    "cumulants_to_moments", "cauchy_transform", "stieltjes_invert",
    "hankel_check", "r_transform_series", "free_cumulants_nc", "density_eval",
    "semicircle", "marchenko_pastur", "arcsine", "modified_arcsine",
    "shifted_semicircle", "density_law", "partition_sum", "growth_radius",
    "merge_atoms", "measure_to_json", "measure_from_json", "density_csv",
]

FLOAT_MERGE_TOL = 1e-12
POISSON_TAIL = 1e-16   # well inside the 1e-12 mass requirement, so low moments are also accurate


# ---------------------------------------------------------------------------
# atomic measures

def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def merge_atoms(pairs: Iterable[tuple], tol: float = FLOAT_MERGE_TOL) -> tuple[tuple, ...]:
    """Merge atoms sitting at the same position.

    Exact (int/Fraction) positions merge on equality, anything else merges
    when positions agree within ``tol``.  Zero-weight atoms are kept out.
    """
    exact: dict = {}
    loose: list[list] = []
    for pos, w in pairs:
        if _is_exact(pos):
            exact[pos] = exact.get(pos, 0) + w
        else:
            loose.append([complex(pos), w])
    loose.sort(key=lambda a: (a[0].real, a[0].imag))
    clusters: list[list] = []
    for z, w in loose:
        home = None
        for c in reversed(clusters):
            if c[0].real < z.real - tol:
                break
            if abs(c[0] - z) <= tol:
                home = c
                break
        if home is None:
            clusters.append([z, w])
        else:
            home[1] += w
    out = [(p, w) for p, w in exact.items()]
    for z, w in clusters:
        out.append((z.real if z.imag == 0 else z, w))
    out = [(p, w) for p, w in out if w != 0]
    out.sort(key=lambda a: (complex(a[0]).real, complex(a[0]).imag))
    return tuple(out)


@dataclass(frozen=True)
class AtomicMeasure:
    """Finite sum of weighted Dirac masses.  ``truncation`` records a cutoff if any."""

    atoms: tuple[tuple, ...]
    truncation: int | None = None

    @classmethod
    def dirac(cls, x=0) -> AtomicMeasure:
        return cls(((x, 1),))

    @classmethod
    def from_pairs(cls, pairs, truncation=None, tol=FLOAT_MERGE_TOL) -> AtomicMeasure:
        return cls(merge_atoms(pairs, tol), truncation)

    @property
    def total_mass(self):
        return sum(w for _, w in self.atoms)

    @property
    def is_real(self) -> bool:
        return all(complex(p).imag == 0 for p, _ in self.atoms)

    def positions(self):
        return [p for p, _ in self.atoms]

    def weights(self):
        return [w for _, w in self.atoms]

    def weight_at(self, x, tol: float = FLOAT_MERGE_TOL):
        return sum(w for p, w in self.atoms if abs(complex(p) - complex(x)) <= tol)

    def moment(self, k: int):
        return sum((w * p ** k for p, w in self.atoms), 0)

    def colored_moment(self, word) -> complex:
        """E(z^{e_1} ... z^{e_k}) with black letters taking the conjugate."""
        w = P.as_word(word)
        plain = w.letters.count(P.WHITE)
        conj = len(w) - plain
        total = 0
        for p, wt in self.atoms:
            z = complex(p)
            total += wt * z ** plain * z.conjugate() ** conj
        return total

    def moments(self, K: int) -> MomentSequence:
        return MomentSequence(tuple(self.moment(k) for k in range(K + 1)), check=False)

    def scaled(self, c) -> AtomicMeasure:
        return AtomicMeasure.from_pairs(((p, c * w) for p, w in self.atoms), self.truncation)


def convolve(a: AtomicMeasure, b: AtomicMeasure) -> AtomicMeasure:
    pairs = ((x + y, v * w) for x, v in a.atoms for y, w in b.atoms)
    trunc = None
    if a.truncation is not None or b.truncation is not None:
        trunc = (a.truncation or 0) + (b.truncation or 0)
    return AtomicMeasure.from_pairs(pairs, trunc)


def fourier(a: AtomicMeasure, y: float) -> complex:
    """E(exp(i y X)) for a measure with real atoms."""
    if not a.is_real:
        raise ComplexAtoms("Fourier transform needs real atoms")
    return sum(float(w) * cmath.exp(1j * y * float(complex(p).real)) for p, w in a.atoms)


def total_variation(a: AtomicMeasure, b: AtomicMeasure, tol: float = FLOAT_MERGE_TOL) -> float:
    """Half the L1 distance between the weight vectors."""
    diff = merge_atoms([(p, w) for p, w in a.atoms] + [(p, -w) for p, w in b.atoms], tol)
    return 0.5 * sum(abs(float(w)) for _, w in diff)


def _poisson_cutoff(t: float, tail: float = POISSON_TAIL) -> int:
    # tail after K is at most e^-t t^(K+1)/(K+1)! / (1 - t/(K+2))
    K = 0
    term = math.exp(-t)
    while True:
        term *= t / (K + 1)
        if K + 2 > t and term / (1 - t / (K + 2)) < tail:
            return K
        K += 1


def poisson_atoms(t, cutoff: int | None = None) -> AtomicMeasure:
    """Poisson law p_t truncated at ``cutoff`` (chosen so the tail is < 1e-12 if omitted)."""
    if t <= 0:
        raise ValueError("Poisson parameter must be positive")
    K = _poisson_cutoff(float(t)) if cutoff is None else cutoff
    e = math.exp(-float(t))
    pairs = [(k, e * float(t) ** k / math.factorial(k)) for k in range(K + 1)]
    return AtomicMeasure(tuple(pairs), K)


def _compositions(total_max: int, parts: int):
    """Tuples of ``parts`` nonnegative ints with sum <= total_max."""
    if parts == 0:
        yield ()
        return
    for first in range(total_max + 1):
        for rest in _compositions(total_max - first, parts - 1):
            yield (first,) + rest


def _root_power_position(s: int, p: Sequence[int]):
    """sum_k w^k p_k with w = exp(2 pi i / s), exact where the roots are Gaussian integers."""
    if s == 1:
        return sum(p)
    if s == 2:
        return p[1] - p[0]          # w^1 = -1, w^2 = 1
    if s == 4:
        # w = i: coefficients of i, -1, -i, 1
        re = p[3] - p[1]
        im = p[0] - p[2]
        return re if im == 0 else complex(re, im)
    return sum(cmath.exp(2j * math.pi * (k + 1) / s) * pk for k, pk in enumerate(p))


def bessel_atoms(s: int, t, cutoff: int | None = None) -> AtomicMeasure:
    """Bessel law b^s_t as atoms sum_k w^k p_k, truncated at sum p_k <= cutoff."""
    if s < 1 or t <= 0:
        raise ValueError("need s >= 1 and t > 0")
    t = float(t)
    K = _poisson_cutoff(t) if cutoff is None else cutoff
    e = math.exp(-t)
    pairs = []
    for p in _compositions(K, s):
        r = sum(p)
        w = e * (t / s) ** r / math.prod(math.factorial(x) for x in p)
        pairs.append((_root_power_position(s, p), w))
    return AtomicMeasure.from_pairs(pairs, K)


def plt_iterate(t, n: int) -> AtomicMeasure:
    """((1 - t/n) delta_0 + (t/n) delta_1)^{*n}, expanded as a binomial."""
    if n < t:
        raise ValueError("need n >= t, otherwise the weights go negative")
    p = Fraction(t) / n if _is_exact(t) else float(t) / n
    q = 1 - p
    return AtomicMeasure(tuple((k, math.comb(n, k) * p ** k * q ** (n - k)) for k in range(n + 1)))


# ---------------------------------------------------------------------------
# moment and cumulant sequences

@dataclass(frozen=True)
class MomentSequence:
    """Moments M_0..M_K; ``values[k]`` is M_k."""

    values: tuple
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if self.check and (not self.values or self.values[0] != 1):
            raise ValueError("moment sequences start with M_0 = 1")

    def __getitem__(self, k):
        return self.values[k]

    def __len__(self):
        return len(self.values)

    @property
    def order(self) -> int:
        return len(self.values) - 1


@dataclass(frozen=True)
class CumulantSequence:
    """Cumulants k_1..k_K; ``values[n - 1]`` is k_n."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    def k(self, n: int):
        return self.values[n - 1]

    def __len__(self):
        return len(self.values)


def _num(t):
    """Keep ints/Fractions exact, turn everything else into float."""
    return t if _is_exact(t) else float(t)


@lru_cache(maxsize=None)
def _block_count_profile(cat: P.Category, letters: str) -> tuple[int, ...]:
    """profile[b] = number of partitions in cat(word) having b blocks."""
    parts = P.enumerate_partitions(cat, P.ColorWord(letters))
    hist = Counter(p.num_blocks for p in parts)
    top = max(hist, default=0)
    return tuple(hist.get(b, 0) for b in range(top + 1))


def partition_sum(cat: P.Category, word, t) -> object:
    """sum over pi in cat(word) of t^{|pi|}."""
    w = P.as_word(word)
    t = _num(t)
    return sum(c * t ** b for b, c in enumerate(_block_count_profile(cat, w.letters)))


def _narayana_poly(k: int, t):
    if k == 0:
        return 1
    return sum(Fraction(math.comb(k, b) * math.comb(k, b - 1), k) * t ** b
               for b in range(1, k + 1)) if _is_exact(t) else \
        sum(math.comb(k, b) * math.comb(k, b - 1) / k * t ** b for b in range(1, k + 1))


def _touchard(k: int, t):
    return sum(P.count("stirling2", k, b) * t ** b for b in range(k + 1))


_LAWS = ("poisson", "bessel", "gaussian", "complex_gaussian", "rayleigh", "semicircle",
         "marchenko_pastur", "arcsine", "modified_arcsine", "shifted_semicircle")


def _single_moment(law: str, k: int, t, s):
    if law == "poisson":
        return _touchard(k, t)
    if law == "bessel":
        return partition_sum(P.mod_s(s), k, t)
    if law == "gaussian":
        return 0 if k % 2 else t ** (k // 2) * P.double_factorial(k - 1)
    if law == "complex_gaussian":
        return 1 if k == 0 else 0
    if law == "rayleigh":
        if k % 2 == 0:
            return t ** (k // 2) * math.factorial(k // 2)
        return float(t) ** (k / 2) * math.gamma(1 + k / 2)
    if law == "semicircle":
        return 0 if k % 2 else t ** (k // 2) * P.count("catalan", k // 2)
    if law == "marchenko_pastur":
        out = _narayana_poly(k, t)
        return Fraction(out) if _is_exact(t) and not isinstance(out, float) else out
    if law == "arcsine":
        return P.count("central_binomial", k)
    if law == "modified_arcsine":
        return P.count("middle_binomial", k)
    if law == "shifted_semicircle":
        # 1 + semicircle of variance t
        return sum(math.comb(k, j) * _single_moment("semicircle", j, t, s) for j in range(k + 1))
    raise ValueError(f"unknown law {law!r}")


def named_moments(law: str, order, t=1, s: int | None = None):
    """Moments of the named limit laws.

    ``order`` is either an integer K (returns a :class:`MomentSequence`
    M_0..M_K) or a color word (returns the single colored moment; only the
    complex Gaussian and Bessel laws distinguish colors, the others read the
    length).  ``t`` is the law parameter (variance / rate); ``s`` the Bessel
    level.
    """
    if law not in _LAWS:
        raise ValueError(f"unknown law {law!r}")
    if law == "bessel" and (s is None or s < 1):
        raise ValueError("Bessel law needs a level s >= 1")
    t = _num(t)
    if isinstance(order, int):
        return MomentSequence(tuple(_single_moment(law, k, t, s) for k in range(order + 1)))
    w = P.as_word(order)
    k = len(w)
    if law == "complex_gaussian":
        if not w.is_uniform():
            return 0
        return t ** (k // 2) * math.factorial(k // 2)
    if law == "bessel":
        return partition_sum(P.mod_s(s), w, t)
    return _single_moment(law, k, t, s)


@lru_cache(maxsize=None)
def _partition_shapes(n: int) -> tuple[tuple[tuple[int, ...], int, int], ...]:
    """(block sizes, multiplicity, mu(nu, 1_n)) for each block-size shape of P(n)."""
    top = P.one_block(n)
    shapes: dict[tuple[int, ...], list[int]] = {}
    for nu in P.enumerate_partitions(P.ALL_P, n):
        key = tuple(sorted(len(b) for b in nu.blocks))
        if key not in shapes:
            shapes[key] = [0, P.mobius(nu, top)]
        shapes[key][0] += 1
    return tuple((k, v[0], v[1]) for k, v in sorted(shapes.items()))


def moments_to_cumulants(m: MomentSequence) -> CumulantSequence:
    """k_n = sum over nu in P(n) of mu(nu, 1_n) M_nu."""
    if m[0] != 1:
        raise ValueError("need M_0 = 1")
    out = []
    for n in range(1, m.order + 1):
        acc = 0
        for sizes, mult, mu in _partition_shapes(n):
            acc += mult * mu * math.prod(m[b] for b in sizes)
        out.append(acc)
    return CumulantSequence(tuple(out))


def cumulants_to_moments(c: CumulantSequence) -> MomentSequence:
    """M_n = sum over nu in P(n) of k_nu."""
    vals = [1]
    for n in range(1, len(c) + 1):
        vals.append(sum(mult * math.prod(c.k(b) for b in sizes)
                        for sizes, mult, _ in _partition_shapes(n)))
    return MomentSequence(tuple(vals))


# ---------------------------------------------------------------------------
# Cauchy transform, R-transform, Hankel test

def growth_radius(m: MomentSequence) -> tuple[float, float]:
    """Fit |M_k| <= c rho^k: rho from the last nonzero moment ratios, c as the max slack."""
    vals = [abs(complex(v)) for v in m.values]
    nz = [k for k, v in enumerate(vals) if v > 0 and k > 0]
    if not nz:
        return 0.0, 1.0
    last = nz[-1]
    # moments may vanish at odd orders, so compare with the previous nonzero one
    prev = [k for k in nz if k < last]
    if prev:
        gap = last - prev[-1]
        rho = (vals[last] / vals[prev[-1]]) ** (1.0 / gap)
    else:
        rho = vals[last] ** (1.0 / last)
    rho = max(rho, max(vals[k] ** (1.0 / k) for k in nz) if len(nz) == 1 else rho)
    c = max(v / rho ** k for k, v in enumerate(vals)) if rho > 0 else max(vals)
    return rho, c


def cauchy_transform(m: MomentSequence, xi: complex, margin: float = 1.05) -> tuple[complex, float]:
    """Truncated G(xi) = sum_k M_k xi^{-k-1} and a bound on the omitted tail.

    The tail bound uses the growth fit from :func:`growth_radius` and needs
    ``|xi| >= margin * rho``; closer points raise EvaluationOutsideDomain.
    """
    xi = complex(xi)
    rho, c = growth_radius(m)
    r = abs(xi)
    if r == 0 or (rho > 0 and r < margin * rho):
        raise EvaluationOutsideDomain(
            f"|xi| = {r:.4g} is inside the certified radius {margin * rho:.4g}")
    value = sum(complex(mk) / xi ** (k + 1) for k, mk in enumerate(m.values))
    K = m.order
    q = rho / r
    bound = c * q ** (K + 1) / (r * (1 - q)) if rho > 0 else 0.0
    return value, bound


def stieltjes_invert(G: Callable[[complex], complex], grid, offsets=(0.1, 0.05, 0.025)):
    """Density from -Im G(x + i t)/pi, linearly extrapolated to t = 0.

    Returns ``(density, spread)`` arrays; ``density`` uses the two smallest
    offsets, ``spread`` is the largest disagreement with extrapolations from
    the other consecutive offset pairs.
    """
    offs = sorted(offsets, reverse=True)
    if len(offs) < 2:
        raise ValueError("need at least two offsets")
    grid = np.asarray(grid, dtype=float)
    vals = np.array([[-complex(G(complex(x, t))).imag / math.pi for x in grid] for t in offs])
    extrap = []
    for i in range(len(offs) - 1):
        t1, t2 = offs[i], offs[i + 1]
        extrap.append((t1 * vals[i + 1] - t2 * vals[i]) / (t1 - t2))
    best = extrap[-1]
    spread = np.max(np.abs(np.array(extrap) - best), axis=0) if len(extrap) > 1 else np.zeros_like(best)
    return best, spread


def _rationalize(x) -> Fraction:
    if isinstance(x, complex):
        if x.imag != 0:
            raise ValueError("Hankel test needs real moments")
        x = x.real
    return Fraction(x)


def hankel_check(m) -> tuple[bool, int | None]:
    """Exact leading principal Hankel minors of [M_{i+j}]; returns (ok, first failing size)."""
    from .numeric import RationalMatrix, rat_det

    vals = [_rationalize(v) for v in (m.values if isinstance(m, MomentSequence) else m)]
    n_max = (len(vals) - 1) // 2 + 1
    for n in range(1, n_max + 1):
        h = RationalMatrix([[vals[i + j] for j in range(n)] for i in range(n)])
        if rat_det(h) < 0:
            return False, n
    return True, None


def r_transform_series(m: MomentSequence, K: int | None = None) -> list:
    """Coefficients r_0..r_{K-1} of R(z) with G(R(z) + 1/z) = z.

    Works on the generating series M(z) = sum M_k z^k through the
    equivalent functional equation C(z M(z)) = M(z), C(w) = 1 + w R(w),
    solving for one coefficient at a time.
    """
    if m[0] != 1:
        raise ValueError("need M_0 = 1")
    K = m.order if K is None else K
    if K > m.order:
        raise ValueError("not enough moments")
    vals = list(m.values[:K + 1])
    zero = vals[0] - vals[0]
    # zm = z M(z) truncated at degree K
    zm = [zero] + vals[:K]
    powers = [[1] + [zero] * K]          # (z M)^0
    kappas = []
    for n in range(1, K + 1):
        prev = powers[-1]
        nxt = [zero] * (K + 1)
        for i, a in enumerate(prev):
            if a == 0:
                continue
            for j in range(1, K + 1 - i):
                nxt[i + j] += a * zm[j]
        powers.append(nxt)
        # coefficient of z^n: M_n = sum_{j<=n} kappa_j [z^n](zM)^j, with [z^n](zM)^n = 1
        known = sum(kappas[j - 1] * powers[j][n] for j in range(1, n))
        kappas.append(vals[n] - known)
    return kappas


def free_cumulants_nc(m: MomentSequence) -> list:
    """Free cumulants by Moebius inversion over noncrossing partitions (independent check).

    Recursively uses M_n = sum over pi in NC(n) of prod kappa_{|b|}.
    """
    kappas: list = []
    for n in range(1, m.order + 1):
        acc = 0
        for p in P.enumerate_partitions(P.NC, n):
            if p.num_blocks == 1:
                continue
            acc += math.prod(kappas[len(b) - 1] for b in p.blocks)
        kappas.append(m[n] - acc)
    return kappas


# ---------------------------------------------------------------------------
# closed-form densities

def _sqrt_branch(xi: complex, a: float, b: float) -> complex:
    """sqrt((xi - a)(xi - b)) with the cut on [a, b], ~ xi at infinity."""
    return cmath.sqrt(xi - a) * cmath.sqrt(xi - b)


@dataclass(frozen=True)
class DensityLaw:
    """Absolutely continuous law on [a, b] plus an optional atom.

    The density is ``smooth(x) * (x - a)^alpha * (b - x)^beta`` with
    ``alpha, beta`` in {-1/2, 1/2}; quadrature works in the angle variable
    x = a + (b - a)(1 - cos theta)/2, which removes the endpoint singularities.
    """

    kind: str
    params: tuple
    a: float
    b: float
    alpha: float
    beta: float
    smooth: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)
    cauchy: Callable[[complex], complex] = field(repr=False, compare=False)
    atom: tuple[float, float] | None = None

    @property
    def support(self) -> tuple[float, float]:
        return self.a, self.b

    @property
    def atom_weight(self) -> float:
        return self.atom[1] if self.atom else 0.0

    def density(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        inside = (x > self.a) & (x < self.b)
        xi = x[inside]
        out[inside] = (self.smooth(xi) * (xi - self.a) ** self.alpha
                       * (self.b - xi) ** self.beta)
        return out if out.ndim else float(out)

    def _theta(self, x):
        x = min(max(x, self.a), self.b)
        return math.acos(1 - 2 * (x - self.a) / (self.b - self.a))

    def _integrand(self, f):
        a, b, al, be = self.a, self.b, self.alpha, self.beta
        L = b - a

        def g(theta):
            half = theta / 2
            x = a + L * (1 - math.cos(theta)) / 2
            # (x-a)^al (b-x)^be dx, rewritten in half-angle form
            jac = L ** (al + be + 1) * math.sin(half) ** (2 * al + 1) * math.cos(half) ** (2 * be + 1)
            return f(x) * float(self.smooth(np.array([x]))[0]) * jac
        return g

    def integral(self, f, lo: float | None = None, hi: float | None = None) -> float:
        """Integral of f against the continuous part over [lo, hi] ∩ support."""
        lo = self.a if lo is None else lo
        hi = self.b if hi is None else hi
        if hi <= self.a or lo >= self.b or hi <= lo:
            return 0.0
        t0, t1 = self._theta(lo), self._theta(hi)
        with warnings.catch_warnings():
            # tiny bins near machine precision trigger harmless roundoff warnings
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            val, _ = integrate.quad(self._integrand(f), t0, t1, epsabs=1e-13, epsrel=1e-12, limit=200)
        return val

    def mass(self, lo: float, hi: float) -> float:
        """Probability of [lo, hi), atom included."""
        m = self.integral(lambda x: 1.0, lo, hi)
        if self.atom and lo <= self.atom[0] < hi:
            m += self.atom[1]
        return m

    def moment(self, k: int) -> float:
        m = self.integral(lambda x: x ** k)
        if self.atom:
            m += self.atom[1] * self.atom[0] ** k
        return m


def semicircle(t: float = 1.0) -> DensityLaw:
    t = float(t)
    r = 2 * math.sqrt(t)
    return DensityLaw(
        "semicircle", (t,), -r, r, 0.5, 0.5,
        smooth=lambda x: np.full_like(np.asarray(x, dtype=float), 1 / (2 * math.pi * t)),
        cauchy=lambda xi: (xi - _sqrt_branch(xi, -r, r)) / (2 * t),
    )


def shifted_semicircle(beta: float = 1.0) -> DensityLaw:
    beta = float(beta)
    r = 2 * math.sqrt(beta)
    return DensityLaw(
        "shifted_semicircle", (beta,), 1 - r, 1 + r, 0.5, 0.5,
        smooth=lambda x: np.full_like(np.asarray(x, dtype=float), 1 / (2 * math.pi * beta)),
        cauchy=lambda xi: ((xi - 1) - _sqrt_branch(xi - 1, -r, r)) / (2 * beta),
    )


def marchenko_pastur(t: float = 1.0) -> DensityLaw:
    t = float(t)
    a, b = (1 - math.sqrt(t)) ** 2, (1 + math.sqrt(t)) ** 2
    atom = (0.0, 1 - t) if t < 1 else None

    def cauchy(xi):
        return ((xi + 1 - t) - _sqrt_branch(xi, a, b)) / (2 * xi)

    if t == 1:
        # a = 0: the 1/x pole merges with the square-root edge
        return DensityLaw("marchenko_pastur", (t,), 0.0, 4.0, -0.5, 0.5,
                          smooth=lambda x: np.full_like(np.asarray(x, dtype=float), 1 / (2 * math.pi)),
                          cauchy=cauchy)
    return DensityLaw("marchenko_pastur", (t,), a, b, 0.5, 0.5,
                      smooth=lambda x: 1 / (2 * math.pi * np.asarray(x, dtype=float)),
                      cauchy=cauchy, atom=atom)


def arcsine() -> DensityLaw:
    return DensityLaw("arcsine", (), 0.0, 4.0, -0.5, -0.5,
                      smooth=lambda x: np.full_like(np.asarray(x, dtype=float), 1 / math.pi),
                      cauchy=lambda xi: 1 / _sqrt_branch(xi, 0.0, 4.0))


def modified_arcsine() -> DensityLaw:
    return DensityLaw("modified_arcsine", (), -2.0, 2.0, 0.5, -0.5,
                      smooth=lambda x: np.full_like(np.asarray(x, dtype=float), 1 / (2 * math.pi)),
                      cauchy=lambda xi: (_sqrt_branch(xi, -2.0, 2.0) / (xi - 2) - 1) / 2)


_DENSITY_FACTORIES = {
    "semicircle": semicircle,
    "shifted_semicircle": shifted_semicircle,
    "marchenko_pastur": marchenko_pastur,
    "arcsine": lambda t=None: arcsine(),
    "modified_arcsine": lambda t=None: modified_arcsine(),
}


def density_law(kind: str, t: float = 1.0) -> DensityLaw:
    try:
        return _DENSITY_FACTORIES[kind](t)
    except KeyError:
        raise ValueError(f"no closed-form density for {kind!r}") from None


def density_eval(law: DensityLaw, x):
    return law.density(x)


# ---------------------------------------------------------------------------
# export formats

def _json_number(x):
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    return float(x) if isinstance(x, Number) else x


def measure_to_json(a: AtomicMeasure) -> dict:
    atoms = []
    for p, w in a.atoms:
        z = complex(p)
        atoms.append({"re": z.real, "im": z.imag, "w": float(w)})
    return {"atoms": atoms, "mass": float(a.total_mass)}


def measure_from_json(doc: dict) -> AtomicMeasure:
    pairs = []
    for at in doc["atoms"]:
        pos = at["re"] if at.get("im", 0) == 0 else complex(at["re"], at["im"])
        pairs.append((pos, at["w"]))
    return AtomicMeasure(tuple(pairs))


def density_csv(grid, density, spread) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "density", "spread"])
    for x, d, s in zip(grid, density, spread):
        w.writerow([repr(float(x)), repr(float(d)), repr(float(s))])
    return buf.getvalue()
