"""Integration over easy groups and spheres through Gram and Weingarten matrices.

Every family corresponds to a category of partitions ``D(k)``.  The Haar
integral of a monomial in the matrix coordinates is

    sum over pi, nu in D(k) of [pi <= ker i] [nu <= ker j] W_kN(pi, nu)

where ``W_kN`` is the exact inverse of the Gram matrix N^{|pi v nu|}.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import partitions as P
from .errors import IndexOutOfRange, SingularGram, SingularMatrix, UnsupportedFamily
from .laws import AtomicMeasure, partition_sum
from .numeric import RationalMatrix, rat_invert

__all__ = [
    "GroupSpec", "MonomialWord", "WeingartenData", "FAMILIES", "gram", "weingarten",
    "integrate", "sn_integral", "truncated_char_moment", "sn_truncated_law",
    "asymptotic_char_moment", "sphere_integral_real", "sphere_integral_complex",
    "free_sphere_integral", "wick_moment", "result_record",
]

FAMILIES = ("ON", "UN", "SN", "HN", "HNs", "KN", "ONfree", "UNfree")
_COMPLEX = {"UN", "KN", "UNfree", "HNs"}


@dataclass(frozen=True)
class GroupSpec:
    family: str
    N: int
    s: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.N < 1:
            raise ValueError("N must be at least 1")
        if self.family == "HNs":
            if self.s is None or self.s < 1:
                raise ValueError("HNs requires s >= 1")
        elif self.s is not None:
            raise ValueError(f"{self.family} takes no s parameter")

    @property
    def category(self) -> P.Category:
        return {
            "ON": P.PAIRINGS, "UN": P.MATCHING_PAIRINGS, "SN": P.ALL_P,
            "HN": P.EVEN_BLOCKS, "KN": P.MATCHING_EVEN_BLOCKS,
            "ONfree": P.NC_PAIRINGS, "UNfree": P.MATCHING_NC_PAIRINGS,
        }.get(self.family) or P.mod_s(self.s)

    @property
    def is_complex(self) -> bool:
        return self.family in _COMPLEX

    def word_for(self, word) -> P.ColorWord:
        """Real families ignore the star/plain distinction."""
        w = P.as_word(word)
        return w if self.is_complex else P.ColorWord.plain(len(w))

    def __str__(self):
        return f"HNs({self.s})" if self.family == "HNs" else self.family


_FACTOR = re.compile(
    r"""u(?:(?P<i>\d)(?P<j>\d)|_?[({](?P<i2>\d+),(?P<j2>\d+)[)}])
        (?P<mods>(?:\^\d+|\*)*)$""", re.VERBOSE)


@dataclass(frozen=True)
class MonomialWord:
    """Product of coordinates u_{ij} or their conjugates, in order.

    ``factors`` holds ``(i, j, star)`` triples with 1-based indices.
    """

    factors: tuple[tuple[int, int, bool], ...]

    @classmethod
    def parse(cls, text: str) -> MonomialWord:
        """Parse e.g. ``"u11^4"``, ``"u11 u12* u21^2"``, ``"u(10,3)*"``.

        Single-digit indices may be written ``u<i><j>``; larger ones need
        ``u(i,j)``.  A trailing ``^k`` repeats the factor and ``*`` conjugates.
        """
        factors = []
        for tok in text.split():
            m = _FACTOR.match(tok)
            if not m:
                raise ValueError(f"cannot parse monomial factor {tok!r}")
            i = int(m["i"] or m["i2"])
            j = int(m["j"] or m["j2"])
            mods = m["mods"]
            star = mods.count("*") % 2 == 1
            powers = re.findall(r"\^(\d+)", mods)
            k = math.prod(int(x) for x in powers) if powers else 1
            factors.extend([(i, j, star)] * k)
        return cls(tuple(factors))

    def __len__(self):
        return len(self.factors)

    @property
    def rows(self) -> tuple[int, ...]:
        return tuple(f[0] for f in self.factors)

    @property
    def cols(self) -> tuple[int, ...]:
        return tuple(f[1] for f in self.factors)

    @property
    def colors(self) -> P.ColorWord:
        return P.ColorWord("".join(P.BLACK if f[2] else P.WHITE for f in self.factors))

    def __str__(self):
        return " ".join(f"u({i},{j})" + ("*" if s else "") for i, j, s in self.factors)


@dataclass(frozen=True)
class WeingartenData:
    category: P.Category
    word: P.ColorWord
    N: int
    basis: tuple[P.SetPartition, ...]
    gram: RationalMatrix
    weingarten: RationalMatrix | None = None

    @property
    def size(self) -> int:
        return len(self.basis)


def _cat_word(cat: P.Category, word) -> P.ColorWord:
    w = P.as_word(word)
    return w if cat.colored else P.ColorWord.plain(len(w))


@lru_cache(maxsize=None)
def _join_blocks(cat: P.Category, letters: str):
    basis = tuple(P.enumerate_partitions(cat, P.ColorWord(letters)))
    blocks = tuple(tuple(P.join(p, q).num_blocks for q in basis) for p in basis)
    return basis, blocks


def _gram_at(blocks, N: int) -> RationalMatrix:
    return RationalMatrix([[N ** b for b in row] for row in blocks])


@lru_cache(maxsize=None)
def _gram_cached(cat: P.Category, letters: str, N: int) -> WeingartenData:
    basis, blocks = _join_blocks(cat, letters)
    return WeingartenData(cat, P.ColorWord(letters), N, basis, _gram_at(blocks, N))


def gram(cat: P.Category, word, N: int) -> WeingartenData:
    """Gram matrix N^{|pi v nu|} over the canonical basis D(word); no inverse attached."""
    if N < 1:
        raise ValueError("N must be at least 1")
    return _gram_cached(cat, _cat_word(cat, word).letters, N)


@lru_cache(maxsize=None)
def _weingarten_cached(cat: P.Category, letters: str, N: int) -> WeingartenData:
    g = _gram_cached(cat, letters, N)
    try:
        w = rat_invert(g.gram) if g.size else RationalMatrix([])
    except SingularMatrix:
        raise SingularGram(f"Gram matrix of {cat} on k={len(letters)} points is singular at N={N}") from None
    return WeingartenData(g.category, g.word, N, g.basis, g.gram, w)


def weingarten(cat: P.Category, word, N: int) -> WeingartenData:
    """Gram data with the exact inverse attached; SingularGram if N is too small."""
    if N < 1:
        raise ValueError("N must be at least 1")
    return _weingarten_cached(cat, _cat_word(cat, word).letters, N)


def _check_indices(idx: Sequence[int], N: int):
    for x in idx:
        if not 1 <= x <= N:
            raise IndexOutOfRange(f"index {x} outside 1..{N}")


def _weingarten_sum(data: WeingartenData, ker_i: P.SetPartition | None, ker_j: P.SetPartition | None) -> Fraction:
    rows = [a for a, p in enumerate(data.basis) if ker_i is None or P.leq(p, ker_i)]
    cols = [b for b, q in enumerate(data.basis) if ker_j is None or P.leq(q, ker_j)]
    w = data.weingarten
    return sum((w[a, b] for a in rows for b in cols), Fraction(0))


def integrate(g: GroupSpec, w: MonomialWord | str, cross_check: bool = False) -> Fraction:
    """Exact Haar integral of a monomial in the coordinates of the group.

    S_N uses its closed form unless ``cross_check`` asks for the Weingarten
    route.  HNs with s > 2 is only available through character moments.
    """
    if isinstance(w, str):
        w = MonomialWord.parse(w)
    _check_indices(w.rows + w.cols, g.N)
    family, cat = g.family, g.category
    if family == "HNs":
        if g.s > 2:
            raise UnsupportedFamily("entrywise HNs integrals are only exposed for s <= 2")
        family = "SN" if g.s == 1 else "HN"
        cat = P.ALL_P if g.s == 1 else P.EVEN_BLOCKS
    if len(w) == 0:
        return Fraction(1)
    if family == "SN" and not cross_check:
        return sn_integral(w.rows, w.cols, g.N)
    word = w.colors if g.is_complex and family not in ("SN", "HN") else P.ColorWord.plain(len(w))
    data = weingarten(cat, word, g.N)
    if data.size == 0:
        return Fraction(0)
    return _weingarten_sum(data, P.kernel(w.rows), P.kernel(w.cols))


def sn_integral(i: Sequence[int], j: Sequence[int], N: int) -> Fraction:
    """Closed form over S_N: (N - |ker i|)!/N! when ker i = ker j, else 0."""
    if len(i) != len(j):
        raise ValueError("index lists differ in length")
    if not i:
        return Fraction(1)
    ki, kj = P.kernel(i), P.kernel(j)
    if ki != kj or ki.num_blocks > N:
        return Fraction(0)
    return Fraction(math.factorial(N - ki.num_blocks), math.factorial(N))


def truncated_char_moment(g: GroupSpec, s: int, k) -> Fraction:
    """Exact moment of g_11 + ... + g_ss, computed as Tr(W_kN G_ks)."""
    if not 1 <= s <= g.N:
        raise ValueError("truncation s must lie in 1..N")
    word = g.word_for(P.as_word(k))
    data = weingarten(g.category, word, g.N)
    if data.size == 0:
        return Fraction(0)
    _, blocks = _join_blocks(data.category, data.word.letters)
    return (data.weingarten @ _gram_at(blocks, s)).trace()


def sn_truncated_law(N: int, s: int) -> AtomicMeasure:
    """Law of the number of fixed points among the first s, as exact atoms on 0..s."""
    if not 1 <= s <= N:
        raise ValueError("need 1 <= s <= N")
    weights = [Fraction(0)] * (s + 1)
    pref = Fraction(math.factorial(s), math.factorial(N))
    for p in range(s + 1):
        c = pref * Fraction(math.factorial(N - p), math.factorial(s - p) * math.factorial(p))
        # (delta_1 - delta_0)^{*p}
        for r in range(p + 1):
            weights[r] += c * math.comb(p, r) * (-1) ** (p - r)
    return AtomicMeasure(tuple((r, w) for r, w in enumerate(weights) if w != 0))


def asymptotic_char_moment(cat: P.Category, t, k):
    """Large-N limit of the truncated character moments: sum over D(k) of t^{|pi|}."""
    return partition_sum(cat, _cat_word(cat, k), t)


def _dfact(n: int) -> int:
    return P.double_factorial(n) if n >= 0 else 1


def sphere_integral_real(N: int, exponents: Sequence[int]) -> Fraction:
    """Integral of prod x_i^{k_i} over the real unit sphere in R^N."""
    if N < 2:
        raise ValueError("need N >= 2")
    if len(exponents) > N or any(k < 0 for k in exponents):
        raise ValueError("bad exponent list")
    if any(k % 2 for k in exponents):
        return Fraction(0)
    total = sum(exponents)
    num = _dfact(N - 2) * math.prod(_dfact(k - 1) for k in exponents)
    return Fraction(num, _dfact(N + total - 2))


def sphere_integral_complex(N: int, exponents: Sequence) -> Fraction:
    """Integral over the complex unit sphere in C^N.

    Entries of ``exponents`` are either k_i (for |z_i|^{2k_i}) or pairs
    (a_i, b_i) for z_i^{a_i} conj(z_i)^{b_i}; unbalanced pairs give 0.
    """
    if N < 1:
        raise ValueError("need N >= 1")
    ks = []
    for e in exponents:
        if isinstance(e, (tuple, list)):
            a, b = e
            if a != b:
                return Fraction(0)
            e = a
        ks.append(int(e))
    if len(ks) > N or any(k < 0 for k in ks):
        raise ValueError("bad exponent list")
    num = math.factorial(N - 1) * math.prod(math.factorial(k) for k in ks)
    return Fraction(num, math.factorial(N + sum(ks) - 1))


_SPHERE_FACTOR = re.compile(r"x(?:(?P<i>\d)|_?[({](?P<i2>\d+)[)}])(?P<mods>(?:\^\d+|\*)*)$")


def parse_sphere_word(text: str) -> list[tuple[int, bool]]:
    """``"x1^4"`` or ``"x1 x2* x(12)^2"`` into (index, star) pairs."""
    out = []
    for tok in text.split():
        m = _SPHERE_FACTOR.match(tok)
        if not m:
            raise ValueError(f"cannot parse sphere factor {tok!r}")
        i = int(m["i"] or m["i2"])
        star = m["mods"].count("*") % 2 == 1
        powers = re.findall(r"\^(\d+)", m["mods"])
        out.extend([(i, star)] * (math.prod(int(x) for x in powers) if powers else 1))
    return out


def _sphere_factors(w) -> list[tuple[int, bool]]:
    if isinstance(w, str):
        return parse_sphere_word(w)
    return [(f, False) if isinstance(f, int) else (int(f[0]), bool(f[1])) for f in w]


def sphere_integral_via_weingarten(cat: P.Category, N: int, w) -> Fraction:
    """sum over pi in D(k), sigma <= ker i of W_kN(pi, sigma)."""
    factors = _sphere_factors(w)
    if not factors:
        return Fraction(1)
    idx = [i for i, _ in factors]
    _check_indices(idx, N)
    word = P.ColorWord("".join(P.BLACK if s else P.WHITE for _, s in factors))
    data = weingarten(cat, word, N)
    if data.size == 0:
        return Fraction(0)
    return _weingarten_sum(data, None, P.kernel(idx))


def free_sphere_integral(kind: str, N: int, w) -> Fraction:
    """Integral over the free real or complex sphere via noncrossing pairings."""
    if kind == "real":
        return sphere_integral_via_weingarten(P.NC_PAIRINGS, N, w)
    if kind == "complex":
        return sphere_integral_via_weingarten(P.MATCHING_NC_PAIRINGS, N, w)
    raise ValueError("kind must be 'real' or 'complex'")


def wick_moment(t, spec: Sequence[tuple[int, bool]]):
    """E(f_{i_1}^{e_1} ... f_{i_k}^{e_k}) for independent complex Gaussians of variance t.

    ``spec`` lists (variable index, star) pairs.  Equals t^{k/2} times the
    number of matching pairings fitting inside ker i.
    """
    spec = _sphere_factors(spec)
    if not spec:
        return 1
    word = P.ColorWord("".join(P.BLACK if s else P.WHITE for _, s in spec))
    ker = P.kernel([i for i, _ in spec])
    count = sum(1 for p in P.enumerate_partitions(P.MATCHING_PAIRINGS, word) if P.leq(p, ker))
    if count == 0:
        return 0
    k = len(spec)
    t = t if isinstance(t, (int, Fraction)) else float(t)
    return count * t ** (k // 2)


def result_record(g: GroupSpec, word: str, value: Fraction, basis_size: int | None = None) -> dict:
    value = Fraction(value)
    return {"group": str(g), "N": g.N, "word": word, "value_num": value.numerator,
            "value_den": value.denominator, "basis_size": basis_size}
