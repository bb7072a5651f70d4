"""Set partitions, colored words and the partition categories of easy groups.

Points are numbered ``0..k-1``.  A :class:`SetPartition` is stored as its
restricted-growth string (``labels[i]`` is the index of the block holding
point ``i``, blocks numbered in order of their least element), which is also
the canonical encoding used for ordering and caching.  The printed form
numbers points from 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Sequence

__all__ = [
    "SetPartition", "ColorWord", "Kind", "Category",
    "ALL_P", "PAIRINGS", "MATCHING_PAIRINGS", "EVEN_BLOCKS",
    "MATCHING_EVEN_BLOCKS", "NC", "NC_PAIRINGS", "MATCHING_NC_PAIRINGS",
    "mod_s", "enumerate_partitions", "kernel", "join", "leq", "mobius",
    "block_stats", "count", "one_block", "singletons",
]


# ---------------------------------------------------------------------------
# set partitions

@dataclass(frozen=True, order=False)
class SetPartition:
    labels: tuple[int, ...]

    def __post_init__(self):
        nxt = 0
        for lab in self.labels:
            if lab > nxt or lab < 0:
                raise ValueError(f"not a restricted-growth string: {self.labels}")
            if lab == nxt:
                nxt += 1

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]], size: int | None = None) -> SetPartition:
        """Build from any block list; blocks must cover ``0..size-1`` exactly."""
        points = sorted(p for b in blocks for p in b)
        if size is None:
            size = len(points)
        if points != list(range(size)):
            raise ValueError(f"blocks {blocks!r} do not partition range({size})")
        owner = [0] * size
        for bi, b in enumerate(blocks):
            for p in b:
                owner[p] = bi
        return cls(_relabel(owner))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def num_blocks(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for i, lab in enumerate(self.labels):
            out[lab].append(i)
        return tuple(tuple(b) for b in out)

    def sort_key(self):
        # finest first, then lexicographic on the restricted-growth string
        return (-self.num_blocks, self.labels)

    def __str__(self):
        # points are shown 1-based, as in {1,3}{2}
        if not self.labels:
            return "{}"
        return "".join("{" + ",".join(str(x + 1) for x in b) + "}" for b in self.blocks)

    def __repr__(self):
        return f"SetPartition({self})"


def _relabel(values: Sequence) -> tuple[int, ...]:
    seen: dict = {}
    out = []
    for v in values:
        if v not in seen:
            seen[v] = len(seen)
        out.append(seen[v])
    return tuple(out)


def one_block(k: int) -> SetPartition:
    return SetPartition((0,) * k)


def singletons(k: int) -> SetPartition:
    return SetPartition(tuple(range(k)))


def kernel(indices: Sequence) -> SetPartition:
    """Partition of positions whose blocks collect equal indices."""
    if len(indices) == 0:
        raise ValueError("kernel of an empty index list")
    return SetPartition(_relabel(indices))


def _check_sizes(p: SetPartition, q: SetPartition):
    if p.size != q.size:
        raise ValueError(f"point counts differ: {p.size} vs {q.size}")


def join(p: SetPartition, q: SetPartition) -> SetPartition:
    _check_sizes(p, q)
    parent = list(range(p.size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in (p, q):
        first: dict[int, int] = {}
        for i, lab in enumerate(part.labels):
            if lab in first:
                a, b = find(first[lab]), find(i)
                if a != b:
                    parent[max(a, b)] = min(a, b)
            else:
                first[lab] = i
    return SetPartition(_relabel([find(i) for i in range(p.size)]))


def leq(p: SetPartition, q: SetPartition) -> bool:
    """True iff every block of ``p`` lies inside a block of ``q``."""
    _check_sizes(p, q)
    image: dict[int, int] = {}
    for a, b in zip(p.labels, q.labels):
        if image.setdefault(a, b) != b:
            return False
    return True


def is_noncrossing(p: SetPartition) -> bool:
    labels = p.labels
    lo: dict[int, int] = {}
    hi: dict[int, int] = {}
    for i, lab in enumerate(labels):
        lo.setdefault(lab, i)
        hi[lab] = i
    for block in p.blocks:
        for a, c in zip(block, block[1:]):
            for b in range(a + 1, c):
                lab = labels[b]
                if lo[lab] < a or hi[lab] > c:
                    return False
    return True


def block_stats(p: SetPartition) -> tuple[int, int, bool]:
    """(number of blocks, number of even-size blocks, noncrossing flag)."""
    sizes = [len(b) for b in p.blocks]
    return len(sizes), sum(1 for s in sizes if s % 2 == 0), is_noncrossing(p)


# ---------------------------------------------------------------------------
# colored words

WHITE, BLACK = "o", "*"
_ALIASES = {"o": WHITE, "◦": WHITE, "w": WHITE, "*": BLACK, "•": BLACK, "b": BLACK}


@dataclass(frozen=True)
class ColorWord:
    """Word over {white ``o``, black ``*``}; black marks a conjugated factor."""

    letters: str = ""

    def __post_init__(self):
        if any(c not in (WHITE, BLACK) for c in self.letters):
            raise ValueError(f"bad color word {self.letters!r}")

    @classmethod
    def parse(cls, text: str) -> ColorWord:
        try:
            return cls("".join(_ALIASES[c] for c in text if not c.isspace()))
        except KeyError as exc:
            raise ValueError(f"unknown color letter {exc.args[0]!r}") from None

    @classmethod
    def plain(cls, k: int) -> ColorWord:
        return cls(WHITE * k)

    def swapped(self) -> ColorWord:
        return ColorWord(self.letters.translate(str.maketrans("o*", "*o")))

    def is_uniform(self) -> bool:
        return self.letters.count(WHITE) == self.letters.count(BLACK)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self):
        return self.letters


def as_word(word) -> ColorWord:
    if isinstance(word, ColorWord):
        return word
    if isinstance(word, int):
        if word < 0:
            raise ValueError("negative length")
        return ColorWord.plain(word)
    return ColorWord.parse(word)


# ---------------------------------------------------------------------------
# categories

class Kind(str, Enum):
    ALL = "AllP"
    PAIRINGS = "Pairings"
    MATCHING_PAIRINGS = "MatchingPairings"
    EVEN_BLOCKS = "EvenBlocks"
    MATCHING_EVEN_BLOCKS = "MatchingEvenBlocks"
    MOD_S = "ModS"
    NC = "NC"
    NC_PAIRINGS = "NCPairings"
    MATCHING_NC_PAIRINGS = "MatchingNCPairings"


_PAIR_KINDS = {Kind.PAIRINGS, Kind.MATCHING_PAIRINGS, Kind.NC_PAIRINGS, Kind.MATCHING_NC_PAIRINGS}
_NC_KINDS = {Kind.NC, Kind.NC_PAIRINGS, Kind.MATCHING_NC_PAIRINGS}


@dataclass(frozen=True)
class Category:
    kind: Kind
    s: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind is Kind.MOD_S:
            if self.s is None or self.s < 1:
                raise ValueError("ModS requires s >= 1")
        elif self.s is not None:
            raise ValueError(f"{self.kind.value} takes no s parameter")

    @property
    def pairings_only(self) -> bool:
        return self.kind in _PAIR_KINDS

    @property
    def noncrossing(self) -> bool:
        return self.kind in _NC_KINDS

    @property
    def colored(self) -> bool:
        return self.kind in (Kind.MATCHING_PAIRINGS, Kind.MATCHING_EVEN_BLOCKS,
                             Kind.MATCHING_NC_PAIRINGS, Kind.MOD_S)

    def block_ok(self, colors: Sequence[str]) -> bool:
        n = len(colors)
        white = sum(1 for c in colors if c == WHITE)
        black = n - white
        kind = self.kind
        if kind in (Kind.ALL, Kind.NC):
            return True
        if kind in (Kind.PAIRINGS, Kind.NC_PAIRINGS):
            return n == 2
        if kind in (Kind.MATCHING_PAIRINGS, Kind.MATCHING_NC_PAIRINGS):
            return n == 2 and white == 1
        if kind is Kind.EVEN_BLOCKS:
            return n % 2 == 0
        if kind is Kind.MATCHING_EVEN_BLOCKS:
            return white == black
        return (white - black) % self.s == 0

    def __str__(self):
        return f"ModS({self.s})" if self.kind is Kind.MOD_S else self.kind.value

    @classmethod
    def parse(cls, text: str) -> Category:
        text = text.strip()
        if text.startswith("ModS"):
            return cls(Kind.MOD_S, int(text[4:].strip("()")))
        return cls(Kind(text))


ALL_P = Category(Kind.ALL)
PAIRINGS = Category(Kind.PAIRINGS)
MATCHING_PAIRINGS = Category(Kind.MATCHING_PAIRINGS)
EVEN_BLOCKS = Category(Kind.EVEN_BLOCKS)
MATCHING_EVEN_BLOCKS = Category(Kind.MATCHING_EVEN_BLOCKS)
NC = Category(Kind.NC)
NC_PAIRINGS = Category(Kind.NC_PAIRINGS)
MATCHING_NC_PAIRINGS = Category(Kind.MATCHING_NC_PAIRINGS)


def mod_s(s: int) -> Category:
    return Category(Kind.MOD_S, s)


def _all_partitions(k: int) -> Iterator[tuple[int, ...]]:
    """Restricted-growth strings of length k."""
    if k == 0:
        yield ()
        return
    labels = [0] * k

    def rec(i, top):
        if i == k:
            yield tuple(labels)
            return
        for lab in range(top + 2):
            labels[i] = lab
            yield from rec(i + 1, max(top, lab))

    labels[0] = 0
    yield from rec(1, 0)


def _pairings(points: tuple[int, ...], word: str, matching: bool) -> Iterator[list[tuple[int, int]]]:
    # pair the least unmatched point with each admissible partner
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for idx, partner in enumerate(rest):
        if matching and word[first] == word[partner]:
            continue
        remaining = rest[:idx] + rest[idx + 1:]
        for tail in _pairings(remaining, word, matching):
            yield [(first, partner)] + tail


@lru_cache(maxsize=None)
def _enumerate_cached(cat: Category, letters: str) -> tuple[SetPartition, ...]:
    k = len(letters)
    if cat.pairings_only:
        if k % 2:
            found: list[SetPartition] = []
        else:
            matching = cat.kind in (Kind.MATCHING_PAIRINGS, Kind.MATCHING_NC_PAIRINGS)
            found = [SetPartition.from_blocks(pairs, k)
                     for pairs in _pairings(tuple(range(k)), letters, matching)]
    elif cat.kind in (Kind.ALL, Kind.NC):
        found = [SetPartition(rgs) for rgs in _all_partitions(k)]
    else:
        found = []
        for rgs in _all_partitions(k):
            p = SetPartition(rgs)
            if all(cat.block_ok([letters[i] for i in b]) for b in p.blocks):
                found.append(p)
    if cat.noncrossing:
        found = [p for p in found if is_noncrossing(p)]
    found.sort(key=SetPartition.sort_key)
    return tuple(found)


def enumerate_partitions(cat: Category, word) -> list[SetPartition]:
    """All partitions of ``len(word)`` points in ``cat``, canonically ordered.

    ``word`` may be a :class:`ColorWord`, a color string such as ``"o*o*"``, or
    an integer ``k`` (shorthand for the all-white word of length k).  Color
    insensitive categories only look at the length.
    """
    w = as_word(word)
    letters = w.letters if cat.colored else WHITE * len(w)
    return list(_enumerate_cached(cat, letters))


# ---------------------------------------------------------------------------
# Moebius function

def _interval_type(p: SetPartition, q: SetPartition) -> tuple[int, ...]:
    """Sorted counts of p-blocks inside each q-block; determines [p, q] up to isomorphism."""
    counts: dict[int, set[int]] = {}
    for a, b in zip(p.labels, q.labels):
        counts.setdefault(b, set()).add(a)
    return tuple(sorted(len(v) for v in counts.values()))


@lru_cache(maxsize=None)
def _mobius_type(ns: tuple[int, ...]) -> int:
    """mu(bottom, top) of the interval prod_i P(n_i), by the defining recurrence.

    Uses the model bottom = singletons of sum(ns) points, top = consecutive
    blocks of sizes ns; every tau with bottom <= tau < top is visited.
    """
    if all(n == 1 for n in ns):
        return 1
    # tau ranges over products of partitions of each top block
    per_block = [list(_all_partitions(n)) for n in ns]
    acc = 0

    def rec(i, sizes, is_top):
        nonlocal acc
        if i == len(ns):
            if not is_top:
                acc += _mobius_type(tuple(sorted(sizes)))
            return
        for rgs in per_block[i]:
            nb = max(rgs) + 1
            sizes_here = [rgs.count(j) for j in range(nb)]
            rec(i + 1, sizes + sizes_here, is_top and nb == 1)

    rec(0, [], True)
    return -acc


def mobius(p: SetPartition, q: SetPartition) -> int:
    """Moebius function of the partition lattice, 0 unless p <= q."""
    _check_sizes(p, q)
    if not leq(p, q):
        return 0
    return _mobius_type(_interval_type(p, q))


# ---------------------------------------------------------------------------
# counting

@lru_cache(maxsize=None)
def _bell(k: int) -> int:
    if k == 0:
        return 1
    return sum(comb(k - 1, s) * _bell(k - 1 - s) for s in range(k))


@lru_cache(maxsize=None)
def _stirling2(k: int, b: int) -> int:
    if k == b:
        return 1
    if b == 0 or b > k:
        return 0
    return b * _stirling2(k - 1, b) + _stirling2(k - 1, b - 1)


def count(kind: str, k: int, b: int | None = None) -> int:
    """Exact combinatorial counts: bell, catalan, central_binomial, middle_binomial, stirling2."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if kind == "bell":
        return _bell(k)
    if kind == "catalan":
        return comb(2 * k, k) // (k + 1)
    if kind == "central_binomial":
        return comb(2 * k, k)
    if kind == "middle_binomial":
        return comb(k, k // 2)
    if kind == "stirling2":
        if b is None:
            raise ValueError("stirling2 needs the block count b")
        return _stirling2(k, b)
    raise ValueError(f"unknown count kind {kind!r}")


def double_factorial(n: int) -> int:
    """Usual n!! with (-1)!! = 0!! = 1."""
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def pairings_count(k: int) -> int:
    return 0 if k % 2 else factorial(k) // (2 ** (k // 2) * factorial(k // 2))
