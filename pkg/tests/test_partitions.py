import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from haarlab import partitions as P
from haarlab.partitions import SetPartition, ColorWord


def sp(*blocks):
    """Partition from 1-based blocks."""
    return SetPartition.from_blocks([[x - 1 for x in b] for b in blocks])


SINGLE2 = sp([1], [2])
PAIR2 = sp([1, 2])


def test_enumerate_examples():
    assert len(P.enumerate_partitions(P.ALL_P, 3)) == 5
    assert P.enumerate_partitions(P.NC_PAIRINGS, 2) == [PAIR2]
    assert P.enumerate_partitions(P.MATCHING_PAIRINGS, ColorWord.parse("oo")) == []
    assert len(P.enumerate_partitions(P.PAIRINGS, 4)) == 3
    assert len(P.enumerate_partitions(P.NC_PAIRINGS, 4)) == 2


def test_empty_word_has_the_empty_partition():
    for cat in (P.ALL_P, P.PAIRINGS, P.NC, P.MATCHING_PAIRINGS, P.mod_s(3)):
        assert P.enumerate_partitions(cat, 0) == [SetPartition(())]


def test_canonical_order_finest_first():
    assert P.enumerate_partitions(P.ALL_P, 2) == [SINGLE2, PAIR2]
    parts = P.enumerate_partitions(P.ALL_P, 4)
    counts = [p.num_blocks for p in parts]
    assert counts == sorted(counts, reverse=True)
    # the order matrix [p <= q] is upper triangular
    for a, p in enumerate(parts):
        for b, q in enumerate(parts):
            if b < a:
                assert not P.leq(p, q) or p == q


def test_matching_categories():
    got = P.enumerate_partitions(P.MATCHING_PAIRINGS, "o*o*")
    assert {str(p) for p in got} == {"{1,2}{3,4}", "{1,4}{2,3}"}
    assert len(P.enumerate_partitions(P.MATCHING_NC_PAIRINGS, "oo**")) == 1
    assert len(P.enumerate_partitions(P.MATCHING_EVEN_BLOCKS, "o*o*")) == 3
    # ModS(3) on ooo: singletons fail, only the full block balances mod 3
    assert P.enumerate_partitions(P.mod_s(3), "ooo") == [sp([1, 2, 3])]
    assert len(P.enumerate_partitions(P.mod_s(1), 4)) == 15


def test_kernel_examples():
    assert P.kernel([1, 2, 1]) == sp([1, 3], [2])
    assert P.kernel([5, 5, 5]) == sp([1, 2, 3])
    assert P.kernel([1, 2, 3]) == sp([1], [2], [3])
    assert P.kernel(["a", "b", "a"]) == sp([1, 3], [2])
    with pytest.raises(ValueError):
        P.kernel([])


def test_join_and_leq_examples():
    assert P.join(SINGLE2, PAIR2) == PAIR2
    assert P.join(sp([1, 2], [3]), sp([1], [2, 3])) == sp([1, 2, 3])
    assert P.leq(SINGLE2, PAIR2)
    assert not P.leq(PAIR2, SINGLE2)
    assert P.leq(PAIR2, PAIR2)
    with pytest.raises(ValueError):
        P.join(SINGLE2, sp([1, 2, 3]))
    with pytest.raises(ValueError):
        P.leq(SINGLE2, sp([1, 2, 3]))


def test_mobius_examples():
    assert P.mobius(SINGLE2, SINGLE2) == 1
    assert P.mobius(PAIR2, PAIR2) == 1
    assert P.mobius(SINGLE2, PAIR2) == -1
    assert P.mobius(P.singletons(3), P.one_block(3)) == 2
    assert P.mobius(PAIR2, SINGLE2) == 0


@pytest.mark.parametrize("k", range(1, 7))
def test_mobius_closed_form_to_top(k):
    # mu(0, 1) on P(k) is (-1)^{k-1}(k-1)!
    assert P.mobius(P.singletons(k), P.one_block(k)) == (-1) ** (k - 1) * math.factorial(k - 1)


@pytest.mark.parametrize("k", range(1, 7))
def test_mobius_inverts_order_matrix(k):
    parts = P.enumerate_partitions(P.ALL_P, k)
    n = len(parts)
    zeta = [[int(P.leq(p, q)) for q in parts] for p in parts]
    mu = [[P.mobius(p, q) for q in parts] for p in parts]
    for a in range(n):
        for b in range(n):
            assert sum(zeta[a][c] * mu[c][b] for c in range(n)) == int(a == b)


def test_block_stats_examples():
    assert P.block_stats(sp([1, 2], [3, 4])) == (2, 2, True)
    assert P.block_stats(sp([1, 3], [2, 4])) == (2, 2, False)
    assert P.block_stats(sp([1, 2, 3])) == (1, 0, True)


def test_count_examples():
    assert [P.count("bell", k) for k in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]
    assert P.count("catalan", 5) == 42
    assert P.count("stirling2", 4, 2) == 7
    assert P.count("central_binomial", 2) == 6
    with pytest.raises(ValueError):
        P.count("stirling2", 4)


@pytest.mark.parametrize("k", range(0, 9))
def test_counts_match_enumeration(k):
    assert len(P.enumerate_partitions(P.ALL_P, k)) == P.count("bell", k)
    assert len(P.enumerate_partitions(P.NC, k)) == P.count("catalan", k)
    for b in range(k + 1):
        n = sum(1 for p in P.enumerate_partitions(P.ALL_P, k) if p.num_blocks == b)
        assert n == P.count("stirling2", k, b)


@pytest.mark.parametrize("k", range(0, 5))
def test_pairing_counts(k):
    expected = P.double_factorial(2 * k - 1) if k else 1
    assert len(P.enumerate_partitions(P.PAIRINGS, 2 * k)) == expected
    assert len(P.enumerate_partitions(P.NC_PAIRINGS, 2 * k)) == P.count("catalan", k)


def test_pairings_agree_with_filtering():
    for k in range(0, 9):
        direct = set(P.enumerate_partitions(P.PAIRINGS, k))
        filtered = {p for p in P.enumerate_partitions(P.ALL_P, k) if all(len(b) == 2 for b in p.blocks)}
        assert direct == filtered


partitions5 = st.integers(0, 5).flatmap(lambda k: st.sampled_from(P.enumerate_partitions(P.ALL_P, k)))


def same_size_pair():
    return st.integers(1, 5).flatmap(
        lambda k: st.tuples(*[st.sampled_from(P.enumerate_partitions(P.ALL_P, k))] * 3))


@settings(max_examples=200, deadline=None)
@given(same_size_pair())
def test_join_lattice_laws(triple):
    p, q, r = triple
    j = P.join(p, q)
    assert j == P.join(q, p)
    assert P.join(j, r) == P.join(p, P.join(q, r))
    assert P.join(p, p) == p
    assert P.leq(p, j) and P.leq(q, j)
    if P.leq(p, r) and P.leq(q, r):
        assert P.leq(j, r)


@pytest.mark.parametrize("k", range(1, 6))
def test_join_is_least_upper_bound_exhaustive(k):
    parts = P.enumerate_partitions(P.ALL_P, k)
    for p in parts:
        for q in parts:
            ub = [r for r in parts if P.leq(p, r) and P.leq(q, r)]
            j = P.join(p, q)
            assert j in ub and all(P.leq(j, r) for r in ub)


@pytest.mark.parametrize("k", range(1, 6))
def test_kernel_characterizes_constancy(k):
    parts = P.enumerate_partitions(P.ALL_P, k)
    for idx in itertools.product(range(3), repeat=k):
        ker = P.kernel(idx)
        for p in parts:
            constant = all(len({idx[x] for x in b}) == 1 for b in p.blocks)
            assert P.leq(p, ker) == constant


@settings(max_examples=100, deadline=None)
@given(st.text(alphabet="o*", max_size=8))
def test_matching_respects_color_swap(letters):
    w = ColorWord(letters)
    for cat in (P.MATCHING_PAIRINGS, P.MATCHING_NC_PAIRINGS, P.MATCHING_EVEN_BLOCKS):
        assert set(P.enumerate_partitions(cat, w)) == set(P.enumerate_partitions(cat, w.swapped()))


@settings(max_examples=100, deadline=None)
@given(partitions5)
def test_noncrossing_predicate_brute_force(p):
    crossing = any(
        p.labels[a] == p.labels[c] and p.labels[b] == p.labels[d] and p.labels[a] != p.labels[b]
        for a, b, c, d in itertools.combinations(range(p.size), 4))
    assert P.is_noncrossing(p) == (not crossing)


def test_category_parsing_and_validation():
    assert P.Category.parse("ModS(3)") == P.mod_s(3)
    assert P.Category.parse("NCPairings") == P.NC_PAIRINGS
    assert str(P.mod_s(4)) == "ModS(4)"
    with pytest.raises(ValueError):
        P.mod_s(0)
    with pytest.raises(ValueError):
        ColorWord("ox")
    assert ColorWord.parse("◦••◦").letters == "o**o"


def test_setpartition_validation_and_display():
    with pytest.raises(ValueError):
        SetPartition((1, 0))
    with pytest.raises(ValueError):
        SetPartition.from_blocks([[0], [2]])
    assert str(sp([1, 3], [2])) == "{1,3}{2}"
    assert sp([1, 3], [2]).blocks == ((0, 2), (1,))
