import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from haarlab import laws as L
from haarlab import partitions as P
from haarlab.errors import ComplexAtoms, EvaluationOutsideDomain
from haarlab.laws import AtomicMeasure, MomentSequence, CumulantSequence
from haarlab.numeric import Rng


# ---------------------------------------------------------------- atoms

def test_convolve_examples():
    assert L.convolve(AtomicMeasure.dirac(2), AtomicMeasure.dirac(3)).atoms == ((5, 1),)
    p = Fraction(1, 3)
    ber = AtomicMeasure(((0, 1 - p), (1, p)))
    assert L.convolve(ber, ber).atoms == ((0, (1 - p) ** 2), (1, 2 * p * (1 - p)), (2, p * p))
    mu = AtomicMeasure(((0, Fraction(1, 2)), (3, Fraction(1, 2))))
    assert L.convolve(mu, AtomicMeasure.dirac(0)).atoms == mu.atoms


rational_measure = st.lists(
    st.tuples(st.integers(-3, 3), st.integers(1, 5)), min_size=1, max_size=4
).map(lambda xs: AtomicMeasure.from_pairs([(x, Fraction(w, sum(v for _, v in xs))) for x, w in xs]))


@settings(max_examples=60, deadline=None)
@given(rational_measure, rational_measure)
def test_convolution_moment_identity(a, b):
    c = L.convolve(a, b)
    for k in range(7):
        expect = sum(math.comb(k, r) * a.moment(r) * b.moment(k - r) for r in range(k + 1))
        assert c.moment(k) == expect


@settings(max_examples=60, deadline=None)
@given(rational_measure, rational_measure, st.floats(-5, 5))
def test_fourier_multiplicative(a, b, y):
    assert abs(L.fourier(L.convolve(a, b), y) - L.fourier(a, y) * L.fourier(b, y)) < 1e-12


def test_fourier_examples():
    for y in (0.0, 0.3, 2.0):
        assert L.fourier(AtomicMeasure.dirac(0), y) == 1
    for y in (0.2, 1.0, 3.0):
        assert abs(L.fourier(L.poisson_atoms(1, 40), y) - cmath.exp(cmath.exp(1j * y) - 1)) < 1e-10
        lhs = L.fourier(L.convolve(L.poisson_atoms(0.5), L.poisson_atoms(1.5)), y)
        assert abs(lhs - L.fourier(L.poisson_atoms(2.0), y)) < 1e-11
    with pytest.raises(ComplexAtoms):
        L.fourier(L.bessel_atoms(3, 1.0, 5), 1.0)


def test_poisson_atoms():
    p = L.poisson_atoms(1)
    assert abs(p.weight_at(0) - 1 / math.e) < 1e-15
    assert abs(p.weight_at(0) - 0.367879) < 1e-6
    assert 1 - p.total_mass < 1e-12
    for k, bell in zip((1, 2, 3), (1, 2, 5)):
        assert abs(p.moment(k) - bell) < 1e-10
    p3 = L.poisson_atoms(3)
    mean = p3.moment(1)
    assert abs(mean - 3) < 1e-10 and abs(p3.moment(2) - mean ** 2 - 3) < 1e-10
    with pytest.raises(ValueError):
        L.poisson_atoms(0)


def test_poisson_semigroup_total_variation():
    a, b = L.poisson_atoms(0.7), L.poisson_atoms(1.8)
    tv = L.total_variation(L.convolve(a, b), L.poisson_atoms(2.5))
    assert tv <= 3e-12


def test_bessel_atoms():
    b1, p = L.bessel_atoms(1, 1.3), L.poisson_atoms(1.3)
    assert [x for x, _ in b1.atoms] == [x for x, _ in p.atoms]
    assert max(abs(w - v) for (_, w), (_, v) in zip(b1.atoms, p.atoms)) < 1e-15
    b2 = L.bessel_atoms(2, 1.0)
    assert abs(b2.total_mass - 1) < 1e-10
    ref = L.named_moments("bessel", 4, 1, s=2)
    even = [sum(1 for _ in P.enumerate_partitions(P.EVEN_BLOCKS, k)) for k in range(5)]
    assert list(ref.values) == even
    for k in range(5):
        assert abs(b2.moment(k) - even[k]) < 1e-6
    b3 = L.bessel_atoms(3, 1.0)
    assert abs(b3.total_mass - 1) < 1e-10
    for w in ("ooo", "o*", "o*o*", "oo*", "oooooo"):
        assert abs(b3.colored_moment(w) - L.named_moments("bessel", w, 1, s=3)) < 1e-8


def test_bessel_against_compound_poisson_sampling():
    # sum_k w^k a_k with a_k independent Poisson(t/s)
    s, t, n = 3, 1.0, 200000
    rng = Rng(4)
    counts = rng.poisson(t / s, (n, s))
    w = np.exp(2j * np.pi * np.arange(1, s + 1) / s)
    z = counts @ w
    for word in ("ooo", "o*", "o*o*"):
        plain = word.count("o")
        vals = z ** plain * np.conj(z) ** (len(word) - plain)
        exact = L.named_moments("bessel", word, t, s=s)
        assert abs(vals.mean() - exact) < 3 * vals.std() / math.sqrt(n) + 1e-12


def test_plt_iterate():
    assert L.plt_iterate(1, 1).atoms == ((0, 0), (1, 1))
    assert L.plt_iterate(1, 2).atoms == ((0, Fraction(1, 4)), (1, Fraction(1, 2)), (2, Fraction(1, 4)))
    assert L.total_variation(L.plt_iterate(1, 1000), L.poisson_atoms(1)) <= 0.01
    with pytest.raises(ValueError):
        L.plt_iterate(3, 2)


def test_merge_keeps_separated_float_clusters():
    m = L.merge_atoms([(0.0, 1), (1.0, 1), (1e-14, 1), (2.0, 1)])
    assert [w for _, w in m] == [2, 1, 1]


# ---------------------------------------------------------------- moments

def test_named_moment_examples():
    assert L.named_moments("semicircle", 6)[6] == 5
    t = Fraction(3, 2)
    assert L.named_moments("marchenko_pastur", 2, t)[2] == t + t * t
    assert L.named_moments("complex_gaussian", "o*o*", 1) == 2
    assert L.named_moments("complex_gaussian", "oo*", 1) == 0
    assert L.named_moments("arcsine", 2)[2] == 6
    assert list(L.named_moments("gaussian", 6, 2).values) == [1, 0, 2, 0, 12, 0, 120]
    assert L.named_moments("rayleigh", 4, 2)[4] == 8
    assert abs(L.named_moments("rayleigh", 1, 1)[1] - math.sqrt(math.pi) / 2) < 1e-15
    assert list(L.named_moments("modified_arcsine", 5).values) == [1, 1, 2, 3, 6, 10]
    with pytest.raises(ValueError):
        L.named_moments("cauchy", 3)


@pytest.mark.parametrize("k", range(0, 9))
def test_closed_form_moments_match_partition_sums(k):
    t = Fraction(2, 3)
    assert L.named_moments("poisson", k, t)[k] == L.partition_sum(P.ALL_P, k, t)
    assert L.named_moments("marchenko_pastur", k, t)[k] == L.partition_sum(P.NC, k, t)
    assert L.named_moments("gaussian", k, t)[k] == L.partition_sum(P.PAIRINGS, k, t)
    assert L.named_moments("semicircle", k, t)[k] == L.partition_sum(P.NC_PAIRINGS, k, t)


def test_cumulant_examples():
    assert L.moments_to_cumulants(MomentSequence((1, 0, 1, 0, 3))).values == (0, 1, 0, 0)
    assert L.moments_to_cumulants(MomentSequence((1, 1, 2, 5, 15))).values == (1, 1, 1, 1)
    t = Fraction(5, 2)
    assert L.moments_to_cumulants(L.named_moments("gaussian", 8, t)).values == (0, t, 0, 0, 0, 0, 0, 0)
    assert L.moments_to_cumulants(L.named_moments("poisson", 8, 1)).values == (1,) * 8
    with pytest.raises(ValueError):
        MomentSequence((2, 1))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=8, max_size=8))
def test_moment_cumulant_roundtrip(vals):
    m = MomentSequence((1, *vals))
    assert L.cumulants_to_moments(L.moments_to_cumulants(m)) == m
    c = CumulantSequence(tuple(vals))
    assert L.moments_to_cumulants(L.cumulants_to_moments(c)) == c


def test_cauchy_transform_examples():
    m0 = MomentSequence((1, 0, 0, 0, 0))
    for xi in (2.0, 1j, -3 + 1j):
        v, bound = L.cauchy_transform(m0, xi)
        assert v == pytest.approx(1 / xi) and bound == 0
    v, bound = L.cauchy_transform(L.named_moments("semicircle", 60), 3)
    assert abs(v - (3 - math.sqrt(5)) / 2) < 1e-8 and bound < 1e-8
    v, bound = L.cauchy_transform(L.named_moments("marchenko_pastur", 60), 5)
    assert abs(v - (1 - math.sqrt(1 - 4 / 5)) / 2) < 1e-8
    assert abs(v - (1 - math.sqrt(1 - 4 / 5)) / 2) <= bound + 1e-12
    with pytest.raises(EvaluationOutsideDomain):
        L.cauchy_transform(L.named_moments("semicircle", 60), 1.5)


@pytest.mark.parametrize("law", ["semicircle", "marchenko_pastur", "arcsine", "modified_arcsine", "shifted_semicircle"])
def test_series_matches_closed_cauchy(law):
    d = L.density_law(law, 1.0)
    m = L.named_moments(law, 80, 1)
    for xi in (6.0, -7.0, 5 + 4j):
        v, bound = L.cauchy_transform(m, xi)
        assert abs(v - d.cauchy(xi)) <= max(bound, 1e-13)


def test_stieltjes_examples():
    sc, arc = L.semicircle(1), L.arcsine()
    d, spread = L.stieltjes_invert(sc.cauchy, [0.0, 3.0])
    assert abs(d[0] - 1 / math.pi) < 0.005 and abs(d[1]) < 0.005
    assert np.all(spread >= 0)
    d, _ = L.stieltjes_invert(arc.cauchy, [2.0])
    assert abs(d[0] - 1 / (2 * math.pi)) < 0.01


def test_hankel_examples():
    assert L.hankel_check(MomentSequence((1, 1, 2, 5, 15))) == (True, None)
    assert L.hankel_check(MomentSequence((1, 0, -1))) == (False, 2)
    assert L.hankel_check(MomentSequence((1, 0, 0, 0, 0, 0, 0))) == (True, None)


def test_r_transform_examples():
    assert L.r_transform_series(L.named_moments("semicircle", 8)) == [0, 1, 0, 0, 0, 0, 0, 0]
    t = Fraction(7, 3)
    assert L.r_transform_series(L.named_moments("marchenko_pastur", 8, t)) == [t] * 8
    assert L.r_transform_series(MomentSequence((1, 0, 0, 0, 0))) == [0, 0, 0, 0]


@settings(max_examples=20, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=7, max_size=7))
def test_r_transform_agrees_with_noncrossing_inversion(vals):
    m = MomentSequence((1, *vals))
    assert L.r_transform_series(m) == L.free_cumulants_nc(m)


def test_r_transform_inverts_closed_form():
    # G(R(z) + 1/z) = z for the semicircle, with R(z) = z
    sc = L.semicircle(1)
    for z in (0.1, 0.2 + 0.1j, -0.3j):
        assert abs(sc.cauchy(z + 1 / z) - z) < 1e-12


# ---------------------------------------------------------------- densities

def test_density_examples():
    assert L.semicircle(1).density(0.0) == pytest.approx(1 / math.pi)
    assert L.semicircle(1).density(2.5) == 0
    assert L.marchenko_pastur(0.5).atom_weight == 0.5
    assert L.marchenko_pastur(2).atom_weight == 0
    assert L.shifted_semicircle(1).density(1.0) == pytest.approx(1 / math.pi)
    assert L.density_eval(L.arcsine(), 2.0) == pytest.approx(1 / (2 * math.pi))


@pytest.mark.parametrize("law", ["semicircle", "marchenko_pastur", "arcsine", "modified_arcsine", "shifted_semicircle"])
@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_density_mass_and_moments(law, t):
    d = L.density_law(law, t)
    assert abs(d.mass(-100, 100) - 1) < 1e-9
    exact = L.named_moments(law, 6, Fraction(t))
    for k in range(7):
        assert abs(d.moment(k) - float(exact[k])) < 1e-6


@pytest.mark.parametrize("law", L._LAWS)
def test_named_laws_pass_hankel(law):
    # Bessel laws are real only for s <= 2
    m = L.named_moments(law, 8, Fraction(1, 2), s=2 if law == "bessel" else None)
    assert L.hankel_check(m) == (True, None)


def test_hankel_rejects_complex_bessel():
    # at s = 3 the atoms sit on rays through cube roots of unity: no real law has these moments
    assert L.hankel_check(L.named_moments("bessel", 8, Fraction(1, 2), s=3))[0] is False


def test_export_formats():
    doc = L.measure_to_json(L.poisson_atoms(1, 3))
    assert set(doc) == {"atoms", "mass"} and set(doc["atoms"][0]) == {"re", "im", "w"}
    back = L.measure_from_json(doc)
    assert [x for x, _ in back.atoms] == [0, 1, 2, 3]
    text = L.density_csv([0.0, 1.0], [0.3, 0.2], [0.0, 0.01])
    assert text.splitlines()[0] == "x,density,spread"
    assert text.splitlines()[1].split(",")[0] == "0.0"
