"""Claim-law construction, pmf access, p.g.f. values, moments, primitivity."""

from fractions import Fraction

import pytest

from ruinkit import ClaimDistribution, DistributionError

from common import all_fixtures

F = Fraction


def test_pmf_prefix_bernoulli():
    dist = ClaimDistribution.bernoulli(F(1, 2))
    assert dist.pmf_prefix(2) == [F(1, 2), F(1, 2), 0]


def test_pmf_prefix_geometric():
    dist = ClaimDistribution.geometric(F(1, 3))
    assert dist.pmf_prefix(2) == [F(1, 3), F(2, 9), F(4, 27)]


def test_pmf_prefix_tabulated_pads_with_zeros():
    dist = ClaimDistribution.tabulated([F(1, 3)] * 3)
    assert dist.pmf_prefix(4) == [F(1, 3), F(1, 3), F(1, 3), 0, 0]


def test_pmf_prefix_sums_to_one_from_below():
    for dist in all_fixtures():
        prev = F(0)
        for n in (0, 3, 10, 40):
            prefix = dist.pmf_prefix(n)
            assert all(v >= 0 for v in prefix)
            total = sum(prefix)
            assert prev <= total <= 1
            prev = total
        assert 1 - sum(dist.pmf_prefix(200)) < F(1, 10**6)


def test_pgf_closed_forms():
    p = F(2, 5)
    q = 1 - p
    bern = ClaimDistribution.bernoulli(p)
    geom = ClaimDistribution.geometric(p)
    for s in (F(-1), F(-1, 2), F(0), F(3, 4), F(1)):
        assert bern.pgf(s) == q + p * s
        assert geom.pgf(s) == p / (1 - q * s)


def test_pgf_normalization_at_one():
    for dist in all_fixtures():
        assert dist.pgf(F(1)) == 1
        assert abs(dist.pgf(1.0) - 1.0) < 1e-14
        assert dist.pgf_eval(F(1)) == 1  # alias


def test_pgf_matches_series_summation():
    # dual route: closed form vs direct truncated summation
    for dist in all_fixtures():
        cut = dist.truncation_index()
        h = [float(v) for v in dist.pmf_prefix(cut)]
        for s in (-1.0, -0.5, 0.0, 0.3, 0.99, 1.0):
            direct = 0.0
            power = 1.0
            for hk in h:
                direct += hk * power
                power *= s
            assert abs(float(dist.pgf(s)) - direct) <= 10 * dist.tail_epsilon + 1e-15


def test_moments_bernoulli():
    dist = ClaimDistribution.bernoulli(F(1, 4))
    report = dist.pgf_derivatives_at_one(4)
    assert report.mean == F(1, 4)
    assert report.derivative(2) == 0
    assert report.m2 == F(1, 4)  # Z^2 = Z for 0/1 claims


def test_moments_geometric_one_third():
    report = ClaimDistribution.geometric(F(1, 3)).pgf_derivatives_at_one(2)
    assert report.mean == 2
    assert report.derivative(2) == 8


def test_moments_even_two_point():
    report = ClaimDistribution.tabulated([F(1, 2), 0, F(1, 2)]).pgf_derivatives_at_one(2)
    assert report.mean == 1
    assert report.derivative(2) == 1


def test_moment_inequality():
    for dist in all_fixtures():
        report = dist.pgf_derivatives_at_one(2)
        assert report.mean >= 0
        assert report.m2 >= report.mean**2


def test_mean_against_finite_difference():
    # H'(1) vs a central difference just below 1, relative 1e-6
    for dist in all_fixtures():
        step = 5e-8
        fd = (float(dist.pgf(1.0)) - float(dist.pgf(1.0 - 2 * step))) / (2 * step)
        mean = float(dist.mean())
        assert abs(fd - mean) / mean < 1e-6


def test_is_primitive():
    assert ClaimDistribution.bernoulli(F(1, 2)).is_primitive()
    assert ClaimDistribution.geometric(F(1, 5)).is_primitive()
    assert not ClaimDistribution.tabulated([F(1, 2), 0, F(1, 2)]).is_primitive()
    assert not ClaimDistribution.even_lattice([F(1, 4), F(3, 4)]).is_primitive()
    assert ClaimDistribution.tabulated([F(1, 3), F(1, 3), F(1, 3)]).is_primitive()


def test_even_lattice_interleaves():
    dist = ClaimDistribution.even_lattice([F(1, 4), F(1, 4), F(1, 2)])
    assert dist.pmf == (F(1, 4), 0, F(1, 4), 0, F(1, 2))
    half = dist.half_law()
    assert half.pmf == (F(1, 4), F(1, 4), F(1, 2))


def test_half_law_requires_even_support():
    with pytest.raises(DistributionError):
        ClaimDistribution.tabulated([F(1, 2), F(1, 2)]).half_law()


def test_construction_validation():
    with pytest.raises(DistributionError):
        ClaimDistribution.tabulated([0, F(1, 2), F(1, 2)])  # h_0 = 0
    with pytest.raises(DistributionError):
        ClaimDistribution.tabulated([F(1, 2), F(1, 3)])  # sum != 1
    with pytest.raises(DistributionError):
        ClaimDistribution.tabulated([F(1, 2), F(-1, 2), 1])  # negative
    with pytest.raises(DistributionError):
        ClaimDistribution.bernoulli(F(7, 5))
    with pytest.raises(DistributionError):
        ClaimDistribution.geometric(0)
    # degenerate-at-zero is fine: survival is then certain
    ClaimDistribution.tabulated([1])


def test_float_parameters_rejected():
    with pytest.raises(TypeError):
        ClaimDistribution.bernoulli(0.5)
    with pytest.raises(TypeError):
        ClaimDistribution.tabulated([0.5, 0.5])


def test_truncation_index_geometric():
    dist = ClaimDistribution.geometric(F(1, 2))
    k = dist.truncation_index()
    assert F(1, 2) ** (k + 1) < F(1, 10**16)
    assert F(1, 2) ** k >= dist.tail_epsilon / 2  # not absurdly deep


def test_spec_round_trip():
    for dist in all_fixtures() + [ClaimDistribution.even_lattice([F(1, 2), F(1, 2)])]:
        again = ClaimDistribution.from_spec(dist.to_spec())
        assert again.kind == dist.kind
        assert again.pmf_prefix(8) == dist.pmf_prefix(8)


def test_from_spec_rejects_garbage():
    with pytest.raises(DistributionError):
        ClaimDistribution.from_spec({"family": "zeta", "p": "1/2"})
    with pytest.raises(DistributionError):
        ClaimDistribution.from_spec({"family": "bernoulli"})
    with pytest.raises(DistributionError):
        ClaimDistribution.from_spec(["1/2", "1/2"])
