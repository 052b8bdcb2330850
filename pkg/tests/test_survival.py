"""Survival probabilities: three routes, tables, pi masses, regimes."""

import math
from fractions import Fraction

import pytest

from ruinkit import (
    ClaimDistribution,
    DPConfig,
    build_table,
    finite_horizon_dp,
    initial_values_closed_form,
    initial_values_limit,
    phi_table,
    pi_values,
    refine_alpha,
    regime,
    root_profile,
    solve,
    xi_series,
)

from common import survivable_fixtures

F = Fraction

GOLDEN_PHI0 = (math.sqrt(5.0) - 1.0) / 2.0
GOLDEN_PHI1 = 2.0 / (1.0 + (1.0 + math.sqrt(5.0)) / 2.0)


def test_regimes():
    assert regime(ClaimDistribution.geometric(F(1, 2))) == "survivable"
    assert regime(ClaimDistribution.geometric(F(1, 3))) == "critical"
    assert regime(ClaimDistribution.geometric(F(1, 4))) == "ruinous"


def test_closed_form_bernoulli_certain_survival():
    for p in (F(1, 5), F(1, 2), F(4, 5)):
        phi0, phi1 = initial_values_closed_form(ClaimDistribution.bernoulli(p))
        assert abs(phi0 - 1.0) < 1e-12
        assert abs(phi1 - 1.0) < 1e-12


def test_closed_form_even_lattice():
    dist = ClaimDistribution.tabulated([F(1, 2), 0, F(1, 2)])
    phi0, phi1 = initial_values_closed_form(dist)
    assert (phi0, phi1) == (0.5, 1.0)


def test_closed_form_golden_ratio():
    phi0, phi1 = initial_values_closed_form(ClaimDistribution.geometric(F(1, 2)))
    assert abs(phi0 - GOLDEN_PHI0) < 1e-12
    assert abs(phi1 - GOLDEN_PHI1) < 1e-12


def test_closed_form_against_dp_oracle():
    # dp >= phi up to the DP's float-rounding floor (~1e-13 per thousand steps)
    for dist in survivable_fixtures():
        phi0, _ = initial_values_closed_form(dist)
        dp = finite_horizon_dp(dist, 0, DPConfig(horizon=2000)).value
        assert -1e-9 <= dp - phi0 < 2e-3, dist.label()


def test_limit_route_bernoulli_is_exact():
    table = build_table(ClaimDistribution.bernoulli(F(1, 2)), 12)
    est = initial_values_limit(table, 10)
    assert abs(est.phi0 - 1.0) < 1e-12
    assert abs(est.phi1 - 1.0) < 1e-12


def test_limit_route_geometric_converges():
    table = build_table(ClaimDistribution.geometric(F(1, 2)), 42)
    est = initial_values_limit(table, 40)
    assert abs(est.phi0 - GOLDEN_PHI0) < 1e-6
    assert abs(est.phi1 - GOLDEN_PHI1) < 1e-6
    assert est.delta < 1e-6


def test_limit_route_rejects_heavy_mean():
    table = build_table(ClaimDistribution.geometric(F(1, 4)), 12)
    with pytest.raises(ValueError, match="E Z < 2"):
        initial_values_limit(table, 10)


def test_limit_route_bounds():
    table = build_table(ClaimDistribution.geometric(F(1, 2)), 10)
    with pytest.raises(ValueError, match="horizon"):
        initial_values_limit(table, 10)


def test_xi_bernoulli_all_ones():
    xi = xi_series(ClaimDistribution.bernoulli(F(2, 5)), None, 30)
    assert all(abs(v - 1.0) < 1e-12 for v in xi.coeffs)


def test_xi_matches_phi_one():
    dist = ClaimDistribution.geometric(F(1, 2))
    xi = xi_series(dist, root_profile(dist), 10)
    assert abs(xi[0] - GOLDEN_PHI1) < 1e-10


def test_xi_zero_when_ruinous():
    xi = xi_series(ClaimDistribution.geometric(F(1, 4)), None, 10)
    assert all(v == 0.0 for v in xi.coeffs)


def test_xi_rejects_even_lattice():
    with pytest.raises(ValueError, match="half-process"):
        xi_series(ClaimDistribution.tabulated([F(1, 2), 0, F(1, 2)]), None, 5)


def test_xi_consistency_with_linear_combination():
    # xi_u = x_{u+1} phi(0) + y_{u+1} phi(1) for u <= 50
    for dist in (
        ClaimDistribution.geometric(F(1, 2)),
        ClaimDistribution.tabulated([F(2, 5), F(1, 5), F(1, 5), F(1, 5)]),
    ):
        alpha_rat = refine_alpha(dist, bits=256)
        mean = dist.mean()
        p0 = alpha_rat * (2 - mean) / (1 + alpha_rat)
        p1 = (2 - mean) / (dist.hk(0) * (1 + alpha_rat))
        phis = phi_table(dist, p0, p1, 51)
        xi = xi_series(dist, None, 50)
        for u in range(51):
            assert abs(xi[u] - phis[u + 1]) < 1e-10


def test_phi_table_reproduces_initial_values():
    dist = ClaimDistribution.geometric(F(1, 2))
    phi0, phi1 = initial_values_closed_form(dist)
    table = phi_table(dist, phi0, phi1, 5)
    assert table[0] == pytest.approx(phi0, abs=1e-15)
    assert table[1] == pytest.approx(phi1, abs=1e-15)


def test_phi_two_matches_dp_oracle():
    # phi(2) = x_2 phi0 + y_2 phi1 = 2 phi0 - phi1/2 = 0.854102...
    dist = ClaimDistribution.geometric(F(1, 2))
    sol = solve(dist, u_max=2)
    assert abs(sol.phi_table[2] - 0.854102) < 1e-5
    dp = finite_horizon_dp(dist, 2, DPConfig(horizon=3000)).value
    assert -1e-9 <= dp - sol.phi_table[2] < 1e-3


def test_phi_table_bernoulli_all_ones():
    sol = solve(ClaimDistribution.bernoulli(F(1, 3)), u_max=20)
    assert all(abs(v - 1.0) < 1e-12 for v in sol.phi_table)


def test_phi_table_monotone_and_tends_to_one():
    sol = solve(ClaimDistribution.geometric(F(1, 2)), u_max=200)
    table = sol.phi_table
    assert all(table[u] <= table[u + 1] + 1e-15 for u in range(200))
    assert all(v <= 1.0 + 1e-12 for v in table)
    assert table[200] > 1.0 - 1e-3


def test_phi_table_even_lattice_half_process():
    dist = ClaimDistribution.tabulated([F(1, 2), 0, F(1, 2)])
    table = phi_table(dist, F(1, 2), F(1), 8)
    assert table == [0.5, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0]
    # the x/y linear combination gives the same values (x_odd = 0 there)
    seq = build_table(dist, 8)
    for u in range(9):
        assert float(seq.x[u] * F(1, 2) + seq.y[u] * 1) == table[u]


def test_pi_values_geometric_half():
    pi0, pi1 = pi_values(ClaimDistribution.geometric(F(1, 2)))
    assert abs(pi0 - 0.7639320) < 1e-6
    assert abs(pi1 - 0.0901699) < 1e-6
    # both defining equations hold to 1e-12
    dist = ClaimDistribution.geometric(F(1, 2))
    h0, h1 = float(dist.hk(0)), float(dist.hk(1))
    alpha = (1.0 + math.sqrt(5.0)) / 2.0
    assert abs((2 * h0 + h1) * pi0 + h0 * pi1 - 1.0) < 1e-12
    assert abs(pi0 * (h0 + h1 - h0 * alpha) + pi1 * h0) < 1e-12


def test_pi_values_bernoulli():
    pi0, pi1 = pi_values(ClaimDistribution.bernoulli(F(1, 3)))
    assert abs(pi0 - 1.0) < 1e-12
    assert abs(pi1) < 1e-12


def test_pi_values_zero_for_heavy_mean():
    assert pi_values(ClaimDistribution.geometric(F(1, 4))) == (0.0, 0.0)


def test_pi_values_reject_even_lattice():
    with pytest.raises(ValueError):
        pi_values(ClaimDistribution.tabulated([F(1, 2), 0, F(1, 2)]))


def test_pi_sums_match_phi_differences():
    # phi(u+1) = pi_0 + ... + pi_u, so pi_1 = phi(2) - phi(1)
    dist = ClaimDistribution.geometric(F(1, 2))
    sol = solve(dist, u_max=3)
    pi0, pi1 = pi_values(dist)
    assert abs(pi0 - sol.phi_table[1]) < 1e-12
    assert abs(pi1 - (sol.phi_table[2] - sol.phi_table[1])) < 1e-12


def test_three_route_agreement():
    for dist in (
        ClaimDistribution.geometric(F(1, 2)),
        ClaimDistribution.tabulated([F(2, 5), F(1, 5), F(1, 5), F(1, 5)]),
    ):
        sol = solve(dist, u_max=30, route="all", n_limit=60)
        assert sol.diagnostics["max_route_delta"] < 1e-8, dist.label()


def test_xi_differences_are_a_probability_mass():
    # Xi(s)(1 - s) generates the peak masses pi_i: differences of xi are
    # non-negative and their partial sums stay below 1, approaching it
    for dist in (
        ClaimDistribution.geometric(F(1, 2)),
        ClaimDistribution.tabulated([F(2, 5), F(1, 5), F(1, 5), F(1, 5)]),
    ):
        xi = xi_series(dist, None, 120)
        masses = [xi[0]] + [xi[u] - xi[u - 1] for u in range(1, 121)]
        assert all(m >= -1e-14 for m in masses)
        total = sum(masses)
        assert total <= 1.0 + 1e-12
        assert total > 1.0 - 1e-6  # the peak is finite: mass accumulates to 1


def test_solve_even_lattice():
    sol = solve(ClaimDistribution.tabulated([F(1, 2), 0, F(1, 2)]), u_max=10, route="all")
    assert sol.phi0 == 0.5 and sol.phi1 == 1.0
    assert sol.xi is None
    assert sol.pi0 == 1.0 and abs(sol.pi1) < 1e-15
    assert sol.diagnostics["max_route_delta"] < 1e-12


def test_zero_regimes_all_routes():
    for p in (F(1, 3), F(1, 4)):
        sol = solve(ClaimDistribution.geometric(p), u_max=10, route="all")
        assert sol.regime in ("critical", "ruinous")
        assert sol.phi0 == 0.0 and sol.phi1 == 0.0
        assert not any(sol.phi_table)
        assert (sol.pi0, sol.pi1) == (0.0, 0.0)
        assert sol.xi is not None and not any(sol.xi.coeffs)


def test_solve_rejects_unknown_route():
    with pytest.raises(ValueError):
        solve(ClaimDistribution.bernoulli(F(1, 2)), route="newton")


def test_method_provenance():
    dist = ClaimDistribution.geometric(F(1, 2))
    assert solve(dist, u_max=4).method == "closed_form"
    assert solve(dist, u_max=4, route="limit", n_limit=24).method == "limit_ratio(24)"
    assert solve(dist, u_max=4, route="all").method == "all"
