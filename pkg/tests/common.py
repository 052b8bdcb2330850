"""Shared fixture distributions and brute-force oracles for the test suite."""

from fractions import Fraction

from ruinkit import ClaimDistribution


def bernoulli_fixtures():
    return [ClaimDistribution.bernoulli(Fraction(n, d)) for n, d in [(1, 5), (1, 3), (1, 2), (4, 5)]]


def geometric_fixtures():
    return [ClaimDistribution.geometric(Fraction(n, d)) for n, d in [(1, 5), (1, 3), (1, 2), (2, 3)]]


def tabulated_fixtures():
    return [
        ClaimDistribution.tabulated([Fraction(1, 2), 0, Fraction(1, 2)]),
        ClaimDistribution.tabulated([Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)]),
        ClaimDistribution.tabulated([Fraction(2, 5), Fraction(1, 5), Fraction(1, 5), Fraction(1, 5)]),
    ]


def all_fixtures():
    return bernoulli_fixtures() + geometric_fixtures() + tabulated_fixtures()


def primitive_fixtures():
    return [d for d in all_fixtures() if d.is_primitive()]


def survivable_fixtures():
    return [d for d in all_fixtures() if d.mean() < 2]


def enumerate_survival(dist, u, horizon, claim_cap):
    """Exact finite-horizon survival by brute-force path enumeration.

    Sums P(z_1, ..., z_N) over all claim tuples with every partial surplus
    positive, claims capped at claim_cap (the dropped tail mass bounds the
    defect from below).  Exponential cost: keep horizon and cap tiny.
    """
    h = dist.pmf_prefix(claim_cap)

    def recurse(step, surplus, prob):
        if step > horizon:
            return prob
        total = Fraction(0)
        for z in range(claim_cap + 1):
            nxt = surplus + 2 - z
            if nxt >= 1 and h[z]:
                total += recurse(step + 1, nxt, prob * h[z])
        return total

    return recurse(1, u, Fraction(1))
