"""Claim-size laws for the discrete-time risk model W(n) = u + 2n - sum(Z_i).

A claim law is a non-negative integer random variable Z with probabilities
h_k = P(Z = k), represented either as a finite tabulated pmf or as a named
analytic family (Bernoulli, Geometric).  Everything downstream needs exactly
four things from Z: rational pmf prefixes h_0..h_n, the probability
generating function H(s) = sum h_k s^k and its derivatives, moments at s = 1,
and primitivity (whether any odd-index probability is positive).

Two construction invariants are enforced: h_0 > 0 (otherwise the model order
can be reduced by shifting every claim down by one) and P(Z = 2) < 1 (the
degenerate law makes the surplus constant and the whole analysis trivial).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._scalars import RationalLike, as_fraction, fraction_str

DEFAULT_TAIL_EPSILON = 1e-16


class DistributionError(ValueError):
    """Raised when a claim law violates a construction invariant."""


@dataclass(frozen=True)
class MomentReport:
    """Moments of Z and derivatives of its p.g.f. at s = 1.

    ``derivatives[j-1]`` holds H^(j)(1) for 1 <= j <= max_order; entries are
    Fractions (exact) or ``math.inf`` when the defining series diverges.
    Moments are recovered from the factorial moments H^(j)(1) via Stirling
    numbers of the second kind: E Z^2 = H''(1) + H'(1), and so on.
    """

    mean: Fraction | float
    m2: Fraction | float | None = None
    m3: Fraction | float | None = None
    m4: Fraction | float | None = None
    derivatives: tuple = ()

    def derivative(self, order: int) -> Fraction | float:
        if not 1 <= order <= len(self.derivatives):
            raise ValueError(f"derivative order {order} not computed")
        return self.derivatives[order - 1]


@dataclass(frozen=True)
class ClaimDistribution:
    """Immutable claim law; construct via the classmethods below.

    kind is one of "tabulated", "bernoulli", "geometric", "even_lattice".
    Tabulated and even-lattice laws carry their full pmf; the named families
    carry the success parameter p and answer everything in closed form.
    """

    kind: str
    pmf: tuple[Fraction, ...] | None = None
    p: Fraction | None = None
    tail_epsilon: float = DEFAULT_TAIL_EPSILON

    # -- constructors --------------------------------------------------

    @classmethod
    def tabulated(cls, pmf, tail_epsilon: float = DEFAULT_TAIL_EPSILON) -> "ClaimDistribution":
        """Finite-support law from a list of rationals h_0..h_m summing to 1."""
        values = tuple(as_fraction(v, "pmf entry") for v in pmf)
        dist = cls(kind="tabulated", pmf=values, tail_epsilon=tail_epsilon)
        dist._validate()
        return dist

    @classmethod
    def bernoulli(cls, p: RationalLike, tail_epsilon: float = DEFAULT_TAIL_EPSILON) -> "ClaimDistribution":
        """P(Z=1) = p = 1 - P(Z=0), with rational p in (0,1)."""
        pr = as_fraction(p, "p")
        if not 0 < pr < 1:
            raise DistributionError(f"bernoulli parameter must lie in (0,1), got {pr}")
        return cls(kind="bernoulli", p=pr, tail_epsilon=tail_epsilon)

    @classmethod
    def geometric(cls, p: RationalLike, tail_epsilon: float = DEFAULT_TAIL_EPSILON) -> "ClaimDistribution":
        """P(Z=k) = p(1-p)^k for k >= 0, with rational p in (0,1)."""
        pr = as_fraction(p, "p")
        if not 0 < pr < 1:
            raise DistributionError(f"geometric parameter must lie in (0,1), got {pr}")
        return cls(kind="geometric", p=pr, tail_epsilon=tail_epsilon)

    @classmethod
    def even_lattice(cls, base, tail_epsilon: float = DEFAULT_TAIL_EPSILON) -> "ClaimDistribution":
        """Law of 2*B for a tabulated base law B: support on the even lattice.

        Accepts a tabulated ClaimDistribution or a pmf list for B; the result
        is imprimitive by construction and exercises the half-process branch
        of the survival formulas.
        """
        if isinstance(base, ClaimDistribution):
            if base.kind not in ("tabulated", "even_lattice"):
                raise DistributionError("even_lattice base must be a tabulated law")
            base_pmf = base.pmf
        else:
            base_pmf = tuple(as_fraction(v, "base pmf entry") for v in base)
        doubled: list[Fraction] = []
        for v in base_pmf:
            doubled.append(v)
            doubled.append(Fraction(0))
        dist = cls(kind="even_lattice", pmf=tuple(doubled[:-1]), tail_epsilon=tail_epsilon)
        dist._validate()
        return dist

    # -- validation -----------------------------------------------------

    def _validate(self) -> None:
        pmf = self.pmf
        assert pmf is not None
        if not pmf:
            raise DistributionError("pmf must be non-empty")
        if any(v < 0 for v in pmf):
            raise DistributionError("pmf entries must be non-negative")
        if pmf[0] <= 0:
            raise DistributionError("h_0 = P(Z=0) must be positive")
        if sum(pmf) != 1:
            raise DistributionError(f"pmf must sum to 1 exactly, got {sum(pmf)}")
        if self.hk(2) >= 1:
            raise DistributionError("degenerate law P(Z=2) = 1 is excluded")

    # -- pmf access ------------------------------------------------------

    def hk(self, k: int) -> Fraction:
        """Exact probability h_k = P(Z = k)."""
        if k < 0:
            raise ValueError("claim sizes are non-negative")
        if self.kind == "bernoulli":
            if k == 0:
                return 1 - self.p
            return self.p if k == 1 else Fraction(0)
        if self.kind == "geometric":
            return self.p * (1 - self.p) ** k
        return self.pmf[k] if k < len(self.pmf) else Fraction(0)

    def pmf_prefix(self, n: int) -> list[Fraction]:
        """Exact rationals h_0..h_n (zero-padded beyond finite support)."""
        if n < 0:
            raise ValueError("prefix length must be non-negative")
        if self.kind == "geometric":
            q = 1 - self.p
            out = [self.p]
            for _ in range(n):
                out.append(out[-1] * q)
            return out
        return [self.hk(k) for k in range(n + 1)]

    @property
    def support_bound(self) -> int | None:
        """Largest k with h_k > 0, or None for infinite support."""
        if self.kind == "geometric":
            return None
        if self.kind == "bernoulli":
            return 1
        last = 0
        for k, v in enumerate(self.pmf):
            if v:
                last = k
        return last

    def truncation_index(self, eps: float | None = None) -> int:
        """Smallest K with P(Z > K) < eps; identity on finite support."""
        if self.support_bound is not None:
            return self.support_bound
        eps = self.tail_epsilon if eps is None else eps
        q = 1 - self.p
        # tail beyond K is q^(K+1); solve exactly by stepping from a log estimate
        k = max(0, int(math.log(eps) / math.log(float(q))) - 2)
        tail = q**(k + 1)
        while tail >= eps:
            tail *= q
            k += 1
        return k

    # -- generating function ----------------------------------------------

    def pgf(self, s):
        """H(s) = sum h_k s^k for |s| <= 1.

        Exact for Fraction arguments, floating for float arguments.  Named
        families evaluate their closed forms (q + p s, p/(1 - q s)); tabulated
        laws evaluate their polynomial by Horner's rule.
        """
        if isinstance(s, float) and not -1.0 <= s <= 1.0:
            raise ValueError(f"p.g.f. evaluated only on [-1, 1], got {s}")
        if self.kind == "bernoulli":
            return (1 - self.p) + self.p * s
        if self.kind == "geometric":
            q = 1 - self.p
            return self.p / (1 - q * s)
        acc = self.pmf[-1] * 1  # keep Fraction/float promotion symmetric
        for c in reversed(self.pmf[:-1]):
            acc = acc * s + c
        return acc

    # alias kept for symmetry with pgf_derivatives_at_one
    pgf_eval = pgf

    def pgf_minus_s2(self, s):
        """H(s) - s^2, the characteristic function whose zeros drive everything."""
        return self.pgf(s) - s * s

    def pgf_derivative(self, s, order: int = 1):
        """H^(order)(s) for |s| <= 1; exact for Fraction arguments."""
        if order < 1:
            raise ValueError("order must be >= 1")
        if self.kind == "bernoulli":
            if order == 1:
                return self.p * 1 if isinstance(s, Fraction) else float(self.p)
            return Fraction(0) if isinstance(s, Fraction) else 0.0
        if self.kind == "geometric":
            q = 1 - self.p
            value = self.p * math.factorial(order) * q**order / (1 - q * s) ** (order + 1)
            return value
        coeffs = [
            self.pmf[n] * math.perm(n, order)
            for n in range(order, len(self.pmf))
        ]
        if not coeffs:
            return Fraction(0) if isinstance(s, Fraction) else 0.0
        acc = coeffs[-1] * 1
        for c in reversed(coeffs[:-1]):
            acc = acc * s + c
        return acc

    def pgf_derivatives_at_one(self, max_order: int = 4) -> MomentReport:
        """Derivatives H^(j)(1), 1 <= j <= max_order, and the moments E Z^j.

        All four kinds have finite moments of every order, so the divergence
        flag (math.inf) never fires for the built-in laws; it is kept in the
        report schema for forward compatibility.
        """
        if max_order not in (1, 2, 3, 4):
            raise ValueError("max_order must be between 1 and 4")
        if self.kind == "bernoulli":
            derivs = [self.p, Fraction(0), Fraction(0), Fraction(0)]
        elif self.kind == "geometric":
            ratio = (1 - self.p) / self.p
            derivs = [math.factorial(k) * ratio**k for k in range(1, 5)]
        else:
            derivs = [
                sum(
                    (self.pmf[n] * math.perm(n, j) for n in range(j, len(self.pmf))),
                    Fraction(0),
                )
                for j in range(1, 5)
            ]
        derivs = derivs[:max_order]
        d = derivs + [None] * (4 - len(derivs))
        mean = d[0]
        m2 = d[1] + d[0] if d[1] is not None else None
        m3 = d[2] + 3 * d[1] + d[0] if d[2] is not None else None
        m4 = d[3] + 6 * d[2] + 7 * d[1] + d[0] if d[3] is not None else None
        return MomentReport(mean=mean, m2=m2, m3=m3, m4=m4, derivatives=tuple(derivs))

    def mean(self) -> Fraction:
        """E Z = H'(1), exact."""
        return self.pgf_derivatives_at_one(1).mean

    # -- structure ---------------------------------------------------------

    def is_primitive(self) -> bool:
        """True iff P(Z odd) > 0, i.e. H(s) - s^2 has no lattice reduction.

        Named families answer analytically (h_1 = pq > 0 in both); tabulated
        laws scan their finite support.
        """
        if self.kind in ("bernoulli", "geometric"):
            return True
        return any(self.pmf[k] for k in range(1, len(self.pmf), 2))

    def half_law(self) -> "ClaimDistribution":
        """For an imprimitive law, the law of Z/2 (claims on the even lattice).

        Used by the income-rate-1 half process: survival of the original
        process at even surpluses equals survival of the halved process.
        """
        if self.is_primitive():
            raise DistributionError("half_law is defined only for even-lattice (imprimitive) laws")
        return ClaimDistribution.tabulated(self.pmf[::2], tail_epsilon=self.tail_epsilon)

    # -- serialization -------------------------------------------------------

    @classmethod
    def from_spec(cls, spec: dict) -> "ClaimDistribution":
        """Build from the JSON spec format.

        Accepted shapes::

            {"family": "bernoulli", "p": "1/2"}
            {"family": "geometric", "p": "1/3"}
            {"pmf": ["1/3", "1/3", "1/3"]}
            {"family": "even_lattice", "base": {"pmf": ["1/2", "1/2"]}}

        Rationals are "num/den" strings (or integers).
        """
        if not isinstance(spec, dict):
            raise DistributionError(f"distribution spec must be an object, got {type(spec).__name__}")
        tail = spec.get("tail_epsilon", DEFAULT_TAIL_EPSILON)
        tail = float(tail)
        if "pmf" in spec:
            return cls.tabulated(spec["pmf"], tail_epsilon=tail)
        family = spec.get("family")
        if family in ("bernoulli", "geometric"):
            if "p" not in spec:
                raise DistributionError(f"field 'p' is required for family {family!r}")
            return getattr(cls, family)(spec["p"], tail_epsilon=tail)
        if family == "even_lattice":
            if "base" not in spec:
                raise DistributionError("field 'base' is required for family 'even_lattice'")
            base = cls.from_spec(spec["base"])
            if base.kind != "tabulated":
                raise DistributionError("even_lattice base must be a tabulated law")
            return cls.even_lattice(base, tail_epsilon=tail)
        raise DistributionError(
            f"unrecognized distribution spec: expected field 'pmf' or 'family' in "
            f"{{bernoulli, geometric, even_lattice}}, got {sorted(spec)}"
        )

    def to_spec(self) -> dict:
        if self.kind in ("bernoulli", "geometric"):
            return {"family": self.kind, "p": fraction_str(self.p)}
        if self.kind == "even_lattice":
            return {"family": "even_lattice", "base": {"pmf": [fraction_str(v) for v in self.pmf[::2]]}}
        return {"pmf": [fraction_str(v) for v in self.pmf]}

    def label(self) -> str:
        if self.kind in ("bernoulli", "geometric"):
            return f"{self.kind}({fraction_str(self.p)})"
        body = ",".join(fraction_str(v) for v in self.pmf)
        return f"pmf[{body}]"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.label()
