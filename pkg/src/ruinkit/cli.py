"""Command-line interface: one subcommand per capability plus `verify`.

Reports are deterministic: keys are sorted, floats are serialized with 17
significant digits, rationals as "num/den" strings, so identical invocations
(including seeds) produce byte-identical output.

Exit codes: 0 success; 1 usage or distribution-spec errors; 2 when a check
fails (determinant pattern violated, or cross-route disagreement beyond
tolerance).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import asymptotics, oracle, recurrence, roots, survival
from ._scalars import float_str, fraction_str
from .distributions import ClaimDistribution, DistributionError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK_FAILED = 2

ROUTE_AGREEMENT_TOL = 1e-8
ROOT_RESIDUAL_TOL = 1e-12
COEFFICIENT_TOL = 1e-12


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # map argparse usage errors to exit code 1
        raise _UsageError(message)


# ---------------------------------------------------------------------------
# distribution loading

_SHORTHAND = re.compile(r"(bernoulli|geometric)\((.+)\)$")


def parse_dist(text: str) -> ClaimDistribution:
    """Accept a JSON file path, an inline JSON object, or a shorthand.

    Shorthands: bernoulli(1/3), geometric(1/2), pmf:1/2,0,1/2,
    even:1/2,1/2 (base pmf of the doubled law).
    """
    text = text.strip()
    if text.startswith("{"):
        return ClaimDistribution.from_spec(json.loads(text))
    m = _SHORTHAND.match(text)
    if m:
        return getattr(ClaimDistribution, m.group(1))(m.group(2).strip())
    if text.startswith("pmf:"):
        return ClaimDistribution.tabulated([v.strip() for v in text[4:].split(",")])
    if text.startswith("even:"):
        return ClaimDistribution.even_lattice([v.strip() for v in text[5:].split(",")])
    path = Path(text)
    if path.exists():
        try:
            return ClaimDistribution.from_spec(json.loads(path.read_text()))
        except json.JSONDecodeError as exc:
            raise DistributionError(f"malformed JSON in {text}: {exc}") from exc
    raise DistributionError(
        f"cannot interpret distribution {text!r}: not a file, JSON object, or shorthand"
    )


# ---------------------------------------------------------------------------
# deterministic serialization

def jsonable(value):
    """Recursively convert to JSON-safe values with deterministic numbers."""
    if isinstance(value, Fraction):
        return fraction_str(value)
    if isinstance(value, float):
        return float_str(value)
    if isinstance(value, bool) or isinstance(value, int) or value is None:
        return value
    if isinstance(value, str):
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "__dataclass_fields__"):
        return {k: jsonable(getattr(value, k)) for k in value.__dataclass_fields__}
    return str(value)


def _flatten(prefix: str, value, rows: list):
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], rows)
    elif isinstance(value, list):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, "" if value is None else str(value)))


def render_report(report: dict, fmt: str) -> str:
    payload = jsonable(report)
    if fmt == "csv":
        rows: list = []
        _flatten("", payload, rows)
        return "\n".join(f"{k},{v}" for k, v in rows) + "\n"
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _dist_hash(dist: ClaimDistribution) -> str:
    canonical = json.dumps(dist.to_spec(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def _emit(args, command: str, results: dict, diagnostics: dict, modes: list, status: int) -> int:
    report = {
        "command": command,
        "dist": args.dist_obj.to_spec() if getattr(args, "dist_obj", None) else None,
        "dist_sha256": _dist_hash(args.dist_obj) if getattr(args, "dist_obj", None) else None,
        "modes": modes,
        "results": results,
        "diagnostics": diagnostics,
        "status": status,
    }
    text = render_report(report, args.format)
    if args.out:
        Path(args.out).write_text(text)
    sys.stdout.write(text)
    return status


# ---------------------------------------------------------------------------
# subcommands

def _cmd_table(args) -> int:
    table = recurrence.build_table(args.dist_obj, args.n, mode=args.mode)
    results = {
        "x": table.x,
        "y": table.y,
        "d": table.d,
        "scale_log2": table.scale_log2,
    }
    diag = {"hankel_max_rel_diff": table.hankel_max_rel_diff}
    return _emit(args, "table", results, diag, [args.mode], EXIT_OK)


def _cmd_conjecture(args) -> int:
    report = recurrence.check_conjecture(args.dist_obj, args.n, mode=args.mode)
    results = {
        "verdict": report.verdict,
        "holds": report.holds,
        "violation_index": report.violation_index,
        "horizon": report.horizon,
        "margins": {
            "even_level": report.even_level_margin,
            "odd_level": report.odd_level_margin,
            "even_step": report.even_step_margin,
            "odd_step": report.odd_step_margin,
        },
    }
    status = EXIT_OK if report.holds else EXIT_CHECK_FAILED
    if not report.holds:
        sys.stderr.write(f"determinant pattern violated at index {report.violation_index}\n")
    return _emit(args, "conjecture", results, {}, [report.mode], status)


def _cmd_roots(args) -> int:
    profile = roots.root_profile(args.dist_obj, tol=args.tol)
    residuals = {"alpha": roots.alpha_residual(args.dist_obj, profile.alpha)}
    if profile.beta is not None:
        residuals["beta"] = roots.beta_residual(args.dist_obj, profile.beta)
    results = {
        "alpha": profile.alpha,
        "beta": profile.beta,
        "r": profile.r,
        "residuals": residuals,
        "bracket_width_achieved": profile.bracket_width_achieved,
    }
    return _emit(args, "roots", results, {"tol": args.tol}, ["float"], EXIT_OK)


def _cmd_asympt(args) -> int:
    if args.n < 4:
        raise ValueError("--n must be at least 4 for the ratio estimate")
    dist = args.dist_obj
    profile = roots.root_profile(dist, tol=args.tol)
    coeffs = asymptotics.compute_coefficients(dist, profile)
    table = recurrence.build_table(dist, args.n + 2, mode="exact")
    pattern = asymptotics.verify_sign_monotonicity(table, coeffs)
    ratio = float(Fraction(table.d[args.n]) / Fraction(table.d[args.n - 2]))
    results = {
        "a": coeffs.a,
        "b": coeffs.b,
        "c1": coeffs.c1,
        "c2": coeffs.c2,
        "r": coeffs.r,
        "alpha": coeffs.alpha,
        "beta": coeffs.beta,
        "n0": pattern.n0,
        "n0_is_empirical": True,
        "stabilized": pattern.stabilized,
        "ratio_estimate": ratio,
        "ratio_limit": asymptotics.determinant_ratio_limit(coeffs),
        "growth": pattern.growth,
    }
    diag = {"residual_converged": asymptotics.residuals_converged(table, coeffs)}
    return _emit(args, "asympt", results, diag, ["exact", "float"], EXIT_OK)


def _cmd_solve(args) -> int:
    sol = survival.solve(
        args.dist_obj, u_max=args.u_max, route=args.route, n_limit=args.n
    )
    results = {
        "regime": sol.regime,
        "phi0": sol.phi0,
        "phi1": sol.phi1,
        "pi0": sol.pi0,
        "pi1": sol.pi1,
        "phi_table": sol.phi_table,
        "xi": list(sol.xi.coeffs) if sol.xi is not None else None,
        "method": sol.method,
        "route_diagnostics": sol.diagnostics,
    }
    delta = sol.diagnostics.get("max_route_delta", 0.0)
    status = EXIT_OK
    if args.route != "closed" and delta > ROUTE_AGREEMENT_TOL:
        status = EXIT_CHECK_FAILED
        sys.stderr.write(f"route disagreement {delta:.3e} exceeds {ROUTE_AGREEMENT_TOL}\n")
    return _emit(args, "solve", results, {}, ["exact", "float"], status)


def _cmd_dp(args) -> int:
    cfg = oracle.DPConfig(horizon=args.horizon, surplus_cap=args.cap)
    res = oracle.finite_horizon_dp(args.dist_obj, args.u, cfg)
    results = {
        "value": res.value,
        "horizon": res.horizon,
        "u": args.u,
        "surplus_cap": res.surplus_cap,
        "cap_absorbed": res.cap_absorbed,
        "truncation_tail": res.truncation_tail,
        "truncation_index": res.truncation_index,
    }
    return _emit(args, "dp", results, {}, ["float"], EXIT_OK)


def _cmd_simulate(args) -> int:
    cfg = oracle.MCConfig(trials=args.trials, horizon=args.horizon, seed=args.seed)
    res = oracle.mc_estimate(args.dist_obj, args.u, cfg)
    results = {
        "estimate": res.estimate,
        "half_width_95": res.half_width_95,
        "trials": res.trials,
        "horizon": res.horizon,
        "u": args.u,
        "seed": res.seed,
    }
    return _emit(args, "simulate", results, {}, ["float"], EXIT_OK)


# ---------------------------------------------------------------------------
# verify: the fixture x route matrix

def _verify_fixtures() -> list[ClaimDistribution]:
    return [
        ClaimDistribution.bernoulli(Fraction(1, 5)),
        ClaimDistribution.bernoulli(Fraction(1, 3)),
        ClaimDistribution.bernoulli(Fraction(1, 2)),
        ClaimDistribution.bernoulli(Fraction(4, 5)),
        ClaimDistribution.geometric(Fraction(1, 5)),
        ClaimDistribution.geometric(Fraction(1, 3)),
        ClaimDistribution.geometric(Fraction(1, 2)),
        ClaimDistribution.geometric(Fraction(2, 3)),
        ClaimDistribution.tabulated([Fraction(1, 2), 0, Fraction(1, 2)]),
        ClaimDistribution.tabulated([Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)]),
        ClaimDistribution.tabulated(
            [Fraction(2, 5), Fraction(1, 5), Fraction(1, 5), Fraction(1, 5)]
        ),
    ]


def _verify_one(dist: ClaimDistribution, horizon: int) -> dict:
    from .series import deflate_G, one_minus_s, pgf_minus_s2_series, pgf_series, series_divide

    checks: dict = {}
    conj = recurrence.check_conjecture(dist, horizon, mode="exact")
    checks["conjecture"] = conj.holds

    n_id = 60
    table = recurrence.build_table(dist, n_id + 2, mode="exact")
    h0 = dist.hk(0)
    checks["y_identity"] = all(
        table.y[n] == h0 * table.x[n + 1] for n in range(n_id + 1)
    )
    checks["parity_monotone"] = all(
        table.x[2 * n] >= 1 and table.x[2 * n + 2] >= table.x[2 * n]
        for n in range(n_id // 2)
    ) and all(
        table.x[2 * n + 1] <= 0 and table.x[2 * n + 3] <= table.x[2 * n + 1]
        for n in range(n_id // 2 - 1)
    )
    xs = series_divide(pgf_series(dist, n_id), pgf_minus_s2_series(dist, n_id), n_id)
    checks["series_matches_recurrence"] = list(xs.coeffs) == table.x[: n_id + 1]
    g = deflate_G(dist, n_id)
    back = g.mul(one_minus_s(n_id))
    checks["deflation_identity"] = (
        back.coeffs == pgf_minus_s2_series(dist, n_id).coeffs[: n_id + 1]
    )

    if dist.is_primitive():
        profile = roots.root_profile(dist)
        checks["alpha_residual"] = (
            roots.alpha_residual(dist, profile.alpha) < ROOT_RESIDUAL_TOL
        )
        if profile.beta is not None:
            checks["beta_residual"] = (
                roots.beta_residual(dist, profile.beta) < ROOT_RESIDUAL_TOL
            )
        if dist.kind == "geometric" and profile.r == 1:
            coeffs = asymptotics.compute_coefficients(dist, profile)
            ref = asymptotics.geometric_partial_fraction(dist.p)
            checks["coefficient_goldens"] = all(
                abs(got - want) < COEFFICIENT_TOL
                for got, want in zip((coeffs.a, coeffs.b, coeffs.c1), ref)
            )
    if survival.regime(dist) == survival.SURVIVABLE:
        sol = survival.solve(dist, u_max=40, route="all", n_limit=60)
        checks["route_agreement"] = (
            sol.diagnostics["max_route_delta"] < ROUTE_AGREEMENT_TOL
        )
        checks["phi_monotone"] = all(
            lo <= hi + 1e-12
            for lo, hi in zip(sol.phi_table, sol.phi_table[1:])
        ) and sol.phi_table[-1] <= 1.0 + 1e-12
    else:
        sol = survival.solve(dist, u_max=10, route="all")
        checks["zero_regime"] = (
            sol.phi0 == 0.0 and sol.phi1 == 0.0 and not any(sol.phi_table)
        )
    return checks


def _cmd_verify(args) -> int:
    horizon = args.n
    fixtures: dict = {}
    breaches: list[str] = []
    for dist in _verify_fixtures():
        checks = _verify_one(dist, horizon)
        fixtures[dist.label()] = checks
        for name, ok in checks.items():
            if not ok:
                breaches.append(f"{dist.label()}:{name}")
    results = {"fixtures": fixtures, "breaches": breaches, "horizon": horizon}
    status = EXIT_OK if not breaches else EXIT_CHECK_FAILED
    if breaches:
        sys.stderr.write("verification breaches: " + ", ".join(breaches) + "\n")
    report = {
        "command": "verify",
        "dist": None,
        "dist_sha256": None,
        "modes": ["exact", "float"],
        "results": results,
        "diagnostics": {},
        "status": status,
    }
    text = render_report(report, args.format)
    if args.out:
        Path(args.out).write_text(text)
    sys.stdout.write(text)
    return status


# ---------------------------------------------------------------------------

def _add_common(sub, dist_required: bool = True):
    if dist_required:
        sub.add_argument("--dist", required=True, help="spec file, JSON, or shorthand")
    sub.add_argument("--out", default=None, help="also write the report to this file")
    sub.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> _Parser:
    parser = _Parser(prog="ruinkit", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("table", help="x/y/D tables from the recurrences")
    _add_common(p)
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.set_defaults(func=_cmd_table)

    p = subs.add_parser("conjecture", help="exact determinant sign/monotonicity check")
    _add_common(p)
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.set_defaults(func=_cmd_conjecture)

    p = subs.add_parser("roots", help="interior zeros of H(s) - s^2 and the order at 1")
    _add_common(p)
    p.add_argument("--tol", type=float, default=1e-14)
    p.set_defaults(func=_cmd_roots)

    p = subs.add_parser("asympt", help="expansion coefficients and growth checks")
    _add_common(p)
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-14)
    p.set_defaults(func=_cmd_asympt)

    p = subs.add_parser("solve", help="survival probabilities by the three routes")
    _add_common(p)
    p.add_argument("--u-max", dest="u_max", type=int, default=100)
    p.add_argument("--route", choices=("closed", "limit", "xi", "all"), default="closed")
    p.add_argument("--n", type=int, default=60, help="index for the ratio route")
    p.set_defaults(func=_cmd_solve)

    p = subs.add_parser("dp", help="finite-horizon survival by dynamic programming")
    _add_common(p)
    p.add_argument("--u", type=int, default=0)
    p.add_argument("--horizon", type=int, default=1000)
    p.add_argument("--cap", type=int, default=None, help="surplus cap (default exact)")
    p.set_defaults(func=_cmd_dp)

    p = subs.add_parser("simulate", help="seeded Monte Carlo survival estimate")
    _add_common(p)
    p.add_argument("--u", type=int, default=0)
    p.add_argument("--horizon", type=int, default=1000)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_simulate)

    p = subs.add_parser("verify", help="full fixture-by-route cross-check matrix")
    _add_common(p, dist_required=False)
    p.add_argument("--n", type=int, default=200, help="determinant check horizon")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "dist", None) is not None:
            args.dist_obj = parse_dist(args.dist)
        else:
            args.dist_obj = None
        return args.func(args)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (DistributionError, ValueError, TypeError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
