"""Independent ground truth: finite-horizon survival by DP and Monte Carlo.

phi_N(u) = P(W(n) > 0 for all 1 <= n <= N) decreases to phi(u) as N grows,
which makes it a cross-check oracle for every analytic route: it depends on
nothing but the model definition.

The DP runs forward over the surplus lattice (ruin states are absorbing and
dropped; the surplus moves by 2 - Z each step, so the live states hug the
ruin barrier).  States above ``surplus_cap`` are treated as absorbed-safe;
with the default cap u + 2N no state can exceed it and the DP is exact up to
claim-tail truncation and float rounding.  A smaller cap over-counts
survival by at most the absorbed mass, which is reported.

The Monte Carlo is bit-reproducible and partition-independent: claims for
step j live on the Philox counter plane j << 128 under the run's key (the
seed), and trial i consumes word i of that plane.  Any 4-aligned block of
trials can therefore be regenerated in isolation (Philox counters advance in
4-word blocks), so evaluating trials in chunks - serially or concurrently -
reproduces the monolithic run exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import ClaimDistribution


@dataclass(frozen=True)
class DPConfig:
    """horizon N; surplus cap (None = u + 2N, exact); claim-tail threshold."""

    horizon: int
    surplus_cap: int | None = None
    tail_epsilon: float | None = None


@dataclass(frozen=True)
class DPResult:
    value: float
    horizon: int
    surplus_cap: int
    cap_absorbed: float  # one-sided bound on the cap-policy overcount
    truncation_tail: float  # pmf mass dropped by claim truncation
    truncation_index: int


@dataclass(frozen=True)
class MCConfig:
    trials: int
    horizon: int
    seed: int = 0


@dataclass(frozen=True)
class MCResult:
    estimate: float
    half_width_95: float
    trials: int
    horizon: int
    seed: int


def finite_horizon_dp(dist: ClaimDistribution, u: int, cfg: DPConfig) -> DPResult:
    """Survival probability through horizon N, exact up to stated policies.

    Survive step n from surplus w iff the claim z satisfies w + 2 - z >= 1;
    mass moving to w' > cap is absorbed as safe, mass at w' <= 0 is ruined
    and dropped.
    """
    if u < 0:
        raise ValueError("initial surplus must be non-negative")
    n_steps = cfg.horizon
    if n_steps < 1:
        raise ValueError("horizon must be at least 1")
    cap = cfg.surplus_cap if cfg.surplus_cap is not None else u + 2 * n_steps
    if cap < u + 2:
        raise ValueError("surplus cap must admit at least the first step")
    eps = dist.tail_epsilon if cfg.tail_epsilon is None else cfg.tail_epsilon
    # claims beyond cap + 1 ruin every in-cap state; dropping them is exact
    k_top = min(dist.truncation_index(eps), cap + 1)
    h = np.array([float(v) for v in dist.pmf_prefix(k_top)], dtype=np.float64)
    tail = max(0.0, 1.0 - float(h.sum()))
    hr = h[::-1].copy()
    big_k = len(h) - 1

    # v[i] = P(alive, surplus = i + 1); first step from the deterministic u
    absorbed = 0.0
    first = np.zeros(min(u + 2, cap), dtype=np.float64)
    for z in range(min(big_k, u + 1) + 1):
        w = u + 2 - z
        if w > cap:
            absorbed += h[z]
        else:
            first[w - 1] += h[z]
    v = first

    for _ in range(2, n_steps + 1):
        conv = np.convolve(v, hr)
        # conv[t] collects all mass landing on surplus j = t + 3 - big_k
        t_lo = big_k - 2  # j = 1
        t_hi = t_lo + cap  # first index with j > cap
        if t_hi < len(conv):
            absorbed += float(conv[t_hi:].sum())
        seg = conv[max(0, t_lo):t_hi]
        if t_lo >= 0:
            v = seg
        else:
            v = np.concatenate([np.zeros(-t_lo, dtype=np.float64), seg])
    value = float(v.sum()) + absorbed
    return DPResult(
        value=value,
        horizon=n_steps,
        surplus_cap=cap,
        cap_absorbed=absorbed if cfg.surplus_cap is not None else 0.0,
        truncation_tail=tail,
        truncation_index=k_top,
    )


def _claim_cdf(dist: ClaimDistribution, eps: float | None = None) -> np.ndarray:
    k_top = dist.truncation_index(eps if eps is not None else dist.tail_epsilon)
    return np.cumsum(
        np.array([float(v) for v in dist.pmf_prefix(k_top)], dtype=np.float64)
    )


def _step_generator(seed: int, step: int, word_offset: int = 0) -> np.random.Generator:
    """Generator positioned on the counter plane of one step.

    ``word_offset`` must be a multiple of 4: Philox emits 4 words per counter
    and a 4-aligned offset lands exactly on a block boundary.
    """
    if word_offset % 4:
        raise ValueError("word offset must be 4-aligned")
    counter = (step << 128) + (word_offset >> 2)
    return np.random.Generator(np.random.Philox(key=np.uint64(seed), counter=counter))


def _simulate_block(
    dist: ClaimDistribution,
    u: int,
    cfg: MCConfig,
    start: int,
    count: int,
    cdf: np.ndarray,
) -> int:
    """Number of surviving trials among [start, start + count)."""
    w = np.full(count, u, dtype=np.int64)
    alive = np.ones(count, dtype=bool)
    for step in range(1, cfg.horizon + 1):
        gen = _step_generator(cfg.seed, step, start)
        uniforms = gen.random(count)
        claims = np.searchsorted(cdf, uniforms, side="right")
        w = np.where(alive, w + 2 - claims, w)
        alive &= w >= 1
        if not alive.any():
            break
    return int(alive.sum())


def mc_estimate(
    dist: ClaimDistribution,
    u: int,
    cfg: MCConfig,
    trial_chunk: int | None = None,
) -> MCResult:
    """Survival frequency over cfg.trials paths, with a 95% half-width.

    Identical (seed, trials, horizon) give bit-identical estimates however
    the trials are chunked; ``trial_chunk`` (a multiple of 4) only bounds the
    working-set size.
    """
    if cfg.trials < 1:
        raise ValueError("at least one trial is required")
    if u < 0:
        raise ValueError("initial surplus must be non-negative")
    if trial_chunk is not None and (trial_chunk < 4 or trial_chunk % 4):
        raise ValueError("trial_chunk must be a positive multiple of 4")
    cdf = _claim_cdf(dist)
    chunk = cfg.trials if trial_chunk is None else trial_chunk
    survivors = 0
    start = 0
    while start < cfg.trials:
        count = min(chunk, cfg.trials - start)
        survivors += _simulate_block(dist, u, cfg, start, count, cdf)
        start += count
    estimate = survivors / cfg.trials
    half_width = 1.96 * math.sqrt(max(estimate * (1.0 - estimate), 0.0) / cfg.trials)
    return MCResult(
        estimate=estimate,
        half_width_95=half_width,
        trials=cfg.trials,
        horizon=cfg.horizon,
        seed=cfg.seed,
    )
