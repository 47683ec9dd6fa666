"""Global correction constants and predicted candidate counts.

The naive chance that both p and I are prime is 1/(ln p * ln I); the local
densities skew this by the product of the per-prime correction factors c(l).
That product converges only conditionally, so it is always accumulated in
ascending order of l, which is part of the contract.  Three prediction modes
are supported: a fixed global constant, a cutoff at l <= I mirroring the slow
convergence of the constant, and a Mertens-style truncation that swaps in the
p-only factors c_p(l) between I^(e^-gamma) and p^(e^-gamma).
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum

from .exactfield import CyclicCMField
from .numutil import sieve_primes
from .splitting import correction_factor, cp_factor
from .weilnum import index_from_CD, p_from_CD

EULER_GAMMA = 0.5772156649015329


class PredictionMode(str, Enum):
    CONSTANT = "constant"
    TRUNCATED = "truncated"
    MERTENS = "mertens"


@dataclass(frozen=True)
class PredictionConfig:
    mode: PredictionMode = PredictionMode.CONSTANT
    z_max: int = 10**6
    gamma: float = EULER_GAMMA
    min_p: int = 7
    min_I: int = 2

    def __post_init__(self) -> None:
        if self.z_max < 100:
            raise ValueError("z_max must be >= 100")
        if self.min_p < 3:
            raise ValueError("min_p must be >= 3")


@dataclass(frozen=True)
class CorrectionConstant:
    value: float
    z: int
    restricted: bool
    diverges: bool  # true when c(3) = 0, i.e. 3 splits totally

    def __float__(self) -> float:
        return self.value


_TABLE_CACHE: dict = {}


def _factor_table(field: CyclicCMField, z: int, kind: str):
    """(primes <= z, ascending cumulative products of c or c_p), cached."""
    key = (field, z, kind)
    cached = _TABLE_CACHE.get(key)
    if cached is not None:
        return cached
    primes = sieve_primes(z)
    local = correction_factor if kind == "c" else cp_factor
    cum = []
    acc = 1.0
    for l in primes:
        acc *= float(local(field, l))
        cum.append(acc)
    result = (primes, tuple(cum))
    _TABLE_CACHE[key] = result
    return result


def correction_constant(
    field: CyclicCMField, z: int, restricted: bool = False
) -> CorrectionConstant:
    """Product of c(l) over primes l <= z in ascending order.

    restricted=True drops l = 2 and the divisors of b and d, leaving exactly
    the conditionally convergent part (the split and inert classes).  Each
    c(l) is computed as an exact rational before the float conversion.
    """
    if z < 2:
        raise ValueError("z must be >= 2")
    value = 1.0
    diverges = False
    for l in sieve_primes(z):
        if restricted and (l == 2 or field.d % l == 0 or field.b % l == 0):
            continue
        cl = float(correction_factor(field, l))
        if cl == 0.0:
            diverges = True
        value *= cl
    return CorrectionConstant(value=value, z=z, restricted=restricted, diverges=diverges)


def _pair_numerator(field, I, p, cfg, primes, cum_c, cum_cp):
    if cfg.mode is PredictionMode.CONSTANT:
        return cum_c[-1]
    if cfg.mode is PredictionMode.TRUNCATED:
        cut = bisect_right(primes, min(I, cfg.z_max))
        return cum_c[cut - 1] if cut else 1.0
    # Mertens: c(l) below I^(e^-gamma), c_p(l) from there up to p^(e^-gamma)
    damp = math.exp(-cfg.gamma)
    bound_i = math.exp(damp * math.log(I)) if I > 1 else 1.0
    bound_p = math.exp(damp * math.log(p)) if p > 1 else 1.0
    i_cut = bisect_right(primes, bound_i)
    num = cum_c[i_cut - 1] if i_cut else 1.0
    p_cut = bisect_right(primes, bound_p)
    if p_cut > i_cut:
        tail = cum_cp[p_cut - 1] / (cum_cp[i_cut - 1] if i_cut else 1.0)
        num *= tail
    return num


def predict_probability(
    field: CyclicCMField, p: int, I: int, cfg: PredictionConfig | None = None
) -> float:
    """Heuristic probability that this (p, I) pair is a prime pair."""
    cfg = cfg or PredictionConfig()
    if p < cfg.min_p:
        raise ValueError(f"p = {p} below min_p = {cfg.min_p}")
    if I < cfg.min_I:
        raise ValueError(f"I = {I} below min_I = {cfg.min_I}")
    primes, cum_c = _factor_table(field, cfg.z_max, "c")
    cum_cp = (
        _factor_table(field, cfg.z_max, "cp")[1]
        if cfg.mode is PredictionMode.MERTENS
        else None
    )
    num = _pair_numerator(field, I, p, cfg, primes, cum_c, cum_cp)
    return num / (math.log(p) * math.log(I))


@dataclass(frozen=True)
class PredictedCount:
    bound: int
    raw: float
    count: int  # raw rounded half away from zero
    mode: PredictionMode


def _round_half_away(x: float) -> int:
    return math.floor(x + 0.5) if x >= 0 else -math.floor(-x + 0.5)


def predict_counts(
    field: CyclicCMField,
    bounds,
    cfg: PredictionConfig | None = None,
    include_diagonal: bool = False,
) -> dict[int, PredictedCount]:
    """Predicted prime-pair counts over odd (C, D) in [1, bound]^2.

    Pairs with p < min_p or I < min_I are skipped (the actual enumeration has
    no such exclusion beyond primality itself).  The diagonal C = D is also
    skipped by default: there I = (b/2)*C^2, which is composite past the
    first entry, and the reference count predictions were computed without
    those terms.  Terms are bucketed by max(C, D) and summed with math.fsum,
    so any partition of the grid merges to the same result.
    """
    cfg = cfg or PredictionConfig()
    bounds = sorted(set(int(b) for b in bounds))
    if not bounds or bounds[0] < 3:
        raise ValueError("bounds must be >= 3")
    top = bounds[-1]
    primes, cum_c = _factor_table(field, cfg.z_max, "c")
    cum_cp = (
        _factor_table(field, cfg.z_max, "cp")[1]
        if cfg.mode is PredictionMode.MERTENS
        else None
    )
    buckets: list[list[float]] = [[] for _ in bounds]
    for C in range(1, top + 1, 2):
        for D in range(1, top + 1, 2):
            if C == D and not include_diagonal:
                continue
            p = p_from_CD(field, C, D)
            if p < cfg.min_p:
                continue
            I = index_from_CD(field, C, D)
            if I < cfg.min_I:
                continue
            num = _pair_numerator(field, I, p, cfg, primes, cum_c, cum_cp)
            term = num / (math.log(p) * math.log(I))
            m = C if C >= D else D
            idx = 0
            while bounds[idx] < m:
                idx += 1
            buckets[idx].append(term)
    out: dict[int, PredictedCount] = {}
    acc: list[float] = []
    for bound, bucket in zip(bounds, buckets):
        acc.extend(bucket)
        raw = math.fsum(acc)
        out[bound] = PredictedCount(
            bound=bound, raw=raw, count=_round_half_away(raw), mode=cfg.mode
        )
    return out


def predict_count(
    field: CyclicCMField,
    bound: int,
    cfg: PredictionConfig | None = None,
    include_diagonal: bool = False,
) -> PredictedCount:
    return predict_counts(field, [bound], cfg, include_diagonal)[bound]


@dataclass(frozen=True)
class CpProduct:
    value: float
    z: int
    partials: tuple[tuple[int, float], ...]  # (l, running product)


def cp_product_convergence(field: CyclicCMField, z: int) -> CpProduct:
    """Partial products of c_p(l) over primes d < l <= z, ascending."""
    if z < 2:
        raise ValueError("z must be >= 2")
    partials = []
    acc = 1.0
    for l in sieve_primes(z):
        if l <= field.d:
            continue
        acc *= float(cp_factor(field, l))
        partials.append((l, acc))
    return CpProduct(value=acc, z=z, partials=tuple(partials))
