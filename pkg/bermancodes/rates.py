"""Exact and Gaussian rate analysis for both families."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import pi, sqrt
from typing import Optional

from scipy.optimize import brentq
from scipy.special import erfc

from .codes import Family, dual_berman_dimension
from .errors import InvalidParameterError

# Shevtsova's universal Berry-Esseen constant
SHEVTSOVA_CONSTANT = 0.4748
Q_INVERSE_TOLERANCE = 1e-10


def q_function(x: float) -> float:
    """Standard normal upper tail."""
    return 0.5 * float(erfc(x / sqrt(2.0)))


def q_inverse(p: float) -> float:
    if not 0.0 < p < 1.0:
        raise InvalidParameterError(f"Q^-1 needs 0 < p < 1, got {p}")
    return float(brentq(lambda x: q_function(x) - p, -40.0, 40.0, xtol=Q_INVERSE_TOLERANCE))


@dataclass(frozen=True)
class RateModel:
    """Moments of a Bernoulli((n-1)/n) coordinate weight indicator plus a Berry-Esseen constant."""

    n: int
    kappa: Optional[float] = None
    mu: float = field(init=False)
    sigma2: float = field(init=False)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidParameterError(f"n must be at least 2, got {self.n}")
        mu = (self.n - 1) / self.n
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sigma2", (self.n - 1) / self.n**2)
        if self.kappa is None:
            object.__setattr__(self, "kappa", SHEVTSOVA_CONSTANT * self.third_moment / self.sigma2**1.5)
        elif self.kappa <= 0:
            raise InvalidParameterError(f"kappa must be positive, got {self.kappa}")

    @property
    def third_moment(self) -> float:
        """E|X - mu|^3 for X ~ Bernoulli(mu)."""
        p = self.mu
        return p * (1 - p) * (p * p + (1 - p) * (1 - p))


def _check(n: int, r: int, m: int) -> None:
    if n < 2 or m < 1 or not 0 <= r <= m:
        raise InvalidParameterError(f"invalid parameters n={n}, r={r}, m={m}")


def exact_rate(n: int, r: int, m: int, family: Family | str = Family.DUAL) -> Fraction:
    _check(n, r, m)
    dual = Fraction(dual_berman_dimension(n, r, m), n**m)
    return dual if Family(family) is Family.DUAL else 1 - dual


def gaussian_rate_approx(n: int, r: int, m: int) -> float:
    """1 - Q((r - m mu) / sqrt(m sigma^2)), the normal approximation of the dual rate."""
    _check(n, r, m)
    model = RateModel(n)
    return 1.0 - q_function((r - m * model.mu) / sqrt(m * model.sigma2))


@dataclass(frozen=True)
class RateSelection:
    r: int
    rate: Fraction
    gaussian_r: int


def select_r_for_target_rate(n: int, m: int, target: float, family: Family | str = Family.DUAL) -> RateSelection:
    """The r whose exact rate is closest to ``target``; ties go to the smaller r."""
    if not 0.0 < target < 1.0:
        raise InvalidParameterError(f"target rate must lie in (0, 1), got {target}")
    _check(n, 0, m)
    family = Family(family)
    best_r, best_gap = 0, None
    for r in range(m + 1):
        gap = abs(float(exact_rate(n, r, m, family)) - target)
        if best_gap is None or gap < best_gap:
            best_r, best_gap = r, gap

    model = RateModel(n)
    dual_target = target if family is Family.DUAL else 1.0 - target
    estimate = m * model.mu + q_inverse(1.0 - dual_target) * sqrt(m * model.sigma2)
    gaussian_r = min(max(int(round(estimate)), 0), m)
    return RateSelection(best_r, exact_rate(n, best_r, m, family), gaussian_r)


def reed_muller_rate_change_bound(m: int, k: int) -> float:
    return (3 * k + 4) / (5 * sqrt(m))


@dataclass(frozen=True)
class RateChangeReport:
    n: int
    r: int
    m: int
    k: int
    kappa: float
    dual_difference: Fraction
    berman_difference: Fraction
    dual_bound: float
    berman_bound: float
    reed_muller_bound: Optional[float]

    @property
    def nonnegative(self) -> bool:
        return self.dual_difference >= 0 and self.berman_difference >= 0

    @property
    def within_bounds(self) -> bool:
        return float(self.dual_difference) <= self.dual_bound and float(self.berman_difference) <= self.berman_bound


def rate_change_bounds(n: int, r: int, m: int, k: int, model: Optional[RateModel] = None) -> RateChangeReport:
    """Rate loss when m grows by k at fixed r (dual) or fixed m - r (Berman), against the closed-form ceilings."""
    if k < 1:
        raise InvalidParameterError(f"k must be at least 1, got {k}")
    _check(n, r, m)
    model = model or RateModel(n)
    dual_difference = exact_rate(n, r, m, Family.DUAL) - exact_rate(n, r, m + k, Family.DUAL)
    berman_difference = exact_rate(n, r, m, Family.BERMAN) - exact_rate(n, r + k, m + k, Family.BERMAN)
    head = 2 * model.kappa / sqrt(m)
    spread = (k / sqrt(m)) / sqrt(8 * pi * model.sigma2)
    return RateChangeReport(
        n=n,
        r=r,
        m=m,
        k=k,
        kappa=model.kappa,
        dual_difference=dual_difference,
        berman_difference=berman_difference,
        dual_bound=head + spread * (1 + model.mu),
        berman_bound=head + spread * (model.mu + 2),
        reed_muller_bound=reed_muller_rate_change_bound(m, k) if n == 2 else None,
    )

