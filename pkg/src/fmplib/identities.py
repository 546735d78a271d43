"""Per-prime residuals for every verified identity of the all-ones polylogs.

Each function returns the difference polynomial "left side minus right side"
for one prime; a correct identity gives the zero polynomial.  Residuals are
returned, not booleans, so a failure ships the full structured polynomial for
diagnosis (a wrong window slice shows up as a recognizable shape).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .fmp import BlockTriple, Index, oy_fmp, oy_fmp_general, zeta_variant
from .modular import bernoulli_mod
from .polyfp import PolyFp, compose_one_minus_t

__all__ = [
    "FactorialNotInvertible",
    "IdentityReport",
    "closed_form_residuals",
    "curly_L",
    "f_poly",
    "functional_eq_residual",
    "g_poly",
    "main_theorem_residual",
    "obstruction_n5_residual",
    "recurrence_residual",
    "shuffle_lemma_residual",
]


class FactorialNotInvertible(ValueError):
    """n! has no inverse mod p (p <= n)."""


@dataclass(frozen=True)
class IdentityReport:
    """One identity instance at one prime; pass means zero residual."""

    identity: str
    params: tuple[tuple[str, int], ...]
    prime: int
    residual: PolyFp

    @property
    def passed(self) -> bool:
        return self.residual.is_zero


def _require_p_gt_n(n: int, p: int):
    if p <= n:
        raise ValueError(f"requires p > n, got p={p}, n={n}")


@lru_cache(maxsize=None)
def ones_fmp(k: int, p: int) -> PolyFp:
    """Polylog of the all-ones index of depth k; the empty index gives 1."""
    return PolyFp.one(p) if k == 0 else oy_fmp(Index.ones(k), p)


@lru_cache(maxsize=None)
def _depth1_power(e: int, p: int) -> PolyFp:
    if e == 0:
        return PolyFp.one(p)
    return _depth1_power(e - 1, p) * ones_fmp(1, p)


def _window_poly(parts: tuple[int, ...], i_max: int, p: int) -> PolyFp:
    """Sum over i = 1..i_max of (window slice i) * t^{i*p}."""
    coeffs = [0] * (i_max * p + 1)
    for i in range(1, i_max + 1):
        coeffs[i * p] = zeta_variant(Index(parts), i, p).value
    return PolyFp.of(p, coeffs)


@lru_cache(maxsize=None)
def f_poly(n: int, p: int) -> PolyFp:
    """First error-term polynomial: window slices of ({1}^m, 2) indices
    weighted by t^{i*p}, against all-ones polylogs.  Empty sum for n < 2."""
    _require_p_gt_n(n, p)
    total = PolyFp.zero(p)
    for k in range(n - 1):
        parts = (1,) * (n - k - 2) + (2,)
        total = total + _window_poly(parts, n - k - 1, p) * ones_fmp(k, p)
    return total


@lru_cache(maxsize=None)
def g_poly(n: int, p: int) -> PolyFp:
    """Second error-term polynomial: window slices of all-ones indices against
    polylogs of (2, {1}^k).  Empty sum for n < 3."""
    _require_p_gt_n(n, p)
    total = PolyFp.zero(p)
    for k in range(n - 1):
        m = n - k - 2
        if m < 1:
            continue
        total = total + _window_poly((1,) * m, m, p) * oy_fmp(Index((2,) + (1,) * k), p)
    return total


def shuffle_lemma_residual(n: int, p: int) -> PolyFp:
    """Product of the depth-(n-1) and depth-1 all-ones polylogs, minus
    (n * depth-n polylog - f_n - g_n)."""
    _require_p_gt_n(n, p)
    lhs = ones_fmp(n - 1, p) * ones_fmp(1, p)
    rhs = ones_fmp(n, p) * n - f_poly(n, p) - g_poly(n, p)
    return lhs - rhs


@lru_cache(maxsize=None)
def _bridge(n: int, j: int, p: int) -> PolyFp:
    return oy_fmp_general(BlockTriple.of((1,) * (n - j - 1), (1,), (1,) * j), p)


def recurrence_residual(n: int, k: int, p: int) -> PolyFp:
    """One step of the interpolation between the product form (k=0) and the
    depth-n polylog (k=n-1); summing over k telescopes to the shuffle lemma."""
    _require_p_gt_n(n, p)
    if not 0 <= k <= n - 2:
        raise ValueError(f"need 0 <= k <= n-2, got k={k}, n={n}")
    f_term = _window_poly((1,) * (n - k - 2) + (2,), n - k - 1, p) * ones_fmp(k, p)
    m = n - k - 2
    g_term = (
        _window_poly((1,) * m, m, p) * oy_fmp(Index((2,) + (1,) * k), p)
        if m >= 1
        else PolyFp.zero(p)
    )
    rhs = _bridge(n, k + 1, p) + ones_fmp(n, p) - f_term - g_term
    return _bridge(n, k, p) - rhs


def _inv_int(c: int, p: int) -> int:
    c %= p
    if c == 0:
        raise FactorialNotInvertible(f"{c} not invertible mod {p}")
    return pow(c, p - 2, p)


def _correction_sum(n: int, p: int) -> PolyFp:
    """Sum over k = 1..n of (k-1)! (f_k + g_k) * (depth-1 polylog)^(n-k)."""
    total = PolyFp.zero(p)
    for k in range(1, n + 1):
        weight = math.factorial(k - 1) % p
        total = total + (f_poly(k, p) + g_poly(k, p)) * _depth1_power(n - k, p) * weight
    return total


def main_theorem_residual(n: int, p: int) -> PolyFp:
    """Depth-n all-ones polylog minus (1/n!) [ (depth-1 polylog)^n + correction ]."""
    if p <= n:
        raise FactorialNotInvertible(f"{n}! is not invertible mod {p}")
    inv_fact = _inv_int(math.factorial(n) % p, p)
    rhs = (_depth1_power(n, p) + _correction_sum(n, p)) * inv_fact
    return ones_fmp(n, p) - rhs


def curly_L(n: int, p: int) -> PolyFp:
    """Depth-n polylog minus (1/n!) * correction; equals (1/n!) (depth-1)^n
    whenever the main identity holds at p."""
    if p <= n:
        raise FactorialNotInvertible(f"{n}! is not invertible mod {p}")
    inv_fact = _inv_int(math.factorial(n) % p, p)
    return ones_fmp(n, p) - _correction_sum(n, p) * inv_fact


def functional_eq_residual(n: int, p: int) -> PolyFp:
    """The symmetrized combination evaluated at t minus at 1-t."""
    l = curly_L(n, p)
    return l - compose_one_minus_t(l)


def obstruction_n5_residual(p: int) -> PolyFp:
    """Difference of the depth-5 polylog under t -> 1-t, minus its closed form
    (B_{p-5}/5) t^p (1 - t^p)(2 t^p - 1).  Zero residual means the closed form
    is exact; the closed form itself is nonzero whenever B_{p-5} != 0 mod p."""
    if p < 7:
        raise ValueError(f"requires p >= 7, got {p}")
    five = ones_fmp(5, p)
    diff = five - compose_one_minus_t(five)
    scale = bernoulli_mod(p - 5, p).value * _inv_int(5, p) % p
    tp = PolyFp.monomial(p, p)
    closed = tp * (PolyFp.one(p) - tp) * (tp * 2 - PolyFp.one(p)) * scale
    return diff - closed


def closed_form_residuals(p: int) -> list[IdentityReport]:
    """Residuals of the worked closed forms for depths 3, 4, 5 and the
    factorization f_4 = f_3 * (depth-1 polylog)."""
    if p < 7:
        raise ValueError(f"requires p >= 7, got {p}")
    one = PolyFp.one(p)
    tp = PolyFp.monomial(p, p)
    z12 = zeta_variant(Index.of(1, 2), 1, p).value
    tail = tp * (one - tp) * z12  # t^p (1-t)^p times the depth-2 zeta value
    l1 = lambda e: _depth1_power(e, p)

    n3 = ones_fmp(3, p) - (l1(3) * _inv_int(6, p) + tail * _inv_int(3, p))
    n4 = ones_fmp(4, p) - (l1(4) * _inv_int(24, p) + tail * l1(1) * _inv_int(3, p))
    f4 = f_poly(4, p) - f_poly(3, p) * l1(1)
    n5 = ones_fmp(5, p) - (
        l1(5) * _inv_int(120, p)
        + f_poly(3, p) * l1(2) * _inv_int(15, p)
        + f_poly(5, p) * _inv_int(5, p)
    )
    return [
        IdentityReport("closed-form", (("n", 3),), p, n3),
        IdentityReport("closed-form", (("n", 4),), p, n4),
        IdentityReport("closed-form-f4-factorization", (), p, f4),
        IdentityReport("closed-form", (("n", 5),), p, n5),
    ]
