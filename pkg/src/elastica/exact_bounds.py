"""Exact rational bracketing of the figure-eight parameter.

The series (2/pi)(K(m) - 2E(m)) + 1 = sum A_n m^n has coefficients
A_n = ((2n-1)!!/(2n)!!)^2 (2n+1)/(2n-1) with 0 < A_n <= 1, so the partial
sums S_N and the geometric-tail majorants T_N = S_N + m^{N+1}/(1-m) bracket
the value.  All arithmetic here is exact; the comparisons carry the proof
burden that 0.75 < m* < 0.85.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import elliptic

__all__ = ["coeff_A", "partial_S", "tail_T", "SeriesBracket", "verify_bracket", "BracketReport"]


def coeff_A(n: int) -> Fraction:
    """Exact series coefficient ((2n-1)!!/(2n)!!)^2 (2n+1)/(2n-1)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    ratio = Fraction(1)
    for j in range(1, n + 1):
        ratio *= Fraction(2 * j - 1, 2 * j)
    return ratio * ratio * Fraction(2 * n + 1, 2 * n - 1)


def _check_rational_m(m: Fraction) -> Fraction:
    m = Fraction(m)
    if not 0 < m < 1:
        raise ValueError(f"m must be a rational in (0,1), got {m}")
    return m


def partial_S(N: int, m: Fraction) -> Fraction:
    """Partial sum S_N(m) = sum_{n=1}^N A_n m^n, exactly."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    m = _check_rational_m(m)
    return sum((coeff_A(n) * m**n for n in range(1, N + 1)), Fraction(0))


def tail_T(N: int, m: Fraction) -> Fraction:
    """Upper bracket T_N(m) = S_N(m) + m^{N+1}/(1-m), exactly."""
    m = _check_rational_m(m)
    return partial_S(N, m) + m ** (N + 1) / (1 - m)


@dataclass(frozen=True)
class SeriesBracket:
    """Exact sandwich S_N(m) <= (2/pi)(K-2E) + 1 <= T_N(m) at one rational m."""

    N: int
    m: Fraction
    lower_S: Fraction
    upper_T: Fraction

    def __post_init__(self):
        if self.lower_S > self.upper_T:
            raise ValueError("bracket is inverted")


def bracket(N: int, m: Fraction) -> SeriesBracket:
    m = _check_rational_m(m)
    return SeriesBracket(N=N, m=m, lower_S=partial_S(N, m), upper_T=tail_T(N, m))


@dataclass
class BracketReport:
    """Outcome of the exact bracket verification."""

    checks: list = field(default_factory=list)  # (name, passed, detail)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def add(self, name: str, ok: bool, detail: str) -> None:
        self.checks.append((name, bool(ok), detail))


def _float_series_value(m: float) -> float:
    return (2.0 / math.pi) * (elliptic.complete_K(m) - 2.0 * elliptic.complete_E(m)) + 1.0


def verify_bracket() -> BracketReport:
    """Exact-integer verification that T_10(3/4) < 1 < S_7(17/20).

    Also sandwiches the floating-point elliptic backend inside the exact
    brackets at both endpoints (tolerance absorbs the float error only; the
    exact comparisons involve no rounding at all).
    """
    report = BracketReport()
    t10 = tail_T(10, Fraction(3, 4))
    s7 = partial_S(7, Fraction(17, 20))
    report.add("T_10(3/4) < 1", t10 < 1, f"T_10(3/4) = {t10}")
    report.add("S_7(17/20) > 1", s7 > 1, f"S_7(17/20) = {s7}")
    for mq, N in ((Fraction(3, 4), 10), (Fraction(17, 20), 7)):
        br = bracket(N, mq)
        fval = _float_series_value(float(mq))
        ok = float(br.lower_S) <= fval + 1e-10 and fval <= float(br.upper_T) + 1e-10
        report.add(
            f"float sandwich at m={mq}, N={N}",
            ok,
            f"S={float(br.lower_S):.15g} <= {fval:.15g} <= T={float(br.upper_T):.15g}",
        )
    return report
