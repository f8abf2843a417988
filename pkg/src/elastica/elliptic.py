"""Complete/incomplete elliptic integrals, Jacobi elliptic functions, and the
universal constants of the figure-eight elastica.

Complete integrals are evaluated by the arithmetic-geometric-mean iteration,
incomplete ones by adaptive Gauss-Kronrod quadrature on the defining
integrands.  The two routes are independent enough to cross-check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

__all__ = [
    "EllipticConstants",
    "complete_K",
    "complete_E",
    "incomplete_F",
    "incomplete_E",
    "amplitude",
    "cn",
    "sn",
    "dK_dm",
    "dE_dm",
    "solve_m_star",
    "constants",
]

_QUAD_OPTS = dict(epsabs=1e-14, epsrel=1e-13, limit=200)


def _check_m(m: float) -> float:
    m = float(m)
    if not 0.0 < m < 1.0:
        raise ValueError(f"parameter m must lie in the open interval (0,1), got {m}")
    return m


def complete_K(m: float) -> float:
    """Complete elliptic integral of the first kind, K(m) = F(pi/2, m)."""
    m = _check_m(m)
    a, b = 1.0, math.sqrt(1.0 - m)
    for _ in range(60):
        if abs(a - b) <= 4e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)


def complete_E(m: float) -> float:
    """Complete elliptic integral of the second kind, E(m) = E(pi/2, m)."""
    m = _check_m(m)
    a, b, c = 1.0, math.sqrt(1.0 - m), math.sqrt(m)
    csum = 0.5 * c * c  # 2^{n-1} c_n^2 terms, n = 0
    pow2 = 1.0
    for _ in range(60):
        if abs(a - b) <= 4e-16 * a:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        csum += pow2 * c * c
        pow2 *= 2.0
    K = math.pi / (2.0 * a)
    return K * (1.0 - csum)


def _F_principal(r: float, m: float) -> float:
    # r in [-pi/2, pi/2]
    if r == 0.0:
        return 0.0
    val, _ = quad(lambda t: 1.0 / math.sqrt(1.0 - m * math.sin(t) ** 2), 0.0, r, **_QUAD_OPTS)
    return val


def _E_principal(r: float, m: float) -> float:
    if r == 0.0:
        return 0.0
    val, _ = quad(lambda t: math.sqrt(1.0 - m * math.sin(t) ** 2), 0.0, r, **_QUAD_OPTS)
    return val


def incomplete_F(x: float, m: float) -> float:
    """Incomplete elliptic integral of the first kind on the defining integrand.

    Uses the quasi-periodicity F(x + pi, m) = F(x, m) + 2K(m) to reduce the
    amplitude to [-pi/2, pi/2] before quadrature.
    """
    m = _check_m(m)
    x = float(x)
    k = math.floor(x / math.pi + 0.5)
    r = x - k * math.pi
    base = 2.0 * k * complete_K(m) if k else 0.0
    return base + _F_principal(r, m)


def incomplete_E(x: float, m: float) -> float:
    """Incomplete elliptic integral of the second kind; E(x+pi,m) = E(x,m) + 2E(m)."""
    m = _check_m(m)
    x = float(x)
    k = math.floor(x / math.pi + 0.5)
    r = x - k * math.pi
    base = 2.0 * k * complete_E(m) if k else 0.0
    return base + _E_principal(r, m)


def amplitude(u: float, m: float) -> float:
    """Jacobi amplitude, the inverse of F(., m).

    Newton iteration on F(x, m) = u seeded by the linear estimate
    u * pi / (2K); F' >= 1 keeps the steps stable.  Falls back to bisection
    if Newton stalls.
    """
    m = _check_m(m)
    u = float(u)
    K = complete_K(m)
    # reduce to v in [-K, K), am(u) = k*pi + am(v)
    k = math.floor((u + K) / (2.0 * K))
    v = u - 2.0 * k * K
    phi = v * math.pi / (2.0 * K)
    phi = max(-math.pi / 2, min(math.pi / 2, phi))
    lo, hi = -math.pi / 2, math.pi / 2
    for _ in range(60):
        f = _F_principal(phi, m) - v
        if abs(f) < 1e-14 * max(1.0, abs(v)):
            break
        if f > 0:
            hi = phi
        else:
            lo = phi
        step = -f * math.sqrt(max(0.0, 1.0 - m * math.sin(phi) ** 2))
        cand = phi + step
        if lo < cand < hi:
            phi = cand
        else:
            phi = 0.5 * (lo + hi)
    return k * math.pi + phi


def cn(u: float, m: float) -> float:
    """Jacobi cn(u, m) = cos(am(u, m))."""
    return math.cos(amplitude(u, m))


def sn(u: float, m: float) -> float:
    """Jacobi sn(u, m) = sin(am(u, m))."""
    return math.sin(amplitude(u, m))


def dK_dm(m: float) -> float:
    """dK/dm = (E - (1-m)K) / (2m(1-m))."""
    m = _check_m(m)
    return (complete_E(m) - (1.0 - m) * complete_K(m)) / (2.0 * m * (1.0 - m))


def dE_dm(m: float) -> float:
    """dE/dm = (E - K) / (2m)."""
    m = _check_m(m)
    return (complete_E(m) - complete_K(m)) / (2.0 * m)


@dataclass(frozen=True)
class EllipticConstants:
    """The universal constants of the figure-eight elastica.

    m_star is the unique root of K(m) - 2E(m) in (0,1); varpi_star is the
    normalized bending energy of a half-fold figure-eight leaf; phi_star is
    half the tangent angle at the self-crossing, cos(phi_star) = 2 m_star - 1.
    """

    m_star: float
    K_star: float
    E_star: float
    varpi_star: float
    phi_star: float

    @property
    def phi_star_degrees(self) -> float:
        return math.degrees(self.phi_star)

    def as_dict(self) -> dict:
        return {
            "m_star": self.m_star,
            "K_star": self.K_star,
            "E_star": self.E_star,
            "varpi_star": self.varpi_star,
            "phi_star": self.phi_star,
            "phi_star_degrees": self.phi_star_degrees,
        }


def solve_m_star(residual_tol: float = 1e-12, max_iter: int = 200) -> EllipticConstants:
    """Solve K(m) - 2E(m) = 0 on the bracket [0.75, 0.85] and bundle the constants.

    Bisection narrows the bracket to width 1e-4, then Newton polishes with
    dK/dm - 2 dE/dm.
    """
    g = lambda m: complete_K(m) - 2.0 * complete_E(m)
    lo, hi = 0.75, 0.85
    if not (g(lo) < 0.0 < g(hi)):
        raise RuntimeError("root of K - 2E not bracketed in [0.75, 0.85]; elliptic backend broken")
    while hi - lo > 1e-4:
        mid = 0.5 * (lo + hi)
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    m = 0.5 * (lo + hi)
    for _ in range(max_iter):
        r = g(m)
        if abs(r) < residual_tol:
            break
        m -= r / (dK_dm(m) - 2.0 * dE_dm(m))
    else:
        raise RuntimeError("m* iteration did not reach residual target; elliptic backend broken")
    K = complete_K(m)
    E = complete_E(m)
    if abs(K - 2.0 * E) >= residual_tol:
        raise RuntimeError("m* residual target missed")
    varpi = 32.0 * (2.0 * m - 1.0) * E * E
    phi = math.acos(2.0 * m - 1.0)
    return EllipticConstants(m_star=m, K_star=K, E_star=E, varpi_star=varpi, phi_star=phi)


@lru_cache(maxsize=1)
def constants() -> EllipticConstants:
    """Cached EllipticConstants bundle (immutable, safe to share)."""
    return solve_m_star()


def amplitude_array(u: np.ndarray, m: float) -> np.ndarray:
    """Vectorized Jacobi amplitude."""
    return np.array([amplitude(float(x), m) for x in np.ravel(u)]).reshape(np.shape(u))
