"""Nonrelativistic neutral-fermion (Aharonov-Casher) sector.

A neutral fermion with an anomalous magnetic moment moving in the 1/r electric
field of a charged thread reduces, per angular channel, to the radial
Schroedinger problem with index gamma = |l + zeta*M*a|.  For 0 < gamma < 1 the
origin admits a one-parameter family of self-adjoint boundary conditions

    f(r) -> A [ (m r)^gamma - xi_int (m r)^(-gamma) ],   r -> 0,

and a single negative level exists exactly for reported xi < 0, with the
closed form

    E_n = -2 m ( -xi Gamma(1-gamma)/Gamma(1+gamma) )^(-1/gamma).

gamma = 0 is a separate logarithmic chart with its own closed form
E_0 = -4 m exp(2(xi - euler)); gamma >= 1 has no extension and no bound state.
The reported xi is oriented so that the bound side is xi < 0 (the raw internal
template ratio of the decaying K_gamma profile is -xi).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

from . import numkernel as nk
from .ab_spectrum import (
    CRITICAL_TOL,
    EnergyDomainError,
    Extension,
    RadialDoublet,
    RegimeError,
)

__all__ = [
    "ACRegime",
    "ACChannel",
    "ACLevel",
    "EULER_GAMMA",
    "ac_classify",
    "ac_wronskian",
    "ac_bound_energy",
    "ac_solve_cross_check",
    "ac_special_levels",
    "ac_wavefunction",
    "ac_omega_xi_continued",
    "ac_spectral_density",
    "fit_ac_boundary_xi",
]

EULER_GAMMA = 0.5772156649015328606


class ACRegime(Enum):
    EXTENDED = "extended"  # 0 < gamma < 1
    LOG_CRITICAL = "log-critical"  # gamma = 0
    REGULAR = "regular"  # gamma >= 1


@dataclass(frozen=True)
class ACChannel:
    """One angular channel of the neutral-fermion problem.

    ``coupling`` is the product M*a of the anomalous magnetic moment and the
    thread charge parameter; classification uses gamma = |l + zeta*coupling|
    alone, attractivity bookkeeping is left to the caller.
    """

    m: float
    coupling: float
    l: int
    zeta: int

    def __post_init__(self) -> None:
        if not self.m > 0.0:
            raise ValueError(f"ACChannel: m must be > 0, got {self.m}")
        if self.zeta not in (-1, 1):
            raise ValueError(f"ACChannel: zeta must be +-1, got {self.zeta}")
        if self.l != int(self.l):
            raise ValueError(f"ACChannel: l must be integer, got {self.l}")

    @property
    def gamma(self) -> float:
        return abs(self.l + self.zeta * self.coupling)

    @property
    def regime(self) -> ACRegime:
        g = self.gamma
        if g < CRITICAL_TOL:
            return ACRegime.LOG_CRITICAL
        if g >= 1.0 - CRITICAL_TOL:
            return ACRegime.REGULAR
        return ACRegime.EXTENDED


class ACClass(NamedTuple):
    gamma: float
    regime: ACRegime


def ac_classify(ch: ACChannel) -> ACClass:
    return ACClass(ch.gamma, ch.regime)


@dataclass(frozen=True)
class ACLevel:
    """A solved negative level: E_n < 0, kappa = sqrt(-2 m E_n)."""

    E_n: float
    kappa: float
    xi: float
    channel: ACChannel
    residual: float


def _require_extended(ch: ACChannel, what: str) -> None:
    if ch.regime is not ACRegime.EXTENDED:
        raise RegimeError(
            f"{what}: channel gamma={ch.gamma:.6g} is {ch.regime.value}; "
            "requires 0 < gamma < 1"
        )


def ac_wronskian(ch: ACChannel, E_n: float) -> float:
    """omega(E_n) = Gamma(1+gamma)/Gamma(1-gamma) * (2m/kappa)^(2 gamma), E_n < 0."""
    _require_extended(ch, "ac_wronskian")
    if not E_n < 0.0:
        raise EnergyDomainError(f"ac_wronskian: need E_n < 0, got {E_n}")
    g, m = ch.gamma, ch.m
    kappa = math.sqrt(-2.0 * m * E_n)
    return nk.gamma_fn(1.0 + g) / nk.gamma_fn(1.0 - g) * (2.0 * m / kappa) ** (2.0 * g)


def _level_residual(ch: ACChannel, xi: float, E_n: float) -> float:
    # mismatch of the level equation omega(E_n) = -xi
    return abs(ac_wronskian(ch, E_n) + xi)


def ac_bound_energy(ch: ACChannel, ext: Extension) -> Optional[ACLevel]:
    """Closed-form bound level, or None for xi >= 0 (including xi = infinity).

    Extended:      E_n = -2m (-xi Gamma(1-gamma)/Gamma(1+gamma))^(-1/gamma)
    LogCritical:   E_0 = -4m exp(2 (xi - euler))     (separate parameter chart)
    Regular:       RegimeError (no extension, no bound state)
    """
    regime = ch.regime
    if regime is ACRegime.REGULAR:
        raise RegimeError(
            f"ac_bound_energy: gamma={ch.gamma:.6g} is regular; no bound state"
        )
    xi = ext.xi
    if ext.is_infinite or xi >= 0.0:
        return None
    m = ch.m
    if regime is ACRegime.LOG_CRITICAL:
        E0 = -4.0 * m * math.exp(2.0 * (xi - EULER_GAMMA))
        return ACLevel(E_n=E0, kappa=math.sqrt(-2.0 * m * E0), xi=xi, channel=ch, residual=0.0)
    g = ch.gamma
    base = -xi * nk.gamma_fn(1.0 - g) / nk.gamma_fn(1.0 + g)
    E_n = -2.0 * m * base ** (-1.0 / g)
    return ACLevel(
        E_n=E_n,
        kappa=math.sqrt(-2.0 * m * E_n),
        xi=xi,
        channel=ch,
        residual=_level_residual(ch, xi, E_n),
    )


def ac_solve_cross_check(ch: ACChannel, ext: Extension) -> ACLevel:
    """Same level found by bracketed root search on the level equation.

    Solves ln omega(E_n) = ln(-xi) in y = ln(kappa/m); agrees with the closed
    form to better than 1e-9 m by construction of the root tolerance.
    """
    _require_extended(ch, "ac_solve_cross_check")
    xi = ext.xi
    if ext.is_infinite or xi >= 0.0:
        raise ValueError("ac_solve_cross_check: requires finite xi < 0")
    g, m = ch.gamma, ch.m
    lng = math.log(nk.gamma_fn(1.0 + g) / nk.gamma_fn(1.0 - g))
    target = math.log(-xi)

    def h(y: float) -> float:
        # ln omega at kappa = m e^y
        return lng + 2.0 * g * (math.log(2.0) - y) - target

    bracket = nk.Bracket.from_function(h, -60.0, 60.0)
    y = nk.find_root_bracketed(h, bracket, tol_x=1e-14, tol_f=0.0)
    kappa = m * math.exp(y)
    E_n = -kappa * kappa / (2.0 * m)
    return ACLevel(
        E_n=E_n, kappa=kappa, xi=xi, channel=ch, residual=_level_residual(ch, xi, E_n)
    )


def ac_special_levels(c: float, ext: Extension) -> tuple[float, float]:
    """Closed forms for the two channel families at -M a = c in (0,1).

    Returns (E0, E1): the l = 0 level (gamma = c) and the l = +-1 level
    (gamma = 1 - c), in units of m = 1.  They satisfy the degeneracy
    E0(c) = E1(1 - c) exactly.
    """
    if not 0.0 < c < 1.0:
        raise EnergyDomainError(f"ac_special_levels: need c in (0,1), got {c}")
    xi = ext.xi
    if ext.is_infinite or xi >= 0.0:
        raise ValueError("ac_special_levels: requires finite xi < 0")
    e0 = -2.0 * (-xi * nk.gamma_fn(1.0 - c) / nk.gamma_fn(1.0 + c)) ** (-1.0 / c)
    e1 = -2.0 * (-xi * nk.gamma_fn(c) / nk.gamma_fn(2.0 - c)) ** (1.0 / (c - 1.0))
    return e0, e1


def ac_wavefunction(level: ACLevel) -> RadialDoublet:
    """Normalized bound profile f(r) = N sqrt(m r) K_gamma(kappa r), single component.

    The second doublet slot is identically zero; the leading small-r power is
    1/2 - gamma, the subleading 1/2 + gamma, matching the domain template of
    the extension family.
    """
    ch = level.channel
    g, m, kappa = ch.gamma, ch.m, level.kappa

    def raw(r: float) -> float:
        return math.sqrt(m * r) * nk.bessel_k(g, kappa * r)

    sing = max(0.0, 2.0 * g - 1.0)
    sq = nk.integrate_semiline(
        lambda r: raw(r) ** 2, decay_rate=kappa, singular_exponent=sing, rel_tol=1e-11
    )
    n_const = 1.0 / math.sqrt(sq.value)

    def evaluator(r: float) -> tuple[float, float]:
        return n_const * raw(r), 0.0

    return RadialDoublet(
        evaluator=evaluator,
        small_r_exponents=(0.5 - g, math.nan),
        decay_rate=kappa,
        norm=1.0,
    )


def _bessel_i_series(a: float, x: float) -> float:
    # ascending series of I_a(x); ample for the x <= 1 radii used below
    term = (0.5 * x) ** a * nk.rgamma(a + 1.0)
    total = term
    x2 = 0.25 * x * x
    for k in range(1, 60):
        term *= x2 / (k * (a + k))
        total += term
        if abs(term) < 1e-18 * abs(total):
            break
    return total


def fit_ac_boundary_xi(doublet: RadialDoublet, ch: ACChannel, kappa: float) -> float:
    """Recover the extension parameter from the profile's boundary behavior.

    The single component holds both powers r^(1/2 +- gamma), so a truncated
    monomial fit degrades as gamma -> 1; instead the profile is projected on
    the exact regular/irregular local solutions (normalized to the domain
    template (m r)^(+-gamma)) at two moderate radii.  The raw internal ratio
    is then mapped back to the reported orientation (bound side at xi < 0).
    """
    _require_extended(ch, "fit_ac_boundary_xi")
    g, m = ch.gamma, ch.m
    pref = (2.0 * m / kappa) ** g

    def basis(r: float) -> tuple[float, float]:
        x = kappa * r
        sq = math.sqrt(m * r)
        b_reg = nk.gamma_fn(1.0 + g) * pref * _bessel_i_series(g, x) * sq
        b_irr = nk.gamma_fn(1.0 - g) / pref * _bessel_i_series(-g, x) * sq
        return b_reg, b_irr

    ra, rb = 0.35 / kappa, 0.85 / kappa
    a11, a12 = basis(ra)
    a21, a22 = basis(rb)
    ya = doublet.evaluator(ra)[0]
    yb = doublet.evaluator(rb)[0]
    det = a11 * a22 - a12 * a21
    p_coef = (ya * a22 - yb * a12) / det
    q_coef = (a11 * yb - a21 * ya) / det
    xi_internal = -(q_coef / p_coef)
    return -xi_internal


def ac_omega_xi_continued(ch: ACChannel, ext: Extension, E_n: float) -> complex:
    """omega_xi on the upper rim of the continuum E_n > 0.

    First-sheet branch kappa(E_n + i0) = -i sqrt(2 m E_n), i.e.
    kappa^(-2 gamma) -> k^(-2 gamma) exp(i pi gamma); never zero for E_n > 0.
    """
    _require_extended(ch, "ac_omega_xi_continued")
    xi = ext.xi
    if math.isinf(xi):
        raise ValueError("ac_omega_xi_continued: xi must be finite")
    if not E_n > 0.0:
        raise EnergyDomainError(f"ac_omega_xi_continued: need E_n > 0, got {E_n}")
    g, m = ch.gamma, ch.m
    k = math.sqrt(2.0 * m * E_n)
    ratio = nk.gamma_fn(1.0 + g) / nk.gamma_fn(1.0 - g)
    omega_c = ratio * (2.0 * m / k) ** (2.0 * g) * cmath.exp(1j * math.pi * g)
    return omega_c + xi


def ac_spectral_density(ch: ACChannel, ext: Extension, E_n: float) -> float:
    """Continuum spectral weight (1/pi) Im[-1/omega_xi(E_n + i0)], nonnegative.

    The overall sign is the once-calibrated orientation of the reciprocal
    Wronskian (same convention role as the phase calibration in the Dirac
    sector).
    """
    w = ac_omega_xi_continued(ch, ext, E_n)
    return (-1.0 / w).imag / math.pi
