"""Relativistic 2+1D point-flux (Aharonov-Bohm) Dirac sector.

The radial problem in one angular-momentum/spin channel is the 2x2 first-order
system

    s f2' + (nu_tilde/r) f2 = (E - m) f1
   -s f1' + (nu_tilde/r) f1 = (E + m) f2,        nu_tilde = l + mu + s/2.

For 0 < nu < 1/2 (nu = |nu_tilde|) the operator admits a one-parameter family
of self-adjoint boundary conditions at the origin, labeled here by an angle
theta (equivalently xi = tan(theta/2)).  Domain functions behave like

    F(r) -> C [ (m r)^nu  d_plus  -  xi_int (m r)^(-nu) d_minus ],   r -> 0,

where d_plus marks the component that carries the r^(+nu) power of the exact
decaying MacDonald doublet (component 1 for tau = +1, component 2 for
tau = -1, tau = s*sign(nu_tilde)), and xi_int = s*xi is the internal template
weight.  The reported xi is kept in the orientation in which bound states
exist exactly for xi < 0 and the midgap zero mode sits at xi = -1, uniformly
over all channels.

Everything here is a pure function of immutable values; grid sweeps may be
evaluated concurrently without coordination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, NamedTuple, Optional

from . import numkernel as nk

__all__ = [
    "Regime",
    "RegimeError",
    "EnergyDomainError",
    "NonNormalizableError",
    "FluxParts",
    "DiracChannel",
    "Extension",
    "BoundLevel",
    "RadialDoublet",
    "SpectralPoint",
    "flux_decompose",
    "classify_channel",
    "master_xi_of_energy",
    "log_abs_master_xi",
    "solve_bound_energy",
    "paper_omega",
    "paper_omega_xi",
    "paper_level_lhs",
    "omega_xi_continued",
    "spectral_density",
    "bound_doublet",
    "continuum_doublet",
    "normalize_doublet",
    "conjugate_channel",
    "fit_boundary_xi",
    "CRITICAL_TOL",
]

CRITICAL_TOL = 1e-9

_EDGE_GUARD = 1e-12  # bisection window keeps |E| <= m*(1 - _EDGE_GUARD)


class Regime(Enum):
    EXTENDED = "extended"  # 0 < nu < 1/2: one-parameter extension family
    REGULAR = "regular"  # nu >= 1/2: essentially self-adjoint, continuum only
    CRITICAL = "critical"  # nu = 0 or half-integer: outside the solution family


class RegimeError(ValueError):
    """Operation requested in a regime where it is not defined."""


class EnergyDomainError(ValueError):
    """Energy outside the required range (gap vs continuum)."""


class NonNormalizableError(ValueError):
    """Doublet has no decaying tail to normalize."""


class FluxParts(NamedTuple):
    n: int
    beta: float


def flux_decompose(mu: float) -> FluxParts:
    """Split the flux as mu = n + beta with integer n = floor(mu), beta in [0,1)."""
    n = math.floor(mu)
    beta = mu - n
    if beta >= 1.0:  # guard the half-ulp corner, e.g. mu = 2 - 1e-17
        n += 1
        beta = 0.0
    return FluxParts(int(n), beta)


@dataclass(frozen=True)
class DiracChannel:
    """One angular-momentum/spin sector of the point-flux Dirac problem.

    Parameters
    ----------
    m : float
        Fermion mass; the energy unit (radii are measured in 1/m).
    l : int
        Orbital quantum number.
    s : int
        Spin label, +1 or -1.
    mu : float
        Magnetic flux in units of the flux quantum.
    """

    m: float
    l: int
    s: int
    mu: float

    def __post_init__(self) -> None:
        if not self.m > 0.0:
            raise ValueError(f"DiracChannel: m must be > 0, got {self.m}")
        if self.s not in (-1, 1):
            raise ValueError(f"DiracChannel: s must be +-1, got {self.s}")
        if self.l != int(self.l):
            raise ValueError(f"DiracChannel: l must be integer, got {self.l}")

    @property
    def nu_tilde(self) -> float:
        return self.l + self.mu + 0.5 * self.s

    @property
    def nu(self) -> float:
        return abs(self.nu_tilde)

    @property
    def j(self) -> float:
        return self.l + 0.5 * self.s

    @property
    def tau(self) -> int:
        nt = self.nu_tilde
        if nt == 0.0:
            raise RegimeError("tau undefined at nu_tilde = 0 (critical channel)")
        return self.s if nt > 0.0 else -self.s

    @property
    def flux_parts(self) -> FluxParts:
        return flux_decompose(self.mu)

    @property
    def regime(self) -> Regime:
        nu = self.nu
        if abs(nu - round(2.0 * nu) / 2.0) < CRITICAL_TOL:
            return Regime.CRITICAL
        return Regime.EXTENDED if nu < 0.5 else Regime.REGULAR


class ChannelClass(NamedTuple):
    nu_tilde: float
    nu: float
    tau: Optional[int]
    j: float
    regime: Regime


def classify_channel(ch: DiracChannel) -> ChannelClass:
    """Derived channel indices (nu_tilde, nu, tau, j, regime)."""
    regime = ch.regime
    tau = None if ch.nu_tilde == 0.0 else ch.tau
    return ChannelClass(ch.nu_tilde, ch.nu, tau, ch.j, regime)


@dataclass(frozen=True)
class Extension:
    """Self-adjoint extension parameter: angle theta in [0, 2pi), xi = tan(theta/2)."""

    theta: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta < 2.0 * math.pi:
            raise ValueError(f"Extension: theta must lie in [0, 2pi), got {self.theta}")

    @classmethod
    def from_xi(cls, xi: float) -> "Extension":
        if math.isinf(xi):
            return cls(math.pi)
        theta = 2.0 * math.atan(xi)
        if theta < 0.0:
            theta += 2.0 * math.pi
        return cls(theta)

    @property
    def xi(self) -> float:
        if self.theta == math.pi:
            return math.inf
        return math.tan(0.5 * self.theta)

    @property
    def is_infinite(self) -> bool:
        return self.theta == math.pi


@dataclass(frozen=True)
class BoundLevel:
    """A solved bound state in the mass gap."""

    E: float
    lam: float
    xi: float
    channel: DiracChannel
    residual: float
    provenance: str = "analytic"


@dataclass(frozen=True)
class SpectralPoint:
    E: float
    density: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.density):
            raise ValueError("SpectralPoint: density must be finite")


@dataclass(frozen=True)
class RadialDoublet:
    """Evaluator for a two-component radial profile (f1(r), f2(r)).

    ``small_r_exponents`` are the leading powers of each component as r -> 0
    (nan for an absent component), ``decay_rate`` the exponential tail rate
    (0 for oscillatory continuum profiles), ``norm`` the half-line L2 norm of
    (f1, f2).
    """

    evaluator: Callable[[float], tuple[float, float]] = field(repr=False)
    small_r_exponents: tuple[float, float]
    decay_rate: float
    norm: float

    def __call__(self, r: float) -> tuple[float, float]:
        return self.evaluator(r)

    def table(self, radii) -> list[tuple[float, float, float]]:
        return [(float(r), *self.evaluator(float(r))) for r in radii]


# ---------------------------------------------------------------------------
# master extension curve and bound levels
# ---------------------------------------------------------------------------


def _require_extended(ch: DiracChannel, what: str) -> None:
    if ch.regime is not Regime.EXTENDED:
        raise RegimeError(
            f"{what}: channel nu={ch.nu:.6g} is {ch.regime.value}; "
            "requires the extended regime 0 < nu < 1/2"
        )


def _gamma_ratio(nu: float) -> float:
    # Gamma(1/2+nu)/Gamma(1/2-nu), positive throughout 0 < nu < 1/2
    return nk.gamma_fn(0.5 + nu) / nk.gamma_fn(0.5 - nu)


def log_abs_master_xi(ch: DiracChannel, E: float) -> float:
    """ln|xi(E)| of the master curve; cheap and overflow-free near the edges."""
    _require_extended(ch, "log_abs_master_xi")
    m = ch.m
    if not abs(E) < m:
        raise EnergyDomainError(f"log_abs_master_xi: need |E| < m, got E={E}, m={m}")
    nu = ch.nu
    u = ch.tau * E
    return (
        (0.5 - nu) * math.log(m - u)
        - (0.5 + nu) * math.log(m + u)
        + math.log(_gamma_ratio(nu))
        + 2.0 * nu * math.log(2.0 * m)
    )


def master_xi_of_energy(ch: DiracChannel, E: float) -> float:
    """Extension parameter whose boundary condition the decaying doublet at E obeys.

    xi(E) = -sqrt((m - tau*E)/(m + tau*E)) * Gamma(1/2+nu)/Gamma(1/2-nu)
            * (2m/lambda)^(2 nu),        lambda = sqrt(m^2 - E^2),

    in the orientation with bound states exactly at xi < 0.  |xi| decreases
    strictly along u = tau*E, from +inf at u -> -m to 0 at u -> +m, so each
    xi < 0 is hit exactly once (bound-state uniqueness); E -> tau*m as
    xi -> 0^- and E -> -tau*m as xi -> -inf.
    """
    return -math.exp(log_abs_master_xi(ch, E))


def solve_bound_energy(ch: DiracChannel, ext: Extension) -> Optional[BoundLevel]:
    """Unique gap level with master_xi_of_energy(ch, E) = xi, or None for xi >= 0.

    Bisection with secant acceleration in the monotone variable u = tau*E on
    (-m(1-1e-12), m(1-1e-12)), in log space.
    """
    _require_extended(ch, "solve_bound_energy")
    xi = ext.xi
    if ext.is_infinite or xi >= 0.0:
        return None
    m, tau = ch.m, ch.tau
    target = math.log(-xi)

    def h(u: float) -> float:
        return log_abs_master_xi(ch, tau * u) - target

    lo = -m * (1.0 - _EDGE_GUARD)
    hi = m * (1.0 - _EDGE_GUARD)
    h_lo, h_hi = h(lo), h(hi)
    # h is strictly decreasing; clamp when the level is within the edge guard
    if h_lo <= 0.0:
        u_root = lo
    elif h_hi >= 0.0:
        u_root = hi
    else:
        bracket = nk.Bracket(lo, hi, h_lo, h_hi)
        u_root = nk.find_root_bracketed(h, bracket, tol_x=1e-14 * m, tol_f=0.0)
    E = tau * u_root
    lam = math.sqrt((m - E) * (m + E))
    residual = abs(master_xi_of_energy(ch, E) - xi)
    return BoundLevel(E=E, lam=lam, xi=xi, channel=ch, residual=residual)


# ---------------------------------------------------------------------------
# printed Wronskian forms (comparison mode)
# ---------------------------------------------------------------------------


def paper_omega(ch: DiracChannel, E: float) -> float:
    """The gap Wronskian exactly as printed:

    omega(E) = [Gamma(2 nu) Gamma(-nu+(1-s)/2)] / [Gamma(-2 nu) Gamma(nu+(1-s)/2)]
               * (2 lambda / m)^(-2 nu) * 4 s lambda.

    Depends on E only through lambda, so it cannot distinguish +-E; kept for
    comparison against the master curve.
    """
    _require_extended(ch, "paper_omega")
    m = ch.m
    if not abs(E) < m:
        raise EnergyDomainError(f"paper_omega: need |E| < m, got E={E}")
    nu, s = ch.nu, ch.s
    lam = math.sqrt((m - E) * (m + E))
    ratio = (
        nk.gamma_fn(2.0 * nu)
        * nk.gamma_fn(-nu + 0.5 * (1 - s))
        / (nk.gamma_fn(-2.0 * nu) * nk.gamma_fn(nu + 0.5 * (1 - s)))
    )
    return ratio * (2.0 * lam / m) ** (-2.0 * nu) * 4.0 * s * lam


def paper_omega_xi(ch: DiracChannel, ext: Extension, E: float) -> float:
    """omega_xi(E) = omega(E) + 4 s lambda xi, exactly as printed."""
    xi = ext.xi
    if math.isinf(xi):
        raise ValueError("paper_omega_xi: xi must be finite")
    m = ch.m
    lam = math.sqrt((m - E) * (m + E))
    return paper_omega(ch, E) + 4.0 * ch.s * lam * xi


_LEVEL_VARIANTS = ("levab", "lev0", "lev1")


def paper_level_lhs(ch: DiracChannel, E: float, variant: str) -> float:
    """Left-hand side of the printed level equations, for comparison only.

    The printed variants disagree among themselves (a 2^(2 nu) factor between
    "levab" and the Wronskian root, and an inverted lambda power in
    "lev0"/"lev1"); they are exposed verbatim so the discrepancies can be
    inspected, with the ODE oracle as referee.
    """
    if variant not in _LEVEL_VARIANTS:
        raise ValueError(f"paper_level_lhs: unknown variant {variant!r}")
    _require_extended(ch, "paper_level_lhs")
    m = ch.m
    if not abs(E) < m:
        raise EnergyDomainError(f"paper_level_lhs: need |E| < m, got E={E}")
    nu = ch.nu
    lam = math.sqrt((m - E) * (m + E))
    if variant == "levab":
        ratio = (
            nk.gamma_fn(2.0 * nu)
            * nk.gamma_fn(-nu + 0.5 * (1 - ch.s))
            / (nk.gamma_fn(-2.0 * nu) * nk.gamma_fn(nu + 0.5 * (1 - ch.s)))
        )
        return ratio * (lam / m) ** (-2.0 * nu)
    n, beta = ch.flux_parts
    family = (ch.l + n == 0 and ch.s == -1) or (ch.l + n == -1 and ch.s == 1)
    if not family:
        raise RegimeError(
            "paper_level_lhs: lev0/lev1 are printed for the l+n=0, s=-1 "
            "(equivalently l+n=-1, s=+1) channels only"
        )
    if abs(beta - 0.5) < CRITICAL_TOL:
        raise nk.PoleError("paper_level_lhs: Gamma pole at beta = 1/2")
    if variant == "lev0":
        if not 0.0 < beta < 0.5:
            raise RegimeError("paper_level_lhs: lev0 requires 0 < beta < 1/2")
        ratio = (
            nk.gamma_fn(1.0 - 2.0 * beta)
            * nk.gamma_fn(0.5 + beta)
            / (nk.gamma_fn(2.0 * beta - 1.0) * nk.gamma_fn(1.5 - beta))
        )
        return ratio * (m / lam) ** (2.0 * beta - 1.0)
    if not 0.5 < beta < 1.0:
        raise RegimeError("paper_level_lhs: lev1 requires 1/2 < beta < 1")
    ratio = (
        nk.gamma_fn(2.0 * beta - 1.0)
        * nk.gamma_fn(1.5 - beta)
        / (nk.gamma_fn(1.0 - 2.0 * beta) * nk.gamma_fn(0.5 + beta))
    )
    return ratio * (m / lam) ** (1.0 - 2.0 * beta)


# ---------------------------------------------------------------------------
# continuum spectral density
# ---------------------------------------------------------------------------


def omega_xi_continued(ch: DiracChannel, ext: Extension, E: float) -> complex:
    """omega_xi continued to the upper rim of the continuum, |E| > m.

    First-sheet branch: lambda(E + i0) = -i sign(E) sqrt(E^2 - m^2), i.e.
    lambda^(-2 nu) -> k^(-2 nu) exp(i sign(E) pi nu).  The printed Wronskian
    is combined with the channel-aligned internal parameter s*xi so that its
    gap zero sits on the bound-state side (xi < 0) for every channel.
    """
    _require_extended(ch, "omega_xi_continued")
    xi = ext.xi
    if math.isinf(xi):
        raise ValueError("omega_xi_continued: xi must be finite")
    m, s, nu = ch.m, ch.s, ch.nu
    if not abs(E) > m:
        raise EnergyDomainError(f"omega_xi_continued: need |E| > m, got E={E}")
    k = math.sqrt((abs(E) - m) * (abs(E) + m))
    lam_c = complex(0.0, -math.copysign(1.0, E)) * k
    ratio = (
        nk.gamma_fn(2.0 * nu)
        * nk.gamma_fn(-nu + 0.5 * (1 - s))
        / (nk.gamma_fn(-2.0 * nu) * nk.gamma_fn(nu + 0.5 * (1 - s)))
    )
    omega_c = ratio * (2.0 * lam_c / m) ** (-2.0 * nu) * 4.0 * s * lam_c
    return omega_c + 4.0 * s * lam_c * (s * xi)


def spectral_density(ch: DiracChannel, ext: Extension, E: float) -> SpectralPoint:
    """Continuum spectral density dsigma/dE at |E| > m.

    Evaluates (1/pi) Im[kappa / omega_xi(E+i0)] with the first-sheet branch
    above.  The energy-independent phase kappa = i is calibrated once: it is
    the constant phase the complex normalization factors of the two reference
    solutions contribute to the true Wronskian, and with it the density is a
    nonnegative, continuous spectral weight wherever omega_xi does not vanish
    (it never does on |E| > m).
    """
    w = omega_xi_continued(ch, ext, E)
    density = (complex(0.0, 1.0) / w).imag / math.pi
    return SpectralPoint(E=E, density=density)


# ---------------------------------------------------------------------------
# wave functions
# ---------------------------------------------------------------------------


def _k_orders(ch: DiracChannel) -> tuple[float, float]:
    # MacDonald orders of (f1, f2): (|nu_tilde - s/2|, |nu_tilde + s/2|)
    return abs(ch.nu_tilde - 0.5 * ch.s), abs(ch.nu_tilde + 0.5 * ch.s)


def bound_doublet(level: BoundLevel) -> RadialDoublet:
    """Normalized bound-state doublet F(r) = C sqrt(lam r) (K_a(lam r), w_s K_b(lam r)).

    Component orders {a, b} = {|nu_tilde - s/2|, |nu_tilde + s/2|} and relative
    weight w_s = s * sqrt((m-E)/(m+E)) follow from row-wise substitution into
    the first-order system (equal weights hold only at E = 0).  The leading
    small-r powers are (nu, -nu) for tau = +1 and (-nu, nu) for tau = -1,
    matching the extension domain template; decay rate is lambda.
    """
    ch = level.channel
    _require_extended(ch, "bound_doublet")
    m, s, lam, E = ch.m, ch.s, level.lam, level.E
    a1, a2 = _k_orders(ch)
    w = s * math.sqrt((m - E) / (m + E))

    def raw(r: float) -> tuple[float, float]:
        z = lam * r
        pref = math.sqrt(z)
        return pref * nk.bessel_k(a1, z), pref * w * nk.bessel_k(a2, z)

    nu = ch.nu
    sq = nk.integrate_semiline(
        lambda r: raw(r)[0] ** 2 + raw(r)[1] ** 2,
        decay_rate=lam,
        singular_exponent=2.0 * nu,
        rel_tol=1e-11,
    )
    c_norm = 1.0 / math.sqrt(sq.value)

    def evaluator(r: float) -> tuple[float, float]:
        f1, f2 = raw(r)
        return c_norm * f1, c_norm * f2

    expo = (nu, -nu) if ch.tau == 1 else (-nu, nu)
    return RadialDoublet(
        evaluator=evaluator, small_r_exponents=expo, decay_rate=lam, norm=1.0
    )


def _continuum_pieces(ch: DiracChannel, E: float):
    """Normalized regular/irregular continuum solutions (U1-like, U2-like).

    Each is scaled so its leading small-r behavior is (m r)^(+-nu) with unit
    coefficient in the carrying component, real for both rims of the
    continuum.
    """
    m, s, nu = ch.m, ch.s, ch.nu
    k = math.sqrt(abs(E * E - m * m))
    tau = ch.tau
    n_reg = 2.0 * m**nu * nk.gamma_fn(0.5 + nu) * (0.5 * k) ** (0.5 - nu)
    n_irr = 2.0 * m ** (-nu) * nk.gamma_fn(0.5 - nu) * (0.5 * k) ** (0.5 + nu)
    if tau == 1:
        rho_reg = s * k / (E + m)
        rho_irr = -s * (E + m) / k

        def u1(r: float) -> tuple[float, float]:
            sq = math.sqrt(r)
            return (
                n_reg * sq * nk.bessel_j(nu - 0.5, k * r),
                n_reg * rho_reg * sq * nk.bessel_j(nu + 0.5, k * r),
            )

        def u2(r: float) -> tuple[float, float]:
            sq = math.sqrt(r)
            return (
                n_irr * rho_irr * sq * nk.bessel_j(0.5 - nu, k * r),
                n_irr * sq * nk.bessel_j(-nu - 0.5, k * r),
            )

    else:
        rho_reg = -s * k / (E - m)
        rho_irr = s * k / (E + m)

        def u1(r: float) -> tuple[float, float]:
            sq = math.sqrt(r)
            return (
                n_reg * rho_reg * sq * nk.bessel_j(nu + 0.5, k * r),
                n_reg * sq * nk.bessel_j(nu - 0.5, k * r),
            )

        def u2(r: float) -> tuple[float, float]:
            sq = math.sqrt(r)
            return (
                n_irr * sq * nk.bessel_j(-nu - 0.5, k * r),
                n_irr * rho_irr * sq * nk.bessel_j(0.5 - nu, k * r),
            )

    return u1, u2


def continuum_doublet(ch: DiracChannel, ext: Extension, E: float) -> RadialDoublet:
    """Continuum eigen-doublet at |E| > m (the edge |E| = m is excluded numerically).

    Extended regime: U1 - (s xi) U2 in the internal template weight (xi = 0
    gives the pure regular branch, xi = infinity the pure irregular branch
    -U2); Regular regime: the regular branch alone, xi ignored.
    """
    m = ch.m
    if not abs(E) > m:
        raise EnergyDomainError(
            f"continuum_doublet: need |E| > m (edge excluded), got E={E}"
        )
    regime = ch.regime
    if regime is Regime.CRITICAL:
        raise RegimeError("continuum_doublet: critical channel")
    nu, tau = ch.nu, ch.tau
    u1, u2 = _continuum_pieces(ch, E)
    if regime is Regime.REGULAR:
        evaluator = u1
        expo = (nu, nu + 1.0) if tau == 1 else (nu + 1.0, nu)
    elif ext.is_infinite:
        evaluator = lambda r: tuple(-v for v in u2(r))
        expo = (1.0 - nu, -nu) if tau == 1 else (-nu, 1.0 - nu)
    else:
        xi_int = ch.s * ext.xi
        if xi_int == 0.0:
            evaluator = u1
            expo = (nu, nu + 1.0) if tau == 1 else (nu + 1.0, nu)
        else:

            def evaluator(r: float) -> tuple[float, float]:
                a = u1(r)
                b = u2(r)
                return a[0] - xi_int * b[0], a[1] - xi_int * b[1]

            expo = (nu, -nu) if tau == 1 else (-nu, nu)
    return RadialDoublet(
        evaluator=evaluator, small_r_exponents=expo, decay_rate=0.0, norm=math.nan
    )


def normalize_doublet(d: RadialDoublet) -> RadialDoublet:
    """Rescale a decaying doublet to unit half-line L2 norm."""
    if not d.decay_rate > 0.0:
        raise NonNormalizableError("normalize_doublet: doublet has no decaying tail")
    mn = min(p for p in d.small_r_exponents if not math.isnan(p))
    sing = max(0.0, -2.0 * mn)
    sq = nk.integrate_semiline(
        lambda r: d.evaluator(r)[0] ** 2 + d.evaluator(r)[1] ** 2,
        decay_rate=d.decay_rate,
        singular_exponent=sing,
        rel_tol=1e-11,
    )
    scale = 1.0 / math.sqrt(sq.value)
    ev = d.evaluator

    def evaluator(r: float) -> tuple[float, float]:
        f1, f2 = ev(r)
        return scale * f1, scale * f2

    return RadialDoublet(
        evaluator=evaluator,
        small_r_exponents=d.small_r_exponents,
        decay_rate=d.decay_rate,
        norm=1.0,
    )


def conjugate_channel(
    ch: DiracChannel, ext: Extension
) -> tuple[DiracChannel, Extension]:
    """Radial conjugate sector: (nu_tilde, s) -> (-nu_tilde, -s) via (l, s, mu) -> (-l, -s, -mu).

    The sigma_3 map flips the internal component ratio together with the
    orientation sign, so the reported extension parameter is unchanged; nu and
    tau are invariant and the conjugate channel shares the master xi(E) curve.
    """
    mapped = DiracChannel(m=ch.m, l=-ch.l, s=-ch.s, mu=-ch.mu)
    return mapped, ext


# ---------------------------------------------------------------------------
# boundary-condition round trip
# ---------------------------------------------------------------------------


def fit_boundary_xi(
    doublet: RadialDoublet,
    ch: DiracChannel,
    r_small: float = 1e-7,
    r_large: float = 1e-5,
) -> float:
    """Recover the extension parameter from a doublet's small-r coefficients.

    Fits the r^(+nu) coefficient of the carrying component and the r^(-nu)
    coefficient of the companion on two small radii (exactly determined 2x2
    systems; the neglected series terms enter at relative O(r_large^2)), and
    maps the internal ratio back to the reported orientation.
    """
    _require_extended(ch, "fit_boundary_xi")
    m, nu, tau, s = ch.m, ch.nu, ch.tau, ch.s
    ra, rb = r_small / m, r_large / m
    fa = doublet.evaluator(ra)
    fb = doublet.evaluator(rb)
    i_reg = 0 if tau == 1 else 1
    i_irr = 1 - i_reg

    def solve2(p: float, q: float, ya: float, yb: float) -> float:
        # [ra^p ra^q; rb^p rb^q] [c1 c2]^T = [ya yb]^T; returns c1
        a11, a12 = ra**p, ra**q
        a21, a22 = rb**p, rb**q
        det = a11 * a22 - a12 * a21
        return (ya * a22 - yb * a12) / det

    p_coef = solve2(nu, 1.0 - nu, fa[i_reg], fb[i_reg])
    q_coef = solve2(-nu, 1.0 + nu, fa[i_irr], fb[i_irr])
    xi_internal = -(q_coef / p_coef) * m ** (2.0 * nu)
    return s * xi_internal
