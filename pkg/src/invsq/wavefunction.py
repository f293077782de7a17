"""Analytic piecewise wavefunctions: evaluation, sampling, normalization.

Two kinds are covered. The zero-energy exterior solution

    u0(r) = (r/r0)^(1/2+nu) - c (r/r0)^(1/2-nu)          (nu > 0)
    u0(r) = sqrt(r/r0) (1 + c ln(r/r0))                  (nu = 0)

fixes the meaning of (c, r0): c > 0 puts a node at r0 c^(1/(2 nu))
(nu = 0: r0 e^(-1/c)). It is scale-fixed by the convention that the
leading-power coefficient is 1 and is not normalizable, so it carries
no normalization constant.

The bound-state wave is sqrt(r) K_nu(k r) outside the cutoff (exterior
coefficient 1 before normalization, for deterministic output) joined
continuously at r = R to the regulated interior: sin(K r) inside the
square well with K^2 = lam/R^2 - k^2, sinh(k r) inside the delta
shell. Normalization integrates the interior in closed form and the
exterior by adaptive quadrature with an analytic bound for the
exponential tail.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
import scipy.special as sp
from scipy.integrate import quad

from .flow import flow_at
from .model import Coupling, Cutoff, Extension, Scheme
from .specfun import _snap_order

_QUAD_EPSREL = 1e-12
_TAIL_SWITCH = 40.0


class WaveKind(enum.Enum):
    ZERO_ENERGY = "zero-energy"
    BOUND_STATE = "bound-state"


@dataclass(frozen=True)
class PiecewiseWave:
    """Immutable description of one analytic wavefunction.

    Zero-energy waves are exterior-only (scheme, R, lam, k and
    normalization all None); bound-state waves carry the full regulated
    parameter set. Evaluation is pure; normalize returns a new object.
    """

    coupling: Coupling
    kind: WaveKind
    c: float
    r0: float
    scheme: Scheme | None = None
    R: float | None = None
    lam: float | None = None
    k: float | None = None
    normalization: float | None = None

    def __post_init__(self):
        if self.kind is WaveKind.ZERO_ENERGY:
            if not (self.scheme is None and self.R is None and self.lam is None and self.k is None):
                raise ValueError("zero-energy waves are exterior-only: no scheme/R/lam/k")
            if self.normalization is not None:
                raise ValueError("zero-energy waves are not normalizable")
        else:
            if self.scheme is None or self.R is None or self.lam is None or self.k is None:
                raise ValueError("bound-state waves need scheme, R, lam and k")
            if not (self.R > 0.0 and self.k > 0.0 and math.isfinite(self.lam)):
                raise ValueError("bound-state waves need R > 0, k > 0, finite lam")
            if self.normalization is not None and not self.normalization > 0.0:
                raise ValueError("normalization must be positive when set")

    def _scale(self) -> float:
        return 1.0 if self.normalization is None else self.normalization

    def _interior_coefficient(self) -> float:
        """Continuity at R with exterior coefficient 1."""
        nu = _snap_order(self.coupling.nu)
        boundary = math.sqrt(self.R) * float(sp.kv(nu, self.k * self.R))
        if self.scheme is Scheme.SQUARE_WELL:
            K = _interior_wavenumber(self.lam, self.R, self.k)
            s = math.sin(K * self.R)
            if s == 0.0:
                raise ValueError("interior node falls exactly on r = R; cannot join")
            return boundary / s
        return boundary / math.sinh(self.k * self.R)


def _interior_wavenumber(lam: float, R: float, k: float) -> float:
    if lam <= 0.0:
        raise ValueError("square-well interior needs lam > 0")
    k0 = math.sqrt(lam) / R
    if k >= k0:
        raise ValueError(f"k={k} >= k0={k0}: no oscillatory square-well interior")
    return math.sqrt((k0 - k) * (k0 + k))


def zero_energy_wave(coupling: Coupling, ext: Extension) -> PiecewiseWave:
    """Exterior zero-energy solution pinned to (c, r0)."""
    return PiecewiseWave(coupling=coupling, kind=WaveKind.ZERO_ENERGY, c=ext.c, r0=ext.r0)


def bound_state_wave(
    scheme: Scheme,
    coupling: Coupling,
    ext: Extension,
    cutoff: Cutoff,
    k: float,
    lam: float | None = None,
) -> PiecewiseWave:
    """Piecewise bound-state wave at momentum k.

    lam defaults to the flow value at this cutoff, which is the only
    choice that makes the square-well derivative matching hold at a
    solved root; pass it explicitly to avoid recomputation.
    """
    if lam is None:
        lam = flow_at(scheme, coupling, ext, cutoff).lam
    wave = PiecewiseWave(
        coupling=coupling,
        kind=WaveKind.BOUND_STATE,
        c=ext.c,
        r0=ext.r0,
        scheme=scheme,
        R=cutoff.R,
        lam=lam,
        k=k,
    )
    wave._interior_coefficient()  # fail fast on a non-joinable interior
    return wave


def eval_wave(w: PiecewiseWave, r: float) -> float:
    """u(r) with the branch picked by r against R."""
    if not (math.isfinite(r) and r > 0.0):
        raise ValueError("r must be positive")
    if w.kind is WaveKind.ZERO_ENERGY:
        t = r / w.r0
        nu = w.coupling.nu
        if nu == 0.0:
            return math.sqrt(t) * (1.0 + w.c * math.log(t))
        return t ** (0.5 + nu) - w.c * t ** (0.5 - nu)
    scale = w._scale()
    if r > w.R:
        # sp.kv underflows to 0 deep in the tail, which is the sane
        # sampling behavior; the 12-digit specfun wrapper would raise
        return scale * math.sqrt(r) * float(sp.kv(_snap_order(w.coupling.nu), w.k * r))
    coeff = w._interior_coefficient()
    if w.scheme is Scheme.SQUARE_WELL:
        return scale * coeff * math.sin(_interior_wavenumber(w.lam, w.R, w.k) * r)
    return scale * coeff * math.sinh(w.k * r)


def sample_wave(w: PiecewiseWave, rs: np.ndarray) -> np.ndarray:
    """Vectorized eval_wave over an array of radii."""
    rs = np.asarray(rs, dtype=float)
    if rs.size and not (np.all(np.isfinite(rs)) and np.all(rs > 0.0)):
        raise ValueError("all radii must be positive")
    nu = w.coupling.nu
    if w.kind is WaveKind.ZERO_ENERGY:
        t = rs / w.r0
        if nu == 0.0:
            return np.sqrt(t) * (1.0 + w.c * np.log(t))
        return t ** (0.5 + nu) - w.c * t ** (0.5 - nu)
    scale = w._scale()
    out = np.empty_like(rs)
    outside = rs > w.R
    out[outside] = scale * np.sqrt(rs[outside]) * sp.kv(_snap_order(nu), w.k * rs[outside])
    inside = ~outside
    if np.any(inside):
        coeff = w._interior_coefficient()
        if w.scheme is Scheme.SQUARE_WELL:
            K = _interior_wavenumber(w.lam, w.R, w.k)
            out[inside] = scale * coeff * np.sin(K * rs[inside])
        else:
            out[inside] = scale * coeff * np.sinh(w.k * rs[inside])
    return out


def decaying_integral(f: Callable[[float], float], a: float, rate: float) -> float:
    """Integral of f over (a, infinity) for |f| decaying like e^(-2 rate r).

    Adaptive quadrature carries the first 40/rate of range; beyond that
    the integrand is bounded by its own exponential envelope, giving
    the analytic tail estimate f(rc)/(2 rate). With the 40-decade
    switch point the tail is far below the 1e-12 quadrature target.
    """
    if not rate > 0.0:
        raise ValueError("decay rate must be positive")
    rc = a + _TAIL_SWITCH / rate
    body, _ = quad(f, a, rc, epsabs=0.0, epsrel=_QUAD_EPSREL, limit=200)
    return body + f(rc) / (2.0 * rate)


def _interior_integral(w: PiecewiseWave) -> float:
    """Closed-form integral of the unnormalized interior u^2 over (0, R)."""
    coeff = w._interior_coefficient()
    if w.scheme is Scheme.SQUARE_WELL:
        K = _interior_wavenumber(w.lam, w.R, w.k)
        return coeff * coeff * (w.R / 2.0 - math.sin(2.0 * K * w.R) / (4.0 * K))
    return coeff * coeff * (math.sinh(2.0 * w.k * w.R) / (4.0 * w.k) - w.R / 2.0)


def _exterior_integral(w: PiecewiseWave) -> float:
    nu = _snap_order(w.coupling.nu)

    def integrand(r: float) -> float:
        val = float(sp.kv(nu, w.k * r))
        return r * val * val

    return decaying_integral(integrand, w.R, w.k)


def normalize(w: PiecewiseWave) -> PiecewiseWave:
    """Return the same wave with normalization set so that the integral
    of u^2 over (0, infinity) is 1 to 1e-10 relative.

    Idempotent: the constant is recomputed from the unnormalized shape,
    not accumulated. Zero-energy waves are a usage error.
    """
    if w.kind is not WaveKind.BOUND_STATE:
        raise ValueError("only bound-state waves are normalizable")
    total = _interior_integral(w) + _exterior_integral(w)
    if not (math.isfinite(total) and total > 0.0):
        raise ValueError(f"norm integral came out {total}; wave parameters inconsistent")
    return replace(w, normalization=1.0 / math.sqrt(total))


def interior_mass_fraction(w: PiecewiseWave) -> float:
    """Fraction of the probability inside the cutoff.

    Vanishes like R^(2 - 2 nu) as the regulator is removed: the
    continuity coefficient scales as R^(1/2 - nu) / sinh(kR), which
    beats the naive R^3 of the bare interior integral."""
    if w.kind is not WaveKind.BOUND_STATE:
        raise ValueError("interior mass needs a bound-state wave")
    inner = _interior_integral(w)
    return inner / (inner + _exterior_integral(w))
