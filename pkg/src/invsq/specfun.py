"""Modified Bessel functions and the Gamma ratio used by the matching
equations.

Only orders nu in [0, 1] and real positive arguments are supported;
that is the whole range the toolkit needs. Evaluation delegates to the
scipy.special implementations (ascending series at small argument,
uniform asymptotics at large argument, with a vetted crossover), which
meet the 12-significant-digit contract on z in [1e-8, 50]; the test
suite pins this against an independent multiprecision oracle and an
explicit ascending series.
"""

from __future__ import annotations

import math
import sys

from scipy import special as sp

_NU_MAX_GAMMA = 1.0 - 1e-9


def _check_order(nu: float) -> None:
    if not (math.isfinite(nu) and 0.0 <= nu <= 1.0):
        raise ValueError(f"order nu={nu} outside [0, 1]")


def _snap_order(nu: float) -> float:
    # the scipy K implementations return nan for subnormal orders; K is
    # continuous in nu, and a subnormal order is 0 to double precision
    return 0.0 if 0.0 < nu < sys.float_info.min else nu


def _check_arg(z: float) -> None:
    if not (math.isfinite(z) and z > 0.0):
        raise ValueError(f"argument z={z} must be positive and finite")


def bessel_k(nu: float, z: float) -> float:
    """Modified Bessel function of the second kind, K_nu(z).

    Parameters
    ----------
    nu : float
        Order, in [0, 1].
    z : float
        Argument, z > 0. Underflows to a range error for kz beyond
        roughly 700 where exp(-z) leaves the double range.
    """
    _check_order(nu)
    _check_arg(z)
    val = sp.kv(_snap_order(nu), z)
    if val == 0.0:
        raise OverflowError(f"K_{nu}({z}) underflows double precision")
    return float(val)


def bessel_i(nu: float, z: float) -> float:
    """Modified Bessel function of the first kind, I_nu(z)."""
    _check_order(nu)
    _check_arg(z)
    return float(sp.iv(nu, z))


def bessel_k_deriv(nu: float, z: float) -> float:
    """d/dz K_nu(z), via K'_nu = -(K_{nu-1} + K_{nu+1})/2."""
    _check_order(nu)
    _check_arg(z)
    return float(-0.5 * (sp.kv(nu - 1.0, z) + sp.kv(nu + 1.0, z)))


def bessel_i_deriv(nu: float, z: float) -> float:
    """d/dz I_nu(z), via I'_nu = (I_{nu-1} + I_{nu+1})/2."""
    _check_order(nu)
    _check_arg(z)
    return float(0.5 * (sp.iv(nu - 1.0, z) + sp.iv(nu + 1.0, z)))


def bessel_k_logderiv(nu: float, z: float) -> float:
    """z K'_nu(z) / K_nu(z), the combination the matching equations use.

    Always negative; tends to -nu as z -> 0 for nu > 0, to
    1/ln(z e^gamma / 2) for nu = 0, and to -z - 1/2 as z -> infinity.

    Computed from exponentially scaled Bessel functions so the exp(-z)
    factors cancel exactly and the ratio stays finite far beyond the
    underflow point of K_nu itself.
    """
    _check_order(nu)
    _check_arg(z)
    nu = _snap_order(nu)
    # kve(nu, z) = K_nu(z) e^z; the scaling cancels in the ratio
    num = sp.kve(nu - 1.0, z) + sp.kve(nu + 1.0, z)
    den = sp.kve(nu, z)
    return float(-0.5 * z * num / den)


def bessel_k_smallz(nu: float, z: float) -> float:
    """Leading small-argument approximation of K_nu(z), for diagnostics.

    nu = 0 gives -ln z; nu = 1 gives 1/z; for 0 < nu < 1 the two-term
    form built from the ascending I_{+-nu} leading terms,

        (pi/2) [ (z/2)^-nu / Gamma(1-nu) - (z/2)^nu / Gamma(1+nu) ] / sin(nu pi).

    The caller is responsible for z << 1; no hard cutoff is enforced.
    """
    _check_order(nu)
    _check_arg(z)
    nu = _snap_order(nu)
    if nu == 0.0:
        return -math.log(z)
    if nu == 1.0:
        return 1.0 / z
    half = 0.5 * z
    term = half ** (-nu) / sp.gamma(1.0 - nu) - half ** nu / sp.gamma(1.0 + nu)
    return float(0.5 * math.pi * term / math.sin(nu * math.pi))


def gamma_ratio(nu: float) -> float:
    """Gamma(1 + nu) / Gamma(1 - nu), the closed-form spectrum factor.

    Defined for 0 < nu < 1. The nu = 0 caller must use its dedicated
    branch, and nu = 1 sits on the Gamma(0) pole, so the domain is
    restricted to nu <= 1 - 1e-9.
    """
    if not (math.isfinite(nu) and 0.0 < nu < _NU_MAX_GAMMA):
        raise ValueError(
            f"gamma_ratio defined on 0 < nu < 1 - 1e-9, got nu={nu} "
            "(nu=0 has a dedicated branch; nu=1 hits the Gamma(0) pole)"
        )
    return float(sp.gamma(1.0 + nu) / sp.gamma(1.0 - nu))
