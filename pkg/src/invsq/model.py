"""Problem definition: units, couplings, extension data, regulator schemes.

Natural units hbar = 2m = 1 throughout, so the long-range strength g
multiplies 1/r^2 directly and bound-state energies are E = -k^2. The
coupling window is -1/4 <= g <= 3/4, i.e. nu = sqrt(g + 1/4) in [0, 1];
outside that window the problem changes character (limit-cycle physics
below, no shallow universality above) and is rejected.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

G_MIN = -0.25
G_MAX = 0.75

# tolerance for the nu^2 - 1/4 = g consistency invariant
_COUPLING_ATOL = 1e-14


class Scheme(enum.Enum):
    """Short-distance regulator variant."""

    SQUARE_WELL = "square-well"
    DELTA_SHELL = "delta-shell"

    @classmethod
    def parse(cls, text: str) -> "Scheme":
        for member in cls:
            if member.value == text:
                return member
        names = ", ".join(m.value for m in cls)
        raise ValueError(f"unknown scheme {text!r}; expected one of: {names}")


@dataclass(frozen=True)
class Coupling:
    """Long-range strength g = 2 m alpha / hbar^2 and the derived index
    nu = sqrt(g + 1/4).

    Both fields are stored so either parameterization is cheap to read;
    construction validates their consistency.
    """

    g: float
    nu: float

    def __post_init__(self):
        if not (math.isfinite(self.g) and math.isfinite(self.nu)):
            raise ValueError("coupling must be finite")
        if not (G_MIN <= self.g <= G_MAX) or not (0.0 <= self.nu <= 1.0):
            raise ValueError(
                f"g={self.g} outside the medium-weak window [{G_MIN}, {G_MAX}] "
                "(the strong-coupling regime g < -1/4 is out of scope)"
            )
        if abs(self.nu * self.nu - 0.25 - self.g) > _COUPLING_ATOL:
            raise ValueError("inconsistent coupling: nu^2 - 1/4 != g")


def coupling_from_g(g: float) -> Coupling:
    """Build a Coupling from the long-range strength g.

    Parameters
    ----------
    g : float
        Dimensionless strength of the 1/r^2 tail, in [-1/4, 3/4].
    """
    if not math.isfinite(g) or not (G_MIN <= g <= G_MAX):
        raise ValueError(
            f"g={g} outside the medium-weak window [{G_MIN}, {G_MAX}] "
            "(the strong-coupling regime g < -1/4 is out of scope)"
        )
    # clamp tiny negative rounding of the radicand at g = -1/4
    nu = math.sqrt(max(g + 0.25, 0.0))
    return Coupling(g=g, nu=nu)


def coupling_from_nu(nu: float) -> Coupling:
    """Build a Coupling from the index nu in [0, 1]."""
    if not math.isfinite(nu) or not (0.0 <= nu <= 1.0):
        raise ValueError(f"nu={nu} outside [0, 1]")
    return Coupling(g=nu * nu - 0.25, nu=nu)


@dataclass(frozen=True)
class Extension:
    """Boundary-condition data (c, r0) selecting the self-adjoint extension.

    c is sign-free; c > 0 is required for a shallow bound state to exist,
    c <= 0 is legal input meaning "no shallow bound state". r0 is an
    arbitrary positive reference scale.
    """

    c: float
    r0: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.c):
            raise ValueError("extension parameter c must be finite")
        if not (math.isfinite(self.r0) and self.r0 > 0.0):
            raise ValueError("reference scale r0 must be positive")


@dataclass(frozen=True)
class Cutoff:
    """Regulator radius R with the dimensionless ratio R/r0 cached.

    Exact flow and matching operations are valid at any R > 0; the
    low-energy closed forms additionally need ratio << 1 and declare so
    at their call sites.
    """

    R: float
    ratio: float

    def __post_init__(self):
        if not (math.isfinite(self.R) and self.R > 0.0):
            raise ValueError("cutoff radius R must be positive")
        if not (math.isfinite(self.ratio) and self.ratio > 0.0):
            raise ValueError("cutoff ratio R/r0 must be positive")

    @classmethod
    def from_radius(cls, R: float, ext: Extension) -> "Cutoff":
        return cls(R=R, ratio=R / ext.r0)


def potential_value(
    scheme: Scheme,
    coupling: Coupling,
    lam: float,
    cutoff: Cutoff,
    r: float,
) -> float:
    """Regularized potential at radius r, in natural units.

    For r > R this is the g/r^2 tail for both schemes. For r < R the
    square well returns the constant depth -lam/R^2; the delta shell
    returns 0 because its shell term is not representable pointwise and
    is exposed separately as the derivative-jump datum -lam/R at r = R
    (see the oracle module).

    Parameters
    ----------
    lam : float
        Dimensionless counterterm strength at this cutoff.
    r : float
        Radius, must be positive. The boundary point r = R is assigned
        to the interior.
    """
    if not (math.isfinite(r) and r > 0.0):
        raise ValueError("radius r must be positive")
    if r > cutoff.R:
        return coupling.g / (r * r)
    if scheme is Scheme.SQUARE_WELL:
        return -lam / (cutoff.R * cutoff.R)
    return 0.0
