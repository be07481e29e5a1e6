"""Domain types and dimensionless parameter assembly.

Natural units (hbar = c = 1) throughout.  The particle carries a
position-dependent mass m(rho) = m + nu*rho, i.e. a linear confining scalar
potential of slope nu, and lives on a background whose only geometric input
here is the torsion parameter chi.  An optional Coulomb coupling b and an
optional magnetic flux phi_B enter the radial problem through a single
effective angular momentum combination.

After substituting xi = sqrt(nu)*rho, the radial equation is governed by four
dimensionless numbers collected in HeunParams:

    alpha = 2 m / sqrt(nu)
    beta  = (E^2 - m^2 - k^2) / nu
    mu    = 2 b E / sqrt(nu)
    nu_abs = |effective angular momentum| (or its Coulomb-shifted modulus)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonPositiveSlope

TWO_PI = 2.0 * math.pi

# Scenario tags used by the solver and CLI.
FREE = "free"
COULOMB = "coulomb"
AB_FLUX = "ab"


@dataclass(frozen=True)
class MassProfile:
    """Rest mass m > 0 and linear slope nu of m(rho) = m + nu*rho.

    nu <= 0 is representable (useful for error-path tests) but is rejected
    at every boundary where xi = sqrt(nu)*rho would be formed.
    """

    m: float
    nu: float

    def __post_init__(self) -> None:
        if not self.m > 0.0:
            raise ValueError(f"rest mass must be positive, got {self.m}")

    def require_confining(self) -> None:
        if not self.nu > 0.0:
            raise NonPositiveSlope(
                f"slope nu must be positive to form xi = sqrt(nu)*rho, got {self.nu}"
            )


@dataclass(frozen=True)
class DefectGeometry:
    """Torsion parameter chi of the dislocated background.

    chi = 0 is the flat (Minkowski) case.  If the Burgers-vector magnitude is
    supplied it must satisfy chi = burgers / (2 pi) exactly.
    """

    chi: float
    burgers: float | None = None

    def __post_init__(self) -> None:
        if self.burgers is not None and self.chi != self.burgers / TWO_PI:
            raise ValueError(
                f"chi={self.chi!r} inconsistent with burgers/(2 pi)={self.burgers / TWO_PI!r}"
            )

    @classmethod
    def from_burgers(cls, burgers: float) -> "DefectGeometry":
        return cls(chi=burgers / TWO_PI, burgers=burgers)


@dataclass(frozen=True)
class Couplings:
    """Coulomb strength b (signed, dimensionless), charge q, and flux phi_B.

    b = 0 and phi_B = 0 recover the free case exactly.
    """

    b: float = 0.0
    q: float = 1.0
    phi_B: float = 0.0


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial index n >= 1, integer angular momentum l, real wavenumber k."""

    n: int
    l: int
    k: float

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"radial index n must be an integer >= 1, got {self.n!r}")
        if not isinstance(self.l, int):
            raise ValueError(f"angular momentum l must be an integer, got {self.l!r}")


@dataclass(frozen=True)
class HeunParams:
    """Dimensionless parameters of the radial equation in xi."""

    nu_abs: float
    alpha: float
    beta: float
    mu: float

    def __post_init__(self) -> None:
        if self.nu_abs < 0.0:
            raise ValueError(f"nu_abs must be >= 0, got {self.nu_abs}")
        if self.alpha < 0.0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")


def effective_angular_momentum(
    l: int, k: float, geom: DefectGeometry, coup: Couplings
) -> float:
    """Angular momentum as shifted by torsion and flux: l - chi*k + q*phi_B/(2 pi).

    Reduces to l - chi*k at zero flux and to plain l on a flat background.
    Affine in each argument; adding one flux quantum (q*phi_B/2pi -> +1) is
    the same as l -> l+1.
    """
    return l - geom.chi * k + coup.q * coup.phi_B / TWO_PI


def coulomb_eta(gamma_eff: float, b: float) -> float:
    """Coulomb-shifted modulus sqrt(gamma_eff^2 + b^2); equals |gamma_eff| at b=0."""
    return math.hypot(gamma_eff, b)


def heun_params(
    mass: MassProfile, E: float, k: float, b: float, eff_abs: float
) -> HeunParams:
    """Assemble the dimensionless radial parameters at energy E.

    Raises NonPositiveSlope if mass.nu <= 0 (the xi substitution needs nu > 0).
    mu vanishes identically when b = 0, embedding the free case.
    """
    mass.require_confining()
    sqrt_nu = math.sqrt(mass.nu)
    return HeunParams(
        nu_abs=eff_abs,
        alpha=2.0 * mass.m / sqrt_nu,
        beta=(E * E - mass.m * mass.m - k * k) / mass.nu,
        mu=2.0 * b * E / sqrt_nu,
    )
