"""Simultaneous solution of the two series-truncation conditions.

A bound state of radial index n exists where both

    lam = 2n            (energy relation)
    a_{n+1} = 0         (slope constraint)

hold.  The first fixes the energy in terms of the slope,

    E = +- sqrt(2 nu (n + s + 1) + k^2),      s = |effective momentum|,

and the second quantizes the slope nu itself.  For n = 1 both free and
Coulomb cases have closed forms; for general n the slope constraint is
root-found by a bracket scan in alpha = 2m/sqrt(nu) (the constraint is a
low-degree polynomial in alpha in the free case, and remains smooth in the
Coulomb case where the signed energy feeds back through mu).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import (
    AB_FLUX,
    COULOMB,
    FREE,
    Couplings,
    DefectGeometry,
    HeunParams,
    MassProfile,
    QuantumNumbers,
    coulomb_eta,
    effective_angular_momentum,
    heun_params,
)
from .errors import DegenerateDenominator, NonPositiveSlope, NoRealSolution, NoRoots
from .heun import (
    DEFAULT_N_MAX,
    RadialWavefunction,
    build_coefficients,
    truncation_residual,
)

# Quadratic branch formula degenerates when its denominator is this close to 0.
DEGENERATE_TOL = 1e-12

# Default bracket scan window and resolution for the slope constraint in alpha.
ALPHA_MIN = 0.01
ALPHA_MAX = 50.0
ALPHA_STEP = 0.01


@dataclass(frozen=True)
class SpectrumPoint:
    """One solved bound state.

    energies is the (+E, -E) pair for the free and flux scenarios (the slope
    constraint is energy-sign blind there), or a single signed energy for a
    Coulomb branch (the constraint depends on the sign of E through mu, so
    each sign is its own solution labeled by branch = +1 or -1).
    """

    qn: QuantumNumbers
    eff: float
    eff_abs: float
    nu_solved: float
    energies: tuple[float, ...]
    wavefunction: RadialWavefunction
    scenario: str
    branch: int | None
    lam: float
    trunc_rel: float


def energy_from_lambda(nu: float, n: int, eff_abs: float, k: float) -> tuple[float, float]:
    """Energy pair from the lam = 2n relation: +-sqrt(2 nu (n + eff_abs + 1) + k^2)."""
    if not nu > 0.0:
        raise NonPositiveSlope(f"energy relation needs nu > 0, got {nu}")
    e = math.sqrt(2.0 * nu * (n + eff_abs + 1.0) + k * k)
    return (e, -e)


def nu_ground_free(mass_m: float, eff: float) -> float:
    """Quantized slope of the lowest free state: m^2 (|eff| + 3/2).

    Serves the flux scenario as well; eff is the flux-shifted momentum there.
    """
    if not mass_m > 0.0:
        raise ValueError(f"mass must be positive, got {mass_m}")
    return mass_m * mass_m * (abs(eff) + 1.5)


def energy_ground_free(mass_m: float, eff: float, k: float) -> tuple[float, float]:
    """Closed-form lowest-state energies: +-m sqrt((2|eff|+3)(|eff|+2) + k^2/m^2).

    Identical to energy_from_lambda(nu_ground_free(m, eff), 1, |eff|, k).
    """
    if not mass_m > 0.0:
        raise ValueError(f"mass must be positive, got {mass_m}")
    s = abs(eff)
    e = mass_m * math.sqrt((2.0 * s + 3.0) * (s + 2.0) + (k * k) / (mass_m * mass_m))
    return (e, -e)


def nu_ground_coulomb(mass_m: float, b: float, eta_abs: float, E: float) -> float:
    """Quantized slope of the lowest Coulomb state at energy E.

    nu = (m^2/2)(2 eta + 3) - 2 m b E (2 eta + 2)/(2 eta + 1)
         + 2 b^2 E^2 / (2 eta + 1);
    collapses to the free m^2(eta + 3/2) when b = 0.
    """
    if not mass_m > 0.0:
        raise ValueError(f"mass must be positive, got {mass_m}")
    two_eta = 2.0 * eta_abs
    return (
        0.5 * mass_m * mass_m * (two_eta + 3.0)
        - 2.0 * mass_m * b * E * (two_eta + 2.0) / (two_eta + 1.0)
        + 2.0 * b * b * E * E / (two_eta + 1.0)
    )


def energy_ground_coulomb(
    mass_m: float, b: float, eta_abs: float, k: float
) -> tuple[float, ...]:
    """Both quadratic branches of the lowest Coulomb state energy.

    Eliminating nu between the energy relation (n=1) and the Coulomb slope
    expression gives a quadratic in E whose solutions are

        E = pref * (1 +- sqrt(radicand)),
        pref = 2 m b (eta+2)(2 eta+2) / D,
        D    = 4 b^2 eta + 8 b^2 - 2 eta - 1,
        radicand = 1 - D (2 eta+1) [m^2 (eta+2)(2 eta+3) + k^2]
                       / [4 m^2 b^2 (eta+2)^2 (2 eta+2)^2].

    Branches whose back-substituted slope is not positive are dropped (the
    confining picture needs nu > 0); the (1+sqrt) branch is returned first.
    b = 0 dispatches to the free closed form.
    """
    if not mass_m > 0.0:
        raise ValueError(f"mass must be positive, got {mass_m}")
    if b == 0.0:
        return energy_ground_free(mass_m, eta_abs, k)

    d = 4.0 * b * b * eta_abs + 8.0 * b * b - 2.0 * eta_abs - 1.0
    if abs(d) < DEGENERATE_TOL:
        raise DegenerateDenominator(
            f"branch denominator 4b^2 eta + 8b^2 - 2 eta - 1 = {d!r} is degenerate"
        )
    pref = 2.0 * mass_m * b * (eta_abs + 2.0) * (2.0 * eta_abs + 2.0) / d
    radicand = 1.0 - d * (2.0 * eta_abs + 1.0) * (
        mass_m * mass_m * (eta_abs + 2.0) * (2.0 * eta_abs + 3.0) + k * k
    ) / (
        4.0
        * mass_m
        * mass_m
        * b
        * b
        * (eta_abs + 2.0) ** 2
        * (2.0 * eta_abs + 2.0) ** 2
    )
    if radicand < 0.0:
        raise NoRealSolution(
            f"negative radicand {radicand!r} for m={mass_m}, b={b}, eta={eta_abs}, k={k}"
        )
    root = math.sqrt(radicand)
    branches = (pref * (1.0 + root), pref * (1.0 - root))
    return tuple(
        e for e in branches if nu_ground_coulomb(mass_m, b, eta_abs, e) > 0.0
    )


def _classify(coup: Couplings) -> str:
    if coup.b != 0.0:
        return COULOMB
    if coup.q * coup.phi_B != 0.0:
        return AB_FLUX
    return FREE


def _branch_residual(
    alpha: float,
    n: int,
    eff_abs: float,
    mass_m: float,
    k: float,
    b: float,
    sign: int,
) -> float:
    """Truncation residual a_{n+1} along one signed-energy branch at given alpha."""
    nu = 4.0 * mass_m * mass_m / (alpha * alpha)
    e_pair = energy_from_lambda(nu, n, eff_abs, k)
    e = e_pair[0] if sign >= 0 else e_pair[1]
    params = heun_params(MassProfile(mass_m, nu), e, k, b, eff_abs)
    return truncation_residual(params, n)


def _scan_alpha_roots(
    f, alpha_min: float, alpha_max: float, alpha_step: float
) -> list[float]:
    """Bracket scan plus brentq polish; returns ascending distinct roots."""
    roots: list[float] = []
    n_steps = int(math.ceil((alpha_max - alpha_min) / alpha_step))
    x0 = alpha_min
    f0 = f(x0)
    for i in range(1, n_steps + 1):
        x1 = min(alpha_min + i * alpha_step, alpha_max)
        f1 = f(x1)
        if f0 == 0.0:
            roots.append(x0)
        elif f0 * f1 < 0.0:
            roots.append(brentq(f, x0, x1, xtol=1e-15, rtol=8.9e-16))
        x0, f0 = x1, f1
    if f0 == 0.0:
        roots.append(x0)
    deduped: list[float] = []
    for r in roots:
        if not deduped or abs(r - deduped[-1]) > 1e-9 * max(1.0, abs(r)):
            deduped.append(r)
    return deduped


def solve_general_n(
    qn: QuantumNumbers,
    mass_m: float,
    geom: DefectGeometry,
    coup: Couplings,
    *,
    alpha_min: float = ALPHA_MIN,
    alpha_max: float = ALPHA_MAX,
    alpha_step: float = ALPHA_STEP,
    n_max: int = DEFAULT_N_MAX,
) -> list[SpectrumPoint]:
    """All bound states of radial index qn.n for the configured scenario.

    Every nu > 0 satisfying the slope constraint is returned, sorted
    ascending in nu (the physics does not single one out for n >= 2).  The
    Coulomb scenario solves the +E and -E branches separately since the
    constraint sees the sign of E through mu; free and flux scenarios are
    sign-blind and carry the full +-E pair per root.
    """
    if not mass_m > 0.0:
        raise ValueError(f"mass must be positive, got {mass_m}")
    n = qn.n
    eff = effective_angular_momentum(qn.l, qn.k, geom, coup)
    scenario = _classify(coup)
    if scenario == COULOMB:
        eff_abs = coulomb_eta(eff, coup.b)
        branch_signs: tuple[int | None, ...] = (1, -1)
    else:
        eff_abs = abs(eff)
        branch_signs = (None,)

    points: list[SpectrumPoint] = []
    for sign in branch_signs:
        mu_sign = 1 if sign is None else sign

        def f(alpha: float) -> float:
            return _branch_residual(alpha, n, eff_abs, mass_m, qn.k, coup.b, mu_sign)

        for alpha_root in _scan_alpha_roots(f, alpha_min, alpha_max, alpha_step):
            nu = 4.0 * mass_m * mass_m / (alpha_root * alpha_root)
            e_pair = energy_from_lambda(nu, n, eff_abs, qn.k)
            if sign is None:
                energies: tuple[float, ...] = e_pair
                e_for_mu = e_pair[0]
            else:
                e_for_mu = e_pair[0] if sign > 0 else e_pair[1]
                energies = (e_for_mu,)
            params = heun_params(MassProfile(mass_m, nu), e_for_mu, qn.k, coup.b, eff_abs)
            coeffs = build_coefficients(params, n_max=max(n_max, n + 1))
            head = float(np.max(np.abs(coeffs.coeffs[: n + 1])))
            trunc_rel = abs(float(coeffs.coeffs[n + 1])) / head
            if trunc_rel > 1e-12:
                raise NoRoots(
                    f"root polish failed at alpha={alpha_root!r}: "
                    f"relative truncation residual {trunc_rel:.3e}"
                )
            wf = RadialWavefunction(
                coefficients=coeffs,
                alpha=params.alpha,
                nu_abs=eff_abs,
                truncation_order=n,
            )
            points.append(
                SpectrumPoint(
                    qn=qn,
                    eff=eff,
                    eff_abs=eff_abs,
                    nu_solved=nu,
                    energies=energies,
                    wavefunction=wf,
                    scenario=scenario,
                    branch=sign,
                    lam=coeffs.lam,
                    trunc_rel=trunc_rel,
                )
            )

    if not points:
        raise NoRoots(
            f"no nu > 0 root of the order-{n} truncation condition in the "
            f"alpha window ({alpha_min}, {alpha_max}] at step {alpha_step}"
        )
    points.sort(key=lambda p: (p.nu_solved, -(p.branch or 0)))
    return points
