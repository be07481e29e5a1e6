import math

import numpy as np
import pytest
from numpy.polynomial import polynomial as P
from scipy.optimize import brentq

from dislospec import (
    Couplings,
    DefectGeometry,
    DegenerateDenominator,
    MassProfile,
    NonPositiveSlope,
    NoRealSolution,
    NoRoots,
    QuantumNumbers,
    coulomb_eta,
    energy_from_lambda,
    energy_ground_coulomb,
    energy_ground_free,
    heun_params,
    nu_ground_coulomb,
    nu_ground_free,
    solve_general_n,
    truncation_residual,
)

FLAT = DefectGeometry(chi=0.0)
FREE = Couplings()


# ---------------------------------------------------------------------------
# independent oracles, written before the assertions that freeze their output
# ---------------------------------------------------------------------------

def truncation_polynomial(n, s):
    """Free-case a_{n+1} as a polynomial in alpha, built by running the
    recurrence over coefficient arrays (lam pinned to 2n, mu = 0)."""
    one = np.array([1.0])
    alpha = np.array([0.0, 1.0])
    lam = 2.0 * n
    tau = P.polymul(alpha, [0.5 * (2 * s + 1)])
    a = [one, P.polymul(tau, [1.0 / (1 + 2 * s)])]
    for k in range(n):
        denom = (k + 2.0) * (k + 2.0 + 2.0 * s)
        t1 = P.polymul(P.polyadd(P.polymul(alpha, [k + 1.0]), tau), a[k + 1])
        t2 = P.polymul([lam - 2.0 * k], a[k])
        a.append(P.polymul(P.polysub(t1, t2), [1.0 / denom]))
    return a[n + 1]


def free_nu_roots_oracle(n, s, m=1.0):
    """Positive-slope roots via companion-matrix eigenvalues, ascending nu."""
    c = truncation_polynomial(n, s)
    roots = np.roots(c[::-1])
    alphas = sorted(r.real for r in roots if abs(r.imag) < 1e-10 and r.real > 0)
    return sorted(4.0 * m * m / a**2 for a in alphas)


def coulomb_ground_oracle(m, b, eta, k):
    """Quadratic in E from eliminating nu between the energy relation (n=1)
    and the slope expression; returns real roots with positive back-slope."""
    c2 = 1.0 - 4.0 * b * b * (eta + 2.0) / (2.0 * eta + 1.0)
    c1 = 4.0 * m * b * (eta + 2.0) * (2.0 * eta + 2.0) / (2.0 * eta + 1.0)
    c0 = -(m * m * (eta + 2.0) * (2.0 * eta + 3.0) + k * k)
    out = []
    for r in np.roots([c2, c1, c0]):
        if abs(r.imag) < 1e-10 and nu_ground_coulomb(m, b, eta, r.real) > 0:
            out.append(r.real)
    return sorted(out)


class TestEnergyFromLambda:
    def test_ground_case(self):
        assert energy_from_lambda(1.5, 1, 0.0, 0.0) == pytest.approx(
            (math.sqrt(6), -math.sqrt(6)), rel=1e-15
        )

    def test_half_integer_momentum(self):
        assert energy_from_lambda(2.0, 1, 0.5, 1.0) == pytest.approx(
            (math.sqrt(11), -math.sqrt(11)), rel=1e-15
        )

    def test_distinct_pair_same_energy(self):
        assert energy_from_lambda(1.0, 2, 0.0, 0.0)[0] == pytest.approx(
            math.sqrt(6), rel=1e-15
        )

    def test_rejects_nonpositive_slope(self):
        for nu in (0.0, -1.0):
            with pytest.raises(NonPositiveSlope):
                energy_from_lambda(nu, 1, 0.0, 0.0)


class TestGroundFreeClosedForms:
    def test_nu_values(self):
        assert nu_ground_free(1.0, 0.0) == 1.5
        assert nu_ground_free(1.0, -0.5) == 2.0
        assert nu_ground_free(2.0, 1.0) == 10.0

    def test_energy_values(self):
        assert energy_ground_free(1.0, 0.0, 0.0)[0] == pytest.approx(math.sqrt(6), rel=1e-15)
        assert energy_ground_free(1.0, -0.5, 1.0)[0] == pytest.approx(math.sqrt(11), rel=1e-15)
        assert energy_ground_free(1.0, 0.0, 1.0)[0] == pytest.approx(math.sqrt(7), rel=1e-15)

    def test_composition_identity(self):
        rng = np.random.default_rng(5)
        for _ in range(40):
            m = float(rng.uniform(0.3, 3))
            eff = float(rng.uniform(-4, 4))
            k = float(rng.uniform(-2, 2))
            via_lambda = energy_from_lambda(nu_ground_free(m, eff), 1, abs(eff), k)
            closed = energy_ground_free(m, eff, k)
            assert via_lambda[0] == pytest.approx(closed[0], rel=1e-14)

    def test_even_in_momentum(self):
        assert energy_ground_free(1.0, 1.7, 0.3) == energy_ground_free(1.0, -1.7, 0.3)


class TestGroundCoulombClosedForms:
    def test_nu_reduces_to_free_at_zero_coupling(self):
        for e in (-2.0, 0.0, 3.0):
            assert nu_ground_coulomb(1.0, 0.0, 1.0, e) == 2.5

    def test_nu_direct_evaluation(self):
        got = nu_ground_coulomb(1.0, 0.1, 1.0, 2.0)
        assert got == pytest.approx(2.5 - 0.4 * (4.0 / 3.0) + 0.08 / 3.0, rel=1e-14)
        assert nu_ground_coulomb(1.0, 0.1, 1.0, 0.0) == 2.5

    def test_branches_match_quadratic_oracle(self):
        for m, b, gamma, k in [
            (1.0, 0.1, 0.0, 0.0),
            (1.0, -0.1, 0.0, 0.0),
            (1.0, 1.0, 0.0, 0.0),
            (2.0, 0.2, 1.0, 1.0),
        ]:
            eta = coulomb_eta(gamma, b)
            got = sorted(energy_ground_coulomb(m, b, eta, k))
            want = coulomb_ground_oracle(m, b, eta, k)
            assert got == pytest.approx(want, rel=1e-12)

    def test_frozen_values(self):
        got = sorted(energy_ground_coulomb(1.0, 0.1, 0.1, 0.0))
        assert got == pytest.approx([-3.640663733231899, 1.9847497547372752], rel=1e-12)
        # strong coupling puts both branches at positive energy
        got = sorted(energy_ground_coulomb(1.0, 1.0, 1.0, 0.0))
        assert got == pytest.approx([1.213700352153109, 4.119632981180224], rel=1e-12)

    def test_fixed_point_loop(self):
        m, b, k = 1.0, 0.1, 0.0
        eta = coulomb_eta(0.0, b)
        for e in energy_ground_coulomb(m, b, eta, k):
            nu = nu_ground_coulomb(m, b, eta, e)
            assert nu > 0
            back = energy_from_lambda(nu, 1, eta, k)
            chosen = back[0] if e > 0 else back[1]
            assert chosen == pytest.approx(e, rel=1e-12)

    def test_zero_coupling_dispatches_to_free(self):
        assert energy_ground_coulomb(1.0, 0.0, 1.5, 0.5) == energy_ground_free(1.0, 1.5, 0.5)

    def test_small_coupling_limit(self):
        # branches approach the free pair linearly in b
        m, gamma, k = 1.0, 1.0, 0.0
        free_pair = sorted(energy_ground_free(m, gamma, k))
        errs = []
        bs = [10.0**-j for j in range(2, 7)]
        for b in bs:
            eta = coulomb_eta(gamma, b)
            got = sorted(energy_ground_coulomb(m, b, eta, k))
            errs.append(max(abs(g - f) for g, f in zip(got, free_pair)))
        ratios = [errs[i] / errs[i + 1] for i in range(len(errs) - 1)]
        assert all(5 < r < 20 for r in ratios)
        assert errs[-1] < 1e-5

    def test_negative_radicand_raises(self):
        with pytest.raises(NoRealSolution):
            energy_ground_coulomb(1.0, 1.0, 1.0, 10.0)

    def test_degenerate_denominator_raises(self):
        # 4 b^2 eta + 8 b^2 - 2 eta - 1 = 0 along eta = b (gamma = 0)
        b_star = brentq(lambda b: 4 * b**3 + 8 * b**2 - 2 * b - 1, 0.4, 0.5, xtol=1e-15)
        with pytest.raises(DegenerateDenominator):
            energy_ground_coulomb(1.0, b_star, b_star, 0.0)

    def test_radicand_sign_change_scan(self):
        # walk k upward at fixed strong coupling until the radicand flips
        m, b = 1.0, 1.0
        eta = coulomb_eta(1.0, b)
        good = energy_ground_coulomb(m, b, eta, 0.0)
        assert len(good) == 2
        with pytest.raises(NoRealSolution):
            energy_ground_coulomb(m, b, eta, 6.0)


class TestSolveGeneralN:
    def test_ground_free_unique_root(self):
        pts = solve_general_n(QuantumNumbers(1, 0, 0.0), 1.0, FLAT, FREE)
        assert len(pts) == 1
        assert pts[0].nu_solved == pytest.approx(1.5, rel=1e-12)
        assert pts[0].energies[0] == pytest.approx(math.sqrt(6), rel=1e-12)
        assert pts[0].energies[1] == -pts[0].energies[0]
        assert pts[0].scenario == "free"
        assert pts[0].branch is None

    def test_matches_closed_form_over_grid(self):
        for m in (0.5, 2.0):
            for l in (-2, 0, 3):
                for k in (0.0, 1.0):
                    for chi in (0.0, 0.25):
                        geom = DefectGeometry(chi=chi)
                        eff = l - chi * k
                        pts = solve_general_n(QuantumNumbers(1, l, k), m, geom, FREE)
                        assert pts[0].nu_solved == pytest.approx(
                            nu_ground_free(m, eff), rel=1e-10
                        )
                        assert pts[0].energies[0] == pytest.approx(
                            energy_ground_free(m, eff, k)[0], rel=1e-10
                        )

    def test_second_level_matches_polynomial_oracle(self):
        want = free_nu_roots_oracle(2, 0.0)
        assert want == pytest.approx([15.0 / 28.0], rel=1e-12)
        pts = solve_general_n(QuantumNumbers(2, 0, 0.0), 1.0, FLAT, FREE)
        assert [p.nu_solved for p in pts] == pytest.approx(want, rel=1e-10)

    def test_third_level_matches_polynomial_oracle(self):
        want = free_nu_roots_oracle(3, 0.0)
        assert want == pytest.approx(
            [0.3061829328248656, 3.175298548656614], rel=1e-12
        )
        pts = solve_general_n(QuantumNumbers(3, 0, 0.0), 1.0, FLAT, FREE)
        assert [p.nu_solved for p in pts] == pytest.approx(want, rel=1e-10)
        # multiple roots come back ascending in nu
        assert pts[0].nu_solved < pts[1].nu_solved

    def test_coulomb_matches_closed_branch_set(self):
        for b in (0.1, 1.0):
            coup = Couplings(b=b)
            pts = solve_general_n(QuantumNumbers(1, 0, 0.0), 1.0, FLAT, coup)
            got = sorted(e for p in pts for e in p.energies)
            eta = coulomb_eta(0.0, b)
            want = sorted(energy_ground_coulomb(1.0, b, eta, 0.0))
            assert got == pytest.approx(want, rel=1e-10)

    def test_coulomb_branches_are_separated(self):
        pts = solve_general_n(QuantumNumbers(1, 0, 0.0), 1.0, FLAT, Couplings(b=0.1))
        branches = {p.branch for p in pts}
        assert branches == {1, -1}
        for p in pts:
            assert len(p.energies) == 1
            assert (p.energies[0] > 0) == (p.branch == 1)

    def test_flux_scenario_shifts_momentum(self):
        coup = Couplings(q=1.0, phi_B=0.25 * 2 * math.pi)
        pts = solve_general_n(QuantumNumbers(1, 0, 0.0), 1.0, DefectGeometry(0.5), coup)
        assert pts[0].scenario == "ab"
        assert pts[0].eff == pytest.approx(0.25, abs=1e-15)
        assert pts[0].nu_solved == pytest.approx(1.75, rel=1e-10)
        assert pts[0].energies[0] == pytest.approx(2.806243040080456, rel=1e-10)

    def test_flux_periodicity(self):
        rng = np.random.default_rng(13)
        geom = DefectGeometry(chi=0.3)
        for _ in range(10):
            l = int(rng.integers(-3, 4))
            k = float(rng.uniform(-1, 1))
            t = float(rng.uniform(-0.5, 0.5))
            a = solve_general_n(
                QuantumNumbers(1, l, k), 1.0, geom, Couplings(q=1.0, phi_B=(t + 1) * 2 * math.pi)
            )
            b = solve_general_n(
                QuantumNumbers(1, l + 1, k), 1.0, geom, Couplings(q=1.0, phi_B=t * 2 * math.pi)
            )
            assert a[0].energies[0] == pytest.approx(b[0].energies[0], abs=1e-12)

    def test_momentum_sign_symmetry(self):
        up = solve_general_n(QuantumNumbers(1, 2, 0.0), 1.0, FLAT, FREE)
        down = solve_general_n(QuantumNumbers(1, -2, 0.0), 1.0, FLAT, FREE)
        assert up[0].nu_solved == down[0].nu_solved
        assert up[0].energies == down[0].energies

    def test_point_invariants(self):
        pts = solve_general_n(QuantumNumbers(2, 1, 0.5), 1.0, DefectGeometry(0.25), FREE)
        for p in pts:
            assert abs(p.lam - 2 * p.qn.n) < 1e-10
            assert p.trunc_rel < 1e-12
            assert p.wavefunction.truncation_order == p.qn.n
            # re-derive the truncation residual through the public path
            params = heun_params(
                MassProfile(1.0, p.nu_solved), p.energies[0], p.qn.k, 0.0, p.eff_abs
            )
            assert abs(truncation_residual(params, p.qn.n)) < 1e-10

    def test_no_roots_reports_window(self):
        with pytest.raises(NoRoots, match=r"0\.05"):
            solve_general_n(
                QuantumNumbers(1, 0, 0.0), 1.0, FLAT, FREE, alpha_max=0.05
            )

    def test_rejects_bad_mass(self):
        with pytest.raises(ValueError):
            solve_general_n(QuantumNumbers(1, 0, 0.0), -1.0, FLAT, FREE)
