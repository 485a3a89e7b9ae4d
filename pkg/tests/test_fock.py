import math

import numpy as np
import pytest
from scipy import integrate

from matrixwell import (
    FockBasis,
    FockState,
    Statistics,
    WellConfig,
    annihilator,
    check_algebra,
    completeness_defect,
    condensate_state,
    creator,
    density_expectation,
    field_operator,
    heisenberg_field,
    many_body_hamiltonian,
    mode_frequency,
    number_operator,
)

from oracles import wedge_annihilation


@pytest.fixture
def cfg():
    return WellConfig(N=40)


@pytest.fixture
def bosons():
    return FockBasis(3, Statistics.BOSON, cutoff=4)


@pytest.fixture
def fermions():
    return FockBasis(3, Statistics.FERMION)


def basis_vector(basis, occupation):
    v = np.zeros(basis.dimension, dtype=complex)
    v[basis.index_of(occupation)] = 1.0
    return v


class TestFockBasis:
    def test_dimensions(self):
        assert FockBasis(3, Statistics.BOSON, cutoff=4).dimension == 125
        assert FockBasis(5, Statistics.FERMION).dimension == 32

    def test_enumeration_mode_one_slowest(self):
        basis = FockBasis(2, Statistics.FERMION)
        occ = basis.occupations()
        np.testing.assert_array_equal(occ, [[0, 0], [0, 1], [1, 0], [1, 1]])

    def test_index_roundtrip(self, bosons):
        occ = bosons.occupations()
        for i in (0, 17, 124):
            assert bosons.index_of(occ[i]) == i

    def test_fermion_cutoff_forced(self):
        with pytest.raises(ValueError):
            FockBasis(2, Statistics.FERMION, cutoff=3)

    def test_desk_scale_cap(self):
        with pytest.raises(ValueError):
            FockBasis(16, Statistics.FERMION)


class TestAnnihilator:
    def test_boson_single_quantum(self):
        basis = FockBasis(1, Statistics.BOSON, cutoff=3)
        a = annihilator(basis, 1).entries
        one, zero = basis_vector(basis, [1]), basis_vector(basis, [0])
        np.testing.assert_array_equal(a @ one, zero)
        assert np.all(a @ zero == 0.0)

    def test_boson_ladder_amplitudes(self):
        basis = FockBasis(1, Statistics.BOSON, cutoff=5)
        a = annihilator(basis, 1).entries
        for k in range(1, 6):
            got = a @ basis_vector(basis, [k])
            np.testing.assert_allclose(got, math.sqrt(k) * basis_vector(basis, [k - 1]))

    def test_fermion_sign_string(self):
        basis = FockBasis(2, Statistics.FERMION)
        a2 = annihilator(basis, 2).entries
        got = a2 @ basis_vector(basis, [1, 1])
        np.testing.assert_array_equal(got, -basis_vector(basis, [1, 0]))

    def test_fermion_signs_match_wedge_oracle(self):
        # annihilating any mode of any 2-particle state reproduces the
        # first-quantized antisymmetrized contraction, signs included
        modes = 3
        basis = FockBasis(modes, Statistics.FERMION)
        singles = {n: basis_vector(basis, np.eye(modes, dtype=int)[n - 1]) for n in range(1, modes + 1)}
        for n1 in range(1, modes + 1):
            for n2 in range(n1 + 1, modes + 1):
                occ = np.zeros(modes, dtype=int)
                occ[[n1 - 1, n2 - 1]] = 1
                pair_vec = basis_vector(basis, occ)
                for mode in range(1, modes + 1):
                    got = annihilator(basis, mode).entries @ pair_vec
                    oracle = wedge_annihilation(modes, (n1, n2), mode)
                    expect = sum(oracle[j] * singles[j + 1] for j in range(modes))
                    np.testing.assert_allclose(got, expect, atol=1e-14)

    def test_invalid_mode_rejected(self, bosons):
        with pytest.raises(ValueError):
            annihilator(bosons, 0)
        with pytest.raises(ValueError):
            annihilator(bosons, 4)


class TestAlgebra:
    @pytest.mark.parametrize("modes", [2, 4, 6])
    def test_fermion_relations_exact(self, modes):
        rep = check_algebra(FockBasis(modes, Statistics.FERMION))
        assert rep.same_mode_defect == 0.0
        assert rep.cross_mode_defect == 0.0
        assert rep.pair_defect == 0.0
        assert rep.boundary_error == 0.0

    def test_boson_relations(self, bosons):
        rep = check_algebra(bosons)
        # below the cutoff the ladder reproduces the identity up to sqrt roundoff
        assert rep.same_mode_defect < 1e-13
        # saturated states carry the truncated-ladder defect -(cutoff+1)
        assert rep.boundary_error < 1e-13
        assert rep.saturated_states == 3 * 25
        # operators of different modes commute exactly
        assert rep.cross_mode_defect == 0.0
        assert rep.pair_defect == 0.0

    def test_boson_boundary_value_directly(self):
        basis = FockBasis(1, Statistics.BOSON, cutoff=3)
        a = annihilator(basis, 1).entries
        defect = a @ a.conj().T - a.conj().T @ a - np.eye(basis.dimension)
        diag = np.real(np.diagonal(defect))
        np.testing.assert_allclose(diag[:-1], 0.0, atol=1e-13)
        assert diag[-1] == pytest.approx(-(basis.cutoff + 1), abs=1e-13)


class TestFieldOperator:
    def test_vanishes_at_walls(self, cfg, bosons):
        assert np.all(field_operator(cfg, bosons, 0.0).entries == 0.0)
        assert np.abs(field_operator(cfg, bosons, cfg.L).entries).max() < 1e-12

    def test_single_mode_value(self, cfg):
        basis = FockBasis(1, Statistics.BOSON, cutoff=2)
        f = field_operator(cfg, basis, cfg.L / 2.0)
        expect = math.sqrt(2.0 / cfg.L) * annihilator(basis, 1).entries
        np.testing.assert_allclose(f.entries, expect, atol=1e-14)

    def test_position_validated(self, cfg, bosons):
        with pytest.raises(ValueError):
            field_operator(cfg, bosons, -0.1)

    def test_mode_count_must_fit_truncation(self, bosons):
        with pytest.raises(ValueError):
            field_operator(WellConfig(N=2), bosons, 0.3)

    def test_completeness_improves_with_modes(self, cfg):
        f = lambda x: x * x * (cfg.L - x) ** 2
        defects = [completeness_defect(cfg, f, m) for m in (4, 8, 16)]
        assert defects[0] > defects[1] > defects[2]


class TestManyBodyHamiltonian:
    def test_vacuum_energy_zero(self, cfg, bosons):
        h = many_body_hamiltonian(cfg, bosons).entries
        assert h[0, 0] == 0.0

    def test_two_bosons_in_ground_mode(self, cfg, bosons):
        h = many_body_hamiltonian(cfg, bosons).entries
        idx = bosons.index_of([2, 0, 0])
        assert h[idx, idx].real == pytest.approx(2 * cfg.hbar * mode_frequency(cfg, 1), rel=1e-14)

    def test_fermion_pair_energy(self, cfg):
        basis = FockBasis(2, Statistics.FERMION)
        h = many_body_hamiltonian(cfg, basis).entries
        idx = basis.index_of([1, 1])
        expect = cfg.hbar * (mode_frequency(cfg, 1) + mode_frequency(cfg, 2))
        assert h[idx, idx].real == pytest.approx(expect, rel=1e-14)

    def test_additivity_over_all_states(self, cfg, bosons):
        h = np.real(np.diagonal(many_body_hamiltonian(cfg, bosons).entries))
        omegas = np.array([mode_frequency(cfg, n) for n in (1, 2, 3)])
        expect = bosons.occupations() @ (cfg.hbar * omegas)
        np.testing.assert_allclose(h, expect, rtol=1e-14)

    def test_matches_ladder_construction(self, cfg, bosons):
        h = many_body_hamiltonian(cfg, bosons).entries
        built = sum(
            cfg.hbar
            * mode_frequency(cfg, n)
            * (creator(bosons, n).entries @ annihilator(bosons, n).entries)
            for n in (1, 2, 3)
        )
        np.testing.assert_allclose(h, built, atol=1e-12)


class TestCondensate:
    def test_vacuum(self, bosons):
        s = condensate_state(bosons, 0)
        assert s.coeffs[0] == 1.0

    def test_three_particles(self, bosons):
        s = condensate_state(bosons, 3)
        idx = bosons.index_of([3, 0, 0])
        assert s.coeffs[idx] == 1.0
        assert np.abs(np.delete(s.coeffs, idx)).max() == 0.0

    def test_matches_repeated_creation(self, bosons):
        n = 3
        vac = FockState.vacuum(bosons).coeffs
        cr = creator(bosons, 1).entries
        v = vac.copy()
        for _ in range(n):
            v = cr @ v
        v = v / math.sqrt(math.factorial(n))
        np.testing.assert_allclose(condensate_state(bosons, n).coeffs, v, atol=1e-14)

    def test_energy_expectation(self, cfg, bosons):
        n = 4
        s = condensate_state(bosons, n)
        h = many_body_hamiltonian(cfg, bosons).entries
        got = float(np.real(np.vdot(s.coeffs, h @ s.coeffs)))
        assert got == pytest.approx(n * cfg.hbar * mode_frequency(cfg, 1), rel=1e-13)

    def test_rejected_configurations(self, bosons, fermions):
        with pytest.raises(ValueError):
            condensate_state(fermions, 2)
        with pytest.raises(ValueError):
            condensate_state(bosons, bosons.cutoff + 1)


class TestHeisenbergField:
    def test_t_zero_matches_static_field(self, cfg, bosons):
        x = 0.37
        np.testing.assert_array_equal(
            heisenberg_field(cfg, bosons, x, 0.0).entries, field_operator(cfg, bosons, x).entries
        )

    def test_matches_mode_phase_closed_form(self, cfg, bosons):
        x, t = 0.29, 0.83
        got = heisenberg_field(cfg, bosons, x, t).entries
        expect = np.zeros_like(got)
        for n in (1, 2, 3):
            amp = math.sqrt(2.0 / cfg.L) * math.sin(n * math.pi * x / cfg.L)
            expect = expect + amp * np.exp(-1j * mode_frequency(cfg, n) * t) * annihilator(
                bosons, n
            ).entries
        assert np.abs(got - expect).max() < 1e-12

    def test_single_mode_phase(self, cfg):
        basis = FockBasis(1, Statistics.BOSON, cutoff=2)
        t = 1.7
        got = heisenberg_field(cfg, basis, cfg.L / 2.0, t).entries
        expect = (
            math.sqrt(2.0 / cfg.L)
            * np.exp(-1j * mode_frequency(cfg, 1) * t)
            * annihilator(basis, 1).entries
        )
        np.testing.assert_allclose(got, expect, atol=1e-13)

    def test_number_operator_invariant(self, cfg, bosons):
        # integral Psi^dagger(x,t) Psi(x,t) dx = sum_n a_n^dagger a_n for every t:
        # mode orthonormality kills the cross terms and the phases cancel
        def integrated_number(t, nodes=80):
            xs, ws = np.polynomial.legendre.leggauss(nodes)
            xs = 0.5 * cfg.L * (xs + 1.0)
            ws = 0.5 * cfg.L * ws
            acc = np.zeros((bosons.dimension, bosons.dimension), dtype=complex)
            for x, w in zip(xs, ws):
                e = heisenberg_field(cfg, bosons, float(x), t).entries
                acc += w * (e.conj().T @ e)
            return acc

        total = sum(number_operator(bosons, n).entries for n in (1, 2, 3))
        at_zero = integrated_number(0.0)
        at_later = integrated_number(0.61)
        np.testing.assert_allclose(at_zero, total, atol=1e-10)
        np.testing.assert_allclose(at_later, at_zero, atol=1e-10)


class TestDensity:
    def test_condensate_density_closed_form(self, cfg, bosons):
        n = 4
        s = condensate_state(bosons, n)
        for x in np.linspace(0.0, cfg.L, 17):
            got0 = density_expectation(s, cfg, bosons, float(x), 0.0)
            got1 = density_expectation(s, cfg, bosons, float(x), 0.9)
            expect = n * (2.0 / cfg.L) * math.sin(math.pi * x / cfg.L) ** 2
            assert got0 == pytest.approx(expect, abs=1e-10)
            assert got1 == pytest.approx(got0, abs=1e-10)

    def test_vacuum_density_zero(self, cfg, bosons):
        s = FockState.vacuum(bosons)
        for x, t in [(0.2, 0.0), (0.7, 1.3)]:
            assert density_expectation(s, cfg, bosons, x, t) == 0.0

    def test_fermion_pair_density(self, cfg):
        basis = FockBasis(2, Statistics.FERMION)
        s = FockState(basis, basis_vector(basis, [1, 1]))
        for x in (0.1, 0.35, 0.8):
            expect = (2.0 / cfg.L) * (
                math.sin(math.pi * x / cfg.L) ** 2 + math.sin(2 * math.pi * x / cfg.L) ** 2
            )
            assert density_expectation(s, cfg, basis, x, 0.0) == pytest.approx(expect, abs=1e-12)
            assert density_expectation(s, cfg, basis, x, 0.4) == pytest.approx(expect, abs=1e-12)

    def test_density_integrates_to_particle_number(self, cfg):
        cases = [
            (FockBasis(3, Statistics.BOSON, cutoff=4), [2, 1, 0], 3),
            (FockBasis(2, Statistics.FERMION), [1, 1], 2),
        ]
        for basis, occ, total in cases:
            s = FockState(basis, basis_vector(basis, occ))
            val, _ = integrate.quad(
                lambda x: density_expectation(s, cfg, basis, x, 0.0), 0.0, cfg.L, limit=200
            )
            assert val == pytest.approx(total, abs=1e-8)
