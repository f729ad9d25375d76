import math

import numpy as np
import pytest

from becsqueeze.errors import CutoffError, DomainError, NumericsError, ValidationError
from becsqueeze.fock import (
    MAX_DIMENSION,
    TMSV_TAIL,
    FockSpace,
    FockState,
    evolve,
    moments,
    two_mode_squeezed_vacuum,
)


class TestSpace:
    def test_dimensions(self):
        space = FockSpace([3, 2])
        assert space.dims == (4, 3)
        assert space.dim == 12
        assert space.num_modes == 2

    def test_basis_ordering(self):
        # first mode is slowest: index = n0 * dims[1] + n1
        space = FockSpace([3, 2])
        assert space.basis_index((0, 0)) == 0
        assert space.basis_index((0, 2)) == 2
        assert space.basis_index((1, 0)) == 3
        assert space.basis_index((3, 2)) == space.dim - 1

    def test_occupation_vectors(self):
        space = FockSpace([2, 1])
        np.testing.assert_array_equal(space.occupation(0), [0, 0, 1, 1, 2, 2])
        np.testing.assert_array_equal(space.occupation(1), [0, 1, 0, 1, 0, 1])

    def test_occupation_matches_number_operator(self):
        space = FockSpace([4, 3])
        for m in range(2):
            num = (space.creation(m) @ space.annihilation(m)).diagonal().real
            np.testing.assert_allclose(num, space.occupation(m), atol=1e-12)

    def test_ladder_matrix_elements(self):
        space = FockSpace([5])
        a = space.annihilation(0)
        for n in range(1, 6):
            vec = np.zeros(space.dim)
            vec[n] = 1.0
            lowered = a @ vec
            assert lowered[n - 1] == pytest.approx(math.sqrt(n))

    def test_commutator_below_cutoff(self):
        space = FockSpace([6, 6])
        a = space.annihilation(0)
        comm = a @ space.creation(0) - space.creation(0) @ a
        # truncation only corrupts the commutator on the top level
        interior = space.occupation(0) < space.cutoffs[0]
        diag = comm.diagonal()
        np.testing.assert_allclose(diag[interior].real, 1.0, atol=1e-12)

    def test_size_guards(self):
        with pytest.raises(DomainError):
            FockSpace([2] * 5)
        with pytest.raises(CutoffError):
            FockSpace([2, 0])
        with pytest.raises(CutoffError, match="exceeds"):
            FockSpace([99, 99, 100])
        assert FockSpace([99, 99, 99]).dim == MAX_DIMENSION

    def test_basis_index_guards(self):
        space = FockSpace([3, 2])
        with pytest.raises(DomainError):
            space.basis_index((1,))
        with pytest.raises(CutoffError):
            space.basis_index((1, 3))


class TestState:
    def test_vacuum(self):
        space = FockSpace([2, 2])
        vac = FockState.vacuum(space)
        assert vac.probabilities()[0] == 1.0
        n_a, n_b, var, xi = moments(vac, 0, 1)
        assert (n_a, n_b, var) == (0.0, 0.0, 0.0)
        assert xi is None

    def test_norm_enforcement(self):
        space = FockSpace([2])
        with pytest.raises(ValidationError):
            FockState(space, np.array([0.7, 0.0, 0.0]))
        with pytest.raises(ValidationError):
            FockState(space, np.zeros(3))
        with pytest.raises(ValidationError):
            FockState(space, np.ones(4))
        st = FockState(space, np.array([0.7, 0.0, 0.0]), normalize=True)
        assert st.probabilities()[0] == pytest.approx(1.0)

    def test_hand_built_superposition(self):
        # (|0,0> + |2,1>)/sqrt(2): n_a = 1, n_b = 1/2, diff in {0, 1} with
        # equal weight so Var = 1/4 and xi = 1/6
        space = FockSpace([3, 2])
        amp = np.zeros(space.dim)
        amp[space.basis_index((0, 0))] = 1.0
        amp[space.basis_index((2, 1))] = 1.0
        st = FockState(space, amp, normalize=True)
        n_a, n_b, var, xi = moments(st, 0, 1)
        assert n_a == pytest.approx(1.0)
        assert n_b == pytest.approx(0.5)
        assert var == pytest.approx(0.25)
        assert xi == pytest.approx(1.0 / 6.0)


class TestTwinBeamSource:
    @pytest.mark.parametrize("ratio", [-0.45, 0.3, 0.0])
    def test_geometric_occupation(self, ratio):
        space = FockSpace([30, 30])
        st = two_mode_squeezed_vacuum(space, 0, 1, ratio)
        n_a, n_b, var, xi = moments(st, 0, 1)
        rho2 = ratio * ratio
        expected = rho2 / (1.0 - rho2)
        assert n_a == pytest.approx(expected, rel=1e-9, abs=1e-12)
        assert n_b == pytest.approx(expected, rel=1e-9, abs=1e-12)
        assert var == pytest.approx(0.0, abs=1e-12)
        if ratio != 0.0:
            assert xi == pytest.approx(0.0, abs=1e-10)
        assert st.tail_population() <= TMSV_TAIL

    def test_cutoff_policy_names_requirement(self):
        space = FockSpace([4, 4])
        with pytest.raises(CutoffError, match="n_max"):
            two_mode_squeezed_vacuum(space, 0, 1, -0.6)

    def test_argument_guards(self):
        space = FockSpace([4, 4])
        with pytest.raises(DomainError):
            two_mode_squeezed_vacuum(space, 1, 1, 0.3)
        with pytest.raises(DomainError):
            two_mode_squeezed_vacuum(space, 0, 1, 1.0)


class TestEvolution:
    def test_hermiticity_required(self):
        space = FockSpace([3])
        with pytest.raises(ValidationError, match="Hermitian"):
            evolve(FockState.vacuum(space), 1.0j * space.creation(0), 1.0)

    def test_coherent_drive_is_poissonian(self):
        # H = z a^dag + conj(z) a displaces the vacuum; against an empty
        # spectator mode the number difference is Poissonian: Var = n, xi = 1
        space = FockSpace([40, 2])
        z, t = 0.9 - 0.4j, 1.1
        ham = z * space.creation(0) + np.conj(z) * space.annihilation(0)
        st = evolve(FockState.vacuum(space), ham, t)
        n_a, n_b, var, xi = moments(st, 0, 1)
        expected = abs(z) ** 2 * t ** 2
        assert n_a == pytest.approx(expected, rel=1e-9)
        assert n_b == pytest.approx(0.0, abs=1e-12)
        assert var == pytest.approx(expected, rel=1e-9)
        assert xi == pytest.approx(1.0, rel=1e-9)

    def test_beamsplitter_rabi_oscillation(self):
        space = FockSpace([4, 4])
        g, t = 0.8, 0.6
        ham = g * (space.creation(0) @ space.annihilation(1)
                   + space.creation(1) @ space.annihilation(0))
        amp = np.zeros(space.dim)
        amp[space.basis_index((1, 0))] = 1.0
        st = evolve(FockState(space, amp), ham, t)
        n_a, n_b, _, _ = moments(st, 0, 1)
        assert n_a == pytest.approx(math.cos(g * t) ** 2, rel=1e-9)
        assert n_b == pytest.approx(math.sin(g * t) ** 2, rel=1e-9)

    def test_zero_time_is_identity(self):
        space = FockSpace([3])
        st = evolve(FockState.vacuum(space), space.creation(0) + space.annihilation(0), 0.0)
        np.testing.assert_array_equal(st.amplitudes, FockState.vacuum(space).amplitudes)

    def test_nonfinite_time_rejected(self):
        space = FockSpace([3])
        ham = space.creation(0) + space.annihilation(0)
        with pytest.raises(DomainError):
            evolve(FockState.vacuum(space), ham, math.inf)
