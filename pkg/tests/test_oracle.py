import math

import numpy as np
import pytest

from tqograph.gf2 import BitString
from tqograph.graphs import complete, star, toric
from tqograph.oracle import (
    QubitCapExceededError,
    StateVector,
    brute_force_qecc_check,
    build_graph_state,
    graph_basis_state,
    inner,
    pauli_expectation,
    pauli_matrix_element,
    pauli_pairs,
)

TOL = 1e-12


class TestStateVector:
    def test_normalization_enforced(self):
        with pytest.raises(ValueError, match="not normalized"):
            StateVector(1, np.array([1.0, 1.0]))
        with pytest.raises(ValueError):
            StateVector(2, np.array([1.0, 0.0]))

    def test_immutable(self):
        psi = build_graph_state(complete(2))
        with pytest.raises(AttributeError):
            psi.n = 3
        with pytest.raises(ValueError):
            psi.amps[0] = 9.0


class TestGraphState:
    def test_two_vertex_amplitudes(self):
        psi = build_graph_state(complete(2))
        assert np.allclose(psi.amps, np.array([1, 1, 1, -1]) / 2)

    def test_triangle_amplitudes(self):
        # sign is (-1)^(#edges inside the support): -1 on every pair, and
        # (-1)^3 on the full support
        psi = build_graph_state(complete(3))
        want = np.array([1, 1, 1, -1, 1, -1, -1, -1]) / math.sqrt(8)
        assert np.allclose(psi.amps, want)

    def test_edgeless_is_uniform(self):
        psi = build_graph_state(complete(1))
        assert np.allclose(psi.amps, [1 / math.sqrt(2)] * 2)

    def test_cap(self):
        with pytest.raises(QubitCapExceededError):
            build_graph_state(toric(3))  # 18 qubits
        build_graph_state(toric(2))  # 8 qubits is fine

    def test_basis_state_sign_flip(self):
        g = star(3)
        base = build_graph_state(g)
        flipped = graph_basis_state(g, BitString.basis(3, 1))
        idx = np.arange(8)
        signs = 1 - 2 * ((idx >> 1) & 1)
        assert np.allclose(flipped.amps, base.amps * signs)

    def test_basis_states_orthonormal(self):
        g = star(4)
        states = [graph_basis_state(g, BitString(4, h)) for h in range(16)]
        for i in range(16):
            for j in range(16):
                want = 1.0 if i == j else 0.0
                assert abs(inner(states[i], states[j]) - want) < TOL

    def test_label_length_checked(self):
        with pytest.raises(ValueError):
            graph_basis_state(star(3), BitString.zeros(4))


class TestPauliMatrixElement:
    def test_z_applied_first(self):
        # X^k Z^l |x> = (-1)^(l.x) |x xor k>: Z factors see the original x
        psi = StateVector(2, np.array([0, 0, 0, 1.0]))  # |11>
        phi = StateVector(2, np.array([0, 0, 1.0, 0]))  # |01>
        val = pauli_matrix_element(phi, psi, BitString.from_text("10"), BitString.from_text("01"))
        assert abs(val - (-1.0)) < TOL  # Z on qubit 1, x1 = 1
        val2 = pauli_matrix_element(phi, psi, BitString.from_text("10"), BitString.from_text("10"))
        assert abs(val2 - (-1.0)) < TOL  # Z sees x0 = 1 before X flips it
        val3 = pauli_matrix_element(psi, psi, BitString.from_text("00"), BitString.from_text("11"))
        assert abs(val3 - 1.0) < TOL  # two Z signs cancel on |11>

    def test_stabilizer_expectations(self):
        # generator i (X on i, Z on neighbors) fixes the graph state
        for g in (star(4), complete(4), toric(2)):
            psi = build_graph_state(g)
            a = g.adjacency()
            for i in range(g.n):
                k = BitString.basis(g.n, i)
                val = pauli_expectation(psi, k, a.mat_vec(k))
                assert abs(val - 1.0) < TOL

    def test_basis_state_eigenvalues(self):
        # the label flips generator i exactly when bit i of h is set
        g = complete(4)
        a = g.adjacency()
        h = BitString.from_text("1010")
        psi = graph_basis_state(g, h)
        for i in range(4):
            k = BitString.basis(4, i)
            val = pauli_expectation(psi, k, a.mat_vec(k))
            assert abs(val - (-1.0 if h.bit(i) else 1.0)) < TOL

    def test_length_checks(self):
        psi = build_graph_state(star(3))
        phi = build_graph_state(star(4))
        with pytest.raises(ValueError):
            pauli_matrix_element(phi, psi, BitString.zeros(3), BitString.zeros(3))
        with pytest.raises(ValueError):
            pauli_matrix_element(psi, psi, BitString.zeros(4), BitString.zeros(3))


class TestPauliPairs:
    @pytest.mark.parametrize("n,w", [(3, 1), (4, 2), (5, 3)])
    def test_count(self, n, w):
        want = sum(math.comb(n, ww) * 3**ww for ww in range(w + 1))
        assert sum(1 for _ in pauli_pairs(n, w)) == want

    def test_first_is_identity_and_order(self):
        pairs = list(pauli_pairs(3, 2))
        assert pairs[0][0].is_zero() and pairs[0][1].is_zero()
        keys = [((k | l).weight(), k.bits, l.bits) for k, l in pairs]
        assert keys == sorted(keys)

    def test_unique(self):
        pairs = [(k.bits, l.bits) for k, l in pauli_pairs(4, 2)]
        assert len(pairs) == len(set(pairs))


class TestQeccCheck:
    def test_star_pair_passes_at_distance_two(self):
        g = star(4)
        states = [build_graph_state(g), graph_basis_state(g, BitString.from_text("0110"))]
        verdict = brute_force_qecc_check(states, 2)
        assert verdict.ok and verdict.witness is None
        assert verdict.operators_checked == 1 + 4 * 3

    def test_complete_pair_passes_at_distance_two(self):
        g = complete(4)
        states = [build_graph_state(g), graph_basis_state(g, BitString.from_text("1100"))]
        assert brute_force_qecc_check(states, 2).ok

    def test_all_ones_label_fails_on_complete(self):
        g = complete(4)
        states = [build_graph_state(g), graph_basis_state(g, BitString.ones(4))]
        verdict = brute_force_qecc_check(states, 2)
        assert not verdict.ok
        i, j, k, l = verdict.witness
        assert (i, j) != (0, 0) or True
        assert (k | l).weight() <= 1

    def test_distance_three_fails_on_star_pair(self):
        g = star(4)
        states = [build_graph_state(g), graph_basis_state(g, BitString.from_text("0110"))]
        verdict = brute_force_qecc_check(states, 3)
        assert not verdict.ok and verdict.witness is not None

    def test_input_validation(self):
        g = star(3)
        psi = build_graph_state(g)
        with pytest.raises(ValueError, match="at least one"):
            brute_force_qecc_check([], 2)
        with pytest.raises(ValueError, match="not orthonormal"):
            brute_force_qecc_check([psi, psi], 2)
        with pytest.raises(ValueError, match="1 <= d"):
            brute_force_qecc_check([psi], 4)

    def test_single_codeword_trivially_consistent(self):
        verdict = brute_force_qecc_check([build_graph_state(star(3))], 2)
        assert verdict.ok
