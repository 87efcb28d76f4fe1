import pytest

from tqograph.gf2 import BitString
from tqograph.graphs import complete, star, toric, toric3d, toric3d_vertex
from tqograph.oracle import build_graph_state, graph_basis_state, pauli_expectation
from tqograph.stabilizer import (
    Code3DReport,
    Pauli,
    StabilizerGroup,
    code_pair_stabilizers,
    commutes,
    gen_3d_code,
    gen_3d_code_derived,
    graph_stabilizers,
    hadamard_conjugate,
    logical_strings,
    normalizer_min_weight,
    pauli_mul,
    verify_3d_code,
)

TOL = 1e-12


class TestPauli:
    def test_text_round_trip(self):
        for t in ("+XXIZZI", "-IYZX", "+I", "-Z"):
            assert Pauli.from_text(t).to_text() == t
        assert Pauli.from_text("XZ").to_text() == "+XZ"

    def test_from_text_bits(self):
        p = Pauli.from_text("+XYZI")
        assert p.x.to_text() == "1100"
        assert p.z.to_text() == "0110"
        with pytest.raises(ValueError):
            Pauli.from_text("+AB")

    def test_weight_and_identity(self):
        assert Pauli.from_text("+XIYZ").weight() == 3
        assert Pauli.identity(3).is_identity()
        assert Pauli.from_text("-III").is_identity()  # sign not part of the test

    def test_validation(self):
        with pytest.raises(ValueError):
            Pauli(BitString.zeros(2), BitString.zeros(3))
        with pytest.raises(ValueError):
            Pauli(BitString.zeros(2), BitString.zeros(2), sign=2)


class TestPauliAlgebra:
    def test_mul_reordering_sign(self):
        x, z = Pauli.from_text("X"), Pauli.from_text("Z")
        assert pauli_mul(x, z).to_text() == "+Y"
        assert pauli_mul(z, x).to_text() == "-Y"

    def test_mul_self_inverse(self):
        # squaring clears the bits; each Y contributes a reordering sign
        for t, sign in (("+XZ", 1), ("-YI", -1), ("+ZZ", 1), ("+YY", 1)):
            sq = pauli_mul(Pauli.from_text(t), Pauli.from_text(t))
            assert sq.is_identity() and sq.sign == sign

    def test_mul_associative(self):
        a, b, c = (Pauli.from_text(t) for t in ("+XY", "-ZX", "+YZ"))
        assert pauli_mul(pauli_mul(a, b), c) == pauli_mul(a, pauli_mul(b, c))

    def test_commutes(self):
        assert not commutes(Pauli.from_text("X"), Pauli.from_text("Z"))
        assert commutes(Pauli.from_text("XX"), Pauli.from_text("ZZ"))
        assert commutes(Pauli.from_text("XI"), Pauli.from_text("IZ"))


class TestStabilizerGroup:
    def test_rejects_anticommuting(self):
        with pytest.raises(ValueError, match="do not commute"):
            StabilizerGroup(1, [Pauli.from_text("X"), Pauli.from_text("Z")])

    def test_rank_with_redundancy(self):
        zz1 = Pauli.from_text("ZZI")
        zz2 = Pauli.from_text("IZZ")
        zz3 = pauli_mul(zz1, zz2)  # dependent third generator
        s = StabilizerGroup(3, [zz1, zz2, zz3])
        assert s.rank() == 2

    def test_in_group_sign_sensitivity(self):
        s = StabilizerGroup(2, [Pauli.from_text("+ZZ")])
        assert s.in_group(Pauli.from_text("+ZZ"))
        assert s.in_group(Pauli.from_text("-ZZ"))  # sign-insensitive default
        assert s.in_group(Pauli.from_text("+ZZ"), sign_sensitive=True)
        assert not s.in_group(Pauli.from_text("-ZZ"), sign_sensitive=True)
        assert not s.in_group(Pauli.from_text("+XX"))

    def test_in_group_products(self):
        s = graph_stabilizers(star(4))
        gens = s.generators
        prod = pauli_mul(gens[0], gens[2])
        assert s.in_group(prod, sign_sensitive=True)

    def test_in_normalizer(self):
        s = StabilizerGroup(2, [Pauli.from_text("+ZZ")])
        assert s.in_normalizer(Pauli.from_text("+XX"))
        assert not s.in_normalizer(Pauli.from_text("+XI"))


class TestGraphStabilizers:
    @pytest.mark.parametrize("build", [lambda: star(4), lambda: complete(4), lambda: toric(2)])
    def test_fix_graph_state(self, build):
        g = build()
        psi = build_graph_state(g)
        s = graph_stabilizers(g)
        assert s.rank() == g.n
        for p in s.generators:
            assert p.sign == 1
            assert abs(pauli_expectation(psi, p.x, p.z) - 1.0) < TOL

    def test_generator_shape(self):
        s = graph_stabilizers(star(3))
        assert s.generators[0].to_text() == "+XZZ"
        assert s.generators[1].to_text() == "+ZXI"


class TestCodePairStabilizers:
    @pytest.mark.parametrize("hb", ["0110", "1100", "1111"])
    def test_fix_both_states(self, hb):
        g = star(4)
        h = BitString.from_text(hb)
        s = code_pair_stabilizers(g, h)
        assert s.rank() == g.n - 1
        psi = build_graph_state(g)
        phi = graph_basis_state(g, h)
        for p in s.generators:
            assert abs(pauli_expectation(psi, p.x, p.z) - p.sign) < TOL
            assert abs(pauli_expectation(phi, p.x, p.z) - p.sign) < TOL

    def test_excluded_combination_flips_label_state(self):
        # a generator product with odd overlap against h keeps the graph
        # state but flips the labelled state
        g = complete(4)
        h = BitString.from_text("1100")
        base = graph_stabilizers(g).generators
        prod = pauli_mul(Pauli.identity(4), base[0])  # r = 1000, r.h = 1
        psi = build_graph_state(g)
        phi = graph_basis_state(g, h)
        assert abs(pauli_expectation(psi, prod.x, prod.z) - prod.sign) < TOL
        assert abs(pauli_expectation(phi, prod.x, prod.z) + prod.sign) < TOL

    def test_validation(self):
        with pytest.raises(ValueError, match="nonzero"):
            code_pair_stabilizers(star(3), BitString.zeros(3))
        with pytest.raises(ValueError):
            code_pair_stabilizers(star(3), BitString.zeros(4))


class TestHadamardConjugate:
    def test_swaps_on_subset(self):
        s = StabilizerGroup(2, [Pauli.from_text("+XZ")])
        out = hadamard_conjugate(s, [0])
        assert out.generators[0].to_text() == "+ZZ"
        out2 = hadamard_conjugate(s, [0, 1])
        assert out2.generators[0].to_text() == "+ZX"

    def test_involution(self):
        s = graph_stabilizers(star(4))
        back = hadamard_conjugate(hadamard_conjugate(s, [0, 2]), [0, 2])
        assert [p.to_text() for p in back.generators] == [
            p.to_text() for p in s.generators
        ]

    def test_range_check(self):
        with pytest.raises(ValueError):
            hadamard_conjugate(graph_stabilizers(star(3)), [3])


class TestNormalizerScan:
    def test_single_qubit_z(self):
        s = StabilizerGroup(1, [Pauli.from_text("Z")])
        assert normalizer_min_weight(s, 1) is None

    def test_bell_pair(self):
        s = StabilizerGroup(2, [Pauli.from_text("+XX"), Pauli.from_text("+ZZ")])
        # full rank on 2 qubits: every commuting Pauli is in the group
        assert normalizer_min_weight(s, 2) is None

    def test_repetition_code(self):
        s = StabilizerGroup(3, [Pauli.from_text("ZZI"), Pauli.from_text("IZZ")])
        w, p = normalizer_min_weight(s, 3)
        assert w == 1 and p.to_text() == "+ZII"

    def test_thread_invariance(self):
        s = gen_3d_code(2)
        a = normalizer_min_weight(s, 2, threads=1)
        b = normalizer_min_weight(s, 2, threads=4)
        assert a[0] == b[0] and a[1] == b[1]


class Test3DCode:
    def test_generator_shape(self):
        for L in (2, 3):
            s = gen_3d_code(L)
            assert len(s.generators) == L**3
            assert {g.weight() for g in s.generators} == {6}
            assert all(g.sign == 1 for g in s.generators)
            # X support is the vertical pair (i, j, k), (i+1, j, k)
            p = s.generators[0]
            assert p.x.support() == [
                toric3d_vertex(1, 1, 1, L),
                toric3d_vertex(2, 1, 1, L),
            ]

    def test_derivation_matches(self):
        for L in (2, 3):
            a = gen_3d_code(L)
            b = gen_3d_code_derived(L)
            assert all(
                p.x == q.x and p.z == q.z
                for p, q in zip(a.generators, b.generators)
            )

    def test_layer_products_are_identity(self):
        L = 3
        s = gen_3d_code(L)
        for k in range(1, L + 1):
            prod = Pauli.identity(L**3)
            for i in range(1, L + 1):
                for j in range(1, L + 1):
                    idx = ((i - 1) * L + (j - 1)) * L + (k - 1)
                    prod = pauli_mul(prod, s.generators[idx])
            assert prod.is_identity() and prod.sign == 1

    def test_diagonal_product_is_also_identity(self):
        # beyond the per-layer constraints, full columns along three distinct
        # (j, k) diagonals multiply to +identity as well, which is why the
        # measured rank deficiency exceeds L
        L = 3
        s = gen_3d_code(L)
        prod = Pauli.identity(27)
        for j, k in ((1, 2), (2, 1), (3, 3)):
            for i in (1, 2, 3):
                idx = ((i - 1) * L + (j - 1)) * L + (k - 1)
                prod = pauli_mul(prod, s.generators[idx])
        assert prod.is_identity() and prod.sign == 1

    def test_generators_stabilize_layered_graph_state(self):
        # undo the hub-plane Hadamard and check expectations on the 8-qubit
        # graph state directly
        L = 2
        g = toric3d(L)
        hub_plane = [
            toric3d_vertex(1, j, k, L) for j in (1, 2) for k in (1, 2)
        ]
        s = hadamard_conjugate(gen_3d_code(L), hub_plane)
        psi = build_graph_state(g)
        for p in s.generators:
            assert abs(pauli_expectation(psi, p.x, p.z) - p.sign) < TOL

    def test_logical_strings(self):
        for L in (2, 3):
            logs = logical_strings(L)
            assert len(logs) == L
            s = gen_3d_code(L)
            for p in logs:
                assert p.weight() == L and p.z.is_zero()
                assert s.in_normalizer(p)
                assert not s.in_group(p)

    def test_verify_L2(self):
        rep = verify_3d_code(2)
        assert rep.constraints_hold and rep.logicals_ok and rep.derivation_ok
        assert (rep.n, rep.rank, rep.rank_deficiency) == (8, 4, 4)
        assert rep.code_dim == 16 and rep.k == 4
        assert rep.distance == 2
        assert rep.params() == "[[8,4,2]]"
        # measured rank deficiency exceeds L, so the structural target fails
        assert not rep.ok

    def test_verify_L3(self):
        rep = verify_3d_code(3)
        assert rep.constraints_hold and rep.logicals_ok and rep.derivation_ok
        assert (rep.n, rep.rank, rep.rank_deficiency) == (27, 22, 5)
        assert rep.code_dim == 32 and rep.distance == 3
        assert rep.params() == "[[27,5,3]]"
        assert not rep.ok

    def test_scan_skip(self):
        rep = verify_3d_code(2, distance_scan=False)
        assert rep.distance is None and not rep.distance_scanned
        assert rep.params() == "[[8,4,?]]"
