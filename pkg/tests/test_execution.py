import math

import numpy as np
import pytest

from goi.errors import CarrierError, FeedbackSingularError, NotNilpotentError, NotOrthogonalError
from goi.execution import (
    InterfaceSplit,
    adjunction_residual_hyp,
    adjunction_residual_mat,
    associativity_residual,
    ex_goi1,
    feedback_dense,
    plug_dialectal,
    union_dialectal,
)
from goi.groupoid import PartialInjectionOp
from goi.linalg import DenseOperator, direct_sum, mat_mul, operator_norm, plain_det
from goi.measurement import Dialect, DialectalOperator, PseudoTrace, UNIT_TRACE, dial_labels, from_location_matrix

from conftest import hermitian_contraction


class TestExGoi1:
    def test_empty_cut_returns_operator(self):
        u = PartialInjectionOp.from_table({0: 1, 1: 0})
        out = ex_goi1(u, PartialInjectionOp.zero())
        assert out == u

    def test_two_links_through_cut(self):
        u = PartialInjectionOp.from_table({10: 11, 11: 10, 12: 13, 13: 12})
        sigma = PartialInjectionOp.from_table({11: 12, 12: 11})
        out = ex_goi1(u, sigma)
        assert out == PartialInjectionOp.from_table({10: 13, 13: 10})

    def test_cyclic_cut_raises(self):
        swap = PartialInjectionOp.from_table({11: 12, 12: 11})
        with pytest.raises(NotNilpotentError):
            ex_goi1(swap, swap)

    def test_matches_dense_series(self):
        # same computation through the dense window, entry-exact
        u = PartialInjectionOp.from_table({0: 1, 1: 0, 2: 3, 3: 2})
        sigma = PartialInjectionOp.from_table({1: 2, 2: 1})
        out = ex_goi1(u, sigma)
        window = [0, 1, 2, 3]
        from goi.groupoid import to_dense

        ud = to_dense(u, window).mat
        sd = to_dense(sigma, window).mat
        proj = np.diag([1.0, 0, 0, 1.0])  # outside the cut
        series = np.zeros((4, 4), dtype=complex)
        term = ud.copy()
        for _ in range(6):
            series += proj @ term @ proj
            term = ud @ sd @ term
        assert np.array_equal(to_dense(out, window).mat, series)


class TestFeedbackDense:
    def test_zero_feedback_keeps_block(self, rng):
        u = DenseOperator((0, 1, 2, 3), hermitian_contraction(rng, 4, 0.8))
        v = DenseOperator.zeros((2, 3))
        split = InterfaceSplit(kept=frozenset((0, 1)), cut=frozenset((2, 3)))
        w = feedback_dense(u, v, split)
        assert w.max_abs_diff(u.restrict(w.carrier)) == 0.0

    def test_nilpotent_series_oracle(self, rng):
        # uv nilpotent: the resolvent equals the truncated series sandwich
        u = DenseOperator((0, 1, 2, 3), hermitian_contraction(rng, 4, 0.9))
        vm = np.zeros((4, 4), dtype=complex)
        vm[0, 1] = 1.0  # nilpotent, within the cut of v's carrier
        v = DenseOperator((2, 3, 4, 5), (vm + vm.conj().T) * 0)
        vm2 = np.zeros((4, 4), dtype=complex)
        vm2[0, 2] = 0.5
        vm2[2, 0] = 0.5
        v = DenseOperator((2, 3, 4, 5), vm2)
        split = InterfaceSplit(kept=frozenset((0, 1)), cut=frozenset((2, 3)))
        w = feedback_dense(u, v, split)
        carrier = (0, 1, 2, 3, 4, 5)
        ue, ve = u.embed(carrier).mat, v.embed(carrier).mat
        p = np.diag([1.0, 1, 0, 0, 0, 0])
        ppp = np.diag([0.0, 0, 0, 0, 1, 1])
        series = np.zeros((6, 6), dtype=complex)
        term = np.eye(6, dtype=complex)
        for _ in range(40):
            series += term
            term = term @ ue @ ve
        direct = (p + ppp @ ve) @ series @ (ue @ p + ppp)
        dd = DenseOperator(carrier, direct).restrict(w.carrier)
        assert w.max_abs_diff(dd) < 1e-10

    def test_singular_raises(self):
        u = DenseOperator((0, 1), [[0, 1], [1, 0]])
        v = DenseOperator((0, 1), [[0, 1], [1, 0]])
        split = InterfaceSplit(kept=frozenset(), cut=frozenset((0, 1)))
        with pytest.raises(FeedbackSingularError):
            feedback_dense(u, v, split)

    def test_contraction_bound_sampled(self, rng):
        worst = 0.0
        done = 0
        while done < 25:
            u = DenseOperator((0, 1, 2, 3), hermitian_contraction(rng, 4, 0.95))
            v = DenseOperator((2, 3, 4, 5), hermitian_contraction(rng, 4, 0.95))
            split = InterfaceSplit(kept=frozenset((0, 1)), cut=frozenset((2, 3)))
            try:
                w = feedback_dense(u, v, split)
            except FeedbackSingularError:
                continue
            done += 1
            worst = max(worst, operator_norm(w))
        assert worst <= 1.0 + 1e-6

    def test_norm_gate(self):
        u = DenseOperator((0, 1), [[0, 2], [2, 0]])
        v = DenseOperator.zeros((1,))
        with pytest.raises(CarrierError):
            feedback_dense(u, v, InterfaceSplit(kept=frozenset((0,)), cut=frozenset((1,))))


class TestPlugDialectal:
    def test_disjoint_carriers_union(self, rng):
        A = from_location_matrix((0, 1), hermitian_contraction(rng, 2, 0.7))
        B = from_location_matrix((2, 3), hermitian_contraction(rng, 2, 0.7))
        out = plug_dialectal(A, B)
        direct = union_dialectal(A, B)
        assert np.allclose(out.dense_payload().mat, direct.dense_payload().mat)

    def test_zero_on_shared_keeps_block(self, rng):
        A = from_location_matrix((0, 1), hermitian_contraction(rng, 2, 0.7))
        B = from_location_matrix((1, 2), np.zeros((2, 2)))
        out = plug_dialectal(A, B)
        a_kept = A.dense_payload().restrict(((0, 0),))
        got = out.dense_payload().restrict(((0, 0),))
        assert np.allclose(got.mat, a_kept.mat)

    def test_result_dialect_tensors(self, rng):
        dA, dB = Dialect((2,)), Dialect((1, 1))
        A = DialectalOperator((0, 1), dA, PseudoTrace((1.0,)), DenseOperator(dial_labels((0, 1), 2), hermitian_contraction(rng, 4, 0.6)))
        mb = hermitian_contraction(rng, 4, 0.6)
        lab = dial_labels((1, 2), 2)
        for i, (_, ci) in enumerate(lab):
            for j, (_, cj) in enumerate(lab):
                if dB.assignment[ci] != dB.assignment[cj]:
                    mb[i, j] = 0
        mb = (mb + mb.conj().T) / 2
        B = DialectalOperator((1, 2), dB, PseudoTrace((0.5, 0.5)), DenseOperator(lab, mb))
        out = plug_dialectal(A, B)
        assert out.dialect.blocks == dA.tensor(dB).blocks
        assert out.pseudo_trace.weights == A.pseudo_trace.tensor(B.pseudo_trace).weights
        assert set(out.carrier) == {0, 2}

    def test_spectral_gate(self):
        A = from_location_matrix((0, 1), [[0, 1], [1, 0]])
        B = from_location_matrix((0, 1), [[0, 1], [1, 0]])
        with pytest.raises(NotOrthogonalError):
            plug_dialectal(A, B)

    def test_symbolic_matches_dense(self):
        # identical plug computed on both backends
        u = PartialInjectionOp.from_table({0: 1, 1: 0})
        v = PartialInjectionOp.from_table({1: 2, 2: 1})
        A = DialectalOperator((0, 1), Dialect((1,)), UNIT_TRACE, u)
        B = DialectalOperator((1, 2), Dialect((1,)), UNIT_TRACE, v)
        sym = plug_dialectal(A, B)
        dense = plug_dialectal(A.as_dense(), B.as_dense())
        assert sym.is_symbolic
        assert np.allclose(sym.dense_payload().aligned_to(dense.dense_payload().carrier), dense.dense_payload().mat)


class TestAdjunctions:
    def test_hyp_zero_w(self, rng):
        u = DenseOperator((0, 1, 2, 3), hermitian_contraction(rng, 4, 0.8))
        v = DenseOperator((0, 1), hermitian_contraction(rng, 2, 0.8))
        w = DenseOperator.zeros((2, 3))
        split = InterfaceSplit(kept=frozenset((2, 3)), cut=frozenset((0, 1)))
        assert adjunction_residual_hyp(u, v, w, split) <= 1e-10

    def test_hyp_zero_u(self, rng):
        u = DenseOperator.zeros((0, 1, 2, 3))
        v = DenseOperator((0, 1), hermitian_contraction(rng, 2, 0.8))
        w = DenseOperator((2, 3), hermitian_contraction(rng, 2, 0.8))
        split = InterfaceSplit(kept=frozenset((2, 3)), cut=frozenset((0, 1)))
        assert adjunction_residual_hyp(u, v, w, split) <= 1e-10

    def test_hyp_random(self, rng):
        worst = 0.0
        for _ in range(30):
            u = DenseOperator((0, 1, 2, 3), hermitian_contraction(rng, 4, 0.9))
            v = DenseOperator((0, 1), hermitian_contraction(rng, 2, 0.9))
            w = DenseOperator((2, 3), hermitian_contraction(rng, 2, 0.9))
            split = InterfaceSplit(kept=frozenset((2, 3)), cut=frozenset((0, 1)))
            r = adjunction_residual_hyp(u, v, w, split)
            if not math.isinf(r):
                worst = max(worst, r)
        assert worst <= 1e-6

    def test_mat_empty_h(self, rng):
        F = from_location_matrix((0, 1, 2), hermitian_contraction(rng, 3, 0.8))
        G = from_location_matrix((0, 1, 2), hermitian_contraction(rng, 3, 0.8))
        H = from_location_matrix((), np.zeros((0, 0)))
        r = adjunction_residual_mat(F, G, H)
        assert r <= 1e-9

    def test_mat_random_with_dialect(self, rng):
        worst = 0.0
        for t in range(20):
            F = from_location_matrix(tuple(range(4)), hermitian_contraction(rng, 4, 0.85))
            G = from_location_matrix((0, 1), hermitian_contraction(rng, 2, 0.85))
            if t % 2:
                H = DialectalOperator(
                    (2, 3),
                    Dialect((2,)),
                    PseudoTrace((0.6,)),
                    DenseOperator(dial_labels((2, 3), 2), hermitian_contraction(rng, 4, 0.85)),
                )
            else:
                H = from_location_matrix((2, 3), hermitian_contraction(rng, 2, 0.85))
            r = adjunction_residual_mat(F, G, H)
            if not math.isinf(r):
                worst = max(worst, r)
        assert worst <= 1e-6


class TestAssociativity:
    def test_dense_chain(self, rng):
        a = from_location_matrix((0, 1), hermitian_contraction(rng, 2, 0.7))
        f = from_location_matrix((1, 2), hermitian_contraction(rng, 2, 0.7))
        b = from_location_matrix((2, 3), hermitian_contraction(rng, 2, 0.7))
        assert associativity_residual(a, f, b) <= 1e-8

    def test_symbolic_chain_exact(self):
        a = DialectalOperator((0, 1), Dialect((1,)), UNIT_TRACE, PartialInjectionOp.from_table({0: 1, 1: 0}))
        f = DialectalOperator((1, 2), Dialect((1,)), UNIT_TRACE, PartialInjectionOp.from_table({1: 2, 2: 1}))
        b = DialectalOperator((2, 3), Dialect((1,)), UNIT_TRACE, PartialInjectionOp.from_table({2: 3, 3: 2}))
        assert associativity_residual(a, f, b) is True

    def test_fax_shaped_identity(self):
        # relaying through an identity-shaped link leaves the ends linked
        a = DialectalOperator((0, 1), Dialect((1,)), UNIT_TRACE, PartialInjectionOp.from_table({0: 1, 1: 0}))
        f = DialectalOperator((1, 2), Dialect((1,)), UNIT_TRACE, PartialInjectionOp.from_table({1: 2, 2: 1}))
        out = plug_dialectal(a, f)
        assert out.op == PartialInjectionOp.from_table({0: 2, 2: 0})


class TestBlockIdentity:
    def test_chain(self, rng):
        worst = 0.0
        for _ in range(30):
            F = DenseOperator(tuple(range(6)), hermitian_contraction(rng, 6, 0.9))
            G = DenseOperator((0, 1, 2), hermitian_contraction(rng, 3, 0.9))
            H = DenseOperator((3, 4, 5), hermitian_contraction(rng, 3, 0.9))
            lhs = plain_det(DenseOperator.identity(tuple(range(6))) - mat_mul(F, direct_sum(G, H)))
            d1 = plain_det(DenseOperator.identity((0, 1, 2)) - mat_mul(F.restrict((0, 1, 2)), G))
            ex = feedback_dense(F, G, InterfaceSplit(kept=frozenset((3, 4, 5)), cut=frozenset((0, 1, 2))))
            d2 = plain_det(DenseOperator.identity(ex.carrier) - mat_mul(ex, H))
            worst = max(worst, abs(lhs - d1 * d2))
        assert worst <= 1e-8
