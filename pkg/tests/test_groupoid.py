import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goi.errors import DisjointnessError, WindowError
from goi.groupoid import (
    Idx,
    PartialInjectionOp,
    Region,
    adjoint,
    axiom_swap,
    bang,
    beta_decode,
    beta_encode,
    compose,
    gamma_assoc,
    internal_tensor,
    is_partial_symmetry,
    l_isometry,
    nilpotency,
    odot,
    r_isometry,
    restrict_outside,
    sum_disjoint,
    to_dense,
)


@st.composite
def partial_injections(draw, pool=16, max_size=6):
    size = draw(st.integers(0, max_size))
    src = draw(st.permutations(range(pool)))[:size]
    dst = draw(st.permutations(range(pool)))[:size]
    phase = draw(st.sampled_from([1.0 + 0j, -1.0 + 0j, 1j, -1j]))
    return PartialInjectionOp({Idx(s): (Idx(d), phase) for s, d in zip(src, dst)})


class TestIsometries:
    def test_r_doubles(self):
        assert r_isometry().apply(3)[0] == Idx(6)

    def test_r_star_r_identity(self):
        r = r_isometry()
        assert compose(adjoint(r), r) == PartialInjectionOp.cylinder("", "")

    def test_partition_of_unity(self):
        r, l = r_isometry(), l_isometry()
        total = sum_disjoint(compose(r, adjoint(r)), compose(l, adjoint(l)))
        assert total == PartialInjectionOp.cylinder("", "")
        for n in list(range(100)) + [2**16]:
            assert total.apply(n) == (Idx(n), 1.0 + 0j)

    def test_compose_rule(self):
        rl = compose(r_isometry(), l_isometry())
        for n in range(20):
            assert rl.apply(n)[0] == Idx(4 * n + 2)


class TestComposeAndSum:
    def test_range_projection(self):
        u = PartialInjectionOp.from_table({0: 5, 1: 7})
        proj = compose(u, adjoint(u))
        assert proj == PartialInjectionOp.identity_on([5, 7])

    def test_disjoint_tables_compose_to_zero(self):
        u = PartialInjectionOp.from_table({0: 1})
        v = PartialInjectionOp.from_table({5: 6})
        assert compose(u, v).is_zero()

    def test_sum_identity(self):
        u = PartialInjectionOp.from_table({0: 1})
        assert sum_disjoint(u, PartialInjectionOp.zero()) == u

    def test_sum_overlap_raises(self):
        u = PartialInjectionOp.from_table({0: 1})
        v = PartialInjectionOp.from_table({0: 2})
        with pytest.raises(DisjointnessError):
            sum_disjoint(u, v)

    def test_range_overlap_raises(self):
        u = PartialInjectionOp.from_table({0: 1})
        v = PartialInjectionOp.from_table({2: 1})
        with pytest.raises(DisjointnessError):
            sum_disjoint(u, v)

    @given(partial_injections(), partial_injections())
    @settings(max_examples=60, deadline=None)
    def test_closure_under_products(self, u, v):
        uv = compose(u, v)
        # partial isometry law u u* u = u holds exactly
        assert compose(compose(uv, adjoint(uv)), uv) == uv

    @given(partial_injections())
    @settings(max_examples=60, deadline=None)
    def test_uustaru_exact(self, u):
        assert compose(compose(u, adjoint(u)), u) == u

    def test_unimodular_weights_enforced(self):
        with pytest.raises(ValueError):
            PartialInjectionOp({Idx(0): (Idx(1), 0.5)})


class TestOdotAndSymmetry:
    def test_odot_zero(self):
        assert odot(PartialInjectionOp.zero(), PartialInjectionOp.zero()).is_zero()

    def test_odot_copies(self):
        ii = PartialInjectionOp.identity_on([0])
        oo = odot(ii, ii)
        assert oo == PartialInjectionOp.identity_on([0, 1])

    def test_odot_summands_disjoint(self):
        u = PartialInjectionOp.from_table({0: 3})
        v = PartialInjectionOp.from_table({0: 3})
        oo = odot(u, v)  # would clash without the R/L conjugation
        assert oo.apply(0)[0] == Idx(6) and oo.apply(1)[0] == Idx(7)

    def test_axiom_swap_shape(self):
        tta = axiom_swap()
        assert tta.apply(4)[0] == Idx(5)
        assert tta.apply(5) is None
        assert not is_partial_symmetry(tta)
        assert is_partial_symmetry(sum_disjoint(tta, adjoint(tta)))

    def test_projection_is_symmetry(self):
        p = PartialInjectionOp.identity_on([2, 4])
        assert is_partial_symmetry(p)


class TestNilpotency:
    def test_single_arrow(self):
        res = nilpotency(PartialInjectionOp.from_table({0: 1}))
        assert res.kind == "nilpotent" and res.degree == 2

    def test_swap_cycles(self):
        res = nilpotency(PartialInjectionOp.from_table({0: 1, 1: 0}))
        assert res.kind == "cyclic" and res.witness is not None

    def test_rule_shift_exceeds(self):
        shift = PartialInjectionOp.rule(
            "shift",
            lambda i: (Idx(i.value + 1, i.slot), 1.0 + 0j),
            lambda i: (Idx(i.value - 1, i.slot), 1.0 + 0j) if i.value > 0 else None,
        )
        res = nilpotency(shift, seeds=[0], budget=10)
        assert res.kind == "exceeded"

    def test_rule_without_seeds_rejected(self):
        shift = PartialInjectionOp.rule("s", lambda i: None, lambda i: None)
        with pytest.raises(ValueError):
            nilpotency(shift)

    @given(partial_injections())
    @settings(max_examples=60, deadline=None)
    def test_finite_tables_never_exceed(self, u):
        assert nilpotency(u).kind in ("nilpotent", "cyclic")

    def test_symbolic_cylinder_powering(self):
        # L R^*-style swap between two disjoint cylinders dies exactly
        u = PartialInjectionOp.cylinder("L", "R")
        res = nilpotency(u)
        assert res.kind == "nilpotent" and res.degree == 2

    def test_symbolic_cycle(self):
        u = sum_disjoint(PartialInjectionOp.cylinder("L", "R"), PartialInjectionOp.cylinder("R", "L"))
        assert nilpotency(u).kind == "cyclic"


class TestBetaCodec:
    def test_anchors(self):
        assert beta_encode(0, 0) == 0
        assert beta_encode(1, 2) == 9
        assert beta_decode(9) == (1, 2)

    def test_bijection_exhaustive(self):
        for n in range(64):
            for m in range(64):
                assert beta_decode(beta_encode(n, m)) == (n, m)
        for k in range(2**16):
            n, m = beta_decode(k)
            assert beta_encode(n, m) == k

    @given(st.integers(0, 10**9))
    def test_bijection_property(self, k):
        n, m = beta_decode(k)
        assert beta_encode(n, m) == k

    def test_bang_identity(self):
        b = bang(PartialInjectionOp.cylinder("", ""))
        for k in range(200):
            assert b.apply(k) == (Idx(k), 1.0 + 0j)

    def test_bang_arrow(self):
        b = bang(PartialInjectionOp.from_table({0: 1}))
        for n in range(9):
            assert b.apply(beta_encode(n, 0))[0] == Idx(beta_encode(n, 1))

    def test_gamma_law(self):
        g = gamma_assoc()
        for p in range(5):
            for q in range(5):
                for r in range(5):
                    k = beta_encode(beta_encode(p, q), r)
                    assert g.apply(k)[0] == Idx(beta_encode(p, beta_encode(q, r)))

    def test_internal_tensor_associates_through_gamma(self):
        u = PartialInjectionOp.from_table({0: 1, 1: 0})
        v = PartialInjectionOp.from_table({0: 0, 1: 2, 2: 1})
        w = PartialInjectionOp.from_table({0: 2, 2: 0, 1: 1})
        lhs = internal_tensor(internal_tensor(u, v), w)
        rhs = internal_tensor(u, internal_tensor(v, w))
        g = gamma_assoc()
        conj = compose(adjoint(g), compose(rhs, g))
        for p in range(3):
            for q in range(3):
                for r in range(3):
                    k = beta_encode(beta_encode(p, q), r)
                    assert lhs.apply(k) == conj.apply(k)


class TestDenseWindow:
    def test_swap(self):
        d = to_dense(PartialInjectionOp.from_table({0: 1, 1: 0}), [0, 1])
        assert np.array_equal(d.mat, np.array([[0, 1], [1, 0]], dtype=complex))

    def test_escape_raises(self):
        with pytest.raises(WindowError):
            to_dense(r_isometry(), range(8))

    def test_projection_diagonal(self):
        d = to_dense(PartialInjectionOp.identity_on([0, 2]), [0, 1, 2])
        assert np.array_equal(np.diag(d.mat).real, [1, 0, 1])


class TestRestriction:
    def test_restrict_outside_points(self):
        u = PartialInjectionOp.from_table({0: 1, 2: 3})
        out = restrict_outside(u, Region(points=[1]))
        assert out == PartialInjectionOp.from_table({2: 3})

    def test_restrict_cylinder_split(self):
        u = PartialInjectionOp.cylinder("", "")  # identity
        out = restrict_outside(u, Region(cylinders=[("R", 0)]))
        # identity on the odd half only
        assert out.apply(2) is None
        assert out.apply(3) == (Idx(3), 1.0 + 0j)
