"""Acceptance gate: one test per criterion, at its stated tolerance.

Each test prints a single PASS line when its criterion holds; the suite
is driven by the same deterministic machinery as ``goi verify``.
"""

import math
import time

from goi.config import DEFAULT_SEED
from goi.grouparith import all_words, monoid_word_eval
from goi.linalg import DenseOperator, mat_mul, plain_det
from goi.logic import corpus
from goi.logic.goi1 import soundness_check_mll
from goi.logic.locations import allocate_matricial
from goi.logic.matricial import default_basis, interpret_mall_matricial, sequent_dual_witnesses
from goi.logic.syntax import cut_count, depth
from goi.projects import is_promising, orthogonal_witness_suite
from goi import verify

TRIALS = 100


def report(line: str):
    print(f"PASS {line}")


def test_criterion_1_regression_values():
    """Determinant regressions for the two counterexample pairs, under 1 ms."""
    rec = verify.check_regression_values()
    assert rec.ok, rec.data
    u2 = DenseOperator((0, 1), [[0, -1], [-1, 0]])
    v2 = DenseOperator((0, 1), [[0, 1], [1, 0]])
    d2 = plain_det(DenseOperator.identity((0, 1)) - mat_mul(u2, v2))
    assert abs(d2 - 4.0) <= 1e-12
    s = math.sqrt(0.5)
    u3 = DenseOperator((0, 1, 2), [[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    v3 = DenseOperator((0, 1, 2), [[0, s, -s], [s, 0, 0], [-s, 0, 0]])
    uv3 = mat_mul(u3, v3)
    d3 = plain_det(DenseOperator.identity((0, 1, 2)) - uv3)
    assert abs(d3 - (1 - s) ** 2) <= 1e-10
    assert not uv3.is_partial_isometry()
    assert rec.data["elapsed_s"] < 1e-3
    report(f"criterion-1 determinant regressions: det2={d2.real:.12g} det3={d3.real:.12g} in {rec.data['elapsed_s']*1e6:.0f}us")


def test_criterion_2_group_arithmetic():
    """Worked word value and exhaustive freeness for words of length <= 6, under 1 s."""
    start = time.perf_counter()
    g = monoid_word_eval([("a", 2), ("b", 1), ("a", 48), ("b", 2)])
    assert g.shift_map() == {2: 48, 3: 2} and g.step == 3
    words = all_words(6)
    assert len({monoid_word_eval(w) for w in words}) == len(words)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    report(f"criterion-2 group arithmetic: word ok, {len(words)} words free, {elapsed*1e3:.1f}ms")


def test_criterion_3_fk_determinant_suite():
    """Multiplicativity, unit value on 1+nilpotent, domination by the spectral radius."""
    rec = verify.check_fk_suite(DEFAULT_SEED, TRIALS)
    assert rec.ok, rec.data
    assert rec.data["multiplicativity_rel"] <= 1e-8
    assert rec.data["nilpotent_unit"] <= 1e-9
    assert rec.data["fk_minus_rho_max"] <= 1e-8
    report(
        "criterion-3 fk determinant: mult_rel={multiplicativity_rel:.2e} "
        "nilp={nilpotent_unit:.2e} fk-rho<= {fk_minus_rho_max:.2e}".format(**rec.data)
    )


def test_criterion_4_block_determinant_identity():
    """det(1 - F(G + H)) factorises through the executed block, 100 triples under 1 s."""
    rec = verify.check_block_identity(DEFAULT_SEED, TRIALS)
    assert rec.ok, rec.data
    assert rec.data["worst_residual"] <= 1e-8
    assert rec.data["elapsed_s"] < 1.0
    report("criterion-4 block identity: worst={worst_residual:.2e} elapsed={elapsed_s:.2f}s".format(**rec.data))


def test_criterion_5_adjunction_suites():
    """Both adjunction variants on 100 admissible instances each."""
    rec_h = verify.check_adjunction_hyp(DEFAULT_SEED, TRIALS)
    rec_m = verify.check_adjunction_mat(DEFAULT_SEED, TRIALS)
    assert rec_h.ok and rec_h.data["instances"] >= TRIALS, rec_h.data
    assert rec_m.ok and rec_m.data["instances"] >= TRIALS, rec_m.data
    assert rec_h.data["worst_residual"] <= 1e-6
    assert rec_m.data["worst_residual"] <= 1e-6
    report(
        f"criterion-5 adjunctions: hyp={rec_h.data['worst_residual']:.2e} mat={rec_m.data['worst_residual']:.2e}"
    )


def test_criterion_6_ldet_lemmas():
    """Nilpotent vanishing exactly, additivity, dialect factor, series cross-check."""
    rec = verify.check_ldet_lemmas(DEFAULT_SEED, TRIALS)
    assert rec.ok, rec.data
    assert rec.data["nilpotent_exact"] and rec.data["symbolic_additivity_exact"]
    assert rec.data["commuting_additivity"] <= 1e-9
    assert rec.data["dialect_inflation"] <= 1e-9
    assert rec.data["series_vs_det"] <= 1e-8
    report(
        "criterion-6 ldet lemmas: additivity={commuting_additivity:.2e} "
        "inflation={dialect_inflation:.2e} series={series_vs_det:.2e}".format(**rec.data)
    )


def test_criterion_7_mll_exact_soundness():
    """Execution equals the normal form interpretation, bit-exact, whole corpus under 1 s."""
    proofs = corpus.mll_proofs()
    assert len(proofs) >= 12
    assert max(cut_count(p) for _, p in proofs) == 4
    assert max(depth(p) for _, p in proofs) <= 5
    start = time.perf_counter()
    for name, proof in proofs:
        assert soundness_check_mll(proof), name
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    report(f"criterion-7 mll exact soundness: {len(proofs)} proofs, {elapsed*1e3:.0f}ms")


def test_criterion_8_mall_property_soundness():
    """Every interpretation promising on all five fields and orthogonal to every witness."""
    proofs = corpus.mall_proofs()
    assert len(proofs) >= 10
    covered = {name.split("-")[0] for name, _ in proofs}
    assert {"ax", "cut", "tensor", "par", "with", "plus", "top"} <= covered
    basis = default_basis()
    for name, proof in proofs:
        plan = allocate_matricial(proof, basis)
        project = interpret_mall_matricial(proof, basis, plan)
        rep = is_promising(project)
        assert rep.all_pass, (name, rep.failures())
        rows = orthogonal_witness_suite(project, sequent_dual_witnesses(plan, basis))
        assert all(r.verdict == "orthogonal" for r in rows), name
    rec = verify.check_mall_soundness()
    assert rec.ok and rec.data["counterexamples_rejected"]
    report(f"criterion-8 mall property soundness: {len(proofs)} proofs, counterexamples rejected")


def test_criterion_9_coherence_and_compositionality():
    """Certified-nilpotent promising pairs measure exactly to zero; plugs stay promising; mutants break."""
    rec_c = verify.check_coherence_pairs(DEFAULT_SEED, TRIALS)
    rec_k = verify.check_compositionality()
    rec_m = verify.check_mutation()
    assert rec_c.ok, rec_c.data
    assert rec_k.ok, rec_k.data
    assert rec_m.ok, rec_m.data
    report(
        f"criterion-9 coherence/compositionality: {rec_c.data['pairs_checked']} pairs exact-zero, "
        f"mutation caught by {rec_m.data['mutant_failures']}"
    )


def test_criterion_10_variant_and_tensor_laws():
    """Observational invariance under 50 dialect isomorphisms; tensor law on 20 instances."""
    rec = verify.check_variant_laws(DEFAULT_SEED, TRIALS)
    assert rec.ok, rec.data
    assert rec.data["variant_residual"] <= 1e-9
    assert rec.data["obs_equiv_failures"] == 0
    assert rec.data["tensor_law_residual"] <= 1e-8
    assert rec.data["tensor_associativity"] and rec.data["inflation_stable"]
    report(
        "criterion-10 variant/tensor laws: variant={variant_residual:.2e} "
        "tensor={tensor_law_residual:.2e}".format(**rec.data)
    )
