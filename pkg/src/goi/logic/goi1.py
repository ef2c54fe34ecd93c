"""Exact operator interpretation of multiplicative proofs.

A proof denotes a pair (pi, sigma) of partial symmetries: pi collects
the axiom links between leaf addresses, sigma the matchings installed by
the cuts.  Executing pi against sigma (alternating path summation
outside the cut regions) reproduces the interpretation of the cut-free
normal form, address for address.
"""

from __future__ import annotations

from itertools import count

from ..errors import UnsupportedRuleError
from ..execution import ex_goi1
from ..groupoid import PartialInjectionOp, Region, sum_disjoint
from .locations import AddressSite, GoiPlan, allocate_goi1
from .rewrite import normalize_mll
from .syntax import (
    Ax,
    Cut,
    Exchange,
    Par,
    ProofTree,
    TensorRule,
    dual,
    leaf_paths,
    par_positions,
    sequent_of,
)


def _link(a: AddressSite, b: AddressSite) -> PartialInjectionOp:
    """Partial symmetry exchanging two leaf addresses."""
    fwd = PartialInjectionOp.cylinder(b.word, a.word, 1.0, out_slot=b.slot, in_slot=a.slot)
    return sum_disjoint(fwd, PartialInjectionOp.cylinder(a.word, b.word, 1.0, out_slot=a.slot, in_slot=b.slot))


def _matcher(word_a: str, word_b: str, slot: int, formula) -> PartialInjectionOp:
    """Leafwise symmetry between a formula tree and its dual across a cut."""
    total = PartialInjectionOp.zero()
    for path, _leaf in leaf_paths(formula):
        link = _link(AddressSite(word_a + path, slot, None), AddressSite(word_b + path, slot, None))
        total = sum_disjoint(total, link)
    return total


def _interpret(node: ProofTree, sites: list[AddressSite], cuts) -> tuple[PartialInjectionOp, PartialInjectionOp]:
    if isinstance(node, Ax):
        a, b = sites
        return _link(a, b), PartialInjectionOp.zero()
    if isinstance(node, Par):
        s = sequent_of(node.premise)
        layout = par_positions(len(s), node.i, node.j)
        pf = sites[min(node.i, node.j)]
        conc_pos = {prem: k for k, prem in enumerate(layout) if prem is not None}
        prem_sites: list[AddressSite] = []
        for k in range(len(s)):
            if k == node.i:
                prem_sites.append(pf.left())
            elif k == node.j:
                prem_sites.append(pf.right())
            else:
                prem_sites.append(sites[conc_pos[k]])
        return _interpret(node.premise, prem_sites, cuts)
    if isinstance(node, TensorRule):
        s1 = sequent_of(node.left)
        n1 = len(s1) - 1
        t = sites[0]
        pi1, sg1 = _interpret(node.left, [t.left()] + sites[1 : 1 + n1], cuts)
        pi2, sg2 = _interpret(node.right, [t.right()] + sites[1 + n1 :], cuts)
        return sum_disjoint(pi1, pi2), sum_disjoint(sg1, sg2)
    if isinstance(node, Cut):
        slot = next(cuts) + 1
        s1 = sequent_of(node.left)
        s2 = sequent_of(node.right)
        i1 = s1.index(node.formula)
        i2 = s2.index(dual(node.formula))
        n1 = len(s1) - 1
        site_a = AddressSite("R", slot, node.formula)
        site_b = AddressSite("L", slot, dual(node.formula))
        sites1 = sites[:n1]
        sites1 = sites1[:i1] + [site_a] + sites1[i1:]
        sites2 = sites[n1:]
        sites2 = sites2[:i2] + [site_b] + sites2[i2:]
        pi1, sg1 = _interpret(node.left, sites1, cuts)
        pi2, sg2 = _interpret(node.right, sites2, cuts)
        sigma = sum_disjoint(sum_disjoint(sg1, sg2), _matcher("R", "L", slot, node.formula))
        return sum_disjoint(pi1, pi2), sigma
    if isinstance(node, Exchange):
        prem_sites: list[AddressSite | None] = [None] * len(node.perm)
        for k, t in enumerate(node.perm):
            prem_sites[t] = sites[k]
        return _interpret(node.premise, prem_sites, cuts)
    raise UnsupportedRuleError(f"{type(node).__name__} is outside the multiplicative fragment")


def interpret_mll_goi1(proof: ProofTree, plan: GoiPlan | None = None) -> tuple[PartialInjectionOp, PartialInjectionOp]:
    """Axiom-link and cut-link partial symmetries of a multiplicative proof."""
    plan = plan if plan is not None else allocate_goi1(proof)
    return _interpret(proof, list(plan.sites), count(0))


def soundness_check_mll(proof: ProofTree) -> bool:
    """Execution of the interpretation equals the normal form's, bit-exact."""
    plan = allocate_goi1(proof)
    pi, sigma = interpret_mll_goi1(proof, plan)
    executed = ex_goi1(pi, sigma, Region.from_support(sigma))
    normal = normalize_mll(proof)
    if sequent_of(normal) != sequent_of(proof):
        return False
    pi_n, sigma_n = interpret_mll_goi1(normal, plan)
    return sigma_n.is_zero() and executed == pi_n
