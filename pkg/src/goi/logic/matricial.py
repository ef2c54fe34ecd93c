"""Interpretation of additive-multiplicative proofs as projects.

Every rule builds on the project algebra: axioms become faxes, tensors
disjoint unions, cuts plugs over a shared carrier, plus rules carrier
extensions, with rules halved superpositions, and the top rule the
trivial project.  Conduct membership is tested against finite witness
sets generated from an interpretation basis: a family of projects (and
duals) per variable on a private primitive carrier.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..errors import CarrierError, MissingVariableError, ProofSyntaxError
from ..projects import (
    ConductWitnessSet,
    Delocation,
    Project,
    build_fax,
    deloc_project,
    extend_carrier,
    make_project,
    plug_project,
    sum_lambda,
    tensor_project,
    with_bar,
    zero_project,
)
from .locations import CarrierSite, MatPlan, allocate_matricial
from .syntax import (
    Ax,
    Bin,
    Cut,
    DualVar,
    Exchange,
    Par,
    PlusL,
    PlusR,
    ProofTree,
    TopRule,
    TensorRule,
    Top,
    Var,
    With,
    Zero,
    _Reader,
    _is_atom,
    par_positions,
    sequent_of,
)

# ----------------------------------------------------------------------
# Interpretation bases


@dataclass(frozen=True)
class WitnessSpec:
    wager: float
    kind: str  # "zero" | "scalar" | "swap" | "diag"
    values: tuple[float, ...] = ()


@dataclass(frozen=True)
class BasisEntry:
    name: str
    size: int
    primal: tuple[WitnessSpec, ...]
    dual: tuple[WitnessSpec, ...]


class InterpretationBasis:
    """Variable name -> primitive carrier plus witness families."""

    def __init__(self, entries):
        self.entries: dict[str, BasisEntry] = {}
        order = []
        for e in entries:
            if e.name in self.entries:
                raise CarrierError(f"duplicate basis entry {e.name}")
            self.entries[e.name] = e
            order.append(e.name)
        self._order = order

    def covers(self, name: str) -> bool:
        return name in self.entries

    def entry(self, name: str) -> BasisEntry:
        if name not in self.entries:
            raise MissingVariableError(f"basis lacks variable {name}")
        return self.entries[name]

    def primitive_carrier(self, name: str) -> tuple[int, ...]:
        idx = self._order.index(name)
        base = -(1000 * (idx + 1))
        return tuple(base - k for k in range(self.entry(name).size))

    def _materialise(self, name: str, spec: WitnessSpec) -> Project:
        carrier = self.primitive_carrier(name)
        n = len(carrier)
        mat = np.zeros((n, n), dtype=complex)
        if spec.kind == "zero":
            pass
        elif spec.kind == "scalar":
            mat += spec.values[0] * np.eye(n)
        elif spec.kind == "swap":
            if n < 2:
                raise CarrierError("swap witnesses need a carrier of size 2+")
            mat[0, 1] = mat[1, 0] = spec.values[0]
        elif spec.kind == "diag":
            if len(spec.values) != n:
                raise CarrierError("diag witness length mismatch")
            mat += np.diag(np.array(spec.values, dtype=complex))
        else:
            raise CarrierError(f"unknown witness kind {spec.kind}")
        return make_project(carrier, spec.wager, mat)

    def primal_projects(self, name: str) -> list[Project]:
        return [self._materialise(name, s) for s in self.entry(name).primal]

    def dual_projects(self, name: str) -> list[Project]:
        return [self._materialise(name, s) for s in self.entry(name).dual]


def default_basis() -> InterpretationBasis:
    """Deterministic desk-scale basis: positive wagers, small operators.

    Every primal/dual pairing measures to a value comfortably away from
    0 and finite, so generated witness products stay admissible.
    """
    specs = []
    for name, size in (("X1", 1), ("X2", 1), ("X3", 2), ("X4", 1)):
        primal = (
            WitnessSpec(0.7, "zero"),
            WitnessSpec(0.4, "scalar", (0.5,)) if size == 1 else WitnessSpec(0.4, "swap", (0.5,)),
        )
        dual = (
            WitnessSpec(0.9, "zero"),
            WitnessSpec(0.6, "scalar", (-0.3,)) if size == 1 else WitnessSpec(0.6, "swap", (-0.3,)),
        )
        specs.append(BasisEntry(name, size, primal, dual))
    return InterpretationBasis(specs)


def parse_basis(text: str) -> InterpretationBasis:
    """(basis (var NAME SIZE (primal SPEC*) (dual SPEC*))*) with
    SPEC = (project WAGER zero|(scalar S)|(swap S)|(diag V*))."""
    reader = _Reader(text)
    node = reader.read()
    if _is_atom(node):
        raise ProofSyntaxError("basis must be a list", node.line, node.col)
    items, opener = node
    if not items or not _is_atom(items[0]) or items[0].text != "basis":
        raise ProofSyntaxError("expected (basis ...)", opener.line, opener.col)

    def spec_of(n) -> WitnessSpec:
        if _is_atom(n):
            raise ProofSyntaxError("witness spec must be a list", n.line, n.col)
        sub, op = n
        if len(sub) != 3 or not _is_atom(sub[0]) or sub[0].text != "project":
            raise ProofSyntaxError("expected (project WAGER OPSPEC)", op.line, op.col)
        wager = float(sub[1].text)
        opspec = sub[2]
        if _is_atom(opspec):
            if opspec.text != "zero":
                raise ProofSyntaxError(f"unknown opspec {opspec.text}", opspec.line, opspec.col)
            return WitnessSpec(wager, "zero")
        parts, op2 = opspec
        kind = parts[0].text
        vals = tuple(float(t.text) for t in parts[1:])
        return WitnessSpec(wager, kind, vals)

    entries = []
    for item in items[1:]:
        if _is_atom(item):
            raise ProofSyntaxError("basis entry must be a list", item.line, item.col)
        sub, op = item
        if len(sub) < 3 or sub[0].text != "var":
            raise ProofSyntaxError("expected (var NAME SIZE ...)", op.line, op.col)
        name = sub[1].text
        size = int(sub[2].text)
        primal: tuple[WitnessSpec, ...] = ()
        dualw: tuple[WitnessSpec, ...] = ()
        for grp in sub[3:]:
            g, gop = grp
            tag = g[0].text
            specs = tuple(spec_of(x) for x in g[1:])
            if tag == "primal":
                primal = specs
            elif tag == "dual":
                dualw = specs
            else:
                raise ProofSyntaxError(f"unknown group {tag}", gop.line, gop.col)
        entries.append(BasisEntry(name, size, primal, dualw))
    return InterpretationBasis(entries)


# ----------------------------------------------------------------------
# Interpretation


def _interpret(node: ProofTree, sites: list[CarrierSite], cuts: list, basis: InterpretationBasis) -> Project:
    if isinstance(node, Ax):
        a, b = sites
        return build_fax(a.delocation, b.delocation)
    if isinstance(node, Par):
        s = sequent_of(node.premise)
        layout = par_positions(len(s), node.i, node.j)
        pf = sites[min(node.i, node.j)]
        conc_pos = {prem: k for k, prem in enumerate(layout) if prem is not None}
        prem_sites = []
        for k in range(len(s)):
            if k == node.i:
                prem_sites.append(pf.left())
            elif k == node.j:
                prem_sites.append(pf.right())
            else:
                prem_sites.append(sites[conc_pos[k]])
        return _interpret(node.premise, prem_sites, cuts, basis)
    if isinstance(node, TensorRule):
        s1 = sequent_of(node.left)
        n1 = len(s1) - 1
        t = sites[0]
        f1 = _interpret(node.left, [t.left()] + sites[1 : 1 + n1], cuts, basis)
        f2 = _interpret(node.right, [t.right()] + sites[1 + n1 :], cuts, basis)
        return tensor_project(f1, f2)
    if isinstance(node, Cut):
        site_a, site_b = cuts.pop(0)
        s1 = sequent_of(node.left)
        s2 = sequent_of(node.right)
        i1 = s1.index(node.formula)
        i2 = s2.index(_dual_formula(node.formula))
        n1 = len(s1) - 1
        sites1 = sites[:n1]
        sites1 = sites1[:i1] + [site_a] + sites1[i1:]
        sites2 = sites[n1:]
        sites2 = sites2[:i2] + [site_b] + sites2[i2:]
        f1 = _interpret(node.left, sites1, cuts, basis)
        f2 = _interpret(node.right, sites2, cuts, basis)
        return plug_project(f1, f2)
    if isinstance(node, PlusL):
        site = sites[0]
        f = _interpret(node.premise, [site.left()] + sites[1:], cuts, basis)
        return extend_carrier(f, site.right().locations)
    if isinstance(node, PlusR):
        site = sites[0]
        f = _interpret(node.premise, [site.right()] + sites[1:], cuts, basis)
        return extend_carrier(f, site.left().locations)
    if isinstance(node, With):
        site = sites[0]
        f1 = _interpret(node.left, [site.left()] + sites[1:], cuts, basis)
        f2 = _interpret(node.right, [site.right()] + sites[1:], cuts, basis)
        return with_bar(f1, f2)
    if isinstance(node, TopRule):
        carrier = tuple(loc for s in sites for loc in s.locations)
        return zero_project(carrier)
    if isinstance(node, Exchange):
        prem_sites = [None] * len(node.perm)
        for k, t in enumerate(node.perm):
            prem_sites[t] = sites[k]
        return _interpret(node.premise, prem_sites, cuts, basis)
    raise CarrierError(f"unknown node {node!r}")


def _dual_formula(f):
    from .syntax import dual

    return dual(f)


def interpret_mall_matricial(proof: ProofTree, basis: InterpretationBasis, plan: MatPlan | None = None) -> Project:
    """Project interpretation of an additive-multiplicative proof."""
    plan = plan if plan is not None else allocate_matricial(proof, basis)
    return _interpret(proof, list(plan.sites), list(plan.cut_sites), basis)


# ----------------------------------------------------------------------
# Witness generation (finite stand-in for dual conducts)


def _deloc_all(projects, theta: Delocation):
    return [deloc_project(theta, p) for p in projects]


def dual_witnesses_for(site: CarrierSite, basis: InterpretationBasis, cap: int = 3) -> list[Project]:
    """Finite sample of the dual conduct of one formula occurrence."""
    f = site.formula
    if isinstance(f, Var):
        return _deloc_all(basis.dual_projects(f.name), site.delocation)[:cap]
    if isinstance(f, DualVar):
        return _deloc_all(basis.primal_projects(f.name), site.delocation)[:cap]
    if isinstance(f, Top):
        return []  # the empty conduct has no members
    if isinstance(f, Zero):
        return [zero_project(())]
    assert isinstance(f, Bin)
    lefts = dual_witnesses_for(site.left(), basis, cap)
    rights = dual_witnesses_for(site.right(), basis, cap)
    out: list[Project] = []
    if f.conn in ("tensor", "par"):
        for a, b in itertools.islice(itertools.product(lefts, rights), cap):
            out.append(tensor_project(a, b))
    elif f.conn == "with":
        for a in lefts[:cap]:
            out.append(extend_carrier(a, site.right().locations))
        for b in rights[:cap]:
            out.append(extend_carrier(b, site.left().locations))
        out = out[: 2 * cap]
    elif f.conn == "plus":
        for a, b in itertools.islice(itertools.product(lefts, rights), cap):
            ea = extend_carrier(a, site.right().locations)
            eb = extend_carrier(b, site.left().locations)
            out.append(sum_lambda(ea, 1.0, eb))
    return out


def sequent_dual_witnesses(plan: MatPlan, basis: InterpretationBasis, cap: int = 3, total_cap: int = 12) -> ConductWitnessSet:
    """Witnesses of the dual of a whole sequent: tensors over occurrences."""
    per_site = [dual_witnesses_for(site, basis, cap) for site in plan.sites]
    carrier = tuple(loc for site in plan.sites for loc in site.locations)
    if any(not w for w in per_site):
        return ConductWitnessSet(carrier, (), "dual")
    members = []
    for combo in itertools.islice(itertools.product(*per_site), total_cap):
        acc = combo[0]
        for nxt in combo[1:]:
            acc = tensor_project(acc, nxt)
        if set(acc.carrier) != set(carrier):
            acc = extend_carrier(acc, tuple(l for l in carrier if l not in set(acc.carrier)))
        members.append(acc)
    return ConductWitnessSet(carrier, tuple(members), "dual")
