"""Bundled proof corpus for the soundness suites.

The multiplicative corpus covers cut chains up to four cuts, compound
cut formulas, and nested pairings.  The additive corpus covers each rule
at least once, including nested superpositions with uneven dialect
weights.
"""

from __future__ import annotations

from .syntax import parse_proof

MLL_CORPUS: tuple[tuple[str, str], ...] = (
    ("ax", "(ax X1)"),
    ("cut-ax-ax", "(cut X1 (ax X1) (ax X1))"),
    ("cut-dual-side", "(cut (dual X1) (ax X1) (ax X1))"),
    ("cut-chain-2", "(cut X1 (cut X1 (ax X1) (ax X1)) (ax X1))"),
    ("cut-chain-3", "(cut X1 (cut X1 (cut X1 (ax X1) (ax X1)) (ax X1)) (ax X1))"),
    ("cut-chain-4", "(cut X1 (cut X1 (cut X1 (cut X1 (ax X1) (ax X1)) (ax X1)) (ax X1)) (ax X1))"),
    ("tensor-pair", "(tensor (ax X1) (ax X2))"),
    ("par-of-tensor", "(par 1 2 (tensor (ax X1) (ax X2)))"),
    ("tensor-then-cut", "(cut X2 (tensor (ax X1) (ax X2)) (ax X2))"),
    ("cut-inside-tensor", "(tensor (cut X1 (ax X1) (ax X1)) (ax X2))"),
    (
        "compound-cut",
        "(cut (tensor (dual X1) (dual X2)) (tensor (ax X1) (ax X2)) (par 1 2 (tensor (ax X1) (ax X2))))",
    ),
    (
        "compound-cut-deep",
        "(cut (tensor (dual X1) (dual X2))"
        " (tensor (ax X1) (ax X2))"
        " (par 1 2 (tensor (cut X1 (ax X1) (ax X1)) (ax X2))))",
    ),
    ("deep-par", "(par 0 1 (par 1 2 (tensor (tensor (ax X1) (ax X2)) (ax X3))))"),
    ("tensor-cut-b", "(cut X3 (tensor (ax X3) (ax X1)) (ax X3))"),
)


MALL_CORPUS: tuple[tuple[str, str], ...] = (
    ("ax", "(ax X1)"),
    ("cut", "(cut X1 (ax X1) (ax X1))"),
    ("tensor", "(tensor (ax X1) (ax X2))"),
    ("par", "(par 1 2 (tensor (ax X1) (ax X2)))"),
    ("with", "(with (ax X1) (ax X1))"),
    ("plus-left", "(plusl (dual X2) (ax X1))"),
    ("plus-right", "(plusr (dual X2) (ax X1))"),
    ("top", "(top X1 (dual X2))"),
    ("with-of-plus", "(with (plusl (dual X2) (ax X1)) (plusr (dual X2) (ax X1)))"),
    ("cut-against-with", "(cut (dual X1) (ax X1) (with (ax X1) (ax X1)))"),
    ("cut-against-plus", "(cut (dual X1) (ax X1) (plusl (dual X2) (ax X1)))"),
    ("cut-against-top", "(cut (dual X1) (ax X1) (top X1))"),
    ("tensor-of-with", "(tensor (with (ax X1) (ax X1)) (ax X2))"),
    ("par-of-with", "(par 0 1 (with (ax X1) (ax X1)))"),
    ("nested-with", "(with (with (ax X1) (ax X1)) (ax X1))"),
    ("with-size2", "(with (ax X3) (ax X3))"),
)


def mll_proofs():
    return [(name, parse_proof(text)) for name, text in MLL_CORPUS]


def mall_proofs():
    return [(name, parse_proof(text)) for name, text in MALL_CORPUS]
