"""The finitely generated fragment of the group of polytope classes.

Elements are finite integer combinations of translation classes of polytopes.
A class is stored as its canonical representative: the polytope translated so
its lexicographically smallest vertex sits at the origin. Addition is free;
the inclusion-exclusion relation is not quotiented structurally, so equality
of stored sums is a sufficient but not necessary condition for equality in
the full group. Panels of translation-invariant valuations provide the sound
direction: a panel disagreement certifies that two sums differ as group
elements, while agreement is only a fingerprint match.

`mcmullen_components` realizes the grading: e_0[X], ..., e_d[X] are explicit
integer combinations of rational dilates of X with e_0[X] = [point],
sum e_i[X] = [X], re-extraction idempotence, and degree-i homogeneity under
dilation, all checkable exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import polytope as pk
from .diffcalc import QQ_NONNEG, FunctionHandle, GroupOps, extract_components
from .errors import ParseError
from .rationals import rat, rat_str
from .valuations import evaluate_sum


def class_rep(P: pk.Polytope) -> pk.Polytope:
    """Canonical representative: translate the least vertex to the origin."""
    least = P.vertices[0]
    if all(c == 0 for c in least):
        return P
    return pk.translate(P, tuple(-c for c in least))


def _sort_key(P: pk.Polytope):
    return (P.ambient_dim, P.vertices)


@dataclass(frozen=True)
class FormalSum:
    """Finite integer combination of canonical polytope classes.

    ``terms`` holds (class representative, nonzero coefficient) pairs sorted
    by class; the representation is unique, so `==` decides equality of
    stored sums.
    """

    terms: tuple = ()

    @staticmethod
    def zero() -> "FormalSum":
        return _ZERO

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, P: pk.Polytope) -> int:
        rep = class_rep(P)
        for poly, coef in self.terms:
            if poly == rep:
                return coef
        return 0

    def __add__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        acc = dict(self.terms)
        for poly, coef in other.terms:
            acc[poly] = acc.get(poly, 0) + coef
        return _from_dict(acc)

    def __neg__(self):
        return FormalSum(tuple((poly, -coef) for poly, coef in self.terms))

    def __sub__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return _ZERO
        return FormalSum(tuple((poly, k * coef) for poly, coef in self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for poly, coef in self.terms:
            body = "[" + ";".join(
                "(" + ",".join(rat_str(c) for c in v) + ")" for v in poly.vertices
            ) + "]"
            if coef == 1:
                parts.append(body)
            elif coef == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{coef}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


_ZERO = FormalSum(())


def _from_dict(acc: dict) -> FormalSum:
    items = [(poly, coef) for poly, coef in acc.items() if coef != 0]
    items.sort(key=lambda item: _sort_key(item[0]))
    return FormalSum(tuple(items))


def class_of(P: pk.Polytope) -> FormalSum:
    """The class [P]: a single canonical term with coefficient 1."""
    return FormalSum(((class_rep(P), 1),))


def combine(s1: FormalSum, s2: FormalSum, c1: int, c2: int) -> FormalSum:
    """c1*s1 + c2*s2 with zero-coefficient pruning."""
    return c1 * s1 + c2 * s2


def dilate_class(s: FormalSum, factor) -> FormalSum:
    """Termwise dilation followed by re-canonicalization."""
    lam = rat(factor)
    acc: dict = {}
    for poly, coef in s.terms:
        rep = class_rep(pk.dilate(poly, lam))
        acc[rep] = acc.get(rep, 0) + coef
    return _from_dict(acc)


def formal_sum_group() -> GroupOps:
    """Carrier record so the difference calculus can target formal sums."""
    return GroupOps(
        add=FormalSum.__add__,
        zero=_ZERO,
        neg=FormalSum.__neg__,
        scale=lambda k, s: k * s,
    )


# ---------------------------------------------------------------------------
# the graded components


def mcmullen_components(P: pk.Polytope, degree: int | None = None) -> list:
    """The components e_0[P], ..., e_d[P] of the class of P.

    Computed by extracting the polynomial expansion of t -> [t*P] in the
    group of formal sums; entry i is the degree-i component evaluated at
    dilation factor 1 and entry 0 is the constant [point]. The entries are
    integer combinations of rational dilates of P summing to [P] exactly.

    ``degree`` defaults to dim(P); any bound >= dim(P) is valid and yields
    identically zero extra components.
    """
    if degree is None:
        degree = pk.dim(P)
    return component_extraction_on_sum(class_of(P), degree)


def component_extraction_on_sum(s: FormalSum, degree: int) -> list:
    """Degree components of a formal sum; additive in the sum."""
    handle = FunctionHandle(
        lambda t: dilate_class(s, t), QQ_NONNEG, formal_sum_group()
    )
    probes = [Fraction(0), Fraction(1), Fraction(2), Fraction(1, 2)]
    # component additivity holds only modulo the group relations, i.e. under
    # every translation-invariant valuation, so it is not checked structurally
    expansion = extract_components(handle, degree, probes=probes, check_additivity=False)
    return [expansion.constant] + [comp.at_ones for comp in expansion.components]


# ---------------------------------------------------------------------------
# panels


@dataclass(frozen=True)
class PanelSignature:
    """Ordered exact values a fixed valuation panel assigns to a sum."""

    entries: tuple

    def values(self):
        return tuple(v for _, v in self.entries)

    def __add__(self, other):
        if not isinstance(other, PanelSignature):
            return NotImplemented
        assert tuple(k for k, _ in self.entries) == tuple(k for k, _ in other.entries)
        return PanelSignature(
            tuple((k, a + b) for (k, a), (_, b) in zip(self.entries, other.entries))
        )


def panel_signature(s: FormalSum, panel) -> PanelSignature:
    return PanelSignature(tuple((val.key(), evaluate_sum(val, s)) for val in panel))


@dataclass(frozen=True)
class PanelComparison:
    """Outcome of comparing two sums through a panel.

    ``witness`` is None when every panel valuation agrees. A witness
    certifies the sums are distinct group elements; agreement is NOT a proof
    of equality (the panel is a finite fingerprint).
    """

    equal_on_panel: bool
    witness: Optional[str] = None
    left: Optional[Fraction] = None
    right: Optional[Fraction] = None


def panel_compare(s1: FormalSum, s2: FormalSum, panel) -> PanelComparison:
    for val in panel:
        a = evaluate_sum(val, s1)
        b = evaluate_sum(val, s2)
        if a != b:
            return PanelComparison(False, val.key(), a, b)
    return PanelComparison(True)


# ---------------------------------------------------------------------------
# identity reports


@dataclass(frozen=True)
class CheckRow:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class Report:
    title: str
    rows: tuple

    @property
    def ok(self) -> bool:
        return all(row.ok for row in self.rows)

    def failures(self):
        return [row for row in self.rows if not row.ok]


def verify_idempotence(P: pk.Polytope, panel, degree: int | None = None) -> Report:
    """Re-extracting a component leaves slot i==j fixed and kills the rest.

    Checked at panel level: extraction slot i of e_j[P] must be panel-equal
    to e_j[P] when i == j and to the zero sum otherwise.
    """
    d = pk.dim(P) if degree is None else degree
    comps = mcmullen_components(P, d)
    rows = []
    for j, ej in enumerate(comps):
        re_extracted = component_extraction_on_sum(ej, d)
        for i, slot in enumerate(re_extracted):
            target = ej if i == j else FormalSum.zero()
            cmp = panel_compare(slot, target, panel)
            detail = "" if cmp.equal_on_panel else (
                f"{cmp.witness}: {cmp.left} != {cmp.right}"
            )
            rows.append(CheckRow(f"e_{i} of e_{j}", cmp.equal_on_panel, detail))
    return Report("idempotence", tuple(rows))


def verify_homogeneity(P: pk.Polytope, factor, panel) -> Report:
    """Degree-i components rescale by factor**i through every panel valuation."""
    lam = rat(factor)
    d = pk.dim(P)
    base = mcmullen_components(P, d)
    dilated = mcmullen_components(pk.dilate(P, lam), d)
    rows = []
    for i in range(d + 1):
        expected_scale = lam ** i if i > 0 else Fraction(1)
        for val in panel:
            left = evaluate_sum(val, dilated[i])
            right = expected_scale * evaluate_sum(val, base[i])
            rows.append(
                CheckRow(
                    f"degree {i} under {val.key()}",
                    left == right,
                    "" if left == right else f"{left} != {right}",
                )
            )
    return Report(f"homogeneity at {lam}", tuple(rows))


def simplex_identity_as_classes(basis: pk.SimplexBasis, a, b, panel) -> Report:
    """Inclusion-exclusion for the dilated staircase simplex, at class level.

    The class of the (a+b)-dilate equals the alternating sum of classes of
    the Minkowski-sum pieces, once each panel valuation is applied.
    """
    av, bv = rat(a), rat(b)
    d = basis.count
    lhs = class_of(pk.dilate(pk.simplex_from_basis(basis), av + bv))
    rhs = FormalSum.zero()
    for i in range(d + 1):
        head = pk.dilate(pk._partial_simplex(basis, 0, i), av)
        tail = pk.dilate(pk._partial_simplex(basis, i, d), bv)
        rhs = rhs + class_of(pk.minkowski_sum(head, tail))
        if i >= 1:
            head_prev = pk.dilate(pk._partial_simplex(basis, 0, i - 1), av)
            rhs = rhs - class_of(pk.minkowski_sum(head_prev, tail))
    rows = []
    for val in panel:
        left = evaluate_sum(val, lhs)
        right = evaluate_sum(val, rhs)
        rows.append(
            CheckRow(
                val.key(), left == right, "" if left == right else f"{left} != {right}"
            )
        )
    return Report(f"simplex class identity (a={av}, b={bv})", tuple(rows))


# ---------------------------------------------------------------------------
# serialization

def sum_to_obj(s: FormalSum) -> list:
    return [
        {"coef": coef, "polytope": pk.polytope_to_obj(poly)} for poly, coef in s.terms
    ]


def sum_from_obj(obj) -> FormalSum:
    if not isinstance(obj, list):
        raise ParseError("formal sum must be a JSON list of terms")
    acc: dict = {}
    for i, item in enumerate(obj):
        if not isinstance(item, dict) or "coef" not in item or "polytope" not in item:
            raise ParseError(f"term {i} must carry 'coef' and 'polytope'")
        coef = item["coef"]
        if not isinstance(coef, int):
            raise ParseError(f"term {i}: coefficient must be an integer")
        poly = class_rep(pk.polytope_from_obj(item["polytope"]))
        acc[poly] = acc.get(poly, 0) + coef
    return _from_dict(acc)
