"""Dehn surgery on cable knots.

For the cable C = C(p, q; K) with q >= 2 and a slope r = m/n:

* r = pq: S^3_r(C) = S^3_{p/q}(K) # L(q, p);
* |m - npq| = 1: S^3_r(C) = S^3_{m/(nq^2)}(K);
* otherwise S^3_r(C) is E(K) glued to a Seifert piece over the disk with
  singular fibers of orders q and |npq - m|.

These rules are applied recursively down a cable tower, with JSJ tori
counted along the way. The regular fiber of the cable space of C(p, q)
has slope pq/1 on the boundary of N(C) and slope p/q on the boundary of
N(K); comparing such slopes decides whether a gluing torus is JSJ.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from .errors import (
    CableParameterError,
    InfiniteSlopeError,
    MissingAttributeError,
    NotACableError,
    SlopesEqualError,
)
from .knots import Cable, KnotExpr, Leaf, Torus, Unknot, simplify
from .manifolds import (
    CableSpace,
    ConnectedSum,
    DistinguishVerdict,
    GraphManifold,
    LensSpace,
    ManifoldDescriptor,
    SFSPiece,
    SurgeryAtom,
    TorusExterior,
    distinguish,
    jsj_torus_count,
    leaf_exterior,
    to_json,
)
from .slopes import INFINITY, Slope, slope_negate, slope_new

__all__ = [
    "CableParams",
    "CaseTag",
    "ATOROIDAL",
    "case_tag",
    "classify_cable_surgery",
    "exterior_jsj",
    "outer_fiber_slope",
    "is_gluing_torus_jsj",
    "surgered_jsj",
    "cosmetic_pair_verdict",
    "PairVerdict",
]


@dataclass(frozen=True)
class CableParams:
    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if q < 0:
            p, q = -p, -q
        if q < 2:
            raise CableParameterError(f"cable parameters ({self.p},{self.q}) need |q| >= 2")
        if gcd(p, q) != 1:
            raise CableParameterError(f"cable parameters ({p},{q}) need gcd 1")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)


class CaseTag(str, enum.Enum):
    CASE1 = "Case1_ReducibleLens"
    CASE2 = "Case2_ReSurgery"
    CASE3 = "Case3_GraphManifold"


class _Atoroidal:
    """Marker for a hyperbolic side of a gluing torus (no fiber slope)."""

    def __repr__(self):
        return "ATOROIDAL"


ATOROIDAL = _Atoroidal()


def case_tag(params: CableParams, r: Slope) -> CaseTag:
    if r.is_infinite:
        raise InfiniteSlopeError("the 1/0 slope is the trivial filling")
    pq = params.p * params.q
    if r.n == 1 and r.m == pq:
        return CaseTag.CASE1
    if abs(r.m - r.n * pq) == 1:
        return CaseTag.CASE2
    return CaseTag.CASE3


def _leaf_class(leaf: Leaf):
    cls = leaf.declared_class
    if cls.kind == "unknown":
        raise MissingAttributeError(
            f"leaf {leaf.name} has no declared class (hyperbolic or satellite:<pieces>[:outer])"
        )
    return cls


def exterior_jsj(k: KnotExpr) -> tuple[ManifoldDescriptor, ...]:
    """JSJ pieces of E(k), outermost first (a satellite leaf is one opaque block)."""
    k = simplify(k)
    if isinstance(k, Unknot):
        return ()
    if isinstance(k, Torus):
        return (TorusExterior(k.a, k.b),)
    if isinstance(k, Leaf):
        _leaf_class(k)
        return (leaf_exterior(k),)
    inner = exterior_jsj(k.companion)
    inner_slope = outer_fiber_slope(k.companion)
    # the cable space meets E(companion) along a JSJ torus
    assert is_gluing_torus_jsj(inner[0], inner_slope, Slope.of(k.p, k.q))
    return (CableSpace(k.p, k.q),) + inner


def outer_fiber_slope(k: KnotExpr):
    """Regular-fiber slope on the boundary of N(k) of the outermost piece of E(k)."""
    k = simplify(k)
    if isinstance(k, Torus):
        return Slope.of(k.a * k.b)
    if isinstance(k, Cable):
        return Slope.of(k.p * k.q)
    if isinstance(k, Leaf):
        cls = _leaf_class(k)
        if cls.kind == "satellite" and cls.outer == "composing":
            return INFINITY
        return ATOROIDAL
    raise NotACableError("the unknot exterior is a solid torus")


def is_gluing_torus_jsj(adjacent_piece, piece_fiber_slope, other_fiber_slope) -> bool:
    """Whether a torus between a piece of E(K) and another piece is JSJ.

    The torus fails to be JSJ only when both sides are Seifert fibered
    and their regular fibers have the same slope on it, in which case the
    fibrations glue into a larger Seifert piece. ``ATOROIDAL`` marks a
    hyperbolic side. ``adjacent_piece`` is kept for reporting.
    """
    if piece_fiber_slope is ATOROIDAL or other_fiber_slope is ATOROIDAL:
        return True
    return piece_fiber_slope != other_fiber_slope


def _surgery_on(k: KnotExpr, s: Slope) -> ManifoldDescriptor:
    """Annotated descriptor of S^3_s(k) for the companions the classifier meets."""
    k = simplify(k)
    if isinstance(k, Unknot):
        return LensSpace(abs(s.m), s.n)
    if isinstance(k, Cable):
        return classify_cable_surgery(CableParams(k.p, k.q), s, k.companion)[1]
    if isinstance(k, Torus):
        # non-integral surgery on a torus knot is Seifert fibered
        return SurgeryAtom(k, s, 0 if s.n >= 2 else None)
    cls = _leaf_class(k)
    if cls.kind == "hyperbolic":
        # toroidal surgeries on hyperbolic knots have denominator <= 2
        return SurgeryAtom(k, s, 0 if s.n > 2 else None)
    if s.n > 2 or (cls.outer == "composing" and s.n >= 2):
        return SurgeryAtom(k, s, cls.pieces - 1)
    return SurgeryAtom(k, s, None)


def classify_cable_surgery(params: CableParams, r: Slope, companion: KnotExpr):
    """Return ``(CaseTag, descriptor)`` for S^3_r(C(p, q; companion))."""
    companion = simplify(companion)
    if isinstance(companion, Unknot):
        raise NotACableError(f"C({params.p},{params.q}; U) is a torus knot or the unknot")
    tag = case_tag(params, r)
    p, q = params.p, params.q
    m, n = r.m, r.n
    if tag is CaseTag.CASE1:
        return tag, ConnectedSum((SurgeryAtom(companion, Slope.of(p, q)), LensSpace(q, p)))
    if tag is CaseTag.CASE2:
        inner = slope_new(m, n * q * q)
        assert inner.m == m and inner.n == n * q * q, "m/(nq^2) must already be reduced"
        return tag, _surgery_on(companion, inner)
    second = abs(n * p * q - m)
    assert second >= 2, "multiplicity-1 fiber only arises in the second case"
    sfs = SFSPiece((q, second), 1)
    pieces = exterior_jsj(companion)
    glued = is_gluing_torus_jsj(pieces[0], outer_fiber_slope(companion), Slope.of(p, q))
    inner_tori = sum(getattr(piece, "pieces", 1) for piece in pieces) - 1
    return tag, GraphManifold(pieces + (sfs,), inner_tori + (1 if glued else 0))


def surgered_jsj(k: KnotExpr, r: Slope) -> ManifoldDescriptor:
    """Annotated descriptor of S^3_r(k) for a cable knot k."""
    k = simplify(k)
    if not isinstance(k, Cable):
        raise NotACableError(f"{k} is not a cable of a non-trivial knot")
    return classify_cable_surgery(CableParams(k.p, k.q), r, k.companion)[1]


@dataclass(frozen=True)
class PairVerdict:
    knot: KnotExpr
    r: Slope
    case_r: CaseTag
    case_neg_r: CaseTag
    descriptor_r: ManifoldDescriptor
    descriptor_neg_r: ManifoldDescriptor
    verdict: DistinguishVerdict

    def to_json(self) -> dict:
        def count(d):
            try:
                return jsj_torus_count(d)
            except Exception:
                return None

        return {
            "knot": str(self.knot),
            "r": str(self.r),
            "neg_r": str(slope_negate(self.r)),
            "case_r": self.case_r.value,
            "case_neg_r": self.case_neg_r.value,
            "descriptor_r": to_json(self.descriptor_r),
            "descriptor_neg_r": to_json(self.descriptor_neg_r),
            "jsj_tori_r": count(self.descriptor_r),
            "jsj_tori_neg_r": count(self.descriptor_neg_r),
            "verdict": self.verdict.to_json(),
        }


def cosmetic_pair_verdict(k: KnotExpr, r: Slope) -> PairVerdict:
    """Compare S^3_r(k) with S^3_{-r}(k) for a cable knot k."""
    if r.is_infinite:
        raise InfiniteSlopeError("1/0 is excluded by the knot complement theorem")
    if r.m == 0:
        raise SlopesEqualError("r = 0 coincides with -r")
    k = simplify(k)
    if not isinstance(k, Cable):
        raise NotACableError(f"{k} is not a cable of a non-trivial knot")
    params = CableParams(k.p, k.q)
    neg = slope_negate(r)
    tag_r, d_r = classify_cable_surgery(params, r, k.companion)
    tag_n, d_n = classify_cable_surgery(params, neg, k.companion)
    return PairVerdict(k, r, tag_r, tag_n, d_r, d_n, distinguish(d_r, d_n))
