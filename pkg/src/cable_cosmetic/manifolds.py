"""Symbolic descriptors of 3-manifolds and sound distinguishability tests.

A descriptor never claims more than is known. :func:`distinguish` only
answers ``Distinct`` when a topological invariant separates the two
manifolds; everything else is ``NotDistinguished``.

Pieces of a :class:`GraphManifold` are compared as a multiset. Pieces
that are syntactically equal are homeomorphic and cancel in pairs; what
is left is then tested for a bijection pairing pieces that might be
homeomorphic. If none exists the JSJ pieces differ, hence so do the
manifolds (JSJ pieces are homeomorphism invariants).

Seifert-fibered pieces are compared by (singular multiplicities,
boundary count) only. Euler numbers and orientation data are not
tracked, so equal signatures never count as evidence of anything.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from math import gcd
from typing import Union

from .errors import InputError, UnannotatedDescriptorError
from .knots import KnotExpr, Leaf, Unknot, parse_knot_expr
from .slopes import Slope, parse_slope

__all__ = [
    "LensSpace",
    "ConnectedSum",
    "SFSPiece",
    "TorusExterior",
    "ExteriorAtom",
    "SurgeryAtom",
    "CableSpace",
    "GraphManifold",
    "ManifoldDescriptor",
    "Outcome",
    "Reason",
    "DistinguishVerdict",
    "lens_oriented_homeo",
    "lens_homeo",
    "distinguish",
    "jsj_torus_count",
    "is_irreducible",
    "to_json",
    "from_json",
    "DESCRIPTOR_SCHEMA",
]


def _sorted_pieces(pieces):
    return tuple(sorted(pieces, key=lambda d: json.dumps(to_json(d), sort_keys=True)))


@dataclass(frozen=True)
class LensSpace:
    """L(p, q) with 0 <= q < p and gcd(p, q) = 1; L(1, 0) is S^3."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 1:
            raise InputError(f"L({self.p},{self.q}) needs p >= 1")
        q = self.q % self.p
        if gcd(self.p, q) != 1:
            raise InputError(f"L({self.p},{self.q}) needs gcd(p, q) = 1")
        object.__setattr__(self, "q", q)

    def __str__(self):
        return f"L({self.p},{self.q})"


@dataclass(frozen=True)
class SFSPiece:
    """Seifert piece over a disk/sphere with the given singular fibers."""

    multiplicities: tuple[int, ...]
    boundary_count: int = 1

    def __post_init__(self):
        ms = []
        for m in self.multiplicities:
            m = abs(int(m))
            if m == 0:
                raise InputError("a singular fiber cannot have multiplicity 0")
            if m > 1:
                ms.append(m)
        object.__setattr__(self, "multiplicities", tuple(sorted(ms)))
        if self.boundary_count < 0:
            raise InputError("negative boundary count")

    def __str__(self):
        return f"SFS({{{','.join(map(str, self.multiplicities))}}}, b={self.boundary_count})"


@dataclass(frozen=True)
class TorusExterior:
    """Exterior of T(a, b): Seifert fibered over a disk, fibers |a| and |b|."""

    a: int
    b: int

    def __str__(self):
        return f"E(T({self.a},{self.b}))"


@dataclass(frozen=True)
class CableSpace:
    """Cable space of slope p/q: Seifert over an annulus, one fiber of order q."""

    p: int
    q: int

    def __str__(self):
        return f"CableSpace({self.p},{self.q})"


@dataclass(frozen=True)
class ExteriorAtom:
    """Exterior of a leaf knot, opaque.

    ``pieces`` is the number of JSJ pieces it contains (1 for a
    hyperbolic knot); ``outer`` names the type of the piece touching the
    knot's boundary.
    """

    knot: KnotExpr
    pieces: int = 1
    outer: str = "hyperbolic"

    def __str__(self):
        return f"E({self.knot})"


@dataclass(frozen=True)
class SurgeryAtom:
    """S^3_r(K) left unanalysed. ``jsj_tori`` is an annotation, not identity."""

    knot: KnotExpr
    slope: Slope
    jsj_tori: int | None = field(default=None, compare=False)

    def __str__(self):
        return f"S3_{self.slope}({self.knot})"


@dataclass(frozen=True)
class ConnectedSum:
    summands: tuple

    def __post_init__(self):
        flat = []
        for s in self.summands:
            flat.extend(s.summands if isinstance(s, ConnectedSum) else (s,))
        object.__setattr__(self, "summands", _sorted_pieces(flat))

    def __str__(self):
        return " # ".join(str(s) for s in self.summands)


@dataclass(frozen=True)
class GraphManifold:
    """Closed manifold given by its pieces glued along tori.

    ``jsj_tori`` records how many of the gluing tori (including those
    inside opaque exterior blocks) are JSJ tori.
    """

    pieces: tuple
    jsj_tori: int | None = field(default=None, compare=False)

    def __post_init__(self):
        flat = []
        for piece in self.pieces:
            flat.extend(piece.pieces if isinstance(piece, GraphManifold) else (piece,))
        object.__setattr__(self, "pieces", _sorted_pieces(flat))

    def total_pieces(self) -> int:
        return sum(p.pieces if isinstance(p, ExteriorAtom) else 1 for p in self.pieces)

    def is_jsj_faithful(self) -> bool:
        """True when the pieces are exactly the JSJ pieces (blocks allowed)."""
        return self.jsj_tori is not None and self.jsj_tori == self.total_pieces() - 1

    def __str__(self):
        return "{" + ", ".join(str(p) for p in self.pieces) + "}"


ManifoldDescriptor = Union[
    LensSpace, ConnectedSum, SFSPiece, TorusExterior, CableSpace,
    ExteriorAtom, SurgeryAtom, GraphManifold,
]


# -- lens spaces -------------------------------------------------------------

def lens_oriented_homeo(l1: LensSpace, l2: LensSpace) -> bool:
    p = l1.p
    if l2.p != p:
        return False
    return (l1.q - l2.q) % p == 0 or (l1.q * l2.q - 1) % p == 0


def lens_homeo(l1: LensSpace, l2: LensSpace) -> bool:
    """Homeomorphic allowing orientation reversal."""
    if l1.p != l2.p:
        return False
    return lens_oriented_homeo(l1, l2) or lens_oriented_homeo(l1, LensSpace(l2.p, -l2.q))


# -- invariants ---------------------------------------------------------------

def is_irreducible(d: ManifoldDescriptor) -> bool | None:
    """True/False when known, None when undetermined."""
    if isinstance(d, ConnectedSum):
        return False
    if isinstance(d, SurgeryAtom):
        # reducible surgeries on non-trivial knots are integral (Gordon-Luecke)
        if isinstance(d.knot, Unknot):
            return None
        return True if d.slope.n >= 2 else None
    return True


def jsj_torus_count(d: ManifoldDescriptor) -> int:
    if isinstance(d, (LensSpace, SFSPiece, TorusExterior, CableSpace)):
        return 0
    if isinstance(d, ExteriorAtom):
        return d.pieces - 1
    if isinstance(d, (SurgeryAtom, GraphManifold)):
        if d.jsj_tori is None:
            raise UnannotatedDescriptorError(f"{d} carries no JSJ annotation")
        return d.jsj_tori
    if isinstance(d, ConnectedSum):
        return sum(jsj_torus_count(s) for s in d.summands)
    raise UnannotatedDescriptorError(f"unsupported descriptor {d!r}")


def _count_or_none(d):
    try:
        return jsj_torus_count(d)
    except UnannotatedDescriptorError:
        return None


def h1_order(d: ManifoldDescriptor) -> int | None:
    """|H_1| of a closed descriptor; 0 stands for infinite. None if unknown."""
    if isinstance(d, LensSpace):
        return d.p
    if isinstance(d, SurgeryAtom) and not d.slope.is_infinite:
        return abs(d.slope.m)
    if isinstance(d, ConnectedSum):
        orders = [h1_order(s) for s in d.summands]
        if any(o is None for o in orders):
            return None
        out = 1
        for o in orders:
            out *= o
        return out
    return None


def _sfs_signature(d):
    if isinstance(d, SFSPiece):
        return (d.multiplicities, d.boundary_count)
    if isinstance(d, TorusExterior):
        return (tuple(sorted((abs(d.a), abs(d.b)))), 1)
    if isinstance(d, CableSpace):
        return ((d.q,), 2)
    return None


def _is_hyperbolic_piece(d) -> bool:
    return isinstance(d, ExteriorAtom) and d.pieces == 1 and d.outer == "hyperbolic"


def _is_block(d) -> bool:
    return isinstance(d, ExteriorAtom) and d.pieces > 1


# -- verdicts -----------------------------------------------------------------

class Outcome(str, enum.Enum):
    DISTINCT = "Distinct"
    NOT_DISTINGUISHED = "NotDistinguished"


class Reason(str, enum.Enum):
    REDUCIBILITY = "Reducibility"
    JSJ_TORUS_COUNT = "JSJTorusCount"
    FIBER_MULTIPLICITIES = "FiberMultiplicities"
    LENS_INVARIANTS = "LensInvariants"
    ATOM_MISMATCH = "AtomMismatch"


@dataclass(frozen=True)
class DistinguishVerdict:
    outcome: Outcome
    reason: Reason | None = None
    detail: str = ""

    def __post_init__(self):
        if self.outcome is Outcome.DISTINCT and self.reason is None:
            raise ValueError("a Distinct verdict needs a reason")

    @property
    def distinct(self) -> bool:
        return self.outcome is Outcome.DISTINCT

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "reason": None if self.reason is None else self.reason.value,
            "detail": self.detail,
        }


NOT_DISTINGUISHED = DistinguishVerdict(Outcome.NOT_DISTINGUISHED)


def _cancel_common(xs, ys):
    ys = list(ys)
    left = []
    for x in xs:
        if x in ys:
            ys.remove(x)
        else:
            left.append(x)
    return left, ys


def _has_perfect_matching(xs, ys, compatible) -> bool:
    if len(xs) != len(ys):
        return False
    match_of_y: dict[int, int] = {}

    def augment(i, seen):
        for j, y in enumerate(ys):
            if j in seen or not compatible(xs[i], y):
                continue
            seen.add(j)
            if j not in match_of_y or augment(match_of_y[j], seen):
                match_of_y[j] = i
                return True
        return False

    return all(augment(i, set()) for i in range(len(xs)))


def _pieces_certified_distinct(x, y, sfs_only=False) -> bool:
    sx, sy = _sfs_signature(x), _sfs_signature(y)
    if sx is not None and sy is not None:
        return sx != sy
    if sfs_only:
        return False
    # a hyperbolic piece is never Seifert fibered
    return (sx is not None and _is_hyperbolic_piece(y)) or (sy is not None and _is_hyperbolic_piece(x))


def _compare_piece_multisets(xs, ys):
    xs, ys = _cancel_common(xs, ys)
    if not xs and not ys:
        return None
    if any(_is_block(p) for p in xs + ys):
        return None
    if len(xs) != len(ys):
        # equal JSJ counts were established, so this only happens for blocks
        return None

    def maybe_same(sfs_only):
        return lambda a, b: not _pieces_certified_distinct(a, b, sfs_only)

    if _has_perfect_matching(xs, ys, maybe_same(False)):
        return None
    fx = ", ".join(map(str, xs))
    fy = ", ".join(map(str, ys))
    if not _has_perfect_matching(xs, ys, maybe_same(True)):
        return DistinguishVerdict(
            Outcome.DISTINCT, Reason.FIBER_MULTIPLICITIES,
            f"unmatched JSJ pieces [{fx}] vs [{fy}]",
        )
    return DistinguishVerdict(
        Outcome.DISTINCT, Reason.ATOM_MISMATCH,
        f"unmatched JSJ pieces [{fx}] vs [{fy}]",
    )


def _as_pieces(d):
    if isinstance(d, GraphManifold):
        return list(d.pieces) if d.is_jsj_faithful() else None
    if isinstance(d, (SFSPiece, TorusExterior, CableSpace, ExteriorAtom)):
        return [d]
    return None


def _summands_certified_distinct(x, y) -> bool:
    if isinstance(x, LensSpace) and isinstance(y, LensSpace):
        return not lens_homeo(x, y)
    hx, hy = h1_order(x), h1_order(y)
    return hx is not None and hy is not None and hx != hy


def distinguish(d1: ManifoldDescriptor, d2: ManifoldDescriptor) -> DistinguishVerdict:
    """Sound (incomplete) test that two closed descriptors are not homeomorphic."""
    i1, i2 = is_irreducible(d1), is_irreducible(d2)
    if {i1, i2} == {True, False}:
        return DistinguishVerdict(
            Outcome.DISTINCT, Reason.REDUCIBILITY,
            f"{'first' if i1 is False else 'second'} is reducible, the other irreducible",
        )

    if i1 and i2:
        c1, c2 = _count_or_none(d1), _count_or_none(d2)
        if c1 is not None and c2 is not None and c1 != c2:
            return DistinguishVerdict(
                Outcome.DISTINCT, Reason.JSJ_TORUS_COUNT, f"{c1} vs {c2} JSJ tori"
            )

    p1, p2 = _as_pieces(d1), _as_pieces(d2)
    if p1 is not None and p2 is not None:
        verdict = _compare_piece_multisets(p1, p2)
        if verdict is not None:
            return verdict

    if isinstance(d1, ConnectedSum) and isinstance(d2, ConnectedSum):
        xs, ys = _cancel_common(d1.summands, d2.summands)
        if (xs or ys) and not _has_perfect_matching(
            xs, ys, lambda a, b: not _summands_certified_distinct(a, b)
        ):
            lens_involved = any(isinstance(s, LensSpace) for s in xs + ys)
            return DistinguishVerdict(
                Outcome.DISTINCT,
                Reason.LENS_INVARIANTS if lens_involved else Reason.ATOM_MISMATCH,
                "prime summands cannot be paired",
            )

    if isinstance(d1, LensSpace) and isinstance(d2, LensSpace) and not lens_homeo(d1, d2):
        # orientation-only differences are deliberately not used
        return DistinguishVerdict(Outcome.DISTINCT, Reason.LENS_INVARIANTS, f"{d1} vs {d2}")

    if isinstance(d1, SurgeryAtom) and isinstance(d2, SurgeryAtom):
        # opaque surgeries are compared syntactically only
        return NOT_DISTINGUISHED
    h1, h2 = h1_order(d1), h1_order(d2)
    if h1 is not None and h2 is not None and h1 != h2:
        return DistinguishVerdict(
            Outcome.DISTINCT, Reason.ATOM_MISMATCH, f"|H_1| = {h1 or 'inf'} vs {h2 or 'inf'}"
        )
    return NOT_DISTINGUISHED


# -- JSON ---------------------------------------------------------------------

def to_json(d: ManifoldDescriptor) -> dict:
    if isinstance(d, LensSpace):
        return {"type": "LensSpace", "p": d.p, "q": d.q}
    if isinstance(d, SFSPiece):
        return {"type": "SFSPiece", "multiplicities": list(d.multiplicities),
                "boundary_count": d.boundary_count}
    if isinstance(d, TorusExterior):
        return {"type": "TorusExterior", "a": d.a, "b": d.b}
    if isinstance(d, CableSpace):
        return {"type": "CableSpace", "p": d.p, "q": d.q}
    if isinstance(d, ExteriorAtom):
        return {"type": "ExteriorAtom", "knot": str(d.knot), "pieces": d.pieces, "outer": d.outer}
    if isinstance(d, SurgeryAtom):
        return {"type": "SurgeryAtom", "knot": str(d.knot), "slope": str(d.slope),
                "jsj_tori": d.jsj_tori}
    if isinstance(d, ConnectedSum):
        return {"type": "ConnectedSum", "summands": [to_json(s) for s in d.summands]}
    if isinstance(d, GraphManifold):
        return {"type": "GraphManifold", "pieces": [to_json(p) for p in d.pieces],
                "jsj_tori": d.jsj_tori}
    raise TypeError(f"not a descriptor: {d!r}")


def from_json(obj: dict) -> ManifoldDescriptor:
    kind = obj.get("type")
    if kind == "LensSpace":
        return LensSpace(obj["p"], obj["q"])
    if kind == "SFSPiece":
        return SFSPiece(tuple(obj["multiplicities"]), obj["boundary_count"])
    if kind == "TorusExterior":
        return TorusExterior(obj["a"], obj["b"])
    if kind == "CableSpace":
        return CableSpace(obj["p"], obj["q"])
    if kind == "ExteriorAtom":
        return ExteriorAtom(parse_knot_expr(obj["knot"]), obj["pieces"], obj["outer"])
    if kind == "SurgeryAtom":
        return SurgeryAtom(parse_knot_expr(obj["knot"]), parse_slope(obj["slope"]), obj["jsj_tori"])
    if kind == "ConnectedSum":
        return ConnectedSum(tuple(from_json(s) for s in obj["summands"]))
    if kind == "GraphManifold":
        return GraphManifold(tuple(from_json(p) for p in obj["pieces"]), obj["jsj_tori"])
    raise InputError(f"unknown descriptor type {kind!r}")


_INT = {"type": "integer"}
_COUNT = {"type": ["integer", "null"], "minimum": 0}

DESCRIPTOR_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$ref": "#/$defs/descriptor",
    "$defs": {
        "descriptor": {
            "oneOf": [
                {"$ref": f"#/$defs/{name}"} for name in (
                    "LensSpace", "SFSPiece", "TorusExterior", "CableSpace",
                    "ExteriorAtom", "SurgeryAtom", "ConnectedSum", "GraphManifold",
                )
            ]
        },
        "LensSpace": {
            "type": "object",
            "properties": {"type": {"const": "LensSpace"}, "p": {"type": "integer", "minimum": 1}, "q": _INT},
            "required": ["type", "p", "q"], "additionalProperties": False,
        },
        "SFSPiece": {
            "type": "object",
            "properties": {
                "type": {"const": "SFSPiece"},
                "multiplicities": {"type": "array", "items": {"type": "integer", "minimum": 2}},
                "boundary_count": {"type": "integer", "minimum": 0},
            },
            "required": ["type", "multiplicities", "boundary_count"], "additionalProperties": False,
        },
        "TorusExterior": {
            "type": "object",
            "properties": {"type": {"const": "TorusExterior"}, "a": _INT, "b": _INT},
            "required": ["type", "a", "b"], "additionalProperties": False,
        },
        "CableSpace": {
            "type": "object",
            "properties": {"type": {"const": "CableSpace"}, "p": _INT, "q": {"type": "integer", "minimum": 2}},
            "required": ["type", "p", "q"], "additionalProperties": False,
        },
        "ExteriorAtom": {
            "type": "object",
            "properties": {
                "type": {"const": "ExteriorAtom"}, "knot": {"type": "string"},
                "pieces": {"type": "integer", "minimum": 1},
                "outer": {"enum": ["hyperbolic", "composing"]},
            },
            "required": ["type", "knot", "pieces", "outer"], "additionalProperties": False,
        },
        "SurgeryAtom": {
            "type": "object",
            "properties": {
                "type": {"const": "SurgeryAtom"}, "knot": {"type": "string"},
                "slope": {"type": "string", "pattern": r"^-?\d+/\d+$"}, "jsj_tori": _COUNT,
            },
            "required": ["type", "knot", "slope", "jsj_tori"], "additionalProperties": False,
        },
        "ConnectedSum": {
            "type": "object",
            "properties": {
                "type": {"const": "ConnectedSum"},
                "summands": {"type": "array", "items": {"$ref": "#/$defs/descriptor"}},
            },
            "required": ["type", "summands"], "additionalProperties": False,
        },
        "GraphManifold": {
            "type": "object",
            "properties": {
                "type": {"const": "GraphManifold"},
                "pieces": {"type": "array", "items": {"$ref": "#/$defs/descriptor"}},
                "jsj_tori": _COUNT,
            },
            "required": ["type", "pieces", "jsj_tori"], "additionalProperties": False,
        },
    },
}


def leaf_exterior(leaf: Leaf) -> ExteriorAtom:
    cls = leaf.declared_class
    if cls.kind == "satellite":
        return ExteriorAtom(leaf, cls.pieces, cls.outer)
    return ExteriorAtom(leaf)
