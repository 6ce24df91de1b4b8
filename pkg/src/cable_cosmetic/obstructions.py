"""Cosmetic-surgery obstructions, the cabling constant fit, and table scans.

:func:`obstruction_report` runs every criterion in a fixed order and keeps
going after the first exclusion, so a report always shows the whole
picture. :func:`fit_cabling_constants` checks, with exact rationals, that
the order-2 and order-3 invariants of the (+-1, q)-cable are affine in
those of the companion.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

from .classifier import cosmetic_pair_verdict
from .diagrams.jones import JONES_CONVENTION, max_crossings_default
from .errors import (
    InputError,
    InvalidQueryError,
    MissingAttributeError,
    ModelViolationError,
    ResourceLimitError,
    UnderdeterminedFitError,
)
from .invariants import Unavailable, braid_for, delta2, jones_of
from .knots import Cable, KnotExpr, Leaf, Torus, Unknot, simplify
from .slopes import Slope, slope_negate, slope_new
from .tables import KnotTable

__all__ = [
    "Criterion",
    "CheckOutcome",
    "Verdict",
    "Check",
    "ObstructionReport",
    "Diagnostic",
    "FitRow",
    "FitResult",
    "congruence_holds",
    "obstruction_report",
    "fit_cabling_constants",
    "scan",
    "grid_slopes",
]

CONGRUENCE_CONVENTION = "n^2 = -1 is tested modulo |m|; m = +-1 always satisfies it"


class Criterion(str, enum.Enum):
    KNOT_COMPLEMENT = "KnotComplement"
    NI_WU_OPPOSITE = "NiWuOpposite"
    NI_WU_CONGRUENCE = "NiWuCongruence"
    NI_WU_TAU = "NiWuTau"
    BOYER_LINES = "BoyerLines"
    ICHIHARA_WU = "IchiharaWu"
    TORUS_KNOT_THEOREM = "TorusKnotTheorem"
    CABLE_MAIN_THEOREM = "CableMainTheorem"


class CheckOutcome(str, enum.Enum):
    EXCLUDES = "Excludes"
    PASSES = "Passes"
    NOT_APPLICABLE = "NotApplicable"


class Verdict(str, enum.Enum):
    EXCLUDED = "CosmeticExcluded"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class Check:
    criterion: Criterion
    outcome: CheckOutcome
    detail: str
    evidence: dict | None = None

    def to_json(self) -> dict:
        out = {"criterion": self.criterion.value, "outcome": self.outcome.value, "detail": self.detail}
        if self.evidence is not None:
            out["evidence"] = self.evidence
        return out


@dataclass(frozen=True)
class ObstructionReport:
    knot: KnotExpr
    r: Slope
    s: Slope
    checks: tuple[Check, ...]
    metadata: dict = field(default_factory=dict, compare=False)

    @property
    def verdict(self) -> Verdict:
        if any(c.outcome is CheckOutcome.EXCLUDES for c in self.checks):
            return Verdict.EXCLUDED
        return Verdict.UNRESOLVED

    def check(self, criterion: Criterion) -> Check:
        return next(c for c in self.checks if c.criterion is criterion)

    def to_json(self) -> dict:
        return {
            "record": "report",
            "knot": str(self.knot),
            "r": str(self.r),
            "s": str(self.s),
            "verdict": self.verdict.value,
            "checks": [c.to_json() for c in self.checks],
            "metadata": self.metadata,
        }

    @staticmethod
    def csv_header() -> list[str]:
        return ["knot", "r", "s", "verdict"] + [c.value for c in Criterion] + ["error"]

    def csv_row(self) -> list[str]:
        outcomes = {c.criterion: c.outcome.value for c in self.checks}
        return [str(self.knot), str(self.r), str(self.s), self.verdict.value] + [
            outcomes.get(c, "") for c in Criterion
        ] + [""]

    def to_text(self) -> str:
        lines = [f"{self.knot}  r={self.r}  s={self.s}  verdict={self.verdict.value}"]
        for c in self.checks:
            lines.append(f"  {c.criterion.value:<17} {c.outcome.value:<13} {c.detail}")
        return "\n".join(lines)


@dataclass(frozen=True)
class Diagnostic:
    """A table row or query that could not be processed."""

    name: str
    error: str
    r: Slope | None = None

    def to_json(self) -> dict:
        out = {"record": "diagnostic", "name": self.name, "error": self.error}
        if self.r is not None:
            out["r"] = str(self.r)
        return out

    def csv_row(self) -> list[str]:
        r = "" if self.r is None else str(self.r)
        return [self.name, r, "", ""] + [""] * len(Criterion) + [self.error]

    def to_text(self) -> str:
        return f"{self.name}  error: {self.error}"


def congruence_holds(m: int, n: int) -> bool:
    """Whether n^2 + 1 is divisible by |m| (with m = 0 meaning equality)."""
    if abs(m) == 1:
        return True
    if m == 0:
        return n * n + 1 == 0
    return (n * n + 1) % abs(m) == 0


def _tau_of(k: KnotExpr, tau: int | None) -> int | None:
    if tau is not None:
        return tau
    k = simplify(k)
    if isinstance(k, Leaf):
        return k.tau
    return None


def obstruction_report(
    k: KnotExpr,
    r: Slope,
    s: Slope | None = None,
    tau: int | None = None,
    max_crossings: int | None = None,
) -> ObstructionReport:
    """Run every obstruction for the pair (r, s); ``s`` defaults to -r."""
    if s is None:
        s = slope_negate(r)
    if r == s:
        raise InvalidQueryError(f"the two slopes are equal ({r})")
    cap = max_crossings_default() if max_crossings is None else max_crossings
    meta = {
        "jones_convention": JONES_CONVENTION,
        "congruence_convention": CONGRUENCE_CONVENTION,
        "max_crossings": cap,
    }
    k = simplify(k)
    C, O = Criterion, CheckOutcome
    if isinstance(k, Unknot):
        why = "criteria concern non-trivial knots; surgeries on the unknot are lens spaces"
        checks = tuple(Check(c, O.NOT_APPLICABLE, why) for c in Criterion)
        return ObstructionReport(k, r, s, checks, meta)

    checks = []

    if r.is_infinite or s.is_infinite:
        checks.append(Check(C.KNOT_COMPLEMENT, O.EXCLUDES, "a 1/0 filling gives S^3, which determines the knot"))
    else:
        checks.append(Check(C.KNOT_COMPLEMENT, O.PASSES, "both slopes are finite"))

    if s != slope_negate(r):
        checks.append(Check(C.NI_WU_OPPOSITE, O.EXCLUDES, f"{s} is not -({r})"))
    else:
        checks.append(Check(C.NI_WU_OPPOSITE, O.PASSES, "s = -r"))

    if r.is_infinite:
        checks.append(Check(C.NI_WU_CONGRUENCE, O.NOT_APPLICABLE, "r = 1/0"))
    elif congruence_holds(r.m, r.n):
        checks.append(Check(C.NI_WU_CONGRUENCE, O.PASSES, f"{r.n}^2 = -1 mod {abs(r.m)}"))
    else:
        checks.append(Check(C.NI_WU_CONGRUENCE, O.EXCLUDES, f"{r.n}^2 != -1 mod {abs(r.m)}"))

    t = _tau_of(k, tau)
    if t is None:
        checks.append(Check(C.NI_WU_TAU, O.NOT_APPLICABLE, "tau not supplied"))
    elif t != 0:
        checks.append(Check(C.NI_WU_TAU, O.EXCLUDES, f"tau = {t}"))
    else:
        checks.append(Check(C.NI_WU_TAU, O.PASSES, "tau = 0"))

    try:
        d2 = delta2(k)
    except InputError as exc:
        checks.append(Check(C.BOYER_LINES, O.NOT_APPLICABLE, str(exc)))
    else:
        outcome = O.EXCLUDES if d2 != 0 else O.PASSES
        checks.append(Check(C.BOYER_LINES, outcome, f"Delta''(1) = {d2}"))

    v = jones_of(k, cap)
    if isinstance(v, Unavailable):
        checks.append(Check(C.ICHIHARA_WU, O.NOT_APPLICABLE, v.reason))
    else:
        v3 = v.derivative_at_one(3)
        outcome = O.EXCLUDES if v3 != 0 else O.PASSES
        checks.append(Check(C.ICHIHARA_WU, outcome, f"V'''(1) = {v3}"))

    if isinstance(k, Torus):
        checks.append(Check(C.TORUS_KNOT_THEOREM, O.EXCLUDES, f"{k} is a torus knot"))
    else:
        checks.append(Check(C.TORUS_KNOT_THEOREM, O.NOT_APPLICABLE, "not a torus knot"))

    if isinstance(k, Cable):
        evidence = None
        detail = f"{k} is a cable with q = {k.q}"
        if s == slope_negate(r) and not r.is_infinite:
            try:
                evidence = cosmetic_pair_verdict(k, r).to_json()
            except InputError as exc:
                detail += f"; no constructive evidence ({exc})"
        checks.append(Check(C.CABLE_MAIN_THEOREM, O.EXCLUDES, detail, evidence))
    else:
        checks.append(Check(C.CABLE_MAIN_THEOREM, O.NOT_APPLICABLE, "not a cable knot"))

    return ObstructionReport(k, r, s, tuple(checks), meta)


# -- constant fit ------------------------------------------------------------


@dataclass(frozen=True)
class FitRow:
    knot: str
    delta2: int
    cable_delta2: int
    v3: int
    cable_v3: int

    def to_json(self) -> dict:
        return {
            "knot": self.knot,
            "delta2": self.delta2,
            "cable_delta2": self.cable_delta2,
            "v3": self.v3,
            "cable_v3": self.cable_v3,
        }


@dataclass(frozen=True)
class FitResult:
    """Exact constants with cable Delta'' = a*Delta'' + b and
    cable V''' = c*V''' + d*Delta'' + e."""

    q: int
    epsilon_sign: int
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction
    residual: Fraction
    rows: tuple[FitRow, ...]

    def to_json(self) -> dict:
        out = {"record": "fit", "q": self.q, "epsilon_sign": self.epsilon_sign}
        for key in ("a", "b", "c", "d", "e", "residual"):
            out[key] = str(getattr(self, key))
        out["rows"] = [row.to_json() for row in self.rows]
        return out


def _solve_least_squares(design: list[list[int]], target: list[int]) -> tuple[list[Fraction], Fraction]:
    """Exact least squares via the normal equations; raises if singular."""
    cols = len(design[0])
    normal = [
        [Fraction(sum(row[i] * row[j] for row in design)) for j in range(cols)]
        + [Fraction(sum(row[i] * y for row, y in zip(design, target)))]
        for i in range(cols)
    ]
    for col in range(cols):
        pivot = next((r for r in range(col, cols) if normal[r][col] != 0), None)
        if pivot is None:
            raise UnderdeterminedFitError("sample does not determine the fit; add more knots")
        normal[col], normal[pivot] = normal[pivot], normal[col]
        for r in range(cols):
            if r != col and normal[r][col] != 0:
                factor = normal[r][col] / normal[col][col]
                normal[r] = [x - factor * y for x, y in zip(normal[r], normal[col])]
    solution = [normal[i][cols] / normal[i][i] for i in range(cols)]
    residual = sum(
        (sum(c * x for c, x in zip(row, solution)) - y) ** 2 for row, y in zip(design, target)
    )
    return solution, Fraction(residual)


def _fit_row(k: KnotExpr, q: int, sign: int, cap: int) -> FitRow:
    k = simplify(k)
    b = braid_for(k)
    if b is None:
        raise MissingAttributeError(f"{k} needs a braid diagram to be cabled")
    cable = Cable(sign, q, k) if not isinstance(k, Unknot) else Unknot()
    values = []
    for knot in (k, cable):
        v = jones_of(knot, cap)
        if isinstance(v, Unavailable):
            if v.crossings is not None:
                raise ResourceLimitError(f"{knot}: {v.reason}", v.crossings, cap)
            raise MissingAttributeError(f"{knot}: {v.reason}")
        values.append((delta2(knot), v.derivative_at_one(3)))
    (d_k, v_k), (d_c, v_c) = values
    return FitRow(str(k), d_k, d_c, v_k, v_c)


def fit_cabling_constants(
    q: int,
    sample: Sequence[KnotExpr],
    epsilon_sign: int = 1,
    max_crossings: int | None = None,
) -> FitResult:
    """Fit the affine cabling model for C(epsilon, q; K) over ``sample``.

    The unknot is always added. At least four distinct knots (counting the
    unknot) are needed so the three-parameter fit is overdetermined.
    """
    if q < 2:
        raise InputError(f"q must be at least 2, got {q}")
    if epsilon_sign not in (1, -1):
        raise InputError(f"epsilon_sign must be +1 or -1, got {epsilon_sign}")
    cap = max_crossings_default() if max_crossings is None else max_crossings
    knots: list[KnotExpr] = [Unknot()]
    for k in sample:
        k = simplify(k)
        if k not in knots:
            knots.append(k)
    if len(knots) < 4:
        raise UnderdeterminedFitError(
            f"need at least 4 distinct sample knots including the unknot, got {len(knots)}"
        )
    rows = tuple(_fit_row(k, q, epsilon_sign, cap) for k in knots)
    (a, b), res1 = _solve_least_squares([[r.delta2, 1] for r in rows], [r.cable_delta2 for r in rows])
    (c, d, e), res2 = _solve_least_squares(
        [[r.v3, r.delta2, 1] for r in rows], [r.cable_v3 for r in rows]
    )
    result = FitResult(q, epsilon_sign, a, b, c, d, e, res1 + res2, rows)
    if result.residual != 0:
        raise ModelViolationError(f"affine cabling model leaves residual {result.residual}", result)
    return result


# -- table scans -------------------------------------------------------------


def grid_slopes(max_m: int, max_n: int) -> list[Slope]:
    """Reduced slopes m/n with 1 <= m <= max_m and 1 <= n <= max_n, m-major."""
    if max_m < 1 or max_n < 1:
        raise InputError(f"grid bounds must be positive, got ({max_m}, {max_n})")
    return [slope_new(m, n) for m in range(1, max_m + 1) for n in range(1, max_n + 1) if gcd(m, n) == 1]


def scan(
    table: KnotTable,
    grid: tuple[int, int],
    max_crossings: int | None = None,
) -> Iterator[ObstructionReport | Diagnostic]:
    """Reports for (r, -r) over the grid for every table row, in table order."""
    slopes = grid_slopes(*grid)
    for entry in table:
        if not entry.ok:
            yield Diagnostic(entry.name, entry.error)
            continue
        for r in slopes:
            try:
                yield obstruction_report(entry.knot, r, None, entry.tau, max_crossings)
            except InputError as exc:
                yield Diagnostic(entry.name, str(exc), r)
