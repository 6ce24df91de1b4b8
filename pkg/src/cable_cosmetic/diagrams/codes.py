"""Planar-diagram codes and braid words.

PD convention: each crossing ``X(a, b, c, d)`` lists its four arc labels
counterclockwise starting from the incoming under-strand, so the under
strand runs a -> c. The over strand's direction is not encoded locally;
it is recovered by walking the knot (positions 0 <-> 2 and 1 <-> 3 pass
straight through). A crossing whose over strand enters at position 3 is
positive, entering at position 1 is negative.

Braid convention: letter ``i > 0`` is sigma_i, where the strand moving
from position i to i + 1 passes over; its closure crossing is positive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import MultiComponentError, ParseError

__all__ = [
    "PDCode",
    "BraidWord",
    "parse_pd",
    "parse_braid",
    "braid_to_pd",
    "writhe",
]


def _walk(crossings: tuple[tuple[int, int, int, int], ...]):
    """Trace the diagram from the first crossing's incoming under-arc.

    Returns ``(over_entry, visited)`` where ``over_entry[i]`` is the
    position (1 or 3) at which the over strand enters crossing i, or
    None if the walk never passed over it.
    """
    where: dict[int, list[tuple[int, int]]] = {}
    for ci, x in enumerate(crossings):
        for pos, label in enumerate(x):
            where.setdefault(label, []).append((ci, pos))
    over_entry: list[int | None] = [None] * len(crossings)
    visited = 0
    start = (0, 0)
    ci, pos = start
    while True:
        if pos == 2:
            raise ParseError(f"under strand of crossing {ci + 1} is traversed backwards")
        if pos in (1, 3):
            if over_entry[ci] is not None:
                raise ParseError(f"over strand of crossing {ci + 1} traversed twice")
            over_entry[ci] = pos
        visited += 2
        out = (pos + 2) % 4
        label = crossings[ci][out]
        a, b = where[label]
        ci, pos = b if a == (ci, out) else a
        if (ci, pos) == start:
            break
        if visited > 4 * len(crossings):
            raise ParseError("walk did not close up")
    return over_entry, visited


@dataclass(frozen=True)
class PDCode:
    """A validated, single-component planar diagram."""

    crossings: tuple[tuple[int, int, int, int], ...]
    signs: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        xs = tuple(tuple(int(v) for v in x) for x in self.crossings)
        object.__setattr__(self, "crossings", xs)
        counts: dict[int, int] = {}
        for x in xs:
            if len(x) != 4:
                raise ParseError(f"crossing {x} does not have four arcs")
            for label in x:
                if label <= 0:
                    raise ParseError(f"arc label {label} is not a positive integer")
                counts[label] = counts.get(label, 0) + 1
        bad = sorted(label for label, k in counts.items() if k != 2)
        if bad:
            raise ParseError(f"arc labels {bad} do not appear exactly twice")
        if not xs:
            object.__setattr__(self, "signs", ())
            return
        over_entry, visited = _walk(xs)
        if visited != 4 * len(xs):
            raise MultiComponentError("diagram has more than one component")
        object.__setattr__(self, "signs", tuple(1 if e == 3 else -1 for e in over_entry))

    def __len__(self) -> int:
        return len(self.crossings)

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    def arcs(self) -> list[int]:
        return sorted({label for x in self.crossings for label in x})

    def mirror(self) -> PDCode:
        """Change every crossing (the mirror image)."""
        out = []
        for (a, b, c, d), s in zip(self.crossings, self.signs):
            # the old over strand becomes the new under strand
            out.append((d, a, b, c) if s > 0 else (b, c, d, a))
        return PDCode(tuple(out))

    def __str__(self) -> str:
        body = ", ".join("X({},{},{},{})".format(*x) for x in self.crossings)
        return f"PD[{body}]"


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        letters = tuple(int(i) for i in self.letters)
        object.__setattr__(self, "letters", letters)
        if self.strands < 1:
            raise ParseError("a braid needs at least one strand")
        for i in letters:
            if i == 0 or abs(i) >= self.strands:
                raise ParseError(f"generator {i} invalid on {self.strands} strands")

    def permutation(self) -> list[int]:
        """perm[j] = final position of the strand starting at position j (0-based)."""
        pos = list(range(self.strands))  # pos[j]: strand currently at position j
        for i in self.letters:
            k = abs(i) - 1
            pos[k], pos[k + 1] = pos[k + 1], pos[k]
        perm = [0] * self.strands
        for final, strand in enumerate(pos):
            perm[strand] = final
        return perm

    def num_components(self) -> int:
        perm = self.permutation()
        seen = [False] * self.strands
        cycles = 0
        for j in range(self.strands):
            if not seen[j]:
                cycles += 1
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
        return cycles

    def is_knot(self) -> bool:
        return self.num_components() == 1

    def writhe(self) -> int:
        return sum(1 if i > 0 else -1 for i in self.letters)

    def mirror(self) -> BraidWord:
        return BraidWord(self.strands, tuple(-i for i in self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return f"BR[{self.strands}; {','.join(str(i) for i in self.letters)}]"


_X_RE = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_pd(text: str) -> PDCode:
    t = text.strip()
    if not (t.startswith("PD[") and t.endswith("]")):
        raise ParseError(f"PD code must look like PD[X(a,b,c,d), ...]: {text!r}")
    body = t[3:-1].strip()
    crossings = []
    pos = 0
    while pos < len(body):
        m = _X_RE.match(body, pos)
        if m is None:
            raise ParseError(f"bad crossing near {body[pos:pos + 20]!r}")
        crossings.append(tuple(int(g) for g in m.groups()))
        pos = m.end()
        rest = body[pos:].lstrip()
        if rest.startswith(","):
            rest = rest[1:].lstrip()
            if not rest:
                raise ParseError("trailing comma in PD code")
        pos = len(body) - len(rest)
    return PDCode(tuple(crossings))


_BR_RE = re.compile(r"^BR\[\s*(\d+)\s*(?:;\s*(.*?))?\s*\]$", re.S)


def parse_braid(text: str, require_knot: bool = True) -> BraidWord:
    m = _BR_RE.match(text.strip())
    if m is None:
        raise ParseError(f"braid must look like BR[s; i1,i2,...]: {text!r}")
    strands = int(m.group(1))
    body = (m.group(2) or "").strip()
    try:
        letters = tuple(int(tok) for tok in body.split(",")) if body else ()
    except ValueError:
        raise ParseError(f"bad generator list {body!r}") from None
    braid = BraidWord(strands, letters)
    if require_knot and not braid.is_knot():
        raise MultiComponentError(
            f"closure of {braid} has {braid.num_components()} components"
        )
    return braid


def braid_to_pd(braid: BraidWord) -> PDCode:
    """PD code of the braid closure (strands oriented upward)."""
    if not braid.is_knot():
        raise MultiComponentError(f"closure of {braid} is not a knot")
    s = braid.strands
    current = list(range(1, s + 1))
    next_label = s + 1
    raw = []
    for i in braid.letters:
        k = abs(i) - 1
        x, y = current[k], current[k + 1]
        left_out, right_out = next_label, next_label + 1  # new arcs at positions k, k+1
        next_label += 2
        if i > 0:
            # left strand x goes over to position k+1; under strand y -> position k
            raw.append((y, right_out, left_out, x))
        else:
            # right strand y goes over to position k; under strand x -> position k+1
            raw.append((x, y, right_out, left_out))
        current[k], current[k + 1] = left_out, right_out
    close = {current[j]: j + 1 for j in range(s)}
    glued = [tuple(close.get(a, a) for a in x) for x in raw]
    order: dict[int, int] = {}
    for x in glued:
        for a in x:
            order.setdefault(a, len(order) + 1)
    return PDCode(tuple(tuple(order[a] for a in x) for x in glued))


def writhe(d: PDCode | BraidWord) -> int:
    if isinstance(d, BraidWord):
        return d.writhe()
    return sum(d.signs)


def pd_from_sequence(crossings: Sequence[Sequence[int]]) -> PDCode:
    return PDCode(tuple(tuple(x) for x in crossings))
