"""Legendrian fronts, classical invariants and sliceness obstructions.

Fronts are event words read left to right.  Strand positions are numbered
from the bottom (position 1) upward; ``lcusp i`` opens a cusp whose two
branches occupy positions ``i`` and ``i+1``, ``rcusp i`` closes the branches
at ``i`` and ``i+1``, and ``fcross i`` crosses the strands at ``i`` and
``i+1``.  At a front crossing the strand of lesser slope is in front, and a
crossing is positive exactly when both strands run in the same horizontal
direction.

Self-linking of the positive transverse pushoff is reported as
``sl_plus = tb + rot``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd

from .diagram import PDCode
from .errors import (
    DomainError,
    InvalidFront,
    InvalidPosition,
    MultiComponent,
    NotATorusKnot,
    ParseError,
)
from .homfly import MemoCache, homfly

__all__ = [
    "LeftCusp",
    "RightCusp",
    "FrontCross",
    "FrontDiagram",
    "ClassicalInvariants",
    "ObstructionReport",
    "front_parse",
    "front_format",
    "front_invariants",
    "front_unknot",
    "front_connected_sum",
    "front_stabilize",
    "front_double_stabilize",
    "torus_tb",
    "tb_generalized_square",
    "sl_sum_formula",
    "mfw_sl_sum_bound",
    "obstruct_kkbar",
    "obstruct_chantraine",
    "obstruct_generalized_square",
]


@dataclass(frozen=True)
class LeftCusp:
    i: int


@dataclass(frozen=True)
class RightCusp:
    i: int


@dataclass(frozen=True)
class FrontCross:
    i: int


_KEYWORDS = {"lcusp": LeftCusp, "rcusp": RightCusp, "fcross": FrontCross}
_NAMES = {LeftCusp: "lcusp", RightCusp: "rcusp", FrontCross: "fcross"}


@dataclass(frozen=True)
class _Trace:
    components: tuple  # per component: list of (column, position, direction)
    directions: dict  # (column, position) -> +1 rightward / -1 leftward
    first_cusp: tuple  # per component: event index of its first left cusp


@dataclass(frozen=True)
class FrontDiagram:
    """A front as an event word.

    ``orientation`` holds one sign per component (components ordered by
    their first left cusp): +1 means the lower branch of that cusp runs
    rightward.  Missing entries default to +1.
    """

    events: tuple
    orientation: tuple = ()
    _trace: _Trace = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "orientation", tuple(self.orientation))
        for s in self.orientation:
            if s not in (1, -1):
                raise InvalidFront(f"orientation signs must be +1 or -1, got {s}")
        object.__setattr__(self, "_trace", _trace(self.events, self.orientation))
        extra = len(self.orientation) - len(self._trace.components)
        if extra > 0:
            raise InvalidFront(
                f"{len(self.orientation)} orientation signs for "
                f"{len(self._trace.components)} components"
            )
        padded = self.orientation + (1,) * -extra
        object.__setattr__(self, "orientation", padded)

    @property
    def components(self) -> int:
        return len(self._trace.components)

    def widths(self):
        """Strand count in each column (``len(events) + 1`` entries)."""
        return _widths(self.events)

    def direction(self, column: int, position: int) -> int:
        return self._trace.directions[(column, position)]

    @classmethod
    def parse(cls, text: str) -> "FrontDiagram":
        return front_parse(text)

    def __str__(self):
        return front_format(self)


def _widths(events):
    count = 0
    out = [0]
    for k, ev in enumerate(events):
        if isinstance(ev, LeftCusp):
            if not 1 <= ev.i <= count + 1:
                raise InvalidFront(f"event {k + 1}: lcusp {ev.i} with {count} strands")
            count += 2
        elif isinstance(ev, RightCusp):
            if not 1 <= ev.i < count:
                raise InvalidFront(f"event {k + 1}: rcusp {ev.i} with {count} strands")
            count -= 2
        elif isinstance(ev, FrontCross):
            if not 1 <= ev.i < count:
                raise InvalidFront(f"event {k + 1}: fcross {ev.i} with {count} strands")
        else:
            raise InvalidFront(f"event {k + 1}: unknown event {ev!r}")
        out.append(count)
    if count:
        raise InvalidFront(f"front ends with {count} open strands")
    return out


def _step(ev, pos):
    """Follow a segment at ``pos`` rightward through the event ``ev``.

    Returns ``("seg", pos')`` for the segment it continues into, or
    ``("cusp", other)`` when it is absorbed by a right cusp together with the
    strand at position ``other`` of the same column.
    """
    i = ev.i
    if isinstance(ev, LeftCusp):
        return ("seg", pos + 2 if pos >= i else pos)
    if isinstance(ev, RightCusp):
        if pos == i:
            return ("cusp", i + 1)
        if pos == i + 1:
            return ("cusp", i)
        return ("seg", pos - 2 if pos > i + 1 else pos)
    if pos == i:
        return ("seg", i + 1)
    if pos == i + 1:
        return ("seg", i)
    return ("seg", pos)


def _back(ev, pos):
    """Follow a segment at ``pos`` leftward through the event ``ev``."""
    i = ev.i
    if isinstance(ev, LeftCusp):
        if pos == i:
            return ("cusp", i + 1)
        if pos == i + 1:
            return ("cusp", i)
        return ("seg", pos - 2 if pos > i + 1 else pos)
    if isinstance(ev, RightCusp):
        return ("seg", pos + 2 if pos >= i else pos)
    if pos == i:
        return ("seg", i + 1)
    if pos == i + 1:
        return ("seg", i)
    return ("seg", pos)


def _trace(events, orientation):
    widths = _widths(events)
    directions = {}
    components = []
    first_cusp = []
    for k, ev in enumerate(events):
        if not isinstance(ev, LeftCusp) or (k + 1, ev.i) in directions:
            continue
        sign = orientation[len(components)] if len(components) < len(orientation) else 1
        path = []
        # A leftward lower branch is the same loop entered rightward on the
        # upper branch.
        col, pos, d = k + 1, (ev.i if sign > 0 else ev.i + 1), 1
        start = (col, pos, d)
        while True:
            directions[(col, pos)] = d
            path.append((col, pos, d))
            if d > 0:
                kind, nxt = _step(events[col], pos)
                if kind == "seg":
                    col, pos = col + 1, nxt
                else:
                    pos, d = nxt, -1
            else:
                kind, nxt = _back(events[col - 1], pos)
                if kind == "seg":
                    col, pos = col - 1, nxt
                else:
                    pos, d = nxt, 1
            if (col, pos, d) == start:
                break
        components.append(tuple(path))
        first_cusp.append(k)
    assert sum(widths) == len(directions), "front trace missed segments"
    return _Trace(tuple(components), directions, tuple(first_cusp))


def front_parse(text: str) -> FrontDiagram:
    """Parse ``width 0; lcusp i; fcross i; rcusp i; ...`` with optional ``orient`` signs."""
    events = []
    orientation = ()
    seen_width = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for stmt in line.split(";"):
            words = stmt.split()
            if not words:
                continue
            head = words[0]
            if head == "width":
                if seen_width or events or len(words) != 2 or words[1] != "0":
                    raise ParseError(f"bad width statement {stmt.strip()!r}", line=lineno,
                                     expected="'width 0' before any event")
                seen_width = True
            elif head in _KEYWORDS:
                if len(words) != 2 or not re.fullmatch(r"\d+", words[1]):
                    raise ParseError(f"bad {head} statement {stmt.strip()!r}", line=lineno,
                                     expected=f"{head} <positive integer>")
                events.append(_KEYWORDS[head](int(words[1])))
            elif head == "orient":
                if len(words) < 2 or any(w not in "+-" or len(w) != 1 for w in words[1:]):
                    raise ParseError(f"bad orient statement {stmt.strip()!r}", line=lineno,
                                     expected="orient followed by + or - signs")
                orientation = tuple(1 if w == "+" else -1 for w in words[1:])
            else:
                raise ParseError(f"unknown statement {head!r}", line=lineno,
                                 expected="width, lcusp, rcusp, fcross or orient")
    if not events:
        raise InvalidFront("front has no events")
    return FrontDiagram(tuple(events), orientation)


def front_format(f: FrontDiagram) -> str:
    lines = ["width 0"]
    lines += [f"{_NAMES[type(ev)]} {ev.i}" for ev in f.events]
    if any(s < 0 for s in f.orientation):
        lines.append("orient " + " ".join("+" if s > 0 else "-" for s in f.orientation))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ClassicalInvariants:
    tb: int
    rot: int

    @property
    def sl_plus(self) -> int:
        return self.tb + self.rot

    def format(self, convention: str = "plus") -> str:
        """``plus`` reports ``sl = tb + rot``; ``minus`` reports ``tb - rot``."""
        if convention == "plus":
            return f"tb={self.tb} rot={self.rot} sl=tb+rot={self.sl_plus}"
        if convention == "minus":
            return f"tb={self.tb} rot={self.rot} sl=tb-rot={self.tb - self.rot}"
        raise ValueError(f"unknown convention {convention!r}")

    def __str__(self):
        return self.format()


def _writhe_and_cusps(f: FrontDiagram):
    writhe = 0
    right = 0
    down = up = 0
    dirs = f._trace.directions
    for k, ev in enumerate(f.events):
        i = ev.i
        if isinstance(ev, FrontCross):
            writhe += 1 if dirs[(k, i)] == dirs[(k, i + 1)] else -1
        elif isinstance(ev, RightCusp):
            right += 1
            # Arriving on the lower branch means climbing over the cusp.
            if dirs[(k, i)] > 0:
                up += 1
            else:
                down += 1
        else:
            if dirs[(k + 1, i)] > 0:
                down += 1
            else:
                up += 1
    return writhe, right, down, up


def front_invariants(f: FrontDiagram) -> ClassicalInvariants:
    """``tb = writhe - #right cusps`` and ``rot = (down cusps - up cusps) / 2``."""
    if f.components != 1:
        raise MultiComponent(f"front has {f.components} components")
    writhe, right, down, up = _writhe_and_cusps(f)
    return ClassicalInvariants(writhe - right, (down - up) // 2)


def front_unknot() -> FrontDiagram:
    return FrontDiagram((LeftCusp(1), RightCusp(1)))


def _flip_leading_cusp(b: FrontDiagram) -> FrontDiagram:
    # A type I Legendrian move at the first cusp: same knot, same tb and rot,
    # but the lower branch leaving the cusp region runs the other way.
    events = (LeftCusp(1), LeftCusp(3), FrontCross(2), RightCusp(1)) + b.events[1:]
    return FrontDiagram(events, (-b.orientation[0] if b.orientation else -1,) + b.orientation[1:])


def front_connected_sum(a: FrontDiagram, b: FrontDiagram) -> FrontDiagram:
    """Splice ``a``'s last right cusp into ``b``'s first left cusp."""
    for name, f in (("first", a), ("second", b)):
        if f.components != 1:
            raise MultiComponent(f"{name} summand has {f.components} components")
    if not (isinstance(a.events[-1], RightCusp) and isinstance(b.events[0], LeftCusp)):
        raise InvalidFront("summands must end and begin with a cusp")
    col = len(a.events) - 1
    want = a.direction(col, 1)
    if b.direction(1, 1) != want:
        b = _flip_leading_cusp(b)
        assert b.direction(1, 1) == want
    return FrontDiagram(a.events[:-1] + b.events[1:], a.orientation[:1])


def _insert_zigzag(f: FrontDiagram, position: int, at: int, downward: bool) -> FrontDiagram:
    pair = (LeftCusp(position), RightCusp(position + 1)) if downward else (
        LeftCusp(position + 1), RightCusp(position))
    events = f.events[:at] + pair + f.events[at:]
    return FrontDiagram(events, f.orientation)


def front_stabilize(f: FrontDiagram, sign: int, position: int = 1, at: int = 1) -> FrontDiagram:
    """Add one zigzag on strand ``position`` of column ``at``; rot changes by ``sign``.

    tb drops by one either way.
    """
    if sign not in (1, -1):
        raise ValueError("stabilization sign must be +1 or -1")
    widths = f.widths()
    if not 1 <= at < len(widths) or not 1 <= position <= widths[at]:
        raise InvalidPosition(f"no strand {position} at column {at} (column widths {widths})")
    d = f.direction(at, position)
    # A descending zigzag raises rot on a rightward strand.
    return _insert_zigzag(f, position, at, downward=(d == sign))


def front_double_stabilize(f: FrontDiagram, position: int = 1, at: int = 1) -> FrontDiagram:
    """One positive and one negative zigzag on the same strand: tb - 2, rot unchanged."""
    if f.components != 1:
        raise MultiComponent(f"front has {f.components} components")
    once = front_stabilize(f, 1, position, at)
    return front_stabilize(once, -1, position, at)


def torus_tb(p: int, q: int) -> int:
    """Maximal tb of the torus knot ``T(p, q)``; ``p < 0`` is the mirror."""
    if q < 2 or abs(p) < 2 or gcd(abs(p), q) != 1:
        raise NotATorusKnot(f"T({p},{q}) is not a nontrivial torus knot")
    if p > 0:
        return p * q - p - q
    return -abs(p) * q


def tb_generalized_square(p: int, q: int) -> int:
    """Maximal tb of ``T(p,q) # mirror(T(p,q))``, which equals ``-p - q + 1``."""
    if not (p > q > 1 and gcd(p, q) == 1):
        raise DomainError(f"need p > q > 1 coprime, got ({p}, {q})")
    value = torus_tb(p, q) + torus_tb(-p, q) + 1
    if value >= -1:
        raise AssertionError(f"TB(Q_{p},{q}) = {value} is not below -1")
    return value


def sl_sum_formula(sl1: int, sl2: int) -> int:
    return sl1 + sl2 + 1


def mfw_sl_sum_bound(P) -> int:
    """Upper bound ``-span_v(P) - 2`` for ``SL(K) + SL(mirror K)``."""
    return -P.span_v() - 2


@dataclass(frozen=True)
class ObstructionReport:
    verdicts: tuple = ()

    def __add__(self, other):
        return ObstructionReport(self.verdicts + other.verdicts)

    @property
    def obstructed(self) -> bool:
        return any(v == "obstructed" for _, v, _ in self.verdicts)

    @property
    def inapplicable_only(self) -> bool:
        return bool(self.verdicts) and all(v == "inapplicable" for _, v, _ in self.verdicts)

    def verdict(self, test: str) -> str:
        for name, v, _ in self.verdicts:
            if name == test:
                return v
        raise KeyError(test)

    def lines(self):
        return [f"{name} {v} :: {ev}" for name, v, ev in self.verdicts]

    def __str__(self):
        return "\n".join(self.lines())


def obstruct_kkbar(d: PDCode, cache: MemoCache | None = None) -> ObstructionReport:
    """Obstruct Lagrangian sliceness of ``K # mirror(K)`` from the HOMFLYPT polynomial.

    ``obstructed`` iff ``P != 1``.  A trivial polynomial yields ``consistent``,
    which carries no conclusion.
    """
    if d.components != 1:
        raise MultiComponent(f"obstruct_kkbar needs a knot, got {d.components} components")
    P = homfly(d, cache)
    if P.is_one():
        return ObstructionReport((("kkbar", "consistent", "P=1"),))
    span = P.span_v()
    bound = mfw_sl_sum_bound(P)
    return ObstructionReport(
        (("kkbar", "obstructed", f"span_v={span}, bound={bound}, requires -1"),)
    )


def obstruct_chantraine(tb_witness: int) -> ObstructionReport:
    """A Legendrian representative with ``tb >= 0`` rules out a Lagrangian disk."""
    if tb_witness >= 0:
        return ObstructionReport(
            (("chantraine", "obstructed", f"tb_witness={tb_witness} >= 0, TB must be -1"),)
        )
    return ObstructionReport(
        (("chantraine", "inapplicable", f"tb_witness={tb_witness} < 0 is only a lower bound"),)
    )


def obstruct_generalized_square(p: int, q: int) -> ObstructionReport:
    value = tb_generalized_square(p, q)
    return ObstructionReport((("generalized_square", "obstructed", f"TB(Q)={value} < -1"),))
