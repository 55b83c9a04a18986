"""Dowker-Thistlethwaite codes: parsing, validation, knot realization, extraction.

An entry ``e`` paired with odd label ``2k-1`` is negative when the even pass
``|e|`` is an over-crossing.  A signed DT code fixes a prime knot only up to
reflection of the projection plane (which mirrors the knot), so realization
fixes chirality by convention: the crossing containing label 1 gets PD sign
+1 when its entry is positive and -1 when it is negative.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import networkx as nx

from .diagram import Crossing, PDCode
from .errors import MultiComponent, NonRealizable, ParseError

__all__ = ["DTCode", "dt_parse", "dt_validate", "dt_realize_knot", "pd_to_dt", "pd_dt_codes"]


@dataclass(frozen=True)
class DTCode:
    tuples: tuple

    def __post_init__(self):
        object.__setattr__(self, "tuples", tuple(tuple(int(e) for e in t) for t in self.tuples))

    @property
    def crossings(self) -> int:
        return sum(len(t) for t in self.tuples)

    @property
    def component_sizes(self):
        return tuple(len(t) for t in self.tuples)

    def __str__(self):
        return "[" + ",".join("(" + ",".join(map(str, t)) + ")" for t in self.tuples) + "]"


_TOKEN = re.compile(r"\s*(?:(?P<num>[+-]?\d+)|(?P<sym>[\[\](),]))")


def dt_parse(text: str) -> DTCode:
    """Parse ``[(e1,e2,...),(...),...]``; whitespace and line breaks are ignored."""
    pos = 0
    tokens = []
    text_len = len(text)
    while pos < text_len:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", offset=pos,
                             expected="integer, '(', ')', ',', '[' or ']'")
        tokens.append((m.start(m.lastgroup), m.group("num") or m.group("sym")))
        pos = m.end()
    tokens.append((text_len, ""))

    idx = 0

    def expect(value, what=None):
        nonlocal idx
        at, tok = tokens[idx]
        if tok != value:
            raise ParseError(f"found {tok or 'end of input'!r}", offset=at,
                             expected=what or repr(value))
        idx += 1

    expect("[")
    tuples = []
    while True:
        expect("(", "'(' opening a component")
        entries = []
        while True:
            at, tok = tokens[idx]
            if not re.fullmatch(r"[+-]?\d+", tok or "x"):
                raise ParseError(f"found {tok or 'end of input'!r}", offset=at,
                                 expected="integer entry")
            entries.append(int(tok))
            idx += 1
            at, tok = tokens[idx]
            if tok == ",":
                idx += 1
                continue
            expect(")", "',' or ')'")
            break
        tuples.append(tuple(entries))
        at, tok = tokens[idx]
        if tok == ",":
            idx += 1
            continue
        expect("]", "',' or ']'")
        break
    at, tok = tokens[idx]
    if tok:
        raise ParseError(f"trailing input {tok!r}", offset=at, expected="end of input")
    return DTCode(tuple(tuples))


def dt_validate(code: DTCode) -> list:
    """Diagnostics for odd or zero entries and missing/duplicated labels."""
    problems = []
    entries = [e for t in code.tuples for e in t]
    if not code.tuples or any(not t for t in code.tuples):
        problems.append("empty component")
    for ci, t in enumerate(code.tuples):
        for pos, e in enumerate(t):
            if e == 0:
                problems.append(f"zero entry: component {ci + 1} position {pos + 1}")
            elif e % 2:
                problems.append(f"odd entry: {e} in component {ci + 1} position {pos + 1}")
    total = len(entries)
    counts = {}
    for e in entries:
        counts[abs(e)] = counts.get(abs(e), 0) + 1
    for label in range(2, 2 * total + 1, 2):
        if label not in counts:
            problems.append(f"missing label: {label}")
    for label, k in sorted(counts.items()):
        if k > 1:
            problems.append(f"duplicated label: {label} appears {k} times")
        if label % 2 == 0 and label > 2 * total:
            problems.append(f"label out of range: {label} > {2 * total}")
    return problems


def _pd_from_rotation(n, partner, even_over, ccw):
    """Build PD records from a rotation choice per crossing.

    ``ccw[k]`` is True when the ends ``in_odd, in_even, out_odd, out_even``
    appear counterclockwise around crossing ``k``.
    """
    two_n = 2 * n

    def arc_in(p):
        return two_n if p == 1 else p - 1

    crossings = []
    for k in range(n):
        odd = 2 * k + 1
        even = partner[odd]
        ends = [(arc_in(odd), "in", "odd"), (arc_in(even), "in", "even"),
                (odd, "out", "odd"), (even, "out", "even")]
        if not ccw[k]:
            ends = [ends[0], ends[3], ends[2], ends[1]]
        under = "odd" if even_over[k] else "even"
        start = next(i for i, (_, io, who) in enumerate(ends) if who == under and io == "in")
        order = [ends[(start + r) % 4] for r in range(4)]
        sign = 1 if order[1][1] == "out" else -1
        crossings.append(Crossing(*(lab for lab, _, _ in order), sign))
    return crossings


def dt_realize_knot(code: DTCode) -> PDCode:
    """Realize a one-component DT code as a planar PD code.

    Each crossing becomes a wheel gadget whose outer cycle forces the two
    strands to cross; the code is realizable iff the gadget graph is planar,
    and the embedding's rotation at each hub gives the crossing handedness.
    """
    problems = dt_validate(code)
    if problems:
        raise NonRealizable("; ".join(problems))
    if len(code.tuples) != 1:
        raise MultiComponent(
            f"DT code has {len(code.tuples)} components; only knots are realized"
        )
    (entries,) = code.tuples
    n = len(entries)
    partner = {}
    even_over = []
    for k, e in enumerate(entries):
        odd = 2 * k + 1
        partner[odd] = abs(e)
        partner[abs(e)] = odd
        even_over.append(e < 0)
    two_n = 2 * n

    g = nx.Graph()
    crossing_of = {}
    for k in range(n):
        odd = 2 * k + 1
        even = partner[odd]
        crossing_of[odd] = crossing_of[even] = k
        hub = ("hub", k)
        corners = [("in", odd), ("in", even), ("out", odd), ("out", even)]
        for i, c in enumerate(corners):
            g.add_edge(hub, c)
            g.add_edge(c, corners[(i + 1) % 4])
    for p in range(1, two_n + 1):
        q = 1 if p == two_n else p + 1
        mid = ("arc", p)
        g.add_edge(("out", p), mid)
        g.add_edge(mid, ("in", q))
    planar, emb = nx.check_planarity(g)
    if not planar:
        raise NonRealizable(f"DT code {code} fails the planarity test")

    ccw = []
    for k in range(n):
        odd = 2 * k + 1
        even = partner[odd]
        cw = list(emb.neighbors_cw_order(("hub", k)))
        order = cw[::-1]
        i0 = order.index(("in", odd))
        rotated = order[i0:] + order[:i0]
        ccw.append(rotated[1] == ("in", even))
    crossings = _pd_from_rotation(n, partner, even_over, ccw)
    want = -1 if even_over[0] else 1
    if crossings[0].sign != want:
        crossings = _pd_from_rotation(n, partner, even_over, [not c for c in ccw])
    return PDCode(tuple(crossings), 0)


def pd_to_dt(d: PDCode, start=None) -> DTCode:
    """DT code read off a knot diagram, traversing from arc ``start``.

    The first pass (label 1) is at the head of ``start``; the default start
    is the arc entering the first under-crossing of the lowest-arc traversal.
    """
    if d.components != 1 or d.free_loops:
        raise MultiComponent("DT extraction is defined for one-component diagrams")
    (cycle,) = d.cycles
    if start is None:
        for arc in cycle:
            if d._heads[arc][1] == 0:
                start = arc
                break
    i0 = cycle.index(start)
    order = cycle[i0:] + cycle[:i0]
    passes = {}
    for pos, arc in enumerate(order, start=1):
        ci, slot = d._heads[arc]
        passes.setdefault(ci, []).append((pos, slot != 0))
    entries = {}
    for ci, ((p1, over1), (p2, over2)) in passes.items():
        if (p1 + p2) % 2 == 0:
            raise NonRealizable(f"crossing {ci} has labels {p1}, {p2} of equal parity")
        (odd, _), (even, over_even) = sorted(((p1, over1), (p2, over2)), key=lambda t: t[0] % 2 == 0)
        entries[odd] = -even if over_even else even
    return DTCode((tuple(entries[o] for o in sorted(entries)),))


def pd_dt_codes(d: PDCode):
    """All DT codes of a knot diagram over every starting arc (traversal direction fixed)."""
    return {pd_to_dt(d, a) for a in d.cycles[0]}
