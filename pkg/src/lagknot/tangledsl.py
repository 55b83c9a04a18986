"""A small line-oriented language for tangle diagrams and its compiler to PD codes.

Strands are read top to bottom at integer positions ``1..w``::

    width 2; cross 1 +; cross 1 +; cross 1 +; close trace

``cross i s`` crosses strands ``i`` and ``i+1``.  With both strands pointing
down, ``+`` is a positive crossing: the strand moving from ``i`` to ``i+1``
passes under.  ``twist i k`` is ``k`` full twists, i.e. ``2|k|`` crossings of
sign ``sgn(k)``; negative ``k`` gives left-handed twists.  ``cup i`` opens
two new strands at positions ``i, i+1``; ``cap i`` joins strands ``i`` and
``i+1``.  ``close trace`` joins exit ``j`` to entry ``j`` around the right;
``close plat`` caps entries and exits pairwise ``(1,2), (3,4), ...``.

Templates add ``param <name> = <affine in n, N>`` lines and optional
``require <affine> >= 0`` domain constraints.  A Rolfsen twist along an
unknot with filling slope ``1/q`` inserts ``-q`` full twists in the strands
it encircles, which is how the shipped ``K_{n,N}`` template gets its boxes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import NamedTuple, Union

from .diagram import Crossing, PDCode
from .errors import ClosureError, DomainError, ParseError, StrandCountError, UnboundParameter

__all__ = [
    "Cross",
    "TwistBox",
    "Cup",
    "Cap",
    "TangleProgram",
    "TwistTemplate",
    "dsl_parse",
    "dsl_compile",
    "template_parse",
    "template_instantiate",
    "load_template",
]


class Cross(NamedTuple):
    i: int
    sign: int


class TwistBox(NamedTuple):
    i: int
    k: Union[int, str]


class Cup(NamedTuple):
    i: int


class Cap(NamedTuple):
    i: int


def _event_text(ev):
    if isinstance(ev, Cross):
        return f"cross {ev.i} {'+' if ev.sign > 0 else '-'}"
    if isinstance(ev, TwistBox):
        return f"twist {ev.i} {ev.k}"
    return f"{type(ev).__name__.lower()} {ev.i}"


def _check_strands(width, events, closure):
    count = width
    for pos, ev in enumerate(events):
        if isinstance(ev, Cup):
            ok = 1 <= ev.i <= count + 1
            need = f"1 <= i <= {count + 1}"
        else:
            ok = 1 <= ev.i < count
            need = f"1 <= i < {count}"
        if not ok:
            raise StrandCountError(
                f"event {pos + 1} ({_event_text(ev)}) needs {need} with {count} strands"
            )
        if isinstance(ev, Cup):
            count += 2
        elif isinstance(ev, Cap):
            count -= 2
    if closure == "plat":
        if width % 2 or count % 2:
            raise ClosureError(
                f"plat closure needs even widths, got entry {width} and exit {count}"
            )
    elif closure == "trace":
        if count != width:
            raise ClosureError(
                f"trace closure needs entry width = exit width, got {width} and {count}"
            )
    else:
        raise ClosureError(f"unknown closure {closure!r}")
    return count


@dataclass(frozen=True)
class TangleProgram:
    width: int
    events: tuple
    closure: str

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        if self.width < 0:
            raise StrandCountError("width must be non-negative")
        _check_strands(self.width, self.events, self.closure)

    @property
    def parameters(self):
        return sorted({ev.k for ev in self.events
                       if isinstance(ev, TwistBox) and isinstance(ev.k, str)})

    def __str__(self):
        parts = [f"width {self.width}"]
        parts += [_event_text(ev) for ev in self.events]
        parts.append(f"close {self.closure}")
        return "; ".join(parts)


@dataclass(frozen=True)
class TwistTemplate:
    program: TangleProgram
    bindings: dict
    requires: tuple = ()
    name: str = ""

    def __post_init__(self):
        missing = [p for p in self.program.parameters if p not in self.bindings]
        if missing:
            raise UnboundParameter(f"template parameters without bindings: {missing}")

    def bind(self, n, N):
        return {name: a * n + b * N + c for name, (a, b, c) in self.bindings.items()}


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_INT = re.compile(r"[+-]?\d+$")


def _statements(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for stmt in line.split(";"):
            stmt = stmt.strip()
            if stmt:
                yield lineno, stmt


def _parse_affine(expr, lineno):
    """Parse an integer affine expression in ``n`` and ``N``."""
    s = expr.replace(" ", "")
    if not s:
        raise ParseError("empty expression", line=lineno, expected="affine expression")
    coeffs = {"n": 0, "N": 0, "": 0}
    for m in re.finditer(r"([+-]?)([^+-]+)", s):
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2)
        if "*" in body:
            num, _, var = body.partition("*")
        elif body in ("n", "N"):
            num, var = "1", body
        else:
            num, var = body, ""
        if not num.isdigit() or var not in coeffs:
            raise ParseError(f"bad term {m.group(0)!r}", line=lineno,
                             expected="<int>*n, <int>*N or <int>")
        coeffs[var] += sign * int(num)
    if "".join(m.group(0) for m in re.finditer(r"([+-]?)([^+-]+)", s)) != s:
        raise ParseError(f"bad expression {expr!r}", line=lineno, expected="affine expression")
    return coeffs["n"], coeffs["N"], coeffs[""]


def _parse(text, allow_params):
    width = None
    events = []
    closure = None
    bindings = {}
    requires = []
    for lineno, stmt in _statements(text):
        words = stmt.split()
        head = words[0]
        if closure is not None and head not in ("param", "require"):
            raise ParseError(f"statement after close: {stmt!r}", line=lineno,
                             expected="end of program")
        if head in ("param", "require"):
            if not allow_params:
                raise ParseError(f"{head} lines belong in template files", line=lineno,
                                 expected="tangle event")
            if head == "param":
                m = re.match(r"param\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+)$", stmt)
                if not m:
                    raise ParseError(f"bad param line {stmt!r}", line=lineno,
                                     expected="param <ident> = <a>*n + <b>*N + <c>")
                bindings[m.group(1)] = _parse_affine(m.group(2), lineno)
            else:
                m = re.match(r"require\s+(.+?)\s*>=\s*0$", stmt)
                if not m:
                    raise ParseError(f"bad require line {stmt!r}", line=lineno,
                                     expected="require <affine> >= 0")
                requires.append(_parse_affine(m.group(1), lineno))
            continue
        if width is None:
            if head != "width" or len(words) != 2 or not words[1].isdigit():
                raise ParseError(f"program must start with 'width <int>', got {stmt!r}",
                                 line=lineno, expected="width <int>")
            width = int(words[1])
            continue
        if head == "close":
            if len(words) != 2 or words[1] not in ("plat", "trace"):
                raise ParseError(f"bad closure {stmt!r}", line=lineno,
                                 expected="close plat|trace")
            closure = words[1]
            continue
        if head not in ("cross", "twist", "cup", "cap"):
            raise ParseError(f"unknown statement {head!r}", line=lineno,
                             expected="cross, twist, cup, cap or close")
        nargs = {"cross": 3, "twist": 3, "cup": 2, "cap": 2}[head]
        if len(words) != nargs or not words[1].isdigit():
            raise ParseError(f"bad {head} statement {stmt!r}", line=lineno,
                             expected={"cross": "cross <i> <+|->", "twist": "twist <i> <int|ident>",
                                       "cup": "cup <i>", "cap": "cap <i>"}[head])
        i = int(words[1])
        if head == "cross":
            if words[2] not in ("+", "-"):
                raise ParseError(f"bad crossing sign {words[2]!r}", line=lineno,
                                 expected="+ or -")
            events.append(Cross(i, 1 if words[2] == "+" else -1))
        elif head == "twist":
            arg = words[2]
            if _INT.match(arg):
                events.append(TwistBox(i, int(arg)))
            elif _IDENT.match(arg):
                events.append(TwistBox(i, arg))
            else:
                raise ParseError(f"bad twist count {arg!r}", line=lineno,
                                 expected="integer or identifier")
        elif head == "cup":
            events.append(Cup(i))
        else:
            events.append(Cap(i))
    if width is None:
        raise ParseError("empty program", expected="width <int>")
    if closure is None:
        raise ParseError("missing closure", expected="close plat|trace")
    return TangleProgram(width, tuple(events), closure), bindings, tuple(requires)


def dsl_parse(text: str) -> TangleProgram:
    """Parse and validate a tangle program (index bounds and closure parity)."""
    program, _, _ = _parse(text, allow_params=False)
    return program


def template_parse(text: str, name: str = "") -> TwistTemplate:
    program, bindings, requires = _parse(text, allow_params=True)
    return TwistTemplate(program, bindings, requires, name)


def load_template(name: str) -> TwistTemplate:
    """Load a template shipped in ``lagknot/data`` (``knn`` or ``twist_knot``)."""
    text = resources.files("lagknot").joinpath("data").joinpath(f"{name}.tangle").read_text()
    return template_parse(text, name)


# Local crossing slots; the strand TL-BR moves from position i to i+1.
_TL, _TR, _BL, _BR = range(4)
_THROUGH = {_TL: _BR, _BR: _TL, _TR: _BL, _BL: _TR}
_CCW = (_BL, _BR, _TR, _TL)


class _Graph:
    """Curve pieces as a graph; tokens are pass-through nodes of degree two."""

    def __init__(self):
        self.edges = []
        self.ends = []      # node -> list of (edge, side) incident ends
        self.slot_of = []   # node -> (crossing, slot), or None for tokens
        self.down = {}

    def node(self, slot=None):
        self.ends.append([])
        self.slot_of.append(slot)
        return len(self.slot_of) - 1

    def connect(self, upper, lower, downward=True):
        """Join two nodes; ``downward`` edges may orient ``upper``."""
        k = len(self.edges)
        self.edges.append((upper, lower))
        self.ends[upper].append((k, 0))
        self.ends[lower].append((k, 1))
        if downward:
            self.down.setdefault(upper, k)
        return k


def _resolve(program, bindings):
    events = []
    for ev in program.events:
        if isinstance(ev, TwistBox) and isinstance(ev.k, str):
            if ev.k not in bindings:
                raise UnboundParameter(f"parameter {ev.k!r} is not bound")
            events.append(TwistBox(ev.i, int(bindings[ev.k])))
        else:
            events.append(ev)
    return events


def dsl_compile(program: TangleProgram, bindings=None) -> PDCode:
    """Compile a program to an oriented PD code.

    Components through an entry strand are oriented downward there; other
    components are oriented down the left leg of their first cup.
    """
    events = _resolve(program, bindings or {})
    g = _Graph()
    geo = []
    slot_nodes = []
    entry = [g.node() for _ in range(program.width)]
    cur = list(entry)
    seeds = list(entry)

    def crossing(i, sign):
        ci = len(geo)
        geo.append(sign)
        nodes = [g.node((ci, s)) for s in range(4)]
        slot_nodes.append(nodes)
        g.connect(cur[i - 1], nodes[_TL])
        g.connect(cur[i], nodes[_TR])
        cur[i - 1] = nodes[_BL]
        cur[i] = nodes[_BR]

    for ev in events:
        if isinstance(ev, Cross):
            crossing(ev.i, ev.sign)
        elif isinstance(ev, TwistBox):
            s = 1 if ev.k > 0 else -1
            for _ in range(2 * abs(ev.k)):
                crossing(ev.i, s)
        elif isinstance(ev, Cup):
            left, right = g.node(), g.node()
            g.connect(left, right, downward=False)
            cur[ev.i - 1:ev.i - 1] = [left, right]
            seeds.append(left)
        else:
            g.connect(cur[ev.i - 1], cur[ev.i])
            del cur[ev.i - 1:ev.i + 1]

    if program.closure == "trace":
        for j in range(program.width):
            g.connect(cur[j], entry[j])
    else:
        for j in range(0, len(cur), 2):
            g.connect(cur[j], cur[j + 1])
        # The top caps run upward out of the entries, so they never orient.
        for j in range(0, program.width, 2):
            g.connect(entry[j], entry[j + 1], downward=False)

    return _orient_and_label(g, geo, slot_nodes, seeds)


def _orient_and_label(g, geo, slot_nodes, seeds):
    used = [False] * len(g.edges)
    loops = 0
    slot_label = {}
    slot_dir = {}
    next_label = 1

    def walk(node, k):
        """Follow the curve leaving ``node`` along edge ``k``; return crossing visits."""
        visits = []
        side = 0 if g.edges[k][0] == node else 1
        start = (k, side)
        end = start
        while True:
            used[end[0]] = True
            arrive = (end[0], 1 - end[1])
            w = g.edges[arrive[0]][arrive[1]]
            slot = g.slot_of[w]
            if slot is None:
                a, b = g.ends[w]
                end = b if a == arrive else a
            else:
                ci, s_in = slot
                s_out = _THROUGH[s_in]
                visits.append((ci, s_in, s_out))
                (end,) = g.ends[slot_nodes[ci][s_out]]
            if end == start:
                return visits

    def label(visits):
        nonlocal next_label
        m = len(visits)
        for idx, (ci, s_in, s_out) in enumerate(visits):
            lab = next_label + idx
            slot_label[(ci, s_out)] = lab
            slot_dir[(ci, s_out)] = "out"
            nci, ns_in, _ = visits[(idx + 1) % m]
            slot_label[(nci, ns_in)] = lab
            slot_dir[(nci, ns_in)] = "in"
        next_label += m

    for seed in seeds:
        k = g.down.get(seed)
        if k is None or used[k]:
            continue
        visits = walk(seed, k)
        if visits:
            label(visits)
        else:
            loops += 1
    for k in range(len(g.edges)):
        if used[k]:
            continue
        u, _ = g.edges[k]
        visits = walk(u, k)
        if visits:
            label(visits)
        else:
            loops += 1

    crossings = []
    for ci, sign in enumerate(geo):
        under = (_TL, _BR) if sign > 0 else (_TR, _BL)
        under_in = under[0] if slot_dir[(ci, under[0])] == "in" else under[1]
        start = _CCW.index(under_in)
        order = [_CCW[(start + r) % 4] for r in range(4)]
        labels = [slot_label[(ci, s)] for s in order]
        pd_sign = 1 if slot_dir[(ci, order[1])] == "out" else -1
        crossings.append(Crossing(*labels, pd_sign))
    return PDCode(tuple(crossings), loops)


def template_instantiate(template: TwistTemplate, n: int, N: int) -> PDCode:
    for a, b, c in template.requires:
        if a * n + b * N + c < 0:
            raise DomainError(
                f"(n, N) = ({n}, {N}) violates {a}*n + {b}*N + {c} >= 0"
            )
    return dsl_compile(template.program, template.bind(n, N))
