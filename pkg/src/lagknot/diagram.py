"""Oriented planar diagrams (PD codes) and the operations the skein engine needs.

A crossing record ``(a, b, c, d, sign)`` lists arc labels counterclockwise,
starting from the incoming under-strand arc, so the under-strand runs
``a -> c``.  ``sign`` is +1 when the over-strand crosses from left to right
as seen travelling along the under-strand; it then runs ``d -> b``, and
``b -> d`` for sign -1.  Crossingless unknotted components are counted
separately in ``free_loops``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

from .errors import EmptyDiagram, InvalidDiagram, ParseError

__all__ = [
    "Crossing",
    "PDCode",
    "pd_validate",
    "pd_writhe",
    "pd_mirror",
    "pd_connected_sum",
    "pd_disjoint_union",
    "pd_simplify",
    "pd_canonical_key",
    "switch_crossing",
    "smooth_crossing",
    "split_pieces",
    "find_connected_sum",
    "nondescending_crossings",
    "relabel",
    "parse_pd",
    "format_pd",
]


class Crossing(NamedTuple):
    a: int
    b: int
    c: int
    d: int
    sign: int

    @property
    def in_slots(self):
        return (0, 3) if self.sign > 0 else (0, 1)

    @property
    def out_slots(self):
        return (2, 1) if self.sign > 0 else (2, 3)

    @property
    def over_in(self):
        return self[3] if self.sign > 0 else self[1]

    @property
    def over_out(self):
        return self[1] if self.sign > 0 else self[3]


@dataclass(frozen=True, eq=True)
class PDCode:
    crossings: tuple = ()
    free_loops: int = 0

    def __post_init__(self):
        object.__setattr__(
            self, "crossings", tuple(Crossing(*map(int, x)) for x in self.crossings)
        )
        if self.free_loops < 0:
            raise ValueError("free_loops must be non-negative")

    @classmethod
    def unlink(cls, n: int = 1) -> "PDCode":
        return cls((), n)

    @classmethod
    def parse(cls, text: str) -> "PDCode":
        return parse_pd(text)

    def __len__(self):
        return len(self.crossings)

    def __str__(self):
        return format_pd(self)

    # Structural maps below assume the diagram is valid; pd_validate first
    # when the input is untrusted.

    @cached_property
    def _heads(self):
        heads = {}
        for ci, x in enumerate(self.crossings):
            for s in x.in_slots:
                heads[x[s]] = (ci, s)
        return heads

    @cached_property
    def _tails(self):
        tails = {}
        for ci, x in enumerate(self.crossings):
            for s in x.out_slots:
                tails[x[s]] = (ci, s)
        return tails

    @cached_property
    def _succ(self):
        succ = {}
        for x in self.crossings:
            succ[x[0]] = x[2]
            succ[x.over_in] = x.over_out
        return succ

    @cached_property
    def cycles(self):
        """Arc cycles ordered by lowest label, each starting at its lowest label."""
        succ = self._succ
        seen = set()
        out = []
        for start in sorted(succ):
            if start in seen:
                continue
            cyc = []
            cur = start
            while cur not in seen:
                seen.add(cur)
                cyc.append(cur)
                cur = succ[cur]
            out.append(tuple(cyc))
        return tuple(out)

    @property
    def components(self) -> int:
        return len(self.cycles) + self.free_loops

    @property
    def arcs(self):
        return sorted(self._succ)


def _collect_labels(d: PDCode):
    occ = {}
    for ci, x in enumerate(d.crossings):
        for s in range(4):
            occ.setdefault(x[s], []).append((ci, s))
    return occ


def pd_validate(d: PDCode) -> list:
    """Return every violated invariant; an empty list means the diagram is valid."""
    problems = []
    for ci, x in enumerate(d.crossings):
        if x.sign not in (1, -1):
            problems.append(f"bad sign: crossing {ci} has sign {x.sign}")
        for s in range(4):
            if x[s] <= 0:
                problems.append(f"bad label: crossing {ci} slot {s} has {x[s]}")
    occ = _collect_labels(d)
    for label, where in sorted(occ.items()):
        if len(where) != 2:
            crossings = sorted({ci for ci, _ in where})
            problems.append(
                f"arc multiplicity: arc {label} occurs {len(where)} times "
                f"(crossings {crossings})"
            )
    if problems:
        return problems
    seen_in, seen_out = {}, {}
    for ci, x in enumerate(d.crossings):
        for s in x.in_slots:
            seen_in.setdefault(x[s], []).append(ci)
        for s in x.out_slots:
            seen_out.setdefault(x[s], []).append(ci)
    for label in sorted(occ):
        if len(seen_in.get(label, ())) != 1:
            problems.append(
                f"orientation: arc {label} is incoming {len(seen_in.get(label, ()))} "
                f"times (crossings {sorted(seen_in.get(label, []) + seen_out.get(label, []))})"
            )
    return problems


def check_valid(d: PDCode) -> PDCode:
    problems = pd_validate(d)
    if problems:
        raise InvalidDiagram(problems)
    return d


def pd_writhe(d: PDCode) -> int:
    return sum(x.sign for x in d.crossings)


def _switched(x: Crossing) -> Crossing:
    if x.sign > 0:
        return Crossing(x.d, x.a, x.b, x.c, -1)
    return Crossing(x.b, x.c, x.d, x.a, 1)


def switch_crossing(d: PDCode, site: int) -> PDCode:
    """Exchange over and under at one crossing; arc labels are unchanged."""
    xs = list(d.crossings)
    xs[site] = _switched(xs[site])
    return PDCode(tuple(xs), d.free_loops)


def pd_mirror(d: PDCode) -> PDCode:
    return PDCode(tuple(_switched(x) for x in d.crossings), d.free_loops)


def _excise(d: PDCode, drop, override=None) -> PDCode:
    """Delete the crossings in ``drop`` and splice the strands through them.

    Strands pass straight through a deleted crossing unless ``override`` maps
    an incoming arc to a different outgoing one (used for smoothing).  Arcs
    left without any crossing become free loops.
    """
    heads, tails, succ = d._heads, d._tails, d._succ
    if override:
        def nxt(a):
            return override.get(a, succ[a])
    else:
        nxt = succ.__getitem__
    rename = {}
    seen = set()
    for arc, (ci, _) in tails.items():
        if ci in drop:
            continue
        cur = arc
        seen.add(cur)
        while heads[cur][0] in drop:
            cur = nxt(cur)
            seen.add(cur)
        if cur != arc:
            rename[cur] = arc
    loops = 0
    for arc in heads:
        if arc in seen:
            continue
        loops += 1
        cur = arc
        while cur not in seen:
            seen.add(cur)
            cur = nxt(cur)
    new = []
    for ci, x in enumerate(d.crossings):
        if ci in drop:
            continue
        if rename:
            slots = list(x[:4])
            for s in x.in_slots:
                slots[s] = rename.get(slots[s], slots[s])
            new.append(Crossing(*slots, x.sign))
        else:
            new.append(x)
    return PDCode(tuple(new), d.free_loops + loops)


def smooth_crossing(d: PDCode, site: int) -> PDCode:
    """Orientation-preserving resolution of one crossing."""
    x = d.crossings[site]
    override = {x[0]: x.over_out, x.over_in: x[2]}
    return _excise(d, {site}, override)


def _find_r1(d: PDCode):
    for ci, x in enumerate(d.crossings):
        for s in range(4):
            if x[s] == x[(s + 1) % 4]:
                return ci
    return None


def _find_r2(d: PDCode):
    occ = _collect_labels(d)
    for ci, x in enumerate(d.crossings):
        for s in range(4):
            e = x[s]
            (p, q) = occ[e]
            yi, t = q if p == (ci, s) else p
            if yi == ci or (s % 2) != (t % 2):
                continue
            for delta in (1, -1):
                f = x[(s + delta) % 4]
                if f == e:
                    continue
                if (yi, (t - delta) % 4) in occ[f]:
                    return ci, yi
    return None


def pd_simplify(d: PDCode) -> PDCode:
    """Remove crossings by Reidemeister I and II moves until none applies.

    Crossingless components are split off into ``free_loops``.  Returns the
    input object itself when no move applies.
    """
    while True:
        ci = _find_r1(d)
        if ci is not None:
            d = _excise(d, {ci})
            continue
        pair = _find_r2(d)
        if pair is not None:
            d = _excise(d, set(pair))
            continue
        return d


def _relabel_map(d: PDCode, mapping) -> PDCode:
    return PDCode(
        tuple(Crossing(*(mapping[v] for v in x[:4]), x.sign) for x in d.crossings),
        d.free_loops,
    )


def relabel(d: PDCode) -> PDCode:
    """Renumber arcs 1..2n consecutively along the ordered traversal."""
    mapping = {}
    for cyc in d.cycles:
        for arc in cyc:
            mapping[arc] = len(mapping) + 1
    return _relabel_map(d, mapping)


def _shift(d: PDCode, offset: int) -> PDCode:
    return _relabel_map(d, {a: a + offset for a in d._succ})


def pd_disjoint_union(a: PDCode, b: PDCode) -> PDCode:
    top = max(a.arcs, default=0)
    b2 = _shift(b, top)
    return PDCode(a.crossings + b2.crossings, a.free_loops + b.free_loops)


def pd_connected_sum(a: PDCode, b: PDCode) -> PDCode:
    """Connected sum spliced at the lowest-labelled arc of each operand.

    For links only the components through those arcs are joined.
    """
    if a.components == 0 or b.components == 0:
        raise EmptyDiagram("connected sum needs two nonempty diagrams")
    if not a.crossings:
        return PDCode(b.crossings, b.free_loops + a.free_loops - 1)
    if not b.crossings:
        return PDCode(a.crossings, a.free_loops + b.free_loops - 1)
    b2 = _shift(b, max(a.arcs))
    x, y = min(a.arcs), min(b2.arcs)
    hx, sx = a._heads[x]
    hy, sy = b2._heads[y]
    xa = [list(c) for c in a.crossings]
    xb = [list(c) for c in b2.crossings]
    xa[hx][sx] = y
    xb[hy][sy] = x
    return PDCode(tuple(xa) + tuple(xb), a.free_loops + b.free_loops)


def split_pieces(d: PDCode):
    """Split a diagram into crossing-connected pieces (free loops dropped)."""
    n = len(d.crossings)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for arc, (ti, _) in d._tails.items():
        hi = d._heads[arc][0]
        ri, rj = find(ti), find(hi)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    if len(groups) <= 1:
        return [PDCode(d.crossings, 0)] if n else []
    return [PDCode(tuple(d.crossings[i] for i in g), 0)
            for _, g in sorted(groups.items())]


def _bridges(n, edges, skip):
    """Bridges of a multigraph on ``n`` vertices, ignoring edge index ``skip``."""
    adj = [[] for _ in range(n)]
    for k, (u, w) in enumerate(edges):
        if k == skip or u == w:
            continue
        adj[u].append((w, k))
        adj[w].append((u, k))
    disc = [-1] * n
    low = [0] * n
    found = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            u, pe, it = stack[-1]
            advanced = False
            for w, k in it:
                if k == pe:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, k, iter(adj[w])))
                    advanced = True
                    break
                low[u] = min(low[u], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[u])
                    if low[u] > disc[p]:
                        found.append(pe)
    return found


def find_connected_sum(d: PDCode):
    """Detect a diagrammatic connected sum via a 2-arc cut of the crossing graph.

    Returns ``(left, right)`` closed-up factors or ``None``.  Assumes ``d`` is
    crossing-connected.
    """
    n = len(d.crossings)
    if n < 2:
        return None
    labels = sorted(d._succ)
    edges = [(d._tails[a][0], d._heads[a][0]) for a in labels]
    for k1 in range(len(edges)):
        if edges[k1][0] == edges[k1][1]:
            continue
        for k2 in _bridges(n, edges, k1):
            if k2 < k1:
                continue
            return _close_cut(d, labels[k1], labels[k2], edges, k1, k2)
    return None


def _close_cut(d, e1, e2, edges, k1, k2):
    n = len(d.crossings)
    adj = [[] for _ in range(n)]
    for k, (u, w) in enumerate(edges):
        if k in (k1, k2):
            continue
        adj[u].append(w)
        adj[w].append(u)
    side = {edges[k1][0]}
    todo = [edges[k1][0]]
    while todo:
        u = todo.pop()
        for w in adj[u]:
            if w not in side:
                side.add(w)
                todo.append(w)
    # e_out leaves side A, e_in returns to it.
    if d._tails[e1][0] in side and d._heads[e1][0] not in side:
        e_out, e_in = e1, e2
    else:
        e_out, e_in = e2, e1
    parts = []
    for inside, old, new in ((True, e_in, e_out), (False, e_out, e_in)):
        xs = []
        for ci, x in enumerate(d.crossings):
            if (ci in side) != inside:
                continue
            if d._heads[old][0] == ci:
                slots = list(x)
                slots[d._heads[old][1]] = new
                x = Crossing(*slots)
            xs.append(x)
        parts.append(PDCode(tuple(xs), 0))
    return parts[0], parts[1]


def nondescending_crossings(d: PDCode):
    """Crossings first met as an under-pass along the ordered traversal.

    Components are visited by increasing lowest label, each starting at its
    lowest arc; switching every returned crossing yields a descending
    (hence split, unknotted) diagram.
    """
    first = {}
    heads = d._heads
    for cyc in d.cycles:
        for arc in cyc:
            ci, slot = heads[arc]
            if ci not in first:
                first[ci] = slot
    return sorted(ci for ci, slot in first.items() if slot == 0)


def _piece_serial(d: PDCode):
    succ, heads = d._succ, d._heads
    xs = d.crossings
    other_out = {}
    for ci, x in enumerate(xs):
        for s in range(4):
            other_out[(ci, s)] = x.over_out if s % 2 == 0 else x[2]
    best = None
    for start in succ:
        lab = {}
        order = []
        cur = start
        while cur not in lab:
            lab[cur] = len(lab) + 1
            order.append(cur)
            cur = succ[cur]
        idx = 0
        while idx < len(order):
            o = other_out[heads[order[idx]]]
            if o not in lab:
                cur = o
                while cur not in lab:
                    lab[cur] = len(lab) + 1
                    order.append(cur)
                    cur = succ[cur]
            idx += 1
        ser = tuple(sorted((lab[x[0]], lab[x[1]], lab[x[2]], lab[x[3]], x[4]) for x in xs))
        if best is None or ser < best:
            best = ser
    return best


def pd_canonical_key(d: PDCode) -> bytes:
    """Key invariant under arc relabelling and crossing reordering."""
    pieces = split_pieces(d)
    serials = sorted(_piece_serial(p) for p in pieces)
    text = f"L{d.free_loops}" + "".join(
        "|" + ";".join(f"{a},{b},{c},{e},{'+' if s > 0 else '-'}" for a, b, c, e, s in ser)
        for ser in serials
    )
    return text.encode("ascii")


_PD_LINE = re.compile(r"^X\s+(\d+)\s+(\d+)\s+(\d+)\s+(\d+)\s+([+-])$")
_LOOP_LINE = re.compile(r"^O\s+(\d+)$")


def parse_pd(text: str, validate: bool = True) -> PDCode:
    """Parse the line format ``X a b c d s`` / ``O k`` (``#`` starts a comment)."""
    crossings = []
    loops = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _PD_LINE.match(line)
        if m:
            a, b, c, e = (int(m.group(k)) for k in range(1, 5))
            crossings.append((a, b, c, e, 1 if m.group(5) == "+" else -1))
            continue
        m = _LOOP_LINE.match(line)
        if m:
            loops += int(m.group(1))
            continue
        raise ParseError(f"cannot parse {line!r}", line=lineno,
                         expected="'X a b c d +|-' or 'O k'")
    d = PDCode(tuple(crossings), loops)
    if validate:
        check_valid(d)
    return d


def format_pd(d: PDCode) -> str:
    lines = [f"X {x.a} {x.b} {x.c} {x.d} {'+' if x.sign > 0 else '-'}" for x in d.crossings]
    if d.free_loops or not d.crossings:
        lines.append(f"O {d.free_loops}")
    return "\n".join(lines) + "\n"
