"""HOMFLYPT polynomials by skein recursion over descending diagrams.

Normalization: ``P(unknot) = 1`` and ``v^-1 P(L+) - v P(L-) = z P(L0)``,
where ``L+`` is a crossing record of sign +1.  Tables using the opposite
handedness convention differ by ``v -> v^-1, z -> -z``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .diagram import (
    PDCode,
    find_connected_sum,
    nondescending_crossings,
    pd_canonical_key,
    pd_simplify,
    smooth_crossing,
    split_pieces,
    switch_crossing,
)
from .errors import EmptyLink, EngineError, ParseError
from .laurent import DELTA, ONE, LaurentPoly1, LaurentPoly2, parse_poly

__all__ = [
    "MemoCache",
    "SkeinTriple",
    "IdentityReport",
    "skein_triple",
    "homfly",
    "homfly_specialize",
    "crossing_change_identity_check",
]

_V2 = LaurentPoly2({(2, 0): 1})
_VZ = LaurentPoly2({(1, 1): 1})
_VM2 = LaurentPoly2({(-2, 0): 1})
_MVMZ = LaurentPoly2({(-1, 1): -1})
_V1 = LaurentPoly1({1: 1})
_VM1 = LaurentPoly1({-1: 1})


class MemoCache:
    """Canonical-key -> polynomial map with atomic get-or-insert."""

    def __init__(self):
        self._data = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def __len__(self):
        return len(self._data)

    def __contains__(self, key):
        return key in self._data

    def get(self, key):
        with self._lock:
            value = self._data.get(key)
            if value is None:
                self.misses += 1
            else:
                self.hits += 1
            return value

    def get_or_insert(self, key, value):
        """Store ``value`` unless present; return whichever value is stored."""
        with self._lock:
            return self._data.setdefault(key, value)

    def items(self):
        with self._lock:
            return sorted(self._data.items())

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            for key, poly in self.items():
                fh.write(f"{key.hex()}\t{poly}\n")

    @classmethod
    def load(cls, path, verify=False):
        """Read a cache file.

        With ``verify`` every record is recomputed from its key and a
        mismatching record raises ``ValueError``.
        """
        cache = cls()
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                hexkey, sep, text = line.partition("\t")
                if not sep:
                    raise ParseError("missing tab separator", line=lineno,
                                     expected="<hex key>\\t<polynomial>")
                try:
                    key = bytes.fromhex(hexkey)
                except ValueError:
                    raise ParseError("bad hex key", line=lineno, expected="hex digits") from None
                poly = parse_poly(text)
                if verify:
                    fresh = homfly(key_to_diagram(key))
                    if fresh != poly:
                        raise ValueError(
                            f"cache record on line {lineno} disagrees with recomputation: "
                            f"stored {poly}, computed {fresh}"
                        )
                cache._data[key] = poly
        return cache


def key_to_diagram(key: bytes) -> PDCode:
    """Rebuild a diagram from its canonical key (the key is a full encoding)."""
    text = key.decode("ascii")
    head, *pieces = text.split("|")
    loops = int(head[1:])
    crossings = []
    offset = 0
    for piece in pieces:
        top = 0
        for rec in piece.split(";"):
            a, b, c, d, s = rec.split(",")
            vals = [int(a) + offset, int(b) + offset, int(c) + offset, int(d) + offset]
            top = max(top, *vals)
            crossings.append((*vals, 1 if s == "+" else -1))
        offset = top
    return PDCode(tuple(crossings), loops)


@dataclass(frozen=True)
class SkeinTriple:
    positive: PDCode
    negative: PDCode
    smoothed: PDCode
    site: int


def skein_triple(d: PDCode, site: int) -> SkeinTriple:
    if not 0 <= site < len(d.crossings):
        raise IndexError(f"crossing index {site} out of range for {len(d.crossings)} crossings")
    other = switch_crossing(d, site)
    smoothed = smooth_crossing(d, site)
    if d.crossings[site].sign > 0:
        return SkeinTriple(d, other, smoothed, site)
    return SkeinTriple(other, d, smoothed, site)


def _delta_power(n):
    return DELTA ** n if n else ONE


class _Engine:
    def __init__(self, cache):
        self.cache = cache

    def run(self, d: PDCode) -> LaurentPoly2:
        n = len(d.crossings)
        self.budget = max(64, (n + 1) ** 2)
        return self.eval(d, 0)

    def eval(self, d, depth):
        if depth > self.budget:
            raise EngineError(f"skein recursion exceeded depth {self.budget}")
        d = pd_simplify(d)
        if not d.crossings:
            return _delta_power(d.components - 1)
        pieces = split_pieces(d)
        if len(pieces) > 1 or d.free_loops:
            result = _delta_power(len(pieces) + d.free_loops - 1)
            for piece in pieces:
                result = result * self.eval(piece, depth + 1)
            return result
        factors = find_connected_sum(d)
        if factors is not None:
            left, right = factors
            return self.eval(left, depth + 1) * self.eval(right, depth + 1)
        key = None
        if self.cache is not None:
            key = pd_canonical_key(d)
            hit = self.cache.get(key)
            if hit is not None:
                return hit
        bad = nondescending_crossings(d)
        if not bad:
            value = _delta_power(d.components - 1)
        else:
            site = bad[0]
            switched = self.eval(switch_crossing(d, site), depth + 1)
            smoothed = self.eval(smooth_crossing(d, site), depth + 1)
            if d.crossings[site].sign > 0:
                value = _V2 * switched + _VZ * smoothed
            else:
                value = _VM2 * switched + _MVMZ * smoothed
        if key is not None:
            value = self.cache.get_or_insert(key, value)
        return value


def homfly(d: PDCode, cache: MemoCache | None = None) -> LaurentPoly2:
    """HOMFLYPT polynomial of an oriented link diagram.

    ``cache=None`` disables memoization entirely.
    """
    if d.components == 0:
        raise EmptyLink("the empty diagram has no HOMFLYPT polynomial")
    return _Engine(cache).run(d)


def homfly_specialize(d: PDCode, cache: MemoCache | None = None) -> LaurentPoly1:
    return homfly(d, cache).specialize_z()


@dataclass(frozen=True)
class IdentityReport:
    ok: bool
    site: int
    lhs: LaurentPoly1
    rhs: LaurentPoly1

    def __str__(self):
        status = "ok" if self.ok else "violation"
        return f"crossing {self.site}: {status} :: v^-1*(f+ - 1) = {self.lhs}, v*(f- - 1) = {self.rhs}"


def crossing_change_identity_check(d: PDCode, site: int,
                                   cache: MemoCache | None = None) -> IdentityReport:
    """Check ``v^-1 (f(L+) - 1) = v (f(L-) - 1)`` with ``f = P(v, v^-1 - v)``."""
    triple = skein_triple(d, site)
    f_pos = homfly_specialize(triple.positive, cache)
    f_neg = homfly_specialize(triple.negative, cache)
    lhs = _VM1 * (f_pos - 1)
    rhs = _V1 * (f_neg - 1)
    return IdentityReport(lhs == rhs, site, lhs, rhs)
