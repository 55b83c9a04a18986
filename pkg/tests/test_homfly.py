import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lagknot.corpus import (
    figure_eight,
    five_two,
    hopf,
    link_corpus,
    trefoil,
    trefoil_padded,
    unknot,
)
from lagknot.diagram import PDCode, pd_canonical_key, pd_connected_sum, pd_disjoint_union, pd_mirror
from lagknot.errors import EmptyLink
from lagknot.homfly import (
    MemoCache,
    crossing_change_identity_check,
    homfly,
    homfly_specialize,
    key_to_diagram,
    skein_triple,
)
from lagknot.laurent import DELTA, parse_poly

from oracle import oracle_of

CORPUS = link_corpus()
NAMES = sorted(CORPUS)
VINV, V, Z = parse_poly("v^-1"), parse_poly("v"), parse_poly("z")

# Values frozen from the brute-force evaluator in tests/oracle.py.
FROZEN = {
    "trefoil": "-v^4 + 2*v^2 + v^2*z^2",
    "figure_eight": "v^2 - 1 - z^2 + v^-2",
    "five_two": "-v^6 + v^4 + v^4*z^2 + v^2 + v^2*z^2",
    "hopf": "-v^3*z^-1 + v*z^-1 + v*z",
}
BUILDERS = {"trefoil": trefoil, "figure_eight": figure_eight, "five_two": five_two, "hopf": hopf}


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_frozen_values(name):
    d = BUILDERS[name]()
    assert str(homfly(d)) == FROZEN[name]
    assert str(homfly(d, MemoCache())) == FROZEN[name]


def test_engine_agrees_with_oracle_on_corpus():
    for name, d in CORPUS.items():
        assert dict(homfly(d).terms) == oracle_of(d), name


def test_unknot_and_unlinks():
    assert homfly(unknot()).is_one()
    for n in range(1, 6):
        assert homfly(PDCode.unlink(n)) == DELTA ** (n - 1)


def test_empty_link():
    with pytest.raises(EmptyLink):
        homfly(PDCode((), 0))


def test_skein_triple_examples():
    t = trefoil()
    triple = skein_triple(t, 0)
    assert triple.positive == t
    assert triple.negative.crossings[0].sign == -1
    assert triple.smoothed.components == 2
    assert homfly(triple.negative).is_one()
    with pytest.raises(IndexError):
        skein_triple(t, 3)


def _skein_holds(d, site, cache):
    tr = skein_triple(d, site)
    lhs = VINV * homfly(tr.positive, cache) - V * homfly(tr.negative, cache)
    return lhs == Z * homfly(tr.smoothed, cache)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(NAMES), st.integers(0, 100))
def test_skein_relation(name, k):
    d = CORPUS[name]
    if not d.crossings:
        return
    assert _skein_holds(d, k % len(d.crossings), MemoCache())


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(NAMES), st.sampled_from(NAMES))
def test_multiplicativity_and_delta_scaling(a, b):
    da, db = CORPUS[a], CORPUS[b]
    cache = MemoCache()
    pa, pb = homfly(da, cache), homfly(db, cache)
    assert homfly(pd_connected_sum(da, db), cache) == pa * pb
    assert homfly(pd_disjoint_union(da, db), cache) == DELTA * pa * pb


def test_mirror_identity():
    for name, d in CORPUS.items():
        assert homfly(pd_mirror(d)) == homfly(d).mirror(), name


def test_specialization_is_one_on_corpus():
    for name, d in CORPUS.items():
        assert homfly_specialize(d).is_one(), name


def test_crossing_change_identity():
    d = five_two()
    for site in range(len(d.crossings)):
        report = crossing_change_identity_check(d, site)
        assert report.ok
        assert "ok" in str(report)


def test_diagram_invariance():
    assert homfly(trefoil_padded()) == homfly(trefoil())
    assert len(trefoil_padded().crossings) == 9


def test_cache_is_transparent():
    cache = MemoCache()
    for name, d in CORPUS.items():
        assert homfly(d, cache) == homfly(d), name
    assert len(cache) > 0
    again = MemoCache()
    values = [homfly(d, again) for d in CORPUS.values()]
    assert values == [homfly(d, again) for d in CORPUS.values()]
    assert again.hits > 0


def test_cache_round_trip(tmp_path):
    cache = MemoCache()
    homfly(five_two(), cache)
    homfly(figure_eight(), cache)
    path = tmp_path / "memo.tsv"
    cache.save(path)
    loaded = MemoCache.load(path, verify=True)
    assert loaded.items() == cache.items()
    assert homfly(five_two(), loaded) == homfly(five_two())


def test_cache_verify_detects_tampering(tmp_path):
    cache = MemoCache()
    homfly(trefoil(), cache)
    path = tmp_path / "memo.tsv"
    cache.save(path)
    lines = path.read_text().splitlines()
    key, _ = lines[0].split("\t")
    path.write_text(f"{key}\tv^7\n")
    assert str(MemoCache.load(path).get(bytes.fromhex(key))) == "v^7"
    with pytest.raises(ValueError):
        MemoCache.load(path, verify=True)


def test_keys_rebuild_diagrams():
    for name, d in CORPUS.items():
        key = pd_canonical_key(d)
        assert pd_canonical_key(key_to_diagram(key)) == key, name


def test_oracle_agrees_on_sixteen_crossing_sum():
    from lagknot.corpus import performance_sum

    d = performance_sum()
    assert dict(homfly(d, MemoCache()).terms) == oracle_of(d)
