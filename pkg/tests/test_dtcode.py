import pytest

from lagknot.corpus import figure_eight, knot_corpus, trefoil
from lagknot.dtcode import dt_parse, dt_realize_knot, dt_validate, pd_dt_codes, pd_to_dt
from lagknot.errors import MultiComponent, NonRealizable, ParseError
from lagknot.homfly import homfly

LINK_CODE = """[(-28,-56,-92,-90,-88,-86,-74,-98,46,-32,-60,14,44,-96,-106,78,
-50,102,22,110,4,-72,-80,-34,64,18,-26,-94,-108,76,-104,48,20,112,
2,54,84,-38,-66,-52,100,-24,-12,-10,-8,-6,42,70),
(36,82,-16,-62),(-30,68,40,-58)]"""


def test_three_component_code_validates():
    code = dt_parse(LINK_CODE)
    assert dt_validate(code) == []
    assert code.crossings == 56
    assert code.component_sizes == (48, 4, 4)
    assert sorted(abs(e) for t in code.tuples for e in t) == list(range(2, 113, 2))


def test_small_codes():
    assert dt_validate(dt_parse("[(4,6,2)]")) == []
    problems = dt_validate(dt_parse("[(4,6,3)]"))
    assert any(p.startswith("odd entry") for p in problems)
    problems = dt_validate(dt_parse("[(4,4,2)]"))
    assert any(p.startswith("missing label") for p in problems)
    assert any(p.startswith("duplicated label") for p in problems)
    assert any(p.startswith("zero entry") for p in dt_validate(dt_parse("[(0,4)]")))


@pytest.mark.parametrize("text", ["(4,6,2)", "[(4,6,2)", "[(4,,2)]", "[(4,6,2)] x", "[4,6]"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        dt_parse(text)


def test_whitespace_and_newlines_ignored():
    assert dt_parse("[ ( 4 ,\n 6 , 2 ) ]") == dt_parse("[(4,6,2)]")


def test_realize_trefoil_and_figure_eight():
    t = dt_realize_knot(dt_parse("[(4,6,2)]"))
    assert len(t.crossings) == 3
    assert homfly(t) == homfly(trefoil())
    f = dt_realize_knot(dt_parse("[(4,6,8,2)]"))
    assert len(f.crossings) == 4
    assert homfly(f) == homfly(figure_eight())


def test_realize_errors():
    with pytest.raises(MultiComponent):
        dt_realize_knot(dt_parse(LINK_CODE))
    with pytest.raises(NonRealizable):
        dt_realize_knot(dt_parse("[(8,10,12,2,4,6)]"))
    with pytest.raises(NonRealizable):
        dt_realize_knot(dt_parse("[(4,6,3)]"))


def test_negative_entries_mirror():
    right = dt_realize_knot(dt_parse("[(4,6,2)]"))
    left = dt_realize_knot(dt_parse("[(-4,-6,-2)]"))
    assert homfly(left) == homfly(right).mirror()


def test_round_trip_on_knot_corpus():
    corpus = knot_corpus(max_crossings=8)
    assert len(corpus) >= 10
    for name, d in corpus.items():
        codes = pd_dt_codes(d)
        code = pd_to_dt(d)
        assert code in codes
        back = dt_realize_knot(code)
        # Equal up to relabeling: same set of DT codes over all base points.
        assert pd_dt_codes(back) == codes, name
        assert len(back.crossings) == len(d.crossings)
