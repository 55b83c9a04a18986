import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lagknot.corpus import figure_eight, front_corpus, front_trefoil, hopf, knot_corpus, trefoil, unknot
from lagknot.diagram import pd_mirror
from lagknot.errors import (
    DomainError,
    InvalidFront,
    InvalidPosition,
    MultiComponent,
    NotATorusKnot,
    ParseError,
    ZeroPolynomial,
)
from lagknot.homfly import homfly
from lagknot.laurent import ONE, LaurentPoly2, parse_poly
from lagknot.legendrian import (
    FrontCross,
    FrontDiagram,
    LeftCusp,
    RightCusp,
    front_connected_sum,
    front_double_stabilize,
    front_format,
    front_invariants,
    front_parse,
    front_stabilize,
    front_unknot,
    mfw_sl_sum_bound,
    obstruct_chantraine,
    obstruct_generalized_square,
    obstruct_kkbar,
    sl_sum_formula,
    tb_generalized_square,
    torus_tb,
)

FRONTS = front_corpus()


def inv(f):
    i = front_invariants(f)
    return i.tb, i.rot


def test_unknot_invariants():
    i = front_invariants(front_unknot())
    assert (i.tb, i.rot, i.sl_plus) == (-1, 0, -1)


def test_stabilizations():
    u = front_unknot()
    assert inv(front_stabilize(u, 1)) == (-2, 1)
    assert inv(front_stabilize(u, -1)) == (-2, -1)
    assert inv(front_double_stabilize(u)) == (-3, 0)
    assert inv(front_double_stabilize(front_double_stabilize(u))) == (-5, 0)
    with pytest.raises(InvalidPosition):
        front_stabilize(u, 1, position=3)
    with pytest.raises(InvalidPosition):
        front_double_stabilize(u, at=5)


def test_trefoil_front():
    assert inv(front_trefoil()) == (1, 0)


def test_connected_sum_examples():
    u = front_unknot()
    assert inv(front_connected_sum(u, u)) == (-1, 0)
    assert inv(front_connected_sum(u, front_double_stabilize(u))) == (-3, 0)
    plus, minus = front_stabilize(u, 1), front_stabilize(u, -1)
    assert inv(front_connected_sum(plus, minus)) == (-3, 0)
    assert inv(front_connected_sum(front_trefoil(), front_trefoil())) == (3, 0)


def test_multi_component_fronts_are_rejected():
    two = FrontDiagram((LeftCusp(1), LeftCusp(3), RightCusp(3), RightCusp(1)))
    assert two.components == 2
    with pytest.raises(MultiComponent):
        front_invariants(two)
    with pytest.raises(MultiComponent):
        front_connected_sum(two, front_unknot())


def test_invalid_fronts():
    with pytest.raises(InvalidFront):
        FrontDiagram((LeftCusp(1),))
    with pytest.raises(InvalidFront):
        FrontDiagram((LeftCusp(1), FrontCross(2), RightCusp(1)))
    with pytest.raises(InvalidFront):
        FrontDiagram((RightCusp(1),))


def test_front_text_round_trip():
    text = "width 0\nlcusp 1\nlcusp 3\nfcross 2\nfcross 2\nfcross 2\nrcusp 1\nrcusp 1\n"
    f = front_parse(text)
    assert f == front_trefoil()
    assert front_parse(front_format(f)) == f
    for f in FRONTS[:20]:
        assert front_parse(front_format(f)) == f
    with pytest.raises(ParseError):
        front_parse("width 0\nlcusp x\n")


def test_sl_conventions():
    i = front_invariants(front_stabilize(front_unknot(), 1))
    assert i.format("plus") == "tb=-2 rot=1 sl=tb+rot=-1"
    assert i.format("minus") == "tb=-2 rot=1 sl=tb-rot=-3"


@settings(max_examples=50, deadline=None)
@given(st.integers(0, len(FRONTS) - 1), st.integers(0, len(FRONTS) - 1))
def test_connected_sum_formulas(i, j):
    a, b = FRONTS[i], FRONTS[j]
    ia, ib = front_invariants(a), front_invariants(b)
    s = front_invariants(front_connected_sum(a, b))
    assert s.tb == ia.tb + ib.tb + 1
    assert s.rot == ia.rot + ib.rot
    assert s.sl_plus == sl_sum_formula(ia.sl_plus, ib.sl_plus)


def test_unknot_is_the_unit():
    for f in FRONTS:
        assert inv(front_connected_sum(f, front_unknot())) == inv(f)
        assert inv(front_connected_sum(front_unknot(), f)) == inv(f)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, len(FRONTS) - 1), st.integers(0, 10 ** 6))
def test_zigzag_pair_round_trip(i, seed):
    f = FRONTS[i]
    rng = random.Random(seed)
    widths = f.widths()
    at = rng.randrange(1, len(widths) - 1)
    position = rng.randint(1, widths[at])
    g = front_double_stabilize(f, position, at)
    assert inv(g) == (inv(f)[0] - 2, inv(f)[1])
    restored = FrontDiagram(g.events[:at] + g.events[at + 4:], f.orientation)
    assert restored == f and inv(restored) == inv(f)


def test_torus_tb():
    assert torus_tb(3, 2) == 1
    assert torus_tb(-3, 2) == -6
    with pytest.raises(NotATorusKnot):
        torus_tb(4, 2)
    with pytest.raises(NotATorusKnot):
        torus_tb(3, 1)


def test_generalized_square():
    assert tb_generalized_square(3, 2) == -4
    assert tb_generalized_square(5, 2) == -6
    assert tb_generalized_square(5, 3) == -7
    for bad in [(2, 3), (4, 2), (3, 1)]:
        with pytest.raises(DomainError):
            tb_generalized_square(*bad)


def test_sl_sum_formula():
    assert sl_sum_formula(-1, -1) == -1
    assert sl_sum_formula(1, -5) == -3
    assert all(sl_sum_formula(-1, s) == s for s in range(-9, 9))


def test_mfw_bound():
    assert mfw_sl_sum_bound(ONE) == -2
    assert mfw_sl_sum_bound(parse_poly("-v^4 + 2*v^2 + v^2*z^2")) == -4
    assert mfw_sl_sum_bound(homfly(figure_eight())) == -6
    with pytest.raises(ZeroPolynomial):
        mfw_sl_sum_bound(LaurentPoly2())


def test_kkbar_reports():
    r = obstruct_kkbar(trefoil())
    assert r.obstructed and str(r) == "kkbar obstructed :: span_v=2, bound=-4, requires -1"
    assert str(obstruct_kkbar(unknot())) == "kkbar consistent :: P=1"
    assert obstruct_kkbar(figure_eight()).verdict("kkbar") == "obstructed"
    with pytest.raises(MultiComponent):
        obstruct_kkbar(hopf())


def test_kkbar_is_mirror_stable():
    for name, d in knot_corpus().items():
        assert (obstruct_kkbar(d).verdict("kkbar")
                == obstruct_kkbar(pd_mirror(d)).verdict("kkbar")), name


def test_chantraine():
    assert obstruct_chantraine(1).obstructed
    assert str(obstruct_chantraine(1)) == "chantraine obstructed :: tb_witness=1 >= 0, TB must be -1"
    for t in (-1, -6):
        r = obstruct_chantraine(t)
        assert r.inapplicable_only and not r.obstructed


def test_report_composition():
    r = obstruct_kkbar(unknot()) + obstruct_chantraine(-1) + obstruct_generalized_square(3, 2)
    assert r.lines()[2] == "generalized_square obstructed :: TB(Q)=-4 < -1"
    assert r.obstructed and not r.inapplicable_only
    with pytest.raises(KeyError):
        r.verdict("nothing")
