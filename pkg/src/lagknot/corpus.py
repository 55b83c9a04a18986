"""Named diagrams and seeded random families used by tests and the CLI."""

from __future__ import annotations

import random

from .diagram import PDCode, pd_connected_sum, pd_disjoint_union, pd_mirror
from .dtcode import dt_parse, dt_realize_knot
from .legendrian import FrontCross, FrontDiagram, LeftCusp, RightCusp, front_stabilize
from .tangledsl import dsl_compile, dsl_parse, load_template, template_instantiate

__all__ = [
    "unknot",
    "unlink",
    "trefoil",
    "left_trefoil",
    "figure_eight",
    "five_two",
    "hopf",
    "trefoil_padded",
    "twist_knot",
    "random_program",
    "random_diagrams",
    "named_diagrams",
    "knot_corpus",
    "link_corpus",
    "performance_sum",
    "front_trefoil",
    "random_front",
    "front_corpus",
]

TREFOIL_DSL = "width 2; cross 1 +; cross 1 +; cross 1 +; close trace"
HOPF_DSL = "width 2; twist 1 1; close trace"
# Three cancelling pairs woven into the braid word sigma_1^3.
TREFOIL_PADDED_DSL = (
    "width 2; cross 1 +; cross 1 +; cross 1 -; cross 1 +; cross 1 -; cross 1 +; "
    "cross 1 +; cross 1 -; cross 1 +; close trace"
)


def unknot() -> PDCode:
    return PDCode.unlink(1)


def unlink(n: int) -> PDCode:
    return PDCode.unlink(n)


def trefoil() -> PDCode:
    """Right-handed trefoil, the closure of three positive crossings."""
    return dsl_compile(dsl_parse(TREFOIL_DSL))


def left_trefoil() -> PDCode:
    return pd_mirror(trefoil())


def figure_eight() -> PDCode:
    return dt_realize_knot(dt_parse("[(4,6,8,2)]"))


def five_two() -> PDCode:
    return dt_realize_knot(dt_parse("[(4,8,10,2,6)]"))


def hopf() -> PDCode:
    """Positive Hopf link."""
    return dsl_compile(dsl_parse(HOPF_DSL))


def trefoil_padded() -> PDCode:
    """A 9-crossing diagram of the right trefoil."""
    return dsl_compile(dsl_parse(TREFOIL_PADDED_DSL))


def twist_knot(k: int) -> PDCode:
    return template_instantiate(load_template("twist_knot"), k, 0)


def random_program(rng: random.Random, max_crossings: int = 12) -> str:
    """Random trace or plat program with at most ``max_crossings`` crossings."""
    budget = rng.randint(1, max_crossings)
    if rng.random() < 0.5:
        width = rng.randint(1, 4)
        parts = [f"width {width}"]
        used = 0
        while used < budget and width > 1:
            i = rng.randint(1, width - 1)
            if rng.random() < 0.2 and used + 2 <= budget:
                parts.append(f"twist {i} {rng.choice((-1, 1))}")
                used += 2
            else:
                parts.append(f"cross {i} {rng.choice('+-')}")
                used += 1
        parts.append("close trace")
        return "; ".join(parts)
    width = rng.choice((2, 4))
    parts = [f"width {width}"]
    count = width
    used = 0
    while used < budget:
        r = rng.random()
        if r < 0.1 and count < 6:
            parts.append(f"cup {rng.randint(1, count + 1)}")
            count += 2
        elif r < 0.2 and count > 2:
            parts.append(f"cap {rng.randint(1, count - 1)}")
            count -= 2
        else:
            parts.append(f"cross {rng.randint(1, count - 1)} {rng.choice('+-')}")
            used += 1
    if count % 2:
        raise AssertionError("plat width parity broken")
    parts.append("close plat")
    return "; ".join(parts)


def random_diagrams(count: int = 40, seed: int = 20240611, max_crossings: int = 12):
    """Seeded tangle-compiled diagrams, each with at most ``max_crossings`` crossings."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        text = random_program(rng, max_crossings)
        out.append((text, dsl_compile(dsl_parse(text))))
    return out


def named_diagrams():
    base = {
        "unknot": unknot(),
        "trefoil": trefoil(),
        "figure_eight": figure_eight(),
        "five_two": five_two(),
        "hopf": hopf(),
        "trefoil_padded": trefoil_padded(),
    }
    out = dict(base)
    for name in ("trefoil", "figure_eight", "five_two", "hopf"):
        out[f"mirror_{name}"] = pd_mirror(base[name])
    out["trefoil#mirror_trefoil"] = pd_connected_sum(base["trefoil"], out["mirror_trefoil"])
    out["trefoil#figure_eight"] = pd_connected_sum(base["trefoil"], base["figure_eight"])
    out["five_two#hopf"] = pd_connected_sum(base["five_two"], base["hopf"])
    out["trefoil+figure_eight"] = pd_disjoint_union(base["trefoil"], base["figure_eight"])
    out["unlink3"] = unlink(3)
    for k in (-2, -1, 1, 2):
        out[f"twist_knot_{k}"] = twist_knot(k)
    return out


def link_corpus(random_count: int = 40):
    """Every corpus diagram: the named ones plus the random tangle family."""
    out = named_diagrams()
    for i, (_, d) in enumerate(random_diagrams(random_count)):
        out[f"random_{i:02d}"] = d
    return out


def knot_corpus(max_crossings: int = 8):
    return {name: d for name, d in link_corpus().items()
            if d.components == 1 and not d.free_loops and 0 < len(d.crossings) <= max_crossings}


def performance_sum() -> PDCode:
    """Trefoil # figure-eight # padded trefoil, 16 crossings."""
    return pd_connected_sum(pd_connected_sum(trefoil(), figure_eight()), trefoil_padded())


def front_trefoil() -> FrontDiagram:
    """Maximal-tb right trefoil front (tb = 1)."""
    return FrontDiagram((LeftCusp(1), LeftCusp(3), FrontCross(2), FrontCross(2),
                         FrontCross(2), RightCusp(1), RightCusp(1)))


def random_front(rng: random.Random, max_events: int = 14) -> FrontDiagram:
    """A random single-component front, occasionally stabilized."""
    while True:
        events = []
        count = 0
        while True:
            room = max_events - len(events)
            if count == 0 and events:
                break
            # Close up once the remaining room is only enough for right cusps.
            r = rng.random()
            if count and (room <= count // 2 + 1 or r < 0.3):
                events.append(RightCusp(rng.randint(1, count - 1)))
                count -= 2
            elif count >= 2 and r < 0.65:
                events.append(FrontCross(rng.randint(1, count - 1)))
            else:
                events.append(LeftCusp(rng.randint(1, count + 1)))
                count += 2
        orient = (rng.choice((1, -1)),)
        f = FrontDiagram(tuple(events), orient)
        if f.components != 1:
            continue
        for _ in range(rng.randint(0, 2)):
            widths = f.widths()
            at = rng.randint(1, len(widths) - 2)
            f = front_stabilize(f, rng.choice((1, -1)), rng.randint(1, widths[at]), at)
        return f


def front_corpus(count: int = 60, seed: int = 7):
    rng = random.Random(seed)
    return [random_front(rng) for _ in range(count)]
