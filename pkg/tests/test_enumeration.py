import itertools
import json
import math
import random

import pytest

from kpqdraw.drawing import BipartiteContext, Skeleton, canonical_form, embeds_in, realized_surface, validate_good
from kpqdraw.duplication import zarankiewicz_number
from kpqdraw.enumeration import (
    EnumerationBudget,
    SchemeSpace,
    crossing_number,
    enumerate_crossing_configs,
    enumerate_good_drawings,
    enumerate_schemes,
    genus_search,
    independent_pairs,
    realize_by_schemes,
    realize_on_sphere,
    realizing_drawings,
    sample_drawing,
    sphere_drawings,
)
from kpqdraw.surface import (
    PROJECTIVE_PLANE,
    SPHERE,
    TORUS,
    Surface,
    bipartite_euler_bound,
    kmn_demigenus,
    kmn_genus,
)


def _config_key(cfg):
    return (tuple(frozenset(c) for c in cfg.crossings), tuple(sorted(cfg.edge_orders.items())))


def test_config_counts():
    assert len(list(enumerate_crossing_configs(3, 3, 0))) == 1
    assert len(list(enumerate_crossing_configs(2, 2, 1))) == 2
    assert len(list(enumerate_crossing_configs(3, 3, 1))) == 18


def test_configs_are_distinct_and_complete():
    ctx = BipartiteContext.standard(3, 3)
    pairs = independent_pairs(ctx)
    cfgs = list(enumerate_crossing_configs(3, 3, 2, ctx))
    assert len({_config_key(c) for c in cfgs}) == len(cfgs)
    expected = 0
    for chosen in itertools.combinations(pairs, 2):
        per_edge = [sum(e in pr for pr in chosen) for e in ctx.edges]
        expected += math.prod(math.factorial(n) for n in per_edge)
    assert len(cfgs) == expected
    for cfg in cfgs:
        for e, f in cfg.crossings:
            assert e[0] != f[0] and e[1] != f[1]


def test_scheme_counts_k23():
    sk = Skeleton.build(BipartiteContext.standard(2, 3), (), {})
    # a degree-3 vertex is pinned by default; pinning the degree-2 vertex b1 fixes nothing
    assert len(list(enumerate_schemes(sk, True))) == 2
    assert len(list(enumerate_schemes(sk, True, pin="b1"))) == 4
    assert len(list(enumerate_schemes(sk, True, pin=False))) == 4
    # cotree of K_{2,3}: 6 - 5 + 1 = 2 segments
    assert len(list(enumerate_schemes(sk, False))) == 8
    with pytest.raises(ValueError):
        SchemeSpace(sk, True, pin="zz")


def test_crossing_doubles_scheme_count():
    ctx = BipartiteContext.standard(2, 3)
    plain = SchemeSpace(Skeleton.build(ctx, (), {}), True)
    cfg = next(enumerate_crossing_configs(2, 3, 1, ctx))
    crossed = SchemeSpace(Skeleton.build(ctx, cfg.crossings, cfg.edge_orders), True)
    assert len(crossed) == 2 * len(plain)
    # one more vertex and two more edges: the cotree grows by one
    assert len(SchemeSpace(Skeleton.build(ctx, cfg.crossings, cfg.edge_orders), False)) == 2 * 2 * len(
        SchemeSpace(Skeleton.build(ctx, (), {}), False)
    )


def test_crossing_number_examples():
    assert crossing_number(3, 3, SPHERE) == 1
    assert crossing_number(3, 3, TORUS) == 0
    assert crossing_number(3, 3, PROJECTIVE_PLANE) == 0
    for q in range(1, 5):
        assert crossing_number(2, q, SPHERE) == 0


def test_both_sphere_routes_agree():
    assert crossing_number(3, 3, SPHERE, method="schemes") == 1
    for p, q, k in [(2, 3, 1), (3, 3, 1), (2, 4, 2), (3, 3, 2)]:
        ctx = BipartiteContext.standard(p, q)
        for cfg in enumerate_crossing_configs(p, q, k, ctx):
            a = realize_on_sphere(ctx, cfg)
            b = realize_by_schemes(ctx, cfg, SPHERE)
            assert (a is None) == (b is None)
            if a is not None:
                assert validate_good(a) == [] and realized_surface(a) == SPHERE


def test_crossing_number_budget():
    assert crossing_number(3, 3, SPHERE, EnumerationBudget(max_crossings=0)) is None
    with pytest.raises(ValueError):
        crossing_number(2, 2, SPHERE, method="magic")
    with pytest.raises(ValueError):
        EnumerationBudget(max_crossings=-1)


@pytest.mark.parametrize("p,q", [(2, 3), (3, 3), (3, 4)])
def test_monotone_in_surface(p, q):
    s0 = crossing_number(p, q, SPHERE)
    s1 = crossing_number(p, q, TORUS)
    n1 = crossing_number(p, q, PROJECTIVE_PLANE)
    assert s1 <= s0 and n1 <= s0
    assert s0 == zarankiewicz_number(p, q)


# isomorphism class counts, frozen from exhaustive runs
CLASS_COUNTS = [
    (2, 2, SPHERE, 0, 1),
    (2, 3, SPHERE, 0, 1),
    (2, 3, SPHERE, 1, 1),
    (3, 3, SPHERE, 0, 0),
    (3, 3, SPHERE, 1, 1),
    (3, 3, SPHERE, 2, 0),
    (3, 3, TORUS, 0, 2),
    (3, 3, PROJECTIVE_PLANE, 0, 1),
]


@pytest.mark.parametrize("p,q,sigma,k,count", CLASS_COUNTS)
def test_class_counts(p, q, sigma, k, count):
    res = enumerate_good_drawings(p, q, sigma, k, EnumerationBudget(max_seconds=600))
    assert not res.partial
    assert len(res.drawings) == count
    for d in res.drawings:
        assert validate_good(d) == []
        assert embeds_in(d, sigma)
        assert len(d.crossings) == k


def test_enumeration_independent_of_workers():
    one = enumerate_good_drawings(3, 3, TORUS, 0, EnumerationBudget(parallelism=1))
    two = enumerate_good_drawings(3, 3, TORUS, 0, EnumerationBudget(parallelism=2))
    assert one.keys == two.keys
    assert one.drawings == two.drawings
    assert crossing_number(3, 3, SPHERE, EnumerationBudget(parallelism=2)) == 1


def test_partial_results_are_flagged(tmp_path):
    res = enumerate_good_drawings(3, 3, SPHERE, 1, EnumerationBudget(max_seconds=0))
    assert res.partial
    manifest = json.loads(res.write(tmp_path).read_text())
    assert manifest["budget_status"] == "partial"
    full = enumerate_good_drawings(2, 3, SPHERE, 1)
    manifest = json.loads(full.write(tmp_path / "full").read_text())
    assert manifest["counts"] == {"1": 1}
    assert manifest["budget_status"] == "complete"
    assert (tmp_path / "full" / manifest["files"][0]).exists()


def test_genus_search_examples():
    assert genus_search(3, 3) == 1
    assert genus_search(2, 5) == 0
    assert genus_search(3, 4) == 1
    assert genus_search(4, 4) == 1
    assert genus_search(3, 3, non_orientable=True) == 1
    assert genus_search(3, 4, non_orientable=True) == 1


@pytest.mark.parametrize("m,n", [(2, 2), (2, 4), (3, 3), (3, 4), (4, 4)])
def test_genus_search_matches_formula(m, n):
    g = genus_search(m, n)
    assert g == kmn_genus(m, n)
    assert 2 * g >= bipartite_euler_bound(m + n, m * n)


def test_genus_search_reports_timeout():
    assert genus_search(4, 4, non_orientable=True, budget=EnumerationBudget(max_seconds=0)) is None


def test_demigenus_k35():
    assert genus_search(3, 5, non_orientable=True) == kmn_demigenus(3, 5) == 2


def test_sample_drawing_surface_is_realized():
    rng = random.Random(2)
    for _ in range(50):
        d = sample_drawing(3, 3, rng.randint(0, 4), rng)
        assert d.surface == realized_surface(d)
        o = sample_drawing(3, 3, 2, rng, orientable_only=True)
        assert o.surface.orientable
    with pytest.raises(ValueError):
        sample_drawing(2, 2, 3, rng)


def test_sphere_drawings_limit():
    some, complete = sphere_drawings(3, 4, 3, limit=2)
    assert len(some) == 2 and not complete
    all_k2, complete = sphere_drawings(3, 4, 2)
    assert complete and len(all_k2) >= 1
    assert all(realized_surface(d) == SPHERE for d in all_k2)


def test_surface_parsed_target_is_respected():
    res = enumerate_good_drawings(2, 2, Surface.parse("S0"), 1)
    assert all(d.surface == SPHERE for d in res.drawings)


@pytest.mark.parametrize("p,q,sigma,k", [(3, 3, TORUS, 0), (2, 3, SPHERE, 1), (2, 3, PROJECTIVE_PLANE, 1)])
def test_pinning_loses_no_classes(p, q, sigma, k):
    ctx = BipartiteContext.standard(p, q)
    unpinned = {
        canonical_form(d)
        for cfg in enumerate_crossing_configs(p, q, k, ctx)
        for d in realizing_drawings(ctx, cfg, sigma, pin=False)
    }
    assert set(enumerate_good_drawings(p, q, sigma, k).keys) == unpinned
