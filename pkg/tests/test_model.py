import json

import pytest

from veerkit import freegroup as fg
from veerkit.model import build_surface, load_surface, seed_arcs


def test_free_group_basics():
    assert fg.reduce([1, -1, 2, 3, -3]) == (2,)
    w = (1, 2, -3)
    assert fg.mul(w, fg.inverse(w)) == ()
    assert fg.power((1, 2), -2) == (-2, -1, -2, -1)
    assert fg.substitute((1, -2), {1: (2,), 2: (1, 2)}) == (-1,)
    assert fg.delete_letters((1, 2, -1, 3), {1}) == (2, 3)
    assert fg.exponent_sums((1, 2, -1, 2)) == {2: 2}


def test_build_surface_orders():
    s = build_surface(2, 2)
    assert s.order == ('C1', 'p1', 'p2')
    t = build_surface(2, 2, 'p1 C1 p2')
    assert t.position['C1'] == 2 and t.is_hole(2) and t.is_puncture(1)
    assert t.m == 3 and list(t.boundaries) == [0, 1]
    with pytest.raises(ValueError):
        build_surface(0, 2)
    with pytest.raises(ValueError):
        build_surface(2, 2, 'C1 p1 p3')


def test_euler_characteristic():
    assert build_surface(1, 0).euler_characteristic == 1
    assert build_surface(2, 2).euler_characteristic == -2
    assert build_surface(3, 2).euler_characteristic == -3


def test_load_surface(tmp_path):
    d = {'boundaries': 2, 'punctures': 1, 'order': ['p1', 'C1']}
    p = tmp_path / 's.json'
    p.write_text(json.dumps(d))
    assert load_surface(str(p)) == load_surface(d) == build_surface(2, 1, ['p1', 'C1'])
    assert load_surface(d).to_json() == d


def test_seed_arcs_are_embedded_and_nontrivial():
    for s in (build_surface(1, 2), build_surface(2, 2, 'C1 p1 p2'), build_surface(3, 2)):
        for C in s.boundaries:
            for kind in ('dd', 'dP'):
                seeds = seed_arcs(s, C, kind)
                assert seeds
                assert len(set(seeds)) == len(seeds)
                for a in seeds:
                    assert a.is_embedded() and not a.is_trivial()
                    assert a.kind == kind


def test_seed_kind_aliases():
    s = build_surface(2, 2)
    assert seed_arcs(s, 0, 'boundary-to-boundary') == seed_arcs(s, 0, 'dd')
    assert seed_arcs(s, 1, 'boundary-to-puncture') == seed_arcs(s, 1, 'dP')
    with pytest.raises(ValueError):
        seed_arcs(s, 2, 'dd')
