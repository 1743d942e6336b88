import itertools
import random

import pytest

from veerkit.arcs import (Arc, EQUAL, LEFT, RIGHT, _self_crossing, compare_right,
                          crossings, enumerate_arcs, find_boundary_right_P_bigon,
                          forget_arc, intersection_number, joint_tighten, loop_word,
                          parse_arc, validate_bigon, arc_from_json)
from veerkit.mcg import MapClassWord, random_word
from veerkit.model import build_surface, seed_arcs


def strip_count(k):
    """In the universal cover of the annulus (a strip) the co-core lifts to
    the vertical segments x = j; after k twists one lift runs from (0, 0) to
    (k, 1) and meets the verticals strictly between."""
    lo, hi = min(0, k), max(0, k)
    return sum(1 for j in range(lo + 1, hi))


@pytest.mark.parametrize('k', [-4, -3, -2, -1, 1, 2, 3, 4, 5])
def test_annulus_twists_against_strip(k):
    s = build_surface(2, 0)
    g = Arc(s, 0, (), ('C', 1))
    tk = MapClassWord(s, [('T0', k)]).apply(g)
    assert intersection_number(g, tk) == strip_count(k)
    assert compare_right(g, tk) == (RIGHT if k > 0 else LEFT)
    # the core twist seen from the hole is the same map
    assert MapClassWord(s, [('T', 1, 1, k)]).apply(g) == tk


def brute_force(s, C, L):
    out = set()
    letters = [x for k in range(1, s.m + 1) for x in (k, -k)]
    targets = s.targets(C, 'all')
    for n in range(L + 1):
        for w in itertools.product(letters, repeat=n):
            if any(w[i] == -w[i + 1] for i in range(n - 1)):
                continue
            for t in targets:
                a = Arc(s, C, w, t)
                if len(a.word) != n or a.is_trivial():
                    continue
                if not _self_crossing(a):
                    out.add(a)
    return out


@pytest.mark.parametrize('b,n,order,C', [(1, 2, None, 0), (2, 1, None, 1),
                                         (2, 2, 'C1 p1 p2', 0), (2, 2, 'p1 C1 p2', 1)])
def test_enumeration_matches_brute_force(b, n, order, C):
    s = build_surface(b, n, order)
    L = 4 if s.m <= 2 else 3
    assert set(enumerate_arcs(s, C, 'ddP', L)) == brute_force(s, C, L)


def _pool(s, C, rng, n=40):
    arcs = list(enumerate_arcs(s, C, 'ddP', 3))
    seeds = seed_arcs(s, C, 'ddP')
    for _ in range(n):
        arcs.append(random_word(s, rng.randint(1, 4), rng).apply(rng.choice(seeds)))
    return arcs


@pytest.mark.parametrize('b,n,order,C', [(1, 3, None, 0), (2, 2, 'C1 p1 p2', 1), (3, 1, None, 2)])
def test_kernel_count_matches_ideal_points(b, n, order, C):
    rng = random.Random(3)
    s = build_surface(b, n, order)
    pool = _pool(s, C, rng)
    for _ in range(400):
        a, c = rng.choice(pool), rng.choice(pool)
        if a == c:
            continue
        k = intersection_number(a, c)
        assert k == len(crossings(a, c)) == intersection_number(c, a)


def test_crossing_signs_are_antisymmetric():
    rng = random.Random(4)
    s = build_surface(1, 3)
    pool = _pool(s, 0, rng)
    for _ in range(200):
        a, b = rng.choice(pool), rng.choice(pool)
        if a == b:
            continue
        sa = sorted(c.sign for c in crossings(a, b))
        sb = sorted(-c.sign for c in crossings(b, a))
        assert sa == sb


def test_arc_literals_round_trip():
    s = build_surface(3, 2, 'C1 p1 C2 p2')
    for C in s.boundaries:
        for a in enumerate_arcs(s, C, 'ddP', 3):
            assert parse_arc(s, a.text()) == a
            assert arc_from_json(s, a.to_json()) == a
    assert parse_arc(s, '@C0 [1,-2] !C0') == Arc(s, 0, (1, -2), ('C', 0))
    with pytest.raises(ValueError):
        parse_arc(s, '@C0 e0+ (p2,below) !C0')
    with pytest.raises(ValueError):
        parse_arc(s, 'C0 e0+ !C1')
    with pytest.raises(ValueError, match='column'):
        parse_arc(s, '@C0 e0+ ?? !C1')


def test_self_crossing_words_are_rejected():
    s = build_surface(1, 2)
    assert not Arc(s, 0, (1, 1), ('C', 0)).is_embedded()
    assert Arc(s, 0, (1,), ('C', 0)).is_embedded()
    assert Arc(s, 0, (1, 2), ('C', 0)).is_trivial()


def test_order_basics():
    s = build_surface(2, 2, 'C1 p1 p2')
    arcs = enumerate_arcs(s, 1, 'ddP', 3)
    for a in arcs[:30]:
        assert compare_right(a, a) == EQUAL
        for b in arcs[:30]:
            if a != b:
                assert {compare_right(a, b), compare_right(b, a)} == {LEFT, RIGHT}
    with pytest.raises(ValueError):
        intersection_number(arcs[0], enumerate_arcs(s, 0, 'dd', 1)[0])


def test_bigon_certificates_validate():
    s = build_surface(1, 2)
    arcs = enumerate_arcs(s, 0, 'dd', 4)
    seen = 0
    for a in arcs:
        for b in arcs:
            if a != b and compare_right(a, b) == RIGHT:
                pair = joint_tighten(a, b)
                cert = find_boundary_right_P_bigon(a, b, pair)
                if cert is not None:
                    seen += 1
                    assert validate_bigon(cert)
                    assert loop_word(pair, cert.crossing_index) == cert.loop
                    assert cert.enclosed_punctures
    assert seen > 0
    with pytest.raises(ValueError):
        a, b = arcs[0], arcs[1]
        if compare_right(a, b) == RIGHT:
            a, b = b, a
        find_boundary_right_P_bigon(a, b)


def test_forget_arc():
    s = build_surface(2, 2, 'C1 p1 p2')
    a = Arc(s, 1, (2, 3), ('C', 0))
    f = forget_arc(a)
    assert f.surface.puncture_count == 0 and f.word == ()
    with pytest.raises(ValueError):
        forget_arc(Arc(s, 1, (), ('P', 2)))
