"""Acceptance suite: one test per criterion, each prints a PASS/FAIL line.

Run directly (python3 tests/test_acceptance.py) or through pytest.
"""
import random
import sys
from fractions import Fraction

import pytest

from veerkit.arcs import (RIGHT, LEFT, EQUAL, compare_right, enumerate_arcs,
                          forget_arc, validate_bigon)
from veerkit.covers import build_double_cover, check_fdtc_scaling, lift_mapclass, HYPOTHESIS_VIOLATED
from veerkit.mcg import (MapClassWord, generator_letters, invert_letter, parse_braid_word,
                         parse_mapclass_word, push, random_word, stabilize_positively)
from veerkit.model import build_surface, seed_arcs
from veerkit.movie import check_movie, emit_movie, render_svg
from veerkit.order import conjecture_scan
from veerkit.veering import (NOT_VEERING, NO_WITNESS, fdtc_bounds, fdtc_snap,
                             find_left_witness, implication_battery,
                             is_quasi_right_veering)

SEED = 20240917


def annulus2():
    return build_surface(2, 2, 'C1 p1 p2')


def prop_family(s, k):
    return push(parse_braid_word(s, 'loop(p1,C1,+)^%d loop(p2,C1,-)^%d' % (k, k)))


# -- criteria ------------------------------------------------------------------------

def criterion_1():
    s = build_surface(1, 2)
    sigma = parse_mapclass_word(s, 's1')
    iv = fdtc_bounds(sigma, 0, 20)
    snap = fdtc_snap(iv, 8)
    ok = (iv.upper - iv.lower <= Fraction(1, 10) and iv.contains(Fraction(1, 2))
          and snap == Fraction(1, 2))
    return ok, 'interval [%s, %s], snap %s' % (iv.lower, iv.upper, snap)


def criterion_2():
    s = annulus2()
    notes = []
    ok = True
    for k in (1, 2, 3):
        phi = prop_family(s, k)
        want = 'T[C1]^-%d T[C1..p1]^%d T[C1..p2]^-%d' % (k, 2 * k, k)
        a = phi.text() == want
        iv = fdtc_bounds(phi, 1, 20)
        b = iv.contains(-k) and fdtc_snap(iv, 8) == -k
        c = find_left_witness(phi, 1, 'dd', 6) is not None
        q = is_quasi_right_veering(phi, 1, 6, stop_first=False)
        d = (q.value == NO_WITNESS and q.bound >= 6 and not q.unknown and len(q.rejected) > 0
             and all(v.reason == 'bigon' and validate_bigon(v.bigon) for _, v in q.rejected))
        ok &= a and b and c and d
        notes.append('k=%d print=%s fdtc=[%s,%s] dd-witness=%s qrv=%s(%d bigon)'
                     % (k, a, iv.lower, iv.upper, c, q.value, len(q.rejected)))
    return ok, '; '.join(notes)


def criterion_3():
    s = annulus2()
    chi = parse_mapclass_word(s, 'T[C1] T[C1..p1]^-3 T[C1..p2]')
    psi = prop_family(s, 1)
    prod = chi * psi
    target = parse_mapclass_word(s, 'T[C1..p1]^-1')
    probes = enumerate_arcs(s, 1, 'ddP', 4) + enumerate_arcs(s, 0, 'ddP', 4)
    same = all(prod.apply(a) == target.apply(a) for a in probes)
    v1 = is_quasi_right_veering(chi, 1, 6)
    v2 = is_quasi_right_veering(psi, 1, 6)
    v3 = is_quasi_right_veering(prod, 1, 6)
    chain_ok = v3.chain is not None and v3.chain.validate() and \
        v3.chain.arcs[0] == prod.apply(v3.witness) and v3.chain.arcs[-1] == v3.witness
    ok = same and v1.value == NO_WITNESS and v2.value == NO_WITNESS and \
        v3.value == NOT_VEERING and chain_ok
    return ok, 'chi:%s psi:%s chi*psi:%s (chain %s, probe equality on %d arcs %s)' % (
        v1.value, v2.value, v3.value, chain_ok, len(probes), same)


def criterion_4(n_words=500, bound=4):
    s = build_surface(3, 2)
    rng = random.Random(SEED)
    words = [random_word(s, rng.randint(1, 8), rng) for _ in range(n_words)]
    r = implication_battery(s, words, bound, 8)
    special = sum(1 for row in r['rows'] if row['special'])
    return not r['violations'], '%d words, bound %d, %d special cases, %d violations' % (
        n_words, bound, special, len(r['violations']))


def _pool(s, C, rng, extra=150):
    arcs = enumerate_arcs(s, C, 'ddP', 4)
    seeds = seed_arcs(s, C, 'ddP')
    for _ in range(extra):
        w = random_word(s, rng.randint(1, 4), rng)
        arcs.append(w.apply(rng.choice(seeds)))
    return list(dict.fromkeys(arcs))


def criterion_5(n_triples=10000):
    rng = random.Random(SEED + 5)
    setups = [(build_surface(1, 3), 0), (annulus2(), 0), (annulus2(), 1),
              (build_surface(3, 2), 0), (build_surface(3, 2), 2)]
    bad = 0
    per = n_triples // len(setups) + 1
    done = 0
    for s, C in setups:
        pool = _pool(s, C, rng)
        words = [random_word(s, rng.randint(1, 6), rng) for _ in range(10)]
        images = [{a: w.apply(a) for a in pool} for w in words]
        for _ in range(per):
            tri = [rng.choice(pool) for _ in range(3)]
            done += 1
            for x in tri:
                for y in tri:
                    v = compare_right(x, y)
                    if (v == EQUAL) != (x == y):
                        bad += 1
                    if v == RIGHT and compare_right(y, x) != LEFT:
                        bad += 1
                    for im in images:
                        if compare_right(im[x], im[y]) != v:
                            bad += 1
            a, b, c = tri
            for x, y, z in ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
                if compare_right(x, y) == RIGHT and compare_right(y, z) == RIGHT \
                        and compare_right(x, z) != RIGHT:
                    bad += 1
    return bad == 0, '%d triples x 10 words, %d violations' % (done, bad)


_SCANS = {}


def scans():
    if not _SCANS:
        s = annulus2()
        for C in (0, 1):
            _SCANS[C] = conjecture_scan(s, C, 4, keep=True)
    return _SCANS


def criterion_6():
    bad_chain = bad_bigon = both = 0
    tables = []
    for C, r in sorted(scans().items()):
        for a, b, v, big in r['records']:
            if v.value == 'YES' and not v.chain.validate():
                bad_chain += 1
            if v.bigon is not None and not validate_bigon(v.bigon):
                bad_bigon += 1
            if v.value == 'YES' and big is not None:
                both += 1
        tables.append('C%d: %d pairs, %d agree, %d counterexamples, %s' % (
            C, r['pairs'], r['agreements'], len(r['counterexamples']), r['verdicts']))
    ok = bad_chain == 0 and bad_bigon == 0 and both == 0
    return ok, 'bad chains %d, bad bigons %d, YES+bigon %d; %s' % (
        bad_chain, bad_bigon, both, ' | '.join(tables))


def criterion_7():
    counts = {RIGHT: 0, EQUAL: 0, LEFT: 0}
    for C, r in sorted(scans().items()):
        for a, b, v, big in r['records']:
            if v.value == 'YES':
                counts[compare_right(forget_arc(a), forget_arc(b))] += 1
    ok = counts[EQUAL] == 0 and counts[LEFT] == 0
    return ok, 'forgotten pairs: %d RIGHT, %d EQUAL, %d LEFT' % (
        counts[RIGHT], counts[EQUAL], counts[LEFT])


def criterion_8():
    s = build_surface(1, 2)
    cd = build_double_cover(s, {'p1': 'swap', 'p2': 'swap'})
    rep = check_fdtc_scaling(cd, parse_mapclass_word(s, 's1'), 0, 20, 8)
    a = rep['status'] == HYPOTHESIS_VIOLATED and '1 != 1/2' in rep['mismatch']
    t = build_surface(1, 3)
    cd3 = build_double_cover(t, {'p1': 'swap', 'p2': 'swap', 'p3': 'swap'})
    words = ['s1', 's2^-1', 's1 s2', 's2^-1 s1^-1', 's1 s2 s1', 'T[C0]',
             'T[C0]^-1 s1', 's1^3', 's1 s2 s1 s1 s2 s1', 'T[p1..p2]^2 T[C0]^-1']
    b = cd3.euler_characteristic == -1 and cd3.fully_ramified
    n_ok = 0
    for w in words:
        x = parse_mapclass_word(t, w)
        if lift_mapclass(cd3, x) is None:
            continue
        r = check_fdtc_scaling(cd3, x, 0, 30)
        if r['status'] == 'PASS' and r['downstairs']['n'] == 30:
            n_ok += 1
    b = b and n_ok == len(words)
    return a and b, '(a) %s mismatch %s; (b) %d/%d words pass at n=30' % (
        rep['status'], rep.get('mismatch'), n_ok, len(words))


def criterion_9():
    s = build_surface(1, 2)
    w = parse_mapclass_word(s, 's1^-1')
    before = find_left_witness(w, 0, 'dP', 3)
    st, _ = stabilize_positively(w, 0)
    after = {v: find_left_witness(st, 0, v, 8) for v in ('dd', 'dP', 'ddP')}
    ok = before is not None and all(x is None for x in after.values())
    return ok, 'before: %s; after %s: %s' % (
        before.text() if before is not None else None, st.text(),
        {k: (v is not None) for k, v in after.items()})


def criterion_10(total=20):
    rng = random.Random(SEED + 10)
    want = {1: 7, 2: 7, 3: 6}
    got = {1: 0, 2: 0, 3: 0}
    bad = []
    surfaces = [annulus2(), build_surface(2, 1), build_surface(3, 1)]
    tries = 0
    while sum(got.values()) < total and tries < 5000:
        tries += 1
        s = surfaces[tries % len(surfaces)]
        w = random_word(s, rng.randint(1, 5), rng)
        C = rng.choice(list(s.boundaries))
        q = is_quasi_right_veering(w, C, 4, use_certificate=False)
        if q.value != NOT_VEERING:
            continue
        k = len(q.chain)
        if k not in got or got[k] >= want[k]:
            continue
        got[k] += 1
        m = emit_movie(w, q.chain)
        hyp = [e for e in m.events if e.kind == 'hyperbolic']
        pos = [p for p, sg in m.elliptic if sg > 0]
        neg = [p for p, sg in m.elliptic if sg < 0]
        frames = render_svg(m)
        if len(hyp) != k or len(pos) != k or len(neg) != 1 or any(e.sign <= 0 for e in hyp) \
                or check_movie(m, w) or len(frames) != 2 * k + 2:
            bad.append((w.text(), C, k))
    ok = sum(got.values()) == total and not bad
    return ok, 'movies by chain length %s, %d invalid' % (got, len(bad))


def criterion_11(n_pairs=10000):
    rng = random.Random(SEED + 11)
    setups = [(build_surface(1, 3), 0), (annulus2(), 1), (build_surface(3, 2), 1),
              (build_surface(2, 3, 'p1 C1 p2 p3'), 0)]
    bad = 0
    per = n_pairs // len(setups) + 1
    for s, C in setups:
        pool = _pool(s, C, rng, 50)
        gens = generator_letters(s)
        for _ in range(per):
            a = rng.choice(pool)
            g = rng.choice(gens)
            gw = MapClassWord(s, [g])
            gi = MapClassWord(s, [invert_letter(g)])
            if gi.apply(gw.apply(a)) != a or gw.apply(gi.apply(a)) != a:
                bad += 1
    # relations on probe arcs
    rel_bad = 0
    checks = 0
    for s, C in setups:
        probes = _pool(s, C, rng, 30)
        pairs = []
        punct = [k for k in range(1, s.m) if s.is_puncture(k) and s.is_puncture(k + 1)]
        for i in punct:
            if i + 1 in punct:
                pairs.append(('s%d s%d s%d' % (i, i + 1, i), 's%d s%d s%d' % (i + 1, i, i + 1)))
            for j in punct:
                if j >= i + 2:
                    pairs.append(('s%d s%d' % (i, j), 's%d s%d' % (j, i)))
        blocks = [(lo, hi) for lo in range(1, s.m + 1) for hi in range(lo, s.m + 1)
                  if (lo, hi) != (1, s.m) and not (lo == hi and s.is_puncture(lo))]
        for x in blocks:
            for y in blocks:
                disjoint = x[1] < y[0] or y[1] < x[0]
                nested = (x[0] <= y[0] and y[1] <= x[1]) or (y[0] <= x[0] and x[1] <= y[1])
                if disjoint or nested:
                    tx = 'T[%s..%s]' % (s.label(x[0]), s.label(x[1]))
                    ty = 'T[%s..%s]' % (s.label(y[0]), s.label(y[1]))
                    pairs.append((tx + ' ' + ty, ty + ' ' + tx))
        for u, v in pairs:
            U, V = parse_mapclass_word(s, u), parse_mapclass_word(s, v)
            for a in probes:
                checks += 1
                if U.apply(a) != V.apply(a):
                    rel_bad += 1
    return bad == 0 and rel_bad == 0, '%d generator round trips: %d bad; %d relation checks: %d bad' % (
        per * len(setups), bad, checks, rel_bad)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


def _line(i, ok, detail):
    return 'criterion %2d: %s  %s' % (i, 'PASS' if ok else 'FAIL', detail)


@pytest.mark.parametrize('i', range(1, 12))
def test_criterion(i, capsys):
    ok, detail = CRITERIA[i - 1]()
    with capsys.disabled():
        print('\n' + _line(i, ok, detail))
    assert ok, detail


if __name__ == '__main__':
    failed = 0
    for i, f in enumerate(CRITERIA, 1):
        ok, detail = f()
        failed += not ok
        print(_line(i, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
