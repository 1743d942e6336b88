import random
import xml.etree.ElementTree as ET

import pytest

from veerkit.mcg import parse_mapclass_word, random_word
from veerkit.model import build_surface
from veerkit.movie import MoviePresentation, check_movie, emit_movie, movie_from_svg, render_svg
from veerkit.veering import NOT_VEERING, is_quasi_right_veering


def _chain(text, C=0, surface=None):
    s = surface or build_surface(2, 2, 'C1 p1 p2')
    w = parse_mapclass_word(s, text)
    q = is_quasi_right_veering(w, C, 4, use_certificate=False)
    assert q.value == NOT_VEERING
    return w, q.chain


def test_single_link_movie():
    w, chain = _chain('T[C1]^-1')
    m = emit_movie(w, chain)
    assert m.k == 1 and len(m.frames) == 4
    assert [f.t for f in m.frames] == ['0', '1/2-eps', '1/2+eps', '1']
    assert check_movie(m, w) == []
    assert sum(1 for _, sg in m.elliptic if sg < 0) == 1


def test_longer_chains():
    rng = random.Random(4)
    s = build_surface(3, 1)
    seen = set()
    for _ in range(400):
        w = random_word(s, rng.randint(1, 5), rng)
        q = is_quasi_right_veering(w, 0, 4, use_certificate=False)
        if q.value != NOT_VEERING or len(q.chain) in seen:
            continue
        k = len(q.chain)
        seen.add(k)
        m = emit_movie(w, q.chain)
        assert len(m.frames) == 2 * k + 2 and len(m.events) == k
        assert check_movie(m, w) == []
    assert seen


def test_rejects_bad_chains():
    w, chain = _chain('T[C1]^-1')
    arcs = list(chain.arcs)
    with pytest.raises(ValueError):
        emit_movie(w, arcs[:1])
    with pytest.raises(ValueError):
        emit_movie(w, arcs[::-1])


def test_check_catches_tampering():
    w, chain = _chain('T[C1]^-1')
    m = emit_movie(w, chain)
    m.events[0].sign = -1
    m.elliptic.append(('w9', 1))
    probs = check_movie(m, w)
    assert any('negative' in p for p in probs) and 'not a disk' in probs


def test_svg_round_trip():
    w, chain = _chain('T[C1..p1]^-1 s2', C=1)
    m = emit_movie(w, chain)
    docs = render_svg(m)
    assert len(docs) == len(m.frames)
    for doc in docs:
        root = ET.fromstring(doc.split('\n', 1)[1])
        assert root.get('version') == '1.1'
        assert root.find('{http://www.w3.org/2000/svg}metadata') is not None
    back = movie_from_svg(docs[0])
    assert back.to_json() == m.to_json()
    assert MoviePresentation.from_json(m.to_json()).to_json() == m.to_json()
    with pytest.raises(ValueError):
        movie_from_svg('<svg/>')
