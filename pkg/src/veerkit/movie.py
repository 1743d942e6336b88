"""Movie presentation of the transverse overtwisted disk built from a chain

    psi(alpha) = alpha_0 < alpha_1 < ... < alpha_k = alpha

of consecutive disjoint arcs.  Frames are t = 0, j/(k+1) -+ eps for
j = 1..k, and t = 1; eps is symbolic.  On each frame there is one b-arc, a
copy of alpha_j from *_C to w_j, and a-arcs from the other w_i.
"""
import json
import math
import re
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from xml.sax.saxutils import escape

from .arcs import Arc, RIGHT, compare_right, intersection_number


@dataclass
class Frame:
    t: str                 # '0', '1', or 'j/(k+1)-eps' style label
    index: int             # position in the movie
    b_arc: int             # which alpha_j is the b-arc
    a_arcs: list           # indices i of the w_i with an a-arc
    describing: int = None  # alpha_j drawn as describing arc (just before an event)


@dataclass
class Event:
    kind: str              # 'hyperbolic'
    j: int
    t: str
    sign: int
    describing_arc: int


@dataclass
class MoviePresentation:
    surface: dict
    boundary: int
    monodromy: str
    arcs: list             # alpha_0 .. alpha_k as json
    endpoints: list        # w_0 .. w_{k-1}
    frames: list = field(default_factory=list)
    events: list = field(default_factory=list)
    elliptic: list = field(default_factory=list)   # (point, sign)

    @property
    def k(self):
        return len(self.arcs) - 1

    def to_json(self):
        d = asdict(self)
        d['schema'] = 'veerkit.movie/1'
        return d

    @classmethod
    def from_json(cls, d):
        d = dict(d)
        d.pop('schema', None)
        frames = [Frame(**f) for f in d.pop('frames')]
        events = [Event(**e) for e in d.pop('events')]
        ell = [tuple(x) for x in d.pop('elliptic')]
        return cls(frames=frames, events=events, elliptic=ell, **d)


def _t(j, k, off=''):
    x = Fraction(j, k + 1)
    return str(x) + off


def emit_movie(psi, chain):
    arcs = list(chain.arcs if hasattr(chain, 'arcs') else chain)
    k = len(arcs) - 1
    if k < 1:
        raise ValueError('chain must have at least one link')
    s = psi.surface
    C = arcs[0].base
    for x, y in zip(arcs, arcs[1:]):
        if x.target[0] != 'C' or y.target[0] != 'C':
            raise ValueError('chain arcs must end on the boundary')
        if compare_right(x, y) != RIGHT or intersection_number(x, y) != 0:
            raise ValueError('chain is not increasing with disjoint consecutive arcs')
    if psi.apply(arcs[-1]) != arcs[0]:
        raise ValueError('first arc of the chain is not the image of the last')
    # w_i are pushed apart along the boundary; only their labels matter
    ends = ['w%d@C%d' % (i, arcs[i].target[1]) for i in range(k)]
    m = MoviePresentation(s.to_json(), C, psi.text(), [a.to_json() for a in arcs], ends)
    m.elliptic = [('*C%d' % C, -1)] + [(w, 1) for w in ends]
    idx = 0
    m.frames.append(Frame('0', idx, 0, list(range(1, k))))
    for j in range(1, k + 1):
        prev = j - 1
        idx += 1
        m.frames.append(Frame(_t(j, k, '-eps'), idx, prev,
                              [i for i in range(k) if i != prev % k], describing=j))
        m.events.append(Event('hyperbolic', j, _t(j, k), +1, j))
        idx += 1
        m.frames.append(Frame(_t(j, k, '+eps'), idx, j,
                              [i for i in range(k) if i != j % k]))
    idx += 1
    m.frames.append(Frame('1', idx, k, [i for i in range(k) if i != 0]))
    return m


def check_movie(m, psi=None):
    """Independent checks; returns a list of problems (empty if fine)."""
    bad = []
    k = m.k
    if k < 1:
        return ['empty chain']
    if len(m.frames) != 2 * k + 2:
        bad.append('expected %d frames, got %d' % (2 * k + 2, len(m.frames)))
    hyp = [e for e in m.events if e.kind == 'hyperbolic']
    if len(hyp) != k:
        bad.append('expected %d hyperbolic points' % k)
    if any(e.sign != 1 for e in hyp):
        bad.append('hyperbolic point with negative sign')
    pos = [p for p, sg in m.elliptic if sg > 0]
    neg = [p for p, sg in m.elliptic if sg < 0]
    if len(pos) != k or len(neg) != 1 or not neg[0].startswith('*C'):
        bad.append('elliptic points: %d positive, %d negative' % (len(pos), len(neg)))
    # each event swaps the b-arc for the next one in the chain
    for e in hyp:
        before = m.frames[2 * e.j - 1]
        after = m.frames[2 * e.j]
        if before.b_arc != e.j - 1 or after.b_arc != e.j or before.describing != e.j:
            bad.append('event %d does not replace alpha_%d by alpha_%d' % (e.j, e.j - 1, e.j))
        if sorted(before.a_arcs + [before.b_arc % k]) != list(range(k)):
            bad.append('frame %d does not use every endpoint once' % before.index)
    # Euler characteristic of the foliated surface: vertices minus saddles
    if len(m.elliptic) - len(hyp) != 1:
        bad.append('not a disk')
    # gluing: page 1 maps to page 0 under the monodromy
    f0, f1 = m.frames[0], m.frames[-1]
    if sorted(f0.a_arcs) != sorted(f1.a_arcs):
        bad.append('a-arcs of pages 0 and 1 differ')
    if psi is not None:
        from .arcs import arc_from_json
        s = psi.surface
        a0 = arc_from_json(s, m.arcs[f0.b_arc])
        ak = arc_from_json(s, m.arcs[f1.b_arc])
        if psi.apply(ak) != a0:
            bad.append('gluing check failed: psi(b-arc at t=1) != b-arc at t=0')
    return bad


# -- rendering -----------------------------------------------------------------------

_W, _H = 420, 300


def _arc_path(s, arc_json, shift=0.0):
    """A schematic drawing: objects on a horizontal axis, the arc as a
    polyline through the gaps it crosses above or below."""
    m = s['boundaries'] - 1 + s['punctures']
    xs = lambda k: 60 + (k - 0.5) * (_W - 120) / max(m, 1)
    pts = [(20, _H / 2)]
    y = _H / 2
    for tok in arc_json.get('tokens', '').split()[1:]:
        g = re.match(r'\((\w+),(above|below)\)', tok)
        if g:
            k = s['order'].index(g.group(1)) + 1 if g.group(1) in s['order'] else 1
            y = _H / 2 - 40 - shift if g.group(2) == 'above' else _H / 2 + 40 + shift
            pts.append((xs(k), y))
    pts.append((_W - 20, _H / 2 + (20 if y > _H / 2 else -20)))
    return ' '.join('%.1f,%.1f' % p for p in pts)


def render_svg(m):
    """One SVG 1.1 document per frame; the movie json rides along in a
    <metadata> element of every frame."""
    meta = json.dumps(m.to_json(), sort_keys=True)
    s = m.surface
    out = []
    for f in m.frames:
        parts = ['<?xml version="1.0" encoding="UTF-8"?>',
                 '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="%d" height="%d">' % (_W, _H),
                 '<metadata>%s</metadata>' % escape(meta),
                 '<title>t = %s</title>' % escape(f.t),
                 '<rect x="2" y="2" width="%d" height="%d" rx="30" fill="none" stroke="black"/>' % (_W - 4, _H - 4)]
        order = s['order']
        for k, lab in enumerate(order, 1):
            x = 60 + (k - 0.5) * (_W - 120) / max(len(order), 1)
            if lab.startswith('C'):
                parts.append('<circle cx="%.1f" cy="%d" r="12" fill="none" stroke="black"/>' % (x, _H // 2))
            else:
                parts.append('<circle cx="%.1f" cy="%d" r="3" fill="black"/>' % (x, _H // 2))
            parts.append('<text x="%.1f" y="%d" font-size="10">%s</text>' % (x - 6, _H // 2 + 26, escape(lab)))
        parts.append('<polyline class="b-arc" points="%s" fill="none" stroke="blue" stroke-width="2"/>'
                     % _arc_path(s, m.arcs[f.b_arc]))
        for i in f.a_arcs:
            y = 20 + 14 * i
            parts.append('<line class="a-arc" x1="%d" y1="%d" x2="%d" y2="%d" stroke="green"/>'
                         % (_W - 6, y, _W - 40, y))
            parts.append('<text x="%d" y="%d" font-size="9">%s</text>' % (_W - 70, y + 3, escape(m.endpoints[i])))
        if f.describing is not None:
            parts.append('<polyline class="describing" points="%s" fill="none" stroke="black" stroke-dasharray="4,3"/>'
                         % _arc_path(s, m.arcs[f.describing], shift=8))
        parts.append('<text x="10" y="%d" font-size="12">t = %s   %s</text>'
                     % (_H - 10, escape(f.t), escape(m.monodromy)))
        parts.append('</svg>')
        out.append('\n'.join(parts) + '\n')
    return out


def movie_from_svg(doc):
    g = re.search(r'<metadata>(.*?)</metadata>', doc, re.S)
    if not g:
        raise ValueError('no movie metadata in document')
    from xml.sax.saxutils import unescape
    return MoviePresentation.from_json(json.loads(unescape(g.group(1))))
