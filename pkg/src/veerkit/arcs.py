"""Arcs as reduced words plus a terminal half-edge.

An arc based at C runs from the base point of C up into the hub of the
reference model, follows the loop word, and then drops onto its endpoint
along the terminal half-edge.  Lifted to the universal cover this is a path
in a ribbon tree, and every question below (side of an arc near the base,
crossings of lifts, bigons) is answered by comparing such paths.

Sign convention for crossings: +1 when the second arc crosses the first from
its right to its left.
"""
import re
from dataclasses import dataclass, field

from . import freegroup as fg
from .model import ModelToken, parse_label


LEFT, EQUAL, RIGHT = 'LEFT', 'EQUAL', 'RIGHT'


class Arc:
    __slots__ = ('surface', 'base', 'word', 'target', '_h', 'h0', 'terminal')

    def __init__(self, surface, base, word, target):
        word = fg.reduce(word)
        if target[0] == 'P':
            k = target[1]
            i = len(word)
            while i and abs(word[i - 1]) == k:
                i -= 1
            word = word[:i]
        self.surface = surface
        self.base = base
        self.word = word
        self.target = tuple(target)
        self._h = None
        self.h0 = surface.base_half(base)
        self.terminal = surface.terminal_half(base, self.target)

    def key(self):
        return (self.base, self.target, self.word)

    def __eq__(self, other):
        return (isinstance(other, Arc) and self.surface == other.surface
                and self.key() == other.key())

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.surface, self.key()))
        return self._h

    def __repr__(self):
        return 'Arc(%s)' % self.text()

    def __len__(self):
        return len(self.word)

    def sort_key(self):
        return (len(self.word), self.target, self.word)

    @property
    def kind(self):
        return 'dP' if self.target[0] == 'P' else 'dd'

    def out_halves(self):
        li = self.surface.letter_index
        m = self.surface.m
        return [li[m + x] for x in self.word] + [self.terminal]

    def in_halves(self):
        li = self.surface.letter_index
        m = self.surface.m
        return [self.h0] + [li[m - x] for x in self.word]

    def is_trivial(self):
        """Boundary-parallel arcs returning to their own boundary."""
        if self.target != ('C', self.base):
            return False
        return self.word == () or self.word == self.surface.boundary_word(self.base)

    def is_embedded(self):
        from .accel import self_crosses
        return not self_crosses(self.surface, self.word, self.terminal, self.h0)

    def text(self):
        return tokens_text(arc_tokens(self))

    def to_json(self):
        return {'base': 'C%d' % self.base, 'word': list(self.word),
                'target': self.surface.target_label(self.target),
                'tokens': self.text()}


# -- comparing paths in the ribbon tree ------------------------------------

def cmp_paths(s, h0, w1, t1, w2, t2):
    """-1 if path (w1, t1) leaves to the left of (w2, t2), 0 if equal, 1 else.

    Both paths start at the same vertex, entered through half-edge h0.
    """
    N = s.N
    li = s.letter_index
    m = s.m
    h = h0
    L1, L2 = len(w1), len(w2)
    i = 0
    while True:
        o1 = li[m + w1[i]] if i < L1 else t1
        o2 = li[m + w2[i]] if i < L2 else t2
        if o1 != o2:
            k1 = (o1 - h) % N
            k2 = (o2 - h) % N
            return -1 if k1 < k2 else 1
        if i >= L1 or i >= L2:
            return 0
        h = li[m - w1[i]]
        i += 1


def compare_right(a, b):
    """RIGHT when b lies on the right of a near the base point (a < b)."""
    if a.surface != b.surface or a.base != b.base:
        raise ValueError('arcs must share surface and base point')
    c = cmp_paths(a.surface, a.h0, a.word, a.terminal, b.word, b.terminal)
    return RIGHT if c < 0 else (EQUAL if c == 0 else LEFT)


def precedes(a, b):
    return compare_right(a, b) == RIGHT


def _ideal(s, w, h):
    # endpoints at a puncture only see the cusp, not the vertex
    if h in s.cusp_halves:
        k = s.half_edges[h][1]
        i = len(w)
        while i and abs(w[i - 1]) == k:
            i -= 1
        w = w[:i]
    return w, h


# -- crossings -------------------------------------------------------------

@dataclass
class Crossing:
    g: tuple            # deck element: the crossing lift of b is g.b~
    sign: int
    s: int              # vertex index along a where the lifts meet
    t: int              # vertex index along b
    left_end: tuple = field(repr=False, default=None)
    right_end: tuple = field(repr=False, default=None)


def _lift_crossing(a, b, g):
    """Crossing record for the lift g.b~ against a~, or None."""
    s = a.surface
    h0 = a.h0
    ta = a.terminal
    aw = a.word
    b0 = _ideal(s, g, b.h0)
    b1 = _ideal(s, fg.mul(g, b.word), b.terminal)
    a1 = (aw, ta)
    # a0 is the empty path leaving through h0 itself: the cut point
    pts = []
    for w, h in (b0, b1):
        if w == () and h == h0:
            return None
        c = cmp_paths(s, h0, w, h, aw, ta)
        if c == 0:
            return None
        pts.append(c)
    if pts[0] == pts[1]:
        return None
    sign = 1 if pts[0] > 0 else -1
    left, right = (b0, b1) if pts[0] < 0 else (b1, b0)
    return Crossing(g, sign, -1, -1, left, right)


def _candidate_lifts(a, b, skip_identity):
    out = {}
    aw, bw = a.word, b.word
    pa = [()]
    for x in aw:
        pa.append(pa[-1] + (x,))
    pb = [()]
    for x in bw:
        pb.append(pb[-1] + (x,))
    pbi = [fg.inverse(p) for p in pb]
    for i, p in enumerate(pa):
        for j, q in enumerate(pbi):
            g = fg.mul(p, q)
            if skip_identity and g == ():
                continue
            if g not in out:
                out[g] = (i, j)
    return out


_CROSS = {}


def crossings(a, b):
    """Crossings of a with b in minimal position, ordered along a."""
    key = (a, b)
    res = _CROSS.get(key)
    if res is None:
        res = _crossings(a, b)
        if len(_CROSS) > 200000:
            _CROSS.clear()
        _CROSS[key] = res
    return list(res)


def _crossings(a, b):
    s = a.surface
    if b.surface != s:
        raise ValueError('surface mismatch')
    same = a == b
    res = []
    for g, (i, j) in _candidate_lifts(a, b, same).items():
        c = _lift_crossing(a, b, g)
        if c is not None:
            c.s, c.t = i, j
            res.append(c)
    h0 = a.h0

    import functools

    def order(c1, c2):
        r = cmp_paths(s, h0, c1.left_end[0], c1.left_end[1],
                      c2.left_end[0], c2.left_end[1])
        if r == 0:
            r = -cmp_paths(s, h0, c1.right_end[0], c1.right_end[1],
                           c2.right_end[0], c2.right_end[1])
        return r
    res.sort(key=functools.cmp_to_key(order))
    return res


def _self_crossing(a):
    for g in _candidate_lifts(a, a, True):
        if _lift_crossing(a, a, g) is not None:
            return True
    return False


_INUM = {}


def intersection_number(a, b):
    """Geometric intersection number of the interiors."""
    if a.surface != b.surface:
        raise ValueError('surface mismatch')
    if a.base != b.base:
        raise ValueError('arcs with different base points are not supported')
    if a == b:
        return 0
    key = (a, b)
    n = _INUM.get(key)
    if n is None:
        from .accel import crossing_count
        n = crossing_count(a.surface, a.word, a.terminal, b.word, b.terminal, a.h0)
        if len(_INUM) > 2000000:
            _INUM.clear()
        _INUM[key] = n
    return n


@dataclass
class EfficientPair:
    first: Arc
    second: Arc
    crossings: list

    def __len__(self):
        return len(self.crossings)


def joint_tighten(a, b):
    return EfficientPair(a, b, crossings(a, b))


def loop_word(pair, q):
    """Based loop along the first arc to crossing q and back along the second."""
    return pair.crossings[q].g


@dataclass
class BigonCertificate:
    crossing_index: int
    loop: tuple
    enclosed_punctures: list
    side: str = 'right'
    first: Arc = None
    second: Arc = None

    def to_json(self):
        s = self.first.surface
        return {'crossing_index': self.crossing_index, 'loop_word': list(self.loop),
                'enclosed_punctures': [s.label(k) for k in self.enclosed_punctures],
                'side': self.side}


def is_bigon_loop(s, g):
    if g == ():
        return False
    holes_only = fg.reduce(x for x in g if s.is_hole(abs(x)))
    return holes_only == ()


def find_boundary_right_P_bigon(a, b, pair=None):
    if compare_right(a, b) != RIGHT:
        raise ValueError('need a < b')
    s = a.surface
    if pair is None:
        pair = joint_tighten(a, b)
    for q, c in enumerate(pair.crossings):
        if c.sign > 0 and is_bigon_loop(s, c.g):
            enclosed = sorted({abs(x) for x in c.g if s.is_puncture(abs(x))})
            return BigonCertificate(q, c.g, enclosed, 'right', a, b)
    return None


def validate_bigon(cert):
    a, b = cert.first, cert.second
    if compare_right(a, b) != RIGHT:
        return False
    pair = joint_tighten(a, b)
    if not 0 <= cert.crossing_index < len(pair):
        return False
    c = pair.crossings[cert.crossing_index]
    return (c.g == cert.loop and c.sign > 0 and is_bigon_loop(a.surface, c.g)
            and len(cert.enclosed_punctures) > 0)


def forget_arc(a, target_surface=None):
    """Image of a in the surface with the punctures filled in."""
    from .mcg import forgotten_surface
    s = a.surface
    if a.target[0] == 'P':
        raise ValueError('cannot forget the endpoint of an arc ending at a puncture')
    t, remap = forgotten_surface(s)
    w = tuple((1 if x > 0 else -1) * remap[abs(x)] for x in a.word if s.is_hole(abs(x)))
    return Arc(t, a.base, w, a.target)


# -- arc literals ------------------------------------------------------------

def _coord(region, side):
    return 0 if region == 0 else (2 * region - (1 if side == 'L' else 0))


def arc_from_tokens(s, base, tokens):
    """Read a token path into an arc (free reduction does the tightening)."""
    if base == 0:
        region, side = 0, 'R'
    else:
        region, side = s.hole_pos(base), 'L'
    word = []
    target = None
    for n, tok in enumerate(tokens):
        if target is not None:
            raise ValueError('token after terminal at position %d' % n)
        if tok.kind == 'wall':
            i = tok.ref
            if not 0 <= i < s.m:
                raise ValueError('wall e%d out of range' % i)
            if tok.arg > 0:
                if region != i or (i > 0 and side != 'R'):
                    raise ValueError('cannot cross e%d rightwards from here (token %d)' % (i, n))
                region, side = i + 1, 'L'
            else:
                if region != i + 1 or side != 'L':
                    raise ValueError('cannot cross e%d leftwards from here (token %d)' % (i, n))
                region, side = i, 'R'
        elif tok.kind == 'pass':
            if tok.ref not in s.position:
                raise ValueError('unknown object %s' % tok.ref)
            k = s.position[tok.ref]
            if k != region:
                raise ValueError('object %s is not in the current region (token %d)' % (tok.ref, n))
            if tok.arg not in ('above', 'below'):
                raise ValueError('side must be above or below')
            if tok.arg == 'below':
                word.append(k if side == 'L' else -k)
            side = 'R' if side == 'L' else 'L'
        else:
            kind, j = parse_label(tok.ref)
            if kind == 'p':
                if tok.ref not in s.position:
                    raise ValueError('unknown puncture %s' % tok.ref)
                k = s.position[tok.ref]
                if region != k:
                    raise ValueError('puncture %s not reachable from here' % tok.ref)
                target = ('P', k)
            else:
                if not 0 <= j < s.boundary_count:
                    raise ValueError('unknown boundary %s' % tok.ref)
                if j == base:
                    if j == 0 and (region, side) != (s.m, 'R'):
                        raise ValueError('return to C0 must come from the far right')
                    if j != 0 and region != s.hole_pos(j):
                        raise ValueError('return to %s from the wrong region' % tok.ref)
                elif j == 0:
                    if region != 0:
                        raise ValueError('C0 base point reached from the wrong region')
                elif region != s.hole_pos(j):
                    raise ValueError('%s not reachable from here' % tok.ref)
                target = ('C', j)
    if target is None:
        raise ValueError('arc literal has no terminal')
    return Arc(s, base, word, target)


def _walk(toks, cur, dest):
    c0, c1 = _coord(*cur), _coord(*dest)
    c = c0
    while c < c1:
        if c % 2 == 0:
            toks.append(ModelToken('wall', c // 2, 1))
        else:
            toks.append(ModelToken('pass', (c + 1) // 2, 'above'))
        c += 1
    while c > c1:
        if c % 2 == 1:
            toks.append(ModelToken('wall', (c - 1) // 2, -1))
        else:
            toks.append(ModelToken('pass', c // 2, 'above'))
        c -= 1


def arc_tokens(a):
    s = a.surface
    cur = (0, 'R') if a.base == 0 else (s.hole_pos(a.base), 'L')
    toks = []
    for x in a.word:
        k = abs(x)
        start = (k, 'L') if x > 0 else (k, 'R')
        _walk(toks, cur, start)
        toks.append(ModelToken('pass', k, 'below'))
        cur = (k, 'R') if x > 0 else (k, 'L')
    kind, v = a.target
    if kind == 'P':
        k = v
        dest = (k, 'L') if _coord(*cur) < 2 * k else (k, 'R')
    elif v == a.base and v == 0:
        dest = (s.m, 'R')
    elif v == 0:
        dest = (0, 'R')
    else:
        k = s.hole_pos(v)
        dest = (k, 'L') if _coord(*cur) < 2 * k else (k, 'R')
    _walk(toks, cur, dest)
    out = []
    for t in toks:
        if t.kind == 'pass':
            t = ModelToken('pass', s.label(t.ref), t.arg)
        out.append(t)
    out.append(ModelToken('end', s.target_label(a.target)))
    return ['@C%d' % a.base] + out


def tokens_text(toks):
    return ' '.join(t if isinstance(t, str) else t.text() for t in toks)


def tighten(s, base, tokens):
    return arc_from_tokens(s, base, tokens)


_TOKEN = re.compile(r'\s*(?:e(\d+)([+-])|\((\w+),\s*(above|below)\)|!(\w+))')


def parse_arc(s, text):
    """Read '@C0 e0+ (p1,above) e1+ !p2' (or a bare word list like '@C0 [1,-2] !C0')."""
    text = text.strip()
    mt = re.match(r'@C(\d+)', text)
    if not mt:
        raise ValueError('arc literal must start with @C<j>: %r' % text)
    base = int(mt.group(1))
    s.check_boundary(base)
    rest = text[mt.end():]
    wl = re.match(r'\s*\[([-\d,\s]*)\]\s*!(\w+)\s*$', rest)
    if wl:
        word = [int(x) for x in wl.group(1).replace(',', ' ').split()]
        for x in word:
            if not 1 <= abs(x) <= s.m:
                raise ValueError('letter %d out of range' % x)
        return Arc(s, base, word, s.target_from_label(wl.group(2)))
    toks = []
    pos = 0
    while pos < len(rest):
        if not rest[pos:].strip():
            break
        g = _TOKEN.match(rest, pos)
        if not g:
            raise ValueError('cannot read arc token at column %d: %r'
                             % (mt.end() + pos, rest[pos:].strip()[:12]))
        if g.group(1) is not None:
            toks.append(ModelToken('wall', int(g.group(1)), 1 if g.group(2) == '+' else -1))
        elif g.group(3) is not None:
            toks.append(ModelToken('pass', g.group(3), g.group(4)))
        else:
            toks.append(ModelToken('end', g.group(5)))
        pos = g.end()
    return arc_from_tokens(s, base, toks)


def arc_from_json(s, d):
    return Arc(s, int(d['base'][1:]), tuple(d['word']), s.target_from_label(d['target']))


# -- enumeration ---------------------------------------------------------------

def enumerate_arcs(s, C, kind='ddP', max_len=4, include_trivial=False):
    """Every embedded arc based at C with word length <= max_len.

    The list is exhaustive for the given length bound (words are generated
    depth first and pruned only when two lifts are already forced to cross).
    """
    from .accel import enumerate_words, self_crosses
    s.check_boundary(C)
    h0 = s.base_half(C)
    kinds = {'dd': ('C',), 'dP': ('P',), 'ddP': ('C', 'P')}[kind]
    targets = [t for t in s.targets(C) if t[0] in kinds]
    out = []
    for w in enumerate_words(s, h0, max_len):
        for t in targets:
            if t[0] == 'P' and w and abs(w[-1]) == t[1]:
                continue
            a = Arc(s, C, w, t)
            if not include_trivial and a.is_trivial():
                continue
            if self_crosses(s, w, a.terminal, h0, True):
                continue
            out.append(a)
    out.sort(key=Arc.sort_key)
    return out
