"""Mapping classes as words in half-twists and block twists.

Letters (stored innermost-last, i.e. as written; the rightmost letter acts
first):
    ('s', i, e)        half-twist sigma_i^e on the punctures at positions i, i+1
    ('T', lo, hi, e)   right-handed twist^e about the curve around objects lo..hi
    ('T0', e)          twist^e about the curve parallel to C0

Every word is evaluated to a signature: the induced automorphism of the free
group on y_1..y_m together with, for every object, the loop u_k such that the
image of the hub-to-object path is u_k followed by the hub-to-image path, and
the permutation of punctures.  Two words are equal as mapping classes iff their
signatures agree (the action on based loops and on the reference paths pins
the class down).
"""
import random
import re
from functools import cached_property

from . import freegroup as fg
from .arcs import Arc
from .model import build_surface, parse_label


class MapClassWord:
    def __init__(self, surface, letters=()):
        self.surface = surface
        self.letters = tuple(letters)
        for let in self.letters:
            check_letter(surface, let)

    # -- basic algebra ------------------------------------------------------

    def __mul__(self, other):
        if other.surface != self.surface:
            raise ValueError('surface mismatch')
        return MapClassWord(self.surface, self.letters + other.letters)

    def inverse(self):
        return MapClassWord(self.surface, [invert_letter(x) for x in reversed(self.letters)])

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return MapClassWord(self.surface, self.letters * n)

    def __len__(self):
        return len(self.letters)

    def __repr__(self):
        return 'MapClassWord(%r)' % self.text()

    def text(self):
        return word_text(self.surface, self.letters)

    # -- semantics ----------------------------------------------------------

    @cached_property
    def signature(self):
        sig = identity_signature(self.surface.m)
        for let in reversed(self.letters):
            sig = compose(letter_signature(self.surface, let), sig)
        return sig

    @cached_property
    def class_key(self):
        # u_k at a puncture is only defined up to trailing powers of y_k
        images, u, perm = self.signature
        s = self.surface
        cu = []
        for k, w in enumerate(u):
            j = perm[k]
            if s.is_puncture(j):
                i = len(w)
                while i and abs(w[i - 1]) == j:
                    i -= 1
                w = w[:i]
            cu.append(w)
        return images, tuple(cu), perm

    def same_class(self, other):
        return self.surface == other.surface and self.class_key == other.class_key

    def is_identity(self):
        return self.class_key == identity_signature(self.surface.m)

    def apply(self, arc):
        return apply_signature(self.signature, arc)

    def normalized(self):
        return MapClassWord(self.surface, normalize(self.letters, self.surface))


# -- letters ----------------------------------------------------------------

def check_letter(s, let):
    kind = let[0]
    if kind == 's':
        i = let[1]
        if not (1 <= i < s.m and s.is_puncture(i) and s.is_puncture(i + 1)):
            raise ValueError('s%d: positions %d, %d are not two punctures' % (i, i, i + 1))
    elif kind == 'T':
        lo, hi = let[1], let[2]
        if not 1 <= lo <= hi <= s.m:
            raise ValueError('twist block out of range')
        if lo == hi and s.is_puncture(lo):
            raise ValueError('twist about a curve around a single puncture is trivial')
    elif kind != 'T0':
        raise ValueError('unknown letter %r' % (let,))
    if let[-1] == 0:
        raise ValueError('zero exponent')


def invert_letter(let):
    return let[:-1] + (-let[-1],)


def letter_block(s, let):
    if let[0] == 'T0':
        return (1, s.m)
    if let[0] == 'T':
        return (let[1], let[2])
    return (let[1], let[1] + 1)


def identity_signature(m):
    return (tuple((k,) for k in range(1, m + 1)),
            tuple(() for _ in range(m)),
            tuple(range(1, m + 1)))


def letter_signature(s, let):
    m = s.m
    images = [(k,) for k in range(1, m + 1)]
    u = [() for _ in range(m)]
    perm = list(range(1, m + 1))
    if let[0] == 's':
        i, e = let[1], let[2]
        if abs(e) != 1:
            # powers are expanded letter by letter
            sig = identity_signature(m)
            one = letter_signature(s, ('s', i, 1 if e > 0 else -1))
            for _ in range(abs(e)):
                sig = compose(one, sig)
            return sig
        if e > 0:
            images[i - 1] = (i, i + 1, -i)
            images[i] = (i,)
            u[i - 1] = (i,)
        else:
            images[i - 1] = (i + 1,)
            images[i] = (-(i + 1), i, i + 1)
            u[i] = (-(i + 1),)
        perm[i - 1], perm[i] = i + 1, i
    else:
        lo, hi = letter_block(s, let)
        e = let[-1]
        d = fg.power(tuple(range(lo, hi + 1)), e)
        di = fg.inverse(d)
        for k in range(lo, hi + 1):
            images[k - 1] = fg.mul(d, (k,), di)
            u[k - 1] = d
    return tuple(images), tuple(u), tuple(perm)


def compose(phi, psi):
    """Signature of phi after psi."""
    pim, pu, pperm = phi
    qim, qu, qperm = psi
    imap = {k + 1: w for k, w in enumerate(pim)}
    images = tuple(fg.substitute(w, imap) for w in qim)
    u = tuple(fg.mul(fg.substitute(qu[k], imap), pu[qperm[k] - 1]) for k in range(len(qu)))
    perm = tuple(pperm[qperm[k] - 1] for k in range(len(qperm)))
    return images, u, perm


def apply_signature(sig, arc):
    images, u, perm = sig
    s = arc.surface
    imap = {k + 1: w for k, w in enumerate(images)}
    ub = () if arc.base == 0 else u[s.hole_pos(arc.base) - 1]
    kind, v = arc.target
    if kind == 'P':
        ut = u[v - 1]
        target = ('P', perm[v - 1])
    else:
        ut = () if v == 0 else u[s.hole_pos(v) - 1]
        target = arc.target
    w = fg.mul(fg.inverse(ub), fg.substitute(arc.word, imap), ut)
    return Arc(s, arc.base, w, target)


def apply(w, a):
    if w.surface != a.surface:
        raise ValueError('surface mismatch')
    return w.apply(a)


# -- printing and normal forms ------------------------------------------------

def letter_text(s, let):
    e = let[-1]
    if let[0] == 's':
        head = 's%d' % let[1]
    elif let[0] == 'T0':
        head = 'T[C0]'
    else:
        lo, hi = let[1], let[2]
        head = 'T[%s]' % s.label(lo) if lo == hi else 'T[%s..%s]' % (s.label(lo), s.label(hi))
    return head if e == 1 else '%s^%d' % (head, e)


def word_text(s, letters):
    return ' '.join(letter_text(s, x) for x in letters)


def _twists_commute(s, a, b):
    if a[0] == 's' or b[0] == 's':
        return False
    lo1, hi1 = letter_block(s, a)
    lo2, hi2 = letter_block(s, b)
    disjoint = hi1 < lo2 or hi2 < lo1
    nested = (lo1 <= lo2 and hi2 <= hi1) or (lo2 <= lo1 and hi1 <= hi2)
    return disjoint or nested


def _merge(letters):
    out = []
    for let in letters:
        if out and out[-1][:-1] == let[:-1]:
            e = out[-1][-1] + let[-1]
            out.pop()
            if e:
                out.append(let[:-1] + (e,))
        else:
            out.append(let)
    return out


def normalize(letters, s=None):
    """Merge powers and sort runs of pairwise commuting twists by block size."""
    letters = list(letters)
    if s is None:
        # block size only needs m for T0; use a large stand-in
        m = max([x[2] for x in letters if x[0] == 'T'] + [1])
        size = lambda x: (m + 1, 0, 1) if x[0] == 'T0' else (x[2] - x[1] + 1, x[1], 0)
        comm = lambda a, b: _twists_commute_m(m, a, b)
    else:
        size = lambda x: (s.m + 1, 0, 1) if x[0] == 'T0' else (x[2] - x[1] + 1, x[1], 0)
        comm = lambda a, b: _twists_commute(s, a, b)
    letters = _merge(letters)
    out = []
    run = []
    for let in letters:
        if let[0] != 's' and all(comm(let, r) for r in run):
            run.append(let)
        else:
            out += sorted(run, key=size)
            run = [let] if let[0] != 's' else []
            if let[0] == 's':
                out.append(let)
    out += sorted(run, key=size)
    return _merge(out)


def _twists_commute_m(m, a, b):
    def blk(x):
        return (1, 10 ** 9) if x[0] == 'T0' else (x[1], x[2])
    if a[0] == 's' or b[0] == 's':
        return False
    lo1, hi1 = blk(a)
    lo2, hi2 = blk(b)
    return hi1 < lo2 or hi2 < lo1 or (lo1 <= lo2 and hi2 <= hi1) or (lo2 <= lo1 and hi1 <= hi2)


# -- surface braids and the Birman sequence --------------------------------------

class SurfaceBraidWord:
    """Letters ('x', i, e) swap positions i, i+1; ('loop', p, X, d, k)."""

    def __init__(self, surface, letters=()):
        self.surface = surface
        self.letters = tuple(letters)
        for let in self.letters:
            if let[0] == 'x':
                check_letter(surface, ('s', let[1], let[2]))
            elif let[0] == 'loop':
                _, p, X, d, k = let
                if p == X or not surface.is_puncture(p):
                    raise ValueError('loop must move a puncture around another object')
                if d not in (1, -1):
                    raise ValueError('loop direction must be + or -')
            else:
                raise ValueError('unknown braid letter %r' % (let,))

    def text(self):
        s = self.surface
        out = []
        for let in self.letters:
            if let[0] == 'x':
                out.append('x%d' % let[1] + ('' if let[2] == 1 else '^%d' % let[2]))
            else:
                _, p, X, d, k = let
                t = 'loop(%s,%s,%s)' % (s.label(p), s.label(X), '+' if d > 0 else '-')
                out.append(t if k == 1 else '%s^%d' % (t, k))
        return ' '.join(out)


def loop_letters(s, p, X, d):
    """Push of puncture p once around the stretch from X up to p."""
    if X < p:
        inner = (X, p - 1)
        outer = (X, p)
    else:
        inner = (p + 1, X)
        outer = (p, X)
    res = []
    if d > 0:
        res.append(('T', outer[0], outer[1], 1))
        if not (inner[0] == inner[1] and s.is_puncture(inner[0])):
            res.append(('T', inner[0], inner[1], -1))
    else:
        if not (inner[0] == inner[1] and s.is_puncture(inner[0])):
            res.append(('T', inner[0], inner[1], 1))
        res.append(('T', outer[0], outer[1], -1))
    return res


def push(beta):
    s = beta.surface
    out = []
    for let in beta.letters:
        if let[0] == 'x':
            out.append(('s', let[1], let[2]))
        else:
            _, p, X, d, k = let
            one = loop_letters(s, p, X, d if k > 0 else -d)
            out += one * abs(k)
    return MapClassWord(s, normalize(out, s))


def forgotten_surface(s):
    """Surface with the punctures filled in, and the position remapping."""
    holes = [lab for lab in s.order if lab[0] == 'C']
    t = build_surface(s.boundary_count, 0, holes)
    remap = {s.position[lab]: t.position[lab] for lab in holes}
    return t, remap


def forget(w):
    s = w.surface
    t, remap = forgotten_surface(s)
    out = []
    for let in w.letters:
        if let[0] == 's':
            continue
        if let[0] == 'T0':
            if t.m:
                out.append(let)
            continue
        lo, hi = let[1], let[2]
        hs = [remap[k] for k in range(lo, hi + 1) if s.is_hole(k)]
        if not hs:
            continue
        out.append(('T', min(hs), max(hs), let[3]))
    return MapClassWord(t, out)


def include(w, s):
    """Read a word on the puncture-free surface inside s."""
    t = w.surface
    if t.puncture_count:
        raise ValueError('include expects a word on a surface without punctures')
    if [lab for lab in s.order if lab[0] == 'C'] != list(t.order) or t.boundary_count != s.boundary_count:
        raise ValueError('surfaces do not match')
    out = []
    for let in w.letters:
        if let[0] == 'T0':
            out.append(let)
            continue
        lo = s.position[t.label(let[1])]
        hi = s.position[t.label(let[2])]
        if any(s.is_puncture(k) for k in range(lo, hi + 1)):
            raise ValueError('twist %s meets the marked points' % letter_text(t, let))
        out.append(('T', lo, hi, let[3]))
    return MapClassWord(s, out)


def distinguished_monodromy(phi, beta):
    s = beta.surface
    return push(beta) * include(phi, s)


def conjugate_by_braid_isotopy(phi_L, gamma):
    g = push(gamma)
    return g.inverse() * phi_L * g


# -- positive stabilization ---------------------------------------------------------

def stabilize_positively(phi_L, C, eps=1, side=1):
    """Insert punctures q, q' next to C and post-compose with two half twists.

    gamma_1 runs from the puncture nearest to C to q, passing q' on one side;
    gamma_2 runs from q' once around the curve separating C and q from the
    rest, then into q.  Slots:  ... p q' q  at C0, and  C_j q q' p ...  at a
    hole.  Returns the new word and the positions of (q, q').
    """
    s = phi_L.surface
    s.check_boundary(C)
    n = s.puncture_count
    q, qq = 'p%d' % (n + 1), 'p%d' % (n + 2)
    if C == 0:
        if s.m == 0 or not s.is_puncture(s.m):
            raise ValueError('stabilization at C0 needs a puncture in the last slot')
        order = list(s.order) + [qq, q]
        t = build_surface(s.boundary_count, n + 2, order)
        i = s.m
        # the old boundary twist is supported inside the collar slots
        letters = [('T', 1, i, let[1]) if let[0] == 'T0' else let
                   for let in phi_L.letters]
        # p = i, q' = i+1, q = i+2
        h1 = [('s', i + 1, side), ('s', i, 1), ('s', i + 1, -side)]
        c = ('T', 1, i + 1, eps)
        h2 = [c, ('s', i + 1, 1), invert_letter(c)]
        return MapClassWord(t, h2 + h1 + letters), (t.position[q], t.position[qq])
    hp = s.hole_pos(C)
    if hp == s.m or not s.is_puncture(hp + 1):
        raise ValueError('stabilization at C%d needs a puncture right after it' % C)
    order = list(s.order)
    order[hp:hp] = [q, qq]
    t = build_surface(s.boundary_count, n + 2, order)
    shift = {k: (k if k <= hp else k + 2) for k in range(1, s.m + 1)}
    letters = []
    for let in phi_L.letters:
        if let[0] == 's':
            letters.append(('s', shift[let[1]], let[2]))
        elif let[0] == 'T0':
            letters.append(let)
        else:
            # curves around C_j also go around the new slots
            lo, hi = let[1], let[2]
            letters.append(('T', shift[lo], hi + 2 if hi >= hp else hi, let[3]))
    # C_j = hp, q = hp+1, q' = hp+2, p = hp+3
    h1 = [('s', hp + 1, side), ('s', hp + 2, 1), ('s', hp + 1, -side)]
    c = ('T', hp, hp + 1, eps)
    h2 = [c, ('s', hp + 1, 1), invert_letter(c)]
    return MapClassWord(t, h2 + h1 + letters), (hp + 1, hp + 2)


# -- random words ---------------------------------------------------------------

def generator_letters(s, include_all_blocks=True):
    out = []
    for i in range(1, s.m):
        if s.is_puncture(i) and s.is_puncture(i + 1):
            out.append(('s', i, 1))
    for lo in range(1, s.m + 1):
        for hi in range(lo, s.m + 1):
            if lo == hi and s.is_puncture(lo):
                continue
            if lo == 1 and hi == s.m:
                continue
            if not include_all_blocks and hi > lo and not (hi - lo == 1):
                continue
            out.append(('T', lo, hi, 1))
    if s.m:
        out.append(('T0', 1))
    return out


def random_word(s, length, rng=None, alphabet=None):
    rng = rng or random.Random(0)
    alphabet = alphabet or generator_letters(s)
    letters = []
    for _ in range(length):
        let = rng.choice(alphabet)
        if rng.random() < 0.5:
            let = invert_letter(let)
        letters.append(let)
    return MapClassWord(s, letters)


# -- text grammar ---------------------------------------------------------------

_TOKEN = re.compile(r'\s*(?:(s)(\d+)|T\[([A-Za-z0-9]+)(?:\.\.([A-Za-z0-9]+))?\])(?:\^(-?\d+))?')


class ParseError(ValueError):
    def __init__(self, msg, pos, text):
        super().__init__('%s at column %d in %r' % (msg, pos + 1, text))
        self.pos = pos


def parse_mapclass_word(s, text):
    letters = []
    pos = 0
    text = text or ''
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ParseError("expected 's<i>' or 'T[...]'", pos, text)
        e = int(mt.group(5)) if mt.group(5) is not None else 1
        if e == 0:
            raise ParseError('zero exponent', pos, text)
        try:
            if mt.group(1):
                i = int(mt.group(2))
                if not 1 <= i < s.m:
                    raise ValueError('generator s%d out of range' % i)
                let = ('s', i, e)
            else:
                a, b = mt.group(3), mt.group(4)
                if a == 'C0' and b is None:
                    let = ('T0', e)
                else:
                    if a not in s.position or (b is not None and b not in s.position):
                        raise ValueError('unknown object in twist block')
                    lo = s.position[a]
                    hi = s.position[b] if b else lo
                    if hi < lo:
                        raise ValueError('block range reversed')
                    let = ('T', lo, hi, e)
            check_letter(s, let)
        except ValueError as exc:
            raise ParseError(str(exc), pos, text)
        if let[0] == 's' and abs(e) != 1:
            letters += [('s', let[1], 1 if e > 0 else -1)] * abs(e)
        else:
            letters.append(let)
        pos = mt.end()
    return MapClassWord(s, letters)


_BTOKEN = re.compile(r'\s*(?:x(\d+)|loop\(\s*(\w+)\s*,\s*(\w+)\s*,\s*([+-])\s*\))(?:\^(-?\d+))?')


def parse_braid_word(s, text):
    letters = []
    pos = 0
    text = text or ''
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        mt = _BTOKEN.match(text, pos)
        if not mt:
            raise ParseError("expected 'x<i>' or 'loop(p,X,+/-)'", pos, text)
        e = int(mt.group(5)) if mt.group(5) is not None else 1
        try:
            if mt.group(1):
                letters.append(('x', int(mt.group(1)), e))
            else:
                p, X = mt.group(2), mt.group(3)
                for lab in (p, X):
                    parse_label(lab)
                    if lab not in s.position:
                        raise ValueError('unknown object %s' % lab)
                letters.append(('loop', s.position[p], s.position[X],
                                1 if mt.group(4) == '+' else -1, e))
            br = SurfaceBraidWord(s, letters)
        except ValueError as exc:
            raise ParseError(str(exc), pos, text)
        pos = mt.end()
    return SurfaceBraidWord(s, letters)
