"""Genus-zero surfaces with boundary and marked points.

Reference model: C0 is a round outer circle, the holes C1..C{b-1} and the
punctures p1..pn sit on a horizontal axis in `order`.  Objects occupy axis
positions 1..m (m = n + b - 1) and wall e_i is the vertical segment between
position i and i+1 (e_0 separates the base point of C0 from position 1).

pi_1 of the surface minus P, based near the top of the model, is free on
y_1..y_m where y_k is the counterclockwise loop around the object at position
k.  A word in the y_k together with a terminal half-edge is how arcs are stored
(see arcs.py).  For this the universal cover is viewed as a ribbon tree whose
vertices carry the cyclic order of half-edges given by `half_edges`.
"""
import json
import re
from dataclasses import dataclass
from functools import cached_property


BDRY = 'bdry'     # lands on the base point of C0, arriving along the top
RB0 = 'rb0'       # lands on the rightmost point of C0, over the top


@dataclass(frozen=True)
class ModelToken:
    """One step of an arc literal.

    kind is 'wall' (index, direction +1/-1), 'pass' (object label, side) or
    'end' (object label or boundary label).
    """
    kind: str
    ref: object
    arg: object = None

    def text(self):
        if self.kind == 'wall':
            return 'e%d%s' % (self.ref, '+' if self.arg > 0 else '-')
        if self.kind == 'pass':
            return '(%s,%s)' % (self.ref, self.arg)
        return '!' + self.ref


_LABEL = re.compile(r'^(C|p)(\d+)$')


def parse_label(label):
    mt = _LABEL.match(label.strip())
    if not mt:
        raise ValueError('bad object label %r' % label)
    return mt.group(1), int(mt.group(2))


@dataclass(frozen=True)
class SurfaceSpec:
    boundary_count: int
    puncture_count: int
    order: tuple

    # positions and labels

    @property
    def m(self):
        return len(self.order)

    @property
    def walls(self):
        return tuple(range(self.m))

    @cached_property
    def position(self):
        return {lab: i + 1 for i, lab in enumerate(self.order)}

    def label(self, pos):
        return self.order[pos - 1]

    def is_hole(self, pos):
        return self.order[pos - 1][0] == 'C'

    def is_puncture(self, pos):
        return self.order[pos - 1][0] == 'p'

    @cached_property
    def puncture_positions(self):
        return tuple(i + 1 for i, lab in enumerate(self.order) if lab[0] == 'p')

    @cached_property
    def hole_positions(self):
        return tuple(i + 1 for i, lab in enumerate(self.order) if lab[0] == 'C')

    def hole_pos(self, j):
        """Axis position of hole C_j (j >= 1)."""
        return self.position['C%d' % j]

    def boundary_of(self, pos):
        return int(self.order[pos - 1][1:])

    @property
    def boundaries(self):
        return tuple(range(self.boundary_count))

    @property
    def euler_characteristic(self):
        return 2 - self.boundary_count - self.puncture_count

    def boundary_word(self, j):
        """Word of the loop parallel to C_j, oriented as the boundary."""
        if j == 0:
            return tuple(range(1, self.m + 1))
        return (self.hole_pos(j),)

    # ribbon structure of the universal cover

    @cached_property
    def half_edges(self):
        """Cyclic (clockwise) order of half-edges at every vertex.

        Letter half-edges are ('y', k) for the start of y_k and ('y', -k) for
        the start of y_k^-1.  Terminal half-edges: ('r', k) for a puncture,
        ('ra', k) / ('rb', k) for the leftmost / rightmost point of a hole.
        """
        out = [BDRY, RB0]
        for k in range(self.m, 0, -1):
            out.append(('y', -k))
            if self.is_hole(k):
                out.append(('rb', k))
                out.append(('ra', k))
            else:
                out.append(('r', k))
            out.append(('y', k))
        return tuple(out)

    @cached_property
    def hidx(self):
        return {h: i for i, h in enumerate(self.half_edges)}

    @cached_property
    def cusp_halves(self):
        return frozenset(i for i, h in enumerate(self.half_edges)
                         if isinstance(h, tuple) and h[0] == 'r')

    @property
    def N(self):
        return len(self.half_edges)

    @cached_property
    def letter_index(self):
        """Array mapping letter x (offset by m) to its half-edge index."""
        m = self.m
        arr = [0] * (2 * m + 1)
        for k in range(1, m + 1):
            arr[m + k] = self.hidx[('y', k)]
            arr[m - k] = self.hidx[('y', -k)]
        return tuple(arr)

    def base_half(self, C):
        if C == 0:
            return self.hidx[BDRY]
        return self.hidx[('ra', self.hole_pos(C))]

    def terminal_half(self, C, target):
        kind, v = target
        if kind == 'P':
            return self.hidx[('r', v)]
        if v == C:
            if C == 0:
                return self.hidx[RB0]
            return self.hidx[('rb', self.hole_pos(C))]
        if v == 0:
            return self.hidx[BDRY]
        return self.hidx[('ra', self.hole_pos(v))]

    def targets(self, C, kind='all'):
        """Endpoint classes for arcs based at C."""
        out = []
        if kind in ('all', 'dd'):
            out += [('C', j) for j in range(self.boundary_count)]
        if kind in ('all', 'dP'):
            out += [('P', k) for k in self.puncture_positions]
        return out

    def target_label(self, target):
        kind, v = target
        return self.label(v) if kind == 'P' else 'C%d' % v

    def target_from_label(self, label):
        kind, j = parse_label(label)
        if kind == 'C':
            if not 0 <= j < self.boundary_count:
                raise ValueError('no boundary %s' % label)
            return ('C', j)
        if label not in self.position:
            raise ValueError('no puncture %s' % label)
        return ('P', self.position[label])

    def check_boundary(self, C):
        if not (isinstance(C, int) and 0 <= C < self.boundary_count):
            raise ValueError('invalid boundary id %r' % (C,))

    def to_json(self):
        return {'boundaries': self.boundary_count,
                'punctures': self.puncture_count,
                'order': list(self.order)}


def build_surface(b, n, object_order=None):
    if b < 1:
        raise ValueError('need at least one boundary component')
    if n < 0:
        raise ValueError('negative puncture count')
    expected = ['C%d' % j for j in range(1, b)] + ['p%d' % i for i in range(1, n + 1)]
    if object_order is None:
        object_order = expected
    if isinstance(object_order, str):
        object_order = [t for t in re.split(r'[\s<,]+', object_order) if t]
    order = tuple(lab.strip() for lab in object_order)
    if sorted(order) != sorted(expected) or len(set(order)) != len(order):
        raise ValueError('object order %r must list %s exactly once'
                         % (list(order), ', '.join(expected)))
    return SurfaceSpec(b, n, order)


def load_surface(path_or_dict):
    if isinstance(path_or_dict, dict):
        d = path_or_dict
    else:
        with open(path_or_dict) as fh:
            d = json.load(fh)
    return build_surface(int(d['boundaries']), int(d['punctures']), d.get('order'))


def seed_arcs(s, C, kind='dd'):
    """One arc per endpoint class, passing above everything in between.

    For arcs returning to C itself there are several classes, one for each
    combination of enclosed holes and number of enclosed punctures; the seed
    for a subset S of objects is the loop prod_{k in S} y_k closed off at C.
    """
    from .arcs import Arc
    s.check_boundary(C)
    out = []
    kinds = {'dd': ('C',), 'dP': ('P',), 'ddP': ('C', 'P'),
             'boundary-to-boundary': ('C',), 'boundary-to-puncture': ('P',)}[kind]
    if 'C' in kinds:
        for j in range(s.boundary_count):
            if j != C:
                out.append(Arc(s, C, (), ('C', j)))
        seen = set()
        m = s.m
        for mask in range(1, 1 << m):
            sub = [k for k in range(1, m + 1) if mask >> (k - 1) & 1]
            holes = frozenset(k for k in sub if s.is_hole(k))
            npunct = len(sub) - len(holes)
            if C != 0:
                hp = s.hole_pos(C)
                # the loop around C itself does not change the class
                key = (holes - {hp}, npunct)
            else:
                key = (holes, npunct)
            if key in seen:
                continue
            a = Arc(s, C, tuple(sub), ('C', C))
            if a.is_trivial() or not a.is_embedded():
                continue
            seen.add(key)
            out.append(a)
    if 'P' in kinds:
        for k in s.puncture_positions:
            out.append(Arc(s, C, (), ('P', k)))
    return out

