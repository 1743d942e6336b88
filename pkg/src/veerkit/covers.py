"""Double covers of planar surfaces branched at the punctures.

A cover is given by a parity eps(y_k) in Z/2 for every object k (swap the
two sheets or not).  Lifting a mapping class needs eps o psi_* = eps.

Upstairs twisting is measured in the common universal cover of the punctured
surfaces: arcs based at a lift of *_C are ordered exactly as their images
downstairs, and the boundary twist about a lift C~ of degree d projects to
T_C^d.  When the cover is planar and a lift table is known (the annulus over
the twice punctured disk) the lifted word is used instead.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from .mcg import MapClassWord, letter_block
from .model import build_surface
from .veering import fdtc_bounds, fdtc_snap

HYPOTHESIS_VIOLATED = 'HYPOTHESIS_VIOLATED'


def _parity(v):
    if isinstance(v, (list, tuple)):
        if sorted(v) != [0, 1]:
            raise ValueError('not a permutation of two sheets: %r' % (v,))
        return 0 if list(v) == [0, 1] else 1
    if v in ('swap', 1, True):
        return 1
    if v in ('id', 0, False, None):
        return 0
    raise ValueError('bad permutation %r' % (v,))


@dataclass
class CoverData:
    base: object
    parity: tuple                    # per axis position
    boundary_fibers: dict = field(default_factory=dict)   # C -> [d, ...]
    branch_locus: list = field(default_factory=list)
    euler_characteristic: int = 0
    genus: int = 0
    connected: bool = True
    total_surface: object = None     # SurfaceSpec when planar

    @property
    def fully_ramified(self):
        return all(self.parity[k - 1] for k in self.base.puncture_positions)

    def eps(self, word):
        return sum(self.parity[abs(x) - 1] for x in word) % 2

    def to_json(self):
        s = self.base
        return {
            'schema': 'veerkit.cover/1',
            'base': s.to_json(),
            'monodromy': {s.label(k): 'swap' if p else 'id'
                          for k, p in enumerate(self.parity, 1)},
            'branch_locus': list(self.branch_locus),
            'fully_ramified': self.fully_ramified,
            'euler_characteristic': self.euler_characteristic,
            'genus': self.genus,
            'boundary_fibers': {'C%d' % C: ds for C, ds in self.boundary_fibers.items()},
            'connected': self.connected,
            'total_surface': None if self.total_surface is None else self.total_surface.to_json(),
        }


def build_double_cover(s, monodromy):
    """monodromy maps object labels ('p1', 'C1', ...) to 'swap'/'id' or a
    two-element permutation; missing labels default to 'id'."""
    unknown = set(monodromy) - {s.label(k) for k in range(1, s.m + 1)}
    if unknown:
        raise ValueError('unknown generators: %s' % ', '.join(sorted(unknown)))
    par = tuple(_parity(monodromy.get(s.label(k), 0)) for k in range(1, s.m + 1))
    if not any(par):
        raise ValueError('cover is disconnected (trivial monodromy)')
    branch = [s.label(k) for k in s.puncture_positions if par[k - 1]]
    chi = 2 * (2 - s.boundary_count) - len(branch)
    fibers = {}
    for C in s.boundaries:
        e = sum(par) % 2 if C == 0 else par[s.hole_pos(C) - 1]
        fibers[C] = [2] if e else [1, 1]
    nb = sum(len(v) for v in fibers.values())
    genus = (2 - chi - nb) // 2
    total = None
    if genus == 0:
        unbranched = sum(1 for k in s.puncture_positions if not par[k - 1])
        # branch points are filled in upstairs, other punctures doubled
        total = build_surface(nb, 2 * unbranched)
    return CoverData(s, par, fibers, branch, chi, genus, True, total)


def is_liftable(cd, psi):
    """eps(psi(y_k)) = eps(y_k) for all k."""
    images = psi.signature[0]
    return all(cd.eps(w) == cd.parity[k] for k, w in enumerate(images))


@dataclass
class LiftedMapClass:
    cover: CoverData
    base_word: MapClassWord
    word: MapClassWord = None        # on the total surface when known
    method: str = 'universal-cover'

    def text(self):
        return self.word.text() if self.word is not None else 'lift(%s)' % self.base_word.text()

    def lift_arc(self, arc, sheet=0):
        """A lifted arc: the downstairs arc with the sheet of its start and end."""
        return (arc, sheet, (sheet + self.cover.eps(arc.word)) % 2)

    def apply(self, lifted):
        """The lift fixing the chosen point over *_C acts on lifted arcs by
        acting downstairs; the end sheet is read off from the image word."""
        arc, s0, _ = lifted
        img = self.base_word.apply(arc)
        return (img, s0, (s0 + self.cover.eps(img.word)) % 2)


def _annulus_table(cd, psi):
    """sigma_1 over the twice punctured disk lifts to the core twist."""
    s = cd.base
    if not (s.boundary_count == 1 and s.puncture_count == 2 and all(cd.parity)):
        return None
    t = cd.total_surface
    e = 0
    for let in psi.letters:
        if let[0] == 's':
            e += let[2]
        elif let[0] == 'T0':
            e += 2 * let[1]
        else:
            lo, hi = letter_block(s, let)
            if lo == hi:
                continue              # twist about a single puncture is trivial
            e += 2 * let[3]
    return MapClassWord(t, [('T', 1, 1, e)] if e else [])


def lift_mapclass(cd, psi):
    if psi.surface != cd.base:
        raise ValueError('word lives on a different surface')
    if not is_liftable(cd, psi):
        return None
    w = _annulus_table(cd, psi)
    if w is not None:
        return LiftedMapClass(cd, psi, w, 'lift-table')
    return LiftedMapClass(cd, psi)


def check_projection(lift, arcs):
    """Probe-arc test of the commuting square.  Images must project to
    psi(a), and for every boundary with two lifts the lift must move the end
    sheet the same way for all arcs ending there (otherwise it is not a
    well defined map of the cover).  Returns the offending arcs."""
    cd = lift.cover
    bad = []
    shift = {}
    for a in arcs:
        for sheet in (0, 1):
            img = lift.apply(lift.lift_arc(a, sheet))
            if img[0] != lift.base_word.apply(a) or img[1] != sheet:
                bad.append(a)
                continue
            if a.target[0] != 'C':
                continue
            t = a.target[1]
            if len(cd.boundary_fibers[t]) != 2:
                continue
            d = (img[2] - lift.lift_arc(a, sheet)[2]) % 2
            if shift.setdefault(t, d) != d:
                bad.append(a)
    return bad


def check_fdtc_scaling(cd, psi, C, n=30, snap=None):
    lift = lift_mapclass(cd, psi)
    if lift is None:
        raise ValueError('word is not liftable to this cover')
    down = fdtc_bounds(psi, C, n)
    hyp_ok = cd.euler_characteristic < 0 and cd.fully_ramified
    fibers = []
    for i, d in enumerate(cd.boundary_fibers[C]):
        if lift.word is not None:
            # planar cover: work upstairs with the lifted word
            Ct = _upstairs_boundary(cd, C, i)
            up = fdtc_bounds(lift.word, Ct, n)
        else:
            up = fdtc_bounds(psi, C, n, unit=d)
        scaled = up.scale(d)
        fibers.append({'degree': d, 'upstairs': up.to_json(),
                       'scaled': scaled.to_json(),
                       'intersects': scaled.intersects(down),
                       'upstairs_candidate': _s(fdtc_snap(up, snap)),
                       'method': lift.method})
    rep = {'schema': 'veerkit.cover-scaling/1', 'boundary': 'C%d' % C,
           'word': psi.text(), 'lift': lift.text(),
           'downstairs': down.to_json(),
           'downstairs_candidate': _s(fdtc_snap(down, snap)),
           'fibers': fibers,
           'degree_sum': sum(cd.boundary_fibers[C])}
    if not hyp_ok:
        why = []
        if cd.euler_characteristic >= 0:
            why.append('chi=%d' % cd.euler_characteristic)
        if not cd.fully_ramified:
            why.append('not fully ramified')
        rep['status'] = HYPOTHESIS_VIOLATED
        rep['reason'] = ', '.join(why)
        mism = []
        for f in fibers:
            if not f['intersects']:
                mism.append('%s != %s' % (_mul(f['upstairs_candidate'], f['degree']),
                                           rep['downstairs_candidate']))
        rep['mismatch'] = mism
    else:
        rep['status'] = 'PASS' if all(f['intersects'] for f in fibers) else 'FAIL'
    lo = down.lower
    rep['annotations'] = {
        'sign': 'positive' if lo > 0 else ('negative' if down.upper < 0 else 'undetermined'),
        'large_twisting': [bool(min(abs(down.lower), abs(down.upper)) > 4 * d)
                           for d in cd.boundary_fibers[C]],
    }
    return rep


def _s(x):
    return None if x is None else str(x)


def _mul(x, d):
    return None if x is None else str(Fraction(x) * d)


def _upstairs_boundary(cd, C, i):
    # the annulus cover: C0 downstairs lifts to the two boundary circles
    return i
