"""Right-veering tests, special maps and fractional Dehn twist bounds."""
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

from . import freegroup as fg
from .arcs import (Arc, RIGHT, LEFT, compare_right, crossings, enumerate_arcs,
                   intersection_number)
from .mcg import MapClassWord, forget, letter_signature, apply_signature
from .model import seed_arcs
from .order import decide_ll_right


DEFAULT_BUDGET = int(os.environ.get('VEERKIT_BUDGET', '6'))

NOT_VEERING = 'NOT_VEERING'
NO_WITNESS = 'NO_WITNESS_UP_TO'
CERTIFIED = 'VEERING_CERTIFIED'


def budget_or_default(budget):
    env = os.environ.get('VEERKIT_BUDGET')
    if env:
        return int(env)
    return DEFAULT_BUDGET if budget is None else budget


@dataclass
class VeeringVerdict:
    variant: str
    boundary: int
    value: str
    witness: Arc = None
    chain: object = None
    bound: int = None
    reason: str = ''
    rejected: list = field(default_factory=list)   # (arc, LLVerdict) pairs
    unknown: list = field(default_factory=list)

    def __bool__(self):
        return self.value != NOT_VEERING

    def to_json(self):
        d = {'variant': self.variant, 'boundary': 'C%d' % self.boundary,
             'verdict': self.value}
        if self.bound is not None:
            d['bound'] = self.bound
        if self.reason:
            d['reason'] = self.reason
        if self.witness is not None:
            d['witness'] = self.witness.to_json()
        if self.chain is not None:
            d['chain'] = self.chain.to_json()
        if self.variant == 'quasi':
            d['candidates_rejected_by_bigon'] = sum(
                1 for _, v in self.rejected if v.reason == 'bigon')
            d['candidates_rejected_other'] = sum(
                1 for _, v in self.rejected if v.reason != 'bigon')
            d['candidates_unknown'] = len(self.unknown)
        return d


def twist_about(s, C, e=1):
    if C == 0:
        return MapClassWord(s, [('T0', e)] if s.m else [])
    hp = s.hole_pos(C)
    return MapClassWord(s, [('T', hp, hp, e)])


def moves_left(psi, a):
    """psi(a) < a, i.e. a lies strictly to the right of its image."""
    return compare_right(psi.apply(a), a) == RIGHT


# -- witnesses -----------------------------------------------------------------

_ARCS = {}


def arcs_upto(s, C, kind, bound):
    key = (s, C, kind, bound)
    if key not in _ARCS:
        _ARCS[key] = enumerate_arcs(s, C, kind, bound)
    return _ARCS[key]


def neighbourhood_boundary(psi, gamma):
    """dd arcs running around a regular neighbourhood of a dP arc."""
    s = gamma.surface
    C = gamma.base
    k = gamma.target[1]
    w = gamma.word
    bw = s.boundary_word(C)
    out = []
    for e in (1, -1):
        core = fg.mul(w, (e * k,), fg.inverse(w))
        for extra in ((), bw, fg.inverse(bw)):
            a = Arc(s, C, fg.mul(core, extra), ('C', C))
            if a.is_trivial() or not a.is_embedded():
                continue
            if a not in out:
                out.append(a)
    return out


def find_left_witness(psi, C, variant='ddP', budget=None, derive=True):
    """An arc of the variant's kind moved strictly left by psi, or None."""
    s = psi.surface
    s.check_boundary(C)
    budget = budget_or_default(budget)
    kinds = {'dd': 'dd', 'dP': 'dP', 'ddP': 'ddP'}[variant]
    for a in arcs_upto(s, C, kinds, budget):
        if moves_left(psi, a):
            return a
    if not derive:
        return None
    if variant == 'dd':
        # a dP witness yields a dd witness around it
        g = find_left_witness(psi, C, 'dP', budget, derive=False)
        if g is not None:
            for a in neighbourhood_boundary(psi, g):
                if moves_left(psi, a):
                    return a
    if variant == 'dP':
        for g in arcs_upto(s, C, 'dd', budget):
            if moves_left(psi, g) and classify_special(psi, C, g) is None:
                k = derive_dP_witness(psi, C, g, budget)
                if k is not None:
                    return k
    return None


def right_veering(psi, C, variant='ddP', budget=None):
    budget = budget_or_default(budget)
    w = find_left_witness(psi, C, variant, budget)
    if w is not None:
        return VeeringVerdict(variant, C, NOT_VEERING, witness=w, bound=budget)
    if psi.is_identity():
        return VeeringVerdict(variant, C, CERTIFIED, bound=budget, reason='identity')
    return VeeringVerdict(variant, C, NO_WITNESS, bound=budget)


def classify_special(psi, C, gamma, n_max=8):
    """(C', n) with T_{C'}^n psi fixing gamma, C' != C, smallest n first."""
    s = psi.surface
    img = psi.apply(gamma)
    if compare_right(img, gamma) != RIGHT:
        return None
    for n in range(1, n_max + 1):
        for Cp in s.boundaries:
            if Cp == C:
                continue
            if (twist_about(s, Cp, n) * psi).apply(gamma) == gamma:
                return (Cp, n)
    return None


# -- deriving a dP witness from a dd witness -------------------------------------

def _region_left_of(s, loop):
    """Objects on the left of a simple closed curve given by its loop word.

    For a simple loop in a planar surface the exponent sums are 0 or a common
    sign e on the enclosed objects; ccw (e = 1) means they lie on the left.
    """
    sums = fg.exponent_sums(loop)
    inside = sorted(sums)
    e = 1 if not sums else (1 if list(sums.values())[0] > 0 else -1)
    if e > 0:
        return {'objects': inside, 'outer': False}
    rest = [k for k in range(1, s.m + 1) if k not in sums]
    return {'objects': rest, 'outer': True}


def classify_case(psi, C, gamma):
    """Which case of the construction applies to the dd witness gamma."""
    s = psi.surface
    img = psi.apply(gamma)
    cr = crossings(img, gamma)      # ordered along psi(gamma)
    m = len(cr)
    if m == 0:
        # t_1 = s_1 = 1: the loop runs out along gamma and back along psi(gamma)
        delta = fg.mul(gamma.word, fg.inverse(img.word))
        sign = 1
    else:
        q1 = cr[0]
        # lift g with crossing along psi(gamma): loop psi(gamma)[0,s1] * gamma^-1
        delta = fg.inverse(q1.g)
        # sign of (gamma, psi(gamma)) at q1 is minus the sign of (psi(gamma), gamma)
        sign = -q1.sign
    region = _region_left_of(s, delta)
    holes = [k for k in region['objects'] if s.is_hole(k)]
    punct = [k for k in region['objects'] if s.is_puncture(k)]
    nbd = len(holes) + (1 if region['outer'] else 0)
    annulus = nbd == 1 and not punct
    info = {'m': m, 'sign_q1': sign, 'delta': list(delta),
            'region_holes': holes, 'region_outer': region['outer'],
            'region_punctures': punct}
    if annulus and sign > 0:
        info['case'] = 'bad'
    elif m == 0:
        info['case'] = 'm=0'
    elif annulus:
        if m < 2:
            info['case'] = '2'
        else:
            # index along gamma of q1 and q2
            cg = crossings(gamma, img)
            pos = {c.g: i for i, c in enumerate(cg)}
            k1 = pos.get(fg.inverse(cr[0].g))
            k2 = pos.get(fg.inverse(cr[1].g))
            info['case'] = '2A' if (k1 is not None and k2 is not None and k2 < k1) else '2B'
    else:
        info['case'] = '1'
    return info


def derive_dP_witness(psi, C, gamma, budget=None, return_case=False):
    """A dP arc kappa with psi(gamma) < kappa < gamma, hence psi(kappa) < kappa."""
    s = psi.surface
    budget = budget_or_default(budget)
    img = psi.apply(gamma)
    if compare_right(img, gamma) != RIGHT:
        raise ValueError('gamma is not moved to the left by psi')
    info = classify_case(psi, C, gamma)
    if info['case'] == 'bad':
        raise ValueError('gamma is bad; use classify_special')

    def ok(k):
        return (k.is_embedded() and compare_right(img, k) == RIGHT
                and compare_right(k, gamma) == RIGHT and moves_left(psi, k))

    # surgery: follow gamma or psi(gamma) for a while, then drop to a puncture
    cands = []
    short = [()] + [(x,) for k in range(1, s.m + 1) for x in (k, -k)]
    for w in (gamma.word, img.word):
        for i in range(len(w) + 1):
            for extra in short:
                for p in s.puncture_positions:
                    cands.append(Arc(s, C, fg.mul(w[:i], extra), ('P', p)))
    seen = set()
    for k in sorted(cands, key=Arc.sort_key):
        if k in seen:
            continue
        seen.add(k)
        if ok(k):
            info['method'] = 'surgery'
            return (k, info) if return_case else k
    for k in arcs_upto(s, C, 'dP', max(budget, len(gamma.word) + 2)):
        if ok(k):
            info['method'] = 'search'
            return (k, info) if return_case else k
    return (None, info) if return_case else None


# -- quasi right-veering ------------------------------------------------------------

def forget_is_positive(psi):
    """Heuristic certificate: forget(psi) is a nonempty word in positive
    twists, or the surface without marked points is a disk."""
    f = forget(psi)
    t = f.surface
    if t.boundary_count == 1:
        return True, 'forget(psi) lies in the trivial group MCG(D^2)'
    from .mcg import normalize
    letters = normalize(f.letters, t)
    if letters and all(x[-1] > 0 for x in letters):
        return True, 'forget(psi) is a positive multitwist word (heuristic)'
    return False, ''


def is_quasi_right_veering(psi, C, budget=None, use_certificate=True, stop_first=True):
    s = psi.surface
    s.check_boundary(C)
    budget = budget_or_default(budget)
    if use_certificate:
        ok, why = forget_is_positive(psi)
        if ok:
            return VeeringVerdict('quasi', C, CERTIFIED, bound=budget, reason=why)
    pool = arcs_upto(s, C, 'dd', budget)
    rejected, unknown = [], []
    for a in arcs_upto(s, C, 'dd', budget):
        img = psi.apply(a)
        if compare_right(img, a) != RIGHT:
            continue
        v = decide_ll_right(img, a, budget, pool=pool)
        if v.value == 'YES':
            res = VeeringVerdict('quasi', C, NOT_VEERING, witness=a, chain=v.chain,
                                 bound=budget, rejected=rejected, unknown=unknown)
            if stop_first:
                return res
        elif v.value == 'NO':
            rejected.append((a, v))
        else:
            unknown.append((a, v))
    return VeeringVerdict('quasi', C, NO_WITNESS, bound=budget,
                          rejected=rejected, unknown=unknown)


# -- fractional Dehn twist coefficient -------------------------------------------------

@dataclass
class RationalInterval:
    lower: Fraction
    upper: Fraction
    n: int
    reference: Arc = None
    note: str = ''

    def contains(self, x):
        return self.lower <= x <= self.upper

    def scale(self, d):
        return RationalInterval(self.lower * d, self.upper * d, self.n, self.reference, self.note)

    def intersects(self, other):
        return self.lower <= other.upper and other.lower <= self.upper

    def to_json(self):
        d = {'lower': str(self.lower), 'upper': str(self.upper), 'n': self.n}
        if self.reference is not None:
            d['reference'] = self.reference.to_json()
        if self.note:
            d['note'] = self.note
        return d


def reference_arc(psi, C):
    s = psi.surface
    T = twist_about(s, C)
    for kind in ('dd', 'dP'):
        for a in seed_arcs(s, C, kind):
            if T.apply(a) != a:
                return a
    raise ValueError('no arc at C%d is moved by the boundary twist' % C)


def _twisted(s, C, m, a, unit=1):
    sig = twist_about(s, C, m * unit).signature if m else None
    return a if m == 0 else apply_signature(sig, a)


def translation_count(s, C, a, b, unit=1):
    """max{m : T_C^(unit*m) a <= b}."""
    def le(m):
        return compare_right(b, _twisted(s, C, m, a, unit)) != RIGHT
    m = 0
    if le(0):
        step = 1
        while le(step):
            m = step
            step *= 2
        lo, hi = m, step      # le(lo) true, le(hi) false
    else:
        step = 1
        while not le(-step):
            step *= 2
        lo, hi = -step, -step // 2 if step > 1 else 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if le(mid):
            lo = mid
        else:
            hi = mid
    return lo


def fdtc_bounds(psi, C, n=20, gamma=None, max_len=200000, unit=1):
    """Rigorous bounds from one orbit: with tau_n the largest m such that
    T_C^m gamma <= psi^n gamma, the coefficient lies in [tau_n/n, (tau_n+1)/n]
    (the sequence tau_n is super-additive and tau_n + 1 sub-additive).

    `unit` > 1 measures twisting in units of T_C^unit (used upstairs in
    branched covers where the boundary covers C with that degree).
    """
    s = psi.surface
    s.check_boundary(C)
    if gamma is None:
        gamma = reference_arc(psi, C)
    sig = psi.signature
    x = gamma
    done = 0
    note = ''
    for i in range(n):
        y = apply_signature(sig, x)
        if len(y.word) > max_len:
            note = 'stopped at power %d (word length limit)' % done
            break
        x = y
        done += 1
    if done == 0:
        raise ValueError('power too large for the word length limit')
    tau = translation_count(s, C, gamma, x, unit)
    return RationalInterval(Fraction(tau, done), Fraction(tau + 1, done), done, gamma, note)


def fdtc_snap(iv, max_denominator=None):
    """The unique fraction with denominator <= max_denominator in the closed
    interval, or None.  A candidate value, not a certified one.  The default
    denominator bound is isqrt(n): two such fractions are at least 1/n apart."""
    if max_denominator is None:
        max_denominator = max(1, math.isqrt(iv.n))
    found = set()
    for q in range(1, max_denominator + 1):
        lo = math.ceil(iv.lower * q)
        hi = math.floor(iv.upper * q)
        for p in range(lo, hi + 1):
            found.add(Fraction(p, q))
            if len(found) > 1:
                return None
    return found.pop() if found else None


# -- report --------------------------------------------------------------------------

def veering_report(psi, budget=None, n=30, snap=None, quasi_budget=None):
    s = psi.surface
    budget = budget_or_default(budget)
    out = {'schema': 'veerkit.veering/1', 'surface': s.to_json(),
           'word': psi.text(), 'boundaries': []}
    depth_one = False
    above_one = True
    for C in s.boundaries:
        entry = {'boundary': 'C%d' % C}
        for variant in ('dd', 'dP', 'ddP'):
            entry[variant] = right_veering(psi, C, variant, budget).to_json()
        q = is_quasi_right_veering(psi, C, quasi_budget or budget)
        entry['quasi'] = q.to_json()
        if q.value == NOT_VEERING:
            depth_one = True
        try:
            iv = fdtc_bounds(psi, C, n)
            cand = fdtc_snap(iv, snap)
            entry['fdtc'] = dict(iv.to_json(), candidate=None if cand is None else str(cand),
                                 candidate_status='candidate')
            if not iv.lower > 1:
                above_one = False
        except ValueError as exc:
            entry['fdtc'] = {'error': str(exc)}
            above_one = False
        out['boundaries'].append(entry)
    out['depth'] = 1 if depth_one else '>=1, undetermined at budget %d' % budget
    out['nonloose_certified'] = bool(above_one and s.boundaries)
    return out


def implication_battery(s, words, bound=4, n_max=8):
    """Check, for each word and boundary, that dd-veering implies dP-veering,
    that every dd witness of a dP-veering map is special, and that the three
    variants agree once quantified over all boundaries."""
    rows = []
    violations = []
    for w in words:
        every = {'dd': True, 'dP': True, 'ddP': True}
        for C in s.boundaries:
            found = {v: find_left_witness(w, C, v, bound) for v in every}
            for v in every:
                every[v] = every[v] and found[v] is None
            if found['dd'] is None and found['dP'] is not None:
                violations.append({'word': w.text(), 'boundary': C,
                                   'kind': 'dd-veering but not dP-veering',
                                   'witness': found['dP'].to_json()})
            special = None
            if found['dP'] is None and found['dd'] is not None:
                special = []
                for g in arcs_upto(s, C, 'dd', bound):
                    if not moves_left(w, g):
                        continue
                    sp = classify_special(w, C, g, n_max)
                    if sp is None:
                        violations.append({'word': w.text(), 'boundary': C,
                                           'kind': 'dd witness of a dP-veering map is not special',
                                           'witness': g.to_json()})
                    else:
                        special.append(sp)
            rows.append({'word': w.text(), 'boundary': C,
                         'dd': found['dd'] is None, 'dP': found['dP'] is None,
                         'ddP': found['ddP'] is None,
                         'special': None if special is None else sorted(set(special))})
        if len(set(every.values())) > 1:
            violations.append({'word': w.text(), 'kind': 'variants disagree over all boundaries',
                               'verdicts': dict(every)})
    return {'schema': 'veerkit.battery/1', 'surface': s.to_json(), 'bound': bound,
            'words': len(words), 'rows': rows, 'violations': violations}
