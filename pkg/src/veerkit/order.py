"""The orders < (right of) and << (strongly right of) on arcs at a base point."""
import json
from collections import deque
from dataclasses import dataclass, field

from . import freegroup as fg
from .arcs import (Arc, RIGHT, compare_right, crossings, enumerate_arcs,
                   find_boundary_right_P_bigon, intersection_number, validate_bigon,
                   joint_tighten)


@dataclass
class ChainCertificate:
    arcs: list

    def __len__(self):
        return len(self.arcs) - 1

    def validate(self):
        if len(self.arcs) < 2:
            return False
        for x, y in zip(self.arcs, self.arcs[1:]):
            if compare_right(x, y) != RIGHT or intersection_number(x, y) != 0:
                return False
        return True

    def to_json(self):
        return [a.to_json() for a in self.arcs]


@dataclass
class LLVerdict:
    value: str                     # YES, NO, UNKNOWN
    reason: str = ''               # not-prec, bigon, exhausted-at-bound, budget
    chain: ChainCertificate = None
    bigon: object = None
    budget: int = None

    def __bool__(self):
        return self.value == 'YES'

    def to_json(self):
        d = {'value': self.value, 'reason': self.reason}
        if self.chain is not None:
            d['chain'] = self.chain.to_json()
        if self.bigon is not None:
            d['bigon'] = self.bigon.to_json()
        if self.budget is not None:
            d['budget'] = self.budget
        return d


def _surgeries(a, b):
    """Arcs obtained by following a up to a crossing with a lift of b and then
    running along that lift to one of its ends."""
    s = a.surface
    out = set()
    bw = s.boundary_word(a.base)
    for c in crossings(a, b):
        g = c.g
        out.add(Arc(s, a.base, fg.mul(g, b.word), b.target))
        # the start of the lift sits on C next to the base point; slide off
        # to either side
        for w in (g, fg.mul(g, fg.inverse(bw)), fg.mul(g, bw)):
            out.add(Arc(s, a.base, w, ('C', a.base)))
    for c in crossings(b, a):
        g = c.g
        out.add(Arc(s, a.base, fg.mul(g, a.word), a.target))
        for w in (g, fg.mul(g, fg.inverse(bw)), fg.mul(g, bw)):
            out.add(Arc(s, a.base, w, ('C', a.base)))
    good = []
    for x in out:
        if x == a or x == b or x.target[0] != 'C':
            continue
        if x.is_trivial() or not x.is_embedded():
            continue
        good.append(x)
    good.sort(key=Arc.sort_key)
    return good


def interpolate(a, b, _memo=None, _depth=0):
    """Chain a = x0 < x1 < ... < xk = b of consecutive disjoint arcs, or None.

    Each step picks an arc strictly between a and b meeting both of them
    fewer times than they meet each other, and recurses.
    """
    if compare_right(a, b) != RIGHT:
        raise ValueError('interpolate needs a < b')
    memo = {} if _memo is None else _memo
    key = (a, b)
    if key in memo:
        return memo[key]
    n = intersection_number(a, b)
    if n == 0:
        memo[key] = [a, b]
        return memo[key]
    memo[key] = None
    if _depth > 40:
        return None
    for g in _surgeries(a, b):
        if compare_right(a, g) != RIGHT or compare_right(g, b) != RIGHT:
            continue
        if intersection_number(a, g) >= n or intersection_number(g, b) >= n:
            continue
        left = interpolate(a, g, memo, _depth + 1)
        if left is None:
            continue
        right = interpolate(g, b, memo, _depth + 1)
        if right is None:
            continue
        memo[key] = left + right[1:]
        return memo[key]
    return None


def chain_search(a, b, budget, pool=None):
    """Breadth first search for a chain through arcs of word length <= budget."""
    s = a.surface
    if pool is None:
        pool = enumerate_arcs(s, a.base, 'dd', budget)
    mid = [x for x in pool if x.target[0] == 'C'
           and compare_right(a, x) == RIGHT and compare_right(x, b) == RIGHT]
    prev = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if intersection_number(x, b) == 0 and compare_right(x, b) == RIGHT:
            chain = [b]
            while x is not None:
                chain.append(x)
                x = prev[x]
            return chain[::-1]
        for y in mid:
            if y in prev:
                continue
            if compare_right(x, y) == RIGHT and intersection_number(x, y) == 0:
                prev[y] = x
                queue.append(y)
    return None


def decide_ll_right(a, b, budget=6, exhaustive=False, pool=None, use_search=True):
    if a.surface != b.surface or a.base != b.base:
        raise ValueError('arcs must share surface and base point')
    if a.target[0] != 'C' or b.target[0] != 'C':
        raise ValueError('<< is defined on arcs ending on the boundary')
    if compare_right(a, b) != RIGHT:
        return LLVerdict('NO', 'not-prec')
    pair = joint_tighten(a, b)
    if len(pair) == 0:
        return LLVerdict('YES', 'disjoint', ChainCertificate([a, b]))
    cert = find_boundary_right_P_bigon(a, b, pair)
    if cert is not None:
        return LLVerdict('NO', 'bigon', bigon=cert)
    chain = interpolate(a, b)
    if chain is not None:
        return LLVerdict('YES', 'interpolation', ChainCertificate(chain))
    if use_search:
        chain = chain_search(a, b, budget, pool)
        if chain is not None:
            return LLVerdict('YES', 'search', ChainCertificate(chain), budget=budget)
        if exhaustive:
            return LLVerdict('NO', 'exhausted-at-bound', budget=budget)
    return LLVerdict('UNKNOWN', 'budget', budget=budget)


def conjecture_scan(s, C, bound, exhaustive=True, max_pairs=None, keep=False):
    """Compare the decided << against 'a < b and no boundary right P-bigon'."""
    arcs = enumerate_arcs(s, C, 'dd', bound)
    pairs = agree = 0
    counter = []
    table = {}
    yes_and_bigon = []
    records = []
    for a in arcs:
        for b in arcs:
            if a == b or compare_right(a, b) != RIGHT:
                continue
            pairs += 1
            if max_pairs and pairs > max_pairs:
                raise RuntimeError('scan budget exceeded: more than %d pairs' % max_pairs)
            v = decide_ll_right(a, b, bound, exhaustive, pool=arcs)
            bigon = find_boundary_right_P_bigon(a, b)
            predicted = bigon is None
            if keep:
                records.append((a, b, v, bigon))
            key = '%s/%s' % (v.value, v.reason)
            table[key] = table.get(key, 0) + 1
            if v.value == 'YES' and bigon is not None:
                yes_and_bigon.append((a, b))
            if v.value == 'UNKNOWN':
                continue
            if (v.value == 'YES') == predicted:
                agree += 1
            else:
                counter.append({'a': a.to_json(), 'b': b.to_json(),
                                'verdict': v.to_json(),
                                'bigon': None if bigon is None else bigon.to_json()})
    out = {'surface': s.to_json(), 'boundary': C, 'bound': bound,
           'arcs': len(arcs), 'pairs': pairs, 'agreements': agree,
           'verdicts': table, 'counterexamples': counter,
           'yes_with_bigon': len(yes_and_bigon)}
    if keep:
        out['records'] = records
    return out
