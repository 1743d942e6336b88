"""Command line entry point.  Every command writes a JSON report (stdout or
--out); verdicts, including UNKNOWN, exit 0 and bad input exits 2."""
import argparse
import json
import os
import random
import sys
import tempfile

from .arcs import compare_right, intersection_number, parse_arc
from .model import build_surface, load_surface
from .mcg import (ParseError, parse_mapclass_word, random_word,
                  stabilize_positively)


def surface_arg(text):
    """A JSON file, or 'b,n' optionally followed by ':order', e.g. '2,2:C1 p1 p2'."""
    if os.path.exists(text):
        return load_surface(text)
    head, _, order = text.partition(':')
    try:
        b, n = (int(x) for x in head.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError('surface must be a file or "b,n[:order]"')
    return build_surface(b, n, order or None)


def boundary_arg(text):
    text = text.strip()
    return int(text[1:]) if text[:1] in 'Cc' else int(text)


def emit(report, out=None):
    data = json.dumps(report, indent=2, sort_keys=True) + '\n'
    if not out:
        sys.stdout.write(data)
        return
    d = os.path.dirname(os.path.abspath(out))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix='.tmp-')
    with os.fdopen(fd, 'w') as f:
        f.write(data)
    os.replace(tmp, out)


def _budget(args):
    env = os.environ.get('VEERKIT_BUDGET')
    if args.budget is not None:
        return args.budget
    return int(env) if env else 6


# -- commands -------------------------------------------------------------------

def cmd_order_cmp(args):
    s = args.surface
    a, b = parse_arc(s, args.arc_a), parse_arc(s, args.arc_b)
    return {'schema': 'veerkit.order/1', 'command': 'order cmp',
            'a': a.to_json(), 'b': b.to_json(), 'verdict': compare_right(a, b),
            'intersection_number': intersection_number(a, b)}


def cmd_order_ll(args):
    from .order import decide_ll_right
    s = args.surface
    a, b = parse_arc(s, args.arc_a), parse_arc(s, args.arc_b)
    v = decide_ll_right(a, b, _budget(args), args.exhaustive)
    return {'schema': 'veerkit.order/1', 'command': 'order ll',
            'a': a.to_json(), 'b': b.to_json(), 'verdict': v.to_json()}


def cmd_order_scan(args):
    from .order import conjecture_scan
    r = conjecture_scan(args.surface, args.boundary, args.bound, True, args.max_pairs)
    r['schema'] = 'veerkit.scan/1'
    return r


def _word(args):
    return parse_mapclass_word(args.surface, args.word)


def cmd_veer_rv(args):
    from .veering import right_veering
    psi = _word(args)
    out = {'schema': 'veerkit.veering/1', 'command': 'veer rv', 'word': psi.text(),
           'results': []}
    for C in _boundaries(args):
        out['results'].append(right_veering(psi, C, args.variant, _budget(args)).to_json())
    return out


def cmd_veer_qrv(args):
    from .veering import is_quasi_right_veering
    psi = _word(args)
    out = {'schema': 'veerkit.veering/1', 'command': 'veer qrv', 'word': psi.text(),
           'results': []}
    for C in _boundaries(args):
        v = is_quasi_right_veering(psi, C, _budget(args), not args.no_certificate)
        out['results'].append(v.to_json())
    return out


def cmd_veer_fdtc(args):
    from .veering import fdtc_bounds, fdtc_snap
    psi = _word(args)
    out = {'schema': 'veerkit.fdtc/1', 'word': psi.text(), 'results': []}
    for C in _boundaries(args):
        iv = fdtc_bounds(psi, C, args.n)
        cand = fdtc_snap(iv, args.snap)
        d = iv.to_json()
        d['boundary'] = 'C%d' % C
        d['candidate'] = None if cand is None else str(cand)
        d['candidate_status'] = 'candidate'
        out['results'].append(d)
    return out


def cmd_veer_report(args):
    from .veering import veering_report
    return veering_report(_word(args), _budget(args), args.n, args.snap)


def cmd_veer_battery(args):
    from .veering import implication_battery
    s = args.surface
    rng = random.Random(args.seed)
    words = [random_word(s, rng.randint(1, args.max_len), rng) for _ in range(args.words)]
    r = implication_battery(s, words, args.bound, args.n_max)
    r['seed'] = args.seed
    if not args.rows:
        r.pop('rows')
    return r


def _cover(args):
    from .covers import build_double_cover
    if args.cover:
        with open(args.cover) as f:
            d = json.load(f)
        s = load_surface(d['base'])
        return s, build_double_cover(s, d.get('permutations', d.get('monodromy', {})))
    s = args.surface
    if s is None:
        raise ValueError('give --cover FILE or --surface with --swap')
    swap = [x.strip() for x in (args.swap or '').split(',') if x.strip()]
    if not swap:
        swap = [s.label(k) for k in s.puncture_positions]
    return s, build_double_cover(s, {x: 'swap' for x in swap})


def cmd_cover_build(args):
    return _cover(args)[1].to_json()


def cmd_cover_lift(args):
    from .covers import lift_mapclass
    s, cd = _cover(args)
    psi = parse_mapclass_word(s, args.word)
    lift = lift_mapclass(cd, psi)
    return {'schema': 'veerkit.cover-lift/1', 'cover': cd.to_json(), 'word': psi.text(),
            'liftable': lift is not None,
            'lift': None if lift is None else lift.text(),
            'method': None if lift is None else lift.method}


def cmd_cover_check(args):
    from .covers import check_fdtc_scaling
    s, cd = _cover(args)
    psi = parse_mapclass_word(s, args.word)
    return check_fdtc_scaling(cd, psi, args.boundary, args.n, args.snap)


def cmd_movie_emit(args):
    from .veering import is_quasi_right_veering, NOT_VEERING
    from .movie import emit_movie, check_movie, render_svg
    psi = _word(args)
    v = is_quasi_right_veering(psi, args.boundary, _budget(args), use_certificate=False)
    if v.value != NOT_VEERING:
        return {'schema': 'veerkit.movie-run/1', 'word': psi.text(),
                'verdict': v.to_json(), 'movie': None}
    m = emit_movie(psi, v.chain)
    rep = {'schema': 'veerkit.movie-run/1', 'word': psi.text(), 'verdict': v.to_json(),
           'movie': m.to_json(), 'problems': check_movie(m, psi), 'frames': []}
    if args.svg_dir:
        os.makedirs(args.svg_dir, exist_ok=True)
        for i, doc in enumerate(render_svg(m)):
            path = os.path.join(args.svg_dir, 'frame%02d.svg' % i)
            with open(path, 'w') as f:
                f.write(doc)
            rep['frames'].append(path)
        emit(m.to_json(), os.path.join(args.svg_dir, 'movie.json'))
    return rep


def cmd_stabilize(args):
    from .veering import find_left_witness
    psi = _word(args)
    w, (q, qq) = stabilize_positively(psi, args.boundary)
    t = w.surface
    checks = {}
    for v in ('dd', 'dP', 'ddP'):
        a = find_left_witness(w, args.boundary, v, _budget(args))
        checks[v] = None if a is None else a.to_json()
    return {'schema': 'veerkit.stabilize/1', 'word': psi.text(), 'surface': t.to_json(),
            'stabilized': w.text(), 'q': t.label(q), 'q_prime': t.label(qq),
            'left_witness': checks, 'budget': _budget(args)}


def _boundaries(args):
    s = args.surface
    if args.boundary is None:
        return list(s.boundaries)
    s.check_boundary(args.boundary)
    return [args.boundary]


# -- parser -------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog='veerkit', description=__doc__)
    top = p.add_subparsers(dest='group', required=True)

    def common(sp, word=True, arcs=False, need_surface=True):
        sp.add_argument('--surface', type=surface_arg, required=need_surface,
                        help='JSON file or "b,n[:order]"')
        if word:
            sp.add_argument('--word', default='', help='mapping class word, e.g. "s1 T[C1..p2]^-1"')
        if arcs:
            sp.add_argument('--arc-a', required=True)
            sp.add_argument('--arc-b', required=True)
        sp.add_argument('--boundary', type=boundary_arg, default=None)
        sp.add_argument('--budget', type=int, default=None)
        sp.add_argument('--out', default=None)

    order = top.add_parser('order').add_subparsers(dest='cmd', required=True)
    sp = order.add_parser('cmp')
    common(sp, word=False, arcs=True)
    sp.set_defaults(func=cmd_order_cmp)
    sp = order.add_parser('ll')
    common(sp, word=False, arcs=True)
    sp.add_argument('--exhaustive', action='store_true')
    sp.set_defaults(func=cmd_order_ll)
    sp = order.add_parser('scan')
    common(sp, word=False)
    sp.add_argument('--bound', type=int, default=3)
    sp.add_argument('--max-pairs', type=int, default=None)
    sp.set_defaults(func=cmd_order_scan, boundary=0)

    veer = top.add_parser('veer').add_subparsers(dest='cmd', required=True)
    sp = veer.add_parser('rv')
    common(sp)
    sp.add_argument('--variant', choices=['dd', 'dP', 'ddP'], default='ddP')
    sp.set_defaults(func=cmd_veer_rv)
    sp = veer.add_parser('qrv')
    common(sp)
    sp.add_argument('--no-certificate', action='store_true',
                    help='always search, even when forget(psi) is positive')
    sp.set_defaults(func=cmd_veer_qrv)
    for name, fn in (('fdtc', cmd_veer_fdtc), ('report', cmd_veer_report)):
        sp = veer.add_parser(name)
        common(sp)
        sp.add_argument('--n', type=int, default=50)
        sp.add_argument('--snap', type=int, default=None,
                            help='largest denominator tried (default isqrt(n))')
        sp.set_defaults(func=fn)
    sp = veer.add_parser('battery')
    common(sp, word=False)
    sp.add_argument('--words', type=int, default=500)
    sp.add_argument('--max-len', type=int, default=8)
    sp.add_argument('--bound', type=int, default=4)
    sp.add_argument('--n-max', type=int, default=8)
    sp.add_argument('--seed', type=int, default=0)
    sp.add_argument('--rows', action='store_true', help='include per-word rows')
    sp.set_defaults(func=cmd_veer_battery)

    cover = top.add_parser('cover').add_subparsers(dest='cmd', required=True)
    for name, fn in (('build', cmd_cover_build), ('lift', cmd_cover_lift),
                     ('check', cmd_cover_check)):
        sp = cover.add_parser(name)
        common(sp, word=name != 'build', need_surface=False)
        sp.add_argument('--cover', default=None, help='cover description JSON')
        sp.add_argument('--swap', default=None, help='comma separated objects that swap sheets')
        if name == 'check':
            sp.add_argument('--n', type=int, default=30)
            sp.add_argument('--snap', type=int, default=None,
                            help='largest denominator tried (default isqrt(n))')
            sp.set_defaults(boundary=0)
        sp.set_defaults(func=fn)

    movie = top.add_parser('movie').add_subparsers(dest='cmd', required=True)
    sp = movie.add_parser('emit')
    common(sp)
    sp.add_argument('--svg-dir', default=None)
    sp.set_defaults(func=cmd_movie_emit, boundary=0)

    sp = top.add_parser('stabilize')
    common(sp)
    sp.set_defaults(func=cmd_stabilize, boundary=0)
    return p


def main(argv=None):
    p = build_parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as e:
        return e.code
    try:
        report = args.func(args)
        emit(report, args.out)
    except (ParseError, ValueError, OSError, KeyError) as e:
        sys.stderr.write('veerkit: error: %s\n' % e)
        return 2
    return 0


if __name__ == '__main__':
    sys.exit(main())
