"""Time the arc kernels with numba and with the pure python fallback.

Each mode runs in its own interpreter since the switch (VEERKIT_NUMBA) is
read at import time.

    python3 benchmarks/bench_kernels.py [--len 6] [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys
import time

WORK = r'''
import json, sys, time
from veerkit import accel
from veerkit.model import build_surface
from veerkit.arcs import enumerate_arcs, intersection_number, _INUM
L, R = int(sys.argv[1]), int(sys.argv[2])
s = build_surface(3, 2)
enumerate_arcs(s, 0, 'dd', 2)           # warm up / jit compile
best_e = best_i = 1e9
for _ in range(R):
    t = time.perf_counter()
    arcs = enumerate_arcs(s, 0, 'ddP', L)
    best_e = min(best_e, time.perf_counter() - t)
    sub = arcs[:150]
    _INUM.clear()
    t = time.perf_counter()
    tot = sum(intersection_number(a, b) for a in sub for b in sub)
    best_i = min(best_i, time.perf_counter() - t)
print(json.dumps({'numba': accel.USE_NUMBA, 'arcs': len(arcs), 'crossings': tot,
                  'enumerate_s': best_e, 'intersections_s': best_i}))
'''


def run(flag, L, R):
    env = dict(os.environ, VEERKIT_NUMBA=flag)
    out = subprocess.run([sys.executable, '-c', WORK, str(L), str(R)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    p = argparse.ArgumentParser()
    p.add_argument('--len', type=int, default=6)
    p.add_argument('--repeat', type=int, default=3)
    a = p.parse_args()
    t0 = time.time()
    fast = run('1', a.len, a.repeat)
    slow = run('0', a.len, a.repeat)
    assert fast['arcs'] == slow['arcs'] and fast['crossings'] == slow['crossings']
    print('word length <= %d on the disk with 2 holes and 2 punctures' % a.len)
    print('%-14s %10s %10s' % ('', 'numba', 'python'))
    for k in ('enumerate_s', 'intersections_s'):
        print('%-14s %10.4f %10.4f   x%.1f' % (k, fast[k], slow[k], slow[k] / max(fast[k], 1e-9)))
    print('arcs %d, total crossings %d, wall %.1fs' % (fast['arcs'], fast['crossings'], time.time() - t0))


if __name__ == '__main__':
    main()
