"""Time the permutation kernels with and without numba.

Each backend runs in its own interpreter because the choice is made at
import time from THOMPSONKIT_NO_NUMBA.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, time
from thompsonkit import _kernels, metric

def best(fn, repeat):
    out = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        out = min(out, time.perf_counter() - t0)
    return out

rng = random.Random(0)
perms = []
for _ in range(2000):
    p = list(range(1, 257))
    rng.shuffle(p)
    perms.append(tuple(p))
repeat = {repeat}
metric.lds(perms[0]); metric.increasing_partition(perms[0]); metric.riffle_distances(3)  # warm up / compile
res = {{
    "backend": _kernels.BACKEND,
    "lds_2000x256": best(lambda: [metric.lds(p) for p in perms], repeat),
    "piles_2000x256": best(lambda: [metric.increasing_partition(p) for p in perms], repeat),
    "bfs_sym6": best(lambda: metric.riffle_distances(6), repeat),
    "bfs_sym7": best(lambda: metric.riffle_distances(7), 1),
}}
print(json.dumps(res))
"""


def run(no_numba: bool, repeat: int) -> dict:
    env = dict(os.environ, THOMPSONKIT_NO_NUMBA="1" if no_numba else "0")
    out = subprocess.run([sys.executable, "-c", WORKLOAD.format(repeat=repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    print(f"{'workload':<18}{fast['backend']:>12}{slow['backend']:>12}{'speedup':>10}")
    for key in fast:
        if key == "backend":
            continue
        print(f"{key:<18}{fast[key]:>11.4f}s{slow[key]:>11.4f}s{slow[key] / fast[key]:>9.1f}x")


if __name__ == "__main__":
    main()
