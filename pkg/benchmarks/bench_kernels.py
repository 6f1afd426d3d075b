"""Compare the numba and numpy relative-range kernels on random successor tables.

    python3 benchmarks/bench_kernels.py [--vertices 200] [--labels 3] [--rows 256 4096 32768]

Both backends are checked for identical output before timing.
"""

import argparse
import time

import numpy as np

from labelspace import _kernels as K


def random_inputs(rng, n, labels, rows, density=0.05):
    nw = K.n_words(n)
    adj = rng.random((labels, n, n)) < density
    succ = np.stack([K.pack([sum(1 << int(j) for j in np.flatnonzero(adj[a, i])) for i in range(n)], nw)
                     for a in range(labels)])
    full = (1 << n) - 1
    masks = K.pack([int.from_bytes(rng.bytes(8 * nw), "little") & full or 1 for _ in range(rows)], nw)
    return succ, masks


def best_of(fn, repeat=5):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--vertices", type=int, default=200)
    ap.add_argument("--labels", type=int, default=3)
    ap.add_argument("--rows", type=int, nargs="+", default=[256, 4096, 32768])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    have_numba = bool(K._get_numba_kernel())
    print(f"vertices={args.vertices} labels={args.labels} numba={'yes' if have_numba else 'no'}")
    print(f"{'rows':>8} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for rows in args.rows:
        succ, masks = random_inputs(rng, args.vertices, args.labels, rows)
        ref = K.images_numpy(succ, masks)
        if have_numba:
            K.images_numba(succ, masks)  # compile outside the timing
            assert np.array_equal(ref, K.images_numba(succ, masks))
            t_nb = best_of(lambda: K.images_numba(succ, masks))
        else:
            t_nb = float("nan")
        t_np = best_of(lambda: K.images_numpy(succ, masks))
        print(f"{rows:>8} {t_np * 1e3:>10.2f} {t_nb * 1e3:>10.2f} {t_np / t_nb:>8.1f}")


if __name__ == "__main__":
    main()
