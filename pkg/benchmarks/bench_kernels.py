"""Compare the compiled and pure-Python kernels on identical workloads.

    python benchmarks/bench_kernels.py --words 20000 --length 24 --seed 7
"""

import argparse
import random
import timeit

from dualcx.kernels import _pykernels

try:
    from dualcx.kernels import _ckernels
except ImportError:
    _ckernels = None


def workloads(seed, n_words, length, n_configs):
    rng = random.Random(seed)
    words = []
    for _ in range(n_words):
        k = rng.randint(2, 6)
        words.append([rng.randrange(k) for _ in range(rng.randint(1, length))])
    configs = []
    for _ in range(n_configs):
        n = rng.randint(2, 12)
        masks = [rng.randrange(1, 1 << n) for _ in range(rng.randint(1, 14))]
        configs.append((n, masks))
    return words, configs


def run(mod, words, configs):
    for w in words:
        mod.reduce_ab(w)
        mod.reduce_a(w)
    for n, masks in configs:
        mod.peel_greedy(n, masks)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--words", type=int, default=20000)
    ap.add_argument("--length", type=int, default=24)
    ap.add_argument("--configs", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    words, configs = workloads(args.seed, args.words, args.length, args.configs)
    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.append(("cython", _ckernels))
        for w in words[:2000]:
            assert _ckernels.reduce_ab(w) == _pykernels.reduce_ab(w)
        for n, m in configs[:2000]:
            assert _ckernels.peel_greedy(n, m) == _pykernels.peel_greedy(n, m)
    else:
        print("compiled kernels not built; timing the Python fallback only")

    times = {}
    for name, mod in backends:
        best = min(timeit.repeat(lambda: run(mod, words, configs), number=1, repeat=args.repeat))
        times[name] = best
        print(f"{name:>7}: {best * 1e3:9.1f} ms  ({args.words} words, {args.configs} peel tests)")
    if len(times) == 2:
        print(f"speedup: {times['python'] / times['cython']:.1f}x")


if __name__ == "__main__":
    main()
