"""Compare the operation closure with the brute-force oracle size by size."""
import argparse
import time

from tangles import lattice as L
from tangles.enumeration import enumerate_by_ops, enumerate_oracle


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tiling", default="square", choices=sorted(L.TILINGS))
    ap.add_argument("--max-size", type=int, default=5)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    t = L.get_tiling(args.tiling)
    ops = enumerate_by_ops(t, args.max_size, threads=args.threads)
    agree = True
    for m in range(args.max_size + 1):
        t0 = time.perf_counter()
        oracle = enumerate_oracle(t, m, threads=args.threads, budget=None).keys(m)
        same = oracle == ops.keys(m)
        agree &= same
        print(f"size {m:2d}: ops {len(ops.keys(m)):5d}  oracle {len(oracle):5d}  "
              f"{'agree' if same else 'DIFFER'}  ({time.perf_counter() - t0:.1f}s)")
    raise SystemExit(0 if agree else 1)


if __name__ == "__main__":
    main()
