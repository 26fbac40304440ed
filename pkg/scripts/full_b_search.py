"""Full-scale search: every fundamental discriminant up to 4 * 67^4 = 80604484.

Usage: python scripts/full_b_search.py [--jobs N] [--checkpoint PATH] [--out DIR]

Resumable: finished ranges are recorded in the checkpoint file. Prints the
counts and exits 0 when exactly 226 fundamental discriminants are found.
"""

import argparse
import logging
import sys
import time
from pathlib import Path

from formprime.search import SearchConfig, default_workers, run_search
from formprime.tables import hits_tsv, write_tables


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--jobs", type=int, default=default_workers())
    p.add_argument("--checkpoint", default="full_b.ckpt")
    p.add_argument("--out", default="full_b")
    p.add_argument("--f-max", type=int, default=30)
    args = p.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")
    t0 = time.perf_counter()
    hits = run_search(SearchConfig(f_max=args.f_max, full_B=True, workers=args.jobs), args.checkpoint)
    write_tables({"hits.tsv": "d\tf\tD\ttype\n" + hits_tsv(hits)}, Path(args.out))
    fund = sum(H.f == 1 for H in hits)
    print(f"{fund} fundamental, {len(hits) - fund} nonmaximal, {time.perf_counter() - t0:.0f} s")
    print("largest |d|:", max(abs(H.d) for H in hits if H.f == 1))
    return 0 if fund == 226 else 1


if __name__ == "__main__":
    sys.exit(main())
