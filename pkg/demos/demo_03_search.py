"""
Searching for orders and classifying them
=========================================

Find every imaginary quadratic order with |d| <= 10^5 whose class group has
type dividing (2,...,2,4), then group forms that represent almost the same
primes.
"""

import time
from collections import Counter

from formprime import SearchConfig, build_classes, run_search
from formprime.search import emit_tables

t0 = time.perf_counter()
hits = run_search(SearchConfig(bound_d=100_000, f_max=30))
print(f"{len(hits)} orders in {time.perf_counter() - t0:.1f} s")
print("fundamental:", sum(H.f == 1 for H in hits), "nonmaximal:", sum(H.f > 1 for H in hits))

# how many orders of each type
for T, rows in emit_tables(hits).items():
    print(f"  {str(T):18} {len(rows):4}   largest |D| {max(abs(H.D) for H in rows)}")

classes = build_classes(hits)
many = [C for C in classes if len(C.delta) >= 2]
print(len(many), "classes with two or more fundamental discriminants")
print("by number of fundamental discriminants:", dict(Counter(len(C.delta) for C in many)))

# the classes with three fundamental discriminants
for C in many:
    if len(C.delta) == 3:
        print(" ", " ~ ".join(str(Q) for Q in C.forms), " E =", C.exceptional)
