"""
Two forms, one set of primes
============================

<7,6,39> has discriminant -1056 and <7,4,76> has discriminant -2112. Their
genus fields agree, and matching Kronecker signatures on that field shows the
two forms represent the same primes. A sieve then checks it directly.
"""

import numpy as np

from formprime import Form, cross_d_pairs, genus_basis, signature
from formprime.genus import fixed_field, format_span
from formprime.oracle import density_check, verify_class
from formprime.equiv import make_class, participants
from formprime.qform import represented_primes

B1, B2 = genus_basis(-264, 2), genus_basis(-132, 4)
print("genus fields", B1, B2, "equal:", B1 == B2)

# the order-4 classes are the only ones that can pair across the two discriminants
for D in (-1056, -2112):
    print(D, *participants(D))

# each form fixes the subfield of the genus field in which its small primes split
for Q in (Form(5, 2, 53), Form(7, 6, 39), Form(7, 4, 76)):
    s = signature(Q, B1)
    print(Q, "witness", s.witness_prime, "signature", s.values, "fixed field", format_span(fixed_field(s)))

print("pairs:", cross_d_pairs([-1056, -2112]))

# sieve check: no prime below 10^6 separates the two
report = verify_class(make_class([Form(7, 6, 39), Form(7, 4, 76)]), 10**6)
print("passed", report.passed, [m.count for m in report.members])

ps = np.flatnonzero(represented_primes(Form(7, 6, 39), 10**6))
print("residues mod 264:", sorted(set((ps % 264).tolist())))

obs, exp = density_check(Form(7, 6, 39))
print(f"density {obs:.5f}, expected {exp:.5f}")
