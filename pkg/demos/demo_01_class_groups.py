"""
Reduced forms and class groups
==============================

Forms <a,b,c> = ax^2 + bxy + cy^2 of negative discriminant, their reduction,
and the class group they form under composition.
"""

from formprime import Form, class_group, group_type, reduce_gl2, reduce_sl2

# reduction picks the unique reduced form in an SL2 orbit
Q = Form(12, 10, 3)
print(Q, "->", reduce_sl2(Q), "discriminant", Q.discriminant)

# <a,b,c> and <a,-b,c> are mirror images; GL2 reduction identifies them
print(reduce_sl2(Form(7, -6, 39)), reduce_gl2(Form(7, -6, 39)))

# Cl(-1056) has 16 classes and type (2,2,4)
G = class_group(-1056)
print("h =", G.h, "type", group_type(G))
for x in G:
    print(f"  {x}  order {G.orders[x]}")

# a reduced form is its own inverse exactly when b = 0, |b| = a or a = c
ambiguous = [x for x in G if x.b == 0 or abs(x.b) == x.a or x.a == x.c]
print(len(ambiguous), "ambiguous classes:", *ambiguous)

# composing <7,6,39> with itself four times gives the identity
x = Form(7, 6, 39)
print([str(G.power(x, k)) for k in range(5)])

# types that fail the exponent test: Cl(-47) is cyclic of order 5
print(-47, group_type(class_group(-47)))
