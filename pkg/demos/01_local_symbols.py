"""A walk through the local machinery of k = F_3(t).

Places of k are monic irreducible polynomials plus the degree valuation at
infinity.  Everything local is decided by exact residue computations: this
script computes valuations, local squares and Hilbert symbols, and checks
the product formula on a handful of pairs.
"""

import random

from gquadforms import (
    Place,
    Poly,
    RatFunc,
    hilbert_symbol,
    is_local_square,
    square_class,
    support,
    valuation,
)

p = 3
t = RatFunc.t(p)
minus_one = RatFunc.from_int(p, -1)

print("== valuations ==")
for expr, place in [(t, "t"), (t, "inf"), (RatFunc.from_string(p, "t-1") / RatFunc.from_string(p, "t-2") ** 2, "t-2")]:
    v = Place.from_string(p, place)
    print(f"  v_{place}({expr}) = {valuation(expr, v)}")

print("\n== local squares ==")
for place in ("t", "t^2+1"):
    v = Place.from_string(p, place)
    print(f"  -1 a square in the completion at {place}?  {is_local_square(minus_one, v)}")
# at t^2+1 the residue field is F_9 where t^2 = -1, so -1 becomes a square

print("\n== Hilbert symbols of (-1, t) ==")
for v in support(minus_one, t):
    print(f"  (-1, t)_{v} = {hilbert_symbol(minus_one, t, v)}")

print("\n== product formula on random pairs ==")
rng = random.Random(0)


def rand_rf():
    while True:
        num = Poly(p, [rng.randrange(p) for _ in range(rng.randrange(1, 5))])
        den = Poly(p, [rng.randrange(p) for _ in range(rng.randrange(1, 5))])
        if not num.is_zero() and not den.is_zero():
            return RatFunc(num, den)


for _ in range(5):
    a, b = rand_rf(), rand_rf()
    symbols = [(str(v), hilbert_symbol(a, b, v)) for v in support(a, b)]
    prod = 1
    for _, s in symbols:
        prod *= s
    print(f"  a = {a},  b = {b}")
    print(f"    symbols {symbols}  product {prod}")
    assert prod == 1

print("\n== square classes ==")
for expr in ("2*t^2", "t^3+t", "t^2"):
    a = RatFunc.from_string(p, expr)
    print(f"  class({expr}) = {square_class(a)}")
