"""Quadratic forms over F_3(t) and the local-global equivalence engine.

Over a global function field a nondegenerate form is determined by rank,
discriminant and the Hasse invariants at finitely many places; this demo
diagonalizes forms, tabulates those invariants, and decides equivalence,
isotropy and hyperbolicity.
"""

from gquadforms import (
    Place,
    QuadForm,
    RatFunc,
    equivalent_global,
    equivalent_local,
    hyperbolic_form,
    invariants_report,
    is_hyperbolic,
    is_isotropic,
)
from gquadforms.linalg import Mat

p = 3


def rf(s):
    return RatFunc.from_string(p, s)


def diag(*entries):
    return QuadForm.from_diagonal(p, [rf(e) for e in entries])


print("== diagonalization with an exact congruence ==")
G = Mat(p, [[rf("0"), rf("1")], [rf("1"), rf("t")]])
q = QuadForm(G)
entries, P = q.diagonalize()
print(f"  Gram rows {[[str(e) for e in r] for r in G.rows]}")
print(f"  diagonal {[str(e) for e in entries]}  (P^T G P = diag, checked exactly)")
assert P.T * G * P == Mat(p, [[entries[i] if i == j else rf("0") for j in range(2)] for i in range(2)])

print("\n== invariants ==")
for form, label in [(diag("-1", "t"), "<-1, t>"), (diag("1", "1", "t"), "<1, 1, t>")]:
    print(f"  {label}: {invariants_report(form)}")

print("\n== equivalence verdicts ==")
print("  <1,-1> ~ <t,-t> globally:", equivalent_global(diag("1", "-1"), diag("t", "-t")))
print("  <1,1>  ~ <1,-1> globally:", equivalent_global(diag("1", "1"), diag("1", "-1")))
vt = Place.from_string(p, "t")
print("  <1,1>  ~ <-1,-1> at (t):", equivalent_local(diag("1", "1"), diag("-1", "-1"), vt))

print("\n== isotropy and hyperbolicity ==")
norm_form_division = diag("1", "1", "-t", "-t")  # norm form of the quaternion (-1, t)
print("  norm form of (-1,t) isotropic:", is_isotropic(norm_form_division))
norm_form_split = diag("1", "-1", "-t", "t")  # norm form of (1, t)
print("  norm form of (1,t)  isotropic:", is_isotropic(norm_form_split))
print("  norm form of (1,t)  hyperbolic:", is_hyperbolic(norm_form_split))
print("  rank-4 hyperbolic reference:", [str(e) for e in hyperbolic_form(p, 4).diagonal()])
