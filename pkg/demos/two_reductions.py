"""Prune a monomial basis two ways and compare.

Run: python3 demos/two_reductions.py
"""
from sosreduce import (
    GramMatrix,
    build_gram_system,
    evaluate_gram,
    find_forced_zero_diagonals,
    format_polynomial,
    full_basis,
    is_psd,
    newton_reduce,
    parse_polynomial,
    polytope_vertices,
    zda_reduce,
)


def show(basis):
    names = []
    for a in basis:
        parts = [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(a) if e]
        names.append("*".join(parts) or "1")
    return "[" + ", ".join(names) + "]"


# A quartic in two variables.  Degree 4, so the naive basis is every
# monomial of degree <= 2: six of them.
p = parse_polynomial("3*x1^4 - 2*x1^2*x2 + 7*x1^2 - 4*x1*x2 + 4*x2^2 + 1")
M0 = full_basis(2, 2)
print("p        =", format_polynomial(p))
print("start    =", show(M0))

# Newton polytope: only monomials a with 2a inside the hull of the support can
# appear in a square root of p.
print("vertices =", sorted(polytope_vertices(p.support)))
print("newton   =", show(newton_reduce(p, M0)))

# Zero diagonal sweeps need no hull at all.  x2^4 has no coefficient in p and
# only one way to be formed, so Q[x2^2, x2^2] = 0 and x2^2 goes.  That in turn
# leaves x1^2 x2^2 with a single pair.
csys = build_gram_system(p, M0)
print("forced   =", [show([M0[i]]) for i in find_forced_zero_diagonals(csys)])
res = zda_reduce(csys)
for sweep, mono in res.removed:
    print(f"  sweep {sweep}: drop {show([mono])}")
print("zda      =", show(res.final_basis), f"({res.sweeps} sweeps)")

# A certificate for the pruned basis: p = z^T Q z with Q PSD.
Q = GramMatrix(((1, 0, 0, 0), (0, 7, -2, 0), (0, -2, 4, -1), (0, 0, -1, 3)))
print("z^T Q z == p:", evaluate_gram(res.final_basis, Q) == p, " Q PSD:", is_psd(Q))

# On this sparse example zero diagonals beat the polytope.  x1*x2 survives the
# hull test but x1^2 x2^2 can only come from Q[x1x2, x1x2], so it is zero.
q = parse_polynomial("x1^2 + x2^2 + x1^4*x2^4")
M0 = full_basis(2, 4)
print()
print("q        =", format_polynomial(q))
print("start    =", len(M0), "monomials")
print("newton   =", show(newton_reduce(q, M0)))
print("zda      =", show(zda_reduce(build_gram_system(q, M0)).final_basis))

# And an impossible one: x1*x2 takes both signs.  Every diagonal is forced to
# zero, which leaves the x1*x2 coefficient equation reading 0 = 1.
r = zda_reduce(build_gram_system(parse_polynomial("x1*x2"), full_basis(2, 1)))
print()
print("x1*x2    =", r.status.value, "-", r.certificate)
