"""Reduce a polynomial and write the SDP in SDPA sparse format.

Run: python3 demos/export_sdpa.py [out.dat-s]
"""
import sys

from sosreduce import (
    build_gram_system,
    export_sdpa_sparse,
    full_basis,
    parse_polynomial,
    to_primal_form,
    zda_reduce,
)

p = parse_polynomial("3*x1^4 - 2*x1^2*x2 + 7*x1^2 - 4*x1*x2 + 4*x2^2 + 1")

before = to_primal_form(build_gram_system(p, full_basis(2, 2)))
after = to_primal_form(zda_reduce(build_gram_system(p, full_basis(2, 2))).reduced_system)
print(f"full basis   : block {before.blocks}, {len(before.rows)} equality rows")
print(f"after pruning: block {after.blocks}, {len(after.rows)} equality rows")

text = export_sdpa_sparse(after)
if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as fh:
        fh.write(text)
    print("wrote", sys.argv[1])
else:
    print(text, end="")
