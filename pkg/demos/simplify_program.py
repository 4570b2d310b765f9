"""Simplify a small SOS program before handing it to a solver.

Run: python3 demos/simplify_program.py
"""
import json

from sosreduce import build_program_system, full_basis, parse_program_json, simplify_program

# minimize d  subject to  x1^2 + 2 d x1  is SOS
#
# With z = [1, x1] the coefficient of 1 forces Q[1,1] = 0, which kills the
# whole first row of Q, so the x1 equation 2 Q[1,x1] - 2 d = 0 collapses to
# -2 d = 0.  d is fixed before any SDP is solved.
doc = {
    "nvars": 1,
    "ndecs": 1,
    "cost": ["1"],
    "constraints": [{"parts": ["x1^2", "2*x1"]}],
}
prog = parse_program_json(json.dumps(doc))
psys = build_program_system(prog, [full_basis(1, 1)])
print("basis      :", psys.bases[0].entries)
for eq in psys.equations:
    terms = " + ".join(f"{c}*{psys.slots[s]}" for s, c in eq.entries) or "0"
    print(f"  x^{list(eq.product_degree)}: {terms} = {eq.rhs}")

rep = simplify_program(psys)
print("zeroed d   :", rep.zeroed_decision_vars)
print("final basis:", rep.bases[0].entries)
# without an explicit basis the hull bound already starts from [x1]
print("default    :", build_program_system(prog).bases[0].entries)

# (1 + d) x1^2 keeps d: the equation Q[x1,x1] - d = 1 says nothing about its sign.
doc["constraints"] = [{"parts": ["x1^2 + 1", "x1^2"]}]
rep = simplify_program(build_program_system(parse_program_json(json.dumps(doc))))
print()
print("(1+d) x1^2 + 1 -> zeroed", rep.zeroed_decision_vars,
      "signs", [s.value for s in rep.decision_signs])

# Two constraints tied together by d:  d*x1^2 SOS and -d*x1^2 + x1^4 SOS.
# The first says d >= 0 via Q[x1,x1] = d.
doc = {
    "nvars": 1,
    "ndecs": 1,
    "constraints": [
        {"parts": ["0", "x1^2"]},
        {"parts": ["x1^4 + 1", "-x1^2"]},
    ],
}
rep = simplify_program(build_program_system(parse_program_json(json.dumps(doc))))
print("coupled    : d is", rep.decision_signs[0].value,
      "| bases", [b.entries for b in rep.bases])
