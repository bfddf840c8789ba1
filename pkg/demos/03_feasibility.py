"""Which block spectra can a protocol have?

Run with ``python3 demos/03_feasibility.py``.
"""

from reconlab import numeric_oracle, protocol_feasible, uwp_existence

# Equal-weight full-rank protocols: the checker answers from eigenvalue inequalities.
# The inequality families grow quickly, so d is capped at 6.
print("u.w.p. rank-l (m, l, d)-protocols")
for m, l in [(2, 2), (3, 2), (2, 3), (3, 3)]:
    row = []
    for d in range(l, min(m * l, 6) + 1):
        row.append(f"d={d}:{'yes' if uwp_existence(m, l, d).feasible else 'no '}")
    print(f"  m={m} l={l}  " + "  ".join(row))

# Two packets cannot split C^3 evenly with rank-2 blocks; the failing inequality is reported.
verdict = uwp_existence(2, 2, 3)
print("\n(2, 2, 3):", "feasible" if verdict.feasible else "infeasible")
for line in verdict.lines()[:3]:
    print("  violated", line)

# A numerical search agrees: it finds a witness for the feasible case and none for the other.
good = [[1.0, 0.5], [1.0, 0.5]]
bad = [[0.75, 0.75], [0.75, 0.75]]
for spectra in (good, bad):
    v = protocol_feasible(spectra, 3)
    o = numeric_oracle(spectra, 3, attempts=2000, seed=0)
    print(f"{spectra}: checker {v.feasible}, search found {o.found} "
          f"(best residual {o.residual:.2e})")
