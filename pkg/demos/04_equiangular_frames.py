"""Equiangular harmonic frames are optimal for two lost packets.

Rows of the DFT indexed by a cyclic difference set give unit-weight tight
frames whose vectors all meet at the same angle. Such frames attain the
two-erasure lower bound, while other harmonic frames overshoot it.

Run with ``python3 demos/04_equiangular_frames.py``.
"""

from reconlab import (OPERATOR, e2_lower_bound, harmonic_uwp, in_class_C, is_two_uniform,
                      welch_check, worst_case_error)

cases = {"Fano {1,2,4} mod 7": (7, {1, 2, 4}),
         "{0,1,3,9} mod 13": (13, {0, 1, 3, 9}),
         "{1,2,3} mod 6": (6, {1, 2, 3})}

for label, (m, S) in cases.items():
    V = harmonic_uwp(m, 1, S)
    e2 = worst_case_error(V, 2, OPERATOR).worst_error
    bound = e2_lower_bound(V, OPERATOR)
    welch = welch_check(V)
    print(f"{label}: d={V.d}, class C {in_class_C(V)}, equiangular {is_two_uniform(V)}")
    print(f"  e2 = {e2:.6f}, bound = {bound:.6f}, gap = {e2 - bound:.2e}")
    print(f"  max cross-correlation^2 = {welch.lhs:.6f} vs Welch-type {welch.c2psi:.6f}")
