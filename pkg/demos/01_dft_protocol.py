"""Build a roots-of-unity protocol and check that it is optimal for one lost packet.

Run with ``python3 demos/01_dft_protocol.py``.
"""

import numpy as np

from reconlab import (OPERATOR, FROBENIUS, check_uwp_optimality, classify, dft_uwp,
                      random_protocol, worst_case_error)
from reconlab.potential import q_potential

# Four packets of length two carrying a signal in C^4.
V = dft_uwp(m=4, l=2, k=2)
print(V)
print("classification:", classify(V).to_dict())

# The q-potential of an optimal protocol is a multiple of the identity.
print("q-potential:\n", np.round(q_potential(V), 12))
report = check_uwp_optimality(V)
print("equality certificate:", report.certifies)

# Losing one packet costs at least d/(ml) in operator norm; this protocol pays exactly that.
for psi in (OPERATOR, FROBENIUS):
    rep = worst_case_error(V, 1, psi)
    print(f"{psi.name}: e1 = {rep.worst_error:.6f}, lower bound = {rep.bound:.6f}")

# A generic protocol of the same shape does worse.
W = random_protocol(4, 2, 4, seed=0)
rep = worst_case_error(W, 1, OPERATOR)
print(f"random protocol: e1 = {rep.worst_error:.6f} (worst packet {rep.argmax_pattern})")
