"""Send random signals through a lossy channel and compare with the exact worst case.

Run with ``python3 demos/02_erasure_channel.py``.
"""

from reconlab import dft_uwp, random_protocol, worst_case_error
from reconlab.simulate import SimConfig, simulate

systems = {"dft": dft_uwp(5, 2, 3), "random": random_protocol(5, 2, 6, seed=1)}

for name, V in systems.items():
    print(f"== {name} {V}")
    for p in (1, 2):
        exact = worst_case_error(V, p).worst_error
        mc = simulate(SimConfig(V, trials=2000, loss="uniform", p=p, seed=0))
        adv = simulate(SimConfig(V, loss="adversarial", p=p))
        print(f"p={p}: worst case {exact:.4f}, adversarial scan {adv.max_error:.4f}, "
              f"Monte-Carlo max {mc.max_error:.4f}, mean {mc.mean_error:.4f}")

    # Independent losses: the error grows with the number of packets dropped.
    bern = simulate(SimConfig(V, trials=2000, loss="bernoulli", q=0.2, seed=0))
    for size, stats in sorted(bern.by_size.items()):
        print(f"  {stats['count']:4d} trials lost {size} packets: "
              f"max {stats['max_error']:.4f} <= {stats['worst_case_op']:.4f}")
