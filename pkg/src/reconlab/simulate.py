"""Monte-Carlo erasure-channel simulation with blind reconstruction.

Unit-norm signals are encoded with a protocol, packets are dropped by a
loss model, and the signal is rebuilt from the survivors without any
correction. Each trial's error is computed twice (packet domain and
operator domain) and checked against the exact operator-norm worst case
for that number of lost packets.
"""

from __future__ import annotations

import csv
import itertools
import json
import os
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .erasures import error_matrix, worst_case_error
from .exceptions import InvalidSystemError, ReconError
from .spectra import OPERATOR, GaugeNorm
from .systems import ErasurePattern, ReconSystem, as_system, classify, encode, reconstruct

LOSS_MODELS = ("uniform", "bernoulli", "adversarial")
CSV_COLUMNS = ("trial", "pattern", "error", "bound", "slack")


def default_seed() -> int:
    return int(os.environ.get("RECONLAB_SEED", "0"))


@dataclass
class SimConfig:
    """Simulation settings.

    ``loss`` is ``"uniform"`` (exactly `p` random packets lost),
    ``"bernoulli"`` (each packet lost independently with probability `q`)
    or ``"adversarial"`` (every p-subset, signal on the worst direction).
    """

    system: Union[ReconSystem, str]
    trials: int = 1000
    loss: str = "uniform"
    p: int = 1
    q: float = 0.1
    norm: str = "op"
    seed: Optional[int] = None
    output: Optional[str] = None

    def validate(self) -> None:
        if self.loss not in LOSS_MODELS:
            raise ValueError(f"unknown loss model {self.loss!r}; choose from {LOSS_MODELS}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0.0 <= self.q <= 1.0:
            raise ValueError("q must lie in [0, 1]")
        if self.p < 0:
            raise ValueError("p must be >= 0")


@dataclass
class SimReport:
    loss: str
    trials: int
    seed: int
    max_error: float
    mean_error: float
    by_size: dict = field(default_factory=dict)
    histogram: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"loss": self.loss, "trials": self.trials, "seed": self.seed,
                "max_error": self.max_error, "mean_error": self.mean_error,
                "by_size": {str(k): v for k, v in sorted(self.by_size.items())},
                "histogram": dict(sorted(self.histogram.items()))}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(CSV_COLUMNS)
            for row in self.rows:
                w.writerow([row[0], row[1], repr(row[2]), repr(row[3]), repr(row[4])])


def _unit_signal(rng, d: int, real: bool) -> np.ndarray:
    x = rng.standard_normal(d)
    if not real:
        x = x + 1j * rng.standard_normal(d)
    return x / np.linalg.norm(x)


def trial_error(V: ReconSystem, x, K: ErasurePattern, check_tol: float = 1e-12) -> float:
    """``||x - V* E_K V x||``, checked against ``||V* D_K V x||``."""
    xhat = reconstruct(V, encode(V, x), mode="blind", erased=K)
    e_packets = float(np.linalg.norm(x - xhat))
    e_operator = float(np.linalg.norm(error_matrix(V, K) @ x))
    if abs(e_packets - e_operator) > check_tol * max(1.0, float(np.linalg.norm(x))):
        raise ReconError(f"packet/operator error paths disagree: {e_packets!r} vs {e_operator!r}")
    return e_packets


def simulate(cfg: SimConfig) -> SimReport:
    """Run the simulation described by `cfg` and return its report."""
    cfg.validate()
    V = as_system(cfg.system)
    if not classify(V).is_protocol:
        raise InvalidSystemError("blind reconstruction needs a protocol (S = I)")
    psi = GaugeNorm.parse(cfg.norm)
    seed = default_seed() if cfg.seed is None else int(cfg.seed)
    rng = np.random.default_rng(seed)
    real = V.shape.field == "real"
    worst: dict = {}

    def bound_for(size):
        if size not in worst:
            worst[size] = worst_case_error(V, size, OPERATOR).worst_error
        return worst[size]

    draws = []
    if cfg.loss == "adversarial":
        if cfg.p > V.m:
            raise ValueError(f"p={cfg.p} exceeds m={V.m}")
        for K in itertools.combinations(range(V.m), cfg.p):
            pat = ErasurePattern(K)
            w, Q = np.linalg.eigh(error_matrix(V, pat))
            draws.append((pat, Q[:, -1]))
    else:
        for _ in range(cfg.trials):
            x = _unit_signal(rng, V.d, real)
            if cfg.loss == "uniform":
                if cfg.p > V.m:
                    raise ValueError(f"p={cfg.p} exceeds m={V.m}")
                K = rng.choice(V.m, size=cfg.p, replace=False)
            else:
                K = np.nonzero(rng.random(V.m) < cfg.q)[0]
            draws.append((ErasurePattern(tuple(int(k) for k in K)), x))

    rows, errors = [], []
    by_size: dict = {}
    hist: dict = {}
    for t, (pat, x) in enumerate(draws):
        e = trial_error(V, x, pat)
        b = bound_for(len(pat))
        if e > b + 1e-9:
            raise ReconError(f"trial {t}: error {e!r} exceeds worst case {b!r} for K={pat}")
        rows.append((t, str(pat), e, b, b - e))
        errors.append(e)
        hist[str(pat)] = hist.get(str(pat), 0) + 1
        s = by_size.setdefault(len(pat), {"count": 0, "max_error": 0.0, "sum": 0.0})
        s["count"] += 1
        s["max_error"] = max(s["max_error"], e)
        s["sum"] += e
    for size, s in by_size.items():
        s["mean_error"] = s.pop("sum") / s["count"]
        s["worst_case_op"] = bound_for(size)
        s[f"worst_case_{psi.name}"] = worst_case_error(V, size, psi).worst_error
    rep = SimReport(cfg.loss, len(draws), seed, float(max(errors)), float(np.mean(errors)),
                    by_size, hist, rows)
    if cfg.output:
        rep.write_csv(cfg.output)
    return rep
