"""Random sweep over window maps g: which ones give inner brackets, and what k0.

Draws scalar maps with central constants (should classify) and single-image
perturbations of them (should be rejected), over a few 2x2 Lambda.

    python3 scripts/inner_sweep.py --trials 200 --radius 2
"""

import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

from quantum_cluster.errors import ClusterError
from quantum_cluster.inner import GTransform, check_p_membership, classify_inner
from quantum_cluster.qring import QScalar
from quantum_cluster.qtorus import TorusElement, box_window, twist


@dataclass
class InnerSweepConfig:
    trials: int = 200
    radius: int = 2
    seed: int = 0
    max_entry: int = 3  # Lambda = [[0, a], [-a, 0]] with 1 <= a <= max_entry


def random_scalar(rng, nonzero=False):
    while True:
        c = QScalar({rng.randint(-3, 3): rng.randint(-4, 4) for _ in range(rng.randint(1, 2))})
        if c or not nonzero:
            return c


def perturb(rng, g, lam, window):
    e = rng.choice(window)
    if rng.random() < 0.5:
        return "rescale", g.replace(e, TorusElement.monomial(e, g.image(e).coeff(e) + random_scalar(rng, True)))
    partners = [f for f in window if twist(e, f, lam) != twist(f, e, lam)]
    f = rng.choice(partners)
    return "swap", g.replace(e, g.image(f)).replace(f, g.image(e))


def run(cfg: InnerSweepConfig):
    rng = random.Random(cfg.seed)
    window = [e for e in box_window(2, cfg.radius) if any(e)]
    tally = Counter()
    for _ in range(cfg.trials):
        a = rng.randint(1, cfg.max_entry)
        lam = ((0, a), (-a, 0))
        k0 = random_scalar(rng, True)
        consts = {e: random_scalar(rng) for e in rng.sample(window, 3)}
        g = GTransform.scalar_map(2, cfg.radius, k0, consts)
        try:
            ok = classify_inner(g, lam).k0 == k0
        except ClusterError:
            ok = False
        tally["scalar classified" if ok else "scalar MISCLASSIFIED"] += 1
        kind, bad = perturb(rng, g, lam, window)
        rep = check_p_membership(bad, lam)
        tally[f"{kind} rejected ({rep.condition})" if not rep.ok else f"{kind} ACCEPTED"] += 1
    return tally


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=InnerSweepConfig.trials)
    ap.add_argument("--radius", type=int, default=InnerSweepConfig.radius)
    ap.add_argument("--seed", type=int, default=InnerSweepConfig.seed)
    args = ap.parse_args()
    cfg = InnerSweepConfig(args.trials, args.radius, args.seed)
    t0 = time.perf_counter()
    tally = run(cfg)
    for key, n in sorted(tally.items()):
        print(f"{n:6d}  {key}")
    print(f"{time.perf_counter() - t0:.2f}s for {cfg.trials} trials at radius {cfg.radius}")


if __name__ == "__main__":
    main()
