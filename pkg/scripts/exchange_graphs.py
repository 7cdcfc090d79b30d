"""Enumerate exchange graphs of the catalog seeds and tabulate their sizes.

    python3 scripts/exchange_graphs.py --depth 5
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from quantum_cluster import catalog
from quantum_cluster.seeds import enumerate_exchange_graph


@dataclass
class GraphSweepConfig:
    depth: int = 5
    seeds: list = field(default_factory=lambda: sorted(catalog.CATALOG))
    json_out: str | None = None


def run(cfg: GraphSweepConfig):
    rows = []
    for name in cfg.seeds:
        t0 = time.perf_counter()
        g = enumerate_exchange_graph(catalog.CATALOG[name](), cfg.depth)
        shape = "cycle" if g.is_cycle() else "path" if g.is_path() else "other"
        variables = g.cluster_variables()
        widest = max(len(v) for v in variables)
        rows.append({"seed": name, "depth": cfg.depth, "nodes": len(g.seeds), "edges": len(g.edges),
                     "shape": shape, "variables": len(variables), "max_terms": widest,
                     "seconds": round(time.perf_counter() - t0, 3)})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depth", type=int, default=GraphSweepConfig.depth)
    ap.add_argument("--seeds", nargs="*", default=None)
    ap.add_argument("--json-out")
    args = ap.parse_args()
    cfg = GraphSweepConfig(depth=args.depth, json_out=args.json_out)
    if args.seeds:
        cfg.seeds = args.seeds
    rows = run(cfg)
    print(f"{'seed':10s} {'nodes':>5s} {'edges':>5s} {'shape':>6s} {'vars':>5s} {'terms':>5s} {'sec':>7s}")
    for r in rows:
        print(f"{r['seed']:10s} {r['nodes']:5d} {r['edges']:5d} {r['shape']:>6s} {r['variables']:5d}"
              f" {r['max_terms']:5d} {r['seconds']:7.3f}")
    if cfg.json_out:
        with open(cfg.json_out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2)


if __name__ == "__main__":
    main()
