"""Capacities of random monotonic max-sum GNNs and agreement of the bounded variants."""
import argparse
import random
from collections import Counter
from dataclasses import dataclass

from gnnlog import zoo
from gnnlog.capacity import bound_aggregation, layer_capacities
from gnnlog.codec import canonical_transform
from gnnlog.verify import random_dataset


@dataclass
class Config:
    gnns: int = 20
    datasets: int = 300
    delta: int = 2
    layers: int = 2
    max_constants: int = 6
    seed: int = 0


def main(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    hist: Counter = Counter()
    mismatches = 0
    for n in range(cfg.gnns):
        g = zoo.random_gnn(rng, delta=cfg.delta, L=cfg.layers)
        rep = layer_capacities(g)
        gb = bound_aggregation(g, rep)
        bad = 0
        for _ in range(cfg.datasets):
            d = random_dataset(rng, g.signature, rng.randint(1, cfg.max_constants))
            bad += canonical_transform(g, d) != canonical_transform(gb, d)
        mismatches += bad
        hist[rep.C_N] += 1
        ks = [str(l.agg) for l in g.layers]
        print(f"gnn {n:2d}: aggs {ks} -> capacities {rep.capacities}, disagreements {bad}/{cfg.datasets}")
    print("C_N histogram:", dict(sorted(hist.items())))
    print("total disagreements:", mismatches)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for k, v in Config().__dict__.items():
        ap.add_argument("--" + k.replace("_", "-"), type=int, default=v)
    main(Config(**vars(ap.parse_args())))
