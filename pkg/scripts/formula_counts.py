"""Hidden width of compiled GNNs next to the closed-form (|C|*2^delta)^(f^d*(d+1)!) estimate."""
import argparse
import math
from dataclasses import dataclass

from gnnlog.compiler import enumerate_ordered_formulas
from gnnlog.logic import Signature


@dataclass
class Config:
    max_depth: int = 2
    max_fanout: int = 2
    max_delta: int = 2
    max_colours: int = 2


def main(cfg: Config) -> None:
    print(f"{'|C|':>3} {'delta':>5} {'d':>2} {'f':>2} {'width':>8} {'estimate':>10}  ok")
    for nc in range(1, cfg.max_colours + 1):
        for delta in range(1, cfg.max_delta + 1):
            sig = Signature(tuple(f"c{k}" for k in range(nc)), delta)
            for d in range(0, cfg.max_depth + 1):
                for f in range(0, cfg.max_fanout + 1):
                    est = (nc * 2 ** delta) ** (f ** d * math.factorial(d + 1))
                    try:
                        width = len(enumerate_ordered_formulas(sig, d, f, budget=10 ** 7))
                    except Exception as e:  # budget guard
                        print(f"{nc:>3} {delta:>5} {d:>2} {f:>2} {'skipped':>8} {est:>10}  ({type(e).__name__})")
                        continue
                    print(f"{nc:>3} {delta:>5} {d:>2} {f:>2} {width:>8} {est:>10}  {'yes' if width <= est else 'NO'}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for k, v in Config().__dict__.items():
        ap.add_argument("--" + k.replace("_", "-"), type=int, default=v)
    main(Config(**vars(ap.parse_args())))
