"""End-to-end transformations through the MGNN and 2-GNN encodings."""
import argparse
from dataclasses import dataclass
from fractions import Fraction

from gnnlog.codec import canonical_transform
from gnnlog.encodings import chain, kgnn_encode, kgnn_signature, mgnn_decode, mgnn_encode, mgnn_signature
from gnnlog.gnn import INF, Activation, Aggregation, Gnn, Layer
from gnnlog.syntax import parse_dataset, print_dataset


@dataclass
class Config:
    data: str = "A1(a). R2(a,b). R2(b,e)."
    kdata: str = "A1(a). A1(b). A2(e). R(a,b). R(b,e)."


def spread_gnn() -> Gnn:
    """A1 spreads along c4 (co-occurrence) edges; R2 vertices stay as they are."""
    sig = mgnn_signature(2)
    z = ((0, 0), (0, 0))
    layer = Layer(((1, 0), (0, 1)), {"c1": z, "c2": z, "c3": z, "c4": ((1, 0), (0, 0))}, (0, 0), Aggregation(INF))
    return Gnn(sig, (layer,), Activation.relu(), Fraction(1))


def main(cfg: Config) -> None:
    d = parse_dataset(cfg.data)
    print("input:\n" + print_dataset(d))
    print("MGNN encoding:\n" + print_dataset(mgnn_encode(1, 2, d)))
    out = chain(lambda x: mgnn_encode(1, 2, x), spread_gnn(), lambda x: mgnn_decode(1, 2, x), d)
    print("end to end:\n" + print_dataset(out))
    kd = parse_dataset(cfg.kdata)
    enc, mapping = kgnn_encode(2, kd)
    print("2-GNN encoding (index -> (i, j, b)):", mapping)
    print(print_dataset(enc))
    # a GNN over the pair graph that only keeps U_{i,j,1}: reads back the R facts
    sig = kgnn_signature(2)
    n = sig.delta
    A = tuple(tuple(Fraction(int(i == j and mapping[i + 1][2] == 1)) for j in range(n)) for i in range(n))
    zero = tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))
    g = Gnn(sig, (Layer(A, {"c": zero}, (Fraction(0),) * n, Aggregation(1)),), Activation.relu(), Fraction(1))
    print("pair vertices with an R edge:\n" + print_dataset(canonical_transform(g, enc).unary()))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--data", default=Config.data)
    ap.add_argument("--kdata", default=Config.kdata)
    a = ap.parse_args()
    main(Config(a.data, a.kdata))
