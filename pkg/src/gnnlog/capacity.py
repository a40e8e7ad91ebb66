"""Per-layer aggregation capacities and the capacity-bounded GNN."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .enumerator import ValueEnumerator, least_positive_value
from .gnn import Gnn, least_nat_activation_geq, validate_monotonic_max_sum


@dataclass
class LayerCapacity:
    layer: int
    C: int
    alpha: Fraction | None = None  # post-activation target A_l
    Z: int | None = None
    w: Fraction | None = None
    x: Fraction | None = None
    b: Fraction | None = None


@dataclass
class CapacityReport:
    layers: list = field(default_factory=list)  # LayerCapacity, index 0 is layer 1
    early_return_layer: int | None = None

    @property
    def capacities(self) -> list:
        return [lc.C for lc in self.layers]

    @property
    def C_N(self) -> int:
        return max(self.capacities, default=0)

    def __str__(self) -> str:
        lines = []
        for lc in reversed(self.layers):
            parts = [f"layer {lc.layer}: C={lc.C}"]
            for name in ("alpha", "Z", "w", "x", "b"):
                v = getattr(lc, name)
                parts.append(f"{name}={'-' if v is None else v}")
            lines.append(" ".join(parts))
        lines.append(f"early_return_layer={self.early_return_layer if self.early_return_layer else '-'}")
        lines.append(f"C_N={self.C_N}")
        return "\n".join(lines)


def layer_capacities(g: Gnn, enumerator: ValueEnumerator | None = None) -> CapacityReport:
    problems = validate_monotonic_max_sum(g)
    if problems:
        raise ValueError("capacity needs a monotonic max-sum GNN: " + "; ".join(problems))
    en = enumerator or ValueEnumerator(g)
    L = g.L
    caps: dict = {}
    report = CapacityReport()
    alpha = g.threshold
    for ell in range(L, 0, -1):
        layer = g.layer(ell)
        nonzero = [w for w in layer.weights() if w != 0]
        w = min(nonzero) if nonzero else None
        x = least_positive_value(g, ell, en)
        if w is None or x is None:
            caps[ell] = LayerCapacity(ell, 0, alpha=alpha, w=w, x=x)
            for lower in range(ell - 1, 0, -1):
                caps[lower] = LayerCapacity(lower, 0)
            report.early_return_layer = ell
            break
        Z = least_nat_activation_geq(g.activation, alpha)
        b = min(layer.bias)
        # negative counts clamp to 0: maxsum takes a natural number
        needed = max(0, math.ceil(Fraction(Z - b) / (w * x)))
        k = layer.agg.k
        C = needed if k == math.inf else min(int(k), needed)
        caps[ell] = LayerCapacity(ell, C, alpha=alpha, Z=Z, w=w, x=x, b=b)
        alpha = Fraction(Z - b) / w
    report.layers = [caps[ell] for ell in range(1, L + 1)]
    return report


def bound_aggregation(g: Gnn, report: CapacityReport | None = None) -> Gnn:
    """Replace every k_l by the layer capacity C_l."""
    report = report or layer_capacities(g)
    return g.with_aggregations(report.capacities)
