"""Gate-count cost model: quantum pipeline vs classical FFT baseline.

All counts are model values taken literally from the asymptotic expressions
with their constants, not transpiled circuit tallies:

  Q(n0, nt, c) = 8 * 4^c * log2(n0) * n0 * 2^(n0 - 2*nt)
  C(n0)        = n0 * 2^n0

so Q/C = 8 * L^2 * log2(n0) / 4^nt with L = 2^c, and Q/C < 1 exactly when

  3 + 2c + log2(log2(n0)) < 2*nt        (with the upper bound 2*nt < n0).

Caveat stated up front: the inequality compares quantum gates with classical
boolean operations one-for-one, with no conversion factor between the two
kinds of "gate" — the ratio is reported exactly as the model defines it.
log2(log2(n0)) is taken as 0 at n0 = 2 (limiting case) so every even
register size is accepted.
"""

import csv
import json
from dataclasses import asdict, dataclass

import numpy as np


def _check_even_register(n0):
    n0 = int(n0)
    if n0 < 2 or n0 % 2:
        raise ValueError(f"register size must be even and >= 2, got {n0}")
    return n0


def theorem_lhs(n0, depth):
    """Left-hand side 3 + 2c + log2(log2 n0) of the advantage inequality."""
    n0 = _check_even_register(n0)
    depth = int(depth)
    if depth < 0:
        raise ValueError(f"bit depth must be >= 0, got {depth}")
    loglog = 0.0 if n0 == 2 else float(np.log2(np.log2(n0)))
    return 3.0 + 2.0 * depth + loglog


def quantum_cost(n0, nt, depth):
    """Model gate count of the quantum pipeline at factor nt, depth c."""
    n0 = _check_even_register(n0)
    nt = int(nt)
    if not 0 < nt < n0 // 2:
        raise ValueError(
            f"downsampling factor must satisfy 0 < nt < {n0 // 2}, got {nt}"
        )
    depth = int(depth)
    if depth < 0:
        raise ValueError(f"bit depth must be >= 0, got {depth}")
    return 8.0 * 4.0**depth * float(np.log2(n0)) * n0 * 2.0 ** (n0 - 2 * nt)


def classical_cost(n0):
    """Model operation count of the classical FFT pipeline."""
    n0 = _check_even_register(n0)
    return n0 * 2**n0


def advantage_region(n0, depth):
    """Integer factors nt with lhs < 2*nt < n0 (possibly empty)."""
    n0 = _check_even_register(n0)
    lhs = theorem_lhs(n0, depth)
    return [nt for nt in range(1, (n0 + 1) // 2) if lhs < 2 * nt < n0]


@dataclass
class CostReport:
    """Cost-model evaluation at one (n0, nt, depth) point."""

    n0: int
    nt: int
    depth: int
    quantum_gates: float
    classical_gates: int
    ratio: float
    advantage: bool
    lhs: float
    feasible_range: tuple  # open interval of 2*nt: (lhs, n0)


def cost_report(n0, nt, depth):
    q = quantum_cost(n0, nt, depth)
    c = classical_cost(n0)
    lhs = theorem_lhs(n0, depth)
    return CostReport(
        n0=int(n0),
        nt=int(nt),
        depth=int(depth),
        quantum_gates=q,
        classical_gates=c,
        ratio=q / c,
        advantage=bool(lhs < 2 * int(nt) < int(n0)),
        lhs=lhs,
        feasible_range=(lhs, float(n0)),
    )


def report_to_json(report, indent=2):
    payload = asdict(report)
    payload["feasible_range"] = list(payload["feasible_range"])
    return json.dumps(payload, indent=indent)


def sweep_rows(n0, depth):
    """CostReports for every valid nt at fixed (n0, depth)."""
    n0 = _check_even_register(n0)
    return [cost_report(n0, nt, depth) for nt in range(1, (n0 + 1) // 2)]


def sweep_to_csv(stream, n0, depth):
    """Write the per-nt sweep as a CSV table to an open text stream."""
    writer = csv.writer(stream)
    writer.writerow(
        ["n0", "nt", "depth", "quantum_gates", "classical_gates", "ratio", "advantage"]
    )
    for rep in sweep_rows(n0, depth):
        writer.writerow(
            [
                rep.n0,
                rep.nt,
                rep.depth,
                repr(rep.quantum_gates),
                rep.classical_gates,
                repr(rep.ratio),
                rep.advantage,
            ]
        )
