"""Finite-dimensional simple modules come from the quantum plane.

At a root of unity of order N the plane has N-dimensional simples; pulling
them back (x2 -> X, z0 -> Y, everything else -> 0) gives modules of the
larger algebra.  One-dimensional modules are found by solving the relations
as commutative equations.
"""

from __future__ import annotations

import random

from laistrygon import AlgebraParams, QSpec
from laistrygon.linalg import to_strings
from laistrygon.representations import (
    QPModuleSpec,
    build_qp_module,
    fingerprints,
    is_simple,
    pullback,
    rep_check,
    solve_characters,
    topz_invertible_obstruction,
)
from laistrygon.scalars import random_elem


def main():
    mode = QSpec.root(3)
    params = AlgebraParams(2, mode)
    rng = random.Random(1)
    a, b = random_elem(rng, mode, nonzero=True), random_elem(rng, mode, nonzero=True)
    rep = pullback(build_qp_module(QPModuleSpec.cyclic(a, b, mode)), params)
    print(f"cyclic module, q of order 3, a = {a}, b = {b}")
    for name, m in rep.to_dict()["matrices"].items():
        print(f"  {name}: {m}")
    print("  relations hold:", rep_check(rep, params).passed, " simple:", is_simple(rep))
    print("  fingerprints:", {k: str(v) for k, v in fingerprints(rep).items()})

    for q in ("num:2", "num:1", "generic"):
        fams = solve_characters(AlgebraParams(1, QSpec.parse(q)))
        print(f"\ncharacters at q = {q}:")
        for f in fams:
            print(f"   {f}  ({f.condition})")

    # Nothing finite-dimensional lets the top z act invertibly (smallest case).
    res = topz_invertible_obstruction(3, 1, rng)
    print("\ninvertible top z, N = 3: linear system feasible?", res.feasible,
          "| trace residue", res.trace_residual, "| expected", res.expected_trace)
    qp = build_qp_module(QPModuleSpec.cyclic(1, 1, QSpec.root(2)))
    print("\nat q = -1 the plane module U(1,1) has X =", to_strings(qp.X), "and Y =", to_strings(qp.Y))


if __name__ == "__main__":
    main()
