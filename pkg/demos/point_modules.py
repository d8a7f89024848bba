"""Point modules: which starting points (a:b:c) extend to a full sequence.

The answer is the union of two lines and a point inside the plane; points
with a*c != 0 break down after exactly G+2 steps.
"""

from __future__ import annotations

from laistrygon import AlgebraParams, NotOnVariety, QSpec
from laistrygon.point_modules import (
    ProjPoint,
    classify_truncated,
    failure_depth,
    forced_continuation,
    propagate,
    verify_truncated,
)


def main():
    G = 2
    params = AlgebraParams(G, QSpec.numeric(3))
    D = G + 4
    for text in ("1:0:0", "0:1:1", "0:0:1", "1:2:1"):
        p0 = ProjPoint.parse(text, params.q)
        try:
            seq = propagate(p0, params, D)
        except NotOnVariety as exc:
            forced = forced_continuation(p0, params, D)
            print(f"{text}: {exc}; the forced continuation fails with {failure_depth(forced)} points")
            continue
        ok = verify_truncated(seq).passed
        print(f"{text}: {' '.join(str(p) for p in seq.pts)}  relations hold: {ok}")

    res = classify_truncated(params, D)
    print("\ncomponents:", ", ".join(c.pattern for c in res.components))
    print("excluded:", res.excluded, "| first obstruction at depth", res.failure_depth, "with constant", res.kappa)
    for name, rep in res.reports.items():
        print(f"  {name}: {len(rep.checks)} certificates, all hold: {rep.passed}")


if __name__ == "__main__":
    main()
