"""The braiding behind the algebra and its cocycle twists."""

from __future__ import annotations

from laistrygon import QSpec
from laistrygon.algebra_maps import (
    TwistParams,
    braid_equation_check,
    braiding_entry,
    laistrygonian_braiding,
    twist_braiding,
)
from laistrygon.scalars import FieldElem


def main():
    mode = QSpec.generic()
    q = FieldElem.q(mode)
    bp = laistrygonian_braiding(2, q)
    for i in range(1, 4):
        for j in range(1, 4):
            print(f"c(x{i}(x)x{j}) = {braiding_entry(bp, i, j)}")
    print("braid equation:", braid_equation_check(bp))

    target = q ** 3
    twisted = twist_braiding(bp, TwistParams(target / q, FieldElem.from_int(1, mode)))
    print("\ntwisted q12, q21:", twisted.q12, twisted.q21)
    print("equals the braiding at q^3:", twisted == laistrygonian_braiding(2, target))


if __name__ == "__main__":
    main()
