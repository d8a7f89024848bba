"""Straightening words to the PBW basis and counting basis elements by degree."""

from __future__ import annotations

from laistrygon import AlgebraParams, QSpec, confluence_check, hilbert_coeffs, normal_form, parse_element


def main():
    params = AlgebraParams(2, QSpec.generic())

    # A few products that are not in PBW order yet.
    for text in ("x2*x1", "z0*x2", "z0*z1", "z0*x2^2", "z2*z0*x2*x1"):
        p = parse_element(text, params)
        print(f"{text:14} -> {normal_form(p, params)}")

    # Every overlap of two rules resolves, so the ordered monomials form a basis.
    report = confluence_check(params)
    print("\noverlaps checked:", ", ".join(report.info["ambiguities"]))
    print("confluent:", report.passed)

    # Graded dimensions: monomials x1^a x2^b z2^c z1^d z0^e weighted by 1,1,3,2,1.
    print("\ngraded dimensions, G = 2:", hilbert_coeffs(params, 10))


if __name__ == "__main__":
    main()
