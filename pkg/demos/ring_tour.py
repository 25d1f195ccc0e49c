"""A short tour of the ring constructors and the two length invariants."""

from tcbounds import cup_length, duality_check, rings, zero_divisor_cup_length

SAMPLES = [
    ("RP^3", rings.real_projective(3), 3),
    ("CP^2 over Q", rings.complex_projective(2, "Q"), 4),
    ("Gr_2(C^4) over Q", rings.grassmann(2, 4), 8),
    ("Gr_2(C^4) mod 2", rings.grassmann(2, 4, "GF2"), 8),
    ("K_3", rings.klein(3), 3),
    ("X_1^1", rings.xg(1, 3), 3),
    ("P(1,1,5)", rings.pps(1, 1, 5), 7),
    ("Dold-Grassmann (2,4;[1,3])", rings.dold_grassmann(2, 4, (1, 3)), 12),
]


def main():
    for label, A, d in SAMPLES:
        cl, w = cup_length(A)
        zcl, _ = zero_divisor_cup_length(A)
        print(f"{label:28} dim {A.dim:3}  Poincare {A.poincare()}")
        print(f"{'':28} cl {cl}  zcl {zcl}  duality in dim {d}: {duality_check(A, d)}")
        print(f"{'':28} longest product: {w.value!r}")

    # mod 2 the first Chern class of Gr_2(C^4) is nilpotent well below the top degree
    c1 = rings.grassmann(2, 4, "GF2").gen("c1")
    print("\nc1^3 mod 2 =", c1 ** 3, "  c1^4 mod 2 =", c1 ** 4 or 0)


if __name__ == "__main__":
    main()
