"""Equivariant category and TC for products with a diagonal involution."""

from tcbounds import evaluate

CASES = [
    ("Z2[conj,antipodal]{CP(1)*S(3)}", "eqtc"),
    ("Z2[conj,antipodal,antipodal]{CP(2)*S(2)*S(3)}", "eqtc"),
    ("Z2[conj,antipodal]{CP(3)*S(2)}", "eqtc"),
    ("Z2[conj,antipodal]{Gr(2,4)*S(2)}", "eqtc"),
    ("Z2[refl(2),antipodal]{S(3)*SigO(2)}", "eqcat"),
    ("Z2[conj,antipodal]{CP(1)*S(3)}", "eqcat"),
]

if __name__ == "__main__":
    for text, inv in CASES:
        r = evaluate(text, inv)
        cites = sorted({s.cite for s in r.derivation})
        print(f"{str(r):62} via {', '.join(cites)}")
