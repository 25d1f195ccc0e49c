"""How the bound engine pins down TC of the higher Klein bottles.

Prints the interval for K_2 ... K_8 and, for one of them, the derivation
steps that made each end of the interval tight.
"""

from tcbounds import evaluate, rings, zero_divisor_cup_length


def main():
    print("n   zcl_GF2   TC interval")
    for n in range(2, 9):
        r = evaluate(f"K({n})", "tc")
        zcl = zero_divisor_cup_length(rings.klein(n))[0] if n <= 6 else "-"
        print(f"{n:<3} {zcl!s:<9} [{r.lower}, {r.upper}]")

    # K_4 is the first case where the interval stays open
    r = evaluate("K(4)", "tc")
    print(f"\n{r}")
    for step in r.derivation:
        print(f"  {step.side:5} {step.value}  {step.rule}  {step.cite}  {step.note}")


if __name__ == "__main__":
    main()
