#!/usr/bin/env python3
"""Generate frozen reference values for the Airy evaluation tests.

Evaluates Ai and Ai' at 50 significant digits on a probe grid covering
all three evaluation regimes (series, negative asymptotic, positive
asymptotic) plus the regime switch points, and prints a table ready to
paste into tests/test_airy.py.  Tooling script; mpmath is not a package
dependency.
"""

import mpmath as mp

mp.mp.dps = 50

PROBES = [
    -60.25, -35.0, -20.5, -12.75, -9.5, -8.7, -8.5, -8.3,
    -7.0, -5.5, -4.2, -2.338107410459767, -1.0, -0.3,
    0.0, 0.5, 1.0, 2.5, 5.0, 7.5, 8.3, 8.5, 8.7, 10.0, 14.5,
]


def main():
    print("AIRY_REFERENCE = [")
    print("    # (x, Ai(x), Ai'(x))  fifty-digit evaluation, tools/gen_airy_reference.py")
    for x in PROBES:
        ai = mp.airyai(mp.mpf(x))
        aip = mp.airyai(mp.mpf(x), 1)
        print(f"    ({x!r}, {float(ai)!r}, {float(aip)!r}),")
    print("]")


if __name__ == "__main__":
    main()
