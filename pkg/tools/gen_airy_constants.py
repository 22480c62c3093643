#!/usr/bin/env python3
"""Generate the frozen double-double constants used by the Airy core.

Run manually when the constants need regenerating; the output is pasted
into src/qbounce/_airy_py.py and src/qbounce/_airy_cy.pyx.  Requires
mpmath (arbitrary precision), which is a tooling dependency only.
"""

import mpmath as mp

mp.mp.dps = 60


def dd(name, value):
    hi = float(value)
    lo = float(value - mp.mpf(hi))
    print(f"{name}_HI = {hi!r}")
    print(f"{name}_LO = {lo!r}")


def main():
    ai0 = mp.airyai(0)
    aip0 = -mp.airyai(0, 1)  # magnitude of Ai'(0)
    print("# Ai(0) = 3**(-2/3)/Gamma(2/3), |Ai'(0)| = 3**(-1/3)/Gamma(1/3)")
    dd("AI_ZERO", ai0)
    dd("AIP_ZERO", aip0)
    print(f"SQRT_PI = {float(mp.sqrt(mp.pi))!r}")
    print(f"QUARTER_PI = {float(mp.pi / 4)!r}")


if __name__ == "__main__":
    main()
