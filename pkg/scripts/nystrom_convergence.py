#!/usr/bin/env python3
"""Node-count convergence study of the kernel eigenvalue solver.

For each built-in shape the critical strength from the kernel
discretization is compared against the shooting solver while the node
count doubles; the error should fall roughly like n^-3 .. n^-4.
"""

import sys

from gcrit import (Potential, critical_coupling_nystrom,
                   critical_coupling_shooting)

CASES = [
    ("square_well", Potential.square_well(), 0),
    ("square_well", Potential.square_well(), 5),
    ("exponential", Potential.exponential(), 0),
    ("yukawa", Potential.yukawa(), 0),
    ("yukawa", Potential.yukawa(), 5),
    ("stis a=1", Potential.stis(1.0), 0),
]


def main() -> int:
    ns = (50, 100, 200, 400)
    print(f"{'case':>16s} {'ell':>3s} " + " ".join(f"{f'n={n}':>10s}" for n in ns))
    for name, pot, ell in CASES:
        reference = critical_coupling_shooting(pot, ell)
        errs = [abs(critical_coupling_nystrom(pot, ell, n) - reference) / reference
                for n in ns]
        print(f"{name:>16s} {ell:>3d} " + " ".join(f"{e:10.2e}" for e in errs))
    return 0


if __name__ == "__main__":
    sys.exit(main())
