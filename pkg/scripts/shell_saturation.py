#!/usr/bin/env python3
"""Saturation of the variational bound by a narrow shell.

As the shell width shrinks the shape tends to a delta ring, for which the
trial density with unit power is the exact threshold profile, so the bound
over the solver value should approach 1 from above.
"""

import sys

from gcrit import Potential, critical_coupling_shooting, upper_variational_at


def main() -> int:
    print(f"{'width':>10s} {'bound(p=1)':>14s} {'solver':>14s} {'ratio - 1':>12s}")
    for width in (0.3, 0.1, 0.03, 0.01, 0.003, 0.001):
        shell = Potential.shell(width=width)
        bound = upper_variational_at(shell, 0, 1.0).value
        solver = critical_coupling_shooting(shell, 0)
        print(f"{width:10.3f} {bound:14.9f} {solver:14.9f} {bound / solver - 1.0:12.3e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
