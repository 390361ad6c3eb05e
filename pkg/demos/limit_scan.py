"""Spectral radius of sigma_1 sigma_2^-1 on V_{2r}(S^2, (N)_4) as A_r approaches exp(2 pi i / 8N)."""

from __future__ import annotations

import sys

from skeinkernel.amu import BraidWord, limit_scan


def main(N: int = 1) -> None:
    scan = limit_scan(N, BraidWord.parse("1 -2", 4), range(2 * N + 2, 2 * N + 41))
    print(f"limit radius {scan.limit_radius:.6f}")
    print(f"{'r':>3} {'A_r':>8} {'dim':>3} {'radius':>9} {'deviation':>9}")
    for row in scan.rows:
        dev = "-" if row.deviation is None else f"{row.deviation:.4f}"
        print(f"{row.r:>3} {row.root.exponent:>3}/{row.root.order:<4} {row.dimension:>3} {row.radius:>9.4f} {dev:>9}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 1)
