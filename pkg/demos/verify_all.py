"""Run the kernel-versus-homology comparison for every case that fits on a laptop."""

from __future__ import annotations

import json

from skeinkernel.verify import verify_theorem_n4, verify_theorem_n6


def main() -> None:
    for n, N in [(6, 1), (8, 1), (6, 2)]:
        rep = verify_theorem_n6(n, N)
        print(json.dumps({"case": rep.case, "matched": rep.matched, "branch": rep.branch, "sign": rep.sign}))
    for N in (1, 2, 3):
        rep = verify_theorem_n4(N)
        print(json.dumps({"case": rep.case, "matched": rep.matched, "chi0": str(complex(rep.expected_phase))}))


if __name__ == "__main__":
    main()
