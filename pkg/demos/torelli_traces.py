"""Traces of delta^k s delta^l s^-1 on H^1(X)_q for q a primitive cube root of unity."""

from __future__ import annotations

from skeinkernel.amu import torelli_trace


def main() -> None:
    ks = (-2, -1, 1, 2)
    print("k\\l " + " ".join(f"{l:>5}" for l in ks))
    for k in ks:
        print(f"{k:>3} " + " ".join(f"{torelli_trace(k, l):>5}" for l in ks))


if __name__ == "__main__":
    main()
