#!/usr/bin/env python3
"""Betti numbers of a gallery of named arrangements.

Prints Boolean arrangements, braid arrangements (differences x_i = x_j),
generic arrangements and a few degenerate configurations, each with the
essential rank, the shift and the oracle verdict.
"""

from itertools import combinations

from mvbetti import compute_betti, parse_arrangement


def boolean(n):
    lines = [f"affine {n}"] + [
        " ".join("1" if j == i else "0" for j in range(n)) + " 0" for i in range(n)
    ]
    return "\n".join(lines)


def braid(n):
    lines = [f"affine {n}"]
    for i, j in combinations(range(n), 2):
        coeffs = ["0"] * n
        coeffs[i], coeffs[j] = "1", "-1"
        lines.append(" ".join(coeffs) + " 0")
    return "\n".join(lines)


GALLERY = {
    "boolean A^2": boolean(2),
    "boolean A^3": boolean(3),
    "boolean A^4": boolean(4),
    "braid A^3": braid(3),
    "braid A^4": braid(4),
    "two parallel lines": "affine 2\n1 0 0\n1 0 1\n",
    "five generic lines": "affine 2\n1 0 0\n0 1 0\n1 1 1\n1 -1 2\n2 1 5\n",
    "generic planes A^3": "affine 3\n1 0 0 0\n0 1 0 0\n0 0 1 0\n1 1 1 1\n1 2 3 5\n",
    "projective simplex P^2": "projective 2\n1 0 0\n0 1 0\n0 0 1\n",
}


def main():
    width = max(len(name) for name in GALLERY)
    for name, text in GALLERY.items():
        rep = compute_betti(parse_arrangement(text))
        betti = " ".join(str(b) for b in rep.betti)
        flags = []
        if rep.general_position:
            flags.append("general position")
        if rep.shift:
            flags.append(f"shift {rep.shift}")
        verdict = "ok" if rep.agreement else "ORACLE MISMATCH"
        extra = f"  ({', '.join(flags)})" if flags else ""
        print(f"{name:<{width}}  betti {betti:<16} rank {rep.essential_rank}  {verdict}{extra}")


if __name__ == "__main__":
    main()
