"""Shared independent oracles used by several test modules.

These deliberately avoid the code paths they are checking: cohomology of
rows/columns comes straight from ranks of the stored differentials, never
from the page calculator.
"""

from mvbetti import DoubleComplex


def row_cohomology(dc: DoubleComplex) -> dict:
    """dim H^p(C^{*,q}) at each support position, from horizontal ranks."""
    out = {}
    for (p, q) in dc.dims:
        h = dc.dim(p, q) - dc.dh(p, q).rank() - dc.dh(p - 1, q).rank()
        if h:
            out[(p, q)] = h
    return out


def column_cohomology(dc: DoubleComplex) -> dict:
    """dim H^q(C^{p,*}) at each support position, from vertical ranks."""
    out = {}
    for (p, q) in dc.dims:
        h = dc.dim(p, q) - dc.dv(p, q).rank() - dc.dv(p, q - 1).rank()
        if h:
            out[(p, q)] = h
    return out


def kunneth_product(ha: dict, hb: dict) -> dict:
    out = {}
    for p, x in ha.items():
        for q, y in hb.items():
            out[p + q] = out.get(p + q, 0) + x * y
    return {k: v for k, v in out.items() if v}


def boolean_arrangement_text(n: int) -> str:
    lines = [f"affine {n}"]
    for i in range(n):
        lines.append(" ".join("1" if j == i else "0" for j in range(n)) + " 0")
    return "\n".join(lines) + "\n"


BRAID_A3 = "affine 3\n1 -1 0 0\n1 0 -1 0\n0 1 -1 0\n"
PARALLEL_A2 = "affine 2\n1 0 0\n1 0 1\n"
