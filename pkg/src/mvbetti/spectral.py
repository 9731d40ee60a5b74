"""Spectral sequences of bounded double complexes of rational vector spaces.

The two usual filtrations of the total complex both converge to its
cohomology for bounded (single-quadrant-translatable) support.  Page
dimensions are computed exactly from the filtered total complex: with
decreasing filtration F on T = Tot and

    Z_r^{p,q} = {x in F^p T^{p+q} : d_T x in F^{p+r} T^{p+q+1}},

dim E_r^{p,q} = dim(Z_r^{p,q} + F^{p+1}) - dim(d Z_{r-1}^{p-r+1,q+r-2} + F^{p+1}),
every space realized as an explicit subspace of the total-degree coordinate
space.  Only dimensions are exposed, not bases or induced differentials.

Conventions: `vertical` filters by column (first index); its first page is
the columnwise cohomology H^q(C^{p,*}).  `horizontal` filters by row; its
first page is the rowwise cohomology H^p(C^{*,q}).  The horizontal pages are
obtained by running the column filtration on the transposed double complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, ValidationError
from .linalg import QMatrix, kron

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


def _clean_dims(dims: dict) -> dict:
    return {key: d for key, d in dims.items() if d}


@dataclass(frozen=True)
class Complex:
    """Bounded cochain complex of rational vector spaces.

    dims[p] is the dimension in degree p (nonzero entries only);
    diff[p] maps degree p to degree p+1 and squares to zero.
    """

    dims: dict
    diff: dict

    def __post_init__(self):
        object.__setattr__(self, "dims", _clean_dims(self.dims))
        diff = {
            p: m
            for p, m in self.diff.items()
            if self.dims.get(p, 0) and self.dims.get(p + 1, 0)
        }
        object.__setattr__(self, "diff", diff)
        for p, m in diff.items():
            if (m.rows, m.cols) != (self.dims[p + 1], self.dims[p]):
                raise ValidationError(f"differential at degree {p} has shape {m.rows}x{m.cols}")
        for p, m in diff.items():
            nxt = diff.get(p + 1)
            if nxt is not None and not (nxt @ m).is_zero():
                raise ValidationError(f"d o d != 0 at degree {p}")

    def dim(self, p: int) -> int:
        return self.dims.get(p, 0)

    def d(self, p: int) -> QMatrix:
        m = self.diff.get(p)
        if m is None:
            return QMatrix.zeros(self.dim(p + 1), self.dim(p))
        return m

    def cohomology_dims(self) -> dict:
        out = {}
        for p in self.dims:
            h = self.dim(p) - self.d(p).rank() - self.d(p - 1).rank()
            if h:
                out[p] = h
        return out


@dataclass(frozen=True)
class DoubleComplex:
    """Bounded bigraded complex with anticommuting differentials.

    dims[(p, q)] holds the nonzero dimensions; d_horiz[(p, q)] maps (p, q) to
    (p+1, q) and d_vert[(p, q)] to (p, q+1).  Missing differentials are zero
    maps.  Construction verifies d_h^2 = d_v^2 = d_h d_v + d_v d_h = 0.
    """

    dims: dict
    d_horiz: dict
    d_vert: dict

    def __post_init__(self):
        object.__setattr__(self, "dims", _clean_dims(self.dims))
        for name in ("d_horiz", "d_vert"):
            step = (1, 0) if name == "d_horiz" else (0, 1)
            kept = {}
            for (p, q), m in getattr(self, name).items():
                src = self.dims.get((p, q), 0)
                tgt = self.dims.get((p + step[0], q + step[1]), 0)
                if (m.rows, m.cols) != (tgt, src):
                    raise ValidationError(
                        f"{name} at ({p},{q}) has shape {m.rows}x{m.cols}, expected {tgt}x{src}"
                    )
                if src and tgt and not m.is_zero():
                    kept[(p, q)] = m
            object.__setattr__(self, name, kept)
        for p, q in self.dims:
            hh = self.dh(p + 1, q) @ self.dh(p, q)
            if not hh.is_zero():
                raise ValidationError(f"d_horiz o d_horiz != 0 at ({p},{q})")
            vv = self.dv(p, q + 1) @ self.dv(p, q)
            if not vv.is_zero():
                raise ValidationError(f"d_vert o d_vert != 0 at ({p},{q})")
            anti = self.dv(p + 1, q) @ self.dh(p, q)
            anti2 = self.dh(p, q + 1) @ self.dv(p, q)
            mixed = QMatrix(
                anti.rows, anti.cols, [a + b for a, b in zip(anti.entries, anti2.entries)]
            )
            if not mixed.is_zero():
                raise ValidationError(f"differentials do not anticommute at ({p},{q})")

    def dim(self, p: int, q: int) -> int:
        return self.dims.get((p, q), 0)

    def dh(self, p: int, q: int) -> QMatrix:
        m = self.d_horiz.get((p, q))
        return m if m is not None else QMatrix.zeros(self.dim(p + 1, q), self.dim(p, q))

    def dv(self, p: int, q: int) -> QMatrix:
        m = self.d_vert.get((p, q))
        return m if m is not None else QMatrix.zeros(self.dim(p, q + 1), self.dim(p, q))

    def transpose(self) -> "DoubleComplex":
        return DoubleComplex(
            {(q, p): d for (p, q), d in self.dims.items()},
            {(q, p): m for (p, q), m in self.d_vert.items()},
            {(q, p): m for (p, q), m in self.d_horiz.items()},
        )

    def support_box(self) -> tuple:
        """(min_p, max_p, min_q, max_q) of the support; None for empty support."""
        if not self.dims:
            return None
        ps = [p for p, _ in self.dims]
        qs = [q for _, q in self.dims]
        return min(ps), max(ps), min(qs), max(qs)


@dataclass(frozen=True)
class TotalComplex:
    dims: dict
    diff: dict

    def d(self, n: int) -> QMatrix:
        m = self.diff.get(n)
        if m is None:
            return QMatrix.zeros(self.dims.get(n + 1, 0), self.dims.get(n, 0))
        return m


class _Layout:
    """Coordinates of each total degree: cells sorted by first index."""

    def __init__(self, dc: DoubleComplex):
        self.dc = dc
        self.cells = {}
        self.offsets = {}
        self.total = {}
        degrees = sorted({p + q for p, q in dc.dims})
        for n in degrees:
            cells = sorted((p, q) for (p, q) in dc.dims if p + q == n)
            self.cells[n] = cells
            off = {}
            pos = 0
            for cell in cells:
                off[cell] = pos
                pos += dc.dims[cell]
            self.offsets[n] = off
            self.total[n] = pos
        self._d_cache = {}

    def dim(self, n: int) -> int:
        return self.total.get(n, 0)

    def d(self, n: int) -> QMatrix:
        """Total differential Tot^n -> Tot^{n+1}, assembled blockwise."""
        cached = self._d_cache.get(n)
        if cached is not None:
            return cached
        rows, cols = self.dim(n + 1), self.dim(n)
        out = [0] * (rows * cols)
        tgt_off = self.offsets.get(n + 1, {})
        for (p, q) in self.cells.get(n, ()):
            src = self.offsets[n][(p, q)]
            for block, cell in ((self.dc.dh(p, q), (p + 1, q)), (self.dc.dv(p, q), (p, q + 1))):
                if cell not in tgt_off or block.is_zero():
                    continue
                base = tgt_off[cell]
                for i in range(block.rows):
                    for j in range(block.cols):
                        out[(base + i) * cols + (src + j)] = block.at(i, j)
        mat = QMatrix(rows, cols, out)
        self._d_cache[n] = mat
        return mat

    def filtration_dim(self, n: int, a: int) -> int:
        """Dimension of F^a Tot^n = sum of cells with first index >= a."""
        return sum(self.dc.dims[c] for c in self.cells.get(n, ()) if c[0] >= a)

    def filtration_basis(self, n: int, a: int) -> QMatrix:
        """Unit-column embedding of F^a Tot^n (cells are contiguous, sorted by p)."""
        dim_n = self.dim(n)
        f = self.filtration_dim(n, a)
        out = [0] * (dim_n * f)
        start = dim_n - f
        for k in range(f):
            out[(start + k) * f + k] = 1
        return QMatrix(dim_n, f, out)

    def project(self, m: QMatrix, n: int, cell) -> QMatrix:
        """Rows of m corresponding to one cell of total degree n."""
        off = self.offsets[n][cell]
        return m.rows_slice(off, off + self.dc.dims[cell])


def total_complex(dc: DoubleComplex) -> TotalComplex:
    """Tot^n = sum of C^{p,q} with p+q = n, differential d_horiz + d_vert."""
    layout = _Layout(dc)
    dims = {n: d for n, d in layout.total.items() if d}
    diff = {}
    for n in dims:
        d = layout.d(n)
        if not d.is_zero():
            diff[n] = d
    for n in dims:
        nxt = diff.get(n + 1)
        cur = diff.get(n)
        if nxt is not None and cur is not None and not (nxt @ cur).is_zero():
            raise ValidationError(f"total differential does not square to zero at degree {n}")
    return TotalComplex(dims, diff)


def cohomology_dims(tc: TotalComplex) -> dict:
    """dim H^n = dim Tot^n - rank d^n - rank d^{n-1}, nonzero entries only."""
    out = {}
    for n, d in tc.dims.items():
        h = d - tc.d(n).rank() - tc.d(n - 1).rank()
        if h:
            out[n] = h
    return out


@dataclass(frozen=True)
class PageTable:
    """Dimensions of pages E_r^{p,q} for r = 0..r_max under one filtration.

    stable_at is the least r whose page equals every later computed page
    (r_max + 1 when stability was not observed within r_max).
    """

    filtration: str
    r_max: int
    pages: dict
    stable_at: int

    def page(self, r: int) -> dict:
        return {(p, q): d for (rr, p, q), d in self.pages.items() if rr == r}

    def limit(self) -> dict:
        return self.page(min(self.stable_at, self.r_max))


class _ZChains:
    """Lazily extended chains Z(n, a, s) = {x in F^a Tot^n : d x in F^{a+s}}.

    Each chain entry is a spanning matrix (total-degree coordinates x chain
    dimension); step s+1 intersects with the kernel of the composite
    `project onto column a+s` o d.
    """

    def __init__(self, layout: _Layout):
        self.layout = layout
        self.chains = {}

    def z(self, n: int, a: int, s: int) -> QMatrix:
        key = (n, a)
        chain = self.chains.get(key)
        if chain is None:
            chain = [self.layout.filtration_basis(n, a)]
            self.chains[key] = chain
        while len(chain) <= s:
            cur = chain[-1]
            t = a + len(chain) - 1
            cell = (t, n + 1 - t)
            if cur.cols == 0 or self.layout.dc.dim(*cell) == 0:
                chain.append(cur)
                continue
            image = self.layout.project(self.layout.d(n) @ cur, n + 1, cell)
            chain.append(cur @ image.kernel_basis())
        return chain[s]


def _column_pages(dc: DoubleComplex, r_max: int) -> dict:
    """Pages of the column (first-index) filtration, keyed (r, p, q)."""
    layout = _Layout(dc)
    chains = _ZChains(layout)
    pages = {}
    for (p, q) in dc.dims:
        n = p + q
        for r in range(r_max + 1):
            # Z_{-1}^{a,*} = F^a since the filtration is stable under d.
            numerator = chains.z(n, p, r)
            nu = layout.project(numerator, n, (p, q)).rank()
            delta = 0
            if layout.dim(n - 1):
                prev = chains.z(n - 1, p - r + 1, max(r - 1, 0))
                if prev.cols:
                    boundary = layout.project(layout.d(n - 1) @ prev, n, (p, q))
                    delta = boundary.rank()
            dim = nu - delta
            if dim:
                pages[(r, p, q)] = dim
    return pages


def pages(dc: DoubleComplex, filtration: str, r_max: int) -> PageTable:
    """Page dimensions E_r^{p,q} for r = 0..r_max under the chosen filtration."""
    if r_max < 2:
        raise ValidationError("r_max must be at least 2")
    if filtration == VERTICAL:
        table = _column_pages(dc, r_max)
    elif filtration == HORIZONTAL:
        table = {(r, q, p): d for (r, p, q), d in _column_pages(dc.transpose(), r_max).items()}
    else:
        raise ValidationError(f"unknown filtration {filtration!r}")
    by_r = [
        {(p, q): d for (rr, p, q), d in table.items() if rr == r} for r in range(r_max + 1)
    ]
    stable_at = r_max
    for r in range(r_max - 1, -1, -1):
        if by_r[r] != by_r[r_max]:
            break
        stable_at = r
    if stable_at == r_max:
        # A single terminal page is no evidence of stabilization.
        stable_at = r_max + 1
    return PageTable(filtration, r_max, table, stable_at)


def verify_convergence(pt: PageTable, h: dict) -> bool:
    """Do the limit-page dimensions sum to the total cohomology in each degree?"""
    limit = pt.limit()
    sums = {}
    for (p, q), d in limit.items():
        sums[p + q] = sums.get(p + q, 0) + d
    degrees = set(sums) | {n for n, d in h.items() if d}
    return all(sums.get(n, 0) == h.get(n, 0) for n in degrees)


def tensor_double_complex(a: Complex, b: Complex) -> DoubleComplex:
    """Double complex of the tensor product of two bounded complexes.

    dims(p, q) = dim a^p * dim b^q, d_horiz = d_a (x) id and
    d_vert = (-1)^p id (x) d_b, which anticommutes by construction.
    """
    dims = {}
    for p, da in a.dims.items():
        for q, db in b.dims.items():
            dims[(p, q)] = da * db
    d_horiz = {}
    d_vert = {}
    for (p, q) in dims:
        if a.diff.get(p) is not None:
            d_horiz[(p, q)] = kron(a.d(p), QMatrix.identity(b.dim(q)))
        if b.diff.get(q) is not None:
            m = kron(QMatrix.identity(a.dim(p)), b.d(q))
            d_vert[(p, q)] = m.scale(-1) if p % 2 else m
    return DoubleComplex(dims, d_horiz, d_vert)


def parse_double_complex(text: str) -> DoubleComplex:
    """Parse the double-complex text format.

    A `dims` header is followed by `p q dim` triples; each `dh p q` or
    `dv p q` line is followed by the dense rational matrix of that block,
    one row per line (target dimension rows of source dimension entries).
    Omitted differentials are zero.  `#` starts a comment.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines or lines[0][1] != "dims":
        raise ParseError("expected `dims` header", line=lines[0][0] if lines else 1)
    dims = {}
    idx = 1
    while idx < len(lines):
        lineno, line = lines[idx]
        fields = line.split()
        if fields[0] in ("dh", "dv"):
            break
        if len(fields) != 3:
            raise ParseError("expected `p q dim` triple", line=lineno)
        try:
            p, q, d = (int(f) for f in fields)
        except ValueError:
            raise ParseError(f"bad integer in {line!r}", line=lineno) from None
        if d < 0:
            raise ParseError("dimension must be nonnegative", line=lineno)
        dims[(p, q)] = d
        idx += 1
    d_horiz = {}
    d_vert = {}
    while idx < len(lines):
        lineno, line = lines[idx]
        fields = line.split()
        if len(fields) != 3 or fields[0] not in ("dh", "dv"):
            raise ParseError("expected `dh p q` or `dv p q` block header", line=lineno)
        try:
            p, q = int(fields[1]), int(fields[2])
        except ValueError:
            raise ParseError(f"bad position in {line!r}", line=lineno) from None
        src = dims.get((p, q), 0)
        tgt = dims.get((p + 1, q) if fields[0] == "dh" else (p, q + 1), 0)
        idx += 1
        rows = []
        for _ in range(tgt):
            if idx >= len(lines):
                raise ParseError(f"matrix block for {line!r} is truncated", line=lineno)
            row_line, row_text = lines[idx]
            row_fields = row_text.split()
            if len(row_fields) != src:
                raise ParseError(f"expected {src} entries, got {len(row_fields)}", line=row_line)
            try:
                rows.append([Fraction(f) for f in row_fields])
            except (ValueError, ZeroDivisionError):
                raise ParseError("bad rational entry", line=row_line) from None
            idx += 1
        mat = QMatrix(tgt, src, [x for row in rows for x in row])
        target = d_horiz if fields[0] == "dh" else d_vert
        if (p, q) in target:
            raise ParseError(f"duplicate block {line!r}", line=lineno)
        target[(p, q)] = mat
    return DoubleComplex(dims, d_horiz, d_vert)
