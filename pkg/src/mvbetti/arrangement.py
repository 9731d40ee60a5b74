"""Affine and projective hyperplane arrangements over the rationals.

A hyperplane is stored in canonical form: the coefficients of
a_1*x_1 + ... + a_n*x_n = c are scaled to coprime integers with the first
nonzero normal coefficient positive, so two hyperplanes are equal iff their
canonical data coincide.  Projective arrangements carry n+1 homogeneous
coefficients and a zero constant.

The two reductions applied before any Betti computation also live here:
deconing (declaring one hyperplane of a projective arrangement to be at
infinity) and essentialization (splitting off the trivial affine factor so
that the normals span the ambient space).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import ParseError, ValidationError
from .linalg import QMatrix

AFFINE = "affine"
PROJECTIVE = "projective"


@dataclass(frozen=True)
class Hyperplane:
    normal: tuple
    constant: Fraction

    @staticmethod
    def canonical(normal, constant=0) -> "Hyperplane":
        """Canonical form of the hyperplane sum(a_i x_i) = c.

        All of (a_1, ..., a_n, c) are scaled to coprime integers and the sign
        is fixed so the first nonzero a_i is positive.
        """
        normal = [Fraction(x) for x in normal]
        constant = Fraction(constant)
        if all(x == 0 for x in normal):
            raise ValidationError("hyperplane has zero normal vector")
        scale = lcm(*(x.denominator for x in normal), constant.denominator)
        ints = [int(x * scale) for x in normal] + [int(constant * scale)]
        g = gcd(*ints)
        ints = [x // g for x in ints]
        first = next(x for x in ints[:-1] if x)
        if first < 0:
            ints = [-x for x in ints]
        return Hyperplane(tuple(Fraction(x) for x in ints[:-1]), Fraction(ints[-1]))

    def is_canonical(self) -> bool:
        return self == Hyperplane.canonical(self.normal, self.constant)

    def equation_row(self) -> list:
        """Augmented row [a_1, ..., a_n, c]."""
        return list(self.normal) + [self.constant]

    def __str__(self):
        terms = []
        for i, a in enumerate(self.normal):
            if not a:
                continue
            name = f"x{i + 1}"
            if a == 1:
                term = name
            elif a == -1:
                term = f"-{name}"
            else:
                term = f"{a}*{name}"
            if terms and not term.startswith("-"):
                term = "+ " + term
            elif term.startswith("-") and terms:
                term = "- " + term[1:]
            terms.append(term)
        return f"{' '.join(terms)} = {self.constant}"


@dataclass(frozen=True)
class Arrangement:
    ambient_dim: int
    hyperplanes: tuple
    kind: str

    def __post_init__(self):
        if self.kind not in (AFFINE, PROJECTIVE):
            raise ValidationError(f"unknown arrangement kind {self.kind!r}")
        if self.ambient_dim < 1:
            raise ValidationError("ambient dimension must be positive")
        width = self.ambient_dim if self.kind == AFFINE else self.ambient_dim + 1
        seen = {}
        for idx, h in enumerate(self.hyperplanes):
            if len(h.normal) != width:
                raise ValidationError(
                    f"hyperplane {idx} has {len(h.normal)} coefficients, expected {width}"
                )
            if self.kind == PROJECTIVE and h.constant != 0:
                raise ValidationError(f"hyperplane {idx} has nonzero constant in projective input")
            if not h.is_canonical():
                raise ValidationError(f"hyperplane {idx} is not in canonical form")
            if h in seen:
                raise ValidationError(f"duplicate hyperplane: {idx} repeats {seen[h]} ({h})")
            seen[h] = idx

    @property
    def r(self) -> int:
        return len(self.hyperplanes)

    def normal_matrix(self) -> QMatrix:
        return QMatrix(
            self.r,
            self.ambient_dim if self.kind == AFFINE else self.ambient_dim + 1,
            [x for h in self.hyperplanes for x in h.normal],
        )

    def rank(self) -> int:
        """Dimension of the span of the normal vectors (affine arrangements)."""
        if self.kind != AFFINE:
            raise ValidationError("rank is defined for affine arrangements; decone first")
        return self.normal_matrix().rank()

    def is_essential(self) -> bool:
        return self.rank() == self.ambient_dim


@dataclass(frozen=True)
class EssentialReduction:
    """Essential arrangement of rank s plus the data relating it to the input.

    The complement of the input arrangement is the product of the essential
    complement with an affine space of dimension `shift`; the invertible
    matrix `change_of_coordinates` has the common kernel of all normals in its
    last `shift` columns.
    """

    essential: Arrangement
    shift: int
    change_of_coordinates: QMatrix


def parse_arrangement(text: str) -> Arrangement:
    """Parse the arrangement file format.

    First non-comment line: `affine n` or `projective n`.  Every following
    non-comment line lists one hyperplane as whitespace-separated rationals
    (`p/q` or integers): n+1 fields a_1 ... a_n c for affine input, n+1
    homogeneous fields for projective input.  `#` starts a comment, blank
    lines are ignored.
    """
    kind = None
    dim = 0
    hyperplanes = []
    first_line = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if kind is None:
            if len(fields) != 2 or fields[0] not in (AFFINE, PROJECTIVE):
                raise ParseError("expected header `affine n` or `projective n`", line=lineno)
            kind = fields[0]
            try:
                dim = int(fields[1])
            except ValueError:
                raise ParseError(f"bad dimension {fields[1]!r}", line=lineno, column=2) from None
            if dim < 1:
                raise ParseError("dimension must be positive", line=lineno, column=2)
            continue
        if len(fields) != dim + 1:
            raise ParseError(
                f"expected {dim + 1} coefficients, got {len(fields)}", line=lineno
            )
        coeffs = []
        for col, field in enumerate(fields, start=1):
            try:
                coeffs.append(Fraction(field))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad rational {field!r}", line=lineno, column=col) from None
        try:
            if kind == AFFINE:
                h = Hyperplane.canonical(coeffs[:-1], coeffs[-1])
            else:
                h = Hyperplane.canonical(coeffs, 0)
        except ValidationError as exc:
            raise ParseError(str(exc), line=lineno) from None
        if h in first_line:
            raise ParseError(
                f"duplicate hyperplane (same as line {first_line[h]} after canonicalization)",
                line=lineno,
            )
        first_line[h] = lineno
        hyperplanes.append(h)
    if kind is None:
        raise ParseError("empty input: no header line found", line=1)
    return Arrangement(dim, tuple(hyperplanes), kind)


def decone(arr: Arrangement, infinity_index: int) -> Arrangement:
    """Affine arrangement whose complement equals the projective complement.

    Coordinates are changed so the selected hyperplane becomes the hyperplane
    at infinity and the remaining ones are read in the affine chart.  The
    eliminated homogeneous coordinate is the largest-index one with a nonzero
    coefficient in the infinity hyperplane, which makes the construction
    deterministic; downstream Betti numbers do not depend on the choice.
    """
    if arr.kind != PROJECTIVE:
        raise ValidationError("decone applies to projective arrangements")
    if not 0 <= infinity_index < arr.r:
        raise ValidationError(
            f"infinity index {infinity_index} out of range for {arr.r} hyperplanes"
        )
    n = arr.ambient_dim
    a = arr.hyperplanes[infinity_index].normal
    j_star = max(j for j in range(n + 1) if a[j])
    keep = [j for j in range(n + 1) if j != j_star]
    out = []
    for idx, h in enumerate(arr.hyperplanes):
        if idx == infinity_index:
            continue
        b = h.normal
        ratio = b[j_star] / a[j_star]
        normal = [b[j] - ratio * a[j] for j in keep]
        out.append(Hyperplane.canonical(normal, -ratio))
    return Arrangement(n, tuple(out), AFFINE)


def essentialize(arr: Arrangement) -> EssentialReduction:
    """Split off the trivial affine factor of an affine arrangement.

    Builds an invertible change of coordinates P whose last n-s columns span
    the common kernel of the normals (s = rank); the essential arrangement has
    normals N@P truncated to their first s coordinates, with unchanged
    constants.  Already-essential arrangements return the identity reduction.
    """
    if arr.kind != AFFINE:
        raise ValidationError("essentialize applies to affine arrangements")
    n = arr.ambient_dim
    normals = arr.normal_matrix()
    kernel = normals.kernel_basis()
    shift = kernel.cols
    if shift == 0:
        return EssentialReduction(arr, 0, QMatrix.identity(n))
    s = n - shift
    if s == 0:
        raise ValidationError("cannot essentialize an arrangement with no hyperplanes (rank 0)")
    # Unit directions at the non-pivot columns of the kernel's row space
    # complete the kernel columns to a basis of the ambient space.
    _, _, pivots = kernel.transpose().rref()
    pivot_set = set(pivots)
    unit_cols = [j for j in range(n) if j not in pivot_set]
    change = QMatrix(
        n,
        n,
        [
            (1 if i == unit_cols[k] else 0) if k < s else kernel.at(i, k - s)
            for i in range(n)
            for k in range(n)
        ],
    )
    hyperplanes = tuple(
        Hyperplane.canonical([h.normal[j] for j in unit_cols], h.constant)
        for h in arr.hyperplanes
    )
    essential = Arrangement(s, hyperplanes, AFFINE)
    return EssentialReduction(essential, shift, change)
