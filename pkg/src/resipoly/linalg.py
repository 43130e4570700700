"""Exact linear algebra over the rationals.

All entries are :class:`fractions.Fraction`; nothing here ever touches a
float.  Subspaces are canonicalized by their reduced row-echelon basis,
which is unique, so equality of subspaces is literal equality of bases.

Rank-only questions are answered by an integer row-echelon routine
(denominators cleared first), which is considerably faster than rational
Gauss-Jordan and is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

__all__ = [
    "QMatrix",
    "Subspace",
    "VectorCollection",
    "SetTheoreticReport",
    "det",
    "embed",
    "format_fraction",
    "kernel",
    "kernel_of_projection",
    "project_image",
    "rank",
    "rank_mod_p",
    "rref",
    "set_theoretic_checks",
    "to_fraction",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def to_fraction(value):
    """Coerce ints, ``"p/q"`` strings and Fractions to Fraction; reject floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def format_fraction(value):
    """Serialize a rational as ``"n"`` (denominator one) or ``"p/q"``."""
    q = to_fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class QMatrix:
    """Immutable dense matrix with Fraction entries."""

    __slots__ = ("rows", "num_rows", "num_cols")

    def __init__(self, rows, num_cols=None):
        converted = tuple(tuple(to_fraction(x) for x in row) for row in rows)
        if converted:
            width = len(converted[0])
            if num_cols is None:
                num_cols = width
            if any(len(row) != num_cols for row in converted):
                raise ValueError("ragged rows")
        elif num_cols is None:
            raise ValueError("column count required for an empty matrix")
        self.rows = converted
        self.num_rows = len(converted)
        self.num_cols = num_cols

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.num_cols == other.num_cols and self.rows == other.rows

    def __hash__(self):
        return hash((self.num_cols, self.rows))

    def __repr__(self):
        body = "; ".join(
            " ".join(format_fraction(x) for x in row) for row in self.rows
        )
        return f"QMatrix({self.num_rows}x{self.num_cols}: {body})"

    def column(self, j):
        return tuple(row[j] for row in self.rows)


def _rref_rows(rows, num_cols):
    """Reduced row echelon form of a list of Fraction rows.

    Returns ``(rows, pivots)`` with zero rows dropped.  The output is the
    unique RREF of the row space.
    """
    mat = [list(row) for row in rows]
    pivots = []
    r = 0
    nrows = len(mat)
    for c in range(num_cols):
        pivot_row = None
        for i in range(r, nrows):
            if mat[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        lead = mat[r][c]
        if lead != 1:
            inv = _ONE / lead
            mat[r] = [x * inv for x in mat[r]]
        row_r = mat[r]
        for i in range(nrows):
            if i != r:
                f = mat[i][c]
                if f:
                    mat[i] = [a - f * b for a, b in zip(mat[i], row_r)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return mat[:r], pivots


def rref(matrix, num_cols=None):
    """Canonical reduced row-echelon form and rank."""
    if isinstance(matrix, QMatrix):
        rows, width = matrix.rows, matrix.num_cols
    else:
        rows = [[to_fraction(x) for x in row] for row in matrix]
        if rows:
            width = len(rows[0])
        elif num_cols is not None:
            width = num_cols
        else:
            raise ValueError("column count required for an empty matrix")
    reduced, pivots = _rref_rows(rows, width)
    return QMatrix(reduced, num_cols=width), len(pivots)


def _integer_rows(rows):
    """Clear denominators row by row; the result has the same row space."""
    out = []
    for row in rows:
        scaled = [to_fraction(x) for x in row]
        mult = 1
        for x in scaled:
            d = x.denominator
            if d != 1:
                mult = mult * d // gcd(mult, d)
        out.append([int(x * mult) for x in scaled])
    return out


def _echelon_insert(echelon, row):
    """Reduce an integer row against an echelon list, append if nonzero.

    ``echelon`` holds ``(pivot_column, row)`` pairs; rows stay integral via
    cross-multiplication followed by content reduction.
    """
    for pivot_col, pivot_row in echelon:
        x = row[pivot_col]
        if x:
            y = pivot_row[pivot_col]
            row = [a * y - x * b for a, b in zip(row, pivot_row)]
    lead = None
    for j, a in enumerate(row):
        if a:
            lead = j
            break
    if lead is None:
        return False
    g = 0
    for a in row:
        if a:
            g = gcd(g, abs(a))
            if g == 1:
                break
    if g > 1:
        row = [a // g for a in row]
    if row[lead] < 0:
        row = [-a for a in row]
    echelon.append((lead, row))
    return True


def rank(rows):
    """Rank of a matrix given as an iterable of rows (exact, integer path)."""
    rows = list(rows)
    if not rows:
        return 0
    echelon = []
    for row in _integer_rows(rows):
        _echelon_insert(echelon, row)
    return len(echelon)


def rank_mod_p(rows, p):
    """Rank over the prime field GF(p); a cheap cross-check of :func:`rank`.

    Rows whose denominators vanish mod p are rejected.
    """
    if p < 2:
        raise ValueError("p must be a prime >= 2")
    mat = []
    for row in rows:
        reduced = []
        for x in row:
            q = to_fraction(x)
            if q.denominator % p == 0:
                raise ValueError("denominator divisible by p")
            reduced.append(q.numerator * pow(q.denominator, -1, p) % p)
        mat.append(reduced)
    if not mat:
        return 0
    width = len(mat[0])
    r = 0
    for c in range(width):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][c], -1, p)
        mat[r] = [a * inv % p for a in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


def det(rows):
    """Exact determinant of a square matrix (Bareiss over cleared integers)."""
    rows = [list(row) for row in rows]
    n = len(rows)
    if n == 0:
        return _ONE
    if any(len(row) != n for row in rows):
        raise ValueError("determinant of a non-square matrix")
    scale = _ONE
    mat = []
    for row in rows:
        frs = [to_fraction(x) for x in row]
        mult = 1
        for x in frs:
            d = x.denominator
            if d != 1:
                mult = mult * d // gcd(mult, d)
        scale *= mult
        mat.append([int(x * mult) for x in frs])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            swap = None
            for i in range(k + 1, n):
                if mat[i][k]:
                    swap = i
                    break
            if swap is None:
                return _ZERO
            mat[k], mat[swap] = mat[swap], mat[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
            mat[i][k] = 0
        prev = mat[k][k]
    return Fraction(sign * mat[n - 1][n - 1]) / scale


class Subspace:
    """A linear subspace of Q^n, held by its reduced row-echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim, vectors=()):
        if ambient_dim < 0:
            raise ValueError("negative ambient dimension")
        rows = [[to_fraction(x) for x in v] for v in vectors]
        for row in rows:
            if len(row) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        reduced, pivots = _rref_rows(rows, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(row) for row in reduced)
        self.pivots = tuple(pivots)

    @classmethod
    def zero(cls, ambient_dim):
        return cls(ambient_dim)

    @classmethod
    def full(cls, ambient_dim):
        rows = []
        for i in range(ambient_dim):
            row = [_ZERO] * ambient_dim
            row[i] = _ONE
            rows.append(row)
        return cls(ambient_dim, rows)

    @property
    def dim(self):
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"

    def reduce(self, vector):
        """Residual of a vector after elimination against the basis."""
        v = [to_fraction(x) for x in vector]
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        for row, p in zip(self.basis, self.pivots):
            f = v[p]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains_vector(self, vector):
        return not any(self.reduce(vector))

    def contains(self, other):
        """Subspace containment: every basis vector of `other` reduces to zero."""
        if not isinstance(other, Subspace):
            return self.contains_vector(other)
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimensions differ")
        return all(self.contains_vector(row) for row in other.basis)


def kernel(matrix, num_cols=None):
    """Right kernel of a matrix, as a canonical :class:`Subspace`."""
    reduced, rk = rref(matrix, num_cols=num_cols)
    width = reduced.num_cols
    pivots = []
    for row in reduced.rows:
        for j, x in enumerate(row):
            if x:
                pivots.append(j)
                break
    pivot_set = set(pivots)
    vectors = []
    for f in range(width):
        if f in pivot_set:
            continue
        v = [_ZERO] * width
        v[f] = _ONE
        for i, p in enumerate(pivots):
            v[p] = -reduced.rows[i][f]
        vectors.append(v)
    return Subspace(width, vectors)


def _canonical_coords(coords, ambient_dim):
    out = sorted(set(coords))
    if out and (out[0] < 0 or out[-1] >= ambient_dim):
        raise IndexError("coordinate index out of range")
    return out


def project_image(space, coords):
    """Image of a subspace under deleting all coordinates outside `coords`.

    The retained coordinates keep their relative order; the result lives in
    Q^len(coords).
    """
    coords = _canonical_coords(coords, space.ambient_dim)
    rows = [[row[c] for c in coords] for row in space.basis]
    return Subspace(len(coords), rows)


def kernel_of_projection(space, coords):
    """Vectors of the subspace vanishing on every coordinate in `coords`.

    This is the kernel of :func:`project_image` onto `coords`; rank plus
    nullity always equals ``space.dim``.
    """
    coords = _canonical_coords(coords, space.ambient_dim)
    if space.dim == 0 or not coords:
        return space
    constraint = [[row[c] for row in space.basis] for c in coords]
    mixing = kernel(constraint, num_cols=space.dim)
    vectors = []
    for coeffs in mixing.basis:
        v = [_ZERO] * space.ambient_dim
        for lam, row in zip(coeffs, space.basis):
            if lam:
                v = [a + lam * b for a, b in zip(v, row)]
        vectors.append(v)
    return Subspace(space.ambient_dim, vectors)


def embed(space, ambient_dim, coords):
    """Place a subspace of Q^len(coords) into Q^ambient at the given coordinates."""
    coords = sorted(set(coords))
    if len(coords) != space.ambient_dim:
        raise ValueError("coordinate count does not match the subspace ambient")
    if coords and coords[-1] >= ambient_dim:
        raise IndexError("coordinate index out of range")
    rows = []
    for row in space.basis:
        v = [_ZERO] * ambient_dim
        for c, x in zip(coords, row):
            v[c] = x
        rows.append(v)
    return Subspace(ambient_dim, rows)


class VectorCollection:
    """Labeled vectors in Q^n with exactly computed supports."""

    __slots__ = ("ambient_dim", "labels", "vectors", "supports")

    def __init__(self, ambient_dim, items=()):
        labels = []
        vectors = []
        for label, coords in items:
            v = tuple(to_fraction(x) for x in coords)
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
            labels.append(label)
            vectors.append(v)
        self.ambient_dim = ambient_dim
        self.labels = tuple(labels)
        self.vectors = tuple(vectors)
        self.supports = tuple(
            frozenset(j for j, x in enumerate(v) if x) for v in self.vectors
        )

    def __len__(self):
        return len(self.vectors)

    def __repr__(self):
        return f"VectorCollection({len(self)} vectors in Q^{self.ambient_dim})"


@dataclass(frozen=True)
class SetTheoreticReport:
    sti_1: bool
    sti_2: bool
    related: bool
    properly_unrelated: bool


def _is_set_independent(supports):
    seen = set()
    for s in supports:
        if not s or s & seen:
            return False
        seen |= s
    return True


def _matching_components(sup1, sup2):
    """Connected components of the support overlap graph between collections.

    Under set-theoretic independence a pair of subcollections covers the
    same coordinate set iff it is a union of components whose two support
    unions coincide ("closed" components), so relatedness reduces to a
    finite component scan.
    """
    n1, n2 = len(sup1), len(sup2)
    parent = list(range(n1 + n2))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    owner = {}
    for i, s in enumerate(sup1):
        for c in s:
            owner[c] = i
    for j, s in enumerate(sup2):
        for c in s:
            if c in owner:
                union(owner[c], n1 + j)
    groups = {}
    for node in range(n1 + n2):
        groups.setdefault(find(node), []).append(node)
    components = []
    for nodes in groups.values():
        u1 = frozenset().union(*(sup1[i] for i in nodes if i < n1)) if any(
            i < n1 for i in nodes
        ) else frozenset()
        u2 = frozenset().union(*(sup2[i - n1] for i in nodes if i >= n1)) if any(
            i >= n1 for i in nodes
        ) else frozenset()
        components.append((nodes, u1 == u2))
    return components


def _related_bruteforce(sup1, sup2):
    related = False
    properly = True
    for mask1 in range(1, 1 << len(sup1)):
        u1 = frozenset().union(
            *(sup1[i] for i in range(len(sup1)) if mask1 >> i & 1)
        )
        for mask2 in range(1, 1 << len(sup2)):
            u2 = frozenset().union(
                *(sup2[j] for j in range(len(sup2)) if mask2 >> j & 1)
            )
            if u1 == u2:
                related = True
                full = mask1 == (1 << len(sup1)) - 1 and mask2 == (1 << len(sup2)) - 1
                if not full:
                    properly = False
    return related, properly


def set_theoretic_checks(collection_1, collection_2):
    """Set-theoretic independence and (proper) relatedness of two collections.

    Each collection is set-theoretically independent when its supports are
    nonempty and pairwise disjoint.  The collections are related when some
    nonempty subcollections cover exactly the same coordinate set; properly
    unrelated when only the two full collections can do so.
    """
    if collection_1.ambient_dim != collection_2.ambient_dim:
        raise ValueError("ambient dimensions differ")
    sup1, sup2 = collection_1.supports, collection_2.supports
    sti_1 = _is_set_independent(sup1)
    sti_2 = _is_set_independent(sup2)
    if sti_1 and sti_2:
        components = _matching_components(sup1, sup2)
        closed = [nodes for nodes, ok in components if ok]
        related = bool(closed)
        properly = not closed or (
            len(components) == 1
            and components[0][1]
            and len(components[0][0]) == len(sup1) + len(sup2)
        )
    else:
        if len(sup1) + len(sup2) > 22:
            raise ValueError(
                "collections too large for the general relatedness search"
            )
        related, properly = _related_bruteforce(sup1, sup2)
    return SetTheoreticReport(sti_1, sti_2, related, properly)
