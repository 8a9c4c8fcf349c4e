"""Canonical subspaces of F_q^n, Gaussian coefficients, and spreads.

A subspace is identified with its reduced-row-echelon basis, so equality
and ordering of subspaces are plain tuple comparisons.  The canonical
total order is (pivot-column set, then flattened basis entries), which
fixes vertex numbering for everything built downstream.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import SizeLimitExceeded
from .gf import FieldSpec, Matrix, rank, rref

ENUMERATION_LIMIT = 10**6


@dataclass(frozen=True)
class Subspace:
    field: FieldSpec
    ambient: int
    dim: int
    basis: Matrix  # RREF, dim rows, ambient cols

    @property
    def pivots(self) -> tuple[int, ...]:
        out = []
        for i in range(self.dim):
            row = self.basis.row(i)
            for j, x in enumerate(row):
                if x != 0:
                    out.append(j)
                    break
        return tuple(out)

    @property
    def sort_key(self) -> tuple:
        return (self.pivots, self.basis.data)

    def contains_vector(self, vec: tuple[int, ...]) -> bool:
        f = self.field
        residual = list(vec)
        for i in range(self.dim):
            row = self.basis.row(i)
            piv = self.pivots[i]
            c = residual[piv]
            if c:
                residual = [f.sub(x, f.mul(c, y)) for x, y in zip(residual, row)]
        return not any(residual)

    def vectors(self):
        """All q^dim vectors of the subspace (small spaces only)."""
        f = self.field
        rows = self.basis.row_list()
        for coeffs in itertools.product(f.elements(), repeat=self.dim):
            vec = [0] * self.ambient
            for c, row in zip(coeffs, rows):
                if c:
                    vec = [f.add(x, f.mul(c, y)) for x, y in zip(vec, row)]
            yield tuple(vec)


def canonicalize(field: FieldSpec, vectors: Matrix) -> Subspace:
    """Subspace spanned by the rows; zero span yields dim 0."""
    reduced, rk, _ = rref(vectors)
    basis = Matrix(field, rk, vectors.cols, reduced.data[: rk * vectors.cols])
    return Subspace(field=field, ambient=vectors.cols, dim=rk, basis=basis)


def subspace_from_rows(field: FieldSpec, rows, ambient: int) -> Subspace:
    rows = list(rows)
    if not rows:
        return Subspace(field, ambient, 0, Matrix.zeros(field, 0, ambient))
    return canonicalize(field, Matrix.from_rows(field, rows))


def gaussian_coefficient(n: int, t: int, q: int) -> int:
    """Number of t-dimensional subspaces of F_q^n, exact."""
    if t < 0 or t > n:
        raise ValueError(f"require 0 <= t <= n, got t={t}, n={n}")
    num = 1
    den = 1
    for i in range(t):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def enumerate_subspaces(field: FieldSpec, n: int, t: int, *, limit: int = ENUMERATION_LIMIT) -> list[Subspace]:
    """All t-subspaces of F_q^n in canonical order.

    Iterates RREF profiles (pivot sets x free entries) so the cost is linear
    in the output size.
    """
    count = gaussian_coefficient(n, t, field.q)
    if count > limit:
        raise SizeLimitExceeded(f"{count} subspaces of F_{field.q}^{n} exceed limit {limit}")
    out: list[Subspace] = []
    if t == 0:
        return [Subspace(field, n, 0, Matrix.zeros(field, 0, n))]
    for pivots in itertools.combinations(range(n), t):
        pivot_set = set(pivots)
        free_positions = [
            (i, j)
            for i in range(t)
            for j in range(pivots[i] + 1, n)
            if j not in pivot_set
        ]
        template = [[0] * n for _ in range(t)]
        for i, p in enumerate(pivots):
            template[i][p] = 1
        for values in itertools.product(field.elements(), repeat=len(free_positions)):
            rows = [list(r) for r in template]
            for (i, j), v in zip(free_positions, values):
                rows[i][j] = v
            basis = Matrix.from_rows(field, rows)
            out.append(Subspace(field, n, t, basis))
    assert len(out) == count
    return out


def subspaces_up_to_dim(field: FieldSpec, n: int, t: int, *, limit: int = ENUMERATION_LIMIT) -> list[Subspace]:
    """Subspaces of dimension t, t-1, ..., 0, each block in canonical order."""
    out: list[Subspace] = []
    for d in range(t, -1, -1):
        out.extend(enumerate_subspaces(field, n, d, limit=limit))
    return out


def sum_dim(spaces) -> int:
    """Dimension of the sum of the given subspaces of a common ambient space."""
    spaces = list(spaces)
    if not spaces:
        return 0
    first = spaces[0]
    rows = []
    for s in spaces:
        if s.field != first.field or s.ambient != first.ambient:
            raise ValueError("sum_dim: mixed fields or ambient spaces")
        rows.extend(s.basis.row_list())
    if not rows:
        return 0
    return rank(Matrix.from_rows(first.field, rows))


def subspace_sum(spaces) -> Subspace:
    spaces = list(spaces)
    first = spaces[0]
    rows = []
    for s in spaces:
        rows.extend(s.basis.row_list())
    return subspace_from_rows(first.field, rows, first.ambient)


def intersection(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: rref of [[A A],[B 0]]; zero-left rows carry the intersection."""
    if a.field != b.field or a.ambient != b.ambient:
        raise ValueError("intersection: mixed fields or ambient spaces")
    f, n = a.field, a.ambient
    rows = []
    for r in a.basis.row_list():
        rows.append(list(r) + list(r))
    for r in b.basis.row_list():
        rows.append(list(r) + [0] * n)
    if not rows:
        return Subspace(f, n, 0, Matrix.zeros(f, 0, n))
    reduced, rk, _ = rref(Matrix.from_rows(f, rows))
    inter_rows = []
    for i in range(rk):
        row = reduced.row(i)
        if not any(row[:n]):
            inter_rows.append(row[n:])
    return subspace_from_rows(f, inter_rows, n)


# ---------------------------------------------------------------------------
# polynomial machinery over an arbitrary FieldSpec (used for spreads)
# ---------------------------------------------------------------------------

def _fpoly_mul(f: FieldSpec, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = f.add(out[i + j], f.mul(x, y))
    while out and out[-1] == 0:
        out.pop()
    return out


def _fpoly_mod(f: FieldSpec, a, b):
    a = list(a)
    inv_lead = f.inv(b[-1])
    while True:
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            return a
        factor = f.mul(a[-1], inv_lead)
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            if c:
                a[i + shift] = f.sub(a[i + shift], f.mul(factor, c))


def _fpoly_irreducible(f: FieldSpec, poly) -> bool:
    deg = len(poly) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for code in range(f.q**d):
            g = [0] * (d + 1)
            g[d] = 1
            c = code
            for i in range(d):
                g[i] = c % f.q
                c //= f.q
            if not _fpoly_mod(f, poly, g):
                return False
    return True


def _smallest_irreducible(f: FieldSpec, deg: int):
    for code in range(f.q**deg):
        poly = [0] * (deg + 1)
        poly[deg] = 1
        c = code
        for i in range(deg):
            poly[i] = c % f.q
            c //= f.q
        if _fpoly_irreducible(f, poly):
            return poly
    raise AssertionError("no irreducible polynomial over extension field")


def spread(field: FieldSpec, t: int, *, limit: int = ENUMERATION_LIMIT) -> list[Subspace]:
    """A t-spread of F_q^{2t}: q^t+1 pairwise trivially intersecting t-subspaces.

    Standard field-extension construction: the lines of F_{q^t}^2 viewed as
    F_q-subspaces, with F_{q^t} realized as F_q[y]/(g) for the smallest monic
    irreducible g of degree t.
    """
    q = field.q
    if q**t + 1 > limit or 2 * t * q**t > limit:
        raise SizeLimitExceeded(f"spread of F_{q}^{2*t} exceeds limit {limit}")
    n = 2 * t
    g = _smallest_irreducible(field, t)

    def coords(poly) -> list[int]:
        return list(poly) + [0] * (t - len(poly))

    def times_y_power(beta, i):
        shifted = [0] * i + list(beta)
        return _fpoly_mod(field, shifted, g)

    members: list[Subspace] = []
    for code in range(q**t):
        beta = []
        c = code
        for _ in range(t):
            beta.append(c % q)
            c //= q
        while beta and beta[-1] == 0:
            beta.pop()
        rows = []
        for i in range(t):
            left = [0] * t
            left[i] = 1
            rows.append(left + coords(times_y_power(beta, i)))
        members.append(subspace_from_rows(field, rows, n))
    rows = []
    for i in range(t):
        right = [0] * t
        right[i] = 1
        rows.append([0] * t + right)
    members.append(subspace_from_rows(field, rows, n))
    assert len(members) == q**t + 1
    return members
