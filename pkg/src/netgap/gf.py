"""Finite fields F_{p^m} and exact dense linear algebra over them.

Field elements are plain ints in [0, q): the base-p digits of the code are
the coefficients of the element written in the polynomial basis, lowest
degree first.  All matrices are row-major tuples of such codes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import SizeLimitExceeded

MAX_FIELD_SIZE = 2**20
# Above this order, multiplication falls back to schoolbook reduction
# instead of log/antilog tables.
TABLE_LIMIT = 2**16

Felt = int


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (coefficient lists, low degree first)
# ---------------------------------------------------------------------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a modulo monic-leading b, coefficients in F_p."""
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p) if b[-1] != 1 else 1
    while len(a) >= len(b) and any(a):
        _poly_trim(a)
        if len(a) < len(b):
            break
        factor = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] = (a[i + shift] - factor * c) % p
    return _poly_trim(a)


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_irreducible(f: list[int], p: int) -> bool:
    """Exhaustive test: no monic divisor of degree 1..deg(f)//2."""
    deg = len(f) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for code in range(p**d):
            g = [0] * (d + 1)
            g[d] = 1
            c = code
            for i in range(d):
                g[i] = c % p
                c //= p
            if not _poly_mod(f, g, p):
                return False
    return True


# ---------------------------------------------------------------------------
# field descriptor
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """Descriptor of F_{p^m} with a fixed monic irreducible modulus.

    modulus holds the coefficients low degree first, length m+1, top
    coefficient 1.  For m = 1 the modulus is x (arithmetic is just mod p).
    """

    p: int
    m: int
    modulus: tuple[int, ...]
    q: int

    # -- element codecs ---------------------------------------------------
    def _decode(self, a: Felt) -> list[int]:
        digits = []
        for _ in range(self.m):
            digits.append(a % self.p)
            a //= self.p
        return digits

    def _encode(self, digits: Sequence[int]) -> Felt:
        code = 0
        for d in reversed(digits):
            code = code * self.p + d
        return code

    # -- arithmetic --------------------------------------------------------
    def add(self, a: Felt, b: Felt) -> Felt:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        da, db = self._decode(a), self._decode(b)
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: Felt) -> Felt:
        if self.p == 2:
            return a
        if self.m == 1:
            return (-a) % self.p
        return self._encode([(-x) % self.p for x in self._decode(a)])

    def sub(self, a: Felt, b: Felt) -> Felt:
        return self.add(a, self.neg(b))

    def mul(self, a: Felt, b: Felt) -> Felt:
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        if self.q <= TABLE_LIMIT:
            exp, log = _tables(self)
            return exp[log[a] + log[b]]
        return self._mul_schoolbook(a, b)

    def _mul_schoolbook(self, a: Felt, b: Felt) -> Felt:
        prod = _poly_mul(self._decode(a), self._decode(b), self.p)
        rem = _poly_mod(prod, list(self.modulus), self.p)
        return self._encode(rem + [0] * (self.m - len(rem)))

    def inv(self, a: Felt) -> Felt:
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        if self.q <= TABLE_LIMIT:
            exp, log = _tables(self)
            return exp[(self.q - 1) - log[a]]
        return self.pow(a, self.q - 2)

    def div(self, a: Felt, b: Felt) -> Felt:
        return self.mul(a, self.inv(b))

    def pow(self, a: Felt, k: int) -> Felt:
        out = 1
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def elements(self) -> range:
        return range(self.q)

    def check_element(self, a: Felt) -> None:
        if not 0 <= a < self.q:
            raise ValueError(f"element code {a} out of range for field of size {self.q}")


_FIELD_CACHE: dict[tuple[int, int], FieldSpec] = {}
_TABLE_CACHE: dict[FieldSpec, tuple[list[int], list[int]]] = {}


def _tables(f: FieldSpec) -> tuple[list[int], list[int]]:
    """exp/log tables w.r.t. a fixed primitive element (lazily built)."""
    cached = _TABLE_CACHE.get(f)
    if cached is not None:
        return cached
    order = f.q - 1
    factors = _prime_factors(order)
    gen = None
    for cand in range(2, f.q):
        if all(_pow_schoolbook(f, cand, order // ell) != 1 for ell in factors):
            gen = cand
            break
    assert gen is not None, "multiplicative group without generator"
    exp = [0] * (2 * order)
    log = [0] * f.q
    val = 1
    for i in range(order):
        exp[i] = val
        exp[i + order] = val
        log[val] = i
        val = f._mul_schoolbook(val, gen)
    _TABLE_CACHE[f] = (exp, log)
    return exp, log


def _pow_schoolbook(f: FieldSpec, a: Felt, k: int) -> Felt:
    out = 1
    while k:
        if k & 1:
            out = f._mul_schoolbook(out, a)
        a = f._mul_schoolbook(a, a)
        k >>= 1
    return out


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def make_field(p: int, m: int, *, max_q: int = MAX_FIELD_SIZE) -> FieldSpec:
    """F_{p^m} with the lexicographically smallest monic irreducible modulus.

    Coefficient tuples are compared low degree first, so the result is
    bit-identical across runs.
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if m < 1:
        raise ValueError(f"extension degree m={m} must be >= 1")
    q = p**m
    if q > max_q:
        raise SizeLimitExceeded(f"field size {q} exceeds limit {max_q}")
    cached = _FIELD_CACHE.get((p, m))
    if cached is not None:
        return cached
    modulus = None
    for code in range(p**m):
        coeffs = [0] * (m + 1)
        coeffs[m] = 1
        c = code
        for i in range(m):
            coeffs[i] = c % p
            c //= p
        if _poly_irreducible(coeffs, p):
            modulus = tuple(coeffs)
            break
    assert modulus is not None, "no irreducible polynomial found"
    field = FieldSpec(p=p, m=m, modulus=modulus, q=q)
    _FIELD_CACHE[(p, m)] = field
    return field


def field_of_order(q: int, *, max_q: int = MAX_FIELD_SIZE) -> FieldSpec:
    """The field of size q, for q any prime power."""
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    n = q
    p = 2
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        p = n
    m = 0
    while n > 1:
        if n % p:
            raise ValueError(f"q={q} is not a prime power")
        n //= p
        m += 1
    return make_field(p, m, max_q=max_q)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix over a FieldSpec, row-major element codes."""

    field: FieldSpec
    rows: int
    cols: int
    data: tuple[Felt, ...]

    def __post_init__(self):
        if len(self.data) != self.rows * self.cols:
            raise ValueError("data length does not match shape")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Sequence[Felt]]) -> "Matrix":
        rows = [tuple(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        data = tuple(x for r in rows for x in r)
        return cls(field=field, rows=len(rows), cols=ncols, data=data)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        return cls(field=field, rows=rows, cols=cols, data=(0,) * (rows * cols))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        data = [0] * (n * n)
        for i in range(n):
            data[i * n + i] = 1
        return cls(field=field, rows=n, cols=n, data=tuple(data))

    def entry(self, i: int, j: int) -> Felt:
        return self.data[i * self.cols + j]

    def row(self, i: int) -> tuple[Felt, ...]:
        return self.data[i * self.cols : (i + 1) * self.cols]

    def row_list(self) -> list[tuple[Felt, ...]]:
        return [self.row(i) for i in range(self.rows)]

    def stack(self, other: "Matrix") -> "Matrix":
        if other.cols != self.cols or other.field != self.field:
            raise ValueError("stack: incompatible shapes or fields")
        return Matrix(self.field, self.rows + other.rows, self.cols, self.data + other.data)

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows or self.field != other.field:
            raise ValueError("mul: incompatible shapes or fields")
        f = self.field
        out = [0] * (self.rows * other.cols)
        for i in range(self.rows):
            rowbase = i * self.cols
            for k in range(self.cols):
                a = self.data[rowbase + k]
                if a == 0:
                    continue
                obase = k * other.cols
                for j in range(other.cols):
                    b = other.data[obase + j]
                    if b:
                        idx = i * other.cols + j
                        out[idx] = f.add(out[idx], f.mul(a, b))
        return Matrix(f, self.rows, other.cols, tuple(out))


def stack(*matrices: Matrix) -> Matrix:
    out = matrices[0]
    for m in matrices[1:]:
        out = out.stack(m)
    return out


def _rref_rows(field: FieldSpec, rows: list[list[Felt]], ncols: int) -> tuple[list[list[Felt]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot columns)."""
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = field.inv(rows[r][col])
        if inv != 1:
            rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [field.sub(x, field.mul(factor, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rref(mat: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    """Unique reduced row echelon form; returns (R, rank, pivot columns)."""
    rows = [list(mat.row(i)) for i in range(mat.rows)]
    rows, pivots = _rref_rows(mat.field, rows, mat.cols)
    data = tuple(x for r in rows for x in r)
    return Matrix(mat.field, mat.rows, mat.cols, data), len(pivots), tuple(pivots)


def rank(mat: Matrix) -> int:
    return rref(mat)[1]


def rowspace_contains(a: Matrix, b: Matrix) -> bool:
    """True iff every row of b lies in the row space of a."""
    if a.cols != b.cols or a.field != b.field:
        raise ValueError("rowspace_contains: incompatible matrices")
    return rank(a.stack(b)) == rank(a)


def solve_left(basis: Matrix, target: Matrix) -> Matrix | None:
    """X with X @ basis == target, or None if some row is outside the span."""
    if basis.cols != target.cols or basis.field != target.field:
        raise ValueError("solve_left: incompatible matrices")
    f = basis.field
    k, n = basis.rows, basis.cols
    # reduce [basis | I_k]; left part becomes R = T @ basis with T on the right
    aug = [list(basis.row(i)) + [1 if j == i else 0 for j in range(k)] for i in range(k)]
    aug, _ = _rref_rows(f, aug, n + k)
    red = [row[:n] for row in aug]
    trans = [row[n:] for row in aug]
    pivots = []
    for row in red:
        for j, x in enumerate(row):
            if x != 0:
                pivots.append(j)
                break
    out_rows = []
    for i in range(target.rows):
        residual = list(target.row(i))
        coeffs = [0] * k
        for rr, col in enumerate(pivots):
            c = residual[col]
            if c:
                residual = [f.sub(x, f.mul(c, y)) for x, y in zip(residual, red[rr])]
                coeffs[rr] = c
        if any(residual):
            return None
        xrow = [0] * k
        for rr, c in enumerate(coeffs):
            if c:
                xrow = [f.add(x, f.mul(c, t)) for x, t in zip(xrow, trans[rr])]
        out_rows.append(xrow)
    return Matrix.from_rows(f, out_rows) if out_rows else Matrix.zeros(f, 0, k)
