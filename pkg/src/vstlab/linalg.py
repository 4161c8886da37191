"""Dense square matrices over Z[t^{+-1}] ("laurent") or Q(i) ("gaussian")."""

from __future__ import annotations

import json
from typing import Callable, Sequence

from .ring import (
    GaussianRational,
    LaurentPoly,
    RingError,
    lp_divexact,
    lp_eval,
    lp_is_unit,
    parse_gaussian,
    parse_laurent,
)

__all__ = [
    "LinalgError",
    "RingMatrix",
    "identity",
    "mat_mul",
    "mat_det",
    "mat_rank",
    "kernel",
    "nullspace",
    "mat_inverse",
    "local_embed",
    "diagonal",
    "specialize",
    "matrix_to_json",
    "matrix_from_json",
]

RING_TAGS = ("laurent", "gaussian")


class LinalgError(ValueError):
    pass


def zero_of(ring: str):
    return LaurentPoly({}) if ring == "laurent" else GaussianRational(0)


def one_of(ring: str):
    return LaurentPoly({0: 1}) if ring == "laurent" else GaussianRational(1)


def coerce_entry(x, ring: str):
    if ring == "laurent":
        if isinstance(x, LaurentPoly):
            if x.ring != "Z":
                raise LinalgError("laurent matrices hold integer-coefficient polynomials")
            return x
        if isinstance(x, str):
            return parse_laurent(x, "Z")
        return LaurentPoly.const(x, "Z")
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, str):
        return parse_gaussian(x)
    if isinstance(x, LaurentPoly):
        raise LinalgError("polynomial entry in a gaussian matrix")
    return GaussianRational(x)


class RingMatrix:
    """Immutable n x n matrix; ``rows`` is a tuple of row tuples."""

    __slots__ = ("ring", "n", "rows", "_hash")

    def __init__(self, rows: Sequence[Sequence], ring: str = "laurent"):
        if ring not in RING_TAGS:
            raise LinalgError(f"unknown ring tag {ring!r}")
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise LinalgError("matrix must be square and nonempty")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "n", n)
        object.__setattr__(
            self, "rows", tuple(tuple(coerce_entry(x, ring) for x in r) for r in rows)
        )
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, rows, ring):
        m = object.__new__(cls)
        object.__setattr__(m, "ring", ring)
        object.__setattr__(m, "n", len(rows))
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "_hash", None)
        return m

    def __setattr__(self, name, value):
        raise AttributeError("RingMatrix is immutable")

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.ring, self.rows)))
        return self._hash

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __mul__(self, other):
        if isinstance(other, RingMatrix):
            return mat_mul(self, other)
        return self.map(lambda x: x * other)

    def __add__(self, other):
        _check_pair(self, other)
        return RingMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ring,
        )

    def __sub__(self, other):
        _check_pair(self, other)
        return RingMatrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ring,
        )

    def map(self, fn: Callable, ring: str | None = None) -> "RingMatrix":
        ring = ring or self.ring
        return RingMatrix._raw(tuple(tuple(fn(x) for x in r) for r in self.rows), ring)

    def is_identity(self) -> bool:
        one, zero = one_of(self.ring), zero_of(self.ring)
        return all(
            (x == one if i == j else x == zero)
            for i, r in enumerate(self.rows)
            for j, x in enumerate(r)
        )

    def transpose(self) -> "RingMatrix":
        return RingMatrix._raw(tuple(zip(*self.rows)), self.ring)

    def apply(self, vec: Sequence) -> list:
        if len(vec) != self.n:
            raise LinalgError("vector length mismatch")
        return [sum((a * b for a, b in zip(r, vec)), zero_of(self.ring)) for r in self.rows]

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def __str__(self):
        cells = self.to_strings()
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in r) + "]" for r in cells)

    def __repr__(self):
        return f"RingMatrix({self.to_strings()!r}, ring={self.ring!r})"


def _check_pair(a: RingMatrix, b: RingMatrix):
    if a.n != b.n:
        raise LinalgError(f"dimension mismatch: {a.n} vs {b.n}")
    if a.ring != b.ring:
        raise LinalgError(f"ring mismatch: {a.ring} vs {b.ring}")


def identity(n: int, ring: str = "laurent") -> RingMatrix:
    one, zero = one_of(ring), zero_of(ring)
    return RingMatrix._raw(
        tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), ring
    )


def diagonal(entries: Sequence, ring: str = "laurent") -> RingMatrix:
    n = len(entries)
    zero = zero_of(ring)
    d = [coerce_entry(x, ring) for x in entries]
    return RingMatrix._raw(
        tuple(tuple(d[i] if i == j else zero for j in range(n)) for i in range(n)), ring
    )


def mat_mul(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    _check_pair(a, b)
    n = a.n
    zero = zero_of(a.ring)
    cols = list(zip(*b.rows))
    out = []
    for r in a.rows:
        nz = [(k, x) for k, x in enumerate(r) if x]
        row = []
        for c in cols:
            acc = zero
            for k, x in nz:
                y = c[k]
                if y:
                    acc = acc + x * y
            row.append(acc)
        out.append(tuple(row))
    return RingMatrix._raw(tuple(out), a.ring)


def _det_cofactor(rows) -> object:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _det_bareiss(rows, ring: str):
    """Fraction-free elimination; every division is exact in the ring."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = one_of(ring)
    div = lp_divexact if ring == "laurent" else (lambda x, y: x / y)
    for k in range(n - 1):
        if not m[k][k]:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return zero_of(ring)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def mat_det(a: RingMatrix):
    if a.n <= 3:
        return _det_cofactor(a.rows)
    return _det_bareiss(a.rows, a.ring)


def _require_field(a: RingMatrix):
    if a.ring != "gaussian":
        raise LinalgError("rank/kernel need a field; specialize the matrix first")


def _rref(rows: list[list], ncols: int):
    """In-place reduced row echelon form; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


def mat_rank(a: RingMatrix) -> int:
    _require_field(a)
    rows = [list(r) for r in a.rows]
    return len(_rref(rows, a.n))


def kernel(a: RingMatrix) -> list[list[GaussianRational]]:
    """Basis of {x : a x = 0}, one vector per free column."""
    _require_field(a)
    return nullspace(a.rows, a.n)


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[GaussianRational]]:
    """Basis of the common kernel of a stack of field rows (any row count)."""
    work = [[GaussianRational.coerce(x) for x in r] for r in rows]
    pivots = _rref(work, ncols)
    zero, one = GaussianRational(0), GaussianRational(1)
    basis = []
    for f in (c for c in range(ncols) if c not in pivots):
        v = [zero] * ncols
        v[f] = one
        for r, pc in enumerate(pivots):
            v[pc] = -work[r][f]
        basis.append(v)
    return basis


def mat_inverse(a: RingMatrix) -> RingMatrix:
    """Field inverse by elimination; over Z[t^{+-1}] only 2x2 with unit det."""
    n = a.n
    if a.ring == "laurent":
        if n != 2:
            raise LinalgError("laurent inverse is only provided for 2x2 blocks")
        det = mat_det(a)
        unit, inv = lp_is_unit(det)
        if not unit:
            raise LinalgError(f"determinant {det} is not a unit of Z[t^+-1]")
        (p, q), (r, s) = a.rows
        return RingMatrix._raw(((s * inv, -q * inv), (-r * inv, p * inv)), "laurent")
    zero, one = GaussianRational(0), GaussianRational(1)
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(a.rows)]
    pivots = _rref(aug, n)
    if len(pivots) < n:
        raise LinalgError("matrix is singular")
    return RingMatrix._raw(tuple(tuple(r[n:]) for r in aug), "gaussian")


def local_embed(i: int, n: int, block: RingMatrix) -> RingMatrix:
    """Identity except the 2x2 block at rows/columns i, i+1 (1-based)."""
    if n < 2:
        raise LinalgError("strand count must be at least 2")
    if not 1 <= i <= n - 1:
        raise LinalgError(f"block index {i} out of range 1..{n - 1}")
    if block.n != 2:
        raise LinalgError("local_embed expects a 2x2 block")
    rows = [list(r) for r in identity(n, block.ring).rows]
    for a in range(2):
        for b in range(2):
            rows[i - 1 + a][i - 1 + b] = block.rows[a][b]
    return RingMatrix._raw(tuple(tuple(r) for r in rows), block.ring)


def specialize(a: RingMatrix, t0) -> RingMatrix:
    """Evaluate a laurent matrix at t = t0, giving a gaussian matrix."""
    if a.ring == "gaussian":
        return a
    t0 = GaussianRational.coerce(t0)
    if t0.is_zero():
        raise RingError("specialization point t0 must be nonzero")
    return a.map(lambda p: lp_eval(p, t0), ring="gaussian")


def matrix_to_json(a: RingMatrix) -> dict:
    return {"ring": a.ring, "n": a.n, "entries": a.to_strings()}


def matrix_from_json(obj) -> RingMatrix:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        ring = obj["ring"]
        entries = obj["entries"]
        n = obj.get("n", len(entries))
    except (KeyError, TypeError) as exc:
        raise LinalgError(f"malformed matrix JSON: {exc}") from None
    if len(entries) != n:
        raise LinalgError(f"matrix JSON declares n={n} but has {len(entries)} rows")
    if not all(isinstance(x, str) for r in entries for x in r):
        raise LinalgError("matrix entries must be strings in the ring grammar")
    return RingMatrix(entries, ring)
