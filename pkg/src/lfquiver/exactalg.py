"""Exact scalars and subspace arithmetic over GF(p) and the rationals.

Every subspace is stored by its reduced row echelon basis, so two
:class:`Subspace` values describe the same set exactly when they compare
equal.  All objects are immutable.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, NotContained

# GF(p) eliminations larger than this many entries go through numpy.
_NUMPY_THRESHOLD = 900


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field GF(p) (``p`` set) or the rationals (``p is None``)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not _is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")
            if self.p >= 1 << 16:
                raise ValueError("prime fields are limited to p < 2**16")

    @classmethod
    def gf(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        t = text.strip().replace(" ", "")
        if t.upper() in ("Q", "QQ", "RATIONALS"):
            return cls(None)
        up = t.upper()
        if up.startswith("GF(") and up.endswith(")"):
            return cls(int(t[3:-1]))
        if up.startswith("GF"):
            return cls(int(t[2:]))
        if t.isdigit():
            return cls(int(t))
        raise ValueError(f"unrecognised field {text!r}")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def size(self) -> int | None:
        return self.p

    def __str__(self):
        return "Q" if self.p is None else f"GF({self.p})"

    @property
    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def elem(self, x):
        """Canonical representative of ``x`` (int, Fraction or ``"num/den"``)."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        if isinstance(x, (np.integer,)):
            x = int(x)
        if not isinstance(x, int):
            raise TypeError(f"cannot interpret {x!r} as a field element")
        return x % self.p

    def inv(self, x):
        if self.p is None:
            return 1 / x
        return pow(x, -1, self.p)

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def elements(self):
        """All elements of a prime field, in increasing order."""
        if self.p is None:
            raise ValueError("the rationals cannot be enumerated")
        return range(self.p)

    def random_element(self, rng: random.Random, spread: int = 3):
        if self.p is None:
            return Fraction(rng.randint(-spread, spread))
        return rng.randrange(self.p)

    def dot(self, u, v):
        s = sum(a * b for a, b in zip(u, v))
        return s if self.p is None else s % self.p


# ---------------------------------------------------------------------------
# row reduction kernels


def _rref_rows(rows: list[list], ncols: int, fs: FieldSpec):
    """Return ``(basis_rows, pivots)`` for the row space of ``rows``."""
    if fs.p is not None and len(rows) * ncols > _NUMPY_THRESHOLD:
        return _rref_mod_numpy(rows, ncols, fs.p)
    rows = [list(r) for r in rows if any(r)]
    p = fs.p
    pivots = []
    r = 0
    n = len(rows)
    for c in range(ncols):
        if r == n:
            break
        piv = next((i for i in range(r, n) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        lead = pr[c]
        if p is None:
            if lead != 1:
                pr = [x / lead for x in pr]
        elif lead != 1:
            inv = pow(lead, -1, p)
            pr = [(x * inv) % p for x in pr]
        rows[r] = pr
        for i in range(n):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                ri = rows[i]
                if p is None:
                    rows[i] = [a - f * b for a, b in zip(ri, pr)]
                else:
                    rows[i] = [(a - f * b) % p for a, b in zip(ri, pr)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _rref_mod_numpy(rows, ncols, p):
    a = np.array(rows, dtype=np.int64).reshape(len(rows), ncols) % p
    nrows = a.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    return [[int(x) for x in row] for row in a[:r]], pivots


def _nullspace_from_rref(rref_rows, pivots, ncols, fs: FieldSpec):
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [fs.zero] * ncols
        v[f] = fs.one
        for row, pc in zip(rref_rows, pivots):
            if row[f]:
                v[pc] = fs.neg(row[f])
        out.append(v)
    return out


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class Matrix:
    """Dense exact matrix; ``data`` is a tuple of row tuples."""

    field: FieldSpec
    rows: int
    cols: int
    data: tuple

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise DimensionMismatch(
                f"matrix data does not match declared shape {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, fs: FieldSpec, rows: Sequence[Sequence], cols: int | None = None):
        rows = [tuple(fs.elem(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(fs, len(rows), cols, tuple(rows))

    @classmethod
    def zeros(cls, fs: FieldSpec, rows: int, cols: int):
        return cls(fs, rows, cols, tuple((fs.zero,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, fs: FieldSpec, n: int):
        return cls(
            fs, n, n, tuple(tuple(fs.one if i == j else fs.zero for j in range(n)) for i in range(n))
        )

    @classmethod
    def from_columns(cls, fs: FieldSpec, columns: Sequence[Sequence], rows: int):
        data = tuple(tuple(col[i] for col in columns) for i in range(rows))
        return cls(fs, rows, len(columns), data)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for a {self.rows}x{self.cols} map")
        fs = self.field
        return tuple(fs.dot(row, v) for row in self.data)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot compose {self.shape} with {other.shape}")
        fs = self.field
        cols = list(zip(*other.data)) if other.rows else [()] * other.cols
        data = tuple(tuple(fs.dot(row, c) for c in cols) for row in self.data)
        return Matrix(fs, self.rows, other.cols, data)

    def transpose(self) -> "Matrix":
        data = tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols))
        return Matrix(self.field, self.cols, self.rows, tuple(tuple(r) for r in data))

    @property
    def T(self):
        return self.transpose()

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def rank(self) -> int:
        return len(_rref_rows([list(r) for r in self.data], self.cols, self.field)[0])

    def is_injective(self) -> bool:
        return self.rank() == self.cols

    def is_surjective(self) -> bool:
        return self.rank() == self.rows

    def is_isomorphism(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def tolist(self):
        return [list(r) for r in self.data]


def rref(m: Matrix) -> Matrix:
    """Reduced row echelon form with zero rows removed."""
    rows, _ = _rref_rows([list(r) for r in m.data], m.cols, m.field)
    return Matrix(m.field, len(rows), m.cols, tuple(tuple(r) for r in rows))


def matrix_from_subspace(s: "Subspace") -> Matrix:
    """Matrix whose rows are the RREF basis of ``s``."""
    return Matrix(s.field, s.dim, s.ambient_dim, s.basis)


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    field: FieldSpec
    ambient_dim: int
    basis: tuple
    pivots: tuple = field(default=(), compare=False, repr=False)

    @classmethod
    def span(cls, fs: FieldSpec, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        vecs = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in F^{ambient_dim}")
            vecs.append([fs.elem(x) for x in v])
        rows, piv = _rref_rows(vecs, ambient_dim, fs)
        return cls(fs, ambient_dim, tuple(tuple(r) for r in rows), tuple(piv))

    @classmethod
    def _trusted(cls, fs, ambient_dim, vectors):
        # vectors already hold canonical field elements
        rows, piv = _rref_rows(list(vectors), ambient_dim, fs)
        return cls(fs, ambient_dim, tuple(tuple(r) for r in rows), tuple(piv))

    @classmethod
    def zero(cls, fs: FieldSpec, ambient_dim: int) -> "Subspace":
        return cls(fs, ambient_dim, (), ())

    @classmethod
    def full(cls, fs: FieldSpec, ambient_dim: int) -> "Subspace":
        basis = tuple(
            tuple(fs.one if i == j else fs.zero for j in range(ambient_dim)) for i in range(ambient_dim)
        )
        return cls(fs, ambient_dim, basis, tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __le__(self, other: "Subspace") -> bool:
        _check_same(self, other)
        return all(contains(other, b) for b in self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self <= other

    def coordinates(self, v: Sequence) -> tuple:
        """Coefficients of ``v`` (assumed in ``self``) in the RREF basis."""
        return tuple(v[c] for c in self.pivots)

    def __repr__(self):
        rows = ", ".join("(" + ",".join(str(x) for x in r) + ")" for r in self.basis)
        return f"Subspace<{self.field} dim {self.dim}/{self.ambient_dim}: span{{{rows}}}>"


def _check_same(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def contains(s: Subspace, v: Sequence) -> bool:
    if len(v) != s.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(v)} tested against F^{s.ambient_dim}")
    fs = s.field
    v = [fs.elem(x) for x in v]
    # reduce v against the RREF basis using pivot columns
    for row, pc in zip(s.basis, s.pivots):
        f = v[pc]
        if f:
            if fs.p is None:
                v = [a - f * b for a, b in zip(v, row)]
            else:
                p = fs.p
                v = [(a - f * b) % p for a, b in zip(v, row)]
    return not any(v)


def annihilator_rows(s: Subspace) -> list[list]:
    """Rows spanning the linear functionals vanishing on ``s``."""
    return _nullspace_from_rref([list(r) for r in s.basis], list(s.pivots), s.ambient_dim, s.field)


def kernel(t: Matrix) -> Subspace:
    rows, piv = _rref_rows([list(r) for r in t.data], t.cols, t.field)
    null = _nullspace_from_rref(rows, piv, t.cols, t.field)
    return Subspace._trusted(t.field, t.cols, null)


def image(t: Matrix, s: Subspace) -> Subspace:
    if t.cols != s.ambient_dim:
        raise DimensionMismatch(f"map with {t.cols} columns applied to a subspace of F^{s.ambient_dim}")
    return Subspace._trusted(t.field, t.rows, [list(t.apply(b)) for b in s.basis])


def preimage(t: Matrix, s: Subspace) -> Subspace:
    if t.rows != s.ambient_dim:
        raise DimensionMismatch(f"map with {t.rows} rows pulled back from F^{s.ambient_dim}")
    ann = annihilator_rows(s)
    if not ann:
        return Subspace.full(t.field, t.cols)
    fs = t.field
    cols = list(zip(*t.data))
    composite = [[fs.dot(w, c) for c in cols] for w in ann]
    rows, piv = _rref_rows(composite, t.cols, fs)
    return Subspace._trusted(fs, t.cols, _nullspace_from_rref(rows, piv, t.cols, fs))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    return Subspace._trusted(a.field, a.ambient_dim, [list(r) for r in a.basis + b.basis])


def sum_all(subspaces: Iterable[Subspace], fs: FieldSpec, ambient_dim: int) -> Subspace:
    vecs = []
    for s in subspaces:
        if s.ambient_dim != ambient_dim:
            raise DimensionMismatch("subspaces live in different ambient spaces")
        vecs.extend(list(r) for r in s.basis)
    return Subspace._trusted(fs, ambient_dim, vecs)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    if a.is_zero() or b.is_full():
        return a
    if b.is_zero() or a.is_full():
        return b
    fs = a.field
    stacked = annihilator_rows(a) + annihilator_rows(b)
    rows, piv = _rref_rows(stacked, a.ambient_dim, fs)
    return Subspace._trusted(fs, a.ambient_dim, _nullspace_from_rref(rows, piv, a.ambient_dim, fs))


def random_invertible(fs: FieldSpec, n: int, rng: random.Random) -> Matrix:
    while True:
        rows = [[fs.random_element(rng) for _ in range(n)] for _ in range(n)]
        m = Matrix(fs, n, n, tuple(tuple(r) for r in rows))
        if m.rank() == n:
            return m


def complement_in(inner: Subspace, outer: Subspace, seed: int = 0) -> Subspace:
    """A subspace ``X`` with ``inner (+) X = outer``.

    ``seed == 0`` keeps the rows of outer's RREF basis whose pivots are not
    pivots of ``inner``.  Any other seed first mixes outer's basis by a seeded
    random invertible matrix and then selects rows greedily.
    """
    _check_same(inner, outer)
    if not inner <= outer:
        raise NotContained("inner subspace is not contained in outer subspace")
    fs = inner.field
    if inner.dim == outer.dim:
        return Subspace.zero(fs, outer.ambient_dim)
    if seed == 0:
        taken = set(inner.pivots)
        chosen = [list(r) for r, pc in zip(outer.basis, outer.pivots) if pc not in taken]
        return Subspace._trusted(fs, outer.ambient_dim, chosen)
    rng = random.Random(seed)
    g = random_invertible(fs, outer.dim, rng)
    mixed = [
        [fs.dot(grow, col) for col in zip(*outer.basis)] for grow in g.data
    ]
    rng.shuffle(mixed)
    current = inner
    chosen = []
    for v in mixed:
        if not contains(current, v):
            chosen.append(v)
            current = Subspace._trusted(fs, outer.ambient_dim, [list(r) for r in current.basis] + [v])
            if current.dim == outer.dim:
                break
    return Subspace._trusted(fs, outer.ambient_dim, chosen)


def solve_within(t: Matrix, s: Subspace, target: Sequence):
    """Some ``x`` in ``s`` with ``t x = target``, or ``None`` if none exists."""
    fs = t.field
    if s.is_zero():
        return tuple([fs.zero] * t.cols) if not any(target) else None
    # unknown coefficients c with x = sum c_i basis_i
    images = [t.apply(b) for b in s.basis]
    k = len(images)
    aug = [[images[i][r] for i in range(k)] + [fs.elem(target[r])] for r in range(t.rows)]
    rows, piv = _rref_rows(aug, k + 1, fs)
    if piv and piv[-1] == k:
        return None
    coeffs = [fs.zero] * k
    for row, pc in zip(rows, piv):
        coeffs[pc] = row[k]
    x = [fs.zero] * t.cols
    for c, b in zip(coeffs, s.basis):
        if c:
            x = [fs.add(xi, fs.mul(c, bi)) for xi, bi in zip(x, b)]
    return tuple(x)


def independent(subspaces: Sequence[Subspace]) -> bool:
    """True iff the sum of the family is direct."""
    if not subspaces:
        return True
    s0 = subspaces[0]
    total = sum_all(subspaces, s0.field, s0.ambient_dim)
    return total.dim == sum(s.dim for s in subspaces)


def rank_of_vectors(fs: FieldSpec, vectors: Sequence[Sequence], ncols: int) -> int:
    return len(_rref_rows([list(v) for v in vectors], ncols, fs)[0])
