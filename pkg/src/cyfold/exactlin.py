"""Deterministic exact linear algebra over Q and prime fields.

Everything downstream (cohomology ranks, chain-map solving, resolutions)
funnels through rref/kernel/solve here.  Arithmetic is exact: Fractions in
lowest terms over Q, int residues mod a prime otherwise.  The seeded PRNG
is splitmix64 (state += 0x9E3779B97F4B9C15; mixes 0xBF58476D1CE4E5B9 and
0x94D049BB133111EB) so every randomized search is reproducible.
"""

from fractions import Fraction

from . import _kernels


class Field:
    """Ground field: Field(0) is Q, Field(p) is GF(p) for p prime."""

    def __init__(self, char=0):
        if char != 0:
            if char < 2 or any(char % q == 0 for q in range(2, int(char**0.5) + 1)):
                raise ValueError(f"characteristic must be 0 or prime, got {char}")
        self.char = char

    def __call__(self, value, den=1):
        if self.char == 0:
            return Fraction(value, den)
        return (value * pow(den, self.char - 2, self.char)) % self.char

    def zero(self):
        return Fraction(0) if self.char == 0 else 0

    def one(self):
        return Fraction(1) if self.char == 0 else 1

    def inv(self, a):
        if self.char == 0:
            return 1 / a
        return pow(a, self.char - 2, self.char)

    def neg(self, a):
        return -a if self.char == 0 else (-a) % self.char

    def mul(self, a, b):
        return a * b if self.char == 0 else (a * b) % self.char

    def add(self, a, b):
        return a + b if self.char == 0 else (a + b) % self.char

    def __eq__(self, other):
        return isinstance(other, Field) and self.char == other.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __repr__(self):
        return "QQ" if self.char == 0 else f"GF({self.char})"


QQ = Field(0)


class Matrix:
    """Dense matrix over a Field; rows is a list of entry lists."""

    __slots__ = ("rows", "cols", "data", "field")

    def __init__(self, rows, cols, data, field=QQ):
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("inconsistent matrix dimensions")
        self.rows = rows
        self.cols = cols
        self.data = [list(r) for r in data]
        self.field = field

    @classmethod
    def zero(cls, rows, cols, field=QQ):
        z = field.zero()
        return cls(rows, cols, [[z] * cols for _ in range(rows)], field)

    @classmethod
    def identity(cls, n, field=QQ):
        m = cls.zero(n, n, field)
        one = field.one()
        for i in range(n):
            m.data[i][i] = one
        return m

    @classmethod
    def from_rows(cls, data, cols=None, field=QQ):
        if not data:
            return cls(0, cols or 0, [], field)
        return cls(len(data), len(data[0]), data, field)

    def copy(self):
        return Matrix(self.rows, self.cols, self.data, self.field)

    def transpose(self):
        data = [[self.data[r][c] for r in range(self.rows)] for c in range(self.cols)]
        return Matrix(self.cols, self.rows, data, self.field)

    def matmul(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        f = self.field
        out = Matrix.zero(self.rows, other.cols, f)
        for i in range(self.rows):
            row = self.data[i]
            for k in range(self.cols):
                a = row[k]
                if a == 0:
                    continue
                orow = other.data[k]
                trow = out.data[i]
                for j in range(other.cols):
                    b = orow[j]
                    if b != 0:
                        trow[j] = f.add(trow[j], f.mul(a, b))
        return out

    def apply(self, vec):
        f = self.field
        out = [f.zero()] * self.rows
        for i in range(self.rows):
            acc = f.zero()
            row = self.data[i]
            for j, v in enumerate(vec):
                if v != 0 and row[j] != 0:
                    acc = f.add(acc, f.mul(row[j], v))
            out[i] = acc
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field})"


class Subspace:
    """Subspace of field^ambient_dim, spanned by independent basis rows."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, basis):
        self.ambient_dim = ambient_dim
        self.basis = basis
        if basis.cols != ambient_dim:
            raise ValueError("basis width != ambient dimension")

    @property
    def dim(self):
        return self.basis.rows

    def contains(self, vec):
        if self.dim == 0:
            return all(v == 0 for v in vec)
        aug = Matrix.from_rows(
            self.basis.data + [list(vec)], self.ambient_dim, self.basis.field
        )
        return rref(aug).rank == self.dim


class RrefResult:
    __slots__ = ("reduced", "rank", "pivots")

    def __init__(self, reduced, rank, pivots):
        self.reduced = reduced
        self.rank = rank
        self.pivots = pivots


def rref(m: Matrix) -> RrefResult:
    """Unique reduced row echelon form with rank and pivot columns."""
    if m.rows == 0 or m.cols == 0:
        return RrefResult(m.copy(), 0, [])
    if m.field.char == 0:
        data, rank, pivots = _kernels.rref_frac(m.data)
    else:
        data, rank, pivots = _kernels.rref_modp(m.data, m.field.char)
    return RrefResult(Matrix(m.rows, m.cols, data, m.field), rank, pivots)


def rank(m: Matrix) -> int:
    return rref(m).rank


def kernel_basis(m: Matrix) -> Subspace:
    """Basis of the right null space {x : m x = 0}."""
    if m.rows == 0:
        return Subspace(m.cols, Matrix.identity(m.cols, m.field))
    res = rref(m)
    f = m.field
    pivset = set(res.pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    basis = []
    for c in free:
        vec = [f.zero()] * m.cols
        vec[c] = f.one()
        for i, pc in enumerate(res.pivots):
            vec[pc] = f.neg(res.reduced.data[i][c])
        basis.append(vec)
    return Subspace(m.cols, Matrix.from_rows(basis, m.cols, f))


def solve_linear(m: Matrix, b):
    """Some x with m x = b, or None when b is outside the column space."""
    if len(b) != m.rows:
        raise ValueError("rhs length != row count")
    f = m.field
    aug = Matrix.from_rows(
        [m.data[i] + [b[i]] for i in range(m.rows)], m.cols + 1, f
    ) if m.rows else Matrix.zero(0, m.cols + 1, f)
    if m.rows == 0:
        return [f.zero()] * m.cols
    res = rref(aug)
    if m.cols in res.pivots:
        return None
    x = [f.zero()] * m.cols
    for i, pc in enumerate(res.pivots):
        x[pc] = res.reduced.data[i][m.cols]
    return x


_SM_GAMMA = 0x9E3779B97F4B9C15
_SM_MIX1 = 0xBF58476D1CE4E5B9
_SM_MIX2 = 0x94D049BB133111EB
_MASK = (1 << 64) - 1


class SplitMix64:
    """64-bit splitmix generator; the only randomness source in the package."""

    def __init__(self, seed):
        self.state = seed & _MASK

    def next_u64(self):
        self.state = (self.state + _SM_GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * _SM_MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _SM_MIX2) & _MASK
        return z ^ (z >> 31)

    def int_in(self, lo, hi):
        """Uniform-enough integer in [lo, hi]."""
        return lo + self.next_u64() % (hi - lo + 1)


def derive_seed(seed, index):
    rng = SplitMix64(seed)
    for _ in range(index + 1):
        val = rng.next_u64()
    return val


def random_vector(space: Subspace, seed, bound=10):
    """Deterministic random element of the subspace.

    Coefficients over the basis are drawn from {-bound..bound}; the zero
    subspace yields the zero vector.
    """
    f = space.basis.field
    rng = SplitMix64(seed)
    vec = [f.zero()] * space.ambient_dim
    for row in space.basis.data:
        c = rng.int_in(-bound, bound)
        if c == 0:
            continue
        cf = f(c)
        for j, v in enumerate(row):
            if v != 0:
                vec[j] = f.add(vec[j], f.mul(cf, v))
    return vec


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection of two subspaces of the same ambient space."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient mismatch")
    f = a.basis.field
    if a.dim == 0 or b.dim == 0:
        return Subspace(a.ambient_dim, Matrix.zero(0, a.ambient_dim, f))
    # solve x*A - y*B = 0 over coefficient vectors (x, y)
    stacked = Matrix.from_rows(
        a.basis.data + [[f.neg(v) for v in row] for row in b.basis.data],
        a.ambient_dim,
        f,
    ).transpose()
    ker = kernel_basis(stacked)
    rows = []
    for coeffs in ker.basis.data:
        vec = [f.zero()] * a.ambient_dim
        for i in range(a.dim):
            c = coeffs[i]
            if c != 0:
                for j, v in enumerate(a.basis.data[i]):
                    if v != 0:
                        vec[j] = f.add(vec[j], f.mul(c, v))
        rows.append(vec)
    if not rows:
        return Subspace(a.ambient_dim, Matrix.zero(0, a.ambient_dim, f))
    res = rref(Matrix.from_rows(rows, a.ambient_dim, f))
    rows = [res.reduced.data[i] for i in range(res.rank)]
    return Subspace(a.ambient_dim, Matrix.from_rows(rows, a.ambient_dim, f))


class PreparedSolver:
    """Factor a matrix once, then solve m x = b for many right-hand sides.

    Row-reduces [m | I] so each solve is a single matrix-vector product
    plus a consistency check.
    """

    def __init__(self, m: Matrix):
        self.m = m
        f = m.field
        n, k = m.rows, m.cols
        aug = Matrix.from_rows(
            [list(m.data[i]) + [f.one() if j == i else f.zero() for j in range(n)]
             for i in range(n)],
            k + n,
            f,
        ) if n else Matrix.zero(0, k, f)
        res = rref(aug)
        self.rank = len([p for p in res.pivots if p < k])
        self.pivots = [p for p in res.pivots if p < k]
        self.reduced = res.reduced
        self.field = f

    def solve(self, b):
        f = self.field
        n, k = self.m.rows, self.m.cols
        x = [f.zero()] * k
        for i in range(n):
            row = self.reduced.data[i]
            acc = f.zero()
            for j in range(n):
                v = row[k + j]
                if v != 0 and b[j] != 0:
                    acc = f.add(acc, f.mul(v, b[j]))
            if i < self.rank:
                x[self.pivots[i]] = acc
            elif acc != 0:
                return None
        return x


class IncrementalSpan:
    """Row space with one-at-a-time insertion and O(rank * n) membership."""

    def __init__(self, n, field=QQ):
        self.n = n
        self.field = field
        self.pivot_rows = {}  # pivot column -> normalized row

    @property
    def dim(self):
        return len(self.pivot_rows)

    def reduce(self, vec):
        f = self.field
        v = list(vec)
        for p, row in self.pivot_rows.items():
            c = v[p]
            if c != 0:
                for j in range(p, self.n):
                    if row[j] != 0:
                        v[j] = f.add(v[j], f.neg(f.mul(c, row[j])))
        return v

    def contains(self, vec):
        return all(x == 0 for x in self.reduce(vec))

    def add(self, vec):
        """Insert if independent; returns True when the span grew."""
        f = self.field
        v = self.reduce(vec)
        for p in range(self.n):
            if v[p] != 0:
                inv = f.inv(v[p])
                row = [f.mul(inv, x) for x in v]
                for q, other in self.pivot_rows.items():
                    c = other[p]
                    if c != 0:
                        for j in range(self.n):
                            if row[j] != 0:
                                other[j] = f.add(other[j], f.neg(f.mul(c, row[j])))
                self.pivot_rows[p] = row
                return True
        return False
