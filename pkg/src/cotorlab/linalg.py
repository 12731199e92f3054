"""Exact sparse linear algebra over the rationals.

Matrices are stored column-wise as dicts {row: value}; stored values are
never zero.  Rank is computed by fraction-free integer elimination after
splitting the matrix into independent blocks (connected components of the
row/column incidence graph), which is where nearly all the speed comes from
on cobar and Hochschild differentials.
"""

from fractions import Fraction
from functools import reduce
from math import gcd, lcm


class RationalMatrix:
    __slots__ = ("nrows", "ncols", "columns")

    def __init__(self, nrows, ncols, columns=None):
        self.nrows = nrows
        self.ncols = ncols
        if columns is None:
            columns = [{} for _ in range(ncols)]
        if len(columns) != ncols:
            raise ValueError("column count mismatch")
        self.columns = [{i: v for i, v in col.items() if v} for col in columns]

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols = [{} for _ in range(ncols)]
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(r):
                if v:
                    cols[j][i] = Fraction(v)
        return cls(len(rows), ncols, cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [{i: 1} for i in range(n)])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def nnz(self):
        return sum(len(c) for c in self.columns)

    def __getitem__(self, ij):
        i, j = ij
        return self.columns[j].get(i, 0)

    def to_rows(self):
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out[i][j] = Fraction(v)
        return out

    def apply(self, vec):
        """Image of a sparse vector {col: value}."""
        out = {}
        for j, a in vec.items():
            for i, v in self.columns[j].items():
                out[i] = out.get(i, 0) + a * v
        return {i: v for i, v in out.items() if v}

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return RationalMatrix(self.nrows, other.ncols, [self.apply(c) for c in other.columns])

    def is_zero(self):
        return not any(self.columns)

    def transpose(self):
        cols = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                cols[i][j] = v
        return RationalMatrix(self.ncols, self.nrows, cols)

    def __eq__(self, other):
        return (
            isinstance(other, RationalMatrix)
            and self.shape == other.shape
            and all(
                {i: Fraction(v) for i, v in a.items()} == {i: Fraction(v) for i, v in b.items()}
                for a, b in zip(self.columns, other.columns)
            )
        )

    def __repr__(self):
        return f"RationalMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


# ---------------------------------------------------------------------------
# rank


def _integral(col):
    """Scale a column to coprime integers."""
    den = 1
    for v in col.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    if den == 1:
        out = {i: int(v) for i, v in col.items()}
    else:
        out = {i: int(v * den) for i, v in col.items()}
    g = reduce(gcd, out.values(), 0)
    if g > 1:
        out = {i: v // g for i, v in out.items()}
    return out


def _echelon_rank(vectors):
    pivots = {}
    for v in sorted(vectors, key=len):
        while v:
            lead = min(v)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = v
                break
            a, b = v[lead], p[lead]
            g = gcd(a, b)
            mv, mp = b // g, a // g
            new = {k: x * mv for k, x in v.items()}
            for k, x in p.items():
                y = new.get(k, 0) - mp * x
                if y:
                    new[k] = y
                else:
                    del new[k]
            if new:
                c = reduce(gcd, new.values(), 0)
                if c > 1:
                    new = {k: x // c for k, x in new.items()}
            v = new
    return len(pivots)


def components(M):
    """Column index groups that share no rows with each other."""
    parent = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for col in M.columns:
        rows = iter(col)
        first = next(rows, None)
        if first is None:
            continue
        parent.setdefault(first, first)
        r0 = find(first)
        for i in rows:
            parent.setdefault(i, i)
            ri = find(i)
            if ri != r0:
                parent[ri] = r0
    groups = {}
    for j, col in enumerate(M.columns):
        if col:
            groups.setdefault(find(next(iter(col))), []).append(j)
    return list(groups.values())


def rank(M):
    """Exact rank; no floating point anywhere."""
    total = 0
    for group in components(M):
        total += _echelon_rank([_integral(M.columns[j]) for j in group])
    return total


# ---------------------------------------------------------------------------
# kernels, solving, inverses (Fraction Gauss-Jordan; used on small blocks)


def _rref(rows, ncols):
    """Reduced row echelon form in place on a list of {col: Fraction} rows.

    Returns the pivot list [(row_index, col)].
    """
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i].get(c):
                if piv is None or len(rows[i]) < len(rows[piv]):
                    piv = i
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        inv = 1 / Fraction(pr[c])
        pr = {k: v * inv for k, v in pr.items()}
        rows[r] = pr
        for i in range(len(rows)):
            if i != r:
                f = rows[i].get(c)
                if f:
                    row = rows[i]
                    for k, v in pr.items():
                        y = row.get(k, 0) - f * v
                        if y:
                            row[k] = y
                        else:
                            row.pop(k, None)
        pivots.append((r, c))
        r += 1
        if r == len(rows):
            break
    return pivots


def _row_dicts(M):
    rows = [{} for _ in range(M.nrows)]
    for j, col in enumerate(M.columns):
        for i, v in col.items():
            rows[i][j] = Fraction(v)
    return [r for r in rows if r]


def kernel_basis(M):
    """Basis of {x : Mx = 0} as sparse dicts {col: Fraction}."""
    rows = _row_dicts(M)
    pivots = _rref(rows, M.ncols)
    pivot_cols = {c: r for r, c in pivots}
    basis = []
    for free in range(M.ncols):
        if free in pivot_cols:
            continue
        vec = {free: Fraction(1)}
        for c, r in pivot_cols.items():
            v = rows[r].get(free)
            if v:
                vec[c] = -v
        basis.append(vec)
    return basis


def solve(M, b):
    """Some x with Mx = b (b a sparse dict over rows), or None."""
    aug = RationalMatrix(M.nrows, M.ncols + 1, [dict(c) for c in M.columns] + [dict(b)])
    rows = _row_dicts(aug)
    pivots = _rref(rows, M.ncols + 1)
    x = {}
    for r, c in pivots:
        if c == M.ncols:
            return None
        v = rows[r].get(M.ncols)
        if v:
            x[c] = v
    return x


def inverse(rows):
    """Inverse of a dense square matrix given as a list of lists."""
    n = len(rows)
    aug = []
    for i, r in enumerate(rows):
        d = {j: Fraction(v) for j, v in enumerate(r) if v}
        d[n + i] = Fraction(1)
        aug.append(d)
    pivots = _rref(aug, 2 * n)
    if len(pivots) < n or any(c >= n for _, c in pivots[:n]):
        raise ZeroDivisionError("matrix is singular")
    return [[aug[i].get(n + j, Fraction(0)) for j in range(n)] for i in range(n)]
