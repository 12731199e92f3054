"""Cochain complexes of finite-dimensional rational vector spaces."""

from ..errors import NotAComplex
from ..linalg import RationalMatrix, kernel_basis, rank, solve


class CochainComplex:
    """C^0 -> C^1 -> ... -> C^L with differentials d^0..d^{L-1}.

    `bases[n]` optionally names the basis of C^n; `index[n]` inverts it.
    d^n is checked against d^{n+1} at construction.  `complete` says the
    complex really stops at C^L; truncations of longer complexes pass False,
    which forbids asking for H^L.
    """

    def __init__(self, dims, differentials, bases=None, name="", check=True, complete=True):
        self.complete = complete
        self.dims = list(dims)
        self.d = list(differentials)
        self.name = name
        if len(self.d) != len(self.dims) - 1:
            raise ValueError("need one differential between consecutive cochain spaces")
        for n, M in enumerate(self.d):
            if M.shape != (self.dims[n + 1], self.dims[n]):
                raise ValueError(f"d^{n} has shape {M.shape}, expected {(self.dims[n + 1], self.dims[n])}")
        self.bases = bases
        self.index = None if bases is None else [{b: i for i, b in enumerate(B)} for B in bases]
        self._ranks = {}
        if check:
            self.check()

    @property
    def top(self):
        return len(self.dims) - 1

    def check(self):
        for n in range(len(self.d) - 1):
            if not (self.d[n + 1] @ self.d[n]).is_zero():
                raise NotAComplex(f"d^{n + 1} d^{n} != 0 in {self.name or 'complex'}")

    def rank_d(self, n):
        if n < 0 or n >= len(self.d):
            return 0
        if n not in self._ranks:
            self._ranks[n] = rank(self.d[n])
        return self._ranks[n]

    def betti(self, n):
        """dim H^n; needs d^n, so n < top unless C^{n+1} is genuinely zero."""
        if n > self.top:
            return 0
        return self.dims[n] - self.rank_d(n) - self.rank_d(n - 1)

    def differential(self, n):
        if n < len(self.d):
            return self.d[n]
        return RationalMatrix(0, self.dims[n])

    def apply(self, n, vec):
        """d^n on a sparse vector {basis index: coeff}."""
        return self.differential(n).apply(vec)

    def cocycles(self, n):
        return kernel_basis(self.differential(n))

    def bounding_cochain(self, n, vec):
        """Some x with d^{n-1} x = vec, or None."""
        if n == 0:
            return {} if not vec else None
        return solve(self.d[n - 1], vec)


def cohomology_dims(X, n_max=None):
    """[dim H^0, ..., dim H^n_max]."""
    if n_max is None:
        n_max = X.top if X.complete else max(len(X.d) - 1, 0)
    if n_max >= len(X.d) and not getattr(X, "complete", False):
        raise ValueError(f"complex only carries differentials up to d^{len(X.d) - 1}")
    return [X.betti(n) for n in range(n_max + 1)]


def zero_complex(length):
    return CochainComplex([0] * (length + 1), [RationalMatrix(0, 0) for _ in range(length)])
