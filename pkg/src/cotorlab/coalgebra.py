"""Graded coalgebras with exact rational structure constants.

A coalgebra is a finite basis of hashable labels with, per label, a sparse
comultiplication (tuples (left, right, coeff), zero coefficients never
stored), a counit value, a total internal degree and a multidegree `weight`.
Comultiplication is homogeneous for the weight; the cobar machinery relies on
that to split complexes into blocks.  `exact_through` records the internal
degree up to which a truncation agrees with the infinite coalgebra it was cut
from (None for genuinely finite coalgebras).
"""

from fractions import Fraction
from itertools import combinations, permutations, product
from math import comb, factorial

from .combinat import (
    PARTITION_CAP,
    Poset,
    SimpleGraph,
    check_q,
    enumerate_intervals,
    q_binomial,
    q_factorial,
    set_partitions,
)
from .errors import SizeCapExceeded, VerificationFailed
from .linalg import RationalMatrix, inverse, rank


def _addto(d, key, c):
    v = d.get(key, 0) + c
    if v:
        d[key] = v
    else:
        d.pop(key, None)


def _add_weights(u, v):
    return tuple(a + b for a, b in zip(u, v))


class GradedCoalgebra:
    def __init__(
        self,
        name,
        basis,
        comult,
        counit,
        degree=None,
        weight=None,
        grouplike=None,
        exact_through=None,
        symbols=None,
        graded=True,
    ):
        self.name = name
        self.basis = tuple(basis)
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("repeated basis label")
        self.comult = {}
        for b in self.basis:
            acc = {}
            for l, r, c in comult.get(b, ()):
                _addto(acc, (l, r), Fraction(c))
            self.comult[b] = tuple((l, r, c) for (l, r), c in acc.items())
        self.counit = {b: Fraction(counit.get(b, 0)) for b in self.basis}
        self.degree = {b: (degree or {}).get(b, 0) for b in self.basis}
        if weight is None:
            weight = {b: (self.degree[b],) for b in self.basis}
        self.weight = {b: tuple(weight[b]) for b in self.basis}
        self.grouplike = grouplike
        self.exact_through = exact_through
        self.symbols = dict(symbols or {})
        self.graded = graded
        self._index = {b: i for i, b in enumerate(self.basis)}

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return f"GradedCoalgebra({self.name!r}, dim={len(self)})"

    def index(self, b):
        return self._index[b]

    def symbol(self, b):
        return self.symbols.get(b, str(b))

    def delta(self, vec):
        """Comultiplication of a sparse vector {label: coeff}."""
        out = {}
        for b, a in vec.items():
            for l, r, c in self.comult[b]:
                _addto(out, (l, r), a * c)
        return out

    def epsilon(self, vec):
        return sum((a * self.counit[b] for b, a in vec.items()), Fraction(0))

    def check_axioms(self):
        """List of violated laws (empty when the structure is a coalgebra)."""
        bad = []
        for b in self.basis:
            left, right = {}, {}
            for l, r, c in self.comult[b]:
                for ll, lr, c2 in self.comult[l]:
                    _addto(left, (ll, lr, r), c * c2)
                for rl, rr, c2 in self.comult[r]:
                    _addto(right, (l, rl, rr), c * c2)
            if left != right:
                bad.append(f"coassociativity fails on {self.symbol(b)}")
            lc, rc = {}, {}
            for l, r, c in self.comult[b]:
                _addto(lc, r, c * self.counit[l])
                _addto(rc, l, c * self.counit[r])
            if lc != {b: 1} or rc != {b: 1}:
                bad.append(f"counit law fails on {self.symbol(b)}")
            for l, r, c in self.comult[b]:
                if _add_weights(self.weight[l], self.weight[r]) != self.weight[b]:
                    bad.append(f"comultiplication of {self.symbol(b)} is not weight homogeneous")
                    break
                if self.graded and self.degree[l] + self.degree[r] != self.degree[b]:
                    bad.append(f"comultiplication of {self.symbol(b)} is not degree homogeneous")
                    break
        g = self.grouplike
        if g is not None:
            if self.comult[g] != ((g, g, 1),) or self.counit[g] != 1:
                bad.append(f"{self.symbol(g)} is not group-like")
        return bad

    def verify(self):
        bad = self.check_axioms()
        if bad:
            raise VerificationFailed("; ".join(bad[:5]))
        return True

    def is_normalized(self):
        """Group-like is a basis element and every other basis element has counit 0."""
        g = self.grouplike
        return g is not None and all(self.counit[b] == 0 for b in self.basis if b != g)

    def dump(self):
        """One line per basis element: label | degree | eps | Delta: l,r,coeff; ..."""
        lines = []
        for b in self.basis:
            terms = "; ".join(
                f"{self.symbol(l)},{self.symbol(r)},{c}" for l, r, c in self.comult[b]
            )
            lines.append(f"{self.symbol(b)} | {self.degree[b]} | {self.counit[b]} | Δ: {terms}")
        return lines


# ---------------------------------------------------------------------------
# the one-variable families


def _one_variable(name, sym, N, coeff, exact=True):
    basis = list(range(N + 1))
    comult = {n: [(r, n - r, coeff(n, r)) for r in range(n + 1)] for n in basis}
    return GradedCoalgebra(
        name,
        basis,
        comult,
        {0: 1},
        degree={n: n for n in basis},
        grouplike=0,
        exact_through=N if exact else None,
        symbols={n: f"{sym}{n}" for n in basis},
    )


def div_coalgebra(N):
    """Divided powers: Delta(x_n) = sum x_r (x) x_{n-r}, truncated at degree N."""
    return _one_variable(f"div({N})", "x", N, lambda n, r: 1)


def bin_coalgebra(N):
    return _one_variable(f"bin({N})", "y", N, comb)


def binq_coalgebra(N, q):
    q = Fraction(q)
    check_q(N, q)
    return _one_variable(f"binq({N},{q})", "y", N, lambda n, r: q_binomial(n, r, q))


# ---------------------------------------------------------------------------
# monomial families


def first_primes(m):
    out, k = [], 2
    while len(out) < m:
        if all(k % p for p in out):
            out.append(k)
        k += 1
    return out


def exponent_vectors(m, D):
    """All exponent vectors in m variables of total degree <= D, by degree."""
    out = []
    for d in range(D + 1):
        for cut in combinations(range(d + m - 1), m - 1):
            prev, vec = -1, []
            for c in cut + (d + m - 1,):
                vec.append(c - prev - 1)
                prev = c
            out.append(tuple(vec))
    return out


def _monomial_symbol(a, names):
    parts = []
    for e, x in zip(a, names):
        if e == 1:
            parts.append(x)
        elif e > 1:
            parts.append(f"{x}^{e}")
    return "*".join(parts) or "1"


def factor_exponents(n, primes):
    vec = []
    for p in primes:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        vec.append(e)
    if n != 1:
        raise ValueError("integer has a prime factor outside the given primes")
    return tuple(vec)


def dir_coalgebra(m, D):
    """Dirichlet coalgebra on z_n, n with at most D prime factors among the first m primes.

    Delta(z_n) = sum over ij = n; graded by the prime-exponent vector.
    """
    if m < 1:
        raise ValueError("need m >= 1")
    primes = first_primes(m)
    vecs = exponent_vectors(m, D)
    labels = []
    weight = {}
    for a in vecs:
        n = 1
        for p, e in zip(primes, a):
            n *= p**e
        labels.append(n)
        weight[n] = a
    labels.sort()
    lset = set(labels)
    comult = {n: [(i, n // i, 1) for i in labels if n % i == 0 and n // i in lset] for n in labels}
    return GradedCoalgebra(
        f"dir({m},{D})",
        labels,
        comult,
        {1: 1},
        degree={n: sum(weight[n]) for n in labels},
        weight=weight,
        grouplike=1,
        exact_through=D,
        symbols={n: f"z{n}" for n in labels},
    )


def polynomial_coalgebra(variables, D):
    """k[X_1..X_m] with Delta(X_i) = X_i (x) 1 + 1 (x) X_i, truncated at total degree D.

    `variables` is a list of names or a count.  Labels are exponent tuples.
    """
    if isinstance(variables, int):
        variables = ["X"] if variables == 1 else [f"X{i}" for i in range(1, variables + 1)]
    names = list(variables)
    m = len(names)
    vecs = exponent_vectors(m, D)
    comult = {}
    for a in vecs:
        terms = []
        for b in product(*(range(e + 1) for e in a)):
            c = 1
            for e, f in zip(a, b):
                c *= comb(e, f)
            terms.append((tuple(b), tuple(e - f for e, f in zip(a, b)), c))
        comult[a] = terms
    return GradedCoalgebra(
        f"k[{','.join(names)}]<= {D}".replace(" ", ""),
        vecs,
        comult,
        {(0,) * m: 1},
        degree={a: sum(a) for a in vecs},
        weight={a: a for a in vecs},
        grouplike=(0,) * m,
        exact_through=D,
        symbols={a: _monomial_symbol(a, names) for a in vecs},
    )


# ---------------------------------------------------------------------------
# incidence coalgebras


def full_incidence_coalgebra(P):
    """Basis: intervals [x, y].  Delta([x,y]) = sum_z [x,z] (x) [z,y].

    The degree is the length of a longest chain in [x, y].  It is additive
    under Delta only for graded posets, which the `graded` flag records.  The
    weight e_y - e_x in Z^P is always additive.
    """
    ivs = enumerate_intervals(P)
    labels = [(iv.lo, iv.hi) for iv in ivs]
    n = len(P)
    degree, weight, comult = {}, {}, {}
    for iv in ivs:
        x, y = iv.lo, iv.hi
        degree[(x, y)] = iv.poset().height()
        w = [0] * n
        w[P.index(y)] += 1
        w[P.index(x)] -= 1
        weight[(x, y)] = tuple(w)
        comult[(x, y)] = [((x, z), (z, y), 1) for z in iv.members]
    graded = all(
        degree[l] + degree[r] == degree[b] for b in labels for l, r, _ in comult[b]
    )
    single = labels[0] if len(labels) == 1 else None
    C = GradedCoalgebra(
        "C(P)",
        labels,
        comult,
        {(x, x): 1 for x in P},
        degree=degree,
        weight=weight,
        grouplike=single,
        symbols={(x, y): f"[{x},{y}]" for x, y in labels},
        graded=graded,
    )
    C.poset = P
    return C


# ---------------------------------------------------------------------------
# finite dimensional algebras and duality


class FDAlgebra:
    """Structure constants mult[(i, j)] = {k: c}; absent pairs multiply to 0."""

    def __init__(self, name, basis, mult, unit, poset=None, symbols=None, weight=None):
        self.name = name
        self.basis = tuple(basis)
        self.mult = {}
        for key, vec in mult.items():
            vec = {k: Fraction(c) for k, c in vec.items() if c}
            if vec:
                self.mult[key] = vec
        self.unit = {b: Fraction(c) for b, c in unit.items() if c}
        self.poset = poset
        self.symbols = dict(symbols or {})
        self.weight = weight
        self._index = {b: i for i, b in enumerate(self.basis)}
        fac = {}
        for (i, j), vec in self.mult.items():
            for k, c in vec.items():
                fac.setdefault(k, []).append((i, j, c))
        self.factorizations = fac

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return f"FDAlgebra({self.name!r}, dim={len(self)})"

    def index(self, b):
        return self._index[b]

    def symbol(self, b):
        return self.symbols.get(b, str(b))

    def multiply(self, u, v):
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.mult.get((i, j), {}).items():
                    _addto(out, k, a * b * c)
        return out

    def check_axioms(self):
        bad = []
        B = self.basis
        for i in B:
            for j in B:
                for k in B:
                    l = self.multiply(self.multiply({i: 1}, {j: 1}), {k: 1})
                    r = self.multiply({i: 1}, self.multiply({j: 1}, {k: 1}))
                    if l != r:
                        bad.append(f"associativity fails on ({i}, {j}, {k})")
            if self.multiply(self.unit, {i: 1}) != {i: 1} or self.multiply({i: 1}, self.unit) != {i: 1}:
                bad.append(f"unit law fails on {i}")
        return bad

    def verify(self):
        bad = self.check_axioms()
        if bad:
            raise VerificationFailed("; ".join(bad[:5]))
        return True


def dual_algebra(C):
    """Convolution algebra C*: the dual basis with transposed structure constants."""
    mult = {}
    for k in C.basis:
        for l, r, c in C.comult[k]:
            mult.setdefault((l, r), {})[k] = c
    A = FDAlgebra(
        f"{C.name}*",
        C.basis,
        mult,
        {b: v for b, v in C.counit.items() if v},
        poset=getattr(C, "poset", None),
        symbols=dict(C.symbols),
        weight=dict(C.weight),
    )
    A.degree = dict(C.degree)
    A.graded = C.graded
    return A


def dual_coalgebra(A, name=None):
    comult = {b: [] for b in A.basis}
    for (i, j), vec in A.mult.items():
        for k, c in vec.items():
            comult[k].append((i, j, c))
    degree = getattr(A, "degree", None)
    return GradedCoalgebra(
        name or f"{A.name}*",
        A.basis,
        comult,
        A.unit,
        degree=degree,
        weight=A.weight,
        symbols=A.symbols,
        graded=getattr(A, "graded", True),
    )


def incidence_algebra(P):
    """I(P) with basis e_xy (label (x, y)), e_xy e_zw = delta_yz e_xw."""
    A = dual_algebra(full_incidence_coalgebra(P))
    A.name = "I(P)"
    return A


# ---------------------------------------------------------------------------
# morphisms


class CoalgebraMorphism:
    """Linear map given on basis labels: matrix[src] = {tgt: coeff}."""

    def __init__(self, source, target, matrix, name="phi"):
        self.source = source
        self.target = target
        self.name = name
        self.matrix = {
            b: {t: Fraction(c) for t, c in matrix.get(b, {}).items() if c} for b in source.basis
        }

    def __call__(self, vec):
        out = {}
        for b, a in vec.items():
            for t, c in self.matrix[b].items():
                _addto(out, t, a * c)
        return out

    def check_laws(self):
        bad = []
        S, T = self.source, self.target
        for b in S.basis:
            lhs = {}
            for l, r, c in S.comult[b]:
                for tl, cl in self.matrix[l].items():
                    for tr, cr in self.matrix[r].items():
                        _addto(lhs, (tl, tr), c * cl * cr)
            if lhs != T.delta(self.matrix[b]):
                bad.append(f"{self.name} does not commute with Delta on {S.symbol(b)}")
            if T.epsilon(self.matrix[b]) != S.counit[b]:
                bad.append(f"{self.name} does not preserve the counit on {S.symbol(b)}")
        return bad

    def verify(self):
        bad = self.check_laws()
        if bad:
            raise VerificationFailed("; ".join(bad[:5]))
        return True

    def to_matrix(self):
        S, T = self.source, self.target
        cols = [{T.index(t): c for t, c in self.matrix[b].items()} for b in S.basis]
        return RationalMatrix(len(T), len(S), cols)

    def is_surjective(self):
        return rank(self.to_matrix()) == len(self.target)

    def compose(self, other):
        """self after other."""
        return CoalgebraMorphism(
            other.source,
            self.target,
            {b: self(other.matrix[b]) for b in other.source.basis},
            name=f"{self.name}.{other.name}",
        )

    def inverse(self):
        """Inverse linear map, computed blockwise on weight classes."""
        S, T = self.source, self.target
        if len(S) != len(T):
            raise VerificationFailed(f"{self.name} is not square")
        blocks = {}
        for b in S.basis:
            blocks.setdefault(S.weight[b], ([], []))[0].append(b)
        for t in T.basis:
            if T.weight[t] in blocks:
                blocks[T.weight[t]][1].append(t)
            else:
                blocks = None
                break
        if blocks is None or any(len(s) != len(t) for s, t in blocks.values()):
            blocks = {None: (list(S.basis), list(T.basis))}
        inv = {}
        for src, tgt in blocks.values():
            rows = [[self.matrix[s].get(t, 0) for s in src] for t in tgt]
            try:
                M = inverse(rows)
            except ZeroDivisionError:
                raise VerificationFailed(f"{self.name} is not invertible") from None
            for i, s in enumerate(src):
                for j, t in enumerate(tgt):
                    if M[i][j]:
                        inv.setdefault(t, {})[s] = M[i][j]
        return CoalgebraMorphism(T, S, inv, name=f"{self.name}^-1")


def theta(N):
    """Bin -> k[X], y_n -> X^n."""
    return CoalgebraMorphism(
        bin_coalgebra(N), polynomial_coalgebra(["X"], N), {n: {(n,): 1} for n in range(N + 1)}, "theta"
    ).checked()


def gamma(N):
    """Div -> Bin, x_n -> y_n / n!."""
    return CoalgebraMorphism(
        div_coalgebra(N),
        bin_coalgebra(N),
        {n: {n: Fraction(1, factorial(n))} for n in range(N + 1)},
        "gamma",
    ).checked()


def gamma_q(N, q):
    """Div -> Bin_q, x_n -> y_n / [n]_q!."""
    q = Fraction(q)
    return CoalgebraMorphism(
        div_coalgebra(N),
        binq_coalgebra(N, q),
        {n: {n: 1 / q_factorial(n, q)} for n in range(N + 1)},
        "gamma_q",
    ).checked()


def eta(m, D):
    """Dir -> k[X_1..X_m], z_n -> prod X_{o(p)}^{a_p} / a_p!.

    The factorials are what makes this a coalgebra map: in Dir the
    comultiplication of z_{p^a} has all coefficients 1, while in the
    polynomial coalgebra X^a splits with binomial coefficients.
    """
    src = dir_coalgebra(m, D)
    tgt = polynomial_coalgebra(m, D)
    mat = {}
    for n in src.basis:
        a = src.weight[n]
        c = Fraction(1)
        for e in a:
            c /= factorial(e)
        mat[n] = {a: c}
    return CoalgebraMorphism(src, tgt, mat, "eta").checked()


def _checked(self):
    self.verify()
    return self


CoalgebraMorphism.checked = _checked


# ---------------------------------------------------------------------------
# coextensions and the auxiliary coalgebra Z = C (+) D


class Coextension:
    """Surjective coalgebra map pi: total -> base, optionally with a splitting."""

    def __init__(self, total, base, projection, embedding=None, name="coextension"):
        self.total = total
        self.base = base
        self.projection = projection
        self.embedding = embedding
        self.name = name

    def verify(self):
        self.projection.verify()
        if not self.projection.is_surjective():
            raise VerificationFailed("projection is not surjective")
        if self.embedding is not None:
            self.embedding.verify()
            for b in self.base.basis:
                if self.projection(self.embedding.matrix[b]) != {b: 1}:
                    raise VerificationFailed("embedding does not split the projection")
        return True


def dirichlet_coextension(m, D):
    """pi_m: Dir_(m+1) -> Dir_(m), killing monomials that involve the (m+1)-st prime."""
    if m < 1:
        raise ValueError("need m >= 1")
    C = dir_coalgebra(m + 1, D)
    B = dir_coalgebra(m, D)
    p = first_primes(m + 1)[-1]
    proj = CoalgebraMorphism(C, B, {n: ({n: 1} if n % p else {}) for n in C.basis}, "pi")
    emb = CoalgebraMorphism(B, C, {n: {n: 1} for n in B.basis}, "iota")
    E = Coextension(C, B, proj, emb, name=f"pi_{m}")
    E.verify()
    return E


def identity_coextension(C):
    ident = CoalgebraMorphism(C, C, {b: {b: 1} for b in C.basis}, "id")
    return Coextension(C, C, ident, ident, name="identity")


def point_coextension(P):
    """Full incidence coalgebra of P onto the one-point coalgebra, [x,x] -> p."""
    C = full_incidence_coalgebra(P)
    point = GradedCoalgebra(
        "point", ["p"], {"p": [("p", "p", 1)]}, {"p": 1},
        weight={"p": (0,) * len(P)}, grouplike="p", symbols={"p": "p"},
    )
    proj = CoalgebraMorphism(C, point, {(x, y): ({"p": 1} if x == y else {}) for x, y in C.basis}, "pi")
    E = Coextension(C, point, proj, name="poset->point")
    E.verify()
    return E


def auxiliary_z(E):
    """Z = C (+) D with Delta(y) as in D and
    Delta(x) = x1 (x) x2 + pi(x1) (x) x2 + x1 (x) pi(x2), eps(x + y) = eps(y).

    Labels are ('C', c) and ('D', d).
    """
    C, D, pi = E.total, E.base, E.projection
    basis = [("C", c) for c in C.basis] + [("D", d) for d in D.basis]
    comult = {}
    for d in D.basis:
        comult[("D", d)] = [(("D", l), ("D", r), c) for l, r, c in D.comult[d]]
    for x in C.basis:
        terms = []
        for l, r, c in C.comult[x]:
            terms.append((("C", l), ("C", r), c))
            for pl, cl in pi.matrix[l].items():
                terms.append((("D", pl), ("C", r), c * cl))
            for pr, cr in pi.matrix[r].items():
                terms.append((("C", l), ("D", pr), c * cr))
        comult[("C", x)] = terms
    counit = {("D", d): D.counit[d] for d in D.basis}
    degree = {("C", c): C.degree[c] for c in C.basis}
    degree.update({("D", d): D.degree[d] for d in D.basis})
    weight = {("C", c): C.weight[c] for c in C.basis}
    width = len(next(iter(weight.values()))) if weight else 0
    # D is graded inside C's multidegree group (Dir_(m) sits in Dir_(m+1))
    weight.update({("D", d): D.weight[d] + (0,) * (width - len(D.weight[d])) for d in D.basis})
    symbols = {("C", c): f"{C.symbol(c)}" for c in C.basis}
    symbols.update({("D", d): f"{D.symbol(d)}'" for d in D.basis})
    Z = GradedCoalgebra(
        f"Z({E.name})",
        basis,
        comult,
        counit,
        degree=degree,
        weight=weight,
        exact_through=C.exact_through,
        symbols=symbols,
        graded=C.graded and D.graded,
    )
    return Z


def z_grouplike(E):
    """g_C + pi(g_C), the group-like of Z induced by the group-like of C."""
    g = E.total.grouplike
    if g is None:
        return None
    vec = {("C", g): Fraction(1)}
    for d, c in E.projection.matrix[g].items():
        vec[("D", d)] = c
    return vec


def z_inclusion_projection(E):
    """The linear maps i: D -> Z, y -> (0, y) and p: Z -> C, (x, y) -> x as matrices."""
    C, D = E.total, E.base
    nz = len(C) + len(D)
    i = RationalMatrix(nz, len(D), [{len(C) + j: 1} for j in range(len(D))])
    p = RationalMatrix(len(C), nz, [{j: 1} for j in range(len(C))] + [{} for _ in range(len(D))])
    return i, p


# ---------------------------------------------------------------------------
# change of basis


def change_basis(C, new_basis, grouplike=None, name=None):
    """Re-express C in the basis new_basis = [(label, {old: coeff}), ...].

    Returns the new coalgebra and a function mapping old-coordinate vectors to
    new coordinates.  New basis vectors must be weight homogeneous.
    """
    old = list(C.basis)
    labels = [lab for lab, _ in new_basis]
    n = len(old)
    if len(labels) != n:
        raise ValueError("new basis has the wrong size")
    V = [[vec.get(o, 0) for o in old] for _, vec in new_basis]  # rows: new in old coords
    # old_k = sum_j W[k][j] new_j with W = (V^T)^-1 transposed appropriately
    Vt = [[V[j][k] for j in range(n)] for k in range(n)]  # Vt[k][j] = coeff of old_k in new_j
    Winv = inverse(Vt)  # Winv[j][k]: new_j coordinate of old_k
    W = {old[k]: {labels[j]: Winv[j][k] for j in range(n) if Winv[j][k]} for k in range(n)}

    def express(vec):
        out = {}
        for b, a in vec.items():
            for t, c in W[b].items():
                _addto(out, t, a * c)
        return out

    comult, counit, degree, weight, symbols = {}, {}, {}, {}, {}
    for lab, vec in new_basis:
        ws = {C.weight[b] for b in vec if vec[b]}
        if len(ws) != 1:
            raise ValueError(f"new basis vector {lab!r} is not weight homogeneous")
        b0 = next(b for b in vec if vec[b])
        weight[lab] = C.weight[b0]
        degree[lab] = C.degree[b0]
        d = C.delta(vec)
        terms = []
        for (l, r), c in d.items():
            for tl, cl in W[l].items():
                for tr, cr in W[r].items():
                    terms.append((tl, tr, c * cl * cr))
        comult[lab] = terms
        counit[lab] = C.epsilon(vec)
        if len(vec) == 1 and vec[b0] == 1:
            symbols[lab] = C.symbol(b0)
        else:
            symbols[lab] = "+".join(
                (C.symbol(b) if c == 1 else f"{c}*{C.symbol(b)}") for b, c in vec.items()
            )
    new = GradedCoalgebra(
        name or C.name,
        labels,
        comult,
        counit,
        degree=degree,
        weight=weight,
        grouplike=grouplike,
        exact_through=C.exact_through,
        symbols=symbols,
        graded=C.graded,
    )
    return new, express


def normalize_at(C, g_vec, label="1"):
    """Basis {g} U {b - eps(b) g : b != b0} with g = g_vec a group-like.

    The result is normalized in the sense of `is_normalized`, which is what the
    reduced cobar complex needs.
    """
    b0 = next(b for b in C.basis if g_vec.get(b))
    new = [(label, dict(g_vec))]
    for b in C.basis:
        if b == b0:
            continue
        vec = {b: Fraction(1)}
        e = C.counit[b]
        if e:
            for gb, gc in g_vec.items():
                _addto(vec, gb, -e * gc)
        new.append((b, vec))
    return change_basis(C, new, grouplike=label)


# ---------------------------------------------------------------------------
# graph incidence coalgebra
#
# An isomorphism class is a sorted tuple of connected-component codes, each
# code (k, edges) minimal over all vertex orders respecting degree classes.
# Disjoint union of classes is then sorted concatenation.

GRAPH_CAP = 7
_canon_cache = {}


def _component_code(n, edges):
    deg = [0] * n
    for i, j in edges:
        deg[i] += 1
        deg[j] += 1
    groups = {}
    for v in range(n):
        groups.setdefault(deg[v], []).append(v)
    keys = sorted(groups, reverse=True)
    best = None
    for parts in product(*(permutations(groups[k]) for k in keys)):
        order = [v for part in parts for v in part]
        pos = {v: i for i, v in enumerate(order)}
        code = tuple(sorted(tuple(sorted((pos[i], pos[j]))) for i, j in edges))
        if best is None or code < best:
            best = code
    return (n, best)


def graph_class(n, edges):
    """Canonical class of the graph on range(n) with the given edge pairs."""
    key = (n, frozenset(tuple(sorted(e)) for e in edges))
    hit = _canon_cache.get(key)
    if hit is not None:
        return hit
    if n > GRAPH_CAP:
        raise SizeCapExceeded(f"graphs are capped at {GRAPH_CAP} vertices")
    adj = {v: set() for v in range(n)}
    for i, j in key[1]:
        adj[i].add(j)
        adj[j].add(i)
    seen, comps = set(), []
    for v in range(n):
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comp.sort()
        idx = {u: i for i, u in enumerate(comp)}
        cedges = [(idx[i], idx[j]) for i, j in key[1] if i in idx]
        comps.append(_component_code(len(comp), cedges))
    out = tuple(sorted(comps))
    _canon_cache[key] = out
    return out


def class_of(G):
    """Class of a SimpleGraph."""
    idx = {v: i for i, v in enumerate(G.vertices)}
    return graph_class(len(G.vertices), [tuple(idx[v] for v in e) for e in G.edges])


def realize(cls):
    """A concrete graph (n, edge list) in the class."""
    n, edges = 0, []
    for k, es in cls:
        edges.extend((i + n, j + n) for i, j in es)
        n += k
    return n, edges


def class_size(cls):
    return sum(k for k, _ in cls)


def class_union(*classes):
    return tuple(sorted(c for cls in classes for c in cls))


EMPTY = ()
K1 = ((1, ()),)


def complete(n):
    return graph_class(n, list(combinations(range(n), 2)))


def edgeless(n):
    return graph_class(n, [])


def induced_class(n, edges, subset):
    subset = sorted(subset)
    idx = {v: i for i, v in enumerate(subset)}
    return graph_class(len(subset), [(idx[i], idx[j]) for i, j in edges if i in idx and j in idx])


_delta_cache = {}


def graph_delta(cls):
    """Delta([G]) = sum over U of [G|U] (x) [G|(V-U)], as {(left, right): count}."""
    hit = _delta_cache.get(cls)
    if hit is not None:
        return hit
    n, edges = realize(cls)
    out = {}
    verts = range(n)
    for k in range(n + 1):
        for U in combinations(verts, k):
            rest = [v for v in verts if v not in U]
            key = (induced_class(n, edges, U), induced_class(n, edges, rest))
            out[key] = out.get(key, 0) + 1
    _delta_cache[cls] = out
    return out


def _class_symbol(cls):
    if not cls:
        return "[0]"
    parts = []
    for k, es in cls:
        if not es:
            parts.append("K1" if k == 1 else f"G{k}:-")
        elif len(es) == k * (k - 1) // 2:
            parts.append(f"K{k}")
        else:
            parts.append(f"G{k}:" + ",".join(f"{i}{j}" for i, j in es))
    merged = []
    for p in parts:
        if merged and merged[-1][0] == p:
            merged[-1][1] += 1
        else:
            merged.append([p, 1])
    return "[" + "+".join(p if c == 1 else f"{c}{p}" for p, c in merged) + "]"


def graph_coalgebra(graphs, vertex_cap=GRAPH_CAP):
    """Reduced incidence coalgebra on isomorphism classes of graphs.

    The basis is closed under induced subgraphs and under the partition sums
    G|B1 + ... + G|Bk, so that both Delta and the primitive projection stay
    inside it.  `graphs` may hold SimpleGraphs or classes.
    """
    start = []
    for G in graphs:
        cls = class_of(G) if isinstance(G, SimpleGraph) else tuple(G)
        if class_size(cls) > vertex_cap:
            raise SizeCapExceeded(f"graph with {class_size(cls)} vertices exceeds cap {vertex_cap}")
        start.append(cls)
    found = set()
    for cls in start:
        n, edges = realize(cls)
        for k in range(n + 1):
            for U in combinations(range(n), k):
                sub = induced_class(n, edges, U)
                if sub in found:
                    continue
                m, sedges = realize(sub)
                for blocks in set_partitions(m, cap=max(PARTITION_CAP, m)):
                    parts = [induced_class(m, sedges, [i - 1 for i in B]) for B in blocks]
                    found.add(class_union(*parts))
                found.add(sub)
    found.add(EMPTY)
    basis = sorted(found, key=lambda c: (class_size(c), c))
    comult = {
        cls: [(l, r, c) for (l, r), c in graph_delta(cls).items()] for cls in basis
    }
    return GradedCoalgebra(
        "graphs",
        basis,
        comult,
        {EMPTY: 1},
        degree={c: class_size(c) for c in basis},
        grouplike=EMPTY,
        symbols={c: _class_symbol(c) for c in basis},
    )


def lambda_primitive(cls):
    """sum over partitions pi of V: (-1)^(|pi|-1) (|pi|-1)! prod_B [G|B]."""
    n, edges = realize(cls)
    out = {}
    if n == 0:
        return out
    for blocks in set_partitions(n):
        k = len(blocks)
        c = (-1) ** (k - 1) * factorial(k - 1)
        prod_cls = class_union(*(induced_class(n, edges, [i - 1 for i in B]) for B in blocks))
        _addto(out, prod_cls, Fraction(c))
    return out


def graph_delta_vec(vec):
    out = {}
    for cls, a in vec.items():
        for key, c in graph_delta(cls).items():
            _addto(out, key, a * c)
    return out


def is_primitive(vec):
    expect = {}
    for cls, a in vec.items():
        _addto(expect, (cls, EMPTY), a)
        _addto(expect, (EMPTY, cls), a)
    return graph_delta_vec(vec) == expect


def all_graph_classes(n):
    """Every isomorphism class of simple graphs on exactly n vertices."""
    pairs = list(combinations(range(n), 2))
    out = set()
    for mask in range(1 << len(pairs)):
        out.add(graph_class(n, [p for i, p in enumerate(pairs) if mask >> i & 1]))
    return sorted(out)
