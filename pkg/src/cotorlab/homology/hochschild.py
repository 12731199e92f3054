"""Hochschild cochains of finite-dimensional algebras.

Full complex: C^n = Hom(A^{(x)n}, M), basis pairs (t, m) = "send the basis
tuple t to m, every other tuple to 0", with

    (df)(a_1..a_{n+1}) = a_1 f(a_2..) + sum_i (-1)^i f(..a_i a_{i+1}..) + (-1)^{n+1} f(..a_n) a_{n+1}.

Reduced complex, for an incidence algebra and coefficients split by the
vertex idempotents: cochains are pairs (x_0 < ... < x_n, m) with
m in e_{x_0} M e_{x_n}.  This is the complex relative to the separable
subalgebra spanned by the idempotents, and for M = A it is literally the
simplicial cochain complex of the order complex.
"""

import os
from fractions import Fraction
from itertools import product

from ..combinat import strict_chains
from ..errors import (
    BudgetExceeded,
    CoefficientNotAlgebra,
    NotIncidenceForm,
    UnknownVertex,
    VerificationFailed,
)
from ..linalg import RationalMatrix
from .complex import CochainComplex, cohomology_dims

DEFAULT_BUDGET = 200_000


def budget():
    """Cap on the total cochain dimension of a full Hochschild complex."""
    env = os.environ.get("COTORLAB_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _addto(d, key, c):
    v = d.get(key, 0) + c
    if v:
        d[key] = v
    else:
        d.pop(key, None)


class Bimodule:
    """left[(a, m)] = {m': c} and right[(m, a)] = {m': c} on basis labels.

    `product`, when present, makes M an algebra over A (needed for cup products).
    """

    def __init__(self, algebra, basis, left, right, name="M", product=None):
        self.algebra = algebra
        self.basis = tuple(basis)
        self.name = name
        self.left = {k: {m: Fraction(c) for m, c in v.items() if c} for k, v in left.items()}
        self.right = {k: {m: Fraction(c) for m, c in v.items() if c} for k, v in right.items()}
        self.left = {k: v for k, v in self.left.items() if v}
        self.right = {k: v for k, v in self.right.items() if v}
        self.product = product
        self._index = {m: i for i, m in enumerate(self.basis)}
        self.left_by_m, self.right_by_m = {}, {}
        for (a, m), vec in self.left.items():
            for m2, c in vec.items():
                self.left_by_m.setdefault(m, []).append((a, m2, c))
        for (m, a), vec in self.right.items():
            for m2, c in vec.items():
                self.right_by_m.setdefault(m, []).append((a, m2, c))

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return f"Bimodule({self.name!r}, dim={len(self)})"

    def index(self, m):
        return self._index[m]

    def act_left(self, a_vec, m_vec):
        out = {}
        for a, x in a_vec.items():
            for m, y in m_vec.items():
                for m2, c in self.left.get((a, m), {}).items():
                    _addto(out, m2, x * y * c)
        return out

    def act_right(self, m_vec, a_vec):
        out = {}
        for m, y in m_vec.items():
            for a, x in a_vec.items():
                for m2, c in self.right.get((m, a), {}).items():
                    _addto(out, m2, x * y * c)
        return out

    def check_axioms(self):
        A, bad = self.algebra, []
        for m in self.basis:
            mv = {m: 1}
            if self.act_left(A.unit, mv) != mv or self.act_right(mv, A.unit) != mv:
                bad.append(f"unit does not act as identity on {m!r}")
            for a in A.basis:
                for b in A.basis:
                    ab = A.multiply({a: 1}, {b: 1})
                    if self.act_left(ab, mv) != self.act_left({a: 1}, self.act_left({b: 1}, mv)):
                        bad.append(f"left action not associative on ({a!r}, {b!r}, {m!r})")
                    if self.act_right(mv, ab) != self.act_right(self.act_right(mv, {a: 1}), {b: 1}):
                        bad.append(f"right action not associative on ({m!r}, {a!r}, {b!r})")
                    l = self.act_right(self.act_left({a: 1}, mv), {b: 1})
                    r = self.act_left({a: 1}, self.act_right(mv, {b: 1}))
                    if l != r:
                        bad.append(f"actions do not commute on ({a!r}, {m!r}, {b!r})")
        return bad

    def verify(self):
        bad = self.check_axioms()
        if bad:
            raise VerificationFailed("; ".join(bad[:5]))
        return True

    def multiply(self, u, v):
        if self.product is None:
            raise CoefficientNotAlgebra(f"{self.name} carries no algebra structure")
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.product.get((i, j), {}).items():
                    _addto(out, k, a * b * c)
        return out


def regular_bimodule(A):
    return Bimodule(A, A.basis, dict(A.mult), dict(A.mult), name=A.name, product=A.mult)


def one_dimensional_bimodule(A, left_char, right_char, name="k"):
    """k with a.1 = chi(a), 1.a = psi(a) for algebra characters chi, psi."""
    left = {(a, "k"): {"k": c} for a, c in left_char.items()}
    right = {("k", a): {"k": c} for a, c in right_char.items()}
    prod = {("k", "k"): {"k": 1}} if dict(left_char) == dict(right_char) else None
    return Bimodule(A, ["k"], left, right, name=name, product=prod)


def vertex_character(A, x):
    """e_xx -> 1, every other basis element -> 0; an algebra map on incidence algebras."""
    if A.poset is None or x not in A.poset:
        raise UnknownVertex(f"{x!r} is not a vertex")
    return {(x, x): 1}


def simple_bimodule(A, a, b):
    """_a k_b: e_aa acts by 1 on the left, e_bb by 1 on the right."""
    return one_dimensional_bimodule(
        A, vertex_character(A, a), vertex_character(A, b), name=f"{a}k{b}"
    )


def bimodule_from_comodules(A, V, W):
    """V (x) W for A = C*: a right C-comodule V is a left A-module via
    f.v = sum f(c) v' over rho(v) = v' (x) c; a left comodule W is a right
    A-module via w.f = sum f(c) w' over rho(w) = c (x) w'."""
    basis = [(v, w) for v in V.basis for w in W.basis]
    left, right = {}, {}
    for v in V.basis:
        for c, v2, a in V.coaction[v]:
            for w in W.basis:
                _addto(left.setdefault((c, (v, w)), {}), (v2, w), a)
    for w in W.basis:
        for c, w2, a in W.coaction[w]:
            for v in V.basis:
                _addto(right.setdefault(((v, w), c), {}), (v, w2), a)
    return Bimodule(A, basis, left, right, name=f"{V.name}(x){W.name}")


# ---------------------------------------------------------------------------


class HochschildComplex:
    """Wraps a CochainComplex whose basis in degree n is a list of (t, m)."""

    def __init__(self, algebra, module, complex, reduced):
        self.algebra = algebra
        self.module = module
        self.complex = complex
        self.reduced = reduced

    @property
    def n_max(self):
        return len(self.complex.d) - 1

    def dims(self):
        return cohomology_dims(self.complex, self.n_max)

    def cochain_dims(self):
        return list(self.complex.dims)

    def vector(self, n, values):
        idx = self.complex.index[n]
        return {idx[k]: Fraction(a) for k, a in values.items() if a}

    def values(self, n, vec):
        B = self.complex.bases[n]
        return {B[i]: a for i, a in vec.items()}

    def d(self, n, values):
        return self.values(n + 1, self.complex.apply(n, self.vector(n, values)))

    def is_cocycle(self, n, values):
        return not self.complex.apply(n, self.vector(n, values))

    def is_coboundary(self, n, values):
        return self.complex.bounding_cochain(n, self.vector(n, values)) is not None


def _full_differential(A, M, src, tgt_index, n):
    fac = A.factorizations
    sign_last = -1 if (n + 1) % 2 else 1
    cols = []
    for t, m in src:
        col = {}
        for a, m2, c in M.left_by_m.get(m, ()):
            j = tgt_index[((a,) + t, m2)]
            col[j] = col.get(j, 0) + c
        for i in range(n):
            sign = 1 if i % 2 else -1  # (-1)^(i+1)
            for x, y, c in fac.get(t[i], ()):
                j = tgt_index[(t[:i] + (x, y) + t[i + 1 :], m)]
                col[j] = col.get(j, 0) + sign * c
        for a, m2, c in M.right_by_m.get(m, ()):
            j = tgt_index[(t + (a,), m2)]
            col[j] = col.get(j, 0) + sign_last * c
        cols.append({j: v for j, v in col.items() if v})
    return RationalMatrix(len(tgt_index), len(src), cols)


def hochschild_complex(A, M, n_max, max_size=None):
    """Full bar-type complex through C^{n_max + 1}."""
    cap = budget() if max_size is None else max_size
    dimA, dimM = len(A), len(M)
    total = sum(dimA**n * dimM for n in range(n_max + 2))
    if total > cap:
        raise BudgetExceeded(f"full Hochschild complex needs {total} cochains > budget {cap}")
    bases = []
    for n in range(n_max + 2):
        bases.append([(t, m) for t in product(A.basis, repeat=n) for m in M.basis])
    index = [{b: i for i, b in enumerate(B)} for B in bases]
    diffs = [_full_differential(A, M, bases[n], index[n + 1], n) for n in range(n_max + 1)]
    X = CochainComplex([len(B) for B in bases], diffs, bases=bases, name="HH full", complete=False)
    return HochschildComplex(A, M, X, reduced=False)


def _vertex_grading(A, M):
    """(left vertex, right vertex) of every basis element of M."""
    P = A.poset
    lv, rv = {}, {}
    for m in M.basis:
        for side, table, store in (("left", M.left, lv), ("right", M.right, rv)):
            hits = []
            for x in P:
                key = ((x, x), m) if side == "left" else (m, (x, x))
                img = table.get(key, {})
                if img == {m: 1}:
                    hits.append(x)
                elif img:
                    raise NotIncidenceForm(f"{m!r} is not an eigenvector of e_{x}{x}")
            if len(hits) != 1:
                raise NotIncidenceForm(f"{m!r} is not supported at a single vertex on the {side}")
            store[m] = hits[0]
    return lv, rv


def hochschild_reduced(A, M, n_max):
    """Complex relative to the vertex idempotents; needs A.poset."""
    P = A.poset
    if P is None:
        raise NotIncidenceForm("algebra carries no poset; use hochschild_complex")
    lv, rv = _vertex_grading(A, M)
    by_ends = {}
    for m in M.basis:
        by_ends.setdefault((lv[m], rv[m]), []).append(m)
    bases = []
    for n in range(n_max + 2):
        bases.append(
            [(ch, m) for ch in strict_chains(P, n) for m in by_ends.get((ch[0], ch[-1]), ())]
        )
    index = [{b: i for i, b in enumerate(B)} for B in bases]
    diffs = []
    for n in range(n_max + 1):
        tgt = index[n + 1]
        last = -1 if (n + 1) % 2 else 1
        cols = []
        for ch, m in bases[n]:
            col = {}
            x0, xn = ch[0], ch[-1]
            for y in P.down(x0):
                if y == x0:
                    continue
                for m2, c in M.left.get(((y, x0), m), {}).items():
                    j = tgt[((y,) + ch, m2)]
                    col[j] = col.get(j, 0) + c
            for i in range(1, n + 1):
                sign = -1 if i % 2 else 1
                lo, hi = ch[i - 1], ch[i]
                for z in P.interval_members(lo, hi):
                    if z != lo and z != hi:
                        j = tgt[(ch[:i] + (z,) + ch[i:], m)]
                        col[j] = col.get(j, 0) + sign
            for y in P.up(xn):
                if y == xn:
                    continue
                for m2, c in M.right.get((m, (xn, y)), {}).items():
                    j = tgt[(ch + (y,), m2)]
                    col[j] = col.get(j, 0) + last * c
            cols.append({j: v for j, v in col.items() if v})
        diffs.append(RationalMatrix(len(bases[n + 1]), len(bases[n]), cols))
    X = CochainComplex([len(B) for B in bases], diffs, bases=bases, name="HH reduced", complete=False)
    return HochschildComplex(A, M, X, reduced=True)


def hh_dims(A, M, n_max, method="auto"):
    """dim HH^0..HH^n_max; `auto` uses the reduced complex when A is an incidence algebra."""
    if method == "auto":
        method = "reduced" if A.poset is not None else "full"
    if method == "reduced":
        return hochschild_reduced(A, M, n_max).dims()
    return hochschild_complex(A, M, n_max).dims()


def ext_dims(A, a, b, n_max, method="auto"):
    """Ext^n(k_a, k_b) as HH^n(A, _a k_b)."""
    if A.poset is None:
        raise NotIncidenceForm("ext_dims needs an incidence algebra")
    for v in (a, b):
        if v not in A.poset:
            raise UnknownVertex(f"{v!r} is not a vertex")
    return hh_dims(A, simple_bimodule(A, a, b), n_max, method)


# ---------------------------------------------------------------------------


class HochschildCochain:
    """A cochain of a full Hochschild complex given by its values {(t, m): c}."""

    def __init__(self, H, degree, values):
        if H.reduced:
            raise ValueError("cup products are defined on the full complex")
        self.H = H
        self.degree = degree
        self.values = {k: Fraction(c) for k, c in values.items() if c}

    def __repr__(self):
        return f"HochschildCochain(deg={self.degree}, terms={len(self.values)})"

    def evaluate(self, t):
        return {m: c for (s, m), c in self.values.items() if s == t}

    def d(self):
        return HochschildCochain(self.H, self.degree + 1, self.H.d(self.degree, self.values))

    def is_cocycle(self):
        return self.H.is_cocycle(self.degree, self.values)


def gerstenhaber_cup(f, g):
    """(f u g)(a_1..a_{p+q}) = f(a_1..a_p) g(a_{p+1}..a_{p+q}) in the coefficient algebra."""
    H = f.H
    M = H.module
    if M.product is None:
        raise CoefficientNotAlgebra(f"{M.name} is not an algebra over {H.algebra.name}")
    n = f.degree + g.degree
    if n > H.n_max + 1:
        raise ValueError(f"cup lands in degree {n} beyond the complex")
    out = {}
    for (t1, m1), a in f.values.items():
        for (t2, m2), b in g.values.items():
            for m, c in M.multiply({m1: 1}, {m2: 1}).items():
                _addto(out, (t1 + t2, m), a * b * c)
    return HochschildCochain(H, n, out)


def unit_cochain(H):
    """The degree-0 cochain picking out the unit of the coefficient algebra."""
    M = H.module
    if M.product is None:
        raise CoefficientNotAlgebra(f"{M.name} is not an algebra")
    if M.basis == ("k",):
        return HochschildCochain(H, 0, {((), "k"): 1})
    return HochschildCochain(H, 0, {((), m): c for m, c in H.algebra.unit.items()})
