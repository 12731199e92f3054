"""Comodules, the cobar complex and Cotor.

The cobar complex of a right comodule V and a left comodule W has cochains
v (x) c_1 (x) ... (x) c_n (x) w and differential

    d = rho_V (x) id  +  sum_i (-1)^i id (x) Delta_i  +  (-1)^(n+1) id (x) rho_W.

If the coalgebra is normalized (a group-like basis element g, every other
basis element killed by the counit) the reduced complex over C-bar = span of
the other basis elements is used: terms with a new tensor factor equal to g
are dropped.  Otherwise the unreduced complex over all of C is built.

Comultiplication preserves multidegree, so the complex is a direct sum of
blocks, one per multidegree; each block is a separate CochainComplex.
"""

from fractions import Fraction

from ..errors import CapTooSmall, DegreeOverflow, NoGrouplike, VerificationFailed
from ..linalg import RationalMatrix, rank
from .complex import CochainComplex


def _addto(d, key, c):
    v = d.get(key, 0) + c
    if v:
        d[key] = v
    else:
        d.pop(key, None)


class Comodule:
    """coaction[v] = [(c, v', coeff), ...] meaning sum coeff * c (x) v' (left)
    or coeff * v' (x) c (right)."""

    def __init__(self, coalgebra, basis, coaction, side, degree=None, weight=None, name="V"):
        if side not in ("left", "right"):
            raise ValueError("side is 'left' or 'right'")
        C = coalgebra
        self.coalgebra = C
        self.basis = tuple(basis)
        self.side = side
        self.name = name
        self.coaction = {}
        for v in self.basis:
            acc = {}
            for c, w, a in coaction.get(v, ()):
                _addto(acc, (c, w), Fraction(a))
            self.coaction[v] = tuple((c, w, a) for (c, w), a in acc.items())
        self.degree = {v: (degree or {}).get(v, 0) for v in self.basis}
        width = len(next(iter(C.weight.values()))) if C.weight else 1
        self.weight = {v: tuple((weight or {}).get(v, (0,) * width)) for v in self.basis}

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return f"Comodule({self.name!r}, {self.side}, dim={len(self)})"

    def check_axioms(self):
        C, bad = self.coalgebra, []
        for v in self.basis:
            unit = {}
            for c, w, a in self.coaction[v]:
                _addto(unit, w, a * C.counit[c])
            if unit != {v: 1}:
                bad.append(f"counit law fails on {v!r}")
            lhs, rhs = {}, {}
            for c, w, a in self.coaction[v]:
                for l, r, b in C.comult[c]:
                    key = (l, r, w) if self.side == "left" else (w, l, r)
                    _addto(lhs, key, a * b)
                for c2, w2, b in self.coaction[w]:
                    key = (c, c2, w2) if self.side == "left" else (w2, c2, c)
                    _addto(rhs, key, a * b)
            if lhs != rhs:
                bad.append(f"coassociativity fails on {v!r}")
        return bad

    def verify(self):
        bad = self.check_axioms()
        if bad:
            raise VerificationFailed("; ".join(bad[:5]))
        return True


def _is_grouplike(C, vec):
    if C.epsilon(vec) != 1:
        return False
    expect = {}
    for l, a in vec.items():
        for r, b in vec.items():
            _addto(expect, (l, r), a * b)
    return C.delta(vec) == expect


def trivial_comodule(C, side, element=None, name="k"):
    """k with coaction 1 -> g (x) 1 (or 1 (x) g) through a group-like g.

    `element` is a basis label or a sparse vector; default C.grouplike.
    """
    if element is None:
        element = C.grouplike
        if element is None:
            raise NoGrouplike(f"{C.name} has no distinguished group-like")
    vec = element if isinstance(element, dict) else {element: Fraction(1)}
    if not _is_grouplike(C, vec):
        raise NoGrouplike(f"{element!r} is not group-like in {C.name}")
    return Comodule(C, ["k"], {"k": [(c, "k", a) for c, a in vec.items()]}, side, name=name)


def incidence_point_comodule(C, x, side):
    """k_x over a full incidence coalgebra: 1 -> [x,x] (x) 1 (or 1 (x) [x,x])."""
    return Comodule(C, [x], {x: [((x, x), x, 1)]}, side, name=f"k_{x}")


def transport_comodule(V, C_new, express):
    """Re-express a comodule over a change of basis of its coalgebra."""
    coaction = {}
    for v in V.basis:
        terms = []
        for c, w, a in V.coaction[v]:
            for c2, b in express({c: 1}).items():
                terms.append((c2, w, a * b))
        coaction[v] = terms
    return Comodule(C_new, V.basis, coaction, V.side, V.degree, V.weight, V.name)


def extend_comodule_to_z(V, E, Z):
    """A C-comodule as a Z-comodule: v -> v (x) (c, pi(c)), summed over the coaction."""
    pi = E.projection
    coaction = {}
    for v in V.basis:
        terms = []
        for c, w, a in V.coaction[v]:
            terms.append((("C", c), w, a))
            for d, b in pi.matrix[c].items():
                terms.append((("D", d), w, a * b))
        coaction[v] = terms
    return Comodule(Z, V.basis, coaction, V.side, V.degree, V.weight, V.name)


# ---------------------------------------------------------------------------


def _add_weights(*ws):
    return tuple(map(sum, zip(*ws)))


class CobarComplex:
    def __init__(self, C, V, W, n_max, degree_cap=None, reduced=None):
        if V.side != "right" or W.side != "left":
            raise ValueError("need V a right and W a left comodule")
        if reduced is None:
            reduced = C.is_normalized()
        elif reduced and not C.is_normalized():
            raise NoGrouplike(f"{C.name} has no normalized group-like; reduced cobar unavailable")
        if degree_cap is not None:
            for M in (V, W):
                top = max(M.degree.values(), default=0)
                if top > degree_cap:
                    raise CapTooSmall(f"comodule {M.name} has degree {top} > cap {degree_cap}")
        self.coalgebra, self.V, self.W = C, V, W
        self.n_max = n_max
        self.degree_cap = degree_cap
        self.reduced = reduced
        g = C.grouplike if reduced else None
        self.factors = [b for b in C.basis if b != g] if reduced else list(C.basis)
        self._build()

    # basis enumeration, by multidegree block
    def _tensors(self, n):
        C, cap = self.coalgebra, self.degree_cap
        out = []
        for v in self.V.basis:
            for w in self.W.basis:
                base = self.V.degree[v] + self.W.degree[w]
                if cap is not None and base > cap:
                    continue
                stack = [((), base)]
                while stack:
                    cs, deg = stack.pop()
                    if len(cs) == n:
                        out.append((v, cs, w))
                        continue
                    for c in self.factors:
                        d = deg + C.degree[c]
                        if cap is None or d <= cap:
                            stack.append((cs + (c,), d))
        return out

    def weight_of(self, t):
        v, cs, w = t
        C = self.coalgebra
        return _add_weights(self.V.weight[v], self.W.weight[w], *(C.weight[c] for c in cs))

    def degree_of(self, t):
        v, cs, w = t
        return self.V.degree[v] + self.W.degree[w] + sum(self.coalgebra.degree[c] for c in cs)

    def _build(self):
        top = self.n_max + 1
        by_block = {}
        for n in range(top + 1):
            ts = self._tensors(n)
            ts.sort(key=repr)
            for t in ts:
                by_block.setdefault(self.weight_of(t), [[] for _ in range(top + 1)])[n].append(t)
        self.blocks = {}
        self.block_degree = {}
        for wt in sorted(by_block, key=repr):
            bases = by_block[wt]
            index = [{t: i for i, t in enumerate(B)} for B in bases]
            diffs = [self._differential(n, bases[n], index[n + 1]) for n in range(top)]
            X = CochainComplex(
                [len(B) for B in bases], diffs, bases=bases, name=f"cobar block {wt}", complete=False
            )
            self.blocks[wt] = X
            first = next(t for B in bases for t in B)
            self.block_degree[wt] = self.degree_of(first) if self.coalgebra.graded else None

    def d_tensor(self, t):
        """Sparse image {tensor: coeff} of one basis tensor."""
        C, reduced = self.coalgebra, self.reduced
        g = C.grouplike
        v, cs, w = t
        n = len(cs)
        out = {}
        for c, v2, a in self.V.coaction[v]:
            if not (reduced and c == g):
                _addto(out, (v2, (c,) + cs, w), a)
        for i in range(1, n + 1):
            sign = -1 if i % 2 else 1
            for l, r, a in C.comult[cs[i - 1]]:
                if reduced and (l == g or r == g):
                    continue
                _addto(out, (v, cs[: i - 1] + (l, r) + cs[i:], w), sign * a)
        sign = -1 if (n + 1) % 2 else 1
        for c, w2, a in self.W.coaction[w]:
            if not (reduced and c == g):
                _addto(out, (v, cs + (c,), w2), sign * a)
        return out

    def _differential(self, n, src, tgt_index):
        cols = []
        for t in src:
            col = {}
            for s, a in self.d_tensor(t).items():
                j = tgt_index.get(s)
                if j is None:
                    raise CapTooSmall(
                        f"differential leaves the truncation at {s!r}; comultiplication is not graded"
                    )
                col[j] = a
            cols.append(col)
        return RationalMatrix(len(tgt_index), len(src), cols)

    def dims(self):
        return [sum(X.betti(n) for X in self.blocks.values()) for n in range(self.n_max + 1)]

    def dims_by_degree(self):
        """{internal degree: [dim H^0..H^n_max]} over blocks of that degree."""
        out = {}
        for wt, X in self.blocks.items():
            deg = self.block_degree[wt]
            row = out.setdefault(deg, [0] * (self.n_max + 1))
            for n in range(self.n_max + 1):
                row[n] += X.betti(n)
        return dict(sorted(out.items(), key=lambda kv: (kv[0] is None, kv[0])))

    def cochain_dims(self):
        return [sum(X.dims[n] for X in self.blocks.values()) for n in range(self.n_max + 2)]

    # cochain-level helpers -------------------------------------------------
    def _split(self, vec, n):
        parts = {}
        for t, a in vec.items():
            wt = self.weight_of(t)
            X = self.blocks.get(wt)
            if X is None or t not in X.index[n]:
                raise DegreeOverflow(f"tensor {t!r} is outside the truncated complex")
            parts.setdefault(wt, {})[X.index[n][t]] = a
        return parts

    def d(self, vec, n):
        out = {}
        for wt, part in self._split(vec, n).items():
            X = self.blocks[wt]
            for j, a in X.apply(n, part).items():
                out[X.bases[n + 1][j]] = a
        return out

    def bounding_cochain(self, vec, n):
        """Some x with d x = vec, or None if vec is not a coboundary."""
        out = {}
        for wt, part in self._split(vec, n).items():
            X = self.blocks[wt]
            x = X.bounding_cochain(n, part)
            if x is None:
                return None
            for j, a in x.items():
                out[X.bases[n - 1][j]] = a
        return out

    def cohomology_representatives(self, n):
        """Cocycles whose classes form a basis of H^n, one block at a time."""
        reps = []
        for X in self.blocks.values():
            if X.betti(n) == 0:
                continue
            image = [X.differential(n - 1).columns[j] for j in range(X.dims[n - 1])] if n else []
            base = rank(RationalMatrix(X.dims[n], len(image), image)) if image else 0
            chosen = list(image)
            for z in X.cocycles(n):
                trial = chosen + [z]
                r = rank(RationalMatrix(X.dims[n], len(trial), trial))
                if r > base:
                    chosen, base = trial, r
                    reps.append({X.bases[n][i]: a for i, a in z.items()})
        return reps


def cobar_complex(C, V=None, W=None, n_max=4, degree_cap=None, reduced=None):
    """Cobar complex; V, W default to the trivial comodules through the group-like."""
    if V is None:
        V = trivial_comodule(C, "right")
    if W is None:
        W = trivial_comodule(C, "left")
    return CobarComplex(C, V, W, n_max, degree_cap, reduced)


def cotor(C, V=None, W=None, n_max=4, degree_cap=None, reduced=None):
    """[dim Cotor^0, ..., dim Cotor^n_max]."""
    return cobar_complex(C, V, W, n_max, degree_cap, reduced).dims()


def cotor_by_degree(C, V=None, W=None, n_max=4, degree_cap=None, reduced=None):
    return cobar_complex(C, V, W, n_max, degree_cap, reduced).dims_by_degree()


# ---------------------------------------------------------------------------
# cup product on trivial coefficients


class Cocycle:
    def __init__(self, complex, degree, vec, check=True):
        self.complex = complex
        self.degree = degree
        self.vec = {t: Fraction(a) for t, a in vec.items() if a}
        if check and degree <= complex.n_max and complex.d(self.vec, degree):
            raise VerificationFailed("not a cocycle")

    def __repr__(self):
        return f"Cocycle(deg={self.degree}, terms={len(self.vec)})"

    def __add__(self, other):
        out = dict(self.vec)
        for t, a in other.vec.items():
            _addto(out, t, a)
        return Cocycle(self.complex, self.degree, out, check=False)

    def __neg__(self):
        return Cocycle(self.complex, self.degree, {t: -a for t, a in self.vec.items()}, check=False)

    def __sub__(self, other):
        return self + (-other)

    def is_coboundary(self):
        return self.complex.bounding_cochain(self.vec, self.degree) is not None


def unit_cocycle(K):
    return Cocycle(K, 0, {("k", (), "k"): 1})


def cup(p, q):
    """Concatenation product of cobar cocycles with trivial coefficients."""
    K = p.complex
    if q.complex is not K:
        raise ValueError("cocycles live in different complexes")
    if len(K.V) != 1 or len(K.W) != 1:
        raise ValueError("cup product needs one-dimensional trivial coefficients")
    n = p.degree + q.degree
    if n > K.n_max:
        raise DegreeOverflow(f"cup lands in degree {n} > n_max = {K.n_max}")
    out = {}
    for (v, cs, _), a in p.vec.items():
        for (_, ds, w), b in q.vec.items():
            _addto(out, (v, cs + ds, w), a * b)
    if K.degree_cap is not None:
        for t in out:
            if K.degree_of(t) > K.degree_cap:
                raise DegreeOverflow(f"cup leaves the degree cap {K.degree_cap}")
    return Cocycle(K, n, out)
