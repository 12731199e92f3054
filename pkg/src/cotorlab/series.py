"""Reduced incidence algebras: truncated series of four kinds, and the
incidence algebra of a finite poset together with its reductions.

Series of the first three kinds are indexed 0..bound, Dirichlet series 1..bound.
Exponential series store the incidence-algebra values f(n), not f(n)/n!.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .combinat import ISO_CAP, check_q, enumerate_intervals, poset_isomorphic, q_binomial
from .errors import (
    BoundMismatch,
    KindMismatch,
    NotCompatible,
    NotInvertible,
    ParentMismatch,
    QMismatch,
    SizeCapExceeded,
    UnknownType,
)

KINDS = ("ordinary", "exponential", "eulerian", "dirichlet")


@dataclass(frozen=True)
class TruncatedSeries:
    kind: str
    coeffs: tuple
    q: Fraction = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown series kind {self.kind!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if self.kind == "eulerian":
            if self.q is None:
                raise ValueError("eulerian series need q")
            object.__setattr__(self, "q", Fraction(self.q))
            check_q(self.bound, self.q)
        elif self.q is not None:
            raise ValueError(f"{self.kind} series take no q")
        if self.bound < (1 if self.kind == "dirichlet" else 0):
            raise ValueError("empty series")

    @property
    def bound(self):
        return len(self.coeffs) if self.kind == "dirichlet" else len(self.coeffs) - 1

    @property
    def offset(self):
        return 1 if self.kind == "dirichlet" else 0

    def __getitem__(self, n):
        return self.coeffs[n - self.offset]

    def indices(self):
        return range(self.offset, self.bound + 1)

    def __add__(self, other):
        _compatible(self, other)
        return TruncatedSeries(self.kind, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.q)

    def __mul__(self, other):
        return convolve(self, other)

    def scale(self, c):
        return TruncatedSeries(self.kind, [c * a for a in self.coeffs], self.q)

    def exponential_display(self):
        """f(n)/n!, the coefficients of the exponential generating function."""
        if self.kind != "exponential":
            raise KindMismatch("only exponential series have this display")
        return tuple(c / factorial(n) for n, c in enumerate(self.coeffs))


def make_series(kind, coeffs, q=None):
    return TruncatedSeries(kind, tuple(coeffs), None if q is None else Fraction(q))


def identity_series(kind, bound, q=None):
    if bound < 1:
        raise ValueError("bound must be at least 1")
    n = bound if kind == "dirichlet" else bound + 1
    return make_series(kind, [1] + [0] * (n - 1), q)


def zeta_series(kind, bound, q=None):
    n = bound if kind == "dirichlet" else bound + 1
    return make_series(kind, [1] * n, q)


def _compatible(f, g):
    if f.kind != g.kind:
        raise KindMismatch(f"{f.kind} vs {g.kind}")
    if f.bound != g.bound:
        raise BoundMismatch(f"bound {f.bound} vs {g.bound}")
    if f.q != g.q:
        raise QMismatch(f"q = {f.q} vs {g.q}")


def _weight(kind, n, r, q):
    if kind == "ordinary":
        return 1
    if kind == "exponential":
        return comb(n, r)
    return q_binomial(n, r, q)


def convolve(f, g):
    _compatible(f, g)
    N = f.bound
    if f.kind == "dirichlet":
        out = [Fraction(0)] * N
        for i in range(1, N + 1):
            fi = f[i]
            if fi:
                for j in range(1, N // i + 1):
                    out[i * j - 1] += fi * g[j]
        return TruncatedSeries(f.kind, tuple(out))
    out = []
    for n in range(N + 1):
        out.append(sum((_weight(f.kind, n, r, f.q) * f[r] * g[n - r] for r in range(n + 1)), Fraction(0)))
    return TruncatedSeries(f.kind, tuple(out), f.q)


def invert(f):
    """Convolution inverse by forward substitution on the triangular system."""
    lead = f[f.offset]
    if lead == 0:
        raise NotInvertible("leading coefficient is zero")
    N = f.bound
    if f.kind == "dirichlet":
        g = [Fraction(0)] * (N + 1)
        g[1] = 1 / lead
        for n in range(2, N + 1):
            s = Fraction(0)
            for d in range(2, n + 1):
                if n % d == 0:
                    s += f[d] * g[n // d]
            g[n] = -s / lead
        return TruncatedSeries(f.kind, tuple(g[1:]))
    g = [1 / lead]
    for n in range(1, N + 1):
        s = sum((_weight(f.kind, n, r, f.q) * f[r] * g[n - r] for r in range(1, n + 1)), Fraction(0))
        g.append(-s / lead)
    return TruncatedSeries(f.kind, tuple(g), f.q)


def parse_series(text):
    """Parse `kind=dirichlet bound=8 coeffs=1,1,1 q=p/r` (any order)."""
    fields = {}
    for tok in text.split():
        key, sep, val = tok.partition("=")
        if not sep:
            raise ValueError(f"malformed series token {tok!r}")
        fields[key] = val
    kind = fields.get("kind")
    if kind not in KINDS:
        raise ValueError(f"unknown series kind {kind!r}")
    coeffs = [Fraction(c) for c in fields.get("coeffs", "").split(",") if c]
    q = Fraction(fields["q"]) if "q" in fields else None
    s = make_series(kind, coeffs, q)
    if "bound" in fields and int(fields["bound"]) != s.bound:
        raise BoundMismatch(f"bound={fields['bound']} but {len(coeffs)} coefficients given")
    return s


def format_series(s):
    parts = [f"kind={s.kind}", f"bound={s.bound}"]
    if s.q is not None:
        parts.append(f"q={s.q}")
    parts.append("coeffs=" + ",".join(str(c) for c in s.coeffs))
    return " ".join(parts)


# ---------------------------------------------------------------------------
# incidence algebra of a finite poset


class IncidenceFunction:
    """f : {(x, y) : x <= y} -> Q.  Missing comparable pairs read as 0."""

    def __init__(self, parent, values=None):
        self.parent = parent
        self.values = {}
        for (x, y), v in (values or {}).items():
            if not parent.le(x, y):
                raise ValueError(f"{x!r} is not below {y!r}")
            v = Fraction(v)
            if v:
                self.values[(x, y)] = v

    def __call__(self, x, y):
        return self.values.get((x, y), Fraction(0))

    def __eq__(self, other):
        return (
            isinstance(other, IncidenceFunction)
            and self.parent == other.parent
            and self.values == other.values
        )

    def __repr__(self):
        return f"IncidenceFunction({self.values!r})"

    def __mul__(self, other):
        return incidence_convolve(self, other)

    @classmethod
    def delta(cls, P):
        return cls(P, {(x, x): 1 for x in P})

    @classmethod
    def zeta(cls, P):
        return cls(P, {p: 1 for p in P.leq})


def incidence_convolve(f, g):
    P = f.parent
    if g.parent is not P and g.parent != P:
        raise ParentMismatch("functions live on different posets")
    out = {}
    for (x, z), a in f.values.items():
        for y in P.up(z):
            b = g(z, y)
            if b:
                out[(x, y)] = out.get((x, y), 0) + a * b
    return IncidenceFunction(P, out)


def mobius(P):
    """mu with zeta * mu = delta, solved interval by interval by size."""
    mu = {}
    pairs = sorted(P.leq, key=lambda p: len(P.interval_members(*p)))
    for x, y in pairs:
        if x == y:
            mu[(x, y)] = Fraction(1)
        else:
            mu[(x, y)] = -sum(mu[(z, y)] for z in P.interval_members(x, y) if z != x)
    return IncidenceFunction(P, mu)


# ---------------------------------------------------------------------------
# reduced incidence algebras


class ReducedIncidenceTable:
    """Interval types of a poset under an equivalence, with bracket counts.

    `types` lists one representative interval per class; `classes` maps every
    comparable pair to its class index; `brackets[a]` is the bracket table
    read off the representative of type a.
    """

    def __init__(self, parent, types, classes, members):
        self.parent = parent
        self.types = types
        self.classes = classes
        self.members = members  # type index -> list of (x, y)
        self.brackets = [self._bracket_counts(iv.lo, iv.hi) for iv in types]

    def _bracket_counts(self, x, y):
        P, cls = self.parent, self.classes
        counts = {}
        for z in P.interval_members(x, y):
            key = (cls[(x, z)], cls[(z, y)])
            counts[key] = counts.get(key, 0) + 1
        return counts

    def type_of(self, x, y):
        return self.classes[(x, y)]

    def __len__(self):
        return len(self.types)


def interval_types(P, classifier=None, cap=ISO_CAP):
    """Partition the intervals of P into types.

    With no classifier the equivalence is interval isomorphism.  A classifier
    maps an Interval to a hashable key and defines the equivalence directly.
    """
    ivs = enumerate_intervals(P)
    types, classes, members = [], {}, []
    if classifier is None:
        for iv in ivs:
            if len(iv) > cap:
                raise SizeCapExceeded(f"interval of size {len(iv)} exceeds cap {cap}")
        buckets = {}
        for iv in ivs:
            sub = iv.poset()
            inv = (len(sub), len(sub.leq), sub.height())
            for idx in buckets.get(inv, []):
                if poset_isomorphic(types[idx].poset(), sub, cap):
                    break
            else:
                idx = len(types)
                types.append(iv)
                members.append([])
                buckets.setdefault(inv, []).append(idx)
            classes[(iv.lo, iv.hi)] = idx
            members[idx].append((iv.lo, iv.hi))
    else:
        keyed = {}
        for iv in ivs:
            key = classifier(iv)
            if key not in keyed:
                keyed[key] = len(types)
                types.append(iv)
                members.append([])
            idx = keyed[key]
            classes[(iv.lo, iv.hi)] = idx
            members[idx].append((iv.lo, iv.hi))
    return ReducedIncidenceTable(P, types, classes, members)


def bracket_coefficient(T, alpha, beta, gamma):
    n = len(T.types)
    for t in (alpha, beta, gamma):
        if not (isinstance(t, int) and 0 <= t < n):
            raise UnknownType(f"no type {t!r}")
    return T.brackets[alpha].get((beta, gamma), 0)


def check_order_compatible(T):
    """(True, None) if brackets agree over all representatives of every type,
    else (False, counterexample)."""
    for a, pairs in enumerate(T.members):
        ref = T.brackets[a]
        for x, y in pairs:
            got = T._bracket_counts(x, y)
            if got != ref:
                return False, {
                    "type": a,
                    "representative": (T.types[a].lo, T.types[a].hi),
                    "other": (x, y),
                    "brackets": (ref, got),
                }
    return True, None


def reduced_convolve(T, f, g, checked=None):
    """(fg)(a) = sum over (b, c) of [a; b, c] f(b) g(c).  f, g map type -> value."""
    ok = checked if checked is not None else check_order_compatible(T)[0]
    if not ok:
        raise NotCompatible("equivalence is not order compatible")
    out = {}
    for a in range(len(T.types)):
        s = Fraction(0)
        for (b, c), n in T.brackets[a].items():
            s += n * Fraction(f.get(b, 0)) * Fraction(g.get(c, 0))
        out[a] = s
    return out


def reduced_delta(T):
    return {a: Fraction(1 if iv.lo == iv.hi else 0) for a, iv in enumerate(T.types)}


def lift(T, f):
    """Embed a reduced function into the full incidence algebra."""
    return IncidenceFunction(T.parent, {p: f.get(a, 0) for p, a in T.classes.items()})
