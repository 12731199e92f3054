"""Finite posets, intervals, quivers, graphs, order complexes, q-integers.

Labels are opaque hashable tokens; no order data is ever read off the labels
themselves.  Where a deterministic ordering is needed (e.g. for enumerating
intervals) the construction order of the poset is used.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import (
    CycleError,
    NotOrderedQuiver,
    QDegenerate,
    SizeCapExceeded,
    UnknownLabel,
)

ISO_CAP = 10
PARTITION_CAP = 12


# ---------------------------------------------------------------------------
# posets


class Poset:
    """A finite poset stored as its closed order relation and its covers."""

    def __init__(self, elements, leq):
        self.elements = tuple(elements)
        self.leq = frozenset(leq)
        self._index = {x: i for i, x in enumerate(self.elements)}
        up = {x: set() for x in self.elements}
        for x, y in self.leq:
            up[x].add(y)
        # keep construction order inside the up/down sets
        self._up = {x: tuple(y for y in self.elements if y in up[x]) for x in self.elements}
        self._down = {
            y: tuple(x for x in self.elements if (x, y) in self.leq) for y in self.elements
        }
        covers = set()
        for x, y in self.leq:
            if x == y:
                continue
            if not any(z != x and z != y and (z, y) in self.leq for z in self._up[x]):
                covers.add((x, y))
        self.covers = frozenset(covers)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __repr__(self):
        cov = sorted(self.covers, key=lambda p: (self._index[p[0]], self._index[p[1]]))
        return f"Poset({list(self.elements)!r}, covers={cov!r})"

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and set(self.elements) == set(other.elements)
            and self.leq == other.leq
        )

    def __hash__(self):
        return hash((frozenset(self.elements), self.leq))

    def le(self, x, y):
        return (x, y) in self.leq

    def lt(self, x, y):
        return x != y and (x, y) in self.leq

    def up(self, x):
        """Elements y with x <= y."""
        return self._up[x]

    def down(self, y):
        return self._down[y]

    def index(self, x):
        return self._index[x]

    def interval_members(self, x, y):
        return tuple(z for z in self._up[x] if (z, y) in self.leq)

    def subposet(self, members):
        members = [z for z in self.elements if z in set(members)]
        mset = set(members)
        return Poset(members, [(a, b) for (a, b) in self.leq if a in mset and b in mset])

    def minimal(self):
        return [x for x in self.elements if len(self._down[x]) == 1]

    def maximal(self):
        return [x for x in self.elements if len(self._up[x]) == 1]

    def height(self):
        """Length (number of covers) of a longest chain."""
        best = {}
        for x in self.linear_extension():
            best[x] = max((best[z] + 1 for z in self._down[x] if z != x), default=0)
        return max(best.values(), default=-1)

    def linear_extension(self):
        return sorted(self.elements, key=lambda x: (len(self._down[x]), self._index[x]))

    def is_connected(self):
        if not self.elements:
            return True
        adj = {x: set() for x in self.elements}
        for x, y in self.covers:
            adj[x].add(y)
            adj[y].add(x)
        seen = {self.elements[0]}
        stack = [self.elements[0]]
        while stack:
            for y in adj[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(self.elements)

    def check(self):
        """Exhaustively verify reflexivity, antisymmetry and transitivity."""
        els = self.elements
        for x in els:
            assert (x, x) in self.leq
        for x, y in self.leq:
            assert x == y or (y, x) not in self.leq
            for z in self._up[y]:
                assert (x, z) in self.leq


def build_poset(labels, cover_pairs):
    """Poset generated by `cover_pairs` (lower, upper) on `labels`.

    The closure is computed from the pairs; covers are recomputed as the
    transitive reduction, so redundant input pairs are harmless.
    """
    labels = list(labels)
    if len(set(labels)) != len(labels):
        raise ValueError("poset labels must be distinct")
    known = set(labels)
    succ = {x: set() for x in labels}
    for lo, hi in cover_pairs:
        for z in (lo, hi):
            if z not in known:
                raise UnknownLabel(f"unknown label {z!r}")
        succ[lo].add(hi)
    leq = set()
    for x in labels:
        seen = {x}
        stack = [x]
        while stack:
            for y in succ[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        leq.update((x, y) for y in seen)
    for x, y in leq:
        if x != y and (y, x) in leq:
            raise CycleError(f"{x!r} and {y!r} are mutually related")
    return Poset(labels, leq)


def chain(n, prefix=""):
    """Chain 0 < 1 < ... < n-1 (n elements)."""
    labels = [f"{prefix}{i}" if prefix else i for i in range(n)]
    return build_poset(labels, list(zip(labels, labels[1:])))


def antichain(n):
    return build_poset(list(range(n)), [])


def boolean_lattice(n):
    """Subsets of {1..n} ordered by inclusion; labels are frozensets."""
    subsets = [frozenset(c) for k in range(n + 1) for c in combinations(range(1, n + 1), k)]
    covers = [(s, s | {i}) for s in subsets for i in range(1, n + 1) if i not in s]
    return build_poset(subsets, covers)


def diamond():
    return build_poset(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def crown():
    """Two minima below two maxima: the order complex is a 4-cycle."""
    return build_poset(
        ["y1", "y2", "x1", "x2"],
        [("y1", "x1"), ("y1", "x2"), ("y2", "x1"), ("y2", "x2")],
    )


def fence(n):
    """Zig-zag 0 < 1 > 2 < 3 > ... on n elements."""
    labels = list(range(n))
    pairs = []
    for i in range(n - 1):
        pairs.append((i, i + 1) if i % 2 == 0 else (i + 1, i))
    return build_poset(labels, pairs)


def disjoint_union(P, Q, tags=("L", "R")):
    els = [(tags[0], x) for x in P] + [(tags[1], y) for y in Q]
    covers = [((tags[0], x), (tags[0], y)) for x, y in P.covers]
    covers += [((tags[1], x), (tags[1], y)) for x, y in Q.covers]
    return build_poset(els, covers)


@dataclass(frozen=True)
class Interval:
    parent: Poset = field(repr=False, compare=False)
    lo: object
    hi: object
    members: tuple = field(compare=False)

    def poset(self):
        return self.parent.subposet(self.members)

    def __len__(self):
        return len(self.members)


def enumerate_intervals(P):
    """One Interval per comparable pair x <= y, in construction order."""
    return [
        Interval(P, x, y, P.interval_members(x, y)) for x in P.elements for y in P.up(x)
    ]


# ---------------------------------------------------------------------------
# isomorphism


def _signature(P, x):
    return (len(P.down(x)), len(P.up(x)))


def poset_isomorphism(P, Q, cap=ISO_CAP):
    """An order isomorphism P -> Q as a dict, or None.

    Candidates are pruned by (down-set size, up-set size) and the map is
    extended one element at a time, checking the relation against every
    element already placed.
    """
    if len(P) > cap or len(Q) > cap:
        raise SizeCapExceeded(f"poset isomorphism capped at {cap} elements")
    if len(P) != len(Q) or len(P.leq) != len(Q.leq):
        return None
    sigP = {x: _signature(P, x) for x in P}
    sigQ = {y: _signature(Q, y) for y in Q}
    if sorted(sigP.values()) != sorted(sigQ.values()):
        return None
    order = P.linear_extension()
    cands = {x: [y for y in Q if sigQ[y] == sigP[x]] for x in order}
    fwd, used = {}, set()

    def extend(i):
        if i == len(order):
            return True
        x = order[i]
        for y in cands[x]:
            if y in used:
                continue
            if all(
                P.le(x, u) == Q.le(y, v) and P.le(u, x) == Q.le(v, y) for u, v in fwd.items()
            ):
                fwd[x] = y
                used.add(y)
                if extend(i + 1):
                    return True
                del fwd[x]
                used.discard(y)
        return False

    return dict(fwd) if extend(0) else None


def poset_isomorphic(P, Q, cap=ISO_CAP):
    return poset_isomorphism(P, Q, cap) is not None


def is_chain(P):
    return all(P.le(x, y) or P.le(y, x) for x in P for y in P)


def is_forest_hasse(P):
    """True iff the undirected Hasse diagram has no cycle."""
    parent = {x: x for x in P}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in P.covers:
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[rx] = ry
    return True


def unique_cover_paths(P):
    """True iff between any x <= y there is exactly one saturated chain.

    This is the reading of "no cycle in the Hasse diagram" under which it is
    equivalent to all intervals being chains.  Undirected acyclicity is
    strictly stronger: the crown has a 4-cycle but only chain intervals.
    """
    count = {}
    order = P.linear_extension()
    for x in order:
        count[(x, x)] = 1
    for y in order:
        for x in P.down(y):
            if x == y:
                continue
            count[(x, y)] = sum(count[(x, z)] for z, w in P.covers if w == y and P.le(x, z))
            if count[(x, y)] != 1:
                return False
    return True


def all_intervals_chains(P):
    """The other side of the forest characterization: every interval is a chain."""
    return all(is_chain(iv.poset()) for iv in enumerate_intervals(P))


def posets_up_to_iso(n, cap=6):
    """One representative of every isomorphism class of posets on range(n).

    Every poset has a natural labelling, so it suffices to close subsets of
    the pairs i < j transitively and deduplicate.
    """
    if n > cap:
        raise SizeCapExceeded(f"poset enumeration capped at {cap} elements")
    pairs = list(combinations(range(n), 2))
    closed = set()
    for mask in range(1 << len(pairs)):
        P = build_poset(range(n), [p for i, p in enumerate(pairs) if mask >> i & 1])
        closed.add(P.leq)
    reps = []
    for leq in sorted(closed, key=lambda r: (len(r), sorted(r))):
        P = Poset(range(n), leq)
        if not any(poset_isomorphic(P, R) for R in reps):
            reps.append(P)
    return reps


# ---------------------------------------------------------------------------
# quivers


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # (name, source, target)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertex")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow name")
        for name, s, t in self.arrows:
            for v in (s, t):
                if v not in vs:
                    raise UnknownLabel(f"arrow {name!r} uses unknown vertex {v!r}")

    def sources(self):
        targets = {t for _, _, t in self.arrows}
        return [v for v in self.vertices if v not in targets]

    def sinks(self):
        starts = {s for _, s, _ in self.arrows}
        return [v for v in self.vertices if v not in starts]

    def _succ(self):
        succ = {v: [] for v in self.vertices}
        for name, s, t in self.arrows:
            succ[s].append((name, t))
        return succ


def _reachable(quiver, start, skip_arrow=None):
    succ = quiver._succ()
    seen, stack = set(), [start]
    while stack:
        for name, t in succ[stack.pop()]:
            if name == skip_arrow or t in seen:
                continue
            seen.add(t)
            stack.append(t)
    return seen


def is_ordered_quiver(Q):
    """Acyclic, and every arrow is the only oriented path between its ends."""
    for v in Q.vertices:
        if v in _reachable(Q, v):
            return False
    for name, s, t in Q.arrows:
        if t in _reachable(Q, s, skip_arrow=name):
            return False
    return True


def poset_from_ordered_quiver(Q):
    """x >= y iff an oriented path runs from x to y."""
    if not is_ordered_quiver(Q):
        raise NotOrderedQuiver("quiver has an oriented cycle or a redundant arrow")
    return build_poset(Q.vertices, [(t, s) for _, s, t in Q.arrows])


def hasse_quiver(P):
    """Canonical quiver of a poset: one arrow upper -> lower per cover."""
    arrows = sorted(P.covers, key=lambda c: (P.index(c[0]), P.index(c[1])))
    return Quiver(
        tuple(P.elements),
        tuple((f"{hi}->{lo}", hi, lo) for lo, hi in arrows),
    )


def suspend_quiver(Q, a="a", b="b"):
    """Adjoin b with arrows to every source and a with arrows from every sink.

    An isolated vertex is both a source and a sink and gets both arrows.
    """
    if not is_ordered_quiver(Q):
        raise NotOrderedQuiver("can only suspend an ordered quiver")
    if a in Q.vertices or b in Q.vertices or a == b:
        raise ValueError(f"suspension vertices {a!r}, {b!r} clash with the quiver")
    names = {n for n, _, _ in Q.arrows}

    def fresh(name):
        while name in names:
            name += "'"
        names.add(name)
        return name

    arrows = list(Q.arrows)
    arrows += [(fresh(f"{b}->{s}"), b, s) for s in Q.sources()]
    arrows += [(fresh(f"{t}->{a}"), t, a) for t in Q.sinks()]
    out = Quiver(tuple(Q.vertices) + (a, b), tuple(arrows))
    assert is_ordered_quiver(out)
    return out


def crown_quiver():
    return Quiver(
        ("x1", "x2", "y1", "y2"),
        (("p", "x1", "y1"), ("q", "x1", "y2"), ("r", "x2", "y1"), ("s", "x2", "y2")),
    )


def linear_quiver(n):
    vs = tuple(f"v{i}" for i in range(n))
    return Quiver(vs, tuple((f"e{i}", vs[i], vs[i + 1]) for i in range(n - 1)))


# ---------------------------------------------------------------------------
# simple graphs and simplicial complexes


@dataclass(frozen=True)
class SimpleGraph:
    vertices: tuple
    edges: frozenset  # of frozenset pairs

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        es = frozenset(frozenset(e) for e in self.edges)
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertex")
        for e in es:
            if len(e) != 2:
                raise ValueError("loops are not allowed")
            if not e <= vs:
                raise UnknownLabel(f"edge {sorted(e, key=repr)!r} uses an unknown vertex")
        object.__setattr__(self, "edges", es)

    def induced(self, subset):
        subset = set(subset)
        return SimpleGraph(
            tuple(v for v in self.vertices if v in subset),
            frozenset(e for e in self.edges if e <= subset),
        )


@dataclass(frozen=True)
class SimplicialComplex:
    faces: frozenset  # of frozensets, downward closed, contains the empty face

    def __post_init__(self):
        faces = frozenset(frozenset(f) for f in self.faces) | {frozenset()}
        for f in faces:
            for v in f:
                if f - {v} not in faces:
                    raise ValueError("face family is not downward closed")
        object.__setattr__(self, "faces", faces)

    @classmethod
    def from_maximal(cls, facets):
        faces = set()
        for f in facets:
            f = list(f)
            for k in range(len(f) + 1):
                faces.update(frozenset(c) for c in combinations(f, k))
        return cls(frozenset(faces))

    def dimension(self):
        return max(len(f) for f in self.faces) - 1

    def faces_of_dim(self, d):
        return [f for f in self.faces if len(f) == d + 1]


def order_complex(P):
    """Faces are the chains (totally ordered subsets) of P."""
    faces = {frozenset()}
    frontier = [(x,) for x in P.linear_extension()]
    while frontier:
        nxt = []
        for ch in frontier:
            faces.add(frozenset(ch))
            top = ch[-1]
            nxt.extend(ch + (y,) for y in P.up(top) if y != top)
        frontier = nxt
    return SimplicialComplex(frozenset(faces))


def strict_chains(P, length):
    """Chains x0 < x1 < ... < x_length as tuples, in a deterministic order."""
    out = [(x,) for x in P.elements]
    for _ in range(length):
        out = [ch + (y,) for ch in out for y in P.up(ch[-1]) if y != ch[-1]]
    return out


# ---------------------------------------------------------------------------
# q-integers and set partitions


def q_integer(n, q):
    q = Fraction(q)
    return sum((q**i for i in range(n)), Fraction(0))


def q_factorial(n, q):
    out = Fraction(1)
    for m in range(1, n + 1):
        out *= q_integer(m, q)
    return out


def check_q(n, q):
    for m in range(1, n + 1):
        if q_integer(m, q) == 0:
            raise QDegenerate(f"[{m}]_q vanishes at q = {q}")


def q_binomial(n, k, q):
    """Gaussian binomial [n k]_q at an exact rational q."""
    if k < 0 or k > n:
        raise IndexError(f"need 0 <= k <= n, got n={n}, k={k}")
    q = Fraction(q)
    if q == 1:
        return Fraction(comb(n, k))
    check_q(n, q)
    return q_factorial(n, q) / (q_factorial(k, q) * q_factorial(n - k, q))


def set_partitions(n, cap=PARTITION_CAP):
    """Yield every partition of {1..n} once, as a tuple of sorted blocks."""
    if n > cap:
        raise SizeCapExceeded(f"set partitions capped at n = {cap}")
    if n == 0:
        yield ()
        return

    def rec(i, blocks):
        if i > n:
            yield tuple(tuple(b) for b in blocks)
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(1, [])
