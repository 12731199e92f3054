"""Executable checks, each comparing two independently computed quantities.

Every check returns a CheckReport.  `left` and `right` are the two sides;
`conditions` holds extra boolean facts the check also asserts (e.g. that
several coalgebras give the same Cotor).  The verdict is "pass" exactly when
left == right and every condition holds.
"""

import json
import time
from dataclasses import asdict, dataclass, field
from math import comb

from .coalgebra import (
    auxiliary_z,
    bin_coalgebra,
    binq_coalgebra,
    dir_coalgebra,
    div_coalgebra,
    dual_algebra,
    first_primes,
    full_incidence_coalgebra,
    incidence_algebra,
    normalize_at,
    z_grouplike,
)
from .combinat import order_complex, poset_from_ordered_quiver, suspend_quiver
from .errors import NoGrouplike, SizeCapExceeded
from .homology import (
    Bimodule,
    Cocycle,
    bimodule_from_comodules,
    cobar_complex,
    cotor,
    cup,
    extend_comodule_to_z,
    ext_dims,
    hochschild_complex,
    hochschild_reduced,
    incidence_point_comodule,
    regular_bimodule,
    simplicial_cohomology,
    transport_comodule,
    trivial_comodule,
)

GS_CAP = 8


@dataclass
class CheckReport:
    name: str
    params: dict
    left: list
    right: list
    verdict: str = ""
    elapsed_ms: float = 0.0
    conditions: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.verdict:
            ok = list(self.left) == list(self.right) and all(self.conditions.values())
            self.verdict = "pass" if ok else "fail"

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_dict(self, timings=True):
        d = asdict(self)
        if not timings:
            d.pop("elapsed_ms")
        return d

    def to_json(self, timings=True):
        return json.dumps(self.to_dict(timings), sort_keys=True, default=str)

    @classmethod
    def from_dict(cls, d):
        return cls(
            name=d["name"],
            params=d["params"],
            left=d["left"],
            right=d["right"],
            verdict=d["verdict"],
            elapsed_ms=d.get("elapsed_ms", 0.0),
            conditions=d.get("conditions", {}),
        )


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.elapsed_ms = round((time.perf_counter() - t0) * 1000, 3)
        return rep

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ---------------------------------------------------------------------------


@_timed
def check_thm_exp(N, n_max, q=2, degree_cap=None):
    """Cotor over Div, Bin and Bin_q truncated at N against [1, 1, 0, ...].

    The cap is clamped to N: a truncation at N only agrees with the full
    coalgebra in internal degrees <= N.
    """
    if N < n_max + 1 and not (N == 1 and n_max == 0):
        raise ValueError("need N >= n_max + 1")
    cap = N if degree_cap is None else min(degree_cap, N)
    div = cotor(div_coalgebra(N), n_max=n_max, degree_cap=cap)
    b = cotor(bin_coalgebra(N), n_max=n_max, degree_cap=cap)
    bq = cotor(binq_coalgebra(N, q), n_max=n_max, degree_cap=cap)
    expect = [1, 1, 0, 0, 0, 0, 0, 0][: n_max + 1] + [0] * max(0, n_max - 7)
    return CheckReport(
        "thm-exp",
        {"N": N, "n_max": n_max, "q": str(q), "degree_cap": cap},
        div,
        expect,
        conditions={"bin == div": b == div, "binq == div": bq == div},
    )


def _generator(K, p):
    return Cocycle(K, 1, {("k", (p,), "k"): 1})


@_timed
def check_fundamental3(m, D, n_max):
    """Cotor over dir(m, D) against the exterior algebra on m degree-1 classes."""
    if D < n_max:
        raise ValueError("need D >= n_max")
    K = cobar_complex(dir_coalgebra(m, D), n_max=n_max, degree_cap=D)
    dims = K.dims()
    conditions = {}
    if n_max >= 2:
        us = [_generator(K, p) for p in first_primes(m)]
        anti = sq = True
        for i, u in enumerate(us):
            sq = sq and cup(u, u).is_coboundary()
            for v in us[i + 1 :]:
                anti = anti and (cup(u, v) + cup(v, u)).is_coboundary()
        conditions["generators anticommute"] = anti
        conditions["generators square to coboundaries"] = sq
    return CheckReport(
        "fundamental3",
        {"m": m, "D": D, "n_max": n_max},
        dims,
        [comb(m, n) for n in range(n_max + 1)],
        conditions=conditions,
    )


def _comodule_pairs(C):
    if C.is_normalized():
        return [(trivial_comodule(C, "right"), trivial_comodule(C, "left"))]
    P = getattr(C, "poset", None)
    if P is None:
        raise NoGrouplike(f"{C.name}: no group-like and no poset to pick comodules from")
    return [
        (incidence_point_comodule(C, x, "right"), incidence_point_comodule(C, y, "left"))
        for x in P
        for y in P
    ]


def _sum(rows, n):
    return [sum(r[i] for r in rows) for i in range(n + 1)]


@_timed
def check_z_lemma(E, n_max, degree_cap=None):
    """Cotor over the auxiliary coalgebra Z against Cotor over C.

    Comodules over C are extended to Z by v -> v (x) (c, pi(c)).  When C has
    a normalized group-like g, Z is rewritten in a basis containing g + pi(g)
    so the reduced cobar complex applies on both sides.
    """
    C = E.total
    Z = auxiliary_z(E)
    cap = degree_cap
    if C.exact_through is not None:
        cap = C.exact_through if cap is None else min(cap, C.exact_through)
    pairs = _comodule_pairs(C)
    left_rows, right_rows, per_pair = [], [], []
    if C.is_normalized():
        Zn, express = normalize_at(Z, z_grouplike(E))
    for V, W in pairs:
        lc = cotor(C, V, W, n_max=n_max, degree_cap=cap)
        VZ, WZ = extend_comodule_to_z(V, E, Z), extend_comodule_to_z(W, E, Z)
        if C.is_normalized():
            VZ, WZ = transport_comodule(VZ, Zn, express), transport_comodule(WZ, Zn, express)
            rz = cotor(Zn, VZ, WZ, n_max=n_max, degree_cap=cap, reduced=True)
        else:
            rz = cotor(Z, VZ, WZ, n_max=n_max, degree_cap=cap, reduced=False)
        left_rows.append(rz)
        right_rows.append(lc)
        per_pair.append(rz == lc)
    return CheckReport(
        "z-lemma",
        {"coextension": E.name, "n_max": n_max, "degree_cap": cap, "pairs": len(pairs)},
        _sum(left_rows, n_max),
        _sum(right_rows, n_max),
        conditions={"every comodule pair agrees": all(per_pair), "Z is a coalgebra": not Z.check_axioms()},
    )


@_timed
def check_duality(P, n_max):
    """Cotor_C(k_x, k_y) over the full incidence coalgebra against
    HH(C*, V (x) W), summed over all pairs (x, y) and required pairwise."""
    C = full_incidence_coalgebra(P)
    A = dual_algebra(C)
    left_rows, right_rows, agree = [], [], True
    for V, W in _comodule_pairs(C):
        c = cotor(C, V, W, n_max=n_max, reduced=False)
        h = hochschild_complex(A, bimodule_from_comodules(A, V, W), n_max).dims()
        left_rows.append(c)
        right_rows.append(h)
        agree = agree and c == h
    return CheckReport(
        "duality",
        {"poset": len(P), "n_max": n_max},
        _sum(left_rows, n_max),
        _sum(right_rows, n_max),
        conditions={"every pair agrees": agree},
    )


@_timed
def check_gs(P, n_max, cap=GS_CAP):
    """HH(A, A) by the reduced complex against the cohomology of the order complex."""
    if len(P) > cap:
        raise SizeCapExceeded(f"poset has {len(P)} elements > cap {cap}")
    A = incidence_algebra(P)
    hh = hochschild_reduced(A, regular_bimodule(A), n_max).dims()
    simp = simplicial_cohomology(order_complex(P), n_max)
    return CheckReport("gs", {"poset": len(P), "n_max": n_max}, hh, simp)


def suspension_data(Q):
    P = poset_from_ordered_quiver(Q)
    Qs = suspend_quiver(Q)
    Ps = poset_from_ordered_quiver(Qs)
    return P, Ps, incidence_algebra(P), incidence_algebra(Ps)


@_timed
def check_suspension(Q, n_max):
    """dim HH^n(A, A) (full bar complex) against dim Ext^{n+2}(k_a, k_b) over
    the suspension (reduced complex), n = 1..n_max.

    a is the new minimum, b the new maximum of the suspended poset.  The
    n = 0 values are recorded in params but not compared.
    """
    P, Ps, A, As = suspension_data(Q)
    hh = hochschild_complex(A, regular_bimodule(A), n_max).dims()
    ext = ext_dims(As, "a", "b", n_max + 2, method="reduced")
    return CheckReport(
        "suspension",
        {"vertices": len(Q.vertices), "arrows": len(Q.arrows), "n_max": n_max, "n0": [hh[0], ext[2]]},
        hh[1:],
        ext[3:],
    )


def eta_bimodule(A):
    """X = span{r_x (x) l_y : x <= y} (+) k.theta with
    e_ux (r_x (x) l_y) = r_u (x) l_y, (r_x (x) l_y) e_yw = r_x (x) l_w, and A
    acting by zero on theta (the class of the path from a to b)."""
    P = A.poset
    basis = [("r", x, "l", y) for x in P for y in P.up(x)] + ["theta"]
    left, right = {}, {}
    for _, x, _, y in basis[:-1]:
        for u in P.down(x):
            left[((u, x), ("r", x, "l", y))] = {("r", u, "l", y): 1}
        for w in P.up(y):
            right[(("r", x, "l", y), (y, w))] = {("r", x, "l", w): 1}
    return Bimodule(A, basis, left, right, name="aV(x)Vb")


def eta_map(X):
    """r_x (x) l_y -> e_xy, theta -> 0."""
    return {m: ({} if m == "theta" else {(m[1], m[3]): 1}) for m in X.basis}


def _apply(mat, vec):
    out = {}
    for m, a in vec.items():
        for k, c in mat[m].items():
            out[k] = out.get(k, 0) + a * c
    return {k: v for k, v in out.items() if v}


@_timed
def check_eta_sequence(Q, n_max):
    """0 -> k.theta -> X -> A -> 0 and the long exact sequence it induces.

    Conditions: eta is left and right A-linear on every basis pair, onto,
    with one-dimensional kernel spanned by theta, and HH^m(A, k.theta) = 0
    for 1 <= m <= n_max.  left/right compare HH^m(A, X) with HH^m(A, A).
    """
    from .linalg import RationalMatrix, kernel_basis, rank

    P, Ps, A, As = suspension_data(Q)
    X = eta_bimodule(A)
    eta = eta_map(X)
    lin_left = lin_right = True
    for a in A.basis:
        for m in X.basis:
            if _apply(eta, X.act_left({a: 1}, {m: 1})) != A.multiply({a: 1}, eta[m]):
                lin_left = False
            if _apply(eta, X.act_right({m: 1}, {a: 1})) != A.multiply(eta[m], {a: 1}):
                lin_right = False
    cols = [{A.index(k): c for k, c in eta[m].items()} for m in X.basis]
    M = RationalMatrix(len(A), len(X), cols)
    onto = rank(M) == len(A)
    ker = kernel_basis(M)
    theta = X.basis.index("theta")
    ker_ok = len(ker) == 1 and set(ker[0]) == {theta}
    K = Bimodule(A, ["theta"], {}, {}, name="akb")
    hk = hochschild_complex(A, K, n_max).dims()
    hx = hochschild_complex(A, X, n_max).dims()
    ha = hochschild_complex(A, regular_bimodule(A), n_max).dims()
    return CheckReport(
        "eta-sequence",
        {"vertices": len(Q.vertices), "arrows": len(Q.arrows), "n_max": n_max, "kernel_dim": len(ker), "HH(A,akb)": hk},
        hx[1:],
        ha[1:],
        conditions={
            "eta left linear": lin_left,
            "eta right linear": lin_right,
            "eta onto": onto,
            "kernel is k.theta": ker_ok,
            "HH^m(A, akb) = 0": all(h == 0 for h in hk[1:]),
        },
    )
