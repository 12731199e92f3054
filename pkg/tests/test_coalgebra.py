from fractions import Fraction
from math import comb

import pytest

from cotorlab.combinat import boolean_lattice, chain, crown, diamond, fence, q_binomial
from cotorlab.coalgebra import (
    EMPTY,
    K1,
    CoalgebraMorphism,
    auxiliary_z,
    all_graph_classes,
    bin_coalgebra,
    binq_coalgebra,
    complete,
    dir_coalgebra,
    dirichlet_coextension,
    div_coalgebra,
    dual_algebra,
    dual_coalgebra,
    edgeless,
    eta,
    full_incidence_coalgebra,
    gamma,
    gamma_q,
    graph_coalgebra,
    graph_delta,
    identity_coextension,
    incidence_algebra,
    is_primitive,
    lambda_primitive,
    normalize_at,
    point_coextension,
    polynomial_coalgebra,
    theta,
    z_grouplike,
    z_inclusion_projection,
)
from cotorlab.errors import QDegenerate, SizeCapExceeded, VerificationFailed
from cotorlab.linalg import RationalMatrix, kernel_basis, rank
from cotorlab.series import make_series


def terms(C, b):
    return {(l, r): c for l, r, c in C.comult[b]}


def test_divided_powers():
    C = div_coalgebra(2)
    assert terms(C, 2) == {(0, 2): 1, (1, 1): 1, (2, 0): 1}
    assert C.counit == {0: 1, 1: 0, 2: 0}


def test_binomial_middle_coefficients():
    assert terms(bin_coalgebra(2), 2)[(1, 1)] == 2
    assert terms(binq_coalgebra(2, 2), 2)[(1, 1)] == 3
    with pytest.raises(QDegenerate):
        binq_coalgebra(3, -1)


def test_dirichlet():
    C = dir_coalgebra(1, 2)
    assert terms(C, 4) == {(1, 4): 1, (2, 2): 1, (4, 1): 1}
    assert all(C.counit[n] == (n == 1) for n in C.basis)
    assert dir_coalgebra(2, 2).basis == (1, 2, 3, 4, 6, 9)


def test_polynomial():
    X = polynomial_coalgebra(1, 3)
    assert terms(X, (2,))[((1,), (1,))] == 2
    assert terms(X, (0,)) == {((0,), (0,)): 1}
    XY = polynomial_coalgebra(["X1", "X2"], 2)
    assert sorted(terms(XY, (1, 1)).values()) == [1, 1, 1, 1]


def test_full_incidence():
    C = full_incidence_coalgebra(chain(2))
    assert terms(C, (0, 1)) == {((0, 0), (0, 1)): 1, ((0, 1), (1, 1)): 1}
    assert C.grouplike is None
    one = full_incidence_coalgebra(chain(1))
    assert terms(one, (0, 0)) == {((0, 0), (0, 0)): 1} and one.grouplike == (0, 0)
    assert len(full_incidence_coalgebra(diamond()).comult[("0", "1")]) == 4


@pytest.mark.parametrize(
    "C",
    [
        div_coalgebra(6),
        bin_coalgebra(6),
        binq_coalgebra(6, Fraction(1, 2)),
        dir_coalgebra(3, 3),
        polynomial_coalgebra(2, 4),
        full_incidence_coalgebra(boolean_lattice(3)),
        full_incidence_coalgebra(crown()),
        graph_coalgebra([complete(3), ((4, ((0, 1), (1, 2), (2, 3))),)]),
    ],
    ids=lambda C: C.name,
)
def test_constructors_satisfy_axioms(C):
    assert C.check_axioms() == []


def test_ungraded_poset_is_flagged():
    # a 2-chain next to a 3-chain under a common top and bottom is not graded
    from cotorlab.combinat import build_poset

    P = build_poset("0ab1c", [("0", "a"), ("a", "1"), ("0", "b"), ("b", "c"), ("c", "1")])
    C = full_incidence_coalgebra(P)
    assert not C.graded and C.check_axioms() == []


def test_dual_incidence_algebra():
    A = incidence_algebra(diamond())
    A.verify()
    for (x, y) in A.basis:
        for (z, w) in A.basis:
            expect = {(x, w): 1} if y == z else {}
            assert A.multiply({(x, y): 1}, {(z, w): 1}) == expect


def test_dual_of_upper_triangular():
    C = dual_coalgebra(incidence_algebra(chain(2)))
    assert terms(C, (0, 1)) == {((0, 0), (0, 1)): 1, ((0, 1), (1, 1)): 1}


@pytest.mark.parametrize("C", [binq_coalgebra(4, 3), full_incidence_coalgebra(fence(4)), dir_coalgebra(2, 2)])
def test_double_dual(C):
    CC = dual_coalgebra(dual_algebra(C))
    assert CC.basis == C.basis
    assert all(terms(CC, b) == terms(C, b) for b in C.basis)
    assert CC.counit == C.counit


def _as_vec(coeffs):
    return {i: Fraction(c) for i, c in enumerate(coeffs) if c}


@pytest.mark.parametrize(
    "C,kind,q",
    [(div_coalgebra(5), "ordinary", None), (bin_coalgebra(5), "exponential", None), (binq_coalgebra(5, 2), "eulerian", 2)],
)
def test_dual_algebra_is_series_ring(C, kind, q):
    A = dual_algebra(C)
    f = [1, -2, Fraction(1, 3), 0, 5, 7]
    g = [2, 1, 0, -1, Fraction(1, 2), 3]
    prod = make_series(kind, f, q) * make_series(kind, g, q)
    assert A.multiply(_as_vec(f), _as_vec(g)) == _as_vec(prod.coeffs)


def test_dual_dirichlet_is_dirichlet_convolution():
    C = dir_coalgebra(2, 3)
    A = dual_algebra(C)
    B = max(C.basis)
    f = {n: Fraction(n % 5 - 2) for n in C.basis}
    g = {n: Fraction(1, n) for n in C.basis}
    F = make_series("dirichlet", [f.get(n, 0) for n in range(1, B + 1)])
    G = make_series("dirichlet", [g.get(n, 0) for n in range(1, B + 1)])
    H = F * G
    got = A.multiply(f, g)
    assert {n: H[n] for n in C.basis if H[n]} == got


def test_morphism_values():
    assert gamma(4).matrix[2] == {2: Fraction(1, 2)}
    assert gamma_q(4, 2).matrix[3] == {3: Fraction(1, 21)}
    # 12 = 2^2 * 3 goes to X1^2 X2 / 2!
    assert eta(2, 3).matrix[12] == {(2, 1): Fraction(1, 2)}
    assert theta(3).matrix[3] == {(3,): 1}


@pytest.mark.parametrize("f", [theta(6), gamma(6), gamma_q(6, 3), gamma_q(6, Fraction(1, 2)), eta(3, 3)], ids=lambda f: f.name)
def test_inverses_are_coalgebra_maps(f):
    g = f.inverse()
    assert g.check_laws() == []
    ident = f.compose(g)
    assert all(ident.matrix[b] == {b: 1} for b in f.target.basis)


def test_naive_eta_is_not_a_coalgebra_map():
    src, tgt = dir_coalgebra(1, 2), polynomial_coalgebra(1, 2)
    naive = CoalgebraMorphism(src, tgt, {n: {src.weight[n]: 1} for n in src.basis})
    assert naive.check_laws() != []
    with pytest.raises(VerificationFailed):
        naive.verify()


def test_dirichlet_coextension():
    E = dirichlet_coextension(1, 3)
    assert E.projection.matrix[6] == {}
    assert E.projection.matrix[4] == {4: 1}
    assert E.name == "pi_1"


def test_auxiliary_z_shape_and_axioms():
    for E in (dirichlet_coextension(1, 3), point_coextension(chain(2)), identity_coextension(div_coalgebra(3))):
        Z = auxiliary_z(E)
        assert len(Z) == len(E.total) + len(E.base)
        assert Z.check_axioms() == []
        # the D-part is a subcoalgebra
        for d in E.base.basis:
            assert all(l[0] == "D" and r[0] == "D" for l, r, _ in Z.comult[("D", d)])
        g = z_grouplike(E)
        if g is not None:
            assert Z.delta(g) == {(a, b): ca * cb for a, ca in g.items() for b, cb in g.items()}
            assert Z.epsilon(g) == 1


def test_auxiliary_z_with_identity_triples_terms():
    C = div_coalgebra(3)
    Z = auxiliary_z(identity_coextension(C))
    for x in C.basis:
        assert len(Z.comult[("C", x)]) == 3 * len(C.comult[x])


def test_z_sequence_is_exact():
    E = dirichlet_coextension(1, 3)
    i, p = z_inclusion_projection(E)
    assert (p @ i).is_zero()
    assert rank(i) == i.ncols and rank(p) == p.nrows
    assert len(kernel_basis(p)) == rank(i)


def test_normalize_at_z_grouplike():
    assert z_grouplike(point_coextension(chain(2))) is None
    E = dirichlet_coextension(1, 3)
    Z = auxiliary_z(E)
    N, express = normalize_at(Z, z_grouplike(E))
    assert N.is_normalized() and N.check_axioms() == []
    assert express(z_grouplike(E)) == {"1": 1}


# ---------------------------------------------------------------------------
# graphs


def test_graph_delta():
    assert graph_delta(K1) == {(EMPTY, K1): 1, (K1, EMPTY): 1}
    assert graph_delta(complete(2)) == {(EMPTY, complete(2)): 1, (K1, K1): 2, (complete(2), EMPTY): 1}


def test_edgeless_graphs_are_binomial():
    B = bin_coalgebra(5)
    for n in range(6):
        got = {(class_n(l), class_n(r)): c for (l, r), c in graph_delta(edgeless(n)).items()}
        assert got == {(r, n - r): comb(n, r) for r in range(n + 1)} == terms(B, n)


def class_n(cls):
    return sum(k for k, _ in cls)


def test_lambda_examples():
    assert lambda_primitive(K1) == {K1: 1}
    assert lambda_primitive(edgeless(2)) == {}
    assert lambda_primitive(complete(2)) == {complete(2): 1, edgeless(2): -1}


def test_lambda_is_primitive_up_to_five_vertices():
    for n in range(1, 6):
        for cls in all_graph_classes(n):
            assert is_primitive(lambda_primitive(cls))


def test_graph_counts_and_cap():
    assert [len(all_graph_classes(n)) for n in range(6)] == [1, 1, 2, 4, 11, 34]
    with pytest.raises(SizeCapExceeded):
        graph_coalgebra([edgeless(8)])
