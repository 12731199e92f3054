from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cotorlab.combinat import (
    Quiver,
    SimplicialComplex,
    all_intervals_chains,
    antichain,
    boolean_lattice,
    build_poset,
    chain,
    crown,
    crown_quiver,
    diamond,
    disjoint_union,
    enumerate_intervals,
    fence,
    hasse_quiver,
    is_forest_hasse,
    is_ordered_quiver,
    linear_quiver,
    order_complex,
    poset_from_ordered_quiver,
    poset_isomorphic,
    poset_isomorphism,
    posets_up_to_iso,
    q_binomial,
    q_factorial,
    q_integer,
    set_partitions,
    strict_chains,
    suspend_quiver,
    unique_cover_paths,
)
from cotorlab.errors import CycleError, NotOrderedQuiver, QDegenerate, SizeCapExceeded, UnknownLabel


def test_build_poset_closes_relations():
    P = build_poset("abc", [("a", "b"), ("b", "c")])
    assert P.le("a", "c")
    assert P.covers == {("a", "b"), ("b", "c")}
    P.check()


def test_redundant_pairs_are_dropped_from_covers():
    P = build_poset("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    assert ("a", "c") not in P.covers


def test_cycle_and_unknown_label():
    with pytest.raises(CycleError):
        build_poset("xy", [("x", "y"), ("y", "x")])
    with pytest.raises(UnknownLabel):
        build_poset("xy", [("x", "z")])


def test_interval_counts():
    assert len(enumerate_intervals(diamond())) == 9
    # chain of n elements: n(n+1)/2 comparable pairs
    assert len(enumerate_intervals(chain(5))) == 15
    assert len(enumerate_intervals(antichain(4))) == 4
    # B(3): sum over S of 2^(3-|S|) = 3^3
    assert len(enumerate_intervals(boolean_lattice(3))) == 27


def test_isomorphism():
    assert poset_isomorphic(diamond(), boolean_lattice(2))
    assert not poset_isomorphic(chain(3), antichain(3))
    assert not poset_isomorphic(fence(4), chain(4))
    phi = poset_isomorphism(crown(), crown())
    assert phi is not None and len(phi) == 4
    with pytest.raises(SizeCapExceeded):
        poset_isomorphism(chain(11), chain(11))


def test_poset_counts_up_to_iso():
    # OEIS A000112
    assert [len(posets_up_to_iso(n)) for n in range(1, 6)] == [1, 2, 5, 16, 63]


def test_forest_implies_chain_intervals():
    for n in range(1, 5):
        for P in posets_up_to_iso(n):
            if is_forest_hasse(P):
                assert all_intervals_chains(P)
    assert not is_forest_hasse(diamond())
    assert is_forest_hasse(fence(5))
    assert is_forest_hasse(disjoint_union(chain(2), chain(3)))


def test_crown_breaks_the_converse():
    # undirected 4-cycle in the Hasse diagram, yet every interval is a chain
    assert not is_forest_hasse(crown())
    assert all_intervals_chains(crown())


def test_unique_cover_paths_characterizes_chain_intervals():
    for n in range(1, 6):
        for P in posets_up_to_iso(n):
            assert unique_cover_paths(P) == all_intervals_chains(P)


def test_disjoint_union_is_disconnected():
    P = disjoint_union(chain(2), chain(3))
    assert len(P) == 5 and not P.is_connected()


def test_ordered_quivers():
    assert is_ordered_quiver(crown_quiver())
    tri = Quiver("xyz", [("a", "x", "y"), ("b", "y", "z"), ("c", "x", "z")])
    assert not is_ordered_quiver(tri)
    loop = Quiver("xy", [("a", "x", "y"), ("b", "y", "x")])
    assert not is_ordered_quiver(loop)
    with pytest.raises(NotOrderedQuiver):
        poset_from_ordered_quiver(tri)


def test_quiver_poset_orientation():
    # arrow x -> y means x >= y
    P = poset_from_ordered_quiver(linear_quiver(3))
    assert P.le("v2", "v0")
    assert poset_isomorphic(P, chain(3))


def test_hasse_quiver_round_trip():
    for P in (diamond(), crown(), fence(5), boolean_lattice(3)):
        assert poset_from_ordered_quiver(hasse_quiver(P)) == P


def test_suspension_adds_extremes():
    Q = suspend_quiver(crown_quiver())
    P = poset_from_ordered_quiver(Q)
    assert len(P) == 6
    assert all(P.le("a", x) and P.le(x, "b") for x in P)
    point = suspend_quiver(Quiver(("v",), ()))
    assert len(point.arrows) == 2
    with pytest.raises(ValueError):
        suspend_quiver(Quiver(("a",), ()))


def test_order_complex_of_crown_is_a_square():
    K = order_complex(crown())
    assert len(K.faces_of_dim(0)) == 4
    assert len(K.faces_of_dim(1)) == 4
    assert K.dimension() == 1


def test_simplicial_complex_needs_closure():
    with pytest.raises(ValueError):
        SimplicialComplex(frozenset({frozenset({1, 2})}))


def test_strict_chains_count():
    # chains of length 2 in B(3) are flags of subsets: 3! + 3*2*... counted directly
    B = boolean_lattice(3)
    brute = [
        (x, y, z) for x in B for y in B for z in B if B.lt(x, y) and B.lt(y, z)
    ]
    assert len(strict_chains(B, 2)) == len(brute)


def _gf2_subspaces(n, k):
    """Count k-dimensional subspaces of GF(2)^n by brute force."""
    vecs = list(product((0, 1), repeat=n))
    spaces = set()
    for basis in product(vecs, repeat=k):
        span = set()
        for coeffs in product((0, 1), repeat=k):
            span.add(tuple(sum(c * v[i] for c, v in zip(coeffs, basis)) % 2 for i in range(n)))
        if len(span) == 2**k:
            spaces.add(frozenset(span))
    return len(spaces)


def test_q_binomial_counts_subspaces():
    for n, k in [(3, 1), (4, 2), (4, 1), (3, 2)]:
        assert q_binomial(n, k, 2) == _gf2_subspaces(n, k)
    assert q_binomial(4, 2, 2) == 35


def test_q_integers():
    assert q_integer(3, 2) == 7
    assert q_factorial(3, 2) == 21
    assert q_binomial(5, 2, 1) == 10
    with pytest.raises(QDegenerate):
        q_binomial(3, 1, -1)
    with pytest.raises(IndexError):
        q_binomial(3, 4, 2)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 7),
    st.data(),
    st.fractions(min_value=-3, max_value=3, max_denominator=5).filter(lambda q: q not in (0, -1)),
)
def test_q_pascal(n, data, q):
    k = data.draw(st.integers(1, n - 1)) if n > 1 else None
    if k is None:
        return
    try:
        lhs = q_binomial(n, k, q)
        rhs = q_binomial(n - 1, k - 1, q) + q**k * q_binomial(n - 1, k, q)
    except QDegenerate:
        return
    assert lhs == rhs


def test_set_partitions_bell_numbers():
    assert [sum(1 for _ in set_partitions(n)) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]
    with pytest.raises(SizeCapExceeded):
        next(set_partitions(13))


def test_q_binomial_at_half():
    assert q_binomial(2, 1, Fraction(1, 2)) == Fraction(3, 2)
