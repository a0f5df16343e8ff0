import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import quotient
from oracles import (q1e_rules, rewriting_normal_forms, truncated_poly_rules,
                     truncated_quotient_dimension, two_loop_rules)
from qga.algebra import (NotAdmissible, NotFiniteWithinBound, build_quotient, is_connected, multiply,
                         normal_form, radical_series, reduces_to_zero, socle)
from qga.presentation import Quiver, builtin, parse_presentation


def names(A):
    return [A.quiver.path_str(p).replace("*", "") for p in A.basis]


def elem(A, word):
    """Element of a one-vertex algebra from a word over the arrow names ('' = e)."""
    if not word:
        return {A.quiver.trivial(0): A.field.one()}
    return {A.path(*word): A.field.one()}


def words_of(A, x):
    return {A.quiver.path_str(p).replace("*", "") if len(p) else "": c for p, c in x.items()}


def test_truncated_poly_basis():
    A = quotient("truncated_poly", 3)
    assert names(A) == ["e", "x", "xx"]
    assert A.dimension == 3


def test_q1e_2_basis():
    A = quotient("q1e", 2)
    assert A.dimension == 8
    assert names(A) == ["e", "a", "b", "ab", "ba", "aba", "bab", "abab"]
    assert A.certificate.verified_closure


@pytest.mark.parametrize("family, r, rules, alphabet, max_len", [
    ("q1e", 2, q1e_rules(2), "ab", 6),
    ("two_loop", 2, two_loop_rules(2), "ab", 6),
    *[("truncated_poly", n, truncated_poly_rules(n), "x", 8) for n in range(2, 7)],
])
def test_matches_rewriting_oracle(family, r, rules, alphabet, max_len):
    A = quotient(family, r)
    forms, image = rewriting_normal_forms(alphabet, rules, max_len)
    basis = {w if w != "e" else "" for w in names(A)}
    assert basis == forms
    # the normal form of every word agrees with its rewritten form
    for w, target in image.items():
        got = words_of(A, normal_form(elem(A, w), A))
        assert got == ({} if target is None else {target: 1}), w


@pytest.mark.parametrize("r", [2, 3])
def test_q1e_dimension_matches_dense_oracle(r):
    rels = [{"aa": 1, "ba" * (r - 1) + "b": -1}, {"bb": 1, "ab" * (r - 1) + "a": -1},
            {"ab" * r: 1, "ba" * r: -1}, {"ab" * r + "a": 1}]
    L = 2 * r + 1
    dims = {truncated_quotient_dimension("ab", rels, n) for n in (L, L + 1)}
    assert dims == {quotient("q1e", r).dimension} == {4 * r}


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_q1e_dimension_pattern(r):
    A = quotient("q1e", r)
    assert A.dimension == 4 * r
    assert list(A.radical_dims) == [1] + [2] * (2 * r - 1) + [1]


def test_two_loop_socle():
    A = quotient("two_loop", 2)
    soc = socle(A)
    assert len(soc) == 1
    assert words_of(A, soc[0]) == {"abab": 1}


def test_q1e_socle():
    soc = socle(quotient("q1e", 2))
    assert len(soc) == 1 and words_of(quotient("q1e", 2), soc[0]) == {"abab": 1}


def test_normal_form_examples():
    A = quotient("q1e", 2)
    assert words_of(A, normal_form(elem(A, "aa"), A)) == {"bab": 1}
    e = elem(A, "")
    assert multiply(e, e, A) == e
    assert normal_form(elem(A, "ababa"), A) == {}


def test_normal_form_beyond_truncation():
    A = quotient("q1e", 2)
    assert normal_form(elem(A, "a" * 12), A) == {}
    assert reduces_to_zero(elem(A, "ab" * 6), A)


def test_multiply_examples():
    A = quotient("q1e", 2)
    assert words_of(A, multiply(elem(A, "a"), elem(A, "b"), A)) == {"ab": 1}
    assert words_of(A, multiply(elem(A, "aba"), elem(A, "b"), A)) == {"abab": 1}
    T = quotient("truncated_poly", 3)
    assert multiply(elem(T, "xx"), elem(T, "x"), T) == {}


def test_reduces_to_zero_examples():
    A = quotient("q1e", 2)
    assert not reduces_to_zero(elem(A, "a"), A)
    x = {A.path(*"abab"): A.field.one(), A.path(*"baba"): -A.field.one()}
    assert reduces_to_zero(x, A)


def test_relations_reduce_to_zero(fixture_algebra):
    A = fixture_algebra
    for rel in A.presentation.relations:
        assert reduces_to_zero(rel, A)


def test_radical_series_examples():
    assert radical_series(quotient("truncated_poly", 3)) == [1, 1, 1]
    dims = radical_series(quotient("q1e", 2))
    assert sum(dims) == 8 and dims[0] == 1
    assert radical_series(quotient("linear_an", 2)) == [2, 1]


def test_radical_layers_are_basis_length_histogram(fixture_algebra):
    A = fixture_algebra
    hist = [sum(1 for b in A.basis if len(b) == n) for n in range(max(len(b) for b in A.basis) + 1)]
    assert list(A.radical_dims) == hist
    assert sum(A.radical_dims) == A.dimension
    assert len(A.radical_dims) <= A.dimension


def test_is_connected():
    assert is_connected(builtin("q1e", [2]).quiver)
    assert not is_connected(Quiver(["u", "v"], [("a", "u", "u"), ("b", "v", "v")]))
    assert is_connected(builtin("linear_an", [4]).quiver)


def test_associativity(fixture_algebra):
    A = fixture_algebra
    assert A.dimension <= 64
    n = A.dimension
    for i, j, k in itertools.product(range(n), repeat=3):
        x, y, z = ({t: A.field.one()} for t in (i, j, k))
        assert A.mul_vectors(A.mul_vectors(x, y), z) == A.mul_vectors(x, A.mul_vectors(y, z))


def test_identity(fixture_algebra):
    A = fixture_algebra
    one = A.identity_vector()
    for i in range(A.dimension):
        b = {i: A.field.one()}
        assert A.mul_vectors(one, b) == b == A.mul_vectors(b, one)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["q1e:2", "two_loop:2", "truncated_poly:4", "q1e:3"]),
       st.lists(st.tuples(st.text(alphabet="abx", min_size=0, max_size=8), st.integers(-5, 5)), max_size=6))
def test_normal_form_idempotent(which, terms):
    name, r = which.split(":")
    A = quotient(name, int(r))
    letters = "x" if name == "truncated_poly" else "ab"
    F = A.field
    x = {}
    for w, c in terms:
        w = "".join(ch for ch in w if ch in letters)
        p = A.path(*w) if w else A.quiver.trivial(0)
        x[p] = F.add(x.get(p, F.zero()), F.from_int(c))
    x = {p: c for p, c in x.items() if c != 0}
    nf = normal_form(x, A)
    assert normal_form(nf, A) == nf
    assert all(p in A.index for p in nf)


@pytest.mark.parametrize("field", ["F2", "F3", "F4", "F5", "F7"])
def test_dimension_field_independent(field):
    for name, r in [("q1e", 2), ("q1e", 3), ("two_loop", 2)]:
        assert quotient(name, r, field).dimension == quotient(name, r).dimension


def test_multi_vertex_cycle():
    p = parse_presentation("vertices: u, v\narrows: a:u->v, b:v->u\nrelations: a*b*a; b*a*b")
    A = build_quotient(p)
    assert sorted(names(A)) == sorted(["u", "v", "a", "b", "ab", "ba"])
    assert A.radical_dims == (2, 2, 2)


def test_not_finite_within_bound():
    p = parse_presentation("arrows: a:e->e, b:e->e; relations: a*a")
    with pytest.raises(NotFiniteWithinBound):
        build_quotient(p, max_len=6)


def test_not_admissible():
    p = builtin("two_loop", [2])
    object.__setattr__(p, "relations", ({p.quiver.path("a"): p.field.one()},))
    with pytest.raises(NotAdmissible):
        build_quotient(p)


def test_stabilization_is_least():
    A = quotient("q1e", 2)
    assert A.certificate.stabilized_at == 5
    with pytest.raises(NotFiniteWithinBound):
        build_quotient(builtin("q1e", [2]), max_len=4)
