import itertools

import pytest

from conftest import quotient
from qga import linalg
from qga.autos import (SearchSpaceExceeded, candidate_from_images, compose, enumerate_automorphisms,
                       inner_automorphism, is_homomorphism, is_invertible, is_unipotent, search_space_size)


def add(A, *elems):
    F = A.field
    out = {}
    for x in elems:
        for p, c in x.items():
            out[p] = F.add(out.get(p, F.zero()), c)
    return {p: c for p, c in out.items() if c != 0}


def scale(A, c, x):
    return {p: A.field.mul(c, v) for p, v in x.items() if A.field.mul(c, v) != 0}


def one(A):
    return {A.quiver.trivial(v): A.field.one() for v in range(A.quiver.n_vertices)}


def identity_of(A):
    return candidate_from_images(A, {a: A.element(a) for a, _, _ in A.quiver.arrows})


def test_identity_candidate():
    A = quotient("q1e", 2, "F2")
    c = identity_of(A)
    assert c.induced_matrix == linalg.identity(8, A.field)
    assert is_homomorphism(c) and is_invertible(c) and is_unipotent(c)


def test_swap_q1e_2():
    A = quotient("q1e", 2, "F2")
    c = candidate_from_images(A, {"a": A.element("b"), "b": A.element("a")})
    assert is_homomorphism(c) and is_invertible(c) and is_unipotent(c)
    assert c.describe() == "a -> b, b -> a"


def test_scaling_truncated_poly_f3():
    A = quotient("truncated_poly", 3, "F3")
    c = candidate_from_images(A, {"x": scale(A, 2, A.element("x"))})
    assert c.induced_matrix == [[1, 0, 0], [0, 2, 0], [0, 0, 1]]
    assert is_homomorphism(c) and is_invertible(c) and not is_unipotent(c)


def test_non_homomorphism_and_non_invertible():
    A = quotient("two_loop", 2, "F2")
    c = candidate_from_images(A, {"a": add(A, A.element("a"), A.element("b")), "b": A.element("b")})
    assert not is_homomorphism(c)
    with pytest.raises(ValueError):
        is_unipotent(c)
    z = candidate_from_images(A, {"a": {}, "b": A.element("b")})
    assert is_homomorphism(z) and not is_invertible(z)


def test_images_must_be_radical_and_parallel():
    A = quotient("q1e", 2, "F2")
    with pytest.raises(ValueError):
        candidate_from_images(A, {"a": one(A), "b": A.element("b")})
    L = quotient("linear_an", 3, "F2")
    with pytest.raises(ValueError):
        candidate_from_images(L, {"a1": L.element("a2"), "a2": L.element("a2")})


@pytest.mark.parametrize("p, count", [("F2", 1), ("F3", 2), ("F5", 4), ("F4", 3)])
def test_truncated_poly_2_counts(p, count):
    A = quotient("truncated_poly", 2, p)
    cands, rep = enumerate_automorphisms(A)
    assert rep.total_found == len(cands) == count
    assert rep.all_unipotent == (count == 1)


def test_truncated_poly_f3_witness():
    A = quotient("truncated_poly", 2, "F3")
    _, rep = enumerate_automorphisms(A)
    assert [w.describe() for w in rep.witnesses] == ["x -> 2*x"]


def test_truncated_poly_3_f5():
    cands, _ = enumerate_automorphisms(quotient("truncated_poly", 3, "F5"))
    assert len(cands) == 20


def brute_force(A):
    """Every parallel radical image tuple, no pruning."""
    F = A.field
    supports = []
    for a in range(A.quiver.n_arrows):
        s, t = A.quiver.arrow_source(a), A.quiver.arrow_target(a)
        supports.append([k for k, b in enumerate(A.basis) if b.arrows and b.source == s and b.target == t])
    keys = set()
    for choice in itertools.product(*[itertools.product(F.elements(), repeat=len(s)) for s in supports]):
        images = {}
        for (name, _, _), supp, coeffs in zip(A.quiver.arrows, supports, choice):
            images[name] = A.from_vector({k: c for k, c in zip(supp, coeffs) if c != 0})
        c = candidate_from_images(A, images)
        if is_homomorphism(c) and is_invertible(c):
            keys.add(c.key())
    return keys


@pytest.mark.parametrize("name, r, p", [("truncated_poly", 3, "F3"), ("two_loop", 1, "F2"),
                                        ("linear_an", 3, "F3")])
def test_pruned_matches_brute_force(name, r, p):
    A = quotient(name, r, p)
    cands, _ = enumerate_automorphisms(A)
    assert {c.key() for c in cands} == brute_force(A)


def test_q1e_2_f2_count():
    cands, rep = enumerate_automorphisms(quotient("q1e", 2, "F2"))
    assert len(cands) == 512 and rep.all_unipotent and rep.witnesses == ()


@pytest.mark.slow
def test_q1e_2_f2_brute_force():
    A = quotient("q1e", 2, "F2")
    cands, _ = enumerate_automorphisms(A)
    assert {c.key() for c in cands} == brute_force(A)


def test_inner_automorphisms():
    A = quotient("q1e", 2, "F2")
    u = add(A, one(A), A.element("a"))
    c = inner_automorphism(A, u)
    assert is_homomorphism(c) and is_invertible(c) and is_unipotent(c)
    assert inner_automorphism(A, one(A)).induced_matrix == linalg.identity(8, A.field)
    B = quotient("two_loop", 2, "F3")
    assert inner_automorphism(B, scale(B, 2, one(B))).induced_matrix == linalg.identity(B.dimension, B.field)
    with pytest.raises(ValueError):
        inner_automorphism(A, A.element("a"))


def test_group_closure_and_conjugation():
    A = quotient("two_loop", 1, "F3")
    cands, _ = enumerate_automorphisms(A)
    keys = {c.key() for c in cands}
    for c1 in cands[:6]:
        for c2 in cands[:6]:
            prod = compose(c1, c2)
            assert prod.key() in keys
            assert is_homomorphism(prod)
    # unipotence is a conjugation invariant
    u = cands[1]
    inv = next(c for c in cands if compose(c, u).key() == tuple(map(tuple, linalg.identity(A.dimension, A.field))))
    for c in cands[:8]:
        conj = compose(compose(u, c), inv)
        assert is_unipotent(conj) == is_unipotent(c)


@pytest.mark.parametrize("name, r, p", [("two_loop", 1, "F2"), ("truncated_poly", 4, "F3"),
                                        ("linear_an", 3, "F2"), ("q1e", 2, "F2")])
def test_radical_preserved(name, r, p):
    A = quotient(name, r, p)
    cands, _ = enumerate_automorphisms(A)
    rad = [k for k, b in enumerate(A.basis) if b.arrows]
    top = [i for i, b in enumerate(A.basis) if not b.arrows]
    for c in cands:
        assert all(c.induced_matrix[i][j] == 0 for j in rad for i in top)


@pytest.mark.parametrize("n, p", [(2, "F3"), (2, "F5"), (3, "F3"), (4, "F5"), (2, "F7")])
def test_tori_detected(n, p):
    A = quotient("truncated_poly", n, p)
    _, rep = enumerate_automorphisms(A)
    assert not rep.all_unipotent and rep.witnesses


def test_two_loop_f4_not_unipotent():
    _, rep = enumerate_automorphisms(quotient("two_loop", 1, "F4"))
    assert not rep.all_unipotent


def test_search_space_exceeded():
    A = quotient("q1e", 2, "F2")
    assert search_space_size(A) == 2 ** 14
    with pytest.raises(SearchSpaceExceeded) as exc:
        enumerate_automorphisms(A, cap=1000)
    assert exc.value.estimate == 2 ** 14 and exc.value.cap == 1000


def test_rationals_rejected():
    with pytest.raises(ValueError):
        enumerate_automorphisms(quotient("truncated_poly", 2))


def test_parallel_order_matches_serial():
    A = quotient("two_loop", 1, "F3")
    serial, _ = enumerate_automorphisms(A)
    par, _ = enumerate_automorphisms(A, jobs=2)
    assert [c.key() for c in serial] == [c.key() for c in par]
