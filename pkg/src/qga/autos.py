"""Automorphisms of A = kQ/I over a finite field, and unipotence checks.

Every candidate fixes the trivial paths and sends each arrow into the
radical, parallel to itself.  Results over F_q are evidence about the
algebraically closed case, not a proof.
"""

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from . import linalg


class SearchSpaceExceeded(Exception):
    def __init__(self, estimate, cap):
        self.estimate, self.cap = estimate, cap
        super().__init__(f"search space of {estimate} arrow-image tuples exceeds cap {cap}")


@dataclass(frozen=True, eq=False)
class AutomorphismCandidate:
    algebra: object = dc_field(repr=False)
    images: dict  # arrow name -> element
    induced_matrix: list = dc_field(repr=False)  # column j = image of basis_j

    def describe(self):
        A = self.algebra
        return ", ".join(f"{a} -> {A.element_str(x)}" for a, x in self.images.items())

    def key(self):
        return tuple(tuple(row) for row in self.induced_matrix)


@dataclass(frozen=True)
class UnipotenceReport:
    field: str
    total_found: int
    all_unipotent: bool
    witnesses: tuple = ()
    evidence_note: str = "finite-field evidence, not a proof over an algebraically closed field"


def _radical_support(A, arrow):
    q = A.quiver
    s, t = q.arrow_source(arrow), q.arrow_target(arrow)
    return [k for k, b in enumerate(A.basis) if b.arrows and b.source == s and b.target == t]


def _candidate_from_vectors(A, vecs):
    """vecs[a]: sparse image vector of arrow a; builds the induced matrix."""
    F, n = A.field, A.dimension
    images = []
    for b in A.basis:
        if not b.arrows:
            images.append({A.index[b]: F.one()})
            continue
        v = vecs[b.arrows[0]]
        for a in b.arrows[1:]:
            if not v:
                break
            v = A.mul_vectors(v, vecs[a])
        images.append(v)
    M = [[images[j].get(k, F.zero()) for j in range(n)] for k in range(n)]
    names = [a[0] for a in A.quiver.arrows]
    return AutomorphismCandidate(A, {names[a]: A.from_vector(vecs[a]) for a in range(len(names))}, M)


def candidate_from_images(A, images):
    q = A.quiver
    vecs = []
    for a, (name, _, _) in enumerate(q.arrows):
        x = images.get(name, images.get(a))
        if x is None:
            raise ValueError(f"no image given for arrow {name}")
        v = A.to_vector(x)
        allowed = set(_radical_support(A, a))
        bad = [A.basis[k] for k in v if k not in allowed]
        if bad:
            b = bad[0]
            if not b.arrows:
                raise ValueError(f"image of {name} is not in the radical")
            raise ValueError(f"image of {name} is not parallel to {name}")
        vecs.append(v)
    return _candidate_from_vectors(A, vecs)


def _relations_hold(A, vecs, relations):
    F = A.field
    for rel in relations:
        total = {}
        for path, c in rel.items():
            v = vecs[path.arrows[0]]
            for a in path.arrows[1:]:
                if not v:
                    break
                v = A.mul_vectors(v, vecs[a])
            for k, d in v.items():
                total[k] = F.add(total.get(k, F.zero()), F.mul(c, d))
        if any(x != 0 for x in total.values()):
            return False
    return True


def is_homomorphism(c, A=None):
    A = A or c.algebra
    vecs = [A.to_vector(c.images[name]) for name, _, _ in A.quiver.arrows]
    return _relations_hold(A, vecs, A.presentation.relations)


def is_invertible(c):
    return linalg.rank(c.induced_matrix, c.algebra.field) == len(c.induced_matrix)


def is_unipotent(c, check=True):
    A = c.algebra
    F, n = A.field, A.dimension
    if check and not (is_invertible(c) and is_homomorphism(c, A)):
        raise ValueError("is_unipotent needs an automorphism")
    N = linalg.matsub(c.induced_matrix, linalg.identity(n, F), F)
    return linalg.is_zero_matrix(linalg.matpow(N, n, F))


def compose(c1, c2):
    """c1 after c2, as a candidate with the product matrix."""
    A = c1.algebra
    M = linalg.matmul(c1.induced_matrix, c2.induced_matrix, A.field)
    images = {}
    for name, _, _ in A.quiver.arrows:
        k = A.index[A.quiver.path(name)]
        images[name] = A.from_vector({i: M[i][k] for i in range(A.dimension) if M[i][k] != 0})
    return AutomorphismCandidate(A, images, M)


def inner_automorphism(A, u):
    """x -> u x u^-1."""
    F, n = A.field, A.dimension
    uv = A.to_vector(u)
    # column j of the left-multiplication matrix is u * b_j
    L = [[0] * n for _ in range(n)]
    for j in range(n):
        col = A.mul_vectors(uv, {j: F.one()})
        for k in range(n):
            L[k][j] = col.get(k, F.zero())
    one = A.identity_vector()
    inv = linalg.solve(L, [one.get(k, F.zero()) for k in range(n)], F)
    if inv is None:
        raise ValueError("element is not invertible")
    inv = {k: c for k, c in enumerate(inv) if c != 0}
    if A.mul_vectors(inv, uv) != one:
        raise ValueError("element is not invertible")
    vecs = []
    for a in range(A.quiver.n_arrows):
        av = {A.index[A.quiver.arrow_path(a)]: F.one()}
        vecs.append(A.mul_vectors(A.mul_vectors(uv, av), inv))
    images = {A.quiver.arrows[a][0]: A.from_vector(v) for a, v in enumerate(vecs)}
    return candidate_from_images(A, images)


# ---------------------------------------------------------------- enumeration

def search_space_size(A):
    q = A.field.order
    size = 1
    for a in range(A.quiver.n_arrows):
        size *= q ** len(_radical_support(A, a))
    return size


class _Search:
    def __init__(self, A):
        self.A = A
        q = A.quiver
        F = A.field
        self.arrow_index = [A.index[q.arrow_path(a)] for a in range(q.n_arrows)]
        self.options = []
        for a in range(q.n_arrows):
            supp = _radical_support(A, a)
            opts = []
            for coeffs in itertools.product(F.elements(), repeat=len(supp)):
                v = {k: c for k, c in zip(supp, coeffs) if c != 0}
                # top part (arrow coefficients) must be nonzero for invertibility
                if any(k in v for k in self.arrow_index):
                    opts.append(v)
            self.options.append(opts)
        # relation k is checked once all of its arrows are assigned
        self.checks = [[] for _ in range(q.n_arrows)]
        for rel in A.presentation.relations:
            last = max(i for path in rel for i in path.arrows)
            self.checks[last].append(rel)
        self.classes = {}
        for a in range(q.n_arrows):
            self.classes.setdefault((q.arrow_source(a), q.arrow_target(a)), []).append(a)

    def tops_independent(self, vecs, a):
        q, F = self.A.quiver, self.A.field
        cls = [b for b in self.classes[(q.arrow_source(a), q.arrow_target(a))] if b <= a]
        if len(cls) == 1:
            return True
        cols = [self.arrow_index[b] for b in cls]
        rows = [[vecs[b].get(k, F.zero()) for k in cols] for b in cls]
        return linalg.rank(rows, F) == len(cls)

    def run(self, first_options=None):
        """Yield (option-index tuple, image vectors) of automorphisms in search order."""
        n = self.A.quiver.n_arrows
        vecs = [None] * n
        idx = [0] * n

        def rec(a):
            if a == n:
                yield tuple(idx), list(vecs)
                return
            opts = self.options[a]
            choices = first_options if (a == 0 and first_options is not None) else range(len(opts))
            for i in choices:
                vecs[a] = opts[i]
                idx[a] = i
                if not self.tops_independent(vecs, a):
                    continue
                if not _relations_hold(self.A, vecs, self.checks[a]):
                    continue
                yield from rec(a + 1)

        yield from rec(0)


def _worker(args):
    A, chunk = args
    return list(_Search(A).run(chunk))


def enumerate_automorphisms(A, cap=2 ** 24, jobs=1):
    """All automorphisms fixing the trivial paths, plus a unipotence report."""
    F = A.field
    if not F.is_finite():
        raise ValueError("automorphism enumeration needs a finite field")
    estimate = search_space_size(A)
    if estimate > cap:
        raise SearchSpaceExceeded(estimate, cap)
    if A.quiver.n_arrows == 0:
        found = [((), [])]
    elif jobs > 1:
        search = _Search(A)
        n0 = len(search.options[0])
        chunks = [list(range(j, n0, jobs)) for j in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            found = [r for part in pool.map(_worker, [(A, c) for c in chunks]) for r in part]
        found.sort(key=lambda r: r[0])
    else:
        found = list(_Search(A).run())
    candidates = []
    witnesses = []
    for _, vecs in found:
        c = _candidate_from_vectors(A, vecs)
        if not is_invertible(c):
            continue
        candidates.append(c)
        if not is_unipotent(c, check=False):
            witnesses.append(c)
    report = UnipotenceReport(F.name, len(candidates), not witnesses, tuple(witnesses))
    return candidates, report
