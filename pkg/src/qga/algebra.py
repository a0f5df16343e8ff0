"""The finite-dimensional quotient A = kQ/I.

Construction: for L = 1, 2, ... compute the span S_L of all two-sided
multiples u*rel*w of the relations, truncated to paths of length <= L
(that is, the image of I in kQ / J^(L+1), J the arrow ideal).  Each spanning
element is keyed on its *shortest* term (ties: lexicographically largest in
arrow declaration order), so reductions replace a path by longer paths or by
same-length paths that come earlier in lex order.  The quotient basis is the
set of paths that are never a key.  We stop at the first L where every path
of length L is a key, i.e. J^L lies in I + J^(L+1); for an admissible ideal
this means J^L lies in I and the truncation is exact.

With that ordering, rad^k A is spanned by the basis paths of length >= k.
"""

from dataclasses import dataclass, field as dc_field

from . import linalg
from .presentation import Path, Quiver


class NotFiniteWithinBound(Exception):
    def __init__(self, max_len):
        self.max_len = max_len
        super().__init__(f"quotient did not stabilize within path length {max_len}")


class NotAdmissible(Exception):
    pass


@dataclass(frozen=True)
class StabilizationCertificate:
    stabilized_at: int
    verified_closure: bool


def _rkey(p):
    return (len(p.arrows), tuple(-i for i in p.arrows))


def _truncate(x, L):
    return {p: c for p, c in x.items() if len(p.arrows) <= L}


class _IdealEchelon:
    """Sparse echelon basis of S_L, one row per key path (key coefficient 1)."""

    def __init__(self, quiver, F, L):
        self.q, self.F, self.L = quiver, F, L
        self.rows = {}

    def reduce(self, f):
        F, rows = self.F, self.rows
        f = dict(f)
        while f:
            pv = min(f, key=_rkey)
            row = rows.get(pv)
            if row is None:
                return f, pv
            c = f[pv]
            for p, d in row.items():
                v = F.sub(f.get(p, F.zero()), F.mul(c, d))
                if v == 0:
                    f.pop(p, None)
                else:
                    f[p] = v
        return f, None

    def close(self, generators):
        q, F, L = self.q, self.F, self.L
        arrows = [q.arrow_path(i) for i in range(q.n_arrows)]
        queue = [_truncate(g, L) for g in generators]
        while queue:
            f, pv = self.reduce(queue.pop())
            if not f:
                continue
            inv = F.inv(f[pv])
            f = {p: F.mul(inv, c) for p, c in f.items()}
            self.rows[pv] = f
            for a in arrows:
                left = {}
                right = {}
                for p, c in f.items():
                    if len(p.arrows) >= L:
                        continue
                    r = q.compose(a, p)
                    if r is not None:
                        left[r] = c
                    r = q.compose(p, a)
                    if r is not None:
                        right[r] = c
                if left:
                    queue.append(left)
                if right:
                    queue.append(right)

    def keys_of_length(self, n):
        return sum(1 for p in self.rows if len(p.arrows) == n)


@dataclass(frozen=True, eq=False)
class QuotientAlgebra:
    presentation: object
    basis: tuple
    truncation_length: int
    certificate: StabilizationCertificate
    # right[a][j]: sparse vector (dict index -> scalar) of basis_j * arrow_a
    right: tuple = dc_field(repr=False)
    left: tuple = dc_field(repr=False)
    structure_constants: dict = dc_field(repr=False)
    radical_dims: tuple = ()
    index: dict = dc_field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {p: i for i, p in enumerate(self.basis)})

    @property
    def dimension(self):
        return len(self.basis)

    @property
    def field(self):
        return self.presentation.field

    @property
    def quiver(self):
        return self.presentation.quiver

    def path(self, *names):
        return self.quiver.path(*names)

    def element(self, *names):
        """Element for a single path given by arrow names (normalized)."""
        return normal_form({self.path(*names): self.field.one()}, self)

    def basis_str(self):
        return [self.quiver.path_str(p) for p in self.basis]

    def element_str(self, x):
        from .presentation import element_str
        return element_str(self.quiver, x, self.field)

    # sparse-vector layer, indices into self.basis
    def to_vector(self, x):
        return _element_to_vector(x, self)

    def from_vector(self, v):
        return {self.basis[i]: c for i, c in v.items() if c != 0}

    def identity_vector(self):
        one = self.field.one()
        return {self.index[self.quiver.trivial(v)]: one for v in range(self.quiver.n_vertices)}

    def mul_vectors(self, x, y):
        F = self.field
        out = {}
        sc = self.structure_constants
        for i, a in x.items():
            for j, b in y.items():
                prod = sc.get((i, j))
                if prod is None:
                    continue
                ab = F.mul(a, b)
                for k, c in prod.items():
                    v = F.add(out.get(k, F.zero()), F.mul(ab, c))
                    if v == 0:
                        out.pop(k, None)
                    else:
                        out[k] = v
        return out

    def apply_right_arrow(self, v, a):
        return _apply(self.right[a], v, self.field)

    def apply_left_arrow(self, v, a):
        return _apply(self.left[a], v, self.field)


def _apply(action, v, F):
    out = {}
    for j, c in v.items():
        for k, d in action[j].items():
            val = F.add(out.get(k, F.zero()), F.mul(c, d))
            if val == 0:
                out.pop(k, None)
            else:
                out[k] = val
    return out


def _path_image(A, p, start=None):
    """Vector of (start * p); start defaults to the trivial path at source(p)."""
    if start is None:
        start = {A.index[A.quiver.trivial(p.source)]: A.field.one()}
    v = start
    for a in p.arrows:
        if not v:
            break
        v = A.apply_right_arrow(v, a)
    return v


def _element_to_vector(x, A):
    F = A.field
    out = {}
    for p, c in x.items():
        for k, d in _path_image(A, p).items():
            val = F.add(out.get(k, F.zero()), F.mul(c, d))
            if val == 0:
                out.pop(k, None)
            else:
                out[k] = val
    return out


def build_quotient(p, max_len=50):
    q, F = p.quiver, p.field
    for k, rel in enumerate(p.relations):
        if not rel or any(len(path.arrows) < 2 for path in rel):
            raise NotAdmissible(f"relation {k + 1} is not contained in the square of the arrow ideal")
        if len({(path.source, path.target) for path in rel}) != 1:
            raise NotAdmissible(f"relation {k + 1} has non-parallel paths")
    for L in range(1, max_len + 1):
        ech = _IdealEchelon(q, F, L)
        ech.close(p.relations)
        if ech.keys_of_length(L) == q.count_paths(L):
            return _assemble(p, ech, L)
    raise NotFiniteWithinBound(max_len)


def _assemble(p, ech, L):
    q, F = p.quiver, p.field
    rows = ech.rows
    basis = tuple(path for n in range(L) for path in q.paths_of_length(n) if path not in rows)
    index = {path: i for i, path in enumerate(basis)}
    memo = {}

    def nf(path):
        # vector of a path of length <= L
        if path in memo:
            return memo[path]
        if path in index:
            out = {index[path]: F.one()}
        else:
            out = {}
            for t, c in rows[path].items():
                if t == path:
                    continue
                for k, d in nf(t).items():
                    val = F.sub(out.get(k, F.zero()), F.mul(c, d))
                    if val == 0:
                        out.pop(k, None)
                    else:
                        out[k] = val
        memo[path] = out
        return out

    right, left = [], []
    closed = True
    for a in range(q.n_arrows):
        ap = q.arrow_path(a)
        r_a, l_a = [], []
        for b in basis:
            for side, prod in ((r_a, q.compose(b, ap)), (l_a, q.compose(ap, b))):
                if prod is None:
                    side.append({})
                    continue
                if len(prod.arrows) > L:
                    closed = False
                    side.append({})
                    continue
                v = nf(prod)
                closed = closed and all(k < len(basis) for k in v)
                side.append(v)
        right.append(tuple(r_a))
        left.append(tuple(l_a))

    A = QuotientAlgebra(p, basis, L, StabilizationCertificate(L, False),
                        tuple(right), tuple(left), {}, ())
    # structure constants b_i * b_j via the right action of the arrows of b_j
    sc = {}
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            if bi.target != bj.source:
                continue
            v = _path_image(A, bj, {i: F.one()})
            if v:
                sc[(i, j)] = v
    object.__setattr__(A, "structure_constants", sc)
    ok = closed and _module_check(A)
    object.__setattr__(A, "certificate", StabilizationCertificate(L, ok))
    if not ok:
        raise RuntimeError("quotient basis failed its closure/module certificate")
    object.__setattr__(A, "radical_dims", tuple(radical_series(A)))
    return A


def _module_check(A):
    """The right arrow action makes span(basis) a cyclic A-module with b = 1*b."""
    F = A.field
    for i, b in enumerate(A.basis):
        if _path_image(A, b) != {i: F.one()}:
            return False
    for rel in A.presentation.relations:
        for i in range(A.dimension):
            out = {}
            for path, c in rel.items():
                if A.basis[i].target != path.source:
                    continue
                for k, d in _path_image(A, path, {i: F.one()}).items():
                    out[k] = F.add(out.get(k, F.zero()), F.mul(c, d))
            if any(v != 0 for v in out.values()):
                return False
    return True


def normal_form(x, A):
    """Unique basis representative of x (any path length is accepted)."""
    return A.from_vector(A.to_vector(x))


def multiply(x, y, A):
    return A.from_vector(A.mul_vectors(A.to_vector(x), A.to_vector(y)))


def reduces_to_zero(x, A):
    return not A.to_vector(x)


def _span_basis(vectors, n, F):
    dense = [[v.get(k, F.zero()) for k in range(n)] for v in vectors]
    R, piv = linalg.row_reduce(dense, F)
    return [{k: c for k, c in enumerate(row) if c != 0} for row in R[:len(piv)]]


def radical_series(A):
    """Dimensions of rad^i / rad^(i+1), with rad^(i+1) = rad^i * (arrows)."""
    F, n = A.field, A.dimension
    current = _span_basis([{k: F.one()} for k in range(n)], n, F)
    dims = []
    while current:
        nxt = [A.apply_right_arrow(v, a) for v in current for a in range(A.quiver.n_arrows)]
        nxt = _span_basis([v for v in nxt if v], n, F)
        dims.append(len(current) - len(nxt))
        current = nxt
    return dims


def socle(A):
    """Basis of the two-sided annihilator of the radical, as elements."""
    F, n = A.field, A.dimension
    rows = []
    for a in range(A.quiver.n_arrows):
        for action in (A.right[a], A.left[a]):
            # x -> x*a (resp. a*x) as a matrix with columns indexed by basis
            for k in range(n):
                rows.append([action[j].get(k, F.zero()) for j in range(n)])
    null = linalg.nullspace(rows, F, ncols=n)
    return [A.from_vector({k: c for k, c in enumerate(v) if c != 0}) for v in null]


def is_connected(q):
    parent = list(range(q.n_vertices))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i in range(q.n_arrows):
        parent[find(q.arrow_source(i))] = find(q.arrow_target(i))
    return len({find(v) for v in range(q.n_vertices)}) <= 1
