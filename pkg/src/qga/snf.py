"""Smith normal form over the integers, with unimodular transforms."""

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class SNFResult:
    D: list
    U: list
    V: list

    @property
    def rank(self):
        return sum(1 for i in range(min(len(self.D), len(self.D[0]) if self.D else 0)) if self.D[i][i] != 0)

    @property
    def diagonal(self):
        return [self.D[i][i] for i in range(self.rank)]


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M, ncols=None):
    """U*M*V = D with U, V unimodular and d_1 | d_2 | ... on the diagonal.

    Pivot: the entry of least absolute value in the active block, row-major
    on ties.  ``ncols`` is needed only for an empty (0-row) matrix.
    """
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    D = [list(map(int, row)) for row in M]
    U, V = _eye(m), _eye(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        D[dst] = [a + f * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for row in D:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
            if not entries:
                return SNFResult(D, U, V)
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is not None:
                add_row(t, bad, 1)
                continue
            if p < 0:
                D[t] = [-x for x in D[t]]
                U[t] = [-x for x in U[t]]
            break
    return SNFResult(D, U, V)


def int_matmul(A, B):
    if not A:
        return []
    return [[sum(a * B[k][j] for k, a in enumerate(row)) for j in range(len(B[0]))] for row in A]


def int_det(A):
    """Exact determinant via fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def int_inverse(A):
    """Inverse of a unimodular integer matrix."""
    n = len(A)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    out = [row[n:] for row in aug]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


def integer_kernel(M, ncols):
    """Z-basis of {v in Z^ncols : M v = 0}: columns of V past the rank."""
    res = smith_normal_form(M, ncols)
    r = res.rank
    return [[res.V[i][j] for i in range(ncols)] for j in range(r, ncols)]


def lattice_basis(vectors, dim):
    """Z-basis of the lattice spanned by the given integer vectors."""
    if not vectors:
        return []
    res = smith_normal_form(vectors, dim)
    Vinv = int_inverse(res.V)
    return [[res.D[i][i] * x for x in Vinv[i]] for i in range(res.rank)]
