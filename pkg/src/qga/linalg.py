"""Dense exact linear algebra over a `Field`. Matrices are lists of rows."""


def identity(n, F):
    zero, one = F.zero(), F.one()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(m, n, F):
    z = F.zero()
    return [[z] * n for _ in range(m)]


def matmul(A, B, F):
    if not A:
        return []
    n, p = len(B), len(B[0]) if B else 0
    zero = F.zero()
    out = []
    for row in A:
        acc = [zero] * p
        for k in range(n):
            a = row[k]
            if a == 0:
                continue
            Bk = B[k]
            for j in range(p):
                if Bk[j] != 0:
                    acc[j] = F.add(acc[j], F.mul(a, Bk[j]))
        out.append(acc)
    return out


def matvec(A, v, F):
    return [row[0] for row in matmul(A, [[x] for x in v], F)]


def matsub(A, B, F):
    return [[F.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def is_zero_matrix(A):
    return all(x == 0 for row in A for x in row)


def matpow(A, k, F):
    result = identity(len(A), F)
    base = A
    while k:
        if k & 1:
            result = matmul(result, base, F)
        k >>= 1
        if k:
            base = matmul(base, base, F)
    return result


def row_reduce(M, F):
    """Reduced row echelon form. Returns (R, pivot_columns); M is not modified."""
    R = [list(row) for row in M]
    if not R:
        return R, []
    ncols = len(R[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, x) for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R, pivots


def rank(M, F):
    return len(row_reduce(M, F)[1])


def nullspace(M, F, ncols=None):
    """Basis of {x : M x = 0} as a list of vectors."""
    if not M:
        return [[F.one() if i == j else F.zero() for i in range(ncols)] for j in range(ncols)]
    R, pivots = row_reduce(M, F)
    n = len(M[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [F.zero()] * n
        v[f] = F.one()
        for row, pc in zip(R, pivots):
            v[pc] = F.neg(row[f])
        basis.append(v)
    return basis


def solve(M, b, F):
    """One solution x of M x = b, or None when the system is inconsistent."""
    n = len(M[0]) if M else 0
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, pivots = row_reduce(aug, F)
    if n in pivots:
        return None
    x = [F.zero()] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x
