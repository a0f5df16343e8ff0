"""Arrow gradings: the homogeneity lattice, the vertex-shift action and
verification of graded structure on the quotient algebra.

A degree assignment is a list of integers, one per arrow in declaration
order; vertices sit in degree 0.
"""

from dataclasses import dataclass
from enum import Enum

from . import snf
from .algebra import is_connected, reduces_to_zero


class GradingViolation(Exception):
    def __init__(self, left, right, out, degrees):
        self.triple = (left, right, out)
        super().__init__(
            f"{left} * {right} has a component {out} of degree {degrees[2]}, expected {degrees[0]} + {degrees[1]}")


class Verdict(str, Enum):
    RIGID = "rigid-arrow-gradings"
    NONTRIVIAL = "nontrivial-grading-exists"
    SHIFT_TRIVIAL = "all-gradings-shift-trivial"


@dataclass(frozen=True)
class GradingLattice:
    arrows: tuple
    kernel_basis: tuple  # Z-basis of the homogeneous assignments
    shift_basis: tuple  # Z-basis of the vertex-shift sublattice
    class_rank: int
    torsion: tuple  # invariant factors > 1 of kernel / shift

    @property
    def rank(self):
        return len(self.kernel_basis)

    @property
    def shift_rank(self):
        return len(self.shift_basis)


@dataclass(frozen=True)
class GradedStructure:
    degrees: dict  # basis Path -> degree
    graded_dims: dict  # degree -> number of basis paths


@dataclass(frozen=True)
class RigidityVerdict:
    connected: bool
    one_vertex: bool
    lattice_rank: int
    class_rank: int
    verdict: Verdict
    witness: tuple = None  # kernel vector outside the shift sublattice
    shift_witness: tuple = None  # nonzero grading obtained by shifting the trivial one
    scope: str = "arrow gradings"


def _terms(rel, quiver):
    return sorted(rel, key=quiver.sort_key)


def homogeneity_matrix(p):
    """One row per (relation, term i >= 2): counts(term 1) - counts(term i).

    Terms are taken in length-lex order; monomial relations give no rows.
    """
    q = p.quiver
    rows = []
    for rel in p.relations:
        terms = _terms(rel, q)
        first = q.arrow_counts(terms[0])
        for t in terms[1:]:
            rows.append([a - b for a, b in zip(first, q.arrow_counts(t))])
    return rows


def shift_vector(q, d):
    """Arrow-degree change induced by vertex shifts d: d(target) - d(source)."""
    return [d[q.arrow_target(i)] - d[q.arrow_source(i)] for i in range(q.n_arrows)]


def apply_shift(q, g, d):
    if isinstance(d, dict):
        d = [d[v] for v in q.vertices]
    if len(d) != q.n_vertices:
        raise ValueError("shift needs one integer per vertex")
    return [a + s for a, s in zip(g, shift_vector(q, d))]


def grading_lattice(p):
    q = p.quiver
    n = q.n_arrows
    M = homogeneity_matrix(p)
    kernel = snf.integer_kernel(M, n)
    shifts = [shift_vector(q, [int(v == w) for w in range(q.n_vertices)]) for v in range(q.n_vertices)]
    shift_basis = snf.lattice_basis([s for s in shifts if any(s)], n)

    # coordinates of the shift basis in the kernel basis
    torsion = ()
    if kernel and shift_basis:
        full = snf.smith_normal_form(M, n)
        Vinv = snf.int_inverse(full.V)
        r = full.rank
        coords = []
        for s in shift_basis:
            c = [sum(Vinv[i][j] * s[j] for j in range(n)) for i in range(n)]
            if any(c[:r]):
                raise AssertionError("shift vector outside the homogeneity kernel")
            coords.append(c[r:])
        inv = snf.smith_normal_form(coords).diagonal
        torsion = tuple(d for d in inv if d > 1)
    return GradingLattice(
        arrows=tuple(a[0] for a in q.arrows),
        kernel_basis=tuple(tuple(v) for v in kernel),
        shift_basis=tuple(tuple(v) for v in shift_basis),
        class_rank=len(kernel) - len(shift_basis),
        torsion=torsion,
    )


def in_lattice(v, basis, dim):
    """Is the integer vector v in the Z-span of basis?"""
    if not any(v):
        return True
    if not basis:
        return False
    res = snf.smith_normal_form([list(b) for b in basis], dim)
    # v = c * B  <=>  v * V = (c U^-1) D
    w = [sum(v[i] * res.V[i][j] for i in range(dim)) for j in range(dim)]
    r = res.rank
    return all(w[j] == 0 for j in range(r, dim)) and all(w[j] % res.D[j][j] == 0 for j in range(r))


def path_degree(path, g):
    return sum(g[i] for i in path.arrows)


def is_relation_homogeneous(p, g):
    return [len({path_degree(path, g) for path in rel}) == 1 for rel in p.relations]


def homogeneous_components(rel, g):
    comps = {}
    for path, c in rel.items():
        comps.setdefault(path_degree(path, g), {})[path] = c
    return comps


def ideal_is_homogeneous(A, g):
    """Every homogeneous component of every relation lies in the ideal."""
    for rel in A.presentation.relations:
        for comp in homogeneous_components(rel, g).values():
            if not reduces_to_zero(comp, A):
                return False
    return True


def grade_algebra(A, g):
    g = list(g)
    if len(g) != A.quiver.n_arrows:
        raise ValueError("degree assignment needs one integer per arrow")
    deg = [path_degree(b, g) for b in A.basis]
    for (i, j), prod in A.structure_constants.items():
        for k in prod:
            if deg[k] != deg[i] + deg[j]:
                names = [A.quiver.path_str(A.basis[x]) for x in (i, j, k)]
                raise GradingViolation(*names, (deg[i], deg[j], deg[k]))
    dims = {}
    for d in deg:
        dims[d] = dims.get(d, 0) + 1
    return GradedStructure({b: d for b, d in zip(A.basis, deg)}, dict(sorted(dims.items())))


def rigidity_verdict(p, lattice=None):
    q = p.quiver
    lat = lattice or grading_lattice(p)
    connected = is_connected(q)
    one_vertex = q.n_vertices == 1
    witness = None
    for v in lat.kernel_basis:
        if not in_lattice(v, lat.shift_basis, q.n_arrows):
            witness = v
            break
    shift_witness = None
    if q.n_vertices > 1 and q.n_arrows:
        # shift the trivial grading at the target of the first arrow
        d = [0] * q.n_vertices
        d[q.arrow_target(0)] = 1
        if q.arrow_source(0) == q.arrow_target(0):
            d = [0] * q.n_vertices
            other = next((i for i in range(q.n_arrows) if q.arrow_source(i) != q.arrow_target(i)), None)
            if other is not None:
                d[q.arrow_target(other)] = 1
        shift_witness = tuple(apply_shift(q, [0] * q.n_arrows, d))
        if not any(shift_witness):
            shift_witness = None
    if lat.rank == 0 and one_vertex:
        verdict = Verdict.RIGID
    elif lat.class_rank > 0 or lat.torsion:
        verdict = Verdict.NONTRIVIAL
    else:
        verdict = Verdict.SHIFT_TRIVIAL
    return RigidityVerdict(connected, one_vertex, lat.rank, lat.class_rank, verdict, witness, shift_witness)
