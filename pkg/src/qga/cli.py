"""qga: gradings and automorphism evidence for quiver algebras.

Exit codes: 0 ok, 1 input/parse error, 2 quotient not finite within
--max-len, 3 invalid flags, 4 automorphism search space over --cap.
"""

import argparse
import json
import sys

from . import __version__
from .algebra import NotAdmissible, NotFiniteWithinBound, build_quotient
from .autos import SearchSpaceExceeded, enumerate_automorphisms
from .fields import get_field
from .gradings import (GradingViolation, grade_algebra, grading_lattice, homogeneity_matrix,
                       ideal_is_homogeneous, is_relation_homogeneous, rigidity_verdict)
from .presentation import PresentationError, load_presentation, parse_builtin_spec

REPORT_VERSION = "qga_report_v1"
FINITE_FIELDS = ("F2", "F3", "F4", "F5", "F7")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class _Fail(Exception):
    def __init__(self, code, message):
        self.code = code
        super().__init__(message)


def _add_input(sp):
    sp.add_argument("file", nargs="?", help="presentation file")
    sp.add_argument("--builtin", metavar="NAME:PARAMS", help="built-in family, e.g. q1e:2")
    sp.add_argument("--json", action="store_true", help="machine-readable report")
    sp.add_argument("--max-len", type=int, default=50, help="path-length bound for the quotient")


def build_parser():
    p = _Parser(prog="qga", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"qga {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="structure, grading lattice and verdict")
    _add_input(a)
    a.add_argument("--field", choices=FINITE_FIELDS, help="also enumerate automorphisms over this field")
    a.add_argument("--cap", type=int, default=2 ** 24)
    a.add_argument("--jobs", type=int, default=1)

    g = sub.add_parser("gradings", help="arrow-grading lattice and homogeneity checks")
    _add_input(g)
    g.add_argument("--witness", action="store_true", help="print a nontrivial grading if one exists")
    g.add_argument("--check", metavar="G1,G2,...", help="degree per arrow, in declaration order")

    au = sub.add_parser("autos", help="enumerate automorphisms over a finite field")
    _add_input(au)
    au.add_argument("--field", choices=FINITE_FIELDS)
    au.add_argument("--cap", type=int, default=2 ** 24)
    au.add_argument("--jobs", type=int, default=1)
    return p


def _load(args):
    if bool(args.file) == bool(args.builtin):
        raise UsageError("give exactly one of FILE or --builtin")
    if args.max_len < 2:
        raise UsageError("--max-len must be at least 2")
    if args.builtin:
        try:
            return parse_builtin_spec(args.builtin)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    try:
        return load_presentation(args.file)
    except OSError as exc:
        raise _Fail(1, f"cannot read {args.file}: {exc.strerror}") from None
    except PresentationError as exc:
        raise _Fail(1, f"{args.file}: {exc}") from None


def _quotient(p, max_len):
    try:
        return build_quotient(p, max_len)
    except (NotFiniteWithinBound, NotAdmissible) as exc:
        raise _Fail(2, str(exc)) from None


def _lattice_json(lat):
    return {
        "arrows": list(lat.arrows),
        "lattice_rank": lat.rank,
        "kernel_basis": [list(v) for v in lat.kernel_basis],
        "shift_basis": [list(v) for v in lat.shift_basis],
        "class_invariants": {"rank": lat.class_rank, "torsion": list(lat.torsion)},
    }


def _autos(A, cap, jobs):
    if jobs < 1:
        raise UsageError("--jobs must be positive")
    try:
        cands, report = enumerate_automorphisms(A, cap=cap, jobs=jobs)
    except SearchSpaceExceeded as exc:
        raise _Fail(4, str(exc)) from None
    return {
        "field": report.field,
        "count": report.total_found,
        "all_unipotent": report.all_unipotent,
        "witnesses": [w.describe() for w in report.witnesses],
        "evidence_note": report.evidence_note,
    }


def _fmt_vecs(vs):
    return ", ".join("(" + ", ".join(map(str, v)) + ")" for v in vs) or "(none)"


def _yn(b):
    return "yes" if b else "no"


def cmd_analyze(args):
    p = _load(args)
    if args.field:
        p = p.with_field(get_field(args.field))
    A = _quotient(p, args.max_len)
    lat = grading_lattice(p)
    v = rigidity_verdict(p, lat)
    autos = _autos(A, args.cap, args.jobs) if args.field else None
    rep = {
        "version": REPORT_VERSION,
        "command": "analyze",
        "algebra": p.name,
        "field": p.field.name,
        "dimension": A.dimension,
        "basis": A.basis_str(),
        "radical_dims": list(A.radical_dims),
        "stabilized_at": A.certificate.stabilized_at,
        "connected": v.connected,
        "one_vertex": v.one_vertex,
        **_lattice_json(lat),
        "verdict": v.verdict.value,
        "witness": list(v.witness) if v.witness else None,
        "shift_witness": list(v.shift_witness) if v.shift_witness else None,
        "scope": v.scope,
        "automorphisms": autos,
    }
    if args.json:
        return json.dumps(rep, indent=2)
    lines = [
        f"algebra: {p.name} (field {p.field.name})",
        f"dimension: {A.dimension}",
        f"basis: {' '.join(rep['basis'])}",
        f"radical layers: {' '.join(map(str, A.radical_dims))}",
        f"connected: {_yn(v.connected)}",
        f"one vertex: {_yn(v.one_vertex)}",
        f"arrow-grading lattice rank: {lat.rank}",
        f"kernel basis: {_fmt_vecs(lat.kernel_basis)}",
        f"shift sublattice rank: {lat.shift_rank}",
        f"class invariants: rank {lat.class_rank}, torsion {list(lat.torsion) or 'none'}",
        f"verdict: {v.verdict.value}",
    ]
    if v.witness:
        lines.append(f"witness: {_fmt_vecs([v.witness])}")
    if v.shift_witness:
        lines.append(f"shift witness (Morita-equivalent to trivial): {_fmt_vecs([v.shift_witness])}")
    if autos:
        lines += _autos_lines(autos)
    return "\n".join(lines)


def _autos_lines(au):
    lines = [
        f"automorphisms over {au['field']}: {au['count']}",
        f"all_unipotent: {str(au['all_unipotent']).lower()}",
    ]
    for w in au["witnesses"][:5]:
        lines.append(f"  non-unipotent: {w}")
    lines.append(f"({au['evidence_note']})")
    return lines


def cmd_gradings(args):
    p = _load(args)
    q = p.quiver
    g = None
    if args.check is not None:
        try:
            g = [int(x) for x in args.check.split(",")]
        except ValueError:
            raise UsageError("--check needs comma-separated integers") from None
        if len(g) != q.n_arrows:
            raise UsageError(f"--check needs {q.n_arrows} degrees, one per arrow")
    lat = grading_lattice(p)
    v = rigidity_verdict(p, lat)
    check = None
    if g is not None:
        A = _quotient(p, args.max_len)
        rel_ok = is_relation_homogeneous(p, g)
        ideal_ok = ideal_is_homogeneous(A, g)
        dims, violation = None, None
        try:
            dims = grade_algebra(A, g).graded_dims
        except GradingViolation as exc:
            violation = str(exc)
        check = {
            "assignment": g,
            "relation_homogeneous": rel_ok,
            "ideal_homogeneous": ideal_ok,
            "graded_dims": {str(k): n for k, n in dims.items()} if dims is not None else None,
            "grading_violation": violation,
        }
    rep = {
        "version": REPORT_VERSION,
        "command": "gradings",
        "algebra": p.name,
        "homogeneity_matrix": homogeneity_matrix(p),
        **_lattice_json(lat),
        "verdict": v.verdict.value,
        "witness": list(v.witness) if v.witness else None,
        "shift_witness": list(v.shift_witness) if v.shift_witness else None,
        "check": check,
    }
    if args.json:
        return json.dumps(rep, indent=2)
    lines = [
        f"algebra: {p.name}",
        f"arrows: {', '.join(lat.arrows)}",
        f"kernel rank: {lat.rank}",
        f"kernel basis: {_fmt_vecs(lat.kernel_basis)}",
        f"shift sublattice: {_fmt_vecs(lat.shift_basis)}",
        f"class rank: {lat.class_rank}",
        f"torsion: {list(lat.torsion) or 'none'}",
        f"verdict: {v.verdict.value}",
    ]
    if args.witness:
        lines.append(f"witness: {_fmt_vecs([v.witness]) if v.witness else '(none)'}")
        if v.shift_witness:
            lines.append(f"shift witness: {_fmt_vecs([v.shift_witness])}")
    if check:
        bad = [str(i + 1) for i, ok in enumerate(check["relation_homogeneous"]) if not ok]
        if bad:
            lines.append(f"homogeneous: no (relation {bad[0]})")
            lines.append(f"non-homogeneous relations: {', '.join(bad)}")
        else:
            lines.append("homogeneous: yes")
        lines.append(f"ideal homogeneous: {_yn(check['ideal_homogeneous'])}")
        if check["graded_dims"] is not None:
            lines.append("graded dims: " + ", ".join(f"{k}:{n}" for k, n in check["graded_dims"].items()))
        else:
            lines.append(f"grading violation: {check['grading_violation']}")
    return "\n".join(lines)


def cmd_autos(args):
    p = _load(args)
    name = args.field or (p.field.name if p.field.is_finite() else "F2")
    p = p.with_field(get_field(name))
    A = _quotient(p, args.max_len)
    au = _autos(A, args.cap, args.jobs)
    rep = {
        "version": REPORT_VERSION,
        "command": "autos",
        "algebra": p.name,
        "dimension": A.dimension,
        "automorphisms": au,
    }
    if args.json:
        return json.dumps(rep, indent=2)
    return "\n".join([f"algebra: {p.name}", f"dimension: {A.dimension}"] + _autos_lines(au))


COMMANDS = {"analyze": cmd_analyze, "gradings": cmd_gradings, "autos": cmd_autos}


def run(argv=None):
    """Returns (exit code, stdout text, stderr text)."""
    try:
        args = build_parser().parse_args(argv)
        return 0, COMMANDS[args.command](args) + "\n", ""
    except UsageError as exc:
        return 3, "", f"qga: error: {exc}\n"
    except _Fail as exc:
        return exc.code, "", f"qga: {exc}\n"


def main(argv=None):
    try:
        code, out, err = run(argv)
    except SystemExit as exc:  # --help / --version
        return exc.code or 0
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
