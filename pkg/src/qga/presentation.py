"""Quivers with relations: data model, text format, built-in families.

Paths compose left to right: in ``a*b`` the arrow ``a`` is traversed first,
so ``a*b`` exists only when target(a) == source(b).

Algebra elements are plain dicts mapping `Path` to a nonzero field scalar.
"""

import re
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple

from .fields import get_field, Field


class PresentationError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.line, self.col = line, col
        if line is not None:
            message = f"line {line}, column {col}: {message}"
        super().__init__(message)


class Path(NamedTuple):
    """A path in a quiver; ``arrows`` holds arrow indices, empty for a trivial path."""

    source: int
    target: int
    arrows: tuple = ()

    def __len__(self):
        return len(self.arrows)

    @property
    def length(self):
        return len(self.arrows)


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # of (name, source name, target name)
    _vindex: dict = dc_field(init=False, repr=False, compare=False)
    _aindex: dict = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationError("duplicate vertex name")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise PresentationError("duplicate arrow name")
        clash = set(names) & set(self.vertices)
        if clash:
            raise PresentationError(f"names used for both a vertex and an arrow: {sorted(clash)}")
        vindex = {v: i for i, v in enumerate(self.vertices)}
        for name, s, t in self.arrows:
            for v in (s, t):
                if v not in vindex:
                    raise PresentationError(f"arrow {name} uses unknown vertex {v!r}")
        object.__setattr__(self, "_vindex", vindex)
        object.__setattr__(self, "_aindex", {a[0]: i for i, a in enumerate(self.arrows)})

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_arrows(self):
        return len(self.arrows)

    def vertex_index(self, name):
        return self._vindex[name]

    def arrow_index(self, name):
        return self._aindex[name]

    def arrow_source(self, i):
        return self._vindex[self.arrows[i][1]]

    def arrow_target(self, i):
        return self._vindex[self.arrows[i][2]]

    def trivial(self, v):
        return Path(v, v, ())

    def arrow_path(self, i):
        return Path(self.arrow_source(i), self.arrow_target(i), (i,))

    def compose(self, p, q):
        """Concatenation p*q, or None when target(p) != source(q)."""
        if p.target != q.source:
            return None
        return Path(p.source, q.target, p.arrows + q.arrows)

    def path(self, *names):
        """Path from arrow names (or a single vertex name for a trivial path)."""
        if len(names) == 1 and names[0] in self._vindex:
            return self.trivial(self._vindex[names[0]])
        p = None
        for n in names:
            a = self.arrow_path(self._aindex[n])
            p = a if p is None else self.compose(p, a)
            if p is None:
                raise PresentationError(f"non-composable path {'*'.join(names)}")
        return p

    def path_str(self, p):
        if not p.arrows:
            return self.vertices[p.source]
        return "*".join(self.arrows[i][0] for i in p.arrows)

    @staticmethod
    def sort_key(p):
        """Length-lex key; trivial paths first, ordered by vertex."""
        return (len(p.arrows), p.arrows, p.source)

    def paths_of_length(self, n):
        if n == 0:
            return [self.trivial(v) for v in range(self.n_vertices)]
        out = []
        for p in self.paths_of_length(n - 1) if n > 1 else [None]:
            for i in range(self.n_arrows):
                a = self.arrow_path(i)
                q = a if p is None else self.compose(p, a)
                if q is not None:
                    out.append(q)
        out.sort(key=self.sort_key)
        return out

    def count_paths(self, n):
        """Number of paths of length n (adjacency-matrix power, no enumeration)."""
        if n == 0:
            return self.n_vertices
        counts = [1] * self.n_vertices  # paths of current length ending at each vertex
        for _ in range(n):
            nxt = [0] * self.n_vertices
            for i in range(self.n_arrows):
                nxt[self.arrow_target(i)] += counts[self.arrow_source(i)]
            counts = nxt
        return sum(counts)

    def arrow_counts(self, p):
        v = [0] * self.n_arrows
        for i in p.arrows:
            v[i] += 1
        return v


@dataclass(frozen=True)
class Presentation:
    quiver: Quiver
    relations: tuple  # of dict Path -> scalar
    field: Field = dc_field(default_factory=lambda: get_field("Q"))
    name: str = "algebra"

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(dict(r) for r in self.relations))
        for k, rel in enumerate(self.relations):
            check_relation(self.quiver, rel, k)

    def with_field(self, F):
        if isinstance(F, str):
            F = get_field(F)
        rels = []
        for rel in self.relations:
            # relation scalars are integers by construction of the format
            r = {}
            for p, c in rel.items():
                c2 = F.from_int(_as_int(c, self.field))
                if c2 != 0:
                    r[p] = c2
            rels.append(r)
        return Presentation(self.quiver, tuple(rels), F, self.name)

    def relation_str(self, k):
        return element_str(self.quiver, self.relations[k], self.field)


def _as_int(c, F):
    if F.name == "Q":
        if c.denominator != 1:
            raise PresentationError(f"non-integer relation coefficient {c}")
        return int(c)
    return int(c)


def check_relation(quiver, rel, k=None):
    where = f"relation {k + 1}" if k is not None else "relation"
    if not rel:
        raise PresentationError(f"{where} is zero")
    ends = {(p.source, p.target) for p in rel}
    if len(ends) > 1:
        raise PresentationError(f"{where} has non-parallel paths")
    short = [p for p in rel if len(p.arrows) < 2]
    if short:
        raise PresentationError(
            f"{where} contains path {quiver.path_str(short[0])} of length < 2")


def element_str(quiver, x, F):
    if not x:
        return "0"
    parts = []
    for p in sorted(x, key=Quiver.sort_key):
        c = x[p]
        neg = F.name == "Q" and c < 0
        mag = -c if neg else c
        sign = "-" if neg else "+"
        body = quiver.path_str(p)
        if mag != 1:
            body = f"{F.format(mag)}*{body}"
        if not parts:
            parts.append(body if sign == "+" else f"- {body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<arrow>->)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9']*)
  | (?P<sym>[:,;+\-*^()])
""", re.VERBOSE)

_SECTIONS = ("vertices", "arrows", "relations", "field")


class _Tok(NamedTuple):
    kind: str
    value: str
    line: int
    col: int


def _tokenize(text):
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise PresentationError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind != "ws":
            toks.append(_Tok(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return PresentationError(msg, tok.line, tok.col)

    def accept(self, value):
        if self.tok.value == value and self.tok.kind in ("sym", "arrow", "name"):
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            shown = self.tok.value or "end of input"
            raise self.error(f"expected {value!r}, found {shown!r}")

    def name(self):
        tok = self.tok
        if tok.kind != "name":
            raise self.error(f"expected a name, found {tok.value or 'end of input'!r}")
        self.i += 1
        return tok

    def at_section(self, *names):
        tok, nxt = self.tok, self.toks[self.i + 1] if self.i + 1 < len(self.toks) else None
        return tok.kind == "name" and tok.value in names and nxt is not None and nxt.value == ":"

    def skip_semis(self):
        while self.accept(";"):
            pass

    def parse(self):
        name = "algebra"
        if self.tok.kind == "name" and self.tok.value == "algebra" and not self.at_section("algebra"):
            self.i += 1
            name = self.name().value
        self.skip_semis()
        vertices = None
        if self.at_section("vertices"):
            self.i += 2
            vertices = [self.name()]
            while self.accept(","):
                vertices.append(self.name())
            self.skip_semis()
        if not self.at_section("arrows"):
            raise self.error("expected 'arrows:' section")
        self.i += 2
        arrows = [self.arrow()]
        while self.accept(","):
            arrows.append(self.arrow())
        self.skip_semis()
        exprs = []
        if self.at_section("relations"):
            self.i += 2
            while self.tok.kind != "eof" and not self.at_section("field"):
                exprs.append(self.expr())
                if not self.accept(";"):
                    break
                self.skip_semis()
        field_name = "Q"
        if self.at_section("field"):
            self.i += 2
            field_name = self.name().value
            self.skip_semis()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.value!r}")

        try:
            F = get_field(field_name)
        except ValueError as exc:
            raise PresentationError(str(exc)) from None
        for t in [t for _, s, d in arrows for t in (s, d)] + (vertices or []):
            if t.value in _SECTIONS + ("algebra",):
                raise self.error(f"reserved word {t.value!r} used as a name", t)
        if vertices is None:
            seen = []
            for _, s, t in arrows:
                for v in (s.value, t.value):
                    if v not in seen:
                        seen.append(v)
            vnames = seen
        else:
            vnames = [v.value for v in vertices]
            for a, s, t in arrows:
                for v in (s, t):
                    if v.value not in vnames:
                        raise self.error(f"unknown vertex {v.value!r} in arrow {a.value}", v)
        quiver = Quiver(vnames, [(a.value, s.value, t.value) for a, s, t in arrows])
        relations = []
        for k, (tok, ast) in enumerate(exprs):
            rel = _evaluate(ast, quiver, F)
            try:
                check_relation(quiver, rel, k)
            except PresentationError as exc:
                raise PresentationError(str(exc), tok.line, tok.col) from None
            relations.append(rel)
        return Presentation(quiver, tuple(relations), F, name)

    def arrow(self):
        a = self.name()
        self.expect(":")
        s = self.name()
        self.expect("->")
        t = self.name()
        return a, s, t

    # EXPR := [sign] TERM (("+"|"-") TERM)*
    def expr(self):
        start = self.tok
        terms = []
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        terms.append((sign, self.term()))
        while self.tok.value in ("+", "-") and self.tok.kind == "sym":
            sign = 1 if self.tok.value == "+" else -1
            self.i += 1
            terms.append((sign, self.term()))
        return start, ("sum", terms)

    # TERM := [INT "*"] FACTOR ("*" FACTOR)*
    def term(self):
        coeff = 1
        if self.tok.kind == "int":
            coeff = int(self.tok.value)
            self.i += 1
            self.expect("*")
        factors = [self.factor()]
        while self.accept("*"):
            factors.append(self.factor())
        return ("prod", coeff, factors)

    # FACTOR := NAME | "(" EXPR ")" ["^" INT]
    def factor(self):
        if self.accept("("):
            _, inner = self.expr()
            self.expect(")")
            exp = 1
            if self.accept("^"):
                exp = self.exponent()
            return ("pow", inner, exp)
        tok = self.name()
        if self.accept("^"):
            return ("pow", ("name", tok), self.exponent())
        return ("name", tok)

    def exponent(self):
        tok = self.tok
        if tok.kind != "int" or int(tok.value) < 1:
            raise self.error("exponent must be a positive integer")
        self.i += 1
        return int(tok.value)


def _evaluate(ast, quiver, F):
    kind = ast[0]
    if kind == "name":
        tok = ast[1]
        n = tok.value
        if n in quiver._aindex:
            return {quiver.arrow_path(quiver.arrow_index(n)): F.one()}
        if n in quiver._vindex:
            return {quiver.trivial(quiver.vertex_index(n)): F.one()}
        raise PresentationError(f"unknown arrow or vertex {n!r}", tok.line, tok.col)
    if kind == "sum":
        out = {}
        for sign, t in ast[1]:
            x = _evaluate(t, quiver, F)
            s = F.from_int(sign)
            for p, c in x.items():
                _accumulate(out, p, F.mul(s, c), F)
        return out
    if kind == "prod":
        _, coeff, factors = ast
        x = {None: F.from_int(coeff)}
        for f in factors:
            x = _path_product(x, _evaluate(f, quiver, F), quiver, F, _first_token(f))
        return {p: c for p, c in x.items() if c != 0}
    if kind == "pow":
        _, inner, exp = ast
        base = _evaluate(inner, quiver, F)
        x = base
        for _ in range(exp - 1):
            x = _path_product(x, base, quiver, F, _first_token(inner))
        return x
    raise AssertionError(kind)


def _first_token(ast):
    while ast[0] != "name":
        ast = ast[1] if ast[0] == "pow" else (ast[2][0] if ast[0] == "prod" else ast[1][0][1])
    return ast[1]


def _path_product(x, y, quiver, F, tok):
    out = {}
    for p, c in x.items():
        for q, d in y.items():
            r = q if p is None else quiver.compose(p, q)
            if r is None:
                raise PresentationError(
                    f"non-composable path {quiver.path_str(p)}*{quiver.path_str(q)}", tok.line, tok.col)
            _accumulate(out, r, F.mul(c, d), F)
    return out


def _accumulate(x, p, c, F):
    v = F.add(x.get(p, F.zero()), c)
    if v == 0:
        x.pop(p, None)
    else:
        x[p] = v


def parse_presentation(text):
    return _Parser(text).parse()


def load_presentation(path):
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


def serialize(p):
    q = p.quiver
    lines = [f"algebra {p.name}", "vertices: " + ", ".join(q.vertices)]
    lines.append("arrows: " + ", ".join(f"{a}:{s}->{t}" for a, s, t in q.arrows))
    lines.append("relations:")
    for k in range(len(p.relations)):
        lines.append(f"  {p.relation_str(k)};")
    lines.append(f"field: {p.field.name}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- built-in families

def _one_vertex(name, arrow_names, rel_texts):
    text = "algebra {}\nvertices: e\narrows: {}\nrelations:\n{}\n".format(
        name, ", ".join(f"{a}:e->e" for a in arrow_names),
        "".join(f"  {r};\n" for r in rel_texts))
    return parse_presentation(text)


def _alt(first, second, n):
    return "*".join([first, second] * n)


def q1e(r):
    """Q(1E)^r: loops a, b with a^2 = (ba)^(r-1) b, b^2 = (ab)^(r-1) a, (ab)^r = (ba)^r, (ab)^r a = 0."""
    if r < 2:
        raise ValueError("q1e needs r >= 2")
    rels = [
        f"a*a - {_alt('b', 'a', r - 1)}*b",
        f"b*b - {_alt('a', 'b', r - 1)}*a",
        f"{_alt('a', 'b', r)} - {_alt('b', 'a', r)}",
        f"{_alt('a', 'b', r)}*a",
    ]
    return _one_vertex(f"q1e_{r}", "ab", rels)


def two_loop(r):
    """Loops a, b with a^2 = b^2 = 0 and (ab)^r = (ba)^r."""
    if r < 1:
        raise ValueError("two_loop needs r >= 1")
    return _one_vertex(f"two_loop_{r}", "ab", ["a*a", "b*b", f"{_alt('a', 'b', r)} - {_alt('b', 'a', r)}"])


def truncated_poly(n):
    if n < 2:
        raise ValueError("truncated_poly needs n >= 2")
    return _one_vertex(f"truncated_poly_{n}", "x", ["*".join("x" * n)])


def linear_an(n):
    """Equioriented A_n: v1 -> v2 -> ... -> vn, no relations."""
    if n < 2:
        raise ValueError("linear_an needs n >= 2")
    vs = [f"v{i}" for i in range(1, n + 1)]
    arrows = [(f"a{i}", vs[i - 1], vs[i]) for i in range(1, n)]
    return Presentation(Quiver(vs, arrows), (), get_field("Q"), f"linear_an_{n}")


BUILTINS = {"q1e": q1e, "two_loop": two_loop, "truncated_poly": truncated_poly, "linear_an": linear_an}


def builtin(name, params=()):
    if name not in BUILTINS:
        raise ValueError(f"unknown family {name!r}; known: {', '.join(BUILTINS)}")
    params = list(params)
    if len(params) != 1:
        raise ValueError(f"family {name} takes exactly one integer parameter")
    return BUILTINS[name](int(params[0]))


def parse_builtin_spec(spec):
    """'q1e:2' -> builtin('q1e', [2])."""
    name, _, rest = spec.partition(":")
    try:
        params = [int(x) for x in rest.split(",")] if rest else []
    except ValueError:
        raise ValueError(f"bad builtin parameters in {spec!r}") from None
    return builtin(name, params)
