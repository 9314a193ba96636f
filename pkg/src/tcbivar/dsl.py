"""Line-oriented problem-description language.

One statement per line, declaration before use, a single field declaration,
and `#` comments.  The statement forms:

    field Q                      field Fp 5
    space ID = sphere(2) | torus(5) | wedge_circles(2) | pathspace(ID)
             | contractible | point | abstract [spaceFlag, ...]
    map ID : DOM -> COD = identity | constant | constant(label) | degree(k)
             | powers(e1, ..., en) | projection(i) | inclusion
             | path_fibration | abstract | on_basis{lbl -> combo, ...} [flag, ...]
    pair ID = (F, G) [pairFlag, ...]
    assert QTY(ID[, ID]) <= | >= | = extnat        extnat := natural | inf
    relate product P2 = P x P1
    relate postcompose P2 = w . P1 [retraction]
    relate precompose P2 = P1 . (u, v)
    relate homotopic P1 ~ P2
    relate fibrewise P1 ~ P2
    relate factors P through P1
    query lcp P | query bounds QREF | query explain QREF | query facts

Map flags: fibration, surjective, nullhomotopic, not_nullhomotopic,
strict_section, homotopy_section, right_homotopy_inverse.  Space flags (only
meaningful on abstract spaces): normal, not_normal, not_path_connected,
h_group, anr.  Pair flags: images_disjoint, not_synchronizable, synchronizable.

For a map X -> Z, on_basis lists one image per basis element of the codomain
ring H(Z), written in the basis of the domain ring H(X): the induced hom is
contravariant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .fields import is_prime
from .intervals import ExtNat, INF

QUANTITY_NAMES = ("TC", "TCH", "sec", "secat", "cat", "D",
                  "secprod", "catprod", "catdelta")

MAP_FLAGS = ("fibration", "surjective", "nullhomotopic", "not_nullhomotopic",
             "strict_section", "homotopy_section", "right_homotopy_inverse")
SPACE_FLAGS = ("normal", "not_normal", "not_path_connected", "h_group", "anr")
PAIR_FLAGS = ("images_disjoint", "not_synchronizable", "synchronizable")


class DslSyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.reason = message


class DslSemanticError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.reason = message


# AST ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldDecl:
    kind: str  # "Q" or "Fp"
    p: int | None
    line: int = dc_field(default=0, compare=False)


@dataclass(frozen=True)
class SpaceDecl:
    id: str
    kind: str
    n: int = 0
    base: str | None = None
    flags: tuple[str, ...] = ()
    line: int = dc_field(default=0, compare=False)


@dataclass(frozen=True)
class Combo:
    """Linear combination sum of (coefficient, basis label)."""

    terms: tuple[tuple[Fraction, str], ...]


@dataclass(frozen=True)
class MapDecl:
    id: str
    domain: str
    codomain: str
    kind: str
    k: int = 0
    exponents: tuple[int, ...] = ()
    factor: int = 0
    label: str = ""
    images: tuple[tuple[str, Combo], ...] = ()
    flags: tuple[str, ...] = ()
    line: int = dc_field(default=0, compare=False)


@dataclass(frozen=True)
class PairDecl:
    id: str
    f: str
    g: str
    flags: tuple[str, ...] = ()
    line: int = dc_field(default=0, compare=False)


@dataclass(frozen=True)
class QuantityRef:
    name: str
    args: tuple[str, ...]
    line: int = dc_field(default=0, compare=False)

    def render(self) -> str:
        return f"{self.name}({', '.join(self.args)})"


@dataclass(frozen=True)
class AssertStmt:
    ref: QuantityRef
    op: str  # "<=", ">=", "="
    value: ExtNat
    line: int = dc_field(default=0, compare=False)


@dataclass(frozen=True)
class RelateStmt:
    kind: str  # product | postcompose | precompose | homotopic | fibrewise | factors
    ids: tuple[str, ...]
    retraction: bool = False
    line: int = dc_field(default=0, compare=False)


@dataclass(frozen=True)
class QueryStmt:
    kind: str  # lcp | bounds | explain | facts
    ref: QuantityRef | None = None
    pair: str | None = None
    line: int = dc_field(default=0, compare=False)


@dataclass
class ProblemDocument:
    field_decl: FieldDecl | None = None
    spaces: list[SpaceDecl] = dc_field(default_factory=list)
    maps: list[MapDecl] = dc_field(default_factory=list)
    pairs: list[PairDecl] = dc_field(default_factory=list)
    asserts: list[AssertStmt] = dc_field(default_factory=list)
    relations: list[RelateStmt] = dc_field(default_factory=list)
    queries: list[QueryStmt] = dc_field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return self.field_decl is None and not (
            self.spaces or self.maps or self.pairs or self.asserts
            or self.relations or self.queries)


# lexer --------------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>\#.*)
  | (?P<arrow>->)
  | (?P<le><=)
  | (?P<ge>>=)
  | (?P<int>-?\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<brace>\{[^}]*\})
  | (?P<punct>[(),:=\[\].~])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def _lex_line(text: str, line_no: int) -> list[Token]:
    out: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DslSyntaxError(f"unexpected character {text[pos]!r}",
                                 line_no, pos + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line_no, m.start() + 1))
        pos = m.end()
    return out


class _Cursor:
    def __init__(self, tokens: list[Token], line_no: int):
        self.tokens = tokens
        self.i = 0
        self.line_no = line_no

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            col = (last.col + len(last.text)) if last else 1
            raise DslSyntaxError("unexpected end of line", self.line_no, col)
        self.i += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.next()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            raise DslSyntaxError(f"expected {want!r}, got {tok.text!r}",
                                 tok.line, tok.col)
        return tok

    def expect_keyword(self, *words: str) -> Token:
        tok = self.next()
        if tok.kind != "ident" or tok.text not in words:
            raise DslSyntaxError(
                f"expected one of {', '.join(words)}, got {tok.text!r}",
                tok.line, tok.col)
        return tok

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    def require_end(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise DslSyntaxError(f"unexpected trailing {tok.text!r}",
                                 tok.line, tok.col)


# combo parsing -------------------------------------------------------------------

_COMBO_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?:(?P<num>\d+)(?:/(?P<den>\d+))?\s*\*?\s*)?"
    r"(?P<label>[A-Za-z][A-Za-z0-9^]*)?\s*")


def parse_combo(text: str, line: int, col: int) -> Combo:
    """Parse a linear combination such as '2u + 3v', 'u1u2', '0', or '1'.

    A bare integer is a multiple of the unit basis label '1'; '0' is the zero
    combination.
    """
    stripped = text.strip()
    if stripped == "0":
        return Combo(())
    terms: list[tuple[Fraction, str]] = []
    pos = 0
    first = True
    while pos < len(stripped):
        m = _COMBO_TERM.match(stripped, pos)
        if m is None or m.end() == pos:
            raise DslSyntaxError(f"malformed linear combination {text!r}", line, col)
        sign, num, den, label = (m.group("sign"), m.group("num"),
                                 m.group("den"), m.group("label"))
        if sign is None and not first:
            raise DslSyntaxError(f"missing sign in combination {text!r}", line, col)
        if num is None and label is None:
            raise DslSyntaxError(f"malformed linear combination {text!r}", line, col)
        coeff = Fraction(int(num) if num else 1, int(den) if den else 1)
        if sign == "-":
            coeff = -coeff
        terms.append((coeff, label if label is not None else "1"))
        pos = m.end()
        first = False
    return Combo(tuple(terms))


# parser ---------------------------------------------------------------------------


class Parser:
    def __init__(self):
        self.doc = ProblemDocument()
        self.known: dict[str, str] = {}  # id -> "space" | "map" | "pair"

    def parse(self, text: str) -> ProblemDocument:
        for line_no, raw in enumerate(text.splitlines(), start=1):
            tokens = _lex_line(raw, line_no)
            if not tokens:
                continue
            cur = _Cursor(tokens, line_no)
            head = cur.expect_keyword("field", "space", "map", "pair", "assert",
                                      "relate", "query")
            getattr(self, f"_stmt_{head.text}")(cur, head)
            cur.require_end()
        return self.doc

    # helpers ---------------------------------------------------------------

    def _declare(self, name: str, kind: str, tok: Token) -> None:
        if name in self.known:
            raise DslSemanticError(f"{name!r} already declared", tok.line, tok.col)
        self.known[name] = kind

    def _resolve(self, tok: Token, kind: str) -> str:
        actual = self.known.get(tok.text)
        if actual is None:
            raise DslSemanticError(f"undeclared identifier {tok.text!r}",
                                   tok.line, tok.col)
        if actual != kind:
            raise DslSemanticError(
                f"{tok.text!r} is a {actual}, expected a {kind}", tok.line, tok.col)
        return tok.text

    def _flag_list(self, cur: _Cursor, allowed: tuple[str, ...]) -> tuple[str, ...]:
        if cur.at_end() or cur.peek().text != "[":
            return ()
        cur.expect("punct", "[")
        flags = []
        while True:
            tok = cur.expect("ident")
            if tok.text not in allowed:
                raise DslSyntaxError(f"unknown flag {tok.text!r}", tok.line, tok.col)
            flags.append(tok.text)
            nxt = cur.next()
            if nxt.text == "]":
                break
            if nxt.text != ",":
                raise DslSyntaxError(f"expected ',' or ']', got {nxt.text!r}",
                                     nxt.line, nxt.col)
        return tuple(flags)

    def _int_args(self, cur: _Cursor, minimum: int = 1) -> list[int]:
        cur.expect("punct", "(")
        out = []
        while True:
            tok = cur.expect("int")
            out.append(int(tok.text))
            nxt = cur.next()
            if nxt.text == ")":
                break
            if nxt.text != ",":
                raise DslSyntaxError(f"expected ',' or ')', got {nxt.text!r}",
                                     nxt.line, nxt.col)
        if len(out) < minimum:
            raise DslSyntaxError("missing arguments", cur.line_no, 1)
        return out

    def _quantity_ref(self, cur: _Cursor) -> QuantityRef:
        tok = cur.expect("ident")
        if tok.text not in QUANTITY_NAMES:
            raise DslSyntaxError(
                f"unknown quantity {tok.text!r} (expected one of"
                f" {', '.join(QUANTITY_NAMES)})", tok.line, tok.col)
        cur.expect("punct", "(")
        args = [cur.expect("ident")]
        if cur.peek() and cur.peek().text == ",":
            cur.next()
            args.append(cur.expect("ident"))
        cur.expect("punct", ")")
        for arg in args:
            if arg.text not in self.known:
                raise DslSemanticError(f"undeclared identifier {arg.text!r}",
                                       arg.line, arg.col)
        return QuantityRef(tok.text, tuple(a.text for a in args), tok.line)

    # statements ------------------------------------------------------------

    def _stmt_field(self, cur: _Cursor, head: Token) -> None:
        if self.doc.field_decl is not None:
            raise DslSemanticError("duplicate field declaration", head.line, head.col)
        tok = cur.expect_keyword("Q", "Fp")
        if tok.text == "Q":
            self.doc.field_decl = FieldDecl("Q", None, head.line)
            return
        p_tok = cur.expect("int")
        p = int(p_tok.text)
        if not is_prime(p):
            raise DslSemanticError(f"{p} is not prime", p_tok.line, p_tok.col)
        self.doc.field_decl = FieldDecl("Fp", p, head.line)

    def _require_field(self, head: Token) -> None:
        if self.doc.field_decl is None:
            raise DslSemanticError("field declaration must come first",
                                   head.line, head.col)

    def _stmt_space(self, cur: _Cursor, head: Token) -> None:
        self._require_field(head)
        name = cur.expect("ident")
        cur.expect("punct", "=")
        kind_tok = cur.expect_keyword("sphere", "torus", "wedge_circles",
                                      "pathspace", "contractible", "point",
                                      "abstract")
        n = 0
        base = None
        if kind_tok.text in ("sphere", "torus", "wedge_circles"):
            args = self._int_args(cur)
            if len(args) != 1 or args[0] < 1:
                raise DslSemanticError(f"{kind_tok.text} needs one parameter >= 1",
                                       kind_tok.line, kind_tok.col)
            n = args[0]
        elif kind_tok.text == "pathspace":
            cur.expect("punct", "(")
            base_tok = cur.expect("ident")
            base = self._resolve(base_tok, "space")
            cur.expect("punct", ")")
        flags = self._flag_list(cur, SPACE_FLAGS)
        self._declare(name.text, "space", name)
        self.doc.spaces.append(SpaceDecl(name.text, kind_tok.text, n=n, base=base,
                                         flags=flags, line=head.line))

    def _stmt_map(self, cur: _Cursor, head: Token) -> None:
        self._require_field(head)
        name = cur.expect("ident")
        cur.expect("punct", ":")
        dom = self._resolve(cur.expect("ident"), "space")
        cur.expect("arrow")
        cod = self._resolve(cur.expect("ident"), "space")
        cur.expect("punct", "=")
        kind_tok = cur.expect_keyword("identity", "constant", "degree", "powers",
                                      "projection", "inclusion", "path_fibration",
                                      "abstract", "on_basis")
        k = 0
        exponents: tuple[int, ...] = ()
        factor = 0
        label = ""
        images: tuple[tuple[str, Combo], ...] = ()
        kind = kind_tok.text
        if kind == "degree":
            k = self._int_args(cur)[0]
        elif kind == "powers":
            exponents = tuple(self._int_args(cur))
        elif kind == "projection":
            factor = self._int_args(cur)[0]
        elif kind == "constant":
            if cur.peek() and cur.peek().text == "(":
                cur.next()
                label = cur.expect("ident").text
                cur.expect("punct", ")")
        elif kind == "on_basis":
            brace = cur.expect("brace")
            images = self._parse_on_basis(brace)
        flags = self._flag_list(cur, MAP_FLAGS)
        if "nullhomotopic" in flags and "not_nullhomotopic" in flags:
            raise DslSemanticError("a map cannot be both nullhomotopic and"
                                   " not_nullhomotopic", head.line, head.col)
        self._declare(name.text, "map", name)
        self.doc.maps.append(MapDecl(name.text, dom, cod, kind, k=k,
                                     exponents=exponents, factor=factor,
                                     label=label, images=images, flags=flags,
                                     line=head.line))

    def _parse_on_basis(self, brace: Token) -> tuple[tuple[str, Combo], ...]:
        body = brace.text[1:-1]
        if not body.strip():
            raise DslSyntaxError("empty on_basis image table", brace.line, brace.col)
        out = []
        for chunk in body.split(","):
            if "->" not in chunk:
                raise DslSyntaxError(f"expected 'label -> combination' in {chunk!r}",
                                     brace.line, brace.col)
            label, combo_text = chunk.split("->", 1)
            label = label.strip()
            if not label:
                raise DslSyntaxError("missing basis label in on_basis",
                                     brace.line, brace.col)
            out.append((label, parse_combo(combo_text, brace.line, brace.col)))
        return tuple(out)

    def _stmt_pair(self, cur: _Cursor, head: Token) -> None:
        self._require_field(head)
        name = cur.expect("ident")
        cur.expect("punct", "=")
        cur.expect("punct", "(")
        f = self._resolve(cur.expect("ident"), "map")
        cur.expect("punct", ",")
        g = self._resolve(cur.expect("ident"), "map")
        cur.expect("punct", ")")
        flags = self._flag_list(cur, PAIR_FLAGS)
        if "synchronizable" in flags and "not_synchronizable" in flags:
            raise DslSemanticError("conflicting synchronizability flags",
                                   head.line, head.col)
        self._declare(name.text, "pair", name)
        self.doc.pairs.append(PairDecl(name.text, f, g, flags=flags, line=head.line))

    def _stmt_assert(self, cur: _Cursor, head: Token) -> None:
        self._require_field(head)
        ref = self._quantity_ref(cur)
        op_tok = cur.next()
        if op_tok.kind == "le":
            op = "<="
        elif op_tok.kind == "ge":
            op = ">="
        elif op_tok.text == "=":
            op = "="
        else:
            raise DslSyntaxError(f"expected <=, >= or =, got {op_tok.text!r}",
                                 op_tok.line, op_tok.col)
        val_tok = cur.next()
        if val_tok.kind == "ident" and val_tok.text == "inf":
            value = INF
        elif val_tok.kind == "int" and int(val_tok.text) >= 0:
            value = ExtNat(int(val_tok.text))
        else:
            raise DslSyntaxError(f"expected a natural number or 'inf',"
                                 f" got {val_tok.text!r}", val_tok.line, val_tok.col)
        self.doc.asserts.append(AssertStmt(ref, op, value, head.line))

    def _stmt_relate(self, cur: _Cursor, head: Token) -> None:
        self._require_field(head)
        kind = cur.expect_keyword("product", "postcompose", "precompose",
                                  "homotopic", "fibrewise", "factors").text
        if kind == "product":
            prod = self._resolve(cur.expect("ident"), "pair")
            cur.expect("punct", "=")
            left = self._resolve(cur.expect("ident"), "pair")
            x = cur.expect("ident")
            if x.text != "x":
                raise DslSyntaxError(f"expected 'x', got {x.text!r}", x.line, x.col)
            right = self._resolve(cur.expect("ident"), "pair")
            self.doc.relations.append(RelateStmt(kind, (prod, left, right),
                                                 line=head.line))
        elif kind == "postcompose":
            post = self._resolve(cur.expect("ident"), "pair")
            cur.expect("punct", "=")
            w = self._resolve(cur.expect("ident"), "map")
            cur.expect("punct", ".")
            base = self._resolve(cur.expect("ident"), "pair")
            retraction = bool(self._flag_list(cur, ("retraction",)))
            self.doc.relations.append(RelateStmt(kind, (post, w, base),
                                                 retraction=retraction,
                                                 line=head.line))
        elif kind == "precompose":
            pre = self._resolve(cur.expect("ident"), "pair")
            cur.expect("punct", "=")
            base = self._resolve(cur.expect("ident"), "pair")
            cur.expect("punct", ".")
            cur.expect("punct", "(")
            u = self._resolve(cur.expect("ident"), "map")
            cur.expect("punct", ",")
            v = self._resolve(cur.expect("ident"), "map")
            cur.expect("punct", ")")
            self.doc.relations.append(RelateStmt(kind, (pre, base, u, v),
                                                 line=head.line))
        elif kind in ("homotopic", "fibrewise"):
            a = self._resolve(cur.expect("ident"), "pair")
            cur.expect("punct", "~")
            b = self._resolve(cur.expect("ident"), "pair")
            self.doc.relations.append(RelateStmt(kind, (a, b), line=head.line))
        else:  # factors
            outer = self._resolve(cur.expect("ident"), "pair")
            cur.expect_keyword("through")
            inner = self._resolve(cur.expect("ident"), "pair")
            self.doc.relations.append(RelateStmt(kind, (outer, inner),
                                                 line=head.line))

    def _stmt_query(self, cur: _Cursor, head: Token) -> None:
        self._require_field(head)
        kind = cur.expect_keyword("lcp", "bounds", "explain", "facts").text
        if kind == "facts":
            self.doc.queries.append(QueryStmt("facts", line=head.line))
        elif kind == "lcp":
            pair = self._resolve(cur.expect("ident"), "pair")
            self.doc.queries.append(QueryStmt("lcp", pair=pair, line=head.line))
        else:
            ref = self._quantity_ref(cur)
            self.doc.queries.append(QueryStmt(kind, ref=ref, line=head.line))


def parse(text: str) -> ProblemDocument:
    """Parse a problem document; raises DslSyntaxError or DslSemanticError."""
    return Parser().parse(text)


# canonical pretty-printer ---------------------------------------------------------


def _render_combo(combo: Combo) -> str:
    if not combo.terms:
        return "0"
    parts = []
    for i, (coeff, label) in enumerate(combo.terms):
        sign = "-" if coeff < 0 else ("+" if i else "")
        mag = abs(coeff)
        body = label if mag == 1 and label != "1" else (
            str(mag) if label == "1" else f"{mag}{label}")
        parts.append(f"{sign} {body}".strip() if i else f"{sign}{body}")
    return " ".join(parts)


def render_document(doc: ProblemDocument) -> str:
    """Canonical textual form; parse(render_document(parse(x))) == parse(x)."""
    lines: list[str] = []
    if doc.field_decl:
        lines.append("field Q" if doc.field_decl.kind == "Q"
                     else f"field Fp {doc.field_decl.p}")
    for s in doc.spaces:
        expr = s.kind
        if s.kind in ("sphere", "torus", "wedge_circles"):
            expr += f"({s.n})"
        elif s.kind == "pathspace":
            expr += f"({s.base})"
        suffix = f" [{', '.join(s.flags)}]" if s.flags else ""
        lines.append(f"space {s.id} = {expr}{suffix}")
    for m in doc.maps:
        if m.kind == "degree":
            expr = f"degree({m.k})"
        elif m.kind == "powers":
            expr = f"powers({', '.join(map(str, m.exponents))})"
        elif m.kind == "projection":
            expr = f"projection({m.factor})"
        elif m.kind == "constant" and m.label:
            expr = f"constant({m.label})"
        elif m.kind == "on_basis":
            body = ", ".join(f"{lbl} -> {_render_combo(combo)}"
                             for lbl, combo in m.images)
            expr = f"on_basis{{{body}}}"
        else:
            expr = m.kind
        suffix = f" [{', '.join(m.flags)}]" if m.flags else ""
        lines.append(f"map {m.id} : {m.domain} -> {m.codomain} = {expr}{suffix}")
    for p in doc.pairs:
        suffix = f" [{', '.join(p.flags)}]" if p.flags else ""
        lines.append(f"pair {p.id} = ({p.f}, {p.g}){suffix}")
    for r in doc.relations:
        if r.kind == "product":
            lines.append(f"relate product {r.ids[0]} = {r.ids[1]} x {r.ids[2]}")
        elif r.kind == "postcompose":
            suffix = " [retraction]" if r.retraction else ""
            lines.append(f"relate postcompose {r.ids[0]} = {r.ids[1]} . {r.ids[2]}{suffix}")
        elif r.kind == "precompose":
            lines.append(f"relate precompose {r.ids[0]} = {r.ids[1]} ."
                         f" ({r.ids[2]}, {r.ids[3]})")
        elif r.kind in ("homotopic", "fibrewise"):
            lines.append(f"relate {r.kind} {r.ids[0]} ~ {r.ids[1]}")
        else:
            lines.append(f"relate factors {r.ids[0]} through {r.ids[1]}")
    for a in doc.asserts:
        lines.append(f"assert {a.ref.render()} {a.op} {a.value}")
    for q in doc.queries:
        if q.kind == "facts":
            lines.append("query facts")
        elif q.kind == "lcp":
            lines.append(f"query lcp {q.pair}")
        else:
            lines.append(f"query {q.kind} {q.ref.render()}")
    return "\n".join(lines) + ("\n" if lines else "")
