"""A small language for semilinear sets and families.

::

    set I = { x1 >= 0 & x1 <= 1 };
    set C[2] = { 0 < x1 < 1 & 0 < x2 < 1 };
    set R = { C & !(x1 <= 1/2) };             # earlier names of the same dimension
    family Y(t) = { 1 - t <= x1 & x1 <= 1 };  # parameter is the last axis
    cohomology R --coeff Z/2;                 # optional command records

Variables are ``x1 .. xn``; the largest index (or an explicit ``[n]``)
fixes the ambient dimension.  Atoms compare linear expressions with
``<  <=  =  >=  >`` and may be chained (``0 <= x1 < 1``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import EQ, LE, LT, AffineForm, ConstraintSystem, LinearConstraint
from .semilinear import DefinableFamily, DimensionMismatch, SemilinearSet

COMMANDS = ("cohomology", "decompose", "cover", "typespace", "stabilize", "verify")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class DimensionError(ParseError, DimensionMismatch):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op><=|>=|==|<|>|=|[{}()\[\];&|!+\-*,/.:])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    line, start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


@dataclass
class Command:
    words: list
    line: int = 0

    def __str__(self) -> str:
        return " ".join(self.words)


@dataclass
class Script:
    sets: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)
    commands: list = field(default_factory=list)

    def lookup(self, name: str):
        if name in self.sets:
            return self.sets[name]
        if name in self.families:
            return self.families[name]
        raise KeyError(f"unknown name {name!r}")

    def to_text(self) -> str:
        lines = []
        for name, s in self.sets.items():
            lines.append(f"set {name}[{s.ambient_dim}] = {{ {format_set(s)} }};")
        for name, fam in self.families.items():
            fam = fam.with_parameter_last()
            n = fam.fiber_dim
            lines.append(f"family {name}[{n}](t) = "
                         f"{{ {format_set(fam.total_space, param='t')} }};")
        for c in self.commands:
            lines.append(f"{c};")
        return "\n".join(lines) + "\n"


def _var_names(n: int, param: str | None) -> list[str]:
    names = [f"x{i + 1}" for i in range(n)]
    if param is not None:
        names[-1] = param
    return names


def format_form(form: AffineForm, names: list[str]) -> str:
    parts = []
    for c, v in zip(form.coeffs, names):
        if c == 0:
            continue
        mag = abs(c)
        term = v if mag == 1 else f"{mag}*{v}"
        parts.append(("- " if c < 0 else "+ ") + term)
    if form.const != 0 or not parts:
        c = form.const
        parts.append(("- " if c < 0 else "+ ") + str(abs(c)))
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def format_constraint(c: LinearConstraint, names: list[str]) -> str:
    return f"{format_form(c.form, names)} {c.relation} 0"


def format_set(s: SemilinearSet, param: str | None = None) -> str:
    names = _var_names(s.ambient_dim, param)
    if not s.pieces:
        return "false"
    out = []
    for p in s.pieces:
        if not p.constraints:
            out.append("true")
        else:
            out.append("(" + " & ".join(format_constraint(c, names) for c in p.constraints) + ")")
    return " | ".join(out)


# ---------------------------------------------------------------------------
# parser


_RELS = {"<": LT, "<=": LE, "=": EQ, "==": EQ, ">": ">", ">=": ">="}


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.script = Script()

    # -- token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.col)

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "eof":
            shown = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {shown!r}")
        return self.advance()

    def expect_name(self) -> Token:
        if self.tok.kind != "name":
            self.error(f"expected a name, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    # -- statements
    def parse(self) -> Script:
        while self.tok.kind != "eof":
            t = self.tok
            if t.kind == "name" and t.text == "set":
                self.declaration(family=False)
            elif t.kind == "name" and t.text == "family":
                self.declaration(family=True)
            elif t.kind == "name" and t.text in COMMANDS:
                self.command()
            else:
                self.error(f"expected 'set', 'family' or a command, found {t.text!r}")
        return self.script

    def command(self):
        first = self.tok
        words = []
        while self.tok.text != ";":
            if self.tok.kind == "eof":
                self.error("missing ';' after command")
            words.append(self.advance())
        self.advance()
        # re-join tokens that were written without spaces (Z/2, --coeff, 1/4)
        text, prev = [], None
        for w in words:
            if prev is not None and w.line == prev.line and w.col == prev.col + len(prev.text):
                text[-1] += w.text
            else:
                text.append(w.text)
            prev = w
        self.script.commands.append(Command(text, first.line))

    def declaration(self, family: bool):
        self.advance()
        name_tok = self.expect_name()
        name = name_tok.text
        if name in self.script.sets or name in self.script.families:
            self.error(f"name {name!r} already declared", name_tok)
        if name in ("set", "family", "true", "false") or name in COMMANDS:
            self.error(f"{name!r} is reserved", name_tok)
        explicit = None
        if self.tok.text == "[":
            self.advance()
            if self.tok.kind != "num" or "/" in self.tok.text:
                self.error("expected a dimension")
            explicit = int(self.advance().text)
            self.expect("]")
        param = None
        if family:
            self.expect("(")
            ptok = self.expect_name()
            param = ptok.text
            if re.fullmatch(r"x\d+", param):
                self.error("parameter must not be named like a variable", ptok)
            self.expect(")")
        self.expect("=")
        self.expect("{")
        self.param = param
        self.max_var = 0
        self.refs = []
        tree = self.expr()
        self.expect("}")
        self.expect(";")
        fiber = explicit if explicit is not None else max(
            [self.max_var] + [d for d, _ in self.refs])
        if explicit is not None and self.max_var > explicit:
            self.error(f"variable x{self.max_var} exceeds declared dimension {explicit}", name_tok)
        for d, tok in self.refs:
            if d != fiber:
                raise DimensionError(
                    f"set {tok.text!r} has dimension {d}, expected {fiber}", tok.line, tok.col)
        n = fiber + (1 if family else 0)
        value = self.build(tree, n, fiber)
        if family:
            self.script.families[name] = DefinableFamily(value, n - 1)
        else:
            self.script.sets[name] = value

    # -- boolean expressions: trees of tuples built first, sets after the
    # dimension is known
    def expr(self):
        node = self.conj()
        while self.tok.text == "|":
            self.advance()
            node = ("or", node, self.conj())
        return node

    def conj(self):
        node = self.factor()
        while self.tok.text == "&":
            self.advance()
            node = ("and", node, self.factor())
        return node

    def factor(self):
        t = self.tok
        if t.text == "!":
            self.advance()
            return ("not", self.factor())
        if t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "name" and t.text in ("true", "false"):
            self.advance()
            return ("const", t.text == "true")
        if t.kind == "name" and t.text in self.script.sets and t.text != self.param:
            self.advance()
            self.refs.append((self.script.sets[t.text].ambient_dim, t))
            return ("ref", t.text)
        if t.kind == "name" and t.text in self.script.families:
            self.error(f"family {t.text!r} cannot be used as a set")
        return self.atom()

    def atom(self):
        first = self.linear()
        chain = [first]
        rels = []
        while self.tok.text in _RELS:
            rels.append(_RELS[self.advance().text])
            chain.append(self.linear())
        if not rels:
            self.error(f"expected a relation, found {self.tok.text or 'end of input'!r}")
        return ("atom", chain, rels)

    def linear(self):
        """List of ``(coefficient, variable index or None)``; the parameter
        is index 0 (resolved once the dimension is known)."""
        terms = []
        sign = Fraction(1)
        if self.tok.text in "+-" and self.tok.kind == "op":
            sign = Fraction(-1) if self.advance().text == "-" else Fraction(1)
        terms.append(self.monomial(sign))
        while self.tok.kind == "op" and self.tok.text in ("+", "-"):
            sign = Fraction(-1) if self.advance().text == "-" else Fraction(1)
            terms.append(self.monomial(sign))
        return terms

    def monomial(self, sign: Fraction):
        t = self.tok
        coeff = sign
        if t.kind == "num":
            coeff *= Fraction(self.advance().text)
            if self.tok.text == "*":
                self.advance()
                return (coeff, self.variable())
            if self.tok.kind == "name" and self._is_var(self.tok.text):
                return (coeff, self.variable())
            return (coeff, None)
        if t.kind == "name":
            return (coeff, self.variable())
        self.error(f"expected a number or variable, found {t.text or 'end of input'!r}")

    def _is_var(self, text: str) -> bool:
        return bool(re.fullmatch(r"x[1-9]\d*", text)) or text == self.param

    def variable(self):
        t = self.tok
        if t.kind != "name":
            self.error(f"expected a variable, found {t.text or 'end of input'!r}")
        if t.text == self.param:
            self.advance()
            return 0
        if not re.fullmatch(r"x[1-9]\d*", t.text):
            self.error(f"unknown name {t.text!r}")
        self.advance()
        k = int(t.text[1:])
        self.max_var = max(self.max_var, k)
        return k

    # -- evaluation
    def build(self, node, n: int, fiber: int) -> SemilinearSet:
        kind = node[0]
        if kind == "or":
            return self.build(node[1], n, fiber) | self.build(node[2], n, fiber)
        if kind == "and":
            return self.build(node[1], n, fiber) & self.build(node[2], n, fiber)
        if kind == "not":
            return self.build(node[1], n, fiber).complement()
        if kind == "const":
            return SemilinearSet.universe(n) if node[1] else SemilinearSet.empty(n)
        if kind == "ref":
            s = self.script.sets[node[1]]
            return s.extend(n - fiber)
        _, chain, rels = node
        forms = [self._form(terms, n) for terms in chain]
        cons = [LinearConstraint.make(a - b, r) for a, b, r in zip(forms, forms[1:], rels)]
        return SemilinearSet(n, (ConstraintSystem(tuple(cons), n),))

    def _form(self, terms, n: int) -> AffineForm:
        coeffs = [Fraction(0)] * n
        const = Fraction(0)
        for c, v in terms:
            if v is None:
                const += c
            elif v == 0:
                coeffs[n - 1] += c
            else:
                coeffs[v - 1] += c
        return AffineForm(tuple(coeffs), const)


def parse(text: str) -> Script:
    return _Parser(text).parse()


def parse_set(text: str) -> SemilinearSet:
    """Parse a bare boolean expression (without ``set NAME =``)."""
    script = parse(f"set _ = {{ {text} }};")
    return script.sets["_"]
