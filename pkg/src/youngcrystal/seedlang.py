"""A small line-oriented language for seeds.

    seed n = 3
    initial: e3 == 0 && e2 ≡ 1 mod 2 && e1 - e2 !≡ 2 mod 3
    class i: e2 - e3 ≡ 1 mod 2 && e1 - e2 ≡ 1 mod 3 -> offset (0, 1, 2)
    ...

``e1`` is the largest entry and ``eN`` the smallest.  Offsets are listed in
the same order tableaux are stored, smallest entry first.  ``#`` starts a
comment; blank lines are ignored.  ASCII ``~`` and ``!~`` may stand in for
``≡`` and ``!≡``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

from .chains import Atom, SeedClass, SeedSpec, render_predicate


class SeedLangError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class SeedSyntaxError(SeedLangError):
    pass


class SeedSemanticError(SeedLangError):
    pass


@dataclass(frozen=True)
class ClassDecl:
    name: str
    predicate: tuple[Atom, ...]
    offset: tuple[int, ...]


@dataclass(frozen=True)
class SeedFile:
    n: int
    initial: tuple[Atom, ...]
    classes: tuple[ClassDecl, ...]


_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<word>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>&&|->|!≡|!~|==|≡|~|[=:(),\-]))"
)


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokens(line: str, lineno: int) -> list[_Tok]:
    out = []
    pos = 0
    text = line.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise SeedSyntaxError(f"unexpected character {text[col - 1]!r}", lineno, col)
        kind = m.lastgroup
        out.append(_Tok(kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return out


class _Line:
    """Cursor over the tokens of one line."""

    def __init__(self, toks: list[_Tok], lineno: int, width: int):
        self.toks = toks
        self.i = 0
        self.lineno = lineno
        self.width = width

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def error(self, message: str, tok: _Tok | None = None) -> SeedSyntaxError:
        tok = tok or self.peek()
        col = tok.col if tok else self.width + 1
        return SeedSyntaxError(message, self.lineno, col)

    def take(self, kind: str, text: str | None = None) -> _Tok:
        tok = self.peek()
        if tok is None or tok.kind != kind or (text is not None and tok.text != text):
            want = repr(text) if text else kind
            got = repr(tok.text) if tok else "end of line"
            raise self.error(f"expected {want}, got {got}")
        self.i += 1
        return tok

    def accept(self, kind: str, text: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.kind == kind and tok.text == text:
            self.i += 1
            return True
        return False

    def int(self) -> tuple[int, _Tok]:
        tok = self.take("int")
        return int(tok.text), tok

    def done(self) -> None:
        if self.peek() is not None:
            raise self.error(f"unexpected {self.peek().text!r}")


_ENTRY = re.compile(r"e(\d+)$")


def _entry(cur: _Line) -> tuple[int, _Tok]:
    tok = cur.take("word")
    m = _ENTRY.match(tok.text)
    if not m:
        raise cur.error(f"expected an entry like e1, got {tok.text!r}", tok)
    return int(m.group(1)), tok


def _atom(cur: _Line, n: int) -> Atom:
    left, ltok = _entry(cur)
    right = None
    rtok = None
    if cur.accept("op", "-"):
        right, rtok = _entry(cur)
    for idx, tok in ((left, ltok), (right, rtok)):
        if idx is not None and not 1 <= idx <= n:
            raise SeedSemanticError(f"entry e{idx} out of range 1..{n}", cur.lineno, tok.col)
    rel = cur.peek()
    if rel is None or rel.kind != "op" or rel.text not in ("≡", "~", "==", "!≡", "!~"):
        raise cur.error("expected '≡', '==' or '!≡'")
    cur.i += 1
    negate = rel.text in ("!≡", "!~")
    value, _ = cur.int()
    modulus = None
    tok = cur.peek()
    if tok is not None and tok.kind == "word" and tok.text == "mod":
        cur.i += 1
        modulus, mtok = cur.int()
        if modulus < 1:
            raise SeedSemanticError(f"modulus {modulus} < 1", cur.lineno, mtok.col)
    elif negate:
        raise cur.error("'!≡' needs a modulus")
    return Atom(left, right, value, modulus, negate)


def _predicate(cur: _Line, n: int) -> tuple[Atom, ...]:
    atoms = [_atom(cur, n)]
    while cur.accept("op", "&&"):
        atoms.append(_atom(cur, n))
    return tuple(atoms)


def _offset(cur: _Line, n: int) -> tuple[int, ...]:
    cur.take("word", "offset")
    open_tok = cur.take("op", "(")
    vals = [cur.int()[0]]
    while cur.accept("op", ","):
        vals.append(cur.int()[0])
    cur.take("op", ")")
    if sorted(vals) != list(range(n)):
        raise SeedSemanticError(
            f"offset {tuple(vals)} is not a permutation of 0..{n - 1}", cur.lineno, open_tok.col
        )
    return tuple(vals)


def parse(text: str) -> SeedFile:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks = _tokens(body, lineno)
        if toks:
            lines.append(_Line(toks, lineno, len(body.rstrip())))
    if not lines:
        raise SeedSyntaxError("empty seed file, expected 'seed n = INT'", 1, 1)

    head = lines[0]
    head.take("word", "seed")
    head.take("word", "n")
    head.take("op", "=")
    n, ntok = head.int()
    head.done()
    if n < 1:
        raise SeedSemanticError("n must be at least 1", head.lineno, ntok.col)

    if len(lines) < 2:
        raise SeedSyntaxError("expected 'initial:' line", head.lineno + 1, 1)
    init = lines[1]
    init.take("word", "initial")
    init.take("op", ":")
    initial = _predicate(init, n)
    init.done()

    classes = []
    names: set[str] = set()
    for cur in lines[2:]:
        cur.take("word", "class")
        name_tok = cur.take("word")
        if name_tok.text in names:
            raise SeedSemanticError(f"duplicate class {name_tok.text!r}", cur.lineno, name_tok.col)
        names.add(name_tok.text)
        cur.take("op", ":")
        pred = _predicate(cur, n)
        cur.take("op", "->")
        offset = _offset(cur, n)
        cur.done()
        classes.append(ClassDecl(name_tok.text, pred, offset))
    if not classes:
        last = lines[-1]
        raise SeedSyntaxError("expected at least one 'class' line", last.lineno + 1, 1)
    return SeedFile(n, initial, tuple(classes))


def render(f: SeedFile) -> str:
    """Canonical text: single spaces, no comments, trailing newline."""
    out = [f"seed n = {f.n}", f"initial: {render_predicate(f.initial)}"]
    for c in f.classes:
        off = ", ".join(str(v) for v in c.offset)
        out.append(f"class {c.name}: {render_predicate(c.predicate)} -> offset ({off})")
    return "\n".join(out) + "\n"


def to_seedspec(f: SeedFile) -> SeedSpec:
    return SeedSpec(f.n, f.initial, tuple(SeedClass(c.name, c.predicate, c.offset) for c in f.classes))


def from_seedspec(seed: SeedSpec) -> SeedFile:
    return SeedFile(
        seed.n, seed.initial, tuple(ClassDecl(c.name, c.predicate, c.offset) for c in seed.classes)
    )


SHIPPED = {2: "s2.seed", 3: "s3.seed", 4: "s4.seed"}


def shipped_text(n: int) -> str:
    return resources.files("youngcrystal").joinpath("seeds").joinpath(SHIPPED[n]).read_text(encoding="utf-8")


def load(path) -> SeedSpec:
    with open(path, encoding="utf-8") as fh:
        return to_seedspec(parse(fh.read()))
