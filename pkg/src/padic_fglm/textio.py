"""Text formats for systems, bases and matrices.

System files::

    # comment
    p 5
    prec 50
    vars x y
    order grevlex
    poly x^2 - y
    poly 3*x^2*y + 7
    poly (3/5^2 + O(5^40))*x + 1

One statement per line; ``#`` starts a comment.  Coefficients are
integers, optionally divided by a power of the prime (negative
valuation), optionally annotated with an explicit precision ``O(p^k)``;
unannotated coefficients carry the header precision.  An annotated
coefficient multiplying a monomial is parenthesized.

Matrix files share the ``p``/``prec`` header; the first body line is
``rows cols`` and each following line is one entry in the scalar form,
row-major.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import InvalidPrime, ParseError, UnknownVariable
from .orders import ORDER_TAGS, sort_key
from .padics import INF, Ball, PadicField, format_scalar
from .polynomials import GroebnerBasis, OrderedPoly, PolyRing


@dataclass
class ParsedSystem:
    field: PadicField
    ring: PolyRing
    order: str
    prec: int
    polys: list


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class _Tokens:
    """Tokenizer for polynomial expressions with position tracking."""

    def __init__(self, text: str, line: int):
        self.text = text
        self.line = line
        self.pos = 0

    def error(self, message):
        return ParseError(message, self.line, self.pos + 1)

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take_int(self) -> int:
        self.peek()
        m = re.match(r"\d+", self.text[self.pos :])
        if not m:
            raise self.error("expected an integer")
        self.pos += m.end()
        return int(m.group())

    def take_name(self) -> str:
        self.peek()
        m = _NAME.match(self.text[self.pos :])
        if not m:
            raise self.error("expected a name")
        self.pos += m.end()
        return m.group()

    def take(self, ch: str):
        got = self.peek()
        if got != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def try_take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False


def _parse_p_power(tk: _Tokens, p: int) -> int:
    """p or p^k; returns k."""
    base = tk.take_int()
    if base != p:
        raise tk.error(f"powers must use the prime {p}")
    if tk.try_take("^"):
        return tk.take_int()
    return 1


def _parse_scalar(tk: _Tokens, field: PadicField, default_prec: int) -> Ball:
    """[-]int [ / p^k ] [ + O(p^k) ] — positions after any leading sign."""
    sign = 1
    if tk.try_take("-"):
        sign = -1
    num = tk.take_int() * sign
    shift = 0
    if tk.try_take("/"):
        shift = -_parse_p_power(tk, field.p)
    prec = default_prec
    save = tk.pos
    if tk.try_take("+"):
        if tk.peek() == "O":
            tk.take("O")
            tk.take("(")
            prec = _parse_p_power(tk, field.p)
            tk.take(")")
        else:
            tk.pos = save
    return field.make(num, shift, prec)


def _parse_term(tk: _Tokens, ring: PolyRing, default_prec: int, var_index):
    """One signed term: coefficient and/or monomial factors joined by *."""
    field = ring.field
    coeff = None
    expo = [0] * ring.nvars
    saw_factor = False
    while True:
        ch = tk.peek()
        if ch is None:
            break
        if ch == "(":
            tk.take("(")
            c = _parse_scalar(tk, field, default_prec)
            tk.take(")")
            coeff = c if coeff is None else coeff * c
            saw_factor = True
        elif ch.isdigit():
            c = _parse_scalar(tk, field, default_prec)
            coeff = c if coeff is None else coeff * c
            saw_factor = True
        elif ch.isalpha() or ch == "_":
            at = tk.pos
            name = tk.take_name()
            if name == "O":
                # a standalone O(p^k) term is the zero coset at precision k
                tk.take("(")
                k = _parse_p_power(tk, field.p)
                tk.take(")")
                z = field.zero(k)
                coeff = z if coeff is None else coeff * z
                saw_factor = True
            else:
                if name not in var_index:
                    raise UnknownVariable(f"unknown variable {name!r}", tk.line, at + 1)
                e = 1
                if tk.try_take("^"):
                    e = tk.take_int()
                expo[var_index[name]] += e
                saw_factor = True
        else:
            break
        if not tk.try_take("*"):
            break
    if not saw_factor:
        raise tk.error("empty term")
    if coeff is None:
        coeff = field.ball(1, default_prec) if any(expo) else field.one()
    return tuple(expo), coeff


def parse_poly_text(text: str, ring: PolyRing, default_prec: int, line: int = 1) -> OrderedPoly:
    tk = _Tokens(text, line)
    var_index = {v: i for i, v in enumerate(ring.variables)}
    terms: dict = {}
    zero_prec = INF
    first = True
    while True:
        ch = tk.peek()
        if ch is None:
            break
        sign = 1
        if ch == "+":
            tk.take("+")
        elif ch == "-":
            tk.take("-")
            sign = -1
        elif not first:
            raise tk.error("expected + or - between terms")
        mono, coeff = _parse_term(tk, ring, default_prec, var_index)
        if sign < 0:
            coeff = -coeff
        cur = terms.get(mono)
        new = coeff if cur is None else cur + coeff
        if new.is_zero():
            terms.pop(mono, None)
            if new.prec != INF:
                zero_prec = min(zero_prec, new.prec)
        else:
            terms[mono] = new
        first = False
    if first:
        raise tk.error("empty polynomial")
    return OrderedPoly(ring, terms, zero_prec)


def parse_system(text: str) -> ParsedSystem:
    """Parse a full system file; strict, no recovery."""
    p = prec = None
    names = None
    order = None
    ring = None
    polys = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "p":
            try:
                p = int(rest)
            except ValueError:
                raise ParseError("p expects an integer", lineno)
        elif head == "prec":
            try:
                prec = int(rest)
            except ValueError:
                raise ParseError("prec expects an integer", lineno)
            if prec <= 0:
                raise ParseError("prec must be positive", lineno)
        elif head == "vars":
            names = tuple(rest.split())
            if not names or not all(_NAME.fullmatch(n) for n in names):
                raise ParseError("vars expects a list of names", lineno)
        elif head == "order":
            if rest not in ORDER_TAGS:
                raise ParseError(f"order must be one of {', '.join(ORDER_TAGS)}", lineno)
            order = rest
        elif head == "poly":
            if ring is None:
                if p is None or prec is None or names is None or order is None:
                    raise ParseError("poly before a complete header (p, prec, vars, order)", lineno)
                try:
                    field = PadicField(p)
                except InvalidPrime:
                    raise ParseError(f"{p} is not prime", lineno)
                ring = PolyRing(field, names)
            polys.append(parse_poly_text(rest, ring, prec, lineno))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if ring is None or not polys:
        raise ParseError("no polynomials found")
    return ParsedSystem(field=ring.field, ring=ring, order=order, prec=prec, polys=polys)


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------


def _fmt_monomial(mono, names) -> str:
    factors = [f"{n}^{e}" if e > 1 else n for n, e in zip(names, mono) if e]
    return "*".join(factors)


def _fmt_coeff(ball: Ball, p: int):
    """(text, negated) for a coefficient; annotated unless exact."""
    neg = False
    if ball.val is not None and ball.prec == INF and ball.unit < 0:
        ball, neg = -ball, True
    text = format_scalar(ball)
    if ball.prec != INF:
        if text.startswith("-"):
            text, neg = format_scalar(-ball), True
        text = f"({text})"
    return (text, neg)


def format_poly(f: OrderedPoly, order: str) -> str:
    names = f.ring.variables
    p = f.ring.field.p
    bits = []
    for mono in sorted(f.terms, key=lambda u: sort_key(order, u), reverse=True):
        c = f.terms[mono]
        mono_txt = _fmt_monomial(mono, names)
        if c.prec == INF and c.val == 0 and c.unit in (1, -1) and mono_txt:
            text, neg = ("", c.unit < 0)
        else:
            text, neg = _fmt_coeff(c, p)
        if mono_txt and text:
            piece = f"{text}*{mono_txt}"
        else:
            piece = text or mono_txt or "1"
        if not bits:
            bits.append(f"-{piece}" if neg else piece)
        else:
            bits.append(f"- {piece}" if neg else f"+ {piece}")
    if f.zero_prec != INF:
        # pruned coefficients were only known to vanish at this precision
        tail = f"O({p}^{int(f.zero_prec)})"
        bits.append(f"+ {tail}" if bits else tail)
    return " ".join(bits) if bits else "0"


def emit_basis(G: GroebnerBasis) -> str:
    """Round-trippable text form of a basis, one poly per line, terms in
    decreasing order, finite-precision coefficients annotated."""
    ring = G.ring
    prec = G.prec if G.prec != INF else 1
    lines = [
        f"p {ring.field.p}",
        f"prec {int(prec)}",
        f"vars {' '.join(ring.variables)}",
        f"order {G.order}",
    ]
    for g in G.polys:
        lines.append(f"poly {format_poly(g, G.order)}")
    return "\n".join(lines) + "\n"


def basis_from_parsed(parsed: ParsedSystem) -> GroebnerBasis:
    return GroebnerBasis(parsed.polys, parsed.order, parsed.ring)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


def parse_matrix(text: str):
    """(field, BallMatrix) from the matrix file format."""
    from .linalg import BallMatrix

    p = prec = None
    shape = None
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "p":
            p = int(rest)
            continue
        if head == "prec":
            prec = int(rest)
            continue
        if shape is None:
            parts = line.split()
            if len(parts) != 2:
                raise ParseError("expected 'rows cols'", lineno)
            shape = (int(parts[0]), int(parts[1]))
            if p is None or prec is None:
                raise ParseError("matrix body before p/prec header", lineno)
            field = PadicField(p)
            continue
        tk = _Tokens(line, lineno)
        entries.append(_parse_scalar(tk, field, prec))
        if tk.peek() is not None:
            raise ParseError("one entry per line", lineno)
    if shape is None:
        raise ParseError("missing matrix shape")
    rows, cols = shape
    if len(entries) != rows * cols:
        raise ParseError(f"expected {rows * cols} entries, found {len(entries)}")
    return field, BallMatrix(field, [entries[r * cols : (r + 1) * cols] for r in range(rows)])


def emit_matrix(M, prec: int) -> str:
    lines = [f"p {M.ring.p}", f"prec {int(prec)}", f"{M.rows} {M.cols}"]
    for row in M.entries:
        for e in row:
            lines.append(format_scalar(e))
    return "\n".join(lines) + "\n"
