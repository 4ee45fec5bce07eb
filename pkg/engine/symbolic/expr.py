"""
Grammar, parser and printer for the input expression language.

    expr     := term (('+'|'-') term)*
    term     := factor (('*'|'/') factor)*
    factor   := '-' factor | atom ('^' exponent)?
    atom     := number | 'i' | 'x' | 'ln' '(' 'x' ')' | '(' expr ')'
    exponent := integer | '(' '-'? integer ('/' integer)? ')'
    number   := integer ('/' integer)?

A number literal is greedy: "x/2/3" reads as x / (2/3). The printer
inserts parentheses wherever that would change the tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Tuple, TypeVar, Union

from core.errors import ParseError
from symbolic.numbers import GaussianRational, format_scalar


# ======================== TREE ========================

@dataclass(frozen=True)
class Const:
    value: GaussianRational


@dataclass(frozen=True)
class VarX:
    pass


@dataclass(frozen=True)
class LnX:
    pass


@dataclass(frozen=True)
class Neg:
    child: "Expression"


@dataclass(frozen=True)
class Add:
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Sub:
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Mul:
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Div:
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Pow:
    base: "Expression"
    exponent: Fraction


Expression = Union[Const, VarX, LnX, Neg, Add, Sub, Mul, Div, Pow]

BINARY = (Add, Sub, Mul, Div)

T = TypeVar("T")


def children(e: Expression) -> Tuple[Expression, ...]:
    if isinstance(e, BINARY):
        return (e.left, e.right)
    if isinstance(e, Neg):
        return (e.child,)
    if isinstance(e, Pow):
        return (e.base,)
    return ()


def fold_tree(e: Expression, visit: Callable[[Expression, List[T]], T]) -> T:
    """
    Bottom-up evaluation: visit(node, child_results) runs once per node,
    children left to right. Uses an explicit stack, so long operator
    chains do not hit the interpreter's recursion limit.
    """
    stack: List[Tuple[Expression, bool]] = [(e, False)]
    results: List[T] = []
    while stack:
        node, expanded = stack.pop()
        kids = children(node)
        if kids and not expanded:
            stack.append((node, True))
            stack.extend((kid, False) for kid in reversed(kids))
            continue
        args: List[T] = []
        if kids:
            args = results[-len(kids):]
            del results[-len(kids):]
        results.append(visit(node, args))
    return results[0]


# ======================== TOKENIZER ========================

@dataclass(frozen=True)
class Token:
    kind: str  # "int", "x", "i", "ln", an operator/paren character, or "end"
    text: str
    offset: int


_PUNCT = set("+-*/^()")


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    data = text.encode("utf-8", errors="surrogatepass")
    idx = 0
    n = len(data)
    while idx < n:
        ch = chr(data[idx])
        if ch in " \t\r\n":
            idx += 1
            continue
        if ch.isdigit() and data[idx] < 128:
            start = idx
            while idx < n and data[idx] < 128 and chr(data[idx]).isdigit():
                idx += 1
            tokens.append(Token("int", data[start:idx].decode("ascii"), start))
            continue
        if ch in _PUNCT:
            tokens.append(Token(ch, ch, idx))
            idx += 1
            continue
        if data[idx] < 128 and ch.isalpha():
            start = idx
            while idx < n and data[idx] < 128 and chr(data[idx]).isalpha():
                idx += 1
            word = data[start:idx].decode("ascii")
            if word in ("x", "i", "ln"):
                tokens.append(Token(word, word, start))
                continue
            raise ParseError(f"unknown identifier {word!r}", start, ("x", "i", "ln"))
        if ch == ".":
            raise ParseError("decimal literals are not supported", idx)
        raise ParseError(f"unexpected character {ch!r}", idx)
    tokens.append(Token("end", "", n))
    return tokens


# ======================== PARSER ========================

_ATOM_START = ("int", "i", "x", "ln", "(")

# parentheses plus unary minus; each level costs a few Python frames
MAX_NESTING = 100


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0
        self.depth = 0

    def enter(self, tok: Token) -> None:
        self.depth += 1
        if self.depth > MAX_NESTING:
            raise ParseError(f"expression nested deeper than {MAX_NESTING} levels", tok.offset)

    def leave(self) -> None:
        self.depth -= 1

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, kind: str, message: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(message, tok.offset, (kind,))
        return self.advance()

    def expr(self) -> Expression:
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def term(self) -> Expression:
        node = self.factor()
        while self.peek().kind in ("*", "/"):
            op = self.advance().kind
            right = self.factor()
            node = Mul(node, right) if op == "*" else Div(node, right)
        return node

    def factor(self) -> Expression:
        if self.peek().kind == "-":
            self.enter(self.advance())
            node = Neg(self.factor())
            self.leave()
            return node
        base = self.atom()
        if self.peek().kind == "^":
            self.advance()
            return Pow(base, self.exponent())
        return base

    def _integer(self, message: str) -> Tuple[int, Token]:
        tok = self.expect("int", message)
        try:
            return int(tok.text), tok
        except ValueError:
            # int() refuses literals past sys.get_int_max_str_digits()
            raise ParseError("integer literal too long", tok.offset) from None

    def number(self) -> Expression:
        num, _ = self._integer("expected an integer")
        if self.peek().kind == "/" and self.peek(1).kind == "int":
            self.advance()
            den, tok = self._integer("expected an integer denominator")
            if den == 0:
                raise ParseError("zero denominator in number literal", tok.offset)
            return Const(GaussianRational(Fraction(num, den)))
        return Const(GaussianRational(Fraction(num)))

    def atom(self) -> Expression:
        tok = self.peek()
        if tok.kind == "int":
            return self.number()
        if tok.kind == "i":
            self.advance()
            return Const(GaussianRational.i())
        if tok.kind == "x":
            self.advance()
            return VarX()
        if tok.kind == "ln":
            self.advance()
            self.expect("(", "expected '(' after ln")
            arg = self.peek()
            if arg.kind != "x" or self.peek(1).kind != ")":
                raise ParseError("logarithm argument must be x", arg.offset, ("x",))
            self.advance()
            self.advance()
            return LnX()
        if tok.kind == "(":
            self.enter(self.advance())
            inner = self.expr()
            self.expect(")", "unbalanced parenthesis")
            self.leave()
            return inner
        raise ParseError("unexpected token" if tok.kind != "end" else "unexpected end of input",
                         tok.offset, _ATOM_START + ("-",))

    def exponent(self) -> Fraction:
        tok = self.peek()
        if tok.kind == "int":
            return Fraction(self._integer("exponent must be a literal rational")[0])
        if tok.kind != "(":
            raise ParseError("exponent must be a literal rational", tok.offset, ("int", "("))
        self.advance()
        sign = 1
        if self.peek().kind == "-":
            self.advance()
            sign = -1
        num, _ = self._integer("exponent must be a literal rational")
        den = 1
        if self.peek().kind == "/":
            self.advance()
            den, den_tok = self._integer("exponent must be a literal rational")
            if den == 0:
                raise ParseError("zero denominator in exponent", den_tok.offset)
        self.expect(")", "exponent must be a literal rational")
        return Fraction(sign * num, den)


def parse(text: str) -> Expression:
    """Parse text into an Expression tree; raises ParseError with a byte offset."""
    parser = _Parser(tokenize(text))
    tree = parser.expr()
    tail = parser.peek()
    if tail.kind != "end":
        raise ParseError("unexpected trailing input", tail.offset, ("+", "-", "*", "/", "end"))
    return tree


def parse_constant(text: str) -> GaussianRational:
    """Parse a constant-only expression (CLI parameters such as --a "1/2+1/3*i")."""
    folded = fold_constants(parse(text))
    if not isinstance(folded, Const):
        # offset 0: the whole argument is rejected, not one token
        raise ParseError("expected a constant expression", 0, ("int", "i"))
    return folded.value


# ======================== CONSTANT FOLDING ========================

def _const_pow(value: GaussianRational, exponent: Fraction) -> Optional[GaussianRational]:
    if exponent.denominator != 1:
        return None
    if value.is_zero() and exponent < 0:
        return None
    return value ** int(exponent)


def _fold_node(e: Expression, args: List[Expression]) -> Expression:
    if isinstance(e, (Const, VarX, LnX)):
        return e
    if isinstance(e, Neg):
        (child,) = args
        if isinstance(child, Const):
            return Const(-child.value)
        return Neg(child)
    if isinstance(e, Pow):
        (base,) = args
        if isinstance(base, Const):
            value = _const_pow(base.value, e.exponent)
            if value is not None:
                return Const(value)
        return Pow(base, e.exponent)
    left, right = args
    if isinstance(left, Const) and isinstance(right, Const):
        a, b = left.value, right.value
        if isinstance(e, Add):
            return Const(a + b)
        if isinstance(e, Sub):
            return Const(a - b)
        if isinstance(e, Mul):
            return Const(a * b)
        if not b.is_zero():
            return Const(a / b)
    return type(e)(left, right)


def fold_constants(e: Expression) -> Expression:
    """Collapse every constant-only subtree into a single Const."""
    return fold_tree(e, _fold_node)


# ======================== PRINTER ========================

_PREC_SUM, _PREC_PRODUCT, _PREC_UNARY, _PREC_POWER, _PREC_ATOM = 1, 2, 3, 4, 5


def _const_prec(z: GaussianRational) -> int:
    if z.im == 0:
        if z.re < 0:
            return _PREC_UNARY
        return _PREC_ATOM if z.re.denominator == 1 else _PREC_PRODUCT
    if z.re != 0:
        return _PREC_SUM
    if z.im == 1:
        return _PREC_ATOM
    if z.im == -1:
        return _PREC_UNARY
    return _PREC_PRODUCT


def _prec(e: Expression) -> int:
    if isinstance(e, Const):
        return _const_prec(e.value)
    if isinstance(e, (Add, Sub)):
        return _PREC_SUM
    if isinstance(e, (Mul, Div)):
        return _PREC_PRODUCT
    if isinstance(e, Neg):
        return _PREC_UNARY
    if isinstance(e, Pow):
        return _PREC_POWER
    return _PREC_ATOM


def _starts_with_literal(e: Expression) -> bool:
    """Printed form begins (after leading minus signs) with a bare integer."""
    while True:
        if isinstance(e, Const):
            return e.value.re != 0 or e.value.im not in (1, -1)
        if isinstance(e, Neg):
            if _prec(e.child) < _PREC_UNARY:
                return False
            e = e.child
        elif isinstance(e, BINARY):
            e = e.left
        elif isinstance(e, Pow):
            if _prec(e.base) < _PREC_ATOM:
                return False
            e = e.base
        else:
            return False


def _ends_with_literal(e: Expression) -> bool:
    """Printed form ends with a bare integer outside any exponent."""
    while True:
        if isinstance(e, Const):
            return e.value.im == 0
        if isinstance(e, Neg):
            if _prec(e.child) < _PREC_UNARY:
                return False
            e = e.child
        elif isinstance(e, (Mul, Div)):
            if _prec(e.right) <= _PREC_PRODUCT:
                return False
            e = e.right
        elif isinstance(e, (Add, Sub)):
            if _prec(e.right) <= _PREC_SUM:
                return False
            e = e.right
        else:
            return False


def _wrap(e: Expression, text: str, min_prec: int) -> str:
    return f"({text})" if _prec(e) < min_prec else text


def _format_exponent(q: Fraction) -> str:
    if q.denominator == 1 and q >= 0:
        return str(q.numerator)
    if q.denominator == 1:
        return f"({q.numerator})"
    return f"({q.numerator}/{q.denominator})"


def _format_node(e: Expression, args: List[str]) -> str:
    if isinstance(e, Const):
        return format_scalar(e.value)
    if isinstance(e, VarX):
        return "x"
    if isinstance(e, LnX):
        return "ln(x)"
    if isinstance(e, Neg):
        return "-" + _wrap(e.child, args[0], _PREC_UNARY)
    if isinstance(e, Pow):
        return _wrap(e.base, args[0], _PREC_ATOM) + "^" + _format_exponent(e.exponent)
    if isinstance(e, (Add, Sub)):
        op = " + " if isinstance(e, Add) else " - "
        return _wrap(e.left, args[0], _PREC_SUM) + op + _wrap(e.right, args[1], _PREC_SUM + 1)
    left = _wrap(e.left, args[0], _PREC_PRODUCT)
    right = _wrap(e.right, args[1], _PREC_PRODUCT + 1)
    if isinstance(e, Div) and not right.startswith("(") \
            and _ends_with_literal(e.left) and _prec(e.left) >= _PREC_PRODUCT \
            and _starts_with_literal(e.right):
        right = f"({right})"
    return left + ("*" if isinstance(e, Mul) else "/") + right


def format(e: Expression) -> str:  # noqa: A001 - mirrors the grammar's printer name
    """Render e with minimal parentheses; the output re-parses to e."""
    return fold_tree(e, _format_node)
