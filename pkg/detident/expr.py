# Dependencies
# ============
# Standard
# --------
from dataclasses import dataclass, field
from enum import Enum, auto
import re
import typing as t

# Local
# -----
from .identities import generic_variable_names
from .matrices import DimensionError, Matrix, det, trace
from .rings import (
    ZZ,
    FractionField,
    IntegerRing,
    PolynomialRing,
    RingContext,
    RingElement,
    RingError,
)

Value = t.Union[Matrix, RingElement, bool]


# Errors
# ======
@dataclass(frozen=True)
class Span:
    start: int
    end: int


class ExprError(ValueError):
    """Error in DSL text, located by a span of source offsets."""

    def __init__(self, message: str, span: Span):
        super().__init__(message)
        self.message = message
        self.span = span

    def diagnostic(self, source: str) -> str:
        """Message followed by the source line and a caret marker."""
        width = max(1, self.span.end - self.span.start)
        return (
            f"{self.message} (at offset {self.span.start})\n"
            f"  {source}\n"
            f"  {' ' * self.span.start}{'^' * width}"
        )


class LexError(ExprError):
    pass


class ParseError(ExprError):
    def __init__(self, message: str, span: Span, expected: t.AbstractSet["Tk"]):
        super().__init__(message, span)
        self.expected = frozenset(expected)


class EvalError(ExprError):
    pass


# Tokens
# ======
class Tk(Enum):
    """Token kinds."""

    IDENTIFIER = auto()
    INTEGER = auto()
    PLUS = auto()
    MINUS = auto()
    STAR = auto()
    CARET = auto()
    LPAREN = auto()
    RPAREN = auto()
    LBRACKET = auto()
    RBRACKET = auto()
    COMMA = auto()
    EQ_EQ = auto()
    KW_DET = auto()
    KW_TR = auto()
    KW_I = auto()
    END = auto()


SYMBOLS = {
    "==": Tk.EQ_EQ,
    "+": Tk.PLUS,
    "-": Tk.MINUS,
    "*": Tk.STAR,
    "^": Tk.CARET,
    "(": Tk.LPAREN,
    ")": Tk.RPAREN,
    "[": Tk.LBRACKET,
    "]": Tk.RBRACKET,
    ",": Tk.COMMA,
}
KEYWORDS = {"det": Tk.KW_DET, "tr": Tk.KW_TR, "I": Tk.KW_I}
DISPLAY = {
    Tk.IDENTIFIER: "identifier",
    Tk.INTEGER: "integer",
    Tk.KW_DET: "det",
    Tk.KW_TR: "tr",
    Tk.KW_I: "I",
    Tk.END: "end of input",
}
DISPLAY.update({kind: f"'{text}'" for text, kind in SYMBOLS.items()})

TOKEN_PATTERN = re.compile(
    r"(?P<space>\s+)"
    r"|(?P<word>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<integer>[0-9]+)"
    r"|(?P<symbol>==|[-+*^()\[\],])"
)


@dataclass(frozen=True)
class Token:
    kind: Tk
    text: str
    offset: int

    @property
    def span(self) -> Span:
        return Span(self.offset, self.offset + max(1, len(self.text)))


def tokenize(source: str) -> t.List[Token]:
    """Maximal-munch tokenization. The list always ends with an END token
    placed at the end of the source."""
    tokens = list()
    position = 0
    while position < len(source):
        match = TOKEN_PATTERN.match(source, position)
        if not match:
            raise LexError(
                f"Unexpected character {source[position]!r}", Span(position, position + 1)
            )
        text = match.group()
        if match.lastgroup == "word":
            tokens.append(Token(KEYWORDS.get(text, Tk.IDENTIFIER), text, position))
        elif match.lastgroup == "integer":
            tokens.append(Token(Tk.INTEGER, text, position))
        elif match.lastgroup == "symbol":
            tokens.append(Token(SYMBOLS[text], text, position))
        position = match.end()
    tokens.append(Token(Tk.END, "", len(source)))
    return tokens


# Syntax tree
# ===========
class Nk(Enum):
    """Node kinds. Identifiers are not split into matrix and scalar
    variables here; their sort is known only once bound."""

    VAR = auto()
    IDENTITY = auto()
    INT = auto()
    ADD = auto()
    SUB = auto()
    NEG = auto()
    MUL = auto()
    POW = auto()
    DET = auto()
    TR = auto()
    EQ = auto()


ATOMS = {Nk.VAR, Nk.IDENTITY, Nk.INT, Nk.DET, Nk.TR}


@dataclass(frozen=True)
class Node:
    kind: Nk
    children: t.Tuple["Node", ...] = ()
    value: t.Union[str, int, None] = None
    span: Span = field(default=Span(0, 0), compare=False)


def _join(left: Span, right: Span) -> Span:
    return Span(left.start, right.end)


class Parser(object):
    """Recursive-descent parser for

        equation := expr [ "==" expr ]
        expr     := term { ("+" | "-") term }
        term     := factor { "*" factor }
        factor   := [ "-" ] atom [ "^" integer ]
        atom     := "det" "(" expr ")" | "tr" "(" expr ")" | "I"
                  | identifier | integer | "(" expr ")"
    """

    def __init__(self, tokens: t.Sequence[Token]):
        self.tokens = list(tokens)
        self.index = 0

    @property
    def token(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.token
        if token.kind is not Tk.END:
            self.index += 1
        return token

    def expect(self, *kinds: Tk) -> Token:
        if self.token.kind not in kinds:
            self.fail(set(kinds))
        return self.advance()

    def fail(self, expected: t.AbstractSet[Tk]) -> t.NoReturn:
        token = self.token
        found = DISPLAY[token.kind] if token.kind is Tk.END else repr(token.text)
        wanted = " or ".join(sorted(DISPLAY[k] for k in expected))
        raise ParseError(f"Expected {wanted}, found {found}", token.span, expected)

    def equation(self) -> Node:
        left = self.expr()
        if self.token.kind is Tk.EQ_EQ:
            self.advance()
            right = self.expr()
            left = Node(Nk.EQ, (left, right), span=_join(left.span, right.span))
        if self.token.kind is not Tk.END:
            expected = {Tk.END, Tk.PLUS, Tk.MINUS, Tk.STAR}
            if left.kind is not Nk.EQ:
                expected.add(Tk.EQ_EQ)
            self.fail(expected)
        return left

    def expr(self) -> Node:
        node = self.term()
        while self.token.kind in (Tk.PLUS, Tk.MINUS):
            kind = Nk.ADD if self.advance().kind is Tk.PLUS else Nk.SUB
            right = self.term()
            node = Node(kind, (node, right), span=_join(node.span, right.span))
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.token.kind is Tk.STAR:
            self.advance()
            right = self.factor()
            node = Node(Nk.MUL, (node, right), span=_join(node.span, right.span))
        return node

    def factor(self) -> Node:
        if self.token.kind is Tk.MINUS:
            start = self.advance().span
            operand = self.atom()
            node = Node(Nk.NEG, (operand,), span=_join(start, operand.span))
        else:
            node = self.atom()
        if self.token.kind is Tk.CARET:
            self.advance()
            exponent = self.expect(Tk.INTEGER)
            node = Node(
                Nk.POW, (node,), int(exponent.text), span=_join(node.span, exponent.span)
            )
        return node

    def atom(self) -> Node:
        token = self.token
        if token.kind in (Tk.KW_DET, Tk.KW_TR):
            self.advance()
            self.expect(Tk.LPAREN)
            inner = self.expr()
            close = self.expect(Tk.RPAREN)
            kind = Nk.DET if token.kind is Tk.KW_DET else Nk.TR
            return Node(kind, (inner,), span=_join(token.span, close.span))
        if token.kind is Tk.KW_I:
            self.advance()
            return Node(Nk.IDENTITY, span=token.span)
        if token.kind is Tk.IDENTIFIER:
            self.advance()
            return Node(Nk.VAR, value=token.text, span=token.span)
        if token.kind is Tk.INTEGER:
            self.advance()
            return Node(Nk.INT, value=int(token.text), span=token.span)
        if token.kind is Tk.LPAREN:
            self.advance()
            inner = self.expr()
            self.expect(Tk.RPAREN)
            return inner
        self.fail({Tk.KW_DET, Tk.KW_TR, Tk.KW_I, Tk.IDENTIFIER, Tk.INTEGER, Tk.LPAREN})

    def matrix_literal(self) -> t.List[t.List[Node]]:
        """[[e, ...], ...] with arbitrary scalar expressions as entries."""
        rows = list()
        self.expect(Tk.LBRACKET)
        while True:
            self.expect(Tk.LBRACKET)
            row = [self.expr()]
            while self.token.kind is Tk.COMMA:
                self.advance()
                row.append(self.expr())
            self.expect(Tk.RBRACKET)
            rows.append(row)
            if self.token.kind is not Tk.COMMA:
                break
            self.advance()
        self.expect(Tk.RBRACKET)
        self.expect(Tk.END)
        return rows


def parse(source: t.Union[str, t.Sequence[Token]]) -> Node:
    tokens = tokenize(source) if isinstance(source, str) else source
    return Parser(tokens).equation()


# Pretty printing
# ===============
def _atomic(node: Node) -> str:
    text = unparse(node)
    return text if node.kind in ATOMS else f"({text})"


def unparse(node: Node) -> str:
    """Renders a tree with just enough parentheses to parse back to the
    same tree."""
    kind = node.kind
    if kind is Nk.VAR:
        return str(node.value)
    if kind is Nk.INT:
        return str(node.value)
    if kind is Nk.IDENTITY:
        return "I"
    if kind in (Nk.DET, Nk.TR):
        name = "det" if kind is Nk.DET else "tr"
        return f"{name}({unparse(node.children[0])})"
    if kind is Nk.EQ:
        left, right = node.children
        return f"{unparse(left)} == {unparse(right)}"
    if kind in (Nk.ADD, Nk.SUB):
        left, right = node.children
        right_text = unparse(right)
        if right.kind in (Nk.ADD, Nk.SUB):
            right_text = f"({right_text})"
        op = "+" if kind is Nk.ADD else "-"
        return f"{unparse(left)} {op} {right_text}"
    if kind is Nk.MUL:
        left, right = node.children
        left_text, right_text = unparse(left), unparse(right)
        if left.kind in (Nk.ADD, Nk.SUB):
            left_text = f"({left_text})"
        if right.kind in (Nk.ADD, Nk.SUB, Nk.MUL):
            right_text = f"({right_text})"
        return f"{left_text}*{right_text}"
    if kind is Nk.NEG:
        return f"-{_atomic(node.children[0])}"
    if kind is Nk.POW:
        (base,) = node.children
        if base.kind is Nk.NEG:
            return f"-{_atomic(base.children[0])}^{node.value}"
        return f"{_atomic(base)}^{node.value}"
    raise ValueError(f"Unknown node kind {kind}.")


# Evaluation
# ==========
class _Generic(object):
    def __repr__(self) -> str:
        return "GENERIC"


GENERIC = _Generic()
Binding = t.Union[Matrix, RingElement, int, _Generic]


def generic_context(context: RingContext, names: t.Sequence[str]) -> RingContext:
    """Ring obtained from `context` by adjoining indeterminates."""
    if not names:
        return context
    if isinstance(context, IntegerRing):
        return PolynomialRing(names)
    if isinstance(context, PolynomialRing):
        return context.extend(names)
    if isinstance(context, FractionField):
        return FractionField(generic_context(context.base, names))
    raise RingError(f"Generic matrices are not supported over {context.describe()}.")


class Environment(object):
    """Dimension, ring and bindings for evaluation. Generic bindings become
    matrices of fresh indeterminates `<name>_<i>_<j>` (name lower-cased),
    adjoined to the ring in binding order; concrete bindings are mapped
    into the enlarged ring."""

    def __init__(
        self,
        n: int,
        context: RingContext = ZZ,
        bindings: t.Optional[t.Mapping[str, Binding]] = None,
    ):
        if n < 1:
            raise RingError(f"Dimension must be positive, got {n}.")
        bindings = dict(bindings or {})
        generics = [name for name, value in bindings.items() if value is GENERIC]
        names: t.List[str] = list()
        for name in generics:
            names.extend(generic_variable_names(name.lower(), n))
        clashes = [v for v in names if v in context.variables]
        if clashes:
            raise RingError(
                f"Generic entries {', '.join(clashes)} clash with variables of "
                f"{context.describe()}; rename the matrix or the variables."
            )
        self.n = n
        self.context = generic_context(context, names)
        self.bindings: t.Dict[str, t.Union[Matrix, RingElement]] = dict()
        for name, value in bindings.items():
            if value is GENERIC:
                self.bindings[name] = self._generic(name)
            elif isinstance(value, Matrix):
                if value.n != n:
                    raise DimensionError(
                        f"Matrix {name} is {value.n}×{value.n}, expected {n}×{n}."
                    )
                self.bindings[name] = value.change_ring(self.context)
            else:
                self.bindings[name] = self.context.embed(value)

    def _generic(self, name: str) -> Matrix:
        ring = self.context.base if isinstance(self.context, FractionField) else self.context
        variables = [self.context.embed(ring.var(v)) for v in generic_variable_names(name.lower(), self.n)]
        n = self.n
        return Matrix._raw([variables[k * n:(k + 1) * n] for k in range(n)], self.context)

    def lookup(self, name: str, span: Span) -> t.Union[Matrix, RingElement]:
        if name in self.bindings:
            return self.bindings[name]
        if name in self.context.variables:
            ring = self.context.base if isinstance(self.context, FractionField) else self.context
            return self.context.embed(ring.var(name))
        raise EvalError(f"Unbound identifier {name}", span)


def _sort(value: Value) -> str:
    if isinstance(value, bool):
        return "boolean"
    return "matrix" if isinstance(value, Matrix) else "scalar"


def evaluate(node: Node, env: Environment) -> Value:
    """Evaluates a tree to a matrix, a ring element, or (for ==) a
    boolean."""
    try:
        return _evaluate(node, env)
    except EvalError:
        raise
    except (RingError, ArithmeticError) as e:
        raise EvalError(str(e), node.span) from e


def _evaluate(node: Node, env: Environment) -> Value:
    kind = node.kind
    if kind is Nk.VAR:
        return env.lookup(str(node.value), node.span)
    if kind is Nk.INT:
        return env.context.from_int(int(node.value))
    if kind is Nk.IDENTITY:
        return Matrix.identity(env.n, env.context)

    values = [evaluate(child, env) for child in node.children]
    for child, value in zip(node.children, values):
        if isinstance(value, bool):
            raise EvalError("Comparisons cannot be nested", child.span)

    if kind is Nk.EQ:
        left, right = values
        return _compare(node, left, right)
    if kind in (Nk.DET, Nk.TR):
        (operand,) = values
        if not isinstance(operand, Matrix):
            name = "det" if kind is Nk.DET else "tr"
            raise EvalError(f"{name} needs a matrix, got a scalar", node.children[0].span)
        return det(operand) if kind is Nk.DET else trace(operand)
    if kind is Nk.NEG:
        return -values[0]
    if kind is Nk.POW:
        (base,) = values
        return base ** int(node.value)
    if kind in (Nk.ADD, Nk.SUB):
        left, right = values
        if _sort(left) != _sort(right):
            raise EvalError(
                f"Cannot add a {_sort(left)} and a {_sort(right)}; write s*I for a scalar matrix",
                node.span,
            )
        return left + right if kind is Nk.ADD else left - right
    if kind is Nk.MUL:
        left, right = values
        if isinstance(left, Matrix) or not isinstance(right, Matrix):
            return left * right
        return right.scale(left)
    raise EvalError(f"Unknown node kind {kind}", node.span)


def _compare(node: Node, left: Value, right: Value) -> bool:
    if _sort(left) != _sort(right):
        raise EvalError(
            f"Cannot compare a {_sort(left)} with a {_sort(right)}", node.span
        )
    return left == right


def evaluate_equation(node: Node, env: Environment) -> t.Tuple[Value, Value, bool]:
    """Both sides of an equation, each evaluated once, and whether they
    agree."""
    if node.kind is not Nk.EQ:
        raise EvalError("Expected an equation", node.span)
    left, right = (evaluate(child, env) for child in node.children)
    return left, right, _compare(node, left, right)


def evaluate_source(source: str, env: Environment) -> Value:
    return evaluate(parse(source), env)


# Literals for input documents
# ============================
def parse_polynomial(
    source: str, context: RingContext, scalars: t.Optional[t.Mapping[str, RingElement]] = None
) -> RingElement:
    """Scalar expression in the variables of `context` and the given
    scalar bindings."""
    value = evaluate_source(source, Environment(1, context, scalars))
    if not isinstance(value, RingElement):
        raise EvalError(f"Expected a scalar, got a {_sort(value)}", Span(0, len(source)))
    return value


def parse_matrix_literal(
    source: str, context: RingContext, scalars: t.Optional[t.Mapping[str, RingElement]] = None
) -> Matrix:
    rows = Parser(tokenize(source)).matrix_literal()
    env = Environment(1, context, scalars)
    values = list()
    for row in rows:
        values.append(list())
        for entry in row:
            value = evaluate(entry, env)
            if not isinstance(value, RingElement):
                raise EvalError(f"Matrix entries must be scalars, got a {_sort(value)}", entry.span)
            values[-1].append(value)
    n = len(values)
    for row, nodes in zip(values, rows):
        if len(row) != n:
            raise EvalError(
                f"Row of length {len(row)} in a matrix with {n} rows",
                _join(nodes[0].span, nodes[-1].span),
            )
    return Matrix._raw(values, context)
