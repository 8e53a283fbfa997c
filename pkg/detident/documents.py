# Dependencies
# ============
# Standard
# --------
from dataclasses import dataclass, field
import re
import typing as t

# Local
# -----
from .expr import GENERIC, Environment, ExprError, parse_matrix_literal, parse_polynomial
from .matrices import Matrix
from .rings import (
    ZZ,
    FractionField,
    ModularRing,
    PolynomialRing,
    RingContext,
    RingElement,
    RingError,
)

NAME = r"[A-Za-z][A-Za-z0-9_]*"
RING_LINE = re.compile(r"ring\s+(?P<kind>\S+)(?:\s+(?P<args>.*))?$")
DIM_LINE = re.compile(r"dim\s+(?P<n>\S+)$")
MATRIX_LINE = re.compile(rf"matrix\s+(?P<name>{NAME})\s*=\s*(?P<value>.+)$")
SCALAR_LINE = re.compile(rf"scalar\s+(?P<name>{NAME})\s*=\s*(?P<value>.+)$")
RESERVED = {"det", "tr", "I"}


class DocumentError(ValueError):
    """Error in an input document, reported with its line number."""

    def __init__(self, message: str, line: t.Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass
class InputDocument:
    """Ring, dimension and named bindings read from a document:

        ring Z | ring Zmod 6 | ring Poly x y s | ring Frac x y | ring Q
        dim 2
        matrix A = [[1,0],[0,0]]
        matrix B = generic
        scalar s = 3

    Everything after `#` is a comment.
    """

    context: RingContext
    n: int
    matrices: t.Dict[str, t.Union[Matrix, object]] = field(default_factory=dict)
    scalars: t.Dict[str, RingElement] = field(default_factory=dict)

    def environment(self) -> Environment:
        bindings: t.Dict[str, t.Any] = dict(self.scalars)
        bindings.update(self.matrices)
        try:
            return Environment(self.n, self.context, bindings)
        except RingError as e:
            raise DocumentError(str(e))

    def concrete_matrices(self, *names: str) -> t.List[Matrix]:
        """The named matrices, which must all be bound to literals."""
        result = list()
        for name in names:
            value = self.matrices.get(name)
            if not isinstance(value, Matrix):
                raise DocumentError(f"Matrix {name} must be given as a literal.")
            result.append(value)
        return result


def parse_ring(kind: str, args: t.Sequence[str]) -> RingContext:
    """Reads the arguments of a `ring` line."""
    if kind == "Z" and not args:
        return ZZ
    if kind == "Q" and not args:
        return FractionField(ZZ)
    if kind == "Zmod":
        if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 2:
            raise RingError("ring Zmod needs one modulus m ≥ 2.")
        return ModularRing(int(args[0]))
    if kind in ("Poly", "Frac"):
        for name in args:
            if not re.fullmatch(NAME, name) or name in RESERVED:
                raise RingError(f"Invalid variable name {name}.")
        if len(set(args)) != len(args):
            raise RingError("Variable names must be distinct.")
        if kind == "Poly":
            if not args:
                raise RingError("ring Poly needs at least one variable.")
            return PolynomialRing(args)
        return FractionField(PolynomialRing(args) if args else ZZ)
    raise RingError(f"Unknown ring {' '.join([kind, *args])}.")


def parse_document(text: str) -> InputDocument:
    context: RingContext = ZZ
    n: t.Optional[int] = None
    bindings: t.List[t.Tuple[int, str, str, str]] = list()
    seen_ring = False

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := RING_LINE.match(line):
            if seen_ring:
                raise DocumentError("The ring is declared twice.", number)
            try:
                context = parse_ring(m.group("kind"), (m.group("args") or "").split())
            except RingError as e:
                raise DocumentError(str(e), number)
            seen_ring = True
        elif m := DIM_LINE.match(line):
            if n is not None:
                raise DocumentError("The dimension is declared twice.", number)
            if not m.group("n").isdigit() or int(m.group("n")) < 1:
                raise DocumentError(f"Invalid dimension {m.group('n')}.", number)
            n = int(m.group("n"))
        elif m := MATRIX_LINE.match(line):
            bindings.append((number, "matrix", m.group("name"), m.group("value").strip()))
        elif m := SCALAR_LINE.match(line):
            bindings.append((number, "scalar", m.group("name"), m.group("value").strip()))
        else:
            raise DocumentError(f"Cannot read {line!r}.", number)

    document = InputDocument(context, n or 0)
    for number, sort, name, value in bindings:
        if name in RESERVED:
            raise DocumentError(f"{name} is a reserved word.", number)
        if name in document.matrices or name in document.scalars:
            raise DocumentError(f"{name} is bound twice.", number)
        try:
            if sort == "scalar":
                document.scalars[name] = parse_polynomial(value, context, document.scalars)
            elif value == "generic":
                document.matrices[name] = GENERIC
            else:
                matrix = parse_matrix_literal(value, context, document.scalars)
                if document.n == 0:
                    document.n = matrix.n
                if matrix.n != document.n:
                    raise DocumentError(
                        f"Matrix {name} is {matrix.n}×{matrix.n}, expected "
                        f"{document.n}×{document.n}.",
                        number,
                    )
                document.matrices[name] = matrix
        except ExprError as e:
            raise DocumentError(e.diagnostic(value), number)
        except RingError as e:
            raise DocumentError(str(e), number)

    if document.n == 0:
        raise DocumentError("No dimension given; add a `dim` line.")
    if GENERIC in document.matrices.values() and isinstance(context, ModularRing):
        raise DocumentError(f"Generic matrices are not supported over {context.describe()}.")
    return document


def read_document(path: str) -> InputDocument:
    with open(path, encoding="utf8") as f:
        return parse_document(f.read())
