# Dependencies
# ============
# Standard
# --------
import itertools
import typing as t

# Local
# -----
from .rings import (
    ContextMismatchError,
    FractionElement,
    MultiPoly,
    NotInvertibleError,
    RingContext,
    RingElement,
    RingError,
)

Entry = t.Union[RingElement, int]


class DimensionError(RingError):
    """Raised for mismatched dimensions, bad block sizes or indices out of
    range."""


# Matrix type
# ===========
class Matrix(object):
    """Immutable dense n×n matrix over one ring context, stored row-major.
    Equality is entry-wise ring equality."""

    __slots__ = ("n", "rows", "context")

    def __init__(self, rows: t.Sequence[t.Sequence[Entry]], context: RingContext):
        n = len(rows)
        if n < 1:
            raise DimensionError("A matrix needs at least one row.")
        for row in rows:
            if len(row) != n:
                raise DimensionError(f"Row of length {len(row)} in a {n}×{n} matrix.")
        self.n = n
        self.context = context
        self.rows: t.Tuple[t.Tuple[RingElement, ...], ...] = tuple(
            tuple(context.embed(e) for e in row) for row in rows
        )

    @classmethod
    def _raw(cls, rows: t.Sequence[t.Sequence[RingElement]], context: RingContext) -> "Matrix":
        # Caller guarantees a square shape and entries of `context`.
        matrix = cls.__new__(cls)
        matrix.n = len(rows)
        matrix.context = context
        matrix.rows = tuple(tuple(row) for row in rows)
        return matrix

    @classmethod
    def identity(cls, n: int, context: RingContext) -> "Matrix":
        return cls.diagonal([context.one] * n, context)

    @classmethod
    def zeros(cls, n: int, context: RingContext) -> "Matrix":
        zero = context.zero
        return cls._raw([[zero] * n for _ in range(n)], context)

    @classmethod
    def diagonal(cls, values: t.Sequence[Entry], context: RingContext) -> "Matrix":
        n = len(values)
        if n < 1:
            raise DimensionError("A matrix needs at least one row.")
        zero = context.zero
        rows = [[zero] * n for _ in range(n)]
        for i, value in enumerate(values):
            rows[i][i] = context.embed(value)
        return cls._raw(rows, context)

    def __getitem__(self, index: t.Tuple[int, int]) -> RingElement:
        i, j = index
        return self.rows[i][j]

    def __iter__(self) -> t.Iterator[t.Tuple[RingElement, ...]]:
        return iter(self.rows)

    def entries(self) -> t.Iterator[RingElement]:
        for row in self.rows:
            yield from row

    def _check(self, other: "Matrix") -> None:
        if not isinstance(other, Matrix):
            raise TypeError(f"Expected a matrix, got {type(other).__name__}.")
        if other.n != self.n:
            raise DimensionError(f"Cannot combine {self.n}×{self.n} and {other.n}×{other.n} matrices.")
        if other.context != self.context:
            raise ContextMismatchError(
                f"Cannot combine matrices over {self.context.describe()} "
                f"and {other.context.describe()}."
            )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix._raw(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.context,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix._raw(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.context,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw([[-a for a in r] for r in self.rows], self.context)

    def __mul__(self, other: t.Union["Matrix", Entry]) -> "Matrix":
        if not isinstance(other, Matrix):
            return self.scale(other)
        self._check(other)
        columns = list(zip(*other.rows))
        zero = self.context.zero
        product = list()
        for row in self.rows:
            new_row = list()
            for column in columns:
                total = zero
                for a, b in zip(row, column):
                    if not a.is_zero and not b.is_zero:
                        total = total + a * b
                new_row.append(total)
            product.append(new_row)
        return Matrix._raw(product, self.context)

    def __rmul__(self, scalar: Entry) -> "Matrix":
        return self.scale(scalar)

    def __pow__(self, exponent: int) -> "Matrix":
        if exponent < 0:
            return inverse(self) ** -exponent
        result = Matrix.identity(self.n, self.context)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix) or other.n != self.n:
            return False
        if other.context != self.context:
            return False
        return all(a == b for a, b in zip(self.entries(), other.entries()))

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash((self.n, self.context, tuple(self.entries())))

    def scale(self, scalar: Entry) -> "Matrix":
        c = self.context.embed(scalar)
        return Matrix._raw([[c * a for a in r] for r in self.rows], self.context)

    def transpose(self) -> "Matrix":
        return Matrix._raw(list(zip(*self.rows)), self.context)

    def submatrix(self, rows: t.Sequence[int], cols: t.Sequence[int]) -> "Matrix":
        if len(rows) != len(cols) or not rows:
            raise DimensionError("Submatrix must be square and non-empty.")
        return Matrix._raw([[self.rows[i][j] for j in cols] for i in rows], self.context)

    def minor_matrix(self, i: int, j: int) -> "Matrix":
        """The matrix with row i and column j deleted (n ≥ 2)."""
        keep_rows = [k for k in range(self.n) if k != i]
        keep_cols = [k for k in range(self.n) if k != j]
        return self.submatrix(keep_rows, keep_cols)

    def blocks(self) -> t.Tuple["Matrix", "Matrix", "Matrix", "Matrix"]:
        """Splits a 2m×2m matrix into its four m×m blocks."""
        if self.n % 2:
            raise DimensionError(f"Cannot split a {self.n}×{self.n} matrix into 2×2 blocks.")
        m = self.n // 2
        top, bottom = list(range(m)), list(range(m, self.n))
        return (
            self.submatrix(top, top),
            self.submatrix(top, bottom),
            self.submatrix(bottom, top),
            self.submatrix(bottom, bottom),
        )

    def map_entries(
        self, function: t.Callable[[RingElement], RingElement], context: RingContext
    ) -> "Matrix":
        return Matrix._raw(
            [[context.embed(function(a)) for a in r] for r in self.rows], context
        )

    def change_ring(self, context: RingContext) -> "Matrix":
        """Image under the canonical map into `context` (ℤ → ℤ/m, ℤ → ℤ[x],
        ℤ[x] → Frac(ℤ[x]), and so on)."""
        return Matrix._raw([[context.embed(a) for a in r] for r in self.rows], context)

    def is_zero(self) -> bool:
        return all(a.is_zero for a in self.entries())

    def to_lists(self) -> t.List[t.List[str]]:
        return [[str(a) for a in r] for r in self.rows]

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(r) + "]" for r in self.to_lists()) + "]"

    def __repr__(self) -> str:
        return f"Matrix({self} over {self.context.describe()})"


class CharPoly(object):
    """Coefficients c₀..cₙ of det(tI − M), dense by degree."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: t.Sequence[RingElement]):
        self.coefficients = tuple(coefficients)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, degree: int) -> RingElement:
        return self.coefficients[degree]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CharPoly) or other.degree != self.degree:
            return False
        return all(a == b for a, b in zip(self.coefficients, other.coefficients))

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __str__(self) -> str:
        pieces = list()
        for degree in range(self.degree, -1, -1):
            c = self.coefficients[degree]
            if c.is_zero:
                continue
            power = "" if degree == 0 else ("t" if degree == 1 else f"t^{degree}")
            text = str(c)
            negative = not _is_sum(c) and text.startswith("-")
            if negative:
                text = text[1:]
            if power:
                if text == "1":
                    text = power
                elif _is_sum(c):
                    text = f"({text})*{power}"
                else:
                    text = f"{text}*{power}"
            if not pieces:
                pieces.append(f"-{text}" if negative else text)
            else:
                pieces.append(f"- {text}" if negative else f"+ {text}")
        return " ".join(pieces) if pieces else "0"


def _is_sum(c: RingElement) -> bool:
    """Whether the printed form of c has more than one term."""
    if isinstance(c, FractionElement):
        return c.den == c.context.base.one and _is_sum(c.num)
    return isinstance(c, MultiPoly) and len(c) > 1


# Construction
# ============
def matrix_unit(n: int, i: int, j: int, context: RingContext) -> Matrix:
    """E_ij with 1-based indices."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise DimensionError(f"Matrix unit E_{i}{j} is out of range for n = {n}.")
    rows = [[context.zero] * n for _ in range(n)]
    rows[i - 1][j - 1] = context.one
    return Matrix._raw(rows, context)


def block2x2(m11: Matrix, m12: Matrix, m21: Matrix, m22: Matrix) -> Matrix:
    """Assembles the 2n×2n matrix [[M11, M12], [M21, M22]]."""
    for block in (m12, m21, m22):
        m11._check(block)
    rows = [a + b for a, b in zip(m11.rows, m12.rows)]
    rows += [a + b for a, b in zip(m21.rows, m22.rows)]
    return Matrix._raw(rows, m11.context)


def suspend(m: Matrix, k: int) -> Matrix:
    """Block-diagonal diag(M, I_k)."""
    if k < 1:
        raise DimensionError(f"Suspension size must be positive, got {k}.")
    zero, one = m.context.zero, m.context.one
    rows = [list(r) + [zero] * k for r in m.rows]
    for i in range(k):
        rows.append([zero] * (m.n + i) + [one] + [zero] * (k - i - 1))
    return Matrix._raw(rows, m.context)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return a + b


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return a - b


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a * b


def mat_neg(a: Matrix) -> Matrix:
    return -a


# Determinants
# ============
def det_leibniz(m: Matrix) -> RingElement:
    """Sum over permutations. Only sensible for small n; kept as the
    reference the other algorithms are tested against."""
    total = m.context.zero
    for perm in itertools.permutations(range(m.n)):
        inversions = sum(
            1 for a, b in itertools.combinations(range(m.n), 2) if perm[a] > perm[b]
        )
        term = m.context.one
        for i, j in enumerate(perm):
            term = term * m.rows[i][j]
        total = total - term if inversions % 2 else total + term
    return total


def det_cofactor(m: Matrix) -> RingElement:
    """Laplace expansion along successive rows, memoised on the set of
    remaining columns."""
    n, rows = m.n, m.rows
    one, zero = m.context.one, m.context.zero
    cache: t.Dict[t.Tuple[int, ...], RingElement] = dict()

    def expand(k: int, cols: t.Tuple[int, ...]) -> RingElement:
        if k == n:
            return one
        if cols in cache:
            return cache[cols]
        total = zero
        for pos, col in enumerate(cols):
            a = rows[k][col]
            if a.is_zero:
                continue
            term = a * expand(k + 1, cols[:pos] + cols[pos + 1:])
            total = total - term if pos % 2 else total + term
        cache[cols] = total
        return total

    return expand(0, tuple(range(n)))


def _berkowitz_vector(rows: t.Sequence[t.Sequence[RingElement]], context: RingContext) -> t.List[RingElement]:
    """Coefficients [1, p₁, ..., pₙ] of det(tI − M) = tⁿ + p₁tⁿ⁻¹ + ... + pₙ,
    computed without division."""
    n = len(rows)
    one, zero = context.one, context.zero
    if n == 0:
        return [one]
    a = rows[0][0]
    r = rows[0][1:]
    c = [row[0] for row in rows[1:]]
    sub = [row[1:] for row in rows[1:]]

    # Toeplitz column: 1, -a, -R·C, -R·A·C, ..., -R·A^(n-2)·C
    diags = [one, -a]
    vector = c
    for k in range(n - 1):
        if k:
            vector = [_dot(row, vector, zero) for row in sub]
        diags.append(-_dot(r, vector, zero))

    previous = _berkowitz_vector(sub, context)
    result = list()
    for i in range(n + 1):
        total = zero
        for j in range(min(i, n - 1) + 1):
            d = diags[i - j]
            p = previous[j]
            if not d.is_zero and not p.is_zero:
                total = total + d * p
        result.append(total)
    return result


def _dot(u: t.Sequence[RingElement], v: t.Sequence[RingElement], zero: RingElement) -> RingElement:
    total = zero
    for a, b in zip(u, v):
        if not a.is_zero and not b.is_zero:
            total = total + a * b
    return total


def det_berkowitz(m: Matrix) -> RingElement:
    vector = _berkowitz_vector(m.rows, m.context)
    return vector[-1] if m.n % 2 == 0 else -vector[-1]


def det_bareiss(m: Matrix) -> RingElement:
    """Fraction-free elimination; every division is exact, so the context
    must be an integral domain."""
    if not m.context.is_integral_domain:
        raise RingError(
            f"Bareiss elimination needs an integral domain; "
            f"{m.context.describe()} has zero divisors."
        )
    n = m.n
    a = [list(r) for r in m.rows]
    sign = 1
    previous = m.context.one
    for k in range(n - 1):
        if a[k][k].is_zero:
            for i in range(k + 1, n):
                if not a[i][k].is_zero:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return m.context.zero
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]).exact_quotient(previous)
        previous = pivot
    result = a[n - 1][n - 1]
    return result if sign > 0 else -result


def det(m: Matrix) -> RingElement:
    """Exact determinant. Cofactor expansion up to 3×3 over rings without
    zero divisors, Berkowitz otherwise; both are division-free."""
    if m.n <= 3 and m.context.is_integral_domain:
        return det_cofactor(m)
    return det_berkowitz(m)


def trace(m: Matrix) -> RingElement:
    total = m.context.zero
    for i in range(m.n):
        total = total + m.rows[i][i]
    return total


def charpoly(m: Matrix) -> CharPoly:
    vector = _berkowitz_vector(m.rows, m.context)
    return CharPoly(reversed(vector))


# Inverses
# ========
def adjugate(m: Matrix) -> Matrix:
    """Transpose of the cofactor matrix, so M·adj(M) = det(M)·I."""
    if m.n == 1:
        return Matrix.identity(1, m.context)
    rows = [[m.context.zero] * m.n for _ in range(m.n)]
    for i in range(m.n):
        for j in range(m.n):
            cofactor = det(m.minor_matrix(i, j))
            rows[j][i] = -cofactor if (i + j) % 2 else cofactor
    return Matrix._raw(rows, m.context)


def inverse(m: Matrix) -> Matrix:
    d = det(m)
    if not d.is_unit():
        raise NotInvertibleError(
            f"Matrix is not invertible over {m.context.describe()}: determinant {d} is not a unit.",
            d,
        )
    return adjugate(m).scale(d.inverse())


def is_invertible(m: Matrix) -> bool:
    return det(m).is_unit()


def is_sl(m: Matrix) -> bool:
    return det(m) == m.context.one


def minors(m: Matrix, k: int) -> t.List[RingElement]:
    """All k×k minors, rows and columns in lexicographic order."""
    if not 1 <= k <= m.n:
        raise DimensionError(f"No {k}×{k} minors in a {m.n}×{m.n} matrix.")
    combos = list(itertools.combinations(range(m.n), k))
    return [det(m.submatrix(rows, cols)) for rows in combos for cols in combos]
