# Dependencies
# ============
# Standard
# --------
from dataclasses import dataclass, field
import typing as t

# Local
# -----
from .identities import ternary_pair
from .matrices import (
    Matrix,
    block2x2,
    det,
    inverse,
    is_invertible,
    minors,
    suspend,
    trace,
)
from .rings import ZZ, NotInvertibleError, PolynomialRing, RingElement, RingError


class WitnessError(AssertionError):
    """Raised when a constructed witness fails its own verification. This
    always indicates a bug."""


# Block identities
# ================
def _blocks(a: Matrix, b: Matrix, x: Matrix) -> t.Tuple[Matrix, Matrix]:
    a._check(b)
    a._check(x)
    return Matrix.identity(a.n, a.context), Matrix.zeros(a.n, a.context)


def verify_block_identity_24(a: Matrix, b: Matrix, x: Matrix) -> bool:
    """[[I,−B],[I−AX,A]]·[[I,0],[X,I]] = [[I−BX,−B],[I,A]]."""
    i, zero = _blocks(a, b, x)
    left = block2x2(i, -b, i - a * x, a) * block2x2(i, zero, x, i)
    return left == block2x2(i - b * x, -b, i, a)


def verify_block_identity_25(a: Matrix, b: Matrix, x: Matrix) -> bool:
    """[[I,−B],[I−AX,A]]·[[I,B],[0,I]] = [[I,0],[I−AX,P]]."""
    i, zero = _blocks(a, b, x)
    p, _ = ternary_pair(a, b, x)
    left = block2x2(i, -b, i - a * x, a) * block2x2(i, b, zero, i)
    return left == block2x2(i, zero, i - a * x, p)


def verify_block_identity_26(a: Matrix, b: Matrix, x: Matrix) -> bool:
    """[[I−BX,−B],[I,A]]·[[I,−A],[0,I]] = [[I−BX,−Q],[I,0]]."""
    i, zero = _blocks(a, b, x)
    _, q = ternary_pair(a, b, x)
    left = block2x2(i - b * x, -b, i, a) * block2x2(i, -a, zero, i)
    return left == block2x2(i - b * x, -q, i, zero)


# SL-equivalence witness
# ======================
@dataclass
class WitnessFactor:
    name: str
    matrix: Matrix

    def __str__(self) -> str:
        return f"{self.name} = {self.matrix}"


@dataclass
class SLWitness:
    """U·diag(P, I)·V = diag(Q, I) with U and V products of the recorded
    determinant-one factors."""

    p: Matrix
    q: Matrix
    u: Matrix
    v: Matrix
    left_factors: t.List[WitnessFactor] = field(default_factory=list)
    right_factors: t.List[WitnessFactor] = field(default_factory=list)

    @property
    def source(self) -> Matrix:
        return suspend(self.p, self.p.n)

    @property
    def target(self) -> Matrix:
        return suspend(self.q, self.q.n)

    def verify(self) -> None:
        one = self.u.context.one
        for label, factors, product in (
            ("U", self.left_factors, self.u),
            ("V", self.right_factors, self.v),
        ):
            if _product(factors, self.u) != product:
                raise WitnessError(f"{label} is not the product of its factors.")
            for factor in factors:
                if det(factor.matrix) != one:
                    raise WitnessError(f"Factor {factor.name} does not have determinant 1.")
        if det(self.u) != one or det(self.v) != one:
            raise WitnessError("U and V must have determinant 1.")
        if self.u * self.source * self.v != self.target:
            raise WitnessError("U·diag(P,I)·V differs from diag(Q,I).")


def _product(factors: t.Sequence[WitnessFactor], like: Matrix) -> Matrix:
    result = Matrix.identity(like.n, like.context)
    for factor in factors:
        result = result * factor.matrix
    return result


def sl_witness(a: Matrix, b: Matrix, x: Matrix) -> SLWitness:
    """Explicit U, V of determinant one with U·diag(P,I)·V = diag(Q,I).

    With L = [[I,−B],[I−AX,A]], the column transformations give
    L·C_B = [[I,0],[I−AX,P]] and L·C_X·C_negA = [[I−BX,−Q],[I,0]]. One
    block row operation turns the first into diag(I,P) and the second into
    [[0,−Q],[I,0]] = diag(Q,I)·J, and diag(I,P) = J⁻¹·diag(P,I)·J.
    """
    i, zero = _blocks(a, b, x)
    p, q = ternary_pair(a, b, x)

    c_b_inv = WitnessFactor("C_B_inv", block2x2(i, -b, zero, i))
    c_x = WitnessFactor("C_X", block2x2(i, zero, x, i))
    c_neg_a = WitnessFactor("C_negA", block2x2(i, -a, zero, i))
    row_fix1_inv = WitnessFactor("RowFix1_inv", block2x2(i, zero, i - a * x, i))
    row_fix2 = WitnessFactor("RowFix2", block2x2(i, b * x - i, zero, i))
    swap = WitnessFactor("SwapJ", block2x2(zero, -i, i, zero))
    swap_inv = WitnessFactor("SwapJ_inv", block2x2(zero, i, -i, zero))

    left = [row_fix2, row_fix1_inv, swap_inv]
    right = [swap, c_b_inv, c_x, c_neg_a, swap_inv]
    witness = SLWitness(
        p=p,
        q=q,
        u=_product(left, swap.matrix),
        v=_product(right, swap.matrix),
        left_factors=left,
        right_factors=right,
    )
    witness.verify()
    return witness


def transformation_factors(a: Matrix, b: Matrix, x: Matrix) -> t.List[WitnessFactor]:
    """The named block matrices behind the witness, including C_B and
    RowFix1 which enter it only through their inverses."""
    i, zero = _blocks(a, b, x)
    return [
        WitnessFactor("L1", block2x2(i, -b, i - a * x, a)),
        WitnessFactor("C_B", block2x2(i, b, zero, i)),
        WitnessFactor("C_B_inv", block2x2(i, -b, zero, i)),
        WitnessFactor("C_X", block2x2(i, zero, x, i)),
        WitnessFactor("C_negA", block2x2(i, -a, zero, i)),
        WitnessFactor("RowFix1", block2x2(i, zero, a * x - i, i)),
        WitnessFactor("RowFix2", block2x2(i, b * x - i, zero, i)),
        WitnessFactor("SwapJ", block2x2(zero, -i, i, zero)),
    ]


def direct_equivalence_witness(a: Matrix, b: Matrix, x: Matrix) -> t.Tuple[Matrix, Matrix]:
    """For invertible A and B, (B·A⁻¹)·P·(B⁻¹·A) = Q."""
    for name, m in (("A", a), ("B", b)):
        if not is_invertible(m):
            d = det(m)
            raise NotInvertibleError(
                f"{name} is not invertible over {m.context.describe()}: determinant {d}.", d
            )
    p, q = ternary_pair(a, b, x)
    a_inv, b_inv = inverse(a), inverse(b)
    u, v = b * a_inv, b_inv * a
    if u * p * v != q:
        raise WitnessError("(B·A⁻¹)·P·(B⁻¹·A) differs from Q.")
    return u, v


# Smith normal form over ℤ
# ========================
@dataclass
class SmithForm:
    """U·M·V = D with D diagonal, d₁ | d₂ | ..., dᵢ ≥ 0 and det(U), det(V)
    = ±1."""

    d: Matrix
    u: Matrix
    v: Matrix

    @property
    def diagonal(self) -> t.Tuple[int, ...]:
        return tuple(int(self.d[k, k]) for k in range(self.d.n))


def smith_normal_form(m: Matrix) -> SmithForm:
    if m.context != ZZ:
        raise RingError(f"Smith normal form needs an integer matrix, not {m.context.describe()}.")
    n = m.n
    a = [[int(e) for e in row] for row in m.rows]
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for rows in (a, v):
            for row in rows:
                row[i], row[j] = row[j], row[i]

    def add_row(target: int, source: int, factor: int) -> None:
        for rows in (a, u):
            rows[target] = [x + factor * y for x, y in zip(rows[target], rows[source])]

    def add_col(target: int, source: int, factor: int) -> None:
        for rows in (a, v):
            for row in rows:
                row[target] += factor * row[source]

    for k in range(n):
        while True:
            candidates = [
                (abs(a[i][j]), i, j)
                for i in range(k, n)
                for j in range(k, n)
                if a[i][j]
            ]
            if not candidates:
                break
            _, i, j = min(candidates)
            swap_rows(k, i)
            swap_cols(k, j)
            pivot = a[k][k]
            clean = True
            for i in range(k + 1, n):
                if a[i][k]:
                    add_row(i, k, -(a[i][k] // pivot))
                    clean = clean and not a[i][k]
            for j in range(k + 1, n):
                if a[k][j]:
                    add_col(j, k, -(a[k][j] // pivot))
                    clean = clean and not a[k][j]
            if not clean:
                continue
            offender = next(
                (i for i in range(k + 1, n) for j in range(k + 1, n) if a[i][j] % pivot),
                None,
            )
            if offender is None:
                break
            add_row(k, offender, 1)
        if a[k][k] < 0:
            a[k] = [-x for x in a[k]]
            u[k] = [-x for x in u[k]]

    return SmithForm(d=Matrix(a, ZZ), u=Matrix(u, ZZ), v=Matrix(v, ZZ))


# Invariant profiles
# ==================
@dataclass
class InvariantProfile:
    """Screening data for equivalence. Determinant up to units, trace only
    under similarity, and the Smith forms of integer evaluations are true
    equivalence invariants; the generator lists are shown as computed."""

    determinant: RingElement
    trace: RingElement
    entry_generators: t.List[RingElement]
    minors: t.Dict[int, t.List[RingElement]]
    evaluations: t.Dict[int, t.Tuple[int, ...]]

    def determinantal_divisors(self) -> t.Dict[int, t.Tuple[int, ...]]:
        """Products d₁···d_k of each evaluated Smith form, i.e. the gcd of
        the k×k minors of the evaluation."""
        result = dict()
        for point, diagonal in self.evaluations.items():
            running, products = 1, list()
            for d in diagonal:
                running *= d
                products.append(running)
            result[point] = tuple(products)
        return result


def evaluate_matrix(m: Matrix, value: int) -> Matrix:
    """Integer matrix obtained by setting every variable to `value`."""
    if m.context == ZZ:
        return m
    if not isinstance(m.context, PolynomialRing):
        raise RingError(f"Cannot evaluate a matrix over {m.context.describe()} at integers.")
    point = {k: value for k in range(len(m.context.names))}
    return m.map_entries(lambda e: e.substitute(point, ZZ), ZZ)


def invariant_profile(m: Matrix, eval_range: t.Tuple[int, int] = (-10, 10)) -> InvariantProfile:
    low, high = eval_range
    if low > high:
        raise RingError(f"Empty evaluation range {low}..{high}.")
    points = [0] if m.context == ZZ else list(range(low, high + 1))
    return InvariantProfile(
        determinant=det(m),
        trace=trace(m),
        entry_generators=list(m.entries()),
        minors={k: minors(m, k) for k in range(1, m.n + 1)},
        evaluations={c: smith_normal_form(evaluate_matrix(m, c)).diagonal for c in points},
    )


@dataclass
class ProfileComparison:
    agreements: t.Dict[str, bool]
    separated: bool
    separating: t.List[str]


def compare_profiles(p: InvariantProfile, q: InvariantProfile) -> ProfileComparison:
    """Reports, invariant by invariant, whether the profiles agree, and
    whether any equivalence invariant tells the matrices apart."""
    determinant_agrees = p.determinant == q.determinant or p.determinant == -q.determinant
    agreements = {
        "determinant (up to sign)": determinant_agrees,
        "evaluated Smith forms": p.evaluations == q.evaluations,
        "determinantal divisors": p.determinantal_divisors() == q.determinantal_divisors(),
        "trace": p.trace == q.trace,
        "entry generators (as listed)": p.entry_generators == q.entry_generators,
        "minor lists (as listed)": p.minors == q.minors,
    }
    invariant = ("determinant (up to sign)", "evaluated Smith forms", "determinantal divisors")
    separating = [name for name in invariant if not agreements[name]]
    return ProfileComparison(agreements, bool(separating), separating)


# Non-equivalence fixture
# =======================
@dataclass
class NonequivalenceFixture:
    a: Matrix
    b: Matrix
    x: Matrix
    p: Matrix
    q: Matrix
    p_profile: InvariantProfile
    q_profile: InvariantProfile
    comparison: ProfileComparison
    expected_p: Matrix
    expected_q: Matrix

    @property
    def reproduced(self) -> bool:
        """Whether P and Q came out as the published matrices."""
        return self.p == self.expected_p and self.q == self.expected_q


def fixture_matrices() -> t.Tuple[Matrix, Matrix, Matrix]:
    ring = PolynomialRing(("x",))
    (xv,) = ring.gens()
    a = Matrix([[0, 0], [0, xv]], ring)
    b = Matrix([[0, 2], [0, xv]], ring)
    return a, b, Matrix.identity(2, ring)


def nonequivalence_fixture(eval_range: t.Tuple[int, int] = (-10, 10)) -> NonequivalenceFixture:
    """P = [[0,2],[0,2x−x²]] and Q = [[0,2−2x],[0,2x−x²]] over ℤ[x], with
    their invariant profiles. Whether P and Q match the published
    matrices and whether the profiles separate them are reported, not
    assumed."""
    a, b, x = fixture_matrices()
    ring = a.context
    (xv,) = ring.gens()
    p, q = ternary_pair(a, b, x)
    expected_p = Matrix([[0, 2], [0, 2 * xv - xv ** 2]], ring)
    expected_q = Matrix([[0, 2 - 2 * xv], [0, 2 * xv - xv ** 2]], ring)
    p_profile = invariant_profile(p, eval_range)
    q_profile = invariant_profile(q, eval_range)
    return NonequivalenceFixture(
        a, b, x, p, q, p_profile, q_profile, compare_profiles(p_profile, q_profile),
        expected_p, expected_q,
    )
