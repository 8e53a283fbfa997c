# Dependencies
# ============
# Standard
# --------
from dataclasses import asdict, dataclass, field
import random
import time
import typing as t

# Non-standard
# ------------
import click

# Local
# -----
from .matrices import (
    CharPoly,
    Matrix,
    charpoly,
    det,
    inverse,
    is_invertible,
    matrix_unit,
    trace,
)
from .rings import (
    ZZ,
    FractionField,
    MultiPoly,
    PolynomialRing,
    RingContext,
    RingElement,
    RingError,
)
from .utils import DEFAULT_MONOMIAL_CAP, format_value, monomial_count

TERNARY_IDS = (
    "ternary-det",
    "ternary-units",
    "super-jacobson",
    "trace",
)
BINARY_IDS = (
    "sylvester",
    "jacobson",
    "theorem32-det",
    "theorem32-trace",
    "theorem32-charpoly",
    "theorem32-proof",
)
GENERIC_IDS = TERNARY_IDS + BINARY_IDS


class UnknownIdentityError(ValueError):
    """Raised for an identity-id outside the catalog."""


# Reports
# =======
@dataclass
class IdentityReport:
    """Outcome of one check. `expected` is False for counterexamples, which
    pass by failing."""

    identity: str
    ring: str
    n: int
    holds: bool
    left: str
    right: str
    expected: bool = True
    witness: t.Optional[str] = None
    details: t.Dict[str, str] = field(default_factory=dict)
    statistics: t.Dict[str, t.Union[int, float, str]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.holds == self.expected

    def as_dict(self) -> t.Dict[str, t.Any]:
        return asdict(self)


def _report(
    identity: str,
    context: RingContext,
    n: int,
    left: t.Any,
    right: t.Any,
    *,
    holds: t.Optional[bool] = None,
    expected: bool = True,
    monomial_cap: int = DEFAULT_MONOMIAL_CAP,
    started: t.Optional[float] = None,
    details: t.Optional[t.Dict[str, t.Any]] = None,
) -> IdentityReport:
    if holds is None:
        holds = left == right
    statistics: t.Dict[str, t.Union[int, float, str]] = {
        "monomials_left": monomial_count(left),
        "monomials_right": monomial_count(right),
    }
    if started is not None:
        statistics["seconds"] = round(time.perf_counter() - started, 6)
    report = IdentityReport(
        identity=identity,
        ring=context.describe(),
        n=n,
        holds=bool(holds),
        left=format_value(left, monomial_cap),
        right=format_value(right, monomial_cap),
        expected=expected,
        details={k: format_value(v, monomial_cap) for k, v in (details or {}).items()},
        statistics=statistics,
    )
    if not report.holds and not isinstance(left, bool):
        report.witness = f"{report.left} != {report.right}"
    return report


def reference_check(
    name: str, context: RingContext, n: int, computed: t.Any, expected: t.Any
) -> IdentityReport:
    """Compares a computed value against a known published value."""
    return _report(name, context, n, computed, expected)


# Constructions
# =============
def ternary_pair(a: Matrix, b: Matrix, x: Matrix) -> t.Tuple[Matrix, Matrix]:
    """P = A + B − AXB and Q = A + B − BXA."""
    s = a + b
    return s - a * x * b, s - b * x * a


def three_way_pair(a: Matrix, b: Matrix, x: Matrix) -> t.Tuple[Matrix, Matrix, Matrix]:
    """P = A + B − AXB, H = A + B − XBA and K = A + B − BAX."""
    s = a + b
    return s - a * x * b, s - x * b * a, s - b * a * x


def theorem32_matrices(a: Matrix, x: Matrix) -> t.Tuple[Matrix, Matrix, Matrix, Matrix]:
    i = Matrix.identity(a.n, a.context)
    ax, xa = a * x, x * a
    axa = ax * a
    return (
        i - ax + axa,
        i - xa + axa,
        i - ax + a * ax,
        i - xa + xa * a,
    )


# Ternary identity
# ================
def check_ternary_det(
    a: Matrix, b: Matrix, x: Matrix, monomial_cap: int = DEFAULT_MONOMIAL_CAP
) -> IdentityReport:
    started = time.perf_counter()
    p, q = ternary_pair(a, b, x)
    return _report(
        "ternary-det", a.context, a.n, det(p), det(q),
        monomial_cap=monomial_cap, started=started,
    )


def check_ternary_units(a: Matrix, b: Matrix, x: Matrix) -> IdentityReport:
    started = time.perf_counter()
    p, q = ternary_pair(a, b, x)
    det_p, det_q = det(p), det(q)
    return _report(
        "ternary-units", a.context, a.n, det_p.is_unit(), det_q.is_unit(),
        started=started, details={"det(P)": det_p, "det(Q)": det_q},
    )


def check_trace_identity(
    a: Matrix, b: Matrix, x: Matrix, monomial_cap: int = DEFAULT_MONOMIAL_CAP
) -> IdentityReport:
    started = time.perf_counter()
    p, h, k = three_way_pair(a, b, x)
    tr_p, tr_h, tr_k = trace(p), trace(h), trace(k)
    return _report(
        "trace", a.context, a.n, tr_p, tr_h,
        holds=tr_p == tr_h and tr_h == tr_k,
        monomial_cap=monomial_cap, started=started,
        details={"tr(A+B-BAX)": tr_k},
    )


def trace_counterexample(s: RingElement, n: int = 2) -> IdentityReport:
    """A = E11, X = E12, B = s·E21 gives tr(AXB) = s and tr(BXA) = 0, so
    the ternary identity fails for traces."""
    if n < 2:
        raise RingError("The trace counterexample needs n ≥ 2.")
    if s.is_zero:
        raise RingError("The trace counterexample needs s ≠ 0.")
    context = s.context
    a = matrix_unit(n, 1, 1, context)
    x = matrix_unit(n, 1, 2, context)
    b = matrix_unit(n, 2, 1, context).scale(s)
    p, q = ternary_pair(a, b, x)
    tr_p, tr_q = trace(p), trace(q)
    return _report(
        "trace-cx", context, n, tr_p, tr_q, expected=False,
        details={
            "tr(AXB)": trace(a * x * b),
            "tr(BXA)": trace(b * x * a),
            "difference": tr_q - tr_p,
        },
    )


def phk_example(x: RingElement, y: RingElement) -> t.Tuple[RingElement, RingElement, RingElement]:
    """Determinants of A+B−AXB, A+B−XBA and A+B−BAX for
    A = [[0,1],[0,0]], B = [[0,1],[1,0]], X = [[0,x],[y,1]]."""
    context = x.context
    a = Matrix([[0, 1], [0, 0]], context)
    b = Matrix([[0, 1], [1, 0]], context)
    xm = Matrix([[0, x], [y, 1]], context)
    p, h, k = three_way_pair(a, b, xm)
    return det(p), det(h), det(k)


def phk_report(x: RingElement, y: RingElement) -> IdentityReport:
    """The three determinants are reported as pairwise distinct or not."""
    det_p, det_h, det_k = phk_example(x, y)
    distinct = det_p != det_h and det_h != det_k and det_p != det_k
    return _report(
        "phk", x.context, 2, det_p, det_h, holds=distinct,
        details={"det(P)": det_p, "det(H)": det_h, "det(K)": det_k},
    )


# Sylvester and its specializations
# =================================
def sylvester_check(
    a: Matrix, b: Matrix, monomial_cap: int = DEFAULT_MONOMIAL_CAP
) -> IdentityReport:
    started = time.perf_counter()
    i = Matrix.identity(a.n, a.context)
    return _report(
        "sylvester", a.context, a.n, det(i - a * b), det(i - b * a),
        monomial_cap=monomial_cap, started=started,
    )


def specialize_sylvester_route1(a: Matrix, b: Matrix) -> IdentityReport:
    """X = I with A, B replaced by I − A, I − B turns both sides of the
    ternary identity into I − AB and I − BA, entry for entry."""
    i = Matrix.identity(a.n, a.context)
    a1, b1 = i - a, i - b
    left, right = ternary_pair(a1, b1, i)
    holds = left == i - a * b and right == i - b * a
    return _report(
        "sylvester-route1", a.context, a.n, left, right, holds=holds,
        details={"I-AB": i - a * b, "I-BA": i - b * a},
    )


def specialize_sylvester_route2(a: Matrix, b: Matrix, literal: bool = False) -> IdentityReport:
    """The B slot receives I and the X slot receives I + B, so both sides
    become I − AB and I − BA. With `literal` the substitutions are made one
    after the other (B := I, then X := I + I), and both sides collapse to
    I − A."""
    i = Matrix.identity(a.n, a.context)
    if literal:
        left, right = ternary_pair(a, i, i + i)
        target = i - a
        return _report(
            "sylvester-route2-literal", a.context, a.n, left, right,
            holds=left == target and right == target, details={"I-A": target},
        )
    left, right = ternary_pair(a, i, i + b)
    holds = left == i - a * b and right == i - b * a
    return _report(
        "sylvester-route2", a.context, a.n, left, right, holds=holds,
        details={"I-AB": i - a * b, "I-BA": i - b * a},
    )


def jacobson_check(a: Matrix, b: Matrix) -> IdentityReport:
    i = Matrix.identity(a.n, a.context)
    d1, d2 = det(i - a * b), det(i - b * a)
    return _report(
        "jacobson", a.context, a.n, d1.is_unit(), d2.is_unit(),
        details={"det(I-ab)": d1, "det(I-ba)": d2},
    )


def super_jacobson_check(a: Matrix, b: Matrix, x: Matrix) -> IdentityReport:
    p, q = ternary_pair(a, b, x)
    d1, d2 = det(p), det(q)
    return _report(
        "super-jacobson", a.context, a.n, d1.is_unit(), d2.is_unit(),
        details={"det(a+b-axb)": d1, "det(a+b-bxa)": d2},
    )


# Quadruple M1..M4
# ================
def check_theorem32(
    a: Matrix,
    x: Matrix,
    monomial_cap: int = DEFAULT_MONOMIAL_CAP,
    charpoly_limit: int = 2,
    search_seed: int = 0,
) -> IdentityReport:
    """Equal determinants and traces of M1..M4; equal characteristic
    polynomials are part of the claim only for n ≤ charpoly_limit, and
    otherwise just recorded."""
    started = time.perf_counter()
    ms = theorem32_matrices(a, x)
    dets = [det(m) for m in ms]
    traces = [trace(m) for m in ms]
    polys = [charpoly(m) for m in ms]
    dets_equal = all(d == dets[0] for d in dets[1:])
    traces_equal = all(tr == traces[0] for tr in traces[1:])
    charpolys_equal = all(cp == polys[0] for cp in polys[1:])
    holds = dets_equal and traces_equal
    if a.n <= charpoly_limit:
        holds = holds and charpolys_equal
    details: t.Dict[str, t.Any] = {
        f"det(M{k + 1})": d for k, d in enumerate(dets)
    }
    details.update({f"tr(M{k + 1})": tr for k, tr in enumerate(traces)})
    details["charpoly"] = "equal" if charpolys_equal else "different"
    if not charpolys_equal and a.n > charpoly_limit:
        click.echo(
            f"WARNING: characteristic polynomials of M1..M4 differ for n = {a.n}.",
            err=True,
        )
        found = _charpoly_counterexample(a, x, search_seed)
        if found is not None:
            details["charpoly counterexample A"], details["charpoly counterexample X"] = found
    return _report(
        "theorem32", a.context, a.n, dets[0], traces[0], holds=holds,
        monomial_cap=monomial_cap, started=started, details=details,
    )


def _charpoly_counterexample(
    a: Matrix, x: Matrix, seed: int, tries: int = 300
) -> t.Optional[t.Tuple[Matrix, Matrix]]:
    """Smallest integer instance (by largest absolute entry) found by a
    seeded search whose four characteristic polynomials are not all
    equal."""
    if not isinstance(a.context, PolynomialRing):
        return a, x
    names = a.context.names
    rng = random.Random(seed)
    for bound in (1, 2, 3):
        for _ in range(tries):
            point = {k: rng.randint(-bound, bound) for k in range(len(names))}
            ca = a.map_entries(lambda e: e.substitute(point, ZZ), ZZ)
            cx = x.map_entries(lambda e: e.substitute(point, ZZ), ZZ)
            polys = [charpoly(m) for m in theorem32_matrices(ca, cx)]
            if any(cp != polys[0] for cp in polys[1:]):
                return ca, cx
    return None


def check_theorem32_decompositions(a: Matrix, x: Matrix) -> IdentityReport:
    """Entry-wise check of the rewritings used to prove that M1..M4 share
    determinant and trace."""
    i = Matrix.identity(a.n, a.context)
    m1, m2, m3, m4 = theorem32_matrices(a, x)
    ax, xa = a * x, x * a
    p, q = ternary_pair(a, i - a, x)
    checks = {
        "M1 = I-A(X-XA)": m1 == i - a * (x - xa),
        "M4 = I-(X-XA)A": m4 == i - (x - xa) * a,
        "M2 = I-(X-AX)A": m2 == i - (x - ax) * a,
        "M3 = I-A(X-AX)": m3 == i - a * (x - ax),
        "M1 = I-AX(I-A)": m1 == i - ax * (i - a),
        "M3 = I-(I-A)AX": m3 == i - (i - a) * ax,
        "M4 = I-XA(I-A)": m4 == i - xa * (i - a),
        "M2 = I-(I-A)XA": m2 == i - (i - a) * xa,
        "M1 = A+B-AXB at B=I-A": m1 == p,
        "M2 = A+B-BXA at B=I-A": m2 == q,
    }
    failed = [name for name, ok in checks.items() if not ok]
    return _report(
        "theorem32-proof", a.context, a.n, len(checks) - len(failed), len(checks),
        holds=not failed,
        details={name: ok for name, ok in checks.items()},
    )


# Worked examples
# ===============
def example31_matrices(context: RingContext = ZZ) -> t.Tuple[Matrix, Matrix, Matrix]:
    a = Matrix([[1, 0], [0, 0]], context)
    x = Matrix([[0, 1], [1, 0]], context)
    b = Matrix([[1, 1], [0, 0]], context)
    return a, b, x


def example31_values(context: RingContext = ZZ) -> t.Tuple[RingElement, ...]:
    """det(I−AXB), det(I−BXA), det(A+B−AXB), det(A+B−BXA)."""
    a, b, x = example31_matrices(context)
    i = Matrix.identity(2, context)
    p, q = ternary_pair(a, b, x)
    return det(i - a * x * b), det(i - b * x * a), det(p), det(q)


def example31(context: RingContext = ZZ) -> IdentityReport:
    """The ternary identity holds here, while invertibility of I − AXB and
    I − BXA disagree."""
    a, b, x = example31_matrices(context)
    i = Matrix.identity(2, context)
    p, q = ternary_pair(a, b, x)
    d1, d2, d3, d4 = example31_values(context)
    return _report(
        "example31", context, 2, d3, d4,
        details={
            "I-AXB": i - a * x * b,
            "I-BXA": i - b * x * a,
            "A+B-AXB": p,
            "A+B-BXA": q,
            "det(I-AXB)": d1,
            "det(I-BXA)": d2,
            "I-AXB invertible": d1.is_unit(),
            "I-BXA invertible": d2.is_unit(),
        },
    )


def example33() -> IdentityReport:
    """A = [[1,r],[1,0]], X = [[s,t],[0,0]] over ℤ[r,s,t]: all four
    matrices share determinant 1+sr and trace 2+sr, free of t."""
    ring = PolynomialRing(("r", "s", "t"))
    r, s, tv = ring.gens()
    a = Matrix([[1, r], [1, 0]], ring)
    x = Matrix([[s, tv], [0, 0]], ring)
    m1, m2, m3, m4 = theorem32_matrices(a, x)
    displayed = (
        Matrix([[1 + tv, s * r - tv], [tv, 1 + s * r - tv]], ring),
        Matrix([[1, 0], [s + tv, 1 + s * r]], ring),
        Matrix([[1 + s * r, r * tv], [0, 1]], ring),
        Matrix([[1 + s * r, r * tv], [0, 1]], ring),
    )
    common_det, common_trace = 1 + s * r, 2 + s * r
    ms = (m1, m2, m3, m4)
    t_index = ring.index("t")
    holds = (
        all(m == d for m, d in zip(ms, displayed))
        and all(det(m) == common_det for m in ms)
        and all(trace(m) == common_trace for m in ms)
        and t_index not in common_det.variables()
    )
    details: t.Dict[str, t.Any] = {f"M{k + 1}": m for k, m in enumerate(ms)}
    return _report(
        "example33", ring, 2, det(m1), trace(m1), holds=holds, details=details,
    )


# Generic matrices
# ================
@dataclass
class GenericTriple:
    """A, B, X whose 3n² entries are distinct indeterminates."""

    n: int
    a: Matrix
    b: Matrix
    x: Matrix

    @property
    def context(self) -> PolynomialRing:
        return self.a.context


def generic_variable_names(prefix: str, n: int) -> t.List[str]:
    return [f"{prefix}_{i}_{j}" for i in range(1, n + 1) for j in range(1, n + 1)]


def generic_matrix(prefix: str, n: int, context: PolynomialRing) -> Matrix:
    """Matrix whose (i, j) entry is the variable `<prefix>_<i>_<j>`."""
    names = generic_variable_names(prefix, n)
    gens = [context.var(name) for name in names]
    return Matrix._raw([gens[k * n:(k + 1) * n] for k in range(n)], context)


def make_generic_matrices(prefixes: t.Sequence[str], n: int) -> t.List[Matrix]:
    if n < 1:
        raise RingError(f"Generic matrices need n ≥ 1, got {n}.")
    names: t.List[str] = list()
    for prefix in prefixes:
        names.extend(generic_variable_names(prefix, n))
    ring = PolynomialRing(names)
    return [generic_matrix(prefix, n, ring) for prefix in prefixes]


def make_generic_triple(n: int) -> GenericTriple:
    a, b, x = make_generic_matrices(("a", "b", "x"), n)
    return GenericTriple(n, a, b, x)


def prove_identity_generic(
    identity_id: str, n: int, monomial_cap: int = DEFAULT_MONOMIAL_CAP
) -> IdentityReport:
    """Compares both sides as polynomials in the generic entries. A
    holding report proves the identity for this n over every commutative
    ring, by substituting entries."""
    if identity_id not in GENERIC_IDS:
        raise UnknownIdentityError(
            f"Unknown identity {identity_id}; expected one of {', '.join(GENERIC_IDS)}."
        )
    started = time.perf_counter()
    if identity_id in TERNARY_IDS:
        triple = make_generic_triple(n)
        a, b, x = triple.a, triple.b, triple.x
        if identity_id == "trace":
            report = check_trace_identity(a, b, x, monomial_cap)
        else:
            p, q = ternary_pair(a, b, x)
            report = _report(
                identity_id, a.context, n, det(p), det(q),
                monomial_cap=monomial_cap, started=started,
            )
    elif identity_id in ("sylvester", "jacobson"):
        a, b = make_generic_matrices(("a", "b"), n)
        report = sylvester_check(a, b, monomial_cap)
        report.identity = identity_id
    else:
        a, x = make_generic_matrices(("a", "x"), n)
        if identity_id == "theorem32-proof":
            report = check_theorem32_decompositions(a, x)
        else:
            report = _theorem32_part(identity_id, a, x, monomial_cap, started)
    report.statistics["variables"] = len(a.context.names)
    report.statistics["seconds"] = round(time.perf_counter() - started, 6)
    return report


def _theorem32_part(
    identity_id: str, a: Matrix, x: Matrix, monomial_cap: int, started: float
) -> IdentityReport:
    ms = theorem32_matrices(a, x)
    measure: t.Callable[[Matrix], t.Union[RingElement, CharPoly]] = {
        "theorem32-det": det,
        "theorem32-trace": trace,
        "theorem32-charpoly": charpoly,
    }[identity_id]
    values = [measure(m) for m in ms]
    holds = all(v == values[0] for v in values[1:])
    return _report(
        identity_id, a.context, a.n, values[0], values[1], holds=holds,
        monomial_cap=monomial_cap, started=started,
        details={"M3": values[2], "M4": values[3]},
    )


def fraction_proof_check(
    n: int, budget: int = 2, monomial_cap: int = DEFAULT_MONOMIAL_CAP
) -> IdentityReport:
    """Over the fraction field of the generic polynomial ring, checks
    A⁻¹PB⁻¹ = B⁻¹ + A⁻¹ − X = B⁻¹QA⁻¹ entry-wise and then that cancelling
    det(A⁻¹), det(B⁻¹) leaves det(P) = det(Q)."""
    if n > budget:
        click.echo(
            f"WARNING: fraction-field proof with n = {n} exceeds the budget of {budget}.",
            err=True,
        )
    started = time.perf_counter()
    triple = make_generic_triple(n)
    field_ = FractionField(triple.context)
    a, b, x = (m.change_ring(field_) for m in (triple.a, triple.b, triple.x))
    p, q = ternary_pair(a, b, x)
    a_inv, b_inv = inverse(a), inverse(b)
    left = a_inv * p * b_inv
    middle = b_inv + a_inv - x
    right = b_inv * q * a_inv
    left_ok, right_ok = left == middle, right == middle

    det_a, det_b = det(a), det(b)
    det_a_inv, det_b_inv = det(a_inv), det(b_inv)
    cancels = det_a * det_a_inv == 1 and det_b * det_b_inv == 1
    # det(P) = det(A)·det(A⁻¹PB⁻¹)·det(B), likewise for Q.
    det_p = det_a * det(left) * det_b
    det_q = det_b * det(right) * det_a
    dets_ok = det_p == det_q and det_p == det(p) and det_q == det(q)
    return _report(
        "fraction-proof", field_, n, left, right,
        holds=left_ok and right_ok and cancels and dets_ok,
        monomial_cap=monomial_cap, started=started,
        details={
            "B^-1+A^-1-X": middle,
            "A^-1 P B^-1 = B^-1+A^-1-X": left_ok,
            "B^-1 Q A^-1 = B^-1+A^-1-X": right_ok,
            "det(A)det(A^-1) = det(B)det(B^-1) = 1": cancels,
            "det(P) = det(Q)": dets_ok,
        },
    )


def reduce_matrix(m: Matrix, context: RingContext) -> Matrix:
    """Image of an integer (or polynomial) matrix in another context, e.g.
    reduction modulo m."""
    if isinstance(m.context, PolynomialRing) and not isinstance(context, (PolynomialRing, FractionField)):
        raise RingError(f"Cannot reduce {m.context.describe()} into {context.describe()}.")
    return m.change_ring(context)


def substitute_matrix(m: Matrix, bindings: t.Mapping[int, t.Any], context: RingContext) -> Matrix:
    """Applies a substitution homomorphism to every polynomial entry."""
    def image(entry: RingElement) -> RingElement:
        if isinstance(entry, MultiPoly):
            return entry.substitute(bindings, context)
        return context.embed(entry)

    return m.map_entries(image, context)
