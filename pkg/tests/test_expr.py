from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from detident.expr import (
    GENERIC,
    Environment,
    EvalError,
    LexError,
    Nk,
    Node,
    ParseError,
    Span,
    Tk,
    evaluate_equation,
    evaluate_source,
    parse,
    parse_matrix_literal,
    parse_polynomial,
    tokenize,
    unparse,
)
from detident.matrices import Matrix
from detident.rings import ZZ, FractionField, ModularRing, PolynomialRing, RingError


def var(name):
    return Node(Nk.VAR, value=name)


def integer(value):
    return Node(Nk.INT, value=value)


# Tokens
# ======
def test_tokenize():
    tokens = tokenize('det(A)==2')
    assert [token.kind for token in tokens] == [
        Tk.KW_DET, Tk.LPAREN, Tk.IDENTIFIER, Tk.RPAREN, Tk.EQ_EQ,
        Tk.INTEGER, Tk.END]
    assert tokens[-1].offset == 9
    assert tokens[4].span == Span(6, 8)


def test_tokenize_words():
    kinds = [token.kind for token in tokenize('I Ix tr tra x_1')]
    assert kinds == [Tk.KW_I, Tk.IDENTIFIER, Tk.KW_TR, Tk.IDENTIFIER,
                     Tk.IDENTIFIER, Tk.END]
    assert tokenize('')[0].kind is Tk.END


def test_lex_error():
    with pytest.raises(LexError) as excinfo:
        tokenize('A $ B')
    assert excinfo.value.span == Span(2, 3)
    assert excinfo.value.diagnostic('A $ B') == (
        "Unexpected character '$' (at offset 2)\n"
        "  A $ B\n"
        "    ^")


# Parsing
# =======
def test_precedence():
    assert parse('A + B*C') == Node(Nk.ADD, (var('A'), Node(Nk.MUL, (var('B'), var('C')))))
    assert parse('A - B - C') == Node(
        Nk.SUB, (Node(Nk.SUB, (var('A'), var('B'))), var('C')))
    assert parse('-A^2') == Node(Nk.POW, (Node(Nk.NEG, (var('A'),)),), 2)
    assert parse('(A + B)*C').kind is Nk.MUL
    assert parse('2*I').children == (integer(2), Node(Nk.IDENTITY))


def test_equation():
    tree = parse('det(A + B) == tr(A)')
    assert tree.kind is Nk.EQ
    assert tree.children[0].kind is Nk.DET
    assert tree.children[1].kind is Nk.TR
    assert tree.span == Span(0, 19)


def test_identity_renderings():
    def add(*terms):
        node = terms[0]
        for term in terms[1:]:
            node = Node(Nk.ADD, (node, term))
        return node

    def mul(*factors):
        node = factors[0]
        for factor in factors[1:]:
            node = Node(Nk.MUL, (node, factor))
        return node

    a, b, x, i = var('A'), var('B'), var('X'), Node(Nk.IDENTITY)
    ternary = parse('det(A + B - A*X*B) == det(A + B - B*X*A)')
    assert ternary == Node(Nk.EQ, (
        Node(Nk.DET, (Node(Nk.SUB, (add(a, b), mul(a, x, b))),)),
        Node(Nk.DET, (Node(Nk.SUB, (add(a, b), mul(b, x, a))),)),
    ))
    sylvester = parse('det(I - A*B) == det(I - B*A)')
    assert sylvester.children[0] == Node(Nk.DET, (Node(Nk.SUB, (i, mul(a, b))),))
    trace = parse('tr(A + B - A*X*B) == tr(A + B - B*X*A)')
    assert trace.children[1].kind is Nk.TR

    m1 = parse('I - A*X + A*X*A')
    assert m1 == add(Node(Nk.SUB, (i, mul(a, x))), mul(a, x, a))
    m2 = parse('I - X*A + A*X*A')
    assert m2 == add(Node(Nk.SUB, (i, mul(x, a))), mul(a, x, a))
    m3 = parse('I - A*X + A^2*X')
    assert m3.children[1] == mul(Node(Nk.POW, (a,), 2), x)
    m4 = parse('I - X*A + X*A^2')
    assert m4.children[1] == mul(x, Node(Nk.POW, (a,), 2))


def test_parse_errors():
    with pytest.raises(ParseError) as excinfo:
        parse('det(A')
    assert str(excinfo.value) == "Expected ')', found end of input"
    assert excinfo.value.expected == {Tk.RPAREN}
    assert excinfo.value.span.start == 5

    with pytest.raises(ParseError) as excinfo:
        parse('A == B == C')
    assert Tk.EQ_EQ not in excinfo.value.expected

    with pytest.raises(ParseError):
        parse('(A == B)')
    with pytest.raises(ParseError) as excinfo:
        parse('A^-1')
    assert excinfo.value.expected == {Tk.INTEGER}
    with pytest.raises(ParseError):
        parse('A B')
    with pytest.raises(ParseError):
        parse('')


def test_unparse():
    for source in ('A + (B + C)', 'A*B*C', '-A^2', '-(A*B)', 'A*(B*C)',
                   '(A - B)*C', 'det(I - A*B) == det(I - B*A)', 'A - -B'):
        assert unparse(parse(source)) == source
    assert unparse(parse('((A))*(B)')) == 'A*B'
    assert unparse(parse('(A*B)*C')) == 'A*B*C'


names = st.sampled_from(['A', 'B', 'X', 's', 'x_1'])
leaves = st.one_of(
    names.map(var),
    st.integers(min_value=0, max_value=30).map(integer),
    st.just(Node(Nk.IDENTITY)),
)


def binary(kind):
    return lambda pair: Node(kind, pair)


def extend(children):
    return st.one_of(
        st.tuples(children, children).map(binary(Nk.ADD)),
        st.tuples(children, children).map(binary(Nk.SUB)),
        st.tuples(children, children).map(binary(Nk.MUL)),
        children.map(lambda c: Node(Nk.NEG, (c,))),
        st.tuples(children, st.integers(0, 5)).map(
            lambda p: Node(Nk.POW, (p[0],), p[1])),
        children.map(lambda c: Node(Nk.DET, (c,))),
        children.map(lambda c: Node(Nk.TR, (c,))),
    )


expressions = st.recursive(leaves, extend, max_leaves=12)
equations = st.one_of(
    expressions,
    st.tuples(expressions, expressions).map(binary(Nk.EQ)),
)


@settings(max_examples=100, deadline=None)
@given(equations)
def test_round_trip(tree):
    assert parse(unparse(tree)) == tree


# Evaluation
# ==========
def example31_env(context=ZZ):
    return Environment(2, context, {
        'A': Matrix([[1, 0], [0, 0]], context),
        'X': Matrix([[0, 1], [1, 0]], context),
        'B': Matrix([[1, 1], [0, 0]], context),
    })


def test_evaluate_concrete():
    env = example31_env()
    assert evaluate_source('det(A + B - A*X*B) == det(A + B - B*X*A)', env) is True
    assert evaluate_source('det(I - A*X*B)', env) == 1
    assert evaluate_source('det(I - B*X*A)', env) == 0
    assert evaluate_source('2*A', env) == evaluate_source('A*2', env)
    assert evaluate_source('A^0', env) == Matrix.identity(2, ZZ)
    assert evaluate_source('tr(A) + 3', env) == 4
    assert evaluate_source('A == B', env) is False


def test_evaluate_equation():
    env = example31_env()
    left, right, holds = evaluate_equation(parse('det(I - A*X*B) == det(I - B*X*A)'), env)
    assert (left, right, holds) == (1, 0, False)
    left, right, holds = evaluate_equation(parse('A*X == A*X'), env)
    assert holds is True
    assert left == Matrix([[0, 1], [0, 0]], ZZ)
    with pytest.raises(EvalError):
        evaluate_equation(parse('det(A)'), env)
    with pytest.raises(EvalError) as excinfo:
        evaluate_equation(parse('A == 1'), env)
    assert str(excinfo.value) == 'Cannot compare a matrix with a scalar'


def test_evaluate_mod_m():
    env = example31_env(ModularRing(6))
    assert evaluate_source('det(A + B) - 7', env) == 5


def test_evaluate_generic():
    env = Environment(2, ZZ, {'A': GENERIC, 'B': GENERIC, 'X': GENERIC})
    assert len(env.context.names) == 12
    assert evaluate_source('det(A + B - A*X*B) == det(A + B - B*X*A)', env) is True
    assert evaluate_source('tr(A*X*B) == tr(B*X*A)', env) is False
    assert str(evaluate_source('tr(A)', env)) == 'a_1_1 + a_2_2'


def test_evaluate_generic_with_variables():
    ring = PolynomialRing(['s'])
    env = Environment(1, ring, {'A': GENERIC, 'B': Matrix([[ring.var('s')]], ring)})
    assert env.context.names == ('s', 'a_1_1')
    assert str(evaluate_source('det(A*B)', env)) == 's*a_1_1'
    field = FractionField(ZZ)
    env = Environment(1, field, {'A': GENERIC})
    assert str(env.context) == 'Frac(Z[a_1_1])'


def test_trace_counterexample_expression():
    env = Environment(2, ZZ, {
        'A': Matrix([[1, 0], [0, 0]], ZZ),
        'X': Matrix([[0, 1], [0, 0]], ZZ),
        'B': Matrix([[0, 0], [1, 0]], ZZ),
    })
    assert evaluate_source('tr(A*X*B)', env) == 1
    assert evaluate_source('tr(A + B - A*X*B) == tr(A + B - B*X*A)', env) is False


def test_sort_errors():
    env = example31_env()
    with pytest.raises(EvalError) as excinfo:
        evaluate_source('A + 1', env)
    assert str(excinfo.value).startswith('Cannot add a matrix and a scalar')
    assert excinfo.value.span == Span(0, 5)
    with pytest.raises(EvalError) as excinfo:
        evaluate_source('det(2)', env)
    assert excinfo.value.span == Span(4, 5)
    with pytest.raises(EvalError):
        evaluate_source('2 == A', env)
    with pytest.raises(EvalError) as excinfo:
        evaluate_source('det(C)', env)
    assert str(excinfo.value) == 'Unbound identifier C'
    assert excinfo.value.diagnostic('det(C)').endswith('      ^')


def test_environment_errors():
    with pytest.raises(RingError):
        Environment(1, PolynomialRing(['a_1_1']), {'A': GENERIC})
    with pytest.raises(ValueError):
        Environment(0)
    with pytest.raises(ValueError):
        Environment(2, ZZ, {'A': Matrix.identity(3, ZZ)})
    with pytest.raises(ValueError):
        Environment(2, ModularRing(5), {'A': GENERIC})


# Literals
# ========
def test_parse_polynomial():
    ring = PolynomialRing(['x', 'y'])
    p = parse_polynomial('(x + 1)^2 - y', ring)
    assert str(p) == 'x^2 + 2*x - y + 1'
    assert parse_polynomial('2*s', ZZ, {'s': ZZ.from_int(3)}) == 6
    with pytest.raises(EvalError):
        parse_polynomial('I', ZZ)
    with pytest.raises(EvalError):
        parse_polynomial('z', ring)


def test_parse_matrix_literal():
    ring = PolynomialRing(['x'])
    x = ring.var('x')
    m = parse_matrix_literal('[[1, x], [0, x^2]]', ring)
    assert m == Matrix([[1, x], [0, x ** 2]], ring)
    assert parse_matrix_literal('[[s, 0], [0, 1]]', ZZ, {'s': ZZ.from_int(4)}) == \
        Matrix([[4, 0], [0, 1]], ZZ)
    with pytest.raises(EvalError):
        parse_matrix_literal('[[1, 2], [3]]', ZZ)
    with pytest.raises(EvalError):
        parse_matrix_literal('[[I]]', ZZ)
    with pytest.raises(ParseError):
        parse_matrix_literal('[[1, 2], [3, 4]', ZZ)
