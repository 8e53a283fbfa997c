import pytest

from detident.documents import DocumentError, parse_document, parse_ring, read_document
from detident.expr import GENERIC, evaluate_source
from detident.matrices import Matrix
from detident.rings import ZZ, FractionField, ModularRing, PolynomialRing, RingError


def test_read_example(documents):
    document = read_document(documents.example31)
    assert document.context == ZZ
    assert document.n == 2
    assert set(document.matrices) == {'A', 'B', 'X'}
    a, b, x = document.concrete_matrices('A', 'B', 'X')
    assert a == Matrix([[1, 0], [0, 0]], ZZ)
    assert x == Matrix([[0, 1], [1, 0]], ZZ)
    env = document.environment()
    assert evaluate_source('det(A + B - A*X*B) == det(A + B - B*X*A)', env)


def test_scalars_in_literals(documents):
    document = read_document(documents.trace_counterexample)
    assert document.scalars['s'] == 1
    (b,) = document.concrete_matrices('B')
    assert b == Matrix([[0, 0], [1, 0]], ZZ)


@pytest.mark.parametrize('line, context', [
    ('ring Z', ZZ),
    ('ring Q', FractionField(ZZ)),
    ('ring Zmod 6', ModularRing(6)),
    ('ring Poly x y', PolynomialRing(['x', 'y'])),
    ('ring Frac x', FractionField(PolynomialRing(['x']))),
])
def test_rings(line, context):
    document = parse_document(f'{line}\ndim 1\n')
    assert document.context == context


def test_parse_ring_errors():
    with pytest.raises(RingError):
        parse_ring('Zmod', ['1'])
    with pytest.raises(RingError):
        parse_ring('Zmod', [])
    with pytest.raises(RingError):
        parse_ring('Poly', [])
    with pytest.raises(RingError):
        parse_ring('Poly', ['x', 'x'])
    with pytest.raises(RingError):
        parse_ring('Poly', ['det'])
    with pytest.raises(RingError):
        parse_ring('R', [])


def test_polynomial_document():
    document = parse_document(
        'ring Poly x y   # two variables\n'
        '\n'
        'matrix A = [[x, 1], [0, y]]\n'
        'matrix X = generic\n')
    assert document.n == 2
    assert document.matrices['X'] is GENERIC
    env = document.environment()
    assert env.context.names == ('x', 'y', 'x_1_1', 'x_1_2', 'x_2_1', 'x_2_2')
    assert str(evaluate_source('det(A)', env)) == 'x*y'


def test_generic_mod_m_rejected():
    with pytest.raises(DocumentError):
        parse_document('ring Zmod 5\ndim 2\nmatrix A = generic\n')


@pytest.mark.parametrize('text, line', [
    ('ring Z\nring Q\ndim 1\n', 2),
    ('dim 2\ndim 3\n', 2),
    ('dim 0\n', 1),
    ('ring Z\nfoo\n', 2),
    ('dim 2\nmatrix A = [[1,0],[0,1]]\nmatrix A = [[1,0],[0,1]]\n', 3),
    ('dim 2\nscalar det = 3\n', 2),
    ('dim 2\nmatrix A = [[1,0,0],[0,1,0],[0,0,1]]\n', 2),
    ('dim 1\nmatrix A = [[1 +]]\n', 2),
    ('dim 1\nscalar s = y\n', 2),
])
def test_document_errors(text, line):
    with pytest.raises(DocumentError) as excinfo:
        parse_document(text)
    assert excinfo.value.line == line
    assert str(excinfo.value).startswith(f'line {line}: ')


def test_missing_dimension():
    with pytest.raises(DocumentError) as excinfo:
        parse_document('ring Z\n')
    assert excinfo.value.line is None


def test_concrete_matrices_required():
    document = parse_document('dim 2\nmatrix A = generic\n')
    with pytest.raises(DocumentError):
        document.concrete_matrices('A')
    with pytest.raises(DocumentError):
        document.concrete_matrices('B')


@pytest.mark.parametrize('text', [
    'ring Poly a_1_1\ndim 1\nmatrix A = generic\n',
    'ring Frac s x_2_1\ndim 2\nmatrix X = generic\n',
])
def test_generic_entries_are_fresh(text):
    document = parse_document(text)
    with pytest.raises(DocumentError) as excinfo:
        document.environment()
    assert 'clash with variables' in str(excinfo.value)
