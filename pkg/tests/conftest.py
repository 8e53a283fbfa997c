import os
import random
import tempfile

import pytest

from detident import create_app
from detident.matrices import Matrix
from detident.rings import ZZ, ModularRing, PolynomialRing


class DocumentActions(object):
    """Writes input documents to a temporary directory."""

    def __init__(self, path):
        self._path = path
        self._count = 0

    def write(self, text):
        self._count += 1
        filename = os.path.join(self._path, f'doc{self._count}.txt')
        with open(filename, 'w', encoding='utf8') as f:
            f.write(text)
        return filename

    @property
    def example31(self):
        return self.write(
            'ring Z\n'
            'dim 2\n'
            'matrix A = [[1,0],[0,0]]\n'
            'matrix X = [[0,1],[1,0]]\n'
            'matrix B = [[1,1],[0,0]]\n')

    @property
    def trace_counterexample(self):
        return self.write(
            '# A = E11, X = E12, B = s*E21\n'
            'ring Z\n'
            'dim 2\n'
            'scalar s = 1\n'
            'matrix A = [[1,0],[0,0]]\n'
            'matrix X = [[0,1],[0,0]]\n'
            'matrix B = [[0,0],[s,0]]\n')


class MatrixActions(object):
    """Seeded source of random matrices."""

    rings = [ZZ, ModularRing(6), ModularRing(7), PolynomialRing(['x'])]

    def __init__(self, seed=20240101):
        self.rng = random.Random(seed)

    def random(self, n, context, bound=9):
        return Matrix(
            [[context.random_element(self.rng, bound) for _ in range(n)]
             for _ in range(n)],
            context)

    def triple(self, n, context, bound=9):
        return tuple(self.random(n, context, bound) for _ in range(3))

    def unimodular(self, n, steps=6):
        """Random integer matrix of determinant ±1."""
        rows = [[int(i == j) for j in range(n)] for i in range(n)]
        for _ in range(steps):
            i, j = self.rng.sample(range(n), 2) if n > 1 else (0, 0)
            if i == j:
                rows[i] = [-v for v in rows[i]]
                continue
            factor = self.rng.randint(-3, 3)
            rows[i] = [a + factor * b for a, b in zip(rows[i], rows[j])]
        if self.rng.random() < 0.5 and n > 1:
            rows[0], rows[1] = rows[1], rows[0]
        return Matrix(rows, ZZ)


@pytest.fixture
def app():
    with tempfile.TemporaryDirectory() as inst_path:
        app = create_app({
            'TESTING': True,
            'LEDGER_DATABASE_PATH': os.path.join(
                inst_path, 'ledger', 'runs.json'),
        })

        yield app


@pytest.fixture
def recording_app():
    with tempfile.TemporaryDirectory() as inst_path:
        app = create_app({
            'TESTING': True,
            'RECORD_RUNS': True,
            'LEDGER_DATABASE_PATH': os.path.join(
                inst_path, 'ledger', 'runs.json'),
        })

        yield app


@pytest.fixture
def runner(app):
    return app.test_cli_runner()


@pytest.fixture
def documents():
    with tempfile.TemporaryDirectory() as path:
        yield DocumentActions(path)


@pytest.fixture
def matrices():
    return MatrixActions()
