import os
import tempfile

from flask import Flask
import pytest

from detident import create_app


def test_config():
    assert not create_app().testing
    assert create_app({'TESTING': True}).testing


def test_defaults(app: Flask):
    assert app.config['GENERIC_BUDGET_TERNARY'] == 3
    assert app.config['GENERIC_BUDGET_BINARY'] == 4
    assert app.config['FRACTION_PROOF_BUDGET'] == 2
    assert app.config['REPORT_MONOMIAL_CAP'] == 200
    assert tuple(app.config['FIXTURE_EVAL_RANGE']) == (-10, 10)
    assert app.config['RECORD_RUNS'] is False


def test_settings_file(monkeypatch):
    with tempfile.TemporaryDirectory() as inst_path:
        settings = os.path.join(inst_path, 'settings.py')
        with open(settings, 'w') as f:
            f.write('REPORT_MONOMIAL_CAP = 12\n')
        monkeypatch.setenv('DETIDENT_SETTINGS', settings)
        app = create_app({'TESTING': True, 'REPORT_MONOMIAL_CAP': 50})
        assert app.config['REPORT_MONOMIAL_CAP'] == 12


def test_bad_config():
    with tempfile.NamedTemporaryFile() as blocker:
        # A regular file cannot hold a directory.
        with pytest.raises(OSError):
            create_app({
                'TESTING': True,
                'RECORD_RUNS': True,
                'LEDGER_DATABASE_PATH': os.path.join(
                    blocker.name, 'ledger', 'runs.json'),
            })


def test_ledger_directory_created():
    with tempfile.TemporaryDirectory() as inst_path:
        path = os.path.join(inst_path, 'ledger', 'runs.json')
        create_app({'TESTING': True, 'RECORD_RUNS': True,
                    'LEDGER_DATABASE_PATH': path})
        assert os.path.isdir(os.path.dirname(path))


def test_commands(app: Flask):
    commands = set(app.cli.commands)
    assert {'examples', 'prove', 'verify', 'witness', 'bench',
            'history'} <= commands
