import os

from dulwich.repo import Repo
from flask import Flask

from detident.ledger import get_ledger_db, list_runs, record_run


def test_record_run(recording_app: Flask):
    with recording_app.app_context():
        assert list_runs() == []
        assert record_run({'command': 'examples', 'status': 'PASS'}) == 1
        assert record_run({'command': 'bench', 'status': 'FAIL'}) == 2
        runs = list_runs()
        assert [run['command'] for run in runs] == ['examples', 'bench']
        assert runs[1]['status'] == 'FAIL'
        assert get_ledger_db().table('runs').get(doc_id=2)['command'] == 'bench'


def test_ledger_is_versioned(recording_app: Flask):
    path = recording_app.config['LEDGER_DATABASE_PATH']
    with recording_app.app_context():
        record_run({'command': 'prove sylvester --n 2', 'status': 'PASS'})
    repo = Repo(os.path.dirname(path))
    try:
        head = repo[repo.head()]
        assert head.message.startswith(b'Record run: prove sylvester --n 2')
        assert head.author == b'detident <detident@localhost>'
    finally:
        repo.close()


def test_ledger_survives_reopening(recording_app: Flask):
    with recording_app.app_context():
        record_run({'command': 'examples', 'status': 'PASS'})
    with recording_app.app_context():
        assert len(list_runs()) == 1
        assert get_ledger_db() is get_ledger_db()
