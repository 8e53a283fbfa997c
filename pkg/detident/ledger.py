# Dependencies
# ============
# Standard
# --------
import json
import os
import typing as t

# Non-standard
# ------------
import click
from dulwich.errors import NotGitRepository
import dulwich.porcelain as git
from dulwich.repo import Repo
from flask import current_app, g
from tinydb import TinyDB
from tinydb.storages import Storage, touch


class JSONStorageWithGit(Storage):
    """Stores the data in a JSON file and commits every change to a Git
    repository rooted at the file's directory."""

    def __init__(
        self,
        path: str,
        create_dirs: bool = False,
        encoding: str = "utf8",
        committer: str = "detident <detident@localhost>",
        **kwargs,
    ):
        super(JSONStorageWithGit, self).__init__()
        touch(path, create_dirs=create_dirs)
        self.kwargs = kwargs
        self.committer = committer.encode("utf8")
        self._handle = open(path, "r+", encoding=encoding)
        git_repo = os.path.dirname(path)
        try:
            self.repo = Repo(git_repo)
        except NotGitRepository:
            self.repo = Repo.init(git_repo)
        self.filename = path
        self.name = os.path.splitext(os.path.basename(path))[0]
        self.message = f"Update to {self.name}"

    def close(self):
        self._handle.close()
        self.repo.close()

    def read(self) -> t.Optional[t.Dict[str, t.Dict[str, t.Any]]]:
        self._handle.seek(0, os.SEEK_END)
        if not self._handle.tell():
            return None
        self._handle.seek(0)
        return json.load(self._handle)

    def write(self, data: t.Dict[str, t.Dict[str, t.Any]]):
        self._handle.seek(0)
        self._handle.write(json.dumps(data, **self.kwargs))
        self._handle.flush()
        os.fsync(self._handle.fileno())
        self._handle.truncate()

        added, ignored = git.add(repo=self.repo, paths=[self.filename])
        if not added:
            click.echo(
                f"WARNING: Failed to stage changes to {self.filename}.", err=True
            )
            if ignored:
                click.echo("WARNING: Operation blocked by gitignore pattern.", err=True)
            return
        changes = sum(len(group) for group in git.status(repo=self.repo)[0].values())
        if not changes:
            return

        git.commit(
            self.repo,
            message=self.message.encode("utf8"),
            author=self.committer,
            committer=self.committer,
        )


def get_ledger_db() -> TinyDB:
    """Returns the run ledger as a TinyDB object, cached for the current
    application context."""
    if "ledger_db" not in g:
        g.ledger_db = TinyDB(
            current_app.config["LEDGER_DATABASE_PATH"],
            storage=JSONStorageWithGit,
            create_dirs=True,
            committer=current_app.config["LEDGER_COMMITTER"],
            indent=1,
            ensure_ascii=False,
        )

    return g.ledger_db


def close_ledger_db(e: t.Optional[BaseException] = None) -> None:
    db = g.pop("ledger_db", None)
    if db is not None:
        db.close()


def record_run(report: t.Mapping[str, t.Any]) -> int:
    """Appends a serialised run report and returns its entry id; the
    commit message names the command."""
    db = get_ledger_db()
    db.storage.message = f"Record run: {report.get('command', '?')}"
    return db.table("runs").insert(dict(report))


def list_runs() -> t.List[t.Dict[str, t.Any]]:
    return [dict(doc) for doc in get_ledger_db().table("runs").all()]
