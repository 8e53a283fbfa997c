#!/usr/bin/env python3

# Dependencies
# ============
# Standard
# --------
import os
import typing as t

# Non-standard
# ------------
from flask import Flask

__version__ = "1.0.0"


def create_app(test_config: t.Mapping[str, t.Any] = None) -> Flask:
    """Factory for the application object, which holds the configuration
    and the command-line group."""

    # Create the app:
    app = Flask(__name__, instance_relative_config=True)

    # Set default configuration:
    app.config.from_mapping(
        GENERIC_BUDGET_TERNARY=3,
        GENERIC_BUDGET_BINARY=4,
        FRACTION_PROOF_BUDGET=2,
        REPORT_MONOMIAL_CAP=200,
        FIXTURE_EVAL_RANGE=(-10, 10),
        RECORD_RUNS=False,
        LEDGER_DATABASE_PATH=os.path.join(app.instance_path, "ledger", "runs.json"),
        LEDGER_COMMITTER="detident <detident@localhost>",
        DEBUG=False,
        TESTING=False,
    )

    # Override these settings as appropriate:
    if test_config is None:
        # Load the instance config, if it exists:
        app.config.from_pyfile("config.py", silent=True)
    else:
        # Load the test configuration that was passed in:
        app.config.from_mapping(test_config)

    # Override with environment variable if set:
    app.config.from_envvar("DETIDENT_SETTINGS", silent=True)

    # Make sure the ledger directory exists:
    if app.config["RECORD_RUNS"]:
        path = os.path.dirname(app.config["LEDGER_DATABASE_PATH"])
        if not os.path.isdir(path):
            os.makedirs(path)

    from . import ledger

    app.teardown_appcontext(ledger.close_ledger_db)

    from . import cli

    app.register_blueprint(cli.bp)

    return app
