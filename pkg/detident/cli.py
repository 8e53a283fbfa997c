# Dependencies
# ============
# Standard
# --------
import csv
from dataclasses import dataclass, field
from datetime import datetime, timezone
import random
import re
import time
import typing as t

# Non-standard
# ------------
import click
from flask import Blueprint, current_app
from flask.cli import FlaskGroup

# Local
# -----
from . import create_app
from .documents import DocumentError, InputDocument, read_document
from .equivalence import (
    WitnessError,
    direct_equivalence_witness,
    nonequivalence_fixture,
    sl_witness,
)
from .expr import (
    Environment,
    ExprError,
    Nk,
    evaluate,
    evaluate_equation,
    parse,
    parse_polynomial,
)
from .identities import (
    GENERIC_IDS,
    TERNARY_IDS,
    IdentityReport,
    UnknownIdentityError,
    example31,
    example31_values,
    example33,
    fraction_proof_check,
    phk_example,
    phk_report,
    prove_identity_generic,
    reference_check,
    trace_counterexample,
)
from .ledger import list_runs, record_run
from .matrices import Matrix, det_bareiss, det_berkowitz, det_cofactor, is_invertible
from .rings import (
    ZZ,
    FractionField,
    ModularRing,
    PolynomialRing,
    RingContext,
    RingError,
)
from .utils import Pluralizer, format_value, result_digest

bp = Blueprint("detident", __name__, cli_group=None)

PROVE_IDS = GENERIC_IDS + ("fraction-proof",)


class UsageFailure(click.ClickException):
    """Bad arguments, unreadable input or unparseable expressions."""

    exit_code = 2


# Run reports
# ===========
@dataclass
class RunReport:
    """Everything one command checked. The run passes when every check
    came out as expected, counterexamples included."""

    command: str
    checks: t.List[IdentityReport] = field(default_factory=list)
    started: float = field(default_factory=time.perf_counter)
    seconds: t.Optional[float] = None

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def finish(self) -> None:
        self.seconds = round(time.perf_counter() - self.started, 6)

    def lines(self, timing: bool = True) -> t.Iterator[str]:
        yield f"detident {self.command}"
        for check in self.checks:
            verdict = "PASS" if check.passed else "FAIL"
            note = " (counterexample, expected to fail)" if not check.expected else ""
            yield f"[{verdict}] {check.identity} over {check.ring}, n = {check.n}{note}"
            yield f"  left: {check.left}"
            yield f"  right: {check.right}"
            if check.witness:
                yield f"  witness: {check.witness}"
            for key, value in check.details.items():
                yield f"  {key}: {value}"
            for key, value in check.statistics.items():
                if key == "seconds" and not timing:
                    continue
                yield f"  {key.replace('_', ' ')}: {value}"
        summary = f"{Pluralizer(len(self.checks)):N check/s}"
        if timing and self.seconds is not None:
            summary += f" in {self.seconds} s"
        yield f"overall: {self.status} ({summary})"

    def as_dict(self, timing: bool = True) -> t.Dict[str, t.Any]:
        data: t.Dict[str, t.Any] = {
            "command": self.command,
            "status": self.status,
            "checks": [check.as_dict() for check in self.checks],
        }
        if timing:
            data["seconds"] = self.seconds
            data["recorded"] = datetime.now(timezone.utc).isoformat()
        else:
            for check in data["checks"]:
                check["statistics"].pop("seconds", None)
        return data


def emit(report: RunReport, timing: bool = True) -> None:
    """Prints the report, records it if configured, and exits with 1 if
    any check went the wrong way."""
    report.finish()
    for line in report.lines(timing):
        click.echo(line)
    if current_app.config["RECORD_RUNS"]:
        count = record_run(report.as_dict(timing))
        click.echo(f"INFO: Run recorded as entry {count} of the ledger.", err=True)
    if not report.passed:
        click.get_current_context().exit(1)


def load_document(path: str) -> InputDocument:
    try:
        return read_document(path)
    except DocumentError as e:
        raise UsageFailure(f"{path}, {e}")


timing_option = click.option(
    "--timing/--no-timing", default=True, help="Include elapsed times in the output."
)


# Commands
# ========
def run_examples(
    monomial_cap: int = 200, eval_range: t.Tuple[int, int] = (-10, 10)
) -> t.List[IdentityReport]:
    """Every worked example, each checked against the published values."""
    checks = [example31()]
    checks.append(reference_check("example31-values", ZZ, 2, example31_values(), (1, 0, 0, 0)))

    report33 = example33()
    ring33 = PolynomialRing(("r", "s", "t"))
    checks.append(report33)
    checks.append(
        reference_check(
            "example33-values", ring33, 2,
            (report33.left, report33.right),
            (str(parse_polynomial("1+s*r", ring33)), str(parse_polynomial("2+s*r", ring33))),
        )
    )

    ring_s = PolynomialRing(("s",))
    (s,) = ring_s.gens()
    cx = trace_counterexample(s, 2)
    checks.append(cx)
    checks.append(
        reference_check("trace-cx-difference", ring_s, 2, cx.details["difference"], str(s))
    )

    ring_xy = PolynomialRing(("x", "y"))
    x, y = ring_xy.gens()
    checks.append(phk_report(x, y))
    checks.append(
        reference_check(
            "phk-values", ring_xy, 2,
            phk_example(x, y),
            tuple(parse_polynomial(v, ring_xy) for v in ("y-2", "x-2", "2*y-2")),
        )
    )

    fixture = nonequivalence_fixture(eval_range)
    comparison = fixture.comparison
    details: t.Dict[str, t.Any] = {
        "A": fixture.a,
        "B": fixture.b,
        "X": fixture.x,
        "det(P), det(Q)": f"{fixture.p_profile.determinant}, {fixture.q_profile.determinant}",
        "tr(P), tr(Q)": f"{fixture.p_profile.trace}, {fixture.q_profile.trace}",
    }
    for name, agrees in comparison.agreements.items():
        details[name] = "agree" if agrees else "differ"
    details["separated by the profile"] = comparison.separated
    details["P, Q as published"] = fixture.reproduced
    check = IdentityReport(
        identity="nonequivalence-fixture",
        ring=fixture.p.context.describe(),
        n=2,
        holds=fixture.reproduced,
        left=format_value(fixture.p, monomial_cap),
        right=format_value(fixture.q, monomial_cap),
        details={k: format_value(v, monomial_cap) for k, v in details.items()},
    )
    if not fixture.reproduced:
        check.witness = (
            f"expected P = {format_value(fixture.expected_p, monomial_cap)}, "
            f"Q = {format_value(fixture.expected_q, monomial_cap)}"
        )
    checks.append(check)
    return checks


@bp.cli.command("examples")
@timing_option
def cmd_examples(timing: bool):
    """Reproduce the worked examples and compare with the published values."""
    report = RunReport("examples")
    report.checks = run_examples(
        current_app.config["REPORT_MONOMIAL_CAP"],
        tuple(current_app.config["FIXTURE_EVAL_RANGE"]),
    )
    emit(report, timing)


@bp.cli.command("prove")
@click.argument("identity_id", metavar="IDENTITY")
@click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Matrix size.")
@click.option("--force", is_flag=True, help="Allow n above the configured budget.")
@timing_option
def cmd_prove(identity_id: str, n: int, force: bool, timing: bool):
    """Prove an identity for generic n×n matrices.

    IDENTITY is one of ternary-det, ternary-units, super-jacobson, trace,
    sylvester, jacobson, theorem32-det, theorem32-trace, theorem32-charpoly,
    theorem32-proof or fraction-proof.
    """
    if identity_id not in PROVE_IDS:
        raise UsageFailure(
            f"Unknown identity {identity_id}; expected one of {', '.join(PROVE_IDS)}."
        )
    config = current_app.config
    if identity_id == "fraction-proof":
        budget = config["FRACTION_PROOF_BUDGET"]
    elif identity_id in TERNARY_IDS:
        budget = config["GENERIC_BUDGET_TERNARY"]
    else:
        budget = config["GENERIC_BUDGET_BINARY"]
    if n > budget:
        if not force:
            raise UsageFailure(
                f"n = {n} exceeds the budget of {budget} for {identity_id}; use --force."
            )
        click.echo(f"WARNING: Proving {identity_id} with n = {n} above the budget of {budget}.", err=True)

    report = RunReport(f"prove {identity_id} --n {n}")
    cap = config["REPORT_MONOMIAL_CAP"]
    try:
        if identity_id == "fraction-proof":
            # Budget already enforced above.
            report.checks.append(fraction_proof_check(n, max(n, budget), cap))
        else:
            report.checks.append(prove_identity_generic(identity_id, n, cap))
    except UnknownIdentityError as e:
        raise UsageFailure(str(e))
    emit(report, timing)


@bp.cli.command("verify")
@click.argument("source", metavar="EXPRESSION")
@click.option(
    "--input", "input_path", type=click.Path(exists=True, dir_okay=False),
    help="Input document with the ring, dimension and bindings.",
)
@click.option("--n", "n", type=click.IntRange(min=1), default=None, help="Matrix size without an input document.")
@timing_option
def cmd_verify(source: str, input_path: t.Optional[str], n: t.Optional[int], timing: bool):
    """Evaluate an equation such as "det(A+B-A*X*B) == det(A+B-B*X*A)"."""
    if input_path:
        document = load_document(input_path)
        if n is not None and n != document.n:
            raise UsageFailure(f"--n {n} contradicts dim {document.n} of {input_path}.")
        try:
            env = document.environment()
        except DocumentError as e:
            raise UsageFailure(f"{input_path}, {e}")
    else:
        env = Environment(n or 1, ZZ)

    try:
        tree = parse(source)
        if tree.kind is Nk.EQ:
            left, right, value = evaluate_equation(tree, env)
        else:
            value = evaluate(tree, env)
    except ExprError as e:
        raise UsageFailure(e.diagnostic(source))

    report = RunReport(f"verify {source!r}")
    cap = current_app.config["REPORT_MONOMIAL_CAP"]
    if tree.kind is Nk.EQ:
        check = IdentityReport(
            identity="verify",
            ring=env.context.describe(),
            n=env.n,
            holds=value,
            left=format_value(left, cap),
            right=format_value(right, cap),
        )
        if not value:
            check.witness = f"{check.left} != {check.right}"
    else:
        formatted = format_value(value, cap)
        check = IdentityReport(
            identity="evaluate", ring=env.context.describe(), n=env.n,
            holds=True, left=formatted, right=formatted,
        )
    report.checks.append(check)
    emit(report, timing)


@bp.cli.command("witness")
@click.option(
    "--input", "input_path", type=click.Path(exists=True, dir_okay=False), required=True,
    help="Input document binding A, B and X to literals.",
)
@timing_option
def cmd_witness(input_path: str, timing: bool):
    """Print determinant-one U, V with U·diag(P,I)·V = diag(Q,I).

    U is listed as the factors RowFix2, RowFix1_inv, SwapJ_inv and V as
    SwapJ, C_B_inv, C_X, C_negA, SwapJ_inv. A name ending in _inv is the
    inverse of the block matrix of that name: C_B = [[I,B],[0,I]],
    RowFix1 = [[I,0],[AX-I,I]], SwapJ = [[0,-I],[I,0]].
    """
    document = load_document(input_path)
    try:
        a, b, x = document.concrete_matrices("A", "B", "X")
    except DocumentError as e:
        raise UsageFailure(f"{input_path}, {e}")
    cap = current_app.config["REPORT_MONOMIAL_CAP"]
    report = RunReport(f"witness --input {input_path}")

    try:
        witness = sl_witness(a, b, x)
    except WitnessError as e:
        click.echo(f"ERROR: {e}", err=True)
        click.get_current_context().exit(1)
    details: t.Dict[str, t.Any] = {
        f"U factor {k + 1}: {f.name}": f.matrix for k, f in enumerate(witness.left_factors)
    }
    details.update({
        f"V factor {k + 1}: {f.name}": f.matrix for k, f in enumerate(witness.right_factors)
    })
    details["U"] = witness.u
    details["V"] = witness.v
    details["det(U), det(V)"] = "1, 1"
    report.checks.append(
        IdentityReport(
            identity="sl-witness",
            ring=a.context.describe(),
            n=a.n,
            holds=True,
            left=format_value(witness.u * witness.source * witness.v, cap),
            right=format_value(witness.target, cap),
            details={k: format_value(v, cap) for k, v in details.items()},
        )
    )

    if is_invertible(a) and is_invertible(b):
        try:
            u, v = direct_equivalence_witness(a, b, x)
        except WitnessError as e:
            click.echo(f"ERROR: {e}", err=True)
            click.get_current_context().exit(1)
        report.checks.append(
            IdentityReport(
                identity="direct-witness",
                ring=a.context.describe(),
                n=a.n,
                holds=True,
                left=format_value(u * witness.p * v, cap),
                right=format_value(witness.q, cap),
                details={"U = B*A^-1": format_value(u, cap), "V = B^-1*A": format_value(v, cap)},
            )
        )
    else:
        click.echo("INFO: A or B is not invertible; no direct witness.", err=True)
    emit(report, timing)


# Benchmarks
# ==========
RANGE_PATTERN = re.compile(r"(?P<low>[0-9]+)(?:\.\.(?P<high>[0-9]+))?$")
RING_PATTERN = re.compile(r"Z$|Q$|Z/(?P<modulus>[0-9]+)$|Z\[(?P<names>[A-Za-z][A-Za-z0-9_,]*)\]$")
ALGORITHMS: t.Tuple[t.Tuple[str, t.Callable[[Matrix], t.Any]], ...] = (
    ("cofactor", det_cofactor),
    ("berkowitz", det_berkowitz),
    ("bareiss", det_bareiss),
)


class EchoStream(object):
    """Write-only file object that sends text through click.echo, so CSV
    rows land wherever click output goes."""

    def write(self, text: str) -> None:
        click.echo(text, nl=False)


def parse_range(text: str) -> t.Tuple[int, int]:
    m = RANGE_PATTERN.match(text)
    if not m:
        raise UsageFailure(f"Invalid range {text}; expected a..b.")
    low = int(m.group("low"))
    high = int(m.group("high") or low)
    if low < 1 or high < low:
        raise UsageFailure(f"Invalid range {text}.")
    return low, high


def parse_bench_ring(text: str) -> RingContext:
    m = RING_PATTERN.match(text)
    if not m:
        raise UsageFailure(f"Unsupported ring {text}; expected Z, Q, Z/m or Z[x,...].")
    if text == "Z":
        return ZZ
    if text == "Q":
        return FractionField(ZZ)
    if m.group("modulus"):
        modulus = int(m.group("modulus"))
        if modulus < 2:
            raise UsageFailure("The modulus must be at least 2.")
        return ModularRing(modulus)
    try:
        return PolynomialRing(m.group("names").split(","))
    except RingError as e:
        raise UsageFailure(str(e))


@bp.cli.command("bench")
@click.option("--n", "n_range", default="2..6", help="Matrix sizes a..b.")
@click.option("--ring", "ring", default="Z", help="Z, Q, Z/m or Z[x,...].")
@click.option("--trials", type=click.IntRange(min=1), default=5)
@click.option("--seed", type=int, default=0)
@timing_option
def cmd_bench(n_range: str, ring: str, trials: int, seed: int, timing: bool):
    """Time the determinant algorithms on seeded random matrices, as CSV."""
    low, high = parse_range(n_range)
    context = parse_bench_ring(ring)
    algorithms = [
        (name, function) for name, function in ALGORITHMS
        if name != "bareiss" or context.is_integral_domain
    ]
    rng = random.Random(seed)
    writer = csv.writer(EchoStream(), lineterminator="\n")
    writer.writerow(["algorithm", "ring", "n", "trial", "nanoseconds", "result_digest"])
    mismatches = 0
    for n in range(low, high + 1):
        for trial in range(1, trials + 1):
            m = Matrix(
                [[context.random_element(rng) for _ in range(n)] for _ in range(n)], context
            )
            digests = set()
            for name, function in algorithms:
                started = time.perf_counter_ns()
                value = function(m)
                elapsed = time.perf_counter_ns() - started
                digest = result_digest(value)
                digests.add(digest)
                writer.writerow(
                    [name, context.describe(), n, trial, elapsed if timing else 0, digest]
                )
            if len(digests) > 1:
                mismatches += 1
                click.echo(f"WARNING: Algorithms disagree for n = {n}, trial {trial}.", err=True)
    if mismatches:
        click.get_current_context().exit(1)


@bp.cli.command("history")
def cmd_history():
    """List the runs recorded in the ledger."""
    runs = list_runs()
    if not runs:
        click.echo("No runs recorded.")
        return
    for k, run in enumerate(runs, start=1):
        when = run.get("recorded", "-")
        click.echo(f"{k}\t{run['status']}\t{when}\t{run['command']}")


main = FlaskGroup(
    name="detident",
    help="Machine-checked determinantal identities over commutative rings.",
    create_app=create_app,
    add_default_commands=False,
    load_dotenv=False,
)
