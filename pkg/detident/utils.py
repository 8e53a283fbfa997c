# Dependencies
# ============
# Standard
# --------
import hashlib
import typing as t

# Local
# -----
from .matrices import CharPoly, Matrix
from .rings import FractionElement, MultiPoly, RingElement

DEFAULT_MONOMIAL_CAP = 200


# General data handling
# =====================
class Pluralizer:
    """Class for pluralizing nouns. Example uses:

        '{:N monomial/s}'.format(Pluralizer(0))
        '{:N matri/x/ces}'.format(Pluralizer(1))
        '{:N identity/ies}'.format(Pluralizer(2))

    From http://stackoverflow.com/a/27642538
    """

    def __init__(self, value: int):
        self.value = value

    def __format__(self, formatter: str) -> str:
        formatter = formatter.replace("N", str(self.value))
        start, _, suffixes = formatter.partition("/")
        singular, _, plural = suffixes.rpartition("/")

        return "{}{}".format(start, singular if self.value == 1 else plural)


# Report formatting
# =================
def monomial_count(value: t.Any) -> int:
    """Number of stored terms; 1 for non-polynomial scalars, summed over
    entries for matrices."""
    if isinstance(value, MultiPoly):
        return len(value.terms)
    if isinstance(value, FractionElement):
        return monomial_count(value.num) + monomial_count(value.den)
    if isinstance(value, Matrix):
        return sum(monomial_count(e) for e in value.entries())
    if isinstance(value, CharPoly):
        return sum(monomial_count(c) for c in value.coefficients)
    return 1


def poly_digest(p: MultiPoly) -> str:
    """Short fingerprint of a large polynomial: term count, content, and
    the value with variable k set to k + 2."""
    point = {k: k + 2 for k in range(len(p.context.names))}
    return (
        f"<{Pluralizer(len(p.terms)):N monomial/s}, content {p.content()}, "
        f"value {p.evaluate(point)} at x_k = k+2>"
    )


def format_value(value: t.Any, monomial_cap: int = DEFAULT_MONOMIAL_CAP) -> str:
    """Serialises a ring element, matrix or characteristic polynomial,
    replacing polynomials above the size cap by their digest."""
    if isinstance(value, MultiPoly) and len(value.terms) > monomial_cap:
        return poly_digest(value)
    if isinstance(value, FractionElement) and isinstance(value.num, MultiPoly):
        if monomial_count(value) > monomial_cap:
            return f"{poly_digest(value.num)} / {poly_digest(value.den)}"
    if isinstance(value, Matrix):
        rows = [
            "[" + ", ".join(format_value(e, monomial_cap) for e in row) + "]"
            for row in value.rows
        ]
        return "[" + ", ".join(rows) + "]"
    if isinstance(value, CharPoly):
        if monomial_count(value) > monomial_cap:
            return "charpoly(" + ", ".join(
                format_value(c, monomial_cap) for c in value.coefficients
            ) + ")"
        return str(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        return "(" + ", ".join(format_value(v, monomial_cap) for v in value) + ")"
    return str(value)


def result_digest(value: RingElement) -> str:
    """Stable hash of an exact value, used to compare algorithms."""
    return hashlib.sha256(str(value).encode("utf8")).hexdigest()[:16]
