# Dependencies
# ============
# Standard
# --------
from abc import ABCMeta, abstractmethod
from fractions import Fraction
import math
import random
import typing as t


# Exceptions
# ==========
class RingError(ValueError):
    """Usage error in the algebra layer."""


class ContextMismatchError(RingError):
    """Raised when elements of different ring contexts are combined."""


class UnboundVariableError(RingError):
    """Raised when a substitution leaves a variable without a value."""

    def __init__(self, name: str):
        super().__init__(f"Variable {name} is not bound.")
        self.name = name


class NotInvertibleError(ArithmeticError):
    """Raised when an inverse is requested for a non-unit. The offending
    value (a scalar, or the determinant of a matrix) is kept as `value`.
    """

    def __init__(self, message: str, value: "RingElement" = None):
        super().__init__(message)
        self.value = value


class InexactDivisionError(ArithmeticError):
    """Raised when an exact quotient does not exist."""


# Monomials
# =========
class Monomial(tuple):
    """Power product of variables, stored as a sorted tuple of
    (variable index, exponent) pairs. Zero exponents are never stored, so
    the empty tuple is the monomial 1.
    """

    __slots__ = ()

    @classmethod
    def from_exponents(cls, exponents: t.Mapping[int, int]) -> "Monomial":
        for index, power in exponents.items():
            if index < 0 or power < 0:
                raise RingError(f"Invalid exponent {power} for variable {index}.")
        return cls(sorted((i, e) for i, e in exponents.items() if e))

    @classmethod
    def variable(cls, index: int) -> "Monomial":
        return cls(((index, 1),))

    @property
    def degree(self) -> int:
        return sum(e for _, e in self)

    @property
    def exponents(self) -> t.Dict[int, int]:
        return dict(self)

    def dense(self) -> t.Tuple[int, ...]:
        """Exponent vector by ascending variable index."""
        if not self:
            return ()
        vector = [0] * (self[-1][0] + 1)
        for i, e in self:
            vector[i] = e
        return tuple(vector)

    def sort_key(self) -> t.Tuple[int, t.Tuple[int, ...]]:
        """Graded-lexicographic key: total degree first, then the exponent
        vector compared by ascending variable index."""
        return (self.degree, self.dense())

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not self:
            return other
        if not other:
            return self
        merged = dict(self)
        for i, e in other:
            merged[i] = merged.get(i, 0) + e
        return Monomial(sorted(merged.items()))

    def divide(self, other: "Monomial") -> t.Optional["Monomial"]:
        """Returns self/other, or None if other does not divide self."""
        remaining = dict(self)
        for i, e in other:
            left = remaining.get(i, 0) - e
            if left < 0:
                return None
            if left:
                remaining[i] = left
            else:
                del remaining[i]
        return Monomial(sorted(remaining.items()))

    def __repr__(self) -> str:
        return f"Monomial({dict(self)!r})"


ONE_MONOMIAL = Monomial()


# Ring contexts
# =============
class RingContext(metaclass=ABCMeta):
    """Describes one commutative ring and builds its elements. Elements of
    different contexts never combine."""

    @property
    @abstractmethod
    def zero(self) -> "RingElement":
        pass

    @property
    @abstractmethod
    def one(self) -> "RingElement":
        pass

    @property
    @abstractmethod
    def is_integral_domain(self) -> bool:
        pass

    @abstractmethod
    def from_int(self, value: int) -> "RingElement":
        """Image of an integer under the canonical map from ℤ."""

    @abstractmethod
    def describe(self) -> str:
        pass

    @abstractmethod
    def random_element(self, rng: random.Random, bound: int = 9) -> "RingElement":
        pass

    def embed(self, value: t.Any) -> "RingElement":
        """Maps integers, Integer elements and elements of this context into
        this context. Subclasses widen what is accepted."""
        if isinstance(value, bool):
            raise ContextMismatchError(f"Cannot use boolean {value} in {self}.")
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, RingElement):
            if value.context == self:
                return value
            if isinstance(value, Integer):
                return self.from_int(value.value)
        raise ContextMismatchError(f"Cannot embed {value!r} in {self.describe()}.")

    @property
    def has_zero_divisors(self) -> bool:
        return not self.is_integral_domain

    @property
    def variables(self) -> t.Tuple[str, ...]:
        """Names of indeterminates visible in this context."""
        return ()

    def __str__(self) -> str:
        return self.describe()

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.describe()}>"


class IntegerRing(RingContext):
    """The ring ℤ of arbitrary-precision integers."""

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntegerRing)

    def __hash__(self) -> int:
        return hash("Z")

    @property
    def zero(self) -> "Integer":
        return Integer(0)

    @property
    def one(self) -> "Integer":
        return Integer(1)

    @property
    def is_integral_domain(self) -> bool:
        return True

    def from_int(self, value: int) -> "Integer":
        return Integer(value)

    def describe(self) -> str:
        return "Z"

    def random_element(self, rng: random.Random, bound: int = 9) -> "Integer":
        return Integer(rng.randint(-bound, bound))


ZZ = IntegerRing()


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    return all(m % p for p in range(3, math.isqrt(m) + 1, 2))


class ModularRing(RingContext):
    """The ring ℤ/m for any modulus m ≥ 2; zero divisors are allowed."""

    def __init__(self, modulus: int):
        if modulus < 2:
            raise RingError(f"Modulus must be at least 2, got {modulus}.")
        self.modulus = modulus
        self._is_field = is_prime(modulus)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ModularRing) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("Zmod", self.modulus))

    @property
    def zero(self) -> "ModularInteger":
        return ModularInteger(0, self)

    @property
    def one(self) -> "ModularInteger":
        return ModularInteger(1, self)

    @property
    def is_integral_domain(self) -> bool:
        return self._is_field

    def from_int(self, value: int) -> "ModularInteger":
        return ModularInteger(value, self)

    def describe(self) -> str:
        return f"Z/{self.modulus}"

    def random_element(self, rng: random.Random, bound: int = 9) -> "ModularInteger":
        return ModularInteger(rng.randrange(self.modulus), self)


class PolynomialRing(RingContext):
    """The ring ℤ[x₀, x₁, ...] with a fixed variable table. Two polynomial
    rings are the same context iff their variable tables are identical."""

    def __init__(self, names: t.Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise RingError(f"Duplicate variable names in {names}.")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolynomialRing) and other.names == self.names

    def __hash__(self) -> int:
        return hash(("Poly", self.names))

    @property
    def zero(self) -> "MultiPoly":
        return MultiPoly({}, self)

    @property
    def one(self) -> "MultiPoly":
        return MultiPoly({ONE_MONOMIAL: 1}, self)

    @property
    def is_integral_domain(self) -> bool:
        return True

    @property
    def variables(self) -> t.Tuple[str, ...]:
        return self.names

    def from_int(self, value: int) -> "MultiPoly":
        return MultiPoly({ONE_MONOMIAL: value} if value else {}, self)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise RingError(f"{name} is not a variable of {self.describe()}.")

    def var(self, name: t.Union[str, int]) -> "MultiPoly":
        index = name if isinstance(name, int) else self.index(name)
        if not 0 <= index < len(self.names):
            raise RingError(f"Variable index {index} out of range.")
        return MultiPoly({Monomial.variable(index): 1}, self)

    def gens(self) -> t.List["MultiPoly"]:
        return [self.var(i) for i in range(len(self.names))]

    def extend(self, names: t.Sequence[str]) -> "PolynomialRing":
        """Returns the ring with extra variables appended to the table; a
        name already in the table raises RingError."""
        return PolynomialRing(self.names + tuple(names))

    def embed(self, value: t.Any) -> "RingElement":
        if isinstance(value, MultiPoly) and value.context != self:
            # Rename indices into this table; every variable must exist here.
            source = value.context.names
            mapping = {i: self.index(source[i]) for i in value.variables()}
            terms = {
                Monomial(sorted((mapping[i], e) for i, e in mono)): coeff
                for mono, coeff in value.terms.items()
            }
            return MultiPoly(terms, self)
        return super().embed(value)

    def describe(self) -> str:
        return f"Z[{','.join(self.names)}]"

    def random_element(self, rng: random.Random, bound: int = 9) -> "MultiPoly":
        terms: t.Dict[Monomial, int] = dict()
        for _ in range(rng.randint(0, 3)):
            exponents = {
                i: rng.randint(0, 2) for i in range(len(self.names)) if rng.random() < 0.5
            }
            mono = Monomial.from_exponents(exponents)
            terms[mono] = terms.get(mono, 0) + rng.randint(-bound, bound)
        return MultiPoly(terms, self)


class FractionField(RingContext):
    """Field of fractions of an integral domain (ℤ or a polynomial ring)."""

    def __init__(self, base: RingContext):
        if not isinstance(base, (IntegerRing, PolynomialRing)):
            raise RingError(f"Fractions over {base.describe()} are not supported.")
        self.base = base

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FractionField) and other.base == self.base

    def __hash__(self) -> int:
        return hash(("Frac", self.base))

    @property
    def zero(self) -> "FractionElement":
        return FractionElement(self.base.zero, self.base.one, self)

    @property
    def one(self) -> "FractionElement":
        return FractionElement(self.base.one, self.base.one, self)

    @property
    def is_integral_domain(self) -> bool:
        return True

    @property
    def variables(self) -> t.Tuple[str, ...]:
        return self.base.variables

    def from_int(self, value: int) -> "FractionElement":
        return FractionElement(self.base.from_int(value), self.base.one, self)

    def embed(self, value: t.Any) -> "RingElement":
        if isinstance(value, FractionElement) and value.context != self:
            return FractionElement(
                self.base.embed(value.num), self.base.embed(value.den), self
            )
        if isinstance(value, (Integer, MultiPoly)) and value.context != self:
            return FractionElement(self.base.embed(value), self.base.one, self)
        return super().embed(value)

    def fraction(self, num: t.Any, den: t.Any = 1) -> "FractionElement":
        return FractionElement(self.base.embed(num), self.base.embed(den), self)

    def describe(self) -> str:
        if isinstance(self.base, IntegerRing):
            return "Q"
        return f"Frac({self.base.describe()})"

    def random_element(self, rng: random.Random, bound: int = 9) -> "FractionElement":
        den = self.base.zero
        while den.is_zero:
            den = self.base.random_element(rng, bound)
        return FractionElement(self.base.random_element(rng, bound), den, self)


# Ring elements
# =============
class RingElement(metaclass=ABCMeta):
    """Immutable element of a commutative ring. Arithmetic accepts Python
    integers on either side; any other mismatch raises
    ContextMismatchError."""

    __slots__ = ()
    context: RingContext

    def _coerce(self, other: t.Any) -> "RingElement":
        if isinstance(other, RingElement) and other.context == self.context:
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.context.from_int(other)
        other_ctx = other.context.describe() if isinstance(other, RingElement) else type(other).__name__
        raise ContextMismatchError(
            f"Cannot combine elements of {self.context.describe()} and {other_ctx}."
        )

    @abstractmethod
    def _add(self, other: "RingElement") -> "RingElement":
        pass

    @abstractmethod
    def _mul(self, other: "RingElement") -> "RingElement":
        pass

    @abstractmethod
    def _equals(self, other: "RingElement") -> bool:
        pass

    @abstractmethod
    def __neg__(self) -> "RingElement":
        pass

    @property
    @abstractmethod
    def is_zero(self) -> bool:
        pass

    @abstractmethod
    def is_unit(self) -> bool:
        pass

    @abstractmethod
    def inverse(self) -> "RingElement":
        """Multiplicative inverse; raises NotInvertibleError for non-units."""

    @abstractmethod
    def exact_quotient(self, divisor: "RingElement") -> "RingElement":
        """The q with q·divisor = self, if the ring allows computing it."""

    def __add__(self, other: t.Any) -> "RingElement":
        return self._add(self._coerce(other))

    def __radd__(self, other: t.Any) -> "RingElement":
        return self._coerce(other)._add(self)

    def __sub__(self, other: t.Any) -> "RingElement":
        return self._add(-self._coerce(other))

    def __rsub__(self, other: t.Any) -> "RingElement":
        return self._coerce(other)._add(-self)

    def __mul__(self, other: t.Any) -> "RingElement":
        if not isinstance(other, (RingElement, int)):
            return NotImplemented
        return self._mul(self._coerce(other))

    def __rmul__(self, other: t.Any) -> "RingElement":
        return self._coerce(other)._mul(self)

    def __pow__(self, exponent: int) -> "RingElement":
        if exponent < 0:
            return self.inverse() ** -exponent
        result = self.context.one
        base = self
        while exponent:
            if exponent & 1:
                result = result._mul(base)
            base = base._mul(base)
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        try:
            other = self._coerce(other)
        except ContextMismatchError:
            return False
        return self._equals(other)

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self} in {self.context.describe()})"


class Integer(RingElement):
    """Element of ℤ. Python integers are arbitrary precision, so there is
    no overflow; zero is the single value 0."""

    __slots__ = ("value",)
    context = ZZ

    def __init__(self, value: int):
        self.value = int(value)

    def _add(self, other: "Integer") -> "Integer":
        return Integer(self.value + other.value)

    def _mul(self, other: "Integer") -> "Integer":
        return Integer(self.value * other.value)

    def _equals(self, other: "Integer") -> bool:
        return self.value == other.value

    def __neg__(self) -> "Integer":
        return Integer(-self.value)

    def __hash__(self) -> int:
        return hash(self.value)

    def __int__(self) -> int:
        return self.value

    def __lt__(self, other: "Integer") -> bool:
        return self.value < self._coerce(other).value

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def is_unit(self) -> bool:
        return abs(self.value) == 1

    def inverse(self) -> "Integer":
        if not self.is_unit():
            raise NotInvertibleError(f"{self.value} is not a unit of Z.", self)
        return self

    def exact_quotient(self, divisor: "RingElement") -> "Integer":
        divisor = self._coerce(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("Division by zero in Z.")
        quotient, remainder = divmod(self.value, divisor.value)
        if remainder:
            raise InexactDivisionError(f"{divisor.value} does not divide {self.value}.")
        return Integer(quotient)

    def __str__(self) -> str:
        return str(self.value)


class ModularInteger(RingElement):
    """Element of ℤ/m, stored as its representative in [0, m)."""

    __slots__ = ("value", "context")

    def __init__(self, value: int, context: ModularRing):
        self.context = context
        self.value = int(value) % context.modulus

    @property
    def modulus(self) -> int:
        return self.context.modulus

    def _add(self, other: "ModularInteger") -> "ModularInteger":
        return ModularInteger(self.value + other.value, self.context)

    def _mul(self, other: "ModularInteger") -> "ModularInteger":
        return ModularInteger(self.value * other.value, self.context)

    def _equals(self, other: "ModularInteger") -> bool:
        return self.value == other.value

    def __neg__(self) -> "ModularInteger":
        return ModularInteger(-self.value, self.context)

    def __hash__(self) -> int:
        return hash((self.value, self.modulus))

    def __int__(self) -> int:
        return self.value

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def is_unit(self) -> bool:
        return math.gcd(self.value, self.modulus) == 1

    def inverse(self) -> "ModularInteger":
        if not self.is_unit():
            raise NotInvertibleError(
                f"{self.value} is not a unit of Z/{self.modulus}.", self
            )
        # Extended Euclid, through the built-in modular inverse.
        return ModularInteger(pow(self.value, -1, self.modulus), self.context)

    def exact_quotient(self, divisor: "RingElement") -> "ModularInteger":
        divisor = self._coerce(divisor)
        if not self.context.is_integral_domain:
            raise InexactDivisionError(
                f"Exact division is unavailable in Z/{self.modulus} (composite modulus)."
            )
        if divisor.is_zero:
            raise ZeroDivisionError(f"Division by zero in Z/{self.modulus}.")
        return self._mul(divisor.inverse())

    def __str__(self) -> str:
        return str(self.value)


class MultiPoly(RingElement):
    """Sparse polynomial over ℤ: a mapping from Monomial to a nonzero
    integer coefficient. The mapping is never mutated after construction.
    """

    __slots__ = ("terms", "context")

    def __init__(self, terms: t.Mapping[Monomial, int], context: PolynomialRing):
        self.context = context
        self.terms: t.Dict[Monomial, int] = {
            Monomial(m): int(c) for m, c in terms.items() if c
        }

    @classmethod
    def _raw(cls, terms: t.Dict[Monomial, int], context: PolynomialRing) -> "MultiPoly":
        # Caller guarantees canonical terms.
        poly = cls.__new__(cls)
        poly.context = context
        poly.terms = terms
        return poly

    def _add(self, other: "MultiPoly") -> "MultiPoly":
        if len(other.terms) > len(self.terms):
            self, other = other, self
        result = dict(self.terms)
        for mono, coeff in other.terms.items():
            total = result.get(mono, 0) + coeff
            if total:
                result[mono] = total
            else:
                result.pop(mono, None)
        return MultiPoly._raw(result, self.context)

    def _mul(self, other: "MultiPoly") -> "MultiPoly":
        if not self.terms or not other.terms:
            return MultiPoly._raw({}, self.context)
        result: t.Dict[Monomial, int] = dict()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = m1 * m2
                result[mono] = result.get(mono, 0) + c1 * c2
        return MultiPoly._raw({m: c for m, c in result.items() if c}, self.context)

    def _equals(self, other: "MultiPoly") -> bool:
        return self.terms == other.terms

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw({m: -c for m, c in self.terms.items()}, self.context)

    def __hash__(self) -> int:
        if self.is_constant:
            return hash(self.constant_term)
        return hash(frozenset(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONOMIAL in self.terms)

    @property
    def constant_term(self) -> int:
        return self.terms.get(ONE_MONOMIAL, 0)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((m.degree for m in self.terms), default=-1)

    def variables(self) -> t.Set[int]:
        return {i for mono in self.terms for i, _ in mono}

    def sorted_terms(self) -> t.List[t.Tuple[Monomial, int]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda item: item[0].sort_key(), reverse=True)

    def leading_term(self) -> t.Tuple[Monomial, int]:
        if not self.terms:
            raise RingError("The zero polynomial has no leading term.")
        mono = max(self.terms, key=Monomial.sort_key)
        return mono, self.terms[mono]

    def content(self) -> int:
        """gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for coeff in self.terms.values():
            g = math.gcd(g, coeff)
        return g

    def is_unit(self) -> bool:
        return self.is_constant and abs(self.constant_term) == 1

    def inverse(self) -> "MultiPoly":
        if not self.is_unit():
            raise NotInvertibleError(
                f"{self} is not a unit of {self.context.describe()}.", self
            )
        return self

    def exact_quotient(self, divisor: "RingElement") -> "MultiPoly":
        """Multivariate division with remainder under graded-lex order,
        raising InexactDivisionError unless the remainder vanishes."""
        divisor = self._coerce(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("Division by the zero polynomial.")
        lead_mono, lead_coeff = divisor.leading_term()
        remainder = dict(self.terms)
        quotient: t.Dict[Monomial, int] = dict()
        while remainder:
            mono = max(remainder, key=Monomial.sort_key)
            coeff = remainder[mono]
            q_mono = mono.divide(lead_mono)
            if q_mono is None or coeff % lead_coeff:
                raise InexactDivisionError(f"{divisor} does not divide {self}.")
            q_coeff = coeff // lead_coeff
            quotient[q_mono] = q_coeff
            for d_mono, d_coeff in divisor.terms.items():
                target = q_mono * d_mono
                value = remainder.get(target, 0) - q_coeff * d_coeff
                if value:
                    remainder[target] = value
                else:
                    remainder.pop(target, None)
        return MultiPoly._raw(quotient, self.context)

    def substitute(
        self, bindings: t.Mapping[int, t.Any], target: RingContext
    ) -> RingElement:
        """Image under the ring homomorphism ℤ[vars] → target extending
        the variable bindings (keyed by variable index)."""
        images = dict()
        for index in sorted(self.variables()):
            if index not in bindings:
                raise UnboundVariableError(self.context.names[index])
            images[index] = target.embed(bindings[index])
        powers: t.Dict[t.Tuple[int, int], RingElement] = dict()
        result = target.zero
        for mono, coeff in self.terms.items():
            term = target.from_int(coeff)
            for index, power in mono:
                key = (index, power)
                if key not in powers:
                    powers[key] = images[index] ** power
                term = term * powers[key]
            result = result + term
        return result

    def evaluate(self, point: t.Mapping[int, int]) -> int:
        """Integer value at an integer point (all variables bound)."""
        return int(self.substitute(point, ZZ))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.context.names
        pieces = list()
        for mono, coeff in self.sorted_terms():
            factors = [
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in mono
            ]
            magnitude = abs(coeff)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(magnitude)] + factors)
            if not pieces:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f"- {body}" if coeff < 0 else f"+ {body}")
        return " ".join(pieces)


class FractionElement(RingElement):
    """Quotient num/den of elements of an integral domain. Integer
    fractions are kept in lowest terms with a positive denominator;
    polynomial fractions are not reduced (no multivariate gcd) and compare
    by cross-multiplication.
    """

    __slots__ = ("num", "den", "context")

    def __init__(self, num: RingElement, den: RingElement, context: FractionField):
        if den.is_zero:
            raise ZeroDivisionError("Fraction with zero denominator.")
        self.context = context
        if num.is_zero:
            num, den = context.base.zero, context.base.one
        elif isinstance(num, Integer):
            g = math.gcd(num.value, den.value)
            if den.value < 0:
                g = -g
            num, den = Integer(num.value // g), Integer(den.value // g)
        elif den.is_constant:
            c = den.constant_term
            g = math.gcd(num.content(), c)
            if c < 0:
                g = -g
            if g != 1:
                num = MultiPoly._raw({m: v // g for m, v in num.terms.items()}, num.context)
                den = den.context.from_int(c // g)
        self.num = num
        self.den = den

    def _add(self, other: "FractionElement") -> "FractionElement":
        if self.den == other.den:
            return FractionElement(self.num + other.num, self.den, self.context)
        return FractionElement(
            self.num * other.den + other.num * self.den,
            self.den * other.den,
            self.context,
        )

    def _mul(self, other: "FractionElement") -> "FractionElement":
        if self.num.is_zero or other.num.is_zero:
            return self.context.zero
        return FractionElement(
            self.num * other.num, self.den * other.den, self.context
        )

    def _equals(self, other: "FractionElement") -> bool:
        return self.num * other.den == other.num * self.den

    def __neg__(self) -> "FractionElement":
        return FractionElement(-self.num, self.den, self.context)

    def __hash__(self) -> int:
        if isinstance(self.num, Integer):
            return hash(Fraction(self.num.value, self.den.value))
        if self.num.is_zero:
            return hash(0)
        # Constant values hash as the rational they equal.
        _, lead_num = self.num.leading_term()
        _, lead_den = self.den.leading_term()
        if self.num * lead_den == self.den * lead_num:
            return hash(Fraction(lead_num, lead_den))
        return hash(self.context)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def is_unit(self) -> bool:
        return not self.num.is_zero

    def inverse(self) -> "FractionElement":
        if self.num.is_zero:
            raise NotInvertibleError("Zero has no inverse in a field.", self)
        return FractionElement(self.den, self.num, self.context)

    def exact_quotient(self, divisor: "RingElement") -> "FractionElement":
        divisor = self._coerce(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("Division by zero fraction.")
        return self._mul(divisor.inverse())

    def __str__(self) -> str:
        if self.den == self.context.base.one:
            return str(self.num)
        num, den = str(self.num), str(self.den)
        if isinstance(self.num, MultiPoly) and len(self.num) > 1:
            num = f"({num})"
        if isinstance(self.den, MultiPoly) and len(self.den) > 1:
            den = f"({den})"
        return f"{num}/{den}"


# Operations
# ==========
def _same_context(a: RingElement, b: RingElement) -> None:
    if a.context != b.context:
        raise ContextMismatchError(
            f"Cannot combine elements of {a.context.describe()} "
            f"and {b.context.describe()}."
        )


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    _same_context(a, b)
    return a + b


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    _same_context(a, b)
    return a * b


def ring_is_unit(a: RingElement) -> bool:
    return a.is_unit()


def poly_substitute(
    p: MultiPoly, bindings: t.Mapping[int, t.Any], target: RingContext
) -> RingElement:
    return p.substitute(bindings, target)


def fraction_eq(a: FractionElement, b: FractionElement) -> bool:
    _same_context(a, b)
    return a.num * b.den == b.num * a.den
