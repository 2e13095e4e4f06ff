"""Graded-commutative cohomology rings presented by rewrite rules.

A presentation lists even-degree generators, degree-preserving rewrite
rules (``monomial -> polynomial``), monomials declared zero, an optional
curve fiber class with the generators supported on it, and the
intersection numbers of the top-degree basis monomials.

Every element is held in normal form.  When a presentation is loaded the
rewrite system is checked for local confluence on all monomials up to the
top degree, and monomial reduction detects cycles, so normal forms exist
and do not depend on the order in which rules are applied.  All values are
immutable; operations are pure functions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping, NamedTuple, Optional, Sequence, Tuple

from .errors import (
    FiberClassError,
    IncompletePresentationError,
    PresentationError,
    UnknownGeneratorError,
)
from .parsing import PresentationFileData, expand, parse_expression, parse_presentation_text
from .scalars import ParamScalar, Rational, as_fraction

Monomial = Tuple[int, ...]

_IN_PROGRESS = object()


class RewriteRule(NamedTuple):
    lhs: Monomial
    rhs: Tuple[Tuple[Monomial, ParamScalar], ...]


def _divides(divisor: Monomial, mono: Monomial) -> bool:
    return all(d <= m for d, m in zip(divisor, mono))


class RingPresentation:
    """A validated presentation; the parent object of all ring elements."""

    def __init__(
        self,
        generators: Sequence[Tuple[str, int]],
        params: Sequence[str] = (),
        rules: Sequence[RewriteRule] = (),
        zeros: Sequence[Monomial] = (),
        fiber: Optional[str] = None,
        fiber_supported: Sequence[str] = (),
        integrals: Mapping[Monomial, Fraction] | None = None,
        top_degree: int = 0,
        name: str = "",
    ):
        self.generator_names = tuple(n for n, _ in generators)
        self.generator_degrees = tuple(d for _, d in generators)
        self.params = tuple(params)
        self.rules = tuple(rules)
        self.zeros = tuple(zeros)
        self.top_degree = top_degree
        self.name = name
        self._index = {n: i for i, n in enumerate(self.generator_names)}
        self._param_index = {p: i for i, p in enumerate(self.params)}
        self.fiber_index = self._index[fiber] if fiber is not None else None
        self.fiber_supported = tuple(self._index[n] for n in fiber_supported)
        self.integrals = dict(integrals or {})
        self._nf_cache: dict = {}
        self._one_scalar = ParamScalar.constant(1, self.params)
        self._validate()
        self._warm_normal_forms()
        self._check_confluence()

    # -- structure ---------------------------------------------------------

    def _validate(self):
        if len(set(self.generator_names)) != len(self.generator_names):
            raise PresentationError("duplicate generator names")
        if set(self.generator_names) & set(self.params):
            raise PresentationError("a name cannot be both a generator and a parameter")
        for name, deg in zip(self.generator_names, self.generator_degrees):
            if deg <= 0 or deg % 2:
                raise PresentationError(f"generator {name!r} must have even positive degree, got {deg}")
        if self.top_degree < 0 or self.top_degree % 2:
            raise PresentationError(f"top_degree must be even and nonnegative, got {self.top_degree}")
        for rule in self.rules:
            lhs_deg = self.degree(rule.lhs)
            if not any(rule.lhs):
                raise PresentationError("the empty monomial cannot be a rule left-hand side")
            for mono, _ in rule.rhs:
                if self.degree(mono) != lhs_deg:
                    raise PresentationError(
                        f"degree-inhomogeneous rule: {self.monomial_str(rule.lhs)} (degree {lhs_deg}) "
                        f"rewrites to a term of degree {self.degree(mono)}"
                    )
        for mono in self.zeros:
            if not any(mono):
                raise PresentationError("the empty monomial cannot be declared zero")
        for mono in self.integrals:
            if self.degree(mono) != self.top_degree:
                raise PresentationError(
                    f"integral monomial {self.monomial_str(mono)} has degree {self.degree(mono)}, "
                    f"not the top degree {self.top_degree}"
                )
            nf = self._monomial_nf(mono)
            if list(nf) != [mono] or nf[mono] != 1:
                raise PresentationError(
                    f"integral monomial {self.monomial_str(mono)} is reducible; "
                    "declare integrals on normal-form monomials only"
                )

    @property
    def ngens(self) -> int:
        return len(self.generator_names)

    def degree(self, mono: Monomial) -> int:
        return sum(e * d for e, d in zip(mono, self.generator_degrees))

    def monomial_str(self, mono: Monomial) -> str:
        parts = []
        for name, e in zip(self.generator_names, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def monomials_up_to(self, bound: int) -> Iterator[Monomial]:
        """All exponent vectors of weighted degree at most ``bound``."""

        def rec(index: int, remaining: int, prefix: tuple):
            if index == self.ngens:
                yield prefix
                return
            deg = self.generator_degrees[index]
            for e in range(remaining // deg + 1):
                yield from rec(index + 1, remaining - e * deg, prefix + (e,))

        yield from rec(0, bound, ())

    # -- normalization -----------------------------------------------------

    def _monomial_nf(self, mono: Monomial) -> dict[Monomial, ParamScalar]:
        cached = self._nf_cache.get(mono)
        if cached is _IN_PROGRESS:
            raise PresentationError(
                f"rewrite rules do not terminate: {self.monomial_str(mono)} reduces to itself"
            )
        if cached is not None:
            return cached
        if self.degree(mono) > self.top_degree:
            result: dict[Monomial, ParamScalar] = {}
        elif any(_divides(z, mono) for z in self.zeros):
            result = {}
        else:
            for rule in self.rules:
                if _divides(rule.lhs, mono):
                    quotient = tuple(m - l for m, l in zip(mono, rule.lhs))
                    self._nf_cache[mono] = _IN_PROGRESS
                    try:
                        acc: dict[Monomial, ParamScalar] = {}
                        for rmono, rcoeff in rule.rhs:
                            combined = tuple(q + r for q, r in zip(quotient, rmono))
                            for nmono, ncoeff in self._monomial_nf(combined).items():
                                total = acc.get(nmono, 0) + rcoeff * ncoeff
                                if total:
                                    acc[nmono] = total
                                else:
                                    acc.pop(nmono, None)
                        result = acc
                    except Exception:
                        del self._nf_cache[mono]
                        raise
                    break
            else:
                result = {mono: self._one_scalar}
        self._nf_cache[mono] = result
        return result

    def _normalize(self, raw: Mapping[Monomial, ParamScalar]) -> dict[Monomial, ParamScalar]:
        out: dict[Monomial, ParamScalar] = {}
        for mono, coeff in raw.items():
            if not coeff:
                continue
            for nmono, ncoeff in self._monomial_nf(mono).items():
                total = out.get(nmono, 0) + coeff * ncoeff
                if total:
                    out[nmono] = total
                else:
                    out.pop(nmono, None)
        return out

    def _warm_normal_forms(self):
        """Normalize every monomial up to the top degree once, at load.

        Surfaces non-terminating rule sets immediately and fills the cache
        the later arithmetic runs on.
        """
        for mono in self.monomials_up_to(self.top_degree):
            self._monomial_nf(mono)

    def _check_confluence(self):
        """Join every locally-ambiguous reduction up to the top degree.

        Together with cycle detection in :meth:`_monomial_nf` this makes the
        deterministic normal form independent of rule application order.
        Presets are user-editable files, so this runs on every load.
        """
        for mono in self.monomials_up_to(self.top_degree):
            routes: list[tuple[str, dict[Monomial, ParamScalar]]] = []
            if any(_divides(z, mono) for z in self.zeros):
                routes.append(("zero-monomial", {}))
            for rule in self.rules:
                if _divides(rule.lhs, mono):
                    quotient = tuple(m - l for m, l in zip(mono, rule.lhs))
                    raw: dict[Monomial, ParamScalar] = {}
                    for rmono, rcoeff in rule.rhs:
                        combined = tuple(q + r for q, r in zip(quotient, rmono))
                        raw[combined] = raw.get(combined, 0) + rcoeff
                    routes.append((self.monomial_str(rule.lhs), raw))
            if len(routes) < 2:
                continue
            results = [(label, self._normalize(raw)) for label, raw in routes]
            first_label, first = results[0]
            for label, other in results[1:]:
                if other != first:
                    raise PresentationError(
                        f"rewrite system is not locally confluent on {self.monomial_str(mono)}: "
                        f"reducing via {first_label} and via {label} give different normal forms"
                    )

    # -- element constructors ----------------------------------------------

    def zero(self) -> "GradedElement":
        return GradedElement(self, {})

    def one(self) -> "GradedElement":
        return self.scalar(1)

    def scalar(self, value: Rational | ParamScalar) -> "GradedElement":
        if not isinstance(value, ParamScalar):
            value = ParamScalar.constant(value, self.params)
        elif value.params != self.params:
            value = ParamScalar.constant(value.constant_value(), self.params)
        return GradedElement(self, self._normalize({(0,) * self.ngens: value}))

    def generator(self, name: str) -> "GradedElement":
        if name not in self._index:
            raise UnknownGeneratorError(f"unknown generator {name!r}")
        mono = tuple(1 if i == self._index[name] else 0 for i in range(self.ngens))
        return GradedElement(self, self._normalize({mono: self._one_scalar}))

    def parameter(self, name: str) -> ParamScalar:
        if name not in self._param_index:
            raise UnknownGeneratorError(f"unknown parameter {name!r}")
        return ParamScalar.variable(name, self.params)

    def element_from_expanded(self, terms: Mapping[tuple, Fraction]) -> "GradedElement":
        """Build an element from symbolic (name, exponent) term keys.

        Names are resolved against the presentation: generator names index
        the monomial, parameter names go into the coefficient.  This is the
        single entry point for text-derived data (expressions, rule sides,
        preset classes), so resolution happens here rather than at parse
        time.
        """
        raw: dict[Monomial, ParamScalar] = {}
        zero_param = (0,) * len(self.params)
        for key, coeff in terms.items():
            mono = [0] * self.ngens
            pexp = list(zero_param)
            for name, e in key:
                if name in self._index:
                    mono[self._index[name]] += e
                elif name in self._param_index:
                    pexp[self._param_index[name]] += e
                else:
                    raise UnknownGeneratorError(
                        f"unknown name {name!r}: not a generator or parameter of this presentation"
                    )
            scalar = ParamScalar(self.params, {tuple(pexp): coeff})
            key_mono = tuple(mono)
            existing = raw.get(key_mono)
            raw[key_mono] = scalar if existing is None else existing + scalar
        return GradedElement(self, self._normalize(raw))

    def parse(self, text: str) -> "GradedElement":
        """Parse an expression and reduce it to normal form in this ring."""
        return self.element_from_expanded(expand(parse_expression(text)))

    def __repr__(self):
        label = self.name or ",".join(self.generator_names) or "point"
        return f"RingPresentation({label}, top_degree={self.top_degree})"


class GradedElement:
    """A ring element in normal form: a finite sum coeff * basis monomial."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: RingPresentation, terms: Mapping[Monomial, ParamScalar]):
        self.ring = ring
        self._terms = {m: c for m, c in terms.items() if c}

    # -- views ------------------------------------------------------------

    def items(self):
        return self._terms.items()

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted({self.ring.degree(m) for m in self._terms}))

    def homogeneous_component(self, degree: int) -> "GradedElement":
        return GradedElement(
            self.ring,
            {m: c for m, c in self._terms.items() if self.ring.degree(m) == degree},
        )

    def constant_coefficient(self) -> ParamScalar:
        zero_mono = (0,) * self.ring.ngens
        return self._terms.get(zero_mono, ParamScalar(self.ring.params))

    def coefficient(self, monomial_text: str) -> ParamScalar:
        """Coefficient of a single basis monomial, given as text."""
        terms = expand(parse_expression(monomial_text))
        if len(terms) != 1:
            raise ValueError(f"{monomial_text!r} is not a single monomial")
        (key, coeff), = terms.items()
        if coeff != 1:
            raise ValueError(f"{monomial_text!r} is not a bare monomial")
        mono = [0] * self.ring.ngens
        for name, e in key:
            if name not in self.ring._index:
                raise UnknownGeneratorError(f"unknown generator {name!r}")
            mono[self.ring._index[name]] += e
        return self._terms.get(tuple(mono), ParamScalar(self.ring.params))

    # -- arithmetic ---------------------------------------------------------

    def _check_ring(self, other: "GradedElement"):
        if self.ring is not other.ring:
            raise ValueError("elements belong to different presentations")

    def _coerce_scalar(self, value) -> ParamScalar | None:
        if isinstance(value, ParamScalar):
            if value.params == self.ring.params:
                return value
            if value.is_constant:
                return ParamScalar.constant(value.constant_value(), self.ring.params)
            raise ValueError("scalar over a different parameter list")
        if isinstance(value, (int, Fraction)):
            return ParamScalar.constant(value, self.ring.params)
        return None

    def __add__(self, other):
        if isinstance(other, GradedElement):
            self._check_ring(other)
            terms = dict(self._terms)
            for mono, coeff in other._terms.items():
                total = terms.get(mono, 0) + coeff
                if total:
                    terms[mono] = total
                else:
                    terms.pop(mono, None)
            return GradedElement(self.ring, terms)
        scalar = self._coerce_scalar(other)
        if scalar is None:
            return NotImplemented
        return self + self.ring.scalar(scalar)

    __radd__ = __add__

    def __neg__(self):
        return GradedElement(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, GradedElement):
            return self + (-other)
        scalar = self._coerce_scalar(other)
        if scalar is None:
            return NotImplemented
        return self + self.ring.scalar(-scalar)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GradedElement):
            self._check_ring(other)
            raw: dict[Monomial, ParamScalar] = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    mono = tuple(a + b for a, b in zip(m1, m2))
                    if self.ring.degree(mono) > self.ring.top_degree:
                        continue
                    total = raw.get(mono, 0) + c1 * c2
                    if total:
                        raw[mono] = total
                    else:
                        raw.pop(mono, None)
            return GradedElement(self.ring, self.ring._normalize(raw))
        scalar = self._coerce_scalar(other)
        if scalar is None:
            return NotImplemented
        return GradedElement(self.ring, {m: c * scalar for m, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other: Rational):
        divisor = as_fraction(other)
        if not divisor:
            raise ZeroDivisionError("division of a ring element by zero")
        return GradedElement(self.ring, {m: c / divisor for m, c in self._terms.items()})

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("ring exponents must be nonnegative integers")
        result = self.ring.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, GradedElement):
            return self.ring is other.ring and self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ring), frozenset((m, c) for m, c in self._terms.items())))

    # -- geometry-flavoured operations ---------------------------------------

    def integrate(self) -> ParamScalar:
        """Evaluate against the fundamental class of the base.

        Only the top-degree component contributes.  Fiber-bearing top terms
        are rejected (push forward along the curve first); a top-degree
        normal monomial with no declared intersection number is a loud
        error, never a silent zero.
        """
        ring = self.ring
        if not ring.integrals:
            raise IncompletePresentationError("the presentation declares no integrals")
        total = ParamScalar(ring.params)
        for mono, coeff in self._terms.items():
            if ring.degree(mono) < ring.top_degree:
                continue
            if ring.fiber_index is not None and mono[ring.fiber_index] > 0:
                raise FiberClassError(
                    f"integrate after pushforward: top-degree term {ring.monomial_str(mono)} "
                    "contains the fiber class"
                )
            value = ring.integrals.get(mono)
            if value is None:
                raise IncompletePresentationError(
                    f"incomplete presentation: no declared integral for {ring.monomial_str(mono)}"
                )
            total = total + coeff * value
        return total

    def pushforward_fiber(self) -> "GradedElement":
        """Integrate over the curve fiber: extract the f-linear part, f -> 1.

        Degree drops by two componentwise.  Normal-form terms without the
        fiber class integrate to zero along the fiber and are dropped.
        """
        ring = self.ring
        if ring.fiber_index is None:
            raise PresentationError("the presentation declares no fiber class")
        out: dict[Monomial, ParamScalar] = {}
        for mono, coeff in self._terms.items():
            e = mono[ring.fiber_index]
            if e == 0:
                continue
            if e > 1:
                raise PresentationError(
                    f"term {ring.monomial_str(mono)} carries the fiber class squared; "
                    "declare its square zero in the presentation"
                )
            reduced = tuple(0 if i == ring.fiber_index else x for i, x in enumerate(mono))
            out[reduced] = coeff
        return GradedElement(ring, out)

    def restrict_to_point(self) -> "GradedElement":
        """Restrict to a point of the curve: the ring morphism killing the
        fiber class and every fiber-supported generator."""
        ring = self.ring
        if ring.fiber_index is None and not ring.fiber_supported:
            raise PresentationError(
                "the presentation declares neither a fiber class nor fiber-supported generators"
            )
        killed = set(ring.fiber_supported)
        if ring.fiber_index is not None:
            killed.add(ring.fiber_index)
        out = {
            mono: coeff
            for mono, coeff in self._terms.items()
            if all(mono[i] == 0 for i in killed)
        }
        return GradedElement(ring, out)

    # -- printing -------------------------------------------------------------

    def _sorted_terms(self):
        ring = self.ring
        return sorted(
            self._terms.items(),
            key=lambda item: (-ring.degree(item[0]), tuple(-e for e in item[0])),
        )

    def _term_pieces(self):
        ring = self.ring
        for mono, coeff in self._sorted_terms():
            mono_str = ring.monomial_str(mono) if any(mono) else ""
            single = len(list(coeff.items())) == 1
            if not mono_str:
                if single:
                    (expo, c), = coeff.items()
                    body = str(ParamScalar(ring.params, {expo: abs(c)}))
                    yield c < 0, body
                else:
                    yield False, f"({coeff})"
            elif single:
                (expo, c), = coeff.items()
                head = ParamScalar(ring.params, {expo: abs(c)})
                if head == 1:
                    yield c < 0, mono_str
                else:
                    yield c < 0, f"{head}*{mono_str}"
            else:
                yield False, f"({coeff})*{mono_str}"

    def __str__(self) -> str:
        pieces = list(self._term_pieces())
        if not pieces:
            return "0"
        out = []
        for i, (negative, text) in enumerate(pieces):
            if i == 0:
                out.append(f"-{text}" if negative else text)
            else:
                out.append(f" - {text}" if negative else f" + {text}")
        return "".join(out)

    def __repr__(self):
        return f"GradedElement({str(self)!r})"


# -- loading -----------------------------------------------------------------


def _single_monomial(node, ring_names, line, what) -> Monomial:
    terms = expand(node)
    if len(terms) != 1:
        raise PresentationError(f"{what} on line {line} must be a single monomial")
    (key, coeff), = terms.items()
    if coeff != 1:
        raise PresentationError(f"{what} on line {line} must have coefficient 1")
    index = {n: i for i, n in enumerate(ring_names)}
    mono = [0] * len(ring_names)
    for name, e in key:
        if name not in index:
            raise PresentationError(f"{what} on line {line} uses unknown generator {name!r}")
        mono[index[name]] += e
    return tuple(mono)


def presentation_from_data(data: PresentationFileData, name: str = "") -> RingPresentation:
    """Assemble and validate a presentation from parsed file content."""
    gen_names = [n for n, _ in data.generators]
    params = tuple(data.params)
    index = {n: i for i, n in enumerate(gen_names)}
    param_index = {p: i for i, p in enumerate(params)}

    def rhs_terms(node, line) -> Tuple[Tuple[Monomial, ParamScalar], ...]:
        grouped: dict[Monomial, ParamScalar] = {}
        for key, coeff in expand(node).items():
            mono = [0] * len(gen_names)
            pexp = [0] * len(params)
            for sym, e in key:
                if sym in index:
                    mono[index[sym]] += e
                elif sym in param_index:
                    pexp[param_index[sym]] += e
                else:
                    raise PresentationError(f"rule on line {line} uses unknown name {sym!r}")
            scalar = ParamScalar(params, {tuple(pexp): coeff})
            key_mono = tuple(mono)
            existing = grouped.get(key_mono)
            grouped[key_mono] = scalar if existing is None else existing + scalar
        return tuple((m, c) for m, c in grouped.items() if c)

    rules = []
    for lhs_node, rhs_node, line in data.rules:
        lhs = _single_monomial(lhs_node, gen_names, line, "rule left-hand side")
        rules.append(RewriteRule(lhs, rhs_terms(rhs_node, line)))
    zeros = [_single_monomial(node, gen_names, line, "zero-monomial") for node, line in data.zeros]
    integrals = {}
    for node, value, line in data.integrals:
        mono = _single_monomial(node, gen_names, line, "integral monomial")
        if mono in integrals:
            raise PresentationError(f"duplicate integral for monomial on line {line}")
        integrals[mono] = value
    fiber = data.fiber
    if fiber is not None and fiber not in index:
        raise PresentationError(f"fiber class {fiber!r} is not a generator")
    for n in data.fiber_supported:
        if n not in index:
            raise PresentationError(f"fiber-supported name {n!r} is not a generator")
    return RingPresentation(
        generators=data.generators,
        params=params,
        rules=rules,
        zeros=zeros,
        fiber=fiber,
        fiber_supported=data.fiber_supported,
        integrals=integrals,
        top_degree=data.top_degree,
        name=name or data.preset.get("name", ""),
    )


def load_presentation(text: str, name: str = "") -> RingPresentation:
    """Parse and validate a presentation file; see the README for the grammar."""
    return presentation_from_data(parse_presentation_text(text), name)
