"""Shared fixtures-by-function, strategies, and independent oracles."""

from fractions import Fraction
from functools import lru_cache
from itertools import product

from hypothesis import strategies as st

from maxsub import load_preset
from maxsub.gradedring import GradedElement
from maxsub.scalars import ParamScalar


@lru_cache(maxsize=None)
def g2_preset():
    return load_preset("g2-rank2")


@lru_cache(maxsize=None)
def jacobian_preset(genus=2):
    return load_preset("jacobian", genus=genus)


def g2_ring():
    return g2_preset().ring


# -- hypothesis strategies ---------------------------------------------------


def fractions_st():
    return st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def monomials_st(draw, ring, max_degree=10, allowed=None):
    """Exponent tuples of weighted degree <= max_degree; ``allowed`` limits
    which generator names may carry a nonzero exponent.  Exponents are drawn
    against the remaining degree budget, so no rejection sampling."""
    indices = set(range(ring.ngens)) if allowed is None else {
        ring.generator_names.index(name) for name in allowed
    }
    remaining = max_degree
    mono = []
    for i, deg in enumerate(ring.generator_degrees):
        if i not in indices or remaining < deg:
            mono.append(0)
            continue
        e = draw(st.integers(0, remaining // deg))
        mono.append(e)
        remaining -= e * deg
    return tuple(mono)


def scalars_st(ring, max_param_degree=2):
    constants = fractions_st().map(lambda q: ParamScalar.constant(q, ring.params))
    if len(ring.params) != 1:
        return constants
    polys = st.lists(
        st.tuples(st.integers(0, max_param_degree), fractions_st()),
        min_size=1,
        max_size=2,
    ).map(lambda items: ParamScalar(ring.params, {(e,): c for e, c in items}))
    return st.one_of(constants, polys)


def raw_terms_st(ring, max_degree=10, max_terms=3, allowed=None):
    """Unreduced term dictionaries, for exercising normalization itself."""
    return st.lists(
        st.tuples(monomials_st(ring, max_degree, allowed), scalars_st(ring)),
        min_size=0,
        max_size=max_terms,
    ).map(lambda pairs: _merge_pairs(ring, pairs))


def _merge_pairs(ring, pairs):
    raw = {}
    for mono, coeff in pairs:
        raw[mono] = raw.get(mono, ParamScalar(ring.params)) + coeff
    return raw


def elements_st(ring, max_degree=10, max_terms=3, allowed=None):
    return raw_terms_st(ring, max_degree, max_terms, allowed).map(
        lambda raw: GradedElement(ring, ring._normalize(raw))
    )


def base_elements_st(ring, max_degree=10, max_terms=3):
    """Elements supported away from the fiber class and the fiber-supported
    generators, so that restriction fixes them and integration is total."""
    killed = set(ring.fiber_supported)
    if ring.fiber_index is not None:
        killed.add(ring.fiber_index)
    allowed = [n for i, n in enumerate(ring.generator_names) if i not in killed]
    return elements_st(ring, max_degree, max_terms, allowed=allowed)


# -- independent oracles -------------------------------------------------------


def permutation_sign(seq):
    inversions = sum(
        1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j]
    )
    return -1 if inversions % 2 else 1


def theta_power_integral(g):
    """Brute-force the top self-intersection of the theta class.

    Model the degree-1 cohomology of the torus as an exterior algebra on
    2g anticommuting symbols paired as (x_i, y_i), with theta = sum x_i y_i
    and the volume form x_1 y_1 x_2 y_2 ... integrating to 1.  Expand
    theta^g term by term with explicit permutation signs.
    """
    total = 0
    for choice in product(range(g), repeat=g):
        seq = []
        for i in choice:
            seq.extend((2 * i, 2 * i + 1))
        if len(set(seq)) != len(seq):
            continue
        total += permutation_sign(seq)
    return total


def reduce_in_random_order(ring, raw_terms, rng):
    """Reference normalizer: apply truncation, zero-kills and rewrite rules
    one randomly-chosen step at a time until nothing applies."""
    terms = {m: c for m, c in raw_terms.items() if c}
    for _ in range(100_000):
        actions = []
        for mono in terms:
            if ring.degree(mono) > ring.top_degree:
                actions.append((mono, "truncate", None))
            if any(all(z <= m for z, m in zip(zero, mono)) for zero in ring.zeros):
                actions.append((mono, "zero", None))
            for i, rule in enumerate(ring.rules):
                if all(l <= m for l, m in zip(rule.lhs, mono)):
                    actions.append((mono, "rule", i))
        if not actions:
            return terms
        mono, kind, index = actions[rng.randrange(len(actions))]
        coeff = terms.pop(mono)
        if kind in ("truncate", "zero"):
            continue
        rule = ring.rules[index]
        quotient = tuple(m - l for m, l in zip(mono, rule.lhs))
        for rmono, rcoeff in rule.rhs:
            combined = tuple(q + r for q, r in zip(quotient, rmono))
            total = terms.get(combined, ParamScalar(ring.params)) + coeff * rcoeff
            if total:
                terms[combined] = total
            else:
                terms.pop(combined, None)
    raise AssertionError("random-order reduction did not terminate")


def exponential_element(x, top_terms=None):
    """Truncated exponential sum x^k / k!, reduced in the ring."""
    from math import factorial

    ring = x.ring
    count = ring.top_degree // 2 if top_terms is None else top_terms
    total = ring.one()
    power = ring.one()
    for k in range(1, count + 1):
        power = power * x
        total = total + power / factorial(k)
    return total
