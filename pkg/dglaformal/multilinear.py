# -*- coding: utf-8 -*-
"""
Graded exterior powers with canonical monomial bases, and bases of the
spaces ``Hom^q(L^p, M)`` of multilinear cochains.

The exterior convention is ``x^y = -(-1)^(|x||y|) y^x``: odd generators
may repeat, even generators may not. A monomial is a tuple of generator
indices in nondecreasing order::

    >>> degrees = [1, 1, 2]
    >>> normalize_wedge(degrees, (1, 0))
    (1, (0, 1))
    >>> normalize_wedge(degrees, (2, 2))
    (0, None)
    >>> chi_sign([1, 2, 1], 1)
    -1
"""
from __future__ import absolute_import
import collections
import itertools

try:
    from cytoolz import memoize
except ImportError:
    from toolz import memoize

from dglaformal.linalg import zero_vector
from dglaformal.utils import lc_add, lc_scale


def swap_sign(a, b):
    """ Sign picked up by exchanging adjacent factors of degrees a and b """
    return 1 if (a * b) % 2 else -1


def _degrees(basis):
    if hasattr(basis, 'degrees'):
        return basis.degrees
    return list(basis)


def normalize_wedge(degrees, factors):
    """
    Sort ``factors`` by adjacent transpositions. Returns ``(sign, monomial)``
    or ``(0, None)`` when an even generator repeats.
    """
    degrees = _degrees(degrees)
    items = list(factors)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            sign *= swap_sign(degrees[items[j - 1]], degrees[items[j]])
            items[j - 1], items[j] = items[j], items[j - 1]
            j -= 1
    for a, b in zip(items, items[1:]):
        if a == b and degrees[a] % 2 == 0:
            return 0, None
    return sign, tuple(items)


def monomial_degree(degrees, monomial):
    degrees = _degrees(degrees)
    return sum(degrees[i] for i in monomial)


def chi_sign(factor_degrees, i):
    """
    Sign of moving the ``i``-th factor (1-based) to the end:
    ``x1^...^xp = chi_i x1^..(xi omitted)..^xp^xi``.
    """
    d = factor_degrees[i - 1]
    sign = 1
    for other in factor_degrees[i:]:
        sign *= swap_sign(d, other)
    return sign


def chi_sign_pair(factor_degrees, i, j):
    """
    Sign of moving factors ``i < j`` (1-based) to the end, in that order.
    """
    if not i < j:
        raise ValueError("chi_sign_pair needs i < j")
    sign = chi_sign(factor_degrees, j)
    rest = factor_degrees[:j - 1] + factor_degrees[j:]
    return sign * chi_sign(rest, i)


@memoize
def _all_monomials(degrees, p):
    out = []
    for mono in itertools.combinations_with_replacement(range(len(degrees)), p):
        if any(a == b and degrees[a] % 2 == 0 for a, b in zip(mono, mono[1:])):
            continue
        out.append(mono)
    return tuple(out)


def wedge_basis(basis, p, degree_window=None):
    """
    Canonical monomials with ``p`` factors whose degree lies in the
    inclusive ``degree_window`` (all of them when it is None).

        >>> wedge_basis([1, 2], 2)
        [(0, 0), (0, 1)]
        >>> wedge_basis([1, 2], 0)
        [()]
    """
    if p < 0:
        return []
    degrees = tuple(_degrees(basis))
    monomials = _all_monomials(degrees, p)
    if degree_window is None:
        return list(monomials)
    lo, hi = degree_window
    return [m for m in monomials if lo <= monomial_degree(degrees, m) <= hi]


def expand_wedge(degrees, combinations):
    """
    Multilinear expansion of ``c1 ^ c2 ^ ...`` for linear combinations of
    generators, as ``{monomial: coefficient}``.
    """
    degrees = _degrees(degrees)
    result = {}
    for picks in itertools.product(*[sorted(c.items()) for c in combinations]):
        coef = 1
        for _, c in picks:
            coef *= c
        sign, mono = normalize_wedge(degrees, [i for i, _ in picks])
        if sign:
            result = lc_add(result, {mono: sign * coef})
    return result


HomBasisElement = collections.namedtuple('HomBasisElement', 'monomial target')


def hom_space_basis(source, target, p, q):
    """
    Basis of ``Hom^q(source^p, target)``: one element per pair of a
    monomial of degree n and a target generator of degree n + q.
    """
    source_degrees = _degrees(source)
    target_degrees = _degrees(target)
    by_degree = collections.defaultdict(list)
    for t, deg in enumerate(target_degrees):
        by_degree[deg].append(t)
    elements = []
    for mono in wedge_basis(source_degrees, p):
        n = monomial_degree(source_degrees, mono)
        for t in by_degree.get(n + q, ()):
            elements.append(HomBasisElement(mono, t))
    return elements


def q_bounds(source, target, p):
    """ Range of q with a possibly nonzero ``Hom^q(source^p, target)`` """
    source_degrees = tuple(_degrees(source))
    target_degrees = _degrees(target)
    monomials = _all_monomials(source_degrees, p) if p >= 0 else ()
    if not monomials or not target_degrees:
        return None
    mono_degrees = [monomial_degree(source_degrees, m) for m in monomials]
    return min(target_degrees) - max(mono_degrees), max(target_degrees) - min(mono_degrees)


class CochainSpace(object):
    """
    The based space ``Hom^q(L^p, M)``. Vectors are coordinate tuples on
    ``elements``; a cochain is evaluated on any tuple of generators by
    normalizing the tuple to its canonical monomial.
    """
    def __init__(self, source, target, p, q):
        self.source_degrees = tuple(_degrees(source))
        self.target_degrees = tuple(_degrees(target))
        self.p = p
        self.q = q
        self.elements = hom_space_basis(self.source_degrees, self.target_degrees, p, q) if p >= 0 else []
        self.position = {el: k for k, el in enumerate(self.elements)}
        self.by_monomial = collections.defaultdict(list)
        for k, (mono, t) in enumerate(self.elements):
            self.by_monomial[mono].append((t, k))
        self.monomials = sorted(self.by_monomial)

    @property
    def dim(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return "<CochainSpace p=%d q=%d dim=%d>" % (self.p, self.q, self.dim)

    def zero(self):
        return zero_vector(self.dim)

    def evaluate(self, vector, factors):
        """ Value (combination of target generators) on a tuple of generators """
        sign, mono = normalize_wedge(self.source_degrees, factors)
        if not sign:
            return {}
        out = {}
        for t, k in self.by_monomial.get(mono, ()):
            if vector[k]:
                out[t] = sign * vector[k]
        return out

    def evaluate_combinations(self, vector, combinations):
        out = {}
        for mono, c in expand_wedge(self.source_degrees, combinations).items():
            out = lc_add(out, lc_scale(c, self.evaluate(vector, mono)))
        return out

    def from_function(self, func):
        """ Coordinates of the cochain ``monomial -> func(monomial)`` """
        values = {}
        vector = []
        for mono, t in self.elements:
            if mono not in values:
                values[mono] = func(mono)
            vector.append(values[mono].get(t, 0))
        return tuple(vector)

    def to_dict(self, vector):
        """ ``{monomial: combination}`` view of a vector """
        out = {}
        for (mono, t), c in zip(self.elements, vector):
            if c:
                out.setdefault(mono, {})[t] = c
        return out
