# -*- coding: utf-8 -*-
"""
Truncated universal enveloping algebras ``F_N U(L)`` and symmetric
algebras ``S^{<=N}(L)``.

Elements of both are sparse combinations ``{word: Fraction}`` of tuples of
generator indices. A PBW word is weakly increasing with no repeated odd
generator; the same words are a basis of ``S(L)`` under the graded
symmetric convention ``x.y = (-1)^(|x||y|) y.x``.

Products in U are reduced with the relations
``xy = (-1)^(|x||y|) yx + [x, y]`` (for an out of order pair) and
``xx = [x, x]/2`` (for x odd). Words are never longer than ``N``::

    >>> from dglaformal.graded import DGLA
    >>> L = DGLA.from_names([('a', 1), ('b', 1), ('h', 2)],
    ...                     bracket={('a', 'b'): {'h': 1}})
    >>> U = TruncatedUEA(L, 2)
    >>> U.normal_form((1, 0)) == {(0, 1): -1, (2,): 1}
    True
"""
from __future__ import absolute_import
import itertools
import logging
import math
from fractions import Fraction

try:
    from cytoolz import groupby
except ImportError:
    from toolz import groupby

from dglaformal.exceptions import PreconditionError, TruncationError
from dglaformal.graded import cohomology, koszul
from dglaformal.linalg import ExactMatrix, Subspace
from dglaformal.utils import lc_add, lc_scale, lc_to_vector

logger = logging.getLogger(__name__)


def pbw_words(degrees, N):
    """ Weakly increasing words of length <= N, odd letters not repeated """
    out = []
    for n in range(N + 1):
        for word in itertools.combinations_with_replacement(range(len(degrees)), n):
            if any(a == b and degrees[a] % 2 for a, b in zip(word, word[1:])):
                continue
            out.append(word)
    return out


def is_pbw(degrees, word):
    for a, b in zip(word, word[1:]):
        if a > b or (a == b and degrees[a] % 2):
            return False
    return True


def normalize_symmetric(degrees, factors):
    """ ``(sign, sorted word)`` in S(L), or ``(0, None)`` for a repeated odd factor """
    items = list(factors)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            sign *= koszul(degrees[items[j - 1]], degrees[items[j]])
            items[j - 1], items[j] = items[j], items[j - 1]
            j -= 1
    for a, b in zip(items, items[1:]):
        if a == b and degrees[a] % 2:
            return 0, None
    return sign, tuple(items)


def permutation_sign(degrees, word, perm):
    """ Koszul sign of ``word[perm[0]] .. word[perm[n-1]]`` relative to ``word`` """
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign *= koszul(degrees[word[perm[i]]], degrees[word[perm[j]]])
    return sign


class TruncatedUEA(object):
    """
    ``F_N U(L)``: the span of PBW words of length at most N, with the
    rewriting product (partial: defined when the lengths add up to <= N)
    and the derivation extension of d.
    """
    def __init__(self, algebra, N):
        if N < 0:
            raise PreconditionError("truncation must be nonnegative")
        self.algebra = algebra
        self.N = N
        self.degrees = algebra.basis.degrees
        self.basis = pbw_words(self.degrees, N)
        self.position = {w: k for k, w in enumerate(self.basis)}
        self._by_degree = groupby(self.word_degree, self.basis)
        self._cache = {}

    def __repr__(self):
        return "<TruncatedUEA F_%d U(%s) dim=%d>" % (self.N, self.algebra.name or '?', len(self.basis))

    @property
    def dim(self):
        return len(self.basis)

    def word_degree(self, word):
        return sum(self.degrees[i] for i in word)

    def words_of_degree(self, k):
        return list(self._by_degree.get(k, []))

    def dims(self):
        return {k: len(words) for k, words in sorted(self._by_degree.items())}

    def _check_length(self, word):
        if len(word) > self.N:
            raise TruncationError("word of length %d exceeds the truncation N=%d" % (len(word), self.N))

    def _rewrite_once(self, word, position):
        """ One rewriting step at the pair ``(position, position + 1)`` """
        a, b = word[position], word[position + 1]
        head, tail = word[:position], word[position + 2:]
        out = {}
        if a == b:
            for k, c in self.algebra.br_basis(a, a).items():
                out = lc_add(out, {head + (k,) + tail: Fraction(c, 2)})
            return out
        out[head + (b, a) + tail] = Fraction(koszul(self.degrees[a], self.degrees[b]))
        for k, c in self.algebra.br_basis(a, b).items():
            out = lc_add(out, {head + (k,) + tail: c})
        return out

    def _unordered(self, word):
        return [i for i, (a, b) in enumerate(zip(word, word[1:]))
                if a > b or (a == b and self.degrees[a] % 2)]

    def normal_form(self, word, chooser=None):
        """
        PBW normal form of a tensor word. ``chooser`` picks which out of
        order pair to rewrite (leftmost by default); the result does not
        depend on it.
        """
        word = tuple(word)
        self._check_length(word)
        if chooser is None and word in self._cache:
            return dict(self._cache[word])
        result = {}
        pending = {word: Fraction(1)}
        while pending:
            current, coef = pending.popitem()
            bad = self._unordered(current)
            if not bad:
                result = lc_add(result, {current: coef})
                continue
            position = bad[0] if chooser is None else chooser(bad)
            for w, c in self._rewrite_once(current, position).items():
                value = pending.get(w, 0) + coef * c
                if value:
                    pending[w] = value
                else:
                    pending.pop(w, None)
        if chooser is None:
            self._cache[word] = dict(result)
        return result

    def reduce(self, element, chooser=None):
        out = {}
        for word, c in element.items():
            out = lc_add(out, lc_scale(c, self.normal_form(word, chooser)))
        return out

    def multiply(self, u, v):
        terms = {}
        for a, x in u.items():
            for b, y in v.items():
                terms = lc_add(terms, {a + b: x * y})
        for word in terms:
            self._check_length(word)
        return self.reduce(terms)

    def inclusion(self, x):
        """ i(x) for a generator index or a combination of generators """
        if isinstance(x, int):
            return {(x,): Fraction(1)}
        return {(i,): Fraction(c) for i, c in x.items() if c}

    def element_degree(self, element):
        degrees = set(self.word_degree(w) for w in element)
        return degrees.pop() if len(degrees) == 1 else None

    def commutator(self, u, v):
        """ ``uv - (-1)^(|u||v|) vu`` on homogeneous terms """
        out = {}
        for a, x in u.items():
            for b, y in v.items():
                sign = koszul(self.word_degree(a), self.word_degree(b))
                out = lc_add(out, self.multiply({a: x}, {b: y}),
                             lc_scale(-sign, self.multiply({b: y}, {a: x})))
        return out

    def d(self, element):
        """ Derivation extension of the differential of L """
        L = self.algebra
        out = {}
        for word, c in element.items():
            prefix = 0
            for i, x in enumerate(word):
                sign = -1 if prefix % 2 else 1
                for k, dc in L.d_basis(x).items():
                    out = lc_add(out, {word[:i] + (k,) + word[i + 1:]: sign * c * dc})
                prefix += self.degrees[x]
        return self.reduce(out)

    def to_vector(self, element):
        return lc_to_vector(element, self.basis)

    def d_block(self, k):
        """ Matrix of d from the degree k part to the degree k + 1 part """
        src, dst = self.words_of_degree(k), self.words_of_degree(k + 1)
        pos = {w: r for r, w in enumerate(dst)}
        entries = {}
        for col, word in enumerate(src):
            for w, c in self.d({word: 1}).items():
                entries[(pos[w], col)] = c
        return ExactMatrix.from_entries(entries, (len(dst), len(src)))

    def cohomology_dims(self):
        """ ``{k: dim H^k(F_N U)}`` for the nonzero groups """
        out = {}
        for k, words in sorted(self._by_degree.items()):
            rank_out = self.d_block(k).rank()
            rank_in = self.d_block(k - 1).rank()
            dim = len(words) - rank_out - rank_in
            if dim:
                out[k] = dim
        return out


class SymmetricAlgebra(object):
    """ ``S^{<=N}(L)`` with the derivation extension of d """
    def __init__(self, algebra, N):
        self.algebra = algebra
        self.N = N
        self.degrees = algebra.basis.degrees
        self.basis = pbw_words(self.degrees, N)

    def normalize(self, element):
        out = {}
        for factors, c in element.items():
            sign, word = normalize_symmetric(self.degrees, factors)
            if sign:
                out = lc_add(out, {word: sign * c})
        return out

    def d(self, element):
        out = {}
        for word, c in element.items():
            prefix = 0
            for i, x in enumerate(word):
                sign = -1 if prefix % 2 else 1
                for k, dc in self.algebra.d_basis(x).items():
                    out = lc_add(out, {word[:i] + (k,) + word[i + 1:]: sign * c * dc})
                prefix += self.degrees[x]
        return self.normalize(out)

    def dims(self):
        counts = {}
        for word in self.basis:
            k = sum(self.degrees[i] for i in word)
            counts[k] = counts.get(k, 0) + 1
        return dict(sorted(counts.items()))


def symmetric_dims(degrees, N):
    """ ``{k: dim S^{<=N}(V)^k}`` for a graded basis with the given degrees """
    counts = {}
    for word in pbw_words(degrees, N):
        k = sum(degrees[i] for i in word)
        counts[k] = counts.get(k, 0) + 1
    return dict(sorted(counts.items()))


def pbw_normal_form(U, word, chooser=None):
    return U.normal_form(word, chooser)


def pbw_map(U, z):
    """
    Symmetrization ``e(x1...xn) = 1/n! sum_s eps(s) x_s(1) ... x_s(n)``
    of an element of S(L) into ``U``.
    """
    out = {}
    for word, c in z.items():
        n = len(word)
        if n > U.N:
            raise TruncationError("symmetric word of length %d exceeds N=%d" % (n, U.N))
        scale = Fraction(c, math.factorial(n))
        terms = {}
        for perm in itertools.permutations(range(n)):
            sign = permutation_sign(U.degrees, word, perm)
            terms = lc_add(terms, {tuple(word[k] for k in perm): Fraction(sign)})
        out = lc_add(out, lc_scale(scale, U.reduce(terms)))
    return out


def r_derivation(algebra, x, z):
    """
    The derivation of S(L) with ``r_x(y) = [y, x]`` for a generator index
    ``x``: ``r_x(y1..yn) = sum_i (-1)^(|x|(|y_{i+1}|+..+|y_n|)) y1..[yi, x]..yn``.
    """
    degrees = algebra.basis.degrees
    dx = degrees[x]
    out = {}
    for word, c in z.items():
        for i, y in enumerate(word):
            after = sum(degrees[w] for w in word[i + 1:])
            sign = koszul(dx, after)
            for k, bc in algebra.br_basis(y, x).items():
                factors = word[:i] + (k,) + word[i + 1:]
                s, canon = normalize_symmetric(degrees, factors)
                if s:
                    out = lc_add(out, {canon: sign * s * c * bc})
    return out


def pbw_matrix(U):
    """ Matrix of ``e`` on S^{<=N}(L) in the PBW bases (square) """
    columns = [U.to_vector(pbw_map(U, {w: 1})) for w in U.basis]
    return ExactMatrix.from_columns(columns, U.dim)


class Complement(object):
    """ ``H = e(sum_{n != 1} S^n(L))`` inside ``F_N U`` """
    def __init__(self, U, words, space, direct_sum, submodule_violations):
        self.U = U
        self.words = words
        self.space = space
        self.direct_sum = direct_sum
        self.submodule_violations = submodule_violations

    @property
    def dim(self):
        return self.space.dim

    @property
    def ok(self):
        return self.direct_sum and not self.submodule_violations


def complement_H(U):
    """
    Basis of the complement H of ``i(L)`` and the checks
    ``F_N U = i(L) + H`` (by rank) and ``[H, i(L)] in H`` within the truncation.
    """
    words = [w for w in U.basis if len(w) != 1]
    vectors = [U.to_vector(pbw_map(U, {w: 1})) for w in words]
    space = Subspace.span(U.dim, vectors)
    included = [U.to_vector(U.inclusion(x)) for x in range(U.algebra.dim)]
    direct_sum = (space.dim == len(words)
                  and Subspace.span(U.dim, vectors + included).dim == U.dim
                  and space.dim + U.algebra.dim == U.dim)
    violations = []
    for w in words:
        if len(w) > U.N - 1:
            continue
        h = pbw_map(U, {w: 1})
        for x in range(U.algebra.dim):
            image = U.commutator(h, U.inclusion(x))
            if image and not space.contains(U.to_vector(image)):
                violations.append((w, x))
    logger.debug("complement of %r: dim %d, %d violations", U, space.dim, len(violations))
    return Complement(U, words, space, direct_sum, violations)


def derivation_identity_failures(U):
    """
    Pairs ``(z, x)`` with ``e(r_x(z)) != [e(z), i(x)]`` for PBW words z of
    length <= N - 1 and generators x.
    """
    failures = []
    for z in U.basis:
        if len(z) > U.N - 1:
            continue
        ez = pbw_map(U, {z: 1})
        for x in range(U.algebra.dim):
            lhs = pbw_map(U, r_derivation(U.algebra, x, {z: 1}))
            rhs = U.commutator(ez, U.inclusion(x))
            if lhs != rhs:
                failures.append((z, x))
    return failures


def pbw_report(L, N):
    """ Dimension tables and identity checks for ``F_N U(L)`` """
    U = TruncatedUEA(L, N)
    S = SymmetricAlgebra(L, N)
    e = pbw_matrix(U)
    commutes = all(
        U.d(pbw_map(U, {w: 1})) == pbw_map(U, S.d({w: 1})) for w in U.basis
    )
    complement = complement_H(U) if N >= 2 else None
    H = cohomology(L)
    return {
        'truncation': N,
        'dims_U': U.dims(),
        'dims_S': S.dims(),
        'e_bijective': e.rank() == U.dim,
        'e_commutes_with_d': commutes,
        'derivation_identity_failures': len(derivation_identity_failures(U)),
        'complement_dim': complement.dim if complement else None,
        'complement_ok': complement.ok if complement else None,
        'cohomology_dims_U': U.cohomology_dims(),
        'cohomology_dims_S_of_H': symmetric_dims(H.basis().degrees, N),
    }
