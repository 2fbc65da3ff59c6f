# -*- coding: utf-8 -*-
"""
Helpers for sparse linear combinations ``{index: Fraction}`` and for
printing rationals.
"""
from __future__ import absolute_import
import hashlib
from fractions import Fraction


def lc_add(*combinations):
    """
    Sum of sparse linear combinations; zero coefficients are dropped:

    >>> lc_add({0: Fraction(1)}, {0: Fraction(-1), 2: Fraction(3)}) == {2: 3}
    True
    """
    out = {}
    for comb in combinations:
        for key, coef in comb.items():
            value = out.get(key, 0) + coef
            if value:
                out[key] = value
            else:
                out.pop(key, None)
    return out


def lc_scale(c, comb):
    if not c:
        return {}
    return {key: c * coef for key, coef in comb.items()}


def lc_to_vector(comb, indices):
    """ Dense coordinates of ``comb`` on the given list of indices """
    return tuple(Fraction(comb.get(i, 0)) for i in indices)


def vector_to_lc(vector, indices):
    return {i: Fraction(c) for i, c in zip(indices, vector) if c}


def format_rational(value):
    """
    Exact "num/den" text of a rational (integers have no denominator):

    >>> format_rational(Fraction(-3, 6)), format_rational(Fraction(4))
    ('-1/2', '4')
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


def rational_pair(value):
    """ JSON-safe rendering "num/den" used in reports """
    value = Fraction(value)
    return "%d/%d" % (value.numerator, value.denominator)


def format_lincomb(comb, names):
    """
    Human-readable linear combination over named generators:

    >>> format_lincomb({1: Fraction(1), 0: Fraction(-1, 2)}, ['a', 'b'])
    '-1/2*a + b'
    >>> format_lincomb({}, ['a'])
    '0'
    """
    parts = []
    for key in sorted(comb):
        coef = Fraction(comb[key])
        if not coef:
            continue
        sign = '-' if coef < 0 else '+'
        mag = abs(coef)
        term = names[key] if mag == 1 else "%s*%s" % (format_rational(mag), names[key])
        parts.append((sign, term))
    if not parts:
        return '0'
    text = ('-' if parts[0][0] == '-' else '') + parts[0][1]
    for sign, term in parts[1:]:
        text += " %s %s" % (sign, term)
    return text


def sparse_vector(vector):
    """ ``[[index, "num/den"], ...]`` for the nonzero coordinates """
    return [[i, rational_pair(c)] for i, c in enumerate(vector) if c]


def parse_sparse_vector(items, dim):
    """
    Inverse of :func:`sparse_vector`:

    >>> parse_sparse_vector([[1, "-1/2"]], 3) == (0, Fraction(-1, 2), 0)
    True
    """
    vector = [Fraction(0)] * dim
    for i, value in items:
        vector[int(i)] = Fraction(value)
    return tuple(vector)


def sha256_text(text):
    if not isinstance(text, bytes):
        text = text.encode('utf-8')
    return hashlib.sha256(text).hexdigest()
