# -*- coding: utf-8 -*-
"""
Maurer-Cartan equations ``dx + [x, x]/2 = 0`` in coordinates.

For ``x = sum x_i v_i`` over the degree 1 generators, each degree 2
generator ``h`` gives one polynomial: the ``h``-coordinate of
``dx + [x, x]/2``. Polynomials are :class:`sympy.Poly` objects over
``QQ`` printed in graded lexicographic order::

    >>> from dglaformal.graded import DGLA
    >>> L = DGLA.from_names([('a', 1), ('h', 2)], bracket={('a', 'a'): {'h': 1}})
    >>> [format_poly(p) for p in mc_system(L).cleared]
    ['x_a^2']
"""
from __future__ import absolute_import
import re
from fractions import Fraction

import sympy
from sympy import QQ, Poly

from dglaformal.exceptions import PreconditionError
from dglaformal.utils import format_rational, lc_add, lc_scale


def variable_name(generator):
    """ ``x_`` followed by the generator name with non-identifier characters replaced """
    return "x_" + re.sub(r'\W', '_', generator)


class MCSystem(object):
    """
    ``raw`` keeps the ``1/2`` of the bracket term, ``cleared`` has every
    polynomial multiplied by the least common denominator of its
    coefficients. Both lists are indexed like ``equations``.
    """
    def __init__(self, variables, equations, raw, cleared, symbols):
        self.variables = variables
        self.equations = equations
        self.raw = raw
        self.cleared = cleared
        self.symbols = symbols

    def __len__(self):
        return len(self.raw)

    def symbol(self, generator):
        return self.symbols[self.variables.index(variable_name(generator))]

    def to_dict(self):
        return {
            'variables': list(self.variables),
            'equations': [
                {'generator': h, 'raw': format_poly(r), 'cleared': format_poly(c)}
                for h, r, c in zip(self.equations, self.raw, self.cleared)
            ],
        }


def mc_system(L):
    """ The Maurer-Cartan polynomial system of ``L`` """
    ones = L.basis.indices_of_degree(1)
    twos = L.basis.indices_of_degree(2)
    names = [variable_name(L.basis.name(i)) for i in ones]
    if not ones:
        return MCSystem([], [], [], [], [])
    symbols = sympy.symbols(names)
    if len(ones) == 1 and not isinstance(symbols, (list, tuple)):
        symbols = [symbols]
    symbols = list(symbols)
    coordinate = dict(zip(ones, symbols))
    exprs = {h: sympy.Integer(0) for h in twos}
    for i in ones:
        for h, c in L.d_basis(i).items():
            if h in exprs:
                exprs[h] += sympy.Rational(c.numerator, c.denominator) * coordinate[i]
    half = sympy.Rational(1, 2)
    for i in ones:
        for j in ones:
            for h, c in L.br_basis(i, j).items():
                if h in exprs:
                    exprs[h] += half * sympy.Rational(c.numerator, c.denominator) * coordinate[i] * coordinate[j]
    raw, cleared = [], []
    for h in twos:
        poly = Poly(exprs[h], *symbols, domain=QQ)
        raw.append(poly)
        cleared.append(clear_denominators(poly))
    return MCSystem(names, [L.basis.name(h) for h in twos], raw, cleared, symbols)


def clear_denominators(poly):
    if poly.is_zero:
        return poly
    _, cleared = poly.clear_denoms()
    return cleared


def substitute(poly, var, replacement):
    """
    Replace ``var`` by the polynomial ``replacement`` in ``poly``.
    ``replacement`` must not contain ``var``.
    """
    if isinstance(var, str):
        matches = [g for g in poly.gens if str(g) == var]
        if not matches:
            raise PreconditionError("%s is not a variable of the polynomial" % var)
        var = matches[0]
    replacement_expr = replacement.as_expr() if isinstance(replacement, Poly) else sympy.sympify(replacement)
    if var in replacement_expr.free_symbols:
        raise PreconditionError("circular substitution of %s" % var)
    return Poly(poly.as_expr().subs(var, replacement_expr), *poly.gens, domain=QQ)


def proportional(p, q):
    """ True when ``p = c q`` for a nonzero rational c """
    if p.is_zero or q.is_zero:
        return p.is_zero and q.is_zero
    return (p * q.LC(order='grlex')) == (q * p.LC(order='grlex'))


def format_poly(poly):
    """ Canonical ASCII form: grlex-sorted monomials with explicit ``*`` and ``^`` """
    if poly.is_zero:
        return '0'
    parts = []
    for exponents, coef in poly.terms(order='grlex'):
        coef = Fraction(int(coef.numerator), int(coef.denominator))
        factors = []
        for gen, e in zip(poly.gens, exponents):
            if e == 1:
                factors.append(str(gen))
            elif e > 1:
                factors.append("%s^%d" % (gen, e))
        monomial = '*'.join(factors)
        mag = abs(coef)
        if not monomial:
            term = format_rational(mag)
        elif mag == 1:
            term = monomial
        else:
            term = "%s*%s" % (format_rational(mag), monomial)
        parts.append(('-' if coef < 0 else '+', term))
    text = ('-' if parts[0][0] == '-' else '') + parts[0][1]
    for sign, term in parts[1:]:
        text += " %s %s" % (sign, term)
    return text


def mc_residual(L, point):
    """
    ``dx + [x, x]/2`` evaluated in ``L`` at ``x = sum point[i] v_i``
    (``point`` maps degree 1 generator indices to rationals).
    """
    x = {i: Fraction(c) for i, c in point.items() if c}
    return lc_add(L.d(x), lc_scale(Fraction(1, 2), L.br(x, x)))


def evaluate_system(system, values):
    """ Values of the raw polynomials at ``{variable name: rational}`` """
    out = []
    for poly in system.raw:
        substitution = {}
        for g in poly.gens:
            v = Fraction(values.get(str(g), 0))
            substitution[g] = sympy.Rational(v.numerator, v.denominator)
        out.append(Fraction(str(poly.as_expr().subs(substitution))))
    return out
