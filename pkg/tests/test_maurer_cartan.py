# -*- coding: utf-8 -*-
from __future__ import absolute_import
from fractions import Fraction

import pytest
import sympy

from dglaformal.exceptions import PreconditionError
from dglaformal.graded import zero_algebra
from dglaformal.maurer_cartan import (
    evaluate_system, format_poly, mc_residual, mc_system, proportional,
    substitute, variable_name,
)


def test_variable_name():
    assert variable_name('e1_e2') == 'x_e1_e2'
    assert variable_name("a'") == 'x_a_'


def test_system_of_M(M):
    system = mc_system(M)
    assert system.variables == ['x_e1', 'x_e2', 'x_e3']
    assert system.equations == ['h1', 'h2']
    assert len(system) == 2
    assert [format_poly(p) for p in system.cleared] == [
        '-x_e2^2 + 2*x_e3',
        '-x_e1^2 + x_e2^2 + 2*x_e2*x_e3',
    ]
    assert format_poly(system.raw[0]) == '-1/2*x_e2^2 + x_e3'


def test_raw_and_cleared_are_proportional(M):
    system = mc_system(M)
    for raw, cleared in zip(system.raw, system.cleared):
        assert proportional(raw, cleared)
    assert not proportional(system.raw[0], system.raw[1])


def test_system_of_L(L):
    system = mc_system(L)
    assert [format_poly(p) for p in system.raw] == [
        '-1/2*x_e1_e2^2 + x_e3',
        'x_e1_e2*x_e3',
    ]


def test_substitution_solves_first_equation(M):
    system = mc_system(M)
    x_e2 = system.symbol('e2')
    solved = substitute(system.raw[0], 'x_e3', sympy.Rational(1, 2) * x_e2 ** 2)
    assert solved.is_zero
    with pytest.raises(PreconditionError):
        substitute(system.raw[0], 'x_e3', system.symbol('e3') + 1)
    with pytest.raises(PreconditionError):
        substitute(system.raw[0], 'y', 0)


def test_solution_point(M):
    # x = -e2 + e3/2
    point = {M.basis.index('e2'): -1, M.basis.index('e3'): Fraction(1, 2)}
    assert mc_residual(M, point) == {}
    assert evaluate_system(mc_system(M), {'x_e2': -1, 'x_e3': '1/2'}) == [0, 0]


def test_residual_away_from_solutions(M):
    residual = mc_residual(M, {M.basis.index('e1'): 1})
    assert residual == {M.basis.index('h2'): Fraction(-1, 2)}
    assert evaluate_system(mc_system(M), {'x_e1': 1}) == [0, Fraction(-1, 2)]


def test_empty_system():
    system = mc_system(zero_algebra())
    assert len(system) == 0
    assert system.to_dict() == {'variables': [], 'equations': []}


def test_substitution_in_second_equation(M):
    system = mc_system(M)
    x1, x2 = system.symbol('e1'), system.symbol('e2')
    reduced = substitute(system.cleared[1], 'x_e3', x2 ** 2 / 2)
    expected = sympy.Poly(x1 ** 2 - x2 ** 2 - x2 ** 3, *reduced.gens, domain=sympy.QQ)
    assert proportional(reduced, expected)


def test_substitution_on_L_leaves_a_cube(L):
    system = mc_system(L)
    y = system.symbol('e1_e2')
    reduced = substitute(system.raw[1], 'x_e3', y ** 2 / 2)
    assert not reduced.is_zero
    assert proportional(reduced, sympy.Poly(y ** 3, *reduced.gens, domain=sympy.QQ))
