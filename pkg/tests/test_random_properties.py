# -*- coding: utf-8 -*-
"""
Properties checked on small seeded algebras: odd generators in degree 1,
even ones in degree 2 and at most one generator in degree 3, at most six
in all. The part in degrees 1 and 2 is drawn freely; the entries reaching
degree 3 (``d`` on degree 2 and brackets of degree 1 with degree 2) are a
random point of the space of entries satisfying d^2 = 0, Leibniz and
Jacobi, which is linear in them.
"""
from __future__ import absolute_import
import random
from fractions import Fraction

import pytest

from dglaformal.ce_complex import BicomplexWindow
from dglaformal.dsl import Document, parse, print_document
from dglaformal.enveloping import TruncatedUEA, pbw_matrix
from dglaformal.graded import (
    DGLA, cohomology, direct_sum, identity_morphism, koszul, sum_inclusion,
    sum_projection, validate_dgla,
)
from dglaformal.linalg import ExactMatrix, kernel_basis
from dglaformal.maurer_cartan import evaluate_system, mc_residual, mc_system
from dglaformal.spectral import (
    SpectralSequence, euler_functoriality, euler_obstruction, kunneth_table,
)
from dglaformal.utils import lc_add, lc_scale

COEFFICIENTS = [-1, 1, 2, Fraction(1, 2), Fraction(-2, 3)]
SEEDS = range(50)


def axiom_defects(L):
    """ Nonzero components of d^2, Leibniz and Jacobi, keyed by rule and witness """
    out = {}

    def record(key, comb):
        for k, c in comb.items():
            out[key + (k,)] = c

    degree = L.basis.degree
    for x in range(L.dim):
        X = {x: 1}
        record(('d-squared', x), L.d(L.d(X)))
        for y in range(L.dim):
            Y = {y: 1}
            rhs = lc_add(L.br(L.d(X), Y), lc_scale(koszul(degree(x), 1), L.br(X, L.d(Y))))
            record(('leibniz', x, y), lc_add(L.d(L.br(X, Y)), lc_scale(-1, rhs)))
            for z in range(L.dim):
                Z = {z: 1}
                rhs = lc_add(L.br(L.br(X, Y), Z),
                             lc_scale(koszul(degree(x), degree(y)), L.br(Y, L.br(X, Z))))
                record(('jacobi', x, y, z), lc_add(L.br(X, L.br(Y, Z)), lc_scale(-1, rhs)))
    return out


class RandomTables(object):
    """ Structure constants of one seed, with the degree 3 entries left open """
    def __init__(self, seed):
        rng = random.Random(seed)
        self.name = 'R%d' % seed
        odd = ['x%d' % n for n in range(1, rng.randint(1, 3) + 1)]
        even = ['h%d' % n for n in range(1, rng.randint(1, 2) + 1)]
        top = ['z%d' % n for n in range(1, rng.randint(0, 1) + 1)]

        def combination():
            return {h: rng.choice(COEFFICIENTS) for h in even if rng.random() < 0.5}

        self.differential = {}
        for x in odd:
            comb = combination()
            if comb:
                self.differential[x] = comb
        self.bracket = {}
        for a, x in enumerate(odd):
            for y in odd[a:]:
                comb = combination()
                if comb:
                    self.bracket[(x, y)] = comb
        self.generators = [(x, 1) for x in odd] + [(h, 2) for h in even] + [(z, 3) for z in top]
        self.open_entries = ([('d', h, z) for h in even for z in top] +
                             [('br', (x, h), z) for x in odd for h in even for z in top])

    def algebra(self, weights=()):
        differential = {k: dict(v) for k, v in self.differential.items()}
        bracket = {k: dict(v) for k, v in self.bracket.items()}
        for (kind, key, z), c in zip(self.open_entries, weights):
            if c:
                table = differential if kind == 'd' else bracket
                table.setdefault(key, {})[z] = c
        return DGLA.from_names(self.generators, differential, bracket, name=self.name)

    def unit_algebras(self):
        n = len(self.open_entries)
        return [self.algebra([1 if m == k else 0 for m in range(n)]) for k in range(n)]


def random_algebra(seed):
    tables = RandomTables(seed)
    columns = [axiom_defects(A) for A in tables.unit_algebras()]
    keys = sorted(set().union(*columns))
    system = ExactMatrix.from_columns([[col.get(key, 0) for key in keys] for col in columns],
                                      len(keys))
    rng = random.Random(1000 + seed)
    weights = [Fraction(0)] * len(tables.open_entries)
    for v in kernel_basis(system).basis:
        c = rng.choice(COEFFICIENTS)
        weights = [w + c * a for w, a in zip(weights, v)]
    return tables.algebra(weights)


@pytest.mark.parametrize('seed', SEEDS)
def test_axioms_hold(seed):
    L = random_algebra(seed)
    assert L.dim <= 6
    assert set(L.basis.degrees) <= {1, 2, 3}
    report = validate_dgla(L)
    assert report.ok, report.violations


@pytest.mark.parametrize('seed', SEEDS)
def test_validation_flags_broken_degree_three_entries(seed):
    for A in RandomTables(seed).unit_algebras():
        defects = axiom_defects(A)
        rules = set(validate_dgla(A).rules_violated())
        assert rules == set(key[0] for key in defects), A


@pytest.mark.parametrize('seed', SEEDS)
def test_euler_characteristic(seed):
    L = random_algebra(seed)
    dims = cohomology(L).dims()
    assert sum((-1) ** k * n for k, n in dims.items()) == \
        sum((-1) ** k * L.basis.dim(k) for k in (1, 2, 3))


@pytest.mark.parametrize('seed', SEEDS)
def test_printed_algebra_parses_back(seed):
    L = random_algebra(seed)
    doc = Document([], [(L.name, L)])
    assert parse(print_document(doc)).algebra() == L


@pytest.mark.parametrize('seed', SEEDS)
def test_mc_polynomials_match_residual(seed):
    L = random_algebra(seed)
    rng = random.Random(2000 + seed)
    point = {i: rng.choice(COEFFICIENTS) for i in L.basis.indices_of_degree(1)}
    residual = mc_residual(L, point)
    system = mc_system(L)
    values = evaluate_system(system, {system.variables[n]: point[i]
                                      for n, i in enumerate(L.basis.indices_of_degree(1))})
    for h, value in zip(L.basis.indices_of_degree(2), values):
        assert residual.get(h, 0) == value


@pytest.mark.parametrize('seed', SEEDS)
def test_window_identities(seed):
    window = BicomplexWindow(random_algebra(seed), 3)
    report = window.check_identities()
    assert report.ok, report.violations


@pytest.mark.parametrize('seed', range(0, 50, 5))
def test_pbw_symmetrization_is_bijective(seed):
    U = TruncatedUEA(random_algebra(seed), 2)
    assert pbw_matrix(U).rank() == U.dim
    for word in U.basis:
        assert U.d(U.d({word: 1})) == {}


@pytest.mark.parametrize('seed', SEEDS)
def test_euler_differential_controls_d2(seed):
    L = random_algebra(seed)
    window = BicomplexWindow(L, 4)
    obstruction = euler_obstruction(identity_morphism(L), r_max=2, window=window)
    sequence = SpectralSequence(window)
    if obstruction.found:
        assert obstruction.r == 2
        assert not sequence.d_matrix(1, 0, 2).is_zero()
        return
    for p, q in window.cells():
        if sequence.can_differentiate(p, q, 2):
            assert sequence.d_matrix(p, q, 2).is_zero(), (p, q)


@pytest.mark.parametrize('seed', SEEDS)
def test_first_page_matches_kunneth(seed):
    window = BicomplexWindow(random_algebra(seed), 3)
    for (p, q), (e1, hom) in kunneth_table(window).items():
        assert e1 == hom, (p, q)


@pytest.mark.parametrize('seed', SEEDS)
def test_d2_squares_to_zero(seed):
    window = BicomplexWindow(random_algebra(seed), 4)
    sequence = SpectralSequence(window)
    low, high = window.q_range(0)
    for q in range(low, high + 1):
        if sequence.can_differentiate(0, q, 2) and sequence.can_differentiate(2, q - 1, 2):
            product = sequence.d_matrix(2, q - 1, 2) * sequence.d_matrix(0, q, 2)
            assert product.is_zero(), q


@pytest.mark.parametrize('seed', SEEDS)
def test_euler_class_is_functorial(seed):
    L, A = random_algebra(seed), random_algebra(seed + 1)
    S = direct_sum(L, A, name='S')
    f, g = sum_inclusion(S, L, A, 0), sum_projection(S, L, A, 0)
    pushed, direct, pulled = euler_functoriality(f, g)
    assert pushed == direct == pulled
