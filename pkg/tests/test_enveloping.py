# -*- coding: utf-8 -*-
from __future__ import absolute_import
import itertools
from fractions import Fraction

import pytest

from dglaformal.enveloping import (
    SymmetricAlgebra, TruncatedUEA, complement_H, derivation_identity_failures, is_pbw,
    normalize_symmetric, pbw_map, pbw_matrix, pbw_normal_form, pbw_report, pbw_words,
    r_derivation, symmetric_dims,
)
from dglaformal.exceptions import PreconditionError, TruncationError


@pytest.fixture(scope='module')
def U3(L):
    return TruncatedUEA(L, 3)


def test_pbw_words():
    assert len(pbw_words([1, 1, 2], 2)) == 8
    assert (0, 0) not in pbw_words([1, 1, 2], 2)
    assert (2, 2) in pbw_words([1, 1, 2], 2)


def test_symmetric_dims():
    assert symmetric_dims([1], 3) == {0: 1, 1: 1}
    assert symmetric_dims([2], 3) == {0: 1, 2: 1, 4: 1, 6: 1}


@pytest.mark.parametrize(['degrees', 'factors', 'expected'], [
    ([1, 1], (1, 0), (-1, (0, 1))),
    ([0, 0], (1, 0), (1, (0, 1))),
    ([1], (0, 0), (0, None)),
])
def test_normalize_symmetric(degrees, factors, expected):
    assert normalize_symmetric(degrees, factors) == expected


def test_negative_truncation(L):
    with pytest.raises(PreconditionError):
        TruncatedUEA(L, -1)


def test_words_are_truncated(U3):
    with pytest.raises(TruncationError):
        U3.normal_form((0, 1, 2, 3))
    with pytest.raises(TruncationError):
        U3.multiply({(0, 1): 1}, {(2, 3): 1})


def test_normal_form_does_not_depend_on_rewriting_order(U3):
    last = lambda bad: bad[-1]
    for word in itertools.product(range(U3.algebra.dim), repeat=3):
        assert U3.normal_form(word) == U3.normal_form(word, chooser=last)


def test_multiplication_is_associative(U3):
    generators = range(U3.algebra.dim)
    for a, b, c in itertools.product(generators, repeat=3):
        x, y, z = U3.inclusion(a), U3.inclusion(b), U3.inclusion(c)
        assert U3.multiply(U3.multiply(x, y), z) == U3.multiply(x, U3.multiply(y, z))


def test_differential_squares_to_zero(U3):
    for word in U3.basis:
        assert U3.d(U3.d({word: 1})) == {}


def test_symmetrization(L, U3):
    u, e3, h2 = (L.basis.index(n) for n in ('e1_e2', 'e3', 'h2'))
    # e(u e3) = (u e3 - e3 u)/2 and e3 u = -u e3 + h2
    assert pbw_map(U3, {(u, e3): 1}) == {(u, e3): 1, (h2,): Fraction(-1, 2)}
    assert pbw_map(U3, {(u,): 1}) == {(u,): 1}
    with pytest.raises(TruncationError):
        pbw_map(U3, {(0, 1, 2, 3): 1})


def test_pbw_matrix_is_invertible(U3):
    assert pbw_matrix(U3).rank() == U3.dim


def test_r_derivation(L):
    u, e3, h2 = (L.basis.index(n) for n in ('e1_e2', 'e3', 'h2'))
    # [u, e3] = h2
    assert r_derivation(L, e3, {(u,): 1}) == {(h2,): 1}
    assert r_derivation(L, h2, {(u,): 1}) == {}


def test_derivation_identity(U3):
    assert derivation_identity_failures(U3) == []


def test_complement(U3):
    complement = complement_H(U3)
    assert complement.ok
    assert complement.dim + U3.algebra.dim == U3.dim


def test_symmetric_algebra_dims_match(L, U3):
    S = SymmetricAlgebra(L, 3)
    assert S.dims() == U3.dims()
    for word in S.basis:
        assert S.d(S.d({word: 1})) == {}


def test_pbw_report(L):
    report = pbw_report(L, 2)
    assert report['e_bijective']
    assert report['e_commutes_with_d']
    assert report['derivation_identity_failures'] == 0
    assert report['complement_ok']
    assert report['dims_U'] == report['dims_S']
    assert report['cohomology_dims_S_of_H'] == {0: 1, 1: 1, 2: 1, 3: 1, 4: 1}
    assert report['cohomology_dims_U'] == report['cohomology_dims_S_of_H']


@pytest.mark.parametrize('N', [2, 3])
def test_pbw_report_for_M(M, N):
    report = pbw_report(M, N)
    assert report['e_bijective']
    assert report['e_commutes_with_d']
    assert report['derivation_identity_failures'] == 0
    assert report['complement_ok']
    assert report['cohomology_dims_U'] == report['cohomology_dims_S_of_H']


def test_is_pbw():
    degrees = [1, 1, 2]
    assert is_pbw(degrees, (0, 1))
    assert is_pbw(degrees, (2, 2))
    assert not is_pbw(degrees, (1, 0))
    assert not is_pbw(degrees, (0, 0))


def test_pbw_normal_form(L, U3):
    u, e3, h2 = (L.basis.index(n) for n in ('e1_e2', 'e3', 'h2'))
    assert pbw_normal_form(U3, (e3, u)) == {(u, e3): -1, (h2,): 1}
    assert pbw_normal_form(U3, (u, e3)) == {(u, e3): 1}
