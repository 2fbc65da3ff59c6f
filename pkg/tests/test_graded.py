# -*- coding: utf-8 -*-
from __future__ import absolute_import

import pytest

from dglaformal.exceptions import PreconditionError
from dglaformal.graded import (
    DGLA, DGLAMorphism, GradedBasis, adjoint_module, cohomology, compose, direct_sum,
    generated_ideal, identity_morphism, induced_cohomology_morphism, koszul,
    module_cohomology, quotient, subalgebra, sum_inclusion, sum_projection,
    validate_dgla, validate_module, validate_morphism, zero_algebra,
)


def test_koszul():
    assert koszul(1, 1) == -1
    assert koszul(1, 2) == 1
    assert koszul(0, 3) == 1


def test_graded_basis():
    basis = GradedBasis([('a', 1), ('b', 2), ('c', 1)])
    assert basis.indices_of_degree(1) == [0, 2]
    assert basis.dim(2) == 1
    assert basis.dim(5) == 0
    assert basis.degree_set() == [1, 2]
    assert basis.degree_of({0: 1, 2: 3}) == 1
    assert basis.degree_of({0: 1, 1: 1}) is None
    with pytest.raises(PreconditionError):
        GradedBasis([('a', 1), ('a', 2)])


def test_antisymmetric_completion():
    L = DGLA.from_names([('x', 1), ('y', 2), ('z', 3)], bracket={('x', 'y'): {'z': 1}})
    # [y, x] = -(-1)^(1*2) [x, y]
    assert L.br_basis(1, 0) == {2: -1}


def test_conflicting_brackets():
    with pytest.raises(PreconditionError):
        DGLA.from_names([('x', 1), ('y', 1), ('h', 2)],
                        bracket={('x', 'y'): {'h': 1}, ('y', 'x'): {'h': -1}})


def test_fixture_algebras_are_valid(M, L, inclusion):
    assert validate_dgla(M).ok
    assert validate_dgla(L).ok
    assert validate_morphism(inclusion).ok


def test_violations_are_reported():
    bad = DGLA.from_names([('x', 1), ('y', 2)], differential={'x': {'x': 1}})
    report = validate_dgla(bad)
    assert not report.ok
    assert 'd-degree' in report.rules_violated()
    assert report.violations[0].witness == ('x',)


def test_jacobi_violation():
    # sl2; the second table flips the sign of [h, f]
    bad = DGLA.from_names(
        [('e', 0), ('f', 0), ('h', 0)],
        bracket={('h', 'e'): {'e': 2}, ('h', 'f'): {'f': -2}, ('e', 'f'): {'h': 1},
                 ('e', 'e'): {}},
    )
    assert validate_dgla(bad).ok
    worse = DGLA.from_names(
        [('e', 0), ('f', 0), ('h', 0)],
        bracket={('h', 'e'): {'e': 2}, ('h', 'f'): {'f': 2}, ('e', 'f'): {'h': 1}},
    )
    assert 'jacobi' in validate_dgla(worse).rules_violated()


def test_cohomology_of_M(M):
    H = cohomology(M)
    assert H.dims() == {1: 2, 2: 1}
    assert [name for _, _, name, _ in H.classes] == ['[e1]', '[e2]', '[h2]']
    assert H.project({M.basis.index('h1'): 1}) == {}


def test_pairing_of_M(M):
    H = cohomology(M)
    pairing = [[H.bracket.get((a, b), {}).get(2, 0) for b in range(2)] for a in range(2)]
    assert pairing == [[-1, 0], [0, 1]]


def test_cohomology_algebra(M):
    HM = cohomology(M).algebra()
    assert HM.has_zero_differential()
    assert validate_dgla(HM).ok
    assert HM.br_basis(1, 1) == {2: 1}


def test_cohomology_of_L(L):
    H = cohomology(L)
    assert H.dims() == {1: 1, 2: 1}
    assert H.representative(0) == {L.basis.index('e1_e2'): 1}
    # [u, u] = -h1 is exact
    assert H.bracket == {}


def test_inclusion_is_injective_in_cohomology(inclusion):
    induced = induced_cohomology_morphism(inclusion)
    assert induced.is_injective()
    assert not induced.is_surjective(1)


def test_subalgebra_names(L):
    assert L.basis.names == ['e1_e2', 'e3', 'h1', 'h2']
    assert L.basis.format(L.br_basis(0, 0)) == '-h1'
    assert L.basis.format(L.br_basis(0, 1)) == 'h2'


def test_subalgebra_must_be_closed(M):
    e1 = M.basis.index('e1')
    with pytest.raises(PreconditionError):
        subalgebra(M, [{e1: 1}], name='bad')


def test_direct_sum(M):
    S = direct_sum(M, M, name='S')
    assert S.dim == 2 * M.dim
    assert S.basis.names[M.dim] == 'e1_2'
    assert 'renamed e1 -> e1_2' in S.notes
    assert validate_dgla(S).ok
    for which in (0, 1):
        inc = sum_inclusion(S, M, M, which)
        proj = sum_projection(S, M, M, which)
        assert validate_morphism(inc).ok
        assert validate_morphism(proj).ok
        assert compose(proj, inc).images == identity_morphism(M).images


def test_compose_requires_matching_ends(M, L, inclusion):
    with pytest.raises(PreconditionError):
        compose(inclusion, inclusion)
    assert compose(identity_morphism(M), inclusion) == DGLAMorphism(L, M, inclusion.images)


def test_generated_ideal(M):
    ideal = generated_ideal(M, [{M.basis.index('h1'): 1}, {M.basis.index('e3'): 1}])
    assert {k: space.dim for k, space in ideal.items()} == {1: 1, 2: 2}


def test_abelian_quotient(M):
    Q, projection = quotient(M, [{M.basis.index('h1'): 1}, {M.basis.index('e3'): 1}], name='Q')
    assert Q.basis.names == ['e1', 'e2']
    assert Q.is_abelian()
    assert Q.has_zero_differential()
    assert validate_morphism(projection).ok


def test_adjoint_module(inclusion):
    module = adjoint_module(inclusion)
    assert validate_module(module).ok
    HL = cohomology(inclusion.source)
    HM, induced = module_cohomology(module, HL)
    assert HM.dims() == {1: 2, 2: 1}
    assert validate_module(induced).ok


def test_zero_algebra():
    Z = zero_algebra('Z')
    assert Z.dim == 0
    assert validate_dgla(Z).ok
    assert cohomology(Z).dims() == {}
