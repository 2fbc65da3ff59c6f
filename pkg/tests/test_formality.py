# -*- coding: utf-8 -*-
from __future__ import absolute_import

import pytest

from dglaformal.exceptions import PreconditionError
from dglaformal.formality import (
    NO_OBSTRUCTION, NON_FORMAL, TRANSFER_CONCLUDES_FORMAL, TRANSFER_INCONCLUSIVE,
    default_cutoffs, injectivity_report, massey_triple, module_splitting_check,
    nonformality_search, transfer_backward, transfer_forward,
)
from dglaformal.graded import (
    DGLA, DGLAMorphism, cohomology, direct_sum, identity_morphism, quotient,
    sum_inclusion, sum_projection, zero_algebra,
)


def _acyclic():
    return DGLA.from_names([('a', 1), ('b', 2)], differential={'a': {'b': 1}}, name='A')


def test_default_cutoffs():
    assert default_cutoffs() == (6, 4)
    assert default_cutoffs(r_max=2) == (4, 2)
    assert default_cutoffs(3, 2) == (3, 2)


def test_L_is_not_formal(L):
    verdict = nonformality_search(L, p_cutoff=4, r_max=2)
    assert verdict.outcome == NON_FORMAL
    assert verdict.conclusive
    assert verdict.obstruction_r == 2
    assert verdict.evidence == {'source': 'euler-class'}
    assert 'not formal' in verdict.describe()
    assert verdict.to_dict()['certificate']['target_cell'] == [3, -1]


@pytest.mark.parametrize(['p_cutoff', 'r_max'], [(4, 3), (6, 4)])
def test_no_obstruction_for_M(M, p_cutoff, r_max):
    verdict = nonformality_search(M, p_cutoff=p_cutoff, r_max=r_max)
    assert verdict.outcome == NO_OBSTRUCTION
    assert not verdict.conclusive
    assert verdict.certificate is None
    assert verdict.caveats


def test_massey_product_on_L(L):
    H = cohomology(L)
    u = L.basis.index('e1_e2')
    triple = massey_triple(L, {u: 1}, H)
    assert triple.defined
    assert triple.nonzero
    assert L.d(triple.bounding) == L.br({u: 1}, {u: 1})
    # the value is -[h2]
    assert triple.value == {1: -1}
    assert triple.indeterminacy.dim == 0


def test_massey_product_undefined_on_M(M):
    # [e1, e1] = -h2 is not exact
    triple = massey_triple(M, {M.basis.index('e1'): 1})
    assert not triple.defined
    assert not triple.nonzero


def test_massey_needs_a_cocycle(M):
    with pytest.raises(PreconditionError):
        massey_triple(M, {M.basis.index('e3'): 1})
    with pytest.raises(PreconditionError):
        massey_triple(M, {M.basis.index('h2'): 1})


def test_forward_injectivity_fails_at_p1(inclusion):
    report = injectivity_report(inclusion, 'forward', 2)
    assert report.first_failure == 1
    assert not report.all_injective
    assert report.per_p[0]
    assert report.to_dict()['status'] == 'counterexample'
    assert 'NO' in report.table()


def test_unknown_direction(inclusion):
    with pytest.raises(PreconditionError):
        injectivity_report(inclusion, 'sideways', 2)


def test_transfer_forward_is_inconclusive(inclusion):
    verdict = transfer_forward(inclusion, p_cutoff=2, r_max=2, assert_formal=True)
    assert verdict.outcome == TRANSFER_INCONCLUSIVE
    assert not verdict.conclusive
    assert verdict.evidence == {'asserted_formal': 'M'}
    assert verdict.injectivity.first_failure == 1


def test_transfer_along_identity(M):
    verdict = transfer_forward(identity_morphism(M), p_cutoff=2, r_max=2, assert_formal=True)
    assert verdict.outcome == TRANSFER_CONCLUDES_FORMAL
    assert verdict.injectivity.all_injective


def test_splitting_of_a_direct_summand(L):
    S = direct_sum(L, _acyclic(), name='S')
    report = module_splitting_check(sum_inclusion(S, L, _acyclic(), 0),
                                    sum_projection(S, L, _acyclic(), 0))
    assert report.ok, report.violations
    assert 'transfers' in report.extra['conclusion']


def test_splitting_needs_matching_ends(inclusion):
    with pytest.raises(PreconditionError):
        module_splitting_check(inclusion, inclusion)


def test_backward_injectivity_along_identity(L):
    report = injectivity_report(identity_morphism(L), 'backward', 3)
    assert report.direction == 'backward'
    assert report.p_range == (0, 3)
    assert report.all_injective
    for src, dst, rank in report.ranks.values():
        assert src == dst == rank


def test_transfer_backward_along_identity(M):
    verdict = transfer_backward(identity_morphism(M), p_cutoff=2, r_max=2, assert_formal=True)
    assert verdict.outcome == TRANSFER_CONCLUDES_FORMAL
    assert verdict.evidence == {'asserted_formal': 'M'}
    assert verdict.injectivity.all_injective


def test_transfer_backward_from_zero_algebra(M):
    f = DGLAMorphism(zero_algebra('Z'), M, {}, name='z')
    report = injectivity_report(f, 'backward', 3)
    assert report.p_range == (0, 3)
    # E_2^{0,2}(Z, M) = H^2(M) and f^* is the identity there
    assert report.ranks[0] == (1, 1, 1)
    for p in range(1, 4):
        src, dst, rank = report.ranks[p]
        assert dst == rank == 0
        assert report.per_p[p] == (src == 0)
    verdict = transfer_backward(f, p_cutoff=3, r_max=2, assert_formal=True)
    assert verdict.subject == 'M'
    assert verdict.evidence == {'asserted_formal': 'Z'}
    assert verdict.injectivity.per_p == report.per_p
    expected = TRANSFER_CONCLUDES_FORMAL if report.all_injective else TRANSFER_INCONCLUSIVE
    assert verdict.outcome == expected


def test_transfer_backward_onto_abelian_quotient(M):
    Q, projection = quotient(M, [{M.basis.index('h1'): 1}, {M.basis.index('e3'): 1}], name='Q')
    # Q is concentrated in degree 1, so every cochain in total degree 2 vanishes
    report = injectivity_report(projection, 'backward', 4)
    assert report.ranks == {p: (0, 0, 0) for p in range(5)}
    assert report.to_dict() == {
        'direction': 'backward',
        'per_p': [{'p': p, 'injective': True} for p in range(5)],
        'status': 'all-injective',
        'first_failure': None,
    }
    verdict = transfer_backward(projection, p_cutoff=4, r_max=3)
    assert verdict.subject == 'Q'
    assert verdict.evidence.outcome == NO_OBSTRUCTION
    assert verdict.outcome == TRANSFER_CONCLUDES_FORMAL
