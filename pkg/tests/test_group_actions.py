# -*- coding: utf-8 -*-
from __future__ import absolute_import

import pytest

from dglaformal.exceptions import PreconditionError
from dglaformal.formality import TRANSFER_CONCLUDES_FORMAL, injectivity_report, transfer_forward
from dglaformal.graded import DGLAMorphism, cohomology, compose, identity_morphism
from dglaformal.group_actions import (
    FiniteAction, invariant_projection, invariant_vectors, invariants_subalgebra,
    retraction_check, reynolds, swap_action, validate_action,
)


def test_swap_action_is_valid(swap):
    report = validate_action(swap)
    assert report.ok, report.violations
    assert report.extra['order'] == 2


def test_swap_action_matches_document(MM, M, swap):
    built = swap_action(MM, M)
    assert [g.images for g in built.elements] == [g.images for g in swap.elements]
    with pytest.raises(PreconditionError):
        swap_action(M, M)


def test_generated_group(MM, swap):
    action = FiniteAction.generated(MM, [swap.elements[1]], name='swap')
    assert action.order == 2
    assert action.elements[0].images == identity_morphism(MM).images
    assert validate_action(action).ok


def test_missing_identity(MM, swap):
    report = validate_action(FiniteAction(MM, [swap.elements[1]]))
    assert set(report.rules_violated()) == {'identity', 'closure'}


def test_non_automorphism(M):
    e1 = M.basis.index('e1')
    images = dict(identity_morphism(M).images)
    images[e1] = {e1: 2}
    action = FiniteAction(M, [identity_morphism(M), DGLAMorphism(M, M, images)])
    assert 'automorphism' in validate_action(action).rules_violated()


def test_reynolds_is_idempotent(swap):
    R = reynolds(swap)
    assert compose(R, R).images == R.images


def test_invariants(swap, M):
    assert len(invariant_vectors(swap)) == M.dim
    invariants, inclusion = invariants_subalgebra(swap)
    assert invariants.name == 'MM^G'
    assert invariants.basis.degrees == M.basis.degrees
    assert cohomology(invariants).dims() == cohomology(M).dims()
    projection = invariant_projection(swap, inclusion)
    assert compose(projection, inclusion).images == identity_morphism(invariants).images


def test_retraction_onto_invariants(swap):
    report = retraction_check(swap)
    assert report.ok, report.violations
    assert 'transfers' in report.extra['conclusion']


def test_forward_transfer_onto_invariants(swap):
    _, inclusion = invariants_subalgebra(swap)
    report = injectivity_report(inclusion, 'forward', 6)
    assert report.p_range == (0, 6)
    assert report.all_injective
    verdict = transfer_forward(inclusion, p_cutoff=2, r_max=2, assert_formal=True)
    assert verdict.injectivity.all_injective
    assert verdict.outcome == TRANSFER_CONCLUDES_FORMAL
