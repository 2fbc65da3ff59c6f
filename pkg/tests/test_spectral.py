# -*- coding: utf-8 -*-
from __future__ import absolute_import
import json

import pytest

from dglaformal.ce_complex import BicomplexWindow, as_module
from dglaformal.exceptions import WindowError
from dglaformal.graded import (
    DGLA, direct_sum, identity_morphism, sum_inclusion, validate_morphism,
)
from dglaformal.report import jsonable
from dglaformal.spectral import (
    LadderClass, SpectralSequence, check_ladder, euler_functoriality,
    d_r_matrix, euler_class, euler_obstruction, map_pages, page,
)


def _acyclic():
    return DGLA.from_names([('a', 1), ('b', 2)], differential={'a': {'b': 1}}, name='A')


@pytest.fixture(scope='module')
def obstruction_L(L):
    return euler_obstruction(identity_morphism(L), r_max=4)


def test_first_page_column_zero(M):
    E1 = page(BicomplexWindow(M, 2), 1)
    # E_1^{0,q} is H^q(M)
    assert E1[(0, 1)].dim == 2
    assert E1[(0, 2)].dim == 1
    assert E1[(0, 0)].dim == 0


def test_known_cells(M):
    sequence = SpectralSequence(BicomplexWindow(M, 3))
    assert sequence.is_known(3, -1, 1)
    assert not sequence.is_known(3, -1, 2)
    assert sequence.can_differentiate(1, 0, 2)
    assert not sequence.can_differentiate(2, 0, 2)
    assert not sequence.cell(3, -1, 2).known
    assert sequence.cell(3, -1, 2).dim is None
    with pytest.raises(WindowError):
        sequence.d_matrix(2, 0, 2)


def test_d2_squares_to_zero(M):
    sequence = SpectralSequence(BicomplexWindow(M, 4))
    for q in range(-2, 3):
        if not sequence.can_differentiate(2, q - 1, 2):
            continue
        first = sequence.d_matrix(0, q, 2)
        second = sequence.d_matrix(2, q - 1, 2)
        assert (second * first).is_zero()


def test_L_is_not_formal(L, obstruction_L):
    assert obstruction_L.found
    assert obstruction_L.r == 2
    ladder = obstruction_L.certificate
    assert (ladder.p, ladder.q) == (1, 0)
    assert ladder.target_cell == (3, -1)


def test_certificate_rechecks(L, obstruction_L):
    window = BicomplexWindow(L, 6)
    assert check_ladder(window, obstruction_L.certificate).ok


def test_certificate_survives_json(L, obstruction_L):
    data = json.loads(json.dumps(jsonable(obstruction_L.certificate.to_dict()), sort_keys=True))
    window = BicomplexWindow(L, 6)
    ladder = LadderClass.from_dict(data, window)
    assert ladder.rungs == obstruction_L.certificate.rungs
    assert check_ladder(window, ladder).ok


def test_tampered_certificate_fails(L, obstruction_L):
    window = BicomplexWindow(L, 6)
    certificate = obstruction_L.certificate
    zero_target = tuple(0 for _ in certificate.target)
    forged = LadderClass(certificate.p, certificate.q, certificate.r, certificate.rungs, zero_target)
    report = check_ladder(window, forged)
    assert not report.ok
    assert report.rules_violated() == ['ladder-target']


def test_no_euler_obstruction_for_M(M):
    obstruction = euler_obstruction(identity_morphism(M), r_max=4)
    assert not obstruction.found
    assert not obstruction.undetermined
    assert obstruction.checked_up_to == 4


def test_small_window_is_undetermined(M):
    obstruction = euler_obstruction(identity_morphism(M), r_max=4, p_cutoff=3)
    assert not obstruction.found
    assert obstruction.undetermined
    assert obstruction.checked_up_to == 2


def test_euler_functoriality(inclusion, M):
    pushed, direct, pulled = euler_functoriality(inclusion, identity_morphism(M))
    assert pushed == direct == pulled


def test_quasi_isomorphism_gives_page_isomorphisms(L):
    S = direct_sum(L, _acyclic(), name='S')
    f = sum_inclusion(S, L, _acyclic(), 0)
    assert validate_morphism(f).ok
    source = BicomplexWindow(L, 4)
    target = BicomplexWindow(as_module(f), 4)
    pages = map_pages(f, source, target, mode='post')
    for r in range(1, 5):
        for p, q in source.cells():
            if pages.source.is_known(p, q, r):
                assert pages.is_isomorphism(r, p, q), (r, p, q)


def test_euler_class_of_L_survives_to_second_page(L):
    window = BicomplexWindow(L, 4)
    e_L = euler_class(identity_morphism(L), window)
    assert not e_L.is_zero
    assert e_L.survival == 2
    assert not d_r_matrix(page(window, 2), 1, 0).is_zero()
    with pytest.raises(WindowError):
        euler_class(identity_morphism(L), BicomplexWindow(L, 1))
