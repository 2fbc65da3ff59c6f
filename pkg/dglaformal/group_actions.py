# -*- coding: utf-8 -*-
"""
Finite groups acting on a DG-Lie algebra by automorphisms: validation,
the averaging (Reynolds) operator, the invariant subalgebra and the
retraction check that lets formality pass from M to its invariants.
"""
from __future__ import absolute_import
import logging
from fractions import Fraction

from dglaformal.checks import CombinedChecks, rule
from dglaformal.exceptions import PreconditionError
from dglaformal.formality import module_splitting_check
from dglaformal.graded import (
    DGLAMorphism, compose, identity_morphism, subalgebra, validate_morphism,
)
from dglaformal.linalg import ExactMatrix, kernel_basis, solve
from dglaformal.utils import lc_add, lc_scale, lc_to_vector, vector_to_lc

logger = logging.getLogger(__name__)

GROUP_CAP = 256


def _key(g):
    return tuple(sorted((i, tuple(sorted(c.items()))) for i, c in g.images.items()))


class FiniteAction(object):
    """
    A finite group given by the explicit list of its elements, each a
    degree 0 automorphism of ``algebra`` (identity included).
    """
    def __init__(self, algebra, elements, name=None):
        self.algebra = algebra
        self.elements = list(elements)
        self.name = name

    @classmethod
    def generated(cls, algebra, generators, name=None, cap=GROUP_CAP):
        """ Close ``generators`` under composition; at most ``cap`` elements """
        identity = identity_morphism(algebra)
        elements = {_key(identity): identity}
        frontier = [identity]
        while frontier:
            new = []
            for g in frontier:
                for h in generators:
                    gh = compose(h, g)
                    key = _key(gh)
                    if key not in elements:
                        if len(elements) >= cap:
                            raise PreconditionError("group generated by %s exceeds %d elements" % (
                                name or 'the action', cap))
                        elements[key] = gh
                        new.append(gh)
            frontier = new
        ordered = sorted(elements.values(), key=lambda g: (g != identity, _key(g)))
        return cls(algebra, ordered, name=name)

    @property
    def order(self):
        return len(self.elements)

    def __repr__(self):
        return "<FiniteAction %s on %s, |G|=%d>" % (
            self.name or '?', self.algebra.name or '?', self.order)


@rule('automorphism')
def _check_automorphisms(action):
    for n, g in enumerate(action.elements):
        if g.source != action.algebra or g.target != action.algebra:
            yield (n,), "element %d does not act on %s" % (n, action.algebra.name)
            continue
        for v in validate_morphism(g).violations:
            yield (n,) + v.witness, "element %d: %s" % (n, v.detail)
        if g.matrix().rank() != action.algebra.dim:
            yield (n,), "element %d is not invertible" % n


@rule('identity')
def _check_identity(action):
    identity = identity_morphism(action.algebra)
    if not any(g.images == identity.images for g in action.elements):
        yield (), "the identity is not listed"


@rule('closure')
def _check_closure(action):
    keys = set(_key(g) for g in action.elements)
    for a, g in enumerate(action.elements):
        for b, h in enumerate(action.elements):
            if _key(compose(g, h)) not in keys:
                yield (a, b), "product of elements %d and %d is not listed" % (a, b)


@rule('size')
def _check_size(action):
    if action.order > GROUP_CAP:
        yield (action.order,), "more than %d elements" % GROUP_CAP


_action_checks = CombinedChecks(_check_size, _check_automorphisms, _check_identity, _check_closure)


def validate_action(action):
    report = _action_checks(action)
    report.subject = action.name or 'action'
    report.extra['order'] = action.order
    return report


def reynolds(action):
    """ The averaging operator ``x -> 1/|G| sum g(x)`` as a linear map of M """
    M = action.algebra
    scale = Fraction(1, action.order)
    images = {}
    for i in range(M.dim):
        images[i] = lc_scale(scale, lc_add(*[g.image(i) for g in action.elements]))
    return DGLAMorphism(M, M, images, name='reynolds')


def invariant_vectors(action):
    """ Basis combinations of the invariants, degree by degree """
    M = action.algebra
    combs = []
    for k in M.basis.degree_set():
        idx = M.basis.indices_of_degree(k)
        n = len(idx)
        blocks = [g.block(k) - ExactMatrix.identity(n) for g in action.elements]
        stacked = blocks[0].vstack(*blocks[1:]) if blocks else ExactMatrix.zeros(0, n)
        for v in kernel_basis(stacked).basis:
            combs.append(vector_to_lc(v, idx))
    return combs


def invariants_subalgebra(action, name=None):
    """ ``M^G`` with its inclusion into M """
    M = action.algebra
    name = name or "%s^G" % (M.name or 'M')
    L, inclusion = subalgebra(M, invariant_vectors(action), name=name)
    logger.info("invariants of %s: dim %d", M.name, L.dim)
    return L, inclusion


def invariant_projection(action, inclusion):
    """ The averaging operator as a map from M onto the invariant subalgebra """
    M, L = action.algebra, inclusion.source
    p = reynolds(action)
    frames = {}
    for k in L.basis.degree_set():
        members = L.basis.indices_of_degree(k)
        idx = M.basis.indices_of_degree(k)
        columns = [lc_to_vector(inclusion.image(i), idx) for i in members]
        frames[k] = (members, idx, ExactMatrix.from_columns(columns, len(idx)))
    images = {}
    for y in range(M.dim):
        value = p.image(y)
        if not value:
            continue
        k = M.basis.degree(y)
        members, idx, frame = frames[k]
        coords = solve(frame, lc_to_vector(value, idx))
        if coords is None:
            raise PreconditionError("average of %s is not invariant" % M.basis.name(y))
        images[y] = {members[t]: c for t, c in enumerate(coords) if c}
    return DGLAMorphism(M, L, images, name='average')


def retraction_check(action):
    """ Splitting check for ``M^G`` inside M with the averaging projection """
    L, inclusion = invariants_subalgebra(action)
    projection = invariant_projection(action, inclusion)
    return module_splitting_check(inclusion, projection)


def swap_action(S, L):
    """ The involution exchanging the two summands of ``S = L + L`` """
    n = L.dim
    if S.dim != 2 * n:
        raise PreconditionError("%s is not a sum of two copies of %s" % (S.name, L.name))
    swap = {i: {i + n: 1} for i in range(n)}
    swap.update({i + n: {i: 1} for i in range(n)})
    return FiniteAction(S, [identity_morphism(S), DGLAMorphism(S, S, swap, name='swap')], name='swap')
