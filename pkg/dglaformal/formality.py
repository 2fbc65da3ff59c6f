# -*- coding: utf-8 -*-
"""
Formality decisions.

* A nonzero ``d_r``, ``r >= 2``, in ``E(L, L)`` proves that L is not
  formal; the ladder producing it is returned as a certificate.
* A finite window can only collect evidence for formality; verdicts say
  so and carry the cutoffs used.
* The transfer checks test whether ``f_*: E_2(L, L) -> E_2(L, M)``
  (forward) or ``f^*: E_2(M, M) -> E_2(L, M)`` (backward) is injective on
  the cells ``(p, 2 - p)``.
"""
from __future__ import absolute_import
import logging

from tabulate import tabulate

from dglaformal.ce_complex import BicomplexWindow, as_module
from dglaformal.checks import CombinedChecks, rule
from dglaformal.exceptions import PreconditionError
from dglaformal.graded import (
    cohomology, identity_morphism, validate_dgla, validate_morphism,
)
from dglaformal.linalg import Subspace, solve
from dglaformal.spectral import (
    LadderClass, SpectralSequence, euler_obstruction, map_pages,
)
from dglaformal.utils import lc_to_vector, vector_to_lc

logger = logging.getLogger(__name__)

DEFAULT_R_MAX = 4

NON_FORMAL = 'NON_FORMAL'
NO_OBSTRUCTION = 'NO_OBSTRUCTION_UP_TO'
TRANSFER_CONCLUDES_FORMAL = 'TRANSFER_CONCLUDES_FORMAL'
TRANSFER_INCONCLUSIVE = 'TRANSFER_INCONCLUSIVE'

SELF_OBSTRUCTION = 'self-obstruction'
TRANSFER_FORWARD = 'transfer-forward'
TRANSFER_BACKWARD = 'transfer-backward'


def default_cutoffs(p_cutoff=None, r_max=None):
    r_max = DEFAULT_R_MAX if r_max is None else r_max
    p_cutoff = r_max + 2 if p_cutoff is None else p_cutoff
    return p_cutoff, r_max


class FormalityVerdict(object):
    def __init__(self, subject, mode, outcome, p_cutoff, r_max, certificate=None,
                 evidence=None, injectivity=None, caveats=(), twist=None):
        self.subject = subject
        self.mode = mode
        self.outcome = outcome
        self.p_cutoff = p_cutoff
        self.r_max = r_max
        self.certificate = certificate
        self.evidence = evidence
        self.injectivity = injectivity
        self.caveats = list(caveats)
        self.twist = twist

    @property
    def non_formal(self):
        return self.outcome == NON_FORMAL

    @property
    def conclusive(self):
        return self.outcome in (NON_FORMAL, TRANSFER_CONCLUDES_FORMAL)

    @property
    def obstruction_r(self):
        return self.certificate.r if self.certificate is not None else None

    def describe(self):
        if self.outcome == NON_FORMAL:
            return "%s is not formal: d_%d != 0 at E^(%d,%d)" % (
                self.subject, self.certificate.r, self.certificate.p, self.certificate.q)
        if self.outcome == NO_OBSTRUCTION:
            return "%s: no obstruction up to p=%d, r=%d" % (self.subject, self.p_cutoff, self.r_max)
        if self.outcome == TRANSFER_CONCLUDES_FORMAL:
            return "%s: transfer concludes formality (up to p=%d)" % (self.subject, self.p_cutoff)
        return "%s: transfer hypotheses not met" % self.subject

    def to_dict(self):
        result = {
            'subject': self.subject,
            'mode': self.mode,
            'outcome': self.outcome,
            'cutoffs': {'p_cutoff': self.p_cutoff, 'r_max': self.r_max},
            'certificate': self.certificate.to_dict() if self.certificate is not None else None,
            'caveats': self.caveats,
            'twist': self.twist,
        }
        if self.evidence is not None:
            result['evidence'] = self.evidence.to_dict() if hasattr(self.evidence, 'to_dict') else self.evidence
        if self.injectivity is not None:
            result['injectivity'] = self.injectivity.to_dict()
        return result

    def __repr__(self):
        return "<FormalityVerdict %s>" % self.describe()


def nonformality_search(L, p_cutoff=None, r_max=None, verbose=False):
    """
    Look for a nonzero ``d_r``, ``2 <= r <= r_max``, on the known cells of
    ``E(L, L)`` truncated at ``p_cutoff``. The Euler class is tried first.
    """
    p_cutoff, r_max = default_cutoffs(p_cutoff, r_max)
    subject = L.name or 'algebra'
    window = BicomplexWindow(L, p_cutoff, verbose=verbose)
    obstruction = euler_obstruction(identity_morphism(L), r_max, window=window)
    if obstruction.found:
        logger.info("%s: Euler class obstruction at r=%d", subject, obstruction.r)
        return FormalityVerdict(subject, SELF_OBSTRUCTION, NON_FORMAL, p_cutoff, r_max,
                                certificate=obstruction.certificate, twist=window.twist,
                                evidence={'source': 'euler-class'})
    sequence = SpectralSequence(window)
    for r in range(2, r_max + 1):
        for p, q in window.cells():
            if not sequence.can_differentiate(p, q, r):
                continue
            source = sequence.quotient(p, q, r)
            if not source.dim:
                continue
            matrix = sequence.d_matrix(p, q, r)
            if matrix.is_zero():
                continue
            column = min(c for _, c in matrix.nonzero())
            rungs, image = sequence.differential_image(p, q, r, source.representatives[column])
            logger.info("%s: d_%d != 0 out of (%d,%d)", subject, r, p, q)
            return FormalityVerdict(subject, SELF_OBSTRUCTION, NON_FORMAL, p_cutoff, r_max,
                                    certificate=LadderClass(p, q, r, rungs, image),
                                    twist=window.twist, evidence={'source': 'page-scan'})
    return FormalityVerdict(
        subject, SELF_OBSTRUCTION, NO_OBSTRUCTION, p_cutoff, r_max, twist=window.twist,
        caveats=["a finite window only gives evidence for formality"],
    )


class InjectivityReport(object):
    """ Per-p injectivity of the induced map on E_2^{p, 2-p} """
    def __init__(self, direction, ranks):
        self.direction = direction
        self.ranks = dict(ranks)

    @property
    def per_p(self):
        return {p: rank == src for p, (src, dst, rank) in sorted(self.ranks.items())}

    @property
    def p_range(self):
        return min(self.ranks), max(self.ranks)

    @property
    def first_failure(self):
        failures = [p for p, ok in self.per_p.items() if not ok]
        return failures[0] if failures else None

    @property
    def all_injective(self):
        return self.first_failure is None

    def table(self):
        rows = [(p, 2 - p, src, dst, rank, 'yes' if rank == src else 'NO')
                for p, (src, dst, rank) in sorted(self.ranks.items())]
        return tabulate(rows, headers=['p', 'q', 'dim source', 'dim target', 'rank', 'injective'])

    def to_dict(self):
        return {
            'direction': self.direction,
            'per_p': [{'p': p, 'injective': ok} for p, ok in self.per_p.items()],
            'status': 'all-injective' if self.all_injective else 'counterexample',
            'first_failure': self.first_failure,
        }


def injectivity_report(f, direction, p_cutoff, verbose=False):
    """
    Ranks of ``f_*`` (``direction='forward'``) or ``f^*`` (``'backward'``)
    on ``E_2^{p, 2-p}`` for ``0 <= p <= p_cutoff``.
    """
    p_max = p_cutoff + 1
    target = BicomplexWindow(as_module(f), p_max, verbose=verbose)
    if direction == 'forward':
        source = BicomplexWindow(f.source, p_max, verbose=verbose)
        pages = map_pages(f, source, target, mode='post')
    elif direction == 'backward':
        source = BicomplexWindow(f.target, p_max, verbose=verbose)
        pages = map_pages(f, source, target, mode='pre')
    else:
        raise PreconditionError("direction must be 'forward' or 'backward'")
    ranks = {}
    for p in range(p_cutoff + 1):
        m = pages.on_page(2, p, 2 - p)
        ranks[p] = (m.ncols, m.nrows, m.rank())
        logger.debug("%s E_2^(%d,%d): %r", direction, p, 2 - p, ranks[p])
    return InjectivityReport(direction, ranks)


def _transfer(f, direction, p_cutoff, r_max, assert_formal, verbose):
    p_cutoff, r_max = default_cutoffs(p_cutoff, r_max)
    formal_side = f.target if direction == 'forward' else f.source
    subject = (f.source if direction == 'forward' else f.target).name or 'algebra'
    mode = TRANSFER_FORWARD if direction == 'forward' else TRANSFER_BACKWARD
    caveats = []
    if assert_formal:
        evidence = {'asserted_formal': formal_side.name}
        formal_ok = True
    else:
        evidence = nonformality_search(formal_side, p_cutoff, r_max, verbose=verbose)
        formal_ok = evidence.outcome == NO_OBSTRUCTION
        caveats.append("formality of %s is evidence up to the cutoffs, not proven" % formal_side.name)
    report = injectivity_report(f, direction, p_cutoff, verbose=verbose)
    if report.all_injective and formal_ok:
        outcome = TRANSFER_CONCLUDES_FORMAL
        caveats.append("injectivity checked for p <= %d only" % p_cutoff)
    else:
        outcome = TRANSFER_INCONCLUSIVE
    return FormalityVerdict(subject, mode, outcome, p_cutoff, r_max, evidence=evidence,
                            injectivity=report, caveats=caveats)


def transfer_forward(f, p_cutoff=None, r_max=None, assert_formal=False, verbose=False):
    """ M formal and ``f_*`` injective on E_2^{p,2-p} imply L formal """
    return _transfer(f, 'forward', p_cutoff, r_max, assert_formal, verbose)


def transfer_backward(f, p_cutoff=None, r_max=None, assert_formal=False, verbose=False):
    """ L formal and ``f^*`` injective on E_2^{p,2-p} imply M formal """
    return _transfer(f, 'backward', p_cutoff, r_max, assert_formal, verbose)


@rule('subalgebra')
def _check_subalgebra(inclusion, projection):
    for v in validate_dgla(inclusion.source).violations + validate_morphism(inclusion).violations:
        yield v.witness, "%s: %s" % (v.rule, v.detail)


@rule('projection-degree')
def _check_projection_degree(inclusion, projection):
    M, L = projection.source, projection.target
    for y in range(M.dim):
        for x in projection.image(y):
            if L.basis.degree(x) != M.basis.degree(y):
                yield (M.basis.name(y),), "p(%s) is not of degree %d" % (M.basis.name(y), M.basis.degree(y))


@rule('projection-differential')
def _check_projection_differential(inclusion, projection):
    M, L = projection.source, projection.target
    for y in range(M.dim):
        if projection.apply(M.d_basis(y)) != L.d(projection.image(y)):
            yield (M.basis.name(y),), "p(d %s) != d p(%s)" % (M.basis.name(y), M.basis.name(y))


@rule('retraction')
def _check_retraction(inclusion, projection):
    L = inclusion.source
    for x in range(L.dim):
        if projection.apply(inclusion.image(x)) != {x: 1}:
            yield (L.basis.name(x),), "p(%s) != %s" % (L.basis.name(x), L.basis.name(x))


@rule('equivariance')
def _check_equivariance(inclusion, projection):
    L, M = inclusion.source, inclusion.target
    for x in range(L.dim):
        for y in range(M.dim):
            lhs = projection.apply(M.br(inclusion.image(x), {y: 1}))
            rhs = L.br({x: 1}, projection.image(y))
            if lhs != rhs:
                yield (L.basis.name(x), M.basis.name(y)), "p([x, y]) != [x, p(y)]"


_splitting_checks = CombinedChecks(
    _check_subalgebra, _check_projection_degree, _check_projection_differential,
    _check_retraction, _check_equivariance,
)


def module_splitting_check(inclusion, projection):
    """
    Check that ``projection: M -> L`` is a retraction of L-modules onto the
    subalgebra ``inclusion: L -> M``: a chain map with ``p(x) = x`` and
    ``p([x, y]) = [x, p(y)]``. When it passes, formality of M transfers to L.
    """
    if projection.source != inclusion.target or projection.target != inclusion.source:
        raise PreconditionError("projection must go from the target of the inclusion back to its source")
    report = _splitting_checks(inclusion, projection)
    report.subject = "splitting of %s" % (inclusion.name or 'inclusion')
    if report.ok:
        report.extra['conclusion'] = "formality of %s transfers to %s" % (
            inclusion.target.name, inclusion.source.name)
    return report


class MasseyTriple(object):
    def __init__(self, defined, value=None, indeterminacy=None, nonzero=False, bounding=None):
        self.defined = defined
        self.value = value
        self.indeterminacy = indeterminacy
        self.nonzero = nonzero
        self.bounding = bounding

    def to_dict(self):
        return {
            'defined': self.defined,
            'nonzero': self.nonzero,
            'value': {str(k): str(v) for k, v in sorted((self.value or {}).items())},
            'indeterminacy_dim': self.indeterminacy.dim if self.indeterminacy is not None else None,
        }


def massey_triple(L, representative, H=None):
    """
    The triple product <a, a, a> of the class of a degree 1 cocycle
    ``representative``: if ``[m, m] = d b`` it is the class of ``[b, m]``,
    modulo ``[a, H^1]``. Returns a :class:`MasseyTriple`.
    """
    H = H if H is not None else cohomology(L)
    m = dict(representative)
    if L.degree_of(m) != 1 or L.d(m):
        raise PreconditionError("representative must be a degree 1 cocycle")
    square = L.br(m, m)
    b = {}
    if square:
        solution = solve(L.d_block(1), lc_to_vector(square, L.basis.indices_of_degree(2)))
        if solution is None:
            return MasseyTriple(False)
        b = vector_to_lc(solution, L.basis.indices_of_degree(1))
    value = H.project(L.br(b, m)) if b else {}
    classes_two = [n for n, (k, _, _, _) in enumerate(H.classes) if k == 2]
    indeterminacy = []
    for n, (k, _, _, rep) in enumerate(H.classes):
        if k == 1:
            c = H.project(L.br(m, rep))
            indeterminacy.append(lc_to_vector(c, classes_two))
    span = Subspace.span(len(classes_two), indeterminacy)
    nonzero = not span.contains(lc_to_vector(value, classes_two))
    return MasseyTriple(True, value, span, nonzero, bounding=b)
