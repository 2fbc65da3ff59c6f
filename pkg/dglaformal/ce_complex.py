# -*- coding: utf-8 -*-
"""
Chevalley-Eilenberg double complex ``CE(L, M)^{p,q} = Hom^q(L^p, M)`` of a
DG-Lie algebra ``L`` with coefficients in a DG-module ``M``.

* the vertical differential comes from the differentials of L and M::

    (dbar f)(x1..xp) = d(f(x1..xp)) - sum_i (-1)^(q + |x1| + .. + |x_{i-1}|) f(x1..dxi..xp)

* the horizontal differential comes from the bracket and the action::

    (delta f)(x1..xp) = (-1)^(q+p-1) sum_i chi_i f(..xi omitted..) * xi
                      + (-1)^(q+p) sum_{i<j} chi_ij f(..xi, xj omitted.., [xi, xj])

Cells are materialized lazily. The total differential on column p is
``delta + s_p dbar`` where ``s_p`` is either always 1 or ``(-1)^p``,
whichever makes the two differentials anticommute (see :func:`sign_twist`).
"""
from __future__ import absolute_import
import collections
import logging
from fractions import Fraction

from tqdm import tqdm

try:
    from cytoolz import memoize
except ImportError:
    from toolz import memoize

from dglaformal.checks import CombinedChecks, rule
from dglaformal.exceptions import PreconditionError, SignConventionError, WindowError
from dglaformal.graded import (
    DGLA, DGLAMorphism, ModuleStructure, adjoint_module, identity_morphism,
)
from dglaformal.linalg import (
    ExactMatrix, Subquotient, Subspace, block_matrix, image_basis, kernel_basis,
)
from dglaformal.multilinear import (
    CochainSpace, chi_sign, chi_sign_pair, normalize_wedge, q_bounds,
)

logger = logging.getLogger(__name__)

NO_TWIST = 'none'
ALTERNATING_TWIST = 'alternating'


def _sign(n):
    return -1 if n % 2 else 1


def as_module(coefficients):
    """ Accept a module, a morphism (adjoint module) or an algebra (adjoint on itself) """
    if isinstance(coefficients, ModuleStructure):
        return coefficients
    if isinstance(coefficients, DGLAMorphism):
        return adjoint_module(coefficients)
    if isinstance(coefficients, DGLA):
        return adjoint_module(identity_morphism(coefficients))
    raise PreconditionError("cannot use %r as coefficients" % (coefficients,))


class BicomplexWindow(object):
    """
    The columns ``0 <= p <= p_max`` of ``CE(L, M)``. The q range of each
    column is derived from the degree bounds of L and M.
    """
    def __init__(self, module, p_max, twist=None, verbose=False):
        if p_max < 0:
            raise PreconditionError("p_max must be nonnegative")
        self.module = as_module(module)
        self.algebra = self.module.algebra
        self.p_max = p_max
        self.verbose = verbose
        self.twist = twist if twist is not None else sign_twist()
        self._source = self.algebra.basis.degrees
        self._target = self.module.space.degrees
        self._cells = {}
        self._vertical = {}
        self._horizontal = {}

    def __repr__(self):
        return "<BicomplexWindow %s p_max=%d twist=%s>" % (
            self.module.name or '?', self.p_max, self.twist)

    def q_range(self, p):
        if p < 0 or p > self.p_max:
            return None
        return q_bounds(self._source, self._target, p)

    def in_window(self, p, q):
        bounds = self.q_range(p)
        return bounds is not None and bounds[0] <= q <= bounds[1]

    def cell(self, p, q):
        key = (p, q)
        if key not in self._cells:
            if self.in_window(p, q):
                space = CochainSpace(self._source, self._target, p, q)
            else:
                space = CochainSpace(self._source, self._target, -1, q)
                space.p = p
            self._cells[key] = space
            logger.debug("cell (%d,%d): dim %d", p, q, space.dim)
        return self._cells[key]

    def cells(self):
        """ Nonzero cells ``(p, q)`` in the window, sorted """
        out = []
        for p in range(self.p_max + 1):
            bounds = self.q_range(p)
            if bounds is None:
                continue
            for q in range(bounds[0], bounds[1] + 1):
                if self.cell(p, q).dim:
                    out.append((p, q))
        return out

    def materialize(self):
        """ Build every cell and both differentials on the whole window """
        cells = self.cells()
        for p, q in tqdm(cells, desc="CE cells", disable=not self.verbose, leave=False):
            self.vertical(p, q)
            if p < self.p_max:
                self.horizontal(p, q)
        logger.info("window of %s built: %d cells up to p=%d",
                    self.module.name or '?', len(cells), self.p_max)
        return self

    def dims(self):
        return {(p, q): self.cell(p, q).dim for p, q in self.cells()}

    def vertical_sign(self, p):
        if self.twist == ALTERNATING_TWIST:
            return _sign(p)
        return 1

    def vertical(self, p, q):
        """ Matrix of dbar: (p, q) -> (p, q + 1) """
        key = (p, q)
        if key not in self._vertical:
            self._vertical[key] = self._build_vertical(p, q)
        return self._vertical[key]

    def horizontal(self, p, q):
        """ Matrix of delta: (p, q) -> (p + 1, q) """
        if p + 1 > self.p_max:
            raise WindowError("delta out of column %d leaves the window (p_max=%d)" % (p, self.p_max))
        key = (p, q)
        if key not in self._horizontal:
            self._horizontal[key] = self._build_horizontal(p, q)
        return self._horizontal[key]

    def total_vertical(self, p, q):
        """ Vertical component of the total differential """
        m = self.vertical(p, q)
        return m if self.vertical_sign(p) == 1 else -m

    def _build_vertical(self, p, q):
        src, dst = self.cell(p, q), self.cell(p, q + 1)
        entries = collections.defaultdict(Fraction)
        if src.dim and dst.dim:
            for col, (mono, s) in enumerate(src.elements):
                for t, c in self.module.differential.get(s, {}).items():
                    entries[(dst.position[(mono, t)], col)] += c
            L = self.algebra
            for mono in dst.monomials:
                prefix = 0
                for i, x in enumerate(mono):
                    sign_i = -_sign(q + prefix)
                    for j, c in L.differential.get(x, {}).items():
                        sign, canon = normalize_wedge(self._source, mono[:i] + (j,) + mono[i + 1:])
                        if not sign:
                            continue
                        for s, col in src.by_monomial.get(canon, ()):
                            entries[(dst.position[(mono, s)], col)] += sign_i * sign * c
                    prefix += self._source[x]
        return ExactMatrix.from_entries(entries, (dst.dim, src.dim))

    def _build_horizontal(self, p, q):
        src, dst = self.cell(p, q), self.cell(p + 1, q)
        entries = collections.defaultdict(Fraction)
        if src.dim and dst.dim:
            L, mod = self.algebra, self.module
            n = p + 1
            action_sign = _sign(q + n - 1)
            bracket_sign = _sign(q + n)
            for mono in dst.monomials:
                degrees = [self._source[x] for x in mono]
                for i in range(1, n + 1):
                    rest = mono[:i - 1] + mono[i:]
                    sign, canon = normalize_wedge(self._source, rest)
                    if not sign:
                        continue
                    coef = action_sign * chi_sign(degrees, i) * sign
                    for s, col in src.by_monomial.get(canon, ()):
                        for t, c in mod.action.get((s, mono[i - 1]), {}).items():
                            entries[(dst.position[(mono, t)], col)] += coef * c
                for i in range(1, n + 1):
                    for j in range(i + 1, n + 1):
                        bracket = L.bracket.get((mono[i - 1], mono[j - 1]))
                        if not bracket:
                            continue
                        rest = mono[:i - 1] + mono[i:j - 1] + mono[j:]
                        chi = bracket_sign * chi_sign_pair(degrees, i, j)
                        for k, c in bracket.items():
                            sign, canon = normalize_wedge(self._source, rest + (k,))
                            if not sign:
                                continue
                            for s, col in src.by_monomial.get(canon, ()):
                                entries[(dst.position[(mono, s)], col)] += chi * sign * c
        return ExactMatrix.from_entries(entries, (dst.dim, src.dim))

    def delta_bar(self, p, q, vector):
        return self.vertical(p, q).apply(vector)

    def delta(self, p, q, vector):
        return self.horizontal(p, q).apply(vector)

    def total_slice(self, n):
        return TotalComplexSlice(self, n)

    def check_identities(self):
        """ dbar^2 = 0, delta^2 = 0 and D^2 = 0 on the interior of the window """
        report = _window_checks(self)
        report.subject = "CE(%s) p<=%d" % (self.module.name or '?', self.p_max)
        report.extra['twist'] = self.twist
        return report


def build_window(algebra, coefficients=None, p_max=2, verbose=False):
    """
    The window of ``CE(algebra, coefficients)``; ``coefficients`` is a
    module, a morphism out of ``algebra`` or None for the adjoint module.
    """
    if coefficients is None:
        coefficients = algebra
    module = as_module(coefficients)
    if module.algebra != algebra:
        raise PreconditionError("coefficients are not a module over %s" % (algebra.name or 'the algebra'))
    return BicomplexWindow(module, p_max, verbose=verbose)


def _interior(window):
    for p, q in window.cells():
        yield p, q


@rule('dbar-squared')
def _check_vertical_squared(window):
    for p, q in _interior(window):
        if not (window.vertical(p, q + 1) * window.vertical(p, q)).is_zero():
            yield (p, q), "dbar o dbar != 0"


@rule('delta-squared')
def _check_horizontal_squared(window):
    for p, q in _interior(window):
        if p + 2 <= window.p_max:
            if not (window.horizontal(p + 1, q) * window.horizontal(p, q)).is_zero():
                yield (p, q), "delta o delta != 0"


@rule('total-squared')
def _check_total_squared(window):
    for p, q in _interior(window):
        if p + 1 <= window.p_max:
            mixed = (window.horizontal(p, q + 1) * window.total_vertical(p, q)
                     + window.total_vertical(p + 1, q) * window.horizontal(p, q))
            if not mixed.is_zero():
                yield (p, q), "delta dbar and dbar delta do not cancel with twist %s" % window.twist


_window_checks = CombinedChecks(
    _check_vertical_squared, _check_horizontal_squared, _check_total_squared,
)


def _twist_probe():
    # affine line: [a, b] = b, d a = b, a in degree 0
    return DGLA.from_names(
        [('a', 0), ('b', 1)],
        differential={'a': {'b': 1}},
        bracket={('a', 'b'): {'b': 1}},
        name='affine',
    )


def decide_twist(window):
    """
    Compare ``delta dbar + dbar delta`` and ``delta dbar - dbar delta`` on
    the whole window and return the twist that makes D square to zero.
    """
    anticommute = commute = True
    for p, q in window.cells():
        if p + 1 > window.p_max:
            continue
        a = window.horizontal(p, q + 1) * window.vertical(p, q)
        b = window.vertical(p + 1, q) * window.horizontal(p, q)
        anticommute = anticommute and (a + b).is_zero()
        commute = commute and (a - b).is_zero()
    if anticommute and commute:
        return None
    if anticommute:
        return NO_TWIST
    if commute:
        return ALTERNATING_TWIST
    raise SignConventionError("delta and dbar neither commute nor anticommute")


@memoize
def sign_twist():
    """ The twist shared by every window, decided once on a probe algebra """
    window = BicomplexWindow(_twist_probe(), 3, twist=NO_TWIST)
    twist = decide_twist(window)
    if twist is None:
        raise SignConventionError("probe algebra does not separate the twists")
    logger.debug("CE total differential twist: %s", twist)
    return twist


class TotalComplexSlice(object):
    """
    Degree ``n`` of the product totalization truncated to the window, with
    the total differential into degree ``n + 1``.
    """
    def __init__(self, window, n):
        self.window = window
        self.n = n
        self.components = [(p, n - p) for p in range(window.p_max + 1)
                           if window.cell(p, n - p).dim]
        self.sizes = [window.cell(p, q).dim for p, q in self.components]

    @property
    def dim(self):
        return sum(self.sizes)

    def differential(self):
        w = self.window
        target = TotalComplexSlice(w, self.n + 1)
        row_pos = {pq: k for k, pq in enumerate(target.components)}
        blocks = {}
        for col, (p, q) in enumerate(self.components):
            if (p, q + 1) in row_pos:
                blocks[(row_pos[(p, q + 1)], col)] = w.total_vertical(p, q)
            if p + 1 <= w.p_max and (p + 1, q) in row_pos:
                blocks[(row_pos[(p + 1, q)], col)] = w.horizontal(p, q)
        return block_matrix(blocks, target.sizes, self.sizes)


def total_cohomology_dim(window, n):
    """ dim H^n of the truncated totalization (a quotient complex of Tot) """
    here = TotalComplexSlice(window, n)
    below = TotalComplexSlice(window, n - 1)
    out = here.differential()
    inc = below.differential()
    return here.dim - out.rank() - inc.rank()


def ce_cohomology_trivial_d(module, n, p_max):
    """
    For zero differentials the total complex splits into the columns
    ``(CE^{*,q}, delta)``. Returns ``{p: Subquotient}`` for the cells
    ``(p, n - p)``, ``p <= p_max``.
    """
    module = as_module(module)
    if not module.algebra.has_zero_differential() or not module.has_zero_differential():
        raise PreconditionError("ce_cohomology_trivial_d needs zero differentials")
    window = BicomplexWindow(module, p_max + 1)
    result = {}
    for p in range(p_max + 1):
        q = n - p
        cell = window.cell(p, q)
        cycles = kernel_basis(window.horizontal(p, q)) if cell.dim else Subspace.zero(0)
        if p > 0 and window.cell(p - 1, q).dim and cell.dim:
            boundaries = image_basis(window.horizontal(p - 1, q))
        else:
            boundaries = Subspace.zero(cell.dim)
        result[p] = Subquotient(cycles, boundaries)
    return result
