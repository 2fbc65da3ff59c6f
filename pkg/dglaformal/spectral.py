# -*- coding: utf-8 -*-
"""
The spectral sequence of the first (column) filtration of a CE window.

``E_r^{p,q}`` is computed as ``Z_r / B_r`` inside the cell ``(p, q)``:

* ``Z_r`` are the leading rungs ``a_0`` of ladders ``a_0, .., a_{r-1}``,
  ``a_i`` in ``(p+i, q-i)``, with ``D(a_0 + .. + a_{r-1})`` vanishing in
  the columns ``p .. p+r-1``;
* ``B_r`` are the column ``p`` components of ``D y`` for ``y`` living in
  the columns ``p-r+1 .. p`` whose image vanishes below column ``p``.

``d_r`` sends the class of a ladder to the class of ``delta(a_{r-1})``.
A cell is known on page r when ``p + r - 1 <= p_max``; ``d_r`` out of it
is computable when ``p + r <= p_max``.
"""
from __future__ import absolute_import
import logging

from tqdm import tqdm

from dglaformal.checks import CombinedChecks, rule
from dglaformal.ce_complex import BicomplexWindow, as_module
from dglaformal.exceptions import PreconditionError, SignConventionError, WindowError
from dglaformal.graded import cohomology, compose, module_cohomology
from dglaformal.linalg import (
    ExactMatrix, Subquotient, Subspace, add_vectors, block_matrix, image_basis,
    induced_map, is_zero_vector, kernel_basis, scale_vector, solve, unit_vector,
    zero_vector,
)
from dglaformal.multilinear import expand_wedge, hom_space_basis
from dglaformal.utils import lc_add, lc_scale, parse_sparse_vector, sparse_vector

logger = logging.getLogger(__name__)


class LadderClass(object):
    """
    A zig-zag ladder starting at ``(p, q)``. ``target`` is ``delta`` of the
    last rung, a cochain at ``(p + r, q - r + 1)``.
    """
    def __init__(self, p, q, r, rungs, target=None):
        self.p = p
        self.q = q
        self.r = r
        self.rungs = [tuple(a) for a in rungs]
        self.target = tuple(target) if target is not None else None

    @property
    def target_cell(self):
        return self.p + self.r, self.q - self.r + 1

    def to_dict(self):
        return {
            'start': [self.p, self.q],
            'r': self.r,
            'rungs': [sparse_vector(a) for a in self.rungs],
            'target_cell': list(self.target_cell),
            'target': sparse_vector(self.target) if self.target is not None else None,
        }

    @classmethod
    def from_dict(cls, data, window):
        p, q = data['start']
        r = data['r']
        rungs = [parse_sparse_vector(v, window.cell(p + i, q - i).dim)
                 for i, v in enumerate(data['rungs'])]
        target = None
        if data.get('target') is not None:
            tp, tq = data['target_cell']
            target = parse_sparse_vector(data['target'], window.cell(tp, tq).dim)
        return cls(p, q, r, rungs, target)

    def __repr__(self):
        return "<LadderClass (%d,%d) r=%d>" % (self.p, self.q, self.r)


class PageCell(object):
    def __init__(self, p, q, r, known, quotient=None):
        self.p = p
        self.q = q
        self.r = r
        self.known = known
        self.quotient = quotient

    @property
    def dim(self):
        if not self.known:
            return None
        return self.quotient.dim

    def __repr__(self):
        return "<PageCell E_%d^(%d,%d) %s>" % (
            self.r, self.p, self.q, self.dim if self.known else 'unknown')


class SpectralSequence(object):
    """
    Lazily computed pages of the column filtration of a window. All cycle
    and boundary spaces are cached.
    """
    def __init__(self, window):
        self.window = window
        self._kernels = {}
        self._cycles = {}
        self._boundaries = {}
        self._pages = {}

    @property
    def p_max(self):
        return self.window.p_max

    def is_known(self, p, q, r):
        return 0 <= p and p + max(r, 1) - 1 <= self.p_max

    def _dims(self, p, q, r):
        return [self.window.cell(p + i, q - i).dim for i in range(r)]

    def _ladder_kernel(self, p, q, r):
        """ Kernel of the ladder equations: columns are full ladders """
        key = (p, q, r)
        if key not in self._kernels:
            if p + r - 1 > self.p_max:
                raise WindowError("ladders of length %d from column %d leave the window" % (r, p))
            w = self.window
            col_sizes = self._dims(p, q, r)
            row_sizes = [w.cell(p + i, q - i + 1).dim for i in range(r)]
            blocks = {(0, 0): w.total_vertical(p, q)}
            for i in range(1, r):
                blocks[(i, i - 1)] = w.horizontal(p + i - 1, q - i + 1)
                blocks[(i, i)] = w.total_vertical(p + i, q - i)
            system = block_matrix(blocks, row_sizes, col_sizes)
            self._kernels[key] = kernel_basis(system)
        return self._kernels[key]

    def cycles(self, p, q, r):
        """ Z_r at (p, q) as a subspace of the cell """
        key = (p, q, r)
        if key not in self._cycles:
            dim = self.window.cell(p, q).dim
            if r == 0:
                self._cycles[key] = Subspace.full(dim)
            else:
                kernel = self._ladder_kernel(p, q, r)
                self._cycles[key] = Subspace.span(dim, [v[:dim] for v in kernel.basis])
        return self._cycles[key]

    def boundaries(self, p, q, r):
        """ B_r at (p, q) as a subspace of the cell """
        key = (p, q, r)
        if key not in self._boundaries:
            w = self.window
            dim = w.cell(p, q).dim
            vectors = []
            if r >= 1 and dim:
                below = w.cell(p, q - 1)
                if below.dim:
                    vectors.extend(image_basis(w.total_vertical(p, q - 1)).basis)
                lo = max(0, p - r + 1)
                if lo < p:
                    n = p + q
                    length = p - lo
                    kernel = self._ladder_kernel(lo, n - 1 - lo, length)
                    offset = sum(self._dims(lo, n - 1 - lo, length)[:-1])
                    horizontal = w.horizontal(p - 1, q)
                    last = horizontal.ncols
                    for v in kernel.basis:
                        vectors.append(horizontal.apply(v[offset:offset + last]))
            self._boundaries[key] = Subspace.span(dim, vectors)
        return self._boundaries[key]

    def quotient(self, p, q, r, cycles_page=None):
        k = r if cycles_page is None else cycles_page
        return Subquotient(self.cycles(p, q, k), self.boundaries(p, q, r))

    def cell(self, p, q, r):
        if not self.is_known(p, q, r):
            return PageCell(p, q, r, False)
        return PageCell(p, q, r, True, self.quotient(p, q, r))

    def ladder(self, p, q, r, leading):
        """
        Rungs of a ladder of length r whose leading rung is ``leading``,
        or None when ``leading`` is not in Z_r.
        """
        if r == 0:
            return [tuple(leading)]
        kernel = self._ladder_kernel(p, q, r)
        dim = self.window.cell(p, q).dim
        if not kernel.dim:
            return [tuple(leading)] + [zero_vector(d) for d in self._dims(p, q, r)[1:]] \
                if is_zero_vector(leading) else None
        projection = ExactMatrix.from_columns([v[:dim] for v in kernel.basis], dim)
        coefficients = solve(projection, tuple(leading))
        if coefficients is None:
            return None
        full = zero_vector(kernel.ambient_dim)
        for c, v in zip(coefficients, kernel.basis):
            if c:
                full = add_vectors(full, scale_vector(c, v))
        rungs, start = [], 0
        for d in self._dims(p, q, r):
            rungs.append(full[start:start + d])
            start += d
        return rungs

    def differential_image(self, p, q, r, leading):
        """ ``delta`` of the last rung: a representative of ``d_r [leading]`` """
        rungs = self.ladder(p, q, r, leading)
        if rungs is None:
            raise WindowError("vector at (%d,%d) does not prolong to a ladder of length %d" % (p, q, r))
        if r == 0:
            return rungs, self.window.total_vertical(p, q).apply(rungs[0])
        last = rungs[-1]
        return rungs, self.window.horizontal(p + r - 1, q - r + 1).apply(last)

    def target_quotient(self, p, q, r):
        """
        Quotient receiving ``d_r`` out of (p, q). When the target cell is
        not known on page r, the largest computable cycle space is used;
        it contains Z_r, so the map into it stays injective on E_r.
        """
        if r == 0:
            return self.quotient(p, q + 1, 0)
        tp, tq = p + r, q - r + 1
        k = min(r, self.p_max - tp + 1)
        return self.quotient(tp, tq, r, cycles_page=k)

    def can_differentiate(self, p, q, r):
        return self.is_known(p, q, r) and p + r <= self.p_max

    def d_matrix(self, p, q, r):
        """ Matrix of d_r on quotient coordinates, (p, q) -> (p + r, q - r + 1) """
        if not self.can_differentiate(p, q, r):
            raise WindowError("d_%d out of (%d,%d) needs p + r <= p_max = %d" % (r, p, q, self.p_max))
        source = self.quotient(p, q, r)
        target = self.target_quotient(p, q, r)
        columns = []
        for rep in source.representatives:
            _, image = self.differential_image(p, q, r, rep)
            columns.append(target.project(image))
        return ExactMatrix.from_columns(columns, target.dim)

    def page(self, r):
        if r not in self._pages:
            self._pages[r] = Page(self, r)
        return self._pages[r]


class Page(object):
    """ All cells of one page that lie in the window, known or not """
    def __init__(self, sequence, r):
        self.sequence = sequence
        self.r = r
        self._cells = {}
        cells = sequence.window.cells()
        for p, q in tqdm(cells, desc="E_%d" % r, disable=not sequence.window.verbose, leave=False):
            self._cells[(p, q)] = sequence.cell(p, q, r)
        logger.info("page E_%d: %d cells, %d known", r, len(cells),
                    sum(1 for c in self._cells.values() if c.known))

    def __getitem__(self, pq):
        if pq in self._cells:
            return self._cells[pq]
        return PageCell(pq[0], pq[1], self.r, self.sequence.is_known(pq[0], pq[1], self.r),
                        Subquotient(Subspace.zero(0), Subspace.zero(0)))

    def cells(self):
        return sorted(self._cells)

    def dims(self):
        """ ``{(p, q): dim or None}`` """
        return {pq: c.dim for pq, c in sorted(self._cells.items())}

    def d_matrix(self, p, q):
        return self.sequence.d_matrix(p, q, self.r)

    def differentials(self):
        """ Nonzero-source differentials computable on this page """
        out = {}
        for p, q in self.cells():
            cell = self._cells[(p, q)]
            if cell.known and cell.dim and self.sequence.can_differentiate(p, q, self.r):
                out[(p, q)] = self.d_matrix(p, q)
        return out


def page(window, r):
    return SpectralSequence(window).page(r)


def d_r_matrix(page, p, q):
    return page.d_matrix(p, q)


def kunneth_table(window):
    """
    ``{(p, q): (dim E_1, dim Hom^q(H(L)^p, H(M)))}`` on the known E_1 cells.
    """
    module = window.module
    HL = cohomology(module.algebra)
    HM, _ = module_cohomology(module, HL)
    source, target = HL.basis().degrees, HM.basis().degrees
    sequence = SpectralSequence(window)
    table = {}
    # a nonzero Hom^q(H(L)^p, H(M)) forces a nonzero cell, so window cells suffice
    for p, q in window.cells():
        if sequence.is_known(p, q, 1):
            table[(p, q)] = (sequence.cell(p, q, 1).dim, len(hom_space_basis(source, target, p, q)))
    return table


@rule('ladder-start')
def _check_ladder_start(window, ladder):
    if not is_zero_vector(window.total_vertical(ladder.p, ladder.q).apply(ladder.rungs[0])):
        yield (ladder.p, ladder.q), "dbar of the leading rung is not zero"


@rule('ladder-rungs')
def _check_ladder_rungs(window, ladder):
    p, q = ladder.p, ladder.q
    for i in range(1, len(ladder.rungs)):
        h = window.horizontal(p + i - 1, q - i + 1).apply(ladder.rungs[i - 1])
        v = window.total_vertical(p + i, q - i).apply(ladder.rungs[i])
        if not is_zero_vector(add_vectors(h, v)):
            yield (p + i, q - i + 1), "rung %d does not cancel delta of rung %d" % (i, i - 1)


@rule('ladder-target')
def _check_ladder_target(window, ladder):
    if ladder.target is None:
        return
    p, q, r = ladder.p, ladder.q, ladder.r
    image = window.horizontal(p + r - 1, q - r + 1).apply(ladder.rungs[-1])
    if tuple(image) != ladder.target:
        yield ladder.target_cell, "target is not delta of the last rung"
        return
    tp, tq = ladder.target_cell
    if SpectralSequence(window).boundaries(tp, tq, r).contains(image):
        yield ladder.target_cell, "target class vanishes on page %d" % r


_ladder_checks = CombinedChecks(_check_ladder_start, _check_ladder_rungs, _check_ladder_target)


def check_ladder(window, ladder):
    """
    Re-check a certificate by exact evaluation: the ladder equations hold
    and its target is not a page-r boundary.
    """
    report = _ladder_checks(window, ladder)
    report.subject = "ladder (%d,%d) r=%d" % (ladder.p, ladder.q, ladder.r)
    return report


def _boundary_projection(L, H, k):
    """
    Matrix of the projection of L^k onto the boundaries, along the class
    representatives and a complement of the cycles.
    """
    part = H.parts[k]
    n = part.ambient_dim
    basis = list(part.boundaries.basis) + list(part.representatives)
    span = Subspace(n, basis)
    for i in range(n):
        e = unit_vector(n, i)
        if not span.contains(e):
            basis.append(e)
            span = Subspace(n, basis)
    frame = Subspace(n, basis)
    nb = part.boundaries.dim
    columns = []
    for i in range(n):
        coords = frame.coordinates(unit_vector(n, i))
        out = zero_vector(n)
        for c, b in zip(coords[:nb], part.boundaries.basis):
            if c:
                out = add_vectors(out, scale_vector(c, b))
        columns.append(out)
    return ExactMatrix.from_columns(columns, n)


def euler_cochain(f, window):
    """
    Cochain in CE^{1,0} lifting the Euler derivation ``x -> |x| f(x)`` of
    cohomology to a chain map: ``x -> |x| f(x) - f(pi_B x)``.
    """
    L = f.source
    if window.module.algebra != L:
        raise PreconditionError("window is not over the source of the morphism")
    H = cohomology(L)
    projections = {k: _boundary_projection(L, H, k) for k in H.parts}

    def value(mono):
        x = mono[0]
        k = L.basis.degree(x)
        idx = L.basis.indices_of_degree(k)
        pi = projections[k].column(idx.index(x))
        boundary = {idx[t]: c for t, c in enumerate(pi) if c}
        return lc_add(lc_scale(k, f.image(x)), lc_scale(-1, f.apply(boundary)))

    return window.cell(1, 0).from_function(value)


class EulerClass(object):
    def __init__(self, cochain, coordinates, survival):
        self.cochain = cochain
        self.coordinates = coordinates
        self.survival = survival

    @property
    def is_zero(self):
        return is_zero_vector(self.coordinates)

    def __repr__(self):
        return "<EulerClass E_2 coordinates=%s>" % ([str(c) for c in self.coordinates],)


def euler_class(f, window, sequence=None):
    """ The Euler class of ``f`` on E_2^{1,0}, with d_1 checked """
    if window.p_max < 2:
        raise WindowError("the Euler class needs p_max >= 2")
    sequence = sequence or SpectralSequence(window)
    eps = euler_cochain(f, window)
    if not is_zero_vector(window.total_vertical(1, 0).apply(eps)):
        raise SignConventionError("Euler cochain is not a dbar-cocycle")
    if not sequence.boundaries(2, 0, 1).contains(window.horizontal(1, 0).apply(eps)):
        raise SignConventionError("d_1 of the Euler class is not zero")
    coordinates = sequence.quotient(1, 0, 2).project(eps)
    return EulerClass(eps, coordinates, 2)


class EulerObstruction(object):
    """
    Outcome of the Euler-class iteration: ``r`` of the first nonzero
    ``d_r(e_f)`` with its ladder, or None with ``checked_up_to``.
    """
    def __init__(self, r, certificate, checked_up_to, undetermined=False):
        self.r = r
        self.certificate = certificate
        self.checked_up_to = checked_up_to
        self.undetermined = undetermined

    @property
    def found(self):
        return self.r is not None

    def to_dict(self):
        return {
            'obstruction_r': self.r,
            'checked_up_to': self.checked_up_to,
            'undetermined': self.undetermined,
            'certificate': self.certificate.to_dict() if self.certificate is not None else None,
        }

    def __repr__(self):
        if self.found:
            return "<EulerObstruction d_%d(e) != 0>" % self.r
        return "<EulerObstruction none up to r=%d>" % self.checked_up_to


def _representative_in(sequence, eps, r):
    """ z in Z_r with eps - z in B_{r-1} at (1, 0) """
    if r == 1:
        return eps
    cycles = sequence.cycles(1, 0, r)
    boundaries = sequence.boundaries(1, 0, r - 1)
    dim = len(eps)
    columns = list(cycles.basis) + list(boundaries.basis)
    if not columns:
        return eps if is_zero_vector(eps) else None
    coefficients = solve(ExactMatrix.from_columns(columns, dim), eps)
    if coefficients is None:
        return None
    z = zero_vector(dim)
    for c, v in zip(coefficients[:cycles.dim], cycles.basis):
        if c:
            z = add_vectors(z, scale_vector(c, v))
    return z


def euler_obstruction(f, r_max=4, p_cutoff=None, window=None, verbose=False):
    """
    Iterate ``d_r(e_f)`` for r = 2, 3, ..: by partial degeneration, as long
    as they vanish the earlier pages agree with E_2 along the way. Stops at
    the first nonzero ``d_r(e_f)`` and returns its ladder.
    """
    if window is None:
        p_max = p_cutoff if p_cutoff is not None else r_max + 2
        window = BicomplexWindow(as_module(f), p_max, verbose=verbose)
    sequence = SpectralSequence(window)
    eps = euler_cochain(f, window)
    if not is_zero_vector(window.total_vertical(1, 0).apply(eps)):
        raise SignConventionError("Euler cochain is not a dbar-cocycle")
    checked = 1
    for r in range(1, r_max + 1):
        if r > window.p_max - 1:
            logger.info("Euler obstruction undetermined beyond r=%d (p_max=%d)", checked, window.p_max)
            return EulerObstruction(None, None, checked, undetermined=True)
        z = _representative_in(sequence, eps, r)
        if z is None:
            raise SignConventionError("Euler class does not survive to page %d" % r)
        rungs, image = sequence.differential_image(1, 0, r, z)
        if not sequence.boundaries(1 + r, 1 - r, r).contains(image):
            if r == 1:
                raise SignConventionError("d_1 of the Euler class is not zero")
            logger.info("d_%d(e_f) != 0", r)
            return EulerObstruction(r, LadderClass(1, 0, r, rungs, image), r)
        checked = r
    logger.info("no Euler obstruction up to r=%d", r_max)
    return EulerObstruction(None, None, r_max)


class PageMorphism(object):
    """
    A filtration preserving chain map between two windows, given cell by
    cell, and the maps it induces on every page.
    """
    def __init__(self, source, target, cell_map):
        self.source = source
        self.target = target
        self._cell_map = cell_map
        self._cache = {}

    def cochain_map(self, p, q):
        if (p, q) not in self._cache:
            self._cache[(p, q)] = self._cell_map(p, q)
        return self._cache[(p, q)]

    def on_page(self, r, p, q):
        """ Induced matrix E_r^{p,q} -> E_r^{p,q}; both cells must be known """
        if not (self.source.is_known(p, q, r) and self.target.is_known(p, q, r)):
            raise WindowError("E_%d^(%d,%d) is not known on both sides" % (r, p, q))
        return induced_map(self.cochain_map(p, q),
                           self.source.quotient(p, q, r), self.target.quotient(p, q, r))

    def is_isomorphism(self, r, p, q):
        m = self.on_page(r, p, q)
        return m.nrows == m.ncols and m.rank() == m.ncols

    def is_injective(self, r, p, q):
        m = self.on_page(r, p, q)
        return m.rank() == m.ncols

    def apply(self, p, q, vector):
        return self.cochain_map(p, q).apply(vector)


def postcompose_map(g, source_window, target_window):
    """ ``phi -> g o phi`` for a module map ``g`` (a DGLA morphism) """
    def cell_map(p, q):
        src = source_window.cell(p, q)
        dst = target_window.cell(p, q)
        entries = {}
        for col, (mono, s) in enumerate(src.elements):
            for t, c in g.image(s).items():
                entries[(dst.position[(mono, t)], col)] = c
        return ExactMatrix.from_entries(entries, (dst.dim, src.dim))
    return cell_map


def precompose_map(f, source_window, target_window):
    """ ``phi -> phi o f^p`` for a morphism ``f`` of the acting algebras """
    def cell_map(p, q):
        src = source_window.cell(p, q)
        dst = target_window.cell(p, q)
        entries = {}
        for mono in dst.monomials:
            expansion = expand_wedge(f.target.basis.degrees, [f.image(x) for x in mono])
            for source_mono, c in expansion.items():
                for s, col in src.by_monomial.get(source_mono, ()):
                    key = (dst.position[(mono, s)], col)
                    entries[key] = entries.get(key, 0) + c
        return ExactMatrix.from_entries(entries, (dst.dim, src.dim))
    return cell_map


def map_pages(morphism, source, target, mode='post'):
    """
    Morphism of spectral sequences induced by post-composition with a module
    map (``mode='post'``) or pre-composition with an algebra map (``'pre'``).
    """
    if not isinstance(source, SpectralSequence):
        source = SpectralSequence(source)
    if not isinstance(target, SpectralSequence):
        target = SpectralSequence(target)
    if mode == 'post':
        cell_map = postcompose_map(morphism, source.window, target.window)
    elif mode == 'pre':
        cell_map = precompose_map(morphism, source.window, target.window)
    else:
        raise PreconditionError("unknown page map mode %r" % mode)
    return PageMorphism(source, target, cell_map)


def euler_functoriality(f, g, p_max=2):
    """
    Coordinates of ``g_*(e_f)``, ``e_{gf}`` and ``f^*(e_g)`` in
    E_2^{1,0}(L, N) for ``f: L -> M`` and ``g: M -> N``.
    """
    gf = compose(g, f)
    w_f = BicomplexWindow(as_module(f), p_max)
    w_g = BicomplexWindow(as_module(g), p_max)
    w_gf = BicomplexWindow(as_module(gf), p_max)
    target = SpectralSequence(w_gf)
    quotient = target.quotient(1, 0, 2)
    pushed = postcompose_map(g, w_f, w_gf)(1, 0).apply(euler_cochain(f, w_f))
    pulled = precompose_map(f, w_g, w_gf)(1, 0).apply(euler_cochain(g, w_g))
    direct = euler_cochain(gf, w_gf)
    return quotient.project(pushed), quotient.project(direct), quotient.project(pulled)
