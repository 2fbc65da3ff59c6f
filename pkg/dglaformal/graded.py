# -*- coding: utf-8 -*-
"""
Finite-dimensional graded vector spaces, DG-Lie algebras, their morphisms
and modules, and cohomology with the induced graded Lie structure.

Structure constants are stored as sparse linear combinations
``{index: Fraction}`` over the declared basis. Graded conventions:

* antisymmetry  ``[x, y] = -(-1)^(|x||y|) [y, x]``;
* Jacobi        ``[x, [y, z]] = [[x, y], z] + (-1)^(|x||y|) [y, [x, z]]``;
* Leibniz       ``d[x, y] = [dx, y] + (-1)^|x| [x, dy]``;
* right modules ``m*[x, y] = (m*x)*y - (-1)^(|x||y|) (m*y)*x``.
"""
from __future__ import absolute_import
import logging
from fractions import Fraction

try:
    from cytoolz import groupby
except ImportError:
    from toolz import groupby

from dglaformal.checks import CombinedChecks, rule
from dglaformal.exceptions import PreconditionError, WellDefinednessError
from dglaformal.linalg import (
    ExactMatrix, Subspace, Subquotient, kernel_basis, image_basis, induced_map,
    row_reduce,
)
from dglaformal.utils import (
    lc_add, lc_scale, lc_to_vector, vector_to_lc, format_lincomb,
)

logger = logging.getLogger(__name__)


def koszul(a, b):
    """ (-1)^(a*b) """
    return -1 if (a * b) % 2 else 1


def _normalize_table(table):
    out = {}
    for key, comb in (table or {}).items():
        comb = {int(i): Fraction(c) for i, c in comb.items() if Fraction(c)}
        if comb:
            out[key] = comb
    return out


class GradedBasis(object):
    """
    Ordered list of ``(name, degree)`` generators with unique names.
    """
    def __init__(self, generators):
        self.generators = tuple((str(name), int(degree)) for name, degree in generators)
        self._index = {}
        for i, (name, _) in enumerate(self.generators):
            if name in self._index:
                raise PreconditionError("duplicate generator name %r" % name)
            self._index[name] = i
        self._by_degree = groupby(lambda i: self.generators[i][1], range(len(self.generators)))

    @property
    def names(self):
        return [name for name, _ in self.generators]

    @property
    def degrees(self):
        return [degree for _, degree in self.generators]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __eq__(self, other):
        return isinstance(other, GradedBasis) and self.generators == other.generators

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return "GradedBasis(%s)" % ", ".join("%s:%d" % g for g in self.generators)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise PreconditionError("unknown generator %r" % name)

    def __contains__(self, name):
        return name in self._index

    def name(self, i):
        return self.generators[i][0]

    def degree(self, i):
        return self.generators[i][1]

    def indices_of_degree(self, k):
        return list(self._by_degree.get(k, []))

    def dim(self, k):
        return len(self._by_degree.get(k, []))

    def degree_set(self):
        return sorted(self._by_degree)

    @property
    def min_degree(self):
        return min(self._by_degree) if self._by_degree else None

    @property
    def max_degree(self):
        return max(self._by_degree) if self._by_degree else None

    def degree_of(self, comb):
        """ Degree of a homogeneous combination, None if zero or mixed """
        degrees = set(self.degree(i) for i in comb)
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def format(self, comb):
        return format_lincomb(comb, self.names)


def differential_block(basis, differential, k):
    """
    Matrix of the degree ``k`` part of a differential,
    shape dim(k + 1) x dim(k). Components of wrong degree are ignored.
    """
    src = basis.indices_of_degree(k)
    dst = basis.indices_of_degree(k + 1)
    dst_pos = {j: r for r, j in enumerate(dst)}
    entries = {}
    for c, i in enumerate(src):
        for j, coef in differential.get(i, {}).items():
            if j in dst_pos:
                entries[(dst_pos[j], c)] = coef
    return ExactMatrix.from_entries(entries, (len(dst), len(src)))


class DGLA(object):
    """
    A DG-Lie algebra given by structure constants.

    ``differential`` maps a generator index to the combination ``d(v_i)``;
    ``bracket`` maps ``(i, j)`` to ``[v_i, v_j]``. Missing ``(j, i)`` entries
    are completed by graded antisymmetry; when both orders are supplied they
    must agree. No axiom is enforced here: use :func:`validate_dgla`.
    """
    def __init__(self, basis, differential=None, bracket=None, name=None, notes=()):
        if not isinstance(basis, GradedBasis):
            basis = GradedBasis(basis)
        self.basis = basis
        self.name = name
        self.notes = tuple(notes)
        self.differential = _normalize_table(differential)
        self.bracket = self._complete(_normalize_table(bracket))

    def _complete(self, given):
        table = dict(given)
        for (i, j), comb in given.items():
            if i == j:
                continue
            sign = -koszul(self.basis.degree(i), self.basis.degree(j))
            mirrored = lc_scale(sign, comb)
            if (j, i) in given:
                if given[(j, i)] != mirrored:
                    raise PreconditionError(
                        "brackets [%s,%s] and [%s,%s] are not graded antisymmetric" % (
                            self.basis.name(i), self.basis.name(j),
                            self.basis.name(j), self.basis.name(i)))
            else:
                table[(j, i)] = mirrored
        return table

    @classmethod
    def from_names(cls, generators, differential=None, bracket=None, name=None):
        """
        Convenience constructor keyed by generator names::

            >>> L = DGLA.from_names([('x', 1), ('y', 2)], bracket={('x', 'x'): {'y': 1}})
            >>> L.br_basis(0, 0) == {1: 1}
            True
        """
        basis = GradedBasis(generators)
        idx = basis.index

        def comb(named):
            return {idx(n): c for n, c in named.items()}

        return cls(
            basis,
            {idx(n): comb(v) for n, v in (differential or {}).items()},
            {(idx(a), idx(b)): comb(v) for (a, b), v in (bracket or {}).items()},
            name=name,
        )

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        return (isinstance(other, DGLA) and self.basis == other.basis
                and self.differential == other.differential
                and self.bracket == other.bracket)

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def __repr__(self):
        return "<DGLA %s: %r>" % (self.name or '?', self.basis)

    def d_basis(self, i):
        return dict(self.differential.get(i, {}))

    def d(self, comb):
        return lc_add(*[lc_scale(c, self.differential.get(i, {})) for i, c in comb.items()])

    def br_basis(self, i, j):
        return dict(self.bracket.get((i, j), {}))

    def br(self, u, v):
        terms = []
        for i, a in u.items():
            for j, b in v.items():
                comb = self.bracket.get((i, j))
                if comb:
                    terms.append(lc_scale(a * b, comb))
        return lc_add(*terms)

    def d_block(self, k):
        return differential_block(self.basis, self.differential, k)

    def d_full(self):
        entries = {}
        for i, comb in self.differential.items():
            for j, c in comb.items():
                entries[(j, i)] = c
        return ExactMatrix.from_entries(entries, (self.dim, self.dim))

    def is_abelian(self):
        return not self.bracket

    def has_zero_differential(self):
        return not self.differential

    def degree_of(self, comb):
        return self.basis.degree_of(comb)


def zero_algebra(name='0'):
    return DGLA([], name=name)


def _pairs(L):
    n = L.dim
    return [(i, j) for i in range(n) for j in range(n)]


@rule('d-degree')
def _check_d_degree(L):
    for i, comb in sorted(L.differential.items()):
        for j in sorted(comb):
            if L.basis.degree(j) != L.basis.degree(i) + 1:
                yield (L.basis.name(i),), "d(%s) has a component %s of degree %d, expected %d" % (
                    L.basis.name(i), L.basis.name(j), L.basis.degree(j), L.basis.degree(i) + 1)


@rule('bracket-degree')
def _check_bracket_degree(L):
    for (i, j), comb in sorted(L.bracket.items()):
        if i > j:
            continue
        expected = L.basis.degree(i) + L.basis.degree(j)
        for k in sorted(comb):
            if L.basis.degree(k) != expected:
                yield (L.basis.name(i), L.basis.name(j)), \
                    "[%s,%s] has a component %s of degree %d, expected %d" % (
                        L.basis.name(i), L.basis.name(j), L.basis.name(k),
                        L.basis.degree(k), expected)


@rule('d-squared')
def _check_d_squared(L):
    for i in range(L.dim):
        dd = L.d(L.d_basis(i))
        if dd:
            yield (L.basis.name(i),), "d(d(%s)) = %s" % (L.basis.name(i), L.basis.format(dd))


@rule('antisymmetry')
def _check_antisymmetry(L):
    for i, j in _pairs(L):
        if i > j:
            continue
        sign = -koszul(L.basis.degree(i), L.basis.degree(j))
        if L.br_basis(i, j) != lc_scale(sign, L.br_basis(j, i)):
            yield (L.basis.name(i), L.basis.name(j)), "bracket is not graded antisymmetric"


@rule('jacobi')
def _check_jacobi(L):
    n = L.dim
    for x in range(n):
        for y in range(n):
            for z in range(n):
                X, Y, Z = {x: 1}, {y: 1}, {z: 1}
                lhs = L.br(X, L.br(Y, Z))
                rhs = lc_add(
                    L.br(L.br(X, Y), Z),
                    lc_scale(koszul(L.basis.degree(x), L.basis.degree(y)), L.br(Y, L.br(X, Z))),
                )
                if lhs != rhs:
                    yield (L.basis.name(x), L.basis.name(y), L.basis.name(z)), \
                        "Jacobi fails: difference %s" % L.basis.format(lc_add(lhs, lc_scale(-1, rhs)))


@rule('leibniz')
def _check_leibniz(L):
    for x, y in _pairs(L):
        X, Y = {x: 1}, {y: 1}
        lhs = L.d(L.br(X, Y))
        rhs = lc_add(L.br(L.d(X), Y), lc_scale(koszul(L.basis.degree(x), 1), L.br(X, L.d(Y))))
        if lhs != rhs:
            yield (L.basis.name(x), L.basis.name(y)), \
                "Leibniz fails: difference %s" % L.basis.format(lc_add(lhs, lc_scale(-1, rhs)))


_dgla_checks = CombinedChecks(
    _check_d_degree, _check_bracket_degree, _check_d_squared,
    _check_antisymmetry, _check_jacobi, _check_leibniz,
)


def validate_dgla(L):
    """ Report every violated DG-Lie axiom with a witnessing basis tuple """
    report = _dgla_checks(L)
    report.subject = L.name or 'algebra'
    return report


class DGLAMorphism(object):
    """
    A degree 0 linear map between DG-Lie algebras, stored as the images of
    the source generators.
    """
    def __init__(self, source, target, images, name=None):
        self.source = source
        self.target = target
        self.name = name
        self.images = _normalize_table(images)

    @classmethod
    def from_matrix(cls, source, target, matrix, name=None):
        images = {}
        for (i, j), value in matrix.nonzero().items():
            images.setdefault(j, {})[i] = value
        return cls(source, target, images, name=name)

    def matrix(self):
        entries = {}
        for i, comb in self.images.items():
            for j, c in comb.items():
                entries[(j, i)] = c
        return ExactMatrix.from_entries(entries, (self.target.dim, self.source.dim))

    def image(self, i):
        return dict(self.images.get(i, {}))

    def apply(self, comb):
        return lc_add(*[lc_scale(c, self.images.get(i, {})) for i, c in comb.items()])

    def block(self, k):
        """ Matrix of the degree ``k`` component """
        src = self.source.basis.indices_of_degree(k)
        dst = self.target.basis.indices_of_degree(k)
        dst_pos = {j: r for r, j in enumerate(dst)}
        entries = {}
        for c, i in enumerate(src):
            for j, coef in self.images.get(i, {}).items():
                if j in dst_pos:
                    entries[(dst_pos[j], c)] = coef
        return ExactMatrix.from_entries(entries, (len(dst), len(src)))

    def __eq__(self, other):
        return (isinstance(other, DGLAMorphism) and self.source == other.source
                and self.target == other.target and self.images == other.images)

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def __repr__(self):
        return "<DGLAMorphism %s: %s -> %s>" % (
            self.name or '?', self.source.name or '?', self.target.name or '?')


@rule('morphism-degree')
def _check_morphism_degree(f):
    for i, comb in sorted(f.images.items()):
        for j in sorted(comb):
            if f.target.basis.degree(j) != f.source.basis.degree(i):
                yield (f.source.basis.name(i),), "f(%s) has a component %s of another degree" % (
                    f.source.basis.name(i), f.target.basis.name(j))


@rule('morphism-differential')
def _check_morphism_differential(f):
    for i in range(f.source.dim):
        lhs = f.apply(f.source.d_basis(i))
        rhs = f.target.d(f.image(i))
        if lhs != rhs:
            yield (f.source.basis.name(i),), "f(d%s) != d f(%s)" % (
                f.source.basis.name(i), f.source.basis.name(i))


@rule('morphism-bracket')
def _check_morphism_bracket(f):
    n = f.source.dim
    for i in range(n):
        for j in range(i, n):
            lhs = f.apply(f.source.br_basis(i, j))
            rhs = f.target.br(f.image(i), f.image(j))
            if lhs != rhs:
                yield (f.source.basis.name(i), f.source.basis.name(j)), \
                    "f([%s,%s]) != [f(%s), f(%s)]" % (
                        f.source.basis.name(i), f.source.basis.name(j),
                        f.source.basis.name(i), f.source.basis.name(j))


_morphism_checks = CombinedChecks(
    _check_morphism_degree, _check_morphism_differential, _check_morphism_bracket,
)


def validate_morphism(f):
    report = _morphism_checks(f)
    report.subject = f.name or 'morphism'
    return report


def identity_morphism(L):
    return DGLAMorphism(L, L, {i: {i: 1} for i in range(L.dim)}, name='id_%s' % (L.name or ''))


def compose(g, f):
    """ The morphism ``g o f`` """
    if f.target != g.source:
        raise PreconditionError("cannot compose: target of f is not the source of g")
    images = {i: g.apply(f.image(i)) for i in range(f.source.dim)}
    name = None
    if g.name and f.name:
        name = "%s*%s" % (g.name, f.name)
    return DGLAMorphism(f.source, g.target, images, name=name)


class ModuleStructure(object):
    """
    A DG-module over a DG-Lie algebra: a graded complex ``space`` with
    ``differential`` and a right action ``m*x`` given on basis pairs
    ``(m, x) -> combination in space``.
    """
    def __init__(self, algebra, space, differential=None, action=None, name=None):
        if not isinstance(space, GradedBasis):
            space = GradedBasis(space)
        self.algebra = algebra
        self.space = space
        self.name = name
        self.differential = _normalize_table(differential)
        self.action = _normalize_table(action)

    @property
    def dim(self):
        return len(self.space)

    def d(self, comb):
        return lc_add(*[lc_scale(c, self.differential.get(i, {})) for i, c in comb.items()])

    def d_block(self, k):
        return differential_block(self.space, self.differential, k)

    def act_basis(self, m, x):
        return dict(self.action.get((m, x), {}))

    def act(self, mcomb, xcomb):
        terms = []
        for m, a in mcomb.items():
            for x, b in xcomb.items():
                comb = self.action.get((m, x))
                if comb:
                    terms.append(lc_scale(a * b, comb))
        return lc_add(*terms)

    def has_zero_differential(self):
        return not self.differential

    def __repr__(self):
        return "<ModuleStructure %s over %s>" % (self.name or '?', self.algebra.name or '?')


@rule('action-degree')
def _check_action_degree(mod):
    for (m, x), comb in sorted(mod.action.items()):
        expected = mod.space.degree(m) + mod.algebra.basis.degree(x)
        for k in sorted(comb):
            if mod.space.degree(k) != expected:
                yield (mod.space.name(m), mod.algebra.basis.name(x)), "action is not degree additive"


@rule('module-d-squared')
def _check_module_d_squared(mod):
    for i in range(mod.dim):
        if mod.d(mod.d({i: 1})):
            yield (mod.space.name(i),), "d(d(%s)) != 0" % mod.space.name(i)


@rule('action-differential')
def _check_action_differential(mod):
    L = mod.algebra
    for m in range(mod.dim):
        for x in range(L.dim):
            M, X = {m: 1}, {x: 1}
            lhs = mod.d(mod.act(M, X))
            rhs = lc_add(mod.act(mod.d(M), X),
                         lc_scale(koszul(mod.space.degree(m), 1), mod.act(M, L.d(X))))
            if lhs != rhs:
                yield (mod.space.name(m), L.basis.name(x)), "d(m*x) != (dm)*x + (-1)^m m*(dx)"


@rule('module-axiom')
def _check_module_axiom(mod):
    L = mod.algebra
    for m in range(mod.dim):
        for x in range(L.dim):
            for y in range(L.dim):
                M, X, Y = {m: 1}, {x: 1}, {y: 1}
                lhs = mod.act(M, L.br(X, Y))
                rhs = lc_add(
                    mod.act(mod.act(M, X), Y),
                    lc_scale(-koszul(L.basis.degree(x), L.basis.degree(y)), mod.act(mod.act(M, Y), X)),
                )
                if lhs != rhs:
                    yield (mod.space.name(m), L.basis.name(x), L.basis.name(y)), \
                        "m*[x,y] != (m*x)*y - (-1)^(xy) (m*y)*x"


_module_checks = CombinedChecks(
    _check_action_degree, _check_module_d_squared,
    _check_action_differential, _check_module_axiom,
)


def validate_module(mod):
    report = _module_checks(mod)
    report.subject = mod.name or 'module'
    return report


def adjoint_module(f):
    """ The target of ``f`` as a module over its source: ``m*x = [m, f(x)]`` """
    M = f.target
    action = {}
    for m in range(M.dim):
        for x in range(f.source.dim):
            comb = M.br({m: 1}, f.image(x))
            if comb:
                action[(m, x)] = comb
    return ModuleStructure(f.source, M.basis, M.differential, action,
                           name="%s via %s" % (M.name or '?', f.name or 'f'))


class CohomologyPresentation(object):
    """
    Cohomology of a finite graded complex, degree by degree, with chosen
    class representatives. For DG-Lie algebras it also carries the induced
    bracket on classes (``bracket``), indexed by class number.
    """
    def __init__(self, basis, differential, name=None):
        self.space = basis
        self.name = name
        self.parts = {}
        self.classes = []
        for k in basis.degree_set():
            idx = basis.indices_of_degree(k)
            cycles = kernel_basis(differential_block(basis, differential, k))
            boundaries = Subspace.span(len(idx), image_basis(differential_block(basis, differential, k - 1)).basis)
            part = Subquotient(cycles, boundaries)
            self.parts[k] = part
            for t, rep in enumerate(part.representatives):
                comb = vector_to_lc(rep, idx)
                self.classes.append((k, t, self._class_name(comb), comb))
        self._class_index = {(k, t): n for n, (k, t, _, _) in enumerate(self.classes)}
        self.bracket = {}
        self._algebra = None

    def _class_name(self, comb):
        if len(comb) == 1 and list(comb.values())[0] == 1:
            return "[%s]" % self.space.name(list(comb)[0])
        return "[%s]" % self.space.format(comb)

    def dim(self, k):
        part = self.parts.get(k)
        return part.dim if part is not None else 0

    def dims(self):
        """ ``{degree: dim}`` for the nonzero cohomology groups """
        return {k: part.dim for k, part in sorted(self.parts.items()) if part.dim}

    @property
    def total_dim(self):
        return len(self.classes)

    def class_index(self, k, t):
        return self._class_index[(k, t)]

    def project(self, comb):
        """ Class (as a combination of class indices) of a homogeneous cocycle """
        if not comb:
            return {}
        k = self.space.degree_of(comb)
        if k is None:
            raise PreconditionError("cannot project an inhomogeneous combination")
        coords = self.parts[k].project(lc_to_vector(comb, self.space.indices_of_degree(k)))
        return {self._class_index[(k, t)]: c for t, c in enumerate(coords) if c}

    def representative(self, n):
        return dict(self.classes[n][3])

    def basis(self):
        return GradedBasis([(name, k) for k, _, name, _ in self.classes])

    def algebra(self):
        """ Cohomology as a DG-Lie algebra with zero differential """
        if self._algebra is None:
            name = "H(%s)" % self.name if self.name else None
            self._algebra = DGLA(self.basis(), {}, self.bracket, name=name)
        return self._algebra


def cohomology(L):
    """
    Cohomology of a DG-Lie algebra with the induced graded Lie bracket.
    Representatives are deterministic: the boundary basis is completed by
    the earliest cycle basis vectors.
    """
    H = CohomologyPresentation(L.basis, L.differential, name=L.name)
    # bracket of a boundary with a cocycle must be a boundary
    for k, part in H.parts.items():
        for b in part.boundaries.basis:
            bcomb = vector_to_lc(b, L.basis.indices_of_degree(k))
            for j, zpart in H.parts.items():
                for z in zpart.cycles.basis:
                    zcomb = vector_to_lc(z, L.basis.indices_of_degree(j))
                    image = L.br(bcomb, zcomb)
                    if image and not H.parts[k + j].boundaries.contains(
                            lc_to_vector(image, L.basis.indices_of_degree(k + j))):
                        raise WellDefinednessError(
                            "bracket of a boundary with a cocycle is not a boundary")
    for a, (ka, _, _, ra) in enumerate(H.classes):
        for b, (kb, _, _, rb) in enumerate(H.classes):
            image = L.br(ra, rb)
            if image:
                cls = H.project(image)
                if cls:
                    H.bracket[(a, b)] = cls
    logger.debug("cohomology of %s: dims %r", L.name, H.dims())
    return H


def module_cohomology(mod, HL):
    """
    Cohomology of a DG-module together with the induced action of the
    cohomology algebra ``HL`` of ``mod.algebra``.
    """
    HM = CohomologyPresentation(mod.space, mod.differential, name=mod.name)
    action = {}
    for m, (_, _, _, rm) in enumerate(HM.classes):
        for x, (_, _, _, rx) in enumerate(HL.classes):
            image = mod.act(rm, rx)
            if image:
                cls = HM.project(image)
                if cls:
                    action[(m, x)] = cls
    return HM, ModuleStructure(HL.algebra(), HM.basis(), {}, action, name="H(%s)" % (mod.name or '?'))


class CohomologyMorphism(object):
    """ The graded map induced by a DG-Lie morphism on cohomology """
    def __init__(self, morphism, source, target, blocks):
        self.morphism = morphism
        self.source = source
        self.target = target
        self.blocks = blocks

    def block(self, k):
        return self.blocks.get(k, ExactMatrix.zeros(self.target.dim(k), self.source.dim(k)))

    def is_injective(self, k=None):
        if k is None:
            return all(self.is_injective(deg) for deg in self.source.parts)
        m = self.block(k)
        return m.rank() == m.ncols

    def is_surjective(self, k=None):
        if k is None:
            return all(self.is_surjective(deg) for deg in self.target.parts)
        m = self.block(k)
        return m.rank() == m.nrows

    def images(self):
        images = {}
        for k, m in self.blocks.items():
            for (r, c), value in m.nonzero().items():
                src = self.source.class_index(k, c)
                images.setdefault(src, {})[self.target.class_index(k, r)] = value
        return images

    def as_dgla_morphism(self):
        name = "H(%s)" % self.morphism.name if self.morphism.name else None
        return DGLAMorphism(self.source.algebra(), self.target.algebra(), self.images(), name=name)


def induced_cohomology_morphism(f, source=None, target=None):
    """
    The morphism of graded Lie algebras H(f). Pass precomputed cohomology
    presentations to keep class representatives shared between calls.
    """
    source = source if source is not None else cohomology(f.source)
    target = target if target is not None else cohomology(f.target)
    blocks = {}
    for k, part in source.parts.items():
        dst = target.parts.get(k)
        if dst is None:
            blocks[k] = ExactMatrix.zeros(0, part.dim)
            continue
        blocks[k] = induced_map(f.block(k), part, dst)
    induced = CohomologyMorphism(f, source, target, blocks)
    report = validate_morphism(induced.as_dgla_morphism())
    assert report.ok, report
    return induced


def _fresh_name(name, taken):
    candidate, n = "%s_2" % name, 2
    while candidate in taken:
        n += 1
        candidate = "%s_%d" % (name, n)
    return candidate


def direct_sum(L, A, name=None):
    """
    Componentwise direct sum with zero cross brackets. Generators of ``A``
    whose names clash are renamed with a numeric suffix; renames are
    recorded in ``notes``.
    """
    taken = set(L.basis.names)
    generators = list(L.basis.generators)
    notes = []
    for gname, degree in A.basis.generators:
        if gname in taken:
            new = _fresh_name(gname, taken | set(A.basis.names))
            notes.append("renamed %s -> %s" % (gname, new))
            gname = new
        taken.add(gname)
        generators.append((gname, degree))
    n = L.dim

    def shift(comb):
        return {i + n: c for i, c in comb.items()}

    differential = dict(L.differential)
    differential.update({i + n: shift(c) for i, c in A.differential.items()})
    bracket = dict(L.bracket)
    bracket.update({(i + n, j + n): shift(c) for (i, j), c in A.bracket.items()})
    if name is None and L.name and A.name:
        name = "%s+%s" % (L.name, A.name)
    return DGLA(generators, differential, bracket, name=name, notes=notes)


def sum_inclusion(S, L, A, which=0):
    """ Inclusion of the first (``which=0``) or second summand into ``S`` """
    offset = 0 if which == 0 else L.dim
    source = L if which == 0 else A
    return DGLAMorphism(source, S, {i: {i + offset: 1} for i in range(source.dim)},
                        name="in%d" % (which + 1))


def sum_projection(S, L, A, which=0):
    offset = 0 if which == 0 else L.dim
    target = L if which == 0 else A
    return DGLAMorphism(S, target, {i + offset: {i: 1} for i in range(target.dim)},
                        name="pr%d" % (which + 1))


def span_name(comb, names, position):
    if all(c == 1 for c in comb.values()):
        return "_".join(names[i] for i in sorted(comb))
    return "s%d" % (position + 1)


def subalgebra(M, spans, names=None, name=None):
    """
    The sub-DG-Lie algebra spanned by homogeneous combinations ``spans`` of
    generators of ``M``, together with its inclusion morphism. Raises
    PreconditionError when the span is not closed under d and bracket.
    """
    spans = [dict(s) for s in spans]
    degrees = []
    for s in spans:
        k = M.degree_of(s)
        if k is None:
            raise PreconditionError("span element %s is zero or not homogeneous" % M.basis.format(s))
        degrees.append(k)
    if names is None:
        names = [span_name(s, M.basis.names, n) for n, s in enumerate(spans)]
    basis = GradedBasis(zip(names, degrees))
    local = {}
    for k in basis.degree_set():
        members = basis.indices_of_degree(k)
        idx = M.basis.indices_of_degree(k)
        local[k] = (members, Subspace(len(idx), [lc_to_vector(spans[i], idx) for i in members]))

    def express(comb, what):
        if not comb:
            return {}
        k = M.degree_of(comb)
        if k is None or k not in local:
            raise PreconditionError("span is not closed under %s: %s" % (what, M.basis.format(comb)))
        members, space = local[k]
        coords = space.coordinates(lc_to_vector(comb, M.basis.indices_of_degree(k)))
        if coords is None:
            raise PreconditionError("span is not closed under %s: %s" % (what, M.basis.format(comb)))
        return {members[t]: c for t, c in enumerate(coords) if c}

    differential = {i: express(M.d(s), 'd') for i, s in enumerate(spans)}
    bracket = {}
    for i, si in enumerate(spans):
        for j, sj in enumerate(spans):
            if i <= j:
                bracket[(i, j)] = express(M.br(si, sj), 'the bracket')
    L = DGLA(basis, differential, bracket, name=name)
    inclusion = DGLAMorphism(L, M, dict(enumerate(spans)),
                             name="%s_into_%s" % (name or 'L', M.name or 'M'))
    return L, inclusion


def generated_ideal(M, generators):
    """ Smallest d-closed ideal containing ``generators``, per degree """
    pending = [dict(g) for g in generators if g]
    spaces = {}
    while pending:
        comb = pending.pop()
        k = M.degree_of(comb)
        if k is None:
            raise PreconditionError("ideal generator %s is not homogeneous" % M.basis.format(comb))
        idx = M.basis.indices_of_degree(k)
        space = spaces.get(k, Subspace.zero(len(idx)))
        vector = lc_to_vector(comb, idx)
        if space.contains(vector):
            continue
        spaces[k] = space.sum(Subspace(len(idx), [vector]))
        pending.append(M.d(comb))
        for x in range(M.dim):
            pending.append(M.br(comb, {x: 1}))
        pending = [p for p in pending if p]
    return spaces


def quotient(M, generators, name=None):
    """
    Quotient of ``M`` by the d-closed ideal generated by ``generators`` and
    the projection morphism. The quotient keeps the generators of ``M`` that
    are not pivots of the ideal's echelon basis.
    """
    ideal = generated_ideal(M, generators)
    kept, reducers = [], {}
    for k in M.basis.degree_set():
        idx = M.basis.indices_of_degree(k)
        space = ideal.get(k)
        pivots = []
        if space is not None and space.dim:
            rref, pivots = row_reduce(ExactMatrix.from_rows(space.basis, len(idx)))
            rows = rref.to_rows()
            for r, p in enumerate(pivots):
                reducers[idx[p]] = vector_to_lc(rows[r], idx)
        kept.extend(idx[c] for c in range(len(idx)) if c not in set(pivots))
    kept.sort()
    position = {g: t for t, g in enumerate(kept)}

    def reduce(comb):
        comb = dict(comb)
        for p, row in reducers.items():
            c = comb.get(p)
            if c:
                comb = lc_add(comb, lc_scale(-c, row))
        return {position[g]: c for g, c in comb.items()}

    basis = GradedBasis([M.basis.generators[g] for g in kept])
    differential = {t: reduce(M.d_basis(g)) for t, g in enumerate(kept)}
    bracket = {(s, t): reduce(M.br_basis(g, h))
               for s, g in enumerate(kept) for t, h in enumerate(kept) if s <= t}
    Q = DGLA(basis, differential, bracket, name=name)
    projection = DGLAMorphism(M, Q, {g: reduce({g: 1}) for g in range(M.dim)},
                              name="%s_onto_%s" % (M.name or 'M', name or 'Q'))
    return Q, projection
