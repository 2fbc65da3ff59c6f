# -*- coding: utf-8 -*-
"""
Exact linear algebra over the rationals.

Matrices are thin immutable wrappers around sparse
:class:`sympy.polys.matrices.DomainMatrix` objects over ``QQ``; vectors are
tuples of :class:`fractions.Fraction`. Row reduction always returns the
reduced row echelon form, which is unique, so every basis built here
(kernels, complements, quotient representatives) is reproducible.

    >>> m = ExactMatrix.from_rows([[1, 2], [2, 4]])
    >>> rref, pivots = row_reduce(m)
    >>> rref.to_rows() == [[1, 2], [0, 0]], pivots
    (True, [0])
    >>> kernel_basis(m).basis == ((-2, 1),)
    True
"""
from __future__ import absolute_import
from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from dglaformal.exceptions import PreconditionError, WellDefinednessError


def to_fraction(value):
    """
    Convert ints, Fractions, "a/b" strings and QQ elements to Fraction.
    Floats are refused: nothing here is ever rounded.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted: %r" % value)
    if isinstance(value, (int, str)):
        return Fraction(value)
    return Fraction(int(value.numerator), int(value.denominator))


def _qq(value):
    value = to_fraction(value)
    return QQ(value.numerator, value.denominator)


def zero_vector(n):
    return (Fraction(0),) * n


def unit_vector(n, i):
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(n))


def is_zero_vector(v):
    return not any(v)


def add_vectors(u, v):
    return tuple(a + b for a, b in zip(u, v))


def scale_vector(c, v):
    c = to_fraction(c)
    return tuple(c * a for a in v)


class ExactMatrix(object):
    """
    Immutable matrix of rationals. Use the ``from_*`` constructors;
    ``ExactMatrix(dm)`` wraps an existing sparse DomainMatrix over QQ.
    """
    __slots__ = ('_dm',)

    def __init__(self, dm):
        self._dm = dm

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(DomainMatrix({}, (nrows, ncols), QQ))

    @classmethod
    def identity(cls, n):
        return cls.from_entries({(i, i): 1 for i in range(n)}, (n, n))

    @classmethod
    def from_entries(cls, entries, shape):
        """ Build a matrix from a ``{(row, col): value}`` mapping """
        rows = {}
        for (i, j), value in entries.items():
            value = _qq(value)
            if value:
                rows.setdefault(i, {})[j] = value
        return cls(DomainMatrix(rows, shape, QQ))

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = [list(row) for row in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise PreconditionError("row %d has length %d, expected %d" % (i, len(row), ncols))
            for j, value in enumerate(row):
                entries[(i, j)] = value
        return cls.from_entries(entries, (len(rows), ncols))

    @classmethod
    def from_columns(cls, columns, nrows):
        entries = {}
        for j, column in enumerate(columns):
            if len(column) != nrows:
                raise PreconditionError("column %d has length %d, expected %d" % (j, len(column), nrows))
            for i, value in enumerate(column):
                entries[(i, j)] = value
        return cls.from_entries(entries, (nrows, len(columns)))

    @property
    def shape(self):
        return tuple(self._dm.shape)

    @property
    def nrows(self):
        return self._dm.shape[0]

    @property
    def ncols(self):
        return self._dm.shape[1]

    @property
    def domain_matrix(self):
        return self._dm

    def nonzero(self):
        """ ``{(row, col): Fraction}`` of all nonzero entries """
        rows = self._dm.to_sparse().rep
        return {(i, j): to_fraction(value)
                for i, row in rows.items() for j, value in row.items() if value}

    def entry(self, i, j):
        return self.nonzero().get((i, j), Fraction(0))

    def to_rows(self):
        rows = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (i, j), value in self.nonzero().items():
            rows[i][j] = value
        return rows

    def columns(self):
        cols = [[Fraction(0)] * self.nrows for _ in range(self.ncols)]
        for (i, j), value in self.nonzero().items():
            cols[j][i] = value
        return [tuple(c) for c in cols]

    def column(self, j):
        return self.columns()[j]

    def is_zero(self):
        return not self.nonzero()

    def transpose(self):
        return ExactMatrix(self._dm.transpose())

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.ncols != other.nrows:
                raise PreconditionError("cannot multiply %s by %s matrices" % (self.shape, other.shape))
            if not self.nrows or not other.ncols or not self.ncols:
                return ExactMatrix.zeros(self.nrows, other.ncols)
            return ExactMatrix(self._dm.matmul(other._dm))
        return ExactMatrix(self._dm * _qq(other))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __add__(self, other):
        if self.shape != other.shape:
            raise PreconditionError("cannot add %s and %s matrices" % (self.shape, other.shape))
        return ExactMatrix(self._dm + other._dm)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ExactMatrix(-self._dm)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.nonzero() == other.nonzero()

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.shape, frozenset(self.nonzero().items())))

    def __repr__(self):
        return "ExactMatrix(%r)" % ([[str(x) for x in row] for row in self.to_rows()],)

    def apply(self, vector):
        """ Matrix times a column vector given as a sequence """
        if len(vector) != self.ncols:
            raise PreconditionError("vector of length %d for %s matrix" % (len(vector), self.shape))
        out = [Fraction(0)] * self.nrows
        for (i, j), value in self.nonzero().items():
            if vector[j]:
                out[i] += value * vector[j]
        return tuple(out)

    def rank(self):
        if not self.nrows or not self.ncols:
            return 0
        return self._dm.rank()

    def hstack(self, *others):
        if not others:
            return self
        return ExactMatrix(self._dm.hstack(*[o._dm for o in others]))

    def vstack(self, *others):
        if not others:
            return self
        return ExactMatrix(self._dm.vstack(*[o._dm for o in others]))

    def submatrix(self, rows, cols):
        rows, cols = list(rows), list(cols)
        row_pos = {r: k for k, r in enumerate(rows)}
        col_pos = {c: k for k, c in enumerate(cols)}
        entries = {
            (row_pos[i], col_pos[j]): value
            for (i, j), value in self.nonzero().items()
            if i in row_pos and j in col_pos
        }
        return ExactMatrix.from_entries(entries, (len(rows), len(cols)))


def block_matrix(blocks, row_sizes, col_sizes):
    """
    Assemble a matrix from a ``{(block_row, block_col): ExactMatrix}``
    mapping; missing blocks are zero.
    """
    row_offsets = [sum(row_sizes[:k]) for k in range(len(row_sizes))]
    col_offsets = [sum(col_sizes[:k]) for k in range(len(col_sizes))]
    entries = {}
    for (bi, bj), block in blocks.items():
        if block.shape != (row_sizes[bi], col_sizes[bj]):
            raise PreconditionError("block %r has shape %s, expected %s" % (
                (bi, bj), block.shape, (row_sizes[bi], col_sizes[bj])))
        for (i, j), value in block.nonzero().items():
            entries[(row_offsets[bi] + i, col_offsets[bj] + j)] = value
    return ExactMatrix.from_entries(entries, (sum(row_sizes), sum(col_sizes)))


def row_reduce(m):
    """
    Reduced row echelon form of ``m`` and the list of pivot columns.
    Pivots are chosen as the first nonzero entry in column order.
    """
    if not m.nrows or not m.ncols:
        return m, []
    rref, pivots = m.domain_matrix.rref()
    return ExactMatrix(rref.to_sparse()), list(pivots)


class Subspace(object):
    """
    Subspace of K^n given by a list of linearly independent vectors.
    """
    def __init__(self, ambient_dim, basis, check=True):
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(to_fraction(x) for x in v) for v in basis)
        for v in self.basis:
            if len(v) != ambient_dim:
                raise PreconditionError("basis vector of length %d in K^%d" % (len(v), ambient_dim))
        if check and self.basis and self.matrix().rank() != len(self.basis):
            raise PreconditionError("basis vectors are linearly dependent")
        self._rref = None

    @classmethod
    def span(cls, ambient_dim, vectors):
        """ Canonical (echelon) basis of the span of arbitrary vectors """
        vectors = [v for v in vectors if not is_zero_vector(v)]
        if not vectors:
            return cls(ambient_dim, [])
        rref, pivots = row_reduce(ExactMatrix.from_rows(vectors, ambient_dim))
        rows = rref.to_rows()
        return cls(ambient_dim, [tuple(rows[k]) for k in range(len(pivots))], check=False)

    @classmethod
    def full(cls, n):
        return cls(n, [unit_vector(n, i) for i in range(n)], check=False)

    @classmethod
    def zero(cls, n):
        return cls(n, [])

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return self.dim

    def matrix(self):
        """ ambient_dim x dim matrix whose columns are the basis vectors """
        return ExactMatrix.from_columns(self.basis, self.ambient_dim)

    def _reduced(self):
        if self._rref is None:
            self._rref = row_reduce(self.matrix())
        return self._rref

    def coordinates_many(self, vectors):
        """
        Coordinates of each vector in the basis, or None for vectors that
        are not in the subspace.
        """
        vectors = list(vectors)
        if not vectors:
            return []
        if not self.basis:
            return [() if is_zero_vector(v) else None for v in vectors]
        k = self.dim
        augmented = self.matrix().hstack(ExactMatrix.from_columns(vectors, self.ambient_dim))
        rref, pivots = row_reduce(augmented)
        rows = rref.to_rows()
        result = []
        for idx in range(len(vectors)):
            col = k + idx
            if any(rows[r][col] for r in range(k, self.ambient_dim)):
                result.append(None)
            else:
                result.append(tuple(rows[r][col] for r in range(k)))
        return result

    def coordinates(self, vector):
        return self.coordinates_many([vector])[0]

    def contains(self, vector):
        return self.coordinates(vector) is not None

    def contains_subspace(self, other):
        return all(c is not None for c in self.coordinates_many(other.basis))

    def sum(self, other):
        return Subspace.span(self.ambient_dim, self.basis + other.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.dim == other.dim
                and self.contains_subspace(other))

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def __repr__(self):
        return "Subspace(ambient_dim=%d, dim=%d)" % (self.ambient_dim, self.dim)


def kernel_basis(m):
    """ Basis of {v : m v = 0}, one vector per free column of the RREF """
    n = m.ncols
    rref, pivots = row_reduce(m)
    rows = rref.to_rows() if m.nrows else []
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rows[r][free]
        basis.append(tuple(v))
    return Subspace(n, basis, check=False)


def image_basis(m):
    """ Canonical basis of the column space of ``m`` """
    return Subspace.span(m.nrows, m.columns())


def solve(m, vector):
    """
    One solution x of ``m x = vector`` (free variables set to zero),
    or None when the system is inconsistent.
    """
    n = m.ncols
    if len(vector) != m.nrows:
        raise PreconditionError("right hand side of length %d for %s matrix" % (len(vector), m.shape))
    if not m.nrows:
        return zero_vector(n)
    augmented = m.hstack(ExactMatrix.from_columns([vector], m.nrows))
    rref, pivots = row_reduce(augmented)
    if n in pivots:
        return None
    rows = rref.to_rows()
    x = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        x[p] = rows[r][n]
    return tuple(x)


class Subquotient(object):
    """
    Quotient Z/B of two subspaces of the same K^n with B inside Z.

    The B basis is completed to a Z basis by the Z basis vectors that are
    not pivots of the row-reduced B coordinates; those vectors are the
    quotient representatives. ``project`` maps vectors of Z to quotient
    coordinates and kills B exactly.
    """
    def __init__(self, cycles, boundaries):
        if cycles.ambient_dim != boundaries.ambient_dim:
            raise PreconditionError("Z lives in K^%d but B lives in K^%d" % (
                cycles.ambient_dim, boundaries.ambient_dim))
        self.cycles = cycles
        self.boundaries = boundaries
        k = cycles.dim
        coords = cycles.coordinates_many(boundaries.basis)
        for vector, c in zip(boundaries.basis, coords):
            if c is None:
                raise PreconditionError("boundary vector %s is not a cycle" % (
                    [str(x) for x in vector],))
        if coords:
            rref, pivots = row_reduce(ExactMatrix.from_rows(coords, k))
            rows = rref.to_rows()
        else:
            rows, pivots = [], []
        pivot_set = set(pivots)
        self._free = [j for j in range(k) if j not in pivot_set]
        free_pos = {j: t for t, j in enumerate(self._free)}
        entries = {}
        for j in self._free:
            entries[(free_pos[j], j)] = 1
        for i, p in enumerate(pivots):
            for j in self._free:
                if rows[i][j]:
                    entries[(free_pos[j], p)] = -rows[i][j]
        self._projection = ExactMatrix.from_entries(entries, (len(self._free), k))
        self.representatives = tuple(cycles.basis[j] for j in self._free)

    @property
    def dim(self):
        return len(self._free)

    @property
    def ambient_dim(self):
        return self.cycles.ambient_dim

    @property
    def projection(self):
        """ Matrix from Z-coordinates to quotient coordinates """
        return self._projection

    def project_many(self, vectors):
        vectors = list(vectors)
        result = []
        for vector, c in zip(vectors, self.cycles.coordinates_many(vectors)):
            if c is None:
                raise WellDefinednessError("vector %s is not in the cycle space" % (
                    [str(x) for x in vector],))
            result.append(self._projection.apply(c))
        return result

    def project(self, vector):
        return self.project_many([vector])[0]

    def lift(self, coordinates):
        out = zero_vector(self.ambient_dim)
        for c, rep in zip(coordinates, self.representatives):
            if c:
                out = add_vectors(out, scale_vector(c, rep))
        return out

    def is_boundary(self, vector):
        return self.boundaries.contains(vector)

    def __repr__(self):
        return "Subquotient(dim Z=%d, dim B=%d, dim=%d)" % (
            self.cycles.dim, self.boundaries.dim, self.dim)


def subquotient(cycles, boundaries):
    return Subquotient(cycles, boundaries)


def induced_map(f, src, dst):
    """
    Matrix of the map induced by ``f`` from ``src`` to ``dst`` in quotient
    coordinates. Raises WellDefinednessError naming the failed inclusion.
    """
    if f.shape != (dst.ambient_dim, src.ambient_dim):
        raise PreconditionError("map of shape %s between K^%d and K^%d" % (
            f.shape, src.ambient_dim, dst.ambient_dim))
    for b in src.boundaries.basis:
        if not dst.boundaries.contains(f.apply(b)):
            raise WellDefinednessError("f(B_src) is not contained in B_dst")
    images = [f.apply(rep) for rep in src.representatives]
    if any(c is None for c in dst.cycles.coordinates_many(images)):
        raise WellDefinednessError("f(Z_src) is not contained in Z_dst")
    columns = dst.project_many(images)
    return ExactMatrix.from_columns(columns, dst.dim)
