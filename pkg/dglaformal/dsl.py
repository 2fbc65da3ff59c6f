# -*- coding: utf-8 -*-
"""
The ``.dgla`` input language.

A document is a sequence of declarations::

    # comment
    algebra M {
      basis e1:1, e2:1, h:2;
      d e1 = h;
      [e1,e2] = -1/2*h;
    }
    subalgebra L of M { span e1 + e2, h; }
    sum MM = M + M;
    morphism i : L -> M { e1_e2 = e1 + e2; h = h; }
    action swap on MM { element { } element { e1 = e1_2; e1_2 = e1; } }

Coefficients are integers or fractions ``a/b``; decimals are rejected.
Brackets not listed are zero, the mirrored bracket ``[b,a]`` is implied
by graded antisymmetry. Morphism generators not listed map to zero,
action elements fix the generators they do not list.

:func:`parse` returns a :class:`Document`; problems are reported as a
:class:`~dglaformal.exceptions.DSLError` whose ``diagnostics`` carry
source spans. ``print_document(parse(text))`` is canonical text that
parses back to an equal document.
"""
from __future__ import absolute_import
import collections
import logging
import re
from fractions import Fraction

from dglaformal.exceptions import DSLError, PreconditionError
from dglaformal.graded import (
    DGLA, DGLAMorphism, GradedBasis, direct_sum, koszul, span_name, subalgebra,
)
from dglaformal.group_actions import FiniteAction
from dglaformal.utils import format_lincomb, lc_add, lc_scale

logger = logging.getLogger(__name__)


class SourceSpan(collections.namedtuple('SourceSpan', 'line column offset length')):
    """ 1-based line and column, 0-based byte offset and byte length """
    __slots__ = ()

    def slice(self, text):
        data = text.encode('utf-8')
        return data[self.offset:self.offset + self.length].decode('utf-8')

    def cover(self, other):
        end = max(self.offset + self.length, other.offset + other.length)
        return SourceSpan(self.line, self.column, self.offset, end - self.offset)

    def __str__(self):
        return "%d:%d" % (self.line, self.column)


class Diagnostic(collections.namedtuple('Diagnostic', 'message span')):
    __slots__ = ()

    def __str__(self):
        if self.span is None:
            return self.message
        return "%s: %s" % (self.span, self.message)

    def to_dict(self):
        out = {'message': self.message}
        if self.span is not None:
            out['span'] = dict(self.span._asdict())
        return out


Token = collections.namedtuple('Token', 'kind text span')

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<decimal>\d+\.\d*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>->|[{}\[\],;:=+\-*/])
""", re.VERBOSE)

KEYWORDS = ('algebra', 'subalgebra', 'sum', 'morphism', 'action')


def tokenize(text):
    """
    >>> [t.text for t in tokenize("d e3 = 1/2*h1; # done")]
    ['d', 'e3', '=', '1', '/', '2', '*', 'h1', ';', '']
    """
    tokens = []
    pos, line, column, offset = 0, 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        chunk = m.group(0) if m else text[pos]
        span = SourceSpan(line, column, offset, len(chunk.encode('utf-8')))
        if m is None:
            raise DSLError([Diagnostic("unexpected character %r" % chunk, span)])
        kind = m.lastgroup
        if kind == 'decimal':
            raise DSLError([Diagnostic(
                "decimal coefficient %s: use a fraction a/b" % chunk, span)])
        if kind not in ('ws', 'comment'):
            tokens.append(Token(kind, chunk, span))
        newlines = chunk.count('\n')
        if newlines:
            line += newlines
            column = len(chunk) - chunk.rfind('\n')
        else:
            column += len(chunk)
        offset += span.length
        pos = m.end()
    tokens.append(Token('eof', '', SourceSpan(line, column, offset, 0)))
    return tokens


# Declarations. Linear combinations are lists of Term.
Term = collections.namedtuple('Term', 'coef name span')
Assignment = collections.namedtuple('Assignment', 'name terms span')
BasisItem = collections.namedtuple('BasisItem', 'name degree span')
BracketLine = collections.namedtuple('BracketLine', 'left right terms span')
SpanItem = collections.namedtuple('SpanItem', 'name terms span')

AlgebraDecl = collections.namedtuple('AlgebraDecl', 'name basis differentials brackets span')
SubalgebraDecl = collections.namedtuple('SubalgebraDecl', 'name parent items span')
SumDecl = collections.namedtuple('SumDecl', 'name left right span')
MorphismDecl = collections.namedtuple('MorphismDecl', 'name source target assignments span')
ActionDecl = collections.namedtuple('ActionDecl', 'name algebra elements span')


class _Parser(object):

    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    @property
    def current(self):
        return self.tokens[self.pos]

    def error(self, message, token=None):
        token = token or self.current
        found = token.text or 'end of input'
        raise DSLError([Diagnostic("%s, found %r" % (message, found), token.span)])

    def at(self, text, offset=0):
        token = self.tokens[min(self.pos + offset, len(self.tokens) - 1)]
        return token.kind in ('sym', 'name') and token.text == text

    def advance(self):
        token = self.current
        if token.kind != 'eof':
            self.pos += 1
        return token

    def expect(self, text):
        if not self.at(text):
            self.error("expected %r" % text)
        return self.advance()

    def name(self, what='a name'):
        if self.current.kind != 'name':
            self.error("expected %s" % what)
        return self.advance()

    def integer(self):
        if self.current.kind != 'int':
            self.error("expected an integer")
        return self.advance()

    def document(self):
        decls = []
        while self.current.kind != 'eof':
            token = self.current
            if token.kind != 'name' or token.text not in KEYWORDS:
                self.error("expected a declaration (%s)" % ", ".join(KEYWORDS))
            decls.append(getattr(self, token.text)())
        return decls

    def _finish(self, start):
        return start.span.cover(self.tokens[self.pos - 1].span)

    def algebra(self):
        start = self.expect('algebra')
        name = self.name("an algebra name")
        self.expect('{')
        self.expect('basis')
        basis = []
        while not self.at(';'):
            gen = self.name("a generator name")
            self.expect(':')
            sign = -1 if self.at('-') else 1
            if self.at('-'):
                self.advance()
            degree = self.integer()
            basis.append(BasisItem(gen.text, sign * int(degree.text), gen.span.cover(degree.span)))
            if self.at(','):
                self.advance()
        self.expect(';')
        differentials, brackets = [], []
        while not self.at('}'):
            line_start = self.current
            if self.at('['):
                self.advance()
                left = self.name("a generator name")
                self.expect(',')
                right = self.name("a generator name")
                self.expect(']')
                self.expect('=')
                terms = self.lincomb()
                self.expect(';')
                brackets.append(BracketLine(left, right, terms, self._finish(line_start)))
            elif self.at('d'):
                self.advance()
                gen = self.name("a generator name")
                self.expect('=')
                terms = self.lincomb()
                self.expect(';')
                differentials.append(Assignment(gen, terms, self._finish(line_start)))
            else:
                self.error("expected 'd', '[' or '}'")
        self.expect('}')
        return AlgebraDecl(name, basis, differentials, brackets, self._finish(start))

    def subalgebra(self):
        start = self.expect('subalgebra')
        name = self.name("a subalgebra name")
        self.expect('of')
        parent = self.name("an algebra name")
        self.expect('{')
        self.expect('span')
        items = []
        while not self.at(';'):
            item_start = self.current
            label = None
            if self.current.kind == 'name' and self.at('=', 1):
                label = self.advance().text
                self.advance()
            terms = self.lincomb()
            items.append(SpanItem(label, terms, self._finish(item_start)))
            if not self.at(';'):
                self.expect(',')
        self.expect(';')
        self.expect('}')
        return SubalgebraDecl(name, parent, items, self._finish(start))

    def sum(self):
        start = self.expect('sum')
        name = self.name("a name")
        self.expect('=')
        left = self.name("an algebra name")
        self.expect('+')
        right = self.name("an algebra name")
        self.expect(';')
        return SumDecl(name, left, right, self._finish(start))

    def assignments(self):
        self.expect('{')
        out = []
        while not self.at('}'):
            line_start = self.current
            gen = self.name("a generator name")
            self.expect('=')
            terms = self.lincomb()
            self.expect(';')
            out.append(Assignment(gen, terms, self._finish(line_start)))
        self.expect('}')
        return out

    def morphism(self):
        start = self.expect('morphism')
        name = self.name("a morphism name")
        self.expect(':')
        source = self.name("an algebra name")
        self.expect('->')
        target = self.name("an algebra name")
        assignments = self.assignments()
        return MorphismDecl(name, source, target, assignments, self._finish(start))

    def action(self):
        start = self.expect('action')
        name = self.name("an action name")
        self.expect('on')
        algebra = self.name("an algebra name")
        self.expect('{')
        elements = []
        while not self.at('}'):
            self.expect('element')
            elements.append(self.assignments())
        self.expect('}')
        return ActionDecl(name, algebra, elements, self._finish(start))

    def coefficient(self):
        num = self.integer()
        value = Fraction(int(num.text))
        if self.at('/'):
            self.advance()
            den = self.integer()
            if int(den.text) == 0:
                raise DSLError([Diagnostic("zero denominator", num.span.cover(den.span))])
            value /= int(den.text)
        return value

    def lincomb(self):
        """ ``0`` or signed terms ``[c [*]] name`` """
        if self.current.kind == 'int' and self.current.text == '0' and (
                self.at(';', 1) or self.at(',', 1)):
            self.advance()
            return []
        terms = []
        first = True
        while True:
            start = self.current
            sign = 1
            if self.at('+') or self.at('-'):
                sign = -1 if self.advance().text == '-' else 1
            elif not first:
                break
            coef = Fraction(1)
            if self.current.kind == 'int':
                coef = self.coefficient()
                if self.at('*'):
                    self.advance()
            gen = self.name("a generator name")
            terms.append(Term(sign * coef, gen.text, start.span.cover(gen.span)))
            first = False
        return terms


class Document(object):
    """
    Parsed declarations together with the objects they define:
    ``models`` maps each declared name to a :class:`DGLA`,
    :class:`DGLAMorphism` or :class:`FiniteAction`.
    """
    def __init__(self, declarations, models, source=None):
        self.declarations = list(declarations)
        self.models = collections.OrderedDict(models)
        self.source = source

    def __getitem__(self, name):
        return self.models[name]

    def __contains__(self, name):
        return name in self.models

    def _get(self, name, cls, what):
        try:
            value = self.models[name]
        except KeyError:
            raise PreconditionError("no %s named %r" % (what, name))
        if not isinstance(value, cls):
            raise PreconditionError("%r is not %s" % (name, what))
        return value

    def algebra(self, name=None):
        """ The named algebra, or the first one declared """
        if name is None:
            names = self.algebra_names()
            if not names:
                raise PreconditionError("the document declares no algebra")
            name = names[0]
        return self._get(name, DGLA, 'an algebra')

    def morphism(self, name=None):
        if name is None:
            names = [n for n, v in self.models.items() if isinstance(v, DGLAMorphism)]
            if not names:
                raise PreconditionError("the document declares no morphism")
            name = names[0]
        return self._get(name, DGLAMorphism, 'a morphism')

    def action(self, name):
        return self._get(name, FiniteAction, 'an action')

    def algebra_names(self):
        return [n for n, v in self.models.items() if isinstance(v, DGLA)]

    def __eq__(self, other):
        if not isinstance(other, Document) or list(self.models) != list(other.models):
            return False
        for name, value in self.models.items():
            theirs = other.models[name]
            if isinstance(value, FiniteAction):
                if not isinstance(theirs, FiniteAction) or value.algebra != theirs.algebra:
                    return False
                if [g.images for g in value.elements] != [g.images for g in theirs.elements]:
                    return False
            elif value != theirs:
                return False
        return True

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def __str__(self):
        return print_document(self)


class _Resolver(object):

    def __init__(self):
        self.models = collections.OrderedDict()
        self.diagnostics = []

    def report(self, message, span):
        self.diagnostics.append(Diagnostic(message, span))

    def declare(self, token, value):
        if token.text in self.models:
            self.report("%r is already declared" % token.text, token.span)
            return
        self.models[token.text] = value

    def lookup(self, token, cls, what):
        value = self.models.get(token.text)
        if value is None:
            self.report("%r does not name %s" % (token.text, what), token.span)
        elif not isinstance(value, cls):
            self.report("%r is not %s" % (token.text, what), token.span)
            value = None
        return value

    def comb(self, basis, terms):
        """ Resolve terms against ``basis``; None if a name is unknown """
        out = {}
        ok = True
        for term in terms:
            if term.name not in basis:
                self.report("unknown generator %r" % term.name, term.span)
                ok = False
                continue
            out = lc_add(out, {basis.index(term.name): term.coef})
        return out if ok else None

    def generator(self, basis, token):
        if token.text not in basis:
            self.report("unknown generator %r" % token.text, token.span)
            return None
        return basis.index(token.text)

    def algebra(self, decl):
        seen = set()
        generators = []
        for item in decl.basis:
            if item.name in seen:
                self.report("duplicate generator %r" % item.name, item.span)
                continue
            seen.add(item.name)
            generators.append((item.name, item.degree))
        basis = GradedBasis(generators)
        errors = len(self.diagnostics)

        differential = {}
        for line in decl.differentials:
            i = self.generator(basis, line.name)
            comb = self.comb(basis, line.terms)
            if i is None or comb is None:
                continue
            if i in differential:
                self.report("duplicate differential of %r" % line.name.text, line.span)
                continue
            self._check_degree(basis, comb, basis.degree(i) + 1, line)
            differential[i] = comb

        bracket = {}
        for line in decl.brackets:
            i = self.generator(basis, line.left)
            j = self.generator(basis, line.right)
            comb = self.comb(basis, line.terms)
            if i is None or j is None or comb is None:
                continue
            if (i, j) in bracket:
                self.report("duplicate bracket [%s,%s]" % (line.left.text, line.right.text), line.span)
                continue
            self._check_degree(basis, comb, basis.degree(i) + basis.degree(j), line)
            if (j, i) in bracket:
                mirrored = lc_scale(-koszul(basis.degree(i), basis.degree(j)), bracket[(j, i)])
                if mirrored != comb:
                    self.report("bracket [%s,%s] contradicts [%s,%s] under graded antisymmetry" % (
                        line.left.text, line.right.text, line.right.text, line.left.text), line.span)
                continue
            bracket[(i, j)] = comb

        if len(self.diagnostics) == errors:
            self.declare(decl.name, DGLA(basis, differential, bracket, name=decl.name.text))

    def _check_degree(self, basis, comb, expected, line):
        for term in line.terms:
            if term.name in basis and basis.degree(basis.index(term.name)) != expected:
                self.report("degree violation: %s has degree %d, expected %d" % (
                    term.name, basis.degree(basis.index(term.name)), expected), line.span)
                return

    def subalgebra(self, decl):
        parent = self.lookup(decl.parent, DGLA, 'an algebra')
        if parent is None:
            return
        spans, names = [], []
        for n, item in enumerate(decl.items):
            comb = self.comb(parent.basis, item.terms)
            if comb is None:
                continue
            if not comb:
                self.report("zero span element", item.span)
                continue
            spans.append(comb)
            names.append(item.name or span_name(comb, parent.basis.names, n))
        if len(set(names)) != len(names):
            self.report("span element names are not unique: %s" % ", ".join(names), decl.span)
            return
        try:
            L, _ = subalgebra(parent, spans, names=names, name=decl.name.text)
        except PreconditionError as e:
            self.report(str(e), decl.span)
            return
        self.declare(decl.name, L)

    def sum(self, decl):
        left = self.lookup(decl.left, DGLA, 'an algebra')
        right = self.lookup(decl.right, DGLA, 'an algebra')
        if left is None or right is None:
            return
        S = direct_sum(left, right, name=decl.name.text)
        for note in S.notes:
            logger.info("%s: %s", decl.name.text, note)
        self.declare(decl.name, S)

    def images(self, source, target, assignments, default_identity):
        images = {}
        if default_identity:
            images = {i: {i: Fraction(1)} for i in range(source.dim)}
        done = set()
        ok = True
        for line in assignments:
            i = self.generator(source.basis, line.name)
            comb = self.comb(target.basis, line.terms)
            if i is None or comb is None:
                ok = False
                continue
            if i in done:
                self.report("duplicate image of %r" % line.name.text, line.span)
                ok = False
                continue
            done.add(i)
            images[i] = comb
        return images if ok else None

    def morphism(self, decl):
        source = self.lookup(decl.source, DGLA, 'an algebra')
        target = self.lookup(decl.target, DGLA, 'an algebra')
        if source is None or target is None:
            return
        images = self.images(source, target, decl.assignments, default_identity=False)
        if images is not None:
            self.declare(decl.name, DGLAMorphism(source, target, images, name=decl.name.text))

    def action(self, decl):
        algebra = self.lookup(decl.algebra, DGLA, 'an algebra')
        if algebra is None:
            return
        elements = []
        for n, assignments in enumerate(decl.elements):
            images = self.images(algebra, algebra, assignments, default_identity=True)
            if images is None:
                return
            elements.append(DGLAMorphism(algebra, algebra, images, name="%s[%d]" % (decl.name.text, n)))
        self.declare(decl.name, FiniteAction(algebra, elements, name=decl.name.text))


def parse(text):
    """
    Parse and resolve ``.dgla`` text::

        >>> doc = parse("algebra A { basis x:1 y:2; [x,x] = 2*y; }")
        >>> doc.algebra('A').br_basis(0, 0) == {1: 2}
        True
    """
    declarations = _Parser(tokenize(text)).document()
    resolver = _Resolver()
    for decl in declarations:
        kind = type(decl).__name__[:-len('Decl')].lower()
        getattr(resolver, kind)(decl)
    if resolver.diagnostics:
        raise DSLError(resolver.diagnostics)
    logger.debug("parsed %d declarations", len(declarations))
    return Document(declarations, resolver.models, source=text)


def parse_file(path):
    with open(path, 'rb') as f:
        text = f.read().decode('utf-8')
    return parse(text)


def _format_algebra(name, L):
    lines = ["algebra %s {" % name]
    basis = ", ".join("%s:%d" % g for g in L.basis.generators)
    lines.append("  basis %s;" % basis if basis else "  basis ;")
    names = L.basis.names
    for i in sorted(L.differential):
        lines.append("  d %s = %s;" % (names[i], format_lincomb(L.differential[i], names)))
    for (i, j) in sorted(L.bracket):
        if i <= j:
            lines.append("  [%s,%s] = %s;" % (names[i], names[j], format_lincomb(L.bracket[(i, j)], names)))
    lines.append("}")
    return lines


def _format_assignments(f, skip_identity):
    names, target = f.source.basis.names, f.target.basis.names
    out = []
    indices = range(f.source.dim) if skip_identity else sorted(f.images)
    for i in indices:
        comb = f.image(i)
        if skip_identity and comb == {i: 1}:
            continue
        out.append("%s = %s;" % (names[i], format_lincomb(comb, target)))
    return out


def print_document(doc):
    """
    Canonical text of a document. Subalgebras and sums are printed as the
    algebras they resolve to; generator order and names are kept.

        >>> print(print_document(parse("algebra Z { basis ; }")))
        algebra Z {
          basis ;
        }
        <BLANKLINE>
    """
    lines = []
    for name, value in doc.models.items():
        if isinstance(value, DGLA):
            lines.extend(_format_algebra(name, value))
        elif isinstance(value, DGLAMorphism):
            lines.append("morphism %s : %s -> %s {" % (name, value.source.name, value.target.name))
            lines.extend("  " + s for s in _format_assignments(value, False))
            lines.append("}")
        elif isinstance(value, FiniteAction):
            lines.append("action %s on %s {" % (name, value.algebra.name))
            for g in value.elements:
                body = _format_assignments(g, True)
                if body:
                    lines.append("  element {")
                    lines.extend("    " + s for s in body)
                    lines.append("  }")
                else:
                    lines.append("  element { }")
            lines.append("}")
    return "\n".join(lines) + "\n"
