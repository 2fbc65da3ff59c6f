# -*- coding: utf-8 -*-
from __future__ import absolute_import

import pytest

from dglaformal.dsl import Diagnostic, SourceSpan, parse, print_document, tokenize
from dglaformal.exceptions import DSLError, PreconditionError


def _diagnostics(text):
    with pytest.raises(DSLError) as excinfo:
        parse(text)
    return excinfo.value.diagnostics


def test_token_spans():
    text = "algebra A {\n  basis x:1;\n}"
    x = [t for t in tokenize(text) if t.text == 'x'][0]
    assert x.span == SourceSpan(2, 9, 20, 1)
    assert x.span.slice(text) == 'x'
    assert tokenize(text)[-1].kind == 'eof'


def test_spans_count_bytes():
    text = u"# αβ\nalgebra A { basis ; }"
    first = tokenize(text)[0]
    assert (first.span.line, first.span.column, first.span.offset) == (2, 1, 7)
    assert first.span.slice(text) == 'algebra'


def test_decimals_are_rejected():
    text = "algebra A { basis x:1, h:2; d x = 0.5*h; }"
    diagnostic, = _diagnostics(text)
    assert 'decimal' in diagnostic.message
    assert diagnostic.span.slice(text) == '0.5'


def test_unexpected_character():
    diagnostic, = _diagnostics("algebra A { basis x:1 ; } %")
    assert 'unexpected character' in diagnostic.message


def test_syntax_error():
    diagnostic, = _diagnostics("algebra A { basis x 1; }")
    assert diagnostic.message == "expected ':', found '1'"
    assert str(diagnostic.span) == '1:21'


def test_zero_denominator():
    text = "algebra A { basis x:1, h:2; d x = 1/0*h; }"
    diagnostic, = _diagnostics(text)
    assert diagnostic.message == 'zero denominator'
    assert diagnostic.span.slice(text) == '1/0'


def test_degree_violation():
    text = "algebra A { basis e1:1, e2:1, h:2; [e1,e2] = e1; }"
    diagnostic, = _diagnostics(text)
    assert diagnostic.message == 'degree violation: e1 has degree 1, expected 2'
    assert diagnostic.span.slice(text) == '[e1,e2] = e1;'


def test_inconsistent_bracket():
    text = "algebra A { basis x:1, y:1, h:2; [x,y] = h; [y,x] = -h; }"
    diagnostic, = _diagnostics(text)
    assert 'graded antisymmetry' in diagnostic.message
    assert diagnostic.span.slice(text) == '[y,x] = -h;'
    consistent = parse("algebra A { basis x:1, y:1, h:2; [x,y] = h; [y,x] = h; }")
    assert consistent.algebra().br_basis(1, 0) == {2: 1}


def test_diagnostics_are_collected():
    text = ("algebra A { basis x:1, h:2; }\n"
            "algebra C { basis y:1, y:2; d y = q; }\n"
            "sum S = A + B;")
    diagnostics = _diagnostics(text)
    assert [d.message for d in diagnostics] == [
        "duplicate generator 'y'",
        "unknown generator 'q'",
        "'B' does not name an algebra",
    ]
    for d in diagnostics:
        assert d.span.slice(text).startswith(d.message.split("'")[1])
    assert diagnostics[2].span.line == 3


def test_subalgebra_must_close():
    text = "algebra A { basis x:1, h:2; [x,x] = h; }\nsubalgebra B of A { span x; }"
    diagnostic, = _diagnostics(text)
    assert diagnostic.span.line == 2
    assert diagnostic.span.slice(text).startswith('subalgebra B')


def test_span_labels():
    doc = parse("algebra A { basis x:1, h:2; [x,x] = h; }\nsubalgebra B of A { span u = 2*x, h; }")
    assert doc.algebra('B').basis.names == ['u', 'h']
    assert doc.algebra_names() == ['A', 'B']


def test_lookups(document):
    assert document.algebra().name == 'M'
    assert document.morphism().name == 'i'
    assert 'MM' in document
    with pytest.raises(PreconditionError):
        document.action('M')
    with pytest.raises(PreconditionError):
        document.algebra('nope')


def test_empty_document():
    doc = parse("# nothing here\n")
    assert doc.algebra_names() == []
    with pytest.raises(PreconditionError):
        doc.algebra()
    assert parse(str(doc)) == doc


def test_printing(document):
    text = print_document(document)
    assert text.startswith("algebra M {\n  basis e1:1, e2:1, e3:1, h1:2, h2:2;\n  d e3 = h1;\n")
    assert "  [e1,e1] = -h2;\n" in text
    assert "  [e2,e2] = -h1 + h2;\n" in text
    assert "morphism i : L -> M {\n  e1_e2 = e1 + e2;\n" in text
    assert "action swap on MM {\n  element { }\n" in text


def test_printed_document_parses_back(document):
    assert parse(str(document)) == document


def test_diagnostic_to_dict():
    diagnostic = Diagnostic('oops', SourceSpan(1, 2, 1, 3))
    assert diagnostic.to_dict() == {
        'message': 'oops', 'span': {'line': 1, 'column': 2, 'offset': 1, 'length': 3}}
    assert str(diagnostic) == '1:2: oops'
    assert str(DSLError([diagnostic])) == '1:2: oops'
