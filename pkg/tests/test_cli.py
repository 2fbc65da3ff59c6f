# -*- coding: utf-8 -*-
from __future__ import absolute_import
import io
import json

import pytest

from dglaformal.cli import EXIT_INVALID, EXIT_OK, EXIT_UNDETERMINED, EXIT_USAGE, run


def _run(*argv):
    out = io.StringIO()
    status = run(list(argv), stdout=out)
    return status, out.getvalue()


def _load(path):
    with io.open(path, encoding='utf-8') as f:
        return json.load(f)


def test_cohom():
    status, out = _run('cohom', '--algebra', 'M')
    assert status == EXIT_OK
    assert out.startswith("H(M): H^1=2, H^2=1\n")
    assert '[h2]' in out


def test_json_reports_are_deterministic(tmpdir):
    first, second = str(tmpdir.join('a.json')), str(tmpdir.join('b.json'))
    assert _run('cohom', '--algebra', 'L', '--json', first)[0] == EXIT_OK
    assert _run('cohom', '--algebra', 'L', '--json', second)[0] == EXIT_OK
    with io.open(first, 'rb') as a, io.open(second, 'rb') as b:
        assert a.read() == b.read()
    data = _load(first)
    assert data['command'] == 'cohom'
    assert len(data['input_sha256']) == 64
    assert data['result']['dims'] == {'1': 1, '2': 1}
    assert data['result']['bracket'] == []


def test_validate():
    status, out = _run('validate')
    assert status == EXIT_OK
    assert out.startswith("valid\n")


def test_mc():
    status, out = _run('mc', '--algebra', 'M')
    assert status == EXIT_OK
    assert '-x_e2^2 + 2*x_e3' in out


def test_certificate_roundtrip(tmpdir):
    path = str(tmpdir.join('euler.json'))
    status, out = _run('euler', '--algebra', 'L', '--r-max', '2', '--json', path)
    assert status == EXIT_OK
    assert out.startswith("d_2(e_f) != 0\n")
    data = _load(path)
    assert data['result']['obstruction_r'] == 2
    assert data['result']['window'] == {'algebra': 'L', 'morphism': None, 'p_max': 4}

    assert _run('check-certificate', path)[0] == EXIT_OK

    data['result']['certificate']['target'] = []
    forged = str(tmpdir.join('forged.json'))
    with io.open(forged, 'w', encoding='utf-8') as f:
        f.write(json.dumps(data, ensure_ascii=False))
    status, out = _run('check-certificate', forged)
    assert status == EXIT_INVALID
    assert out.startswith("certificate INVALID\n")


def test_certificate_is_required(tmpdir):
    path = str(tmpdir.join('cohom.json'))
    _run('cohom', '--json', path)
    assert _run('check-certificate', path)[0] == EXIT_INVALID


def test_require_conclusive():
    assert _run('euler', '--algebra', 'M', '--r-max', '2')[0] == EXIT_OK
    assert _run('euler', '--algebra', 'M', '--r-max', '2', '--require-conclusive')[0] == EXIT_UNDETERMINED
    assert _run('page', '--algebra', 'M', '--require-conclusive')[0] == EXIT_UNDETERMINED


def test_non_formal_verdict_is_conclusive():
    status, out = _run('formality', '--algebra', 'L', '--r-max', '2', '--massey',
                       '--require-conclusive')
    assert status == EXIT_OK
    assert out.startswith("L is not formal: d_2 != 0 at E^(1,0)\n")


def test_transfer():
    status, out = _run('transfer', '--morphism', 'i', '--p-max', '2', '--assert-formal', 'M')
    assert status == EXIT_OK
    assert out.startswith("L: transfer hypotheses not met\n")
    assert _run('transfer', '--p-max', '2', '--assert-formal', 'L')[0] == EXIT_INVALID


def test_invariants():
    status, out = _run('invariants', '--action', 'swap')
    assert status == EXIT_OK
    assert out.startswith("dim MM^G = 5, retraction holds\n")


def test_pbw():
    status, out = _run('pbw', '--algebra', 'L', '--truncation', '2')
    assert status == EXIT_OK
    assert out.startswith("PBW checks pass up to N=2\n")


def test_invalid_input(tmpdir, capsys):
    path = tmpdir.join('bad.dgla')
    path.write("algebra A { basis x:1, h:2;\n  d x = 0.5*h; }\n")
    assert _run('cohom', '--input', str(path))[0] == EXIT_INVALID
    err = capsys.readouterr().err
    assert "bad.dgla:2:9: decimal coefficient 0.5" in err


def test_missing_input(tmpdir):
    assert _run('cohom', '--input', str(tmpdir.join('missing.dgla')))[0] == EXIT_INVALID


def test_unknown_algebra():
    assert _run('cohom', '--algebra', 'nope')[0] == EXIT_INVALID


@pytest.mark.parametrize('argv', [[], ['frobnicate'], ['cohom', '--p-max', 'x']])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as excinfo:
        run(argv, stdout=io.StringIO())
    assert excinfo.value.code == EXIT_USAGE
