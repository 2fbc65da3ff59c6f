# -*- coding: utf-8 -*-
"""
Reports produced by the command line tool.

A :class:`Report` is rendered either as JSON (sorted keys, rationals as
``"num/den"`` strings, no timing) or as text with :mod:`tabulate` tables.
Both renderings come from the same value.
"""
from __future__ import absolute_import
import json
from fractions import Fraction

from tabulate import tabulate

from dglaformal import __version__
from dglaformal.utils import rational_pair


class Table(object):
    """ A titled table; rows hold plain values """
    def __init__(self, title, headers, rows):
        self.title = title
        self.headers = list(headers)
        self.rows = [list(r) for r in rows]

    def to_dict(self):
        return {'title': self.title, 'headers': self.headers, 'rows': self.rows}

    def render(self):
        rows = [[_text(v) for v in row] for row in self.rows]
        return "%s\n%s" % (self.title, tabulate(rows, headers=self.headers))


def _text(value):
    if value is None:
        return '-'
    if isinstance(value, Fraction):
        return rational_pair(value) if value.denominator != 1 else str(value.numerator)
    return value


def _key(key):
    if isinstance(key, tuple):
        return ",".join(str(k) for k in key)
    return str(key)


def jsonable(value):
    """
    Plain JSON data: Fractions become "num/den", mapping keys become
    strings (tuple keys are joined with commas).

    >>> jsonable({(1, 0): Fraction(1, 2), 'n': [Fraction(3)]})
    {'1,0': '1/2', 'n': ['3/1']}
    """
    if isinstance(value, Fraction):
        return rational_pair(value)
    if isinstance(value, dict):
        return {_key(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, Table):
        return jsonable(value.to_dict())
    if hasattr(value, 'to_dict'):
        return jsonable(value.to_dict())
    return value


class Report(object):

    def __init__(self, command, input_sha256, cutoffs=None, result=None, tables=(),
                 summary=None, twist=None, elapsed=None):
        self.version = __version__
        self.command = command
        self.input_sha256 = input_sha256
        self.cutoffs = dict(cutoffs or {})
        self.result = dict(result or {})
        self.tables = list(tables)
        self.summary = summary
        self.twist = twist
        self.elapsed = elapsed

    def to_dict(self):
        result = dict(self.result)
        if self.tables:
            result['tables'] = [t.to_dict() for t in self.tables]
        if self.summary is not None:
            result['summary'] = self.summary
        if self.twist is not None:
            result['twist'] = self.twist
        return jsonable({
            'version': self.version,
            'command': self.command,
            'input_sha256': self.input_sha256,
            'cutoffs': self.cutoffs,
            'result': result,
        })

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def render(self):
        lines = []
        if self.summary is not None:
            lines.append(self.summary)
        header = ["dglaformal %s" % self.version, self.command]
        if self.cutoffs:
            header.append(" ".join("%s=%s" % kv for kv in sorted(self.cutoffs.items())))
        if self.twist is not None:
            header.append("twist=%s" % self.twist)
        if self.elapsed is not None:
            header.append("%.2fs" % self.elapsed)
        lines.append("[%s]" % ", ".join(header))
        for key, value in sorted(jsonable(self.result).items()):
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True)
            lines.append("%s: %s" % (key, value))
        for table in self.tables:
            lines.append("")
            lines.append(table.render())
        return "\n".join(lines) + "\n"


def dims_table(title, dims, key_headers=('degree',)):
    """ A table from ``{key: dim}``; tuple keys spread over several columns """
    rows = []
    for key in sorted(dims):
        parts = list(key) if isinstance(key, tuple) else [key]
        rows.append(parts + [dims[key]])
    return Table(title, list(key_headers) + ['dim'], rows)
