# -*- coding: utf-8 -*-
"""
Combinable axiom checks.

A *check* is a callable that takes the object being validated and returns
a list of :class:`Violation` objects. :class:`CombinedChecks` runs several
checks and concatenates their findings into a :class:`ValidationReport`::

    >>> @rule('positive')
    ... def positive(x):
    ...     if x <= 0:
    ...         yield (x,), 'not positive'
    >>> @rule('even')
    ... def even(x):
    ...     if x % 2:
    ...         yield (x,), 'odd'
    >>> report = CombinedChecks(positive, even)(-3)
    >>> report.ok, [v.rule for v in report.violations]
    (False, ['positive', 'even'])

Violations are data: validation never raises.
"""
from __future__ import absolute_import
import collections
import functools

try:
    from cytoolz import functoolz
except ImportError:
    from toolz import functoolz


Violation = collections.namedtuple('Violation', 'rule witness detail')


class ValidationReport(object):
    def __init__(self, subject, violations, extra=None):
        self.subject = subject
        self.violations = list(violations)
        self.extra = dict(extra or {})

    @property
    def ok(self):
        return not self.violations

    def rules_violated(self):
        return sorted(set(v.rule for v in self.violations))

    def to_dict(self):
        result = {
            'subject': self.subject,
            'valid': self.ok,
            'violations': [
                {'rule': v.rule, 'witness': list(v.witness), 'detail': v.detail}
                for v in self.violations
            ],
        }
        result.update(self.extra)
        return result

    def __repr__(self):
        if self.ok:
            return "<ValidationReport %s: valid>" % self.subject
        return "<ValidationReport %s: %d violations (%s)>" % (
            self.subject, len(self.violations), ", ".join(self.rules_violated()))


def rule(name):
    """
    Turn a generator of ``(witness, detail)`` pairs into a check returning
    a list of violations of the rule ``name``.
    """
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            return [Violation(name, tuple(witness), detail)
                    for witness, detail in func(*args, **kwargs)]
        wrapper.rule_name = name
        return wrapper
    return decorator


class CombinedChecks(object):
    """ Run several checks on the same arguments; collect all violations """
    def __init__(self, *checks, **kwargs):
        self.subject = kwargs.get('subject')
        self._combined = functoolz.juxt(checks)

    def __call__(self, *args, **kwargs):
        violations = []
        for found in self._combined(*args, **kwargs):
            violations.extend(found)
        subject = self.subject
        if subject is None and args:
            subject = getattr(args[0], 'name', None) or type(args[0]).__name__
        return ValidationReport(subject, violations)
