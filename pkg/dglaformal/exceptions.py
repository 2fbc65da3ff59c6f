# -*- coding: utf-8 -*-
from __future__ import absolute_import


class DGLAFormalError(Exception):
    """ Base class for all errors raised by dglaformal """


class PreconditionError(DGLAFormalError, ValueError):
    """ An operation was called on inputs violating its preconditions """


class WellDefinednessError(PreconditionError):
    """ A linear map does not descend to the requested subquotients """


class TruncationError(PreconditionError):
    """ A product or a word does not fit into the enveloping truncation """


class WindowError(DGLAFormalError):
    """ A computation needs bicomplex cells outside of the window """


class SignConventionError(DGLAFormalError):
    """
    Internal inconsistency of the sign bookkeeping (e.g. the Euler cochain
    is not a d_1-cocycle). It always indicates a bug, not bad input.
    """


class DSLError(DGLAFormalError):
    """ Input text could not be parsed or resolved; see ``diagnostics`` """
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super(DSLError, self).__init__("\n".join(str(d) for d in self.diagnostics))
