# -*- coding: utf-8 -*-
from __future__ import absolute_import
import pytest

from dglaformal import dsl
from dglaformal.cli import DEFAULT_INPUT


@pytest.fixture(scope='session')
def document():
    return dsl.parse_file(DEFAULT_INPUT)


@pytest.fixture(scope='session')
def M(document):
    return document.algebra('M')


@pytest.fixture(scope='session')
def L(document):
    return document.algebra('L')


@pytest.fixture(scope='session')
def inclusion(document):
    return document.morphism('i')


@pytest.fixture(scope='session')
def MM(document):
    return document.algebra('MM')


@pytest.fixture(scope='session')
def swap(document):
    return document.action('swap')
