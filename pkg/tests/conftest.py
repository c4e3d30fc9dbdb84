import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from starfree.corpus import builtin_fixtures, fixture_by_name
from starfree.classifier import classify
from starfree.engine import analyze
from starfree.monoid import syntactic_context

_dfa_cache = {}
_classify_cache = {}
_analyze_cache = {}
_ctx_cache = {}


def fixture_dfa(name):
    if name not in _dfa_cache:
        _dfa_cache[name] = fixture_by_name(name).dfa()
    return _dfa_cache[name]


def fixture_report(name):
    if name not in _classify_cache:
        _classify_cache[name] = classify(fixture_dfa(name))
    return _classify_cache[name]


def fixture_artifacts(name):
    if name not in _analyze_cache:
        _analyze_cache[name] = analyze(fixture_dfa(name))
    return _analyze_cache[name]


def fixture_ctx(name):
    if name not in _ctx_cache:
        _ctx_cache[name] = syntactic_context(fixture_dfa(name))
    return _ctx_cache[name]


@pytest.fixture(scope="session")
def all_fixtures():
    return builtin_fixtures()
