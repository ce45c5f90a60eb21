import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings

from crkit import corpus
from crkit.gaussrat import GaussRat
from crkit.poly import Poly, Ring

settings.register_profile("crkit", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("crkit")

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def frozen():
    return json.loads((DATA / "frozen.json").read_text())


@pytest.fixture(scope="session")
def examples():
    return {name: corpus.load(name) for name in corpus.NAMES}


def gauss(pair) -> GaussRat:
    return GaussRat(Fraction(pair[0]), Fraction(pair[1]))


def poly_from_terms(ring: Ring, terms) -> Poly:
    return Poly(ring, {tuple(e): gauss(c) for e, c in terms})


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for tag, ok, detail in RESULTS:
        terminalreporter.write_line("%s %s: %s" % ("PASS" if ok else "FAIL", tag, detail))
