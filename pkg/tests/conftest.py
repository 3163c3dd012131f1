import itertools
from pathlib import Path

import pytest

from geodesy.core import Presentation, parse_word
from geodesy.models import RewritingModel, bs_model, free_abelian_model, free_group_model
from geodesy.oracles import build_ball

ROOT = Path(__file__).resolve().parents[1]
Z3_FILE = ROOT / "presentations" / "z3.grp"
Z3_TEXT = """\
gens: a
rels: aaa
rules: aA -> ; Aa -> ; aa -> A ; AA -> a
"""


def z3_model():
    return RewritingModel(Presentation.from_text(Z3_TEXT), assume_confluent=True, name="z3")


@pytest.fixture(scope="session")
def z2():
    return free_abelian_model(2)


@pytest.fixture(scope="session")
def f2():
    return free_group_model(2)


@pytest.fixture(scope="session")
def z3():
    return z3_model()


@pytest.fixture(scope="session")
def bs2():
    return bs_model(2)


@pytest.fixture(scope="session")
def z2_ball(z2):
    return build_ball(z2, 8)


@pytest.fixture(scope="session")
def f2_ball(f2):
    return build_ball(f2, 8)


@pytest.fixture(scope="session")
def z3_ball(z3):
    return build_ball(z3, 8)


@pytest.fixture(scope="session")
def bs2_ball(bs2):
    return build_ball(bs2, 8)


def W(model, text):
    return parse_word(text, model.presentation)


def words_up_to(letters, n):
    for k in range(n + 1):
        yield from itertools.product(letters, repeat=k)


def brute_length(model, w, limit=8):
    """Shortest word equal to ``w`` found by trying every word in length order.

    Uses only ``model.eval``; independent of the ball search.
    """
    target = model.eval(w)
    for k in range(limit + 1):
        for v in itertools.product(model.alphabet, repeat=k):
            if model.eval(v) == target:
                return k
    raise AssertionError("brute force limit reached")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(text): acceptance criterion covered by a test")


_criteria = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria.append((report.outcome.upper().replace("PASSED", "PASS").replace("FAILED", "FAIL"),
                          marker.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for status, text in _criteria:
        terminalreporter.write_line(f"{status:<7} {text}")
