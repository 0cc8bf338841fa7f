import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from duflostar import Poly, StarContext, WheelCoefficients, catalog  # noqa: E402
from duflostar.poly import monomials_up_to  # noqa: E402

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

ALGEBRAS = ("abelian_3", "heisenberg3", "sl2", "so3", "aff1", "ut3")

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 5))


def polys(dim, max_deg=3, max_terms=4):
    monos = monomials_up_to(dim, max_deg)
    return st.dictionaries(st.sampled_from(monos), rationals, max_size=max_terms).map(
        lambda t: Poly(dim, t))


@pytest.fixture(params=ALGEBRAS)
def algebra(request):
    return catalog(request.param)


_CTX = {}


def context(name, trunc, profile="zero"):
    key = (name, trunc, profile)
    if key not in _CTX:
        wheels = WheelCoefficients.duflo(trunc) if profile == "duflo" else WheelCoefficients.zero()
        _CTX[key] = StarContext.build(catalog(name), trunc, wheels)
    return _CTX[key]


# -- acceptance summary: one line per criterion, derived from real outcomes

_OUTCOMES = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and rep.passed):
        return
    n = mark.args[0]
    entry = _OUTCOMES.setdefault(n, {"passed": [], "failed": []})
    if rep.failed:
        entry["failed"].append(item.name)
    elif rep.when == "call":
        entry["passed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_OUTCOMES):
        e = _OUTCOMES[n]
        total = len(e["passed"]) + len(e["failed"])
        if e["failed"]:
            line = f"criterion {n}: FAIL ({len(e['failed'])}/{total} cells failed: {', '.join(e['failed'])})"
        else:
            line = f"criterion {n}: PASS ({total}/{total} cells)"
        terminalreporter.write_line(line)
