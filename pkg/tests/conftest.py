import pytest
from hypothesis import strategies as st

from dkgirth.field import mk_field

SMALL_FIELDS = {
    2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1),
    8: (2, 3), 9: (3, 2), 16: (2, 4), 25: (5, 2), 27: (3, 3),
}


def field(q):
    return mk_field(*SMALL_FIELDS[q])


@st.composite
def field_and_elems(draw, qs=(3, 4, 5, 8, 9), count=3, nonzero=False):
    F = field(draw(st.sampled_from(qs)))
    lo = 1 if nonzero else 0
    return F, [draw(st.integers(lo, F.q - 1)) for _ in range(count)]


@pytest.fixture
def gf3():
    return field(3)


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "deliberate_falsification: test triggers PaperFalsified on purpose")


@pytest.fixture(autouse=True)
def _falsification_monitor(request):
    from dkgirth.exceptions import falsification_log
    before = len(falsification_log)
    yield
    if request.node.get_closest_marker("deliberate_falsification"):
        del falsification_log[before:]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    import sys
    from dkgirth.exceptions import falsification_log

    results = None
    for mod in list(sys.modules.values()):
        results = getattr(mod, "ACCEPTANCE_RESULTS", None)
        if results is not None:
            break
    if not results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in range(1, 12):
        if n not in results:
            tr.write_line(f"ACCEPTANCE {n:>2} NOT RUN")
            continue
        ok, text = results[n]
        if n == 11 and falsification_log:
            ok, text = False, f"{text}; {len(falsification_log)} falsification event(s) in the suite"
        tr.write_line(f"ACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'}  {text}")
    tr.write_line(f"falsification events across the whole run: {len(falsification_log)}")
