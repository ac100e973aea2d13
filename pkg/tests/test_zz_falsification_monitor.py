from dkgirth.exceptions import falsification_log


def test_no_falsification_events_in_the_whole_suite():
    # runs last; deliberate triggers are removed by the conftest monitor
    assert falsification_log == []
