import sys
from functools import lru_cache

from tangles import lattice as L
from tangles.enumeration import enumerate_by_ops

SMALL = {L.SQUARE: 4, L.HEXAGONAL: 4, L.TRIANGULAR: 6}


@lru_cache(maxsize=None)
def small_instances(tag: str):
    t = L.get_tiling(tag)
    return tuple(enumerate_by_ops(t, SMALL[t]).instances())


def all_small():
    return [p for t in SMALL for p in small_instances(t.tag)]


def lattice_shift(t, a: int, b: int):
    """A translation vector of the tiling, as a vertex-id delta."""
    if t is L.SQUARE:
        return (2 * a, 0, 2 * b, 0)
    if t is L.TRIANGULAR:
        return (2 * a + b, 0, 0, b)
    return (3 * a, 0, 0, a + 2 * b)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
