import math

import numpy as np
import pytest

from twistor.canonical import (M_MIN, PSI5_0_PARAMS, Psi5GeneralParams, bryant_canonical, psi3,
                               psi4_a, psi5_1, psi5_2, psi5_eta, psi5_general, psi5_m)

# Starting points for the three general deformation cases, one per hypothesis set.
CASE_PARAMS = {
    "case1": Psi5GeneralParams(a=0, h=2.5, r=1, l=1, m=-5, s=0),
    "case2": Psi5GeneralParams(a=0, h=-0.5, r=1, l=0, m=1, s=-5 / 3),
    "case3": Psi5GeneralParams(a=0.8, h=-0.5, r=1, l=1, m=1, s=-1.6),
    # l*m = -6: the straight segment towards 0 would cross the bad value -4
    "case3-detour": Psi5GeneralParams(a=1 / 3, h=3, r=1, l=1, m=-6, s=-2 / 3),
}

ETAS = (-5, -1, 0, 1, 2, 5)
MS = (M_MIN, 2, 5, 10, 100)
AS = (0, 1, 2.5)
BRYANT = ((1, 1), (1, 2), (2, 1), (1, 3), (1, 4), (2, 2))


def family_corpus():
    """(label, curve) pairs: every canonical constructor at the standard samples."""
    out = [("psi3", psi3())]
    out += [(f"psi5_eta({e})", psi5_eta(e)) for e in ETAS]
    out += [(f"psi5_m({m:.4g})", psi5_m(m)) for m in MS]
    out += [(f"psi4_a({a})", psi4_a(a)) for a in AS]
    out += [("psi5_1", psi5_1()), ("psi5_2", psi5_2())]
    out += [(f"bryant{k}", bryant_canonical(*k)) for k in BRYANT]
    out += [("psi5_0", psi5_general(Psi5GeneralParams(**PSI5_0_PARAMS)))]
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture(scope="session")
def corpus():
    return family_corpus()


def random_poly(rng, n):
    return rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)


PI = math.pi


# -- acceptance summary -------------------------------------------------------

@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line for a numbered criterion, then enforce it."""
    lines = request.config.stash.setdefault(_ACCEPTANCE_KEY, [])

    def record(label, ok, detail):
        lines.append(f"criterion {label:<3} {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, f"criterion {label}: {detail}"

    return record


_ACCEPTANCE_KEY = pytest.StashKey[list]()


def _criterion_order(line):
    label = line.split()[1]
    digits = label.rstrip("abcdefgh")
    return int(digits), label[len(digits):]


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=_criterion_order):
            terminalreporter.write_line(line)
