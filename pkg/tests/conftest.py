import numpy as np
import pytest

from parrondo.model import BiasParams


def power_iteration_stationary(P, iters=20000):
    """Independent oracle: iterate a row distribution until it stops moving."""
    pi = np.full(P.shape[0], 1.0 / P.shape[0])
    for _ in range(iters):
        nxt = pi @ P
        if np.max(np.abs(nxt - pi)) < 1e-16:
            break
        pi = nxt
    return pi


def mod_chain_matrix(probs):
    m = len(probs)
    P = np.zeros((m, m))
    for s, p in enumerate(probs):
        P[s, (s + 1) % m] += p
        P[s, (s - 1) % m] += 1 - p
    return P


def oracle_drift(probs):
    pi = power_iteration_stationary(mod_chain_matrix(probs))
    return float(sum(pi[s] * (2 * probs[s] - 1) for s in range(len(probs))))


@pytest.fixture
def default_bias():
    return BiasParams(epsilon=0.005, m=3)


_CRITERIA = []


@pytest.fixture
def report():
    """Record one acceptance criterion, then fail the test if any check failed."""

    def record(number, title, checks):
        ok = all(passed for _, passed in checks)
        failed = [desc for desc, passed in checks if not passed]
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}"
        if failed:
            line += "  [failed: " + "; ".join(failed) + "]"
        _CRITERIA.append((number, line))
        print(line)
        for desc, passed in checks:
            print(f"    {'ok ' if passed else 'BAD'} {desc}")
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_CRITERIA):
            terminalreporter.write_line(line)
