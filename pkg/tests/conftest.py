import math

import numpy as np
import pytest

from chuacrypt.keystream import KeyConfig, generate_keystream, log_error_for_key
from chuacrypt.pgm import load_sample_image

N_SAMPLES = 65536


def doubling_map_series(n, extra_bits=64):
    """x_k = frac(2**k * sqrt(2)), from exact integer bits of sqrt(2).

    Iterating 2x mod 1 in binary64 collapses to 0 after ~53 steps, so the
    orbit is read off a long exact binary expansion instead.
    """
    bits = n + extra_bits
    root = math.isqrt(2 << (2 * bits))  # floor(sqrt(2) * 2**bits)
    mask = (1 << bits) - 1
    scale = 1 << bits
    return np.array([((root << k) & mask) / scale for k in range(n)])


@pytest.fixture(scope="session")
def paper_key():
    return KeyConfig()


@pytest.fixture(scope="session")
def sample_image():
    return load_sample_image()


@pytest.fixture(scope="session")
def paper_keystream(paper_key):
    return generate_keystream(paper_key, N_SAMPLES)


@pytest.fixture(scope="session")
def paper_log_error(paper_key):
    return np.array(log_error_for_key(paper_key, N_SAMPLES))


# Acceptance criteria record a one-line verdict here; printed after the run.
ACCEPTANCE_RESULTS = {}


@pytest.fixture
def criterion(request):
    """Call with (number, description, passed, detail); asserts ``passed``."""

    def record(number, description, passed, detail=""):
        ACCEPTANCE_RESULTS.setdefault(number, []).append((description, bool(passed), detail))
        assert passed, f"criterion {number} ({description}) failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        for description, passed, detail in ACCEPTANCE_RESULTS[number]:
            verdict = "PASS" if passed else "FAIL"
            tr.write_line(f"[{verdict}] {number}. {description}: {detail}")
