import csv
import json
import os

import pytest
from hypothesis import settings

settings.register_profile("suite", max_examples=25, deadline=None)
settings.load_profile("suite")

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture(scope="session")
def z_table():
    """(t, Z(t)) rows from the high-precision oracle."""
    with open(os.path.join(FIXTURES, "z_table.csv")) as fh:
        rdr = csv.DictReader(fh)
        return [(float(r["t"]), float(r["z"])) for r in rdr]


@pytest.fixture(scope="session")
def zero_table():
    with open(os.path.join(FIXTURES, "zeros.csv")) as fh:
        rdr = csv.DictReader(fh)
        return [(int(r["k"]), float(r["gamma"])) for r in rdr]


@pytest.fixture(scope="session")
def oracle():
    with open(os.path.join(FIXTURES, "oracle_scalars.json")) as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def calibration():
    with open(os.path.join(FIXTURES, "calibration.json")) as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def shared_cache():
    """One checkpoint cache for the whole session.

    Checkpoint values are evaluation-order independent, so sharing does
    not couple tests; it only avoids recomputing stride integrals.
    """
    from ladderlab.integral import CheckpointCache

    return CheckpointCache()
