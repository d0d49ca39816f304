from __future__ import annotations

import pytest

from beds import verify


@pytest.fixture(scope="session")
def verify_report() -> verify.VerifyReport:
    """One full self-verification run shared by the acceptance tests."""

    return verify.run_all(verify.DEFAULT_SEED_BASE)
