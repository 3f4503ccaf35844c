import pytest

from leanopt import metrics


@pytest.fixture
def memory_hooks():
    """Byte-accounting hooks installed for the duration of one test."""
    metrics.install_hooks()
    yield
    metrics.uninstall_hooks()
