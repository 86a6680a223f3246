import pytest

from meanlcb import _kernels


@pytest.fixture(autouse=True)
def _restore_backend():
    before = _kernels.active_backend()
    yield
    _kernels.set_backend(before)
