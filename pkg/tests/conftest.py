import pytest

from napkin_lab import _kernels


@pytest.fixture(scope="session")
def warm_kernels():
    """Compile the jitted kernels once so timed runs measure steady state."""
    _kernels.warm_up()
    return _kernels.AVAILABLE
