import pytest

from eqrep import _kernels


@pytest.fixture(params=_kernels.available_backends())
def backend(request):
    """Run the test once per installed kernel backend."""
    with _kernels.use_backend(request.param):
        yield request.param
