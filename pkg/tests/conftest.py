import pytest

from tilebench.kernels import warm_up


@pytest.fixture(scope="session", autouse=True)
def compiled_kernels():
    # JIT-compile (or load cached) kernels once so no test times compilation.
    warm_up()
