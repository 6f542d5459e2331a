"""The compiled and pure-Python PBW kernels must agree term by term."""
import os
import subprocess
import sys

import pytest

from wlax._pbw_py import PBWKernel as PyKernel
from wlax.uea import KERNEL, UEA

from conftest import setup_for

core = pytest.importorskip("wlax._pbw_core")


def test_compiled_kernel_selected():
    assert KERNEL == "compiled"


@pytest.mark.parametrize("case", [("gl", 3, (2, 1)), ("so", 5, (5,)), ("sp", 4, (2, 2))])
def test_kernels_agree(case, rng):
    s = setup_for(*case)
    a_py, a_c = UEA(s, PyKernel), UEA(s, core.PBWKernel)
    d = a_py.dim
    for _ in range(25):
        f1 = [rng.randrange(d) for _ in range(rng.randint(1, 4))]
        f2 = [rng.randrange(d) for _ in range(rng.randint(1, 4))]
        x_py = a_py.monomial(f1) * a_py.monomial(f2)
        x_c = a_c.monomial(f1) * a_c.monomial(f2)
        assert x_py.terms == x_c.terms


def test_memo_controls():
    s = setup_for("gl", 2, (2,))
    k = core.PBWKernel(4, s.algebra.structure)
    k.mono_gen((3,), 0)
    assert k.memo_size() > 0
    k.clear()
    assert k.memo_size() == 0


def test_pure_python_fallback():
    env = dict(os.environ, WLAX_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "import wlax; print(wlax.KERNEL)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
