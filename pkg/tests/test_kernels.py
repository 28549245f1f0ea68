import itertools
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from infowidth import _pykernels, kernels

import oracles

try:
    from infowidth import _ckernels
except ImportError:  # extension not built
    _ckernels = None

IMPLS = [_pykernels] + ([_ckernels] if _ckernels is not None else [])
IDS = [m.BACKEND for m in IMPLS]


def _naive_rows(batch, n):
    funcs = [[tuple((int(f) >> i) & 1 for i in range(n)) for f in row] for row in batch]
    return [oracles.naive_vc(c, n) for c in funcs], [oracles.naive_l(c, n) for c in funcs]


@pytest.mark.parametrize("impl", IMPLS, ids=IDS)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumerate_dims_matches_oracle(impl, n):
    vc, ld = impl.enumerate_dims(n)
    assert vc[0] == ld[0] == -1
    nf = 1 << n
    for mask in range(1, 1 << nf):
        cls = [tuple((f >> i) & 1 for i in range(n)) for f in range(nf) if mask >> f & 1]
        assert vc[mask] == oracles.naive_vc(cls, n)
        assert ld[mask] == oracles.naive_l(cls, n)


@pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")
def test_enumerate_dims_backends_agree_n4():
    a, b = _pykernels.enumerate_dims(4), _ckernels.enumerate_dims(4)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


@st.composite
def batches(draw):
    n = draw(st.integers(1, 9))
    k = draw(st.integers(1, min(40, 1 << n)))
    rows = draw(st.integers(1, 6))
    data = [draw(st.lists(st.integers(0, (1 << n) - 1), min_size=k, max_size=k, unique=True)) for _ in range(rows)]
    return n, np.array(data, dtype=np.int64)


@pytest.mark.parametrize("impl", IMPLS, ids=IDS)
@given(batches())
def test_batch_kernels_match_oracle(impl, case):
    n, batch = case
    vc, ld = _naive_rows(batch, n)
    assert list(impl.vc_dims(batch, n)) == vc
    assert list(impl.l_dims(batch, n)) == ld
    for d in range(0, n + 2):
        assert list(impl.shatters_any(batch, n, d)) == [v >= d for v in vc]


def test_wide_shatter_path():
    # d = 6 needs 64 patterns, beyond a single int64 bitset
    n = 7
    full = np.arange(1 << n, dtype=np.int64)[None, :]
    for impl in IMPLS:
        assert impl.shatters_any(full, n, 6)[0]
        assert impl.vc_dims(full, n)[0] == n
        assert not impl.shatters_any(full[:, :100], n, 7)[0]


def test_point_subsets():
    for impl in IMPLS:
        got = impl.point_subsets(4, 2)
        assert got.tolist() == [list(c) for c in itertools.combinations(range(4), 2)]
        assert impl.point_subsets(2, 3).shape == (0, 3)


def test_pure_python_switch():
    code = "from infowidth import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, INFOWIDTH_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    assert kernels.BACKEND in ("python", "cython")
