import os

import numpy as np
import pytest

from twrgraph import _kernels_py as pyk
from twrgraph import kernels

try:
    from twrgraph import _kernels as cyk
except ImportError:  # extension not built
    cyk = None

needs_ext = pytest.mark.skipif(cyk is None, reason="compiled extension not built")


def lexmin_oracle(tmul, rset, f):
    rows = [tuple(int(tmul[r[i], f[i]]) for i in range(len(f))) for r in rset]
    return min(rows)


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


def test_python_lexmin_matches_oracle(cat4):
    rng = np.random.default_rng(0)
    tmul = np.ascontiguousarray(cat4.tmul)
    from conftest import rdata
    R = rdata(4).elements
    for _ in range(200):
        f = rng.integers(0, 60, size=16).astype(np.int32)
        assert tuple(pyk.coset_lexmin(tmul, R, f)) == lexmin_oracle(tmul, R, f)


@needs_ext
@pytest.mark.parametrize("q", [4, 5])
def test_compiled_matches_fallback(q):
    from conftest import catalog, rdata
    c = catalog(q)
    tmul = np.ascontiguousarray(c.tmul)
    R = rdata(q).elements
    nT = len(c.T_elements)
    rng = np.random.default_rng(q)
    conj = np.ascontiguousarray(c.conj_table[5])
    for _ in range(300):
        a = rng.integers(0, nT, size=c.k).astype(np.int32)
        b = rng.integers(0, nT, size=c.k).astype(np.int32)
        idx = rng.permutation(c.k).astype(np.int32)
        assert np.array_equal(cyk.tuple_mul(tmul, a, b), pyk.tuple_mul(tmul, a, b))
        assert np.array_equal(cyk.tuple_twist(conj, a, idx), pyk.tuple_twist(conj, a, idx))
        assert np.array_equal(cyk.coset_lexmin(tmul, R, a), pyk.coset_lexmin(tmul, R, a))
        assert np.array_equal(cyk.coset_members(tmul, R, a), pyk.coset_members(tmul, R, a))


@needs_ext
def test_compiled_accepts_readonly_buffers(cat4):
    tmul = np.ascontiguousarray(cat4.tmul)
    f = np.frombuffer(np.arange(16, dtype=np.int32).tobytes(), dtype=np.int32)
    assert not f.flags.writeable
    assert np.array_equal(cyk.tuple_mul(tmul, f, f), pyk.tuple_mul(tmul, f, f))


def test_pure_backend_subprocess():
    import subprocess
    import sys
    out = subprocess.run([sys.executable, "-c",
                          "from twrgraph import kernels; print(kernels.BACKEND)"],
                         env={**os.environ, "TWRGRAPH_PURE": "1"},
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_ball_same_under_both_backends(monkeypatch):
    """Swap the selected kernels for the numpy ones and rebuild a ball."""
    from twrgraph.graph import CosetGraph
    from conftest import catalog, rdata
    c, r = catalog(4), rdata(4)
    ref = CosetGraph(c, r).ball(CosetGraph(c, r).u, 2).vertices
    for name in ("tuple_mul", "tuple_twist", "coset_lexmin", "coset_members"):
        monkeypatch.setattr(kernels, name, getattr(pyk, name))
    G = CosetGraph(c, r)
    assert G.ball(G.u, 2).vertices == ref
