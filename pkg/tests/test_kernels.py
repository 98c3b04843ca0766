import os
import random
import subprocess
import sys

import pytest

from qspace import _kernels_py, kernels

compiled = pytest.importorskip("qspace._kernels", reason="compiled kernels not built")


def _masks(rng, count, bits, density):
    return [sum(1 << b for b in range(bits) if rng.random() < density) | 1 for _ in range(count)]


@pytest.mark.parametrize("seed", range(6))
def test_simplex_count_parity(seed):
    rng = random.Random(seed)
    masks = _masks(rng, rng.randint(4, 18), rng.choice([8, 64, 130]), 0.6)
    for r in (2, 3):
        for thr in (1, 2, 4):
            for check in (False, True):
                n = len(masks)
                lo, hi = rng.randint(0, n // 2), rng.randint(n // 2, n)
                args = (masks, r, thr, lo, hi, check)
                assert compiled.count_simplices(*args) == _kernels_py.count_simplices(*args)


@pytest.mark.parametrize("seed", range(4))
def test_graph_and_sequence_parity(seed):
    rng = random.Random(100 + seed)
    masks = _masks(rng, rng.randint(1, 70), rng.choice([16, 100]), 0.5)
    for thr in (1, 3, 8):
        assert compiled.adjacency(masks, thr) == _kernels_py.adjacency(masks, thr)
        for r in (2, 3):
            assert compiled.all_intersecting(masks, r, thr) == _kernels_py.all_intersecting(masks, r, thr)
    small = masks[:9]
    for length in (1, 2, 3):
        for target in (1, 2):
            assert compiled.count_sequences(small, length, target) == _kernels_py.count_sequences(small, length, target)


def test_rref_parity():
    rng = random.Random(5)
    for _ in range(200):
        width = rng.choice([5, 40, 63, 70])
        rows = [rng.getrandbits(width) for _ in range(rng.randint(0, 8))]
        assert compiled.gf2_rref(rows) == _kernels_py.gf2_rref(rows)


def test_adjacency_handles_wide_graphs():
    masks = [0b11] * 80
    adj = compiled.adjacency(masks, 2)
    assert adj[0] == ((1 << 80) - 1) & ~1


def test_backend_switch():
    env = dict(os.environ, QSPACE_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from qspace import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
    assert kernels.BACKEND in ("cython", "python")
