import numpy as np
import pytest

from labelspace import _kernels
from labelspace.oracles import random_graph


def reference(g, masks):
    return [[g.image(m, a) for a in range(len(g.labels))] for m in masks]


@pytest.mark.parametrize("seed", range(5))
def test_backends_agree(seed):
    import random
    rng = random.Random(seed)
    g = random_graph(rng, max_vertices=6)
    masks = [rng.randrange(g.full + 1) for _ in range(50)]
    packed = _kernels.pack(masks, _kernels.n_words(g.n))
    expected = reference(g, masks)
    for backend in ("numpy", "numba"):
        out = _kernels.images(g.succ_table(), packed, backend)
        got = _kernels.unpack(out.reshape(-1, out.shape[-1]))
        assert [got[i * len(g.labels):(i + 1) * len(g.labels)] for i in range(len(masks))] == expected


def test_wide_bitsets_round_trip():
    ints = [0, 1, (1 << 64) | 5, (1 << 130) - 1]
    packed = _kernels.pack(ints, _kernels.n_words(131))
    assert packed.shape == (4, 3)
    assert _kernels.unpack(packed) == ints


def test_wide_graph_kernel():
    from labelspace.graph import parse_graph
    n = 150
    text = "".join(f"edge u{i} u{(i + 1) % n} a\nedge u{i} u{(3 * i) % n} b\n" for i in range(n))
    g = parse_graph(text)
    masks = [g.full, 1 | (1 << 149), 1 << 70]
    packed = _kernels.pack(masks, _kernels.n_words(g.n))
    for backend in ("numpy", "numba"):
        out = _kernels.images(g.succ_table(), packed, backend)
        got = _kernels.unpack(out.reshape(-1, out.shape[-1]))
        assert got == [x for row in reference(g, masks) for x in row]


def test_env_flag_disables_numba(monkeypatch):
    monkeypatch.setenv("LABELSPACE_DISABLE_NUMBA", "1")
    assert not _kernels.numba_enabled()
    monkeypatch.setenv("LABELSPACE_DISABLE_NUMBA", "0")
    assert _kernels.numba_enabled()


def test_unknown_backend():
    with pytest.raises(ValueError):
        _kernels.images(np.zeros((1, 1, 1), dtype=np.uint64), np.zeros((1, 1), dtype=np.uint64), "gpu")
