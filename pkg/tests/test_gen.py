import numpy as np
import pytest

from gfusion.errors import InvalidConfig
from gfusion.gen import (
    GenConfig,
    alternate_dual_pair,
    mercedes_frame,
    orthonormal_basis_frame,
    random_frame,
    random_pair,
    two_atom_frame,
)
from gfusion.io import dumps_frame
from gfusion.model import SubsetMask
from gfusion.operators import analysis_apply, frame_bounds, frame_operator, partial_frame_operator


def test_parseval_small():
    fr = random_frame(GenConfig(dim=2, atoms=2, seed=9, kind="parseval"))
    assert np.linalg.norm(frame_operator(fr).matrix - np.eye(2), 2) <= 1e-9


def test_tight_four():
    fr = random_frame(GenConfig(dim=5, atoms=8, seed=2, kind="tight", lam=4.0, scalar="complex"))
    assert np.linalg.norm(frame_operator(fr).matrix - 4 * np.eye(5), 2) <= 1e-8


@pytest.mark.parametrize("kind", ["random", "parseval", "tight", "bessel_only"])
@pytest.mark.parametrize("scalar", ["real", "complex"])
def test_deterministic_bytes(kind, scalar):
    cfg = GenConfig(dim=4, atoms=6, seed=123, kind=kind, scalar=scalar, lam=2.0)
    assert dumps_frame(random_frame(cfg)) == dumps_frame(random_frame(cfg))


def test_seeds_differ():
    a = random_frame(GenConfig(dim=3, atoms=4, seed=1))
    b = random_frame(GenConfig(dim=3, atoms=4, seed=2))
    assert dumps_frame(a) != dumps_frame(b)


def test_atoms_drawn_independently():
    a = random_frame(GenConfig(dim=3, atoms=5, seed=4))
    b = random_frame(GenConfig(dim=3, atoms=8, seed=4))
    for k in range(5):
        assert np.array_equal(a.operators[k], b.operators[k])
        assert a.omega[k] == b.omega[k]


def test_ranges_respected():
    fr = random_frame(GenConfig(dim=6, atoms=20, seed=3, subspace_dim_range=(2, 3), local_out_dim_range=(1, 2)))
    assert all(2 <= s.dim <= 3 for s in fr.subspaces)
    assert all(1 <= m <= 2 for m in fr.out_dims)
    assert np.all(fr.mu == 1.0)
    assert np.all((fr.omega >= 0.25) & (fr.omega <= 4.0))


def test_condition_cap():
    fr = random_frame(GenConfig(dim=6, atoms=10, seed=3, max_condition=50.0))
    assert frame_bounds(fr).condition <= 50.0


def test_bessel_only():
    fr = random_frame(GenConfig(dim=4, atoms=10, seed=0, kind="bessel_only"))
    s = frame_operator(fr)
    assert s.lambda_min <= 1e-12 and s.lambda_max > 0


@pytest.mark.parametrize(
    "kw",
    [
        dict(dim=0, atoms=3),
        dict(dim=65, atoms=3),
        dict(dim=2, atoms=0),
        dict(dim=2, atoms=2, scalar="quaternion"),
        dict(dim=2, atoms=2, kind="weird"),
        dict(dim=2, atoms=2, subspace_dim_range=(2, 1)),
        dict(dim=2, atoms=2, subspace_dim_range=(1, 3)),
        dict(dim=2, atoms=2, local_out_dim_range=(1, 5)),
        dict(dim=2, atoms=2, kind="tight", lam=0.0),
        dict(dim=1, atoms=2, kind="bessel_only"),
        dict(dim=2, atoms=2, seed=-1),
    ],
)
def test_invalid_config(kw):
    with pytest.raises(InvalidConfig):
        GenConfig(**kw)


def test_basis_frame():
    fr = orthonormal_basis_frame(2)
    np.testing.assert_array_equal(frame_operator(fr).matrix, np.eye(2))
    blocks = analysis_apply(fr, np.array([1.0, 0.0])).blocks
    assert [b[0] for b in blocks] == [1.0, 0.0]
    assert tuple(frame_bounds(fr)) == (1.0, 1.0)


def test_mercedes():
    fr = mercedes_frame()
    s = sum((2 / 3) * np.outer(v, v) for v in (np.array([np.cos(2 * np.pi * k / 3), np.sin(2 * np.pi * k / 3)]) for k in range(3)))
    np.testing.assert_allclose(frame_operator(fr).matrix, s, atol=1e-15)
    np.testing.assert_allclose(s, np.eye(2), atol=1e-12)
    np.testing.assert_allclose(partial_frame_operator(fr, SubsetMask.of("0")).matrix, np.diag([2 / 3, 0]), atol=1e-15)
    lo, hi = frame_bounds(fr)
    assert lo == pytest.approx(1.0, abs=1e-12) and hi == pytest.approx(1.0, abs=1e-12)


def test_two_atom():
    np.testing.assert_array_equal(frame_operator(two_atom_frame()).matrix, np.diag([2.0, 1.0]))


def test_pair_shapes():
    v, w = random_pair(GenConfig(dim=3, atoms=5, seed=1))
    assert v.out_dims == w.out_dims and v.space.same_points(w.space)
    assert dumps_frame(v) != dumps_frame(w)


@pytest.mark.parametrize("perturbed", [False, True])
def test_alternate_pair_deterministic(perturbed):
    cfg = GenConfig(dim=3, atoms=5, seed=6, scalar="complex")
    a = alternate_dual_pair(cfg, perturbed)
    b = alternate_dual_pair(cfg, perturbed)
    assert dumps_frame(a[1]) == dumps_frame(b[1]) and a[2] == b[2]
    assert all(m == 3 for m in a[0].out_dims)
