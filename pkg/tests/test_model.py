import numpy as np
import pytest

from gfusion.errors import ShapeMismatch, UnknownAtomId
from gfusion.gen import GenConfig, mercedes_frame, orthonormal_basis_frame, random_frame, two_atom_frame
from gfusion.linalg import projector_from_basis
from gfusion.model import (
    GFusionFrame,
    MeasureAtom,
    MeasureSpace,
    Subspace,
    SubsetMask,
    canonicalize,
    projector,
    subset_complement,
    validate_frame,
)


def test_atom_validation():
    with pytest.raises(ValueError):
        MeasureAtom("a", -1.0, 1.0)
    with pytest.raises(ValueError):
        MeasureAtom("a", 1.0, float("nan"))


def test_space_needs_unique_ids():
    with pytest.raises(ValueError):
        MeasureSpace((MeasureAtom("a", 1, 1), MeasureAtom("a", 1, 1)))


def test_zero_weight_atoms_allowed():
    eye = np.eye(2)
    fr = GFusionFrame.build(
        [MeasureAtom("a", 1, 1), MeasureAtom("b", 1, 1), MeasureAtom("z", 0, 3)],
        [eye[:1], eye[1:], eye],
        [eye[:1], eye[1:], 5 * eye],
    )
    assert validate_frame(fr).ok


def test_all_zero_weight_rejected():
    with pytest.raises(ValueError):
        GFusionFrame.build([MeasureAtom("a", 0, 1)], [np.eye(2)], [np.eye(2)])


class TestProjector:
    def test_axis(self):
        np.testing.assert_array_equal(projector(Subspace.span([[1.0, 0.0]])).matrix, np.diag([1.0, 0.0]))

    def test_diagonal(self):
        np.testing.assert_allclose(projector(Subspace.span([[1.0, 1.0]])).matrix, [[0.5, 0.5], [0.5, 0.5]], atol=1e-15)

    def test_full(self):
        np.testing.assert_array_equal(projector(Subspace.span(np.eye(2))).matrix, np.eye(2))

    def test_idempotent(self):
        rng = np.random.default_rng(0)
        p = projector(Subspace.span(rng.standard_normal((2, 5)))).matrix
        np.testing.assert_allclose(p @ p, p, atol=1e-10)

    @pytest.mark.parametrize("seed", range(5))
    def test_invariant_under_spanning_set(self, seed):
        rng = np.random.default_rng(seed)
        v = rng.standard_normal((3, 6))
        mix = rng.standard_normal((3, 3))
        a = projector_from_basis(Subspace.span(v).basis)
        b = projector_from_basis(Subspace.span(mix @ v).basis)
        np.testing.assert_allclose(a, b, atol=1e-9)


def test_subspace_rejects_non_orthonormal():
    with pytest.raises(ValueError):
        Subspace(np.array([[1.0], [1.0]]))


def test_canonicalize_idempotent_exactly():
    rng = np.random.default_rng(1)
    sub = Subspace.span(rng.standard_normal((2, 4)))
    op = rng.standard_normal((3, 4))
    once = canonicalize(op, sub)
    assert np.array_equal(canonicalize(once, sub), once)
    np.testing.assert_allclose(once @ (np.eye(4) - sub.projection), 0, atol=1e-12)


def test_non_canonical_operator_rejected():
    sub = Subspace.span([[1.0, 0.0]])
    with pytest.raises(ValueError):
        GFusionFrame(2, "real", MeasureSpace((MeasureAtom("a", 1, 1),)), (sub,), (np.eye(2),))


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        GFusionFrame.build([MeasureAtom("a", 1, 1)], [np.eye(2)], [np.ones((2, 3))])


class TestSubsets:
    def setup_method(self):
        eye = np.eye(3)
        self.frame = GFusionFrame.build(
            [MeasureAtom(i, 1, 1) for i in "abc"], [eye[k:k + 1] for k in range(3)], [eye[k:k + 1] for k in range(3)]
        )

    def test_complement(self):
        assert subset_complement(self.frame, SubsetMask.of("a")).members == {"b", "c"}

    def test_empty(self):
        assert subset_complement(self.frame, SubsetMask.empty()).members == {"a", "b", "c"}

    def test_all(self):
        assert len(subset_complement(self.frame, SubsetMask.everything(self.frame))) == 0

    def test_unknown(self):
        with pytest.raises(UnknownAtomId):
            subset_complement(self.frame, SubsetMask.of(["q"]))


class TestValidate:
    def test_orthonormal_basis(self):
        rep = validate_frame(orthonormal_basis_frame(2))
        assert rep.ok and tuple(rep.bounds) == (1.0, 1.0)

    def test_rank_deficient(self):
        e1 = np.array([[1.0, 0.0]])
        fr = GFusionFrame.build([MeasureAtom("a", 1, 1), MeasureAtom("b", 1, 1)], [e1, e1], [e1, e1])
        rep = validate_frame(fr)
        assert not rep.ok and rep.bounds is None and rep.issues

    def test_mercedes(self):
        rep = validate_frame(mercedes_frame())
        assert rep.ok
        assert rep.bounds.lower == pytest.approx(1.0, abs=1e-12)
        assert rep.bounds.upper == pytest.approx(1.0, abs=1e-12)


def test_two_atom_frame_layout():
    fr = two_atom_frame()
    assert fr.ids == ("a", "b")
    np.testing.assert_array_equal(fr.operators[0], np.diag([1.0, 0.0]))


def test_replace_and_complex():
    fr = random_frame(GenConfig(dim=3, atoms=4, seed=2))
    c = fr.as_complex()
    assert c.scalar == "complex" and c.dtype == np.complex128
    doubled = fr.replace(omega=2 * fr.omega)
    np.testing.assert_array_equal(doubled.omega, 2 * fr.omega)
