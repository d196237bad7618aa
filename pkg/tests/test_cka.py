import numpy as np
import pytest

from nngs.cka import KernelSpec, cka, gram
from nngs.core import derive_seed
from nngs.errors import DegenerateKernelError, LengthMismatchError
from nngs.synthetic import BLOB_PRESETS, create_aligned_dataset

from conftest import make_cloud, random_orthonormal

LINEAR = KernelSpec.linear()


class TestGram:
    def test_linear_on_centered_line(self):
        cloud = make_cloud([[-1.0], [1.0]])
        assert gram(cloud, LINEAR).tolist() == [[1.0, -1.0], [-1.0, 1.0]]

    def test_linear_centers_first(self):
        cloud = make_cloud([[9.0], [11.0]])  # same cloud after centering
        assert gram(cloud, LINEAR).tolist() == [[1.0, -1.0], [-1.0, 1.0]]

    def test_rbf_diagonal_is_one(self, rng):
        cloud = make_cloud(rng.standard_normal((10, 3)))
        g = gram(cloud, KernelSpec.rbf(0.7))
        assert np.all(np.diag(g) == 1.0)
        assert np.all((g > 0.0) & (g <= 1.0))

    def test_rbf_wide_bandwidth_saturates(self, rng):
        cloud = make_cloud(rng.standard_normal((8, 3)))
        g = gram(cloud, KernelSpec.rbf(1e6))
        assert np.all(g > 0.999999)

    def test_kernel_spec_validation(self):
        with pytest.raises(ValueError):
            KernelSpec("poly")
        with pytest.raises(ValueError):
            KernelSpec.rbf(0.0)
        with pytest.raises(ValueError):
            KernelSpec("rbf")


class TestCKA:
    def test_self_similarity_is_one(self, rng):
        for _ in range(10):
            cloud = make_cloud(rng.standard_normal((15, 4)))
            assert cka(cloud, cloud, LINEAR, LINEAR) == pytest.approx(1.0, abs=1e-10)
            assert cka(cloud, cloud, KernelSpec.rbf(1.3), KernelSpec.rbf(1.3)) == pytest.approx(1.0, abs=1e-10)

    def test_linear_invariances(self, rng):
        for _ in range(5):
            x = rng.standard_normal((20, 6))
            y = rng.standard_normal((20, 4))
            base = cka(make_cloud(x), make_cloud(y), LINEAR, LINEAR)
            q = random_orthonormal(6, rng)
            scale = float(rng.uniform(0.2, 5.0))
            shift = rng.standard_normal(6)
            moved = cka(make_cloud(scale * (x @ q) + shift), make_cloud(y), LINEAR, LINEAR)
            assert moved == pytest.approx(base, abs=1e-8)

    def test_symmetry(self, rng):
        x = make_cloud(rng.standard_normal((12, 3)))
        y = make_cloud(rng.standard_normal((12, 5)))
        rbf = KernelSpec.rbf(2.0)
        assert cka(x, y, LINEAR, rbf) == pytest.approx(cka(y, x, rbf, LINEAR), abs=1e-12)

    def test_range_on_random_clouds(self, rng):
        for _ in range(10):
            x = make_cloud(rng.standard_normal((10, 3)))
            y = make_cloud(rng.standard_normal((10, 7)))
            value = cka(x, y, LINEAR, LINEAR)
            assert 0.0 <= value <= 1.0

    def test_degenerate_cloud(self):
        flat = make_cloud([[2.0, 2.0], [2.0, 2.0], [2.0, 2.0]], ids=("a", "b", "c"))
        other = make_cloud([[0.0, 1.0], [1.0, 0.0], [0.5, 0.5]], ids=("a", "b", "c"))
        with pytest.raises(DegenerateKernelError):
            cka(flat, other, LINEAR, LINEAR)

    def test_size_mismatch(self, rng):
        x = make_cloud(rng.standard_normal((5, 2)))
        y = make_cloud(rng.standard_normal((6, 2)))
        with pytest.raises(LengthMismatchError):
            cka(x, y, LINEAR, LINEAR)

    def test_scaled_blob_pair_near_reported_value(self):
        # one seed of the two-blob rescaling dataset; the full grid runs in
        # the acceptance suite
        values = []
        for t in range(3):
            pair = create_aligned_dataset(BLOB_PRESETS["scales"], derive_seed(5, "cka", t))
            values.append(cka(pair.x, pair.y, LINEAR, LINEAR))
        assert np.mean(values) == pytest.approx(0.86, abs=0.08)
