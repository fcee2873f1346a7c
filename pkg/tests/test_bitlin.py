import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prodcss import bitlin as bl


def random_matrix(rng, rows, cols):
    return bl.BitMatrix.from_bits(rng.integers(0, 2, size=(rows, cols), dtype=np.uint8))


@st.composite
def bit_matrices(draw, max_rows=6, max_cols=8):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    bits = draw(
        st.lists(
            st.lists(st.integers(0, 1), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    return bl.BitMatrix.from_bits(np.array(bits, dtype=np.uint8))


class TestRank:
    def test_identity(self):
        assert bl.rank(bl.BitMatrix.identity(4)) == 4

    def test_all_ones_row(self):
        assert bl.rank(bl.BitMatrix.from_bits([[1, 1, 1, 1]])) == 1

    def test_rank_equals_transpose_rank(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            m = random_matrix(rng, 5, 9)
            assert bl.rank(m) == bl.rank(m.transpose())


class TestKernel:
    def test_all_ones(self):
        kb = bl.kernel_basis(bl.BitMatrix.from_bits([[1, 1, 1, 1]]))
        assert kb.shape == (4, 3)
        bits = kb.to_bits()
        assert all(bits[:, j].sum() % 2 == 0 for j in range(3))

    def test_full_rank_square(self):
        kb = bl.kernel_basis(bl.BitMatrix.identity(5))
        assert kb.shape == (5, 0)

    @settings(max_examples=60, deadline=None)
    @given(bit_matrices())
    def test_rank_nullity(self, m):
        assert bl.rank(m) + bl.kernel_basis(m).cols == m.cols

    @settings(max_examples=60, deadline=None)
    @given(bit_matrices())
    def test_kernel_annihilated(self, m):
        kb = bl.kernel_basis(m)
        if kb.cols:
            assert m.mul(kb).is_zero()


class TestSolve:
    def test_identity(self):
        m = bl.BitMatrix.identity(5)
        s = np.array([1, 0, 1, 1, 0], dtype=np.uint8)
        assert np.array_equal(bl.solve(m, s), s)

    def test_free_variable_convention(self):
        m = bl.BitMatrix.from_bits([[1, 1]])
        x = bl.solve(m, np.array([1], dtype=np.uint8))
        assert np.array_equal(x, [1, 0])

    def test_no_solution(self):
        m = bl.BitMatrix.zeros(2, 3)
        assert bl.solve(m, np.array([1, 0], dtype=np.uint8)) is None

    @settings(max_examples=60, deadline=None)
    @given(bit_matrices())
    def test_solution_satisfies(self, m):
        rng = np.random.default_rng(0)
        x0 = rng.integers(0, 2, size=m.cols, dtype=np.uint8)
        s = m.matvec(x0)
        x = bl.solve(m, s)
        assert x is not None
        assert np.array_equal(m.matvec(x), s)

    @settings(max_examples=60, deadline=None)
    @given(bit_matrices())
    def test_in_rowspan_matches_transposed_solve(self, m):
        rng = np.random.default_rng(1)
        v = rng.integers(0, 2, size=m.cols, dtype=np.uint8)
        via_solve = bl.solve(m.transpose(), v) is not None
        assert bl.in_rowspan(m, v) == via_solve


class TestRowReduce:
    def test_identity(self):
        red = bl.row_reduce(bl.BitMatrix.identity(4))
        assert red.rank == 4
        assert red.transform == bl.BitMatrix.identity(4)

    def test_repeated_row(self):
        m = bl.BitMatrix.from_bits([[1, 0, 1], [1, 0, 1], [0, 1, 1]])
        red = bl.row_reduce(m)
        assert red.rank == 2
        # Last transform row indicates the duplicated pair.
        assert np.array_equal(red.transform.to_bits()[-1], [1, 1, 0])

    @settings(max_examples=60, deadline=None)
    @given(bit_matrices())
    def test_transform_properties(self, m):
        red = bl.row_reduce(m)
        assert bl.rank(red.transform) == m.rows
        assert red.transform.mul(m) == red.echelon
        annihilator = bl.BitMatrix.from_bits(red.transform.to_bits()[red.rank :])
        if annihilator.rows:
            assert annihilator.mul(m).is_zero()


class TestKronStack:
    def test_kron_ones(self):
        a = bl.BitMatrix.from_bits([[1, 1]])
        assert bl.kron(a, a) == bl.BitMatrix.from_bits([[1, 1, 1, 1]])

    def test_kron_identity_row(self):
        out = bl.kron(bl.BitMatrix.identity(2), bl.BitMatrix.from_bits([[1, 1]]))
        assert out == bl.BitMatrix.from_bits([[1, 1, 0, 0], [0, 0, 1, 1]])

    def test_kron_rank_multiplicative(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            a = random_matrix(rng, 3, 4)
            b = random_matrix(rng, 3, 4)
            assert bl.rank(bl.kron(a, b)) == bl.rank(a) * bl.rank(b)

    def test_kron_bilinear(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            a = random_matrix(rng, 3, 3)
            b = random_matrix(rng, 3, 3)
            c = random_matrix(rng, 3, 3)
            assert bl.kron(a, b + c) == bl.kron(a, b) + bl.kron(a, c)

    def test_stack_single(self):
        m = bl.BitMatrix.from_bits([[1, 0], [0, 1]])
        assert bl.stack([m]) == m

    def test_stack_two_rows(self):
        out = bl.stack(
            [bl.BitMatrix.from_bits([[1, 1]]), bl.BitMatrix.from_bits([[1, 0]])]
        )
        assert out == bl.BitMatrix.from_bits([[1, 1], [1, 0]])

    def test_stack_product_blocks(self):
        h = bl.BitMatrix.from_bits([[1, 1]])
        blocks = [
            bl.kron(bl.BitMatrix.identity(2), h),
            bl.kron(h, bl.BitMatrix.identity(2)),
        ]
        expected = bl.BitMatrix.from_bits(
            [[1, 1, 0, 0], [0, 0, 1, 1], [1, 0, 1, 0], [0, 1, 0, 1]]
        )
        assert bl.stack(blocks) == expected

    def test_stack_mismatch(self):
        with pytest.raises(ValueError):
            bl.stack([bl.BitMatrix.identity(2), bl.BitMatrix.identity(3)])


class TestRowspan:
    def test_own_rows(self):
        rng = np.random.default_rng(11)
        m = random_matrix(rng, 4, 6)
        for i in range(4):
            assert bl.in_rowspan(m, m.row(i))

    def test_zero_vector(self):
        m = bl.BitMatrix.from_bits([[1, 0, 1]])
        assert bl.in_rowspan(m, np.zeros(3, dtype=np.uint8))


class TestIO:
    def test_alist_roundtrip(self, tmp_path):
        rng = np.random.default_rng(5)
        for shape in [(4, 7), (1, 1), (6, 3)]:
            m = random_matrix(rng, *shape)
            path = tmp_path / "m.alist"
            bl.write_alist(m, path)
            assert bl.read_alist(path) == m

    def test_alist_zero_padding_tolerated(self, tmp_path):
        m = bl.BitMatrix.from_bits([[1, 0], [1, 1]])
        path = tmp_path / "m.alist"
        bl.write_alist(m, path)
        lines = path.read_text().splitlines()
        # Pad the first column's index list with a 0 entry.
        lines[4] = lines[4] + " 0"
        path.write_text("\n".join(lines) + "\n")
        assert bl.read_alist(path) == m

    def test_dense_roundtrip(self, tmp_path):
        rng = np.random.default_rng(6)
        m = random_matrix(rng, 5, 9)
        path = tmp_path / "m.txt"
        bl.write_dense(m, path)
        assert bl.read_dense(path) == m
