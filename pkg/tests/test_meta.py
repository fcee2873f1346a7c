import itertools

import numpy as np
import pytest

from prodcss import bitlin as bl
from prodcss import meta
from prodcss.build import SpcParams, spc
from prodcss.css import new_css


class TestGenericMetacheck:
    def test_full_rank_parent(self):
        mc = meta.metacheck_from_pcm(bl.BitMatrix.identity(4))
        assert mc.matrix.rows == 0

    def test_duplicated_row(self):
        h = bl.BitMatrix.from_bits([[1, 0, 1], [1, 0, 1]])
        mc = meta.metacheck_from_pcm(h)
        assert mc.matrix.rows == 1
        assert np.array_equal(mc.matrix.to_bits()[0], [1, 1])

    def test_spc31(self):
        code = spc(SpcParams(3, 1))
        mc = meta.metacheck_from_pcm(code.hx)
        assert mc.matrix.rows == 23
        assert mc.matrix.mul(code.hx).is_zero()
        assert bl.rank(mc.matrix) == 23

    def test_kernel_equals_column_span(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            h = bl.BitMatrix.from_bits(rng.integers(0, 2, (6, 4), dtype=np.uint8))
            mc = meta.metacheck_from_pcm(h)
            r = bl.rank(h)
            assert mc.matrix.rows == 6 - r
            if mc.matrix.rows:
                assert mc.matrix.mul(h).is_zero()
                assert bl.rank(mc.matrix) == 6 - r


class TestStructuredSpc3Metacheck:
    @pytest.mark.parametrize("s", [1, 2])
    def test_annihilates_both_sectors(self, s):
        code = spc(SpcParams(3, s))
        mcx = meta.spc3_metacheck(s, "x")
        mcz = meta.spc3_metacheck(s, "z")
        assert mcx.matrix.rows == 24 * s
        assert mcx.matrix.cols == 3 * (8 * s) ** 2
        assert mcx.matrix.mul(code.hx).is_zero()
        assert mcz.matrix.mul(code.hz).is_zero()

    def test_dimensions_s1(self):
        mc = meta.spc3_metacheck(1)
        assert mc.matrix.shape == (24, 192)
        assert mc.parent_rows == 192
        assert mc.parent_rank == 169

    @pytest.mark.parametrize("s", [1, 2])
    def test_meta_distance_three(self, s):
        code = spc(SpcParams(3, s))
        m = meta.spc3_metacheck(s, "x").matrix
        cols = m.to_bits().T
        # No weight-1 kernel vector: every column nonzero.
        assert cols.any(axis=1).all()
        # No weight-2 kernel vector: all columns distinct.
        packed = bl.pack_rows(np.ascontiguousarray(cols))
        seen = set()
        for i in range(packed.shape[0]):
            key = packed[i].tobytes()
            assert key not in seen
            seen.add(key)
        # Weight-3 kernel vectors exist: every column of H.
        h_cols = code.hx.to_bits().T
        assert set(h_cols.sum(axis=1).tolist()) == {3}
        for j in range(0, code.n, 37):
            assert not m.matvec(h_cols[j]).any()

    def test_weight2_enumeration_matches_pair_check(self):
        # Spot-check the duplicate-column shortcut against direct M e != 0
        # over explicit weight-2 errors on a subsample.
        m = meta.spc3_metacheck(1).matrix
        rng = np.random.default_rng(1)
        for _ in range(200):
            i, j = rng.choice(192, size=2, replace=False)
            e = np.zeros(192, dtype=np.uint8)
            e[i] = e[j] = 1
            assert m.matvec(e).any()

    def test_row_structure(self):
        m = meta.spc3_metacheck(1).matrix.to_bits()
        assert set(m.sum(axis=1).tolist()) == {16}
        assert set(m.sum(axis=0).tolist()) == {2}


class TestExtendPcm:
    def test_layout(self):
        h = bl.BitMatrix.from_bits([[1, 0, 1], [1, 0, 1]])
        mc = meta.metacheck_from_pcm(h)
        ext = meta.extend_pcm(h, mc)
        assert ext.h_ext.shape == (3, 5)
        bits = ext.h_ext.to_bits()
        assert np.array_equal(bits[:2, :3], h.to_bits())
        assert np.array_equal(bits[:2, 3:], np.eye(2, dtype=np.uint8))
        assert not bits[2:, :3].any()

    def test_extended_syndrome_action(self):
        rng = np.random.default_rng(2)
        code = spc(SpcParams(2, 1))
        mc = meta.metacheck_from_pcm(code.hx)
        ext = meta.extend_pcm(code.hx, mc)
        for _ in range(20):
            e = rng.integers(0, 2, code.n, dtype=np.uint8)
            es = rng.integers(0, 2, code.hx.rows, dtype=np.uint8)
            full = np.concatenate([e, es])
            out = ext.h_ext.matvec(full)
            expected_top = code.hx.matvec(e) ^ es
            expected_bottom = mc.matrix.matvec(es)
            assert np.array_equal(out[: code.hx.rows], expected_top)
            assert np.array_equal(out[code.hx.rows :], expected_bottom)

    def test_meta_syndrome_ignores_data_errors(self):
        rng = np.random.default_rng(3)
        code = spc(SpcParams(3, 1))
        mc = meta.spc3_metacheck(1, "x")
        for _ in range(20):
            e = rng.integers(0, 2, code.n, dtype=np.uint8)
            es = rng.integers(0, 2, 192, dtype=np.uint8)
            sigma = mc.matrix.matvec(code.hx.matvec(e) ^ es)
            assert np.array_equal(sigma, mc.matrix.matvec(es))

    def test_single_flip_meta_syndrome_nonzero(self):
        mc = meta.spc3_metacheck(1, "x")
        for bit in range(0, 192, 7):
            es = np.zeros(192, dtype=np.uint8)
            es[bit] = 1
            assert mc.matrix.matvec(es).any()

    def test_dimension_mismatch(self):
        h = bl.BitMatrix.identity(3)
        mc = meta.spc3_metacheck(1)
        with pytest.raises(ValueError):
            meta.extend_pcm(h, mc)


class TestMeasurementOverhead:
    def test_spc31(self):
        mn, actual, pct = meta.measurement_overhead(spc(SpcParams(3, 1)))
        assert (mn, actual) == (338, 384)
        assert abs(pct - 0.136) < 0.001

    def test_full_rank_zero_overhead(self):
        h = bl.BitMatrix.from_bits([[1, 1, 0, 0], [0, 0, 1, 1]])
        code = new_css(h, h)
        assert meta.measurement_overhead(code)[2] == 0.0

    def test_spc21(self):
        mn, actual, _ = meta.measurement_overhead(spc(SpcParams(2, 1)))
        assert (mn, actual) == (14, 16)


class TestRepetitionComparison:
    def test_three_fold_repetition_baseline(self):
        # Repeating all measurements k=3 times yields meta-distance 3 at
        # k*m measurements; the product construction beats that overhead.
        code = spc(SpcParams(2, 1))
        h = code.hx
        k = 3
        ones = bl.BitMatrix.from_bits(np.ones((k, 1), dtype=np.uint8))
        h_rep = bl.kron(ones, h)
        rep_pcm = bl.kron(
            bl.BitMatrix.from_bits([[1, 1, 0], [0, 1, 1]]),
            bl.BitMatrix.identity(h.rows),
        )
        assert rep_pcm.mul(h_rep).is_zero()
        # Meta-distance of the k-repetition scheme is k: each syndrome bit
        # is covered by a weight-k repetition codeword and no lighter one.
        cols = rep_pcm.to_bits().T
        packed = bl.pack_rows(np.ascontiguousarray(cols))
        assert cols.any(axis=1).all()
        assert len({packed[i].tobytes() for i in range(packed.shape[0])}) == packed.shape[0]
        for j in range(h.rows):
            e = np.zeros(k * h.rows, dtype=np.uint8)
            e[j] = e[h.rows + j] = e[2 * h.rows + j] = 1
            assert not rep_pcm.matvec(e).any()
        # Overhead comparison: 3m measurements vs the product code's m.
        assert k * h.rows > h.rows
