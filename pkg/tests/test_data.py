import numpy as np
import pytest

from latentaug import data


def write_csv(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestLoadCsv:
    def test_round_trip(self, tmp_path):
        path = write_csv(tmp_path, "a,b,y\n1,2,0\n3,4,1\n5,6,0\n")
        raw = data.load_csv(path, ["numeric", "numeric", "label"])
        assert raw.n_rows == 3
        assert raw.rows[1] == ["3", "4", "1"]
        assert raw.column_names == ["a", "b", "y"]

    def test_arity_mismatch_names_row(self, tmp_path):
        path = write_csv(tmp_path, "a,b,y\n1,2,0\n3,4,1,9\n")
        with pytest.raises(ValueError, match="row 2"):
            data.load_csv(path, ["numeric", "numeric", "label"])

    def test_header_only_file(self, tmp_path):
        path = write_csv(tmp_path, "a,b,y\n")
        raw = data.load_csv(path, ["numeric", "numeric", "label"])
        assert raw.n_rows == 0

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            data.load_csv(tmp_path / "nope.csv", ["numeric"])


class TestOneHot:
    def test_single_categorical(self):
        raw = data.RawDataset(
            rows=[["tcp"], ["udp"], ["icmp"]], column_kinds=["categorical"]
        )
        ds = data.one_hot_encode(raw)
        assert ds.matrix.shape == (3, 3)
        assert (ds.matrix.sum(axis=1) == 1).all()
        # lexicographic: icmp, tcp, udp
        assert ds.matrix[0].tolist() == [0.0, 1.0, 0.0]
        assert ds.matrix[2].tolist() == [1.0, 0.0, 0.0]

    def test_intrusion_dataset_shape(self):
        # 41 columns: 38 numeric + 3 categoricals with 3/70/11 levels -> 122
        rng = np.random.default_rng(0)
        n = 200
        rows = []
        cats = [
            [f"p{i}" for i in range(3)],
            [f"s{i}" for i in range(70)],
            [f"f{i}" for i in range(11)],
        ]
        for r in range(n):
            row = [str(x) for x in rng.normal(size=38)]
            for levels in cats:
                # first rows cycle through every level so all appear
                row.append(levels[r % len(levels)])
            rows.append(row)
        kinds = ["numeric"] * 38 + ["categorical"] * 3
        ds = data.one_hot_encode(data.RawDataset(rows=rows, column_kinds=kinds))
        assert ds.matrix.shape[1] == 122

    def test_no_categoricals_is_identity(self):
        rows = [["1", "2.5"], ["-3", "4"]]
        ds = data.one_hot_encode(
            data.RawDataset(rows=rows, column_kinds=["numeric", "numeric"])
        )
        assert np.array_equal(ds.matrix, np.array([[1.0, 2.5], [-3.0, 4.0]]))

    def test_unparseable_numeric(self):
        raw = data.RawDataset(rows=[["abc"]], column_kinds=["numeric"])
        with pytest.raises(ValueError, match="column 0"):
            data.one_hot_encode(raw)

    def test_width_formula(self):
        rng = np.random.default_rng(3)
        rows = [
            [str(rng.normal()), rng.choice(list("abc")), rng.choice(list("xy"))]
            for _ in range(50)
        ]
        kinds = ["numeric", "categorical", "categorical"]
        ds = data.one_hot_encode(data.RawDataset(rows=rows, column_kinds=kinds))
        distinct = sum(len({r[j] for r in rows}) for j in (1, 2))
        assert ds.matrix.shape[1] == 1 + distinct


class TestMinMax:
    def test_fit_definitional(self):
        ds = data.NumericDataset(matrix=np.array([[0.0], [2.0], [4.0]]))
        p = data.fit_minmax(ds)
        assert p.col_min[0] == 0 and p.col_max[0] == 4

    def test_fit_per_column(self):
        ds = data.NumericDataset(matrix=np.array([[1.0, 10.0], [3.0, 20.0]]))
        p = data.fit_minmax(ds)
        assert p.col_min.tolist() == [1, 10]
        assert p.col_max.tolist() == [3, 20]

    def test_endpoints(self):
        ds = data.NumericDataset(matrix=np.array([[0.0], [4.0]]))
        p = data.fit_minmax(ds)
        out = data.apply_minmax(ds, p)
        assert out.matrix[0, 0] == -1.0 and out.matrix[1, 0] == 1.0

    def test_constant_column_maps_to_zero(self):
        ds = data.NumericDataset(matrix=np.full((3, 1), 5.0))
        p = data.fit_minmax(ds)
        assert data.apply_minmax(ds, p).matrix.tolist() == [[0.0], [0.0], [0.0]]

    def test_extrapolation_not_clipped(self):
        train = data.NumericDataset(matrix=np.array([[0.0], [4.0]]))
        p = data.fit_minmax(train)
        test = data.NumericDataset(matrix=np.array([[6.0]]))
        assert data.apply_minmax(test, p).matrix[0, 0] == 2.0

    def test_train_range_bounded(self):
        rng = np.random.default_rng(1)
        ds = data.NumericDataset(matrix=rng.normal(size=(40, 5)) * 10)
        out = data.apply_minmax(ds, data.fit_minmax(ds))
        assert out.matrix.min() >= -1.0 and out.matrix.max() <= 1.0

    def test_json_round_trip(self):
        p = data.NormParams(np.array([0.0, 1.0]), np.array([2.0, 3.0]))
        q = data.NormParams.from_json(p.to_json())
        assert np.array_equal(p.col_min, q.col_min)
        assert np.array_equal(p.col_max, q.col_max)


class TestSplit:
    def make_ds(self, n_normal=100, n_anomaly=10):
        rng = np.random.default_rng(0)
        m = rng.normal(size=(n_normal + n_anomaly, 3))
        y = np.r_[np.zeros(n_normal, int), np.ones(n_anomaly, int)]
        return data.NumericDataset(matrix=m, labels=y)

    def test_paper_fractions(self):
        ds = self.make_ds()
        tr, va, te = data.split_dataset(ds, data.SplitSpec(0.6, 0.2, 0.2, seed=0))
        assert tr.n_rows == 60 and (tr.labels == 0).all()
        assert va.n_rows == 20 and (va.labels == 0).all()
        assert te.n_rows == 30 and te.labels.sum() == 10

    def test_determinism(self):
        ds = self.make_ds()
        a = data.split_dataset(ds, data.SplitSpec(seed=5))
        b = data.split_dataset(ds, data.SplitSpec(seed=5))
        for x, y in zip(a, b):
            assert np.array_equal(x.matrix, y.matrix)

    def test_row_multiset_preserved(self):
        ds = self.make_ds(23, 7)
        tr, va, te = data.split_dataset(ds, data.SplitSpec(seed=2))
        combined = np.vstack([tr.matrix, va.matrix, te.matrix])
        key = np.lexsort(combined.T)
        key_in = np.lexsort(ds.matrix.T)
        assert np.allclose(combined[key], ds.matrix[key_in])

    def test_all_anomaly_errors(self):
        ds = self.make_ds(0, 10)
        with pytest.raises(ValueError, match="no normal rows"):
            data.split_dataset(ds, data.SplitSpec(seed=0))

    def test_invalid_fractions(self):
        with pytest.raises(ValueError):
            data.SplitSpec(0.5, 0.2, 0.2, seed=0)


class TestSynth:
    def test_shape_contract(self):
        ds = data.synth_shifted_gaussian(100, 10, 4, 3.0, 7)
        assert ds.matrix.shape == (110, 4)
        assert ds.labels.sum() == 10

    def test_normal_sample_mean_near_origin(self):
        ds = data.synth_shifted_gaussian(10000, 0, 3, 3.0, 11)
        assert np.abs(ds.matrix.mean(axis=0)).max() < 0.05

    def test_determinism(self):
        a = data.synth_shifted_gaussian(50, 5, 2, 1.0, 3)
        b = data.synth_shifted_gaussian(50, 5, 2, 1.0, 3)
        assert np.array_equal(a.matrix, b.matrix)

    def test_subsample(self):
        ds = data.synth_shifted_gaussian(100, 0, 2, 0.0, 1)
        sub = data.subsample(ds, 0.1, seed=4)
        assert sub.n_rows == 10
