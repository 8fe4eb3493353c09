import io
import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import Pipeline
from sklearn.preprocessing import FunctionTransformer

from altqw.entanglement import theta_average
from altqw.sweep import (
    EntanglementTransformer,
    SweepGrid,
    evaluate_rows,
    find_maxima,
    grid_values,
    run_sweep,
)
from altqw.tables import TABLES
from altqw.walk import CoinParams


def small_grid(**kw):
    base = dict(varied=(("phi", 3), ("alpha", 4)), fixed={"beta": math.pi / 2, "gamma": math.pi / 2}, n_theta=9)
    base.update(kw)
    return SweepGrid(**base)


class TestGrid:
    def test_values(self):
        np.testing.assert_allclose(grid_values(4, False), [0, math.pi / 2, math.pi, 3 * math.pi / 2])
        np.testing.assert_allclose(grid_values(5, True), [0, math.pi / 2, math.pi, 3 * math.pi / 2, 2 * math.pi])

    def test_points_are_lexicographic(self):
        idx, params = small_grid().points()
        assert idx.shape == (12, 2) and params.shape == (12, 4)
        assert [tuple(r) for r in idx] == sorted(tuple(r) for r in idx)
        assert np.all(params[:, 2] == math.pi / 2)
        np.testing.assert_allclose(params[5], [2 * math.pi / 3, math.pi / 2, math.pi / 2, math.pi / 2])

    @pytest.mark.parametrize(
        "kw",
        [
            dict(varied=(("phi", 0),)),
            dict(varied=(("phi", 1), ("alpha", 4))),
            dict(varied=()),
            dict(varied=(("delta", 3),)),
            dict(fixed={"beta": 0.0}),
            dict(fixed={"beta": 0.0, "gamma": 0.0, "alpha": 1.0}),
            dict(measure="concurrence"),
            dict(n_theta=1),
            dict(T=-1),
        ],
    )
    def test_validation(self, kw):
        with pytest.raises(ValueError):
            small_grid(**kw)

    def test_measure_normalized(self):
        assert small_grid(measure="N").measure == "Nav"
        assert small_grid(measure="pi").measure == "piav"


class TestEvaluation:
    def test_rows_match_theta_average(self):
        rng = np.random.default_rng(50)
        X = rng.uniform(0, 2 * math.pi, (5, 4))
        X[3, 1:] = X[1, 1:]  # two rows share a coin
        vals = evaluate_rows(X, "Nav", T=2, n_theta=9)
        for row, v in zip(X, vals):
            expected = theta_average("N", row[0], CoinParams(*row[1:]), 2, n_theta=9)
            assert v == pytest.approx(expected, rel=1e-12, abs=1e-14)

    def test_workers_do_not_change_results(self):
        g = small_grid()
        a = run_sweep(g, workers=1)
        b = run_sweep(g, workers=3)
        np.testing.assert_array_equal(a.values, b.values)
        buf_a, buf_b = io.StringIO(), io.StringIO()
        a.to_csv(buf_a)
        b.to_csv(buf_b)
        assert buf_a.getvalue() == buf_b.getvalue()

    def test_csv_layout(self):
        r = run_sweep(small_grid())
        buf = io.StringIO()
        r.to_csv(buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "idx0,idx1,phi,alpha,beta,gamma,value"
        assert len(lines) == 13
        assert lines[1].startswith("0,0,0,0,1.5707963267948966,1.5707963267948966,")

    def test_find_maxima(self):
        r = run_sweep(small_grid())
        top = find_maxima(r, rel_tol=0)
        assert all(r.values[r.indices.tolist().index(list(t))] == r.max_value for t in top)
        assert len(find_maxima(r, rel_tol=2.0)) == len(r)

    def test_rejects_bad_workers(self):
        with pytest.raises(ValueError):
            evaluate_rows(np.zeros((1, 4)), workers=0)


class TestTransformer:
    def test_params_and_clone(self):
        t = EntanglementTransformer(measure="Nav", T=3, n_theta=9)
        assert t.get_params() == {"measure": "Nav", "T": 3, "n_theta": 9, "workers": 1}
        c = clone(t)
        assert c.get_params() == t.get_params() and c is not t

    def test_transform(self):
        X = np.array([[math.pi, 5 * math.pi / 16, math.pi / 2, math.pi / 2]])
        out = EntanglementTransformer(n_theta=9).fit_transform(X)
        assert out.shape == (1, 1)
        assert out[0, 0] == pytest.approx(theta_average("pi", math.pi, CoinParams(*X[0, 1:]), 2, n_theta=9))

    def test_pipeline(self):
        pipe = Pipeline([("walk", EntanglementTransformer(measure="Nav", n_theta=9)), ("neg", FunctionTransformer(np.negative))])
        X = np.array([[0.0, 1.0, 2.0, 3.0], [1.0, 1.0, 2.0, 3.0]])
        out = pipe.fit_transform(X)
        assert out.shape == (2, 1) and np.all(out <= 0)
        assert list(pipe[0].get_feature_names_out()) == ["Nav"]

    def test_validation(self):
        with pytest.raises(ValueError):
            EntanglementTransformer().fit(np.zeros((2, 3)))
        with pytest.raises(ValueError):
            EntanglementTransformer(measure="bogus").fit(np.zeros((2, 4)))
        t = EntanglementTransformer().fit(np.zeros((1, 4)))
        with pytest.raises(ValueError):
            t.transform(np.zeros((1, 5)))


def test_tables_are_well_formed():
    for which, spec in TABLES.items():
        n = spec["units"]
        assert len(spec["rows"]) == 4
        for row in spec["rows"]:
            assert row.argmax
            assert all(0 <= p <= n and 0 <= v <= n for p, v in row.argmax)
            assert {row.varied, *row.fixed} == {"alpha", "beta", "gamma"}
