import math
import os
from pathlib import Path

import numpy as np
import pytest

import nnts

DATA = Path(os.environ.get("NNTS_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def test_uniform_density_and_cdf():
    p = nnts.NntsParams.uniform(0)
    assert nnts.density(p, 1.0) == pytest.approx(1.0 / (2.0 * math.pi), abs=1e-15)
    grid = np.linspace(0.1, 2.0 * math.pi, 7)
    values = nnts.density(p, grid)
    assert values.shape == grid.shape
    assert np.allclose(values, 1.0 / (2.0 * math.pi))
    assert nnts.cdf(p, math.pi) == pytest.approx(0.5, abs=1e-15)


def test_canonicalize_fixes_phase_and_norm():
    p = nnts.canonicalize(np.array([1j, 0.5 + 0.5j]))
    c = p.coefficients
    assert c[0].imag == 0.0 and c[0].real > 0.0
    assert np.sum(np.abs(c) ** 2) == pytest.approx(1.0 / (2.0 * math.pi), abs=1e-15)
    with pytest.raises(nnts.NntsError):
        nnts.canonicalize(np.zeros(3, dtype=complex))


def test_turtle_fit_and_selection():
    sample = nnts.load_continuous(DATA / "turtles.csv", unit="degrees")
    assert len(sample) == 76
    config = nnts.SolverConfig()
    config.restarts = 10
    fits = [(m, nnts.fit(sample, m, config).loglik) for m in range(6)]
    assert fits[0][1] == pytest.approx(-139.68, abs=0.01)
    assert fits[2][1] == pytest.approx(-107.97, abs=0.05)
    table = nnts.selection_table(fits, 76.0)
    assert table.best_aic_order() == 4
    assert table.best_bic_order() == 2


def test_grouped_likelihood_ratio():
    female = nnts.load_grouped(DATA / "suicides_female.csv", nnts.calendar_partition())
    assert female.total == 16379
    fits = [(m, nnts.fit(female, m).loglik) for m in range(7)]
    table = nnts.selection_table(fits, female.total, saturated=6)
    assert table.rows[0].lr.stat == pytest.approx(51.00, abs=0.05)
    assert table.parsimonious_order(0.01) == 2


def test_gradient_vanishes_at_uniform_and_baseline_agrees():
    sample = nnts.AngularSample([0.3, 1.2, 2.2, 4.0, 5.5, 6.1])
    grad = nnts.riemannian_grad(nnts.NntsParams.uniform(0), sample)
    assert np.linalg.norm(grad) < 1e-14
    a = nnts.fit(sample, 1)
    b = nnts.fit_baseline(sample, 1)
    assert a.loglik == pytest.approx(b.loglik, abs=1e-6)


def test_chi_square_and_errors():
    assert nnts.chi_square_sf(9.2103, 2) == pytest.approx(0.01, abs=1e-5)
    assert nnts.lr_test(-40698.76, -40673.26, 0, 6).df == 12
    with pytest.raises(nnts.NntsError):
        nnts.AngularSample([])
    with pytest.raises(nnts.IoError):
        nnts.load_continuous(DATA / "missing.csv")
