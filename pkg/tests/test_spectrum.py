import math

import numpy as np
import pytest

from archcorr.correlation_closed import closed_matrix
from archcorr.errors import DomainError, NumericError, PSDViolation
from archcorr.geometry import ArchedUlaGeometry
from archcorr.spectrum import (
    EigenSpectrum,
    asymptotic_dof_ula,
    asymptotic_dof_ura,
    check_psd,
    dof_report,
    dof_threshold,
    effective_rank,
    eigen_spectrum,
)

# 2L/lambda and pi L^2 / lambda^2 for the reference apertures, evaluated by hand
ULA_ASYMPTOTE = 209.46666666666664
URA_ASYMPTOTE = 539.1287152825445


def test_eigen_spectrum_identity_and_ones():
    s = eigen_spectrum(np.eye(5))
    np.testing.assert_array_equal(s.values, np.ones(5))
    s = eigen_spectrum(np.ones((4, 4)))
    np.testing.assert_allclose(s.values, [4, 0, 0, 0], atol=1e-14)
    assert s.dim == 4 and s.max == pytest.approx(4.0)


def test_eigen_spectrum_sorted_descending():
    rng = np.random.default_rng(1)
    a = rng.normal(size=(30, 30))
    s = eigen_spectrum(a @ a.T)
    assert np.all(np.diff(s.values) <= 0)


def test_eigen_spectrum_hermitian_complex():
    a = np.array([[2.0, 1j], [-1j, 2.0]])
    np.testing.assert_allclose(eigen_spectrum(a).values, [3.0, 1.0], atol=1e-14)


def test_eigen_spectrum_rejects_bad_input():
    with pytest.raises(DomainError):
        eigen_spectrum(np.zeros((2, 3)))
    with pytest.raises(NumericError):
        eigen_spectrum(np.array([[1.0, np.nan], [np.nan, 1.0]]))


def test_trace_preserved():
    r = closed_matrix(ArchedUlaGeometry(64, 1.0, 0.8, 0.05))
    assert eigen_spectrum(r).values.sum() == pytest.approx(64.0, abs=1e-10)


def test_dof_threshold_examples():
    s = EigenSpectrum(np.array([1.0, 0.5, 0.01, 0.001]))
    assert dof_threshold(s, 0.1) == 2
    assert dof_threshold(s, 0.01) == 3
    assert dof_threshold(s, 0.001) == 4
    assert dof_threshold(eigen_spectrum(np.eye(7)), 0.5) == 7


@pytest.mark.parametrize("tau", [0.0, 1.0, -0.2])
def test_dof_threshold_domain(tau):
    with pytest.raises(DomainError):
        dof_threshold(EigenSpectrum(np.array([1.0])), tau)


def test_effective_rank_examples():
    assert effective_rank(eigen_spectrum(np.eye(9))) == pytest.approx(9.0, abs=1e-12)
    assert effective_rank(eigen_spectrum(np.ones((6, 6)))) == pytest.approx(1.0, abs=1e-12)
    s = EigenSpectrum(np.array([0.5, 0.5, 0.0]))
    assert effective_rank(s) == pytest.approx(2.0, abs=1e-12)


def test_psd_check():
    check_psd(EigenSpectrum(np.array([1.0, -1e-12])))
    with pytest.raises(PSDViolation):
        check_psd(EigenSpectrum(np.array([1.0, -1e-6])))
    with pytest.raises(PSDViolation):
        effective_rank(EigenSpectrum(np.array([1.0, -1e-3])))


def test_asymptotes():
    assert asymptotic_dof_ula(0.3142, 0.003) == pytest.approx(ULA_ASYMPTOTE, rel=1e-15)
    assert asymptotic_dof_ura(0.0393, 0.003) == pytest.approx(URA_ASYMPTOTE, rel=1e-15)
    assert asymptotic_dof_ula(1.0, 0.5) == 4.0


def test_dof_report():
    s = eigen_spectrum(closed_matrix(ArchedUlaGeometry(40, 1.0, 0.0, 0.1)))
    rep = dof_report(s, (0.1, 0.01), asymptote=20.0, beta=0.0)
    assert set(rep.threshold_counts) == {0.1, 0.01}
    assert rep.threshold_counts[0.1] <= rep.threshold_counts[0.01] <= 40
    d = rep.to_dict()
    assert d["threshold_counts"] == {"0.1": rep.threshold_counts[0.1], "0.01": rep.threshold_counts[0.01]}
    assert d["dim"] == 40 and d["asymptote"] == 20.0


def test_planar_dof_near_asymptote():
    # dense planar array: eigenvalue count above 1e-2 sits close to 2L/lambda
    g = ArchedUlaGeometry(200, 2.0, 0.0, 0.1)
    s = eigen_spectrum(closed_matrix(g))
    assert abs(dof_threshold(s, 0.01) - 40) <= 6
    assert s.min > -1e-10 * s.max
    assert not math.isnan(effective_rank(s))
