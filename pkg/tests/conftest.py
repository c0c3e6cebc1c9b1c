from __future__ import annotations

import pytest

from greencalc.refdata import load_bundled


@pytest.fixture(scope="session")
def refdata():
    return load_bundled()


def longform_gco2e(t, n_c, p_c, u_c, n_m, p_m, pue, ci, psf=1.0):
    """Independent single-expression oracle for the full footprint formula.

    Kept as one expression on purpose: it must not share code with the
    composed implementation it checks.
    """
    return t * (n_c * p_c * u_c + n_m * p_m) * pue * ci * 0.001 * psf
