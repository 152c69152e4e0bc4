# Copyright 2026 The floqrylov Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import floqrylov as fq


def test_toral_qkr_is_unitary():
    u = fq.build_toral_qkr(16, 5.0, 0.1, 0.2)
    assert u.shape == (16, 16)
    assert np.abs(u.conj().T @ u - np.eye(16)).max() < 1e-12
    assert fq.unitarity_defect(u) < 1e-12


def test_single_site_harper():
    u = fq.build_kicked_harper(1, 0.0)
    assert abs(u[0, 0] - np.exp(-1j)) < 1e-15


def test_quasi_energies_match_eigenvalues():
    u = fq.build_toral_qkr(8, 2.0)
    phases = np.array(fq.quasi_energies(u))
    eig = np.linalg.eigvals(u)
    for lam in np.exp(-1j * phases):
        assert np.abs(eig - lam).min() < 1e-10


def test_state_krylov_reaches_full_dimension():
    u = fq.build_toral_qkr(12, 10.0, 0.2, 0.3)
    res = fq.krylov(u, mode="state", seed=3)
    assert res["dk"] == 12
    assert res["terminated"]
    h = res["hessenberg"]
    assert np.allclose(np.tril(h, -2), 0.0)
    assert all(x > 0 for x in res["subdiagonal"])


def test_identity_operator_is_fixed():
    u = fq.build_toral_qkr(6, 3.0)
    res = fq.krylov(u, mode="operator", initial="identity_operator")
    assert res["dk"] == 1
    assert abs(res["hessenberg"][0, 0] - 1.0) < 1e-12


def test_complexity_routes_agree():
    u = fq.build_toral_qkr(6, 3.0, 0.2, 0.3)
    res = fq.complexity(u, mode="operator", seed=1)
    assert res["k_complexity"][0] == 0.0
    assert len(res["k_complexity"]) == 4 * res["dk"] + 1
    assert res["route_max_diff"] < 1e-8
    assert max(res["k_complexity"]) <= res["dk"] - 1 + 1e-9


def test_two_site_chain():
    times = np.linspace(0.0, 3.0, 7)
    amps = fq.evolve_chain([0.0, 0.0], [1.0], list(times))
    assert np.allclose(np.abs(amps[:, 0]) ** 2, np.cos(times) ** 2, atol=1e-12)
    assert np.allclose(np.abs(amps[:, 1]) ** 2, np.sin(times) ** 2, atol=1e-12)


def test_effective_hamiltonian_round_trip():
    u = fq.build_toral_qkr(8, 4.0, 0.1, 0.1)
    h = fq.effective_hamiltonian(u)
    w, v = np.linalg.eigh(h)
    back = v @ np.diag(np.exp(-1j * w)) @ v.conj().T
    assert np.abs(back - u).max() < 1e-9


def test_lanczos_sigma_x():
    res = fq.lanczos(np.array([[0, 1], [1, 0]], dtype=complex), mode="state", initial="position_state:0")
    assert res["dk"] == 2
    assert res["b"] == pytest.approx([1.0])


def test_equal_spacings():
    n = 10
    phases = [-math.pi + 2 * math.pi * (k + 0.5) / n for k in range(n)]
    res = fq.spectrum_stats(phases)
    assert np.allclose(res["spacings"], 1.0)
    assert res["r_mean"] == pytest.approx(1.0)


def test_errors_are_python_exceptions():
    with pytest.raises(ValueError):
        fq.build_toral_qkr(0, 1.0)
    with pytest.raises(ValueError):
        fq.krylov(np.array([[1, 0], [0, 2]], dtype=complex))


def test_cli_from_python(tmp_path):
    code = fq.run_cli(["map", "n=4", "kappa=1", "--out", str(tmp_path)])
    assert code == 0
    assert (tmp_path / "matrix.json").exists()
    assert fq.run_cli(["map", "n=0", "--out", str(tmp_path)]) == 2
