# Copyright 2026 The uddtd Authors
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

import uddtd


def test_udd_times():
    assert uddtd.udd_times(2) == pytest.approx([0.25, 0.75], abs=1e-15)
    with pytest.raises(ValueError, match="empty sequence"):
        uddtd.udd_times(0)


def test_sequences():
    seq = uddtd.qdd_sequence(1, 1)
    assert len(seq) == 3
    assert seq.axes == ["Z", "X", "Z"]
    assert '"pulses"' in seq.to_json()
    custom = uddtd.PulseSequence([(0.3, "X"), (0.6, "Y")], duration=2.0)
    assert custom.duration == 2.0
    with pytest.raises(ValueError):
        uddtd.PulseSequence([(0.6, "X"), (0.3, "X")])


def test_integrals():
    for n, want in [(3, -0.03033), (6, -0.00884), (7, -0.00668), (8, -0.00524)]:
        got = uddtd.magnus_integrals(uddtd.udd_times(n))["I32"]
        assert abs(got - want) <= 1e-5
    bp = uddtd.udd_times(4)
    assert abs(uddtd.ordered_coefficient(bp, [1, 0, 0])) <= 1e-12
    est, err = uddtd.mc_oracle(bp, [0, 1], 100000, 3)
    assert abs(est - uddtd.ordered_coefficient(bp, [0, 1])) <= 4 * err


def test_spectral():
    assert uddtd.fourier_coefficient(1, 2) == pytest.approx(4 / math.pi, abs=1e-14)
    assert uddtd.in_spectrum(2, 9)
    assert uddtd.cos_chain([0]) == pytest.approx(math.pi)
    assert uddtd.cos_chain_reduced([2, 4, 2]) == pytest.approx(uddtd.cos_chain([2, 4, 2]))
    assert abs(uddtd.f_coefficient(3, [1, 1, 1])) <= 1e-12


def test_operators():
    h = uddtd.random_hamiltonian(2, 0, 1)
    d0, d1 = h.d0(), h.d1()
    assert d0.shape == (4, 4)
    eta = uddtd.eta2(h)
    assert np.allclose(eta, d0 @ d1 - d1 @ d0, atol=1e-13)
    brute = d1 @ eta - eta @ d1
    assert np.allclose(uddtd.d1_eta2_commutator(h), brute, atol=1e-12)
    terms = uddtd.magnus_terms(h, uddtd.udd_times(3), 0.1)
    for key in ("H1", "H2", "H3"):
        assert np.allclose(terms[key], terms[key].conj().T, atol=1e-12)


def test_scaling_and_heff():
    h = uddtd.random_hamiltonian(2, 2, 1, transverse=False)
    seq = uddtd.udd_sequence(2, "X")
    report = uddtd.scaling_sweep(h, seq, "dephasing", uddtd.log_grid(1e-5, 1.0, 16))
    assert report["slope"] >= 2.7
    with pytest.raises(uddtd.NoAsymptoticWindow):
        uddtd.scaling_sweep(h, seq, "dephasing", uddtd.log_grid(1.0, 2.0, 8))
    fit = uddtd.fit_effective_hamiltonian(
        uddtd.udd_sequence(3, "Z"), uddtd.random_hamiltonian(2, 0, 1),
        [0.01 * i for i in range(1, 11)])
    assert fit["relative_error"] < 0.01


def test_evolve_unitary():
    h = uddtd.random_hamiltonian(3, 1, 2)
    u = uddtd.evolve(h, uddtd.udd_sequence(3, "X"), 0.5)
    assert np.allclose(u.conj().T @ u, np.eye(6), atol=1e-10)
