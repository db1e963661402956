#!/usr/bin/env python3
# Copyright 2026 The qnet-energy Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""High-precision reference values for the CV key-rate engine.

Evaluates the Gaussian, M-PSK and CV conference key rates with mpmath at
60 significant digits and writes tests/fixtures/cv_oracle.json.  The C++
tests compare against the frozen file; rerun this script only when the
model itself changes.

The routes here are deliberately different from the C++ ones:
  * PSK coefficients nu_k use the real series sum_{n = k mod M} a^{2n}/n!
    instead of the complex discrete Fourier sum.
  * Both roots of every symplectic quadratic are taken from the +/- formula.
  * The CKA conditional matrix is built as an explicit 4x4 covariance and
    conditioned with a Moore-Penrose pseudo-inverse.
"""

import json
import os
import random
import sys

import mpmath as mp

mp.mp.dps = 60

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "fixtures", "cv_oracle.json")


def log2(x):
    return mp.log(x, 2)


def G(x):
    x = mp.mpf(x)
    if x == 0:
        return mp.mpf(0)
    return (x + 1) * log2(x + 1) - x * log2(x)


def h(p):
    p = mp.mpf(p)
    if p == 0 or p == 1:
        return mp.mpf(0)
    return -p * log2(p) - (1 - p) * log2(1 - p)


def mutual_information(va, T, xi, eta, vel, det):
    va, T, xi, eta, vel = map(mp.mpf, (va, T, xi, eta, vel))
    if det == "homodyne":
        return log2(1 + eta * T * va / (1 + vel + eta * T * xi)) / 2
    return log2(1 + eta * T * va / (2 + 2 * vel + eta * T * xi))


def gaussian(va, T, xi, eta, vel, beta, det):
    va, T, xi, eta, vel, beta = map(mp.mpf, (va, T, xi, eta, vel, beta))
    V = va + 1
    chi_line = 1 / T - 1 + xi
    if det == "homodyne":
        chi_det = (1 - eta + vel) / eta
    else:
        chi_det = (1 + (1 - eta) + 2 * vel) / eta
    chi_tot = chi_line + chi_det / T
    A = V**2 * (1 - 2 * T) + 2 * T + T**2 * (V + chi_line) ** 2
    B = T**2 * (V * chi_line + 1) ** 2
    sB = mp.sqrt(B)
    if det == "homodyne":
        C = (A * chi_det + V * sB + T * (V + chi_line)) / (T * (V + chi_tot))
        D = sB * (V + sB * chi_det) / (T * (V + chi_tot))
    else:
        C = (A * chi_det**2 + B + 1 + 2 * chi_det * (V * sB + T * (V + chi_line))
             + 2 * T * (V**2 - 1)) / (T * (V + chi_tot)) ** 2
        D = ((V + sB * chi_det) / (T * (V + chi_tot))) ** 2
    dAB = mp.sqrt(A**2 - 4 * B)
    dCD = mp.sqrt(C**2 - 4 * D)
    l1 = mp.sqrt((A + dAB) / 2)
    l2 = mp.sqrt((A - dAB) / 2)
    l3 = mp.sqrt((C + dCD) / 2)
    l4 = mp.sqrt((C - dCD) / 2)
    chi = G((l1 - 1) / 2) + G((l2 - 1) / 2) - G((l3 - 1) / 2) - G((l4 - 1) / 2)
    I = mutual_information(va, T, xi, eta, vel, det)
    return I, chi, beta * I - chi, [l1, l2, l3, l4]


def psk_nu(alpha_sq, M):
    """nu_k as the real lattice sum over n = k (mod M)."""
    a2 = mp.mpf(alpha_sq)
    nus = []
    for k in range(M):
        s = mp.mpf(0)
        n = k
        while True:
            term = a2**n / mp.factorial(n)
            s += term
            if n > 4 * a2 + 40 and term < mp.mpf(10) ** (-80) * (s if s > 0 else 1):
                break
            n += M
        nus.append(s)
    return nus


def psk(va, T, xi, eta, vel, beta, det, M):
    va, T, xi, eta, vel, beta = map(mp.mpf, (va, T, xi, eta, vel, beta))
    a2 = va / 2
    V = va + 1
    W = 1 + eta * T * va + eta * T * xi + vel
    if a2 == 0:
        Z = mp.mpf(0)
    else:
        nu = psk_nu(a2, M)
        s32 = sum(nu[k] ** mp.mpf(1.5) / mp.sqrt(nu[(k + 1) % M]) for k in range(M))
        s2 = sum(nu[j] ** 2 / nu[(j + 1) % M] for j in range(M))
        inner = mp.exp(-a2) * s2 - mp.exp(-2 * a2) * s32**2
        Z = mp.sqrt(eta * T) * (2 * a2 * mp.exp(-a2) * s32
                          - mp.sqrt(2 * xi * a2) * mp.sqrt(inner))
    Delta = V**2 + W**2 - 2 * Z**2
    det_g = (V * W - Z**2) ** 2
    disc = mp.sqrt(Delta**2 - 4 * det_g)
    l1 = mp.sqrt((Delta + disc) / 2)
    l2 = mp.sqrt((Delta - disc) / 2)
    if det == "homodyne":
        l3 = mp.sqrt(V * (V - Z**2 / W))
    else:
        l3 = V - Z**2 / (W + 1)
    chi = G((l1 - 1) / 2) + G((l2 - 1) / 2) - G((l3 - 1) / 2)
    I = mutual_information(va, T, xi, eta, vel, det)
    return I, chi, beta * I - chi, Z


def cka(mu, n, T, eta, vel, beta):
    mu, T, eta, vel, beta = map(mp.mpf, (mu, T, eta, vel, beta))
    delta = (1 - eta + vel) / eta
    omega = 2 * delta + 1
    x = T * mu + (1 - T) * omega
    y = mu
    z = mp.sqrt(T * (mu**2 - 1))
    th = z**2 / (n * x)
    d1 = y - (n - 1) * z**2 / (n * x)
    d2 = y - z**2 / (n * x)
    # two-Bob covariance [[Delta, Theta], [Theta, Delta]]
    Vij = mp.matrix([[d1, 0, th, 0],
                     [0, d2, 0, -th],
                     [th, 0, d1, 0],
                     [0, -th, 0, d2]])
    A = Vij[0:2, 0:2]
    Bm = Vij[2:4, 2:4]
    Cm = Vij[0:2, 2:4]
    Pi = mp.matrix([[1, 0], [0, 0]])
    PBP = Pi * Bm * Pi
    # pseudo-inverse of diag(b, 0)
    pinv = mp.matrix([[1 / PBP[0, 0], 0], [0, 0]])
    Vcond = A - Cm * pinv * Cm.T
    det_a = mp.det(A)
    tr_a = A[0, 0] + A[1, 1]
    det_c = mp.det(Vcond)
    tr_c = Vcond[0, 0] + Vcond[1, 1]
    I = log2((1 + det_a + tr_a) / (1 + det_c + tr_c)) / 2
    nu = mp.sqrt(y * (y - z**2 / x))
    lam = n * omega * mu + T * (1 + (n - 1 - n * omega) * mu)
    lamb = n * omega * mu + T * (n - 1 - (n * omega - 1) * mu)
    tau = n * omega * (1 - T) + T * (n - 1 + mu)
    taub = n * omega * (1 - T) + T * ((n - 1) * mu + 1)
    nu_n = mp.sqrt(lam * lamb / (tau * taub))
    chi = 2 * G((nu - 1) / 2) - G((nu_n - 1) / 2)
    return I, chi, beta * I - chi


def s(x):
    return mp.nstr(x, 25, min_fixed=-1000, max_fixed=1000)


def main():
    rng = random.Random(20260416)
    out = {"gaussian": [], "psk": [], "cka": [], "scalars": {}}

    while len(out["gaussian"]) < 50:
        p = dict(v_a=10 ** rng.uniform(-1, 1.5), T=10 ** rng.uniform(-2, -0.02),
                 xi=rng.uniform(0, 0.05), p_det=rng.uniform(0.5, 1.0),
                 v_el=rng.uniform(0, 0.05), beta=rng.uniform(0.9, 0.99),
                 detection=rng.choice(["homodyne", "heterodyne"]))
        I, chi, K, _ = gaussian(p["v_a"], p["T"], p["xi"], p["p_det"], p["v_el"],
                                p["beta"], p["detection"])
        if K < 1e-4:
            continue
        out["gaussian"].append({**p, "i_ab": s(I), "chi_be": s(chi), "k": s(K)})

    while len(out["psk"]) < 50:
        p = dict(v_a=10 ** rng.uniform(-1.5, 0.6), T=10 ** rng.uniform(-1.5, -0.02),
                 xi=rng.uniform(0, 0.03), p_det=rng.uniform(0.5, 1.0),
                 v_el=rng.uniform(0, 0.03), beta=rng.uniform(0.9, 0.99),
                 detection=rng.choice(["homodyne", "heterodyne"]),
                 m=rng.choice([4, 4, 4, 8, 16]))
        I, chi, K, Z = psk(p["v_a"], p["T"], p["xi"], p["p_det"], p["v_el"],
                           p["beta"], p["detection"], p["m"])
        if K < 1e-4:
            continue
        out["psk"].append({**p, "i_ab": s(I), "chi_be": s(chi), "k": s(K), "z": s(Z)})

    while len(out["cka"]) < 50:
        p = dict(m_mod=1 + 10 ** rng.uniform(-1, 1.5), n=rng.randint(2, 8),
                 T=10 ** rng.uniform(-0.3, -0.0005), p_det=rng.uniform(0.6, 1.0),
                 v_el=rng.uniform(0, 0.02), beta=rng.uniform(0.9, 0.99))
        I, chi, K = cka(p["m_mod"], p["n"], p["T"], p["p_det"], p["v_el"], p["beta"])
        if K < 1e-4:
            continue
        out["cka"].append({**p, "i_ab": s(I), "chi_be": s(chi), "k": s(K)})

    sc = out["scalars"]
    sc["transmittance_40km_018"] = s(mp.power(10, mp.mpf("-0.72")))
    sc["binary_entropy_002"] = s(h(mp.mpf("0.02")))
    sc["binary_entropy_001"] = s(h(mp.mpf("0.01")))
    sc["g_half"] = s(G(mp.mpf("0.5")))
    sc["generic_raw_01_09_095_40km"] = s(mp.mpf("0.1") * mp.mpf("0.9") * mp.mpf("0.95")
                                         * mp.power(10, mp.mpf("-0.72")))
    sc["e91_raw_40km"] = s(mp.mpf("0.1") * mp.mpf("0.9") ** 2 * mp.mpf("0.95") ** 2
                           * mp.power(10, mp.mpf("-0.72")))
    sc["mdi_raw_40km"] = s(mp.mpf("0.1") ** 2 * mp.mpf("0.9") ** 2 * mp.mpf("0.95") ** 2
                           * mp.mpf("0.5") * mp.power(10, mp.mpf("-0.72")))
    sc["ghz4_raw_10km"] = s(mp.mpf("0.01") ** 2 * mp.mpf("0.9") ** 4 * mp.mpf("0.95") ** 4
                            * mp.power(10, -4 * mp.mpf("0.18") * 10 / 10))
    sc["qber_root"] = s(mp.findroot(lambda q: 1 - 2 * h(q), mp.mpf("0.11")))
    T18 = mp.power(10, mp.mpf("-0.18"))
    sc["mi_hom_T018_baseline_va5"] = s(mutual_information(5, T18, "0.01", "0.7", "0.005",
                                                          "homodyne"))
    T10 = mp.power(10, mp.mpf("-0.18"))  # 10 km at 0.18 dB/km
    I, chi, K, lam = gaussian(5, T10, "0.01", "0.7", "0.005", "0.95", "homodyne")
    sc["gauss_10km_va5_hom_chi"] = s(chi)
    sc["gauss_10km_va5_hom_k"] = s(K)
    I, chi, K, Z = psk(1, 1, 0, 1, 0, 1, "homodyne", 4)
    sc["psk_m4_a05_perfect_hom_chi"] = s(chi)
    sc["psk_m4_a05_perfect_hom_z"] = s(Z)
    T01 = mp.power(10, mp.mpf("-0.018") * mp.mpf("0.1"))
    I, chi, K = cka(mp.mpf(5), 5, T01, "0.7", "0.005", "0.95")
    sc["cka_n5_100m_mu5_chi"] = s(chi)
    sc["cka_n5_100m_mu5_k"] = s(K)

    with open(OUT, "w") as f:
        json.dump(out, f, indent=1, sort_keys=True)
        f.write("\n")
    print("wrote", os.path.normpath(OUT), file=sys.stderr)
    for k in sorted(sc):
        print(k, sc[k])


if __name__ == "__main__":
    main()
