"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Tolerances are fixed here and match the verification contract; the
statistical checks are gated at 3 sigma with explicit seeds.
"""

import time

import numpy as np

from liecheck import chars, fourier, heat, hilbert
from liecheck.models import (
    MonteCarlo,
    algebra_element,
    build_group_model,
    chamber_coordinates,
    haar_sample,
    su2_character,
)
from liecheck.quadrature import (
    build_chamber_quadrature,
    calibrate_flag_volume,
    cartesian_oracle_integrate,
    integrate_invariant,
)
from liecheck.rootdata import build_root_system, dimension, enumerate_dominant, weight

A1 = build_root_system("A1")
A2 = build_root_system("A2")
T1 = build_root_system("T1")
SU2 = build_group_model("SU2")
SU3 = build_group_model("SU3")


def _report(num: int, label: str, ok: bool, detail: str = "") -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num:02d} ({label}) {detail}")
    assert ok, f"criterion {num} ({label}): {detail}"


def test_criterion_01_holomorphic_norm_constants():
    t0 = time.perf_counter()
    worst_a1 = 0.0
    for t in (0.5, 1.0, 2.0):
        for n in range(7):
            chk = hilbert.verify_norm_identity(A1, weight(A1, (n,)), t, "C", 64)
            worst_a1 = max(worst_a1, chk.rel_err)
    dt_a1 = time.perf_counter() - t0
    t0 = time.perf_counter()
    worst_a2 = 0.0
    for lam in enumerate_dominant(A2, 2):
        chk = hilbert.verify_norm_identity(A2, lam, 1.0, "C", 96)
        worst_a2 = max(worst_a2, chk.rel_err)
    dt_a2 = time.perf_counter() - t0
    ok = worst_a1 <= 1e-8 and dt_a1 < 1.0 and worst_a2 <= 1e-6 and dt_a2 < 30.0
    _report(1, "holomorphic norm constants", ok,
            f"A1 rel {worst_a1:.2e} in {dt_a1:.2f}s; A2 rel {worst_a2:.2e} in {dt_a2:.2f}s")


def test_criterion_02_pairing_constants():
    worst_a1 = 0.0
    for t in (0.5, 1.0, 2.0):
        for n in range(7):
            chk = hilbert.verify_norm_identity(A1, weight(A1, (n,)), t, "D", 64)
            worst_a1 = max(worst_a1, chk.rel_err)
    worst_a2 = 0.0
    for lam in enumerate_dominant(A2, 2):
        chk = hilbert.verify_norm_identity(A2, lam, 1.0, "D", 96)
        worst_a2 = max(worst_a2, chk.rel_err)
    # pointwise: the integral transform of a character is D times the character
    rng = np.random.default_rng(202)
    xs = haar_sample(SU2, rng, 20)
    worst_pt = 0.0
    for n in (0, 1, 2):
        lam = weight(A1, (n,))
        phi = fourier.character_series("A1", (n,), "HL2", 1.0)
        vals = hilbert.bks_integral_transform(phi, SU2, xs)
        target = hilbert.d_constant(A1, lam, 1.0) * su2_character(n, xs)
        worst_pt = max(worst_pt, float((np.abs(vals - target) / np.abs(target)).max()))
    ok = worst_a1 <= 1e-8 and worst_a2 <= 1e-6 and worst_pt <= 1e-6
    _report(2, "pairing constants", ok,
            f"A1 rel {worst_a1:.2e}; A2 rel {worst_a2:.2e}; pointwise rel {worst_pt:.2e}")


def test_criterion_03_orbit_character_identity():
    rng = np.random.default_rng(303)
    lams = enumerate_dominant(A1, 6)
    worst = 0.0
    for k in range(100):
        lam = lams[k % len(lams)]
        Y = chars.CartanPoint(rng.normal(0.0, 0.7, size=1))
        d = dimension(A1, lam)
        for half in (False, True):
            est = chars.kirillov_residual(SU2, lam, Y, chars.ClosedFormA1(), half_angle=half)
            mu = (1.0 if half else 2.0) * (lam.coords + A1.rho)
            scale = d * chars.orbital_average(SU2, mu, Y.coords, chars.ClosedFormA1()).value
            worst = max(worst, est.value / max(1.0, scale))
    ok = worst <= 1e-12
    sig_worst = 0.0
    for i, dn in enumerate([(1, 0), (0, 1), (1, 1), (2, 2)]):
        lam = weight(A2, dn)
        Y = chars.CartanPoint(rng.normal(0.0, 0.5, size=2))
        for j, half in enumerate((False, True)):
            est = chars.kirillov_residual(SU3, lam, Y,
                                          MonteCarlo(100_000, 1000 + 10 * i + j),
                                          half_angle=half)
            sig_worst = max(sig_worst, est.value / est.stderr)
    ok = ok and sig_worst <= 3.0
    _report(3, "orbit-method character identity", ok,
            f"A1 closed-form scaled residual {worst:.2e}; A2 MC worst {sig_worst:.2f} sigma")


def _invariant_cases(rs):
    lams = enumerate_dominant(rs, 1 if rs.rank > 1 else 3)
    cases = []
    for narrow in (0.35, 0.5, 0.75):
        for p in (0, 1, 2):
            for lam in lams:
                mu_eff = float(np.linalg.norm(2.0 * (lam.coords + rs.rho) + 2.0 * p * rs.rho))
                if mu_eff**2 * narrow <= 28.0:
                    cases.append((narrow, p, lam, mu_eff))
    return cases[:20]


def test_criterion_04_chamber_reduction_formula():
    sig_worst = 0.0
    count = 0
    for rs, model in ((A1, SU2), (A2, SU3)):
        order = 64 if rs.rank == 1 else 96
        for i, (tg, p, lam, mu_eff) in enumerate(_invariant_cases(rs)):
            count += 1
            q = build_chamber_quadrature(rs, tg, order, mu_eff)

            def f_chamber(Y, tg=tg, p=p, lam=lam):
                return (chars.eta(rs, Y) ** p * chars.weyl_char_holo(rs, lam, 2.0 * Y)
                        * np.exp(-np.sum(Y**2, axis=-1) / tg))

            ts = 2.0 * tg

            def f_cart(c, tg=tg, ts=ts, p=p, lam=lam):
                rep = chamber_coordinates(model, c)
                tail = np.exp(-np.sum(c**2, axis=-1) * (1.0 / tg - 1.0 / ts))
                return (chars.eta(rs, rep) ** p
                        * chars.weyl_char_holo(rs, lam, 2.0 * rep) * tail)

            val = integrate_invariant(q, f_chamber)
            est = cartesian_oracle_integrate(model, f_cart, ts,
                                             MonteCarlo(1_000_000, 4000 + count))
            sig_worst = max(sig_worst, abs(est.value - val) / est.stderr)
    flag = calibrate_flag_volume(A1, SU2, samples=1_000_000, seed=404)
    flag_dev = abs(flag - 2.0**1.5 * np.pi)
    ok = sig_worst <= 3.0 and count == 40 and flag_dev <= 1e-3
    _report(4, "chamber reduction formula", ok,
            f"worst of {count} integrands {sig_worst:.2f} sigma; flag volume dev {flag_dev:.1e}")


def test_criterion_05_density_consistency():
    rng = np.random.default_rng(505)
    worst_eta = 0.0
    worst_j = 0.0
    for rs, model in ((A1, SU2), (A2, SU3)):
        coords = rng.normal(0.0, 0.8, size=(100, model.dim_k))
        reps = chamber_coordinates(model, coords)
        for c, rep in zip(coords, reps):
            prod = float(chars.eta(rs, rep))
            det = chars.eta_det_oracle(model, algebra_element(model, c))
            worst_eta = max(worst_eta, abs(prod - det))
        for Y in rng.normal(0.0, 0.8, size=(100, rs.rank)):
            worst_j = max(worst_j, chars.j_half_identity_residual(rs, Y))
    ok = worst_eta <= 1e-10 and worst_j <= 1e-13
    _report(5, "half-form density consistency", ok,
            f"product-vs-determinant {worst_eta:.2e}; half-argument identity {worst_j:.2e}")


def test_criterion_06_fourier_plancherel():
    rng = np.random.default_rng(606)
    dynkins = [(n,) for n in range(5)]  # spins <= 2
    terms = {dn: rng.normal(size=(dn[0] + 1, dn[0] + 1))
             + 1j * rng.normal(size=(dn[0] + 1, dn[0] + 1)) for dn in dynkins}
    target = fourier.FourierSeries("A1", "L2K", 1.0, terms)

    def f(xs):
        return fourier.synthesize_many(target, SU2, xs)

    recovered = {}
    var_point = 0.0
    for k, dn in enumerate(dynkins):
        est, sem = fourier.fourier_coeff(SU2, f, dn, MonteCarlo(100_000, 6000 + k))
        recovered[dn] = est
        var_point += (dn[0] + 1) * float(np.sum(sem**2))
    series = fourier.FourierSeries("A1", "L2K", 1.0, recovered)
    xs = haar_sample(SU2, rng, 100)
    dev = np.abs(fourier.synthesize_many(series, SU2, xs)
                 - fourier.synthesize_many(target, SU2, xs))
    roundtrip_ok = bool(np.all(dev <= 3.0 * np.sqrt(var_point)))
    # squared norm of each character is 1
    xs = haar_sample(SU2, rng, 200_000)
    norm_ok = True
    for n in (1, 2):
        vals = np.abs(su2_character(n, xs)) ** 2
        sem = vals.std(ddof=1) / np.sqrt(len(vals))
        norm_ok = norm_ok and abs(vals.mean() - 1.0) <= 3 * sem
    # holomorphic norms equal the closed-form constants
    hl2_worst = 0.0
    for n in range(5):
        series_n = fourier.character_series("A1", (n,), "HL2", 1.0)
        quad = hilbert.verify_norm_identity(A1, weight(A1, (n,)), 1.0, "C", 64).quadrature
        hl2_worst = max(hl2_worst, abs(fourier.plancherel_norm(series_n) - quad) / quad)
    ok = roundtrip_ok and norm_ok and hl2_worst <= 1e-8
    _report(6, "Fourier synthesis and Plancherel", ok,
            f"roundtrip max dev {dev.max():.3f} vs 3sigma {3*np.sqrt(var_point):.3f}; "
            f"HL2 norm rel {hl2_worst:.2e}")


def test_criterion_07_convolution_homomorphism():
    rng = np.random.default_rng(707)
    a_terms = {(0,): rng.normal(size=(1, 1)) + 1j * rng.normal(size=(1, 1)),
               (1,): rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))}
    b_terms = {(1,): rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)),
               (2,): rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))}
    a = fourier.FourierSeries("A1", "L2K", 1.0, a_terms)
    b = fourier.FourierSeries("A1", "L2K", 1.0, b_terms)
    ab = fourier.convolve(a, b)
    xs = haar_sample(SU2, rng, 400_000)
    a_vals = fourier.synthesize_many(a, SU2, xs)
    xinv = np.conj(np.swapaxes(xs, 1, 2))
    sig_worst = 0.0
    for q in haar_sample(SU2, rng, 5):
        b_vals = fourier.synthesize_many(b, SU2, np.einsum("nij,jk->nik", xinv, q))
        prods = a_vals * b_vals
        sem = np.sqrt(prods.real.var(ddof=1) + prods.imag.var(ddof=1)) / np.sqrt(len(xs))
        sig_worst = max(sig_worst, abs(prods.mean() - fourier.synthesize(ab, SU2, q)) / sem)
    # chi * chi = chi / d, via the direct double average
    chi = fourier.character_series("A1", (1,), "L2K", 1.0)
    chi_vals = fourier.synthesize_many(chi, SU2, xs)
    for q in haar_sample(SU2, rng, 3):
        shifted = fourier.synthesize_many(chi, SU2, np.einsum("nij,jk->nik", xinv, q))
        prods = chi_vals * shifted
        sem = np.sqrt(prods.real.var(ddof=1) + prods.imag.var(ddof=1)) / np.sqrt(len(xs))
        target = su2_character(1, q) / 2.0
        sig_worst = max(sig_worst, abs(prods.mean() - target) / sem)
    ok = sig_worst <= 3.0
    _report(7, "convolution homomorphism", ok, f"worst deviation {sig_worst:.2f} sigma")


def test_criterion_08_unitary_dictionary():
    worst_ratio = 0.0
    for rs in (A1, A2, T1):
        for t in (0.5, 1.0, 2.0):
            for lam in enumerate_dominant(rs, 4 if rs.rank == 1 else 2):
                lhs = (4 * t * np.pi) ** (-rs.dim_k / 4.0) * hilbert.d_constant(rs, lam, t)
                rhs = np.sqrt(hilbert.c_constant(rs, lam, t))
                worst_ratio = max(worst_ratio, abs(lhs - rhs) / rhs)
    rng = np.random.default_rng(808)
    worst_norm = worst_inv = 0.0
    for t in (0.5, 1.0):
        terms = {(n,): rng.normal(size=(n + 1, n + 1)) + 1j * rng.normal(size=(n + 1, n + 1))
                 for n in range(4)}
        s = fourier.FourierSeries("A1", "HL2", t, terms)
        h = hilbert.transform_apply(s, "H")
        worst_norm = max(worst_norm, abs(fourier.plancherel_norm(h) - fourier.plancherel_norm(s))
                         / fourier.plancherel_norm(s))
        back = hilbert.transform_apply(h, "ThetaStar")
        scale = (4 * t * np.pi) ** (-A1.dim_k / 4.0)
        for dn in terms:
            dev = np.abs(scale * back.terms[dn] - s.terms[dn]).max()
            worst_inv = max(worst_inv, dev / np.abs(s.terms[dn]).max())
    sig_worst = 0.0
    for k, n in enumerate((0, 1, 2)):
        phi = fourier.character_series("A1", (n,), "HL2", 1.0)
        fs = fourier.character_series("A1", (n,), "L2K", 1.0)
        spec = hilbert.bks_bracket(phi, fs, "spectral")
        integ = hilbert.bks_bracket(phi, fs, hilbert.IntegralRoute(3000, 8080 + k))
        floor = 1e-12 * abs(spec.value)
        sig_worst = max(sig_worst, abs(integ.value - spec.value) / max(integ.stderr, floor))
    ok = worst_ratio <= 1e-12 and worst_norm <= 1e-12 and worst_inv <= 1e-12 and sig_worst <= 3.0
    _report(8, "unitary dictionary", ok,
            f"ratio {worst_ratio:.1e}; norm {worst_norm:.1e}; inverse {worst_inv:.1e}; "
            f"pairing {sig_worst:.2f} sigma")


def test_criterion_09_heat_multiplier():
    rng = np.random.default_rng(909)
    worst_adj = worst_semi = 0.0
    for t in (0.5, 1.0, 2.0):
        terms = {(n,): rng.normal(size=(n + 1, n + 1)) + 1j * rng.normal(size=(n + 1, n + 1))
                 for n in range(5)}
        s = fourier.FourierSeries("A1", "L2K", t, terms)
        mult = heat.heat_multiplier_apply(s, t, include_prefactor=True)
        adj = hilbert.transform_apply(s, "ThetaStar")
        for dn in terms:
            worst_adj = max(worst_adj, np.abs(mult.terms[dn] - adj.terms[dn]).max()
                            / np.abs(adj.terms[dn]).max())
        one = heat.heat_multiplier_apply(heat.heat_multiplier_apply(s, 0.3), 0.45)
        two = heat.heat_multiplier_apply(s, 0.75)
        for dn in terms:
            worst_semi = max(worst_semi, np.abs(one.terms[dn] - two.terms[dn]).max()
                             / np.abs(s.terms[dn]).max())
    terms = {(n,): rng.normal(size=(n + 1, n + 1)) + 1j * rng.normal(size=(n + 1, n + 1))
             for n in range(5)}
    series = fourier.FourierSeries("A1", "L2K", 1.0, terms)
    est = heat.heat_convolution_residual(SU2, series, 1.0, 200_000, 9090)
    conv_ok = est.value <= 3 * est.stderr
    eps = [heat.energy_eigenvalue(A1, lam) for lam in enumerate_dominant(A1, 6)]
    eps += [heat.energy_eigenvalue(A2, lam) for lam in enumerate_dominant(A2, 3)]
    pos_ok = eps[0] == 0.0 and min(e for e in eps if e != 0.0) > 0.0 and min(eps) >= 0.0
    ok = worst_adj <= 1e-13 and worst_semi <= 1e-13 and conv_ok and pos_ok
    _report(9, "heat multiplier", ok,
            f"adjoint {worst_adj:.1e}; semigroup {worst_semi:.1e}; "
            f"convolution {est.value / est.stderr:.2f} sigma")


def test_criterion_10_open_constants():
    worst_stab = 0.0
    for n in range(5):
        est = hilbert.naive_constant(A1, weight(A1, (n,)), 1.0, 64)
        worst_stab = max(worst_stab, est.stderr / est.value)
    worst_torus = 0.0
    for n in range(5):
        lam = weight(T1, (n,))
        est = hilbert.naive_constant(T1, lam, 1.0, 64)
        C = hilbert.c_constant(T1, lam, 1.0)
        worst_torus = max(worst_torus, abs(est.value - C) / C)
    ok = worst_stab <= 1e-8 and worst_torus <= 1e-12
    _report(10, "density-free constants", ok,
            f"order-doubling stability {worst_stab:.2e}; torus degeneracy {worst_torus:.2e}")
