import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from diracpoint import (
    DomainError,
    ModelParams,
    Nonlinearity,
    charge_Q,
    dQ_domega,
    geometry,
    jump_condition_residual,
    make_zero_frequency_wave,
    omega_kolokolov,
    profile,
    solve_amplitude_type1,
    solve_amplitude_type2,
    solve_parity_broken,
    solve_parity_preserved,
)

M1 = ModelParams(1.0, 0.0)


def test_amplitude_type1_examples():
    w = solve_amplitude_type1(ModelParams(1.0, 0.0), Nonlinearity(1.0))
    assert w.alpha == pytest.approx(math.sqrt(2.0), rel=1e-14)
    w = solve_amplitude_type1(ModelParams(1.0, 0.8), Nonlinearity(2.0))
    assert w.alpha == pytest.approx((2.0 / 3.0) ** 0.25, rel=1e-14)
    w = solve_amplitude_type1(ModelParams(1.0, 0.99), Nonlinearity(1.0))
    mu = geometry(ModelParams(1.0, 0.99)).mu
    assert w.alpha**2 == pytest.approx(2.0 * mu, rel=1e-13)
    assert w.alpha**2 == pytest.approx(0.14178, rel=1e-4)


def test_amplitude_user_nonlinearity_matches_power():
    nl_user = Nonlinearity(kappa=2.0, f=lambda t: t * t, f_prime=lambda t: 2.0 * t)
    a = solve_amplitude_type1(ModelParams(1.0, 0.5), nl_user).alpha
    b = solve_amplitude_type1(ModelParams(1.0, 0.5), Nonlinearity(2.0)).alpha
    assert a == pytest.approx(b, rel=1e-12)


def test_profile_decay_and_mean_value():
    wave = solve_amplitude_type1(ModelParams(1.0, 0.8), Nonlinearity(2.0))
    far = profile(wave, 30.0)
    assert np.all(np.abs(far) < 1e-7)
    # mean value at the origin kills the odd component
    at0 = profile(wave, 0.0)
    assert at0[0] == pytest.approx(wave.alpha, rel=1e-14)
    assert at0[1] == 0.0
    xs = np.linspace(-2, 2, 7)
    vals = profile(wave, xs)
    assert vals.shape == (2, 7)


def test_zero_frequency_family():
    nl = Nonlinearity(1.0)
    wave = make_zero_frequency_wave(ModelParams(1.0, 0.0), nl, a=2.0, b=math.sqrt(2.0))
    assert max(abs(jump_condition_residual(wave, nl))) < 1e-11
    with pytest.raises(DomainError):
        make_zero_frequency_wave(ModelParams(1.0, 0.0), nl, a=1.0, b=0.0)
    with pytest.raises(DomainError):
        make_zero_frequency_wave(ModelParams(1.0, 0.5), nl, a=2.0, b=math.sqrt(2.0))


def test_parity_preserved_examples():
    p = ModelParams(1.0, 0.8)
    nl = Nonlinearity(1.0)
    w0 = solve_parity_preserved(p, nl, 0.0)
    w1 = solve_amplitude_type1(p, nl)
    assert w0.alpha == pytest.approx(w1.alpha, rel=1e-14)
    w = solve_parity_preserved(p, nl, 0.1)
    assert w.alpha**2 == pytest.approx((2.0 / 3.0) / 1.1 / 1.1, rel=1e-13)
    # residual of the defining relation
    assert (1.0 + 0.1) * w.f_at_wave == pytest.approx(2.0 * geometry(p).mu, abs=1e-12)
    with pytest.raises(DomainError):
        solve_parity_preserved(p, nl, -1.0)


def test_parity_broken_examples():
    p = ModelParams(1.0, 0.95)
    wave, consts = solve_parity_broken(p, 0.05, 1.0)
    mu = wave.geometry.mu
    assert mu == pytest.approx(0.16013, rel=1e-4)
    # amplitude ratio matches the small-epsilon expansion to O(eps^2 mu^2)
    expansion = -0.05 * mu / (1.0 - mu * mu)
    assert wave.beta / wave.alpha == pytest.approx(expansion, rel=1e-3)
    assert wave.beta / wave.alpha == pytest.approx(-0.008216, rel=1e-3)
    # f equals 2*mu up to O(eps^2 mu^2)
    assert wave.f_at_wave == pytest.approx(2.0 * mu, rel=2e-4)
    assert consts.Y**2 == pytest.approx(consts.X * consts.Z, rel=1e-12)
    assert consts.F == pytest.approx(wave.f_at_wave + consts.Y, abs=1e-14)


def test_parity_broken_limits():
    # eps -> 0 gives the unperturbed wave exactly
    p = ModelParams(1.0, 0.9)
    wave, consts = solve_parity_broken(p, 0.0, 1.5)
    ref = solve_amplitude_type1(p, Nonlinearity(1.5))
    assert wave.beta == 0.0
    assert wave.alpha == pytest.approx(ref.alpha, rel=1e-14)
    # X, Y, Z -> 4*kappa*mu as eps -> 0, mu -> 0
    p2 = ModelParams(1.0, 0.9999)
    mu = geometry(p2).mu
    _, c2 = solve_parity_broken(p2, 0.0, 1.5)
    for val in (c2.X, c2.Y, c2.Z):
        assert val == pytest.approx(4.0 * 1.5 * mu, rel=5e-3)


def test_parity_broken_discriminant_guard():
    with pytest.raises(DomainError):
        solve_parity_broken(ModelParams(1.0, 0.0), 0.9, 1.0)  # mu = 1, large eps


@pytest.mark.parametrize(
    "family,build",
    [
        ("type1", lambda p: solve_amplitude_type1(p, Nonlinearity(2.0))),
        ("type2", lambda p: solve_amplitude_type2(p, Nonlinearity(2.0))),
        ("parity_preserved", lambda p: solve_parity_preserved(p, Nonlinearity(2.0), 0.07)),
        ("parity_broken", lambda p: solve_parity_broken(p, 0.04, 2.0)[0]),
    ],
)
@pytest.mark.parametrize("omega", [-0.6, -0.2, 0.3, 0.75, 0.95])
def test_jump_condition_residuals(family, build, omega):
    wave = build(ModelParams(1.0, omega))
    assert wave.family == family
    res = np.max(np.abs(jump_condition_residual(wave)))
    assert res < 1e-11


@given(
    omega=st.floats(-0.95, 0.95),
    kappa=st.floats(0.2, 3.0),
)
@settings(max_examples=120, deadline=None)
def test_jump_condition_property(omega, kappa):
    wave = solve_amplitude_type1(ModelParams(1.0, omega), Nonlinearity(kappa))
    assert np.max(np.abs(jump_condition_residual(wave))) < 1e-11


def test_parity_map():
    # for even f the odd-top wave at omega matches sigma1 * conj of the
    # even-top wave at -omega, pointwise
    nl = Nonlinearity(2.0)
    xs = np.linspace(-3.0, 3.0, 41)
    for omega in (-0.7, -0.3, 0.4, 0.8):
        w2 = solve_amplitude_type2(ModelParams(1.0, omega), nl)
        w1 = solve_amplitude_type1(ModelParams(1.0, -omega), nl)
        lhs = profile(w2, xs)
        rhs = np.conj(profile(w1, xs))[::-1, :]  # swap components
        assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_charge_and_derivative():
    nl = Nonlinearity(2.0)
    # closed form against quadrature of the profile
    p = ModelParams(1.0, 0.6)
    wave = solve_amplitude_type1(p, nl)
    xs = np.linspace(-40.0, 40.0, 400_000)  # even count keeps the kink off the nodes
    density = np.sum(np.abs(profile(wave, xs)) ** 2, axis=0)
    assert np.trapezoid(density, xs) == pytest.approx(charge_Q(wave), rel=1e-6)
    # kolokolov sign pattern: negative below the critical frequency
    assert dQ_domega(ModelParams(1.0, 0.75), nl) == pytest.approx(0.0, abs=1e-14)
    assert dQ_domega(ModelParams(1.0, 0.7), nl) < 0.0
    assert dQ_domega(ModelParams(1.0, 0.8), nl) > 0.0
    for omega in (-0.9, -0.3, 0.2, 0.9):
        assert dQ_domega(ModelParams(1.0, omega), Nonlinearity(1.0)) < 0.0
    with pytest.raises(DomainError):
        dQ_domega(ModelParams(1.0, 0.5), Nonlinearity(0.0))
    with pytest.raises(DomainError):
        charge_Q(solve_amplitude_type2(ModelParams(1.0, 0.5), nl))


@pytest.mark.parametrize("kappa", [-2.0, -0.5, 1.5, 2.0, 5.0])
def test_kolokolov_zero_location(kappa):
    nl = Nonlinearity(kappa)
    target = omega_kolokolov(1.0, kappa)
    assert abs(target) < 1.0
    zero = brentq(
        lambda w: dQ_domega(ModelParams(1.0, w), nl), target - 0.04, target + 0.04, xtol=1e-14
    )
    assert zero == pytest.approx(target, abs=1e-10)


@pytest.mark.parametrize("builder", ["broken", "parity"])
def test_epsilon_continuity_order(builder):
    # alpha(eps) -> alpha(0) at first order or better
    p = ModelParams(1.0, 0.9)
    base = solve_amplitude_type1(p, Nonlinearity(1.0)).alpha
    errs = []
    for eps in (1e-2, 1e-3, 1e-4):
        if builder == "broken":
            alpha = solve_parity_broken(p, eps, 1.0)[0].alpha
        else:
            alpha = solve_parity_preserved(p, Nonlinearity(1.0), eps).alpha
        errs.append(abs(alpha - base))
    orders = [math.log(errs[i] / errs[i + 1], 10.0) for i in range(2)]
    assert all(o >= 0.97 for o in orders)
