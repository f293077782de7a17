"""Matching residuals, exact root solves, closed forms, and the
convergence studies tying them together.

Reference roots are frozen from deterministic solver output; two of
them are additionally cross-checked in-test against a dps=40 mpmath
root find of the independently assembled matching equation, and the
nu = 1/2 residuals against their hand-collapsed closed forms.
"""

import math
import warnings

import mpmath as mp
import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from invsq import spectrum
from invsq.errors import ConditioningWarning, RootMultiplicityError
from invsq.model import Cutoff, Extension, Scheme, coupling_from_nu
from invsq.specfun import bessel_k_logderiv

EULER_GAMMA = 0.5772156649015329


def make(nu, c, ratio, r0=1.0):
    ext = Extension(c=c, r0=r0)
    return coupling_from_nu(nu), ext, Cutoff.from_radius(ratio * r0, ext)


# ----------------------------------------------------------- BoundState


def test_bound_state_energy_is_minus_k_squared():
    state = spectrum.BoundState.from_k(1.7, spectrum.Method.EXACT_MATCHING,
                                       Scheme.DELTA_SHELL, Cutoff(R=0.1, ratio=0.1))
    assert state.E == -(1.7 * 1.7)


def test_bound_state_validation():
    with pytest.raises(ValueError, match="positive"):
        spectrum.BoundState.from_k(-1.0, spectrum.Method.CLOSED_FORM)
    with pytest.raises(ValueError, match="exactly"):
        spectrum.BoundState(k=1.0, E=-1.0000001, method=spectrum.Method.CLOSED_FORM)
    with pytest.raises(ValueError, match="scheme- and cutoff-free"):
        spectrum.BoundState.from_k(1.0, spectrum.Method.CLOSED_FORM, scheme=Scheme.DELTA_SHELL)


# ------------------------------------------------------------ residuals


@pytest.mark.parametrize("lam,R,k", [(2.0, 0.5, 1.0), (3.0911412473831215, 0.25, 1.1), (9.0, 1.0, 0.3)])
def test_square_well_residual_nu_half_identity(lam, R, k):
    # z K'/K = -1/2 - z collapses the matching residual to KR cot KR + kR
    coupling, ext, cut = make(0.5, 1.0, R)
    k0 = math.sqrt(lam) / R
    KR = math.sqrt(k0 * k0 - k * k) * R
    hand = KR * math.cos(KR) / math.sin(KR) + k * R
    assert spectrum.residual_square_well(coupling, lam, cut, k).value == pytest.approx(hand, rel=1e-12)


@pytest.mark.parametrize("lam,R,k", [(1.5, 0.3, 2.0), (-0.5, 0.1, 1.0), (10.0 / 9.0, 0.1, 0.97)])
def test_delta_shell_residual_nu_half_identity(lam, R, k):
    coupling, ext, cut = make(0.5, 1.0, R)
    z = k * R
    hand = lam - z - z / math.tanh(z)
    assert spectrum.residual_delta_shell(coupling, lam, cut, k).value == pytest.approx(hand, rel=1e-12)


def test_square_well_residual_at_closed_form_root():
    # at the fixed-point strength (pi/2)^2 and the closed-form root
    # k = 1 the residual is kR + KR cot KR = kR (1 + kR/2 + ...): it
    # shrinks linearly with R but sits just ABOVE kR, so at R = 1e-3 it
    # lands at 1.00050e-3, not below 1e-3
    coupling, ext, cut = make(0.5, 1.0, 1e-3)
    val = spectrum.residual_square_well(coupling, (0.5 * math.pi) ** 2, cut, 1.0).value
    assert val == pytest.approx(0.0010004999999494446, rel=1e-9)
    coupling, ext, cut = make(0.5, 1.0, 1e-5)
    val5 = spectrum.residual_square_well(coupling, (0.5 * math.pi) ** 2, cut, 1.0).value
    assert val5 == pytest.approx(1.0000049999792093e-05, rel=1e-7)
    assert val5 < val


@pytest.mark.xfail(reason="the residual at the closed-form root is kR + O((kR)^2) > kR; "
                   "measured 1.00050e-3 at R/r0 = 1e-3", strict=True)
def test_square_well_residual_below_kR_at_closed_form_root():
    coupling, ext, cut = make(0.5, 1.0, 1e-3)
    assert spectrum.residual_square_well(coupling, (0.5 * math.pi) ** 2, cut, 1.0).value < 1e-3


def test_square_well_residual_interior_limit():
    # k -> k0-: KR -> 0 and KR cot KR -> 1
    coupling, ext, cut = make(0.25, 1.0, 1.0)
    val = spectrum.residual_square_well(coupling, 4.0, cut, 2.0 * (1.0 - 1e-12)).value
    assert val == pytest.approx(0.5 - bessel_k_logderiv(0.25, 2.0), abs=1e-10)


def test_square_well_residual_domain():
    coupling, ext, cut = make(0.5, 1.0, 0.5)
    with pytest.raises(ValueError, match="no longer oscillatory"):
        spectrum.residual_square_well(coupling, 1.0, cut, 10.0)
    with pytest.raises(ValueError, match="must be positive"):
        spectrum.residual_square_well(coupling, 1.0, cut, -1.0)
    with pytest.raises(ValueError, match="lam > 0"):
        spectrum.residual_square_well(coupling, -2.0, cut, 0.5)


def test_delta_shell_residual_zero_momentum_limit():
    # kR coth kR -> 1 and the log-derivative -> -nu, so the residual
    # tends to lam - 1/2 - nu; the approach rate is z^(2 nu), about
    # 6e-8 at nu = 0.3 and z = 1e-12
    coupling, ext, cut = make(0.3, 1.0, 1e-2)
    val = spectrum.residual_delta_shell(coupling, 0.77, cut, 1e-10).value
    assert val == pytest.approx(0.77 - 0.8, abs=1e-7)


def test_delta_shell_residual_rejects_nonpositive_k():
    coupling, ext, cut = make(0.5, 1.0, 0.1)
    with pytest.raises(ValueError, match="must be positive"):
        spectrum.residual_delta_shell(coupling, 1.0, cut, 0.0)


# ---------------------------------------------------------- closed form


def test_closed_form_exact_values():
    state = spectrum.closed_form_k(coupling_from_nu(0.5), Extension(c=1.0))
    assert state.k == 1.0
    assert state.E == -1.0
    assert state.method is spectrum.Method.CLOSED_FORM
    assert state.scheme is None and state.cutoff is None
    # Gamma ratio 1/2 and exponent 1: k = (2/2) (1/2 / 4)^1... times c
    assert spectrum.closed_form_k(coupling_from_nu(0.5), Extension(c=4.0, r0=2.0)).k == pytest.approx(0.125, rel=1e-15)
    assert spectrum.closed_form_k(coupling_from_nu(0.0), Extension(c=1.0)).k == pytest.approx(math.e, rel=1e-15)


@pytest.mark.parametrize("nu,c,expected", [
    (0.3, 2.0, 0.3405585504740596),
    (0.75, 1.0, 0.8010740280983524),
])
def test_closed_form_frozen(nu, c, expected):
    assert spectrum.closed_form_k(coupling_from_nu(nu), Extension(c=c)).k == pytest.approx(expected, rel=1e-13)


def test_closed_form_no_binding_for_nonpositive_c():
    assert spectrum.closed_form_k(coupling_from_nu(0.5), Extension(c=0.0)) is None
    assert spectrum.closed_form_k(coupling_from_nu(0.5), Extension(c=-2.0)) is None


def test_closed_form_nu_one_is_rejected():
    with pytest.raises(ValueError, match="gamma_ratio"):
        spectrum.closed_form_k(coupling_from_nu(1.0), Extension(c=1.0))


def test_closed_form_nu_to_zero_does_not_meet_nu_zero_branch():
    # the nu -> 0+ limit at c = 1 is 2 e^-gamma = 1.1229..., not the
    # nu = 0 branch's e^(1/c) = e; continuity in nu at 0 is absent
    k = spectrum.closed_form_k(coupling_from_nu(1e-3), Extension(c=1.0)).k
    assert k == pytest.approx(2.0 * math.exp(-EULER_GAMMA), rel=1e-6)
    assert abs(k - math.e) / math.e > 0.5


# ------------------------------------------------------------ lowenergy


def test_lowenergy_nu_zero_values():
    coupling = coupling_from_nu(0.0)
    ext = Extension(c=1.0)
    cut = Cutoff.from_radius(math.exp(-10.0), ext)
    sw = spectrum.lowenergy_lambda(Scheme.SQUARE_WELL, coupling, 1.0, cut)
    ds = spectrum.lowenergy_lambda(Scheme.DELTA_SHELL, coupling, 1.0, cut)
    assert sw == pytest.approx(0.4, rel=1e-12)
    assert ds == pytest.approx(0.6, rel=1e-12)
    assert sw + ds == pytest.approx(1.0, abs=1e-15)


def test_lowenergy_delta_shell_nu_half():
    coupling, ext, _ = make(0.5, 1.0, 1.0)
    cut = Cutoff.from_radius(1e-3, ext)
    # x = (kR/2) Gamma(1/2+1)/Gamma... = kR, so lam = 1/(1 - kR)
    assert spectrum.lowenergy_lambda(Scheme.DELTA_SHELL, coupling, 1.0, cut) == pytest.approx(
        1.0 / (1.0 - 1e-3), rel=1e-12)


def test_lowenergy_delta_shell_fixed_point_limit():
    coupling, ext, _ = make(0.3, 1.0, 1.0)
    cut = Cutoff.from_radius(1e-12, ext)
    assert spectrum.lowenergy_lambda(Scheme.DELTA_SHELL, coupling, 1.0, cut) == pytest.approx(0.8, abs=1e-6)


def test_lowenergy_rejects_nonpositive_k():
    coupling, ext, cut = make(0.5, 1.0, 0.1)
    with pytest.raises(ValueError, match="must be positive"):
        spectrum.lowenergy_lambda(Scheme.DELTA_SHELL, coupling, -2.0, cut)


@given(
    nu=st.floats(min_value=1e-3, max_value=0.95),
    log_z=st.floats(min_value=math.log(1e-10), max_value=math.log(0.5)),
)
def test_lowenergy_forms_sum_to_one(nu, log_z):
    # the two asymptotic forms share numerator algebra: SW + DS = 1
    coupling = coupling_from_nu(nu)
    ext = Extension(c=1.0)
    cut = Cutoff.from_radius(math.exp(log_z), ext)
    sw = spectrum.lowenergy_lambda(Scheme.SQUARE_WELL, coupling, 1.0, cut)
    ds = spectrum.lowenergy_lambda(Scheme.DELTA_SHELL, coupling, 1.0, cut)
    assume(abs(sw) < 50.0)
    assert sw + ds == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------- exact solve

# (scheme, nu, c, ratio) -> k, deterministic solver output
EXACT_ROOTS = [
    (Scheme.DELTA_SHELL, 0.5, 1.0, 1e-4, 1.0000666722226814),
    (Scheme.SQUARE_WELL, 0.5, 1.0, 1e-4, 1.0000500029725663),
    (Scheme.DELTA_SHELL, 0.5, 1.0, 1e-5, 1.0000066667131398),
    (Scheme.SQUARE_WELL, 0.0, 1.0, 1e-6, 3.052410223749469),
    (Scheme.DELTA_SHELL, 0.75, 1.0, 1e-3, 0.813442644223037),
    (Scheme.SQUARE_WELL, 0.75, 1.0, 1e-3, 0.8117732864649854),
    (Scheme.SQUARE_WELL, 0.3, 2.0, 1e-3, 0.340562036634928),
    (Scheme.SQUARE_WELL, 0.5, 1.0, 0.25, 1.146990200565486),
    (Scheme.DELTA_SHELL, 0.4, 0.7, 0.2, 2.032783206192656),
]


@pytest.mark.parametrize("scheme,nu,c,ratio,expected", EXACT_ROOTS)
def test_exact_roots_frozen(scheme, nu, c, ratio, expected):
    coupling, ext, cut = make(nu, c, ratio)
    state = spectrum.solve_bound_state_exact(scheme, coupling, ext, cut)
    assert state.k == pytest.approx(expected, rel=1e-12)
    assert state.E == -(state.k * state.k)
    assert state.method is spectrum.Method.EXACT_MATCHING
    assert state.scheme is scheme
    assert state.cutoff is cut


def test_exact_root_delta_shell_against_mpmath():
    # independent assembly: lam - z - z coth z = 0 with the closed-form
    # delta-shell strength at nu = 1/2
    state = spectrum.solve_bound_state_exact(Scheme.DELTA_SHELL, *make(0.5, 1.0, 1e-4))
    with mp.workdps(40):
        R = mp.mpf("1e-4")
        lam = (0.0 - 1.0) / (R - 1.0)
        z = mp.findroot(lambda z: lam - z - z * mp.coth(z), mp.mpf("1e-4"))
        k_ref = float(z / R)
    assert state.k == pytest.approx(k_ref, rel=1e-11)


def test_exact_root_square_well_against_mpmath():
    state = spectrum.solve_bound_state_exact(Scheme.SQUARE_WELL, *make(0.5, 1.0, 0.25))
    with mp.workdps(40):
        R = mp.mpf("0.25")
        rhs = R / (R - 1.0)
        s = mp.findroot(lambda s: s * mp.cot(s) - rhs, mp.mpf("1.75"))
        lam = s * s
        def f(k):
            KR = mp.sqrt(lam - (k * R) ** 2)
            return KR * mp.cot(KR) + k * R
        k_ref = float(mp.findroot(f, mp.mpf("1.15")))
    assert state.k == pytest.approx(k_ref, rel=1e-11)


def test_exact_root_near_closed_form_small_cutoff():
    # delta shell at R = 1e-4: root within 2e-4 of the closed-form k = 1
    state = spectrum.solve_bound_state_exact(Scheme.DELTA_SHELL, *make(0.5, 1.0, 1e-4))
    assert abs(state.k - 1.0) < 2e-4


def test_exact_nu_zero_converges_to_shifted_target():
    # the exact nu = 0 roots approach 2 e^-gamma e^(1/c)/r0, offset by
    # 12.3% from the leading-log closed form e^(1/c)/r0
    state = spectrum.solve_bound_state_exact(Scheme.SQUARE_WELL, *make(0.0, 1.0, 1e-6))
    target = 2.0 * math.exp(-EULER_GAMMA) * math.e
    assert state.k == pytest.approx(target, rel=1e-4)


@pytest.mark.parametrize("scheme", [Scheme.SQUARE_WELL, Scheme.DELTA_SHELL])
def test_no_bound_state_for_negative_c(scheme):
    assert spectrum.solve_bound_state_exact(scheme, *make(0.5, -1.0, 1e-4)) is None


@settings(max_examples=20)
@given(
    nu=st.floats(min_value=0.02, max_value=1.0),
    c=st.floats(min_value=-10.0, max_value=-0.1),
    log_ratio=st.floats(min_value=math.log(1e-6), max_value=math.log(1e-2)),
)
def test_negative_c_binds_nothing(nu, c, log_ratio):
    # holds for nu away from 0; the nu = 0 branch binds for ANY c != 0
    # (see test_negative_c_nu_zero_binds_anyway)
    coupling, ext, cut = make(nu, c, math.exp(log_ratio))
    for scheme in (Scheme.SQUARE_WELL, Scheme.DELTA_SHELL):
        assert spectrum.solve_bound_state_exact(scheme, coupling, ext, cut) is None


@pytest.mark.parametrize("c,k_sw,k_ds", [
    (-1.0, 0.41311650636680075, 0.4131284116989421),
    (-0.1, 5.0980442236985425e-05, 5.098044223674693e-05),
    (-10.0, 1.016264511757912, 1.0163991524222515),
])
def test_negative_c_nu_zero_binds_anyway(c, k_sw, k_ds):
    # at nu = 0 the momentum scale exp(1/c)/r0 stays positive for
    # negative c, so choosing c < 0 does NOT eliminate the state: both
    # schemes find it at 2 e^-gamma e^(1/c)/r0
    coupling, ext, cut = make(0.0, c, math.exp(-5.0))
    sw = spectrum.solve_bound_state_exact(Scheme.SQUARE_WELL, coupling, ext, cut)
    ds = spectrum.solve_bound_state_exact(Scheme.DELTA_SHELL, coupling, ext, cut)
    assert sw.k == pytest.approx(k_sw, rel=1e-12)
    assert ds.k == pytest.approx(k_ds, rel=1e-12)
    target = 2.0 * math.exp(-EULER_GAMMA) * math.exp(1.0 / c)
    assert sw.k == pytest.approx(target, rel=1e-3)
    assert ds.k == pytest.approx(target, rel=1e-3)


@given(
    nu=st.floats(min_value=0.05, max_value=0.95),
    c=st.floats(min_value=0.1, max_value=5.0),
    frac=st.floats(min_value=0.02, max_value=0.8),
)
def test_exactly_one_root_in_principal_regime(nu, c, frac):
    # parameterize by x = (R/r0)^(2 nu) = frac * c so every draw stays
    # inside the pole (principal regime); past the pole the count can
    # legitimately drop to zero (see the corner tests)
    R = (frac * c) ** (1.0 / (2.0 * nu))
    assume(R <= 2.5)
    coupling, ext, cut = make(nu, c, R)
    closed = spectrum.closed_form_k(coupling, ext)
    assume(closed.k >= 1e-7)
    for scheme in (Scheme.SQUARE_WELL, Scheme.DELTA_SHELL):
        state = spectrum.solve_bound_state_exact(scheme, coupling, ext, cut)
        assert state is not None


def test_multiple_roots_surface_loudly(monkeypatch):
    # synthetic residual with two roots: the single-state postcondition
    # must raise, carrying both
    monkeypatch.setattr(
        spectrum, "residual_delta_shell",
        lambda coupling, lam, cutoff, k: spectrum.SpectralResidual(k=k, value=(k - 1.0) * (k - 3.0)),
    )
    with pytest.raises(RootMultiplicityError, match="single-bound-state") as exc:
        spectrum.solve_bound_state_exact(Scheme.DELTA_SHELL, *make(0.5, 1.0, 0.1))
    assert len(exc.value.roots) == 2
    assert exc.value.roots[0] == pytest.approx(1.0, rel=1e-9)
    assert exc.value.roots[1] == pytest.approx(3.0, rel=1e-9)


def test_tiny_nu_carries_conditioning_warning():
    with pytest.warns(ConditioningWarning, match="close to 0"):
        spectrum.solve_bound_state_exact(Scheme.DELTA_SHELL, *make(1e-5, 1.0, 1e-3))


def test_scan_window_overrides():
    coupling, ext, cut = make(0.5, 1.0, 1e-4)
    inside = spectrum.solve_bound_state_exact(Scheme.DELTA_SHELL, coupling, ext, cut,
                                              k_min=0.5, k_max=2.0)
    assert inside is not None
    assert spectrum.solve_bound_state_exact(Scheme.DELTA_SHELL, coupling, ext, cut,
                                            k_min=1e-8, k_max=0.5) is None
    # empty window (lo >= hi after the square-well cap)
    assert spectrum.solve_bound_state_exact(Scheme.SQUARE_WELL, coupling, ext, cut,
                                            k_min=1e9) is None


# -------------------------------------------------------------- corners

# past the flow pole (x > c) the principal-regime accounting changes;
# these pin what actually happens there rather than asserting the
# single-state claim blindly


def test_corner_past_pole_shallow():
    # nu=0.05, c=0.1, R=1e-2: x = 0.63 >> c; neither scheme binds
    coupling, ext, cut = make(0.05, 0.1, 1e-2)
    for scheme in (Scheme.SQUARE_WELL, Scheme.DELTA_SHELL):
        assert spectrum.solve_bound_state_exact(scheme, coupling, ext, cut) is None


def test_corner_just_past_pole_deep():
    # same extension, R barely outside the pole at c^(1/2 nu) = 1e-10:
    # the square well (branch 1) holds one deep state with kR = O(1),
    # the delta shell (lam < 0) none - scheme independence does not
    # extend to this corner
    R = 1e-10 * 1.1**10
    coupling, ext, cut = make(0.05, 0.1, R)
    sw = spectrum.solve_bound_state_exact(Scheme.SQUARE_WELL, coupling, ext, cut)
    assert sw is not None
    assert sw.k == pytest.approx(13765048210.570377, rel=1e-12)
    assert sw.k * R == pytest.approx(3.5706, rel=1e-3)
    assert spectrum.solve_bound_state_exact(Scheme.DELTA_SHELL, coupling, ext, cut) is None


# ---------------------------------------------------------- convergence


def test_convergence_study_delta_shell_linear_rate():
    coupling, ext, _ = make(0.5, 1.0, 1e-2)
    cuts = [Cutoff.from_radius(r, ext) for r in (1e-2, 1e-3, 1e-4)]
    rows = spectrum.convergence_study(Scheme.DELTA_SHELL, coupling, ext, cuts)
    devs = [row.deviation for row in rows]
    assert devs == pytest.approx(
        [0.006722730738002225, 0.0006672227265904773, 6.66722226814187e-05], rel=1e-9)
    assert spectrum.deviations_monotone(rows)
    slope = np.polyfit(np.log([1e-2, 1e-3, 1e-4]), np.log(devs), 1)[0]
    assert 0.95 < slope < 1.05


def test_convergence_study_nu_zero_saturates_at_offset():
    # deviations against the leading-log closed form decrease but level
    # off at 2 e^-gamma - 1 = 12.29%, the permanent normalization gap
    coupling, ext, _ = make(0.0, 1.0, 1e-3)
    cuts = [Cutoff.from_radius(r, ext) for r in (1e-3, 1e-6, 1e-9)]
    rows = spectrum.convergence_study(Scheme.SQUARE_WELL, coupling, ext, cuts)
    devs = [row.deviation for row in rows]
    assert devs == pytest.approx(
        [0.12297546368623316, 0.12291896733895186, 0.1229189671337469], rel=1e-9)
    assert spectrum.deviations_monotone(rows)
    assert devs[-1] == pytest.approx(2.0 * math.exp(-EULER_GAMMA) - 1.0, rel=1e-9)


def test_convergence_study_validation():
    coupling = coupling_from_nu(0.5)
    ext = Extension(c=1.0)
    cuts = [Cutoff.from_radius(r, ext) for r in (1e-2, 1e-3)]
    with pytest.raises(ValueError, match="c > 0"):
        spectrum.convergence_study(Scheme.DELTA_SHELL, coupling, Extension(c=-1.0), cuts)
    with pytest.raises(ValueError, match="nonempty"):
        spectrum.convergence_study(Scheme.DELTA_SHELL, coupling, ext, [])
    with pytest.raises(ValueError, match="strictly decreasing"):
        spectrum.convergence_study(Scheme.DELTA_SHELL, coupling, ext, list(reversed(cuts)))
    with pytest.raises(ValueError, match="R/r0 < 0.1"):
        spectrum.convergence_study(Scheme.DELTA_SHELL, coupling, ext,
                                   [Cutoff.from_radius(0.1, ext)])


def test_convergence_study_reports_row_failures_in_band(monkeypatch):
    real = spectrum.solve_bound_state_exact

    def failing(scheme, coupling, ext, cutoff, **kw):
        if cutoff.R == 1e-3:
            raise RuntimeError("synthetic failure")
        return real(scheme, coupling, ext, cutoff, **kw)

    monkeypatch.setattr(spectrum, "solve_bound_state_exact", failing)
    coupling, ext, _ = make(0.5, 1.0, 1e-2)
    cuts = [Cutoff.from_radius(r, ext) for r in (1e-2, 1e-3, 1e-4)]
    rows = spectrum.convergence_study(Scheme.DELTA_SHELL, coupling, ext, cuts)
    assert rows[1].error == "synthetic failure"
    assert rows[1].k_exact is None and rows[1].deviation is None
    assert rows[0].deviation is not None and rows[2].deviation is not None


def test_deviations_monotone_slack():
    ext = Extension(c=1.0)
    def row(R, dev):
        return spectrum.ConvergenceRow(Cutoff.from_radius(R, ext), 1.0, 1.0 + dev, dev)
    assert spectrum.deviations_monotone([row(1e-2, 1.0), row(1e-3, 0.5), row(1e-4, 0.54)])
    assert not spectrum.deviations_monotone([row(1e-2, 1.0), row(1e-3, 0.5), row(1e-4, 0.56)])
    # error rows (deviation None) are skipped, not tripped over
    rows = [row(1e-2, 1.0), spectrum.ConvergenceRow(Cutoff.from_radius(1e-3, ext), 1.0, None, None, "x"),
            row(1e-4, 0.5)]
    assert spectrum.deviations_monotone(rows)


def test_scheme_independence_decreases_with_cutoff():
    # same cutoffs through both schemes: the k's approach each other
    coupling, ext, _ = make(0.5, 1.0, 1e-2)
    cuts = [Cutoff.from_radius(r, ext) for r in (1e-2, 1e-3, 1e-4)]
    sw = spectrum.convergence_study(Scheme.SQUARE_WELL, coupling, ext, cuts)
    ds = spectrum.convergence_study(Scheme.DELTA_SHELL, coupling, ext, cuts)
    devs = [abs(a.k_exact - b.k_exact) / a.k_closed for a, b in zip(sw, ds)]
    assert all(later < earlier for earlier, later in zip(devs, devs[1:]))
    assert devs == pytest.approx([1.6928e-3, 1.6693e-4, 1.6669e-5], rel=1e-3)


SCHEME_INDEP_GRID = [
    (0.25, 1.0, 1e-3),
    (0.5, 1.0, 1e-3),
    (0.5, 3.0, 1e-3),
    (0.6, 1.0, 1e-3),
    (0.75, 1.0, 1e-3),
    (0.6, 1.0, 1e-6),
    (0.75, 1.0, 1e-6),
]


@pytest.mark.parametrize("nu,c,ratio", SCHEME_INDEP_GRID)
def test_scheme_independence_rate_bound(nu, c, ratio):
    # the harness bound 5 (R/r0)^min(2 nu, 1) undershoots the measured
    # rate (R/r0)^min(2 nu, 2 - 2 nu) for nu > 1/2 at small R; flag the
    # overshoot rather than fail, and assert the measured-rate bound
    coupling, ext, cut = make(nu, c, ratio)
    ksw = spectrum.solve_bound_state_exact(Scheme.SQUARE_WELL, coupling, ext, cut).k
    kds = spectrum.solve_bound_state_exact(Scheme.DELTA_SHELL, coupling, ext, cut).k
    dev = abs(ksw - kds) / spectrum.closed_form_k(coupling, ext).k
    harness_bound = 5.0 * ratio ** min(2.0 * nu, 1.0)
    if dev > harness_bound:
        warnings.warn(
            f"scheme-independence harness bound exceeded at nu={nu}, c={c}, "
            f"R/r0={ratio}: dev={dev:.3e} > {harness_bound:.3e}",
            UserWarning,
            stacklevel=1,
        )
    assert dev <= 5.0 * ratio ** min(2.0 * nu, 2.0 - 2.0 * nu)


def test_scheme_independence_harness_bound_demonstrably_fails():
    # the documented exceedance case: nu=0.75, R/r0=1e-6 measures
    # 6.29e-5 against the harness bound 5e-6
    coupling, ext, cut = make(0.75, 1.0, 1e-6)
    ksw = spectrum.solve_bound_state_exact(Scheme.SQUARE_WELL, coupling, ext, cut).k
    kds = spectrum.solve_bound_state_exact(Scheme.DELTA_SHELL, coupling, ext, cut).k
    dev = abs(ksw - kds) / spectrum.closed_form_k(coupling, ext).k
    assert dev == pytest.approx(6.289939e-05, rel=1e-4)
    assert dev > 5.0 * 1e-6
