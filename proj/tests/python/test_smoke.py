import math

import pytest

import sosmap


def fig1():
    return sosmap.make_params(2, 3.0, sosmap.Field.constant(1.0), 0.5, 1.48589)


def test_step_round_trip():
    p = fig1()
    s = sosmap.step_forward(p, sosmap.State(1.48589, 1.0), 1)
    c = 0.5 + 1.48589 - 3.0
    assert s.x == pytest.approx(c * 1.48589**2 + 3 * 1.48589 - 1.0, rel=1e-14)
    back = sosmap.step_backward(p, s, 1)
    assert tuple(back) == pytest.approx((1.48589, 1.0), rel=1e-12)


def test_iterate_fig1():
    t = sosmap.iterate(fig1(), 3000)
    assert len(t) == 3001
    assert t.first_nonpositive is None
    assert t.escaped_at is None
    assert t.max_abs < 1e3


def test_invalid_params_raise():
    with pytest.raises(sosmap.SosmapError, match="InitialConditionViolated"):
        sosmap.make_params(2, 3.0, sosmap.Field.constant(1.0), 1.5, 1.5)
    with pytest.raises(ValueError):
        sosmap.make_params(1, 3.0, sosmap.Field.constant(1.0), 0.5, 0.5)


def test_spectral():
    p = sosmap.make_params(3, 4.0, sosmap.Field.constant(1.0), 1.2, 0.8)
    _, interior = sosmap.fixed_points(p)
    r = sosmap.classify(p, interior)
    assert r.regime == "DoubleMinusOne"
    assert r.resonances == ["OneTwo"]
    for lam in r.eigenvalues:
        assert abs(lam + 1) < 1e-10

    q = fig1()
    r1 = sosmap.classify(q, sosmap.fixed_points(q)[1])
    assert r1.rotation_angle == pytest.approx(math.pi / 3, rel=1e-12)
    assert sosmap.spectral_report(q)["regime"] == "ComplexUnitModulus"


def test_invariant_set_scalars():
    s = sosmap.invariant_set(fig1())
    assert s.a == pytest.approx(2 / 1.01411, rel=1e-14)
    assert s.x_hat0 == pytest.approx(3 / 1.01411, rel=1e-14)
    assert s.condition_ok


def test_boundary_laws():
    theta = 0.5
    f = sosmap.Field.geometric_normalized(theta).normalized(sosmap.Normalization.Probability)
    left_law = sosmap.BoundaryLaw.left_infinite(theta, 2, f)
    both_law = sosmap.BoundaryLaw.both_infinite(theta, 2, f, 1.0)
    assert left_law.z(3) == pytest.approx(0.5**9, rel=1e-13)
    assert both_law.z(1) == pytest.approx(0.78125, rel=1e-13)
    assert sosmap.rho_residual(f, theta, 2, 1.0, 200) == 0.0
    assert sosmap.transfer_q(2, theta, sosmap.Field.constant(1.0), 0, 3) == pytest.approx(0.125)
    report = sosmap.boundary_law_report("left", trunc_n=100)
    assert report["valid"] is True
    assert report["normalisability"]["status"] == "Diverges"


def test_cylinder():
    theta = 0.5
    law = sosmap.BoundaryLaw.left_infinite(
        theta, 2, sosmap.Field.geometric_normalized(theta).normalized(sosmap.Normalization.Probability)
    )
    assert sosmap.subtree_size(2, 2) == 10
    assert math.isfinite(sosmap.cylinder_log_measure(law, 1, [0, 1, 1, 1]))


def test_presets_and_sweep():
    assert len(sosmap.preset_names()) == 13
    rep = sosmap.run_preset("fig12")
    assert rep["ok"] is True
    assert rep["params"]["h"] == 0.5
    a = sosmap.sweep_csv(2, 3.0, sosmap.Field.constant(1.05), (0.1, 2.5, 12), (0.1, 2.5, 12), 300, 4)
    b = sosmap.sweep_csv(2, 3.0, sosmap.Field.constant(1.05), (0.1, 2.5, 12), (0.1, 2.5, 12), 300, 1)
    assert a == b
    assert a.splitlines()[0] == "y0,x1,admissible,horizon,max_abs"
    assert len(a.splitlines()) == 145
