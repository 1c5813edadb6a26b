use nalgebra::Vector3;

use epmech::integrators::{simulate, Scheme, StepperConfig};
use epmech::lie::{AlgebraVector, GroupElement};
use epmech::oracle::richardson_reference;
use epmech::systems::{Config, EPState, FreeRigidBody, HeavyTop, InertiaOperator, MechanicalSystem};

fn final_error(sys: &dyn MechanicalSystem, init: &EPState, cfg: &StepperConfig) -> f64 {
    let coarse = simulate(sys, init, cfg).unwrap();
    let fine = richardson_reference(sys, init, cfg).unwrap();
    let (a, b) = (coarse.last().unwrap(), fine.last().unwrap());
    assert!((a.t - b.t).abs() < 1e-12);
    (a.mu.coeffs() - b.mu.coeffs()).amax().max((a.config.ambient() - b.config.ambient()).amax())
}

fn rigid_body() -> (FreeRigidBody, EPState) {
    let sys = FreeRigidBody::new(InertiaOperator::diagonal([1.0, 2.0, 3.0]).unwrap());
    let g0 = GroupElement::from_axis_angle(&Vector3::new(0.2, -0.5, 0.9));
    let init = EPState::from_velocity(&sys, 0.0, Config::Rotation(g0), AlgebraVector::from_slice(&[1.0, 0.1, 0.1])).unwrap();
    (sys, init)
}

#[test]
fn rk4_error_shrinks_sixteenfold() {
    let (sys, init) = rigid_body();
    let e1 = final_error(&sys, &init, &StepperConfig::new(0.04, 4.0).unwrap());
    let e2 = final_error(&sys, &init, &StepperConfig::new(0.02, 4.0).unwrap());
    let ratio = e1 / e2;
    assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}, errors {e1:e} {e2:e}");
}

#[test]
fn midpoint_error_shrinks_fourfold() {
    let (sys, init) = rigid_body();
    let cfg = |dt| StepperConfig::new(dt, 4.0).unwrap().with_scheme(Scheme::Midpoint);
    let ratio = final_error(&sys, &init, &cfg(0.02)) / final_error(&sys, &init, &cfg(0.01));
    assert!((3.0..=5.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn heavy_top_rk4_order() {
    let top = HeavyTop::new(InertiaOperator::diagonal([1.0, 1.5, 2.0]).unwrap(), 1.0, 9.81, Vector3::new(0.05, 0.0, 0.3)).unwrap();
    let g0 = GroupElement::from_axis_angle(&Vector3::new(0.4, 0.1, 0.0));
    let init = EPState::from_velocity(&top, 0.0, Config::Rotation(g0), AlgebraVector::from_slice(&[0.3, -0.2, 4.0])).unwrap();
    let e1 = final_error(&top, &init, &StepperConfig::new(0.01, 1.0).unwrap());
    let e2 = final_error(&top, &init, &StepperConfig::new(0.005, 1.0).unwrap());
    assert!((12.0..=20.0).contains(&(e1 / e2)), "ratio {}", e1 / e2);
}

#[test]
fn reference_run_conserves_rigid_body_energy() {
    let (sys, init) = rigid_body();
    let cfg = StepperConfig::new(0.01, 2.0).unwrap();
    let fine = richardson_reference(&sys, &init, &cfg).unwrap();
    let h = fine.invariant("H").unwrap();
    let drift = h.iter().map(|v| (v - h[0]).abs()).fold(0.0, f64::max) / h[0];
    assert!(drift < 1e-13, "drift {drift:e}");
}
