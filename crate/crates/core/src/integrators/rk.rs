use nalgebra::DVector;

use crate::error::{Error, Result};

/// Values beyond this magnitude abort an integration.
pub const BLOW_UP: f64 = 1e12;

fn finite(t: f64, d: DVector<f64>) -> Result<DVector<f64>> {
    if d.iter().all(|c| c.is_finite()) {
        Ok(d)
    } else {
        Err(Error::NonFinite { t })
    }
}

/// One classical Runge-Kutta step of `y' = f(t, y)`.
pub fn rk4_step<F>(rhs: F, t: f64, y: &DVector<f64>, dt: f64) -> Result<DVector<f64>>
where
    F: Fn(f64, &DVector<f64>) -> Result<DVector<f64>>,
{
    let h = 0.5 * dt;
    let k1 = finite(t, rhs(t, y)?)?;
    let k2 = finite(t + h, rhs(t + h, &(y + &k1 * h))?)?;
    let k3 = finite(t + h, rhs(t + h, &(y + &k2 * h))?)?;
    let k4 = finite(t + dt, rhs(t + dt, &(y + &k3 * dt))?)?;
    Ok(y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0))
}

/// One explicit midpoint step of `y' = f(t, y)`.
pub fn midpoint_step<F>(rhs: F, t: f64, y: &DVector<f64>, dt: f64) -> Result<DVector<f64>>
where
    F: Fn(f64, &DVector<f64>) -> Result<DVector<f64>>,
{
    let k1 = finite(t, rhs(t, y)?)?;
    let k2 = finite(t + 0.5 * dt, rhs(t + 0.5 * dt, &(y + &k1 * (0.5 * dt)))?)?;
    Ok(y + k2 * dt)
}

pub(crate) fn check_blow_up(t: f64, value: f64) -> Result<()> {
    if !value.is_finite() || value > BLOW_UP {
        return Err(Error::BlowUp { t, value });
    }
    Ok(())
}
