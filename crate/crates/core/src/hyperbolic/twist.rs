//! Fenchel-Nielsen twist deformations along registered simple curves.

use super::geometry::{axis, Isometry};
use super::rep::Representation;
use super::HypError;
use crate::words::OrientedClass;

/// Orientation of the earthquake flow. A left twist is normalized so that
/// the crossing angle at the canonical (a,b) intersection of the built-in
/// holed-torus models strictly increases with t.
const LEFT_TWIST_SIGN: f64 = -1.0;

/// One-parameter family of representations obtained by twisting along a
/// registered simple closed curve.
#[derive(Debug, Clone)]
pub struct TwistFamily {
    base: Representation,
    curve: OrientedClass,
    affected: Vec<usize>,
    frame: Isometry,
}

impl TwistFamily {
    pub fn new(rep: &Representation, curve: &OrientedClass) -> Result<Self, HypError> {
        let split = rep
            .twist_splittings
            .iter()
            .find(|s| s.curve == *curve)
            .ok_or_else(|| HypError::NoRegisteredSplitting(curve.to_string()))?;
        let image = rep.evaluate_class(curve);
        let frame = diagonalizing_frame(&image)?;
        Ok(TwistFamily {
            base: rep.clone(),
            curve: curve.clone(),
            affected: split.affected.clone(),
            frame,
        })
    }

    pub fn curve(&self) -> &OrientedClass {
        &self.curve
    }

    pub fn base(&self) -> &Representation {
        &self.base
    }

    /// Indices of the generators the twist post-composes.
    pub fn affected(&self) -> &[usize] {
        &self.affected
    }

    /// Representation at twist parameter t; t = 0 returns the base.
    pub fn at(&self, t: f64) -> Representation {
        let s = LEFT_TWIST_SIGN * t;
        let diag = Isometry::from_matrix([[(s / 2.0).exp(), 0.0], [0.0, (-s / 2.0).exp()]])
            .expect("twist translation");
        let tau = self.frame.mul(&diag).mul(&self.frame.inverse());
        let mut images = self.base.generator_images().to_vec();
        for &i in &self.affected {
            images[i] = tau.mul(&images[i]);
        }
        self.base.with_images(images)
    }
}

/// Deform `rep` by a time-t left twist along `curve`.
pub fn fn_twist(
    rep: &Representation,
    curve: &OrientedClass,
    t: f64,
) -> Result<Representation, HypError> {
    Ok(TwistFamily::new(rep, curve)?.at(t))
}

/// Frame whose first column is the attracting eigendirection; conjugating
/// diag(e^{t/2}, e^{-t/2}) by it translates along the axis of `m` toward
/// the attracting fixed point.
fn diagonalizing_frame(m: &Isometry) -> Result<Isometry, HypError> {
    // require a hyperbolic element
    let _ = axis(m)?;
    let [[a, b], [c, d]] = m.entries();
    let tr = a + d;
    let disc = (tr * tr - 4.0).sqrt();
    let (lam_att, lam_rep) = if tr > 0.0 {
        ((tr + disc) / 2.0, (tr - disc) / 2.0)
    } else {
        ((tr - disc) / 2.0, (tr + disc) / 2.0)
    };
    let col = |lam: f64| -> [f64; 2] {
        if c != 0.0 {
            [(lam - d) / c, 1.0]
        } else if (lam - a).abs() <= (lam - d).abs() {
            [1.0, 0.0]
        } else {
            [b / (d - a), 1.0]
        }
    };
    let u = col(lam_att);
    let v = col(lam_rep);
    let det = u[0] * v[1] - v[0] * u[1];
    let frame = if det > 0.0 {
        [[u[0], v[0]], [u[1], v[1]]]
    } else {
        [[u[0], -v[0]], [u[1], -v[1]]]
    };
    Isometry::from_matrix(frame)
}
