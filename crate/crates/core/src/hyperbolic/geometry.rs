//! Upper half-plane model: PSL(2,R) matrices, boundary points, oriented
//! axes, crossings and directed angles.

use super::{HypError, TOL};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Orientation-preserving isometry of the upper half-plane: a real 2x2
/// matrix of determinant +1, identified with its negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    m: [[f64; 2]; 2],
}

impl Isometry {
    pub fn identity() -> Self {
        Isometry {
            m: [[1.0, 0.0], [0.0, 1.0]],
        }
    }

    /// Accepts any matrix with positive determinant and rescales to det 1.
    pub fn from_matrix(m: [[f64; 2]; 2]) -> Result<Self, HypError> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if !(det > 0.0) || !det.is_finite() {
            return Err(HypError::InvalidParameter(format!(
                "matrix determinant must be positive, got {det}"
            )));
        }
        let s = det.sqrt();
        Ok(Isometry {
            m: [[m[0][0] / s, m[0][1] / s], [m[1][0] / s, m[1][1] / s]],
        })
    }

    pub fn entries(&self) -> [[f64; 2]; 2] {
        self.m
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn mul(&self, rhs: &Isometry) -> Isometry {
        let a = &self.m;
        let b = &rhs.m;
        // no det renormalization here: products of det-1 matrices drift
        // only multiplicatively (~1e-16 per factor), while recomputing
        // ad - bc on large entries cancels catastrophically
        Isometry {
            m: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
        }
    }

    pub fn inverse(&self) -> Isometry {
        let [[a, b], [c, d]] = self.m;
        Isometry {
            m: [[d, -b], [-c, a]],
        }
    }

    /// Representative with the first entry of modulus > 1e-12 positive;
    /// gives reproducible serialized output.
    pub fn sign_normalized(&self) -> Isometry {
        let flat = [self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]];
        for e in flat {
            if e.abs() > 1e-12 {
                if e < 0.0 {
                    return Isometry {
                        m: [
                            [-self.m[0][0], -self.m[0][1]],
                            [-self.m[1][0], -self.m[1][1]],
                        ],
                    };
                }
                break;
            }
        }
        *self
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.trace().abs() > 2.0 + TOL
    }

    pub fn is_parabolic(&self) -> bool {
        (self.trace().abs() - 2.0).abs() <= TOL
    }

    /// Mobius action on an interior point.
    pub fn apply(&self, p: HPoint) -> HPoint {
        let [[a, b], [c, d]] = self.m;
        let u = a * p.x + b;
        let v = c * p.x + d;
        let den = v * v + (c * p.y) * (c * p.y);
        HPoint {
            x: (u * v + a * c * p.y * p.y) / den,
            // det 1 makes the imaginary part y / |cz+d|^2
            y: p.y / den,
        }
    }

    /// Mobius action on the boundary circle R union {infinity}.
    pub fn apply_boundary(&self, p: BoundaryPoint) -> BoundaryPoint {
        let [[a, b], [c, d]] = self.m;
        match p {
            BoundaryPoint::Infinity => {
                if c == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(a / c)
                }
            }
            BoundaryPoint::Finite(x) => {
                let den = c * x + d;
                if den == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((a * x + b) / den)
                }
            }
        }
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// Point of the open upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
}

/// Point of the circle at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BoundaryPoint {
    Finite(f64),
    Infinity,
}

impl BoundaryPoint {
    /// Angle coordinate on the boundary circle, in (-pi, pi].
    pub fn angle(&self) -> f64 {
        match self {
            BoundaryPoint::Finite(x) => 2.0 * x.atan(),
            BoundaryPoint::Infinity => std::f64::consts::PI,
        }
    }
}

/// Oriented complete geodesic together with the translation length of the
/// isometry it came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisGeo {
    pub repelling: BoundaryPoint,
    pub attracting: BoundaryPoint,
    pub length: f64,
}

impl AxisGeo {
    pub fn translated(&self, g: &Isometry) -> AxisGeo {
        AxisGeo {
            repelling: g.apply_boundary(self.repelling),
            attracting: g.apply_boundary(self.attracting),
            length: self.length,
        }
    }

    pub fn reversed(&self) -> AxisGeo {
        AxisGeo {
            repelling: self.attracting,
            attracting: self.repelling,
            length: self.length,
        }
    }
}

/// 2 arccosh(|tr|/2) for hyperbolic elements.
pub fn translation_length(m: &Isometry) -> Result<f64, HypError> {
    let t = m.trace();
    if t.abs() <= 2.0 + TOL {
        return Err(HypError::NonHyperbolic { trace: t });
    }
    Ok(2.0 * (t.abs() / 2.0).acosh())
}

/// Oriented invariant geodesic of a hyperbolic element.
pub fn axis(m: &Isometry) -> Result<AxisGeo, HypError> {
    let length = translation_length(m)?;
    let [[a, b], [c, d]] = m.entries();
    let tr = a + d;
    let disc = (tr * tr - 4.0).sqrt();
    // attracting fixed point belongs to the eigenvalue of larger modulus
    let (lam_att, lam_rep) = if tr > 0.0 {
        ((tr + disc) / 2.0, (tr - disc) / 2.0)
    } else {
        ((tr - disc) / 2.0, (tr + disc) / 2.0)
    };
    let fixed = |lam: f64| -> BoundaryPoint {
        if c != 0.0 {
            BoundaryPoint::Finite((lam - d) / c)
        } else if (lam - a).abs() <= (lam - d).abs() {
            // eigenvector (1, 0)
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::Finite(b / (d - a))
        }
    };
    Ok(AxisGeo {
        repelling: fixed(lam_rep),
        attracting: fixed(lam_att),
        length,
    })
}

fn wrap_2pi(x: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let r = x % two_pi;
    if r < 0.0 {
        r + two_pi
    } else {
        r
    }
}

fn circle_dist(p: f64, q: f64) -> f64 {
    let d = wrap_2pi(p - q);
    d.min(2.0 * std::f64::consts::PI - d)
}

/// Whether the endpoint pairs interleave on the circle at infinity.
pub fn axes_linked(a1: &AxisGeo, a2: &AxisGeo, tol: f64) -> Result<bool, HypError> {
    let t1 = [a1.repelling.angle(), a1.attracting.angle()];
    let t2 = [a2.repelling.angle(), a2.attracting.angle()];
    for p in t1 {
        for q in t2 {
            if circle_dist(p, q) < tol {
                return Err(HypError::TangencyUnresolved);
            }
        }
    }
    let span = wrap_2pi(t1[1] - t1[0]);
    let inside = |x: f64| {
        let t = wrap_2pi(x - t1[0]);
        t > 0.0 && t < span
    };
    Ok(inside(t2[0]) != inside(t2[1]))
}

enum Shape {
    Vertical { x: f64 },
    Semi { c: f64, r: f64 },
}

fn shape(a: &AxisGeo) -> Shape {
    match (a.repelling, a.attracting) {
        (BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)) => Shape::Semi {
            c: (p + q) / 2.0,
            r: ((p - q) / 2.0).abs(),
        },
        (BoundaryPoint::Finite(p), BoundaryPoint::Infinity) => Shape::Vertical { x: p },
        (BoundaryPoint::Infinity, BoundaryPoint::Finite(q)) => Shape::Vertical { x: q },
        (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => {
            unreachable!("axis endpoints are distinct")
        }
    }
}

/// Intersection point of two crossing axes.
pub fn crossing_point(a1: &AxisGeo, a2: &AxisGeo, tol: f64) -> Result<HPoint, HypError> {
    if !axes_linked(a1, a2, tol)? {
        return Err(HypError::NotLinked);
    }
    let p = match (shape(a1), shape(a2)) {
        (Shape::Vertical { .. }, Shape::Vertical { .. }) => return Err(HypError::NotLinked),
        (Shape::Vertical { x }, Shape::Semi { c, r }) | (Shape::Semi { c, r }, Shape::Vertical { x }) => {
            let y2 = r * r - (x - c) * (x - c);
            if y2 <= 0.0 {
                return Err(HypError::NotLinked);
            }
            HPoint { x, y: y2.sqrt() }
        }
        (Shape::Semi { c: c1, r: r1 }, Shape::Semi { c: c2, r: r2 }) => {
            let x = (r1 * r1 - r2 * r2 + c2 * c2 - c1 * c1) / (2.0 * (c2 - c1));
            let y2 = r1 * r1 - (x - c1) * (x - c1);
            if y2 <= 0.0 {
                return Err(HypError::NotLinked);
            }
            HPoint { x, y: y2.sqrt() }
        }
    };
    Ok(p)
}

/// Unit-free tangent direction of the oriented axis at an on-axis point.
fn tangent(a: &AxisGeo, p: HPoint) -> (f64, f64) {
    match (a.repelling, a.attracting) {
        (_, BoundaryPoint::Infinity) => (0.0, 1.0),
        (BoundaryPoint::Infinity, _) => (0.0, -1.0),
        (BoundaryPoint::Finite(u), BoundaryPoint::Finite(v)) => {
            let c = (u + v) / 2.0;
            if u < v {
                (p.y, c - p.x)
            } else {
                (-p.y, p.x - c)
            }
        }
    }
}

/// Anti-clockwise angle from the positive direction of `a1` to the positive
/// direction of `a2` at their crossing; lies in (-pi, 0) or (0, pi).
pub fn directed_angle(a1: &AxisGeo, a2: &AxisGeo, tol: f64) -> Result<f64, HypError> {
    let p = crossing_point(a1, a2, tol)?;
    let v1 = tangent(a1, p);
    let v2 = tangent(a2, p);
    let cross = v1.0 * v2.1 - v1.1 * v2.0;
    let dot = v1.0 * v2.0 + v1.1 * v2.1;
    let phi = cross.atan2(dot);
    if phi.abs() < tol || std::f64::consts::PI - phi.abs() < tol {
        return Err(HypError::TangencyUnresolved);
    }
    Ok(phi)
}

/// Hyperbolic distance between two interior points.
pub fn dist(p: HPoint, q: HPoint) -> f64 {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    (1.0 + (dx * dx + dy * dy) / (2.0 * p.y * q.y)).acosh()
}

/// Canonical chart sending the axis to the upward imaginary axis
/// (repelling endpoint to 0, attracting to infinity).
pub(crate) fn axis_chart(a: &AxisGeo) -> Isometry {
    let m = match (a.repelling, a.attracting) {
        (BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)) => {
            if q > p {
                [[1.0, -p], [-1.0, q]]
            } else {
                [[1.0, -p], [1.0, -q]]
            }
        }
        (BoundaryPoint::Finite(p), BoundaryPoint::Infinity) => [[1.0, -p], [0.0, 1.0]],
        (BoundaryPoint::Infinity, BoundaryPoint::Finite(q)) => [[0.0, -1.0], [1.0, -q]],
        (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => unreachable!(),
    };
    Isometry::from_matrix(m).expect("axis chart has positive determinant")
}

/// Signed arclength coordinate along the axis (for points on the axis).
pub(crate) fn axis_position(chart: &Isometry, p: HPoint) -> f64 {
    let q = chart.apply(p);
    (q.x * q.x + q.y * q.y).sqrt().ln()
}

/// Distance from a point to a complete geodesic.
pub fn dist_to_axis(a: &AxisGeo, p: HPoint) -> f64 {
    let q = axis_chart(a).apply(p);
    (q.x.abs() / q.y).asinh()
}

/// Hyperbolic midpoint of two interior points.
pub fn midpoint(p: HPoint, q: HPoint) -> HPoint {
    let scale = 1.0 + p.x.abs().max(q.x.abs());
    if (p.x - q.x).abs() < 1e-13 * scale {
        return HPoint {
            x: (p.x + q.x) / 2.0,
            y: (p.y * q.y).sqrt(),
        };
    }
    let c = (q.x * q.x + q.y * q.y - p.x * p.x - p.y * p.y) / (2.0 * (q.x - p.x));
    let r = ((p.x - c) * (p.x - c) + p.y * p.y).sqrt();
    let chart = Isometry::from_matrix([[1.0, -(c - r)], [-1.0, c + r]]).unwrap();
    let u = chart.apply(p);
    let v = chart.apply(q);
    let mu = (u.x * u.x + u.y * u.y).sqrt();
    let mv = (v.x * v.x + v.y * v.y).sqrt();
    chart.inverse().apply(HPoint {
        x: 0.0,
        y: (mu * mv).sqrt(),
    })
}
