//! Discrete representations of free groups into PSL(2,R) with surface
//! metadata, plus the built-in surface models.

use super::geometry::Isometry;
use super::{HypError, TOL};
use crate::words::{enumerate_classes, OrientedClass, Word};
use serde::{Deserialize, Serialize};

/// Registered data for a Fenchel-Nielsen twist along a built-in curve:
/// the generators that cross the curve exactly once.
#[derive(Debug, Clone)]
pub(crate) struct TwistSplitting {
    pub curve: OrientedClass,
    pub affected: Vec<usize>,
}

/// Assignment of hyperbolic-plane isometries to free-group generators,
/// with designated peripheral words and the homology intersection form.
#[derive(Debug, Clone)]
pub struct Representation {
    rank: usize,
    generator_images: Vec<Isometry>,
    boundary_words: Vec<Word>,
    intersection_form: Vec<Vec<i64>>,
    label: String,
    pub(crate) twist_splittings: Vec<TwistSplitting>,
}

impl Representation {
    pub fn new(
        generator_images: Vec<Isometry>,
        boundary_words: Vec<Word>,
        intersection_form: Vec<Vec<i64>>,
        label: String,
    ) -> Result<Self, HypError> {
        let rank = generator_images.len();
        if rank < 2 {
            return Err(HypError::InvalidParameter(
                "representation needs at least two generators".into(),
            ));
        }
        if intersection_form.len() != rank || intersection_form.iter().any(|r| r.len() != rank) {
            return Err(HypError::InvalidParameter(
                "intersection form must be rank x rank".into(),
            ));
        }
        for w in &boundary_words {
            if w.rank() != rank {
                return Err(HypError::InvalidParameter(
                    "boundary word rank mismatch".into(),
                ));
            }
        }
        Ok(Representation {
            rank,
            generator_images,
            boundary_words,
            intersection_form,
            label,
            twist_splittings: Vec::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn boundary_words(&self) -> &[Word] {
        &self.boundary_words
    }

    pub fn intersection_form(&self) -> &[Vec<i64>] {
        &self.intersection_form
    }

    pub fn generator_images(&self) -> &[Isometry] {
        &self.generator_images
    }

    pub(crate) fn with_images(&self, images: Vec<Isometry>) -> Representation {
        Representation {
            rank: self.rank,
            generator_images: images,
            boundary_words: self.boundary_words.clone(),
            intersection_form: self.intersection_form.clone(),
            label: self.label.clone(),
            twist_splittings: self.twist_splittings.clone(),
        }
    }

    /// Image of a word under the representation.
    pub fn evaluate(&self, w: &Word) -> Isometry {
        let mut out = Isometry::identity();
        for &l in w.letters() {
            let idx = (l.unsigned_abs() - 1) as usize;
            let g = &self.generator_images[idx];
            out = if l > 0 { out.mul(g) } else { out.mul(&g.inverse()) };
        }
        out
    }

    pub fn evaluate_class(&self, c: &OrientedClass) -> Isometry {
        self.evaluate(c.word())
    }

    /// Whether a class is conjugate to a nonzero power of a designated
    /// boundary word. Exact word arithmetic, no geometry.
    pub fn class_is_peripheral(&self, c: &OrientedClass) -> bool {
        if c.is_trivial() {
            return false;
        }
        let len = c.len();
        for b in &self.boundary_words {
            let beta = OrientedClass::from_word(b);
            let m = beta.len();
            if m == 0 || len % m != 0 {
                continue;
            }
            let n = (len / m) as u32;
            if *c == beta.power(n) || *c == beta.inverse().power(n) {
                return true;
            }
        }
        false
    }

    /// Checks the defining invariants: designated boundary words evaluate to
    /// parabolic or hyperbolic elements, and every non-peripheral class up
    /// to word length 6 evaluates to a hyperbolic element. This is an
    /// empirical validation of discreteness, not a certificate.
    pub fn validate(&self) -> Result<(), HypError> {
        for w in &self.boundary_words {
            let t = self.evaluate(w).trace().abs();
            if t < 2.0 - TOL {
                return Err(HypError::InvalidRepresentation(format!(
                    "boundary word {w} evaluates to an elliptic element (|trace| = {t})"
                )));
            }
        }
        for c in enumerate_classes(self.rank, 6) {
            if c.is_trivial() || self.class_is_peripheral(&c) {
                continue;
            }
            let t = self.evaluate_class(&c).trace().abs();
            if t <= 2.0 + TOL {
                return Err(HypError::InvalidRepresentation(format!(
                    "non-peripheral class ({c}) is not hyperbolic (|trace| = {t})"
                )));
            }
        }
        Ok(())
    }

    pub fn to_json_string(&self) -> String {
        let doc = RepresentationDoc {
            schema: 1,
            label: self.label.clone(),
            rank: self.rank,
            generators: self
                .generator_images
                .iter()
                .map(|g| g.sign_normalized().entries())
                .collect(),
            boundary_words: self.boundary_words.iter().map(|w| w.to_string()).collect(),
            intersection_form: self.intersection_form.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("representation serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, HypError> {
        let doc: RepresentationDoc = serde_json::from_str(s)
            .map_err(|e| HypError::InvalidParameter(format!("bad representation JSON: {e}")))?;
        if doc.schema != 1 {
            return Err(HypError::InvalidParameter(format!(
                "unsupported representation schema {}",
                doc.schema
            )));
        }
        let images = doc
            .generators
            .iter()
            .map(|m| Isometry::from_matrix(*m))
            .collect::<Result<Vec<_>, _>>()?;
        let words = doc
            .boundary_words
            .iter()
            .map(|w| Word::parse(w, doc.rank))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| HypError::InvalidParameter(format!("bad boundary word: {e}")))?;
        let rep = Representation::new(images, words, doc.intersection_form, doc.label)?;
        rep.validate()?;
        Ok(rep)
    }
}

#[derive(Serialize, Deserialize)]
struct RepresentationDoc {
    schema: u32,
    label: String,
    rank: usize,
    generators: Vec<[[f64; 2]; 2]>,
    boundary_words: Vec<String>,
    intersection_form: Vec<Vec<i64>>,
}

fn holed_torus_splittings() -> Vec<TwistSplitting> {
    vec![
        TwistSplitting {
            curve: OrientedClass::parse("a", 2).unwrap(),
            affected: vec![1],
        },
        TwistSplitting {
            curve: OrientedClass::parse("b", 2).unwrap(),
            affected: vec![0],
        },
    ]
}

fn symplectic_form() -> Vec<Vec<i64>> {
    vec![vec![0, 1], vec![-1, 0]]
}

/// The modular once-punctured torus: A = [[1,1],[1,2]], B = [[1,-1],[-1,2]],
/// commutator trace -2 (cusp).
pub fn rep_modular_torus() -> Representation {
    let a = Isometry::from_matrix([[1.0, 1.0], [1.0, 2.0]]).unwrap();
    let b = Isometry::from_matrix([[1.0, -1.0], [-1.0, 2.0]]).unwrap();
    let mut rep = Representation::new(
        vec![a, b],
        vec![Word::parse("abAB", 2).unwrap()],
        symplectic_form(),
        "modular".into(),
    )
    .expect("modular preset shape");
    rep.twist_splittings = holed_torus_splittings();
    rep.validate().expect("modular torus preset is valid");
    rep
}

/// One-holed torus with prescribed traces (tr a, tr b, tr ab). Requires
/// hyperbolic generators and commutator trace
/// t = x^2 + y^2 + z^2 - xyz - 2 at most -2 (boundary geodesic or cusp).
pub fn rep_once_holed_torus(tr_a: f64, tr_b: f64, tr_ab: f64) -> Result<Representation, HypError> {
    let (x, y, z) = (tr_a, tr_b, tr_ab);
    let t = x * x + y * y + z * z - x * y * z - 2.0;
    if t > -2.0 + 1e-12 {
        return Err(HypError::NotDiscreteInput(format!(
            "commutator trace {t} exceeds -2"
        )));
    }
    if x.abs() <= 2.0 + TOL || y.abs() <= 2.0 + TOL {
        return Err(HypError::NotDiscreteInput(
            "generator traces must exceed 2 in absolute value".into(),
        ));
    }
    let lam = (x + x.signum() * (x * x - 4.0).sqrt()) / 2.0;
    let a = Isometry::from_matrix([[lam, 0.0], [0.0, 1.0 / lam]])?;
    let p = (z - y / lam) / (lam - 1.0 / lam);
    let s = y - p;
    let q = p * s - 1.0;
    let b = Isometry::from_matrix([[p, 1.0], [q, s]])?;
    let mut rep = Representation::new(
        vec![a, b],
        vec![Word::parse("abAB", 2).unwrap()],
        symplectic_form(),
        format!("holed-torus({tr_a},{tr_b},{tr_ab})"),
    )?;
    rep.twist_splittings = holed_torus_splittings();
    rep.validate()?;
    Ok(rep)
}

/// Pair of pants with boundary lengths (l1, l2, l3). Generators a and b wrap
/// the first two cuffs; the third cuff is (ab)^{-1}.
pub fn rep_pair_of_pants(l1: f64, l2: f64, l3: f64) -> Result<Representation, HypError> {
    for l in [l1, l2, l3] {
        if !(l > 0.0) {
            return Err(HypError::InvalidParameter(format!(
                "boundary lengths must be positive, got {l}"
            )));
        }
    }
    let x = -2.0 * (l1 / 2.0).cosh();
    let y = -2.0 * (l2 / 2.0).cosh();
    let z = -2.0 * (l3 / 2.0).cosh();
    let lam = (x + x.signum() * (x * x - 4.0).sqrt()) / 2.0;
    let a = Isometry::from_matrix([[lam, 0.0], [0.0, 1.0 / lam]])?;
    let p = (z - y / lam) / (lam - 1.0 / lam);
    let s = y - p;
    let q = p * s - 1.0;
    let b = Isometry::from_matrix([[p, 1.0], [q, s]])?;
    let rep = Representation::new(
        vec![a, b],
        vec![
            Word::parse("a", 2).unwrap(),
            Word::parse("b", 2).unwrap(),
            Word::parse("BA", 2).unwrap(),
        ],
        vec![vec![0, 0], vec![0, 0]],
        format!("pants({l1},{l2},{l3})"),
    )?;
    rep.validate()?;
    Ok(rep)
}
