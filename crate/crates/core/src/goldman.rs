//! The loop brackets: Goldman bracket on oriented classes and the
//! Thurston-Wolpert-Goldman bracket on unoriented classes.

use crate::coeff::{coeff_int, coeff_is_zero, coeff_to_string, Coeff};
use crate::hyperbolic::Representation;
use crate::intersect::{intersection_data, CrossingDatum, EnumerationConfig, IntersectError};
use crate::words::{OrientedClass, UnorientedClass};
use dashmap::DashMap;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BracketError {
    #[error(transparent)]
    Intersect(#[from] IntersectError),
    #[error("unoriented fold failed: bracket is not involution-invariant ({0})")]
    FoldFailure(String),
}

/// Exact linear combination of oriented classes; the degree-1 part of the
/// loop algebra. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LoopLinComb {
    terms: BTreeMap<OrientedClass, Coeff>,
}

impl LoopLinComb {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn singleton(c: OrientedClass) -> Self {
        let mut s = Self::default();
        s.add_term(c, coeff_int(1));
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, c: &OrientedClass) -> Coeff {
        self.terms.get(c).cloned().unwrap_or_else(crate::coeff::coeff_zero)
    }

    pub fn add_term(&mut self, c: OrientedClass, coeff: Coeff) {
        if coeff_is_zero(&coeff) {
            return;
        }
        let entry = self.terms.entry(c);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if coeff_is_zero(&sum) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &LoopLinComb) -> LoopLinComb {
        let mut out = self.clone();
        for (c, k) in &other.terms {
            out.add_term(c.clone(), k.clone());
        }
        out
    }

    pub fn neg(&self) -> LoopLinComb {
        LoopLinComb {
            terms: self.terms.iter().map(|(c, k)| (c.clone(), -k.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &Coeff) -> LoopLinComb {
        if coeff_is_zero(k) {
            return Self::zero();
        }
        LoopLinComb {
            terms: self
                .terms
                .iter()
                .map(|(c, v)| (c.clone(), v.clone() * k.clone()))
                .collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OrientedClass, &Coeff)> {
        self.terms.iter()
    }

    /// Termwise orientation reversal; a Lie algebra automorphism.
    pub fn i_apply(&self) -> LoopLinComb {
        let mut out = Self::default();
        for (c, k) in &self.terms {
            out.add_term(c.inverse(), k.clone());
        }
        out
    }

    pub fn to_string_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(c, k)| (c.to_string(), coeff_to_string(k)))
            .collect()
    }
}

fn fmt_terms<'t>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'t Coeff)>,
) -> fmt::Result {
    let mut first = true;
    let mut any = false;
    for (name, k) in terms {
        any = true;
        let mag = crate::coeff::coeff_abs(k);
        let negative = *k < crate::coeff::coeff_zero();
        if first {
            if negative {
                write!(f, "-")?;
            }
            first = false;
        } else if negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        write!(f, "{}*({})", coeff_to_string(&mag), name)?;
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for LoopLinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms.iter().map(|(c, k)| (c.to_string(), k)))
    }
}

/// Exact linear combination of unoriented classes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UnorientedLinComb {
    terms: BTreeMap<UnorientedClass, Coeff>,
}

impl UnorientedLinComb {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, c: UnorientedClass, coeff: Coeff) {
        if coeff_is_zero(&coeff) {
            return;
        }
        let entry = self.terms.entry(c);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if coeff_is_zero(&sum) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn coefficient(&self, c: &UnorientedClass) -> Coeff {
        self.terms.get(c).cloned().unwrap_or_else(crate::coeff::coeff_zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&UnorientedClass, &Coeff)> {
        self.terms.iter()
    }

    pub fn to_string_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(c, k)| (c.to_string(), coeff_to_string(k)))
            .collect()
    }
}

impl fmt::Display for UnorientedLinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms.iter().map(|(c, k)| (c.to_string(), k)))
    }
}

/// Bracket engine for one representation: classification short-circuits,
/// geometric enumeration, and a concurrency-safe memo of crossing data.
/// The cache never affects results, only repeated-call cost.
pub struct Context<'a> {
    rep: &'a Representation,
    cfg: EnumerationConfig,
    cache: DashMap<(OrientedClass, OrientedClass), Arc<Vec<CrossingDatum>>>,
}

impl<'a> Context<'a> {
    pub fn new(rep: &'a Representation, cfg: EnumerationConfig) -> Self {
        Context {
            rep,
            cfg,
            cache: DashMap::new(),
        }
    }

    pub fn rep(&self) -> &Representation {
        self.rep
    }

    pub fn cfg(&self) -> &EnumerationConfig {
        &self.cfg
    }

    /// Memoized intersection data for an ordered class pair.
    pub fn intersection(
        &self,
        cx: &OrientedClass,
        cy: &OrientedClass,
    ) -> Result<Arc<Vec<CrossingDatum>>, IntersectError> {
        let key = (cx.clone(), cy.clone());
        if let Some(hit) = self.cache.get(&key) {
            return Ok(hit.clone());
        }
        let data = Arc::new(intersection_data(self.rep, cx, cy, &self.cfg)?);
        self.cache.insert(key, data.clone());
        Ok(data)
    }

    fn bracket_short_circuits(&self, cx: &OrientedClass, cy: &OrientedClass) -> bool {
        if cx.is_trivial() || cy.is_trivial() {
            return true;
        }
        // peripheral loops admit representatives disjoint from everything
        if self.rep.class_is_peripheral(cx) || self.rep.class_is_peripheral(cy) {
            return true;
        }
        // equal or inverse classes share a geodesic; the bracket vanishes
        let (rx, _) = cx.primitive_root().expect("nontrivial");
        let (ry, _) = cy.primitive_root().expect("nontrivial");
        UnorientedClass::from_oriented(&rx) == UnorientedClass::from_oriented(&ry)
    }

    /// Goldman bracket of two oriented classes: the signed sum of loop
    /// products over intersection points.
    pub fn bracket(
        &self,
        cx: &OrientedClass,
        cy: &OrientedClass,
    ) -> Result<LoopLinComb, BracketError> {
        if self.bracket_short_circuits(cx, cy) {
            return Ok(LoopLinComb::zero());
        }
        let data = self.intersection(cx, cy)?;
        let mut out = LoopLinComb::zero();
        for d in data.iter() {
            out.add_term(d.product.clone(), coeff_int(d.sign as i64));
        }
        Ok(out)
    }

    /// Bracket of the n-th power of `cx` with `cy`.
    pub fn bracket_power(
        &self,
        cx: &OrientedClass,
        n: u32,
        cy: &OrientedClass,
    ) -> Result<LoopLinComb, BracketError> {
        self.bracket(&cx.power(n), cy)
    }

    /// Thurston-Wolpert-Goldman bracket through the oriented engine: lift
    /// u~ to u + u^{-1}, bracket, verify involution invariance, fold back.
    pub fn gw_bracket(
        &self,
        ux: &UnorientedClass,
        uy: &UnorientedClass,
    ) -> Result<UnorientedLinComb, BracketError> {
        let lift = |u: &UnorientedClass| -> Vec<OrientedClass> {
            let r = u.rep().clone();
            let inv = r.inverse();
            if inv == r {
                vec![r]
            } else {
                vec![r, inv]
            }
        };
        let mut total = LoopLinComb::zero();
        for x in lift(ux) {
            for y in lift(uy) {
                total = total.add(&self.bracket(&x, &y)?);
            }
        }
        if total.i_apply() != total {
            return Err(BracketError::FoldFailure(format!(
                "[{ux}~, {uy}~] produced {total}"
            )));
        }
        let mut out = UnorientedLinComb::zero();
        for (c, k) in total.iter() {
            let u = UnorientedClass::from_oriented(c);
            if u.rep() == c {
                out.add_term(u, k.clone());
            }
        }
        Ok(out)
    }
}

/// One-shot Goldman bracket without a shared context.
pub fn goldman_bracket(
    rep: &Representation,
    cx: &OrientedClass,
    cy: &OrientedClass,
    cfg: &EnumerationConfig,
) -> Result<LoopLinComb, BracketError> {
    Context::new(rep, *cfg).bracket(cx, cy)
}

/// One-shot Thurston-Wolpert-Goldman bracket.
pub fn gw_bracket(
    rep: &Representation,
    ux: &UnorientedClass,
    uy: &UnorientedClass,
    cfg: &EnumerationConfig,
) -> Result<UnorientedLinComb, BracketError> {
    Context::new(rep, *cfg).gw_bracket(ux, uy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::coeff_abs;
    use crate::hyperbolic::{rep_once_holed_torus, rep_pair_of_pants};
    use crate::words::enumerate_classes;

    fn cls(s: &str) -> OrientedClass {
        OrientedClass::parse(s, 2).unwrap()
    }

    fn ucls(s: &str) -> UnorientedClass {
        UnorientedClass::from_oriented(&cls(s))
    }

    #[test]
    fn generator_bracket_single_term() {
        let rep = rep_once_holed_torus(3.0, 3.0, 4.0).unwrap();
        let ctx = Context::new(&rep, EnumerationConfig::default());
        let br = ctx.bracket(&cls("a"), &cls("b")).unwrap();
        assert_eq!(br.len(), 1);
        let (c, k) = br.iter().next().unwrap();
        assert_eq!(*c, cls("ab"));
        assert_eq!(coeff_abs(k), coeff_int(1));
    }

    #[test]
    fn self_and_inverse_brackets_vanish() {
        let rep = rep_once_holed_torus(3.0, 3.0, 4.0).unwrap();
        let ctx = Context::new(&rep, EnumerationConfig::default());
        assert!(ctx.bracket(&cls("ab"), &cls("ab")).unwrap().is_zero());
        assert!(ctx.bracket(&cls("ab"), &cls("AB")).unwrap().is_zero());
        assert!(ctx.bracket(&cls("ab"), &cls("abab")).unwrap().is_zero());
    }

    #[test]
    fn peripheral_and_trivial_brackets_vanish() {
        let rep = rep_once_holed_torus(3.0, 3.0, 4.0).unwrap();
        let ctx = Context::new(&rep, EnumerationConfig::default());
        for w in ["a", "b", "ab", "aab", "abb"] {
            assert!(ctx.bracket(&cls("abAB"), &cls(w)).unwrap().is_zero());
            assert!(ctx.bracket(&cls(w), &cls("abAB")).unwrap().is_zero());
            assert!(ctx.bracket(&cls(""), &cls(w)).unwrap().is_zero());
        }
        // powers of the boundary are still peripheral
        assert!(ctx.bracket(&cls("abABabAB"), &cls("a")).unwrap().is_zero());
    }

    #[test]
    fn antisymmetry_on_short_classes() {
        let rep = rep_once_holed_torus(3.0, 3.0, 4.0).unwrap();
        let ctx = Context::new(&rep, EnumerationConfig::default());
        let classes = enumerate_classes(2, 2);
        for x in &classes {
            for y in &classes {
                let xy = ctx.bracket(x, y).unwrap();
                let yx = ctx.bracket(y, x).unwrap();
                assert_eq!(xy, yx.neg(), "[{x},{y}]");
            }
        }
    }

    #[test]
    fn bracket_power_examples() {
        let rep = rep_once_holed_torus(3.0, 3.0, 4.0).unwrap();
        let ctx = Context::new(&rep, EnumerationConfig::default());
        let b1 = ctx.bracket_power(&cls("a"), 1, &cls("b")).unwrap();
        assert_eq!(b1, ctx.bracket(&cls("a"), &cls("b")).unwrap());
        let b2 = ctx.bracket_power(&cls("a"), 2, &cls("b")).unwrap();
        assert_eq!(b2.len(), 1);
        let (c, k) = b2.iter().next().unwrap();
        assert_eq!(*c, cls("aab"));
        assert_eq!(coeff_abs(k), coeff_int(2));
        // boundary powers are central
        assert!(ctx.bracket_power(&cls("abAB"), 3, &cls("b")).unwrap().is_zero());
    }

    #[test]
    fn i_equivariance() {
        let rep = rep_once_holed_torus(3.0, 3.0, 4.0).unwrap();
        let ctx = Context::new(&rep, EnumerationConfig::default());
        for (x, y) in [("a", "b"), ("ab", "aB"), ("aab", "b"), ("ab", "bb")] {
            let lhs = ctx.bracket(&cls(x), &cls(y)).unwrap().i_apply();
            let rhs = ctx
                .bracket(&cls(x).inverse(), &cls(y).inverse())
                .unwrap();
            assert_eq!(lhs, rhs, "pair ({x},{y})");
        }
    }

    #[test]
    fn jacobi_instance() {
        let rep = rep_once_holed_torus(3.0, 3.0, 4.0).unwrap();
        let ctx = Context::new(&rep, EnumerationConfig::default());
        let (x, y, z) = (cls("a"), cls("b"), cls("ab"));
        let bracket_with_comb = |c: &OrientedClass, l: &LoopLinComb| {
            let mut out = LoopLinComb::zero();
            for (w, k) in l.iter() {
                out = out.add(&ctx.bracket(c, w).unwrap().scale(k));
            }
            out
        };
        let t1 = bracket_with_comb(&x, &ctx.bracket(&y, &z).unwrap());
        let t2 = bracket_with_comb(&y, &ctx.bracket(&z, &x).unwrap());
        let t3 = bracket_with_comb(&z, &ctx.bracket(&x, &y).unwrap());
        let jac = t1.add(&t2).add(&t3);
        assert!(jac.is_zero(), "jacobi defect: {jac}");
    }

    #[test]
    fn gw_bracket_folds() {
        let rep = rep_once_holed_torus(3.0, 3.0, 4.0).unwrap();
        let ctx = Context::new(&rep, EnumerationConfig::default());
        assert!(ctx.gw_bracket(&ucls("a"), &ucls("a")).unwrap().is_zero());
        assert!(ctx.gw_bracket(&ucls("abAB"), &ucls("b")).unwrap().is_zero());
        let br = ctx.gw_bracket(&ucls("a"), &ucls("b")).unwrap();
        // two unoriented terms of magnitude 1 with opposite signs: (ab)~ and (aB)~
        assert_eq!(br.len(), 2);
        let c_ab = br.coefficient(&ucls("ab"));
        let c_ab2 = br.coefficient(&ucls("aB"));
        assert_eq!(coeff_abs(&c_ab), coeff_int(1));
        assert_eq!(coeff_abs(&c_ab2), coeff_int(1));
        assert_eq!(c_ab, -c_ab2);
    }

    #[test]
    fn planar_brackets_vanish_in_homology() {
        let pants = rep_pair_of_pants(1.0, 1.3, 1.7).unwrap();
        let ctx = Context::new(&pants, EnumerationConfig::default());
        // aB and aaB are distinct essential classes on the pants
        let data = ctx.intersection(&cls("aB"), &cls("aaB")).unwrap();
        let signed: i64 = data.iter().map(|d| d.sign as i64).sum();
        assert_eq!(signed, 0);
    }

    #[test]
    fn display_form() {
        let mut l = LoopLinComb::zero();
        l.add_term(cls("ab"), coeff_int(1));
        l.add_term(cls("aB"), coeff_int(-2));
        assert_eq!(l.to_string(), "1*(ab) - 2*(aB)");
        assert_eq!(LoopLinComb::zero().to_string(), "0");
    }
}
