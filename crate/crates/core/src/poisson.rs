//! Poisson and enveloping algebra layers over the loop brackets: Leibniz
//! extensions to the symmetric algebra, the one-parameter bracket
//! deformations, normal-ordering rewriting for the quantized algebras, and
//! the homotopy-skein stacking product through the quantization map.

use crate::coeff::{coeff_int, coeff_is_zero, coeff_one, coeff_to_string, coeff_zero, Coeff};
use crate::goldman::{BracketError, Context, LoopLinComb};
use crate::intersect::algebraic_intersection_number;
use crate::words::{OrientedClass, UnorientedClass};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;

/// Provides the Lie bracket of two basis classes as an exact combination.
pub trait BracketOracle<C> {
    fn bracket_basis(&self, a: &C, b: &C) -> Result<Vec<(C, Coeff)>, BracketError>;
}

impl BracketOracle<OrientedClass> for Context<'_> {
    fn bracket_basis(
        &self,
        a: &OrientedClass,
        b: &OrientedClass,
    ) -> Result<Vec<(OrientedClass, Coeff)>, BracketError> {
        Ok(self
            .bracket(a, b)?
            .iter()
            .map(|(c, k)| (c.clone(), k.clone()))
            .collect())
    }
}

impl BracketOracle<UnorientedClass> for Context<'_> {
    fn bracket_basis(
        &self,
        a: &UnorientedClass,
        b: &UnorientedClass,
    ) -> Result<Vec<(UnorientedClass, Coeff)>, BracketError> {
        Ok(self
            .gw_bracket(a, b)?
            .iter()
            .map(|(c, k)| (c.clone(), k.clone()))
            .collect())
    }
}

/// Element of the symmetric algebra: exact combination of commutative
/// monomials in classes. Monomials are kept sorted; no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPoly<C: Ord> {
    terms: BTreeMap<Vec<C>, Coeff>,
}

impl<C: Ord + Clone> Default for SymPoly<C> {
    fn default() -> Self {
        SymPoly {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Ord + Clone> SymPoly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit scalar (empty monomial).
    pub fn one() -> Self {
        let mut s = Self::default();
        s.add_term(Vec::new(), coeff_one());
        s
    }

    pub fn generator(c: C) -> Self {
        let mut s = Self::default();
        s.add_term(vec![c], coeff_one());
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

    pub fn add_term(&mut self, mut monomial: Vec<C>, coeff: Coeff) {
        if coeff_is_zero(&coeff) {
            return;
        }
        monomial.sort();
        match self.terms.entry(monomial) {
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, k) in &other.terms {
            out.add_term(m.clone(), k.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        SymPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), -k.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Coeff) -> Self {
        if coeff_is_zero(k) {
            return Self::zero();
        }
        SymPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * k.clone()))
                .collect(),
        }
    }

    /// Commutative product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, k1) in &self.terms {
            for (m2, k2) in &other.terms {
                let mut m = m1.clone();
                m.extend(m2.iter().cloned());
                out.add_term(m, k1.clone() * k2.clone());
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<C>, &Coeff)> {
        self.terms.iter()
    }
}

impl SymPoly<OrientedClass> {
    /// Degree-1 embedding of a loop combination.
    pub fn from_lincomb(l: &LoopLinComb) -> Self {
        let mut out = Self::zero();
        for (c, k) in l.iter() {
            out.add_term(vec![c.clone()], k.clone());
        }
        out
    }
}

impl<C: Ord + Clone + fmt::Display> fmt::Display for SymPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, k) in &self.terms {
            let neg = *k < coeff_zero();
            let mag = crate::coeff::coeff_abs(k);
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}", coeff_to_string(&mag))?;
            if !m.is_empty() {
                write!(f, "*")?;
                for c in m {
                    write!(f, "({c})")?;
                }
            }
        }
        Ok(())
    }
}

/// Leibniz extension of the loop bracket to the symmetric algebra.
pub fn sym_bracket<C, O>(oracle: &O, p: &SymPoly<C>, q: &SymPoly<C>) -> Result<SymPoly<C>, BracketError>
where
    C: Ord + Clone,
    O: BracketOracle<C>,
{
    let mut out = SymPoly::zero();
    for (m1, k1) in p.iter() {
        for (m2, k2) in q.iter() {
            let k12 = k1.clone() * k2.clone();
            for i in 0..m1.len() {
                for j in 0..m2.len() {
                    for (z, bz) in oracle.bracket_basis(&m1[i], &m2[j])? {
                        let mut m: Vec<C> = Vec::with_capacity(m1.len() + m2.len() - 1);
                        m.extend(m1.iter().take(i).cloned());
                        m.extend(m1.iter().skip(i + 1).cloned());
                        m.extend(m2.iter().take(j).cloned());
                        m.extend(m2.iter().skip(j + 1).cloned());
                        m.push(z);
                        out.add_term(m, k12.clone() * bz);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The deformed bracket on generators, extended by bilinearity and Leibniz:
/// the loop bracket minus k (x . y) xy, with (x . y) the algebraic
/// intersection number.
pub fn sk_bracket(
    ctx: &Context<'_>,
    p: &SymPoly<OrientedClass>,
    q: &SymPoly<OrientedClass>,
    k: &Coeff,
) -> Result<SymPoly<OrientedClass>, BracketError> {
    let mut out = sym_bracket(ctx, p, q)?;
    if coeff_is_zero(k) {
        return Ok(out);
    }
    for (m1, k1) in p.iter() {
        for (m2, k2) in q.iter() {
            let mut pairing = 0i64;
            for x in m1 {
                for y in m2 {
                    pairing += algebraic_intersection_number(ctx.rep(), x, y);
                }
            }
            if pairing != 0 {
                let mut m = m1.clone();
                m.extend(m2.iter().cloned());
                let coeff = -k.clone() * coeff_int(pairing) * k1.clone() * k2.clone();
                out.add_term(m, coeff);
            }
        }
    }
    Ok(out)
}

/// Dense polynomial in the deformation variable h with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPoly {
    coeffs: Vec<Coeff>,
}

impl HPoly {
    pub fn zero() -> Self {
        HPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        HPoly {
            coeffs: vec![coeff_one()],
        }
    }

    pub fn constant(c: Coeff) -> Self {
        let mut p = HPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn h() -> Self {
        HPoly {
            coeffs: vec![coeff_zero(), coeff_one()],
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(coeff_is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficient(&self, power: usize) -> Coeff {
        self.coeffs.get(power).cloned().unwrap_or_else(coeff_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coefficient(i) + other.coefficient(i));
        }
        let mut p = HPoly { coeffs };
        p.trim();
        p
    }

    pub fn neg(&self) -> Self {
        HPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![coeff_zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a.clone() * b.clone();
            }
        }
        let mut p = HPoly { coeffs };
        p.trim();
        p
    }

    /// Multiplication by h (shift by one power).
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(coeff_zero());
        coeffs.extend(self.coeffs.iter().cloned());
        HPoly { coeffs }
    }

    pub fn eval(&self, at: &Coeff) -> Coeff {
        let mut acc = coeff_zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at.clone() + c.clone();
        }
        acc
    }

    pub fn to_string_with_var(&self, var: char) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if coeff_is_zero(c) {
                continue;
            }
            let body = match i {
                0 => coeff_to_string(c),
                1 => format!("{}*{var}", coeff_to_string(c)),
                _ => format!("{}*{var}^{i}", coeff_to_string(c)),
            };
            parts.push(body);
        }
        parts.join(" + ")
    }
}

/// Element of the quantized algebra in the normal-ordered basis: exact map
/// from nondecreasing class tuples to polynomials in h.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbwElement<C: Ord> {
    terms: BTreeMap<Vec<C>, HPoly>,
}

impl<C: Ord + Clone> Default for PbwElement<C> {
    fn default() -> Self {
        PbwElement {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Ord + Clone> PbwElement<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The two-sided unit: the empty tuple with coefficient 1.
    pub fn one() -> Self {
        let mut e = Self::default();
        e.add_term(Vec::new(), HPoly::one());
        e
    }

    pub fn generator(c: C) -> Self {
        let mut e = Self::default();
        e.add_term(vec![c], HPoly::one());
        e
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

    pub fn add_term(&mut self, tuple: Vec<C>, coeff: HPoly) {
        if coeff.is_zero() {
            return;
        }
        debug_assert!(tuple.windows(2).all(|w| w[0] <= w[1]), "tuple must be normal-ordered");
        match self.terms.entry(tuple) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        PbwElement {
            terms: self.terms.iter().map(|(t, c)| (t.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<C>, &HPoly)> {
        self.terms.iter()
    }

    /// Coefficient map at a fixed value of h (h = 0 recovers the
    /// commutative symmetric algebra, h = k the enveloping algebra twist).
    pub fn at_h(&self, value: &Coeff) -> SymPoly<C> {
        let mut out = SymPoly::zero();
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c.eval(value));
        }
        out
    }

    pub fn to_string_with_var(&self, var: char) -> String
    where
        C: fmt::Display,
    {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (t, c) in &self.terms {
            let tuple = if t.is_empty() {
                "1".to_string()
            } else {
                t.iter().map(|c| format!("({c})")).collect::<Vec<_>>().join("")
            };
            parts.push(format!("[{}] {}", c.to_string_with_var(var), tuple));
        }
        parts.join(" + ")
    }
}

/// Order in which disordered adjacent pairs are rewritten. All strategies
/// produce the same normal form; the seeded one exists to test exactly that.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteStrategy {
    Leftmost,
    Seeded(u64),
}

/// Rewrites a product of classes into the normal-ordered basis using
/// x y -> y x + h [x, y] on disordered adjacent pairs.
pub fn pbw_normalize<C, O>(oracle: &O, tuple: &[C]) -> Result<PbwElement<C>, BracketError>
where
    C: Ord + Clone,
    O: BracketOracle<C>,
{
    pbw_normalize_with(oracle, tuple, RewriteStrategy::Leftmost)
}

pub fn pbw_normalize_with<C, O>(
    oracle: &O,
    tuple: &[C],
    strategy: RewriteStrategy,
) -> Result<PbwElement<C>, BracketError>
where
    C: Ord + Clone,
    O: BracketOracle<C>,
{
    let mut rng = match strategy {
        RewriteStrategy::Leftmost => None,
        RewriteStrategy::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut out = PbwElement::zero();
    let mut worklist: Vec<(Vec<C>, HPoly)> = vec![(tuple.to_vec(), HPoly::one())];
    while let Some((t, coeff)) = worklist.pop() {
        let disordered: Vec<usize> = (0..t.len().saturating_sub(1))
            .filter(|&i| t[i] > t[i + 1])
            .collect();
        if disordered.is_empty() {
            out.add_term(t, coeff);
            continue;
        }
        let i = match rng.as_mut() {
            None => disordered[0],
            Some(r) => disordered[r.random_range(0..disordered.len())],
        };
        let mut swapped = t.clone();
        swapped.swap(i, i + 1);
        for (z, bz) in oracle.bracket_basis(&t[i], &t[i + 1])? {
            let mut shorter: Vec<C> = Vec::with_capacity(t.len() - 1);
            shorter.extend(t.iter().take(i).cloned());
            shorter.push(z);
            shorter.extend(t.iter().skip(i + 2).cloned());
            worklist.push((shorter, coeff.shift().mul(&HPoly::constant(bz))));
        }
        worklist.push((swapped, coeff));
    }
    Ok(out)
}

/// Product in the quantized algebra: concatenate tuples and normal-order.
pub fn vh_multiply<C, O>(
    oracle: &O,
    e1: &PbwElement<C>,
    e2: &PbwElement<C>,
) -> Result<PbwElement<C>, BracketError>
where
    C: Ord + Clone,
    O: BracketOracle<C>,
{
    let mut out = PbwElement::zero();
    for (t1, c1) in e1.iter() {
        for (t2, c2) in e2.iter() {
            let mut t: Vec<C> = Vec::with_capacity(t1.len() + t2.len());
            t.extend(t1.iter().cloned());
            t.extend(t2.iter().cloned());
            let normalized = pbw_normalize(oracle, &t)?;
            let factor = c1.mul(c2);
            for (tt, cc) in normalized.iter() {
                out.add_term(tt.clone(), cc.mul(&factor));
            }
        }
    }
    Ok(out)
}

/// Commutator in the quantized algebra; on degree-1 generators it equals
/// h times the loop bracket.
pub fn vh_commutator<C, O>(
    oracle: &O,
    e1: &PbwElement<C>,
    e2: &PbwElement<C>,
) -> Result<PbwElement<C>, BracketError>
where
    C: Ord + Clone,
    O: BracketOracle<C>,
{
    Ok(vh_multiply(oracle, e1, e2)?.sub(&vh_multiply(oracle, e2, e1)?))
}

/// Stacking product of link-homotopy monomials through the quantization
/// isomorphism: components of `upper` sit above those of `lower`, and the
/// product is the quantized-algebra product with h read as z.
pub fn hs_stacking<C, O>(
    oracle: &O,
    upper: &SymPoly<C>,
    lower: &SymPoly<C>,
) -> Result<PbwElement<C>, BracketError>
where
    C: Ord + Clone,
    O: BracketOracle<C>,
{
    let mut out = PbwElement::zero();
    for (m1, k1) in upper.iter() {
        for (m2, k2) in lower.iter() {
            let mut t: Vec<C> = Vec::with_capacity(m1.len() + m2.len());
            t.extend(m1.iter().cloned());
            t.extend(m2.iter().cloned());
            let normalized = pbw_normalize(oracle, &t)?;
            let factor = HPoly::constant(k1.clone() * k2.clone());
            for (tt, cc) in normalized.iter() {
                out.add_term(tt.clone(), cc.mul(&factor));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::rep_once_holed_torus;
    use crate::intersect::EnumerationConfig;
    use crate::words::OrientedClass;

    fn cls(s: &str) -> OrientedClass {
        OrientedClass::parse(s, 2).unwrap()
    }

    fn torus_ctx() -> (crate::hyperbolic::Representation, EnumerationConfig) {
        (
            rep_once_holed_torus(3.0, 3.0, 4.0).unwrap(),
            EnumerationConfig::default(),
        )
    }

    #[test]
    fn sym_bracket_degree_one_agrees_with_goldman() {
        let (rep, cfg) = torus_ctx();
        let ctx = Context::new(&rep, cfg);
        let p = SymPoly::generator(cls("a"));
        let q = SymPoly::generator(cls("b"));
        let br = sym_bracket(&ctx, &p, &q).unwrap();
        let expected = SymPoly::from_lincomb(&ctx.bracket(&cls("a"), &cls("b")).unwrap());
        assert_eq!(br, expected);
    }

    #[test]
    fn sym_bracket_leibniz() {
        let (rep, cfg) = torus_ctx();
        let ctx = Context::new(&rep, cfg);
        let x = SymPoly::generator(cls("a"));
        let y = SymPoly::generator(cls("b"));
        let z = SymPoly::generator(cls("ab"));
        let yz = y.mul(&z);
        let lhs = sym_bracket(&ctx, &x, &yz).unwrap();
        let rhs = sym_bracket(&ctx, &x, &y).unwrap().mul(&z).add(
            &y.mul(&sym_bracket(&ctx, &x, &z).unwrap()),
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn boundary_monomials_are_central() {
        let (rep, cfg) = torus_ctx();
        let ctx = Context::new(&rep, cfg);
        let boundary = cls("abAB");
        let mut mono = SymPoly::zero();
        mono.add_term(vec![boundary.clone(), boundary.clone()], coeff_one());
        for probe in ["a", "b", "ab", "aab"] {
            let br = sym_bracket(&ctx, &SymPoly::generator(cls(probe)), &mono).unwrap();
            assert!(br.is_zero());
        }
    }

    #[test]
    fn sk_bracket_reduces_to_sym_at_zero() {
        let (rep, cfg) = torus_ctx();
        let ctx = Context::new(&rep, cfg);
        let p = SymPoly::generator(cls("a")).mul(&SymPoly::generator(cls("ab")));
        let q = SymPoly::generator(cls("b"));
        let plain = sym_bracket(&ctx, &p, &q).unwrap();
        let k0 = sk_bracket(&ctx, &p, &q, &coeff_zero()).unwrap();
        assert_eq!(plain, k0);
    }

    #[test]
    fn sk_bracket_generator_example() {
        let (rep, cfg) = torus_ctx();
        let ctx = Context::new(&rep, cfg);
        let a = SymPoly::generator(cls("a"));
        let b = SymPoly::generator(cls("b"));
        let br = sk_bracket(&ctx, &a, &b, &coeff_one()).unwrap();
        // goldman part (degree 1) plus -1 * (a.b) * monomial ab (degree 2)
        let goldman_part = SymPoly::from_lincomb(&ctx.bracket(&cls("a"), &cls("b")).unwrap());
        let mut deform = SymPoly::zero();
        deform.add_term(vec![cls("a"), cls("b")], -coeff_one());
        assert_eq!(br, goldman_part.add(&deform));
    }

    #[test]
    fn pbw_ordered_tuples_unchanged() {
        let (rep, cfg) = torus_ctx();
        let ctx = Context::new(&rep, cfg);
        let e = pbw_normalize(&ctx, &[cls("a"), cls("a")]).unwrap();
        let mut expected = PbwElement::zero();
        expected.add_term(vec![cls("a"), cls("a")], HPoly::one());
        assert_eq!(e, expected);
    }

    #[test]
    fn pbw_single_swap() {
        let (rep, cfg) = torus_ctx();
        let ctx = Context::new(&rep, cfg);
        // b > a, so (b, a) rewrites to (a, b) + h [b, a]
        let e = pbw_normalize(&ctx, &[cls("b"), cls("a")]).unwrap();
        let mut expected = PbwElement::zero();
        expected.add_term(vec![cls("a"), cls("b")], HPoly::one());
        for (z, c) in ctx.bracket(&cls("b"), &cls("a")).unwrap().iter() {
            expected.add_term(vec![z.clone()], HPoly::constant(c.clone()).shift());
        }
        assert_eq!(e, expected);
        // (ab, a): a < ab, same shape
        let e2 = pbw_normalize(&ctx, &[cls("ab"), cls("a")]).unwrap();
        let mut expected2 = PbwElement::zero();
        expected2.add_term(vec![cls("a"), cls("ab")], HPoly::one());
        for (z, c) in ctx.bracket(&cls("ab"), &cls("a")).unwrap().iter() {
            expected2.add_term(vec![z.clone()], HPoly::constant(c.clone()).shift());
        }
        assert_eq!(e2, expected2);
    }

    #[test]
    fn vh_unit_and_associativity_instance() {
        let (rep, cfg) = torus_ctx();
        let ctx = Context::new(&rep, cfg);
        let one = PbwElement::<OrientedClass>::one();
        let x = PbwElement::generator(cls("ab"));
        assert_eq!(vh_multiply(&ctx, &one, &x).unwrap(), x);
        assert_eq!(vh_multiply(&ctx, &x, &one).unwrap(), x);
        let a = PbwElement::generator(cls("a"));
        let b = PbwElement::generator(cls("b"));
        let ab_then_a = vh_multiply(&ctx, &vh_multiply(&ctx, &a, &b).unwrap(), &a).unwrap();
        let a_then_ba = vh_multiply(&ctx, &a, &vh_multiply(&ctx, &b, &a).unwrap()).unwrap();
        assert_eq!(ab_then_a, a_then_ba);
    }

    #[test]
    fn commutator_is_h_times_bracket() {
        let (rep, cfg) = torus_ctx();
        let ctx = Context::new(&rep, cfg);
        for (x, y) in [("a", "b"), ("ab", "aB"), ("a", "aab")] {
            let comm = vh_commutator(
                &ctx,
                &PbwElement::generator(cls(x)),
                &PbwElement::generator(cls(y)),
            )
            .unwrap();
            let mut expected = PbwElement::zero();
            for (z, c) in ctx.bracket(&cls(x), &cls(y)).unwrap().iter() {
                expected.add_term(vec![z.clone()], HPoly::constant(c.clone()).shift());
            }
            assert_eq!(comm, expected, "pair ({x},{y})");
        }
    }

    #[test]
    fn h_zero_degenerates_to_commutative() {
        let (rep, cfg) = torus_ctx();
        let ctx = Context::new(&rep, cfg);
        let e1 = pbw_normalize(&ctx, &[cls("b"), cls("a"), cls("ab")]).unwrap();
        let e2 = pbw_normalize(&ctx, &[cls("ab"), cls("b")]).unwrap();
        let quantum = vh_multiply(&ctx, &e1, &e2).unwrap().at_h(&coeff_zero());
        let classical = e1.at_h(&coeff_zero()).mul(&e2.at_h(&coeff_zero()));
        assert_eq!(quantum, classical);
    }

    #[test]
    fn confluence_seeded_vs_leftmost() {
        let (rep, cfg) = torus_ctx();
        let ctx = Context::new(&rep, cfg);
        let tuple = [cls("ab"), cls("b"), cls("a"), cls("aB")];
        let l = pbw_normalize(&ctx, &tuple).unwrap();
        for seed in 0..5 {
            let s = pbw_normalize_with(&ctx, &tuple, RewriteStrategy::Seeded(seed)).unwrap();
            assert_eq!(l, s, "seed {seed}");
        }
    }

    #[test]
    fn stacking_examples() {
        let (rep, cfg) = torus_ctx();
        let ctx = Context::new(&rep, cfg);
        let empty = SymPoly::<OrientedClass>::one();
        assert_eq!(hs_stacking(&ctx, &empty, &empty).unwrap(), PbwElement::one());
        let ga = SymPoly::generator(cls("a"));
        let gb = SymPoly::generator(cls("b"));
        assert_eq!(
            hs_stacking(&ctx, &ga, &empty).unwrap(),
            PbwElement::generator(cls("a"))
        );
        // b stacked over a: ordering correction with one z term
        let stacked = hs_stacking(&ctx, &gb, &ga).unwrap();
        let mono: Vec<(Vec<OrientedClass>, HPoly)> = stacked
            .iter()
            .map(|(t, c)| (t.clone(), c.clone()))
            .collect();
        assert_eq!(mono.len(), 2);
        assert_eq!(mono[0].0, vec![cls("a"), cls("b")]);
        assert_eq!(mono[0].1, HPoly::one());
        assert_eq!(mono[1].0, vec![cls("ab")]);
        assert_eq!(mono[1].1.coefficient(0), coeff_zero());
        assert_eq!(crate::coeff::coeff_abs(&mono[1].1.coefficient(1)), coeff_one());
    }

    #[test]
    fn hpoly_arithmetic() {
        let h = HPoly::h();
        let p = h.mul(&h).add(&HPoly::constant(coeff_int(2)));
        assert_eq!(p.coefficient(0), coeff_int(2));
        assert_eq!(p.coefficient(2), coeff_one());
        assert_eq!(p.eval(&coeff_int(3)), coeff_int(11));
        assert_eq!(p.to_string_with_var('h'), "2 + 1*h^2");
        assert!(p.add(&p.neg()).is_zero());
    }
}
