//! Executable form of the center theorems: class classification, simple
//! probe generation, centrality testing in the symmetric, deformed, and
//! quantized algebras, and the whole-theorem desk-scale verification.

use crate::coeff::{coeff_int, Coeff};
use crate::goldman::{BracketError, Context};
use crate::hyperbolic::Representation;
use crate::error::EngineError;
use crate::intersect::{is_simple, IntersectError};
use crate::poisson::{sk_bracket, sym_bracket, vh_commutator, PbwElement, SymPoly};
use crate::words::{enumerate_classes, OrientedClass, UnorientedClass};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Trivial,
    Peripheral,
    Essential,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassKind::Trivial => "trivial",
            ClassKind::Peripheral => "peripheral",
            ClassKind::Essential => "essential",
        };
        write!(f, "{s}")
    }
}

/// Exact classification by conjugacy tests against boundary-word powers.
pub fn classify_class(rep: &Representation, c: &OrientedClass) -> ClassKind {
    if c.is_trivial() {
        ClassKind::Trivial
    } else if rep.class_is_peripheral(c) {
        ClassKind::Peripheral
    } else {
        ClassKind::Essential
    }
}

/// Essential simple classes up to the given length, deduplicated up to
/// inversion, in class order.
pub fn probe_set(ctx: &Context<'_>, max_len: usize) -> Result<Vec<OrientedClass>, IntersectError> {
    let mut probes = Vec::new();
    for c in enumerate_classes(ctx.rep().rank(), max_len) {
        if classify_class(ctx.rep(), &c) != ClassKind::Essential {
            continue;
        }
        if UnorientedClass::from_oriented(&c).rep() != &c {
            continue;
        }
        if is_simple(ctx.rep(), &c, ctx.cfg())? {
            probes.push(c);
        }
    }
    Ok(probes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CentralityStatus {
    CertifiedNoncentral,
    ConsistentWithCentral,
}

/// A probe certifying noncentrality: the bracket of probe^power with the
/// tested element, exactly nonzero.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub probe: String,
    pub power: u32,
    pub bracket: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ProbeBound {
    pub max_probe_len: usize,
    pub max_power: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct CentralityVerdict {
    pub status: CentralityStatus,
    pub witness: Option<Witness>,
    pub probe_bound: ProbeBound,
}

impl CentralityVerdict {
    pub fn is_certified_noncentral(&self) -> bool {
        self.status == CentralityStatus::CertifiedNoncentral
    }
}

/// Element whose centrality is tested, tagged with the algebra it lives in.
#[derive(Debug, Clone)]
pub enum CenterElement {
    /// S(G) with the Leibniz-extended loop bracket.
    Sym(SymPoly<OrientedClass>),
    /// S_k(G) with the deformed bracket.
    Sk { elem: SymPoly<OrientedClass>, k: Coeff },
    /// S(GW), unoriented classes.
    SymUnoriented(SymPoly<UnorientedClass>),
    /// Quantized algebra of oriented loops, commutator bracket.
    Vh(PbwElement<OrientedClass>),
    /// Quantized algebra of unoriented loops.
    VhUnoriented(PbwElement<UnorientedClass>),
}

fn describe_sym<C: Ord + Clone + fmt::Display>(p: &SymPoly<C>) -> BTreeMap<String, String> {
    p.iter()
        .map(|(m, k)| {
            let key = if m.is_empty() {
                "1".to_string()
            } else {
                m.iter().map(|c| format!("({c})")).collect::<String>()
            };
            (key, crate::coeff::coeff_to_string(k))
        })
        .collect()
}

fn describe_pbw<C: Ord + Clone + fmt::Display>(p: &PbwElement<C>) -> BTreeMap<String, String> {
    p.iter()
        .map(|(t, c)| {
            let key = if t.is_empty() {
                "1".to_string()
            } else {
                t.iter().map(|c| format!("({c})")).collect::<String>()
            };
            (key, c.to_string_with_var('h'))
        })
        .collect()
}

/// Brackets probe powers against the element until one is exactly nonzero.
/// A nonzero bracket certifies noncentrality; exhausting the probe grid
/// yields a bounded consistency claim, never a proof of centrality.
pub fn is_central(
    ctx: &Context<'_>,
    elem: &CenterElement,
    probes: &[OrientedClass],
    max_power: u32,
) -> Result<CentralityVerdict, BracketError> {
    let max_probe_len = probes.iter().map(|p| p.len()).max().unwrap_or(0);
    let bound = ProbeBound {
        max_probe_len,
        max_power,
    };
    for probe in probes {
        for n in 1..=max_power {
            let powered = probe.power(n);
            let witness_bracket: Option<BTreeMap<String, String>> = match elem {
                CenterElement::Sym(p) => {
                    let b = sym_bracket(ctx, &SymPoly::generator(powered.clone()), p)?;
                    (!b.is_zero()).then(|| describe_sym(&b))
                }
                CenterElement::Sk { elem: p, k } => {
                    let b = sk_bracket(ctx, &SymPoly::generator(powered.clone()), p, k)?;
                    (!b.is_zero()).then(|| describe_sym(&b))
                }
                CenterElement::SymUnoriented(p) => {
                    let u = UnorientedClass::from_oriented(&powered);
                    let b = sym_bracket(ctx, &SymPoly::generator(u), p)?;
                    (!b.is_zero()).then(|| describe_sym(&b))
                }
                CenterElement::Vh(p) => {
                    let b = vh_commutator(ctx, &PbwElement::generator(powered.clone()), p)?;
                    (!b.is_zero()).then(|| describe_pbw(&b))
                }
                CenterElement::VhUnoriented(p) => {
                    let u = UnorientedClass::from_oriented(&powered);
                    let b = vh_commutator(ctx, &PbwElement::generator(u), p)?;
                    (!b.is_zero()).then(|| describe_pbw(&b))
                }
            };
            if let Some(bracket) = witness_bracket {
                return Ok(CentralityVerdict {
                    status: CentralityStatus::CertifiedNoncentral,
                    witness: Some(Witness {
                        probe: probe.to_string(),
                        power: n,
                        bracket,
                    }),
                    probe_bound: bound,
                });
            }
        }
    }
    Ok(CentralityVerdict {
        status: CentralityStatus::ConsistentWithCentral,
        witness: None,
        probe_bound: bound,
    })
}

/// Algebra readings exercised by the center suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reading {
    Sym,
    Sk(i64),
    GwSym,
    Vh,
    GwVh,
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reading::Sym => write!(f, "sym"),
            Reading::Sk(k) => write!(f, "sk[k={k}]"),
            Reading::GwSym => write!(f, "gw-sym"),
            Reading::Vh => write!(f, "vh"),
            Reading::GwVh => write!(f, "gw-vh"),
        }
    }
}

impl Reading {
    fn element_for(&self, c: &OrientedClass) -> CenterElement {
        match self {
            Reading::Sym => CenterElement::Sym(SymPoly::generator(c.clone())),
            Reading::Sk(k) => CenterElement::Sk {
                elem: SymPoly::generator(c.clone()),
                k: coeff_int(*k),
            },
            Reading::GwSym => CenterElement::SymUnoriented(SymPoly::generator(
                UnorientedClass::from_oriented(c),
            )),
            Reading::Vh => CenterElement::Vh(PbwElement::generator(c.clone())),
            Reading::GwVh => CenterElement::VhUnoriented(PbwElement::generator(
                UnorientedClass::from_oriented(c),
            )),
        }
    }

    fn unoriented(&self) -> bool {
        matches!(self, Reading::GwSym | Reading::GwVh)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub class: String,
    pub kind: ClassKind,
    pub status: CentralityStatus,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReadingReport {
    pub reading: String,
    pub classes: Vec<ClassReport>,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CenterSuiteReport {
    pub schema: u32,
    pub surface: String,
    pub max_len: usize,
    pub essential_max_len: usize,
    pub max_power: u32,
    pub probe_max_len: usize,
    pub probes: Vec<String>,
    pub readings: Vec<ReadingReport>,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct CenterSuiteParams {
    pub max_len: usize,
    pub essential_max_len: usize,
    pub max_power: u32,
    pub probe_max_len: usize,
    pub readings: Vec<Reading>,
}

impl Default for CenterSuiteParams {
    fn default() -> Self {
        CenterSuiteParams {
            max_len: 6,
            essential_max_len: 4,
            max_power: 3,
            probe_max_len: 2,
            readings: vec![
                Reading::Sym,
                Reading::GwSym,
                Reading::Sk(0),
                Reading::Sk(1),
                Reading::Sk(-1),
                Reading::Vh,
                Reading::GwVh,
            ],
        }
    }
}

/// Runs the center theorems at desk scale: peripheral and trivial classes
/// must bracket to zero with every probe power, essential classes must be
/// certified noncentral by some probe.
pub fn center_theorem_suite(
    ctx: &Context<'_>,
    params: &CenterSuiteParams,
) -> Result<CenterSuiteReport, EngineError> {
    let probes = probe_set(ctx, params.probe_max_len)?;
    let classes = enumerate_classes(ctx.rep().rank(), params.max_len);
    let mut readings = Vec::new();
    for reading in &params.readings {
        let targets: Vec<(OrientedClass, ClassKind)> = classes
            .iter()
            .filter_map(|c| {
                let kind = classify_class(ctx.rep(), c);
                let relevant = match kind {
                    ClassKind::Trivial | ClassKind::Peripheral => true,
                    ClassKind::Essential => c.len() <= params.essential_max_len,
                };
                if !relevant {
                    return None;
                }
                // unoriented readings see each inverse pair once
                if reading.unoriented() && UnorientedClass::from_oriented(c).rep() != c {
                    return None;
                }
                Some((c.clone(), kind))
            })
            .collect();
        let results: Vec<Result<ClassReport, EngineError>> = targets
            .par_iter()
            .map(|(c, kind)| {
                let elem = reading.element_for(c);
                let verdict = is_central(ctx, &elem, &probes, params.max_power)?;
                Ok(ClassReport {
                    class: c.to_string(),
                    kind: *kind,
                    status: verdict.status,
                    witness: verdict.witness,
                })
            })
            .collect();
        let mut class_reports = Vec::with_capacity(results.len());
        for r in results {
            class_reports.push(r?);
        }
        let mut violations = Vec::new();
        for cr in &class_reports {
            match (cr.kind, cr.status) {
                (ClassKind::Trivial | ClassKind::Peripheral, CentralityStatus::CertifiedNoncentral) => {
                    violations.push(format!(
                        "{reading}: ({}) is {} but a probe bracket was nonzero",
                        cr.class, cr.kind
                    ));
                }
                (ClassKind::Essential, CentralityStatus::ConsistentWithCentral) => {
                    violations.push(format!(
                        "{reading}: essential class ({}) was not certified noncentral",
                        cr.class
                    ));
                }
                _ => {}
            }
        }
        readings.push(ReadingReport {
            reading: reading.to_string(),
            classes: class_reports,
            violations,
        });
    }
    let pass = readings.iter().all(|r| r.violations.is_empty());
    Ok(CenterSuiteReport {
        schema: 1,
        surface: ctx.rep().label().to_string(),
        max_len: params.max_len,
        essential_max_len: params.essential_max_len,
        max_power: params.max_power,
        probe_max_len: params.probe_max_len,
        probes: probes.iter().map(|p| p.to_string()).collect(),
        readings,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersect::EnumerationConfig;
    use crate::hyperbolic::{rep_once_holed_torus, rep_pair_of_pants};

    fn cls(s: &str) -> OrientedClass {
        OrientedClass::parse(s, 2).unwrap()
    }

    #[test]
    fn classification_examples() {
        let rep = rep_once_holed_torus(3.0, 3.0, 4.0).unwrap();
        assert_eq!(classify_class(&rep, &cls("")), ClassKind::Trivial);
        assert_eq!(classify_class(&rep, &cls("abAB")), ClassKind::Peripheral);
        assert_eq!(classify_class(&rep, &cls("baBA")), ClassKind::Peripheral);
        assert_eq!(classify_class(&rep, &cls("ab")), ClassKind::Essential);
        // peripheral powers stay peripheral
        let boundary = cls("abAB");
        for n in 1..=3 {
            assert_eq!(
                classify_class(&rep, &boundary.power(n)),
                ClassKind::Peripheral
            );
        }
    }

    #[test]
    fn probe_sets() {
        let rep = rep_once_holed_torus(3.0, 3.0, 4.0).unwrap();
        let ctx = Context::new(&rep, EnumerationConfig::default());
        let probes = probe_set(&ctx, 2).unwrap();
        let names: Vec<String> = probes.iter().map(|p| p.to_string()).collect();
        for expected in ["a", "b", "ab"] {
            assert!(names.contains(&expected.to_string()), "missing {expected}");
        }
        assert!(!names.contains(&"abAB".to_string()));

        let pants = rep_pair_of_pants(1.0, 1.2, 1.4).unwrap();
        let pctx = Context::new(&pants, EnumerationConfig::default());
        assert!(probe_set(&pctx, 3).unwrap().is_empty());
    }

    #[test]
    fn verdict_examples() {
        let rep = rep_once_holed_torus(3.0, 3.0, 4.0).unwrap();
        let ctx = Context::new(&rep, EnumerationConfig::default());
        let probes = probe_set(&ctx, 2).unwrap();

        let boundary = CenterElement::Sym(SymPoly::generator(cls("abAB")));
        let v = is_central(&ctx, &boundary, &probes, 3).unwrap();
        assert_eq!(v.status, CentralityStatus::ConsistentWithCentral);
        assert!(v.witness.is_none());

        let constant = CenterElement::Sym(SymPoly::generator(cls("")));
        let v = is_central(&ctx, &constant, &probes, 3).unwrap();
        assert_eq!(v.status, CentralityStatus::ConsistentWithCentral);

        let gen_a = CenterElement::Sym(SymPoly::generator(cls("a")));
        let v = is_central(&ctx, &gen_a, &probes, 3).unwrap();
        assert!(v.is_certified_noncentral());
        let w = v.witness.unwrap();
        assert_eq!((w.probe.as_str(), w.power), ("b", 1));
        assert_eq!(w.bracket.len(), 1);
        assert!(w.bracket.contains_key("(ab)"));
    }

    #[test]
    fn monotonicity_of_certification() {
        let rep = rep_once_holed_torus(3.0, 3.0, 4.0).unwrap();
        let ctx = Context::new(&rep, EnumerationConfig::default());
        let probes_small = vec![cls("b")];
        let probes_large = probe_set(&ctx, 2).unwrap();
        let elem = CenterElement::Sym(SymPoly::generator(cls("a")));
        let small = is_central(&ctx, &elem, &probes_small, 1).unwrap();
        assert!(small.is_certified_noncentral());
        let large = is_central(&ctx, &elem, &probes_large, 3).unwrap();
        assert!(large.is_certified_noncentral());
    }

    #[test]
    fn witness_survives_metric_change() {
        let r1 = rep_once_holed_torus(3.0, 3.0, 4.0).unwrap();
        let r2 = rep_once_holed_torus(3.0, 4.0, 5.0).unwrap();
        let c1 = Context::new(&r1, EnumerationConfig::default());
        let c2 = Context::new(&r2, EnumerationConfig::default());
        let probes = probe_set(&c1, 2).unwrap();
        for target in ["a", "ab", "aab"] {
            let elem = CenterElement::Sym(SymPoly::generator(cls(target)));
            let v1 = is_central(&c1, &elem, &probes, 3).unwrap();
            assert!(v1.is_certified_noncentral());
            let w = v1.witness.unwrap();
            let probe = cls(&w.probe);
            let b2 = c2
                .bracket(&probe.power(w.power), &cls(target))
                .unwrap();
            assert!(!b2.is_zero(), "witness for {target} died at second metric");
        }
    }

    #[test]
    fn small_suite_run() {
        let rep = rep_once_holed_torus(3.0, 3.0, 4.0).unwrap();
        let ctx = Context::new(&rep, EnumerationConfig::default());
        let params = CenterSuiteParams {
            max_len: 4,
            essential_max_len: 2,
            max_power: 2,
            probe_max_len: 2,
            readings: vec![Reading::Sym, Reading::GwSym, Reading::Sk(1), Reading::Vh],
        };
        let report = center_theorem_suite(&ctx, &params).unwrap();
        assert!(report.pass, "violations: {:?}",
            report.readings.iter().flat_map(|r| &r.violations).collect::<Vec<_>>());
        // the boundary class must appear as consistent-with-central
        let sym = &report.readings[0];
        assert!(sym.classes.iter().any(|c| c.class == "abAB"
            && c.kind == ClassKind::Peripheral
            && c.status == CentralityStatus::ConsistentWithCentral));
    }
}
