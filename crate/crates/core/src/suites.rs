//! Verification suite runners shared by the command-line front end and the
//! acceptance tests. Every report carries a `pass` flag and enough detail
//! to locate a failure.

use crate::center::{classify_class, ClassKind};
use crate::coeff::{coeff_int, coeff_zero};
use crate::error::EngineError;
use crate::goldman::Context;
use crate::hyperbolic::{dist, dist_to_axis, midpoint, translation_length, Representation, TwistFamily};
use crate::intersect::{algebraic_intersection_number, build_lift, CrossingDatum, EnumerationConfig};
use crate::poisson::{
    hs_stacking, pbw_normalize, pbw_normalize_with, sk_bracket, vh_commutator, HPoly, PbwElement,
    RewriteStrategy, SymPoly,
};
use crate::words::{enumerate_classes, OrientedClass, UnorientedClass};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Essential classes up to the given length, in class order.
pub fn essential_classes(rep: &Representation, max_len: usize) -> Vec<OrientedClass> {
    enumerate_classes(rep.rank(), max_len)
        .into_iter()
        .filter(|c| classify_class(rep, c) == ClassKind::Essential)
        .collect()
}

/// Unordered essential pairs with distinct geodesics.
fn distinct_pairs(classes: &[OrientedClass]) -> Vec<(OrientedClass, OrientedClass)> {
    let mut out = Vec::new();
    for (i, cx) in classes.iter().enumerate() {
        let (rx, _) = cx.primitive_root().expect("essential");
        let ux = UnorientedClass::from_oriented(&rx);
        for cy in classes.iter().skip(i + 1) {
            let (ry, _) = cy.primitive_root().expect("essential");
            if ux == UnorientedClass::from_oriented(&ry) {
                continue;
            }
            out.push((cx.clone(), cy.clone()));
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct BeardonReport {
    pub schema: u32,
    pub surface: String,
    pub max_len: usize,
    pub pairs: usize,
    pub crossings: usize,
    pub max_residual: f64,
    pub threshold: f64,
    pub homological_violations: Vec<String>,
    pub pass: bool,
}

/// Checks the length-angle-product identity at every crossing of every
/// essential pair up to `max_len`, and the exact signed-sum oracle.
pub fn beardon_sweep(
    ctx: &Context<'_>,
    max_len: usize,
    threshold: f64,
) -> Result<BeardonReport, EngineError> {
    let classes = essential_classes(ctx.rep(), max_len);
    let pairs = distinct_pairs(&classes);
    let per_pair: Vec<Result<(usize, f64, Option<String>), EngineError>> = pairs
        .par_iter()
        .map(|(cx, cy)| {
            let data = ctx.intersection(cx, cy)?;
            let mut max_res = 0.0f64;
            for d in data.iter() {
                let r = crate::intersect::verify_beardon(ctx.rep(), cx, cy, d)?;
                max_res = max_res.max(r);
            }
            let signed: i64 = data.iter().map(|d| d.sign as i64).sum();
            let expected = algebraic_intersection_number(ctx.rep(), cx, cy);
            let violation = (signed != expected).then(|| {
                format!("({cx}),({cy}): signed sum {signed} != homological pairing {expected}")
            });
            Ok((data.len(), max_res, violation))
        })
        .collect();
    let mut crossings = 0;
    let mut max_residual = 0.0f64;
    let mut homological_violations = Vec::new();
    for r in per_pair {
        let (n, res, viol) = r?;
        crossings += n;
        max_residual = max_residual.max(res);
        homological_violations.extend(viol);
    }
    let pass = max_residual < threshold && homological_violations.is_empty();
    Ok(BeardonReport {
        schema: 1,
        surface: ctx.rep().label().to_string(),
        max_len,
        pairs: pairs.len(),
        crossings,
        max_residual,
        threshold,
        homological_violations,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ZigzagReport {
    pub schema: u32,
    pub surface: String,
    pub samples: usize,
    pub max_spacing_dev: f64,
    pub max_midpoint_dev: f64,
    pub max_axis_dev: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Samples crossings, builds the piecewise-geodesic lift, and checks that
/// consecutive same-kind midpoints are one product-length apart, that the
/// in-between midpoint bisects them, and that all midpoints sit on the
/// product axis.
pub fn zigzag_sweep(
    ctx: &Context<'_>,
    max_len: usize,
    samples: usize,
    seed: u64,
    threshold: f64,
) -> Result<ZigzagReport, EngineError> {
    let classes = essential_classes(ctx.rep(), max_len);
    let mut candidates: Vec<(OrientedClass, OrientedClass, CrossingDatum)> = Vec::new();
    for (cx, cy) in distinct_pairs(&classes) {
        let data = ctx.intersection(&cx, &cy)?;
        for d in data.iter() {
            // lifts need a hyperbolic product
            if ctx.rep().evaluate_class(&d.product).is_hyperbolic() {
                candidates.push((cx.clone(), cy.clone(), d.clone()));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    candidates.shuffle(&mut rng);
    candidates.truncate(samples);
    let mut max_spacing_dev = 0.0f64;
    let mut max_midpoint_dev = 0.0f64;
    let mut max_axis_dev = 0.0f64;
    for (cx, cy, d) in &candidates {
        // two piece-pairs on each side: far vertices sit e^{k l} out along
        // the axis and lose float precision much past that
        let lift = build_lift(ctx.rep(), cx, cy, d, 2)?;
        let l_prod = translation_length(&ctx.rep().evaluate_class(&d.product))?;
        let mids = &lift.midpoints;
        // along-axis coordinates resolve spacings at machine precision,
        // where point-to-point distances bottom out near acosh(1)
        let chart = crate::hyperbolic::axis_chart(&lift.axis);
        let coords: Vec<f64> = mids
            .iter()
            .map(|m| crate::hyperbolic::axis_position(&chart, *m))
            .collect();
        for t in 0..mids.len().saturating_sub(2) {
            let spacing = dist(mids[t], mids[t + 2]);
            max_spacing_dev = max_spacing_dev.max((spacing - l_prod).abs());
            max_spacing_dev =
                max_spacing_dev.max(((coords[t + 2] - coords[t]).abs() - l_prod).abs());
            let between = midpoint(mids[t], mids[t + 2]);
            max_midpoint_dev = max_midpoint_dev.max(dist(between, mids[t + 1]));
            max_midpoint_dev = max_midpoint_dev
                .max((coords[t + 1] - (coords[t] + coords[t + 2]) / 2.0).abs());
        }
        for m in mids {
            max_axis_dev = max_axis_dev.max(dist_to_axis(&lift.axis, *m));
        }
    }
    let pass = max_spacing_dev < threshold && max_midpoint_dev < threshold && max_axis_dev < threshold;
    Ok(ZigzagReport {
        schema: 1,
        surface: ctx.rep().label().to_string(),
        samples: candidates.len(),
        max_spacing_dev,
        max_midpoint_dev,
        max_axis_dev,
        threshold,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TwistRow {
    pub t: f64,
    pub theta: f64,
    pub theta_reversed: f64,
    pub l_other: f64,
    pub l_product: f64,
    pub trace_curve: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TwistReport {
    pub schema: u32,
    pub surface: String,
    pub curve: String,
    pub steps: usize,
    pub t_max: f64,
    pub rows: Vec<TwistRow>,
    pub strictly_increasing: bool,
    pub reversed_strictly_decreasing: bool,
    pub trace_dev: f64,
    pub pass: bool,
}

/// Scans the left twist along a registered curve and records the crossing
/// angle with the dual generator, lengths, and the (constant) curve trace.
pub fn twist_scan(
    rep: &Representation,
    curve: &OrientedClass,
    t_max: f64,
    steps: usize,
    cfg: &EnumerationConfig,
) -> Result<TwistReport, EngineError> {
    let fam = TwistFamily::new(rep, curve)?;
    let other_index = fam.affected().first().copied().ok_or_else(|| {
        crate::hyperbolic::HypError::NoRegisteredSplitting(curve.to_string())
    })?;
    let other_letter = (other_index + 1) as i32;
    let other = OrientedClass::from_word(
        &crate::words::Word::new(rep.rank(), vec![other_letter]).expect("generator letter"),
    );
    let other_rev = other.inverse();
    let mut rows = Vec::with_capacity(steps);
    let base_trace = rep.evaluate_class(curve).trace();
    for i in 0..steps {
        let t = if steps <= 1 {
            0.0
        } else {
            t_max * i as f64 / (steps - 1) as f64
        };
        let rt = fam.at(t);
        let ctx_t = Context::new(&rt, *cfg);
        let data = ctx_t.intersection(curve, &other)?;
        let data_rev = ctx_t.intersection(curve, &other_rev)?;
        if data.len() != 1 || data_rev.len() != 1 {
            return Err(EngineError::Intersect(
                crate::intersect::IntersectError::DegenerateClass(format!(
                    "expected a single ({curve}),({other}) crossing, got {} and {}",
                    data.len(),
                    data_rev.len()
                )),
            ));
        }
        let l_other = translation_length(&rt.evaluate_class(&other))?;
        let l_product = translation_length(&rt.evaluate_class(&data[0].product))?;
        rows.push(TwistRow {
            t,
            theta: data[0].angle,
            theta_reversed: data_rev[0].angle,
            l_other,
            l_product,
            trace_curve: rt.evaluate_class(curve).trace(),
        });
    }
    let strictly_increasing = rows.windows(2).all(|w| w[1].theta > w[0].theta);
    let reversed_strictly_decreasing = rows
        .windows(2)
        .all(|w| w[1].theta_reversed < w[0].theta_reversed);
    let trace_dev = rows
        .iter()
        .map(|r| (r.trace_curve - base_trace).abs())
        .fold(0.0f64, f64::max);
    let pass = strictly_increasing && reversed_strictly_decreasing && trace_dev < 1e-12;
    Ok(TwistReport {
        schema: 1,
        surface: rep.label().to_string(),
        curve: curve.to_string(),
        steps,
        t_max,
        rows,
        strictly_increasing,
        reversed_strictly_decreasing,
        trace_dev,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct JacobiReport {
    pub schema: u32,
    pub surface: String,
    pub k_values: Vec<i64>,
    pub triples: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Exact Jacobi identity for the deformed bracket on sampled class triples.
pub fn jacobi_k_sweep(
    ctx: &Context<'_>,
    max_len: usize,
    triples: usize,
    seed: u64,
    k_values: &[i64],
) -> Result<JacobiReport, EngineError> {
    let pool = essential_classes(ctx.rep(), max_len);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = Vec::with_capacity(triples);
    while chosen.len() < triples {
        let i = rng.random_range(0..pool.len());
        let j = rng.random_range(0..pool.len());
        let l = rng.random_range(0..pool.len());
        chosen.push((pool[i].clone(), pool[j].clone(), pool[l].clone()));
    }
    let results: Vec<Result<Option<String>, EngineError>> = chosen
        .par_iter()
        .map(|(x, y, z)| {
            for k in k_values {
                let kq = coeff_int(*k);
                let gx = SymPoly::generator(x.clone());
                let gy = SymPoly::generator(y.clone());
                let gz = SymPoly::generator(z.clone());
                let t1 = sk_bracket(ctx, &gx, &sk_bracket(ctx, &gy, &gz, &kq)?, &kq)?;
                let t2 = sk_bracket(ctx, &gy, &sk_bracket(ctx, &gz, &gx, &kq)?, &kq)?;
                let t3 = sk_bracket(ctx, &gz, &sk_bracket(ctx, &gx, &gy, &kq)?, &kq)?;
                let jac = t1.add(&t2).add(&t3);
                if !jac.is_zero() {
                    return Ok(Some(format!(
                        "k={k}: jacobi(({x}),({y}),({z})) = {jac}"
                    )));
                }
            }
            Ok(None)
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        if let Some(f) = r? {
            failures.push(f);
        }
    }
    Ok(JacobiReport {
        schema: 1,
        surface: ctx.rep().label().to_string(),
        k_values: k_values.to_vec(),
        triples,
        failures: failures.clone(),
        pass: failures.is_empty(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PbwReport {
    pub schema: u32,
    pub surface: String,
    pub confluence_cases: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Normal-form confluence on random inputs, the h -> 0 degeneration to the
/// commutative product, and the defining commutator relation.
pub fn pbw_sweep(ctx: &Context<'_>, cases: usize, seed: u64) -> Result<PbwReport, EngineError> {
    let pool = enumerate_classes(ctx.rep().rank(), 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let len = rng.random_range(2..=4);
        let tuple: Vec<OrientedClass> = (0..len)
            .map(|_| pool[rng.random_range(0..pool.len())].clone())
            .collect();
        let leftmost = pbw_normalize(ctx, &tuple)?;
        let seeded = pbw_normalize_with(ctx, &tuple, RewriteStrategy::Seeded(seed ^ case as u64))?;
        if leftmost != seeded {
            failures.push(format!("confluence failed on case {case}"));
            continue;
        }
        // h -> 0 recovers the commutative product of the two halves
        let split = len / 2;
        let left = pbw_normalize(ctx, &tuple[..split])?;
        let right = pbw_normalize(ctx, &tuple[split..])?;
        let product = crate::poisson::vh_multiply(ctx, &left, &right)?;
        let classical = left.at_h(&coeff_zero()).mul(&right.at_h(&coeff_zero()));
        if product.at_h(&coeff_zero()) != classical {
            failures.push(format!("h=0 degeneration failed on case {case}"));
        }
    }
    // commutator of generators is h times the loop bracket
    let gens = essential_classes(ctx.rep(), 2);
    for x in gens.iter().take(4) {
        for y in gens.iter().take(4) {
            let comm = vh_commutator(ctx, &PbwElement::generator(x.clone()), &PbwElement::generator(y.clone()))?;
            let mut expected = PbwElement::zero();
            for (z, c) in ctx.bracket(x, y)?.iter() {
                expected.add_term(vec![z.clone()], HPoly::constant(c.clone()).shift());
            }
            if comm != expected {
                failures.push(format!("commutator relation failed on ({x}),({y})"));
            }
        }
    }
    Ok(PbwReport {
        schema: 1,
        surface: ctx.rep().label().to_string(),
        confluence_cases: cases,
        failures: failures.clone(),
        pass: failures.is_empty(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SkeinReport {
    pub schema: u32,
    pub surface: String,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Stacking-product checks for the homotopy-skein reading: the empty link
/// is the unit, parallel copies stack without correction terms, and a
/// transverse stack produces exactly the ordering correction.
pub fn skein_sweep(ctx: &Context<'_>) -> Result<SkeinReport, EngineError> {
    let mut failures = Vec::new();
    let rank = ctx.rep().rank();
    let a = OrientedClass::parse("a", rank).expect("rank >= 2");
    let b = OrientedClass::parse("b", rank).expect("rank >= 2");
    let empty = SymPoly::one();
    let ga = SymPoly::generator(a.clone());
    let gb = SymPoly::generator(b.clone());

    if hs_stacking(ctx, &empty, &empty)? != PbwElement::one() {
        failures.push("empty link is not the unit".into());
    }
    if hs_stacking(ctx, &ga, &empty)? != PbwElement::generator(a.clone())
        || hs_stacking(ctx, &empty, &ga)? != PbwElement::generator(a.clone())
    {
        failures.push("empty link does not act as identity".into());
    }
    // two parallel copies of one class have disjoint projections
    let parallel = hs_stacking(ctx, &ga, &ga)?;
    let expected_parallel = {
        let mut e = PbwElement::zero();
        e.add_term(vec![a.clone(), a.clone()], HPoly::one());
        e
    };
    if parallel != expected_parallel {
        failures.push("parallel stacking produced correction terms".into());
    }
    // stacking b over a picks up exactly the z-weighted bracket correction
    let stacked = hs_stacking(ctx, &gb, &ga)?;
    let mut expected = PbwElement::zero();
    expected.add_term(vec![a.clone(), b.clone()], HPoly::one());
    for (z, c) in ctx.bracket(&b, &a)?.iter() {
        expected.add_term(vec![z.clone()], HPoly::constant(c.clone()).shift());
    }
    if stacked != expected {
        failures.push("transverse stacking does not match ordering correction".into());
    }
    Ok(SkeinReport {
        schema: 1,
        surface: ctx.rep().label().to_string(),
        failures: failures.clone(),
        pass: failures.is_empty(),
    })
}
