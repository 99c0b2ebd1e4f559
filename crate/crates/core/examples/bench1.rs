use loopalg::goldman::Context;
use loopalg::hyperbolic::rep_once_holed_torus;
use loopalg::intersect::EnumerationConfig;
use loopalg::words::OrientedClass;
use std::time::Instant;

fn main() {
    let rep = rep_once_holed_torus(3.0, 3.0, 4.0).unwrap();
    let c = |s: &str| OrientedClass::parse(s, 2).unwrap();
    // force a small cap to see one round's cost
    let cfg = EnumerationConfig { radius: Some(17), ..Default::default() };
    let ctx = Context::new(&rep, cfg);
    let t = Instant::now();
    let r = ctx.bracket(&c("aB"), &c("aabABabbabAAbb"));
    println!("result: {:?} in {:?}", r.map(|b| b.len()), t.elapsed());
}
