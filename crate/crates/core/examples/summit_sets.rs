//! Super summit reduction, ultra summit set and reduced super summit set of
//! one braid, under both candidate policies.
//!
//! cargo run --release --example summit_sets -- "n=4; 1 2 3 1 2 1 3 3"

use std::time::Instant;

use garside::format::{braid_to_json, parse_braid};
use garside::summit::{
    cycling_orbit, generate_invariant_set, reduce_to_sss, CandidatePolicy, InvariantSetOptions,
    SetKind,
};

fn main() -> garside::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "n=4; 1 2 3 1 2 1 3 3 -2".into());
    let x = parse_braid(&text)?;
    let (s, w) = reduce_to_sss(&x);
    println!("x            {}", braid_to_json(&x));
    println!(
        "SSS rep      {}  (inf_s {}, sup_s {})",
        braid_to_json(&s),
        s.inf(),
        s.sup()
    );
    assert_eq!(x.conjugate(&w)?, s);
    println!("orbit period {}", cycling_orbit(&s).period());

    for kind in [SetKind::Uss, SetKind::Rsss] {
        for policy in [CandidatePolicy::Full, CandidatePolicy::Restricted] {
            let t = Instant::now();
            let r = generate_invariant_set(&x, InvariantSetOptions::new(kind).policy(policy))?;
            println!(
                "{:<5} {:<11} {:>5} elements {:>4} orbits {:>7} candidates  {:.2?}",
                format!("{kind:?}"),
                format!("{policy:?}"),
                r.element_count(),
                r.orbit_count(),
                r.candidates_tested,
                t.elapsed()
            );
            for y in r.elements() {
                assert_eq!(&x.conjugate(r.witness(y).unwrap())?, y);
            }
        }
    }
    Ok(())
}
