//! The quasi-reducible 4-factor braid in B7 whose reduced super summit set
//! has ten cycling orbits, and the conjugate that is cyclically weighted.
//!
//! cargo run --release --example quasi_reducible_b7

use std::time::Instant;

use garside::format::braid_to_json;
use garside::summit::{
    generate_invariant_set, is_cyclically_weighted, InvariantSetOptions, SetKind,
};
use garside::{normalize, BraidWord, CanonicalBraid};

fn main() -> garside::Result<()> {
    let word = [2, 1, 3, 2, 5, 2, 5, 6, 2, 6, 5, 2, 5, 4, 6, 5];
    let x = normalize(&BraidWord::from_signed(7, &word)?);
    println!("x = {}", braid_to_json(&x));
    println!("cyclically weighted: {}", is_cyclically_weighted(&x));

    let s5 = CanonicalBraid::generator(7, 5)?;
    let y = x.conjugate(&s5)?;
    println!("s5^-1 x s5 = {}", braid_to_json(&y));
    println!("cyclically weighted: {}", is_cyclically_weighted(&y));

    let t = Instant::now();
    let r = generate_invariant_set(&x, InvariantSetOptions::new(SetKind::Rsss))?;
    println!(
        "RSSS: {} elements in {} orbits ({:.2?})",
        r.element_count(),
        r.orbit_count(),
        t.elapsed()
    );
    for (i, o) in r.orbits.iter().enumerate() {
        let cw = o
            .elements
            .iter()
            .filter(|e| is_cyclically_weighted(e))
            .count();
        println!(
            "  orbit {:>2}: period {}, {} cyclically weighted",
            i + 1,
            o.period(),
            cw
        );
    }
    Ok(())
}
