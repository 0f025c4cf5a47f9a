//! Left-weighted normal form, products, inverses and the text/JSON formats.
//!
//! cargo run --example normal_form -- "n=5; 1 -2 3 D 4"

use garside::format::{braid_to_json, parse_braid, render_word};
use garside::summit::cycling;
use garside::CanonicalBraid;

fn main() -> garside::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "n=4; 1 2 -3 1 1 2 D -1".into());
    let x = parse_braid(&text)?;

    println!("input      {text}");
    println!("inf, sup   {}, {}", x.inf(), x.sup());
    for (i, f) in x.factors().iter().enumerate() {
        let word: Vec<usize> = f.reduced_word().iter().map(|g| g.get()).collect();
        println!(
            "x{:<2}        images {:?}  word {:?}",
            i + 1,
            f.images(),
            word
        );
    }
    println!("json       {}", braid_to_json(&x));
    println!("expanded   {}", render_word(&x.to_word()));

    let inv = x.invert();
    println!("x^-1       {}", braid_to_json(&inv));
    assert!(x.multiply(&inv)?.is_identity());

    let squared = x.pow(2);
    println!("x^2        inf {} sup {}", squared.inf(), squared.sup());

    let delta = CanonicalBraid::delta_power(x.n(), 1);
    println!("tau(x)     {}", braid_to_json(&x.tau_conjugate(1)));
    assert_eq!(x.conjugate(&delta)?, x.tau_conjugate(1));

    if !x.is_empty() {
        let (c, t) = cycling(&x);
        println!(
            "cycling    {}  (conjugator {:?})",
            braid_to_json(&c),
            t.images()
        );
    }
    Ok(())
}
