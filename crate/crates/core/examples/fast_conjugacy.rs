//! Fast USS of a generic random braid, then conjugacy decisions in every
//! mode for a conjugate pair and an unrelated pair.
//!
//! cargo run --release --example fast_conjugacy -- 8 12 42

use garside::conjugacy::{decide_conjugacy, fast_uss, Mode};
use garside::format::render_word;
use garside::stats::{sample_random_braid, RandomBraidSpec};

fn arg(i: usize, default: u64) -> u64 {
    std::env::args()
        .nth(i)
        .and_then(|a| a.parse().ok())
        .unwrap_or(default)
}

fn main() -> garside::Result<()> {
    let (n, k, seed) = (arg(1, 8) as usize, arg(2, 12) as usize, arg(3, 42));
    let x = sample_random_braid(&RandomBraidSpec::positive(n, k, seed)).braid;
    let w = sample_random_braid(&RandomBraidSpec::positive(n, k, seed + 1)).braid;
    let y = x.conjugate(&w)?;
    let z = sample_random_braid(&RandomBraidSpec::positive(n, k, seed + 2)).braid;

    let f = fast_uss(&x);
    println!(
        "fast USS of x: valid {}, {} elements, {} cyclings",
        f.valid,
        f.set.element_count(),
        f.cyclings_used
    );

    for (label, other) in [("x ~ w^-1 x w", &y), ("x ~ z", &z)] {
        for mode in [Mode::Fast, Mode::Exact, Mode::Auto] {
            let c = decide_conjugacy(&x, other, mode)?;
            println!(
                "{label:<13} {mode:<5?} -> {:?} via {:?} in {:.2?}",
                c.verdict, c.mode, c.elapsed
            );
            if let Some(v) = &c.witness {
                assert_eq!(&x.conjugate(v)?, other);
                if mode == Mode::Auto {
                    println!(
                        "  witness ({} factors): {}",
                        v.len(),
                        render_word(&v.to_word())
                    );
                }
            }
            if let Some(s) = c.separation {
                println!("  separated by summit invariants {:?} vs {:?}", s.x, s.y);
            }
        }
    }
    Ok(())
}
