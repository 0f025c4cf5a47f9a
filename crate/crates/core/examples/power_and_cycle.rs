//! Finds the least power of a braid that cycles to a cyclically weighted
//! braid, under the default and the loose budgets.
//!
//! cargo run --release --example power_and_cycle -- "n=4; 1 2 -3 2"

use garside::format::{braid_to_json, parse_braid};
use garside::summit::{is_cyclically_weighted, power_and_cycle, PowerCycleOptions};

fn main() -> garside::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "n=4; 1 2 -3 2".into());
    let x = parse_braid(&text)?;
    println!(
        "x = {}  cyclically weighted: {}",
        braid_to_json(&x),
        is_cyclically_weighted(&x)
    );
    for (label, opts) in [
        ("default", PowerCycleOptions::for_index(x.n())),
        ("loose", PowerCycleOptions::loose(&x)),
    ] {
        match power_and_cycle(&x, opts) {
            Some(r) => {
                assert_eq!(x.pow(r.power as i64).conjugate(&r.witness)?, r.braid);
                println!(
                    "{label:<8} power {} after {} cyclings: {}",
                    r.power,
                    r.cyclings,
                    braid_to_json(&r.braid)
                );
            }
            None => println!("{label:<8} none within {opts:?}"),
        }
    }
    Ok(())
}
