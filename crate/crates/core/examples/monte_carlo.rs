//! Runs every Monte-Carlo experiment at one `(n, k)` and prints the
//! estimate, its Wilson interval and the theoretical bound.
//!
//! cargo run --release --example monte_carlo -- 6 5 5000 1

use garside::stats::{mc_experiment, Experiment};

fn arg(i: usize, default: u64) -> u64 {
    std::env::args()
        .nth(i)
        .and_then(|a| a.parse().ok())
        .unwrap_or(default)
}

fn main() -> garside::Result<()> {
    let (n, k) = (arg(1, 6) as usize, arg(2, 5) as usize);
    let (samples, seed) = (arg(3, 2000), arg(4, 1));
    println!("n={n} k={k} samples={samples} seed={seed}");
    println!(
        "{:<20} {:>9} {:>21} {:>9} {:>6}",
        "experiment", "estimate", "95% interval", "theory", "clears"
    );
    for exp in Experiment::ALL {
        let r = mc_experiment(exp, n, k, samples, seed)?;
        let e = &r.estimate;
        println!(
            "{:<20} {:>9.4} [{:>9.4}, {:>9.4}] {:>9} {:>6}",
            exp.name(),
            e.value,
            e.ci_low,
            e.ci_high,
            r.theory.map_or("-".into(), |t| format!("{t:.4}")),
            r.clears_theory
                .map_or("-", |c| if c { "yes" } else { "no" }),
        );
        if let Some(p) = &r.profile {
            let vals: Vec<String> = p.iter().map(|e| format!("{:.3}", e.value)).collect();
            println!("{:<20} by position: {}", "", vals.join(" "));
        }
    }
    Ok(())
}
