//! Times fast USS generation and fast conjugacy decisions on random braids
//! as the canonical length doubles.
//!
//! cargo run --release --example runtime_probe -- 50 50 10 3

use garside::conjugacy::runtime_probe;

fn arg(i: usize, default: u64) -> u64 {
    std::env::args()
        .nth(i)
        .and_then(|a| a.parse().ok())
        .unwrap_or(default)
}

fn main() {
    let (n, k) = (arg(1, 50) as usize, arg(2, 25) as usize);
    let (trials, doublings) = (arg(3, 10) as usize, arg(4, 3) as u32);
    let r = runtime_probe(n, k, trials, 2024, doublings);
    println!("n={n} trials={trials}");
    println!(
        "{:>5} {:>12} {:>12} {:>12} {:>7} {:>7}",
        "k", "fast_uss", "decide", "decide max", "valid", "ratio"
    );
    for row in &r.rows {
        println!(
            "{:>5} {:>10.2}ms {:>10.2}ms {:>10.2}ms {:>7.2} {:>7}",
            row.k,
            row.fast_uss_mean * 1e3,
            row.decide_mean * 1e3,
            row.decide_max * 1e3,
            row.valid_rate,
            row.ratio.map_or("-".into(), |x| format!("{x:.2}x")),
        );
    }
}
