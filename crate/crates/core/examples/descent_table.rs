//! Reproduces the upper-bound table for d(n,k) and compares each cell with
//! the published value. The last column evaluates the same recursion in
//! plain f64, which shows where the published k=50 row loses precision.
//!
//! cargo run --release --example descent_table

use std::time::Instant;

use garside::stats::descent::{DescentBound, Scalar};
use garside::stats::table::{d_bound_table, published, round3, Published, GRID_K, GRID_N};

fn main() {
    let start = Instant::now();
    let table = d_bound_table(&GRID_N, &GRID_K);
    let elapsed = start.elapsed();
    let float = DescentBound::<f64>::new(100, 50);

    println!(
        "{:>4} {:>4} {:>11} {:>11} {:>9} {:>11}",
        "k", "n", "computed", "published", "rel.err", "f64"
    );
    for row in &table.rows {
        let (shown, err) = match published(row.n, row.k) {
            Some(Published::Value(p)) => (
                format!("{p:.2e}"),
                format!("{:+.2}%", 100.0 * (round3(row.value) - p) / p),
            ),
            Some(Published::Below(b)) => (
                format!("<{b:.0e}"),
                String::from(if row.value < b { "ok" } else { "above" }),
            ),
            None => (String::from("-"), String::new()),
        };
        let mark = if row.note.is_some() { " *" } else { "" };
        println!(
            "{:>4} {:>4} {:>11.2e} {:>11} {:>9} {:>11.2e}{mark}",
            row.k,
            row.n,
            row.value,
            shown,
            err,
            float.d_estimate(row.n, row.k).as_f64()
        );
    }
    println!(
        "computed {} cells in {elapsed:.2?}  (* suspected typo in the published table)",
        table.rows.len()
    );
}
