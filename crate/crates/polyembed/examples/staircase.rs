//! The graph of d(a, 13/2), and brackets for d(a, b) at a few points.
//!
//!     cargo run --example staircase -- 2

use polyembed::embedding::{compute_d, theorem_13_2_graph, volume_bound};
use polyembed::{q, Rational, Result};

fn main() -> Result<()> {
    let g = theorem_13_2_graph();
    println!("d(a, 13/2):");
    for row in g.csv_rows() {
        let [lo, hi, form, p1, _, w] = row;
        let what = match form.as_str() {
            "constant" => format!("{p1}"),
            "linear" => format!("{p1} * a"),
            _ => "sqrt(a/13)".to_string(),
        };
        let w = if w.is_empty() { String::new() } else { format!("  (index {w})") };
        println!("  [{lo}, {hi}) {what}{w}");
    }

    let b: Rational = std::env::args().nth(1).map_or("2".into(), |s| s).parse()?;
    println!("\nd(a, {b}) brackets:");
    for a in [q(3, 1), q(5, 1), q(15, 2), q(10, 1), q(20, 1)] {
        let d = compute_d(&a, &b, 120)?;
        let upper = d.upper.as_ref().map_or("?".into(), |u| u.to_string());
        println!(
            "  a={a:<5} lower={:<18} upper={:<18} volume={}",
            d.lower.to_string(),
            upper,
            volume_bound(&a, &b)?
        );
    }
    Ok(())
}
