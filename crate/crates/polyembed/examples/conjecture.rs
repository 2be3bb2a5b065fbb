//! Conjectured graph of d(., b) for b >= 6 and the capacity ratios behind it.
//!
//!     cargo run --example conjecture -- 7

use polyembed::cli::midpoint;
use polyembed::embedding::{conjecture_graph, conjecture_lower_bound_witness, prop_6_1_bound, AlphaStarVariant, Form};
use polyembed::{Rational, Result};

fn main() -> Result<()> {
    let b: Rational = std::env::args().nth(1).map_or("7".into(), |s| s).parse()?;
    let g = conjecture_graph(&b, AlphaStarVariant::Exact)?;
    println!("b = {b}: volume from a = {} on (lower bound)", prop_6_1_bound(&b)?);
    for s in &g.segments {
        let hi = s.hi.as_ref().map_or("inf".into(), |h| format!("{h}"));
        let line = format!("[{}, {hi})  {}", s.lo, s.form.name());
        match (&s.form, &s.hi) {
            (Form::Volume, _) | (_, None) => println!("  {line}"),
            (_, Some(h)) => {
                let a = midpoint(&s.lo, h);
                let w = conjecture_lower_bound_witness(&a, &b)?;
                println!("  {line}  at a={a}: N_{0}/M_{0} = {1} ({2})", w.index, w.ratio, if w.matches { "ok" } else { "MISMATCH" });
            }
        }
    }
    Ok(())
}
