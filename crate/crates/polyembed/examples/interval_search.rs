//! Search an interval of a for classes that beat the volume bound.
//!
//!     cargo run --release --example interval_search -- 18772/961 1089/52 /tmp/search.jsonl

use std::path::PathBuf;

use polyembed::obstruction::{interval_bounds_for, verify_interval, IntervalPreset, SearchOptions};
use polyembed::{q, Rational, Result};

fn main() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let lo: Rational = args.first().map_or("18772/961", String::as_str).parse()?;
    let hi: Rational = args.get(1).map_or("1089/52", String::as_str).parse()?;
    let journal = args.get(2).map(PathBuf::from);

    let preset = IntervalPreset::from_left_endpoint("example", lo, hi, q(13, 2))?;
    let bounds = interval_bounds_for(&preset)?;
    println!("q <= {}, d <= {}", bounds.q_max, bounds.d_max);

    let opts = SearchOptions { threads: None, journal: journal.as_deref() };
    let rep = verify_interval(&preset, &opts)?;
    println!("{} values of a searched", rep.points);
    for f in &rep.filters_applied {
        println!("  {:<20} {}", f.name, f.survivors);
    }
    for (c, why) in rep.rejected.iter().take(5) {
        println!("  rejected a={}/{} d={} ({why})", c.p, c.q, c.d);
    }
    if rep.no_survivors() {
        println!("no obstructions: d equals the volume bound here");
    } else {
        for c in &rep.candidates_found {
            println!("  survivor a={}/{} d={} m={:?}", c.p, c.q, c.d, c.m);
        }
    }
    Ok(())
}
