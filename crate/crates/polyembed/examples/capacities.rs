//! ECH capacity sequences of an ellipsoid and a polydisc, and the weight
//! decomposition of the ellipsoid.
//!
//!     cargo run --example capacities -- 1300/81 13/2

use polyembed::capacities::{ellipsoid_capacities, polydisc_capacities, sharp_terms, weight_sequence, Cutoff};
use polyembed::{Rational, Result};

fn main() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let a: Rational = args.first().map_or("1300/81", String::as_str).parse()?;
    let b: Rational = args.get(1).map_or("13/2", String::as_str).parse()?;
    let upto = 24;

    let n = ellipsoid_capacities(&Rational::one(), &a, &Cutoff::Index(upto))?;
    let m = polydisc_capacities(&Rational::one(), &b, &Cutoff::Index(upto))?;
    println!("{:>3}  {:>12}  {:>12}", "k", format!("N_k(1,{a})"), format!("M_k(1,{b})"));
    for k in 0..=upto {
        println!("{k:>3}  {:>12}  {:>12}", n[k].to_string(), m[k].to_string());
    }

    let w = weight_sequence(&a)?;
    let parts: Vec<String> = w.entries.iter().map(|(x, mult)| format!("{x}^x{mult}")).collect();
    println!("\nweights of {a}: {}", parts.join(", "));

    // N(1, a) is the sharp of the balls B(w_i)
    let balls = |x: &Rational| ellipsoid_capacities(x, x, &Cutoff::Index(upto)).map(|v| v.to_vec());
    let mut acc = vec![Rational::zero()];
    for x in w.flat() {
        acc = sharp_terms(&acc, &balls(&x)?, upto);
    }
    println!("sharp of weight balls reproduces N(1,{a}) up to k={upto}: {}", acc == n);
    Ok(())
}
