//! Decide E(1, a) -> P(lam, lam b) and print the certificate.
//!
//!     cargo run --example certify -- 1300/81 10/9 13/2

use polyembed::reduction::{certify_embedding, CertifyOutcome};
use polyembed::{QuadExt, Rational, Result};

fn main() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let a: Rational = args.first().map_or("1300/81", String::as_str).parse()?;
    let lam: QuadExt = args.get(1).map_or("10/9", String::as_str).parse()?;
    let b: Rational = args.get(2).map_or("13/2", String::as_str).parse()?;

    match certify_embedding(&a, &lam, &b)? {
        CertifyOutcome::Embeds(c) => {
            println!("E(1,{a}) embeds into P({lam}, {lam}*{b})");
            println!("  leading terms  kN2={}  lM2={}", c.k_n2, c.l_m2);
            println!("  linear terms   kN1={}  lM1={}", c.k_n1, c.l_m1);
            println!("  checked k <= {} (t* = {})", c.checked_upto, c.threshold_t);
            println!("  tight at {:?}", c.tight_indices);
        }
        CertifyOutcome::Obstructed(o) => {
            println!("no embedding: N_{0} = {1} > {lam} * M_{0} = {lam} * {2}", o.obstruction_index, o.n_value, o.m_value);
        }
    }
    Ok(())
}
