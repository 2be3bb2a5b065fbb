//! Lattice points under m*a + n*b <= t as a quasi-polynomial in t.
//!
//!     cargo run --example lattice_counts -- 3 5

use polyembed::reduction::{lattice_count_direct, QuasiPolynomial};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (a, b) = (args.first().copied().unwrap_or(3), args.get(1).copied().unwrap_or(5));
    let qp = QuasiPolynomial::for_triangle(a, b);
    println!("#{{m*{a} + n*{b} <= t}} with period {}", qp.period);
    for (rho, (c2, c1, c0)) in qp.coeffs.iter().enumerate() {
        println!("  t = {rho} mod {}:  {c2} t^2 + {c1} t + {c0}", qp.period);
    }
    let ok = (0..200).all(|t| qp.eval(t) == lattice_count_direct(a, b, t).into());
    println!("agrees with direct counting for t < 200: {ok}");
}
