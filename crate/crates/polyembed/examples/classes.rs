//! Cremona moves on class vectors: reduce a class and pair it against others.
//!
//!     cargo run --example classes -- "15; 13,2,2,2,2,2,2,2,2,2,2,2,2,2,1,1"

use polyembed::exceptional::{classify, cremona, positivity_check, product, reduce_class, ClassVector};
use polyembed::Result;

fn main() -> Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "15; 13,2,2,2,2,2,2,2,2,2,2,2,2,2,1,1".into());
    let v: ClassVector = text.parse()?;
    println!("x = ({v})  x.x = {}  flags {:?}", product(&v, &v), classify(&v));

    let steps = v.head.to_i64().unwrap_or(0).max(0) as usize + 1;
    match reduce_class(&v, steps) {
        Ok(r) => {
            for (i, s) in r.steps.iter().enumerate() {
                println!("  step {}: ({s})", i + 1);
            }
            println!("reduced: ({})", r.reduced);
            for d in ["0; -1", "1; 1,1", "2; 1,1,1,1,1", "3; 2,1,1,1,1,1,1"] {
                let d: ClassVector = d.parse()?;
                let p = positivity_check(&r.reduced, &d);
                println!("  . ({d}) = {}  {}", p.product, if p.constrained { "(must be >= 0)" } else { "" });
            }
        }
        Err(e) => println!("not reducible: {e}"),
    }

    let e: ClassVector = "1; 1,1".parse()?;
    println!("\nCr({e}) = ({})", cremona(&e));
    Ok(())
}
