//! Epidemic threshold of the residual network as more nodes are immunized.
//!
//! `cargo run --release --example immunization_curve`

use fpseed::epidemic::immunization_curve;
use fpseed::generators::{generate, GenSpec};
use fpseed::seeding::Strategy;

fn main() -> fpseed::Result<()> {
    let g = generate(&GenSpec::scale_free(1000, 2.0, 2000, 11))?.graph;
    let fractions = [0.0, 0.05, 0.1, 0.25, 0.5];
    let curve = immunization_curve(&g, &Strategy::ALL, &fractions, 10, 11)?;
    print!("{:>9}", "fraction");
    for s in Strategy::ALL {
        print!("{:>10}", s.name());
    }
    println!();
    for f in fractions {
        print!("{f:>9}");
        for s in Strategy::ALL {
            print!("{:>10.4}", curve.point(s, f).expect("computed").tau.mean);
        }
        println!();
    }
    Ok(())
}
