//! Largest adjacency eigenvalue, epidemic threshold and regime classification.
//!
//! `cargo run --example epidemic_threshold`

use fpseed::epidemic::{classify_regime, largest_eigenvalue, DEFAULT_MAX_ITER, DEFAULT_TOL};
use fpseed::generators::{generate, GenSpec};
use fpseed::graph::fixtures::{complete, friendship_example, star};
use fpseed::Graph;

fn main() -> fpseed::Result<()> {
    let graphs: Vec<(&str, Graph)> = vec![
        ("worked example", friendship_example()),
        ("star(101)", star(101)),
        ("complete(20)", complete(20)),
        ("scale-free(1000, 2)", generate(&GenSpec::scale_free(1000, 2.0, 2000, 3))?.graph),
    ];
    let (beta, delta) = (0.2, 0.15);
    for (name, g) in &graphs {
        let s = largest_eigenvalue(g, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
        let regime = classify_regime(beta, delta, s.tau)?;
        println!(
            "{name:>20}: lambda1 {:9.5} tau {:.5} ({} iterations), beta/delta = {:.3} -> {:?}",
            s.lambda1,
            s.tau,
            s.iterations,
            beta / delta,
            regime.kind
        );
    }
    Ok(())
}
