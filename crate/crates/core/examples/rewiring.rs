//! Degree-preserving rewiring: single moves that raise the local mean, and a
//! hill climb toward the largest local mean a degree sequence allows.
//!
//! `cargo run --example rewiring`

use fpseed::generators::{find_rewire_moves, generate, maximize_local_mean, rewire, GenSpec};
use fpseed::metrics::{global_mean, local_mean};
use fpseed::rng;

fn main() -> fpseed::Result<()> {
    let g = generate(&GenSpec::erdos_renyi(30, 0.15, 5))?.graph;
    let mut r = rng::stream(5, &[rng::domain::REWIRE]);
    println!("mu_L {:.4}, mu_G {:.4}", local_mean(&g)?, global_mean(&g)?);
    for mv in find_rewire_moves(&g, &mut r, 3) {
        let h = rewire(&g, &mv)?;
        println!(
            "({}, {}), ({}, {}) -> ({}, {}), ({}, {}): mu_L {:.4} (+{:.4}), mu_G {:.4}",
            mv.a, mv.b, mv.c, mv.d, mv.a, mv.d, mv.b, mv.c,
            local_mean(&h)?,
            mv.local_mean_increment(&g),
            global_mean(&h)?
        );
    }

    let seq: Vec<usize> = g.degrees().collect();
    let climb = maximize_local_mean(&seq, 5_000, &mut r)?;
    println!(
        "\nhill climb: {} steps, converged {}, mu_L {:.4}",
        climb.steps,
        climb.converged,
        local_mean(&climb.graph)?
    );
    Ok(())
}
