//! Random, local and global seed selection on a heavy-tailed graph, and the
//! expected degree each strategy reaches.
//!
//! `cargo run --release --example seed_selection`

use fpseed::generators::{generate, GenSpec};
use fpseed::metrics::{global_mean, local_mean, mean_degree};
use fpseed::seeding::{estimate_expected_degree, select_seeds, Strategy, StrategyConfig};
use fpseed::stats::Z99;

fn main() -> fpseed::Result<()> {
    let g = generate(&GenSpec::scale_free(2000, 2.2, 4000, 1))?.graph;
    println!("{} nodes, {} edges", g.node_count(), g.edge_count());

    for strategy in Strategy::ALL {
        let set = select_seeds(&g, &StrategyConfig::new(strategy, 20, 42))?;
        let avg = set.seeds.iter().map(|&s| g.deg(s) as f64).sum::<f64>() / set.seeds.len() as f64;
        println!("{:>6}: 20 seeds, average degree {avg:6.2}, {} rounds", strategy.name(), set.rounds_used);
    }

    let exact = [mean_degree(&g)?, local_mean(&g)?, global_mean(&g)?];
    println!("\nexpected degree of one seed (10^6 rounds):");
    for (strategy, target) in Strategy::ALL.into_iter().zip(exact) {
        let est = estimate_expected_degree(&g, strategy, None, 1_000_000, 7)?;
        let (lo, hi) = est.interval(Z99);
        println!("{:>6}: {:.3} in [{lo:.3}, {hi:.3}], exact {target:.3}", strategy.name(), est.mean);
    }
    Ok(())
}
