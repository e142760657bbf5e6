//! Mean degree, local and global means, inversity and the 2k distribution of
//! a four-person network.
//!
//! `cargo run --example network_means`

use fpseed::graph::fixtures::friendship_example;
use fpseed::metrics::{degree_moments, friend_means, inversity_from_2k, means_report, psi, TwoKDistribution};

fn main() -> fpseed::Result<()> {
    let g = friendship_example();
    let f = friend_means(&g)?;
    for (i, fi) in f.iter().enumerate() {
        println!("{}: degree {}, friends average {fi:.3}", g.label(i), g.deg(i));
    }

    let r = means_report(&g)?;
    println!("\n{}", serde_json::to_string_pretty(&r).unwrap());

    // the local mean splits into the global mean plus inversity times psi
    let rho = r.inversity.expect("non-regular");
    let p = psi(&degree_moments(&g)?)?;
    println!("mu_G + rho * psi = {:.6} (mu_L = {:.6})", r.mu_g + rho * p, r.mu_l);

    let d = TwoKDistribution::from_graph(&g);
    println!("\n2k distribution:");
    d.write_csv(std::io::stdout())?;
    println!("inversity from 2k alone: {:.6}", inversity_from_2k(&d)?);
    Ok(())
}
