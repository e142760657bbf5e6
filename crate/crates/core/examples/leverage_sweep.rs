//! Local and global leverage across generator parameters, averaged over seeds.
//!
//! `cargo run --release --example leverage_sweep`

use fpseed::runner::{sweep, FamilyKind, SweepParams, SweepRow};

fn report(title: &str, rows: &[SweepRow]) {
    println!("{title}");
    let mut params: Vec<f64> = rows.iter().map(|r| r.param).collect();
    params.dedup();
    for p in params {
        let vals: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.param == p)
            .filter_map(|r| Some((r.leverage_local?, r.leverage_global?)))
            .collect();
        let n = vals.len() as f64;
        let (l, g) = vals.iter().fold((0.0, 0.0), |a, v| (a.0 + v.0 / n, a.1 + v.1 / n));
        println!("  {p:>6}: local {l:.3}  global {g:.3}  ({} graphs)", vals.len());
    }
}

fn main() {
    let er = SweepParams {
        family: FamilyKind::ErdosRenyi,
        n: 200,
        grid: vec![0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5],
        m_edges: None,
        k_neighbors: None,
        replicates: 50,
    };
    report("Erdos-Renyi, n = 200, by p_edge", &sweep(&er, 1).unwrap());

    let sf = SweepParams {
        family: FamilyKind::ScaleFree,
        n: 1000,
        grid: vec![1.5, 2.0, 3.0, 6.0],
        m_edges: Some(2000),
        k_neighbors: None,
        replicates: 50,
    };
    report("static scale-free, n = 1000, m = 2000, by gamma", &sweep(&sf, 2).unwrap());

    let sw = SweepParams {
        family: FamilyKind::SmallWorld,
        n: 200,
        grid: vec![0.0, 0.05, 0.2, 0.5, 1.0],
        m_edges: None,
        k_neighbors: Some(4),
        replicates: 50,
    };
    report("Watts-Strogatz, n = 200, k = 4, by p_rewire", &sweep(&sw, 3).unwrap());
}
