//! The complement map on a few points of the simplex, and its pull toward
//! the uniform distribution under repeated application.
//!
//! ```bash
//! cargo run -p confidex --example complement_map
//! ```

use confidex::simplex::{complement_map, entropy, euclidean_distance, uniform, Distribution};

fn main() -> confidex::Result<()> {
    let points = [
        vec![0.5, 0.5, 0.0],
        vec![0.7, 0.2, 0.1],
        vec![0.9, 0.05, 0.05],
        vec![1.0, 0.0, 0.0],
        vec![0.3, 0.7],
    ];
    println!("{:<20} {:<20} {:>8} {:>8}", "p", "q(p)", "H(p)", "H(q)");
    for w in points {
        let p = Distribution::new(w)?;
        let q = complement_map(&p);
        let (ps, qs) = (format!("{p:.4}"), format!("{q:.4}"));
        println!(
            "{ps:<20} {qs:<20} {:>8.4} {:>8.4}",
            entropy(&p),
            entropy(&q)
        );
    }

    let mut p = Distribution::new(vec![0.85, 0.1, 0.04, 0.01])?;
    let u = uniform(p.len())?;
    println!("\niterating from {p:.2}");
    for i in 1..=8 {
        p = complement_map(&p);
        println!(
            "step {i}: distance to uniform {:.6}",
            euclidean_distance(&p, &u)
        );
    }
    Ok(())
}
