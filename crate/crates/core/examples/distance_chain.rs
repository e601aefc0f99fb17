//! Prints the distance polynomials of one family level by level.
//!
//! ```text
//! cargo run --release -p signed-grid --example distance_chain -- pancake 8
//! ```

use std::time::Instant;

use signed_grid::{DistanceFamily, Generators};

fn main() {
    let mut args = std::env::args().skip(1);
    let family: DistanceFamily = args
        .next()
        .unwrap_or_else(|| "pancake".into())
        .parse()
        .expect("family is pancake or reversal");
    let k_max: usize = args.next().map_or(6, |s| s.parse().expect("k is a number"));

    let mut level = Generators::base(family);
    for k in 0..=k_max {
        let start = Instant::now();
        if k > 0 {
            level = level.next_level();
        }
        let poly = level.polynomial();
        println!(
            "k = {k}: {poly}  ({} generators, {:.2} s)",
            level.len(),
            start.elapsed().as_secs_f64()
        );
    }
}
