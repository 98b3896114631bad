//! Box-counting slopes for digit-restricted sets, from exact cover counts.
//!
//! ```sh
//! cargo run --example box_dimension
//! ```

use winset::harness::box_dimension;

fn main() {
    let depths = [6, 7, 8, 9, 10];

    let est = box_dimension(3, &[0], &depths).unwrap();
    println!("base 3, avoid {{0}} (the middle-thirds survivor set):");
    for (m, n) in &est.counts {
        println!("  depth {m:2}: {n} cells survive");
    }
    println!(
        "  slope {:.6} vs log2/log3 = {:.6}\n",
        est.slope,
        std::f64::consts::LN_2 / 3f64.ln()
    );

    let est = box_dimension(10, &[0], &depths).unwrap();
    println!(
        "base 10, avoid {{0}}: slope {:.6} vs log9/log10 = {:.6}",
        est.slope,
        9f64.ln() / 10f64.ln()
    );
    let est = box_dimension(100, &[0], &depths).unwrap();
    println!(
        "base 100, avoid {{0}}: slope {:.6} (climbing toward 1 as the base grows)",
        est.slope
    );

    let est = box_dimension(10, &[], &depths).unwrap();
    println!("\nbase 10, avoid nothing: slope {} exactly", est.slope);
}
