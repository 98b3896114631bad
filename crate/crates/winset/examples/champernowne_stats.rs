//! Digit frequencies of the base-10 concatenation constant 0.123456789101112…
//! at a few prefix lengths — the classical normal number, watched at finite
//! scale, where the leading-digit bias of each length block is plainly
//! visible.
//!
//! ```sh
//! cargo run --example champernowne_stats
//! ```

use winset::cantor::{champernowne_digits, count_block, Block};
use winset::rational::Rational;

fn main() {
    let digits = champernowne_digits(10, 100_000).unwrap();
    let tenth = Rational::of(1, 10);

    for n in [189u64, 1_000, 2_889, 38_889, 100_000] {
        let mut worst = (Rational::zero(), 0u64);
        print!("n = {n:6}: freq =");
        for v in 0..10u64 {
            let c = count_block(&digits, &Block::from_u64s(&[v]), n).unwrap();
            let freq = Rational::of(c as i64, n as i64);
            print!(" {:.3}", freq.to_f64());
            let dev = (&freq - &tenth).abs();
            if dev > worst.0 {
                worst = (dev, v);
            }
        }
        println!(
            "  max deviation {:.5} at digit {}",
            worst.0.to_f64(),
            worst.1
        );
    }
    println!(
        "\nnote: deviations shrink along block boundaries (189, 2889, 38889, ...)\n\
         but spike mid-block where one leading digit dominates the prefix"
    );
}
