//! Digit extraction and reconstruction for generalized radix expansions.
//!
//! ```sh
//! cargo run --example cantor_digits
//! ```

use winset::cantor::{digits_of, shift_t, value_of, BasicSequence};
use winset::rational::Rational;

fn main() {
    // 1/4 in base ten: 0.2500...
    let ten = BasicSequence::constant(10).unwrap();
    let d = digits_of(&Rational::of(1, 4), &ten, 6).unwrap();
    println!("digits of 1/4, constant 10: {:?}", d.digits);

    // 17/24 against terms (2, 3, 4): 1/2 + 1/6 + 1/24
    let mixed = BasicSequence::from_list(vec![2, 3, 4]).unwrap();
    let d = digits_of(&Rational::of(17, 24), &mixed, 3).unwrap();
    println!("digits of 17/24, terms (2,3,4): {:?}", d.digits);
    println!("reassembled: {}", value_of(&d).unwrap());

    // truncation bound: value <= x < value + 1/(q_1...q_n)
    let growing = BasicSequence::affine(1, 1).unwrap(); // 2, 3, 4, 5, ...
    let x = Rational::of(355, 452);
    for n in [2u64, 4, 8] {
        let d = digits_of(&x, &growing, n).unwrap();
        let v = value_of(&d).unwrap();
        let tail = Rational::from_big(1.into(), growing.partial_product(n).unwrap()).unwrap();
        println!(
            "n = {n}: digits {:?}, value {} <= {} < value + {}",
            d.digits, v, x, tail
        );
        assert!(v <= x && x < &v + &tail);
    }

    // the shifted orbit drops digits off the front
    println!("\nshifts of 1/4 in base ten:");
    for n in 0..4 {
        println!("  T_{n}(1/4) = {}", shift_t(&Rational::of(1, 4), &ten, n).unwrap());
    }
}
