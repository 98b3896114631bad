//! A digit pattern whose plain shifted orbit looks equidistributed while one
//! arithmetic-progression subsequence is trapped in the upper half of
//! [0, 1): every even digit position carries a digit of at least half its
//! term.  Both shift-index conventions are printed side by side; the digit
//! convention (`T` at the position minus one) is the one the digit bound
//! controls.
//!
//! ```sh
//! cargo run --example footnote_witness
//! ```

use winset::harness::shift_witness_report;

fn main() {
    let report = shift_witness_report();
    let digits: Vec<String> = report.digits.iter().map(|d| d.to_string()).collect();
    let terms: Vec<String> = report.terms.iter().map(|t| t.to_string()).collect();
    println!("digits: {}", digits.join(" "));
    println!("terms:  {}", terms.join(" "));
    println!("value:  {} (approx {:.9})\n", report.x, report.x.to_f64());

    println!("n | pos | digit/term | T_(pos-1) > 1/2 | T_pos > 1/2");
    for r in &report.rows {
        println!(
            "{} |  {:2} |    {}/{}     | {} ({:.4}) | {} ({:.4})",
            r.n,
            r.position,
            r.digit,
            r.term,
            r.digit_convention_exceeds_half,
            r.shift_digit_convention.to_f64(),
            r.orbit_convention_exceeds_half,
            r.shift_orbit_convention.to_f64(),
        );
    }
    println!(
        "\nevery row satisfies digit >= term/2, so the digit-convention shift \
         sits above 1/2 along the whole even subsequence"
    );
}
