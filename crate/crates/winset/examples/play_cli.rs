//! Drive the harness exactly the way the `winset` binary does: write a
//! config, play it, verify the written artifacts offline, and replay the
//! recorded adversary.
//!
//! ```sh
//! cargo run --example play_cli
//! ```

use winset::harness::{run_experiment, verify_outcome, write_outcome, BobSpec, ExperimentConfig};

fn main() {
    let dir = std::env::temp_dir().join("winset-example-run");
    let _ = std::fs::remove_dir_all(&dir);

    let cfg = ExperimentConfig::parse(
        "alpha = 1/2\n\
         beta = 1/2\n\
         family = cantor q=affine:400+1*n cell=0/1,1/17\n\
         alice = avoidance\n\
         bob = random(7)\n\
         rounds = 50\n\
         digits = 20\n\
         friendly_k = 1..2\n\
         friendly_n = -10..10\n",
    )
    .unwrap();

    let outcome = run_experiment(&cfg).unwrap();
    print!("{}", outcome.summary);
    write_outcome(&dir, &outcome).unwrap();
    println!("artifacts written to {}", dir.display());

    let report = verify_outcome(&cfg, &dir).unwrap();
    println!(
        "offline verification: {} moves, {} certification records ok",
        report.moves_checked, report.records_checked
    );

    // replay the recorded Bob: bit-identical transcript, same certifications
    let mut replay_cfg = cfg.clone();
    replay_cfg.bob = Some(BobSpec::Replay(dir.join("transcript.txt").display().to_string()));
    let replayed = run_experiment(&replay_cfg).unwrap();
    assert_eq!(replayed.transcript, outcome.transcript);
    assert_eq!(replayed.certifications, outcome.certifications);
    println!("replay reproduced the run bit-exactly");

    let _ = std::fs::remove_dir_all(&dir);
}
