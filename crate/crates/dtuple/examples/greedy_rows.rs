//! The greedy distinct-factor row selection: pick eight rows from a
//! candidate stream so that all 24 top-size Leibniz factors of the
//! assembled 4x4 matrix are pairwise distinct.
//!
//! Run with:
//!
//! ```
//! cargo run --example greedy_rows
//! ```

use dtuple::conjectures::{greedy_distinct_rows, synthetic_stream, tuple_stream};
use dtuple::{Error, Shift};

fn main() {
    // synthetic stream: random value pairs, elements 1, 2, 3, ...
    let stream = synthetic_stream(7, 64, 1_000_000);
    let out = greedy_distinct_rows(stream).unwrap();
    println!(
        "synthetic stream: picked b = {:?}, c = {:?}",
        out.b_rows.iter().map(|r| r.element).collect::<Vec<_>>(),
        out.c_rows.iter().map(|r| r.element).collect::<Vec<_>>(),
    );
    println!("  24 top factors pairwise distinct: {}", out.all_distinct);
    for (j, stat) in out.ledger.iter().enumerate() {
        println!(
            "  c-pick {}: |S| = {} (<= 208), |Q > 1| = {} (<= 21736)",
            j + 1,
            stat.factor_count,
            stat.quotients_above_one
        );
    }

    // a genuine tuple stream runs dry long before eight picks: elements t
    // with both t+1 and 2t+1 square are the Pell numbers 24, 840, 28560
    let n = Shift::new(1).unwrap();
    let stream = tuple_stream(1, 2, n, 2, (1, 100_000)).unwrap();
    println!("\ntuple stream u=1, v=2, n=1, k=2 up to 100000:");
    for r in &stream {
        println!("  t = {}: roots ({}, {})", r.element, r.u_value, r.v_value);
    }
    match greedy_distinct_rows(stream) {
        Err(Error::StreamExhausted { stage, progress }) => println!(
            "  greedy exhausts in the {stage} stage after picking {:?}",
            progress
        ),
        other => println!("  unexpected: {other:?}"),
    }
}
