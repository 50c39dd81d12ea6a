//! Exact maximum tuple sizes over [1, N]: the desk-scale view of M_2(1)
//! and M_2(-1).
//!
//! Run with:
//!
//! ```
//! cargo run --release --example clique_search [N]
//! ```

use dtuple::search::{build_tuple_graph, max_clique};
use dtuple::{PowerTarget, Shift};

fn main() {
    let n_max: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1000);
    let verts: Vec<u64> = (1..=n_max).collect();

    for shift in [1i64, -1] {
        let n = Shift::new(shift).unwrap();
        let graph = build_tuple_graph(&verts, n, PowerTarget::ExactK(2)).unwrap();
        let clique = max_clique(&graph, None, None);
        println!(
            "D_2({shift}) over [1, {n_max}]: {} vertices, {} edges",
            graph.vertex_count(),
            graph.edge_count()
        );
        println!(
            "  maximum tuple size = {}, witness = {:?} (exhaustive: {})",
            clique.size, clique.witness, clique.exhaustive
        );
    }
}
