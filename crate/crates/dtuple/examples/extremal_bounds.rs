//! Extremal edge bounds and forbidden-subgraph detection on tuple
//! graphs.
//!
//! Run with:
//!
//! ```
//! cargo run --example extremal_bounds
//! ```

use dtuple::extremal::{
    check_forbidden_subgraph, colored_cycle_bound, constants, kst_bound, turan_bound, Pattern,
};
use dtuple::search::build_tuple_graph;
use dtuple::{PowerTarget, Shift};

fn main() {
    println!("turan bound, K_3-free on 6 vertices: {}", turan_bound(6, 3));
    println!("kst bound, K_{{2,2}}-free on 5 vertices: {:.4}", kst_bound(5, 2, 2));
    println!("colored-cycle bound, n = 100, 4 colors: {}", colored_cycle_bound(100, 4));

    println!("\ntabulated constants:");
    for k in 3..=8 {
        let c = constants(k).unwrap();
        println!(
            "  k = {k}: r_k = {}, s_k = {}, t_k = {}/{}",
            c.r_k, c.s_k, c.t_k_numer, c.t_k_denom
        );
    }

    // the squares graph over [1, 120] contains the classical 4-clique,
    // hence also K_{2,2} and the doubled-color four-cycle
    let n = Shift::new(1).unwrap();
    let graph = build_tuple_graph(&(1..=120).collect::<Vec<u64>>(), n, PowerTarget::ExactK(2))
        .unwrap();
    println!(
        "\nsquares graph on [1, 120]: {} edges, kst(120, 2, 2) = {:.1}",
        graph.edge_count(),
        kst_bound(120, 2, 2)
    );
    for pattern in [
        Pattern::Clique { r: 4 },
        Pattern::Biclique { s: 2, t: 2 },
        Pattern::ColoredCycle,
    ] {
        let hit = check_forbidden_subgraph(&graph, pattern).unwrap();
        println!("  {:?}: found = {}, witness = {:?}", pattern, hit.found, hit.witness);
    }
}
