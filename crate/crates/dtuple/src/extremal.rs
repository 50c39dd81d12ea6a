//! Extremal-graph bound formulas (Turán, Kővári–Sós–Turán and its
//! ordered and colored-cycle variants), the tabulated tuple constants
//! r_k, s_k, t_k, and exact forbidden-subgraph detection on tuple
//! graphs.

use num_rational::Ratio;
use serde::Serialize;

use crate::search::clique::{self, BitGraph};
use crate::search::TupleGraph;
use crate::{Error, Result};

pub type Rational64 = Ratio<i64>;

/// The constants controlling large-element bounds for bipartite tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TupleConstants {
    pub k: u32,
    pub r_k: u32,
    pub s_k: u32,
    /// t_k in lowest terms.
    pub t_k_numer: i64,
    pub t_k_denom: i64,
}

impl TupleConstants {
    pub fn t_k(&self) -> Rational64 {
        Ratio::new(self.t_k_numer, self.t_k_denom)
    }
}

/// r_k, s_k and t_k for k >= 3. t_k = (k^2+k-4)/(k^2-6k+6) from k = 7 on.
pub fn constants(k: u32) -> Result<TupleConstants> {
    if k < 3 {
        return Err(Error::InvalidParam(format!("constants need k >= 3, got {k}")));
    }
    let r_k = match k {
        3 => 9,
        4 => 6,
        5 => 5,
        _ => 4,
    };
    let s_k = match k {
        3 => 6,
        4 => 4,
        5 => 3,
        _ => 2,
    };
    let t_k = match k {
        3 => Ratio::new(15399, 938),
        4 => Ratio::new(34, 3),
        5 => Ratio::new(97, 23),
        6 => Ratio::new(29, 4),
        _ => {
            let k = i64::from(k);
            Ratio::new(k * k + k - 4, k * k - 6 * k + 6)
        }
    };
    Ok(TupleConstants {
        k,
        r_k,
        s_k,
        t_k_numer: *t_k.numer(),
        t_k_denom: *t_k.denom(),
    })
}

/// Edge bound for a K_r-free graph on n vertices: (1/2)(1 - 1/(r-1))n^2,
/// returned exactly.
pub fn turan_bound(n: u64, r: u32) -> Rational64 {
    assert!(r >= 2, "turan_bound requires r >= 2");
    let n = i64::try_from(n).expect("vertex count fits i64");
    Ratio::new(n * n * (i64::from(r) - 2), 2 * (i64::from(r) - 1))
}

/// Edge bound for a K_{s,t}-free graph on n vertices:
/// (t-1)^{1/s} n^{2-1/s} + (s-1)n.
pub fn kst_bound(n: u64, s: u32, t: u32) -> f64 {
    assert!(1 <= s && s <= t, "kst_bound requires 1 <= s <= t");
    let n = n as f64;
    let s = f64::from(s);
    let t = f64::from(t);
    (t - 1.0).powf(1.0 / s) * n.powf(2.0 - 1.0 / s) + (s - 1.0) * n
}

/// Edge bound for the ordered bipartite variant on parts of sizes
/// n <= m: 2(t-1)^{1/r} m n^{1-1/r} + 2(r-1)m.
pub fn ordered_kst_bound(n: u64, m: u64, r: u32, t: u32) -> f64 {
    assert!(n <= m, "ordered_kst_bound requires n <= m");
    assert!(r >= 1 && t >= 1);
    let nf = n as f64;
    let mf = m as f64;
    let rf = f64::from(r);
    let tf = f64::from(t);
    2.0 * (tf - 1.0).powf(1.0 / rf) * mf * nf.powf(1.0 - 1.0 / rf) + 2.0 * (rf - 1.0) * mf
}

/// Edge bound for a k-colored graph with no doubled-color four-cycle:
/// k^{1/2} n^{3/2} + k n.
pub fn colored_cycle_bound(n: u64, kcolors: u64) -> f64 {
    let n = n as f64;
    let k = kcolors as f64;
    k.sqrt() * n.powf(1.5) + k * n
}

/// Size bound for a set with a delta-fraction of qualifying pairs and no
/// K_{s,t}: (2/delta)^s (t-1) + 2s/delta.
pub fn robust_size_bound(delta: f64, s: u32, t: u32) -> Result<f64> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidParam(format!(
            "delta must lie in (0, 1], got {delta}"
        )));
    }
    if s > t {
        return Err(Error::InvalidParam("robust bound requires s <= t".into()));
    }
    let s_f = f64::from(s);
    Ok((2.0 / delta).powi(s as i32) * (f64::from(t) - 1.0) + 2.0 * s_f / delta)
}

/// Forbidden patterns for `check_forbidden_subgraph`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "pattern", rename_all = "snake_case")]
pub enum Pattern {
    /// Complete graph on r vertices.
    Clique { r: u32 },
    /// Complete bipartite K_{s,t} on disjoint vertex sets.
    Biclique { s: u32, t: u32 },
    /// Cycle v1 v2 v3 v4 where v1v2 and v4v1 share a color, and v2v3 and
    /// v3v4 share a color.
    ColoredCycle,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternWitness {
    Clique(Vec<u64>),
    Biclique { side_a: Vec<u64>, side_b: Vec<u64> },
    ColoredCycle([u64; 4]),
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgraphSearch {
    pub found: bool,
    pub witness: Option<PatternWitness>,
}

/// Exact subgraph detection by backtracking; the instances are tiny.
pub fn check_forbidden_subgraph(graph: &TupleGraph, pattern: Pattern) -> Result<SubgraphSearch> {
    let verts = graph.vertices();
    let g = graph.bitgraph();
    match pattern {
        Pattern::Clique { r } => {
            if r == 0 {
                return Err(Error::InvalidParam("clique pattern requires r >= 1".into()));
            }
            let (hit, _) = clique::find_clique_of_size(g, &g.full_set(), r as usize, None);
            Ok(SubgraphSearch {
                found: hit.is_some(),
                witness: hit.map(|w| {
                    PatternWitness::Clique(w.into_iter().map(|i| verts[i]).collect())
                }),
            })
        }
        Pattern::Biclique { s, t } => {
            if s == 0 || t == 0 {
                return Err(Error::InvalidParam("biclique pattern requires s, t >= 1".into()));
            }
            Ok(find_biclique(g, verts, s as usize, t as usize))
        }
        Pattern::ColoredCycle => Ok(find_colored_cycle(graph)),
    }
}

fn find_biclique(g: &BitGraph, verts: &[u64], s: usize, t: usize) -> SubgraphSearch {
    let n = g.len();
    let mut chosen: Vec<usize> = Vec::new();

    fn rec(
        g: &BitGraph,
        s: usize,
        t: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        common: &[u64],
    ) -> Option<(Vec<usize>, Vec<usize>)> {
        if chosen.len() == s {
            // the t-side must be disjoint from the s-side
            let mut avail = common.to_vec();
            for &v in chosen.iter() {
                clique::bits_clear(&mut avail, v);
            }
            if clique::bits_count(&avail) >= t {
                let side_b: Vec<usize> = clique::bits_iter(&avail).take(t).collect();
                return Some((chosen.clone(), side_b));
            }
            return None;
        }
        let mut sub = Vec::new();
        for v in start..g.len() {
            clique::bits_and_into(&mut sub, common, g.row(v));
            if clique::bits_count(&sub) < t {
                continue; // common neighborhood already too small
            }
            chosen.push(v);
            let keep = std::mem::take(&mut sub);
            if let Some(hit) = rec(g, s, t, v + 1, chosen, &keep) {
                return Some(hit);
            }
            sub = keep;
            chosen.pop();
        }
        None
    }

    let full = g.full_set();
    if n == 0 {
        return SubgraphSearch {
            found: false,
            witness: None,
        };
    }
    match rec(g, s, t, 0, &mut chosen, &full) {
        Some((a, b)) => SubgraphSearch {
            found: true,
            witness: Some(PatternWitness::Biclique {
                side_a: a.into_iter().map(|i| verts[i]).collect(),
                side_b: b.into_iter().map(|i| verts[i]).collect(),
            }),
        },
        None => SubgraphSearch {
            found: false,
            witness: None,
        },
    }
}

fn find_colored_cycle(graph: &TupleGraph) -> SubgraphSearch {
    let n = graph.vertex_count();
    let verts = graph.vertices();
    // two common neighbors of (v1, v3) carrying the same color pair close
    // the cycle
    for v1 in 0..n {
        for v3 in v1 + 1..n {
            let mut seen: std::collections::BTreeMap<(u32, u32), usize> =
                std::collections::BTreeMap::new();
            for u in 0..n {
                if u == v1 || u == v3 {
                    continue;
                }
                let (Some(c1), Some(c2)) = (graph.edge_color(v1, u), graph.edge_color(u, v3))
                else {
                    continue;
                };
                if let Some(&prev) = seen.get(&(c1, c2)) {
                    return SubgraphSearch {
                        found: true,
                        witness: Some(PatternWitness::ColoredCycle([
                            verts[v1],
                            verts[prev],
                            verts[v3],
                            verts[u],
                        ])),
                    };
                }
                seen.insert((c1, c2), u);
            }
        }
    }
    SubgraphSearch {
        found: false,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicate::{PowerTarget, Shift};
    use crate::search::build_tuple_graph;

    #[test]
    fn constants_table() {
        let c = constants(3).unwrap();
        assert_eq!((c.r_k, c.s_k), (9, 6));
        assert_eq!(c.t_k(), Ratio::new(15399, 938));

        let c = constants(4).unwrap();
        assert_eq!((c.r_k, c.s_k), (6, 4));
        assert_eq!(c.t_k(), Ratio::new(34, 3));

        let c = constants(5).unwrap();
        assert_eq!((c.r_k, c.s_k), (5, 3));
        assert_eq!(c.t_k(), Ratio::new(97, 23));

        let c = constants(6).unwrap();
        assert_eq!((c.r_k, c.s_k), (4, 2));
        assert_eq!(c.t_k(), Ratio::new(29, 4));

        // (49 + 7 - 4) / (49 - 42 + 6) = 52/13 = 4
        let c = constants(7).unwrap();
        assert_eq!(c.t_k(), Ratio::from_integer(4));

        for k in 6..=60 {
            let c = constants(k).unwrap();
            assert_eq!((c.r_k, c.s_k), (4, 2), "k={k}");
        }
        assert!(constants(2).is_err());
    }

    #[test]
    fn turan_examples() {
        assert_eq!(turan_bound(10, 2), Ratio::from_integer(0));
        assert_eq!(turan_bound(6, 3), Ratio::from_integer(9));
        assert_eq!(turan_bound(0, 5), Ratio::from_integer(0));
    }

    #[test]
    fn kst_examples() {
        assert_eq!(kst_bound(7, 1, 1), 0.0);
        let b = kst_bound(5, 2, 2);
        assert!((b - (5f64.powf(1.5) + 5.0)).abs() < 1e-12);
        // a star K_{1,n-1} has n-1 edges and no K_{2,2}
        for n in 2..=30u64 {
            assert!((n - 1) as f64 <= kst_bound(n, 2, 2));
        }
    }

    #[test]
    fn ordered_kst_examples() {
        assert_eq!(ordered_kst_bound(4, 9, 3, 1), 2.0 * 2.0 * 9.0);
        assert_eq!(ordered_kst_bound(4, 9, 1, 1), 0.0);
        let v = ordered_kst_bound(10, 10, 2, 3);
        assert!((v - (2.0 * 2f64.sqrt() * 10.0 * 10f64.sqrt() + 2.0 * 10.0)).abs() < 1e-9);
    }

    #[test]
    fn colored_cycle_bound_examples() {
        assert_eq!(colored_cycle_bound(10, 0), 0.0);
        assert_eq!(colored_cycle_bound(0, 4), 0.0);
        assert_eq!(colored_cycle_bound(100, 4), 2.0 * 1000.0 + 400.0);
    }

    #[test]
    fn robust_bound_examples() {
        assert_eq!(robust_size_bound(1.0, 1, 1).unwrap(), 2.0);
        assert_eq!(robust_size_bound(1.0, 2, 5).unwrap(), 20.0);
        assert!(robust_size_bound(0.0, 1, 1).is_err());
        assert!(robust_size_bound(1.5, 1, 1).is_err());
        // decreasing delta never decreases the bound
        let mut prev = 0.0;
        for i in (1..=10).rev() {
            let d = f64::from(i) / 10.0;
            let b = robust_size_bound(d, 2, 4).unwrap();
            assert!(b >= prev);
            prev = b;
        }
    }

    #[test]
    fn forbidden_subgraph_examples() {
        let n = Shift::new(1).unwrap();
        // {1,3,8,120} is a 4-clique in the squares graph
        let g = build_tuple_graph(&[1, 3, 8, 120], n, PowerTarget::ExactK(2)).unwrap();
        let hit = check_forbidden_subgraph(&g, Pattern::Clique { r: 3 }).unwrap();
        assert!(hit.found);
        let hit = check_forbidden_subgraph(&g, Pattern::ColoredCycle).unwrap();
        assert!(hit.found);
        let hit = check_forbidden_subgraph(&g, Pattern::Biclique { s: 2, t: 2 }).unwrap();
        assert!(hit.found);

        // edgeless graph has nothing
        let g = build_tuple_graph(&[2, 3, 4], n, PowerTarget::ExactK(13)).unwrap();
        for pattern in [
            Pattern::Clique { r: 2 },
            Pattern::Biclique { s: 1, t: 1 },
            Pattern::ColoredCycle,
        ] {
            assert!(!check_forbidden_subgraph(&g, pattern).unwrap().found);
        }
    }

    #[test]
    fn kst_bound_respected_by_tuple_graphs() {
        // squares graphs over [1, N]: K_{2,2}-free implies the edge bound
        for nv in [1i64, -1, 5] {
            let n = Shift::new(nv).unwrap();
            let range: Vec<u64> = (1..=80).collect();
            let g = build_tuple_graph(&range, n, PowerTarget::ExactK(2)).unwrap();
            let hit = check_forbidden_subgraph(&g, Pattern::Biclique { s: 2, t: 2 }).unwrap();
            if !hit.found {
                let edges = g.edge_count() as f64;
                assert!(edges <= kst_bound(g.vertex_count() as u64, 2, 2));
            }
        }
    }
}
