//! Tuple graphs and the exact searches that run on them: maximum
//! cliques (restricted tuple sizes), the f/f-tilde maxima over shifts,
//! bipartite biclique search, the four-cycle power pattern, and
//! pair-count bound checks for large-element sets.

pub mod clique;

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::Pow;
use serde::Serialize;

use crate::arith::{self, ExponentCap};
use crate::predicate::{qualifies, PowerTarget, Shift};
use crate::report::BoundReport;
use crate::{Error, Result};
use clique::BitGraph;

/// How edges are colored when a graph is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ColorRule {
    /// Color = smallest qualifying prime exponent (or k for an exact-k
    /// target).
    SmallestPrime,
    /// Color 1 when the pair qualifies with some exponent <= 25,
    /// otherwise the smallest qualifying prime. Collapses the small
    /// exponents into a single class.
    CollapseV25,
}

/// Graph on a set of positive integers; an edge joins a pair whose
/// shifted product lands in the target power set, colored by the
/// smallest qualifying prime exponent.
#[derive(Clone, Debug)]
pub struct TupleGraph {
    vertices: Vec<u64>,
    shift: Shift,
    target: PowerTarget,
    rule: ColorRule,
    adj: BitGraph,
    colors: BTreeMap<(u32, u32), u32>,
}

impl TupleGraph {
    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    pub fn shift(&self) -> Shift {
        self.shift
    }

    pub fn target(&self) -> PowerTarget {
        self.target
    }

    pub fn color_rule(&self) -> ColorRule {
        self.rule
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.colors.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj.has_edge(i, j)
    }

    /// Color of the edge between vertex indices i < j, if present.
    pub fn edge_color(&self, i: usize, j: usize) -> Option<u32> {
        let key = (i.min(j) as u32, i.max(j) as u32);
        self.colors.get(&key).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.colors.iter().map(|(&(i, j), &c)| (i as usize, j as usize, c))
    }

    pub(crate) fn bitgraph(&self) -> &BitGraph {
        &self.adj
    }

    /// Adjacency restricted to one color class.
    pub(crate) fn filtered_bitgraph(&self, color: u32) -> BitGraph {
        let mut g = BitGraph::new(self.vertices.len());
        for (&(i, j), &c) in &self.colors {
            if c == color {
                g.add_edge(i as usize, j as usize);
            }
        }
        g
    }
}

/// Perfect powers up to a limit keyed to their smallest prime exponent.
/// Shared across the per-shift graphs of an f-value search.
pub(crate) struct PowerTable {
    map: HashMap<u128, u32>,
}

impl PowerTable {
    pub fn build(limit: u128, cap: ExponentCap) -> Self {
        let mut map = HashMap::new();
        if limit >= 1 {
            map.insert(1u128, 2u32);
        }
        for p in arith::primes_up_to(u64::from(cap.get())) {
            let p = p as u32;
            let mut x: u128 = 2;
            while let Some(v) = x.checked_pow(p) {
                if v > limit {
                    break;
                }
                map.entry(v).or_insert(p);
                x += 1;
            }
        }
        PowerTable { map }
    }

    fn smallest_exponent(&self, value: i128) -> Option<u32> {
        if value <= 0 {
            return None;
        }
        self.map.get(&(value as u128)).copied()
    }
}

/// Builds the graph over a vertex set: edge (a, b) present exactly when
/// `a*b + n` lands in the target, colored per the rule.
pub fn build_tuple_graph(vertices: &[u64], n: Shift, target: PowerTarget) -> Result<TupleGraph> {
    build_tuple_graph_with_rule(vertices, n, target, ColorRule::SmallestPrime)
}

pub fn build_tuple_graph_with_rule(
    vertices: &[u64],
    n: Shift,
    target: PowerTarget,
    rule: ColorRule,
) -> Result<TupleGraph> {
    if vertices.iter().any(|&v| v == 0) {
        return Err(Error::InvalidParam("vertices must be >= 1".into()));
    }
    let mut verts = vertices.to_vec();
    verts.sort_unstable();
    verts.dedup();

    let mut adj = BitGraph::new(verts.len());
    let mut colors = BTreeMap::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let w = qualifies(verts[i], verts[j], n, target);
            let Some(exp) = w.exponent else { continue };
            let color = match rule {
                ColorRule::SmallestPrime => exp,
                ColorRule::CollapseV25 => {
                    if exp <= 25 {
                        1
                    } else {
                        exp
                    }
                }
            };
            adj.add_edge(i, j);
            colors.insert((i as u32, j as u32), color);
        }
    }
    Ok(TupleGraph {
        vertices: verts,
        shift: n,
        target,
        rule,
        adj,
        colors,
    })
}

/// Same graph built against a precomputed power table (targets with a
/// prime-exponent scan only).
fn build_graph_from_table(
    verts: &[u64],
    n: Shift,
    target: PowerTarget,
    table: &PowerTable,
    cap: u32,
) -> TupleGraph {
    let mut adj = BitGraph::new(verts.len());
    let mut colors = BTreeMap::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let s = verts[i] as i128 * verts[j] as i128 + n.get() as i128;
            if let Some(exp) = table.smallest_exponent(s) {
                if exp <= cap {
                    adj.add_edge(i, j);
                    colors.insert((i as u32, j as u32), exp);
                }
            }
        }
    }
    TupleGraph {
        vertices: verts.to_vec(),
        shift: n,
        target,
        rule: ColorRule::SmallestPrime,
        adj,
        colors,
    }
}

/// Result of an exact clique search.
#[derive(Clone, Debug, Serialize)]
pub struct CliqueResult {
    pub size: usize,
    pub witness: Vec<u64>,
    /// True when the search provably completed; a timeout leaves the
    /// best-found witness with this flag cleared.
    pub exhaustive: bool,
}

/// Exact maximum clique, optionally restricted to a single color class.
/// Ties among maximum cliques break to the lexicographically smallest
/// witness.
pub fn max_clique(
    graph: &TupleGraph,
    color_filter: Option<u32>,
    deadline: Option<Instant>,
) -> CliqueResult {
    let filtered;
    let g = match color_filter {
        Some(c) => {
            filtered = graph.filtered_bitgraph(c);
            &filtered
        }
        None => graph.bitgraph(),
    };
    let (best, complete) = clique::max_clique_in(g, None, deadline);
    if !complete {
        return CliqueResult {
            size: best.len(),
            witness: best.iter().map(|&i| graph.vertices[i]).collect(),
            exhaustive: false,
        };
    }
    let (lex, lex_complete) = clique::lex_min_clique_of_size(g, best.len(), deadline);
    match lex {
        Some(w) => CliqueResult {
            size: w.len(),
            witness: w.iter().map(|&i| graph.vertices[i]).collect(),
            exhaustive: true,
        },
        None => CliqueResult {
            size: best.len(),
            witness: best.iter().map(|&i| graph.vertices[i]).collect(),
            exhaustive: lex_complete,
        },
    }
}

/// Maximum tuple size within [1, x] under the all-powers target, over
/// shifts 1 <= n <= x (or 1 <= |n| <= x when `signed`).
#[derive(Clone, Debug, Serialize)]
pub struct FValueReport {
    pub x: u64,
    pub signed: bool,
    pub value: usize,
    pub witness_set: Vec<u64>,
    pub witness_shift: i64,
    /// No qualifying pair exists anywhere; the reported value is the
    /// single-element floor (the property holds vacuously for sets of
    /// size <= 1, so the value is never below 1).
    pub singleton_only: bool,
    pub exhaustive: bool,
}

/// Shifts in increasing magnitude, positive before negative.
fn shift_order(x: u64, signed: bool) -> Vec<i64> {
    let mut out = Vec::new();
    for m in 1..=x as i64 {
        out.push(m);
        if signed {
            out.push(-m);
        }
    }
    out
}

pub fn compute_f(x: u64, signed: bool, deadline: Option<Instant>) -> Result<FValueReport> {
    if x < 1 {
        return Err(Error::InvalidParam("f(x) requires x >= 1".into()));
    }
    let verts: Vec<u64> = (1..=x).collect();
    let limit = (x as u128) * (x as u128) + x as u128;
    let cap = ExponentCap::covering(limit);
    let table = PowerTable::build(limit, cap);

    let mut best: Option<(usize, Vec<u64>, i64)> = None;
    let mut exhaustive = true;
    for n in shift_order(x, signed) {
        let shift = Shift::new(n).expect("nonzero by construction");
        // the per-shift cap never misses an exponent: any power <= x^2+x
        // with base >= 2 has exponent <= log2(x^2+x)
        let g = build_graph_from_table(&verts, shift, PowerTarget::AnyPower(cap.get()), &table, cap.get());
        let r = max_clique(&g, None, deadline);
        exhaustive &= r.exhaustive;
        let better = match &best {
            Some((size, _, _)) => r.size > *size,
            None => true,
        };
        if better {
            best = Some((r.size, r.witness, n));
        }
        if let Some(d) = deadline {
            if Instant::now() >= d {
                exhaustive = false;
                break;
            }
        }
    }
    let (value, witness_set, witness_shift) = best.expect("at least one shift");
    Ok(FValueReport {
        x,
        signed,
        value,
        witness_set,
        witness_shift,
        singleton_only: value <= 1,
        exhaustive,
    })
}

/// Largest t for which some (A, B) with |A| = s, |B| = t inside the
/// given ranges has every ordered product `a*b + n` a k-th power.
#[derive(Clone, Debug, Serialize)]
pub struct BicliqueResult {
    pub t: usize,
    pub witness_a: Vec<u64>,
    pub witness_b: Vec<u64>,
    pub exhaustive: bool,
}

pub fn max_biclique_t(
    a_range: (u64, u64),
    b_range: (u64, u64),
    n: Shift,
    k: u32,
    s: usize,
    deadline: Option<Instant>,
) -> Result<BicliqueResult> {
    if s < 1 {
        return Err(Error::InvalidParam("biclique search requires s >= 1".into()));
    }
    let target = PowerTarget::exact(k)?;
    if a_range.0 < 1 || b_range.0 < 1 || a_range.0 > a_range.1 || b_range.0 > b_range.1 {
        return Err(Error::InvalidParam("ranges must satisfy 1 <= lo <= hi".into()));
    }
    let a_verts: Vec<u64> = (a_range.0..=a_range.1).collect();
    let b_verts: Vec<u64> = (b_range.0..=b_range.1).collect();
    let words = b_verts.len().div_ceil(64).max(1);

    // neighborhood of each a over the b-range
    let rows: Vec<Vec<u64>> = a_verts
        .iter()
        .map(|&a| {
            let mut row = vec![0u64; words];
            for (bi, &b) in b_verts.iter().enumerate() {
                if qualifies(a, b, n, target).holds() {
                    clique::bits_set(&mut row, bi);
                }
            }
            row
        })
        .collect();

    if a_verts.len() < s {
        return Ok(BicliqueResult {
            t: 0,
            witness_a: Vec::new(),
            witness_b: Vec::new(),
            exhaustive: true,
        });
    }

    struct SubsetScan<'a> {
        rows: &'a [Vec<u64>],
        s: usize,
        best_t: usize,
        best: Option<(Vec<usize>, Vec<u64>)>,
        deadline: Option<Instant>,
        timed_out: bool,
    }

    impl SubsetScan<'_> {
        fn rec(&mut self, start: usize, chosen: &mut Vec<usize>, inter: &[u64]) {
            if self.timed_out {
                return;
            }
            if let Some(d) = self.deadline {
                if chosen.len() <= 1 && Instant::now() >= d {
                    self.timed_out = true;
                    return;
                }
            }
            if chosen.len() == self.s {
                let t = clique::bits_count(inter);
                if t > self.best_t || self.best.is_none() {
                    self.best_t = t;
                    self.best = Some((chosen.clone(), inter.to_vec()));
                }
                return;
            }
            let mut sub = Vec::new();
            for i in start..self.rows.len() {
                clique::bits_and_into(&mut sub, inter, &self.rows[i]);
                // intersections only shrink; skip branches that cannot improve
                if self.best.is_some() && clique::bits_count(&sub) <= self.best_t {
                    if chosen.len() + 1 == self.s {
                        continue;
                    }
                    if clique::bits_count(&sub) < self.best_t.max(1) {
                        continue;
                    }
                }
                chosen.push(i);
                let sub_copy = std::mem::take(&mut sub);
                self.rec(i + 1, chosen, &sub_copy);
                sub = sub_copy;
                chosen.pop();
            }
        }
    }

    let full = {
        let mut v = vec![!0u64; words];
        let tail = b_verts.len() % 64;
        if tail != 0 {
            v[words - 1] = (1 << tail) - 1;
        }
        v
    };
    let mut scan = SubsetScan {
        rows: &rows,
        s,
        best_t: 0,
        best: None,
        deadline,
        timed_out: false,
    };
    let mut chosen = Vec::new();
    scan.rec(0, &mut chosen, &full);

    let (witness_a, witness_b) = match scan.best {
        Some((idx, inter)) => (
            idx.iter().map(|&i| a_verts[i]).collect(),
            clique::bits_iter(&inter).map(|i| b_verts[i]).collect(),
        ),
        None => (a_verts[..s].to_vec(), Vec::new()),
    };
    Ok(BicliqueResult {
        t: scan.best_t,
        witness_a,
        witness_b,
        exhaustive: !scan.timed_out,
    })
}

/// All quadruples (a1, a2, a3, a4) of distinct integers in the range
/// whose cyclic products satisfy `a1*a2+n` and `a4*a1+n` perfect
/// p1-th powers, `a2*a3+n` and `a3*a4+n` perfect p2-th powers.
///
/// Quadruples are emitted once per automorphism class of the pattern:
/// a2 < a4 always, and additionally a1 = min when p1 = p2 (rotations
/// are symmetries only in that case).
pub fn find_power_cycles(
    range: (u64, u64),
    n: Shift,
    p1: u32,
    p2: u32,
) -> Result<Vec<[u64; 4]>> {
    if range.0 < 1 {
        return Err(Error::InvalidParam("range must start at 1 or above".into()));
    }
    if range.0 > range.1 {
        return Ok(Vec::new());
    }
    let verts: Vec<u64> = (range.0..=range.1).collect();
    let words = verts.len().div_ceil(64).max(1);
    let t1 = PowerTarget::exact(p1)?;
    let t2 = PowerTarget::exact(p2)?;

    let build_rows = |target: PowerTarget| -> Vec<Vec<u64>> {
        verts
            .iter()
            .map(|&a| {
                let mut row = vec![0u64; words];
                for (bi, &b) in verts.iter().enumerate() {
                    if a != b && qualifies(a, b, n, target).holds() {
                        clique::bits_set(&mut row, bi);
                    }
                }
                row
            })
            .collect()
    };

    let rows1 = build_rows(t1);
    let rows2 = if p1 == p2 { rows1.clone() } else { build_rows(t2) };

    let mut out = Vec::new();
    let mut common = Vec::new();
    for i1 in 0..verts.len() {
        for i3 in 0..verts.len() {
            if i1 == i3 {
                continue;
            }
            if p1 == p2 && i3 < i1 {
                continue; // rotations are symmetries; fix a1 as the minimum
            }
            clique::bits_and_into(&mut common, &rows1[i1], &rows2[i3]);
            clique::bits_clear(&mut common, i1);
            clique::bits_clear(&mut common, i3);
            if p1 == p2 {
                // a1 = min of the quadruple
                for low in 0..i1 {
                    clique::bits_clear(&mut common, low);
                }
            }
            let cand: Vec<usize> = clique::bits_iter(&common).collect();
            for x in 0..cand.len() {
                for y in x + 1..cand.len() {
                    out.push([
                        verts[i1],
                        verts[cand[x]],
                        verts[i3],
                        verts[cand[y]],
                    ]);
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Counts qualifying pairs in a set of large elements (every element at
/// least `2|n|^17`) and checks the pair-count bound for the exponent:
/// `10|A|^2/21` (k = 2), `8|A|^{5/3}` (k = 3), `7|A|^{3/2}` (k >= 4).
pub fn pair_count_check(elements: &[u64], n: Shift, k: u32) -> Result<BoundReport> {
    if k < 2 {
        return Err(Error::InvalidParam("pair count bound requires k >= 2".into()));
    }
    let mut set = elements.to_vec();
    set.sort_unstable();
    set.dedup();
    let threshold = BigUint::from(2u32) * BigUint::from(n.magnitude()).pow(17u32);
    if let Some(&small) = set.iter().find(|&&a| BigUint::from(a) < threshold) {
        return Err(Error::Precondition(format!(
            "element {small} is below 2|n|^17 = {threshold}"
        )));
    }
    let target = PowerTarget::exact(k)?;
    let mut count = 0u64;
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            if qualifies(set[i], set[j], n, target).holds() {
                count += 1;
            }
        }
    }
    let size = set.len() as f64;
    let (bound, label) = match k {
        2 => (10.0 * size * size / 21.0, "pair count <= 10|A|^2/21 (k=2)"),
        3 => (8.0 * size.powf(5.0 / 3.0), "pair count <= 8|A|^{5/3} (k=3)"),
        _ => (7.0 * size.powf(1.5), "pair count <= 7|A|^{3/2} (k>=4)"),
    };
    Ok(BoundReport::checked(label, count as f64, bound, 1e-9))
}
