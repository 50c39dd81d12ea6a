//! Exact maximum-clique search: branch and bound with greedy coloring
//! upper bounds over word-packed adjacency rows. Deterministic by fixed
//! vertex order; a separate pass refines the witness to the
//! lexicographically smallest maximum clique.
//!
//! The solver renumbers vertices internally along a degeneracy order
//! (densest core first) and keeps one reusable workspace per recursion
//! depth, so the hot path allocates nothing.

use std::time::Instant;

/// Undirected graph over indices 0..n with bitset adjacency rows.
#[derive(Clone, Debug)]
pub struct BitGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitGraph {
            n,
            words,
            rows: vec![0u64; n * words],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        debug_assert!(i != j && i < self.n && j < self.n);
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
        self.rows[j * self.words + i / 64] |= 1 << (i % 64);
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    /// Bitset with every vertex present.
    pub fn full_set(&self) -> Vec<u64> {
        let mut v = vec![!0u64; self.words];
        let tail = self.n % 64;
        if tail != 0 {
            v[self.words - 1] = (1u64 << tail) - 1;
        }
        if self.n == 0 {
            v.fill(0);
        }
        v
    }

    /// Degeneracy order, densest core first, ties to the smallest index.
    fn degeneracy_order(&self) -> Vec<usize> {
        let mut degree: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; self.n];
        let mut elimination = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let v = (0..self.n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| degree[v])
                .expect("vertices remain");
            removed[v] = true;
            elimination.push(v);
            for u in bits_iter(self.row(v)) {
                if !removed[u] {
                    degree[u] -= 1;
                }
            }
        }
        elimination.reverse();
        elimination
    }
}

pub fn bits_count(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

pub fn bits_is_empty(words: &[u64]) -> bool {
    words.iter().all(|&w| w == 0)
}

pub fn bits_first(words: &[u64]) -> Option<usize> {
    for (i, &w) in words.iter().enumerate() {
        if w != 0 {
            return Some(i * 64 + w.trailing_zeros() as usize);
        }
    }
    None
}

pub fn bits_contains(words: &[u64], v: usize) -> bool {
    words[v / 64] >> (v % 64) & 1 == 1
}

pub fn bits_set(words: &mut [u64], v: usize) {
    words[v / 64] |= 1 << (v % 64);
}

pub fn bits_clear(words: &mut [u64], v: usize) {
    words[v / 64] &= !(1 << (v % 64));
}

pub fn bits_and_into(dst: &mut Vec<u64>, a: &[u64], b: &[u64]) {
    dst.clear();
    dst.extend(a.iter().zip(b).map(|(x, y)| x & y));
}

pub fn bits_iter(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + b)
        })
    })
}

#[derive(Default)]
struct Level {
    cands: Vec<u64>,
    uncolored: Vec<u64>,
    scratch: Vec<u64>,
    order: Vec<(u32, u32)>,
}

/// Subproblem on at most 64 vertices, packed into single words. The
/// deep bulk of the search lives here, where candidate sets are small
/// and one-word operations replace full bitset scans.
struct SmallGraph {
    verts: Vec<u32>,
    rows: [u64; 64],
}

impl SmallGraph {
    /// Extract the subgraph induced by the (at most 64) candidates,
    /// keeping ascending vertex order so the search explores the same
    /// tree the wide representation would.
    fn extract(g: &BitGraph, cands: &[u64]) -> SmallGraph {
        let verts: Vec<u32> = bits_iter(cands).map(|v| v as u32).collect();
        debug_assert!(verts.len() <= 64);
        let mut rows = [0u64; 64];
        for i in 0..verts.len() {
            let row = g.row(verts[i] as usize);
            for (j, &u) in verts.iter().enumerate().skip(i + 1) {
                if row[u as usize / 64] >> (u % 64) & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
        }
        SmallGraph { verts, rows }
    }

    fn full(&self) -> u64 {
        if self.verts.len() == 64 {
            !0
        } else {
            (1u64 << self.verts.len()) - 1
        }
    }
}

struct Solver<'g> {
    g: &'g BitGraph,
    levels: Vec<Level>,
    current: Vec<u32>,
    best: Vec<u32>,
    /// Existence mode: stop as soon as a clique of this size is found.
    target: Option<usize>,
    found: bool,
    deadline: Option<Instant>,
    timed_out: bool,
    ticks: u32,
    nodes: u64,
}

impl<'g> Solver<'g> {
    fn new(g: &'g BitGraph, target: Option<usize>, deadline: Option<Instant>) -> Self {
        let depth_cap = g.len() + 2;
        let mut levels = Vec::with_capacity(depth_cap);
        for _ in 0..depth_cap {
            levels.push(Level::default());
        }
        Solver {
            g,
            levels,
            current: Vec::new(),
            best: Vec::new(),
            target,
            found: false,
            deadline,
            timed_out: false,
            ticks: 0,
            nodes: 0,
        }
    }

    fn stop(&mut self) -> bool {
        if self.found || self.timed_out {
            return true;
        }
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks % 2048 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                    return true;
                }
            }
        }
        false
    }

    /// Clique size the current branch must exceed to matter.
    fn threshold(&self) -> usize {
        match self.target {
            Some(t) => t - 1,
            None => self.best.len(),
        }
    }

    fn record(&mut self) {
        if self.current.len() > self.best.len() {
            self.best.clear();
            self.best.extend_from_slice(&self.current);
            if let Some(t) = self.target {
                if self.best.len() >= t {
                    self.found = true;
                }
            }
        }
    }

    /// One-word branch and bound with the same coloring bound and the
    /// same vertex order as the wide path.
    fn expand_small(&mut self, sub: &SmallGraph, cands: u64) {
        if self.stop() {
            return;
        }
        self.nodes += 1;
        let need = self.threshold() - self.current.len();

        // greedy coloring in registers
        let mut order = [(0u8, 0u8); 64];
        let mut len = 0usize;
        let mut uncolored = cands;
        let mut color = 0u8;
        while uncolored != 0 {
            color += 1;
            let mut class = uncolored;
            while class != 0 {
                let v = class.trailing_zeros() as usize;
                let bit = 1u64 << v;
                class &= !sub.rows[v] & !bit;
                uncolored &= !bit;
                if color as usize > need {
                    order[len] = (v as u8, color);
                    len += 1;
                }
            }
        }

        let mut cands = cands;
        for idx in (0..len).rev() {
            let (v, color) = order[idx];
            if self.current.len() + color as usize <= self.threshold() {
                break; // every earlier vertex has a smaller-or-equal bound
            }
            let v = v as usize;
            self.current.push(sub.verts[v]);
            let child = cands & sub.rows[v];
            self.record();
            // a subtree too small to beat the incumbent is not entered
            if self.current.len() + (child.count_ones() as usize) > self.threshold()
                && !self.found
                && !self.timed_out
            {
                self.expand_small(sub, child);
            }
            self.current.pop();
            if self.found || self.timed_out {
                break;
            }
            cands &= !(1u64 << v);
        }
    }

    fn expand(&mut self, depth: usize) {
        if self.stop() {
            return;
        }
        self.nodes += 1;
        let words = self.g.words();
        let mut cands = std::mem::take(&mut self.levels[depth].cands);
        let mut order = std::mem::take(&mut self.levels[depth].order);
        let mut uncolored = std::mem::take(&mut self.levels[depth].uncolored);
        let mut scratch = std::mem::take(&mut self.levels[depth].scratch);

        // a clique beating the incumbent must use a vertex colored above
        // `need`; lower colors stay in the candidate set but never branch
        let need = self.threshold() - self.current.len();

        // greedy sequential coloring: emit branch vertices in ascending
        // color order so the tail carries the largest bounds
        order.clear();
        uncolored.clear();
        uncolored.extend_from_slice(&cands);
        scratch.resize(words, 0);
        let mut color = 0usize;
        while !bits_is_empty(&uncolored) {
            color += 1;
            scratch.copy_from_slice(&uncolored);
            while let Some(v) = bits_first(&scratch) {
                bits_clear(&mut scratch, v);
                bits_clear(&mut uncolored, v);
                let row = self.g.row(v);
                for (c, r) in scratch.iter_mut().zip(row) {
                    *c &= !r;
                }
                if color > need {
                    order.push((v as u32, color as u32));
                }
            }
        }

        for idx in (0..order.len()).rev() {
            let (v, color) = order[idx];
            if self.current.len() + color as usize <= self.threshold() {
                break; // every earlier vertex has a smaller-or-equal bound
            }
            let v = v as usize;
            self.current.push(v as u32);
            let mut child = std::mem::take(&mut self.levels[depth + 1].cands);
            bits_and_into(&mut child, &cands, self.g.row(v));
            let child_count = bits_count(&child);
            self.record();
            // a subtree too small to beat the incumbent is not entered
            if self.current.len() + child_count > self.threshold()
                && !self.found
                && !self.timed_out
            {
                if child_count <= 64 {
                    let sub = SmallGraph::extract(self.g, &child);
                    self.expand_small(&sub, sub.full());
                } else {
                    self.levels[depth + 1].cands = child.clone();
                    self.expand(depth + 1);
                }
            }
            self.levels[depth + 1].cands = child;
            self.current.pop();
            if self.found || self.timed_out {
                break;
            }
            bits_clear(&mut cands, v);
        }

        let level = &mut self.levels[depth];
        level.cands = cands;
        level.order = order;
        level.uncolored = uncolored;
        level.scratch = scratch;
    }
}

/// Greedy clique from a chosen start: repeatedly take the candidate with
/// the most neighbors among the remaining candidates.
fn greedy_from(g: &BitGraph, cands: &[u64], start: Option<usize>) -> Vec<usize> {
    let mut clique = Vec::new();
    let mut avail = cands.to_vec();
    let mut tmp = Vec::new();
    if let Some(s) = start {
        if !bits_contains(&avail, s) {
            return clique;
        }
        clique.push(s);
        bits_and_into(&mut tmp, &avail, g.row(s));
        std::mem::swap(&mut avail, &mut tmp);
    }
    while !bits_is_empty(&avail) {
        let mut pick = usize::MAX;
        let mut best_deg = 0usize;
        for v in bits_iter(&avail) {
            let deg = avail
                .iter()
                .zip(g.row(v))
                .map(|(a, r)| (a & r).count_ones() as usize)
                .sum();
            if pick == usize::MAX || deg > best_deg {
                best_deg = deg;
                pick = v;
            }
        }
        clique.push(pick);
        bits_and_into(&mut tmp, &avail, g.row(pick));
        std::mem::swap(&mut avail, &mut tmp);
    }
    clique.sort_unstable();
    clique
}

/// Initial incumbent: the degree-greedy clique plus greedy completions
/// seeded from a spread of the highest-connectivity vertices.
fn initial_clique(g: &BitGraph, cands: &[u64]) -> Vec<usize> {
    let mut best = greedy_from(g, cands, None);
    let mut seeds: Vec<usize> = bits_iter(cands).collect();
    seeds.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    for &s in seeds.iter().take(24) {
        let c = greedy_from(g, cands, Some(s));
        if c.len() > best.len() {
            best = c;
        }
    }
    best
}

/// Renumber a graph along the degeneracy order (densest core first).
/// Returns the permuted graph and the map new index -> old index.
fn renumber(g: &BitGraph) -> (BitGraph, Vec<usize>) {
    let order = match std::env::var("DTUPLE_CLIQUE_ORDER").as_deref() {
        Ok("identity") => (0..g.len()).collect(),
        Ok("degdesc") => {
            let mut o: Vec<usize> = (0..g.len()).collect();
            o.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
            o
        }
        Ok("degasc") => {
            let mut o: Vec<usize> = (0..g.len()).collect();
            o.sort_by_key(|&v| (g.degree(v), v));
            o
        }
        Ok("degenrev") => {
            let mut o = g.degeneracy_order();
            o.reverse();
            o
        }
        _ => g.degeneracy_order(),
    };
    let mut position = vec![0usize; g.len()];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let mut permuted = BitGraph::new(g.len());
    for old in 0..g.len() {
        for u in bits_iter(g.row(old)) {
            if u > old {
                permuted.add_edge(position[old], position[u]);
            }
        }
    }
    (permuted, order)
}

/// Exact maximum clique within `cands` (all vertices if `None`).
/// Returns the clique (sorted) and whether the search ran to completion.
pub fn max_clique_in(
    g: &BitGraph,
    cands: Option<&[u64]>,
    deadline: Option<Instant>,
) -> (Vec<usize>, bool) {
    let full;
    let cands = match cands {
        Some(c) => c,
        None => {
            full = g.full_set();
            &full
        }
    };
    if g.is_empty() || bits_is_empty(cands) {
        return (Vec::new(), true);
    }

    // solve on the renumbered graph, map the witness back
    let (pg, order) = renumber(g);
    let mut pcands = vec![0u64; pg.words()];
    for (new, &old) in order.iter().enumerate() {
        if bits_contains(cands, old) {
            bits_set(&mut pcands, new);
        }
    }

    let mut solver = Solver::new(&pg, None, deadline);
    solver.best = initial_clique(&pg, &pcands)
        .into_iter()
        .map(|v| v as u32)
        .collect();
    let greedy_size = solver.best.len();
    if bits_count(&pcands) <= 64 {
        let sub = SmallGraph::extract(&pg, &pcands);
        solver.expand_small(&sub, sub.full());
    } else {
        solver.levels[0].cands = pcands;
        solver.expand(0);
    }
    if std::env::var_os("DTUPLE_CLIQUE_STATS").is_some() {
        eprintln!(
            "clique stats: n={} greedy={} best={} nodes={}",
            g.len(),
            greedy_size,
            solver.best.len(),
            solver.nodes
        );
    }

    let mut best: Vec<usize> = solver.best.iter().map(|&v| order[v as usize]).collect();
    best.sort_unstable();
    (best, !solver.timed_out)
}

/// Is there a clique of at least `size` within `cands`? Returns the
/// witness if found, plus the exhaustiveness flag.
pub fn find_clique_of_size(
    g: &BitGraph,
    cands: &[u64],
    size: usize,
    deadline: Option<Instant>,
) -> (Option<Vec<usize>>, bool) {
    if size == 0 {
        return (Some(Vec::new()), true);
    }
    if bits_count(cands) < size {
        return (None, true);
    }
    let greedy = initial_clique(g, cands);
    if greedy.len() >= size {
        return (Some(greedy[..size].to_vec()), true);
    }
    let mut solver = Solver::new(g, Some(size), deadline);
    if bits_count(cands) <= 64 {
        let sub = SmallGraph::extract(g, cands);
        solver.expand_small(&sub, sub.full());
    } else {
        solver.levels[0].cands = cands.to_vec();
        solver.expand(0);
    }
    if solver.found {
        let mut w: Vec<usize> = solver.best.iter().map(|&v| v as usize).collect();
        w.sort_unstable();
        w.truncate(size);
        (Some(w), true)
    } else {
        (None, !solver.timed_out)
    }
}

/// The lexicographically smallest maximum clique, given the known
/// maximum size: scan vertices in ascending order and keep a prefix that
/// still extends to a clique of the full size.
pub fn lex_min_clique_of_size(
    g: &BitGraph,
    size: usize,
    deadline: Option<Instant>,
) -> (Option<Vec<usize>>, bool) {
    if size == 0 {
        return (Some(Vec::new()), true);
    }
    let mut chosen: Vec<usize> = Vec::new();
    let mut cands = g.full_set();
    let mut sub = Vec::new();
    for v in 0..g.len() {
        if !bits_contains(&cands, v) {
            continue;
        }
        bits_and_into(&mut sub, &cands, g.row(v));
        let need = size - chosen.len() - 1;
        let (hit, complete) = find_clique_of_size(g, &sub, need, deadline);
        if !complete {
            return (None, false);
        }
        if hit.is_some() {
            chosen.push(v);
            if chosen.len() == size {
                return (Some(chosen), true);
            }
            std::mem::swap(&mut cands, &mut sub);
        } else {
            // v is in no maximum clique extending the current prefix
            bits_clear(&mut cands, v);
        }
    }
    (None, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Naive oracle: enumerate every clique by backtracking without
    /// bounds of any kind.
    pub fn oracle_max_clique(g: &BitGraph) -> usize {
        fn rec(g: &BitGraph, cands: &[u64], size: usize, best: &mut usize) {
            *best = (*best).max(size);
            let cands_vec: Vec<usize> = bits_iter(cands).collect();
            for v in cands_vec {
                let mut masked = cands.to_vec();
                for u in 0..=v {
                    if bits_contains(&masked, u) {
                        bits_clear(&mut masked, u);
                    }
                }
                let mut sub = Vec::new();
                bits_and_into(&mut sub, &masked, g.row(v));
                rec(g, &sub, size + 1, best);
            }
        }
        let mut best = 0;
        rec(g, &g.full_set(), 0, &mut best);
        best
    }

    fn graph_from_edges(n: usize, edges: &[(usize, usize)]) -> BitGraph {
        let mut g = BitGraph::new(n);
        for &(i, j) in edges {
            g.add_edge(i, j);
        }
        g
    }

    #[test]
    fn small_graphs() {
        let g = BitGraph::new(0);
        assert_eq!(max_clique_in(&g, None, None).0.len(), 0);

        let g = BitGraph::new(3); // edgeless
        assert_eq!(max_clique_in(&g, None, None).0.len(), 1);

        let g = graph_from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        let (c, done) = max_clique_in(&g, None, None);
        assert!(done);
        assert_eq!(c, vec![0, 1, 2]);
    }

    #[test]
    fn matches_oracle_on_random_graphs() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for trial in 0..200 {
            let n = rng.random_range(1..=18);
            let p = rng.random_range(0.1..0.9);
            let mut g = BitGraph::new(n);
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random_bool(p) {
                        g.add_edge(i, j);
                    }
                }
            }
            let (c, done) = max_clique_in(&g, None, None);
            assert!(done);
            assert_eq!(c.len(), oracle_max_clique(&g), "trial {trial}");
            // witness really is a clique
            for x in 0..c.len() {
                for y in x + 1..c.len() {
                    assert!(g.has_edge(c[x], c[y]));
                }
            }
        }
    }

    #[test]
    fn respects_candidate_masks() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.random_range(4..=14);
            let mut g = BitGraph::new(n);
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random_bool(0.5) {
                        g.add_edge(i, j);
                    }
                }
            }
            let mut mask = g.full_set();
            for v in 0..n {
                if rng.random_bool(0.4) {
                    bits_clear(&mut mask, v);
                }
            }
            let (c, done) = max_clique_in(&g, Some(&mask), None);
            assert!(done);
            for &v in &c {
                assert!(bits_contains(&mask, v));
            }
        }
    }

    #[test]
    fn lex_min_is_smallest() {
        // two maximum cliques {1,2,3} and {0,4,5}; lex-min is {0,4,5}
        let g = graph_from_edges(6, &[(1, 2), (2, 3), (1, 3), (0, 4), (4, 5), (0, 5)]);
        let (w, done) = lex_min_clique_of_size(&g, 3, None);
        assert!(done);
        assert_eq!(w.unwrap(), vec![0, 4, 5]);
    }

    #[test]
    fn existence_queries() {
        let g = graph_from_edges(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]);
        let full = g.full_set();
        assert!(find_clique_of_size(&g, &full, 3, None).0.is_some());
        assert!(find_clique_of_size(&g, &full, 4, None).0.is_none());
    }
}
