//! Brute-force enumeration of free product elements, kept independent of the
//! library's word code: elements are alternating `(side, exponent)` lists and
//! distances come from a bucketed Dijkstra over the Cayley graph.

#![allow(dead_code)]

use std::collections::HashMap;

/// `None` is `Z`, `Some(p)` is `Z/p`.
pub type Factor = Option<i64>;

/// One generator edge: right multiplication by `side^step` at cost `weight`.
#[derive(Clone, Copy, Debug)]
pub struct Edge {
    pub side: u8,
    pub step: i64,
    pub weight: u64,
}

fn normalise(f: Factor, e: i64) -> i64 {
    match f {
        None => e,
        Some(p) => e.rem_euclid(p),
    }
}

fn times(factors: [Factor; 2], word: &[(u8, i64)], edge: Edge) -> Vec<(u8, i64)> {
    let mut out = word.to_vec();
    let f = factors[edge.side as usize];
    match out.last_mut() {
        Some(last) if last.0 == edge.side => {
            last.1 = normalise(f, last.1 + edge.step);
            if last.1 == 0 {
                out.pop();
            }
        }
        _ => out.push((edge.side, normalise(f, edge.step))),
    }
    out
}

/// Sphere sizes `c(0..=r_max)` for integer edge weights.
pub fn spheres(factors: [Factor; 2], edges: &[Edge], r_max: u64) -> Vec<u64> {
    let mut dist: HashMap<Vec<(u8, i64)>, u64> = HashMap::new();
    let mut buckets: Vec<Vec<Vec<(u8, i64)>>> = vec![Vec::new(); r_max as usize + 1];
    buckets[0].push(Vec::new());
    dist.insert(Vec::new(), 0);
    let mut counts = vec![0u64; r_max as usize + 1];
    for d in 0..=r_max {
        let bucket = std::mem::take(&mut buckets[d as usize]);
        for w in bucket {
            if dist[&w] != d {
                continue;
            }
            counts[d as usize] += 1;
            for &e in edges {
                let nd = d + e.weight;
                if nd > r_max {
                    continue;
                }
                let next = times(factors, &w, e);
                let better = dist.get(&next).is_none_or(|&old| nd < old);
                if better {
                    dist.insert(next.clone(), nd);
                    buckets[nd as usize].push(next);
                }
            }
        }
    }
    counts
}

/// Edges for the generator metric: `a^±1` of weight `wa`, `b^±1` of weight `wb`.
pub fn generator_edges(wa: u64, wb: u64) -> Vec<Edge> {
    vec![
        Edge { side: 0, step: 1, weight: wa },
        Edge { side: 0, step: -1, weight: wa },
        Edge { side: 1, step: 1, weight: wb },
        Edge { side: 1, step: -1, weight: wb },
    ]
}

/// Edges for the unit word metric on every non-identity letter of two finite cyclic factors.
pub fn all_letter_edges(p: i64, q: i64) -> Vec<Edge> {
    let a = (1..p).map(|j| Edge { side: 0, step: j, weight: 1 });
    let b = (1..q).map(|j| Edge { side: 1, step: j, weight: 1 });
    a.chain(b).collect()
}

pub fn cumulative(spheres: &[u64]) -> Vec<u64> {
    spheres
        .iter()
        .scan(0, |acc, c| {
            *acc += c;
            Some(*acc)
        })
        .collect()
}
