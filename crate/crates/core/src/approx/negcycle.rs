//! Negative cycle detection by queue-based Bellman–Ford with periodic
//! checks of the parent graph.

use std::collections::VecDeque;

use crate::planar::Embedding;

/// Finds a simple directed cycle of negative total length using only darts
/// with `allowed[d]`. Every vertex starts at distance 0, so a cycle anywhere
/// in the graph is found.
pub fn find_negative_cycle(g: &Embedding, len: &[i128], allowed: &[bool]) -> Option<Vec<usize>> {
    let n = g.num_vertices();
    let mut dist = vec![0i128; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut queued = vec![true; n];
    let mut queue: VecDeque<usize> = (0..n).collect();
    let mut relaxations = 0usize;
    while let Some(v) = queue.pop_front() {
        queued[v] = false;
        for d in g.darts_at(v) {
            if !allowed[d] {
                continue;
            }
            let h = g.head(d);
            let nd = dist[v] + len[d];
            if nd < dist[h] {
                dist[h] = nd;
                parent[h] = Some(d);
                relaxations += 1;
                if relaxations.is_multiple_of(n) {
                    if let Some(c) = parent_cycle(g, &parent) {
                        return Some(c);
                    }
                }
                if !queued[h] {
                    queued[h] = true;
                    queue.push_back(h);
                }
            }
        }
    }
    // converged: the parent graph is a forest, no negative cycle
    None
}

/// Any cycle of the parent graph; such a cycle always has negative length.
fn parent_cycle(g: &Embedding, parent: &[Option<usize>]) -> Option<Vec<usize>> {
    let n = g.num_vertices();
    // 0 = unvisited, otherwise the walk that first reached the vertex
    let mut mark = vec![0usize; n];
    let mut found = None;
    'outer: for s in 0..n {
        let mut v = s;
        while mark[v] == 0 {
            mark[v] = s + 1;
            match parent[v] {
                Some(d) => v = g.tail(d),
                None => continue 'outer,
            }
        }
        if mark[v] == s + 1 {
            found = Some(v);
            break;
        }
    }
    let v = found?;
    let mut cycle = Vec::new();
    let mut x = v;
    loop {
        let d = parent[x].unwrap();
        cycle.push(d);
        x = g.tail(d);
        if x == v {
            break;
        }
    }
    cycle.reverse();
    Some(cycle)
}
