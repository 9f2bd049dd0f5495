//! Canonical labeling for small graphs: color refinement, then
//! individualization of one vertex at a time, keeping the largest
//! adjacency string over all leaves of the search. Twins in the cell being
//! split are interchangeable, so only one per twin class is tried.

use crate::format::format_graph6;
use crate::graph::Graph;

/// Canonical graph6 string: equal for two graphs iff they are isomorphic.
pub fn canonical_form(g: &Graph) -> String {
    format_graph6(&g.relabel(&canonical_labeling(g)))
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}

/// Permutation `perm` such that `g.relabel(&perm)` is the canonical graph.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let mut degree_cells: Vec<Vec<usize>> = Vec::new();
    let mut by_degree: Vec<usize> = g.vertices().collect();
    by_degree.sort_by_key(|&v| (g.degree(v), v));
    for v in by_degree {
        match degree_cells.last_mut() {
            Some(cell) if g.degree(cell[0]) == g.degree(v) => cell.push(v),
            _ => degree_cells.push(vec![v]),
        }
    }
    let start = refine(g, degree_cells);
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    search(g, start, &mut best);
    let (_, order) = best.expect("search visits at least one leaf");
    // order[i] is the vertex placed at position i.
    let mut perm = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i;
    }
    perm
}

fn search(g: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    let Some(pos) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
        let code = encode(g, &order);
        if best.as_ref().is_none_or(|(b, _)| code > *b) {
            *best = Some((code, order));
        }
        return;
    };
    let target = &cells[pos];
    let mut tried: Vec<usize> = Vec::new();
    for &v in target {
        if tried.iter().any(|&u| twins(g, u, v)) {
            continue;
        }
        tried.push(v);
        let mut next = cells[..pos].to_vec();
        next.push(vec![v]);
        next.push(target.iter().copied().filter(|&u| u != v).collect());
        next.extend(cells[pos + 1..].iter().cloned());
        search(g, refine(g, next), best);
    }
}

/// Same neighborhood apart from each other.
fn twins(g: &Graph, u: usize, v: usize) -> bool {
    let strip = |x: usize, other: usize| -> Vec<usize> {
        g.neighbors(x).iter().copied().filter(|&w| w != other).collect()
    };
    strip(u, v) == strip(v, u)
}

/// Splits cells by the number of neighbors in each other cell until
/// nothing changes. The split order depends only on counts, so it commutes
/// with isomorphisms.
fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut cell_of = vec![0; n];
    loop {
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let k = cells.len();
        let mut next = Vec::with_capacity(k);
        let mut changed = false;
        for c in &cells {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = c
                .iter()
                .map(|&v| {
                    let mut counts = vec![0; k];
                    for &w in g.neighbors(v) {
                        counts[cell_of[w]] += 1;
                    }
                    (counts, v)
                })
                .collect();
            keyed.sort();
            let before = next.len();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|p| p.1).collect());
                    start = i;
                }
            }
            changed |= next.len() - before > 1;
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

/// Upper triangle of the adjacency matrix in the given vertex order,
/// packed row by row.
fn encode(g: &Graph, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let mut out = Vec::with_capacity(n * n / 64 + 1);
    let mut word = 0u64;
    let mut bits = 0;
    for i in 0..n {
        for j in i + 1..n {
            word = word << 1 | g.has_edge(order[i], order[j]) as u64;
            bits += 1;
            if bits == 64 {
                out.push(word);
                word = 0;
                bits = 0;
            }
        }
    }
    out.push(word);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|v| (0..v).map(move |u| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        Graph::from_edges(n, edges).unwrap()
    }

    // Exhaustive isomorphism test over all permutations.
    fn brute_iso(a: &Graph, b: &Graph) -> bool {
        fn go(i: usize, a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let n = a.vertex_count();
            if i == n {
                return true;
            }
            for t in 0..n {
                if used[t] {
                    continue;
                }
                if (0..i).all(|j| a.has_edge(i, j) == b.has_edge(t, map[j])) {
                    used[t] = true;
                    map.push(t);
                    if go(i + 1, a, b, map, used) {
                        return true;
                    }
                    map.pop();
                    used[t] = false;
                }
            }
            false
        }
        a.vertex_count() == b.vertex_count()
            && go(0, a, b, &mut Vec::new(), &mut vec![false; a.vertex_count()])
    }

    #[test]
    fn relabeling_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=9);
            let g = random_graph(n, rng.gen(), &mut rng);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            assert_eq!(canonical_form(&g), canonical_form(&g.relabel(&perm)));
        }
    }

    #[test]
    fn agrees_with_permutation_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..400 {
            let n = rng.gen_range(1..=6);
            let p = rng.gen();
            let a = random_graph(n, p, &mut rng);
            let b = random_graph(n, p, &mut rng);
            assert_eq!(are_isomorphic(&a, &b), brute_iso(&a, &b), "{a:?} {b:?}");
        }
    }

    #[test]
    fn regular_graphs() {
        // Same degree sequence, different graphs: C6 and two triangles.
        let c6 = Graph::cycle(6);
        let two_k3 = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert!(!are_isomorphic(&c6, &two_k3));
        assert!(are_isomorphic(&Graph::path(4).complement(), &Graph::path(4)));
        assert!(!are_isomorphic(&named::butterfly(), &named::paw()));
    }
}
