//! Exhaustive searches used as ground truth. Every search runs under a
//! [`SearchBudget`]; running out of budget is reported as
//! [`Error::BudgetExceeded`], never as an answer.

pub mod canon;
pub mod enumerate;

use std::collections::{HashMap, VecDeque};
use std::time::{Duration, Instant};

use crate::certificate::{NoReason, RetractCertificate, Verdict, VertexMap};
use crate::error::{Error, Result};
use crate::folding::{apply_fold, CompleteColoring, FoldSequence, Folding};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_vertices: usize,
    pub max_states: u64,
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub const DEFAULT_STATES: u64 = 10_000_000;

    pub fn retract() -> Self {
        Self::with_vertices(8)
    }

    pub fn folding() -> Self {
        Self::with_vertices(8)
    }

    pub fn achromatic() -> Self {
        Self::with_vertices(9)
    }

    pub fn with_vertices(max_vertices: usize) -> Self {
        SearchBudget {
            max_vertices,
            max_states: Self::DEFAULT_STATES,
            time_limit: None,
        }
    }

    fn check_size(&self, g: &Graph) -> Result<()> {
        let n = g.vertex_count();
        if n > self.max_vertices || n > 64 {
            return Err(Error::BudgetExceeded(format!(
                "{n} vertices, limit {}",
                self.max_vertices.min(64)
            )));
        }
        Ok(())
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self::retract()
    }
}

struct Meter<'a> {
    budget: &'a SearchBudget,
    states: u64,
    start: Instant,
}

impl<'a> Meter<'a> {
    fn new(budget: &'a SearchBudget) -> Self {
        Meter {
            budget,
            states: 0,
            start: Instant::now(),
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.states += 1;
        if self.states > self.budget.max_states {
            return Err(Error::BudgetExceeded(format!(
                "more than {} states",
                self.budget.max_states
            )));
        }
        if let Some(limit) = self.budget.time_limit {
            if self.states.is_multiple_of(4096) && self.start.elapsed() > limit {
                return Err(Error::BudgetExceeded(format!("time limit {limit:?}")));
            }
        }
        Ok(())
    }
}

fn masks(g: &Graph) -> Vec<u64> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Extends a partial map `rho` (`usize::MAX` = unassigned) to a
/// homomorphism into the graph with adjacency masks `hm`, visiting the
/// unassigned vertices in `order`.
fn extend(
    gm: &[u64],
    hm: &[u64],
    order: &[usize],
    rho: &mut Vec<usize>,
    meter: &mut Meter,
) -> Result<bool> {
    let Some((&v, rest)) = order.split_first() else {
        return Ok(true);
    };
    let mut cand = full(hm.len());
    let mut nb = gm[v];
    while nb != 0 {
        let w = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        if rho[w] != usize::MAX {
            cand &= hm[rho[w]];
        }
    }
    while cand != 0 {
        let y = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        meter.tick()?;
        rho[v] = y;
        if extend(gm, hm, rest, rho, meter)? {
            return Ok(true);
        }
    }
    rho[v] = usize::MAX;
    Ok(false)
}

/// Unassigned vertices ordered so that each one has as many assigned
/// neighbors as possible when it is reached.
fn search_order(gm: &[u64], assigned: u64) -> Vec<usize> {
    let n = gm.len();
    let mut done = assigned;
    let mut order = Vec::new();
    while done != full(n) {
        let v = (0..n)
            .filter(|&v| done >> v & 1 == 0)
            .max_by_key(|&v| ((gm[v] & done).count_ones(), gm[v].count_ones(), std::cmp::Reverse(v)))
            .expect("some vertex is unassigned");
        done |= 1 << v;
        order.push(v);
    }
    order
}

/// Is `h` a retract of `g`? Tries every embedding of `h` as an induced
/// subgraph and, for each, searches for a retraction fixing it.
pub fn brute_retract(g: &Graph, h: &Graph, budget: &SearchBudget) -> Result<Verdict> {
    budget.check_size(g)?;
    budget.check_size(h)?;
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    if nh > ng {
        return Ok(Verdict::No(NoReason::TooLarge));
    }
    if nh == 0 {
        return Ok(if ng == 0 {
            Verdict::Yes(RetractCertificate::identity(0))
        } else {
            Verdict::No(NoReason::Exhaustive)
        });
    }
    let (gm, hm) = (masks(g), masks(h));
    let mut meter = Meter::new(budget);
    let mut gamma = Vec::with_capacity(nh);
    let found = embed(&gm, &hm, &mut gamma, 0, &mut meter, &mut |gamma, meter| {
        let mut rho = vec![usize::MAX; ng];
        let mut assigned = 0u64;
        for (y, &x) in gamma.iter().enumerate() {
            rho[x] = y;
            assigned |= 1 << x;
        }
        let order = search_order(&gm, assigned);
        Ok(extend(&gm, &hm, &order, &mut rho, meter)?.then_some(rho))
    })?;
    Ok(match found {
        Some((gamma, rho)) => Verdict::Yes(RetractCertificate {
            rho: VertexMap(rho),
            gamma: VertexMap(gamma),
        }),
        None => Verdict::No(NoReason::Exhaustive),
    })
}

type Found = Option<(Vec<usize>, Vec<usize>)>;
type Finish<'a> = dyn FnMut(&[usize], &mut Meter) -> Result<Option<Vec<usize>>> + 'a;

fn embed(
    gm: &[u64],
    hm: &[u64],
    gamma: &mut Vec<usize>,
    used: u64,
    meter: &mut Meter,
    finish: &mut Finish,
) -> Result<Found> {
    let y = gamma.len();
    if y == hm.len() {
        return Ok(finish(gamma, meter)?.map(|rho| (gamma.clone(), rho)));
    }
    let degree = hm[y].count_ones();
    for x in 0..gm.len() {
        if used >> x & 1 == 1 || gm[x].count_ones() < degree {
            continue;
        }
        let consistent = gamma
            .iter()
            .enumerate()
            .all(|(z, &gz)| (hm[y] >> z & 1) == (gm[x] >> gz & 1));
        if !consistent {
            continue;
        }
        meter.tick()?;
        gamma.push(x);
        if let Some(found) = embed(gm, hm, gamma, used | 1 << x, meter, finish)? {
            return Ok(Some(found));
        }
        gamma.pop();
    }
    Ok(None)
}

/// Is `G[hset]` a retract of `g` through a retraction fixing `hset`?
/// Certificates refer to the induced subgraph with vertex `i` = `hset[i]`.
pub fn brute_retract_fixed(g: &Graph, hset: &[usize], budget: &SearchBudget) -> Result<Verdict> {
    budget.check_size(g)?;
    let (h, _) = g.induced_subgraph(hset)?;
    let n = g.vertex_count();
    if hset.is_empty() {
        return Ok(if n == 0 {
            Verdict::Yes(RetractCertificate::identity(0))
        } else {
            Verdict::No(NoReason::Exhaustive)
        });
    }
    let (gm, hm) = (masks(g), masks(&h));
    let mut meter = Meter::new(budget);
    let mut rho = vec![usize::MAX; n];
    let mut assigned = 0u64;
    for (i, &v) in hset.iter().enumerate() {
        rho[v] = i;
        assigned |= 1 << v;
    }
    let order = search_order(&gm, assigned);
    Ok(if extend(&gm, &hm, &order, &mut rho, &mut meter)? {
        Verdict::Yes(RetractCertificate {
            rho: VertexMap(rho),
            gamma: VertexMap(hset.to_vec()),
        })
    } else {
        Verdict::No(NoReason::Exhaustive)
    })
}

/// Any homomorphism `g -> h`.
pub fn brute_hom(g: &Graph, h: &Graph, budget: &SearchBudget) -> Result<Option<VertexMap>> {
    budget.check_size(g)?;
    budget.check_size(h)?;
    let (gm, hm) = (masks(g), masks(h));
    let mut meter = Meter::new(budget);
    let mut rho = vec![usize::MAX; g.vertex_count()];
    let order = search_order(&gm, 0);
    Ok(extend(&gm, &hm, &order, &mut rho, &mut meter)?.then_some(VertexMap(rho)))
}

/// Clique number by branch and bound.
pub fn brute_clique(g: &Graph) -> Result<usize> {
    SearchBudget::with_vertices(64).check_size(g)?;
    fn grow(gm: &[u64], cand: u64, size: usize, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        grow(gm, cand & gm[v], size + 1, best);
        grow(gm, cand & !(1 << v), size, best);
    }
    let gm = masks(g);
    let mut best = 0;
    grow(&gm, full(gm.len()), 0, &mut best);
    Ok(best)
}

/// Chromatic number: the least `k` admitting a proper `k`-coloring.
pub fn brute_chromatic(g: &Graph) -> Result<usize> {
    SearchBudget::with_vertices(64).check_size(g)?;
    fn color(gm: &[u64], v: usize, k: usize, colors: &mut Vec<usize>) -> bool {
        if v == gm.len() {
            return true;
        }
        // Colors in use so far plus one fresh one.
        let used = colors[..v].iter().copied().max().map_or(0, |m| m + 1);
        for c in 0..k.min(used + 1) {
            let clash = (0..v).any(|w| gm[v] >> w & 1 == 1 && colors[w] == c);
            if !clash {
                colors[v] = c;
                if color(gm, v + 1, k, colors) {
                    return true;
                }
            }
        }
        false
    }
    let gm = masks(g);
    let n = gm.len();
    let mut colors = vec![0; n];
    Ok((0..=n)
        .find(|&k| color(&gm, 0, k, &mut colors))
        .expect("n colors always suffice"))
}

/// Achromatic number: the most classes in a complete coloring. Enumerates
/// proper colorings in restricted-growth form.
pub fn brute_achromatic(g: &Graph, budget: &SearchBudget) -> Result<(usize, CompleteColoring)> {
    budget.check_size(g)?;
    let gm = masks(g);
    let n = gm.len();
    if n == 0 {
        return Ok((0, CompleteColoring::default()));
    }
    struct State<'a> {
        gm: &'a [u64],
        colors: Vec<usize>,
        best: usize,
        witness: Vec<usize>,
    }
    fn go(s: &mut State, v: usize, used: usize, meter: &mut Meter) -> Result<()> {
        let n = s.gm.len();
        if used + (n - v) <= s.best {
            return Ok(());
        }
        if v == n {
            let mut class_nb = vec![0u64; used];
            for (w, &c) in s.colors.iter().enumerate() {
                let mut nb = s.gm[w];
                while nb != 0 {
                    let x = nb.trailing_zeros() as usize;
                    nb &= nb - 1;
                    class_nb[c] |= 1 << s.colors[x];
                }
            }
            let all = full(used);
            if class_nb.iter().enumerate().all(|(c, &m)| m | 1 << c == all) {
                s.best = used;
                s.witness = s.colors.clone();
            }
            return Ok(());
        }
        for c in 0..=used {
            let clash = (0..v).any(|w| s.gm[v] >> w & 1 == 1 && s.colors[w] == c);
            if clash {
                continue;
            }
            meter.tick()?;
            s.colors[v] = c;
            go(s, v + 1, used.max(c + 1), meter)?;
        }
        Ok(())
    }
    let mut s = State {
        gm: &gm,
        colors: vec![0; n],
        best: 0,
        witness: Vec::new(),
    };
    let mut meter = Meter::new(budget);
    go(&mut s, 0, 0, &mut meter)?;
    let mut classes = vec![Vec::new(); s.best];
    for (v, &c) in s.witness.iter().enumerate() {
        classes[c].push(v);
    }
    Ok((s.best, CompleteColoring(classes)))
}

/// Folding number by breadth-first search over the graphs reachable by
/// simple folds, one component at a time. Isomorphic states are visited
/// once. Folds keep a graph connected and a connected graph without two
/// vertices at distance two is complete, so the first complete graph reached
/// is the largest one.
pub fn brute_folding_number(g: &Graph, budget: &SearchBudget) -> Result<Folding> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut meter = Meter::new(budget);
    let mut best: Option<Folding> = None;
    for component in g.components() {
        let (sub, _) = g.induced_subgraph(&component)?;
        budget.check_size(&sub)?;
        let (number, sequence) = fold_search(sub, &mut meter)?;
        if best.as_ref().is_none_or(|b| number > b.number) {
            best = Some(Folding {
                number,
                component,
                sequence,
            });
        }
    }
    Ok(best.expect("at least one component"))
}

fn fold_search(start: Graph, meter: &mut Meter) -> Result<(usize, FoldSequence)> {
    let mut states: Vec<(Graph, usize, (usize, usize))> = Vec::new();
    let mut seen: HashMap<String, ()> = HashMap::new();
    seen.insert(canon::canonical_form(&start), ());
    states.push((start, usize::MAX, (0, 0)));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        meter.tick()?;
        let cur = states[i].0.clone();
        if cur.is_complete() {
            let mut seq = Vec::new();
            let mut at = i;
            while states[at].1 != usize::MAX {
                seq.push(states[at].2);
                at = states[at].1;
            }
            seq.reverse();
            return Ok((cur.vertex_count(), FoldSequence(seq)));
        }
        let n = cur.vertex_count();
        for x in 0..n {
            for y in x + 1..n {
                let Ok(next) = apply_fold(&cur, x, y) else {
                    continue;
                };
                let key = canon::canonical_form(&next);
                if seen.insert(key, ()).is_none() {
                    states.push((next, i, (x, y)));
                    queue.push_back(states.len() - 1);
                }
            }
        }
    }
    unreachable!("a connected graph always folds down to a complete graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::{is_homomorphism, verify_retract_certificate};
    use crate::folding::verify_fold_sequence;
    use crate::named;

    fn b() -> SearchBudget {
        SearchBudget::retract()
    }

    #[test]
    fn retract_examples() {
        let bf = named::butterfly();
        let k3 = Graph::complete(3);
        let v = brute_retract(&bf, &k3, &b()).unwrap();
        assert!(verify_retract_certificate(&bf, &k3, v.certificate().unwrap()));
        assert!(!brute_retract(&bf, &named::paw(), &b()).unwrap().is_yes());
        let v = brute_retract(&named::paw(), &named::paw(), &b()).unwrap();
        assert!(verify_retract_certificate(&named::paw(), &named::paw(), v.certificate().unwrap()));
        assert_eq!(
            brute_retract(&Graph::complete(2), &k3, &b()).unwrap(),
            Verdict::No(NoReason::TooLarge)
        );
        assert!(matches!(
            brute_retract(&Graph::empty(9), &k3, &b()),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn fixed_examples() {
        let bf = named::butterfly();
        assert!(brute_retract_fixed(&bf, &[0, 1, 2], &b()).unwrap().is_yes());
        assert!(!brute_retract_fixed(&bf, &[0, 1, 2, 3], &b()).unwrap().is_yes());
    }

    #[test]
    fn hom_examples() {
        let c4 = Graph::cycle(4);
        let k2 = Graph::complete(2);
        let m = brute_hom(&c4, &k2, &b()).unwrap().unwrap();
        assert!(is_homomorphism(&c4, &k2, m.as_slice()));
        assert!(brute_hom(&Graph::complete(3), &k2, &b()).unwrap().is_none());
        assert!(brute_hom(&Graph::empty(3), &Graph::empty(1), &b()).unwrap().is_some());
    }

    #[test]
    fn numbers() {
        let a = SearchBudget::achromatic();
        assert_eq!(brute_achromatic(&named::two_k2(), &a).unwrap().0, 2);
        assert_eq!(brute_achromatic(&Graph::complete(3), &a).unwrap().0, 3);
        assert_eq!(brute_achromatic(&Graph::empty(1), &a).unwrap().0, 1);
        // P4 has a complete 3-coloring: {0}, {1,3}, {2}.
        let (psi, c) = brute_achromatic(&Graph::path(4), &a).unwrap();
        assert_eq!(psi, 3);
        assert!(c.is_valid(&Graph::path(4)));
        assert_eq!(brute_clique(&named::butterfly()).unwrap(), 3);
        assert_eq!(brute_clique(&Graph::empty(1)).unwrap(), 1);
        assert_eq!(brute_chromatic(&Graph::cycle(4)).unwrap(), 2);
        assert_eq!(brute_chromatic(&Graph::cycle(5)).unwrap(), 3);
        assert_eq!(brute_chromatic(&Graph::empty(0)).unwrap(), 0);
    }

    #[test]
    fn folding_examples() {
        let f = SearchBudget::folding();
        for (g, s) in [
            (Graph::path(4), 2),
            (Graph::complete(3), 3),
            (named::butterfly(), 3),
            (Graph::cycle(5), 3),
            (Graph::empty(3), 1),
        ] {
            let r = brute_folding_number(&g, &f).unwrap();
            assert_eq!(r.number, s, "{g:?}");
            let (sub, _) = g.induced_subgraph(&r.component).unwrap();
            assert!(verify_fold_sequence(&sub, &r.sequence, &Graph::complete(s)));
        }
    }
}
