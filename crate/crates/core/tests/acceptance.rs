//! Acceptance suite. One line per criterion; the process exits nonzero if
//! any criterion fails. Criteria run one after another so the time caps and
//! the scaling check measure each criterion alone.

use std::process::ExitCode;
use std::thread;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cograph_retract::absolute::{counterexample_embedding, is_absolute_retract, AbsoluteVerdict};
use cograph_retract::cograph::fpt::fpt_retract_cotrees;
use cograph_retract::cograph::partitioned::PartitionedInstance;
use cograph_retract::cotree::Node;
use cograph_retract::folding::{apply_fold, folding_number_universal, threshold_folding_number};
use cograph_retract::generate::{random_cograph, random_threshold, random_tp};
use cograph_retract::oracle::canon::are_isomorphic;
use cograph_retract::oracle::enumerate::{all_cographs, all_graphs, all_threshold, all_trees, all_trivially_perfect};
use cograph_retract::oracle::{
    brute_achromatic, brute_chromatic, brute_folding_number, brute_hom, brute_retract, brute_retract_fixed,
    SearchBudget,
};
use cograph_retract::reduction::{brute_3partition, encode, ThreePartitionInstance};
use cograph_retract::{
    build_cotree, compose_certificates, fpt_retract, hom_exists, is_homomorphism, named, partitioned_retract,
    threshold_retract, tp_retract, verify_retract_certificate, Cotree, Graph, Kind, Verdict,
};

type Check = Result<String, String>;

/// Pinned limits.
const CAP_MINUTES: [u64; 10] = [5, 10, 15, 5, 5, 30, 20, 15, 10, 5];
const THRESHOLD_SLOPE_MAX: f64 = 1.3;
const TP_SLOPE_MAX: f64 = 2.8;
const RANDOM_FPT_PAIRS: usize = 2000;
const RANDOM_PARTITIONED: usize = 2000;
const SUPERGRAPHS_PER_H: usize = 500;
const CHAINS: usize = 500;

fn upto(n: usize, f: fn(usize) -> Vec<Graph>) -> Vec<Graph> {
    (1..=n).flat_map(f).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Compares a solver verdict with the oracle on one pair and checks the
/// certificate of every YES.
fn agree(g: &Graph, h: &Graph, got: &Verdict, yes: &mut usize) -> Result<(), String> {
    let want = brute_retract(g, h, &SearchBudget::retract()).map_err(|e| e.to_string())?;
    ensure(got.is_yes() == want.is_yes(), || {
        format!("G={g:?} H={h:?}: solver {got:?}, oracle {want:?}")
    })?;
    if let Some(c) = got.certificate() {
        *yes += 1;
        ensure(verify_retract_certificate(g, h, c), || {
            format!("G={g:?} H={h:?}: certificate {c:?} does not verify")
        })?;
    }
    Ok(())
}

fn sweep(gs: &[Graph], hs: &[Graph], solve: impl Fn(&Graph, &Graph) -> Verdict) -> Check {
    let mut yes = 0;
    let mut pairs = 0;
    for g in gs {
        for h in hs {
            agree(g, h, &solve(g, h), &mut yes)?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, {yes} yes"))
}

fn criterion_1() -> Check {
    let gs = upto(7, all_threshold);
    let hs = upto(5, all_threshold);
    sweep(&gs, &hs, |g, h| threshold_retract(g, h).expect("threshold inputs"))
}

fn criterion_2() -> Check {
    let b = named::butterfly();
    ensure(!tp_retract(&b, &named::paw()).unwrap().is_yes(), || "butterfly/paw must be NO".into())?;
    ensure(tp_retract(&b, &Graph::complete(3)).unwrap().is_yes(), || "butterfly/K3 must be YES".into())?;
    let gs = upto(7, all_trivially_perfect);
    let hs = upto(5, all_trivially_perfect);
    sweep(&gs, &hs, |g, h| tp_retract(g, h).expect("trivially perfect inputs"))
}

fn criterion_3() -> Check {
    let gs = upto(7, all_cographs);
    let hs = upto(4, all_cographs);
    let exhaustive = sweep(&gs, &hs, |g, h| fpt_retract(g, h).expect("cograph inputs"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut yes = 0;
    for i in 0..RANDOM_FPT_PAIRS {
        let g = random_cograph(rng.gen_range(1..=8), rng.gen()).unwrap();
        // Half the patterns are induced subgraphs of G, which makes YES common.
        let h = if i % 2 == 0 {
            let mut vs: Vec<usize> = g.vertices().collect();
            vs.shuffle(&mut rng);
            vs.truncate(rng.gen_range(1..=vs.len().min(5)));
            g.induced_subgraph(&vs).unwrap().0
        } else {
            random_cograph(rng.gen_range(1..=5), rng.gen()).unwrap()
        };
        agree(&g, &h, &fpt_retract(&g, &h).unwrap(), &mut yes)?;
    }
    Ok(format!("exhaustive {exhaustive}; random {RANDOM_FPT_PAIRS} pairs, {yes} yes"))
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut yes = 0;
    for _ in 0..RANDOM_PARTITIONED {
        let n = rng.gen_range(1..=8);
        let g = random_cograph(n, rng.gen()).unwrap();
        let hset: Vec<usize> = g.vertices().filter(|_| rng.gen_bool(0.5)).collect();
        let inst = PartitionedInstance::new(g.clone(), &hset).unwrap();
        let got = partitioned_retract(&inst).unwrap();
        let want = brute_retract_fixed(&g, &inst.hset, &SearchBudget::retract()).unwrap();
        ensure(got.is_yes() == want.is_yes(), || {
            format!("G={g:?} hset={hset:?}: solver {got:?}, oracle {want:?}")
        })?;
        if let Some(c) = got.certificate() {
            yes += 1;
            let fixes = inst.hset.iter().enumerate().all(|(i, &v)| c.rho.get(v) == i && c.gamma.get(i) == v);
            ensure(fixes && verify_retract_certificate(&g, &inst.pattern(), c), || {
                format!("G={g:?} hset={hset:?}: bad certificate {c:?}")
            })?;
        }
    }
    Ok(format!("{RANDOM_PARTITIONED} instances, {yes} yes"))
}

fn criterion_5() -> Check {
    let gs = upto(6, all_cographs);
    let hs = upto(5, all_cographs);
    let mut yes = 0;
    for g in &gs {
        for h in hs.iter() {
            let got = hom_exists(g, h).unwrap();
            let want = brute_hom(g, h, &SearchBudget::retract()).unwrap();
            ensure(got.is_some() == want.is_some(), || format!("G={g:?} H={h:?}"))?;
            if let Some(m) = got {
                yes += 1;
                ensure(is_homomorphism(g, h, m.as_slice()), || format!("G={g:?} H={h:?}: bad witness"))?;
            }
        }
    }
    Ok(format!("{} pairs, {yes} yes", gs.len() * hs.len()))
}

/// Nondecreasing item lists of length `len` from `lo..=hi` summing to `sum`.
fn multisets(len: usize, lo: usize, hi: usize, sum: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return if sum == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        if first * len > sum {
            break;
        }
        for mut rest in multisets(len - 1, first, hi, sum - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn criterion_6() -> Check {
    let mut instances = Vec::new();
    for m in 1..=2 {
        for b in 1..=20usize {
            // Strictly between B/4 and B/2.
            let lo = b / 4 + 1;
            let hi = (b - 1) / 2;
            if lo > hi {
                continue;
            }
            for items in multisets(3 * m, lo, hi, m * b) {
                instances.push(ThreePartitionInstance::new(m, b, items).unwrap());
            }
        }
    }
    let named_yes = ThreePartitionInstance::new(2, 16, vec![5, 5, 5, 5, 6, 6]).unwrap();
    let named_no = ThreePartitionInstance::new(2, 16, vec![5, 5, 5, 5, 5, 7]).unwrap();
    ensure(instances.contains(&named_yes) && instances.contains(&named_no), || {
        "named instances missing from the sweep".into()
    })?;
    let (mut yes, mut degenerate) = (0, 0);
    for inst in &instances {
        let e = encode(inst).map_err(|e| e.to_string())?;
        degenerate += e.degenerate as usize;
        let got = fpt_retract_cotrees(&e.g, &e.h).verdict;
        let want = brute_3partition(inst);
        ensure(got.is_yes() == want.is_some(), || {
            format!("{inst:?}: fpt {got:?}, brute {want:?}")
        })?;
        if let Some(c) = got.certificate() {
            yes += 1;
            ensure(verify_retract_certificate(&e.g.to_graph(), &e.h.to_graph(), c), || {
                format!("{inst:?}: certificate does not verify")
            })?;
        }
        if !e.degenerate {
            let (g, h) = (e.g.to_graph(), e.h.to_graph());
            ensure(h.vertex_count() == inst.m * inst.bound + 3 * inst.m, || format!("{inst:?}: |V(H)|"))?;
            ensure(
                g.vertex_count() == inst.m * e.triples.len() * (inst.bound + 3),
                || format!("{inst:?}: |V(G)|"),
            )?;
            ensure(
                e.g.clique_number() == inst.m * inst.bound && e.h.clique_number() == inst.m * inst.bound,
                || format!("{inst:?}: clique numbers"),
            )?;
            ensure(build_cotree(&g).is_ok() && build_cotree(&h).is_ok(), || format!("{inst:?}: not cographs"))?;
        }
    }
    for (inst, expect) in [(&named_yes, true), (&named_no, false)] {
        let e = encode(inst).unwrap();
        ensure(fpt_retract_cotrees(&e.g, &e.h).verdict.is_yes() == expect, || format!("{inst:?}"))?;
    }
    Ok(format!("{} instances, {yes} yes, {degenerate} degenerate", instances.len()))
}

fn criterion_7() -> Check {
    let fold = SearchBudget::folding();
    let achro = SearchBudget::achromatic();
    let mut count = [0usize; 3];
    for g in upto(7, all_threshold) {
        let chi = brute_chromatic(&g).unwrap();
        let sigma = brute_folding_number(&g, &fold).unwrap();
        let (psi, coloring) = brute_achromatic(&g, &achro).unwrap();
        let fast = threshold_folding_number(&g).unwrap();
        ensure(chi == sigma.number && sigma.number == psi && fast.number == chi, || {
            format!("{g:?}: chi {chi}, sigma {}, psi {psi}, fast {}", sigma.number, fast.number)
        })?;
        ensure(sigma.verify(&g) && fast.verify(&g) && coloring.is_valid(&g), || format!("{g:?}: witnesses"))?;
        count[0] += 1;
    }
    for n in 1..=7 {
        for rest in all_graphs(n - 1) {
            let g = Graph::empty(1).join(&rest);
            let sigma = brute_folding_number(&g, &fold).unwrap();
            let (psi, _) = brute_achromatic(&g, &achro).unwrap();
            let fast = folding_number_universal(&g, &achro).unwrap();
            ensure(sigma.number == psi && fast.number == psi && fast.verify(&g), || {
                format!("{g:?}: sigma {}, psi {psi}, fast {}", sigma.number, fast.number)
            })?;
            count[1] += 1;
        }
    }
    for t in upto(8, all_trees) {
        let sigma = brute_folding_number(&t, &fold).unwrap();
        ensure(sigma.number <= 2 && sigma.verify(&t), || format!("tree {t:?}: sigma {}", sigma.number))?;
        let n = t.vertex_count();
        for x in 0..n {
            for y in x + 1..n {
                if let Ok(f) = apply_fold(&t, x, y) {
                    let tree = f.is_connected() && f.edge_count() + 1 == f.vertex_count();
                    ensure(tree, || format!("folding {x},{y} of {t:?} leaves the trees"))?;
                }
            }
        }
        count[2] += 1;
    }
    Ok(format!(
        "{} threshold, {} with universal vertex, {} trees",
        count[0], count[1], count[2]
    ))
}

/// Random cograph containing `h` as the subgraph induced by its first
/// `|V(h)|` vertices, with up to `extra` more vertices. Each new vertex
/// either joins an existing node's children or wraps a node in a new
/// parent together with itself, which reaches every one-vertex extension.
fn extend(t: &Cotree, extra: usize, rng: &mut ChaCha8Rng) -> Cotree {
    let mut nodes: Vec<Node> = t.nodes().to_vec();
    let mut root = t.root();
    let mut parent: Vec<Option<usize>> = (0..nodes.len()).map(|i| t.parent(i)).collect();
    for n in t.vertex_count()..t.vertex_count() + extra {
        let x = rng.gen_range(0..nodes.len());
        let kind = if rng.gen_bool(0.5) { Kind::Join } else { Kind::Union };
        nodes.push(Node::Leaf(n));
        parent.push(None);
        let leaf = nodes.len() - 1;
        match &mut nodes[x] {
            Node::Internal { kind: k, children } if *k == kind => {
                children.push(leaf);
                parent[leaf] = Some(x);
            }
            _ => {
                nodes.push(Node::Internal {
                    kind,
                    children: vec![x, leaf],
                });
                let wrap = nodes.len() - 1;
                parent.push(parent[x]);
                if let Some(p) = parent[x] {
                    if let Node::Internal { children, .. } = &mut nodes[p] {
                        for c in children.iter_mut() {
                            if *c == x {
                                *c = wrap;
                            }
                        }
                    }
                } else {
                    root = wrap;
                }
                parent[x] = Some(wrap);
                parent[leaf] = Some(wrap);
            }
        }
    }
    Cotree::from_nodes(nodes, root).unwrap().normalize()
}

fn criterion_8() -> Check {
    let paw = named::paw();
    let AbsoluteVerdict::NotAbsolute { supergraph, .. } = is_absolute_retract(&paw).unwrap() else {
        return Err("paw reported absolute".into());
    };
    ensure(are_isomorphic(&supergraph, &named::butterfly()), || "paw counterexample is not the butterfly".into())?;
    let hset: Vec<usize> = paw.vertices().collect();
    let inst = PartitionedInstance::new(supergraph.clone(), &hset).unwrap();
    ensure(!partitioned_retract(&inst).unwrap().is_yes(), || "butterfly retracts to paw".into())?;
    ensure(
        !brute_retract(&supergraph, &paw, &SearchBudget::retract()).unwrap().is_yes(),
        || "oracle finds a retraction of the butterfly onto the paw".into(),
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut absolute, mut not_absolute, mut samples) = (0, 0, 0);
    for h in upto(6, all_cographs).into_iter().filter(|h| h.is_connected()) {
        ensure(h.diameter().is_some_and(|d| d <= 2), || format!("{h:?}: diameter above two"))?;
        let th = build_cotree(&h).unwrap();
        let omega = th.clique_number();
        let hset: Vec<usize> = h.vertices().collect();
        match is_absolute_retract(&h).unwrap() {
            // A connected supergraph of K1 has an edge, so none keeps ω = 1.
            AbsoluteVerdict::Absolute { .. } if omega == 1 => absolute += 1,
            AbsoluteVerdict::Absolute { cliques } => {
                absolute += 1;
                for (v, c) in cliques.iter().enumerate() {
                    let clique = c.len() == omega && c.contains(&v) && c.iter().all(|&a| c.iter().all(|&b| a == b || h.has_edge(a, b)));
                    ensure(clique, || format!("{h:?}: bad clique for vertex {v}"))?;
                }
                let (mut taken, mut tries) = (0, 0);
                while taken < SUPERGRAPHS_PER_H {
                    tries += 1;
                    ensure(tries <= 100 * SUPERGRAPHS_PER_H, || format!("{h:?}: too few extensions"))?;
                    let tg = extend(&th, rng.gen_range(1..=3), &mut rng);
                    let g = tg.to_graph();
                    if tg.clique_number() != omega || !g.is_connected() {
                        continue;
                    }
                    taken += 1;
                    let inst = PartitionedInstance::new(g.clone(), &hset).unwrap();
                    ensure(inst.pattern() == h, || "extension does not contain H induced".into())?;
                    let v = partitioned_retract(&inst).unwrap();
                    ensure(v.is_yes(), || format!("H={h:?} G={g:?}: absolute but no retraction"))?;
                }
                samples += taken;
            }
            AbsoluteVerdict::NotAbsolute { supergraph, .. } => {
                not_absolute += 1;
                let g = counterexample_embedding(&h).map_err(|e| e.to_string())?;
                ensure(g == supergraph, || "counterexample differs between calls".into())?;
                let inst = PartitionedInstance::new(g.clone(), &hset).unwrap();
                let tg = build_cotree(&g).unwrap();
                ensure(
                    inst.pattern() == h && tg.clique_number() == omega && !partitioned_retract(&inst).unwrap().is_yes(),
                    || format!("H={h:?}: counterexample {g:?} not certified"),
                )?;
                let oracle = brute_retract(&g, &h, &SearchBudget::retract()).unwrap();
                ensure(!oracle.is_yes(), || format!("H={h:?}: oracle retracts {g:?}"))?;
            }
        }
    }
    Ok(format!(
        "{absolute} absolute ({samples} supergraphs), {not_absolute} not absolute"
    ))
}

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let budget = SearchBudget::retract();
    // A retract of `g` through a random vertex subset, preferring proper ones.
    let step = |g: &Graph, rng: &mut ChaCha8Rng| {
        let n = g.vertex_count();
        let mut subsets: Vec<u32> = (1..(1u32 << n) - 1).collect();
        subsets.shuffle(rng);
        subsets.push((1 << n) - 1);
        for mask in subsets {
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if let Verdict::Yes(c) = brute_retract_fixed(g, &set, &budget).unwrap() {
                return (g.induced_subgraph(&set).unwrap().0, c);
            }
        }
        unreachable!("the full vertex set always works")
    };
    let mut proper = 0;
    for _ in 0..CHAINS {
        let n = rng.gen_range(1..=6);
        let p = rng.gen_range(0.2..0.8);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|v| (0..v).map(move |u| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = Graph::from_edges(n, edges).unwrap();
        let (a, ga) = step(&g, &mut rng);
        let (b, ab) = step(&a, &mut rng);
        proper += (b.vertex_count() < g.vertex_count()) as usize;
        let gb = compose_certificates(&ga, &ab).map_err(|e| e.to_string())?;
        ensure(verify_retract_certificate(&g, &b, &gb), || format!("G={g:?} A={a:?} B={b:?}"))?;
    }
    Ok(format!("{CHAINS} chains, {proper} proper"))
}

/// Least-squares slope of `ln y` against `ln x`.
fn slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Median of five timed runs.
fn time(mut f: impl FnMut()) -> f64 {
    let mut runs: Vec<f64> = (0..5)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed().as_secs_f64()
        })
        .collect();
    runs.sort_by(f64::total_cmp);
    runs[2]
}

fn criterion_9() -> Check {
    let mut threshold = Vec::new();
    for n in [3125, 6250, 12_500, 25_000, 50_000, 100_000] {
        let g = random_threshold(n, n as u64, 8.0 / n as f64).unwrap();
        let size = (g.vertex_count() + g.edge_count()) as f64;
        let secs = time(|| {
            let v = threshold_retract(&g, &g).unwrap();
            assert!(v.is_yes());
        });
        threshold.push((size, secs));
    }
    let mut tp = Vec::new();
    for n in [250, 500, 1000, 2000] {
        let g = random_tp(n, n as u64).unwrap();
        let big = (n * n) as f64;
        let secs = time(|| {
            let v = tp_retract(&g, &g).unwrap();
            assert!(v.is_yes());
        });
        tp.push((big, secs));
    }
    let (s1, s2) = (slope(&threshold), slope(&tp));
    let detail = format!(
        "threshold slope {s1:.2} (max {THRESHOLD_SLOPE_MAX}), tp slope {s2:.2} (max {TP_SLOPE_MAX})"
    );
    if s1 <= THRESHOLD_SLOPE_MAX && s2 <= TP_SLOPE_MAX {
        Ok(detail)
    } else {
        Err(detail)
    }
}

const NAMES: [&str; 10] = [
    "threshold solver matches the oracle",
    "trivially perfect solver matches the oracle",
    "general solver matches the oracle",
    "partitioned solver matches the oracle",
    "homomorphisms follow clique and chromatic numbers",
    "3-partition encoding is sound",
    "folding numbers",
    "absolute retracts",
    "scaling",
    "certificates compose",
];

fn run(i: usize, f: fn() -> Check) -> (usize, Check, Duration) {
    let start = Instant::now();
    let r = thread::Builder::new()
        .stack_size(256 << 20)
        .spawn(f)
        .unwrap()
        .join()
        .unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
    (i, r, start.elapsed())
}

fn report(i: usize, r: &Check, elapsed: Duration) -> bool {
    let cap = Duration::from_secs(60 * CAP_MINUTES[i]);
    let ok = r.is_ok() && elapsed <= cap;
    let detail = match r {
        Ok(s) | Err(s) => s,
    };
    println!(
        "[{}] criterion {}: {} ({detail}; {:.1}s, cap {}m)",
        if ok { "PASS" } else { "FAIL" },
        i + 1,
        NAMES[i],
        elapsed.as_secs_f64(),
        CAP_MINUTES[i],
    );
    ok
}

fn main() -> ExitCode {
    let criteria: [fn() -> Check; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut all = true;
    for (i, f) in criteria.into_iter().enumerate() {
        let (i, r, elapsed) = run(i, f);
        all &= report(i, &r, elapsed);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
