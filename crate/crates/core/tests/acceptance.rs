//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod support;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use petgraph::unionfind::UnionFind;
use rand::Rng;

use dirhom_core::coeff::{rat, ratio};
use dirhom_core::directed::{rank_function, DEFAULT_CIRCUIT_BUDGET};
use dirhom_core::metrics::{map_pair_cost, StabilityConfig};
use dirhom_core::reduction::{boundary_matrix, census, extract_diagram, reduce, reduce_in_order};
use dirhom_core::rips::DEFAULT_SIMPLEX_BUDGET;
use dirhom_core::semihomology::{
    bounded_cycles, even_cycles_trivial, h0_rank, is_acyclic_full_simplex, is_homologous, z1_generators, SearchLimits,
};
use dirhom_core::{
    bottleneck, build_filtration, directed_persistence, stability_check, subbarcode_match, undirected_diagrams, Bar, DirectedComplex,
    DirectedSimplex, DissimilarityMatrix, Extended, FilteredComplex, MapPair, PersistenceDiagram, Rational,
};

use support::*;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn figures() -> Outcome {
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    let cases: [(&str, FilteredComplex, PersistenceDiagram, PersistenceDiagram); 3] = [
        (
            "pentagon",
            pentagon(),
            bars(1, &[(1, None), (2, None), (2, None), (3, None)]),
            bars(1, &[(3, None), (3, None), (3, None), (3, None)]),
        ),
        ("square with triangle", square_with_triangle(), bars(1, &[(1, None), (2, Some(3))]), bars(1, &[(2, None), (2, Some(3))])),
        ("single circuit", one_circuit(), bars(1, &[(1, None), (2, None)]), bars(1, &[(2, None)])),
    ];
    for (name, f, want_undirected, want_directed) in cases {
        let start = Instant::now();
        let undirected = undirected_diagrams(&f, 1).map_err(|e| e.to_string())?.swap_remove(1);
        let directed = directed_persistence(&f, DEFAULT_CIRCUIT_BUDGET).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        slowest = slowest.max(took);
        if undirected != want_undirected {
            failures.push(format!("{name}: undirected {undirected}, expected {want_undirected}"));
        }
        if directed != want_directed {
            failures.push(format!("{name}: directed {directed}, expected {want_directed}"));
        }
        if took >= Duration::from_secs(1) {
            failures.push(format!("{name}: took {took:?}"));
        }
    }
    if failures.is_empty() {
        Ok(format!("three figure filtrations reproduced, slowest {slowest:?}"))
    } else {
        Err(failures.join("; "))
    }
}

fn pentagon_dimensions() -> Outcome {
    let f = pentagon();
    let rf = rank_function(&f, DEFAULT_CIRCUIT_BUDGET).map_err(|e| e.to_string())?;
    let three = rf.position(&rat(3)).ok_or("3 is not a critical value")?;
    let undirected = undirected_diagrams(&f, 1).map_err(|e| e.to_string())?.swap_remove(1);
    let alive = undirected
        .bars()
        .iter()
        .filter(|b| b.birth <= rat(3) && Extended::Finite(rat(3)) < b.death)
        .count();
    ensure(alive == 4, || format!("dim H1 at 3 is {alive}"))?;
    ensure(rf.rank(three, three) == 4, || format!("directed dim at 3 is {}", rf.rank(three, three)))?;
    for (i, delta) in rf.critical_values().iter().enumerate() {
        if *delta <= rat(2) {
            ensure(rf.rank(i, i) == 0, || format!("directed dim at {delta} is {}", rf.rank(i, i)))?;
        }
    }
    Ok("dim H1 = dim H1^Dir = 4 at 3; directed part 0 at and below 2".into())
}

fn triangles() -> Outcome {
    let x = DirectedComplex::close([[0usize, 1], [1, 2], [0, 2]]);
    let y = DirectedComplex::close([[0usize, 1], [1, 2], [2, 0]]);
    let z = DirectedComplex::close(vec![s(&[0, 1]), s(&[3, 0]), s(&[1, 2, 3])]);
    let e = |e: dirhom_core::Error| e.to_string();
    ensure(z1_generators(&x).map_err(e)?.is_empty(), || "X has a circuit".into())?;
    ensure(bounded_cycles(&x, 1, SearchLimits::default()).map_err(e)?.is_empty(), || "X has an N-cycle".into())?;
    ensure(z1_generators(&y).map_err(e)?.len() == 1, || "Y should have one circuit".into())?;
    let zc = z1_generators(&z).map_err(e)?;
    ensure(zc.len() == 2, || format!("Z has {} circuits", zc.len()))?;
    let witness = is_homologous(&z, &zc[0], &zc[1], SearchLimits::with_bound(1)).map_err(e)?;
    ensure(witness.is_yes(), || "no witness at bound 1 in Z".into())?;
    for (name, c) in [("X", &x), ("Y", &y), ("Z", &z)] {
        let f = FilteredComplex::from_entrances(c.all_simplices().map(|t| (t.clone(), rat(0))));
        let betti = undirected_diagrams(&f, 1).map_err(e)?[1].infinite_count();
        ensure(betti == 1, || format!("rational Betti 1 of {name} is {betti}"))?;
    }
    Ok("X none, Y one circuit, Z two homologous circuits; Betti 1 = 1 for all".into())
}

fn components() -> Outcome {
    let mut rng = rng(104);
    for trial in 0..100 {
        let count = rng.gen_range(1..12);
        let f = random_filtration(&mut rng, 8, count, 3);
        let x = f.complex();
        let mut uf = UnionFind::<usize>::new(8);
        for t in x.simplices(1) {
            uf.union(t.vertices()[0], t.vertices()[1]);
        }
        let expected: BTreeSet<usize> = x.vertices().map(|v| uf.find(v)).collect();
        let infinite = undirected_diagrams(&f, 0).map_err(|e| e.to_string())?[0].infinite_count();
        ensure(h0_rank(&x) == expected.len() && infinite == expected.len(), || {
            format!("trial {trial}: h0 {} union-find {} infinite bars {infinite}", h0_rank(&x), expected.len())
        })?;
    }
    Ok("100 random complexes agree with union-find and infinite Dgm0 bars".into())
}

fn polygon_law() -> Outcome {
    let mut checked = 0;
    for n in 3..=7usize {
        for mask in 0u32..(1 << n) {
            let edges: Vec<DirectedSimplex> = (0..n)
                .map(|i| {
                    let j = (i + 1) % n;
                    if mask >> i & 1 == 1 {
                        DirectedSimplex::edge(i, j)
                    } else {
                        DirectedSimplex::edge(j, i)
                    }
                })
                .collect();
            let x = DirectedComplex::close(edges);
            let coherent = mask == 0 || mask == (1 << n) - 1;
            let circuits = z1_generators(&x).map_err(|e| e.to_string())?;
            ensure(circuits.len() == usize::from(coherent), || format!("{n}-gon orientation {mask:b}: {} circuits", circuits.len()))?;
            // over N every cycle is a multiple of the unique circuit
            let cycles = bounded_cycles(&x, 1, SearchLimits::with_bound(2)).map_err(|e| e.to_string())?;
            ensure(cycles.len() == if coherent { 2 } else { 0 }, || format!("{n}-gon orientation {mask:b}: {} bounded cycles", cycles.len()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} orientations of 3..7-gons"))
}

fn even_cycles() -> Outcome {
    let mut rng = rng(106);
    let mut done = 0;
    while done < 50 {
        let n = rng.gen_range(2..=6);
        let count = rng.gen_range(2..10);
        let f = random_filtration(&mut rng, n, count, 3);
        let x = f.complex();
        let k = x.count(2);
        if k == 0 || k > 7 {
            continue;
        }
        let ok = even_cycles_trivial(&x, 2, SearchLimits::with_bound(3)).map_err(|e| e.to_string())?;
        ensure(ok, || format!("nonzero 2-cycle found in {:?}", x.simplices(2).collect::<Vec<_>>()))?;
        done += 1;
    }
    Ok("50 random complexes with 2-simplices have no 2-cycles within bound 3".into())
}

fn acyclic_simplices() -> Outcome {
    let mut times = Vec::new();
    for m in 1..=4 {
        let start = Instant::now();
        let ok = is_acyclic_full_simplex(m, SearchLimits::default()).map_err(|e| e.to_string())?;
        ensure(ok, || format!("m = {m} not acyclic within bound"))?;
        times.push(format!("m={m} {:?}", start.elapsed()));
    }
    Ok(times.join(", "))
}

fn subbarcodes() -> Outcome {
    let mut rng = rng(108);
    for trial in 0..100 {
        let n = rng.gen_range(4..=5);
        let d = random_matrix(&mut rng, n, 2, false);
        let f = build_filtration(&d, 2, DEFAULT_SIMPLEX_BUDGET).map_err(|e| e.to_string())?;
        let undirected = undirected_diagrams(&f, 1).map_err(|e| e.to_string())?.swap_remove(1);
        let directed = directed_persistence(&f, DEFAULT_CIRCUIT_BUDGET).map_err(|e| e.to_string())?;
        let m = subbarcode_match(&directed, &undirected).map_err(|m| format!("trial {trial}: unmatched {:?}", m.unmatched_directed))?;
        let sound = m.pairs.len() == directed.len() && m.pairs.iter().all(|(a, b)| a.death == b.death && a.birth >= b.birth);
        ensure(sound, || format!("trial {trial}: bad matching {:?}", m.pairs))?;
    }
    Ok("100 random 4-5 point matrices".into())
}

fn perturb(rng: &mut rand_chacha::ChaCha8Rng, d: &DissimilarityMatrix, eps: &Rational) -> DissimilarityMatrix {
    let steps: Vec<Rational> = (-4..=4).map(|k| eps * ratio(k, 4)).collect();
    let rows = d.rows().iter().map(|r| r.iter().map(|x| x + &steps[rng.gen_range(0..steps.len())]).collect()).collect();
    DissimilarityMatrix::new(rows).unwrap()
}

fn stability() -> Outcome {
    let mut rng = rng(109);
    let e = |e: dirhom_core::Error| e.to_string();
    for eps in [ratio(1, 10), ratio(1, 2)] {
        for trial in 0..50 {
            let d = random_matrix(&mut rng, 4, 3, false);
            let p = perturb(&mut rng, &d, &eps);
            let id = MapPair::new(vec![0, 1, 2, 3], vec![0, 1, 2, 3]).unwrap();
            let upper = map_pair_cost(&id, &d, &p).map_err(e)?;
            let report = stability_check(&d, &p, 1, Some(upper), StabilityConfig::default()).map_err(e)?;
            ensure(report.rows.len() == 3, || "expected Dgm0, Dgm1 and directed Dgm1".into())?;
            for row in &report.rows {
                ensure(row.bottleneck <= Extended::Finite(eps.clone()), || {
                    format!("eps {eps}, trial {trial}: {} Dgm{} bottleneck {}", row.kind, row.dimension, row.bottleneck)
                })?;
            }
            ensure(report.holds(), || format!("eps {eps}, trial {trial}: inequality fails"))?;
        }
    }
    for trial in 0..50 {
        let (n, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let a = random_matrix(&mut rng, n, 3, false);
        let b = random_matrix(&mut rng, m, 3, false);
        let report = stability_check(&a, &b, 1, None, StabilityConfig::default()).map_err(e)?;
        ensure(report.exact && report.holds(), || format!("exact trial {trial}: d_CD {} rows {:?}", report.distortion, report.rows))?;
    }
    Ok("100 perturbation trials within eps; 50 exact d_CD trials on <= 3 points".into())
}

fn symmetric_inputs() -> Outcome {
    let mut rng = rng(110);
    let e = |e: dirhom_core::Error| e.to_string();
    for trial in 0..20 {
        let n = rng.gen_range(2..=5);
        let d = random_metric(&mut rng, n);
        let f = build_filtration(&d, 2, DEFAULT_SIMPLEX_BUDGET).map_err(e)?;
        let undirected = undirected_diagrams(&f, 1).map_err(e)?;
        let directed = directed_persistence(&f, DEFAULT_CIRCUIT_BUDGET).map_err(e)?;
        ensure(directed == undirected[1], || format!("trial {trial}: directed {directed} vs undirected {}", undirected[1]))?;
        let classical = Cells::classical_rips(&d, 2);
        for k in 0..=1 {
            ensure(undirected[k] == classical.diagram(k), || format!("trial {trial}: Dgm{k} {} vs oracle {}", undirected[k], classical.diagram(k)))?;
        }
    }
    Ok("20 random metrics: directed = undirected Dgm1, both match simplicial Rips".into())
}

fn random_diagram(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> PersistenceDiagram {
    PersistenceDiagram::from_bars(
        1,
        (0..n).map(|_| {
            let b = ratio(rng.gen_range(0..10), 2);
            if rng.gen_bool(0.25) {
                Bar::infinite(b)
            } else {
                Bar::finite(b.clone(), b + ratio(rng.gen_range(1..10), 2))
            }
        }),
    )
}

fn add(a: Extended, b: Extended) -> Extended {
    match (a, b) {
        (Extended::Finite(x), Extended::Finite(y)) => Extended::Finite(x + y),
        _ => Extended::Infinite,
    }
}

fn bottleneck_checks() -> Outcome {
    let mut rng = rng(111);
    for trial in 0..200 {
        let na = rng.gen_range(0..=5);
        let nb = rng.gen_range(0..=5 - na);
        let a = random_diagram(&mut rng, na);
        let b = random_diagram(&mut rng, nb);
        let (got, want) = (bottleneck(&a, &b), brute_force_bottleneck(&a, &b));
        ensure(got == want, || format!("trial {trial}: {a} vs {b}: {got} but oracle {want}"))?;
    }
    for trial in 0..100 {
        let mut d = || {
            let n = rng.gen_range(0..=4);
            random_diagram(&mut rng, n)
        };
        let (a, b, c) = (d(), d(), d());
        ensure(bottleneck(&a, &a) == Extended::Finite(rat(0)), || format!("triple {trial}: d(A,A) != 0"))?;
        ensure(bottleneck(&a, &b) == bottleneck(&b, &a), || format!("triple {trial}: asymmetric"))?;
        ensure(bottleneck(&a, &c) <= add(bottleneck(&a, &b), bottleneck(&b, &c)), || format!("triple {trial}: triangle inequality"))?;
    }
    Ok("200 pairs agree with exhaustive matching; 100 triples satisfy the axioms".into())
}

fn reduction_invariance() -> Outcome {
    let mut rng = rng(112);
    let e = |e: dirhom_core::Error| e.to_string();
    for trial in 0..50 {
        let f = if trial % 2 == 0 {
            random_filtration(&mut rng, 5, 10, 4)
        } else {
            build_filtration(&random_matrix(&mut rng, 3, 3, false), 2, DEFAULT_SIMPLEX_BUDGET).map_err(e)?
        };
        let m = boundary_matrix(&f);
        let standard = reduce(&m);
        let reverse: Vec<usize> = (0..m.len()).rev().collect();
        let other = reduce_in_order(&m, &reverse).map_err(e)?;
        let top = f.max_dim().unwrap_or(0);
        let cap = f.truncated_at().map_or(top, |c| c.min(top + 1) - 1);
        for k in 0..=cap {
            let (a, b) = (extract_diagram(&standard, &f, k).map_err(e)?, extract_diagram(&other, &f, k).map_err(e)?);
            ensure(a == b, || format!("trial {trial}: Dgm{k} {a} vs {b}"))?;
        }
        let c = census(&standard, &f);
        let cells = Cells::from_filtration(&f);
        for k in 0..=top {
            let simplices = f.iter().filter(|(t, _)| t.dim() == k).count();
            ensure(c.positive[k] + c.negative[k] == simplices, || format!("trial {trial}: census does not cover dim {k}"))?;
            ensure(c.betti(k) == cells.betti(k), || format!("trial {trial}: Betti {k} {} vs rank-nullity {}", c.betti(k), cells.betti(k)))?;
        }
    }
    Ok("50 filtrations: standard and reverse-sweep reductions agree; census matches rank-nullity".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("figure barcodes", figures),
        ("pentagon dimensions by stage", pentagon_dimensions),
        ("three triangles over N and Q", triangles),
        ("H0 equals weak components", components),
        ("polygon law", polygon_law),
        ("even-dimensional cycles vanish", even_cycles),
        ("full simplices are acyclic", acyclic_simplices),
        ("directed bars form a subbarcode", subbarcodes),
        ("stability bound", stability),
        ("symmetric inputs", symmetric_inputs),
        ("bottleneck distance", bottleneck_checks),
        ("reduction invariance", reduction_invariance),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
