//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dirhom_core::coeff::{rat, ratio};
use dirhom_core::{Bar, DirectedSimplex, DissimilarityMatrix, Extended, FilteredComplex, PersistenceDiagram, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn s(v: &[usize]) -> DirectedSimplex {
    DirectedSimplex::new(v.to_vec())
}

pub fn bars(dim: usize, list: &[(i64, Option<i64>)]) -> PersistenceDiagram {
    PersistenceDiagram::from_bars(
        dim,
        list.iter().map(|&(b, d)| match d {
            Some(d) => Bar::finite(rat(b), rat(d)),
            None => Bar::infinite(rat(b)),
        }),
    )
}

pub fn filtration(entries: &[(&[usize], i64)]) -> FilteredComplex {
    FilteredComplex::from_entrances(entries.iter().map(|(v, a)| (s(v), rat(*a))))
}

/// Five-vertex filtration whose last stage is the pentagon with arcs
/// 1→2, 2→3, 2→4, 3→4, 3→5, 4→5, 1→3, 5→1 (vertices shifted to 0..5).
pub fn pentagon() -> FilteredComplex {
    filtration(&[
        (&[0, 1], 0),
        (&[1, 3], 0),
        (&[1, 2], 0),
        (&[2, 3], 1),
        (&[2, 4], 1),
        (&[3, 4], 2),
        (&[0, 2], 2),
        (&[4, 0], 3),
    ])
}

/// Four vertices; a square 1→2→3→4→1 with chord 2→4 and filled triangle
/// (2,3,4) appearing last.
pub fn square_with_triangle() -> FilteredComplex {
    filtration(&[
        (&[0], 0),
        (&[1], 0),
        (&[3], 0),
        (&[1, 3], 0),
        (&[2], 1),
        (&[0, 1], 1),
        (&[1, 2], 1),
        (&[2, 3], 1),
        (&[3, 0], 2),
        (&[1, 2, 3], 3),
    ])
}

/// Four vertices where only 1→2→4→1 closes into a circuit.
pub fn one_circuit() -> FilteredComplex {
    filtration(&[(&[1, 3], 0), (&[0, 1], 1), (&[2, 3], 1), (&[2, 1], 1), (&[3, 0], 2)])
}

// ---------------------------------------------------------------------------
// dense rational linear algebra

/// Rank of a set of dense rational vectors by Gaussian elimination.
pub fn dense_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let width = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..width {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                for k in c..width {
                    let delta = &f * &m[rank][k];
                    m[r][k] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of the null space `{x : A x = 0}` of a dense matrix given by rows.
pub fn null_space(a: &[Vec<Rational>], width: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..width {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for k in 0..width {
            m[rank][k] = &m[rank][k] / &pivot;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..width {
                    let delta = &f * &m[rank][k];
                    m[r][k] -= delta;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); width];
            x[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -m[r][f].clone();
            }
            x
        })
        .collect()
}

// ---------------------------------------------------------------------------
// persistence from the rank invariant

/// A filtered cell complex given only by entrance values, dimensions and
/// integer boundaries; cells are listed in a compatible order.
pub struct Cells {
    pub dims: Vec<usize>,
    pub values: Vec<Rational>,
    pub boundary: Vec<Vec<(usize, i64)>>,
}

impl Cells {
    /// Alternating-sign boundary of every tuple, computed from scratch.
    pub fn from_filtration(f: &FilteredComplex) -> Self {
        let mut cells = Cells { dims: Vec::new(), values: Vec::new(), boundary: Vec::new() };
        for (t, a) in f.iter() {
            let mut col = Vec::new();
            if t.dim() > 0 {
                for i in 0..=t.dim() {
                    let mut v = t.vertices().to_vec();
                    v.remove(i);
                    let idx = f.index_of(&DirectedSimplex::new(v)).expect("face present");
                    col.push((idx, if i % 2 == 0 { 1 } else { -1 }));
                }
            }
            cells.dims.push(t.dim());
            cells.values.push(a.clone());
            cells.boundary.push(col);
        }
        cells
    }

    /// Ordinary Rips complex of a symmetric matrix: vertex subsets of size
    /// at most `top + 1`, entering at their largest pairwise distance.
    pub fn classical_rips(d: &DissimilarityMatrix, top: usize) -> Self {
        let n = d.len();
        let mut subsets: Vec<(Rational, usize, Vec<usize>)> = Vec::new();
        for mask in 1u32..(1 << n) {
            let v: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if v.len() > top + 1 {
                continue;
            }
            let mut a = v.iter().map(|&i| d.get(i, i).clone()).max().unwrap();
            for &i in &v {
                for &j in &v {
                    a = a.max(d.get(i, j).clone());
                }
            }
            subsets.push((a, v.len() - 1, v));
        }
        subsets.sort();
        let index: BTreeMap<Vec<usize>, usize> = subsets.iter().enumerate().map(|(i, (_, _, v))| (v.clone(), i)).collect();
        let mut cells = Cells { dims: Vec::new(), values: Vec::new(), boundary: Vec::new() };
        for (a, dim, v) in subsets {
            let col = if dim == 0 {
                Vec::new()
            } else {
                (0..v.len())
                    .map(|i| {
                        let mut face = v.clone();
                        face.remove(i);
                        (index[&face], if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            };
            cells.dims.push(dim);
            cells.values.push(a);
            cells.boundary.push(col);
        }
        cells
    }

    fn critical_values(&self) -> Vec<Rational> {
        self.values.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect()
    }

    fn upto(&self, delta: &Rational, dim: usize) -> Vec<usize> {
        (0..self.dims.len()).filter(|&i| self.dims[i] == dim && &self.values[i] <= delta).collect()
    }

    fn column(&self, i: usize, rows: &[usize]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); rows.len()];
        for &(r, c) in &self.boundary[i] {
            let p = rows.iter().position(|&x| x == r).expect("face among the rows");
            v[p] += rat(c);
        }
        v
    }

    /// Rank of `H_k(X_i) → H_k(X_j)`.
    fn rank(&self, k: usize, di: &Rational, dj: &Rational) -> usize {
        let all_k = self.upto(dj, k);
        let ki = self.upto(di, k);
        // cycles of X_i, embedded in the k-chains of X_j
        let cycles: Vec<Vec<Rational>> = if k == 0 {
            ki.iter().map(|&c| all_k.iter().map(|&x| if x == c { Rational::one() } else { Rational::zero() }).collect()).collect()
        } else {
            let rows = self.upto(&self.values.iter().max().unwrap().clone(), k - 1);
            let boundary_t: Vec<Vec<Rational>> = {
                let cols: Vec<Vec<Rational>> = ki.iter().map(|&c| self.column(c, &rows)).collect();
                (0..rows.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
            };
            null_space(&boundary_t, ki.len())
                .into_iter()
                .map(|z| all_k.iter().map(|x| ki.iter().position(|y| y == x).map_or(Rational::zero(), |p| z[p].clone())).collect())
                .collect()
        };
        let boundaries: Vec<Vec<Rational>> = self.upto(dj, k + 1).iter().map(|&c| self.column(c, &all_k)).collect();
        let joint: Vec<Vec<Rational>> = cycles.iter().chain(&boundaries).cloned().collect();
        dense_rank(&joint) - dense_rank(&boundaries)
    }

    /// Diagram of `H_k` by inclusion–exclusion over the rank invariant.
    pub fn diagram(&self, k: usize) -> PersistenceDiagram {
        let values = self.critical_values();
        let m = values.len();
        let mut r = vec![vec![0i64; m]; m];
        for i in 0..m {
            for j in i..m {
                r[i][j] = self.rank(k, &values[i], &values[j]) as i64;
            }
        }
        let at = |i: isize, j: usize| if i < 0 { 0 } else { r[i as usize][j] };
        let mut d = PersistenceDiagram::new(k);
        for i in 0..m {
            let ii = i as isize;
            for j in i + 1..m {
                let mu = at(ii, j - 1) - at(ii, j) - at(ii - 1, j - 1) + at(ii - 1, j);
                assert!(mu >= 0);
                d.insert(Bar::finite(values[i].clone(), values[j].clone()), mu as usize);
            }
            let mu = at(ii, m - 1) - at(ii - 1, m - 1);
            d.insert(Bar::infinite(values[i].clone()), mu as usize);
        }
        d
    }

    /// `dim C_k − rank ∂_k − rank ∂_{k+1}` of the whole complex.
    pub fn betti(&self, k: usize) -> usize {
        let top = self.values.iter().max().unwrap().clone();
        let rank_of = |dim: usize| -> usize {
            if dim == 0 {
                return 0;
            }
            let rows = self.upto(&top, dim - 1);
            let cols: Vec<Vec<Rational>> = self.upto(&top, dim).iter().map(|&c| self.column(c, &rows)).collect();
            dense_rank(&cols)
        };
        self.upto(&top, k).len() - rank_of(k) - rank_of(k + 1)
    }
}

// ---------------------------------------------------------------------------
// circuits

/// Every elementary circuit of a digraph by trying all vertex sequences that
/// start at their smallest vertex.
pub fn brute_force_circuits(arcs: &BTreeSet<(usize, usize)>) -> BTreeSet<Vec<usize>> {
    let vertices: BTreeSet<usize> = arcs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut out = BTreeSet::new();
    fn extend(path: &mut Vec<usize>, arcs: &BTreeSet<(usize, usize)>, vertices: &BTreeSet<usize>, out: &mut BTreeSet<Vec<usize>>) {
        let last = *path.last().unwrap();
        if arcs.contains(&(last, path[0])) {
            out.insert(path.clone());
        }
        for &v in vertices {
            if v > path[0] && !path.contains(&v) && arcs.contains(&(last, v)) {
                path.push(v);
                extend(path, arcs, vertices, out);
                path.pop();
            }
        }
    }
    for &v in &vertices {
        extend(&mut vec![v], arcs, &vertices, &mut out);
    }
    out
}

// ---------------------------------------------------------------------------
// bottleneck

fn ext_abs(a: &Extended, b: &Extended) -> Extended {
    match (a, b) {
        (Extended::Finite(x), Extended::Finite(y)) => Extended::Finite(if x > y { x - y } else { y - x }),
        (Extended::Infinite, Extended::Infinite) => Extended::Finite(Rational::zero()),
        _ => Extended::Infinite,
    }
}

fn to_diagonal(p: &Bar) -> Extended {
    match &p.death {
        Extended::Finite(d) => Extended::Finite((d - &p.birth) / rat(2)),
        Extended::Infinite => Extended::Infinite,
    }
}

/// Minimum over every partial matching of the largest displacement.
pub fn brute_force_bottleneck(a: &PersistenceDiagram, b: &PersistenceDiagram) -> Extended {
    let (a, b) = (a.bars(), b.bars());
    fn go(i: usize, a: &[Bar], b: &[Bar], used: &mut Vec<bool>, worst: Extended, best: &mut Extended) {
        if worst >= *best {
            return;
        }
        if i == a.len() {
            let rest = b.iter().zip(used.iter()).filter(|(_, u)| !**u).map(|(q, _)| to_diagonal(q)).fold(worst, Extended::max);
            if rest < *best {
                *best = rest;
            }
            return;
        }
        go(i + 1, a, b, used, worst.clone().max(to_diagonal(&a[i])), best);
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                let c = Extended::Finite(if a[i].birth > b[j].birth { &a[i].birth - &b[j].birth } else { &b[j].birth - &a[i].birth });
                let c = c.max(ext_abs(&a[i].death, &b[j].death));
                go(i + 1, a, b, used, worst.clone().max(c), best);
                used[j] = false;
            }
        }
    }
    let mut best = Extended::Infinite;
    let mut used = vec![false; b.len()];
    go(0, &a, &b, &mut used, Extended::Finite(Rational::zero()), &mut best);
    if best == Extended::Infinite {
        // every matching costs +∞; the search never improved on the start
        return Extended::Infinite;
    }
    best
}

// ---------------------------------------------------------------------------
// random inputs

pub fn random_rational(rng: &mut ChaCha8Rng, max: i64) -> Rational {
    ratio(rng.gen_range(0..=max * 2), 2)
}

/// Random dissimilarity matrix with entries in `{0, 1/2, …, max}`.
pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, max: i64, zero_diagonal: bool) -> DissimilarityMatrix {
    let rows = (0..n)
        .map(|i| (0..n).map(|j| if i == j && zero_diagonal { Rational::zero() } else { random_rational(rng, max) }).collect())
        .collect();
    DissimilarityMatrix::new(rows).unwrap()
}

/// Random symmetric metric: shortest paths over random positive weights.
pub fn random_metric(rng: &mut ChaCha8Rng, n: usize) -> DissimilarityMatrix {
    let mut d = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = ratio(rng.gen_range(1..=12), 2);
            d[i][j] = w.clone();
            d[j][i] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &d[i][k] + &d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    DissimilarityMatrix::new(d).unwrap()
}

/// Random tuples over at most `n` vertices with random entrance values;
/// `max_len` bounds the tuple length and repetitions are allowed.
pub fn random_filtration(rng: &mut ChaCha8Rng, n: usize, count: usize, max_len: usize) -> FilteredComplex {
    let entries: Vec<(DirectedSimplex, Rational)> = (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            let v: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
            (DirectedSimplex::new(v), rat(rng.gen_range(0..5)))
        })
        .collect();
    FilteredComplex::from_entrances(entries)
}

pub fn shuffled(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}

// ---------------------------------------------------------------------------
// directed persistence from brute-force circuits

/// Directed `Dgm₁`: ranks `dim(span circuits(X_i) + B(X_j)) − dim B(X_j)`
/// with circuits found by exhaustive search.
pub fn directed_oracle(f: &FilteredComplex) -> PersistenceDiagram {
    let cells = Cells::from_filtration(f);
    let values = cells.critical_values();
    let top = values.last().cloned().unwrap_or_else(Rational::zero);
    let edges = cells.upto(&top, 1);
    let embed = |path: &[usize]| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); edges.len()];
        for k in 0..path.len() {
            let e = DirectedSimplex::edge(path[k], path[(k + 1) % path.len()]);
            let idx = f.index_of(&e).expect("circuit arc present");
            let p = edges.iter().position(|&x| x == idx).unwrap();
            v[p] += Rational::one();
        }
        v
    };
    let circuits_at = |delta: &Rational| -> Vec<Vec<Rational>> {
        let arcs: BTreeSet<(usize, usize)> = cells
            .upto(delta, 1)
            .into_iter()
            .map(|i| {
                let t = f.simplex(i).vertices();
                (t[0], t[1])
            })
            .collect();
        brute_force_circuits(&arcs).iter().map(|c| embed(c)).collect()
    };
    let boundaries_at = |delta: &Rational| -> Vec<Vec<Rational>> {
        cells.upto(delta, 2).iter().map(|&c| cells.column(c, &edges)).collect()
    };
    let m = values.len();
    let circuits: Vec<Vec<Vec<Rational>>> = values.iter().map(|d| circuits_at(d)).collect();
    let mut r = vec![vec![0i64; m]; m];
    for j in 0..m {
        let b = boundaries_at(&values[j]);
        let base = dense_rank(&b);
        for i in 0..=j {
            let joint: Vec<Vec<Rational>> = circuits[i].iter().chain(&b).cloned().collect();
            r[i][j] = (dense_rank(&joint) - base) as i64;
        }
    }
    let at = |i: isize, j: usize| if i < 0 { 0 } else { r[i as usize][j] };
    let mut d = PersistenceDiagram::new(1);
    for i in 0..m {
        let ii = i as isize;
        for j in i + 1..m {
            let mu = at(ii, j - 1) - at(ii, j) - at(ii - 1, j - 1) + at(ii - 1, j);
            assert!(mu >= 0);
            d.insert(Bar::finite(values[i].clone(), values[j].clone()), mu as usize);
        }
        d.insert(Bar::infinite(values[i].clone()), (at(ii, m - 1) - at(ii - 1, m - 1)) as usize);
    }
    d
}
