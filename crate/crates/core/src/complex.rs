//! Directed simplicial complexes: families of ordered vertex tuples, with
//! repeated vertices allowed, closed under deleting any single position.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// An ordered tuple of vertex indices. Repetitions are permitted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedSimplex(Vec<usize>);

impl DirectedSimplex {
    /// Panics on an empty tuple.
    pub fn new(vertices: impl Into<Vec<usize>>) -> Self {
        let vertices = vertices.into();
        assert!(!vertices.is_empty(), "a simplex needs at least one vertex");
        DirectedSimplex(vertices)
    }

    pub fn vertex(v: usize) -> Self {
        DirectedSimplex(vec![v])
    }

    pub fn edge(a: usize, b: usize) -> Self {
        DirectedSimplex(vec![a, b])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// The tuple with position `i` removed.
    pub fn face(&self, i: usize) -> DirectedSimplex {
        assert!(self.dim() >= 1 && i <= self.dim());
        let mut v = self.0.clone();
        v.remove(i);
        DirectedSimplex(v)
    }

    /// All `dim + 1` codimension-one faces, in removal order. Coinciding
    /// faces (possible with repeated vertices) are each emitted.
    pub fn faces(&self) -> Result<Vec<DirectedSimplex>> {
        if self.dim() == 0 {
            return Err(Error::InvalidInput("a vertex has no faces".into()));
        }
        Ok((0..=self.dim()).map(|i| self.face(i)).collect())
    }

    pub fn max_vertex(&self) -> usize {
        *self.0.iter().max().unwrap()
    }
}

impl fmt::Debug for DirectedSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for DirectedSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<Vec<usize>> for DirectedSimplex {
    fn from(v: Vec<usize>) -> Self {
        DirectedSimplex::new(v)
    }
}

impl<const N: usize> From<[usize; N]> for DirectedSimplex {
    fn from(v: [usize; N]) -> Self {
        DirectedSimplex::new(v.to_vec())
    }
}

/// A face-closed family of directed simplices, grouped by dimension and kept
/// in lexicographic order within each dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DirectedComplex {
    by_dim: Vec<BTreeSet<DirectedSimplex>>,
}

impl DirectedComplex {
    /// Smallest face-closed family containing `generators`.
    pub fn close<I, S>(generators: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<DirectedSimplex>,
    {
        let mut by_dim: Vec<BTreeSet<DirectedSimplex>> = Vec::new();
        for s in generators {
            let s = s.into();
            let d = s.dim();
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, BTreeSet::new);
            }
            by_dim[d].insert(s);
        }
        for d in (1..by_dim.len()).rev() {
            let faces: Vec<DirectedSimplex> = by_dim[d]
                .iter()
                .flat_map(|s| (0..=d).map(move |i| s.face(i)))
                .collect();
            by_dim[d - 1].extend(faces);
        }
        DirectedComplex { by_dim }
    }

    /// Like [`close`](Self::close), but also checks that every vertex
    /// `0..vertex_count` belongs to some simplex and none lies outside that range.
    pub fn with_vertex_count<I, S>(vertex_count: usize, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<DirectedSimplex>,
    {
        let complex = Self::close(generators);
        let present: Vec<usize> = complex.vertices().collect();
        if present.len() != vertex_count || present.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(Error::InvalidInput(format!(
                "vertex set {present:?} is not 0..{vertex_count}"
            )));
        }
        Ok(complex)
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.iter().all(BTreeSet::is_empty)
    }

    /// Highest dimension holding a simplex, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.iter().rposition(|s| !s.is_empty())
    }

    pub fn simplices(&self, dim: usize) -> impl Iterator<Item = &DirectedSimplex> {
        self.by_dim.get(dim).into_iter().flatten()
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &DirectedSimplex> {
        self.by_dim.iter().flatten()
    }

    pub fn count(&self, dim: usize) -> usize {
        self.by_dim.get(dim).map_or(0, BTreeSet::len)
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(BTreeSet::len).sum()
    }

    pub fn contains(&self, s: &DirectedSimplex) -> bool {
        self.by_dim.get(s.dim()).is_some_and(|set| set.contains(s))
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.simplices(0).map(|s| s.vertices()[0])
    }

    /// Checks the face-closure property on every simplex.
    pub fn is_face_closed(&self) -> bool {
        self.all_simplices()
            .filter(|s| s.dim() >= 1)
            .all(|s| (0..=s.dim()).all(|i| self.contains(&s.face(i))))
    }

    /// Weakly connected components of the 1-skeleton, each sorted, ordered by
    /// smallest vertex.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let verts: Vec<usize> = self.vertices().collect();
        let index: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut dsu = DisjointSets::new(verts.len());
        for e in self.simplices(1) {
            let [a, b] = [e.vertices()[0], e.vertices()[1]];
            dsu.union(index[&a], index[&b]);
        }
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &v) in verts.iter().enumerate() {
            blocks.entry(dsu.find(i)).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = blocks.into_values().collect();
        out.sort_by_key(|b| b[0]);
        out
    }
}

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}
