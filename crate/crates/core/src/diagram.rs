//! Persistence diagrams and barcodes.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Rational;

/// A rational extended by `+∞`. `Infinite` compares above every finite value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Extended {
    Finite(Rational),
    Infinite,
}

impl Extended {
    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Extended::Finite(r) => Some(r),
            Extended::Infinite => None,
        }
    }

    /// `|a − b|` with `|∞ − ∞| = 0` and `|finite − ∞| = ∞`.
    pub fn abs_diff(&self, other: &Extended) -> Extended {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => {
                Extended::Finite(if a >= b { a - b } else { b - a })
            }
            (Extended::Infinite, Extended::Infinite) => Extended::Finite(Rational::from_integer(0.into())),
            _ => Extended::Infinite,
        }
    }
}

impl From<Rational> for Extended {
    fn from(r: Rational) -> Self {
        Extended::Finite(r)
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Extended {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => a.cmp(b),
            (Extended::Finite(_), Extended::Infinite) => Ordering::Less,
            (Extended::Infinite, Extended::Finite(_)) => Ordering::Greater,
            (Extended::Infinite, Extended::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(r) => write!(f, "{r}"),
            Extended::Infinite => write!(f, "inf"),
        }
    }
}

/// A `(birth, death)` pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bar {
    pub birth: Rational,
    pub death: Extended,
}

impl Bar {
    pub fn new(birth: Rational, death: Extended) -> Self {
        Bar { birth, death }
    }

    pub fn finite(birth: Rational, death: Rational) -> Self {
        Bar { birth, death: Extended::Finite(death) }
    }

    pub fn infinite(birth: Rational) -> Self {
        Bar { birth, death: Extended::Infinite }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(&self.death, Extended::Finite(d) if *d <= self.birth)
    }
}

impl fmt::Display for Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.birth, self.death)
    }
}

/// Which persistence module a diagram came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiagramKind {
    Undirected,
    Directed,
}

impl DiagramKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagramKind::Undirected => "undirected",
            DiagramKind::Directed => "directed",
        }
    }
}

impl fmt::Display for DiagramKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A multiset of bars in one homological dimension. Points with
/// `death <= birth` are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PersistenceDiagram {
    dimension: usize,
    points: BTreeMap<Bar, usize>,
}

impl PersistenceDiagram {
    pub fn new(dimension: usize) -> Self {
        PersistenceDiagram { dimension, points: BTreeMap::new() }
    }

    pub fn from_bars<I: IntoIterator<Item = Bar>>(dimension: usize, bars: I) -> Self {
        let mut d = Self::new(dimension);
        for b in bars {
            d.insert(b, 1);
        }
        d
    }

    /// Adds `multiplicity` copies of `bar`. Zero-length bars are dropped.
    pub fn insert(&mut self, bar: Bar, multiplicity: usize) {
        if multiplicity == 0 || bar.is_degenerate() {
            return;
        }
        *self.points.entry(bar).or_insert(0) += multiplicity;
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of bars counted with multiplicity.
    pub fn len(&self) -> usize {
        self.points.values().sum()
    }

    pub fn multiplicity(&self, bar: &Bar) -> usize {
        self.points.get(bar).copied().unwrap_or(0)
    }

    /// Distinct points with multiplicities, sorted by `(birth, death)`.
    pub fn points(&self) -> impl Iterator<Item = (&Bar, usize)> {
        self.points.iter().map(|(b, m)| (b, *m))
    }

    /// Every bar repeated by its multiplicity, sorted by `(birth, death)`.
    pub fn bars(&self) -> Vec<Bar> {
        self.points
            .iter()
            .flat_map(|(b, &m)| std::iter::repeat(b.clone()).take(m))
            .collect()
    }

    pub fn infinite_count(&self) -> usize {
        self.points.iter().filter(|(b, _)| !b.death.is_finite()).map(|(_, m)| m).sum()
    }

    /// Barcode rows `(birth, death, multiplicity)` sorted by `(birth, death)`.
    pub fn to_barcode(&self) -> Vec<(Rational, Extended, usize)> {
        self.points.iter().map(|(b, &m)| (b.birth.clone(), b.death.clone(), m)).collect()
    }

    pub fn from_barcode<I>(dimension: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Extended, usize)>,
    {
        let mut d = Self::new(dimension);
        for (birth, death, m) in rows {
            d.insert(Bar::new(birth, death), m);
        }
        d
    }
}

impl fmt::Display for PersistenceDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dgm{} {{", self.dimension)?;
        for (i, (b, m)) in self.points().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
            if m > 1 {
                write!(f, "x{m}")?;
            }
        }
        write!(f, "}}")
    }
}
