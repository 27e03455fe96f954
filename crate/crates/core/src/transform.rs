//! Partial transformations of the chain `[n] = {1, ..., n}`.
//!
//! An element is stored as a table of length `n` where slot `a - 1` holds
//! the image of `a`, or `0` when `a` is outside the domain. Composition is
//! written left to right: `x(αβ) = (xα)β`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest supported chain size; points are stored as `u8`.
pub const MAX_CHAIN: usize = 255;

pub(crate) type Table = SmallVec<[u8; 8]>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialTransformation {
    n: u8,
    table: Table,
}

impl PartialTransformation {
    /// Builds an element from `(domain point, image point)` pairs.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        check_chain(n)?;
        let mut table: Table = SmallVec::from_elem(0, n);
        for &(a, x) in pairs {
            for p in [a, x] {
                if p == 0 || p > n {
                    return Err(Error::PointOutOfRange { point: p, n });
                }
            }
            if table[a - 1] != 0 {
                return Err(Error::DuplicatePoint(a));
            }
            table[a - 1] = x as u8;
        }
        Ok(Self { n: n as u8, table })
    }

    /// Builds an element from blocks and their images, the tabular form.
    pub fn from_blocks(n: usize, blocks: &[&[usize]], images: &[usize]) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = blocks
            .iter()
            .zip(images)
            .flat_map(|(block, &x)| block.iter().map(move |&a| (a, x)))
            .collect();
        Self::new(n, &pairs)
    }

    pub(crate) fn from_table(n: u8, table: Table) -> Self {
        debug_assert_eq!(table.len(), n as usize);
        Self { n, table }
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, &[])
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_chain(n)?;
        Ok(Self {
            n: n as u8,
            table: (1..=n as u8).collect(),
        })
    }

    /// The identity restricted to `points`.
    pub fn partial_identity(n: usize, points: &[u8]) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = points.iter().map(|&p| (p as usize, p as usize)).collect();
        Self::new(n, &pairs)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub(crate) fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn apply(&self, x: u8) -> Option<u8> {
        match self.table.get((x as usize).wrapping_sub(1)) {
            Some(&y) if y != 0 => Some(y),
            _ => None,
        }
    }

    /// `(a, aα)` for every domain point, ascending in `a`.
    pub fn pairs(&self) -> impl Iterator<Item = (u8, u8)> + '_ {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, &y)| y != 0)
            .map(|(i, &y)| (i as u8 + 1, y))
    }

    pub fn domain(&self) -> Vec<u8> {
        self.pairs().map(|(a, _)| a).collect()
    }

    /// Image points in ascending order.
    pub fn image(&self) -> Vec<u8> {
        let mut seen = vec![false; self.n as usize + 1];
        for &y in self.table.iter().filter(|&&y| y != 0) {
            seen[y as usize] = true;
        }
        (1..=self.n).filter(|&y| seen[y as usize]).collect()
    }

    pub fn domain_size(&self) -> usize {
        self.table.iter().filter(|&&y| y != 0).count()
    }

    /// `h(α) = |im α|`.
    pub fn height(&self) -> usize {
        self.image().len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.iter().all(|&y| y == 0)
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(|&y| y != 0)
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ChainMismatch(self.n(), other.n()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        let table = self
            .table
            .iter()
            .map(|&y| if y == 0 { 0 } else { other.table[y as usize - 1] })
            .collect();
        Self { n: self.n, table }
    }

    /// The restriction of `self` to the points of `set` that lie in its domain.
    pub fn restrict(&self, set: &[u8]) -> Self {
        let mut table: Table = SmallVec::from_elem(0, self.n as usize);
        for &a in set {
            if let Some(y) = self.apply(a) {
                table[a as usize - 1] = y;
            }
        }
        Self { n: self.n, table }
    }

    fn all_pairs(&self, pred: impl Fn(u8, u8, u8, u8) -> bool) -> bool {
        let pairs: SmallVec<[(u8, u8); 8]> = self.pairs().collect();
        pairs.iter().enumerate().all(|(i, &(x, xa))| {
            pairs[i + 1..].iter().all(|&(y, ya)| pred(x, xa, y, ya))
        })
    }

    /// `|xα − yα| ≤ |x − y|` on the domain.
    pub fn is_contraction(&self) -> bool {
        self.all_pairs(|x, xa, y, ya| xa.abs_diff(ya) <= x.abs_diff(y))
    }

    pub fn is_isometry(&self) -> bool {
        self.all_pairs(|x, xa, y, ya| xa.abs_diff(ya) == x.abs_diff(y))
    }

    // `all_pairs` visits x < y, so the order conditions need only one direction.
    pub fn is_order_preserving(&self) -> bool {
        self.all_pairs(|_, xa, _, ya| xa <= ya)
    }

    pub fn is_order_reversing(&self) -> bool {
        self.all_pairs(|_, xa, _, ya| xa >= ya)
    }

    pub fn is_order_decreasing(&self) -> bool {
        self.pairs().all(|(x, xa)| xa <= x)
    }

    pub fn is_injective(&self) -> bool {
        self.height() == self.domain_size()
    }

    /// Canonical text form, e.g. `PT 3 1->1,3->2`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn check_chain(n: usize) -> Result<()> {
    if n == 0 || n > MAX_CHAIN {
        return Err(Error::ChainSize(n));
    }
    Ok(())
}

/// Canonical order: chain size, then domain size, then domain
/// lexicographically, then the image tuple lexicographically.
impl Ord for PartialTransformation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.domain_size().cmp(&other.domain_size()))
            .then_with(|| {
                let da = self.pairs().map(|(a, _)| a);
                let db = other.pairs().map(|(a, _)| a);
                da.cmp(db)
            })
            .then_with(|| {
                let ia = self.pairs().map(|(_, x)| x);
                let ib = other.pairs().map(|(_, x)| x);
                ia.cmp(ib)
            })
    }
}

impl PartialOrd for PartialTransformation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PartialTransformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PT {} ", self.n)?;
        if self.is_empty() {
            return f.write_str("-");
        }
        let mut first = true;
        for (a, x) in self.pairs() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{a}->{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PartialTransformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PartialTransformation {
    type Err = Error;

    /// Parses the canonical text form. Domain points must be strictly ascending.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let mut parts = s.trim().split(' ');
        if parts.next() != Some("PT") {
            return Err(bad());
        }
        let n: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let body = parts.next().ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        if body == "-" {
            return Self::empty(n);
        }
        let mut pairs = Vec::new();
        for item in body.split(',') {
            let (a, x) = item.split_once("->").ok_or_else(bad)?;
            let a: usize = a.parse().map_err(|_| bad())?;
            let x: usize = x.parse().map_err(|_| bad())?;
            if pairs.last().is_some_and(|&(prev, _)| prev >= a) {
                return Err(bad());
            }
            pairs.push((a, x));
        }
        Self::new(n, &pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(n: usize, pairs: &[(usize, usize)]) -> PartialTransformation {
        PartialTransformation::new(n, pairs).unwrap()
    }

    #[test]
    fn make_sorts_domain() {
        let a = pt(5, &[(2, 1), (1, 2), (3, 2), (5, 2)]);
        assert_eq!(a.to_text(), "PT 5 1->2,2->1,3->2,5->2");
        assert_eq!(a.domain(), vec![1, 2, 3, 5]);
        assert_eq!(a.image(), vec![1, 2]);
    }

    #[test]
    fn make_rejects_bad_input() {
        assert_eq!(
            PartialTransformation::new(3, &[(1, 1), (1, 2)]),
            Err(Error::DuplicatePoint(1))
        );
        assert!(matches!(
            PartialTransformation::new(3, &[(4, 1)]),
            Err(Error::PointOutOfRange { point: 4, n: 3 })
        ));
        assert!(PartialTransformation::new(3, &[(1, 0)]).is_err());
        assert!(PartialTransformation::new(0, &[]).is_err());
    }

    #[test]
    fn empty_map() {
        let e = pt(3, &[]);
        assert!(e.is_empty());
        assert_eq!(e.to_text(), "PT 3 -");
        assert!(e.is_contraction() && e.is_isometry());
        assert!(e.is_order_preserving() && e.is_order_reversing() && e.is_order_decreasing());
    }

    #[test]
    fn compose_examples() {
        let id = PartialTransformation::identity(3).unwrap();
        let a = pt(3, &[(1, 1), (3, 2)]);
        assert_eq!(id.compose(&a).unwrap(), a);
        let b = pt(3, &[(1, 2), (2, 3)]);
        assert_eq!(a.compose(&b).unwrap(), pt(3, &[(1, 2), (3, 3)]));
        assert!(a.compose(&pt(3, &[])).unwrap().is_empty());
        assert_eq!(
            a.compose(&PartialTransformation::identity(4).unwrap()),
            Err(Error::ChainMismatch(3, 4))
        );
    }

    #[test]
    fn pointwise_predicates() {
        assert!(pt(5, &[(2, 1), (1, 2), (3, 2), (5, 2)]).is_contraction());
        assert!(PartialTransformation::identity(6).unwrap().is_contraction());
        assert!(!pt(3, &[(1, 1), (2, 3)]).is_contraction());

        let a = pt(3, &[(1, 1), (3, 2)]);
        assert!(a.is_order_preserving());
        assert!(!a.is_order_reversing());
        assert!(a.is_order_decreasing());
        assert!(!a.is_isometry());

        let b = pt(3, &[(1, 2), (3, 1)]);
        assert!(b.is_order_reversing());
        assert!(!b.is_isometry());
    }

    #[test]
    fn text_round_trip_and_rejects() {
        for s in ["PT 1 -", "PT 1 1->1", "PT 5 1->2,2->1,3->2,5->2"] {
            assert_eq!(s.parse::<PartialTransformation>().unwrap().to_text(), s);
        }
        for s in ["PT 3 2->1,1->1", "PT 3", "PT x -", "PT 3 1>1", "QT 3 -", "PT 3 1->1,1->2"] {
            assert!(s.parse::<PartialTransformation>().is_err(), "{s}");
        }
    }

    #[test]
    fn canonical_order() {
        let mut v = [
            pt(2, &[(1, 2), (2, 1)]),
            pt(2, &[(2, 1)]),
            pt(2, &[]),
            pt(2, &[(1, 2)]),
            pt(2, &[(1, 1)]),
        ];
        v.sort();
        let text: Vec<String> = v.iter().map(|a| a.to_text()).collect();
        assert_eq!(text, ["PT 2 -", "PT 2 1->1", "PT 2 1->2", "PT 2 2->1", "PT 2 1->2,2->1"]);
    }
}
