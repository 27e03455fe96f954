//! Exhaustive enumeration of `P_n` and its contraction subsemigroups.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::transform::{PartialTransformation, Table};

/// Largest `n` for which the full semigroup may be materialized.
pub const ENUMERATION_GUARD: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// All partial transformations.
    P,
    /// Partial contractions.
    Cp,
    /// Order-preserving partial contractions.
    Ocp,
    /// Partial contractions that are order preserving or order reversing.
    Orcp,
    /// Total contractions.
    Ct,
}

impl Variant {
    pub const ALL: [Variant; 5] = [Variant::P, Variant::Cp, Variant::Ocp, Variant::Orcp, Variant::Ct];

    pub fn name(self) -> &'static str {
        match self {
            Variant::P => "p",
            Variant::Cp => "cp",
            Variant::Ocp => "ocp",
            Variant::Orcp => "orcp",
            Variant::Ct => "ct",
        }
    }

    pub fn contains(self, alpha: &PartialTransformation) -> bool {
        match self {
            Variant::P => true,
            Variant::Cp => alpha.is_contraction(),
            Variant::Ocp => alpha.is_contraction() && alpha.is_order_preserving(),
            Variant::Orcp => {
                alpha.is_contraction() && (alpha.is_order_preserving() || alpha.is_order_reversing())
            }
            Variant::Ct => alpha.is_contraction() && alpha.is_total(),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName { kind: "variant", value: s.to_string() })
    }
}

impl Serialize for Variant {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

const MISSING: u32 = u32::MAX;

#[derive(Debug)]
enum CodeIndex {
    Dense(Vec<u32>),
    Sparse(HashMap<u32, u32>),
}

/// A finite set of partial transformations of `[n]` in canonical order,
/// with a lazily built multiplication table.
#[derive(Debug)]
pub struct SemigroupEnumeration {
    n: usize,
    variant: Option<Variant>,
    elements: Vec<PartialTransformation>,
    index: CodeIndex,
    products: OnceLock<Vec<u32>>,
}

fn code(table: &[u8], n: usize) -> u32 {
    table.iter().fold(0u32, |acc, &y| acc * (n as u32 + 1) + y as u32)
}

impl SemigroupEnumeration {
    /// Wraps an arbitrary set of elements, which is sorted and deduplicated.
    pub fn from_elements(n: usize, mut elements: Vec<PartialTransformation>) -> Result<Self> {
        if n == 0 || n > ENUMERATION_GUARD {
            return Err(Error::EnumerationGuard(n));
        }
        if let Some(bad) = elements.iter().find(|a| a.n() != n) {
            return Err(Error::ChainMismatch(n, bad.n()));
        }
        elements.sort();
        elements.dedup();
        Ok(Self::build(n, None, elements))
    }

    fn build(n: usize, variant: Option<Variant>, elements: Vec<PartialTransformation>) -> Self {
        let space = (n as u64 + 1).pow(n as u32);
        let index = if space <= 1 << 20 {
            let mut dense = vec![MISSING; space as usize];
            for (i, a) in elements.iter().enumerate() {
                dense[code(a.table(), n) as usize] = i as u32;
            }
            CodeIndex::Dense(dense)
        } else {
            CodeIndex::Sparse(
                elements
                    .iter()
                    .enumerate()
                    .map(|(i, a)| (code(a.table(), n), i as u32))
                    .collect(),
            )
        };
        Self { n, variant, elements, index, products: OnceLock::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> Option<Variant> {
        self.variant
    }

    /// The variant name, or `custom` for hand-built sets.
    pub fn family(&self) -> &'static str {
        self.variant.map_or("custom", Variant::name)
    }

    pub fn elements(&self) -> &[PartialTransformation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> &PartialTransformation {
        &self.elements[i]
    }

    pub fn index_of(&self, alpha: &PartialTransformation) -> Option<usize> {
        if alpha.n() != self.n {
            return None;
        }
        let c = code(alpha.table(), self.n);
        let i = match &self.index {
            CodeIndex::Dense(d) => d[c as usize],
            CodeIndex::Sparse(m) => *m.get(&c)?,
        };
        (i != MISSING).then_some(i as usize)
    }

    pub fn index_of_text(&self, text: &str) -> Result<Option<usize>> {
        Ok(self.index_of(&text.parse()?))
    }

    pub fn contains(&self, alpha: &PartialTransformation) -> bool {
        self.index_of(alpha).is_some()
    }

    pub(crate) fn require(&self, alpha: &PartialTransformation) -> Result<usize> {
        self.index_of(alpha).ok_or_else(|| Error::NotMember {
            element: alpha.to_text(),
            family: format!("{}_{}", self.family(), self.n),
        })
    }

    fn products(&self) -> &[u32] {
        self.products.get_or_init(|| {
            let len = self.len();
            let mut table = vec![MISSING; len * len];
            for (i, a) in self.elements.iter().enumerate() {
                for (j, b) in self.elements.iter().enumerate() {
                    let ab = a.compose_unchecked(b);
                    table[i * len + j] = self.index_of(&ab).map_or(MISSING, |k| k as u32);
                }
            }
            table
        })
    }

    /// Index of `elements[i] · elements[j]`, or `None` if the product leaves the set.
    pub fn product(&self, i: usize, j: usize) -> Option<usize> {
        let k = self.products()[i * self.len() + j];
        (k != MISSING).then_some(k as usize)
    }

    /// Newline-separated canonical text, one element per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for a in &self.elements {
            s.push_str(&a.to_text());
            s.push('\n');
        }
        s
    }
}

pub fn enumerate(n: usize, variant: Variant) -> Result<SemigroupEnumeration> {
    if n == 0 || n > ENUMERATION_GUARD {
        return Err(Error::EnumerationGuard(n));
    }
    let mut elements = Vec::new();
    let sizes: Vec<usize> = if variant == Variant::Ct { vec![n] } else { (0..=n).collect() };
    for k in sizes {
        for dom in combinations(n, k) {
            let mut images = SmallVec::<[u8; 8]>::new();
            extend_images(n, variant, &dom, &mut images, &mut |imgs| {
                let mut table: Table = SmallVec::from_elem(0, n);
                for (&a, &x) in dom.iter().zip(imgs) {
                    table[a as usize - 1] = x;
                }
                elements.push(PartialTransformation::from_table(n as u8, table));
            });
        }
    }
    Ok(SemigroupEnumeration::build(n, Some(variant), elements))
}

/// Size-`k` subsets of `[n]` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = Vec::with_capacity(k);
    fn rec(start: u8, n: u8, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if (n - x) as usize + 1 < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n as u8, k, &mut cur, &mut out);
    out
}

// Assigns images to `dom` in lexicographic order, pruning partial
// assignments that already violate the variant's defining condition.
fn extend_images(
    n: usize,
    variant: Variant,
    dom: &[u8],
    images: &mut SmallVec<[u8; 8]>,
    emit: &mut dyn FnMut(&[u8]),
) {
    let i = images.len();
    if i == dom.len() {
        emit(images);
        return;
    }
    for x in 1..=n as u8 {
        let contraction_ok = (0..i).all(|j| images[j].abs_diff(x) <= dom[j].abs_diff(dom[i]));
        let ok = match variant {
            Variant::P => true,
            Variant::Cp | Variant::Ct => contraction_ok,
            Variant::Ocp => contraction_ok && images.iter().all(|&y| y <= x),
            Variant::Orcp => {
                contraction_ok
                    && {
                        let mut probe = images.clone();
                        probe.push(x);
                        probe.windows(2).all(|w| w[0] <= w[1]) || probe.windows(2).all(|w| w[0] >= w[1])
                    }
            }
        };
        if ok {
            images.push(x);
            extend_images(n, variant, dom, images, emit);
            images.pop();
        }
    }
}

/// Generate-and-filter over all `(n+1)^n` tables. Slow; kept as a check on [`enumerate`].
pub fn enumerate_by_filter(n: usize, variant: Variant) -> Result<Vec<PartialTransformation>> {
    if n == 0 || n > ENUMERATION_GUARD {
        return Err(Error::EnumerationGuard(n));
    }
    let total = (n as u64 + 1).pow(n as u32);
    let mut out = Vec::new();
    for c in 0..total {
        let mut rest = c;
        let mut table: Table = SmallVec::from_elem(0, n);
        for slot in table.iter_mut().rev() {
            *slot = (rest % (n as u64 + 1)) as u8;
            rest /= n as u64 + 1;
        }
        let a = PartialTransformation::from_table(n as u8, table);
        if variant.contains(&a) {
            out.push(a);
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureViolation {
    pub left: PartialTransformation,
    pub right: PartialTransformation,
    pub product: PartialTransformation,
}

impl Serialize for PartialTransformation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

/// `None` when closed, otherwise the first violating pair in index order.
pub fn closure_check(s: &SemigroupEnumeration) -> Option<ClosureViolation> {
    for i in 0..s.len() {
        for j in 0..s.len() {
            if s.product(i, j).is_none() {
                return Some(ClosureViolation {
                    left: s.get(i).clone(),
                    right: s.get(j).clone(),
                    product: s.get(i).compose_unchecked(s.get(j)),
                });
            }
        }
    }
    None
}

/// Elements grouped by height; every height `0..=n` has an entry.
pub fn stratify_by_height(s: &SemigroupEnumeration) -> BTreeMap<usize, Vec<PartialTransformation>> {
    let mut out: BTreeMap<usize, Vec<PartialTransformation>> = (0..=s.n()).map(|h| (h, Vec::new())).collect();
    for a in s.elements() {
        out.entry(a.height()).or_default().push(a.clone());
    }
    out
}
