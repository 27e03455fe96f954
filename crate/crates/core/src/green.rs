//! Green's relations, computed two ways.
//!
//! [`GreenOracle`] works from the definitions: principal one-sided and
//! two-sided ideals are materialized as bitsets over an enumerated semigroup
//! and compared. The characterized predicates ([`r_related_characterized`],
//! [`l_related_characterized`], [`d_related_characterized`], [`regular_green`])
//! work from kernels, refinements, transversals and images alone.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::enumeration::SemigroupEnumeration;
use crate::error::{Error, Result};
use crate::kernel::{
    admissible_transversals, max_admissible_refinement, refinements, Block, KernelDecomposition,
};
use crate::regularity::is_regular_characterized;
use crate::transform::PartialTransformation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Relation {
    L,
    R,
    H,
    D,
    J,
}

impl Relation {
    pub const ALL: [Relation; 5] = [Relation::L, Relation::R, Relation::H, Relation::D, Relation::J];
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Relation::ALL
            .into_iter()
            .find(|r| r.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName { kind: "relation", value: s.to_string() })
    }
}

/// Elements realizing `α = γ₁β, β = γ₂α` (L) or `α = βγ₁, β = αγ₂` (R).
/// `None` stands for the identity of `S¹`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GreenWitness {
    pub gamma1: Option<PartialTransformation>,
    pub gamma2: Option<PartialTransformation>,
}

/// Definition-level Green's relations of an enumerated semigroup.
#[derive(Debug)]
pub struct GreenOracle<'a> {
    s: &'a SemigroupEnumeration,
    l_class: Vec<usize>,
    r_class: Vec<usize>,
    j_class: Vec<usize>,
    lr_cells: HashSet<(usize, usize)>,
}

fn class_ids(sets: &[FixedBitSet]) -> Vec<usize> {
    let mut ids: HashMap<&FixedBitSet, usize> = HashMap::new();
    sets.iter()
        .map(|set| {
            let next = ids.len();
            *ids.entry(set).or_insert(next)
        })
        .collect()
}

impl<'a> GreenOracle<'a> {
    pub fn new(s: &'a SemigroupEnumeration) -> Self {
        let len = s.len();
        // S¹a = Sa ∪ {a}; adding `a` covers the adjoined identity whether or not S has one.
        let mut left = vec![FixedBitSet::with_capacity(len); len];
        let mut right = vec![FixedBitSet::with_capacity(len); len];
        for a in 0..len {
            left[a].insert(a);
            right[a].insert(a);
            for g in 0..len {
                if let Some(ga) = s.product(g, a) {
                    left[a].insert(ga);
                }
                if let Some(ag) = s.product(a, g) {
                    right[a].insert(ag);
                }
            }
        }
        let two_sided: Vec<FixedBitSet> = left
            .iter()
            .map(|l| {
                let mut j = FixedBitSet::with_capacity(len);
                for x in l.ones() {
                    j.union_with(&right[x]);
                }
                j
            })
            .collect();
        let l_class = class_ids(&left);
        let r_class = class_ids(&right);
        let j_class = class_ids(&two_sided);
        let lr_cells = (0..len).map(|c| (l_class[c], r_class[c])).collect();
        Self { s, l_class, r_class, j_class, lr_cells }
    }

    pub fn semigroup(&self) -> &SemigroupEnumeration {
        self.s
    }

    pub fn l(&self, a: usize, b: usize) -> bool {
        self.l_class[a] == self.l_class[b]
    }

    pub fn r(&self, a: usize, b: usize) -> bool {
        self.r_class[a] == self.r_class[b]
    }

    pub fn h(&self, a: usize, b: usize) -> bool {
        self.l(a, b) && self.r(a, b)
    }

    pub fn j(&self, a: usize, b: usize) -> bool {
        self.j_class[a] == self.j_class[b]
    }

    /// `L ∘ R`: some `c` with `a L c` and `c R b`.
    pub fn d(&self, a: usize, b: usize) -> bool {
        self.lr_cells.contains(&(self.l_class[a], self.r_class[b]))
    }

    /// `R ∘ L`: some `c` with `a R c` and `c L b`.
    pub fn d_via_r_then_l(&self, a: usize, b: usize) -> bool {
        self.lr_cells.contains(&(self.l_class[b], self.r_class[a]))
    }

    pub fn related(&self, rel: Relation, a: usize, b: usize) -> bool {
        match rel {
            Relation::L => self.l(a, b),
            Relation::R => self.r(a, b),
            Relation::H => self.h(a, b),
            Relation::D => self.d(a, b),
            Relation::J => self.j(a, b),
        }
    }

    /// Equivalence classes in order of first appearance.
    pub fn classes(&self, rel: Relation) -> Vec<Vec<usize>> {
        let key = |a: usize| -> (usize, usize) {
            match rel {
                Relation::L => (self.l_class[a], 0),
                Relation::R => (self.r_class[a], 0),
                Relation::H => (self.l_class[a], self.r_class[a]),
                Relation::D | Relation::J => (self.j_class[a], 0),
            }
        };
        group_by_key(self.s.len(), key)
    }

    fn first_left_factor(&self, target: usize, source: usize) -> Option<PartialTransformation> {
        (0..self.s.len())
            .find(|&g| self.s.product(g, source) == Some(target))
            .map(|g| self.s.get(g).clone())
    }

    fn first_right_factor(&self, target: usize, source: usize) -> Option<PartialTransformation> {
        (0..self.s.len())
            .find(|&g| self.s.product(source, g) == Some(target))
            .map(|g| self.s.get(g).clone())
    }
}

fn group_by_key<K: Eq + std::hash::Hash>(len: usize, key: impl Fn(usize) -> K) -> Vec<Vec<usize>> {
    let mut slot: HashMap<K, usize> = HashMap::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for a in 0..len {
        let k = key(a);
        let next = out.len();
        let i = *slot.entry(k).or_insert(next);
        if i == out.len() {
            out.push(Vec::new());
        }
        out[i].push(a);
    }
    out
}

fn indices(
    alpha: &PartialTransformation,
    beta: &PartialTransformation,
    s: &SemigroupEnumeration,
) -> Result<(usize, usize)> {
    Ok((s.require(alpha)?, s.require(beta)?))
}

pub fn l_oracle(
    alpha: &PartialTransformation,
    beta: &PartialTransformation,
    oracle: &GreenOracle<'_>,
) -> Result<(bool, Option<GreenWitness>)> {
    let (a, b) = indices(alpha, beta, oracle.s)?;
    if !oracle.l(a, b) {
        return Ok((false, None));
    }
    if a == b {
        return Ok((true, Some(GreenWitness::default())));
    }
    Ok((
        true,
        Some(GreenWitness {
            gamma1: oracle.first_left_factor(a, b),
            gamma2: oracle.first_left_factor(b, a),
        }),
    ))
}

pub fn r_oracle(
    alpha: &PartialTransformation,
    beta: &PartialTransformation,
    oracle: &GreenOracle<'_>,
) -> Result<(bool, Option<GreenWitness>)> {
    let (a, b) = indices(alpha, beta, oracle.s)?;
    if !oracle.r(a, b) {
        return Ok((false, None));
    }
    if a == b {
        return Ok((true, Some(GreenWitness::default())));
    }
    Ok((
        true,
        Some(GreenWitness {
            gamma1: oracle.first_right_factor(a, b),
            gamma2: oracle.first_right_factor(b, a),
        }),
    ))
}

pub fn h_oracle(alpha: &PartialTransformation, beta: &PartialTransformation, oracle: &GreenOracle<'_>) -> Result<bool> {
    let (a, b) = indices(alpha, beta, oracle.s)?;
    Ok(oracle.h(a, b))
}

pub fn d_oracle(alpha: &PartialTransformation, beta: &PartialTransformation, oracle: &GreenOracle<'_>) -> Result<bool> {
    let (a, b) = indices(alpha, beta, oracle.s)?;
    Ok(oracle.d(a, b))
}

pub fn j_oracle(alpha: &PartialTransformation, beta: &PartialTransformation, oracle: &GreenOracle<'_>) -> Result<bool> {
    let (a, b) = indices(alpha, beta, oracle.s)?;
    Ok(oracle.j(a, b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsometryKind {
    Translation,
    Reflection,
}

/// `target_i = source_i + e` (translation) or `target_i = e − source_i` (reflection).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct IsometryWitness {
    pub kind: IsometryKind,
    pub e: i32,
}

/// An isometry between aligned tuples; translation is tried first.
pub fn tuple_isometry(source: &[u8], target: &[u8]) -> Option<IsometryWitness> {
    if source.len() != target.len() {
        return None;
    }
    let (Some(&s0), Some(&t0)) = (source.first(), target.first()) else {
        return Some(IsometryWitness { kind: IsometryKind::Translation, e: 0 });
    };
    let shift = t0 as i32 - s0 as i32;
    if source.iter().zip(target).all(|(&s, &t)| t as i32 - s as i32 == shift) {
        return Some(IsometryWitness { kind: IsometryKind::Translation, e: shift });
    }
    let sum = t0 as i32 + s0 as i32;
    if source.iter().zip(target).all(|(&s, &t)| t as i32 + s as i32 == sum) {
        return Some(IsometryWitness { kind: IsometryKind::Reflection, e: sum });
    }
    None
}

/// An isometry between two point sets, given in ascending order.
pub fn set_isometry(source: &[u8], target: &[u8]) -> Option<IsometryWitness> {
    let reversed: Vec<u8> = target.iter().rev().copied().collect();
    match tuple_isometry(source, target) {
        Some(w) if w.kind == IsometryKind::Translation => Some(w),
        _ => tuple_isometry(source, &reversed).filter(|w| w.kind == IsometryKind::Reflection || source.len() <= 1),
    }
}

fn translation_only(w: Option<IsometryWitness>) -> Option<IsometryWitness> {
    w.filter(|w| w.kind == IsometryKind::Translation)
}

/// Same kernel, and the image tuples in `≺` block order differ by a translation or reflection.
pub fn r_related_characterized(
    alpha: &PartialTransformation,
    beta: &PartialTransformation,
) -> (bool, Option<IsometryWitness>) {
    match (alpha.is_empty(), beta.is_empty()) {
        (true, true) => return (true, None),
        (true, false) | (false, true) => return (false, None),
        _ => {}
    }
    let (ka, kb) = (kernel(alpha), kernel(beta));
    if ka.blocks() != kb.blocks() {
        return (false, None);
    }
    let w = tuple_isometry(ka.images(), kb.images());
    (w.is_some(), w)
}

fn kernel(alpha: &PartialTransformation) -> KernelDecomposition {
    KernelDecomposition::of(alpha).expect("nonempty")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LMode {
    /// Any admissible refinement of each kernel.
    AnyAdmissible,
    /// Only the maximum admissible refinement of each kernel.
    MaximumOnly,
}

/// One admissible refinement with one of its admissible transversals; the
/// transversal points are sorted ascending and carry their images as labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Configuration {
    pub refinement: Vec<Block>,
    pub points: Vec<u8>,
    pub labels: Vec<u8>,
}

impl Configuration {
    fn translation_key(&self) -> Vec<(u8, u8)> {
        let lo = self.points[0];
        self.points.iter().zip(&self.labels).map(|(&t, &x)| (t - lo, x)).collect()
    }

    fn reflection_key(&self) -> Vec<(u8, u8)> {
        let hi = *self.points.last().expect("nonempty");
        self.points
            .iter()
            .zip(&self.labels)
            .rev()
            .map(|(&t, &x)| (hi - t, x))
            .collect()
    }
}

fn configurations(alpha: &PartialTransformation, mode: LMode) -> Vec<Configuration> {
    if alpha.is_empty() {
        return Vec::new();
    }
    let k = kernel(alpha);
    let parts: Vec<Vec<Block>> = match mode {
        LMode::AnyAdmissible => refinements(k.blocks()).into_iter().map(|r| r.blocks).collect(),
        LMode::MaximumOnly => vec![max_admissible_refinement(k.blocks()).partition.blocks],
    };
    let mut out = Vec::new();
    for blocks in parts {
        for t in admissible_transversals(&blocks) {
            let mut points = t.points;
            points.sort_unstable();
            let labels = points.iter().map(|&p| alpha.apply(p).expect("in domain")).collect();
            out.push(Configuration { refinement: blocks.clone(), points, labels });
        }
    }
    out
}

/// Precomputed admissible configurations of one element for the L test.
#[derive(Debug, Clone)]
pub struct LProfile {
    empty: bool,
    translation_keys: HashSet<Vec<(u8, u8)>>,
    reflection_keys: HashSet<Vec<(u8, u8)>>,
}

impl LProfile {
    pub fn new(alpha: &PartialTransformation, mode: LMode) -> Self {
        let configs = configurations(alpha, mode);
        let translation_keys = configs.iter().map(Configuration::translation_key).collect();
        let reflection_keys = configs.iter().map(Configuration::reflection_key).collect();
        Self { empty: alpha.is_empty(), translation_keys, reflection_keys }
    }

    pub fn related(&self, other: &LProfile, allow_reflection: bool) -> bool {
        if self.empty || other.empty {
            return self.empty && other.empty;
        }
        self.translation_keys.iter().any(|k| {
            other.translation_keys.contains(k) || (allow_reflection && other.reflection_keys.contains(k))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LWitness {
    pub alpha: Configuration,
    pub beta: Configuration,
    pub isometry: IsometryWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LDiagnostics {
    pub mode: LMode,
    pub related: bool,
    pub witness: Option<LWitness>,
}

/// Admissible refinements of both kernels with admissible transversals
/// `τ_1 < … < τ_s` and `σ_1 < … < σ_s` such that either `τ_i ↦ σ_i` is a
/// translation with `τ_iα = σ_iβ`, or `τ_i ↦ σ_{s−i+1}` is a reflection with
/// `τ_iα = σ_{s−i+1}β`.
pub fn l_related_characterized(
    alpha: &PartialTransformation,
    beta: &PartialTransformation,
    mode: LMode,
) -> LDiagnostics {
    if alpha.is_empty() || beta.is_empty() {
        return LDiagnostics { mode, related: alpha.is_empty() && beta.is_empty(), witness: None };
    }
    let (ca, cb) = (configurations(alpha, mode), configurations(beta, mode));
    for a in &ca {
        for b in cb.iter().filter(|b| b.points.len() == a.points.len()) {
            if a.labels == b.labels {
                if let Some(w) = translation_only(tuple_isometry(&a.points, &b.points)) {
                    return LDiagnostics {
                        mode,
                        related: true,
                        witness: Some(LWitness { alpha: a.clone(), beta: b.clone(), isometry: w }),
                    };
                }
            }
            let rev_points: Vec<u8> = b.points.iter().rev().copied().collect();
            let rev_labels: Vec<u8> = b.labels.iter().rev().copied().collect();
            if a.labels == rev_labels {
                if let Some(w) = tuple_isometry(&a.points, &rev_points) {
                    if w.kind == IsometryKind::Reflection {
                        return LDiagnostics {
                            mode,
                            related: true,
                            witness: Some(LWitness { alpha: a.clone(), beta: b.clone(), isometry: w }),
                        };
                    }
                }
            }
        }
    }
    LDiagnostics { mode, related: false, witness: None }
}

/// Precomputed data for the D test: the image set and the admissible
/// transversal point sets of the maximum admissible refinement.
#[derive(Debug, Clone)]
pub struct DProfile {
    empty: bool,
    image: Vec<u8>,
    transversal_sets: Vec<Vec<u8>>,
}

impl DProfile {
    pub fn new(alpha: &PartialTransformation) -> Self {
        let transversal_sets = if alpha.is_empty() {
            Vec::new()
        } else {
            let m = max_admissible_refinement(kernel(alpha).blocks());
            let mut sets: Vec<Vec<u8>> = admissible_transversals(&m.partition.blocks)
                .into_iter()
                .map(|t| {
                    let mut p = t.points;
                    p.sort_unstable();
                    p
                })
                .collect();
            sets.dedup();
            sets
        };
        Self { empty: alpha.is_empty(), image: alpha.image(), transversal_sets }
    }

    pub fn related(&self, other: &DProfile, allow_reflection: bool) -> bool {
        if self.empty || other.empty {
            return self.empty && other.empty;
        }
        let iso = |a: &[u8], b: &[u8]| -> bool {
            match set_isometry(a, b) {
                Some(w) => allow_reflection || w.kind == IsometryKind::Translation || a.len() <= 1,
                None => false,
            }
        };
        iso(&self.image, &other.image)
            && self.transversal_sets.iter().any(|t| {
                other.transversal_sets.iter().any(|s| s.len() == t.len() && iso(t, s))
            })
    }
}

/// Isometric images, and isometric admissible transversals of the maximum
/// admissible refinements of the two kernels.
pub fn d_related_characterized(alpha: &PartialTransformation, beta: &PartialTransformation) -> bool {
    DProfile::new(alpha).related(&DProfile::new(beta), true)
}

/// Simplified relations between regular elements: `L` compares images,
/// `R` compares kernels, `D` asks for isometric images.
pub fn regular_green(alpha: &PartialTransformation, beta: &PartialTransformation, rel: Relation) -> Result<bool> {
    for x in [alpha, beta] {
        if !is_regular_characterized(x)?.regular {
            return Err(Error::NotRegular(x.to_text()));
        }
    }
    Ok(regular_green_unchecked(alpha, beta, rel))
}

pub(crate) fn regular_green_unchecked(alpha: &PartialTransformation, beta: &PartialTransformation, rel: Relation) -> bool {
    let same_kernel = || match (alpha.is_empty(), beta.is_empty()) {
        (true, true) => true,
        (false, false) => kernel(alpha).blocks() == kernel(beta).blocks(),
        _ => false,
    };
    let d = || set_isometry(&alpha.image(), &beta.image()).is_some();
    match rel {
        Relation::L => alpha.image() == beta.image(),
        Relation::R => same_kernel(),
        Relation::H => alpha.image() == beta.image() && same_kernel(),
        Relation::D | Relation::J => d(),
    }
}

/// `γ′ = γ · id_{im α}`; whenever `α = βγ`, also `α = βγ′` and `h(γ′) ≤ h(α)`.
pub fn trim_to_height(gamma: &PartialTransformation, alpha: &PartialTransformation) -> Result<PartialTransformation> {
    let id = PartialTransformation::partial_identity(alpha.n(), &alpha.image())?;
    gamma.compose(&id)
}

/// Characterized relations on every pair of an enumerated subset of `CP_n`.
#[derive(Debug)]
pub struct CpCharacterization<'a> {
    s: &'a SemigroupEnumeration,
    l_any: Vec<LProfile>,
    l_max: Vec<LProfile>,
    d: Vec<DProfile>,
}

impl<'a> CpCharacterization<'a> {
    pub fn new(s: &'a SemigroupEnumeration) -> Self {
        let l_any = s.elements().iter().map(|a| LProfile::new(a, LMode::AnyAdmissible)).collect();
        let l_max = s.elements().iter().map(|a| LProfile::new(a, LMode::MaximumOnly)).collect();
        let d = s.elements().iter().map(DProfile::new).collect();
        Self { s, l_any, l_max, d }
    }

    pub fn l(&self, a: usize, b: usize, mode: LMode) -> bool {
        match mode {
            LMode::AnyAdmissible => self.l_any[a].related(&self.l_any[b], true),
            LMode::MaximumOnly => self.l_max[a].related(&self.l_max[b], true),
        }
    }

    pub fn r(&self, a: usize, b: usize) -> bool {
        r_related_characterized(self.s.get(a), self.s.get(b)).0
    }

    pub fn d(&self, a: usize, b: usize) -> bool {
        self.d[a].related(&self.d[b], true)
    }

    /// `H` as `L ∩ R` and `J` as `D`, both from the characterized relations.
    pub fn related(&self, rel: Relation, a: usize, b: usize) -> bool {
        match rel {
            Relation::L => self.l(a, b, LMode::AnyAdmissible),
            Relation::R => self.r(a, b),
            Relation::H => self.l(a, b, LMode::AnyAdmissible) && self.r(a, b),
            Relation::D | Relation::J => self.d(a, b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DClass {
    pub elements: Vec<PartialTransformation>,
    pub l_classes: Vec<Vec<PartialTransformation>>,
    pub r_classes: Vec<Vec<PartialTransformation>>,
    pub h_classes: Vec<Vec<PartialTransformation>>,
    pub contains_regular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EggBox {
    pub n: usize,
    pub variant: String,
    pub d_classes: Vec<DClass>,
}

/// Partitions `S` into D-classes, each split into L-, R- and H-classes.
/// D-classes are ordered by height (descending), then by the canonical text
/// of their least element.
pub fn egg_box(oracle: &GreenOracle<'_>) -> EggBox {
    let s = oracle.s;
    let pick = |ids: &[usize]| -> Vec<PartialTransformation> { ids.iter().map(|&i| s.get(i).clone()).collect() };
    let mut d_classes: Vec<DClass> = oracle
        .classes(Relation::D)
        .into_iter()
        .map(|members| {
            let sub = |rel: Relation| -> Vec<Vec<PartialTransformation>> {
                oracle
                    .classes(rel)
                    .into_iter()
                    .filter(|c| members.contains(&c[0]))
                    .map(|c| pick(&c))
                    .collect()
            };
            let contains_regular = members
                .iter()
                .any(|&a| crate::regularity::first_inner_inverse(s, a).is_some());
            DClass {
                elements: pick(&members),
                l_classes: sub(Relation::L),
                r_classes: sub(Relation::R),
                h_classes: sub(Relation::H),
                contains_regular,
            }
        })
        .collect();
    d_classes.sort_by(|x, y| {
        y.elements[0]
            .height()
            .cmp(&x.elements[0].height())
            .then_with(|| x.elements[0].to_text().cmp(&y.elements[0].to_text()))
    });
    EggBox { n: s.n(), variant: s.family().to_string(), d_classes }
}

impl EggBox {
    pub fn to_json(&self) -> serde_json::Value {
        let text = |v: &[PartialTransformation]| -> Vec<String> { v.iter().map(|a| a.to_text()).collect() };
        let classes: Vec<serde_json::Value> = self
            .d_classes
            .iter()
            .map(|d| {
                serde_json::json!({
                    "elements": text(&d.elements),
                    "l_classes": d.l_classes.iter().map(|c| text(c)).collect::<Vec<_>>(),
                    "r_classes": d.r_classes.iter().map(|c| text(c)).collect::<Vec<_>>(),
                    "regular": d.contains_regular,
                })
            })
            .collect();
        serde_json::json!({
            "schema": 1,
            "n": self.n,
            "variant": self.variant,
            "d_classes": classes,
        })
    }

    /// One node per H-class, grouped into one cluster per D-class.
    pub fn to_dot(&self) -> String {
        let mut out = format!("graph eggbox_{}_{} {{\n  node [shape=box, fontname=\"monospace\"];\n", self.variant, self.n);
        for (i, d) in self.d_classes.iter().enumerate() {
            out.push_str(&format!(
                "  subgraph cluster_d{i} {{\n    label=\"D{i} (height {}{})\";\n",
                d.elements[0].height(),
                if d.contains_regular { ", regular" } else { "" }
            ));
            for (j, h) in d.h_classes.iter().enumerate() {
                let label: Vec<String> = h.iter().map(|a| a.to_text()).collect();
                out.push_str(&format!("    d{i}_h{j} [label=\"{}\"];\n", label.join("\\n")));
            }
            out.push_str("  }\n");
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate, Variant};

    fn pt(n: usize, pairs: &[(usize, usize)]) -> PartialTransformation {
        PartialTransformation::new(n, pairs).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let cp3 = enumerate(3, Variant::Cp).unwrap();
        let o = GreenOracle::new(&cp3);
        let a = pt(3, &[(1, 1), (3, 2)]);
        assert!(l_oracle(&a, &a, &o).unwrap().0);

        let b = pt(3, &[(1, 2), (3, 1)]);
        let (rel, w) = l_oracle(&a, &b, &o).unwrap();
        assert!(rel);
        let w = w.unwrap();
        let swap = pt(3, &[(1, 3), (3, 1)]);
        assert_eq!(w.gamma1.as_ref(), Some(&swap));
        assert_eq!(w.gamma2.as_ref(), Some(&swap));
        assert_eq!(swap.compose(&b).unwrap(), a);

        let c = pt(3, &[(1, 2), (3, 3)]);
        let (rel, w) = r_oracle(&a, &c, &o).unwrap();
        assert!(rel);
        let w = w.unwrap();
        assert_eq!(c.compose(w.gamma1.as_ref().unwrap()).unwrap(), a);
        assert_eq!(a.compose(w.gamma2.as_ref().unwrap()).unwrap(), c);

        let outside = pt(3, &[(1, 1), (2, 3)]);
        assert!(l_oracle(&outside, &a, &o).is_err());
    }

    #[test]
    fn characterized_r_examples() {
        let a = pt(3, &[(1, 1), (3, 2)]);
        assert_eq!(
            r_related_characterized(&a, &a),
            (true, Some(IsometryWitness { kind: IsometryKind::Translation, e: 0 }))
        );
        assert_eq!(
            r_related_characterized(&a, &pt(3, &[(1, 2), (3, 3)])),
            (true, Some(IsometryWitness { kind: IsometryKind::Translation, e: 1 }))
        );
        assert!(!r_related_characterized(&a, &pt(3, &[(1, 1), (2, 2)])).0);
        let e = pt(3, &[]);
        assert!(r_related_characterized(&e, &e).0);
        assert!(!r_related_characterized(&e, &a).0);
    }

    #[test]
    fn characterized_l_examples() {
        let a = pt(3, &[(1, 1), (3, 2)]);
        for mode in [LMode::AnyAdmissible, LMode::MaximumOnly] {
            assert!(l_related_characterized(&a, &a, mode).related);
        }
        let b = pt(3, &[(1, 2), (3, 1)]);
        let diag = l_related_characterized(&a, &b, LMode::AnyAdmissible);
        assert!(diag.related);
        let w = diag.witness.unwrap();
        assert_eq!(w.isometry.kind, IsometryKind::Reflection);
        assert_eq!(w.alpha.points, vec![1, 3]);
        assert_eq!(w.beta.points, vec![1, 3]);
        assert!(!l_related_characterized(&a, &pt(3, &[(1, 1), (2, 2)]), LMode::AnyAdmissible).related);
    }

    #[test]
    fn characterized_d_examples() {
        let a = pt(3, &[(1, 1), (3, 2)]);
        assert!(d_related_characterized(&a, &a));
        assert!(!d_related_characterized(&a, &pt(3, &[(2, 2), (3, 3)])));
        assert!(d_related_characterized(&a, &pt(3, &[(1, 2), (3, 3)])));
    }

    #[test]
    fn regular_pairs() {
        let c1 = pt(3, &[(1, 2)]);
        let c2 = pt(3, &[(2, 2), (3, 2)]);
        assert!(regular_green(&c1, &c2, Relation::L).unwrap());
        let lo = pt(3, &[(1, 1), (2, 1)]);
        let hi = pt(3, &[(1, 3), (2, 3)]);
        assert!(regular_green(&lo, &hi, Relation::D).unwrap());
        assert!(!regular_green(&lo, &hi, Relation::L).unwrap());
        assert!(regular_green(&lo, &hi, Relation::R).unwrap());
        for rel in [Relation::L, Relation::R, Relation::D] {
            assert!(regular_green(&lo, &lo, rel).unwrap());
        }
        assert!(matches!(
            regular_green(&pt(3, &[(1, 1), (3, 2)]), &lo, Relation::L),
            Err(Error::NotRegular(_))
        ));
    }

    #[test]
    fn isometries() {
        assert_eq!(
            set_isometry(&[1, 2, 4], &[2, 4, 5]),
            Some(IsometryWitness { kind: IsometryKind::Reflection, e: 6 })
        );
        assert_eq!(
            set_isometry(&[1, 2, 4], &[3, 4, 6]),
            Some(IsometryWitness { kind: IsometryKind::Translation, e: 2 })
        );
        assert_eq!(set_isometry(&[1, 2, 4], &[1, 2, 3]), None);
        assert_eq!(set_isometry(&[1, 3], &[2, 4]).unwrap().kind, IsometryKind::Translation);
    }

    #[test]
    fn trims() {
        let id = PartialTransformation::identity(3).unwrap();
        let a = pt(3, &[(1, 1), (3, 2)]);
        assert_eq!(trim_to_height(&id, &a).unwrap(), pt(3, &[(1, 1), (2, 2)]));
        let g = pt(3, &[(1, 3)]);
        let t = trim_to_height(&g, &pt(3, &[(2, 1)])).unwrap();
        assert!(t.is_empty());
        assert!(trim_to_height(&id, &PartialTransformation::identity(4).unwrap()).is_err());
    }

    #[test]
    fn egg_boxes() {
        let cp1 = enumerate(1, Variant::Cp).unwrap();
        let eb = egg_box(&GreenOracle::new(&cp1));
        assert_eq!(eb.d_classes.len(), 2);
        assert_eq!(eb.d_classes[0].elements[0].to_text(), "PT 1 1->1");

        let cp2 = enumerate(2, Variant::Cp).unwrap();
        let eb = egg_box(&GreenOracle::new(&cp2));
        assert_eq!(eb.d_classes.iter().map(|d| d.elements.len()).sum::<usize>(), 9);

        let none = SemigroupEnumeration::from_elements(2, Vec::new()).unwrap();
        let eb = egg_box(&GreenOracle::new(&none));
        assert!(eb.d_classes.is_empty());
        assert_eq!(eb.to_json()["d_classes"].as_array().unwrap().len(), 0);
    }
}
