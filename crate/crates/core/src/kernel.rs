//! Kernel decompositions, transversals and refinements of kernel partitions.
//!
//! Blocks are always kept sorted internally and ordered by `≺`, i.e. by
//! their minima. Blocks need not be interval ordered: `{1,3,5}` precedes
//! `{2}` even though the two interleave.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::transform::PartialTransformation;

pub type Block = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct KernelDecomposition {
    blocks: Vec<Block>,
    images: Vec<u8>,
}

impl KernelDecomposition {
    pub fn of(alpha: &PartialTransformation) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::EmptyMap);
        }
        let mut by_image: Vec<Block> = vec![Vec::new(); alpha.n() + 1];
        for (a, x) in alpha.pairs() {
            by_image[x as usize].push(a);
        }
        let mut classes: Vec<(Block, u8)> = by_image
            .into_iter()
            .enumerate()
            .filter(|(_, b)| !b.is_empty())
            .map(|(x, b)| (b, x as u8))
            .collect();
        classes.sort_by_key(|(b, _)| b[0]);
        let (blocks, images) = classes.into_iter().unzip();
        Ok(Self { blocks, images })
    }

    /// Builds a decomposition from raw blocks and aligned images, reordering by `≺`.
    pub fn from_parts(blocks: Vec<Block>, images: Vec<u8>) -> Result<Self> {
        if blocks.len() != images.len() || blocks.is_empty() {
            return Err(Error::BadPointSets);
        }
        let mut classes: Vec<(Block, u8)> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .zip(images)
            .collect();
        if classes.iter().any(|(b, _)| b.is_empty() || b.windows(2).any(|w| w[0] == w[1])) {
            return Err(Error::BadPointSets);
        }
        classes.sort_by_key(|(b, _)| b[0]);
        let mut points: Vec<u8> = classes.iter().flat_map(|(b, _)| b.iter().copied()).collect();
        let mut imgs: Vec<u8> = classes.iter().map(|(_, x)| *x).collect();
        points.sort_unstable();
        imgs.sort_unstable();
        if points.windows(2).any(|w| w[0] == w[1]) || imgs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadPointSets);
        }
        let (blocks, images) = classes.into_iter().unzip();
        Ok(Self { blocks, images })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn height(&self) -> usize {
        self.blocks.len()
    }

    pub fn domain(&self) -> Vec<u8> {
        let mut d: Vec<u8> = self.blocks.iter().flatten().copied().collect();
        d.sort_unstable();
        d
    }
}

/// One chosen point per block, aligned with the block order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Transversal {
    pub points: Vec<u8>,
}

impl Transversal {
    pub fn new(points: Vec<u8>) -> Self {
        Self { points }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct TransversalClass {
    pub convex: bool,
    pub relatively_convex: bool,
    pub admissible: bool,
    pub good: bool,
}

/// A closest pair `(a′, b′)`; ties go to the lexicographically smallest pair.
pub fn min_distance_pair(a: &[u8], b: &[u8]) -> Result<(u8, u8)> {
    if a.is_empty() || b.is_empty() || a.iter().any(|x| b.contains(x)) {
        return Err(Error::BadPointSets);
    }
    let mut best: Option<(u8, u8, u8)> = None;
    for &x in a {
        for &y in b {
            let d = x.abs_diff(y);
            let cand = (d, x, y);
            if best.is_none_or(|cur| cand < cur) {
                best = Some(cand);
            }
        }
    }
    let (_, x, y) = best.expect("nonempty sets");
    Ok((x, y))
}

pub(crate) fn block_distance(a: &[u8], b: &[u8]) -> u8 {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| x.abs_diff(y)))
        .min()
        .unwrap_or(u8::MAX)
}

fn distance_matrix(blocks: &[Block]) -> Vec<Vec<u8>> {
    blocks
        .iter()
        .map(|a| blocks.iter().map(|b| block_distance(a, b)).collect())
        .collect()
}

pub fn is_transversal(blocks: &[Block], points: &[u8]) -> bool {
    points.len() == blocks.len() && blocks.iter().zip(points).all(|(b, t)| b.contains(t))
}

/// The block-to-point map `A_i ↦ t_i` is a contraction.
pub fn is_admissible(blocks: &[Block], points: &[u8]) -> bool {
    let dist = distance_matrix(blocks);
    admissible_with(&dist, points)
}

fn admissible_with(dist: &[Vec<u8>], points: &[u8]) -> bool {
    (0..points.len()).all(|i| (i + 1..points.len()).all(|j| points[i].abs_diff(points[j]) <= dist[i][j]))
}

pub fn is_convex(points: &[u8]) -> bool {
    let (Some(&lo), Some(&hi)) = (points.iter().min(), points.iter().max()) else {
        return true;
    };
    hi as usize - lo as usize + 1 == points.len()
}

/// No domain point strictly between two chosen points is left out.
pub fn is_relatively_convex(blocks: &[Block], points: &[u8]) -> bool {
    let (Some(&lo), Some(&hi)) = (points.iter().min(), points.iter().max()) else {
        return true;
    };
    blocks
        .iter()
        .flatten()
        .all(|&z| z <= lo || z >= hi || points.contains(&z))
}

/// `|t_i − t_j| = |x_i − x_j|` for all pairs.
pub fn is_isometric_to(points: &[u8], images: &[u8]) -> bool {
    (0..points.len()).all(|i| {
        (i + 1..points.len()).all(|j| points[i].abs_diff(points[j]) == images[i].abs_diff(images[j]))
    })
}

pub fn classify_transversal(k: &KernelDecomposition, t: &Transversal) -> Result<TransversalClass> {
    if !is_transversal(&k.blocks, &t.points) {
        return Err(Error::NotTransversal(format!("{:?}", t.points)));
    }
    let admissible = is_admissible(&k.blocks, &t.points);
    Ok(TransversalClass {
        convex: is_convex(&t.points),
        relatively_convex: is_relatively_convex(&k.blocks, &t.points),
        admissible,
        good: admissible && is_isometric_to(&t.points, &k.images),
    })
}

/// All transversals in lexicographic order of the chosen points.
#[derive(Debug, Clone)]
pub struct Transversals<'a> {
    blocks: &'a [Block],
    cursor: Option<Vec<usize>>,
}

impl Iterator for Transversals<'_> {
    type Item = Transversal;

    fn next(&mut self) -> Option<Transversal> {
        let cursor = self.cursor.as_mut()?;
        let out = Transversal::new(
            cursor.iter().zip(self.blocks).map(|(&i, b)| b[i]).collect(),
        );
        let mut k = cursor.len();
        loop {
            if k == 0 {
                self.cursor = None;
                break;
            }
            k -= 1;
            cursor[k] += 1;
            if cursor[k] < self.blocks[k].len() {
                break;
            }
            cursor[k] = 0;
        }
        Some(out)
    }
}

pub fn enumerate_transversals(blocks: &[Block]) -> Transversals<'_> {
    let cursor = if blocks.iter().any(|b| b.is_empty()) {
        None
    } else {
        Some(vec![0; blocks.len()])
    };
    Transversals { blocks, cursor }
}

pub fn has_relatively_convex_transversal(blocks: &[Block]) -> bool {
    enumerate_transversals(blocks).any(|t| is_relatively_convex(blocks, &t.points))
}

/// Admissible transversals in lexicographic order, by pruned backtracking.
pub fn admissible_transversals(blocks: &[Block]) -> Vec<Transversal> {
    let dist = distance_matrix(blocks);
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(blocks.len());
    admissible_search(blocks, &dist, &mut chosen, &mut |t| {
        out.push(Transversal::new(t.to_vec()));
        true
    });
    out
}

pub fn first_admissible_transversal(blocks: &[Block]) -> Option<Transversal> {
    let dist = distance_matrix(blocks);
    let mut found = None;
    let mut chosen = Vec::with_capacity(blocks.len());
    admissible_search(blocks, &dist, &mut chosen, &mut |t| {
        found = Some(Transversal::new(t.to_vec()));
        false
    });
    found
}

// Returns false once the visitor asks to stop.
fn admissible_search(
    blocks: &[Block],
    dist: &[Vec<u8>],
    chosen: &mut Vec<u8>,
    visit: &mut dyn FnMut(&[u8]) -> bool,
) -> bool {
    let i = chosen.len();
    if i == blocks.len() {
        return visit(chosen);
    }
    for &t in &blocks[i] {
        if chosen.iter().enumerate().all(|(j, &s)| s.abs_diff(t) <= dist[j][i]) {
            chosen.push(t);
            let go_on = admissible_search(blocks, dist, chosen, visit);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
    }
    true
}

/// A partition of `dom α` finer than `Ker α`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RefinementPartition {
    pub blocks: Vec<Block>,
    /// `parent[j]` is the index of the kernel block containing `blocks[j]`.
    pub parent: Vec<usize>,
    pub transversal: Option<Transversal>,
}

impl RefinementPartition {
    fn from_blocks(mut blocks: Vec<Block>, coarse: &[Block]) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        let parent = blocks
            .iter()
            .map(|b| coarse.iter().position(|c| c.contains(&b[0])).expect("refines the kernel"))
            .collect();
        Self { blocks, parent, transversal: None }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &[Block]) -> bool {
        refines(&self.blocks, coarser)
    }
}

pub fn refines(fine: &[Block], coarse: &[Block]) -> bool {
    fine.iter()
        .all(|f| coarse.iter().any(|c| f.iter().all(|x| c.contains(x))))
}

/// Every set partition of `block`, as restricted growth strings.
fn set_partitions(block: &[u8]) -> Vec<Vec<Block>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; block.len()];
    fn rec(pos: usize, max: usize, labels: &mut Vec<usize>, block: &[u8], out: &mut Vec<Vec<Block>>) {
        if pos == block.len() {
            let mut parts: Vec<Block> = vec![Vec::new(); max];
            for (&l, &x) in labels.iter().zip(block) {
                parts[l].push(x);
            }
            out.push(parts);
            return;
        }
        for l in 0..=max {
            labels[pos] = l;
            rec(pos + 1, max.max(l + 1), labels, block, out);
        }
    }
    if block.is_empty() {
        return vec![Vec::new()];
    }
    labels[0] = 0;
    rec(1, 1, &mut labels, block, &mut out);
    out
}

/// Every refinement of the partition, coarsest first by block count and
/// lexicographic on the `≺`-ordered blocks within a level.
pub fn refinements(blocks: &[Block]) -> Vec<RefinementPartition> {
    let mut acc: Vec<Vec<Block>> = vec![Vec::new()];
    for b in blocks {
        let splits = set_partitions(b);
        acc = acc
            .iter()
            .flat_map(|prefix| {
                splits.iter().map(move |s| {
                    let mut p = prefix.clone();
                    p.extend(s.iter().cloned());
                    p
                })
            })
            .collect();
    }
    let mut out: Vec<RefinementPartition> = acc
        .into_iter()
        .map(|p| RefinementPartition::from_blocks(p, blocks))
        .collect();
    out.sort_by(|a, b| a.blocks.len().cmp(&b.blocks.len()).then_with(|| a.blocks.cmp(&b.blocks)));
    out
}

/// Intersection of partitions viewed as equivalence relations.
pub fn meet(partitions: &[&[Block]]) -> Vec<Block> {
    let Some(first) = partitions.first() else {
        return Vec::new();
    };
    let mut points: Vec<u8> = first.iter().flatten().copied().collect();
    points.sort_unstable();
    let signature = |x: u8| -> Vec<usize> {
        partitions
            .iter()
            .map(|p| p.iter().position(|b| b.contains(&x)).unwrap_or(usize::MAX))
            .collect()
    };
    let mut groups: Vec<(Vec<usize>, Block)> = Vec::new();
    for x in points {
        let sig = signature(x);
        match groups.iter_mut().find(|(s, _)| *s == sig) {
            Some((_, b)) => b.push(x),
            None => groups.push((sig, vec![x])),
        }
    }
    groups.into_iter().map(|(_, b)| b).collect()
}

/// How the maximum admissible refinement was selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RefinementRule {
    /// A single coarsest admissible refinement exists.
    Unique,
    /// Several maximal ones exist; their intersection is admissible.
    Intersection,
    /// The intersection was not admissible; the search descended below it.
    Fallback,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxRefinement {
    pub partition: RefinementPartition,
    pub rule: RefinementRule,
}

pub fn has_admissible_transversal(blocks: &[Block]) -> bool {
    first_admissible_transversal(blocks).is_some()
}

/// The coarsest refinement of `blocks` that carries an admissible transversal,
/// found by exhaustive search over the refinement lattice.
pub fn max_admissible_refinement(blocks: &[Block]) -> MaxRefinement {
    let mut rule = RefinementRule::Unique;
    let mut ceiling: Vec<Block> = blocks.to_vec();
    loop {
        let admissible: Vec<RefinementPartition> = refinements(&ceiling)
            .into_iter()
            .filter(|r| has_admissible_transversal(&r.blocks))
            .collect();
        let maximal: Vec<&RefinementPartition> = admissible
            .iter()
            .filter(|r| {
                !admissible
                    .iter()
                    .any(|o| o.len() < r.len() && r.refines(&o.blocks))
            })
            .collect();
        let chosen = if maximal.len() == 1 {
            maximal[0].blocks.clone()
        } else {
            let parts: Vec<&[Block]> = maximal.iter().map(|r| r.blocks.as_slice()).collect();
            let m = meet(&parts);
            if rule == RefinementRule::Unique {
                rule = RefinementRule::Intersection;
            }
            if !has_admissible_transversal(&m) {
                rule = RefinementRule::Fallback;
                ceiling = m;
                continue;
            }
            m
        };
        let mut partition = RefinementPartition::from_blocks(chosen, blocks);
        partition.transversal = first_admissible_transversal(&partition.blocks);
        return MaxRefinement { partition, rule };
    }
}

/// Blocks are pairwise interval ordered: `max A_i < min A_{i+1}`.
pub fn is_interval_ordered(blocks: &[Block]) -> bool {
    blocks
        .windows(2)
        .all(|w| w[0].last().zip(w[1].first()).is_some_and(|(a, b)| a < b))
}

/// Direct construction for interval-ordered kernels: keep the two end blocks,
/// split every middle block into singletons, and pick `max A_1`, the middle
/// points and `min A_p`. Returns `None` for kernels that are not interval ordered.
pub fn interval_max_admissible_refinement(blocks: &[Block]) -> Option<RefinementPartition> {
    if blocks.is_empty() || !is_interval_ordered(blocks) {
        return None;
    }
    let p = blocks.len();
    let mut parts: Vec<Block> = Vec::new();
    let mut points = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        if i == 0 || i == p - 1 {
            parts.push(b.clone());
            points.push(if i == 0 && p > 1 { *b.last()? } else { b[0] });
        } else {
            for &x in b {
                parts.push(vec![x]);
                points.push(x);
            }
        }
    }
    let mut partition = RefinementPartition::from_blocks(parts, blocks);
    partition.transversal = Some(Transversal::new(points));
    Some(partition)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(blocks: &[&[u8]], images: &[u8]) -> KernelDecomposition {
        KernelDecomposition::from_parts(blocks.iter().map(|b| b.to_vec()).collect(), images.to_vec())
            .unwrap()
    }

    fn alpha1_sec1() -> KernelDecomposition {
        k(&[&[1, 2, 10, 23], &[4, 12], &[6, 14], &[7, 16, 17]], &[8, 6, 4, 3])
    }
    fn alpha2_sec1() -> KernelDecomposition {
        k(&[&[1, 5, 30], &[2, 12, 10], &[4, 16]], &[8, 7, 9])
    }
    fn alpha3_sec1() -> KernelDecomposition {
        k(&[&[1, 7, 21], &[2, 8, 20], &[3, 9, 19]], &[3, 4, 5])
    }

    #[test]
    fn decomposition_orders_by_minimum() {
        let a = PartialTransformation::new(5, &[(2, 1), (1, 2), (3, 2), (5, 2)]).unwrap();
        let kd = KernelDecomposition::of(&a).unwrap();
        assert_eq!(kd.blocks(), &[vec![1, 3, 5], vec![2]]);
        assert_eq!(kd.images(), &[2, 1]);

        let id = PartialTransformation::identity(3).unwrap();
        let kd = KernelDecomposition::of(&id).unwrap();
        assert_eq!(kd.blocks(), &[vec![1], vec![2], vec![3]]);
        assert_eq!(kd.images(), &[1, 2, 3]);

        let a3 = PartialTransformation::from_blocks(
            21,
            &[&[1, 7, 21], &[2, 8, 20], &[3, 9, 19]],
            &[3, 4, 5],
        )
        .unwrap();
        assert_eq!(KernelDecomposition::of(&a3).unwrap(), alpha3_sec1());
        assert_eq!(
            KernelDecomposition::of(&PartialTransformation::empty(3).unwrap()),
            Err(Error::EmptyMap)
        );
    }

    #[test]
    fn from_parts_validates() {
        assert!(KernelDecomposition::from_parts(vec![vec![1, 2], vec![2]], vec![1, 2]).is_err());
        assert!(KernelDecomposition::from_parts(vec![vec![1], vec![2]], vec![1, 1]).is_err());
        assert!(KernelDecomposition::from_parts(vec![vec![]], vec![1]).is_err());
    }

    #[test]
    fn closest_pairs() {
        assert_eq!(min_distance_pair(&[1, 2, 10, 23], &[4, 12]), Ok((2, 4)));
        assert_eq!(min_distance_pair(&[1], &[2]), Ok((1, 2)));
        assert_eq!(min_distance_pair(&[1, 5], &[3]), Ok((1, 3)));
        assert_eq!(min_distance_pair(&[1, 2], &[2]), Err(Error::BadPointSets));
        assert_eq!(min_distance_pair(&[], &[2]), Err(Error::BadPointSets));
    }

    #[test]
    fn classify_examples() {
        // The printed claim that {2,4,6,7} is admissible fails the definition:
        // |2 − 7| = 5 but 10 ∈ A_1 and 7 ∈ A_4 are only 3 apart.
        let c = classify_transversal(&alpha1_sec1(), &Transversal::new(vec![2, 4, 6, 7])).unwrap();
        assert!(!c.admissible);
        assert_eq!(block_distance(&[1, 2, 10, 23], &[7, 16, 17]), 3);

        let a2 = alpha2_sec1();
        assert!(enumerate_transversals(a2.blocks())
            .all(|t| !classify_transversal(&a2, &t).unwrap().admissible));

        let c = classify_transversal(&alpha3_sec1(), &Transversal::new(vec![1, 2, 3])).unwrap();
        assert!(c.convex && c.admissible && c.relatively_convex && c.good);
        for t in [[7, 8, 9], [21, 20, 19]] {
            let c = classify_transversal(&alpha3_sec1(), &Transversal::new(t.to_vec())).unwrap();
            assert!(c.admissible && c.convex);
        }

        let singles = k(&[&[1], &[3], &[4]], &[1, 2, 3]);
        let c = classify_transversal(&singles, &Transversal::new(vec![1, 3, 4])).unwrap();
        assert!(c.admissible);

        assert!(classify_transversal(&singles, &Transversal::new(vec![1, 2, 4])).is_err());
    }

    #[test]
    fn transversal_enumeration() {
        let blocks = vec![vec![1, 3], vec![2]];
        let ts: Vec<Vec<u8>> = enumerate_transversals(&blocks).map(|t| t.points).collect();
        assert_eq!(ts, vec![vec![1, 2], vec![3, 2]]);
        assert_eq!(enumerate_transversals(alpha1_sec1().blocks()).count(), 48);
        let singles = vec![vec![1], vec![4]];
        assert_eq!(enumerate_transversals(&singles).count(), 1);
    }

    #[test]
    fn relatively_convex_existence() {
        assert!(!has_relatively_convex_transversal(&[vec![1], vec![2, 3], vec![4]]));
        assert!(has_relatively_convex_transversal(&[vec![1], vec![3], vec![4]]));
    }

    #[test]
    fn refinement_counts() {
        assert_eq!(refinements(&[vec![1, 2]]).len(), 2);
        assert_eq!(refinements(&[vec![1, 2, 3]]).len(), 5);
        assert_eq!(refinements(&[vec![1, 2, 3, 4]]).len(), 15);
        let singles = vec![vec![1], vec![2]];
        assert_eq!(refinements(&singles).len(), 1);
        let first = &refinements(&[vec![1, 2], vec![3]])[0];
        assert_eq!(first.blocks, vec![vec![1, 2], vec![3]]);
        assert_eq!(first.parent, vec![0, 1]);
    }

    #[test]
    fn maximum_refinements() {
        let a3 = alpha3_sec1();
        let m = max_admissible_refinement(a3.blocks());
        assert_eq!(m.partition.blocks, a3.blocks());
        assert_eq!(m.rule, RefinementRule::Unique);

        let singles = vec![vec![1], vec![2], vec![5]];
        assert_eq!(max_admissible_refinement(&singles).partition.blocks, singles);

        let a2 = alpha2_sec1();
        let m = max_admissible_refinement(a2.blocks());
        assert!(m.partition.len() > a2.height());
        assert!(m.partition.refines(a2.blocks()));
        let t = m.partition.transversal.as_ref().unwrap();
        assert!(is_admissible(&m.partition.blocks, &t.points));
    }

    #[test]
    fn interval_fast_path() {
        let blocks = vec![vec![1, 2], vec![3, 4], vec![5]];
        let fast = interval_max_admissible_refinement(&blocks).unwrap();
        assert_eq!(fast.blocks, vec![vec![1, 2], vec![3], vec![4], vec![5]]);
        assert_eq!(fast.transversal.as_ref().unwrap().points, vec![2, 3, 4, 5]);
        assert_eq!(max_admissible_refinement(&blocks).partition.blocks, fast.blocks);
        assert!(interval_max_admissible_refinement(&[vec![1, 3], vec![2]]).is_none());
    }

    #[test]
    fn meet_of_partitions() {
        let a = vec![vec![1, 2], vec![3, 4]];
        let b = vec![vec![1], vec![2, 3, 4]];
        assert_eq!(meet(&[&a, &b]), vec![vec![1], vec![2], vec![3, 4]]);
    }
}
