//! Predicates specific to the order-preserving (`OCP_n`), order-preserving-or-
//! reversing (`ORCP_n`) and total (`CT_n`) contraction semigroups.
//!
//! Block indices below always follow the `≺` order of [`KernelDecomposition`];
//! for monotone contractions that is also the interval order of the blocks.

use serde::Serialize;

use crate::enumeration::Variant;
use crate::error::{Error, Result};
use crate::green::{r_related_characterized, DProfile, IsometryKind, Relation};
use crate::kernel::KernelDecomposition;
use crate::regularity::is_regular_characterized;
use crate::transform::PartialTransformation;

pub fn member(alpha: &PartialTransformation, variant: Variant) -> bool {
    variant.contains(alpha)
}

fn require(alpha: &PartialTransformation, variant: Variant) -> Result<()> {
    if variant.contains(alpha) {
        Ok(())
    } else {
        Err(Error::NotMember { element: alpha.to_text(), family: variant.name().to_string() })
    }
}

fn require_height(alpha: &PartialTransformation, min: usize) -> Result<()> {
    if alpha.height() < min {
        Err(Error::HeightOutOfScope { height: alpha.height(), min })
    } else {
        Ok(())
    }
}

fn max_of(block: &[u8]) -> i32 {
    *block.iter().max().expect("nonempty block") as i32
}

fn min_of(block: &[u8]) -> i32 {
    *block.iter().min().expect("nonempty block") as i32
}

/// `max A_1 − x_a = min A_p − x_b = d` and `A_i = {x_{m(i)} + d}` for the
/// middle blocks, where `(a, b, m)` is either the identity indexing or the
/// reversed one.
fn offset_formula(k: &KernelDecomposition, reversed: bool) -> bool {
    let (blocks, x) = (k.blocks(), k.images());
    let p = blocks.len();
    let idx = |i: usize| if reversed { p - 1 - i } else { i };
    let d = max_of(&blocks[0]) - x[idx(0)] as i32;
    if min_of(&blocks[p - 1]) - x[idx(p - 1)] as i32 != d {
        return false;
    }
    (1..p.saturating_sub(1)).all(|i| {
        let b = &blocks[i];
        b.len() == 1 && b[0] as i32 == x[idx(i)] as i32 + d
    })
}

/// Regularity test for order-preserving contractions of height at least 3.
pub fn ocp_regular(alpha: &PartialTransformation) -> Result<bool> {
    require(alpha, Variant::Ocp)?;
    require_height(alpha, 3)?;
    Ok(offset_formula(&KernelDecomposition::of(alpha)?, false))
}

/// Regularity test for elements of `ORCP_n` of height at least 3: the
/// order-preserving formula, or `min A_p − x_1 = max A_1 − x_p = d` with
/// `A_i = {x_{p−i+1} + d}`.
pub fn orcp_regular(alpha: &PartialTransformation) -> Result<bool> {
    require(alpha, Variant::Orcp)?;
    require_height(alpha, 3)?;
    let k = KernelDecomposition::of(alpha)?;
    Ok(offset_formula(&k, false) || offset_formula(&k, true))
}

/// Regularity inside `CP_n` with the variant-specific formula where it
/// applies, and the good-transversal test for heights below 3.
pub fn variant_regular(alpha: &PartialTransformation, variant: Variant) -> Result<bool> {
    require(alpha, variant)?;
    match variant {
        Variant::Ocp if alpha.height() >= 3 => ocp_regular(alpha),
        Variant::Orcp if alpha.height() >= 3 => orcp_regular(alpha),
        Variant::Cp | Variant::Ocp | Variant::Orcp => Ok(is_regular_characterized(alpha)?.regular),
        Variant::P | Variant::Ct => Err(Error::UnknownName {
            kind: "regularity formula for variant",
            value: variant.name().to_string(),
        }),
    }
}

/// Both sides of the block-formula / good-transversal equivalence, computed
/// independently: `(condition_i, condition_ii)`.
pub fn good_transversal_equiv(alpha: &PartialTransformation) -> Result<(bool, bool)> {
    require(alpha, Variant::Orcp)?;
    let k = KernelDecomposition::of(alpha)?;
    let condition_i = k.height() == 1 || offset_formula(&k, false) || offset_formula(&k, true);
    let condition_ii = is_regular_characterized(alpha)?.good_transversal.is_some();
    Ok((condition_i, condition_ii))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KernelTypeWitness {
    pub d: i32,
}

/// `max A_1 − max B_1 = d = min A_p − min B_p` and `A_i = B_i + d` for the
/// middle blocks. Unequal heights or an empty map give `false`.
pub fn kernel_type_equal(
    alpha: &PartialTransformation,
    beta: &PartialTransformation,
) -> (bool, Option<KernelTypeWitness>) {
    if alpha.is_empty() || beta.is_empty() || alpha.height() != beta.height() {
        return (false, None);
    }
    let ka = KernelDecomposition::of(alpha).expect("nonempty");
    let kb = KernelDecomposition::of(beta).expect("nonempty");
    let (a, b) = (ka.blocks(), kb.blocks());
    let p = a.len();
    let d = max_of(&a[0]) - max_of(&b[0]);
    if min_of(&a[p - 1]) - min_of(&b[p - 1]) != d {
        return (false, None);
    }
    let middle_ok = (1..p.saturating_sub(1)).all(|i| {
        a[i].len() == b[i].len() && a[i].iter().zip(&b[i]).all(|(&x, &y)| x as i32 == y as i32 + d)
    });
    if middle_ok {
        (true, Some(KernelTypeWitness { d }))
    } else {
        (false, None)
    }
}

fn monotone_green(
    alpha: &PartialTransformation,
    beta: &PartialTransformation,
    rel: Relation,
    variant: Variant,
) -> Result<bool> {
    require(alpha, variant)?;
    require(beta, variant)?;
    let reflections = variant == Variant::Orcp;
    let l = || {
        if alpha.is_empty() || beta.is_empty() {
            return alpha.is_empty() && beta.is_empty();
        }
        alpha.image() == beta.image() && (alpha.height() == 1 || kernel_type_equal(alpha, beta).0)
    };
    let r = || match r_related_characterized(alpha, beta) {
        (true, Some(w)) => reflections || w.kind == IsometryKind::Translation,
        (related, _) => related,
    };
    let d = || DProfile::new(alpha).related(&DProfile::new(beta), reflections);
    Ok(match rel {
        Relation::L => l(),
        Relation::R => r(),
        Relation::H => l() && r(),
        Relation::D | Relation::J => d(),
    })
}

/// Green's relations inside `ORCP_n`.
pub fn orcp_green(alpha: &PartialTransformation, beta: &PartialTransformation, rel: Relation) -> Result<bool> {
    monotone_green(alpha, beta, rel, Variant::Orcp)
}

/// Green's relations inside `OCP_n`: as in `ORCP_n` with translations only.
pub fn ocp_green(alpha: &PartialTransformation, beta: &PartialTransformation, rel: Relation) -> Result<bool> {
    monotone_green(alpha, beta, rel, Variant::Ocp)
}
