//! Regular elements: `α` is regular when `αγα = α` for some `γ`.
//!
//! Two independent routes are provided. The characterized route looks for a
//! good transversal of `Ker α` (admissible, and `t_i ↦ x_i` an isometry) and
//! builds the inner inverse `x_k ↦ t_k` on `im α`. The brute-force route
//! scans every candidate `γ` of an enumerated semigroup.

use serde::Serialize;

use crate::enumeration::SemigroupEnumeration;
use crate::error::{Error, Result};
use crate::kernel::{
    enumerate_transversals, is_admissible, is_isometric_to, KernelDecomposition, Transversal,
};
use crate::transform::PartialTransformation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityVerdict {
    pub regular: bool,
    pub good_transversal: Option<Transversal>,
    pub witness: Option<PartialTransformation>,
}

impl RegularityVerdict {
    fn irregular() -> Self {
        Self { regular: false, good_transversal: None, witness: None }
    }
}

fn require_contraction(alpha: &PartialTransformation) -> Result<()> {
    if alpha.is_contraction() {
        Ok(())
    } else {
        Err(Error::NotContraction(alpha.to_text()))
    }
}

/// Good transversals of `Ker α`, in transversal-enumeration order.
pub fn good_transversals(alpha: &PartialTransformation) -> Result<Vec<Transversal>> {
    require_contraction(alpha)?;
    if alpha.is_empty() {
        return Ok(Vec::new());
    }
    let k = KernelDecomposition::of(alpha)?;
    Ok(good_transversal_iter(&k).collect())
}

fn good_transversal_iter(k: &KernelDecomposition) -> impl Iterator<Item = Transversal> + '_ {
    enumerate_transversals(k.blocks()).filter(move |t| {
        is_isometric_to(&t.points, k.images()) && is_admissible(k.blocks(), &t.points)
    })
}

pub fn is_regular_characterized(alpha: &PartialTransformation) -> Result<RegularityVerdict> {
    require_contraction(alpha)?;
    if alpha.is_empty() {
        return Ok(RegularityVerdict {
            regular: true,
            good_transversal: None,
            witness: Some(alpha.clone()),
        });
    }
    let k = KernelDecomposition::of(alpha)?;
    let Some(t) = good_transversal_iter(&k).next() else {
        return Ok(RegularityVerdict::irregular());
    };
    let pairs: Vec<(usize, usize)> = k
        .images()
        .iter()
        .zip(&t.points)
        .map(|(&x, &p)| (x as usize, p as usize))
        .collect();
    let witness = PartialTransformation::new(alpha.n(), &pairs)?;
    Ok(RegularityVerdict { regular: true, good_transversal: Some(t), witness: Some(witness) })
}

/// Scans `s` for the first `γ` with `αγα = α`.
pub fn is_regular_bruteforce(
    alpha: &PartialTransformation,
    s: &SemigroupEnumeration,
) -> Result<RegularityVerdict> {
    let a = s.require(alpha)?;
    Ok(match first_inner_inverse(s, a) {
        Some(g) => RegularityVerdict {
            regular: true,
            good_transversal: None,
            witness: Some(s.get(g).clone()),
        },
        None => RegularityVerdict::irregular(),
    })
}

pub(crate) fn first_inner_inverse(s: &SemigroupEnumeration, a: usize) -> Option<usize> {
    let alpha = s.get(a);
    (0..s.len()).find(|&g| {
        let ag = alpha.compose_unchecked(s.get(g));
        ag.compose_unchecked(alpha) == *alpha
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate, Variant};

    fn pt(n: usize, pairs: &[(usize, usize)]) -> PartialTransformation {
        PartialTransformation::new(n, pairs).unwrap()
    }

    #[test]
    fn characterized_examples() {
        let a1 = pt(5, &[(2, 1), (1, 2), (3, 2), (5, 2)]);
        let v = is_regular_characterized(&a1).unwrap();
        assert!(v.regular);
        let g = v.witness.unwrap();
        assert_eq!(a1.compose(&g).unwrap().compose(&a1).unwrap(), a1);
        assert!(g.is_contraction());

        let a2 = pt(10, &[(2, 1), (1, 2), (3, 2), (5, 2), (4, 3)]);
        let v = is_regular_characterized(&a2).unwrap();
        assert!(v.regular);
        assert_eq!(v.good_transversal.unwrap().points, vec![3, 2, 4]);

        assert!(!is_regular_characterized(&pt(3, &[(1, 1), (3, 2)])).unwrap().regular);
        assert!(is_regular_characterized(&pt(3, &[(1, 2), (2, 2), (3, 2)])).unwrap().regular);
        assert!(is_regular_characterized(&pt(3, &[])).unwrap().regular);
        assert!(matches!(
            is_regular_characterized(&pt(3, &[(1, 1), (2, 3)])),
            Err(Error::NotContraction(_))
        ));
    }

    #[test]
    fn bruteforce_examples() {
        let cp3 = enumerate(3, Variant::Cp).unwrap();
        let id = PartialTransformation::identity(3).unwrap();
        let v = is_regular_bruteforce(&id, &cp3).unwrap();
        assert!(v.regular);
        let g = v.witness.unwrap();
        assert_eq!(id.compose(&g).unwrap().compose(&id).unwrap(), id);

        assert!(!is_regular_bruteforce(&pt(3, &[(1, 1), (3, 2)]), &cp3).unwrap().regular);
        assert!(is_regular_bruteforce(&pt(3, &[(1, 1), (2, 3)]), &cp3).is_err());

        let cp5 = enumerate(5, Variant::Cp).unwrap();
        let a1 = pt(5, &[(2, 1), (1, 2), (3, 2), (5, 2)]);
        assert!(is_regular_bruteforce(&a1, &cp5).unwrap().regular);
    }

    #[test]
    fn good_transversal_streams() {
        let a3 = PartialTransformation::from_blocks(
            21,
            &[&[1, 7, 21], &[2, 8, 20], &[3, 9, 19]],
            &[3, 4, 5],
        )
        .unwrap();
        assert!(a3.is_contraction());
        let good = good_transversals(&a3).unwrap();
        assert!(good.iter().any(|t| t.points == vec![1, 2, 3]));
        assert!(good_transversals(&pt(3, &[(1, 1), (3, 2)])).unwrap().is_empty());
        let single = good_transversals(&pt(3, &[(2, 3)])).unwrap();
        assert_eq!(single, vec![Transversal::new(vec![2])]);
    }
}
