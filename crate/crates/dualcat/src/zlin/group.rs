//! Finitely generated abelian groups in canonical form.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A finitely generated abelian group presented by its rank and torsion
/// coefficients d_1 | d_2 | ... with every d_i >= 2. The form is unique,
/// so structural equality decides isomorphism.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Self {
        for (i, d) in torsion.iter().enumerate() {
            assert!(*d >= BigInt::from(2), "torsion coefficient {d} < 2");
            if i + 1 < torsion.len() {
                assert!(
                    (&torsion[i + 1] % d).is_zero(),
                    "torsion coefficients must form a divisibility chain"
                );
            }
        }
        FgAbelianGroup { rank, torsion }
    }

    pub fn trivial() -> Self {
        FgAbelianGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup { rank, torsion: Vec::new() }
    }

    /// From the nonzero diagonal of a Smith normal form presentation of
    /// Z^ambient / (column span): entries equal to 1 are dropped.
    pub fn from_presentation_diagonal(ambient: usize, diag: &[BigInt]) -> Self {
        let torsion: Vec<BigInt> = diag.iter().filter(|d| !d.is_one()).cloned().collect();
        FgAbelianGroup::new(ambient - diag.len(), torsion)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Z: rank one, no torsion.
    pub fn is_free_of_rank_one(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_equality_decides_isomorphism() {
        assert_eq!(FgAbelianGroup::free(1), FgAbelianGroup::free(1));
        assert_ne!(
            FgAbelianGroup::new(0, vec![BigInt::from(2)]),
            FgAbelianGroup::new(0, vec![BigInt::from(4)])
        );
        assert_eq!(
            FgAbelianGroup::new(2, vec![BigInt::from(2), BigInt::from(6)]),
            FgAbelianGroup::new(2, vec![BigInt::from(2), BigInt::from(6)])
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(FgAbelianGroup::trivial().to_string(), "0");
        assert_eq!(FgAbelianGroup::free(1).to_string(), "Z");
        assert_eq!(
            FgAbelianGroup::new(2, vec![BigInt::from(2)]).to_string(),
            "Z^2 + Z/2"
        );
    }

    #[test]
    fn presentation_drops_unit_factors() {
        let diag = [BigInt::from(1), BigInt::from(1), BigInt::from(2)];
        let g = FgAbelianGroup::from_presentation_diagonal(5, &diag);
        assert_eq!(g.rank(), 2);
        assert_eq!(g.torsion(), &[BigInt::from(2)]);
    }
}
