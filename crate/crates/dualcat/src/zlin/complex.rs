//! Bounded complexes of free abelian groups, homology in canonical form,
//! and induced maps on homology.

use super::group::FgAbelianGroup;
use super::matrix::{invariant_factors, smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZlinError {
    #[error("differentials do not compose to zero between degrees {0} and {1}")]
    NotAComplex(i64, i64),
    #[error("matrix at degree {degree} has shape {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    ShapeMismatch {
        degree: i64,
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("chain map squares do not commute at degree {0}")]
    NotAChainMap(i64),
    #[error("vector is not in the cycle lattice at degree {0}; this indicates an internal bug")]
    NotACycleImage(i64),
}

/// Whether the differential lowers degree (chain) or raises it (cochain).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Grading {
    Chain,
    Cochain,
}

/// A bounded complex of finitely generated free abelian groups with a
/// labeled basis in each degree. Differentials are keyed by their source
/// degree; `d(n): C_n -> C_{n-1}` for chain grading, `d(n): C^n -> C^{n+1}`
/// for cochain grading. Consecutive differentials are checked to compose
/// to zero at construction.
#[derive(Clone, Debug)]
pub struct IntegerChainComplex {
    grading: Grading,
    terms: BTreeMap<i64, Vec<String>>,
    diffs: BTreeMap<i64, IntMatrix>,
}

impl IntegerChainComplex {
    pub fn new(
        grading: Grading,
        terms: BTreeMap<i64, Vec<String>>,
        diffs: BTreeMap<i64, IntMatrix>,
    ) -> Result<Self, ZlinError> {
        let terms: BTreeMap<i64, Vec<String>> =
            terms.into_iter().filter(|(_, b)| !b.is_empty()).collect();
        let x = IntegerChainComplex { grading, terms, diffs };
        x.check_shapes()?;
        x.check_dd_zero()?;
        Ok(x)
    }

    /// Unlabeled construction; bases are named positionally.
    pub fn from_ranks(
        grading: Grading,
        ranks: &[(i64, usize)],
        diffs: BTreeMap<i64, IntMatrix>,
    ) -> Result<Self, ZlinError> {
        let terms = ranks
            .iter()
            .map(|&(d, r)| (d, (0..r).map(|i| format!("e{i}")).collect()))
            .collect();
        IntegerChainComplex::new(grading, terms, diffs)
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn rank(&self, degree: i64) -> usize {
        self.terms.get(&degree).map_or(0, Vec::len)
    }

    pub fn labels(&self, degree: i64) -> &[String] {
        self.terms.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    pub fn lo(&self) -> i64 {
        self.terms.keys().next().copied().unwrap_or(0)
    }

    pub fn hi(&self) -> i64 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    fn target_degree(&self, source: i64) -> i64 {
        match self.grading {
            Grading::Chain => source - 1,
            Grading::Cochain => source + 1,
        }
    }

    /// The differential out of `degree`, materialized as a zero matrix
    /// when absent.
    pub fn diff(&self, degree: i64) -> IntMatrix {
        match self.diffs.get(&degree) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(self.rank(self.target_degree(degree)), self.rank(degree)),
        }
    }

    fn check_shapes(&self) -> Result<(), ZlinError> {
        for (&deg, m) in &self.diffs {
            let want_rows = self.rank(self.target_degree(deg));
            let want_cols = self.rank(deg);
            if m.rows() != want_rows || m.cols() != want_cols {
                return Err(ZlinError::ShapeMismatch {
                    degree: deg,
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                    want_rows,
                    want_cols,
                });
            }
        }
        Ok(())
    }

    fn check_dd_zero(&self) -> Result<(), ZlinError> {
        for &deg in self.terms.keys() {
            let mid = self.target_degree(deg);
            if self.rank(mid) == 0 || self.rank(self.target_degree(mid)) == 0 {
                continue;
            }
            if !self.diff(mid).mul(&self.diff(deg)).is_zero() {
                return Err(ZlinError::NotAComplex(deg, self.target_degree(mid)));
            }
        }
        Ok(())
    }

    /// Alternating sum of term ranks.
    pub fn euler_characteristic(&self) -> BigInt {
        let mut chi = BigInt::zero();
        for (&deg, basis) in &self.terms {
            let t = BigInt::from(basis.len());
            if deg.rem_euclid(2) == 0 {
                chi += t;
            } else {
                chi -= t;
            }
        }
        chi
    }

    /// Homology (or cohomology, per grading) at `degree`, in canonical
    /// form. The torsion of ker/im equals the torsion of the cokernel of
    /// the incoming differential (the sequence splits off the free image
    /// of the outgoing one), so no basis bookkeeping is needed here.
    pub fn homology(&self, degree: i64) -> FgAbelianGroup {
        let ambient = self.rank(degree);
        if ambient == 0 {
            return FgAbelianGroup::trivial();
        }
        let incoming_degree = match self.grading {
            Grading::Chain => degree + 1,
            Grading::Cochain => degree - 1,
        };
        let out_rank = invariant_factors(&self.diff(degree)).len();
        let inc_factors = invariant_factors(&self.diff(incoming_degree));
        FgAbelianGroup::from_presentation_diagonal(ambient - out_rank, &inc_factors)
    }

    /// Homology together with explicit generating cycles and the data
    /// needed to locate an arbitrary cycle's class.
    pub fn homology_basis(&self, degree: i64) -> HomologyBasis {
        let ambient = self.rank(degree);
        let out = self.diff(degree);
        let incoming_degree = match self.grading {
            Grading::Chain => degree + 1,
            Grading::Cochain => degree - 1,
        };
        let inc = self.diff(incoming_degree);
        HomologyBasis::compute(degree, ambient, &out, &inc)
    }

    /// Re-grade a chain complex as a cochain complex via degree negation
    /// (and vice versa); homology in degree n becomes cohomology in -n.
    pub fn reindexed(&self) -> IntegerChainComplex {
        let grading = match self.grading {
            Grading::Chain => Grading::Cochain,
            Grading::Cochain => Grading::Chain,
        };
        let terms = self.terms.iter().map(|(&d, b)| (-d, b.clone())).collect();
        let diffs = self.diffs.iter().map(|(&d, m)| (-d, m.clone())).collect();
        IntegerChainComplex { grading, terms, diffs }
    }
}

/// Canonical presentation of one homology group: generators are cycles in
/// the ambient basis of the complex at that degree, listed torsion-first
/// (in divisibility order) and then free.
pub struct HomologyBasis {
    degree: i64,
    pub group: FgAbelianGroup,
    /// Cycle representative per generator, torsion generators first.
    pub generators: Vec<Vec<BigInt>>,
    /// Order of each generator: d_i >= 2 for torsion, 0 for free.
    pub orders: Vec<BigInt>,
    kernel_rank: usize,
    out_rank: usize,
    out_v_inv: IntMatrix,
    pres_u: IntMatrix,
    pres_diag: Vec<BigInt>,
    generator_indices: Vec<usize>,
}

impl HomologyBasis {
    fn compute(degree: i64, ambient: usize, out: &IntMatrix, inc: &IntMatrix) -> HomologyBasis {
        let out_sm = smith_normal_form(out);
        let r = out_sm.rank;
        let k = ambient - r;
        // Kernel lattice basis: the last k columns of V.
        let kernel = out_sm.v.column_block(r, ambient);
        // Incoming boundaries in kernel coordinates.
        let full = out_sm.v_inv.mul(inc);
        debug_assert!(
            r == 0 || full.row_block(0, r).is_zero(),
            "boundaries are not cycles: differential composition is nonzero"
        );
        let pres = full.row_block(r, ambient);
        let pres_sm = smith_normal_form(&pres);
        let diag = pres_sm.diagonal();
        let group = FgAbelianGroup::from_presentation_diagonal(k, &diag);
        // Generator i of the quotient corresponds to column i of U^{-1}.
        let mut generator_indices = Vec::new();
        for (i, d) in diag.iter().enumerate() {
            if *d >= BigInt::from(2) {
                generator_indices.push(i);
            }
        }
        for i in diag.len()..k {
            generator_indices.push(i);
        }
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for &i in &generator_indices {
            let col = pres_sm.u_inv.column(i);
            generators.push(kernel.mul_vec(&col));
            orders.push(if i < diag.len() { diag[i].clone() } else { BigInt::zero() });
        }
        HomologyBasis {
            degree,
            group,
            generators,
            orders,
            kernel_rank: k,
            out_rank: r,
            out_v_inv: out_sm.v_inv,
            pres_u: pres_sm.u,
            pres_diag: diag,
            generator_indices,
        }
    }

    /// Coordinates of the homology class of `cycle` over the canonical
    /// generators; torsion coordinates are reduced into [0, d_i).
    pub fn class_of(&self, cycle: &[BigInt]) -> Result<Vec<BigInt>, ZlinError> {
        let y = self.out_v_inv.mul_vec(cycle);
        if y[..self.out_rank].iter().any(|v| !v.is_zero()) {
            return Err(ZlinError::NotACycleImage(self.degree));
        }
        let a = y[self.out_rank..].to_vec();
        debug_assert_eq!(a.len(), self.kernel_rank);
        let w = self.pres_u.mul_vec(&a);
        let coords = self
            .generator_indices
            .iter()
            .map(|&i| {
                if i < self.pres_diag.len() {
                    w[i].mod_floor(&self.pres_diag[i])
                } else {
                    w[i].clone()
                }
            })
            .collect();
        Ok(coords)
    }
}

/// A degreewise map of complexes; squares with the differentials are
/// checked to commute at construction.
#[derive(Clone, Debug)]
pub struct ChainMap {
    maps: BTreeMap<i64, IntMatrix>,
}

impl ChainMap {
    pub fn new(
        from: &IntegerChainComplex,
        to: &IntegerChainComplex,
        maps: BTreeMap<i64, IntMatrix>,
    ) -> Result<Self, ZlinError> {
        assert!(from.grading() == to.grading(), "chain map between mixed gradings");
        let f = ChainMap { maps };
        for (&deg, m) in &f.maps {
            if m.rows() != to.rank(deg) || m.cols() != from.rank(deg) {
                return Err(ZlinError::ShapeMismatch {
                    degree: deg,
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                    want_rows: to.rank(deg),
                    want_cols: from.rank(deg),
                });
            }
        }
        let all_degrees: Vec<i64> = from.degrees().chain(to.degrees()).collect();
        for &deg in &all_degrees {
            let tgt = match from.grading() {
                Grading::Chain => deg - 1,
                Grading::Cochain => deg + 1,
            };
            let lhs = f.map_at(to, from, tgt).mul(&from.diff(deg));
            let rhs = to.diff(deg).mul(&f.map_at(to, from, deg));
            if lhs != rhs {
                return Err(ZlinError::NotAChainMap(deg));
            }
        }
        Ok(f)
    }

    pub fn map_at(
        &self,
        to: &IntegerChainComplex,
        from: &IntegerChainComplex,
        degree: i64,
    ) -> IntMatrix {
        match self.maps.get(&degree) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(to.rank(degree), from.rank(degree)),
        }
    }
}

/// Matrix of the induced map on homology at `degree`, with respect to the
/// canonical generators of source and target. Rows over torsion generators
/// are reduced into [0, d_i).
pub fn induced_map(
    from: &IntegerChainComplex,
    to: &IntegerChainComplex,
    f: &ChainMap,
    degree: i64,
) -> Result<IntMatrix, ZlinError> {
    let src = from.homology_basis(degree);
    let tgt = to.homology_basis(degree);
    induced_on_bases(&src, &tgt, &f.map_at(to, from, degree))
}

/// Induced map on homology from precomputed bases and the raw matrix of
/// the chain map at that degree; avoids recomputing Smith forms when many
/// maps share endpoints.
pub fn induced_on_bases(
    src: &HomologyBasis,
    tgt: &HomologyBasis,
    f_matrix: &IntMatrix,
) -> Result<IntMatrix, ZlinError> {
    let mut out = IntMatrix::zeros(tgt.generators.len(), src.generators.len());
    for (j, gen) in src.generators.iter().enumerate() {
        let image = f_matrix.mul_vec(gen);
        let coords = tgt.class_of(&image)?;
        for (i, v) in coords.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}
