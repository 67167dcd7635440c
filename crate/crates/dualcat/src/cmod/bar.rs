//! The normalized Bar resolution of the constant module, and the
//! two-sided variant resolving an arbitrary pointwise-free module.

use super::projective::{HomMatrix, ProjectiveComplex, Summand};
use super::{CModule, Variance};
use crate::category::{nondegenerate_nerve, Chain, FiniteCategory, Obj};
use crate::zlin::{Grading, IntMatrix, IntegerChainComplex};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A Bar resolution: the complex of projectives together with the module
/// it augments to and the degree-0 summand bookkeeping needed to build
/// the augmentation.
pub struct BarResolution {
    pub complex: ProjectiveComplex,
    /// The module being resolved.
    pub coefficients: CModule,
    /// For each degree-0 summand: its object and coefficient basis index.
    deg0: Vec<(Obj, usize)>,
}

impl BarResolution {
    /// Length of the resolution (the longest nondegenerate chain).
    pub fn length(&self) -> i64 {
        self.complex.hi()
    }

    /// The evaluation at `y` of the augmented complex
    /// `... -> B_1 -> B_0 -> F -> 0`, with `F(y)` placed in degree -1.
    /// Exactness of the Bar construction means this complex has trivial
    /// homology in every degree at every object.
    pub fn augmented_evaluation(&self, y: Obj) -> IntegerChainComplex {
        let cat = self.complex.category().clone();
        let f = &self.coefficients;
        let eval = self.complex.evaluate(y);
        let mut terms: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        let mut diffs: BTreeMap<i64, IntMatrix> = BTreeMap::new();
        for deg in eval.degrees() {
            terms.insert(deg, eval.labels(deg).to_vec());
        }
        for deg in eval.degrees() {
            let d = eval.diff(deg);
            if d.rows() > 0 || d.cols() > 0 {
                diffs.insert(deg, d);
            }
        }
        terms.insert(-1, (0..f.rank_at(y)).map(|i| format!("aug{i}")).collect());
        // Augmentation: the basis vector (x, k, g: x -> y) maps to F(g) e_k.
        let mut aug = IntMatrix::zeros(f.rank_at(y), eval.rank(0));
        let mut col = 0;
        for &(x, k) in &self.deg0 {
            for &g in cat.hom_basis(x, y) {
                let fg = f.map(g);
                for row in 0..fg.rows() {
                    aug.set(row, col, fg.get(row, k).clone());
                }
                col += 1;
            }
        }
        assert_eq!(col, eval.rank(0));
        diffs.insert(0, aug);
        IntegerChainComplex::new(Grading::Chain, terms, diffs)
            .expect("augmented Bar evaluation is a complex")
    }
}

/// The normalized Bar resolution of the constant module: the degree-n
/// term is the direct sum, over nondegenerate n-chains x_0 -> ... -> x_n,
/// of the standard projective P_{x_n}; the differential is the
/// alternating sum of the face maps, the last face folding its arrow
/// into the projective tag by precomposition.
pub fn bar_resolution(cat: &Arc<FiniteCategory>) -> BarResolution {
    bar_resolution_of_module(cat, &CModule::constant(cat.clone(), Variance::Left))
}

/// The two-sided Bar resolution of a pointwise-free left module F: the
/// degree-n term has one copy of P_{x_n} per (nondegenerate n-chain,
/// basis vector of F(x_0)); the first face acts on the coefficient
/// through F, interior faces compose arrows, the last face precomposes
/// into the projective tag.
pub fn bar_resolution_of_module(cat: &Arc<FiniteCategory>, f: &CModule) -> BarResolution {
    assert_eq!(f.variance(), Variance::Left, "bar resolution resolves left modules");
    assert!(cat.as_ref() == f.category().as_ref(), "module lives over a different category");
    let nerve = nondegenerate_nerve(cat);
    let mut terms: BTreeMap<i64, Vec<Summand>> = BTreeMap::new();
    let mut index: Vec<BTreeMap<(Chain, usize), usize>> = Vec::new();
    let mut deg0 = Vec::new();
    for n in 0..=nerve.max_degree() as usize {
        let mut summands = Vec::new();
        let mut idx = BTreeMap::new();
        for chain in nerve.degree(n) {
            let end = chain.end(cat);
            let start = chain.start();
            for k in 0..f.rank_at(start) {
                idx.insert((chain.clone(), k), summands.len());
                let label = if f.rank_at(start) == 1 && f.labels_at(start)[k] == "e0" {
                    chain.label(cat)
                } else {
                    format!("{}@{}", chain.label(cat), f.labels_at(start)[k])
                };
                summands.push(Summand { object: end, label });
                if n == 0 {
                    deg0.push((start, k));
                }
            }
        }
        index.push(idx);
        terms.insert(n as i64, summands);
    }
    let mut diffs: BTreeMap<i64, HomMatrix> = BTreeMap::new();
    for n in 1..=nerve.max_degree() as usize {
        let rows = terms[&(n as i64 - 1)].len();
        let cols = terms[&(n as i64)].len();
        let mut mat = HomMatrix::zeros(rows, cols);
        for chain in nerve.degree(n) {
            let end = chain.end(cat);
            let start = chain.start();
            let id_end = cat.identity_of(end);
            for k in 0..f.rank_at(start) {
                let col = index[n][&(chain.clone(), k)];
                for i in 0..=n {
                    let sign = if i % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
                    let face = chain.face(cat, i);
                    if i == 0 {
                        // The dropped first arrow acts on the coefficient.
                        let alpha = chain.mors()[0];
                        let fa = f.map(alpha);
                        for k2 in 0..f.rank_at(face.start()) {
                            let coeff = fa.get(k2, k);
                            if !num_traits::Zero::is_zero(coeff) {
                                let row = index[n - 1][&(face.clone(), k2)];
                                mat.add_term(row, col, id_end, sign.clone() * coeff);
                            }
                        }
                    } else if i < n {
                        let row = index[n - 1][&(face.clone(), k)];
                        mat.add_term(row, col, id_end, sign);
                    } else {
                        // Last face: fold the final arrow into the tag.
                        let alpha = *chain.mors().last().unwrap();
                        let row = index[n - 1][&(face.clone(), k)];
                        mat.add_term(row, col, alpha, sign);
                    }
                }
            }
        }
        diffs.insert(n as i64, mat);
    }
    let complex =
        ProjectiveComplex::new(cat.clone(), Variance::Left, Grading::Chain, terms, diffs);
    BarResolution { complex, coefficients: f.clone(), deg0 }
}
