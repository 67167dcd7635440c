//! Complexes of finite direct sums of standard projectives, with
//! differentials given by formal integer combinations of morphisms, and
//! the duality functor on such complexes.

use super::{CmodError, Variance};
use crate::category::{FiniteCategory, Mor, Obj};
use crate::zlin::{Grading, IntMatrix, IntegerChainComplex};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// One standard projective in a direct sum, tagged by its object and a
/// label identifying where it came from (a nerve chain, usually).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub object: Obj,
    pub label: String,
}

/// A matrix whose entries are formal integer combinations of morphisms.
/// For left variance, the (i, j) entry of a map X -> Y lies in
/// Z[Hom(tag_i, tag_j)] (target tag to source tag); for right variance in
/// Z[Hom(tag_j, tag_i)].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BTreeMap<Mor, BigInt>>,
}

impl HomMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        HomMatrix { rows, cols, entries: vec![BTreeMap::new(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &BTreeMap<Mor, BigInt> {
        &self.entries[r * self.cols + c]
    }

    pub fn add_term(&mut self, r: usize, c: usize, m: Mor, coeff: BigInt) {
        let cell = &mut self.entries[r * self.cols + c];
        let v = cell.entry(m).or_insert_with(BigInt::zero);
        *v += coeff;
        if v.is_zero() {
            cell.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BTreeMap::is_empty)
    }

    pub fn transpose(&self) -> HomMatrix {
        let mut out = HomMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[c * self.rows + r] = self.entry(r, c).clone();
            }
        }
        out
    }

    pub fn scale(&self, k: i64) -> HomMatrix {
        let mut out = self.clone();
        for cell in &mut out.entries {
            cell.retain(|_, v| {
                *v *= k;
                !v.is_zero()
            });
        }
        out
    }

    /// Formal composite `self ∘ first` of maps of direct sums of
    /// projectives, using the category's composition table.
    fn compose(&self, first: &HomMatrix, cat: &FiniteCategory, variance: Variance) -> HomMatrix {
        assert_eq!(self.cols, first.rows);
        let mut out = HomMatrix::zeros(self.rows, first.cols);
        for l in 0..self.rows {
            for j in 0..first.cols {
                for k in 0..self.cols {
                    for (&w, cw) in self.entry(l, k) {
                        for (&u, cu) in first.entry(k, j) {
                            let m = match variance {
                                // N_u then N_w is N_{u∘w}.
                                Variance::Left => cat.composite(u, w),
                                Variance::Right => cat.composite(w, u),
                            };
                            out.add_term(l, j, m, cw * cu);
                        }
                    }
                }
            }
        }
        out
    }
}

/// A bounded complex of finite direct sums of standard projectives.
/// Differentials are keyed by source degree as in `IntegerChainComplex`;
/// `d∘d = 0` is verified formally at construction.
#[derive(Clone, Debug)]
pub struct ProjectiveComplex {
    cat: Arc<FiniteCategory>,
    variance: Variance,
    grading: Grading,
    terms: BTreeMap<i64, Vec<Summand>>,
    diffs: BTreeMap<i64, HomMatrix>,
}

impl ProjectiveComplex {
    pub fn new(
        cat: Arc<FiniteCategory>,
        variance: Variance,
        grading: Grading,
        terms: BTreeMap<i64, Vec<Summand>>,
        diffs: BTreeMap<i64, HomMatrix>,
    ) -> Self {
        let x = ProjectiveComplex { cat, variance, grading, terms, diffs };
        x.check_entries();
        x.check_dd_zero();
        x
    }

    fn target_degree(&self, source: i64) -> i64 {
        match self.grading {
            Grading::Chain => source - 1,
            Grading::Cochain => source + 1,
        }
    }

    fn check_entries(&self) {
        for (&deg, m) in &self.diffs {
            let src = self.summands(deg);
            let tgt = self.summands(self.target_degree(deg));
            assert_eq!(m.rows(), tgt.len(), "differential rows at degree {deg}");
            assert_eq!(m.cols(), src.len(), "differential cols at degree {deg}");
            for (i, t) in tgt.iter().enumerate() {
                for (j, s) in src.iter().enumerate() {
                    for &mor in m.entry(i, j).keys() {
                        let data = self.cat.morphism(mor);
                        let (want_src, want_dst) = match self.variance {
                            Variance::Left => (t.object, s.object),
                            Variance::Right => (s.object, t.object),
                        };
                        assert!(
                            data.src == want_src && data.dst == want_dst,
                            "entry morphism `{}` does not match summand tags",
                            data.id
                        );
                    }
                }
            }
        }
    }

    fn check_dd_zero(&self) {
        for &deg in self.terms.keys() {
            let mid = self.target_degree(deg);
            if self.rank(mid) == 0 || self.rank(self.target_degree(mid)) == 0 {
                continue;
            }
            let second = self.diff(mid);
            let first = self.diff(deg);
            assert!(
                second.compose(&first, &self.cat, self.variance).is_zero(),
                "projective complex differentials do not square to zero at degree {deg}"
            );
        }
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.cat
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn lo(&self) -> i64 {
        self.terms.keys().next().copied().unwrap_or(0)
    }

    pub fn hi(&self) -> i64 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    pub fn rank(&self, degree: i64) -> usize {
        self.terms.get(&degree).map_or(0, Vec::len)
    }

    pub fn summands(&self, degree: i64) -> &[Summand] {
        self.terms.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn diff(&self, degree: i64) -> HomMatrix {
        match self.diffs.get(&degree) {
            Some(m) => m.clone(),
            None => HomMatrix::zeros(self.rank(self.target_degree(degree)), self.rank(degree)),
        }
    }

    /// The hom-set underlying one summand evaluated at `y`.
    fn eval_basis(&self, tag: Obj, y: Obj) -> &[Mor] {
        match self.variance {
            Variance::Left => self.cat.hom_basis(tag, y),
            Variance::Right => self.cat.hom_basis(y, tag),
        }
    }

    /// Evaluate the complex of projectives at an object, yielding a
    /// complex of free abelian groups with basis Hom(tag, y) (left) or
    /// Hom(y, tag) (right) per summand.
    pub fn evaluate(&self, y: Obj) -> IntegerChainComplex {
        let mut terms: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        let mut offsets: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (&deg, summands) in &self.terms {
            let mut labels = Vec::new();
            let mut offs = Vec::new();
            for s in summands {
                offs.push(labels.len());
                for &m in self.eval_basis(s.object, y) {
                    labels.push(format!("{}*{}", s.label, self.cat.morphism(m).id));
                }
            }
            offsets.insert(deg, offs);
            terms.insert(deg, labels);
        }
        let rank_at = |deg: i64| terms.get(&deg).map_or(0, Vec::len);
        let mut diffs = BTreeMap::new();
        for (&deg, hm) in &self.diffs {
            let tdeg = self.target_degree(deg);
            let mut mat = IntMatrix::zeros(rank_at(tdeg), rank_at(deg));
            let src_summands = self.summands(deg);
            let tgt_summands = self.summands(tdeg);
            let src_offs = &offsets[&deg];
            let empty = Vec::new();
            let tgt_offs = offsets.get(&tdeg).unwrap_or(&empty);
            for (i, t) in tgt_summands.iter().enumerate() {
                let tgt_basis = self.eval_basis(t.object, y);
                for (j, s) in src_summands.iter().enumerate() {
                    let src_basis = self.eval_basis(s.object, y);
                    for (&u, coeff) in hm.entry(i, j) {
                        for (col, &f) in src_basis.iter().enumerate() {
                            let image = match self.variance {
                                Variance::Left => self.cat.composite(f, u),
                                Variance::Right => self.cat.composite(u, f),
                            };
                            let row = tgt_basis
                                .iter()
                                .position(|&m| m == image)
                                .expect("hom basis closed under composition");
                            mat.add_assign_at(tgt_offs[i] + row, src_offs[j] + col, coeff);
                        }
                    }
                }
            }
            diffs.insert(deg, mat);
        }
        IntegerChainComplex::new(self.grading, terms, diffs)
            .expect("evaluation of a projective complex is a complex")
    }

    /// Basis offsets of each summand in the evaluation at `y`.
    pub fn evaluation_offsets(&self, degree: i64, y: Obj) -> Vec<usize> {
        let mut offs = Vec::new();
        let mut acc = 0;
        for s in self.summands(degree) {
            offs.push(acc);
            acc += self.eval_basis(s.object, y).len();
        }
        offs
    }

    /// Keep only the summands selected by `keep`; entries to or from
    /// dropped summands vanish. This is the quotient complex B/B' when the
    /// dropped summands span a subcomplex, as happens for the chains lying
    /// in a full subcategory.
    pub fn quotient_by_summands(&self, keep: impl Fn(i64, &Summand) -> bool) -> ProjectiveComplex {
        let mut kept: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        let mut terms: BTreeMap<i64, Vec<Summand>> = BTreeMap::new();
        for (&deg, summands) in &self.terms {
            let idx: Vec<usize> =
                (0..summands.len()).filter(|&i| keep(deg, &summands[i])).collect();
            terms.insert(deg, idx.iter().map(|&i| summands[i].clone()).collect());
            kept.insert(deg, idx);
        }
        let mut diffs = BTreeMap::new();
        for (&deg, hm) in &self.diffs {
            let tdeg = self.target_degree(deg);
            let empty = Vec::new();
            let src_idx = kept.get(&deg).unwrap_or(&empty);
            let tgt_idx = kept.get(&tdeg).unwrap_or(&empty);
            let mut mat = HomMatrix::zeros(tgt_idx.len(), src_idx.len());
            for (new_i, &i) in tgt_idx.iter().enumerate() {
                for (new_j, &j) in src_idx.iter().enumerate() {
                    for (&m, c) in hm.entry(i, j) {
                        mat.add_term(new_i, new_j, m, c.clone());
                    }
                }
            }
            diffs.insert(deg, mat);
        }
        ProjectiveComplex::new(self.cat.clone(), self.variance, self.grading, terms, diffs)
    }
}

/// The duality functor on a bounded chain complex of left projectives of
/// finite type: each summand P_a becomes the right projective P^a, the
/// degree-n term of the result is the dual of the degree-n term, and the
/// cochain differential is `(-1)^(n+1)` times the dual of the incoming
/// boundary. Entries keep their morphism combinations, reinterpreted as
/// postcomposition maps.
pub fn dualize_projective_complex(r: &ProjectiveComplex) -> Result<ProjectiveComplex, CmodError> {
    if r.variance() != Variance::Left || r.grading() != Grading::Chain {
        return Err(CmodError::VarianceMismatch);
    }
    let terms = r.terms.clone();
    let mut diffs = BTreeMap::new();
    for &deg in r.terms.keys() {
        let incoming = deg + 1;
        if r.rank(incoming) == 0 {
            continue;
        }
        let sign = if (deg + 1).rem_euclid(2) == 0 { 1 } else { -1 };
        diffs.insert(deg, r.diff(incoming).transpose().scale(sign));
    }
    Ok(ProjectiveComplex::new(
        r.cat.clone(),
        Variance::Right,
        Grading::Cochain,
        terms,
        diffs,
    ))
}
