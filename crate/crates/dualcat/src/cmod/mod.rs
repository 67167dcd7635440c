//! C-modules (functors from a finite loop-free category to pointwise-free
//! finitely generated abelian groups), Bar resolutions, Ext/Tor engines,
//! and the duality functor on complexes of projectives.

mod bar;
mod homalg;
mod projective;

pub use bar::{bar_resolution, bar_resolution_of_module, BarResolution};
pub use homalg::{
    derived_dual, dual_evaluations, ext, ext_table_with_structure, hom_complex,
    module_ext_evaluations, relative_ext, tensor_complex, tor, DualData, DualEvaluations,
};
pub use projective::{dualize_projective_complex, HomMatrix, ProjectiveComplex, Summand};

use crate::category::{FiniteCategory, Mor, Obj};
use crate::zlin::{FgAbelianGroup, IntMatrix};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CmodError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("module is not a functor: M(g∘f) != M(g)M(f) at ({g}, {f})")]
    NotFunctorial { g: String, f: String },
    #[error("map for morphism `{mor}` has shape {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    MapShape { mor: String, got_rows: usize, got_cols: usize, want_rows: usize, want_cols: usize },
    #[error("variance mismatch between resolution and coefficients")]
    VarianceMismatch,
    #[error("value at object `{0}` has torsion; operation requires pointwise-free values")]
    NotPointwiseFree(String),
}

/// Covariant (left) or contravariant (right) functor to abelian groups.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Left,
    Right,
}

impl Variance {
    pub fn flipped(self) -> Variance {
        match self {
            Variance::Left => Variance::Right,
            Variance::Right => Variance::Left,
        }
    }
}

/// A functor from the category to pointwise-free finitely generated
/// abelian groups: a rank per object and a matrix per morphism.
/// Functoriality is checked exhaustively at construction.
#[derive(Clone)]
pub struct CModule {
    cat: Arc<FiniteCategory>,
    variance: Variance,
    ranks: Vec<usize>,
    labels: Vec<Vec<String>>,
    maps: Vec<IntMatrix>,
}

impl CModule {
    /// `maps` must contain one matrix per non-identity morphism; identity
    /// maps are filled in automatically. For left variance the map of
    /// f: x -> y goes M(x) -> M(y); for right variance M(y) -> M(x).
    pub fn new(
        cat: Arc<FiniteCategory>,
        variance: Variance,
        ranks: Vec<usize>,
        labels: Option<Vec<Vec<String>>>,
        mut maps: BTreeMap<Mor, IntMatrix>,
    ) -> Result<Self, CmodError> {
        assert_eq!(ranks.len(), cat.object_count());
        let labels = labels.unwrap_or_else(|| {
            ranks.iter().map(|&r| (0..r).map(|i| format!("e{i}")).collect()).collect()
        });
        let mut all_maps = Vec::with_capacity(cat.morphism_count());
        for m in cat.morphisms() {
            let data = cat.morphism(m);
            let (from, to) = match variance {
                Variance::Left => (data.src, data.dst),
                Variance::Right => (data.dst, data.src),
            };
            let mat = if data.is_identity {
                IntMatrix::identity(ranks[data.src.0])
            } else {
                maps.remove(&m).ok_or_else(|| CmodError::UnknownMorphism(data.id.clone()))?
            };
            if mat.rows() != ranks[to.0] || mat.cols() != ranks[from.0] {
                return Err(CmodError::MapShape {
                    mor: data.id.clone(),
                    got_rows: mat.rows(),
                    got_cols: mat.cols(),
                    want_rows: ranks[to.0],
                    want_cols: ranks[from.0],
                });
            }
            all_maps.push(mat);
        }
        let module = CModule { cat, variance, ranks, labels, maps: all_maps };
        module.check_functorial()?;
        Ok(module)
    }

    fn check_functorial(&self) -> Result<(), CmodError> {
        let cat = &self.cat;
        for g in cat.morphisms() {
            for f in cat.morphisms() {
                if cat.morphism(f).dst != cat.morphism(g).src {
                    continue;
                }
                let gf = cat.composite(g, f);
                let expected = match self.variance {
                    Variance::Left => self.maps[g.0].mul(&self.maps[f.0]),
                    Variance::Right => self.maps[f.0].mul(&self.maps[g.0]),
                };
                if self.maps[gf.0] != expected {
                    return Err(CmodError::NotFunctorial {
                        g: cat.morphism(g).id.clone(),
                        f: cat.morphism(f).id.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// The constant functor: Z at every object, identities everywhere.
    pub fn constant(cat: Arc<FiniteCategory>, variance: Variance) -> CModule {
        let ranks = vec![1; cat.object_count()];
        let maps = cat
            .morphisms()
            .filter(|&m| !cat.morphism(m).is_identity)
            .map(|m| (m, IntMatrix::identity(1)))
            .collect();
        CModule::new(cat, variance, ranks, None, maps).expect("constant module is functorial")
    }

    /// The standard projective: Z[Hom(a, -)] for left variance with the
    /// postcomposition action, Z[Hom(-, a)] for right variance with the
    /// precomposition action. Basis labels are morphism identifiers.
    pub fn standard_projective(cat: Arc<FiniteCategory>, a: Obj, variance: Variance) -> CModule {
        let hom_of = |y: Obj| match variance {
            Variance::Left => cat.hom_basis(a, y),
            Variance::Right => cat.hom_basis(y, a),
        };
        let ranks: Vec<usize> = cat.objects().map(|y| hom_of(y).len()).collect();
        let labels: Vec<Vec<String>> = cat
            .objects()
            .map(|y| hom_of(y).iter().map(|&h| cat.morphism(h).id.clone()).collect())
            .collect();
        let mut maps = BTreeMap::new();
        for f in cat.morphisms() {
            if cat.morphism(f).is_identity {
                continue;
            }
            let (src, dst) = (cat.morphism(f).src, cat.morphism(f).dst);
            let (from, to) = match variance {
                Variance::Left => (src, dst),
                Variance::Right => (dst, src),
            };
            let from_basis = hom_of(from);
            let to_basis = hom_of(to);
            let mut mat = IntMatrix::zeros(to_basis.len(), from_basis.len());
            for (col, &h) in from_basis.iter().enumerate() {
                let image = match variance {
                    // h: a -> src, then f: post-compose.
                    Variance::Left => cat.composite(f, h),
                    // h: dst -> a; pre-compose with f.
                    Variance::Right => cat.composite(h, f),
                };
                let row = to_basis.iter().position(|&m| m == image).expect("hom basis closed");
                mat.set(row, col, BigInt::from(1));
            }
            maps.insert(f, mat);
        }
        CModule::new(cat.clone(), variance, ranks, Some(labels), maps)
            .expect("standard projective is functorial")
    }

    pub fn direct_sum(&self, other: &CModule) -> CModule {
        assert!(Arc::ptr_eq(&self.cat, &other.cat) || self.cat.as_ref() == other.cat.as_ref());
        assert_eq!(self.variance, other.variance);
        let ranks: Vec<usize> =
            self.ranks.iter().zip(&other.ranks).map(|(a, b)| a + b).collect();
        let labels: Vec<Vec<String>> = self
            .labels
            .iter()
            .zip(&other.labels)
            .map(|(a, b)| {
                a.iter()
                    .map(|l| format!("l.{l}"))
                    .chain(b.iter().map(|l| format!("r.{l}")))
                    .collect()
            })
            .collect();
        let maps: Vec<IntMatrix> = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| block_diag(a, b))
            .collect();
        CModule {
            cat: self.cat.clone(),
            variance: self.variance,
            ranks,
            labels,
            maps,
        }
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.cat
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn rank_at(&self, o: Obj) -> usize {
        self.ranks[o.0]
    }

    pub fn labels_at(&self, o: Obj) -> &[String] {
        &self.labels[o.0]
    }

    pub fn map(&self, m: Mor) -> &IntMatrix {
        &self.maps[m.0]
    }

    /// Reinterpret a right C-module as a left module over the opposite
    /// category (or vice versa). Matrices carry over unchanged.
    pub fn over_opposite(&self, op: Arc<FiniteCategory>) -> CModule {
        assert_eq!(op.as_ref(), &self.cat.opposite(), "expected the opposite category");
        CModule {
            cat: op,
            variance: self.variance.flipped(),
            ranks: self.ranks.clone(),
            labels: self.labels.clone(),
            maps: self.maps.clone(),
        }
    }

    pub fn to_json(&self) -> CModuleJson {
        let cat = &self.cat;
        CModuleJson {
            variance: self.variance,
            ranks: cat
                .objects()
                .map(|o| (cat.object_id(o).to_string(), self.ranks[o.0]))
                .collect(),
            maps: cat
                .morphisms()
                .filter(|&m| !cat.morphism(m).is_identity)
                .map(|m| {
                    let rows = (0..self.maps[m.0].rows())
                        .map(|r| {
                            (0..self.maps[m.0].cols())
                                .map(|c| self.maps[m.0].get(r, c).clone())
                                .collect()
                        })
                        .collect();
                    (cat.morphism(m).id.clone(), rows)
                })
                .collect(),
        }
    }

    pub fn from_json(cat: Arc<FiniteCategory>, json: &CModuleJson) -> Result<CModule, CmodError> {
        let mut ranks = vec![0usize; cat.object_count()];
        for (id, r) in &json.ranks {
            let o = cat.obj_by_id(id).ok_or_else(|| CmodError::UnknownObject(id.clone()))?;
            ranks[o.0] = *r;
        }
        let mut maps = BTreeMap::new();
        for (id, rows) in &json.maps {
            let m = cat.mor_by_id(id).ok_or_else(|| CmodError::UnknownMorphism(id.clone()))?;
            let r = rows.len();
            let c = rows.first().map_or(0, Vec::len);
            let mut mat = IntMatrix::zeros(r, c);
            for (i, row) in rows.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    mat.set(i, j, v.clone());
                }
            }
            maps.insert(m, mat);
        }
        CModule::new(cat, json.variance, ranks, None, maps)
    }
}

impl fmt::Debug for CModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ranks: Vec<String> = self
            .cat
            .objects()
            .map(|o| format!("{}:{}", self.cat.object_id(o), self.ranks[o.0]))
            .collect();
        write!(f, "CModule({:?}, ranks {{{}}})", self.variance, ranks.join(", "))
    }
}

/// JSON interchange form of a C-module: ranks per object and one integer
/// matrix per non-identity morphism.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CModuleJson {
    pub variance: Variance,
    pub ranks: BTreeMap<String, usize>,
    pub maps: BTreeMap<String, Vec<Vec<BigInt>>>,
}

fn block_diag(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            out.set(r, c, a.get(r, c).clone());
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            out.set(a.rows() + r, a.cols() + c, b.get(r, c).clone());
        }
    }
    out
}

/// Groups indexed by degree; only finitely many are nonzero and trivial
/// entries are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct GradedGroups {
    groups: BTreeMap<i64, FgAbelianGroup>,
}

impl GradedGroups {
    pub fn new() -> Self {
        GradedGroups::default()
    }

    pub fn set(&mut self, degree: i64, group: FgAbelianGroup) {
        if !group.is_trivial() {
            self.groups.insert(degree, group);
        }
    }

    pub fn at(&self, degree: i64) -> FgAbelianGroup {
        self.groups.get(&degree).cloned().unwrap_or_else(FgAbelianGroup::trivial)
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn nonzero_degrees(&self) -> Vec<i64> {
        self.groups.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &FgAbelianGroup)> {
        self.groups.iter().map(|(&d, g)| (d, g))
    }

    /// Alternating sum of ranks.
    pub fn euler_characteristic(&self) -> BigInt {
        let mut chi = BigInt::zero();
        for (d, g) in self.iter() {
            let term = BigInt::from(g.rank());
            if d.rem_euclid(2) == 0 {
                chi += term;
            } else {
                chi -= term;
            }
        }
        chi
    }
}

impl fmt::Display for GradedGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.iter().map(|(d, g)| format!("{d}: {g}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}
