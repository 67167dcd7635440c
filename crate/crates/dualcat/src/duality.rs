//! The certification engine: decide whether a finite loop-free category
//! (or a finite simplicial complex through its face poset) is a duality
//! category, compute the dualizing module, verify the duality isomorphism
//! at the level of groups, and produce orientability and Poincaré reports.

use crate::category::FiniteCategory;
use crate::cmod::{
    dual_evaluations, ext, module_ext_evaluations, tor, CModule, CModuleJson, DualEvaluations,
    GradedGroups, Variance,
};
use crate::simplicial::{face_poset, link, reduced_cohomology, SimplicialComplex};
use crate::zlin::FgAbelianGroup;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error("certificate verdict is not `certified`")]
    NotCertified,
    #[error("dualizing module is not pointwise free; comparison skipped")]
    DualizingNotPointwiseFree,
    #[error("value at object `{0}` does not have rank one")]
    RankNotOne(String),
    #[error("structure map `{0}` is not a unit")]
    MapNotUnit(String),
    #[error("dualizing value at `{0}` is not infinite cyclic; not manifold-like")]
    NotManifoldLike(String),
    #[error("complex is not orientable")]
    NotOrientable,
    #[error(transparent)]
    Cmod(#[from] crate::cmod::CmodError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Certified,
    Refuted,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// One object carries nonzero groups in two different degrees.
    MultipleDegrees { object: String, degrees: Vec<i64> },
    /// Two objects force different concentration degrees.
    ConflictingDegrees { object_a: String, degree_a: i64, object_b: String, degree_b: i64 },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// The outcome of certification: verdict, duality degree, dualizing
/// module (when pointwise free), per-object Ext tables, refutation
/// witnesses, and the ledger of cross-checks that ran.
#[derive(Clone, Debug)]
pub struct DualityCertificate {
    pub verdict: Verdict,
    pub degree: Option<i64>,
    /// Ext^i(F, P_x) per object identifier.
    pub ext_table: BTreeMap<String, GradedGroups>,
    /// Values of the dualizing module at the duality degree.
    pub dualizing_values: BTreeMap<String, FgAbelianGroup>,
    /// The dualizing module with structure maps; absent when some value
    /// has torsion.
    pub dualizing: Option<CModule>,
    pub pointwise_free: bool,
    pub witnesses: Vec<Witness>,
    pub checks: BTreeMap<String, CheckStatus>,
    /// Length of the Bar resolution: an upper bound for the projective
    /// dimension, hence for the duality degree.
    pub bar_length: i64,
    /// How the duality isomorphism is witnessed: both sides derive from
    /// one perfect complex, and group-level agreement is checked over a
    /// test family; naturality itself is not machine-checked.
    pub naturality: Option<String>,
}

impl DualityCertificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            verdict: self.verdict,
            degree: self.degree,
            ext_table: self
                .ext_table
                .iter()
                .map(|(obj, col)| {
                    (
                        obj.clone(),
                        col.iter()
                            .map(|(d, g)| {
                                (d.to_string(), (g.rank(), g.torsion().to_vec()))
                            })
                            .collect(),
                    )
                })
                .collect(),
            dualizing: self.dualizing.as_ref().map(CModule::to_json),
            witnesses: self.witnesses.clone(),
            checks: self.checks.clone(),
            pointwise_free: self.pointwise_free,
            bar_length: self.bar_length,
            naturality: self.naturality.clone(),
        }
    }
}

/// JSON interchange form of a certificate.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateJson {
    pub verdict: Verdict,
    pub degree: Option<i64>,
    pub ext_table: BTreeMap<String, BTreeMap<String, (usize, Vec<BigInt>)>>,
    pub dualizing: Option<CModuleJson>,
    pub witnesses: Vec<Witness>,
    pub checks: BTreeMap<String, CheckStatus>,
    pub pointwise_free: bool,
    pub bar_length: i64,
    pub naturality: Option<String>,
}

/// Decide the verdict from per-object concentration degrees. An object
/// with an all-zero column imposes no constraint; all columns zero means
/// the degenerate verdict.
fn verdict_from_columns(columns: &[(String, Vec<i64>)]) -> (Verdict, Option<i64>, Vec<Witness>) {
    let mut forced: Option<(String, i64)> = None;
    for (obj, degrees) in columns {
        if degrees.len() >= 2 {
            return (
                Verdict::Refuted,
                None,
                vec![Witness::MultipleDegrees { object: obj.clone(), degrees: degrees.clone() }],
            );
        }
        if let Some(&d) = degrees.first() {
            match &forced {
                None => forced = Some((obj.clone(), d)),
                Some((first_obj, first_d)) if *first_d != d => {
                    return (
                        Verdict::Refuted,
                        None,
                        vec![Witness::ConflictingDegrees {
                            object_a: first_obj.clone(),
                            degree_a: *first_d,
                            object_b: obj.clone(),
                            degree_b: d,
                        }],
                    );
                }
                _ => {}
            }
        }
    }
    match forced {
        Some((_, n)) => (Verdict::Certified, Some(n), Vec::new()),
        None => (Verdict::Degenerate, None, Vec::new()),
    }
}

fn certificate_from_evaluations(
    cat: &Arc<FiniteCategory>,
    evals: &DualEvaluations,
) -> DualityCertificate {
    let values = evals.values();
    let columns: Vec<(String, Vec<i64>)> = cat
        .objects()
        .map(|x| {
            let degrees: Vec<i64> = values
                .iter()
                .filter(|(_, v)| !v[x.0].is_trivial())
                .map(|(&d, _)| d)
                .collect();
            (cat.object_id(x).to_string(), degrees)
        })
        .collect();
    let (verdict, degree, witnesses) = verdict_from_columns(&columns);
    let mut checks = BTreeMap::new();
    let mut dualizing_values = BTreeMap::new();
    let mut dualizing = None;
    let mut pointwise_free = true;
    if let Some(n) = degree {
        checks.insert(
            "degree_within_bar_length".to_string(),
            if n <= evals.length() { CheckStatus::Pass } else { CheckStatus::Fail },
        );
        for x in cat.objects() {
            dualizing_values.insert(cat.object_id(x).to_string(), values[&n][x.0].clone());
        }
        pointwise_free = values[&n].iter().all(FgAbelianGroup::is_torsion_free);
        if pointwise_free {
            // Structure maps are only needed at the duality degree.
            let data = evals.dual_data_at(&[n]);
            dualizing = Some(
                data.as_right_module(n).expect("pointwise-free data packages as a module"),
            );
            checks.insert("structure_maps_functorial".to_string(), CheckStatus::Pass);
        } else {
            checks.insert("structure_maps_functorial".to_string(), CheckStatus::Skipped);
        }
    }
    let mut ext_table: BTreeMap<String, GradedGroups> = BTreeMap::new();
    for x in cat.objects() {
        let mut col = GradedGroups::new();
        for (&d, v) in &values {
            col.set(d, v[x.0].clone());
        }
        ext_table.insert(cat.object_id(x).to_string(), col);
    }
    DualityCertificate {
        verdict,
        degree,
        ext_table,
        dualizing_values,
        dualizing,
        pointwise_free,
        witnesses,
        checks,
        bar_length: evals.length(),
        naturality: degree.map(|_| "structural".to_string()),
    }
}

/// Certify the constant module over a finite loop-free category: compute
/// Ext^i(const, P_x) for every object through the dualized Bar resolution
/// and check concentration in a single degree.
pub fn certify_generic(cat: &Arc<FiniteCategory>) -> DualityCertificate {
    certificate_from_evaluations(cat, &dual_evaluations(cat))
}

/// Certify an arbitrary pointwise-free left module by the same criterion,
/// columns computed from Hom(Bar(F), P_x).
pub fn certify_module(cat: &Arc<FiniteCategory>, f: &CModule) -> DualityCertificate {
    certificate_from_evaluations(cat, &module_ext_evaluations(cat, f))
}

/// Certify a finite simplicial complex through the local criterion: for
/// every face, the reduced cohomology of its link must be concentrated in
/// degree n - dim(x) - 1 for one shared n. Dualizing values come from the
/// links; structure maps (and a cross-check of the values) come from the
/// generic derived-dual computation over the face poset.
pub fn certify_simplicial(complex: &SimplicialComplex) -> DualityCertificate {
    let mut columns = Vec::new();
    let mut table: BTreeMap<String, GradedGroups> = BTreeMap::new();
    for f in complex.faces() {
        let l = link(complex, f).expect("face of its own complex");
        let reduced = reduced_cohomology(&l);
        let shift = f.len() as i64; // dim + 1
        let mut local = GradedGroups::new();
        for (d, g) in reduced.iter() {
            local.set(d + shift, g.clone());
        }
        let id = complex.face_id(f);
        columns.push((id.clone(), local.nonzero_degrees()));
        table.insert(id, local);
    }
    let (verdict, degree, witnesses) = verdict_from_columns(&columns);
    let mut checks = BTreeMap::new();
    let mut dualizing_values = BTreeMap::new();
    let mut dualizing = None;
    let mut pointwise_free = true;
    let bar_length = complex.dimension().max(0);
    if let Some(n) = degree {
        for (obj, col) in &table {
            dualizing_values.insert(obj.clone(), col.at(n));
        }
        pointwise_free = dualizing_values.values().all(FgAbelianGroup::is_torsion_free);
        // Structure maps always come from the generic computation; the
        // link-derived values are cross-asserted against it.
        let poset = Arc::new(face_poset(complex));
        let evals = dual_evaluations(&poset);
        let data = evals.dual_data_at(&[n]);
        let values_agree = poset.objects().all(|x| {
            data.value(n, x) == dualizing_values[&poset.object_id(x).to_string()]
        });
        checks.insert(
            "link_values_match_derived_dual".to_string(),
            if values_agree { CheckStatus::Pass } else { CheckStatus::Fail },
        );
        if pointwise_free {
            dualizing =
                Some(data.as_right_module(n).expect("pointwise-free values form a module"));
        }
        checks.insert(
            "degree_within_bar_length".to_string(),
            if n <= bar_length { CheckStatus::Pass } else { CheckStatus::Fail },
        );
    }
    DualityCertificate {
        verdict,
        degree,
        ext_table: table,
        dualizing_values,
        dualizing,
        pointwise_free,
        witnesses,
        checks,
        bar_length,
        naturality: degree.map(|_| "structural".to_string()),
    }
}

/// One row of the duality comparison: degree, Ext side, Tor side, match.
#[derive(Clone, Debug)]
pub struct ComparisonRow {
    pub degree: i64,
    pub ext_side: FgAbelianGroup,
    pub tor_side: FgAbelianGroup,
    pub matched: bool,
}

#[derive(Clone, Debug)]
pub struct ModuleComparison {
    pub module: String,
    pub rows: Vec<ComparisonRow>,
}

impl ModuleComparison {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matched)
    }
}

/// The deterministic test family: the constant module, every standard
/// projective, and their direct sums with the constant module.
pub fn standard_test_modules(cat: &Arc<FiniteCategory>) -> Vec<(String, CModule)> {
    let constant = CModule::constant(cat.clone(), Variance::Left);
    let mut out = vec![("Z".to_string(), constant.clone())];
    for x in cat.objects() {
        let p = CModule::standard_projective(cat.clone(), x, Variance::Left);
        out.push((format!("P_{}", cat.object_id(x)), p.clone()));
        out.push((format!("P_{}+Z", cat.object_id(x)), p.direct_sum(&constant)));
    }
    out
}

/// Compare Ext^i(const, G) with Tor_{n-i}(D, G) as isomorphism classes in
/// every degree, for each supplied test module.
pub fn verify_duality_isomorphism(
    cat: &Arc<FiniteCategory>,
    certificate: &DualityCertificate,
    test_modules: &[(String, CModule)],
) -> Result<Vec<ModuleComparison>, DualityError> {
    if certificate.verdict != Verdict::Certified {
        return Err(DualityError::NotCertified);
    }
    let d = certificate.dualizing.as_ref().ok_or(DualityError::DualizingNotPointwiseFree)?;
    let n = certificate.degree.expect("certified certificate has a degree");
    let constant = CModule::constant(cat.clone(), Variance::Left);
    let mut out = Vec::new();
    for (label, g) in test_modules {
        let ext_side = ext(cat, &constant, g)?;
        let tor_side = tor(cat, d, g)?;
        let lo = (n - certificate.bar_length).min(0);
        let hi = certificate.bar_length.max(n);
        let mut rows = Vec::new();
        for i in lo..=hi {
            let e = ext_side.at(i);
            let t = tor_side.at(n - i);
            let matched = e == t;
            if !(e.is_trivial() && t.is_trivial()) || !matched {
                rows.push(ComparisonRow { degree: i, ext_side: e, tor_side: t, matched });
            }
        }
        out.push(ModuleComparison { module: label.clone(), rows });
    }
    Ok(out)
}

/// Result of the constant-module decision for a rank-one module: either a
/// consistent choice of generator signs or an inconsistent cycle.
#[derive(Clone, Debug)]
pub enum Constancy {
    Constant { signs: BTreeMap<String, i8> },
    Inconsistent { cycle: Vec<String> },
}

impl Constancy {
    pub fn is_constant(&self) -> bool {
        matches!(self, Constancy::Constant { .. })
    }
}

/// Decide whether a module with rank-one values and unit structure maps
/// is isomorphic to the constant module: search for generator signs
/// making every map +1 (a 2-coloring of the morphism graph). Returns the
/// sign assignment or an inconsistent cycle of morphism identifiers.
pub fn is_constant_module(m: &CModule) -> Result<Constancy, DualityError> {
    let cat = m.category().clone();
    for x in cat.objects() {
        if m.rank_at(x) != 1 {
            return Err(DualityError::RankNotOne(cat.object_id(x).to_string()));
        }
    }
    let mut unit_of = BTreeMap::new();
    for f in cat.morphisms() {
        let v = m.map(f).get(0, 0).clone();
        if v == BigInt::from(1) {
            unit_of.insert(f, 1i8);
        } else if v == BigInt::from(-1) {
            unit_of.insert(f, -1i8);
        } else {
            return Err(DualityError::MapNotUnit(cat.morphism(f).id.clone()));
        }
    }
    // BFS with parity; parent pointers reconstruct an inconsistent cycle.
    let count = cat.object_count();
    let mut sign: Vec<Option<i8>> = vec![None; count];
    let mut parent: Vec<Option<crate::category::Mor>> = vec![None; count];
    let edges: Vec<crate::category::Mor> = cat
        .morphisms()
        .filter(|&f| !cat.morphism(f).is_identity)
        .collect();
    for root in cat.objects() {
        if sign[root.0].is_some() {
            continue;
        }
        sign[root.0] = Some(1);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &f in &edges {
                let data = cat.morphism(f);
                let (a, b) = (data.src, data.dst);
                if a != u && b != u {
                    continue;
                }
                let (known, other) = if a == u { (a, b) } else { (b, a) };
                let eps = unit_of[&f];
                let want = sign[known.0].unwrap() * eps;
                match sign[other.0] {
                    None => {
                        sign[other.0] = Some(want);
                        parent[other.0] = Some(f);
                        queue.push_back(other);
                    }
                    Some(s) if s != want => {
                        // Conflict: the closing edge plus the two tree
                        // paths, trimmed at the lowest common ancestor,
                        // form a cycle with sign product -1.
                        let ancestors = |mut v: crate::category::Obj| {
                            let mut path = vec![(v, None)];
                            while let Some(p) = parent[v.0] {
                                let pd = cat.morphism(p);
                                v = if pd.src == v { pd.dst } else { pd.src };
                                path.push((v, Some(p)));
                            }
                            path
                        };
                        let up = ancestors(known);
                        let vp = ancestors(other);
                        let in_up: BTreeMap<crate::category::Obj, usize> =
                            up.iter().enumerate().map(|(i, &(o, _))| (o, i)).collect();
                        let (lca_v, lca_u) = vp
                            .iter()
                            .enumerate()
                            .find_map(|(i, &(o, _))| in_up.get(&o).map(|&j| (i, j)))
                            .expect("tree paths meet at the root");
                        let mut cycle = vec![cat.morphism(f).id.clone()];
                        for &(_, e) in up.iter().take(lca_u + 1).chain(vp.iter().take(lca_v + 1))
                        {
                            if let Some(p) = e {
                                cycle.push(cat.morphism(p).id.clone());
                            }
                        }
                        return Ok(Constancy::Inconsistent { cycle });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let signs = cat
        .objects()
        .map(|o| (cat.object_id(o).to_string(), sign[o.0].unwrap_or(1)))
        .collect();
    Ok(Constancy::Constant { signs })
}

#[derive(Clone, Debug)]
pub struct OrientabilityReport {
    pub top_homology: FgAbelianGroup,
    pub orientable: bool,
    /// Whether the dualizing module admits a consistent sign assignment.
    pub constant_dualizing: Constancy,
    /// The two criteria must agree; recorded for the cross-check ledger.
    pub agreement: bool,
}

/// Orientability of a certified manifold-like complex: top homology over
/// the face poset is Z iff the dualizing module is constant.
pub fn orientability(
    complex: &SimplicialComplex,
    certificate: &DualityCertificate,
) -> Result<OrientabilityReport, DualityError> {
    if certificate.verdict != Verdict::Certified {
        return Err(DualityError::NotCertified);
    }
    for (obj, g) in &certificate.dualizing_values {
        if !g.is_free_of_rank_one() {
            return Err(DualityError::NotManifoldLike(obj.clone()));
        }
    }
    let n = certificate.degree.expect("certified");
    let d = certificate.dualizing.as_ref().ok_or(DualityError::DualizingNotPointwiseFree)?;
    let poset = Arc::new(face_poset(complex));
    let left = CModule::constant(poset.clone(), Variance::Left);
    let right = CModule::constant(poset.clone(), Variance::Right);
    let top = tor(&poset, &right, &left)?.at(n);
    let orientable = top.is_free_of_rank_one();
    let constant_dualizing = is_constant_module(d)?;
    let agreement = orientable == constant_dualizing.is_constant();
    Ok(OrientabilityReport { top_homology: top, orientable, constant_dualizing, agreement })
}

#[derive(Clone, Debug)]
pub struct PoincareRow {
    pub degree: i64,
    pub homology: FgAbelianGroup,
    pub cohomology_complement: FgAbelianGroup,
    pub matched: bool,
}

#[derive(Clone, Debug)]
pub struct PoincareReport {
    pub dimension: i64,
    pub rows: Vec<PoincareRow>,
}

impl PoincareReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matched)
    }
}

/// Poincaré table of a certified orientable complex: H_i against H^{n-i}
/// over the face poset, degree by degree.
pub fn poincare_report(
    complex: &SimplicialComplex,
    certificate: &DualityCertificate,
) -> Result<PoincareReport, DualityError> {
    let orient = orientability(complex, certificate)?;
    if !orient.orientable {
        return Err(DualityError::NotOrientable);
    }
    let n = certificate.degree.expect("certified");
    let poset = Arc::new(face_poset(complex));
    let left = CModule::constant(poset.clone(), Variance::Left);
    let right = CModule::constant(poset.clone(), Variance::Right);
    let homology = tor(&poset, &right, &left)?;
    let cohomology = ext(&poset, &left, &left)?;
    let rows = (0..=n)
        .map(|i| {
            let h = homology.at(i);
            let c = cohomology.at(n - i);
            let matched = h == c;
            PoincareRow { degree: i, homology: h, cohomology_complement: c, matched }
        })
        .collect();
    Ok(PoincareReport { dimension: n, rows })
}

/// Round-trip check for a certified category with pointwise-free
/// dualizing module D: D must itself certify over the opposite category
/// with the same degree, and its dualizing module must be pointwise Z.
/// The two assertions are recorded in the returned certificate's ledger.
pub fn certify_dualizing_module(
    cat: &Arc<FiniteCategory>,
    certificate: &DualityCertificate,
) -> Result<DualityCertificate, DualityError> {
    if certificate.verdict != Verdict::Certified {
        return Err(DualityError::NotCertified);
    }
    let d = certificate.dualizing.as_ref().ok_or(DualityError::DualizingNotPointwiseFree)?;
    let op = Arc::new(cat.opposite());
    let d_left = d.over_opposite(op.clone());
    let mut op_cert = certify_module(&op, &d_left);
    let degree_ok =
        op_cert.verdict == Verdict::Certified && op_cert.degree == certificate.degree;
    op_cert.checks.insert(
        "round_trip_degree".to_string(),
        if degree_ok { CheckStatus::Pass } else { CheckStatus::Fail },
    );
    let constant_ok = op_cert.verdict == Verdict::Certified
        && op_cert.dualizing_values.values().all(FgAbelianGroup::is_free_of_rank_one);
    op_cert.checks.insert(
        "round_trip_constant_dualizing".to_string(),
        if constant_ok { CheckStatus::Pass } else { CheckStatus::Fail },
    );
    Ok(op_cert)
}
