//! Finite simplicial complexes: faces, links, joins, face posets,
//! barycentric subdivision, reduced and relative cohomology, and the
//! three equivalent local-cohomology computations.

use crate::category::{FiniteCategory, Obj, OrderKind, RawCategory, RawMorphism};
use crate::cmod::{ext, relative_ext, CModule, GradedGroups, Variance};
use crate::zlin::{Grading, IntMatrix, IntegerChainComplex};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("vertex `{0}` duplicated")]
    DuplicateVertex(String),
    #[error("vertex name `{0}` contains a reserved character (`+` or `<`)")]
    ReservedCharacter(String),
    #[error("facet references unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("facet has a repeated vertex: {0:?}")]
    RepeatedVertex(Vec<String>),
    #[error("empty facet")]
    EmptyFacet,
    #[error("facet with {0} vertices exceeds the supported size")]
    FacetTooLarge(usize),
    #[error("unknown face `{0}`")]
    UnknownFace(String),
    #[error("vertex sets are not disjoint: `{0}` appears in both join factors")]
    VertexClash(String),
    #[error("category is not a poset")]
    NotAPoset,
    #[error("object identifiers collide after renaming: `{0}`")]
    NameClash(String),
    #[error("`{0}` is not a full subcategory")]
    NotFullSubcategory(String),
    #[error(transparent)]
    Cmod(#[from] crate::cmod::CmodError),
}

/// A face: a sorted set of vertex indices into the owning complex.
pub type Face = Vec<usize>;

/// A finite simplicial complex over named vertices. The full face set is
/// materialized at construction (downward closure of the facets); every
/// listed vertex is a face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    faces: BTreeSet<Face>,
}

/// JSON interchange form: vertices plus maximal faces.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RawComplex {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

impl SimplicialComplex {
    pub fn new(vertices: Vec<String>, facets: Vec<Vec<String>>) -> Result<Self, SimplicialError> {
        let mut sorted = vertices.clone();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(SimplicialError::DuplicateVertex(w[0].clone()));
            }
        }
        for v in &sorted {
            if v.contains('+') || v.contains('<') {
                return Err(SimplicialError::ReservedCharacter(v.clone()));
            }
        }
        let index: BTreeMap<&str, usize> =
            sorted.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut faces: BTreeSet<Face> = BTreeSet::new();
        for v in 0..sorted.len() {
            faces.insert(vec![v]);
        }
        for facet in &facets {
            if facet.is_empty() {
                return Err(SimplicialError::EmptyFacet);
            }
            let mut f: Face = Vec::with_capacity(facet.len());
            for v in facet {
                let i = *index
                    .get(v.as_str())
                    .ok_or_else(|| SimplicialError::UnknownVertex(v.clone()))?;
                f.push(i);
            }
            f.sort_unstable();
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(SimplicialError::RepeatedVertex(facet.clone()));
            }
            if f.len() > 24 {
                return Err(SimplicialError::FacetTooLarge(f.len()));
            }
            // Downward closure.
            for mask in 1u64..(1 << f.len()) {
                let sub: Face = f
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &v)| v)
                    .collect();
                faces.insert(sub);
            }
        }
        Ok(SimplicialComplex { vertices: sorted, faces })
    }

    /// The void complex: no vertices, no faces.
    pub fn void() -> Self {
        SimplicialComplex { vertices: Vec::new(), faces: BTreeSet::new() }
    }

    pub fn from_raw(raw: &RawComplex) -> Result<Self, SimplicialError> {
        SimplicialComplex::new(raw.vertices.clone(), raw.facets.clone())
    }

    pub fn to_raw(&self) -> RawComplex {
        RawComplex {
            vertices: self.vertices.clone(),
            facets: self
                .maximal_faces()
                .into_iter()
                .map(|f| self.face_names(&f))
                .collect(),
        }
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn face_names(&self, f: &Face) -> Vec<String> {
        f.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    /// Deterministic face identifier: sorted vertex names joined by `+`.
    pub fn face_id(&self, f: &Face) -> String {
        f.iter().map(|&v| self.vertices[v].as_str()).collect::<Vec<_>>().join("+")
    }

    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, f: &Face) -> bool {
        self.faces.contains(f)
    }

    /// Resolve a face given by vertex names (order-insensitive).
    pub fn face_by_names(&self, names: &[String]) -> Result<Face, SimplicialError> {
        let mut f = Vec::with_capacity(names.len());
        for n in names {
            let i = self
                .vertices
                .iter()
                .position(|v| v == n)
                .ok_or_else(|| SimplicialError::UnknownFace(n.clone()))?;
            f.push(i);
        }
        f.sort_unstable();
        if self.faces.contains(&f) {
            Ok(f)
        } else {
            Err(SimplicialError::UnknownFace(names.join("+")))
        }
    }

    /// Dimension; -1 for the void complex.
    pub fn dimension(&self) -> i64 {
        self.faces.iter().map(|f| f.len() as i64 - 1).max().unwrap_or(-1)
    }

    pub fn faces_of_dim(&self, d: i64) -> Vec<&Face> {
        self.faces.iter().filter(|f| f.len() as i64 - 1 == d).collect()
    }

    pub fn maximal_faces(&self) -> Vec<Face> {
        self.faces
            .iter()
            .filter(|f| {
                !self
                    .faces
                    .iter()
                    .any(|g| g.len() > f.len() && f.iter().all(|v| g.contains(v)))
            })
            .cloned()
            .collect()
    }

    /// Unreduced Euler characteristic from face counts.
    pub fn euler_characteristic(&self) -> BigInt {
        let mut chi = BigInt::from(0);
        for f in &self.faces {
            if (f.len() as i64 - 1).rem_euclid(2) == 0 {
                chi += 1;
            } else {
                chi -= 1;
            }
        }
        chi
    }
}

/// The face poset: one object per face (identifier = sorted vertex join),
/// one morphism per strict inclusion.
pub fn face_poset(complex: &SimplicialComplex) -> FiniteCategory {
    let faces: Vec<&Face> = complex.faces().collect();
    let objects: Vec<String> = faces.iter().map(|f| complex.face_id(f)).collect();
    let mut morphisms = Vec::new();
    let mut compose = Vec::new();
    let id_of = |f: &Face| complex.face_id(f);
    let is_subset = |a: &Face, b: &Face| a.iter().all(|v| b.contains(v));
    for a in &faces {
        for b in &faces {
            if a.len() < b.len() && is_subset(a, b) {
                morphisms.push(RawMorphism {
                    id: format!("{}<{}", id_of(a), id_of(b)),
                    src: id_of(a),
                    dst: id_of(b),
                });
            }
        }
    }
    for a in &faces {
        for b in &faces {
            if !(a.len() < b.len() && is_subset(a, b)) {
                continue;
            }
            for c in &faces {
                if b.len() < c.len() && is_subset(b, c) {
                    compose.push((
                        format!("{}<{}", id_of(b), id_of(c)),
                        format!("{}<{}", id_of(a), id_of(b)),
                        format!("{}<{}", id_of(a), id_of(c)),
                    ));
                }
            }
        }
    }
    FiniteCategory::validate(&RawCategory { objects, morphisms, compose })
        .expect("face poset is a valid loop-free category")
}

/// link_A = { B : A ∪ B is a face and A ∩ B = ∅ }; may be void.
pub fn link(complex: &SimplicialComplex, a: &Face) -> Result<SimplicialComplex, SimplicialError> {
    if !complex.contains(a) {
        return Err(SimplicialError::UnknownFace(complex.face_id(a)));
    }
    let mut faces: BTreeSet<Face> = BTreeSet::new();
    for b in complex.faces() {
        if b.iter().any(|v| a.contains(v)) {
            continue;
        }
        let mut union: Face = a.iter().chain(b.iter()).copied().collect();
        union.sort_unstable();
        if complex.contains(&union) {
            faces.insert(b.clone());
        }
    }
    let vertex_ids: BTreeSet<usize> =
        faces.iter().filter(|f| f.len() == 1).map(|f| f[0]).collect();
    let vertices: Vec<String> =
        vertex_ids.iter().map(|&v| complex.vertices[v].clone()).collect();
    let facets: Vec<Vec<String>> = faces
        .iter()
        .map(|f| f.iter().map(|&v| complex.vertices[v].clone()).collect())
        .collect();
    SimplicialComplex::new(vertices, facets)
}

/// Simplicial join: faces A ∪ B together with both factors. Vertex sets
/// must be disjoint.
pub fn join(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
) -> Result<SimplicialComplex, SimplicialError> {
    for v in &a.vertices {
        if b.vertices.contains(v) {
            return Err(SimplicialError::VertexClash(v.clone()));
        }
    }
    let vertices: Vec<String> =
        a.vertices.iter().chain(b.vertices.iter()).cloned().collect();
    let mut facets: Vec<Vec<String>> = Vec::new();
    for fa in a.faces() {
        facets.push(a.face_names(fa));
    }
    for fb in b.faces() {
        facets.push(b.face_names(fb));
    }
    for fa in a.faces() {
        for fb in b.faces() {
            let mut names = a.face_names(fa);
            names.extend(b.face_names(fb));
            facets.push(names);
        }
    }
    SimplicialComplex::new(vertices, facets)
}

/// The order complex of a poset: vertices are objects, faces are strict
/// chains. Its realization is the barycentric subdivision when the poset
/// is a face poset. Reserved characters in object identifiers are
/// replaced by `.`; a resulting name collision is an error.
pub fn order_complex(poset: &FiniteCategory) -> Result<SimplicialComplex, SimplicialError> {
    if !poset.is_poset() {
        return Err(SimplicialError::NotAPoset);
    }
    let names: Vec<String> = poset
        .object_ids()
        .iter()
        .map(|id| id.replace(['+', '<'], "."))
        .collect();
    let mut seen = BTreeSet::new();
    for n in &names {
        if !seen.insert(n.clone()) {
            return Err(SimplicialError::NameClash(n.clone()));
        }
    }
    // Enumerate maximal strict chains by depth-first extension.
    let objects: Vec<Obj> = poset.objects().collect();
    let mut facets: Vec<Vec<String>> = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = objects.iter().map(|o| (vec![o.0], o.0)).collect();
    while let Some((chain, last)) = stack.pop() {
        let mut extended = false;
        for o in &objects {
            if o.0 != last && poset.leq(Obj(last), *o) {
                let mut next = chain.clone();
                next.push(o.0);
                stack.push((next, o.0));
                extended = true;
            }
        }
        if !extended {
            facets.push(chain.iter().map(|&i| names[i].clone()).collect());
        }
    }
    SimplicialComplex::new(names, facets)
}

/// Reduced cohomology of the augmented simplicial cochain complex, in
/// degrees >= -1. The void complex has Z in degree -1; a nonvoid complex
/// includes the empty face in degree -1 and its augmentation map.
pub fn reduced_cohomology(complex: &SimplicialComplex) -> GradedGroups {
    let cochain = augmented_cochain_complex(complex);
    let mut out = GradedGroups::new();
    for n in -1..=complex.dimension() {
        out.set(n, cochain.homology(n));
    }
    out
}

/// The augmented simplicial cochain complex with the empty face in degree
/// -1. Boundary signs follow the sorted vertex order of each face.
pub fn augmented_cochain_complex(complex: &SimplicialComplex) -> IntegerChainComplex {
    let dim = complex.dimension();
    let mut terms: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    let mut index: BTreeMap<i64, BTreeMap<&Face, usize>> = BTreeMap::new();
    terms.insert(-1, vec!["{}".to_string()]);
    for d in 0..=dim {
        let faces = complex.faces_of_dim(d);
        let mut idx = BTreeMap::new();
        let mut labels = Vec::new();
        for (i, f) in faces.iter().enumerate() {
            idx.insert(*f, i);
            labels.push(complex.face_id(f));
        }
        index.insert(d, idx);
        terms.insert(d, labels);
    }
    let mut diffs: BTreeMap<i64, IntMatrix> = BTreeMap::new();
    if dim >= 0 {
        // Augmentation coboundary: every vertex restricts to the empty face.
        let n0 = complex.faces_of_dim(0).len();
        let mut aug = IntMatrix::zeros(n0, 1);
        for r in 0..n0 {
            aug.set(r, 0, BigInt::from(1));
        }
        diffs.insert(-1, aug);
    }
    for d in 0..dim {
        let lower = &index[&d];
        let upper = complex.faces_of_dim(d + 1);
        let mut mat = IntMatrix::zeros(upper.len(), lower.len());
        for (r, f) in upper.iter().enumerate() {
            for (i, _) in f.iter().enumerate() {
                let mut sub = (*f).clone();
                sub.remove(i);
                let c = lower[&sub];
                let sign = if i % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
                mat.set(r, c, sign);
            }
        }
        diffs.insert(d, mat);
    }
    IntegerChainComplex::new(Grading::Cochain, terms, diffs)
        .expect("simplicial cochain complex squares to zero")
}

/// The unaugmented simplicial chain complex, for plain homology.
pub fn chain_complex(complex: &SimplicialComplex) -> IntegerChainComplex {
    let aug = augmented_cochain_complex(complex);
    let dim = complex.dimension();
    let mut terms: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    let mut diffs: BTreeMap<i64, IntMatrix> = BTreeMap::new();
    for d in 0..=dim {
        terms.insert(d, aug.labels(d).to_vec());
        if d > 0 {
            diffs.insert(d, aug.diff(d - 1).transpose());
        }
    }
    IntegerChainComplex::new(Grading::Chain, terms, diffs)
        .expect("simplicial chain complex squares to zero")
}

/// Method selector for local cohomology.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LocalMethod {
    /// Reduced cohomology of the link, shifted by dim(x) + 1.
    Link,
    /// Relative cohomology of the pair (P, P - P_{>=x}) with constant
    /// coefficients over the face poset.
    Pair,
    /// Ext of the constant module into the standard projective at x.
    Ext,
}

/// Local cohomology of the realization at (the barycenter of) a face, by
/// any of the three equivalent computations.
pub fn local_cohomology(
    complex: &SimplicialComplex,
    x: &Face,
    method: LocalMethod,
) -> Result<GradedGroups, SimplicialError> {
    if !complex.contains(x) {
        return Err(SimplicialError::UnknownFace(complex.face_id(x)));
    }
    match method {
        LocalMethod::Link => {
            let l = link(complex, x)?;
            let shift = x.len() as i64; // dim(x) + 1
            let reduced = reduced_cohomology(&l);
            let mut out = GradedGroups::new();
            for (d, g) in reduced.iter() {
                out.set(d + shift, g.clone());
            }
            Ok(out)
        }
        LocalMethod::Pair => {
            let poset = Arc::new(face_poset(complex));
            let x_obj = poset.obj_by_id(&complex.face_id(x)).expect("face is an object");
            let geq = crate::category::order_object_set(&poset, x_obj, OrderKind::Geq);
            let complement: BTreeSet<Obj> =
                poset.objects().filter(|o| !geq.contains(o)).collect();
            let constant = CModule::constant(poset.clone(), Variance::Left);
            Ok(relative_ext(&poset, &complement, &constant)?)
        }
        LocalMethod::Ext => {
            let poset = Arc::new(face_poset(complex));
            let x_obj = poset.obj_by_id(&complex.face_id(x)).expect("face is an object");
            let constant = CModule::constant(poset.clone(), Variance::Left);
            let px = CModule::standard_projective(poset.clone(), x_obj, Variance::Left);
            Ok(ext(&poset, &constant, &px)?)
        }
    }
}

/// Relative cohomology H^*(C, C'; F) for a full subcategory C' of C.
pub fn relative_cohomology(
    cat: &Arc<FiniteCategory>,
    sub: &FiniteCategory,
    f: &CModule,
) -> Result<GradedGroups, SimplicialError> {
    if !cat.is_full_subcategory(sub) {
        return Err(SimplicialError::NotFullSubcategory(sub.to_string()));
    }
    let objects: BTreeSet<Obj> = sub
        .object_ids()
        .iter()
        .map(|id| cat.obj_by_id(id).expect("subcategory object exists"))
        .collect();
    Ok(relative_ext(cat, &objects, f)?)
}

/// A poset is simplicial iff objects are determined by their atom sets
/// and every principal down-set is the boolean lattice of nonempty
/// subsets of the atoms below.
pub fn is_simplicial_poset(poset: &FiniteCategory) -> Result<bool, SimplicialError> {
    if !poset.is_poset() {
        return Err(SimplicialError::NotAPoset);
    }
    let objects: Vec<Obj> = poset.objects().collect();
    let atoms: Vec<Obj> = objects
        .iter()
        .copied()
        .filter(|&a| objects.iter().all(|&z| z == a || !poset.leq(z, a)))
        .collect();
    let sets: BTreeMap<Obj, BTreeSet<Obj>> = objects
        .iter()
        .map(|&x| (x, atoms.iter().copied().filter(|&a| poset.leq(a, x)).collect()))
        .collect();
    let distinct: BTreeSet<&BTreeSet<Obj>> = sets.values().collect();
    if distinct.len() != objects.len() {
        return Ok(false);
    }
    for &x in &objects {
        for &y in &objects {
            if poset.leq(x, y) != sets[&x].is_subset(&sets[&y]) {
                return Ok(false);
            }
        }
    }
    for &x in &objects {
        let below = objects.iter().filter(|&&z| poset.leq(z, x)).count();
        if below != (1usize << sets[&x].len()) - 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Closed-surface validator: pure 2-dimensional, every edge in exactly
/// two triangles, every vertex link a single cycle.
pub fn is_closed_surface(complex: &SimplicialComplex) -> bool {
    if complex.dimension() != 2 {
        return false;
    }
    if complex.maximal_faces().iter().any(|f| f.len() != 3) {
        return false;
    }
    let triangles = complex.faces_of_dim(2);
    for e in complex.faces_of_dim(1) {
        let count = triangles.iter().filter(|t| e.iter().all(|v| t.contains(v))).count();
        if count != 2 {
            return false;
        }
    }
    for v in complex.faces_of_dim(0) {
        let Ok(lk) = link(complex, v) else { return false };
        if lk.dimension() != 1 {
            return false;
        }
        let verts = lk.faces_of_dim(0);
        let edges = lk.faces_of_dim(1);
        if verts.len() != edges.len() {
            return false;
        }
        for w in &verts {
            let deg = edges.iter().filter(|e| e.contains(&w[0])).count();
            if deg != 2 {
                return false;
            }
        }
        let h = reduced_cohomology(&lk);
        if !(h.at(0).is_trivial() && h.at(1).is_free_of_rank_one()) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::zlin::FgAbelianGroup;

    fn z() -> FgAbelianGroup {
        FgAbelianGroup::free(1)
    }

    fn hollow_triangle() -> SimplicialComplex {
        corpus::sphere_boundary(2).unwrap()
    }

    #[test]
    fn face_poset_counts() {
        let tri = hollow_triangle();
        let p = face_poset(&tri);
        assert_eq!(p.object_count(), 6);
        assert_eq!(p.morphism_count() - p.object_count(), 6);

        let edge = corpus::generate("single_edge").unwrap().into_complex().unwrap();
        let p = face_poset(&edge);
        assert_eq!(p.object_count(), 3);
        assert_eq!(p.morphism_count() - p.object_count(), 2);
    }

    #[test]
    fn links_in_tetrahedron_boundary() {
        let s2 = corpus::sphere_boundary(3).unwrap();
        let v = s2.face_by_names(&["v1".into()]).unwrap();
        let lk = link(&s2, &v).unwrap();
        // Link of a vertex in the tetrahedron boundary: the hollow
        // triangle on the other three vertices.
        assert_eq!(lk.vertex_names().len(), 3);
        assert_eq!(lk.dimension(), 1);
        assert_eq!(lk.face_count(), 6);

        let facet = s2.face_by_names(&["v1".into(), "v2".into(), "v3".into()]).unwrap();
        let lk = link(&s2, &facet).unwrap();
        assert!(lk.is_void());
    }

    #[test]
    fn join_of_two_zero_spheres_is_circle() {
        let s0a = SimplicialComplex::new(vec!["a1".into(), "a2".into()], vec![]).unwrap();
        let s0b = SimplicialComplex::new(vec!["b1".into(), "b2".into()], vec![]).unwrap();
        let c = join(&s0a, &s0b).unwrap();
        assert_eq!(c.faces_of_dim(0).len(), 4);
        assert_eq!(c.faces_of_dim(1).len(), 4);
        let h = reduced_cohomology(&c);
        assert_eq!(h.at(1), z());
        assert!(h.at(0).is_trivial());
    }

    #[test]
    fn cone_is_acyclic() {
        let tri = hollow_triangle();
        let pt = SimplicialComplex::new(vec!["apex".into()], vec![]).unwrap();
        let cone = join(&tri, &pt).unwrap();
        assert!(reduced_cohomology(&cone).is_zero());
    }

    #[test]
    fn join_with_void_is_identity() {
        let tri = hollow_triangle();
        let j = join(&tri, &SimplicialComplex::void()).unwrap();
        assert_eq!(j, tri);
    }

    #[test]
    fn order_complex_examples() {
        let chain = FiniteCategory::validate(&RawCategory {
            objects: vec!["0".into(), "1".into()],
            morphisms: vec![RawMorphism { id: "0<1".into(), src: "0".into(), dst: "1".into() }],
            compose: vec![],
        })
        .unwrap();
        let oc = order_complex(&chain).unwrap();
        assert_eq!(oc.faces_of_dim(1).len(), 1);

        // Square poset gives the 4-cycle.
        let p = corpus::worked_example("square_poset").unwrap();
        let oc = order_complex(&p).unwrap();
        assert_eq!(oc.faces_of_dim(0).len(), 4);
        assert_eq!(oc.faces_of_dim(1).len(), 4);
        assert_eq!(reduced_cohomology(&oc).at(1), z());
    }

    #[test]
    fn reduced_cohomology_conventions() {
        let void = SimplicialComplex::void();
        let h = reduced_cohomology(&void);
        assert_eq!(h.at(-1), z());
        assert_eq!(h.nonzero_degrees(), vec![-1]);

        let h = reduced_cohomology(&hollow_triangle());
        assert_eq!(h.nonzero_degrees(), vec![1]);
        assert_eq!(h.at(1), z());

        let pt = SimplicialComplex::new(vec!["p".into()], vec![]).unwrap();
        assert!(reduced_cohomology(&pt).is_zero());
    }

    #[test]
    fn local_cohomology_single_edge() {
        let edge = corpus::generate("single_edge").unwrap().into_complex().unwrap();
        let v = edge.face_by_names(&["v".into()]).unwrap();
        for m in [LocalMethod::Link, LocalMethod::Pair, LocalMethod::Ext] {
            let h = local_cohomology(&edge, &v, m).unwrap();
            assert!(h.is_zero(), "contractible local structure at a free vertex");
        }
        let e = edge.face_by_names(&["v".into(), "w".into()]).unwrap();
        for m in [LocalMethod::Link, LocalMethod::Pair, LocalMethod::Ext] {
            let h = local_cohomology(&edge, &e, m).unwrap();
            assert_eq!(h.nonzero_degrees(), vec![1]);
            assert_eq!(h.at(1), z());
        }
    }

    #[test]
    fn local_cohomology_edge_of_tetrahedron_boundary() {
        let s2 = corpus::sphere_boundary(3).unwrap();
        let e = s2.face_by_names(&["v1".into(), "v2".into()]).unwrap();
        for m in [LocalMethod::Link, LocalMethod::Pair, LocalMethod::Ext] {
            let h = local_cohomology(&s2, &e, m).unwrap();
            assert_eq!(h.nonzero_degrees(), vec![2], "method {m:?}");
            assert_eq!(h.at(2), z());
        }
    }

    #[test]
    fn relative_cohomology_square_poset() {
        let p = Arc::new(corpus::worked_example("square_poset").unwrap());
        for x in ["0", "1", "2", "3"] {
            let xo = p.obj_by_id(x).unwrap();
            let tilde =
                Arc::new(crate::category::order_subcategory(&p, xo, OrderKind::Joinable));
            let below =
                crate::category::order_subcategory(&p, xo, OrderKind::StrictlyBelowJoin);
            let constant_tilde = CModule::constant(tilde.clone(), Variance::Left);
            let h = relative_cohomology(&tilde, &below, &constant_tilde).unwrap();
            assert_eq!(h.at(1), z(), "H^1 at {x}");
            assert!(h.at(0).is_trivial(), "H^0 at {x}");
        }
    }

    #[test]
    fn relative_les_euler_compatibility() {
        // The long exact sequence of the pair forces the alternating
        // ranks to satisfy chi(rel) = chi(C) - chi(C'), with the absolute
        // cohomologies computed independently of the relative engine.
        for name in ["single_edge", "sphere_boundary(2)", "torus7"] {
            let c = corpus::generate(name).unwrap().into_complex().unwrap();
            let poset = Arc::new(face_poset(&c));
            for x in poset.objects() {
                let geq = crate::category::order_object_set(&poset, x, OrderKind::Geq);
                let complement: std::collections::BTreeSet<crate::category::Obj> =
                    poset.objects().filter(|o| !geq.contains(o)).collect();
                let constant = CModule::constant(poset.clone(), Variance::Left);
                let rel = crate::cmod::relative_ext(&poset, &complement, &constant).unwrap();
                let abs = crate::cmod::ext(&poset, &constant, &constant).unwrap();
                let sub_cat = Arc::new(poset.full_subcategory(&complement));
                let sub_constant = CModule::constant(sub_cat.clone(), Variance::Left);
                let sub = crate::cmod::ext(&sub_cat, &sub_constant, &sub_constant).unwrap();
                assert_eq!(
                    rel.euler_characteristic(),
                    abs.euler_characteristic() - sub.euler_characteristic(),
                    "{name} at {}",
                    poset.object_id(x)
                );
            }
        }
    }

    #[test]
    fn join_rejects_shared_vertices() {
        let a = SimplicialComplex::new(vec!["a".into(), "b".into()], vec![]).unwrap();
        let b = SimplicialComplex::new(vec!["b".into(), "c".into()], vec![]).unwrap();
        assert!(matches!(join(&a, &b), Err(SimplicialError::VertexClash(v)) if v == "b"));
    }

    #[test]
    fn link_rejects_unknown_face() {
        let tri = hollow_triangle();
        assert!(matches!(
            link(&tri, &vec![0, 1, 2]),
            Err(SimplicialError::UnknownFace(_))
        ));
    }

    #[test]
    fn relative_rejects_non_full_subcategory() {
        // Drop one inclusion from the face poset of an edge: not full.
        let edge = corpus::generate("single_edge").unwrap().into_complex().unwrap();
        let poset = Arc::new(face_poset(&edge));
        let partial = FiniteCategory::validate(&RawCategory {
            objects: vec!["v".into(), "v+w".into()],
            morphisms: vec![],
            compose: vec![],
        })
        .unwrap();
        let constant = CModule::constant(poset.clone(), Variance::Left);
        assert!(matches!(
            relative_cohomology(&poset, &partial, &constant),
            Err(SimplicialError::NotFullSubcategory(_))
        ));
    }

    #[test]
    fn relative_cohomology_of_pair_with_itself_vanishes() {
        let p = Arc::new(corpus::worked_example("square_poset").unwrap());
        let constant = CModule::constant(p.clone(), Variance::Left);
        let h = relative_cohomology(&p, &p, &constant).unwrap();
        assert!(h.is_zero());
    }

    #[test]
    fn simplicial_poset_detection() {
        let tri = hollow_triangle();
        assert!(is_simplicial_poset(&face_poset(&tri)).unwrap());

        let square = corpus::worked_example("square_poset").unwrap();
        assert!(!is_simplicial_poset(&square).unwrap());

        let chain = FiniteCategory::validate(&RawCategory {
            objects: vec!["0".into(), "1".into(), "2".into()],
            morphisms: vec![
                RawMorphism { id: "0<1".into(), src: "0".into(), dst: "1".into() },
                RawMorphism { id: "1<2".into(), src: "1".into(), dst: "2".into() },
                RawMorphism { id: "0<2".into(), src: "0".into(), dst: "2".into() },
            ],
            compose: vec![("1<2".into(), "0<1".into(), "0<2".into())],
        })
        .unwrap();
        assert!(!is_simplicial_poset(&chain).unwrap());

        let parallel = corpus::worked_example("parallel_arrows").unwrap();
        assert!(matches!(is_simplicial_poset(&parallel), Err(SimplicialError::NotAPoset)));
    }

    #[test]
    fn subdivision_preserves_cohomology() {
        let tri = hollow_triangle();
        let sub = order_complex(&face_poset(&tri)).unwrap();
        assert_eq!(reduced_cohomology(&tri), reduced_cohomology(&sub));
    }
}
