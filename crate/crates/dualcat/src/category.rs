//! Finite loop-free categories: validation of the category axioms, the
//! nondegenerate nerve, and the order-theoretic subcategories used by the
//! duality criteria.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("composition entry ({g}, {f}) is not composable: target of `{f}` is not source of `{g}`")]
    NotComposable { g: String, f: String },
    #[error("composite of ({g}, {f}) declared as `{gf}` with mismatched endpoints")]
    BadComposite { g: String, f: String, gf: String },
    #[error("conflicting composition entries for ({g}, {f})")]
    ConflictingComposite { g: String, f: String },
    #[error("missing composite for composable pair ({g}, {f})")]
    MissingComposite { g: String, f: String },
    #[error("associativity fails on the triple ({h}, {g}, {f})")]
    NotAssociative { h: String, g: String, f: String },
    #[error("category is not loop-free: {0}")]
    NotLoopFree(String),
}

/// Index of an object in a validated category.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Obj(pub usize);

/// Index of a morphism in a validated category.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Mor(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub src: Obj,
    pub dst: Obj,
    pub is_identity: bool,
}

/// A validated finite loop-free category. Objects and morphisms are kept
/// in lexicographic identifier order, so every downstream matrix and
/// certificate is reproducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<Mor>,
    /// compose[g][f] = g∘f, defined whenever dst(f) = src(g).
    compose: Vec<Vec<Option<Mor>>>,
    /// hom[x][y] = morphisms x -> y, sorted by identifier.
    hom: Vec<Vec<Vec<Mor>>>,
}

/// Raw category data as found in the JSON interchange format. Identities
/// are implicit (auto-named `id_<object>`) and must not be listed.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    #[serde(default)]
    pub compose: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RawMorphism {
    pub id: String,
    pub src: String,
    pub dst: String,
}

impl FiniteCategory {
    /// Validate raw data: totality of composition on composable pairs,
    /// associativity, identity laws, loop-freeness, identifier uniqueness.
    pub fn validate(raw: &RawCategory) -> Result<Self, CategoryError> {
        let mut objects: Vec<String> = raw.objects.clone();
        objects.sort();
        for w in objects.windows(2) {
            if w[0] == w[1] {
                return Err(CategoryError::DuplicateId(w[0].clone()));
            }
        }
        let obj_index: BTreeMap<&str, Obj> =
            objects.iter().enumerate().map(|(i, o)| (o.as_str(), Obj(i))).collect();

        let mut morphisms: Vec<Morphism> = Vec::new();
        for o in &objects {
            morphisms.push(Morphism {
                id: format!("id_{o}"),
                src: obj_index[o.as_str()],
                dst: obj_index[o.as_str()],
                is_identity: true,
            });
        }
        for rm in &raw.morphisms {
            let src = *obj_index
                .get(rm.src.as_str())
                .ok_or_else(|| CategoryError::UnknownObject(rm.src.clone()))?;
            let dst = *obj_index
                .get(rm.dst.as_str())
                .ok_or_else(|| CategoryError::UnknownObject(rm.dst.clone()))?;
            morphisms.push(Morphism { id: rm.id.clone(), src, dst, is_identity: false });
        }
        morphisms.sort_by(|a, b| a.id.cmp(&b.id));
        for w in morphisms.windows(2) {
            if w[0].id == w[1].id {
                return Err(CategoryError::DuplicateId(w[0].id.clone()));
            }
        }
        let mor_index: BTreeMap<&str, Mor> =
            morphisms.iter().enumerate().map(|(i, m)| (m.id.as_str(), Mor(i))).collect();

        // Loop-freeness: no non-identity endomorphism, no 2-cycle.
        for m in &morphisms {
            if !m.is_identity && m.src == m.dst {
                return Err(CategoryError::NotLoopFree(format!(
                    "`{}` is a non-identity endomorphism of `{}`",
                    m.id, objects[m.src.0]
                )));
            }
        }
        let n = objects.len();
        let mut hom: Vec<Vec<Vec<Mor>>> = vec![vec![Vec::new(); n]; n];
        for (i, m) in morphisms.iter().enumerate() {
            hom[m.src.0][m.dst.0].push(Mor(i));
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && !hom[x][y].is_empty() && !hom[y][x].is_empty() {
                    return Err(CategoryError::NotLoopFree(format!(
                        "objects `{}` and `{}` have morphisms in both directions",
                        objects[x], objects[y]
                    )));
                }
            }
        }

        let count = morphisms.len();
        let mut compose: Vec<Vec<Option<Mor>>> = vec![vec![None; count]; count];
        // Identity laws fill the table first.
        for (i, m) in morphisms.iter().enumerate() {
            let id_src = mor_index[format!("id_{}", objects[m.src.0]).as_str()];
            let id_dst = mor_index[format!("id_{}", objects[m.dst.0]).as_str()];
            compose[i][id_src.0] = Some(Mor(i));
            compose[id_dst.0][i] = Some(Mor(i));
        }
        for (g_id, f_id, gf_id) in &raw.compose {
            let g = *mor_index
                .get(g_id.as_str())
                .ok_or_else(|| CategoryError::UnknownMorphism(g_id.clone()))?;
            let f = *mor_index
                .get(f_id.as_str())
                .ok_or_else(|| CategoryError::UnknownMorphism(f_id.clone()))?;
            let gf = *mor_index
                .get(gf_id.as_str())
                .ok_or_else(|| CategoryError::UnknownMorphism(gf_id.clone()))?;
            if morphisms[f.0].dst != morphisms[g.0].src {
                return Err(CategoryError::NotComposable { g: g_id.clone(), f: f_id.clone() });
            }
            if morphisms[gf.0].src != morphisms[f.0].src || morphisms[gf.0].dst != morphisms[g.0].dst
            {
                return Err(CategoryError::BadComposite {
                    g: g_id.clone(),
                    f: f_id.clone(),
                    gf: gf_id.clone(),
                });
            }
            match compose[g.0][f.0] {
                Some(existing) if existing != gf => {
                    return Err(CategoryError::ConflictingComposite {
                        g: g_id.clone(),
                        f: f_id.clone(),
                    })
                }
                _ => compose[g.0][f.0] = Some(gf),
            }
        }
        // Totality on composable pairs.
        for (gi, g) in morphisms.iter().enumerate() {
            for (fi, f) in morphisms.iter().enumerate() {
                if f.dst == g.src && compose[gi][fi].is_none() {
                    return Err(CategoryError::MissingComposite {
                        g: g.id.clone(),
                        f: f.id.clone(),
                    });
                }
            }
        }
        let identity: Vec<Mor> = (0..n)
            .map(|o| mor_index[format!("id_{}", objects[o]).as_str()])
            .collect();
        let cat = FiniteCategory { objects, morphisms, identity, compose, hom };
        cat.check_associativity()?;
        Ok(cat)
    }

    fn check_associativity(&self) -> Result<(), CategoryError> {
        let mut from: Vec<Vec<usize>> = vec![Vec::new(); self.objects.len()];
        for (i, m) in self.morphisms.iter().enumerate() {
            from[m.src.0].push(i);
        }
        for (fi, f) in self.morphisms.iter().enumerate() {
            for &gi in &from[f.dst.0] {
                let gf = self.compose[gi][fi].unwrap();
                for &hi in &from[self.morphisms[gi].dst.0] {
                    let hg = self.compose[hi][gi].unwrap();
                    if self.compose[hg.0][fi] != self.compose[hi][gf.0] {
                        return Err(CategoryError::NotAssociative {
                            h: self.morphisms[hi].id.clone(),
                            g: self.morphisms[gi].id.clone(),
                            f: f.id.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> {
        (0..self.objects.len()).map(Obj)
    }

    pub fn object_ids(&self) -> &[String] {
        &self.objects
    }

    pub fn object_id(&self, o: Obj) -> &str {
        &self.objects[o.0]
    }

    pub fn obj_by_id(&self, id: &str) -> Option<Obj> {
        self.objects.binary_search_by(|probe| probe.as_str().cmp(id)).ok().map(Obj)
    }

    pub fn morphism(&self, m: Mor) -> &Morphism {
        &self.morphisms[m.0]
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> {
        (0..self.morphisms.len()).map(Mor)
    }

    pub fn mor_by_id(&self, id: &str) -> Option<Mor> {
        self.morphisms
            .binary_search_by(|probe| probe.id.as_str().cmp(id))
            .ok()
            .map(Mor)
    }

    pub fn identity_of(&self, o: Obj) -> Mor {
        self.identity[o.0]
    }

    /// g∘f; panics if the pair is not composable (validation guarantees
    /// totality on composable pairs).
    pub fn composite(&self, g: Mor, f: Mor) -> Mor {
        self.compose[g.0][f.0].expect("composite of a non-composable pair")
    }

    /// The hom-set Hom(x, y), sorted by morphism identifier. The free
    /// abelian group Z[Hom(x, y)] is read off this basis.
    pub fn hom_basis(&self, x: Obj, y: Obj) -> &[Mor] {
        &self.hom[x.0][y.0]
    }

    /// x <= y iff Hom(x, y) is nonempty or x = y; a partial order for
    /// loop-free categories.
    pub fn leq(&self, x: Obj, y: Obj) -> bool {
        x == y || !self.hom[x.0][y.0].is_empty()
    }

    /// True iff every hom-set has at most one element.
    pub fn is_poset(&self) -> bool {
        self.objects()
            .all(|x| self.objects().all(|y| self.hom[x.0][y.0].len() <= 1))
    }

    /// The opposite category: sources and targets swapped, composition
    /// transposed. Involutive up to structural equality.
    pub fn opposite(&self) -> FiniteCategory {
        let n = self.objects.len();
        let morphisms: Vec<Morphism> = self
            .morphisms
            .iter()
            .map(|m| Morphism {
                id: m.id.clone(),
                src: m.dst,
                dst: m.src,
                is_identity: m.is_identity,
            })
            .collect();
        let count = morphisms.len();
        let mut compose = vec![vec![None; count]; count];
        for (g, row) in compose.iter_mut().enumerate() {
            for (f, entry) in row.iter_mut().enumerate() {
                *entry = self.compose[f][g];
            }
        }
        let mut hom: Vec<Vec<Vec<Mor>>> = vec![vec![Vec::new(); n]; n];
        for (i, m) in morphisms.iter().enumerate() {
            hom[m.src.0][m.dst.0].push(Mor(i));
        }
        FiniteCategory {
            objects: self.objects.clone(),
            morphisms,
            identity: self.identity.clone(),
            compose,
            hom,
        }
    }

    /// The full subcategory on the given objects, keeping identifiers.
    pub fn full_subcategory(&self, keep: &BTreeSet<Obj>) -> FiniteCategory {
        let objects: Vec<String> =
            keep.iter().map(|&o| self.objects[o.0].clone()).collect();
        let raw_mors: Vec<RawMorphism> = self
            .morphisms
            .iter()
            .filter(|m| !m.is_identity && keep.contains(&m.src) && keep.contains(&m.dst))
            .map(|m| RawMorphism {
                id: m.id.clone(),
                src: self.objects[m.src.0].clone(),
                dst: self.objects[m.dst.0].clone(),
            })
            .collect();
        let mut compose = Vec::new();
        for (gi, g) in self.morphisms.iter().enumerate() {
            for (fi, f) in self.morphisms.iter().enumerate() {
                if g.is_identity || f.is_identity || f.dst != g.src {
                    continue;
                }
                let inside = [g.src, g.dst, f.src]
                    .iter()
                    .all(|o| keep.contains(o));
                if inside {
                    let gf = self.compose[gi][fi].unwrap();
                    compose.push((g.id.clone(), f.id.clone(), self.morphisms[gf.0].id.clone()));
                }
            }
        }
        FiniteCategory::validate(&RawCategory { objects, morphisms: raw_mors, compose })
            .expect("full subcategory of a valid category is valid")
    }

    /// True iff `sub` is the full subcategory of `self` on its objects.
    pub fn is_full_subcategory(&self, sub: &FiniteCategory) -> bool {
        let keep: Option<BTreeSet<Obj>> =
            sub.object_ids().iter().map(|id| self.obj_by_id(id)).collect();
        let Some(keep) = keep else { return false };
        self.full_subcategory(&keep) == *sub
    }

    /// Export to the JSON interchange form (identities omitted).
    pub fn to_raw(&self) -> RawCategory {
        let morphisms = self
            .morphisms
            .iter()
            .filter(|m| !m.is_identity)
            .map(|m| RawMorphism {
                id: m.id.clone(),
                src: self.objects[m.src.0].clone(),
                dst: self.objects[m.dst.0].clone(),
            })
            .collect();
        let mut compose = Vec::new();
        for (gi, g) in self.morphisms.iter().enumerate() {
            for (fi, f) in self.morphisms.iter().enumerate() {
                if g.is_identity || f.is_identity || f.dst != g.src {
                    continue;
                }
                let gf = self.compose[gi][fi].unwrap();
                compose.push((g.id.clone(), f.id.clone(), self.morphisms[gf.0].id.clone()));
            }
        }
        RawCategory { objects: self.objects.clone(), morphisms, compose }
    }
}

impl fmt::Display for FiniteCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "category with {} objects, {} non-identity morphisms",
            self.objects.len(),
            self.morphisms.iter().filter(|m| !m.is_identity).count()
        )
    }
}

/// Kinds of order-theoretic full subcategories cut out around an object.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderKind {
    /// Objects joinable to x: some w with z <= w >= x.
    Joinable,
    /// Joinable to x and not >= x.
    StrictlyBelowJoin,
    Leq,
    Lt,
    Geq,
}

/// The full subcategory on the object set selected by `kind` around `x`.
pub fn order_subcategory(cat: &FiniteCategory, x: Obj, kind: OrderKind) -> FiniteCategory {
    cat.full_subcategory(&order_object_set(cat, x, kind))
}

pub fn order_object_set(cat: &FiniteCategory, x: Obj, kind: OrderKind) -> BTreeSet<Obj> {
    let joinable = |z: Obj| cat.objects().any(|w| cat.leq(z, w) && cat.leq(x, w));
    cat.objects()
        .filter(|&z| match kind {
            OrderKind::Joinable => joinable(z),
            OrderKind::StrictlyBelowJoin => joinable(z) && !cat.leq(x, z),
            OrderKind::Leq => cat.leq(z, x),
            OrderKind::Lt => z != x && cat.leq(z, x),
            OrderKind::Geq => cat.leq(x, z),
        })
        .collect()
}

/// A composable sequence of non-identity morphisms; length 0 is a single
/// object. Degeneracy (identity entries) is excluded throughout.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Chain {
    start: Obj,
    mors: Vec<Mor>,
}

impl Chain {
    pub fn object(o: Obj) -> Chain {
        Chain { start: o, mors: Vec::new() }
    }

    pub fn from_mors(cat: &FiniteCategory, mors: Vec<Mor>) -> Chain {
        assert!(!mors.is_empty());
        for w in mors.windows(2) {
            assert_eq!(
                cat.morphism(w[0]).dst,
                cat.morphism(w[1]).src,
                "chain entries do not compose"
            );
        }
        assert!(mors.iter().all(|&m| !cat.morphism(m).is_identity), "degenerate chain");
        Chain { start: cat.morphism(mors[0]).src, mors }
    }

    pub fn len(&self) -> usize {
        self.mors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mors.is_empty()
    }

    pub fn mors(&self) -> &[Mor] {
        &self.mors
    }

    pub fn start(&self) -> Obj {
        self.start
    }

    pub fn end(&self, cat: &FiniteCategory) -> Obj {
        self.mors.last().map_or(self.start, |&m| cat.morphism(m).dst)
    }

    /// The i-th object x_i along the chain.
    pub fn object_at(&self, cat: &FiniteCategory, i: usize) -> Obj {
        if i == 0 {
            self.start
        } else {
            cat.morphism(self.mors[i - 1]).dst
        }
    }

    /// Every object visited by the chain, in order.
    pub fn objects(&self, cat: &FiniteCategory) -> Vec<Obj> {
        (0..=self.mors.len()).map(|i| self.object_at(cat, i)).collect()
    }

    /// The i-th face: drops an endpoint for i = 0 or i = n, composes the
    /// adjacent arrows otherwise. Faces of nondegenerate chains in a
    /// loop-free category are nondegenerate.
    pub fn face(&self, cat: &FiniteCategory, i: usize) -> Chain {
        let n = self.mors.len();
        assert!(n >= 1 && i <= n, "face index out of range");
        if n == 1 {
            return match i {
                0 => Chain::object(cat.morphism(self.mors[0]).dst),
                _ => Chain::object(self.start),
            };
        }
        let mut mors = Vec::with_capacity(n - 1);
        if i == 0 {
            mors.extend_from_slice(&self.mors[1..]);
        } else if i == n {
            mors.extend_from_slice(&self.mors[..n - 1]);
        } else {
            mors.extend_from_slice(&self.mors[..i - 1]);
            mors.push(cat.composite(self.mors[i], self.mors[i - 1]));
            mors.extend_from_slice(&self.mors[i + 1..]);
        }
        Chain::from_mors(cat, mors)
    }

    /// Deterministic label: the object id in degree 0, otherwise the
    /// morphism ids joined by `|`.
    pub fn label(&self, cat: &FiniteCategory) -> String {
        if self.mors.is_empty() {
            cat.object_id(self.start).to_string()
        } else {
            self.mors
                .iter()
                .map(|&m| cat.morphism(m).id.as_str())
                .collect::<Vec<_>>()
                .join("|")
        }
    }
}

/// The nondegenerate nerve: all chains of non-identity morphisms, by
/// degree, in deterministic (lexicographic) order. Finite because the
/// category is loop-free.
pub struct Nerve {
    degrees: Vec<Vec<Chain>>,
}

impl Nerve {
    pub fn max_degree(&self) -> i64 {
        self.degrees.len() as i64 - 1
    }

    pub fn degree(&self, n: usize) -> &[Chain] {
        self.degrees.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn degree_sizes(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }
}

pub fn nondegenerate_nerve(cat: &FiniteCategory) -> Nerve {
    let mut degrees: Vec<Vec<Chain>> = Vec::new();
    degrees.push(cat.objects().map(Chain::object).collect());
    loop {
        let last = degrees.last().unwrap();
        let mut next = Vec::new();
        for chain in last {
            let end = chain.end(cat);
            for y in cat.objects() {
                for &m in cat.hom_basis(end, y) {
                    if cat.morphism(m).is_identity {
                        continue;
                    }
                    let mut mors = chain.mors.clone();
                    mors.push(m);
                    next.push(Chain { start: chain.start, mors });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_by_cached_key(|c| {
            c.mors.iter().map(|&m| cat.morphism(m).id.clone()).collect::<Vec<_>>()
        });
        degrees.push(next);
    }
    Nerve { degrees }
}
