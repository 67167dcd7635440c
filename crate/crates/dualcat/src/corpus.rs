//! Deterministic generators for the test corpus: the worked example
//! categories, simplex boundaries, minimal surface triangulations,
//! Coxeter complexes of type A, and flag complexes of projective spaces
//! over small finite fields.

use crate::category::{FiniteCategory, RawCategory, RawMorphism};
use crate::simplicial::{face_poset, is_closed_surface, order_complex, SimplicialComplex};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZooError {
    #[error("unknown generator `{0}`")]
    UnknownName(String),
    #[error("parameter out of range for `{name}`: {what}")]
    OutOfRange { name: String, what: String },
    #[error("malformed generator spec `{0}`")]
    BadSpec(String),
}

/// A parsed generator invocation: `name` or `name(p1,p2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub params: Vec<i64>,
}

impl GeneratorSpec {
    pub fn parse(text: &str) -> Result<Self, ZooError> {
        let text = text.trim();
        if let Some(open) = text.find('(') {
            if !text.ends_with(')') {
                return Err(ZooError::BadSpec(text.to_string()));
            }
            let name = text[..open].to_string();
            let inner = &text[open + 1..text.len() - 1];
            let params = inner
                .split(',')
                .map(|p| p.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| ZooError::BadSpec(text.to_string()))?;
            Ok(GeneratorSpec { name, params })
        } else {
            Ok(GeneratorSpec { name: text.to_string(), params: Vec::new() })
        }
    }
}

/// Output of a generator: a category or a complex.
#[derive(Clone, Debug)]
pub enum Generated {
    Category(FiniteCategory),
    Complex(SimplicialComplex),
}

impl Generated {
    pub fn into_complex(self) -> Option<SimplicialComplex> {
        match self {
            Generated::Complex(c) => Some(c),
            Generated::Category(_) => None,
        }
    }

    pub fn into_category(self) -> Option<FiniteCategory> {
        match self {
            Generated::Category(c) => Some(c),
            Generated::Complex(_) => None,
        }
    }
}

/// Run a generator given its textual spec, e.g. `torus7`,
/// `sphere_boundary(2)`, `building_gl(3,2)`.
pub fn generate(text: &str) -> Result<Generated, ZooError> {
    let spec = GeneratorSpec::parse(text)?;
    generate_spec(&spec)
}

pub fn generate_spec(spec: &GeneratorSpec) -> Result<Generated, ZooError> {
    let need = |n: usize| -> Result<(), ZooError> {
        if spec.params.len() == n {
            Ok(())
        } else {
            Err(ZooError::BadSpec(format!("{} expects {n} parameter(s)", spec.name)))
        }
    };
    match spec.name.as_str() {
        "parallel_arrows" | "five_object" | "square_poset" => {
            need(0)?;
            Ok(Generated::Category(worked_example(&spec.name)?))
        }
        "sphere_boundary" => {
            need(1)?;
            Ok(Generated::Complex(sphere_boundary(spec.params[0])?))
        }
        "torus7" | "rp2_6" | "klein8" => {
            need(0)?;
            Ok(Generated::Complex(surface(&spec.name)?))
        }
        "coxeter_complex_A" => {
            need(1)?;
            Ok(Generated::Complex(coxeter_complex_a(spec.params[0])?))
        }
        "building_gl" => {
            need(2)?;
            Ok(Generated::Complex(building_gl(spec.params[0], spec.params[1])?))
        }
        "single_edge" => {
            need(0)?;
            Ok(Generated::Complex(single_edge()))
        }
        "edge_point" => {
            need(0)?;
            Ok(Generated::Complex(edge_point()))
        }
        other => Err(ZooError::UnknownName(other.to_string())),
    }
}

/// The three worked example categories, objects and morphisms named as in
/// the source diagrams.
pub fn worked_example(name: &str) -> Result<FiniteCategory, ZooError> {
    let raw = match name {
        "parallel_arrows" => RawCategory {
            objects: vec!["x".into(), "y".into()],
            morphisms: vec![
                RawMorphism { id: "alpha".into(), src: "x".into(), dst: "y".into() },
                RawMorphism { id: "beta".into(), src: "x".into(), dst: "y".into() },
            ],
            compose: vec![],
        },
        "five_object" => RawCategory {
            objects: (0..5).map(|i| i.to_string()).collect(),
            morphisms: vec![
                RawMorphism { id: "a".into(), src: "4".into(), dst: "2".into() },
                RawMorphism { id: "b".into(), src: "0".into(), dst: "2".into() },
                RawMorphism { id: "c".into(), src: "1".into(), dst: "2".into() },
                RawMorphism { id: "d".into(), src: "0".into(), dst: "3".into() },
                RawMorphism { id: "e".into(), src: "1".into(), dst: "3".into() },
            ],
            compose: vec![],
        },
        "square_poset" => RawCategory {
            objects: (0..4).map(|i| i.to_string()).collect(),
            morphisms: vec![
                RawMorphism { id: "0<2".into(), src: "0".into(), dst: "2".into() },
                RawMorphism { id: "0<3".into(), src: "0".into(), dst: "3".into() },
                RawMorphism { id: "1<2".into(), src: "1".into(), dst: "2".into() },
                RawMorphism { id: "1<3".into(), src: "1".into(), dst: "3".into() },
            ],
            compose: vec![],
        },
        other => return Err(ZooError::UnknownName(other.to_string())),
    };
    Ok(FiniteCategory::validate(&raw).expect("worked examples are valid"))
}

/// The boundary of the n-simplex on vertices v1..v(n+1): all proper
/// nonempty subsets; a triangulated sphere of dimension n-1.
pub fn sphere_boundary(n: i64) -> Result<SimplicialComplex, ZooError> {
    if !(1..=6).contains(&n) {
        return Err(ZooError::OutOfRange {
            name: "sphere_boundary".into(),
            what: format!("n = {n}, supported 1..=6"),
        });
    }
    let n = n as usize;
    let vertices: Vec<String> = (1..=n + 1).map(|i| format!("v{i}")).collect();
    // Facets: the n subsets of size n.
    let facets: Vec<Vec<String>> = (0..=n)
        .map(|omit| {
            vertices
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != omit)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect();
    Ok(SimplicialComplex::new(vertices, facets).expect("simplex boundary is valid"))
}

fn triangles_to_complex(n_vertices: usize, triangles: &[[usize; 3]]) -> SimplicialComplex {
    let vertices: Vec<String> = (1..=n_vertices).map(|i| format!("v{i}")).collect();
    let facets: Vec<Vec<String>> = triangles
        .iter()
        .map(|t| t.iter().map(|v| format!("v{v}")).collect())
        .collect();
    SimplicialComplex::new(vertices, facets).expect("surface facet list is valid")
}

/// Fixed minimal triangulations: the 7-vertex torus (cyclic construction
/// on Z/7), the 6-vertex projective plane (icosahedron quotient), and an
/// 8-vertex Klein bottle (two Moebius bands glued along their boundary
/// pentagon). Each is checked to be a closed surface.
pub fn surface(name: &str) -> Result<SimplicialComplex, ZooError> {
    let complex = match name {
        "torus7" => {
            let mut tris = Vec::new();
            for i in 0..7usize {
                let v = |k: usize| (i + k) % 7 + 1;
                tris.push([v(0), v(1), v(3)]);
                tris.push([v(0), v(2), v(3)]);
            }
            triangles_to_complex(7, &tris)
        }
        "rp2_6" => triangles_to_complex(
            6,
            &[
                [1, 2, 4],
                [1, 2, 6],
                [1, 3, 5],
                [1, 3, 6],
                [1, 4, 5],
                [2, 3, 4],
                [2, 3, 5],
                [2, 5, 6],
                [3, 4, 6],
                [4, 5, 6],
            ],
        ),
        "klein8" => triangles_to_complex(
            8,
            &[
                // Moebius band on 1..5 with boundary pentagon 1-3-5-2-4.
                [1, 2, 3],
                [2, 3, 4],
                [3, 4, 5],
                [4, 5, 1],
                [5, 1, 2],
                // Second band on the same boundary with core triangle 6,7,8.
                [1, 3, 6],
                [3, 6, 7],
                [3, 5, 7],
                [5, 7, 8],
                [5, 2, 8],
                [2, 8, 6],
                [2, 4, 6],
                [4, 6, 7],
                [4, 1, 7],
                [1, 7, 8],
                [1, 8, 6],
            ],
        ),
        other => return Err(ZooError::UnknownName(other.to_string())),
    };
    assert!(is_closed_surface(&complex), "generated surface `{name}` is not closed");
    Ok(complex)
}

/// The type-A Coxeter complex: the barycentric subdivision of the
/// boundary of the n-simplex, a triangulated (n-1)-sphere.
pub fn coxeter_complex_a(n: i64) -> Result<SimplicialComplex, ZooError> {
    if !(1..=4).contains(&n) {
        return Err(ZooError::OutOfRange {
            name: "coxeter_complex_A".into(),
            what: format!("n = {n}, supported 1..=4"),
        });
    }
    let sphere = sphere_boundary(n)?;
    Ok(order_complex(&face_poset(&sphere)).expect("subdivision of a sphere boundary"))
}

/// Vectors of F_q^n in canonical (first nonzero coordinate = 1) form,
/// enumerated deterministically.
fn projective_points(n: usize, q: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let total = (q as u64).pow(n as u32);
    for code in 0..total {
        let mut v = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            v.push((c % q as u64) as i64);
            c /= q as u64;
        }
        if let Some(first) = v.iter().position(|&x| x != 0) {
            if v[first] == 1 {
                out.push(v);
            }
        }
    }
    out.sort();
    out
}

fn dot_mod(a: &[i64], b: &[i64], q: i64) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>().rem_euclid(q)
}

/// The flag complex of proper nonzero subspaces of F_q^n. For n = 2 this
/// is q+1 isolated points; for n = 3 the point-plane incidence graph
/// (planes are named by their canonical normal vector).
pub fn building_gl(n: i64, q: i64) -> Result<SimplicialComplex, ZooError> {
    if !(matches!(n, 2 | 3) && matches!(q, 2 | 3)) {
        return Err(ZooError::OutOfRange {
            name: "building_gl".into(),
            what: format!("(n, q) = ({n}, {q}), supported n in {{2,3}}, q in {{2,3}}"),
        });
    }
    let dim = n as usize;
    let points = projective_points(dim, q);
    let point_name =
        |v: &[i64]| format!("p{}", v.iter().map(i64::to_string).collect::<String>());
    if n == 2 {
        let vertices: Vec<String> = points.iter().map(|v| point_name(v)).collect();
        return Ok(SimplicialComplex::new(vertices, vec![])
            .expect("building vertex set is valid"));
    }
    // n = 3: planes are kernels of functionals, also indexed projectively.
    let planes = projective_points(dim, q);
    let plane_name =
        |v: &[i64]| format!("h{}", v.iter().map(i64::to_string).collect::<String>());
    let mut vertices: Vec<String> = points.iter().map(|v| point_name(v)).collect();
    vertices.extend(planes.iter().map(|v| plane_name(v)));
    let mut facets = Vec::new();
    for p in &points {
        for h in &planes {
            if dot_mod(p, h, q) == 0 {
                facets.push(vec![point_name(p), plane_name(h)]);
            }
        }
    }
    Ok(SimplicialComplex::new(vertices, facets).expect("flag complex is valid"))
}

/// A single edge {v, w, vw}.
pub fn single_edge() -> SimplicialComplex {
    SimplicialComplex::new(vec!["v".into(), "w".into()], vec![vec!["v".into(), "w".into()]])
        .expect("single edge is valid")
}

/// An edge plus an isolated vertex; the standard refutation example.
pub fn edge_point() -> SimplicialComplex {
    SimplicialComplex::new(
        vec!["u".into(), "v".into(), "w".into()],
        vec![vec!["v".into(), "w".into()]],
    )
    .expect("edge plus point is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{link, reduced_cohomology};
    use crate::zlin::FgAbelianGroup;
    use num_bigint::BigInt;

    #[test]
    fn worked_examples_shapes() {
        let p = worked_example("parallel_arrows").unwrap();
        assert_eq!((p.object_count(), p.morphism_count()), (2, 4));
        let f = worked_example("five_object").unwrap();
        assert_eq!((f.object_count(), f.morphism_count()), (5, 10));
        let s = worked_example("square_poset").unwrap();
        assert_eq!((s.object_count(), s.morphism_count()), (4, 8));
    }

    #[test]
    fn sphere_boundaries() {
        let s1 = sphere_boundary(2).unwrap();
        assert_eq!(s1.face_count(), 6);
        let s2 = sphere_boundary(3).unwrap();
        assert_eq!(s2.face_count(), 14);
        assert!(sphere_boundary(0).is_err());
        assert!(sphere_boundary(7).is_err());
    }

    #[test]
    fn surfaces_validate_and_count() {
        let t = surface("torus7").unwrap();
        assert_eq!(t.faces_of_dim(0).len(), 7);
        assert_eq!(t.faces_of_dim(1).len(), 21);
        assert_eq!(t.faces_of_dim(2).len(), 14);
        assert_eq!(t.euler_characteristic(), BigInt::from(0));

        let r = surface("rp2_6").unwrap();
        assert_eq!(r.faces_of_dim(0).len(), 6);
        assert_eq!(r.faces_of_dim(1).len(), 15);
        assert_eq!(r.faces_of_dim(2).len(), 10);
        assert_eq!(r.euler_characteristic(), BigInt::from(1));

        let k = surface("klein8").unwrap();
        assert_eq!(k.euler_characteristic(), BigInt::from(0));
        assert_eq!(k.faces_of_dim(0).len(), 8);
        assert_eq!(k.faces_of_dim(1).len(), 24);
        assert_eq!(k.faces_of_dim(2).len(), 16);
    }

    #[test]
    fn klein_bottle_homology() {
        let k = surface("klein8").unwrap();
        let c = crate::simplicial::chain_complex(&k);
        assert_eq!(c.homology(2), FgAbelianGroup::trivial());
        assert_eq!(c.homology(1), FgAbelianGroup::new(1, vec![BigInt::from(2)]));
        assert_eq!(c.homology(0), FgAbelianGroup::free(1));
    }

    #[test]
    fn coxeter_complexes() {
        let hexagon = coxeter_complex_a(2).unwrap();
        assert_eq!(hexagon.faces_of_dim(0).len(), 6);
        assert_eq!(hexagon.faces_of_dim(1).len(), 6);
        let h = reduced_cohomology(&hexagon);
        assert_eq!(h.nonzero_degrees(), vec![1]);

        let s2 = coxeter_complex_a(3).unwrap();
        assert_eq!(s2.faces_of_dim(0).len(), 14);
        assert_eq!(s2.faces_of_dim(1).len(), 36);
        assert_eq!(s2.faces_of_dim(2).len(), 24);
        // Reduced cohomology concentrated in degree n-1.
        let h = reduced_cohomology(&s2);
        assert_eq!(h.nonzero_degrees(), vec![2]);
        assert_eq!(h.at(2), FgAbelianGroup::free(1));
    }

    #[test]
    fn coxeter_certification_degree() {
        for (n, degree) in [(2i64, 1i64), (3, 2)] {
            let c = coxeter_complex_a(n).unwrap();
            let cert = crate::duality::certify_simplicial(&c);
            assert_eq!(cert.verdict, crate::duality::Verdict::Certified);
            assert_eq!(cert.degree, Some(degree));
            let d = cert.dualizing.as_ref().unwrap();
            assert!(crate::duality::is_constant_module(d).unwrap().is_constant());
        }
    }

    #[test]
    fn buildings_counts_match_gaussian_binomials() {
        let b23 = building_gl(2, 3).unwrap();
        assert_eq!(b23.faces_of_dim(0).len(), 4);
        assert_eq!(b23.dimension(), 0);
        let h = reduced_cohomology(&b23);
        assert_eq!(h.at(0), FgAbelianGroup::free(3));

        let b22 = building_gl(2, 2).unwrap();
        assert_eq!(b22.faces_of_dim(0).len(), 3);

        let fano = building_gl(3, 2).unwrap();
        assert_eq!(fano.faces_of_dim(0).len(), 14);
        assert_eq!(fano.faces_of_dim(1).len(), 21);
        // Connected with reduced Euler characteristic -8: rank 8 in
        // degree 1.
        let h = reduced_cohomology(&fano);
        assert!(h.at(0).is_trivial());
        assert_eq!(h.at(1), FgAbelianGroup::free(8));
    }

    #[test]
    fn building_links_are_smaller_buildings() {
        // Link of a point-vertex in building_gl(3, q): its q+1 incident
        // planes, no edges.
        for q in [2i64, 3] {
            let b = building_gl(3, q).unwrap();
            let first_point = b
                .vertex_names()
                .iter()
                .find(|v| v.starts_with('p'))
                .unwrap()
                .clone();
            let v = b.face_by_names(&[first_point]).unwrap();
            let lk = link(&b, &v).unwrap();
            assert_eq!(lk.dimension(), 0);
            assert_eq!(lk.faces_of_dim(0).len() as i64, q + 1);
        }
    }

    #[test]
    fn fano_flag_poset_size() {
        let fano = building_gl(3, 2).unwrap();
        let poset = crate::simplicial::face_poset(&fano);
        assert_eq!(poset.object_count(), 35);
    }

    #[test]
    fn generator_spec_parsing() {
        assert_eq!(
            GeneratorSpec::parse("building_gl(3, 2)").unwrap(),
            GeneratorSpec { name: "building_gl".into(), params: vec![3, 2] }
        );
        assert_eq!(
            GeneratorSpec::parse("torus7").unwrap(),
            GeneratorSpec { name: "torus7".into(), params: vec![] }
        );
        assert!(GeneratorSpec::parse("x(1").is_err());
        assert!(matches!(generate("nope"), Err(ZooError::UnknownName(_))));
    }
}
