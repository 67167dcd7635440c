//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its wall time (visible under `--nocapture`). All comparisons are
//! exact: equality of (rank, torsion) invariants of finitely generated
//! abelian groups.

use dualcat::category::{FiniteCategory, OrderKind};
use dualcat::cmod::{
    bar_resolution, bar_resolution_of_module, dualize_projective_complex, tor, CModule,
    GradedGroups, HomMatrix, ProjectiveComplex, Summand, Variance,
};
use dualcat::corpus;
use dualcat::duality::{
    certify_dualizing_module, certify_generic, certify_simplicial, is_constant_module,
    orientability, poincare_report, standard_test_modules, verify_duality_isomorphism,
    CheckStatus, Constancy, DualityCertificate, Verdict, Witness,
};
use dualcat::simplicial::{
    chain_complex, face_poset, link, local_cohomology, order_complex, reduced_cohomology,
    LocalMethod, SimplicialComplex,
};
use dualcat::zlin::{FgAbelianGroup, Grading};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

fn z() -> FgAbelianGroup {
    FgAbelianGroup::free(1)
}

fn zn(rank: usize) -> FgAbelianGroup {
    FgAbelianGroup::free(rank)
}

fn complex(name: &str) -> SimplicialComplex {
    corpus::generate(name).unwrap().into_complex().unwrap()
}

fn finish(criterion: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!("ACCEPTANCE {criterion}: PASS ({elapsed:.2?})");
    assert!(
        elapsed < budget,
        "criterion {criterion} exceeded its time budget: {elapsed:.2?} > {budget:.2?}"
    );
}

/// Criterion 1: the parallel-arrows category certifies with degree 1 and
/// constant dualizing module, and dualizing the short resolution
/// 0 -> P_y -> P_x reproduces the complex P^y <- P^x resolving the
/// constant right module.
#[test]
fn acceptance_1_parallel_arrows() {
    let t = Instant::now();
    let cat = Arc::new(corpus::worked_example("parallel_arrows").unwrap());
    let cert = certify_generic(&cat);
    assert_eq!(cert.verdict, Verdict::Certified);
    assert_eq!(cert.degree, Some(1));
    for g in cert.dualizing_values.values() {
        assert_eq!(*g, z());
    }
    assert!(is_constant_module(cert.dualizing.as_ref().unwrap()).unwrap().is_constant());

    // The short resolution 0 -> P_y --(alpha* - beta*)--> P_x.
    let x = cat.obj_by_id("x").unwrap();
    let y = cat.obj_by_id("y").unwrap();
    let alpha = cat.mor_by_id("alpha").unwrap();
    let beta = cat.mor_by_id("beta").unwrap();
    let terms: BTreeMap<i64, Vec<Summand>> = [
        (0, vec![Summand { object: x, label: "P_x".into() }]),
        (1, vec![Summand { object: y, label: "P_y".into() }]),
    ]
    .into();
    let mut d1 = HomMatrix::zeros(1, 1);
    d1.add_term(0, 0, alpha, BigInt::from(1));
    d1.add_term(0, 0, beta, BigInt::from(-1));
    let resolution = ProjectiveComplex::new(
        cat.clone(),
        Variance::Left,
        Grading::Chain,
        terms,
        [(1, d1)].into(),
    );
    // It resolves the constant module: H_0 = Z, H_1 = 0 pointwise.
    for o in cat.objects() {
        let e = resolution.evaluate(o);
        assert_eq!(e.homology(0), z());
        assert_eq!(e.homology(1), FgAbelianGroup::trivial());
    }
    // Dual shape: P^x in degree 0, P^y in degree 1, entry ±(alpha - beta).
    let dual = dualize_projective_complex(&resolution).unwrap();
    assert_eq!(dual.summands(0).len(), 1);
    assert_eq!(dual.summands(0)[0].object, x);
    assert_eq!(dual.summands(1).len(), 1);
    assert_eq!(dual.summands(1)[0].object, y);
    let entry = dual.diff(0).entry(0, 0).clone();
    let ca = entry.get(&alpha).cloned().unwrap();
    let cb = entry.get(&beta).cloned().unwrap();
    assert_eq!(ca.magnitude(), BigInt::from(1).magnitude());
    assert_eq!(ca, -cb, "entry is a unit multiple of alpha - beta");
    // The dual resolves the constant right module in degree 1.
    for o in cat.objects() {
        let e = dual.evaluate(o);
        assert_eq!(e.homology(0), FgAbelianGroup::trivial());
        assert_eq!(e.homology(1), z());
    }
    finish("1 (parallel arrows)", t, Duration::from_secs(1));
}

/// Criterion 2: the five-object category certifies in degree 1 with
/// dualizing values (Z^2, Z^2, Z^2, Z, Z) at objects 0..4.
#[test]
fn acceptance_2_five_object() {
    let t = Instant::now();
    let cat = Arc::new(corpus::worked_example("five_object").unwrap());
    let cert = certify_generic(&cat);
    assert_eq!(cert.verdict, Verdict::Certified);
    assert_eq!(cert.degree, Some(1));
    let expect = [("0", 2), ("1", 2), ("2", 2), ("3", 1), ("4", 1)];
    for (obj, rank) in expect {
        assert_eq!(cert.dualizing_values[obj], zn(rank), "D^1({obj})");
        assert_eq!(cert.ext_table[obj].nonzero_degrees(), vec![1]);
    }
    finish("2 (five-object category)", t, Duration::from_secs(1));
}

/// Criterion 3: the square poset certifies in degree 1 with constant
/// dualizing module, and the relative pairs carry Z in degree 1 and
/// nothing in degree 0 at all four objects.
#[test]
fn acceptance_3_square_poset() {
    let t = Instant::now();
    let cat = Arc::new(corpus::worked_example("square_poset").unwrap());
    let cert = certify_generic(&cat);
    assert_eq!(cert.verdict, Verdict::Certified);
    assert_eq!(cert.degree, Some(1));
    assert!(is_constant_module(cert.dualizing.as_ref().unwrap()).unwrap().is_constant());
    for id in ["0", "1", "2", "3"] {
        let x = cat.obj_by_id(id).unwrap();
        let joinable = Arc::new(dualcat::category::order_subcategory(
            &cat,
            x,
            OrderKind::Joinable,
        ));
        let strictly_below =
            dualcat::category::order_subcategory(&cat, x, OrderKind::StrictlyBelowJoin);
        let constant = CModule::constant(joinable.clone(), Variance::Left);
        let h = dualcat::simplicial::relative_cohomology(&joinable, &strictly_below, &constant)
            .unwrap();
        assert_eq!(h.at(1), z(), "H^1 of the pair at {id}");
        assert!(h.at(0).is_trivial(), "H^0 of the pair at {id}");
    }
    finish("3 (square poset)", t, Duration::from_secs(1));
}

/// Criterion 4: simplex boundaries (S^1, S^2, S^3) certify with degree n,
/// constant dualizing module, orientable, and a fully matched Poincaré
/// table.
#[test]
fn acceptance_4_spheres() {
    for n in 1..=3i64 {
        let t = Instant::now();
        let sphere = corpus::sphere_boundary(n + 1).unwrap();
        let cert = certify_simplicial(&sphere);
        assert_eq!(cert.verdict, Verdict::Certified, "S^{n}");
        assert_eq!(cert.degree, Some(n), "S^{n}");
        assert!(is_constant_module(cert.dualizing.as_ref().unwrap()).unwrap().is_constant());
        let orient = orientability(&sphere, &cert).unwrap();
        assert!(orient.orientable && orient.agreement);
        let table = poincare_report(&sphere, &cert).unwrap();
        assert!(table.all_match());
        assert_eq!(table.rows.len() as i64, n + 1);
        finish(&format!("4 (sphere S^{n})"), t, Duration::from_secs(5));
    }
}

/// Criterion 5: the 7-vertex torus has homology (Z, Z^2, Z), certifies in
/// degree 2, is orientable, and the duality isomorphism holds against the
/// constant module and every standard projective.
#[test]
fn acceptance_5_torus() {
    let t = Instant::now();
    let torus = complex("torus7");
    let poset = Arc::new(face_poset(&torus));
    let left = CModule::constant(poset.clone(), Variance::Left);
    let right = CModule::constant(poset.clone(), Variance::Right);
    let h = tor(&poset, &right, &left).unwrap();
    assert_eq!((h.at(0), h.at(1), h.at(2)), (z(), zn(2), z()));

    let cert = certify_simplicial(&torus);
    assert_eq!(cert.verdict, Verdict::Certified);
    assert_eq!(cert.degree, Some(2));
    let orient = orientability(&torus, &cert).unwrap();
    assert!(orient.orientable && orient.agreement);

    let mut modules = vec![("Z".to_string(), left.clone())];
    for x in poset.objects() {
        modules.push((
            format!("P_{}", poset.object_id(x)),
            CModule::standard_projective(poset.clone(), x, Variance::Left),
        ));
    }
    let report = verify_duality_isomorphism(&poset, &cert, &modules).unwrap();
    for m in &report {
        assert!(m.all_match(), "duality isomorphism fails for {}", m.module);
    }
    finish("5 (7-vertex torus)", t, Duration::from_secs(10));
}

/// Criterion 6: the 6-vertex projective plane certifies in degree 2 with
/// local cohomology Z at every face, has H_2 = 0 and H_1 = Z/2, is not
/// orientable, and its dualizing module is twisted with an explicit
/// inconsistent sign cycle.
#[test]
fn acceptance_6_projective_plane() {
    let t = Instant::now();
    let rp2 = complex("rp2_6");
    let cert = certify_simplicial(&rp2);
    assert_eq!(cert.verdict, Verdict::Certified);
    assert_eq!(cert.degree, Some(2));
    for (face, g) in &cert.dualizing_values {
        assert_eq!(*g, z(), "local cohomology at {face}");
    }
    let poset = Arc::new(face_poset(&rp2));
    let left = CModule::constant(poset.clone(), Variance::Left);
    let right = CModule::constant(poset.clone(), Variance::Right);
    let h = tor(&poset, &right, &left).unwrap();
    assert!(h.at(2).is_trivial(), "H_2 of the projective plane");
    assert_eq!(h.at(1), FgAbelianGroup::new(0, vec![BigInt::from(2)]));

    let orient = orientability(&rp2, &cert).unwrap();
    assert!(!orient.orientable && orient.agreement);
    match is_constant_module(cert.dualizing.as_ref().unwrap()).unwrap() {
        Constancy::Inconsistent { cycle } => {
            assert!(!cycle.is_empty(), "cycle witness must be explicit")
        }
        Constancy::Constant { .. } => panic!("dualizing module must be twisted"),
    }
    finish("6 (6-vertex projective plane)", t, Duration::from_secs(10));
}

/// Criterion 7: buildings at desk scale. The rank-2 building over F_3 is
/// 4 points certifying in degree 0 with dualizing value Z at each; the
/// Fano flag complex certifies in degree 1 with D = Z^2 on vertices and Z
/// on chambers, and top reduced cohomology of rank 8 cross-checked by the
/// Euler characteristic.
#[test]
fn acceptance_7_buildings() {
    let t = Instant::now();
    let points = complex("building_gl(2,3)");
    let cert = certify_simplicial(&points);
    assert_eq!(cert.verdict, Verdict::Certified);
    assert_eq!(cert.degree, Some(0));
    assert_eq!(cert.dualizing_values.len(), 4);
    for g in cert.dualizing_values.values() {
        assert_eq!(*g, z());
    }
    assert_eq!(reduced_cohomology(&points).at(0), zn(3));

    let fano = complex("building_gl(3,2)");
    assert_eq!(fano.faces_of_dim(0).len(), 14);
    assert_eq!(fano.faces_of_dim(1).len(), 21);
    let cert = certify_simplicial(&fano);
    assert_eq!(cert.verdict, Verdict::Certified);
    assert_eq!(cert.degree, Some(1));
    for f in fano.faces() {
        let expected = if f.len() == 1 { zn(2) } else { z() };
        assert_eq!(cert.dualizing_values[&fano.face_id(f)], expected);
    }
    let h = reduced_cohomology(&fano);
    assert!(h.at(0).is_trivial(), "flag complex is connected");
    // Euler oracle: chi = V - E = 14 - 21 = -7; connectivity forces
    // rank H~^1 = 1 - chi = 8.
    let chi = 14i64 - 21;
    assert_eq!(h.at(1), zn((1 - chi) as usize));
    assert_eq!(h.at(1), zn(8));
    finish("7 (buildings)", t, Duration::from_secs(30));
}

/// Criterion 8: an edge plus an isolated vertex is refuted, the two parts
/// forcing degrees 1 and 0 simultaneously.
#[test]
fn acceptance_8_refutation() {
    let t = Instant::now();
    let cert = certify_simplicial(&complex("edge_point"));
    assert_eq!(cert.verdict, Verdict::Refuted);
    let degrees: Vec<i64> = cert
        .witnesses
        .iter()
        .flat_map(|w| match w {
            Witness::ConflictingDegrees { degree_a, degree_b, .. } => {
                vec![*degree_a, *degree_b]
            }
            Witness::MultipleDegrees { degrees, .. } => degrees.clone(),
        })
        .collect();
    let mut sorted = degrees.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted, vec![0, 1]);
    finish("8 (refutation path)", t, Duration::from_secs(1));
}

// ---------------------------------------------------------------------
// Criterion 9: property suites over the full corpus.

fn corpus_categories() -> Vec<(String, Arc<FiniteCategory>)> {
    ["parallel_arrows", "five_object", "square_poset"]
        .into_iter()
        .map(|n| (n.to_string(), Arc::new(corpus::worked_example(n).unwrap())))
        .collect()
}

fn corpus_complexes() -> Vec<(String, SimplicialComplex)> {
    [
        "single_edge",
        "edge_point",
        "sphere_boundary(2)",
        "sphere_boundary(3)",
        "sphere_boundary(4)",
        "torus7",
        "rp2_6",
        "klein8",
        "coxeter_complex_A(2)",
        "coxeter_complex_A(3)",
        "building_gl(2,2)",
        "building_gl(2,3)",
        "building_gl(3,2)",
        "building_gl(3,3)",
    ]
    .into_iter()
    .map(|n| (n.to_string(), complex(n)))
    .collect()
}

fn assert_bar_exact(name: &str, cat: &Arc<FiniteCategory>, f: Option<&CModule>) {
    let bar = match f {
        Some(module) => bar_resolution_of_module(cat, module),
        None => bar_resolution(cat),
    };
    for y in cat.objects() {
        let aug = bar.augmented_evaluation(y);
        for n in -1..=bar.length() {
            assert!(
                aug.homology(n).is_trivial(),
                "{name}: augmented Bar complex not exact at {} in degree {n}",
                cat.object_id(y)
            );
        }
    }
}

/// 9a: the augmented Bar resolution is pointwise exact in every degree,
/// for every corpus category and face poset, and for the two-sided
/// resolution of every standard projective over the worked examples.
#[test]
fn acceptance_9a_bar_exactness() {
    let t = Instant::now();
    for (name, cat) in corpus_categories() {
        assert_bar_exact(&name, &cat, None);
        for x in cat.objects() {
            let p = CModule::standard_projective(cat.clone(), x, Variance::Left);
            assert_bar_exact(&format!("{name}/P_{}", cat.object_id(x)), &cat, Some(&p));
        }
    }
    for (name, c) in corpus_complexes() {
        let poset = Arc::new(face_poset(&c));
        assert_bar_exact(&name, &poset, None);
    }
    finish("9a (Bar exactness)", t, Duration::from_secs(120));
}

/// 9b: the three local-cohomology computations agree on every face of
/// every corpus complex.
#[test]
fn acceptance_9b_local_cohomology_agreement() {
    let t = Instant::now();
    for (name, c) in corpus_complexes() {
        for f in c.faces() {
            let by_link = local_cohomology(&c, f, LocalMethod::Link).unwrap();
            let by_pair = local_cohomology(&c, f, LocalMethod::Pair).unwrap();
            let by_ext = local_cohomology(&c, f, LocalMethod::Ext).unwrap();
            let id = c.face_id(f);
            assert_eq!(by_link, by_pair, "{name} at {id}: link vs pair");
            assert_eq!(by_link, by_ext, "{name} at {id}: link vs ext");
        }
    }
    finish("9b (local cohomology three-method agreement)", t, Duration::from_secs(120));
}

/// 9c: the simplicial fast path and the generic engine agree on verdict,
/// degree, and dualizing values for every corpus complex.
#[test]
fn acceptance_9c_simplicial_equals_generic() {
    let t = Instant::now();
    for (name, c) in corpus_complexes() {
        let simplicial = certify_simplicial(&c);
        let generic = certify_generic(&Arc::new(face_poset(&c)));
        assert_eq!(simplicial.verdict, generic.verdict, "{name}: verdict");
        assert_eq!(simplicial.degree, generic.degree, "{name}: degree");
        assert_eq!(
            simplicial.dualizing_values, generic.dualizing_values,
            "{name}: dualizing values"
        );
        if simplicial.verdict == Verdict::Certified {
            assert_eq!(
                simplicial.checks.get("link_values_match_derived_dual"),
                Some(&CheckStatus::Pass),
                "{name}: internal cross-assert"
            );
        }
    }
    finish("9c (simplicial = generic)", t, Duration::from_secs(120));
}

/// 9d: alternating face counts equal alternating homology ranks for
/// every corpus complex.
#[test]
fn acceptance_9d_euler_conservation() {
    let t = Instant::now();
    for (name, c) in corpus_complexes() {
        let chain = chain_complex(&c);
        let mut homological = BigInt::from(0);
        for d in 0..=c.dimension() {
            let rank = BigInt::from(chain.homology(d).rank());
            if d.rem_euclid(2) == 0 {
                homological += rank;
            } else {
                homological -= rank;
            }
        }
        assert_eq!(c.euler_characteristic(), homological, "{name}");
    }
    finish("9d (Euler conservation)", t, Duration::from_secs(120));
}

/// 9e: the join identifications. Combinatorially, the joinable
/// subcategory at x is the face poset of simplex(x) * link_x and the
/// strict one is the face poset of boundary(x) * link_x; cohomologically,
/// the join with the simplex boundary shifts reduced cohomology of the
/// link by dim(x).
#[test]
fn acceptance_9e_join_shift() {
    let t = Instant::now();
    for (name, c) in corpus_complexes() {
        let poset = Arc::new(face_poset(&c));
        for f in c.faces() {
            let id = c.face_id(f);
            let x = poset.obj_by_id(&id).unwrap();
            let lk = link(&c, f).unwrap();
            let names = c.face_names(f);
            let full_simplex =
                SimplicialComplex::new(names.clone(), vec![names.clone()]).unwrap();
            let boundary = if names.len() == 1 {
                SimplicialComplex::void()
            } else {
                let facets = (0..names.len())
                    .map(|omit| {
                        names
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| *i != omit)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                SimplicialComplex::new(names.clone(), facets).unwrap()
            };
            // Poset isomorphisms, witnessed as structural equality.
            let joinable =
                dualcat::category::order_subcategory(&poset, x, OrderKind::Joinable);
            let strict =
                dualcat::category::order_subcategory(&poset, x, OrderKind::StrictlyBelowJoin);
            let join_full = dualcat::simplicial::join(&full_simplex, &lk).unwrap();
            let join_bd = dualcat::simplicial::join(&boundary, &lk).unwrap();
            assert_eq!(face_poset(&join_full), joinable, "{name} at {id}: joinable");
            assert_eq!(face_poset(&join_bd), strict, "{name} at {id}: strict");
            // Cohomological shift by dim(x).
            let shifted = reduced_cohomology(&join_bd);
            let base = reduced_cohomology(&lk);
            let dim_x = f.len() as i64 - 1;
            let mut expected = GradedGroups::new();
            for (d, g) in base.iter() {
                expected.set(d + dim_x, g.clone());
            }
            assert_eq!(shifted, expected, "{name} at {id}: join shift");
        }
    }
    finish("9e (join shift)", t, Duration::from_secs(120));
}

/// 9f: reduced cohomology is invariant under barycentric subdivision for
/// every corpus complex.
#[test]
fn acceptance_9f_subdivision_invariance() {
    let t = Instant::now();
    for (name, c) in corpus_complexes() {
        let subdivision = order_complex(&face_poset(&c)).unwrap();
        assert_eq!(
            reduced_cohomology(&c),
            reduced_cohomology(&subdivision),
            "{name}"
        );
    }
    finish("9f (subdivision invariance)", t, Duration::from_secs(120));
}

/// 9g: the dualizing-module round trip on every certified corpus instance
/// with pointwise-free dualizing module: D certifies over the opposite
/// category with the same degree and constant dualizing values.
#[test]
fn acceptance_9g_dualizing_round_trip() {
    let t = Instant::now();
    let mut instances: Vec<(String, Arc<FiniteCategory>, DualityCertificate)> = Vec::new();
    for (name, cat) in corpus_categories() {
        let cert = certify_generic(&cat);
        instances.push((name, cat, cert));
    }
    for (name, c) in corpus_complexes() {
        let poset = Arc::new(face_poset(&c));
        let cert = certify_generic(&poset);
        instances.push((name, poset, cert));
    }
    let mut checked = 0;
    for (name, cat, cert) in &instances {
        if cert.verdict != Verdict::Certified || !cert.pointwise_free {
            continue;
        }
        let op_cert = certify_dualizing_module(cat, cert).unwrap();
        assert_eq!(
            op_cert.checks.get("round_trip_degree"),
            Some(&CheckStatus::Pass),
            "{name}: degree round trip"
        );
        assert_eq!(
            op_cert.checks.get("round_trip_constant_dualizing"),
            Some(&CheckStatus::Pass),
            "{name}: dualizing round trip"
        );
        checked += 1;
    }
    assert!(checked >= 10, "round trip must cover the certified corpus, got {checked}");
    finish("9g (dualizing round trip)", t, Duration::from_secs(120));
}

/// The duality isomorphism over the full deterministic test family for a
/// sample of certified instances beyond the torus of criterion 5.
#[test]
fn acceptance_9_duality_isomorphism_samples() {
    let t = Instant::now();
    for name in ["single_edge", "sphere_boundary(2)", "rp2_6", "building_gl(3,2)"] {
        let c = complex(name);
        let poset = Arc::new(face_poset(&c));
        let cert = certify_generic(&poset);
        assert_eq!(cert.verdict, Verdict::Certified, "{name}");
        let modules = standard_test_modules(&poset);
        let report = verify_duality_isomorphism(&poset, &cert, &modules).unwrap();
        for m in &report {
            assert!(m.all_match(), "{name}: duality isomorphism fails for {}", m.module);
        }
    }
    for name in ["parallel_arrows", "five_object", "square_poset"] {
        let cat = Arc::new(corpus::worked_example(name).unwrap());
        let cert = certify_generic(&cat);
        let modules = standard_test_modules(&cat);
        let report = verify_duality_isomorphism(&cat, &cert, &modules).unwrap();
        for m in &report {
            assert!(m.all_match(), "{name}: duality isomorphism fails for {}", m.module);
        }
    }
    // The Klein bottle pairs torsion on both sides: Ext^2(Z, Z) = Z/2
    // must match Tor_0(D, Z) for the twisted dualizing module.
    let klein = complex("klein8");
    let poset = Arc::new(face_poset(&klein));
    let cert = certify_generic(&poset);
    assert_eq!(cert.degree, Some(2));
    let constant = CModule::constant(poset.clone(), Variance::Left);
    let report =
        verify_duality_isomorphism(&poset, &cert, &[("Z".to_string(), constant)]).unwrap();
    assert!(report[0].all_match(), "klein8: twisted duality with constant coefficients");
    let torsion_row = report[0]
        .rows
        .iter()
        .find(|r| !r.ext_side.is_torsion_free())
        .expect("the Klein bottle has 2-torsion in top cohomology");
    assert_eq!(torsion_row.ext_side, FgAbelianGroup::new(0, vec![BigInt::from(2)]));
    finish("9+ (duality isomorphism over the test family)", t, Duration::from_secs(120));
}

/// Manifold biconditional: orientability (top homology Z) agrees with
/// constancy of the dualizing module across the manifold corpus.
#[test]
fn acceptance_9_manifold_biconditional() {
    let t = Instant::now();
    for (name, expect_orientable) in [
        ("sphere_boundary(2)", true),
        ("sphere_boundary(3)", true),
        ("sphere_boundary(4)", true),
        ("torus7", true),
        ("rp2_6", false),
        ("klein8", false),
        ("coxeter_complex_A(2)", true),
        ("coxeter_complex_A(3)", true),
    ] {
        let c = complex(name);
        let cert = certify_simplicial(&c);
        assert_eq!(cert.verdict, Verdict::Certified, "{name}");
        let report = orientability(&c, &cert).unwrap();
        assert_eq!(report.orientable, expect_orientable, "{name}: orientability");
        assert!(report.agreement, "{name}: biconditional broke");
        if expect_orientable {
            assert!(poincare_report(&c, &cert).unwrap().all_match(), "{name}: Poincaré");
        }
    }
    finish("9+ (manifold biconditional)", t, Duration::from_secs(120));
}

/// Wedge-of-spheres behavior of generated buildings: reduced cohomology
/// free and concentrated in top degree, with every link again
/// concentrated (so the whole certificate goes through).
#[test]
fn acceptance_9_building_wedge() {
    let t = Instant::now();
    for (name, top, rank) in [
        ("building_gl(2,2)", 0i64, 2usize),
        ("building_gl(2,3)", 0, 3),
        ("building_gl(3,2)", 1, 8),
        ("building_gl(3,3)", 1, 27),
    ] {
        let b = complex(name);
        let h = reduced_cohomology(&b);
        assert_eq!(h.nonzero_degrees(), vec![top], "{name}: concentration");
        assert_eq!(h.at(top), zn(rank), "{name}: top rank");
        let cert = certify_simplicial(&b);
        assert_eq!(cert.verdict, Verdict::Certified, "{name}");
        assert_eq!(cert.degree, Some(top), "{name}");
        // Duality degree equals the Bar length here: the projective
        // dimension bound is attained.
        assert_eq!(cert.bar_length, top, "{name}");
    }
    finish("9+ (buildings are wedges of spheres)", t, Duration::from_secs(120));
}
