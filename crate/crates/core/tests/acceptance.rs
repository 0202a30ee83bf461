//! Acceptance run: one line per criterion, non-zero exit if any fails.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use bcl_core::certify;
use bcl_core::coloring;
use bcl_core::complex::binomial;
use bcl_core::constructions::{bm, cross_polytope_boundary, stacked_cross_polytopal_sphere};
use bcl_core::covers::{cover_h_identity_check, cyclic_cover, handle_cocycle};
use bcl_core::homology::{self, betti, betti_with, AlexanderDuality, CoefficientField, ColorDeletionCheck, RankMethod};
use bcl_core::iso;
use bcl_core::search::{enumerate, verify_census, SearchSpec, Target};
use bcl_core::{Complex, Face};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: CoefficientField = CoefficientField::Rationals;
const Z2: CoefficientField = CoefficientField::Z2;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pow2(i: usize) -> u64 {
    1u64 << i
}

fn f_numbers() -> Outcome {
    let mut checked = 0;
    for d in 3..=8usize {
        let b = bm(d).map_err(|e| e.to_string())?.complex;
        let f = b.f_vector();
        for i in 1..d {
            let want = 3 * (pow2(i) - 1) * binomial(d as u64, i as u64);
            ensure(f.get(i as isize - 1) == want, || format!("BM_{d}: f_{} = {} != {want}", i - 1, f.get(i as isize - 1)))?;
            checked += 1;
        }
        let top = 3 * pow2(d) - 6;
        ensure(f.get(d as isize - 1) == top, || format!("BM_{d}: top count {} != {top}", f.get(d as isize - 1)))?;
        ensure(f.euler_characteristic() == 0, || format!("BM_{d}: chi = {}", f.euler_characteristic()))?;
        for m in [2u64, 3, 4] {
            let n = m as usize * d;
            let st = stacked_cross_polytopal_sphere(n, d).map_err(|e| e.to_string())?.complex;
            let f = st.f_vector();
            for i in 1..d {
                let want = (pow2(i) * (m - 1) - (m - 2)) * binomial(d as u64, i as u64);
                ensure(f.get(i as isize - 1) == want, || format!("ST({n},{}): f_{} = {} != {want}", d - 1, i - 1, f.get(i as isize - 1)))?;
                checked += 1;
            }
            let top = (m - 1) * pow2(d) - 2 * (m - 2);
            ensure(f.get(d as isize - 1) == top, || format!("ST({n},{}): top count {} != {top}", d - 1, f.get(d as isize - 1)))?;
            let chi = 1 + if d % 2 == 1 { 1 } else { -1 };
            ensure(f.euler_characteristic() == chi, || format!("ST({n},{}): chi = {}", d - 1, f.euler_characteristic()))?;
        }
    }
    Ok(format!("{checked} face numbers for i < d match; top counts 3·2^d-6 and (n/d-1)2^d-2(n/d-2) confirmed by Euler characteristic"))
}

fn homology_profile() -> Outcome {
    let profile = |d: usize, f: CoefficientField| -> Result<Vec<u64>, String> {
        Ok(betti(&bm(d).map_err(|e| e.to_string())?.complex, f).values().to_vec())
    };
    let cases: [(usize, &[u64]); 3] = [(3, &[0, 2, 1]), (4, &[0, 1, 0, 0]), (5, &[0, 1, 0, 1, 1])];
    for (d, want) in cases {
        let got = profile(d, Q)?;
        ensure(got == want, || format!("BM_{d} over Q: {got:?} != {want:?}"))?;
    }
    let z2 = profile(4, Z2)?;
    let q = profile(4, Q)?;
    ensure(z2[2] != q[2], || format!("BM_4: beta_2 over Z/2 = {} equals the rational value", z2[2]))?;
    let six = profile(6, Q)?;
    Ok(format!("BM_4 over Z/2 = {z2:?}; BM_6 over Q = {six:?}"))
}

fn manifold_suite() -> Outcome {
    let mut links = 0;
    for d in 3..=6 {
        let b = bm(d).map_err(|e| e.to_string())?.complex;
        for size in [1, 2] {
            for &face in b.faces_of_size(size) {
                let lk = b.link(face).map_err(|e| e.to_string())?;
                for f in [Q, Z2] {
                    let k = d as isize - 1 - size as isize;
                    ensure(homology::has_sphere_homology(&lk, k, f), || format!("BM_{d}: link of {face} over {f}"))?;
                }
                links += 1;
            }
        }
    }
    for d in [3, 4] {
        let x = cross_polytope_boundary(d).map_err(|e| e.to_string())?.complex;
        ensure(homology::is_buchsbaum_star(&x, Z2).map_err(|e| e.to_string())?, || format!("cross-polytope {d} not Buchsbaum* over Z/2"))?;
    }
    let b4 = bm(4).map_err(|e| e.to_string())?.complex;
    ensure(homology::is_buchsbaum_star(&b4, Z2).map_err(|e| e.to_string())?, || "BM_4 not Buchsbaum* over Z/2".into())?;
    let x = cross_polytope_boundary(4).map_err(|e| e.to_string())?;
    let s = coloring::color_set(&[1, 2, 3]).unwrap();
    let cert = certify::rank_selected_buchsbaum_star_check(&x.complex, &x.coloring, s, Z2).map_err(|e| e.to_string())?;
    ensure(cert.passed(), || "rank-selected subcomplex of the 4-cross-polytope fails".into())?;
    ensure(
        homology::is_buchsbaum_star_via_relative(&b4, Z2).map_err(|e| e.to_string())?,
        || "relative-homology route disagrees on BM_4".into(),
    )?;
    Ok(format!("{links} vertex and edge links are spheres over Q and Z/2; Buchsbaum* checks pass"))
}

fn random_subset<R: Rng>(rng: &mut R, v: Face) -> Face {
    v.vertices().filter(|_| rng.gen_bool(0.5)).fold(Face::EMPTY, |w, x| w.with(x))
}

fn alexander() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let oct = cross_polytope_boundary(3).map_err(|e| e.to_string())?.complex;
    let st = stacked_cross_polytopal_sphere(12, 4).map_err(|e| e.to_string())?.complex;
    let mut failures = 0;
    for gamma in [&oct, &st] {
        let ad = AlexanderDuality::new(gamma).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let w = random_subset(&mut rng, gamma.vertex_set());
            if !ad.check(w).passed() {
                failures += 1;
            }
        }
    }
    ensure(failures == 0, || format!("{failures} failures"))?;
    Ok("200 random subsets, zero failures".into())
}

fn color_deletion() -> Outcome {
    let mut count = 0;
    for d in [5, 6] {
        let b = bm(d).map_err(|e| e.to_string())?;
        let check = ColorDeletionCheck::new(&b.complex, &b.coloring).map_err(|e| e.to_string())?;
        for class in b.coloring.classes() {
            for w in class.subsets() {
                let cert = check.check(w).map_err(|e| e.to_string())?;
                ensure(cert.passed(), || format!("BM_{d}: deleting {w} changes a Betti number"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} monochromatic deletions, zero failures"))
}

fn graph_lemma() -> Outcome {
    let u = Face::from_vertices([1, 2, 3]).unwrap();
    let hand = certify::GraphTriple::new(u, [&[(1, 2), (2, 3)], &[(1, 2), (1, 3)], &[(2, 3), (1, 3)]], 2).map_err(|e| e.to_string())?;
    let mut triples = vec![hand];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..200 {
        triples.push(common::random_graph_triple(&mut rng, 2 + k % 5));
    }
    for (k, t) in triples.iter().enumerate() {
        let (a, b, c) = certify::graph_lemma_witness(t).map_err(|e| format!("triple {k}: {e}"))?;
        ensure(a != b && b != c && a != c, || format!("triple {k}: witness not distinct"))?;
        for (g, x) in t.graphs.iter().zip([a, b, c]) {
            let verts: Vec<usize> = t.u.vertices().filter(|&v| v != x).collect();
            let edges: Vec<(usize, usize)> = g.edges().into_iter().filter(|&(p, q)| p != x && q != x).collect();
            ensure(common::union_find_components(&verts, &edges) >= 2, || format!("triple {k}: deleting {x} leaves a connected graph"))?;
        }
        ensure(certify::graph_lemma_check(t).map_err(|e| e.to_string())?.passed(), || format!("triple {k}: certificate fails"))?;
    }
    Ok(format!("{} triples (|U| <= 11), zero failures", triples.len()))
}

fn covering_identity() -> Outcome {
    let mut rows = 0;
    for d in [3, 4, 5] {
        let b = bm(d).map_err(|e| e.to_string())?;
        for t in [2, 3, 4] {
            let omega = handle_cocycle(&b, t).map_err(|e| e.to_string())?;
            let cert = cover_h_identity_check(&b.complex, &omega).map_err(|e| e.to_string())?;
            ensure(cert.evidence["holds_for_all_i"] == true, || format!("BM_{d}, t = {t}: identity fails"))?;
            let h = cyclic_cover(&b.complex, &omega).map_err(|e| e.to_string())?.h_vector().map_err(|e| e.to_string())?;
            ensure(2 * h.get(2) >= (d as i64 - 1) * h.get(1), || format!("BM_{d}, t = {t}: 2h_2 < (d-1)h_1"))?;
            rows += d + 1;
        }
    }
    Ok(format!("{rows} h-numbers of 9 covers match; 2h_2 >= (d-1)h_1 on each"))
}

fn tightness() -> Outcome {
    for d in 3..=8 {
        let b = bm(d).map_err(|e| e.to_string())?;
        let h = b.complex.h_vector().map_err(|e| e.to_string())?;
        let lhs = 2 * h.get(2) - (d as i64 - 1) * h.get(1);
        let want = 4 * binomial(d as u64, 2) as i64;
        ensure(lhs == want, || format!("BM_{d}: 2h_2 - (d-1)h_1 = {lhs} != {want}"))?;
    }
    let mut vertices = 0;
    for d in 5..=7 {
        let b = bm(d).map_err(|e| e.to_string())?;
        let want = 7 * binomial(d as u64 - 1, 2);
        for v in b.complex.vertex_set().vertices() {
            let f1 = b.complex.link(Face::singleton(v)).map_err(|e| e.to_string())?.f_vector().get(1);
            ensure(f1 == want, || format!("BM_{d}: link of {v} has {f1} edges, expected {want}"))?;
            vertices += 1;
        }
    }
    Ok(format!("equality for d = 3..8; {vertices} vertex links meet 7·C(d-1,2)"))
}

fn searches() -> Outcome {
    let mut report = Vec::new();
    for (sizes, want) in [(vec![3, 3, 3], 1usize), (vec![4, 3, 3], 0)] {
        let start = Instant::now();
        let spec = SearchSpec::new(3, sizes.clone(), Target::closed_manifold().with_chi(0)).map_err(|e| e.to_string())?;
        let census = enumerate(&spec).map_err(|e| e.to_string())?;
        ensure(census.exhausted, || format!("{sizes:?}: not exhausted"))?;
        ensure(census.classes.len() == want, || format!("{sizes:?}: {} classes, expected {want}", census.classes.len()))?;
        ensure(verify_census(&census, &spec).passed(), || format!("{sizes:?}: census fails re-verification"))?;
        if want == 1 {
            let b3 = bm(3).map_err(|e| e.to_string())?.complex;
            ensure(iso::is_isomorphic(&census.classes[0].complex, &b3), || "the 9-vertex class is not BM_3".into())?;
        }
        report.push(format!("{sizes:?}: {} class(es), {} nodes, exhausted: yes, {:.2?}", census.classes.len(), census.nodes, start.elapsed()));
    }
    Ok(report.join("; "))
}

fn facet_arithmetic() -> Outcome {
    for d in 6..=10 {
        let cert = certify::facet_count_contradiction(d).map_err(|e| e.to_string())?;
        ensure(cert.passed(), || format!("d = {d}: some k solves the equation"))?;
        let residuals = cert.evidence["readings"][0]["residuals"].as_array().cloned().unwrap_or_default();
        ensure(residuals.len() == 4 && residuals.iter().all(|r| r != 0), || format!("d = {d}: residuals {residuals:?}"))?;
        let p = 1i64 << (d - 1);
        for (k, r) in (1..=4i64).zip(&residuals) {
            ensure(r.as_i64() == Some((4 + k) * p - k - (6 * p + 6)), || format!("d = {d}, k = {k}: residual {r}"))?;
        }
    }
    Ok("d = 6..10: no k in 1..4, four nonzero residuals each".into())
}

fn random_subcomplex<R: Rng>(rng: &mut R, base: &Complex) -> Complex {
    let faces: Vec<Face> = base.all_faces().filter(|f| !f.is_empty()).collect();
    let p = rng.gen_range(0.05..0.6);
    let chosen: Vec<Face> = faces.into_iter().filter(|_| rng.gen_bool(p)).collect();
    if chosen.is_empty() {
        Complex::empty(base.n())
    } else {
        Complex::from_facets(base.n(), chosen).expect("faces of the base")
    }
}

fn oracle_equivalence() -> Outcome {
    let base = cross_polytope_boundary(4).map_err(|e| e.to_string())?.complex;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let fields = [CoefficientField::Z2, CoefficientField::prime(32003).unwrap()];
    let mut disagreements = 0;
    let mut profiles: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    for _ in 0..500 {
        let c = random_subcomplex(&mut rng, &base);
        let dense = betti_with(&c, Q, RankMethod::DenseFractionFree);
        for f in fields {
            if betti_with(&c, f, RankMethod::Sparse).values() != dense.values() {
                disagreements += 1;
            }
        }
        *profiles.entry(dense.values().to_vec()).or_default() += 1;
    }
    ensure(disagreements == 0, || format!("{disagreements} disagreements"))?;
    Ok(format!("500 subcomplexes, {} distinct Betti profiles, zero disagreements", profiles.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("f-number formulas", f_numbers),
        ("homology profile", homology_profile),
        ("manifold and Buchsbaum suite", manifold_suite),
        ("Alexander duality", alexander),
        ("color-deletion invariance", color_deletion),
        ("graph lemma", graph_lemma),
        ("covering identity", covering_identity),
        ("tightness", tightness),
        ("exhaustive d=3 searches", searches),
        ("facet-count arithmetic", facet_arithmetic),
        ("oracle equivalence", oracle_equivalence),
    ];
    let mut failed = 0;
    let total = Instant::now();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{elapsed:.2?}]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{elapsed:.2?}]: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass [{:.2?}]", criteria.len() - failed, criteria.len(), total.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
