use bcl_core::certificate::Verdict;
use bcl_core::certify::extra_vertex_class_check;
use bcl_core::constructions::{bm, stacked_cross_polytopal_sphere};
use bcl_core::iso;
use bcl_core::search::{enumerate, verify_census, write_census_dir, Census, CensusClass, SearchSpec, Target};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn spec(sizes: &[usize], chi: Option<i64>) -> SearchSpec {
    let mut target = Target::closed_manifold();
    target.chi = chi;
    SearchSpec::new(sizes.len(), sizes.to_vec(), target).unwrap()
}

fn forms(c: &Census) -> Vec<iso::CanonicalForm> {
    c.classes.iter().map(|m| iso::canonical_form(&m.complex)).collect()
}

#[test]
fn nine_vertex_torus_is_bm3() {
    let s = spec(&[3, 3, 3], Some(0));
    let c = enumerate(&s).unwrap();
    assert!(c.exhausted);
    assert_eq!(c.classes.len(), 1);
    assert!(iso::is_isomorphic(&c.classes[0].complex, &bm(3).unwrap().complex));
    assert!(verify_census(&c, &s).passed());
}

#[test]
fn no_ten_vertex_surface_with_chi_zero() {
    let s = spec(&[4, 3, 3], Some(0));
    let c = enumerate(&s).unwrap();
    assert!(c.exhausted);
    assert!(c.classes.is_empty());
    let cert = verify_census(&c, &s);
    assert!(cert.passed());
    assert_eq!(cert.evidence["exhausted"], true);
}

#[test]
fn nine_vertex_spheres_regression() {
    // Count fixed by the first exhaustive run.
    let s = spec(&[3, 3, 3], Some(2));
    let c = enumerate(&s).unwrap();
    assert!(c.exhausted);
    assert_eq!(c.classes.len(), 1);
    let st = stacked_cross_polytopal_sphere(9, 3).unwrap();
    assert!(iso::is_isomorphic(&c.classes[0].complex, &st.complex));
}

#[test]
fn disabling_a_prune_keeps_the_census() {
    for (sizes, chi) in [(vec![3, 3, 3], None), (vec![4, 3, 3], Some(0)), (vec![4, 3, 3], None)] {
        let base = spec(&sizes, chi);
        let reference = enumerate(&base).unwrap();
        for which in 0..3 {
            let mut s = base.clone();
            match which {
                0 => s.prunes.ridge_degree = false,
                1 => s.prunes.link_cycles = false,
                _ => s.prunes.fix_first_facet = false,
            }
            let c = enumerate(&s).unwrap();
            assert!(c.exhausted);
            assert_eq!(forms(&c), forms(&reference), "{sizes:?} prune {which}");
            assert!(c.nodes >= reference.nodes);
        }
    }
}

#[test]
fn graph_prune_keeps_exactly_the_complete_members() {
    let base = spec(&[4, 3, 3], None);
    let all = enumerate(&base).unwrap();
    let mut pruned_spec = base.clone();
    pruned_spec.prunes.graph_completeness = true;
    let pruned = enumerate(&pruned_spec).unwrap();
    let passing: Vec<_> = all
        .classes
        .iter()
        .filter(|m| extra_vertex_class_check(&m.complex, &m.coloring).unwrap().verdict == Verdict::Pass)
        .map(|m| iso::canonical_form(&m.complex))
        .collect();
    assert_eq!(forms(&pruned), passing);
    assert!(!all.classes.is_empty());
}

#[test]
fn doubling_budget_or_relabeling_changes_nothing() {
    let base = spec(&[3, 3, 3], None);
    let reference = enumerate(&base).unwrap();
    let mut doubled = base.clone();
    doubled.limits.max_nodes = Some(2 * reference.nodes);
    let c = enumerate(&doubled).unwrap();
    assert!(c.exhausted);
    assert_eq!(c, reference);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let mut perm: Vec<usize> = (0..9).collect();
        perm.shuffle(&mut rng);
        let mut s = base.clone();
        s.relabel = Some(perm);
        let c = enumerate(&s).unwrap();
        assert!(c.exhausted);
        assert_eq!(forms(&c), forms(&reference));
    }
}

#[test]
fn census_is_independent_of_thread_count() {
    let mut s = spec(&[4, 3, 3], None);
    let mut runs = Vec::new();
    for jobs in [1, 2, 4] {
        s.jobs = jobs;
        runs.push(enumerate(&s).unwrap());
    }
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
}

#[test]
fn corrupt_member_names_its_predicate() {
    let s = spec(&[3, 3, 3], Some(0));
    let mut c = enumerate(&s).unwrap();
    let st = stacked_cross_polytopal_sphere(9, 3).unwrap();
    c.classes.push(CensusClass { complex: st.complex, coloring: st.coloring });
    let cert = verify_census(&c, &s);
    assert_eq!(cert.verdict, Verdict::Fail);
    assert_eq!(cert.evidence["failures"][0]["predicate"], "euler characteristic");
}

#[test]
fn census_directory_layout() {
    let s = spec(&[3, 3, 3], Some(0));
    let c = enumerate(&s).unwrap();
    let dir = tempfile::tempdir().unwrap();
    write_census_dir(dir.path(), &c, &s).unwrap();
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("census.json")).unwrap()).unwrap();
    assert_eq!(json["exhausted"], true);
    assert_eq!(json["classes"][0]["file"], "class_000.cplx");
    let text = std::fs::read_to_string(dir.path().join("class_000.cplx")).unwrap();
    let back = bcl_core::io::parse_complex(&text).unwrap();
    assert!(iso::is_isomorphic(&back.complex, &bm(3).unwrap().complex));
    assert!(bcl_core::coloring::validate(&back.complex, back.coloring.as_ref().unwrap()));
}
