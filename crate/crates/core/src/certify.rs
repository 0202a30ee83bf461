//! Instance checkers. Each returns a [`Certificate`] saying whether the
//! hypotheses and conclusion of a claim hold on the given input; none of
//! them asserts anything beyond that input.

use std::collections::VecDeque;

use num_rational::Rational64;
use serde_json::{json, Value};

use crate::certificate::{Certificate, InputsDigest, Verdict};
use crate::coloring::{self, Coloring};
use crate::complex::{binomial, Complex, Graph};
use crate::constructions;
use crate::error::{Error, Result};
use crate::face::Face;
use crate::homology::{self, betti_json, CoefficientField};
use crate::iso;

const Q: CoefficientField = CoefficientField::Rationals;

/// Three graphs on a common vertex set `U` with `|U| = 2s - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphTriple {
    pub u: Face,
    pub graphs: [Graph; 3],
    pub s: usize,
}

impl GraphTriple {
    pub fn new(u: Face, edges: [&[(usize, usize)]; 3], s: usize) -> Result<Self> {
        let graphs = [
            Graph::from_edges(u, edges[0])?,
            Graph::from_edges(u, edges[1])?,
            Graph::from_edges(u, edges[2])?,
        ];
        Ok(GraphTriple { u, graphs, s })
    }

    /// Checks every hypothesis, naming the first one that fails.
    pub fn check_hypotheses(&self) -> Result<()> {
        let bad = |m: String| Err(Error::HypothesisViolated(m));
        if self.s < 2 || self.u.len() != 2 * self.s - 1 {
            return bad(format!("|U| = {} but 2s - 1 = {} with s = {}", self.u.len(), 2 * self.s as i64 - 1, self.s));
        }
        for (i, g) in self.graphs.iter().enumerate() {
            if g.vertices() != self.u {
                return bad(format!("G{} is not on the vertex set U", i + 1));
            }
            if !g.is_connected() {
                return bad(format!("G{} is not connected", i + 1));
            }
        }
        for i in 0..3 {
            let (j, k) = others(i);
            for (a, b) in self.graphs[i].edges() {
                if !self.graphs[j].has_edge(a, b) && !self.graphs[k].has_edge(a, b) {
                    return bad(format!("edge {{{a},{b}}} of G{} lies in neither G{} nor G{}", i + 1, j + 1, k + 1));
                }
            }
        }
        for k in 0..3 {
            let (i, j) = others(k);
            let c = self.graphs[i].intersection(&self.graphs[j]).components().count();
            if c != self.s {
                return bad(format!("G{} ∩ G{} has {c} components, expected s = {}", i + 1, j + 1, self.s));
            }
        }
        Ok(())
    }
}

fn others(k: usize) -> (usize, usize) {
    match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Distinct `u_1, u_2, u_3` with `G_i \ {u_i}` disconnected: `u_k` is the
/// least singleton component of `G_i ∩ G_j`, `{i, j, k} = {1, 2, 3}`.
pub fn graph_lemma_witness(t: &GraphTriple) -> Result<(usize, usize, usize)> {
    t.check_hypotheses()?;
    let mut u = [0usize; 3];
    for (k, slot) in u.iter_mut().enumerate() {
        let (i, j) = others(k);
        let comps = t.graphs[i].intersection(&t.graphs[j]).components();
        *slot = comps
            .parts()
            .iter()
            .filter(|p| p.len() == 1)
            .filter_map(|p| p.min_vertex())
            .min()
            .ok_or_else(|| Error::HypothesisViolated(format!("G{} ∩ G{} has no isolated vertex", i + 1, j + 1)))?;
    }
    Ok((u[0], u[1], u[2]))
}

/// Components by breadth-first search on an adjacency list, independent of
/// [`Graph::components`].
pub fn brute_force_components(vertices: &[usize], edges: &[(usize, usize)]) -> usize {
    let mut seen = vec![false; vertices.len()];
    let mut count = 0;
    for start in 0..vertices.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for &(x, y) in edges {
                let other = if x == vertices[a] {
                    y
                } else if y == vertices[a] {
                    x
                } else {
                    continue;
                };
                if let Some(b) = vertices.iter().position(|&w| w == other) {
                    if !seen[b] {
                        seen[b] = true;
                        queue.push_back(b);
                    }
                }
            }
        }
    }
    count
}

fn components_without(g: &Graph, v: usize) -> usize {
    let verts: Vec<usize> = g.vertices().vertices().filter(|&w| w != v).collect();
    let edges: Vec<(usize, usize)> = g.edges().into_iter().filter(|&(a, b)| a != v && b != v).collect();
    brute_force_components(&verts, &edges)
}

pub fn graph_lemma_check(t: &GraphTriple) -> Result<Certificate> {
    let claim = "graph-lemma";
    let (u1, u2, u3) = graph_lemma_witness(t)?;
    let w = [u1, u2, u3];
    let after: Vec<usize> = (0..3).map(|i| components_without(&t.graphs[i], w[i])).collect();
    let distinct = u1 != u2 && u2 != u3 && u1 != u3;
    let ok = distinct && after.iter().all(|&c| c >= 2);
    let mut digest = InputsDigest::new(claim);
    digest.number("s", t.s as i64).text("U", &t.u.to_string());
    for (i, g) in t.graphs.iter().enumerate() {
        digest.text(&format!("G{}", i + 1), &format!("{:?}", g.edges()));
    }
    let evidence = json!({
        "s": t.s,
        "U": t.u.to_vec(),
        "witness": w,
        "distinct": distinct,
        "components_after_deletion": after,
    });
    Ok(Certificate::new(claim, digest.finish(), Verdict::from_bool(ok), evidence))
}

fn d_of(c: &Complex) -> usize {
    (c.dim() + 1).max(0) as usize
}

fn inapplicable(claim: &str, digest: String, reason: &str, mut evidence: Value) -> Certificate {
    evidence["reason"] = json!(reason);
    Certificate::new(claim, digest, Verdict::Inapplicable, evidence)
}

/// `2h_2 - (d-1)h_1 ≥ 4·C(d,2)`, equivalently `f_1 ≥ (3(d-1)/2)·f_0`, for a
/// balanced pure complex with `β_1(Q) ≠ 0`. With `t` given, the weaker bound
/// `4(t-1)/t·C(d,2)` is evaluated as well.
pub fn lbt_inequality_check(c: &Complex, kappa: &Coloring, t: Option<u64>) -> Result<Certificate> {
    let claim = "lower-bound-inequality";
    let mut digest = InputsDigest::new(claim);
    digest.complex(c).coloring(kappa);
    if let Some(t) = t {
        digest.number("t", t as i64);
    }
    let digest = digest.finish();
    if !c.is_pure() || !coloring::validate(c, kappa) {
        return Ok(inapplicable(claim, digest, "complex is not pure and balanced", json!({})));
    }
    let d = d_of(c) as i64;
    let h = c.h_vector()?;
    let f = c.f_vector();
    let lhs = 2 * h.get(2) - (d - 1) * h.get(1);
    let bound = 4 * binomial(d as u64, 2) as i64;
    let b = homology::betti(c, Q);
    let mut evidence = json!({
        "d": d,
        "h1": h.get(1),
        "h2": h.get(2),
        "f0": f.get(0),
        "f1": f.get(1),
        "lhs": lhs,
        "bound": bound,
        "equality": lhs == bound,
        "edge_form_holds": 2 * f.get(1) as i64 >= 3 * (d - 1) * f.get(0) as i64,
        "beta1_Q": b.reduced(1),
        "dimension_at_least_3": d >= 4,
    });
    if let Some(t) = t.filter(|&t| t >= 1) {
        let tb = Rational64::new(4 * (t as i64 - 1) * binomial(d as u64, 2) as i64, t as i64);
        evidence["t"] = json!(t);
        evidence["t_bound"] = json!(tb.to_string());
        evidence["t_bound_holds"] = json!(Rational64::from_integer(lhs) >= tb);
    }
    if b.reduced(1) == 0 {
        return Ok(inapplicable(claim, digest, "beta_1(Q) = 0", evidence));
    }
    Ok(Certificate::new(claim, digest, Verdict::from_bool(lhs >= bound), evidence))
}

/// `f_1(lk v) ≥ 7·C(d-1, 2)` for a vertex of a balanced complex with three
/// vertices of each color, `d ≥ 5`, whose link is a rational homology sphere.
pub fn balanced_link_lbt_check(c: &Complex, kappa: &Coloring, v: usize) -> Result<Certificate> {
    let claim = "link-edge-bound";
    let digest = InputsDigest::new(claim).complex(c).coloring(kappa).number("v", v as i64).finish();
    let d = d_of(c);
    let lk = c.link(Face::singleton(v))?;
    let f1 = lk.f_vector().get(1);
    let bound = 7 * binomial(d as u64 - 1, 2);
    let evidence = json!({"d": d, "v": v, "f1_link": f1, "bound": bound, "equality": f1 == bound});
    if !coloring::validate(c, kappa) || kappa.class_sizes().iter().any(|&s| s != 3) {
        return Ok(inapplicable(claim, digest, "needs a balanced complex with three vertices of each color", evidence));
    }
    if d < 5 {
        return Ok(inapplicable(claim, digest, "needs d >= 5", evidence));
    }
    if !homology::is_homology_sphere(&lk, Q)? {
        return Ok(inapplicable(claim, digest, "vertex link is not a rational homology sphere", evidence));
    }
    Ok(Certificate::new(claim, digest, Verdict::from_bool(f1 >= bound), evidence))
}

/// Hypotheses of the `3d`-vertex uniqueness statement: `3d` vertices,
/// balanced, rational homology manifold, `β_1 ≠ 0`, `β_2 = 0`. The evidence
/// also carries the structure the argument derives (complete `d`-partite
/// graph, component counts of intersections of links within each color
/// class) and whether the input is isomorphic to `BM_d`.
pub fn bm_uniqueness_hypotheses(c: &Complex, kappa: &Coloring) -> Result<Certificate> {
    let claim = "bm-uniqueness-hypotheses";
    let digest = InputsDigest::new(claim).complex(c).coloring(kappa).finish();
    let d = d_of(c);
    let three_d = c.num_vertices() == 3 * d;
    let balanced = coloring::validate(c, kappa);
    let manifold = c.is_pure() && homology::is_homology_manifold(c, Q)?;
    let b = homology::betti(c, Q);
    let beta1 = b.reduced(1) != 0;
    let beta2 = b.reduced(2) == 0;
    let hypotheses = three_d && balanced && manifold && beta1 && beta2;
    let complete = balanced && c.graph().is_complete_multipartite(&kappa.classes());
    let classes: Vec<Value> = if balanced {
        kappa.classes().iter().enumerate().map(|(i, &cls)| link_structure(c, i + 1, cls)).collect()
    } else {
        Vec::new()
    };
    let isomorphic = if hypotheses && 3 * d <= Face::MAX_VERTICES && d >= 3 {
        Some(iso::is_isomorphic(c, &constructions::bm(d)?.complex))
    } else {
        None
    };
    let evidence = json!({
        "d": d,
        "vertices": c.num_vertices(),
        "three_d_vertices": three_d,
        "balanced": balanced,
        "homology_manifold_Q": manifold,
        "betti_Q": betti_json(&b),
        "beta1_nonzero": beta1,
        "beta2_zero": beta2,
        "complete_multipartite": complete,
        "color_classes": classes,
        "isomorphic_to_bm": isomorphic,
    });
    Ok(Certificate::new(claim, digest, Verdict::from_bool(hypotheses), evidence))
}

/// Component counts of `Δ_{i,j} = lk v_i ∩ lk v_j` and of the triple
/// intersection for a color class `{v_1, v_2, v_3}`.
fn link_structure(c: &Complex, color: usize, class: Face) -> Value {
    let vs = class.to_vec();
    if vs.len() != 3 {
        return json!({"color": color, "size": vs.len()});
    }
    let links: Vec<Complex> = vs.iter().map(|&v| c.link(Face::singleton(v)).expect("vertex")).collect();
    let pair = |i: usize, j: usize| links[i].intersection(&links[j]);
    let pairs: Vec<usize> = [(0, 1), (0, 2), (1, 2)].iter().map(|&(i, j)| pair(i, j).connected_components().count()).collect();
    let triple = pair(0, 1).intersection(&links[2]);
    let comps = triple.connected_components();
    let sizes: Vec<usize> = comps.parts().iter().map(|p| p.len()).collect();
    let s = pairs[0];
    let consistent = pairs.iter().all(|&p| p == s) && s >= 2 && comps.count() == 2 * s - 1;
    json!({
        "color": color,
        "pair_components": pairs,
        "triple_components": comps.count(),
        "triple_component_sizes": sizes,
        "s_consistent": consistent,
    })
}

/// For a balanced complex on `3d + 1` vertices: the unique color class `W`
/// with four vertices exists, `f_1(Δ \ W) = 9·C(d-1, 2)`, and the graph of
/// `Δ \ W` is complete `(d-1)`-partite.
pub fn extra_vertex_class_check(c: &Complex, kappa: &Coloring) -> Result<Certificate> {
    let claim = "extra-vertex-class";
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let digest = InputsDigest::new(claim).complex(c).coloring(kappa).finish();
    let d = d_of(c);
    if c.num_vertices() != 3 * d + 1 || !coloring::validate(c, kappa) {
        let ev = json!({"d": d, "vertices": c.num_vertices()});
        return Ok(inapplicable(claim, digest, "needs a balanced complex on 3d + 1 vertices", ev));
    }
    let w = kappa.unique_class_of_size(4).ok_or(Error::NoUniqueLargeClass(4))?;
    let rest = c.delete(w);
    let f1 = rest.f_vector().get(1);
    let target = 9 * binomial(d as u64 - 1, 2);
    let parts: Vec<Face> = kappa.classes().into_iter().filter(|&cls| cls != w).collect();
    let complete = rest.graph().is_complete_multipartite(&parts);
    let evidence = json!({
        "d": d,
        "W": w.to_vec(),
        "f1_deleted": f1,
        "target": target,
        "complete_multipartite": complete,
    });
    Ok(Certificate::new(claim, digest, Verdict::from_bool(f1 == target && complete), evidence))
}

/// The facet-count equation `target = (4 + k)·2^{d-1} - k·e` has no solution
/// `k ∈ {1, 2, 3, 4}` for `d > 5`. The stated reading uses
/// `target = 6·2^{d-1} + 6` and `e = 1`. The counts behind both sides are
/// also enumerated directly (`BM_{d-1}` has `3·2^{d-1} - 6` facets, the two
/// candidate links have `2^{d-1}` and `2^d - 2`), which gives
/// `target = 6·2^{d-1} - 6` and `e = 2`; all four combinations are reported.
pub fn facet_count_contradiction(d: usize) -> Result<Certificate> {
    let claim = "facet-count-contradiction";
    let digest = InputsDigest::new(claim).number("d", d as i64).finish();
    if d <= 5 || d > 40 {
        return Ok(inapplicable(claim, digest, "needs 5 < d <= 40", json!({"d": d})));
    }
    let p = 1i64 << (d - 1);
    let enumerated = if 3 * (d - 1) <= Face::MAX_VERTICES {
        let bm = constructions::bm(d - 1)?.complex.num_facets() as i64;
        let cross = constructions::cross_polytope_boundary(d - 1)?.complex.num_facets() as i64;
        let stacked = constructions::stacked_cross_polytopal_sphere(3 * (d - 1), d - 1)?.complex.num_facets() as i64;
        Some((bm, cross, stacked))
    } else {
        None
    };
    let reading = |name: &str, target: i64, excess: i64| {
        let residuals: Vec<i64> = (1..=4).map(|k| (4 + k) * p - k * excess - target).collect();
        let values: Vec<i64> = (1..=4).map(|k| (4 + k) * p - k * excess).collect();
        let solutions: Vec<i64> = (1..=4).filter(|k| residuals[*k as usize - 1] == 0).collect();
        json!({"reading": name, "target": target, "rhs": values, "residuals": residuals, "solutions": solutions})
    };
    let readings = vec![
        reading("stated", 6 * p + 6, 1),
        reading("enumerated target", 6 * p - 6, 1),
        reading("enumerated link", 6 * p + 6, 2),
        reading("enumerated both", 6 * p - 6, 2),
    ];
    let stated_ok = readings[0]["solutions"].as_array().is_some_and(|s| s.is_empty());
    let all_ok = readings.iter().all(|r| r["solutions"].as_array().is_some_and(|s| s.is_empty()));
    let evidence = json!({
        "d": d,
        "readings": readings,
        "no_solution_in_any_reading": all_ok,
        "enumerated_bm_facets": enumerated.map(|e| e.0),
        "enumerated_cross_polytope_facets": enumerated.map(|e| e.1),
        "enumerated_stacked_facets": enumerated.map(|e| e.2),
    });
    Ok(Certificate::new(claim, digest, Verdict::from_bool(stated_ok), evidence))
}

/// Buchsbaum* of `Δ_S` for a Buchsbaum* balanced complex and a color set
/// `S` given as a bitset (bit `c - 1` for color `c`).
pub fn rank_selected_buchsbaum_star_check(c: &Complex, kappa: &Coloring, colors: u64, field: CoefficientField) -> Result<Certificate> {
    let claim = "rank-selected-buchsbaum-star";
    if !homology::is_buchsbaum_star(c, field)? {
        return Err(Error::NotBuchsbaumStar(field.to_string()));
    }
    let sel = coloring::rank_selected(c, kappa, colors);
    let ok = match homology::is_buchsbaum_star(&sel, field) {
        Ok(b) => b,
        Err(Error::NotBuchsbaum(_)) | Err(Error::NotPure) => false,
        Err(e) => return Err(e),
    };
    let s: Vec<usize> = (0..64).filter(|&i| colors >> i & 1 == 1).map(|i| i + 1).collect();
    let digest = InputsDigest::new(claim)
        .complex(c)
        .coloring(kappa)
        .text("S", &format!("{s:?}"))
        .text("field", &field.to_string())
        .finish();
    let evidence = json!({"S": s, "field": field.to_string(), "f_selected": sel.f_vector().counts()});
    Ok(Certificate::new(claim, digest, Verdict::from_bool(ok), evidence))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{bm, cross_polytope_boundary};

    fn example_triple() -> GraphTriple {
        let u = Face::from_vertices([1, 2, 3]).unwrap();
        GraphTriple::new(u, [&[(1, 2), (2, 3)], &[(1, 2), (1, 3)], &[(2, 3), (1, 3)]], 2).unwrap()
    }

    #[test]
    fn hand_checked_triple() {
        let t = example_triple();
        assert_eq!(graph_lemma_witness(&t).unwrap(), (2, 1, 3));
        let cert = graph_lemma_check(&t).unwrap();
        assert!(cert.passed());
        assert_eq!(cert.evidence["components_after_deletion"], json!([2, 2, 2]));
    }

    #[test]
    fn disconnected_graph_violates_hypotheses() {
        let u = Face::from_vertices([1, 2, 3]).unwrap();
        let t = GraphTriple::new(u, [&[(1, 2)], &[(1, 2), (1, 3)], &[(2, 3), (1, 3)]], 2).unwrap();
        match graph_lemma_witness(&t) {
            Err(Error::HypothesisViolated(m)) => assert!(m.contains("G1 is not connected"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn brute_force_components_counts() {
        assert_eq!(brute_force_components(&[1, 2, 3, 4], &[(1, 2), (3, 4)]), 2);
        assert_eq!(brute_force_components(&[1, 2, 3], &[]), 3);
        assert_eq!(brute_force_components(&[], &[]), 0);
    }

    #[test]
    fn lbt_on_bm3_and_octahedron() {
        let b = bm(3).unwrap();
        let cert = lbt_inequality_check(&b.complex, &b.coloring, Some(2)).unwrap();
        assert!(cert.passed());
        assert_eq!(cert.evidence["lhs"], 12);
        assert_eq!(cert.evidence["t_bound"], "6");
        let oct = cross_polytope_boundary(3).unwrap();
        let cert = lbt_inequality_check(&oct.complex, &oct.coloring, None).unwrap();
        assert_eq!(cert.verdict, Verdict::Inapplicable);
    }

    #[test]
    fn link_bound_regimes() {
        let b = bm(3).unwrap();
        let cert = balanced_link_lbt_check(&b.complex, &b.coloring, 0).unwrap();
        assert_eq!(cert.verdict, Verdict::Inapplicable);
        assert_eq!(cert.evidence["f1_link"], 6);
        assert_eq!(cert.evidence["bound"], 7);
        let oct = cross_polytope_boundary(3).unwrap();
        assert_eq!(balanced_link_lbt_check(&oct.complex, &oct.coloring, 0).unwrap().verdict, Verdict::Inapplicable);
        let b5 = bm(5).unwrap();
        let cert = balanced_link_lbt_check(&b5.complex, &b5.coloring, 7).unwrap();
        assert!(cert.passed());
        assert_eq!(cert.evidence["equality"], true);
    }

    #[test]
    fn facet_count_arithmetic_at_six() {
        let cert = facet_count_contradiction(6).unwrap();
        assert!(cert.passed());
        let stated = &cert.evidence["readings"][0];
        assert_eq!(stated["target"], 198);
        assert_eq!(stated["rhs"], json!([159, 190, 221, 252]));
        assert_eq!(cert.evidence["enumerated_bm_facets"], 3 * 32 - 6);
        assert_eq!(cert.evidence["enumerated_stacked_facets"], 64 - 2);
        assert_eq!(facet_count_contradiction(5).unwrap().verdict, Verdict::Inapplicable);
    }

    #[test]
    fn uniqueness_hypotheses_on_bm4() {
        let b = bm(4).unwrap();
        let cert = bm_uniqueness_hypotheses(&b.complex, &b.coloring).unwrap();
        assert!(cert.passed());
        assert_eq!(cert.evidence["isomorphic_to_bm"], true);
        assert_eq!(cert.evidence["color_classes"][0]["pair_components"], json!([2, 2, 2]));
        assert_eq!(cert.evidence["color_classes"][0]["triple_components"], 3);
    }

    #[test]
    fn uniqueness_structure_on_bm5_and_a_sphere() {
        let b = bm(5).unwrap();
        let cert = bm_uniqueness_hypotheses(&b.complex, &b.coloring).unwrap();
        assert!(cert.passed());
        let class = &cert.evidence["color_classes"][2];
        assert_eq!(class["pair_components"], json!([2, 2, 2]));
        assert_eq!(class["triple_component_sizes"], json!([4, 4, 4]));
        let st = constructions::stacked_cross_polytopal_sphere(15, 5).unwrap();
        let cert = bm_uniqueness_hypotheses(&st.complex, &st.coloring).unwrap();
        assert_eq!(cert.verdict, Verdict::Fail);
        assert_eq!(cert.evidence["beta1_nonzero"], false);
    }

    #[test]
    fn extra_vertex_class_fixtures() {
        // Classes a = 0..4, b = 4..7, c = 7..10; every b-c edge is present.
        let facets: Vec<Vec<usize>> = (0..3).flat_map(|i| (0..3).map(move |j| vec![(i + j) % 4, 4 + i, 7 + j])).collect();
        let c = Complex::from_vertex_lists(10, &facets).unwrap();
        let k = Coloring::new(vec![1, 1, 1, 1, 2, 2, 2, 3, 3, 3]).unwrap();
        let cert = extra_vertex_class_check(&c, &k).unwrap();
        assert!(cert.passed());
        assert_eq!(cert.evidence["W"], json!([0, 1, 2, 3]));
        let b3 = bm(3).unwrap();
        let mut with_point = b3.complex.facets().to_vec();
        with_point.push(Face::singleton(9));
        let c2 = Complex::from_facets(10, with_point).unwrap();
        let mut colors = b3.coloring.colors().to_vec();
        colors.push(1);
        assert_eq!(extra_vertex_class_check(&c2, &Coloring::new(colors).unwrap()).unwrap_err(), Error::NotPure);
        let even = Coloring::new(vec![1, 1, 1, 2, 2, 2, 2, 3, 3, 3]).unwrap();
        let c3 = Complex::from_vertex_lists(10, &[vec![0, 3, 7], vec![1, 4, 8], vec![2, 5, 9], vec![0, 6, 9]]).unwrap();
        assert!(extra_vertex_class_check(&c3, &even).unwrap().verdict == Verdict::Fail);
    }
}
