//! Cross-polytope boundaries and the complexes glued from them.
//!
//! Vertex numbering is fixed: the cross-polytope has `u_i = i - 1` and
//! `v_i = d + i - 1`; `BM_d` has `x_i = i - 1`, `y_i = d + i - 1`,
//! `z_i = 2d + i - 1`; layer `ℓ` of a stacked cross-polytopal sphere holds
//! `ℓ·d + i - 1`. Vertex `i`-indexed names always carry color `i`.

use std::collections::{HashMap, HashSet};

use crate::coloring::{self, Coloring};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::Face;

/// A complex together with a balanced coloring and vertex names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledComplex {
    pub complex: Complex,
    pub coloring: Coloring,
    pub names: Vec<String>,
}

impl LabeledComplex {
    pub fn new(complex: Complex, coloring: Coloring, names: Vec<String>) -> Result<Self> {
        if !coloring::validate(&complex, &coloring) {
            return Err(Error::InvalidColoring("not a proper coloring with dim + 1 colors".into()));
        }
        if names.len() != complex.n() || names.iter().collect::<HashSet<_>>().len() != names.len() {
            return Err(Error::BadParameters("vertex names must be distinct, one per vertex".into()));
        }
        Ok(LabeledComplex { complex, coloring, names })
    }

    /// Number of colors, `dim + 1`.
    pub fn d(&self) -> usize {
        (self.complex.dim() + 1).max(0) as usize
    }

    pub fn vertex_named(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn cross_polytope_named(d: usize, u: &dyn Fn(usize) -> String, v: &dyn Fn(usize) -> String) -> Result<LabeledComplex> {
    if d == 0 {
        return Err(Error::BadDimension(d));
    }
    if 2 * d > Face::MAX_VERTICES {
        return Err(Error::TooManyVertices(2 * d));
    }
    let facets = (0..1u64 << d).map(|m| {
        Face::from_bits((0..d).fold(0u64, |acc, i| acc | 1 << if m >> i & 1 == 0 { i } else { d + i }))
    });
    let complex = Complex::from_facets(2 * d, facets)?;
    let coloring = Coloring::new((0..2 * d).map(|v| v % d + 1).collect())?;
    let names = (1..=d).map(u).chain((1..=d).map(v)).collect();
    LabeledComplex::new(complex, coloring, names)
}

/// Boundary of the `d`-dimensional cross-polytope: facets pick one of
/// `u_i, v_i` for every `i`.
pub fn cross_polytope_boundary(d: usize) -> Result<LabeledComplex> {
    cross_polytope_named(d, &|i| format!("u{i}"), &|i| format!("v{i}"))
}

fn check_facet(c: &Complex, f: Face) -> Result<()> {
    if c.is_facet(f) {
        Ok(())
    } else {
        Err(Error::NotAFacet(f))
    }
}

/// Turns `(a, b)` pairs into a map from `from` onto `to`, checking that it
/// is a color-preserving bijection.
fn matching_map(
    pairs: &[(usize, usize)],
    from: Face,
    to: Face,
    color_from: &Coloring,
    color_to: &Coloring,
) -> Result<HashMap<usize, usize>> {
    let map: HashMap<usize, usize> = pairs.iter().copied().collect();
    let image: HashSet<usize> = map.values().copied().collect();
    let domain_ok = map.len() == pairs.len() && map.len() == from.len() && map.keys().all(|&a| from.contains(a));
    if !domain_ok || image.len() != to.len() || image.iter().any(|&b| !to.contains(b)) {
        return Err(Error::BadParameters(format!("matching is not a bijection from {from} to {to}")));
    }
    for (&a, &b) in &map {
        if color_from.color(a) != color_to.color(b) {
            return Err(Error::ColorMismatch(format!(
                "vertex {a} has color {} but {b} has color {}",
                color_from.color(a),
                color_to.color(b)
            )));
        }
    }
    Ok(map)
}

fn is_pseudomanifold(c: &Complex) -> bool {
    ridge_misfit(c).is_none()
}

/// A ridge that does not lie in exactly two facets, with its degree.
fn ridge_misfit(c: &Complex) -> Option<(Face, usize)> {
    let mut degree: HashMap<Face, usize> = HashMap::new();
    for &f in c.facets() {
        for v in f.vertices() {
            *degree.entry(f.without(v)).or_default() += 1;
        }
    }
    let mut bad: Vec<(Face, usize)> = degree.into_iter().filter(|&(_, k)| k != 2).collect();
    bad.sort_unstable();
    bad.into_iter().next()
}

/// Connected sum: removes `F_A` from `A` and `F_B` from `B` and identifies
/// `b` with `a` for every pair `(a, b)` of the matching. Vertices of `A` keep
/// their ids; the unmatched vertices of `B` follow in increasing order.
pub fn connected_sum(
    a: &LabeledComplex,
    b: &LabeledComplex,
    fa: Face,
    fb: Face,
    matching: &[(usize, usize)],
) -> Result<LabeledComplex> {
    check_facet(&a.complex, fa)?;
    check_facet(&b.complex, fb)?;
    let map = matching_map(matching, fa, fb, &a.coloring, &b.coloring)?;
    let inverse: HashMap<usize, usize> = map.iter().map(|(&x, &y)| (y, x)).collect();
    let na = a.complex.n();
    let mut b_to_new = vec![usize::MAX; b.complex.n()];
    let mut next = na;
    for (v, slot) in b_to_new.iter_mut().enumerate() {
        *slot = match inverse.get(&v) {
            Some(&x) => x,
            None => {
                next += 1;
                next - 1
            }
        };
    }
    if next > Face::MAX_VERTICES {
        return Err(Error::TooManyVertices(next));
    }
    let rename = |f: Face| Face::from_bits(f.vertices().fold(0u64, |acc, v| acc | 1 << b_to_new[v]));
    let a_faces: HashSet<Face> = a.complex.all_faces().collect();
    let b_rest = Complex::from_raw(b.complex.n(), b.complex.facets().iter().copied().filter(|&f| f != fb).collect());
    for g in b_rest.all_faces() {
        let image = rename(g);
        if a_faces.contains(&image) && !g.is_subset_of(fb) {
            return Err(Error::FaceCollision(image));
        }
    }
    let facets: Vec<Face> = a
        .complex
        .facets()
        .iter()
        .copied()
        .filter(|&f| f != fa)
        .chain(b_rest.facets().iter().map(|&g| rename(g)))
        .collect();
    let complex = Complex::from_raw(next, facets);
    if is_pseudomanifold(&a.complex) && is_pseudomanifold(&b.complex) {
        if let Some((ridge, k)) = ridge_misfit(&complex) {
            return Err(Error::NotLocallyValid { face: ridge, reason: format!("ridge lies in {k} facets") });
        }
    }
    let mut colors = a.coloring.colors().to_vec();
    colors.resize(next, 0);
    let mut names = a.names.clone();
    names.resize(next, String::new());
    for v in 0..b.complex.n() {
        if b_to_new[v] >= na {
            colors[b_to_new[v]] = b.coloring.color(v);
            names[b_to_new[v]] = b.names[v].clone();
        }
    }
    LabeledComplex::new(complex, Coloring::new(colors)?, names)
}

/// Handle addition: removes the disjoint facets `F` and `F'` and identifies
/// `v'` with `v` for every pair `(v, v')`, `v ∈ F`, `v' ∈ F'`. The surviving
/// vertices are renumbered in increasing order.
///
/// The glued complex is validated eagerly: no face may contain an
/// identified pair, no two faces other than matched subfaces of `F` and
/// `F'` may merge, and if the input was a pseudomanifold every ridge of the
/// result must still lie in exactly two facets.
pub fn handle_addition(a: &LabeledComplex, f: Face, f2: Face, matching: &[(usize, usize)]) -> Result<LabeledComplex> {
    check_facet(&a.complex, f)?;
    check_facet(&a.complex, f2)?;
    if !f.is_disjoint(f2) {
        return Err(Error::SharedVertices(f, f2));
    }
    let map = matching_map(matching, f, f2, &a.coloring, &a.coloring)?;
    let n = a.complex.n();
    let mut to = (0..n).collect::<Vec<usize>>();
    for (&v, &w) in &map {
        to[w] = v;
    }
    let image = |g: Face| Face::from_bits(g.vertices().fold(0u64, |acc, v| acc | 1 << to[v]));
    let rest = Complex::from_raw(n, a.complex.facets().iter().copied().filter(|&g| g != f && g != f2).collect());
    let mut seen: HashMap<Face, Face> = HashMap::new();
    for g in rest.all_faces() {
        let im = image(g);
        if im.len() != g.len() {
            let (v, w) = map.iter().find(|(&v, &w)| g.contains(v) && g.contains(w)).map(|(&v, &w)| (v, w)).unwrap();
            return Err(Error::NotLocallyValid {
                face: g,
                reason: format!("contains both {v} and {w}, which are identified"),
            });
        }
        if let Some(&other) = seen.get(&im) {
            let matched = (other.is_subset_of(f) && g.is_subset_of(f2)) || (other.is_subset_of(f2) && g.is_subset_of(f));
            if !matched {
                return Err(Error::FaceCollision(im));
            }
        } else {
            seen.insert(im, g);
        }
    }
    let glued = Complex::from_raw(n, rest.facets().iter().map(|&g| image(g)).collect());
    let keep = Face::first_n(n).difference(f2);
    let old: Vec<usize> = keep.to_vec();
    let mut new_id = vec![usize::MAX; n];
    for (i, &v) in old.iter().enumerate() {
        new_id[v] = i;
    }
    let complex = glued.relabel(&new_id.iter().map(|&x| if x == usize::MAX { 0 } else { x }).collect::<Vec<_>>(), old.len())?;
    if is_pseudomanifold(&a.complex) {
        if let Some((ridge, k)) = ridge_misfit(&complex) {
            return Err(Error::NotLocallyValid { face: ridge, reason: format!("ridge lies in {k} facets") });
        }
    }
    let coloring = Coloring::new(old.iter().map(|&v| a.coloring.color(v)).collect())?;
    let names = old.iter().map(|&v| a.names[v].clone()).collect();
    LabeledComplex::new(complex, coloring, names)
}

/// `ST^×(n, d-1)`: the connected sum of `n/d - 1` boundaries of
/// `d`-cross-polytopes, each glued along its all-`u` facet onto the
/// previous copy's all-`v` facet, identifying vertices by color.
pub fn stacked_cross_polytopal_sphere(n: usize, d: usize) -> Result<LabeledComplex> {
    if d == 0 || !n.is_multiple_of(d) || n < 2 * d {
        return Err(Error::BadParameters(format!("need d | n and n >= 2d, got n = {n}, d = {d}")));
    }
    if n > Face::MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    let copies = n / d - 1;
    let layer = |l: usize| move |i: usize| format!("w{l}_{i}");
    let mut acc = cross_polytope_named(d, &layer(0), &layer(1))?;
    for j in 1..copies {
        let next = cross_polytope_named(d, &layer(j), &layer(j + 1))?;
        let fa = Face::from_bits(((1u64 << d) - 1) << (j * d));
        let fb = Face::first_n(d);
        let matching: Vec<(usize, usize)> = (0..d).map(|i| (j * d + i, i)).collect();
        acc = connected_sum(&acc, &next, fa, fb, &matching)?;
    }
    Ok(acc)
}

fn bm_names(d: usize) -> Vec<String> {
    ["x", "y", "z"].iter().flat_map(|c| (1..=d).map(move |i| format!("{c}{i}"))).collect()
}

/// `BM_d` from its facet description: the three cross-polytope families on
/// `{x, y}`, `{y, z}` and `{z, x}`, each without its two single-letter facets.
pub fn bm(d: usize) -> Result<LabeledComplex> {
    if d < 3 {
        return Err(Error::BadDimension(d));
    }
    if 3 * d > Face::MAX_VERTICES {
        return Err(Error::TooManyVertices(3 * d));
    }
    let full = (1u64 << d) - 1;
    let mut facets = Vec::with_capacity(3 * (1 << d));
    for (a, b) in [(0usize, 1usize), (1, 2), (2, 0)] {
        for m in 1..full {
            let bits = (0..d).fold(0u64, |acc, i| acc | 1 << if m >> i & 1 == 0 { a * d + i } else { b * d + i });
            facets.push(Face::from_bits(bits));
        }
    }
    let complex = Complex::from_facets(3 * d, facets)?;
    let coloring = Coloring::new((0..3 * d).map(|v| v % d + 1).collect())?;
    LabeledComplex::new(complex, coloring, bm_names(d))
}

/// `BM_d` by two connected sums and a handle addition, starting from
/// cross-polytopes on `{x, y}`, `{y', z}` and `{z', x'}`.
pub fn bm_by_gluing(d: usize) -> Result<LabeledComplex> {
    if d < 3 {
        return Err(Error::BadDimension(d));
    }
    let named = |p: &'static str| move |i: usize| format!("{p}{i}");
    let d1 = cross_polytope_named(d, &named("x"), &named("y"))?;
    let d2 = cross_polytope_named(d, &named("y'"), &named("z"))?;
    let d3 = cross_polytope_named(d, &named("z'"), &named("x'"))?;
    let block = |k: usize| Face::from_bits(((1u64 << d) - 1) << (k * d));
    let by_color = |k: usize, l: usize| (0..d).map(move |i| (k * d + i, l * d + i)).collect::<Vec<_>>();
    // y_i (ids d..2d) meets y'_i (the u-block of the second copy)
    let s1 = connected_sum(&d1, &d2, block(1), block(0), &by_color(1, 0))?;
    // z_i (ids 2d..3d) meets z'_i; x'_i lands on 3d..4d
    let s2 = connected_sum(&s1, &d3, block(2), block(0), &by_color(2, 0))?;
    handle_addition(&s2, block(0), block(3), &by_color(0, 3))
}
