//! Finite simplicial complexes on at most 64 vertices.
//!
//! A [`Complex`] is described by its inclusion-maximal faces. Lower faces are
//! materialized per dimension the first time they are asked for and cached;
//! the cache is a [`OnceLock`], so shared complexes can be queried from many
//! threads.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::face::Face;

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Binomial coefficient extended by zero to negative arguments.
pub fn binomial_i(n: i64, k: i64) -> i64 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binomial(n as u64, k as u64) as i64
    }
}

pub struct Complex {
    n: usize,
    facets: Vec<Face>,
    faces: OnceLock<Vec<Vec<Face>>>,
}

impl Clone for Complex {
    fn clone(&self) -> Self {
        Complex { n: self.n, facets: self.facets.clone(), faces: self.faces.clone() }
    }
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.facets == other.facets
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Complex").field("n", &self.n).field("facets", &self.facets).finish()
    }
}

/// Keeps the inclusion-maximal members of `faces`, sorted by bit pattern.
fn maximal_faces(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    faces.dedup();
    let top = faces.first().map_or(0, |f| f.len());
    let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
    for f in faces {
        if f.len() == top || !kept.iter().any(|g| f.is_subset_of(*g)) {
            kept.push(f);
        }
    }
    kept.sort_unstable();
    kept
}

impl Complex {
    /// Builds a complex on the vertex range `0..n` from a set of faces.
    ///
    /// Faces that are contained in other given faces are absorbed rather than
    /// rejected, so unions of facet lists can be passed directly.
    pub fn from_facets<I: IntoIterator<Item = Face>>(n: usize, facets: I) -> Result<Complex> {
        if n > Face::MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let facets: Vec<Face> = facets.into_iter().collect();
        if facets.is_empty() {
            return Err(Error::EmptyInput);
        }
        let range = Face::first_n(n);
        for f in &facets {
            if !f.is_subset_of(range) {
                let id = f.difference(range).min_vertex().unwrap_or(0);
                return Err(Error::BadVertex { id, n });
            }
        }
        Ok(Complex::from_raw(n, facets))
    }

    /// Convenience wrapper taking vertex lists.
    pub fn from_vertex_lists(n: usize, facets: &[Vec<usize>]) -> Result<Complex> {
        let mut out = Vec::with_capacity(facets.len());
        for f in facets {
            for &v in f {
                if v >= n {
                    return Err(Error::BadVertex { id: v, n });
                }
            }
            out.push(Face::from_vertices(f.iter().copied())?);
        }
        Complex::from_facets(n, out)
    }

    /// Internal constructor: vertices already validated, facets may be
    /// non-maximal or empty (the void complex).
    pub(crate) fn from_raw(n: usize, facets: Vec<Face>) -> Complex {
        Complex { n, facets: maximal_faces(facets), faces: OnceLock::new() }
    }

    /// The complex `{∅}`, which has no vertices but does contain the empty face.
    pub fn empty(n: usize) -> Complex {
        Complex::from_raw(n, vec![Face::EMPTY])
    }

    /// The void complex, with no faces at all.
    pub fn void(n: usize) -> Complex {
        Complex::from_raw(n, Vec::new())
    }

    /// The full simplex on `face`.
    pub fn simplex(n: usize, face: Face) -> Complex {
        Complex::from_raw(n, vec![face])
    }

    /// Size of the ambient vertex range `0..n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension; `-1` for `{∅}` and the void complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        match self.facets.first() {
            None => true,
            Some(f) => self.facets.iter().all(|g| g.len() == f.len()),
        }
    }

    /// Vertices that lie in some face.
    pub fn vertex_set(&self) -> Face {
        self.facets.iter().fold(Face::EMPTY, |acc, f| acc.union(*f))
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_set().len()
    }

    pub fn contains_face(&self, face: Face) -> bool {
        self.facets.iter().any(|f| face.is_subset_of(*f))
    }

    pub fn is_facet(&self, face: Face) -> bool {
        self.facets.binary_search(&face).is_ok()
    }

    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.facets.iter().all(|f| other.contains_face(*f))
    }

    /// All faces, grouped by cardinality: entry `k` holds the faces with `k`
    /// vertices, sorted by bit pattern. Entry 0 is `[∅]` unless the complex
    /// is void.
    pub fn faces_by_size(&self) -> &[Vec<Face>] {
        self.faces.get_or_init(|| {
            let top = self.facets.iter().map(|f| f.len()).max();
            let Some(top) = top else { return Vec::new() };
            let mut levels: Vec<Vec<Face>> = vec![Vec::new(); top + 1];
            let mut current: HashSet<Face> = HashSet::new();
            for k in (0..=top).rev() {
                current.extend(self.facets.iter().copied().filter(|f| f.len() == k));
                let mut level: Vec<Face> = current.iter().copied().collect();
                level.sort_unstable();
                let mut next = HashSet::with_capacity(level.len() * 2);
                if k > 0 {
                    for f in &level {
                        for v in f.vertices() {
                            next.insert(f.without(v));
                        }
                    }
                }
                levels[k] = level;
                current = next;
            }
            levels
        })
    }

    /// Faces with exactly `k` vertices.
    pub fn faces_of_size(&self, k: usize) -> &[Face] {
        self.faces_by_size().get(k).map_or(&[], |v| v.as_slice())
    }

    /// Faces of dimension `i` (that is, with `i + 1` vertices).
    pub fn faces_of_dim(&self, i: isize) -> &[Face] {
        if i < -1 {
            return &[];
        }
        self.faces_of_size((i + 1) as usize)
    }

    /// Every face, in order of increasing size.
    pub fn all_faces(&self) -> impl Iterator<Item = Face> + '_ {
        self.faces_by_size().iter().flatten().copied()
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.faces_by_size().iter().map(|l| l.len() as u64).collect())
    }

    /// h-vector of a pure complex, with `d = dim + 1`.
    pub fn h_vector(&self) -> Result<HVector> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        let d = (self.dim() + 1).max(0) as usize;
        Ok(self.f_vector().h_vector(d))
    }

    /// `{τ − σ : σ ⊆ τ ∈ C}`.
    pub fn link(&self, sigma: Face) -> Result<Complex> {
        if !self.contains_face(sigma) {
            return Err(Error::NotAFace(sigma));
        }
        let facets = self
            .facets
            .iter()
            .filter(|f| sigma.is_subset_of(**f))
            .map(|f| f.difference(sigma))
            .collect();
        Ok(Complex::from_raw(self.n, facets))
    }

    /// `{τ : σ ∪ τ ∈ C}`, the closed star.
    pub fn star(&self, sigma: Face) -> Result<Complex> {
        if !self.contains_face(sigma) {
            return Err(Error::NotAFace(sigma));
        }
        let facets = self.facets.iter().copied().filter(|f| sigma.is_subset_of(*f)).collect();
        Ok(Complex::from_raw(self.n, facets))
    }

    /// `{τ ∈ C : σ ⊄ τ}`. For `σ = ∅` this is the void complex.
    pub fn contrastar(&self, sigma: Face) -> Result<Complex> {
        if !self.contains_face(sigma) {
            return Err(Error::NotAFace(sigma));
        }
        let mut facets = Vec::new();
        for &f in &self.facets {
            if sigma.is_subset_of(f) {
                facets.extend(sigma.vertices().map(|v| f.without(v)));
            } else {
                facets.push(f);
            }
        }
        Ok(Complex::from_raw(self.n, facets))
    }

    /// `C \ W = {σ : σ ∩ W = ∅}`.
    pub fn delete(&self, w: Face) -> Complex {
        Complex::from_raw(self.n, self.facets.iter().map(|f| f.difference(w)).collect())
    }

    /// `C[W] = {σ : σ ⊆ W}`.
    pub fn restrict(&self, w: Face) -> Complex {
        Complex::from_raw(self.n, self.facets.iter().map(|f| f.intersection(w)).collect())
    }

    /// Faces common to both complexes.
    pub fn intersection(&self, other: &Complex) -> Complex {
        let mut facets = Vec::with_capacity(self.facets.len());
        for &f in &self.facets {
            for &g in &other.facets {
                facets.push(f.intersection(g));
            }
        }
        Complex::from_raw(self.n.max(other.n), facets)
    }

    pub fn union(&self, other: &Complex) -> Complex {
        let facets = self.facets.iter().chain(other.facets.iter()).copied().collect();
        Complex::from_raw(self.n.max(other.n), facets)
    }

    /// Faces of size `k + 1` that are not in the complex although all their
    /// proper subsets are.
    pub fn missing_faces(&self, k: usize) -> Vec<Face> {
        if k == 0 {
            let support = self.vertex_set();
            let mut out: Vec<Face> = (0..self.n)
                .filter(|&v| !support.contains(v))
                .map(Face::singleton)
                .collect();
            if self.is_void() {
                out.clear();
            }
            return out;
        }
        let lower: HashSet<Face> = self.faces_of_size(k).iter().copied().collect();
        let same: HashSet<Face> = self.faces_of_size(k + 1).iter().copied().collect();
        let support = self.vertex_set();
        let mut out = Vec::new();
        for &tau in self.faces_of_size(k) {
            let start = tau.max_vertex().map_or(0, |m| m + 1);
            for v in support.vertices().filter(|&v| v >= start) {
                let cand = tau.with(v);
                if same.contains(&cand) {
                    continue;
                }
                if cand.vertices().all(|u| lower.contains(&cand.without(u))) {
                    out.push(cand);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The 1-skeleton.
    pub fn graph(&self) -> Graph {
        let mut g = Graph::new(self.vertex_set());
        for &e in self.faces_of_size(2) {
            let vs = e.to_vec();
            g.add_edge(vs[0], vs[1]);
        }
        g
    }

    pub fn connected_components(&self) -> Components {
        let mut parents: Vec<usize> = (0..64).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for f in &self.facets {
            if let Some(first) = f.min_vertex() {
                for v in f.vertices() {
                    let a = find(&mut parents, first);
                    let b = find(&mut parents, v);
                    if a != b {
                        parents[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let support = self.vertex_set();
        let mut by_root: Vec<(usize, Face)> = Vec::new();
        for v in support.vertices() {
            let r = find(&mut parents, v);
            match by_root.iter_mut().find(|(root, _)| *root == r) {
                Some((_, part)) => *part = part.with(v),
                None => by_root.push((r, Face::singleton(v))),
            }
        }
        let mut parts: Vec<Face> = by_root.into_iter().map(|(_, p)| p).collect();
        parts.sort_by_key(|p| p.min_vertex());
        Components { parts }
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().count() == 1
    }

    /// Renames vertex `v` to `map[v]` inside a range of size `new_n`.
    pub fn relabel(&self, map: &[usize], new_n: usize) -> Result<Complex> {
        if new_n > Face::MAX_VERTICES {
            return Err(Error::TooManyVertices(new_n));
        }
        let mut facets = Vec::with_capacity(self.facets.len());
        for f in &self.facets {
            let mut g = Face::EMPTY;
            for v in f.vertices() {
                let w = *map.get(v).ok_or(Error::BadVertex { id: v, n: map.len() })?;
                if w >= new_n {
                    return Err(Error::BadVertex { id: w, n: new_n });
                }
                g = g.with(w);
            }
            if g.len() != f.len() {
                return Err(Error::BadParameters("relabeling is not injective on a face".into()));
            }
            facets.push(g);
        }
        Ok(Complex::from_raw(new_n, facets))
    }

    /// Renumbers the vertex set to `0..num_vertices` preserving order.
    /// Returns the new complex and the old id of each new vertex.
    pub fn compact(&self) -> (Complex, Vec<usize>) {
        let old: Vec<usize> = self.vertex_set().to_vec();
        let mut map = vec![0usize; self.n.max(1)];
        for (i, &v) in old.iter().enumerate() {
            map[v] = i;
        }
        let facets = self
            .facets
            .iter()
            .map(|f| Face::from_bits(f.vertices().fold(0u64, |acc, v| acc | 1 << map[v])))
            .collect();
        (Complex::from_raw(old.len(), facets), old)
    }
}

/// Face counts `(f_{-1}, f_0, .., f_{dim})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FVector(Vec<u64>);

impl FVector {
    pub fn new(counts: Vec<u64>) -> Self {
        FVector(counts)
    }

    /// `f_i`, zero outside the stored range.
    pub fn get(&self, i: isize) -> u64 {
        if i < -1 {
            return 0;
        }
        self.0.get((i + 1) as usize).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    /// `Σ_{i ≥ 0} (-1)^i f_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .skip(1)
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// `Σ_{i ≥ -1} (-1)^i f_i`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.euler_characteristic() - self.get(-1) as i64
    }

    /// h-numbers `h_0..h_d` of a pure complex of dimension `d - 1`.
    pub fn h_vector(&self, d: usize) -> HVector {
        let d = d as i64;
        let h = (0..=d)
            .map(|j| {
                (0..=j)
                    .map(|i| {
                        let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
                        sign * binomial_i(d - i, j - i) * self.get((i - 1) as isize) as i64
                    })
                    .sum()
            })
            .collect();
        HVector(h)
    }
}

/// h-numbers `(h_0, .., h_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HVector(Vec<i64>);

impl HVector {
    pub fn new(counts: Vec<i64>) -> Self {
        HVector(counts)
    }

    pub fn get(&self, j: usize) -> i64 {
        self.0.get(j).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[i64] {
        &self.0
    }

    pub fn d(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// Inverts the f-to-h transform: `f_{i-1} = Σ_j C(d-j, i-j) h_j`.
    pub fn to_f_vector(&self) -> FVector {
        let d = self.d() as i64;
        let f = (0..=d)
            .map(|i| {
                (0..=i).map(|j| binomial_i(d - j, i - j) * self.get(j as usize)).sum::<i64>() as u64
            })
            .collect();
        FVector(f)
    }
}

/// Connected components, each given as a vertex set; ordered by least vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    parts: Vec<Face>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Face] {
        &self.parts
    }

    /// Index of the component containing `v`.
    pub fn label(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(v))
    }
}

/// A simple graph on a vertex subset of `0..64`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Face,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertices)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    pub fn new(vertices: Face) -> Graph {
        Graph { vertices, adj: vec![0; 64] }
    }

    pub fn from_edges(vertices: Face, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::new(vertices);
        for &(u, v) in edges {
            if !vertices.contains(u) || !vertices.contains(v) || u == v {
                return Err(Error::BadParameters(format!("edge ({u},{v}) not on the vertex set")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.vertices = self.vertices.with(u).with(v);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn vertices(&self) -> Face {
        self.vertices
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < 64 && v < 64 && self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> Face {
        Face::from_bits(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in self.vertices.vertices() {
            for v in Face::from_bits(self.adj[u]).vertices().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.vertices.vertices().map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Subgraph induced on `keep ∩ V`.
    pub fn induced(&self, keep: Face) -> Graph {
        let vertices = self.vertices.intersection(keep);
        let mut adj = vec![0; 64];
        for v in vertices.vertices() {
            adj[v] = self.adj[v] & vertices.bits();
        }
        Graph { vertices, adj }
    }

    pub fn without(&self, remove: Face) -> Graph {
        self.induced(self.vertices.difference(remove))
    }

    /// Common vertices and common edges.
    pub fn intersection(&self, other: &Graph) -> Graph {
        let vertices = self.vertices.intersection(other.vertices);
        let adj = (0..64).map(|v| self.adj[v] & other.adj[v] & vertices.bits()).collect();
        Graph { vertices, adj }
    }

    pub fn union(&self, other: &Graph) -> Graph {
        let vertices = self.vertices.union(other.vertices);
        let adj = (0..64).map(|v| self.adj[v] | other.adj[v]).collect();
        Graph { vertices, adj }
    }

    pub fn components(&self) -> Components {
        let mut remaining = self.vertices;
        let mut parts = Vec::new();
        while let Some(start) = remaining.min_vertex() {
            let mut comp = Face::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = Face::EMPTY;
                for v in frontier.vertices() {
                    next = next.union(Face::from_bits(self.adj[v]));
                }
                next = next.intersection(self.vertices).difference(comp);
                comp = comp.union(next);
                frontier = next;
            }
            remaining = remaining.difference(comp);
            parts.push(comp);
        }
        Components { parts }
    }

    pub fn is_connected(&self) -> bool {
        self.components().count() == 1
    }

    /// True when two vertices are adjacent exactly if they lie in different
    /// parts. `parts` must partition the vertex set.
    pub fn is_complete_multipartite(&self, parts: &[Face]) -> bool {
        let covered = parts.iter().fold(Face::EMPTY, |a, p| a.union(*p));
        if covered != self.vertices {
            return false;
        }
        parts.iter().all(|p| {
            p.vertices().all(|v| self.adj[v] == self.vertices.difference(*p).bits())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(vs: &[usize]) -> Face {
        Face::from_vertices(vs.iter().copied()).unwrap()
    }

    fn octahedron() -> Complex {
        // u_i = i, v_i = i + 3
        let mut facets = Vec::new();
        for mask in 0..8usize {
            facets.push(f(&(0..3).map(|i| if mask >> i & 1 == 0 { i } else { i + 3 }).collect::<Vec<_>>()));
        }
        Complex::from_facets(6, facets).unwrap()
    }

    #[test]
    fn simplex_f_vector() {
        let c = Complex::from_vertex_lists(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(c.f_vector().counts(), &[1, 3, 3, 1]);
        assert_eq!(c.h_vector().unwrap().counts(), &[1, 0, 0, 0]);
    }

    #[test]
    fn four_cycle_f_vector() {
        let c = Complex::from_vertex_lists(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        assert_eq!(c.f_vector().counts(), &[1, 4, 4]);
        assert_eq!(c.connected_components().count(), 1);
    }

    #[test]
    fn non_maximal_facets_are_absorbed() {
        let c = Complex::from_vertex_lists(4, &[vec![0, 1, 2], vec![0, 1]]).unwrap();
        assert_eq!(c.facets(), &[f(&[0, 1, 2])]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Complex::from_facets(3, Vec::new()), Err(Error::EmptyInput));
        assert_eq!(
            Complex::from_vertex_lists(3, &[vec![0, 3]]),
            Err(Error::BadVertex { id: 3, n: 3 })
        );
        assert_eq!(Complex::from_facets(65, vec![Face::EMPTY]), Err(Error::TooManyVertices(65)));
    }

    #[test]
    fn octahedron_counts() {
        let c = octahedron();
        assert_eq!(c.f_vector().counts(), &[1, 6, 12, 8]);
        assert_eq!(c.h_vector().unwrap().counts(), &[1, 3, 3, 1]);
    }

    #[test]
    fn octahedron_vertex_link_is_four_cycle() {
        let c = octahedron();
        let lk = c.link(Face::singleton(0)).unwrap();
        assert_eq!(lk.f_vector().counts(), &[1, 4, 4]);
        assert!(lk.graph().vertices().vertices().all(|v| lk.graph().degree(v) == 2));
        assert_eq!(lk.vertex_set(), f(&[1, 2, 4, 5]));
    }

    #[test]
    fn empty_face_link_is_whole_complex() {
        let c = octahedron();
        assert_eq!(c.link(Face::EMPTY).unwrap(), c);
    }

    #[test]
    fn link_of_non_face_is_error() {
        let c = octahedron();
        assert_eq!(c.link(f(&[0, 3])), Err(Error::NotAFace(f(&[0, 3]))));
        assert!(c.star(f(&[0, 3])).is_err());
        assert!(c.contrastar(f(&[0, 3])).is_err());
    }

    #[test]
    fn contrastar_of_octahedron_vertex() {
        let c = octahedron();
        let cost = c.contrastar(Face::singleton(0)).unwrap();
        assert_eq!(cost.f_vector().get(0), 5);
        // the antipode's star: a disk with 4 triangles
        assert_eq!(cost.f_vector().counts(), &[1, 5, 8, 4]);
        assert_eq!(cost.f_vector().euler_characteristic(), 1);
    }

    #[test]
    fn contrastar_of_empty_face_is_void() {
        assert!(octahedron().contrastar(Face::EMPTY).unwrap().is_void());
    }

    #[test]
    fn star_and_deletion_cover_the_complex() {
        let c = octahedron();
        for v in 0..6 {
            let st = c.star(Face::singleton(v)).unwrap();
            let del = c.delete(Face::singleton(v));
            assert_eq!(st.union(&del), c);
            assert_eq!(st.intersection(&del), c.link(Face::singleton(v)).unwrap());
        }
    }

    #[test]
    fn deletion_and_restriction() {
        let c = octahedron();
        let gone = c.delete(Face::first_n(6));
        assert_eq!(gone, Complex::empty(6));
        assert_eq!(gone.f_vector().counts(), &[1]);
        let pair = c.restrict(f(&[0, 3]));
        assert_eq!(pair.f_vector().counts(), &[1, 2]);
        assert_eq!(pair.connected_components().count(), 2);
    }

    #[test]
    fn octahedron_missing_edges_are_diagonals() {
        let c = octahedron();
        assert_eq!(c.missing_faces(1), vec![f(&[0, 3]), f(&[1, 4]), f(&[2, 5])]);
        assert!(c.missing_faces(2).is_empty());
    }

    #[test]
    fn simplex_has_no_missing_faces() {
        let c = Complex::simplex(4, Face::first_n(4));
        for k in 0..=4 {
            assert!(c.missing_faces(k).is_empty());
        }
    }

    #[test]
    fn components_of_disjoint_edges() {
        let c = Complex::from_vertex_lists(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(c.connected_components().count(), 2);
        assert_eq!(c.graph().components().count(), 2);
        assert_eq!(c.connected_components().label(3), Some(1));
    }

    #[test]
    fn f_h_round_trip() {
        let c = octahedron();
        let f = c.f_vector();
        assert_eq!(c.h_vector().unwrap().to_f_vector(), f);
        assert_eq!(f.euler_characteristic(), 2);
    }

    #[test]
    fn h_vector_rejects_impure() {
        let c = Complex::from_vertex_lists(4, &[vec![0, 1, 2], vec![2, 3]]).unwrap();
        assert_eq!(c.h_vector(), Err(Error::NotPure));
    }

    #[test]
    fn complete_multipartite_detection() {
        let c = octahedron();
        let parts = [f(&[0, 3]), f(&[1, 4]), f(&[2, 5])];
        assert!(c.graph().is_complete_multipartite(&parts));
        let lk = c.link(Face::singleton(0)).unwrap();
        assert!(lk.graph().is_complete_multipartite(&[f(&[1, 4]), f(&[2, 5])]));
    }

    #[test]
    fn compact_renumbers_support() {
        let c = Complex::from_vertex_lists(10, &[vec![2, 5, 9]]).unwrap();
        let (k, old) = c.compact();
        assert_eq!(k.n(), 3);
        assert_eq!(old, vec![2, 5, 9]);
        assert_eq!(k.facets(), &[Face::first_n(3)]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(60, 30), 118264581564861424);
        assert_eq!(binomial_i(-1, 0), 0);
    }
}
