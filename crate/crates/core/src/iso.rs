//! Isomorphism of complexes by individualization and refinement.
//!
//! Vertices are partitioned into ordered cells that are refined by how they
//! sit in facets until stable; ties are broken by individualizing a vertex of
//! the first non-singleton cell. Each discrete partition relabels the facets,
//! and the least relabeled facet list over the whole search tree is the
//! canonical form. Refinement only looks at cell indices, never at ids, so the
//! result is independent of the input numbering.

use std::collections::BTreeMap;

use crate::coloring::Coloring;
use crate::complex::Complex;
use crate::face::Face;

/// Canonical representative of an isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub vertices: usize,
    pub facets: Vec<u64>,
}

impl CanonicalForm {
    pub fn to_complex(&self) -> Complex {
        Complex::from_raw(self.vertices, self.facets.iter().map(|&b| Face::from_bits(b)).collect())
    }
}

struct Structure {
    m: usize,
    facets: Vec<u64>,
    vertex_facets: Vec<Vec<usize>>,
    old_ids: Vec<usize>,
}

impl Structure {
    fn new(c: &Complex) -> Structure {
        let (compact, old_ids) = c.compact();
        let m = old_ids.len();
        let facets: Vec<u64> = compact.facets().iter().map(|f| f.bits()).collect();
        let mut vertex_facets = vec![Vec::new(); m];
        for (i, &f) in facets.iter().enumerate() {
            for v in Face::from_bits(f).vertices() {
                vertex_facets[v].push(i);
            }
        }
        Structure { m, facets, vertex_facets, old_ids }
    }

    fn initial_colors(&self, coloring: Option<&Coloring>) -> Vec<u32> {
        let raw: Vec<u32> = match coloring {
            None => vec![0; self.m],
            Some(k) => self.old_ids.iter().map(|&v| k.color(v) as u32).collect(),
        };
        normalize(&raw)
    }

    fn refine(&self, colors: &mut [u32]) {
        let mut cells = count_cells(colors);
        loop {
            if cells == self.m {
                return;
            }
            let sigs: Vec<(u32, Vec<Vec<u32>>)> = (0..self.m)
                .map(|v| {
                    let mut around: Vec<Vec<u32>> = self.vertex_facets[v]
                        .iter()
                        .map(|&fi| {
                            let mut cs: Vec<u32> = Face::from_bits(self.facets[fi])
                                .vertices()
                                .filter(|&u| u != v)
                                .map(|u| colors[u])
                                .collect();
                            cs.sort_unstable();
                            cs
                        })
                        .collect();
                    around.sort_unstable();
                    (colors[v], around)
                })
                .collect();
            let mut distinct: Vec<&(u32, Vec<Vec<u32>>)> = sigs.iter().collect();
            distinct.sort();
            distinct.dedup();
            if distinct.len() == cells {
                return;
            }
            cells = distinct.len();
            for v in 0..self.m {
                colors[v] = distinct.binary_search(&&sigs[v]).expect("signature present") as u32;
            }
        }
    }

    fn target_cell(&self, colors: &[u32]) -> Option<u32> {
        let mut sizes = vec![0usize; self.m];
        for &c in colors {
            sizes[c as usize] += 1;
        }
        sizes.iter().position(|&s| s > 1).map(|c| c as u32)
    }

    fn leaf_form(&self, colors: &[u32]) -> Vec<u64> {
        let mut form: Vec<u64> = self
            .facets
            .iter()
            .map(|&f| Face::from_bits(f).vertices().fold(0u64, |acc, v| acc | 1 << colors[v]))
            .collect();
        form.sort_unstable();
        form
    }

    fn cell_sizes(&self, colors: &[u32]) -> Vec<usize> {
        let mut sizes = vec![0usize; self.m];
        for &c in colors {
            sizes[c as usize] += 1;
        }
        sizes
    }

    fn canonical(&self, colors: Vec<u32>, best: &mut Option<(Vec<u64>, Vec<u32>)>) {
        let mut colors = colors;
        self.refine(&mut colors);
        match self.target_cell(&colors) {
            None => {
                let form = self.leaf_form(&colors);
                if best.as_ref().is_none_or(|(b, _)| form < *b) {
                    *best = Some((form, colors));
                }
            }
            Some(t) => {
                for v in (0..self.m).filter(|&v| colors[v] == t) {
                    self.canonical(individualize(&colors, v, t), best);
                }
            }
        }
    }

    /// Follows the leftmost branch; records the cell sizes seen at each depth.
    fn first_leaf(&self, colors: Vec<u32>, trace: &mut Vec<Vec<usize>>) -> (Vec<u64>, Vec<u32>) {
        let mut colors = colors;
        self.refine(&mut colors);
        trace.push(self.cell_sizes(&colors));
        match self.target_cell(&colors) {
            None => (self.leaf_form(&colors), colors),
            Some(t) => {
                let v = (0..self.m).find(|&v| colors[v] == t).expect("nonempty cell");
                self.first_leaf(individualize(&colors, v, t), trace)
            }
        }
    }

    fn find_leaf(&self, colors: Vec<u32>, depth: usize, trace: &[Vec<usize>], goal: &[u64]) -> Option<Vec<u32>> {
        let mut colors = colors;
        self.refine(&mut colors);
        if trace.get(depth) != Some(&self.cell_sizes(&colors)) {
            return None;
        }
        match self.target_cell(&colors) {
            None => (self.leaf_form(&colors) == goal).then_some(colors),
            Some(t) => (0..self.m)
                .filter(|&v| colors[v] == t)
                .find_map(|v| self.find_leaf(individualize(&colors, v, t), depth + 1, trace, goal)),
        }
    }
}

fn normalize(raw: &[u32]) -> Vec<u32> {
    let mut distinct: Vec<u32> = raw.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    raw.iter().map(|c| distinct.binary_search(c).unwrap() as u32).collect()
}

fn count_cells(colors: &[u32]) -> usize {
    let mut d = colors.to_vec();
    d.sort_unstable();
    d.dedup();
    d.len()
}

/// Splits cell `t` into `{v}` followed by the rest.
fn individualize(colors: &[u32], v: usize, t: u32) -> Vec<u32> {
    colors
        .iter()
        .enumerate()
        .map(|(u, &c)| if c < t || u == v { c } else { c + 1 })
        .collect()
}

/// Canonical form of the complex on its vertex set.
pub fn canonical_form(c: &Complex) -> CanonicalForm {
    canonical_labeling(c, None).0
}

/// Canonical form respecting a coloring: only color-preserving relabelings
/// are allowed.
pub fn canonical_form_colored(c: &Complex, kappa: &Coloring) -> CanonicalForm {
    canonical_labeling(c, Some(kappa)).0
}

/// Canonical form and the canonical label of each vertex (by original id).
pub fn canonical_labeling(c: &Complex, coloring: Option<&Coloring>) -> (CanonicalForm, BTreeMap<usize, usize>) {
    let s = Structure::new(c);
    let mut best = None;
    s.canonical(s.initial_colors(coloring), &mut best);
    let (facets, colors) = best.unwrap_or_default();
    let labels = s.old_ids.iter().zip(&colors).map(|(&old, &c)| (old, c as usize)).collect();
    (CanonicalForm { vertices: s.m, facets }, labels)
}

pub fn is_isomorphic(a: &Complex, b: &Complex) -> bool {
    find_isomorphism(a, b).is_some()
}

/// A vertex bijection mapping the facets of `a` onto the facets of `b`,
/// as `(vertex of a, vertex of b)` pairs.
pub fn find_isomorphism(a: &Complex, b: &Complex) -> Option<BTreeMap<usize, usize>> {
    find_isomorphism_with(a, None, b, None)
}

/// Like [`find_isomorphism`], additionally requiring `κ_b(φ(v)) = κ_a(v)`.
pub fn find_colored_isomorphism(a: &Complex, ka: &Coloring, b: &Complex, kb: &Coloring) -> Option<BTreeMap<usize, usize>> {
    find_isomorphism_with(a, Some(ka), b, Some(kb))
}

fn find_isomorphism_with(
    a: &Complex,
    ka: Option<&Coloring>,
    b: &Complex,
    kb: Option<&Coloring>,
) -> Option<BTreeMap<usize, usize>> {
    if a.num_vertices() != b.num_vertices() || a.num_facets() != b.num_facets() || a.f_vector() != b.f_vector() {
        return None;
    }
    let sa = Structure::new(a);
    let sb = Structure::new(b);
    if let (Some(ka), Some(kb)) = (ka, kb) {
        let mut ca: Vec<usize> = sa.old_ids.iter().map(|&v| ka.color(v)).collect();
        let mut cb: Vec<usize> = sb.old_ids.iter().map(|&v| kb.color(v)).collect();
        ca.sort_unstable();
        cb.sort_unstable();
        if ca != cb {
            return None;
        }
    }
    let mut trace = Vec::new();
    let (goal, colors_a) = sa.first_leaf(sa.initial_colors(ka), &mut trace);
    let colors_b = sb.find_leaf(sb.initial_colors(kb), 0, &trace, &goal)?;
    let mut by_label = vec![0usize; sb.m];
    for (v, &c) in colors_b.iter().enumerate() {
        by_label[c as usize] = sb.old_ids[v];
    }
    Some(
        sa.old_ids
            .iter()
            .zip(&colors_a)
            .map(|(&old, &c)| (old, by_label[c as usize]))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> Complex {
        let facets: Vec<Vec<usize>> = (0..8usize)
            .map(|m| (0..3).map(|i| if m >> i & 1 == 0 { i } else { i + 3 }).collect())
            .collect();
        Complex::from_vertex_lists(6, &facets).unwrap()
    }

    fn apply(c: &Complex, perm: &[usize]) -> Complex {
        c.relabel(perm, c.n()).unwrap()
    }

    #[test]
    fn relabeled_octahedron_is_isomorphic() {
        let c = octahedron();
        let d = apply(&c, &[4, 2, 0, 5, 1, 3]);
        let map = find_isomorphism(&c, &d).unwrap();
        let image = c.relabel(&(0..6).map(|v| map[&v]).collect::<Vec<_>>(), 6).unwrap();
        assert_eq!(image, d);
        assert_eq!(canonical_form(&c), canonical_form(&d));
    }

    #[test]
    fn octahedron_is_not_tetrahedron_boundary() {
        let tet = Complex::from_vertex_lists(4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
        assert!(!is_isomorphic(&octahedron(), &tet));
        assert_ne!(canonical_form(&octahedron()), canonical_form(&tet));
    }

    #[test]
    fn same_f_vector_different_complexes() {
        // a hexagon and two triangles both have f = (1, 6, 6)
        let hex = Complex::from_vertex_lists(6, &(0..6).map(|i| vec![i, (i + 1) % 6]).collect::<Vec<_>>()).unwrap();
        let tri = Complex::from_vertex_lists(
            6,
            &[vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]],
        )
        .unwrap();
        assert_eq!(hex.f_vector(), tri.f_vector());
        assert!(!is_isomorphic(&hex, &tri));
        assert_ne!(canonical_form(&hex), canonical_form(&tri));
    }

    #[test]
    fn colored_isomorphism_respects_colors() {
        let c = octahedron();
        let k = Coloring::new(vec![1, 2, 3, 1, 2, 3]).unwrap();
        let swapped = Coloring::new(vec![2, 1, 3, 2, 1, 3]).unwrap();
        assert!(find_colored_isomorphism(&c, &k, &c, &k).is_some());
        // the swapped coloring is realized by exchanging vertex 0 with 1 and 3 with 4
        assert!(find_colored_isomorphism(&c, &k, &c, &swapped).is_some());
        let bad = Coloring::new(vec![1, 1, 3, 2, 2, 3]).unwrap();
        assert!(find_colored_isomorphism(&c, &k, &c, &bad).is_none());
    }
}
