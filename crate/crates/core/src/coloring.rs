//! Balanced colorings and rank selection.
//!
//! Colors are 1-based: a balanced `(d-1)`-dimensional complex is colored by
//! `1..=d`, and every facet then carries each color exactly once.

use serde::Serialize;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::Face;

/// A vertex coloring. Entry `v` is the color of vertex `v`, or `0` for an id
/// the coloring does not cover.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Coloring {
    colors: Vec<usize>,
    num_colors: usize,
}

impl Coloring {
    /// `colors[v]` is the 1-based color of `v`; `0` marks an uncolored id.
    pub fn new(colors: Vec<usize>) -> Result<Coloring> {
        if colors.len() > Face::MAX_VERTICES {
            return Err(Error::TooManyVertices(colors.len()));
        }
        let num_colors = colors.iter().copied().max().unwrap_or(0);
        if num_colors > 64 {
            return Err(Error::InvalidColoring(format!("color {num_colors} exceeds 64")));
        }
        Ok(Coloring { colors, num_colors })
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors.get(v).copied().unwrap_or(0)
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    /// Color classes `V_1, .., V_k`, as vertex sets.
    pub fn classes(&self) -> Vec<Face> {
        let mut classes = vec![Face::EMPTY; self.num_colors];
        for (v, &c) in self.colors.iter().enumerate() {
            if c > 0 {
                classes[c - 1] = classes[c - 1].with(v);
            }
        }
        classes
    }

    pub fn class(&self, color: usize) -> Face {
        self.classes().get(color.wrapping_sub(1)).copied().unwrap_or(Face::EMPTY)
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes().iter().map(|c| c.len()).collect()
    }

    /// The color class of the given size, if exactly one class has it.
    pub fn unique_class_of_size(&self, size: usize) -> Option<Face> {
        let mut hits = self.classes().into_iter().filter(|c| c.len() == size);
        let first = hits.next()?;
        hits.next().is_none().then_some(first)
    }

    /// Colors used on a face, as a bitset with bit `c - 1` for color `c`.
    pub fn color_mask(&self, face: Face) -> u64 {
        face.vertices().fold(0u64, |m, v| match self.color(v) {
            0 => m,
            c => m | 1 << (c - 1),
        })
    }

    pub fn is_monochromatic(&self, w: Face) -> bool {
        self.color_mask(w).count_ones() <= 1 && w.vertices().all(|v| self.color(v) > 0)
    }

    /// Pulls the coloring back along `project`, giving vertex `i` of a range
    /// of size `n` the color of `project(i)`.
    pub fn pull_back(&self, n: usize, project: impl Fn(usize) -> usize) -> Coloring {
        Coloring { colors: (0..n).map(|i| self.color(project(i))).collect(), num_colors: self.num_colors }
    }
}

/// Bitset of colors from a list of 1-based colors.
pub fn color_set(colors: &[usize]) -> Result<u64> {
    colors.iter().try_fold(0u64, |m, &c| {
        if c == 0 || c > 64 {
            Err(Error::InvalidColoring(format!("color {c} out of range")))
        } else {
            Ok(m | 1 << (c - 1))
        }
    })
}

/// True when `kappa` colors every vertex of `c`, no edge is monochromatic,
/// and exactly `dim + 1` colors (namely `1..=dim+1`) occur.
pub fn validate(c: &Complex, kappa: &Coloring) -> bool {
    let d = (c.dim() + 1).max(0) as usize;
    let support = c.vertex_set();
    if support.vertices().any(|v| kappa.color(v) == 0 || kappa.color(v) > d) {
        return false;
    }
    let used = kappa.color_mask(support);
    if used.count_ones() as usize != d {
        return false;
    }
    let g = c.graph();
    g.edges().iter().all(|&(u, v)| kappa.color(u) != kappa.color(v))
}

/// Searches for a proper `(dim + 1)`-coloring by backtracking.
///
/// Components are colored independently in order of their least vertex;
/// within a component vertices are colored in increasing id order, the first
/// one gets color 1 and a new color is only introduced as the next unused
/// one. The result is therefore deterministic.
pub fn find_balanced_coloring(c: &Complex) -> Option<Coloring> {
    let d = (c.dim() + 1).max(0) as usize;
    let g = c.graph();
    let mut colors = vec![0usize; c.n()];
    if d == 0 {
        return Coloring::new(colors).ok();
    }
    for comp in c.connected_components().parts() {
        let order: Vec<usize> = comp.vertices().collect();
        if !color_component(&g, &order, 0, 0, d, &mut colors) {
            return None;
        }
    }
    let kappa = Coloring::new(colors).ok()?;
    validate(c, &kappa).then_some(kappa)
}

fn color_component(
    g: &crate::complex::Graph,
    order: &[usize],
    idx: usize,
    used: usize,
    d: usize,
    colors: &mut [usize],
) -> bool {
    let Some(&v) = order.get(idx) else { return true };
    let forbidden = g.neighbors(v).vertices().fold(0u64, |m, u| match colors[u] {
        0 => m,
        k => m | 1 << (k - 1),
    });
    let limit = (used + 1).min(d);
    for k in 1..=limit {
        if forbidden >> (k - 1) & 1 == 1 {
            continue;
        }
        colors[v] = k;
        if forward_ok(g, v, d, colors) && color_component(g, order, idx + 1, used.max(k), d, colors) {
            return true;
        }
        colors[v] = 0;
    }
    false
}

/// Every uncolored neighbor of `v` still has an admissible color.
fn forward_ok(g: &crate::complex::Graph, v: usize, d: usize, colors: &[usize]) -> bool {
    let full = if d >= 64 { u64::MAX } else { (1u64 << d) - 1 };
    g.neighbors(v).vertices().filter(|&u| colors[u] == 0).all(|u| {
        let forbidden = g.neighbors(u).vertices().fold(0u64, |m, w| match colors[w] {
            0 => m,
            k => m | 1 << (k - 1),
        });
        forbidden & full != full
    })
}

/// `Δ_S = {τ ∈ Δ : κ(τ) ⊆ S}` for a color set given as a bitset.
pub fn rank_selected(c: &Complex, kappa: &Coloring, colors: u64) -> Complex {
    let mut keep = Face::EMPTY;
    for v in c.vertex_set().vertices() {
        let k = kappa.color(v);
        if k > 0 && colors >> (k - 1) & 1 == 1 {
            keep = keep.with(v);
        }
    }
    c.restrict(keep)
}
