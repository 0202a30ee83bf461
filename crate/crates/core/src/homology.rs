//! Reduced simplicial homology over the rationals and prime fields.
//!
//! Chains of a complex include the empty face, so `∂` of a vertex is `∅` and
//! the numbers computed are reduced Betti numbers throughout: `{∅}` has
//! `β̃_{-1} = 1`, the void complex has nothing. Faces inside a boundary matrix
//! are ordered by their bit pattern and oriented by increasing vertex order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::certificate::{Certificate, InputsDigest, Verdict};
use crate::coloring::Coloring;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::Face;
use crate::linalg::{self, Echelon, Field, PrimeField, Rationals, SparseMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientField {
    Rationals,
    Prime(u64),
}

impl CoefficientField {
    pub const Z2: CoefficientField = CoefficientField::Prime(2);

    pub fn prime(p: u64) -> Result<Self> {
        if linalg::is_prime(p) && p < 1 << 32 {
            Ok(CoefficientField::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "Q"),
            CoefficientField::Prime(p) => write!(f, "Z/{p}"),
        }
    }
}

impl FromStr for CoefficientField {
    type Err = Error;

    /// Accepts `Q`, and `p`, `Z/p`, `Zp`, `F_p` for a prime `p`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
            return Ok(CoefficientField::Rationals);
        }
        let digits = t
            .strip_prefix("Z/")
            .or_else(|| t.strip_prefix("F_"))
            .or_else(|| t.strip_prefix('Z'))
            .or_else(|| t.strip_prefix('F'))
            .unwrap_or(t);
        let p: u64 = digits.parse().map_err(|_| Error::BadParameters(format!("unknown field {s:?}")))?;
        CoefficientField::prime(p)
    }
}

impl Serialize for CoefficientField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// How ranks are computed. Both are exact; they exist side by side so that
/// one can serve as an oracle for the other.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RankMethod {
    /// Sparse elimination: integer (with big-integer fallback) over the
    /// rationals, modular over a prime field.
    #[default]
    Sparse,
    /// Dense Bareiss elimination over the rationals; dense Gaussian
    /// elimination over a prime field.
    DenseFractionFree,
}

/// Reduced Betti numbers `β̃_{-1}, β̃_0, .., β̃_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiVector {
    pub field: CoefficientField,
    minus_one: u64,
    values: Vec<u64>,
}

impl BettiVector {
    pub fn new(field: CoefficientField, minus_one: u64, values: Vec<u64>) -> Self {
        BettiVector { field, minus_one, values }
    }

    /// `β̃_i` for `i ≥ -1`; zero outside the computed range.
    pub fn reduced(&self, i: isize) -> u64 {
        match i {
            -1 => self.minus_one,
            i if i < -1 => 0,
            i => self.values.get(i as usize).copied().unwrap_or(0),
        }
    }

    /// `β̃_0, .., β̃_dim`.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `Σ_{i ≥ -1} (-1)^i β̃_i`.
    pub fn alternating_sum(&self) -> i64 {
        let tail: i64 = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        tail - self.minus_one as i64
    }

    pub fn is_zero(&self) -> bool {
        self.minus_one == 0 && self.values.iter().all(|&b| b == 0)
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.values.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", vs.join(","))
    }
}

fn index_of(faces: &[Face], f: Face) -> usize {
    faces.binary_search(&f).expect("boundary face present")
}

/// `∂_k` from faces with `k` vertices to faces with `k - 1` vertices, one
/// row per `k`-vertex face. `k` must be at least one.
pub fn boundary_matrix(c: &Complex, k: usize) -> SparseMatrix {
    assert!(k >= 1, "no boundary below the empty face");
    let cols = c.faces_of_size(k - 1);
    let mut m = SparseMatrix::new(cols.len());
    for &f in c.faces_of_size(k) {
        m.push_row(f.signed_boundary().map(|(g, s)| (index_of(cols, g) as u32, s)).collect());
    }
    m
}

/// All boundary matrices `∂_1, .., ∂_{dim+1}`, checking `∂∂ = 0` in debug
/// builds.
pub fn boundary_matrices(c: &Complex) -> Vec<SparseMatrix> {
    let top = c.faces_by_size().len();
    let ms: Vec<SparseMatrix> = (1..top).map(|k| boundary_matrix(c, k)).collect();
    debug_assert!(boundary_squares_to_zero(&ms));
    ms
}

/// True if consecutive boundary matrices compose to zero.
pub fn boundary_squares_to_zero(ms: &[SparseMatrix]) -> bool {
    ms.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
}

/// Rank of a boundary matrix over `field`.
pub fn rank(m: &SparseMatrix, field: CoefficientField, method: RankMethod) -> usize {
    match (field, method) {
        (CoefficientField::Rationals, RankMethod::Sparse) => linalg::rank_rational(m),
        (CoefficientField::Rationals, RankMethod::DenseFractionFree) => linalg::rank_bareiss(m),
        (CoefficientField::Prime(p), RankMethod::Sparse) => linalg::rank_mod_p(m, p),
        (CoefficientField::Prime(p), RankMethod::DenseFractionFree) => {
            let f = PrimeField::new(p);
            let rows: Vec<Vec<u64>> =
                m.to_dense().into_iter().map(|r| r.into_iter().map(|x| f.from_i64(x)).collect()).collect();
            linalg::rank_dense(&f, &rows)
        }
    }
}

pub fn betti(c: &Complex, field: CoefficientField) -> BettiVector {
    betti_with(c, field, RankMethod::Sparse)
}

pub fn betti_with(c: &Complex, field: CoefficientField, method: RankMethod) -> BettiVector {
    let levels = c.faces_by_size();
    if levels.is_empty() {
        return BettiVector::new(field, 0, Vec::new());
    }
    // ranks[k] = rank ∂_k, with ∂_0 = 0 and ∂_{top+1} = 0
    let mut ranks = vec![0usize; levels.len() + 1];
    for (k, m) in boundary_matrices(c).iter().enumerate() {
        ranks[k + 1] = rank(m, field, method);
    }
    let b = |k: usize| (levels[k].len() - ranks[k] - ranks[k + 1]) as u64;
    BettiVector::new(field, b(0), (1..levels.len()).map(b).collect())
}

/// True if the reduced homology is that of a `k`-sphere: `β̃_k = 1` and all
/// other reduced Betti numbers vanish (`k = -1` is `{∅}`).
pub fn has_sphere_homology(c: &Complex, k: isize, field: CoefficientField) -> bool {
    let b = betti(c, field);
    is_sphere_profile(&b, k)
}

fn is_sphere_profile(b: &BettiVector, k: isize) -> bool {
    if k < -1 {
        return false;
    }
    let top = b.values().len() as isize - 1;
    (-1..=top.max(k)).all(|i| b.reduced(i) == u64::from(i == k))
}

/// Every nonempty face link has the homology of a sphere of dimension
/// `d - 1 - |σ|`. Links are checked in parallel.
pub fn is_homology_manifold(c: &Complex, field: CoefficientField) -> Result<bool> {
    Ok(first_bad_link(c, field)?.is_none())
}

/// The first nonempty face (in size, then bit order) whose link does not
/// have the expected sphere homology.
pub fn first_bad_link(c: &Complex, field: CoefficientField) -> Result<Option<Face>> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let d = c.dim() + 1;
    let faces: Vec<Face> = c.all_faces().filter(|f| !f.is_empty()).collect();
    let bad = faces
        .par_iter()
        .find_first(|&&f| {
            let lk = c.link(f).expect("face of the complex");
            !has_sphere_homology(&lk, d - 1 - f.len() as isize, field)
        })
        .copied();
    Ok(bad)
}

/// Homology manifold whose own homology is that of a `(d - 1)`-sphere.
pub fn is_homology_sphere(c: &Complex, field: CoefficientField) -> Result<bool> {
    Ok(is_homology_manifold(c, field)? && has_sphere_homology(c, c.dim(), field))
}

/// For every nonempty face `σ`, `H̃_i(lk σ) = 0` for `i < d - 1 - |σ|`.
pub fn is_buchsbaum(c: &Complex, field: CoefficientField) -> Result<bool> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let d = c.dim() + 1;
    let faces: Vec<Face> = c.all_faces().filter(|f| !f.is_empty()).collect();
    Ok(faces.par_iter().all(|&f| {
        let lk = c.link(f).expect("face of the complex");
        let b = betti(&lk, field);
        let top = d - 1 - f.len() as isize;
        (-1..top).all(|i| b.reduced(i) == 0)
    }))
}

/// Relative homology `H_i(C, S)` with cycle representatives, over a field
/// given by its arithmetic.
pub struct RelativeHomology<F: Field> {
    pub degree: isize,
    /// The relative `i`-chains: `i`-faces of `C` outside `S`, in bit order.
    pub faces: Vec<Face>,
    /// A basis of the relative cycles.
    pub cycles: Vec<Vec<F::Elem>>,
    /// A spanning set of the relative boundaries.
    pub boundaries: Vec<Vec<F::Elem>>,
    /// Cycles whose classes form a basis of the homology.
    pub representatives: Vec<Vec<F::Elem>>,
}

impl<F: Field> RelativeHomology<F> {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }
}

fn relative_faces(c: &Complex, sub: &Complex, size: usize) -> Vec<Face> {
    c.faces_of_size(size).iter().copied().filter(|f| !sub.contains_face(*f)).collect()
}

/// Images under `∂` of relative chains in `from`, as dense vectors over `to`.
fn relative_boundary_images<F: Field>(field: &F, from: &[Face], to: &[Face]) -> Vec<Vec<F::Elem>> {
    from.iter()
        .map(|f| {
            let mut v = vec![field.zero(); to.len()];
            for (g, s) in f.signed_boundary() {
                if let Ok(j) = to.binary_search(&g) {
                    v[j] = field.from_i64(s);
                }
            }
            v
        })
        .collect()
}

pub fn relative_homology<F: Field>(field: &F, c: &Complex, sub: &Complex, i: isize) -> Result<RelativeHomology<F>> {
    if !sub.is_subcomplex_of(c) {
        return Err(Error::NotASubcomplex);
    }
    let size = |j: isize| if j < -1 { None } else { Some((j + 1) as usize) };
    let faces = size(i).map_or(Vec::new(), |s| relative_faces(c, sub, s));
    let lower = size(i - 1).map_or(Vec::new(), |s| relative_faces(c, sub, s));
    let upper = size(i + 1).map_or(Vec::new(), |s| relative_faces(c, sub, s));
    let cycles = linalg::kernel_basis(field, &relative_boundary_images(field, &faces, &lower));
    let boundaries = relative_boundary_images(field, &upper, &faces);
    let mut span = Echelon::new(field);
    for b in &boundaries {
        span.insert(b.clone());
    }
    let representatives = cycles.iter().filter(|z| span.insert((*z).clone())).cloned().collect();
    Ok(RelativeHomology { degree: i, faces, cycles, boundaries, representatives })
}

/// `dim H_i(C, S)` over `field`.
pub fn relative_betti(c: &Complex, sub: &Complex, field: CoefficientField, i: isize) -> Result<usize> {
    match field {
        CoefficientField::Rationals => Ok(relative_homology(&Rationals, c, sub, i)?.dim()),
        CoefficientField::Prime(p) => Ok(relative_homology(&PrimeField::new(p), c, sub, i)?.dim()),
    }
}

/// Whether the map on relative homology induced by the inclusion of pairs
/// `(C, A) → (C, B)`, `A ⊆ B`, is surjective.
pub fn induced_map_is_surjective<F: Field>(field: &F, from: &RelativeHomology<F>, to: &RelativeHomology<F>) -> bool {
    let mut span = Echelon::new(field);
    for b in &to.boundaries {
        span.insert(b.clone());
    }
    let base = span.rank();
    for z in &from.representatives {
        let mut v = vec![field.zero(); to.faces.len()];
        for (x, f) in z.iter().zip(&from.faces) {
            if let Ok(j) = to.faces.binary_search(f) {
                v[j] = x.clone();
            }
        }
        span.insert(v);
    }
    span.rank() - base == to.dim()
}

/// Buchsbaum, and for all faces `σ ⊆ τ` (including `σ = ∅`) the map
/// `H_{d-1}(Δ, cost σ) → H_{d-1}(Δ, cost τ)` is surjective.
///
/// In the top degree the relative cycles for `σ` are the kernel of the
/// boundary from facets containing `σ` to ridges containing `σ`, and the
/// induced map restricts a cycle to the facets containing `τ`. The scan
/// touches every pair `σ ⊆ τ`, so its cost grows like `Σ_τ 2^|τ|` small
/// eliminations; it is meant for complexes with a few hundred faces.
pub fn is_buchsbaum_star(c: &Complex, field: CoefficientField) -> Result<bool> {
    Ok(buchsbaum_star_failure(c, field)?.is_none())
}

/// The first pair `(σ, τ)` at which surjectivity fails, if any.
pub fn buchsbaum_star_failure(c: &Complex, field: CoefficientField) -> Result<Option<(Face, Face)>> {
    if !is_buchsbaum(c, field)? {
        return Err(Error::NotBuchsbaum(field.to_string()));
    }
    Ok(match field {
        CoefficientField::Rationals => top_surjectivity_failure(&Rationals, c),
        CoefficientField::Prime(p) => top_surjectivity_failure(&PrimeField::new(p), c),
    })
}

struct TopCycles<E> {
    facets: Vec<Face>,
    basis: Vec<Vec<E>>,
}

fn top_cycles<F: Field>(field: &F, c: &Complex, sigma: Face) -> TopCycles<F::Elem> {
    let d = (c.dim() + 1) as usize;
    let facets: Vec<Face> = c.faces_of_size(d).iter().copied().filter(|f| sigma.is_subset_of(*f)).collect();
    let ridges: Vec<Face> = if d == 0 {
        Vec::new()
    } else {
        c.faces_of_size(d - 1).iter().copied().filter(|r| sigma.is_subset_of(*r)).collect()
    };
    let basis = linalg::kernel_basis(field, &relative_boundary_images(field, &facets, &ridges));
    TopCycles { facets, basis }
}

fn top_surjectivity_failure<F: Field>(field: &F, c: &Complex) -> Option<(Face, Face)> {
    let faces: Vec<Face> = c.all_faces().collect();
    let cycles: Vec<TopCycles<F::Elem>> = faces.par_iter().map(|&s| top_cycles(field, c, s)).collect();
    let index: std::collections::HashMap<Face, usize> = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let position = |f: Face| index[&f];
    let pairs: Vec<(usize, usize)> = faces
        .iter()
        .enumerate()
        .flat_map(|(ti, &tau)| tau.subsets().filter(move |&s| s != tau).map(move |s| (s, ti)))
        .map(|(s, ti)| (position(s), ti))
        .collect();
    pairs
        .par_iter()
        .find_first(|&&(si, ti)| {
            let from = &cycles[si];
            let to = &cycles[ti];
            let keep: Vec<usize> = to.facets.iter().map(|f| index_of(&from.facets, *f)).collect();
            let mut span = Echelon::new(field);
            for z in &from.basis {
                span.insert(keep.iter().map(|&j| z[j].clone()).collect());
            }
            span.rank() != to.basis.len()
        })
        .map(|&(si, ti)| (faces[si], faces[ti]))
}

/// Buchsbaum* through the general relative homology routine; slower than
/// [`is_buchsbaum_star`] and used to cross-check it.
pub fn is_buchsbaum_star_via_relative(c: &Complex, field: CoefficientField) -> Result<bool> {
    if !is_buchsbaum(c, field)? {
        return Err(Error::NotBuchsbaum(field.to_string()));
    }
    fn scan<F: Field>(field: &F, c: &Complex) -> Result<bool> {
        let top = c.dim();
        let faces: Vec<Face> = c.all_faces().collect();
        let mut rel = Vec::with_capacity(faces.len());
        for &s in &faces {
            rel.push(relative_homology(field, c, &c.contrastar(s)?, top)?);
        }
        for (ti, &tau) in faces.iter().enumerate() {
            for (si, &sigma) in faces.iter().enumerate() {
                if sigma != tau && sigma.is_subset_of(tau) && !induced_map_is_surjective(field, &rel[si], &rel[ti]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
    match field {
        CoefficientField::Rationals => scan(&Rationals, c),
        CoefficientField::Prime(p) => scan(&PrimeField::new(p), c),
    }
}

/// Duality between complementary induced subcomplexes of a rational
/// homology sphere. Verifies the sphere once; [`AlexanderDuality::check`]
/// then handles one vertex subset at a time.
pub struct AlexanderDuality<'a> {
    gamma: &'a Complex,
}

impl<'a> AlexanderDuality<'a> {
    pub fn new(gamma: &'a Complex) -> Result<Self> {
        if !gamma.is_pure() || !is_homology_sphere(gamma, CoefficientField::Rationals)? {
            return Err(Error::NotASphere);
        }
        Ok(AlexanderDuality { gamma })
    }

    /// Compares `β̃_i(Γ[W])` with `β̃_{d-i-2}(Γ[V - W])` for `-1 ≤ i ≤ d - 1`.
    pub fn check(&self, w: Face) -> Certificate {
        let claim = "alexander-duality";
        let v = self.gamma.vertex_set();
        let w = w.intersection(v);
        let rest = v.difference(w);
        let d = self.gamma.dim() + 1;
        let bw = betti(&self.gamma.restrict(w), CoefficientField::Rationals);
        let br = betti(&self.gamma.restrict(rest), CoefficientField::Rationals);
        let rows: Vec<(isize, u64, u64)> = (-1..d).map(|i| (i, bw.reduced(i), br.reduced(d - i - 2))).collect();
        let ok = rows.iter().all(|r| r.1 == r.2);
        let digest = InputsDigest::new(claim).complex(self.gamma).text("W", &w.to_string()).finish();
        let evidence = json!({
            "d": d,
            "W": w.to_vec(),
            "betti_W": betti_json(&bw),
            "betti_complement": betti_json(&br),
            "pairs": rows.iter().map(|&(i, a, b)| json!({"i": i, "W": a, "complement": b})).collect::<Vec<_>>(),
        });
        Certificate::new(claim, digest, Verdict::from_bool(ok), evidence)
    }
}

pub fn alexander_duality_check(gamma: &Complex, w: Face) -> Result<Certificate> {
    Ok(AlexanderDuality::new(gamma)?.check(w))
}

/// Betti numbers from degree -1 up, as JSON.
pub fn betti_json(b: &BettiVector) -> serde_json::Value {
    json!({"field": b.field.to_string(), "minus_one": b.reduced(-1), "values": b.values()})
}

/// Whether deleting a monochromatic vertex set keeps `β̃_i` for
/// `1 ≤ i ≤ d - 3`, on a rational homology manifold with `d ≥ 4`.
pub struct ColorDeletionCheck<'a> {
    complex: &'a Complex,
    coloring: &'a Coloring,
    base: BettiVector,
    d: usize,
}

impl<'a> ColorDeletionCheck<'a> {
    pub fn new(complex: &'a Complex, coloring: &'a Coloring) -> Result<Self> {
        let d = (complex.dim() + 1).max(0) as usize;
        if d < 4 {
            return Err(Error::DimensionTooSmall { d, min: 4 });
        }
        if !is_homology_manifold(complex, CoefficientField::Rationals)? {
            return Err(Error::NotAManifold("Q".into()));
        }
        let base = betti(complex, CoefficientField::Rationals);
        Ok(ColorDeletionCheck { complex, coloring, base, d })
    }

    pub fn check(&self, w: Face) -> Result<Certificate> {
        if !w.is_empty() && !self.coloring.is_monochromatic(w) {
            return Err(Error::NotMonochromatic);
        }
        let claim = "color-deletion-invariance";
        let after = betti(&self.complex.delete(w), CoefficientField::Rationals);
        let degrees: Vec<isize> = (1..=self.d as isize - 3).collect();
        let ok = degrees.iter().all(|&i| self.base.reduced(i) == after.reduced(i));
        let digest = InputsDigest::new(claim)
            .complex(self.complex)
            .coloring(self.coloring)
            .text("W", &w.to_string())
            .finish();
        let evidence = json!({
            "d": self.d,
            "W": w.to_vec(),
            "degrees": degrees,
            "betti_before": betti_json(&self.base),
            "betti_after": betti_json(&after),
        });
        Ok(Certificate::new(claim, digest, Verdict::from_bool(ok), evidence))
    }
}

pub fn color_deletion_invariance_check(c: &Complex, kappa: &Coloring, w: Face) -> Result<Certificate> {
    ColorDeletionCheck::new(c, kappa)?.check(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: CoefficientField = CoefficientField::Rationals;

    fn octahedron() -> Complex {
        let facets: Vec<Vec<usize>> = (0..8usize)
            .map(|m| (0..3).map(|i| if m >> i & 1 == 0 { i } else { i + 3 }).collect())
            .collect();
        Complex::from_vertex_lists(6, &facets).unwrap()
    }

    fn bowtie() -> Complex {
        Complex::from_vertex_lists(5, &[vec![0, 1, 2], vec![0, 3, 4]]).unwrap()
    }

    #[test]
    fn field_parsing() {
        assert_eq!("Q".parse::<CoefficientField>().unwrap(), Q);
        assert_eq!("Z/2".parse::<CoefficientField>().unwrap(), CoefficientField::Z2);
        assert_eq!("3".parse::<CoefficientField>().unwrap(), CoefficientField::Prime(3));
        assert!("Z/4".parse::<CoefficientField>().is_err());
        assert!("R".parse::<CoefficientField>().is_err());
    }

    #[test]
    fn sphere_and_simplex() {
        let oct = octahedron();
        assert_eq!(betti(&oct, Q).values(), &[0, 0, 1]);
        assert!(is_homology_sphere(&oct, Q).unwrap());
        assert!(is_homology_sphere(&oct, CoefficientField::Z2).unwrap());
        let simplex = Complex::simplex(3, Face::first_n(3));
        assert!(betti(&simplex, Q).is_zero());
        assert_eq!(betti(&Complex::empty(0), Q).reduced(-1), 1);
        assert!(betti(&Complex::void(0), Q).is_zero());
    }

    #[test]
    fn boundary_composes_to_zero() {
        assert!(boundary_squares_to_zero(&boundary_matrices(&octahedron())));
    }

    #[test]
    fn bowtie_is_not_a_manifold() {
        let b = bowtie();
        assert!(!is_homology_manifold(&b, Q).unwrap());
        assert!(!is_buchsbaum(&b, Q).unwrap());
        assert_eq!(first_bad_link(&b, Q).unwrap(), Some(Face::singleton(0)));
    }

    #[test]
    fn relative_examples() {
        let oct = octahedron();
        let v0 = Face::singleton(0);
        assert_eq!(relative_betti(&oct, &oct.contrastar(v0).unwrap(), Q, 2).unwrap(), 1);
        for i in -1..=2 {
            assert_eq!(relative_betti(&oct, &oct, Q, i).unwrap(), 0);
        }
        let disk = Complex::simplex(3, Face::first_n(3));
        let circle = Complex::from_vertex_lists(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(relative_betti(&disk, &circle, Q, 2).unwrap(), 1);
        assert_eq!(relative_betti(&circle, &disk, Q, 1), Err(Error::NotASubcomplex));
    }

    #[test]
    fn octahedron_is_buchsbaum_star_both_ways() {
        let oct = octahedron();
        for f in [Q, CoefficientField::Z2] {
            assert!(is_buchsbaum_star(&oct, f).unwrap());
            assert!(is_buchsbaum_star_via_relative(&oct, f).unwrap());
        }
    }

    #[test]
    fn two_disjoint_circles_are_buchsbaum_star() {
        let two = Complex::from_vertex_lists(
            6,
            &[vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]],
        )
        .unwrap();
        assert!(is_buchsbaum(&two, Q).unwrap());
        assert!(is_buchsbaum_star(&two, Q).unwrap());
        assert!(is_buchsbaum_star_via_relative(&two, Q).unwrap());
    }

    #[test]
    fn path_is_buchsbaum_not_star() {
        // an arc: the end vertex has H_1(Δ, cost v) = 0 while its edge has
        // H_1(Δ, cost e) = F, so the map from the vertex is not onto
        let arc = Complex::from_vertex_lists(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        assert!(is_buchsbaum(&arc, Q).unwrap());
        assert!(!is_buchsbaum_star(&arc, Q).unwrap());
        assert!(!is_buchsbaum_star_via_relative(&arc, Q).unwrap());
    }

    #[test]
    fn non_buchsbaum_input_is_an_error() {
        assert!(matches!(is_buchsbaum_star(&bowtie(), Q), Err(Error::NotBuchsbaum(_))));
    }

    #[test]
    fn alexander_on_octahedron() {
        let oct = octahedron();
        let pair = Face::from_vertices([0, 3]).unwrap();
        let cert = alexander_duality_check(&oct, pair).unwrap();
        assert!(cert.passed());
        assert_eq!(cert.evidence["betti_W"]["values"][0], 1);
        assert_eq!(cert.evidence["betti_complement"]["values"][1], 1);
        assert!(alexander_duality_check(&oct, Face::EMPTY).unwrap().passed());
        assert_eq!(alexander_duality_check(&bowtie(), Face::EMPTY).unwrap_err(), Error::NotASphere);
    }

    #[test]
    fn dense_and_sparse_agree_on_octahedron() {
        let oct = octahedron();
        for f in [Q, CoefficientField::Z2, CoefficientField::Prime(3)] {
            assert_eq!(betti_with(&oct, f, RankMethod::DenseFractionFree), betti(&oct, f));
        }
    }
}
