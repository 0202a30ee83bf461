//! Cyclic covers described by `Z/t`-valued edge cocycles.
//!
//! Cover vertex `(v, k)` has id `k·n + v`, where `n` is the vertex range of
//! the base. A face `{v_0 < v_1 < ..}` lifts to `{(v_j, k + ω(v_0, v_j))}` for
//! every sheet `k`; the cocycle condition makes lifts of subfaces agree.

use std::collections::BTreeMap;

use serde_json::json;

use crate::certificate::{Certificate, InputsDigest, Verdict};
use crate::coloring::Coloring;
use crate::complex::{binomial_i, Complex};
use crate::constructions::LabeledComplex;
use crate::error::{Error, Result};
use crate::face::Face;
use crate::homology::{self, CoefficientField};
use crate::iso;

/// Values `ω(u, v)` in `Z/t` on edges `u < v`; `ω(v, u) = -ω(u, v)`. Edges not
/// listed carry zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    t: u64,
    values: BTreeMap<(usize, usize), u64>,
}

impl Cocycle {
    /// Takes oriented values `(u, v) -> ω(u, v)` with `u < v`, reduced mod `t`.
    pub fn new(t: u64, values: &BTreeMap<(usize, usize), i64>) -> Result<Self> {
        if t < 2 {
            return Err(Error::BadParameters(format!("sheet count must be at least 2, got {t}")));
        }
        let mut out = BTreeMap::new();
        for (&(u, v), &x) in values {
            if u >= v {
                return Err(Error::InvalidCocycle(format!("edge ({u}, {v}) is not increasing")));
            }
            let r = x.rem_euclid(t as i64) as u64;
            if r != 0 {
                out.insert((u, v), r);
            }
        }
        Ok(Cocycle { t, values: out })
    }

    pub fn zero(t: u64) -> Result<Self> {
        Cocycle::new(t, &BTreeMap::new())
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// `ω(u, v)` in `0..t`.
    pub fn value(&self, u: usize, v: usize) -> u64 {
        if u < v {
            self.values.get(&(u, v)).copied().unwrap_or(0)
        } else if v < u {
            (self.t - self.value(v, u)) % self.t
        } else {
            0
        }
    }

    /// Nonzero values on increasing edges, as signed integers.
    pub fn values(&self) -> BTreeMap<(usize, usize), i64> {
        self.values.iter().map(|(&k, &v)| (k, v as i64)).collect()
    }

    /// Every listed edge is an edge of `c` and every triangle `{a, b, c}`
    /// has `ω(a,b) + ω(b,c) + ω(c,a) = 0`.
    pub fn validate(&self, c: &Complex) -> Result<()> {
        let g = c.graph();
        if let Some(&(u, v)) = self.values.keys().find(|&&(u, v)| !g.has_edge(u, v)) {
            return Err(Error::InvalidCocycle(format!("{{{u},{v}}} is not an edge")));
        }
        for &tri in c.faces_of_size(3) {
            let vs = tri.to_vec();
            let (a, b, x) = (vs[0], vs[1], vs[2]);
            if !(self.value(a, b) + self.value(b, x) + self.value(x, a)).is_multiple_of(self.t) {
                return Err(Error::InvalidCocycle(format!("cocycle condition fails on {tri}")));
            }
        }
        Ok(())
    }
}

/// The cover `Δ^t` determined by `ω`.
pub fn cyclic_cover(c: &Complex, omega: &Cocycle) -> Result<Complex> {
    omega.validate(c)?;
    let n = c.n();
    let t = omega.t as usize;
    if n * t > Face::MAX_VERTICES {
        return Err(Error::TooManyVertices(n * t));
    }
    let mut facets = Vec::with_capacity(c.num_facets() * t);
    for &f in c.facets() {
        let Some(v0) = f.min_vertex() else {
            facets.push(Face::EMPTY);
            continue;
        };
        for k in 0..t {
            let bits = f.vertices().fold(0u64, |acc, v| {
                let sheet = (k + omega.value(v0, v) as usize) % t;
                acc | 1 << (sheet * n + v)
            });
            facets.push(Face::from_bits(bits));
        }
    }
    Ok(Complex::from_raw(n * t, facets))
}

/// The coloring `κ ∘ projection` on the cover.
pub fn lift_coloring(kappa: &Coloring, n: usize, t: u64) -> Coloring {
    kappa.pull_back(n * t as usize, |i| i % n)
}

/// The cocycle taking value 1 on every edge from a `z` vertex to an `x`
/// vertex of `BM_d`, read off from the vertex names.
pub fn handle_cocycle(b: &LabeledComplex, t: u64) -> Result<Cocycle> {
    let class = |prefix: char| -> Vec<usize> {
        (0..b.names.len())
            .filter(|&v| b.names[v].starts_with(prefix) && b.names[v][1..].chars().all(|c| c.is_ascii_digit()))
            .collect()
    };
    let (xs, zs) = (class('x'), class('z'));
    if xs.is_empty() || zs.is_empty() {
        return Err(Error::BadParameters("expected vertices named x_i and z_i".into()));
    }
    let g = b.complex.graph();
    let mut values = BTreeMap::new();
    for &x in &xs {
        for &z in &zs {
            if g.has_edge(x, z) {
                let (key, val) = if z < x { ((z, x), 1) } else { ((x, z), -1) };
                values.insert(key, val);
            }
        }
    }
    let omega = Cocycle::new(t, &values)?;
    omega.validate(&b.complex)?;
    Ok(omega)
}

/// Whether the link of every cover vertex is isomorphic to the link of its
/// image.
pub fn links_project_isomorphically(c: &Complex, cover: &Complex) -> bool {
    let n = c.n();
    cover.vertex_set().vertices().all(|w| {
        let up = cover.link(Face::singleton(w)).expect("cover vertex");
        let down = c.link(Face::singleton(w % n)).expect("base vertex");
        iso::is_isomorphic(&up, &down)
    })
}

/// Compares `h_i(Δ^t)` with `t·h_i(Δ) + (-1)^{i-1}(t-1)·C(d, i)` for every
/// `i`. The verdict is decided by `i = 1, 2`; all `i` are reported, together
/// with the face-count route `f_i(Δ^t) = t·f_i(Δ)`.
pub fn cover_h_identity_check(c: &Complex, omega: &Cocycle) -> Result<Certificate> {
    let claim = "cover-h-identity";
    let h = c.h_vector()?;
    let cover = cyclic_cover(c, omega)?;
    if !cover.is_connected() {
        return Err(Error::DisconnectedCover);
    }
    let d = h.d() as i64;
    let t = omega.t as i64;
    let hc = cover.h_vector()?;
    let rows: Vec<(i64, i64, i64)> = (0..=d)
        .map(|i| {
            let sign = if (i - 1).rem_euclid(2) == 0 { 1 } else { -1 };
            let predicted = t * h.get(i as usize) + sign * (t - 1) * binomial_i(d, i);
            (i, hc.get(i as usize), predicted)
        })
        .collect();
    let low_ok = rows.iter().filter(|r| r.0 == 1 || r.0 == 2).all(|r| r.1 == r.2);
    let all_ok = rows.iter().all(|r| r.1 == r.2);
    let fc = cover.f_vector();
    let fb = c.f_vector();
    let f_ok = (0..d as isize).all(|i| fc.get(i) == omega.t * fb.get(i));
    let digest = InputsDigest::new(claim)
        .complex(c)
        .number("t", t)
        .text("cocycle", &crate::io::write_cocycle(&omega.values()))
        .finish();
    let evidence = json!({
        "d": d,
        "t": t,
        "h": h.counts(),
        "h_cover": hc.counts(),
        "f": fb.counts(),
        "f_cover": fc.counts(),
        "rows": rows.iter().map(|&(i, a, b)| json!({"i": i, "cover": a, "predicted": b})).collect::<Vec<_>>(),
        "holds_for_all_i": all_ok,
        "face_counts_scale": f_ok,
    });
    Ok(Certificate::new(claim, digest, Verdict::from_bool(low_ok), evidence))
}

/// Buchsbaum* of the cover, given Buchsbaum* of the base over `field`.
pub fn cover_buchsbaum_star_check(c: &Complex, omega: &Cocycle, field: CoefficientField) -> Result<Certificate> {
    let claim = "cover-buchsbaum-star";
    if !homology::is_buchsbaum_star(c, field)? {
        return Err(Error::NotBuchsbaumStar(field.to_string()));
    }
    let cover = cyclic_cover(c, omega)?;
    let ok = match homology::is_buchsbaum_star(&cover, field) {
        Ok(b) => b,
        Err(Error::NotBuchsbaum(_)) => false,
        Err(e) => return Err(e),
    };
    let digest = InputsDigest::new(claim)
        .complex(c)
        .number("t", omega.t as i64)
        .text("cocycle", &crate::io::write_cocycle(&omega.values()))
        .text("field", &field.to_string())
        .finish();
    let evidence = json!({
        "field": field.to_string(),
        "t": omega.t,
        "cover_vertices": cover.num_vertices(),
        "cover_facets": cover.num_facets(),
        "cover_connected": cover.is_connected(),
        "links_match": links_project_isomorphically(c, &cover),
    });
    Ok(Certificate::new(claim, digest, Verdict::from_bool(ok), evidence))
}
