//! Exact linear algebra for boundary matrices.
//!
//! Rational ranks never touch floating point: the default path is a sparse
//! integer elimination that cross-multiplies rows and divides out row
//! contents, and the dense route is Bareiss fraction-free elimination over
//! arbitrary-precision integers. Prime fields get a sparse elimination of
//! their own. The [`Field`] trait covers the small dense problems (kernels,
//! induced maps) where explicit vectors are needed.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Integer matrix stored as sparse rows of `(column, value)` pairs, sorted by
/// column with no explicit zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub ncols: usize,
    pub rows: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix { ncols, rows: Vec::new() }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn push_row(&mut self, mut row: Vec<(u32, i64)>) {
        row.retain(|e| e.1 != 0);
        row.sort_unstable_by_key(|e| e.0);
        self.rows.push(row);
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![0; self.ncols];
                for &(c, v) in r {
                    d[c as usize] = v;
                }
                d
            })
            .collect()
    }

    /// Product `self · other`, reading rows as vectors: entry `(i, k)` is
    /// `Σ_j self[i][j] · other[j][k]`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = SparseMatrix::new(other.ncols);
        for r in &self.rows {
            let mut acc = std::collections::BTreeMap::<u32, i64>::new();
            for &(j, a) in r {
                for &(k, b) in &other.rows[j as usize] {
                    *acc.entry(k).or_default() += a * b;
                }
            }
            out.push_row(acc.into_iter().collect());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }
}

/// Rank over the rationals.
pub fn rank_rational(m: &SparseMatrix) -> usize {
    match rank_integer_sparse(m) {
        Some(r) => r,
        None => rank_bareiss(m),
    }
}

fn content_normalize(row: &mut [(u32, i128)]) {
    let g = row.iter().fold(0i128, |g, e| g.gcd(&e.1));
    let g = if row.first().is_some_and(|e| e.1 < 0) { -g } else { g };
    if g != 0 && g != 1 {
        for e in row.iter_mut() {
            e.1 /= g;
        }
    }
}

/// `a·x + b·y` for sparse rows; `None` on overflow.
fn combine(x: &[(u32, i128)], a: i128, y: &[(u32, i128)], b: i128) -> Option<Vec<(u32, i128)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (c, v) = match (x.get(i), y.get(j)) {
            (Some(&(cx, vx)), Some(&(cy, _))) if cx < cy => {
                i += 1;
                (cx, vx.checked_mul(a)?)
            }
            (Some(&(cx, _)), Some(&(cy, vy))) if cy < cx => {
                j += 1;
                (cy, vy.checked_mul(b)?)
            }
            (Some(&(cx, vx)), Some(&(_, vy))) => {
                i += 1;
                j += 1;
                (cx, vx.checked_mul(a)?.checked_add(vy.checked_mul(b)?)?)
            }
            (Some(&(cx, vx)), None) => {
                i += 1;
                (cx, vx.checked_mul(a)?)
            }
            (None, Some(&(cy, vy))) => {
                j += 1;
                (cy, vy.checked_mul(b)?)
            }
            (None, None) => unreachable!(),
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    Some(out)
}

/// Fraction-free sparse elimination on leading columns. Returns `None` if an
/// intermediate entry overflows `i128`.
pub fn rank_integer_sparse(m: &SparseMatrix) -> Option<usize> {
    let mut pivot_of: Vec<Option<usize>> = vec![None; m.ncols];
    let mut basis: Vec<Vec<(u32, i128)>> = Vec::new();
    for row in &m.rows {
        let mut r: Vec<(u32, i128)> = row.iter().map(|&(c, v)| (c, v as i128)).collect();
        while let Some(&(c, a)) = r.first() {
            match pivot_of[c as usize] {
                None => {
                    content_normalize(&mut r);
                    pivot_of[c as usize] = Some(basis.len());
                    basis.push(r);
                    break;
                }
                Some(pi) => {
                    let p = &basis[pi];
                    let b = p[0].1;
                    let g = a.gcd(&b);
                    r = combine(&r, b / g, p, -(a / g))?;
                    content_normalize(&mut r);
                }
            }
        }
    }
    Some(basis.len())
}

/// Dense Bareiss elimination over `BigInt`. Every division is exact.
pub fn rank_bareiss(m: &SparseMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .to_dense()
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    let rows = a.len();
    let cols = m.ncols;
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        let (top, bottom) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in bottom {
            let lead = row[col].clone();
            for (x, p) in row[col + 1..].iter_mut().zip(&prow[col + 1..]) {
                *x = (&*x * &pivot - &lead * p) / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Sparse elimination modulo a prime `p < 2^32`.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    let f = PrimeField::new(p);
    let mut pivot_of: Vec<Option<usize>> = vec![None; m.ncols];
    let mut basis: Vec<Vec<(u32, u64)>> = Vec::new();
    for row in &m.rows {
        let mut r: Vec<(u32, u64)> =
            row.iter().map(|&(c, v)| (c, f.from_i64(v))).filter(|e| e.1 != 0).collect();
        while let Some(&(c, a)) = r.first() {
            match pivot_of[c as usize] {
                None => {
                    let inv = f.inv(&a);
                    for e in r.iter_mut() {
                        e.1 = f.mul(&e.1, &inv);
                    }
                    pivot_of[c as usize] = Some(basis.len());
                    basis.push(r);
                    break;
                }
                Some(pi) => {
                    let pr = &basis[pi];
                    let mut out = Vec::with_capacity(r.len() + pr.len());
                    let (mut i, mut j) = (0, 0);
                    let na = f.neg(&a);
                    while i < r.len() || j < pr.len() {
                        let (col, v) = match (r.get(i), pr.get(j)) {
                            (Some(&(cx, vx)), Some(&(cy, _))) if cx < cy => {
                                i += 1;
                                (cx, vx)
                            }
                            (Some(&(cx, _)), Some(&(cy, vy))) if cy < cx => {
                                j += 1;
                                (cy, f.mul(&vy, &na))
                            }
                            (Some(&(cx, vx)), Some(&(_, vy))) => {
                                i += 1;
                                j += 1;
                                (cx, f.add(&vx, &f.mul(&vy, &na)))
                            }
                            (Some(&(cx, vx)), None) => {
                                i += 1;
                                (cx, vx)
                            }
                            (None, Some(&(cy, vy))) => {
                                j += 1;
                                (cy, f.mul(&vy, &na))
                            }
                            (None, None) => unreachable!(),
                        };
                        if v != 0 {
                            out.push((col, v));
                        }
                    }
                    r = out;
                }
            }
        }
    }
    basis.len()
}

/// Arithmetic of a coefficient field.
pub trait Field: Sync {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, x: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` is assumed prime and below `2^32`.
    pub fn new(p: u64) -> Self {
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(!(*a).is_multiple_of(self.p), "inverse of zero");
        // Fermat
        let (mut base, mut exp, mut acc) = (*a % self.p, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Incrementally built echelon basis of a subspace of `F^n`. Each stored row
/// has a pivot entry equal to one and vanishes at the pivots of earlier rows.
pub struct Echelon<'f, F: Field> {
    field: &'f F,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<'f, F: Field> Echelon<'f, F> {
    pub fn new(field: &'f F) -> Self {
        Echelon { field, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [F::Elem]) {
        let f = self.field;
        for (pivot, row) in &self.rows {
            if f.is_zero(&v[*pivot]) {
                continue;
            }
            let factor = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&factor, r));
                }
            }
        }
    }

    /// Adds `v` to the span; true if it was independent of the current rows.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        self.reduce(&mut v);
        let f = self.field;
        let Some(pivot) = v.iter().position(|x| !f.is_zero(x)) else { return false };
        let inv = f.inv(&v[pivot]);
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        self.rows.push((pivot, v));
        true
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| self.field.is_zero(x))
    }
}

/// Rank of a list of dense vectors.
pub fn rank_dense<F: Field>(field: &F, vectors: &[Vec<F::Elem>]) -> usize {
    let mut e = Echelon::new(field);
    for v in vectors {
        e.insert(v.clone());
    }
    e.rank()
}

/// Basis of `{x ∈ F^m : Σ_j x_j · images[j] = 0}`, where `images[j]` is the
/// image of the `j`-th domain basis vector.
/// Pivot column, reduced image, and the combination of inputs giving it.
type Pivot<E> = (usize, Vec<E>, Vec<E>);

pub fn kernel_basis<F: Field>(field: &F, images: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let m = images.len();
    let mut stored: Vec<Pivot<F::Elem>> = Vec::new();
    let mut kernel = Vec::new();
    for (j, image) in images.iter().enumerate() {
        let mut img = image.clone();
        let mut combo = vec![field.zero(); m];
        combo[j] = field.one();
        for (pivot, img_r, combo_r) in &stored {
            if field.is_zero(&img[*pivot]) {
                continue;
            }
            let factor = img[*pivot].clone();
            for (x, r) in img.iter_mut().zip(img_r) {
                if !field.is_zero(r) {
                    *x = field.sub(x, &field.mul(&factor, r));
                }
            }
            for (x, r) in combo.iter_mut().zip(combo_r) {
                if !field.is_zero(r) {
                    *x = field.sub(x, &field.mul(&factor, r));
                }
            }
        }
        match img.iter().position(|x| !field.is_zero(x)) {
            None => kernel.push(combo),
            Some(pivot) => {
                let inv = field.inv(&img[pivot]);
                for x in img.iter_mut() {
                    *x = field.mul(x, &inv);
                }
                for x in combo.iter_mut() {
                    *x = field.mul(x, &inv);
                }
                stored.push((pivot, img, combo));
            }
        }
    }
    kernel
}

/// Rational rank via a dense `Field` elimination; used as a cross-check.
pub fn rank_rational_dense_field(m: &SparseMatrix) -> usize {
    let f = Rationals;
    let rows: Vec<Vec<BigRational>> =
        m.to_dense().into_iter().map(|r| r.into_iter().map(|x| f.from_i64(x)).collect()).collect();
    rank_dense(&f, &rows)
}
