//! Exact linear algebra over the rationals.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

pub type Q = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qfrac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    let mut s = Q::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn dot_int(a: &[BigInt], b: &[Q]) -> Q {
    let mut s = Q::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += Q::from_integer(x.clone()) * y;
        }
    }
    s
}

pub fn vec_add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Q], c: &Q) -> Vec<Q> {
    a.iter().map(|x| x * c).collect()
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Q], c: &Q, v: &[Q]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

pub fn to_q(v: &[BigInt]) -> Vec<Q> {
    v.iter().map(|x| Q::from_integer(x.clone())).collect()
}

pub fn int_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Scale a rational vector to a primitive integer vector with the same direction.
pub fn primitive(v: &[Q]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Rational vector with integer entries, or `None`.
pub fn as_integers(v: &[Q]) -> Option<Vec<BigInt>> {
    v.iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect()
}

pub fn to_i64_vec(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("entry fits in i64")).collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().cloned());
        }
        RatMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rr: Vec<Vec<Q>> = rows.iter().map(|r| qvec(r)).collect();
        Self::from_rows(&rr, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Q) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if !v.is_zero() {
                    t.set(c, r, v.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix { rows: self.rows, cols: self.cols, data: vec_add(&self.data, &other.data) }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix { rows: self.rows, cols: self.cols, data: vec_sub(&self.data, &other.data) }
    }

    pub fn scale(&self, c: &Q) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: vec_scale(&self.data, c) }
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Q::zero(); self.cols];
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            axpy(&mut out, x, self.row(r));
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    pub fn trace(&self) -> Q {
        let mut s = Q::zero();
        for i in 0..self.rows.min(self.cols) {
            s += self.get(i, i);
        }
        s
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Q::one());
        }
        let (red, piv) = rref(&aug);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> RatMatrix {
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a.get(r, c).recip();
        if !inv.is_one() {
            for j in c..cols {
                let v = &a.data[r * cols + j];
                if !v.is_zero() {
                    a.data[r * cols + j] = v * &inv;
                }
            }
        }
        let pivot_row: Vec<Q> = a.row(r)[c..].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for (off, pv) in pivot_row.iter().enumerate() {
                if !pv.is_zero() {
                    a.data[i * cols + c + off] -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Row-reduce a list of vectors, returning the nonzero rows and their pivots.
pub fn rref_rows(vs: &[Vec<Q>], ambient: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    if vs.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let (red, piv) = rref(&RatMatrix::from_rows(vs, ambient));
    let rows = (0..piv.len()).map(|i| red.row(i).to_vec()).collect();
    (rows, piv)
}

/// A linear subspace of Q^n held as its canonical RREF basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(&RatMatrix::identity(ambient).row_vecs(), ambient)
    }

    pub fn span(vs: &[Vec<Q>], ambient: usize) -> Self {
        let (basis, pivots) = rref_rows(vs, ambient);
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` modulo this subspace: the result vanishes on all pivot columns.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if !c.is_zero() {
                axpy(&mut w, &(-c), row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of a member vector in the canonical basis.
    pub fn coords(&self, v: &[Q]) -> Vec<Q> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(&vs, self.ambient)
    }

    /// Orthogonal complement with respect to the standard dot product.
    pub fn orth(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient);
        }
        kernel(&RatMatrix::from_rows(&self.basis, self.ambient))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.orth().sum(&other.orth()).orth()
    }

    pub fn to_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(&self.basis, self.ambient)
    }

    /// Basis rows scaled to primitive integer vectors.
    pub fn integer_basis(&self) -> Vec<Vec<BigInt>> {
        self.basis.iter().map(|v| primitive(v)).collect()
    }
}

/// Right null space of `m`.
pub fn kernel(m: &RatMatrix) -> Subspace {
    let (red, piv) = rref(m);
    let n = m.cols();
    let mut vs = Vec::new();
    let mut is_piv = vec![false; n];
    for &p in &piv {
        is_piv[p] = true;
    }
    for f in (0..n).filter(|&c| !is_piv[c]) {
        let mut v = vec![Q::zero(); n];
        v[f] = Q::one();
        for (i, &p) in piv.iter().enumerate() {
            let x = red.get(i, f);
            if !x.is_zero() {
                v[p] = -x.clone();
            }
        }
        vs.push(v);
    }
    Subspace::span(&vs, n)
}

/// Row space of `m`.
pub fn row_space(m: &RatMatrix) -> Subspace {
    Subspace::span(&m.row_vecs(), m.cols())
}

/// Column space of `m` as a subspace of Q^rows.
pub fn image(m: &RatMatrix) -> Subspace {
    row_space(&m.transpose())
}

/// Solve `m x = b`. Returns `None` iff `b` is not in the column space.
pub fn solve(m: &RatMatrix, b: &[Q]) -> Result<Option<(Vec<Q>, Subspace)>, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch { expected: m.rows(), got: b.len() });
    }
    let n = m.cols();
    let mut aug = RatMatrix::zeros(m.rows(), n + 1);
    for r in 0..m.rows() {
        for c in 0..n {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, n, b[r].clone());
    }
    let (red, piv) = rref(&aug);
    if piv.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![Q::zero(); n];
    for (i, &p) in piv.iter().enumerate() {
        x[p] = red.get(i, n).clone();
    }
    Ok(Some((x, kernel(m))))
}

/// Solve `x m = b` for a row vector `x`.
pub fn solve_left(m: &RatMatrix, b: &[Q]) -> Option<Vec<Q>> {
    solve(&m.transpose(), b).ok().flatten().map(|(x, _)| x)
}

pub fn sum_and_intersect(a: &Subspace, b: &Subspace) -> Result<(Subspace, Subspace), LinalgError> {
    if a.ambient != b.ambient {
        return Err(LinalgError::AmbientMismatch(a.ambient, b.ambient));
    }
    Ok((a.sum(b), a.intersect(b)))
}

/// A quotient `big / small` of subspaces with a canonical complement basis.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    small: Subspace,
    reps: Vec<Vec<Q>>,
    rep_pivots: Vec<usize>,
}

impl QuotientSpace {
    pub fn new(big: &Subspace, small: &Subspace) -> Self {
        let reduced: Vec<Vec<Q>> = big
            .basis()
            .iter()
            .map(|v| small.reduce(v))
            .filter(|v| !is_zero_vec(v))
            .collect();
        let (reps, rep_pivots) = rref_rows(&reduced, big.ambient());
        QuotientSpace { small: small.clone(), reps, rep_pivots }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Vec<Q>] {
        &self.reps
    }

    pub fn small(&self) -> &Subspace {
        &self.small
    }

    /// Coordinates of the class of a vector of `big`.
    pub fn coords(&self, v: &[Q]) -> Vec<Q> {
        let w = self.small.reduce(v);
        self.rep_pivots.iter().map(|&p| w[p].clone()).collect()
    }

    pub fn is_trivial_class(&self, v: &[Q]) -> bool {
        self.small.contains(v)
    }
}

/// Characteristic polynomial det(tI - m), coefficients from constant term upward.
pub fn charpoly(m: &RatMatrix) -> Vec<Q> {
    let n = m.rows();
    // Faddeev-LeVerrier
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut mk = RatMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m.mul(&mk);
        let c = &coeffs[n - k + 1];
        for i in 0..n {
            next.add_to(i, i, c);
        }
        mk = next;
        let am = m.mul(&mk);
        coeffs[n - k] = -am.trace() / q(k as i64);
    }
    coeffs
}

fn poly_trim(p: &mut Vec<Q>) {
    while p.len() > 1 && p.last().is_some_and(|x| x.is_zero()) {
        p.pop();
    }
}

fn poly_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut b = b.to_vec();
    poly_trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    while !(r.len() == 1 && r[0].is_zero()) && r.len() > db {
        let dr = r.len() - 1;
        let f = &r[dr] / &lead;
        for i in 0..=db {
            let t = &f * &b[i];
            r[dr - db + i] -= t;
        }
        r.pop();
        if r.is_empty() {
            r.push(Q::zero());
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !(y.len() == 1 && y[0].is_zero()) {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    let lead = x.last().cloned().unwrap_or_else(Q::one);
    if lead.is_zero() {
        return x;
    }
    x.iter().map(|c| c / &lead).collect()
}

fn poly_eval(p: &[Q], x: &Q) -> Q {
    let mut acc = Q::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn divisors(n: &BigInt, limit: u64) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Some(vec![BigInt::zero()]);
    }
    let nu = n.to_u64()?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= nu {
        if d > limit {
            return None;
        }
        if nu % d == 0 {
            out.push(BigInt::from(d));
            if d * d != nu {
                out.push(BigInt::from(nu / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Distinct rational roots of a polynomial (coefficients from the constant term up).
pub fn rational_roots(p: &[Q]) -> Vec<Q> {
    let mut p = p.to_vec();
    poly_trim(&mut p);
    if p.len() <= 1 {
        return Vec::new();
    }
    let deriv: Vec<Q> = (1..p.len()).map(|i| &p[i] * q(i as i64)).collect();
    let g = poly_gcd(&p, &deriv);
    // squarefree part p / g
    let mut sq = p.clone();
    if g.len() > 1 {
        sq = poly_div(&p, &g);
    }
    let mut roots = Vec::new();
    // strip factors of t
    if sq[0].is_zero() {
        roots.push(Q::zero());
        let mut k = 0;
        while sq[k].is_zero() {
            k += 1;
        }
        sq = sq[k..].to_vec();
    }
    let ints = primitive(&sq);
    let a0 = ints[0].clone();
    let an = ints[ints.len() - 1].clone();
    let (Some(ps), Some(qs)) = (divisors(&a0, 2_000_000), divisors(&an, 2_000_000)) else {
        return roots;
    };
    for pp in &ps {
        for qq in &qs {
            for sign in [1i64, -1] {
                let cand = Q::new(pp * BigInt::from(sign), qq.clone());
                if poly_eval(&sq, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn poly_div(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let da = a.len() - 1;
    if da < db {
        return vec![Q::zero()];
    }
    let mut quo = vec![Q::zero(); da - db + 1];
    let lead = b[db].clone();
    for k in (0..=da - db).rev() {
        let f = &r[k + db] / &lead;
        for i in 0..=db {
            let t = &f * &b[i];
            r[k + i] -= t;
        }
        quo[k] = f;
    }
    quo
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let mut out = vec![Q::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    poly_trim(&mut out);
    out
}

/// Returns (g, u, v) with u*a + v*b = g, g monic.
fn poly_ext_gcd(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>, Vec<Q>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let (mut s0, mut s1) = (vec![Q::one()], vec![Q::zero()]);
    let (mut t0, mut t1) = (vec![Q::zero()], vec![Q::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let quo = if r0.len() >= r1.len() { poly_div(&r0, &r1) } else { vec![Q::zero()] };
        let r2 = poly_sub(&r0, &poly_mul(&quo, &r1));
        let s2 = poly_sub(&s0, &poly_mul(&quo, &s1));
        let t2 = poly_sub(&t0, &poly_mul(&quo, &t1));
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let lead = r0.last().cloned().unwrap_or_else(Q::one);
    let norm = |p: Vec<Q>| p.into_iter().map(|c| c / &lead).collect::<Vec<Q>>();
    (norm(r0), norm(s0), norm(t0))
}

/// Given a characteristic polynomial and one of its rational roots, returns a
/// polynomial `p` with `p(X)` the projection killing the generalized eigenspace
/// of that root. `None` when the root is the only eigenvalue.
pub fn fitting_polynomial(chi: &[Q], root: &Q) -> Option<Vec<Q>> {
    let lin = vec![-root.clone(), Q::one()];
    let mut g = chi.to_vec();
    poly_trim(&mut g);
    let mut pw = vec![Q::one()];
    loop {
        if poly_eval(&g, root).is_zero() {
            g = poly_div(&g, &lin);
            pw = poly_mul(&pw, &lin);
        } else {
            break;
        }
    }
    if g.len() <= 1 {
        return None;
    }
    let (_, u, _) = poly_ext_gcd(&pw, &g);
    let mut p = poly_mul(&u, &pw);
    poly_trim(&mut p);
    Some(p)
}

/// Evaluate a polynomial at a square matrix.
pub fn poly_at_matrix(p: &[Q], x: &RatMatrix) -> RatMatrix {
    let n = x.rows();
    let mut acc = RatMatrix::zeros(n, n);
    for c in p.iter().rev() {
        acc = acc.mul(x);
        for i in 0..n {
            acc.add_to(i, i, c);
        }
    }
    acc
}

/// Rank computed by fraction-free (Bareiss) elimination over the integers.
pub fn bareiss_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}
