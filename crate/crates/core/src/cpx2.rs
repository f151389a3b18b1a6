//! Two-term complexes of projectives `P⁻¹ → P⁰` in the homotopy category.
//!
//! A map `P(k) → P(j)` is left multiplication by an element of `e_j A e_k`;
//! a differential is a matrix with rows indexed by `P⁰` summands and columns
//! by `P⁻¹` summands, so composition is the ordinary matrix product.

use crate::algebra::{AlgRef, Algebra, AlgebraError};
use crate::qlinalg::{axpy, is_zero_vec, kernel, QuotientSpace, Q, RatMatrix, Subspace};
use crate::repmod::{self, left_kernel, AModule, ModError, Submodule};
use num::{One, Zero};
use serde::Deserialize;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CpxError {
    #[error("complexes have different owner algebras")]
    OwnerMismatch,
    #[error("complex is not silting")]
    NotSilting,
    #[error("complex is not presilting")]
    NotPresilting,
    #[error("mutation result is not a 2-term complex")]
    Not2TermResult,
    #[error("completion could not be certified: {0}")]
    CompletionNotVerified(String),
    #[error("summand index {0} out of range")]
    BadIndex(usize),
    #[error("entry ({0}, {1}) does not lie in the required idempotent corner")]
    WrongCorner(usize, usize),
    #[error("complex file: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Module(#[from] ModError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

type Res<T> = Result<T, CpxError>;

/// Matrix of algebra elements; entry (r, c) lies in `e_{rows[r]} A e_{cols[c]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AMat {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub e: Vec<Vec<Vec<Q>>>,
}

impl AMat {
    pub fn zero(alg: &Algebra, rows: &[usize], cols: &[usize]) -> AMat {
        AMat { rows: rows.to_vec(), cols: cols.to_vec(), e: vec![vec![vec![Q::zero(); alg.dim()]; cols.len()]; rows.len()] }
    }

    pub fn identity(alg: &Algebra, idx: &[usize]) -> AMat {
        let mut m = AMat::zero(alg, idx, idx);
        for (i, &k) in idx.iter().enumerate() {
            m.e[i][i] = alg.basis_vec(alg.pc().idem[k]);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(|x| is_zero_vec(x))
    }

    pub fn mul(&self, alg: &Algebra, other: &AMat) -> AMat {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = AMat::zero(alg, &self.rows, &other.cols);
        for r in 0..self.rows.len() {
            for (k, x) in self.e[r].iter().enumerate() {
                if is_zero_vec(x) {
                    continue;
                }
                for c in 0..other.cols.len() {
                    let y = &other.e[k][c];
                    if !is_zero_vec(y) {
                        let p = alg.mul(x, y);
                        axpy(&mut out.e[r][c], &Q::one(), &p);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &AMat) -> AMat {
        let mut out = self.clone();
        for (ro, rb) in out.e.iter_mut().zip(&other.e) {
            for (x, y) in ro.iter_mut().zip(rb) {
                axpy(x, &Q::one(), y);
            }
        }
        out
    }

    pub fn neg(&self) -> AMat {
        let mut out = self.clone();
        for x in out.e.iter_mut().flatten().flatten() {
            *x = -x.clone();
        }
        out
    }

    pub fn sub(&self, other: &AMat) -> AMat {
        self.add(&other.neg())
    }

    pub fn vstack(&self, other: &AMat) -> AMat {
        let mut rows = self.rows.clone();
        rows.extend(&other.rows);
        let mut e = self.e.clone();
        e.extend(other.e.iter().cloned());
        AMat { rows, cols: self.cols.clone(), e }
    }

    pub fn hstack(&self, other: &AMat) -> AMat {
        let mut cols = self.cols.clone();
        cols.extend(&other.cols);
        let e = self.e.iter().zip(&other.e).map(|(a, b)| a.iter().chain(b).cloned().collect()).collect();
        AMat { rows: self.rows.clone(), cols, e }
    }

    pub fn block_diag(alg: &Algebra, parts: &[&AMat]) -> AMat {
        let rows: Vec<usize> = parts.iter().flat_map(|p| p.rows.iter().cloned()).collect();
        let cols: Vec<usize> = parts.iter().flat_map(|p| p.cols.iter().cloned()).collect();
        let mut out = AMat::zero(alg, &rows, &cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            for r in 0..p.rows.len() {
                for c in 0..p.cols.len() {
                    out.e[r0 + r][c0 + c] = p.e[r][c].clone();
                }
            }
            r0 += p.rows.len();
            c0 += p.cols.len();
        }
        out
    }

    fn drop_row(&self, r: usize) -> AMat {
        let mut out = self.clone();
        out.rows.remove(r);
        out.e.remove(r);
        out
    }

    fn drop_col(&self, c: usize) -> AMat {
        let mut out = self.clone();
        out.cols.remove(c);
        for row in out.e.iter_mut() {
            row.remove(c);
        }
        out
    }

    pub fn flat_dim(alg: &Algebra, rows: &[usize], cols: &[usize]) -> usize {
        let p = alg.pc();
        rows.iter().map(|&r| cols.iter().map(|&c| p.corner_basis[r][c].len()).sum::<usize>()).sum()
    }

    /// Coordinates over the corner bases, row-major.
    pub fn flatten(&self, alg: &Algebra) -> Vec<Q> {
        let p = alg.pc();
        let mut v = Vec::new();
        for (r, &j) in self.rows.iter().enumerate() {
            for (c, &k) in self.cols.iter().enumerate() {
                for &b in &p.corner_basis[j][k] {
                    v.push(self.e[r][c][b].clone());
                }
            }
        }
        v
    }

    pub fn unflatten(alg: &Algebra, rows: &[usize], cols: &[usize], v: &[Q]) -> AMat {
        let p = alg.pc();
        let mut out = AMat::zero(alg, rows, cols);
        let mut off = 0;
        for (r, &j) in rows.iter().enumerate() {
            for (c, &k) in cols.iter().enumerate() {
                for &b in &p.corner_basis[j][k] {
                    out.e[r][c][b] = v[off].clone();
                    off += 1;
                }
            }
        }
        out
    }

    /// Every entry supported in its corner.
    pub fn check_corners(&self, alg: &Algebra) -> Res<()> {
        let p = alg.pc();
        for (r, &j) in self.rows.iter().enumerate() {
            for (c, &k) in self.cols.iter().enumerate() {
                for (b, x) in self.e[r][c].iter().enumerate() {
                    if !x.is_zero() && p.corner[b] != (j, k) {
                        return Err(CpxError::WrongCorner(r, c));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Matrix of a linear map given by its action on unit vectors (columns = inputs).
fn matrix_of(nin: usize, nout: usize, f: impl Fn(&[Q]) -> Vec<Q>) -> RatMatrix {
    let mut m = RatMatrix::zeros(nout, nin);
    for i in 0..nin {
        let mut e = vec![Q::zero(); nin];
        e[i] = Q::one();
        for (r, x) in f(&e).into_iter().enumerate() {
            if !x.is_zero() {
                m.set(r, i, x);
            }
        }
    }
    m
}

fn image_space(m: &RatMatrix) -> Subspace {
    Subspace::span(&m.transpose().row_vecs(), m.rows())
}

/// Unit entry of a differential: diagonal corner with nonzero idempotent coefficient.
fn find_unit(alg: &Algebra, d: &AMat) -> Option<(usize, usize)> {
    let p = alg.pc();
    for (r, &j) in d.rows.iter().enumerate() {
        for (c, &k) in d.cols.iter().enumerate() {
            if j == k && !d.e[r][c][p.idem[j]].is_zero() {
                return Some((r, c));
            }
        }
    }
    None
}

/// Inverse of a unit of the local corner `e_k A e_k`.
fn unit_inverse(alg: &Algebra, x: &[Q], k: usize) -> Vec<Q> {
    let ek = alg.pc().idem[k];
    let lambda = x[ek].clone();
    let inv = Q::one() / &lambda;
    let mut m: Vec<Q> = x.iter().map(|y| -(y * &inv)).collect();
    m[ek] = Q::zero();
    let mut term = alg.basis_vec(ek);
    let mut sum = term.clone();
    loop {
        term = alg.mul(&term, &m);
        if is_zero_vec(&term) {
            break;
        }
        axpy(&mut sum, &Q::one(), &term);
    }
    sum.iter().map(|y| y * &inv).collect()
}

/// Gaussian elimination of a unit entry: d' = δ - β u⁻¹ α on the remaining block.
fn schur(alg: &Algebra, d: &AMat, r: usize, c: usize) -> AMat {
    let uinv = unit_inverse(alg, &d.e[r][c], d.rows[r]);
    let mut out = d.drop_row(r).drop_col(c);
    let keep_r: Vec<usize> = (0..d.rows.len()).filter(|&x| x != r).collect();
    let keep_c: Vec<usize> = (0..d.cols.len()).filter(|&x| x != c).collect();
    for (ri, &r2) in keep_r.iter().enumerate() {
        if is_zero_vec(&d.e[r2][c]) {
            continue;
        }
        let left = alg.mul(&d.e[r2][c], &uinv);
        for (ci, &c2) in keep_c.iter().enumerate() {
            if is_zero_vec(&d.e[r][c2]) {
                continue;
            }
            let corr = alg.mul(&left, &d.e[r][c2]);
            axpy(&mut out.e[ri][ci], &-Q::one(), &corr);
        }
    }
    out
}

/// Three-term complex `t0 → t1 → t2`.
struct Tri {
    d1: AMat,
    d2: AMat,
}

impl Tri {
    fn eliminate_d1(&mut self, alg: &Algebra) {
        while let Some((r, c)) = find_unit(alg, &self.d1) {
            self.d1 = schur(alg, &self.d1, r, c);
            self.d2 = self.d2.drop_col(r);
        }
    }

    fn eliminate_d2(&mut self, alg: &Algebra) {
        while let Some((r, c)) = find_unit(alg, &self.d2) {
            self.d2 = schur(alg, &self.d2, r, c);
            self.d1 = self.d1.drop_row(c);
        }
    }
}

#[derive(Clone, Debug)]
pub struct TwoTerm {
    alg: AlgRef,
    d: AMat,
}

/// Chain map between two-term complexes: components in degree -1 and 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainMap {
    pub f1: AMat,
    pub f0: AMat,
}

impl ChainMap {
    /// `g ∘ self`
    pub fn then(&self, alg: &Algebra, g: &ChainMap) -> ChainMap {
        ChainMap { f1: g.f1.mul(alg, &self.f1), f0: g.f0.mul(alg, &self.f0) }
    }

    fn flatten(&self, alg: &Algebra) -> Vec<Q> {
        let mut v = self.f1.flatten(alg);
        v.extend(self.f0.flatten(alg));
        v
    }
}

impl TwoTerm {
    pub fn new(alg: &AlgRef, minus: Vec<usize>, zero: Vec<usize>, entries: Vec<Vec<Vec<Q>>>) -> Res<TwoTerm> {
        let d = AMat { rows: zero, cols: minus, e: entries };
        if d.e.len() != d.rows.len() || d.e.iter().any(|r| r.len() != d.cols.len()) {
            return Err(CpxError::Parse("differential shape does not match the terms".into()));
        }
        d.check_corners(alg)?;
        Ok(TwoTerm { alg: alg.clone(), d })
    }

    fn from_amat(alg: &AlgRef, d: AMat) -> TwoTerm {
        TwoTerm { alg: alg.clone(), d }
    }

    pub fn stalk(alg: &AlgRef, k: usize) -> TwoTerm {
        TwoTerm::from_amat(alg, AMat::zero(alg, &[k], &[]))
    }

    pub fn shifted(alg: &AlgRef, k: usize) -> TwoTerm {
        TwoTerm::from_amat(alg, AMat::zero(alg, &[], &[k]))
    }

    pub fn zero_complex(alg: &AlgRef) -> TwoTerm {
        TwoTerm::from_amat(alg, AMat::zero(alg, &[], &[]))
    }

    /// The stalk complex A, as its indecomposable summands.
    pub fn regular(alg: &AlgRef) -> Vec<TwoTerm> {
        (0..alg.n()).map(|k| TwoTerm::stalk(alg, k)).collect()
    }

    /// A[1], as its indecomposable summands.
    pub fn regular_shift(alg: &AlgRef) -> Vec<TwoTerm> {
        (0..alg.n()).map(|k| TwoTerm::shifted(alg, k)).collect()
    }

    pub fn alg(&self) -> &AlgRef {
        &self.alg
    }

    pub fn minus(&self) -> &[usize] {
        &self.d.cols
    }

    pub fn zero(&self) -> &[usize] {
        &self.d.rows
    }

    pub fn diff(&self) -> &AMat {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.d.rows.is_empty() && self.d.cols.is_empty()
    }

    pub fn gvector(&self) -> Vec<i64> {
        let mut g = vec![0i64; self.alg.n()];
        for &k in &self.d.rows {
            g[k] += 1;
        }
        for &k in &self.d.cols {
            g[k] -= 1;
        }
        g
    }

    pub fn direct_sum(alg: &AlgRef, parts: &[&TwoTerm]) -> TwoTerm {
        let ds: Vec<&AMat> = parts.iter().map(|p| &p.d).collect();
        TwoTerm::from_amat(alg, AMat::block_diag(alg, &ds))
    }

    /// Minimal form: cancel every summand of shape `P →id P`.
    pub fn reduced(&self) -> TwoTerm {
        let mut d = self.d.clone();
        while let Some((r, c)) = find_unit(&self.alg, &d) {
            d = schur(&self.alg, &d, r, c);
        }
        TwoTerm::from_amat(&self.alg, d)
    }

    pub fn is_minimal(&self) -> bool {
        find_unit(&self.alg, &self.d).is_none()
    }

    /// Full coordinate vector in `⊕_r P(rows[r])` of the column `c`.
    fn column_vector(&self, p0: &AModule, c: usize) -> Vec<Q> {
        let p = self.alg.pc();
        let v = self.d.cols[c];
        let mut out = vec![Q::zero(); p0.dim()];
        let mut off = p0.offset(v);
        for (r, &j) in self.d.rows.iter().enumerate() {
            for &b in &p.corner_basis[j][v] {
                out[off] = self.d.e[r][c][b].clone();
                off += 1;
            }
        }
        out
    }

    fn p0(&self) -> AModule {
        let ps: Vec<AModule> = self.d.rows.iter().map(|&k| AModule::projective(&self.alg, k)).collect();
        AModule::direct_sum(&self.alg, &ps.iter().collect::<Vec<_>>())
    }

    /// H⁰: the cokernel of the differential.
    pub fn h0(&self) -> AModule {
        let p0 = self.p0();
        let cols: Vec<Vec<Q>> = (0..self.d.cols.len()).map(|c| self.column_vector(&p0, c)).collect();
        let sub = p0.generated_by(&cols);
        p0.quotient_module(&sub).0
    }

    /// H⁻¹ of the Nakayama image: kernel of `I(P⁻¹) → I(P⁰)`.
    pub fn hminus1_nu(&self) -> AModule {
        let alg = &self.alg;
        let p = alg.pc();
        let is: Vec<AModule> = self.d.cols.iter().map(|&k| AModule::injective(alg, k)).collect();
        let i1 = AModule::direct_sum(alg, &is.iter().collect::<Vec<_>>());
        let spaces: Vec<Subspace> = (0..p.n)
            .map(|v| {
                let rows: usize = self.d.cols.iter().map(|&k| p.corner_basis[v][k].len()).sum();
                let cols: usize = self.d.rows.iter().map(|&j| p.corner_basis[v][j].len()).sum();
                let mut m = RatMatrix::zeros(rows, cols);
                let mut r0 = 0;
                for (c, &k) in self.d.cols.iter().enumerate() {
                    let mut c0 = 0;
                    for (r, &j) in self.d.rows.iter().enumerate() {
                        let x = &self.d.e[r][c];
                        for (ci, &cp) in p.corner_basis[v][j].iter().enumerate() {
                            // c'·x expanded over e_v A e_k
                            let mut prod = vec![Q::zero(); alg.dim()];
                            for (l, xl) in x.iter().enumerate() {
                                if xl.is_zero() {
                                    continue;
                                }
                                for (t, coeff) in alg.mult_entry(cp, l) {
                                    prod[*t] += xl * coeff;
                                }
                            }
                            for (bi, &b) in p.corner_basis[v][k].iter().enumerate() {
                                if !prod[b].is_zero() {
                                    m.set(r0 + bi, c0 + ci, prod[b].clone());
                                }
                            }
                        }
                        c0 += p.corner_basis[v][j].len();
                    }
                    r0 += p.corner_basis[v][k].len();
                }
                left_kernel(rows, &[&m])
            })
            .collect();
        i1.sub_module(&Submodule { spaces }).0
    }

    /// Minimal projective presentation of a module as a two-term complex.
    pub fn presentation(m: &AModule) -> TwoTerm {
        let alg = m.alg().clone();
        let p = alg.pc();
        let rad = m.radical();
        let mut gens: Vec<(usize, Vec<Q>)> = Vec::new();
        for v in 0..p.n {
            let qs = QuotientSpace::new(&Subspace::full(m.dims()[v]), &rad.spaces[v]);
            for r in qs.reps() {
                gens.push((v, r.clone()));
            }
        }
        let zero: Vec<usize> = gens.iter().map(|g| g.0).collect();
        let ps: Vec<AModule> = zero.iter().map(|&k| AModule::projective(&alg, k)).collect();
        let p0 = AModule::direct_sum(&alg, &ps.iter().collect::<Vec<_>>());
        // kernel of P⁰ → M, vertexwise
        let spaces: Vec<Subspace> = (0..p.n)
            .map(|u| {
                let mut rows = Vec::new();
                for (v, rep) in &gens {
                    for &c in &p.corner_basis[*v][u] {
                        rows.push(m.act(c).vec_mul(rep));
                    }
                }
                let mat = RatMatrix::from_rows(&rows, m.dims()[u]);
                left_kernel(rows.len(), &[&mat])
            })
            .collect();
        let ker = Submodule { spaces };
        let (kmod, incl) = p0.sub_module(&ker);
        let krad = kmod.radical();
        let mut minus = Vec::new();
        let mut cols: Vec<Vec<Q>> = Vec::new();
        for w in 0..p.n {
            let qs = QuotientSpace::new(&Subspace::full(kmod.dims()[w]), &krad.spaces[w]);
            for r in qs.reps() {
                minus.push(w);
                cols.push(incl.blocks[w].vec_mul(r));
            }
        }
        let mut d = AMat::zero(&alg, &zero, &minus);
        for (c, &w) in minus.iter().enumerate() {
            let mut off = 0;
            for (r, &j) in zero.iter().enumerate() {
                for &b in &p.corner_basis[j][w] {
                    d.e[r][c][b] = cols[c][off].clone();
                    off += 1;
                }
            }
        }
        TwoTerm::from_amat(&alg, d)
    }

    /// Degree-0 Hom-space of chain maps modulo homotopy.
    pub fn hom_k(&self, other: &TwoTerm) -> Res<HomK> {
        hom_k(self, other)
    }

    pub fn h0_and_nu(&self) -> (AModule, AModule) {
        (self.h0(), self.hminus1_nu())
    }
}

/// Hom_K(X, Y) as Z / B inside the flattened chain-map coordinates.
#[derive(Clone, Debug)]
pub struct HomK {
    alg: AlgRef,
    xm: Vec<usize>,
    x0: Vec<usize>,
    ym: Vec<usize>,
    y0: Vec<usize>,
    n1: usize,
    quot: QuotientSpace,
}

impl HomK {
    pub fn dim(&self) -> usize {
        self.quot.dim()
    }

    pub fn unflatten(&self, v: &[Q]) -> ChainMap {
        ChainMap {
            f1: AMat::unflatten(&self.alg, &self.ym, &self.xm, &v[..self.n1]),
            f0: AMat::unflatten(&self.alg, &self.y0, &self.x0, &v[self.n1..]),
        }
    }

    /// Representatives of a basis of the quotient.
    pub fn reps(&self) -> Vec<ChainMap> {
        self.quot.reps().iter().map(|v| self.unflatten(v)).collect()
    }

    pub fn coords(&self, f: &ChainMap) -> Vec<Q> {
        self.quot.coords(&f.flatten(&self.alg))
    }

    pub fn is_null(&self, f: &ChainMap) -> bool {
        is_zero_vec(&self.coords(f))
    }

    pub fn combine(&self, coeffs: &[Q]) -> ChainMap {
        let mut v = vec![Q::zero(); self.quot.small().ambient()];
        for (c, r) in coeffs.iter().zip(self.quot.reps()) {
            axpy(&mut v, c, r);
        }
        self.unflatten(&v)
    }
}

fn same_owner(x: &TwoTerm, y: &TwoTerm) -> Res<()> {
    if x.alg.id() != y.alg.id() {
        return Err(CpxError::OwnerMismatch);
    }
    Ok(())
}

pub fn hom_k(x: &TwoTerm, y: &TwoTerm) -> Res<HomK> {
    same_owner(x, y)?;
    let alg = &*x.alg;
    let (xm, x0, ym, y0) = (x.minus(), x.zero(), y.minus(), y.zero());
    let n1 = AMat::flat_dim(alg, ym, xm);
    let n0 = AMat::flat_dim(alg, y0, x0);
    let neq = AMat::flat_dim(alg, y0, xm);
    let eq = matrix_of(n1 + n0, neq, |v| {
        let f1 = AMat::unflatten(alg, ym, xm, &v[..n1]);
        let f0 = AMat::unflatten(alg, y0, x0, &v[n1..]);
        y.d.mul(alg, &f1).sub(&f0.mul(alg, &x.d)).flatten(alg)
    });
    let z = if neq == 0 { Subspace::full(n1 + n0) } else { kernel(&eq) };
    let nh = AMat::flat_dim(alg, ym, x0);
    let htpy = matrix_of(nh, n1 + n0, |v| {
        let h = AMat::unflatten(alg, ym, x0, v);
        let mut out = h.mul(alg, &x.d).flatten(alg);
        out.extend(y.d.mul(alg, &h).flatten(alg));
        out
    });
    let b = if nh == 0 { Subspace::zero(n1 + n0) } else { image_space(&htpy) };
    Ok(HomK {
        alg: x.alg.clone(),
        xm: xm.to_vec(),
        x0: x0.to_vec(),
        ym: ym.to_vec(),
        y0: y0.to_vec(),
        n1,
        quot: QuotientSpace::new(&z, &b),
    })
}

/// dim Hom_K(X, Y[1]): maps X⁻¹ → Y⁰ modulo `d_Y h + h' d_X`.
pub fn hom_k_shift(x: &TwoTerm, y: &TwoTerm) -> Res<usize> {
    same_owner(x, y)?;
    let alg = &*x.alg;
    let (xm, x0, ym, y0) = (x.minus(), x.zero(), y.minus(), y.zero());
    let total = AMat::flat_dim(alg, y0, xm);
    if total == 0 {
        return Ok(0);
    }
    let na = AMat::flat_dim(alg, ym, xm);
    let nb = AMat::flat_dim(alg, y0, x0);
    let m = matrix_of(na + nb, total, |v| {
        let h = AMat::unflatten(alg, ym, xm, &v[..na]);
        let h2 = AMat::unflatten(alg, y0, x0, &v[na..]);
        y.d.mul(alg, &h).add(&h2.mul(alg, &x.d)).flatten(alg)
    });
    Ok(total - m.rank())
}

pub fn is_presilting(u: &TwoTerm) -> Res<bool> {
    Ok(hom_k_shift(u, u)? == 0)
}

/// End_K(X) as an algebra (product b·c = b∘c) together with its Hom-space.
pub fn end_k(x: &TwoTerm) -> Res<(Algebra, HomK)> {
    let h = hom_k(x, x)?;
    let reps = h.reps();
    let alg = &*x.alg;
    let table: Vec<Vec<Vec<Q>>> =
        reps.iter().map(|b| reps.iter().map(|c| h.coords(&c.then(alg, b))).collect()).collect();
    let id = ChainMap { f1: AMat::identity(alg, x.minus()), f0: AMat::identity(alg, x.zero()) };
    let unit = h.coords(&id);
    let labels = (0..reps.len()).map(|i| format!("h{i}")).collect();
    Ok((Algebra::from_table(labels, table, unit)?, h))
}

/// dim End_K(X) / rad End_K(X)
pub fn end_top_dim(x: &TwoTerm) -> Res<usize> {
    let (e, _) = end_k(x)?;
    Ok(e.dim() - e.jacobson_radical().dim())
}

/// Isomorphism in the homotopy category for complexes in minimal form.
pub fn is_isomorphic(x: &TwoTerm, y: &TwoTerm) -> Res<bool> {
    same_owner(x, y)?;
    let (x, y) = (x.reduced(), y.reduced());
    if x.gvector() != y.gvector() {
        return Ok(false);
    }
    let mut a = x.minus().to_vec();
    let mut b = y.minus().to_vec();
    a.sort();
    b.sort();
    if a != b {
        return Ok(false);
    }
    Ok(repmod::is_isomorphic(&x.h0(), &y.h0())?)
}

/// Krull–Schmidt decomposition: a minimal complex is the minimal presentation
/// of its H⁰ plus a shifted projective.
pub fn indec_summands(u: &TwoTerm) -> Res<Vec<(TwoTerm, usize)>> {
    let alg = u.alg.clone();
    let u = u.reduced();
    let mut out: Vec<(TwoTerm, usize)> = Vec::new();
    let mut g = u.gvector();
    for (m, mult) in repmod::indecompose(&u.h0())? {
        let pres = TwoTerm::presentation(&m);
        for (gi, pi) in g.iter_mut().zip(pres.gvector()) {
            *gi -= pi * mult as i64;
        }
        out.push((pres, mult));
    }
    for (k, &c) in g.iter().enumerate() {
        if c > 0 {
            return Err(CpxError::Inconsistent("negative shifted part in decomposition".into()));
        }
        if c < 0 {
            out.push((TwoTerm::shifted(&alg, k), (-c) as usize));
        }
    }
    Ok(out)
}

/// Indecomposable summands of several complexes, one copy per iso class.
pub fn basic_summands(parts: &[TwoTerm]) -> Res<Vec<TwoTerm>> {
    let mut out: Vec<TwoTerm> = Vec::new();
    for p in parts {
        for (x, _) in indec_summands(p)? {
            if !contains_iso(&out, &x)? {
                out.push(x);
            }
        }
    }
    Ok(out)
}

pub fn contains_iso(list: &[TwoTerm], x: &TwoTerm) -> Res<bool> {
    for y in list {
        if is_isomorphic(y, x)? {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn sum_of(alg: &AlgRef, parts: &[TwoTerm]) -> TwoTerm {
    TwoTerm::direct_sum(alg, &parts.iter().collect::<Vec<_>>())
}

pub fn is_silting(summands: &[TwoTerm]) -> Res<bool> {
    if summands.is_empty() {
        return Ok(false);
    }
    let alg = summands[0].alg.clone();
    let basic = basic_summands(summands)?;
    if basic.len() != alg.n() {
        return Ok(false);
    }
    is_presilting(&sum_of(&alg, &basic))
}

/// A minimal approximation: a chain map between `x` and a sum of copies of
/// the members of an additive generator set.
#[derive(Clone, Debug)]
pub struct Approx {
    /// the sum of copies, in the order given by `parts`
    pub other: TwoTerm,
    pub map: ChainMap,
    /// member index of each copy
    pub parts: Vec<usize>,
    /// multiplicity of each member
    pub mult: Vec<usize>,
}

/// rad_K(M_l, M_i) as representatives.
fn rad_maps(members: &[TwoTerm], l: usize, i: usize, ends: &[(Algebra, HomK)]) -> Res<Vec<ChainMap>> {
    if l != i {
        return Ok(hom_k(&members[l], &members[i])?.reps());
    }
    let (e, h) = &ends[i];
    let rad = e.jacobson_radical();
    Ok(rad.basis().iter().map(|c| h.combine(c)).collect())
}

enum Side {
    Left,
    Right,
}

fn approximation(x: &TwoTerm, members: &[TwoTerm], side: Side) -> Res<Approx> {
    let alg = x.alg.clone();
    let a = &*alg;
    let ends: Vec<(Algebra, HomK)> = members.iter().map(end_k).collect::<Res<_>>()?;
    let homs: Vec<HomK> = members
        .iter()
        .map(|mi| match side {
            Side::Left => hom_k(x, mi),
            Side::Right => hom_k(mi, x),
        })
        .collect::<Res<_>>()?;
    let mut parts = Vec::new();
    let mut chosen: Vec<ChainMap> = Vec::new();
    let mut mult = vec![0; members.len()];
    for i in 0..members.len() {
        let hi = &homs[i];
        if hi.dim() == 0 {
            continue;
        }
        let mut gens: Vec<Vec<Q>> = Vec::new();
        for l in 0..members.len() {
            let rads = match side {
                Side::Left => rad_maps(members, l, i, &ends)?,
                Side::Right => rad_maps(members, i, l, &ends)?,
            };
            for g in homs[l].reps() {
                for phi in &rads {
                    let comp = match side {
                        Side::Left => g.then(a, phi),
                        Side::Right => phi.then(a, &g),
                    };
                    gens.push(hi.coords(&comp));
                }
            }
        }
        let mut span = Subspace::span(&gens, hi.dim());
        let end_reps = ends[i].1.reps();
        for (bi, f) in hi.reps().into_iter().enumerate() {
            let mut e = vec![Q::zero(); hi.dim()];
            e[bi] = Q::one();
            if span.contains(&e) {
                continue;
            }
            let orbit: Vec<Vec<Q>> = end_reps
                .iter()
                .map(|psi| match side {
                    Side::Left => hi.coords(&f.then(a, psi)),
                    Side::Right => hi.coords(&psi.then(a, &f)),
                })
                .collect();
            span = span.sum(&Subspace::span(&orbit, hi.dim()));
            chosen.push(f);
            parts.push(i);
            mult[i] += 1;
        }
        if span.dim() != hi.dim() {
            return Err(CpxError::Inconsistent("approximation does not span".into()));
        }
    }
    let copies: Vec<&TwoTerm> = parts.iter().map(|&i| &members[i]).collect();
    let other = TwoTerm::direct_sum(&alg, &copies);
    let map = match side {
        Side::Left => {
            let mut f1 = AMat::zero(a, &[], x.minus());
            let mut f0 = AMat::zero(a, &[], x.zero());
            for f in &chosen {
                f1 = f1.vstack(&f.f1);
                f0 = f0.vstack(&f.f0);
            }
            ChainMap { f1, f0 }
        }
        Side::Right => {
            let mut f1 = AMat::zero(a, x.minus(), &[]);
            let mut f0 = AMat::zero(a, x.zero(), &[]);
            for f in &chosen {
                f1 = f1.hstack(&f.f1);
                f0 = f0.hstack(&f.f0);
            }
            ChainMap { f1, f0 }
        }
    };
    Ok(Approx { other, map, parts, mult })
}

/// Minimal left add(members)-approximation `x → U'`.
pub fn min_left_approx(x: &TwoTerm, members: &[TwoTerm]) -> Res<Approx> {
    approximation(x, members, Side::Left)
}

/// Minimal right add(members)-approximation `U' → x`.
pub fn min_right_approx(x: &TwoTerm, members: &[TwoTerm]) -> Res<Approx> {
    approximation(x, members, Side::Right)
}

/// Cone of `f: X → Y`, provided it is homotopic to a two-term complex.
pub fn cone(x: &TwoTerm, y: &TwoTerm, f: &ChainMap) -> Res<TwoTerm> {
    let alg = &x.alg;
    let mut tri = Tri { d1: x.d.neg().vstack(&f.f1), d2: f.f0.hstack(&y.d) };
    tri.eliminate_d1(alg);
    if !tri.d1.cols.is_empty() {
        return Err(CpxError::Not2TermResult);
    }
    Ok(TwoTerm::from_amat(alg, tri.d2).reduced())
}

/// Cocone of `g: Y → X` (the cone shifted by -1), provided it is two-term.
pub fn cocone(y: &TwoTerm, x: &TwoTerm, g: &ChainMap) -> Res<TwoTerm> {
    let alg = &x.alg;
    let mut tri = Tri { d1: y.d.neg().vstack(&g.f1), d2: g.f0.hstack(&x.d) };
    tri.eliminate_d2(alg);
    if !tri.d2.rows.is_empty() {
        return Err(CpxError::Not2TermResult);
    }
    Ok(TwoTerm::from_amat(alg, tri.d1).reduced())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Left,
    Right,
}

fn single_indecomposable(x: &TwoTerm) -> Res<TwoTerm> {
    let parts = indec_summands(x)?;
    if parts.len() != 1 || parts[0].1 != 1 {
        return Err(CpxError::Not2TermResult);
    }
    Ok(parts[0].0.clone())
}

/// Mutation of a basic silting complex (given by its summands) at summand `j`.
pub fn mutate(s: &[TwoTerm], j: usize, dir: Direction) -> Res<Vec<TwoTerm>> {
    if s.is_empty() || s.len() != s[0].alg.n() {
        return Err(CpxError::NotSilting);
    }
    if j >= s.len() {
        return Err(CpxError::BadIndex(j));
    }
    let others: Vec<TwoTerm> = s.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, x)| x.clone()).collect();
    let new = match dir {
        Direction::Left => {
            let ap = min_left_approx(&s[j], &others)?;
            cone(&s[j], &ap.other, &ap.map)?
        }
        Direction::Right => {
            let ap = min_right_approx(&s[j], &others)?;
            cocone(&ap.other, &s[j], &ap.map)?
        }
    };
    let new = single_indecomposable(&new)?;
    if contains_iso(s, &new)? {
        return Err(CpxError::Not2TermResult);
    }
    let mut out = s.to_vec();
    out[j] = new;
    Ok(out)
}

/// One part of a 2-term simple-minded collection: a brick in degree 0 (plus)
/// or in degree -1 (minus).
#[derive(Clone, Debug)]
pub struct SmcPart {
    pub plus: bool,
    pub module: AModule,
    pub d: usize,
}

impl SmcPart {
    /// Signed dimension vector: the class in K₀ of the stalk complex.
    pub fn signed_dimvec(&self) -> Vec<i64> {
        let s = if self.plus { 1 } else { -1 };
        self.module.dimvec().iter().map(|x| s * x).collect()
    }
}

/// H⁰(S_i) / Σ im rad(H⁰(S), H⁰(S_i)).
pub fn plus_part(h0s: &[AModule], i: usize) -> Res<AModule> {
    let alg = h0s[i].alg().clone();
    let total = AModule::direct_sum(&alg, &h0s.iter().collect::<Vec<_>>());
    let rad = repmod::rad_hom(&total, &h0s[i])?;
    let p = alg.pc();
    let mut rows: Vec<Vec<Vec<Q>>> = vec![Vec::new(); p.n];
    for f in rad.basis() {
        for (v, b) in f.blocks.iter().enumerate() {
            rows[v].extend(b.row_vecs());
        }
    }
    let sub = Submodule {
        spaces: rows.iter().enumerate().map(|(v, r)| Subspace::span(r, h0s[i].dims()[v])).collect(),
    };
    Ok(h0s[i].quotient_module(&sub).0)
}

/// ∩ Ker rad(H⁻¹(νS_i), H⁻¹(νS)).
pub fn minus_part(nus: &[AModule], i: usize) -> Res<AModule> {
    let alg = nus[i].alg().clone();
    let total = AModule::direct_sum(&alg, &nus.iter().collect::<Vec<_>>());
    let rad = repmod::rad_hom(&nus[i], &total)?;
    let basis = rad.basis();
    let p = alg.pc();
    let spaces = (0..p.n)
        .map(|v| {
            let mats: Vec<&RatMatrix> = basis.iter().map(|f| &f.blocks[v]).collect();
            left_kernel(nus[i].dims()[v], &mats)
        })
        .collect();
    Ok(nus[i].sub_module(&Submodule { spaces }).0)
}

/// The 2-term simple-minded collection dual to a silting complex, per summand.
pub fn smc_of_silting(s: &[TwoTerm]) -> Res<Vec<SmcPart>> {
    let h0s: Vec<AModule> = s.iter().map(|x| x.h0()).collect();
    let nus: Vec<AModule> = s.iter().map(|x| x.hminus1_nu()).collect();
    let mut out = Vec::new();
    for i in 0..s.len() {
        let plus = plus_part(&h0s, i)?;
        let minus = minus_part(&nus, i)?;
        let d = end_top_dim(&s[i])?;
        let part = match (plus.is_zero(), minus.is_zero()) {
            (false, true) => SmcPart { plus: true, module: plus, d },
            (true, false) => SmcPart { plus: false, module: minus, d },
            _ => return Err(CpxError::Inconsistent(format!("summand {i} has plus and minus parts both zero or both nonzero"))),
        };
        out.push(part);
    }
    Ok(out)
}

/// Non-U summands sorted by g-vector, decreasing lexicographically.
fn sort_new(mut xs: Vec<TwoTerm>) -> Vec<TwoTerm> {
    xs.sort_by(|a, b| b.gvector().cmp(&a.gvector()));
    xs
}

fn certify_maximal(u: &[TwoTerm], s: &[TwoTerm]) -> Res<bool> {
    if !is_silting(s)? {
        return Ok(false);
    }
    if u.is_empty() {
        return Ok(s.iter().all(|x| x.minus().is_empty()));
    }
    let alg = s[0].alg.clone();
    let nu_s = sum_of(&alg, s).hminus1_nu();
    let nu_u = sum_of(&alg, u).hminus1_nu();
    Ok(repmod::reject(&nu_s, &nu_u)?.dim() == 0)
}

/// Bongartz (maximal) completion. Result lists `u` first, then the new summands.
pub fn bongartz_completion(alg: &AlgRef, u: &[TwoTerm]) -> Res<Vec<TwoTerm>> {
    let u = basic_summands(u)?;
    if u.len() == alg.n() && is_silting(&u)? {
        return Ok(u);
    }
    if !u.is_empty() && !is_presilting(&sum_of(alg, &u))? {
        return Err(CpxError::NotPresilting);
    }
    let a1 = sum_of(alg, &TwoTerm::regular_shift(alg));
    let ap = min_right_approx(&a1, &u)?;
    let x = cocone(&ap.other, &a1, &ap.map)?;
    let mut extra = Vec::new();
    for (y, _) in indec_summands(&x)? {
        if !contains_iso(&u, &y)? && !contains_iso(&extra, &y)? {
            extra.push(y);
        }
    }
    let mut s = u.clone();
    s.extend(sort_new(extra));
    if certify_maximal(&u, &s)? {
        return Ok(s);
    }
    completion_search(alg, &u, |cand| certify_maximal(&u, cand))
}

/// Fallback: breadth-first mutation search from A for a certified completion.
fn completion_search(alg: &AlgRef, u: &[TwoTerm], ok: impl Fn(&[TwoTerm]) -> Res<bool>) -> Res<Vec<TwoTerm>> {
    let mut seen: Vec<Vec<Vec<i64>>> = Vec::new();
    let mut queue: VecDeque<Vec<TwoTerm>> = VecDeque::new();
    queue.push_back(TwoTerm::regular(alg));
    while let Some(s) = queue.pop_front() {
        let mut key: Vec<Vec<i64>> = s.iter().map(|x| x.gvector()).collect();
        key.sort();
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);
        if seen.len() > 5000 {
            break;
        }
        let mut has_u = true;
        for x in u {
            has_u &= contains_iso(&s, x)?;
        }
        if has_u && ok(&s)? {
            let mut out = u.to_vec();
            let rest: Vec<TwoTerm> =
                s.iter().filter(|x| !u.iter().any(|y| y.gvector() == x.gvector())).cloned().collect();
            out.extend(sort_new(rest));
            return Ok(out);
        }
        for j in 0..s.len() {
            for dir in [Direction::Left, Direction::Right] {
                if let Ok(t) = mutate(&s, j, dir) {
                    queue.push_back(t);
                }
            }
        }
    }
    Err(CpxError::CompletionNotVerified("mutation search exhausted".into()))
}

/// Minimal completion T together with the multiplicities `a[j][i]` of U_i in
/// the approximation target of the j-th non-U summand of S.
#[derive(Clone, Debug)]
pub struct Completions {
    pub u: Vec<TwoTerm>,
    pub s: Vec<TwoTerm>,
    pub t: Vec<TwoTerm>,
    pub a: Vec<Vec<usize>>,
}

pub fn completions(alg: &AlgRef, u: &[TwoTerm]) -> Res<Completions> {
    let s = bongartz_completion(alg, u)?;
    let m = s.len() - (alg.n() - basic_summands(u)?.len());
    let uu: Vec<TwoTerm> = s[..m].to_vec();
    let mut t = uu.clone();
    let mut a = Vec::new();
    for sj in &s[m..] {
        let ap = min_left_approx(sj, &uu)?;
        let tj = single_indecomposable(&cone(sj, &ap.other, &ap.map)?)?;
        t.push(tj);
        a.push(ap.mult.clone());
    }
    if !is_silting(&t)? {
        return Err(CpxError::CompletionNotVerified("minimal completion is not silting".into()));
    }
    if !uu.is_empty() {
        let h0t = sum_of(alg, &t).h0();
        let h0u = sum_of(alg, &uu).h0();
        if repmod::trace(&h0u, &h0t)? != h0t.whole() {
            return Err(CpxError::CompletionNotVerified("torsion class of T exceeds Fac H0(U)".into()));
        }
    } else if !t.iter().all(|x| x.zero().is_empty()) {
        return Err(CpxError::CompletionNotVerified("completion of 0 is not A[1]".into()));
    }
    Ok(Completions { u: uu, s, t, a })
}

pub fn minimal_completion(alg: &AlgRef, u: &[TwoTerm]) -> Res<Vec<TwoTerm>> {
    Ok(completions(alg, u)?.t)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexSpec {
    #[serde(default)]
    p_minus: Vec<String>,
    #[serde(default)]
    p_zero: Vec<String>,
    #[serde(default)]
    diff: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    #[serde(default)]
    complex: Vec<ComplexSpec>,
}

/// Parse `[[complex]]` tables; each becomes one complex.
pub fn complexes_from_toml(alg: &AlgRef, text: &str) -> Res<Vec<TwoTerm>> {
    let file: ComplexFile = toml::from_str(text).map_err(|e| CpxError::Parse(e.to_string()))?;
    let vertex = |l: &str| alg.vertex_by_label(l).ok_or_else(|| CpxError::Parse(format!("unknown vertex `{l}`")));
    let mut out = Vec::new();
    for spec in file.complex {
        let minus: Vec<usize> = spec.p_minus.iter().map(|l| vertex(l)).collect::<Res<_>>()?;
        let zero: Vec<usize> = spec.p_zero.iter().map(|l| vertex(l)).collect::<Res<_>>()?;
        let entries: Vec<Vec<Vec<Q>>> = if spec.diff.is_empty() {
            vec![vec![vec![Q::zero(); alg.dim()]; minus.len()]; zero.len()]
        } else {
            spec.diff
                .iter()
                .map(|row| row.iter().map(|x| alg.parse_element(x).map_err(CpxError::from)).collect::<Res<Vec<_>>>())
                .collect::<Res<_>>()?
        };
        out.push(TwoTerm::new(alg, minus, zero, entries)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{from_quiver, Quiver};
    use crate::repmod::share;

    pub(crate) fn a4() -> AlgRef {
        share(from_quiver(&Quiver::linear(4), 16).unwrap())
    }

    fn arrow(alg: &AlgRef, name: &str) -> Vec<Q> {
        alg.parse_element(name).unwrap()
    }

    /// U₁ = (P4 → P3), U₂ = P1
    pub(crate) fn a4_u(alg: &AlgRef) -> Vec<TwoTerm> {
        let u1 = TwoTerm::new(alg, vec![3], vec![2], vec![vec![arrow(alg, "a3")]]).unwrap();
        vec![u1, TwoTerm::stalk(alg, 0)]
    }

    #[test]
    fn cohomology() {
        let a = a4();
        let u = a4_u(&a);
        assert_eq!(u[0].h0().dimvec(), vec![0, 0, 1, 0]);
        assert_eq!(u[0].hminus1_nu().dimvec(), vec![0, 0, 0, 1]);
        assert_eq!(TwoTerm::stalk(&a, 2).h0().dimvec(), vec![0, 0, 1, 1]);
        assert!(TwoTerm::stalk(&a, 2).hminus1_nu().is_zero());
        let t3 = TwoTerm::new(&a, vec![1], vec![0], vec![vec![arrow(&a, "a1")]]).unwrap();
        assert_eq!(t3.h0().dimvec(), vec![1, 0, 0, 0]);
        let t4 = TwoTerm::new(&a, vec![3], vec![0], vec![vec![arrow(&a, "a1*a2*a3")]]).unwrap();
        assert_eq!(t4.hminus1_nu().dimvec(), vec![0, 1, 1, 1]);
        assert_eq!(TwoTerm::shifted(&a, 0).hminus1_nu().dimvec(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn wrong_corner_rejected() {
        let a = a4();
        assert!(TwoTerm::new(&a, vec![3], vec![2], vec![vec![arrow(&a, "a1")]]).is_err());
    }

    #[test]
    fn hom_spaces() {
        let a = a4();
        let u = a4_u(&a);
        assert_eq!(hom_k_shift(&u[0], &u[1]).unwrap(), 0);
        assert_eq!(hom_k_shift(&u[1], &u[0]).unwrap(), 0);
        assert!(hom_k(&u[0], &u[0]).unwrap().dim() >= 1);
        let p: Vec<TwoTerm> = TwoTerm::regular(&a);
        // Hom_K between stalks equals Hom between the projectives
        assert_eq!(hom_k(&p[1], &p[0]).unwrap().dim(), 1);
        assert_eq!(hom_k(&p[0], &p[1]).unwrap().dim(), 0);
        // stalk P(k) against a presentation: Hom_A(P(k), H⁰)
        for k in 0..4 {
            let dim = hom_k(&p[k], &u[0]).unwrap().dim();
            assert_eq!(dim, repmod::hom_space(&AModule::projective(&a, k), &u[0].h0()).unwrap().dim());
        }
        let bad = TwoTerm::direct_sum(&a, &[&p[0], &TwoTerm::shifted(&a, 0)]);
        assert!(!is_presilting(&bad).unwrap());
        assert!(is_silting(&p).unwrap());
        assert!(is_presilting(&sum_of(&a, &u)).unwrap());
        assert!(!is_silting(&u).unwrap());
    }

    #[test]
    fn decomposition_and_presentation() {
        let a = a4();
        let u = a4_u(&a);
        let sum = sum_of(&a, &u);
        let parts = indec_summands(&sum).unwrap();
        assert_eq!(parts.len(), 2);
        let doubled = TwoTerm::direct_sum(&a, &[&u[0], &u[0]]);
        let parts = indec_summands(&doubled).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].1, 2);
        assert!(is_isomorphic(&parts[0].0, &u[0]).unwrap());
        // a non-minimal complex P3 →id P3 ⊕ U₁ reduces to U₁
        let e3 = arrow(&a, "e3");
        let triv = TwoTerm::new(&a, vec![2], vec![2], vec![vec![e3]]).unwrap();
        let both = TwoTerm::direct_sum(&a, &[&triv, &u[0]]);
        assert!(is_isomorphic(&both.reduced(), &u[0]).unwrap());
    }

    #[test]
    fn approximations() {
        let a = a4();
        let u = a4_u(&a);
        let ap = min_left_approx(&TwoTerm::stalk(&a, 1), &u).unwrap();
        assert_eq!(ap.mult, vec![0, 1]);
        let ap = min_left_approx(&TwoTerm::stalk(&a, 2), &u).unwrap();
        assert_eq!(ap.mult, vec![1, 1]);
        let ap = min_left_approx(&u[0], &u).unwrap();
        assert_eq!(ap.mult, vec![1, 0]);
    }

    #[test]
    fn pentagon_mutations() {
        let a2 = share(from_quiver(&Quiver::linear(2), 8).unwrap());
        let a = TwoTerm::regular(&a2);
        let left2 = mutate(&a, 1, Direction::Left).unwrap();
        assert_eq!(left2[1].gvector(), vec![1, -1]);
        assert_eq!(left2[1].h0().dimvec(), vec![1, 0]);
        let left1 = mutate(&a, 0, Direction::Left).unwrap();
        assert_eq!(left1[0].gvector(), vec![-1, 0]);
        assert!(mutate(&a, 0, Direction::Right).is_err());
        let back = mutate(&left2, 1, Direction::Right).unwrap();
        assert_eq!(back[1].gvector(), vec![0, 1]);
        let shifted = TwoTerm::regular_shift(&a2);
        for j in 0..2 {
            let r = mutate(&shifted, j, Direction::Right).unwrap();
            let l = mutate(&r, j, Direction::Left).unwrap();
            assert_eq!(l[j].gvector(), shifted[j].gvector());
        }
    }

    #[test]
    fn completions_of_u() {
        let a = a4();
        let u = a4_u(&a);
        let c = completions(&a, &u).unwrap();
        let gs: Vec<Vec<i64>> = c.s.iter().map(|x| x.gvector()).collect();
        assert_eq!(gs, vec![vec![0, 0, 1, -1], vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]]);
        let gt: Vec<Vec<i64>> = c.t.iter().map(|x| x.gvector()).collect();
        assert_eq!(gt[2], vec![1, -1, 0, 0]);
        assert_eq!(gt[3], vec![1, 0, 0, -1]);
        assert_eq!(c.a, vec![vec![0, 1], vec![1, 1]]);
        let empty = completions(&a, &[]).unwrap();
        assert!(empty.s.iter().all(|x| x.minus().is_empty()));
        assert!(empty.t.iter().all(|x| x.zero().is_empty()));
        let full = TwoTerm::regular(&a);
        assert_eq!(bongartz_completion(&a, &full).unwrap().len(), 4);
    }

    #[test]
    fn smc_tables() {
        let a = a4();
        let u = a4_u(&a);
        let c = completions(&a, &u).unwrap();
        let x = smc_of_silting(&c.s).unwrap();
        let xs: Vec<Vec<i64>> = x.iter().map(|p| p.signed_dimvec()).collect();
        assert_eq!(xs, vec![vec![0, 0, 0, -1], vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 1]]);
        let y = smc_of_silting(&c.t).unwrap();
        let ys: Vec<Vec<i64>> = y.iter().map(|p| p.signed_dimvec()).collect();
        assert_eq!(ys, vec![vec![0, 0, 1, 0], vec![1, 1, 1, 1], vec![0, -1, 0, 0], vec![0, 0, -1, -1]]);
        let simple = smc_of_silting(&TwoTerm::regular(&a)).unwrap();
        for (k, p) in simple.iter().enumerate() {
            assert!(p.plus);
            assert_eq!(p.module.dims()[k], 1);
            assert_eq!(p.module.dim(), 1);
        }
    }

    #[test]
    fn toml_complexes() {
        let a = a4();
        let text = "[[complex]]\np_minus = [\"4\"]\np_zero = [\"3\"]\ndiff = [[\"a3\"]]\n\n[[complex]]\np_zero = [\"1\"]\n";
        let cs = complexes_from_toml(&a, text).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].gvector(), vec![0, 0, 1, -1]);
        assert_eq!(cs[1].gvector(), vec![1, 0, 0, 0]);
        assert!(complexes_from_toml(&a, "[[complex]]\np_zero = [\"9\"]\n").is_err());
    }
}
