//! Right modules over algebras with vertex idempotents, stored blockwise:
//! `M = ⊕_v M e_v`, and a basis element `b ∈ e_s A e_t` acts by a
//! `dim(M e_s) x dim(M e_t)` matrix on row vectors.

use crate::algebra::{AlgRef, Algebra, AlgebraError};
use crate::qlinalg::{
    axpy, charpoly, fitting_polynomial, is_zero_vec, kernel, poly_at_matrix, q, rational_roots, QuotientSpace, Q,
    RatMatrix, Subspace,
};
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModError {
    #[error("modules have different owner algebras")]
    OwnerMismatch,
    #[error("index mismatch: expected length {expected}, got {got}")]
    IndexMismatch { expected: usize, got: usize },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("endomorphism algebra does not split over the rationals")]
    NonSplitSemisimple,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug)]
pub struct AModule {
    alg: AlgRef,
    dims: Vec<usize>,
    act: Vec<RatMatrix>,
}

/// A module homomorphism given by one matrix per vertex (row-vector convention).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModHom {
    pub blocks: Vec<RatMatrix>,
}

impl ModHom {
    /// `other ∘ self`
    pub fn then(&self, other: &ModHom) -> ModHom {
        ModHom { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn flatten(&self) -> Vec<Q> {
        let mut v = Vec::new();
        for b in &self.blocks {
            for r in 0..b.rows() {
                v.extend(b.row(r).iter().cloned());
            }
        }
        v
    }

    pub fn full_matrix(&self) -> RatMatrix {
        let rows: usize = self.blocks.iter().map(|b| b.rows()).sum();
        let cols: usize = self.blocks.iter().map(|b| b.cols()).sum();
        let mut m = RatMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in &self.blocks {
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    m.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows();
            c0 += b.cols();
        }
        m
    }
}

/// Basis of Hom(M, N) as a canonical subspace of flattened block matrices.
#[derive(Clone, Debug)]
pub struct HomSpace {
    src: Vec<usize>,
    dst: Vec<usize>,
    space: Subspace,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn unflatten(&self, v: &[Q]) -> ModHom {
        unflatten(&self.src, &self.dst, v)
    }

    pub fn basis(&self) -> Vec<ModHom> {
        self.space.basis().iter().map(|v| self.unflatten(v)).collect()
    }

    pub fn coords(&self, f: &ModHom) -> Vec<Q> {
        self.space.coords(&f.flatten())
    }

    pub fn contains(&self, f: &ModHom) -> bool {
        self.space.contains(&f.flatten())
    }
}

fn unflatten(src: &[usize], dst: &[usize], v: &[Q]) -> ModHom {
    let mut blocks = Vec::new();
    let mut off = 0;
    for (a, b) in src.iter().zip(dst) {
        let mut m = RatMatrix::zeros(*a, *b);
        for r in 0..*a {
            for c in 0..*b {
                m.set(r, c, v[off + r * b + c].clone());
            }
        }
        off += a * b;
        blocks.push(m);
    }
    ModHom { blocks }
}

/// Per-vertex subspaces of a module closed under the action.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Submodule {
    pub spaces: Vec<Subspace>,
}

impl Submodule {
    pub fn dim(&self) -> usize {
        self.spaces.iter().map(|s| s.dim()).sum()
    }

    pub fn dimvec(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim()).collect()
    }

    pub fn contains(&self, other: &Submodule) -> bool {
        self.spaces.iter().zip(&other.spaces).all(|(a, b)| a.contains_space(b))
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        Submodule { spaces: self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.sum(b)).collect() }
    }

    pub fn intersect(&self, other: &Submodule) -> Submodule {
        Submodule { spaces: self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.intersect(b)).collect() }
    }
}

impl AModule {
    /// Checked constructor: idempotents act as identities and the action is
    /// multiplicative on all basis pairs.
    pub fn new(alg: AlgRef, dims: Vec<usize>, act: Vec<RatMatrix>) -> Result<AModule, ModError> {
        let m = AModule { alg, dims, act };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), ModError> {
        let alg = &self.alg;
        let p = alg.peirce().ok_or_else(|| ModError::InvalidAction("owner has no vertex idempotents".into()))?;
        if self.dims.len() != p.n {
            return Err(ModError::IndexMismatch { expected: p.n, got: self.dims.len() });
        }
        if self.act.len() != alg.dim() {
            return Err(ModError::IndexMismatch { expected: alg.dim(), got: self.act.len() });
        }
        for (b, m) in self.act.iter().enumerate() {
            let (s, t) = p.corner[b];
            if m.rows() != self.dims[s] || m.cols() != self.dims[t] {
                return Err(ModError::InvalidAction(format!("block shape of basis element {b}")));
            }
        }
        for (v, &e) in p.idem.iter().enumerate() {
            if self.act[e] != RatMatrix::identity(self.dims[v]) {
                return Err(ModError::InvalidAction("idempotent does not act as identity".into()));
            }
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let (s, t) = p.corner[i];
                let (t2, u) = p.corner[j];
                if t != t2 {
                    continue;
                }
                let lhs = self.act[i].mul(&self.act[j]);
                let mut rhs = RatMatrix::zeros(self.dims[s], self.dims[u]);
                for (k, c) in alg.mult_entry(i, j) {
                    rhs = rhs.add(&self.act[*k].scale(c));
                }
                if lhs != rhs {
                    return Err(ModError::InvalidAction(format!("relation b{i}*b{j} violated")));
                }
            }
        }
        Ok(())
    }

    pub fn alg(&self) -> &AlgRef {
        &self.alg
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dimvec(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn act(&self, b: usize) -> &RatMatrix {
        &self.act[b]
    }

    pub fn offset(&self, v: usize) -> usize {
        self.dims[..v].iter().sum()
    }

    fn same_owner(&self, other: &AModule) -> Result<(), ModError> {
        if self.alg.id() != other.alg.id() {
            return Err(ModError::OwnerMismatch);
        }
        Ok(())
    }

    /// Action block of an arbitrary element restricted to the (s, t) corner.
    pub fn act_element(&self, x: &[Q], s: usize, t: usize) -> RatMatrix {
        let p = self.alg.pc();
        let mut m = RatMatrix::zeros(self.dims[s], self.dims[t]);
        for &b in &p.corner_basis[s][t] {
            if !x[b].is_zero() {
                m = m.add(&self.act[b].scale(&x[b]));
            }
        }
        m
    }

    pub fn zero(alg: &AlgRef) -> AModule {
        let p = alg.pc();
        let dims = vec![0; p.n];
        let act = p.corner.iter().map(|_| RatMatrix::zeros(0, 0)).collect();
        AModule { alg: alg.clone(), dims, act }
    }

    pub fn simple(alg: &AlgRef, k: usize) -> AModule {
        let p = alg.pc();
        let mut dims = vec![0; p.n];
        dims[k] = 1;
        let act = p
            .corner
            .iter()
            .enumerate()
            .map(|(b, &(s, t))| {
                if b == p.idem[k] {
                    RatMatrix::identity(1)
                } else {
                    RatMatrix::zeros(dims[s], dims[t])
                }
            })
            .collect();
        AModule { alg: alg.clone(), dims, act }
    }

    /// P(k) = e_k A
    pub fn projective(alg: &AlgRef, k: usize) -> AModule {
        let p = alg.pc();
        let dims: Vec<usize> = (0..p.n).map(|v| p.corner_basis[k][v].len()).collect();
        let act = p
            .corner
            .iter()
            .enumerate()
            .map(|(b, &(s, t))| {
                let mut m = RatMatrix::zeros(dims[s], dims[t]);
                for &c in &p.corner_basis[k][s] {
                    for (l, coeff) in alg.mult_entry(c, b) {
                        m.set(p.corner_pos[c], p.corner_pos[*l], coeff.clone());
                    }
                }
                m
            })
            .collect();
        AModule { alg: alg.clone(), dims, act }
    }

    /// I(k) = D(A e_k)
    pub fn injective(alg: &AlgRef, k: usize) -> AModule {
        let p = alg.pc();
        let dims: Vec<usize> = (0..p.n).map(|v| p.corner_basis[v][k].len()).collect();
        let act = p
            .corner
            .iter()
            .enumerate()
            .map(|(b, &(s, t))| {
                let mut m = RatMatrix::zeros(dims[s], dims[t]);
                for &c2 in &p.corner_basis[t][k] {
                    for (l, coeff) in alg.mult_entry(b, c2) {
                        m.set(p.corner_pos[*l], p.corner_pos[c2], coeff.clone());
                    }
                }
                m
            })
            .collect();
        AModule { alg: alg.clone(), dims, act }
    }

    pub fn direct_sum(alg: &AlgRef, parts: &[&AModule]) -> AModule {
        let p = alg.pc();
        let dims: Vec<usize> = (0..p.n).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let act = p
            .corner
            .iter()
            .enumerate()
            .map(|(b, &(s, t))| {
                let mut m = RatMatrix::zeros(dims[s], dims[t]);
                let (mut r0, mut c0) = (0, 0);
                for part in parts {
                    let a = &part.act[b];
                    for r in 0..a.rows() {
                        for c in 0..a.cols() {
                            m.set(r0 + r, c0 + c, a.get(r, c).clone());
                        }
                    }
                    r0 += part.dims[s];
                    c0 += part.dims[t];
                }
                m
            })
            .collect();
        AModule { alg: alg.clone(), dims, act }
    }

    pub fn whole(&self) -> Submodule {
        Submodule { spaces: self.dims.iter().map(|&d| Subspace::full(d)).collect() }
    }

    pub fn nothing(&self) -> Submodule {
        Submodule { spaces: self.dims.iter().map(|&d| Subspace::zero(d)).collect() }
    }

    /// Split a full coordinate vector into vertex components.
    pub fn split_vector(&self, v: &[Q]) -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        let mut off = 0;
        for &d in &self.dims {
            out.push(v[off..off + d].to_vec());
            off += d;
        }
        out
    }

    /// Smallest submodule containing the given per-vertex vectors.
    pub fn closure(&self, gens: &[Vec<Vec<Q>>]) -> Submodule {
        let p = self.alg.pc();
        let mut spaces: Vec<Subspace> = (0..p.n)
            .map(|v| Subspace::span(&gens.iter().map(|g| g[v].clone()).collect::<Vec<_>>(), self.dims[v]))
            .collect();
        loop {
            let mut changed = false;
            for &g in &p.generators {
                let (s, t) = p.corner[g];
                if self.dims[s] == 0 || self.dims[t] == 0 {
                    continue;
                }
                let imgs: Vec<Vec<Q>> = spaces[s].basis().iter().map(|r| self.act[g].vec_mul(r)).collect();
                let new = spaces[t].sum(&Subspace::span(&imgs, self.dims[t]));
                if new.dim() > spaces[t].dim() {
                    spaces[t] = new;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Submodule { spaces }
    }

    /// Submodule generated by full coordinate vectors.
    pub fn generated_by(&self, vs: &[Vec<Q>]) -> Submodule {
        let gens: Vec<Vec<Vec<Q>>> = vs.iter().map(|v| self.split_vector(v)).collect();
        self.closure(&gens)
    }

    /// The submodule as a module, with the inclusion (basis rows per vertex).
    pub fn sub_module(&self, sub: &Submodule) -> (AModule, ModHom) {
        let p = self.alg.pc();
        let dims: Vec<usize> = sub.spaces.iter().map(|s| s.dim()).collect();
        let act = p
            .corner
            .iter()
            .enumerate()
            .map(|(b, &(s, t))| {
                let mut m = RatMatrix::zeros(dims[s], dims[t]);
                for (r, row) in sub.spaces[s].basis().iter().enumerate() {
                    let img = self.act[b].vec_mul(row);
                    for (c, x) in sub.spaces[t].coords(&img).into_iter().enumerate() {
                        m.set(r, c, x);
                    }
                }
                m
            })
            .collect();
        let incl = ModHom { blocks: sub.spaces.iter().map(|s| s.to_matrix()).collect() };
        (AModule { alg: self.alg.clone(), dims, act }, incl)
    }

    /// The quotient by a submodule, with the projection.
    pub fn quotient_module(&self, sub: &Submodule) -> (AModule, ModHom) {
        let p = self.alg.pc();
        let qs: Vec<QuotientSpace> =
            (0..p.n).map(|v| QuotientSpace::new(&Subspace::full(self.dims[v]), &sub.spaces[v])).collect();
        let dims: Vec<usize> = qs.iter().map(|q| q.dim()).collect();
        let act = p
            .corner
            .iter()
            .enumerate()
            .map(|(b, &(s, t))| {
                let mut m = RatMatrix::zeros(dims[s], dims[t]);
                for (r, rep) in qs[s].reps().iter().enumerate() {
                    let img = self.act[b].vec_mul(rep);
                    for (c, x) in qs[t].coords(&img).into_iter().enumerate() {
                        m.set(r, c, x);
                    }
                }
                m
            })
            .collect();
        let proj = ModHom {
            blocks: (0..p.n)
                .map(|v| {
                    let mut m = RatMatrix::zeros(self.dims[v], dims[v]);
                    for r in 0..self.dims[v] {
                        let mut e = vec![Q::zero(); self.dims[v]];
                        e[r] = Q::one();
                        for (c, x) in qs[v].coords(&e).into_iter().enumerate() {
                            m.set(r, c, x);
                        }
                    }
                    m
                })
                .collect(),
        };
        (AModule { alg: self.alg.clone(), dims, act }, proj)
    }

    /// Submodule generated by `generators` with the resulting sub and quotient modules.
    pub fn sub_quotient(&self, generators: &[Vec<Q>]) -> (Submodule, AModule, AModule) {
        let sub = self.generated_by(generators);
        let (s, _) = self.sub_module(&sub);
        let (qm, _) = self.quotient_module(&sub);
        (sub, s, qm)
    }

    /// M · rad A
    pub fn radical(&self) -> Submodule {
        let p = self.alg.pc();
        let mut spaces: Vec<Vec<Vec<Q>>> = vec![Vec::new(); p.n];
        for (b, &(_, t)) in p.corner.iter().enumerate() {
            if p.idem.contains(&b) {
                continue;
            }
            spaces[t].extend(self.act[b].row_vecs());
        }
        Submodule { spaces: spaces.iter().enumerate().map(|(v, vs)| Subspace::span(vs, self.dims[v])).collect() }
    }

    pub fn top(&self) -> AModule {
        self.quotient_module(&self.radical()).0
    }

    /// Elements annihilated by the radical.
    pub fn socle(&self) -> Submodule {
        let p = self.alg.pc();
        let spaces = (0..p.n)
            .map(|s| {
                let blocks: Vec<&RatMatrix> = p
                    .corner
                    .iter()
                    .enumerate()
                    .filter(|(b, &(s2, _))| s2 == s && !p.idem.contains(b))
                    .map(|(b, _)| &self.act[b])
                    .collect();
                left_kernel(self.dims[s], &blocks)
            })
            .collect();
        Submodule { spaces }
    }

    pub fn apply(&self, f: &ModHom, v: &[Q]) -> Vec<Q> {
        let parts = self.split_vector(v);
        let mut out = Vec::new();
        for (b, x) in f.blocks.iter().zip(parts) {
            out.extend(b.vec_mul(&x));
        }
        out
    }
}

/// {x : x M = 0 for every M}
pub fn left_kernel(rows: usize, mats: &[&RatMatrix]) -> Subspace {
    if mats.is_empty() || rows == 0 {
        return Subspace::full(rows);
    }
    let mut big = mats[0].clone();
    for m in &mats[1..] {
        big = big.hstack(m);
    }
    kernel(&big.transpose())
}

pub fn hom_space(m: &AModule, n: &AModule) -> Result<HomSpace, ModError> {
    m.same_owner(n)?;
    let p = m.alg.pc();
    let mut offs = Vec::new();
    let mut total = 0;
    for v in 0..p.n {
        offs.push(total);
        total += m.dims[v] * n.dims[v];
    }
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for &g in &p.generators {
        let (s, t) = p.corner[g];
        let (gm, gn) = (&m.act[g], &n.act[g]);
        for i in 0..m.dims[s] {
            for j in 0..n.dims[t] {
                let mut row = vec![Q::zero(); total];
                // (G^M F_t)[i][j]
                for k in 0..m.dims[t] {
                    let c = gm.get(i, k);
                    if !c.is_zero() {
                        row[offs[t] + k * n.dims[t] + j] += c;
                    }
                }
                // - (F_s G^N)[i][j]
                for l in 0..n.dims[s] {
                    let c = gn.get(l, j);
                    if !c.is_zero() {
                        row[offs[s] + i * n.dims[s] + l] -= c;
                    }
                }
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let space = if rows.is_empty() {
        Subspace::full(total)
    } else {
        kernel(&RatMatrix::from_rows(&rows, total))
    };
    Ok(HomSpace { src: m.dims.clone(), dst: n.dims.clone(), space })
}

/// rad(M, N) = { f : tr(g ∘ f) = 0 for all g in Hom(N, M) }.
pub fn rad_hom(m: &AModule, n: &AModule) -> Result<HomSpace, ModError> {
    let h = hom_space(m, n)?;
    let back = hom_space(n, m)?;
    let functionals: Vec<Vec<Q>> = back
        .basis()
        .iter()
        .map(|g| {
            let t = ModHom { blocks: g.blocks.iter().map(|b| b.transpose()).collect() };
            t.flatten()
        })
        .collect();
    if functionals.is_empty() {
        return Ok(h);
    }
    let total = h.space.ambient();
    let zero_set = Subspace::span(&functionals, total).orth();
    Ok(HomSpace { src: h.src, dst: h.dst, space: h.space.intersect(&zero_set) })
}

/// Sum of images of all homomorphisms gen -> target.
pub fn trace(gen: &AModule, target: &AModule) -> Result<Submodule, ModError> {
    let h = hom_space(gen, target)?;
    let p = target.alg.pc();
    let mut spaces: Vec<Vec<Vec<Q>>> = vec![Vec::new(); p.n];
    for f in h.basis() {
        for (v, b) in f.blocks.iter().enumerate() {
            spaces[v].extend(b.row_vecs());
        }
    }
    Ok(Submodule { spaces: spaces.iter().enumerate().map(|(v, vs)| Subspace::span(vs, target.dims[v])).collect() })
}

/// Intersection of kernels of all homomorphisms m -> cogen.
pub fn reject(m: &AModule, cogen: &AModule) -> Result<Submodule, ModError> {
    let h = hom_space(m, cogen)?;
    let basis = h.basis();
    let p = m.alg.pc();
    let spaces = (0..p.n)
        .map(|v| {
            let mats: Vec<&RatMatrix> = basis.iter().map(|f| &f.blocks[v]).collect();
            left_kernel(m.dims[v], &mats)
        })
        .collect();
    Ok(Submodule { spaces })
}

pub fn euler_pair(theta: &[Q], m: &AModule) -> Result<Q, ModError> {
    if theta.len() != m.dims.len() {
        return Err(ModError::IndexMismatch { expected: m.dims.len(), got: theta.len() });
    }
    let mut s = Q::zero();
    for (t, &d) in theta.iter().zip(&m.dims) {
        s += t * q(d as i64);
    }
    Ok(s)
}

/// End(M) as an algebra with product b·c = b∘c, and its basis as homomorphisms.
pub fn endomorphism_algebra(m: &AModule) -> Result<(Algebra, Vec<ModHom>), ModError> {
    let h = hom_space(m, m)?;
    let basis = h.basis();
    let table: Vec<Vec<Vec<Q>>> =
        basis.iter().map(|b| basis.iter().map(|c| h.coords(&c.then(b))).collect()).collect();
    let id = ModHom { blocks: m.dims.iter().map(|&d| RatMatrix::identity(d)).collect() };
    let unit = h.coords(&id);
    let labels = (0..basis.len()).map(|i| format!("f{i}")).collect();
    Ok((Algebra::from_table(labels, table, unit)?, basis))
}

pub fn is_isomorphic(m: &AModule, n: &AModule) -> Result<bool, ModError> {
    m.same_owner(n)?;
    if m.dims != n.dims {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let h = hom_space(m, n)?;
    let e = hom_space(m, m)?;
    if h.dim() != e.dim() || h.dim() == 0 {
        return Ok(false);
    }
    let basis = h.basis();
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    for attempt in 0..12 {
        let coeffs: Vec<Q> = (0..basis.len())
            .map(|i| if attempt == 0 { q(1 + i as i64) } else { q(rng.gen_range(-1000..=1000)) })
            .collect();
        let mut v = vec![Q::zero(); h.space.ambient()];
        for (c, b) in coeffs.iter().zip(h.space.basis()) {
            axpy(&mut v, c, b);
        }
        let f = h.unflatten(&v);
        if f.blocks.iter().all(|b| b.rank() == b.rows()) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn end_is_local(m: &AModule) -> Result<(bool, usize), ModError> {
    let e = hom_space(m, m)?;
    if e.dim() == 1 {
        return Ok((true, 1));
    }
    let r = rad_hom(m, m)?;
    Ok((e.dim() - r.dim() == 1, e.dim() - r.dim()))
}

/// dim End(M)/rad End(M)
pub fn end_top_dim(m: &AModule) -> Result<usize, ModError> {
    Ok(end_is_local(m)?.1)
}

/// Krull–Schmidt decomposition with multiplicities.
pub fn indecompose(m: &AModule) -> Result<Vec<(AModule, usize)>, ModError> {
    let mut pieces = Vec::new();
    split_into(m, &mut pieces)?;
    let mut out: Vec<(AModule, usize)> = Vec::new();
    'next: for piece in pieces {
        for (rep, mult) in out.iter_mut() {
            if is_isomorphic(rep, &piece)? {
                *mult += 1;
                continue 'next;
            }
        }
        out.push((piece, 1));
    }
    Ok(out)
}

fn split_into(m: &AModule, out: &mut Vec<AModule>) -> Result<(), ModError> {
    if m.is_zero() {
        return Ok(());
    }
    let (local, _) = end_is_local(m)?;
    if local {
        out.push(m.clone());
        return Ok(());
    }
    let f = nontrivial_idempotent(m)?;
    let p = m.alg.pc();
    let one_minus: Vec<RatMatrix> = f.blocks.iter().map(|b| RatMatrix::identity(b.rows()).sub(b)).collect();
    for proj in [f.blocks.clone(), one_minus] {
        let sub = Submodule {
            spaces: (0..p.n).map(|v| Subspace::span(&proj[v].row_vecs(), m.dims[v])).collect(),
        };
        let (piece, _) = m.sub_module(&sub);
        split_into(&piece, out)?;
    }
    Ok(())
}

fn nontrivial_idempotent(m: &AModule) -> Result<ModHom, ModError> {
    let e = hom_space(m, m)?;
    let mut candidates: Vec<Vec<Q>> = e.space.basis().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1dec);
    for _ in 0..64 {
        let mut v = vec![Q::zero(); e.space.ambient()];
        for b in e.space.basis() {
            axpy(&mut v, &q(rng.gen_range(-3..=3)), b);
        }
        candidates.push(v);
    }
    for v in candidates {
        let x = e.unflatten(&v);
        let full = x.full_matrix();
        let chi = charpoly(&full);
        for root in rational_roots(&chi) {
            if let Some(poly) = fitting_polynomial(&chi, &root) {
                let f = ModHom { blocks: x.blocks.iter().map(|b| poly_at_matrix(&poly, b)).collect() };
                let r = f.full_matrix().rank();
                if r > 0 && r < m.dim() {
                    return Ok(f);
                }
            }
        }
    }
    Err(ModError::NonSplitSemisimple)
}

pub fn is_brick(m: &AModule) -> Result<bool, ModError> {
    if m.is_zero() {
        return Ok(false);
    }
    let e = hom_space(m, m)?;
    if e.dim() == 1 {
        return Ok(true);
    }
    if rad_hom(m, m)?.dim() != 0 {
        return Ok(false);
    }
    let parts = indecompose(m)?;
    Ok(parts.len() == 1 && parts[0].1 == 1)
}

/// Pairwise Hom-orthogonal bricks, each with multiplicity one.
pub fn is_semibrick(m: &AModule) -> Result<bool, ModError> {
    let parts = indecompose(m)?;
    for (i, (a, mult)) in parts.iter().enumerate() {
        if *mult != 1 || !is_brick(a)? {
            return Ok(false);
        }
        for (b, _) in &parts[i + 1..] {
            if hom_space(a, b)?.dim() != 0 || hom_space(b, a)?.dim() != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn projectives(alg: &AlgRef) -> Vec<AModule> {
    (0..alg.n()).map(|k| AModule::projective(alg, k)).collect()
}

pub fn injectives(alg: &AlgRef) -> Vec<AModule> {
    (0..alg.n()).map(|k| AModule::injective(alg, k)).collect()
}

pub fn simples(alg: &AlgRef) -> Vec<AModule> {
    (0..alg.n()).map(|k| AModule::simple(alg, k)).collect()
}

/// Shared algebra handle.
pub fn share(a: Algebra) -> AlgRef {
    Arc::new(a)
}
