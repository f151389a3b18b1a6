//! τ-tilting reduction at a presilting U: the algebra B, the functor Φ on
//! the perpendicular category W_U, the projection π on K₀ and the modules M_i.
//!
//! B is realized as End_K(S)/⟨e_U⟩ acting on Hom_K(S, -) by precomposition,
//! so that Φ and the M_i share one construction.

use crate::algebra::{AlgRef, Algebra, AlgebraError, Quiver};
use crate::cpx2::{self, ChainMap, Completions, CpxError, SmcPart, TwoTerm, AMat};
use crate::qlinalg::{is_zero_vec, QuotientSpace, RatMatrix, Subspace, Q};
use crate::repmod::{self, share, AModule, ModError};
use num::{One, Zero};
use serde::Serialize;
use std::ops::Range;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RedError {
    #[error("module is not in the perpendicular category of U")]
    NotInWU,
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error(transparent)]
    Cpx(#[from] CpxError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Module(#[from] ModError),
}

type Res<T> = Result<T, RedError>;

#[derive(Debug, Clone)]
pub struct ReductionContext {
    pub alg: AlgRef,
    /// number of summands of U
    pub m: usize,
    pub comps: Completions,
    /// dim End_K(U_i)/rad
    pub d_u: Vec<usize>,
    /// dim End_K(S_j)/rad for every summand of S
    pub d_s: Vec<usize>,
    /// SMC of S (maximal completion), indexed like S
    pub x: Vec<SmcPart>,
    /// SMC of T (minimal completion), indexed like T
    pub y: Vec<SmcPart>,
    pub b: AlgRef,
    /// n × (n−m), row vectors: π(θ) = θ·pi
    pub pi: RatMatrix,
    pub m_modules: Vec<AModule>,
    s_sum: TwoTerm,
    zero_ranges: Vec<Range<usize>>,
    minus_ranges: Vec<Range<usize>>,
    end_basis: Vec<ChainMap>,
    lifts: Vec<ChainMap>,
    h0u: AModule,
    nuu: AModule,
}

/// Hom_K(S, N) or Hom_K(S, N[1]) for a module N, as Z/null inside the
/// coordinates ⊕ N e_{v} over the degree-0 (resp. degree -1) slots of S.
struct StalkHom<'a> {
    n: &'a AModule,
    shifted: bool,
    slots: Vec<usize>,
    offs: Vec<usize>,
    total: usize,
    z: Subspace,
    null: Subspace,
}

impl<'a> StalkHom<'a> {
    fn new(s: &TwoTerm, n: &'a AModule, shifted: bool) -> StalkHom<'a> {
        let d = s.diff();
        let slots: Vec<usize> = if shifted { d.cols.clone() } else { d.rows.clone() };
        let mut offs = Vec::new();
        let mut total = 0;
        for &v in &slots {
            offs.push(total);
            total += n.dims()[v];
        }
        let (z, null) = if shifted {
            let mut gens = Vec::new();
            for (r, &j) in d.rows.iter().enumerate() {
                for k in 0..n.dims()[j] {
                    let mut unit = vec![Q::zero(); n.dims()[j]];
                    unit[k] = Q::one();
                    let mut v = vec![Q::zero(); total];
                    for (c, &w) in d.cols.iter().enumerate() {
                        let img = n.act_element(&d.e[r][c], j, w).vec_mul(&unit);
                        for (t, x) in img.into_iter().enumerate() {
                            v[offs[c] + t] = x;
                        }
                    }
                    gens.push(v);
                }
            }
            (Subspace::full(total), Subspace::span(&gens, total))
        } else {
            let width: usize = d.cols.iter().map(|&w| n.dims()[w]).sum();
            let mut mat = RatMatrix::zeros(total, width);
            let mut c0 = 0;
            for (c, &w) in d.cols.iter().enumerate() {
                for (r, &j) in d.rows.iter().enumerate() {
                    let blk = n.act_element(&d.e[r][c], j, w);
                    for a in 0..blk.rows() {
                        for b in 0..blk.cols() {
                            mat.set(offs[r] + a, c0 + b, blk.get(a, b).clone());
                        }
                    }
                }
                c0 += n.dims()[w];
            }
            (repmod::left_kernel(total, &[&mat]), Subspace::zero(total))
        };
        StalkHom { n, shifted, slots, offs, total, z, null }
    }

    /// φ ∘ c
    fn act(&self, c: &ChainMap, v: &[Q]) -> Vec<Q> {
        let f: &AMat = if self.shifted { &c.f1 } else { &c.f0 };
        let mut out = vec![Q::zero(); self.total];
        for (r, &j) in self.slots.iter().enumerate() {
            let part = &v[self.offs[r]..self.offs[r] + self.n.dims()[j]];
            if is_zero_vec(part) {
                continue;
            }
            for (r2, &j2) in self.slots.iter().enumerate() {
                let img = self.n.act_element(&f.e[r][r2], j, j2).vec_mul(part);
                for (t, x) in img.into_iter().enumerate() {
                    out[self.offs[r2] + t] += x;
                }
            }
        }
        out
    }

    fn coord_range(&self, slots: &Range<usize>) -> Range<usize> {
        let start = if slots.start < self.slots.len() { self.offs[slots.start] } else { self.total };
        let end = if slots.end < self.slots.len() { self.offs[slots.end] } else { self.total };
        start..end
    }

    fn restrict(&self, v: &[Q], slots: &Range<usize>) -> Vec<Q> {
        let keep = self.coord_range(slots);
        v.iter().enumerate().map(|(i, x)| if keep.contains(&i) { x.clone() } else { Q::zero() }).collect()
    }

    fn coord_space(&self, slots: &Range<usize>) -> Subspace {
        let keep = self.coord_range(slots);
        let units: Vec<Vec<Q>> = keep
            .map(|i| {
                let mut u = vec![Q::zero(); self.total];
                u[i] = Q::one();
                u
            })
            .collect();
        Subspace::span(&units, self.total)
    }

    fn block(&self, slots: &Range<usize>) -> QuotientSpace {
        let c = self.coord_space(slots);
        QuotientSpace::new(&self.z.intersect(&c), &self.null.intersect(&c))
    }
}

fn summand_idempotent(alg: &Algebra, s: &TwoTerm, minus: &Range<usize>, zero: &Range<usize>) -> ChainMap {
    let idem = |k: usize| alg.basis_vec(alg.pc().idem[k]);
    let d = s.diff();
    let mut f1 = AMat::zero(alg, &d.cols, &d.cols);
    for c in minus.clone() {
        f1.e[c][c] = idem(d.cols[c]);
    }
    let mut f0 = AMat::zero(alg, &d.rows, &d.rows);
    for r in zero.clone() {
        f0.e[r][r] = idem(d.rows[r]);
    }
    ChainMap { f1, f0 }
}

fn ranges(lens: impl Iterator<Item = usize>) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut at = 0;
    for l in lens {
        out.push(at..at + l);
        at += l;
    }
    out
}

/// Build the reduction data for a presilting `u`.
pub fn reduce(alg: &AlgRef, u: &[TwoTerm]) -> Res<ReductionContext> {
    let comps = cpx2::completions(alg, u)?;
    let n = alg.n();
    let m = comps.u.len();
    let s = &comps.s;
    let d_u = comps.u.iter().map(cpx2::end_top_dim).collect::<Result<Vec<_>, _>>()?;
    let d_s = s.iter().map(cpx2::end_top_dim).collect::<Result<Vec<_>, _>>()?;
    let x = cpx2::smc_of_silting(s)?;
    let y = cpx2::smc_of_silting(&comps.t)?;
    let s_sum = cpx2::sum_of(alg, s);
    let zero_ranges = ranges(s.iter().map(|t| t.zero().len()));
    let minus_ranges = ranges(s.iter().map(|t| t.minus().len()));
    let h0u = cpx2::sum_of(alg, &comps.u).h0();
    let nuu = cpx2::sum_of(alg, &comps.u).hminus1_nu();

    // π: coordinates in the g-vector basis of S, then drop the U part
    let gs: Vec<Vec<i64>> = s.iter().map(|t| t.gvector()).collect();
    let ginv = RatMatrix::from_i64(&gs).inverse().ok_or(CpxError::NotSilting)?;
    let mut pi = RatMatrix::zeros(n, n - m);
    for r in 0..n {
        for k in 0..n - m {
            pi.set(r, k, ginv.get(r, m + k).clone());
        }
    }

    let (ek, hk) = cpx2::end_k(&s_sum)?;
    let end_basis = hk.reps();
    let idem_coords: Vec<Vec<Q>> = (0..n)
        .map(|j| hk.coords(&summand_idempotent(alg, &s_sum, &minus_ranges[j], &zero_ranges[j])))
        .collect();

    let (b, lifts) = if m == n {
        (Algebra::zero(), Vec::new())
    } else {
        let (b0, proj, reps) = ek.quotient_by_ideal(&idem_coords[..m])?;
        let idems: Vec<Vec<Q>> = idem_coords[m..].iter().map(|e| proj.vec_mul(e)).collect();
        let labels = (1..=n - m).map(|k| k.to_string()).collect();
        let (b, change) = b0.peirce_rebase(&idems, labels)?;
        let lifts = (0..b.dim())
            .map(|i| {
                let mut coords = vec![Q::zero(); ek.dim()];
                for (l, c) in change.row(i).iter().enumerate() {
                    if !c.is_zero() {
                        crate::qlinalg::axpy(&mut coords, c, &reps[l]);
                    }
                }
                hk.combine(&coords)
            })
            .collect();
        (b, lifts)
    };

    // cross-check: dim B = dim End(H⁰S) − dim ⟨ε_U⟩
    let h0_parts: Vec<AModule> = s.iter().map(|t| t.h0()).collect();
    let h0s = AModule::direct_sum(alg, &h0_parts.iter().collect::<Vec<_>>());
    let (end_h0, _) = repmod::endomorphism_algebra(&h0s)?;
    let hs = repmod::hom_space(&h0s, &h0s)?;
    let p = alg.pc();
    let mut eps = Vec::new();
    for j in 0..m {
        let blocks = (0..p.n)
            .map(|v| {
                let off: usize = h0_parts[..j].iter().map(|h| h.dims()[v]).sum();
                let mut blk = RatMatrix::zeros(h0s.dims()[v], h0s.dims()[v]);
                for k in 0..h0_parts[j].dims()[v] {
                    blk.set(off + k, off + k, Q::one());
                }
                blk
            })
            .collect();
        eps.push(hs.coords(&repmod::ModHom { blocks }));
    }
    let ideal_dim = if m == 0 { 0 } else { end_h0.ideal(&eps).dim() };
    if end_h0.dim() - ideal_dim != b.dim() {
        return Err(RedError::CertificationFailed(format!(
            "dim End_K(S)/<e_U> = {} but dim End(H0 S)/<e_U> = {}",
            b.dim(),
            end_h0.dim() - ideal_dim
        )));
    }

    let mut ctx = ReductionContext {
        alg: alg.clone(),
        m,
        comps,
        d_u,
        d_s,
        x,
        y,
        b: share(b),
        pi,
        m_modules: Vec::new(),
        s_sum,
        zero_ranges,
        minus_ranges,
        end_basis,
        lifts,
        h0u,
        nuu,
    };
    for i in 0..m {
        let mi = ctx.build_m(i)?;
        ctx.m_modules.push(mi);
    }
    Ok(ctx)
}

impl ReductionContext {
    pub fn n(&self) -> usize {
        self.alg.n()
    }

    pub fn s(&self) -> &[TwoTerm] {
        &self.comps.s
    }

    pub fn t(&self) -> &[TwoTerm] {
        &self.comps.t
    }

    pub fn u(&self) -> &[TwoTerm] {
        &self.comps.u
    }

    /// The quiver of B when B is certified to be a path algebra.
    pub fn b_quiver(&self) -> Option<Quiver> {
        self.b.certify_path_algebra()
    }

    fn slot_ranges(&self, shifted: bool) -> &[Range<usize>] {
        if shifted {
            &self.minus_ranges
        } else {
            &self.zero_ranges
        }
    }

    /// Hom_K(S_{>m}, N) (or N[1]) as a right B-module.
    fn b_module(&self, nmod: &AModule, shifted: bool) -> Res<AModule> {
        if self.m == self.n() {
            return Ok(AModule::zero(&self.b));
        }
        let sh = StalkHom::new(&self.s_sum, nmod, shifted);
        let rs = self.slot_ranges(shifted);
        let u_slots = 0..rs[self.m].start;
        let blocks: Vec<QuotientSpace> = rs[self.m..].iter().map(|r| sh.block(r)).collect();
        // the U-annihilated part must be stable under End_K(S)
        for blk in &blocks {
            for phi in blk.reps() {
                for c in &self.end_basis {
                    let w = sh.act(c, phi);
                    if !sh.null.contains(&sh.restrict(&w, &u_slots)) {
                        return Err(RedError::CertificationFailed("U-annihilated maps not closed under End(S)".into()));
                    }
                }
            }
        }
        let p = self.b.pc();
        let dims: Vec<usize> = blocks.iter().map(|b| b.dim()).collect();
        let mut act = Vec::new();
        for (bi, &(s, t)) in p.corner.iter().enumerate() {
            let mut mat = RatMatrix::zeros(dims[s], dims[t]);
            for (r, phi) in blocks[s].reps().iter().enumerate() {
                let w = sh.act(&self.lifts[bi], phi);
                let target = &rs[self.m + t];
                let wt = sh.restrict(&w, target);
                let rest: Vec<Q> = w.iter().zip(&wt).map(|(a, b)| a - b).collect();
                if !sh.null.contains(&rest) {
                    return Err(RedError::CertificationFailed("B action leaves its corner".into()));
                }
                for (c, x) in blocks[t].coords(&wt).into_iter().enumerate() {
                    mat.set(r, c, x);
                }
            }
            act.push(mat);
        }
        Ok(AModule::new(self.b.clone(), dims, act)?)
    }

    fn build_m(&self, i: usize) -> Res<AModule> {
        let yi = &self.y[i];
        let mi = self.b_module(&yi.module, !yi.plus)?;
        for k in 0..self.n() - self.m {
            let want = self.comps.a[k][i] * self.d_u[i];
            if mi.dims()[k] != want {
                return Err(RedError::CertificationFailed(format!(
                    "M_{} has dimension {} at vertex {} but a·d = {}",
                    i + 1,
                    mi.dims()[k],
                    k + 1,
                    want
                )));
            }
        }
        Ok(mi)
    }

    pub fn m_module(&self, i: usize) -> &AModule {
        &self.m_modules[i]
    }

    /// Direct sum of M_i over `set` (0-based indices).
    pub fn m_sum(&self, set: &[usize]) -> AModule {
        let parts: Vec<&AModule> = set.iter().map(|&i| &self.m_modules[i]).collect();
        AModule::direct_sum(&self.b, &parts)
    }

    pub fn w_u_membership(&self, m: &AModule) -> Res<bool> {
        Ok(repmod::hom_space(&self.h0u, m)?.dim() == 0 && repmod::hom_space(m, &self.nuu)?.dim() == 0)
    }

    /// Φ = Hom_A(H⁰S, -) on W_U.
    pub fn phi(&self, m: &AModule) -> Res<AModule> {
        if !self.w_u_membership(m)? {
            return Err(RedError::NotInWU);
        }
        self.b_module(m, false)
    }

    pub fn pi(&self, theta: &[Q]) -> Vec<Q> {
        self.pi.vec_mul(theta)
    }

    /// b_{j,i}: multiplicity of L(j−m)_B in M_i, i.e. dim M_i e_{j−m} / d_{S_j}.
    pub fn b_coeff(&self, j: usize, i: usize) -> usize {
        self.m_modules[i].dims()[j - self.m] / self.d_s[j]
    }

    pub fn to_json(&self) -> ReductionJson {
        let fmt = |m: &RatMatrix| -> Vec<Vec<String>> {
            (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect()).collect()
        };
        ReductionJson {
            b_dim: self.b.dim(),
            b_quiver: self
                .b_quiver()
                .map(|qv| qv.arrows.iter().map(|a| (a.from.clone(), a.to.clone())).collect()),
            pi: fmt(&self.pi),
            m_modules: self
                .m_modules
                .iter()
                .map(|mi| MJson {
                    dimvec: mi.dimvec(),
                    action: (0..self.b.dim()).map(|bi| fmt(mi.act(bi))).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct ReductionJson {
    pub b_dim: usize,
    /// arrows (from, to) when B is a path algebra
    pub b_quiver: Option<Vec<(String, String)>>,
    pub pi: Vec<Vec<String>>,
    pub m_modules: Vec<MJson>,
}

#[derive(Serialize)]
pub struct MJson {
    pub dimvec: Vec<i64>,
    pub action: Vec<Vec<Vec<String>>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::from_quiver;
    use crate::qlinalg::q;

    fn a4() -> AlgRef {
        share(from_quiver(&Quiver::linear(4), 16).unwrap())
    }

    fn a4_u(alg: &AlgRef) -> Vec<TwoTerm> {
        let u1 = TwoTerm::new(alg, vec![3], vec![2], vec![vec![alg.parse_element("a3").unwrap()]]).unwrap();
        vec![u1, TwoTerm::stalk(alg, 0)]
    }

    fn qv(v: &[i64]) -> Vec<Q> {
        v.iter().map(|x| q(*x)).collect()
    }

    #[test]
    fn a4_reduction() {
        let a = a4();
        let ctx = reduce(&a, &a4_u(&a)).unwrap();
        assert_eq!(ctx.b.dim(), 3);
        let quiver = ctx.b_quiver().unwrap();
        assert_eq!(quiver.arrows.len(), 1);
        assert_eq!((quiver.arrows[0].from.as_str(), quiver.arrows[0].to.as_str()), ("1", "2"));
        assert_eq!(ctx.m_module(0).dimvec(), vec![0, 1]);
        assert_eq!(ctx.m_module(1).dimvec(), vec![1, 1]);
        let pb1 = AModule::projective(&ctx.b, 0);
        assert!(repmod::is_isomorphic(ctx.m_module(1), &pb1).unwrap());
        assert_eq!(ctx.pi(&qv(&[0, 1, 0, -1])), qv(&[1, -1]));
        assert_eq!(ctx.pi(&qv(&[0, 1, 0, 0])), qv(&[1, 0]));
        assert_eq!(ctx.pi(&qv(&[0, 0, 1, -1])), qv(&[0, 0]));
        // Φ(X₃), Φ(X₄) are the simples, Φ(2/3/4) = P(1)_B
        let x3 = &ctx.x[2].module;
        assert!(ctx.w_u_membership(x3).unwrap());
        assert_eq!(ctx.phi(x3).unwrap().dimvec(), vec![1, 0]);
        assert_eq!(ctx.phi(&ctx.x[3].module).unwrap().dimvec(), vec![0, 1]);
        let w2 = AModule::projective(&a, 1);
        assert!(repmod::is_isomorphic(&ctx.phi(&w2).unwrap(), &pb1).unwrap());
        assert!(!ctx.w_u_membership(&ctx.u()[1].h0()).unwrap());
        assert!(matches!(ctx.phi(&AModule::projective(&a, 0)), Err(RedError::NotInWU)));
    }

    #[test]
    fn degenerate_reductions() {
        let a = a4();
        let s = TwoTerm::regular(&a);
        let ctx = reduce(&a, &s).unwrap();
        assert_eq!(ctx.b.dim(), 0);
        assert_eq!(ctx.pi.cols(), 0);
        assert!(ctx.m_modules.iter().all(|m| m.is_zero()));
        let ctx = reduce(&a, &[]).unwrap();
        assert_eq!(ctx.b.dim(), 10);
        assert_eq!(ctx.pi, RatMatrix::identity(4));
        assert!(ctx.phi(&AModule::zero(&a)).unwrap().is_zero());
    }
}
