//! The interval neighborhood D(U) of a presilting U: facet inequalities with
//! brick labels, faces by I, the maps λ, λ′, ρ, the fans Σ_I and Σ(M_I).

use crate::algebra::AlgRef;
use crate::cones::{fan_image, svg_slice, ConeError, ConeJson, GenFan, RatCone};
use crate::cpx2::{self, CpxError, TwoTerm};
use crate::qlinalg::{dot, q, vec_add, vec_scale, vec_sub, RatMatrix, Subspace, Q};
use crate::reduction::{reduce, RedError, ReductionContext};
use crate::repmod::{self, AModule, ModError};
use crate::siltfan::{self, SiltError, SiltingAtlas};
use num::{Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IntervalError {
    #[error("enumeration of the siltings containing U did not close within the cap; raise --cap")]
    IncompleteReduction,
    #[error("parameter is not in D(U)")]
    NotInDU,
    #[error("parameter is outside the enumerated part of the g-fan")]
    NotLocated,
    #[error("no facet carries a label for summand {0}")]
    EmptyFacetClass(usize),
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error(transparent)]
    Reduction(#[from] RedError),
    #[error(transparent)]
    Silt(#[from] SiltError),
    #[error(transparent)]
    Cpx(#[from] CpxError),
    #[error(transparent)]
    Module(#[from] ModError),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

type Res<T> = Result<T, IntervalError>;

/// A facet F of D(U) with its label: εθ(L_F) ≥ 0 cuts out F.
#[derive(Clone, Debug)]
pub struct FacetDatum {
    pub face: RatCone,
    /// 0-based summand index of U
    pub i: usize,
    pub plus: bool,
    pub label: AModule,
    /// ε·dim L_F
    pub normal: Vec<i64>,
}

impl FacetDatum {
    pub fn normal_q(&self) -> Vec<Q> {
        self.normal.iter().map(|x| q(*x)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct IntervalContext {
    pub red: ReductionContext,
    /// siltings containing U, U at positions 0..m
    pub constrained: SiltingAtlas,
    /// atlas of B (None when B = 0)
    pub b_atlas: Option<SiltingAtlas>,
    /// atlas of A, used for pointwise triple tests
    pub a_atlas: SiltingAtlas,
    pub facets: Vec<FacetDatum>,
    pub dcu: RatCone,
    /// (Y_i⁺, X_i⁻)
    pub semibricks: Vec<(AModule, AModule)>,
    pub ugs: Vec<Vec<i64>>,
}

/// Pointwise flags for θ ∈ D(U) and a summand i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialFlags {
    pub plus: bool,
    pub minus: bool,
    pub boundary: bool,
    pub link: bool,
}

fn qv(v: &[i64]) -> Vec<Q> {
    v.iter().map(|x| q(*x)).collect()
}

pub fn semibrick_pair(u: &[TwoTerm]) -> Res<Vec<(AModule, AModule)>> {
    let h0s: Vec<AModule> = u.iter().map(|x| x.h0()).collect();
    let nus: Vec<AModule> = u.iter().map(|x| x.hminus1_nu()).collect();
    let mut out = Vec::new();
    for i in 0..u.len() {
        out.push((cpx2::plus_part(&h0s, i)?, cpx2::minus_part(&nus, i)?));
    }
    Ok(out)
}

impl IntervalContext {
    pub fn new(alg: &AlgRef, u: &[TwoTerm], cap: usize) -> Res<IntervalContext> {
        let red = reduce(alg, u)?;
        let m = red.m;
        let n = alg.n();
        let constrained = siltfan::enumerate_from(alg, red.s(), m, cap)?;
        if !constrained.complete {
            return Err(IntervalError::IncompleteReduction);
        }
        let b_atlas = if red.b.n() == 0 {
            None
        } else {
            let at = siltfan::enumerate(&red.b, cap)?;
            if !at.complete {
                return Err(IntervalError::IncompleteReduction);
            }
            Some(at)
        };
        let a_atlas = siltfan::enumerate(alg, cap)?;
        let ugs: Vec<Vec<i64>> = red.u().iter().map(|x| x.gvector()).collect();
        let semibricks = semibrick_pair(red.u())?;

        // labels from the SMC parts at U-positions of every V ⊇ U
        let mut data: Vec<(usize, bool, AModule, Vec<i64>)> = Vec::new();
        for v in &constrained.vertices {
            for i in 0..m {
                let part = &v.smc[i];
                let normal = part.signed_dimvec();
                if !data.iter().any(|d| d.3 == normal) {
                    data.push((i, part.plus, part.module.clone(), normal));
                }
            }
        }
        let ineqs: Vec<Vec<Q>> = data.iter().map(|d| qv(&d.3)).collect();
        let dcu = RatCone::from_inequalities(n, &ineqs, &[]);
        let mut facets = Vec::new();
        for f in dcu.facets() {
            let x = f.relative_interior_point();
            let hits: Vec<&(usize, bool, AModule, Vec<i64>)> =
                data.iter().filter(|d| dot(&qv(&d.3), &x).is_zero()).collect();
            if hits.len() != 1 {
                return Err(IntervalError::CertificationFailed(format!(
                    "facet with {} labels instead of one",
                    hits.len()
                )));
            }
            let (i, plus, label, normal) = hits[0].clone();
            facets.push(FacetDatum { face: f, i, plus, label, normal });
        }
        if facets.len() != data.len() {
            return Err(IntervalError::CertificationFailed("a label does not cut out a facet".into()));
        }
        facets.sort_by(|a, b| (a.i, !a.plus, &a.normal).cmp(&(b.i, !b.plus, &b.normal)));
        Ok(IntervalContext { red, constrained, b_atlas, a_atlas, facets, dcu, semibricks, ugs })
    }

    pub fn m(&self) -> usize {
        self.red.m
    }

    pub fn n(&self) -> usize {
        self.red.n()
    }

    pub fn closed_member(&self, theta: &[Q]) -> bool {
        self.facets.iter().all(|f| !dot(&f.normal_q(), theta).is_negative())
    }

    fn locate(&self, theta: &[Q]) -> Res<Vec<Vec<i64>>> {
        siltfan::cone_locate(&self.a_atlas, theta).map(|x| x.1).ok_or(IntervalError::NotLocated)
    }

    /// θ ∈ D(U) (closed) or D°(U) (open, via torsion data of Y⁺ and X⁻).
    pub fn dcu_membership(&self, theta: &[Q], open: bool) -> Res<bool> {
        if !open {
            return Ok(self.closed_member(theta));
        }
        let v = self.locate(theta)?;
        for (yp, xm) in &self.semibricks {
            if !self.fully_torsion(&v, yp)? || !self.fully_torsionfree(&v, xm)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn fully_torsion(&self, v: &[Vec<i64>], m: &AModule) -> Res<bool> {
        Ok(repmod::trace(&self.a_atlas.h0_of(v), m)? == m.whole())
    }

    fn fully_torsionfree(&self, v: &[Vec<i64>], m: &AModule) -> Res<bool> {
        Ok(repmod::reject(m, &self.a_atlas.nu_of(v))?.dim() == 0)
    }

    /// Faces of D(U) grouped by I_F = {i : [U_i] ∉ F} (0-based).
    pub fn faces_by_i(&self) -> BTreeMap<Vec<usize>, Vec<RatCone>> {
        let mut out: BTreeMap<Vec<usize>, Vec<RatCone>> = BTreeMap::new();
        for f in self.dcu.faces() {
            let set = self.i_of(&f);
            out.entry(set).or_default().push(f);
        }
        out
    }

    pub fn i_of(&self, f: &RatCone) -> Vec<usize> {
        (0..self.m()).filter(|&i| !f.contains(&qv(&self.ugs[i]))).collect()
    }

    /// (I, dim) ↦ count.
    pub fn face_census(&self) -> BTreeMap<Vec<usize>, BTreeMap<usize, usize>> {
        self.faces_by_i()
            .into_iter()
            .map(|(k, fs)| {
                let mut c = BTreeMap::new();
                for f in fs {
                    *c.entry(f.dim()).or_insert(0) += 1;
                }
                (k, c)
            })
            .collect()
    }

    pub fn pi_map(&self) -> RatMatrix {
        self.red.pi.transpose()
    }

    /// dim F = (m − #I) + dim π(F) for every face.
    pub fn dimension_formula_holds(&self) -> bool {
        let map = self.pi_map();
        self.faces_by_i().iter().all(|(set, fs)| {
            fs.iter().all(|f| f.dim() == self.m() - set.len() + self.project(f, &map).dim())
        })
    }

    fn project(&self, f: &RatCone, map: &RatMatrix) -> RatCone {
        if map.rows() == 0 {
            RatCone::zero(0)
        } else {
            f.image(map)
        }
    }

    /// Coefficients a_i = min over labels of summand i of |θ(L_F)|/d_{U_i}.
    pub fn lambda_coefficients(&self, theta: &[Q]) -> Res<Vec<Q>> {
        if !self.closed_member(theta) {
            return Err(IntervalError::NotInDU);
        }
        let mut out = Vec::new();
        for i in 0..self.m() {
            let vals: Vec<Q> = self
                .facets
                .iter()
                .filter(|f| f.i == i)
                .map(|f| dot(&f.normal_q(), theta).abs() / q(self.red.d_u[i] as i64))
                .collect();
            out.push(vals.into_iter().min().ok_or(IntervalError::EmptyFacetClass(i + 1))?);
        }
        Ok(out)
    }

    /// (λ_U(θ), λ′_U(θ))
    pub fn lambda(&self, theta: &[Q]) -> Res<(Vec<Q>, Vec<Q>)> {
        let a = self.lambda_coefficients(theta)?;
        let mut lam = vec![Q::zero(); self.n()];
        for (ai, g) in a.iter().zip(&self.ugs) {
            lam = vec_add(&lam, &vec_scale(&qv(g), ai));
        }
        let rest = vec_sub(theta, &lam);
        Ok((lam, rest))
    }

    /// ρ(ξ) ∈ L(U) with π(ρ(ξ)) = ξ.
    pub fn rho(&self, xi: &[Q]) -> Res<Vec<Q>> {
        let m = self.m();
        let s = self.red.s();
        let mut out = vec![Q::zero(); self.n()];
        if let Some(bat) = &self.b_atlas {
            for i in 0..m {
                let mi = self.red.m_module(i);
                let tt = siltfan::torsion_triple(bat, xi, mi)?;
                let f = tt.f_module(mi);
                let r = repmod::euler_pair(xi, &f)?.abs() / q(self.red.d_u[i] as i64);
                out = vec_add(&out, &vec_scale(&qv(&self.ugs[i]), &r));
            }
            for (k, x) in xi.iter().enumerate() {
                out = vec_add(&out, &vec_scale(&qv(&s[m + k].gvector()), x));
            }
        }
        if self.red.pi(&out) != xi {
            return Err(IntervalError::CertificationFailed("π∘ρ is not the identity".into()));
        }
        if !self.closed_member(&out) || self.lambda_coefficients(&out)?.iter().any(|a| !a.is_zero()) {
            return Err(IntervalError::CertificationFailed("ρ(ξ) is not in L(U)".into()));
        }
        Ok(out)
    }

    /// Σ_I: π-images of the faces with I_F = I.
    pub fn sigma_i(&self, set: &[usize]) -> Res<GenFan> {
        let faces = self.faces_by_i().remove(set).unwrap_or_default();
        let map = self.pi_map();
        if map.rows() == 0 {
            return Ok(GenFan::new(0, vec![RatCone::zero(0)]));
        }
        let fan = fan_image(&map, &faces, &faces)?;
        if fan.len() != faces.len() {
            return Err(IntervalError::CertificationFailed("π is not injective on the faces of one I".into()));
        }
        Ok(fan)
    }

    /// Σ(M_I) over B through torsion triples.
    pub fn sigma_mi(&self, set: &[usize]) -> Res<GenFan> {
        match &self.b_atlas {
            None => Ok(GenFan::new(0, vec![RatCone::zero(0)])),
            Some(bat) => {
                let mi = self.red.m_sum(set);
                Ok(siltfan::mtf_fan(bat, &mi)?.fan)
            }
        }
    }

    /// Subsets I ⊆ {0..m−1} in increasing size then lexicographic order.
    pub fn subsets(&self) -> Vec<Vec<usize>> {
        let m = self.m();
        let mut out: Vec<Vec<usize>> =
            (0..1usize << m).map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).collect()).collect();
        out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    /// (I, ξ): the summands i with λ_U(θ) having positive i-th coefficient,
    /// and π(θ).
    pub fn tf_classify(&self, theta: &[Q]) -> Res<(Vec<usize>, Vec<Q>)> {
        let a = self.lambda_coefficients(theta)?;
        let set = (0..self.m()).filter(|&i| a[i].is_positive()).collect();
        Ok((set, self.red.pi(theta)))
    }

    /// TF-equivalence test through the face of D(U) and the Σ(M_{1..m}) class.
    pub fn tf_equivalent(&self, theta: &[Q], eta: &[Q]) -> Res<bool> {
        if !self.closed_member(theta) || !self.closed_member(eta) {
            return Err(IntervalError::NotInDU);
        }
        if self.dcu.face_containing(theta) != self.dcu.face_containing(eta) {
            return Ok(false);
        }
        match &self.b_atlas {
            None => Ok(true),
            Some(bat) => {
                let all: Vec<usize> = (0..self.m()).collect();
                let m = self.red.m_sum(&all);
                let a = siltfan::torsion_triple(bat, &self.red.pi(theta), &m)?;
                let b = siltfan::torsion_triple(bat, &self.red.pi(eta), &m)?;
                Ok(a == b)
            }
        }
    }

    /// (sincere, vertices i whose [P(i)] span the lineality of D(U)).
    pub fn strong_convexity_split(&self) -> (bool, Vec<usize>) {
        let (h, nu): (Vec<AModule>, Vec<AModule>) = self.red.u().iter().map(|x| x.h0_and_nu()).unzip();
        let n = self.n();
        let mut support = vec![false; n];
        for m in h.iter().chain(&nu) {
            for (v, d) in m.dims().iter().enumerate() {
                support[v] |= *d > 0;
            }
        }
        let missing: Vec<usize> = (0..n).filter(|&v| !support[v]).collect();
        (missing.is_empty(), missing)
    }

    pub fn lineality_matches(&self) -> bool {
        let (_, missing) = self.strong_convexity_split();
        let n = self.n();
        let units: Vec<Vec<Q>> = missing.iter().map(|&v| (0..n).map(|k| q(i64::from(k == v))).collect()).collect();
        *self.dcu.lineality() == Subspace::span(&units, n)
    }

    /// Flags ∂_i⁺, ∂_i⁻, ∂_i and L(U) at θ.
    pub fn link_and_partial(&self, theta: &[Q], i: usize) -> Res<PartialFlags> {
        if !self.closed_member(theta) {
            return Err(IntervalError::NotInDU);
        }
        let v = self.locate(theta)?;
        let (yp, xm) = &self.semibricks[i];
        let plus = !self.fully_torsion(&v, yp)?;
        let minus = !self.fully_torsionfree(&v, xm)?;
        let link = self.lambda_coefficients(theta)?.iter().all(|a| a.is_zero());
        Ok(PartialFlags { plus, minus, boundary: plus || minus, link })
    }

    /// Silting cones of the siltings containing U.
    pub fn silting_cones(&self) -> Vec<RatCone> {
        let n = self.n();
        self.constrained.vertices.iter().map(|v| RatCone::from_rays(n, &v.gvecs)).collect()
    }

    pub fn c_u(&self) -> RatCone {
        RatCone::from_rays(self.n(), &self.ugs)
    }

    /// C(U/U_I): cone of the summands outside `set`.
    pub fn c_u_without(&self, set: &[usize]) -> RatCone {
        let gs: Vec<Vec<i64>> = (0..self.m()).filter(|i| !set.contains(i)).map(|i| self.ugs[i].clone()).collect();
        RatCone::from_rays(self.n(), &gs)
    }

    pub fn svg(&self, plane: &[Q], rhs: &Q) -> String {
        let mut cones = self.silting_cones();
        cones.push(self.dcu.clone());
        svg_slice(&cones, plane, rhs, "D(U)")
    }

    pub fn report(&self, rho_samples: &[Vec<i64>]) -> Res<IntervalReport> {
        let facets = self
            .facets
            .iter()
            .map(|f| FacetJson {
                i: f.i + 1,
                eps: if f.plus { "+".into() } else { "-".into() },
                label_dimvec: f.label.dimvec(),
                normal: f.normal.clone(),
            })
            .collect();
        let mut faces = Vec::new();
        for (set, fs) in self.faces_by_i() {
            let mut by_dim: BTreeMap<usize, Vec<ConeJson>> = BTreeMap::new();
            for f in fs {
                by_dim.entry(f.dim()).or_default().push(f.to_json());
            }
            for (dim, cones) in by_dim {
                faces.push(FaceGroupJson { i: set.iter().map(|x| x + 1).collect(), dim, faces: cones });
            }
        }
        let mut fans = Vec::new();
        for set in self.subsets() {
            let geo = self.sigma_i(&set)?;
            let mtf = self.sigma_mi(&set)?;
            fans.push(FanJson {
                i: set.iter().map(|x| x + 1).collect(),
                equal: geo == mtf,
                complete: geo.check().is_complete,
                cones: geo.cones().iter().map(|c| c.to_json()).collect(),
            });
        }
        let mut rho = Vec::new();
        if self.b_atlas.is_some() {
            for xi in rho_samples {
                let r = self.rho(&qv(xi))?;
                rho.push(RhoJson { xi: xi.clone(), rho: r.iter().map(|x| x.to_string()).collect() });
            }
        }
        let (sincere, lin) = self.strong_convexity_split();
        Ok(IntervalReport {
            u_gvectors: self.ugs.clone(),
            s_gvectors: self.red.s().iter().map(|x| x.gvector()).collect(),
            t_gvectors: self.red.t().iter().map(|x| x.gvector()).collect(),
            smc_s: self.red.x.iter().map(|p| p.signed_dimvec()).collect(),
            smc_t: self.red.y.iter().map(|p| p.signed_dimvec()).collect(),
            reduction: self.red.to_json(),
            dcu: self.dcu.to_json(),
            facets,
            faces,
            fans,
            rho,
            sincere,
            lineality_vertices: lin.iter().map(|v| v + 1).collect(),
        })
    }
}

#[derive(Serialize)]
pub struct FacetJson {
    pub i: usize,
    pub eps: String,
    pub label_dimvec: Vec<i64>,
    pub normal: Vec<i64>,
}

#[derive(Serialize)]
pub struct FaceGroupJson {
    pub i: Vec<usize>,
    pub dim: usize,
    pub faces: Vec<ConeJson>,
}

#[derive(Serialize)]
pub struct FanJson {
    pub i: Vec<usize>,
    pub equal: bool,
    pub complete: bool,
    pub cones: Vec<ConeJson>,
}

#[derive(Serialize)]
pub struct RhoJson {
    pub xi: Vec<i64>,
    pub rho: Vec<String>,
}

#[derive(Serialize)]
pub struct IntervalReport {
    pub u_gvectors: Vec<Vec<i64>>,
    pub s_gvectors: Vec<Vec<i64>>,
    pub t_gvectors: Vec<Vec<i64>>,
    pub smc_s: Vec<Vec<i64>>,
    pub smc_t: Vec<Vec<i64>>,
    pub reduction: crate::reduction::ReductionJson,
    pub dcu: ConeJson,
    pub facets: Vec<FacetJson>,
    pub faces: Vec<FaceGroupJson>,
    pub fans: Vec<FanJson>,
    pub rho: Vec<RhoJson>,
    pub sincere: bool,
    pub lineality_vertices: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{from_quiver, Quiver};
    use crate::qlinalg::to_i64_vec;
    use crate::repmod::share;

    fn a4() -> AlgRef {
        share(from_quiver(&Quiver::linear(4), 16).unwrap())
    }

    fn a4_ctx() -> IntervalContext {
        let a = a4();
        let u1 = TwoTerm::new(&a, vec![3], vec![2], vec![vec![a.parse_element("a3").unwrap()]]).unwrap();
        IntervalContext::new(&a, &[u1, TwoTerm::stalk(&a, 0)], 1000).unwrap()
    }

    #[test]
    fn a4_facets_and_rays() {
        let ctx = a4_ctx();
        let table: Vec<(usize, bool, Vec<i64>)> =
            ctx.facets.iter().map(|f| (f.i + 1, f.plus, f.label.dimvec())).collect();
        assert_eq!(
            table,
            vec![
                (1, true, vec![0, 0, 1, 0]),
                (1, false, vec![0, 0, 0, 1]),
                (2, true, vec![1, 0, 0, 0]),
                (2, true, vec![1, 1, 0, 0]),
                (2, true, vec![1, 1, 1, 1]),
            ]
        );
        let mut rays: Vec<Vec<i64>> = ctx.dcu.rays().iter().map(|r| to_i64_vec(r)).collect();
        rays.sort();
        let mut want = vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![1, -1, 0, 0], vec![0, 1, 0, -1], vec![0, 0, 1, -1]];
        want.sort();
        assert_eq!(rays, want);
        assert_eq!(ctx.semibricks[0].0.dimvec(), vec![0, 0, 1, 0]);
        assert_eq!(ctx.semibricks[0].1.dimvec(), vec![0, 0, 0, 1]);
        assert_eq!(ctx.semibricks[1].0.dimvec(), vec![1, 1, 1, 1]);
        assert!(ctx.semibricks[1].1.is_zero());
        assert_eq!(ctx.strong_convexity_split(), (true, vec![]));
        assert!(ctx.lineality_matches());
    }

    #[test]
    fn a4_census_and_fans() {
        let ctx = a4_ctx();
        let census = ctx.face_census();
        let c = |set: &[usize]| census[&set.to_vec()].iter().map(|(d, k)| (*d, *k)).collect::<Vec<_>>();
        assert_eq!(c(&[]), vec![(4, 1)]);
        assert_eq!(c(&[0]), vec![(2, 1), (3, 2)]);
        assert_eq!(c(&[1]), vec![(1, 1), (2, 3), (3, 3)]);
        assert_eq!(c(&[0, 1]), vec![(0, 1), (1, 4), (2, 4)]);
        assert!(ctx.dimension_formula_holds());
        for set in ctx.subsets() {
            let g = ctx.sigma_i(&set).unwrap();
            assert_eq!(g, ctx.sigma_mi(&set).unwrap());
            assert!(g.check().is_complete);
        }
        let both = ctx.sigma_i(&[0]).unwrap().common_refinement(&ctx.sigma_i(&[1]).unwrap());
        assert_eq!(both, ctx.sigma_i(&[0, 1]).unwrap());
    }

    #[test]
    fn a4_lambda_rho() {
        let ctx = a4_ctx();
        let (l, lp) = ctx.lambda(&qv(&[1, 1, 0, 0])).unwrap();
        assert_eq!((l, lp), (qv(&[1, 0, 0, 0]), qv(&[0, 1, 0, 0])));
        assert_eq!(ctx.rho(&qv(&[1, 0])).unwrap(), qv(&[0, 1, 0, 0]));
        assert_eq!(ctx.rho(&qv(&[0, 1])).unwrap(), qv(&[0, 0, 1, 0]));
        assert_eq!(ctx.rho(&qv(&[-1, 0])).unwrap(), qv(&[1, -1, 0, 0]));
        assert_eq!(ctx.rho(&qv(&[1, -1])).unwrap(), qv(&[0, 1, 0, -1]));
        assert!(ctx.dcu_membership(&qv(&[1, 0, 1, -1]), true).unwrap());
        assert!(ctx.dcu_membership(&qv(&[0, 1, 0, 0]), false).unwrap());
        assert!(!ctx.dcu_membership(&qv(&[0, 1, 0, 0]), true).unwrap());
        assert!(!ctx.dcu_membership(&qv(&[-1, 0, 0, 0]), false).unwrap());
        assert_eq!(ctx.tf_classify(&qv(&[0, 1, 0, 0])).unwrap(), (vec![], qv(&[1, 0])));
        assert_eq!(ctx.tf_classify(&qv(&[0, 1, 1, -1])).unwrap(), (vec![0], qv(&[1, 0])));
        assert_eq!(ctx.tf_classify(&qv(&[1, 0, 1, -1])).unwrap().0, vec![0, 1]);
        // interior of the facet through [P3]-[P4], [P1]-[P2], [P2]-[P4] ... labeled (1,+)
        let f = &ctx.facets[0].face;
        let flags = ctx.link_and_partial(&f.relative_interior_point(), 0).unwrap();
        assert!(flags.plus && !flags.minus);
        let inside = ctx.link_and_partial(&qv(&[1, 0, 1, -1]), 1).unwrap();
        assert!(!inside.boundary && !inside.link);
    }

    #[test]
    fn degenerate_intervals() {
        let a = a4();
        let ctx = IntervalContext::new(&a, &[], 1000).unwrap();
        assert!(ctx.facets.is_empty());
        assert_eq!(ctx.dcu, RatCone::whole(4));
        let ctx = IntervalContext::new(&a, &TwoTerm::regular(&a), 1000).unwrap();
        assert_eq!(ctx.facets.len(), 4);
        assert!(ctx.facets.iter().all(|f| f.plus && f.label.dim() == 1));
        let k2 = share(from_quiver(&Quiver::linear(2), 8).unwrap());
        let ctx = IntervalContext::new(&k2, &[TwoTerm::stalk(&k2, 1)], 100).unwrap();
        assert_eq!(ctx.strong_convexity_split(), (false, vec![0]));
        assert!(ctx.lineality_matches());
        let ctx = IntervalContext::new(&k2, &[TwoTerm::stalk(&k2, 0)], 100).unwrap();
        assert_eq!(ctx.strong_convexity_split(), (true, vec![]));
    }
}
