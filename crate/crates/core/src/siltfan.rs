//! Silting atlases (exchange quivers with brick labels), the g-fan, semistable
//! torsion triples and M-TF fans.

use crate::algebra::AlgRef;
use crate::cones::{tiles, FanCheck, GenFan, RatCone};
use crate::cpx2::{self, CpxError, Direction, SmcPart, TwoTerm};
use crate::qlinalg::{q, solve, Q, RatMatrix};
use crate::repmod::{self, AModule, ModError, Submodule};
use num::Signed;
use serde::Serialize;
use std::collections::{HashMap, VecDeque};
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SiltError {
    #[error("vector does not lie in any enumerated silting cone")]
    NotLocated,
    #[error("negative multiplicity in a support decomposition")]
    NegativeMultiplicity,
    #[error("atlas is incomplete")]
    IncompleteAtlas,
    #[error("class closure is not convex")]
    NonConvexClass,
    #[error("collected classes do not form a complete fan")]
    NotAFan,
    #[error(transparent)]
    Cpx(#[from] CpxError),
    #[error(transparent)]
    Module(#[from] ModError),
}

type Res<T> = Result<T, SiltError>;

/// An indecomposable presilting complex with its two cohomology modules.
#[derive(Clone, Debug)]
pub struct Indec {
    pub cpx: TwoTerm,
    pub h0: AModule,
    pub nu: AModule,
}

#[derive(Clone, Debug)]
pub struct AtlasVertex {
    /// g-vectors of the summands, in summand order
    pub gvecs: Vec<Vec<i64>>,
    pub smc: Vec<SmcPart>,
    ginv: RatMatrix,
}

/// Left mutation `src → dst` at summand `src_index`, labeled by a brick.
#[derive(Clone, Debug)]
pub struct ExchangeArrow {
    pub src: usize,
    pub dst: usize,
    pub src_index: usize,
    pub dst_index: usize,
    pub label: AModule,
}

#[derive(Clone, Debug)]
pub struct SiltingAtlas {
    alg: AlgRef,
    pub indecs: HashMap<Vec<i64>, Indec>,
    pub vertices: Vec<AtlasVertex>,
    pub arrows: Vec<ExchangeArrow>,
    pub complete: bool,
    /// summands at positions below this index are never mutated
    pub frozen: usize,
    index: HashMap<Vec<Vec<i64>>, usize>,
}

fn key_of(gs: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut k = gs.to_vec();
    k.sort();
    k
}

pub fn gmatrix(gs: &[Vec<i64>]) -> RatMatrix {
    RatMatrix::from_i64(gs)
}

impl SiltingAtlas {
    pub fn alg(&self) -> &AlgRef {
        &self.alg
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn summands(&self, v: usize) -> Vec<TwoTerm> {
        self.vertices[v].gvecs.iter().map(|g| self.indecs[g].cpx.clone()).collect()
    }

    pub fn find(&self, gs: &[Vec<i64>]) -> Option<usize> {
        self.index.get(&key_of(gs)).copied()
    }

    fn register(&mut self, xs: &[TwoTerm]) {
        for x in xs {
            let g = x.gvector();
            self.indecs.entry(g).or_insert_with(|| Indec { cpx: x.clone(), h0: x.h0(), nu: x.hminus1_nu() });
        }
    }

    fn add_vertex(&mut self, xs: &[TwoTerm]) -> Res<usize> {
        let gvecs: Vec<Vec<i64>> = xs.iter().map(|x| x.gvector()).collect();
        if let Some(&i) = self.index.get(&key_of(&gvecs)) {
            return Ok(i);
        }
        self.register(xs);
        let smc = cpx2::smc_of_silting(xs)?;
        let ginv = gmatrix(&gvecs).inverse().ok_or(CpxError::NotSilting)?;
        self.vertices.push(AtlasVertex { gvecs: gvecs.clone(), smc, ginv });
        let id = self.vertices.len() - 1;
        self.index.insert(key_of(&gvecs), id);
        Ok(id)
    }

    /// Sum of H⁰ over a set of summands (by g-vector).
    pub fn h0_of(&self, gs: &[Vec<i64>]) -> AModule {
        let parts: Vec<&AModule> = gs.iter().map(|g| &self.indecs[g].h0).collect();
        AModule::direct_sum(&self.alg, &parts)
    }

    pub fn nu_of(&self, gs: &[Vec<i64>]) -> AModule {
        let parts: Vec<&AModule> = gs.iter().map(|g| &self.indecs[g].nu).collect();
        AModule::direct_sum(&self.alg, &parts)
    }

    /// Coefficients of θ in the g-vector basis of vertex `v`.
    pub fn coefficients(&self, v: usize, theta: &[Q]) -> Vec<Q> {
        self.vertices[v].ginv.vec_mul(theta)
    }
}

/// Breadth-first enumeration from the stalk complex A.
pub fn enumerate(alg: &AlgRef, cap: usize) -> Res<SiltingAtlas> {
    enumerate_from(alg, &TwoTerm::regular(alg), 0, cap)
}

/// Enumeration from `start`, mutating only at positions `frozen..n`.
pub fn enumerate_from(alg: &AlgRef, start: &[TwoTerm], frozen: usize, cap: usize) -> Res<SiltingAtlas> {
    let mut atlas = SiltingAtlas {
        alg: alg.clone(),
        indecs: HashMap::new(),
        vertices: Vec::new(),
        arrows: Vec::new(),
        complete: true,
        frozen,
        index: HashMap::new(),
    };
    let first = atlas.add_vertex(start)?;
    let mut queue = VecDeque::from([first]);
    while let Some(v) = queue.pop_front() {
        let summands = atlas.summands(v);
        for j in frozen..summands.len() {
            let plus = atlas.vertices[v].smc[j].plus;
            let dir = if plus { Direction::Left } else { Direction::Right };
            let next = cpx2::mutate(&summands, j, dir)?;
            let key = key_of(&next.iter().map(|x| x.gvector()).collect::<Vec<_>>());
            let dst = match atlas.index.get(&key) {
                Some(&d) => d,
                None => {
                    if atlas.vertices.len() >= cap {
                        atlas.complete = false;
                        continue;
                    }
                    let d = atlas.add_vertex(&next)?;
                    queue.push_back(d);
                    d
                }
            };
            if plus {
                let g = next[j].gvector();
                let dst_index = atlas.vertices[dst].gvecs.iter().position(|x| *x == g).unwrap();
                atlas.arrows.push(ExchangeArrow {
                    src: v,
                    dst,
                    src_index: j,
                    dst_index,
                    label: atlas.vertices[v].smc[j].module.clone(),
                });
            }
        }
    }
    Ok(atlas)
}

/// Closed silting cones of all vertices together with all their faces.
pub fn gfan(atlas: &SiltingAtlas) -> GenFan {
    let n = atlas.alg.n();
    let cones: Vec<RatCone> = atlas.vertices.iter().map(|v| RatCone::from_rays(n, &v.gvecs)).collect();
    GenFan::from_cones_with_faces(n, &cones)
}

/// The presilting V with θ in its open cone, as (vertex, g-vectors of V).
pub fn cone_locate(atlas: &SiltingAtlas, theta: &[Q]) -> Option<(usize, Vec<Vec<i64>>)> {
    for (i, v) in atlas.vertices.iter().enumerate() {
        let c = atlas.coefficients(i, theta);
        if c.iter().all(|x| !x.is_negative()) {
            let mut gs: Vec<Vec<i64>> =
                c.iter().zip(&v.gvecs).filter(|(x, _)| x.is_positive()).map(|(_, g)| g.clone()).collect();
            gs.sort();
            return Some((i, gs));
        }
    }
    None
}

/// Vertex containing V whose SMC parts off V are all modules in degree 0.
pub fn bongartz_vertex(atlas: &SiltingAtlas, v: &[Vec<i64>]) -> Option<usize> {
    atlas.vertices.iter().position(|x| {
        v.iter().all(|g| x.gvecs.contains(g))
            && x.gvecs.iter().zip(&x.smc).all(|(g, p)| v.contains(g) || p.plus)
    })
}

/// Semistable data of M at θ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorsionTriple {
    /// torsion part for (T_θ, F̄_θ)
    pub t: Submodule,
    /// torsion part for (T̄_θ, F_θ); w = tbar / t
    pub tbar: Submodule,
    /// dimension vectors of the simple objects of W_θ occurring in w, sorted
    pub supp: Vec<Vec<i64>>,
}

impl TorsionTriple {
    pub fn dims(&self, m: &AModule) -> (usize, usize, usize) {
        (self.t.dim(), self.tbar.dim() - self.t.dim(), m.dim() - self.tbar.dim())
    }

    pub fn t_module(&self, m: &AModule) -> AModule {
        m.sub_module(&self.t).0
    }

    pub fn f_module(&self, m: &AModule) -> AModule {
        m.quotient_module(&self.tbar).0
    }

    pub fn w_dimvec(&self) -> Vec<i64> {
        self.tbar.dimvec().iter().zip(self.t.dimvec()).map(|(a, b)| (*a - b) as i64).collect()
    }
}

pub fn torsion_triple(atlas: &SiltingAtlas, theta: &[Q], m: &AModule) -> Res<TorsionTriple> {
    let (_, v) = cone_locate(atlas, theta).ok_or(SiltError::NotLocated)?;
    triple_at(atlas, &v, m)
}

/// Triple for θ in the open cone of the presilting with g-vectors `v`.
pub fn triple_at(atlas: &SiltingAtlas, v: &[Vec<i64>], m: &AModule) -> Res<TorsionTriple> {
    let t = repmod::trace(&atlas.h0_of(v), m)?;
    let tbar = repmod::reject(m, &atlas.nu_of(v))?;
    let w: Vec<i64> = tbar.dimvec().iter().zip(t.dimvec()).map(|(a, b)| (*a - b) as i64).collect();
    let mut supp = Vec::new();
    if w.iter().any(|x| *x != 0) {
        let b = bongartz_vertex(atlas, v).ok_or(SiltError::NotLocated)?;
        let vert = &atlas.vertices[b];
        let simples: Vec<Vec<i64>> = vert
            .gvecs
            .iter()
            .zip(&vert.smc)
            .filter(|(g, _)| !v.contains(g))
            .map(|(_, p)| p.module.dimvec())
            .collect();
        // [w] = Σ c_j [X_j]
        let n = w.len();
        let mut mat = RatMatrix::zeros(n, simples.len());
        for (j, s) in simples.iter().enumerate() {
            for (i, x) in s.iter().enumerate() {
                mat.set(i, j, q(*x));
            }
        }
        let rhs: Vec<Q> = w.iter().map(|x| q(*x)).collect();
        let (c, _) = solve(&mat, &rhs).ok().flatten().ok_or(SiltError::NegativeMultiplicity)?;
        for (cj, s) in c.iter().zip(&simples) {
            if cj.is_negative() || !cj.is_integer() {
                return Err(SiltError::NegativeMultiplicity);
            }
            if cj.is_positive() {
                supp.push(s.clone());
            }
        }
        supp.sort();
    }
    Ok(TorsionTriple { t, tbar, supp })
}

static THREADS: AtomicUsize = AtomicUsize::new(1);

/// Worker threads for per-cone evaluations.
pub fn set_threads(k: usize) {
    THREADS.store(k.max(1), AtomicOrdering::Relaxed);
}

fn per_cone<T: Send>(cones: &[RatCone], f: impl Fn(&RatCone) -> Res<T> + Sync) -> Res<Vec<T>> {
    let k = THREADS.load(AtomicOrdering::Relaxed);
    if k <= 1 || cones.len() < 2 {
        return cones.iter().map(&f).collect();
    }
    let chunk = cones.len().div_ceil(k);
    let f = &f;
    let parts: Vec<Res<Vec<T>>> = std::thread::scope(|scope| {
        let handles: Vec<_> =
            cones.chunks(chunk).map(|part| scope.spawn(move || part.iter().map(f).collect::<Res<Vec<T>>>())).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut out = Vec::with_capacity(cones.len());
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// One class of the M-TF fan: the closure of an equivalence class.
#[derive(Clone, Debug)]
pub struct MtfClass {
    pub cone: RatCone,
    pub triple: TorsionTriple,
    /// g-fan cones whose relative interiors make up the class
    pub pieces: Vec<RatCone>,
}

#[derive(Clone, Debug)]
pub struct MtfFan {
    pub classes: Vec<MtfClass>,
    pub fan: GenFan,
    pub check: FanCheck,
}

/// Group the g-fan cones by torsion data at a relative interior point.
pub fn mtf_fan(atlas: &SiltingAtlas, m: &AModule) -> Res<MtfFan> {
    mtf_fan_on(atlas, &gfan(atlas), m)
}

pub fn mtf_fan_on(atlas: &SiltingAtlas, g: &GenFan, m: &AModule) -> Res<MtfFan> {
    if !atlas.complete {
        return Err(SiltError::IncompleteAtlas);
    }
    let n = atlas.alg.n();
    let triples = per_cone(g.cones(), |c| torsion_triple(atlas, &c.relative_interior_point(), m))?;
    let mut groups: Vec<(TorsionTriple, Vec<RatCone>)> = Vec::new();
    for (c, tt) in g.cones().iter().zip(triples) {
        match groups.iter_mut().find(|(t, _)| *t == tt) {
            Some((_, v)) => v.push(c.clone()),
            None => groups.push((tt, vec![c.clone()])),
        }
    }
    let mut classes = Vec::new();
    for (triple, pieces) in groups {
        let gens: Vec<Vec<Q>> = pieces.iter().flat_map(|p| p.rays_q()).collect();
        let lin: Vec<Vec<Q>> = pieces.iter().flat_map(|p| p.lineality().basis().to_vec()).collect();
        let hull = RatCone::from_generators(n, &gens, &lin);
        if !tiles(&hull, &pieces) {
            return Err(SiltError::NonConvexClass);
        }
        classes.push(MtfClass { cone: hull, triple, pieces });
    }
    classes.sort_by(|a, b| a.cone.dim().cmp(&b.cone.dim()).then(a.cone.cmp(&b.cone)));
    let fan = GenFan::new(n, classes.iter().map(|c| c.cone.clone()).collect());
    let check = fan.check();
    Ok(MtfFan { classes, fan, check })
}

/// Wall of M: class closures where M is θ-semistable (t = 0, tbar = M).
pub fn wall(atlas: &SiltingAtlas, m: &AModule) -> Res<Vec<RatCone>> {
    let f = mtf_fan(atlas, m)?;
    let mut out: Vec<RatCone> = f
        .classes
        .iter()
        .filter(|c| c.triple.t.dim() == 0 && c.triple.tbar.dim() == m.dim())
        .map(|c| c.cone.clone())
        .collect();
    let all = out.clone();
    out.retain(|c| !all.iter().any(|d| d.dim() > c.dim() && d.contains_cone(c)));
    Ok(out)
}

/// For every full-dimensional class σ, no facet of σ lies in both ∂⁺σ and ∂⁻σ.
pub fn no_common_facet(atlas: &SiltingAtlas, m: &AModule, f: &MtfFan) -> Res<bool> {
    let n = atlas.alg.n();
    for class in f.classes.iter().filter(|c| c.cone.dim() == n) {
        let tm = class.triple.t_module(m);
        let fm = class.triple.f_module(m);
        for facet in class.cone.facets() {
            let x = facet.relative_interior_point();
            let (_, v) = cone_locate(atlas, &x).ok_or(SiltError::NotLocated)?;
            let plus = repmod::trace(&atlas.h0_of(&v), &tm)? != tm.whole();
            let minus = repmod::reject(&fm, &atlas.nu_of(&v))?.dim() != 0;
            if plus && minus {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Serialize)]
pub struct AtlasJson {
    pub complete: bool,
    pub vertices: Vec<VertexJson>,
    pub arrows: Vec<ArrowJson>,
}

#[derive(Serialize)]
pub struct VertexJson {
    pub gvectors: Vec<Vec<i64>>,
    pub smc: Vec<Vec<i64>>,
}

#[derive(Serialize)]
pub struct ArrowJson {
    pub src: usize,
    pub dst: usize,
    pub index: usize,
    pub label: Vec<i64>,
}

pub fn atlas_json(atlas: &SiltingAtlas) -> AtlasJson {
    AtlasJson {
        complete: atlas.complete,
        vertices: atlas
            .vertices
            .iter()
            .map(|v| VertexJson { gvectors: v.gvecs.clone(), smc: v.smc.iter().map(|p| p.signed_dimvec()).collect() })
            .collect(),
        arrows: atlas
            .arrows
            .iter()
            .map(|a| ArrowJson { src: a.src, dst: a.dst, index: a.src_index, label: a.label.dimvec() })
            .collect(),
    }
}

fn fmt_vec(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Exchange quiver in DOT with dimension-vector labels.
pub fn atlas_dot(atlas: &SiltingAtlas) -> String {
    let mut s = String::from("digraph exchange {\n");
    for (i, v) in atlas.vertices.iter().enumerate() {
        let label = v.gvecs.iter().map(|g| format!("({})", fmt_vec(g))).collect::<Vec<_>>().join(" ");
        s.push_str(&format!("  v{i} [label=\"{label}\"];\n"));
    }
    for a in &atlas.arrows {
        s.push_str(&format!("  v{} -> v{} [label=\"{}\"];\n", a.src, a.dst, fmt_vec(&a.label.dimvec())));
    }
    s.push_str("}\n");
    s
}

/// Index of the vertex that is the stalk complex A.
pub fn regular_vertex(atlas: &SiltingAtlas) -> Option<usize> {
    let n = atlas.alg.n();
    let gs: Vec<Vec<i64>> = (0..n).map(|k| (0..n).map(|i| i64::from(i == k)).collect()).collect();
    atlas.find(&gs)
}

/// θ as a rational vector from integers.
pub fn theta(v: &[i64]) -> Vec<Q> {
    v.iter().map(|x| q(*x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{from_quiver, Algebra, Quiver};
    use crate::repmod::share;

    fn an(n: usize) -> AlgRef {
        share(from_quiver(&Quiver::linear(n), 16).unwrap())
    }

    #[test]
    fn pentagon() {
        let a = an(2);
        let atlas = enumerate(&a, 100).unwrap();
        assert!(atlas.complete);
        assert_eq!(atlas.len(), 5);
        assert_eq!(atlas.arrows.len(), 5);
        // path from A to A[1] via left mutations, reading labels
        let start = regular_vertex(&atlas).unwrap();
        let mut paths: Vec<Vec<Vec<i64>>> = Vec::new();
        for a0 in atlas.arrows.iter().filter(|x| x.src == start) {
            let mut labels = vec![a0.label.dimvec()];
            let mut cur = a0.dst;
            while let Some(next) = atlas.arrows.iter().find(|x| x.src == cur) {
                labels.push(next.label.dimvec());
                cur = next.dst;
            }
            paths.push(labels);
        }
        paths.sort();
        assert_eq!(paths, vec![vec![vec![0, 1], vec![1, 1], vec![1, 0]], vec![vec![1, 0], vec![0, 1]]]);
        let f = gfan(&atlas);
        assert_eq!(f.check(), FanCheck { is_fan: true, is_complete: true });
    }

    #[test]
    fn semisimple_square() {
        let table = vec![
            vec![vec![q(1), q(0)], vec![q(0), q(0)]],
            vec![vec![q(0), q(0)], vec![q(0), q(1)]],
        ];
        let prod = Algebra::from_table(vec!["x".into(), "y".into()], table, vec![q(1), q(1)]).unwrap();
        let idems = prod.primitive_idempotents().unwrap();
        let (b, _) = prod.peirce_rebase(&idems, vec!["1".into(), "2".into()]).unwrap();
        let atlas = enumerate(&share(b), 100).unwrap();
        assert_eq!(atlas.len(), 4);
        let one = share(from_quiver(&Quiver { vertices: vec!["1".into()], arrows: vec![], relations: vec![] }, 4).unwrap());
        let atlas = enumerate(&one, 100).unwrap();
        assert_eq!(atlas.len(), 2);
        assert_eq!(gfan(&atlas).len(), 3);
    }

    #[test]
    fn a4_atlas() {
        let a = an(4);
        let atlas = enumerate(&a, 1000).unwrap();
        assert!(atlas.complete);
        assert_eq!(atlas.len(), 42);
        for v in 0..atlas.len() {
            let incident = atlas.arrows.iter().filter(|x| x.src == v || x.dst == v).count();
            assert_eq!(incident, 4);
        }
        let loc = cone_locate(&atlas, &theta(&[1, 0, 1, -1])).unwrap().1;
        assert_eq!(loc, vec![vec![0, 0, 1, -1], vec![1, 0, 0, 0]]);
        assert_eq!(cone_locate(&atlas, &theta(&[1, 0, 0, 0])).unwrap().1, vec![vec![1, 0, 0, 0]]);
    }

    #[test]
    fn triples_and_mtf() {
        let a = an(2);
        let atlas = enumerate(&a, 100).unwrap();
        let p1 = AModule::projective(&a, 0);
        let l2 = AModule::simple(&a, 1);
        let xi = theta(&[1, -1]);
        let tp = torsion_triple(&atlas, &xi, &p1).unwrap();
        assert_eq!(tp.dims(&p1).2, 0);
        assert_eq!(tp.dims(&p1).0, 0);
        let tl = torsion_triple(&atlas, &xi, &l2).unwrap();
        assert_eq!(tl.f_module(&l2).dimvec(), vec![0, 1]);
        let inside = torsion_triple(&atlas, &theta(&[1, 1]), &p1).unwrap();
        assert_eq!(inside.dims(&p1), (2, 0, 0));
        // M-TF fans over K(1→2)
        let f = mtf_fan(&atlas, &l2).unwrap();
        let maxes: Vec<&RatCone> = f.fan.maximal();
        assert_eq!(maxes.len(), 2);
        assert!(f.check.is_complete);
        let f = mtf_fan(&atlas, &p1).unwrap();
        assert_eq!(f.fan.maximal().len(), 3);
        let mut rays: Vec<Vec<i64>> =
            f.fan.cones().iter().filter(|c| c.dim() == 1).map(|c| crate::qlinalg::to_i64_vec(&c.rays()[0])).collect();
        rays.sort();
        assert_eq!(rays, vec![vec![-1, 0], vec![0, 1], vec![1, -1]]);
        assert!(no_common_facet(&atlas, &p1, &f).unwrap());
        let zero = AModule::zero(&a);
        assert_eq!(mtf_fan(&atlas, &zero).unwrap().fan.maximal().len(), 1);
        let w = wall(&atlas, &p1).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(crate::qlinalg::to_i64_vec(&w[0].rays()[0]), vec![1, -1]);
    }
}
