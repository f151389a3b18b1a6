//! Fixtures and property checks shared by the property suite and the acceptance harness.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use siltgeo::algebra::{from_quiver, AlgRef, Arrow, Quiver};
use siltgeo::cones::RatCone;
use siltgeo::cpx2::{self, TwoTerm};
use siltgeo::interval::IntervalContext;
use siltgeo::qlinalg::{dot, q, qvec, solve_left, to_q, vec_add, vec_scale, vec_sub, Q, RatMatrix};
use siltgeo::repmod::{self, share, AModule};
use siltgeo::siltfan::{self, SiltingAtlas};
use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

pub const CAP: usize = 10000;

pub struct Fixture {
    pub name: &'static str,
    pub alg: AlgRef,
    pub atlas: SiltingAtlas,
    /// every basic presilting, as sorted g-vector lists (the empty one included)
    pub presilting: Vec<Vec<Vec<i64>>>,
    contexts: Mutex<HashMap<Vec<Vec<i64>>, Arc<IntervalContext>>>,
}

fn cyclic_two() -> Quiver {
    Quiver {
        vertices: vec!["1".into(), "2".into()],
        arrows: vec![
            Arrow { name: "a".into(), from: "1".into(), to: "2".into() },
            Arrow { name: "b".into(), from: "2".into(), to: "1".into() },
        ],
        relations: vec!["a*b".into(), "b*a".into()],
    }
}

fn build(name: &'static str, quiver: Quiver) -> Fixture {
    let alg = share(from_quiver(&quiver, 16).expect("algebra"));
    let atlas = siltfan::enumerate(&alg, CAP).expect("enumeration");
    assert!(atlas.complete, "{name}: atlas incomplete");
    let mut faces = BTreeSet::new();
    for v in &atlas.vertices {
        let k = v.gvecs.len();
        for mask in 0..(1u32 << k) {
            let mut gs: Vec<Vec<i64>> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| v.gvecs[b].clone()).collect();
            gs.sort();
            faces.insert(gs);
        }
    }
    Fixture { name, alg, atlas, presilting: faces.into_iter().collect(), contexts: Mutex::new(HashMap::new()) }
}

/// A₂, A₃, A₄, A₃ with a1·a2 = 0, and the 2-cycle with radical square zero.
pub fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        vec![
            build("A2", Quiver::linear(2)),
            build("A3", Quiver::linear(3)),
            build("A4", Quiver::linear(4)),
            build("A3/a1a2", Quiver::linear(3).with_relations(&["a1*a2"])),
            build("cycle2/rad2", cyclic_two()),
        ]
    })
}

impl Fixture {
    pub fn complexes(&self, gs: &[Vec<i64>]) -> Vec<TwoTerm> {
        gs.iter().map(|g| self.atlas.indecs[g].cpx.clone()).collect()
    }

    pub fn context(&self, gs: &[Vec<i64>]) -> Arc<IntervalContext> {
        if let Some(c) = self.contexts.lock().unwrap().get(gs) {
            return c.clone();
        }
        let ctx = Arc::new(IntervalContext::new(&self.alg, &self.complexes(gs), CAP).expect("interval context"));
        self.contexts.lock().unwrap().insert(gs.to_vec(), ctx.clone());
        ctx
    }

    pub fn pick_presilting(&self, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
        self.presilting[rng.gen_range(0..self.presilting.len())].clone()
    }

    pub fn n(&self) -> usize {
        self.alg.n()
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rand_q(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Q {
    Q::new(rng.gen_range(lo..=hi).into(), rng.gen_range(1..=5i64).into())
}

/// Random point of a cone: nonnegative combination of rays plus a lineality vector.
pub fn random_point(cone: &RatCone, rng: &mut ChaCha8Rng, integral: bool) -> Vec<Q> {
    let mut p = vec![q(0); cone.ambient()];
    for r in cone.rays() {
        let c = if integral { q(rng.gen_range(0..=3)) } else { rand_q(rng, 0, 6) };
        p = vec_add(&p, &vec_scale(&to_q(r), &c));
    }
    for b in cone.lineality().integer_basis() {
        let c = if integral { q(rng.gen_range(-3..=3)) } else { rand_q(rng, -6, 6) };
        p = vec_add(&p, &vec_scale(&to_q(&b), &c));
    }
    p
}

/// Random module: a quotient of a sum of two projectives by a random cyclic submodule.
pub fn random_module(alg: &AlgRef, rng: &mut ChaCha8Rng) -> AModule {
    loop {
        let n = alg.n();
        let a = AModule::projective(alg, rng.gen_range(0..n));
        let b = AModule::projective(alg, rng.gen_range(0..n));
        let sum = AModule::direct_sum(alg, &[&a, &b]);
        let v: Vec<Q> = (0..sum.dim()).map(|_| q(rng.gen_range(-2..=2))).collect();
        let sub = sum.generated_by(&[v]);
        let m = sum.quotient_module(&sub).0;
        if !m.is_zero() {
            return m;
        }
    }
}

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Each facet of D(U) lies in exactly one boundary piece ∂_i^±, detected by torsion data
/// at an interior point, and that piece agrees with the stored label.
pub fn facet_partition(fx: &Fixture, seed: u64) -> Check {
    let mut r = rng(seed);
    let gs = fx.pick_presilting(&mut r);
    let ctx = fx.context(&gs);
    for f in &ctx.facets {
        let theta = random_point(&f.face, &mut r, false);
        let theta = if f.face.contains_interior(&theta) { theta } else { f.face.relative_interior_point() };
        let mut hits = Vec::new();
        for i in 0..ctx.m() {
            let flags = ctx.link_and_partial(&theta, i).map_err(|e| e.to_string())?;
            if flags.plus {
                hits.push((i, true));
            }
            if flags.minus {
                hits.push((i, false));
            }
        }
        ensure(hits == vec![(f.i, f.plus)], || format!("{} U={gs:?}: facet pieces {hits:?}, label ({}, {})", fx.name, f.i, f.plus))?;
    }
    Ok(())
}

/// ⟨[U_i'], L_F⟩ = ε_F δ_{i,i'} d_{U_i}.
pub fn pairing_identity(fx: &Fixture, seed: u64) -> Check {
    let mut r = rng(seed);
    let gs = fx.pick_presilting(&mut r);
    let ctx = fx.context(&gs);
    for f in &ctx.facets {
        let eps = if f.plus { q(1) } else { q(-1) };
        for (ip, ui) in ctx.red.u().iter().enumerate() {
            let got = repmod::euler_pair(&qvec(&ui.gvector()), &f.label).map_err(|e| e.to_string())?;
            let d = cpx2::end_top_dim(ui).map_err(|e| e.to_string())?;
            let want = if ip == f.i { eps.clone() * q(d as i64) } else { q(0) };
            ensure(got == want, || format!("{} U={gs:?}: pairing {got} != {want}", fx.name))?;
        }
    }
    Ok(())
}

/// λ + λ′ = θ and the idempotence relations at a random rational point of D(U).
pub fn lambda_axioms(fx: &Fixture, seed: u64) -> Check {
    let mut r = rng(seed);
    let gs = fx.pick_presilting(&mut r);
    let ctx = fx.context(&gs);
    let theta = random_point(&ctx.dcu, &mut r, false);
    let e = |x: siltgeo::interval::IntervalError| x.to_string();
    let (lam, lamp) = ctx.lambda(&theta).map_err(e)?;
    let zero = vec![q(0); fx.n()];
    ensure(vec_add(&lam, &lamp) == theta, || "λ + λ′ ≠ θ".into())?;
    let (ll, llp) = ctx.lambda(&lam).map_err(e)?;
    ensure(ll == lam && llp == zero, || format!("{} U={gs:?}: λ∘λ ≠ λ or λ′∘λ ≠ 0", fx.name))?;
    let (lpl, lplp) = ctx.lambda(&lamp).map_err(e)?;
    ensure(lpl == zero && lplp == lamp, || format!("{} U={gs:?}: λ∘λ′ ≠ 0 or λ′∘λ′ ≠ λ′", fx.name))?;
    // λ′(θ) lies in D(U) with no [U] component left
    ensure(ctx.closed_member(&lamp), || "λ′(θ) left D(U)".into())
}

/// λ coefficients are nonnegative integers at integer points of D(U).
pub fn lambda_integrality(fx: &Fixture, seed: u64) -> Check {
    let mut r = rng(seed);
    let gs = fx.pick_presilting(&mut r);
    let ctx = fx.context(&gs);
    let theta = random_point(&ctx.dcu, &mut r, true);
    let a = ctx.lambda_coefficients(&theta).map_err(|e| e.to_string())?;
    ensure(a.iter().all(|x| x.is_integer() && *x >= q(0)), || format!("{} U={gs:?} θ={theta:?}: a={a:?}", fx.name))
}

/// a_{j,i} d_{U_i} = b_{j,i} d_{U_j}, with b read from K₀: [Y_i] − [X_i] = Σ_j b_{j,i}[X_j].
pub fn dual_basis_mutation(fx: &Fixture, gs: &[Vec<i64>]) -> Check {
    let ctx = fx.context(gs);
    let red = &ctx.red;
    let (m, n) = (red.m, red.n());
    if m == n || m == 0 {
        return Ok(());
    }
    let xs: Vec<Vec<Q>> = (m..n).map(|j| qvec(&red.x[j].signed_dimvec())).collect();
    let xmat = RatMatrix::from_rows(&xs, n);
    for i in 0..m {
        let w = vec_sub(&qvec(&red.y[i].signed_dimvec()), &qvec(&red.x[i].signed_dimvec()));
        let b = solve_left(&xmat, &w).ok_or_else(|| format!("{} U={gs:?}: [W_{i}] not in span of X", fx.name))?;
        let di = cpx2::end_top_dim(&red.u()[i]).map_err(|e| e.to_string())?;
        for (k, bk) in b.iter().enumerate() {
            let j = m + k;
            let dj = cpx2::end_top_dim(&red.s()[j]).map_err(|e| e.to_string())?;
            let lhs = q((red.comps.a[k][i] * di) as i64);
            let rhs = bk.clone() * q(dj as i64);
            ensure(lhs == rhs, || format!("{} U={gs:?}: a·d = {lhs}, b·d = {rhs} at (j={j}, i={i})", fx.name))?;
            ensure(*bk == q(red.b_coeff(j, i) as i64), || format!("{} U={gs:?}: b from K₀ {bk} vs M_i {}", fx.name, red.b_coeff(j, i)))?;
        }
    }
    Ok(())
}

/// ⟨[S_i], X_j⟩ = δ_{ij} d for the SMC X of every silting S.
pub fn duality(fx: &Fixture, v: usize) -> Check {
    let vx = &fx.atlas.vertices[v];
    let s = fx.atlas.summands(v);
    for (i, si) in s.iter().enumerate() {
        let d = cpx2::end_top_dim(si).map_err(|e| e.to_string())?;
        for (j, xj) in vx.smc.iter().enumerate() {
            let got = dot(&qvec(&vx.gvecs[i]), &qvec(&xj.signed_dimvec()));
            let want = if i == j { q(d as i64) } else { q(0) };
            ensure(got == want, || format!("{} vertex {v}: ⟨S_{i}, X_{j}⟩ = {got}", fx.name))?;
        }
    }
    Ok(())
}

/// M-TF fan axioms, face closure, pointwise triple constancy, and no common facet of ∂⁺σ, ∂⁻σ.
pub fn mtf_properties(fx: &Fixture, seed: u64) -> Check {
    let mut r = rng(seed);
    let m = random_module(&fx.alg, &mut r);
    let e = |x: siltfan::SiltError| x.to_string();
    let f = siltfan::mtf_fan(&fx.atlas, &m).map_err(e)?;
    ensure(f.check.is_fan && f.check.is_complete, || format!("{}: M-TF fan check {:?}", fx.name, f.check))?;
    for c in f.fan.cones() {
        for face in c.faces() {
            ensure(f.fan.cones().contains(&face), || format!("{}: face of a cone missing from the fan", fx.name))?;
        }
    }
    for class in &f.classes {
        for _ in 0..2 {
            let theta = random_point(&class.cone, &mut r, false);
            if !class.cone.contains_interior(&theta) {
                continue;
            }
            let t = siltfan::torsion_triple(&fx.atlas, &theta, &m).map_err(e)?;
            ensure(t == class.triple, || format!("{}: triple not constant on a class", fx.name))?;
        }
    }
    ensure(siltfan::no_common_facet(&fx.atlas, &m, &f).map_err(e)?, || format!("{}: ∂⁺σ and ∂⁻σ share a facet", fx.name))
}

/// U ⊕ V presilting ⇔ C(V) ⊆ D(U), and U a summand of V ⇔ C°(V) ⊆ D°(U).
pub fn inclusion_equivalences(fx: &Fixture, seed: u64) -> Check {
    let mut r = rng(seed);
    let ug = fx.pick_presilting(&mut r);
    let vg = fx.pick_presilting(&mut r);
    let ctx = fx.context(&ug);
    let n = fx.n();
    let mut both = fx.complexes(&ug);
    both.extend(fx.complexes(&vg));
    let presilting = cpx2::is_presilting(&cpx2::sum_of(&fx.alg, &both)).map_err(|e| e.to_string())?;
    let cv = RatCone::from_rays(n, &vg);
    let inside = ctx.dcu.contains_cone(&cv);
    ensure(presilting == inside, || format!("{} U={ug:?} V={vg:?}: presilting {presilting}, C(V) ⊆ D(U) {inside}", fx.name))?;
    let summand = ug.iter().all(|g| vg.contains(g));
    let open_in = ctx.dcu_membership(&cv.relative_interior_point(), true).map_err(|e| e.to_string())?;
    ensure(summand == open_in, || format!("{} U={ug:?} V={vg:?}: summand {summand}, C°(V) ⊆ D°(U) {open_in}", fx.name))
}

pub const CASES: u32 = 200;

/// Run a seeded check for `CASES` proptest cases on every fixture.
pub fn run_property(name: &str, check: fn(&Fixture, u64) -> Check) -> Check {
    use proptest::test_runner::{Config, TestCaseError, TestRunner};
    for fx in fixtures() {
        let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
        runner
            .run(&proptest::num::u64::ANY, |seed| check(fx, seed).map_err(TestCaseError::fail))
            .map_err(|e| format!("{name} on {}: {e}", fx.name))?;
    }
    Ok(())
}

/// Deterministic sweep of a.d = b.d over every enumerated presilting.
pub fn sweep_dual_basis_mutation() -> Check {
    for fx in fixtures() {
        for gs in &fx.presilting {
            dual_basis_mutation(fx, gs)?;
        }
    }
    Ok(())
}

pub fn sweep_duality() -> Check {
    for fx in fixtures() {
        for v in 0..fx.atlas.len() {
            duality(fx, v)?;
        }
    }
    Ok(())
}

/// Ten random modules per algebra.
pub fn sweep_mtf() -> Check {
    for fx in fixtures() {
        for seed in 0..10u64 {
            mtf_properties(fx, 0x5eed_0000 + seed)?;
        }
    }
    Ok(())
}
