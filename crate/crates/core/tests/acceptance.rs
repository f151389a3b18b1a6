//! Acceptance suite: prints one PASS/FAIL line per criterion and exits nonzero on any failure.

mod common;

use common::*;
use rand::Rng;
use siltgeo::algebra::Quiver;
use siltgeo::cli;
use siltgeo::cones::RatCone;
use siltgeo::cpx2;
use siltgeo::interval::IntervalContext;
use siltgeo::qlinalg::{q, qvec, to_i64_vec, Q};
use siltgeo::repmod::{self, AModule};
use siltgeo::siltfan;
use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn a4_context() -> IntervalContext {
    let alg = cli::algebra_from_toml(cli::A4_TOML, 16).unwrap();
    let u = cpx2::complexes_from_toml(&alg, cli::A4_U_TOML).unwrap();
    IntervalContext::new(&alg, &u, CAP).unwrap()
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

fn c1_pentagon() -> Check {
    let alg = cli::algebra_from_toml(&toml_for(Quiver::linear(2)), 16).map_err(|e| e.to_string())?;
    let atlas = siltfan::enumerate(&alg, CAP).map_err(|e| e.to_string())?;
    ensure(atlas.complete && atlas.len() == 5, || format!("{} siltings", atlas.len()))?;
    ensure(atlas.arrows.len() == 5, || format!("{} arrows", atlas.arrows.len()))?;
    let paths = cli::label_paths(&atlas);
    let want = vec![vec![vec![0, 1], vec![1, 1], vec![1, 0]], vec![vec![1, 0], vec![0, 1]]];
    ensure(paths == want, || format!("label paths {paths:?}"))
}

fn toml_for(quiver: Quiver) -> String {
    #[derive(serde::Serialize)]
    struct File {
        quiver: Quiver,
    }
    toml::to_string(&File { quiver }).unwrap()
}

fn c2_reduction(ctx: &IntervalContext) -> Check {
    let red = &ctx.red;
    ensure(red.b.dim() == 3, || format!("dim B = {}", red.b.dim()))?;
    let quiver = red.b_quiver().ok_or("B is not certified as a path algebra")?;
    let arrows: Vec<(String, String)> = quiver.arrows.iter().map(|a| (a.from.clone(), a.to.clone())).collect();
    ensure(quiver.vertices.len() == 2 && arrows == vec![("1".into(), "2".into())], || format!("B quiver {arrows:?}"))?;
    let l2 = AModule::simple(&red.b, 1);
    let p1 = AModule::projective(&red.b, 0);
    ensure(red.m_module(0).dimvec() == vec![0, 1], || "dim M_1".into())?;
    ensure(red.m_module(1).dimvec() == vec![1, 1], || "dim M_2".into())?;
    let iso1 = repmod::is_isomorphic(red.m_module(0), &l2).map_err(|e| e.to_string())?;
    let iso2 = repmod::is_isomorphic(red.m_module(1), &p1).map_err(|e| e.to_string())?;
    ensure(iso1 && iso2, || format!("M_1 ≅ L(2): {iso1}, M_2 ≅ P(1): {iso2}"))
}

fn c3_smc(ctx: &IntervalContext) -> Check {
    let s: Vec<Vec<i64>> = ctx.red.x.iter().map(|p| p.signed_dimvec()).collect();
    let t: Vec<Vec<i64>> = ctx.red.y.iter().map(|p| p.signed_dimvec()).collect();
    ensure(s == vec![vec![0, 0, 0, -1], vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 1]], || format!("SH(S) {s:?}"))?;
    ensure(t == vec![vec![0, 0, 1, 0], vec![1, 1, 1, 1], vec![0, -1, 0, 0], vec![0, 0, -1, -1]], || format!("SH(T) {t:?}"))
}

fn c4_facets(ctx: &IntervalContext) -> Check {
    let got = sorted(ctx.facets.iter().map(|f| (f.i + 1, f.plus, f.label.dimvec())).collect::<Vec<_>>());
    let want = sorted(vec![
        (1, true, vec![0, 0, 1, 0]),
        (1, false, vec![0, 0, 0, 1]),
        (2, true, vec![1, 1, 1, 1]),
        (2, true, vec![1, 1, 0, 0]),
        (2, true, vec![1, 0, 0, 0]),
    ]);
    ensure(got == want, || format!("facets {got:?}"))?;
    ensure(ctx.dcu.facets().len() == 5, || "D(U) does not have 5 facets".into())?;
    // [P(2)], [P(3)], [P(1)]−[P(2)], [P(2)]−[P(4)], [P(3)]−[P(4)]
    let want_rays = sorted(vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![1, -1, 0, 0], vec![0, 1, 0, -1], vec![0, 0, 1, -1]]);
    let rays = sorted(ctx.dcu.rays().iter().map(|r| to_i64_vec(r)).collect::<Vec<_>>());
    ensure(rays == want_rays && ctx.dcu.is_pointed(), || format!("rays {rays:?}"))
}

fn c5_census(ctx: &IntervalContext) -> Check {
    let got: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = ctx
        .face_census()
        .into_iter()
        .map(|(set, c)| (set.iter().map(|i| i + 1).collect(), c.into_iter().collect()))
        .collect();
    let want: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = [
        (vec![], vec![(4, 1)]),
        (vec![1], vec![(2, 1), (3, 2)]),
        (vec![2], vec![(1, 1), (2, 3), (3, 3)]),
        (vec![1, 2], vec![(0, 1), (1, 4), (2, 4)]),
    ]
    .into_iter()
    .collect();
    ensure(got == want, || format!("census {got:?}"))?;
    // dim F = (2 − #I) + dim π(F), checked face by face
    let map = ctx.pi_map();
    for (set, faces) in ctx.faces_by_i() {
        for f in faces {
            let img = f.image(&map);
            ensure(f.dim() == 2 - set.len() + img.dim(), || format!("dimension formula fails on I = {set:?}"))?;
        }
    }
    Ok(())
}

fn c6_fans(ctx: &IntervalContext) -> Check {
    let mut fans = BTreeMap::new();
    for set in ctx.subsets() {
        let geo = ctx.sigma_i(&set).map_err(|e| e.to_string())?;
        let mtf = ctx.sigma_mi(&set).map_err(|e| e.to_string())?;
        ensure(geo == mtf, || format!("Σ_{set:?} ≠ Σ(M_{set:?})"))?;
        let check = geo.check();
        ensure(check.is_fan && check.is_complete, || format!("Σ_{set:?}: {check:?}"))?;
        fans.insert(set, geo);
    }
    ensure(fans.len() == 4, || "expected four subsets".into())?;
    let refined = fans[&vec![0]].common_refinement(&fans[&vec![1]]);
    ensure(refined == fans[&vec![0, 1]], || "Σ_{1,2} is not the common refinement".into())
}

fn c7_rho(ctx: &IntervalContext) -> Check {
    let table: [(&[i64], &[i64]); 4] = [
        (&[1, 0], &[0, 1, 0, 0]),
        (&[0, 1], &[0, 0, 1, 0]),
        (&[-1, 0], &[1, -1, 0, 0]),
        (&[1, -1], &[0, 1, 0, -1]),
    ];
    for (xi, want) in table {
        let got = ctx.rho(&qvec(xi)).map_err(|e| e.to_string())?;
        ensure(got == qvec(want), || format!("ρ({xi:?}) = {got:?}"))?;
    }
    let mut r = rng(7);
    for _ in 0..50 {
        let xi: Vec<Q> = (0..2).map(|_| Q::new(r.gen_range(-20..=20i64).into(), r.gen_range(1..=9i64).into())).collect();
        let rho = ctx.rho(&xi).map_err(|e| e.to_string())?;
        ensure(ctx.red.pi(&rho) == xi, || format!("π∘ρ({xi:?}) ≠ ξ"))?;
        ensure(ctx.lambda_coefficients(&rho).map_err(|e| e.to_string())?.iter().all(|a| *a == q(0)), || "ρ(ξ) off L(U)".into())?;
    }
    Ok(())
}

fn c8_properties() -> Check {
    run_property("facet partition", facet_partition)?;
    run_property("pairing identity", pairing_identity)?;
    run_property("lambda axioms", lambda_axioms)?;
    run_property("lambda integrality", lambda_integrality)?;
    sweep_dual_basis_mutation()?;
    sweep_duality()?;
    sweep_mtf()?;
    run_property("D(U) inclusion", inclusion_equivalences)?;
    // every D(U) is a genuine cone containing C(U)
    for fx in fixtures() {
        for gs in &fx.presilting {
            let ctx = fx.context(gs);
            ensure(ctx.dcu.contains_cone(&RatCone::from_rays(fx.n(), gs)), || format!("{} C(U) ⊄ D(U)", fx.name))?;
        }
    }
    Ok(())
}

fn c9_determinism() -> Check {
    let a = cli::verify_paper(cli::GOLDEN_TOML, CAP).map_err(|e| e.to_string())?;
    let b = cli::verify_paper(cli::GOLDEN_TOML, CAP).map_err(|e| e.to_string())?;
    ensure(a.failures == 0, || a.text())?;
    ensure(a.text().as_bytes() == b.text().as_bytes(), || "reports differ".into())
}

fn run(label: &str, f: impl FnOnce() -> Check) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    match outcome {
        Ok(()) => {
            println!("criterion {label}: PASS");
            true
        }
        Err(e) => {
            println!("criterion {label}: FAIL ({e})");
            false
        }
    }
}

fn main() {
    let ctx = a4_context();
    let results = [
        run("1 A2 pentagon (exact)", c1_pentagon),
        run("2 A4 reduction (exact)", || c2_reduction(&ctx)),
        run("3 A4 simple-minded collections (exact)", || c3_smc(&ctx)),
        run("4 A4 facet table and rays (exact set equality)", || c4_facets(&ctx)),
        run("5 A4 face census and dimension formula (exact)", || c5_census(&ctx)),
        run("6 A4 fans Sigma_I = Sigma(M_I) (exact cone-set equality)", || c6_fans(&ctx)),
        run("7 A4 rho table and pi∘rho = id on 50 rational points (exact)", || c7_rho(&ctx)),
        run("8 property suite, 200 cases per property and algebra (exact)", c8_properties),
        run("9 verify-paper determinism (byte-identical)", c9_determinism),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
