//! Rational polyhedral cones in both representations, face lattices, and
//! finite generalized fans.

use crate::qlinalg::{dot, dot_int, is_zero_vec, kernel, primitive, to_i64_vec, to_q, Q, RatMatrix, Subspace};
use num::{BigInt, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::{BTreeSet, HashSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConeError {
    #[error("cone fails the preimage saturation criterion")]
    SaturationViolated,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cone is empty")]
    Empty,
}

fn rank_of(rows: &[Vec<Q>], ambient: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    Subspace::span(rows, ambient).dim()
}

fn scaled(v: &[Q]) -> Vec<Q> {
    to_q(&primitive(v))
}

/// Lineality space and extreme rays (in the orthogonal complement of the
/// lineality space) of `{x : eqs·x = 0, ineqs·x ≥ 0}`, by double description.
pub fn extreme_rays(ambient: usize, ineqs: &[Vec<Q>], eqs: &[Vec<Q>]) -> (Subspace, Vec<Vec<BigInt>>) {
    let mut all: Vec<Vec<Q>> = eqs.to_vec();
    all.extend(ineqs.iter().cloned());
    let lin = if all.is_empty() { Subspace::full(ambient) } else { kernel(&RatMatrix::from_rows(&all, ambient)) };
    let mut wrows: Vec<Vec<Q>> = eqs.to_vec();
    wrows.extend(lin.basis().iter().cloned());
    let w = if wrows.is_empty() { Subspace::full(ambient) } else { kernel(&RatMatrix::from_rows(&wrows, ambient)) };
    let k = w.dim();
    if k == 0 {
        return (lin, Vec::new());
    }
    // inequalities in W coordinates
    let rows: Vec<Vec<Q>> = ineqs
        .iter()
        .map(|a| w.basis().iter().map(|b| dot(a, b)).collect::<Vec<Q>>())
        .filter(|r| !is_zero_vec(r))
        .map(|r| scaled(&r))
        .collect();
    // initial simplicial cone from k independent rows
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<Q>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut trial = basis.clone();
        trial.push(r.clone());
        if rank_of(&trial, k) == trial.len() {
            basis = trial;
            chosen.push(i);
            if chosen.len() == k {
                break;
            }
        }
    }
    debug_assert_eq!(chosen.len(), k);
    let inv = RatMatrix::from_rows(&basis, k).inverse().expect("independent rows");
    let mut rays: Vec<(Vec<Q>, BTreeSet<usize>)> = (0..k)
        .map(|j| {
            let tight: BTreeSet<usize> = chosen.iter().enumerate().filter(|(jj, _)| *jj != j).map(|(_, &i)| i).collect();
            (scaled(&inv.col(j)), tight)
        })
        .collect();
    for (i, a) in rows.iter().enumerate() {
        if chosen.contains(&i) {
            continue;
        }
        let vals: Vec<Q> = rays.iter().map(|(r, _)| dot(a, r)).collect();
        let mut next: Vec<(Vec<Q>, BTreeSet<usize>)> = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (idx, v) in vals.iter().enumerate() {
            if v.is_positive() {
                pos.push(idx);
                next.push(rays[idx].clone());
            } else if v.is_zero() {
                let mut r = rays[idx].clone();
                r.1.insert(i);
                next.push(r);
            } else {
                neg.push(idx);
            }
        }
        if k >= 2 {
            for &p in &pos {
                for &n in &neg {
                    let common: BTreeSet<usize> = rays[p].1.intersection(&rays[n].1).cloned().collect();
                    if common.len() < k - 2 {
                        continue;
                    }
                    let crows: Vec<Vec<Q>> = common.iter().map(|&c| rows[c].clone()).collect();
                    if rank_of(&crows, k) != k - 2 {
                        continue;
                    }
                    let vp = &vals[p];
                    let vn = &vals[n];
                    let r: Vec<Q> = rays[n].0.iter().zip(&rays[p].0).map(|(x, y)| x * vp - y * vn).collect();
                    let mut tight = common;
                    tight.insert(i);
                    next.push((scaled(&r), tight));
                }
            }
        }
        rays = next;
    }
    let mut out: Vec<Vec<BigInt>> = rays
        .iter()
        .map(|(c, _)| {
            let mut x = vec![Q::zero(); ambient];
            for (cj, b) in c.iter().zip(w.basis()) {
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi += cj * bi;
                }
            }
            primitive(&x)
        })
        .collect();
    out.sort();
    out.dedup();
    (lin, out)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatCone {
    ambient: usize,
    lineality: Subspace,
    span: Subspace,
    rays: Vec<Vec<BigInt>>,
    normals: Vec<Vec<BigInt>>,
}

#[derive(Serialize)]
pub struct ConeJson {
    pub rays: Vec<Vec<i64>>,
    pub normals: Vec<Vec<i64>>,
    pub lineality: Vec<Vec<i64>>,
}

impl RatCone {
    pub fn zero(ambient: usize) -> RatCone {
        RatCone {
            ambient,
            lineality: Subspace::zero(ambient),
            span: Subspace::zero(ambient),
            rays: Vec::new(),
            normals: Vec::new(),
        }
    }

    pub fn whole(ambient: usize) -> RatCone {
        RatCone::from_generators(ambient, &[], Subspace::full(ambient).basis())
    }

    /// Cone spanned by `gens` plus the linear span of `lin`.
    pub fn from_generators(ambient: usize, gens: &[Vec<Q>], lin: &[Vec<Q>]) -> RatCone {
        let mut all: Vec<Vec<Q>> = gens.iter().filter(|g| !is_zero_vec(g)).cloned().collect();
        for l in lin {
            if !is_zero_vec(l) {
                all.push(l.clone());
                all.push(l.iter().map(|x| -x).collect());
            }
        }
        if all.is_empty() {
            return RatCone::zero(ambient);
        }
        let (dual_lin, normals) = extreme_rays(ambient, &all, &[]);
        let span = dual_lin.orth();
        let nq: Vec<Vec<Q>> = normals.iter().map(|n| to_q(n)).collect();
        let (lineality, rays) = extreme_rays(ambient, &nq, dual_lin.basis());
        RatCone { ambient, lineality, span, rays, normals }
    }

    pub fn from_rays(ambient: usize, rays: &[Vec<i64>]) -> RatCone {
        let g: Vec<Vec<Q>> = rays.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect();
        RatCone::from_generators(ambient, &g, &[])
    }

    /// `{x : eqs·x = 0, ineqs·x ≥ 0}`
    pub fn from_inequalities(ambient: usize, ineqs: &[Vec<Q>], eqs: &[Vec<Q>]) -> RatCone {
        let (lin, rays) = extreme_rays(ambient, ineqs, eqs);
        let g: Vec<Vec<Q>> = rays.iter().map(|r| to_q(r)).collect();
        RatCone::from_generators(ambient, &g, lin.basis())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn lineality(&self) -> &Subspace {
        &self.lineality
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn normals(&self) -> &[Vec<BigInt>] {
        &self.normals
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.dim() == 0
    }

    /// Equations cutting out the linear span.
    pub fn equations(&self) -> Vec<Vec<Q>> {
        self.span.orth().basis().to_vec()
    }

    pub fn rays_q(&self) -> Vec<Vec<Q>> {
        self.rays.iter().map(|r| to_q(r)).collect()
    }

    pub fn normals_q(&self) -> Vec<Vec<Q>> {
        self.normals.iter().map(|r| to_q(r)).collect()
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.span.contains(x) && self.normals.iter().all(|n| !dot_int(n, x).is_negative())
    }

    pub fn contains_interior(&self, x: &[Q]) -> bool {
        self.span.contains(x) && self.normals.iter().all(|n| dot_int(n, x).is_positive())
    }

    pub fn contains_cone(&self, other: &RatCone) -> bool {
        self.lineality.contains_space(&other.lineality) && other.rays_q().iter().all(|r| self.contains(r))
    }

    /// Sum of the rays plus the sum of a lineality basis.
    pub fn relative_interior_point(&self) -> Vec<Q> {
        let mut p = vec![Q::zero(); self.ambient];
        for r in self.rays_q().iter().chain(self.lineality.basis()) {
            for (pi, ri) in p.iter_mut().zip(r) {
                *pi += ri;
            }
        }
        p
    }

    pub fn intersect(&self, other: &RatCone) -> RatCone {
        let mut ineqs = self.normals_q();
        ineqs.extend(other.normals_q());
        let mut eqs = self.equations();
        eqs.extend(other.equations());
        RatCone::from_inequalities(self.ambient, &ineqs, &eqs)
    }

    fn face_of_rays(&self, idx: &BTreeSet<usize>) -> RatCone {
        let g: Vec<Vec<Q>> = idx.iter().map(|&i| to_q(&self.rays[i])).collect();
        RatCone::from_generators(self.ambient, &g, self.lineality.basis())
    }

    /// All faces, from the minimal face up to the cone itself.
    pub fn faces(&self) -> Vec<RatCone> {
        let rq = self.rays_q();
        let facet_sets: Vec<BTreeSet<usize>> = self
            .normals
            .iter()
            .map(|n| (0..rq.len()).filter(|&i| dot_int(n, &rq[i]).is_zero()).collect())
            .collect();
        let full: BTreeSet<usize> = (0..rq.len()).collect();
        let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
        seen.insert(full.clone());
        let mut stack = vec![full];
        while let Some(s) = stack.pop() {
            for f in &facet_sets {
                let t: BTreeSet<usize> = s.intersection(f).cloned().collect();
                if seen.insert(t.clone()) {
                    stack.push(t);
                }
            }
        }
        let mut out: Vec<RatCone> = seen.iter().map(|s| self.face_of_rays(s)).collect();
        out.sort_by(|a, b| a.dim().cmp(&b.dim()).then(a.cmp(b)));
        out.dedup();
        out
    }

    pub fn facets(&self) -> Vec<RatCone> {
        self.faces().into_iter().filter(|f| f.dim() + 1 == self.dim()).collect()
    }

    /// Smallest face containing a point of the cone.
    pub fn face_containing(&self, x: &[Q]) -> RatCone {
        let rq = self.rays_q();
        let tight: Vec<&Vec<BigInt>> = self.normals.iter().filter(|n| dot_int(n, x).is_zero()).collect();
        let idx: BTreeSet<usize> =
            (0..rq.len()).filter(|&i| tight.iter().all(|n| dot_int(n, &rq[i]).is_zero())).collect();
        self.face_of_rays(&idx)
    }

    pub fn is_face(&self, f: &RatCone) -> bool {
        self.contains_cone(f) && self.face_containing(&f.relative_interior_point()) == *f
    }

    /// Image under a linear map (rows = output coordinates).
    pub fn image(&self, map: &RatMatrix) -> RatCone {
        let g: Vec<Vec<Q>> = self.rays_q().iter().map(|r| map.mul_vec(r)).collect();
        let l: Vec<Vec<Q>> = self.lineality.basis().iter().map(|r| map.mul_vec(r)).collect();
        RatCone::from_generators(map.rows(), &g, &l)
    }

    /// Cone plus a linear subspace.
    pub fn plus_span(&self, extra: &Subspace) -> RatCone {
        let mut l = self.lineality.basis().to_vec();
        l.extend(extra.basis().iter().cloned());
        RatCone::from_generators(self.ambient, &self.rays_q(), &l)
    }

    pub fn to_json(&self) -> ConeJson {
        ConeJson {
            rays: self.rays.iter().map(|r| to_i64_vec(r)).collect(),
            normals: self.normals.iter().map(|r| to_i64_vec(r)).collect(),
            lineality: self.lineality.integer_basis().iter().map(|r| to_i64_vec(r)).collect(),
        }
    }
}

/// A finite collection of cones, kept sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenFan {
    ambient: usize,
    cones: Vec<RatCone>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FanCheck {
    pub is_fan: bool,
    pub is_complete: bool,
}

impl GenFan {
    pub fn new(ambient: usize, mut cones: Vec<RatCone>) -> GenFan {
        cones.sort_by(|a, b| a.dim().cmp(&b.dim()).then(a.cmp(b)));
        cones.dedup();
        GenFan { ambient, cones }
    }

    /// Fan generated by the given cones and all their faces.
    pub fn from_cones_with_faces(ambient: usize, cones: &[RatCone]) -> GenFan {
        let mut all: HashSet<RatCone> = HashSet::new();
        for c in cones {
            for f in c.faces() {
                all.insert(f);
            }
        }
        GenFan::new(ambient, all.into_iter().collect())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn cones(&self) -> &[RatCone] {
        &self.cones
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// Cones not strictly contained in another member.
    pub fn maximal(&self) -> Vec<&RatCone> {
        self.cones
            .iter()
            .filter(|c| !self.cones.iter().any(|d| d.dim() > c.dim() && d.contains_cone(c)))
            .collect()
    }

    pub fn count_by_dim(&self) -> Vec<usize> {
        let mut v = vec![0; self.ambient + 1];
        for c in &self.cones {
            v[c.dim()] += 1;
        }
        v
    }

    /// Face closure, pairwise intersections of maximal cones, and the
    /// facet-sharing completeness criterion.
    pub fn check(&self) -> FanCheck {
        let set: HashSet<&RatCone> = self.cones.iter().collect();
        let closed = self.cones.iter().all(|c| c.faces().iter().all(|f| set.contains(f)));
        let maxes = self.maximal();
        let mut pairwise = true;
        'outer: for (i, a) in maxes.iter().enumerate() {
            for b in &maxes[i + 1..] {
                let x = a.intersect(b);
                if !a.is_face(&x) || !b.is_face(&x) {
                    pairwise = false;
                    break 'outer;
                }
            }
        }
        let is_fan = closed && pairwise && !self.cones.is_empty();
        let mut complete = is_fan && maxes.iter().all(|c| c.dim() == self.ambient);
        if complete {
            'facets: for c in &maxes {
                for f in c.facets() {
                    let n = maxes.iter().filter(|d| d.contains_cone(&f)).count();
                    if n != 2 {
                        complete = false;
                        break 'facets;
                    }
                }
            }
        }
        FanCheck { is_fan, is_complete: complete }
    }

    /// All pairwise intersections.
    pub fn common_refinement(&self, other: &GenFan) -> GenFan {
        let mut out = Vec::new();
        for a in &self.cones {
            for b in &other.cones {
                out.push(a.intersect(b));
            }
        }
        GenFan::new(self.ambient, out)
    }

    /// Smallest cone of the fan containing `x`, if any.
    pub fn locate(&self, x: &[Q]) -> Option<&RatCone> {
        self.cones.iter().find(|c| c.contains(x))
    }
}

/// Images of the cones of `requested` under `map`, each checked for
/// `(σ + ker map) ∩ τ ⊆ σ` against every cone `τ` of the support.
pub fn fan_image(map: &RatMatrix, requested: &[RatCone], support: &[RatCone]) -> Result<GenFan, ConeError> {
    let ker = kernel(map);
    let mut out = Vec::new();
    for s in requested {
        let sat = s.plus_span(&ker);
        for t in support {
            if !s.contains_cone(&sat.intersect(t)) {
                return Err(ConeError::SaturationViolated);
            }
        }
        out.push(s.image(map));
    }
    Ok(GenFan::new(map.rows(), out))
}

/// True when the top-dimensional pieces cover `hull` exactly: every piece lies in
/// the hull and each facet of a piece is either on the hull boundary or shared
/// with exactly one other piece.
pub fn tiles(hull: &RatCone, pieces: &[RatCone]) -> bool {
    if pieces.iter().any(|p| !hull.contains_cone(p)) {
        return false;
    }
    let top: Vec<&RatCone> = pieces.iter().filter(|p| p.dim() == hull.dim()).collect();
    if top.is_empty() {
        return false;
    }
    for p in &top {
        for f in p.facets() {
            let x = f.relative_interior_point();
            if !hull.contains_interior(&x) {
                continue;
            }
            let shared = top.iter().filter(|q| q.contains_cone(&f)).count();
            if shared != 2 {
                return false;
            }
        }
    }
    true
}

fn to_f64(x: &Q) -> f64 {
    x.numer().to_f64().unwrap_or(0.0) / x.denom().to_f64().unwrap_or(1.0)
}

/// SVG of a fan in the plane: rays drawn from the origin, maximal cones shaded.
pub fn svg_fan_2d(fan: &GenFan, title: &str) -> String {
    let mut s = String::new();
    s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"420\" viewBox=\"-200 -220 400 420\">\n");
    s.push_str(&format!("<text x=\"-190\" y=\"-200\" font-size=\"14\">{title}</text>\n"));
    s.push_str("<line x1=\"-190\" y1=\"0\" x2=\"190\" y2=\"0\" stroke=\"#ccc\"/>\n<line x1=\"0\" y1=\"-190\" x2=\"0\" y2=\"190\" stroke=\"#ccc\"/>\n");
    for c in fan.cones() {
        if c.dim() == 1 {
            for r in c.rays_q() {
                let (x, y) = (to_f64(&r[0]), to_f64(&r[1]));
                let len = (x * x + y * y).sqrt().max(1e-9);
                let (px, py) = (170.0 * x / len, -170.0 * y / len);
                s.push_str(&format!(
                    "<line x1=\"0\" y1=\"0\" x2=\"{px:.2}\" y2=\"{py:.2}\" stroke=\"black\" stroke-width=\"2\"/>\n"
                ));
                s.push_str(&format!(
                    "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\">({},{})</text>\n",
                    px * 1.05,
                    py * 1.05,
                    r[0],
                    r[1]
                ));
            }
            for l in c.lineality().basis() {
                let (x, y) = (to_f64(&l[0]), to_f64(&l[1]));
                let len = (x * x + y * y).sqrt().max(1e-9);
                s.push_str(&format!(
                    "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"2\"/>\n",
                    -170.0 * x / len,
                    170.0 * y / len,
                    170.0 * x / len,
                    -170.0 * y / len
                ));
            }
        }
    }
    s.push_str("<circle cx=\"0\" cy=\"0\" r=\"3\"/>\n</svg>\n");
    s
}

/// SVG of the slice `{a·x = c}` of a family of cones, projected to the page.
pub fn svg_slice(cones: &[RatCone], plane: &[Q], rhs: &Q, title: &str) -> String {
    let n = plane.len();
    let dirs = kernel(&RatMatrix::from_rows(&[plane.to_vec()], n));
    let project = |p: &[Q]| -> (f64, f64) {
        let c: Vec<f64> = dirs.basis().iter().map(|d| to_f64(&dot(d, p))).collect();
        match c.len() {
            0 => (0.0, 0.0),
            1 => (c[0], 0.0),
            2 => (c[0], c[1]),
            _ => (c[0] + 0.45 * c[2], c[1] + 0.3 * c[2]),
        }
    };
    let hit = |r: &[Q]| -> Option<Vec<Q>> {
        let v = dot(plane, r);
        if v.is_positive() {
            Some(r.iter().map(|x| x * rhs / &v).collect())
        } else {
            None
        }
    };
    let mut segs: Vec<((f64, f64), (f64, f64))> = Vec::new();
    let mut pts: Vec<((f64, f64), String)> = Vec::new();
    for c in cones {
        for f in c.faces() {
            let rq = f.rays_q();
            if f.dim() == 1 && rq.len() == 1 {
                if let Some(p) = hit(&rq[0]) {
                    let label = format!("{:?}", to_i64_vec(&f.rays()[0]));
                    pts.push((project(&p), label));
                }
            }
            if f.dim() == 2 && rq.len() == 2 {
                if let (Some(p), Some(q)) = (hit(&rq[0]), hit(&rq[1])) {
                    segs.push((project(&p), project(&q)));
                }
            }
        }
    }
    let all: Vec<(f64, f64)> = segs.iter().flat_map(|(a, b)| [*a, *b]).chain(pts.iter().map(|p| p.0)).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 1.0f64, 0.0f64, 1.0f64);
    if !all.is_empty() {
        x0 = all.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        x1 = all.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        y0 = all.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        y1 = all.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    }
    let scale = 300.0 / (x1 - x0).max(y1 - y0).max(1e-9);
    let tx = |p: (f64, f64)| (50.0 + (p.0 - x0) * scale, 370.0 - (p.1 - y0) * scale);
    let mut s = String::new();
    s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"420\" height=\"420\">\n");
    s.push_str(&format!("<text x=\"10\" y=\"20\" font-size=\"14\">{title}</text>\n"));
    let mut seen = HashSet::new();
    for (a, b) in segs {
        let (pa, pb) = (tx(a), tx(b));
        let key = format!("{:.3},{:.3},{:.3},{:.3}", pa.0, pa.1, pb.0, pb.1);
        if seen.insert(key) {
            s.push_str(&format!(
                "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
                pa.0, pa.1, pb.0, pb.1
            ));
        }
    }
    for (p, label) in pts {
        let q = tx(p);
        if seen.insert(label.clone()) {
            s.push_str(&format!("<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\"/>\n", q.0, q.1));
            s.push_str(&format!("<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\">{label}</text>\n", q.0 + 4.0, q.1 - 4.0));
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{int_vec, qvec};

    fn ivecs(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|x| int_vec(x)).collect()
    }

    #[test]
    fn orthant_representations() {
        let c = RatCone::from_rays(2, &[vec![1, 0], vec![0, 1]]);
        assert_eq!(c.normals(), &ivecs(&[&[0, 1], &[1, 0]])[..]);
        let h = RatCone::from_inequalities(2, &[qvec(&[1, 0]), qvec(&[-1, 0])], &[]);
        assert_eq!(h.lineality().dim(), 1);
        assert!(h.lineality().contains(&qvec(&[0, 1])));
        assert_eq!(h.dim(), 1);
        let o3 = RatCone::from_rays(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(o3.faces().len(), 8);
        let half = RatCone::from_inequalities(2, &[qvec(&[1, 0])], &[]);
        assert_eq!(half.faces().len(), 2);
        assert_eq!(o3.relative_interior_point(), qvec(&[1, 1, 1]));
    }

    #[test]
    fn dd_round_trip() {
        let c = RatCone::from_rays(3, &[vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1], vec![1, 1, 3]]);
        assert_eq!(c.rays().len(), 4);
        let back = RatCone::from_inequalities(3, &c.normals_q(), &c.equations());
        assert_eq!(back, c);
        // square pyramid: 1 + 4 + 4 + 1 faces
        assert_eq!(c.faces().len(), 10);
    }

    #[test]
    fn a4_neighbourhood_rays() {
        // facet normals from the labels of D(U) in the A4 example
        let normals =
            [qvec(&[0, 0, 1, 0]), qvec(&[0, 0, 0, -1]), qvec(&[1, 1, 1, 1]), qvec(&[1, 1, 0, 0]), qvec(&[1, 0, 0, 0])];
        let d = RatCone::from_inequalities(4, &normals, &[]);
        let expect = ivecs(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[1, -1, 0, 0], &[0, 1, 0, -1], &[0, 0, 1, -1]]);
        let mut e = expect.clone();
        e.sort();
        assert_eq!(d.rays(), &e[..]);
        let f = GenFan::from_cones_with_faces(4, &[d]);
        assert_eq!(f.count_by_dim(), vec![1, 5, 8, 5, 1]);
    }

    #[test]
    fn quadrant_fan() {
        let quads: Vec<RatCone> = [[1, 1], [-1, 1], [-1, -1], [1, -1]]
            .iter()
            .map(|s| RatCone::from_rays(2, &[vec![s[0], 0], vec![0, s[1]]]))
            .collect();
        let f = GenFan::from_cones_with_faces(2, &quads);
        assert_eq!(f.check(), FanCheck { is_fan: true, is_complete: true });
        let one = GenFan::from_cones_with_faces(2, &quads[..1]);
        assert_eq!(one.check(), FanCheck { is_fan: true, is_complete: false });
        // overlapping cones violate the intersection axiom
        let bad = GenFan::from_cones_with_faces(2, &[quads[0].clone(), RatCone::from_rays(2, &[vec![1, 1], vec![-1, 1]])]);
        assert!(!bad.check().is_fan);
    }

    #[test]
    fn projection_image() {
        let quads: Vec<RatCone> = [[1, 1], [-1, 1], [-1, -1], [1, -1]]
            .iter()
            .map(|s| RatCone::from_rays(2, &[vec![s[0], 0], vec![0, s[1]]]))
            .collect();
        let map = RatMatrix::from_i64(&[vec![1, 0]]);
        // saturated cones: the upper half plane split by the y axis
        let upper = vec![
            RatCone::from_generators(2, &[qvec(&[1, 0])], &[qvec(&[0, 1])]),
            RatCone::from_generators(2, &[qvec(&[-1, 0])], &[qvec(&[0, 1])]),
            RatCone::from_generators(2, &[], &[qvec(&[0, 1])]),
        ];
        let img = fan_image(&map, &upper, &upper).unwrap();
        assert_eq!(img.len(), 3);
        assert_eq!(img.check(), FanCheck { is_fan: true, is_complete: true });
        assert_eq!(fan_image(&map, &quads[..1], &quads), Err(ConeError::SaturationViolated));
        let id = RatMatrix::identity(2);
        let f = GenFan::from_cones_with_faces(2, &quads);
        assert_eq!(fan_image(&id, f.cones(), f.cones()).unwrap(), f);
    }

    #[test]
    fn tiling_and_refinement() {
        let hull = RatCone::from_rays(2, &[vec![1, 0], vec![0, 1]]);
        let a = RatCone::from_rays(2, &[vec![1, 0], vec![1, 1]]);
        let b = RatCone::from_rays(2, &[vec![1, 1], vec![0, 1]]);
        assert!(tiles(&hull, &[a.clone(), b.clone()]));
        assert!(!tiles(&hull, std::slice::from_ref(&a)));
        let f1 = GenFan::from_cones_with_faces(2, std::slice::from_ref(&hull));
        let f2 = GenFan::from_cones_with_faces(2, &[a, b]);
        assert_eq!(f1.common_refinement(&f2), f2);
    }

    #[test]
    fn interior_point_is_strict() {
        let c = RatCone::from_rays(3, &[vec![1, 0, 0], vec![1, 1, 0], vec![0, 1, 1]]);
        for f in c.faces() {
            let p = f.relative_interior_point();
            assert!(f.contains_interior(&p) || f.dim() == 0);
            assert_eq!(c.face_containing(&p), f);
        }
    }
}
