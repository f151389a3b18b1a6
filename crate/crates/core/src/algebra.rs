//! Finite-dimensional rational algebras: quiver presentations, radicals,
//! idempotents, quotients.

use crate::qlinalg::{
    charpoly, fitting_polynomial, is_zero_vec, q, rational_roots, LinalgError, QuotientSpace, Q, RatMatrix,
    Subspace,
};
use num::{BigInt, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("path algebra modulo relations is not finite dimensional within path length {0}")]
    InfiniteDimensional(usize),
    #[error("malformed relation `{0}`: {1}")]
    MalformedRelation(String, String),
    #[error("malformed quiver: {0}")]
    MalformedQuiver(String),
    #[error("multiplication is not associative")]
    NotAssociative,
    #[error("the ideal contains the unit")]
    IdealIsWholeAlgebra,
    #[error("semisimple quotient does not split over the rationals")]
    NonSplitSemisimple,
    #[error("algebra is not basic with respect to the given idempotents")]
    NotBasic,
    #[error("relations are not admissible: radical is not spanned by the non-trivial paths")]
    Inadmissible,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub from: String,
    pub to: String,
}

/// Quiver with relations. Paths compose left to right: `a*b` is `a` then `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<Arrow>,
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Deserialize)]
struct QuiverFile {
    quiver: Quiver,
}

impl Quiver {
    pub fn from_toml(text: &str) -> Result<Quiver, AlgebraError> {
        let f: QuiverFile = toml::from_str(text).map_err(|e| AlgebraError::MalformedQuiver(e.to_string()))?;
        Ok(f.quiver)
    }

    /// Linear quiver 1 -> 2 -> ... -> n with arrows a1..a(n-1).
    pub fn linear(n: usize) -> Quiver {
        Quiver {
            vertices: (1..=n).map(|i| i.to_string()).collect(),
            arrows: (1..n)
                .map(|i| Arrow { name: format!("a{i}"), from: i.to_string(), to: (i + 1).to_string() })
                .collect(),
            relations: Vec::new(),
        }
    }

    pub fn with_relations(mut self, rels: &[&str]) -> Quiver {
        self.relations = rels.iter().map(|s| s.to_string()).collect();
        self
    }

    fn vertex_index(&self, name: &str) -> Result<usize, AlgebraError> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| AlgebraError::MalformedQuiver(format!("unknown vertex `{name}`")))
    }
}

/// Corner structure of an algebra with a fixed complete set of primitive
/// orthogonal idempotents, each of which is a basis element.
#[derive(Clone, Debug)]
pub struct Peirce {
    pub n: usize,
    pub vertex_labels: Vec<String>,
    /// basis index of e_v
    pub idem: Vec<usize>,
    /// (s, t) with basis element in e_s A e_t
    pub corner: Vec<(usize, usize)>,
    /// position of each basis element inside its corner
    pub corner_pos: Vec<usize>,
    /// corner_basis[s][t] lists basis indices of e_s A e_t
    pub corner_basis: Vec<Vec<Vec<usize>>>,
    /// basis indices generating the radical as an ideal
    pub generators: Vec<usize>,
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug)]
pub struct Algebra {
    id: u64,
    dim: usize,
    labels: Vec<String>,
    mult: Vec<Vec<Vec<(usize, Q)>>>,
    unit: Vec<Q>,
    peirce: Option<Peirce>,
    quiver: Option<Quiver>,
    words: Option<Vec<PathWord>>,
}

pub type AlgRef = Arc<Algebra>;

fn sparse(v: &[Q]) -> Vec<(usize, Q)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

impl Algebra {
    /// Build from a dense structure-constant table `table[i][j]` = b_i b_j.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<Vec<Q>>>, unit: Vec<Q>) -> Result<Algebra, AlgebraError> {
        let dim = labels.len();
        let mult = table.iter().map(|row| row.iter().map(|v| sparse(v)).collect()).collect();
        let alg = Algebra { id: NEXT_ID.fetch_add(1, Ordering::Relaxed), dim, labels, mult, unit, peirce: None, quiver: None, words: None };
        alg.check_axioms()?;
        Ok(alg)
    }

    pub fn zero() -> Algebra {
        Algebra {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            dim: 0,
            labels: Vec::new(),
            mult: Vec::new(),
            unit: Vec::new(),
            peirce: Some(Peirce {
                n: 0,
                vertex_labels: Vec::new(),
                idem: Vec::new(),
                corner: Vec::new(),
                corner_pos: Vec::new(),
                corner_basis: Vec::new(),
                generators: Vec::new(),
            }),
            quiver: None,
            words: None,
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Q] {
        &self.unit
    }

    pub fn peirce(&self) -> Option<&Peirce> {
        self.peirce.as_ref()
    }

    /// Corner data; panics for algebras without a fixed idempotent basis.
    pub fn pc(&self) -> &Peirce {
        self.peirce.as_ref().expect("algebra has no vertex idempotents")
    }

    pub fn quiver(&self) -> Option<&Quiver> {
        self.quiver.as_ref()
    }

    /// Number of vertices (primitive idempotents), 0 if not fixed.
    pub fn n(&self) -> usize {
        self.peirce.as_ref().map_or(0, |p| p.n)
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim];
        v[i] = Q::one();
        v
    }

    pub fn mult_entry(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.mult[i][j]
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.mult[i][j] {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    /// Matrix of y -> x*y acting on row vectors (y M).
    pub fn left_mult(&self, x: &[Q]) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let prod = self.mul(x, &self.basis_vec(j));
            for (k, c) in prod.iter().enumerate() {
                if !c.is_zero() {
                    m.set(j, k, c.clone());
                }
            }
        }
        m
    }

    pub fn power(&self, x: &[Q], k: usize, one: &[Q]) -> Vec<Q> {
        let mut acc = one.to_vec();
        for _ in 0..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// p(x) with x^0 = `one` (a local unit such as a corner idempotent).
    pub fn eval_poly(&self, p: &[Q], x: &[Q], one: &[Q]) -> Vec<Q> {
        let mut acc = vec![Q::zero(); self.dim];
        for c in p.iter().rev() {
            acc = self.mul(&acc, x);
            crate::qlinalg::axpy(&mut acc, c, one);
        }
        acc
    }

    fn check_axioms(&self) -> Result<(), AlgebraError> {
        let d = self.dim;
        for i in 0..d {
            let bi = self.basis_vec(i);
            if self.mul(&self.unit, &bi) != bi || self.mul(&bi, &self.unit) != bi {
                return Err(AlgebraError::NotAssociative);
            }
        }
        for i in 0..d {
            for j in 0..d {
                if self.mult[i][j].is_empty() {
                    continue;
                }
                for k in 0..d {
                    // (b_i b_j) b_k versus b_i (b_j b_k)
                    let mut lhs = vec![Q::zero(); d];
                    for (l, c) in &self.mult[i][j] {
                        for (m, e) in &self.mult[*l][k] {
                            lhs[*m] += c * e;
                        }
                    }
                    let mut rhs = vec![Q::zero(); d];
                    for (l, c) in &self.mult[j][k] {
                        for (m, e) in &self.mult[i][*l] {
                            rhs[*m] += c * e;
                        }
                    }
                    if lhs != rhs {
                        return Err(AlgebraError::NotAssociative);
                    }
                }
            }
        }
        Ok(())
    }

    /// Radical of the trace form of the regular representation.
    pub fn jacobson_radical(&self) -> Subspace {
        let d = self.dim;
        if d == 0 {
            return Subspace::zero(0);
        }
        let tr: Vec<Q> = (0..d)
            .map(|l| {
                let mut s = Q::zero();
                for i in 0..d {
                    for (k, c) in &self.mult[l][i] {
                        if *k == i {
                            s += c;
                        }
                    }
                }
                s
            })
            .collect();
        let mut t = RatMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let mut s = Q::zero();
                for (l, c) in &self.mult[i][j] {
                    s += c * &tr[*l];
                }
                t.set(i, j, s);
            }
        }
        crate::qlinalg::kernel(&t)
    }

    /// Two-sided ideal generated by `gens`.
    pub fn ideal(&self, gens: &[Vec<Q>]) -> Subspace {
        let d = self.dim;
        let mut right = Vec::new();
        for g in gens {
            for j in 0..d {
                right.push(self.mul(g, &self.basis_vec(j)));
            }
        }
        let r = Subspace::span(&right, d);
        let mut two = Vec::new();
        for v in r.basis() {
            for i in 0..d {
                two.push(self.mul(&self.basis_vec(i), v));
            }
        }
        Subspace::span(&two, d)
    }

    /// Quotient by the ideal generated by `gens`. Returns the quotient, the
    /// projection matrix (row vectors, dim x dim_quotient) and lifts of the
    /// quotient basis.
    pub fn quotient_by_ideal(&self, gens: &[Vec<Q>]) -> Result<(Algebra, RatMatrix, Vec<Vec<Q>>), AlgebraError> {
        let ideal = self.ideal(gens);
        if self.dim > 0 && ideal.contains(&self.unit) {
            return Err(AlgebraError::IdealIsWholeAlgebra);
        }
        let qs = QuotientSpace::new(&Subspace::full(self.dim), &ideal);
        let reps = qs.reps().to_vec();
        let qd = reps.len();
        let table: Vec<Vec<Vec<Q>>> =
            reps.iter().map(|a| reps.iter().map(|b| qs.coords(&self.mul(a, b))).collect()).collect();
        let unit = qs.coords(&self.unit);
        let labels = (0..qd).map(|i| format!("q{i}")).collect();
        let alg = Algebra::from_table(labels, table, unit)?;
        let mut proj = RatMatrix::zeros(self.dim, qd);
        for k in 0..self.dim {
            for (j, c) in qs.coords(&self.basis_vec(k)).into_iter().enumerate() {
                proj.set(k, j, c);
            }
        }
        Ok((alg, proj, reps))
    }

    /// Subspace e A f.
    pub fn corner_space(&self, e: &[Q], f: &[Q]) -> Subspace {
        let vs: Vec<Vec<Q>> = (0..self.dim).map(|i| self.mul(&self.mul(e, &self.basis_vec(i)), f)).collect();
        Subspace::span(&vs, self.dim)
    }

    fn sandwich(&self, e: &[Q], sub: &Subspace, f: &[Q]) -> Subspace {
        let vs: Vec<Vec<Q>> = sub.basis().iter().map(|v| self.mul(&self.mul(e, v), f)).collect();
        Subspace::span(&vs, self.dim)
    }

    /// Complete set of primitive orthogonal idempotents.
    pub fn primitive_idempotents(&self) -> Result<Vec<Vec<Q>>, AlgebraError> {
        if let Some(p) = &self.peirce {
            return Ok(p.idem.iter().map(|&i| self.basis_vec(i)).collect());
        }
        if self.dim == 0 {
            return Ok(Vec::new());
        }
        let rad = self.jacobson_radical();
        let mut rng = ChaCha8Rng::seed_from_u64(0x51_17);
        let mut stack = vec![self.unit.clone()];
        let mut out = Vec::new();
        while let Some(e) = stack.pop() {
            let corner = self.corner_space(&e, &e);
            let rcorner = self.sandwich(&e, &rad, &e);
            let top = corner.dim() - rcorner.dim();
            if top == 1 {
                out.push(e);
                continue;
            }
            let f = self.split_idempotent(&e, &corner, &mut rng)?;
            let g: Vec<Q> = e.iter().zip(&f).map(|(a, b)| a - b).collect();
            stack.push(g);
            stack.push(f);
        }
        out.sort_by(|a, b| b.cmp(a));
        Ok(out)
    }

    fn split_idempotent(&self, e: &[Q], corner: &Subspace, rng: &mut ChaCha8Rng) -> Result<Vec<Q>, AlgebraError> {
        let right = self.corner_space(e, &self.unit);
        let basis = right.basis().to_vec();
        let k = basis.len();
        let mut candidates: Vec<Vec<Q>> = corner.basis().to_vec();
        for _ in 0..64 {
            let mut x = vec![Q::zero(); self.dim];
            for b in corner.basis() {
                let c: i64 = rng.gen_range(-3..=3);
                crate::qlinalg::axpy(&mut x, &q(c), b);
            }
            candidates.push(x);
        }
        for x in candidates {
            // left multiplication by x on e A in the basis of e A
            let mut m = RatMatrix::zeros(k, k);
            for (r, b) in basis.iter().enumerate() {
                let img = self.mul(&x, b);
                for (c, v) in right.coords(&img).into_iter().enumerate() {
                    m.set(r, c, v);
                }
            }
            let chi = charpoly(&m);
            for root in rational_roots(&chi) {
                if let Some(p) = fitting_polynomial(&chi, &root) {
                    let f = self.eval_poly(&p, &x, e);
                    if !is_zero_vec(&f) && f.as_slice() != e && self.mul(&f, &f) == f {
                        return Ok(f);
                    }
                }
            }
        }
        Err(AlgebraError::NonSplitSemisimple)
    }

    /// Re-express the algebra in a basis adapted to complete orthogonal
    /// primitive idempotents `idems`: each corner gets the idempotent (if
    /// diagonal), then a complement of rad^2 in the radical, then rad^2.
    /// Returns the new algebra and the change of basis (rows are new basis
    /// vectors in old coordinates).
    pub fn peirce_rebase(&self, idems: &[Vec<Q>], vertex_labels: Vec<String>) -> Result<(Algebra, RatMatrix), AlgebraError> {
        let n = idems.len();
        if n == 0 {
            return Ok((Algebra::zero(), RatMatrix::zeros(self.dim, 0)));
        }
        let d = self.dim;
        let rad = self.jacobson_radical();
        let mut sq = Vec::new();
        for a in rad.basis() {
            for b in rad.basis() {
                sq.push(self.mul(a, b));
            }
        }
        let rad2 = Subspace::span(&sq, d);
        let mut rows: Vec<Vec<Q>> = Vec::new();
        let mut corner = Vec::new();
        let mut generators = Vec::new();
        let mut idem_idx = vec![0; n];
        let mut labels = Vec::new();
        for s in 0..n {
            for t in 0..n {
                let c = self.corner_space(&idems[s], &idems[t]);
                let j = self.sandwich(&idems[s], &rad, &idems[t]);
                let j2 = self.sandwich(&idems[s], &rad2, &idems[t]);
                if s == t {
                    if c.dim() != j.dim() + 1 {
                        return Err(AlgebraError::NonSplitSemisimple);
                    }
                    idem_idx[s] = rows.len();
                    rows.push(idems[s].clone());
                    corner.push((s, t));
                    labels.push(format!("e{}", vertex_labels[s]));
                } else if c.dim() != j.dim() {
                    return Err(AlgebraError::NotBasic);
                }
                let qs = QuotientSpace::new(&j, &j2);
                for (k, r) in qs.reps().iter().enumerate() {
                    generators.push(rows.len());
                    rows.push(r.clone());
                    corner.push((s, t));
                    labels.push(format!("g{}{}_{}", vertex_labels[s], vertex_labels[t], k));
                }
                for (k, r) in j2.basis().iter().enumerate() {
                    rows.push(r.clone());
                    corner.push((s, t));
                    labels.push(format!("r{}{}_{}", vertex_labels[s], vertex_labels[t], k));
                }
            }
        }
        if rows.len() != d {
            return Err(AlgebraError::NotBasic);
        }
        let change = RatMatrix::from_rows(&rows, d);
        let inv = change.inverse().ok_or(AlgebraError::NotBasic)?;
        let table: Vec<Vec<Vec<Q>>> =
            rows.iter().map(|a| rows.iter().map(|b| inv.vec_mul(&self.mul(a, b))).collect()).collect();
        let unit = inv.vec_mul(&self.unit);
        let mut alg = Algebra::from_table(labels, table, unit)?;
        alg.peirce = Some(build_peirce(n, vertex_labels, idem_idx, corner, generators));
        Ok((alg, change))
    }

    /// Number of arrows s -> t of the Gabriel quiver: dim e_s (J/J^2) e_t.
    pub fn gabriel_quiver(&self) -> Vec<Vec<usize>> {
        let p = self.pc();
        let rad = self.jacobson_radical();
        let mut sq = Vec::new();
        for a in rad.basis() {
            for b in rad.basis() {
                sq.push(self.mul(a, b));
            }
        }
        let rad2 = Subspace::span(&sq, self.dim);
        let idems: Vec<Vec<Q>> = p.idem.iter().map(|&i| self.basis_vec(i)).collect();
        let mut out = vec![vec![0; p.n]; p.n];
        for s in 0..p.n {
            for t in 0..p.n {
                let j = self.sandwich(&idems[s], &rad, &idems[t]);
                let j2 = self.sandwich(&idems[s], &rad2, &idems[t]);
                out[s][t] = j.dim() - j2.dim();
            }
        }
        out
    }

    /// If the algebra is isomorphic to the path algebra of its Gabriel
    /// quiver (no relations), return that quiver.
    pub fn certify_path_algebra(&self) -> Option<Quiver> {
        let p = self.peirce.as_ref()?;
        if p.n == 0 {
            return None;
        }
        let rad = self.jacobson_radical();
        let mut sq = Vec::new();
        for a in rad.basis() {
            for b in rad.basis() {
                sq.push(self.mul(a, b));
            }
        }
        let rad2 = Subspace::span(&sq, self.dim);
        let idems: Vec<Vec<Q>> = p.idem.iter().map(|&i| self.basis_vec(i)).collect();
        let mut arrows = Vec::new();
        let mut images = Vec::new();
        for s in 0..p.n {
            for t in 0..p.n {
                let j = self.sandwich(&idems[s], &rad, &idems[t]);
                let j2 = self.sandwich(&idems[s], &rad2, &idems[t]);
                for r in QuotientSpace::new(&j, &j2).reps() {
                    arrows.push(Arrow {
                        name: format!("x{}", arrows.len() + 1),
                        from: p.vertex_labels[s].clone(),
                        to: p.vertex_labels[t].clone(),
                    });
                    images.push(r.clone());
                }
            }
        }
        let quiver = Quiver { vertices: p.vertex_labels.clone(), arrows, relations: Vec::new() };
        let free = from_quiver(&quiver, self.dim + 1).ok()?;
        if free.dim != self.dim {
            return None;
        }
        let paths = free.words.as_ref()?;
        let mut rows = Vec::new();
        for word in paths {
            let v = match word {
                PathWord::Trivial(v) => idems[*v].clone(),
                PathWord::Arrows(ws) => {
                    let mut acc = images[ws[0]].clone();
                    for &w in &ws[1..] {
                        acc = self.mul(&acc, &images[w]);
                    }
                    acc
                }
            };
            rows.push(v);
        }
        let m = RatMatrix::from_rows(&rows, self.dim);
        if m.rank() == self.dim {
            Some(quiver)
        } else {
            None
        }
    }

    /// Words of the quiver presentation, when the algebra came from a quiver.
    pub fn path_words(&self) -> Option<&[PathWord]> {
        self.words.as_deref()
    }
}

impl Algebra {
    /// Parse a path expression such as `a1*a2 - 2*b` or `e3` into coordinates.
    pub fn parse_element(&self, text: &str) -> Result<Vec<Q>, AlgebraError> {
        let bad = |why: &str| AlgebraError::MalformedRelation(text.to_string(), why.to_string());
        let mut out = vec![Q::zero(); self.dim];
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for ch in text.chars() {
            if ch == '+' || ch == '-' {
                if !cur.trim().is_empty() {
                    terms.push((neg, cur.trim().to_string()));
                }
                cur.clear();
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if !cur.trim().is_empty() {
            terms.push((neg, cur.trim().to_string()));
        }
        if terms.is_empty() && !text.trim().is_empty() && text.trim() != "0" {
            return Err(bad("empty expression"));
        }
        for (neg, term) in terms {
            if term == "0" {
                continue;
            }
            let mut coeff = if neg { -Q::one() } else { Q::one() };
            let mut acc: Option<Vec<Q>> = None;
            for factor in term.split('*') {
                let factor = factor.trim();
                if let Some(c) = parse_coefficient(factor) {
                    coeff *= c;
                    continue;
                }
                let idx = self
                    .labels
                    .iter()
                    .position(|l| l == factor)
                    .ok_or_else(|| bad(&format!("unknown factor `{factor}`")))?;
                let v = self.basis_vec(idx);
                acc = Some(match acc {
                    None => v,
                    Some(a) => self.mul(&a, &v),
                });
            }
            let v = acc.unwrap_or_else(|| self.unit.clone());
            for (o, x) in out.iter_mut().zip(v) {
                *o += &coeff * x;
            }
        }
        Ok(out)
    }

    /// Index of the vertex with the given label.
    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.peirce.as_ref()?.vertex_labels.iter().position(|l| l == label)
    }
}

fn build_peirce(
    n: usize,
    vertex_labels: Vec<String>,
    idem: Vec<usize>,
    corner: Vec<(usize, usize)>,
    generators: Vec<usize>,
) -> Peirce {
    let mut corner_basis = vec![vec![Vec::new(); n]; n];
    let mut corner_pos = vec![0; corner.len()];
    for (b, &(s, t)) in corner.iter().enumerate() {
        corner_pos[b] = corner_basis[s][t].len();
        corner_basis[s][t].push(b);
    }
    Peirce { n, vertex_labels, idem, corner, corner_pos, corner_basis, generators }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PathWord {
    Trivial(usize),
    Arrows(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Path {
    src: usize,
    tgt: usize,
    arrows: Vec<usize>,
}

impl Path {
    fn len(&self) -> usize {
        self.arrows.len()
    }
}

type Relation = Vec<(Q, Path)>;

fn parse_coefficient(tok: &str) -> Option<Q> {
    let tok = tok.trim().trim_matches('"');
    if let Some((a, b)) = tok.split_once('/') {
        let a: BigInt = a.trim().parse().ok()?;
        let b: BigInt = b.trim().parse().ok()?;
        if b.is_zero() {
            return None;
        }
        Some(Q::new(a, b))
    } else {
        let a: BigInt = tok.parse().ok()?;
        Some(Q::from_integer(a))
    }
}

fn parse_relation(q: &Quiver, src: &[usize], tgt: &[usize], text: &str) -> Result<Relation, AlgebraError> {
    let bad = |why: &str| AlgebraError::MalformedRelation(text.to_string(), why.to_string());
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in text.chars() {
        match ch {
            '+' | '-' => {
                if !cur.trim().is_empty() {
                    terms.push((neg, cur.trim().to_string()));
                } else if !cur.is_empty() && !cur.trim().is_empty() {
                    return Err(bad("dangling operator"));
                }
                cur.clear();
                neg = ch == '-';
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        terms.push((neg, cur.trim().to_string()));
    }
    if terms.is_empty() {
        return Err(bad("empty relation"));
    }
    let mut merged: BTreeMap<Path, Q> = BTreeMap::new();
    for (neg, term) in terms {
        let mut coeff = if neg { -Q::one() } else { Q::one() };
        let mut arrows = Vec::new();
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(bad("empty factor"));
            }
            if let Some(c) = parse_coefficient(factor) {
                coeff *= c;
            } else if let Some(a) = q.arrows.iter().position(|x| x.name == factor) {
                arrows.push(a);
            } else {
                return Err(bad(&format!("unknown arrow `{factor}`")));
            }
        }
        if arrows.is_empty() {
            return Err(bad("scalar term without a path"));
        }
        for w in arrows.windows(2) {
            if tgt[w[0]] != src[w[1]] {
                return Err(bad("path is not composable"));
            }
        }
        let p = Path { src: src[arrows[0]], tgt: tgt[*arrows.last().unwrap()], arrows };
        *merged.entry(p).or_insert_with(Q::zero) += coeff;
    }
    let rel: Relation = merged.into_iter().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (c, p)).collect();
    if rel.is_empty() {
        return Err(bad("relation is identically zero"));
    }
    let (s0, t0) = (rel[0].1.src, rel[0].1.tgt);
    if rel.iter().any(|(_, p)| p.src != s0 || p.tgt != t0) {
        return Err(bad("terms are not parallel"));
    }
    Ok(rel)
}

/// Paths of each length, grouped by length.
fn paths_by_length(n: usize, src: &[usize], tgt: &[usize], maxlen: usize) -> Vec<Vec<Path>> {
    let mut by_len = vec![(0..n).map(|v| Path { src: v, tgt: v, arrows: Vec::new() }).collect::<Vec<_>>()];
    for l in 1..=maxlen {
        let mut next = Vec::new();
        for p in &by_len[l - 1] {
            for (a, &s) in src.iter().enumerate() {
                if s == p.tgt {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    next.push(Path { src: p.src, tgt: tgt[a], arrows });
                }
            }
        }
        next.sort();
        by_len.push(next);
    }
    by_len
}

fn concat(p: &Path, q: &Path) -> Option<Path> {
    if p.tgt != q.src {
        return None;
    }
    let mut arrows = p.arrows.clone();
    arrows.extend(q.arrows.iter().cloned());
    Some(Path { src: p.src, tgt: q.tgt, arrows })
}

/// Finite-dimensional algebra K Q / I from a quiver with relations.
pub fn from_quiver(quiver: &Quiver, path_cap: usize) -> Result<Algebra, AlgebraError> {
    let n = quiver.vertices.len();
    if n == 0 {
        return Err(AlgebraError::MalformedQuiver("no vertices".into()));
    }
    let mut seen = std::collections::HashSet::new();
    for a in &quiver.arrows {
        if !seen.insert(a.name.clone()) {
            return Err(AlgebraError::MalformedQuiver(format!("duplicate arrow `{}`", a.name)));
        }
        if parse_coefficient(&a.name).is_some() {
            return Err(AlgebraError::MalformedQuiver(format!("arrow name `{}` is numeric", a.name)));
        }
    }
    let src: Vec<usize> = quiver.arrows.iter().map(|a| quiver.vertex_index(&a.from)).collect::<Result<_, _>>()?;
    let tgt: Vec<usize> = quiver.arrows.iter().map(|a| quiver.vertex_index(&a.to)).collect::<Result<_, _>>()?;
    let rels: Vec<Relation> =
        quiver.relations.iter().map(|r| parse_relation(quiver, &src, &tgt, r)).collect::<Result<_, _>>()?;

    let mut found = None;
    let mut by_len = paths_by_length(n, &src, &tgt, 0);
    for big_n in 1..=path_cap {
        by_len = paths_by_length(n, &src, &tgt, big_n);
        if by_len[big_n].is_empty() {
            found = Some(big_n);
            break;
        }
        // relation ideal within paths of length <= big_n
        let all: Vec<&Path> = by_len.iter().flatten().collect();
        let index: HashMap<&Path, usize> = all.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let rows = ideal_rows(&rels, &by_len, big_n, |r| r.iter().map(|(_, p)| p.len()).max().unwrap_or(0), |p| {
            index.get(p).copied()
        }, all.len());
        let span = Subspace::span(&rows, all.len());
        let ok = by_len[big_n].iter().all(|p| {
            let mut v = vec![Q::zero(); all.len()];
            v[index[p]] = Q::one();
            span.contains(&v)
        });
        if ok {
            found = Some(big_n);
            break;
        }
    }
    let big_n = found.ok_or(AlgebraError::InfiniteDimensional(path_cap))?;

    // basis: paths of length < big_n modulo truncated relation multiples
    let mut cols: Vec<&Path> = by_len[..big_n].iter().flatten().collect();
    cols.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let index: HashMap<&Path, usize> = cols.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let rows = ideal_rows(
        &rels,
        &by_len,
        big_n - 1,
        |r| r.iter().map(|(_, p)| p.len()).min().unwrap_or(0),
        |p| index.get(p).copied(),
        cols.len(),
    );
    let reducer = Subspace::span(&rows, cols.len());
    let mut is_pivot = vec![false; cols.len()];
    for &p in reducer.pivots() {
        is_pivot[p] = true;
    }
    let mut basis: Vec<&Path> = (0..cols.len()).filter(|&c| !is_pivot[c]).map(|c| cols[c]).collect();
    basis.sort_by(|a, b| a.len().cmp(&b.len()).then(a.src.cmp(&b.src)).then(a.arrows.cmp(&b.arrows)));
    let dim = basis.len();
    let bpos: HashMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let normal_form = |p: &Path| -> Vec<Q> {
        let mut out = vec![Q::zero(); dim];
        if p.len() >= big_n {
            return out;
        }
        let mut v = vec![Q::zero(); cols.len()];
        v[index[p]] = Q::one();
        let r = reducer.reduce(&v);
        for (c, x) in r.iter().enumerate() {
            if !x.is_zero() {
                out[bpos[cols[c]]] = x.clone();
            }
        }
        out
    };
    let mut table = vec![vec![vec![Q::zero(); dim]; dim]; dim];
    for (i, p) in basis.iter().enumerate() {
        for (j, r) in basis.iter().enumerate() {
            if let Some(c) = concat(p, r) {
                table[i][j] = normal_form(&c);
            }
        }
    }
    let mut unit = vec![Q::zero(); dim];
    let idem: Vec<usize> = (0..n).map(|v| bpos[&Path { src: v, tgt: v, arrows: Vec::new() }]).collect();
    for &i in &idem {
        unit[i] = Q::one();
    }
    let labels: Vec<String> = basis
        .iter()
        .map(|p| {
            if p.arrows.is_empty() {
                format!("e{}", quiver.vertices[p.src])
            } else {
                p.arrows.iter().map(|&a| quiver.arrows[a].name.clone()).collect::<Vec<_>>().join("*")
            }
        })
        .collect();
    let corner: Vec<(usize, usize)> = basis.iter().map(|p| (p.src, p.tgt)).collect();
    let arrow_gens: Vec<usize> = (0..quiver.arrows.len())
        .filter_map(|a| bpos.get(&Path { src: src[a], tgt: tgt[a], arrows: vec![a] }).copied())
        .collect();
    let generators = if arrow_gens.len() == quiver.arrows.len() {
        arrow_gens
    } else {
        (0..dim).filter(|i| !idem.contains(i)).collect()
    };
    let words: Vec<PathWord> = basis
        .iter()
        .map(|p| if p.arrows.is_empty() { PathWord::Trivial(p.src) } else { PathWord::Arrows(p.arrows.clone()) })
        .collect();
    let mut alg = Algebra::from_table(labels, table, unit)?;
    alg.peirce = Some(build_peirce(n, quiver.vertices.clone(), idem.clone(), corner, generators));
    alg.quiver = Some(quiver.clone());
    alg.words = Some(words);
    // admissibility: the radical must be exactly the span of non-trivial paths
    let rad = alg.jacobson_radical();
    let nontrivial: Vec<Vec<Q>> = (0..dim).filter(|i| !idem.contains(i)).map(|i| alg.basis_vec(i)).collect();
    if rad != Subspace::span(&nontrivial, dim) {
        return Err(AlgebraError::Inadmissible);
    }
    Ok(alg)
}

fn ideal_rows(
    rels: &[Relation],
    by_len: &[Vec<Path>],
    max_len: usize,
    rel_len: impl Fn(&Relation) -> usize,
    idx: impl Fn(&Path) -> Option<usize>,
    width: usize,
) -> Vec<Vec<Q>> {
    let mut rows = Vec::new();
    for r in rels {
        let rl = rel_len(r);
        if rl > max_len {
            continue;
        }
        let (rs, rt) = (r[0].1.src, r[0].1.tgt);
        for lp in 0..=(max_len - rl) {
            for p in by_len.get(lp).into_iter().flatten().filter(|p| p.tgt == rs) {
                for lq in 0..=(max_len - rl - lp) {
                    for qq in by_len.get(lq).into_iter().flatten().filter(|x| x.src == rt) {
                        let mut v = vec![Q::zero(); width];
                        let mut any = false;
                        for (c, path) in r {
                            let full = concat(&concat(p, path).unwrap(), qq).unwrap();
                            if let Some(i) = idx(&full) {
                                v[i] += c;
                                any = true;
                            }
                        }
                        if any {
                            rows.push(v);
                        }
                    }
                }
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::qvec;

    fn count_paths(q: &Quiver) -> usize {
        // independent oracle: depth-first count of all paths in an acyclic quiver
        fn walk(q: &Quiver, v: &str) -> usize {
            1 + q.arrows.iter().filter(|a| a.from == v).map(|a| walk(q, &a.to)).sum::<usize>()
        }
        q.vertices.iter().map(|v| walk(q, v)).sum()
    }

    #[test]
    fn linear_quivers() {
        let a4 = from_quiver(&Quiver::linear(4), 16).unwrap();
        assert_eq!(a4.dim(), count_paths(&Quiver::linear(4)));
        assert_eq!(a4.dim(), 10);
        assert_eq!(a4.n(), 4);
        let a2 = from_quiver(&Quiver::linear(2), 16).unwrap();
        assert_eq!(a2.dim(), 3);
        let p = a4.pc();
        let total: usize = (0..4).flat_map(|s| (0..4).map(move |t| (s, t))).map(|(s, t)| p.corner_basis[s][t].len()).sum();
        assert_eq!(total, a4.dim());
    }

    #[test]
    fn dual_numbers() {
        let q = Quiver {
            vertices: vec!["1".into()],
            arrows: vec![Arrow { name: "x".into(), from: "1".into(), to: "1".into() }],
            relations: vec!["x*x".into()],
        };
        let a = from_quiver(&q, 16).unwrap();
        assert_eq!(a.dim(), 2);
        let rad = a.jacobson_radical();
        assert_eq!(rad.dim(), 1);
        assert!(rad.contains(&a.basis_vec(1)));
        let loop_free = Quiver { relations: vec![], ..q.clone() };
        assert_eq!(from_quiver(&loop_free, 8).unwrap_err(), AlgebraError::InfiniteDimensional(8));
    }

    #[test]
    fn relations_parse() {
        let q = Quiver::linear(3).with_relations(&["a1*a2"]);
        assert_eq!(from_quiver(&q, 8).unwrap().dim(), 5);
        let bad = Quiver::linear(3).with_relations(&["a2*a1"]);
        assert!(matches!(from_quiver(&bad, 8), Err(AlgebraError::MalformedRelation(..))));
        let unknown = Quiver::linear(3).with_relations(&["b"]);
        assert!(matches!(from_quiver(&unknown, 8), Err(AlgebraError::MalformedRelation(..))));
        // commutative square
        let sq = Quiver {
            vertices: vec!["1".into(), "2".into(), "3".into(), "4".into()],
            arrows: vec![
                Arrow { name: "a".into(), from: "1".into(), to: "2".into() },
                Arrow { name: "b".into(), from: "2".into(), to: "4".into() },
                Arrow { name: "c".into(), from: "1".into(), to: "3".into() },
                Arrow { name: "d".into(), from: "3".into(), to: "4".into() },
            ],
            relations: vec!["a*b - 1/2*c*d".into()],
        };
        assert_eq!(from_quiver(&sq, 8).unwrap().dim(), 4 + 4 + 1);
    }

    #[test]
    fn toml_schema() {
        let text = r#"
[quiver]
vertices = ["1", "2"]
relations = []

[[quiver.arrows]]
name = "a"
from = "1"
to = "2"
"#;
        let q = Quiver::from_toml(text).unwrap();
        assert_eq!(from_quiver(&q, 8).unwrap().dim(), 3);
    }

    #[test]
    fn radical_and_quotient() {
        let a2 = from_quiver(&Quiver::linear(2), 8).unwrap();
        let rad = a2.jacobson_radical();
        assert_eq!(rad.dim(), 1);
        let arrow = a2.labels().iter().position(|l| l == "a1").unwrap();
        assert!(rad.contains(&a2.basis_vec(arrow)));
        let (quo, proj, _) = a2.quotient_by_ideal(&[a2.basis_vec(arrow)]).unwrap();
        assert_eq!(quo.dim(), 2);
        assert_eq!(quo.jacobson_radical().dim(), 0);
        assert_eq!(proj.rows(), 3);
        let (same, _, _) = a2.quotient_by_ideal(&[vec![Q::zero(); 3]]).unwrap();
        assert_eq!(same.dim(), 3);
        assert_eq!(a2.quotient_by_ideal(&[a2.unit().to_vec()]).unwrap_err(), AlgebraError::IdealIsWholeAlgebra);
    }

    #[test]
    fn idempotents_of_product() {
        // Q x Q presented by structure constants in a skewed basis {1, u}
        // with u^2 = u
        let table = vec![vec![qvec(&[1, 0]), qvec(&[0, 1])], vec![qvec(&[0, 1]), qvec(&[0, 1])]];
        let a = Algebra::from_table(vec!["1".into(), "u".into()], table, qvec(&[1, 0])).unwrap();
        let idem = a.primitive_idempotents().unwrap();
        assert_eq!(idem.len(), 2);
        for e in &idem {
            assert_eq!(&a.mul(e, e), e);
        }
        assert!(is_zero_vec(&a.mul(&idem[0], &idem[1])));
        let (b, _) = a.peirce_rebase(&idem, vec!["1".into(), "2".into()]).unwrap();
        assert_eq!(b.n(), 2);
    }

    #[test]
    fn matrix_algebra_idempotents() {
        // 2x2 matrices with basis E11, E12, E21, E22
        let idx = |i: usize, j: usize| 2 * i + j;
        let mut table = vec![vec![vec![Q::zero(); 4]; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    table[idx(i, j)][idx(j, k)][idx(i, k)] = Q::one();
                }
            }
        }
        let a = Algebra::from_table((0..4).map(|i| format!("E{i}")).collect(), table, qvec(&[1, 0, 0, 1])).unwrap();
        let idem = a.primitive_idempotents().unwrap();
        assert_eq!(idem.len(), 2);
        assert_eq!(a.jacobson_radical().dim(), 0);
    }

    #[test]
    fn path_algebra_certificate() {
        let a2 = from_quiver(&Quiver::linear(2), 8).unwrap();
        let q = a2.certify_path_algebra().unwrap();
        assert_eq!(q.arrows.len(), 1);
        let bound = from_quiver(&Quiver::linear(3).with_relations(&["a1*a2"]), 8).unwrap();
        assert!(bound.certify_path_algebra().is_none());
    }
}
