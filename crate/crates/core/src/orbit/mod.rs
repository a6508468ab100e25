//! Quantization of maximal semisimple orbits: the invariant subalgebra of
//! `(Sg)_{t,h}`, its centrality, the character `λ` and the quotient family
//! `A_{t,h}`.
//!
//! Membership questions at symbolic `t` are settled at `t = 1`: the
//! relations are homogeneous when `t` has degree one and the algebra is flat
//! over `Q(q)[t]`, so a homogeneous element of degree `d` lies in the ideal
//! iff its value at `t = 1` lies in the ideal slice of `F_d`.

use std::fmt;

use rayon::prelude::*;

use crate::cert::{binomial, GradedCert};
use crate::error::{Error, Result};
use crate::graded::{graded_dim, ideal_rows, intersection_component, offsets, FilteredRelations, GradedContext};
use crate::linalg::{row_axpy, row_kron, row_scale, Echelon, ExactMatrix, SparseRow, Subspace};
use crate::qlie::structure_constants;
use crate::rep::Gen;
use crate::scalars::{rat, BigRat, RatFunc};

/// A regular semisimple orbit through `diag(eigenvalues)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSpec {
    pub n: usize,
    pub eigenvalues: Vec<BigRat>,
}

impl OrbitSpec {
    pub fn new(n: usize, eigenvalues: Vec<BigRat>) -> Result<Self> {
        if eigenvalues.len() != n {
            return Err(Error::Config(format!("expected {n} eigenvalues, got {}", eigenvalues.len())));
        }
        let sum = eigenvalues.iter().fold(rat(0, 1), |a, b| a + b);
        if sum != rat(0, 1) {
            return Err(Error::Config("eigenvalues must sum to zero".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if eigenvalues[i] == eigenvalues[j] {
                    return Err(Error::Config("eigenvalues must be distinct".into()));
                }
            }
        }
        Ok(OrbitSpec { n, eigenvalues })
    }

    /// `tr(M^j)`.
    pub fn power_sum(&self, j: usize) -> BigRat {
        self.eigenvalues.iter().fold(rat(0, 1), |acc, e| acc + num_traits::pow(e.clone(), j))
    }

    pub fn point(&self) -> ExactMatrix {
        ExactMatrix::diagonal(&self.eigenvalues.iter().map(RatFunc::from_rat).collect::<Vec<_>>())
    }
}

/// A `(t, q)` specialization of the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Specialization {
    /// `t = t0`, `q = 1`.
    AtOne(u8),
    /// `t = t0`, `q` generic.
    Generic(u8),
    /// `t` symbolic, `q = 1`.
    SymbolicT,
}

impl Specialization {
    pub const STANDARD: [Specialization; 4] =
        [Specialization::AtOne(0), Specialization::AtOne(1), Specialization::Generic(0), Specialization::Generic(1)];
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Specialization::AtOne(t) => write!(f, "t{t}.q1"),
            Specialization::Generic(t) => write!(f, "t{t}.qgen"),
            Specialization::SymbolicT => write!(f, "tsym.q1"),
        }
    }
}

/// `λ` on the generators `u_j` (lifts of `tr(X^j)`), and its value on the
/// saturated basis of every `I^k`.
#[derive(Clone, Debug)]
pub struct CharacterData {
    pub generator_values: Vec<(usize, BigRat)>,
    pub basis_values: Vec<Vec<RatFunc>>,
}

/// Degree components `I^k ⊂ W^k ⊂ L^{⊗k}` with the power-sum generators.
pub struct InvariantAlgebra {
    pub max_degree: usize,
    pub components: Vec<Subspace>,
    /// Saturated bases at `q = 1`, per degree.
    pub bases: Vec<Vec<SparseRow>>,
    /// `(j, u_j)` with `u_j|_{q=1} = p_j`.
    pub generators: Vec<(usize, SparseRow)>,
    /// Values `e_a(M)` pair with the coordinate functions through this
    /// matrix basis.
    pairing: Vec<ExactMatrix>,
    classical_power_sums: Vec<SparseRow>,
}

/// Everything the orbit certificates share.
pub struct OrbitContext<'a> {
    pub g: &'a GradedContext,
    pub spec: OrbitSpec,
    pub inv: InvariantAlgebra,
    pub character: CharacterData,
}

fn one() -> BigRat {
    rat(1, 1)
}

fn tr(m: &ExactMatrix) -> RatFunc {
    crate::graded::trace(m)
}

/// `Σ_σ c_{σ(a)}` over index tuples of `L^{⊗k}`, divided by `k!`.
fn symmetrize(row: &SparseRow, nl: usize, k: usize) -> SparseRow {
    let perms = permutations(k);
    let scale = RatFunc::from_rat(&rat(1, perms.len() as i64));
    let dims = vec![nl; k];
    let mut acc: SparseRow = Vec::new();
    for p in &perms {
        let map = crate::linalg::leg_permutation(&dims, p);
        let mut moved: SparseRow = row.iter().map(|(i, v)| (map[*i], v.clone())).collect();
        moved.sort_by_key(|x| x.0);
        acc = row_axpy(&acc, &scale, &moved);
    }
    acc
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// `Σ tr(Y_{a_1}⋯Y_{a_k}) e_{a_1}⊗⋯⊗e_{a_k}`, symmetrized.
fn trace_tensor(ys: &[ExactMatrix], k: usize) -> SparseRow {
    let nl = ys.len();
    let n = ys[0].rows();
    let mut row = Vec::new();
    let mut prods: Vec<ExactMatrix> = vec![ExactMatrix::identity(n)];
    for _ in 0..k {
        prods = prods.iter().flat_map(|p| ys.iter().map(move |y| p.mul(y))).collect();
    }
    for (i, p) in prods.iter().enumerate() {
        let t = tr(p);
        if !t.is_zero() {
            row.push((i, t));
        }
    }
    symmetrize(&row, nl, k)
}

/// Value of a tensor on `L^{⊗k}` at the point with coordinates `v`.
fn evaluate(row: &SparseRow, v: &[RatFunc], k: usize) -> RatFunc {
    let nl = v.len();
    let mut acc = RatFunc::zero();
    for (idx, c) in row {
        let mut term = c.clone();
        let mut i = *idx;
        for _ in 0..k {
            term = RatFunc::mul(&term, &v[i % nl]);
            i /= nl;
        }
        acc = RatFunc::add(&acc, &term);
    }
    acc
}

/// Classical Hilbert series coefficients of `Π_{j=2..n} 1/(1 − s^j)`.
pub fn classical_invariant_dims(n: usize, d: usize) -> Vec<u64> {
    let mut c = vec![0u64; d + 1];
    c[0] = 1;
    for j in 2..=n {
        for k in j..=d {
            c[k] += c[k - j];
        }
    }
    c
}

/// Harmonic Hilbert function `Π_{j=2..n}(1 − s^j) / (1 − s)^{n²−1}`.
pub fn harmonic_dims(n: usize, d: usize) -> Vec<i128> {
    let nl = (n * n - 1) as u64;
    let mut c: Vec<i128> = (0..=d).map(|k| binomial(nl + k as u64 - 1, k as u64) as i128).collect();
    for j in 2..=n {
        for k in (j..=d).rev() {
            c[k] -= c[k - j];
        }
    }
    c
}

impl InvariantAlgebra {
    pub fn new(g: &GradedContext, max_degree: usize) -> Result<Self> {
        let nl = g.dim_l();
        let n = g.ql.data.n;
        let comps: Vec<Subspace> = (0..=max_degree).into_par_iter().map(|k| g.invariant_component(k)).collect();
        let bases: Vec<Vec<SparseRow>> = comps.iter().map(|c| c.saturated_rows(&one())).collect::<Result<_>>()?;
        // Classical matrices of the generators and their trace-dual basis.
        let real = g.ql.realize_power(1)?;
        let xs: Vec<ExactMatrix> = real.x.iter().map(|x| x.eval_at(&one())).collect::<Result<_>>()?;
        let gram = ExactMatrix::from_dense((0..nl).map(|a| (0..nl).map(|b| tr(&xs[a].mul(&xs[b]))).collect()).collect());
        let gi = crate::linalg::inverse(&gram)?;
        let duals: Vec<ExactMatrix> = (0..nl)
            .map(|a| (0..nl).fold(ExactMatrix::zeros(n, n), |acc, b| acc.axpy(&gi.get(b, a), &xs[b])))
            .collect();
        // The coordinate functions are either the generators or their duals;
        // the invariant power sum decides.
        let limit2 = if max_degree >= 2 { Some(comps[2].limit_at(&one())?) } else { None };
        let (upper, pairing) = match &limit2 {
            Some(l) if !l.contains(&trace_tensor(&duals, 2)) && l.contains(&trace_tensor(&xs, 2)) => (xs.clone(), duals.clone()),
            _ => (duals.clone(), xs.clone()),
        };
        let mut generators = Vec::new();
        let mut classical = vec![Vec::new(); max_degree + 1];
        for j in 2..=n.min(max_degree) {
            let p = trace_tensor(&upper, j);
            let basis = &bases[j];
            let vals: Vec<SparseRow> = basis.iter().map(|r| crate::linalg::eval_row_at(r, &one())).collect::<Result<_>>()?;
            let lim = ExactMatrix::from_rows(nl.pow(j as u32), vals).transpose();
            let coeffs = crate::rep::coords_in_columns(&lim, &ExactMatrix::from_rows(nl.pow(j as u32), vec![p.clone()]).transpose())
                .map_err(|_| Error::Construction(format!("power sum of degree {j} is not a limit of invariants")))?;
            let mut u = Vec::new();
            for (i, b) in basis.iter().enumerate() {
                u = row_axpy(&u, &coeffs.get(i, 0), b);
            }
            generators.push((j, u));
            classical[j] = p;
        }
        Ok(InvariantAlgebra { max_degree, components: comps, bases, generators, pairing, classical_power_sums: classical })
    }

    pub fn hilbert(&self) -> Vec<usize> {
        self.components.iter().map(Subspace::dim).collect()
    }

    /// `e_a(M) = tr(P_a M)`.
    pub fn coordinates_at(&self, m: &ExactMatrix) -> Vec<RatFunc> {
        self.pairing.iter().map(|p| tr(&p.mul(m))).collect()
    }
}

/// Specialized relation data for `(Sg)_{t,h}` and the power-sum generators.
struct Specialized {
    rels: FilteredRelations,
    gens: Vec<(usize, SparseRow)>,
}

fn specialized(g: &GradedContext, inv: &InvariantAlgebra, s: Specialization) -> Result<Specialized> {
    let nl = g.dim_l();
    let a = ExactMatrix::identity(nl * nl).sub(&g.ql.data.sigma);
    let b = &g.ql.data.bracket;
    let at_one = |m: &ExactMatrix| m.eval_at(&one());
    let spec_row = |r: &SparseRow| crate::linalg::eval_row_at(r, &one());
    Ok(match s {
        Specialization::Generic(t) => Specialized {
            rels: FilteredRelations::new(&a, b, &RatFunc::from_int(t as i64), nl),
            gens: inv.generators.clone(),
        },
        Specialization::AtOne(t) => Specialized {
            rels: FilteredRelations::new(&at_one(&a)?, &at_one(b)?, &RatFunc::from_int(t as i64), nl),
            gens: inv.generators.iter().map(|(j, u)| Ok((*j, spec_row(u)?))).collect::<Result<_>>()?,
        },
        // The scalar variable stands for `t` once `q = 1`.
        Specialization::SymbolicT => Specialized {
            rels: FilteredRelations::new(&at_one(&a)?, &at_one(b)?, &RatFunc::q(), nl),
            gens: inv.generators.iter().map(|(j, u)| Ok((*j, spec_row(u)?))).collect::<Result<_>>()?,
        },
    })
}

/// Per-degree parts of `u_j − λ(u_j)`.
fn character_extra(gens: &[(usize, SparseRow)], ch: &CharacterData) -> Vec<Vec<SparseRow>> {
    gens.iter()
        .zip(&ch.generator_values)
        .map(|((j, u), (_, val))| {
            let mut parts = vec![Vec::new(); j + 1];
            if *val != rat(0, 1) {
                parts[0] = vec![(0, RatFunc::from_rat(val).neg())];
            }
            parts[*j] = u.clone();
            parts
        })
        .collect()
}

fn echelon_of(rows: &[SparseRow]) -> Echelon {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e
}

/// A row of `L^{⊗k}` placed in `F_d`.
fn place(row: &SparseRow, nl: usize, k: usize, d: usize) -> SparseRow {
    let off = offsets(nl, d)[k];
    row.iter().map(|(i, v)| (i + off, v.clone())).collect()
}

/// `λ`: generator values from the orbit point, checked against the
/// classical evaluation of the limit tensors, then extended to every
/// saturated basis vector of `I^k` by reduction modulo the quotient ideal
/// at `t = 1`, generic `q`.
pub fn build_character(g: &GradedContext, inv: &InvariantAlgebra, spec: &OrbitSpec) -> Result<CharacterData> {
    let point = spec.point();
    let coords = inv.coordinates_at(&point);
    let mut generator_values = Vec::new();
    for (j, _) in &inv.generators {
        let val = spec.power_sum(*j);
        let classical = evaluate(&inv.classical_power_sums[*j], &coords, *j);
        if classical != RatFunc::from_rat(&val) {
            return Err(Error::CharacterInconsistent(format!("power sum of degree {j} evaluates to {classical:?}")));
        }
        generator_values.push((*j, val));
    }
    let mut ch = CharacterData { generator_values, basis_values: Vec::new() };
    let nl = g.dim_l();
    let d = inv.max_degree;
    let sp = specialized(g, inv, Specialization::Generic(1))?;
    let ech = echelon_of(&ideal_rows(&sp.rels, &character_extra(&sp.gens, &ch), d));
    let unit = ech.reduce(&vec![(0, RatFunc::one())]);
    if unit.is_empty() {
        return Err(Error::CharacterInconsistent("the unit lies in the ideal".into()));
    }
    let (piv, uval) = unit[0].clone();
    let mut basis_values = Vec::new();
    for (k, basis) in inv.bases.iter().enumerate() {
        let mut vals = Vec::new();
        for u in basis {
            let r = ech.reduce(&place(u, nl, k, d));
            let c = if r.is_empty() {
                RatFunc::zero()
            } else if r.len() == unit.len() && r[0].0 == piv {
                RatFunc::div(&r[0].1, &uval)?
            } else {
                return Err(Error::CharacterInconsistent(format!("invariant of degree {k} does not reduce to a scalar")));
            };
            if row_axpy(&r, &c.neg(), &unit).is_empty() {
                vals.push(c);
            } else {
                return Err(Error::CharacterInconsistent(format!("invariant of degree {k} does not reduce to a scalar")));
            }
        }
        basis_values.push(vals);
    }
    ch.basis_values = basis_values;
    Ok(ch)
}

impl<'a> OrbitContext<'a> {
    pub fn new(g: &'a GradedContext, spec: OrbitSpec, max_degree: usize) -> Result<Self> {
        if spec.n != g.ql.data.n {
            return Err(Error::Config("orbit rank differs from the algebra rank".into()));
        }
        let inv = InvariantAlgebra::new(g, max_degree)?;
        let character = build_character(g, &inv, &spec)?;
        Ok(OrbitContext { g, spec, inv, character })
    }

    fn nl(&self) -> usize {
        self.g.dim_l()
    }

    /// Invariant Hilbert function and the closure of products.
    pub fn invariant_certs(&self) -> Result<Vec<GradedCert>> {
        let d = self.inv.max_degree;
        let nl = self.nl();
        let want = classical_invariant_dims(self.spec.n, d);
        let mut out: Vec<GradedCert> =
            self.inv.hilbert().iter().enumerate().map(|(k, h)| GradedCert::new("orbit.invariant_hilbert", k, want[k], *h as u64)).collect();
        let sp = specialized(self.g, &self.inv, Specialization::Generic(1))?;
        for total in 2..=d {
            let mut rows = ideal_rows(&sp.rels, &[], total);
            for k in 0..=total {
                rows.extend(self.inv.bases[k].iter().map(|b| place(b, nl, k, total)));
            }
            let ech = echelon_of(&rows);
            let mut bad = 0;
            for i in 2..total {
                let j = total - i;
                for u in &self.inv.bases[i] {
                    for v in &self.inv.bases[j] {
                        let prod = place(&row_kron(u, v, nl.pow(j as u32)), nl, total, total);
                        bad += usize::from(!ech.reduce(&prod).is_empty());
                    }
                }
            }
            out.push(GradedCert::zero("orbit.invariant_closure", total, bad));
        }
        // Trivial action: E, F act by 0 and K, K⁻¹ by 1.
        for k in 0..=d {
            let m = self.g.tensor_power(k);
            let mut bad = 0;
            for (gen, _, x) in m.generators() {
                for u in &self.inv.bases[k] {
                    let img = x.apply(u);
                    let want = match gen {
                        Gen::E | Gen::F => Vec::new(),
                        Gen::K | Gen::KInv => u.clone(),
                    };
                    bad += usize::from(img != want);
                }
            }
            out.push(GradedCert::zero("orbit.invariants_trivial_action", k, bad));
        }
        Ok(out)
    }

    /// `u x − x u` vanishes in `(Sg)_{t,h}` for every invariant basis vector
    /// `u` of degree `≤ D − 1` and generator `x`; checked at `t = 1` (symbolic
    /// `t` by homogeneity) and at `t = 0`.
    pub fn centrality_cert(&self) -> Result<Vec<GradedCert>> {
        let d = self.inv.max_degree;
        let nl = self.nl();
        let mut out = Vec::new();
        for t in [1u8, 0] {
            let sp = specialized(self.g, &self.inv, Specialization::Generic(t))?;
            for j in 1..d {
                let e = echelon_of(&ideal_rows(&sp.rels, &[], j + 1));
                let mut bad = 0;
                for u in &self.inv.bases[j] {
                    for a in 0..nl {
                        let x = vec![(a, RatFunc::one())];
                        let ux = row_kron(u, &x, nl);
                        let xu = row_kron(&x, u, nl.pow(j as u32));
                        let c = row_axpy(&ux, &RatFunc::from_int(-1), &xu);
                        bad += usize::from(!e.reduce(&place(&c, nl, j + 1, j + 1)).is_empty());
                    }
                }
                out.push(GradedCert::zero(format!("orbit.centrality.t{}", if t == 1 { "sym" } else { "0" }), j, bad));
            }
        }
        Ok(out)
    }

    /// `dim S^k = Σ_j dim I^j · dim H^{k−j}` with the classical harmonics.
    pub fn freeness_evidence(&self) -> Vec<GradedCert> {
        let d = self.inv.max_degree;
        let nl = self.nl();
        let h = harmonic_dims(self.spec.n, d);
        let inv = self.inv.hilbert();
        (0..=d)
            .map(|k| {
                let s = graded_dim(&self.g.v2, nl, k) as u64;
                let conv: i128 = (0..=k).map(|j| inv[j] as i128 * h[k - j]).sum();
                GradedCert::new("orbit.freeness_hilbert", k, s, conv.max(0) as u64)
            })
            .collect()
    }

    /// Character values on the generators against the orbit point, and
    /// `λ(uv) = λ(u)λ(v)` on basis products within degree `D`.
    pub fn character_certs(&self) -> Result<Vec<GradedCert>> {
        let mut out = Vec::new();
        for (j, v) in &self.character.generator_values {
            out.push(GradedCert::holds("orbit.character.classical_value", *j, *v == self.spec.power_sum(*j)));
        }
        let d = self.inv.max_degree;
        let nl = self.nl();
        let sp = specialized(self.g, &self.inv, Specialization::Generic(1))?;
        let ech = echelon_of(&ideal_rows(&sp.rels, &character_extra(&sp.gens, &self.character), d));
        let bv = &self.character.basis_values;
        let mut bad = 0;
        for i in 1..=d {
            for j in 1..=d - i {
                for (ui, u) in self.inv.bases[i].iter().enumerate() {
                    for (vi, v) in self.inv.bases[j].iter().enumerate() {
                        let prod = place(&row_kron(u, v, nl.pow(j as u32)), nl, i + j, d);
                        let lam = RatFunc::mul(&bv[i][ui], &bv[j][vi]);
                        let diff = row_axpy(&prod, &RatFunc::neg(&lam), &vec![(0, RatFunc::one())]);
                        bad += usize::from(!ech.reduce(&diff).is_empty());
                    }
                }
            }
        }
        out.push(GradedCert::zero("orbit.character.multiplicative", d, bad));
        Ok(out)
    }

    /// Filtered dims of `A_{t,h}` at a specialization.
    pub fn quotient_dims(&self, s: Specialization) -> Result<Vec<usize>> {
        let sp = specialized(self.g, &self.inv, s)?;
        Ok(crate::graded::filtered_dims(&sp.rels, &character_extra(&sp.gens, &self.character), self.inv.max_degree))
    }

    /// Quotient filtered dims against `Σ_{k'≤k} H(k')` at each specialization.
    pub fn quotient_cert(&self, max_d: usize, specs: &[Specialization]) -> Result<Vec<GradedCert>> {
        let h = harmonic_dims(self.spec.n, max_d);
        let dims: Vec<Vec<usize>> = specs.par_iter().map(|s| self.quotient_dims(*s)).collect::<Result<_>>()?;
        let mut out = Vec::new();
        for (s, dv) in specs.iter().zip(&dims) {
            let mut cum = 0i128;
            for k in 0..=max_d.min(self.inv.max_degree) {
                cum += h[k];
                out.push(GradedCert::new(format!("orbit.quotient_filtered_dim.{s}"), k, cum as u64, dv[k] as u64));
            }
        }
        Ok(out)
    }

    /// The ideal slice of `A_{0,0}` equals that of the classical orbit ring
    /// `S(g)/⟨x⊗y − y⊗x, p_j − tr(M^j)⟩`.
    pub fn classical_ring_cert(&self) -> Result<Vec<GradedCert>> {
        let nl = self.nl();
        let d = self.inv.max_degree;
        let sp = specialized(self.g, &self.inv, Specialization::AtOne(0))?;
        let quantum = ideal_rows(&sp.rels, &character_extra(&sp.gens, &self.character), d);
        let flip = crate::rep::flip(nl, nl);
        let id = ExactMatrix::identity(nl * nl);
        let cl_rels = FilteredRelations::new(&id.sub(&flip), &ExactMatrix::zeros(nl, nl * nl), &RatFunc::zero(), nl);
        let cl_gens: Vec<(usize, SparseRow)> = self.inv.generators.iter().map(|(j, _)| (*j, self.inv.classical_power_sums[*j].clone())).collect();
        let classical = ideal_rows(&cl_rels, &character_extra(&cl_gens, &self.character), d);
        let amb = offsets(nl, d)[d + 1];
        let a = Subspace::from_spanning(amb, &quantum);
        let b = Subspace::from_spanning(amb, &classical);
        Ok(vec![
            GradedCert::holds("orbit.a00_equals_classical", d, a == b),
            GradedCert::new("orbit.a00_classical_dim", d, (amb - b.dim()) as u64, (amb - a.dim()) as u64),
        ])
    }

    /// `[x_a, x_b] ≡ t Σ_c f_ab^c x_c` modulo the ideal of `A_{t,h}|_{q=1}` in
    /// `F_2`, symbolic `t`, with `f` the structure constants of the classical
    /// generator matrices.
    pub fn kks_cert(&self) -> Result<GradedCert> {
        let nl = self.nl();
        let sp = specialized(self.g, &self.inv, Specialization::SymbolicT)?;
        let ech = echelon_of(&ideal_rows(&sp.rels, &character_extra(&sp.gens, &self.character), 2));
        let real = self.g.ql.realize_power(1)?;
        let xs: Vec<ExactMatrix> = real.x.iter().map(|x| x.eval_at(&one())).collect::<Result<_>>()?;
        let f = structure_constants(&xs).ok_or_else(|| Error::Construction("classical generators are not a basis".into()))?;
        let ft = f.transpose();
        let t = RatFunc::q();
        let mut bad = 0;
        for a in 0..nl {
            for b in 0..nl {
                let ab = vec![(a * nl + b, RatFunc::one())];
                let ba = vec![(b * nl + a, RatFunc::one())];
                let comm = place(&row_axpy(&ab, &RatFunc::from_int(-1), &ba), nl, 2, 2);
                let lin = place(&row_scale(ft.row(a * nl + b), &t), nl, 1, 2);
                let mut lhs = row_axpy(&comm, &RatFunc::from_int(-1), &lin);
                lhs.sort_by_key(|x| x.0);
                bad += usize::from(!ech.reduce(&lhs).is_empty());
            }
        }
        Ok(GradedCert::zero("orbit.kks_bracket", 1, bad))
    }

    /// `⊕_{k≤d} W^k → F_d/J_d` (t = 1, generic q) is injective with image
    /// everything, per degree.
    pub fn w_isomorphism_cert(&self) -> Result<Vec<GradedCert>> {
        let nl = self.nl();
        let d = self.inv.max_degree;
        let sp = specialized(self.g, &self.inv, Specialization::Generic(1))?;
        (0..=d)
            .into_par_iter()
            .map(|k| {
                let rows = ideal_rows(&sp.rels, &[], k);
                let mut e = echelon_of(&rows);
                let jr = e.rank();
                let mut wdim = 0;
                for i in 0..=k {
                    let w = intersection_component(&self.g.w2.space, nl, i);
                    wdim += w.dim();
                    for b in w.basis_rows() {
                        e.insert(&place(b, nl, i, k));
                    }
                }
                let total = offsets(nl, k)[k + 1];
                Ok(vec![
                    GradedCert::new("orbit.w_realization_injective", k, wdim as u64, (e.rank() - jr) as u64),
                    GradedCert::new("orbit.w_realization_surjective", k, (total - jr) as u64, wdim as u64),
                ])
            })
            .collect::<Result<Vec<_>>>()
            .map(|v| v.into_iter().flatten().collect())
    }

    /// All orbit certificates, quotient dims up to `quot_d`.
    pub fn all_certs(&self, quot_d: usize, specs: &[Specialization]) -> Result<Vec<GradedCert>> {
        let mut out = self.invariant_certs()?;
        out.extend(self.centrality_cert()?);
        out.extend(self.freeness_evidence());
        out.extend(self.character_certs()?);
        out.extend(self.quotient_cert(quot_d, specs)?);
        out.extend(self.classical_ring_cert()?);
        out.push(self.kks_cert()?);
        out.extend(self.w_isomorphism_cert()?);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series() {
        assert_eq!(classical_invariant_dims(2, 4), vec![1, 0, 1, 0, 1]);
        assert_eq!(classical_invariant_dims(3, 3), vec![1, 0, 1, 1]);
        assert_eq!(harmonic_dims(2, 3), vec![1, 3, 5, 7]);
        assert_eq!(harmonic_dims(3, 3), vec![1, 8, 35, 111]);
    }

    #[test]
    fn orbit_validation() {
        assert!(OrbitSpec::new(2, vec![rat(1, 1), rat(-1, 1)]).is_ok());
        assert!(OrbitSpec::new(2, vec![rat(1, 1), rat(1, 1)]).is_err());
        assert!(OrbitSpec::new(2, vec![rat(1, 1), rat(0, 1)]).is_err());
        assert_eq!(OrbitSpec::new(2, vec![rat(1, 1), rat(-1, 1)]).unwrap().power_sum(2), rat(2, 1));
    }
}
