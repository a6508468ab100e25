//! The quantum de Rham complex `(Sg)_h ⊗ (Λg)_h`: symmetric and
//! antisymmetric parts of `T(L)`, their bijections with the quotient
//! algebras, the braided product and the differential.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::cert::{binomial, GradedCert};
use crate::error::{Error, Result};
use crate::graded::{ideal_component, intersection_component, GradedContext};
use crate::linalg::{rank, row_axpy, DirectSum, ExactMatrix, SparseRow, Subspace};
use crate::rep::{embed13, flip, RepAction};
use crate::scalars::RatFunc;

/// Symmetric (`W`) or antisymmetric (`V`) part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    W,
    V,
}

/// `W^k` or `V^k` inside `L^{⊗k}`, with the splitting of `L^{⊗k}` into it
/// and the degree-`k` relation ideal of the matching quotient algebra.
#[derive(Clone, Debug)]
pub struct RealizedComponent {
    pub kind: Kind,
    pub degree: usize,
    pub space: Subspace,
    pub ideal: Subspace,
    split: DirectSum,
}

impl RealizedComponent {
    /// Projection onto `space` along `ideal` (`π' ∘ π`).
    pub fn project(&self, v: &SparseRow) -> SparseRow {
        self.split.component(v, 0)
    }

    /// `π`: coordinates in the basis of `space` of the class of `v`.
    pub fn proj_coords(&self, v: &SparseRow) -> Vec<RatFunc> {
        self.split.part_coords(v, 0)
    }

    /// Matrix of `π`: `L^{⊗k} →` algebra component (in `space` coordinates).
    pub fn proj(&self) -> ExactMatrix {
        let amb = self.space.ambient();
        let cols: Vec<Vec<RatFunc>> = (0..amb).map(|i| self.proj_coords(&vec![(i, RatFunc::one())])).collect();
        ExactMatrix::from_dense(cols).transpose()
    }

    /// Matrix of `π'`: the inclusion of the basis of `space`.
    pub fn proj_inv(&self) -> ExactMatrix {
        self.space.basis().transpose()
    }
}

/// An element of `(Ωg)_h` of bidegree `(k, m)`, stored as a tensor in
/// `W^k ⊗ V^m ⊂ L^{⊗(k+m)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaElement {
    pub k: usize,
    pub m: usize,
    pub coords: SparseRow,
}

impl OmegaElement {
    pub fn unit() -> Self {
        OmegaElement { k: 0, m: 0, coords: vec![(0, RatFunc::one())] }
    }
}

/// Relation data for `T(L)/⟨V²⟩` and `T(L)/⟨W²⟩` with cached components.
pub struct DeRham {
    pub nl: usize,
    pub v2: Subspace,
    pub w2: Subspace,
    pub module: Option<RepAction>,
    r_ll: Option<ExactMatrix>,
    comps: Mutex<HashMap<(Kind, usize), Arc<RealizedComponent>>>,
    fused: Mutex<HashMap<(usize, usize), Arc<ExactMatrix>>>,
    diffs: Mutex<HashMap<(usize, usize), (Arc<ExactMatrix>, usize)>>,
}

impl DeRham {
    pub fn new(nl: usize, v2: Subspace, w2: Subspace, module: Option<RepAction>, r_ll: Option<ExactMatrix>) -> Self {
        DeRham { nl, v2, w2, module, r_ll, comps: Mutex::new(HashMap::new()), fused: Mutex::new(HashMap::new()), diffs: Mutex::new(HashMap::new()) }
    }

    /// The quantum complex built on a graded context.
    pub fn quantum(g: &GradedContext) -> Result<Self> {
        let r = crate::graded::r_on_lie(&g.ql)?;
        Ok(Self::new(g.dim_l(), g.v2.clone(), g.w2.space.clone(), Some(g.ql.data.module.clone()), Some(r)))
    }

    /// The classical complex: `V² = Λ²`, `W² = S²`, `R = 1`.
    pub fn classical(nl: usize) -> Self {
        let p = flip(nl, nl);
        let id = ExactMatrix::identity(nl * nl);
        let v2 = Subspace::column_space(&id.sub(&p));
        let w2 = Subspace::column_space(&id.add(&p));
        Self::new(nl, v2, w2, None, Some(id))
    }

    /// `W^k` (kind `W`) or `V^k` (kind `V`).
    pub fn component(&self, kind: Kind, k: usize) -> Result<Arc<RealizedComponent>> {
        if let Some(c) = self.comps.lock().unwrap().get(&(kind, k)) {
            return Ok(c.clone());
        }
        let (part, rel) = match kind {
            Kind::W => (&self.w2, &self.v2),
            Kind::V => (&self.v2, &self.w2),
        };
        let space = intersection_component(part, self.nl, k);
        let ideal = ideal_component(rel, self.nl, k);
        let split = DirectSum::new(&[&space, &ideal])?;
        let c = Arc::new(RealizedComponent { kind, degree: k, space, ideal, split });
        self.comps.lock().unwrap().insert((kind, k), c.clone());
        Ok(c)
    }

    pub fn symmetric_part(&self, k: usize) -> Result<Arc<RealizedComponent>> {
        self.component(Kind::W, k)
    }

    pub fn antisymmetric_part(&self, m: usize) -> Result<Arc<RealizedComponent>> {
        self.component(Kind::V, m)
    }

    /// `W^k ⊗ V^m` inside `L^{⊗(k+m)}`.
    pub fn omega_space(&self, k: usize, m: usize) -> Result<Subspace> {
        Ok(self.symmetric_part(k)?.space.kron(&self.antisymmetric_part(m)?.space))
    }

    /// Applies `g` to the last `tail` legs of each slice of a tensor on
    /// `L^{⊗(head + tail)}`.
    fn on_tail(&self, v: &SparseRow, tail: usize, g: impl Fn(&SparseRow) -> SparseRow) -> SparseRow {
        let dt = self.nl.pow(tail as u32);
        let mut slices: std::collections::BTreeMap<usize, SparseRow> = Default::default();
        for (j, x) in v {
            slices.entry(j / dt).or_default().push((j % dt, x.clone()));
        }
        let mut out = Vec::new();
        for (head, s) in slices {
            out.extend(g(&s).into_iter().map(|(j, x)| (head * dt + j, x)));
        }
        out
    }

    /// `d(a⊗ω) = a₁⊗…⊗a_{k−1} ⊗ π'_V π_V(a_k⊗ω)` as a tensor map
    /// `L^{⊗(k+m)} → L^{⊗(k+m)}`.
    pub fn d_tensor(&self, v: &SparseRow, m: usize) -> Result<SparseRow> {
        let vc = self.antisymmetric_part(m + 1)?;
        Ok(self.on_tail(v, m + 1, |s| vc.project(s)))
    }

    /// Matrix of `d` from `W^k⊗V^m` to `W^{k−1}⊗V^{m+1}` (RREF bases) and the
    /// number of basis images that left the target and went through the
    /// fallback projection of the `W` leg.
    pub fn differential(&self, k: usize, m: usize) -> Result<(Arc<ExactMatrix>, usize)> {
        if let Some(d) = self.diffs.lock().unwrap().get(&(k, m)) {
            return Ok(d.clone());
        }
        let d = self.build_differential(k, m)?;
        let d = (Arc::new(d.0), d.1);
        self.diffs.lock().unwrap().insert((k, m), d.clone());
        Ok(d)
    }

    fn build_differential(&self, k: usize, m: usize) -> Result<(ExactMatrix, usize)> {
        if k == 0 {
            return Err(Error::Construction("differential needs k ≥ 1".into()));
        }
        let src = self.omega_space(k, m)?;
        let tgt = self.omega_space(k - 1, m + 1)?;
        let wk1 = self.symmetric_part(k - 1)?;
        let mut escapes = 0;
        let mut cols = Vec::with_capacity(src.dim());
        let images: Vec<SparseRow> = src.basis_rows().par_iter().map(|b| self.d_tensor(b, m)).collect::<Result<_>>()?;
        for img in images {
            let c = match tgt.coords(&img) {
                Some(c) => c,
                None => {
                    escapes += 1;
                    // Fallback: project the W leg.
                    let fixed = self.on_head(&img, k - 1, m + 1, |s| wk1.project(s));
                    tgt.coords(&fixed).ok_or_else(|| Error::Construction("fallback projection failed".into()))?
                }
            };
            cols.push(c);
        }
        let mat = if cols.is_empty() {
            ExactMatrix::zeros(tgt.dim(), 0)
        } else {
            ExactMatrix::from_dense(cols).transpose()
        };
        Ok((mat, escapes))
    }

    fn on_head(&self, v: &SparseRow, head: usize, tail: usize, g: impl Fn(&SparseRow) -> SparseRow) -> SparseRow {
        let _ = head;
        let dt = self.nl.pow(tail as u32);
        let mut slices: std::collections::BTreeMap<usize, SparseRow> = Default::default();
        for (j, x) in v {
            slices.entry(j % dt).or_default().push((j / dt, x.clone()));
        }
        let mut trips = Vec::new();
        for (t, s) in slices {
            let mut s = s;
            s.sort_by_key(|x| x.0);
            for (h, x) in g(&s) {
                trips.push((h * dt + t, x));
            }
        }
        trips.sort_by_key(|x| x.0);
        trips
    }

    /// `R_{L^{⊗a}, L^{⊗b}}` by fusion of `R_{L,L}`.
    pub fn fused(&self, a: usize, b: usize) -> Result<Arc<ExactMatrix>> {
        if let Some(m) = self.fused.lock().unwrap().get(&(a, b)) {
            return Ok(m.clone());
        }
        let r = self.r_ll.as_ref().ok_or_else(|| Error::Construction("no R-matrix on L".into()))?;
        let nl = self.nl;
        let d = |k: usize| nl.pow(k as u32);
        let m = if a == 0 || b == 0 {
            ExactMatrix::identity(d(a) * d(b))
        } else if a > 1 {
            let r13 = embed13(&*self.fused(1, b)?, nl, d(a - 1), d(b));
            let r23 = ExactMatrix::identity(nl).kron(&*self.fused(a - 1, b)?);
            r13.mul(&r23)
        } else if b > 1 {
            let r13 = embed13(&*self.fused(1, b - 1)?, nl, nl, d(b - 1));
            let r12 = self.fused(1, 1)?.kron(&ExactMatrix::identity(d(b - 1)));
            r13.mul(&r12)
        } else {
            r.clone()
        };
        let m = Arc::new(m);
        self.fused.lock().unwrap().insert((a, b), m.clone());
        Ok(m)
    }

    /// `(a⊗α)(b⊗β) = π_W(a⊗b₁) ⊗ π_V(α₁⊗β)` with `b₁⊗α₁ = S(α⊗b)`,
    /// `S = τ R_{L^{⊗m}, L^{⊗k'}}`.
    pub fn braided_product(&self, x: &OmegaElement, y: &OmegaElement) -> Result<OmegaElement> {
        let nl = self.nl;
        let d = |k: usize| nl.pow(k as u32);
        let (k1, m1, k2, m2) = (x.k, x.m, y.k, y.m);
        let xy = crate::linalg::row_kron(&x.coords, &y.coords, d(k2 + m2));
        let s = flip(d(m1), d(k2)).mul(&*self.fused(m1, k2)?);
        let mid = ExactMatrix::identity(d(k1)).kron(&s).kron(&ExactMatrix::identity(d(m2)));
        let swapped = mid.apply(&xy);
        let wc = self.symmetric_part(k1 + k2)?;
        let vc = self.antisymmetric_part(m1 + m2)?;
        let tail = self.on_tail(&swapped, m1 + m2, |s| vc.project(s));
        let both = self.on_head(&tail, k1 + k2, m1 + m2, |s| wc.project(s));
        Ok(OmegaElement { k: k1 + k2, m: m1 + m2, coords: both })
    }

    /// Basis of `Ω^{k,m}` as elements.
    pub fn omega_basis(&self, k: usize, m: usize) -> Result<Vec<OmegaElement>> {
        Ok(self.omega_space(k, m)?.basis_rows().iter().map(|r| OmegaElement { k, m, coords: r.clone() }).collect())
    }
}

/// `d² = 0` from every bidegree `(k, m)` with `2 ≤ k ≤ k_max`, `m ≤ m_max`.
pub fn d_squared_cert(dr: &DeRham, k_max: usize, m_max: usize) -> Result<Vec<GradedCert>> {
    let mut out = Vec::new();
    for k in 2..=k_max {
        for m in 0..=m_max {
            let (d1, _) = dr.differential(k, m)?;
            let (d2, _) = dr.differential(k - 1, m + 1)?;
            let comp = d2.mul(&d1);
            out.push(GradedCert::zero(format!("derham.d_squared.m{m}"), k, comp.nnz()));
        }
    }
    Ok(out)
}

/// Membership of `d`'s image in `W^{k−1}⊗V^{m+1}` and exactness at every
/// bidegree `(k, m)` with `k ≤ k_max`, `m ≤ m_max`:
/// `dim ker d_{k,m} = rank d_{k+1,m−1}`, except `H^{0,0} = 1`.
pub fn exactness_cert(dr: &DeRham, k_max: usize, m_max: usize) -> Result<Vec<GradedCert>> {
    let mut ranks: HashMap<(usize, usize), usize> = HashMap::new();
    let mut out = Vec::new();
    let mut bideg = Vec::new();
    for k in 1..=k_max + 1 {
        for m in 0..=m_max {
            bideg.push((k, m));
        }
    }
    let mats: Vec<(usize, usize)> = bideg
        .par_iter()
        .map(|&(k, m)| dr.differential(k, m).map(|(d, esc)| (rank(&d), esc)))
        .collect::<Result<_>>()?;
    for (&(k, m), &(r, esc)) in bideg.iter().zip(&mats) {
        ranks.insert((k, m), r);
        if k <= k_max {
            out.push(GradedCert::zero(format!("derham.d_image_in_target.m{m}"), k, esc));
        }
    }
    for k in 0..=k_max {
        for m in 0..=m_max {
            let dim = dr.omega_space(k, m)?.dim();
            let ker = dim - ranks.get(&(k, m)).copied().unwrap_or(0);
            let im = if m >= 1 { ranks[&(k + 1, m - 1)] } else { 0 };
            let expected = u64::from(k == 0 && m == 0);
            out.push(GradedCert::new(format!("derham.cohomology.m{m}"), k, expected, (ker - im) as u64));
        }
    }
    Ok(out)
}

/// `π'_V π_V` on `L^{⊗m}` at `q = 1` equals the classical projection onto
/// antisymmetric tensors along the symmetric ideal, so `d|_{q=1}` is the
/// classical differential.
pub fn classical_limit_cert(dr: &DeRham, m_max: usize) -> Result<Vec<GradedCert>> {
    let cl = DeRham::classical(dr.nl);
    let one = crate::scalars::rat(1, 1);
    let mut out = Vec::new();
    for m in 1..=m_max {
        let amb = dr.nl.pow(m as u32);
        let proj = |d: &DeRham| -> Result<ExactMatrix> {
            let c = d.antisymmetric_part(m)?;
            let cols: Vec<SparseRow> = (0..amb).map(|i| c.project(&vec![(i, RatFunc::one())])).collect();
            let trips = cols.into_iter().enumerate().flat_map(|(j, col)| col.into_iter().map(move |(i, x)| (i, j, x)));
            Ok(ExactMatrix::from_triplets(amb, amb, trips))
        };
        let diff = proj(dr)?.eval_at(&one)?.sub(&proj(&cl)?);
        out.push(GradedCert::zero("derham.projection_classical_limit", m, diff.nnz()));
    }
    Ok(out)
}

/// Graded dimension certificates of `W^k` and `V^m` and directness of the
/// splittings `L^{⊗k} = W^k ⊕ I_k`, `L^{⊗k} = V^k ⊕ J_k`.
pub fn component_certs(dr: &DeRham, max: usize) -> Result<Vec<GradedCert>> {
    let nl = dr.nl as u64;
    let mut out = Vec::new();
    for k in 0..=max {
        let w = dr.symmetric_part(k)?;
        let v = dr.antisymmetric_part(k)?;
        out.push(GradedCert::new("derham.w_dim", k, binomial(nl + k as u64 - 1, k as u64), w.space.dim() as u64));
        out.push(GradedCert::new("derham.v_dim", k, binomial(nl, k as u64), v.space.dim() as u64));
        // π ∘ π' = id on the basis.
        let mut bad = 0;
        for c in [&w, &v] {
            for (i, b) in c.space.basis_rows().iter().enumerate() {
                let pc = c.proj_coords(b);
                bad += pc.iter().enumerate().filter(|(j, x)| if *j == i { !x.is_one() } else { !x.is_zero() }).count();
            }
        }
        out.push(GradedCert::zero("derham.bijection", k, bad));
    }
    Ok(out)
}

/// `d` commutes with the action restricted to the realizations.
pub fn equivariance_cert(dr: &DeRham, g: &GradedContext, k: usize, m: usize) -> Result<GradedCert> {
    let (d, _) = dr.differential(k, m)?;
    let src = dr.omega_space(k, m)?;
    let tgt = dr.omega_space(k - 1, m + 1)?;
    let big = g.tensor_power(k + m);
    let mut bad = 0;
    for (_, _, x) in big.generators() {
        let a = src.restrict(x)?;
        let b = tgt.restrict(x)?;
        bad += d.mul(&a).sub(&b.mul(&d)).nnz();
    }
    Ok(GradedCert::zero(format!("derham.d_equivariant.m{m}"), k, bad))
}

/// Associativity of the braided product on all basis triples of total
/// degree `≤ max_total` with every factor of degree `≥ 1`, and the unit.
pub fn associativity_cert(dr: &DeRham, max_total: usize) -> Result<Vec<GradedCert>> {
    let mut by_deg: Vec<Vec<OmegaElement>> = vec![Vec::new(); max_total + 1];
    for p in 1..=max_total {
        for k in 0..=p {
            by_deg[p].extend(dr.omega_basis(k, p - k)?);
        }
    }
    let mut triples = Vec::new();
    for p1 in 1..=max_total {
        for p2 in 1..=max_total {
            for p3 in 1..=max_total {
                if p1 + p2 + p3 <= max_total {
                    for x in &by_deg[p1] {
                        for y in &by_deg[p2] {
                            for z in &by_deg[p3] {
                                triples.push((x, y, z));
                            }
                        }
                    }
                }
            }
        }
    }
    let bad: usize = triples
        .par_iter()
        .map(|(x, y, z)| -> Result<usize> {
            let l = dr.braided_product(&dr.braided_product(x, y)?, z)?;
            let r = dr.braided_product(x, &dr.braided_product(y, z)?)?;
            Ok(row_axpy(&l.coords, &RatFunc::from_int(-1), &r.coords).len())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    let one = OmegaElement::unit();
    let mut unit_bad = 0;
    for p in 1..=max_total {
        for x in &by_deg[p] {
            unit_bad += usize::from(dr.braided_product(&one, x)? != *x);
            unit_bad += usize::from(dr.braided_product(x, &one)? != *x);
        }
    }
    Ok(vec![
        GradedCert::zero("derham.product.associative", max_total, bad),
        GradedCert::zero("derham.product.unit", max_total, unit_bad),
    ])
}

/// Leibniz defect `d(xy) − d(x)y − (−1)^{|x|} x d(y)` on degree-one pairs of
/// `Ω^{1,0}`, reported as data.
pub fn leibniz_info(dr: &DeRham) -> Result<GradedCert> {
    let basis = dr.omega_basis(1, 0)?;
    let mut defect = 0;
    let dmap = |e: &OmegaElement| -> Result<OmegaElement> {
        Ok(OmegaElement { k: e.k - 1, m: e.m + 1, coords: dr.d_tensor(&e.coords, e.m)? })
    };
    for x in &basis {
        for y in &basis {
            let xy = dr.braided_product(x, y)?;
            let lhs = dmap(&xy)?.coords;
            let a = dr.braided_product(&dmap(x)?, y)?.coords;
            let b = dr.braided_product(x, &dmap(y)?)?.coords;
            let rhs = row_axpy(&a, &RatFunc::one(), &b);
            defect += row_axpy(&lhs, &RatFunc::from_int(-1), &rhs).len();
        }
    }
    Ok(GradedCert::zero("derham.leibniz_defect", 2, defect).informational(true))
}

/// Ranks of `d` at generic `q` against the classical complex.
pub fn classical_rank_certs(dr: &DeRham, k_max: usize, m_max: usize) -> Result<Vec<GradedCert>> {
    let cl = DeRham::classical(dr.nl);
    let mut out = Vec::new();
    for k in 1..=k_max {
        for m in 0..=m_max {
            let (dq, _) = dr.differential(k, m)?;
            let (dc, _) = cl.differential(k, m)?;
            out.push(GradedCert::new(format!("derham.rank_vs_classical.m{m}"), k, rank(&dc) as u64, rank(&dq) as u64));
        }
    }
    Ok(out)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_complex_is_exact() {
        let dr = DeRham::classical(3);
        assert!(d_squared_cert(&dr, 3, 3).unwrap().iter().all(|c| c.pass));
        assert!(exactness_cert(&dr, 3, 3).unwrap().iter().all(|c| c.pass));
        assert!(component_certs(&dr, 3).unwrap().iter().all(|c| c.pass));
        // (2,0) -> (1,1) has the rank of d on quadratic functions.
        assert_eq!(rank(&dr.differential(2, 0).unwrap().0), 6);
    }

    #[test]
    fn classical_product_is_graded_commutative() {
        let dr = DeRham::classical(2);
        let x = &dr.omega_basis(0, 1).unwrap()[0];
        let y = &dr.omega_basis(0, 1).unwrap()[1];
        let xy = dr.braided_product(x, y).unwrap();
        let yx = dr.braided_product(y, x).unwrap();
        assert_eq!(row_axpy(&xy.coords, &RatFunc::one(), &yx.coords), Vec::new());
        assert!(!xy.coords.is_empty());
        assert!(associativity_cert(&dr, 3).unwrap().iter().all(|c| c.pass));
    }

    #[test]
    fn n2_quantum_low_degrees() {
        let ql = std::sync::Arc::new(crate::qlie::QuantumLie::new(2).unwrap());
        let g = GradedContext::new(ql).unwrap();
        let dr = DeRham::quantum(&g).unwrap();
        assert_eq!(dr.antisymmetric_part(3).unwrap().space.dim(), 1);
        assert_eq!(dr.antisymmetric_part(4).unwrap().space.dim(), 0);
        assert!(exactness_cert(&dr, 2, 2).unwrap().iter().all(|c| c.pass));
        assert_eq!(rank(&dr.differential(2, 0).unwrap().0), 6);
        assert!(equivariance_cert(&dr, &g, 1, 0).unwrap().pass);
    }
}
