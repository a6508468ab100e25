use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use super::fmap::{contract_first_leg, divide_by_h, lie_generators};
use crate::error::{Error, Result};
use crate::linalg::{inverse, rank, ExactMatrix};
use crate::rep::{hom_space, quantum_trace, RContext, RepAction, Word};
use crate::scalars::RatFunc;

/// The quantum Lie algebra structure on `L`, in the coordinates of the
/// generator basis `φ_a` of `Z*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumLieData {
    pub n: usize,
    pub dim_l: usize,
    pub gen_basis: Vec<ExactMatrix>,
    /// Operator on `L⊗L`; `σ(x_a⊗x_b) = Σ sigma[(d,c),(a,b)] x_d⊗x_c`.
    pub sigma: ExactMatrix,
    /// `L⊗L → L`; `[x_a, x_b] = Σ bracket[d,(a,b)] x_d`.
    pub bracket: ExactMatrix,
    /// The module `L` (action on `Z*` coordinates).
    pub module: RepAction,
}

/// Generators, `C_V` and `C_V⁻¹` realized on `V^{⊗k}`.
#[derive(Clone, Debug)]
pub struct Realization {
    pub k: usize,
    pub x: Vec<ExactMatrix>,
    pub c: ExactMatrix,
    pub c_inv: ExactMatrix,
}

impl Realization {
    /// Normalized generators `C_V⁻¹ x_a`.
    pub fn normalized(&self) -> Vec<ExactMatrix> {
        self.x.iter().map(|x| self.c_inv.mul(x)).collect()
    }
}

/// Everything derived from one `RContext`: generators, the `End(V)*`
/// model, the coproduct split and cached realizations.
pub struct QuantumLie {
    pub ctx: Arc<RContext>,
    pub data: QuantumLieData,
    /// Columns `vec(φ_a)` then `vec(Tr_q)`.
    pub phi: ExactMatrix,
    /// Intertwiner `End(V)* → V⊗V*` used to realize elements on `End(V)*`.
    pub t: ExactMatrix,
    pub end: RepAction,
    real: Mutex<HashMap<Word, Arc<Realization>>>,
}

fn vec_col(m: &ExactMatrix) -> Vec<RatFunc> {
    let n = m.rows();
    (0..n * n).map(|k| m.get(k / n, k % n)).collect()
}

impl QuantumLie {
    pub fn new(n: usize) -> Result<Self> {
        Self::from_context(Arc::new(RContext::new(n)?))
    }

    pub fn from_context(ctx: Arc<RContext>) -> Result<Self> {
        let n = ctx.n;
        let gens = lie_generators(n)?;
        let nl = gens.len();
        let tr = quantum_trace(n);
        let cols: Vec<Vec<RatFunc>> = gens.iter().chain(std::iter::once(&tr)).map(vec_col).collect();
        let phi = ExactMatrix::from_dense(cols).transpose();
        let phi_inv = inverse(&phi)?;

        let end = RepAction::end_v_dual(n)?;
        let vd: Word = Word(vec![crate::rep::Letter::V, crate::rep::Letter::D]);
        let t = choose_iso(&hom_space(&end, &ctx.module(&vd)))?;
        let t_inv = inverse(&t)?;

        // The module L: End(V)* in the basis Φ, restricted to Z*.
        let in_phi = end.conjugate(&phi, "End(V)* [Φ]")?;
        let module = restrict_leading(&in_phi, nl, "L")?;

        let q_vd = ctx.q_on(&vd);
        let vdv = vd.concat(&Word::power(1));
        let q_vdv = ctx.q_on(&vdv);

        // x_a on End(V)* in basis Φ, and on End(V)*⊗V.
        let ti_v = t_inv.kron(&ExactMatrix::identity(n));
        let t_v = t.kron(&ExactMatrix::identity(n));
        let on_end: Vec<ExactMatrix> = gens
            .par_iter()
            .map(|g| {
                let x = divide_by_h(&contract_first_leg(g, &q_vd, n))?;
                Ok(phi_inv.mul(&t_inv).mul(&x).mul(&t).mul(&phi))
            })
            .collect::<Result<_>>()?;
        let on_end_v: Vec<ExactMatrix> = gens
            .par_iter()
            .map(|g| Ok(ti_v.mul(&divide_by_h(&contract_first_leg(g, &q_vdv, n))?).mul(&t_v)))
            .collect::<Result<_>>()?;

        // Bracket: x_a ▷ φ_b.
        let mut btrips = Vec::new();
        for (a, za) in on_end.iter().enumerate() {
            check_z_invariant(za, nl)?;
            for (d, b, v) in za.entries() {
                if d < nl && b < nl {
                    btrips.push((d, a * nl + b, v.clone()));
                }
            }
        }
        let bracket = ExactMatrix::from_triplets(nl, nl * nl, btrips);

        // Split of Δ(x_a) against {C_V, x_c} on the V leg.
        let q_v = ctx.q_on(&Word::power(1));
        let mut basis_v = vec![contract_first_leg(&tr, &q_v, n)];
        for g in &gens {
            basis_v.push(divide_by_h(&contract_first_leg(g, &q_v, n))?);
        }
        let g_mat = ExactMatrix::from_dense(basis_v.iter().map(vec_col).collect());
        let g_inv = inverse(&g_mat).map_err(|_| Error::Construction("C_V and generators do not span End(V)".into()))?;
        let dim_e = n * n;
        let mut strips = Vec::new();
        for (a, m) in on_end_v.iter().enumerate() {
            let blocks = v_leg_blocks(m, dim_e, n);
            let coeff = |beta: usize| -> ExactMatrix {
                let mut acc = ExactMatrix::zeros(dim_e, dim_e);
                for (kl, blk) in blocks.iter().enumerate() {
                    let c = g_inv.get(kl, beta);
                    if !c.is_zero() {
                        acc = acc.axpy(&c, blk);
                    }
                }
                phi_inv.mul(&acc).mul(&phi)
            };
            if coeff(0) != on_end[a] {
                return Err(Error::Construction(format!("coideal split fails for generator {a}")));
            }
            for c in 0..nl {
                let v = coeff(1 + c);
                check_z_invariant(&v, nl)?;
                for (d, b, val) in v.entries() {
                    if d < nl && b < nl {
                        strips.push((d * nl + c, a * nl + b, val.clone()));
                    }
                }
            }
        }
        let sigma = ExactMatrix::from_triplets(nl * nl, nl * nl, strips);
        let data = QuantumLieData { n, dim_l: nl, gen_basis: gens, sigma, bracket, module };
        Ok(QuantumLie { ctx, data, phi, t, end, real: Mutex::new(HashMap::new()) })
    }

    /// `x_a`, `C_V`, `C_V⁻¹` on a word module.
    pub fn realize(&self, word: &Word) -> Result<Arc<Realization>> {
        if let Some(r) = self.real.lock().unwrap().get(word) {
            return Ok(r.clone());
        }
        let n = self.ctx.n;
        let q = self.ctx.q_on(word);
        let x = self
            .data
            .gen_basis
            .par_iter()
            .map(|g| divide_by_h(&contract_first_leg(g, &q, n)))
            .collect::<Result<Vec<_>>>()?;
        let c = contract_first_leg(&quantum_trace(n), &q, n);
        let c_inv = inverse(&c).map_err(|_| Error::CasimirNotInvertible)?;
        let r = Arc::new(Realization { k: word.len(), x, c, c_inv });
        self.real.lock().unwrap().insert(word.clone(), r.clone());
        Ok(r)
    }

    pub fn realize_power(&self, k: usize) -> Result<Arc<Realization>> {
        self.realize(&Word::power(k))
    }
}

/// Blocks `Z_kl` of an operator on `A⊗V`: `Z_kl[α, β] = M[(α,k), (β,l)]`,
/// in the order `kl = k·n + l`.
fn v_leg_blocks(m: &ExactMatrix, da: usize, n: usize) -> Vec<ExactMatrix> {
    let mut trips: Vec<Vec<(usize, usize, RatFunc)>> = vec![Vec::new(); n * n];
    for (r, c, v) in m.entries() {
        let (al, k, be, l) = (r / n, r % n, c / n, c % n);
        trips[k * n + l].push((al, be, v.clone()));
    }
    trips.into_iter().map(|t| ExactMatrix::from_triplets(da, da, t)).collect()
}

/// The last coordinate (the `Tr_q` direction) must not appear in images of
/// the leading `nl` coordinates.
fn check_z_invariant(m: &ExactMatrix, nl: usize) -> Result<()> {
    if m.row(nl).iter().any(|(j, _)| *j < nl) {
        return Err(Error::Construction("Z* is not invariant".into()));
    }
    Ok(())
}

fn restrict_leading(m: &RepAction, nl: usize, label: &str) -> Result<RepAction> {
    let idx: Vec<usize> = (0..nl).collect();
    for (_, _, g) in m.generators() {
        check_z_invariant(g, nl)?;
    }
    let sel = |g: &ExactMatrix| g.select(&idx, &idx);
    Ok(RepAction {
        n: m.n,
        dim: nl,
        e: m.e.iter().map(sel).collect(),
        f: m.f.iter().map(sel).collect(),
        k: m.k.iter().map(sel).collect(),
        k_inv: m.k_inv.iter().map(sel).collect(),
        label: label.into(),
    })
}

/// First invertible combination `h_0 + c h_1 + c² h_2 + …`, `c = 1, 2, …`.
fn choose_iso(hom: &[ExactMatrix]) -> Result<ExactMatrix> {
    let first = hom.first().ok_or_else(|| Error::Construction("End(V)* and V⊗V* are not isomorphic".into()))?;
    for c in 1..=(hom.len() as i64 + 2) {
        let mut t = ExactMatrix::zeros(first.rows(), first.cols());
        let mut w = RatFunc::one();
        for h in hom {
            t = t.axpy(&w, h);
            w = w.mul(&RatFunc::from_int(c));
        }
        if rank(&t) == t.rows() {
            return Ok(t);
        }
    }
    Err(Error::Construction("no invertible intertwiner found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::flip;
    use crate::scalars::rat;

    #[test]
    fn n2_structure_limits() {
        let ql = QuantumLie::new(2).unwrap();
        let d = &ql.data;
        assert_eq!(d.dim_l, 3);
        assert_eq!(d.sigma.eval_at(&rat(1, 1)).unwrap(), flip(3, 3));
        let id = ExactMatrix::identity(9);
        assert_eq!(rank(&id.sub(&d.sigma)), 3);
        assert_eq!(d.module.relation_failures(), 0);
    }
}
