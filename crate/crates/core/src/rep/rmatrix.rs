use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::action::RepAction;
use super::trace::PivotalWeights;
use crate::error::{Error, Result};
use crate::linalg::{inverse, leg_permutation, ExactMatrix};
use crate::scalars::RatFunc;

/// A tensor factor: the vector module `V` or its dual `V*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    V,
    D,
}

/// A tensor word in `V` and `V*`; the empty word is the trivial module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn power(k: usize) -> Word {
        Word(vec![Letter::V; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self, n: usize) -> usize {
        n.pow(self.0.len() as u32)
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    fn split_first(&self) -> (Word, Word) {
        (Word(self.0[..1].to_vec()), Word(self.0[1..].to_vec()))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<&str> = self.0.iter().map(|l| if *l == Letter::V { "V" } else { "V*" }).collect();
        write!(f, "{}", parts.join("⊗"))
    }
}

impl std::str::FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::default());
        }
        s.split([',', '⊗', 'x'])
            .map(|t| match t.trim() {
                "V" | "v" => Ok(Letter::V),
                "V*" | "v*" | "D" | "d" => Ok(Letter::D),
                other => Err(Error::Parse(format!("unknown letter `{other}`"))),
            })
            .collect::<Result<_>>()
            .map(Word)
    }
}

/// Flip `A⊗B → B⊗A` for dimensions `a`, `b`.
pub fn flip(a: usize, b: usize) -> ExactMatrix {
    ExactMatrix::from_triplets(a * b, a * b, (0..a).flat_map(|i| (0..b).map(move |j| (j * a + i, i * b + j, RatFunc::one()))))
}

/// Partial transpose of an operator on `A⊗B` in leg 0 or leg 1.
pub fn partial_transpose(m: &ExactMatrix, a: usize, b: usize, leg: usize) -> ExactMatrix {
    let trips = m.entries().map(|(r, c, v)| {
        let (i, j, k, l) = (r / b, r % b, c / b, c % b);
        if leg == 0 {
            (k * b + j, i * b + l, v.clone())
        } else {
            (i * b + l, k * b + j, v.clone())
        }
    });
    ExactMatrix::from_triplets(a * b, a * b, trips.collect::<Vec<_>>())
}

/// `M` on legs (0, 2) of `A⊗B⊗C`.
pub fn embed13(m: &ExactMatrix, a: usize, b: usize, c: usize) -> ExactMatrix {
    let x = m.kron(&ExactMatrix::identity(b)); // on A⊗C⊗B
    x.permute(&leg_permutation(&[a, c, b], &[0, 2, 1]))
}

/// The two candidate vector R-matrices, differing in the orientation of the
/// off-diagonal term: `i > j` (true) or `i < j` (false).
fn candidate_r(n: usize, lower: bool) -> ExactMatrix {
    let mut trips = Vec::new();
    let h = RatFunc::q_minus_qinv();
    for i in 0..n {
        for j in 0..n {
            let d = if i == j { RatFunc::q() } else { RatFunc::one() };
            trips.push(((i * n + j), (i * n + j), d));
            if (lower && i > j) || (!lower && i < j) {
                // e_ij ⊗ e_ji
                trips.push((i * n + j, j * n + i, h.clone()));
            }
        }
    }
    ExactMatrix::from_triplets(n * n, n * n, trips)
}

/// Whether `r` intertwines `Δ` and `Δ'` on `A⊗B`.
pub fn is_intertwiner(r: &ExactMatrix, a: &RepAction, b: &RepAction) -> bool {
    intertwining_residual(r, a, b) == 0
}

/// Number of nonzero entries of `R Δ(x) − Δ'(x) R` over all generators.
pub fn intertwining_residual(r: &ExactMatrix, a: &RepAction, b: &RepAction) -> usize {
    let ab = RepAction::tensor(a, b);
    let ba = RepAction::tensor(b, a);
    let p = flip(a.dim, b.dim);
    let pt = p.transpose();
    ab.generators()
        .iter()
        .zip(ba.generators())
        .map(|((_, _, x), (_, _, y))| r.mul(x).sub(&pt.mul(y).mul(&p).mul(r)).nnz())
        .sum()
}

/// The vector R-matrix on `V⊗V`, with the off-diagonal orientation chosen by
/// the intertwining condition.
pub fn r_matrix(n: usize) -> Result<ExactMatrix> {
    let v = RepAction::vector(n)?;
    for lower in [true, false] {
        let r = candidate_r(n, lower);
        if is_intertwiner(&r, &v, &v) {
            return Ok(r);
        }
    }
    Err(Error::Construction("no R-matrix orientation intertwines".into()))
}

/// `R₁₂R₁₃R₂₃ − R₂₃R₁₃R₁₂` on `V^{⊗3}`.
pub fn yang_baxter_residual(r: &ExactMatrix, n: usize) -> ExactMatrix {
    let i = ExactMatrix::identity(n);
    let r12 = r.kron(&i);
    let r23 = i.kron(r);
    let r13 = embed13(r, n, n, n);
    r12.mul(&r13).mul(&r23).sub(&r23.mul(&r13).mul(&r12))
}

/// `(τR − q)(τR + q⁻¹)`.
pub fn hecke_residual(r: &ExactMatrix, n: usize) -> ExactMatrix {
    let tr = flip(n, n).mul(r);
    let id = ExactMatrix::identity(n * n);
    tr.sub(&id.scale(&RatFunc::q())).mul(&tr.add(&id.scale(&RatFunc::q_pow(-1))))
}

/// R-matrices, module realizations and `Q` on tensor words, with caching.
///
/// `scale` multiplies the base `R_{V,V}`; every other block is derived from it.
pub struct RContext {
    pub n: usize,
    pub scale: RatFunc,
    base: HashMap<(Letter, Letter), ExactMatrix>,
    vec: RepAction,
    dual: RepAction,
    fused: Mutex<HashMap<(Word, Word), Arc<ExactMatrix>>>,
    mods: Mutex<HashMap<Word, Arc<RepAction>>>,
}

impl RContext {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_scale(n, RatFunc::one())
    }

    pub fn with_scale(n: usize, scale: RatFunc) -> Result<Self> {
        let r = r_matrix(n)?.scale(&scale);
        let rinv = inverse(&r)?;
        let u = PivotalWeights::new(n).matrix();
        let ui = inverse(&u)?;
        let id = ExactMatrix::identity(n);
        let mut base = HashMap::new();
        base.insert((Letter::V, Letter::D), partial_transpose(&id.kron(&ui).mul(&rinv).mul(&id.kron(&u)), n, n, 1));
        base.insert((Letter::D, Letter::V), partial_transpose(&rinv, n, n, 0));
        base.insert((Letter::D, Letter::D), r.transpose());
        base.insert((Letter::V, Letter::V), r);
        let vec = RepAction::vector(n)?;
        let dual = RepAction::dual(&vec);
        Ok(RContext { n, scale, base, vec, dual, fused: Mutex::new(HashMap::new()), mods: Mutex::new(HashMap::new()) })
    }

    pub fn base(&self, a: Letter, b: Letter) -> &ExactMatrix {
        &self.base[&(a, b)]
    }

    pub fn letter_rep(&self, l: Letter) -> &RepAction {
        match l {
            Letter::V => &self.vec,
            Letter::D => &self.dual,
        }
    }

    /// The module of a word.
    pub fn module(&self, w: &Word) -> Arc<RepAction> {
        if let Some(m) = self.mods.lock().unwrap().get(w) {
            return m.clone();
        }
        let m = match w.len() {
            0 => RepAction::trivial(self.n),
            1 => self.letter_rep(w.0[0]).clone(),
            _ => {
                let (h, t) = w.split_first();
                RepAction::tensor(&self.module(&h), &self.module(&t))
            }
        };
        let m = Arc::new(RepAction { label: w.to_string(), ..m });
        self.mods.lock().unwrap().insert(w.clone(), m.clone());
        m
    }

    /// Universal R evaluated on `A⊗B` by the fusion rules
    /// `(Δ⊗1)R = R¹³R²³` and `(1⊗Δ)R = R¹³R¹²`.
    pub fn fused(&self, a: &Word, b: &Word) -> Arc<ExactMatrix> {
        let key = (a.clone(), b.clone());
        if let Some(m) = self.fused.lock().unwrap().get(&key) {
            return m.clone();
        }
        let n = self.n;
        let m = if a.is_empty() || b.is_empty() {
            ExactMatrix::identity(a.dim(n) * b.dim(n))
        } else if a.len() > 1 {
            let (a1, ar) = a.split_first();
            let r13 = embed13(&self.fused(&a1, b), n, ar.dim(n), b.dim(n));
            let r23 = ExactMatrix::identity(n).kron(&self.fused(&ar, b));
            r13.mul(&r23)
        } else if b.len() > 1 {
            let (b1, br) = b.split_first();
            let r13 = embed13(&self.fused(a, &br), n, n, br.dim(n));
            let r12 = self.fused(a, &b1).kron(&ExactMatrix::identity(br.dim(n)));
            r13.mul(&r12)
        } else {
            self.base(a.0[0], b.0[0]).clone()
        };
        let m = Arc::new(m);
        self.fused.lock().unwrap().insert(key, m.clone());
        m
    }

    /// `Q = R²¹R` on `V⊗W`.
    pub fn q_on(&self, w: &Word) -> ExactMatrix {
        let v = Word::power(1);
        let d = w.dim(self.n);
        let p = flip(d, self.n);
        p.mul(&self.fused(w, &v)).mul(&p.transpose()).mul(&self.fused(&v, w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn orientation_is_forced() {
        let v = RepAction::vector(2).unwrap();
        assert!(is_intertwiner(&candidate_r(2, true), &v, &v));
        assert!(!is_intertwiner(&candidate_r(2, false), &v, &v));
    }

    #[test]
    fn vector_r_contracts() {
        for n in [2, 3] {
            let r = r_matrix(n).unwrap();
            assert!(yang_baxter_residual(&r, n).is_zero());
            assert!(hecke_residual(&r, n).is_zero());
            assert_eq!(r.eval_at(&rat(1, 1)).unwrap(), ExactMatrix::identity(n * n));
        }
    }

    #[test]
    fn base_blocks_intertwine() {
        let ctx = RContext::new(2).unwrap();
        for a in [Letter::V, Letter::D] {
            for b in [Letter::V, Letter::D] {
                assert!(is_intertwiner(ctx.base(a, b), ctx.letter_rep(a), ctx.letter_rep(b)), "{a:?}{b:?}");
            }
        }
    }

    #[test]
    fn fused_words_intertwine() {
        let ctx = RContext::new(2).unwrap();
        let words: Vec<Word> = ["V,V", "V", "V*,V", "V,V*"].iter().map(|s| s.parse().unwrap()).collect();
        for a in &words {
            for b in &words {
                let r = ctx.fused(a, b);
                assert!(is_intertwiner(&r, &ctx.module(a), &ctx.module(b)), "{a} {b}");
            }
        }
        assert_eq!(*ctx.fused(&Word::power(1), &Word::power(1)), r_matrix(2).unwrap());
    }

    #[test]
    fn q_commutes_and_scales() {
        let ctx = RContext::new(2).unwrap();
        let w: Word = "V,V*".parse().unwrap();
        let q = ctx.q_on(&w);
        let m = RepAction::tensor(&ctx.vec, &ctx.module(&w));
        assert!(RepAction::intertwines(&q, &m, &m));
        let scaled = RContext::with_scale(2, RatFunc::q_pow(2)).unwrap();
        let q1 = ctx.q_on(&Word::power(1));
        assert_eq!(scaled.q_on(&Word::power(1)), q1.scale(&RatFunc::q_pow(4)));
    }
}
