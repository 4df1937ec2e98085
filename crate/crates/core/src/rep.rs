//! Action of the reflection equation algebra on tensor powers of `V`,
//! submodules cut out by Young projectors and scalar values of central elements.

use std::collections::HashMap;

use regz_exact::modp::SparseEchelon;
use regz_exact::{lambda, ExactMatrix, ModPoint, RatFunc};

use crate::error::CoreError;
use crate::hecke::{HeckeSymmetry, SymmetryKind};
use crate::projector::{jm_chain, jm_chain_inv, spectral_idempotents, Partition, StandardTableau};
use crate::realg::{modified_relations, power_sum, re_relations, sym_polys, NCPoly, QuadIdeal, Word};
use crate::spectral::{char_mu, elementary, p_spectral_at};

/// Which index of the auxiliary factor labels the row of the generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// `rho(l_a^b)` is the block at auxiliary position `(a, b)`.
    Row,
    /// `rho(l_a^b)` is the block at auxiliary position `(b, a)`.
    Column,
}

impl Convention {
    pub fn as_str(&self) -> &'static str {
        match self {
            Convention::Row => "row",
            Convention::Column => "column",
        }
    }
}

/// Which power of the top Jucys-Murphy element produces the action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JmPower {
    /// `L ▷ x = J_{n+1}^{-1} x`.
    Inverse,
    /// `L ▷ x = J_{n+1} x`.
    Direct,
}

impl JmPower {
    pub fn as_str(&self) -> &'static str {
        match self {
            JmPower::Inverse => "inverse",
            JmPower::Direct => "direct",
        }
    }

    /// The top element `J_{n+1}^{∓1}` on `V^{⊗(n+1)}`.
    pub fn top(&self, r: &HeckeSymmetry, n: usize) -> ExactMatrix {
        let chain = match self {
            JmPower::Inverse => jm_chain_inv(r, n + 1),
            JmPower::Direct => jm_chain(r, n + 1),
        };
        chain.into_iter().last().expect("chain is nonempty")
    }
}

/// Images of the generators on `V^{⊗n}`; `rho[i*N + j]` is the image of `l_{i+1}^{j+1}`.
#[derive(Clone, Debug)]
pub struct GenAction {
    pub n: usize,
    pub big_n: usize,
    pub rho: Vec<ExactMatrix>,
    pub modified: bool,
    pub convention: Convention,
    pub power: JmPower,
}

/// Split an operator on `V^{⊗n} ⊗ V` into blocks over the last factor.
pub fn aux_blocks(x: &ExactMatrix, big_n: usize) -> Vec<ExactMatrix> {
    let d = x.dim() / big_n;
    let mut out = Vec::with_capacity(big_n * big_n);
    for a in 0..big_n {
        for b in 0..big_n {
            out.push(ExactMatrix::from_fn(d, |i, j| x.get(i * big_n + a, j * big_n + b).clone()));
        }
    }
    out
}

fn arrange(blocks: &[ExactMatrix], big_n: usize, conv: Convention) -> Vec<ExactMatrix> {
    let mut out = Vec::with_capacity(blocks.len());
    for a in 0..big_n {
        for b in 0..big_n {
            out.push(match conv {
                Convention::Row => blocks[a * big_n + b].clone(),
                Convention::Column => blocks[b * big_n + a].clone(),
            });
        }
    }
    out
}

/// True when every relation of `ideal` maps to zero under `rho`.
pub fn satisfies(ideal: &QuadIdeal, rho: &[ExactMatrix]) -> bool {
    let d = rho[0].dim();
    let mut products: HashMap<Word, ExactMatrix> = HashMap::new();
    for rel in ideal.relations() {
        let mut acc = ExactMatrix::zeros(d);
        for (w, c) in rel.terms() {
            let m = match w.len() {
                0 => ExactMatrix::identity(d),
                1 => rho[w.0[0] as usize].clone(),
                _ => products.entry(w.clone()).or_insert_with(|| word_image(rho, w)).clone(),
            };
            acc = acc.add(&m.scale(c));
        }
        if !acc.is_zero() {
            return false;
        }
    }
    true
}

fn word_image(rho: &[ExactMatrix], w: &Word) -> ExactMatrix {
    let d = rho[0].dim();
    w.0.iter().fold(ExactMatrix::identity(d), |acc, &a| acc.mul(&rho[a as usize]))
}

fn certify(candidates: &[(JmPower, ExactMatrix)], r: &HeckeSymmetry, ideal: &QuadIdeal, n: usize, modified: bool) -> Result<GenAction, CoreError> {
    for (power, x) in candidates {
        let blocks = aux_blocks(x, r.n());
        for conv in [Convention::Row, Convention::Column] {
            let rho = arrange(&blocks, r.n(), conv);
            if satisfies(ideal, &rho) {
                return Ok(GenAction { n, big_n: r.n(), rho, modified, convention: conv, power: *power });
            }
        }
    }
    Err(CoreError::ConventionFailure)
}

fn positive(n: usize) -> Result<(), CoreError> {
    if n == 0 {
        return Err(CoreError::Invalid("tensor degree must be positive".into()));
    }
    Ok(())
}

/// The action `L ▷ x = J_{n+1}^{∓1} x` on `V^{⊗n}`, certified against the RE relations.
///
/// `J^{-1}` is tried first; when neither block convention of it satisfies the
/// relations, `J` is tried.
pub fn build_rep(r: &HeckeSymmetry, n: usize) -> Result<GenAction, CoreError> {
    positive(n)?;
    let cands: Vec<_> = [JmPower::Inverse, JmPower::Direct].into_iter().map(|p| (p, p.top(r, n))).collect();
    certify(&cands, r, &re_relations(r), n, false)
}

/// Like [`build_rep`] with a fixed power of `J_{n+1}`.
pub fn build_rep_with(r: &HeckeSymmetry, n: usize, power: JmPower) -> Result<GenAction, CoreError> {
    positive(n)?;
    certify(&[(power, power.top(r, n))], r, &re_relations(r), n, false)
}

/// `R_n^{∓1} + R_n^{∓1} R_{n-1}^{∓1} R_n^{∓1} + ... + R_n^{∓1} ... R_1^{∓1} ... R_n^{∓1}` on `V^{⊗(n+1)}`,
/// with inverse factors for [`JmPower::Inverse`].
pub fn modified_strings(r: &HeckeSymmetry, n: usize, power: JmPower) -> ExactMatrix {
    let p = n + 1;
    let dim = r.n().pow(p as u32);
    let factor = |s: usize| match power {
        JmPower::Inverse => r.r_k_inv(s, p),
        JmPower::Direct => r.r_k(s, p),
    };
    let mut acc = ExactMatrix::zeros(dim);
    for k in (1..=n).rev() {
        // R_n ... R_{k+1} R_k R_{k+1} ... R_n
        let mut t = ExactMatrix::identity(dim);
        for s in (k..=n).rev() {
            t = t.mul(&factor(s));
        }
        for s in k + 1..=n {
            t = t.mul(&factor(s));
        }
        acc = acc.add(&t);
    }
    acc
}

/// `(I - J_{n+1}^{∓1})/(q - q^{-1})`.
pub fn modified_from_jm(r: &HeckeSymmetry, n: usize, power: JmPower) -> Result<ExactMatrix, CoreError> {
    let j = power.top(r, n);
    let inv = lambda().inv()?;
    Ok(ExactMatrix::identity(j.dim()).sub(&j).scale(&inv))
}

/// Action of the shifted generators, certified against the modified relations.
///
/// The inverse strings are tried first, then the negated direct strings, which
/// equal `(I - J)/(q - q^{-1})` for a Hecke symmetry.
pub fn build_rep_modified(r: &HeckeSymmetry, n: usize) -> Result<GenAction, CoreError> {
    positive(n)?;
    let mut cands = Vec::new();
    for power in [JmPower::Inverse, JmPower::Direct] {
        let strings = match power {
            JmPower::Inverse => modified_strings(r, n, power),
            JmPower::Direct => modified_strings(r, n, power).neg(),
        };
        // The Jucys-Murphy form relies on the Hecke condition.
        if r.kind() == SymmetryKind::Hecke && strings != modified_from_jm(r, n, power)? {
            return Err(CoreError::AxiomFailure(format!("{} strings disagree with the Jucys-Murphy form", power.as_str())));
        }
        cands.push((power, strings));
    }
    certify(&cands, r, &modified_relations(r), n, true)
}

impl GenAction {
    pub fn dim(&self) -> usize {
        self.rho[0].dim()
    }

    pub fn generator(&self, i: usize, j: usize) -> &ExactMatrix {
        &self.rho[i * self.big_n + j]
    }

    /// Image of an algebra element; words act as left-to-right operator products.
    pub fn eval(&self, z: &NCPoly) -> ExactMatrix {
        let d = self.dim();
        let mut prefix: HashMap<Vec<u16>, ExactMatrix> = HashMap::new();
        let mut acc = ExactMatrix::zeros(d);
        for (w, c) in z.terms() {
            let mut cur = ExactMatrix::identity(d);
            for l in 1..=w.len() {
                let key = w.0[..l].to_vec();
                cur = match prefix.get(&key) {
                    Some(m) => m.clone(),
                    None => {
                        let m = cur.mul(&self.rho[w.0[l - 1] as usize]);
                        prefix.insert(key, m.clone());
                        m
                    }
                };
            }
            acc = acc.add(&cur.scale(c));
        }
        acc
    }

    /// `(δ_ij I - rho(l_i^j))/(q - q^{-1})` entrywise.
    pub fn shifted(&self) -> Result<Vec<ExactMatrix>, CoreError> {
        let d = self.dim();
        let inv = lambda().inv()?;
        let mut out = Vec::with_capacity(self.rho.len());
        for i in 0..self.big_n {
            for j in 0..self.big_n {
                let mut m = self.generator(i, j).neg();
                if i == j {
                    m = m.add(&ExactMatrix::identity(d));
                }
                out.push(m.scale(&inv));
            }
        }
        Ok(out)
    }
}

/// `Σ_m I^{⊗(m-1)} ⊗ E_{ij} ⊗ I^{⊗(n-m)}` with `E_{ij} x_k = δ_{jk} x_i`.
pub fn coproduct_action(big_n: usize, n: usize, i: usize, j: usize) -> ExactMatrix {
    let unit = ExactMatrix::from_fn(big_n, |a, b| if a == i && b == j { RatFunc::one() } else { RatFunc::zero() });
    let mut acc = ExactMatrix::zeros(big_n.pow(n as u32));
    for m in 1..=n {
        acc = acc.add(&ExactMatrix::kron_embed(&unit, m, n, big_n).expect("slot in range"));
    }
    acc
}

/// True when the shifted action at `q = 1` is the coproduct action of matrix units.
pub fn classical_limit_matches(action: &GenAction) -> Result<bool, CoreError> {
    for i in 0..action.big_n {
        for j in 0..action.big_n {
            let at_one = action.generator(i, j).try_map(|e| e.at_q_one())?;
            if at_one != coproduct_action(action.big_n, action.n, i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True when the shifted action at `q = 1` is `l_i^j -> -E_{ji}` on each factor,
/// the coproduct action on the dual space.
pub fn dual_limit_matches(action: &GenAction) -> Result<bool, CoreError> {
    for i in 0..action.big_n {
        for j in 0..action.big_n {
            let at_one = action.generator(i, j).try_map(|e| e.at_q_one())?;
            if at_one != coproduct_action(action.big_n, action.n, j, i).neg() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Image of one Young projector with a column basis.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub tableau: StandardTableau,
    pub projector: ExactMatrix,
    /// Indices of projector columns forming a basis of the image.
    pub columns: Vec<usize>,
    pub dim: usize,
}

fn basis_columns(p: &ExactMatrix, rank: usize) -> Vec<usize> {
    for seed in 1..8u64 {
        let pt = ModPoint::new(0xba5e_0000 + seed);
        let Some(vals) = p.eval_mod(&pt) else { continue };
        let d = p.dim();
        let mut ech = SparseEchelon::new(pt.prime());
        let mut cols = Vec::new();
        for c in 0..d {
            let col: Vec<(usize, u64)> = (0..d).map(|r| (r, vals[r * d + c])).filter(|x| x.1 != 0).collect();
            if ech.insert(&col) {
                cols.push(c);
            }
        }
        // Independence at a point implies independence; the count matches the rank.
        if cols.len() == rank {
            return cols;
        }
    }
    panic!("no evaluation point recovers the projector rank")
}

/// One submodule per tableau with nonzero projector.
pub fn decompose(r: &HeckeSymmetry, n: usize) -> Result<Vec<Submodule>, CoreError> {
    let id = spectral_idempotents(r, n)?;
    let mut out = Vec::new();
    for (i, (t, p)) in id.projectors.iter().enumerate() {
        let rank = id.rank(i);
        if rank == 0 {
            continue;
        }
        out.push(Submodule { tableau: t.clone(), projector: p.clone(), columns: basis_columns(p, rank), dim: rank });
    }
    Ok(out)
}

impl Submodule {
    /// The image is preserved by every generator: `P X P = X P`.
    pub fn is_invariant(&self, action: &GenAction) -> bool {
        action.rho.iter().all(|x| {
            let xp = x.mul(&self.projector);
            self.projector.mul(&xp) == xp
        })
    }
}

/// The scalar by which `z` acts on the submodule.
pub fn scalar_action(action: &GenAction, z: &NCPoly, sub: &Submodule) -> Result<RatFunc, CoreError> {
    scalar_on(&action.eval(z), sub)
}

/// The scalar by which an operator acts on the submodule.
pub fn scalar_on(m: &ExactMatrix, sub: &Submodule) -> Result<RatFunc, CoreError> {
    let d = m.dim();
    let mut scalar: Option<RatFunc> = None;
    for &c in &sub.columns {
        for row in 0..d {
            let mut img = RatFunc::zero();
            for k in 0..d {
                let a = m.get(row, k);
                if !a.is_zero() {
                    let b = sub.projector.get(k, c);
                    if !b.is_zero() {
                        img = img.add(&a.mul(b));
                    }
                }
            }
            let v = sub.projector.get(row, c);
            match (&scalar, v.is_zero()) {
                (None, false) => scalar = Some(img.div(v)?),
                (Some(s), _) => {
                    if img != s.mul(v) {
                        return Err(CoreError::NotScalar);
                    }
                }
                (None, true) => {
                    if !img.is_zero() {
                        return Err(CoreError::NotScalar);
                    }
                }
            }
        }
    }
    scalar.ok_or(CoreError::NotScalar)
}

/// Partition and eigenvalue scale `q^s` whose spectral characters a submodule of
/// the given shape carries: `(λ, 0)` for the inverse power; for the direct power
/// `(λ^c, 2n)` with `λ^c_i = n - λ_{N+1-i}`.
pub fn character_label(action: &GenAction, shape: &[usize]) -> (Partition, i32) {
    match action.power {
        JmPower::Inverse => (shape.to_vec(), 0),
        JmPower::Direct => {
            let m = action.big_n;
            let n = action.n;
            let at = |i: usize| shape.get(i).copied().unwrap_or(0);
            let comp: Partition = (0..m).map(|i| n - at(m - 1 - i)).filter(|&x| x > 0).collect();
            (comp, 2 * n as i32)
        }
    }
}

/// Eigenvalue characters `q^s μ_i(λ)` for `i = 1..m`.
pub fn scaled_mu(shape: &[usize], m: usize, scale: i32) -> Result<Vec<RatFunc>, CoreError> {
    (1..=m).map(|i| Ok(char_mu(shape, m, i)?.mul(&RatFunc::q_pow(scale)))).collect()
}

/// One power-sum comparison on one submodule.
#[derive(Clone, Debug)]
pub struct CharacterRow {
    pub shape: Partition,
    pub tableau: usize,
    pub k: usize,
    pub observed: RatFunc,
    /// Prediction at the shape's own eigenvalue characters.
    pub literal: RatFunc,
    /// Prediction at the characters of [`character_label`].
    pub labelled: RatFunc,
}

impl CharacterRow {
    pub fn literal_match(&self) -> bool {
        self.observed == self.literal
    }

    pub fn label_match(&self) -> bool {
        self.observed == self.labelled
    }
}

/// One elementary-function multiset comparison on one submodule.
#[derive(Clone, Debug)]
pub struct MultisetRow {
    pub shape: Partition,
    pub tableau: usize,
    /// `q^k` times the scalar of `e_k`, for `k = 1..N`.
    pub observed: Vec<RatFunc>,
    /// `σ_k` of the shape's own eigenvalue characters.
    pub literal: Vec<RatFunc>,
    /// `σ_k` of the characters of [`character_label`].
    pub labelled: Vec<RatFunc>,
}

impl MultisetRow {
    pub fn literal_match(&self) -> bool {
        self.observed == self.literal
    }

    pub fn label_match(&self) -> bool {
        self.observed == self.labelled
    }
}

/// Scalars of `p_1..p_{k_max}` and of `e_1..e_N` on every submodule of `V^{⊗n}`.
pub fn character_check(r: &HeckeSymmetry, n: usize, k_max: usize) -> Result<(Vec<CharacterRow>, Vec<MultisetRow>), CoreError> {
    let action = build_rep(r, n)?;
    let m = r.n();
    let subs = decompose(r, n)?;
    let ps: Vec<NCPoly> = (1..=k_max).map(|k| power_sum(r, k)).collect();
    let es = sym_polys(r, m)?.e;
    let mut rows = Vec::new();
    let mut sets = Vec::new();
    let mut index: HashMap<Partition, usize> = HashMap::new();
    for sub in &subs {
        let shape = sub.tableau.shape();
        let t = index.entry(shape.clone()).or_insert(0);
        let tableau = *t;
        *t += 1;
        let (label, scale) = character_label(&action, &shape);
        let own = scaled_mu(&shape, m, 0)?;
        let lab = scaled_mu(&label, m, scale)?;
        for (k, p) in ps.iter().enumerate() {
            rows.push(CharacterRow {
                shape: shape.clone(),
                tableau,
                k: k + 1,
                observed: scalar_action(&action, p, sub)?,
                literal: p_spectral_at(&own, k + 1)?,
                labelled: p_spectral_at(&lab, k + 1)?,
            });
        }
        let mut observed = Vec::with_capacity(m);
        for (k, e) in es.iter().enumerate() {
            observed.push(RatFunc::q_pow(k as i32 + 1).mul(&scalar_action(&action, e, sub)?));
        }
        sets.push(MultisetRow {
            shape: shape.clone(),
            tableau,
            observed,
            literal: (1..=m).map(|k| elementary(&own, k)).collect(),
            labelled: (1..=m).map(|k| elementary(&lab, k)).collect(),
        });
    }
    Ok((rows, sets))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_symmetry_acts_by_q_powers() {
        let r = HeckeSymmetry::dj(1);
        for n in 1..=3 {
            let a = build_rep(&r, n).unwrap();
            assert_eq!(a.rho[0], ExactMatrix::scalar(1, &RatFunc::q_pow(-2 * n as i32)));
            let m = build_rep_modified(&r, n).unwrap();
            let expect = RatFunc::q_pow(-(n as i32)).mul(&regz_exact::q_number(n as i64));
            assert_eq!(m.rho[0], ExactMatrix::scalar(1, &expect));
        }
    }

    #[test]
    fn dj2_degree_one() {
        let r = HeckeSymmetry::dj(2);
        let a = build_rep(&r, 1).unwrap();
        let m = build_rep_modified(&r, 1).unwrap();
        assert_eq!((a.power, m.power), (JmPower::Direct, JmPower::Direct));
        assert!(build_rep_with(&r, 1, JmPower::Inverse).is_err());
        assert_eq!(m.rho, a.shifted().unwrap());
        assert!(!classical_limit_matches(&m).unwrap());
        assert!(dual_limit_matches(&m).unwrap());
    }

    #[test]
    fn flip_acts_by_matrix_units() {
        let p = HeckeSymmetry::new(ExactMatrix::flip(2)).unwrap();
        let m = build_rep_modified(&p, 1).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(m.generator(i, j), &coproduct_action(2, 1, i, j));
            }
        }
    }
}
