//! Glueing chains, Gelfand-Zetlin patterns, the commuting family built from
//! the power sums of all levels of a chain and its joint spectrum.

use regz_exact::{ExactMatrix, RatFunc};

use crate::error::CoreError;
use crate::hecke::HeckeSymmetry;
use crate::projector::{validate_partition, Partition};
use crate::realg::{power_sum, NCPoly};
use crate::rep::{build_rep, character_label, decompose, scaled_mu, GenAction};
use crate::spectral::{exponents, p_spectral_at};

/// Rows `N, N-1, ..., 1` of a total pattern; `rows[0]` is the top row.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GZPattern {
    pub rows: Vec<Vec<usize>>,
}

impl GZPattern {
    /// The row of length `k`.
    pub fn level(&self, k: usize) -> &[usize] {
        &self.rows[self.rows.len() - k]
    }

    pub fn is_interlacing(&self) -> bool {
        self.rows.windows(2).all(|w| interlaces(&w[0], &w[1]))
    }
}

impl std::fmt::Display for GZPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(",")).collect();
        write!(f, "[{}]", rows.join(" | "))
    }
}

fn interlaces(top: &[usize], below: &[usize]) -> bool {
    below.len() + 1 == top.len() && (0..below.len()).all(|i| top[i] >= below[i] && below[i] >= top[i + 1])
}

/// All total patterns with the given top row.
pub fn enumerate_patterns(top: &[i64]) -> Result<Vec<GZPattern>, CoreError> {
    validate_partition(top)?;
    let top: Vec<usize> = top.iter().map(|&x| x as usize).collect();
    let mut out = Vec::new();
    let mut rows = vec![top];
    grow(&mut rows, &mut out);
    Ok(out)
}

fn grow(rows: &mut Vec<Vec<usize>>, out: &mut Vec<GZPattern>) {
    let last = rows.last().expect("nonempty").clone();
    if last.len() == 1 {
        out.push(GZPattern { rows: rows.clone() });
        return;
    }
    let mut cur = Vec::with_capacity(last.len() - 1);
    fill(&last, &mut cur, rows, out);
}

fn fill(above: &[usize], cur: &mut Vec<usize>, rows: &mut Vec<Vec<usize>>, out: &mut Vec<GZPattern>) {
    let i = cur.len();
    if i + 1 == above.len() {
        rows.push(cur.clone());
        grow(rows, out);
        rows.pop();
        return;
    }
    for v in (above[i + 1]..=above[i]).rev() {
        cur.push(v);
        fill(above, cur, rows, out);
        cur.pop();
    }
}

/// Exponents `λ_i + k - i` of adjacent rows interlace.
pub fn exponents_interlace(p: &GZPattern) -> Result<bool, CoreError> {
    for w in p.rows.windows(2) {
        let a = exponents(&w[0], w[0].len())?;
        let b = exponents(&w[1], w[1].len())?;
        if !(0..b.len()).all(|i| a[i] >= b[i] && b[i] >= a[i + 1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The one-dimensional building blocks of a chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    /// `(q)`.
    Even,
    /// `(-q^{-1})`.
    Odd,
}

impl Block {
    pub fn parse(s: &str) -> Result<Block, CoreError> {
        match s.replace(' ', "").as_str() {
            "+q" | "q" => Ok(Block::Even),
            "-1/q" | "-q^-1" | "-q^(-1)" => Ok(Block::Odd),
            other => Err(CoreError::Invalid(format!("unknown block {other:?}"))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Block::Even => "+q",
            Block::Odd => "-1/q",
        }
    }

    pub fn symmetry(&self) -> HeckeSymmetry {
        match self {
            Block::Even => HeckeSymmetry::even_block(),
            Block::Odd => HeckeSymmetry::odd_block(),
        }
    }
}

/// One glueing step; the parameter of the first step is unused.
#[derive(Clone, Debug, PartialEq)]
pub struct GlueStep {
    pub block: Block,
    pub alpha: RatFunc,
}

#[derive(Clone, Debug)]
pub struct ChainData {
    pub steps: Vec<GlueStep>,
    /// `symmetries[k-1]` acts on the first `k` basis vectors.
    pub symmetries: Vec<HeckeSymmetry>,
}

/// Glue the blocks one at a time and check every prefix.
pub fn chain_build(steps: &[GlueStep]) -> Result<ChainData, CoreError> {
    let first = steps.first().ok_or_else(|| CoreError::Invalid("empty glue spec".into()))?;
    let mut symmetries = vec![first.block.symmetry()];
    for s in &steps[1..] {
        let next = HeckeSymmetry::glue(symmetries.last().expect("nonempty"), &s.block.symmetry(), &s.alpha)?;
        symmetries.push(next);
    }
    let top = symmetries.last().expect("nonempty");
    for k in 1..top.n() {
        if !top.sub_closure_check(k) {
            return Err(CoreError::AxiomFailure(format!("prefix {k} is not closed")));
        }
        if &top.block(k) != symmetries[k - 1].r() {
            return Err(CoreError::AxiomFailure(format!("level {k} is not the upper-left block of the top symmetry")));
        }
    }
    Ok(ChainData { steps: steps.to_vec(), symmetries })
}

impl ChainData {
    pub fn top(&self) -> &HeckeSymmetry {
        self.symmetries.last().expect("nonempty")
    }

    pub fn n(&self) -> usize {
        self.symmetries.len()
    }

    pub fn is_standard(&self) -> bool {
        self.steps.iter().all(|s| s.block == Block::Even)
    }
}

/// `Tr(C_(k) L_(k)^j)` with the level-`k` skew-inverse trace matrix and the
/// upper-left `k x k` generators, written in the top algebra.
pub fn level_power_sum(chain: &ChainData, k: usize, j: usize) -> NCPoly {
    let n = chain.n();
    let images: Vec<NCPoly> = (0..k * k).map(|x| NCPoly::gen(n, x / k, x % k)).collect();
    power_sum(&chain.symmetries[k - 1], j).substitute(&images)
}

/// Operators of the family on `V^{⊗n}`, keyed by `(level, power)`.
fn family(chain: &ChainData, action: &GenAction, powers: usize) -> Vec<((usize, usize), ExactMatrix)> {
    let mut out = Vec::new();
    for k in 1..=chain.n() {
        for j in 1..=powers {
            out.push(((k, j), action.eval(&level_power_sum(chain, k, j))));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub n: usize,
    pub operators: Vec<(usize, usize)>,
    /// Pairs of operator keys whose commutator is nonzero.
    pub failures: Vec<((usize, usize), (usize, usize))>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// All pairwise commutators of the level power sums on `V^{⊗n}`.
pub fn gz_family_check(chain: &ChainData, n: usize, powers: usize) -> Result<FamilyReport, CoreError> {
    let action = build_rep(chain.top(), n)?;
    let ops = family(chain, &action, powers);
    let mut failures = Vec::new();
    for (a, (ka, xa)) in ops.iter().enumerate() {
        for (kb, xb) in &ops[a + 1..] {
            if !xa.commutator(xb).is_zero() {
                failures.push((*ka, *kb));
            }
        }
    }
    Ok(FamilyReport { n, operators: ops.iter().map(|x| x.0).collect(), failures })
}

/// How predicted joint eigenvalues are attached to a submodule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Labelling {
    /// Patterns of the shape itself, eigenvalue characters unscaled.
    Literal,
    /// Patterns of the label returned by [`character_label`], with its scale.
    Module,
}

impl Labelling {
    pub fn as_str(&self) -> &'static str {
        match self {
            Labelling::Literal => "literal",
            Labelling::Module => "module",
        }
    }
}

#[derive(Clone, Debug)]
pub struct JointRow {
    pub pattern: GZPattern,
    /// Predicted scalar of each family operator, in family order.
    pub predicted: Vec<RatFunc>,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct JointReport {
    pub shape: Partition,
    pub labelling: Labelling,
    pub dim: usize,
    pub rows: Vec<JointRow>,
    /// The interpolation projectors add up to the submodule projector.
    pub complete: bool,
    /// Distinct patterns have distinct predicted tuples.
    pub separated: bool,
}

impl JointReport {
    pub fn passed(&self) -> bool {
        self.separated && self.complete && self.rows.len() == self.dim && self.rows.iter().all(|r| r.rank == 1)
    }
}

/// Joint eigenspaces of the family inside one copy of `V_λ`, located by
/// interpolation projectors built from predicted character tuples.
pub fn joint_spectrum_check(chain: &ChainData, shape: &[usize], powers: usize, labelling: Labelling) -> Result<JointReport, CoreError> {
    if !chain.is_standard() {
        return Err(CoreError::Invalid("joint spectrum predictions need an all-(+q) chain".into()));
    }
    let big_n = chain.n();
    let shape: Partition = shape.iter().copied().filter(|&x| x > 0).collect();
    if shape.len() > big_n {
        return Err(CoreError::IndexOutOfRange(format!("shape {shape:?} has more than {big_n} rows")));
    }
    let n: usize = shape.iter().sum();
    let action = build_rep(chain.top(), n)?;
    let sub = decompose(chain.top(), n)?
        .into_iter()
        .find(|s| s.tableau.shape() == shape)
        .ok_or_else(|| CoreError::Invalid(format!("no submodule of shape {shape:?}")))?;
    let (label, scale) = match labelling {
        Labelling::Literal => (shape.clone(), 0),
        Labelling::Module => character_label(&action, &shape),
    };
    let mut top: Vec<i64> = label.iter().map(|&x| x as i64).collect();
    top.resize(big_n, 0);
    let patterns = enumerate_patterns(&top)?;
    let ops = family(chain, &action, powers);
    let mut predicted = Vec::with_capacity(patterns.len());
    for p in &patterns {
        let mut t = Vec::with_capacity(ops.len());
        for &((k, j), _) in &ops {
            t.push(p_spectral_at(&scaled_mu(p.level(k), k, scale)?, j)?);
        }
        predicted.push(t);
    }
    let separated = (0..predicted.len()).all(|a| (a + 1..predicted.len()).all(|b| predicted[a] != predicted[b]));
    let dim = sub.dim;
    let mut rows = Vec::with_capacity(patterns.len());
    let mut total = ExactMatrix::zeros(sub.projector.dim());
    for (p, t) in patterns.into_iter().zip(predicted.iter()) {
        let mut proj = sub.projector.clone();
        for (slot, (_, x)) in ops.iter().enumerate() {
            let mine = &t[slot];
            let mut others: Vec<&RatFunc> = Vec::new();
            for u in &predicted {
                if &u[slot] != mine && !others.contains(&&u[slot]) {
                    others.push(&u[slot]);
                }
            }
            for v in others {
                let factor = x.sub(&ExactMatrix::scalar(x.dim(), v)).scale(&mine.sub(v).inv()?);
                proj = proj.mul(&factor);
            }
        }
        total = total.add(&proj);
        rows.push(JointRow { pattern: p, predicted: t.clone(), rank: proj.rank() });
    }
    Ok(JointReport { shape, labelling, dim, rows, complete: total == sub.projector, separated })
}

/// A generic point for the braided orbit quotient.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitSpec {
    pub m: usize,
    pub mu: Vec<RatFunc>,
    /// `α_k(μ)` for `k = 1..m`.
    pub alphas: Vec<RatFunc>,
}

/// Check distinctness and `μ_i != q^2 μ_j`, then evaluate the power-sum characters.
pub fn orbit_check(mu: &[RatFunc]) -> Result<OrbitSpec, CoreError> {
    let q2 = RatFunc::q_pow(2);
    let mut bad = Vec::new();
    for i in 0..mu.len() {
        for j in 0..mu.len() {
            if i < j && mu[i] == mu[j] {
                bad.push(format!("mu{} = mu{} (distinctness)", i + 1, j + 1));
            }
            if i != j && mu[i] == q2.mul(&mu[j]) {
                bad.push(format!("mu{} = q^2 mu{} (mu_i != q^2 mu_j)", i + 1, j + 1));
            }
        }
    }
    if !bad.is_empty() {
        return Err(CoreError::NotGeneric(bad.join("; ")));
    }
    let alphas = (1..=mu.len()).map(|k| p_spectral_at(mu, k)).collect::<Result<_, _>>()?;
    Ok(OrbitSpec { m: mu.len(), mu: mu.to_vec(), alphas })
}

/// `Tr(C L^k) - α_k` for `k = 1..m`, generating the orbit ideal.
pub fn orbit_generators(r: &HeckeSymmetry, spec: &OrbitSpec) -> Vec<NCPoly> {
    (1..=spec.m).map(|k| power_sum(r, k).sub(&NCPoly::scalar(r.n(), &spec.alphas[k - 1]))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_pattern_counts() {
        assert_eq!(enumerate_patterns(&[1, 0]).unwrap().len(), 2);
        assert_eq!(enumerate_patterns(&[2, 0]).unwrap().len(), 3);
        assert_eq!(enumerate_patterns(&[1, 0, 0]).unwrap().len(), 3);
        assert!(enumerate_patterns(&[0, 1]).is_err());
    }

    #[test]
    fn orbit_genericity() {
        let e = orbit_check(&[RatFunc::one(), RatFunc::q_pow(2)]).unwrap_err();
        assert!(matches!(e, CoreError::NotGeneric(ref s) if s.contains("mu2 = q^2 mu1")));
        let o = orbit_check(&[RatFunc::one(), RatFunc::int(2)]).unwrap();
        assert_eq!(o.alphas[0], RatFunc::q_pow(-1).scale_int(3));
        assert!(orbit_check(&[RatFunc::var("c")]).is_ok());
    }
}
