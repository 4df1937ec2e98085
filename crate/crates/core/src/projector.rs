//! Jucys-Murphy elements in the R-matrix representation and the primitive
//! idempotents obtained by spectral interpolation.

use std::collections::BTreeMap;

use regz_exact::modp::rank_dense;
use regz_exact::{ExactMatrix, ModPoint, RatFunc};

use crate::error::CoreError;
use crate::hecke::HeckeSymmetry;

pub type Partition = Vec<usize>;

/// Partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Check that a list of integers is a partition (trailing zeros allowed).
pub fn validate_partition(p: &[i64]) -> Result<Partition, CoreError> {
    if p.iter().any(|&x| x < 0) || p.windows(2).any(|w| w[0] < w[1]) {
        return Err(CoreError::NotAPartition(p.to_vec()));
    }
    Ok(p.iter().filter(|&&x| x > 0).map(|&x| x as usize).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<StandardTableau, CoreError> {
        let n: usize = rows.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for r in &rows {
            for &x in r {
                if x == 0 || x > n || seen[x] {
                    return Err(CoreError::Invalid(format!("not a filling by 1..{n}: {rows:?}")));
                }
                seen[x] = true;
            }
        }
        let shape: Vec<usize> = rows.iter().map(Vec::len).collect();
        let ok_shape = shape.windows(2).all(|w| w[0] >= w[1]) && shape.iter().all(|&l| l > 0);
        let ok_rows = rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let ok_cols = || rows.windows(2).all(|w| w[1].iter().enumerate().all(|(j, x)| w[0][j] < *x));
        if !(ok_shape && ok_rows && ok_cols()) {
            return Err(CoreError::Invalid(format!("not a standard tableau: {rows:?}")));
        }
        Ok(StandardTableau { rows })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `c_k = column(k) - row(k)` for `k = 1..n`.
    pub fn contents(&self) -> Vec<i64> {
        let mut c = vec![0; self.size()];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                c[x - 1] = j as i64 - i as i64;
            }
        }
        c
    }
}

/// All standard tableaux of the given shape.
pub fn standard_tableaux(shape: &[usize]) -> Vec<StandardTableau> {
    fn go(shape: &mut Vec<usize>, n: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if n == 0 {
            out.push(rows.clone());
            return;
        }
        // place n in each removable corner
        for i in 0..shape.len() {
            let len = shape[i];
            if len == 0 || (i + 1 < shape.len() && shape[i + 1] == len) {
                continue;
            }
            shape[i] -= 1;
            rows[i][len - 1] = n;
            go(shape, n - 1, rows, out);
            shape[i] += 1;
        }
    }
    let mut s = shape.to_vec();
    let n: usize = shape.iter().sum();
    let mut rows: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l]).collect();
    let mut out = Vec::new();
    go(&mut s, n, &mut rows, &mut out);
    let mut t: Vec<StandardTableau> = out.into_iter().map(|rows| StandardTableau { rows }).collect();
    t.sort();
    t
}

/// `J_1 = I, J_{k+1} = R_k J_k R_k` on `V^{⊗p}`.
pub fn jm_chain(r: &HeckeSymmetry, p: usize) -> Vec<ExactMatrix> {
    let dim = r.n().pow(p as u32);
    let mut out = vec![ExactMatrix::identity(dim)];
    for k in 1..p {
        let rk = r.r_k(k, p);
        let next = rk.mul(&out[k - 1]).mul(&rk);
        out.push(next);
    }
    out
}

/// `J_1^{-1}, ..., J_p^{-1}` built from `R^{-1}`.
pub fn jm_chain_inv(r: &HeckeSymmetry, p: usize) -> Vec<ExactMatrix> {
    let dim = r.n().pow(p as u32);
    let mut out = vec![ExactMatrix::identity(dim)];
    for k in 1..p {
        let rk = r.r_k_inv(k, p);
        let next = rk.mul(&out[k - 1]).mul(&rk);
        out.push(next);
    }
    out
}

/// `J_2, ..., J_{n+1}` on `V^{⊗(n+1)}`.
pub fn jm_elements(r: &HeckeSymmetry, n: usize) -> Vec<ExactMatrix> {
    jm_chain(r, n + 1).split_off(1)
}

fn mod_rank_deficient(j: &ExactMatrix, c: i64, pt: &ModPoint) -> Option<bool> {
    let mu = RatFunc::q_pow(2 * c as i32);
    let shifted = j.sub(&ExactMatrix::scalar(j.dim(), &mu));
    let vals = shifted.eval_mod(pt)?;
    let d = j.dim();
    let rows: Vec<Vec<u64>> = vals.chunks(d).map(<[u64]>::to_vec).collect();
    Some(rank_dense(&rows, pt.prime()) < d)
}

fn annihilates(j: &ExactMatrix, spec: &[i64]) -> bool {
    let d = j.dim();
    let mut acc = ExactMatrix::identity(d);
    for &c in spec {
        acc = acc.mul(&j.sub(&ExactMatrix::scalar(d, &RatFunc::q_pow(2 * c as i32))));
        if acc.is_zero() {
            return true;
        }
    }
    acc.is_zero()
}

/// Exponents `c` with `q^{2c}` an eigenvalue of `J_k`, among `|c| < k`.
///
/// Candidates are screened modulo a prime; the vanishing of the product of
/// `J_k - q^{2c}` over the returned set is verified exactly.
pub fn jm_spectrum(j: &ExactMatrix, k: usize) -> Result<Vec<i64>, CoreError> {
    let cands: Vec<i64> = (-(k as i64 - 1)..=(k as i64 - 1)).rev().collect();
    let mut screened = None;
    for seed in 1..8u64 {
        let pt = ModPoint::new(0x5eed_0000 + seed);
        let r: Option<Vec<i64>> =
            cands.iter().map(|&c| mod_rank_deficient(j, c, &pt).map(|b| (c, b))).collect::<Option<Vec<_>>>().map(|v| v.into_iter().filter(|x| x.1).map(|x| x.0).collect());
        if let Some(s) = r {
            screened = Some(s);
            break;
        }
    }
    if let Some(s) = screened {
        if annihilates(j, &s) {
            return Ok(s);
        }
    }
    if annihilates(j, &cands) {
        return Ok(cands);
    }
    Err(CoreError::SpectrumEscape { k })
}

/// Projectors `P_t` for all standard tableaux of size `n` on `V^{⊗n}`.
#[derive(Clone, Debug)]
pub struct Idempotents {
    pub n: usize,
    /// `spectra[k-1]` lists the exponents of `J_k`.
    pub spectra: Vec<Vec<i64>>,
    pub projectors: Vec<(StandardTableau, ExactMatrix)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectorCheck {
    pub idempotent: bool,
    pub orthogonal: bool,
    pub complete: bool,
}

impl ProjectorCheck {
    pub fn passed(&self) -> bool {
        self.idempotent && self.orthogonal && self.complete
    }
}

/// `Π_{c' ∈ spec, c' != c} (J - q^{2c'}) / (q^{2c} - q^{2c'})`.
fn interpolation_factor(j: &ExactMatrix, spec: &[i64], c: i64) -> ExactMatrix {
    let d = j.dim();
    if !spec.contains(&c) {
        return ExactMatrix::zeros(d);
    }
    let target = RatFunc::q_pow(2 * c as i32);
    let mut acc = ExactMatrix::identity(d);
    for &other in spec.iter().filter(|&&o| o != c) {
        let mu = RatFunc::q_pow(2 * other as i32);
        let denom = target.sub(&mu).inv().expect("distinct q-powers");
        acc = acc.mul(&j.sub(&ExactMatrix::scalar(d, &mu)).scale(&denom));
    }
    acc
}

pub fn spectral_idempotents(r: &HeckeSymmetry, n: usize) -> Result<Idempotents, CoreError> {
    if n == 0 {
        return Err(CoreError::Invalid("n must be positive".into()));
    }
    let js = jm_chain(r, n);
    let mut spectra = vec![vec![0]];
    for (k, j) in js.iter().enumerate().skip(1) {
        spectra.push(jm_spectrum(j, k + 1)?);
    }
    let mut cache: BTreeMap<(usize, i64), ExactMatrix> = BTreeMap::new();
    let mut projectors = Vec::new();
    for shape in partitions(n) {
        for t in standard_tableaux(&shape) {
            let contents = t.contents();
            let mut p = ExactMatrix::identity(js[0].dim());
            for k in 1..n {
                let f = cache.entry((k, contents[k])).or_insert_with(|| interpolation_factor(&js[k], &spectra[k], contents[k]));
                p = p.mul(f);
                if p.is_zero() {
                    break;
                }
            }
            projectors.push((t, p));
        }
    }
    Ok(Idempotents { n, spectra, projectors })
}

impl Idempotents {
    /// Rank of a projector, read off its trace.
    pub fn rank(&self, i: usize) -> usize {
        let tr = self.projectors[i].1.trace();
        let v = tr.as_rational().expect("trace of an idempotent is an integer");
        v.to_integer().try_into().expect("rank fits")
    }

    /// Total rank per shape.
    pub fn shape_ranks(&self) -> BTreeMap<Partition, usize> {
        let mut out = BTreeMap::new();
        for i in 0..self.projectors.len() {
            *out.entry(self.projectors[i].0.shape()).or_insert(0) += self.rank(i);
        }
        out
    }

    pub fn check(&self) -> ProjectorCheck {
        let ps: Vec<&ExactMatrix> = self.projectors.iter().map(|(_, p)| p).collect();
        let idempotent = ps.iter().all(|p| p.mul(p) == **p);
        let mut orthogonal = true;
        'o: for (a, pa) in ps.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for (b, pb) in ps.iter().enumerate() {
                if a != b && !pb.is_zero() && !pa.mul(pb).is_zero() {
                    orthogonal = false;
                    break 'o;
                }
            }
        }
        let d = ps.first().map_or(0, |p| p.dim());
        let sum = ps.iter().fold(ExactMatrix::zeros(d), |acc, p| acc.add(p));
        ProjectorCheck { idempotent, orthogonal, complete: sum.is_identity() }
    }
}

/// Shapes of size `n` whose total projector is nonzero.
pub fn nonzero_shapes(r: &HeckeSymmetry, n: usize) -> Result<Vec<Partition>, CoreError> {
    let id = spectral_idempotents(r, n)?;
    Ok(id.shape_ranks().into_iter().filter(|(_, k)| *k > 0).map(|(s, _)| s).rev().collect())
}
