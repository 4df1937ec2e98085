//! Hecke symmetries: constructors, classification, skew-inverse and R-trace.
//!
//! Matrix convention: the entry `R[(i,j)][(k,l)]` is `R_{ij}^{kl}`, rows carry
//! the lower index pair, and `R(x_i ⊗ x_j) = Σ R_{ij}^{kl} x_k ⊗ x_l`.

use std::collections::BTreeSet;

use regz_exact::{lambda, ExactMatrix, RatFunc};

use crate::error::CoreError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryKind {
    Hecke,
    Involutive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Hecke,
    Involutive,
    BraidingOnly,
    NotBraiding,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Hecke => "hecke",
            Classification::Involutive => "involutive",
            Classification::BraidingOnly => "braiding_only",
            Classification::NotBraiding => "not_braiding",
        }
    }
}

impl SymmetryKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SymmetryKind::Hecke => "hecke",
            SymmetryKind::Involutive => "involutive",
        }
    }
}

/// A validated skew-invertible Hecke or involutive symmetry.
#[derive(Clone, Debug)]
pub struct HeckeSymmetry {
    n: usize,
    r: ExactMatrix,
    r_inv: ExactMatrix,
    kind: SymmetryKind,
    psi: ExactMatrix,
    c: ExactMatrix,
    params: Vec<String>,
}

/// Result of the subalgebra closure test for the block of indices `< m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubClosure {
    pub block_is_symmetry: bool,
    /// First offending entry `(i, j, k, l)` of `R_{ij}^{kl}`, 1-based.
    pub witness: Option<[usize; 4]>,
}

impl SubClosure {
    pub fn passed(&self) -> bool {
        self.block_is_symmetry && self.witness.is_none()
    }
}

/// Side `n` of the space `V` for a matrix on `V ⊗ V`.
pub fn side_of(r: &ExactMatrix) -> Result<usize, CoreError> {
    let d = r.dim();
    let n = (d as f64).sqrt().round() as usize;
    if n * n != d || n == 0 {
        return Err(CoreError::Exact(regz_exact::ExactError::ShapeMismatch(format!("{d} is not a perfect square"))));
    }
    Ok(n)
}

/// `(R ⊗ I)(I ⊗ R)(R ⊗ I) - (I ⊗ R)(R ⊗ I)(I ⊗ R)`.
pub fn braid_residual(r: &ExactMatrix) -> Result<ExactMatrix, CoreError> {
    let n = side_of(r)?;
    let r1 = ExactMatrix::kron_embed(r, 1, 3, n)?;
    let r2 = ExactMatrix::kron_embed(r, 2, 3, n)?;
    Ok(r1.mul(&r2).mul(&r1).sub(&r2.mul(&r1).mul(&r2)))
}

/// `(qI - R)(q^{-1}I + R)`.
pub fn hecke_residual(r: &ExactMatrix) -> ExactMatrix {
    let d = r.dim();
    let a = ExactMatrix::scalar(d, &RatFunc::q()).sub(r);
    let b = ExactMatrix::scalar(d, &RatFunc::q_pow(-1)).add(r);
    a.mul(&b)
}

pub fn classify_symmetry(r: &ExactMatrix) -> Result<Classification, CoreError> {
    if !braid_residual(r)?.is_zero() {
        return Ok(Classification::NotBraiding);
    }
    if r.mul(r).is_identity() {
        return Ok(Classification::Involutive);
    }
    if hecke_residual(r).is_zero() {
        return Ok(Classification::Hecke);
    }
    Ok(Classification::BraidingOnly)
}

/// Solve `Σ_{a,b} R_{ib}^{ja} Ψ_{ak}^{bn} = δ_i^n δ_k^j` and form `C_i^j = Σ_k Ψ_{ik}^{jk}`.
///
/// For fixed `(n, k)` the system only couples the unknowns `Ψ_{ak}^{bn}` over
/// `(a, b)`, with the same coefficient matrix `M[(i,j),(a,b)] = R_{ib}^{ja}`
/// every time, so `Ψ_{ak}^{bn} = (M^{-1})[(a,b),(n,k)]`.
pub fn skew_inverse(r: &ExactMatrix) -> Result<(ExactMatrix, ExactMatrix), CoreError> {
    let n = side_of(r)?;
    let idx = |a: usize, b: usize| a * n + b;
    let m = ExactMatrix::from_fn(n * n, |row, col| {
        let (i, j) = (row / n, row % n);
        let (a, b) = (col / n, col % n);
        r.get(idx(i, b), idx(j, a)).clone()
    });
    let minv = m.inverse().map_err(|_| CoreError::NotSkewInvertible)?;
    let psi = ExactMatrix::from_fn(n * n, |row, col| {
        let (a, k) = (row / n, row % n);
        let (b, nn) = (col / n, col % n);
        minv.get(idx(a, b), idx(nn, k)).clone()
    })
    .with_shape(vec![n, n])?;
    let c = ExactMatrix::from_fn(n, |i, j| (0..n).fold(RatFunc::zero(), |acc, k| acc.add(psi.get(idx(i, k), idx(j, k)))));
    Ok((psi, c))
}

/// `Tr_(2) R_12 Ψ_23 - P_13`, computed with tensor embeddings.
pub fn skew_inverse_residual(r: &ExactMatrix, psi: &ExactMatrix) -> Result<ExactMatrix, CoreError> {
    let n = side_of(r)?;
    let r12 = ExactMatrix::kron_embed(r, 1, 3, n)?;
    let psi23 = ExactMatrix::kron_embed(psi, 2, 3, n)?;
    let lhs = r12.mul(&psi23).partial_trace(2)?;
    Ok(lhs.sub(&ExactMatrix::flip(n)))
}

fn params_of(r: &ExactMatrix) -> Vec<String> {
    let mut set = BTreeSet::new();
    for e in r.entries() {
        for v in e.vars() {
            if !v.is_q() {
                set.insert(v.name().to_string());
            }
        }
    }
    set.into_iter().collect()
}

impl HeckeSymmetry {
    /// Validate `r` and equip it with `Ψ` and `C`.
    pub fn new(r: ExactMatrix) -> Result<HeckeSymmetry, CoreError> {
        let n = side_of(&r)?;
        let r = r.with_shape(vec![n, n])?;
        let kind = match classify_symmetry(&r)? {
            Classification::Hecke => SymmetryKind::Hecke,
            Classification::Involutive => SymmetryKind::Involutive,
            other => return Err(CoreError::NotASymmetry(other.as_str().to_string())),
        };
        let r_inv = match kind {
            SymmetryKind::Hecke => r.sub(&ExactMatrix::scalar(n * n, &lambda())),
            SymmetryKind::Involutive => r.clone(),
        };
        let (psi, c) = skew_inverse(&r)?;
        let sym = HeckeSymmetry { n, params: params_of(&r), r, r_inv, kind, psi, c };
        if !skew_inverse_residual(&sym.r, &sym.psi)?.is_zero() {
            return Err(CoreError::AxiomFailure("skew-inverse residual is nonzero".into()));
        }
        if !sym.c_braid_residual().is_zero() {
            return Err(CoreError::AxiomFailure("R C1 C2 != C1 C2 R".into()));
        }
        Ok(sym)
    }

    /// The 1-dimensional symmetry `(q)`.
    pub fn even_block() -> HeckeSymmetry {
        HeckeSymmetry::dj(1)
    }

    /// The 1-dimensional symmetry `(-q^{-1})`.
    pub fn odd_block() -> HeckeSymmetry {
        let r = ExactMatrix::scalar(1, &RatFunc::q_pow(-1).neg());
        HeckeSymmetry::new(r).expect("(-1/q) is a Hecke symmetry")
    }

    /// Drinfeld-Jimbo symmetry on an `n`-dimensional space.
    pub fn dj(n: usize) -> HeckeSymmetry {
        assert!(n >= 1);
        let mut r = ExactMatrix::zeros(n * n);
        let lam = lambda();
        for i in 0..n {
            r.set(i * n + i, i * n + i, RatFunc::q());
            for j in 0..n {
                if i != j {
                    // E_i^j ⊗ E_j^i
                    r.set(i * n + j, j * n + i, RatFunc::one());
                }
                if i < j {
                    r.set(i * n + j, i * n + j, lam.clone());
                }
            }
        }
        HeckeSymmetry::new(r).expect("Drinfeld-Jimbo matrix is a Hecke symmetry")
    }

    /// The 9x9 Cremmer-Gervais symmetry with parameters `alpha != 0` and `beta`.
    ///
    /// The entry `R_{22}^{13}` is `-q^{-2} α^{-2} β`: with any other coefficient of
    /// `β` there the braid relation fails as soon as `β != 0`.
    pub fn cremmer_gervais3(alpha: &RatFunc, beta: &RatFunc) -> Result<HeckeSymmetry, CoreError> {
        if alpha.is_zero() {
            return Err(CoreError::ZeroParameter);
        }
        let q = RatFunc::q();
        let ai = alpha.inv()?;
        let lam = lambda();
        let mut r = ExactMatrix::zeros(9);
        let mut put = |i: usize, j: usize, v: RatFunc| r.set(i - 1, j - 1, v);
        put(1, 1, q.clone());
        put(2, 2, lam.clone());
        put(2, 4, alpha.clone());
        put(3, 3, lam.clone());
        put(3, 7, q.mul(&alpha.pow(2)));
        put(4, 2, ai.clone());
        put(5, 3, RatFunc::q_pow(-2).mul(beta).mul(&ai.pow(2)).neg());
        put(5, 5, q.clone());
        put(5, 7, beta.clone());
        put(6, 6, lam);
        put(6, 8, alpha.clone());
        put(7, 3, RatFunc::q_pow(-1).mul(&ai.pow(2)));
        put(8, 6, ai);
        put(9, 9, q);
        HeckeSymmetry::new(r)
    }

    /// Glue two Hecke symmetries on `V1 ⊕ V2`:
    /// `x⊗y -> λ x⊗y + α y⊗x`, `y⊗x -> α^{-1} x⊗y` for `x ∈ V1`, `y ∈ V2`.
    pub fn glue(r1: &HeckeSymmetry, r2: &HeckeSymmetry, alpha: &RatFunc) -> Result<HeckeSymmetry, CoreError> {
        if alpha.is_zero() {
            return Err(CoreError::ZeroParameter);
        }
        if r1.kind != SymmetryKind::Hecke || r2.kind != SymmetryKind::Hecke {
            return Err(CoreError::Invalid("glueing needs two Hecke symmetries".into()));
        }
        let (n1, n2) = (r1.n, r2.n);
        let n = n1 + n2;
        let ai = alpha.inv()?;
        let lam = lambda();
        let mut r = ExactMatrix::zeros(n * n);
        for i in 0..n1 {
            for j in 0..n1 {
                for k in 0..n1 {
                    for l in 0..n1 {
                        r.set(i * n + j, k * n + l, r1.r.get(i * n1 + j, k * n1 + l).clone());
                    }
                }
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                for k in 0..n2 {
                    for l in 0..n2 {
                        let (a, b, c, d) = (i + n1, j + n1, k + n1, l + n1);
                        r.set(a * n + b, c * n + d, r2.r.get(i * n2 + j, k * n2 + l).clone());
                    }
                }
            }
        }
        for x in 0..n1 {
            for y in n1..n {
                r.set(x * n + y, x * n + y, lam.clone());
                r.set(x * n + y, y * n + x, alpha.clone());
                r.set(y * n + x, x * n + y, ai.clone());
            }
        }
        HeckeSymmetry::new(r)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> &ExactMatrix {
        &self.r
    }

    pub fn r_inv(&self) -> &ExactMatrix {
        &self.r_inv
    }

    pub fn kind(&self) -> SymmetryKind {
        self.kind
    }

    pub fn psi(&self) -> &ExactMatrix {
        &self.psi
    }

    pub fn c_matrix(&self) -> &ExactMatrix {
        &self.c
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    /// `R_k` acting on factors `k, k+1` of `V^{⊗p}` (1-based).
    pub fn r_k(&self, k: usize, p: usize) -> ExactMatrix {
        ExactMatrix::kron_embed(&self.r, k, p, self.n).expect("slot in range")
    }

    pub fn r_k_inv(&self, k: usize, p: usize) -> ExactMatrix {
        ExactMatrix::kron_embed(&self.r_inv, k, p, self.n).expect("slot in range")
    }

    /// `Tr(C X)` for an `n x n` matrix.
    pub fn r_trace(&self, x: &ExactMatrix) -> Result<RatFunc, CoreError> {
        if x.dim() != self.n {
            return Err(CoreError::Exact(regz_exact::ExactError::ShapeMismatch(format!(
                "R-trace needs a {}x{} matrix",
                self.n, self.n
            ))));
        }
        Ok(self.c.mul(x).trace())
    }

    /// `R C_1 C_2 - C_1 C_2 R`.
    pub fn c_braid_residual(&self) -> ExactMatrix {
        let cc = self.c.kron(&self.c);
        self.r.mul(&cc).sub(&cc.mul(&self.r))
    }

    /// The sub-matrix on indices `< m` as a matrix.
    pub fn block(&self, m: usize) -> ExactMatrix {
        let n = self.n;
        let idx: Vec<usize> = (0..m).flat_map(|i| (0..m).map(move |j| i * n + j)).collect();
        self.r.restrict(&idx)
    }

    /// Closure test for the generators `l_i^j`, `i, j <= m`.
    pub fn sub_closure(&self, m: usize) -> SubClosure {
        assert!(m >= 1 && m < self.n, "1 <= m < N");
        let n = self.n;
        let block_is_symmetry = matches!(classify_symmetry(&self.block(m)), Ok(c) if c.as_str() == self.kind.as_str());
        let mut witness = None;
        'outer: for row in 0..n * n {
            let (i, j) = (row / n, row % n);
            for col in 0..n * n {
                let (k, l) = (col / n, col % n);
                if self.r.get(row, col).is_zero() {
                    continue;
                }
                let lower_in = i < m && j < m;
                let upper_in = k < m && l < m;
                if lower_in != upper_in {
                    witness = Some([i + 1, j + 1, k + 1, l + 1]);
                    break 'outer;
                }
            }
        }
        SubClosure { block_is_symmetry, witness }
    }

    pub fn sub_closure_check(&self, m: usize) -> bool {
        self.sub_closure(m).passed()
    }

    /// The upper-left block on indices `< m` as a symmetry in its own right.
    pub fn restrict(&self, m: usize) -> Result<HeckeSymmetry, CoreError> {
        HeckeSymmetry::new(self.block(m))
    }

    /// Replace `q` by 1 in every entry.
    pub fn at_q_one(&self) -> Result<ExactMatrix, CoreError> {
        Ok(self.r.try_map(|e| e.at_q_one())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use regz_exact::parse_scalar;

    fn mat(rows: &[&[&str]]) -> ExactMatrix {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| parse_scalar(s).unwrap()).collect()).collect()).unwrap()
    }

    #[test]
    fn dj_two_matches_displayed_matrix() {
        let r = HeckeSymmetry::dj(2);
        let expected = mat(&[&["q", "0", "0", "0"], &["0", "q - 1/q", "1", "0"], &["0", "1", "0", "0"], &["0", "0", "0", "q"]]);
        assert_eq!(r.r(), &expected);
        assert_eq!(r.kind(), SymmetryKind::Hecke);
        assert_eq!(HeckeSymmetry::dj(1).r(), &mat(&[&["q"]]));
        assert_eq!(HeckeSymmetry::dj(3).block(2), expected);
    }

    #[test]
    fn second_displayed_matrix_is_a_glue() {
        let g = HeckeSymmetry::glue(&HeckeSymmetry::even_block(), &HeckeSymmetry::odd_block(), &RatFunc::one()).unwrap();
        let expected = mat(&[&["q", "0", "0", "0"], &["0", "q - 1/q", "1", "0"], &["0", "1", "0", "0"], &["0", "0", "0", "-1/q"]]);
        assert_eq!(g.r(), &expected);
        let e = HeckeSymmetry::glue(&HeckeSymmetry::even_block(), &HeckeSymmetry::even_block(), &RatFunc::one()).unwrap();
        assert_eq!(e.r(), HeckeSymmetry::dj(2).r());
    }

    #[test]
    fn classification() {
        assert_eq!(classify_symmetry(&ExactMatrix::flip(2)).unwrap(), Classification::Involutive);
        assert_eq!(classify_symmetry(HeckeSymmetry::dj(2).r()).unwrap(), Classification::Hecke);
        let upper = ExactMatrix::from_fn(4, |i, j| if i <= j { RatFunc::one() } else { RatFunc::zero() });
        assert_eq!(classify_symmetry(&upper).unwrap(), Classification::NotBraiding);
        // all-ones is v v^T ⊗ v v^T, so both triple products equal 8 (v v^T)^{⊗3}
        let ones = ExactMatrix::from_fn(4, |_, _| RatFunc::one());
        assert_eq!(classify_symmetry(&ones).unwrap(), Classification::BraidingOnly);
        // a diagonal braiding that is neither involutive nor Hecke
        let d = ExactMatrix::scalar(4, &RatFunc::int(2));
        assert_eq!(classify_symmetry(&d).unwrap(), Classification::BraidingOnly);
        assert!(classify_symmetry(&ExactMatrix::identity(3)).is_err());
    }

    #[test]
    fn skew_inverse_small_cases() {
        let (psi, c) = skew_inverse(&ExactMatrix::flip(3)).unwrap();
        assert_eq!(psi, ExactMatrix::flip(3));
        assert!(c.is_identity());
        let h = HeckeSymmetry::dj(1);
        assert_eq!(h.psi().get(0, 0), &RatFunc::q_pow(-1));
        assert_eq!(h.c_matrix().get(0, 0), &RatFunc::q_pow(-1));
        assert!(skew_inverse(&ExactMatrix::zeros(4)).is_err());
    }

    #[test]
    fn r_trace_of_identity() {
        let p = HeckeSymmetry::new(ExactMatrix::flip(2)).unwrap();
        assert_eq!(p.r_trace(&ExactMatrix::identity(2)).unwrap(), RatFunc::int(2));
        assert_eq!(HeckeSymmetry::dj(1).r_trace(&ExactMatrix::identity(1)).unwrap(), RatFunc::q_pow(-1));
        assert!(p.r_trace(&ExactMatrix::identity(3)).is_err());
    }

    #[test]
    fn cremmer_gervais_zero_pattern() {
        let cg = HeckeSymmetry::cremmer_gervais3(&RatFunc::one(), &RatFunc::one()).unwrap();
        let sc = cg.sub_closure(2);
        assert!(sc.block_is_symmetry);
        assert_eq!(sc.witness, Some([2, 2, 1, 3]));
        assert_eq!(cg.r().get(4, 2), &RatFunc::q_pow(-2).neg());
        assert_eq!(cg.r().get(2, 6), &RatFunc::q());
        let cg0 = HeckeSymmetry::cremmer_gervais3(&RatFunc::var("a"), &RatFunc::zero()).unwrap();
        assert!(cg0.sub_closure_check(2));
        assert_eq!(HeckeSymmetry::cremmer_gervais3(&RatFunc::zero(), &RatFunc::one()).unwrap_err(), CoreError::ZeroParameter);
    }

    #[test]
    fn cremmer_gervais_beta_coefficient_is_forced() {
        let mut r = HeckeSymmetry::cremmer_gervais3(&RatFunc::one(), &RatFunc::one()).unwrap().r().clone();
        r.set(4, 2, RatFunc::q_pow(-3).neg());
        assert_eq!(classify_symmetry(&r).unwrap(), Classification::NotBraiding);
    }
}
