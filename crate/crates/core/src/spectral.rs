//! Commutative spectral model: eigenvalue variables, power sums through
//! eigenvalues and their values on the modules labelled by partitions.

use regz_exact::{lambda, q_number, BigRational, RatFunc};

use crate::error::CoreError;
use crate::symfun;

/// Free symbols `mu1..mum`.
pub fn mu_vars(m: usize) -> Vec<RatFunc> {
    (1..=m).map(|i| RatFunc::var(&format!("mu{i}"))).collect()
}

/// Free symbols `hmu1..hmum` for the shifted generating matrix.
pub fn hmu_vars(m: usize) -> Vec<RatFunc> {
    (1..=m).map(|i| RatFunc::var(&format!("hmu{i}"))).collect()
}

/// Elementary symmetric polynomial of degree `k` in the given values.
pub fn elementary(vals: &[RatFunc], k: usize) -> RatFunc {
    // e[j] after processing a prefix holds σ_j of that prefix.
    let mut e = vec![RatFunc::zero(); k + 1];
    e[0] = RatFunc::one();
    for v in vals {
        for j in (1..=k).rev() {
            e[j] = e[j].add(&e[j - 1].mul(v));
        }
    }
    e[k].clone()
}

/// `e_k = q^{-k} σ_k(μ)`; zero for `k > m`.
pub fn e_from_mu(m: usize, k: usize) -> RatFunc {
    e_at(&mu_vars(m), k)
}

fn e_at(mu: &[RatFunc], k: usize) -> RatFunc {
    RatFunc::q_pow(-(k as i32)).mul(&elementary(mu, k))
}

fn distinct(vals: &[RatFunc]) -> Result<(), CoreError> {
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            if vals[i] == vals[j] {
                return Err(CoreError::NotGeneric(format!("eigenvalues {} and {} coincide", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// `q^{-1} Σ_i μ_i^k Π_{j≠i} (μ_i - q^{-2} μ_j)/(μ_i - μ_j)` at the given values.
pub fn p_spectral_at(mu: &[RatFunc], k: usize) -> Result<RatFunc, CoreError> {
    distinct(mu)?;
    let qm2 = RatFunc::q_pow(-2);
    let mut acc = RatFunc::zero();
    for (i, mi) in mu.iter().enumerate() {
        let mut t = mi.pow(k as i32);
        for (j, mj) in mu.iter().enumerate() {
            if i != j {
                t = t.mul(&mi.sub(&qm2.mul(mj)).div(&mi.sub(mj))?);
            }
        }
        acc = acc.add(&t);
    }
    Ok(RatFunc::q_pow(-1).mul(&acc))
}

pub fn p_spectral(m: usize, k: usize) -> RatFunc {
    p_spectral_at(&mu_vars(m), k).expect("free symbols are distinct")
}

/// Which constant enters the shifted product factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftedForm {
    /// `(q^{-1} + ĥμ_i - q^{-2} ĥμ_j)/(ĥμ_i - ĥμ_j)`, the displayed form.
    Printed,
    /// `(-q^{-1} + ĥμ_i - q^{-2} ĥμ_j)/(ĥμ_i - ĥμ_j)`, obtained by substituting
    /// `μ = 1 - (q - q^{-1}) ĥμ` into the unshifted factor.
    FromShift,
}

impl ShiftedForm {
    pub fn as_str(&self) -> &'static str {
        match self {
            ShiftedForm::Printed => "printed",
            ShiftedForm::FromShift => "from_shift",
        }
    }

    fn constant(&self) -> RatFunc {
        match self {
            ShiftedForm::Printed => RatFunc::q_pow(-1),
            ShiftedForm::FromShift => RatFunc::q_pow(-1).neg(),
        }
    }
}

/// `q^{-1} Σ_i ĥμ_i^k Π_{j≠i} (c + ĥμ_i - q^{-2} ĥμ_j)/(ĥμ_i - ĥμ_j)` at the given values.
pub fn p_modified_at(hmu: &[RatFunc], k: usize, form: ShiftedForm) -> Result<RatFunc, CoreError> {
    distinct(hmu)?;
    let c = form.constant();
    let qm2 = RatFunc::q_pow(-2);
    let mut acc = RatFunc::zero();
    for (i, hi) in hmu.iter().enumerate() {
        let mut t = hi.pow(k as i32);
        for (j, hj) in hmu.iter().enumerate() {
            if i != j {
                t = t.mul(&c.add(hi).sub(&qm2.mul(hj)).div(&hi.sub(hj))?);
            }
        }
        acc = acc.add(&t);
    }
    Ok(RatFunc::q_pow(-1).mul(&acc))
}

pub fn p_modified(m: usize, k: usize, form: ShiftedForm) -> RatFunc {
    p_modified_at(&hmu_vars(m), k, form).expect("free symbols are distinct")
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Compare the shifted power sum at `ĥμ_i = (1 - μ_i)/(q - q^{-1})` with
/// `(q - q^{-1})^{-k} Σ_j C(k, j) (-1)^j p_j`, where `p_0 = Tr_R I` is the
/// spectral zeroth power sum.
pub fn p_modified_shift_check(m: usize, k: usize, form: ShiftedForm) -> Result<bool, CoreError> {
    let lam = lambda();
    let mu = mu_vars(m);
    let hmu: Vec<RatFunc> = mu.iter().map(|x| RatFunc::one().sub(x).div(&lam)).collect::<Result<_, _>>()?;
    let lhs = p_modified_at(&hmu, k, form)?;
    let mut rhs = RatFunc::zero();
    for j in 0..=k {
        let t = p_spectral_at(&mu, j)?.scale_int(binomial(k, j));
        rhs = if j % 2 == 0 { rhs.add(&t) } else { rhs.sub(&t) };
    }
    Ok(lhs == rhs.mul(&lam.pow(-(k as i32))))
}

/// One row of [`newton_consistency`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonRow {
    pub k: usize,
    /// `p_k` from the `e`-determinant on `e_from_mu` equals the spectral `p_k`.
    pub p_from_e: bool,
    /// `e_k` from the `p`-determinant on spectral power sums equals `e_from_mu`.
    pub e_from_p: bool,
    /// `p_k` from the `h`-determinant on the `h` defined from power sums.
    pub p_from_h: bool,
    pub wronski: bool,
}

impl NewtonRow {
    pub fn passed(&self) -> bool {
        self.p_from_e && self.e_from_p && self.p_from_h && self.wronski
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonReport {
    pub m: usize,
    pub rows: Vec<NewtonRow>,
}

impl NewtonReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(NewtonRow::passed)
    }
}

/// Determinant relations checked as identities of rational functions in `μ`.
pub fn newton_consistency(m: usize, k_max: usize) -> NewtonReport {
    let mu = mu_vars(m);
    let e: Vec<RatFunc> = (1..=k_max).map(|k| e_at(&mu, k)).collect();
    let p: Vec<RatFunc> = (1..=k_max).map(|k| p_spectral_at(&mu, k).expect("distinct symbols")).collect();
    let h: Vec<RatFunc> = (1..=k_max).map(|k| symfun::h_from_p(k, &p)).collect();
    let rows = (1..=k_max)
        .map(|k| NewtonRow {
            k,
            p_from_e: symfun::p_from_e(k, &e) == p[k - 1],
            e_from_p: symfun::e_from_p(k, &p) == e[k - 1],
            p_from_h: symfun::p_from_h(k, &h) == p[k - 1],
            wronski: symfun::wronski(k, &e, &h).is_zero(),
        })
        .collect();
    NewtonReport { m, rows }
}

/// `λ_i + m - i` for `i = 1..m`, with `λ` padded by zeros.
pub fn exponents(lambda: &[usize], m: usize) -> Result<Vec<i64>, CoreError> {
    if lambda.iter().filter(|&&x| x > 0).count() > m {
        return Err(CoreError::IndexOutOfRange(format!("partition {lambda:?} has more than {m} parts")));
    }
    Ok((1..=m).map(|i| lambda.get(i - 1).copied().unwrap_or(0) as i64 + (m - i) as i64).collect())
}

/// `q^{-2(λ_k + m - k)}`.
pub fn char_mu(lambda: &[usize], m: usize, k: usize) -> Result<RatFunc, CoreError> {
    if k == 0 || k > m {
        return Err(CoreError::IndexOutOfRange(format!("eigenvalue index {k} outside 1..={m}")));
    }
    let a = exponents(lambda, m)?;
    Ok(RatFunc::q_pow(-2 * a[k - 1] as i32))
}

/// Character of a power sum computed two ways.
#[derive(Clone, Debug, PartialEq)]
pub struct CharValue {
    /// Spectral power sum at the eigenvalue characters.
    pub derived: RatFunc,
    /// The q-number product formula with prefactor `q^{-2}`.
    pub product_formula: RatFunc,
    /// `derived / product_formula`.
    pub ratio: RatFunc,
}

pub fn char_power_sum(lambda: &[usize], m: usize, k: usize) -> Result<CharValue, CoreError> {
    let a = exponents(lambda, m)?;
    let mu: Vec<RatFunc> = a.iter().map(|&x| RatFunc::q_pow(-2 * x as i32)).collect();
    let derived = p_spectral_at(&mu, k)?;
    let mut acc = RatFunc::zero();
    for i in 0..m {
        let mut t = RatFunc::q_pow(-2 * (k as i32) * a[i] as i32);
        for j in 0..m {
            if i != j {
                let d = a[j] - a[i];
                t = t.mul(&q_number(d + 1).div(&q_number(d))?);
            }
        }
        acc = acc.add(&t);
    }
    let product_formula = RatFunc::q_pow(-2).mul(&acc);
    let ratio = derived.div(&product_formula)?;
    Ok(CharValue { derived, product_formula, ratio })
}

/// `q^{-a}(a)_q` with `a = λ_i + m - i`.
pub fn modified_eigen(lambda: &[usize], m: usize, i: usize) -> Result<RatFunc, CoreError> {
    if i == 0 || i > m {
        return Err(CoreError::IndexOutOfRange(format!("eigenvalue index {i} outside 1..={m}")));
    }
    let a = exponents(lambda, m)?[i - 1];
    Ok(RatFunc::q_pow(-a as i32).mul(&q_number(a)))
}

/// Shifted power sum at the characters of the shifted eigenvalues.
pub fn char_p_modified(lambda: &[usize], m: usize, k: usize, form: ShiftedForm) -> Result<RatFunc, CoreError> {
    let hmu: Vec<RatFunc> = (1..=m).map(|i| modified_eigen(lambda, m, i)).collect::<Result<_, _>>()?;
    p_modified_at(&hmu, k, form)
}

/// `Σ_i a_i^k Π_{j≠i} (s + a_i - a_j)/(a_i - a_j)` with `s = ±1` per `form`:
/// the `q = 1` value of [`char_p_modified`].
pub fn classical_power_sum(lambda: &[usize], m: usize, k: usize, form: ShiftedForm) -> Result<BigRational, CoreError> {
    let sign: i64 = if form == ShiftedForm::Printed { 1 } else { -1 };
    let a = exponents(lambda, m)?;
    let mut acc = BigRational::from_integer(0.into());
    for i in 0..m {
        let mut t = BigRational::from_integer(a[i].into()).pow(k as i32);
        for j in 0..m {
            if i != j {
                let d = BigRational::from_integer((a[i] - a[j]).into());
                t = t * (BigRational::from_integer(sign.into()) + &d) / d;
            }
        }
        acc += t;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use regz_exact::parse_scalar;

    fn s(x: &str) -> RatFunc {
        parse_scalar(x).unwrap()
    }

    #[test]
    fn elementary_values() {
        assert_eq!(e_from_mu(1, 1), s("mu1/q"));
        assert_eq!(e_from_mu(2, 2), s("mu1*mu2/q^2"));
        assert_eq!(e_from_mu(2, 1), s("(mu1 + mu2)/q"));
        assert!(e_from_mu(2, 3).is_zero());
    }

    #[test]
    fn spectral_power_sums() {
        assert_eq!(p_spectral(1, 3), s("mu1^3/q"));
        assert_eq!(p_spectral(2, 1), s("(mu1 + mu2)/q"));
        // Zeroth power sum is the R-trace of the identity.
        assert_eq!(p_spectral(2, 0), s("(1 + q^-2)/q"));
    }

    #[test]
    fn newton_small() {
        assert!(newton_consistency(1, 4).passed());
        assert!(newton_consistency(2, 3).passed());
    }

    #[test]
    fn characters() {
        assert_eq!(char_mu(&[1], 2, 1).unwrap(), s("q^-4"));
        assert_eq!(char_mu(&[1], 2, 2).unwrap(), s("1"));
        assert_eq!(char_mu(&[3], 1, 1).unwrap(), s("q^-6"));
        assert!(char_mu(&[1, 1, 1], 2, 1).is_err());
        let v = char_power_sum(&[2], 1, 3).unwrap();
        assert_eq!(v.derived, s("q^-13"));
        assert_eq!(v.product_formula, s("q^-14"));
        assert_eq!(v.ratio, s("q"));
        for lam in [vec![1], vec![2], vec![1, 1], vec![2, 1]] {
            assert!(char_power_sum(&lam, 2, 2).unwrap().ratio.is_one());
            assert_eq!(char_power_sum(&lam, 3, 1).unwrap().ratio, s("1/q"));
        }
    }

    #[test]
    fn shifted_eigenvalues() {
        assert_eq!(modified_eigen(&[1], 1, 1).unwrap(), s("1/q"));
        assert!(modified_eigen(&[0], 1, 1).unwrap().is_zero());
        let v = modified_eigen(&[2], 2, 1).unwrap();
        assert_eq!(v.value_at_one().unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(modified_eigen(&[2], 2, 1).unwrap(), RatFunc::one().sub(&char_mu(&[2], 2, 1).unwrap()).div(&lambda()).unwrap());
    }

    #[test]
    fn shifted_power_sums() {
        for form in [ShiftedForm::Printed, ShiftedForm::FromShift] {
            assert_eq!(p_modified(1, 2, form), s("hmu1^2/q"));
            assert!(p_modified_shift_check(1, 2, form).unwrap());
            for lam in [vec![2], vec![1, 1], vec![3, 1]] {
                for k in 1..=3 {
                    let v = char_p_modified(&lam, 2, k, form).unwrap().value_at_one().unwrap();
                    assert_eq!(v, classical_power_sum(&lam, 2, k, form).unwrap());
                }
            }
        }
        for k in 1..=3 {
            assert!(p_modified_shift_check(2, k, ShiftedForm::FromShift).unwrap(), "k={k}");
            assert!(!p_modified_shift_check(2, k, ShiftedForm::Printed).unwrap(), "k={k}");
        }
        // Classical degree of the defining module of gl(2).
        let one = BigRational::from_integer(1.into());
        assert_eq!(classical_power_sum(&[1], 2, 1, ShiftedForm::FromShift).unwrap(), one);
    }
}
