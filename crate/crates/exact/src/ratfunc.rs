//! Canonical rational functions in `q` and named parameters over the rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::ExactError;
use crate::int::Int;
use crate::modp::ModPoint;
use crate::poly::{Poly, Sym};

/// An element of Q(q, a1, ..., ag) in canonical form `q^shift * num / den`.
///
/// Invariants: `num` and `den` are coprime in Z[vars], neither is divisible by
/// `q`, the leading coefficient of `den` in graded-lex order is positive, and
/// zero is stored as `shift = 0, num = 0, den = 1`. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    shift: i32,
    num: Poly,
    den: Poly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc { shift: 0, num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RatFunc {
        RatFunc::int(1)
    }

    pub fn int(v: i64) -> RatFunc {
        RatFunc { shift: 0, num: Poly::int(v), den: Poly::one() }
    }

    /// The rational number `n / d`.
    pub fn ratio(n: i64, d: i64) -> RatFunc {
        RatFunc::from_parts(0, Poly::int(n), Poly::int(d))
    }

    pub fn from_bigrational(r: &BigRational) -> RatFunc {
        RatFunc::from_parts(0, Poly::from_bigint(r.numer().clone()), Poly::from_bigint(r.denom().clone()))
    }

    pub fn q() -> RatFunc {
        RatFunc::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i32) -> RatFunc {
        RatFunc { shift: k, num: Poly::one(), den: Poly::one() }
    }

    /// A named variable; the name `q` gives the deformation parameter.
    pub fn var(name: &str) -> RatFunc {
        let s = Sym::new(name);
        if s.is_q() {
            return RatFunc::q();
        }
        RatFunc { shift: 0, num: Poly::var(s), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc::from_parts(0, p, Poly::one())
    }

    /// Build `q^shift * num / den` and bring it to canonical form.
    pub fn from_parts(shift: i32, num: Poly, den: Poly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let vn = num.q_valuation();
        let vd = den.q_valuation();
        let mut num = num.div_q_pow(vn);
        let mut den = den.div_q_pow(vd);
        let shift = shift + vn as i32 - vd as i32;
        if !den.is_one() {
            let g = Poly::gcd(&num, &den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        RatFunc { shift, num, den }.fix_sign()
    }

    fn fix_sign(self) -> RatFunc {
        if self.den.grlex_lead_sign() < 0 {
            RatFunc { shift: self.shift, num: self.num.neg(), den: self.den.neg() }
        } else {
            self
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True for Laurent polynomials (denominator a power of `q`).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// True for `c * q^k` with `c` a nonzero integer.
    pub fn is_monomial(&self) -> bool {
        self.den.is_one() && matches!(self.num, Poly::Int(_)) && !self.num.is_zero()
    }

    /// True if no variable other than `q` occurs.
    pub fn is_q_only(&self) -> bool {
        self.vars().iter().all(Sym::is_q)
    }

    /// True for a constant rational number.
    pub fn is_constant(&self) -> bool {
        (self.shift == 0 || self.is_zero()) && matches!(self.num, Poly::Int(_)) && matches!(self.den, Poly::Int(_))
    }

    /// The constant value, if `self` is a rational number.
    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        let n = self.num.as_int()?.to_big();
        let d = self.den.as_int()?.to_big();
        Some(BigRational::new(n, d))
    }

    /// Numerator with the `q`-shift folded in (non-negative power part).
    pub fn numer(&self) -> Poly {
        if self.shift > 0 {
            self.num.mul_q_pow(self.shift as usize)
        } else {
            self.num.clone()
        }
    }

    /// Denominator with the `q`-shift folded in.
    pub fn denom(&self) -> Poly {
        if self.shift < 0 {
            self.den.mul_q_pow((-self.shift) as usize)
        } else {
            self.den.clone()
        }
    }

    /// Variables occurring in numerator or denominator (including `q` through the shift).
    pub fn vars(&self) -> std::collections::BTreeSet<Sym> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        if self.shift != 0 && !self.is_zero() {
            v.insert(Sym::q());
        }
        v
    }

    /// Rough size used to rank pivot candidates.
    pub fn complexity(&self) -> usize {
        self.num.size() + self.den.size() + usize::from(!self.den.is_one()) * 4
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { shift: self.shift, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let m = self.shift.min(other.shift);
        let a1 = self.num.mul_q_pow((self.shift - m) as usize);
        let a2 = other.num.mul_q_pow((other.shift - m) as usize);
        let (num, den) = if self.den == other.den {
            let num = a1.add(&a2);
            if num.is_zero() {
                return RatFunc::zero();
            }
            if self.den.is_one() {
                (num, Poly::one())
            } else {
                let g = Poly::gcd(&num, &self.den);
                if g.is_one() {
                    (num, self.den.clone())
                } else {
                    (num.div_exact(&g).unwrap(), self.den.div_exact(&g).unwrap())
                }
            }
        } else {
            let g = Poly::gcd(&self.den, &other.den);
            let d1 = self.den.div_exact(&g).unwrap();
            let d2 = other.den.div_exact(&g).unwrap();
            let num = a1.mul(&d2).add(&a2.mul(&d1));
            if num.is_zero() {
                return RatFunc::zero();
            }
            let den = self.den.mul(&d2);
            if g.is_one() {
                (num, den)
            } else {
                let g2 = Poly::gcd(&num, &g);
                if g2.is_one() {
                    (num, den)
                } else {
                    (num.div_exact(&g2).unwrap(), den.div_exact(&g2).unwrap())
                }
            }
        };
        let v = num.q_valuation();
        RatFunc { shift: m + v as i32, num: num.div_q_pow(v), den }.fix_sign()
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        let shift = self.shift + other.shift;
        if self.den.is_one() && other.den.is_one() {
            return RatFunc { shift, num: self.num.mul(&other.num), den: Poly::one() };
        }
        let (n1, d2) = cancel(&self.num, &other.den);
        let (n2, d1) = cancel(&other.num, &self.den);
        RatFunc { shift, num: n1.mul(&n2), den: d1.mul(&d2) }.fix_sign()
    }

    pub fn inv(&self) -> Result<RatFunc, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(RatFunc { shift: -self.shift, num: self.den.clone(), den: self.num.clone() }.fix_sign())
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, ExactError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i32) -> RatFunc {
        if e == 0 {
            return RatFunc::one();
        }
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let k = e.unsigned_abs();
        RatFunc { shift: base.shift * k as i32, num: base.num.pow(k), den: base.den.pow(k) }
    }

    pub fn scale_int(&self, k: i64) -> RatFunc {
        self.mul(&RatFunc::int(k))
    }

    /// Evaluate modulo a prime. `None` when the denominator vanishes there.
    pub fn eval_mod(&self, pt: &ModPoint) -> Option<u64> {
        let p = pt.prime();
        let lookup = |s: &Sym| pt.value(s);
        let n = self.num.eval_mod(p, &lookup);
        let d = self.den.eval_mod(p, &lookup);
        if d == 0 {
            return None;
        }
        let qv = pt.value(&Sym::q());
        let mut val = crate::modp::mul_mod(n, crate::modp::inv_mod(d, p), p);
        if self.shift != 0 {
            if qv == 0 {
                return if self.shift > 0 { Some(0) } else { None };
            }
            let qs = if self.shift > 0 {
                crate::modp::pow_mod(qv, self.shift as u64, p)
            } else {
                crate::modp::inv_mod(crate::modp::pow_mod(qv, (-self.shift) as u64, p), p)
            };
            val = crate::modp::mul_mod(val, qs, p);
        }
        Some(val)
    }

    /// Evaluate at rational values for every variable.
    pub fn eval_rational(&self, value: &dyn Fn(&Sym) -> Option<BigRational>) -> Result<BigRational, ExactError> {
        let n = self.num.eval_rational(value).ok_or(ExactError::UnboundVariable)?;
        let d = self.den.eval_rational(value).ok_or(ExactError::UnboundVariable)?;
        if d.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let mut v = n / d;
        if self.shift != 0 {
            let qv = value(&Sym::q()).ok_or(ExactError::UnboundVariable)?;
            if qv.is_zero() && self.shift < 0 {
                return Err(ExactError::DivisionByZero);
            }
            v *= num_traits::pow::Pow::pow(&qv, self.shift);
        }
        Ok(v)
    }

    /// Substitute `var := value`.
    pub fn subs(&self, var: &Sym, value: &RatFunc) -> Result<RatFunc, ExactError> {
        let n = subs_poly(&self.numer(), var, value);
        let d = subs_poly(&self.denom(), var, value);
        n.div(&d)
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: &Sym) -> RatFunc {
        let n = self.numer();
        let d = self.denom();
        let top = n.derivative(v).mul(&d).sub(&n.mul(&d.derivative(v)));
        RatFunc::from_parts(0, top, d.mul(&d))
    }

    /// Value at `q = 1`; the function may involve no other variable.
    pub fn value_at_one(&self) -> Result<BigRational, ExactError> {
        if !self.is_q_only() {
            return Err(ExactError::UnboundVariable);
        }
        let one = BigRational::one();
        let d = self.den.eval_rational(&|_| Some(one.clone())).unwrap();
        if d.is_zero() {
            return Err(ExactError::PoleAtOne);
        }
        let n = self.num.eval_rational(&|_| Some(one.clone())).unwrap();
        Ok(n / d)
    }

    /// `df/dq` evaluated at `q = 1`.
    pub fn derivative_at_one(&self) -> Result<BigRational, ExactError> {
        self.value_at_one()?;
        self.derivative(&Sym::q()).value_at_one()
    }

    /// Substitute `q := 1`, keeping the other variables symbolic.
    pub fn at_q_one(&self) -> Result<RatFunc, ExactError> {
        let r = self.subs(&Sym::q(), &RatFunc::one());
        match r {
            Err(ExactError::DivisionByZero) => Err(ExactError::PoleAtOne),
            other => other,
        }
    }

    /// Render as a string accepted by [`crate::parse_scalar`].
    pub fn to_expr(&self) -> String {
        let n = self.numer();
        let d = self.denom();
        if d.is_one() {
            format!("{n}")
        } else {
            let ns = if n.size() > 1 { format!("({n})") } else { format!("{n}") };
            format!("{ns}/({d})")
        }
    }

    /// Coefficients with respect to the monomials in `vars`: returns pairs of
    /// exponent vectors (aligned with `vars`) and coefficients free of `vars`.
    /// Only valid when the denominator does not involve `vars`.
    pub fn coefficients_in(&self, vars: &[Sym]) -> Option<Vec<(Vec<u32>, RatFunc)>> {
        let dvars = self.den.vars();
        if vars.iter().any(|v| dvars.contains(v)) {
            return None;
        }
        let mut groups: std::collections::BTreeMap<Vec<u32>, Poly> = std::collections::BTreeMap::new();
        for (mono, c) in self.num.terms() {
            let mut key = vec![0u32; vars.len()];
            let mut rest = Poly::Int(c);
            for (s, e) in mono {
                if let Some(i) = vars.iter().position(|v| *v == s) {
                    key[i] = e;
                } else {
                    rest = rest.mul(&Poly::monomial(s, e as usize, Poly::one()));
                }
            }
            let slot = groups.entry(key).or_insert_with(Poly::zero);
            *slot = slot.add(&rest);
        }
        Some(
            groups
                .into_iter()
                .filter(|(_, p)| !p.is_zero())
                .map(|(k, p)| (k, RatFunc::from_parts(self.shift, p, self.den.clone())))
                .collect(),
        )
    }
}

fn cancel(n: &Poly, d: &Poly) -> (Poly, Poly) {
    if d.is_one() {
        return (n.clone(), Poly::one());
    }
    let g = Poly::gcd(n, d);
    if g.is_one() {
        (n.clone(), d.clone())
    } else {
        (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
    }
}

fn subs_poly(p: &Poly, var: &Sym, value: &RatFunc) -> RatFunc {
    let mut acc = RatFunc::zero();
    for (mono, c) in p.terms() {
        let mut t = RatFunc::from_poly(Poly::Int(c));
        for (s, e) in mono {
            let f = if s == *var { value.pow(e as i32) } else { RatFunc::from_poly(Poly::monomial(s, e as usize, Poly::one())) };
            t = t.mul(&f);
        }
        acc = acc.add(&t);
    }
    acc
}

/// The q-number `(q^k - q^-k)/(q - q^-1)`.
pub fn q_number(k: i64) -> RatFunc {
    if k == 0 {
        return RatFunc::zero();
    }
    // q^(1-|k|) * (1 + q^2 + ... + q^(2|k|-2)), odd in k
    let n = k.unsigned_abs() as usize;
    let mut coeffs = vec![Poly::zero(); 2 * n - 1];
    for i in 0..n {
        coeffs[2 * i] = Poly::one();
    }
    let poly = if coeffs.len() == 1 { Poly::one() } else { Poly::Uni(Sym::q(), coeffs) };
    let v = RatFunc::from_parts(1 - n as i32, poly, Poly::one());
    if k < 0 {
        v.neg()
    } else {
        v
    }
}

/// `k_q! = 1_q 2_q ... k_q`.
pub fn q_factorial(k: u32) -> RatFunc {
    (1..=k as i64).fold(RatFunc::one(), |acc, i| acc.mul(&q_number(i)))
}

/// `lambda = q - q^-1`.
pub fn lambda() -> RatFunc {
    RatFunc::q().sub(&RatFunc::q_pow(-1))
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl From<i64> for RatFunc {
    fn from(v: i64) -> Self {
        RatFunc::int(v)
    }
}

impl From<Int> for RatFunc {
    fn from(v: Int) -> Self {
        RatFunc::from_poly(Poly::Int(v))
    }
}

impl From<BigInt> for RatFunc {
    fn from(v: BigInt) -> Self {
        RatFunc::from_poly(Poly::from_bigint(v))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:expr) => {
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                $imp(self, rhs)
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                $imp(&self, &rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                $imp(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, RatFunc::add);
forward_binop!(Sub, sub, RatFunc::sub);
forward_binop!(Mul, mul, RatFunc::mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(&self)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        *self = RatFunc::add(self, rhs);
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &RatFunc) {
        *self = RatFunc::sub(self, rhs);
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RatFunc {
        RatFunc::q()
    }

    #[test]
    fn q_numbers() {
        assert_eq!(q_number(2), q() + RatFunc::q_pow(-1));
        assert_eq!(q_number(0), RatFunc::zero());
        assert_eq!(q_number(-1), RatFunc::int(-1));
        assert_eq!(q_number(1), RatFunc::one());
        // definition route
        let def = (RatFunc::q_pow(3) - RatFunc::q_pow(-3)).div(&lambda()).unwrap();
        assert_eq!(q_number(3), def);
        assert_eq!(q_factorial(3), q_number(2) * q_number(3));
    }

    #[test]
    fn canonical_form_cancels() {
        let x = (q() * q() - RatFunc::one()).div(&(q() - RatFunc::one())).unwrap();
        assert_eq!(x, q() + RatFunc::one());
        let y = RatFunc::ratio(6, -4);
        assert_eq!(y, RatFunc::ratio(-3, 2));
        assert_eq!(y.to_expr(), "-3/(2)");
        let z = (RatFunc::int(1) - q()).inv().unwrap();
        assert_eq!(z.neg(), (q() - RatFunc::one()).inv().unwrap());
    }

    #[test]
    fn derivative_at_one_examples() {
        assert_eq!(lambda().derivative_at_one().unwrap(), BigRational::from_integer(2.into()));
        assert_eq!(RatFunc::q_pow(-3).derivative_at_one().unwrap(), BigRational::from_integer((-3).into()));
        let pole = (q() - RatFunc::one()).inv().unwrap();
        assert_eq!(pole.derivative_at_one(), Err(ExactError::PoleAtOne));
        assert_eq!(pole.value_at_one(), Err(ExactError::PoleAtOne));
    }

    #[test]
    fn parameters_mix_with_q() {
        let a = RatFunc::var("a");
        let x = (a.clone() * q() - RatFunc::one()).div(&(a.clone() * a.clone() * q() * q() - RatFunc::one())).unwrap();
        assert_eq!(x, (a.clone() * q() + RatFunc::one()).inv().unwrap());
        let y = &x * &(a.clone() * q() + RatFunc::one());
        assert!(y.is_one());
        assert_eq!(x.subs(&Sym::new("a"), &RatFunc::one()).unwrap(), (q() + RatFunc::one()).inv().unwrap());
    }
}
