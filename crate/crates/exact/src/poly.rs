//! Multivariate polynomials over the integers in recursive dense form.
//!
//! A polynomial is either an integer constant or a univariate polynomial in
//! its main variable whose coefficients only involve variables that sort
//! after it. Variables sort with `q` first and the rest by name, so `q` is
//! always the outermost variable.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::int::Int;

/// A variable name. Ordering puts `q` before every other name.
#[derive(Clone)]
pub struct Sym(Arc<str>);

impl Sym {
    pub fn new(name: &str) -> Sym {
        if name == "q" {
            return Sym::q();
        }
        Sym(Arc::from(name))
    }

    pub fn q() -> Sym {
        static Q: OnceLock<Sym> = OnceLock::new();
        Q.get_or_init(|| Sym(Arc::from("q"))).clone()
    }

    #[inline]
    pub fn is_q(&self) -> bool {
        &*self.0 == "q"
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl PartialEq for Sym {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Sym {}

impl Hash for Sym {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl Ord for Sym {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match (self.is_q(), other.is_q()) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for Sym {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Polynomial with integer coefficients in any number of named variables.
///
/// Invariant for `Uni(v, c)`: `c.len() >= 2`, the last coefficient is
/// nonzero and every coefficient only involves variables greater than `v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Poly {
    Int(Int),
    Uni(Sym, Vec<Poly>),
}

impl Default for Poly {
    fn default() -> Self {
        Poly::zero()
    }
}

fn mk(var: Sym, mut coeffs: Vec<Poly>) -> Poly {
    while coeffs.last().is_some_and(Poly::is_zero) {
        coeffs.pop();
    }
    match coeffs.len() {
        0 => Poly::zero(),
        1 => coeffs.pop().unwrap(),
        _ => Poly::Uni(var, coeffs),
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::Int(Int::ZERO)
    }

    pub fn one() -> Poly {
        Poly::Int(Int::ONE)
    }

    pub fn int(v: i64) -> Poly {
        Poly::Int(Int::from(v))
    }

    pub fn var(s: Sym) -> Poly {
        Poly::Uni(s, vec![Poly::zero(), Poly::one()])
    }

    /// `coeff * var^exp`.
    pub fn monomial(var: Sym, exp: usize, coeff: Poly) -> Poly {
        if coeff.is_zero() {
            return Poly::zero();
        }
        if exp == 0 {
            return coeff;
        }
        let mut c = vec![Poly::zero(); exp + 1];
        c[exp] = coeff;
        Poly::Uni(var, c)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Poly::Int(Int::Small(0)))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self, Poly::Int(Int::Small(1)))
    }

    pub fn as_int(&self) -> Option<&Int> {
        match self {
            Poly::Int(i) => Some(i),
            _ => None,
        }
    }

    pub fn main_var(&self) -> Option<&Sym> {
        match self {
            Poly::Int(_) => None,
            Poly::Uni(v, _) => Some(v),
        }
    }

    /// True when `self` does not involve `v` (all its variables sort after `v`).
    fn is_const_wrt(&self, v: &Sym) -> bool {
        match self {
            Poly::Int(_) => true,
            Poly::Uni(w, _) => w > v,
        }
    }

    /// Degree in `v`, where `v` is either the main variable or absent.
    fn deg_in(&self, v: &Sym) -> usize {
        match self {
            Poly::Uni(w, c) if w == v => c.len() - 1,
            _ => 0,
        }
    }

    fn coeffs_in(&self, v: &Sym) -> Vec<Poly> {
        match self {
            Poly::Uni(w, c) if w == v => c.clone(),
            _ => vec![self.clone()],
        }
    }

    fn lc_in(&self, v: &Sym) -> Poly {
        match self {
            Poly::Uni(w, c) if w == v => c.last().unwrap().clone(),
            _ => self.clone(),
        }
    }

    /// All variables that occur.
    pub fn vars(&self) -> BTreeSet<Sym> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Sym>) {
        if let Poly::Uni(v, c) = self {
            out.insert(v.clone());
            for x in c {
                x.collect_vars(out);
            }
        }
    }

    pub fn neg(&self) -> Poly {
        match self {
            Poly::Int(i) => Poly::Int(-i),
            Poly::Uni(v, c) => Poly::Uni(v.clone(), c.iter().map(Poly::neg).collect()),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        match (self, other) {
            (Poly::Int(a), Poly::Int(b)) => Poly::Int(a + b),
            (Poly::Uni(v, c), Poly::Int(_)) => {
                let mut c = c.clone();
                c[0] = c[0].add(other);
                Poly::Uni(v.clone(), c)
            }
            (Poly::Int(_), Poly::Uni(..)) => other.add(self),
            (Poly::Uni(v, a), Poly::Uni(w, b)) => match v.cmp(w) {
                Ordering::Equal => {
                    let n = a.len().max(b.len());
                    let mut c = Vec::with_capacity(n);
                    for i in 0..n {
                        c.push(match (a.get(i), b.get(i)) {
                            (Some(x), Some(y)) => x.add(y),
                            (Some(x), None) => x.clone(),
                            (None, Some(y)) => y.clone(),
                            (None, None) => unreachable!(),
                        });
                    }
                    mk(v.clone(), c)
                }
                Ordering::Less => {
                    let mut c = a.clone();
                    c[0] = c[0].add(other);
                    Poly::Uni(v.clone(), c)
                }
                Ordering::Greater => other.add(self),
            },
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Int) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        if k.is_one() {
            return self.clone();
        }
        match self {
            Poly::Int(a) => Poly::Int(a * k),
            Poly::Uni(v, c) => Poly::Uni(v.clone(), c.iter().map(|x| x.scale(k)).collect()),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        match (self, other) {
            (Poly::Int(a), _) => other.scale(a),
            (_, Poly::Int(b)) => self.scale(b),
            (Poly::Uni(v, a), Poly::Uni(w, b)) => match v.cmp(w) {
                Ordering::Equal => {
                    let mut c = vec![Poly::zero(); a.len() + b.len() - 1];
                    for (i, x) in a.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (j, y) in b.iter().enumerate() {
                            if y.is_zero() {
                                continue;
                            }
                            let t = x.mul(y);
                            c[i + j] = c[i + j].add(&t);
                        }
                    }
                    mk(v.clone(), c)
                }
                Ordering::Less => Poly::Uni(v.clone(), a.iter().map(|x| x.mul(other)).collect()),
                Ordering::Greater => Poly::Uni(w.clone(), b.iter().map(|y| self.mul(y)).collect()),
            },
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiply by `q^k`.
    pub fn mul_q_pow(&self, k: usize) -> Poly {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        match self {
            Poly::Uni(v, c) if v.is_q() => {
                let mut out = vec![Poly::zero(); k];
                out.extend(c.iter().cloned());
                Poly::Uni(v.clone(), out)
            }
            _ => Poly::monomial(Sym::q(), k, self.clone()),
        }
    }

    /// Largest `k` such that `q^k` divides `self` (0 for the zero polynomial).
    pub fn q_valuation(&self) -> usize {
        match self {
            Poly::Uni(v, c) if v.is_q() => c.iter().position(|x| !x.is_zero()).unwrap_or(0),
            _ => 0,
        }
    }

    /// Divide by `q^k`; the caller guarantees `k <= q_valuation()`.
    pub fn div_q_pow(&self, k: usize) -> Poly {
        if k == 0 {
            return self.clone();
        }
        match self {
            Poly::Uni(v, c) if v.is_q() => mk(v.clone(), c[k..].to_vec()),
            _ => panic!("div_q_pow on a polynomial not divisible by q"),
        }
    }

    /// Exact quotient, or `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Poly) -> Option<Poly> {
        assert!(!other.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if other.is_one() {
            return Some(self.clone());
        }
        match other {
            Poly::Int(k) => match self {
                Poly::Int(a) => k.divides(a).then(|| Poly::Int(a.div_exact(k))),
                Poly::Uni(v, c) => {
                    let mut out = Vec::with_capacity(c.len());
                    for x in c {
                        out.push(x.div_exact(other)?);
                    }
                    Some(Poly::Uni(v.clone(), out))
                }
            },
            Poly::Uni(w, bc) => match self {
                Poly::Int(_) => None,
                Poly::Uni(v, ac) => match v.cmp(w) {
                    Ordering::Less => {
                        let mut out = Vec::with_capacity(ac.len());
                        for x in ac {
                            out.push(x.div_exact(other)?);
                        }
                        Some(Poly::Uni(v.clone(), out))
                    }
                    Ordering::Greater => None,
                    Ordering::Equal => {
                        let db = bc.len() - 1;
                        let lb = &bc[db];
                        let mut rem = ac.clone();
                        if rem.len() < bc.len() {
                            return None;
                        }
                        let mut quo = vec![Poly::zero(); rem.len() - db];
                        for k in (0..quo.len()).rev() {
                            let top = &rem[k + db];
                            if top.is_zero() {
                                continue;
                            }
                            let t = top.div_exact(lb)?;
                            for (j, b) in bc.iter().enumerate() {
                                if !b.is_zero() {
                                    rem[k + j] = rem[k + j].sub(&t.mul(b));
                                }
                            }
                            quo[k] = t;
                        }
                        if rem.iter().any(|x| !x.is_zero()) {
                            return None;
                        }
                        Some(mk(v.clone(), quo))
                    }
                },
            },
        }
    }

    /// Pseudo-remainder of `a` by `b` in variable `v` (`b` has positive degree in `v`).
    fn prem(a: &Poly, b: &Poly, v: &Sym) -> Poly {
        let db = b.deg_in(v);
        let lb = b.lc_in(v);
        let bc = b.coeffs_in(v);
        let mut r = a.coeffs_in(v);
        if r.len() - 1 < db {
            return a.clone();
        }
        let mut e = r.len() - db;
        loop {
            while r.len() > 1 && r.last().unwrap().is_zero() {
                r.pop();
            }
            if r.len() == 1 && r[0].is_zero() {
                break;
            }
            let dr = r.len() - 1;
            if dr < db {
                break;
            }
            let lr = r[dr].clone();
            // r = lb * r - lr * v^(dr-db) * b
            for x in r.iter_mut() {
                *x = x.mul(&lb);
            }
            for (j, bj) in bc.iter().enumerate() {
                if !bj.is_zero() {
                    let idx = dr - db + j;
                    r[idx] = r[idx].sub(&lr.mul(bj));
                }
            }
            e -= 1;
        }
        let r = mk(v.clone(), r);
        if e > 0 && !r.is_zero() {
            r.mul(&lb.pow(e as u32))
        } else {
            r
        }
    }

    /// Gcd of the coefficients with respect to the main variable.
    pub fn content(&self) -> Poly {
        match self {
            Poly::Int(i) => Poly::Int(i.abs()),
            Poly::Uni(_, c) => {
                let mut g = Poly::zero();
                for x in c.iter().rev() {
                    g = Poly::gcd(&g, x);
                    if g.is_one() {
                        break;
                    }
                }
                g
            }
        }
    }

    /// Gcd of the coefficients of `self` viewed as a polynomial in the
    /// variables outside `keep`.
    fn content_outside(&self, keep: &BTreeSet<Sym>) -> Poly {
        if self.vars().is_subset(keep) {
            return self.clone();
        }
        let mut groups: BTreeMap<Vec<(Sym, u32)>, Poly> = BTreeMap::new();
        for (mono, c) in self.terms() {
            let (outer, inner): (Vec<_>, Vec<_>) = mono.into_iter().partition(|(s, _)| !keep.contains(s));
            let mut t = Poly::Int(c);
            for (s, e) in inner.into_iter().rev() {
                t = Poly::monomial(s, e as usize, t);
            }
            let slot = groups.entry(outer).or_insert_with(Poly::zero);
            *slot = slot.add(&t);
        }
        let mut g = Poly::zero();
        for c in groups.values() {
            g = Poly::gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Content of `self` with respect to `v` (coefficient gcd treating `self` as univariate in `v`).
    fn content_wrt(&self, v: &Sym) -> Poly {
        match self {
            Poly::Uni(w, _) if w == v => self.content(),
            _ => self.clone(),
        }
    }

    fn recursive_lc_sign(&self) -> i32 {
        match self {
            Poly::Int(i) => i.signum(),
            Poly::Uni(_, c) => c.last().unwrap().recursive_lc_sign(),
        }
    }

    fn with_positive_lc(self) -> Poly {
        if self.recursive_lc_sign() < 0 {
            self.neg()
        } else {
            self
        }
    }

    /// Greatest common divisor over Z[vars], with positive recursive leading coefficient.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.clone().with_positive_lc();
        }
        if b.is_zero() {
            return a.clone().with_positive_lc();
        }
        if let (Poly::Int(x), Poly::Int(y)) = (a, b) {
            return Poly::Int(x.gcd(y));
        }
        if matches!(a, Poly::Int(x) if x.is_unit()) || matches!(b, Poly::Int(y) if y.is_unit()) {
            return Poly::one();
        }
        if a == b {
            return a.clone().with_positive_lc();
        }
        // Variables present in only one argument cannot occur in the gcd.
        let (sa, sb) = (a.vars(), b.vars());
        if sa != sb {
            let ca = a.content_outside(&sb);
            let cb = b.content_outside(&sa);
            if ca.vars().len() < sa.len() || cb.vars().len() < sb.len() {
                return Poly::gcd(&ca, &cb);
            }
        }
        let v = match (a.main_var(), b.main_var()) {
            (Some(x), Some(y)) => x.min(y).clone(),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        };
        if a.is_const_wrt(&v) {
            return Poly::gcd(a, &b.content_wrt(&v));
        }
        if b.is_const_wrt(&v) {
            return Poly::gcd(&a.content_wrt(&v), b);
        }
        // q-power factors are common and cheap to split off.
        let va = a.q_valuation();
        let vb = b.q_valuation();
        if va > 0 || vb > 0 {
            let g = Poly::gcd(&a.div_q_pow(va), &b.div_q_pow(vb));
            return g.mul_q_pow(va.min(vb));
        }
        let ca = a.content();
        let cb = b.content();
        let c = Poly::gcd(&ca, &cb);
        let pa = a.div_exact(&ca).expect("content divides");
        let pb = b.div_exact(&cb).expect("content divides");
        let g = Poly::prs_gcd(pa, pb, &v);
        let g = if g.is_const_wrt(&v) {
            Poly::one()
        } else {
            let cg = g.content();
            g.div_exact(&cg).expect("content divides")
        };
        c.mul(&g).with_positive_lc()
    }

    /// Subresultant PRS gcd of two primitive polynomials with main variable `v`.
    fn prs_gcd(a: Poly, b: Poly, v: &Sym) -> Poly {
        let (mut a, mut b) = if a.deg_in(v) >= b.deg_in(v) { (a, b) } else { (b, a) };
        if a.div_exact(&b).is_some() {
            return b;
        }
        let mut g = Poly::one();
        let mut h = Poly::one();
        loop {
            let d = a.deg_in(v) - b.deg_in(v);
            let r = Poly::prem(&a, &b, v);
            if r.is_zero() {
                return b;
            }
            if r.is_const_wrt(v) {
                return Poly::one();
            }
            a = b;
            let divisor = g.mul(&h.pow(d as u32));
            b = r.div_exact(&divisor).expect("subresultant division is exact");
            g = a.lc_in(v);
            h = match d {
                0 => h,
                1 => g.clone(),
                _ => g
                    .pow(d as u32)
                    .div_exact(&h.pow(d as u32 - 1))
                    .expect("subresultant division is exact"),
            };
        }
    }

    /// Flattened terms as (exponents per variable, coefficient).
    pub fn terms(&self) -> Vec<(Vec<(Sym, u32)>, Int)> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.collect_terms(&mut prefix, &mut out);
        out
    }

    fn collect_terms(&self, prefix: &mut Vec<(Sym, u32)>, out: &mut Vec<(Vec<(Sym, u32)>, Int)>) {
        match self {
            Poly::Int(i) => {
                if !i.is_zero() {
                    out.push((prefix.clone(), i.clone()));
                }
            }
            Poly::Uni(v, c) => {
                for (e, x) in c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    if e > 0 {
                        prefix.push((v.clone(), e as u32));
                    }
                    x.collect_terms(prefix, out);
                    if e > 0 {
                        prefix.pop();
                    }
                }
            }
        }
    }

    /// Terms sorted descending in graded lexicographic order (variables in `Sym` order).
    pub fn grlex_terms(&self) -> Vec<(Vec<(Sym, u32)>, Int)> {
        let mut t = self.terms();
        t.sort_by(|(x, _), (y, _)| grlex_cmp(y, x));
        t
    }

    /// Sign of the leading coefficient in graded lexicographic order.
    pub fn grlex_lead_sign(&self) -> i32 {
        match self {
            Poly::Int(i) => i.signum(),
            Poly::Uni(_, c) if c.iter().all(|x| matches!(x, Poly::Int(_))) => c.last().unwrap().recursive_lc_sign(),
            _ => {
                let t = self.terms();
                let best = t
                    .iter()
                    .max_by(|(x, _), (y, _)| grlex_cmp(x, y))
                    .expect("nonzero polynomial has terms");
                best.1.signum()
            }
        }
    }

    /// Total degree.
    pub fn total_degree(&self) -> u32 {
        match self {
            Poly::Int(_) => 0,
            Poly::Uni(_, c) => c
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(e, x)| e as u32 + x.total_degree())
                .max()
                .unwrap_or(0),
        }
    }

    /// Number of stored nonzero integer coefficients, a cheap size measure.
    pub fn size(&self) -> usize {
        match self {
            Poly::Int(i) => usize::from(!i.is_zero()),
            Poly::Uni(_, c) => c.iter().map(Poly::size).sum(),
        }
    }

    /// Derivative with respect to `v`.
    pub fn derivative(&self, v: &Sym) -> Poly {
        match self {
            Poly::Int(_) => Poly::zero(),
            Poly::Uni(w, c) => match w.cmp(v) {
                Ordering::Equal => {
                    let out: Vec<Poly> =
                        c.iter().enumerate().skip(1).map(|(e, x)| x.scale(&Int::from(e as i64))).collect();
                    mk(w.clone(), out)
                }
                Ordering::Less => mk(w.clone(), c.iter().map(|x| x.derivative(v)).collect()),
                Ordering::Greater => Poly::zero(),
            },
        }
    }

    /// Substitute `v := value` where `value` does not involve variables sorting before `v`.
    pub fn substitute(&self, v: &Sym, value: &Poly) -> Poly {
        match self {
            Poly::Int(_) => self.clone(),
            Poly::Uni(w, c) => match w.cmp(v) {
                Ordering::Equal => {
                    let mut acc = Poly::zero();
                    for x in c.iter().rev() {
                        acc = acc.mul(value).add(x);
                    }
                    acc
                }
                Ordering::Less => {
                    let mut acc = Poly::zero();
                    let var = Poly::var(w.clone());
                    for x in c.iter().rev() {
                        acc = acc.mul(&var).add(&x.substitute(v, value));
                    }
                    acc
                }
                Ordering::Greater => self.clone(),
            },
        }
    }

    /// Evaluate modulo the prime `p`; `value` supplies residues for variables.
    pub fn eval_mod(&self, p: u64, value: &dyn Fn(&Sym) -> u64) -> u64 {
        match self {
            Poly::Int(i) => i.mod_u64(p),
            Poly::Uni(v, c) => {
                let x = value(v) as u128;
                let mut acc: u128 = 0;
                for coef in c.iter().rev() {
                    acc = (acc * x + coef.eval_mod(p, value) as u128) % p as u128;
                }
                acc as u64
            }
        }
    }

    /// Evaluate at rational values for every variable; `None` if a variable is unbound.
    pub fn eval_rational(&self, value: &dyn Fn(&Sym) -> Option<BigRational>) -> Option<BigRational> {
        match self {
            Poly::Int(i) => Some(BigRational::from_integer(i.to_big())),
            Poly::Uni(v, c) => {
                let x = value(v)?;
                let mut acc = BigRational::zero();
                for coef in c.iter().rev() {
                    acc = acc * &x + coef.eval_rational(value)?;
                }
                Some(acc)
            }
        }
    }

    pub fn from_bigint(b: BigInt) -> Poly {
        Poly::Int(Int::from_big(b))
    }

    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.grlex_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (mono, c)) in terms.iter().enumerate() {
            let neg = c.signum() < 0;
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut first = true;
            if !a.is_one() || mono.is_empty() {
                write!(f, "{a}")?;
                first = false;
            }
            for (s, e) in mono {
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                if *e == 1 {
                    write!(f, "{s}")?;
                } else {
                    write!(f, "{s}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Graded lexicographic comparison of sparse exponent vectors.
fn grlex_cmp(x: &[(Sym, u32)], y: &[(Sym, u32)]) -> Ordering {
    let dx: u32 = x.iter().map(|t| t.1).sum();
    let dy: u32 = y.iter().map(|t| t.1).sum();
    dx.cmp(&dy).then_with(|| {
        // Lex: compare exponent of the smallest variable first.
        let mut i = 0;
        let mut j = 0;
        loop {
            match (x.get(i), y.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((sx, ex)), Some((sy, ey))) => match sx.cmp(sy) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ex != ey {
                            return ex.cmp(ey);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    })
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Poly {
        Poly::var(Sym::q())
    }

    fn a() -> Poly {
        Poly::var(Sym::new("a"))
    }

    fn b() -> Poly {
        Poly::var(Sym::new("b"))
    }

    #[test]
    fn sym_order_puts_q_first() {
        assert!(Sym::q() < Sym::new("a"));
        assert!(Sym::new("a") < Sym::new("b"));
    }

    #[test]
    fn arithmetic_canonical() {
        let x = q().add(&Poly::one());
        let y = q().sub(&Poly::one());
        let p = x.mul(&y);
        assert_eq!(p, q().pow(2).sub(&Poly::one()));
        assert_eq!(p.sub(&p), Poly::zero());
        assert_eq!(p.div_exact(&x), Some(y.clone()));
        assert_eq!(p.div_exact(&q()), None);
    }

    #[test]
    fn univariate_gcd() {
        let x = q().add(&Poly::one());
        let y = q().sub(&Poly::int(2));
        let z = q().pow(2).add(&Poly::int(3));
        let f = x.mul(&y).mul(&Poly::int(6));
        let g = x.mul(&z).mul(&Poly::int(4));
        assert_eq!(Poly::gcd(&f, &g), x.mul(&Poly::int(2)));
    }

    #[test]
    fn multivariate_gcd() {
        // (q*a - b)(a + 1) and (q*a - b)(q + b)
        let common = q().mul(&a()).sub(&b());
        let f = common.mul(&a().add(&Poly::one()));
        let g = common.mul(&q().add(&b()));
        let gg = Poly::gcd(&f, &g);
        assert!(gg == common || gg == common.neg());
        assert_eq!(Poly::gcd(&a(), &b()), Poly::one());
    }

    #[test]
    fn gcd_with_q_power() {
        let f = q().pow(3).mul(&a().add(&Poly::one()));
        let g = q().pow(2).mul(&a().add(&Poly::one())).mul(&b());
        assert_eq!(Poly::gcd(&f, &g), q().pow(2).mul(&a().add(&Poly::one())));
    }

    #[test]
    fn derivative_and_substitute() {
        let p = q().pow(3).mul(&a()).add(&q());
        assert_eq!(p.derivative(&Sym::q()), q().pow(2).mul(&a()).scale(&Int::from(3)).add(&Poly::one()));
        let s = p.substitute(&Sym::q(), &Poly::int(2));
        assert_eq!(s, a().scale(&Int::from(8)).add(&Poly::int(2)));
    }

    #[test]
    fn display_grlex() {
        let p = q().pow(2).sub(&q().mul(&a()).scale(&Int::from(3))).add(&Poly::one());
        assert_eq!(p.to_string(), "q^2 - 3*q*a + 1");
    }
}
