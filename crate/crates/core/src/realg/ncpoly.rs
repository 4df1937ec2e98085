//! Noncommutative polynomials in the generators `l_i^j` and square matrices
//! with such entries.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use regz_exact::{ExactMatrix, RatFunc};

/// A word in the generators. Letter `i*N + j` stands for `l_{i+1}^{j+1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<u16>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// All words of length at most `max_len` over `letters` letters, length-lex ordered.
    pub fn all_up_to(letters: usize, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * letters);
            for w in &layer {
                for a in 0..letters {
                    let mut v = w.0.clone();
                    v.push(a as u16);
                    next.push(Word(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Generator pairs `(i, j)`, 1-based.
    pub fn pairs(&self, n: usize) -> Vec<(usize, usize)> {
        self.0.iter().map(|&a| (a as usize / n + 1, a as usize % n + 1)).collect()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of the free algebra on `l_i^j`, `1 <= i, j <= n`, over the field of scalars.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NCPoly {
    n: usize,
    terms: BTreeMap<Word, RatFunc>,
}

impl NCPoly {
    pub fn zero(n: usize) -> NCPoly {
        NCPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> NCPoly {
        NCPoly::scalar(n, &RatFunc::one())
    }

    pub fn scalar(n: usize, c: &RatFunc) -> NCPoly {
        NCPoly::term(n, Word::empty(), c.clone())
    }

    pub fn term(n: usize, w: Word, c: RatFunc) -> NCPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NCPoly { n, terms }
    }

    /// The generator `l_i^j`, 0-based indices.
    pub fn gen(n: usize, i: usize, j: usize) -> NCPoly {
        NCPoly::term(n, Word(vec![(i * n + j) as u16]), RatFunc::one())
    }

    pub fn from_terms(n: usize, it: impl IntoIterator<Item = (Word, RatFunc)>) -> NCPoly {
        let mut p = NCPoly::zero(n);
        for (w, c) in it {
            p.add_term(w, &c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, RatFunc> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> RatFunc {
        self.terms.get(w).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Length of the longest word, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(Word::len);
        match lens.next() {
            None => true,
            Some(d) => lens.all(|l| l == d),
        }
    }

    pub fn homogeneous_part(&self, d: usize) -> NCPoly {
        NCPoly {
            n: self.n,
            terms: self.terms.iter().filter(|(w, _)| w.len() == d).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn add_term(&mut self, w: Word, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), &c.neg());
        }
        out
    }

    pub fn neg(&self) -> NCPoly {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, s: &RatFunc) -> NCPoly {
        if s.is_zero() {
            return NCPoly::zero(self.n);
        }
        self.map_coeffs(|c| c.mul(s))
    }

    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero(self.n);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), &c1.mul(c2));
            }
        }
        out
    }

    /// `left * self * right` for words.
    pub fn sandwich(&self, left: &Word, right: &Word) -> NCPoly {
        NCPoly {
            n: self.n,
            terms: self.terms.iter().map(|(w, c)| (left.concat(w).concat(right), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> NCPoly {
        let mut acc = NCPoly::one(self.n);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn commutator(&self, other: &NCPoly) -> NCPoly {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> NCPoly {
        let mut out = NCPoly::zero(self.n);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &f(c));
        }
        out
    }

    pub fn try_map_coeffs<E>(&self, f: impl Fn(&RatFunc) -> Result<RatFunc, E>) -> Result<NCPoly, E> {
        let mut out = NCPoly::zero(self.n);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &f(c)?);
        }
        Ok(out)
    }

    /// Replace every generator by an algebra element; `image[a]` is the image of letter `a`.
    pub fn substitute(&self, image: &[NCPoly]) -> NCPoly {
        let mut out = NCPoly::zero(image.first().map_or(self.n, |p| p.n));
        for (w, c) in &self.terms {
            let mut t = NCPoly::scalar(out.n, c);
            for &a in &w.0 {
                t = t.mul(&image[a as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Evaluate in a matrix algebra: `image[a]` is the matrix of letter `a`.
    pub fn eval_matrix(&self, image: &[ExactMatrix], dim: usize) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(dim);
        for (w, c) in &self.terms {
            let mut t = ExactMatrix::scalar(dim, c);
            for &a in &w.0 {
                t = t.mul(&image[a as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Serialized form: list of `(word as 1-based pairs, coefficient text)`.
    pub fn to_pairs(&self) -> Vec<(Vec<(usize, usize)>, String)> {
        self.terms.iter().map(|(w, c)| (w.pairs(self.n), c.to_expr())).collect()
    }
}

fn letter_name(n: usize, a: u16) -> String {
    let (i, j) = (a as usize / n + 1, a as usize % n + 1);
    if n < 10 {
        format!("l{i}{j}")
    } else {
        format!("l{i}_{j}")
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let word: Vec<String> = w.0.iter().map(|&a| letter_name(self.n, a)).collect();
            match (c.is_one(), word.is_empty()) {
                (_, true) => write!(f, "({})", c.to_expr())?,
                (true, false) => write!(f, "{}", word.join("*"))?,
                (false, false) => write!(f, "({})*{}", c.to_expr(), word.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Square matrix with entries in the free algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OpMatrix {
    dim: usize,
    n: usize,
    entries: Vec<NCPoly>,
}

impl OpMatrix {
    pub fn zeros(dim: usize, n: usize) -> OpMatrix {
        OpMatrix { dim, n, entries: vec![NCPoly::zero(n); dim * dim] }
    }

    /// The generating matrix `L` with `L[i][j] = l_i^j`.
    pub fn generating(n: usize) -> OpMatrix {
        let mut m = OpMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.entries[i * n + j] = NCPoly::gen(n, i, j);
            }
        }
        m
    }

    pub fn from_scalar(a: &ExactMatrix, n: usize) -> OpMatrix {
        let dim = a.dim();
        OpMatrix { dim, n, entries: a.entries().iter().map(|c| NCPoly::scalar(n, c)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &NCPoly {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[NCPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(NCPoly::is_zero)
    }

    pub fn add(&self, other: &OpMatrix) -> OpMatrix {
        OpMatrix { dim: self.dim, n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &OpMatrix) -> OpMatrix {
        OpMatrix { dim: self.dim, n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, s: &RatFunc) -> OpMatrix {
        OpMatrix { dim: self.dim, n: self.n, entries: self.entries.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn map(&self, f: impl Fn(&NCPoly) -> NCPoly) -> OpMatrix {
        OpMatrix { dim: self.dim, n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    pub fn mul(&self, other: &OpMatrix) -> OpMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let d = self.dim;
        let mut out = OpMatrix::zeros(d, self.n);
        for i in 0..d {
            for k in 0..d {
                let a = &self.entries[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &other.entries[k * d + j];
                    if !b.is_zero() {
                        out.entries[i * d + j] = out.entries[i * d + j].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    /// `a * self` for a scalar matrix `a`.
    pub fn lmul_scalar(&self, a: &ExactMatrix) -> OpMatrix {
        assert_eq!(self.dim, a.dim(), "dimension mismatch");
        let d = self.dim;
        let mut out = OpMatrix::zeros(d, self.n);
        for i in 0..d {
            for k in 0..d {
                let c = a.get(i, k);
                if c.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &self.entries[k * d + j];
                    if !b.is_zero() {
                        out.entries[i * d + j] = out.entries[i * d + j].add(&b.scale(c));
                    }
                }
            }
        }
        out
    }

    /// `self * a` for a scalar matrix `a`.
    pub fn rmul_scalar(&self, a: &ExactMatrix) -> OpMatrix {
        assert_eq!(self.dim, a.dim(), "dimension mismatch");
        let d = self.dim;
        let mut out = OpMatrix::zeros(d, self.n);
        for i in 0..d {
            for k in 0..d {
                let b = &self.entries[i * d + k];
                if b.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let c = a.get(k, j);
                    if !c.is_zero() {
                        out.entries[i * d + j] = out.entries[i * d + j].add(&b.scale(c));
                    }
                }
            }
        }
        out
    }

    /// `self ⊗ I_m`: the matrix placed in the leading tensor factor.
    pub fn kron_identity(&self, m: usize) -> OpMatrix {
        let d = self.dim * m;
        let mut out = OpMatrix::zeros(d, self.n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = &self.entries[i * self.dim + j];
                if a.is_zero() {
                    continue;
                }
                for s in 0..m {
                    out.entries[(i * m + s) * d + j * m + s] = a.clone();
                }
            }
        }
        out
    }

    pub fn trace(&self) -> NCPoly {
        let mut t = NCPoly::zero(self.n);
        for i in 0..self.dim {
            t = t.add(&self.entries[i * self.dim + i]);
        }
        t
    }

    /// `Tr(a * self)` for a scalar matrix `a`, without forming the product.
    pub fn trace_against(&self, a: &ExactMatrix) -> NCPoly {
        let d = self.dim;
        let mut t = NCPoly::zero(self.n);
        for i in 0..d {
            for k in 0..d {
                let c = a.get(i, k);
                if !c.is_zero() {
                    t = t.add(&self.entries[k * d + i].scale(c));
                }
            }
        }
        t
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc + Copy) -> OpMatrix {
        self.map(|p| p.map_coeffs(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_lex_order() {
        let a = Word(vec![3]);
        let b = Word(vec![0, 0]);
        let c = Word(vec![0, 1]);
        assert!(Word::empty() < a && a < b && b < c);
        let all = Word::all_up_to(2, 2);
        assert_eq!(all.len(), 7);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn commutator_and_cancellation() {
        let a = NCPoly::gen(2, 0, 0);
        let b = NCPoly::gen(2, 0, 1);
        let c = a.commutator(&b);
        assert_eq!(c.terms().len(), 2);
        assert!(c.add(&b.commutator(&a)).is_zero());
        assert_eq!(c.degree(), Some(2));
        assert_eq!(format!("{}", a.add(&b.scale(&RatFunc::q()))), "l11 + (q)*l12");
    }

    #[test]
    fn generating_matrix_products() {
        let l = OpMatrix::generating(2);
        let l2 = l.mul(&l);
        assert_eq!(l2.get(0, 1).terms().len(), 2);
        let i2 = ExactMatrix::identity(2);
        assert_eq!(l.lmul_scalar(&i2), l);
        assert_eq!(l.kron_identity(1), l);
        assert_eq!(l.trace_against(&i2), l.trace());
    }
}
