//! Dense square matrices over [`RatFunc`] with tensor-factor bookkeeping.

use std::fmt;

use crate::error::ExactError;
use crate::modp::ModPoint;
use crate::ratfunc::RatFunc;

/// Dense `dim x dim` matrix, row-major. `shape` lists tensor factor dimensions.
#[derive(Clone)]
pub struct ExactMatrix {
    dim: usize,
    entries: Vec<RatFunc>,
    shape: Option<Vec<usize>>,
}

impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.entries == other.entries
    }
}

impl Eq for ExactMatrix {}

impl ExactMatrix {
    pub fn zeros(dim: usize) -> ExactMatrix {
        ExactMatrix { dim, entries: vec![RatFunc::zero(); dim * dim], shape: None }
    }

    pub fn identity(dim: usize) -> ExactMatrix {
        ExactMatrix::scalar(dim, &RatFunc::one())
    }

    pub fn scalar(dim: usize, s: &RatFunc) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = s.clone();
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> RatFunc) -> ExactMatrix {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        ExactMatrix { dim, entries, shape: None }
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Result<ExactMatrix, ExactError> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(ExactError::ShapeMismatch(format!("expected {dim} entries in every row")));
        }
        Ok(ExactMatrix { dim, entries: rows.into_iter().flatten().collect(), shape: None })
    }

    /// The flip `x_i ⊗ x_j -> x_j ⊗ x_i` on `V ⊗ V`, `dim V = n`.
    pub fn flip(n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(n * n);
        for i in 0..n {
            for j in 0..n {
                m.set(i * n + j, j * n + i, RatFunc::one());
            }
        }
        m.shape = Some(vec![n, n]);
        m
    }

    /// Permutation of `k` tensor factors of dimension `n`: factor `f` of the
    /// input row index lands in factor `perm[f]` of the column index.
    pub fn factor_permutation(n: usize, perm: &[usize]) -> ExactMatrix {
        let k = perm.len();
        let dim = n.pow(k as u32);
        let mut m = ExactMatrix::zeros(dim);
        for row in 0..dim {
            let digits = digits_of(row, n, k);
            let mut out = vec![0; k];
            for f in 0..k {
                out[perm[f]] = digits[f];
            }
            m.set(row, index_of(&out, n), RatFunc::one());
        }
        m.shape = Some(vec![n; k]);
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shape(&self) -> Option<&[usize]> {
        self.shape.as_deref()
    }

    /// Tensor factors, or a single factor when no shape is recorded.
    pub fn factors(&self) -> Vec<usize> {
        self.shape.clone().unwrap_or_else(|| vec![self.dim])
    }

    pub fn with_shape(mut self, shape: Vec<usize>) -> Result<ExactMatrix, ExactError> {
        if shape.iter().product::<usize>() != self.dim || shape.contains(&0) {
            return Err(ExactError::ShapeMismatch(format!("shape {shape:?} does not multiply to {}", self.dim)));
        }
        self.shape = Some(shape);
        Ok(self)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[RatFunc] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> ExactMatrix {
        ExactMatrix { dim: self.dim, entries: self.entries.iter().map(f).collect(), shape: self.shape.clone() }
    }

    pub fn try_map<E>(&self, f: impl Fn(&RatFunc) -> Result<RatFunc, E>) -> Result<ExactMatrix, E> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(ExactMatrix { dim: self.dim, entries, shape: self.shape.clone() })
    }

    fn same_dim(&self, other: &ExactMatrix) {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
    }

    fn keep_shape(&self, other: &ExactMatrix) -> Option<Vec<usize>> {
        self.shape.clone().or_else(|| other.shape.clone())
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        self.same_dim(other);
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        ExactMatrix { dim: self.dim, entries, shape: self.keep_shape(other) }
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        self.same_dim(other);
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect();
        ExactMatrix { dim: self.dim, entries, shape: self.keep_shape(other) }
    }

    pub fn neg(&self) -> ExactMatrix {
        self.map(RatFunc::neg)
    }

    pub fn scale(&self, s: &RatFunc) -> ExactMatrix {
        self.map(|e| e.mul(s))
    }

    /// Matrix product, skipping zero entries on both sides.
    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        self.same_dim(other);
        let n = self.dim;
        let rows_b: Vec<Vec<(usize, &RatFunc)>> = (0..n)
            .map(|k| (0..n).filter_map(|j| { let v = other.get(k, j); (!v.is_zero()).then_some((j, v)) }).collect())
            .collect();
        let mut out = ExactMatrix::zeros(n);
        out.shape = self.keep_shape(other);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for &(j, b) in &rows_b[k] {
                    let idx = i * n + j;
                    let t = a.mul(b);
                    out.entries[idx] = out.entries[idx].add(&t);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> ExactMatrix {
        let mut acc = ExactMatrix::identity(self.dim);
        acc.shape = self.shape.clone();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &ExactMatrix) -> ExactMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::from_fn(self.dim, |i, j| self.get(j, i).clone());
        t.shape = self.shape.clone();
        t
    }

    pub fn trace(&self) -> RatFunc {
        (0..self.dim).fold(RatFunc::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RatFunc::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.as_scalar().is_some_and(|s| s.is_one())
    }

    /// `Some(s)` if the matrix equals `s * I`.
    pub fn as_scalar(&self) -> Option<RatFunc> {
        let n = self.dim;
        if n == 0 {
            return Some(RatFunc::zero());
        }
        let s = self.get(0, 0);
        for i in 0..n {
            for j in 0..n {
                let e = self.get(i, j);
                if (i == j && e != s) || (i != j && !e.is_zero()) {
                    return None;
                }
            }
        }
        Some(s.clone())
    }

    /// Kronecker product; the entry at `((i1,i2),(j1,j2))` is `A[i1,j1] * B[i2,j2]`.
    pub fn kron(&self, other: &ExactMatrix) -> ExactMatrix {
        let (n, m) = (self.dim, other.dim);
        let mut out = ExactMatrix::zeros(n * m);
        for i1 in 0..n {
            for j1 in 0..n {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..m {
                    for j2 in 0..m {
                        let b = other.get(i2, j2);
                        if !b.is_zero() {
                            out.set(i1 * m + i2, j1 * m + j2, a.mul(b));
                        }
                    }
                }
            }
        }
        let mut shape = self.factors();
        shape.extend(other.factors());
        out.shape = Some(shape);
        out
    }

    /// `I^{⊗(slot-1)} ⊗ M ⊗ I^{⊗(p-slot-s+1)}` where `M` acts on `s` factors of
    /// dimension `n`. Slots are 1-based.
    pub fn kron_embed(m: &ExactMatrix, slot: usize, p: usize, n: usize) -> Result<ExactMatrix, ExactError> {
        if n == 0 {
            return Err(ExactError::ShapeMismatch("factor dimension must be positive".into()));
        }
        let mut s = 0;
        let mut d = 1;
        while d < m.dim {
            d *= n;
            s += 1;
        }
        if d != m.dim || m.dim == 0 {
            return Err(ExactError::ShapeMismatch(format!("dimension {} is not a power of {n}", m.dim)));
        }
        if slot == 0 || slot + s - 1 > p {
            return Err(ExactError::ShapeMismatch(format!("slot {slot} with {s} factors does not fit in {p}")));
        }
        let left = n.pow((slot - 1) as u32);
        let right = n.pow((p - slot + 1 - s) as u32);
        let core = m.clone().with_shape(vec![n; s])?;
        let mut out = if left > 1 { ExactMatrix::identity(left).with_shape(vec![n; slot - 1])?.kron(&core) } else { core };
        if right > 1 {
            out = out.kron(&ExactMatrix::identity(right).with_shape(vec![n; p - slot + 1 - s])?);
        }
        if p > 0 && s == 0 {
            out = out.with_shape(vec![n; p])?;
        }
        Ok(out)
    }

    /// Contract the row and column indices of tensor factor `slot` (1-based).
    pub fn partial_trace(&self, slot: usize) -> Result<ExactMatrix, ExactError> {
        let shape = self.shape.as_ref().ok_or_else(|| ExactError::ShapeMismatch("partial trace needs a tensor shape".into()))?;
        if slot == 0 || slot > shape.len() {
            return Err(ExactError::ShapeMismatch(format!("slot {slot} out of range for {} factors", shape.len())));
        }
        let f = slot - 1;
        let d = shape[f];
        let inner: usize = shape[f + 1..].iter().product();
        let outer: usize = shape[..f].iter().product();
        let new_dim = outer * inner;
        let mut out = ExactMatrix::zeros(new_dim);
        let split = |x: usize| (x / inner, x % inner);
        for r in 0..new_dim {
            let (ro, ri) = split(r);
            for c in 0..new_dim {
                let (co, ci) = split(c);
                let mut acc = RatFunc::zero();
                for t in 0..d {
                    let e = self.get((ro * d + t) * inner + ri, (co * d + t) * inner + ci);
                    if !e.is_zero() {
                        acc = acc.add(e);
                    }
                }
                out.set(r, c, acc);
            }
        }
        let mut ns = shape.clone();
        ns.remove(f);
        if !ns.is_empty() {
            out.shape = Some(ns);
        }
        Ok(out)
    }

    /// Square sub-block on the given index set.
    pub fn restrict(&self, idx: &[usize]) -> ExactMatrix {
        ExactMatrix::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]).clone())
    }

    /// Exact inverse by Gauss-Jordan elimination over the fraction field.
    pub fn inverse(&self) -> Result<ExactMatrix, ExactError> {
        let n = self.dim;
        let mut a: Vec<Vec<RatFunc>> = (0..n).map(|i| self.entries[i * n..(i + 1) * n].to_vec()).collect();
        let mut inv: Vec<Vec<RatFunc>> = (0..n).map(|i| (0..n).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect()).collect();
        for col in 0..n {
            let piv = (col..n).filter(|&r| !a[r][col].is_zero()).min_by_key(|&r| a[r][col].complexity()).ok_or(ExactError::Singular)?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let pinv = a[col][col].inv()?;
            for j in 0..n {
                if !a[col][j].is_zero() {
                    a[col][j] = a[col][j].mul(&pinv);
                }
                if !inv[col][j].is_zero() {
                    inv[col][j] = inv[col][j].mul(&pinv);
                }
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    if !a[col][j].is_zero() {
                        a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                    }
                    if !inv[col][j].is_zero() {
                        inv[r][j] = inv[r][j].sub(&f.mul(&inv[col][j]));
                    }
                }
            }
        }
        let mut out = ExactMatrix::from_rows(inv)?;
        out.shape = self.shape.clone();
        Ok(out)
    }

    /// Determinant by elimination over the fraction field.
    pub fn det(&self) -> RatFunc {
        let n = self.dim;
        let mut a: Vec<Vec<RatFunc>> = (0..n).map(|i| self.entries[i * n..(i + 1) * n].to_vec()).collect();
        let mut acc = RatFunc::one();
        for col in 0..n {
            let Some(piv) = (col..n).filter(|&r| !a[r][col].is_zero()).min_by_key(|&r| a[r][col].complexity()) else {
                return RatFunc::zero();
            };
            if piv != col {
                a.swap(col, piv);
                acc = acc.neg();
            }
            acc = acc.mul(&a[col][col]);
            let pinv = a[col][col].inv().expect("nonzero pivot");
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].mul(&pinv);
                for j in col..n {
                    if !a[col][j].is_zero() {
                        a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                    }
                }
            }
        }
        acc
    }

    /// Exact rank over the fraction field.
    pub fn rank(&self) -> usize {
        let n = self.dim;
        let mut a: Vec<Vec<RatFunc>> = (0..n).map(|i| self.entries[i * n..(i + 1) * n].to_vec()).collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).filter(|&r| !a[r][col].is_zero()).min_by_key(|&r| a[r][col].complexity()) else {
                continue;
            };
            a.swap(rank, piv);
            let pinv = a[rank][col].inv().expect("nonzero pivot");
            for r in rank + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].mul(&pinv);
                for j in col..n {
                    if !a[rank][j].is_zero() {
                        a[r][j] = a[r][j].sub(&f.mul(&a[rank][j]));
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Reduce every entry modulo a prime at the given point.
    pub fn eval_mod(&self, pt: &ModPoint) -> Option<Vec<u64>> {
        self.entries.iter().map(|e| e.eval_mod(pt)).collect()
    }
}

pub(crate) fn digits_of(mut x: usize, n: usize, k: usize) -> Vec<usize> {
    let mut d = vec![0; k];
    for i in (0..k).rev() {
        d[i] = x % n;
        x /= n;
    }
    d
}

pub(crate) fn index_of(d: &[usize], n: usize) -> usize {
    d.iter().fold(0, |acc, &x| acc * n + x)
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{}", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_expr()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
