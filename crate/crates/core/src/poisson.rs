//! Classical r-matrices of symmetries deforming the flip, the quadratic
//! r-matrix bracket on commuting generators, the linear bracket and their checks.

use regz_exact::{ExactMatrix, RatFunc, Sym};

use crate::error::CoreError;
use crate::hecke::HeckeSymmetry;

/// Polynomials in the commuting generators `l{i}{j}`.
pub type PolyElement = RatFunc;

/// Name of the commuting generator `l_i^j` (0-based indices).
pub fn gen_name(i: usize, j: usize) -> String {
    format!("l{}{}", i + 1, j + 1)
}

pub fn gen(i: usize, j: usize) -> PolyElement {
    RatFunc::var(&gen_name(i, j))
}

/// The commuting generating matrix `L`.
pub fn generating_matrix(n: usize) -> ExactMatrix {
    ExactMatrix::from_fn(n, gen)
}

/// `Tr L^k`.
pub fn trace_power(n: usize, k: usize) -> PolyElement {
    generating_matrix(n).pow(k as u32).trace()
}

/// `Tr L_(m)^k` for the upper-left `m x m` block.
pub fn block_trace_power(m: usize, k: usize) -> PolyElement {
    trace_power(m, k)
}

/// Rename `l11, l12, l21, l22` to `a, b, c, d`.
pub fn gl2_names(f: &PolyElement) -> Result<PolyElement, CoreError> {
    let mut out = f.clone();
    for (i, j, s) in [(0, 0, "a"), (0, 1, "b"), (1, 0, "c"), (1, 1, "d")] {
        out = out.subs(&Sym::new(&gen_name(i, j)), &RatFunc::var(s))?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalR {
    pub n: usize,
    pub r: ExactMatrix,
}

fn pole(e: regz_exact::ExactError) -> CoreError {
    CoreError::PoleAtOne(e.to_string())
}

impl ClassicalR {
    /// `r` read off from `d(P R)/dq` at `q = 1`; checks the limit is the identity
    /// and both the classical Yang-Baxter equation and `r + r_21 = 2P`.
    pub fn from_symmetry(r: &HeckeSymmetry) -> Result<ClassicalR, CoreError> {
        let n = r.n();
        let pr = ExactMatrix::flip(n).mul(r.r());
        let at_one = pr.try_map(|e| e.at_q_one()).map_err(pole)?;
        if !at_one.is_identity() {
            return Err(CoreError::AxiomFailure("P R at q = 1 is not the identity: the family does not deform the flip".into()));
        }
        let q = Sym::q();
        let d = pr.try_map(|e| e.derivative(&q).at_q_one()).map_err(pole)?;
        let out = ClassicalR { n, r: d };
        out.validate()?;
        Ok(out)
    }

    /// A matrix taken as given, with the two axioms checked.
    pub fn new(r: ExactMatrix) -> Result<ClassicalR, CoreError> {
        let out = ClassicalR::unchecked(r)?;
        out.validate()?;
        Ok(out)
    }

    /// A matrix taken as given without checks (negative controls).
    pub fn unchecked(r: ExactMatrix) -> Result<ClassicalR, CoreError> {
        let n = (r.dim() as f64).sqrt().round() as usize;
        if n * n != r.dim() {
            return Err(CoreError::Invalid(format!("dimension {} is not a square", r.dim())));
        }
        Ok(ClassicalR { n, r })
    }

    fn validate(&self) -> Result<(), CoreError> {
        if !self.unitarity_residual().is_zero() {
            return Err(CoreError::AxiomFailure("r + r21 != 2P".into()));
        }
        if !self.cybe_residual().is_zero() {
            return Err(CoreError::AxiomFailure("classical Yang-Baxter equation fails".into()));
        }
        Ok(())
    }

    pub fn r21(&self) -> ExactMatrix {
        let p = ExactMatrix::flip(self.n);
        p.mul(&self.r).mul(&p)
    }

    /// `r_12 + r_21 - 2 P`.
    pub fn unitarity_residual(&self) -> ExactMatrix {
        self.r.add(&self.r21()).sub(&ExactMatrix::flip(self.n).scale(&RatFunc::int(2)))
    }

    /// `[r12, r13] + [r12, r23] + [r13, r23]`.
    pub fn cybe_residual(&self) -> ExactMatrix {
        let n = self.n;
        let id = ExactMatrix::identity(n);
        let r12 = self.r.kron(&id);
        let r23 = id.kron(&self.r);
        let p23 = id.kron(&ExactMatrix::flip(n));
        let r13 = p23.mul(&r12).mul(&p23);
        r12.commutator(&r13).add(&r12.commutator(&r23)).add(&r13.commutator(&r23))
    }
}

/// The example r-matrix of the glued `GL(2)` family, with parameter `alpha`.
pub fn gl2_example_r(alpha: &RatFunc) -> ExactMatrix {
    let mut r = ExactMatrix::zeros(4);
    r.set(0, 0, RatFunc::one());
    r.set(1, 1, alpha.neg());
    r.set(2, 1, RatFunc::int(2));
    r.set(2, 2, alpha.clone());
    r.set(3, 3, RatFunc::one());
    r
}

/// A biderivation given by its values on pairs of generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Bracket {
    pub n: usize,
    /// `table[a * n^2 + b] = {x_a, x_b}` with `x_{i n + j} = l_i^j`.
    pub table: Vec<PolyElement>,
}

impl Bracket {
    pub fn on_generators(&self, i: usize, j: usize, k: usize, l: usize) -> &PolyElement {
        let m = self.n * self.n;
        &self.table[(i * self.n + j) * m + k * self.n + l]
    }

    /// `{f, g} = Σ ∂f/∂x_a ∂g/∂x_b {x_a, x_b}`.
    pub fn apply(&self, f: &PolyElement, g: &PolyElement) -> PolyElement {
        let m = self.n * self.n;
        let syms: Vec<Sym> = (0..m).map(|a| Sym::new(&gen_name(a / self.n, a % self.n))).collect();
        let df: Vec<PolyElement> = syms.iter().map(|s| f.derivative(s)).collect();
        let dg: Vec<PolyElement> = syms.iter().map(|s| g.derivative(s)).collect();
        let mut acc = RatFunc::zero();
        for a in 0..m {
            if df[a].is_zero() {
                continue;
            }
            for b in 0..m {
                let t = &self.table[a * m + b];
                if dg[b].is_zero() || t.is_zero() {
                    continue;
                }
                acc = acc.add(&df[a].mul(&dg[b]).mul(t));
            }
        }
        acc
    }

    pub fn add(&self, other: &Bracket) -> Bracket {
        Bracket { n: self.n, table: self.table.iter().zip(&other.table).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, s: &RatFunc) -> Bracket {
        Bracket { n: self.n, table: self.table.iter().map(|a| a.mul(s)).collect() }
    }

    pub fn is_antisymmetric(&self) -> bool {
        let m = self.n * self.n;
        (0..m).all(|a| (0..m).all(|b| self.table[a * m + b] == self.table[b * m + a].neg()))
    }
}

/// `{L1, L2} = r21 L1 L2 - L1 L2 r12 + L2 r12 L1 - L1 r21 L2`.
pub fn bracket_r(r: &ClassicalR) -> Bracket {
    let n = r.n;
    let l = generating_matrix(n);
    let id = ExactMatrix::identity(n);
    let l1 = l.kron(&id);
    let l2 = id.kron(&l);
    let r12 = &r.r;
    let r21 = r.r21();
    let l12 = l1.mul(&l2);
    let m = r21.mul(&l12).sub(&l12.mul(r12)).add(&l2.mul(r12).mul(&l1)).sub(&l1.mul(&r21).mul(&l2));
    let mut table = vec![RatFunc::zero(); n.pow(4)];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for t in 0..n {
                    // entry ((i,k),(j,t)) of the matrix identity is {l_i^j, l_k^t}
                    table[(i * n + j) * n * n + k * n + t] = m.get(i * n + k, j * n + t).clone();
                }
            }
        }
    }
    Bracket { n, table }
}

/// `{l_i^j, l_k^t} = l_i^t δ_k^j - l_k^j δ_i^t`.
pub fn bracket_lin(n: usize) -> Bracket {
    let mut table = vec![RatFunc::zero(); n.pow(4)];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for t in 0..n {
                    let mut v = RatFunc::zero();
                    if k == j {
                        v = v.add(&gen(i, t));
                    }
                    if i == t {
                        v = v.sub(&gen(k, j));
                    }
                    table[(i * n + j) * n * n + k * n + t] = v;
                }
            }
        }
    }
    Bracket { n, table }
}

/// A generator triple with a nonzero value.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub triple: [(usize, usize); 3],
    pub value: PolyElement,
}

#[derive(Clone, Debug)]
pub struct TripleReport {
    pub checked: usize,
    pub witness: Option<Witness>,
}

impl TripleReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

fn over_triples(n: usize, f: impl Fn(&PolyElement, &PolyElement, &PolyElement) -> PolyElement) -> TripleReport {
    let m = n * n;
    let g: Vec<PolyElement> = (0..m).map(|a| gen(a / n, a % n)).collect();
    let mut checked = 0;
    for a in 0..m {
        for b in a..m {
            for c in b..m {
                checked += 1;
                let v = f(&g[a], &g[b], &g[c]);
                if !v.is_zero() {
                    let idx = |x: usize| (x / n, x % n);
                    return TripleReport { checked, witness: Some(Witness { triple: [idx(a), idx(b), idx(c)], value: v }) };
                }
            }
        }
    }
    TripleReport { checked, witness: None }
}

/// Jacobiator on all generator triples `a <= b <= c`; the Jacobiator of a
/// biderivation is a derivation in each slot, so generators suffice.
pub fn jacobi_check(br: &Bracket) -> TripleReport {
    over_triples(br.n, |x, y, z| {
        br.apply(x, &br.apply(y, z)).add(&br.apply(y, &br.apply(z, x))).add(&br.apply(z, &br.apply(x, y)))
    })
}

/// Mixed Jacobiator `Σ_cyc {f, {g, h}_2}_1 + {f, {g, h}_1}_2`.
pub fn pencil_check(b1: &Bracket, b2: &Bracket) -> TripleReport {
    let mixed = |f: &PolyElement, g: &PolyElement, h: &PolyElement| b1.apply(f, &b2.apply(g, h)).add(&b2.apply(f, &b1.apply(g, h)));
    over_triples(b1.n, |x, y, z| mixed(x, y, z).add(&mixed(y, z, x)).add(&mixed(z, x, y)))
}

#[derive(Clone, Debug)]
pub struct CasimirReport {
    /// `(k, generator, value)` for every nonzero `{l_i^j, Tr L^k}`.
    pub failures: Vec<(usize, (usize, usize), PolyElement)>,
    pub checked: usize,
}

impl CasimirReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `{l_i^j, Tr L^k} = 0` for `k <= k_max`.
pub fn casimir_check(br: &Bracket, k_max: usize) -> CasimirReport {
    let n = br.n;
    let mut failures = Vec::new();
    let mut checked = 0;
    for k in 1..=k_max {
        let t = trace_power(n, k);
        for i in 0..n {
            for j in 0..n {
                checked += 1;
                let v = br.apply(&gen(i, j), &t);
                if !v.is_zero() {
                    failures.push((k, (i, j), v));
                }
            }
        }
    }
    CasimirReport { failures, checked }
}

#[derive(Clone, Debug)]
pub struct GzPoissonReport {
    /// `(level, power)` of each family element.
    pub elements: Vec<(usize, usize)>,
    /// Pairs with a nonzero bracket, tagged by which bracket.
    pub failures: Vec<(&'static str, (usize, usize), (usize, usize))>,
}

impl GzPoissonReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `{Tr L_(k)^p, Tr L_(k')^p'} = 0` under both brackets.
pub fn gz_poisson_check(br_r: &Bracket, powers: usize) -> GzPoissonReport {
    let n = br_r.n;
    let lin = bracket_lin(n);
    let mut elements = Vec::new();
    let mut values = Vec::new();
    for k in 1..=n {
        for p in 1..=powers {
            elements.push((k, p));
            values.push(block_trace_power(k, p));
        }
    }
    let mut failures = Vec::new();
    for a in 0..values.len() {
        for b in a + 1..values.len() {
            for (name, br) in [("r", br_r), ("lin", &lin)] {
                if !br.apply(&values[a], &values[b]).is_zero() {
                    failures.push((name, elements[a], elements[b]));
                }
            }
        }
    }
    GzPoissonReport { elements, failures }
}

/// The six brackets `{a,b}, {a,c}, {a,d}, {b,c}, {b,d}, {c,d}` in the names `a, b, c, d`.
pub fn gl2_table(br: &Bracket) -> Result<Vec<(String, PolyElement)>, CoreError> {
    let names = ["a", "b", "c", "d"];
    let mut out = Vec::with_capacity(6);
    for x in 0..4 {
        for y in x + 1..4 {
            let v = br.apply(&gen(x / 2, x % 2), &gen(y / 2, y % 2));
            out.push((format!("{{{},{}}}", names[x], names[y]), gl2_names(&v)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dj2_classical_r() {
        let r = ClassicalR::from_symmetry(&HeckeSymmetry::dj(2)).unwrap();
        assert_eq!(r.r, gl2_example_r(&RatFunc::zero()));
    }

    #[test]
    fn linear_bracket_samples() {
        let b = bracket_lin(2);
        assert_eq!(b.apply(&gen(0, 0), &gen(0, 1)), gen(0, 1));
        assert!(b.apply(&gen(0, 0), &gen(1, 1)).is_zero());
        assert_eq!(b.apply(&gen(0, 1), &gen(1, 0)), gen(0, 0).sub(&gen(1, 1)));
    }
}
