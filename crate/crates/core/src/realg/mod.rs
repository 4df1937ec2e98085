//! The reflection equation algebra of a Hecke symmetry as a quotient of the
//! free algebra on `l_i^j`: relations, central elements and certificates.

mod ideal;
mod ncpoly;

use std::collections::BTreeMap;

use regz_exact::{lambda, ExactMatrix, RatFunc, Sym};

use crate::error::CoreError;
use crate::hecke::{HeckeSymmetry, SymmetryKind};
use crate::projector::nonzero_shapes;
use crate::symfun;

pub use ideal::{certificate_value, ideal_membership, ideal_membership_with, same_span, CertTerm, Membership, QuadIdeal};
pub use ncpoly::{NCPoly, OpMatrix, Word};

fn relation_matrix(r: &HeckeSymmetry, l: &OpMatrix) -> OpMatrix {
    let n = r.n();
    let l1 = l.kron_identity(n);
    let rl = l1.lmul_scalar(r.r());
    let lr = l1.rmul_scalar(r.r());
    rl.mul(&rl).sub(&lr.mul(&lr))
}

/// Entries of `R L_1 R L_1 - L_1 R L_1 R`, row-major.
pub fn re_relations(r: &HeckeSymmetry) -> QuadIdeal {
    let m = relation_matrix(r, &OpMatrix::generating(r.n()));
    QuadIdeal::new(r.n(), m.entries().to_vec())
}

/// Entries of `R L_1 R L_1 - L_1 R L_1 R - (R L_1 - L_1 R)` in the shifted generators.
pub fn modified_relations(r: &HeckeSymmetry) -> QuadIdeal {
    let n = r.n();
    let l = OpMatrix::generating(n);
    let l1 = l.kron_identity(n);
    let linear = l1.lmul_scalar(r.r()).sub(&l1.rmul_scalar(r.r()));
    let m = relation_matrix(r, &l).sub(&linear);
    QuadIdeal::new(n, m.entries().to_vec())
}

/// Images of the generators under `l_i^j -> δ_i^j - (q - q^{-1}) l_i^j`.
pub fn shift_images(n: usize) -> Vec<NCPoly> {
    let lam = lambda();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut p = NCPoly::gen(n, i, j).scale(&lam.neg());
            if i == j {
                p = p.add(&NCPoly::one(n));
            }
            out.push(p);
        }
    }
    out
}

/// Substituting the shift into the RE relations yields `(q - q^{-1})^2`
/// times the modified relations, entry by entry.
pub fn shift_check(r: &HeckeSymmetry) -> bool {
    let images = shift_images(r.n());
    let lam2 = lambda().pow(2);
    let plain = re_relations(r);
    let modified = modified_relations(r);
    plain.relations().iter().zip(modified.relations()).all(|(a, b)| a.substitute(&images) == b.scale(&lam2))
}

/// The commutator relations `[l_i^j, l_k^r] - (l_i^r δ_k^j - l_k^j δ_i^r)`.
pub fn gl_relations(n: usize) -> Vec<NCPoly> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for r in 0..n {
                    let mut p = NCPoly::gen(n, i, j).commutator(&NCPoly::gen(n, k, r));
                    if k == j {
                        p = p.sub(&NCPoly::gen(n, i, r));
                    }
                    if i == r {
                        p = p.add(&NCPoly::gen(n, k, j));
                    }
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Modified relations with `q = 1`, when every coefficient is regular there.
pub fn modified_relations_at_one(r: &HeckeSymmetry) -> Result<Vec<NCPoly>, CoreError> {
    modified_relations(r)
        .relations()
        .iter()
        .map(|p| p.try_map_coeffs(|c| c.at_q_one()).map_err(CoreError::from))
        .collect()
}

/// True when the `q = 1` modified relations span the commutator relations of `gl(N)`.
pub fn classical_limit_check(r: &HeckeSymmetry) -> Result<bool, CoreError> {
    Ok(same_span(&modified_relations_at_one(r)?, &gl_relations(r.n())))
}

/// `L_{\ov m}` on `p` tensor factors.
pub fn lbar(r: &HeckeSymmetry, m: usize, p: usize) -> OpMatrix {
    let n = r.n();
    let mut cur = OpMatrix::generating(n).kron_identity(n.pow((p - 1) as u32));
    for s in 1..m {
        cur = cur.lmul_scalar(&r.r_k(s, p)).rmul_scalar(&r.r_k_inv(s, p));
    }
    cur
}

/// `L_{\ov 1} L_{\ov 2} ... L_{\ov k}` on `k` tensor factors.
pub fn lbar_chain(r: &HeckeSymmetry, k: usize) -> OpMatrix {
    let mut acc = lbar(r, 1, k);
    for m in 2..=k {
        acc = acc.mul(&lbar(r, m, k));
    }
    acc
}

/// Product `R_{w_1} R_{w_2} ...` on `k` factors; negative letters are inverses.
pub fn r_word(r: &HeckeSymmetry, word: &[i32], k: usize) -> ExactMatrix {
    let mut acc = ExactMatrix::identity(r.n().pow(k as u32));
    for &s in word {
        let f = if s > 0 { r.r_k(s as usize, k) } else { r.r_k_inv((-s) as usize, k) };
        acc = acc.mul(&f);
    }
    acc
}

/// `C^{⊗k}`.
pub fn c_power(r: &HeckeSymmetry, k: usize) -> ExactMatrix {
    let mut acc = r.c_matrix().clone();
    for _ in 1..k {
        acc = acc.kron(r.c_matrix());
    }
    acc
}

/// The iterated R-trace of `f L_{\ov{1→k}}` and of `L_{\ov{1→k}} f`.
pub fn char_element_both(r: &HeckeSymmetry, f: &ExactMatrix, k: usize) -> (NCPoly, NCPoly) {
    let chain = lbar_chain(r, k);
    let ck = c_power(r, k);
    let left = chain.trace_against(&ck.mul(f));
    let right = chain.rmul_scalar(f).trace_against(&ck);
    (left, right)
}

/// The central element attached to `f`; errors if the two orders disagree.
pub fn char_element(r: &HeckeSymmetry, f: &ExactMatrix, k: usize) -> Result<NCPoly, CoreError> {
    let (a, b) = char_element_both(r, f, k);
    if a != b {
        return Err(CoreError::AxiomFailure("R-trace is not cyclic".into()));
    }
    Ok(a)
}

/// `R_{k-1} ... R_1` on `k` factors.
pub fn power_word(r: &HeckeSymmetry, k: usize) -> ExactMatrix {
    let word: Vec<i32> = (1..k as i32).rev().collect();
    r_word(r, &word, k)
}

/// `Tr_R L^k`.
pub fn power_sum(r: &HeckeSymmetry, k: usize) -> NCPoly {
    let n = r.n();
    let l = OpMatrix::generating(n);
    let mut acc = OpMatrix::from_scalar(&ExactMatrix::identity(n), n);
    for _ in 0..k {
        acc = acc.mul(&l);
    }
    acc.trace_against(r.c_matrix())
}

/// `p_k` through the iterated trace of `L_{\ov{1→k}} R_{k-1} ... R_1`.
pub fn power_sum_via_chain(r: &HeckeSymmetry, k: usize) -> NCPoly {
    let chain = lbar_chain(r, k);
    chain.rmul_scalar(&power_word(r, k)).trace_against(&c_power(r, k))
}

/// Realize a polynomial in commuting `p1..pk` with the given algebra elements,
/// factors ordered by increasing index.
pub fn realize(poly: &RatFunc, p: &[NCPoly]) -> Result<NCPoly, CoreError> {
    let n = p[0].n();
    let syms: Vec<Sym> = (1..=p.len()).map(|i| Sym::new(&format!("p{i}"))).collect();
    let coeffs = poly
        .coefficients_in(&syms)
        .ok_or_else(|| CoreError::Invalid("not polynomial in the power sums".into()))?;
    let mut out = NCPoly::zero(n);
    for (exps, c) in coeffs {
        let mut t = NCPoly::scalar(n, &c);
        for (i, &e) in exps.iter().enumerate() {
            t = t.mul(&p[i].pow(e));
        }
        out = out.add(&t);
    }
    Ok(out)
}

/// Elementary and complete symmetric elements of degree `1..=k`.
#[derive(Clone, Debug)]
pub struct SymPolys {
    pub p: Vec<NCPoly>,
    pub e: Vec<NCPoly>,
    pub h: Vec<NCPoly>,
}

/// `e_1..e_k` and `h_1..h_k` defined from the power sums by the determinant relations.
pub fn sym_polys(r: &HeckeSymmetry, k: usize) -> Result<SymPolys, CoreError> {
    let p: Vec<NCPoly> = (1..=k).map(|i| power_sum(r, i)).collect();
    let pv = symfun::p_vars(k);
    let mut e = Vec::with_capacity(k);
    let mut h = Vec::with_capacity(k);
    for i in 1..=k {
        e.push(realize(&symfun::e_from_p(i, &pv), &p[..i])?);
        h.push(realize(&symfun::h_from_p(i, &pv), &p[..i])?);
    }
    Ok(SymPolys { p, e, h })
}

/// Wronski sums realized through the commutative identity: each is the
/// image of `Σ (-1)^r h_r e_{k-r}` in the power sums.
pub fn wronski_elements(r: &HeckeSymmetry, k: usize) -> Result<Vec<NCPoly>, CoreError> {
    let p: Vec<NCPoly> = (1..=k).map(|i| power_sum(r, i)).collect();
    let pv = symfun::p_vars(k);
    let e: Vec<RatFunc> = (1..=k).map(|i| symfun::e_from_p(i, &pv)).collect();
    let h: Vec<RatFunc> = (1..=k).map(|i| symfun::h_from_p(i, &pv)).collect();
    (1..=k).map(|i| realize(&symfun::wronski(i, &e, &h), &p)).collect()
}

/// Membership results for the commutators of `z` with every generator.
#[derive(Clone, Debug)]
pub struct CentralityReport {
    pub max_deg: usize,
    /// `((i, j), result)`, 1-based.
    pub entries: Vec<((usize, usize), Membership)>,
}

impl CentralityReport {
    pub fn all_certified(&self) -> bool {
        self.entries.iter().all(|(_, m)| m.is_certified())
    }

    /// A generator whose commutator is provably outside the ideal.
    pub fn refuted(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .find(|(_, m)| matches!(m, Membership::NotFound { outside: true, .. }))
            .map(|(ij, _)| *ij)
    }
}

/// Certify `[z, l_i^j]` in the RE ideal for all generators.
pub fn centrality_certificate(r: &HeckeSymmetry, z: &NCPoly, max_deg: usize) -> CentralityReport {
    let ideal = re_relations(r);
    centrality_in(&ideal, z, max_deg)
}

/// As [`centrality_certificate`] for an arbitrary ideal.
pub fn centrality_in(ideal: &QuadIdeal, z: &NCPoly, max_deg: usize) -> CentralityReport {
    let n = ideal.n();
    let kept = ideal.independent();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let c = z.commutator(&NCPoly::gen(n, i, j));
            entries.push(((i + 1, j + 1), ideal_membership_with(&c, ideal, &kept, max_deg)));
        }
    }
    CentralityReport { max_deg, entries }
}

/// Outcome of the Cayley-Hamilton certification.
#[derive(Clone, Debug)]
pub struct CayleyHamiltonReport {
    pub m: usize,
    /// Young projector probe: `(1^{m+1})` vanishes, `(1^m)` and `(m+1)` do not.
    pub rank_probe: bool,
    pub entries: Vec<((usize, usize), Membership)>,
}

impl CayleyHamiltonReport {
    pub fn passed(&self) -> bool {
        self.rank_probe && self.entries.iter().all(|(_, m)| m.is_certified())
    }
}

/// Entries of `Σ_t (-q)^t e_t L^{m-t}`.
pub fn cayley_hamilton_matrix(r: &HeckeSymmetry, m: usize) -> Result<OpMatrix, CoreError> {
    let n = r.n();
    let sp = sym_polys(r, m)?;
    let l = OpMatrix::generating(n);
    let mut powers = vec![OpMatrix::from_scalar(&ExactMatrix::identity(n), n)];
    for t in 1..=m {
        powers.push(powers[t - 1].mul(&l));
    }
    let mut acc = powers[m].clone();
    for t in 1..=m {
        let coef = RatFunc::q().neg().pow(t as i32);
        let e = sp.e[t - 1].scale(&coef);
        acc = acc.add(&powers[m - t].map(|x| e.mul(x)));
    }
    Ok(acc)
}

pub fn cayley_hamilton_check(r: &HeckeSymmetry, m: usize, max_deg: usize) -> Result<CayleyHamiltonReport, CoreError> {
    let column = |k: usize| vec![1usize; k];
    let up = nonzero_shapes(r, m + 1)?;
    let at = nonzero_shapes(r, m)?;
    let rank_probe = r.kind() == SymmetryKind::Hecke
        && !up.contains(&column(m + 1))
        && up.contains(&vec![m + 1])
        && at.contains(&column(m));
    let ch = cayley_hamilton_matrix(r, m)?;
    let ideal = re_relations(r);
    let kept = ideal.independent();
    let n = r.n();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(((i + 1, j + 1), ideal_membership_with(ch.get(i, j), &ideal, &kept, max_deg)));
        }
    }
    Ok(CayleyHamiltonReport { m, rank_probe, entries })
}

/// Power sums are unchanged when `L_{\ov{1→k}}` is conjugated by `R_{k-1} ... R_1`.
pub fn cyclic_invariance_check(r: &HeckeSymmetry, k: usize) -> Result<bool, CoreError> {
    let w = power_word(r, k);
    let w_inv = w.inverse()?;
    let chain = lbar_chain(r, k);
    let conj = chain.lmul_scalar(&w_inv).rmul_scalar(&w);
    let lhs = conj.rmul_scalar(&w).trace_against(&c_power(r, k));
    Ok(lhs == power_sum(r, k))
}

/// Coefficient table of an element as `(word pairs, coefficient text)`.
pub fn describe(p: &NCPoly) -> BTreeMap<String, String> {
    p.to_pairs()
        .into_iter()
        .map(|(w, c)| (w.iter().map(|(i, j)| format!("l{i}{j}")).collect::<Vec<_>>().join("*"), c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use regz_exact::parse_scalar;

    #[test]
    fn scalar_case_is_trivial() {
        let r = HeckeSymmetry::dj(1);
        assert!(re_relations(&r).relations().iter().all(NCPoly::is_zero));
        assert!(modified_relations(&r).relations().iter().all(NCPoly::is_zero));
        let l = NCPoly::gen(1, 0, 0);
        assert_eq!(power_sum(&r, 1), l.scale(&RatFunc::q_pow(-1)));
        assert_eq!(lbar_chain(&r, 2).get(0, 0), &l.mul(&l));
        assert!(cyclic_invariance_check(&r, 2).unwrap());
    }

    #[test]
    fn dj2_relations_span_six() {
        let r = HeckeSymmetry::dj(2);
        assert_eq!(re_relations(&r).span_rank(), 6);
        assert!(shift_check(&r));
        assert!(classical_limit_check(&r).unwrap());
    }

    #[test]
    fn relations_vanish_at_identity() {
        let r = HeckeSymmetry::dj(2);
        let images: Vec<ExactMatrix> = (0..4).map(|a| ExactMatrix::scalar(1, &RatFunc::int((a % 3 == 0) as i64))).collect();
        for rel in re_relations(&r).relations() {
            assert!(rel.eval_matrix(&images, 1).is_zero());
        }
    }

    #[test]
    fn power_sums_agree_with_chain_form() {
        let r = HeckeSymmetry::dj(2);
        for k in 1..=3 {
            assert_eq!(power_sum(&r, k), power_sum_via_chain(&r, k), "k={k}");
        }
        let (a, b) = char_element_both(&r, &r_word(&r, &[1, 2, 1], 3), 3);
        assert_eq!(a, b);
    }

    #[test]
    fn e2_from_determinant() {
        let r = HeckeSymmetry::dj(2);
        let sp = sym_polys(&r, 2).unwrap();
        assert_eq!(sp.e[0], sp.p[0]);
        assert_eq!(sp.h[0], sp.p[0]);
        let two = parse_scalar("q + 1/q").unwrap();
        let expect = sp.p[0].mul(&sp.p[0]).scale(&RatFunc::q()).sub(&sp.p[1]).scale(&two.inv().unwrap());
        assert_eq!(sp.e[1], expect);
        assert!(wronski_elements(&r, 3).unwrap().iter().all(NCPoly::is_zero));
    }

    #[test]
    fn p1_is_central_for_dj2() {
        let r = HeckeSymmetry::dj(2);
        let rep = centrality_certificate(&r, &power_sum(&r, 1), 3);
        assert!(rep.all_certified());
        let bad = centrality_certificate(&r, &NCPoly::gen(2, 0, 1), 3);
        assert!(!bad.all_certified());
        assert!(bad.refuted().is_some());
    }

    #[test]
    fn cayley_hamilton_dj2() {
        let r = HeckeSymmetry::dj(2);
        let rep = cayley_hamilton_check(&r, 2, 2).unwrap();
        assert!(rep.rank_probe);
        assert!(rep.passed(), "{:?}", rep.entries);
    }
}
