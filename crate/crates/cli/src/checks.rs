//! One function per subcommand. Every function returns its reports in a fixed
//! order so output is byte-stable.

use regz_core::gz::{enumerate_patterns, gz_family_check, joint_spectrum_check, orbit_check, ChainData, Labelling};
use regz_core::hecke::{braid_residual, classify_symmetry, hecke_residual, side_of, skew_inverse_residual, Classification, HeckeSymmetry};
use regz_core::poisson::{
    bracket_lin, bracket_r, casimir_check, gl2_example_r, gl2_table, gz_poisson_check, jacobi_check, pencil_check, Bracket, ClassicalR,
};
use regz_core::projector::partitions;
use regz_core::realg::{
    cayley_hamilton_check, centrality_certificate, certificate_value, cyclic_invariance_check, re_relations, Membership, NCPoly,
};
use regz_core::rep::{build_rep, build_rep_modified, character_check, classical_limit_matches, dual_limit_matches, JmPower};
use regz_core::spectral::{char_power_sum, newton_consistency};
use regz_core::CoreError;
use regz_exact::modp::{mul_mod, sub_mod};
use regz_exact::{parse_scalar, ExactMatrix, ModPoint, RatFunc};
use serde_json::{json, Value};

use crate::input::Bundle;
use crate::report::CheckReport;

/// The six generator brackets of the two-by-two example, in the names `a, b, c, d`.
pub const GL2_TABLE: [(&str, &str); 6] = [
    ("{a,b}", "-2*a*b"),
    ("{a,c}", "2*a*c"),
    ("{a,d}", "0"),
    ("{b,c}", "2*a*(d - a)"),
    ("{b,d}", "-2*a*b"),
    ("{c,d}", "2*a*c"),
];

fn first_nonzero(m: &ExactMatrix) -> Option<Value> {
    let d = m.dim();
    (0..d * d).find(|&x| !m.get(x / d, x % d).is_zero()).map(|x| json!({"row": x / d, "col": x % d, "value": m.get(x / d, x % d).to_expr()}))
}

fn exprs(v: &[RatFunc]) -> Vec<String> {
    v.iter().map(RatFunc::to_expr).collect()
}

pub fn build_hecke(label: &str, sym: &Result<HeckeSymmetry, CoreError>) -> CheckReport {
    let rep = CheckReport::new("build-hecke", label);
    match sym {
        Ok(s) => rep
            .detail("kind", s.kind().as_str())
            .detail("n", s.n())
            .detail("bundle", serde_json::to_value(Bundle::from_symmetry(s)).expect("bundle serializes")),
        Err(e) => rep.fail(e.to_string()),
    }
}

fn mat_mul_mod(a: &[u64], b: &[u64], d: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; d * d];
    for i in 0..d {
        for k in 0..d {
            let x = a[i * d + k];
            if x == 0 {
                continue;
            }
            for j in 0..d {
                let y = b[k * d + j];
                if y != 0 {
                    out[i * d + j] = (out[i * d + j] + mul_mod(x, y, p)) % p;
                }
            }
        }
    }
    out
}

/// `A ⊗ I_m` (`left`) or `I_m ⊗ A` for a residue matrix of side `d`.
fn kron_id_mod(a: &[u64], d: usize, m: usize, left: bool) -> Vec<u64> {
    let big = d * m;
    let mut out = vec![0u64; big * big];
    for i in 0..d {
        for j in 0..d {
            for t in 0..m {
                let (r, c) = if left { (i * m + t, j * m + t) } else { (t * d + i, t * d + j) };
                out[r * big + c] = a[i * d + j];
            }
        }
    }
    out
}

/// Braid residual at `samples` seeded residue points. A nonzero residue proves
/// the exact residual is nonzero.
pub fn braid_prescreen(r: &ExactMatrix, samples: u64, seed: u64) -> Option<Value> {
    let n = side_of(r).ok()?;
    let d = n * n;
    for s in 0..samples {
        let pt = ModPoint::new(seed.wrapping_add(s));
        let p = pt.prime();
        let Some(v) = r.eval_mod(&pt) else { continue };
        let r1 = kron_id_mod(&v, d, n, true);
        let r2 = kron_id_mod(&v, d, n, false);
        let big = d * n;
        let lhs = mat_mul_mod(&mat_mul_mod(&r1, &r2, big, p), &r1, big, p);
        let rhs = mat_mul_mod(&mat_mul_mod(&r2, &r1, big, p), &r2, big, p);
        if let Some(x) = (0..big * big).find(|&x| lhs[x] != rhs[x]) {
            return Some(json!({"sample_seed": seed.wrapping_add(s), "row": x / big, "col": x % big, "residue": sub_mod(lhs[x], rhs[x], p)}));
        }
    }
    None
}

pub fn validate(label: &str, r: &ExactMatrix, samples: u64, seed: u64) -> CheckReport {
    let rep = CheckReport::new("validate", label).detail("q_samples", samples).detail("seed", seed);
    if let Some(w) = braid_prescreen(r, samples, seed) {
        return rep.detail("classification", Classification::NotBraiding.as_str()).detail("prescreen", "rejected").fail(w);
    }
    match classify_symmetry(r) {
        Err(e) => rep.fail(e.to_string()),
        Ok(c) => {
            let rep = rep.detail("classification", c.as_str());
            match c {
                Classification::Hecke | Classification::Involutive => rep,
                Classification::NotBraiding => {
                    let w = braid_residual(r).ok().and_then(|m| first_nonzero(&m));
                    rep.fail(json!({"braid_residual": w}))
                }
                Classification::BraidingOnly => rep.fail(json!({"hecke_residual": first_nonzero(&hecke_residual(r))})),
            }
        }
    }
}

pub fn skew_inverse(label: &str, sym: &Result<HeckeSymmetry, CoreError>) -> CheckReport {
    let rep = CheckReport::new("skew-inverse", label);
    let s = match sym {
        Ok(s) => s,
        Err(e) => return rep.fail(e.to_string()),
    };
    let res = match skew_inverse_residual(s.r(), s.psi()) {
        Ok(m) => m,
        Err(e) => return rep.fail(e.to_string()),
    };
    let cb = s.c_braid_residual();
    let c = s.c_matrix();
    let c_rows: Vec<Vec<String>> = (0..c.dim()).map(|i| (0..c.dim()).map(|j| c.get(i, j).to_expr()).collect()).collect();
    rep.detail("c_matrix", c_rows)
        .require(res.is_zero(), || json!({"skew_inverse_residual": first_nonzero(&res)}))
        .require(cb.is_zero(), || json!({"c_braid_residual": first_nonzero(&cb)}))
}

fn membership_summary(entries: &[((usize, usize), Membership)]) -> Value {
    entries
        .iter()
        .map(|((i, j), m)| {
            let v = match m {
                Membership::Certified(t) => json!({"certified": t.len()}),
                Membership::NotFound { max_deg, outside } => json!({"not_found": max_deg, "outside": outside}),
            };
            json!({"generator": format!("l{i}{j}"), "result": v})
        })
        .collect()
}

/// Reports `pass` when every entry is certified, `fail` when one is provably
/// outside the ideal and `not_certified` otherwise.
fn membership_status(rep: CheckReport, entries: &[((usize, usize), Membership)]) -> CheckReport {
    let rep = rep.detail("entries", membership_summary(entries));
    if let Some(((i, j), _)) = entries.iter().find(|(_, m)| matches!(m, Membership::NotFound { outside: true, .. })) {
        return rep.fail(json!({"generator": format!("l{i}{j}"), "reason": "outside the ideal component"}));
    }
    if entries.iter().all(|(_, m)| m.is_certified()) {
        rep
    } else {
        rep.not_certified("degree bound reached without certificate")
    }
}

/// `[z, l_i^j]` in the RE ideal for `z = p_k` (or a generator), with every
/// certificate recombined and compared with the commutator.
pub fn centrality(label: &str, s: &HeckeSymmetry, z: &NCPoly, z_name: &str, max_deg: usize) -> CheckReport {
    let rep = CheckReport::new("centrality", format!("{label} z={z_name} max_deg={max_deg}"));
    let report = centrality_certificate(s, z, max_deg);
    let ideal = re_relations(s);
    let n = s.n();
    for ((i, j), m) in &report.entries {
        if let Membership::Certified(terms) = m {
            let c = z.commutator(&NCPoly::gen(n, i - 1, j - 1));
            if certificate_value(&ideal, terms) != c {
                return rep.fail(json!({"generator": format!("l{i}{j}"), "reason": "certificate does not recombine"}));
            }
        }
    }
    membership_status(rep, &report.entries)
}

pub fn cayley_hamilton(label: &str, s: &HeckeSymmetry, m: usize, max_deg: usize) -> CheckReport {
    let rep = CheckReport::new("cayley-hamilton", format!("{label} m={m} max_deg={max_deg}"));
    match cayley_hamilton_check(s, m, max_deg) {
        Err(e) => rep.fail(e.to_string()),
        Ok(ch) => {
            let rep = rep.detail("rank_probe", ch.rank_probe);
            if !ch.rank_probe {
                return rep.fail(json!({"rank_probe": "column projector of height m+1 does not vanish or lower ones vanish"}));
            }
            membership_status(rep, &ch.entries)
        }
    }
}

pub fn newton(m_max: usize, k_max: usize) -> Vec<CheckReport> {
    (1..=m_max)
        .map(|m| {
            let nr = newton_consistency(m, k_max);
            let rows: Vec<Value> = nr
                .rows
                .iter()
                .map(|r| json!({"k": r.k, "p_from_e": r.p_from_e, "e_from_p": r.e_from_p, "p_from_h": r.p_from_h, "wronski": r.wronski}))
                .collect();
            let bad = nr.rows.iter().find(|r| !r.passed()).map(|r| r.k);
            CheckReport::new("newton", format!("m={m} k<={k_max}")).detail("rows", rows).require(bad.is_none(), || json!({"k": bad}))
        })
        .collect()
}

/// Module certification, shift compatibility and the two candidate classical limits.
pub fn rep_check(big_n: usize, n: usize) -> Vec<CheckReport> {
    let inputs = format!("dj N={big_n} n={n}");
    let r = HeckeSymmetry::dj(big_n);
    let certify = CheckReport::new("rep.certify", inputs.clone());
    let a = match build_rep(&r, n) {
        Ok(a) => a,
        Err(e) => return vec![certify.fail(e.to_string())],
    };
    let certify = certify.detail("jm_power", a.power.as_str()).detail("convention", a.convention.as_str()).detail("dim", a.dim());
    let shift = CheckReport::new("rep.shift", inputs.clone());
    let shift = match (build_rep_modified(&r, n), a.shifted()) {
        (Ok(m), Ok(sh)) => {
            let bad = (0..m.rho.len()).find(|&x| m.rho[x] != sh[x]);
            shift.require(bad.is_none(), || json!({"generator": bad.map(|x| format!("l{}{}", x / big_n + 1, x % big_n + 1))}))
        }
        (Err(e), _) | (_, Err(e)) => shift.fail(e.to_string()),
    };
    let (limit, dual) = match build_rep_modified(&r, n) {
        Ok(m) => (classical_limit_matches(&m), dual_limit_matches(&m)),
        Err(e) => (Err(e.clone()), Err(e)),
    };
    let limit_rep = CheckReport::new("rep.classical_limit", inputs.clone()).detail("target", "l_i^j -> E_ij coproduct");
    let limit_rep = match limit {
        Ok(ok) => limit_rep.require(ok, || json!({"observed": "l_i^j -> -E_ji (dual coproduct)", "jm_power": a.power.as_str()})),
        Err(e) => limit_rep.fail(e.to_string()),
    };
    let dual_rep = CheckReport::new("rep.dual_limit", inputs).detail("target", "l_i^j -> -E_ji coproduct");
    let dual_rep = match dual {
        Ok(ok) => dual_rep.require(ok, || json!({"observed": "not the dual coproduct"})),
        Err(e) => dual_rep.fail(e.to_string()),
    };
    // The dual limit is the diagnosis for modules built from the direct power.
    if a.power == JmPower::Direct {
        vec![certify, shift, limit_rep, dual_rep]
    } else {
        vec![certify, shift, limit_rep]
    }
}

/// Characters of the tensor-power submodules against the literal prediction
/// and the complement-labelled one, plus the product-formula ratio.
pub fn characters(big_n: usize, n: usize, k_max: usize) -> Vec<CheckReport> {
    let inputs = format!("dj N={big_n} n={n} k<={k_max}");
    let r = HeckeSymmetry::dj(big_n);
    let (rows, sets) = match character_check(&r, n, k_max) {
        Ok(x) => x,
        Err(e) => return vec![CheckReport::new("characters", inputs).fail(e.to_string())],
    };
    let set_rep = |name: &str, literal: bool| {
        let bad = sets.iter().find(|s| if literal { !s.literal_match() } else { !s.label_match() });
        CheckReport::new(name, inputs.clone()).detail("submodules", sets.len()).require(bad.is_none(), || {
            let s = bad.expect("mismatch");
            json!({"shape": s.shape, "tableau": s.tableau, "observed": exprs(&s.observed),
                   "predicted": exprs(if literal { &s.literal } else { &s.labelled })})
        })
    };
    let row_rep = |name: &str, literal: bool| {
        let bad = rows.iter().find(|s| if literal { !s.literal_match() } else { !s.label_match() });
        CheckReport::new(name, inputs.clone()).detail("rows", rows.len()).require(bad.is_none(), || {
            let s = bad.expect("mismatch");
            let pred = if literal { &s.literal } else { &s.labelled };
            let ratio = s.observed.div(pred).map(|x| x.to_expr()).unwrap_or_else(|_| "undefined".into());
            json!({"shape": s.shape, "tableau": s.tableau, "k": s.k, "observed": s.observed.to_expr(),
                   "predicted": pred.to_expr(), "observed_over_predicted": ratio})
        })
    };
    let mut ratios = Vec::new();
    let mut ratio_err = None;
    for shape in partitions(n).into_iter().filter(|p| p.len() <= big_n) {
        for k in 1..=k_max {
            match char_power_sum(&shape, big_n, k) {
                Ok(c) => ratios.push((shape.clone(), k, c.ratio)),
                Err(e) => ratio_err = Some(e.to_string()),
            }
        }
    }
    let constant = ratios.iter().all(|(_, _, x)| x.is_monomial() && x.is_q_only() && *x == ratios[0].2);
    let ratio_rep = CheckReport::new("characters.product_ratio", inputs.clone())
        .detail("ratios", ratios.iter().map(|(s, k, x)| json!({"shape": s, "k": k, "ratio": x.to_expr()})).collect::<Vec<_>>());
    let ratio_rep = match ratio_err {
        Some(e) => ratio_rep.fail(e),
        None => ratio_rep.require(constant, || json!({"reason": "ratio is not one constant power of q"})),
    };
    vec![
        set_rep("characters.multiset", true),
        set_rep("characters.multiset_labelled", false),
        row_rep("characters.power_sum", true),
        row_rep("characters.power_sum_labelled", false),
        ratio_rep,
    ]
}

fn padded_top(shape: &[usize], len: usize) -> Vec<i64> {
    let mut top: Vec<i64> = shape.iter().map(|&x| x as i64).collect();
    top.resize(len, 0);
    top
}

pub fn gz_family(label: &str, chain: &ChainData, n: usize, powers: usize) -> CheckReport {
    let rep = CheckReport::new("gz.family", format!("{label} n={n} powers={powers}"));
    match gz_family_check(chain, n, powers) {
        Err(e) => rep.fail(e.to_string()),
        Ok(f) => {
            let first = f.failures.first().cloned();
            rep.detail("operators", f.operators.len())
                .require(f.passed(), || json!({"noncommuting": first.map(|(a, b)| json!({"level_power_a": a, "level_power_b": b}))}))
        }
    }
}

/// One rank-one projector per pattern, summing to the isotypic projector.
pub fn gz_joint(label: &str, chain: &ChainData, shape: &[usize], powers: usize, labelling: Labelling) -> CheckReport {
    let rep = CheckReport::new("gz.joint_spectrum", format!("{label} shape={shape:?} powers={powers} labelling={}", labelling.as_str()))
        .detail("labelling", labelling.as_str());
    let expected = match enumerate_patterns(&padded_top(shape, chain.n())) {
        Ok(p) => p.len(),
        Err(e) => return rep.fail(e.to_string()),
    };
    match joint_spectrum_check(chain, shape, powers, labelling) {
        Err(e) => rep.fail(e.to_string()),
        Ok(j) => {
            let ranks: Vec<usize> = j.rows.iter().map(|r| r.rank).collect();
            let rows: Vec<Value> = j.rows.iter().map(|r| json!({"pattern": r.pattern.to_string(), "rank": r.rank})).collect();
            let ok = j.passed() && j.rows.len() == expected;
            rep.detail("dim", j.dim)
                .detail("patterns", expected)
                .detail("rows", rows)
                .detail("complete", j.complete)
                .detail("separated", j.separated)
                .require(ok, || json!({"ranks": ranks, "complete": j.complete, "separated": j.separated}))
        }
    }
}

/// Accepts generic points and rejects coincidences with the condition that fails.
pub fn orbit(mu: &[RatFunc]) -> CheckReport {
    let rep = CheckReport::new("orbit.point", format!("mu=[{}]", exprs(mu).join(",")));
    match orbit_check(mu) {
        Ok(o) => rep.detail("alphas", exprs(&o.alphas)),
        Err(e) => rep.fail(e.to_string()),
    }
}

pub fn cyclic(label: &str, s: &HeckeSymmetry, k: usize) -> CheckReport {
    let rep = CheckReport::new("orbit.cyclic_invariance", format!("{label} k={k}"));
    match cyclic_invariance_check(s, k) {
        Ok(ok) => rep.require(ok, || json!({"k": k})),
        Err(e) => rep.fail(e.to_string()),
    }
}

fn classical_r_report(label: &str, r: &Result<ClassicalR, CoreError>) -> CheckReport {
    let rep = CheckReport::new("poisson.classical_r", label.to_string());
    match r {
        Err(e) => rep.fail(e.to_string()),
        Ok(c) => {
            let u = c.unitarity_residual();
            let y = c.cybe_residual();
            rep.detail("n", c.n)
                .require(u.is_zero(), || json!({"unitarity_residual": first_nonzero(&u)}))
                .require(y.is_zero(), || json!({"cybe_residual": first_nonzero(&y)}))
        }
    }
}

/// Jacobi, pencil, Casimir and Gelfand-Zetlin involutivity for one bracket.
pub fn bracket_checks(label: &str, br: &Bracket, k_max: usize) -> Vec<CheckReport> {
    let lin = bracket_lin(br.n);
    let triple = |name: &str, t: regz_core::poisson::TripleReport| {
        let w = t.witness.clone();
        CheckReport::new(name, label.to_string())
            .detail("triples", t.checked)
            .require(t.passed(), || w.map(|w| json!({"triple": w.triple, "value": w.value.to_expr()})).unwrap_or(Value::Null))
    };
    let cas = casimir_check(br, k_max);
    let gz = gz_poisson_check(br, 2);
    vec![
        CheckReport::new("poisson.antisymmetric", label.to_string()).require(br.is_antisymmetric(), || json!("table")),
        triple("poisson.jacobi", jacobi_check(br)),
        triple("poisson.pencil", pencil_check(br, &lin)),
        CheckReport::new("poisson.casimir", format!("{label} k<={k_max}")).detail("checked", cas.checked).require(cas.passed(), || {
            let (k, (i, j), v) = &cas.failures[0];
            json!({"k": k, "generator": format!("l{}{}", i + 1, j + 1), "value": v.to_expr()})
        }),
        CheckReport::new("poisson.gz", label.to_string()).detail("elements", gz.elements.len()).require(gz.passed(), || {
            let (b, x, y) = &gz.failures[0];
            json!({"bracket": b, "a": x, "b": y})
        }),
    ]
}

/// The two-by-two bracket table against [`GL2_TABLE`].
pub fn gl2_table_check(label: &str, br: &Bracket) -> CheckReport {
    let rep = CheckReport::new("poisson.gl2_table", label.to_string());
    let table = match gl2_table(br) {
        Ok(t) => t,
        Err(e) => return rep.fail(e.to_string()),
    };
    let rep = rep.detail("table", table.iter().map(|(k, v)| json!({"bracket": k, "value": v.to_expr()})).collect::<Vec<_>>());
    let bad = table.iter().zip(GL2_TABLE).find(|((_, v), (_, e))| *v != parse_scalar(e).expect("table constant parses"));
    rep.require(bad.is_none(), || {
        let ((k, v), (_, e)) = bad.expect("mismatch");
        json!({"bracket": k, "observed": v.to_expr(), "expected": e})
    })
}

/// All Poisson checks for a classical r; the table check runs for `n = 2`.
pub fn poisson(label: &str, r: Result<ClassicalR, CoreError>, k_max: usize) -> Vec<CheckReport> {
    let mut out = vec![classical_r_report(label, &r)];
    if let Ok(c) = &r {
        let br = bracket_r(c);
        out.extend(bracket_checks(label, &br, k_max));
        if c.n == 2 {
            out.push(gl2_table_check(label, &br));
        }
    }
    out
}

pub fn gl2_example(alpha: &RatFunc) -> Result<ClassicalR, CoreError> {
    ClassicalR::new(gl2_example_r(alpha))
}
