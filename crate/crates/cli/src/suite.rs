//! The acceptance matrix: twelve criteria, each a list of reports and a time budget.

use std::time::{Duration, Instant};

use regz_core::gz::{chain_build, Block, ChainData, GlueStep, Labelling};
use regz_core::hecke::HeckeSymmetry;
use regz_core::poisson::{bracket_r, gl2_example_r, gl2_table, jacobi_check, ClassicalR};
use regz_core::realg::{power_sum, NCPoly};
use regz_core::CoreError;
use regz_exact::{ExactMatrix, RatFunc};
use serde_json::json;

use crate::checks;
use crate::input::chain_label;
use crate::report::{CheckReport, Status};

/// `(id, title, budget in seconds)`.
pub const CRITERIA: [(u8, &str, u64); 12] = [
    (1, "axioms", 10),
    (2, "skew-inverse", 10),
    (3, "sub-closure", 1),
    (4, "centrality", 30),
    (5, "cayley-hamilton", 120),
    (6, "newton-wronski", 30),
    (7, "representation", 120),
    (8, "characters", 300),
    (9, "gelfand-zetlin", 600),
    (10, "orbits", 30),
    (11, "poisson", 120),
    (12, "negative-controls", 30),
];

#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub budget: Duration,
    pub elapsed: Duration,
    pub reports: Vec<CheckReport>,
}

impl Criterion {
    pub fn checks_passed(&self) -> bool {
        self.reports.iter().all(CheckReport::passed)
    }

    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }

    pub fn passed(&self) -> bool {
        self.checks_passed() && self.within_budget()
    }

    pub fn failing(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports.iter().filter(|r| !r.passed())
    }

    /// `PASS 7 representation (1.2s / 120s) 36 checks` or the FAIL form.
    pub fn line(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let failing = self.failing().count();
        let mut s = format!(
            "{verdict} {:>2} {:<18} ({:.2}s / {}s) {} checks",
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.reports.len()
        );
        if failing > 0 {
            s.push_str(&format!(", {failing} not passing"));
        }
        if !self.within_budget() {
            s.push_str(", over budget");
        }
        s
    }
}

pub fn q_pow_steps(blocks: &[Block]) -> Vec<GlueStep> {
    blocks.iter().enumerate().map(|(s, &block)| GlueStep { block, alpha: RatFunc::q_pow(s as i32) }).collect()
}

fn steps(blocks: &[Block], alpha: &RatFunc) -> Vec<GlueStep> {
    blocks.iter().map(|&block| GlueStep { block, alpha: alpha.clone() }).collect()
}

/// Every block sequence of length `1..=max_len`.
pub fn all_block_sequences(max_len: usize) -> Vec<Vec<Block>> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for bits in 0..(1usize << len) {
            out.push((0..len).map(|t| if bits >> (len - 1 - t) & 1 == 0 { Block::Even } else { Block::Odd }).collect());
        }
    }
    out
}

fn cg_samples() -> Vec<(RatFunc, RatFunc)> {
    [(1, 1), (2, -1)].iter().map(|&(a, b)| (RatFunc::int(a), RatFunc::int(b))).chain([(RatFunc::q(), RatFunc::int(3))]).collect()
}

/// `(label, construction)` for the DJ family, the Cremmer-Gervais samples and
/// all glue chains of total dimension at most four.
fn constructed() -> Vec<(String, Result<HeckeSymmetry, CoreError>, Option<ChainData>)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push((format!("dj N={n}"), Ok(HeckeSymmetry::dj(n)), None));
    }
    for (a, b) in cg_samples() {
        out.push((format!("cg3 alpha={} beta={}", a.to_expr(), b.to_expr()), HeckeSymmetry::cremmer_gervais3(&a, &b), None));
    }
    for blocks in all_block_sequences(4) {
        let s = q_pow_steps(&blocks);
        let label = format!("glue {}", chain_label(&s));
        match chain_build(&s) {
            Ok(c) => out.push((label, Ok(c.top().clone()), Some(c))),
            Err(e) => out.push((label, Err(e), None)),
        }
    }
    out
}

fn criterion_1() -> Vec<CheckReport> {
    constructed()
        .into_iter()
        .map(|(label, s, _)| match s {
            Ok(s) => {
                let r = checks::validate(&label, s.r(), 2, 1);
                let kind = r.details.get("classification").cloned();
                r.require(kind == Some(json!("hecke")), || json!({"classification": kind}))
            }
            Err(e) => CheckReport::new("validate", label).fail(e.to_string()),
        })
        .collect()
}

fn criterion_2() -> Vec<CheckReport> {
    constructed().into_iter().map(|(label, s, _)| checks::skew_inverse(&label, &s)).collect()
}

fn criterion_3() -> Vec<CheckReport> {
    let mut out = Vec::new();
    for (label, _, chain) in constructed() {
        let Some(c) = chain else { continue };
        let top = c.top();
        for m in 1..top.n() {
            let sc = top.sub_closure(m);
            out.push(
                CheckReport::new("sub_closure", format!("{label} m={m}"))
                    .require(sc.passed(), || json!({"entry": sc.witness, "block_is_symmetry": sc.block_is_symmetry})),
            );
        }
    }
    for (a, b) in cg_samples() {
        let label = format!("cg3 alpha={} beta={} m=2", a.to_expr(), b.to_expr());
        let rep = CheckReport::new("sub_closure.expected_failure", label);
        out.push(match HeckeSymmetry::cremmer_gervais3(&a, &b) {
            Err(e) => rep.fail(e.to_string()),
            Ok(cg) => {
                let sc = cg.sub_closure(2);
                let w = sc.witness.map(|[i, j, k, l]| format!("R_{i}{j}^{k}{l}"));
                rep.detail("witness_entry", w.clone()).require(w.as_deref() == Some("R_22^13"), || json!({"observed": w}))
            }
        });
    }
    out
}

fn chain_symmetry(blocks: &[Block], alpha: &RatFunc) -> (String, HeckeSymmetry) {
    let s = steps(blocks, alpha);
    let c = chain_build(&s).expect("standard glue chains build");
    (format!("glue {}", chain_label(&s)), c.top().clone())
}

fn criterion_4() -> Vec<CheckReport> {
    use Block::{Even, Odd};
    let mut out = Vec::new();
    let two = [
        ("dj N=2".to_string(), HeckeSymmetry::dj(2)),
        chain_symmetry(&[Even, Even], &RatFunc::q_pow(2)),
        chain_symmetry(&[Even, Odd], &RatFunc::one()),
    ];
    let three = [("dj N=3".to_string(), HeckeSymmetry::dj(3)), chain_symmetry(&[Even, Even, Even], &RatFunc::q())];
    for (syms, k_max, max_deg) in [(&two[..], 3, 4), (&three[..], 2, 3)] {
        for (label, s) in syms {
            for k in 1..=k_max {
                out.push(checks::centrality(label, s, &power_sum(s, k), &format!("p{k}"), max_deg));
            }
        }
    }
    out
}

fn criterion_5() -> Vec<CheckReport> {
    let (label, glued) = chain_symmetry(&[Block::Even, Block::Even], &RatFunc::q());
    vec![checks::cayley_hamilton("dj N=2", &HeckeSymmetry::dj(2), 2, 2), checks::cayley_hamilton(&label, &glued, 2, 2)]
}

fn criterion_6() -> Vec<CheckReport> {
    checks::newton(3, 4)
}

fn criterion_7() -> Vec<CheckReport> {
    (1..=3).flat_map(|big_n| (1..=3).flat_map(move |n| checks::rep_check(big_n, n))).collect()
}

fn criterion_8() -> Vec<CheckReport> {
    (1..=3).flat_map(|n| checks::characters(2, n, 2)).collect()
}

fn criterion_9() -> Vec<CheckReport> {
    let s = steps(&[Block::Even; 3], &RatFunc::q());
    let label = chain_label(&s);
    let chain = match chain_build(&s) {
        Ok(c) => c,
        Err(e) => return vec![CheckReport::new("gz.chain", label).fail(e.to_string())],
    };
    let mut out: Vec<CheckReport> = (1..=3).map(|n| checks::gz_family(&label, &chain, n, 2)).collect();
    for shape in [vec![1], vec![2], vec![1, 1], vec![2, 1]] {
        for labelling in [Labelling::Literal, Labelling::Module] {
            out.push(checks::gz_joint(&label, &chain, &shape, 2, labelling));
        }
    }
    out
}

fn criterion_10() -> Vec<CheckReport> {
    let mut out = vec![checks::orbit(&[RatFunc::one(), RatFunc::int(2)])];
    let rejected = checks::orbit(&[RatFunc::one(), RatFunc::q_pow(2)]);
    let reason = rejected.details.get("witness").and_then(|w| w.as_str()).unwrap_or_default().to_string();
    let ok = rejected.status == Status::Fail && reason.contains("q^2 mu");
    out.push(CheckReport::new("orbit.expected_rejection", rejected.inputs.clone()).detail("reason", reason).require(ok, || json!("point accepted")));
    let syms = [
        ("dj N=1".to_string(), HeckeSymmetry::dj(1)),
        ("dj N=2".to_string(), HeckeSymmetry::dj(2)),
        chain_symmetry(&[Block::Even, Block::Even], &RatFunc::q()),
        chain_symmetry(&[Block::Even, Block::Odd], &RatFunc::q()),
    ];
    for (label, s) in &syms {
        for k in 1..=2 {
            out.push(checks::cyclic(label, s, k));
        }
    }
    out
}

fn glued_pair(c: i32) -> HeckeSymmetry {
    chain_symmetry(&[Block::Even, Block::Even], &RatFunc::q_pow(c)).1
}

fn criterion_11() -> Vec<CheckReport> {
    let mut cases: Vec<(String, HeckeSymmetry)> = vec![("dj N=2".into(), HeckeSymmetry::dj(2))];
    for c in 0..=2 {
        cases.push((format!("glue (+q,+q;q^{c})"), glued_pair(c)));
    }
    cases.push(("dj N=3".into(), HeckeSymmetry::dj(3)));
    cases.push(chain_symmetry(&[Block::Even; 3], &RatFunc::q_pow(2)));
    let mut out = Vec::new();
    for (label, s) in &cases {
        out.extend(checks::poisson(label, ClassicalR::from_symmetry(s), 3));
    }
    let mut tables = Vec::new();
    for c in 0..=2 {
        tables.push((format!("alpha={c}"), ClassicalR::from_symmetry(&glued_pair(c))));
    }
    tables.push(("alpha symbolic".into(), ClassicalR::new(gl2_example_r(&RatFunc::var("alpha")))));
    let rendered: Vec<(String, Result<Vec<(String, String)>, String>)> = tables
        .into_iter()
        .map(|(label, r)| {
            let t = r
                .and_then(|r| gl2_table(&bracket_r(&r)))
                .map(|t| t.into_iter().map(|(k, v)| (k, v.to_expr())).collect())
                .map_err(|e| e.to_string());
            (label, t)
        })
        .collect();
    let first = rendered[0].1.clone();
    let differing = rendered.iter().find(|(_, t)| t.is_err() || *t != first).map(|(l, t)| json!({"alpha": l, "table": format!("{t:?}")}));
    let samples: Vec<&str> = rendered.iter().map(|(l, _)| l.as_str()).collect();
    out.push(
        CheckReport::new("poisson.alpha_independence", samples.join(","))
            .detail("samples", samples.len())
            .require(differing.is_none(), || differing.clone().unwrap_or_default()),
    );
    out
}

fn criterion_12() -> Vec<CheckReport> {
    let mut corrupted = gl2_example_r(&RatFunc::zero());
    corrupted.set(0, 1, RatFunc::one());
    let jac = CheckReport::new("negative.jacobi", "gl2 r with r[0][1] = 1");
    let jac = match ClassicalR::unchecked(corrupted) {
        Err(e) => jac.fail(e.to_string()),
        Ok(bad) => match jacobi_check(&bracket_r(&bad)).witness {
            Some(w) => jac.detail("triple", json!(w.triple)).detail("value", w.value.to_expr()),
            None => jac.fail(json!("Jacobi identity holds for the corrupted r")),
        },
    };
    let r = HeckeSymmetry::dj(2);
    let inner = checks::centrality("dj N=2", &r, &NCPoly::gen(2, 0, 1), "l12", 4);
    let refuted = inner.details.get("witness").cloned();
    let cent = CheckReport::new("negative.centrality", inner.inputs.clone())
        .detail("refutation", refuted.clone())
        .require(inner.status == Status::Fail && refuted.is_some(), || json!({"inner_status": format!("{:?}", inner.status)}));
    let upper = ExactMatrix::from_fn(4, |i, j| RatFunc::int((i <= j) as i64));
    let v = checks::validate("upper triangular ones 4x4", &upper, 0, 0);
    let kind = v.details.get("classification").cloned();
    let braid =
        CheckReport::new("negative.not_braiding", v.inputs.clone()).detail("classification", kind.clone()).require(kind == Some(json!("not_braiding")), || {
            json!({"classification": kind})
        });
    vec![jac, cent, braid]
}

pub fn run(id: u8) -> Criterion {
    let &(_, title, budget) = CRITERIA.iter().find(|c| c.0 == id).expect("criterion id in 1..=12");
    let t = Instant::now();
    let reports = match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        11 => criterion_11(),
        _ => criterion_12(),
    };
    Criterion { id, title, budget: Duration::from_secs(budget), elapsed: t.elapsed(), reports }
}

pub fn run_all() -> Vec<Criterion> {
    CRITERIA.iter().map(|c| run(c.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_sequences() {
        let all = all_block_sequences(4);
        assert_eq!(all.len(), 30);
        assert_eq!(all[0], vec![Block::Even]);
        assert_eq!(all.iter().filter(|s| s.len() == 3).count(), 8);
    }
}
