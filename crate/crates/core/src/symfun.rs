//! q-deformed determinant relations between power sums and the elementary
//! and complete symmetric functions, over commuting values.
//!
//! All slices are 1-based in meaning: `v[0]` holds the degree-one value.

use regz_exact::{q_factorial, q_number, ExactMatrix, RatFunc};

/// Cofactor expansion along the first row; division-free for small sizes.
fn det(m: &ExactMatrix) -> RatFunc {
    fn go(m: &ExactMatrix, rows: &[usize], cols: &[usize]) -> RatFunc {
        if rows.is_empty() {
            return RatFunc::one();
        }
        let mut acc = RatFunc::zero();
        for (k, &c) in cols.iter().enumerate() {
            let a = m.get(rows[0], c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let t = a.mul(&go(m, &rows[1..], &rest));
            acc = if k % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }
    let idx: Vec<usize> = (0..m.dim()).collect();
    go(m, &idx, &idx)
}

fn at(v: &[RatFunc], k: usize) -> RatFunc {
    if k == 0 {
        RatFunc::one()
    } else {
        v[k - 1].clone()
    }
}

/// `p_k` from `e_1..e_k`.
pub fn p_from_e(k: usize, e: &[RatFunc]) -> RatFunc {
    det(&ExactMatrix::from_fn(k, |r, c| {
        let (r, c) = (r + 1, c + 1);
        if c == 1 {
            q_number(r as i64).mul(&at(e, r))
        } else if c == r + 1 {
            RatFunc::one()
        } else if c <= r {
            RatFunc::q_pow((r - c + 1) as i32).mul(&at(e, r - c + 1))
        } else {
            RatFunc::zero()
        }
    }))
}

/// `p_k` from `h_1..h_k`.
pub fn p_from_h(k: usize, h: &[RatFunc]) -> RatFunc {
    let d = det(&ExactMatrix::from_fn(k, |r, c| {
        let (r, c) = (r + 1, c + 1);
        if c == 1 {
            q_number(r as i64).mul(&at(h, r))
        } else if c == r + 1 {
            RatFunc::one()
        } else if c <= r {
            RatFunc::q_pow(-((r - c + 1) as i32)).mul(&at(h, r - c + 1))
        } else {
            RatFunc::zero()
        }
    }));
    if k.is_multiple_of(2) {
        d.neg()
    } else {
        d
    }
}

fn from_p(k: usize, p: &[RatFunc], sign: i32) -> RatFunc {
    let d = det(&ExactMatrix::from_fn(k, |r, c| {
        let (r, c) = (r + 1, c + 1);
        if c == 1 {
            at(p, r)
        } else if c == r + 1 {
            q_number(r as i64).scale_int(sign as i64)
        } else if c <= r {
            RatFunc::q_pow(sign * (c as i32 - 1)).mul(&at(p, r - c + 1))
        } else {
            RatFunc::zero()
        }
    }));
    d.div(&q_factorial(k as u32)).expect("q-factorial is nonzero")
}

/// `e_k` from `p_1..p_k`.
pub fn e_from_p(k: usize, p: &[RatFunc]) -> RatFunc {
    if k == 0 {
        return RatFunc::one();
    }
    from_p(k, p, 1)
}

/// `h_k` from `p_1..p_k`.
pub fn h_from_p(k: usize, p: &[RatFunc]) -> RatFunc {
    if k == 0 {
        return RatFunc::one();
    }
    from_p(k, p, -1)
}

/// `Σ_r (-1)^r h_r e_{k-r}`.
pub fn wronski(k: usize, e: &[RatFunc], h: &[RatFunc]) -> RatFunc {
    let mut acc = RatFunc::zero();
    for r in 0..=k {
        let t = at(h, r).mul(&at(e, k - r));
        acc = if r % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

/// Free symbols `p1..pk`.
pub fn p_vars(k: usize) -> Vec<RatFunc> {
    (1..=k).map(|i| RatFunc::var(&format!("p{i}"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use regz_exact::parse_scalar;

    #[test]
    fn low_degree_forms() {
        let p = p_vars(3);
        assert_eq!(e_from_p(1, &p), p[0]);
        assert_eq!(h_from_p(1, &p), p[0]);
        assert_eq!(e_from_p(2, &p), parse_scalar("(q*p1^2 - p2)/(q + 1/q)").unwrap());
        assert_eq!(h_from_p(2, &p), parse_scalar("(p1^2/q + p2)/(q + 1/q)").unwrap());
    }

    #[test]
    fn determinant_round_trips_and_wronski() {
        let p = p_vars(4);
        let e: Vec<RatFunc> = (1..=4).map(|k| e_from_p(k, &p)).collect();
        let h: Vec<RatFunc> = (1..=4).map(|k| h_from_p(k, &p)).collect();
        for k in 1..=4 {
            assert_eq!(p_from_e(k, &e), p[k - 1], "e route k={k}");
            assert_eq!(p_from_h(k, &h), p[k - 1], "h route k={k}");
            assert!(wronski(k, &e, &h).is_zero(), "wronski k={k}");
        }
    }
}
