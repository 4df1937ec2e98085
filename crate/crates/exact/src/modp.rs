//! Arithmetic modulo the Mersenne prime 2^61 - 1 and sparse echelon forms.
//!
//! Used only to screen candidates; every claim is then proved symbolically.

use std::collections::BTreeMap;

use crate::poly::Sym;

/// The screening prime 2^61 - 1.
pub const PRIME: u64 = (1 << 61) - 1;

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue (Fermat).
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn neg_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// A point at which every variable has a residue. Values not set explicitly are
/// derived from the seed and the variable name, so any variable can be looked up.
#[derive(Clone, Debug)]
pub struct ModPoint {
    p: u64,
    seed: u64,
    fixed: BTreeMap<Sym, u64>,
}

impl ModPoint {
    pub fn new(seed: u64) -> ModPoint {
        ModPoint { p: PRIME, seed, fixed: BTreeMap::new() }
    }

    pub fn with(mut self, s: Sym, v: u64) -> ModPoint {
        self.fixed.insert(s, v % self.p);
        self
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn value(&self, s: &Sym) -> u64 {
        if let Some(v) = self.fixed.get(s) {
            return *v;
        }
        let mut h = self.seed;
        for b in s.name().bytes() {
            h = mix(h ^ b as u64);
        }
        2 + mix(h) % (self.p - 3)
    }
}

/// Incremental row echelon form over F_p for sparse rows `(column, value)`.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    p: u64,
    rows: Vec<BTreeMap<usize, u64>>,
    pivot_of: BTreeMap<usize, usize>,
}

impl SparseEchelon {
    pub fn new(p: u64) -> SparseEchelon {
        SparseEchelon { p, rows: Vec::new(), pivot_of: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce a row against the current basis.
    pub fn reduce(&self, row: &[(usize, u64)]) -> BTreeMap<usize, u64> {
        let p = self.p;
        let mut r: BTreeMap<usize, u64> = BTreeMap::new();
        for &(c, v) in row {
            let v = v % p;
            if v != 0 {
                let e = r.entry(c).or_insert(0);
                *e = add_mod(*e, v, p);
                if *e == 0 {
                    r.remove(&c);
                }
            }
        }
        let mut cursor = 0usize;
        loop {
            let next = r.range(cursor..).find(|(c, _)| self.pivot_of.contains_key(c)).map(|(c, v)| (*c, *v));
            let Some((c, v)) = next else { break };
            let basis = &self.rows[self.pivot_of[&c]];
            for (&bc, &bv) in basis {
                let e = r.entry(bc).or_insert(0);
                *e = sub_mod(*e, mul_mod(v, bv, p), p);
                if *e == 0 {
                    r.remove(&bc);
                }
            }
            cursor = c + 1;
        }
        r
    }

    /// Insert a row; returns true if it was independent of the previous ones.
    pub fn insert(&mut self, row: &[(usize, u64)]) -> bool {
        let r = self.reduce(row);
        let Some((&c, &v)) = r.iter().next() else { return false };
        let inv = inv_mod(v, self.p);
        let mut r: BTreeMap<usize, u64> = r.into_iter().map(|(k, x)| (k, mul_mod(x, inv, self.p))).collect();
        // keep the basis fully reduced on pivot columns
        for b in self.rows.iter_mut() {
            if let Some(&bv) = b.get(&c) {
                for (&rc, &rv) in &r {
                    let e = b.entry(rc).or_insert(0);
                    *e = sub_mod(*e, mul_mod(bv, rv, self.p), self.p);
                    if *e == 0 {
                        b.remove(&rc);
                    }
                }
            }
        }
        r.retain(|_, x| *x != 0);
        self.pivot_of.insert(c, self.rows.len());
        self.rows.push(r);
        true
    }
}

/// Rank of a dense matrix over F_p.
pub fn rank_dense(rows: &[Vec<u64>], p: u64) -> usize {
    let mut e = SparseEchelon::new(p);
    for r in rows {
        let sparse: Vec<(usize, u64)> = r.iter().enumerate().filter(|(_, v)| **v != 0).map(|(i, v)| (i, *v)).collect();
        e.insert(&sparse);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_basics() {
        let p = PRIME;
        let a = 123_456_789_012_345u64;
        assert_eq!(mul_mod(a, inv_mod(a, p), p), 1);
        assert_eq!(add_mod(p - 1, 2, p), 1);
        assert_eq!(sub_mod(1, 2, p), p - 1);
        assert_eq!(pow_mod(2, 61, p), 1);
    }

    #[test]
    fn echelon_detects_dependence() {
        let mut e = SparseEchelon::new(PRIME);
        assert!(e.insert(&[(0, 1), (2, 3)]));
        assert!(e.insert(&[(1, 5)]));
        assert!(!e.insert(&[(0, 2), (2, 6), (1, 10)]));
        assert!(e.reduce(&[(0, 1), (1, 1), (2, 3)]).is_empty());
        assert_eq!(rank_dense(&[vec![1, 2], vec![2, 4]], PRIME), 1);
    }

    #[test]
    fn points_are_deterministic() {
        let a = ModPoint::new(7);
        let b = ModPoint::new(7);
        assert_eq!(a.value(&Sym::new("alpha")), b.value(&Sym::new("alpha")));
        assert_ne!(a.value(&Sym::q()), ModPoint::new(8).value(&Sym::q()));
        assert_eq!(a.with(Sym::q(), 5).value(&Sym::q()), 5);
    }
}
