//! Two-sided ideals generated by quadratic(-linear) relations and a
//! certifying span-membership search.

use std::collections::{BTreeMap, HashMap};

use regz_exact::modp::SparseEchelon;
use regz_exact::{ModPoint, RatFunc};

use super::ncpoly::{NCPoly, Word};

/// Relations of degree at most two in the generators.
#[derive(Clone, Debug)]
pub struct QuadIdeal {
    n: usize,
    relations: Vec<NCPoly>,
    homogeneous: bool,
}

impl QuadIdeal {
    pub fn new(n: usize, relations: Vec<NCPoly>) -> QuadIdeal {
        let homogeneous = relations.iter().all(|r| r.is_zero() || (r.is_homogeneous() && r.degree() == Some(2)));
        QuadIdeal { n, relations, homogeneous }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn relations(&self) -> &[NCPoly] {
        &self.relations
    }

    pub fn homogeneous(&self) -> bool {
        self.homogeneous
    }

    /// Indices of a linearly independent subset spanning the same space.
    pub fn independent(&self) -> Vec<usize> {
        let mut index = WordIndex::default();
        let vecs: Vec<Option<SymVec>> = self.relations.iter().map(|r| (!r.is_zero()).then(|| vectorize(r, &mut index))).collect();
        let live: Vec<usize> = (0..vecs.len()).filter(|&i| vecs[i].is_some()).collect();
        let screened = screen_independent(&live.iter().map(|&i| vecs[i].clone().unwrap()).collect::<Vec<_>>());
        let mut kept: Vec<usize> = screened.iter().map(|&k| live[k]).collect();
        let mut elim = Eliminator::default();
        for &i in &kept {
            elim.insert(i, vecs[i].clone().unwrap());
        }
        for &i in &live {
            if kept.contains(&i) {
                continue;
            }
            if elim.insert(i, vecs[i].clone().unwrap()) {
                kept.push(i);
            }
        }
        kept.sort_unstable();
        kept
    }

    /// Dimension of the span of the relations.
    pub fn span_rank(&self) -> usize {
        self.independent().len()
    }
}

/// True when the two families span the same subspace of the free algebra.
pub fn same_span(a: &[NCPoly], b: &[NCPoly]) -> bool {
    let n = a.first().or(b.first()).map_or(1, NCPoly::n);
    let ra = QuadIdeal::new(n, a.to_vec()).span_rank();
    let rb = QuadIdeal::new(n, b.to_vec()).span_rank();
    let both: Vec<NCPoly> = a.iter().chain(b).cloned().collect();
    ra == rb && QuadIdeal::new(n, both).span_rank() == ra
}

/// One summand `coeff * left * relation * right` of a certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct CertTerm {
    pub left: Word,
    pub relation: usize,
    pub right: Word,
    pub coeff: RatFunc,
}

/// Result of a membership search.
#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    /// Verified explicit combination.
    Certified(Vec<CertTerm>),
    /// Not in the searched span. `outside` is set when the span is the whole
    /// ideal component, so non-membership is a proof.
    NotFound { max_deg: usize, outside: bool },
}

impl Membership {
    pub fn is_certified(&self) -> bool {
        matches!(self, Membership::Certified(_))
    }
}

/// Rebuild the element certified by `terms`.
pub fn certificate_value(ideal: &QuadIdeal, terms: &[CertTerm]) -> NCPoly {
    let mut acc = NCPoly::zero(ideal.n);
    for t in terms {
        acc = acc.add(&ideal.relations[t.relation].sandwich(&t.left, &t.right).scale(&t.coeff));
    }
    acc
}

/// Search the span of `m1 * r * m2` with total degree at most `max_deg` for `x`.
pub fn ideal_membership(x: &NCPoly, ideal: &QuadIdeal, max_deg: usize) -> Membership {
    ideal_membership_with(x, ideal, &ideal.independent(), max_deg)
}

/// As [`ideal_membership`], reusing a precomputed independent relation subset.
pub fn ideal_membership_with(x: &NCPoly, ideal: &QuadIdeal, kept: &[usize], max_deg: usize) -> Membership {
    if x.is_zero() {
        return Membership::Certified(Vec::new());
    }
    let not_found = Membership::NotFound { max_deg, outside: ideal.homogeneous && x.degree().unwrap_or(0) <= max_deg };
    let letters = ideal.n * ideal.n;
    let xdeg = x.degree().unwrap_or(0);
    if xdeg > max_deg {
        return Membership::NotFound { max_deg, outside: false };
    }

    // Candidate spanning set. For homogeneous relations only the degrees
    // present in x matter.
    let mut cands: Vec<(Word, usize, Word)> = Vec::new();
    let pad_lengths: Vec<usize> = if ideal.homogeneous {
        let mut ds: Vec<usize> = x.terms().keys().map(Word::len).filter(|&d| d >= 2).map(|d| d - 2).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    } else {
        (0..=max_deg.saturating_sub(2)).collect()
    };
    if let Some(&maxpad) = pad_lengths.iter().max() {
        let words = Word::all_up_to(letters, maxpad);
        for &pad in &pad_lengths {
            for left in words.iter().filter(|w| w.len() <= pad) {
                for right in words.iter().filter(|w| w.len() == pad - left.len()) {
                    for &r in kept {
                        cands.push((left.clone(), r, right.clone()));
                    }
                }
            }
        }
    }

    let mut index = WordIndex::default();
    let target = vectorize(x, &mut index);
    let vecs: Vec<SymVec> = cands.iter().map(|(l, r, rt)| vectorize(&ideal.relations[*r].sandwich(l, rt), &mut index)).collect();

    // Keep only candidates connected to the support of x.
    let mut uf = UnionFind::new(index.len());
    for v in &vecs {
        let mut it = v.keys();
        if let Some(&first) = it.next() {
            for &c in it {
                uf.union(first, c);
            }
        }
    }
    let roots: Vec<usize> = target.keys().map(|&c| uf.find(c)).collect();
    let relevant: Vec<usize> = (0..vecs.len())
        .filter(|&i| vecs[i].keys().next().is_some_and(|&c| roots.contains(&uf.find(c))))
        .collect();
    if target.keys().any(|&c| !relevant.iter().any(|&i| vecs[i].contains_key(&c))) {
        return not_found;
    }

    let rel_vecs: Vec<SymVec> = relevant.iter().map(|&i| vecs[i].clone()).collect();
    let screened = screen_independent(&rel_vecs);
    let verify = |comb: &BTreeMap<usize, RatFunc>| -> Option<Vec<CertTerm>> {
        let terms: Vec<CertTerm> = comb
            .iter()
            .map(|(&k, c)| {
                let (l, r, rt) = &cands[relevant[k]];
                CertTerm { left: l.clone(), relation: *r, right: rt.clone(), coeff: c.clone() }
            })
            .collect();
        (certificate_value(ideal, &terms) == *x).then_some(terms)
    };

    let mut elim = Eliminator::default();
    for &k in &screened {
        elim.insert(k, rel_vecs[k].clone());
    }
    if let Some(comb) = elim.express(&target) {
        if let Some(terms) = verify(&comb) {
            return Membership::Certified(terms);
        }
    }
    // Full symbolic pass over the remaining vectors before giving up.
    for (k, v) in rel_vecs.iter().enumerate() {
        if !screened.contains(&k) {
            elim.insert(k, v.clone());
        }
    }
    match elim.express(&target).and_then(|c| verify(&c)) {
        Some(terms) => Membership::Certified(terms),
        None => not_found,
    }
}

type SymVec = BTreeMap<usize, RatFunc>;

#[derive(Default)]
struct WordIndex {
    map: HashMap<Word, usize>,
}

impl WordIndex {
    fn get(&mut self, w: &Word) -> usize {
        let next = self.map.len();
        *self.map.entry(w.clone()).or_insert(next)
    }

    fn len(&self) -> usize {
        self.map.len()
    }
}

fn vectorize(p: &NCPoly, index: &mut WordIndex) -> SymVec {
    p.terms().iter().map(|(w, c)| (index.get(w), c.clone())).collect()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Indices of vectors independent at a random prime-field point. Vectors
/// independent there are independent over the fraction field.
fn screen_independent(vecs: &[SymVec]) -> Vec<usize> {
    for seed in 1..8u64 {
        let pt = ModPoint::new(0x5eed_0000 + seed);
        let mut ech = SparseEchelon::new(pt.prime());
        let mut picked = Vec::new();
        let mut ok = true;
        for (k, v) in vecs.iter().enumerate() {
            let mut row = Vec::with_capacity(v.len());
            for (&c, val) in v {
                match val.eval_mod(&pt) {
                    Some(x) => row.push((c, x)),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                break;
            }
            if ech.insert(&row) {
                picked.push(k);
            }
        }
        if ok {
            return picked;
        }
    }
    Vec::new()
}

struct ElimRow {
    pivot: usize,
    vec: SymVec,
    comb: SymVec,
}

/// Incremental elimination over the fraction field tracking how each row
/// was formed from the inserted vectors.
#[derive(Default)]
pub(crate) struct Eliminator {
    rows: Vec<ElimRow>,
}

fn axpy(y: &mut SymVec, a: &RatFunc, x: &SymVec) {
    for (&k, v) in x {
        let d = a.mul(v);
        match y.get_mut(&k) {
            Some(e) => {
                *e = e.sub(&d);
                if e.is_zero() {
                    y.remove(&k);
                }
            }
            None => {
                y.insert(k, d.neg());
            }
        }
    }
}

impl Eliminator {
    fn reduce(&self, mut v: SymVec, mut comb: SymVec) -> (SymVec, SymVec) {
        for row in &self.rows {
            if let Some(c) = v.get(&row.pivot).cloned() {
                axpy(&mut v, &c, &row.vec);
                axpy(&mut comb, &c, &row.comb);
            }
        }
        (v, comb)
    }

    /// Insert vector `id`; returns false when it is already in the span.
    pub(crate) fn insert(&mut self, id: usize, v: SymVec) -> bool {
        let (v, comb) = self.reduce(v, BTreeMap::from([(id, RatFunc::one())]));
        if v.is_empty() {
            return false;
        }
        let pivot = *v
            .iter()
            .min_by_key(|(&k, c)| (!c.is_monomial(), c.complexity(), k))
            .map(|(k, _)| k)
            .unwrap();
        let inv = v[&pivot].inv().expect("nonzero pivot");
        let scale = |m: SymVec| m.into_iter().map(|(k, c)| (k, c.mul(&inv))).collect::<SymVec>();
        self.rows.push(ElimRow { pivot, vec: scale(v), comb: scale(comb) });
        true
    }

    /// Coefficients `c` with `v = Σ c_id · vector_id`, if `v` is in the span.
    pub(crate) fn express(&self, v: &SymVec) -> Option<SymVec> {
        let (rest, comb) = self.reduce(v.clone(), BTreeMap::new());
        rest.is_empty().then(|| comb.into_iter().map(|(k, c)| (k, c.neg())).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(n: usize, i: usize, j: usize) -> NCPoly {
        NCPoly::gen(n, i, j)
    }

    #[test]
    fn commutative_ideal_certifies_words() {
        // Relations making l11 and l12 commute.
        let n = 2;
        let r = l(n, 0, 0).commutator(&l(n, 0, 1));
        let ideal = QuadIdeal::new(n, vec![r.clone(), NCPoly::zero(n), r.scale(&RatFunc::q())]);
        assert_eq!(ideal.independent(), vec![0]);
        assert!(ideal.homogeneous());
        let x = l(n, 1, 1).mul(&r).sub(&r.mul(&l(n, 1, 0)).scale(&RatFunc::var("a")));
        match ideal_membership(&x, &ideal, 3) {
            Membership::Certified(terms) => assert_eq!(certificate_value(&ideal, &terms), x),
            m => panic!("{m:?}"),
        }
        let y = l(n, 0, 0).commutator(&l(n, 1, 1));
        assert_eq!(ideal_membership(&y, &ideal, 2), Membership::NotFound { max_deg: 2, outside: true });
    }

    #[test]
    fn spans_compare() {
        let n = 2;
        let a = l(n, 0, 0).mul(&l(n, 0, 1));
        let b = l(n, 0, 1).mul(&l(n, 0, 0));
        assert!(same_span(&[a.clone(), b.clone()], &[a.add(&b), a.sub(&b)]));
        assert!(!same_span(std::slice::from_ref(&a), &[b]));
    }
}
