//! q-deformed wedge products and the straightening algorithm.
//!
//! A wedge monomial u_{k_1} ∧ … ∧ u_{k_r} is *ordered* when k_1 > … > k_r;
//! ordered monomials form a basis.  An adjacent pair u_{k_1} ∧ u_{k_2} with
//! k_1 ≤ k_2 is rewritten through one of four ordering rules, selected by the
//! residues α = (a_2 − a_1) mod nl and β = (n(b_2 − b_1)) mod nl of the two
//! indices.  Every rule produces ordered pairs confined to [k_1, k_2] whose
//! index sums equal k_1 + k_2, and iterating the rules over adjacent pairs
//! terminates: the weighted sum Σ i·k_i strictly increases towards the ordered
//! configuration at every step.

use std::collections::{BTreeMap, HashMap};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::decompose_index;
use crate::error::{Error, Result};
use crate::laurent::{exchange_coefficient, LaurentPoly, ExchangeParity};

/// Hard cap on pair rewrites in one engine, to turn runaway loops into errors.
const FUEL_LIMIT: u64 = 10_000_000;

// ---------------------------------------------------------------------------
// Wedge vectors
// ---------------------------------------------------------------------------

/// A finite linear combination of ordered wedge monomials with Laurent
/// polynomial coefficients.  Keys are the index sequences, strictly
/// decreasing; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WedgeVector {
    terms: BTreeMap<Vec<i64>, LaurentPoly>,
}

impl WedgeVector {
    pub fn zero() -> Self {
        WedgeVector::default()
    }

    /// A single ordered monomial with the given coefficient.
    pub fn monomial(indices: Vec<i64>, coeff: LaurentPoly) -> Self {
        let mut v = WedgeVector::zero();
        v.add_term(indices, coeff);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, indices: &[i64]) -> LaurentPoly {
        self.terms.get(indices).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    /// Adds `coeff · u_indices`, merging with an existing term and dropping
    /// the entry if the sum cancels.  The indices must be strictly decreasing.
    pub fn add_term(&mut self, indices: Vec<i64>, coeff: LaurentPoly) {
        debug_assert!(indices.windows(2).all(|w| w[0] > w[1]), "unordered monomial {:?}", indices);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(indices);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &WedgeVector) {
        for (indices, coeff) in other.terms() {
            self.add_term(indices.clone(), coeff.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &WedgeVector) {
        for (indices, coeff) in other.terms() {
            self.add_term(indices.clone(), -coeff);
        }
    }

    pub fn scaled(&self, c: &LaurentPoly) -> WedgeVector {
        let mut out = WedgeVector::zero();
        for (indices, coeff) in self.terms() {
            out.add_term(indices.clone(), coeff * c);
        }
        out
    }

    /// Applies a function to every coefficient (used for coefficient-wise
    /// involutions); zero images are dropped.
    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> WedgeVector {
        let mut out = WedgeVector::zero();
        for (indices, coeff) in self.terms() {
            out.add_term(indices.clone(), f(coeff));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct WedgeTermRepr {
    indices: Vec<i64>,
    coeff: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct WedgeVectorRepr {
    terms: Vec<WedgeTermRepr>,
}

impl Serialize for WedgeVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = WedgeVectorRepr {
            terms: self
                .terms()
                .map(|(indices, coeff)| WedgeTermRepr { indices: indices.clone(), coeff: coeff.clone() })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WedgeVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = WedgeVectorRepr::deserialize(deserializer)?;
        let mut out = WedgeVector::zero();
        for term in repr.terms {
            if !term.indices.windows(2).all(|w| w[0] > w[1]) {
                return Err(D::Error::custom(format!(
                    "wedge term indices must be strictly decreasing, got {:?}",
                    term.indices
                )));
            }
            out.add_term(term.indices, term.coeff);
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Straightening engine
// ---------------------------------------------------------------------------

/// Rewrites arbitrary wedge monomials into the ordered basis for one fixed
/// (n, l).  Results of partial rewrites are memoised, which matters a lot
/// when normalising the many closely related monomials produced by operator
/// actions on semi-infinite wedges.
pub struct StraightenEngine {
    n: usize,
    l: usize,
    memo: HashMap<(i64, Vec<i64>), BTreeMap<Vec<i64>, LaurentPoly>>,
    fuel_used: u64,
}

impl StraightenEngine {
    pub fn new(n: usize, l: usize) -> Self {
        assert!(n >= 1 && l >= 1, "ranks must be positive");
        StraightenEngine { n, l, memo: HashMap::new(), fuel_used: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Number of pair rewrites performed so far.
    pub fn fuel_used(&self) -> u64 {
        self.fuel_used
    }

    fn spend_fuel(&mut self) -> Result<()> {
        self.fuel_used += 1;
        if self.fuel_used > FUEL_LIMIT {
            return Err(Error::Internal(format!(
                "straightening exceeded {} pair rewrites; input out of supported range",
                FUEL_LIMIT
            )));
        }
        Ok(())
    }

    /// Expresses u_{k_1} ∧ u_{k_2} in the ordered basis.  For k_1 > k_2 the
    /// monomial is already ordered; for k_1 = k_2 it vanishes.
    pub fn straighten_pair(&mut self, k1: i64, k2: i64) -> Result<WedgeVector> {
        let mut out = WedgeVector::zero();
        if k1 > k2 {
            out.add_term(vec![k1, k2], LaurentPoly::one());
            return Ok(out);
        }
        self.spend_fuel()?;
        for (pair, coeff) in rewrite_pair(k1, k2, self.n, self.l) {
            out.add_term(pair.to_vec(), coeff);
        }
        Ok(out)
    }

    /// Expresses an arbitrary monomial u_{k_1} ∧ … ∧ u_{k_r} in the ordered
    /// basis.
    pub fn normal_form(&mut self, indices: &[i64]) -> Result<WedgeVector> {
        // Fold right to left: each step prepends one factor to an already
        // ordered tail.
        let mut acc: Vec<(Vec<i64>, LaurentPoly)> = vec![(Vec::new(), LaurentPoly::one())];
        for &k in indices.iter().rev() {
            let mut next: BTreeMap<Vec<i64>, LaurentPoly> = BTreeMap::new();
            for (mono, coeff) in &acc {
                for (res_mono, res_coeff) in self.prepend(k, mono)? {
                    let total = &res_coeff * coeff;
                    merge_term(&mut next, res_mono, total);
                }
            }
            acc = next.into_iter().collect();
        }
        let mut out = WedgeVector::zero();
        for (mono, coeff) in acc {
            out.add_term(mono, coeff);
        }
        Ok(out)
    }

    /// Normalises u_k ∧ (ordered monomial).
    fn prepend(&mut self, k: i64, mono: &[i64]) -> Result<BTreeMap<Vec<i64>, LaurentPoly>> {
        if mono.is_empty() {
            let mut out = BTreeMap::new();
            out.insert(vec![k], LaurentPoly::one());
            return Ok(out);
        }
        let head = mono[0];
        if k > head {
            let mut out = BTreeMap::new();
            let mut indices = Vec::with_capacity(mono.len() + 1);
            indices.push(k);
            indices.extend_from_slice(mono);
            out.insert(indices, LaurentPoly::one());
            return Ok(out);
        }
        let key = (k, mono.to_vec());
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        self.spend_fuel()?;
        let rest = &mono[1..];
        let mut out: BTreeMap<Vec<i64>, LaurentPoly> = BTreeMap::new();
        // u_k ∧ u_head = Σ c · u_x ∧ u_y with x > y, both within [k, head];
        // then u_y must be pushed into the tail and u_x back on the front.
        for (pair, coeff) in rewrite_pair(k, head, self.n, self.l) {
            let (x, y) = (pair[0], pair[1]);
            for (tail_mono, tail_coeff) in self.prepend(y, rest)? {
                for (full_mono, full_coeff) in self.prepend(x, &tail_mono)? {
                    let total = &(&coeff * &tail_coeff) * &full_coeff;
                    merge_term(&mut out, full_mono, total);
                }
            }
        }
        self.memo.insert(key, out.clone());
        Ok(out)
    }
}

fn merge_term(map: &mut BTreeMap<Vec<i64>, LaurentPoly>, mono: Vec<i64>, coeff: LaurentPoly) {
    if coeff.is_zero() {
        return;
    }
    match map.entry(mono) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = &*o.get() + &coeff;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

/// Core ordering rules for one adjacent pair with k_1 ≤ k_2.  Returns ordered
/// pairs [hi, lo] with coefficients; the equal-index pair yields nothing.
fn rewrite_pair(k1: i64, k2: i64, n: usize, l: usize) -> Vec<([i64; 2], LaurentPoly)> {
    debug_assert!(k1 <= k2);
    let mut out: Vec<([i64; 2], LaurentPoly)> = Vec::new();
    if k1 == k2 {
        return out;
    }
    let period = (n * l) as i64;
    let (a1, b1, _) = decompose_index(k1, n, l);
    let (a2, b2, _) = decompose_index(k2, n, l);
    let alpha = (a2 - a1).rem_euclid(period);
    let beta = (n as i64 * (b2 - b1)).rem_euclid(period);
    // Sum terms are kept only while still strictly ordered (hi > lo); each
    // series moves the indices towards each other, so stop at first failure.
    let push_series = |out: &mut Vec<([i64; 2], LaurentPoly)>, shift: i64, m0: i64, coeff_of_m: &dyn Fn(i64) -> LaurentPoly| {
        let mut m = m0;
        loop {
            let hi = k2 - shift - period * m;
            let lo = k1 + shift + period * m;
            if hi <= lo {
                break;
            }
            out.push(([hi, lo], coeff_of_m(m)));
            m += 1;
        }
    };
    match (alpha > 0, beta > 0) {
        (false, false) => {
            out.push(([k2, k1], -&LaurentPoly::one()));
        }
        (true, false) => {
            out.push(([k2, k1], -&LaurentPoly::q_pow(-1)));
            let factor = &LaurentPoly::q_pow(-2) - &LaurentPoly::one();
            push_series(&mut out, alpha, 0, &|m| factor.shift_scale(-2 * m, 1));
            push_series(&mut out, 0, 1, &|m| -&factor.shift_scale(-2 * m + 1, 1));
        }
        (false, true) => {
            out.push(([k2, k1], -&LaurentPoly::q()));
            let factor = &LaurentPoly::q_pow(2) - &LaurentPoly::one();
            push_series(&mut out, beta, 0, &|m| factor.shift_scale(2 * m, 1));
            push_series(&mut out, 0, 1, &|m| -&factor.shift_scale(2 * m - 1, 1));
        }
        (true, true) => {
            out.push(([k2, k1], -&LaurentPoly::one()));
            let qdiff = &LaurentPoly::q() - &LaurentPoly::q_pow(-1);
            let odd = |m: i64| &qdiff * &exchange_coefficient(ExchangeParity::Odd, m as u32);
            let even = |m: i64| &qdiff * &exchange_coefficient(ExchangeParity::Even, m as u32);
            push_series(&mut out, beta, 0, &odd);
            push_series(&mut out, alpha, 0, &|m| -&odd(m));
            push_series(&mut out, alpha + beta - period, 1, &even);
            push_series(&mut out, 0, 1, &|m| -&even(m));
        }
    }
    // Merge duplicate pairs (different series can hit the same pair).
    let mut merged: BTreeMap<[i64; 2], LaurentPoly> = BTreeMap::new();
    for (pair, coeff) in out {
        match merged.entry(pair) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }
    merged.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
