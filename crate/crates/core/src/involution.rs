//! Bar involution of the q-deformed Fock space.
//!
//! Write a wedge monomial as u = u_{k₁} ∧ u_{k₂} ∧ ⋯ with k_i = a_i + n(b_i−1) − nlm_i.
//! The pair statistic C_r(u) = Σ_{1 ≤ i < j ≤ r} δ(b_i = b_j) − δ(a_i = a_j)
//! controls the coefficient picked up when the first r factors are reversed:
//! for every r at least the degree of u,
//! bar(u) = (−1)^{r(r−1)/2} q^{C_r(u)} · u_{k_r} ∧ ⋯ ∧ u_{k₁} ∧ u_{k_{r+1}} ∧ ⋯
//! is independent of r once the reversed prefix is straightened back into the
//! ordered basis.  Extending semi-linearly (coefficients undergo q ↦ q⁻¹)
//! yields a degree-preserving involution of the Fock space that fixes every
//! vacuum vector and commutes with the lowering operators of both quantum
//! affine algebras and with the Heisenberg generators B_{−m}.
//!
//! Expanded over the signed basis φ(μ, s), the involution restricts to each
//! block of fixed degree and fixed l-tuple charge vector, where its matrix is
//! unitriangular for the dominance order and has entries in ℤ[q, q⁻¹].

use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    beta_sequence, decompose_index, partitions_with_component, Partition,
};
use crate::error::{Error, Result};
use crate::fock::{AlgebraSide, FockSpace, FockVector};
use crate::laurent::LaurentPoly;

/// C_r over the given prefix k₁, …, k_r of a monomial: pairs agreeing in
/// their b-class count +1, pairs agreeing in their a-class count −1.
pub fn c_r_statistic(prefix: &[i64], n: usize, l: usize) -> i64 {
    let classes: Vec<(i64, i64)> = prefix
        .iter()
        .map(|&k| {
            let (a, b, _) = decompose_index(k, n, l);
            (a, b)
        })
        .collect();
    let mut total = 0i64;
    for j in 1..classes.len() {
        for i in 0..j {
            if classes[i].1 == classes[j].1 {
                total += 1;
            }
            if classes[i].0 == classes[j].0 {
                total -= 1;
            }
        }
    }
    total
}

/// Bar image of the basis monomial |λ, s⟩ computed by reversing the first
/// `r` factors.  Every r ≥ |λ| produces the same vector; the parameter is
/// exposed so that this independence can be checked.
pub fn bar_monomial_at(
    space: &mut FockSpace,
    lambda: &Partition,
    s: i64,
    r: usize,
) -> Result<FockVector> {
    if (r as i64) < lambda.size() {
        return Err(Error::Domain(format!(
            "reversal length {} is below the monomial degree {}",
            r,
            lambda.size()
        )));
    }
    let mut out = FockVector::zero(s);
    if r == 0 {
        out.add_term(lambda.clone(), LaurentPoly::one());
        return Ok(out);
    }
    let prefix = beta_sequence(lambda, s, r);
    let c = c_r_statistic(&prefix, space.n(), space.l());
    // Sign of the order-reversing permutation of r letters.
    let sign: i64 = if (r * (r - 1) / 2) % 2 == 0 { 1 } else { -1 };
    let scale = LaurentPoly::monomial(c, sign);
    let reversed: Vec<i64> = prefix.iter().rev().copied().collect();
    let nf = space.normal_form(&reversed)?;
    for (indices, coeff) in nf.terms() {
        // Straightening keeps every index inside [k_r, k₁], so reattaching the
        // untouched tail keeps the full sequence strictly decreasing and each
        // output monomial is again of the form |μ, s⟩ with λ_i = k_i − s + i − 1.
        let parts: Vec<i64> = indices
            .iter()
            .enumerate()
            .map(|(i, &k)| k - s + i as i64)
            .collect();
        let mu = Partition::new(parts)
            .map_err(|e| Error::Internal(format!("bar produced an invalid index set: {e}")))?;
        out.add_term(mu, coeff * &scale);
    }
    Ok(out)
}

/// Bar image of |λ, s⟩ using the minimal reversal length r = |λ|.
pub fn bar_monomial(space: &mut FockSpace, lambda: &Partition, s: i64) -> Result<FockVector> {
    let r = lambda.size() as usize;
    bar_monomial_at(space, lambda, s, r)
}

/// Semi-linear extension of the monomial bar map: every coefficient is
/// conjugated q ↦ q⁻¹ and every basis monomial is barred.
pub fn bar_fock(space: &mut FockSpace, v: &FockVector) -> Result<FockVector> {
    let mut out = FockVector::zero(v.charge());
    for (lambda, coeff) in v.terms() {
        let image = bar_monomial(space, lambda, v.charge())?;
        out.add_scaled(&image, &coeff.bar());
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Block matrices
// ---------------------------------------------------------------------------

/// Matrix of the bar involution on one block: partitions of a fixed size
/// whose l-tuple labels share one charge vector.  Row i lists the expansion
/// of bar(φ(λ_i, s)) over the φ(λ_j, s) of the block, labels in descending
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarMatrix {
    n: usize,
    l: usize,
    charge: i64,
    component: Vec<i64>,
    degree: usize,
    labels: Vec<Partition>,
    entries: Vec<Vec<LaurentPoly>>,
}

impl BarMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    /// The l-tuple charge vector shared by the block.
    pub fn component(&self) -> &[i64] {
        &self.component
    }

    /// Common size of the indexing partitions.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Row and column labels, descending lexicographic.
    pub fn labels(&self) -> &[Partition] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Coefficient of φ(labels[j]) in bar(φ(labels[i])).
    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.entries
    }
}

/// Assembles the bar matrix of one block.  `component` is the l-tuple charge
/// vector selecting the block; its entries must sum to `s`.
pub fn bar_matrix_block(
    space: &mut FockSpace,
    s: i64,
    d: usize,
    component: &[i64],
) -> Result<BarMatrix> {
    if component.len() != space.l() {
        return Err(Error::Domain(format!(
            "charge vector has {} entries, expected {}",
            component.len(),
            space.l()
        )));
    }
    if component.iter().sum::<i64>() != s {
        return Err(Error::Domain(format!(
            "charge vector sums to {}, expected {}",
            component.iter().sum::<i64>(),
            s
        )));
    }
    let labels = partitions_with_component(d, s, space.n(), space.l(), component);
    let mut entries = Vec::with_capacity(labels.len());
    for lambda in &labels {
        let cmp = space.labels(AlgebraSide::RankN, lambda, s);
        let phi = space.phi(&cmp)?;
        let image = bar_fock(space, &phi)?;
        let mut row = vec![LaurentPoly::zero(); labels.len()];
        for (mu, coeff) in image.terms() {
            let mu_cmp = space.labels(AlgebraSide::RankN, mu, s);
            // The involution preserves the degree and the charge vector, so
            // every output monomial must index into the same block.
            if mu_cmp.charges() != component || mu.size() != lambda.size() {
                return Err(Error::Internal(format!(
                    "bar left its block: {} appeared in the image of {}",
                    mu, lambda
                )));
            }
            let j = labels
                .iter()
                .position(|x| x == mu)
                .ok_or_else(|| Error::Internal(format!("missing block label {}", mu)))?;
            let sign = space.basis_sign(AlgebraSide::RankN, &mu_cmp)?;
            row[j] = coeff.shift_scale(0, sign);
        }
        entries.push(row);
    }
    Ok(BarMatrix {
        n: space.n(),
        l: space.l(),
        charge: s,
        component: component.to_vec(),
        degree: d,
        labels,
        entries,
    })
}
