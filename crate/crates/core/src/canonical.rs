//! Canonical bases G⁺ and G⁻ and their transition matrices.
//!
//! Each basis is characterized by two conditions: every G^±(λ, s) is fixed by
//! the bar involution, and G^±(λ, s) ≡ φ(λ, s) modulo q^{±1} ℤ[q^{±1}]-spans
//! of the φ basis.  Writing G^±(λ, s) = Σ_μ D_{λμ} φ(μ, s), bar-invariance
//! turns into the matrix equation D = D̄ · A against the bar matrix A of the
//! block, and the congruence condition picks one solution of the resulting
//! bar-antisymmetric defect equations: D_{λλ} = 1 and, processing μ downward
//! from λ along any linear extension of dominance,
//! D_{λμ} − bar(D_{λμ}) = Σ_{μ < ν ≤ λ} bar(D_{λν}) A_{νμ},
//! which gauss_split resolves into strictly positive (G⁺) or strictly
//! negative (G⁻) exponents.
//!
//! Matrices are stored with one column per G vector and one row per φ label,
//! the orientation in which blocks are usually printed: the column of λ lists
//! the φ-expansion of G^±(λ, s), and both the partition and its l-tuple label
//! are kept for every index.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    component_blocks, is_cylindrical, multipartitions_of, ChargedMultipartition, Partition,
};
use crate::error::{Error, Result};
use crate::fock::{AlgebraSide, FockSpace, FockVector};
use crate::involution::{bar_matrix_block, BarMatrix};
use crate::laurent::{gauss_split, LaurentPoly, SplitSign};

/// Transition matrix of one block of a canonical basis.  Entry (i, j) is the
/// coefficient of φ(labels[i], s) in G^±(labels[j], s); labels run in
/// descending lexicographic order, so the matrix is lower triangular.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionMatrix {
    n: usize,
    l: usize,
    charge: i64,
    component: Vec<i64>,
    degree: usize,
    sign: SplitSign,
    labels: Vec<Partition>,
    mp_labels: Vec<ChargedMultipartition>,
    entries: Vec<Vec<LaurentPoly>>,
}

impl TransitionMatrix {
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

    pub fn sign(&self) -> SplitSign {
        self.sign
    }

    /// Partition labels, descending lexicographic.
    pub fn labels(&self) -> &[Partition] {
        &self.labels
    }

    /// The l-tuple labels matching [`TransitionMatrix::labels`] index by index.
    pub fn mp_labels(&self) -> &[ChargedMultipartition] {
        &self.mp_labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Coefficient of φ(labels[i]) in G^±(labels[j]).
    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.entries
    }

    /// Position of a partition among the block labels.
    pub fn position(&self, lambda: &Partition) -> Option<usize> {
        self.labels.iter().position(|x| x == lambda)
    }
}

/// Solves D = D̄ · A column by column.  `order` must list the label indices
/// in some linear extension of dominance-descending; the result does not
/// depend on which one (the test suite checks this).
fn solve_block(
    bar: &BarMatrix,
    sign: SplitSign,
    order: &[usize],
) -> Result<Vec<Vec<LaurentPoly>>> {
    let dim = bar.dim();
    let mut entries = vec![vec![LaurentPoly::zero(); dim]; dim];
    for j in 0..dim {
        entries[j][j] = LaurentPoly::one();
        let start = order
            .iter()
            .position(|&p| p == j)
            .ok_or_else(|| Error::Internal("processing order is not a permutation".into()))?;
        let mut handled = vec![j];
        for &i in &order[start + 1..] {
            // Defect of the bar-invariance equation at row i: everything the
            // already-fixed entries of this column contribute to φ(labels[i]).
            let mut defect = LaurentPoly::zero();
            for &k in &handled {
                defect = &defect + &(&entries[k][j].bar() * bar.entry(k, i));
            }
            let entry = gauss_split(&defect, sign).map_err(|e| {
                Error::Internal(format!(
                    "defect at block entry ({}, {}) is not bar-antisymmetric: {}",
                    bar.labels()[i],
                    bar.labels()[j],
                    e
                ))
            })?;
            entries[i][j] = entry;
            handled.push(i);
        }
    }
    Ok(entries)
}

/// Canonical-basis transition matrix of one block: partitions of size `d`
/// whose l-tuple labels carry the given charge vector.
pub fn canonical_block(
    space: &mut FockSpace,
    s: i64,
    d: usize,
    sign: SplitSign,
    component: &[i64],
) -> Result<TransitionMatrix> {
    let bar = bar_matrix_block(space, s, d, component)?;
    canonical_from_bar(space, &bar, sign, &(0..bar.dim()).collect::<Vec<_>>())
}

/// As [`canonical_block`], but starting from an already computed involution
/// block and with an explicit processing order.  Any linear extension of the
/// dominance order gives the same matrix; the order parameter exists so that
/// this independence can be checked and so that callers holding a cached
/// involution block can skip recomputing it.
pub fn canonical_from_bar(
    space: &FockSpace,
    bar: &BarMatrix,
    sign: SplitSign,
    order: &[usize],
) -> Result<TransitionMatrix> {
    let entries = solve_block(bar, sign, order)?;
    let mp_labels = bar
        .labels()
        .iter()
        .map(|p| space.labels(AlgebraSide::RankN, p, bar.charge()))
        .collect();
    Ok(TransitionMatrix {
        n: bar.n(),
        l: bar.l(),
        charge: bar.charge(),
        component: bar.component().to_vec(),
        degree: bar.degree(),
        sign,
        labels: bar.labels().to_vec(),
        mp_labels,
        entries,
    })
}

/// The canonical basis vector G^±(λ_l, s_l) in the wedge monomial basis.
pub fn g_vector(
    space: &mut FockSpace,
    cmp: &ChargedMultipartition,
    sign: SplitSign,
) -> Result<FockVector> {
    let (lambda, s) = space.labels_inverse(AlgebraSide::RankN, cmp)?;
    let block = canonical_block(space, s, lambda.size() as usize, sign, cmp.charges())?;
    let j = block
        .position(&lambda)
        .ok_or_else(|| Error::Internal(format!("label {} missing from its own block", lambda)))?;
    let mut out = FockVector::zero(s);
    for (i, mu) in block.labels().iter().enumerate() {
        let coeff = block.entry(i, j);
        if coeff.is_zero() {
            continue;
        }
        let mu_sign = space.basis_sign(AlgebraSide::RankN, &block.mp_labels()[i])?;
        out.add_term(mu.clone(), coeff.shift_scale(0, mu_sign));
    }
    Ok(out)
}

/// Expands a vector over the canonical basis of the chosen sign.  The result
/// pairs each l-tuple label with its coefficient; labels with coefficient
/// zero are omitted.
pub fn canonical_expansion(
    space: &mut FockSpace,
    v: &FockVector,
    sign: SplitSign,
) -> Result<Vec<(ChargedMultipartition, LaurentPoly)>> {
    // φ-coefficients keyed by partition, then grouped into blocks.
    let s = v.charge();
    let mut phi_coeffs: BTreeMap<Partition, LaurentPoly> = BTreeMap::new();
    let mut groups: BTreeMap<(usize, Vec<i64>), Vec<Partition>> = BTreeMap::new();
    for (mu, coeff) in v.terms() {
        let cmp = space.labels(AlgebraSide::RankN, mu, s);
        let sign_mu = space.basis_sign(AlgebraSide::RankN, &cmp)?;
        phi_coeffs.insert(mu.clone(), coeff.shift_scale(0, sign_mu));
        groups
            .entry((mu.size() as usize, cmp.charges().to_vec()))
            .or_default()
            .push(mu.clone());
    }
    let mut out = Vec::new();
    for ((d, component), _members) in groups {
        let block = canonical_block(space, s, d, sign, &component)?;
        // Back-substitution down the block: c_μ = Σ_λ g_λ D_{λμ} and the
        // matrix is unitriangular, so the topmost label is resolved first.
        let dim = block.dim();
        let mut g = vec![LaurentPoly::zero(); dim];
        for j in 0..dim {
            let mut value = phi_coeffs
                .get(&block.labels()[j])
                .cloned()
                .unwrap_or_else(LaurentPoly::zero);
            for (k, g_k) in g.iter().enumerate().take(j) {
                value = &value - &(g_k * block.entry(j, k));
            }
            g[j] = value;
        }
        for (j, coeff) in g.into_iter().enumerate() {
            if !coeff.is_zero() {
                out.push((block.mp_labels()[j].clone(), coeff));
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Rank-swap duality
// ---------------------------------------------------------------------------

/// Outcome of comparing the two rank orientations of the transition
/// matrices.
#[derive(Clone, Debug, Default)]
pub struct DualityReport {
    pub entries_checked: usize,
    pub mismatches: Vec<String>,
}

impl DualityReport {
    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Verifies ±D for (l, n) against ∓D for (n, l) under q ↦ −q⁻¹, matching
/// entries through their l-tuple labels, on all blocks of degree at most
/// `max_d` on the (n, l) side.
pub fn duality_check(n: usize, l: usize, s: i64, max_d: usize) -> Result<DualityReport> {
    let mut forward = FockSpace::new(n, l);
    let mut swapped = FockSpace::new(l, n);
    let mut report = DualityReport::default();
    // Blocks of the swapped space, cached by degree and charge vector.
    let mut swapped_blocks: BTreeMap<(usize, Vec<i64>), (TransitionMatrix, TransitionMatrix)> =
        BTreeMap::new();
    for d in 0..=max_d {
        for (component, _members) in component_blocks(d, s, n, l) {
            let plus = canonical_block(&mut forward, s, d, SplitSign::Plus, &component)?;
            let minus = canonical_block(&mut forward, s, d, SplitSign::Minus, &component)?;
            for j in 0..plus.dim() {
                let key = &plus.mp_labels()[j];
                let (lambda_sw, _) = swapped.labels_inverse(AlgebraSide::RankL, key)?;
                let comp_sw = swapped
                    .labels(AlgebraSide::RankN, &lambda_sw, s)
                    .charges()
                    .to_vec();
                let d_sw = lambda_sw.size() as usize;
                if !swapped_blocks.contains_key(&(d_sw, comp_sw.clone())) {
                    let p = canonical_block(&mut swapped, s, d_sw, SplitSign::Plus, &comp_sw)?;
                    let m = canonical_block(&mut swapped, s, d_sw, SplitSign::Minus, &comp_sw)?;
                    swapped_blocks.insert((d_sw, comp_sw.clone()), (p, m));
                }
                let (sw_plus, sw_minus) = &swapped_blocks[&(d_sw, comp_sw)];
                let j_sw = sw_plus.position(&lambda_sw).ok_or_else(|| {
                    Error::Internal(format!("swapped label {} missing from its block", lambda_sw))
                })?;
                // Columns as maps keyed by the shared l-tuple labels: the ι_l
                // labels on the forward side, the ι_n labels on the swapped
                // side, where the group roles are exchanged.
                let column = |block: &TransitionMatrix,
                              col: usize,
                              space_ref: &FockSpace,
                              side: AlgebraSide|
                 -> BTreeMap<String, LaurentPoly> {
                    let mut map = BTreeMap::new();
                    for i in 0..block.dim() {
                        let entry = block.entry(i, col);
                        if !entry.is_zero() {
                            let cmp = space_ref.labels(side, &block.labels()[i], block.charge());
                            let key = format!("{}@{:?}", cmp.label(), cmp.charges());
                            map.insert(key, entry.clone());
                        }
                    }
                    map
                };
                let fwd = (&forward, AlgebraSide::RankN);
                let sw = (&swapped, AlgebraSide::RankL);
                for (ours, theirs, tag) in [
                    (
                        column(&minus, j, fwd.0, fwd.1),
                        column(sw_plus, j_sw, sw.0, sw.1),
                        "+(l,n) vs -(n,l)",
                    ),
                    (
                        column(&plus, j, fwd.0, fwd.1),
                        column(sw_minus, j_sw, sw.0, sw.1),
                        "-(l,n) vs +(n,l)",
                    ),
                ] {
                    let mut keys: Vec<&String> = ours.keys().chain(theirs.keys()).collect();
                    keys.sort();
                    keys.dedup();
                    for label in keys {
                        let from_ours = ours
                            .get(label)
                            .map(|p| p.subst_minus_q_inv())
                            .unwrap_or_else(LaurentPoly::zero);
                        let from_theirs =
                            theirs.get(label).cloned().unwrap_or_else(LaurentPoly::zero);
                        report.entries_checked += 1;
                        if from_ours != from_theirs {
                            report.mismatches.push(format!(
                                "{} at column {}, row {}: {} vs {}",
                                tag,
                                key.label(),
                                label,
                                from_ours,
                                from_theirs
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Crystal subset
// ---------------------------------------------------------------------------

/// The cylindrical multipartitions of each size up to `max_size` with their
/// G⁺ vectors.  These index the global lower crystal basis of the submodule
/// generated by the vacuum.
pub fn crystal_subset(
    space: &mut FockSpace,
    charges: &[i64],
    max_size: usize,
) -> Result<Vec<(ChargedMultipartition, FockVector)>> {
    let mut out = Vec::new();
    for size in 0..=max_size {
        for components in multipartitions_of(size, space.l()) {
            let cmp = ChargedMultipartition::new(components, charges.to_vec())?;
            if is_cylindrical(&cmp, space.n())? {
                let g = g_vector(space, &cmp, SplitSign::Plus)?;
                out.push((cmp, g));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{dominance_leq, iota_l, partitions_of};
    use crate::fock::Generator;
    use crate::involution::bar_fock;

    fn p(parts: &[i64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q_pow(e: i64) -> LaurentPoly {
        LaurentPoly::monomial(e, 1)
    }

    #[test]
    fn empty_degree_block_is_identity() {
        let mut space = FockSpace::new(2, 2);
        for sign in [SplitSign::Plus, SplitSign::Minus] {
            let block = canonical_block(&mut space, 0, 0, sign, &[0, 0]).unwrap();
            assert_eq!(block.dim(), 1);
            assert_eq!(block.labels(), &[p(&[])]);
            assert!(block.entry(0, 0).is_one());
        }
    }

    #[test]
    fn smallest_nontrivial_block_is_frozen() {
        // n = l = 2, charges (0, 0): the partitions (3) and (1³) carry the
        // one-cell l-tuple labels, and the plus matrix has the single
        // off-diagonal entry q.
        let mut space = FockSpace::new(2, 2);
        let plus = canonical_block(&mut space, 0, 3, SplitSign::Plus, &[0, 0]).unwrap();
        assert_eq!(plus.labels(), &[p(&[3]), p(&[1, 1, 1])]);
        assert!(plus.entry(0, 0).is_one() && plus.entry(1, 1).is_one());
        assert_eq!(*plus.entry(1, 0), q_pow(1));
        assert!(plus.entry(0, 1).is_zero());

        let minus = canonical_block(&mut space, 0, 3, SplitSign::Minus, &[0, 0]).unwrap();
        assert_eq!(*minus.entry(1, 0), -&q_pow(-1));
        assert!(minus.entry(0, 1).is_zero());
    }

    #[test]
    fn degree_four_block_is_frozen() {
        // n = l = 2, charges (0, 0), partitions of 4: four labels, and the
        // published column pattern 1 / q / q / q² with one interior zero.
        let mut space = FockSpace::new(2, 2);
        let block = canonical_block(&mut space, 0, 4, SplitSign::Plus, &[0, 0]).unwrap();
        assert_eq!(
            block.labels(),
            &[p(&[4]), p(&[3, 1]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        let expected: [[i64; 4]; 4] = [
            // exponent of the single q-power entry; −1 encodes a zero entry
            [0, -1, -1, -1],
            [1, 0, -1, -1],
            [1, -1, 0, -1],
            [2, 1, 1, 0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                let want = expected[i][j];
                if want < 0 {
                    assert!(block.entry(i, j).is_zero(), "entry ({i}, {j})");
                } else {
                    assert_eq!(*block.entry(i, j), q_pow(want), "entry ({i}, {j})");
                }
            }
        }
        // The lone size-6 label of the same charge vector sits in a 1×1 block.
        let six = canonical_block(&mut space, 0, 6, SplitSign::Plus, &[0, 0]).unwrap();
        assert_eq!(six.labels(), &[p(&[3, 2, 1])]);
        assert!(six.entry(0, 0).is_one());
    }

    #[test]
    fn g_vectors_are_bar_invariant_and_congruent() {
        let mut space = FockSpace::new(2, 2);
        for d in 0..=4usize {
            for lambda in partitions_of(d) {
                let cmp = iota_l(&lambda, 0, 2, 2);
                for sign in [SplitSign::Plus, SplitSign::Minus] {
                    let g = g_vector(&mut space, &cmp, sign).unwrap();
                    let barred = bar_fock(&mut space, &g).unwrap();
                    assert_eq!(barred, g, "bar moves G({}, {:?})", lambda, sign);
                    // Congruence: away from λ itself every φ-coefficient lies
                    // strictly on one side of q⁰.
                    for (mu, coeff) in g.terms() {
                        if *mu == lambda {
                            continue;
                        }
                        let ok = match sign {
                            SplitSign::Plus => coeff.supported_on(|e| e > 0),
                            SplitSign::Minus => coeff.supported_on(|e| e < 0),
                        };
                        assert!(ok, "coefficient {} of {} in G({})", coeff, mu, lambda);
                    }
                }
            }
        }
    }

    #[test]
    fn blocks_are_unitriangular_for_dominance() {
        let mut space = FockSpace::new(2, 3);
        for d in 0..=4usize {
            for (component, _) in component_blocks(d, 1, 2, 3) {
                let block =
                    canonical_block(&mut space, 1, d, SplitSign::Plus, &component).unwrap();
                for i in 0..block.dim() {
                    for j in 0..block.dim() {
                        let entry = block.entry(i, j);
                        if i == j {
                            assert!(entry.is_one());
                        } else if !entry.is_zero() {
                            assert!(dominance_leq(&block.labels()[i], &block.labels()[j]));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn recursion_is_order_independent() {
        // Replace descending lexicographic order by another linear extension
        // of dominance: among the not-yet-processed labels, repeatedly take
        // the lexicographically *smallest* maximal one.
        let mut space = FockSpace::new(2, 2);
        // Degree 8 is the smallest charge-(0, 0) block here whose dominance
        // order is not a chain, so the two extensions genuinely differ.
        for d in [8usize] {
            let bar = bar_matrix_block(&mut space, 0, d, &[0, 0]).unwrap();
            let dim = bar.dim();
            let mut remaining: Vec<usize> = (0..dim).collect();
            let mut alt_order = Vec::new();
            while !remaining.is_empty() {
                let pick = *remaining
                    .iter()
                    .filter(|&&i| {
                        remaining.iter().all(|&k| {
                            k == i || !dominance_leq(&bar.labels()[i], &bar.labels()[k])
                        })
                    })
                    .last()
                    .unwrap();
                alt_order.push(pick);
                remaining.retain(|&i| i != pick);
            }
            assert_ne!(alt_order, (0..dim).collect::<Vec<_>>());
            for sign in [SplitSign::Plus, SplitSign::Minus] {
                let straight = canonical_from_bar(&space, &bar, sign, &(0..dim).collect::<Vec<_>>())
                    .unwrap();
                let reordered = canonical_from_bar(&space, &bar, sign, &alt_order).unwrap();
                assert_eq!(straight, reordered);
            }
        }
    }

    #[test]
    fn vacuum_raising_matches_canonical_vector() {
        // f_0 applied to the vacuum is bar-invariant with the right
        // congruence, so it must equal G⁺ of the one-cell label it produces.
        let mut space = FockSpace::new(2, 2);
        let vac = ChargedMultipartition::vacuum(vec![0, 0]).unwrap();
        let phi_vac = space.phi(&vac).unwrap();
        let raised = space
            .chevalley_action(AlgebraSide::RankN, Generator::f(0), &phi_vac)
            .unwrap();
        let label =
            ChargedMultipartition::new(vec![p(&[]), p(&[1])], vec![0, 0]).unwrap();
        let g = g_vector(&mut space, &label, SplitSign::Plus).unwrap();
        assert_eq!(raised, g);
    }

    #[test]
    fn expansion_inverts_assembly() {
        let mut space = FockSpace::new(2, 2);
        // A vector mixing two blocks: G⁺ of two labels plus a bare monomial.
        let a = iota_l(&p(&[3]), 0, 2, 2);
        let b = iota_l(&p(&[2, 1]), 0, 2, 2);
        let mut v = g_vector(&mut space, &a, SplitSign::Plus).unwrap();
        let gb = g_vector(&mut space, &b, SplitSign::Plus).unwrap();
        v.add_scaled(&gb, &LaurentPoly::from_pairs(&[(-2, 3), (1, 1)]));
        let expansion = canonical_expansion(&mut space, &v, SplitSign::Plus).unwrap();
        let mut seen = BTreeMap::new();
        for (cmp, coeff) in expansion {
            seen.insert(cmp.label(), coeff);
        }
        assert_eq!(seen.len(), 2);
        assert!(seen[&a.label()].is_one());
        assert_eq!(seen[&b.label()], LaurentPoly::from_pairs(&[(-2, 3), (1, 1)]));
    }

    #[test]
    fn rank_swap_duality_holds_on_small_blocks() {
        let report = duality_check(2, 2, 0, 3).unwrap();
        assert!(report.is_ok(), "{:?}", report.mismatches);
        assert!(report.entries_checked > 0);
        let report = duality_check(2, 3, 0, 2).unwrap();
        assert!(report.is_ok(), "{:?}", report.mismatches);
    }

    #[test]
    fn crystal_subset_membership_is_frozen() {
        let mut space = FockSpace::new(2, 2);
        let subset = crystal_subset(&mut space, &[0, 0], 2).unwrap();
        let mut labels: Vec<String> = subset.iter().map(|(cmp, _)| cmp.label()).collect();
        labels.sort();
        // Size 0: the vacuum; size 1: only (∅, (1)); size 2: (∅, (2)) and
        // ((1), (1)).
        assert_eq!(labels, vec!["-|-", "-|1", "-|2", "1|1"]);
        // Its vectors are exactly the corresponding G⁺.
        for (cmp, g) in &subset {
            let direct = g_vector(&mut space, cmp, SplitSign::Plus).unwrap();
            assert_eq!(&direct, g);
        }
    }

    #[test]
    fn raising_keeps_the_crystal_span() {
        // f_i · G⁺(cylindrical) expands over G⁺ of cylindrical labels only.
        let mut space = FockSpace::new(2, 2);
        let subset = crystal_subset(&mut space, &[0, 0], 2).unwrap();
        for (cmp, g) in &subset {
            for i in 0..2i64 {
                let image = space
                    .chevalley_action(AlgebraSide::RankN, Generator::f(i), g)
                    .unwrap();
                if image.is_zero() {
                    continue;
                }
                let expansion =
                    canonical_expansion(&mut space, &image, SplitSign::Plus).unwrap();
                for (label, coeff) in expansion {
                    assert!(
                        is_cylindrical(&label, 2).unwrap(),
                        "f_{} G⁺({}) spills onto {} with coefficient {}",
                        i,
                        cmp.label(),
                        label.label(),
                        coeff
                    );
                }
            }
        }
    }
}
