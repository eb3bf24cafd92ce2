//! Extended affine Weyl group of gl_r, its Hecke algebra, and the
//! Kazhdan–Lusztig route to the canonical transition matrices.
//!
//! The group Ŵ = S_r ⋉ ℤ^r acts on integer vectors from the right:
//! s_i (1 ≤ i ≤ r−1) swaps h_i and h_{i+1}, the translation ε_i adds the
//! lattice step n to h_i, the rotation π sends h to (h₂, …, h_r, h₁+n), and
//! s₀ = π s_{r−1} π⁻¹.  An element is stored as a permutation p together
//! with a shift vector t, acting by (h·w)_j = h_{p_j} + n·t_j; the group
//! structure is independent of the step n, which only scales the action.
//!
//! The length function comes from the window W_j = p_j + r·t_j:
//! ℓ(w) = Σ_{i<j} #{k ≥ 0 : kr < W_i−W_j} + #{k ≥ 1 : kr < W_j−W_i},
//! which is the word length in s₀, …, s_{r−1} after the π-power is split off.
//!
//! The Hecke algebra has basis T_x with T_x T_y = T_{xy} whenever lengths
//! add and (T_s − q⁻¹)(T_s + q) = 0.  The bar involution fixes every T_π,
//! sends q to q⁻¹ and T_s to T_s + (q − q⁻¹), and each basis vector T_x is
//! congruent to exactly one bar-invariant element modulo terms with
//! coefficients in qℤ[q] (giving C′_x) or in q⁻¹ℤ[q⁻¹] (giving C_x).
//!
//! A strictly decreasing index sequence k₁ > k₂ > ⋯ > k_r with
//! k_i = a_i + n(b_i−1) − nlm_i determines sorted class vectors a(k), b(k),
//! the vector h(k) obtained by listing a_i − nm_i per b-class (classes l
//! down to 1, decreasing inside each class), and the minimal-length coset
//! representative x(k) with a(k)·x(k) = h(k).  Summing Kazhdan–Lusztig
//! coefficients of C_{x(k)} over the stabiliser of a(k) (respectively of
//! C′_{ω_a x(k) ω_b} over the stabiliser of b(k)) reproduces the entries of
//! the lower and upper canonical transition matrices; `KlOracle` packages
//! this as an independent cross-check of the recursion in `canonical`.

use std::collections::HashMap;

use crate::combinatorics::{beta_sequence, decompose_index, Partition};
use crate::error::{Error, Result};
use crate::laurent::{gauss_split, LaurentPoly, SplitSign};
use std::collections::BTreeMap;

/// Element of the extended affine Weyl group of rank r, acting on ℤ^r from
/// the right by (h·w)_j = h_{perm[j]} + step·shift[j] (indices 0-based).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineWeylElement {
    perm: Vec<usize>,
    shift: Vec<i64>,
}

impl AffineWeylElement {
    pub fn identity(rank: usize) -> Self {
        AffineWeylElement {
            perm: (0..rank).collect(),
            shift: vec![0; rank],
        }
    }

    /// Paper-numbered generator s_i: for 1 ≤ i ≤ rank−1 the swap of
    /// positions i, i+1; for i = 0 the affine reflection
    /// h ↦ (h_r − n, h₂, …, h_{r−1}, h₁ + n).  Requires rank ≥ 2.
    pub fn simple_reflection(i: usize, rank: usize) -> Self {
        assert!(rank >= 2 && i < rank, "no simple reflection {i} at rank {rank}");
        let mut el = Self::identity(rank);
        if i == 0 {
            el.perm[0] = rank - 1;
            el.perm[rank - 1] = 0;
            el.shift[0] = -1;
            el.shift[rank - 1] = 1;
        } else {
            el.perm.swap(i - 1, i);
        }
        el
    }

    /// Translation ε_i (1-based i): adds one lattice step to position i.
    pub fn translation(i: usize, rank: usize) -> Self {
        assert!(i >= 1 && i <= rank, "no translation {i} at rank {rank}");
        let mut el = Self::identity(rank);
        el.shift[i - 1] = 1;
        el
    }

    /// Rotation π: h ↦ (h₂, …, h_r, h₁ + n); length zero.
    pub fn rotation(rank: usize) -> Self {
        let mut el = Self::identity(rank);
        if rank == 0 {
            return el;
        }
        for j in 0..rank - 1 {
            el.perm[j] = j + 1;
        }
        el.perm[rank - 1] = 0;
        el.shift[rank - 1] = 1;
        el
    }

    /// π^d for any integer d.
    pub fn rotation_power(d: i64, rank: usize) -> Self {
        let step = if d >= 0 {
            Self::rotation(rank)
        } else {
            Self::rotation(rank).inverse()
        };
        let mut out = Self::identity(rank);
        for _ in 0..d.unsigned_abs() {
            out = out.compose(&step);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    /// Group product self·other, so that h·(self·other) = (h·self)·other.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "rank mismatch in composition");
        let r = self.rank();
        let mut perm = vec![0usize; r];
        let mut shift = vec![0i64; r];
        for j in 0..r {
            perm[j] = self.perm[other.perm[j]];
            shift[j] = self.shift[other.perm[j]] + other.shift[j];
        }
        AffineWeylElement { perm, shift }
    }

    pub fn inverse(&self) -> Self {
        let r = self.rank();
        let mut perm = vec![0usize; r];
        let mut shift = vec![0i64; r];
        for j in 0..r {
            perm[self.perm[j]] = j;
        }
        for j in 0..r {
            shift[j] = -self.shift[perm[j]];
        }
        AffineWeylElement { perm, shift }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p == j)
            && self.shift.iter().all(|&t| t == 0)
    }

    /// Right action on a vector; `step` is the quantum-affine rank n.
    pub fn apply(&self, h: &[i64], step: i64) -> Vec<i64> {
        assert_eq!(h.len(), self.rank(), "rank mismatch in action");
        (0..self.rank())
            .map(|j| h[self.perm[j]] + step * self.shift[j])
            .collect()
    }

    /// Window of the associated affine permutation of ℤ (period = rank).
    pub fn window(&self) -> Vec<i64> {
        let r = self.rank() as i64;
        (0..self.rank())
            .map(|j| self.perm[j] as i64 + 1 + r * self.shift[j])
            .collect()
    }

    /// Coxeter length: inversions of the periodic extension of the window.
    pub fn length(&self) -> usize {
        let w = self.window();
        let r = self.rank() as i64;
        let mut total = 0i64;
        for j in 1..w.len() {
            for i in 0..j {
                let d = w[i] - w[j];
                if d > 0 {
                    // k ≥ 0 with kr < d
                    total += (d - 1) / r + 1;
                } else if d < 0 {
                    // k ≥ 1 with kr < −d
                    total += (-d - 1) / r;
                }
            }
        }
        total as usize
    }

    /// Exponent of π once the finite-length part is split off; equals the
    /// total shift.
    pub fn rotation_sector(&self) -> i64 {
        self.shift.iter().sum()
    }
}

/// Generators for the right action on ℤ^r, with 1-based finite reflections.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylGen {
    /// s_i; i = 0 is the affine reflection.
    S(usize),
    /// ε_i, 1-based.
    Eps(usize),
    Pi,
    PiInv,
}

/// One generator applied to a vector from the right; `step` is n.
pub fn right_action(h: &[i64], gen: WeylGen, step: i64) -> Vec<i64> {
    let r = h.len();
    let el = match gen {
        WeylGen::S(i) => AffineWeylElement::simple_reflection(i, r),
        WeylGen::Eps(i) => AffineWeylElement::translation(i, r),
        WeylGen::Pi => AffineWeylElement::rotation(r),
        WeylGen::PiInv => AffineWeylElement::rotation(r).inverse(),
    };
    el.apply(h, step)
}

/// Element of the affine Hecke algebra: a finite ℤ[q, q⁻¹]-combination of
/// standard basis vectors T_x.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HeckeElement {
    terms: BTreeMap<AffineWeylElement, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(x: AffineWeylElement) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(x, LaurentPoly::one());
        HeckeElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, x: &AffineWeylElement) -> LaurentPoly {
        self.terms.get(x).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffineWeylElement, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, x: AffineWeylElement, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(x).or_insert_with(LaurentPoly::zero);
        *entry += &c;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add_assign_elem(&mut self, other: &HeckeElement) {
        for (x, c) in &other.terms {
            self.add_term(x.clone(), c.clone());
        }
    }

    pub fn scaled(&self, c: &LaurentPoly) -> Self {
        let mut out = HeckeElement::zero();
        for (x, v) in &self.terms {
            out.add_term(x.clone(), v * c);
        }
        out
    }

    /// Right multiplication by T_{s_i}: T_x T_s = T_{xs} when the length
    /// goes up, T_{xs} + (q⁻¹ − q) T_x when it goes down.
    pub fn mul_simple(&self, i: usize) -> Self {
        let mut out = HeckeElement::zero();
        let correction = LaurentPoly::from_pairs(&[(-1, 1), (1, -1)]);
        for (x, c) in &self.terms {
            let s = AffineWeylElement::simple_reflection(i, x.rank());
            let xs = x.compose(&s);
            if xs.length() > x.length() {
                out.add_term(xs, c.clone());
            } else {
                out.add_term(xs, c.clone());
                out.add_term(x.clone(), c * &correction);
            }
        }
        out
    }

    /// Right multiplication by T_π or its inverse; lengths never change.
    pub fn mul_rotation(&self, inverse: bool) -> Self {
        let mut out = HeckeElement::zero();
        for (x, c) in &self.terms {
            let p = if inverse {
                AffineWeylElement::rotation(x.rank()).inverse()
            } else {
                AffineWeylElement::rotation(x.rank())
            };
            out.add_term(x.compose(&p), c.clone());
        }
        out
    }

    /// Right multiplication by the basis vector T_x.
    pub fn mul_basis(&self, x: &AffineWeylElement) -> Result<Self> {
        let (d, word) = reduced_word(x)?;
        let mut out = self.clone();
        for _ in 0..d.unsigned_abs() {
            out = out.mul_rotation(d < 0);
        }
        for i in word {
            out = out.mul_simple(i);
        }
        Ok(out)
    }
}

/// Splits x as π^d · s_{w₁} ⋯ s_{w_m} with m = ℓ(x), peeling right descents.
pub fn reduced_word(x: &AffineWeylElement) -> Result<(i64, Vec<usize>)> {
    let r = x.rank();
    let d = x.rotation_sector();
    let mut v = AffineWeylElement::rotation_power(-d, r).compose(x);
    let mut reversed = Vec::new();
    while v.length() > 0 {
        let len = v.length();
        let mut found = None;
        for i in 0..r {
            let vs = v.compose(&AffineWeylElement::simple_reflection(i, r));
            if vs.length() < len {
                found = Some((i, vs));
                break;
            }
        }
        match found {
            Some((i, vs)) => {
                reversed.push(i);
                v = vs;
            }
            None => {
                return Err(Error::Internal(
                    "element of positive length has no right descent".into(),
                ))
            }
        }
    }
    if !v.is_identity() {
        return Err(Error::Internal(
            "length-zero remainder of a reduced word is not a rotation power".into(),
        ));
    }
    reversed.reverse();
    Ok((d, reversed))
}

/// bar(T_x) = T_{π^d} · Π (T_{s_i} + (q − q⁻¹)) along a reduced word of x.
pub fn bar_basis_vector(x: &AffineWeylElement) -> Result<HeckeElement> {
    let (d, word) = reduced_word(x)?;
    let mut out = HeckeElement::unit(AffineWeylElement::rotation_power(d, x.rank()));
    let unit_shift = LaurentPoly::from_pairs(&[(1, 1), (-1, -1)]);
    for i in word {
        let mut next = out.mul_simple(i);
        next.add_assign_elem(&out.scaled(&unit_shift));
        out = next;
    }
    Ok(out)
}

/// Semi-linear extension of the bar involution to the whole algebra.
pub fn bar_hecke(h: &HeckeElement) -> Result<HeckeElement> {
    let mut out = HeckeElement::zero();
    for (x, c) in h.terms() {
        out.add_assign_elem(&bar_basis_vector(x)?.scaled(&c.bar()));
    }
    Ok(out)
}

/// Kazhdan–Lusztig basis vector attached to x: the unique bar-invariant
/// element equal to T_x plus a combination of shorter T_y whose
/// coefficients have strictly positive (`Plus`, giving C′_x) or strictly
/// negative (`Minus`, giving C_x) exponents.
pub fn kl_basis(x: &AffineWeylElement, sign: SplitSign) -> Result<HeckeElement> {
    // Closure of x under taking supports of bar images; this is the lower
    // Bruhat interval, and every bar image stays inside it.
    let mut bars: BTreeMap<AffineWeylElement, HeckeElement> = BTreeMap::new();
    let mut stack = vec![x.clone()];
    while let Some(y) = stack.pop() {
        if bars.contains_key(&y) {
            continue;
        }
        let image = bar_basis_vector(&y)?;
        for (z, _) in image.terms() {
            if !bars.contains_key(z) {
                stack.push(z.clone());
            }
        }
        bars.insert(y, image);
    }
    let mut order: Vec<AffineWeylElement> = bars.keys().cloned().collect();
    order.sort_by_key(|e| std::cmp::Reverse(e.length()));
    // Distinct elements of equal length are incomparable, so any tie-break
    // within a length gives the same answer.
    let mut coeffs: BTreeMap<AffineWeylElement, LaurentPoly> = BTreeMap::new();
    coeffs.insert(x.clone(), LaurentPoly::one());
    for z in &order {
        if z == x {
            continue;
        }
        let mut defect = LaurentPoly::zero();
        for (y, c) in &coeffs {
            let r = bars[y].coeff(z);
            if !r.is_zero() {
                defect += &(&c.bar() * &r);
            }
        }
        let gamma = gauss_split(&defect, sign)?;
        if !gamma.is_zero() {
            coeffs.insert(z.clone(), gamma);
        }
    }
    let mut out = HeckeElement::zero();
    for (y, c) in coeffs {
        out.add_term(y, c);
    }
    Ok(out)
}

/// Finite s-indices i (1-based) with values[i−1] = values[i]; these generate
/// the stabiliser of the vector inside S_r.
pub fn stabilizer_generators(values: &[i64]) -> Vec<usize> {
    (1..values.len())
        .filter(|&i| values[i - 1] == values[i])
        .collect()
}

/// All permutations fixing the vector positionwise (a product of symmetric
/// groups over the runs of equal values).
pub fn enumerate_stabilizer(values: &[i64]) -> Vec<AffineWeylElement> {
    let r = values.len();
    let gens: Vec<AffineWeylElement> = stabilizer_generators(values)
        .into_iter()
        .map(|i| AffineWeylElement::simple_reflection(i, r))
        .collect();
    let mut seen = vec![AffineWeylElement::identity(r)];
    let mut frontier = seen.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for el in &frontier {
            for g in &gens {
                let cand = el.compose(g);
                if !seen.contains(&cand) {
                    seen.push(cand.clone());
                    next.push(cand);
                }
            }
        }
        frontier = next;
    }
    seen
}

/// Longest element of the stabiliser: reversal inside each run of equal
/// values.
pub fn longest_stabilizer_element(values: &[i64]) -> AffineWeylElement {
    let r = values.len();
    let mut el = AffineWeylElement::identity(r);
    let mut lo = 0;
    while lo < r {
        let mut hi = lo;
        while hi + 1 < r && values[hi + 1] == values[lo] {
            hi += 1;
        }
        for j in lo..=hi {
            el.perm[j] = lo + hi - j;
        }
        lo = hi + 1;
    }
    el
}

/// Sorted class data and minimal coset representative of an index sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIndexing {
    /// n-residues of the indices, nondecreasing, entries in 1..=n.
    pub a: Vec<i64>,
    /// l-classes of the indices, nonincreasing, entries in 1..=l.
    pub b: Vec<i64>,
    /// a_i − n·m_i listed per b-class, classes l down to 1, decreasing
    /// inside each class.
    pub h: Vec<i64>,
    /// Minimal-length representative of its stabiliser coset with
    /// a·x = h.
    pub x: AffineWeylElement,
}

/// Decomposes a strictly decreasing index sequence into its class vectors
/// and locates the minimal-length Weyl element carrying a(k) to h(k).
pub fn minimal_rep_and_x(prefix: &[i64], n: usize, l: usize) -> Result<MonomialIndexing> {
    let r = prefix.len();
    for w in prefix.windows(2) {
        if w[0] <= w[1] {
            return Err(Error::Domain(format!(
                "index sequence must be strictly decreasing, got {} before {}",
                w[0], w[1]
            )));
        }
    }
    let mut a_sorted: Vec<i64> = Vec::with_capacity(r);
    let mut b_sorted: Vec<i64> = Vec::with_capacity(r);
    let mut per_class: Vec<Vec<i64>> = vec![Vec::new(); l];
    for &k in prefix {
        let (a, b, m) = decompose_index(k, n, l);
        a_sorted.push(a);
        b_sorted.push(b);
        per_class[(b - 1) as usize].push(a - n as i64 * m);
    }
    a_sorted.sort_unstable();
    b_sorted.sort_unstable_by(|x, y| y.cmp(x));
    let mut h: Vec<i64> = Vec::with_capacity(r);
    for class in per_class.iter().rev() {
        let mut entries = class.clone();
        entries.sort_unstable_by(|x, y| y.cmp(x));
        h.extend(entries);
    }
    // Some element carrying a to h: match residues mod n, smallest unused
    // slot first, then shorten inside the stabiliser coset.
    let step = n as i64;
    let mut used = vec![false; r];
    let mut perm = vec![0usize; r];
    let mut shift = vec![0i64; r];
    for j in 0..r {
        let residue = (h[j] - 1).rem_euclid(step) + 1;
        let i = (0..r)
            .find(|&i| !used[i] && a_sorted[i] == residue)
            .ok_or_else(|| {
                Error::Internal("residue multiset of h does not match a".into())
            })?;
        used[i] = true;
        perm[j] = i;
        shift[j] = (h[j] - a_sorted[i]) / step;
    }
    let mut x = AffineWeylElement { perm, shift };
    let gens: Vec<AffineWeylElement> = stabilizer_generators(&a_sorted)
        .into_iter()
        .map(|i| AffineWeylElement::simple_reflection(i, r))
        .collect();
    loop {
        let len = x.length();
        let shorter = gens
            .iter()
            .map(|g| g.compose(&x))
            .find(|y| y.length() < len);
        match shorter {
            Some(y) => x = y,
            None => break,
        }
    }
    Ok(MonomialIndexing {
        a: a_sorted,
        b: b_sorted,
        h,
        x,
    })
}

/// Memoising wrapper around the Kazhdan–Lusztig route to the transition
/// matrices; reuses each C/C′ expansion across the entries of a column.
#[derive(Default)]
pub struct KlOracle {
    memo: HashMap<(AffineWeylElement, SplitSign), HeckeElement>,
}

impl KlOracle {
    pub fn new() -> Self {
        KlOracle {
            memo: HashMap::new(),
        }
    }

    fn basis(&mut self, x: &AffineWeylElement, sign: SplitSign) -> Result<&HeckeElement> {
        let key = (x.clone(), sign);
        if !self.memo.contains_key(&key) {
            let value = kl_basis(x, sign)?;
            self.memo.insert(key.clone(), value);
        }
        Ok(&self.memo[&key])
    }

    /// Transition-matrix entry for the column indexed by `k_seq` and the row
    /// indexed by `l_seq` (both strictly decreasing, same length); zero
    /// whenever the class vectors disagree.
    pub fn d_via_kl(
        &mut self,
        k_seq: &[i64],
        l_seq: &[i64],
        n: usize,
        l: usize,
        sign: SplitSign,
    ) -> Result<LaurentPoly> {
        if k_seq.len() != l_seq.len() {
            return Ok(LaurentPoly::zero());
        }
        let col = minimal_rep_and_x(k_seq, n, l)?;
        let row = minimal_rep_and_x(l_seq, n, l)?;
        if col.a != row.a || col.b != row.b {
            return Ok(LaurentPoly::zero());
        }
        let mut out = LaurentPoly::zero();
        match sign {
            SplitSign::Minus => {
                let stab = enumerate_stabilizer(&col.a);
                let c = self.basis(&col.x, SplitSign::Minus)?;
                for sigma in &stab {
                    let p = c.coeff(&sigma.compose(&row.x));
                    if !p.is_zero() {
                        let weight = LaurentPoly::q_pow(-(sigma.length() as i64));
                        out += &(&weight * &p);
                    }
                }
            }
            SplitSign::Plus => {
                let omega_a = longest_stabilizer_element(&col.a);
                let omega_b = longest_stabilizer_element(&col.b);
                let shifted_col = omega_a.compose(&col.x).compose(&omega_b);
                let shifted_row = omega_a.compose(&row.x).compose(&omega_b);
                let stab = enumerate_stabilizer(&col.b);
                let c = self.basis(&shifted_col, SplitSign::Plus)?;
                for sigma in &stab {
                    let p = c.coeff(&shifted_row.compose(sigma));
                    if !p.is_zero() {
                        let len = sigma.length();
                        let unit = if len % 2 == 0 { 1 } else { -1 };
                        let weight = LaurentPoly::monomial(len as i64, unit);
                        out += &(&weight * &p);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Same entry addressed by partitions: column λ, row μ, both of charge
    /// s, compared through their length-|λ| index prefixes.
    pub fn d_entry(
        &mut self,
        lambda: &Partition,
        mu: &Partition,
        s: i64,
        n: usize,
        l: usize,
        sign: SplitSign,
    ) -> Result<LaurentPoly> {
        if lambda.size() != mu.size() {
            return Ok(LaurentPoly::zero());
        }
        let r = lambda.size() as usize;
        let k_seq = beta_sequence(lambda, s, r);
        let l_seq = beta_sequence(mu, s, r);
        self.d_via_kl(&k_seq, &l_seq, n, l, sign)
    }
}

/// One-shot version of [`KlOracle::d_via_kl`].
pub fn d_via_kl(
    k_seq: &[i64],
    l_seq: &[i64],
    n: usize,
    l: usize,
    sign: SplitSign,
) -> Result<LaurentPoly> {
    KlOracle::new().d_via_kl(k_seq, l_seq, n, l, sign)
}
