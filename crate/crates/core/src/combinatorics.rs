//! Charged partitions, multipartitions, and the index combinatorics linking them.
//!
//! A basis vector of the level-one Fock space is labelled by a charged
//! partition (λ, s).  Its β-numbers k_i = λ_i + s − i + 1 form a strictly
//! decreasing sequence that eventually agrees with s − i + 1.  Writing each
//! index as k = a + n(b−1) − nlm with a ∈ {1, …, n}, b ∈ {1, …, l} and m ∈ ℤ
//! splits the sequence into residue classes, and regrouping the classes turns
//! (λ, s) into an l-tuple of charged partitions (grouping by b) or an n-tuple
//! (grouping by a).  This module implements those bijections together with
//! the supporting combinatorics: dominance order, the sign picked up when a
//! β-sequence is re-sorted by class, addable/removable node counts, and the
//! cylindrical condition cutting out crystal labels.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// Partitions
// ---------------------------------------------------------------------------

/// An integer partition: weakly decreasing positive parts.
///
/// Trailing zeros are stripped on construction, so two representations of the
/// same partition always compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<i64>);

impl Partition {
    /// Builds a partition, accepting weakly decreasing non-negative parts and
    /// stripping trailing zeros.
    pub fn new(mut parts: Vec<i64>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::Parse(format!(
                    "partition parts must be weakly decreasing, got {:?}",
                    parts
                )));
            }
        }
        if parts.iter().any(|&p| p < 0) {
            return Err(Error::Parse(format!(
                "partition parts must be non-negative, got {:?}",
                parts
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    /// The i-th part with 1-based row index; rows past the end are 0.
    pub fn part(&self, i: usize) -> i64 {
        if i == 0 {
            panic!("partition rows are 1-based");
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts.
    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Adds one cell at the end of the given 1-based row, if the result is
    /// still a partition.
    pub fn add_cell(&self, row: usize) -> Option<Partition> {
        if row == 0 || row > self.len() + 1 {
            return None;
        }
        if row > 1 && self.part(row - 1) == self.part(row) {
            return None;
        }
        let mut parts = self.0.clone();
        if row == self.len() + 1 {
            parts.push(1);
        } else {
            parts[row - 1] += 1;
        }
        Some(Partition(parts))
    }

    /// Removes the last cell of the given 1-based row, if the result is still
    /// a partition.
    pub fn remove_cell(&self, row: usize) -> Option<Partition> {
        if row == 0 || row > self.len() {
            return None;
        }
        if self.part(row) == self.part(row + 1) {
            return None;
        }
        let mut parts = self.0.clone();
        parts[row - 1] -= 1;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Some(Partition(parts))
    }
}

/// Lexicographic comparison on part sequences padded with zeros, so
/// (3) > (2,1) > (1,1,1) and (2) > (1,1).
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        let rows = self.len().max(other.len());
        for i in 1..=rows {
            match self.part(i).cmp(&other.part(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    /// Comma-separated parts; the empty partition prints as "-".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        let strs: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses "3,1"; "" and "-" both denote the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Partition::empty());
        }
        let parts: std::result::Result<Vec<i64>, _> =
            s.split(',').map(|p| p.trim().parse::<i64>()).collect();
        match parts {
            Ok(v) => Partition::new(v),
            Err(e) => Err(Error::Parse(format!("bad partition '{}': {}", s, e))),
        }
    }
}

/// Dominance order: true when `a` ⊴ `b`.  Partitions of different sizes are
/// incomparable, so the function returns false for them (even when a == b
/// would hold after padding).
pub fn dominance_leq(a: &Partition, b: &Partition) -> bool {
    if a.size() != b.size() {
        return false;
    }
    let rows = a.len().max(b.len());
    let (mut pa, mut pb) = (0i64, 0i64);
    for i in 1..=rows {
        pa += a.part(i);
        pb += b.part(i);
        if pa > pb {
            return false;
        }
    }
    true
}

/// All partitions of d in descending lexicographic order.
pub fn partitions_of(d: usize) -> Vec<Partition> {
    fn gen(d: i64, max_part: i64, prefix: &mut Vec<i64>, out: &mut Vec<Partition>) {
        if d == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        let hi = d.min(max_part);
        for first in (1..=hi).rev() {
            prefix.push(first);
            gen(d - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    gen(d as i64, d as i64, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// Charged partitions and multipartitions
// ---------------------------------------------------------------------------

/// A partition together with an integer charge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChargedPartition {
    pub partition: Partition,
    pub charge: i64,
}

impl ChargedPartition {
    pub fn new(partition: Partition, charge: i64) -> Self {
        ChargedPartition { partition, charge }
    }
}

impl fmt::Display for ChargedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.partition, self.charge)
    }
}

/// A tuple of partitions with one integer charge per component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChargedMultipartition {
    components: Vec<Partition>,
    charges: Vec<i64>,
}

impl ChargedMultipartition {
    pub fn new(components: Vec<Partition>, charges: Vec<i64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Parse("multipartition needs at least one component".into()));
        }
        if components.len() != charges.len() {
            return Err(Error::Parse(format!(
                "{} components but {} charges",
                components.len(),
                charges.len()
            )));
        }
        Ok(ChargedMultipartition { components, charges })
    }

    /// The all-empty multipartition with the given charges.
    pub fn vacuum(charges: Vec<i64>) -> Result<Self> {
        let components = vec![Partition::empty(); charges.len()];
        ChargedMultipartition::new(components, charges)
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn charges(&self) -> &[i64] {
        &self.charges
    }

    /// Component by 0-based index.
    pub fn component(&self, idx: usize) -> &Partition {
        &self.components[idx]
    }

    /// Number of components.
    pub fn level(&self) -> usize {
        self.components.len()
    }

    pub fn total_size(&self) -> i64 {
        self.components.iter().map(|p| p.size()).sum()
    }

    pub fn charge_sum(&self) -> i64 {
        self.charges.iter().sum()
    }

    pub fn is_vacuum(&self) -> bool {
        self.components.iter().all(|p| p.is_empty())
    }

    /// Component partitions joined by '|', e.g. "2,1|-" for ((2,1), ∅).
    pub fn label(&self) -> String {
        let strs: Vec<String> = self.components.iter().map(|p| p.to_string()).collect();
        strs.join("|")
    }

    /// Replaces one component, reusing the same charges.
    pub fn with_component(&self, idx: usize, replacement: Partition) -> Self {
        let mut components = self.components.clone();
        components[idx] = replacement;
        ChargedMultipartition { components, charges: self.charges.clone() }
    }
}

impl fmt::Display for ChargedMultipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let charges: Vec<String> = self.charges.iter().map(|c| c.to_string()).collect();
        write!(f, "({}; {})", self.label(), charges.join(","))
    }
}

/// Parses "2,1|-|3" into component partitions (no charges).
pub fn parse_components(s: &str) -> Result<Vec<Partition>> {
    s.split('|').map(Partition::from_str).collect()
}

/// All tuples of `levels` partitions with total size d, enumerated by
/// composition of d (first component largest first), each slot in descending
/// lexicographic order.
pub fn multipartitions_of(d: usize, levels: usize) -> Vec<Vec<Partition>> {
    fn gen(d: usize, slots: usize, prefix: &mut Vec<Partition>, out: &mut Vec<Vec<Partition>>) {
        if slots == 0 {
            if d == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for here in (0..=d).rev() {
            for p in partitions_of(here) {
                prefix.push(p);
                gen(d - here, slots - 1, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    gen(d, levels, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// β-numbers and index decomposition
// ---------------------------------------------------------------------------

/// First `len` β-numbers of a charged partition: k_i = λ_i + s − i + 1.
pub fn beta_sequence(p: &Partition, s: i64, len: usize) -> Vec<i64> {
    (1..=len as i64).map(|i| p.part(i as usize) + s - i + 1).collect()
}

/// Writes k = a + n(b−1) − nlm with a ∈ {1, …, n}, b ∈ {1, …, l}, m ∈ ℤ and
/// returns (a, b, m).
pub fn decompose_index(k: i64, n: usize, l: usize) -> (i64, i64, i64) {
    let period = (n * l) as i64;
    let mut t = k.rem_euclid(period);
    if t == 0 {
        t = period;
    }
    let b = (t + n as i64 - 1).div_euclid(n as i64);
    let a = t - n as i64 * (b - 1);
    let m = (t - k) / period;
    debug_assert!(1 <= a && a <= n as i64 && 1 <= b && b <= l as i64);
    debug_assert_eq!(compose_index(a, b, m, n, l), k);
    (a, b, m)
}

/// Inverse of [`decompose_index`].
pub fn compose_index(a: i64, b: i64, m: i64, n: usize, l: usize) -> i64 {
    a + n as i64 * (b - 1) - (n * l) as i64 * m
}

/// One of the two ways of regrouping a β-sequence into residue classes:
/// by the b-part (giving l components) or by the a-part (giving n components).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ClassBy {
    B,
    A,
}

/// Internal helper bundling the class/value order isomorphisms.
///
/// Grouping by b, the map k ↦ a − nm is an order isomorphism from
/// {k : b(k) = b} onto ℤ; grouping by a, the map k ↦ b − lm plays the same
/// role.  All regrouping code below works through these two maps.
#[derive(Clone, Copy, Debug)]
struct ClassMap {
    n: usize,
    l: usize,
    by: ClassBy,
}

impl ClassMap {
    fn new(n: usize, l: usize, by: ClassBy) -> Self {
        assert!(n >= 1 && l >= 1);
        ClassMap { n, l, by }
    }

    fn period(&self) -> i64 {
        (self.n * self.l) as i64
    }

    fn num_classes(&self) -> usize {
        match self.by {
            ClassBy::B => self.l,
            ClassBy::A => self.n,
        }
    }

    /// 0-based class of an index.
    fn class_of(&self, k: i64) -> usize {
        let (a, b, _) = decompose_index(k, self.n, self.l);
        match self.by {
            ClassBy::B => (b - 1) as usize,
            ClassBy::A => (a - 1) as usize,
        }
    }

    /// Order-isomorphism value of an index within its class.
    fn value_of(&self, k: i64) -> i64 {
        let (a, b, m) = decompose_index(k, self.n, self.l);
        match self.by {
            ClassBy::B => a - self.n as i64 * m,
            ClassBy::A => b - self.l as i64 * m,
        }
    }

    /// Inverse of [`value_of`] on the given 0-based class.
    fn index_of(&self, class: usize, v: i64) -> i64 {
        match self.by {
            ClassBy::B => {
                let n = self.n as i64;
                let a = (v - 1).rem_euclid(n) + 1;
                let m = (a - v) / n;
                compose_index(a, class as i64 + 1, m, self.n, self.l)
            }
            ClassBy::A => {
                let l = self.l as i64;
                let b = (v - 1).rem_euclid(l) + 1;
                let m = (b - v) / l;
                compose_index(class as i64 + 1, b, m, self.n, self.l)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// The two regrouping bijections
// ---------------------------------------------------------------------------

fn iota_general(p: &Partition, s: i64, map: &ClassMap) -> ChargedMultipartition {
    let period = map.period();
    // Any cut R ≥ |λ| works; round up to a full period so each class is hit.
    let cut = ((p.size().max(1) + period - 1) / period) * period;
    let betas = beta_sequence(p, s, cut as usize);
    let mut class_values: Vec<Vec<i64>> = vec![Vec::new(); map.num_classes()];
    for &k in &betas {
        class_values[map.class_of(k)].push(k);
    }
    let floor = s - cut; // indices below the cut are exactly all k ≤ floor
    let mut components = Vec::with_capacity(map.num_classes());
    let mut charges = Vec::with_capacity(map.num_classes());
    for (c, ks) in class_values.iter().enumerate() {
        let values: Vec<i64> = ks.iter().map(|&k| map.value_of(k)).collect();
        debug_assert!(values.windows(2).all(|w| w[0] > w[1]));
        // Largest below-the-cut index of this class; its value tops the tail.
        let mut k = floor;
        while map.class_of(k) != c {
            k -= 1;
        }
        let tail_top = map.value_of(k);
        let charge = tail_top + values.len() as i64;
        let parts: Vec<i64> = values
            .iter()
            .enumerate()
            .map(|(i0, &v)| v - charge + i0 as i64)
            .collect();
        let comp = Partition::new(parts).expect("regrouped class is a valid partition");
        components.push(comp);
        charges.push(charge);
    }
    // Charges always sum back to s; component sizes need not sum to |λ|,
    // since a charge shift away from the vacuum soaks up part of the size.
    let out = ChargedMultipartition::new(components, charges).expect("consistent lengths");
    debug_assert_eq!(out.charge_sum(), s);
    out
}

fn iota_general_inverse(cmp: &ChargedMultipartition, map: &ClassMap) -> Result<(Partition, i64)> {
    if cmp.level() != map.num_classes() {
        return Err(Error::Domain(format!(
            "expected {} components, got {}",
            map.num_classes(),
            cmp.level()
        )));
    }
    let s = cmp.charge_sum();
    let period = map.period();
    let charge_spread: i64 = cmp.charges().iter().map(|c| c.abs()).sum();
    let mut cut = period * (cmp.total_size() + charge_spread + s.abs() + 2);
    for _ in 0..48 {
        if let Some(found) = try_invert(cmp, map, s, cut) {
            return Ok(found);
        }
        cut *= 2;
    }
    Err(Error::Internal(
        "regrouping inverse failed to stabilise; input multipartition is inconsistent".into(),
    ))
}

/// Reconstructs all β-numbers ≥ s − cut + 1 from the per-class sequences and
/// checks the remaining ones already follow the vacuum pattern.  Returns None
/// when the cut was too shallow for that check to hold.
fn try_invert(
    cmp: &ChargedMultipartition,
    map: &ClassMap,
    s: i64,
    cut: i64,
) -> Option<(Partition, i64)> {
    let k_floor = s - cut + 1;
    let mut merged: Vec<i64> = Vec::new();
    let mut next_below: Vec<i64> = Vec::new();
    for c in 0..map.num_classes() {
        // Smallest index ≥ k_floor in this class bounds the reconstruction.
        let mut k = k_floor;
        while map.class_of(k) != c {
            k += 1;
        }
        let v_min = map.value_of(k);
        let charge = cmp.charges()[c];
        let comp = cmp.component(c);
        let mut i: i64 = 1;
        loop {
            let v = comp.part(i as usize) + charge - i + 1;
            if v < v_min {
                next_below.push(map.index_of(c, v));
                break;
            }
            merged.push(map.index_of(c, v));
            i += 1;
        }
    }
    merged.sort_unstable_by(|x, y| y.cmp(x));
    let count = merged.len() as i64;
    // The largest index not reconstructed must be the next vacuum β-number;
    // otherwise part of the partition still sits below the cut.
    let largest_remaining = *next_below.iter().max().expect("at least one class");
    if largest_remaining != s - count {
        return None;
    }
    let parts: Vec<i64> = merged
        .iter()
        .enumerate()
        .map(|(i0, &k)| k - s + i0 as i64)
        .collect();
    let p = Partition::new(parts).expect("merged β-numbers give a valid partition");
    Some((p, s))
}

/// Regroups a charged partition into l charged partitions via the b-classes
/// of its β-numbers.
pub fn iota_l(p: &Partition, s: i64, n: usize, l: usize) -> ChargedMultipartition {
    iota_general(p, s, &ClassMap::new(n, l, ClassBy::B))
}

/// Inverse of [`iota_l`].
pub fn iota_l_inverse(cmp: &ChargedMultipartition, n: usize, l: usize) -> Result<(Partition, i64)> {
    iota_general_inverse(cmp, &ClassMap::new(n, l, ClassBy::B))
}

/// Regroups a charged partition into n charged partitions via the a-classes
/// of its β-numbers.
pub fn iota_n(p: &Partition, s: i64, n: usize, l: usize) -> ChargedMultipartition {
    iota_general(p, s, &ClassMap::new(n, l, ClassBy::A))
}

/// Inverse of [`iota_n`].
pub fn iota_n_inverse(cmp: &ChargedMultipartition, n: usize, l: usize) -> Result<(Partition, i64)> {
    iota_general_inverse(cmp, &ClassMap::new(n, l, ClassBy::A))
}

/// All partitions of `d` whose l-tuple label carries the given charge vector,
/// in descending lexicographic order.  These index one block of the bar and
/// transition matrices: both maps preserve the degree and the charge vector.
pub fn partitions_with_component(
    d: usize,
    s: i64,
    n: usize,
    l: usize,
    component: &[i64],
) -> Vec<Partition> {
    partitions_of(d)
        .into_iter()
        .filter(|p| iota_l(p, s, n, l).charges() == component)
        .collect()
}

/// The distinct l-tuple charge vectors occurring among partitions of `d` at
/// total charge `s`, each paired with its block of partitions (descending
/// lexicographic).  Blocks appear in order of their largest member.
pub fn component_blocks(d: usize, s: i64, n: usize, l: usize) -> Vec<(Vec<i64>, Vec<Partition>)> {
    let mut blocks: Vec<(Vec<i64>, Vec<Partition>)> = Vec::new();
    for p in partitions_of(d) {
        let charges = iota_l(&p, s, n, l).charges().to_vec();
        match blocks.iter_mut().find(|(c, _)| *c == charges) {
            Some((_, members)) => members.push(p),
            None => blocks.push((charges, vec![p])),
        }
    }
    blocks
}

// ---------------------------------------------------------------------------
// Reordering sign
// ---------------------------------------------------------------------------

fn phi_statistic_general(
    cmp: &ChargedMultipartition,
    map: &ClassMap,
    extra_periods: i64,
) -> Result<i64> {
    let (lambda, s) = iota_general_inverse(cmp, map)?;
    let vacuum = ChargedMultipartition::vacuum(cmp.charges().to_vec())?;
    let (lambda0, s0) = iota_general_inverse(&vacuum, map)?;
    debug_assert_eq!(s, s0);
    let period = map.period();
    let min_len = lambda.size().max(lambda0.size()).max(1);
    let cut = ((min_len + period - 1) / period) * period + extra_periods * period;
    let classes: Vec<usize> = beta_sequence(&lambda, s, cut as usize)
        .iter()
        .map(|&k| map.class_of(k))
        .collect();
    let classes0: Vec<usize> = beta_sequence(&lambda0, s, cut as usize)
        .iter()
        .map(|&k| map.class_of(k))
        .collect();
    let inversions = |cs: &[usize]| -> i64 {
        let mut count = 0i64;
        for j in 1..cs.len() {
            for i in 0..j {
                if cs[i] < cs[j] {
                    count += 1;
                }
            }
        }
        count
    };
    Ok(inversions(&classes) - inversions(&classes0))
}

/// Count Φ comparing the class pattern of a multipartition's β-sequence with
/// the vacuum of the same charges; grouping by b.  The associated basis
/// vector carries the sign (−1)^Φ.
pub fn phi_statistic(cmp: &ChargedMultipartition, n: usize, l: usize) -> Result<i64> {
    phi_statistic_general(cmp, &ClassMap::new(n, l, ClassBy::B), 0)
}

/// (−1)^Φ for the b-grouping.
pub fn phi_sign(cmp: &ChargedMultipartition, n: usize, l: usize) -> Result<i64> {
    Ok(if phi_statistic(cmp, n, l)? % 2 == 0 { 1 } else { -1 })
}

/// Count Φ for the a-grouping (n components).
pub fn phi_statistic_n(cmp: &ChargedMultipartition, n: usize, l: usize) -> Result<i64> {
    phi_statistic_general(cmp, &ClassMap::new(n, l, ClassBy::A), 0)
}

/// (−1)^Φ for the a-grouping.
pub fn phi_sign_n(cmp: &ChargedMultipartition, n: usize, l: usize) -> Result<i64> {
    Ok(if phi_statistic_n(cmp, n, l)? % 2 == 0 { 1 } else { -1 })
}

#[cfg(test)]
pub(crate) fn phi_statistic_padded(
    cmp: &ChargedMultipartition,
    n: usize,
    l: usize,
    by_b: bool,
    extra_periods: i64,
) -> Result<i64> {
    let by = if by_b { ClassBy::B } else { ClassBy::A };
    phi_statistic_general(cmp, &ClassMap::new(n, l, by), extra_periods)
}

// ---------------------------------------------------------------------------
// Nodes
// ---------------------------------------------------------------------------

/// A cell of a multipartition diagram together with its content and colour.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Node {
    /// 1-based row inside the component.
    pub row: usize,
    /// 1-based column.
    pub col: i64,
    /// 0-based component index.
    pub component: usize,
    /// s_b + col − row for the component's charge s_b.
    pub content: i64,
    /// Content reduced modulo the colour modulus, in 0..modulus.
    pub colour: i64,
}

impl Node {
    /// Nodes are ordered by (content, component); both coordinates ascending.
    pub fn order_key(&self) -> (i64, usize) {
        (self.content, self.component)
    }
}

fn make_node(cmp: &ChargedMultipartition, comp: usize, row: usize, col: i64, modulus: usize) -> Node {
    let content = cmp.charges()[comp] + col - row as i64;
    Node {
        row,
        col,
        component: comp,
        content,
        colour: content.rem_euclid(modulus as i64),
    }
}

/// All addable nodes of a multipartition, sorted by (content, component).
pub fn addable_nodes(cmp: &ChargedMultipartition, modulus: usize) -> Vec<Node> {
    let mut out = Vec::new();
    for (c, p) in cmp.components().iter().enumerate() {
        for row in 1..=p.len() + 1 {
            if row == 1 || p.part(row - 1) > p.part(row) {
                out.push(make_node(cmp, c, row, p.part(row) + 1, modulus));
            }
        }
    }
    out.sort_by_key(Node::order_key);
    out
}

/// All removable nodes of a multipartition, sorted by (content, component).
pub fn removable_nodes(cmp: &ChargedMultipartition, modulus: usize) -> Vec<Node> {
    let mut out = Vec::new();
    for (c, p) in cmp.components().iter().enumerate() {
        for row in 1..=p.len() {
            if p.part(row) > p.part(row + 1) {
                out.push(make_node(cmp, c, row, p.part(row), modulus));
            }
        }
    }
    out.sort_by_key(Node::order_key);
    out
}

/// Addable r-nodes above the anchor minus removable r-nodes above it,
/// "above" meaning strictly greater in the (content, component) order.
pub fn node_count_above(cmp: &ChargedMultipartition, r: i64, modulus: usize, anchor: &Node) -> i64 {
    let add = addable_nodes(cmp, modulus)
        .iter()
        .filter(|nd| nd.colour == r && nd.order_key() > anchor.order_key())
        .count() as i64;
    let rem = removable_nodes(cmp, modulus)
        .iter()
        .filter(|nd| nd.colour == r && nd.order_key() > anchor.order_key())
        .count() as i64;
    add - rem
}

/// Addable r-nodes below the anchor minus removable r-nodes below it.
pub fn node_count_below(cmp: &ChargedMultipartition, r: i64, modulus: usize, anchor: &Node) -> i64 {
    let add = addable_nodes(cmp, modulus)
        .iter()
        .filter(|nd| nd.colour == r && nd.order_key() < anchor.order_key())
        .count() as i64;
    let rem = removable_nodes(cmp, modulus)
        .iter()
        .filter(|nd| nd.colour == r && nd.order_key() < anchor.order_key())
        .count() as i64;
    add - rem
}

/// All addable r-nodes minus all removable r-nodes.
pub fn node_count_total(cmp: &ChargedMultipartition, r: i64, modulus: usize) -> i64 {
    let add = addable_nodes(cmp, modulus).iter().filter(|nd| nd.colour == r).count() as i64;
    let rem = removable_nodes(cmp, modulus).iter().filter(|nd| nd.colour == r).count() as i64;
    add - rem
}

/// Applies an addable node returned by [`addable_nodes`].
pub fn apply_add(cmp: &ChargedMultipartition, node: &Node) -> ChargedMultipartition {
    let grown = cmp
        .component(node.component)
        .add_cell(node.row)
        .expect("node is addable");
    cmp.with_component(node.component, grown)
}

/// Applies a removable node returned by [`removable_nodes`].
pub fn apply_remove(cmp: &ChargedMultipartition, node: &Node) -> ChargedMultipartition {
    let shrunk = cmp
        .component(node.component)
        .remove_cell(node.row)
        .expect("node is removable");
    cmp.with_component(node.component, shrunk)
}

// ---------------------------------------------------------------------------
// Cylindrical multipartitions
// ---------------------------------------------------------------------------

/// Tests the cylindrical condition for a charged multipartition with colours
/// taken modulo n.  Requires the charges to lie in the principal domain
/// n > s_1 ≥ s_2 ≥ … ≥ s_l ≥ 0.
pub fn is_cylindrical(cmp: &ChargedMultipartition, n: usize) -> Result<bool> {
    let charges = cmp.charges();
    let l = cmp.level();
    let in_domain = charges.windows(2).all(|w| w[0] >= w[1])
        && charges[0] < n as i64
        && charges[l - 1] >= 0;
    if !in_domain {
        return Err(Error::Domain(format!(
            "charges {:?} outside the principal domain {} > s_1 ≥ … ≥ s_l ≥ 0",
            charges, n
        )));
    }
    // Row nesting: each component's rows must fit under the next one's after
    // shifting by the charge difference, wrapping the last back to the first
    // with an extra shift of n.
    for b in 0..l {
        let (upper, lower, shift) = if b + 1 < l {
            (cmp.component(b + 1), cmp.component(b), charges[b] - charges[b + 1])
        } else {
            (cmp.component(0), cmp.component(l - 1), n as i64 + charges[l - 1] - charges[0])
        };
        // In the principal domain the shift is ≥ 0 (≥ 1 for the wrap), so the
        // inequality upper_i ≥ lower_{i+shift} is only binding while i+shift
        // stays within lower's nonzero rows.
        let mut i: usize = 1;
        while i as i64 + shift <= lower.len() as i64 {
            let j = (i as i64 + shift) as usize;
            if upper.part(i) < lower.part(j) {
                return Ok(false);
            }
            i += 1;
        }
    }
    // Colour condition: for every occurring row length, the colours of the
    // rightmost cells of rows of that length must miss at least one residue.
    let mut by_len: std::collections::BTreeMap<i64, std::collections::BTreeSet<i64>> =
        std::collections::BTreeMap::new();
    for (c, comp) in cmp.components().iter().enumerate() {
        for row in 1..=comp.len() {
            let k = comp.part(row);
            let colour = (charges[c] + k - row as i64).rem_euclid(n as i64);
            by_len.entry(k).or_default().insert(colour);
        }
    }
    for colours in by_len.values() {
        if colours.len() == n {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
