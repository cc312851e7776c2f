//! Degrees of partitions of finite ordered sets, and literal enumerations of the
//! q-identities built from them.
//!
//! Everything here is brute force on purpose: these sums serve as oracles for the
//! quantum binomials in [`crate::laurent`] and for the degree bookkeeping of colorings.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::laurent::{qbinom, LaurentPoly};

pub type IntSet = BTreeSet<i64>;

/// A pair of disjoint subsets `(Y, Z)` of a totally ordered ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedSubsetPair {
    y: IntSet,
    z: IntSet,
}

impl OrderedSubsetPair {
    pub fn new(y: IntSet, z: IntSet) -> Result<Self> {
        if let Some(common) = y.intersection(&z).next() {
            return Err(Error::Domain(format!(
                "subsets are not disjoint (both contain {common})"
            )));
        }
        Ok(Self { y, z })
    }

    pub fn y(&self) -> &IntSet {
        &self.y
    }

    pub fn z(&self) -> &IntSet {
        &self.z
    }

    /// `#{(y,z) : y < z} - #{(y,z) : y > z}`.
    pub fn degree(&self) -> i64 {
        degree_unchecked(&self.y, &self.z)
    }
}

fn degree_unchecked<'a>(
    y: impl IntoIterator<Item = &'a i64> + Clone,
    z: impl IntoIterator<Item = &'a i64> + Clone,
) -> i64 {
    let mut d = 0;
    for a in y {
        for b in z.clone() {
            d += (b - a).signum();
        }
    }
    d
}

/// Degree `d(Y ⊔ Z)` of a pair of disjoint integer sets.
pub fn partition_degree(y: &IntSet, z: &IntSet) -> Result<i64> {
    if !y.is_disjoint(z) {
        return Err(Error::Domain("partition_degree: Y and Z overlap".into()));
    }
    Ok(degree_unchecked(y, z))
}

fn complement_in(ground: &IntSet, part: &IntSet) -> IntSet {
    ground.difference(part).copied().collect()
}

/// `Σ q^{d(Y ⊔ Z)}` over all partitions `X = Y ⊔ Z` with `#Y = m`, `#Z = n`.
pub fn partition_sum(x: &IntSet, m: i64, n: i64) -> Result<LaurentPoly> {
    if m < 0 || n < 0 || x.len() as i64 != m + n {
        return Err(Error::Domain(format!(
            "partition_sum: #X = {} but m + n = {}",
            x.len(),
            m + n
        )));
    }
    let mut out = LaurentPoly::zero();
    for ys in x.iter().copied().combinations(m as usize) {
        let y: IntSet = ys.into_iter().collect();
        let z = complement_in(x, &y);
        out.add_term(degree_unchecked(&y, &z), 1.into());
    }
    Ok(out)
}

fn check_subsets_of_interval(sets: &[&IntSet], upper: i64) -> Result<()> {
    for s in sets {
        if s.iter().any(|&v| v < 1 || v > upper) {
            return Err(Error::Domain(format!(
                "set {s:?} is not inside [1, {upper}]"
            )));
        }
    }
    Ok(())
}

/// Checks the interval-splitting rule for degrees:
/// `d(X⊔Y) = d(X₁⊔Y₁) + d(X₂⊔Y₂) + #X₁·#Y₂ − #Y₁·#X₂`
/// where index 1 is the part inside `[1,k]` and index 2 the part inside `[k+1,M]`.
pub fn split_degree_check(x: &IntSet, y: &IntSet, upper: i64, k: i64) -> Result<bool> {
    check_subsets_of_interval(&[x, y], upper)?;
    if k < 1 || k > upper - 1 {
        return Err(Error::Domain(format!(
            "split point {k} outside [1, {}]",
            upper - 1
        )));
    }
    let whole = partition_degree(x, y)?;
    let (x1, x2): (IntSet, IntSet) = x.iter().partition(|&&v| v <= k);
    let (y1, y2): (IntSet, IntSet) = y.iter().partition(|&&v| v <= k);
    let rhs =
        degree_unchecked(&x1, &y1) + degree_unchecked(&x2, &y2) + (x1.len() * y2.len()) as i64
            - (y1.len() * x2.len()) as i64;
    Ok(whole == rhs)
}

/// Both sides of the key q-identity for fixed disjoint `X`, `Y` with `#X = #Y + l`, `l ≥ 0`:
///
/// * left: `Σ_{X = X₁⊔X₂, #X₁ = k1} q^{d(X₁⊔X₂) + d(Y⊔X₁)}`
/// * right: `Σ_{j₂} (l choose k1 − j₂)_q Σ_{Y = Y₁⊔Y₂, #Y₂ = j₂} q^{d(Y₁⊔Y₂) + d(Y₂⊔X)}`
///
/// The `j₂` sum stops at `min(k1, #Y)`; beyond it either the binomial or the inner sum vanishes.
pub fn key_identity_sides(x: &IntSet, y: &IntSet, k1: i64) -> Result<(LaurentPoly, LaurentPoly)> {
    if !x.is_disjoint(y) {
        return Err(Error::Domain("key identity: X and Y overlap".into()));
    }
    if x.len() < y.len() {
        return Err(Error::Domain(format!(
            "key identity needs #X >= #Y, got {} < {}",
            x.len(),
            y.len()
        )));
    }
    let l = (x.len() - y.len()) as i64;

    let mut lhs = LaurentPoly::zero();
    if k1 >= 0 && k1 as usize <= x.len() {
        for x1v in x.iter().copied().combinations(k1 as usize) {
            let x1: IntSet = x1v.into_iter().collect();
            let x2 = complement_in(x, &x1);
            lhs.add_term(
                degree_unchecked(&x1, &x2) + degree_unchecked(y, &x1),
                1.into(),
            );
        }
    }

    let mut rhs = LaurentPoly::zero();
    for j2 in 0..=k1.min(y.len() as i64).max(-1) {
        let coeff = qbinom(l, k1 - j2);
        if coeff.is_zero() {
            continue;
        }
        let mut inner = LaurentPoly::zero();
        for y2v in y.iter().copied().combinations(j2 as usize) {
            let y2: IntSet = y2v.into_iter().collect();
            let y1 = complement_in(y, &y2);
            inner.add_term(
                degree_unchecked(&y1, &y2) + degree_unchecked(&y2, x),
                1.into(),
            );
        }
        rhs += &coeff * &inner;
    }
    Ok((lhs, rhs))
}
