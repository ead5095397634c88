//! Multidegrees in `Z^∞`, index sets of differential slots, and the parity
//! pairing that decides every commutation sign in the engine.
//!
//! Nothing outside this module decides a sign: reorderings go through
//! [`koszul_sign`] and derivation rules through [`MultiDegree::pairing`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A finitely supported integer vector indexed by slots `k ≥ 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiDegree(BTreeMap<u32, i64>);

impl MultiDegree {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit vector `e_k`.
    pub fn unit(slot: u32) -> Self {
        let mut d = Self::zero();
        d.0.insert(slot, 1);
        d
    }

    pub fn from_entries<I: IntoIterator<Item = (u32, i64)>>(entries: I) -> Self {
        let mut d = Self::zero();
        for (k, v) in entries {
            d.add_entry(k, v);
        }
        d
    }

    fn add_entry(&mut self, slot: u32, value: i64) {
        if value == 0 {
            return;
        }
        let e = self.0.entry(slot).or_insert(0);
        *e += value;
        if *e == 0 {
            self.0.remove(&slot);
        }
    }

    pub fn get(&self, slot: u32) -> i64 {
        self.0.get(&slot).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    /// `(Σ_k D_k·E_k) mod 2`, returned as `true` when odd.
    pub fn pairing(&self, other: &MultiDegree) -> bool {
        let (small, large) = if self.0.len() <= other.0.len() { (self, other) } else { (other, self) };
        small
            .0
            .iter()
            .filter(|(k, v)| *v & 1 != 0 && large.get(**k) & 1 != 0)
            .count()
            % 2
            == 1
    }

    pub fn scaled(&self, factor: i64) -> MultiDegree {
        MultiDegree::from_entries(self.entries().map(|(k, v)| (k, v * factor)))
    }
}

impl Add for &MultiDegree {
    type Output = MultiDegree;

    fn add(self, rhs: &MultiDegree) -> MultiDegree {
        let mut out = self.clone();
        for (&k, &v) in &rhs.0 {
            out.add_entry(k, v);
        }
        out
    }
}

impl Sub for &MultiDegree {
    type Output = MultiDegree;

    fn sub(self, rhs: &MultiDegree) -> MultiDegree {
        self + &(-rhs)
    }
}

impl Neg for &MultiDegree {
    type Output = MultiDegree;

    fn neg(self) -> MultiDegree {
        MultiDegree(self.0.iter().map(|(&k, &v)| (k, -v)).collect())
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(k, v)| match v {
                1 => format!("e{k}"),
                -1 => format!("-e{k}"),
                _ => format!("{v}e{k}"),
            })
            .collect();
        f.write_str(&parts.join("+").replace("+-", "-"))
    }
}

/// A finite set of positive slot indices, stored sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet(Vec<u32>);

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    pub fn singleton(slot: u32) -> Self {
        assert!(slot >= 1, "slots are positive");
        IndexSet(vec![slot])
    }

    /// Builds a set from arbitrary slots. Duplicates are an error since they
    /// usually signal a typo in `d{1,1}`-style input.
    pub fn new<I: IntoIterator<Item = u32>>(slots: I) -> Result<Self> {
        let mut v: Vec<u32> = slots.into_iter().collect();
        if v.contains(&0) {
            return Err(Error::InvalidIndexSet("slots start at 1".into()));
        }
        v.sort_unstable();
        let len = v.len();
        v.dedup();
        if v.len() != len {
            return Err(Error::InvalidIndexSet("repeated slot".into()));
        }
        Ok(IndexSet(v))
    }

    /// `{1, …, n}`.
    pub fn range(n: u32) -> Self {
        IndexSet((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, slot: u32) -> bool {
        self.0.binary_search(&slot).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn largest(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn smallest(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn with(&self, slot: u32) -> IndexSet {
        let mut v = self.0.clone();
        if let Err(pos) = v.binary_search(&slot) {
            v.insert(pos, slot);
        }
        IndexSet(v)
    }

    pub fn without(&self, slot: u32) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|&k| k != slot).collect())
    }

    pub fn intersection_len(&self, other: &IndexSet) -> usize {
        self.0.iter().filter(|k| other.contains(**k)).count()
    }

    /// The indicator vector `e_K`.
    pub fn degree(&self) -> MultiDegree {
        degree_of_indexset(self)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn degree_of_indexset(set: &IndexSet) -> MultiDegree {
    MultiDegree(set.0.iter().map(|&k| (k, 1)).collect())
}

pub fn parity_pairing(a: &MultiDegree, b: &MultiDegree) -> bool {
    a.pairing(b)
}

/// A commutation sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(−1)^parity`.
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    /// `(−1)^{⟨a, b⟩}`.
    pub fn of_pairing(a: &MultiDegree, b: &MultiDegree) -> Sign {
        Sign::from_parity(a.pairing(b))
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_minus() != rhs.is_minus())
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// Sign picked up when the graded factors with degrees `degrees` are
/// reordered so that position `i` receives the factor originally at
/// `permutation[i]`.
///
/// Equals the product of `(−1)^{⟨D_a, D_b⟩}` over all pairs whose relative
/// order is inverted.
pub fn koszul_sign(degrees: &[MultiDegree], permutation: &[usize]) -> Sign {
    debug_assert_eq!(degrees.len(), permutation.len());
    debug_assert!(is_permutation(permutation));
    let mut odd = false;
    for i in 0..permutation.len() {
        for j in i + 1..permutation.len() {
            let (a, b) = (permutation[i], permutation[j]);
            if a > b && degrees[a].pairing(&degrees[b]) {
                odd = !odd;
            }
        }
    }
    Sign::from_parity(odd)
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&i| i < p.len() && !std::mem::replace(&mut seen[i], true))
}
