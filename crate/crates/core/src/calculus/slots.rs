use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::forms::{Form, Generator};
use crate::grading::IndexSet;

/// A permutation of the slots `1, 2, …` moving finitely many of them.
/// Only the moved slots are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SlotPermutation(BTreeMap<u32, u32>);

impl SlotPermutation {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn transposition(a: u32, b: u32) -> Result<Self> {
        Self::from_cycles(&[vec![a, b]])
    }

    /// Builds a permutation from disjoint cycles, e.g. `[[1, 2, 3], [4, 5]]`.
    pub fn from_cycles(cycles: &[Vec<u32>]) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for cycle in cycles {
            for &k in cycle {
                if k == 0 {
                    return Err(Error::InvalidPermutation("slots start at 1".into()));
                }
                if !seen.insert(k) {
                    return Err(Error::InvalidPermutation(format!("slot {k} appears in two places")));
                }
            }
            for (i, &k) in cycle.iter().enumerate() {
                let image = cycle[(i + 1) % cycle.len()];
                if image != k {
                    map.insert(k, image);
                }
            }
        }
        Ok(SlotPermutation(map))
    }

    /// One-line notation on `{1, …, p}`: `images[i − 1] = σ(i)`.
    pub fn from_images(images: &[u32]) -> Result<Self> {
        let p = images.len() as u32;
        let mut seen = vec![false; images.len()];
        for &k in images {
            if k == 0 || k > p || std::mem::replace(&mut seen[(k - 1) as usize], true) {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a permutation of 1..={p}")));
            }
        }
        Ok(SlotPermutation(
            (1..=p).zip(images.iter().copied()).filter(|(a, b)| a != b).collect(),
        ))
    }

    /// Every permutation of `{1, …, p}`.
    pub fn all_of_degree(p: u32) -> Vec<SlotPermutation> {
        fn rec(rest: &mut Vec<u32>, prefix: &mut Vec<u32>, out: &mut Vec<SlotPermutation>) {
            if rest.is_empty() {
                out.push(SlotPermutation::from_images(prefix).expect("valid"));
                return;
            }
            for i in 0..rest.len() {
                let k = rest.remove(i);
                prefix.push(k);
                rec(rest, prefix, out);
                prefix.pop();
                rest.insert(i, k);
            }
        }
        let mut out = Vec::new();
        rec(&mut (1..=p).collect(), &mut Vec::new(), &mut out);
        out
    }

    pub fn apply(&self, slot: u32) -> u32 {
        self.0.get(&slot).copied().unwrap_or(slot)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SlotPermutation) -> SlotPermutation {
        let support: BTreeSet<u32> = self.0.keys().chain(other.0.keys()).copied().collect();
        SlotPermutation(
            support
                .into_iter()
                .map(|k| (k, self.apply(other.apply(k))))
                .filter(|(a, b)| a != b)
                .collect(),
        )
    }

    pub fn inverse(&self) -> SlotPermutation {
        SlotPermutation(self.0.iter().map(|(&a, &b)| (b, a)).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn moved(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.keys().copied()
    }

    /// Decomposition into nontrivial cycles, each starting at its least slot.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut done = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.0.keys() {
            if done.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            done.insert(start);
            let mut k = self.apply(start);
            while k != start {
                cycle.push(k);
                done.insert(k);
                k = self.apply(k);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for SlotPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("()");
        }
        for c in self.cycles() {
            let parts: Vec<String> = c.iter().map(u32::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// `κ_σ`: the coefficient-fixing algebra automorphism `d_K x^μ ↦ d_{σ(K)} x^μ`.
pub fn kappa(sigma: &SlotPermutation, form: &Form) -> Form {
    relabel_slots(form, |k| sigma.apply(k)).expect("permutations are injective")
}

/// Relabels slots through `map`, which must be injective on the slots that
/// actually occur in `form` (so intersections of index sets, and with them
/// all commutation signs, are preserved).
pub fn relabel_slots<F: Fn(u32) -> u32>(form: &Form, map: F) -> Result<Form> {
    let mut used = BTreeSet::new();
    for (factors, _) in form.terms() {
        for f in factors {
            used.extend(f.generator.slots().iter());
        }
    }
    let mut images = BTreeMap::new();
    for &k in &used {
        let image = map(k);
        if image == 0 {
            return Err(Error::InvalidPermutation(format!("slot {k} is sent to 0")));
        }
        if let Some(prev) = images.insert(image, k) {
            return Err(Error::InvalidPermutation(format!("slots {prev} and {k} are both sent to {image}")));
        }
    }
    let relabel = |g: &Generator| {
        let slots = IndexSet::new(g.slots().iter().map(&map)).expect("injective on used slots");
        Generator::new(slots, g.coord()).expect("nonempty")
    };
    Ok(form.map_monomials(|coeff, gens, out| {
        let mapped: Vec<Generator> = gens.iter().map(relabel).collect();
        out.add_product(coeff.clone(), &mapped);
    }))
}

/// The slot shift `k ↦ k + by`, an injection of the slots.
pub fn shift_slots(form: &Form, by: u32) -> Form {
    relabel_slots(form, |k| k + by).expect("shifts are injective")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{Poly, Space};

    fn dk(s: &Space, slots: &[u32], c: &str) -> Form {
        Form::d_coord(s, slots, c).unwrap()
    }

    #[test]
    fn swaps_slots_one_and_two() {
        let s = Space::new(["x", "y"]).unwrap();
        let t = SlotPermutation::transposition(1, 2).unwrap();
        let w = &(&dk(&s, &[1], "x") * &dk(&s, &[2], "y")) * &dk(&s, &[1, 2], "x");
        let expected = &(&dk(&s, &[2], "x") * &dk(&s, &[1], "y")) * &dk(&s, &[1, 2], "x");
        assert_eq!(kappa(&t, &w), expected);
        assert_eq!(kappa(&t, &dk(&s, &[1, 2], "x")), dk(&s, &[1, 2], "x"));
        let f = Form::from_poly(Poly::var(&s, 0));
        assert_eq!(kappa(&t, &f), f);
    }

    #[test]
    fn reordering_sign_is_genuine() {
        // κ_(12)(d1x ∧ d1y ∧ d2x) = d2x ∧ d2y ∧ d1x = d1x ∧ d2x ∧ d2y
        let s = Space::new(["x", "y"]).unwrap();
        let t = SlotPermutation::transposition(1, 2).unwrap();
        let w = &(&dk(&s, &[1], "x") * &dk(&s, &[1], "y")) * &dk(&s, &[2], "x");
        let expected = &(&dk(&s, &[2], "x") * &dk(&s, &[2], "y")) * &dk(&s, &[1], "x");
        assert_eq!(kappa(&t, &w), expected);
    }

    #[test]
    fn permutation_algebra() {
        let a = SlotPermutation::from_cycles(&[vec![1, 2, 3]]).unwrap();
        let b = SlotPermutation::transposition(1, 2).unwrap();
        assert_eq!(a.compose(&b).apply(1), a.apply(b.apply(1)));
        assert!(a.compose(&a.inverse()).is_identity());
        assert!(b.compose(&b).is_identity());
        assert_eq!(a.to_string(), "(1 2 3)");
        assert_eq!(SlotPermutation::all_of_degree(3).len(), 6);
        assert!(SlotPermutation::from_cycles(&[vec![1, 2], vec![2, 3]]).is_err());
        assert!(SlotPermutation::from_images(&[1, 1]).is_err());
        assert_eq!(SlotPermutation::from_images(&[2, 1]).unwrap(), b);
    }

    #[test]
    fn relabel_requires_injectivity() {
        let s = Space::new(["x"]).unwrap();
        let w = &dk(&s, &[1], "x") * &dk(&s, &[2], "x");
        assert!(relabel_slots(&w, |_| 1).is_err());
        assert_eq!(shift_slots(&dk(&s, &[1], "x"), 2), dk(&s, &[3], "x"));
    }
}
