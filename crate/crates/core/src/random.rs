//! Seeded generators of random test data at desk scale: two or three
//! coordinates, polynomial degree at most three, slots at most four and
//! wedge length at most four.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::SlotPermutation;
use crate::coeffs::{int, ratio, Exponents, Poly, Rational, SmoothMap, Space, VectorField};
use crate::forms::{normalize, Form, Generator};
use crate::grading::IndexSet;
use crate::tensors::{index_tuples, CovariantTensor};

/// Size limits for generated data.
#[derive(Clone, Debug)]
pub struct Limits {
    pub max_poly_degree: u32,
    pub max_poly_terms: usize,
    /// Degree and term limits for coefficients of forms; kept smaller than
    /// the plain polynomial limits since operators multiply them.
    pub max_coeff_degree: u32,
    pub max_coeff_terms: usize,
    pub max_form_terms: usize,
    pub max_wedge_length: usize,
    pub max_field_degree: u32,
    pub max_map_degree: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_poly_degree: 3,
            max_poly_terms: 4,
            max_coeff_degree: 2,
            max_coeff_terms: 2,
            max_form_terms: 3,
            max_wedge_length: 4,
            max_field_degree: 2,
            max_map_degree: 2,
        }
    }
}

/// A deterministic source of random polynomials, forms, fields and tensors.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    pub limits: Limits,
}

/// Mixes a base seed with stream indices (SplitMix64 finalizer), so that each
/// test case gets an independent, reproducible stream.
pub fn derive_seed(seed: u64, streams: &[u64]) -> u64 {
    let mut z = seed;
    for &s in streams {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_add(s.wrapping_mul(0xD6E8_FEB8_6659_FD93));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
    }
    z
}

const NAMES: [&str; 3] = ["x", "y", "z"];

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), limits: Limits::default() }
    }

    pub fn with_limits(seed: u64, limits: Limits) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), limits }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn range(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        self.rng.gen_range(lo..=hi_inclusive)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// `x, y` or `x, y, z`.
    pub fn space(&mut self) -> Space {
        let n = self.range(2, 3);
        Self::standard_space(n)
    }

    pub fn standard_space(dim: usize) -> Space {
        Space::new(NAMES[..dim].iter().copied()).expect("valid names")
    }

    /// A nonzero rational with small numerator, usually an integer.
    pub fn rational(&mut self) -> Rational {
        let mut n = self.rng.gen_range(1..=4i64);
        if self.coin(0.5) {
            n = -n;
        }
        if self.coin(0.2) {
            ratio(n, self.rng.gen_range(2..=3))
        } else {
            int(n)
        }
    }

    fn exponents(&mut self, dim: usize, max_degree: u32) -> Exponents {
        let total = self.rng.gen_range(0..=max_degree);
        let mut exps = vec![0; dim];
        for _ in 0..total {
            exps[self.rng.gen_range(0..dim)] += 1;
        }
        Exponents::new(exps)
    }

    pub fn poly_with(&mut self, space: &Space, max_degree: u32, max_terms: usize) -> Poly {
        let n = self.range(1, max_terms.max(1));
        let terms: Vec<(Exponents, Rational)> =
            (0..n).map(|_| (self.exponents(space.dim(), max_degree), self.rational())).collect();
        Poly::from_terms(space, terms).expect("matching dimension")
    }

    pub fn poly(&mut self, space: &Space) -> Poly {
        let (d, t) = (self.limits.max_poly_degree, self.limits.max_poly_terms);
        self.poly_with(space, d, t)
    }

    /// Like [`Sampler::poly`] but never zero.
    pub fn nonzero_poly(&mut self, space: &Space) -> Poly {
        loop {
            let p = self.poly(space);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// A non-constant polynomial, so that its differentials do not vanish.
    pub fn nonconstant_poly(&mut self, space: &Space) -> Poly {
        loop {
            let p = self.poly(space);
            if p.degree().unwrap_or(0) > 0 {
                return p;
            }
        }
    }

    pub fn coefficient(&mut self, space: &Space) -> Poly {
        let (d, t) = (self.limits.max_coeff_degree, self.limits.max_coeff_terms);
        self.poly_with(space, d, t)
    }

    /// A nonempty subset of `{1, …, max_slot}`.
    pub fn index_set(&mut self, max_slot: u32) -> IndexSet {
        loop {
            let picked: Vec<u32> = (1..=max_slot).filter(|_| self.coin(0.4)).collect();
            if !picked.is_empty() {
                return IndexSet::new(picked).expect("distinct");
            }
        }
    }

    /// A generator `d_K x^μ` with `K ⊆ {1, …, max_slot}`. Small slot sets are
    /// favored.
    pub fn generator(&mut self, space: &Space, max_slot: u32) -> Generator {
        let slots = if self.coin(0.6) { IndexSet::singleton(self.rng.gen_range(1..=max_slot)) } else { self.index_set(max_slot) };
        Generator::new(slots, self.rng.gen_range(0..space.dim())).expect("nonempty")
    }

    /// A random, generally inhomogeneous form in `Λ_{max_slot}`.
    pub fn form(&mut self, space: &Space, max_slot: u32) -> Form {
        let n = self.range(1, self.limits.max_form_terms);
        let raw = (0..n)
            .map(|_| {
                let len = self.range(0, self.limits.max_wedge_length);
                let gens = (0..len).map(|_| self.generator(space, max_slot)).collect();
                (self.coefficient(space), gens)
            })
            .collect();
        normalize(space, raw).expect("generated over one space")
    }

    /// A nonzero random form; retries until normalization leaves something.
    pub fn nonzero_form(&mut self, space: &Space, max_slot: u32) -> Form {
        loop {
            let w = self.form(space, max_slot);
            if !w.is_zero() {
                return w;
            }
        }
    }

    /// A homogeneous form: every term carries generators with the same slot
    /// sets, with coordinates drawn independently.
    pub fn homogeneous_form(&mut self, space: &Space, max_slot: u32) -> Form {
        let len = self.range(0, self.limits.max_wedge_length);
        let shape: Vec<IndexSet> = (0..len).map(|_| self.generator(space, max_slot).slots().clone()).collect();
        let n = self.range(1, self.limits.max_form_terms);
        let raw = (0..n)
            .map(|_| {
                let gens = shape
                    .iter()
                    .map(|k| Generator::new(k.clone(), self.rng.gen_range(0..space.dim())).expect("nonempty"))
                    .collect();
                (self.coefficient(space), gens)
            })
            .collect();
        normalize(space, raw).expect("generated over one space")
    }

    pub fn vector_field(&mut self, space: &Space) -> VectorField {
        let d = self.limits.max_field_degree;
        let comps = (0..space.dim())
            .map(|_| if self.coin(0.2) { Poly::zero(space) } else { self.poly_with(space, d, 2) })
            .collect();
        VectorField::new(space, comps).expect("matching dimension")
    }

    /// A polynomial map `source → target`.
    pub fn smooth_map(&mut self, source: &Space, target: &Space) -> SmoothMap {
        let d = self.limits.max_map_degree;
        let comps = (0..target.dim()).map(|_| self.poly_with(source, d, 2)).collect();
        SmoothMap::new(source, target, comps).expect("matching dimension")
    }

    /// A covariant tensor with a few nonzero components.
    pub fn tensor(&mut self, space: &Space, order: usize) -> CovariantTensor {
        let tuples = index_tuples(space.dim(), order);
        let n = self.range(1, tuples.len().min(4));
        let entries: Vec<(Vec<usize>, Poly)> =
            (0..n).map(|_| (tuples.choose(&mut self.rng).expect("nonempty").clone(), self.coefficient(space))).collect();
        CovariantTensor::from_components(space, order, entries).expect("valid tuples")
    }

    /// A single monomial of multidegree `e₁ + ⋯ + e_p` containing at least
    /// one generator with two or more slots. Needs `order ≥ 2`.
    pub fn obstruction_term(&mut self, space: &Space, order: usize) -> Form {
        assert!(order >= 2, "obstructions need at least two slots");
        let mut slots: Vec<u32> = (1..=order as u32).collect();
        slots.shuffle(&mut self.rng);
        // First block has size ≥ 2, the rest is cut at random.
        let first = self.range(2, order);
        let mut blocks = vec![slots[..first].to_vec()];
        let mut rest = &slots[first..];
        while !rest.is_empty() {
            let take = self.range(1, rest.len());
            blocks.push(rest[..take].to_vec());
            rest = &rest[take..];
        }
        let gens = blocks
            .into_iter()
            .map(|b| Generator::new(IndexSet::new(b).expect("distinct"), self.rng.gen_range(0..space.dim())).expect("nonempty"))
            .collect();
        let coeff = loop {
            let c = self.coefficient(space);
            if !c.is_zero() {
                break c;
            }
        };
        normalize(space, vec![(coeff, gens)]).expect("generated over one space")
    }

    pub fn permutation(&mut self, degree: u32) -> SlotPermutation {
        let mut images: Vec<u32> = (1..=degree).collect();
        images.shuffle(&mut self.rng);
        SlotPermutation::from_images(&images).expect("a shuffle is a permutation")
    }
}
