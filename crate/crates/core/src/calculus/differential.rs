use crate::coeffs::Poly;
use crate::error::{Error, Result};
use crate::forms::{Form, FormBuilder, Generator};
use crate::grading::{IndexSet, MultiDegree};

use super::operator::GradedDerivation;

/// The iterated exterior differential `d_k` as a derivation of degree `e_k`.
///
/// On coefficients `f ↦ Σ_μ ∂f/∂x^μ · d_k x^μ`; on generators
/// `d_K x^μ ↦ d_{K∪{k}} x^μ`, or zero when `k ∈ K`.
pub fn exterior(slot: u32) -> GradedDerivation {
    assert!(slot >= 1, "differential slots start at 1");
    GradedDerivation::new(
        MultiDegree::unit(slot),
        move |f| differential_of_coeff(slot, f),
        move |space, g| {
            if g.slots().contains(slot) {
                Form::zero(space)
            } else {
                let lifted = Generator::new(g.slots().with(slot), g.coord()).expect("nonempty");
                Form::generator(space, lifted).expect("coordinate in range")
            }
        },
    )
}

fn differential_of_coeff(slot: u32, f: &Poly) -> Form {
    let space = f.space();
    let mut b = FormBuilder::new(space);
    for mu in 0..space.dim() {
        b.add_product(f.partial(mu), &[Generator::single(slot, mu)]);
    }
    b.finish()
}

/// `d_k ω`.
pub fn d(slot: u32, form: &Form) -> Form {
    exterior(slot).apply_unchecked(form)
}

/// `d_K f = d_{k₁}⋯d_{k_r} f`, with `d_∅ f = f`.
pub fn d_iterated(slots: &IndexSet, f: &Poly) -> Form {
    d_iterated_form(slots, &Form::from_poly(f.clone()))
}

/// `d_K` applied to an arbitrary form.
pub fn d_iterated_form(slots: &IndexSet, form: &Form) -> Form {
    slots.iter().fold(form.clone(), |acc, k| d(k, &acc))
}

/// `d_K f` through the closed partition formula: a sum over unordered set
/// partitions `{J₁,…,J_l}` of `K` and coordinate tuples `(μ₁,…,μ_l)` of
/// `∂^l f/∂x^{μ₁}⋯∂x^{μ_l} · d_{J₁}x^{μ₁}∧⋯∧d_{J_l}x^{μ_l}`.
///
/// Blocks are listed by least element. They are pairwise disjoint, so the
/// factors commute and the order carries no sign.
pub fn d_partition(slots: &IndexSet, f: &Poly) -> Result<Form> {
    if slots.is_empty() {
        return Err(Error::InvalidIndexSet("the partition formula needs a nonempty slot set".into()));
    }
    let space = f.space();
    let mut out = FormBuilder::new(space);
    for blocks in set_partitions(slots.as_slice()) {
        let blocks: Vec<IndexSet> = blocks
            .into_iter()
            .map(|b| IndexSet::new(b).expect("blocks are sets"))
            .collect();
        let mut gens = Vec::with_capacity(blocks.len());
        expand_tuples(f, &blocks, &mut gens, &mut out);
    }
    Ok(out.finish())
}

fn expand_tuples(f: &Poly, blocks: &[IndexSet], gens: &mut Vec<Generator>, out: &mut FormBuilder) {
    let depth = gens.len();
    if depth == blocks.len() {
        out.add_product(f.clone(), gens);
        return;
    }
    for mu in 0..f.space().dim() {
        let df = f.partial(mu);
        if df.is_zero() {
            continue;
        }
        gens.push(Generator::new(blocks[depth].clone(), mu).expect("nonempty block"));
        expand_tuples(&df, blocks, gens, out);
        gens.pop();
    }
}

/// All unordered set partitions of `items`, each as a list of blocks
/// ordered by least element (restricted growth strings).
pub fn set_partitions(items: &[u32]) -> Vec<Vec<Vec<u32>>> {
    fn rec(items: &[u32], i: usize, blocks: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        if i == items.len() {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(items[i]);
            rec(items, i + 1, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![items[i]]);
        rec(items, i + 1, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(items, 0, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{int, Space};

    fn setup() -> (Space, Poly, Poly) {
        let s = Space::new(["x", "y"]).unwrap();
        let x = Poly::var(&s, 0);
        let y = Poly::var(&s, 1);
        (s, x, y)
    }

    fn dk(s: &Space, slots: &[u32], c: &str) -> Form {
        Form::d_coord(s, slots, c).unwrap()
    }

    fn set(slots: &[u32]) -> IndexSet {
        IndexSet::new(slots.iter().copied()).unwrap()
    }

    #[test]
    fn chain_rule() {
        let (s, x, _) = setup();
        let got = d(1, &Form::from_poly(x.pow(2)));
        assert_eq!(got, dk(&s, &[1], "x").mul_poly(&x.scale(&int(2))).unwrap());
    }

    #[test]
    fn differentials_on_generators() {
        let (s, _, _) = setup();
        assert_eq!(d(2, &dk(&s, &[1], "x")), dk(&s, &[1, 2], "x"));
        assert!(d(1, &dk(&s, &[1], "x")).is_zero());
    }

    #[test]
    fn leibniz_hand_computations() {
        let (s, x, _) = setup();
        // d1(x·d2y) = d1x ∧ d2y + x·d12y
        let w = dk(&s, &[2], "y").mul_poly(&x).unwrap();
        let expected = &(&dk(&s, &[1], "x") * &dk(&s, &[2], "y")) + &dk(&s, &[1, 2], "y").mul_poly(&x).unwrap();
        assert_eq!(d(1, &w), expected);
        // d2(d1x ∧ d2x) = d12x ∧ d2x
        let w = &dk(&s, &[1], "x") * &dk(&s, &[2], "x");
        assert_eq!(d(2, &w), &dk(&s, &[1, 2], "x") * &dk(&s, &[2], "x"));
        assert!(d(3, &Form::one(&s)).is_zero());
    }

    #[test]
    fn second_iterated_differential_of_square() {
        let (s, x, _) = setup();
        let expected = &dk(&s, &[1, 2], "x").mul_poly(&x.scale(&int(2))).unwrap()
            + &(&dk(&s, &[1], "x") * &dk(&s, &[2], "x")).scale(&int(2));
        let f = x.pow(2);
        assert_eq!(d(1, &d(2, &Form::from_poly(f.clone()))), expected);
        assert_eq!(d_iterated(&set(&[1, 2]), &f), expected);
        assert_eq!(d_partition(&set(&[1, 2]), &f).unwrap(), expected);
    }

    #[test]
    fn iterated_small_cases() {
        let (s, x, y) = setup();
        let xy = &x * &y;
        let expected = &dk(&s, &[1], "x").mul_poly(&y).unwrap() + &dk(&s, &[1], "y").mul_poly(&x).unwrap();
        assert_eq!(d_iterated(&set(&[1]), &xy), expected);
        assert_eq!(d_iterated(&IndexSet::empty(), &xy), Form::from_poly(xy));
    }

    #[test]
    fn partition_formula_product() {
        let (s, x, y) = setup();
        let xy = &x * &y;
        let expected = &(&(&dk(&s, &[1], "x") * &dk(&s, &[2], "y")) + &(&dk(&s, &[1], "y") * &dk(&s, &[2], "x")))
            + &(&dk(&s, &[1, 2], "y").mul_poly(&x).unwrap() + &dk(&s, &[1, 2], "x").mul_poly(&y).unwrap());
        assert_eq!(d_partition(&set(&[1, 2]), &xy).unwrap(), expected);
        assert_eq!(d_iterated(&set(&[1, 2]), &xy), expected);
        assert_eq!(
            d_partition(&set(&[1]), &x.pow(2)).unwrap(),
            dk(&s, &[1], "x").mul_poly(&x.scale(&int(2))).unwrap()
        );
        assert!(d_partition(&IndexSet::empty(), &x).is_err());
    }

    #[test]
    fn partition_formula_three_slots() {
        let (_, x, _) = setup();
        let k = set(&[1, 2, 3]);
        assert_eq!(d_partition(&k, &x.pow(2)).unwrap(), d_iterated(&k, &x.pow(2)));
        assert_eq!(d_partition(&k, &x.pow(3)).unwrap(), d_iterated(&k, &x.pow(3)));
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..=5).map(|n| set_partitions(&(1..=n).collect::<Vec<_>>()).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52]);
    }
}
