//! Worked examples with expected values written out by hand.
//!
//! Expected forms are assembled from raw generator products through
//! `normalize`, never through the operator under test.

use iforms_core::calculus::{
    d, d_iterated, d_partition, exterior, graded_commutator, homotopy_h2, include_lambda01, insert, insertion,
    insertion_c, kappa, lambda01_to_lambda1, lie, lie_derivative, project_lambda01, pullback, HomotopyH2, InsertionC,
    Operator, SlotPermutation,
};
use iforms_core::coeffs::{int, ratio, Poly, SmoothMap, Space, VectorField};
use iforms_core::forms::{normalize, Form, Generator};
use iforms_core::grading::IndexSet;

fn xy() -> Space {
    Space::new(["x", "y"]).unwrap()
}

fn g(slots: &[u32], coord: usize) -> Generator {
    Generator::new(IndexSet::new(slots.iter().copied()).unwrap(), coord).unwrap()
}

type Gens<'a> = &'a [(&'a [u32], usize)];

/// Sum of `coeff · product of generators`, with generators given as
/// `(slots, coordinate)` in any order.
fn raw(space: &Space, terms: &[(Poly, Gens)]) -> Form {
    normalize(
        space,
        terms.iter().map(|(c, gens)| (c.clone(), gens.iter().map(|(k, mu)| g(k, *mu)).collect())).collect(),
    )
    .unwrap()
}

fn num(space: &Space, n: i64) -> Poly {
    Poly::integer(space, n)
}

fn x(space: &Space) -> Poly {
    Poly::var(space, 0)
}

fn y(space: &Space) -> Poly {
    Poly::var(space, 1)
}

fn f(p: Poly) -> Form {
    Form::from_poly(p)
}

const X: usize = 0;
const Y: usize = 1;

#[test]
fn normal_form_examples() {
    let s = xy();
    assert_eq!(raw(&s, &[(num(&s, 1), &[(&[1], Y), (&[1], X)])]), raw(&s, &[(num(&s, -1), &[(&[1], X), (&[1], Y)])]));
    assert!(raw(&s, &[(num(&s, 1), &[(&[1], X), (&[1], X)])]).is_zero());
    let mixed = raw(&s, &[(num(&s, 1), &[(&[2], Y), (&[1], X)])]);
    let (factors, c) = mixed.terms().next().unwrap();
    assert!(c.is_one());
    assert_eq!(factors[0].generator, g(&[1], X));
    // (d12 x)^2 survives: |K ∩ K| = 2 is even.
    assert!(!raw(&s, &[(num(&s, 1), &[(&[1, 2], X), (&[1, 2], X)])]).is_zero());
}

#[test]
fn differential_examples() {
    let s = xy();
    let two_x = x(&s).scale(&int(2));
    assert_eq!(d(1, &f(x(&s).pow(2))), raw(&s, &[(two_x.clone(), &[(&[1], X)])]));
    assert_eq!(d(2, &raw(&s, &[(num(&s, 1), &[(&[1], X)])])), raw(&s, &[(num(&s, 1), &[(&[1, 2], X)])]));
    assert!(d(1, &raw(&s, &[(num(&s, 1), &[(&[1], X)])])).is_zero());

    let d12_x2 = raw(&s, &[(two_x.clone(), &[(&[1, 2], X)]), (num(&s, 2), &[(&[1], X), (&[2], X)])]);
    assert_eq!(d(1, &d(2, &f(x(&s).pow(2)))), d12_x2);
    assert_eq!(d_iterated(&IndexSet::new([1, 2]).unwrap(), &x(&s).pow(2)), d12_x2);

    // d1 of x·d2y picks up both Leibniz terms.
    let w = raw(&s, &[(x(&s), &[(&[2], Y)])]);
    let expected = raw(&s, &[(num(&s, 1), &[(&[1], X), (&[2], Y)]), (x(&s), &[(&[1, 2], Y)])]);
    assert_eq!(d(1, &w), expected);

    let w = raw(&s, &[(num(&s, 1), &[(&[1], X), (&[2], X)])]);
    assert_eq!(d(2, &w), raw(&s, &[(num(&s, 1), &[(&[1, 2], X), (&[2], X)])]));
    assert!(d(4, &Form::one(&s)).is_zero());
}

#[test]
fn iterated_and_partition_examples() {
    let s = xy();
    let xy_poly = &x(&s) * &y(&s);
    assert_eq!(
        d_iterated(&IndexSet::singleton(1), &xy_poly),
        raw(&s, &[(y(&s), &[(&[1], X)]), (x(&s), &[(&[1], Y)])])
    );
    assert_eq!(d_iterated(&IndexSet::empty(), &xy_poly), f(xy_poly.clone()));

    let expected = raw(
        &s,
        &[
            (num(&s, 1), &[(&[1], X), (&[2], Y)]),
            (num(&s, 1), &[(&[1], Y), (&[2], X)]),
            (x(&s), &[(&[1, 2], Y)]),
            (y(&s), &[(&[1, 2], X)]),
        ],
    );
    let k12 = IndexSet::new([1, 2]).unwrap();
    assert_eq!(d_partition(&k12, &xy_poly).unwrap(), expected);
    assert_eq!(d_iterated(&k12, &xy_poly), expected);

    // d_{123}(x^2): partitions {123}, {1}{23}, {12}{3}, {13}{2}, {1}{2}{3};
    // the last needs a third derivative and drops out.
    let expected = raw(
        &s,
        &[
            (x(&s).scale(&int(2)), &[(&[1, 2, 3], X)]),
            (num(&s, 2), &[(&[1], X), (&[2, 3], X)]),
            (num(&s, 2), &[(&[1, 2], X), (&[3], X)]),
            (num(&s, 2), &[(&[1, 3], X), (&[2], X)]),
        ],
    );
    let k123 = IndexSet::range(3);
    assert_eq!(d_partition(&k123, &x(&s).pow(2)).unwrap(), expected);
    assert_eq!(d_iterated(&k123, &x(&s).pow(2)), expected);
}

#[test]
fn pullback_examples() {
    let src = Space::new(["x"]).unwrap();
    let tgt = Space::new(["y"]).unwrap();
    let phi = SmoothMap::new(&src, &tgt, vec![Poly::var(&src, 0).pow(2)]).unwrap();
    let two_x = Poly::var(&src, 0).scale(&int(2));
    let d1y = raw(&tgt, &[(Poly::one(&tgt), &[(&[1], 0)])]);
    assert_eq!(pullback(&phi, &d1y).unwrap(), raw(&src, &[(two_x.clone(), &[(&[1], 0)])]));
    let d12y = raw(&tgt, &[(Poly::one(&tgt), &[(&[1, 2], 0)])]);
    let expected = raw(&src, &[(two_x, &[(&[1, 2], 0)]), (Poly::integer(&src, 2), &[(&[1], 0), (&[2], 0)])]);
    assert_eq!(pullback(&phi, &d12y).unwrap(), expected);
    assert_eq!(pullback(&phi, &Form::one(&tgt)).unwrap(), Form::one(&src));
}

#[test]
fn kappa_examples() {
    let s = xy();
    let swap = SlotPermutation::transposition(1, 2).unwrap();
    let w = raw(&s, &[(num(&s, 1), &[(&[1], X), (&[2], Y), (&[1, 2], X)])]);
    let expected = raw(&s, &[(num(&s, 1), &[(&[2], X), (&[1], Y), (&[1, 2], X)])]);
    assert_eq!(kappa(&swap, &w), expected);
    let d12x = raw(&s, &[(num(&s, 1), &[(&[1, 2], X)])]);
    assert_eq!(kappa(&swap, &d12x), d12x);
    let c = f(&x(&s).pow(3) - &y(&s));
    assert_eq!(kappa(&swap, &c), c);
}

#[test]
fn lie_and_insertion_examples() {
    let s = xy();
    let zero = Poly::zero(&s);
    let euler_x = VectorField::new(&s, vec![x(&s), zero.clone()]).unwrap();
    let d1x = raw(&s, &[(num(&s, 1), &[(&[1], X)])]);
    assert_eq!(lie(&euler_x, &d1x).unwrap(), d1x);
    let d12x = raw(&s, &[(num(&s, 1), &[(&[1, 2], X)])]);
    assert_eq!(lie(&euler_x, &d12x).unwrap(), d12x);
    let p = &x(&s).pow(2) * &y(&s);
    assert_eq!(lie(&euler_x, &f(p.clone())).unwrap(), f(euler_x.apply(&p).unwrap()));

    let dx = VectorField::coordinate(&s, X);
    let dy = VectorField::coordinate(&s, Y);
    assert_eq!(insert(&dx, 1, &d1x).unwrap(), Form::one(&s));
    assert!(insert(&dx, 1, &raw(&s, &[(num(&s, 1), &[(&[2], X)])])).unwrap().is_zero());
    let y_dx = VectorField::new(&s, vec![y(&s), zero]).unwrap();
    assert_eq!(insert(&y_dx, 1, &d12x).unwrap(), raw(&s, &[(num(&s, 1), &[(&[2], Y)])]));
    let w = raw(&s, &[(num(&s, 1), &[(&[1], X), (&[2], Y)])]);
    assert_eq!(insert(&dy, 2, &w).unwrap(), d1x);
}

#[test]
fn commutator_examples() {
    let s = Space::new(["x", "y", "z"]).unwrap();
    let mut sampler = iforms_core::random::Sampler::new(11);
    for _ in 0..20 {
        let w = sampler.form(&s, 3);
        assert!(graded_commutator(exterior(1), exterior(2)).apply(&w).unwrap().is_zero());
        let w1 = sampler.form(&s, 1);
        let x = sampler.vector_field(&s);
        let cartan = graded_commutator(insertion(&x, 1), exterior(1)).apply(&w1).unwrap();
        assert_eq!(cartan, lie_derivative(&x).apply(&w1).unwrap());
    }
    let s = xy();
    let w = raw(&s, &[(num(&s, 1), &[(&[1], X), (&[2], X)])]);
    assert_eq!(graded_commutator(InsertionC::new(), exterior(2)).apply(&w).unwrap(), w);
}

#[test]
fn homotopy_apparatus_examples() {
    let s = xy();
    let d1x = raw(&s, &[(num(&s, 1), &[(&[1], X)])]);
    let d12x = raw(&s, &[(num(&s, 1), &[(&[1, 2], X)])]);
    let d2x = raw(&s, &[(num(&s, 1), &[(&[2], X)])]);
    assert_eq!(insertion_c(&d12x).unwrap(), d1x);
    assert!(insertion_c(&d2x).unwrap().is_zero());
    let w = &d12x * &d2x;
    assert_eq!(insertion_c(&w).unwrap(), &d1x * &d2x);

    assert!(homotopy_h2(&d1x).unwrap().is_zero());
    assert_eq!(graded_commutator(HomotopyH2::new(), exterior(2)).apply(&d1x).unwrap(), d1x);
    assert!(homotopy_h2(&raw(&s, &[(y(&s), &[(&[2], X)])])).unwrap().is_zero());
    assert_eq!(homotopy_h2(&w).unwrap(), &d1x * &d2x);

    // Slot-1 degree two: H₂ divides by two.
    let w = raw(&s, &[(num(&s, 1), &[(&[1, 2], X), (&[1], Y)])]);
    let expected = raw(&s, &[(Poly::constant(&s, ratio(1, 2)), &[(&[1], X), (&[1], Y)])]);
    assert_eq!(homotopy_h2(&w).unwrap(), expected);

    let mixed = &(&f(x(&s)) + &raw(&s, &[(y(&s), &[(&[2], X)])])) + &raw(&s, &[(x(&s), &[(&[1], X)])]);
    let low = &f(x(&s)) + &raw(&s, &[(y(&s), &[(&[2], X)])]);
    assert_eq!(project_lambda01(&mixed).unwrap(), low);
    assert!(project_lambda01(&d12x).unwrap().is_zero());
    assert_eq!(project_lambda01(&include_lambda01(&low).unwrap()).unwrap(), low);

    let w = raw(&s, &[(x(&s), &[(&[2], X), (&[2], Y)])]);
    assert_eq!(lambda01_to_lambda1(&w).unwrap(), raw(&s, &[(x(&s), &[(&[1], X), (&[1], Y)])]));
    assert_eq!(lambda01_to_lambda1(&f(num(&s, 5))).unwrap(), f(num(&s, 5)));
}
