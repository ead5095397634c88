//! Tensor embedding checked against direct component arithmetic.

use iforms_core::calculus::{d, kappa, lie, SlotPermutation};
use iforms_core::coeffs::{int, Poly, Space, VectorField};
use iforms_core::forms::Form;
use iforms_core::random::Sampler;
use iforms_core::tensors::{
    embed, evaluate_components, evaluate_insertion, extract, find_linearity_violation, index_tuples, insert_slot,
    is_tensor, lie_tensor, permute, tensor_product, CovariantTensor, Detection,
};

fn xy() -> Space {
    Space::new(["x", "y"]).unwrap()
}

fn dx_dy(s: &Space) -> CovariantTensor {
    CovariantTensor::from_components(s, 2, [(vec![0, 1], Poly::one(s))]).unwrap()
}

/// Σ_ν T_ν · X₁^{ν₁} ⋯ X_p^{ν_p}, summed over every index tuple.
fn brute_contraction(t: &CovariantTensor, fields: &[VectorField]) -> Poly {
    let s = t.space();
    let mut total = Poly::zero(s);
    for idx in index_tuples(s.dim(), t.order()) {
        let mut term = t.component(&idx);
        for (x, &nu) in fields.iter().zip(&idx) {
            term = &term * x.component(nu);
        }
        total = &total + &term;
    }
    total
}

#[test]
fn embed_examples() {
    let s = xy();
    let d1x = Form::d_coord(&s, &[1], "x").unwrap();
    let d2y = Form::d_coord(&s, &[2], "y").unwrap();
    let d1y = Form::d_coord(&s, &[1], "y").unwrap();
    let d2x = Form::d_coord(&s, &[2], "x").unwrap();
    assert_eq!(embed(&dx_dy(&s)), &d1x * &d2y);
    let f = Poly::var(&s, 0).pow(2);
    assert_eq!(embed(&CovariantTensor::scalar(f.clone())), Form::from_poly(f));
    let sym = CovariantTensor::from_components(&s, 2, [(vec![0, 1], Poly::one(&s)), (vec![1, 0], Poly::one(&s))]).unwrap();
    assert_eq!(embed(&sym), &(&d1x * &d2y) + &(&d1y * &d2x));
}

#[test]
fn embed_of_differentials_matches_wedge_of_d() {
    let mut sampler = Sampler::new(5);
    for _ in 0..30 {
        let s = sampler.space();
        let fs: Vec<Poly> = (0..3).map(|_| sampler.poly(&s)).collect();
        let t = CovariantTensor::from_differentials(&s, &fs).unwrap();
        let mut expected = Form::one(&s);
        for (k, f) in fs.iter().enumerate() {
            expected = &expected * &d(k as u32 + 1, &Form::from_poly(f.clone()));
        }
        assert_eq!(embed(&t), expected);
    }
}

#[test]
fn detection_examples() {
    let s = xy();
    let w = embed(&dx_dy(&s));
    assert_eq!(is_tensor(&w, 2).unwrap(), Detection::Tensor(dx_dy(&s)));
    let obstruction = Form::d_coord(&s, &[1, 2], "x").unwrap();
    match is_tensor(&(&w + &obstruction), 2).unwrap() {
        Detection::Obstructed(o) => assert_eq!(o, obstruction),
        other => panic!("accepted {other:?}"),
    }
    assert_eq!(is_tensor(&Form::zero(&s), 2).unwrap(), Detection::Tensor(CovariantTensor::zero(&s, 2)));
    let violation = find_linearity_violation(&obstruction, 2).unwrap().expect("violation");
    assert_ne!(violation.scaled_argument, violation.scaled_value);
    assert!(find_linearity_violation(&w, 2).unwrap().is_none());
}

#[test]
fn evaluation_examples() {
    let s = xy();
    let dx = VectorField::coordinate(&s, 0);
    let dy = VectorField::coordinate(&s, 1);
    let w = &d(1, &Form::from_poly(Poly::var(&s, 0).pow(2))) * &d(2, &Form::from_poly(Poly::var(&s, 1)));
    assert_eq!(evaluate_insertion(&w, &[dx.clone(), dy.clone()]).unwrap(), Poly::var(&s, 0).scale(&int(2)));
    let d1x = Form::d_coord(&s, &[1], "x").unwrap();
    assert!(evaluate_insertion(&d1x, std::slice::from_ref(&dx)).unwrap().is_one());
    assert!(evaluate_components(&dx_dy(&s), &[dx.clone(), dy]).unwrap().is_one());
    assert!(evaluate_components(&CovariantTensor::zero(&s, 2), &[dx.clone(), dx.clone()]).unwrap().is_zero());
    let dxdx = CovariantTensor::from_components(&s, 2, [(vec![0, 0], Poly::one(&s))]).unwrap();
    let y_dx = VectorField::new(&s, vec![Poly::var(&s, 1), Poly::zero(&s)]).unwrap();
    assert_eq!(evaluate_components(&dxdx, &[y_dx, dx]).unwrap(), Poly::var(&s, 1));
}

#[test]
fn evaluation_matches_brute_force() {
    let mut sampler = Sampler::new(17);
    for case in 0..60 {
        let s = sampler.space();
        let p = case % 4;
        let t = sampler.tensor(&s, p);
        let fields: Vec<VectorField> = (0..p).map(|_| sampler.vector_field(&s)).collect();
        let expected = brute_contraction(&t, &fields);
        assert_eq!(evaluate_components(&t, &fields).unwrap(), expected);
        assert_eq!(evaluate_insertion(&embed(&t), &fields).unwrap(), expected);
    }
}

#[test]
fn slot_and_permutation_examples() {
    let s = xy();
    let w = embed(&dx_dy(&s));
    let dx = VectorField::coordinate(&s, 0);
    assert_eq!(insert_slot(&w, 2, &dx, 1).unwrap(), Form::d_coord(&s, &[1], "y").unwrap());
    assert!(insert_slot(&w, 2, &VectorField::zero(&s), 2).unwrap().is_zero());

    let swap = SlotPermutation::transposition(1, 2).unwrap();
    let dy_dx = CovariantTensor::from_components(&s, 2, [(vec![1, 0], Poly::one(&s))]).unwrap();
    assert_eq!(permute(&swap, &dx_dy(&s)).unwrap(), dy_dx);
    assert_eq!(embed(&dy_dx), kappa(&swap, &w));
    assert_eq!(permute(&SlotPermutation::identity(), &dx_dy(&s)).unwrap(), dx_dy(&s));
    assert_eq!(permute(&swap, &permute(&swap, &dx_dy(&s)).unwrap()).unwrap(), dx_dy(&s));
}

#[test]
fn permutation_reindexes_components() {
    // (σT)(X₁,…,X_p) = T(X_{σ(1)},…,X_{σ(p)}).
    let mut sampler = Sampler::new(23);
    for _ in 0..20 {
        let s = sampler.space();
        let t = sampler.tensor(&s, 3);
        let fields: Vec<VectorField> = (0..3).map(|_| sampler.vector_field(&s)).collect();
        for sigma in SlotPermutation::all_of_degree(3) {
            let shuffled: Vec<VectorField> = (1..=3).map(|i| fields[sigma.apply(i) as usize - 1].clone()).collect();
            let lhs = evaluate_components(&permute(&sigma, &t).unwrap(), &fields).unwrap();
            assert_eq!(lhs, brute_contraction(&t, &shuffled));
        }
    }
}

#[test]
fn product_and_lie_examples() {
    let s = xy();
    let dx = CovariantTensor::from_components(&s, 1, [(vec![0], Poly::one(&s))]).unwrap();
    let dy = CovariantTensor::from_components(&s, 1, [(vec![1], Poly::one(&s))]).unwrap();
    assert_eq!(tensor_product(&dx, &dy).unwrap(), dx_dy(&s));
    let f = Poly::var(&s, 1).pow(2);
    assert_eq!(
        tensor_product(&dx_dy(&s), &CovariantTensor::scalar(f.clone())).unwrap(),
        dx_dy(&s).mul_poly(&f).unwrap()
    );

    let dxdx = CovariantTensor::from_components(&s, 2, [(vec![0, 0], Poly::one(&s))]).unwrap();
    assert!(lie_tensor(&VectorField::coordinate(&s, 0), &dxdx).unwrap().is_zero());
    let euler_x = VectorField::new(&s, vec![Poly::var(&s, 0), Poly::zero(&s)]).unwrap();
    assert_eq!(lie_tensor(&euler_x, &dx).unwrap(), dx);
}

#[test]
fn lie_tensor_agrees_with_lie_on_forms() {
    let mut sampler = Sampler::new(31);
    for case in 0..40 {
        let s = sampler.space();
        let t = sampler.tensor(&s, case % 4);
        let x = sampler.vector_field(&s);
        assert_eq!(embed(&lie_tensor(&x, &t).unwrap()), lie(&x, &embed(&t)).unwrap());
        assert_eq!(extract(&embed(&t), t.order()).unwrap(), t);
    }
}
