use iforms_core::calculus::{d, kappa, lie, SlotPermutation};
use iforms_core::coeffs::{Poly, Space};
use iforms_core::forms::{flatten, normalize, Form};
use iforms_core::grading::{koszul_sign, MultiDegree, Sign};
use iforms_core::json::{form_from_json, form_to_json, tensor_from_json, tensor_to_json};
use iforms_core::random::Sampler;
use iforms_core::tensors::{embed, extract};
use proptest::prelude::*;

fn setup(seed: u64) -> (Sampler, Space) {
    let mut sampler = Sampler::new(seed);
    let space = sampler.space();
    (sampler, space)
}

fn shuffle(sampler: &mut Sampler, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = sampler.range(0, i);
        p.swap(i, j);
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_axioms(seed in any::<u64>()) {
        let (mut r, s) = setup(seed);
        let (a, b, c) = (r.poly(&s), r.poly(&s), r.poly(&s));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(&s), a.clone());
    }

    #[test]
    fn partials_obey_leibniz(seed in any::<u64>()) {
        let (mut r, s) = setup(seed);
        let (a, b) = (r.poly(&s), r.poly(&s));
        for i in 0..s.dim() {
            prop_assert_eq!((&a * &b).partial(i), &(&a.partial(i) * &b) + &(&a * &b.partial(i)));
        }
    }

    #[test]
    fn bracket_is_a_lie_algebra(seed in any::<u64>()) {
        let (mut r, s) = setup(seed);
        let (x, y, z) = (r.vector_field(&s), r.vector_field(&s), r.vector_field(&s));
        let xy = x.bracket(&y).unwrap();
        prop_assert!(xy.try_add(&y.bracket(&x).unwrap()).unwrap().is_zero());
        let jacobi = y.bracket(&z).unwrap().bracket(&x).unwrap().try_add(&xy.bracket(&z).unwrap()).unwrap()
            .try_add(&z.bracket(&x).unwrap().bracket(&y).unwrap()).unwrap();
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn wedge_is_associative_and_unital(seed in any::<u64>()) {
        let (mut r, s) = setup(seed);
        let (a, b, c) = (r.form(&s, 3), r.form(&s, 3), r.form(&s, 3));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &Form::one(&s), a.clone());
        prop_assert_eq!(&Form::one(&s) * &a, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn normalize_is_idempotent(seed in any::<u64>()) {
        let (mut r, s) = setup(seed);
        let w = r.form(&s, 4);
        let raw = w.terms().map(|(f, c)| (c.clone(), flatten(f))).collect();
        prop_assert_eq!(normalize(&s, raw).unwrap(), w);
    }

    #[test]
    fn normalize_ignores_factor_order(seed in any::<u64>()) {
        let (mut r, s) = setup(seed);
        let gens: Vec<_> = (0..r.range(1, 4)).map(|_| r.generator(&s, 3)).collect();
        let p = shuffle(&mut r, gens.len());
        let shuffled: Vec<_> = p.iter().map(|&i| gens[i].clone()).collect();
        let degrees: Vec<MultiDegree> = gens.iter().map(|g| g.degree()).collect();
        let sign = koszul_sign(&degrees, &p);
        let coeff = if sign == Sign::Minus { -&Poly::one(&s) } else { Poly::one(&s) };
        prop_assert_eq!(
            normalize(&s, vec![(coeff, shuffled)]).unwrap(),
            normalize(&s, vec![(Poly::one(&s), gens)]).unwrap()
        );
    }

    #[test]
    fn koszul_sign_is_a_cocycle(seed in any::<u64>()) {
        let (mut r, _) = setup(seed);
        let n = r.range(1, 5);
        let degrees: Vec<MultiDegree> = (0..n).map(|_| r.index_set(4).degree()).collect();
        let q = shuffle(&mut r, n);
        let p = shuffle(&mut r, n);
        let moved: Vec<MultiDegree> = q.iter().map(|&i| degrees[i].clone()).collect();
        let composite: Vec<usize> = p.iter().map(|&i| q[i]).collect();
        let lhs = koszul_sign(&degrees, &composite).as_i64();
        let rhs = koszul_sign(&degrees, &q).as_i64() * koszul_sign(&moved, &p).as_i64();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multidegree_components_reassemble(seed in any::<u64>()) {
        let (mut r, s) = setup(seed);
        let w = r.form(&s, 3);
        let mut total = Form::zero(&s);
        for (deg, part) in w.multidegree_components() {
            prop_assert_eq!(part.homogeneous_degree(), Some(deg));
            total = &total + &part;
        }
        prop_assert_eq!(total, w);
    }

    #[test]
    fn odd_generators_square_to_zero(seed in any::<u64>()) {
        let (mut r, s) = setup(seed);
        let g = r.generator(&s, 4);
        let w = Form::generator(&s, g.clone()).unwrap();
        prop_assert_eq!((&w * &w).is_zero(), g.is_odd());
    }

    #[test]
    fn d_is_a_graded_derivation(seed in any::<u64>()) {
        let (mut r, s) = setup(seed);
        let a = r.homogeneous_form(&s, 3);
        let b = r.form(&s, 3);
        let k = r.range(1, 4) as u32;
        let deg = a.homogeneous_degree().unwrap_or_else(MultiDegree::zero);
        let second = &a * &d(k, &b);
        let second = if deg.pairing(&MultiDegree::unit(k)) { -&second } else { second };
        prop_assert_eq!(d(k, &(&a * &b)), &(&d(k, &a) * &b) + &second);
    }

    #[test]
    fn kappa_is_a_group_action(seed in any::<u64>()) {
        let (mut r, s) = setup(seed);
        let w = r.form(&s, 3);
        let (sigma, tau) = (r.permutation(3), r.permutation(3));
        prop_assert_eq!(kappa(&sigma, &kappa(&tau, &w)), kappa(&sigma.compose(&tau), &w));
        prop_assert_eq!(kappa(&sigma.inverse(), &kappa(&sigma, &w)), w.clone());
        prop_assert_eq!(kappa(&SlotPermutation::identity(), &w), w.clone());
        let v = r.form(&s, 3);
        prop_assert_eq!(kappa(&sigma, &(&w * &v)), &kappa(&sigma, &w) * &kappa(&sigma, &v));
    }

    #[test]
    fn lie_is_a_degree_zero_derivation(seed in any::<u64>()) {
        let (mut r, s) = setup(seed);
        let x = r.vector_field(&s);
        let (a, b) = (r.form(&s, 2), r.form(&s, 2));
        let lhs = lie(&x, &(&a * &b)).unwrap();
        prop_assert_eq!(lhs, &(&lie(&x, &a).unwrap() * &b) + &(&a * &lie(&x, &b).unwrap()));
    }

    #[test]
    fn json_round_trips(seed in any::<u64>()) {
        let (mut r, s) = setup(seed);
        let w = r.form(&s, 4);
        let text = form_to_json(&w);
        let back = form_from_json(&text).unwrap();
        prop_assert_eq!(form_to_json(&back), text);
        prop_assert_eq!(back, w);
        let order = r.range(0, 3);
        let t = r.tensor(&s, order);
        let text = tensor_to_json(&t);
        prop_assert_eq!(tensor_to_json(&tensor_from_json(&text).unwrap()), text);
        prop_assert_eq!(extract(&embed(&t), t.order()).unwrap(), t);
    }
}
