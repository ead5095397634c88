//! Randomized identity suites.
//!
//! Every identity is checked on independently seeded cases: case `i` of
//! identity `j` draws from `derive_seed(seed, [j, i])`, so reports do not
//! depend on the execution strategy or on which other suites run.

use std::fmt;
use std::str::FromStr;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::calculus::{
    d, d_iterated, d_partition, exterior, graded_commutator, homotopy_h2, insertion, kappa,
    lambda01_to_lambda1, lie_derivative, project_lambda01, pullback, shift_slots, HomotopyH2, Operator,
    SlotPermutation,
};
use crate::coeffs::ratio;
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::grading::{IndexSet, Sign};
use crate::random::{derive_seed, Sampler};
use crate::render::{form_text, poly_text};
use crate::tensors::{
    alternate, contract, embed, evaluate_components, evaluate_insertion, extract, find_linearity_violation,
    insert_slot, is_tensor, kappa_embed, lie_tensor, linearity_defect, permute, tensor_product, CovariantTensor,
    Detection,
};

/// A named group of identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Commutation,
    Partition,
    Kappa,
    Homotopy,
    Tensor,
    Pullback,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Commutation, Suite::Partition, Suite::Kappa, Suite::Homotopy, Suite::Tensor, Suite::Pullback];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Commutation => "commutation",
            Suite::Partition => "partition",
            Suite::Kappa => "kappa",
            Suite::Homotopy => "homotopy",
            Suite::Tensor => "tensor",
            Suite::Pullback => "pullback",
        }
    }

    pub fn identities(self) -> &'static [Identity] {
        match self {
            Suite::Commutation => COMMUTATION,
            Suite::Partition => PARTITION,
            Suite::Kappa => KAPPA,
            Suite::Homotopy => HOMOTOPY,
            Suite::Tensor => TENSOR,
            Suite::Pullback => PULLBACK,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a suite selector: one suite name or `all`.
pub fn parse_suites(name: &str) -> Result<Vec<Suite>> {
    if name == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    Suite::from_str(name).map(|s| vec![s])
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(name: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::UnknownSuite(name.to_string()))
    }
}

/// `None` on success, otherwise a description of the counterexample.
pub type Verdict = Option<String>;

/// One identity: a name and a check run on freshly sampled data.
pub struct Identity {
    pub name: &'static str,
    pub check: fn(&mut Sampler) -> Result<Verdict>,
}

/// How cases are distributed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses the rayon pool when the `parallel` feature is enabled and runs
    /// sequentially otherwise.
    #[default]
    Parallel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub suite: Suite,
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// Case index and description of the first failing case.
    pub first_counterexample: Option<(usize, String)>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub seed: u64,
    pub identities: Vec<IdentityReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(IdentityReport::passed)
    }

    pub fn total_cases(&self) -> usize {
        self.identities.iter().map(|r| r.cases).sum()
    }

    pub fn suite(&self, suite: Suite) -> impl Iterator<Item = &IdentityReport> {
        self.identities.iter().filter(move |r| r.suite == suite)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        let mut current = None;
        for r in &self.identities {
            if current != Some(r.suite) {
                writeln!(f, "suite {}", r.suite)?;
                current = Some(r.suite);
            }
            if r.passed() {
                writeln!(f, "  PASS  {} ({} cases)", r.name, r.cases)?;
            } else {
                writeln!(f, "  FAIL  {} ({} of {} cases failed)", r.name, r.failures, r.cases)?;
                if let Some((i, msg)) = &r.first_counterexample {
                    writeln!(f, "        first counterexample (case {i}): {msg}")?;
                }
            }
        }
        let failed = self.identities.iter().filter(|r| !r.passed()).count();
        write!(
            f,
            "{} identities, {} cases, {}",
            self.identities.len(),
            self.total_cases(),
            if failed == 0 { "all passed".to_string() } else { format!("{failed} failed") }
        )
    }
}

fn run_case(identity: &Identity, seed: u64, stream: u64, case: usize) -> Verdict {
    let mut sampler = Sampler::new(derive_seed(seed, &[stream, case as u64]));
    match (identity.check)(&mut sampler) {
        Ok(v) => v,
        Err(e) => Some(format!("error: {e}")),
    }
}

fn run_cases(identity: &Identity, seed: u64, stream: u64, cases: usize, exec: Execution) -> Vec<Verdict> {
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..cases).into_par_iter().map(|i| run_case(identity, seed, stream, i)).collect(),
        _ => (0..cases).map(|i| run_case(identity, seed, stream, i)).collect(),
    }
}

/// Runs one identity. `stream` separates the random streams of identities.
pub fn run_identity(suite: Suite, index: usize, seed: u64, cases: usize, exec: Execution) -> IdentityReport {
    let identity = &suite.identities()[index];
    let stream = stream_id(suite, index);
    let verdicts = run_cases(identity, seed, stream, cases, exec);
    let failures = verdicts.iter().filter(|v| v.is_some()).count();
    let first_counterexample = verdicts.into_iter().enumerate().find_map(|(i, v)| v.map(|m| (i, m)));
    IdentityReport { suite, name: identity.name, cases, failures, first_counterexample }
}

fn stream_id(suite: Suite, index: usize) -> u64 {
    let s = Suite::ALL.iter().position(|&x| x == suite).expect("listed") as u64;
    (s << 16) | index as u64
}

pub fn run_suites(suites: &[Suite], seed: u64, cases: usize, exec: Execution) -> Report {
    let mut identities = Vec::new();
    for &suite in suites {
        for i in 0..suite.identities().len() {
            identities.push(run_identity(suite, i, seed, cases, exec));
        }
    }
    Report { seed, identities }
}

/// Runs a suite by name (`all` selects every suite).
pub fn run_checks(suite: &str, seed: u64, cases: usize) -> Result<Report> {
    run_checks_with(suite, seed, cases, Execution::default())
}

pub fn run_checks_with(suite: &str, seed: u64, cases: usize, exec: Execution) -> Result<Report> {
    Ok(run_suites(&parse_suites(suite)?, seed, cases, exec))
}

// ---- helpers -------------------------------------------------------------

fn compare(lhs: &Form, rhs: &Form, input: &Form) -> Verdict {
    (lhs != rhs).then(|| format!("input {}: lhs {} vs rhs {}", form_text(input), form_text(lhs), form_text(rhs)))
}

fn expect_zero(value: &Form, input: &Form) -> Verdict {
    (!value.is_zero()).then(|| format!("input {}: got {}", form_text(input), form_text(value)))
}

fn slots_up_to(max: u32) -> impl Iterator<Item = u32> {
    1..=max
}

// ---- commutation ---------------------------------------------------------

static COMMUTATION: &[Identity] = &[
    Identity { name: "d_k d_k = 0 for k in 1..4", check: check_d_squared },
    Identity { name: "[d_i, d_j] = 0 for i, j in 1..4", check: check_d_commute },
    Identity { name: "a b = (-1)^<a,b> b a for homogeneous a, b", check: check_graded_commutativity },
    Identity { name: "[i_X, i_Y] = 0 on Λ1", check: check_insertions_commute },
    Identity { name: "[L_X, d] = 0 on Λ1", check: check_lie_d },
    Identity { name: "[i_X, L_Y] = i_[X,Y] on Λ1", check: check_insertion_lie },
    Identity { name: "[L_X, L_Y] = L_[X,Y] on Λ1", check: check_lie_lie },
    Identity { name: "[i_X, d] = L_X on Λ1", check: check_cartan },
];

fn check_d_squared(r: &mut Sampler) -> Result<Verdict> {
    let s = r.space();
    let w = r.form(&s, 4);
    for k in slots_up_to(4) {
        if let Some(v) = expect_zero(&d(k, &d(k, &w)), &w) {
            return Ok(Some(format!("k = {k}, {v}")));
        }
    }
    Ok(None)
}

fn check_d_commute(r: &mut Sampler) -> Result<Verdict> {
    let s = r.space();
    let w = r.form(&s, 4);
    for i in slots_up_to(4) {
        for j in slots_up_to(4).filter(|&j| j != i) {
            let c = graded_commutator(exterior(i), exterior(j)).apply(&w)?;
            if let Some(v) = expect_zero(&c, &w) {
                return Ok(Some(format!("i = {i}, j = {j}, {v}")));
            }
        }
    }
    Ok(None)
}

fn check_graded_commutativity(r: &mut Sampler) -> Result<Verdict> {
    let s = r.space();
    let a = r.homogeneous_form(&s, 4);
    let b = r.homogeneous_form(&s, 4);
    let (Some(da), Some(db)) = (a.homogeneous_degree(), b.homogeneous_degree()) else {
        return Ok(None);
    };
    let ab = a.wedge(&b)?;
    let ba = b.wedge(&a)?;
    let rhs = if Sign::of_pairing(&da, &db).is_minus() { -&ba } else { ba };
    Ok((ab != rhs).then(|| format!("a = {}, b = {}", form_text(&a), form_text(&b))))
}

fn check_insertions_commute(r: &mut Sampler) -> Result<Verdict> {
    let s = r.space();
    let (x, y) = (r.vector_field(&s), r.vector_field(&s));
    let w = r.form(&s, 1);
    let c = graded_commutator(insertion(&x, 1), insertion(&y, 1)).apply(&w)?;
    Ok(expect_zero(&c, &w))
}

fn check_lie_d(r: &mut Sampler) -> Result<Verdict> {
    let s = r.space();
    let x = r.vector_field(&s);
    let w = r.form(&s, 1);
    let c = graded_commutator(lie_derivative(&x), exterior(1)).apply(&w)?;
    Ok(expect_zero(&c, &w))
}

fn check_insertion_lie(r: &mut Sampler) -> Result<Verdict> {
    let s = r.space();
    let (x, y) = (r.vector_field(&s), r.vector_field(&s));
    let w = r.form(&s, 1);
    let lhs = graded_commutator(insertion(&x, 1), lie_derivative(&y)).apply(&w)?;
    let rhs = insertion(&x.bracket(&y)?, 1).apply(&w)?;
    Ok(compare(&lhs, &rhs, &w))
}

fn check_lie_lie(r: &mut Sampler) -> Result<Verdict> {
    let s = r.space();
    let (x, y) = (r.vector_field(&s), r.vector_field(&s));
    let w = r.form(&s, 1);
    let lhs = graded_commutator(lie_derivative(&x), lie_derivative(&y)).apply(&w)?;
    let rhs = lie_derivative(&x.bracket(&y)?).apply(&w)?;
    Ok(compare(&lhs, &rhs, &w))
}

fn check_cartan(r: &mut Sampler) -> Result<Verdict> {
    let s = r.space();
    let x = r.vector_field(&s);
    let w = r.form(&s, 1);
    let lhs = graded_commutator(insertion(&x, 1), exterior(1)).apply(&w)?;
    let rhs = lie_derivative(&x).apply(&w)?;
    Ok(compare(&lhs, &rhs, &w))
}

// ---- partition -----------------------------------------------------------

static PARTITION: &[Identity] = &[
    Identity { name: "d_K f by partitions = d_k1...d_kr f for all K in 1..4 with |K| <= 3", check: check_partition },
    Identity { name: "d_K f is independent of the order of the d_k", check: check_iterated_order },
];

/// Every nonempty `K ⊆ {1, …, 4}` with `|K| ≤ 3`.
pub fn small_index_sets() -> Vec<IndexSet> {
    (1u32..16)
        .map(|mask| IndexSet::new((1..=4).filter(|k| mask & (1 << (k - 1)) != 0)).expect("distinct"))
        .filter(|k| k.len() <= 3)
        .collect()
}

fn check_partition(r: &mut Sampler) -> Result<Verdict> {
    let s = r.space();
    let f = r.poly(&s);
    for k in small_index_sets() {
        let lhs = d_partition(&k, &f)?;
        let rhs = d_iterated(&k, &f);
        if lhs != rhs {
            return Ok(Some(format!("K = {k}, f = {}: {} vs {}", poly_text(&f), form_text(&lhs), form_text(&rhs))));
        }
    }
    Ok(None)
}

fn check_iterated_order(r: &mut Sampler) -> Result<Verdict> {
    let s = r.space();
    let f = Form::from_poly(r.poly(&s));
    let sigma = r.permutation(3);
    let forward = d(1, &d(2, &d(3, &f)));
    let shuffled = [1, 2, 3].iter().fold(f.clone(), |acc, &k| d(sigma.apply(k), &acc));
    Ok(compare(&forward, &shuffled, &f))
}

// ---- kappa ---------------------------------------------------------------

static KAPPA: &[Identity] = &[
    Identity { name: "κ_(12)(d1 g.. d2 h.. d12 l..) = d2 g.. d1 h.. d12 l..", check: check_kappa_display },
    Identity { name: "κ_(12)^2 = id on Λ2", check: check_kappa_involution },
    Identity { name: "κ_σ d_k = d_σ(k) κ_σ for σ in S3", check: check_kappa_intertwines },
    Identity { name: "κ_σ κ_τ = κ_στ for σ, τ in S3", check: check_kappa_action },
];

fn check_kappa_display(r: &mut Sampler) -> Result<Verdict> {
    let s = r.space();
    let (p, q, rr) = loop {
        let t = (r.range(0, 2), r.range(0, 2), r.range(0, 2));
        if t.0 + t.1 + t.2 >= 1 {
            break t;
        }
    };
    let gs: Vec<Form> = (0..p).map(|_| Form::from_poly(r.nonconstant_poly(&s))).collect();
    let hs: Vec<Form> = (0..q).map(|_| Form::from_poly(r.nonconstant_poly(&s))).collect();
    let ls: Vec<Form> = (0..rr).map(|_| Form::from_poly(r.nonconstant_poly(&s))).collect();
    let product = |a: u32, b: u32| {
        let mut acc = Form::one(&s);
        for g in &gs {
            acc = &acc * &d(a, g);
        }
        for h in &hs {
            acc = &acc * &d(b, h);
        }
        for l in &ls {
            acc = &acc * &d(1, &d(2, l));
        }
        acc
    };
    let w = product(1, 2);
    let lhs = kappa(&SlotPermutation::transposition(1, 2)?, &w);
    Ok(compare(&lhs, &product(2, 1), &w))
}

fn check_kappa_involution(r: &mut Sampler) -> Result<Verdict> {
    let s = r.space();
    let w = r.form(&s, 2);
    let t = SlotPermutation::transposition(1, 2)?;
    Ok(compare(&kappa(&t, &kappa(&t, &w)), &w, &w))
}

fn check_kappa_intertwines(r: &mut Sampler) -> Result<Verdict> {
    let s = r.space();
    let w = r.form(&s, 3);
    let sigma = r.permutation(3);
    for k in slots_up_to(3) {
        let lhs = kappa(&sigma, &d(k, &w));
        let rhs = d(sigma.apply(k), &kappa(&sigma, &w));
        if let Some(v) = compare(&lhs, &rhs, &w) {
            return Ok(Some(format!("σ = {sigma}, k = {k}, {v}")));
        }
    }
    Ok(None)
}

fn check_kappa_action(r: &mut Sampler) -> Result<Verdict> {
    let s = r.space();
    let w = r.form(&s, 3);
    let (sigma, tau) = (r.permutation(3), r.permutation(3));
    let lhs = kappa(&sigma, &kappa(&tau, &w));
    let rhs = kappa(&sigma.compose(&tau), &w);
    Ok(compare(&lhs, &rhs, &w).map(|v| format!("σ = {sigma}, τ = {tau}, {v}")))
}

// ---- homotopy ------------------------------------------------------------

static HOMOTOPY: &[Identity] = &[
    Identity { name: "[H2, d2] = id - ι π on Λ2", check: check_homotopy },
    Identity { name: "ω = d2 H2 ω for d2-closed ω with π ω = 0", check: check_exactness },
    Identity { name: "π d2 = d2 π and Λ2^(0,*) ≅ Λ1 is a chain map", check: check_projection_chain_map },
];

fn check_homotopy(r: &mut Sampler) -> Result<Verdict> {
    let s = r.space();
    let w = r.form(&s, 2);
    let lhs = graded_commutator(HomotopyH2::new(), exterior(2)).apply(&w)?;
    let rhs = &w - &project_lambda01(&w)?;
    Ok(compare(&lhs, &rhs, &w))
}

fn check_exactness(r: &mut Sampler) -> Result<Verdict> {
    let s = r.space();
    let eta = r.form(&s, 2);
    let w = d(2, &(&eta - &project_lambda01(&eta)?));
    if !d(2, &w).is_zero() || !project_lambda01(&w)?.is_zero() {
        return Ok(Some(format!("test form {} is not a closed form with π = 0", form_text(&w))));
    }
    let rebuilt = d(2, &homotopy_h2(&w)?);
    Ok(compare(&rebuilt, &w, &w))
}

fn check_projection_chain_map(r: &mut Sampler) -> Result<Verdict> {
    let s = r.space();
    let w = r.form(&s, 2);
    let lhs = project_lambda01(&d(2, &w))?;
    let rhs = d(2, &project_lambda01(&w)?);
    if let Some(v) = compare(&lhs, &rhs, &w) {
        return Ok(Some(v));
    }
    let p = project_lambda01(&w)?;
    let lhs = lambda01_to_lambda1(&d(2, &p))?;
    let rhs = d(1, &lambda01_to_lambda1(&p)?);
    Ok(compare(&lhs, &rhs, &p))
}

// ---- tensor --------------------------------------------------------------

static TENSOR: &[Identity] = &[
    Identity { name: "extract ι_p T = T, and ι_p T = 0 iff T = 0", check: check_injective },
    Identity { name: "i_Xp^(p)...i_X1^(1) ι_p T = T(X1, ..., Xp) for p <= 3", check: check_evaluation },
    Identity { name: "ι_p τ_p(σ) = κ_σ ι_p for all σ in S_p, p <= 3", check: check_equivariance },
    Identity { name: "ι_p L_X T = L_X ι_p T", check: check_lie_tensor },
    Identity { name: "ι(T1 ⊗ T2) = ι T1 ∧ shift_p ι T2", check: check_tensor_product },
    Identity { name: "i_X^(l) ι_p T = ι_(p-1) T(.., X_l, ..) after renumbering", check: check_insert_slot },
    Identity { name: "is_tensor classifies ι_p T + obstructions; rejected forms are not A-linear", check: check_classification },
    Identity { name: "(ι T - κ_(12) ι T)/2 = ι Alt T for p = 2", check: check_antisymmetrization },
];

fn tensor_sample(r: &mut Sampler, min_order: usize) -> (CovariantTensor, usize) {
    let s = r.space();
    let p = r.range(min_order, 3);
    (r.tensor(&s, p), p)
}

fn tensor_mismatch(what: &str, t: &CovariantTensor, detail: String) -> Verdict {
    Some(format!("{what}: tensor {}, {detail}", form_text(&embed(t))))
}

fn check_injective(r: &mut Sampler) -> Result<Verdict> {
    let (t, p) = tensor_sample(r, 0);
    let w = embed(&t);
    if extract(&w, p)? != t {
        return Ok(tensor_mismatch("extract", &t, "round trip differs".into()));
    }
    if w.is_zero() != t.is_zero() {
        return Ok(tensor_mismatch("zero test", &t, "zero status differs".into()));
    }
    Ok(None)
}

fn check_evaluation(r: &mut Sampler) -> Result<Verdict> {
    let (t, p) = tensor_sample(r, 1);
    let fields: Vec<_> = (0..p).map(|_| r.vector_field(t.space())).collect();
    let lhs = evaluate_insertion(&embed(&t), &fields)?;
    let rhs = evaluate_components(&t, &fields)?;
    Ok((lhs != rhs).then(|| format!("tensor {}: {} vs {}", form_text(&embed(&t)), poly_text(&lhs), poly_text(&rhs))))
}

fn check_equivariance(r: &mut Sampler) -> Result<Verdict> {
    let (t, p) = tensor_sample(r, 1);
    for sigma in SlotPermutation::all_of_degree(p as u32) {
        let lhs = embed(&permute(&sigma, &t)?);
        let rhs = kappa_embed(&sigma, &t);
        if lhs != rhs {
            return Ok(tensor_mismatch("equivariance", &t, format!("σ = {sigma}")));
        }
    }
    Ok(None)
}

fn check_lie_tensor(r: &mut Sampler) -> Result<Verdict> {
    let (t, _) = tensor_sample(r, 0);
    let x = r.vector_field(t.space());
    let lhs = embed(&lie_tensor(&x, &t)?);
    let rhs = lie_derivative(&x).apply(&embed(&t))?;
    Ok(compare(&lhs, &rhs, &embed(&t)))
}

fn check_tensor_product(r: &mut Sampler) -> Result<Verdict> {
    let s = r.space();
    let (p, q) = (r.range(0, 2), r.range(0, 2));
    let (a, b) = (r.tensor(&s, p), r.tensor(&s, q));
    let lhs = embed(&tensor_product(&a, &b)?);
    let rhs = embed(&a).wedge(&shift_slots(&embed(&b), p as u32))?;
    Ok(compare(&lhs, &rhs, &embed(&a)))
}

fn check_insert_slot(r: &mut Sampler) -> Result<Verdict> {
    let (t, p) = tensor_sample(r, 1);
    let x = r.vector_field(t.space());
    let l = r.range(1, p) as u32;
    let got = extract(&insert_slot(&embed(&t), p, &x, l)?, p - 1)?;
    let expected = contract(&t, &x, l)?;
    Ok((got != expected).then(|| format!("l = {l}, tensor {}", form_text(&embed(&t)))))
}

fn check_classification(r: &mut Sampler) -> Result<Verdict> {
    let (t, p) = tensor_sample(r, 1);
    let s = t.space().clone();
    let obstructed = p >= 2 && r.coin(0.5);
    let mut w = embed(&t);
    if obstructed {
        for _ in 0..r.range(1, 2) {
            w = &w + &r.obstruction_term(&s, p);
        }
    }
    // Obstruction terms with distinct shapes cannot cancel each other, but
    // two draws of the same shape can; the expected answer is read off the
    // multi-slot part of the sum.
    let has_multi_slot = w.terms().any(|(k, _)| k.iter().any(|f| f.generator.slots().len() >= 2));
    match is_tensor(&w, p)? {
        Detection::Tensor(found) => {
            if has_multi_slot {
                return Ok(Some(format!("accepted obstructed form {}", form_text(&w))));
            }
            if found != t {
                return Ok(Some(format!("extracted the wrong tensor from {}", form_text(&w))));
            }
            // A-linearity in every slot at a random point.
            let fields: Vec<_> = (0..p).map(|_| r.vector_field(&s)).collect();
            let f = r.coefficient(&s);
            for l in 1..=p as u32 {
                if let Some(v) = linearity_defect(&w, &fields, l, &f)? {
                    return Ok(Some(format!("tensor {} fails A-linearity in slot {}", form_text(&w), v.slot)));
                }
            }
            Ok(None)
        }
        Detection::Obstructed(o) => {
            if !has_multi_slot {
                return Ok(Some(format!("rejected the tensor {}", form_text(&w))));
            }
            if &w - &o != embed(&t) {
                return Ok(Some(format!("obstruction {} does not split off ι T from {}", form_text(&o), form_text(&w))));
            }
            match find_linearity_violation(&w, p)? {
                Some(_) => Ok(None),
                None => Ok(Some(format!("no A-linearity violation found for {}", form_text(&w)))),
            }
        }
    }
}

fn check_antisymmetrization(r: &mut Sampler) -> Result<Verdict> {
    let s = r.space();
    let t = r.tensor(&s, 2);
    let swap = SlotPermutation::transposition(1, 2)?;
    let lhs = (&embed(&t) - &kappa_embed(&swap, &t)).scale(&ratio(1, 2));
    let alt = alternate(&t);
    let classical = CovariantTensor::from_components(
        &s,
        2,
        crate::tensors::index_tuples(s.dim(), 2).into_iter().map(|idx| {
            let v = (&t.component(&idx) - &t.component(&[idx[1], idx[0]])).scale(&ratio(1, 2));
            (idx, v)
        }),
    )?;
    if alt != classical {
        return Ok(tensor_mismatch("alternation", &t, "componentwise formula differs".into()));
    }
    Ok(compare(&lhs, &embed(&classical), &embed(&t)))
}

// ---- pullback ------------------------------------------------------------

static PULLBACK: &[Identity] = &[
    Identity { name: "φ* d_k = d_k φ* for k in 1..3", check: check_pullback_d },
    Identity { name: "(ψ φ)* = φ* ψ*", check: check_pullback_functor },
    Identity { name: "φ*(a b) = φ*a φ*b", check: check_pullback_product },
];

fn check_pullback_d(r: &mut Sampler) -> Result<Verdict> {
    let (src, tgt) = (r.space(), r.space());
    let phi = r.smooth_map(&src, &tgt);
    let w = r.form(&tgt, 3);
    for k in slots_up_to(3) {
        let lhs = pullback(&phi, &d(k, &w))?;
        let rhs = d(k, &pullback(&phi, &w)?);
        if let Some(v) = compare(&lhs, &rhs, &w) {
            return Ok(Some(format!("k = {k}, {v}")));
        }
    }
    Ok(None)
}

fn check_pullback_functor(r: &mut Sampler) -> Result<Verdict> {
    let (a, b, c) = (r.space(), r.space(), r.space());
    let phi = r.smooth_map(&a, &b);
    let psi = r.smooth_map(&b, &c);
    let w = r.form(&c, 2);
    let lhs = pullback(&phi.then(&psi)?, &w)?;
    let rhs = pullback(&phi, &pullback(&psi, &w)?)?;
    Ok(compare(&lhs, &rhs, &w))
}

fn check_pullback_product(r: &mut Sampler) -> Result<Verdict> {
    let (src, tgt) = (r.space(), r.space());
    let phi = r.smooth_map(&src, &tgt);
    let (a, b) = (r.form(&tgt, 2), r.form(&tgt, 2));
    let lhs = pullback(&phi, &a.wedge(&b)?)?;
    let rhs = pullback(&phi, &a)?.wedge(&pullback(&phi, &b)?)?;
    Ok(compare(&lhs, &rhs, &a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_parse() {
        assert_eq!(parse_suites("all").unwrap().len(), 6);
        assert_eq!(parse_suites("kappa").unwrap(), vec![Suite::Kappa]);
        assert_eq!(parse_suites("bogus"), Err(Error::UnknownSuite("bogus".into())));
    }

    #[test]
    fn small_sets() {
        assert_eq!(small_index_sets().len(), 14);
    }

    #[test]
    fn each_identity_passes_a_few_cases() {
        let report = run_suites(&Suite::ALL, 1, 8, Execution::Sequential);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn execution_strategies_agree() {
        let a = run_checks_with("kappa", 5, 10, Execution::Sequential).unwrap();
        let b = run_checks_with("kappa", 5, 10, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), b.to_string());
    }
}
