use construct_formula::rewrite::matches;
use construct_formula::{apply_rewrite, ArithFormula, CValue, Gate, RuleId};
use proptest::prelude::*;
use rug::Rational;

type F = ArithFormula;

fn tree(leaves: Vec<F>, gates: Vec<Gate>, depth: u32) -> impl Strategy<Value = F> {
    let leaf = proptest::sample::select(leaves);
    leaf.prop_recursive(depth, 16, 2, move |inner| {
        (proptest::sample::select(gates.clone()), inner.clone(), inner).prop_map(|(g, a, b)| F::gate(g, a, b))
    })
}

fn general() -> impl Strategy<Value = F> {
    tree(vec![F::one(), F::neg_one(), F::var(0), F::var(1), F::var(2)], vec![Gate::Add, Gate::Mul, Gate::Pow], 3)
}

fn positive() -> impl Strategy<Value = F> {
    tree(vec![F::one(), F::var(0), F::var(1), F::var(2)], vec![Gate::Add, Gate::Mul, Gate::Pow], 3)
}

fn integral() -> impl Strategy<Value = F> {
    tree(vec![F::one(), F::neg_one(), F::var(0), F::var(1), F::var(2)], vec![Gate::Add, Gate::Mul], 3)
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i32..=6, 1i32..=4).prop_filter("nonzero", |(p, _)| *p != 0).prop_map(|(p, q)| Rational::from((p, q)))
}

fn env_general() -> impl Strategy<Value = Vec<CValue>> {
    proptest::collection::vec((small_rational(), -2i32..=2), 3)
        .prop_map(|v| v.into_iter().map(|(re, im)| CValue::gauss(re, Rational::from(im))).collect())
}

fn env_positive() -> impl Strategy<Value = Vec<CValue>> {
    proptest::collection::vec((1i32..=9, 1i32..=4), 3)
        .prop_map(|v| v.into_iter().map(|(p, q)| CValue::rational(Rational::from((p, q)))).collect())
}

fn env_integer() -> impl Strategy<Value = Vec<CValue>> {
    proptest::collection::vec(-20i64..=20, 3).prop_map(|v| v.into_iter().map(CValue::int).collect())
}

/// The rule's left-hand pattern filled in with f, g, h.
fn instance(rule: RuleId, f: F, g: F, h: F) -> F {
    use RuleId::*;
    let (add, mul, pow, md) = (F::add, F::mul, F::pow, F::modulo);
    match rule {
        CommAdd => add(f, g),
        CommMul => mul(f, g),
        AssocAddRight => add(add(f, g), h),
        AssocAddLeft => add(f, add(g, h)),
        AssocMulRight => mul(mul(f, g), h),
        AssocMulLeft => mul(f, mul(g, h)),
        DistMulExpand => mul(f, add(g, h)),
        DistMulFactor => add(mul(f.clone(), g), mul(f, h)),
        DistPowSumExpand => pow(f, add(g, h)),
        DistPowSumFactor => mul(pow(f.clone(), g), pow(f, h)),
        DistPowProdExpand => pow(mul(f, g), h),
        DistPowProdFactor => mul(pow(f, h.clone()), pow(g, h)),
        UnitMul => mul(f, F::one()),
        UnitPow => pow(f, F::one()),
        OnePow => pow(F::one(), f),
        AddZero => add(f, F::zero()),
        MulZero => mul(f, F::zero()),
        PowZero => pow(f, F::zero()),
        LogProdPow => F::log(h.clone(), mul(pow(h.clone(), f), pow(h, g))),
        LogPow => F::log(f.clone(), pow(f, g)),
        LogOne => F::log(f, F::one()),
        ModAddCollapse => md(add(md(f, h.clone()), md(g, h.clone())), h),
        ModAddExpand => md(add(f, g), h),
        ModMulCollapse => md(mul(md(f, h.clone()), md(g, h.clone())), h),
        ModMulExpand => md(mul(f, g), h),
        ModZero => md(F::zero(), f),
        DerivAdd | DerivMul => unreachable!(),
    }
}

fn numeric_rules(pick: impl Fn(&RuleId) -> bool) -> Vec<RuleId> {
    RuleId::ALL.into_iter().filter(|r| !r.symbolic_only() && pick(r)).collect()
}

fn check(rule: RuleId, lhs: &F, env: &[CValue]) -> Result<(), TestCaseError> {
    let rhs = apply_rewrite(lhs, rule, &[]).map_err(|e| TestCaseError::fail(e.to_string()))?;
    if let (Ok(a), Ok(b)) = (lhs.eval_with(env), rhs.eval_with(env)) {
        prop_assert!(a.same(&b), "{rule}: {lhs} = {a} but {rhs} = {b}");
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn branch_free_rules_preserve_value(
        rule in proptest::sample::select(numeric_rules(|r| !r.branch_sensitive() && !r.integer_only())),
        f in general(), g in general(), h in general(), env in env_general(),
    ) {
        check(rule, &instance(rule, f, g, h), &env)?;
    }

    #[test]
    fn branch_sensitive_rules_hold_on_positive_reals(
        rule in proptest::sample::select(numeric_rules(|r| r.branch_sensitive())),
        f in positive(), g in positive(), h in positive(), env in env_positive(),
    ) {
        check(rule, &instance(rule, f, g, h), &env)?;
    }

    #[test]
    fn mod_rules_hold_on_integers(
        rule in proptest::sample::select(numeric_rules(|r| r.integer_only())),
        f in integral(), g in integral(), h in integral(), env in env_integer(),
    ) {
        check(rule, &instance(rule, f, g, h), &env)?;
    }

    #[test]
    fn rules_preserve_value_at_every_matching_position(f in general(), env in env_general()) {
        for rule in numeric_rules(|r| !r.branch_sensitive() && !r.integer_only()) {
            for path in matches(&f, rule) {
                let g = apply_rewrite(&f, rule, &path).unwrap();
                if let (Ok(a), Ok(b)) = (f.eval_with(&env), g.eval_with(&env)) {
                    prop_assert!(a.same(&b), "{rule} at {path:?}: {f} vs {g}");
                }
            }
        }
    }

    #[test]
    fn distributivity_on_variable_free_trees(
        f in tree(vec![F::one(), F::neg_one()], vec![Gate::Add, Gate::Mul, Gate::Pow], 3),
        g in tree(vec![F::one(), F::neg_one()], vec![Gate::Add, Gate::Mul, Gate::Pow], 3),
        h in tree(vec![F::one(), F::neg_one()], vec![Gate::Add, Gate::Mul, Gate::Pow], 3),
    ) {
        check(RuleId::DistMulExpand, &instance(RuleId::DistMulExpand, f, g, h), &[])?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn prefix_round_trip(f in tree(
        vec![F::one(), F::neg_one(), F::var(0), F::var(3)],
        vec![Gate::Add, Gate::Mul, Gate::Pow, Gate::Log, Gate::Mod, Gate::Deriv(1)],
        5,
    )) {
        let s = f.encode_prefix();
        prop_assert_eq!(s.split_whitespace().count(), f.size());
        prop_assert_eq!(F::decode_prefix(&s).unwrap(), f);
    }
}
