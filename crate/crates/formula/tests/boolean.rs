use std::collections::BTreeSet;

use construct_core::poly::Poly;
use construct_formula::boolean::{and, enumerate_bool_with, lex_offset, not, or, var};
use construct_formula::{enumerate_bool, BoolFormula};
use num::{BigUint, One};

fn show(fs: &[BoolFormula]) -> Vec<String> {
    fs.iter().map(|f| f.to_string()).collect()
}

#[test]
fn printed_formula_lists() {
    let e = enumerate_bool(5);
    assert!(e.strata[0].is_empty());
    assert_eq!(show(&e.strata[1]), ["x0"]);
    assert_eq!(show(&e.strata[2]), ["['NOT', x0]"]);
    assert_eq!(show(&e.strata[3]), ["['AND', x0, x1]", "['OR', x0, x1]"]);
    assert_eq!(
        show(&e.strata[4]),
        [
            "['AND', x0, ['NOT', x0]]",
            "['AND', x0, ['NOT', x1]]",
            "['AND', ['NOT', x0], x1]",
            "['OR', x0, ['NOT', x0]]",
            "['OR', x0, ['NOT', x1]]",
            "['OR', ['NOT', x0], x1]",
            "['NOT', ['AND', x0, x1]]",
            "['NOT', ['OR', x0, x1]]",
        ]
    );
    assert_eq!(
        show(&e.strata[5]),
        [
            "['AND', x0, ['AND', x1, x2]]",
            "['AND', x0, ['OR', x0, x1]]",
            "['AND', x0, ['OR', x1, x2]]",
            "['AND', ['OR', x0, x1], x1]",
            "['AND', ['OR', x0, x1], x2]",
            "['OR', x0, ['AND', x1, x2]]",
            "['OR', x0, ['OR', x1, x2]]",
            "['OR', ['AND', x0, x1], x2]",
        ]
    );
    let l: Vec<u64> = e.lex.iter().map(|v| v.try_into().unwrap()).collect();
    assert_eq!(l, [2, 1, 12, 18, 0, 6, 8, 3, 15, 17, 11, 5, 148, 14, 188, 16, 244, 254, 274, 268]);
}

#[test]
fn bool2integer_outputs() {
    let cases = [("['AND',['NOT',x0],x0]", 0u32), ("['OR',['NOT',x0],x0]", 3), ("x0", 2), ("['NOT',x0]", 1)];
    for (s, want) in cases {
        assert_eq!(s.parse::<BoolFormula>().unwrap().lex_number().value, BigUint::from(want), "{s}");
    }
}

fn x(i: usize) -> Poly {
    Poly::var(&format!("x{i}"))
}

fn k(c: i64) -> Poly {
    Poly::from_int(c)
}

#[test]
fn raw_polynomials_match_printed_list() {
    // the printed polynomials, in their factored form
    let printed = vec![
        x(0),
        k(1) - x(0),
        &x(0) * &x(1),
        k(0) - &x(0) * &x(1) + x(0) + x(1),
        k(0) - &(x(0) - k(1)) * &x(0),
        k(0) - &x(0) * &(x(1) - k(1)),
        k(0) - &(x(0) - k(1)) * &x(1),
        &(x(0) - k(1)) * &x(0) + k(1),
        &x(0) * &(x(1) - k(1)) + x(0) - x(1) + k(1),
        &(x(0) - k(1)) * &x(1) - x(0) + x(1) + k(1),
        k(1) - &x(0) * &x(1),
        &x(0) * &x(1) - x(0) - x(1) + k(1),
    ];
    let e = enumerate_bool(4);
    let got: Vec<Poly> = e.strata.iter().flatten().map(|f| f.to_multilinear(false)).collect();
    assert_eq!(got, printed);
}

fn lex_from_table(f: &BoolFormula) -> BigUint {
    let n = f.arity().max(1);
    let table = f.truth_table();
    let mut v = lex_offset(n);
    let mut place = BigUint::one();
    for bit in table {
        if bit {
            v += &place;
        }
        place *= 2u32;
    }
    v
}

#[test]
fn lex_numbers_agree_with_truth_tables_and_ranges() {
    let e = enumerate_bool(7);
    for f in e.strata.iter().flatten().filter(|f| f.arity() <= 3) {
        let l = f.lex_number();
        assert_eq!(l.value, lex_from_table(f), "{f}");
        assert!(lex_offset(l.arity) <= l.value && l.value < lex_offset(l.arity + 1), "{f}");
    }
}

#[test]
fn admitted_lex_sets_do_not_depend_on_order() {
    let base = enumerate_bool(7);
    let sets = |e: &construct_formula::BoolEnumeration| -> Vec<BTreeSet<BigUint>> {
        e.strata.iter().map(|s| s.iter().map(|f| f.lex_number().value).collect()).collect()
    };
    for seed in [3, 11, 99] {
        assert_eq!(sets(&base), sets(&enumerate_bool_with(7, Some(seed))));
    }
}

#[test]
fn reduced_polynomials_identify_functions() {
    let e = enumerate_bool(6);
    let fs: Vec<&BoolFormula> = e.strata.iter().flatten().filter(|f| f.arity() <= 3).collect();
    let on3 = |f: &BoolFormula| (0..8).map(|b| f.eval(&[b & 1 == 1, b & 2 == 2, b & 4 == 4])).collect::<Vec<_>>();
    let mut extra = vec![and(var(0), not(var(0))), or(and(var(0), var(1)), and(var(0), not(var(1)))), var(0), not(not(var(2)))];
    extra.extend(fs.iter().map(|f| (*f).clone()));
    for a in &extra {
        for b in &extra {
            let same_poly = a.to_multilinear(true) == b.to_multilinear(true);
            assert_eq!(same_poly, on3(a) == on3(b), "{a} vs {b}");
        }
    }
}

#[test]
fn polynomial_evaluation_matches_truth_table() {
    use num::BigRational;
    use std::collections::HashMap;
    let e = enumerate_bool(6);
    for f in e.strata.iter().flatten() {
        let n = f.arity().max(1);
        let p = f.to_multilinear(false);
        for (b, bit) in f.truth_table().into_iter().enumerate() {
            let env: HashMap<String, BigRational> =
                (0..n).map(|j| (format!("x{j}"), BigRational::from_integer(((b >> j) & 1).into()))).collect();
            assert_eq!(p.eval(&env), BigRational::from_integer(u8::from(bit).into()), "{f}");
        }
    }
}
