//! Values stratified by minimal reduced-formula size over {+, ×, ^} and inputs {−1, 1}.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num::complex::Complex64;
use ordered_float::OrderedFloat;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;
use rug::Integer;

use crate::arith::{apply, ArithFormula, Gate};
use crate::cvalue::{CValue, Gauss};
use crate::error::{FormulaError, Result};

#[derive(Clone, Debug)]
pub struct Entry {
    pub value: CValue,
    /// A reduced formula of minimal size with this value.
    pub witness: ArithFormula,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumOptions {
    /// Only the input 1.
    pub monotone: bool,
    /// Merge candidates in a seeded random order instead of the canonical one.
    pub shuffle: Option<u64>,
}

/// Lookup of already-seen values: exact hits by hash, inexact ones by a window on the real part.
#[derive(Clone, Debug, Default)]
struct ValueIndex {
    exact: HashMap<Gauss, (usize, usize)>,
    by_re: BTreeMap<OrderedFloat<f64>, Vec<(usize, usize)>>,
    wild: Vec<(usize, usize)>,
}

impl ValueIndex {
    fn find(&self, v: &CValue, strata: &[Vec<Entry>]) -> Option<(usize, usize)> {
        if let Some(g) = v.as_exact() {
            if let Some(&hit) = self.exact.get(g) {
                return Some(hit);
            }
        }
        let z = v.to_complex64();
        let same = |&(n, k): &(usize, usize)| {
            let other = &strata[n][k].value;
            if !other.same(v) {
                return false;
            }
            if other.is_exact() != v.is_exact() {
                log::warn!("precision collision: {v} merged with {other}");
            }
            true
        };
        if z.re.is_finite() && z.im.is_finite() {
            let d = 1e-12 * z.norm().max(1.0);
            let window = self.by_re.range(OrderedFloat(z.re - d)..=OrderedFloat(z.re + d));
            window.flat_map(|(_, ids)| ids.iter()).copied().find(|id| same(id))
        } else {
            self.wild.iter().copied().find(|id| same(id))
        }
    }

    fn insert(&mut self, v: &CValue, id: (usize, usize)) {
        if let Some(g) = v.as_exact() {
            self.exact.insert(g.clone(), id);
        }
        let z = v.to_complex64();
        if z.re.is_finite() && z.im.is_finite() {
            self.by_re.entry(OrderedFloat(z.re)).or_default().push(id);
        } else {
            self.wild.push(id);
        }
    }
}

#[derive(Clone, Debug)]
pub struct Stratification {
    strata: Vec<Vec<Entry>>,
    opts: EnumOptions,
    index: ValueIndex,
}

const GATES: [Gate; 3] = [Gate::Add, Gate::Mul, Gate::Pow];

impl Stratification {
    pub fn new(opts: EnumOptions) -> Stratification {
        let mut s = Stratification { strata: vec![Vec::new()], opts, index: ValueIndex::default() };
        let leaves = if opts.monotone { vec![ArithFormula::one()] } else { vec![ArithFormula::one(), ArithFormula::neg_one()] };
        s.strata.push(Vec::new());
        for w in leaves {
            s.admit(1, Entry { value: w.eval().expect("leaf"), witness: w });
        }
        s
    }

    fn admit(&mut self, n: usize, e: Entry) -> bool {
        if self.index.find(&e.value, &self.strata).is_some() {
            return false;
        }
        self.index.insert(&e.value, (n, self.strata[n].len()));
        self.strata[n].push(e);
        true
    }

    /// Largest size computed so far.
    pub fn max_size(&self) -> usize {
        self.strata.len() - 1
    }

    pub fn options(&self) -> EnumOptions {
        self.opts
    }

    /// A_n; empty beyond the computed range.
    pub fn stratum(&self, n: usize) -> &[Entry] {
        self.strata.get(n).map_or(&[], |s| s.as_slice())
    }

    /// Size of the stratum holding `v`.
    pub fn find(&self, v: &CValue) -> Option<usize> {
        self.index.find(v, &self.strata).map(|(n, _)| n)
    }

    /// Every (size, entry) whose value is within `tol` of `z`.
    pub fn find_close(&self, z: Complex64, tol: f64) -> Vec<(usize, &Entry)> {
        let mut out = Vec::new();
        for (n, s) in self.strata.iter().enumerate() {
            out.extend(s.iter().filter(|e| e.value.close_to(z, tol)).map(|e| (n, e)));
        }
        out
    }

    fn candidates(&self, n: usize) -> Vec<Entry> {
        let batches: Vec<(Gate, usize)> =
            GATES.iter().flat_map(|&g| (1..n - 1).map(move |i| (g, i))).filter(|&(_, i)| !self.strata[i].is_empty()).collect();
        let per_batch: Vec<Vec<Entry>> = batches
            .par_iter()
            .map(|&(g, i)| {
                let mut out = Vec::new();
                for s in &self.strata[i] {
                    for t in &self.strata[n - 1 - i] {
                        let Ok(v) = apply(g, &s.value, &t.value) else { continue };
                        let excluded = match g {
                            Gate::Add => v.is_zero(),
                            _ => v.is_one(),
                        };
                        if !excluded {
                            out.push(Entry { value: v, witness: ArithFormula::gate(g, s.witness.clone(), t.witness.clone()) });
                        }
                    }
                }
                out
            })
            .collect();
        per_batch.into_iter().flatten().collect()
    }

    /// Computes A_{max+1} … A_n.
    pub fn extend_to(&mut self, n: usize) {
        while self.max_size() < n {
            let m = self.max_size() + 1;
            self.strata.push(Vec::new());
            if m % 2 == 0 {
                continue;
            }
            let mut cands = self.candidates(m);
            if let Some(seed) = self.opts.shuffle {
                cands.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed ^ m as u64));
            }
            for c in cands {
                self.admit(m, c);
            }
            log::debug!("A_{m}: {} values", self.strata[m].len());
        }
    }
}

pub fn enumerate_strata(n: usize) -> Stratification {
    enumerate_strata_with(n, EnumOptions::default())
}

pub fn enumerate_strata_with(n: usize, opts: EnumOptions) -> Stratification {
    let mut s = Stratification::new(opts);
    s.extend_to(n.max(1));
    s
}

/// Strata shared across queries, extended on demand.
pub fn cached_strata(n: usize, monotone: bool) -> Arc<Stratification> {
    static CACHE: OnceLock<Mutex<HashMap<bool, Arc<Stratification>>>> = OnceLock::new();
    let mut cache = CACHE.get_or_init(Default::default).lock().unwrap_or_else(|e| e.into_inner());
    let entry = cache.entry(monotone).or_insert_with(|| Arc::new(Stratification::new(EnumOptions { monotone, shuffle: None })));
    if entry.max_size() < n {
        let mut grown = (**entry).clone();
        grown.extend_to(n);
        *entry = Arc::new(grown);
    }
    entry.clone()
}

/// Least n ≤ `max_size` with `v` ∈ A_n.
pub fn complexity(v: &CValue, max_size: usize) -> Result<usize> {
    complexity_with(v, max_size, false)
}

pub fn complexity_with(v: &CValue, max_size: usize, monotone: bool) -> Result<usize> {
    let s = cached_strata(max_size, monotone);
    s.find(v).filter(|&n| n <= max_size).ok_or_else(|| FormulaError::NotFound(v.to_string(), max_size))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub n: usize,
    pub size: usize,
    /// (2/(n+1))·C(n−1, (n−1)/2), for odd n > 2.
    pub lower: Option<Integer>,
    /// 5ⁿ, for odd n > 2.
    pub upper: Option<Integer>,
    pub holds: bool,
}

/// Checks |A_n| = 0 for even n and the strict lower and upper bounds for odd n > 2.
pub fn cardinality_bounds(s: &Stratification) -> Vec<BoundCheck> {
    (1..=s.max_size())
        .map(|n| {
            let size = s.stratum(n).len();
            if n % 2 == 0 {
                return BoundCheck { n, size, lower: None, upper: None, holds: size == 0 };
            }
            if n < 3 {
                return BoundCheck { n, size, lower: None, upper: None, holds: true };
            }
            let half = (n as u32 - 1) / 2;
            let lower = Integer::from(Integer::from(n - 1).binomial(half) * 2u32) / (n as u32 + 1);
            let upper = Integer::from(Integer::u_pow_u(5, n as u32));
            let holds = lower < size && upper > size;
            BoundCheck { n, size, lower: Some(lower), upper: Some(upper), holds }
        })
        .collect()
}

/// a₀ = 1, a_{k+1} = 2^(1+a_k) − 1.
pub fn tower_sequence(n: usize) -> Result<Integer> {
    let mut a = Integer::from(1);
    for _ in 0..n {
        let e = a.to_u32().filter(|&e| e < 1 << 24).ok_or_else(|| FormulaError::Budget(format!("a_{n} is too large")))?;
        a = (Integer::from(1) << (e + 1)) - 1u32;
    }
    Ok(a)
}

/// (1+1)^(1+a_{n−1}) + (−1), with 1+a_{n−1} written the same way recursively.
pub fn tower_formula(n: usize) -> ArithFormula {
    let two = || ArithFormula::add(ArithFormula::one(), ArithFormula::one());
    let mut e = two();
    for _ in 0..n {
        e = ArithFormula::pow(two(), e);
    }
    ArithFormula::add(e, ArithFormula::neg_one())
}

/// The explicit formula evaluates to a_n and has at most 4(n+1)+1 tokens.
pub fn tower_bound_check(n: usize) -> Result<bool> {
    let want = tower_sequence(n)?;
    let f = tower_formula(n);
    let got = f.eval()?;
    let ok = got.as_exact().and_then(Gauss::as_integer).is_some_and(|v| v == want);
    Ok(ok && f.size() <= 4 * (n + 1) + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cvalue::parse_cvalue;

    fn values(s: &Stratification, n: usize) -> Vec<String> {
        let mut v: Vec<String> = s.stratum(n).iter().map(|e| e.value.to_string()).collect();
        v.sort();
        v
    }

    fn sorted(xs: &[&str]) -> Vec<String> {
        let mut v: Vec<String> = xs.iter().map(|s| s.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn small_strata() {
        let s = enumerate_strata(7);
        assert_eq!(values(&s, 1), sorted(&["1", "-1"]));
        assert!(s.stratum(2).is_empty() && s.stratum(4).is_empty() && s.stratum(6).is_empty());
        assert_eq!(values(&s, 3), sorted(&["2", "-2"]));
        assert_eq!(values(&s, 5), sorted(&["3", "-1/2", "-3", "1/2"]));
        assert_eq!(values(&s, 7), sorted(&["-3/2", "4", "I", "3/2", "-1/3", "1/3", "1/4", "-I", "-4"]));
    }

    #[test]
    fn witnesses_are_reduced_and_sized() {
        let s = enumerate_strata(9);
        for n in 1..=9 {
            for e in s.stratum(n) {
                assert_eq!(e.witness.size(), n);
                assert!(e.witness.is_reduced(), "{}", e.witness);
                assert!(e.witness.eval().unwrap().same(&e.value));
            }
        }
    }

    #[test]
    fn complexity_queries() {
        assert_eq!(complexity(&CValue::int(1), 9).unwrap(), 1);
        assert_eq!(complexity(&CValue::int(4), 9).unwrap(), 7);
        assert_eq!(complexity(&parse_cvalue("I").unwrap(), 9).unwrap(), 7);
        assert!(complexity(&CValue::int(1000), 7).is_err());
    }

    #[test]
    fn monotone_strata_have_no_negative_inputs() {
        let s = enumerate_strata_with(7, EnumOptions { monotone: true, shuffle: None });
        assert_eq!(values(&s, 1), sorted(&["1"]));
        assert_eq!(values(&s, 3), sorted(&["2"]));
        assert!(s.stratum(7).iter().all(|e| e.witness.is_monotone()));
    }

    #[test]
    fn bounds_small() {
        let b = cardinality_bounds(&enumerate_strata(9));
        assert_eq!(b[2].size, 2);
        assert_eq!(b[2].lower, Some(Integer::from(1)));
        assert_eq!(b[2].upper, Some(Integer::from(125)));
        assert_eq!(b[8].lower, Some(Integer::from(14)));
        assert_eq!(b[8].size, 32);
        assert!(b[3].holds && b[3].size == 0);
        assert!(b.iter().all(|c| c.holds));
    }

    #[test]
    fn tower() {
        assert_eq!(tower_sequence(0).unwrap(), 1);
        assert_eq!(tower_sequence(1).unwrap(), 3);
        assert_eq!(tower_sequence(2).unwrap(), 15);
        assert_eq!(tower_formula(2).size(), 13);
        assert!((0..=4).all(|n| tower_bound_check(n).unwrap()));
        assert!(tower_sequence(6).is_err());
    }
}
