use construct_core::funcexpr::{
    eval_construct, exp_log_pair, max_over_samples, spectral_synthesize, verify_eigen, verify_pseudo_inverse, FuncExpr,
    SampleDomain, Side,
};
use construct_core::Hypermatrix;
use num::complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::Result;
use crate::SpectralArgs;

fn column(a: FuncExpr, b: FuncExpr) -> Hypermatrix<FuncExpr> {
    Hypermatrix::from_rows(vec![vec![a], vec![b]]).expect("2×1")
}

pub fn verify(args: &SpectralArgs, seed: u64) -> Result<Value> {
    let k = args.samples;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (u, v) = exp_log_pair();
    let safe = SampleDomain::branch_safe();
    let half = SampleDomain::right_half();

    let pseudo_inverse = verify_pseudo_inverse(&u, &v, &safe, k, &mut rng)?;

    // λ = (z, z) should reproduce z·I
    let id = spectral_synthesize(&u, &v, &[FuncExpr::z(), FuncExpr::z()])?;
    let identity = max_over_samples(&safe, k, &mut rng, |z| {
        let got = eval_construct(&id.right_assoc, z)?;
        Ok((0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| (got.get(&[i, j]) - if i == j { z } else { Complex64::new(0.0, 0.0) }).norm())
            .fold(0.0, f64::max))
    })?;

    let generic = spectral_synthesize(&u, &v, &[FuncExpr::z() * FuncExpr::z() + FuncExpr::c(1.0), FuncExpr::scale(0.5, FuncExpr::z()) - FuncExpr::c(2.0)])?;
    let association = generic.disagreement(&safe, k, &mut rng)?;

    let l0 = FuncExpr::z() + FuncExpr::c(0.3);
    let l1 = FuncExpr::pow(FuncExpr::z(), FuncExpr::c(1.5));
    let a = spectral_synthesize(&u, &v, &[l0.clone(), l1.clone()])?.right_assoc;
    let half_exp = |c: f64| FuncExpr::scale(c, FuncExpr::exp(FuncExpr::z()));
    let half_ln = || FuncExpr::scale(0.5, FuncExpr::ln(FuncExpr::z()));
    let eigen0 = verify_eigen(&a, &column(half_exp(0.5), half_exp(-0.5)), &l0, Side::Dual, &half, k, &mut rng)?;
    let eigen1 = verify_eigen(&a, &column(half_ln(), half_ln()), &l1, Side::Dual, &half, k, &mut rng)?;

    Ok(json!({
        "samples": k,
        "seed": seed,
        "pseudo_inverse": pseudo_inverse,
        "identity_synthesis": identity,
        "association_disagreement": association,
        "eigen": [
            { "lambda": l0.to_prefix(), "vector": "[e^z/2, -e^z/2]", "residual": eigen0 },
            { "lambda": l1.to_prefix(), "vector": "[ln z/2, ln z/2]", "residual": eigen1 },
        ],
    }))
}
