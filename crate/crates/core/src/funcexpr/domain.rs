use num::complex::Complex64;
use rand::Rng;

use crate::error::{CoreError, Result};

/// Rectangle in ℂ with a band around the real axis removed: samples have
/// Re z in `re` and |Im z| in `im_abs`, with a random sign on Im z.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleDomain {
    pub re: (f64, f64),
    pub im_abs: (f64, f64),
}

impl SampleDomain {
    pub fn new(re: (f64, f64), im_abs: (f64, f64)) -> Result<Self> {
        if !(re.0 <= re.1 && 0.0 <= im_abs.0 && im_abs.0 <= im_abs.1) {
            return Err(CoreError::Domain(format!("empty sample domain re {re:?}, |im| {im_abs:?}")));
        }
        Ok(SampleDomain { re, im_abs })
    }

    /// |Im z| < π and Im z ≠ 0, where ln(e^z) = z and neither z nor −z sits on the cut.
    pub fn branch_safe() -> Self {
        SampleDomain { re: (-2.0, 2.0), im_abs: (0.05, 3.0) }
    }

    /// A strip in the right half plane, also away from the real axis.
    pub fn right_half() -> Self {
        SampleDomain { re: (0.1, 1.0), im_abs: (0.1, 2.0) }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Complex64 {
        let re = rng.gen_range(self.re.0..=self.re.1);
        let im = rng.gen_range(self.im_abs.0..=self.im_abs.1);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        Complex64::new(re, sign * im)
    }
}

/// Maximum of `f` over `k` samples. Samples that land on a branch cut are
/// redrawn, with at most `10·k` extra draws.
pub fn max_over_samples<R: Rng + ?Sized>(
    dom: &SampleDomain,
    k: usize,
    rng: &mut R,
    mut f: impl FnMut(Complex64) -> Result<f64>,
) -> Result<f64> {
    let mut worst = 0.0f64;
    let mut done = 0;
    let mut retries = 0;
    while done < k {
        let z = dom.sample(rng);
        match f(z) {
            Ok(r) => {
                worst = worst.max(r);
                done += 1;
            }
            Err(CoreError::BranchCut(_)) if retries < 10 * k => retries += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_stay_inside() {
        let d = SampleDomain::branch_safe();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let z = d.sample(&mut rng);
            assert!(z.im.abs() >= 0.05 && z.im.abs() <= 3.0 && z.re.abs() <= 2.0);
        }
        assert!(SampleDomain::new((1.0, 0.0), (0.0, 1.0)).is_err());
    }
}
