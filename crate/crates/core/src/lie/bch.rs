//! Baker-Campbell-Hausdorff product in the truncated tensor algebra.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;

use super::basis::LieBasis;
use super::tensor::{Letter, TensorPoly};
use super::tree::LieElement;
use crate::error::{Error, Result};
use crate::scalar::{factorial, int};

/// `exp(x) = sum x^k / k!`, truncated. `x` must have no constant term.
pub fn exp(x: &TensorPoly, trunc: usize) -> TensorPoly {
    let mut out = TensorPoly::unit();
    let mut power = TensorPoly::unit();
    for k in 1..=trunc {
        power = power.mul(x, trunc);
        if power.is_zero() {
            break;
        }
        out.add_scaled(&power, &(int(1) / factorial(k as u32)));
    }
    out
}

/// `log(1 + z) = sum (-1)^{k+1} z^k / k`, truncated. `z` must have no constant term.
pub fn log1p(z: &TensorPoly, trunc: usize) -> TensorPoly {
    let mut out = TensorPoly::zero();
    let mut power = TensorPoly::unit();
    for k in 1..=trunc {
        power = power.mul(z, trunc);
        if power.is_zero() {
            break;
        }
        let c = if k % 2 == 1 { int(1) } else { int(-1) } / int(k as i64);
        out.add_scaled(&power, &c);
    }
    out
}

/// `log(exp(x) exp(y))` as a tensor polynomial; no grading checks.
pub fn bch_tensor(x: &TensorPoly, y: &TensorPoly, trunc: usize) -> TensorPoly {
    if x.is_zero() {
        return y.truncated(trunc);
    }
    if y.is_zero() {
        return x.truncated(trunc);
    }
    let mut z = exp(x, trunc).mul(&exp(y, trunc), trunc);
    z.sub_assign(&TensorPoly::unit());
    log1p(&z, trunc)
}

fn check_degree_zero(x: &TensorPoly, degrees: &[i32]) -> Result<()> {
    for d in x.degrees(degrees) {
        if d != 0 {
            return Err(Error::input(format!("BCH needs degree-0 arguments, found degree {d}")));
        }
    }
    if !x.coefficient(&[]).is_zero() {
        return Err(Error::input("BCH arguments must be Lie elements"));
    }
    Ok(())
}

/// `x * y` over the Lie basis of the alphabet graded by `degrees`.
pub fn bch(basis: &mut LieBasis, x: &LieElement, y: &LieElement, trunc: usize) -> Result<LieElement> {
    let degrees = basis.degrees().to_vec();
    let xp = x.normalize(&degrees).truncated(trunc);
    let yp = y.normalize(&degrees).truncated(trunc);
    check_degree_zero(&xp, &degrees)?;
    check_degree_zero(&yp, &degrees)?;
    basis.to_lie(&bch_tensor(&xp, &yp, trunc))
}

/// The BCH series in two ungraded letters `0` and `1`, over the Lie basis, through length `trunc`.
pub fn universal(trunc: usize) -> LieElement {
    static CACHE: OnceLock<Mutex<HashMap<usize, LieElement>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(e) = cache.lock().expect("bch cache").get(&trunc) {
        return e.clone();
    }
    let mut basis = LieBasis::new(vec![0, 0]);
    let z = bch_tensor(&TensorPoly::letter(0), &TensorPoly::letter(1), trunc);
    let e = basis.to_lie(&z).expect("BCH series is a Lie element");
    cache.lock().expect("bch cache").insert(trunc, e.clone());
    e
}

/// `x * y` by substitution into the universal series: works on any pair of
/// degree-0 elements given as formal trees.
pub fn bch_formal(x: &LieElement, y: &LieElement, trunc: usize) -> LieElement {
    let u = universal(trunc);
    u.substitute(&|l: Letter| if l == 0 { x.clone() } else { y.clone() }, trunc)
}
