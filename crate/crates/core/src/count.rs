//! Small exact counting helpers shared by the closed forms.

use crate::{Error, Result};

/// `C(n, r)`, zero when `r > n`.
pub fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    num_integer::binomial(n, r)
}

/// `C(n, r)` with overflow detection.
pub fn checked_binomial(n: u64, r: u64) -> Result<u64> {
    if r > n {
        return Ok(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return Err(Error::Overflow("binomial coefficient"));
        }
    }
    Ok(acc as u64)
}

pub fn checked_pow(base: u64, exp: usize) -> Result<u64> {
    let exp = u32::try_from(exp).map_err(|_| Error::Overflow("power"))?;
    base.checked_pow(exp).ok_or(Error::Overflow("power"))
}

/// Size of the cube `{0,…,k}^n`.
pub fn cube_size(n: usize, k: u8) -> Result<u64> {
    checked_pow(u64::from(k) + 1, n)
}
