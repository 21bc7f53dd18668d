//! The deletion shadows δ_r.
//!
//! `δ_r A` is every word of length `n − 1` obtained from a member of `A` by
//! deleting one coordinate whose value is in `{0,…,r}`. `δ = δ_0` deletes a
//! zero, `Δ = δ_k` deletes anything.

use crate::par;
use crate::seq::{Family, Sequence};
use crate::{Error, Result};

/// Deletion radius `r` with `0 ≤ r ≤ k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShadowRadius(u8);

impl ShadowRadius {
    pub fn new(r: u8, k: u8) -> Result<Self> {
        if r > k {
            return Err(Error::OutOfRange {
                what: "deletion radius",
                value: u64::from(r),
                max: u64::from(k),
            });
        }
        Ok(Self(r))
    }

    /// `r = 0`: delete zeros only.
    pub const ZERO: ShadowRadius = ShadowRadius(0);

    /// `r = k`: delete any coordinate.
    pub fn max(k: u8) -> Self {
        Self(k)
    }

    #[inline]
    pub fn get(self) -> u8 {
        self.0
    }
}

/// `δ_r A`.
pub fn delta_r(a: &Family, r: ShadowRadius) -> Result<Family> {
    if a.n() == 0 {
        return Err(Error::EmptyWords);
    }
    if r.get() > a.k() {
        return Err(Error::OutOfRange {
            what: "deletion radius",
            value: u64::from(r.get()),
            max: u64::from(a.k()),
        });
    }
    let members: Vec<Sequence> = a.iter().cloned().collect();
    let radius = r.get();
    let set = par::collect_set(&members, |x| single_shadow(x, radius));
    Ok(Family::from_set_unchecked(a.n() - 1, a.k(), set))
}

/// `δA = δ_0 A`.
pub fn delta(a: &Family) -> Result<Family> {
    delta_r(a, ShadowRadius::ZERO)
}

/// `ΔA = δ_k A`.
pub fn full_deletion(a: &Family) -> Result<Family> {
    delta_r(a, ShadowRadius::max(a.k()))
}

/// The distinct words obtained from `x` by one admissible deletion. Runs of
/// equal deletable values give the same word, so only the first position of
/// each run is used.
pub(crate) fn single_shadow(x: &Sequence, radius: u8) -> Vec<Sequence> {
    let e = x.entries();
    let mut out = Vec::new();
    for i in 0..e.len() {
        if e[i] <= radius && (i == 0 || e[i - 1] != e[i]) {
            out.push(x.delete(i + 1));
        }
    }
    out
}

/// Number of positions `i` with `x_i ≤ r` whose deletion from `x` gives `y`;
/// zero when the two are not adjacent.
pub fn deletion_multidegree(x: &Sequence, y: &Sequence, r: u8) -> usize {
    if x.len() != y.len() + 1 || x.k() != y.k() {
        return 0;
    }
    let (xe, ye) = (x.entries(), y.entries());
    // deleting position i works iff x[..i] = y[..i] and x[i+1..] = y[i..]
    let prefix = xe.iter().zip(ye).take_while(|(a, b)| a == b).count();
    let suffix = xe.iter().rev().zip(ye.iter().rev()).take_while(|(a, b)| a == b).count();
    let lo = (xe.len() - 1).saturating_sub(suffix);
    (lo..=prefix.min(xe.len() - 1))
        .filter(|&i| xe[i] <= r)
        .count()
}
