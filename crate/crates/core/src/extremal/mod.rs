//! Extremal families for the δ-shadow.
//!
//! Initial segments of `≤` minimise `|δA|` among families of their size, and
//! that minimum has a closed form: full components of level `i ≥ 1`
//! contribute `C(n−1, i−1)` each, and the single partial component
//! contributes the `|𝒜₁|` count of a colex initial segment.
//!
//! For δ_r the unions of `v_r`-levels are extremal and meet the averaging
//! bound `|δ_r A| ≥ Σ_s s·|A_s| / (n(r+1))` with equality.

mod compress;
mod setsys;

use num_rational::Ratio;

use crate::count::{binomial, checked_binomial, checked_pow, cube_size};
use crate::seq::{all_sequences, Family};
use crate::shadow::ShadowRadius;
use crate::{Error, Result};

pub use compress::{
    canonicalize, canonicalize_traced, compress, CanonStep, CanonStepKind, CanonTrace,
    PotentialValue,
};
pub use setsys::{
    colex_final_system, colex_initial_system, complement_system, ones_count, ones_count_colex,
    segment_realize, SegmentDescriptor, SetSystem,
};

/// `|δB|` for `B` the initial segment of `≤` of size `m`.
pub fn min_delta_shadow_size(n: usize, k: u8, m: u64) -> Result<u64> {
    let total = cube_size(n, k)?;
    if m > total {
        return Err(Error::OutOfRange {
            what: "family size",
            value: m,
            max: total,
        });
    }
    let overflow = || Error::Overflow("minimum shadow size");
    let mut remaining = m;
    let mut shadow = 0u64;
    for i in 0..=n {
        if remaining == 0 {
            break;
        }
        let comp_size = checked_binomial(n as u64, i as u64)?;
        let comps = checked_pow(u64::from(k), n - i)?;
        let level = comp_size.checked_mul(comps).ok_or_else(overflow)?;
        let per_full = if i == 0 { 0 } else { binomial(n as u64 - 1, i as u64 - 1) };
        if remaining >= level {
            shadow = comps
                .checked_mul(per_full)
                .and_then(|v| v.checked_add(shadow))
                .ok_or_else(overflow)?;
            remaining -= level;
            continue;
        }
        // the segment ends inside this level: some full components, then
        // exactly one partial one
        let full = remaining / comp_size;
        let partial = remaining % comp_size;
        shadow += full * per_full + ones_count_colex(n, i, partial)?;
        remaining = 0;
    }
    debug_assert_eq!(remaining, 0);
    Ok(shadow)
}

/// Named extremal constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CanonicalKind {
    /// `L_{≤s}(n) = {x : v_r(x) ≤ s}` for deletion radius `r_del`.
    LevelUnion { r_del: u8, s: usize },
    /// `B_{r,t}`: entries in `{0,…,t}`, at most `r` zeros.
    BoundedZeros { r: u8, t: u8 },
    /// `A_t = {0,…,t−1}^n`.
    SubCube { t: u8 },
}

pub fn canonical_family(n: usize, k: u8, kind: CanonicalKind) -> Result<Family> {
    if k == 0 {
        return Err(Error::ZeroAlphabet);
    }
    let keep: Box<dyn Fn(&crate::Sequence) -> bool> = match kind {
        CanonicalKind::LevelUnion { r_del, s } => {
            if r_del > k {
                return Err(Error::OutOfRange {
                    what: "deletion radius",
                    value: u64::from(r_del),
                    max: u64::from(k),
                });
            }
            if s > n {
                return Err(Error::OutOfRange {
                    what: "level",
                    value: s as u64,
                    max: n as u64,
                });
            }
            Box::new(move |x| x.low_count(r_del) <= s)
        }
        CanonicalKind::BoundedZeros { r, t } => {
            if r > k || t > k {
                return Err(Error::InvalidParameter(format!(
                    "B_(r,t) needs r, t ≤ k = {k} (got r = {r}, t = {t})"
                )));
            }
            Box::new(move |x| x.zero_count() <= usize::from(r) && x.entries().iter().all(|&v| v <= t))
        }
        CanonicalKind::SubCube { t } => {
            if t == 0 || t > k {
                return Err(Error::InvalidParameter(format!(
                    "A_t needs 1 ≤ t ≤ k = {k} (got t = {t})"
                )));
            }
            Box::new(move |x| x.entries().iter().all(|&v| v < t))
        }
    };
    Family::from_sequences(n, k, all_sequences(n, k)?.filter(|x| keep(x)))
}

/// `(1/(n(r+1))) · Σ_{s=0}^{n} s·|A ∩ L_s(n)|` with `L_s(n) = {x : v_r(x) = s}`,
/// exact.
pub fn prop10_lower_bound(a: &Family, r: ShadowRadius) -> Result<Ratio<u64>> {
    let n = a.n();
    if n == 0 {
        return Err(Error::EmptyWords);
    }
    if r.get() > a.k() {
        return Err(Error::OutOfRange {
            what: "deletion radius",
            value: u64::from(r.get()),
            max: u64::from(a.k()),
        });
    }
    let mut by_level = vec![0u64; n + 1];
    for x in a.iter() {
        by_level[x.low_count(r.get())] += 1;
    }
    let weighted: u64 = by_level.iter().enumerate().map(|(s, &c)| s as u64 * c).sum();
    let denom = n as u64 * (u64::from(r.get()) + 1);
    Ok(Ratio::new(weighted, denom))
}

/// `|δ_r L_{≤s}(n)| = Σ_{i=1}^{s} C(n−1, i−1)·(r+1)^(i−1)·(k−r)^(n−i)`.
pub fn level_union_shadow_size(n: usize, k: u8, r_del: u8, s: usize) -> Result<u64> {
    if r_del > k {
        return Err(Error::OutOfRange {
            what: "deletion radius",
            value: u64::from(r_del),
            max: u64::from(k),
        });
    }
    let low = u64::from(r_del) + 1;
    let high = u64::from(k - r_del);
    let mut total = 0u64;
    for i in 1..=s.min(n) {
        let term = checked_binomial(n as u64 - 1, i as u64 - 1)?
            .checked_mul(checked_pow(low, i - 1)?)
            .and_then(|v| v.checked_mul(checked_pow(high, n - i).ok()?))
            .ok_or(Error::Overflow("level union shadow"))?;
        total = total.checked_add(term).ok_or(Error::Overflow("level union shadow"))?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::initial_segment_leq;
    use crate::shadow::{delta, delta_r};

    fn names(f: &Family) -> Vec<String> {
        f.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn min_shadow_examples() {
        assert_eq!(min_delta_shadow_size(2, 1, 3).unwrap(), 1);
        assert_eq!(min_delta_shadow_size(2, 1, 4).unwrap(), 2);
        for (n, k) in [(3usize, 2u8), (4, 1), (5, 3)] {
            let free = u64::from(k).pow(n as u32);
            for m in 0..=free {
                assert_eq!(min_delta_shadow_size(n, k, m).unwrap(), 0);
            }
        }
        assert!(min_delta_shadow_size(2, 1, 5).is_err());
    }

    #[test]
    fn min_shadow_matches_direct_shadow() {
        for n in 1..=6usize {
            for k in 1..=3u8 {
                let total = (u64::from(k) + 1).pow(n as u32);
                if total > 729 {
                    continue;
                }
                for m in 0..=total {
                    let seg = initial_segment_leq(n, k, m).unwrap();
                    let direct = delta(&seg).unwrap().len() as u64;
                    assert_eq!(min_delta_shadow_size(n, k, m).unwrap(), direct, "n={n} k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn canonical_examples() {
        let l = canonical_family(2, 1, CanonicalKind::LevelUnion { r_del: 0, s: 1 }).unwrap();
        assert_eq!(names(&l), ["11", "01", "10"]);
        let b = canonical_family(2, 2, CanonicalKind::BoundedZeros { r: 1, t: 1 }).unwrap();
        assert_eq!(names(&b), ["11", "01", "10"]);
        let a = canonical_family(2, 2, CanonicalKind::SubCube { t: 2 }).unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(names(&a), ["11", "01", "10", "00"]);
        assert!(canonical_family(2, 2, CanonicalKind::SubCube { t: 0 }).is_err());
        assert!(canonical_family(2, 2, CanonicalKind::SubCube { t: 3 }).is_err());
        assert!(canonical_family(2, 2, CanonicalKind::LevelUnion { r_del: 0, s: 3 }).is_err());
        assert!(canonical_family(2, 2, CanonicalKind::BoundedZeros { r: 3, t: 1 }).is_err());
    }

    #[test]
    fn bound_examples() {
        let l = canonical_family(2, 2, CanonicalKind::LevelUnion { r_del: 0, s: 1 }).unwrap();
        assert_eq!(l.len(), 8);
        assert_eq!(prop10_lower_bound(&l, ShadowRadius::ZERO).unwrap(), Ratio::from_integer(2));
        assert_eq!(delta(&l).unwrap().len(), 2);

        let free = Family::parse(2, &["12", "21", "11"]).unwrap();
        assert_eq!(prop10_lower_bound(&free, ShadowRadius::ZERO).unwrap(), Ratio::from_integer(0));

        let x = Family::parse(2, &["00121"]).unwrap();
        let r1 = ShadowRadius::new(1, 2).unwrap();
        assert_eq!(prop10_lower_bound(&x, r1).unwrap(), Ratio::new(4, 10));
        assert_eq!(delta_r(&x, r1).unwrap().len(), 3);
    }

    #[test]
    fn level_union_formula_matches_direct() {
        for n in 1..=5usize {
            for k in 1..=3u8 {
                for r in 0..k {
                    for s in 0..=n {
                        let l = canonical_family(n, k, CanonicalKind::LevelUnion { r_del: r, s }).unwrap();
                        let radius = ShadowRadius::new(r, k).unwrap();
                        let direct = delta_r(&l, radius).unwrap().len() as u64;
                        assert_eq!(level_union_shadow_size(n, k, r, s).unwrap(), direct);
                        assert_eq!(prop10_lower_bound(&l, radius).unwrap(), Ratio::from_integer(direct));
                    }
                }
            }
        }
    }
}
