//! Uniform set systems `𝒜 ⊆ [n]^(r)` and the `|𝒜₁|` calculus.

use std::collections::BTreeSet;

use crate::count::{binomial, checked_binomial};
use crate::order::{colex_initial_positions, ColexSubsets};
use crate::seq::PositionSet;
use crate::{Error, Result};

/// A family of `r`-subsets of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetSystem {
    n: usize,
    r: usize,
    sets: BTreeSet<PositionSet>,
}

impl SetSystem {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if r > n {
            return Err(Error::OutOfRange {
                what: "set size",
                value: r as u64,
                max: n as u64,
            });
        }
        Ok(Self {
            n,
            r,
            sets: BTreeSet::new(),
        })
    }

    pub fn from_sets<I: IntoIterator<Item = PositionSet>>(n: usize, r: usize, sets: I) -> Result<Self> {
        let mut sys = Self::new(n, r)?;
        for s in sets {
            sys.insert(s)?;
        }
        Ok(sys)
    }

    /// `[n]^(r)` in full.
    pub fn full_layer(n: usize, r: usize) -> Result<Self> {
        let sets = ColexSubsets::new(n, r).map(|s| PositionSet::from_sorted(n, s));
        Self::from_sets(n, r, sets)
    }

    pub fn insert(&mut self, s: PositionSet) -> Result<bool> {
        if s.ground_size() != self.n || s.len() != self.r {
            return Err(Error::InvalidParameter(format!(
                "set {s} does not belong to [{}]^({})",
                self.n, self.r
            )));
        }
        Ok(self.sets.insert(s))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: &PositionSet) -> bool {
        self.sets.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &PositionSet> {
        self.sets.iter()
    }

    pub fn difference(&self, other: &SetSystem) -> SetSystem {
        SetSystem {
            n: self.n,
            r: self.r,
            sets: self.sets.difference(&other.sets).cloned().collect(),
        }
    }
}

/// `|𝒜₁|`, the number of sets containing 1.
pub fn ones_count(sys: &SetSystem) -> u64 {
    sys.iter().filter(|s| s.contains(1)).count() as u64
}

/// `𝒜̄ = {A^c : A ∈ 𝒜}`, a system of `(n − r)`-sets.
pub fn complement_system(sys: &SetSystem) -> SetSystem {
    SetSystem {
        n: sys.n,
        r: sys.n - sys.r,
        sets: sys.iter().map(PositionSet::complement).collect(),
    }
}

/// `|𝒜₁|` for the colex initial segment `𝒜` of `[n]^(r)` of length `m`,
/// which is also the δ-shadow size of the corresponding sequences.
///
/// Splits `m = C(a, r) + rest` with `a` maximal: the first `C(a, r)` sets
/// are all of `[a]^(r)` (containing 1 in `C(a−1, r−1)` cases) and the rest
/// are `{a+1} ∪ S` with `S` running over a colex initial segment of
/// `[a]^(r−1)`.
pub fn ones_count_colex(n: usize, r: usize, m: u64) -> Result<u64> {
    let total = checked_binomial(n as u64, r as u64)?;
    if m > total {
        return Err(Error::OutOfRange {
            what: "segment length",
            value: m,
            max: total,
        });
    }
    Ok(ones_count_colex_unchecked(n as u64, r as u64, m))
}

fn ones_count_colex_unchecked(n: u64, r: u64, m: u64) -> u64 {
    if m == 0 || r == 0 {
        return 0;
    }
    // m ≥ 1 = C(r, r), so the maximal a is at least r
    let mut a = r;
    while a < n && binomial(a + 1, r) <= m {
        a += 1;
    }
    let rest = m - binomial(a, r);
    // a + 1 ≥ 2, so {a+1} ∪ S contains 1 exactly when S does
    binomial(a - 1, r - 1) + ones_count_colex_unchecked(a, r - 1, rest)
}

/// `𝒜 = ℐ \ 𝒥` for colex initial segments with `|𝒥| = lower ≤ upper = |ℐ|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SegmentDescriptor {
    n: usize,
    r: usize,
    lower: u64,
    upper: u64,
}

impl SegmentDescriptor {
    pub fn new(n: usize, r: usize, lower: u64, upper: u64) -> Result<Self> {
        let total = checked_binomial(n as u64, r as u64)?;
        if r > n {
            return Err(Error::OutOfRange {
                what: "set size",
                value: r as u64,
                max: n as u64,
            });
        }
        if upper > total {
            return Err(Error::OutOfRange {
                what: "segment upper end",
                value: upper,
                max: total,
            });
        }
        if lower > upper {
            return Err(Error::OutOfRange {
                what: "segment lower end",
                value: lower,
                max: upper,
            });
        }
        Ok(Self { n, r, lower, upper })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn lower(&self) -> u64 {
        self.lower
    }

    pub fn upper(&self) -> u64 {
        self.upper
    }

    pub fn len(&self) -> u64 {
        self.upper - self.lower
    }

    pub fn is_empty(&self) -> bool {
        self.upper == self.lower
    }
}

pub fn segment_realize(d: &SegmentDescriptor) -> SetSystem {
    let sets = ColexSubsets::new(d.n, d.r)
        .skip(d.lower as usize)
        .take((d.upper - d.lower) as usize)
        .map(|s| PositionSet::from_sorted(d.n, s));
    SetSystem {
        n: d.n,
        r: d.r,
        sets: sets.collect(),
    }
}

/// The colex initial segment of `[n]^(r)` of length `m` as a set system.
pub fn colex_initial_system(n: usize, r: usize, m: u64) -> Result<SetSystem> {
    SetSystem::from_sets(n, r, colex_initial_positions(n, r, m)?)
}

/// `[n]^(r)` minus the colex initial segment of length `C(n,r) − m`.
pub fn colex_final_system(n: usize, r: usize, m: u64) -> Result<SetSystem> {
    SetSystem::from_sets(n, r, crate::order::colex_final_positions(n, r, m)?)
}
