//! Theorem checks and invariant sweeps, and the suite that runs them by name.

mod bounds;
mod compression;
mod setsys;
mod theorems;

use std::fmt;
use std::str::FromStr;

use delshadow_core::seq::decode_index;
use delshadow_core::{count, Family, ReducedWord, ReducedWords};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::{SearchBudget, SearchMode};
use crate::report::VerificationReport;
use crate::{Result, VerifyError};

pub use bounds::{check_corollary11, check_degree_identity, check_prop10};
pub use compression::{check_canonicalize, check_lemma6, check_lemma7, check_lemma8};
pub use setsys::{check_lemma3, check_lemma4, check_lemma9};
pub use theorems::{check_a_t, check_conjecture1, check_theorem1, check_theorem2};

/// Universes small enough to visit every family: `(k+1)^n ≤ 16`.
pub const DESK_UNIVERSES: [(usize, u8); 8] = [(1, 1), (2, 1), (3, 1), (4, 1), (1, 2), (2, 2), (1, 3), (2, 3)];
/// The universes with `n ≤ 3`, `k ≤ 2`.
pub const SMALL_UNIVERSES: [(usize, u8); 6] = [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2)];
/// Larger universes used for random instances.
pub const RANDOM_UNIVERSES: [(usize, u8); 5] = [(4, 2), (3, 3), (5, 1), (4, 3), (5, 2)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckName {
    Theorem1,
    Theorem2,
    Lemma3,
    Lemma4,
    Lemma6,
    Lemma7,
    Lemma8,
    Lemma9,
    Prop10,
    Corollary11,
    DegreeIdentity,
    Conjecture1,
    ATSubcube,
    Canonicalize,
}

impl CheckName {
    pub const ALL: [CheckName; 14] = [
        CheckName::Theorem1,
        CheckName::Theorem2,
        CheckName::Lemma3,
        CheckName::Lemma4,
        CheckName::Lemma6,
        CheckName::Lemma7,
        CheckName::Lemma8,
        CheckName::Lemma9,
        CheckName::Prop10,
        CheckName::Corollary11,
        CheckName::DegreeIdentity,
        CheckName::Conjecture1,
        CheckName::ATSubcube,
        CheckName::Canonicalize,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Theorem1 => "theorem1",
            CheckName::Theorem2 => "theorem2",
            CheckName::Lemma3 => "lemma3",
            CheckName::Lemma4 => "lemma4",
            CheckName::Lemma6 => "lemma6",
            CheckName::Lemma7 => "lemma7",
            CheckName::Lemma8 => "lemma8",
            CheckName::Lemma9 => "lemma9",
            CheckName::Prop10 => "prop10",
            CheckName::Corollary11 => "corollary11",
            CheckName::DegreeIdentity => "degree_identity",
            CheckName::Conjecture1 => "conjecture1",
            CheckName::ATSubcube => "a_t",
            CheckName::Canonicalize => "canonicalize",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| VerifyError::UnknownCheck(s.to_string()))
    }
}

/// Parameters shared by every check of a suite run. `n` and `k`, when set,
/// pin the universe of the per-universe checks and cap the sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SuiteConfig {
    pub budget: SearchBudget,
    pub n: Option<usize>,
    pub k: Option<u8>,
}

impl SuiteConfig {
    pub fn new(budget: SearchBudget) -> Self {
        Self {
            budget,
            n: None,
            k: None,
        }
    }

    /// The universes to run a per-universe check on.
    fn universes(&self, defaults: &[(usize, u8)]) -> Vec<(usize, u8)> {
        match (self.n, self.k) {
            (Some(n), Some(k)) => vec![(n, k)],
            (Some(n), None) => {
                let mut ks: Vec<u8> = defaults.iter().filter(|u| u.0 == n).map(|u| u.1).collect();
                if ks.is_empty() {
                    ks.push(1);
                }
                ks.into_iter().map(|k| (n, k)).collect()
            }
            (None, Some(k)) => {
                let mut ns: Vec<usize> = defaults.iter().filter(|u| u.1 == k).map(|u| u.0).collect();
                if ns.is_empty() {
                    ns.push(2);
                }
                ns.into_iter().map(|n| (n, k)).collect()
            }
            (None, None) => defaults.to_vec(),
        }
    }
}

/// Runs the named checks in the given order. Names are validated before
/// anything runs.
pub fn run_suite<S: AsRef<str>>(names: &[S], config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    config.budget.validate()?;
    let checks = names
        .iter()
        .map(|s| s.as_ref().trim().parse::<CheckName>())
        .collect::<Result<Vec<_>>>()?;
    checks.into_iter().map(|c| run_check(c, config)).collect()
}

pub fn run_check(check: CheckName, config: &SuiteConfig) -> Result<VerificationReport> {
    let budget = &config.budget;
    let n_cap = config.n;
    let k_cap = config.k;
    match check {
        CheckName::Theorem1 => {
            let mut defaults = DESK_UNIVERSES.to_vec();
            if budget.mode != SearchMode::Exhaustive {
                defaults.push((3, 2));
            }
            merge_reports("theorem1", config.universes(&defaults), |(n, k)| check_theorem1(n, k, budget))
        }
        CheckName::Theorem2 => {
            let ns: Vec<usize> = match n_cap {
                Some(n) => vec![n],
                None => (1..=4).collect(),
            };
            merge_reports("theorem2", ns, |n| check_theorem2(n, budget))
        }
        CheckName::Conjecture1 => {
            merge_reports("conjecture1", config.universes(&[(2, 2)]), |(n, k)| check_conjecture1(n, k, budget))
        }
        CheckName::ATSubcube => {
            let defaults: Vec<(usize, u8)> = (1..=4).flat_map(|n| (1..=3).map(move |k| (n, k))).collect();
            merge_reports("a_t", config.universes(&defaults), |(n, k)| check_a_t(n, k, budget))
        }
        CheckName::Lemma3 => check_lemma3(n_cap.unwrap_or(5), budget),
        CheckName::Lemma4 => check_lemma4(n_cap.unwrap_or(10), budget),
        CheckName::Lemma6 => check_lemma6(n_cap.unwrap_or(5), k_cap.unwrap_or(2), budget),
        CheckName::Lemma7 => check_lemma7(&config.universes(&SMALL_UNIVERSES), budget),
        CheckName::Lemma8 => check_lemma8(&config.universes(&SMALL_UNIVERSES), budget),
        CheckName::Lemma9 => check_lemma9(n_cap.unwrap_or(8), budget),
        CheckName::Prop10 => {
            let universes = config.universes(&DESK_UNIVERSES);
            let random: &[(usize, u8)] = if config.n.is_some() || config.k.is_some() {
                &[]
            } else {
                &RANDOM_UNIVERSES[..2]
            };
            check_prop10(&universes, random, budget)
        }
        CheckName::Corollary11 => check_corollary11(
            n_cap.unwrap_or(5),
            k_cap.unwrap_or(3),
            &[(2, 1), (2, 2), (3, 1)],
            budget,
        ),
        CheckName::DegreeIdentity => check_degree_identity(n_cap.unwrap_or(4), k_cap.unwrap_or(3), budget),
        CheckName::Canonicalize => check_canonicalize(&config.universes(&SMALL_UNIVERSES), budget),
    }
}

/// Runs one check per item and folds the reports into one.
fn merge_reports<T, F>(name: &str, items: Vec<T>, f: F) -> Result<VerificationReport>
where
    F: Fn(T) -> Result<VerificationReport>,
{
    let mut params = Vec::new();
    let mut out = VerificationReport::new(name, serde_json::Value::Null);
    for item in items {
        let r = f(item)?;
        params.push(r.params);
        out.instances += r.instances;
        out.violations.extend(r.violations);
        out.observations.extend(r.observations);
        out.elapsed_ms += r.elapsed_ms;
    }
    out.params = if params.len() == 1 {
        params.pop().unwrap_or_default()
    } else {
        serde_json::Value::Array(params)
    };
    Ok(out)
}

/// Deterministic generator for random instance `i` of a check; `tag`
/// separates the streams of different checks.
pub(crate) fn instance_rng(seed: u64, tag: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((tag << 48) | i);
    rng
}

/// A random family of `{0,…,k}^n`: a density is drawn first, then each word
/// is kept independently with that probability.
pub(crate) fn random_family(rng: &mut ChaCha8Rng, n: usize, k: u8) -> Family {
    let total = count::cube_size(n, k).expect("random universes are small");
    let density: f64 = rng.gen();
    let members = (0..total).filter(|_| rng.gen_bool(density)).map(|i| decode_index(n, k, i));
    Family::from_sequences(n, k, members).expect("words of the cube")
}

/// Every label pair `(s, t)` accepted by `compress`, split by shape.
pub(crate) fn compression_pairs(n: usize, k: u8, same_level: bool) -> Vec<(ReducedWord, ReducedWord)> {
    let mut pairs = Vec::new();
    for len in 0..=n {
        let here: Vec<ReducedWord> = ReducedWords::new(len, k).expect("len ≤ n").collect();
        if same_level {
            for s in &here {
                for t in &here {
                    if s != t {
                        pairs.push((s.clone(), t.clone()));
                    }
                }
            }
        } else if len >= 1 {
            let below: Vec<ReducedWord> = ReducedWords::new(len - 1, k).expect("len ≤ n").collect();
            for s in &here {
                for t in &below {
                    pairs.push((s.clone(), t.clone()));
                }
            }
        }
    }
    pairs
}
