//! Within-component colex, the compression operators and canonicalisation.

use std::collections::BTreeSet;
use std::time::Instant;

use delshadow_core::seq::{all_sequences, components};
use delshadow_core::{
    canonicalize_traced, compress, count, delta, initial_segment_leq, CanonStepKind, Component, Family,
    ReducedWord, ReducedWords, Sequence,
};
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::json;

use super::{compression_pairs, instance_rng, random_family, RANDOM_UNIVERSES};
use crate::budget::SearchBudget;
use crate::engine::{ShadowTable, EXHAUSTIVE_LIMIT};
use crate::par::map_ordered;
use crate::report::{VerificationReport, Violation};
use crate::Result;

/// Universes up to this many words are swept family by family.
pub const LITERAL_LIMIT: u64 = 9;
/// Universes up to this many words are canonicalised family by family.
pub const CANONICALIZE_LITERAL_LIMIT: u64 = 16;
/// Random instances are processed in batches of this many.
const BATCH: u64 = 256;

const TAG_OUTSIDE: u64 = 1;
const TAG_RANDOM_SAME: u64 = 2;
const TAG_RANDOM_CROSS: u64 = 3;
const TAG_CANON: u64 = 4;

#[derive(Default)]
struct Tally {
    instances: u64,
    violations: Vec<Violation>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.violations.extend(other.violations);
        self
    }
}

fn family_of_mask(cube: &[Sequence], n: usize, k: u8, mask: u64) -> Family {
    let members = cube.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| x.clone());
    Family::from_sequences(n, k, members).expect("words of the cube")
}

/// Colex initial segments minimise the δ-shadow inside every component.
pub fn check_lemma6(n_max: usize, k_max: u8, budget: &SearchBudget) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new("lemma6", json!({"n_max": n_max, "k_max": k_max}));
    let mut jobs = Vec::new();
    for n in 1..=n_max {
        for k in 1..=k_max {
            if count::cube_size(n - 1, k)? > crate::engine::LOWER_LIMIT {
                report.observe(format!("n={n} k={k}: lower cube too large, skipped"));
                continue;
            }
            for i in 1..=n {
                if count::binomial(n as u64, i as u64) > EXHAUSTIVE_LIMIT as u64 {
                    report.observe(format!("n={n} k={k} level {i}: components too large, skipped"));
                    continue;
                }
                for comp in components(n, k, i)? {
                    jobs.push((n, k, comp));
                }
            }
        }
    }
    let tallies = map_ordered(budget.execution, jobs, |(n, k, comp)| -> Result<Tally> {
        let mut tally = Tally::default();
        let members = comp.members();
        let table = ShadowTable::from_elements(n, k, 0, members.clone())?;
        let profile = table.full_profile(budget.execution)?;
        tally.instances += profile.instances;
        for (q, st) in profile.sizes.iter().enumerate() {
            let seg = Family::from_sequences(n, k, members[..q].iter().cloned())?;
            let shadow = delta(&seg)?.len() as u32;
            if shadow != st.min_shadow {
                tally.violations.push(Violation::new(
                    &seg,
                    format!(
                        "component {} of n={n}: colex segment of size {q} has δ-shadow {shadow}, minimum {}",
                        comp.label, st.min_shadow
                    ),
                ));
            }
        }
        Ok(tally)
    });
    for t in tallies {
        let t = t?;
        report.instances += t.instances;
        report.violations.extend(t.violations);
    }
    Ok(report.finish(started))
}

/// `|δ C_{s,t}(A)| ≤ |δA|` for `s, t` of equal length.
pub fn check_lemma7(universes: &[(usize, u8)], budget: &SearchBudget) -> Result<VerificationReport> {
    compression_monotone("lemma7", true, universes, budget)
}

/// `|δ C_{s,t}(A)| ≤ |δA|` for `len(t) = len(s) − 1`.
pub fn check_lemma8(universes: &[(usize, u8)], budget: &SearchBudget) -> Result<VerificationReport> {
    compression_monotone("lemma8", false, universes, budget)
}

/// Checks one compression; `shadow_a` is `|δA|`.
fn check_compression(a: &Family, shadow_a: usize, s: &ReducedWord, t: &ReducedWord, tally: &mut Tally) -> Result<()> {
    let b = compress(a, s, t)?;
    let shadow_b = delta(&b)?.len();
    tally.instances += 1;
    if b.len() != a.len() {
        tally.violations.push(Violation::new(a, format!("C_({s},{t}) changed the size: {} -> {}", a.len(), b.len())));
    }
    if shadow_b > shadow_a {
        tally
            .violations
            .push(Violation::new(a, format!("C_({s},{t}) grew the δ-shadow: {shadow_a} -> {shadow_b}")));
    }
    Ok(())
}

fn compression_monotone(
    name: &str,
    same_level: bool,
    universes: &[(usize, u8)],
    budget: &SearchBudget,
) -> Result<VerificationReport> {
    let started = Instant::now();
    budget.validate()?;
    let mut report = VerificationReport::new(
        name,
        json!({
            "universes": universes,
            "random_instances": budget.samples,
            "random_universes": RANDOM_UNIVERSES,
            "seed": budget.rng_seed,
        }),
    );
    for &(n, k) in universes {
        let size = count::cube_size(n, k)?;
        let tally = if size <= LITERAL_LIMIT {
            compression_literal(n, k, same_level, budget)?
        } else if size <= EXHAUSTIVE_LIMIT as u64 {
            report.observe(format!(
                "n={n} k={k}: every family covered through its trace on C_s ∪ C_t; \
                 the shadows of distinct components are disjoint"
            ));
            compression_local(n, k, same_level, budget)?
        } else {
            report.observe(format!("n={n} k={k}: universe too large for a sweep, skipped"));
            continue;
        };
        report.instances += tally.instances;
        report.violations.extend(tally.violations);
    }
    let tally = compression_random(same_level, budget)?;
    report.instances += tally.instances;
    report.violations.extend(tally.violations);
    Ok(report.finish(started))
}

/// Every family against every pair.
fn compression_literal(n: usize, k: u8, same_level: bool, budget: &SearchBudget) -> Result<Tally> {
    let cube: Vec<Sequence> = all_sequences(n, k)?.collect();
    let pairs = compression_pairs(n, k, same_level);
    let masks: Vec<u64> = (0..1u64 << cube.len()).collect();
    let tallies = map_ordered(budget.execution, masks.chunks(64).map(<[u64]>::to_vec).collect(), |chunk| {
        let mut tally = Tally::default();
        for mask in chunk {
            let a = family_of_mask(&cube, n, k, mask);
            let shadow_a = delta(&a)?.len();
            for (s, t) in &pairs {
                check_compression(&a, shadow_a, s, t, &mut tally)?;
            }
        }
        Ok::<_, crate::VerifyError>(tally)
    });
    tallies.into_iter().try_fold(Tally::default(), |acc, t| Ok(acc.merge(t?)))
}

/// Every trace on `C_s ∪ C_t`, combined with several fixed parts outside.
///
/// `δ` of distinct components land in distinct components of the lower
/// cube, so `|δA| − |δC_{s,t}(A)|` only depends on `A ∩ (C_s ∪ C_t)`; the
/// disjointness is itself checked here.
fn compression_local(n: usize, k: u8, same_level: bool, budget: &SearchBudget) -> Result<Tally> {
    let mut tally = Tally::default();
    let mut seen = BTreeSet::new();
    let mut total = 0;
    for len in 0..=n {
        for label in ReducedWords::new(len, k)? {
            let comp = Family::from_sequences(n, k, Component::new(label.clone(), n).members())?;
            let shadow = delta(&comp)?;
            total += shadow.len();
            seen.extend(shadow.into_members());
            tally.instances += 1;
        }
    }
    if seen.len() != total {
        tally
            .violations
            .push(Violation::note(format!("n={n} k={k}: component shadows overlap")));
    }

    let cube: Vec<Sequence> = all_sequences(n, k)?.collect();
    let pairs = compression_pairs(n, k, same_level);
    let jobs: Vec<(usize, (ReducedWord, ReducedWord))> = pairs.into_iter().enumerate().collect();
    let tallies = map_ordered(budget.execution, jobs, |(p, (s, t))| {
        let mut tally = Tally::default();
        let cs = Component::new(s.clone(), n);
        let ct = Component::new(t.clone(), n);
        let mut local = cs.members();
        local.extend(ct.members());
        let outside: Vec<&Sequence> = cube.iter().filter(|x| !cs.contains(x) && !ct.contains(x)).collect();
        let mut rest: Vec<Vec<&Sequence>> = vec![Vec::new(), outside.clone()];
        for j in 0..2 {
            let mut rng = instance_rng(budget.rng_seed, TAG_OUTSIDE, (p as u64) << 8 | j);
            let density: f64 = rng.gen();
            rest.push(outside.iter().copied().filter(|_| rng.gen_bool(density)).collect());
        }
        for part in &rest {
            for mask in 0..1u64 << local.len() {
                let members = local
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, x)| x.clone())
                    .chain(part.iter().map(|&x| x.clone()));
                let a = Family::from_sequences(n, k, members)?;
                let shadow_a = delta(&a)?.len();
                check_compression(&a, shadow_a, &s, &t, &mut tally)?;
            }
        }
        Ok::<_, crate::VerifyError>(tally)
    });
    tallies.into_iter().try_fold(tally, |acc, t| Ok(acc.merge(t?)))
}

/// `budget.samples` random families of larger universes, each with one
/// random pair.
fn compression_random(same_level: bool, budget: &SearchBudget) -> Result<Tally> {
    let tag = if same_level { TAG_RANDOM_SAME } else { TAG_RANDOM_CROSS };
    // binary universes have no same-level pairs
    type Pool = ((usize, u8), Vec<(ReducedWord, ReducedWord)>);
    let pools: Vec<Pool> = RANDOM_UNIVERSES
        .iter()
        .map(|&(n, k)| ((n, k), compression_pairs(n, k, same_level)))
        .filter(|(_, p)| !p.is_empty())
        .collect();
    let batches: Vec<u64> = (0..budget.samples.div_ceil(BATCH)).collect();
    let tallies = map_ordered(budget.execution, batches, |b| {
        let mut tally = Tally::default();
        for i in b * BATCH..((b + 1) * BATCH).min(budget.samples) {
            let mut rng = instance_rng(budget.rng_seed, tag, i);
            let ((n, k), pairs) = &pools[(i % pools.len() as u64) as usize];
            let a = random_family(&mut rng, *n, *k);
            let (s, t) = &pairs[rng.gen_range(0..pairs.len())];
            let shadow_a = delta(&a)?.len();
            check_compression(&a, shadow_a, s, t, &mut tally)?;
        }
        Ok::<_, crate::VerifyError>(tally)
    });
    tallies.into_iter().try_fold(Tally::default(), |acc, t| Ok(acc.merge(t?)))
}

/// Checks one run of `canonicalize`: the output is the initial segment of
/// the same size, the shadow does not grow, and the potentials behave.
fn check_canonical_run(a: &Family, segments: &[Family], tally: &mut Tally) -> Result<()> {
    let (out, trace) = canonicalize_traced(a)?;
    tally.instances += 1;
    if out != segments[a.len()] {
        tally.violations.push(Violation::new(a, "output is not the initial segment of ≤"));
    }
    let (before, after) = (delta(a)?.len(), delta(&out)?.len());
    if after > before {
        tally
            .violations
            .push(Violation::new(a, format!("δ-shadow grew from {before} to {after}")));
    }
    for step in &trace {
        let ok = match step.kind {
            CanonStepKind::Colex => step.after.v == step.before.v,
            CanonStepKind::CrossLevel => step.after.v < step.before.v,
            CanonStepKind::SameLevel => step.after.v == step.before.v && step.after.w < step.before.w,
        };
        if !ok {
            tally.violations.push(Violation::new(
                a,
                format!("{:?} step on {} moved the potential from {:?} to {:?}", step.kind, step.s, step.before, step.after),
            ));
        }
    }
    Ok(())
}

/// `canonicalize` on every family of the small universes; for larger ones,
/// on every family with at most 3 members or at most 3 non-members, on one
/// colex-normal family for every vector of component counts, and on
/// `budget.samples` random families.
pub fn check_canonicalize(universes: &[(usize, u8)], budget: &SearchBudget) -> Result<VerificationReport> {
    let started = Instant::now();
    budget.validate()?;
    let mut report = VerificationReport::new(
        "canonicalize",
        json!({"universes": universes, "random_instances": budget.samples, "seed": budget.rng_seed}),
    );
    for &(n, k) in universes {
        let size = count::cube_size(n, k)?;
        let segments: Vec<Family> = (0..=size).map(|m| initial_segment_leq(n, k, m)).collect::<Result<_, _>>()?;
        let cube: Vec<Sequence> = all_sequences(n, k)?.collect();
        let tally = if size <= CANONICALIZE_LITERAL_LIMIT {
            let masks: Vec<u64> = (0..1u64 << size).collect();
            let chunks: Vec<Vec<u64>> = masks.chunks(256).map(<[u64]>::to_vec).collect();
            let tallies = map_ordered(budget.execution, chunks, |chunk| {
                let mut tally = Tally::default();
                for mask in chunk {
                    check_canonical_run(&family_of_mask(&cube, n, k, mask), &segments, &mut tally)?;
                }
                Ok::<_, crate::VerifyError>(tally)
            });
            tallies.into_iter().try_fold(Tally::default(), |acc, t| Ok::<_, crate::VerifyError>(acc.merge(t?)))?
        } else if size <= 64 {
            report.observe(format!(
                "n={n} k={k}: sizes ≤ 3 and ≥ {} in full, every component-count vector, {} random families",
                size - 3,
                budget.samples
            ));
            let extremes = canonicalize_extremes(&cube, n, k, &segments, budget)?;
            let vectors = canonicalize_count_vectors(n, k, &segments, budget)?;
            let random = canonicalize_random(&cube, n, k, &segments, budget)?;
            extremes.merge(vectors).merge(random)
        } else {
            report.observe(format!("n={n} k={k}: universe too large, skipped"));
            continue;
        };
        report.instances += tally.instances;
        report.violations.extend(tally.violations);
    }
    Ok(report.finish(started))
}

fn canonicalize_extremes(cube: &[Sequence], n: usize, k: u8, segments: &[Family], budget: &SearchBudget) -> Result<Tally> {
    let len = cube.len();
    let full = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
    let mut masks = Vec::new();
    for m in 0..=3.min(len) {
        for mask in masks_of_size(len, m) {
            masks.push(mask);
            if len - m > 3 {
                masks.push(full & !mask);
            }
        }
    }
    let chunks: Vec<Vec<u64>> = masks.chunks(256).map(<[u64]>::to_vec).collect();
    let tallies = map_ordered(budget.execution, chunks, |chunk| {
        let mut tally = Tally::default();
        for mask in chunk {
            check_canonical_run(&family_of_mask(cube, n, k, mask), segments, &mut tally)?;
        }
        Ok::<_, crate::VerifyError>(tally)
    });
    tallies.into_iter().try_fold(Tally::default(), |acc, t| Ok(acc.merge(t?)))
}

/// One family per vector `(c_s)` of component counts, each component
/// holding a colex initial segment of length `c_s`. After its first stage
/// `canonicalize` only sees these counts.
fn canonicalize_count_vectors(n: usize, k: u8, segments: &[Family], budget: &SearchBudget) -> Result<Tally> {
    let comps: Vec<Vec<Sequence>> = (0..=n)
        .flat_map(|len| ReducedWords::new(len, k).expect("len ≤ n"))
        .map(|label| Component::new(label, n).members())
        .collect();
    let radices: Vec<u64> = comps.iter().map(|c| c.len() as u64 + 1).collect();
    let total: u64 = radices.iter().product();
    let batches: Vec<u64> = (0..total.div_ceil(BATCH * 16)).collect();
    let tallies = map_ordered(budget.execution, batches, |b| {
        let mut tally = Tally::default();
        for code in b * BATCH * 16..((b + 1) * BATCH * 16).min(total) {
            let mut rest = code;
            let mut members = Vec::new();
            for (comp, &radix) in comps.iter().zip(&radices) {
                let c = (rest % radix) as usize;
                rest /= radix;
                members.extend_from_slice(&comp[..c]);
            }
            let a = Family::from_sequences(n, k, members)?;
            check_canonical_run(&a, segments, &mut tally)?;
        }
        Ok::<_, crate::VerifyError>(tally)
    });
    tallies.into_iter().try_fold(Tally::default(), |acc, t| Ok(acc.merge(t?)))
}

fn canonicalize_random(cube: &[Sequence], n: usize, k: u8, segments: &[Family], budget: &SearchBudget) -> Result<Tally> {
    let batches: Vec<u64> = (0..budget.samples.div_ceil(BATCH)).collect();
    let tallies = map_ordered(budget.execution, batches, |b| {
        let mut tally = Tally::default();
        let mut perm: Vec<usize> = Vec::with_capacity(cube.len());
        for i in b * BATCH..((b + 1) * BATCH).min(budget.samples) {
            let mut rng = instance_rng(budget.rng_seed, TAG_CANON, i);
            let m = rng.gen_range(0..=cube.len());
            perm.clear();
            perm.extend(0..cube.len());
            let (chosen, _) = perm.partial_shuffle(&mut rng, m);
            let a = Family::from_sequences(n, k, chosen.iter().map(|&j| cube[j].clone()))?;
            check_canonical_run(&a, segments, &mut tally)?;
        }
        Ok::<_, crate::VerifyError>(tally)
    });
    tallies.into_iter().try_fold(Tally::default(), |acc, t| Ok(acc.merge(t?)))
}

/// All `len`-bit masks with `m` bits set, ascending.
fn masks_of_size(len: usize, m: usize) -> impl Iterator<Item = u64> {
    let limit = if len == 64 { None } else { Some(1u64 << len) };
    let first = if m == 0 { 0 } else { u64::MAX >> (64 - m) };
    let mut next = Some(first);
    std::iter::from_fn(move || {
        let x = next?;
        if limit.is_some_and(|l| x >= l) {
            return None;
        }
        next = if x == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x.checked_add(c);
            r.map(|r| (((r ^ x) >> 2) / c) | r)
        };
        Some(x)
    })
}
