//! Sweeps over binary levels and uniform set systems.

use std::time::Instant;

use delshadow_core::seq::all_sequences;
use delshadow_core::{
    colex_initial_positions, colex_less, complement_system, count, delta, ones_count, ones_count_colex,
    segment_realize, simplicial_initial_segment, simplicial_less, Component, Family, ReducedWord,
    SegmentDescriptor, SetSystem,
};
use delshadow_core::extremal::{colex_final_system, colex_initial_system};
use serde_json::json;

use crate::budget::SearchBudget;
use crate::engine::{ShadowTable, EXHAUSTIVE_LIMIT};
use crate::par::map_ordered;
use crate::report::{VerificationReport, Violation};
use crate::Result;

/// Outcome of one shard of a sweep.
#[derive(Default)]
struct Tally {
    instances: u64,
    violations: Vec<Violation>,
    notes: Vec<String>,
}

impl Tally {
    fn fail(&mut self, v: Violation) {
        self.violations.push(v);
    }
}

fn absorb(report: &mut VerificationReport, tallies: Vec<Result<Tally>>) -> Result<()> {
    for t in tallies {
        let t = t?;
        report.instances += t.instances;
        report.violations.extend(t.violations);
        report.observations.extend(t.notes);
    }
    Ok(())
}

/// The binary component `{x ∈ {0,1}^n : x has r zeros}` in colex order of
/// zero sets.
fn binary_level(n: usize, r: usize) -> Result<Component> {
    Ok(Component::new(ReducedWord::new(1, vec![1; n - r])?, n))
}

/// In the binary level with `r` zeros, colex initial segments minimise the
/// δ-shadow, and reversing `B ∪ {words with more than r zeros}` gives an
/// initial segment of the simplicial order.
pub fn check_lemma3(n_max: usize, budget: &SearchBudget) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new("lemma3", json!({"n_max": n_max, "k": 1}));
    let jobs: Vec<(usize, usize)> = (1..=n_max).flat_map(|n| (0..=n).map(move |r| (n, r))).collect();
    let tallies = map_ordered(budget.execution, jobs, |(n, r)| lemma3_level(n, r, budget));
    absorb(&mut report, tallies)?;
    Ok(report.finish(started))
}

fn lemma3_level(n: usize, r: usize, budget: &SearchBudget) -> Result<Tally> {
    let mut tally = Tally::default();
    let level = binary_level(n, r)?;
    let members = level.members();
    let above: Vec<_> = all_sequences(n, 1)?.filter(|x| x.zero_count() > r).collect();
    let searchable = members.len() <= EXHAUSTIVE_LIMIT;
    let profile = if searchable {
        let table = ShadowTable::from_elements(n, 1, 0, members.clone())?;
        let p = table.full_profile(budget.execution)?;
        tally.instances += p.instances;
        Some(p)
    } else {
        tally.notes.push(format!("n={n} r={r}: level of {} words not searched", members.len()));
        None
    };
    for m in 0..=members.len() {
        let b = Family::from_sequences(n, 1, members[..m].iter().cloned())?;
        let shadow = delta(&b)?.len() as u32;
        if let Some(p) = &profile {
            let st = &p.sizes[m];
            if st.min_shadow != shadow {
                tally.fail(Violation::new(
                    &b,
                    format!("n={n} r={r} m={m}: colex segment has δ-shadow {shadow}, minimum is {}", st.min_shadow),
                ));
            }
        }
        // reversal onto the simplicial order
        let c2 = Family::from_sequences(n, 1, b.iter().cloned().chain(above.iter().cloned()))?;
        let simplicial = simplicial_initial_segment(n, c2.len() as u64)?;
        tally.instances += 1;
        if c2.reversed() != simplicial {
            tally.fail(Violation::new(&c2, format!("n={n} r={r} m={m}: reversal is not a simplicial initial segment")));
        }
    }
    // order isomorphism: colex on zero sets matches simplicial order after reversal
    for x in &members {
        for y in &members {
            let colex = colex_less(&x.zero_positions(), &y.zero_positions())?;
            let simp = simplicial_less(&x.reversed(), &y.reversed())?;
            tally.instances += 1;
            if colex != simp {
                let pair = Family::from_sequences(n, 1, [x.clone(), y.clone()])?;
                tally.fail(Violation::new(&pair, "reversal does not carry colex to the simplicial order"));
            }
        }
    }
    Ok(tally)
}

/// `|δA| = |𝒜₁|` for every colex initial segment `A` of every binary level.
pub fn check_lemma4(n_max: usize, budget: &SearchBudget) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new("lemma4", json!({"n_max": n_max}));
    let jobs: Vec<(usize, usize)> = (1..=n_max).flat_map(|n| (0..=n).map(move |r| (n, r))).collect();
    let tallies = map_ordered(budget.execution, jobs, |(n, r)| {
        let mut tally = Tally::default();
        let members = binary_level(n, r)?.members();
        for m in 0..=members.len() {
            let a = Family::from_sequences(n, 1, members[..m].iter().cloned())?;
            let direct = delta(&a)?.len() as u64;
            let counted = ones_count_colex(n, r, m as u64)?;
            tally.instances += 1;
            if direct != counted {
                tally.fail(Violation::new(
                    &a,
                    format!("n={n} r={r} m={m}: |δA| = {direct} but the colex count is {counted}"),
                ));
            }
        }
        Ok(tally)
    });
    absorb(&mut report, tallies)?;
    Ok(report.finish(started))
}

/// The four segment inequalities on `[n]^(r)` plus complement duality.
pub fn check_lemma9(n_max: usize, budget: &SearchBudget) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new("lemma9", json!({"n_max": n_max}));
    let jobs: Vec<(usize, usize)> = (1..=n_max).flat_map(|n| (0..=n).map(move |r| (n, r))).collect();
    let tallies = map_ordered(budget.execution, jobs, |(n, r)| lemma9_layer(n, r));
    absorb(&mut report, tallies)?;
    Ok(report.finish(started))
}

fn fail_sys(tally: &mut Tally, sys: &SetSystem, note: String) {
    tally.fail(Violation {
        family: sys.iter().map(|s| s.to_string()).collect(),
        note,
    });
}

/// Every check whose left-hand side lives in `[n]^(r)`.
fn lemma9_layer(n: usize, r: usize) -> Result<Tally> {
    let mut tally = Tally::default();
    let total = count::binomial(n as u64, r as u64);
    let initial_ones: Vec<u64> = (0..=total).map(|m| ones_count_colex(n, r, m)).collect::<Result<_, _>>()?;
    let final_ones: Vec<u64> = (0..=total)
        .map(|m| colex_final_system(n, r, m).map(|s| ones_count(&s)))
        .collect::<Result<_, _>>()?;

    for lower in 0..=total {
        for upper in lower..=total {
            let seg = segment_realize(&SegmentDescriptor::new(n, r, lower, upper)?);
            let size = (upper - lower) as usize;
            let ones = ones_count(&seg);
            tally.instances += 1;
            // claim 1: a segment has no more sets through 1 than the initial segment
            if ones > initial_ones[size] {
                fail_sys(&mut tally, &seg, format!("[{n}]^({r}) segment {lower}..{upper}: {ones} > {}", initial_ones[size]));
            }
            // claim 3: and no fewer than the final segment
            if ones < final_ones[size] {
                fail_sys(&mut tally, &seg, format!("[{n}]^({r}) segment {lower}..{upper}: {ones} < final {}", final_ones[size]));
            }
            // |ℬ| = |ℬ₁| + |(ℬ̄)₁|
            let comp = complement_system(&seg);
            if ones + ones_count(&comp) != seg.len() as u64 {
                fail_sys(&mut tally, &seg, format!("[{n}]^({r}) segment {lower}..{upper}: complement count mismatch"));
            }
        }
    }

    for m in 0..=total {
        // the complement of a final segment is an initial segment
        let fin = colex_final_system(n, r, m)?;
        tally.instances += 1;
        if complement_system(&fin) != colex_initial_system(n, n - r, m)? {
            fail_sys(&mut tally, &fin, format!("[{n}]^({r}) final segment of size {m}: complement is not initial"));
        }
        // the counting recursion against enumeration
        let init = colex_initial_system(n, r, m)?;
        if ones_count(&init) != initial_ones[m as usize] {
            fail_sys(&mut tally, &init, format!("[{n}]^({r}) initial segment of size {m}: recursion disagrees"));
        }
    }

    if r < n {
        let next = count::binomial(n as u64, r as u64 + 1);
        for m in 0..=total.min(next) {
            tally.instances += 1;
            // claim 2: initial segments, one layer up
            let up = ones_count_colex(n, r + 1, m)?;
            if initial_ones[m as usize] > up {
                let sys = SetSystem::from_sets(n, r, colex_initial_positions(n, r, m)?)?;
                fail_sys(&mut tally, &sys, format!("[{n}]^({r}) vs ({}) initial, size {m}: {} > {up}", r + 1, initial_ones[m as usize]));
            }
            // claim 4: final segments, one layer up
            let up_final = ones_count(&colex_final_system(n, r + 1, m)?);
            if final_ones[m as usize] > up_final {
                let sys = colex_final_system(n, r, m)?;
                fail_sys(&mut tally, &sys, format!("[{n}]^({r}) vs ({}) final, size {m}: {} > {up_final}", r + 1, final_ones[m as usize]));
            }
        }
    }
    Ok(tally)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        let b = SearchBudget::exhaustive();
        for r in [check_lemma3(4, &b), check_lemma4(6, &b), check_lemma9(5, &b)] {
            let r = r.unwrap();
            assert!(r.passed(), "{}: {:?}", r.check, r.violations);
            assert!(r.instances > 0);
        }
    }

    #[test]
    fn lemma4_counts_every_segment() {
        // Σ_r (C(n,r) + 1) = 2^n + n + 1 segments per n
        let r = check_lemma4(3, &SearchBudget::exhaustive()).unwrap();
        assert_eq!(r.instances, (2 + 2) + (4 + 3) + (8 + 4));
    }
}
