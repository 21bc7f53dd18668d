//! The averaging lower bound for δ_r, its equality case, and the degree
//! count it rests on.

use std::time::Instant;

use delshadow_core::seq::all_sequences;
use delshadow_core::{
    canonical_family, count, deletion_multidegree, delta_r, level_union_shadow_size, prop10_lower_bound,
    CanonicalKind, ShadowRadius,
};
use num_rational::Ratio;
use serde_json::json;

use crate::budget::{SearchBudget, SearchMode};
use crate::engine::{ShadowTable, EXHAUSTIVE_LIMIT};
use crate::par::map_ordered;
use crate::report::{VerificationReport, Violation};
use crate::Result;

/// `|δ_r A| · n(r+1) ≥ Σ_{x∈A} v_r(x)` for every radius `r`: on every family
/// of `exhaustive` universes (when the budget is exhaustive) and on
/// `budget.samples` random families, spread evenly over sizes, of each
/// `random` universe.
pub fn check_prop10(
    exhaustive: &[(usize, u8)],
    random: &[(usize, u8)],
    budget: &SearchBudget,
) -> Result<VerificationReport> {
    let started = Instant::now();
    budget.validate()?;
    let mut report = VerificationReport::new(
        "prop10",
        json!({
            "universes": exhaustive,
            "random_universes": random,
            "mode": budget.mode.name(),
            "samples": budget.samples,
            "seed": budget.rng_seed,
        }),
    );
    let mut jobs = Vec::new();
    for &(n, k) in exhaustive {
        let by_search = budget.mode == SearchMode::Exhaustive && count::cube_size(n, k)? <= EXHAUSTIVE_LIMIT as u64;
        jobs.extend((0..=k).map(|r| (n, k, r, by_search)));
    }
    for &(n, k) in random {
        jobs.extend((0..=k).map(|r| (n, k, r, false)));
    }
    for (n, k, r, by_search) in jobs {
        let table = ShadowTable::cube(n, k, r)?;
        let mut tight_sizes = 0;
        let stats: Vec<(usize, crate::engine::SizeStats, bool)> = if by_search {
            let p = table.full_profile(budget.execution)?;
            report.instances += p.instances;
            p.sizes.into_iter().enumerate().map(|(m, st)| (m, st, true)).collect()
        } else {
            if budget.samples == 0 {
                continue;
            }
            let per_size = budget.samples.div_ceil(table.len() as u64 + 1);
            let mut out = Vec::new();
            for m in 0..=table.len() {
                let scan = table.sample_size(m, per_size, budget.rng_seed, budget.execution)?;
                report.instances += scan.instances;
                out.push((m, scan.stats, false));
            }
            out
        };
        for (m, st, exact) in stats {
            if st.min_slack == 0 {
                tight_sizes += 1;
            }
            if st.min_slack < 0 {
                let family = if exact {
                    table.family_of_mask(st.key_at_slack)
                } else {
                    table.family_of_indices(&table.sample_members(m, budget.rng_seed, st.key_at_slack))
                };
                let bound = prop10_lower_bound(&family, ShadowRadius::new(r, k)?)?;
                let shadow = delta_r(&family, ShadowRadius::new(r, k)?)?.len();
                report.violate(Violation::new(
                    &family,
                    format!("n={n} k={k} r={r}: |δ_r A| = {shadow} < bound {bound}"),
                ));
            }
        }
        report.observe(format!(
            "n={n} k={k} r={r}: bound attained at {tight_sizes} of {} sizes ({})",
            table.len() + 1,
            if by_search { "exhaustive" } else { "sampled" }
        ));
    }
    Ok(report.finish(started))
}

/// `|δ_r L_{≤s}(n)|` equals the level-union formula and the averaging bound
/// for all `n ≤ n_max`, `k ≤ k_max`, `r < k`, `s ≤ n`; in the `unique`
/// universes every other family of the same size has a larger δ_r-shadow.
pub fn check_corollary11(
    n_max: usize,
    k_max: u8,
    unique: &[(usize, u8)],
    budget: &SearchBudget,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new(
        "corollary11",
        json!({"n_max": n_max, "k_max": k_max, "uniqueness_universes": unique}),
    );
    for n in 1..=n_max {
        for k in 1..=k_max {
            for r in 0..k {
                let radius = ShadowRadius::new(r, k)?;
                for s in 0..=n {
                    let l = canonical_family(n, k, CanonicalKind::LevelUnion { r_del: r, s })?;
                    let direct = delta_r(&l, radius)?.len() as u64;
                    let formula = level_union_shadow_size(n, k, r, s)?;
                    let bound = prop10_lower_bound(&l, radius)?;
                    report.instances += 1;
                    if direct != formula || bound != Ratio::from_integer(direct) {
                        report.violate(Violation::new(
                            &l,
                            format!("n={n} k={k} r={r} s={s}: direct {direct}, formula {formula}, bound {bound}"),
                        ));
                    }
                }
            }
            report.observe(format!("n={n} k={k}: |δ_r L_(≤s)| = formula = bound for all r < k, s ≤ n"));
        }
    }
    for &(n, k) in unique {
        for r in 0..k {
            let radius = ShadowRadius::new(r, k)?;
            let table = ShadowTable::cube(n, k, r)?;
            let profile = table.full_profile(budget.execution)?;
            report.instances += profile.instances;
            for s in 0..=n {
                let l = canonical_family(n, k, CanonicalKind::LevelUnion { r_del: r, s })?;
                let shadow = delta_r(&l, radius)?.len() as u32;
                let st = &profile.sizes[l.len()];
                if st.min_shadow != shadow || st.count_at_min != 1 {
                    report.violate(Violation::new(
                        &table.family_of_mask(st.key_at_min),
                        format!(
                            "n={n} k={k} r={r} s={s}: |δ_r L| = {shadow}, minimum {} attained by {} families",
                            st.min_shadow, st.count_at_min
                        ),
                    ));
                }
            }
            report.observe(format!("n={n} k={k} r={r}: each L_(≤s) is the unique minimiser of its size"));
        }
    }
    Ok(report.finish(started))
}

/// Every `y ∈ {0,…,k}^(n−1)` has `Σ_x deletion_multidegree(x, y, r) = n(r+1)`.
pub fn check_degree_identity(n_max: usize, k_max: u8, budget: &SearchBudget) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new("degree_identity", json!({"n_max": n_max, "k_max": k_max}));
    let jobs: Vec<(usize, u8)> = (1..=n_max).flat_map(|n| (1..=k_max).map(move |k| (n, k))).collect();
    let results = map_ordered(budget.execution, jobs, |(n, k)| -> Result<(u64, Vec<Violation>)> {
        let upper: Vec<_> = all_sequences(n, k)?.collect();
        let mut instances = 0;
        let mut bad = Vec::new();
        for r in 0..=k {
            let want = n as u64 * (u64::from(r) + 1);
            for y in all_sequences(n - 1, k)? {
                let degree: u64 = upper.iter().map(|x| deletion_multidegree(x, &y, r) as u64).sum();
                instances += 1;
                if degree != want {
                    let f = delshadow_core::Family::from_sequences(n - 1, k, [y.clone()])?;
                    bad.push(Violation::new(&f, format!("n={n} k={k} r={r}: degree {degree}, expected {want}")));
                }
            }
        }
        Ok((instances, bad))
    });
    for r in results {
        let (instances, bad) = r?;
        report.instances += instances;
        report.violations.extend(bad);
    }
    Ok(report.finish(started))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bounds_pass() {
        let b = SearchBudget::exhaustive();
        let r = check_prop10(&[(2, 1), (2, 2)], &[], &b).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.instances, 2 * 16 + 3 * 512);
        let r = check_prop10(&[], &[(3, 2)], &SearchBudget::random(280, 5)).unwrap();
        assert!(r.passed());
        assert_eq!(r.instances, 3 * 28 * 10);
        let r = check_corollary11(3, 2, &[(2, 1)], &b).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        let r = check_degree_identity(3, 2, &b).unwrap();
        assert!(r.passed());
        // Σ_n Σ_k (k+1)·(k+1)^(n−1)
        assert_eq!(r.instances, (2 + 3) + (2 * 2 + 3 * 3) + (2 * 4 + 3 * 9));
    }
}
