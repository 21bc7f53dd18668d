//! Reports depend only on the budget: not on the worker count and not on
//! whether the parallel path is taken.

use delshadow_verify::{run_suite, with_workers, Execution, SearchBudget, SuiteConfig};
use serde_json::Value;

const SUITE: [&str; 6] = ["theorem1", "lemma7", "prop10", "conjecture1", "a_t", "canonicalize"];

fn run(budget: SearchBudget, workers: usize) -> Vec<Value> {
    let config = SuiteConfig {
        budget,
        n: Some(2),
        k: Some(2),
    };
    with_workers(workers, || run_suite(&SUITE, &config))
        .unwrap()
        .iter()
        .map(|r| r.to_json_untimed())
        .collect()
}

#[test]
fn exhaustive_reports_ignore_worker_count() {
    let budget = SearchBudget {
        samples: 300,
        ..SearchBudget::exhaustive()
    };
    let one = run(budget, 1);
    assert_eq!(one, run(budget, 2));
    assert_eq!(one, run(budget, 4));
    assert_eq!(one, run(budget.with_execution(Execution::Sequential), 1));
}

#[test]
fn sampled_reports_ignore_worker_count() {
    for budget in [SearchBudget::random(2_000, 17), SearchBudget::up_to_size(3, 2_000, 17)] {
        let one = run(budget, 1);
        assert_eq!(one, run(budget, 3));
        assert_eq!(one, run(budget.with_execution(Execution::Sequential), 2));
    }
}

#[test]
fn same_seed_same_report() {
    let a = run(SearchBudget::random(500, 1), 2);
    let b = run(SearchBudget::random(500, 1), 2);
    assert_eq!(a, b);
    let c = run(SearchBudget::random(500, 2), 2);
    assert_ne!(a, c, "the seed is part of the report parameters");
}
