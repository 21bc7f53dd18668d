//! How much searching a check is allowed to do.

use crate::{Result, VerifyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchMode {
    /// Visit every family.
    Exhaustive,
    /// Visit every family of size at most `max_size`, sample the larger ones.
    ExhaustiveUpToSize,
    /// Sample `samples` families of each size.
    RandomSamples,
}

impl SearchMode {
    pub fn name(self) -> &'static str {
        match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::ExhaustiveUpToSize => "exhaustive_up_to_size",
            SearchMode::RandomSamples => "random_samples",
        }
    }
}

/// Whether the search engine may use the worker pool. Without the
/// `parallel` feature both variants run sequentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SearchBudget {
    pub mode: SearchMode,
    pub max_size: usize,
    pub samples: u64,
    pub rng_seed: u64,
    pub execution: Execution,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            mode: SearchMode::Exhaustive,
            max_size: 6,
            samples: 100_000,
            rng_seed: 0,
            execution: Execution::Parallel,
        }
    }
}

impl SearchBudget {
    pub fn exhaustive() -> Self {
        Self::default()
    }

    pub fn up_to_size(max_size: usize, samples: u64, rng_seed: u64) -> Self {
        Self {
            mode: SearchMode::ExhaustiveUpToSize,
            max_size,
            samples,
            rng_seed,
            ..Self::default()
        }
    }

    pub fn random(samples: u64, rng_seed: u64) -> Self {
        Self {
            mode: SearchMode::RandomSamples,
            samples,
            rng_seed,
            ..Self::default()
        }
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.mode != SearchMode::Exhaustive && self.samples == 0 {
            return Err(VerifyError::InvalidBudget(format!(
                "{} mode needs samples > 0",
                self.mode.name()
            )));
        }
        Ok(())
    }

    /// Whether a family of size `m` is searched exhaustively.
    pub(crate) fn exhaustive_for(&self, m: usize) -> bool {
        match self.mode {
            SearchMode::Exhaustive => true,
            SearchMode::ExhaustiveUpToSize => m <= self.max_size,
            SearchMode::RandomSamples => false,
        }
    }
}
