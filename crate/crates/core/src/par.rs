//! Data-parallel helpers. With the `parallel` feature the work is spread over
//! the rayon pool; without it the same fold runs sequentially.

use std::collections::BTreeSet;

use crate::seq::Sequence;

/// Below this many inputs the sequential path is used even when parallel.
#[cfg(feature = "parallel")]
const PARALLEL_THRESHOLD: usize = 2048;

/// Flat-maps `items` into a deduplicated set.
pub(crate) fn collect_set<F, I>(items: &[Sequence], f: F) -> BTreeSet<Sequence>
where
    F: Fn(&Sequence) -> I + Sync + Send,
    I: IntoIterator<Item = Sequence>,
{
    #[cfg(feature = "parallel")]
    if items.len() >= PARALLEL_THRESHOLD {
        use rayon::prelude::*;
        return items
            .par_chunks(512)
            .map(|chunk| chunk.iter().flat_map(&f).collect::<BTreeSet<_>>())
            .reduce(BTreeSet::new, |mut a, mut b| {
                if a.len() < b.len() {
                    std::mem::swap(&mut a, &mut b);
                }
                a.append(&mut b);
                a
            });
    }
    items.iter().flat_map(f).collect()
}
