//! Bitmask brute-force search over families of words.
//!
//! A search runs over a fixed list of candidate words (usually the whole
//! cube `{0,…,k}^n`). Candidate `i` is bit `i` of a family mask, and its
//! δ_r-shadow is precomputed as a bitmask over the lower cube
//! `{0,…,k}^(n−1)` (words are indexed base `k+1`, first coordinate most
//! significant). The shadow of a family is then the OR of its members'
//! masks. For speed the candidates are cut into chunks of at most
//! [`CHUNK_BITS`] bits with a table of the OR (and of the `v_r` weight sum)
//! of every sub-mask of the chunk, so a family costs one lookup per chunk.
//!
//! Three kinds of pass are offered:
//!
//! * [`ShadowTable::full_profile`]: all `2^U` families (`U ≤ 27`), with
//!   per-size statistics;
//! * [`ShadowTable::scan_size`]: all `C(U, m)` families of one size
//!   (`U ≤ 64`), by Gosper's combination successor, sharded by the largest
//!   member;
//! * [`ShadowTable::sample_size`]: seeded uniform samples of size-`m`
//!   families.
//!
//! Samples are drawn in blocks of [`SAMPLE_BLOCK`]. Block `b` for size `m`
//! uses ChaCha8 seeded with `seed_from_u64(seed)` on stream
//! `(m << 40) | b`; each sample starts from the identity arrangement of the
//! candidates and takes the `m` entries fixed by rand's partial
//! Fisher–Yates shuffle. Sample `j` of block `b` has id `1024·b + j`.
//!
//! All per-size statistics merge by "smaller value, then smaller key", where
//! the key is the family mask (exhaustive passes) or the sample id, so every
//! pass returns the same answer whatever the number of workers.

use delshadow_core::seq::{all_sequences, decode_index, encode_index};
use delshadow_core::{count, Family, Sequence, ShadowRadius};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::budget::{Execution, SearchBudget, SearchMode};
use crate::par::fold_range;
use crate::{Result, VerifyError};

/// Largest candidate list for which every subset may be visited.
pub const EXHAUSTIVE_LIMIT: usize = 27;
/// Largest candidate list for size-restricted enumeration.
pub const COMBINATION_LIMIT: usize = 64;
/// Largest lower cube a shadow mask can describe.
pub const LOWER_LIMIT: u64 = 128;
/// Largest number of families one size-restricted scan may visit.
pub const COMBINATION_BUDGET: u64 = 1 << 34;
pub const CHUNK_BITS: usize = 14;
pub const SAMPLE_BLOCK: u64 = 1024;

/// Statistics of one family size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeStats {
    /// Smallest shadow seen, `u32::MAX` if nothing was seen.
    pub min_shadow: u32,
    /// Number of families attaining `min_shadow`.
    pub count_at_min: u64,
    /// Smallest key (mask or sample id) attaining `min_shadow`.
    pub key_at_min: u64,
    /// Smallest `|δ_r A|·n(r+1) − Σ_{x∈A} v_r(x)`.
    pub min_slack: i64,
    pub key_at_slack: u64,
}

impl SizeStats {
    pub const EMPTY: SizeStats = SizeStats {
        min_shadow: u32::MAX,
        count_at_min: 0,
        key_at_min: u64::MAX,
        min_slack: i64::MAX,
        key_at_slack: u64::MAX,
    };

    pub fn seen(&self) -> bool {
        self.count_at_min > 0
    }

    #[inline]
    fn record(&mut self, shadow: u32, slack: i64, key: u64) {
        if shadow < self.min_shadow {
            self.min_shadow = shadow;
            self.count_at_min = 1;
            self.key_at_min = key;
        } else if shadow == self.min_shadow {
            self.count_at_min += 1;
            self.key_at_min = self.key_at_min.min(key);
        }
        if (slack, key) < (self.min_slack, self.key_at_slack) {
            self.min_slack = slack;
            self.key_at_slack = key;
        }
    }

    fn merge(self, other: SizeStats) -> SizeStats {
        let mut out = self;
        if other.min_shadow < out.min_shadow {
            out.min_shadow = other.min_shadow;
            out.count_at_min = other.count_at_min;
            out.key_at_min = other.key_at_min;
        } else if other.min_shadow == out.min_shadow {
            out.count_at_min += other.count_at_min;
            out.key_at_min = out.key_at_min.min(other.key_at_min);
        }
        if (other.min_slack, other.key_at_slack) < (out.min_slack, out.key_at_slack) {
            out.min_slack = other.min_slack;
            out.key_at_slack = other.key_at_slack;
        }
        out
    }
}

/// Per-size statistics of a full pass; `sizes[m]` covers families of size `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub sizes: Vec<SizeStats>,
    pub instances: u64,
}

impl Profile {
    fn empty(len: usize) -> Self {
        Self {
            sizes: vec![SizeStats::EMPTY; len + 1],
            instances: 0,
        }
    }

    fn merge(mut self, other: Profile) -> Profile {
        for (a, b) in self.sizes.iter_mut().zip(other.sizes) {
            *a = a.merge(b);
        }
        self.instances += other.instances;
        self
    }
}

/// Result of a single-size scan or sampling run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scan {
    pub stats: SizeStats,
    pub instances: u64,
}

struct Chunk {
    offset: usize,
    bits: usize,
    or: Vec<u128>,
    weight: Vec<u32>,
}

impl Chunk {
    fn new(masks: &[u128], weights: &[u32], offset: usize, bits: usize) -> Self {
        let size = 1usize << bits;
        let mut or = vec![0u128; size];
        let mut weight = vec![0u32; size];
        for sub in 1..size {
            let low = sub.trailing_zeros() as usize;
            let rest = sub & (sub - 1);
            or[sub] = or[rest] | masks[offset + low];
            weight[sub] = weight[rest] + weights[offset + low];
        }
        Self {
            offset,
            bits,
            or,
            weight,
        }
    }

    #[inline]
    fn part(&self, mask: u64) -> usize {
        ((mask >> self.offset) & ((1u64 << self.bits) - 1)) as usize
    }
}

/// Candidate words with their shadow masks and lookup tables.
pub struct ShadowTable {
    n: usize,
    k: u8,
    r_del: ShadowRadius,
    elements: Vec<Sequence>,
    masks: Vec<u128>,
    weights: Vec<u32>,
    chunks: Vec<Chunk>,
}

impl ShadowTable {
    /// The whole cube `{0,…,k}^n`, candidate `i` being the word of index `i`.
    pub fn cube(n: usize, k: u8, r_del: u8) -> Result<Self> {
        let total = count::cube_size(n, k)?;
        if total > 1 << 20 {
            return Err(VerifyError::Infeasible {
                universe: total,
                limit: 1 << 20,
                mode: "any",
            });
        }
        Self::from_elements(n, k, r_del, all_sequences(n, k)?.collect())
    }

    pub fn from_elements(n: usize, k: u8, r_del: u8, elements: Vec<Sequence>) -> Result<Self> {
        if n == 0 {
            return Err(delshadow_core::Error::EmptyWords.into());
        }
        let r_del = ShadowRadius::new(r_del, k)?;
        let lower = count::cube_size(n - 1, k)?;
        if lower > LOWER_LIMIT {
            return Err(VerifyError::Infeasible {
                universe: lower,
                limit: LOWER_LIMIT,
                mode: "shadow mask",
            });
        }
        let mut masks = Vec::with_capacity(elements.len());
        let mut weights = Vec::with_capacity(elements.len());
        for x in &elements {
            if x.len() != n || x.k() != k {
                return Err(delshadow_core::Error::DimensionMismatch {
                    expected_n: n,
                    expected_k: k,
                    found_n: x.len(),
                    found_k: x.k(),
                }
                .into());
            }
            let mut mask = 0u128;
            for (p, &v) in x.entries().iter().enumerate() {
                if v <= r_del.get() {
                    mask |= 1u128 << encode_index(&x.delete(p + 1));
                }
            }
            masks.push(mask);
            weights.push(x.low_count(r_del.get()) as u32);
        }
        let mut chunks = Vec::new();
        if elements.len() <= COMBINATION_LIMIT {
            let mut offset = 0;
            while offset < elements.len() {
                let bits = CHUNK_BITS.min(elements.len() - offset);
                chunks.push(Chunk::new(&masks, &weights, offset, bits));
                offset += bits;
            }
        }
        Ok(Self {
            n,
            k,
            r_del,
            elements,
            masks,
            weights,
            chunks,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn r_del(&self) -> ShadowRadius {
        self.r_del
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Sequence] {
        &self.elements
    }

    /// `n(r+1)`, the denominator of the averaging bound.
    pub fn denominator(&self) -> u64 {
        self.n as u64 * (u64::from(self.r_del.get()) + 1)
    }

    pub fn family_of_mask(&self, mask: u64) -> Family {
        let members = (0..self.len()).filter(|&i| mask >> i & 1 == 1).map(|i| self.elements[i].clone());
        Family::from_sequences(self.n, self.k, members).expect("candidates share one space")
    }

    pub fn family_of_indices(&self, indices: &[usize]) -> Family {
        let members = indices.iter().map(|&i| self.elements[i].clone());
        Family::from_sequences(self.n, self.k, members).expect("candidates share one space")
    }

    /// `|δ_r A|` for the family with the given mask.
    pub fn shadow_of_mask(&self, mask: u64) -> u32 {
        self.lookup(mask).0
    }

    /// `|δ_r A|` for the family of the given candidates.
    pub fn shadow_of_indices(&self, indices: &[usize]) -> u32 {
        indices.iter().fold(0u128, |acc, &i| acc | self.masks[i]).count_ones()
    }

    #[inline]
    fn lookup(&self, mask: u64) -> (u32, u32) {
        let mut or = 0u128;
        let mut weight = 0u32;
        for c in &self.chunks {
            let p = c.part(mask);
            or |= c.or[p];
            weight += c.weight[p];
        }
        (or.count_ones(), weight)
    }

    #[inline]
    fn slack(&self, shadow: u32, weight: u32) -> i64 {
        i64::from(shadow) * self.denominator() as i64 - i64::from(weight)
    }

    /// Visits all `2^U` families.
    pub fn full_profile(&self, exec: Execution) -> Result<Profile> {
        let len = self.len();
        if len > EXHAUSTIVE_LIMIT {
            return Err(VerifyError::Infeasible {
                universe: len as u64,
                limit: EXHAUSTIVE_LIMIT as u64,
                mode: "exhaustive",
            });
        }
        if len == 0 {
            let mut p = Profile::empty(0);
            p.sizes[0].record(0, 0, 0);
            p.instances = 1;
            return Ok(p);
        }
        let lo = &self.chunks[0];
        let hi = self.chunks.get(1);
        let lo_bits = lo.bits;
        let lo_pop: Vec<u32> = (0..1u32 << lo_bits).map(u32::count_ones).collect();
        let hi_count = 1u64 << (len - lo_bits);
        let denom = self.denominator() as i64;
        Ok(fold_range(
            exec,
            0..hi_count,
            || Profile::empty(len),
            |mut acc, h| {
                let (h_or, h_w) = match hi {
                    Some(c) => (c.or[h as usize], c.weight[h as usize]),
                    None => (0, 0),
                };
                let h_size = h.count_ones();
                let base = h << lo_bits;
                for (l, ((&or, &w), &pop)) in lo.or.iter().zip(&lo.weight).zip(&lo_pop).enumerate() {
                    let shadow = (or | h_or).count_ones();
                    let weight = w + h_w;
                    let slack = i64::from(shadow) * denom - i64::from(weight);
                    let size = (h_size + pop) as usize;
                    acc.sizes[size].record(shadow, slack, base | l as u64);
                }
                acc.instances += lo.or.len() as u64;
                acc
            },
            Profile::merge,
        ))
    }

    /// Visits all `C(U, m)` families of size `m`.
    pub fn scan_size(&self, m: usize, exec: Execution) -> Result<Scan> {
        let len = self.len();
        if len > COMBINATION_LIMIT {
            return Err(VerifyError::Infeasible {
                universe: len as u64,
                limit: COMBINATION_LIMIT as u64,
                mode: "size-restricted",
            });
        }
        self.check_size(m)?;
        let total = count::checked_binomial(len as u64, m as u64)?;
        if total > COMBINATION_BUDGET {
            return Err(VerifyError::InvalidBudget(format!(
                "{total} families of size {m} exceed the enumeration budget of {COMBINATION_BUDGET}"
            )));
        }
        if m == 0 {
            let mut stats = SizeStats::EMPTY;
            stats.record(0, 0, 0);
            return Ok(Scan { stats, instances: 1 });
        }
        // shard by the largest member `top`; the rest is an (m−1)-subset below it
        let scan = fold_range(
            exec,
            (m as u64 - 1)..len as u64,
            || Scan {
                stats: SizeStats::EMPTY,
                instances: 0,
            },
            |mut acc, top| {
                let top_bit = 1u64 << top;
                let mut visit = |rest: u64| {
                    let mask = rest | top_bit;
                    let (shadow, weight) = self.lookup(mask);
                    acc.stats.record(shadow, self.slack(shadow, weight), mask);
                    acc.instances += 1;
                };
                if m == 1 {
                    visit(0);
                } else {
                    let mut x = (1u64 << (m - 1)) - 1;
                    while x < top_bit {
                        visit(x);
                        let c = x & x.wrapping_neg();
                        let r = x + c;
                        x = (((r ^ x) >> 2) / c) | r;
                    }
                }
                acc
            },
            |a, b| Scan {
                stats: a.stats.merge(b.stats),
                instances: a.instances + b.instances,
            },
        );
        debug_assert_eq!(scan.instances, total);
        Ok(scan)
    }

    /// Evaluates `samples` seeded uniform families of size `m`; keys are
    /// sample ids, see [`ShadowTable::sample_members`].
    pub fn sample_size(&self, m: usize, samples: u64, seed: u64, exec: Execution) -> Result<Scan> {
        self.check_size(m)?;
        let blocks = samples.div_ceil(SAMPLE_BLOCK);
        Ok(fold_range(
            exec,
            0..blocks,
            || Scan {
                stats: SizeStats::EMPTY,
                instances: 0,
            },
            |mut acc, b| {
                let count = SAMPLE_BLOCK.min(samples - b * SAMPLE_BLOCK);
                let mut rng = sample_rng(seed, m, b);
                let mut perm: Vec<usize> = Vec::with_capacity(self.len());
                for j in 0..count {
                    perm.clear();
                    perm.extend(0..self.len());
                    let (chosen, _) = perm.partial_shuffle(&mut rng, m);
                    let (mut or, mut weight) = (0u128, 0u32);
                    for &i in chosen.iter() {
                        or |= self.masks[i];
                        weight += self.weights[i];
                    }
                    let shadow = or.count_ones();
                    acc.stats.record(shadow, self.slack(shadow, weight), b * SAMPLE_BLOCK + j);
                    acc.instances += 1;
                }
                acc
            },
            |a, b| Scan {
                stats: a.stats.merge(b.stats),
                instances: a.instances + b.instances,
            },
        ))
    }

    /// The candidates chosen by sample `id` of size `m`, sorted.
    pub fn sample_members(&self, m: usize, seed: u64, id: u64) -> Vec<usize> {
        let (b, j) = (id / SAMPLE_BLOCK, id % SAMPLE_BLOCK);
        let mut rng = sample_rng(seed, m, b);
        let mut perm: Vec<usize> = Vec::with_capacity(self.len());
        for step in 0..=j {
            perm.clear();
            perm.extend(0..self.len());
            let (chosen, _) = perm.partial_shuffle(&mut rng, m);
            if step == j {
                let mut out = chosen.to_vec();
                out.sort_unstable();
                return out;
            }
        }
        unreachable!()
    }

    fn check_size(&self, m: usize) -> Result<()> {
        if m > self.len() {
            return Err(delshadow_core::Error::OutOfRange {
                what: "family size",
                value: m as u64,
                max: self.len() as u64,
            }
            .into());
        }
        Ok(())
    }
}

fn sample_rng(seed: u64, m: usize, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((m as u64) << 40) | block);
    rng
}

/// Outcome of [`brute_force_min_shadow`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinShadow {
    /// The smallest shadow found.
    pub value: u64,
    /// A family attaining `value`.
    pub witness: Family,
    /// `true` if every family of the size was visited; otherwise `value`
    /// is only an upper bound on the true minimum.
    pub exact: bool,
    pub instances: u64,
}

/// Smallest `|δ_{r_del} A|` over families `A ⊆ {0,…,k}^n` of size `m`.
pub fn brute_force_min_shadow(n: usize, k: u8, m: u64, r_del: u8, budget: &SearchBudget) -> Result<MinShadow> {
    budget.validate()?;
    let table = ShadowTable::cube(n, k, r_del)?;
    let m = usize::try_from(m).map_err(|_| VerifyError::InvalidParameter(format!("family size {m}")))?;
    min_shadow_in(&table, m, budget)
}

/// [`brute_force_min_shadow`] over an existing table.
pub fn min_shadow_in(table: &ShadowTable, m: usize, budget: &SearchBudget) -> Result<MinShadow> {
    if budget.exhaustive_for(m) {
        if budget.mode == SearchMode::Exhaustive && table.len() > EXHAUSTIVE_LIMIT {
            return Err(VerifyError::Infeasible {
                universe: table.len() as u64,
                limit: EXHAUSTIVE_LIMIT as u64,
                mode: "exhaustive",
            });
        }
        let scan = table.scan_size(m, budget.execution)?;
        return Ok(MinShadow {
            value: u64::from(scan.stats.min_shadow),
            witness: table.family_of_mask(scan.stats.key_at_min),
            exact: true,
            instances: scan.instances,
        });
    }
    let scan = table.sample_size(m, budget.samples, budget.rng_seed, budget.execution)?;
    let members = table.sample_members(m, budget.rng_seed, scan.stats.key_at_min);
    Ok(MinShadow {
        value: u64::from(scan.stats.min_shadow),
        witness: table.family_of_indices(&members),
        exact: false,
        instances: scan.instances,
    })
}

/// Index of `x` in the cube ordering used by [`ShadowTable::cube`].
pub fn cube_index(x: &Sequence) -> u64 {
    encode_index(x)
}

/// Inverse of [`cube_index`].
pub fn cube_word(n: usize, k: u8, index: u64) -> Sequence {
    decode_index(n, k, index)
}
