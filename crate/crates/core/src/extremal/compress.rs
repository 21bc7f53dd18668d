//! Component compressions and canonicalisation to an initial segment of `≤`.

use std::collections::BTreeMap;

use crate::order::ReducedWords;
use crate::seq::{Component, Family, ReducedWord, Sequence};
use crate::{Error, Result};

/// `C_{s,t}(A)`: pack `A ∩ (C_s ∪ C_t)` into `C_s` first, then `C_t`, each
/// as a colex initial segment of zero sets; everything else is untouched.
///
/// Accepted shapes: `len(s) = len(t)` (both components in one level) or
/// `len(t) = len(s) − 1` (`C_s` one level below `C_t` in zero count).
pub fn compress(a: &Family, s: &ReducedWord, t: &ReducedWord) -> Result<Family> {
    check_pair(a, s, t)?;
    let n = a.n();
    let (cs, ct) = (Component::new(s.clone(), n), Component::new(t.clone(), n));
    let mut out = a.clone();
    let mut total = 0usize;
    for x in a.iter() {
        if cs.contains(x) || ct.contains(x) {
            out.remove(x);
            total += 1;
        }
    }
    let in_s = total.min(cs.size() as usize);
    for x in cs.initial_members(in_s) {
        out.insert(x)?;
    }
    for x in ct.initial_members(total - in_s) {
        out.insert(x)?;
    }
    Ok(out)
}

fn check_pair(a: &Family, s: &ReducedWord, t: &ReducedWord) -> Result<()> {
    if s.k() != a.k() || t.k() != a.k() {
        return Err(Error::InvalidCompression(format!(
            "labels must be words over {{1,…,{}}}",
            a.k()
        )));
    }
    if s == t {
        return Err(Error::InvalidCompression("s and t must differ".into()));
    }
    if s.len() > a.n() || t.len() > a.n() {
        return Err(Error::InvalidCompression(format!(
            "labels longer than n = {}",
            a.n()
        )));
    }
    if s.len() != t.len() && s.len() != t.len() + 1 {
        return Err(Error::InvalidCompression(format!(
            "need len(s) = len(t) or len(s) = len(t) + 1, got {} and {}",
            s.len(),
            t.len()
        )));
    }
    Ok(())
}

/// Termination witnesses for [`canonicalize`]:
/// `v(A) = Σ_j j·|A ∩ L_j(n)|` and, once the active level `i` is known,
/// `w(A) = Σ_j j·|C_{s_j} ∩ A|` over that level's components in `≤_c` order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PotentialValue {
    pub v: u64,
    pub w: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CanonStepKind {
    /// Replace one component's members by a colex initial segment.
    Colex,
    /// `C_{s,t}` with `C_t` one zero-level above `C_s`.
    CrossLevel,
    /// `C_{s,t}` inside the last occupied level, `s <_c t`.
    SameLevel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonStep {
    pub kind: CanonStepKind,
    pub s: ReducedWord,
    pub t: Option<ReducedWord>,
    pub before: PotentialValue,
    pub after: PotentialValue,
}

pub type CanonTrace = Vec<CanonStep>;

/// Rewrites `A` into the initial segment of `≤` of the same size using only
/// compressions and within-component colex replacement; never increases the
/// δ-shadow.
pub fn canonicalize(a: &Family) -> Result<Family> {
    canonicalize_traced(a).map(|(f, _)| f)
}

/// [`canonicalize`] plus the list of effective steps with their potentials.
///
/// Order of work: make every component a colex initial segment; sweep
/// cross-level compressions (levels descending, labels `≤_c`-descending)
/// to a fixpoint; then same-level compressions in the top occupied level;
/// finally colex on the single partial component.
pub fn canonicalize_traced(a: &Family) -> Result<(Family, CanonTrace)> {
    let mut state = State::new(a);
    let mut trace = Vec::new();

    // every component to colex form; potentials are unaffected
    let labels: Vec<ReducedWord> = state.counts.keys().cloned().collect();
    for label in labels {
        if let Some(step) = state.colex_normalize(&label)? {
            trace.push(step);
        }
    }

    let n = a.n();
    let k = a.k();
    loop {
        let mut changed = false;
        for l in (0..n).rev() {
            let s_len = n - l;
            let mut ts: Vec<ReducedWord> = state
                .counts
                .iter()
                .filter(|(w, &c)| w.len() == s_len - 1 && c > 0)
                .map(|(w, _)| w.clone())
                .collect();
            ts.reverse();
            if ts.is_empty() {
                continue;
            }
            let mut ss: Vec<ReducedWord> = ReducedWords::new(s_len, k)?.collect();
            ss.reverse();
            for s in &ss {
                for t in &ts {
                    if state.count(t) > 0 && state.count(s) < state.size(s) {
                        let before = state.potential(None);
                        state.apply(s, t)?;
                        let after = state.potential(None);
                        trace.push(CanonStep {
                            kind: CanonStepKind::CrossLevel,
                            s: s.clone(),
                            t: Some(t.clone()),
                            before,
                            after,
                        });
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let top = state
        .counts
        .iter()
        .filter(|(_, &c)| c > 0)
        .map(|(w, _)| n - w.len())
        .max();
    if let Some(level) = top {
        let order: Vec<ReducedWord> = ReducedWords::new(n - level, k)?.collect();
        loop {
            let mut changed = false;
            for hi in (1..order.len()).rev() {
                for lo in (0..hi).rev() {
                    let (s, t) = (&order[lo], &order[hi]);
                    if state.count(t) > 0 && state.count(s) < state.size(s) {
                        let before = state.potential(Some(&order));
                        state.apply(s, t)?;
                        let after = state.potential(Some(&order));
                        trace.push(CanonStep {
                            kind: CanonStepKind::SameLevel,
                            s: s.clone(),
                            t: Some(t.clone()),
                            before,
                            after,
                        });
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let partial: Vec<ReducedWord> = order
            .iter()
            .filter(|w| {
                let c = state.count(w);
                c > 0 && c < state.size(w)
            })
            .cloned()
            .collect();
        debug_assert!(partial.len() <= 1);
        for label in partial {
            if let Some(step) = state.colex_normalize(&label)? {
                trace.push(step);
            }
        }
    }

    Ok((state.family, trace))
}

/// The family under rewriting plus per-label member counts.
struct State {
    family: Family,
    counts: BTreeMap<ReducedWord, usize>,
}

impl State {
    fn new(a: &Family) -> Self {
        let mut counts = BTreeMap::new();
        for x in a.iter() {
            *counts.entry(x.reduced()).or_insert(0) += 1;
        }
        Self {
            family: a.clone(),
            counts,
        }
    }

    fn count(&self, label: &ReducedWord) -> usize {
        self.counts.get(label).copied().unwrap_or(0)
    }

    fn size(&self, label: &ReducedWord) -> usize {
        Component::new(label.clone(), self.family.n()).size() as usize
    }

    fn potential(&self, level_order: Option<&[ReducedWord]>) -> PotentialValue {
        let n = self.family.n();
        let v = self
            .counts
            .iter()
            .map(|(w, &c)| ((n - w.len()) * c) as u64)
            .sum();
        let w = level_order.map(|order| {
            order
                .iter()
                .enumerate()
                .map(|(j, label)| ((j + 1) * self.count(label)) as u64)
                .sum()
        });
        PotentialValue { v, w }
    }

    fn apply(&mut self, s: &ReducedWord, t: &ReducedWord) -> Result<()> {
        let next = compress(&self.family, s, t)?;
        debug_assert_ne!(next, self.family);
        let total = self.count(s) + self.count(t);
        let in_s = total.min(self.size(s));
        self.counts.insert(s.clone(), in_s);
        self.counts.insert(t.clone(), total - in_s);
        self.family = next;
        Ok(())
    }

    fn colex_normalize(&mut self, label: &ReducedWord) -> Result<Option<CanonStep>> {
        let comp = Component::new(label.clone(), self.family.n());
        let current = self.family.restrict_to(label);
        let target: Vec<Sequence> = comp.initial_members(current.len());
        if target.iter().all(|x| current.contains(x)) {
            return Ok(None);
        }
        let before = self.potential(None);
        for x in current.iter() {
            self.family.remove(x);
        }
        for x in target {
            self.family.insert(x)?;
        }
        Ok(Some(CanonStep {
            kind: CanonStepKind::Colex,
            s: label.clone(),
            t: None,
            before,
            after: self.potential(None),
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::initial_segment_leq;
    use crate::shadow::delta;

    fn fam(k: u8, words: &[&str]) -> Family {
        Family::parse(k, words).unwrap()
    }

    fn word(k: u8, w: &str) -> ReducedWord {
        ReducedWord::parse(k, w).unwrap()
    }

    fn names(f: &Family) -> Vec<String> {
        f.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn compress_same_level() {
        let out = compress(&fam(2, &["01", "02"]), &word(2, "1"), &word(2, "2")).unwrap();
        assert_eq!(names(&out), ["01", "10"]);
    }

    #[test]
    fn compress_cross_level() {
        let out = compress(&fam(2, &["01"]), &word(2, "11"), &word(2, "1")).unwrap();
        assert_eq!(names(&out), ["11"]);
    }

    #[test]
    fn compressed_family_is_fixed() {
        let a = fam(2, &["11", "01", "10", "22"]);
        let out = compress(&a, &word(2, "11"), &word(2, "1")).unwrap();
        assert_eq!(out, a);
    }

    #[test]
    fn compress_rejects_bad_shapes() {
        let a = fam(2, &["01"]);
        assert!(compress(&a, &word(2, "1"), &word(2, "1")).is_err());
        assert!(compress(&a, &word(2, "1"), &word(2, "11")).is_err());
        assert!(compress(&a, &word(2, "11"), &word(2, "")).is_err());
        assert!(compress(&a, &word(2, "111"), &word(2, "11")).is_err());
        assert!(compress(&a, &word(3, "1"), &word(3, "2")).is_err());
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(names(&canonicalize(&fam(1, &["10", "00"])).unwrap()), ["11", "01"]);
        assert_eq!(names(&canonicalize(&fam(1, &["01", "10"])).unwrap()), ["11", "01"]);
        let seg = initial_segment_leq(3, 2, 11).unwrap();
        let (out, trace) = canonicalize_traced(&seg).unwrap();
        assert_eq!(out, seg);
        assert!(trace.is_empty());
    }

    #[test]
    fn canonicalize_small_cubes_exhaustively() {
        for (n, k) in [(1u8, 1u8), (2, 1), (1, 2), (2, 2), (3, 1)] {
            let n = n as usize;
            let cube: Vec<Sequence> = crate::seq::all_sequences(n, k).unwrap().collect();
            for mask in 0u32..(1 << cube.len()) {
                let a = Family::from_sequences(
                    n,
                    k,
                    cube.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, s)| s.clone()),
                )
                .unwrap();
                let (out, trace) = canonicalize_traced(&a).unwrap();
                assert_eq!(out, initial_segment_leq(n, k, a.len() as u64).unwrap());
                if n > 0 {
                    assert!(delta(&out).unwrap().len() <= delta(&a).unwrap().len());
                }
                for step in &trace {
                    match step.kind {
                        CanonStepKind::Colex => assert_eq!(step.before.v, step.after.v),
                        CanonStepKind::CrossLevel => assert!(step.after.v < step.before.v),
                        CanonStepKind::SameLevel => {
                            assert_eq!(step.after.v, step.before.v);
                            assert!(step.after.w < step.before.w);
                        }
                    }
                }
            }
        }
    }
}
