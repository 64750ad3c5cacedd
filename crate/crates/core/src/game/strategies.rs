use std::collections::HashMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::congruence::Classifier;
use crate::words::FiniteWord;

use super::{member, product, Family, FamilySpec, GameContext, GameTranscript, IndexScheme, Interval, IntervalPair};

pub trait Spoiler {
    fn name(&self) -> String;

    /// Round 1.
    fn family(&mut self, ctx: &GameContext) -> FamilySpec;

    /// Round 3: one word per interval pair.
    fn words(&mut self, ctx: &GameContext, t: &GameTranscript) -> Vec<FiniteWord>;

    /// Round 5, with free-form notes for the transcript.
    fn indices(&mut self, ctx: &GameContext, t: &GameTranscript) -> (IndexScheme, Vec<String>);
}

pub trait Duplicator {
    fn name(&self) -> String;

    /// Round 2. An `Err` is a forfeit with the given reason.
    fn intervals(&mut self, ctx: &GameContext, family: &mut Family) -> Result<Vec<IntervalPair>, String>;

    /// Round 4.
    fn words(&mut self, ctx: &GameContext, t: &GameTranscript) -> Vec<FiniteWord>;
}

/// Takes the next family member after the previous `a`-interval (skipping
/// `skip()` more), then the first `a`-run of length `v_len(W)` after it.
fn choose_intervals(
    ctx: &GameContext,
    family: &mut Family,
    mut v_len: impl FnMut(Interval) -> u64,
    mut skip: impl FnMut() -> usize,
) -> Result<Vec<IntervalPair>, String> {
    let mut out = Vec::with_capacity(ctx.config.horizon);
    let mut pos = None;
    let mut next = 0;
    for i in 1..=ctx.config.horizon {
        let index = family.first_after(pos, next) + skip();
        let w = family.get(index);
        let len = v_len(w).max(1);
        let start = ctx
            .word
            .find_run('a', w.last + 1, len, ctx.config.scan_budget)
            .ok_or_else(|| format!("no a-interval of length {len} after W{i} = [{}, {}]", w.first, w.last))?;
        let v = Interval::new(start, start + len - 1);
        out.push(IntervalPair { family_index: index, w_interval: w, v_interval: v });
        pos = Some(v.last);
        next = index + 1;
    }
    Ok(out)
}

/// Answers `Wᵢ` with an `a`-interval of the same size and repeats Spoiler's words.
#[derive(Clone, Debug, Default)]
pub struct CopyDuplicator;

impl Duplicator for CopyDuplicator {
    fn name(&self) -> String {
        "copy".into()
    }

    fn intervals(&mut self, ctx: &GameContext, family: &mut Family) -> Result<Vec<IntervalPair>, String> {
        choose_intervals(ctx, family, |w| w.len(), || 0)
    }

    fn words(&mut self, _ctx: &GameContext, t: &GameTranscript) -> Vec<FiniteWord> {
        t.w_words.clone()
    }
}

/// Always answers with the same word.
#[derive(Clone, Debug)]
pub struct ConstantDuplicator {
    word: FiniteWord,
}

impl ConstantDuplicator {
    pub fn new(word: FiniteWord) -> Self {
        ConstantDuplicator { word }
    }
}

impl Duplicator for ConstantDuplicator {
    fn name(&self) -> String {
        format!("constant:{}", self.word)
    }

    fn intervals(&mut self, ctx: &GameContext, family: &mut Family) -> Result<Vec<IntervalPair>, String> {
        let len = self.word.len() as u64 + 1;
        choose_intervals(ctx, family, |_| len, || 0)
    }

    fn words(&mut self, _ctx: &GameContext, t: &GameTranscript) -> Vec<FiniteWord> {
        vec![self.word.clone(); t.intervals.len()]
    }
}

/// Random legal moves with answers of length at most `max_len`.
#[derive(Clone, Debug)]
pub struct RandomDuplicator {
    seed: u64,
    max_len: usize,
    rng: ChaCha8Rng,
}

impl RandomDuplicator {
    pub fn new(seed: u64, max_len: usize) -> Self {
        RandomDuplicator { seed, max_len, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl Duplicator for RandomDuplicator {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn intervals(&mut self, ctx: &GameContext, family: &mut Family) -> Result<Vec<IntervalPair>, String> {
        let max = self.max_len as u64 + 1;
        let rng = std::cell::RefCell::new(&mut self.rng);
        choose_intervals(ctx, family, |_| rng.borrow_mut().gen_range(1..=max), || rng.borrow_mut().gen_range(0..=1))
    }

    fn words(&mut self, ctx: &GameContext, t: &GameTranscript) -> Vec<FiniteWord> {
        let letters = ctx.oracle.alphabet().letters().to_vec();
        t.intervals
            .iter()
            .map(|p| {
                let bound = (p.v_interval.len() as usize - 1).min(self.max_len);
                let len = self.rng.gen_range(0..=bound);
                (0..len).map(|_| letters[self.rng.gen_range(0..letters.len())]).collect()
            })
            .collect()
    }
}

/// Random family, random short words and a random index scheme.
#[derive(Clone, Debug)]
pub struct RandomSpoiler {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSpoiler {
    pub fn new(seed: u64) -> Self {
        RandomSpoiler { seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl Spoiler for RandomSpoiler {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn family(&mut self, _ctx: &GameContext) -> FamilySpec {
        FamilySpec::Random { seed: self.rng.gen(), max_len: 6, max_gap: 3 }
    }

    fn words(&mut self, ctx: &GameContext, t: &GameTranscript) -> Vec<FiniteWord> {
        let letters = ctx.oracle.alphabet().letters().to_vec();
        t.intervals
            .iter()
            .map(|p| {
                let len = self.rng.gen_range(0..p.w_interval.len().min(5) as usize);
                (0..len).map(|_| letters[self.rng.gen_range(0..letters.len())]).collect()
            })
            .collect()
    }

    fn indices(&mut self, ctx: &GameContext, _t: &GameTranscript) -> (IndexScheme, Vec<String>) {
        let n = ctx.config.horizon;
        let cycle_len = self.rng.gen_range(1..=ctx.config.max_cycle.clamp(1, n));
        let head_len = self.rng.gen_range(0..=ctx.config.max_head.min(n - cycle_len));
        let mut picked: Vec<usize> = sample(&mut self.rng, n, head_len + cycle_len).into_iter().map(|i| i + 1).collect();
        picked.sort_unstable();
        let cycle = picked.split_off(head_len);
        (IndexScheme { head: picked, cycle }, Vec::new())
    }
}

/// Intervals of sizes `1, 2, 3, …`; cycles through all nonempty words in
/// shortlex order; then looks for an index scheme on which the two products
/// disagree.
#[derive(Clone, Debug, Default)]
pub struct DivergingSpoiler {
    cursor: usize,
}

impl DivergingSpoiler {
    pub fn new() -> Self {
        DivergingSpoiler { cursor: 0 }
    }
}

/// Longest word the round-robin needs for `n` rounds over `k` letters.
fn round_robin_len(k: usize, n: usize) -> usize {
    let (mut total, mut len, mut layer) = (0usize, 0usize, 1usize);
    while total <= n {
        len += 1;
        layer = layer.saturating_mul(k.max(1));
        total = total.saturating_add(layer);
    }
    len
}

/// Classifier whose classes are Duplicator's answers: a trie of Spoiler's
/// words, labelled by the first answer given to each, with one more class
/// for unseen words.
fn answer_classifier(ctx: &GameContext, t: &GameTranscript) -> Option<Classifier> {
    let alphabet = ctx.oracle.alphabet().clone();
    let k = alphabet.len();
    let mut delta: Vec<Vec<Option<usize>>> = vec![vec![None; k]];
    let mut label: Vec<Option<usize>> = vec![None];
    let mut answer_ids: HashMap<&FiniteWord, usize> = HashMap::new();
    for (w, v) in t.w_words.iter().zip(&t.v_words) {
        let next_id = answer_ids.len() + 1;
        let id = *answer_ids.entry(v).or_insert(next_id);
        let mut q = 0;
        for &c in w.letters() {
            let ci = alphabet.index_of(c)?;
            q = match delta[q][ci] {
                Some(t) => t,
                None => {
                    delta.push(vec![None; k]);
                    label.push(None);
                    delta[q][ci] = Some(delta.len() - 1);
                    delta.len() - 1
                }
            };
        }
        label[q].get_or_insert(id);
    }
    let sink = delta.len();
    let mut full: Vec<Vec<usize>> = delta.iter().map(|row| row.iter().map(|t| t.unwrap_or(sink)).collect()).collect();
    full.push(vec![sink; k]);
    let mut classes: Vec<usize> = label.iter().map(|l| l.unwrap_or(0)).collect();
    classes.push(0);
    // Renumber so that class ids are exactly the labels in use.
    let mut used: Vec<usize> = classes.clone();
    used.sort_unstable();
    used.dedup();
    let classes = classes.iter().map(|c| used.binary_search(c).expect("present")).collect();
    Classifier::new(alphabet, full, 0, classes).ok()
}

fn increasing_subsets(items: &[usize], len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in increasing_subsets(&items[i + 1..], len - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

impl Spoiler for DivergingSpoiler {
    fn name(&self) -> String {
        "diverging".into()
    }

    fn family(&mut self, _ctx: &GameContext) -> FamilySpec {
        FamilySpec::Growing { start: 0, gap: 1 }
    }

    fn words(&mut self, ctx: &GameContext, t: &GameTranscript) -> Vec<FiniteWord> {
        let alphabet = ctx.oracle.alphabet();
        let max = round_robin_len(alphabet.len(), t.intervals.len());
        let pool: Vec<FiniteWord> = FiniteWord::enumerate(alphabet, max).into_iter().filter(|w| !w.is_empty()).collect();
        t.intervals
            .iter()
            .map(|p| {
                let bound = p.w_interval.len() as usize - 1;
                if bound == 0 {
                    return FiniteWord::empty();
                }
                if pool.get(self.cursor).is_none_or(|w| w.len() > bound) {
                    self.cursor = 0;
                }
                self.cursor += 1;
                pool[self.cursor - 1].clone()
            })
            .collect()
    }

    fn indices(&mut self, ctx: &GameContext, t: &GameTranscript) -> (IndexScheme, Vec<String>) {
        let mut notes = Vec::new();
        if ctx.oracle.has_violation_finder() {
            match answer_classifier(ctx, t).map(|c| ctx.oracle.find_violation(&c)) {
                Some(Ok(w)) => notes.push(format!(
                    "answer classifier violation: {} is replaced by {}",
                    w.original_product, w.replaced_product
                )),
                Some(Err(e)) => notes.push(format!("violation finder failed: {e}")),
                None => notes.push("answers do not form a classifier".into()),
            }
        }
        let n = t.horizon;
        let all: Vec<usize> = (1..=n).collect();
        for cycle_len in 1..=ctx.config.max_cycle.min(n) {
            for head_len in 0..=ctx.config.max_head.min(n - cycle_len) {
                for head in increasing_subsets(&all, head_len) {
                    let after = head.last().copied().unwrap_or(0);
                    for cycle in increasing_subsets(&all[after..], cycle_len) {
                        let s = IndexScheme { head: head.clone(), cycle };
                        let wm = member(&product(&t.w_words, &s), ctx.oracle);
                        let vm = member(&product(&t.v_words, &s), ctx.oracle);
                        if let (Ok(a), Ok(b)) = (wm, vm) {
                            if a != b {
                                return (s, notes);
                            }
                        }
                    }
                }
            }
        }
        notes.push("horizon-insufficient: no index scheme within the search bounds separates the products".into());
        (IndexScheme { head: Vec::new(), cycle: all }, notes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_robin_lengths() {
        assert_eq!(round_robin_len(2, 1), 1);
        assert_eq!(round_robin_len(2, 2), 2);
        assert_eq!(round_robin_len(2, 10), 3);
        assert_eq!(increasing_subsets(&[1, 2, 3], 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
    }
}
