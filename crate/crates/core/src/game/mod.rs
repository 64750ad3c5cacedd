//! The congruence game on a finitely presented ω-word, played to a bounded
//! horizon.
//!
//! Rounds: Spoiler picks a family of disjoint intervals; Duplicator picks
//! `W₁ < V₁ < W₂ < V₂ < ⋯` with `Wᵢ` from the family and every `Vᵢ` labelled
//! `a`; Spoiler picks words `|wᵢ| < |Wᵢ|`; Duplicator picks `|vᵢ| < |Vᵢ|`;
//! Spoiler picks indices; Duplicator wins iff the two products of the chosen
//! words agree on membership.
//!
//! Only `horizon` pairs are materialized, and round 5 is an eventually
//! periodic [`IndexScheme`] over them, so both products are lasso words.

mod strategies;

pub use strategies::{
    ConstantDuplicator, CopyDuplicator, DivergingSpoiler, Duplicator, RandomDuplicator, RandomSpoiler, Spoiler,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracles::LanguageOracle;
use crate::words::{omega_product, FiniteWord, OmegaWord, UpWord};

/// The positions `first..=last`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub first: u64,
    pub last: u64,
}

impl Interval {
    pub fn new(first: u64, last: u64) -> Self {
        assert!(first <= last, "empty interval");
        Interval { first, last }
    }

    pub fn len(&self) -> u64 {
        self.last - self.first + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `self < other`: strictly before.
    pub fn before(&self, other: &Interval) -> bool {
        self.last < other.first
    }
}

/// Generator of Spoiler's infinite interval family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    /// The `i`-th interval (from 0) has `i+1` positions; consecutive
    /// intervals are `gap` positions apart.
    Growing { start: u64, gap: u64 },
    /// Lengths in `1..=max_len` and gaps in `0..=max_gap`, drawn from a seeded generator.
    Random { seed: u64, max_len: u64, max_gap: u64 },
    /// The listed intervals, then unit intervals one position apart.
    Explicit { intervals: Vec<Interval> },
}

/// Lazily materialized family.
#[derive(Clone, Debug)]
pub struct Family {
    spec: FamilySpec,
    cache: Vec<Interval>,
    rng: Option<ChaCha8Rng>,
}

impl Family {
    pub fn new(spec: FamilySpec) -> Self {
        let rng = match &spec {
            FamilySpec::Random { seed, .. } => Some(ChaCha8Rng::seed_from_u64(*seed)),
            _ => None,
        };
        Family { spec, cache: Vec::new(), rng }
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    /// The `i`-th member, counting from 0.
    pub fn get(&mut self, i: usize) -> Interval {
        while self.cache.len() <= i {
            let next = self.generate(self.cache.len());
            self.cache.push(next);
        }
        self.cache[i]
    }

    fn generate(&mut self, i: usize) -> Interval {
        let prev_end = self.cache.last().map(|iv| iv.last + 1);
        match &self.spec {
            FamilySpec::Growing { start, gap } => {
                let i = i as u64;
                let first = start + i * (i + 1) / 2 + i * gap;
                Interval::new(first, first + i)
            }
            FamilySpec::Random { max_len, max_gap, .. } => {
                let rng = self.rng.as_mut().expect("seeded");
                let gap = rng.gen_range(0..=*max_gap);
                let len = rng.gen_range(1..=(*max_len).max(1));
                let first = prev_end.unwrap_or(0) + gap;
                Interval::new(first, first + len - 1)
            }
            FamilySpec::Explicit { intervals } => match intervals.get(i) {
                Some(iv) => *iv,
                None => {
                    let p = prev_end.map_or(0, |e| e + 1);
                    Interval::new(p, p)
                }
            },
        }
    }

    /// The members materialized so far.
    pub fn materialized(&self) -> &[Interval] {
        &self.cache
    }

    /// Index of the first member starting strictly after `pos` (or anywhere for `None`).
    pub fn first_after(&mut self, pos: Option<u64>, from_index: usize) -> usize {
        let mut i = from_index;
        loop {
            let iv = self.get(i);
            if pos.is_none_or(|p| iv.first > p) {
                return i;
            }
            i += 1;
        }
    }
}

/// Duplicator's round-2 choice for one index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalPair {
    /// Position of `w_interval` in Spoiler's family (from 0).
    pub family_index: usize,
    pub w_interval: Interval,
    pub v_interval: Interval,
}

/// Indices (from 1) `head` followed by `cycle` repeated forever. The
/// products are `w_head · (w_cycle)^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexScheme {
    pub head: Vec<usize>,
    pub cycle: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Spoiler,
    Duplicator,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Spoiler => Player::Duplicator,
            Player::Duplicator => Player::Spoiler,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Forfeit {
    pub player: Player,
    pub round: u8,
    pub reason: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    Spoiler,
    Duplicator,
    /// The oracle could not decide a product.
    Undecided,
}

/// An infinite product that may collapse to a finite word when the chosen
/// words are empty; finite words are never members of an ω-language.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "word", rename_all = "snake_case")]
pub enum Product {
    Finite(FiniteWord),
    Omega(UpWord),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub w_product: Option<Product>,
    pub v_product: Option<Product>,
    pub w_member: Option<bool>,
    pub v_member: Option<bool>,
    pub winner: Winner,
    pub note: Option<String>,
}

/// A complete record of one bounded play.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameTranscript {
    pub word: OmegaWord,
    pub oracle: String,
    pub spoiler: String,
    pub duplicator: String,
    pub horizon: usize,
    pub family: FamilySpec,
    /// Family members materialized during play, in order.
    pub family_prefix: Vec<Interval>,
    pub intervals: Vec<IntervalPair>,
    pub w_words: Vec<FiniteWord>,
    pub v_words: Vec<FiniteWord>,
    pub indices: Option<IndexScheme>,
    pub forfeit: Option<Forfeit>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

/// A broken rule in a transcript.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleViolation {
    pub rule: String,
    pub detail: String,
}

fn violation(rule: &str, detail: impl Into<String>) -> RuleViolation {
    RuleViolation { rule: rule.into(), detail: detail.into() }
}

/// Configuration of a bounded play.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlayConfig {
    pub horizon: usize,
    /// Positions Duplicator may scan for each `a`-interval.
    pub scan_budget: u64,
    pub max_head: usize,
    pub max_cycle: usize,
}

impl Default for PlayConfig {
    fn default() -> Self {
        PlayConfig { horizon: 10, scan_budget: 1_000_000, max_head: 2, max_cycle: 3 }
    }
}

/// What strategies see of the game.
pub struct GameContext<'a> {
    pub word: &'a OmegaWord,
    pub oracle: &'a dyn LanguageOracle,
    pub config: PlayConfig,
}

fn check_family_prefix(family: &FamilySpec, prefix: &[Interval], out: &mut Vec<RuleViolation>) {
    let mut regen = Family::new(family.clone());
    for (i, iv) in prefix.iter().enumerate() {
        if iv.first > iv.last {
            out.push(violation("round1 interval", format!("member {i} is empty")));
        }
        if regen.get(i) != *iv {
            out.push(violation("round1 family", format!("member {i} does not match the family generator")));
        }
        if i > 0 && !prefix[i - 1].before(iv) {
            out.push(violation("round1 disjointness", format!("members {} and {i} overlap or are out of order", i - 1)));
        }
    }
}

/// Round-2 legality for the given pairs.
fn check_intervals(
    word: &OmegaWord,
    family_prefix: &[Interval],
    pairs: &[IntervalPair],
    out: &mut Vec<RuleViolation>,
) {
    let mut last: Option<Interval> = None;
    let mut last_index: Option<usize> = None;
    for (i, p) in pairs.iter().enumerate() {
        let n = i + 1;
        match family_prefix.get(p.family_index) {
            Some(iv) if *iv == p.w_interval => {}
            _ => out.push(violation("round2 family membership", format!("W{n} is not member {} of the family", p.family_index))),
        }
        if last_index.is_some_and(|j| p.family_index <= j) {
            out.push(violation("round2 family order", format!("W{n} reuses or precedes an earlier family member")));
        }
        last_index = Some(p.family_index);
        if let Some(prev) = last {
            if !prev.before(&p.w_interval) {
                out.push(violation("round2 order", format!("V{} < W{n} fails", n - 1)));
            }
        }
        if !p.w_interval.before(&p.v_interval) {
            out.push(violation("round2 order", format!("W{n} < V{n} fails")));
        }
        if let Some(pos) = (p.v_interval.first..=p.v_interval.last).find(|&x| word.letter_at(x) != 'a') {
            out.push(violation("round2 a-labelling", format!("V{n} contains position {pos} labelled {}", word.letter_at(pos))));
        }
        last = Some(p.v_interval);
    }
}

fn check_words(
    rule: &str,
    oracle: &dyn LanguageOracle,
    words: &[FiniteWord],
    lens: impl Iterator<Item = u64>,
    name: &str,
    out: &mut Vec<RuleViolation>,
) {
    for (i, (w, len)) in words.iter().zip(lens).enumerate() {
        if w.len() as u64 >= len {
            out.push(violation(rule, format!("|{name}{}| = {} is not below the interval size {len}", i + 1, w.len())));
        }
        if w.check_over(oracle.alphabet()).is_err() {
            out.push(violation("word alphabet", format!("{name}{} = {w} leaves {}", i + 1, oracle.alphabet())));
        }
    }
}

fn check_scheme(s: &IndexScheme, horizon: usize, out: &mut Vec<RuleViolation>) {
    let all: Vec<usize> = s.head.iter().chain(&s.cycle).copied().collect();
    if s.cycle.is_empty() {
        out.push(violation("round5 cycle", "the index cycle is empty"));
    }
    if all.windows(2).any(|w| w[0] >= w[1]) {
        out.push(violation("round5 increasing", "indices are not strictly increasing"));
    }
    if let Some(&i) = all.iter().find(|&&i| i == 0 || i > horizon) {
        out.push(violation("round5 range", format!("index {i} is outside 1..={horizon}")));
    }
}

/// Checks every round's rules. Rounds after a recorded forfeit must be empty.
pub fn validate_transcript(t: &GameTranscript, oracle: &dyn LanguageOracle) -> Vec<RuleViolation> {
    let mut out = Vec::new();
    let forfeit_round = t.forfeit.as_ref().map_or(u8::MAX, |f| f.round);
    check_family_prefix(&t.family, &t.family_prefix, &mut out);
    let expect = |round: u8, len: usize, what: &str, out: &mut Vec<RuleViolation>| {
        let want = if round < forfeit_round { t.horizon } else { 0 };
        if len != want {
            out.push(violation("round count", format!("{what} has {len} entries, expected {want}")));
        }
    };
    expect(2, t.intervals.len(), "round 2", &mut out);
    expect(3, t.w_words.len(), "round 3", &mut out);
    expect(4, t.v_words.len(), "round 4", &mut out);
    check_intervals(&t.word, &t.family_prefix, &t.intervals, &mut out);
    check_words("round3 length bound", oracle, &t.w_words, t.intervals.iter().map(|p| p.w_interval.len()), "w", &mut out);
    check_words("round4 length bound", oracle, &t.v_words, t.intervals.iter().map(|p| p.v_interval.len()), "v", &mut out);
    match (&t.indices, forfeit_round > 5) {
        (Some(s), true) => check_scheme(s, t.horizon, &mut out),
        (None, true) => out.push(violation("round count", "round 5 is missing")),
        (Some(_), false) => out.push(violation("round count", "round 5 recorded after a forfeit")),
        (None, false) => {}
    }
    let again = adjudicate(t, oracle);
    if again != t.verdict {
        out.push(violation("adjudication", "recorded verdict differs from re-adjudication"));
    }
    out
}

fn product(words: &[FiniteWord], s: &IndexScheme) -> Product {
    let pick = |ix: &[usize]| ix.iter().map(|&i| words[i - 1].clone()).collect::<Vec<_>>();
    let (head, cycle) = (pick(&s.head), pick(&s.cycle));
    match omega_product(&head, &cycle) {
        Ok(w) => Product::Omega(w),
        Err(_) => Product::Finite(head.iter().fold(FiniteWord::empty(), |acc, w| acc.concat(w))),
    }
}

fn member(p: &Product, oracle: &dyn LanguageOracle) -> Result<bool> {
    match p {
        Product::Finite(_) => Ok(false),
        Product::Omega(w) => oracle.contains_up(w),
    }
}

/// Decides round 6 from the transcript alone.
pub fn adjudicate(t: &GameTranscript, oracle: &dyn LanguageOracle) -> Verdict {
    if let Some(f) = &t.forfeit {
        let winner = match f.player.opponent() {
            Player::Spoiler => Winner::Spoiler,
            Player::Duplicator => Winner::Duplicator,
        };
        return Verdict { w_product: None, v_product: None, w_member: None, v_member: None, winner, note: None };
    }
    let Some(s) = &t.indices else {
        return Verdict {
            w_product: None,
            v_product: None,
            w_member: None,
            v_member: None,
            winner: Winner::Undecided,
            note: Some("no index scheme".into()),
        };
    };
    let (wp, vp) = (product(&t.w_words, s), product(&t.v_words, s));
    let same_word = match (&wp, &vp) {
        (Product::Omega(x), Product::Omega(y)) => x.up_equal(y),
        (x, y) => x == y,
    };
    let (wm, vm) = (member(&wp, oracle), member(&vp, oracle));
    let (winner, w_member, v_member, note) = match (wm, vm) {
        (Ok(a), Ok(b)) => (if a == b { Winner::Duplicator } else { Winner::Spoiler }, Some(a), Some(b), None),
        (a, b) => {
            let err = a.as_ref().err().or(b.as_ref().err()).map(|e| e.to_string());
            if same_word {
                (Winner::Duplicator, a.ok(), b.ok(), Some(format!("identical products; oracle: {}", err.unwrap_or_default())))
            } else {
                (Winner::Undecided, a.ok(), b.ok(), err)
            }
        }
    };
    Verdict { w_product: Some(wp), v_product: Some(vp), w_member, v_member, winner, note }
}

/// Plays one bounded game. Illegal moves end the play with a forfeit.
pub fn play_bounded(
    word: &OmegaWord,
    oracle: &dyn LanguageOracle,
    spoiler: &mut dyn Spoiler,
    duplicator: &mut dyn Duplicator,
    config: PlayConfig,
) -> Result<GameTranscript> {
    if config.horizon == 0 {
        return Err(Error::invalid("horizon must be positive"));
    }
    let ctx = GameContext { word, oracle, config };
    let mut t = GameTranscript {
        word: word.clone(),
        oracle: oracle.name(),
        spoiler: spoiler.name(),
        duplicator: duplicator.name(),
        horizon: config.horizon,
        family: FamilySpec::Growing { start: 0, gap: 0 },
        family_prefix: Vec::new(),
        intervals: Vec::new(),
        w_words: Vec::new(),
        v_words: Vec::new(),
        indices: None,
        forfeit: None,
        notes: Vec::new(),
        verdict: Verdict { w_product: None, v_product: None, w_member: None, v_member: None, winner: Winner::Undecided, note: None },
    };
    let finish = |mut t: GameTranscript, player: Player, round: u8, reason: String| {
        t.forfeit = Some(Forfeit { player, round, reason });
        t.verdict = adjudicate(&t, oracle);
        t
    };

    // Round 1.
    t.family = spoiler.family(&ctx);
    let mut family = Family::new(t.family.clone());
    if let FamilySpec::Explicit { intervals } = &t.family {
        let mut errs = Vec::new();
        check_family_prefix(&t.family, intervals, &mut errs);
        if let Some(e) = errs.first() {
            return Ok(finish(t, Player::Spoiler, 1, format!("{}: {}", e.rule, e.detail)));
        }
    }

    // Round 2.
    let pairs = match duplicator.intervals(&ctx, &mut family) {
        Ok(p) => p,
        Err(reason) => {
            t.family_prefix = family.materialized().to_vec();
            return Ok(finish(t, Player::Duplicator, 2, reason));
        }
    };
    t.family_prefix = family.materialized().to_vec();
    let mut errs = Vec::new();
    if pairs.len() != config.horizon {
        errs.push(violation("round count", format!("{} interval pairs for horizon {}", pairs.len(), config.horizon)));
    }
    check_intervals(word, &t.family_prefix, &pairs, &mut errs);
    if let Some(e) = errs.first() {
        return Ok(finish(t, Player::Duplicator, 2, format!("{}: {}", e.rule, e.detail)));
    }
    t.intervals = pairs;

    // Round 3.
    let ws = spoiler.words(&ctx, &t);
    let mut errs = Vec::new();
    if ws.len() != config.horizon {
        errs.push(violation("round count", format!("{} words for horizon {}", ws.len(), config.horizon)));
    }
    check_words("round3 length bound", oracle, &ws, t.intervals.iter().map(|p| p.w_interval.len()), "w", &mut errs);
    if let Some(e) = errs.first() {
        return Ok(finish(t, Player::Spoiler, 3, format!("{}: {}", e.rule, e.detail)));
    }
    t.w_words = ws;

    // Round 4.
    let vs = duplicator.words(&ctx, &t);
    let mut errs = Vec::new();
    if vs.len() != config.horizon {
        errs.push(violation("round count", format!("{} words for horizon {}", vs.len(), config.horizon)));
    }
    check_words("round4 length bound", oracle, &vs, t.intervals.iter().map(|p| p.v_interval.len()), "v", &mut errs);
    if let Some(e) = errs.first() {
        return Ok(finish(t, Player::Duplicator, 4, format!("{}: {}", e.rule, e.detail)));
    }
    t.v_words = vs;

    // Round 5.
    let (scheme, notes) = spoiler.indices(&ctx, &t);
    t.notes.extend(notes);
    let mut errs = Vec::new();
    check_scheme(&scheme, config.horizon, &mut errs);
    if let Some(e) = errs.first() {
        return Ok(finish(t, Player::Spoiler, 5, format!("{}: {}", e.rule, e.detail)));
    }
    t.indices = Some(scheme);

    // Round 6.
    t.verdict = adjudicate(&t, oracle);
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{Unbounded, UnboundedNeutral};

    fn blocks() -> OmegaWord {
        "blocks(a,b;affine 1 0)".parse().unwrap()
    }

    #[test]
    fn growing_family_layout() {
        let mut f = Family::new(FamilySpec::Growing { start: 0, gap: 1 });
        let sizes: Vec<u64> = (0..4).map(|i| f.get(i).len()).collect();
        assert_eq!(sizes, [1, 2, 3, 4]);
        assert!(f.get(0).before(&f.get(1)));
        assert_eq!(f.get(1), Interval::new(2, 3));
    }

    #[test]
    fn copy_beats_random_on_growing_blocks() {
        let o = Unbounded::new();
        let mut s = RandomSpoiler::new(7);
        let mut d = CopyDuplicator;
        let t = play_bounded(&blocks(), &o, &mut s, &mut d, PlayConfig::default()).unwrap();
        assert_eq!(t.verdict.winner, Winner::Duplicator);
        assert!(validate_transcript(&t, &o).is_empty(), "{:?}", validate_transcript(&t, &o));
        assert_eq!(t.w_words, t.v_words);
    }

    #[test]
    fn diverging_beats_copy_on_bounded_blocks() {
        let o = Unbounded::new();
        let w: OmegaWord = "(aab)^w".parse().unwrap();
        let mut s = DivergingSpoiler::new();
        let mut d = CopyDuplicator;
        let t = play_bounded(&w, &o, &mut s, &mut d, PlayConfig::default()).unwrap();
        assert_eq!(t.verdict.winner, Winner::Spoiler);
        assert!(validate_transcript(&t, &o).is_empty());
    }

    #[test]
    fn illegal_duplicator_forfeits() {
        struct BadIntervals;
        impl Duplicator for BadIntervals {
            fn name(&self) -> String {
                "bad".into()
            }
            fn intervals(&mut self, ctx: &GameContext, family: &mut Family) -> std::result::Result<Vec<IntervalPair>, String> {
                // V covers a b-position.
                Ok((0..ctx.config.horizon)
                    .map(|i| {
                        let w = family.get(2 * i);
                        let v = family.get(2 * i + 1);
                        IntervalPair { family_index: 2 * i, w_interval: w, v_interval: Interval::new(v.first, v.last + 5) }
                    })
                    .collect())
            }
            fn words(&mut self, _: &GameContext, t: &GameTranscript) -> Vec<FiniteWord> {
                t.w_words.clone()
            }
        }
        let o = Unbounded::new();
        let w: OmegaWord = "(ab)^w".parse().unwrap();
        let t = play_bounded(&w, &o, &mut DivergingSpoiler::new(), &mut BadIntervals, PlayConfig::default()).unwrap();
        assert_eq!(t.verdict.winner, Winner::Spoiler);
        assert_eq!(t.forfeit.as_ref().unwrap().round, 2);
        assert!(validate_transcript(&t, &o).is_empty());
    }

    #[test]
    fn validation_catches_broken_rules() {
        let o = Unbounded::new();
        let mut t = play_bounded(&blocks(), &o, &mut DivergingSpoiler::new(), &mut CopyDuplicator, PlayConfig::default())
            .unwrap();
        assert!(validate_transcript(&t, &o).is_empty());
        let mut bad = t.clone();
        bad.w_words[2] = "a".repeat(bad.intervals[2].w_interval.len() as usize).as_str().into();
        bad.verdict = adjudicate(&bad, &o);
        assert!(validate_transcript(&bad, &o).iter().any(|v| v.rule == "round3 length bound"));

        t.family = FamilySpec::Explicit { intervals: vec![Interval::new(0, 3), Interval::new(2, 5)] };
        t.family_prefix = vec![Interval::new(0, 3), Interval::new(2, 5)];
        assert!(validate_transcript(&t, &o).iter().any(|v| v.rule == "round1 disjointness"));
    }

    #[test]
    fn constant_responder_loses_on_u_prime() {
        let o = UnboundedNeutral::new();
        let w: OmegaWord = "(aab)^w".parse().unwrap();
        let mut d = ConstantDuplicator::new("a".into());
        let t = play_bounded(&w, &o, &mut DivergingSpoiler::new(), &mut d, PlayConfig::default()).unwrap();
        assert_eq!(t.verdict.winner, Winner::Spoiler, "{t:?}");
        assert!(t.forfeit.is_none());
    }

    #[test]
    fn transcripts_round_trip_through_json() {
        let o = Unbounded::new();
        let t = play_bounded(&blocks(), &o, &mut RandomSpoiler::new(3), &mut CopyDuplicator, PlayConfig::default())
            .unwrap();
        let json = serde_json::to_string(&t).unwrap();
        let back: GameTranscript = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert_eq!(adjudicate(&back, &o), t.verdict);
    }
}
