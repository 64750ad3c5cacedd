use std::collections::{BTreeMap, BTreeSet};

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use omega_core::buchi::complement;
use omega_core::congruence::{
    arnold_classes_bounded, check_condition1, check_condition2_bounded, lemma_repair_with_budget, right_congruence_bounded,
    Condition2Bounds, DEFAULT_MONOID_BUDGET,
};
use omega_core::game::{
    adjudicate, play_bounded, validate_transcript, ConstantDuplicator, CopyDuplicator, DivergingSpoiler, Duplicator,
    GameTranscript, PlayConfig, RandomDuplicator, RandomSpoiler, Spoiler,
};
use omega_core::mso::{compile_with_limits, encode_congruence_game, evaluate, Formula, Oracles, UpValuation};
use omega_core::oracles::neutral_letter_property_test;
use omega_core::trio::{
    finite_language_by_name, for_each_l2_member, loop_representation, member_l1, member_l2, parse_tokens,
    project_to_separators, tokens_to_string, SeparatedWord,
};
use omega_core::{
    oracle_by_name, Alphabet, BuchiAutomaton, Classifier, Emptiness, FiniteWord, LanguageOracle, Limits, OmegaWord, UpWord,
};

use crate::{BuchiCmd, CongruenceCmd, GameCmd, MsoCmd, OracleCmd, TrioCmd, BUDGET_ENV};

pub struct Output {
    pub json: Value,
    pub summary: String,
}

fn out(json: Value, summary: impl Into<String>) -> Result<Output> {
    Ok(Output { json, summary: summary.into() })
}

fn budget() -> Result<Option<usize>> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => {
            let n: usize = s.trim().parse().with_context(|| format!("{BUDGET_ENV} must be a positive integer, got {s:?}"))?;
            if n == 0 {
                bail!("{BUDGET_ENV} must be positive");
            }
            Ok(Some(n))
        }
        Err(_) => Ok(None),
    }
}

fn limits() -> Result<Limits> {
    Ok(match budget()? {
        Some(n) => Limits { max_states: n, max_monoid: n },
        None => Limits::default(),
    })
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))
}

fn automaton(path: &str) -> Result<BuchiAutomaton> {
    read(path)?.parse::<BuchiAutomaton>().with_context(|| format!("in automaton file {path}"))
}

fn classifier(path: &str) -> Result<Classifier> {
    read(path)?.parse::<Classifier>().with_context(|| format!("in classifier file {path}"))
}

fn oracle(name: &str) -> Result<Box<dyn LanguageOracle>> {
    Ok(oracle_by_name(name)?)
}

fn automaton_json(a: &BuchiAutomaton) -> Value {
    json!({ "states": a.num_states(), "transitions": a.num_transitions(), "text": a.to_string() })
}

pub fn buchi(cmd: BuchiCmd) -> Result<Output> {
    match cmd {
        BuchiCmd::Accepts { file, word } => {
            let a = automaton(&file)?;
            let w: UpWord = word.parse()?;
            let accepts = a.accepts_up(&w)?;
            out(json!({ "word": w.to_string(), "accepts": accepts }), format!("{w}: {}", if accepts { "accepted" } else { "rejected" }))
        }
        BuchiCmd::Empty { file } => {
            let a = automaton(&file)?;
            match a.is_empty() {
                Emptiness::Empty => out(json!({ "empty": true, "witness": null }), "empty"),
                Emptiness::NonEmpty(w) => out(json!({ "empty": false, "witness": w.to_string() }), format!("nonempty, accepts {w}")),
            }
        }
        BuchiCmd::Complement { file } => {
            let c = complement(&automaton(&file)?, limits()?)?;
            out(automaton_json(&c), format!("complement with {} states", c.num_states()))
        }
        BuchiCmd::Union { left, right } => {
            let u = automaton(&left)?.union(&automaton(&right)?)?;
            out(automaton_json(&u), format!("union with {} states", u.num_states()))
        }
        BuchiCmd::Intersect { left, right } => {
            let i = automaton(&left)?.intersect(&automaton(&right)?)?;
            out(automaton_json(&i), format!("intersection with {} states", i.num_states()))
        }
        BuchiCmd::Equiv { left, right } => {
            let e = automaton(&left)?.equivalent(&automaton(&right)?, limits()?)?;
            out(json!({ "equivalent": e }), if e { "equivalent" } else { "not equivalent" })
        }
    }
}

fn classes_json(classes: &[Vec<FiniteWord>]) -> Value {
    Value::from(classes.iter().map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn congruence(cmd: CongruenceCmd) -> Result<Output> {
    match cmd {
        CongruenceCmd::Check1 { file } => {
            let c = classifier(&file)?;
            let v = check_condition1(&c)?;
            let summary = match &v {
                None => "condition (1) holds".to_string(),
                Some(v) => format!("violation: {} ~ {} separated by {} on the {:?} side", v.u, v.u_prime, v.w, v.side),
            };
            out(json!({ "satisfied": v.is_none(), "violation": v }), summary)
        }
        CongruenceCmd::Check2 { file, oracle: name, word_len, head_len, cycle_len } => {
            let c = classifier(&file)?;
            let o = oracle(&name)?;
            let w = check_condition2_bounded(&c, o.as_ref(), Condition2Bounds { word_len, head_len, cycle_len })?;
            let summary = match &w {
                None => "no violation within the bounds".to_string(),
                Some(w) => format!("{} vs {}", w.original_product, w.replaced_product),
            };
            out(json!({ "violation_found": w.is_some(), "witness": w }), summary)
        }
        CongruenceCmd::Repair { file } => {
            let c = classifier(&file)?;
            let r = lemma_repair_with_budget(&c, budget()?.unwrap_or(DEFAULT_MONOID_BUDGET))?;
            out(
                json!({
                    "index_before": c.index(),
                    "index_after": r.classifier.index(),
                    "merges": r.merges,
                    "classifier": r.classifier.to_string(),
                }),
                format!("{} merges, index {} -> {}", r.merges.len(), c.index(), r.classifier.index()),
            )
        }
        CongruenceCmd::Kernel { file } => {
            let c = Classifier::transition_kernel(&automaton(&file)?, limits()?)?;
            out(json!({ "index": c.index(), "classifier": c.to_string() }), format!("kernel with {} classes", c.index()))
        }
        CongruenceCmd::Arnold { oracle: name, word_bound, context_bound } => {
            let o = oracle(&name)?;
            let p = arnold_classes_bounded(o.as_ref(), word_bound, context_bound)?;
            out(
                json!({
                    "classes": classes_json(&p.classes),
                    "count": p.classes.len(),
                    "transitive": p.is_transitive(),
                    "non_transitive": p.non_transitive,
                }),
                format!("{} classes", p.classes.len()),
            )
        }
        CongruenceCmd::Right { oracle: name, word_bound, tail_bound } => {
            let o = oracle(&name)?;
            let mut classes: Vec<Vec<FiniteWord>> = Vec::new();
            for u in FiniteWord::enumerate(o.alphabet(), word_bound) {
                let mut home = None;
                for (k, c) in classes.iter().enumerate() {
                    if right_congruence_bounded(o.as_ref(), &c[0], &u, tail_bound)? {
                        home = Some(k);
                        break;
                    }
                }
                match home {
                    Some(k) => classes[k].push(u),
                    None => classes.push(vec![u]),
                }
            }
            out(json!({ "classes": classes_json(&classes), "count": classes.len() }), format!("{} classes", classes.len()))
        }
    }
}

pub fn oracle_cmd(cmd: OracleCmd) -> Result<Output> {
    match cmd {
        OracleCmd::Member { oracle: name, word } => {
            let o = oracle(&name)?;
            let w: OmegaWord = word.parse()?;
            let member = o.contains(&w)?;
            out(json!({ "oracle": o.name(), "word": w.to_string(), "member": member }), format!("{w} in {}: {member}", o.name()))
        }
        OracleCmd::NeutralTest { oracle: name, samples, seed } => {
            let o = oracle(&name)?;
            let found = neutral_letter_property_test(o.as_ref(), samples, seed.seed)?;
            let summary = match &found {
                None => format!("{samples} samples, no counterexample"),
                Some(c) => format!("counterexample {} vs {}", c.original, c.modified),
            };
            out(json!({ "samples": samples, "seed": seed.seed, "counterexample": found }), summary)
        }
        OracleCmd::FindViolation { oracle: name, classifier: file } => {
            let o = oracle(&name)?;
            let w = o.find_violation(&classifier(&file)?)?;
            let verified = w.verify(o.as_ref())?;
            out(json!({ "witness": w, "verified": verified }), format!("{} vs {}", w.original_product, w.replaced_product))
        }
    }
}

fn spoiler(name: &str, seed: u64) -> Result<Box<dyn Spoiler>> {
    match name {
        "random" => Ok(Box::new(RandomSpoiler::new(seed))),
        "diverging" => Ok(Box::new(DivergingSpoiler::new())),
        other => bail!("unknown spoiler {other:?}; expected random or diverging"),
    }
}

fn duplicator(name: &str, seed: u64, max_len: usize) -> Result<Box<dyn Duplicator>> {
    if let Some(w) = name.strip_prefix("constant:") {
        return Ok(Box::new(ConstantDuplicator::new(w.parse()?)));
    }
    match name {
        "copy" => Ok(Box::new(CopyDuplicator)),
        "random" => Ok(Box::new(RandomDuplicator::new(seed, max_len))),
        other => bail!("unknown duplicator {other:?}; expected copy, random or constant:<word>"),
    }
}

pub fn game(cmd: GameCmd) -> Result<Output> {
    match cmd {
        GameCmd::Play { word, oracle: name, spoiler: s, duplicator: d, horizon, max_len, seed, output } => {
            let o = oracle(&name)?;
            let w: OmegaWord = word.parse()?;
            let mut config = PlayConfig { horizon, ..PlayConfig::default() };
            if let Some(n) = budget()? {
                config.scan_budget = n as u64;
            }
            let mut sp = spoiler(&s, seed.seed)?;
            let mut du = duplicator(&d, seed.seed, max_len)?;
            let t = play_bounded(&w, o.as_ref(), sp.as_mut(), du.as_mut(), config)?;
            if let Some(path) = output {
                std::fs::write(&path, serde_json::to_string_pretty(&t)?).with_context(|| format!("cannot write {path}"))?;
            }
            let winner = t.verdict.winner;
            out(json!({ "winner": winner, "transcript": t }), format!("winner: {winner:?}"))
        }
        GameCmd::Validate { file, oracle: name } => {
            let o = oracle(&name)?;
            let t: GameTranscript = serde_json::from_str(&read(&file)?).with_context(|| format!("in transcript {file}"))?;
            let violations = validate_transcript(&t, o.as_ref());
            let verdict = adjudicate(&t, o.as_ref());
            let consistent = verdict == t.verdict;
            out(
                json!({ "violations": violations, "verdict": verdict, "matches_recorded": consistent }),
                format!("{} rule violations, adjudication {}", violations.len(), if consistent { "matches" } else { "differs" }),
            )
        }
    }
}

fn formula(path: &str) -> Result<Formula> {
    read(path)?.parse::<Formula>().with_context(|| format!("in formula file {path}"))
}

pub fn mso(cmd: MsoCmd) -> Result<Output> {
    match cmd {
        MsoCmd::Compile { file, alphabet } => {
            let f = formula(&file)?;
            let c = compile_with_limits(&f, &alphabet.parse()?, limits()?)?;
            let legend: BTreeMap<String, String> =
                c.coding.alphabet().letters().iter().map(|&l| (format!("U+{:05X}", l as u32), c.coding.describe(l))).collect();
            let vars: Vec<String> = c.coding.vars().iter().map(|v| v.name.clone()).collect();
            out(
                json!({ "formula": f.to_string(), "vars": vars, "automaton": automaton_json(&c.automaton), "letters": legend }),
                format!("{} states", c.automaton.num_states()),
            )
        }
        MsoCmd::Sat { file, alphabet } => {
            let f = formula(&file)?;
            let c = compile_with_limits(&f, &alphabet.parse()?, limits()?)?;
            match c.automaton.is_empty() {
                Emptiness::Empty => out(json!({ "satisfiable": false, "model": null }), "UNSAT"),
                Emptiness::NonEmpty(w) => {
                    let model = c.coding.decode_valuation(&w)?;
                    // The model is re-checked by direct evaluation.
                    let validated = evaluate(&f, &model, &Oracles::new())?;
                    out(
                        json!({ "satisfiable": true, "model": model, "validated": validated }),
                        format!("SAT, model word {}", model.word),
                    )
                }
            }
        }
        MsoCmd::Eval { file, valuation, oracle: name, symbol } => {
            let f = formula(&file)?;
            let val: UpValuation = serde_json::from_str(&read(&valuation)?).with_context(|| format!("in valuation {valuation}"))?;
            let bound = name.as_deref().map(oracle).transpose()?;
            let mut oracles = Oracles::new();
            if let Some(o) = &bound {
                oracles.insert(symbol, o.as_ref());
            }
            let value = evaluate(&f, &val, &oracles)?;
            out(json!({ "value": value }), format!("{value}"))
        }
        MsoCmd::EncodeGame { alphabet, neutral, symbol } => {
            let letters = alphabet
                .split(',')
                .map(|s| {
                    let mut cs = s.trim().chars();
                    match (cs.next(), cs.next()) {
                        (Some(c), None) => Ok(c),
                        _ => Err(anyhow!("letters are single characters, got {s:?}")),
                    }
                })
                .collect::<Result<Vec<char>>>()?;
            let f = encode_congruence_game(&Alphabet::from_letters(letters)?, neutral, &symbol)?;
            let closed = f.free_vars()?.is_empty();
            out(
                json!({
                    "formula": f.to_string(),
                    "size": f.size(),
                    "language_atoms": f.count_lang_atoms(),
                    "closed": closed,
                }),
                format!("size {}, {} language atom(s)", f.size(), f.count_lang_atoms()),
            )
        }
    }
}

pub fn trio(cmd: TrioCmd) -> Result<Output> {
    match cmd {
        TrioCmd::L1 { lang, input } => {
            let l = finite_language_by_name(&lang.language)?;
            let v = member_l1(l.as_ref(), &parse_tokens(&input)?, lang.bound)?;
            out(json!({ "member": v.member, "exact": v.exact }), format!("member: {}", v.member))
        }
        TrioCmd::L2 { lang, input } => {
            let l = finite_language_by_name(&lang.language)?;
            let s: SeparatedWord = input.parse()?;
            let v = member_l2(l.as_ref(), &s, lang.bound);
            out(
                json!({ "member": v.member, "exact": v.exact, "hashes": s.w.len(), "rho_hashes": s.v.len() }),
                format!("member: {}", v.member),
            )
        }
        TrioCmd::Project { language, input } => {
            if let Some(name) = language {
                finite_language_by_name(&name)?;
            }
            let image = tokens_to_string(&project_to_separators(&parse_tokens(&input)?));
            out(json!({ "image": image }), image)
        }
        TrioCmd::Loop { language, word, power } => {
            let o = loop_representation(finite_language_by_name(&language)?, power);
            let w: UpWord = word.parse()?;
            let member = o.contains_up(&w)?;
            out(json!({ "oracle": o.name(), "word": w.to_string(), "member": member, "power_bound": power }), format!("member: {member}"))
        }
        TrioCmd::Census { lang, max_len } => {
            let l = finite_language_by_name(&lang.language)?;
            let mut members = 0usize;
            let mut unequal = 0usize;
            let mut exact = true;
            let mut images: BTreeMap<String, usize> = BTreeMap::new();
            let mut counts: BTreeSet<usize> = BTreeSet::new();
            let visited = for_each_l2_member(l.as_ref(), max_len, lang.bound, |s, v| {
                members += 1;
                exact &= v.exact;
                unequal += usize::from(s.w.len() != s.v.len());
                counts.insert(s.w.len());
                *images.entry(tokens_to_string(&project_to_separators(&s.to_tokens()))).or_default() += 1;
            });
            out(
                json!({
                    "max_len": max_len,
                    "members": members,
                    "unequal_counts": unequal,
                    "separator_counts": counts,
                    "images": images,
                    "partial_lists": visited,
                    "exact": exact,
                }),
                format!("{members} members, {unequal} with unequal separator counts"),
            )
        }
    }
}
