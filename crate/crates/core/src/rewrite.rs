//! The four string-rewriting systems over the generator alphabet, with
//! normal-form reduction, critical-pair reporting, semantic soundness
//! checking, C-track analysis, the no-potential-cancellations predicate,
//! and the constructive completion of a word to positive form.
//!
//! `R2` and `R3` rewrite positive words over `{A, B, C, c}`; `R2hat` and
//! `R3hat` extend them to the seven-letter alphabet with the absorbing `0`.
//! Reduction applies the rule whose left-hand side matches leftmost,
//! tie-broken by table order. The strategy is fixed purely so step counts
//! are reproducible; on a complete system the normal form does not depend
//! on it.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::RewriteError;
use crate::projective::{Interval, PartialLft, Variant};
use crate::words::{letters_semantics, GenWord, Letter};

/// Default step cap for reduction; diagnostic only. It never fires on the
/// table systems at the word lengths this crate works with.
pub const DEFAULT_STEP_CAP: u64 = 1_000_000;

/// One oriented rule `lhs -> rhs`. Sides are raw letter sequences; `0` may
/// appear as a letter inside rule patterns and transient buffers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RewriteRule {
    lhs: Vec<Letter>,
    rhs: Vec<Letter>,
}

impl RewriteRule {
    fn new(lhs: &str, rhs: &str) -> Self {
        RewriteRule {
            lhs: side(lhs),
            rhs: side(rhs),
        }
    }

    pub fn lhs(&self) -> &[Letter] {
        &self.lhs
    }

    pub fn rhs(&self) -> &[Letter] {
        &self.rhs
    }

    /// An advancing rule moves a `C` or `c` through the word; the
    /// cancellation rules `Cc -> 1`, `cC -> 1` and the `0`-absorption rules
    /// do not advance anything.
    pub fn is_advancing(&self) -> bool {
        let has_c = self.lhs.iter().any(|l| l.is_c_like());
        let is_cancellation = matches!(
            self.lhs.as_slice(),
            [Letter::UpperC, Letter::LowerC] | [Letter::LowerC, Letter::UpperC]
        );
        let touches_zero = self.lhs.contains(&Letter::Zero);
        has_c && !is_cancellation && !touches_zero
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |ls: &[Letter], f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if ls.is_empty() {
                write!(f, "1")
            } else {
                for l in ls {
                    write!(f, "{}", l.to_char())?;
                }
                Ok(())
            }
        };
        show(&self.lhs, f)?;
        write!(f, " -> ")?;
        show(&self.rhs, f)
    }
}

fn side(s: &str) -> Vec<Letter> {
    if s == "1" {
        return Vec::new();
    }
    s.chars()
        .map(|ch| Letter::from_char(ch).expect("rule table letter"))
        .collect()
}

/// The four named systems.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SystemName {
    R2,
    R2Hat,
    R3,
    R3Hat,
}

impl SystemName {
    pub fn parse(text: &str) -> Option<SystemName> {
        match text.to_ascii_lowercase().as_str() {
            "r2" => Some(SystemName::R2),
            "r2hat" => Some(SystemName::R2Hat),
            "r3" => Some(SystemName::R3),
            "r3hat" => Some(SystemName::R3Hat),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SystemName::R2 => "R2",
            SystemName::R2Hat => "R2hat",
            SystemName::R3 => "R3",
            SystemName::R3Hat => "R3hat",
        }
    }
}

impl fmt::Display for SystemName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// An ordered rule table together with its variant and alphabet.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    name: SystemName,
    variant: Variant,
    rules: Vec<RewriteRule>,
    /// Positive systems rewrite over `{A, B, C, c}`; hatted systems over the
    /// seven-letter alphabet with `0`.
    positive_alphabet: bool,
}

impl RewriteSystem {
    /// The eight-rule positive system over `{A, B, C_2, c_2}`.
    pub fn r2() -> Self {
        let rules = [
            ("CAA", "AC"),
            ("CB", "BBC"),
            ("CAB", "BAc"),
            ("cA", "AAc"),
            ("cBB", "Bc"),
            ("cBA", "ABC"),
            ("Cc", "1"),
            ("cC", "1"),
        ];
        RewriteSystem {
            name: SystemName::R2,
            variant: Variant::N2,
            rules: rules.iter().map(|(l, r)| RewriteRule::new(l, r)).collect(),
            positive_alphabet: true,
        }
    }

    /// The full seven-letter system extending [`RewriteSystem::r2`], with the
    /// `0`-absorption patterns instantiated over the whole alphabet.
    pub fn r2hat() -> Self {
        let mut rules: Vec<RewriteRule> = RewriteSystem::r2().rules;
        let lower = [
            ("Caa", "aC"),
            ("Cb", "bbC"),
            ("Cab", "bac"),
            ("ca", "aac"),
            ("cbb", "bc"),
            ("bA", "0"),
            ("aB", "0"),
            ("bB", "1"),
            ("aA", "1"),
        ];
        rules.extend(lower.iter().map(|(l, r)| RewriteRule::new(l, r)));
        rules.extend(zero_rules());
        RewriteSystem {
            name: SystemName::R2Hat,
            variant: Variant::N2,
            rules,
            positive_alphabet: false,
        }
    }

    /// The twelve-rule positive system over `{A, B, C_3, c_3}`.
    pub fn r3() -> Self {
        let rules = [
            ("CAAA", "AC"),
            ("CAAB", "BAAc"),
            ("CABA", "BABC"),
            ("CABB", "BBAc"),
            ("CB", "BBBC"),
            ("cA", "AAAc"),
            ("cBAA", "AABC"),
            ("cBAB", "ABAc"),
            ("cBBA", "ABBC"),
            ("cBBB", "Bc"),
            ("Cc", "1"),
            ("cC", "1"),
        ];
        RewriteSystem {
            name: SystemName::R3,
            variant: Variant::N3,
            rules: rules.iter().map(|(l, r)| RewriteRule::new(l, r)).collect(),
            positive_alphabet: true,
        }
    }

    /// The full seven-letter system extending [`RewriteSystem::r3`].
    pub fn r3hat() -> Self {
        let mut rules: Vec<RewriteRule> = RewriteSystem::r3().rules;
        let lower = [
            ("ca", "aaac"),
            ("Caab", "baac"),
            ("cbab", "abac"),
            ("Cabb", "bbac"),
            ("cbbb", "bc"),
            ("Caaa", "aC"),
            ("cbaa", "aabC"),
            ("Caba", "babC"),
            ("cbba", "abbC"),
            ("Cb", "bbbC"),
        ];
        rules.extend(lower.iter().map(|(l, r)| RewriteRule::new(l, r)));
        rules.extend(zero_rules());
        rules.push(RewriteRule::new("bB", "1"));
        rules.push(RewriteRule::new("aA", "1"));
        rules.push(RewriteRule::new("aB", "0"));
        rules.push(RewriteRule::new("bA", "0"));
        RewriteSystem {
            name: SystemName::R3Hat,
            variant: Variant::N3,
            rules,
            positive_alphabet: false,
        }
    }

    pub fn by_name(name: SystemName) -> Self {
        match name {
            SystemName::R2 => RewriteSystem::r2(),
            SystemName::R2Hat => RewriteSystem::r2hat(),
            SystemName::R3 => RewriteSystem::r3(),
            SystemName::R3Hat => RewriteSystem::r3hat(),
        }
    }

    pub fn all() -> [RewriteSystem; 4] {
        [
            RewriteSystem::r2(),
            RewriteSystem::r2hat(),
            RewriteSystem::r3(),
            RewriteSystem::r3hat(),
        ]
    }

    pub fn name(&self) -> SystemName {
        self.name
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    fn letter_in_alphabet(&self, l: Letter) -> bool {
        match l {
            Letter::UpperA | Letter::UpperB | Letter::UpperC | Letter::LowerC => true,
            Letter::LowerA | Letter::LowerB | Letter::Zero => !self.positive_alphabet,
            Letter::UpperT | Letter::LowerT => false,
        }
    }

    fn check_word(&self, w: &GenWord) -> Result<(), RewriteError> {
        if w.variant() != self.variant {
            return Err(RewriteError::VariantMismatch {
                word: w.variant().n(),
                system: self.variant.n(),
            });
        }
        if w.is_zero() {
            return if self.positive_alphabet {
                Err(RewriteError::AlphabetMismatch {
                    system: self.name.as_str(),
                })
            } else {
                Ok(())
            };
        }
        let ok = w
            .letters()
            .unwrap()
            .iter()
            .all(|&l| self.letter_in_alphabet(l));
        if ok {
            Ok(())
        } else {
            Err(RewriteError::AlphabetMismatch {
                system: self.name.as_str(),
            })
        }
    }

    /// Finds the leftmost redex at or after `from`: the smallest position
    /// carrying a match, tie-broken by table order.
    fn leftmost_redex(&self, buf: &[Letter], from: usize) -> Option<(usize, usize)> {
        for pos in from..buf.len() {
            for (idx, rule) in self.rules.iter().enumerate() {
                if buf[pos..].starts_with(&rule.lhs) {
                    return Some((pos, idx));
                }
            }
        }
        None
    }

    /// Reduces `w` to its normal form, counting rewrite steps.
    pub fn try_reduce(&self, w: &GenWord, cap: u64) -> Result<(GenWord, u64), RewriteError> {
        self.check_word(w)?;
        let Some(letters) = w.letters() else {
            return Ok((GenWord::zero(self.variant), 0));
        };
        let mut buf: Vec<Letter> = letters.to_vec();
        let mut steps = 0u64;
        let max_lhs = self.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(1);
        // After a rewrite at `pos`, the prefix up to `pos - max_lhs + 1` is
        // untouched and was already redex-free, so scanning may resume there.
        let mut from = 0usize;
        while let Some((pos, idx)) = self.leftmost_redex(&buf, from) {
            if steps >= cap {
                return Err(RewriteError::StepCapExceeded(cap));
            }
            let rule = &self.rules[idx];
            buf.splice(pos..pos + rule.lhs.len(), rule.rhs.iter().copied());
            steps += 1;
            from = pos.saturating_sub(max_lhs - 1);
        }
        let word = if buf.contains(&Letter::Zero) {
            debug_assert_eq!(buf, vec![Letter::Zero]);
            GenWord::zero(self.variant)
        } else {
            GenWord::from_letters(buf, self.variant)
        };
        Ok((word, steps))
    }

    /// The unique normal form `r(w)`. Panics on alphabet or variant misuse
    /// and on the (diagnostic) step cap.
    pub fn reduce(&self, w: &GenWord) -> GenWord {
        self.try_reduce(w, DEFAULT_STEP_CAP)
            .unwrap_or_else(|e| panic!("reduce({w}) in {}: {e}", self.name))
            .0
    }

    pub fn is_reduced(&self, w: &GenWord) -> bool {
        match w.letters() {
            None => true,
            Some(ls) => self.leftmost_redex(ls, 0).is_none(),
        }
    }

    /// Every redex in `w`: pairs `(position, rule index)`.
    pub fn redexes(&self, w: &GenWord) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let Some(letters) = w.letters() else {
            return out;
        };
        for pos in 0..letters.len() {
            for (idx, rule) in self.rules.iter().enumerate() {
                if letters[pos..].starts_with(&rule.lhs) {
                    out.push((pos, idx));
                }
            }
        }
        out
    }

    /// Applies rule `rule_index` at `position` (which must match).
    pub fn apply_at(&self, w: &GenWord, position: usize, rule_index: usize) -> GenWord {
        let letters = w.letters().expect("rewriting the absorbing word");
        let rule = &self.rules[rule_index];
        assert!(letters[position..].starts_with(&rule.lhs), "not a redex");
        let mut buf = letters.to_vec();
        buf.splice(
            position..position + rule.lhs.len(),
            rule.rhs.iter().copied(),
        );
        self.word_from_buffer(buf)
    }

    /// All words reachable from `w` by exactly one rule application.
    pub fn rewrite_once_all(&self, w: &GenWord) -> BTreeSet<GenWord> {
        let mut out = BTreeSet::new();
        let Some(letters) = w.letters() else {
            return out;
        };
        for pos in 0..letters.len() {
            for rule in &self.rules {
                if letters[pos..].starts_with(&rule.lhs) {
                    let mut buf = letters.to_vec();
                    buf.splice(pos..pos + rule.lhs.len(), rule.rhs.iter().copied());
                    out.insert(self.word_from_buffer(buf));
                }
            }
        }
        out
    }

    /// Converts a rewrite buffer to a word. A buffer containing the letter
    /// `0` is reported as the absorbing word, to which it reduces anyway.
    fn word_from_buffer(&self, buf: Vec<Letter>) -> GenWord {
        if buf.contains(&Letter::Zero) {
            GenWord::zero(self.variant)
        } else {
            GenWord::from_letters(buf, self.variant)
        }
    }

    /// Applies the advancing rule matching at `position` (first in table
    /// order). Cancellation and `0`-absorption rules are not advances.
    pub fn advance(&self, w: &GenWord, position: usize) -> Result<GenWord, RewriteError> {
        self.check_word(w)?;
        let letters = w
            .letters()
            .ok_or_else(|| RewriteError::NoAdvanceAt(position))?;
        for rule in &self.rules {
            if rule.is_advancing() && letters[position.min(letters.len())..].starts_with(&rule.lhs)
            {
                let mut buf = letters.to_vec();
                buf.splice(position..position + rule.lhs.len(), rule.rhs.iter().copied());
                return Ok(self.word_from_buffer(buf));
            }
        }
        Err(RewriteError::NoAdvanceAt(position))
    }
}

fn zero_rules() -> Vec<RewriteRule> {
    let letters = ["A", "B", "C", "c", "a", "b", "0"];
    let mut rules = Vec::new();
    for x in letters {
        rules.push(RewriteRule::new(&format!("0{x}"), "0"));
    }
    for x in letters {
        if x != "0" {
            rules.push(RewriteRule::new(&format!("{x}0"), "0"));
        }
    }
    rules
}

// ---------------------------------------------------------------------------
// Critical pairs and local confluence
// ---------------------------------------------------------------------------

/// One divergence arising from overlapping left-hand sides.
#[derive(Clone, Debug)]
pub struct CriticalPair {
    pub rule_left: usize,
    pub rule_right: usize,
    /// The superposition word the two redexes share.
    pub word: GenWord,
    pub left_nf: GenWord,
    pub right_nf: GenWord,
    pub joinable: bool,
}

/// Result of enumerating every overlap of two left-hand sides.
#[derive(Clone, Debug)]
pub struct CriticalPairReport {
    pub system: SystemName,
    pub pairs: Vec<CriticalPair>,
    pub all_joinable: bool,
}

impl CriticalPairReport {
    pub fn unjoinable(&self) -> impl Iterator<Item = &CriticalPair> {
        self.pairs.iter().filter(|p| !p.joinable)
    }
}

/// Enumerates every proper overlap and containment of two left-hand sides,
/// reduces both one-step results to normal form, and reports joinability.
/// Redexes at disjoint positions commute and are skipped.
pub fn critical_pair_report(sys: &RewriteSystem) -> CriticalPairReport {
    let mut pairs = Vec::new();
    let rules = sys.rules();
    for (i, ri) in rules.iter().enumerate() {
        for (j, rj) in rules.iter().enumerate() {
            let (li, lj) = (ri.lhs(), rj.lhs());
            // Proper overlap: a nonempty proper suffix of `li` is a proper
            // prefix of `lj`.
            for k in 1..li.len().min(lj.len()) {
                if li[li.len() - k..] == lj[..k] {
                    let mut word: Vec<Letter> = li.to_vec();
                    word.extend_from_slice(&lj[k..]);
                    let mut left: Vec<Letter> = ri.rhs().to_vec();
                    left.extend_from_slice(&lj[k..]);
                    let mut right: Vec<Letter> = li[..li.len() - k].to_vec();
                    right.extend_from_slice(rj.rhs());
                    pairs.push(make_pair(sys, i, j, word, left, right));
                }
            }
            // Containment: `lj` occurs inside `li`. The identical rule on
            // the identical span is not a divergence.
            if lj.len() <= li.len() {
                for p in 0..=li.len() - lj.len() {
                    if i == j && p == 0 && lj.len() == li.len() {
                        continue;
                    }
                    if li[p..p + lj.len()] == *lj {
                        let word: Vec<Letter> = li.to_vec();
                        let left: Vec<Letter> = ri.rhs().to_vec();
                        let mut right: Vec<Letter> = li[..p].to_vec();
                        right.extend_from_slice(rj.rhs());
                        right.extend_from_slice(&li[p + lj.len()..]);
                        pairs.push(make_pair(sys, i, j, word, left, right));
                    }
                }
            }
        }
    }
    let all_joinable = pairs.iter().all(|p| p.joinable);
    CriticalPairReport {
        system: sys.name(),
        pairs,
        all_joinable,
    }
}

fn make_pair(
    sys: &RewriteSystem,
    i: usize,
    j: usize,
    word: Vec<Letter>,
    left: Vec<Letter>,
    right: Vec<Letter>,
) -> CriticalPair {
    let word = sys.word_from_buffer(word);
    let left_nf = sys.reduce(&sys.word_from_buffer(left));
    let right_nf = sys.reduce(&sys.word_from_buffer(right));
    CriticalPair {
        rule_left: i,
        rule_right: j,
        word,
        joinable: left_nf == right_nf,
        left_nf,
        right_nf,
    }
}

// ---------------------------------------------------------------------------
// Rule soundness against the projective semantics
// ---------------------------------------------------------------------------

/// Per-rule verdict of the semantic check.
#[derive(Clone, Debug)]
pub struct RuleSoundness {
    pub rule_index: usize,
    pub rule: String,
    pub sound: bool,
}

#[derive(Clone, Debug)]
pub struct SoundnessReport {
    pub system: SystemName,
    pub rules: Vec<RuleSoundness>,
    pub all_sound: bool,
}

/// Checks that every rule's two sides denote the same partial map: equal
/// normalized matrix and equal domain interval, or both the empty map.
pub fn verify_rule_soundness(sys: &RewriteSystem) -> SoundnessReport {
    let ambient = Interval::unit();
    let mut rules = Vec::new();
    for (idx, rule) in sys.rules().iter().enumerate() {
        let lhs = letters_semantics(rule.lhs(), sys.variant(), ambient.clone());
        let rhs = letters_semantics(rule.rhs(), sys.variant(), ambient.clone());
        rules.push(RuleSoundness {
            rule_index: idx,
            rule: rule.to_string(),
            sound: lhs == rhs,
        });
    }
    let all_sound = rules.iter().all(|r| r.sound);
    SoundnessReport {
        system: sys.name(),
        rules,
        all_sound,
    }
}

/// Semantic sanity for arbitrary words: `w` and `reduce(w)` denote the same
/// partial map. Used by property tests.
pub fn reduction_preserves_semantics(sys: &RewriteSystem, w: &GenWord) -> bool {
    let reduced = sys.reduce(w);
    let before = semantics_in_system(sys, w);
    let after = semantics_in_system(sys, &reduced);
    before == after
}

fn semantics_in_system(sys: &RewriteSystem, w: &GenWord) -> PartialLft {
    match w.letters() {
        None => PartialLft::Zero,
        Some(ls) => letters_semantics(ls, sys.variant(), Interval::unit()),
    }
}

// ---------------------------------------------------------------------------
// C-tracks and the no-potential-cancellations condition
// ---------------------------------------------------------------------------

/// The unique maximal decomposition of a word into C-tracks: subwords with
/// at most one `C`/`c`, occurring only at the start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CTrackDecomposition {
    pub tracks: Vec<GenWord>,
}

pub fn c_tracks(w: &GenWord) -> CTrackDecomposition {
    let letters = w.letters().expect("C-tracks of the absorbing word");
    let mut tracks = Vec::new();
    if letters.is_empty() {
        return CTrackDecomposition { tracks };
    }
    // Every occurrence of C or c opens a new track.
    let mut start = 0usize;
    for (i, l) in letters.iter().enumerate() {
        if l.is_c_like() && i > start {
            tracks.push(GenWord::from_letters(
                letters[start..i].iter().copied(),
                w.variant(),
            ));
            start = i;
        }
    }
    tracks.push(GenWord::from_letters(
        letters[start..].iter().copied(),
        w.variant(),
    ));
    CTrackDecomposition { tracks }
}

fn contains_cancellation_pair(letters: &[Letter]) -> bool {
    letters.windows(2).any(|w| {
        matches!(
            w,
            [Letter::UpperC, Letter::LowerC] | [Letter::LowerC, Letter::UpperC]
        )
    })
}

fn is_negative_to_positive(letters: &[Letter]) -> bool {
    let last_lower = letters
        .iter()
        .rposition(|l| matches!(l, Letter::LowerA | Letter::LowerB));
    let first_upper = letters
        .iter()
        .position(|l| matches!(l, Letter::UpperA | Letter::UpperB));
    match (last_lower, first_upper) {
        (Some(lo), Some(hi)) => lo < hi,
        _ => true,
    }
}

fn contains_adjacent(letters: &[Letter], a: Letter, b: Letter) -> bool {
    letters.windows(2).any(|w| w == [a, b])
}

/// Decides the no-potential-cancellations condition: reducing any single
/// C-track in place never exposes a `cC` or `Cc`.
///
/// For the hatted systems the word must be negative-to-positive, contain no
/// `aA`/`bB`, and not reduce to the absorbing word; violations are reported
/// as errors, distinct from a `false` verdict.
pub fn has_npc(w: &GenWord, sys: &RewriteSystem) -> Result<bool, RewriteError> {
    sys.check_word(w)?;
    let Some(letters) = w.letters() else {
        return Err(RewriteError::Hypothesis("absorbing word".into()));
    };
    if !sys.positive_alphabet {
        if !is_negative_to_positive(letters) {
            return Err(RewriteError::Hypothesis(
                "word is not negative-to-positive".into(),
            ));
        }
        if contains_adjacent(letters, Letter::LowerA, Letter::UpperA)
            || contains_adjacent(letters, Letter::LowerB, Letter::UpperB)
        {
            return Err(RewriteError::Hypothesis("word contains aA or bB".into()));
        }
        if sys.reduce(w).is_zero() {
            return Err(RewriteError::Hypothesis("word reduces to 0".into()));
        }
    }
    let decomposition = c_tracks(w);
    let tracks = &decomposition.tracks;
    for i in 0..tracks.len() {
        let reduced = sys.reduce(&tracks[i]);
        let mut combined: Vec<Letter> = Vec::new();
        for (j, track) in tracks.iter().enumerate() {
            let part = if j == i { &reduced } else { track };
            combined.extend_from_slice(part.letters().unwrap_or(&[]));
        }
        if contains_cancellation_pair(&combined) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Completion to positive form
// ---------------------------------------------------------------------------

/// Output of [`complete_to_positive`]: a positive word `tau` with
/// `reduce(w . tau) = omega_hat . C^epsilon`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveCompletion {
    pub tau: GenWord,
    pub omega_hat: GenWord,
    pub epsilon: u32,
}

/// Constructs `tau in {A, B}*` such that `reduce(w . tau)` is a positive
/// word followed by `C^epsilon`, where `epsilon` is the number of `C`/`c`
/// letters of `w`.
///
/// For the positive systems `w` must have no potential cancellations; for
/// the hatted systems it must additionally be negative-to-positive and no
/// extension may reach the absorbing word. Violated hypotheses surface as
/// errors.
pub fn complete_to_positive(
    w: &GenWord,
    sys: &RewriteSystem,
) -> Result<PositiveCompletion, RewriteError> {
    if !has_npc(w, sys)? {
        return Err(RewriteError::Hypothesis(
            "word has potential cancellations".into(),
        ));
    }
    let tau = if sys.positive_alphabet {
        complete_positive_word(&sys.reduce(w), sys)?
    } else {
        complete_ntp_word(&sys.reduce(w), sys)?
    };
    let combined = sys.reduce(&w.concat(&tau));
    let epsilon = w.c_count() as u32;
    let omega_hat = split_positive_c_suffix(&combined, epsilon).ok_or_else(|| {
        RewriteError::Hypothesis(format!(
            "completion of {w} produced {combined}, not of positive.C^{epsilon} shape"
        ))
    })?;
    Ok(PositiveCompletion {
        tau,
        omega_hat,
        epsilon,
    })
}

/// Splits `w = omega_hat . C^epsilon` with `omega_hat` over `{A, B}`.
fn split_positive_c_suffix(w: &GenWord, epsilon: u32) -> Option<GenWord> {
    let letters = w.letters()?;
    let tail = epsilon as usize;
    if letters.len() < tail {
        return None;
    }
    let (head, suffix) = letters.split_at(letters.len() - tail);
    if !suffix.iter().all(|&l| l == Letter::UpperC) {
        return None;
    }
    if !head.iter().all(|l| l.is_positive()) {
        return None;
    }
    Some(GenWord::from_letters(head.iter().copied(), w.variant()))
}

/// The inductive construction for reduced words over `{A, B, C, c}`.
fn complete_positive_word(r: &GenWord, sys: &RewriteSystem) -> Result<GenWord, RewriteError> {
    let variant = sys.variant();
    let letters = r.letters().expect("positive word");
    let epsilon = r.c_count() as u32;
    if epsilon == 0 {
        return Ok(GenWord::empty(variant));
    }
    if epsilon == 1 {
        return base_tau(letters, variant)
            .map(|tau| GenWord::from_letters(tau, variant))
            .ok_or_else(|| RewriteError::Hypothesis(format!("unexpected reduced ending in {r}")));
    }
    // Split after the first C/c; the tail carries exponent epsilon - 1.
    let first_c = letters.iter().position(|l| l.is_c_like()).unwrap();
    let head = GenWord::from_letters(letters[..=first_c].iter().copied(), variant);
    let tail = GenWord::from_letters(letters[first_c + 1..].iter().copied(), variant);
    let tau1 = complete_positive_word(&sys.reduce(&tail), sys)?;
    let intermediate = sys.reduce(&head.concat(&sys.reduce(&tail.concat(&tau1))));
    let tau2 = power_tau(&intermediate, epsilon, variant)?;
    Ok(tau1.concat(&tau2))
}

/// Base case: a single `C`/`c`. The right multiplier depends on the reduced
/// ending.
fn base_tau(letters: &[Letter], variant: Variant) -> Option<Vec<Letter>> {
    use Letter::{LowerC, UpperA, UpperB, UpperC};
    let pos = letters.iter().position(|l| l.is_c_like())?;
    let c = letters[pos];
    let tail = &letters[pos + 1..];
    let word = |s: &str| side(s);
    match variant {
        Variant::N2 => match (c, tail) {
            (UpperC, []) => Some(vec![]),
            (LowerC, []) => Some(word("BA")),
            (UpperC, [UpperA]) => Some(word("A")),
            (LowerC, [UpperB]) => Some(word("A")),
            _ => None,
        },
        Variant::N3 => match (c, tail) {
            (UpperC, []) => Some(vec![]),
            (LowerC, []) => Some(word("BBA")),
            (UpperC, [UpperA]) => Some(word("AA")),
            (UpperC, [UpperA, UpperB]) => Some(word("A")),
            (UpperC, [UpperA, UpperA]) => Some(word("A")),
            (LowerC, [UpperB]) => Some(word("AA")),
            (LowerC, [UpperB, UpperA]) => Some(word("A")),
            (LowerC, [UpperB, UpperB]) => Some(word("A")),
            _ => None,
        },
    }
}

/// Inductive step: after the recursive completion the word ends with
/// `C^epsilon` (done) or with a short residue before `C^(epsilon-1)`; a
/// power of `A` pushes the residue through.
fn power_tau(w: &GenWord, epsilon: u32, variant: Variant) -> Result<GenWord, RewriteError> {
    use Letter::{LowerC, UpperA, UpperB, UpperC};
    let letters = w
        .letters()
        .ok_or_else(|| RewriteError::Hypothesis("absorbing word in completion".into()))?;
    let trailing = letters
        .iter()
        .rev()
        .take_while(|&&l| l == UpperC)
        .count() as u32;
    if trailing >= epsilon {
        return Ok(GenWord::empty(variant));
    }
    if trailing + 1 != epsilon {
        return Err(RewriteError::Hypothesis(format!(
            "unexpected completion residue in {w}"
        )));
    }
    let head = &letters[..letters.len() - trailing as usize];
    let one_letter_residue =
        head.ends_with(&[UpperC, UpperA]) || head.ends_with(&[LowerC, UpperB]);
    let two_letter_residue = variant == Variant::N3
        && (head.ends_with(&[UpperC, UpperA, UpperB])
            || head.ends_with(&[UpperC, UpperA, UpperA])
            || head.ends_with(&[LowerC, UpperB, UpperA])
            || head.ends_with(&[LowerC, UpperB, UpperB]));
    // The residue CA / cB (one letter past the C) needs n^(epsilon-1) letters
    // doubled for variant 3; the two-letter residues need n^(epsilon-1).
    let count = match (variant, one_letter_residue, two_letter_residue) {
        (Variant::N2, true, _) => 1usize << (epsilon - 1),
        (Variant::N3, _, true) => 3usize.pow(epsilon - 1),
        (Variant::N3, true, false) => 2 * 3usize.pow(epsilon - 1),
        _ => {
            return Err(RewriteError::Hypothesis(format!(
                "unexpected completion residue in {w}"
            )))
        }
    };
    Ok(GenWord::from_letters(
        std::iter::repeat(UpperA).take(count),
        variant,
    ))
}

/// The negative-to-positive construction: complete the positive tail, force
/// a junction cancellation, and recurse on the shorter word.
fn complete_ntp_word(r: &GenWord, sys: &RewriteSystem) -> Result<GenWord, RewriteError> {
    let variant = sys.variant();
    if r.is_zero() {
        return Err(RewriteError::Hypothesis("word reduces to 0".into()));
    }
    let letters = r.letters().unwrap();
    let lower_count = letters
        .iter()
        .filter(|l| matches!(l, Letter::LowerA | Letter::LowerB))
        .count();
    if lower_count == 0 {
        let positive_sys = if variant == Variant::N2 {
            RewriteSystem::r2()
        } else {
            RewriteSystem::r3()
        };
        return complete_positive_word(&positive_sys.reduce(r), &positive_sys);
    }
    // Split after the last a/b.
    let boundary = letters
        .iter()
        .rposition(|l| matches!(l, Letter::LowerA | Letter::LowerB))
        .unwrap()
        + 1;
    let head = GenWord::from_letters(letters[..boundary].iter().copied(), variant);
    let tail = GenWord::from_letters(letters[boundary..].iter().copied(), variant);
    let positive_sys = if variant == Variant::N2 {
        RewriteSystem::r2()
    } else {
        RewriteSystem::r3()
    };
    let mut tau1 = complete_positive_word(&positive_sys.reduce(&tail), &positive_sys)?;
    let mut completed_tail = positive_sys.reduce(&tail.concat(&tau1));
    let eps_tail = tail.c_count() as u32;
    let hat = split_positive_c_suffix(&completed_tail, eps_tail)
        .ok_or_else(|| RewriteError::Hypothesis("tail completion lost its shape".into()))?;
    if hat.is_empty() {
        // Bare C^eps (or an empty tail): an A-power exposes a positive
        // initial letter for the junction to cancel against.
        let extra = GenWord::from_letters(
            std::iter::repeat(Letter::UpperA).take((variant.n() as u32).pow(eps_tail) as usize),
            variant,
        );
        tau1 = tau1.concat(&extra);
        completed_tail = positive_sys.reduce(&tail.concat(&tau1));
    }
    let combined = sys.reduce(&head.concat(&completed_tail));
    if combined.is_zero() {
        return Err(RewriteError::Hypothesis(
            "completion reached the absorbing word".into(),
        ));
    }
    let remaining = combined
        .letters()
        .unwrap()
        .iter()
        .filter(|l| matches!(l, Letter::LowerA | Letter::LowerB))
        .count();
    if remaining >= lower_count {
        return Err(RewriteError::Hypothesis(
            "junction letter failed to cancel".into(),
        ));
    }
    let tau2 = complete_ntp_word(&combined, sys)?;
    Ok(tau1.concat(&tau2))
}

// ---------------------------------------------------------------------------
// Normal-form shapes
// ---------------------------------------------------------------------------

/// The three-part shape of a reduced positive word: a prefix over `{A, B}`,
/// a sequence of `C`-blocks, and a trailing power of `C` or `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormShape {
    pub positive_prefix: GenWord,
    pub blocks: Vec<GenWord>,
    pub c_suffix: GenWord,
}

/// Splits a reduced word over `{A, B, C, c}` into the shape above; errors if
/// the word is not reduced or not of the shape.
pub fn classify_normal_form(
    w: &GenWord,
    sys: &RewriteSystem,
) -> Result<NormalFormShape, RewriteError> {
    sys.check_word(w)?;
    if !sys.is_reduced(w) {
        return Err(RewriteError::NotReduced);
    }
    let letters = w.letters().ok_or(RewriteError::NotNormalForm)?;
    if letters
        .iter()
        .any(|l| matches!(l, Letter::LowerA | Letter::LowerB))
    {
        return Err(RewriteError::NotNormalForm);
    }
    let variant = sys.variant();
    let mut i = 0usize;
    while i < letters.len() && letters[i].is_positive() {
        i += 1;
    }
    let positive_prefix = GenWord::from_letters(letters[..i].iter().copied(), variant);
    let mut blocks = Vec::new();
    let mut c_suffix = GenWord::empty(variant);
    while i < letters.len() {
        let run_letter = letters[i];
        debug_assert!(run_letter.is_c_like());
        let run_start = i;
        while i < letters.len() && letters[i] == run_letter {
            i += 1;
        }
        if i == letters.len() {
            c_suffix = GenWord::from_letters(letters[run_start..].iter().copied(), variant);
            break;
        }
        if letters[i].is_c_like() {
            // Adjacent C and c would be a redex.
            return Err(RewriteError::NotNormalForm);
        }
        // A block: the run plus one mandatory letter, plus (variant 3) one
        // more A/B when present, since nothing else could consume it.
        let expected = if run_letter == Letter::UpperC {
            Letter::UpperA
        } else {
            Letter::UpperB
        };
        if letters[i] != expected {
            return Err(RewriteError::NotNormalForm);
        }
        i += 1;
        if variant == Variant::N3 && i < letters.len() && letters[i].is_positive() {
            i += 1;
        }
        if i < letters.len() && letters[i].is_positive() {
            return Err(RewriteError::NotNormalForm);
        }
        blocks.push(GenWord::from_letters(
            letters[run_start..i].iter().copied(),
            variant,
        ));
    }
    Ok(NormalFormShape {
        positive_prefix,
        blocks,
        c_suffix,
    })
}
