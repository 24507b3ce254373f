//! Search of the infinite binary `{A, B}`-word tree for a cut set and a
//! family of matrix identities `C_n . omega = omega' . C_n^k`.
//!
//! Each visited vertex is tested exactly: the interval `M(v) . [0,1)` is
//! computed in integer arithmetic, the matrix string is extended by `a` or
//! `b` while the interval sits inside one half, and the vertex becomes a
//! leaf once the interval is all of `[0,1)` and the accumulated matrix is
//! an exact power of `C_n`. Every prepend and every classification counts
//! one step, so nontermination is observable through a step cap.
//!
//! For `n = 2` and `3` the search saturates quickly; for `n >= 4` it hits
//! any practical step cap, and the search reports that instead of looping.

use std::fmt;

use crate::projective::{
    detect_c_power_general, detect_power_of, make_generator, ExtRational, GeneratorName, Interval,
    ProjMatrix, Variant,
};
use crate::words::{GenWord, Letter};

/// One discovered leaf identity `C_n . omega = omega' . C_n^k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LeafIdentity {
    /// Path word from the root, over `{A, B}`.
    pub omega: Vec<Letter>,
    /// The word read off the `a`/`b` prefix, inverted letterwise.
    pub omega_prime: Vec<Letter>,
    /// Exponent of the trailing power of `C_n`.
    pub k: i64,
}

impl LeafIdentity {
    fn word(letters: &[Letter]) -> String {
        if letters.is_empty() {
            "1".to_string()
        } else {
            letters.iter().map(|l| l.to_char()).collect()
        }
    }

    pub fn omega_string(&self) -> String {
        Self::word(&self.omega)
    }

    pub fn omega_prime_string(&self) -> String {
        Self::word(&self.omega_prime)
    }
}

impl fmt::Display for LeafIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "C * {} = {} * C^{}",
            self.omega_string(),
            self.omega_prime_string(),
            self.k
        )
    }
}

/// Successful outcome: the leaves in left-to-right order and the exact
/// number of steps spent.
#[derive(Clone, Debug)]
pub struct CutsetResult {
    pub n: i64,
    pub leaves: Vec<LeafIdentity>,
    pub steps_used: u64,
}

/// Outcome of a bounded run.
#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Finished(CutsetResult),
    StepLimit { n: i64, steps_used: u64, leaves_found: usize },
}

impl SearchOutcome {
    pub fn is_finished(&self) -> bool {
        matches!(self, SearchOutcome::Finished(_))
    }
}

/// The three seed transformations the search subdivides with. The defaults
/// are the standard `A` and `B` together with `C_n`; the seeds are
/// parameters so that modified generator families can be probed the same
/// way.
#[derive(Clone, Debug)]
pub struct SearchSeeds {
    pub a: ProjMatrix,
    pub b: ProjMatrix,
    pub c: ProjMatrix,
    /// Range of the `a`-seed (`[0, 1/2)` for the default seeds).
    pub low_half: Interval,
    /// Range of the `b`-seed (`[1/2, 1)` for the default seeds).
    pub high_half: Interval,
    /// `Some(n)` when the seed `c` is the standard `C_n`, enabling the
    /// exact fix-0-fix-1 power test for any `n`.
    pub standard_c: Option<i64>,
}

impl SearchSeeds {
    pub fn standard(n: i64) -> Self {
        assert!(n >= 2, "the search needs n >= 2");
        let a = make_generator(GeneratorName::A, Variant::N2);
        let b = make_generator(GeneratorName::B, Variant::N2);
        SearchSeeds {
            a: a.matrix().unwrap().clone(),
            b: b.matrix().unwrap().clone(),
            c: ProjMatrix::new(n, 0, n - 1, 1),
            low_half: a.image_interval().unwrap(),
            high_half: b.image_interval().unwrap(),
            standard_c: Some(n),
        }
    }
}

/// Runs the search for `C_n` with the standard seeds.
pub fn run_search(n: i64, max_steps: u64) -> SearchOutcome {
    run_search_with_seeds(&SearchSeeds::standard(n), n, max_steps)
}

/// Runs the search with explicit seed matrices.
///
/// The traversal is depth-first, left child first, matching the toggle
/// discipline of a parent-pointer walk observably: leaves are recorded in
/// left-to-right order and the walk returns to the root only when every
/// subtree below is saturated.
pub fn run_search_with_seeds(seeds: &SearchSeeds, n: i64, max_steps: u64) -> SearchOutcome {
    let mut steps: u64 = 0;
    let mut leaves: Vec<LeafIdentity> = Vec::new();

    // Explicit stack of (path word, matrix of the path word); the root is
    // treated as an internal node so the search explores genuine cut sets
    // below it rather than stopping at the trivial one.
    enum Task {
        Visit(Vec<Letter>, ProjMatrix),
    }
    let mut stack = vec![
        Task::Visit(vec![Letter::UpperB], seeds.b.clone()),
        Task::Visit(vec![Letter::UpperA], seeds.a.clone()),
    ];
    steps += 1; // classifying the root as internal

    while let Some(Task::Visit(path, path_matrix)) = stack.pop() {
        if steps >= max_steps {
            return SearchOutcome::StepLimit {
                n,
                steps_used: steps,
                leaves_found: leaves.len(),
            };
        }
        // Initialize the matrix string product: C_n prepended to the path.
        let mut m = seeds.c.mul(&path_matrix);
        let mut prefix: Vec<Letter> = Vec::new();
        let verdict = loop {
            let image = Interval::new(m.apply(&ExtRational::zero()), m.apply(&ExtRational::one()));
            if seeds.low_half.contains_interval(&image) {
                m = seeds.a.inverse().mul(&m);
                prefix.push(Letter::LowerA);
                steps += 1;
            } else if seeds.high_half.contains_interval(&image) {
                m = seeds.b.inverse().mul(&m);
                prefix.push(Letter::LowerB);
                steps += 1;
            } else if image == Interval::unit() {
                let power = match seeds.standard_c {
                    Some(n) => detect_c_power_general(&m, n),
                    None => detect_power_of(&m, &seeds.c),
                };
                break power;
            } else {
                break None;
            }
            if steps >= max_steps {
                return SearchOutcome::StepLimit {
                    n,
                    steps_used: steps,
                    leaves_found: leaves.len(),
                };
            }
        };
        match verdict {
            Some(k) => {
                // Leaf: prepending c^k makes the matrix string evaluate to
                // the identity; the identity reads off the prefix.
                steps += 2; // the c^k prepend and the classification
                let omega_prime: Vec<Letter> = prefix.iter().map(|l| l.inverse()).collect();
                leaves.push(LeafIdentity {
                    omega: path.clone(),
                    omega_prime,
                    k,
                });
            }
            None => {
                // Internal node: recurse, left child first.
                steps += 1;
                let mut left = path.clone();
                left.push(Letter::UpperA);
                let mut right = path;
                right.push(Letter::UpperB);
                stack.push(Task::Visit(right.clone(), path_matrix.mul(&seeds.b)));
                stack.push(Task::Visit(left, path_matrix.mul(&seeds.a)));
            }
        }
    }

    SearchOutcome::Finished(CutsetResult {
        n,
        leaves,
        steps_used: steps,
    })
}

/// Checks the cut-set property (the `omega_i . I` tile `[0,1)` in order)
/// and every identity as an equality of normalized matrices.
pub fn verify_result(result: &CutsetResult, n: i64) -> bool {
    let seeds = SearchSeeds::standard(n);
    let mut expected_lo = ExtRational::zero();
    for leaf in &result.leaves {
        let m = word_matrix(&leaf.omega, &seeds);
        let lo = m.apply(&ExtRational::zero());
        let hi = m.apply(&ExtRational::one());
        if lo != expected_lo {
            return false;
        }
        expected_lo = hi;
        // C * omega = omega' * C^k as matrices up to positive scalar.
        let lhs = seeds.c.mul(&m);
        let rhs = word_matrix(&leaf.omega_prime, &seeds).mul(&seeds.c.pow(leaf.k));
        if lhs != rhs {
            return false;
        }
    }
    expected_lo == ExtRational::one()
}

fn word_matrix(letters: &[Letter], seeds: &SearchSeeds) -> ProjMatrix {
    let mut m = ProjMatrix::identity();
    for l in letters {
        let factor = match l {
            Letter::UpperA => seeds.a.clone(),
            Letter::UpperB => seeds.b.clone(),
            _ => unreachable!("cut-set words are over {{A, B}}"),
        };
        m = m.mul(&factor);
    }
    m
}

/// Formats the identities for text output, one per line.
pub fn render_identities(result: &CutsetResult) -> String {
    let mut out = String::new();
    for leaf in &result.leaves {
        out.push_str(&leaf.to_string());
        out.push('\n');
    }
    out
}

/// Converts leaf words to `GenWord`s over the given variant (for feeding
/// the rewrite machinery).
pub fn leaf_words_as_genwords(result: &CutsetResult, variant: Variant) -> Vec<(GenWord, GenWord, i64)> {
    result
        .leaves
        .iter()
        .map(|leaf| {
            (
                GenWord::from_letters(leaf.omega.iter().copied(), variant),
                GenWord::from_letters(leaf.omega_prime.iter().copied(), variant),
                leaf.k,
            )
        })
        .collect()
}
