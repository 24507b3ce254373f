//! Shared sampling and enumeration helpers for the integration suites.

use pproj::rng::SplitMix64;
use pproj::trees::{Node, SubdivisionTree};
use pproj::words::{GenWord, Letter};
use pproj::Variant;

/// A uniformly random binary-tree shape with exactly `carets` carets,
/// labels drawn from `label_range`.
pub fn random_tree(
    rng: &mut SplitMix64,
    carets: usize,
    label_range: (i64, i64),
    variant: Variant,
) -> SubdivisionTree {
    SubdivisionTree::new(random_node(rng, carets, label_range), variant)
}

fn random_node(rng: &mut SplitMix64, carets: usize, label_range: (i64, i64)) -> Node {
    if carets == 0 {
        return Node::Leaf;
    }
    let label = rng.range_inclusive(label_range.0, label_range.1);
    let left_carets = rng.below(carets as u64) as usize;
    let right_carets = carets - 1 - left_carets;
    Node::caret(
        label,
        random_node(rng, left_carets, label_range),
        random_node(rng, right_carets, label_range),
    )
}

/// Every tree shape with exactly `carets` carets (Catalan enumeration).
pub fn all_shapes(carets: usize) -> Vec<Node> {
    if carets == 0 {
        return vec![Node::Leaf];
    }
    let mut out = Vec::new();
    for left_carets in 0..carets {
        let right_carets = carets - 1 - left_carets;
        for l in all_shapes(left_carets) {
            for r in all_shapes(right_carets) {
                out.push(Node::caret(0, l.clone(), r.clone()));
            }
        }
    }
    out
}

/// All labelings of `shape` with labels in `[lo, hi]`.
pub fn all_labelings(shape: &Node, lo: i64, hi: i64) -> Vec<Node> {
    match shape {
        Node::Leaf => vec![Node::Leaf],
        Node::Caret { left, right, .. } => {
            let lefts = all_labelings(left, lo, hi);
            let rights = all_labelings(right, lo, hi);
            let mut out = Vec::new();
            for label in lo..=hi {
                for l in &lefts {
                    for r in &rights {
                        out.push(Node::caret(label, l.clone(), r.clone()));
                    }
                }
            }
            out
        }
    }
}

/// A random word over the positive four-letter alphabet.
pub fn random_positive_word(rng: &mut SplitMix64, max_len: usize, variant: Variant) -> GenWord {
    let pool = [
        Letter::UpperA,
        Letter::UpperB,
        Letter::UpperC,
        Letter::LowerC,
    ];
    let len = 1 + rng.below(max_len as u64) as usize;
    GenWord::from_letters(
        (0..len).map(|_| pool[rng.below(4) as usize]),
        variant,
    )
}

/// A random word over the full six-letter alphabet.
pub fn random_full_word(rng: &mut SplitMix64, max_len: usize, variant: Variant) -> GenWord {
    let pool = [
        Letter::UpperA,
        Letter::UpperB,
        Letter::UpperC,
        Letter::LowerC,
        Letter::LowerA,
        Letter::LowerB,
    ];
    let len = 1 + rng.below(max_len as u64) as usize;
    GenWord::from_letters(
        (0..len).map(|_| pool[rng.below(6) as usize]),
        variant,
    )
}

/// A random negative-to-positive word: lowercase letters first, uppercase
/// after, `C`/`c` sprinkled anywhere.
pub fn random_ntp_word(rng: &mut SplitMix64, max_len: usize, variant: Variant) -> GenWord {
    let neg_pool = [Letter::LowerA, Letter::LowerB, Letter::UpperC, Letter::LowerC];
    let pos_pool = [Letter::UpperA, Letter::UpperB, Letter::UpperC, Letter::LowerC];
    let neg_len = rng.below(max_len as u64 / 2 + 1) as usize;
    let pos_len = 1 + rng.below(max_len as u64 / 2 + 1) as usize;
    let mut letters: Vec<Letter> = Vec::with_capacity(neg_len + pos_len);
    for _ in 0..neg_len {
        letters.push(neg_pool[rng.below(4) as usize]);
    }
    for _ in 0..pos_len {
        letters.push(pos_pool[rng.below(4) as usize]);
    }
    GenWord::from_letters(letters, variant)
}
