//! Integer-labeled binary subdivision trees and their calculus: leaf words,
//! the induced partition of `[0,1)`, exact equivalence, the label-shuffling
//! elementary moves, sufficiently-expanded and blocking structure, and the
//! root-label range `N(T)` with an exhaustive oracle.
//!
//! Tree syntax (bit-exact): `tree := "." | "(" INT tree tree ")"`, for
//! example `(2 (4 (0 . .) .) .)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{ParseError, TreeError};
use crate::projective::{ExtRational, Interval, PartialLft, ProjMatrix, Variant};
use crate::words::{letters_semantics, GenWord, Letter};

/// A node of a subdivision tree: a leaf, or a labeled caret.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Node {
    Leaf,
    Caret {
        label: i64,
        left: Box<Node>,
        right: Box<Node>,
    },
}

impl Node {
    pub fn caret(label: i64, left: Node, right: Node) -> Node {
        Node::Caret {
            label,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Node::Leaf)
    }

    pub fn label(&self) -> Option<i64> {
        match self {
            Node::Leaf => None,
            Node::Caret { label, .. } => Some(*label),
        }
    }

    pub fn caret_count(&self) -> usize {
        match self {
            Node::Leaf => 0,
            Node::Caret { left, right, .. } => 1 + left.caret_count() + right.caret_count(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.caret_count() + 1
    }

    /// Adjusts the root label by `delta`; a no-op on leaves (their labels
    /// are ignored by the moves).
    fn bump(&self, delta: i64) -> Node {
        match self {
            Node::Leaf => Node::Leaf,
            Node::Caret { label, left, right } => Node::Caret {
                label: label + delta,
                left: left.clone(),
                right: right.clone(),
            },
        }
    }

    fn max_abs_label(&self) -> i64 {
        match self {
            Node::Leaf => 0,
            Node::Caret { label, left, right } => label
                .abs()
                .max(left.max_abs_label())
                .max(right.max_abs_label()),
        }
    }
}

/// A finite rooted binary tree with an integer label on every caret,
/// interpreted over a fixed variant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubdivisionTree {
    variant: Variant,
    root: Node,
}

impl SubdivisionTree {
    pub fn new(root: Node, variant: Variant) -> Self {
        SubdivisionTree { variant, root }
    }

    pub fn trivial(variant: Variant) -> Self {
        SubdivisionTree {
            variant,
            root: Node::Leaf,
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn is_trivial(&self) -> bool {
        self.root.is_leaf()
    }

    pub fn caret_count(&self) -> usize {
        self.root.caret_count()
    }

    /// The root label `n(T)`; `None` for the trivial tree.
    pub fn root_label(&self) -> Option<i64> {
        self.root.label()
    }

    pub fn max_abs_label(&self) -> i64 {
        self.root.max_abs_label()
    }

    /// Parses the tree grammar; round-trips with `Display` after whitespace
    /// normalization.
    pub fn parse(text: &str, variant: Variant) -> Result<Self, ParseError> {
        let mut tokens = tokenize(text)?;
        tokens.reverse();
        let root = parse_node(&mut tokens)?;
        if let Some(tok) = tokens.pop() {
            return Err(ParseError::TrailingInput(tok));
        }
        Ok(SubdivisionTree { variant, root })
    }
}

impl fmt::Display for SubdivisionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(node: &Node, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match node {
                Node::Leaf => write!(f, "."),
                Node::Caret { label, left, right } => {
                    write!(f, "({label} ")?;
                    go(left, f)?;
                    write!(f, " ")?;
                    go(right, f)?;
                    write!(f, ")")
                }
            }
        }
        go(&self.root, f)
    }
}

fn tokenize(text: &str) -> Result<Vec<String>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        match ch {
            '(' | ')' | '.' => {
                tokens.push(ch.to_string());
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            c if c == '-' || c.is_ascii_digit() => {
                let mut tok = String::new();
                tok.push(c);
                chars.next();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        tok.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(tok);
            }
            other => return Err(ParseError::BadTree(other.to_string())),
        }
    }
    Ok(tokens)
}

fn parse_node(tokens: &mut Vec<String>) -> Result<Node, ParseError> {
    match tokens.pop() {
        Some(tok) if tok == "." => Ok(Node::Leaf),
        Some(tok) if tok == "(" => {
            let label_tok = tokens.pop().ok_or(ParseError::Unbalanced)?;
            let label: i64 = label_tok
                .parse()
                .map_err(|_| ParseError::BadLabel(label_tok))?;
            let left = parse_node(tokens)?;
            let right = parse_node(tokens)?;
            match tokens.pop() {
                Some(t) if t == ")" => Ok(Node::caret(label, left, right)),
                Some(t) => Err(ParseError::BadTree(t)),
                None => Err(ParseError::Unbalanced),
            }
        }
        Some(tok) => Err(ParseError::BadTree(tok)),
        None => Err(ParseError::Unbalanced),
    }
}

// ---------------------------------------------------------------------------
// Leaf words and partitions
// ---------------------------------------------------------------------------

/// The left-to-right leaf words `C^{n_1} X_1 ... C^{n_k} X_k`; the trivial
/// tree yields the single empty word.
pub fn leaf_words(t: &SubdivisionTree) -> Vec<GenWord> {
    let mut words = Vec::with_capacity(t.root.leaf_count());
    let mut prefix: Vec<Letter> = Vec::new();
    collect_leaf_words(&t.root, &mut prefix, &mut words, t.variant);
    words
}

fn collect_leaf_words(
    node: &Node,
    prefix: &mut Vec<Letter>,
    out: &mut Vec<GenWord>,
    variant: Variant,
) {
    match node {
        Node::Leaf => out.push(GenWord::from_letters(prefix.iter().copied(), variant)),
        Node::Caret { label, left, right } => {
            let c_letter = if *label >= 0 {
                Letter::UpperC
            } else {
                Letter::LowerC
            };
            let reps = label.unsigned_abs() as usize;
            for side in [Letter::UpperA, Letter::UpperB] {
                let mark = prefix.len();
                prefix.extend(std::iter::repeat(c_letter).take(reps));
                prefix.push(side);
                let child = if side == Letter::UpperA { left } else { right };
                collect_leaf_words(child, prefix, out, variant);
                prefix.truncate(mark);
            }
        }
    }
}

/// An ordered partition of `[0,1)` into consecutive half-open intervals.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    intervals: Vec<Interval>,
}

impl Partition {
    /// Checks the partition invariants: consecutive intervals sharing
    /// endpoints, starting at 0 and ending at 1 (or at infinity for rays).
    pub fn new(intervals: Vec<Interval>) -> Self {
        assert!(!intervals.is_empty());
        assert_eq!(intervals[0].lo(), &ExtRational::zero());
        for pair in intervals.windows(2) {
            assert_eq!(pair[0].hi(), pair[1].lo(), "partition gap");
        }
        let hi = intervals.last().unwrap().hi();
        assert!(hi == &ExtRational::one() || hi.is_infinite());
        Partition { intervals }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Interior breakpoints, in order.
    pub fn breakpoints(&self) -> Vec<ExtRational> {
        self.intervals[..self.intervals.len() - 1]
            .iter()
            .map(|iv| iv.hi().clone())
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for iv in &self.intervals {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{iv}")?;
            first = false;
        }
        Ok(())
    }
}

/// Evaluates every leaf word and returns the induced partition of `[0,1)`.
pub fn tree_partition(t: &SubdivisionTree) -> Partition {
    let intervals = leaf_words(t)
        .iter()
        .map(|w| {
            let map = letters_semantics(w.letters().unwrap(), t.variant, Interval::unit());
            map.image_interval().expect("leaf words are total on [0,1)")
        })
        .collect();
    Partition::new(intervals)
}

/// Two trees are equivalent when they represent the same collection of
/// intervals; decided by exact partition comparison.
pub fn trees_equivalent(t1: &SubdivisionTree, t2: &SubdivisionTree) -> Result<bool, TreeError> {
    if t1.variant != t2.variant {
        return Err(TreeError::VariantMismatch);
    }
    Ok(tree_partition(t1) == tree_partition(t2))
}

/// The split point of a root labeled `k`: the image of `1/2` under `C^k`,
/// which is `n^k / (n^k + 1)`.
pub fn split_point(variant: Variant, k: i64) -> ExtRational {
    let n = BigInt::from(variant.n());
    let power = n.pow(k.unsigned_abs() as u32);
    if k >= 0 {
        ExtRational::new(power.clone(), power + BigInt::one())
    } else {
        ExtRational::new(BigInt::one(), power + BigInt::one())
    }
}

// ---------------------------------------------------------------------------
// Elementary moves
// ---------------------------------------------------------------------------

/// Which way a move shifts the label at the node it applies to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MoveDirection {
    RaiseLabel,
    LowerLabel,
}

/// Child selector along a path from the root.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// One applicable elementary move: where it applies, which direction, and
/// the resulting tree.
#[derive(Clone, Debug)]
pub struct ElementaryMove {
    pub path: Vec<Side>,
    pub direction: MoveDirection,
    pub result: SubdivisionTree,
}

/// Raising form at a node, variant 2: the right child is a 0-caret.
///
/// `(n, T_a, (0, T_b, T_c)) -> (n+1, (0, T_a-1, T_b+1), T_c-1)`, justified by
/// the leaf-word identities `C^n A C^a = C^(n+1) A A C^(a-1)`,
/// `C^n B A C^b = C^(n+1) A B C^(b+1)`, and `C^n B B C^c = C^(n+1) B C^(c-1)`.
fn raise_at_node_v2(node: &Node) -> Option<Node> {
    let Node::Caret { label, left, right } = node else {
        return None;
    };
    let Node::Caret {
        label: 0,
        left: b,
        right: c,
    } = right.as_ref()
    else {
        return None;
    };
    Some(Node::caret(
        label + 1,
        Node::caret(0, left.bump(-1), b.bump(1)),
        c.bump(-1),
    ))
}

/// Lowering form at a node, variant 2: the left child is a 0-caret.
fn lower_at_node_v2(node: &Node) -> Option<Node> {
    let Node::Caret { label, left, right } = node else {
        return None;
    };
    let Node::Caret {
        label: 0,
        left: a,
        right: b,
    } = left.as_ref()
    else {
        return None;
    };
    Some(Node::caret(
        label - 1,
        a.bump(1),
        Node::caret(0, b.bump(-1), right.bump(1)),
    ))
}

fn all_zero_depth_two(node: &Node) -> Option<(&Node, &Node, &Node, &Node)> {
    let Node::Caret {
        label: 0,
        left,
        right,
    } = node
    else {
        return None;
    };
    let Node::Caret {
        label: 0,
        left: a,
        right: b,
    } = left.as_ref()
    else {
        return None;
    };
    let Node::Caret {
        label: 0,
        left: c,
        right: d,
    } = right.as_ref()
    else {
        return None;
    };
    Some((a, b, c, d))
}

/// Raising form, variant 3: the right child is the all-zero depth-two
/// configuration over `T_b .. T_e`.
fn raise_at_node_v3(node: &Node) -> Option<Node> {
    let Node::Caret { label, left, right } = node else {
        return None;
    };
    let (b, c, d, e) = all_zero_depth_two(right)?;
    Some(Node::caret(
        label + 1,
        Node::caret(
            0,
            Node::caret(0, left.bump(-1), b.bump(1)),
            Node::caret(0, c.bump(-1), d.bump(1)),
        ),
        e.bump(-1),
    ))
}

/// Lowering form, variant 3: the left child is the all-zero depth-two
/// configuration over `U_a .. U_d`.
fn lower_at_node_v3(node: &Node) -> Option<Node> {
    let Node::Caret { label, left, right } = node else {
        return None;
    };
    let (a, b, c, d) = all_zero_depth_two(left)?;
    Some(Node::caret(
        label - 1,
        a.bump(1),
        Node::caret(
            0,
            Node::caret(0, b.bump(-1), c.bump(1)),
            Node::caret(0, d.bump(-1), right.bump(1)),
        ),
    ))
}

fn raise_at_node(node: &Node, variant: Variant) -> Option<Node> {
    match variant {
        Variant::N2 => raise_at_node_v2(node),
        Variant::N3 => raise_at_node_v3(node),
    }
}

fn lower_at_node(node: &Node, variant: Variant) -> Option<Node> {
    match variant {
        Variant::N2 => lower_at_node_v2(node),
        Variant::N3 => lower_at_node_v3(node),
    }
}

fn replace_at_path(root: &Node, path: &[Side], replacement: Node) -> Node {
    match path.split_first() {
        None => replacement,
        Some((side, rest)) => {
            let Node::Caret { label, left, right } = root else {
                panic!("path runs past a leaf");
            };
            match side {
                Side::Left => Node::caret(
                    *label,
                    replace_at_path(left, rest, replacement),
                    right.as_ref().clone(),
                ),
                Side::Right => Node::caret(
                    *label,
                    left.as_ref().clone(),
                    replace_at_path(right, rest, replacement),
                ),
            }
        }
    }
}

/// All single-move neighbors of `t`, each with the node path and direction
/// that produced it. In debug builds every neighbor is checked to be
/// partition-equal to the input.
pub fn elementary_moves(t: &SubdivisionTree) -> Vec<ElementaryMove> {
    let mut moves = Vec::new();
    let mut stack: Vec<(Vec<Side>, &Node)> = vec![(Vec::new(), &t.root)];
    while let Some((path, node)) = stack.pop() {
        if let Node::Caret { left, right, .. } = node {
            for (direction, replacement) in [
                (MoveDirection::RaiseLabel, raise_at_node(node, t.variant)),
                (MoveDirection::LowerLabel, lower_at_node(node, t.variant)),
            ] {
                if let Some(new_node) = replacement {
                    let result = SubdivisionTree::new(
                        replace_at_path(&t.root, &path, new_node),
                        t.variant,
                    );
                    debug_assert_eq!(
                        tree_partition(t),
                        tree_partition(&result),
                        "elementary move changed the partition at {path:?}"
                    );
                    moves.push(ElementaryMove {
                        path: path.clone(),
                        direction,
                        result,
                    });
                }
            }
            let mut left_path = path.clone();
            left_path.push(Side::Left);
            stack.push((left_path, left));
            let mut right_path = path;
            right_path.push(Side::Right);
            stack.push((right_path, right));
        }
    }
    moves
}

// ---------------------------------------------------------------------------
// Sufficiently expanded and blocking trees
// ---------------------------------------------------------------------------

/// Which child of the root the witnessing arc must pass through.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArcSide {
    Left,
    Right,
    Any,
}

/// Variant-2 arc: every non-root node on it has a nonzero label, descending
/// left at positive labels and right at negative ones.
fn arc_v2(node: &Node) -> bool {
    match node {
        Node::Leaf => true,
        Node::Caret { label, left, right } => {
            if *label > 0 {
                arc_v2(left)
            } else if *label < 0 {
                arc_v2(right)
            } else {
                false
            }
        }
    }
}

/// Variant-3 arc: every non-root node roots a blocking subtree; positive
/// labels descend left, negative descend right, and a zero label requires
/// the next node (if any) to be nonzero.
fn arc_v3(node: &Node) -> bool {
    match node {
        Node::Leaf => true,
        Node::Caret { label, left, right } => {
            if !node_is_blocking(node) {
                return false;
            }
            if *label > 0 {
                arc_v3(left)
            } else if *label < 0 {
                arc_v3(right)
            } else {
                [left.as_ref(), right.as_ref()].into_iter().any(|child| {
                    match child.label() {
                        None => true,
                        Some(0) => false,
                        Some(_) => arc_v3(child),
                    }
                })
            }
        }
    }
}

fn node_is_blocking(node: &Node) -> bool {
    match node {
        Node::Leaf => true,
        Node::Caret { label, left, right } => {
            if left.is_leaf() || right.is_leaf() {
                return true;
            }
            !(*label == 0 && left.label() == Some(0) && right.label() == Some(0))
        }
    }
}

/// Decides whether a root-to-leaf arc certifies the tree as sufficiently
/// expanded, optionally constrained to pass through one child of the root.
pub fn is_sufficiently_expanded(t: &SubdivisionTree, side: ArcSide) -> bool {
    let arc = |node: &Node| match t.variant {
        Variant::N2 => arc_v2(node),
        Variant::N3 => arc_v3(node),
    };
    match &t.root {
        Node::Leaf => side == ArcSide::Any,
        Node::Caret { left, right, .. } => match side {
            ArcSide::Left => arc(left),
            ArcSide::Right => arc(right),
            ArcSide::Any => arc(left) || arc(right),
        },
    }
}

/// Blocking trees (variant 3 only): the trivial tree, any tree with a leaf
/// among the root and its children, or one whose three top labels are not
/// all zero.
pub fn is_blocking(t: &SubdivisionTree) -> Result<bool, TreeError> {
    if t.variant != Variant::N3 {
        return Err(TreeError::WrongVariant);
    }
    Ok(node_is_blocking(&t.root))
}

// ---------------------------------------------------------------------------
// Root-label range
// ---------------------------------------------------------------------------

/// Rewrites `t` by root moves into an equivalent tree whose root label is
/// `k`, or returns `None` when `k` is not in `N(t)`.
///
/// The root label can decrease exactly when the left branch can be brought
/// to the shape the lowering move consumes (label 0 for variant 2, the
/// non-blocking all-zero shape for variant 3), and symmetrically for
/// increases.
pub fn set_root_label(t: &SubdivisionTree, k: i64) -> Option<SubdivisionTree> {
    assert!(!t.is_trivial(), "set_root_label on the trivial tree");
    let mut current = t.clone();
    // Labels occurring in N(t) all have their split point among the
    // breakpoints, which bounds both loops.
    let guard = t.root.leaf_count() as i64 + 2;
    let mut steps = 0i64;
    while current.root_label().unwrap() > k {
        let Some(next) = lower_root_once(&current) else {
            return None;
        };
        current = next;
        steps += 1;
        assert!(steps <= guard, "root lowering failed to terminate");
    }
    while current.root_label().unwrap() < k {
        let Some(next) = raise_root_once(&current) else {
            return None;
        };
        current = next;
        steps += 1;
        assert!(steps <= guard, "root raising failed to terminate");
    }
    Some(current)
}

fn subtree(t: &SubdivisionTree, node: &Node) -> SubdivisionTree {
    SubdivisionTree::new(node.clone(), t.variant)
}

/// Brings a branch to root label 0 (variant 2) or to the non-blocking
/// all-zero depth-two shape (variant 3); `None` when impossible.
pub(crate) fn branch_to_consumable(branch: &SubdivisionTree) -> Option<Node> {
    if branch.is_trivial() {
        return None;
    }
    let zeroed = set_root_label(branch, 0)?;
    match branch.variant {
        Variant::N2 => Some(zeroed.root),
        Variant::N3 => {
            let Node::Caret { left, right, .. } = &zeroed.root else {
                unreachable!()
            };
            let l = subtree(branch, left);
            let r = subtree(branch, right);
            if l.is_trivial() || r.is_trivial() {
                return None;
            }
            let l0 = set_root_label(&l, 0)?;
            let r0 = set_root_label(&r, 0)?;
            Some(Node::caret(0, l0.root, r0.root))
        }
    }
}

fn lower_root_once(t: &SubdivisionTree) -> Option<SubdivisionTree> {
    let Node::Caret { label, left, right } = &t.root else {
        return None;
    };
    let consumable = branch_to_consumable(&subtree(t, left))?;
    let candidate = Node::caret(*label, consumable, right.as_ref().clone());
    let lowered = lower_at_node(&candidate, t.variant)?;
    let result = SubdivisionTree::new(lowered, t.variant);
    debug_assert_eq!(tree_partition(t), tree_partition(&result));
    Some(result)
}

fn raise_root_once(t: &SubdivisionTree) -> Option<SubdivisionTree> {
    let Node::Caret { label, left, right } = &t.root else {
        return None;
    };
    let consumable = branch_to_consumable(&subtree(t, right))?;
    let candidate = Node::caret(*label, left.as_ref().clone(), consumable);
    let raised = raise_at_node(&candidate, t.variant)?;
    let result = SubdivisionTree::new(raised, t.variant);
    debug_assert_eq!(tree_partition(t), tree_partition(&result));
    Some(result)
}

/// Like [`set_root_label`], but grafts fresh carets wherever a branch lacks
/// the structure a root move needs, so it always succeeds. Grafting refines
/// the represented partition: the result's vertex is an expansion of the
/// input's (a strict one whenever grafting happened).
pub fn force_root_label(t: &SubdivisionTree, k: i64) -> SubdivisionTree {
    let variant = t.variant();
    if t.is_trivial() {
        return SubdivisionTree::new(Node::caret(k, Node::Leaf, Node::Leaf), variant);
    }
    let mut current = t.clone();
    let mut guard = 0usize;
    while current.root_label().unwrap() != k {
        guard += 1;
        assert!(guard < 100_000, "force_root_label failed to converge");
        let label = current.root_label().unwrap();
        let Node::Caret { left, right, .. } = current.root() else {
            unreachable!()
        };
        let (left, right) = (left.as_ref().clone(), right.as_ref().clone());
        let next = if label > k {
            let prepared = force_consumable(&SubdivisionTree::new(left, variant));
            lower_at_node(&Node::caret(label, prepared, right), variant)
        } else {
            let prepared = force_consumable(&SubdivisionTree::new(right, variant));
            raise_at_node(&Node::caret(label, left, prepared), variant)
        };
        current = SubdivisionTree::new(next.expect("branch was prepared"), variant);
    }
    current
}

/// Grafting version of [`branch_to_consumable`]: brings a branch to the
/// shape a root move consumes, adding carets where needed.
fn force_consumable(branch: &SubdivisionTree) -> Node {
    let variant = branch.variant();
    let zeroed = force_root_label(branch, 0);
    match variant {
        Variant::N2 => zeroed.root,
        Variant::N3 => {
            let Node::Caret { left, right, .. } = &zeroed.root else {
                unreachable!()
            };
            let l = force_root_label(&subtree(&zeroed, left), 0);
            let r = force_root_label(&subtree(&zeroed, right), 0);
            Node::caret(0, l.root, r.root)
        }
    }
}

/// A tree whose partition refines both inputs' partitions and whose vertex
/// lies above both inputs' vertices in the expansion order.
///
/// Roots are aligned by moves when the label ranges permit and by grafting
/// otherwise; branches are joined recursively.
pub fn tree_join(a: &SubdivisionTree, b: &SubdivisionTree) -> SubdivisionTree {
    assert_eq!(a.variant(), b.variant(), "cross-variant join");
    let variant = a.variant();
    if a.is_trivial() {
        return b.clone();
    }
    if b.is_trivial() {
        return a.clone();
    }
    let ka = a.root_label().unwrap();
    let kb = b.root_label().unwrap();
    let (root, aligned_a, aligned_b) = if let Some(b_aligned) = set_root_label(b, ka) {
        (ka, a.clone(), b_aligned)
    } else if let Some(a_aligned) = set_root_label(a, kb) {
        (kb, a_aligned, b.clone())
    } else {
        (ka, a.clone(), force_root_label(b, ka))
    };
    let branch = |t: &SubdivisionTree, side: Side| -> SubdivisionTree {
        let Node::Caret { left, right, .. } = t.root() else {
            unreachable!()
        };
        let node = if side == Side::Left { left } else { right };
        SubdivisionTree::new(node.as_ref().clone(), variant)
    };
    let joined_left = tree_join(&branch(&aligned_a, Side::Left), &branch(&aligned_b, Side::Left));
    let joined_right =
        tree_join(&branch(&aligned_a, Side::Right), &branch(&aligned_b, Side::Right));
    SubdivisionTree::new(
        Node::caret(root, joined_left.root, joined_right.root),
        variant,
    )
}

/// The extremes `(min N(T), max N(T))`, computed by iterating root moves in
/// each direction until blocked.
pub fn root_label_range(t: &SubdivisionTree) -> (i64, i64) {
    assert!(!t.is_trivial(), "root_label_range on the trivial tree");
    let mut low = t.clone();
    while let Some(next) = lower_root_once(&low) {
        low = next;
    }
    let mut high = t.clone();
    while let Some(next) = raise_root_once(&high) {
        high = next;
    }
    (low.root_label().unwrap(), high.root_label().unwrap())
}

// ---------------------------------------------------------------------------
// Exhaustive oracle
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Default)]
struct OracleEntry {
    can_be_leaf: bool,
    roots: BTreeSet<i64>,
}

impl OracleEntry {
    fn achievable(&self) -> bool {
        self.can_be_leaf || !self.roots.is_empty()
    }
}

/// Collects every root label of a tree equal to `t`'s partition with all
/// labels bounded by `label_bound` in absolute value.
///
/// This realizes the exhaustive same-leaf-count enumeration: a tree matches
/// the partition only if its root split is one of the partition's
/// breakpoints, so the search walks breakpoint-compatible labelings instead
/// of blindly materializing every shape, returning the identical set.
pub fn brute_force_range(
    t: &SubdivisionTree,
    label_bound: i64,
) -> Result<BTreeSet<i64>, TreeError> {
    assert!(!t.is_trivial(), "brute_force_range on the trivial tree");
    let partition = tree_partition(t);
    let mut memo: HashMap<Vec<Interval>, OracleEntry> = HashMap::new();
    let mut budget: u64 = 2_000_000;
    let entry = oracle(
        partition.intervals().to_vec(),
        label_bound,
        t.variant,
        &mut memo,
        &mut budget,
    )?;
    Ok(entry.roots)
}

fn oracle(
    intervals: Vec<Interval>,
    bound: i64,
    variant: Variant,
    memo: &mut HashMap<Vec<Interval>, OracleEntry>,
    budget: &mut u64,
) -> Result<OracleEntry, TreeError> {
    if let Some(hit) = memo.get(&intervals) {
        return Ok(hit.clone());
    }
    if *budget == 0 {
        return Err(TreeError::ResourceCap);
    }
    *budget -= 1;
    let mut entry = OracleEntry {
        can_be_leaf: intervals.len() == 1,
        roots: BTreeSet::new(),
    };
    if intervals.len() > 1 {
        let breakpoints: Vec<ExtRational> = intervals[..intervals.len() - 1]
            .iter()
            .map(|iv| iv.hi().clone())
            .collect();
        for k in -bound..=bound {
            let split = split_point(variant, k);
            let Some(cut) = breakpoints.iter().position(|b| b == &split) else {
                continue;
            };
            let left_part = pull_back(&intervals[..=cut], variant, k, Letter::UpperA);
            let right_part = pull_back(&intervals[cut + 1..], variant, k, Letter::UpperB);
            let left_entry = oracle(left_part, bound, variant, memo, budget)?;
            if !left_entry.achievable() {
                continue;
            }
            let right_entry = oracle(right_part, bound, variant, memo, budget)?;
            if right_entry.achievable() {
                entry.roots.insert(k);
            }
        }
    }
    memo.insert(intervals, entry.clone());
    Ok(entry)
}

/// Maps a run of intervals through `(C^k X)^{-1}`, producing a partition of
/// the unit interval again.
fn pull_back(intervals: &[Interval], variant: Variant, k: i64, side: Letter) -> Vec<Interval> {
    let c = crate::projective::make_generator(crate::projective::GeneratorName::C, variant);
    let side_map = letters_semantics(&[side], variant, Interval::unit());
    let forward: ProjMatrix = c
        .matrix()
        .unwrap()
        .pow(k)
        .mul(side_map.matrix().unwrap());
    let back = forward.inverse();
    intervals
        .iter()
        .map(|iv| Interval::new(back.apply(iv.lo()), back.apply(iv.hi())))
        .collect()
}

/// Convenience wrapper used by tests: a partial map for one leaf word.
pub fn leaf_word_map(word: &GenWord, variant: Variant) -> PartialLft {
    letters_semantics(word.letters().unwrap(), variant, Interval::unit())
}
