//! Tree-pair group elements: a domain subdivision tree, a range subdivision
//! tree with the same leaf count, a leaf permutation, and an integer twist
//! per domain leaf. Piece `i` maps its domain leaf interval onto the
//! permuted range leaf interval by `w'_perm(i) . C^twist_i . w_i^-1`.
//!
//! The permutation decides the flavor: the identity gives an
//! order-preserving homeomorphism (`F`), a cyclic rotation preserves the
//! cyclic order (`T`), and anything else is a general right-continuous
//! bijection (`V`).
//!
//! Composition works entirely in the tree calculus: the middle trees are
//! joined by moves and grafts, and refinements transfer across a piece by
//! shifting the grafted subtree's root label by the piece twist. This keeps
//! every intermediate object a labeled tree, where twisted maps are
//! representable; subdividing into plain generating domains instead does
//! not terminate for twisted pieces.

use std::fmt;

use crate::error::ComplexError;
use crate::projective::{
    detect_c_power, make_generator, ExtRational, GeneratorName, Interval, ProjMatrix, Variant,
};
use crate::trees::{leaf_words, tree_join, tree_partition, Node, SubdivisionTree};
use crate::words::{letters_semantics, GenWord};

/// Order class of a group element.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flavor {
    F,
    T,
    V,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::F => write!(f, "F"),
            Flavor::T => write!(f, "T"),
            Flavor::V => write!(f, "V"),
        }
    }
}

/// A piecewise projective bijection of `[0,1)` presented on a tree pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupElement {
    domain_tree: SubdivisionTree,
    range_tree: SubdivisionTree,
    /// `perm[i]` is the range leaf receiving domain leaf `i`.
    perm: Vec<usize>,
    twists: Vec<i64>,
}

impl GroupElement {
    pub fn new(
        domain_tree: SubdivisionTree,
        range_tree: SubdivisionTree,
        perm: Vec<usize>,
        twists: Vec<i64>,
    ) -> Result<Self, ComplexError> {
        if domain_tree.variant() != range_tree.variant() {
            return Err(ComplexError::VariantMismatch);
        }
        let leaves = domain_tree.caret_count() + 1;
        if range_tree.caret_count() + 1 != leaves {
            return Err(ComplexError::MalformedElement("leaf counts differ".into()));
        }
        if perm.len() != leaves || twists.len() != leaves {
            return Err(ComplexError::MalformedElement(
                "permutation/twist arity mismatch".into(),
            ));
        }
        let mut seen = vec![false; leaves];
        for &p in &perm {
            if p >= leaves || seen[p] {
                return Err(ComplexError::MalformedElement(
                    "perm is not a permutation".into(),
                ));
            }
            seen[p] = true;
        }
        Ok(GroupElement {
            domain_tree,
            range_tree,
            perm,
            twists,
        })
    }

    pub fn identity(variant: Variant) -> Self {
        GroupElement::new(
            SubdivisionTree::trivial(variant),
            SubdivisionTree::trivial(variant),
            vec![0],
            vec![0],
        )
        .unwrap()
    }

    pub fn variant(&self) -> Variant {
        self.domain_tree.variant()
    }

    pub fn domain_tree(&self) -> &SubdivisionTree {
        &self.domain_tree
    }

    pub fn range_tree(&self) -> &SubdivisionTree {
        &self.range_tree
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn piece_count(&self) -> usize {
        self.perm.len()
    }

    fn piece_matrices(&self) -> Vec<ProjMatrix> {
        let variant = self.variant();
        let dom_words = leaf_words(&self.domain_tree);
        let ran_words = leaf_words(&self.range_tree);
        (0..self.piece_count())
            .map(|i| {
                piece_matrix_for(
                    &ran_words[self.perm[i]],
                    self.twists[i],
                    &dom_words[i],
                    variant,
                )
            })
            .collect()
    }

    /// Exact evaluation at a point of `[0,1)`.
    pub fn evaluate(&self, x: &ExtRational) -> Result<ExtRational, ComplexError> {
        if x < &ExtRational::zero() || x >= &ExtRational::one() {
            return Err(ComplexError::PointOutOfRange(x.to_string()));
        }
        let partition = tree_partition(&self.domain_tree);
        let i = partition
            .intervals()
            .iter()
            .position(|iv| iv.contains(x))
            .expect("the partition covers [0,1)");
        Ok(self.piece_matrices()[i].apply(x))
    }

    /// `F` for the identity permutation, `T` for a cyclic rotation, `V`
    /// otherwise.
    pub fn flavor(&self) -> Flavor {
        let n = self.perm.len();
        if self.perm.iter().enumerate().all(|(i, &p)| p == i) {
            return Flavor::F;
        }
        let shift = self.perm[0];
        let rotation = self
            .perm
            .iter()
            .enumerate()
            .all(|(i, &p)| p == (i + shift) % n);
        if rotation {
            Flavor::T
        } else {
            Flavor::V
        }
    }

    /// The inverse element: trees swapped, permutation inverted, twists
    /// negated and reindexed.
    pub fn invert(&self) -> GroupElement {
        let n = self.perm.len();
        let mut perm = vec![0usize; n];
        let mut twists = vec![0i64; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            twists[self.perm[i]] = -self.twists[i];
        }
        GroupElement {
            domain_tree: self.range_tree.clone(),
            range_tree: self.domain_tree.clone(),
            perm,
            twists,
        }
    }

    /// True when every piece acts as the identity on its interval.
    pub fn is_identity(&self) -> bool {
        let dom = tree_partition(&self.domain_tree);
        let ran = tree_partition(&self.range_tree);
        let matrices = self.piece_matrices();
        (0..self.piece_count()).all(|i| {
            matrices[i].is_identity() && dom.intervals()[i] == ran.intervals()[self.perm[i]]
        })
    }

    /// Equality as bijections, decided by composing with the inverse.
    pub fn same_element(&self, other: &GroupElement) -> Result<bool, ComplexError> {
        Ok(compose(self, &other.invert())?.is_identity())
    }

    /// Replaces the range tree by an equivalent tree, absorbing the leaf
    /// words' twist differences into the piece twists: if the new leaf word
    /// is the old one times `C^delta`, the piece twist drops by `delta`.
    fn replace_range_tree(&self, new_tree: SubdivisionTree) -> GroupElement {
        let deltas = leaf_twist_deltas(&self.range_tree, &new_tree);
        let mut twists = self.twists.clone();
        for (i, t) in twists.iter_mut().enumerate() {
            *t -= deltas[self.perm[i]];
        }
        GroupElement {
            domain_tree: self.domain_tree.clone(),
            range_tree: new_tree,
            perm: self.perm.clone(),
            twists,
        }
    }

    /// Replaces the domain tree by an equivalent tree.
    fn replace_domain_tree(&self, new_tree: SubdivisionTree) -> GroupElement {
        let deltas = leaf_twist_deltas(&self.domain_tree, &new_tree);
        let mut twists = self.twists.clone();
        for (i, t) in twists.iter_mut().enumerate() {
            *t += deltas[i];
        }
        GroupElement {
            domain_tree: new_tree,
            range_tree: self.range_tree.clone(),
            perm: self.perm.clone(),
            twists,
        }
    }

    /// Refines piece `i` by grafting `subtree` under range leaf `perm[i]`;
    /// the domain side receives the same subtree with its root label
    /// shifted by `-twist_i`, and the new pieces carry twist 0.
    fn graft_range_subtree(&self, range_leaf: usize, subtree: &Node) -> GroupElement {
        let added = subtree.caret_count();
        if added == 0 {
            return self.clone();
        }
        let domain_leaf = self.perm.iter().position(|&p| p == range_leaf).unwrap();
        let twist = self.twists[domain_leaf];
        let domain_tree = SubdivisionTree::new(
            replace_leaf(
                self.domain_tree.root(),
                domain_leaf,
                &bump_root(subtree, -twist),
            ),
            self.variant(),
        );
        let range_tree = SubdivisionTree::new(
            replace_leaf(self.range_tree.root(), range_leaf, subtree),
            self.variant(),
        );
        let (perm, twists) = self.split_piece(domain_leaf, range_leaf, added + 1);
        GroupElement {
            domain_tree,
            range_tree,
            perm,
            twists,
        }
    }

    /// Mirror of [`GroupElement::graft_range_subtree`]: refine at a domain
    /// leaf; the range side receives the subtree with root label shifted by
    /// `+twist_i`.
    fn graft_domain_subtree(&self, domain_leaf: usize, subtree: &Node) -> GroupElement {
        let added = subtree.caret_count();
        if added == 0 {
            return self.clone();
        }
        let range_leaf = self.perm[domain_leaf];
        let twist = self.twists[domain_leaf];
        let domain_tree = SubdivisionTree::new(
            replace_leaf(self.domain_tree.root(), domain_leaf, subtree),
            self.variant(),
        );
        let range_tree = SubdivisionTree::new(
            replace_leaf(
                self.range_tree.root(),
                range_leaf,
                &bump_root(subtree, twist),
            ),
            self.variant(),
        );
        let (perm, twists) = self.split_piece(domain_leaf, range_leaf, added + 1);
        GroupElement {
            domain_tree,
            range_tree,
            perm,
            twists,
        }
    }

    /// Reindexes the permutation and twists after piece `domain_leaf` (whose
    /// range leaf is `range_leaf`) is split into `new_leaves` consecutive
    /// order-preserving pieces with twist 0.
    fn split_piece(
        &self,
        domain_leaf: usize,
        range_leaf: usize,
        new_leaves: usize,
    ) -> (Vec<usize>, Vec<i64>) {
        let shift = |x: usize| {
            if x > range_leaf {
                x + new_leaves - 1
            } else {
                x
            }
        };
        let mut perm = Vec::with_capacity(self.perm.len() + new_leaves - 1);
        let mut twists = Vec::with_capacity(self.perm.len() + new_leaves - 1);
        for i in 0..self.perm.len() {
            if i == domain_leaf {
                for k in 0..new_leaves {
                    perm.push(range_leaf + k);
                    twists.push(0);
                }
            } else {
                perm.push(shift(self.perm[i]));
                twists.push(self.twists[i]);
            }
        }
        (perm, twists)
    }
}

/// The root label of a subtree shifted by `delta`; leaves are unchanged.
fn bump_root(node: &Node, delta: i64) -> Node {
    match node {
        Node::Leaf => Node::Leaf,
        Node::Caret { label, left, right } => Node::caret(
            label + delta,
            left.as_ref().clone(),
            right.as_ref().clone(),
        ),
    }
}

/// Per-leaf twist exponents between two equivalent trees: leaf `j` of the
/// new tree equals leaf `j` of the old times `C^delta_j`.
fn leaf_twist_deltas(old: &SubdivisionTree, new: &SubdivisionTree) -> Vec<i64> {
    let variant = old.variant();
    let old_words = leaf_words(old);
    let new_words = leaf_words(new);
    assert_eq!(old_words.len(), new_words.len(), "trees are not equivalent");
    old_words
        .iter()
        .zip(&new_words)
        .map(|(o, n)| {
            detect_c_power(
                &word_matrix(o, variant)
                    .inverse()
                    .mul(&word_matrix(n, variant)),
                variant,
            )
            .expect("equivalent trees differ leafwise by C-powers")
        })
        .collect()
}

/// Replaces the `index`-th leaf (in left-to-right order) by `replacement`.
fn replace_leaf(root: &Node, index: usize, replacement: &Node) -> Node {
    fn go(node: &Node, counter: &mut usize, index: usize, replacement: &Node) -> Node {
        match node {
            Node::Leaf => {
                let here = *counter;
                *counter += 1;
                if here == index {
                    replacement.clone()
                } else {
                    Node::Leaf
                }
            }
            Node::Caret { label, left, right } => {
                let l = go(left, counter, index, replacement);
                let r = go(right, counter, index, replacement);
                Node::caret(*label, l, r)
            }
        }
    }
    let mut counter = 0;
    go(root, &mut counter, index, replacement)
}

fn piece_matrix_for(
    range_word: &GenWord,
    twist: i64,
    domain_word: &GenWord,
    variant: Variant,
) -> ProjMatrix {
    let c = make_generator(GeneratorName::C, variant);
    word_matrix(range_word, variant)
        .mul(&c.matrix().unwrap().pow(twist))
        .mul(&word_matrix(domain_word, variant).inverse())
}

fn word_matrix(w: &GenWord, variant: Variant) -> ProjMatrix {
    letters_semantics(w.letters().unwrap(), variant, Interval::unit())
        .matrix()
        .unwrap()
        .clone()
}

/// Rewrites `g` so that its range tree is exactly `target`, whose vertex
/// must refine the range vertex of `g`. Works leaf by leaf: the portion of
/// `target` below a range leaf is pulled back through the leaf word (a
/// tree-representable collection by hypothesis) and grafted across.
fn align_range_to(
    g: &GroupElement,
    target: &SubdivisionTree,
) -> Result<GroupElement, ComplexError> {
    align_side(g, target, true)
}

/// Mirror of [`align_range_to`] for the domain tree.
fn align_domain_to(
    g: &GroupElement,
    target: &SubdivisionTree,
) -> Result<GroupElement, ComplexError> {
    align_side(g, target, false)
}

fn align_side(
    g: &GroupElement,
    target: &SubdivisionTree,
    range_side: bool,
) -> Result<GroupElement, ComplexError> {
    let variant = g.variant();
    let target_words = leaf_words(target);
    let target_partition = tree_partition(target);
    let mut current = g.clone();
    loop {
        let tree = if range_side {
            &current.range_tree
        } else {
            &current.domain_tree
        };
        let partition = tree_partition(tree);
        if partition == target_partition {
            return Ok(if range_side {
                current.replace_range_tree(target.clone())
            } else {
                current.replace_domain_tree(target.clone())
            });
        }
        let words = leaf_words(tree);
        let mut grafted = false;
        for (leaf, iv) in partition.intervals().iter().enumerate() {
            let inside: Vec<GenWord> = target_words
                .iter()
                .zip(target_partition.intervals())
                .filter(|(_, t_iv)| iv.contains_interval(t_iv))
                .map(|(w, _)| words[leaf].inverse().concat(w))
                .collect();
            if inside.len() < 2 {
                continue;
            }
            let subtree = crate::complex::tree_representable(&inside, variant)?.ok_or_else(|| {
                ComplexError::UnsupportedVertex("target does not refine the vertex".into())
            })?;
            if subtree.is_trivial() {
                continue;
            }
            current = if range_side {
                current.graft_range_subtree(leaf, subtree.root())
            } else {
                current.graft_domain_subtree(leaf, subtree.root())
            };
            grafted = true;
            break;
        }
        if !grafted {
            return Err(ComplexError::UnsupportedVertex(
                "alignment did not converge".into(),
            ));
        }
    }
}

/// Composite `g1 . g2` as a tree-pair element.
///
/// The range tree of `g2` and the domain tree of `g1` are joined in the
/// tree calculus; both elements are refined onto the joined tree (grafts
/// transfer across pieces with a twist shift), and the aligned pieces glue
/// with twists adding along the middle.
pub fn compose(g1: &GroupElement, g2: &GroupElement) -> Result<GroupElement, ComplexError> {
    if g1.variant() != g2.variant() {
        return Err(ComplexError::VariantMismatch);
    }
    let middle = tree_join(&g2.range_tree, &g1.domain_tree);
    let g2 = align_range_to(g2, &middle)?;
    let g1 = align_domain_to(g1, &middle)?;
    let n = g2.piece_count();
    debug_assert_eq!(n, g1.piece_count());
    let mut perm = Vec::with_capacity(n);
    let mut twists = Vec::with_capacity(n);
    for i in 0..n {
        let j = g2.perm[i];
        perm.push(g1.perm[j]);
        twists.push(g2.twists[i] + g1.twists[j]);
    }
    GroupElement::new(g2.domain_tree, g1.range_tree, perm, twists)
}
