//! Pair classes `[f, D]`, vertices, the expansion partial order, and the
//! machinery around them: structure-set membership, push-through of a map
//! across generating domains, tree representability, common upper bounds,
//! the truncated expansion schemes, and ascending links.
//!
//! Generating domains are the intervals `T^a w . [0,1)` for `w` a positive
//! word in `A, B`, plus the rays `[m, infinity)`. Structure sets between
//! word domains are the twist families `w' C^k w^-1`; between rays they are
//! single translations. A vertex is a finite set of pair classes whose
//! images tile the ambient interval.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::ComplexError;
use crate::projective::{
    detect_c_power, make_generator, ExtRational, GeneratorName, Interval, PartialLft, ProjMatrix,
    Variant,
};
use crate::trees::{self, Node, SubdivisionTree};
use crate::words::{letters_semantics, GenWord, Letter};

// ---------------------------------------------------------------------------
// Domain words
// ---------------------------------------------------------------------------

/// A generating domain: `T^t_power . word . [0,1)`, or the ray
/// `[m, infinity)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum DomainWord {
    Word { t_power: u32, word: Vec<Letter> },
    Ray { m: u32 },
}

impl DomainWord {
    /// The unit interval `[0, 1)` as a domain word.
    pub fn unit() -> Self {
        DomainWord::Word {
            t_power: 0,
            word: Vec::new(),
        }
    }

    pub fn from_positive_word(word: &GenWord) -> Self {
        let letters = word.letters().expect("positive word");
        assert!(letters.iter().all(|l| l.is_positive()));
        DomainWord::Word {
            t_power: 0,
            word: letters.to_vec(),
        }
    }

    /// The matrix translating the unit interval onto this domain (word
    /// domains only).
    fn matrix(&self, variant: Variant) -> Option<ProjMatrix> {
        match self {
            DomainWord::Word { t_power, word } => {
                let t = make_generator(GeneratorName::T, variant);
                let mut m = t.matrix().unwrap().pow(*t_power as i64);
                for l in word {
                    let g = make_generator(l.generator().unwrap(), variant);
                    m = m.mul(g.matrix().unwrap());
                }
                Some(m)
            }
            DomainWord::Ray { .. } => None,
        }
    }

    pub fn interval(&self, variant: Variant) -> Interval {
        match self {
            DomainWord::Word { .. } => {
                let m = self.matrix(variant).unwrap();
                Interval::new(m.apply(&ExtRational::zero()), m.apply(&ExtRational::one()))
            }
            DomainWord::Ray { m } => Interval::ray(*m),
        }
    }
}

impl fmt::Display for DomainWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainWord::Word { t_power, word } => {
                for _ in 0..*t_power {
                    write!(f, "T")?;
                }
                if word.is_empty() && *t_power == 0 {
                    return write!(f, "1");
                }
                for l in word {
                    write!(f, "{}", l.to_char())?;
                }
                Ok(())
            }
            DomainWord::Ray { m } => write!(f, "[{m},inf)"),
        }
    }
}

// ---------------------------------------------------------------------------
// Pair classes
// ---------------------------------------------------------------------------

/// A pair `[f, D]`: a word `f` together with a generating domain contained
/// in the domain of `f`. Equality of pairs is the structure-set quotient,
/// decided by [`pairs_equal`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PairClass {
    word: GenWord,
    domain: DomainWord,
}

impl PairClass {
    pub fn new(word: GenWord, domain: DomainWord) -> Result<Self, ComplexError> {
        let pair = PairClass { word, domain };
        pair.restricted_map()?;
        Ok(pair)
    }

    /// `[w, I]` for a word `w` total on the unit interval.
    pub fn over_unit(word: GenWord) -> Result<Self, ComplexError> {
        PairClass::new(word, DomainWord::unit())
    }

    pub fn word(&self) -> &GenWord {
        &self.word
    }

    pub fn domain(&self) -> &DomainWord {
        &self.domain
    }

    /// The map `f` restricted to `D`; errors unless `D` is contained in the
    /// domain of `f`.
    pub fn restricted_map(&self) -> Result<PartialLft, ComplexError> {
        let variant = self.word.variant();
        let d = self.domain.interval(variant);
        let f = match self.word.letters() {
            None => PartialLft::Zero,
            Some(ls) => letters_semantics(ls, variant, d.clone()),
        };
        let restricted = f.compose(&PartialLft::identity_on(d.clone()));
        match restricted.domain() {
            Some(dom) if dom == &d => Ok(restricted),
            _ => Err(ComplexError::DomainNotContained(self.domain.to_string())),
        }
    }

    pub fn image_interval(&self) -> Interval {
        self.restricted_map()
            .expect("validated at construction")
            .image_interval()
            .unwrap()
    }

    pub fn variant(&self) -> Variant {
        self.word.variant()
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.word, self.domain)
    }
}

/// Decides `f in S(D1, D2)`, returning the twist exponent: `k` such that
/// `f = w2 C^k w1^-1` up to a positive scalar for word domains, or the
/// translation amount for two rays.
pub fn structure_set_membership(
    f: &ProjMatrix,
    d1: &DomainWord,
    d2: &DomainWord,
    variant: Variant,
) -> Option<i64> {
    match (d1, d2) {
        (DomainWord::Word { .. }, DomainWord::Word { .. }) => {
            let m1 = d1.matrix(variant).unwrap();
            let m2 = d2.matrix(variant).unwrap();
            detect_c_power(&m2.inverse().mul(f).mul(&m1), variant)
        }
        (DomainWord::Ray { m }, DomainWord::Ray { m: n }) => {
            let t = make_generator(GeneratorName::T, variant);
            let shift = i64::from(*n) - i64::from(*m);
            (f == &t.matrix().unwrap().pow(shift)).then_some(shift)
        }
        _ => None,
    }
}

/// Equality of pair classes: some structure-set element `h in S(D1, D2)`
/// satisfies `f1 = f2 h`; decided through [`structure_set_membership`] on
/// `f2^-1 f1`.
pub fn pairs_equal(p1: &PairClass, p2: &PairClass, variant: Variant) -> bool {
    let (m1, m2) = match (p1.restricted_map(), p2.restricted_map()) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return false,
    };
    let f1 = m1.matrix().unwrap();
    let f2 = m2.matrix().unwrap();
    let h = f2.inverse().mul(f1);
    structure_set_membership(&h, p1.domain(), p2.domain(), variant).is_some()
}

// ---------------------------------------------------------------------------
// Push-through: eventual invariance, constructively
// ---------------------------------------------------------------------------

/// Finds the generating domain equal to `iv`, as `(t_power, word)`;
/// `None` when `iv` is not a generating domain.
pub(crate) fn generating_word_for(
    iv: &Interval,
    variant: Variant,
) -> Option<(u32, Vec<Letter>)> {
    if iv.hi().is_infinite() {
        return None;
    }
    // Peel off the integer translation.
    let lo = iv.lo();
    if lo < &ExtRational::zero() {
        return None;
    }
    let whole = lo.numer() / lo.denom();
    let t_power: u32 = u32::try_from(&whole).ok()?;
    let t = make_generator(GeneratorName::T, variant);
    let back = t.matrix().unwrap().pow(-(t_power as i64));
    let mut target = Interval::new(back.apply(iv.lo()), back.apply(iv.hi()));
    if !Interval::unit().contains_interval(&target) {
        return None;
    }
    let mut word = Vec::new();
    let a_inv = make_generator(GeneratorName::A, variant)
        .matrix()
        .unwrap()
        .inverse();
    let b_inv = make_generator(GeneratorName::B, variant)
        .matrix()
        .unwrap()
        .inverse();
    let half = ExtRational::new(1, 2);
    // Each descent step strictly shrinks the endpoint denominators, so the
    // loop terminates: either the interval becomes the whole unit interval
    // (generating) or it straddles the split point (not generating).
    loop {
        if target == Interval::unit() {
            return Some((t_power, word));
        }
        if target.hi() <= &half {
            word.push(Letter::UpperA);
            target = Interval::new(a_inv.apply(target.lo()), a_inv.apply(target.hi()));
        } else if target.lo() >= &half {
            word.push(Letter::UpperB);
            target = Interval::new(b_inv.apply(target.lo()), b_inv.apply(target.hi()));
        } else {
            return None;
        }
    }
}

/// Pushes the map of `s` through the domain `d`: a finite partition of `d`
/// into generating domains whose images under `s` are again generating
/// domains.
///
/// Following the eventual-invariance argument, a piece is subdivided into
/// its `A`/`B` halves until the image of each piece lands on a generating
/// domain; the paper's residual case analysis is what this search resolves
/// in exact arithmetic.
pub fn push_through(
    s: &GenWord,
    d: &DomainWord,
) -> Result<(Vec<DomainWord>, Vec<DomainWord>), ComplexError> {
    let variant = s.variant();
    let s_map = match s.letters() {
        None => PartialLft::Zero,
        Some(ls) => letters_semantics(ls, variant, d.interval(variant)),
    };
    let d_interval = d.interval(variant);
    // The whole domain must sit inside the domain of s.
    match s_map.domain() {
        Some(dom) if dom.contains_interval(&d_interval) => {}
        _ => return Err(ComplexError::DomainNotContained(d.to_string())),
    }

    match d {
        DomainWord::Ray { m } => {
            // Only translations act on a whole ray.
            let restricted = s_map.compose(&PartialLft::identity_on(Interval::ray(*m)));
            let image = match restricted.domain() {
                Some(dom) if dom == &Interval::ray(*m) => restricted.image_interval().unwrap(),
                _ => return Err(ComplexError::DomainNotContained(d.to_string())),
            };
            if !image.hi().is_infinite() || image.lo().denom() != &num_bigint::BigInt::from(1) {
                return Err(ComplexError::DomainNotContained(d.to_string()));
            }
            let m_new = u32::try_from(image.lo().numer())
                .map_err(|_| ComplexError::DomainNotContained(d.to_string()))?;
            Ok((vec![d.clone()], vec![DomainWord::Ray { m: m_new }]))
        }
        DomainWord::Word { t_power, word } => {
            let s_matrix = s_map.matrix().expect("checked non-zero").clone();
            let a_matrix = make_generator(GeneratorName::A, variant)
                .matrix()
                .unwrap()
                .clone();
            let b_matrix = make_generator(GeneratorName::B, variant)
                .matrix()
                .unwrap()
                .clone();
            let base = d.matrix(variant).unwrap();
            let mut pieces = Vec::new();
            let mut images = Vec::new();
            // Depth-first, left first; piece matrices are extended one
            // generator at a time.
            let mut queue: Vec<(Vec<Letter>, ProjMatrix)> = vec![(word.clone(), base)];
            let mut iterations = 0usize;
            while let Some((piece_word, piece_matrix)) = queue.pop() {
                iterations += 1;
                if iterations > 4_096 {
                    // Single generators stabilize within a handful of
                    // pieces; composite maps with inner twists may admit no
                    // finite generating partition at all, which surfaces
                    // here.
                    return Err(ComplexError::PushThroughDiverged(s.to_string()));
                }
                let mapped = s_matrix.mul(&piece_matrix);
                let image = Interval::new(
                    mapped.apply(&ExtRational::zero()),
                    mapped.apply(&ExtRational::one()),
                );
                match generating_word_for(&image, variant) {
                    Some((alpha, image_word)) => {
                        pieces.push(DomainWord::Word {
                            t_power: *t_power,
                            word: piece_word,
                        });
                        images.push(DomainWord::Word {
                            t_power: alpha,
                            word: image_word,
                        });
                    }
                    None => {
                        let mut left = piece_word.clone();
                        left.push(Letter::UpperA);
                        let mut right = piece_word;
                        right.push(Letter::UpperB);
                        // Right first so the left half is processed first.
                        queue.push((right, piece_matrix.mul(&b_matrix)));
                        queue.push((left, piece_matrix.mul(&a_matrix)));
                    }
                }
            }
            Ok((pieces, images))
        }
    }
}

// ---------------------------------------------------------------------------
// Vertices
// ---------------------------------------------------------------------------

/// A finite set of pair classes whose images tile `[0,1)` (or `[0,inf)`),
/// kept in image order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vertex {
    variant: Variant,
    pairs: Vec<PairClass>,
}

impl Vertex {
    pub fn new(mut pairs: Vec<PairClass>) -> Result<Self, ComplexError> {
        if pairs.is_empty() {
            return Err(ComplexError::NotAPartition);
        }
        let variant = pairs[0].variant();
        if pairs.iter().any(|p| p.variant() != variant) {
            return Err(ComplexError::VariantMismatch);
        }
        pairs.sort_by(|a, b| a.image_interval().lo().cmp(b.image_interval().lo()));
        let mut cursor = ExtRational::zero();
        for pair in &pairs {
            let iv = pair.image_interval();
            if iv.lo() != &cursor {
                return Err(ComplexError::NotAPartition);
            }
            cursor = iv.hi().clone();
        }
        if cursor != ExtRational::one() && !cursor.is_infinite() {
            return Err(ComplexError::NotAPartition);
        }
        Ok(Vertex { variant, pairs })
    }

    pub fn pairs(&self) -> &[PairClass] {
        &self.pairs
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// The trivial vertex `{[1, I]}`.
    pub fn trivial(variant: Variant) -> Self {
        Vertex::new(vec![
            PairClass::over_unit(GenWord::empty(variant)).unwrap()
        ])
        .unwrap()
    }

    /// Semantic equality: same pair classes in image order.
    pub fn same_vertex(&self, other: &Vertex) -> bool {
        self.variant == other.variant
            && self.pairs.len() == other.pairs.len()
            && self
                .pairs
                .iter()
                .zip(other.pairs.iter())
                .all(|(p, q)| pairs_equal(p, q, self.variant))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// The vertex whose pairs are the leaf words of `t` over the unit domain.
pub fn vertex_of_tree(t: &SubdivisionTree) -> Vertex {
    let pairs = trees::leaf_words(t)
        .into_iter()
        .map(|w| PairClass::over_unit(w).unwrap())
        .collect();
    Vertex::new(pairs).expect("leaf intervals tile the unit interval")
}

// ---------------------------------------------------------------------------
// Tree representability
// ---------------------------------------------------------------------------

/// Decides whether the pairs `[w, I]` (images tiling `[0,1)`) are the
/// vertex of some subdivision tree, and returns one if so.
///
/// Candidate root labels are read off the breakpoints (a root labeled `k`
/// splits at `n^k/(n^k+1)`), then both sides are pulled back and decided
/// recursively, with memoization on the normalized matrices.
pub fn tree_representable(
    words: &[GenWord],
    variant: Variant,
) -> Result<Option<SubdivisionTree>, ComplexError> {
    if words.is_empty() {
        return Err(ComplexError::NotAPartition);
    }
    let mut maps = Vec::with_capacity(words.len());
    for w in words {
        if w.variant() != variant {
            return Err(ComplexError::VariantMismatch);
        }
        let map = match w.letters() {
            None => PartialLft::Zero,
            Some(ls) => letters_semantics(ls, variant, Interval::unit()),
        };
        match map.domain() {
            Some(dom) if dom == &Interval::unit() => {}
            _ => return Err(ComplexError::DomainNotContained(w.to_string())),
        }
        maps.push(map);
    }
    maps.sort_by(|a, b| {
        a.image_interval()
            .unwrap()
            .lo()
            .cmp(b.image_interval().unwrap().lo())
    });
    let mut cursor = ExtRational::zero();
    for m in &maps {
        let iv = m.image_interval().unwrap();
        if iv.lo() != &cursor {
            return Err(ComplexError::NotAPartition);
        }
        cursor = iv.hi().clone();
    }
    if cursor != ExtRational::one() {
        return Err(ComplexError::NotAPartition);
    }
    let matrices: Vec<ProjMatrix> = maps.iter().map(|m| m.matrix().unwrap().clone()).collect();
    let mut memo = HashMap::new();
    Ok(representable(&matrices, variant, &mut memo).map(|root| SubdivisionTree::new(root, variant)))
}

fn representable(
    matrices: &[ProjMatrix],
    variant: Variant,
    memo: &mut HashMap<Vec<ProjMatrix>, Option<Node>>,
) -> Option<Node> {
    if let Some(hit) = memo.get(matrices) {
        return hit.clone();
    }
    let result = if matrices.len() == 1 {
        detect_c_power(&matrices[0], variant).map(|_| Node::Leaf)
    } else {
        let breakpoints: Vec<ExtRational> = matrices[..matrices.len() - 1]
            .iter()
            .map(|m| m.apply(&ExtRational::one()))
            .collect();
        let mut found = None;
        for k in candidate_roots(&breakpoints, variant) {
            let split = trees::split_point(variant, k);
            let cut = breakpoints.iter().position(|b| b == &split).unwrap();
            let c = make_generator(GeneratorName::C, variant);
            let a = make_generator(GeneratorName::A, variant);
            let b = make_generator(GeneratorName::B, variant);
            let left_back = a
                .matrix()
                .unwrap()
                .inverse()
                .mul(&c.matrix().unwrap().pow(-k));
            let right_back = b
                .matrix()
                .unwrap()
                .inverse()
                .mul(&c.matrix().unwrap().pow(-k));
            let left: Vec<ProjMatrix> = matrices[..=cut]
                .iter()
                .map(|m| left_back.mul(m))
                .collect();
            let right: Vec<ProjMatrix> = matrices[cut + 1..]
                .iter()
                .map(|m| right_back.mul(m))
                .collect();
            if let Some(l) = representable(&left, variant, memo) {
                if let Some(r) = representable(&right, variant, memo) {
                    found = Some(Node::caret(k, l, r));
                    break;
                }
            }
        }
        found
    };
    memo.insert(matrices.to_vec(), result.clone());
    result
}

/// Root labels whose split point appears among the breakpoints.
fn candidate_roots(breakpoints: &[ExtRational], variant: Variant) -> Vec<i64> {
    let mut out = Vec::new();
    for bp in breakpoints {
        if let Some(k) = split_exponent(bp, variant) {
            out.push(k);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Solves `n^k / (n^k + 1) = p/q` exactly.
fn split_exponent(x: &ExtRational, variant: Variant) -> Option<i64> {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    if x.is_infinite() {
        return None;
    }
    let p = x.numer().clone();
    let q = x.denom().clone();
    if p <= BigInt::zero() || q <= p {
        return None;
    }
    let r = &q - &p; // n^k = p / r, in lowest terms since gcd(p, q) = 1
    let n = BigInt::from(variant.n());
    let (big, small, sign) = if p >= r {
        (p, r, 1i64)
    } else {
        (r, p, -1i64)
    };
    if !small.is_one() {
        // p and q - p are coprime, so an exact power of n forces the
        // smaller side to be 1.
        return None;
    }
    let mut power = BigInt::one();
    let mut k = 0i64;
    while power < big {
        power *= &n;
        k += 1;
    }
    (power == big).then_some(sign * k)
}

// ---------------------------------------------------------------------------
// The expansion partial order
// ---------------------------------------------------------------------------

fn unit_pair_words(v: &Vertex) -> Result<Vec<GenWord>, ComplexError> {
    v.pairs()
        .iter()
        .map(|p| match p.domain() {
            DomainWord::Word { t_power: 0, word } if word.is_empty() => Ok(p.word().clone()),
            other => Err(ComplexError::UnsupportedVertex(format!(
                "pair domain {other} is not the unit interval"
            ))),
        })
        .collect()
}

/// The expansion order on tree-representable vertices: `v2` refines `v1`
/// and, within each pair of `v1`, the sub-collection of `v2` pulls back to
/// a tree-representable vertex.
pub fn vertex_leq(v1: &Vertex, v2: &Vertex) -> Result<bool, ComplexError> {
    if v1.variant() != v2.variant() {
        return Err(ComplexError::VariantMismatch);
    }
    let variant = v1.variant();
    let words1 = unit_pair_words(v1)?;
    let words2 = unit_pair_words(v2)?;
    let images1: Vec<Interval> = v1.pairs().iter().map(|p| p.image_interval()).collect();
    let images2: Vec<Interval> = v2.pairs().iter().map(|p| p.image_interval()).collect();

    let mut j = 0usize;
    for (i, big) in images1.iter().enumerate() {
        let mut pulled = Vec::new();
        let mut cursor = big.lo().clone();
        while j < images2.len() && big.contains_interval(&images2[j]) {
            if images2[j].lo() != &cursor {
                return Ok(false);
            }
            cursor = images2[j].hi().clone();
            pulled.push(words1[i].inverse().concat(&words2[j]));
            j += 1;
        }
        if &cursor != big.hi() {
            return Ok(false);
        }
        if tree_representable(&pulled, variant)?.is_none() {
            return Ok(false);
        }
    }
    Ok(j == images2.len())
}

/// A vertex above both inputs in the expansion order.
///
/// Both vertices are realized as subdivision trees and joined in the tree
/// calculus: root labels are aligned by elementary moves where the label
/// ranges allow, and fresh carets are grafted where they do not. (Joining
/// through identity-form pairs does not work in general: a twisted piece
/// map need not admit any finite partition into generating domains with
/// generating images, so the refinement is taken where twists are explicit
/// — on labeled trees.)
pub fn common_upper_bound(v1: &Vertex, v2: &Vertex) -> Result<Vertex, ComplexError> {
    if v1.variant() != v2.variant() {
        return Err(ComplexError::VariantMismatch);
    }
    let variant = v1.variant();
    let t1 = tree_representable(&unit_pair_words(v1)?, variant)?
        .ok_or_else(|| ComplexError::UnsupportedVertex("first operand".into()))?;
    let t2 = tree_representable(&unit_pair_words(v2)?, variant)?
        .ok_or_else(|| ComplexError::UnsupportedVertex("second operand".into()))?;
    Ok(vertex_of_tree(&trees::tree_join(&t1, &t2)))
}

// ---------------------------------------------------------------------------
// Expansion schemes and ascending links
// ---------------------------------------------------------------------------

/// A pseudovertex: pair classes with pairwise disjoint images (here always
/// consecutive, so a plain list in image order).
pub type PseudoVertex = Vec<PairClass>;

/// The truncation of the expansion scheme at `b` to root twists in
/// `[k_lo, k_hi]`: the base pseudovertex plus, for word domains, the
/// one-caret and caret-and-a-half expansions `u_{k/2}` in range; for ray
/// domains, exactly the two-element scheme.
pub fn scheme_expansions(b: &PairClass, k_lo: i64, k_hi: i64) -> Vec<PseudoVertex> {
    let variant = b.variant();
    match b.domain() {
        DomainWord::Ray { m } => {
            let split = vec![
                PairClass::new(
                    b.word().clone(),
                    DomainWord::Word {
                        t_power: *m,
                        word: Vec::new(),
                    },
                )
                .unwrap(),
                PairClass::new(b.word().clone(), DomainWord::Ray { m: m + 1 }).unwrap(),
            ];
            vec![vec![b.clone()], split]
        }
        DomainWord::Word { t_power, word } => {
            // Normalize [f, wI] = [f w, I] and expand below the unit domain.
            let mut g = b.word().clone();
            let mut prefix = Vec::new();
            prefix.extend(std::iter::repeat(Letter::UpperT).take(*t_power as usize));
            prefix.extend(word.iter().copied());
            g = g.concat(&GenWord::from_letters(prefix, variant));
            let mut out = vec![vec![b.clone()]];
            for half_units in (2 * k_lo)..=(2 * k_hi) {
                out.push(u_pseudovertex(&g, half_units, variant));
            }
            out
        }
    }
}

/// The pseudovertex `f . u_{j/2}` (j in half-units; even j is the
/// one-caret vertex, odd j the caret-and-a-half vertex).
fn u_pseudovertex(prefix: &GenWord, half_units: i64, variant: Variant) -> PseudoVertex {
    let tails: Vec<Vec<Letter>> = if half_units % 2 == 0 {
        let k = half_units / 2;
        vec![
            twist_then(k, &[Letter::UpperA], variant),
            twist_then(k, &[Letter::UpperB], variant),
        ]
    } else {
        let k = (half_units + 1) / 2;
        match variant {
            Variant::N2 => vec![
                twist_then(k, &[Letter::UpperA, Letter::UpperA], variant),
                twist_then(k, &[Letter::UpperA, Letter::UpperB], variant),
                twist_then(k, &[Letter::UpperB], variant),
            ],
            Variant::N3 => vec![
                twist_then(k, &[Letter::UpperA, Letter::UpperA, Letter::UpperA], variant),
                twist_then(k, &[Letter::UpperA, Letter::UpperA, Letter::UpperB], variant),
                twist_then(k, &[Letter::UpperA, Letter::UpperB, Letter::UpperA], variant),
                twist_then(k, &[Letter::UpperA, Letter::UpperB, Letter::UpperB], variant),
                twist_then(k, &[Letter::UpperB], variant),
            ],
        }
    };
    tails
        .into_iter()
        .map(|tail| {
            let w = prefix.concat(&GenWord::from_letters(tail, variant));
            PairClass::over_unit(w).unwrap()
        })
        .collect()
}

fn twist_then(k: i64, tail: &[Letter], variant: Variant) -> Vec<Letter> {
    let mut out = GenWord::c_power(k, variant).letters().unwrap().to_vec();
    out.extend_from_slice(tail);
    out
}

/// The ascending link of the trivial pair relative to the vertex of `t`:
/// all half-integers `j/2` with `u_{j/2} <= vertex_of_tree(t)`, encoded in
/// half-units (so the value `j` stands for `j/2`).
///
/// Integer points are exactly the root-label range; the half point `k-1/2`
/// is admitted when, at the root-label-k representative, the left branch
/// can be brought to the consumable shape.
pub fn ascending_link(t: &SubdivisionTree) -> Result<BTreeSet<i64>, ComplexError> {
    if t.is_trivial() {
        return Err(ComplexError::UnsupportedVertex("trivial tree".into()));
    }
    let (min_label, max_label) = trees::root_label_range(t);
    let mut out = BTreeSet::new();
    for k in min_label..=max_label {
        out.insert(2 * k);
    }
    for k in (min_label + 1)..=max_label {
        let rep = trees::set_root_label(t, k).expect("k is in the label range");
        let Node::Caret { left, .. } = rep.root() else {
            unreachable!("nontrivial tree")
        };
        let left_tree = SubdivisionTree::new(left.as_ref().clone(), t.variant());
        if trees::branch_to_consumable(&left_tree).is_some() {
            out.insert(2 * k - 1);
        }
    }
    Ok(out)
}

/// Renders a half-unit value as `k` or `k/2`.
pub fn half_units_to_string(j: i64) -> String {
    if j % 2 == 0 {
        format!("{}", j / 2)
    } else {
        format!("{j}/2")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::tree_partition;

    fn w2(text: &str) -> GenWord {
        GenWord::parse(text, Variant::N2).unwrap()
    }

    fn t2(text: &str) -> SubdivisionTree {
        SubdivisionTree::parse(text, Variant::N2).unwrap()
    }

    fn unit_vertex(words: &[&str], variant: Variant) -> Vertex {
        Vertex::new(
            words
                .iter()
                .map(|w| {
                    PairClass::over_unit(GenWord::parse(w, variant).unwrap()).unwrap()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn structure_set_examples() {
        let id = ProjMatrix::identity();
        let unit = DomainWord::unit();
        assert_eq!(
            structure_set_membership(&id, &unit, &unit, Variant::N2),
            Some(0)
        );
        let c2_squared = ProjMatrix::new(4, 0, 3, 1);
        assert_eq!(
            structure_set_membership(&c2_squared, &unit, &unit, Variant::N2),
            Some(2)
        );
        let a = ProjMatrix::new(1, 0, 1, 1);
        let ai = DomainWord::Word {
            t_power: 0,
            word: vec![Letter::UpperA],
        };
        assert_eq!(
            structure_set_membership(&a, &unit, &ai, Variant::N2),
            Some(0)
        );
        assert_eq!(structure_set_membership(&a, &unit, &unit, Variant::N2), None);
    }

    #[test]
    fn ray_structure_sets_are_translations() {
        let t = make_generator(GeneratorName::T, Variant::N2);
        let d1 = DomainWord::Ray { m: 1 };
        let d2 = DomainWord::Ray { m: 4 };
        assert_eq!(
            structure_set_membership(&t.matrix().unwrap().pow(3), &d1, &d2, Variant::N2),
            Some(3)
        );
        assert_eq!(
            structure_set_membership(&t.matrix().unwrap().pow(2), &d1, &d2, Variant::N2),
            None
        );
    }

    #[test]
    fn pairs_equal_examples() {
        let p_ac = PairClass::over_unit(w2("AC")).unwrap();
        let p_a = PairClass::over_unit(w2("A")).unwrap();
        assert!(pairs_equal(&p_ac, &p_a, Variant::N2));
        let p_b = PairClass::over_unit(w2("B")).unwrap();
        assert!(!pairs_equal(&p_a, &p_b, Variant::N2));
        // [f, wI] = [fw, I].
        let f_on_sub = PairClass::new(
            w2("C"),
            DomainWord::Word {
                t_power: 0,
                word: vec![Letter::UpperA],
            },
        )
        .unwrap();
        let fw = PairClass::over_unit(w2("CA")).unwrap();
        assert!(pairs_equal(&f_on_sub, &fw, Variant::N2));
    }

    #[test]
    fn push_through_examples() {
        // C2 across A.I splits into the two halves.
        let (pieces, images) = push_through(
            &w2("C"),
            &DomainWord::Word {
                t_power: 0,
                word: vec![Letter::UpperA],
            },
        )
        .unwrap();
        let render = |ds: &[DomainWord]| {
            ds.iter().map(|d| d.to_string()).collect::<Vec<_>>()
        };
        assert_eq!(render(&pieces), vec!["AA", "AB"]);
        assert_eq!(render(&images), vec!["A", "BA"]);

        // A across any generating domain is a single piece.
        let (pieces, images) = push_through(
            &w2("A"),
            &DomainWord::Word {
                t_power: 0,
                word: vec![Letter::UpperB],
            },
        )
        .unwrap();
        assert_eq!(render(&pieces), vec!["B"]);
        assert_eq!(render(&images), vec!["AB"]);

        // C3 across B.I pushes cleanly.
        let (pieces, images) = push_through(
            &GenWord::parse("C", Variant::N3).unwrap(),
            &DomainWord::Word {
                t_power: 0,
                word: vec![Letter::UpperB],
            },
        )
        .unwrap();
        assert_eq!(render(&pieces), vec!["B"]);
        assert_eq!(render(&images), vec!["BBB"]);
    }

    #[test]
    fn push_through_ray() {
        let t_word = GenWord::from_letters([Letter::UpperT], Variant::N2);
        let (pieces, images) = push_through(&t_word, &DomainWord::Ray { m: 2 }).unwrap();
        assert_eq!(pieces, vec![DomainWord::Ray { m: 2 }]);
        assert_eq!(images, vec![DomainWord::Ray { m: 3 }]);
        // A bounded-domain generator cannot act on a ray.
        assert!(push_through(&w2("A"), &DomainWord::Ray { m: 0 }).is_err());
    }

    #[test]
    fn vertex_of_tree_examples() {
        let trivial = vertex_of_tree(&SubdivisionTree::trivial(Variant::N2));
        assert_eq!(trivial.pairs().len(), 1);
        let u_k = vertex_of_tree(&t2("(2 . .)"));
        assert_eq!(u_k.pairs().len(), 2);
        assert_eq!(u_k.pairs()[0].word(), &w2("CCA"));
        assert_eq!(u_k.pairs()[1].word(), &w2("CCB"));
    }

    #[test]
    fn tree_representable_examples() {
        let t = tree_representable(&[w2("A"), w2("B")], Variant::N2)
            .unwrap()
            .unwrap();
        assert_eq!(t, t2("(0 . .)"));
        // Twists are absorbed.
        let t = tree_representable(&[w2("AC"), w2("B")], Variant::N2)
            .unwrap()
            .unwrap();
        assert_eq!(t, t2("(0 . .)"));
        // Images must tile.
        assert!(tree_representable(&[w2("A"), w2("A")], Variant::N2).is_err());
    }

    #[test]
    fn vertex_leq_examples() {
        let trivial = Vertex::trivial(Variant::N2);
        for tree in ["(0 . .)", "(1 . .)", "(0 (0 . .) .)", "(-2 (1 . .) (0 . .))"] {
            let v = vertex_of_tree(&t2(tree));
            assert_eq!(vertex_leq(&trivial, &v), Ok(true), "{tree}");
        }
        // u_k <= u_{k-1/2} and u_{k-1} <= u_{k-1/2}.
        for k in -2i64..=2 {
            let u_k = vertex_of_tree(&SubdivisionTree::new(
                Node::caret(k, Node::Leaf, Node::Leaf),
                Variant::N2,
            ));
            let u_k_prev = vertex_of_tree(&SubdivisionTree::new(
                Node::caret(k - 1, Node::Leaf, Node::Leaf),
                Variant::N2,
            ));
            let u_half = vertex_of_tree(&SubdivisionTree::new(
                Node::caret(k, Node::caret(0, Node::Leaf, Node::Leaf), Node::Leaf),
                Variant::N2,
            ));
            assert_eq!(vertex_leq(&u_k, &u_half), Ok(true));
            assert_eq!(vertex_leq(&u_k_prev, &u_half), Ok(true));
            assert_eq!(vertex_leq(&u_k, &u_k_prev), Ok(false));
        }
        // Incomparable integer vertices.
        let u0 = vertex_of_tree(&t2("(0 . .)"));
        let u1 = vertex_of_tree(&t2("(1 . .)"));
        assert_eq!(vertex_leq(&u0, &u1), Ok(false));
        assert_eq!(vertex_leq(&u1, &u0), Ok(false));
    }

    #[test]
    fn common_upper_bound_examples() {
        let u0 = vertex_of_tree(&t2("(0 . .)"));
        let u1 = vertex_of_tree(&t2("(1 . .)"));
        let upper = common_upper_bound(&u0, &u1).unwrap();
        assert_eq!(vertex_leq(&u0, &upper), Ok(true));
        assert_eq!(vertex_leq(&u1, &upper), Ok(true));
        let words: Vec<String> = upper.pairs().iter().map(|p| p.word().to_string()).collect();
        assert_eq!(words, vec!["A", "BA", "BB"]);

        let trivial = Vertex::trivial(Variant::N2);
        let v = vertex_of_tree(&t2("(0 (0 . .) .)"));
        let upper = common_upper_bound(&trivial, &v).unwrap();
        assert!(upper.same_vertex(&v));

        let same = common_upper_bound(&u0, &u0).unwrap();
        assert_eq!(vertex_leq(&u0, &same), Ok(true));
    }

    #[test]
    fn scheme_expansion_examples() {
        let base = PairClass::over_unit(w2("1")).unwrap();
        let out = scheme_expansions(&base, -1, 1);
        // Base plus five u_{k/2} pseudovertices.
        assert_eq!(out.len(), 6);
        assert_eq!(out[0].len(), 1);
        let sizes: Vec<usize> = out[1..].iter().map(|pv| pv.len()).collect();
        assert_eq!(sizes, vec![2, 3, 2, 3, 2]);

        let ray = PairClass::new(GenWord::empty(Variant::N2), DomainWord::Ray { m: 0 }).unwrap();
        let out = scheme_expansions(&ray, -5, 5);
        assert_eq!(out.len(), 2);
        assert_eq!(out[1].len(), 2);
        assert_eq!(out[1][0].domain(), &DomainWord::Word { t_power: 0, word: vec![] });
        assert_eq!(out[1][1].domain(), &DomainWord::Ray { m: 1 });
    }

    #[test]
    fn ascending_link_examples() {
        let single = t2("(0 . .)");
        let link = ascending_link(&single).unwrap();
        assert_eq!(link.into_iter().collect::<Vec<_>>(), vec![0]);

        for k in -2i64..=2 {
            let t = SubdivisionTree::new(
                Node::caret(k, Node::caret(0, Node::Leaf, Node::Leaf), Node::Leaf),
                Variant::N2,
            );
            let link = ascending_link(&t).unwrap();
            let expected: Vec<i64> = vec![2 * k - 2, 2 * k - 1, 2 * k];
            assert_eq!(link.into_iter().collect::<Vec<_>>(), expected);
        }
        assert!(ascending_link(&SubdivisionTree::trivial(Variant::N2)).is_err());
    }

    #[test]
    fn ascending_link_is_contiguous_on_examples() {
        for text in ["(2 (4 (0 (-1 . .) (3 . .)) .) .)", "(0 (1 . .) (-1 . .))"] {
            let t = t2(text);
            let link = ascending_link(&t).unwrap();
            let v: Vec<i64> = link.into_iter().collect();
            for pair in v.windows(2) {
                assert_eq!(pair[1], pair[0] + 1, "{text}");
            }
            let partition = tree_partition(&t);
            assert!(partition.len() > 1);
        }
    }

    #[test]
    fn half_unit_rendering() {
        assert_eq!(half_units_to_string(4), "2");
        assert_eq!(half_units_to_string(-1), "-1/2");
    }
}
