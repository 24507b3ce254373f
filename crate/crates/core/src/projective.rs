//! Exact arithmetic for integer linear fractional transformations acting on
//! the extended rationals and on half-open rational intervals.
//!
//! A 2x2 integer matrix `(a b / c d)` of positive determinant acts on
//! `Q union {infinity}` by `x -> (ax + b)/(cx + d)`. Matrices are kept
//! normalized (gcd 1, first nonzero entry positive) so that equality up to a
//! positive scalar is plain structural equality. Partial maps pair a matrix
//! with a half-open domain `[lo, hi)` on which the transformation is finite
//! and strictly increasing; the empty map is a first-class value and absorbs
//! composition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::error::ProjectiveError;

/// A point of `Q union {infinity}` as a normalized fraction `num/den`.
///
/// Invariants: `gcd(|num|, den) = 1`, `(num, den) != (0, 0)`, and `den = 0`
/// encodes the point at infinity with `num` normalized to `1`. Infinity
/// compares greater than every finite point.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtRational {
    num: BigInt,
    den: BigInt,
}

impl ExtRational {
    /// Builds `num/den`, reducing to lowest terms and normalizing signs.
    ///
    /// Panics when both arguments are zero.
    pub fn new<N: Into<BigInt>, D: Into<BigInt>>(num: N, den: D) -> Self {
        let mut num = num.into();
        let mut den = den.into();
        assert!(
            !(num.is_zero() && den.is_zero()),
            "0/0 is not a point of the projective line"
        );
        if den.is_zero() {
            return ExtRational {
                num: BigInt::one(),
                den,
            };
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if !g.is_one() && !g.is_zero() {
            num /= &g;
            den /= &g;
        }
        ExtRational { num, den }
    }

    pub fn zero() -> Self {
        ExtRational::new(0, 1)
    }

    pub fn one() -> Self {
        ExtRational::new(1, 1)
    }

    pub fn infinity() -> Self {
        ExtRational {
            num: BigInt::one(),
            den: BigInt::zero(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    /// Parses "p/q", "p", or "inf".
    pub fn parse(text: &str) -> Result<Self, ProjectiveError> {
        let text = text.trim();
        if text == "inf" || text == "oo" {
            return Ok(ExtRational::infinity());
        }
        let bad = || ProjectiveError::BadRational(text.to_string());
        match text.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() && p.is_zero() {
                    return Err(bad());
                }
                Ok(ExtRational::new(p, q))
            }
            None => {
                let p: BigInt = text.parse().map_err(|_| bad())?;
                Ok(ExtRational::new(p, 1))
            }
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            // Denominators are nonnegative, so cross-multiplying is safe.
            (false, false) => (&self.num * &other.den).cmp(&(&other.num * &self.den)),
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A 2x2 integer matrix of positive determinant, up to a positive scalar.
///
/// Normalization divides by the gcd of the entries and flips the overall
/// sign so that the first nonzero entry in the order `(a, b, c, d)` is
/// positive. Two matrices act identically on the projective line iff their
/// normalized forms are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjMatrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl ProjMatrix {
    /// Builds and normalizes `(a b / c d)`. Panics unless `ad - bc > 0`.
    pub fn new<T: Into<BigInt>>(a: T, b: T, c: T, d: T) -> Self {
        let mut m = ProjMatrix {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        assert!(
            m.det_raw().is_positive(),
            "projective matrices must have positive determinant"
        );
        m.normalize();
        m
    }

    fn det_raw(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    fn normalize(&mut self) {
        let g = self
            .a
            .gcd(&self.b)
            .gcd(&self.c)
            .gcd(&self.d);
        if !g.is_one() {
            self.a /= &g;
            self.b /= &g;
            self.c /= &g;
            self.d /= &g;
        }
        let first = [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .find(|x| !x.is_zero())
            .expect("zero matrix is not projective");
        if first.is_negative() {
            self.a = -&self.a;
            self.b = -&self.b;
            self.c = -&self.c;
            self.d = -&self.d;
        }
    }

    pub fn identity() -> Self {
        ProjMatrix::new(1, 0, 0, 1)
    }

    pub fn is_identity(&self) -> bool {
        self == &ProjMatrix::identity()
    }

    pub fn entries(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    /// Matrix product `self * rhs` (so `self` acts after `rhs`).
    pub fn mul(&self, rhs: &ProjMatrix) -> ProjMatrix {
        let mut m = ProjMatrix {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        };
        m.normalize();
        m
    }

    /// The integer adjugate, which inverts the projective action.
    pub fn inverse(&self) -> ProjMatrix {
        let mut m = ProjMatrix {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        };
        m.normalize();
        m
    }

    /// Raises to an integer power (negative powers via the adjugate).
    pub fn pow(&self, k: i64) -> ProjMatrix {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = ProjMatrix::identity();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Applies the transformation to a point, projectively.
    pub fn apply(&self, x: &ExtRational) -> ExtRational {
        let p = x.numer();
        let q = x.denom();
        let num = &self.a * p + &self.b * q;
        let den = &self.c * p + &self.d * q;
        ExtRational::new(num, den)
    }
}

impl fmt::Display for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {} / {} {}]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A half-open interval `[lo, hi)` in the extended order, `lo < hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: ExtRational,
    hi: ExtRational,
}

impl Interval {
    pub fn new(lo: ExtRational, hi: ExtRational) -> Self {
        assert!(lo < hi, "interval endpoints out of order: [{lo}, {hi})");
        Interval { lo, hi }
    }

    /// The unit interval `[0, 1)`.
    pub fn unit() -> Self {
        Interval::new(ExtRational::zero(), ExtRational::one())
    }

    /// The ray `[m, infinity)`.
    pub fn ray(m: u32) -> Self {
        Interval::new(ExtRational::new(m, 1u32), ExtRational::infinity())
    }

    pub fn lo(&self) -> &ExtRational {
        &self.lo
    }

    pub fn hi(&self) -> &ExtRational {
        &self.hi
    }

    pub fn contains(&self, x: &ExtRational) -> bool {
        &self.lo <= x && x < &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Intersection of two half-open intervals; `None` when empty.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo < hi).then(|| Interval::new(lo, hi))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A partial increasing projective map: a matrix restricted to a half-open
/// interval, or the distinguished empty map `Zero`.
///
/// The empty map absorbs composition, mirroring the role of the zero
/// element in an inverse semigroup of partial bijections.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PartialLft {
    Zero,
    Map { matrix: ProjMatrix, domain: Interval },
}

impl PartialLft {
    /// Restricts `matrix` to `domain`, checking that the pole stays outside
    /// the closed interval so the map is finite and increasing there.
    pub fn new(matrix: ProjMatrix, domain: Interval) -> Self {
        debug_assert!(
            pole_outside(&matrix, &domain),
            "pole of {matrix} lies in the closure of {domain}"
        );
        PartialLft::Map { matrix, domain }
    }

    pub fn identity_on(domain: Interval) -> Self {
        PartialLft::new(ProjMatrix::identity(), domain)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, PartialLft::Zero)
    }

    pub fn matrix(&self) -> Option<&ProjMatrix> {
        match self {
            PartialLft::Zero => None,
            PartialLft::Map { matrix, .. } => Some(matrix),
        }
    }

    pub fn domain(&self) -> Option<&Interval> {
        match self {
            PartialLft::Zero => None,
            PartialLft::Map { domain, .. } => Some(domain),
        }
    }

    /// The image `[f(lo), f(hi))`; errors on the empty map.
    pub fn image_interval(&self) -> Result<Interval, ProjectiveError> {
        match self {
            PartialLft::Zero => Err(ProjectiveError::ZeroMap),
            PartialLft::Map { matrix, domain } => Ok(Interval::new(
                matrix.apply(domain.lo()),
                matrix.apply(domain.hi()),
            )),
        }
    }

    /// Evaluates at a point of the domain.
    pub fn apply(&self, x: &ExtRational) -> Result<ExtRational, ProjectiveError> {
        match self {
            PartialLft::Zero => Err(ProjectiveError::ZeroMap),
            PartialLft::Map { matrix, domain } => {
                if domain.contains(x) {
                    Ok(matrix.apply(x))
                } else {
                    Err(ProjectiveError::OutOfDomain {
                        point: x.to_string(),
                        domain: domain.to_string(),
                    })
                }
            }
        }
    }

    /// Composition `self . rhs` on the overlap; `Zero` when the overlap is
    /// empty. This is total: an empty overlap is a value, not an error.
    pub fn compose(&self, rhs: &PartialLft) -> PartialLft {
        let (PartialLft::Map { matrix: mg, domain: dg }, PartialLft::Map { matrix: mh, domain: dh }) =
            (self, rhs)
        else {
            return PartialLft::Zero;
        };
        let image_h = rhs.image_interval().expect("non-zero map");
        let Some(overlap) = dg.intersect(&image_h) else {
            return PartialLft::Zero;
        };
        let inv_h = mh.inverse();
        let domain = Interval::new(inv_h.apply(overlap.lo()), inv_h.apply(overlap.hi()));
        debug_assert!(dh.contains_interval(&domain));
        PartialLft::new(mg.mul(mh), domain)
    }

    /// The inverse map: adjugate matrix on the image interval.
    pub fn inverse(&self) -> Result<PartialLft, ProjectiveError> {
        match self {
            PartialLft::Zero => Err(ProjectiveError::ZeroMap),
            PartialLft::Map { matrix, .. } => Ok(PartialLft::new(
                matrix.inverse(),
                self.image_interval()?,
            )),
        }
    }
}

fn pole_outside(matrix: &ProjMatrix, domain: &Interval) -> bool {
    let (_, _, c, d) = matrix.entries();
    if c.is_zero() {
        // Affine map: finite and increasing on every finite point; the
        // half-open interval never contains its supremum.
        return true;
    }
    let pole = ExtRational::new(-d.clone(), c.clone());
    !(domain.lo() <= &pole && &pole <= domain.hi())
}

/// Names of the semigroup generators (and the ray translation).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GeneratorName {
    A,
    B,
    C,
    CInv,
    AInv,
    BInv,
    T,
    TInv,
}

/// The two interval-subdivision variants the calculus supports.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Variant {
    N2,
    N3,
}

impl Variant {
    pub fn n(self) -> i64 {
        match self {
            Variant::N2 => 2,
            Variant::N3 => 3,
        }
    }

    pub fn from_n(n: i64) -> Option<Variant> {
        match n {
            2 => Some(Variant::N2),
            3 => Some(Variant::N3),
            _ => None,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n())
    }
}

/// Returns a generator as a partial map with its defining matrix and domain.
///
/// `A: [0,1) -> [0,1/2)`, `B: [0,1) -> [1/2,1)`, `C_n: [0,1) -> [0,1)`,
/// `T: [0,inf) -> [1,inf)`; lowercase names are the inverses with domain and
/// range swapped. The variant only matters for `C`/`CInv`.
pub fn make_generator(name: GeneratorName, variant: Variant) -> PartialLft {
    let n = variant.n();
    let half_lo = Interval::new(ExtRational::zero(), ExtRational::new(1, 2));
    let half_hi = Interval::new(ExtRational::new(1, 2), ExtRational::one());
    match name {
        GeneratorName::A => PartialLft::new(ProjMatrix::new(1, 0, 1, 1), Interval::unit()),
        GeneratorName::B => PartialLft::new(ProjMatrix::new(0, 1, -1, 2), Interval::unit()),
        GeneratorName::C => PartialLft::new(ProjMatrix::new(n, 0, n - 1, 1), Interval::unit()),
        GeneratorName::CInv => PartialLft::new(ProjMatrix::new(1, 0, 1 - n, n), Interval::unit()),
        GeneratorName::AInv => PartialLft::new(ProjMatrix::new(1, 0, -1, 1), half_lo),
        GeneratorName::BInv => PartialLft::new(ProjMatrix::new(2, -1, 1, 0), half_hi),
        GeneratorName::T => PartialLft::new(ProjMatrix::new(1, 1, 0, 1), Interval::ray(0)),
        GeneratorName::TInv => PartialLft::new(
            ProjMatrix::new(1, -1, 0, 1),
            Interval::new(ExtRational::one(), ExtRational::infinity()),
        ),
    }
}

/// Decides whether `m` is a power of `C_n` up to a positive scalar, and
/// returns the exponent when it is.
///
/// `C_n^k` is exactly the normalized matrix `(n^k 0 / n^k - 1 1)`, so `m`
/// qualifies iff it fixes `0` and `1` (`b = 0`, `a = c + d`) and `a/d` is an
/// exact power of `n`; the exponent search is bounded by the entries' bit
/// length, so this is effective for arbitrary matrices.
pub fn detect_c_power(m: &ProjMatrix, variant: Variant) -> Option<i64> {
    detect_c_power_general(m, variant.n())
}

/// [`detect_c_power`] for an arbitrary modulus `n >= 2`; the cut-set search
/// uses this to stay exact for every `n` it probes.
pub fn detect_c_power_general(m: &ProjMatrix, n: i64) -> Option<i64> {
    assert!(n >= 2);
    let (a, b, c, d) = m.entries();
    if !b.is_zero() || *a != c + d {
        return None;
    }
    if !a.is_positive() || !d.is_positive() {
        return None;
    }
    let n = BigInt::from(n);
    let (big, small, sign) = match a.cmp(d) {
        Ordering::Equal => return Some(0),
        Ordering::Greater => (a, d, 1i64),
        Ordering::Less => (d, a, -1i64),
    };
    // big must equal small * n^k exactly.
    let (quot, rem) = big.div_rem(small);
    if !rem.is_zero() {
        return None;
    }
    let mut power = BigInt::one();
    let mut k = 0i64;
    while power < quot {
        power *= &n;
        k += 1;
    }
    (power == quot).then_some(sign * k)
}

/// Like [`detect_c_power`] but against an arbitrary base matrix; used by the
/// cut-set search when the seed transformations are generalized.
pub fn detect_power_of(m: &ProjMatrix, base: &ProjMatrix) -> Option<i64> {
    if m.is_identity() {
        return Some(0);
    }
    // The entry sizes bound how many times `base` can divide into `m`.
    let bit_bound = {
        let (a, b, c, d) = m.entries();
        let bits = [a, b, c, d]
            .into_iter()
            .map(|x| x.bits())
            .max()
            .unwrap_or(1);
        bits as i64 + 2
    };
    let too_big = |acc: &ProjMatrix| {
        let (a, b, c, d) = acc.entries();
        [a, b, c, d].into_iter().map(|x| x.bits()).max().unwrap_or(0) as i64 > bit_bound
    };
    // The k-cap also guards against finite-order bases, whose powers never
    // grow.
    let k_cap = 4 * bit_bound + 64;
    for sign in [1i64, -1i64] {
        let step = if sign > 0 { base.clone() } else { base.inverse() };
        let mut acc = step.clone();
        let mut k = 1;
        while !too_big(&acc) && k <= k_cap {
            if &acc == m {
                return Some(sign * k);
            }
            acc = acc.mul(&step);
            k += 1;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, q_: i64) -> ExtRational {
        ExtRational::new(p, q_)
    }

    #[test]
    fn generator_matrices_and_domains() {
        let a = make_generator(GeneratorName::A, Variant::N2);
        assert_eq!(a.matrix().unwrap(), &ProjMatrix::new(1, 0, 1, 1));
        assert_eq!(a.domain().unwrap(), &Interval::unit());
        assert_eq!(
            a.image_interval().unwrap(),
            Interval::new(q(0, 1), q(1, 2))
        );

        let c3 = make_generator(GeneratorName::C, Variant::N3);
        assert_eq!(c3.matrix().unwrap(), &ProjMatrix::new(3, 0, 2, 1));
        assert_eq!(c3.image_interval().unwrap(), Interval::unit());

        let a_inv = make_generator(GeneratorName::AInv, Variant::N2);
        assert_eq!(a_inv.matrix().unwrap(), &ProjMatrix::new(1, 0, -1, 1));
        assert_eq!(a_inv.domain().unwrap(), &Interval::new(q(0, 1), q(1, 2)));

        let b = make_generator(GeneratorName::B, Variant::N2);
        assert_eq!(
            b.image_interval().unwrap(),
            Interval::new(q(1, 2), q(1, 1))
        );

        let t = make_generator(GeneratorName::T, Variant::N2);
        assert_eq!(
            t.image_interval().unwrap(),
            Interval::new(q(1, 1), ExtRational::infinity())
        );
    }

    #[test]
    fn apply_point_examples() {
        let a = make_generator(GeneratorName::A, Variant::N2);
        assert_eq!(a.matrix().unwrap().apply(&q(0, 1)), q(0, 1));
        assert_eq!(a.matrix().unwrap().apply(&q(1, 2)), q(1, 3));
        let c2 = make_generator(GeneratorName::C, Variant::N2);
        assert_eq!(c2.matrix().unwrap().apply(&q(1, 2)), q(2, 3));
    }

    #[test]
    fn apply_handles_infinity_and_pole() {
        let b = ProjMatrix::new(0, 1, -1, 2);
        // B maps its pole x = 2 to infinity and infinity to 0.
        assert_eq!(b.apply(&q(2, 1)), ExtRational::infinity());
        assert_eq!(b.apply(&ExtRational::infinity()), q(0, 1));
    }

    #[test]
    fn compose_empty_overlap_is_zero() {
        let a_inv = make_generator(GeneratorName::AInv, Variant::N2);
        let b = make_generator(GeneratorName::B, Variant::N2);
        assert!(a_inv.compose(&b).is_zero());
        let b_inv = make_generator(GeneratorName::BInv, Variant::N2);
        let a = make_generator(GeneratorName::A, Variant::N2);
        assert!(b_inv.compose(&a).is_zero());
    }

    #[test]
    fn inverse_pairs_restrict_to_identity() {
        for name in [GeneratorName::A, GeneratorName::B, GeneratorName::C] {
            for variant in [Variant::N2, Variant::N3] {
                let g = make_generator(name, variant);
                let inv = g.inverse().unwrap();
                let left = inv.compose(&g);
                assert_eq!(left, PartialLft::identity_on(g.domain().unwrap().clone()));
                let right = g.compose(&inv);
                assert_eq!(
                    right,
                    PartialLft::identity_on(g.image_interval().unwrap())
                );
            }
        }
    }

    #[test]
    fn invert_c3_matches_expected_matrix() {
        let c3 = make_generator(GeneratorName::C, Variant::N3);
        let inv = c3.inverse().unwrap();
        assert_eq!(inv.matrix().unwrap(), &ProjMatrix::new(1, 0, -2, 3));
        assert_eq!(inv.domain().unwrap(), &Interval::unit());
        // Involution.
        assert_eq!(inv.inverse().unwrap(), c3);
    }

    #[test]
    fn normalization_is_canonical() {
        let m1 = ProjMatrix::new(2, 0, 4, 2);
        let m2 = ProjMatrix::new(1, 0, 2, 1);
        assert_eq!(m1, m2);
        let m3 = ProjMatrix::new(-1, 0, -2, -1);
        assert_eq!(m3, m2);
    }

    #[test]
    fn detect_c_power_examples() {
        assert_eq!(detect_c_power(&ProjMatrix::identity(), Variant::N2), Some(0));
        assert_eq!(detect_c_power(&ProjMatrix::new(4, 0, 3, 1), Variant::N2), Some(2));
        assert_eq!(detect_c_power(&ProjMatrix::new(1, 0, 1, 1), Variant::N2), None);
        // 4 = 2^2 is not a power of 3.
        assert_eq!(detect_c_power(&ProjMatrix::new(4, 0, 3, 1), Variant::N3), None);
    }

    #[test]
    fn detect_c_power_roundtrip_large_exponents() {
        for variant in [Variant::N2, Variant::N3] {
            let c = make_generator(GeneratorName::C, variant);
            let c = c.matrix().unwrap();
            for k in -20i64..=20 {
                assert_eq!(detect_c_power(&c.pow(k), variant), Some(k), "k = {k}");
            }
        }
    }

    #[test]
    fn detect_power_of_generic_base() {
        let c4 = ProjMatrix::new(4, 0, 3, 1);
        assert_eq!(detect_power_of(&c4.pow(3), &c4), Some(3));
        assert_eq!(detect_power_of(&c4.pow(-2), &c4), Some(-2));
        assert_eq!(detect_power_of(&ProjMatrix::new(1, 0, 1, 1), &c4), None);
    }

    #[test]
    fn extended_order() {
        assert!(q(1, 2) < q(2, 3));
        assert!(q(-1, 2) < q(0, 1));
        assert!(q(5, 1) < ExtRational::infinity());
        assert_eq!(ExtRational::infinity(), ExtRational::infinity());
    }
}
