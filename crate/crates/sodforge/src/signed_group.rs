//! Signed groups presented by anticommuting generators, and signed
//! permutation matrices.
//!
//! A signed group is a group with a distinguished central element `-1` of
//! order two.  Every group handled here is given by a presentation with
//! generators `g_1, ..., g_N` such that
//!
//! * `g_a^2 = square_signs[a] * 1` with `square_signs[a]` either `+1` or `-1`,
//! * `g_a g_b = - g_b g_a` for `a != b`.
//!
//! Consequently every element has the unique canonical form
//! `sign * g_{a_1} g_{a_2} ... g_{a_k}` with `a_1 < a_2 < ... < a_k`, which is
//! stored as a sign and a bitmask of generator indices.  The signed group has
//! `2^(N+1)` elements and order `2^N` (elements counted up to sign).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One element in canonical form.  Bit `a` of `mask` is set when generator
/// `g_{a+1}` occurs in the canonical word; `sign` is `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub sign: i8,
    pub mask: u32,
}

impl GroupElement {
    pub fn new(sign: i8, mask: u32) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        GroupElement { sign, mask }
    }

    pub fn identity() -> Self {
        GroupElement { sign: 1, mask: 0 }
    }

    pub fn minus_one() -> Self {
        GroupElement { sign: -1, mask: 0 }
    }

    pub fn negate(self) -> Self {
        GroupElement { sign: -self.sign, mask: self.mask }
    }

    /// Number of generators in the canonical word.
    pub fn word_length(self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_scalar(self) -> bool {
        self.mask == 0
    }
}

impl fmt::Display for GroupElement {
    /// Canonical string form: `+1`, `-1`, `+g1*g3`, `-g2` (1-indexed).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.sign >= 0 { '+' } else { '-' })?;
        if self.mask == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for a in 0..32 {
            if self.mask >> a & 1 == 1 {
                if !first {
                    write!(f, "*")?;
                }
                write!(f, "g{}", a + 1)?;
                first = false;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for GroupElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad group element `{s}`"));
        let (sign, rest) = match s.as_bytes().first() {
            Some(b'+') => (1, &s[1..]),
            Some(b'-') => (-1, &s[1..]),
            Some(_) => (1, s),
            None => return Err(bad()),
        };
        if rest == "1" {
            return Ok(GroupElement { sign, mask: 0 });
        }
        let mut mask = 0u32;
        for part in rest.split('*') {
            let idx: u32 = part
                .strip_prefix('g')
                .and_then(|d| d.parse().ok())
                .ok_or_else(bad)?;
            if idx == 0 || idx > 32 {
                return Err(bad());
            }
            let bit = 1u32 << (idx - 1);
            if mask & bit != 0 {
                return Err(Error::Parse(format!("repeated generator in `{s}`")));
            }
            mask |= bit;
        }
        Ok(GroupElement { sign, mask })
    }
}

/// A presentation of the Clifford-like family: the generator squares are the
/// only data, anticommutation between distinct generators is implied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub name: String,
    /// `square_signs[a] = s` means `g_{a+1}^2 = s * 1`.
    pub square_signs: Vec<i8>,
}

impl GroupPresentation {
    pub fn new(name: impl Into<String>, square_signs: Vec<i8>) -> Self {
        assert!(square_signs.len() <= 32, "at most 32 generators supported");
        assert!(square_signs.iter().all(|&s| s == 1 || s == -1));
        GroupPresentation { name: name.into(), square_signs }
    }

    /// Trivial signed group `{+1, -1}`: no generators.
    pub fn s_r() -> Self {
        Self::new("SR", vec![])
    }

    /// One generator `i` with `i^2 = -1`; the complex unit group.
    pub fn s_c() -> Self {
        Self::new("SC", vec![-1])
    }

    /// Two anticommuting generators `j, k` squaring to `-1`; the quaternion
    /// group with `jk` as the third imaginary unit.
    pub fn s_q() -> Self {
        Self::new("SQ", vec![-1, -1])
    }

    /// `2^n - 1` pairwise anticommuting generators, all squaring to `-1`.
    pub fn s_n(n: u32) -> Self {
        assert!((1..=5).contains(&n), "S(n) supported for 1 <= n <= 5");
        Self::new(format!("S({n})"), vec![-1; (1 << n) - 1])
    }

    /// `2^n - 3` pairwise anticommuting generators: the first squares to `+1`,
    /// the remaining `2^n - 4` square to `-1`.
    pub fn s_prime(n: u32) -> Self {
        assert!((3..=5).contains(&n), "S'(n) supported for 3 <= n <= 5");
        let mut signs = vec![-1; (1 << n) - 3];
        signs[0] = 1;
        Self::new(format!("Sprime({n})"), signs)
    }

    /// Look up a presentation by its serialized name.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "SR" => Ok(Self::s_r()),
            "SC" => Ok(Self::s_c()),
            "SQ" => Ok(Self::s_q()),
            _ => {
                if let Some(n) = name.strip_prefix("S(").and_then(|r| r.strip_suffix(')')) {
                    let n: u32 = n.parse().map_err(|_| Error::Parse(format!("bad group name `{name}`")))?;
                    if (1..=5).contains(&n) {
                        return Ok(Self::s_n(n));
                    }
                }
                if let Some(n) = name.strip_prefix("Sprime(").and_then(|r| r.strip_suffix(')')) {
                    let n: u32 = n.parse().map_err(|_| Error::Parse(format!("bad group name `{name}`")))?;
                    if (3..=5).contains(&n) {
                        return Ok(Self::s_prime(n));
                    }
                }
                Err(Error::Parse(format!("unknown group name `{name}`")))
            }
        }
    }

    pub fn generator_count(&self) -> usize {
        self.square_signs.len()
    }

    /// Number of elements up to sign.
    pub fn order(&self) -> u64 {
        1u64 << self.generator_count()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity()
    }

    /// `a`-th generator, 0-indexed.
    pub fn generator(&self, a: usize) -> GroupElement {
        assert!(a < self.generator_count(), "generator index out of range");
        GroupElement { sign: 1, mask: 1 << a }
    }

    fn check_mask(&self, e: GroupElement) {
        debug_assert!(
            u64::from(e.mask) < 1u64 << self.generator_count(),
            "element uses generators outside the presentation"
        );
    }

    /// Product in canonical form.
    ///
    /// Concatenating two ascending words and re-sorting costs one sign flip
    /// per transposition of distinct generators; each repeated generator then
    /// collapses to its square sign.  The transposition count is
    /// `#{(a, b) : a in lhs, b in rhs, a > b}`.
    pub fn multiply(&self, lhs: GroupElement, rhs: GroupElement) -> GroupElement {
        self.check_mask(lhs);
        self.check_mask(rhs);
        let mut swaps = 0u32;
        let mut upper = lhs.mask >> 1;
        while upper != 0 {
            swaps += (upper & rhs.mask).count_ones();
            upper >>= 1;
        }
        let mut sign = lhs.sign * rhs.sign * if swaps % 2 == 0 { 1 } else { -1 };
        let mut shared = lhs.mask & rhs.mask;
        while shared != 0 {
            let a = shared.trailing_zeros() as usize;
            sign *= self.square_signs[a];
            shared &= shared - 1;
        }
        GroupElement { sign, mask: lhs.mask ^ rhs.mask }
    }

    /// Group inverse.  For a canonical word of length `k` the reversal costs
    /// `k(k-1)/2` transpositions and each generator inverts to `square_sign *
    /// itself`, so the inverse keeps the mask and adjusts only the sign.
    pub fn conjugate(&self, e: GroupElement) -> GroupElement {
        self.check_mask(e);
        let k = e.word_length();
        let mut sign = e.sign * if (k * (k.wrapping_sub(1)) / 2) % 2 == 0 { 1 } else { -1 };
        let mut mask = e.mask;
        while mask != 0 {
            let a = mask.trailing_zeros() as usize;
            sign *= self.square_signs[a];
            mask &= mask - 1;
        }
        GroupElement { sign, mask: e.mask }
    }

    /// All `2^(N+1)` elements in a fixed order: masks ascending, `+` before
    /// `-`.  Guarded so that nobody materializes a huge group by accident.
    pub fn enumerate(&self, bound: usize) -> Result<Vec<GroupElement>> {
        let n = self.generator_count();
        if n > bound {
            return Err(Error::EnumerationBound { generators: n, bound });
        }
        let mut out = Vec::with_capacity(2 << n);
        for mask in 0..(1u32 << n) {
            out.push(GroupElement { sign: 1, mask });
            out.push(GroupElement { sign: -1, mask });
        }
        Ok(out)
    }
}

/// Default generator bound for [`GroupPresentation::enumerate`].
pub const ENUMERATE_BOUND: usize = 12;

/// A monomial matrix with entries in `{0, +1, -1}`, exactly one nonzero per
/// row and per column.  Row `r` has its nonzero in column `perm[r]` with value
/// `signs[r]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPermMatrix {
    pub order: usize,
    pub perm: Vec<u32>,
    pub signs: Vec<i8>,
}

impl SignedPermMatrix {
    pub fn new(perm: Vec<u32>, signs: Vec<i8>) -> Self {
        let order = perm.len();
        assert_eq!(signs.len(), order);
        assert!(signs.iter().all(|&s| s == 1 || s == -1));
        let mut seen = vec![false; order];
        for &c in &perm {
            assert!((c as usize) < order && !seen[c as usize], "not a permutation");
            seen[c as usize] = true;
        }
        SignedPermMatrix { order, perm, signs }
    }

    pub fn identity(order: usize) -> Self {
        SignedPermMatrix {
            order,
            perm: (0..order as u32).collect(),
            signs: vec![1; order],
        }
    }

    pub fn entry(&self, r: usize, c: usize) -> i8 {
        if self.perm[r] as usize == c {
            self.signs[r]
        } else {
            0
        }
    }

    pub fn multiply(&self, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order, "order mismatch");
        let mut perm = Vec::with_capacity(self.order);
        let mut signs = Vec::with_capacity(self.order);
        for r in 0..self.order {
            let k = self.perm[r] as usize;
            perm.push(rhs.perm[k]);
            signs.push(self.signs[r] * rhs.signs[k]);
        }
        SignedPermMatrix { order: self.order, perm, signs }
    }

    pub fn transpose(&self) -> Self {
        let mut perm = vec![0u32; self.order];
        let mut signs = vec![1i8; self.order];
        for r in 0..self.order {
            perm[self.perm[r] as usize] = r as u32;
            signs[self.perm[r] as usize] = self.signs[r];
        }
        SignedPermMatrix { order: self.order, perm, signs }
    }

    pub fn negate(&self) -> Self {
        SignedPermMatrix {
            order: self.order,
            perm: self.perm.clone(),
            signs: self.signs.iter().map(|&s| -s).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(r, &c)| c as usize == r)
            && self.signs.iter().all(|&s| s == 1)
    }

    pub fn is_skew(&self) -> bool {
        *self == self.transpose().negate()
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    /// Supports intersect nowhere (entrywise product is the zero matrix).
    pub fn disjoint(&self, rhs: &Self) -> bool {
        assert_eq!(self.order, rhs.order, "order mismatch");
        (0..self.order).all(|r| self.perm[r] != rhs.perm[r])
    }

    /// `A B^T = -(B A^T)`.
    pub fn anti_amicable(&self, rhs: &Self) -> bool {
        self.multiply(&rhs.transpose()) == rhs.multiply(&self.transpose()).negate()
    }

    /// `A B^T = B A^T`.
    pub fn amicable(&self, rhs: &Self) -> bool {
        self.multiply(&rhs.transpose()) == rhs.multiply(&self.transpose())
    }

    /// Kronecker product; `(A (x) B)(C (x) D) = AC (x) BD`.
    pub fn kronecker(&self, rhs: &Self) -> Self {
        let m = rhs.order;
        let order = self.order * m;
        let mut perm = Vec::with_capacity(order);
        let mut signs = Vec::with_capacity(order);
        for ra in 0..self.order {
            for rb in 0..m {
                perm.push(self.perm[ra] * m as u32 + rhs.perm[rb]);
                signs.push(self.signs[ra] * rhs.signs[rb]);
            }
        }
        SignedPermMatrix { order, perm, signs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> GroupPresentation {
        GroupPresentation::s_q()
    }

    // j = g1, k = g2, jk = g1 g2 in the quaternion presentation.
    fn j() -> GroupElement {
        GroupElement::new(1, 0b01)
    }
    fn k() -> GroupElement {
        GroupElement::new(1, 0b10)
    }
    fn jk() -> GroupElement {
        GroupElement::new(1, 0b11)
    }

    #[test]
    fn quaternion_products() {
        let g = q();
        assert_eq!(g.multiply(j(), k()), jk());
        assert_eq!(g.multiply(k(), j()), jk().negate());
        assert_eq!(g.multiply(j(), j()), GroupElement::minus_one());
        assert_eq!(g.multiply(jk(), jk()), GroupElement::minus_one());
        // j * jk = j^2 k = -k
        assert_eq!(g.multiply(j(), jk()), k().negate());
    }

    #[test]
    fn s_prime_first_generator_squares_to_plus_one() {
        let g = GroupPresentation::s_prime(4);
        assert_eq!(g.generator_count(), 13);
        let s = g.generator(0);
        assert_eq!(g.multiply(s, s), GroupElement::identity());
        let s1 = g.generator(1);
        assert_eq!(g.multiply(s1, s1), GroupElement::minus_one());
        // s and s1 anticommute.
        assert_eq!(g.multiply(s, s1), g.multiply(s1, s).negate());
    }

    #[test]
    fn conjugate_examples() {
        let c = GroupPresentation::s_c();
        let i = c.generator(0);
        assert_eq!(c.conjugate(i), i.negate());

        let g = q();
        assert_eq!(g.conjugate(jk()), jk().negate());
        assert_eq!(g.conjugate(GroupElement::identity()), GroupElement::identity());
        assert_eq!(g.conjugate(GroupElement::minus_one()), GroupElement::minus_one());
    }

    #[test]
    fn conjugate_is_group_inverse() {
        let g = q();
        for e in g.enumerate(ENUMERATE_BOUND).unwrap() {
            assert_eq!(g.multiply(e, g.conjugate(e)), GroupElement::identity());
            assert_eq!(g.multiply(g.conjugate(e), e), GroupElement::identity());
            // Involution.
            assert_eq!(g.conjugate(g.conjugate(e)), e);
        }
    }

    #[test]
    fn conjugate_is_anti_homomorphism() {
        let g = q();
        let all = g.enumerate(ENUMERATE_BOUND).unwrap();
        for &a in &all {
            for &b in &all {
                assert_eq!(
                    g.conjugate(g.multiply(a, b)),
                    g.multiply(g.conjugate(b), g.conjugate(a))
                );
            }
        }
    }

    #[test]
    fn associativity_exhaustive_sq() {
        let g = q();
        let all = g.enumerate(ENUMERATE_BOUND).unwrap();
        for &a in &all {
            for &b in &all {
                for &c in &all {
                    assert_eq!(
                        g.multiply(g.multiply(a, b), c),
                        g.multiply(a, g.multiply(b, c))
                    );
                }
            }
        }
    }

    #[test]
    fn associativity_random_s4() {
        use rand::{Rng, SeedableRng};
        let g = GroupPresentation::s_n(4);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let top = 1u32 << g.generator_count();
        for _ in 0..2000 {
            let e = |rng: &mut rand_chacha::ChaCha8Rng| GroupElement {
                sign: if rng.gen::<bool>() { 1 } else { -1 },
                mask: rng.gen_range(0..top),
            };
            let (a, b, c) = (e(&mut rng), e(&mut rng), e(&mut rng));
            assert_eq!(g.multiply(g.multiply(a, b), c), g.multiply(a, g.multiply(b, c)));
        }
    }

    #[test]
    fn enumerate_counts_and_uniqueness() {
        for (g, n) in [
            (GroupPresentation::s_r(), 2),
            (GroupPresentation::s_c(), 4),
            (GroupPresentation::s_q(), 8),
        ] {
            let all = g.enumerate(ENUMERATE_BOUND).unwrap();
            assert_eq!(all.len(), n);
            let mut seen = std::collections::HashSet::new();
            for e in all {
                assert!(seen.insert(e), "duplicate canonical form");
            }
        }
        // The bound is enforced.
        let big = GroupPresentation::s_n(4);
        assert!(big.enumerate(ENUMERATE_BOUND).is_err());
        assert_eq!(big.enumerate(15).unwrap().len(), 1 << 16);
    }

    #[test]
    fn element_strings_round_trip() {
        let cases = ["+1", "-1", "+g1*g3", "-g2", "+g2*g5*g13"];
        for s in cases {
            let e: GroupElement = s.parse().unwrap();
            assert_eq!(e.to_string(), s);
        }
        assert!("g0".parse::<GroupElement>().is_err());
        assert!("+g1*g1".parse::<GroupElement>().is_err());
        assert!("".parse::<GroupElement>().is_err());
        // Missing sign defaults to +.
        assert_eq!("g2".parse::<GroupElement>().unwrap(), GroupElement::new(1, 0b10));
    }

    fn r2() -> SignedPermMatrix {
        // [[0,1],[-1,0]]
        SignedPermMatrix::new(vec![1, 0], vec![1, -1])
    }

    #[test]
    fn signed_perm_basics() {
        let r = r2();
        assert!(r.is_skew());
        assert!(!r.is_symmetric());
        let i2 = SignedPermMatrix::identity(2);
        // R * R = -I
        assert_eq!(r.multiply(&r), i2.negate());
        // A skew matrix is anti-amicable with the identity ...
        assert!(r.anti_amicable(&i2));
        // ... but not with itself: A A^T = -A A^T would force A = 0.
        assert!(!r.anti_amicable(&r));
        assert!(r.amicable(&r));
        assert!(r.disjoint(&i2));
    }

    #[test]
    fn kronecker_mixed_product() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut random_sp = |order: usize| {
            let mut perm: Vec<u32> = (0..order as u32).collect();
            for i in (1..order).rev() {
                let j = rng.gen_range(0..=i);
                perm.swap(i, j);
            }
            let signs = (0..order).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect();
            SignedPermMatrix::new(perm, signs)
        };
        for _ in 0..20 {
            let (a, c) = (random_sp(4), random_sp(4));
            let (b, d) = (random_sp(3), random_sp(3));
            assert_eq!(
                a.kronecker(&b).multiply(&c.kronecker(&d)),
                a.multiply(&c).kronecker(&b.multiply(&d))
            );
        }
    }

    #[test]
    fn signed_perms_closed_under_product_and_transpose() {
        let r = r2();
        let m = r.kronecker(&SignedPermMatrix::identity(3));
        let t = m.transpose();
        assert_eq!(m.multiply(&t), SignedPermMatrix::identity(6));
        assert_eq!(t.transpose(), m);
    }

    #[test]
    fn group_names_round_trip() {
        for g in [
            GroupPresentation::s_r(),
            GroupPresentation::s_c(),
            GroupPresentation::s_q(),
            GroupPresentation::s_n(3),
            GroupPresentation::s_prime(4),
        ] {
            assert_eq!(GroupPresentation::by_name(&g.name).unwrap(), g);
        }
        assert!(GroupPresentation::by_name("S(9)").is_err());
    }
}
