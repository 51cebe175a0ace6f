//! Matrix families and full designs of power-of-two order: the Radon-Hurwitz
//! function, maximal anti-amicable families of signed permutations, Sylvester
//! Hadamard matrices, and two block constructions of full signed group
//! designs.

use crate::error::{Error, Result};
use crate::ring_matrix::DesignMatrix;
use crate::signed_group::{GroupElement, GroupPresentation, SignedPermMatrix};

/// Largest `t` accepted by the order-`2^t` family builders.
pub const MAX_FAMILY_LOG2: u32 = 12;

/// Radon's function: writing `n = 2^(4c+d) * odd` with `0 <= d < 4`,
/// `rho(n) = 8c + 2^d`.  This is the size of a maximal family of pairwise
/// anti-amicable signed permutations of order `n` (identity included), and
/// the maximum number of variables of an orthogonal design of order `n`.
pub fn rho(n: u64) -> u64 {
    assert!(n > 0, "rho is defined on positive integers");
    let a = n.trailing_zeros();
    u64::from(8 * (a / 4)) + (1u64 << (a % 4))
}

/// Dense integer matrix; the library only needs it for Hadamard matrices and
/// their checks, so the API is deliberately small.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    order: usize,
    data: Vec<i32>,
}

impl IntMatrix {
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> i32) -> Self {
        let data = (0..order * order).map(|i| f(i / order, i % order)).collect();
        IntMatrix { order, data }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, r: usize, c: usize) -> i32 {
        self.data[r * self.order + c]
    }

    pub fn kronecker(&self, rhs: &Self) -> Self {
        let m = rhs.order;
        Self::from_fn(self.order * m, |r, c| {
            self.entry(r / m, c / m) * rhs.entry(r % m, c % m)
        })
    }

    /// All entries `+-1` and `H H^T = n I`.
    pub fn check_hadamard(&self) -> Result<()> {
        let n = self.order;
        for r in 0..n {
            for c in 0..n {
                if self.entry(r, c).abs() != 1 {
                    return Err(Error::NotHadamard { row: r, col: c });
                }
            }
        }
        for r in 0..n {
            for s in r..n {
                let dot: i64 = (0..n)
                    .map(|c| i64::from(self.entry(r, c)) * i64::from(self.entry(s, c)))
                    .sum();
                let expected = if r == s { n as i64 } else { 0 };
                if dot != expected {
                    return Err(Error::NotHadamard { row: r, col: s });
                }
            }
        }
        Ok(())
    }
}

/// `2^t x 2^t` Sylvester Hadamard matrix: `H(0) = [1]` and
/// `H(t) = [[H, H], [H, -H]]`, equivalently entry `(r, c)` is
/// `(-1)^popcount(r & c)`.
pub fn sylvester_hadamard(t: u32) -> IntMatrix {
    assert!(t <= MAX_FAMILY_LOG2, "order 2^{t} is past the supported bound");
    IntMatrix::from_fn(1 << t, |r, c| if (r & c).count_ones() % 2 == 0 { 1 } else { -1 })
}

// ---- Cayley-Dickson doubling ----
//
// In the 2^k-dimensional algebras reached by doubling the reals (complexes,
// quaternions, octonions) the basis units multiply as e_i e_j = +-e_{i xor j},
// so left multiplication by a unit is a signed permutation.  Up to the
// octonions the norm is multiplicative, which is exactly what makes the
// imaginary units' matrices skew, disjoint, and pairwise anticommuting.

fn cd_conjugate(x: &[i64]) -> Vec<i64> {
    let mut out = x.to_vec();
    for v in &mut out[1..] {
        *v = -*v;
    }
    out
}

fn cd_multiply(a: &[i64], b: &[i64]) -> Vec<i64> {
    let dim = a.len();
    if dim == 1 {
        return vec![a[0] * b[0]];
    }
    let h = dim / 2;
    let (a1, a2) = a.split_at(h);
    let (b1, b2) = b.split_at(h);
    // (a1, a2)(b1, b2) = (a1 b1 - conj(b2) a2, b2 a1 + a2 conj(b1))
    let left: Vec<i64> = cd_multiply(a1, b1)
        .iter()
        .zip(cd_multiply(&cd_conjugate(b2), a2))
        .map(|(x, y)| x - y)
        .collect();
    let right: Vec<i64> = cd_multiply(b2, a1)
        .iter()
        .zip(cd_multiply(a2, &cd_conjugate(b1)))
        .map(|(x, y)| x + y)
        .collect();
    let mut out = left;
    out.extend(right);
    out
}

/// Left-multiplication matrices of the imaginary basis units of the
/// `2^k`-dimensional algebra, `k <= 3`.
fn cayley_dickson_units(k: u32) -> Vec<SignedPermMatrix> {
    assert!(k <= 3, "doubling past the octonions loses the norm identity");
    let dim = 1usize << k;
    let basis = |i: usize| {
        let mut v = vec![0i64; dim];
        v[i] = 1;
        v
    };
    (1..dim)
        .map(|i| {
            let mut perm = vec![0u32; dim];
            let mut signs = vec![0i8; dim];
            for c in 0..dim {
                let prod = cd_multiply(&basis(i), &basis(c));
                let r = i ^ c;
                debug_assert!(prod.iter().enumerate().all(|(p, &v)| (p == r) == (v != 0)));
                perm[r] = c as u32;
                signs[r] = prod[r] as i8;
            }
            SignedPermMatrix::new(perm, signs)
        })
        .collect()
}

fn letter_r() -> SignedPermMatrix {
    SignedPermMatrix::new(vec![1, 0], vec![1, -1])
}

fn letter_p() -> SignedPermMatrix {
    SignedPermMatrix::new(vec![1, 0], vec![1, 1])
}

fn letter_d() -> SignedPermMatrix {
    SignedPermMatrix::new(vec![0, 1], vec![1, -1])
}

/// The order-16 generator kit: eight skew matrices (`D (x) O_i` for the seven
/// octonion units plus `R (x) I_8`) and the symmetric `P (x) I_8`, which
/// anticommutes with all eight and squares to `+I`.  Tensoring the symmetric
/// one with any smaller skew family splices that family in without breaking
/// disjointness, because skew signed permutations have empty diagonals.
fn order16_kit() -> (Vec<SignedPermMatrix>, SignedPermMatrix) {
    let id8 = SignedPermMatrix::identity(8);
    let d = letter_d();
    let mut skew: Vec<SignedPermMatrix> = cayley_dickson_units(3)
        .iter()
        .map(|o| d.kronecker(o))
        .collect();
    skew.push(letter_r().kronecker(&id8));
    (skew, letter_p().kronecker(&id8))
}

/// A maximal family of signed permutations of order `2^t`: the identity plus
/// `rho(2^t) - 1` skew matrices, pairwise disjoint and pairwise
/// anti-amicable (equivalently: the skew members anticommute and square to
/// `-I`).
///
/// `t <= 3` uses the complex/quaternion/octonion unit matrices directly;
/// every four further doublings wrap the order-16 kit around the smaller
/// family, adding eight members, which matches `rho(16 n) = rho(n) + 8`.
pub fn hurwitz_radon_family(t: u32) -> Result<Vec<SignedPermMatrix>> {
    if t > MAX_FAMILY_LOG2 {
        return Err(Error::Unsupported(format!(
            "order 2^{t} is past the supported bound 2^{MAX_FAMILY_LOG2}"
        )));
    }
    let order = 1usize << t;
    let mut out = vec![SignedPermMatrix::identity(order)];
    if t == 0 {
        return Ok(out);
    }
    if t <= 3 {
        out.extend(cayley_dickson_units(t));
        return Ok(out);
    }
    let (kit, splice) = order16_kit();
    let inner = hurwitz_radon_family(t - 4)?;
    let pad = SignedPermMatrix::identity(1 << (t - 4));
    out.extend(kit.iter().map(|k| k.kronecker(&pad)));
    out.extend(inner.iter().skip(1).map(|a| splice.kronecker(a)));
    Ok(out)
}

/// The `2^n` symmetric permutation matrices `{I, P}^(x n)` in binary order
/// (most significant factor first), i.e. member `w` maps row `r` to column
/// `r xor w`.  They commute pairwise, are pairwise disjoint, and sum to the
/// all-ones matrix.
pub fn ip_tensor_family(n: u32) -> Vec<SignedPermMatrix> {
    assert!(n <= MAX_FAMILY_LOG2, "order 2^{n} is past the supported bound");
    let i2 = SignedPermMatrix::identity(2);
    let p2 = letter_p();
    (0..1u64 << n)
        .map(|w| {
            let mut m = SignedPermMatrix::identity(1);
            for bit in (0..n).rev() {
                m = m.kronecker(if w >> bit & 1 == 1 { &p2 } else { &i2 });
            }
            m
        })
        .collect()
}

/// Full design of order `2^n` in `2^n` variables of type `(1, ..., 1)` over
/// the presentation with `2^n - 1` anticommuting generators of square `-1`:
/// entry `(r, c)` is `s_w x_w` with `w = r xor c`, and plain `x_0` on the
/// diagonal.
pub fn sod_power2(n: u32) -> Result<DesignMatrix> {
    if !(1..=5).contains(&n) {
        return Err(Error::Unsupported(format!(
            "sod_power2 supports 1 <= n <= 5, got {n}"
        )));
    }
    let pres = GroupPresentation::s_n(n);
    let order = 1usize << n;
    let identity = pres.identity();
    let entry_pres = pres.clone();
    Ok(DesignMatrix::from_fn(
        entry_pres,
        order,
        vec![1; order],
        |r, c| {
            let w = r ^ c;
            if w == 0 {
                Some((identity, 0))
            } else {
                Some((pres.generator(w - 1), w))
            }
        },
    ))
}

/// A matrix whose entries are zero or a single group element.  Closed under
/// Kronecker products, which is all the block constructions need; anything
/// requiring sums of elements goes through `RingMatrix` instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct MonomialMatrix {
    pub(crate) order: usize,
    entries: Vec<Option<GroupElement>>,
}

impl MonomialMatrix {
    pub(crate) fn entry(&self, r: usize, c: usize) -> Option<GroupElement> {
        self.entries[r * self.order + c]
    }

    pub(crate) fn kronecker(&self, pres: &GroupPresentation, rhs: &Self) -> Self {
        let m = rhs.order;
        let order = self.order * m;
        let mut entries = vec![None; order * order];
        for ra in 0..self.order {
            for ca in 0..self.order {
                let Some(ea) = self.entry(ra, ca) else { continue };
                for rb in 0..m {
                    for cb in 0..m {
                        let Some(eb) = rhs.entry(rb, cb) else { continue };
                        entries[(ra * m + rb) * order + (ca * m + cb)] =
                            Some(pres.multiply(ea, eb));
                    }
                }
            }
        }
        MonomialMatrix { order, entries }
    }
}

fn mono2(rows: [[Option<GroupElement>; 2]; 2]) -> MonomialMatrix {
    MonomialMatrix {
        order: 2,
        entries: rows.into_iter().flatten().collect(),
    }
}

/// The eleven order-32 blocks behind [`sod_amicable32`]: pairwise amicable,
/// pairwise disjoint, and supplementary.  The first eight run through the
/// `{I_s, P_s}` tensor cube in binary order; the last three put
/// `A (x) A (x) A` behind each nontrivial `{I, P}` pair, where
/// `A = [[s_1, 1], [1, s_1]]`.
pub(crate) fn amicable32_blocks(pres: &GroupPresentation) -> Vec<MonomialMatrix> {
    let one = Some(pres.identity());
    let s = Some(pres.generator(0));
    let s1 = Some(pres.generator(1));
    let id2 = mono2([[one, None], [None, one]]);
    let p2 = mono2([[None, one], [one, None]]);
    let id_s = mono2([[s, None], [None, s]]);
    let p_s = mono2([[None, s], [s, None]]);
    let a = mono2([[s1, one], [one, s1]]);

    let kron5 = |f: [&MonomialMatrix; 5]| -> MonomialMatrix {
        f[1..]
            .iter()
            .fold(f[0].clone(), |acc, m| acc.kronecker(pres, m))
    };

    vec![
        kron5([&id2, &id2, &id_s, &id_s, &id_s]),
        kron5([&id2, &id2, &id_s, &id_s, &p_s]),
        kron5([&id2, &id2, &id_s, &p_s, &id_s]),
        kron5([&id2, &id2, &p_s, &id_s, &id_s]),
        kron5([&id2, &id2, &id_s, &p_s, &p_s]),
        kron5([&id2, &id2, &p_s, &id_s, &p_s]),
        kron5([&id2, &id2, &p_s, &p_s, &id_s]),
        kron5([&id2, &id2, &p_s, &p_s, &p_s]),
        kron5([&p2, &id2, &a, &a, &a]),
        kron5([&id2, &p2, &a, &a, &a]),
        kron5([&p2, &p2, &a, &a, &a]),
    ]
}

/// Full design of order 32 and type `(1,1,1,1,1,1,1,1,8,8,8)` over the
/// 13-generator presentation whose first generator squares to `+1`: variable
/// `x_i` rides block `i` of [`amicable32_blocks`], tagged on the right with
/// generator `s_{i+2}` so that distinct blocks' cross terms cancel.
pub fn sod_amicable32() -> DesignMatrix {
    let pres = GroupPresentation::s_prime(4);
    let blocks = amicable32_blocks(&pres);
    let mut design = DesignMatrix::new(
        pres.clone(),
        32,
        vec![1, 1, 1, 1, 1, 1, 1, 1, 8, 8, 8],
    );
    for (v, block) in blocks.iter().enumerate() {
        let tag = pres.generator(v + 2);
        for r in 0..32 {
            for c in 0..32 {
                if let Some(e) = block.entry(r, c) {
                    debug_assert!(design.entry(r, c).is_none(), "blocks must not overlap");
                    design.set(r, c, Some((pres.multiply(e, tag), v)));
                }
            }
        }
    }
    design
}

/// Variable blocks (0-indexed) whose merging turns [`sod_amicable32`] into a
/// design of type `(1, 1, 1, 9, 9, 11)` in six variables.
pub fn amicable32_partition() -> Vec<Vec<usize>> {
    vec![
        vec![5],
        vec![6],
        vec![7],
        vec![0, 8],
        vec![1, 9],
        vec![2, 3, 4, 10],
    ]
}

/// [`sod_amicable32`] with the blocks of [`amicable32_partition`] merged:
/// a full design of order 32 and type `(1, 1, 1, 9, 9, 11)`.
pub fn sod_amicable32_equated() -> DesignMatrix {
    sod_amicable32()
        .equate_variables(&amicable32_partition())
        .expect("partition covers every variable exactly once")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring_matrix::{RingElement, RingMatrix, VarMonomial};

    #[test]
    fn rho_closed_form() {
        let expect = [
            (1, 1),
            (2, 2),
            (4, 4),
            (8, 8),
            (16, 9),
            (32, 10),
            (64, 12),
            (128, 16),
            (256, 17),
        ];
        for (n, r) in expect {
            assert_eq!(rho(n), r, "rho({n})");
        }
        // only the 2-part matters
        assert_eq!(rho(12), 4);
        assert_eq!(rho(3 << 8), 17);
        assert_eq!(rho(7), 1);
        // four doublings add eight
        for t in 0..20u32 {
            assert_eq!(rho(1u64 << (t + 4)), rho(1u64 << t) + 8);
        }
        // orders admitting a full design in 2^n variables
        for n in 3..=7u32 {
            let t = (1u64 << (n - 1)) - 1;
            assert_eq!(rho(1u64 << t), 1 << n);
        }
    }

    #[test]
    fn family_invariants_exhaustive() {
        for t in 0..=7u32 {
            let fam = hurwitz_radon_family(t).unwrap();
            assert_eq!(fam.len() as u64, rho(1u64 << t), "size at t={t}");
            assert!(fam[0].is_identity());
            for a in &fam {
                assert_eq!(a.order, 1 << t);
            }
            for a in &fam[1..] {
                assert!(a.is_skew());
                assert!(a.multiply(a).negate().is_identity(), "a^2 = -I");
            }
            for (i, a) in fam.iter().enumerate() {
                for b in &fam[i + 1..] {
                    assert!(a.disjoint(b));
                    assert!(a.anti_amicable(b));
                }
            }
        }
        assert!(hurwitz_radon_family(MAX_FAMILY_LOG2 + 1).is_err());
    }

    #[test]
    fn order_two_family_is_complex_multiplication() {
        let fam = hurwitz_radon_family(1).unwrap();
        assert_eq!(fam.len(), 2);
        assert_eq!(fam[1], SignedPermMatrix::new(vec![1, 0], vec![-1, 1]));
    }

    #[test]
    fn ip_family_is_the_xor_cube() {
        let fam = ip_tensor_family(3);
        assert_eq!(fam.len(), 8);
        for (w, m) in fam.iter().enumerate() {
            assert!(m.is_symmetric());
            assert!(m.signs.iter().all(|&s| s == 1));
            for r in 0..8u32 {
                assert_eq!(m.perm[r as usize], r ^ w as u32);
            }
        }
        for (i, a) in fam.iter().enumerate() {
            for b in &fam[i + 1..] {
                assert_eq!(a.multiply(b), b.multiply(a));
                assert!(a.amicable(b));
                assert!(a.disjoint(b));
            }
        }
    }

    #[test]
    fn sylvester_matches_block_recursion() {
        let h4 = sylvester_hadamard(2);
        let rows = [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]];
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(h4.entry(r, c), rows[r][c]);
            }
        }
        for t in 1..=6 {
            let whole = sylvester_hadamard(t);
            let split = sylvester_hadamard(1).kronecker(&sylvester_hadamard(t - 1));
            assert_eq!(whole, split);
            whole.check_hadamard().unwrap();
        }
    }

    #[test]
    fn hadamard_check_rejects_bad_matrices() {
        let h = sylvester_hadamard(2);
        let flipped = IntMatrix::from_fn(4, |r, c| if (r, c) == (0, 0) { -1 } else { h.entry(r, c) });
        assert!(flipped.check_hadamard().is_err());
        assert!(IntMatrix::from_fn(2, |_, _| 0).check_hadamard().is_err());
        assert!(IntMatrix::from_fn(3, |_, _| 1).check_hadamard().is_err());
    }

    #[test]
    fn power_of_two_design_verifies() {
        for n in 1..=5u32 {
            let d = sod_power2(n).unwrap();
            let order = 1usize << n;
            assert_eq!(d.order(), order);
            assert_eq!(d.claimed_type(), vec![1u64; order].as_slice());
            assert_eq!(d.nonzero_count(), order * order);
            let rep = d.verify_both();
            assert!(rep.ok, "n={n}: {:?}", rep.certificate);
        }
        assert!(sod_power2(0).is_err());
        assert!(sod_power2(6).is_err());
    }

    #[test]
    fn amicable32_design_verifies_with_predicted_layout() {
        let d = sod_amicable32();
        assert_eq!(d.order(), 32);
        assert_eq!(d.claimed_type(), &[1, 1, 1, 1, 1, 1, 1, 1, 8, 8, 8]);
        assert_eq!(d.nonzero_count(), 32 * 32);
        let rep = d.verify_both();
        assert!(rep.ok, "{:?}", rep.certificate);
        // which variable sits at (r, c) is determined by r xor c
        for r in 0..32usize {
            for c in 0..32usize {
                let (_, var) = d.entry(r, c).unwrap();
                let w = r ^ c;
                let expected = match w >> 3 {
                    0 => [0, 1, 2, 4, 3, 5, 6, 7][w & 7],
                    2 => 8,
                    1 => 9,
                    3 => 10,
                    _ => unreachable!(),
                };
                assert_eq!(var, expected, "at ({r}, {c})");
            }
        }
    }

    #[test]
    fn amicable32_blocks_are_amicable_disjoint_supplementary() {
        let pres = GroupPresentation::s_prime(4);
        let blocks = amicable32_blocks(&pres);
        let ring: Vec<RingMatrix> = blocks
            .iter()
            .map(|b| {
                RingMatrix::from_fn(32, |r, c| match b.entry(r, c) {
                    None => RingElement::zero(),
                    Some(e) => RingElement::term(e, VarMonomial::One, 1),
                })
            })
            .collect();
        let weights = [1i64, 1, 1, 1, 1, 1, 1, 1, 8, 8, 8];
        for (i, m) in ring.iter().enumerate() {
            let prod = m.multiply(&pres, &m.conj_transpose(&pres));
            for r in 0..32 {
                for c in 0..32 {
                    let expected = if r == c {
                        RingElement::scalar(weights[i])
                    } else {
                        RingElement::zero()
                    };
                    assert_eq!(*prod.entry(r, c), expected, "block {i} at ({r}, {c})");
                }
            }
        }
        for (i, a) in ring.iter().enumerate() {
            for b in &ring[i + 1..] {
                assert!(a.amicable(&pres, b), "blocks {i}..");
            }
        }
        // disjoint with supports summing to the all-ones pattern
        for r in 0..32 {
            for c in 0..32 {
                let hits = blocks.iter().filter(|b| b.entry(r, c).is_some()).count();
                assert_eq!(hits, 1);
            }
        }
    }

    #[test]
    fn amicable32_equated_type() {
        let d = sod_amicable32_equated();
        assert_eq!(d.var_count(), 6);
        assert_eq!(d.claimed_type(), &[1, 1, 1, 9, 9, 11]);
        let rep = d.verify_both();
        assert!(rep.ok, "{:?}", rep.certificate);
    }
}
