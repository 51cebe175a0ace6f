//! Design matrices: square matrices whose entries are zero or a group
//! element times a variable, together with exact verification of the
//! quadratic identity `X X* = (sum u_i x_i^2) I`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ring_matrix::{term_key, RingElement, VarMonomial};
use crate::signed_group::{GroupElement, GroupPresentation};

/// Orders up to this verify exactly by default; larger orders should go
/// through the randomized-modular check unless the caller explicitly asks
/// for the (slow) exact path.
pub const EXACT_VERIFY_DEFAULT_LIMIT: usize = 512;

/// A matrix entry: `None` for zero, otherwise a group element and a
/// 0-indexed variable.
pub type DesignEntry = Option<(GroupElement, usize)>;

/// Packed entry storage: `coef == 0` encodes the zero entry, otherwise
/// `coef` is the element sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct RawEntry {
    coef: i8,
    var: u16,
    mask: u32,
}

const ZERO_ENTRY: RawEntry = RawEntry { coef: 0, var: 0, mask: 0 };

/// Which product the verifier was looking at when it failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `X X*`
    Left,
    /// `X* X`
    Right,
}

/// First failing Gram entry: position and the exact nonzero residual
/// `gram(X)_{row,col} - expected`.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub side: Side,
    pub row: usize,
    pub col: usize,
    pub residual: RingElement,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub ok: bool,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignMatrix {
    presentation: GroupPresentation,
    order: usize,
    claimed_type: Vec<u64>,
    entries: Vec<RawEntry>,
}

impl DesignMatrix {
    /// Zero matrix of the given order; variables are `0..claimed_type.len()`.
    pub fn new(presentation: GroupPresentation, order: usize, claimed_type: Vec<u64>) -> Self {
        assert!(!claimed_type.is_empty(), "a design needs at least one variable");
        assert!(claimed_type.len() <= u16::MAX as usize);
        assert!(claimed_type.iter().all(|&u| u > 0), "type entries must be positive");
        DesignMatrix {
            presentation,
            order,
            claimed_type,
            entries: vec![ZERO_ENTRY; order * order],
        }
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn var_count(&self) -> usize {
        self.claimed_type.len()
    }

    pub fn claimed_type(&self) -> &[u64] {
        &self.claimed_type
    }

    pub fn entry(&self, r: usize, c: usize) -> DesignEntry {
        let raw = self.entries[r * self.order + c];
        if raw.coef == 0 {
            None
        } else {
            Some((GroupElement::new(raw.coef, raw.mask), raw.var as usize))
        }
    }

    pub fn set(&mut self, r: usize, c: usize, entry: DesignEntry) {
        self.entries[r * self.order + c] = match entry {
            None => ZERO_ENTRY,
            Some((e, var)) => {
                assert!(var < self.var_count(), "variable index out of range");
                debug_assert!(
                    u64::from(e.mask) < 1u64 << self.presentation.generator_count(),
                    "entry uses generators outside the presentation"
                );
                RawEntry { coef: e.sign, var: var as u16, mask: e.mask }
            }
        };
    }

    pub fn from_fn(
        presentation: GroupPresentation,
        order: usize,
        claimed_type: Vec<u64>,
        mut f: impl FnMut(usize, usize) -> DesignEntry,
    ) -> Self {
        let mut out = Self::new(presentation, order, claimed_type);
        for r in 0..order {
            for c in 0..order {
                let e = f(r, c);
                out.set(r, c, e);
            }
        }
        out
    }

    /// Conjugate transpose: `(X*)_{rc} = conj(X_{cr})` with the variable kept.
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(
            self.presentation.clone(),
            self.order,
            self.claimed_type.clone(),
            |r, c| {
                self.entry(c, r)
                    .map(|(e, v)| (self.presentation.conjugate(e), v))
            },
        )
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| e.coef != 0).count()
    }

    /// Exact Gram entry `sum_c X_{r,c} * conj(X_{s,c})` in the group ring.
    pub fn gram_pair(&self, r: usize, s: usize) -> RingElement {
        let mut out = RingElement::zero();
        for c in 0..self.order {
            let a = self.entries[r * self.order + c];
            if a.coef == 0 {
                continue;
            }
            let b = self.entries[s * self.order + c];
            if b.coef == 0 {
                continue;
            }
            let conj_b = self.presentation.conjugate(GroupElement::new(b.coef, b.mask));
            let prod = self.presentation.multiply(GroupElement::new(a.coef, a.mask), conj_b);
            out.add_term(
                prod.mask,
                VarMonomial::pair(a.var, b.var),
                i64::from(prod.sign),
            );
        }
        out
    }

    /// Full Gram matrix `X X*`; intended for small orders.
    pub fn gram(&self) -> Vec<Vec<RingElement>> {
        (0..self.order)
            .map(|r| (0..self.order).map(|s| self.gram_pair(r, s)).collect())
            .collect()
    }

    /// Expected diagonal `sum u_i x_i^2`.
    pub fn expected_diagonal(&self) -> RingElement {
        RingElement::from_type(&self.claimed_type)
    }

    fn verify_side(&self, side: Side) -> Option<Certificate> {
        let n = self.order;
        let expected: Vec<(u64, i64)> = self
            .expected_diagonal()
            .iter_terms()
            .map(|t| (term_key(t.mask, t.mono), t.coef))
            .collect();
        // The Gram matrix satisfies `gram(s,r) = conj(gram(r,s))`, so pairs
        // with r <= s cover the whole identity.
        let mut scratch: HashMap<u64, i64> = HashMap::new();
        for r in 0..n {
            for s in r..n {
                scratch.clear();
                for c in 0..n {
                    let a = self.entries[r * n + c];
                    if a.coef == 0 {
                        continue;
                    }
                    let b = self.entries[s * n + c];
                    if b.coef == 0 {
                        continue;
                    }
                    let conj_b = self
                        .presentation
                        .conjugate(GroupElement::new(b.coef, b.mask));
                    let prod = self
                        .presentation
                        .multiply(GroupElement::new(a.coef, a.mask), conj_b);
                    let key = term_key(prod.mask, VarMonomial::pair(a.var, b.var));
                    *scratch.entry(key).or_insert(0) += i64::from(prod.sign);
                }
                if r == s {
                    for &(key, coef) in &expected {
                        *scratch.entry(key).or_insert(0) -= coef;
                    }
                }
                if scratch.values().any(|&c| c != 0) {
                    let mut residual = RingElement::zero();
                    for (&key, &coef) in scratch.iter() {
                        residual.add_term(
                            (key >> 32) as u32,
                            VarMonomial::from_key(key as u32),
                            coef,
                        );
                    }
                    return Some(Certificate { side, row: r, col: s, residual });
                }
            }
        }
        None
    }

    /// Exact verification of `X X* = (sum u_i x_i^2) I`.
    pub fn verify(&self) -> VerifyReport {
        match self.verify_side(Side::Left) {
            None => VerifyReport { ok: true, certificate: None },
            Some(c) => VerifyReport { ok: false, certificate: Some(c) },
        }
    }

    /// Exact verification of both `X X*` and `X* X`.
    pub fn verify_both(&self) -> VerifyReport {
        if let Some(c) = self.verify_side(Side::Left) {
            return VerifyReport { ok: false, certificate: Some(c) };
        }
        let star = self.conj_transpose();
        if let Some(c) = star.verify_side(Side::Right) {
            return VerifyReport { ok: false, certificate: Some(c) };
        }
        VerifyReport { ok: true, certificate: None }
    }

    /// Merge variables along a partition of `0..var_count`.  Block `i` of the
    /// partition becomes the new variable `i` with type equal to the block
    /// sum.
    pub fn equate_variables(&self, partition: &[Vec<usize>]) -> Result<Self> {
        let k = self.var_count();
        let mut target = vec![usize::MAX; k];
        for (block_idx, block) in partition.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {block_idx} is empty")));
            }
            for &v in block {
                if v >= k {
                    return Err(Error::InvalidPartition(format!(
                        "variable {v} out of range (vars: {k})"
                    )));
                }
                if target[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("variable {v} appears twice")));
                }
                target[v] = block_idx;
            }
        }
        if let Some(v) = target.iter().position(|&t| t == usize::MAX) {
            return Err(Error::InvalidPartition(format!("variable {v} missing")));
        }
        let new_type: Vec<u64> = partition
            .iter()
            .map(|block| block.iter().map(|&v| self.claimed_type[v]).sum())
            .collect();
        let mut out = Self::new(self.presentation.clone(), self.order, new_type);
        for r in 0..self.order {
            for c in 0..self.order {
                if let Some((e, v)) = self.entry(r, c) {
                    out.set(r, c, Some((e, target[v])));
                }
            }
        }
        Ok(out)
    }

    fn check_perm(&self, perm: &[usize]) -> Result<()> {
        if perm.len() != self.order {
            return Err(Error::OrderMismatch { expected: self.order, found: perm.len() });
        }
        let mut seen = vec![false; self.order];
        for &p in perm {
            if p >= self.order || seen[p] {
                return Err(Error::Parse("not a permutation".into()));
            }
            seen[p] = true;
        }
        Ok(())
    }

    /// Row permutation: output row `r` is input row `perm[r]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Self> {
        self.check_perm(perm)?;
        Ok(Self::from_fn(
            self.presentation.clone(),
            self.order,
            self.claimed_type.clone(),
            |r, c| self.entry(perm[r], c),
        ))
    }

    /// Column permutation: output column `c` is input column `perm[c]`.
    pub fn permute_cols(&self, perm: &[usize]) -> Result<Self> {
        self.check_perm(perm)?;
        Ok(Self::from_fn(
            self.presentation.clone(),
            self.order,
            self.claimed_type.clone(),
            |r, c| self.entry(r, perm[c]),
        ))
    }

    /// Left-multiplies one row by a group element.
    pub fn scale_row(&self, row: usize, g: GroupElement) -> Self {
        let mut out = self.clone();
        for c in 0..self.order {
            if let Some((e, v)) = self.entry(row, c) {
                out.set(row, c, Some((self.presentation.multiply(g, e), v)));
            }
        }
        out
    }

    /// Right-multiplies one column by a group element.
    pub fn scale_col(&self, col: usize, g: GroupElement) -> Self {
        let mut out = self.clone();
        for r in 0..self.order {
            if let Some((e, v)) = self.entry(r, col) {
                out.set(r, col, Some((self.presentation.multiply(e, g), v)));
            }
        }
        out
    }
}

#[cfg(test)]
pub(crate) fn quaternion_example() -> DesignMatrix {
    // The order-4 design over the quaternion signed group with type (1,1,2):
    // row pattern
    //   jk x1   j x2   k x3     x3
    //    j x2  jk x1     x3   k x3
    //    k x3     x3  jk x1   j x2
    //      x3   k x3   j x2  jk x1
    let pres = GroupPresentation::s_q();
    let j = GroupElement::new(1, 0b01);
    let k = GroupElement::new(1, 0b10);
    let jk = GroupElement::new(1, 0b11);
    let one = GroupElement::identity();
    let rows: [[(GroupElement, usize); 4]; 4] = [
        [(jk, 0), (j, 1), (k, 2), (one, 2)],
        [(j, 1), (jk, 0), (one, 2), (k, 2)],
        [(k, 2), (one, 2), (jk, 0), (j, 1)],
        [(one, 2), (k, 2), (j, 1), (jk, 0)],
    ];
    DesignMatrix::from_fn(pres, 4, vec![1, 1, 2], |r, c| Some(rows[r][c]))
}
