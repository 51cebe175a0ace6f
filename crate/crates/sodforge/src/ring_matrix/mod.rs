//! The restricted signed-group ring and design matrices over it.
//!
//! Ring elements are finite integer combinations `sum c * e * m` where `e` is
//! a canonical group element (its sign folded into the coefficient `c`) and
//! `m` is a monomial of degree at most two in the commuting variables
//! `x_1, x_2, ...`.  Degree two is all the quadratic verification identity
//! `X X* = (sum u_i x_i^2) I` ever needs, so products outside the restriction
//! are a caller bug and panic.

mod design;
mod format;
mod randomized;

pub use design::{
    Certificate, DesignEntry, DesignMatrix, Side, VerifyReport, EXACT_VERIFY_DEFAULT_LIMIT,
};
pub use format::render_entry;
pub use randomized::{
    is_prime_u64, sqrt_minus_one, verify_scalar_randomized, RandomizedReport,
    DEFAULT_PRIME_COMPLEX, DEFAULT_PRIME_REAL,
};

use std::collections::BTreeMap;
use std::fmt;

use crate::signed_group::{GroupElement, GroupPresentation};

/// Monomial of degree 0, 1 or 2 in 0-indexed variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarMonomial {
    One,
    Var(u16),
    /// Sorted pair; `Pair(v, v)` is the square `x_{v+1}^2`.
    Pair(u16, u16),
}

impl VarMonomial {
    pub fn pair(a: u16, b: u16) -> Self {
        if a <= b {
            VarMonomial::Pair(a, b)
        } else {
            VarMonomial::Pair(b, a)
        }
    }

    pub fn square(v: u16) -> Self {
        VarMonomial::Pair(v, v)
    }

    pub fn degree(self) -> u32 {
        match self {
            VarMonomial::One => 0,
            VarMonomial::Var(_) => 1,
            VarMonomial::Pair(..) => 2,
        }
    }

    /// Product, panicking when the result would exceed degree two.
    pub fn multiply(self, rhs: Self) -> Self {
        match (self, rhs) {
            (VarMonomial::One, m) | (m, VarMonomial::One) => m,
            (VarMonomial::Var(a), VarMonomial::Var(b)) => VarMonomial::pair(a, b),
            _ => panic!("monomial degree above two is outside the restricted ring"),
        }
    }

    fn key(self) -> u32 {
        match self {
            VarMonomial::One => 0,
            VarMonomial::Var(v) => u32::from(v) + 1,
            VarMonomial::Pair(a, b) => (u32::from(a) + 1) << 16 | (u32::from(b) + 1),
        }
    }

    pub(crate) fn from_key(key: u32) -> Self {
        match (key >> 16, key & 0xffff) {
            (0, 0) => VarMonomial::One,
            (0, v) => VarMonomial::Var((v - 1) as u16),
            (a, b) => VarMonomial::Pair((a - 1) as u16, (b - 1) as u16),
        }
    }
}

impl fmt::Display for VarMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VarMonomial::One => write!(f, "1"),
            VarMonomial::Var(v) => write!(f, "x{}", v + 1),
            VarMonomial::Pair(a, b) if a == b => write!(f, "x{}^2", a + 1),
            VarMonomial::Pair(a, b) => write!(f, "x{}*x{}", a + 1, b + 1),
        }
    }
}

/// One decoded term of a ring element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    /// Generator bitmask of the canonical group element (sign in `coef`).
    pub mask: u32,
    pub mono: VarMonomial,
    pub coef: i64,
}

pub(crate) fn term_key(mask: u32, mono: VarMonomial) -> u64 {
    u64::from(mask) << 32 | u64::from(mono.key())
}

/// Element of the restricted group ring; no zero coefficients are stored, so
/// structural equality is ring equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RingElement {
    terms: BTreeMap<u64, i64>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(element: GroupElement, mono: VarMonomial, coef: i64) -> Self {
        let mut out = RingElement::zero();
        out.add_term(element.mask, mono, coef * i64::from(element.sign));
        out
    }

    pub fn scalar(c: i64) -> Self {
        let mut out = RingElement::zero();
        out.add_term(0, VarMonomial::One, c);
        out
    }

    /// `sum u_i x_{i+1}^2` — the expected diagonal of a design of this type.
    pub fn from_type(claimed_type: &[u64]) -> Self {
        let mut out = RingElement::zero();
        for (v, &u) in claimed_type.iter().enumerate() {
            out.add_term(0, VarMonomial::square(v as u16), u as i64);
        }
        out
    }

    pub fn add_term(&mut self, mask: u32, mono: VarMonomial, coef: i64) {
        if coef == 0 {
            return;
        }
        let key = term_key(mask, mono);
        let slot = self.terms.entry(key).or_insert(0);
        *slot += coef;
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&key, &coef) in &rhs.terms {
            let slot = out.terms.entry(key).or_insert(0);
            *slot += coef;
            if *slot == 0 {
                out.terms.remove(&key);
            }
        }
        out
    }

    pub fn negate(&self) -> Self {
        RingElement {
            terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.negate())
    }

    /// Linear extension of the group product.  Panics if a monomial product
    /// leaves the degree-two restriction.
    pub fn multiply(&self, pres: &GroupPresentation, rhs: &Self) -> Self {
        let mut out = RingElement::zero();
        for (&ka, &ca) in &self.terms {
            let ea = GroupElement::new(1, (ka >> 32) as u32);
            let ma = VarMonomial::from_key(ka as u32);
            for (&kb, &cb) in &rhs.terms {
                let eb = GroupElement::new(1, (kb >> 32) as u32);
                let mb = VarMonomial::from_key(kb as u32);
                let e = pres.multiply(ea, eb);
                out.add_term(e.mask, ma.multiply(mb), ca * cb * i64::from(e.sign));
            }
        }
        out
    }

    /// Applies the group involution termwise (monomials are fixed).
    pub fn conjugate(&self, pres: &GroupPresentation) -> Self {
        let mut out = RingElement::zero();
        for term in self.iter_terms() {
            let e = pres.conjugate(GroupElement::new(1, term.mask));
            out.add_term(e.mask, term.mono, term.coef * i64::from(e.sign));
        }
        out
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms.iter().map(|(&key, &coef)| Term {
            mask: (key >> 32) as u32,
            mono: VarMonomial::from_key(key as u32),
            coef,
        })
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, term) in self.iter_terms().enumerate() {
            let sign_negative = term.coef < 0;
            if idx == 0 {
                if sign_negative {
                    write!(f, "-")?;
                }
            } else if sign_negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = term.coef.unsigned_abs();
            let element = GroupElement::new(1, term.mask);
            let mut pieces: Vec<String> = Vec::new();
            if magnitude != 1 {
                pieces.push(magnitude.to_string());
            }
            if term.mask != 0 {
                // Strip the canonical "+" prefix from the element rendering.
                pieces.push(element.to_string()[1..].to_string());
            }
            if term.mono != VarMonomial::One {
                pieces.push(term.mono.to_string());
            }
            if pieces.is_empty() {
                pieces.push("1".to_string());
            }
            write!(f, "{}", pieces.join("*"))?;
        }
        Ok(())
    }
}

/// Small dense matrix over the ring.  This is deliberately naive: it serves
/// as an independent cross-check (amicability of block matrices, circulant
/// products) rather than as a performance path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMatrix {
    pub order: usize,
    entries: Vec<RingElement>,
}

impl RingMatrix {
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> RingElement) -> Self {
        let entries = (0..order * order)
            .map(|idx| f(idx / order, idx % order))
            .collect();
        RingMatrix { order, entries }
    }

    pub fn entry(&self, r: usize, c: usize) -> &RingElement {
        &self.entries[r * self.order + c]
    }

    pub fn multiply(&self, pres: &GroupPresentation, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order);
        Self::from_fn(self.order, |r, c| {
            let mut acc = RingElement::zero();
            for k in 0..self.order {
                acc = acc.add(&self.entry(r, k).multiply(pres, rhs.entry(k, c)));
            }
            acc
        })
    }

    pub fn conj_transpose(&self, pres: &GroupPresentation) -> Self {
        Self::from_fn(self.order, |r, c| self.entry(c, r).conjugate(pres))
    }

    /// `M N* == N M*`.
    pub fn amicable(&self, pres: &GroupPresentation, rhs: &Self) -> bool {
        self.multiply(pres, &rhs.conj_transpose(pres))
            == rhs.multiply(pres, &self.conj_transpose(pres))
    }
}
