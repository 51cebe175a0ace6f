//! Sequences over `{0, +-1, +-i}` (optionally carrying variables), their
//! non-periodic autocorrelation, complementary pairs and their doubling,
//! an exhaustive pair search, and a verified catalog of base pairs.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring_matrix::{RingElement, VarMonomial};
use crate::signed_group::{GroupElement, GroupPresentation};

/// A fourth root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    One,
    MinusOne,
    I,
    MinusI,
}

impl Unit {
    pub const ALL: [Unit; 4] = [Unit::One, Unit::MinusOne, Unit::I, Unit::MinusI];
    pub const REAL: [Unit; 2] = [Unit::One, Unit::MinusOne];

    pub fn gaussian(self) -> (i64, i64) {
        match self {
            Unit::One => (1, 0),
            Unit::MinusOne => (-1, 0),
            Unit::I => (0, 1),
            Unit::MinusI => (0, -1),
        }
    }

    pub fn from_gaussian(g: (i64, i64)) -> Option<Self> {
        match g {
            (1, 0) => Some(Unit::One),
            (-1, 0) => Some(Unit::MinusOne),
            (0, 1) => Some(Unit::I),
            (0, -1) => Some(Unit::MinusI),
            _ => None,
        }
    }

    pub fn conjugate(self) -> Self {
        match self {
            Unit::I => Unit::MinusI,
            Unit::MinusI => Unit::I,
            other => other,
        }
    }

    pub fn negate(self) -> Self {
        match self {
            Unit::One => Unit::MinusOne,
            Unit::MinusOne => Unit::One,
            Unit::I => Unit::MinusI,
            Unit::MinusI => Unit::I,
        }
    }

    pub fn multiply(self, rhs: Self) -> Self {
        let (a, b) = self.gaussian();
        let (c, d) = rhs.gaussian();
        Unit::from_gaussian((a * c - b * d, a * d + b * c)).expect("units are closed")
    }

    pub fn is_real(self) -> bool {
        matches!(self, Unit::One | Unit::MinusOne)
    }

    /// The corresponding element of the one-generator presentation
    /// (`i` maps to the generator).
    pub fn element(self) -> GroupElement {
        match self {
            Unit::One => GroupElement::new(1, 0),
            Unit::MinusOne => GroupElement::new(-1, 0),
            Unit::I => GroupElement::new(1, 1),
            Unit::MinusI => GroupElement::new(-1, 1),
        }
    }
}

/// A nonzero sequence entry: a unit, optionally times a variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeqEntry {
    pub unit: Unit,
    pub var: Option<u16>,
}

impl SeqEntry {
    pub fn unit(unit: Unit) -> Self {
        SeqEntry { unit, var: None }
    }

    pub fn variable(unit: Unit, var: u16) -> Self {
        SeqEntry { unit, var: Some(var) }
    }
}

/// A finite sequence with entries zero, a unit, or a unit times a variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    entries: Vec<Option<SeqEntry>>,
}

impl Sequence {
    pub fn new(entries: Vec<Option<SeqEntry>>) -> Self {
        assert!(!entries.is_empty(), "sequences have length >= 1");
        Sequence { entries }
    }

    pub fn from_units(units: &[Unit]) -> Self {
        Self::new(units.iter().map(|&u| Some(SeqEntry::unit(u))).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 1 by construction
    }

    pub fn entries(&self) -> &[Option<SeqEntry>] {
        &self.entries
    }

    pub fn entry(&self, idx: usize) -> Option<SeqEntry> {
        self.entries[idx]
    }

    pub fn is_variable_free(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.var.is_none())
    }

    /// No zero entries.
    pub fn is_unit_valued(&self) -> bool {
        self.entries.iter().all(|e| e.is_some())
    }

    /// All units are `+-1`.
    pub fn is_real(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.unit.is_real())
    }

    pub fn negate(&self) -> Self {
        self.scale(Unit::MinusOne)
    }

    /// Multiply every entry by a fixed unit.
    pub fn scale(&self, u: Unit) -> Self {
        Sequence {
            entries: self
                .entries
                .iter()
                .map(|e| e.map(|e| SeqEntry { unit: e.unit.multiply(u), ..e }))
                .collect(),
        }
    }

    /// Conjugate every entry and reverse the order.
    pub fn reverse_conjugate(&self) -> Self {
        Sequence {
            entries: self
                .entries
                .iter()
                .rev()
                .map(|e| e.map(|e| SeqEntry { unit: e.unit.conjugate(), ..e }))
                .collect(),
        }
    }

    pub fn concat(&self, rhs: &Self) -> Self {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&rhs.entries);
        Sequence { entries }
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, e) in self.entries.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            match e {
                None => write!(f, "0")?,
                Some(SeqEntry { unit, var: None }) => {
                    let tok = match unit {
                        Unit::One => "1",
                        Unit::MinusOne => "-1",
                        Unit::I => "i",
                        Unit::MinusI => "-i",
                    };
                    write!(f, "{tok}")?;
                }
                Some(SeqEntry { unit, var: Some(v) }) => {
                    let prefix = match unit {
                        Unit::One => "",
                        Unit::MinusOne => "-",
                        Unit::I => "i*",
                        Unit::MinusI => "-i*",
                    };
                    write!(f, "{prefix}x{}", v + 1)?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Sequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|tok| parse_token(tok.trim()))
            .collect::<Result<Vec<_>>>()?;
        if entries.is_empty() {
            return Err(Error::Parse("empty sequence".into()));
        }
        Ok(Sequence { entries })
    }
}

fn parse_token(tok: &str) -> Result<Option<SeqEntry>> {
    if tok == "0" {
        return Ok(None);
    }
    let (negated, rest) = match tok.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, tok),
    };
    let (unit, var_part) = if rest == "1" {
        (Unit::One, None)
    } else if rest == "i" {
        (Unit::I, None)
    } else if let Some(v) = rest.strip_prefix("i*x") {
        (Unit::I, Some(v))
    } else if let Some(v) = rest.strip_prefix('x') {
        (Unit::One, Some(v))
    } else {
        return Err(Error::Parse(format!("bad sequence token `{tok}`")));
    };
    let var = match var_part {
        None => None,
        Some(v) => {
            let v: u32 = v
                .parse()
                .map_err(|_| Error::Parse(format!("bad variable in token `{tok}`")))?;
            if v == 0 || v > u32::from(u16::MAX) {
                return Err(Error::Parse(format!("variable out of range in `{tok}`")));
            }
            Some((v - 1) as u16)
        }
    };
    let unit = if negated { unit.negate() } else { unit };
    Ok(Some(SeqEntry { unit, var }))
}

fn monomial_of(var: Option<u16>) -> VarMonomial {
    match var {
        None => VarMonomial::One,
        Some(v) => VarMonomial::Var(v),
    }
}

/// Non-periodic autocorrelation `N_A(j) = sum_k a_{k+j} conj(a_k)` as an
/// element of the group ring of the one-generator presentation; zero for
/// `j >= len`.
pub fn npaf(a: &Sequence, j: usize) -> RingElement {
    let pres = GroupPresentation::s_c();
    let mut out = RingElement::zero();
    if j >= a.len() {
        return out;
    }
    for k in 0..a.len() - j {
        let (Some(hi), Some(lo)) = (a.entry(k + j), a.entry(k)) else {
            continue;
        };
        let e = pres.multiply(hi.unit.element(), lo.unit.conjugate().element());
        let mono = monomial_of(hi.var).multiply(monomial_of(lo.var));
        out.add_term(e.mask, mono, i64::from(e.sign));
    }
    out
}

/// `N_A(j)` as a Gaussian integer; only defined for variable-free sequences.
pub fn npaf_gaussian(a: &Sequence, j: usize) -> Result<(i64, i64)> {
    if !a.is_variable_free() {
        return Err(Error::Unsupported(
            "autocorrelation of a sequence with variables is ring-valued".into(),
        ));
    }
    let (mut re, mut im) = (0, 0);
    if j < a.len() {
        for k in 0..a.len() - j {
            let (Some(hi), Some(lo)) = (a.entry(k + j), a.entry(k)) else {
                continue;
            };
            let (pr, pi) = hi.unit.multiply(lo.unit.conjugate()).gaussian();
            re += pr;
            im += pi;
        }
    }
    Ok((re, im))
}

/// Whether the autocorrelations of the set sum to zero at every positive
/// shift.
pub fn is_complementary(seqs: &[Sequence]) -> bool {
    let max_len = seqs.iter().map(Sequence::len).max().unwrap_or(0);
    if seqs.iter().all(Sequence::is_variable_free) {
        (1..max_len).all(|j| {
            let (mut re, mut im) = (0, 0);
            for s in seqs {
                let (r, i) = npaf_gaussian(s, j).expect("variable-free");
                re += r;
                im += i;
            }
            re == 0 && im == 0
        })
    } else {
        (1..max_len).all(|j| {
            let mut acc = RingElement::zero();
            for s in seqs {
                acc = acc.add(&npaf(s, j));
            }
            acc.is_zero()
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alphabet {
    Real,
    Complex,
}

/// Two complementary unit-valued variable-free sequences of equal length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GolayPair {
    pub a: Sequence,
    pub b: Sequence,
    pub alphabet: Alphabet,
}

impl GolayPair {
    pub fn new(a: Sequence, b: Sequence, alphabet: Alphabet) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::OrderMismatch { expected: a.len(), found: b.len() });
        }
        if !a.is_unit_valued() || !b.is_unit_valued() || !a.is_variable_free() || !b.is_variable_free()
        {
            return Err(Error::Unsupported(
                "complementary pairs have unit entries without variables".into(),
            ));
        }
        if alphabet == Alphabet::Real && !(a.is_real() && b.is_real()) {
            return Err(Error::Unsupported(
                "real pair with imaginary entries".into(),
            ));
        }
        for j in 1..a.len() {
            let (ra, ia) = npaf_gaussian(&a, j)?;
            let (rb, ib) = npaf_gaussian(&b, j)?;
            if ra + rb != 0 || ia + ib != 0 {
                return Err(Error::NonComplementary { shift: j });
            }
        }
        Ok(GolayPair { a, b, alphabet })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// `(A; B) -> (A || B, A || -B)`: a complementary pair of twice the length.
/// The output is validated, not assumed.
pub fn golay_double(pair: &GolayPair) -> GolayPair {
    let a = pair.a.concat(&pair.b);
    let b = pair.a.concat(&pair.b.negate());
    GolayPair::new(a, b, pair.alphabet).expect("doubling preserves complementarity")
}

/// `2^(a+u) 3^b 5^c 11^d 13^e` is an attainable complex pair length when
/// `b+c+d+e <= a+2u+1` and `u <= c+e`.
pub fn is_admissible_cgn(a: u32, b: u32, c: u32, d: u32, e: u32, u: u32) -> bool {
    b + c + d + e <= a + 2 * u + 1 && u <= c + e
}

/// Default node budget for [`search_golay`]; enough for real lengths up to
/// 14 and complex lengths up to 8.
pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Ordered pairs, both orders reported; deterministic order.
    pub pairs: Vec<GolayPair>,
    pub nodes: u64,
    /// False only when a `max_pairs` cut stopped the traversal early.
    pub complete: bool,
}

/// Exhaustive depth-first search for complementary pairs of length `n` with
/// both first entries normalized to `+1` (every pair is equivalent to such a
/// pair by scaling each sequence by a unit).  Positions are filled outside-in
/// so that high shifts become fully determined early; partial sums are pruned
/// by an L1 bound and a parity bound.  `budget` caps visited nodes
/// (default [`DEFAULT_SEARCH_BUDGET`]); `max_pairs` stops early after that
/// many pairs.
pub fn search_golay(
    n: usize,
    alphabet: Alphabet,
    budget: Option<u64>,
    max_pairs: Option<usize>,
) -> Result<SearchOutcome> {
    if n == 0 {
        return Err(Error::Unsupported("sequence length must be positive".into()));
    }
    let mut order = Vec::with_capacity(n);
    for t in 0..n / 2 {
        order.push(t);
        order.push(n - 1 - t);
    }
    if n % 2 == 1 {
        order.push(n / 2);
    }
    let mut search = PairSearch {
        n,
        alphabet,
        units: match alphabet {
            Alphabet::Real => &Unit::REAL,
            Alphabet::Complex => &Unit::ALL,
        },
        order,
        budget: budget.unwrap_or(DEFAULT_SEARCH_BUDGET),
        max_pairs,
        nodes: 0,
        seq: [vec![None; n], vec![None; n]],
        sum_re: vec![0; n],
        sum_im: vec![0; n],
        undet: (0..n).map(|j| 2 * (n - j) as i64).collect(),
        pairs: Vec::new(),
        stopped: false,
    };
    search.dfs(0)?;
    Ok(SearchOutcome {
        pairs: search.pairs,
        nodes: search.nodes,
        complete: !search.stopped,
    })
}

struct PairSearch {
    n: usize,
    alphabet: Alphabet,
    units: &'static [Unit],
    order: Vec<usize>,
    budget: u64,
    max_pairs: Option<usize>,
    nodes: u64,
    seq: [Vec<Option<Unit>>; 2],
    // per shift j: partial sum of determined products over both sequences
    // and the number of undetermined products
    sum_re: Vec<i64>,
    sum_im: Vec<i64>,
    undet: Vec<i64>,
    pairs: Vec<GolayPair>,
    stopped: bool,
}

impl PairSearch {
    fn place(&mut self, which: usize, p: usize, u: Unit) {
        for q in 0..self.n {
            let Some(vq) = self.seq[which][q] else { continue };
            // the product pairs the higher position with the conjugated lower
            let prod = if p > q {
                u.multiply(vq.conjugate())
            } else {
                vq.multiply(u.conjugate())
            };
            let (re, im) = prod.gaussian();
            let j = p.abs_diff(q);
            self.sum_re[j] += re;
            self.sum_im[j] += im;
            self.undet[j] -= 1;
        }
        self.seq[which][p] = Some(u);
    }

    fn unplace(&mut self, which: usize, p: usize, u: Unit) {
        self.seq[which][p] = None;
        for q in 0..self.n {
            let Some(vq) = self.seq[which][q] else { continue };
            let prod = if p > q {
                u.multiply(vq.conjugate())
            } else {
                vq.multiply(u.conjugate())
            };
            let (re, im) = prod.gaussian();
            let j = p.abs_diff(q);
            self.sum_re[j] -= re;
            self.sum_im[j] -= im;
            self.undet[j] += 1;
        }
    }

    fn feasible(&self) -> bool {
        for j in 1..self.n {
            let (re, im, und) = (self.sum_re[j], self.sum_im[j], self.undet[j]);
            if und == 0 {
                if re != 0 || im != 0 {
                    return false;
                }
            } else {
                // every undetermined product is a unit: L1 norm exactly 1,
                // so re+im is odd per product
                if re.abs() + im.abs() > und {
                    return false;
                }
                if (re + im - und).rem_euclid(2) != 0 {
                    return false;
                }
            }
        }
        true
    }

    fn record(&mut self) {
        let units = |which: usize| -> Vec<Unit> {
            self.seq[which].iter().map(|u| u.expect("complete")).collect()
        };
        let a = Sequence::from_units(&units(0));
        let b = Sequence::from_units(&units(1));
        let pair = GolayPair::new(a, b, self.alphabet).expect("search checked all shifts");
        self.pairs.push(pair);
        if let Some(max) = self.max_pairs {
            if self.pairs.len() >= max {
                self.stopped = true;
            }
        }
    }

    fn dfs(&mut self, depth: usize) -> Result<()> {
        if depth == self.order.len() {
            self.record();
            return Ok(());
        }
        let p = self.order[depth];
        let units: &[Unit] = if depth == 0 { &[Unit::One] } else { self.units };
        for &ua in units {
            self.place(0, p, ua);
            for &ub in units {
                self.place(1, p, ub);
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(Error::BudgetExceeded { nodes: self.nodes });
                }
                if self.feasible() {
                    self.dfs(depth + 1)?;
                }
                self.unplace(1, p, ub);
                if self.stopped {
                    break;
                }
            }
            self.unplace(0, p, ua);
            if self.stopped {
                break;
            }
        }
        Ok(())
    }
}

/// Shipped base pairs: real lengths 2, 10, 26 and complex lengths 3, 5, 11,
/// 13.  Every entry is validated at load time.
pub fn catalog() -> Vec<GolayPair> {
    CATALOG_SEEDS
        .iter()
        .map(|&(a, b, alphabet)| {
            let a: Sequence = a.parse().expect("catalog entries parse");
            let b: Sequence = b.parse().expect("catalog entries parse");
            GolayPair::new(a, b, alphabet).expect("catalog entries are complementary")
        })
        .collect()
}

/// The shipped base pair of a given length and alphabet.
pub fn catalog_pair(len: usize, alphabet: Alphabet) -> Result<GolayPair> {
    catalog()
        .into_iter()
        .find(|p| p.len() == len && p.alphabet == alphabet)
        .ok_or_else(|| Error::Unsupported(format!("no catalog pair of length {len}")))
}

/// A pair of the given length built from the catalog, doubling shipped pairs
/// as often as needed (so e.g. real lengths 4, 8, 16, ..., 20, 40, ... are
/// available besides the shipped 2, 10, 26).  A complex request falls back to
/// a real pair of the same length — real entries are a special case.
pub fn derived_pair(len: usize, alphabet: Alphabet) -> Result<GolayPair> {
    fn doubled(len: usize, alphabet: Alphabet) -> Option<GolayPair> {
        if let Ok(pair) = catalog_pair(len, alphabet) {
            return Some(pair);
        }
        if len % 2 == 0 && len > 0 {
            return doubled(len / 2, alphabet).map(|half| golay_double(&half));
        }
        None
    }
    doubled(len, alphabet)
        .or_else(|| {
            if alphabet == Alphabet::Complex {
                let real = doubled(len, Alphabet::Real)?;
                Some(GolayPair::new(real.a, real.b, Alphabet::Complex).expect("real pairs widen"))
            } else {
                None
            }
        })
        .ok_or_else(|| {
            Error::Unsupported(format!(
                "no catalog pair of length {len} directly or by doubling"
            ))
        })
}

const CATALOG_SEEDS: &[(&str, &str, Alphabet)] = &[
    ("1,1", "1,-1", Alphabet::Real),
    (REAL_10_A, REAL_10_B, Alphabet::Real),
    (REAL_26_A, REAL_26_B, Alphabet::Real),
    ("1,i,1", "1,1,-1", Alphabet::Complex),
    (COMPLEX_5_A, COMPLEX_5_B, Alphabet::Complex),
    (
        "1,i,-1,1,-1,i,-i,-1,i,i,1",
        "1,1,-i,-i,-i,1,1,i,-1,1,-1",
        Alphabet::Complex,
    ),
    (COMPLEX_13_A, COMPLEX_13_B, Alphabet::Complex),
];

// First pairs found by `search_golay` at these lengths (deterministic
// traversal order), frozen here so the catalog does not depend on search
// time at load.
const REAL_10_A: &str = "1,1,-1,1,-1,1,-1,-1,1,1";
const REAL_10_B: &str = "1,1,-1,1,1,1,1,1,-1,-1";
const REAL_26_A: &str = "1,1,1,1,-1,1,1,-1,-1,1,-1,1,-1,1,-1,-1,1,-1,1,1,1,-1,-1,1,1,1";
const REAL_26_B: &str = "1,1,1,1,-1,1,1,-1,-1,1,-1,1,1,1,1,1,-1,1,-1,-1,-1,1,1,-1,-1,-1";
const COMPLEX_5_A: &str = "1,1,1,-i,i";
const COMPLEX_5_B: &str = "1,i,-1,1,-i";
const COMPLEX_13_A: &str = "1,1,1,i,-1,1,1,-i,1,-1,1,-i,i";
const COMPLEX_13_B: &str = "1,i,-1,-1,-1,i,-1,1,1,-i,-1,1,-i";

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn classic8() -> GolayPair {
        GolayPair::new(
            "1,1,1,-1,1,1,-1,1".parse().unwrap(),
            "1,1,1,-1,-1,-1,1,-1".parse().unwrap(),
            Alphabet::Real,
        )
        .unwrap()
    }

    fn complex11() -> GolayPair {
        catalog_pair(11, Alphabet::Complex).unwrap()
    }

    fn random_sequence(rng: &mut impl Rng, len: usize) -> Sequence {
        Sequence::from_units(
            &(0..len)
                .map(|_| Unit::ALL[rng.gen_range(0..4)])
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn unit_arithmetic_matches_gaussian_integers() {
        for &x in &Unit::ALL {
            let (re, im) = x.gaussian();
            assert_eq!(x.conjugate().gaussian(), (re, -im));
            assert_eq!(x.negate().gaussian(), (-re, -im));
            for &y in &Unit::ALL {
                let (c, d) = y.gaussian();
                assert_eq!(x.multiply(y).gaussian(), (re * c - im * d, re * d + im * c));
            }
        }
    }

    #[test]
    fn sequence_tokens_round_trip() {
        let text = "1,-1,i,-i,0,x2,-x2,i*x2,-i*x2";
        let seq: Sequence = text.parse().unwrap();
        assert_eq!(seq.to_string(), text);
        assert_eq!(seq.len(), 9);
        assert!(!seq.is_variable_free());
        assert!(!seq.is_unit_valued());
        for bad in ["", "2", "x0", "ix2", "--1", "1,,1", "i*", "0x1"] {
            assert!(bad.parse::<Sequence>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn npaf_examples() {
        let a: Sequence = "1,1".parse().unwrap();
        assert_eq!(npaf_gaussian(&a, 1).unwrap(), (1, 0));

        let a = classic8().a;
        assert_eq!(npaf_gaussian(&a, 0).unwrap(), (8, 0));
        assert_eq!(npaf_gaussian(&a, 1).unwrap(), (-1, 0));
        assert_eq!(npaf_gaussian(&a, 8).unwrap(), (0, 0));
        assert!(npaf(&a, 9).is_zero());
    }

    #[test]
    fn ring_npaf_matches_gaussian() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for len in 1..=12 {
            let s = random_sequence(&mut rng, len);
            for j in 0..=len {
                let (re, im) = npaf_gaussian(&s, j).unwrap();
                let mut expected = RingElement::zero();
                expected.add_term(0, VarMonomial::One, re);
                expected.add_term(1, VarMonomial::One, im);
                assert_eq!(npaf(&s, j), expected);
            }
        }
    }

    #[test]
    fn npaf_of_reversed_conjugate_is_unchanged() {
        // N over the reversed-conjugated sequence reproduces the original
        // values: substituting m = n-1-k turns each term into a term of the
        // original sum.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for len in 2..=12 {
            let s = random_sequence(&mut rng, len);
            let rc = s.reverse_conjugate();
            for j in 0..len {
                assert_eq!(npaf_gaussian(&rc, j).unwrap(), npaf_gaussian(&s, j).unwrap());
            }
            assert_eq!(rc.reverse_conjugate(), s);
        }
        let pair: Sequence = "1,i".parse().unwrap();
        assert_eq!(pair.reverse_conjugate().to_string(), "-i,1");
    }

    #[test]
    fn npaf_with_variables() {
        // (x1, i*x2): shift 1 gives (i*x2) * conj(x1) = i * x1 x2
        let s: Sequence = "x1,i*x2".parse().unwrap();
        let mut expected = RingElement::zero();
        expected.add_term(1, VarMonomial::pair(0, 1), 1);
        assert_eq!(npaf(&s, 1), expected);
        assert!(npaf_gaussian(&s, 1).is_err());
    }

    #[test]
    fn complementarity_examples_and_invariances() {
        let two: Vec<Sequence> = vec!["1,1".parse().unwrap(), "1,-1".parse().unwrap()];
        assert!(is_complementary(&two));
        assert!(!is_complementary(&["1,1".parse().unwrap(), "1,1".parse().unwrap()]));

        let p8 = classic8();
        assert!(is_complementary(&[p8.a.clone(), p8.b.clone()]));
        let c11 = complex11();
        assert!(is_complementary(&[c11.a.clone(), c11.b.clone()]));

        // negating one member, reverse-conjugating both, or scaling one by a
        // unit all preserve complementarity
        assert!(is_complementary(&[c11.a.negate(), c11.b.clone()]));
        assert!(is_complementary(&[
            c11.a.reverse_conjugate(),
            c11.b.reverse_conjugate()
        ]));
        assert!(is_complementary(&[c11.a.scale(Unit::I), c11.b.clone()]));
        assert!(is_complementary(&[c11.a.clone(), c11.b.scale(Unit::MinusI)]));
    }

    #[test]
    fn pair_validation_errors() {
        let a: Sequence = "1,1".parse().unwrap();
        let b: Sequence = "1,-1,1".parse().unwrap();
        assert!(matches!(
            GolayPair::new(a.clone(), b, Alphabet::Real),
            Err(Error::OrderMismatch { .. })
        ));
        assert!(matches!(
            GolayPair::new(a.clone(), "1,1".parse().unwrap(), Alphabet::Real),
            Err(Error::NonComplementary { shift: 1 })
        ));
        assert!(GolayPair::new(a.clone(), "1,i".parse().unwrap(), Alphabet::Real).is_err());
        assert!(GolayPair::new(a.clone(), "1,0".parse().unwrap(), Alphabet::Real).is_err());
        assert!(GolayPair::new(a, "1,x1".parse().unwrap(), Alphabet::Complex).is_err());
    }

    #[test]
    fn doubling_chain() {
        let one = GolayPair::new(
            "1".parse().unwrap(),
            "1".parse().unwrap(),
            Alphabet::Real,
        )
        .unwrap();
        let two = golay_double(&one);
        assert_eq!(two.a.to_string(), "1,1");
        assert_eq!(two.b.to_string(), "1,-1");
        let four = golay_double(&two);
        assert_eq!(four.len(), 4);
        let sixteen = golay_double(&classic8());
        assert_eq!(sixteen.len(), 16);
        let twenty_two = golay_double(&complex11());
        assert_eq!(twenty_two.len(), 22);
        assert_eq!(twenty_two.alphabet, Alphabet::Complex);
    }

    #[test]
    fn admissibility_predicate() {
        assert!(is_admissible_cgn(0, 0, 0, 0, 0, 0));
        assert!(is_admissible_cgn(0, 0, 0, 1, 0, 0)); // length 11
        assert!(is_admissible_cgn(0, 0, 0, 0, 1, 0)); // length 13
        assert!(!is_admissible_cgn(0, 2, 0, 0, 0, 0)); // length 9
        assert!(!is_admissible_cgn(0, 0, 0, 0, 0, 1)); // u needs c+e
        assert!(is_admissible_cgn(0, 0, 1, 0, 0, 1)); // length 10
    }

    #[test]
    fn search_smallest_lengths() {
        let out = search_golay(1, Alphabet::Real, None, None).unwrap();
        assert_eq!(out.pairs.len(), 1);

        let out = search_golay(2, Alphabet::Real, None, None).unwrap();
        assert!(out.complete);
        assert_eq!(out.pairs.len(), 2); // both orders of the unique pair
        let strings: Vec<String> = out
            .pairs
            .iter()
            .map(|p| format!("{} / {}", p.a, p.b))
            .collect();
        assert!(strings.contains(&"1,1 / 1,-1".to_string()));
        assert!(strings.contains(&"1,-1 / 1,1".to_string()));
    }

    #[test]
    fn search_finds_nothing_at_non_golay_lengths() {
        for n in [3usize, 5, 6] {
            let out = search_golay(n, Alphabet::Real, None, None).unwrap();
            assert!(out.complete);
            assert!(out.pairs.is_empty(), "length {n}");
        }
    }

    #[test]
    fn search_finds_pairs_at_golay_lengths() {
        for n in [4usize, 8, 10] {
            let out = search_golay(n, Alphabet::Real, None, None).unwrap();
            assert!(out.complete);
            assert!(!out.pairs.is_empty(), "length {n}");
        }
        let out = search_golay(3, Alphabet::Complex, None, None).unwrap();
        assert!(!out.pairs.is_empty());
    }

    #[test]
    fn search_is_deterministic_and_budgeted() {
        let a = search_golay(8, Alphabet::Real, None, None).unwrap();
        let b = search_golay(8, Alphabet::Real, None, None).unwrap();
        assert_eq!(a.nodes, b.nodes);
        assert_eq!(a.pairs, b.pairs);

        assert!(matches!(
            search_golay(10, Alphabet::Real, Some(5), None),
            Err(Error::BudgetExceeded { .. })
        ));

        let first = search_golay(8, Alphabet::Real, None, Some(1)).unwrap();
        assert_eq!(first.pairs.len(), 1);
        assert!(!first.complete);
        assert_eq!(first.pairs[0], a.pairs[0]);
    }

    #[test]
    fn catalog_loads_and_covers_expected_lengths() {
        let got: Vec<(usize, Alphabet)> =
            catalog().iter().map(|p| (p.len(), p.alphabet)).collect();
        assert_eq!(
            got,
            vec![
                (2, Alphabet::Real),
                (10, Alphabet::Real),
                (26, Alphabet::Real),
                (3, Alphabet::Complex),
                (5, Alphabet::Complex),
                (11, Alphabet::Complex),
                (13, Alphabet::Complex),
            ]
        );
        for pair in catalog() {
            if pair.alphabet == Alphabet::Real {
                assert!(pair.a.is_real() && pair.b.is_real());
            }
        }
        assert!(catalog_pair(11, Alphabet::Complex).is_ok());
        assert!(catalog_pair(7, Alphabet::Real).is_err());
    }

    #[test]
    fn derived_pairs_double_out_of_the_catalog() {
        let eight = derived_pair(8, Alphabet::Real).unwrap();
        assert_eq!(eight, golay_double(&golay_double(&catalog_pair(2, Alphabet::Real).unwrap())));
        assert_eq!(derived_pair(40, Alphabet::Real).unwrap().len(), 40);
        assert_eq!(derived_pair(22, Alphabet::Complex).unwrap().len(), 22);
        // complex request served by a real pair when no complex chain exists
        let four = derived_pair(4, Alphabet::Complex).unwrap();
        assert_eq!(four.alphabet, Alphabet::Complex);
        assert!(four.a.is_real());
        assert!(derived_pair(7, Alphabet::Real).is_err());
        assert!(derived_pair(9, Alphabet::Complex).is_err());
    }
}
