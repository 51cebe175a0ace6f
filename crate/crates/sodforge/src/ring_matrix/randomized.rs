//! Randomized-modular verification for scalar designs.
//!
//! For designs whose entries are units times variables — over the trivial
//! group (entries `+-x_i`) or the complex unit group (entries also `+-i x_i`)
//! — the Gram identity is a matrix of polynomial identities of total degree
//! two.  Substituting independent uniform residues modulo a prime `p` and
//! comparing the numeric Gram against `(sum u_i a_i^2) I` is a
//! Schwartz-Zippel test: a design that fails the identity survives one trial
//! with probability at most `2k/p` (degree bound over the k variables), so a
//! handful of trials at a 31-bit prime makes the check effectively certain
//! while staying exact in integer arithmetic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ring_matrix::DesignMatrix;

/// Deterministic Miller-Rabin, valid for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// A square root of `-1` modulo a prime `p = 1 (mod 4)`, via a quadratic
/// non-residue raised to `(p-1)/4`.
pub fn sqrt_minus_one(p: u64) -> Result<u64> {
    if !is_prime_u64(p) {
        return Err(Error::BadPrime { prime: p, reason: "not prime".into() });
    }
    if p % 4 != 1 {
        return Err(Error::BadPrime {
            prime: p,
            reason: "p = 1 (mod 4) required for a square root of -1".into(),
        });
    }
    for g in 2..p {
        if pow_mod(g, (p - 1) / 2, p) == p - 1 {
            let w = pow_mod(g, (p - 1) / 4, p);
            debug_assert_eq!(mul_mod(w, w, p), p - 1);
            return Ok(w);
        }
    }
    unreachable!("every prime > 2 has a quadratic non-residue")
}

#[derive(Debug, Clone)]
pub struct RandomizedReport {
    pub ok: bool,
    pub trials: u32,
    pub prime: u64,
    /// `(trial, row, col)` of the first numeric Gram mismatch.
    pub failure: Option<(u32, usize, usize)>,
}

/// Largest 31-bit prime; the stock modulus for sign-entry designs.
pub const DEFAULT_PRIME_REAL: u64 = 2_147_483_647;
/// Largest 31-bit prime `= 1 (mod 4)`, so `-1` has a modular square root.
pub const DEFAULT_PRIME_COMPLEX: u64 = 2_147_483_629;

enum Scalars {
    Real,
    Complex { w: u64 },
}

/// Verifies `X X* = (sum u_i x_i^2) I` at `trials` uniform points modulo
/// `prime`.  Requires a scalar presentation: the trivial group, or the
/// complex unit group (then `prime = 1 (mod 4)` so that `i` embeds as a
/// modular square root of `-1`).
pub fn verify_scalar_randomized(
    x: &DesignMatrix,
    trials: u32,
    prime: u64,
    seed: u64,
) -> Result<RandomizedReport> {
    if trials == 0 {
        return Err(Error::Unsupported("trials must be at least 1".into()));
    }
    if !is_prime_u64(prime) {
        return Err(Error::BadPrime { prime, reason: "not prime".into() });
    }
    if prime >= 1 << 31 {
        return Err(Error::BadPrime {
            prime,
            reason: "modulus must fit in 31 bits".into(),
        });
    }
    let pres = x.presentation();
    let scalars = match pres.generator_count() {
        0 => Scalars::Real,
        1 if pres.square_signs[0] == -1 => Scalars::Complex { w: sqrt_minus_one(prime)? },
        _ => return Err(Error::NonScalarPresentation(pres.name.clone())),
    };

    let n = x.order();
    let k = x.var_count();
    let p = prime;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut vals = vec![0u64; n * n];
    let mut conj = vec![0u64; n * n];

    for trial in 0..trials {
        let residues: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
        let diag = x
            .claimed_type()
            .iter()
            .zip(&residues)
            .fold(0u64, |acc, (&u, &a)| {
                (acc + mul_mod(u % p, mul_mod(a, a, p), p)) % p
            });

        vals.fill(0);
        conj.fill(0);
        for r in 0..n {
            for c in 0..n {
                if let Some((e, v)) = x.entry(r, c) {
                    let a = residues[v];
                    let (val, cval) = match scalars {
                        Scalars::Real => (a, a),
                        Scalars::Complex { w } => {
                            if e.mask == 0 {
                                (a, a)
                            } else {
                                (mul_mod(a, w, p), mul_mod(a, p - w, p))
                            }
                        }
                    };
                    let (val, cval) = if e.sign < 0 {
                        ((p - val) % p, (p - cval) % p)
                    } else {
                        (val, cval)
                    };
                    vals[r * n + c] = val;
                    conj[r * n + c] = cval;
                }
            }
        }

        // Numeric Gram, upper triangle (the Gram matrix is conj-symmetric).
        for r in 0..n {
            let row_r = &vals[r * n..(r + 1) * n];
            for s in r..n {
                let row_s = &conj[s * n..(s + 1) * n];
                let got = dot_mod(row_r, row_s, p);
                let expected = if r == s { diag } else { 0 };
                if got != expected {
                    return Ok(RandomizedReport {
                        ok: false,
                        trials: trial + 1,
                        prime,
                        failure: Some((trial, r, s)),
                    });
                }
            }
        }
    }

    Ok(RandomizedReport { ok: true, trials, prime, failure: None })
}

/// Dot product modulo `p` for residues below `2^31`.  Each product fits in a
/// `u64`; the unreduced sum is kept in 128 bits, split over four lanes so the
/// multiplies pipeline.
fn dot_mod(a: &[u64], b: &[u64], p: u64) -> u64 {
    let mut acc = [0u128; 4];
    let mut chunks_a = a.chunks_exact(4);
    let mut chunks_b = b.chunks_exact(4);
    for (ca, cb) in (&mut chunks_a).zip(&mut chunks_b) {
        acc[0] += u128::from(ca[0] * cb[0]);
        acc[1] += u128::from(ca[1] * cb[1]);
        acc[2] += u128::from(ca[2] * cb[2]);
        acc[3] += u128::from(ca[3] * cb[3]);
    }
    for (&ra, &rb) in chunks_a.remainder().iter().zip(chunks_b.remainder()) {
        acc[0] += u128::from(ra * rb);
    }
    ((acc[0] + acc[1] + acc[2] + acc[3]) % u128::from(p)) as u64
}
