//! Real monomial representations: multiplication-preserving maps from a
//! signed group into signed permutation matrices sending `-1` to `-I`.
//! Composing a design with such a representation and a Hadamard matrix
//! expands it into an ordinary orthogonal design over the trivial group.

use crate::constructions::{hurwitz_radon_family, sylvester_hadamard, IntMatrix};
use crate::error::{Error, Result};
use crate::ring_matrix::DesignMatrix;
use crate::signed_group::{GroupElement, GroupPresentation, SignedPermMatrix};

/// A representation given by its generator images; the image of an arbitrary
/// element is the signed product of the generator images in word order.
#[derive(Debug, Clone)]
pub struct Remrep {
    presentation: GroupPresentation,
    degree: usize,
    images: Vec<SignedPermMatrix>,
}

impl Remrep {
    /// Checks the defining relations: each image squares to `square_sign * I`
    /// and distinct generator images anticommute.
    pub fn new(presentation: GroupPresentation, images: Vec<SignedPermMatrix>) -> Result<Self> {
        if images.len() != presentation.generator_count() {
            return Err(Error::InvalidRemrep {
                relation: format!(
                    "{} generator images for {} generators",
                    images.len(),
                    presentation.generator_count()
                ),
            });
        }
        let degree = images.first().map_or(1, |m| m.order);
        for (a, img) in images.iter().enumerate() {
            if img.order != degree {
                return Err(Error::InvalidRemrep {
                    relation: format!("image of g{} has a different degree", a + 1),
                });
            }
            let square = img.multiply(img);
            let expected = if presentation.square_signs[a] == 1 {
                SignedPermMatrix::identity(degree)
            } else {
                SignedPermMatrix::identity(degree).negate()
            };
            if square != expected {
                return Err(Error::InvalidRemrep {
                    relation: format!("g{}^2", a + 1),
                });
            }
        }
        for a in 0..images.len() {
            for b in a + 1..images.len() {
                if images[a].multiply(&images[b]) != images[b].multiply(&images[a]).negate() {
                    return Err(Error::InvalidRemrep {
                        relation: format!("g{} g{} = -g{} g{}", a + 1, b + 1, b + 1, a + 1),
                    });
                }
            }
        }
        Ok(Remrep { presentation, degree, images })
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generator_image(&self, a: usize) -> &SignedPermMatrix {
        &self.images[a]
    }

    /// Image of an arbitrary element: the product of the generator images of
    /// its word, negated if the element carries the sign `-1`.
    pub fn image(&self, e: GroupElement) -> SignedPermMatrix {
        let mut out = SignedPermMatrix::identity(self.degree);
        for (a, img) in self.images.iter().enumerate() {
            if e.mask >> a & 1 == 1 {
                out = out.multiply(img);
            }
        }
        if e.sign < 0 {
            out.negate()
        } else {
            out
        }
    }
}

/// The canonical representation of the presentation with `2^n - 1`
/// anticommuting generators of square `-1`: generator `s_a` maps to the
/// `a`-th non-identity member of a maximal anti-amicable family.  The degree
/// is 2, 4, 8, 128 for `n = 1..4`.
pub fn canonical_remrep_s(n: u32) -> Result<Remrep> {
    let t = match n {
        1 => 1,
        2 => 2,
        3 => 3,
        4 => 7,
        _ => {
            return Err(Error::Unsupported(format!(
                "canonical representations cover 1 <= n <= 4, got {n}"
            )))
        }
    };
    let family = hurwitz_radon_family(t)?;
    Remrep::new(GroupPresentation::s_n(n), family[1..].to_vec())
}

/// The canonical degree-128 representation of the 13-generator presentation
/// whose first generator squares to `+1`: that generator maps to the
/// (symmetric) product of the three family members left unused by the other
/// twelve, which squares to `+I` and anticommutes with each of them.
pub fn canonical_remrep_sprime4() -> Result<Remrep> {
    let family = hurwitz_radon_family(7)?;
    let first = family[13].multiply(&family[14]).multiply(&family[15]);
    let mut images = vec![first];
    images.extend_from_slice(&family[1..13]);
    Remrep::new(GroupPresentation::s_prime(4), images)
}

/// Expand a design over a signed group into an ordinary orthogonal design of
/// order `order * degree`: an entry `eps x_i` becomes the full block
/// `(image(eps) H) x_i`.  Because images are orthogonal monomial matrices and
/// `H H^T = degree * I`, the expanded Gram matrix is the original one with
/// every weight scaled by the degree.
pub fn expand_sod(design: &DesignMatrix, rep: &Remrep, h: &IntMatrix) -> Result<DesignMatrix> {
    if design.presentation() != rep.presentation() {
        return Err(Error::PresentationMismatch {
            expected: rep.presentation().name.clone(),
            found: design.presentation().name.clone(),
        });
    }
    if h.order() != rep.degree() {
        return Err(Error::OrderMismatch { expected: rep.degree(), found: h.order() });
    }
    h.check_hadamard()?;
    let m = rep.degree();
    let out_order = design.order() * m;
    let out_type: Vec<u64> = design.claimed_type().iter().map(|&u| u * m as u64).collect();
    let mut out = DesignMatrix::new(GroupPresentation::s_r(), out_order, out_type);
    for r in 0..design.order() {
        for c in 0..design.order() {
            let Some((e, var)) = design.entry(r, c) else { continue };
            let block = rep.image(e);
            for p in 0..m {
                let row_sign = i32::from(block.signs[p]);
                let hp = block.perm[p] as usize;
                for q in 0..m {
                    let v = row_sign * h.entry(hp, q);
                    out.set(r * m + p, c * m + q, Some((GroupElement::new(v as i8, 0), var)));
                }
            }
        }
    }
    Ok(out)
}

/// Double a design over the one-generator presentation (`i^2 = -1`) into an
/// ordinary design of twice the order with every weight doubled, via the
/// degree-2 representation `i -> [[0,-1],[1,0]]`.
pub fn cod_to_od(design: &DesignMatrix) -> Result<DesignMatrix> {
    let rep = Remrep::new(
        GroupPresentation::s_c(),
        vec![SignedPermMatrix::new(vec![1, 0], vec![-1, 1])],
    )?;
    expand_sod(design, &rep, &sylvester_hadamard(1))
}
