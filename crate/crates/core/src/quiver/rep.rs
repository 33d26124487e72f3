use crate::error::{Error, Result};
use crate::linalg::{CoeffRing, RingMatrix};

/// A representation `M_1 -> M_2 -> ... -> M_n` of the line quiver by free
/// modules. Vertices are numbered from 1 in the API and stored from 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineRep {
    ring: CoeffRing,
    vdims: Vec<usize>,
    arrows: Vec<RingMatrix>,
}

/// Multiplicities `P^1, ..., P^n` of the indecomposable projectives
/// `e_λ(i)` in a projective representation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ProjDecomposition {
    pub ranks: Vec<usize>,
}

impl ProjDecomposition {
    /// Rank at vertex `v` (0-based) of `⊕ e_λ(i)^{P^i}`.
    pub fn lambda_dim(&self, v: usize) -> usize {
        self.ranks[..=v].iter().sum()
    }
    /// Rank at vertex `v` (0-based) of `⊕ e_ρ(i)^{P^i}`.
    pub fn rho_dim(&self, v: usize) -> usize {
        self.ranks[v..].iter().sum()
    }
}

impl LineRep {
    pub fn new(ring: CoeffRing, vdims: Vec<usize>, arrows: Vec<RingMatrix>) -> Result<Self> {
        if vdims.is_empty() {
            return Err(Error::OutOfRange("a line quiver needs at least one vertex".into()));
        }
        if arrows.len() + 1 != vdims.len() {
            return Err(Error::Shape(format!("{} vertices need {} arrows", vdims.len(), vdims.len() - 1)));
        }
        for (v, a) in arrows.iter().enumerate() {
            if a.shape() != (vdims[v + 1], vdims[v]) || a.ring() != ring {
                return Err(Error::Shape(format!("arrow out of vertex {} has the wrong shape", v + 1)));
            }
        }
        Ok(LineRep { ring, vdims, arrows })
    }

    pub fn zero(ring: CoeffRing, n: usize) -> Self {
        let arrows = (1..n).map(|_| RingMatrix::zeros(ring, 0, 0)).collect();
        LineRep { ring, vdims: vec![0; n], arrows }
    }

    fn check_vertex(n: usize, i: usize) -> Result<()> {
        if (1..=n).contains(&i) {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("vertex {i} outside 1..={n}")))
        }
    }

    /// `(0, ..., 0, M, M, ..., M)` starting at vertex `i`, identities after.
    pub fn e_lambda(ring: CoeffRing, n: usize, i: usize, rank: usize) -> Result<Self> {
        Self::check_vertex(n, i)?;
        let mut ranks = vec![0; n];
        ranks[i - 1] = rank;
        Ok(Self::canonical_lambda(ring, &ProjDecomposition { ranks }))
    }

    /// `(M, ..., M, 0, ..., 0)` ending at vertex `i`, identities before.
    pub fn e_rho(ring: CoeffRing, n: usize, i: usize, rank: usize) -> Result<Self> {
        Self::check_vertex(n, i)?;
        let mut ranks = vec![0; n];
        ranks[i - 1] = rank;
        Ok(Self::canonical_rho(ring, &ProjDecomposition { ranks }))
    }

    /// `⊕ e_λ(i)^{P^i}` with summands ordered by `i`; arrows include the
    /// leading coordinates.
    pub fn canonical_lambda(ring: CoeffRing, p: &ProjDecomposition) -> Self {
        let n = p.ranks.len();
        let vdims: Vec<usize> = (0..n).map(|v| p.lambda_dim(v)).collect();
        let arrows = (0..n.saturating_sub(1)).map(|v| inclusion(ring, vdims[v + 1], vdims[v])).collect();
        LineRep { ring, vdims, arrows }
    }

    /// `⊕ e_ρ(i)^{P^i}`; arrows drop the `P^v` coordinates.
    pub fn canonical_rho(ring: CoeffRing, p: &ProjDecomposition) -> Self {
        let n = p.ranks.len();
        let vdims: Vec<usize> = (0..n).map(|v| p.rho_dim(v)).collect();
        let arrows = (0..n.saturating_sub(1))
            .map(|v| {
                let mut a = RingMatrix::zeros(ring, vdims[v + 1], vdims[v]);
                a.set_block(0, p.ranks[v], &RingMatrix::identity(ring, vdims[v + 1]));
                a
            })
            .collect();
        LineRep { ring, vdims, arrows }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }
    pub fn vertex_count(&self) -> usize {
        self.vdims.len()
    }
    pub fn vdims(&self) -> &[usize] {
        &self.vdims
    }
    /// Arrow out of 0-based vertex `v`.
    pub fn arrow(&self, v: usize) -> &RingMatrix {
        &self.arrows[v]
    }
    pub fn is_zero(&self) -> bool {
        self.vdims.iter().all(|&d| d == 0)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let vdims = self.vdims.iter().zip(&other.vdims).map(|(a, b)| a + b).collect();
        let arrows = self
            .arrows
            .iter()
            .zip(&other.arrows)
            .map(|(a, b)| RingMatrix::block_diag(self.ring, &[a.clone(), b.clone()]))
            .collect();
        LineRep { ring: self.ring, vdims, arrows }
    }

    /// Whether `g` (one matrix per vertex) is a morphism `self -> target`.
    pub fn is_morphism_to(&self, target: &LineRep, g: &[RingMatrix]) -> bool {
        g.len() == self.vdims.len()
            && g.iter().enumerate().all(|(v, m)| m.shape() == (target.vdims[v], self.vdims[v]))
            && (0..self.arrows.len()).all(|v| &target.arrows[v] * &g[v] == &g[v + 1] * &self.arrows[v])
    }

    /// Summand multiplicities, or the first arrow that is not a split
    /// injection with free cokernel.
    pub fn decompose_projective(&self) -> Result<ProjDecomposition> {
        let mut ranks = vec![self.vdims[0]];
        for (v, a) in self.arrows.iter().enumerate() {
            // Over a local ring, split injectivity is injectivity mod x.
            if a.mod_x().rank() != a.cols() {
                return Err(Error::NotProjective(format!(
                    "arrow from vertex {} to vertex {} is not a split injection",
                    v + 1,
                    v + 2
                )));
            }
            ranks.push(a.rows() - a.cols());
        }
        Ok(ProjDecomposition { ranks })
    }

    /// An isomorphism onto the canonical form `⊕ e_λ(i)^{P^i}`: returns the
    /// decomposition, the vertexwise iso `self -> canonical` and its inverse.
    pub fn canonical_iso(&self) -> Result<(ProjDecomposition, Vec<RingMatrix>, Vec<RingMatrix>)> {
        let dec = self.decompose_projective()?;
        let ring = self.ring;
        // Adapted bases: columns of basis[v] are the images of the canonical
        // generators at vertex v.
        let mut bases = vec![RingMatrix::identity(ring, self.vdims[0])];
        for (v, a) in self.arrows.iter().enumerate() {
            let pushed = a * &bases[v];
            let mut cols = vec![pushed.clone()];
            let mut rank = pushed.mod_x().rank();
            let dim = self.vdims[v + 1];
            for k in 0..dim {
                if rank == dim {
                    break;
                }
                let mut e = RingMatrix::zeros(ring, dim, 1);
                e.set_int(k, 0, 1);
                cols.push(e);
                let trial = RingMatrix::hstack(ring, dim, &cols);
                let r = trial.mod_x().rank();
                if r > rank {
                    rank = r;
                } else {
                    cols.pop();
                }
            }
            bases.push(RingMatrix::hstack(ring, dim, &cols));
        }
        let inverses = bases
            .iter()
            .map(|b| b.inverse().ok_or_else(|| Error::Internal("adapted basis is singular".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok((dec, inverses, bases))
    }
}

fn inclusion(ring: CoeffRing, rows: usize, cols: usize) -> RingMatrix {
    let mut a = RingMatrix::zeros(ring, rows, cols);
    a.set_block(0, 0, &RingMatrix::identity(ring, cols));
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> CoeffRing {
        CoeffRing::PrimeField { p: 2 }
    }

    #[test]
    fn indecomposables() {
        let l = LineRep::e_lambda(k(), 2, 1, 1).unwrap();
        assert_eq!(l.vdims(), &[1, 1]);
        assert_eq!(l.arrow(0), &RingMatrix::identity(k(), 1));
        let r = LineRep::e_rho(k(), 2, 1, 1).unwrap();
        assert_eq!(r.vdims(), &[1, 0]);
        let top = LineRep::e_lambda(k(), 3, 3, 2).unwrap();
        assert_eq!(top.vdims(), &[0, 0, 2]);
        assert!(LineRep::e_lambda(k(), 3, 4, 1).is_err());
    }

    #[test]
    fn decompositions() {
        let a = LineRep::e_lambda(k(), 3, 2, 2).unwrap().direct_sum(&LineRep::e_lambda(k(), 3, 1, 1).unwrap());
        assert_eq!(a.decompose_projective().unwrap().ranks, vec![1, 2, 0]);
        let zero_arrow = LineRep::new(k(), vec![1, 1], vec![RingMatrix::zeros(k(), 1, 1)]).unwrap();
        assert!(matches!(zero_arrow.decompose_projective(), Err(Error::NotProjective(_))));
        let one_two = LineRep::new(k(), vec![1, 2], vec![RingMatrix::from_ints(k(), 2, 1, &[1, 1])]).unwrap();
        assert_eq!(one_two.decompose_projective().unwrap().ranks, vec![1, 1]);
    }

    #[test]
    fn x_is_not_split_over_truncated_ring() {
        let r = CoeffRing::TruncatedPoly { p: 3, m: 2 };
        let x = RingMatrix::from_elems(r, 1, 1, vec![crate::linalg::Elem::Poly(vec![0, 1])]).unwrap();
        let rep = LineRep::new(r, vec![1, 1], vec![x]).unwrap();
        assert!(rep.decompose_projective().is_err());
    }

    #[test]
    fn canonical_iso_is_a_morphism() {
        let r = CoeffRing::TruncatedPoly { p: 2, m: 2 };
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
        let a = RingMatrix::random_invertible(r, 3, &mut rng).block(0, 0, 3, 2);
        let rep = LineRep::new(r, vec![2, 3], vec![a]).unwrap();
        let (dec, phi, inv) = rep.canonical_iso().unwrap();
        let canon = LineRep::canonical_lambda(r, &dec);
        assert!(rep.is_morphism_to(&canon, &phi));
        assert!(canon.is_morphism_to(&rep, &inv));
    }
}
