//! The homotopy category: null-homotopies, hom dimensions and
//! quasi-isomorphisms.

pub mod engine;

use std::collections::BTreeMap;

use rand::Rng;

pub use engine::{Components, Graded, HomDims, HomEngine};

use crate::error::{Error, Result};
use crate::linalg::{CoeffRing, RingMatrix};
use crate::ncomplex::{is_n_exact, ChainMapN, NComplex, Support};

impl Graded for NComplex {
    fn ring(&self) -> CoeffRing {
        NComplex::ring(self)
    }
    fn order(&self) -> usize {
        NComplex::order(self)
    }
    fn vertex_count(&self) -> usize {
        1
    }
    fn support(&self) -> Support {
        NComplex::support(self)
    }
    fn vdims(&self, i: i64) -> Vec<usize> {
        vec![self.dim(i)]
    }
    fn arrow(&self, _i: i64, _v: usize) -> RingMatrix {
        unreachable!("N-complexes have a single vertex")
    }
    fn diff(&self, i: i64) -> Vec<RingMatrix> {
        vec![self.d(i)]
    }
    fn diff_comp(&self, i: i64, r: usize) -> Vec<RingMatrix> {
        vec![self.comp(i, r)]
    }
}

/// A family `s^i: X^i -> Y^{i-N+1}` exhibiting a map as null-homotopic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyWitness {
    pub s: BTreeMap<i64, RingMatrix>,
    /// Set when the family is periodic in the degree.
    pub period: Option<usize>,
}

impl HomotopyWitness {
    pub fn zero() -> Self {
        HomotopyWitness { s: BTreeMap::new(), period: None }
    }

    /// `s^i`, zero when not stored.
    pub fn get(&self, x: &NComplex, y: &NComplex, i: i64) -> RingMatrix {
        let key = self.period.map_or(i, |p| i.rem_euclid(p as i64));
        let n = x.order() as i64;
        match self.s.get(&key) {
            Some(m) => m.clone(),
            None => RingMatrix::zeros(x.ring(), y.dim(i - n + 1), x.dim(i)),
        }
    }

    /// The chain map `Σ_j d_Y{N-1-j} s^{i+j} d_X{j}`.
    pub fn reconstruct(&self, x: &NComplex, y: &NComplex) -> ChainMapN {
        let n = x.order() as i64;
        let f = |i: i64| -> RingMatrix {
            let mut acc = RingMatrix::zeros(x.ring(), y.dim(i), x.dim(i));
            for j in 0..n {
                let s = self.get(x, y, i + j);
                if s.is_zero() {
                    continue;
                }
                let term = &(&y.comp(i + j - n + 1, (n - 1 - j) as usize) * &s) * &x.comp(i, j as usize);
                acc = &acc + &term;
            }
            acc
        };
        ChainMapN::from_fn_unchecked(x, y, f).expect("reconstruction has consistent shapes")
    }

    /// Whether the reconstruction identity reproduces `f` exactly.
    pub fn verifies(&self, f: &ChainMapN) -> bool {
        let g = self.reconstruct(f.source(), f.target());
        f.degrees().chain(g.degrees()).all(|i| f.map(i) == g.map(i))
    }
}

fn chain_map_components(f: &ChainMapN) -> impl Fn(i64) -> Vec<RingMatrix> + '_ {
    move |i| vec![f.map(i)]
}

/// A null-homotopy for `f`, or `None` if `f` is not null-homotopic.
/// Periodic maps get periodic witnesses.
pub fn null_homotopy(f: &ChainMapN) -> Result<Option<HomotopyWitness>> {
    f.validate()?;
    let eng = HomEngine::new(f.source(), f.target())?;
    let Some(s) = eng.solve_homotopy(&chain_map_components(f))? else { return Ok(None) };
    let period = match (f.source().period(), f.target().period()) {
        (Some(p), Some(q)) => Some(num_integer::lcm(p, q)),
        _ => None,
    };
    let w = HomotopyWitness { s: s.into_iter().map(|(i, mut v)| (i, v.remove(0))).collect(), period };
    if !w.verifies(f) {
        return Err(Error::Internal("homotopy witness fails the reconstruction identity".into()));
    }
    Ok(Some(w))
}

pub fn is_null_homotopic(f: &ChainMapN) -> Result<bool> {
    Ok(null_homotopy(f)?.is_some())
}

/// Dimensions of `Hom(x, y)` at chain level, of its null-homotopic part,
/// and of their quotient `Hom_K(x, y)`.
pub fn hom_space_dim(x: &NComplex, y: &NComplex) -> Result<HomDims> {
    Ok(HomEngine::new(x, y)?.dims())
}

/// A uniformly random chain map `x -> y`.
pub fn random_chain_map<R: Rng + ?Sized>(x: &NComplex, y: &NComplex, rng: &mut R) -> Result<ChainMapN> {
    let eng = HomEngine::new(x, y)?;
    let c = eng.random_chain_map(rng);
    let at = eng.lookup(&c, 0);
    ChainMapN::from_fn_unchecked(x, y, |i| at(i).remove(0))
}

/// Chain maps `u: x -> y`, `v: y -> x` with both composites homotopic to
/// the identity, found by randomized search.
pub fn homotopy_equivalence<R: Rng + ?Sized>(
    x: &NComplex,
    y: &NComplex,
    rng: &mut R,
    attempts: usize,
) -> Result<Option<(ChainMapN, ChainMapN)>> {
    let Some((u, v)) = engine::find_homotopy_equivalence(x, y, rng, attempts)? else { return Ok(None) };
    let pick = |c: &Components, a: &NComplex, b: &NComplex| {
        ChainMapN::from_fn_unchecked(a, b, |i| {
            let key = match a.period() {
                Some(p) => i.rem_euclid(num_integer::lcm(p, b.period().unwrap_or(p)) as i64),
                None => i,
            };
            c.get(&key).map_or_else(|| RingMatrix::zeros(a.ring(), b.dim(i), a.dim(i)), |m| m[0].clone())
        })
    };
    Ok(Some((pick(&u, x, y)?, pick(&v, y, x)?)))
}

/// Whether every induced map `H^i_r(f)` is bijective. Cross-checked
/// against exactness of the cone.
pub fn is_quasi_iso(f: &ChainMapN) -> Result<bool> {
    f.validate()?;
    let (x, y) = (f.source(), f.target());
    let n = x.order();
    let degrees: Vec<i64> = f.degrees().collect();
    let mut iso = true;
    'outer: for &i in &degrees {
        for r in 1..n {
            let hx = x.homology_at(i, r)?;
            let hy = y.homology_at(i, r)?;
            if hx.dim != hy.dim {
                iso = false;
                break 'outer;
            }
            if hx.dim == 0 {
                continue;
            }
            let zx = x.cycles(i, r);
            let by = y.boundaries(i, n - r);
            let fz = &f.map(i).ground_matrix() * &zx;
            let ground = x.ring().ground_ring();
            let rows = by.rows();
            let image = RingMatrix::hstack(ground, rows, &[fz, by.clone()]).rank() - by.rank();
            let bx = x.boundaries(i, n - r);
            let image_of_b = RingMatrix::hstack(ground, rows, &[&f.map(i).ground_matrix() * &bx, by.clone()]).rank()
                - by.rank();
            debug_assert_eq!(image_of_b, 0);
            if image != hx.dim {
                iso = false;
                break 'outer;
            }
        }
    }
    let cone_exact = is_n_exact(&NComplex::cone(f))?;
    if cone_exact != iso {
        return Err(Error::Internal(format!(
            "quasi-isomorphism test disagrees with cone exactness ({iso} vs {cone_exact})"
        )));
    }
    Ok(iso)
}
