use std::collections::BTreeMap;

use rand::Rng;

use super::LineRep;
use crate::error::{Error, Result};
use crate::homotopy::{Components, Graded, HomDims, HomEngine};
use crate::linalg::{quotient_dim, CoeffRing, QuotientDim, RingMatrix};
use crate::ncomplex::{joint_support, Support};

/// An ordinary complex of line-quiver representations by free modules,
/// i.e. of projective modules over the triangular matrix ring when every
/// term is projective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepComplex {
    ring: CoeffRing,
    vertices: usize,
    support: Support,
    terms: Vec<LineRep>,
    diffs: Vec<Vec<RingMatrix>>,
}

impl RepComplex {
    pub fn zero(ring: CoeffRing, vertices: usize) -> Self {
        RepComplex { ring, vertices, support: Support::EMPTY, terms: vec![], diffs: vec![] }
    }

    /// Build from degreewise terms and vertexwise differentials and check
    /// every invariant.
    pub fn new(
        ring: CoeffRing,
        vertices: usize,
        support: Support,
        terms: Vec<LineRep>,
        diffs: Vec<Vec<RingMatrix>>,
    ) -> Result<Self> {
        let x = Self::from_parts(ring, vertices, support, terms, diffs)?;
        x.validate()?;
        Ok(x)
    }

    fn from_parts(
        ring: CoeffRing,
        vertices: usize,
        support: Support,
        terms: Vec<LineRep>,
        diffs: Vec<Vec<RingMatrix>>,
    ) -> Result<Self> {
        let len = support.degrees().count();
        if terms.len() != len || diffs.len() != len {
            return Err(Error::Shape(format!("support has {len} degrees, got {} terms", terms.len())));
        }
        if terms.iter().any(|t| t.vertex_count() != vertices || t.ring() != ring) {
            return Err(Error::Shape("term with the wrong vertex count or ring".into()));
        }
        Ok(RepComplex { ring, vertices, support, terms, diffs })
    }

    pub(crate) fn from_fn(
        ring: CoeffRing,
        vertices: usize,
        support: Support,
        term: impl Fn(i64) -> LineRep,
        d: impl Fn(i64) -> Vec<RingMatrix>,
    ) -> Self {
        let terms = support.degrees().map(&term).collect();
        let diffs = support.degrees().map(&d).collect();
        let x = Self::from_parts(ring, vertices, support, terms, diffs).expect("inconsistent rep complex");
        debug_assert!(x.validate().is_ok(), "constructor produced an invalid rep complex: {:?}", x.validate());
        x.trimmed()
    }

    /// The one-term complex with `rep` in degree `deg`.
    pub fn stalk(rep: LineRep, deg: i64) -> Self {
        let ring = rep.ring();
        let n = rep.vertex_count();
        let d = rep.vdims().iter().map(|&c| RingMatrix::zeros(ring, 0, c)).collect();
        RepComplex { ring, vertices: n, support: Support::Bounded { lo: deg, hi: deg }, terms: vec![rep], diffs: vec![d] }
    }

    /// Complex `a -> b` in degrees `deg, deg + 1`.
    pub fn two_term(a: LineRep, b: LineRep, d: Vec<RingMatrix>, deg: i64) -> Result<Self> {
        let ring = a.ring();
        let n = a.vertex_count();
        let top = b.vdims().iter().map(|&c| RingMatrix::zeros(ring, 0, c)).collect();
        Self::new(ring, n, Support::Bounded { lo: deg, hi: deg + 1 }, vec![a, b], vec![d, top])
    }

    fn index(&self, i: i64) -> Option<usize> {
        match self.support {
            Support::Bounded { lo, hi } => (lo <= i && i <= hi).then(|| (i - lo) as usize),
            Support::Periodic { period } => Some(i.rem_euclid(period as i64) as usize),
        }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }
    pub fn vertices(&self) -> usize {
        self.vertices
    }
    pub fn support(&self) -> Support {
        self.support
    }
    pub fn period(&self) -> Option<usize> {
        match self.support {
            Support::Periodic { period } => Some(period),
            _ => None,
        }
    }

    pub fn term(&self, i: i64) -> LineRep {
        match self.index(i) {
            Some(k) => self.terms[k].clone(),
            None => LineRep::zero(self.ring, self.vertices),
        }
    }

    /// Vertexwise differential out of degree `i`.
    pub fn d(&self, i: i64) -> Vec<RingMatrix> {
        match self.index(i) {
            Some(k) => self.diffs[k].clone(),
            None => {
                let (a, b) = (self.term(i), self.term(i + 1));
                (0..self.vertices).map(|v| RingMatrix::zeros(self.ring, b.vdims()[v], a.vdims()[v])).collect()
            }
        }
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.support.degrees()
    }

    /// Degrees with a nonzero term.
    pub fn nonzero_degrees(&self) -> Vec<i64> {
        self.degrees().filter(|&i| !self.term(i).is_zero()).collect()
    }

    pub fn trimmed(self) -> Self {
        if self.support.is_periodic() {
            return self;
        }
        let nz = self.nonzero_degrees();
        let (Some(&lo), Some(&hi)) = (nz.first(), nz.last()) else {
            return Self::zero(self.ring, self.vertices);
        };
        let (a, b) = (self.index(lo).unwrap(), self.index(hi).unwrap());
        let mut diffs = self.diffs[a..=b].to_vec();
        let top = self.terms[b].vdims().iter().map(|&c| RingMatrix::zeros(self.ring, 0, c)).collect();
        *diffs.last_mut().unwrap() = top;
        RepComplex {
            ring: self.ring,
            vertices: self.vertices,
            support: Support::Bounded { lo, hi },
            terms: self.terms[a..=b].to_vec(),
            diffs,
        }
    }

    /// Bounded complex agreeing with `self` on `lo..=hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Self {
        let support = Support::Bounded { lo, hi: hi.max(lo - 1) };
        let terms = support.degrees().map(|i| self.term(i)).collect();
        let diffs = support
            .degrees()
            .map(|i| {
                if i == hi {
                    self.term(i).vdims().iter().map(|&c| RingMatrix::zeros(self.ring, 0, c)).collect()
                } else {
                    self.d(i)
                }
            })
            .collect();
        Self::from_parts(self.ring, self.vertices, support, terms, diffs).unwrap()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let support = joint_support(self.support, other.support)?;
        Ok(Self::from_fn(
            self.ring,
            self.vertices,
            support,
            |i| self.term(i).direct_sum(&other.term(i)),
            |i| {
                self.d(i)
                    .into_iter()
                    .zip(other.d(i))
                    .map(|(a, b)| RingMatrix::block_diag(self.ring, &[a, b]))
                    .collect()
            },
        ))
    }

    /// The classical shift `X[1]^i = X^{i+1}`, `d[1] = -d`.
    pub fn shift(&self) -> Self {
        let support = match self.support {
            Support::Bounded { lo, hi } if lo <= hi => Support::Bounded { lo: lo - 1, hi: hi - 1 },
            s => s,
        };
        Self::from_fn(self.ring, self.vertices, support, |i| self.term(i + 1), |i| {
            self.d(i + 1).iter().map(|m| -m).collect()
        })
    }

    /// Shapes, arrow commutation of the differentials, and `d^2 = 0`.
    pub fn validate(&self) -> Result<()> {
        for i in self.degrees() {
            let (a, b, c) = (self.term(i), self.term(i + 1), self.term(i + 2));
            let d = self.d(i);
            if !a.is_morphism_to(&b, &d) {
                return Err(Error::InvalidComplex { degree: i, reason: "differential is not a representation morphism".into() });
            }
            let d2 = self.d(i + 1);
            if d.len() != d2.len() || !b.is_morphism_to(&c, &d2) {
                return Err(Error::InvalidComplex {
                    degree: i + 1,
                    reason: "differential is not a representation morphism".into(),
                });
            }
            if d.iter().zip(&d2).any(|(x, y)| !(y * x).is_zero()) {
                return Err(Error::InvalidComplex { degree: i, reason: "d^2 is nonzero".into() });
            }
        }
        Ok(())
    }

    /// Classical homology of the complex at vertex `v` (0-based) and degree `i`.
    pub fn vertex_homology(&self, v: usize, i: i64) -> Result<QuotientDim> {
        let z = self.d(i)[v].kernel_basis();
        let b = self.d(i - 1)[v].ground_matrix();
        quotient_dim(self.ring, &z, &b)
    }

    /// Whether every vertex complex is acyclic.
    pub fn is_acyclic(&self) -> Result<bool> {
        for i in self.degrees() {
            for v in 0..self.vertices {
                if !self.vertex_homology(v, i)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Sum of all vertexwise homology dimensions.
    pub fn total_homology(&self) -> Result<usize> {
        let mut t = 0;
        for i in self.degrees() {
            for v in 0..self.vertices {
                t += self.vertex_homology(v, i)?.dim;
            }
        }
        Ok(t)
    }
}

impl Graded for RepComplex {
    fn ring(&self) -> CoeffRing {
        self.ring
    }
    fn order(&self) -> usize {
        2
    }
    fn vertex_count(&self) -> usize {
        self.vertices
    }
    fn support(&self) -> Support {
        self.support
    }
    fn vdims(&self, i: i64) -> Vec<usize> {
        self.term(i).vdims().to_vec()
    }
    fn arrow(&self, i: i64, v: usize) -> RingMatrix {
        self.term(i).arrow(v).clone()
    }
    fn diff(&self, i: i64) -> Vec<RingMatrix> {
        self.d(i)
    }
}

/// A chain map of rep-complexes: degreewise, vertexwise matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepChainMap {
    source: RepComplex,
    target: RepComplex,
    maps: BTreeMap<i64, Vec<RingMatrix>>,
    period: Option<usize>,
}

impl RepChainMap {
    /// Build from a degreewise callback without checking commutation.
    pub fn from_fn_unchecked(source: &RepComplex, target: &RepComplex, f: impl Fn(i64) -> Vec<RingMatrix>) -> Result<Self> {
        let support = joint_support(source.support, target.support)?;
        let maps = support.degrees().map(|i| (i, f(i))).collect();
        Ok(RepChainMap { source: source.clone(), target: target.clone(), maps, period: support_period(support) })
    }

    pub fn new(source: &RepComplex, target: &RepComplex, f: impl Fn(i64) -> Vec<RingMatrix>) -> Result<Self> {
        let g = Self::from_fn_unchecked(source, target, f)?;
        g.validate()?;
        Ok(g)
    }

    pub fn identity(x: &RepComplex) -> Self {
        Self::from_fn_unchecked(x, x, |i| x.term(i).vdims().iter().map(|&d| RingMatrix::identity(x.ring, d)).collect())
            .unwrap()
    }

    pub fn zero(x: &RepComplex, y: &RepComplex) -> Result<Self> {
        Self::from_fn_unchecked(x, y, |i| zeros(x.ring, &y.term(i), &x.term(i)))
    }

    pub fn source(&self) -> &RepComplex {
        &self.source
    }
    pub fn target(&self) -> &RepComplex {
        &self.target
    }

    pub fn map(&self, i: i64) -> Vec<RingMatrix> {
        let key = self.period.map_or(i, |p| i.rem_euclid(p as i64));
        self.maps
            .get(&key)
            .cloned()
            .unwrap_or_else(|| zeros(self.source.ring, &self.target.term(i), &self.source.term(i)))
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.maps.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.maps.values().flatten().all(RingMatrix::is_zero)
    }

    /// Components are representation morphisms commuting with `d`.
    pub fn validate(&self) -> Result<()> {
        let degs = self.degrees();
        let (Some(&lo), Some(&hi)) = (degs.first(), degs.last()) else { return Ok(()) };
        for i in lo - 1..=hi {
            let f = self.map(i);
            if !self.source.term(i).is_morphism_to(&self.target.term(i), &f) {
                return Err(Error::InvalidChainMap { degree: i, reason: "component is not a representation morphism".into() });
            }
            let f1 = self.map(i + 1);
            let dx = self.source.d(i);
            let dy = self.target.d(i);
            for v in 0..f.len() {
                if &f1[v] * &dx[v] != &dy[v] * &f[v] {
                    return Err(Error::InvalidChainMap { degree: i, reason: format!("square at vertex {} does not commute", v + 1) });
                }
            }
        }
        Ok(())
    }

    pub fn compose(g: &Self, f: &Self) -> Result<Self> {
        if f.target != g.source {
            return Err(Error::Shape("composing rep maps whose middle complexes differ".into()));
        }
        Self::from_fn_unchecked(&f.source, &g.target, |i| g.map(i).iter().zip(f.map(i)).map(|(a, b)| a * &b).collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("subtracting rep maps between different complexes".into()));
        }
        Self::from_fn_unchecked(&self.source, &self.target, |i| {
            self.map(i).iter().zip(other.map(i)).map(|(a, b)| a - &b).collect()
        })
    }
}

fn support_period(s: Support) -> Option<usize> {
    match s {
        Support::Periodic { period } => Some(period),
        _ => None,
    }
}

fn zeros(ring: CoeffRing, to: &LineRep, from: &LineRep) -> Vec<RingMatrix> {
    to.vdims().iter().zip(from.vdims()).map(|(&r, &c)| RingMatrix::zeros(ring, r, c)).collect()
}

/// A classical homotopy `t^i: X^i -> Y^{i-1}` between rep-complexes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RepHomotopy {
    pub t: BTreeMap<i64, Vec<RingMatrix>>,
    pub period: Option<usize>,
}

impl RepHomotopy {
    pub fn get(&self, x: &RepComplex, y: &RepComplex, i: i64) -> Vec<RingMatrix> {
        let key = self.period.map_or(i, |p| i.rem_euclid(p as i64));
        self.t.get(&key).cloned().unwrap_or_else(|| zeros(x.ring, &y.term(i - 1), &x.term(i)))
    }

    /// `d_Y^{i-1} t^i + t^{i+1} d_X^i` in every degree.
    pub fn boundary(&self, x: &RepComplex, y: &RepComplex) -> Result<RepChainMap> {
        RepChainMap::from_fn_unchecked(x, y, |i| {
            let (t0, t1) = (self.get(x, y, i), self.get(x, y, i + 1));
            let (dy, dx) = (y.d(i - 1), x.d(i));
            (0..x.vertices).map(|v| &(&dy[v] * &t0[v]) + &(&t1[v] * &dx[v])).collect()
        })
    }

    /// Whether `f = d t + t d` holds exactly, and each `t^i` is a
    /// representation morphism.
    pub fn verifies(&self, f: &RepChainMap) -> bool {
        let (x, y) = (f.source(), f.target());
        let morphisms = self.t.iter().all(|(&i, t)| x.term(i).is_morphism_to(&y.term(i - 1), t));
        let Ok(b) = self.boundary(x, y) else { return false };
        let mut degs = f.degrees();
        degs.extend(b.degrees());
        morphisms && degs.into_iter().all(|i| f.map(i) == b.map(i))
    }
}

fn components_of(f: &RepChainMap) -> impl Fn(i64) -> Vec<RingMatrix> + '_ {
    move |i| f.map(i)
}

/// A classical null-homotopy of `f`, verified by evaluation.
pub fn rep_null_homotopy(f: &RepChainMap) -> Result<Option<RepHomotopy>> {
    f.validate()?;
    let eng = HomEngine::new(f.source(), f.target())?;
    let Some(t) = eng.solve_homotopy(&components_of(f))? else { return Ok(None) };
    let h = RepHomotopy { t, period: support_period(joint_support(f.source().support, f.target().support)?) };
    if !h.verifies(f) {
        return Err(Error::Internal("rep homotopy fails f = dt + td".into()));
    }
    Ok(Some(h))
}

pub fn rep_hom_space_dim(x: &RepComplex, y: &RepComplex) -> Result<HomDims> {
    Ok(HomEngine::new(x, y)?.dims())
}

pub fn random_rep_chain_map<R: Rng + ?Sized>(x: &RepComplex, y: &RepComplex, rng: &mut R) -> Result<RepChainMap> {
    let eng = HomEngine::new(x, y)?;
    let c: Components = eng.random_chain_map(rng);
    let at = eng.lookup(&c, 0);
    RepChainMap::from_fn_unchecked(x, y, at)
}

/// Chain maps inverse to each other up to homotopy, by randomized search.
pub fn rep_homotopy_equivalence<R: Rng + ?Sized>(
    x: &RepComplex,
    y: &RepComplex,
    rng: &mut R,
    attempts: usize,
) -> Result<Option<(RepChainMap, RepChainMap)>> {
    let Some((u, v)) = crate::homotopy::engine::find_homotopy_equivalence(x, y, rng, attempts)? else {
        return Ok(None);
    };
    let from = |c: &Components, a: &RepComplex, b: &RepComplex| {
        RepChainMap::from_fn_unchecked(a, b, |i| c.get(&i).cloned().unwrap_or_else(|| zeros(a.ring, &b.term(i), &a.term(i))))
    };
    Ok(Some((from(&u, x, y)?, from(&v, y, x)?)))
}
