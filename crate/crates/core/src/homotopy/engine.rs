//! Linear-algebra engine for morphism and homotopy spaces between graded
//! objects whose terms are representations of a line quiver by free modules.
//! N-complexes are the one-vertex case.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{CoeffRing, RingMatrix};
use crate::ncomplex::Support;

/// A degreewise family of vertexwise matrices.
pub type Components = BTreeMap<i64, Vec<RingMatrix>>;

/// Objects the engine can compute with.
pub trait Graded {
    fn ring(&self) -> CoeffRing;
    /// Nilpotency order N of the differential.
    fn order(&self) -> usize;
    fn vertex_count(&self) -> usize;
    fn support(&self) -> Support;
    /// Free ranks at each vertex of the degree-`i` term.
    fn vdims(&self, i: i64) -> Vec<usize>;
    /// Structure map from vertex `v` to vertex `v + 1` in degree `i`.
    fn arrow(&self, i: i64, v: usize) -> RingMatrix;
    /// Vertexwise differential out of degree `i`.
    fn diff(&self, i: i64) -> Vec<RingMatrix>;

    /// Vertexwise composite of `r` differentials starting at degree `i`.
    fn diff_comp(&self, i: i64, r: usize) -> Vec<RingMatrix> {
        let ring = self.ring();
        let mut acc: Vec<RingMatrix> = self.vdims(i).into_iter().map(|d| RingMatrix::identity(ring, d)).collect();
        for k in 0..r as i64 {
            let d = self.diff(i + k);
            acc = acc.iter().zip(&d).map(|(a, d)| d * a).collect();
        }
        acc
    }
}

/// Ground-field subspace of vertexwise matrix families `X^a -> Y^b` that
/// commute with the arrows.
#[derive(Clone, Debug)]
struct HomSpace {
    /// `(rows, cols)` per vertex.
    shapes: Vec<(usize, usize)>,
    basis: RingMatrix,
    /// Rows on which `basis` is the identity; coordinates of a member are
    /// read off these rows.
    coord_rows: Vec<usize>,
}

impl HomSpace {
    fn new(ring: CoeffRing, xd: &[usize], yd: &[usize], xa: &[RingMatrix], ya: &[RingMatrix]) -> Self {
        let shapes: Vec<(usize, usize)> = yd.iter().copied().zip(xd.iter().copied()).collect();
        let m = ring.degree();
        let raw: usize = shapes.iter().map(|(r, c)| r * c * m).sum();
        let ground = ring.ground_ring();
        if xa.is_empty() || raw == 0 {
            return HomSpace { shapes, basis: RingMatrix::identity(ground, raw), coord_rows: (0..raw).collect() };
        }
        // Image of each raw unit vector under g -> (Y_a g_v - g_{v+1} X_a)_v.
        let mut cols = Vec::with_capacity(raw);
        let mut unit = RingMatrix::zeros(ground, raw, 1);
        for k in 0..raw {
            if k > 0 {
                unit.set_int(k - 1, 0, 0);
            }
            unit.set_int(k, 0, 1);
            let g = split(ring, &shapes, &unit);
            let parts: Vec<RingMatrix> =
                (0..xa.len()).map(|v| (&(&ya[v] * &g[v]) - &(&g[v + 1] * &xa[v])).to_ground_vector()).collect();
            let rows: usize = parts.iter().map(RingMatrix::rows).sum();
            cols.push(RingMatrix::vstack(ground, 1, &parts));
            debug_assert_eq!(cols[0].rows(), rows);
        }
        let rows = cols[0].rows();
        let constraint = RingMatrix::hstack(ground, rows, &cols);
        let pivots = constraint.pivot_columns();
        let coord_rows: Vec<usize> = (0..raw).filter(|c| !pivots.contains(c)).collect();
        HomSpace { shapes, basis: constraint.kernel_basis(), coord_rows }
    }

    fn dim(&self) -> usize {
        self.coord_rows.len()
    }

    fn element(&self, ring: CoeffRing, coords: &RingMatrix) -> Vec<RingMatrix> {
        split(ring, &self.shapes, &(&self.basis * coords))
    }

    fn basis_element(&self, ring: CoeffRing, j: usize) -> Vec<RingMatrix> {
        split(ring, &self.shapes, &self.basis.block(0, j, self.basis.rows(), 1))
    }

    /// Coordinates of a member; `None` if `g` is not in the space.
    fn coords(&self, g: &[RingMatrix]) -> Option<RingMatrix> {
        let raw = join(self.basis.ring(), g);
        let c = raw.select_rows(&self.coord_rows);
        (&self.basis * &c == raw).then_some(c)
    }
}

fn split(ring: CoeffRing, shapes: &[(usize, usize)], v: &RingMatrix) -> Vec<RingMatrix> {
    let m = ring.degree();
    let mut off = 0;
    shapes
        .iter()
        .map(|&(r, c)| {
            let len = r * c * m;
            let part = v.block(off, 0, len, 1);
            off += len;
            RingMatrix::from_ground_vector(ring, r, c, &part)
        })
        .collect()
}

fn join(ground: CoeffRing, g: &[RingMatrix]) -> RingMatrix {
    let parts: Vec<RingMatrix> = g.iter().map(RingMatrix::to_ground_vector).collect();
    RingMatrix::vstack(ground, 1, &parts)
}

/// Dimensions of chain maps, null-homotopic maps and their quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HomDims {
    pub chain_maps: usize,
    pub null_homotopic: usize,
    pub hom_k: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Domain {
    Bounded,
    Cyclic(i64),
}

/// The morphism and homotopy spaces from `x` to `y`.
pub struct HomEngine<'a, X: Graded + ?Sized, Y: Graded + ?Sized> {
    x: &'a X,
    y: &'a Y,
    n: usize,
    ring: CoeffRing,
    domain: Domain,
    f_deg: Vec<i64>,
    s_deg: Vec<i64>,
    c_deg: Vec<i64>,
    spaces: HashMap<(i64, i64), HomSpace>,
}

fn interval(s: Support) -> Option<(i64, i64)> {
    match s {
        Support::Bounded { lo, hi } if lo <= hi => Some((lo, hi)),
        _ => None,
    }
}

fn range_meet(a: Option<(i64, i64)>, b: Option<(i64, i64)>, shift: i64) -> Vec<i64> {
    match (a, b) {
        (Some((a0, a1)), Some((b0, b1))) => (a0.max(b0 + shift)..=a1.min(b1 + shift)).collect(),
        _ => vec![],
    }
}

impl<'a, X: Graded + ?Sized, Y: Graded + ?Sized> HomEngine<'a, X, Y> {
    pub fn new(x: &'a X, y: &'a Y) -> Result<Self> {
        let n = x.order();
        let ring = x.ring();
        if y.order() != n || y.ring() != ring || x.vertex_count() != y.vertex_count() {
            return Err(Error::RingMismatch("hom between objects of different kinds".into()));
        }
        let nn = n as i64;
        let (domain, f_deg, s_deg, c_deg) = match (x.support(), y.support()) {
            (Support::Periodic { period: p }, Support::Periodic { period: q }) => {
                let l = num_integer::lcm(p, q) as i64;
                let all: Vec<i64> = (0..l).collect();
                (Domain::Cyclic(l), all.clone(), all.clone(), all)
            }
            (sx, sy) if sx.is_periodic() || sy.is_periodic() => {
                let empty = |s: Support| interval(s).is_none() && !s.is_periodic();
                if empty(sx) || empty(sy) {
                    (Domain::Bounded, vec![], vec![], vec![])
                } else {
                    return Err(Error::Support(
                        "hom between bounded and periodic objects needs a bounded window".into(),
                    ));
                }
            }
            (sx, sy) => {
                let (ix, iy) = (interval(sx), interval(sy));
                (Domain::Bounded, range_meet(ix, iy, 0), range_meet(ix, iy, nn - 1), range_meet(ix, iy, -1))
            }
        };
        let mut eng = HomEngine { x, y, n, ring, domain, f_deg, s_deg, c_deg, spaces: HashMap::new() };
        let mut pairs: Vec<(i64, i64)> = Vec::new();
        pairs.extend(eng.f_deg.iter().map(|&i| (i, i)));
        pairs.extend(eng.s_deg.iter().map(|&k| (k, k - nn + 1)));
        pairs.extend(eng.c_deg.iter().map(|&i| (i, i + 1)));
        for (a, b) in pairs {
            let key = eng.key(a, b);
            if !eng.spaces.contains_key(&key) {
                let sp = eng.build_space(a, b);
                eng.spaces.insert(key, sp);
            }
        }
        Ok(eng)
    }

    fn reduce(&self, i: i64) -> i64 {
        match self.domain {
            Domain::Cyclic(p) => i.rem_euclid(p),
            Domain::Bounded => i,
        }
    }

    fn key(&self, a: i64, b: i64) -> (i64, i64) {
        let ra = self.reduce(a);
        (ra, ra + (b - a))
    }

    fn build_space(&self, a: i64, b: i64) -> HomSpace {
        let xv = self.x.vertex_count();
        let xa: Vec<RingMatrix> = (0..xv.saturating_sub(1)).map(|v| self.x.arrow(a, v)).collect();
        let ya: Vec<RingMatrix> = (0..xv.saturating_sub(1)).map(|v| self.y.arrow(b, v)).collect();
        HomSpace::new(self.ring, &self.x.vdims(a), &self.y.vdims(b), &xa, &ya)
    }

    fn space(&self, a: i64, b: i64) -> &HomSpace {
        &self.spaces[&self.key(a, b)]
    }

    fn offsets(&self, degs: &[i64], shift: i64) -> (Vec<usize>, usize) {
        let mut off = Vec::with_capacity(degs.len());
        let mut total = 0;
        for &i in degs {
            off.push(total);
            total += self.space(i, i + shift).dim();
        }
        (off, total)
    }

    fn position(&self, degs: &[i64], i: i64) -> Option<usize> {
        let i = self.reduce(i);
        degs.binary_search(&i).ok()
    }

    /// Total coordinate count of degreewise morphisms.
    pub fn map_coordinate_count(&self) -> usize {
        self.offsets(&self.f_deg, 0).1
    }

    /// Matrix of `f -> (f^{i+1} d_X^i - d_Y^i f^i)_i` on coordinates.
    pub fn chain_operator(&self) -> RingMatrix {
        let ground = self.ring.ground_ring();
        let (f_off, f_tot) = self.offsets(&self.f_deg, 0);
        let (c_off, c_tot) = self.offsets(&self.c_deg, 1);
        let mut op = RingMatrix::zeros(ground, c_tot, f_tot);
        for (fi, &i) in self.f_deg.iter().enumerate() {
            let sp = self.space(i, i);
            let dy = self.y.diff(i);
            let dx = self.x.diff(i - 1);
            for j in 0..sp.dim() {
                let phi = sp.basis_element(self.ring, j);
                let col = f_off[fi] + j;
                if let Some(ci) = self.position(&self.c_deg, i) {
                    let img: Vec<RingMatrix> = phi.iter().zip(&dy).map(|(p, d)| -&(d * p)).collect();
                    self.accumulate(&mut op, c_off[ci], self.c_deg[ci], 1, &img, col);
                }
                if let Some(ci) = self.position(&self.c_deg, i - 1) {
                    let img: Vec<RingMatrix> = phi.iter().zip(&dx).map(|(p, d)| p * d).collect();
                    self.accumulate(&mut op, c_off[ci], self.c_deg[ci], 1, &img, col);
                }
            }
        }
        op
    }

    fn accumulate(&self, op: &mut RingMatrix, row0: usize, a: i64, shift: i64, g: &[RingMatrix], col: usize) {
        let sp = self.space(a, a + shift);
        if sp.dim() == 0 {
            return;
        }
        let c = sp.coords(g).expect("composite of morphisms left the morphism space");
        let cur = op.block(row0, col, c.rows(), 1);
        op.set_block(row0, col, &(&cur + &c));
    }

    /// Degreewise reconstruction sum of a homotopy family.
    pub fn reconstruct(&self, s: &dyn Fn(i64) -> Vec<RingMatrix>) -> Components {
        let nn = self.n as i64;
        let mut out = Components::new();
        for &i in &self.f_deg {
            let shapes: Vec<(usize, usize)> = self.y.vdims(i).into_iter().zip(self.x.vdims(i)).collect();
            let mut acc: Vec<RingMatrix> = shapes.iter().map(|&(r, c)| RingMatrix::zeros(self.ring, r, c)).collect();
            for j in 0..nn {
                let sk = s(i + j);
                if sk.iter().all(RingMatrix::is_zero) {
                    continue;
                }
                let dx = self.x.diff_comp(i, j as usize);
                let dy = self.y.diff_comp(i + j - nn + 1, (nn - 1 - j) as usize);
                for v in 0..acc.len() {
                    acc[v] = &acc[v] + &(&(&dy[v] * &sk[v]) * &dx[v]);
                }
            }
            out.insert(i, acc);
        }
        out
    }

    /// Matrix of the reconstruction map from homotopy coordinates to
    /// morphism coordinates.
    pub fn homotopy_operator(&self) -> RingMatrix {
        let nn = self.n as i64;
        let ground = self.ring.ground_ring();
        let (f_off, f_tot) = self.offsets(&self.f_deg, 0);
        let (s_off, s_tot) = self.offsets(&self.s_deg, 1 - nn);
        let mut op = RingMatrix::zeros(ground, f_tot, s_tot);
        for (si, &k) in self.s_deg.iter().enumerate() {
            let sp = self.space(k, k - nn + 1);
            for b in 0..sp.dim() {
                let sigma = sp.basis_element(self.ring, b);
                let col = s_off[si] + b;
                for j in 0..nn {
                    let i = k - j;
                    let Some(fi) = self.position(&self.f_deg, i) else { continue };
                    let dx = self.x.diff_comp(i, j as usize);
                    let dy = self.y.diff_comp(k - nn + 1, (nn - 1 - j) as usize);
                    let img: Vec<RingMatrix> =
                        (0..sigma.len()).map(|v| &(&dy[v] * &sigma[v]) * &dx[v]).collect();
                    if img.iter().all(RingMatrix::is_zero) {
                        continue;
                    }
                    self.accumulate(&mut op, f_off[fi], self.f_deg[fi], 0, &img, col);
                }
            }
        }
        op
    }

    pub fn dims(&self) -> HomDims {
        let z = self.chain_operator().kernel_basis();
        let b = self.homotopy_operator();
        let chain_maps = z.cols();
        let null_homotopic = b.rank();
        HomDims { chain_maps, null_homotopic, hom_k: chain_maps - null_homotopic }
    }

    /// Coordinates of a degreewise morphism, or an error if some component
    /// does not commute with the arrows.
    pub fn coords(&self, f: &dyn Fn(i64) -> Vec<RingMatrix>) -> Result<RingMatrix> {
        let parts = self
            .f_deg
            .iter()
            .map(|&i| {
                self.space(i, i)
                    .coords(&f(i))
                    .ok_or_else(|| Error::InvalidChainMap { degree: i, reason: "component is not a morphism".into() })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RingMatrix::vstack(self.ring.ground_ring(), 1, &parts))
    }

    fn unpack(&self, degs: &[i64], shift: i64, v: &RingMatrix) -> Components {
        let mut out = Components::new();
        let mut off = 0;
        for &i in degs {
            let sp = self.space(i, i + shift);
            let c = v.block(off, 0, sp.dim(), 1);
            off += sp.dim();
            out.insert(i, sp.element(self.ring, &c));
        }
        out
    }

    /// Morphism from coordinates.
    pub fn map_from_coords(&self, v: &RingMatrix) -> Components {
        self.unpack(&self.f_deg, 0, v)
    }

    /// Basis of the chain maps, as coordinate columns.
    pub fn chain_map_coords(&self) -> RingMatrix {
        self.chain_operator().kernel_basis()
    }

    /// A uniformly random chain map.
    pub fn random_chain_map<R: Rng + ?Sized>(&self, rng: &mut R) -> Components {
        let z = self.chain_map_coords();
        let c = RingMatrix::random(self.ring.ground_ring(), z.cols(), 1, rng);
        self.map_from_coords(&(&z * &c))
    }

    /// A homotopy `s` with `f` equal to its reconstruction sum, re-checked
    /// by evaluation.
    pub fn solve_homotopy(&self, f: &dyn Fn(i64) -> Vec<RingMatrix>) -> Result<Option<Components>> {
        let target = self.coords(f)?;
        let op = self.homotopy_operator();
        let Some(sol) = op.solve_ground(&target) else { return Ok(None) };
        let nn = self.n as i64;
        let s = self.unpack(&self.s_deg, 1 - nn, &sol);
        {
            let s_at = self.lookup(&s, 1 - nn);
            let rebuilt = self.reconstruct(&s_at);
            for &i in &self.f_deg {
                if rebuilt[&i] != f(i) {
                    return Err(Error::Internal(format!("homotopy solution fails its identity at degree {i}")));
                }
            }
        }
        Ok(Some(s))
    }

    /// Accessor for a family stored on some of the degrees, with zeros
    /// elsewhere and periodic reduction.
    pub fn lookup<'b>(&'b self, c: &'b Components, shift: i64) -> impl Fn(i64) -> Vec<RingMatrix> + 'b {
        move |i| {
            let r = self.reduce(i);
            match c.get(&r) {
                Some(v) => v.clone(),
                None => self
                    .y
                    .vdims(i + shift)
                    .into_iter()
                    .zip(self.x.vdims(i))
                    .map(|(a, b)| RingMatrix::zeros(self.ring, a, b))
                    .collect(),
            }
        }
    }

    pub fn is_null_homotopic(&self, f: &dyn Fn(i64) -> Vec<RingMatrix>) -> Result<bool> {
        Ok(self.solve_homotopy(f)?.is_some())
    }
}

/// Vertexwise composite `g ∘ f` of two degreewise families.
pub fn compose_components(g: &dyn Fn(i64) -> Vec<RingMatrix>, f: &dyn Fn(i64) -> Vec<RingMatrix>, i: i64) -> Vec<RingMatrix> {
    g(i).iter().zip(f(i)).map(|(a, b)| a * &b).collect()
}

/// Identity family on `x`.
pub fn identity_components<X: Graded + ?Sized>(x: &X) -> impl Fn(i64) -> Vec<RingMatrix> + '_ {
    move |i| x.vdims(i).into_iter().map(|d| RingMatrix::identity(x.ring(), d)).collect()
}

/// Search for chain maps `u: x -> y`, `v: y -> x` inverse to each other up
/// to homotopy. `u` is sampled at random from the chain maps; `v` is then
/// solved for linearly. Returns `None` if no attempt succeeds.
pub fn find_homotopy_equivalence<X, Y, R>(x: &X, y: &Y, rng: &mut R, attempts: usize) -> Result<Option<(Components, Components)>>
where
    X: Graded + ?Sized,
    Y: Graded + ?Sized,
    R: Rng + ?Sized,
{
    let xy = HomEngine::new(x, y)?;
    let yx = HomEngine::new(y, x)?;
    let xx = HomEngine::new(x, x)?;
    let yy = HomEngine::new(y, y)?;
    let zyx = yx.chain_map_coords();
    let hxx = xx.homotopy_operator();
    let target = xx.coords(&identity_components(x))?;
    for _ in 0..attempts {
        let u = xy.random_chain_map(rng);
        if let Some(v) = try_inverse(&xy, &yx, &xx, &yy, &zyx, &hxx, &target, &u)? {
            return Ok(Some((u, v)));
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn try_inverse<X, Y>(
    xy: &HomEngine<'_, X, Y>,
    yx: &HomEngine<'_, Y, X>,
    xx: &HomEngine<'_, X, X>,
    yy: &HomEngine<'_, Y, Y>,
    zyx: &RingMatrix,
    hxx: &RingMatrix,
    target: &RingMatrix,
    u: &Components,
) -> Result<Option<Components>>
where
    X: Graded + ?Sized,
    Y: Graded + ?Sized,
{
    let ground = xy.ring.ground_ring();
    let id_x = identity_components(xx.x);
    let id_y = identity_components(yy.x);
    {
        let u_at = xy.lookup(u, 0);
        // Columns: (zeta ∘ u) for each chain-map basis vector zeta, then the
        // homotopy operator of x; solve for zeta-combination + homotopy = id.
        let mut cols = Vec::with_capacity(zyx.cols() + hxx.cols());
        for j in 0..zyx.cols() {
            let zeta = yx.map_from_coords(&zyx.block(0, j, zyx.rows(), 1));
            let z_at = yx.lookup(&zeta, 0);
            cols.push(xx.coords(&|i| compose_components(&z_at, &u_at, i))?);
        }
        for j in 0..hxx.cols() {
            cols.push(hxx.block(0, j, hxx.rows(), 1).scale_int(-1));
        }
        let sys = RingMatrix::hstack(ground, target.rows(), &cols);
        let Some(sol) = sys.solve_ground(target) else { return Ok(None) };
        let vc = zyx * &sol.block(0, 0, zyx.cols(), 1);
        let v = yx.map_from_coords(&vc);
        let ok = {
        let v_at = yx.lookup(&v, 0);
        let uv_minus = |i: i64| -> Vec<RingMatrix> {
            compose_components(&u_at, &v_at, i).iter().zip(id_y(i)).map(|(a, b)| a - &b).collect()
        };
        let vu_minus = |i: i64| -> Vec<RingMatrix> {
            compose_components(&v_at, &u_at, i).iter().zip(id_x(i)).map(|(a, b)| a - &b).collect()
        };
        yy.is_null_homotopic(&uv_minus)? && xx.is_null_homotopic(&vu_minus)?
        };
        Ok(ok.then_some(v))
    }
}
