//! Homotopies across the functor: pushing an N-homotopy forward, and
//! recovering N-level data from representation-level data.

use std::collections::BTreeMap;

use super::{f_mor_between, f_obj, position_block, position_dims, vertex_family, Derived, FBlockIndex};
use crate::error::{Error, Result};
use crate::homotopy::{null_homotopy, HomEngine, HomotopyWitness};
use crate::linalg::RingMatrix;
use crate::ncomplex::{ChainMapN, NComplex, Support};
use crate::quiver::{rep_null_homotopy, RepChainMap, RepComplex, RepHomotopy};

fn singles(dims: Vec<usize>) -> Vec<Vec<usize>> {
    dims.into_iter().map(|d| vec![d]).collect()
}

/// Degrees on which a degreewise family between `x` and `y` is stored,
/// with the period when both are periodic.
fn family_degrees(x: Support, y: Support, pad: i64) -> (Vec<i64>, Option<usize>) {
    match (x, y) {
        (Support::Periodic { period: p }, Support::Periodic { period: q }) => {
            let l = num_integer::lcm(p, q);
            ((0..l as i64).collect(), Some(l))
        }
        (Support::Bounded { lo, hi }, _) if lo <= hi => ((lo - pad..=hi + pad).collect(), None),
        (_, Support::Bounded { lo, hi }) if lo <= hi => ((lo - pad..=hi + pad).collect(), None),
        _ => (vec![], None),
    }
}

/// The representation-level homotopy `t` with `F(f) = d t + t d`, built
/// from an N-homotopy `w` of `f`.
pub fn transport_homotopy(f: &ChainMapN, w: &HomotopyWitness) -> Result<Derived<RepHomotopy>> {
    f.validate()?;
    if !w.verifies(f) {
        return Err(Error::Witness("s does not reproduce f".into()));
    }
    let (q, p) = (f.source(), f.target());
    let n = q.order();
    let nn = n as i64;
    let (fq, fp) = (f_obj(q)?, f_obj(p)?);
    let ff = f_mor_between(f, &fq, &fp)?;
    let s = |k: i64| w.get(q, p, k);
    let (degs, period) = family_degrees(fq.support(), fp.support(), 1);
    let mut t = BTreeMap::new();
    for i in degs {
        let b = FBlockIndex::new(n, i);
        let m = b.m();
        let rows = singles(position_dims(p, i - 1));
        let cols = singles(position_dims(q, i));
        let comps = if b.is_even() {
            vertex_family(q.ring(), &rows, &cols, |a, _, c, _| {
                if a > c {
                    return None;
                }
                let (a, c) = (a as i64, c as i64);
                let mut acc = RingMatrix::zeros(q.ring(), rows[a as usize][0], cols[c as usize][0]);
                for k in c - a..=nn - 2 {
                    let term = &(&p.comp(m + k + a + 1 - nn, (nn - 2 - k) as usize) * &s(m + k + a))
                        * &q.comp(m + c, (k - c + a) as usize);
                    acc = &acc + &term;
                }
                Some(acc)
            })
        } else {
            vertex_family(q.ring(), &rows, &cols, |a, _, c, _| (a == c).then(|| s(b.source_degree(a))))
        };
        t.insert(i, comps);
    }
    let h = RepHomotopy { t, period };
    if h.verifies(&ff) {
        return Ok(Derived::exact(h));
    }
    let detail = first_mismatch(&h, &ff);
    match rep_null_homotopy(&ff)? {
        Some(h) => Ok(Derived { value: h, discrepancy: Some(format!("transported homotopy fails {detail}")) }),
        None => Err(Error::Internal("F(f) is not null-homotopic although f is".into())),
    }
}

fn first_mismatch(h: &RepHomotopy, f: &RepChainMap) -> String {
    let Ok(b) = h.boundary(f.source(), f.target()) else { return "to build".into() };
    let mut degs = f.degrees();
    degs.extend(b.degrees());
    for i in degs {
        let (x, y) = (f.map(i), b.map(i));
        if let Some(v) = (0..x.len()).find(|&v| x[v] != y[v]) {
            return format!("at degree {i}, vertex {}", v + 1);
        }
    }
    "the morphism check".into()
}

/// The top-vertex block `(a, b)` of a representation-level map out of
/// `F(q)^i` into `F(p)^{i + shift}`.
fn top_block(maps: &[RingMatrix], q: &NComplex, p: &NComplex, i: i64, shift: i64, a: usize, b: usize) -> RingMatrix {
    position_block(maps.last().unwrap(), &position_dims(p, i + shift), &position_dims(q, i), a, b)
}

/// An N-homotopy of `f` read off from a representation-level homotopy `t`
/// of `F(f)`.
pub fn faithful_witness(f: &ChainMapN, t: &RepHomotopy) -> Result<Derived<HomotopyWitness>> {
    f.validate()?;
    let (q, p) = (f.source(), f.target());
    let n = q.order();
    let nn = n as i64;
    let (fq, fp) = (f_obj(q)?, f_obj(p)?);
    let (degs, period) = family_degrees(q.support(), p.support(), nn);
    let mut s = BTreeMap::new();
    for k in degs {
        // s^k for k in m+N-2 ..= m+2N-3 comes from block r.
        let r = (k - nn + 2).div_euclid(nn);
        let m = nn * r;
        let off = k - m - (nn - 2);
        let value = if off == 0 {
            let te = t.get(&fq, &fp, 2 * r);
            top_block(&te, q, p, 2 * r, -1, 0, n - 2)
        } else {
            let a = (off - 1) as usize;
            let to = t.get(&fq, &fp, 2 * r + 1);
            let mut acc = RingMatrix::zeros(q.ring(), p.dim(k - nn + 1), q.dim(k));
            for c in 0..=a {
                let blk = top_block(&to, q, p, 2 * r + 1, -1, c, a);
                acc = &acc + &(&p.comp(m + c as i64, a - c) * &blk);
            }
            acc
        };
        if !value.is_zero() {
            s.insert(k, value);
        }
    }
    let w = HomotopyWitness { s, period };
    if w.verifies(f) {
        return Ok(Derived::exact(w));
    }
    match null_homotopy(f)? {
        Some(w) => Ok(Derived { value: w, discrepancy: Some("assembled N-homotopy fails its identity".into()) }),
        None => Err(Error::Witness("f is not null-homotopic, so t cannot be a homotopy of F(f)".into())),
    }
}

/// A chain map `f: q -> p` with `F(f)` homotopic to `phi`.
pub fn full_witness(q: &NComplex, p: &NComplex, phi: &RepChainMap) -> Result<Derived<ChainMapN>> {
    phi.validate()?;
    let n = q.order();
    let nn = n as i64;
    let (fq, fp) = (f_obj(q)?, f_obj(p)?);
    if phi.source() != &fq || phi.target() != &fp {
        return Err(Error::Shape("phi is not a map F(q) -> F(p)".into()));
    }
    let at = |i: i64, a: usize, b: usize| top_block(&phi.map(i), q, p, i, 0, a, b);
    let component = |k: i64| -> RingMatrix {
        let r = k.div_euclid(nn);
        let m = nn * r;
        let off = (k - m) as usize;
        let mut acc = RingMatrix::zeros(q.ring(), p.dim(k), q.dim(k));
        if off + 1 < n {
            let a = off;
            for c in a + 1..n - 1 {
                acc = &acc + &(&at(2 * r - 1, a + 1, c) * &q.comp(k, c - a - 1));
            }
            let tail = q.comp(k, n - 2 - a);
            for c in 0..=a {
                acc = &acc + &(&(&p.comp(m + c as i64, a - c) * &at(2 * r, c, n - 2)) * &tail);
            }
        } else {
            for c in 0..n - 1 {
                acc = &acc + &(&at(2 * r + 1, 0, c) * &q.comp(k, c));
            }
        }
        acc
    };
    if let Ok(f) = ChainMapN::new(q, p, component) {
        let diff = f_mor_between(&f, &fq, &fp)?.sub(phi)?;
        if rep_null_homotopy(&diff)?.is_some() {
            return Ok(Derived::exact(f));
        }
    }
    let f = solve_preimage(q, p, &fq, &fp, phi)?;
    Ok(Derived { value: f, discrepancy: Some("assembled chain map is not a preimage up to homotopy".into()) })
}

/// Solve `F(f) - phi = d t + t d` jointly for `f` and `t`.
fn solve_preimage(q: &NComplex, p: &NComplex, fq: &RepComplex, fp: &RepComplex, phi: &RepChainMap) -> Result<ChainMapN> {
    let en = HomEngine::new(q, p)?;
    let er = HomEngine::new(fq, fp)?;
    let z = en.chain_map_coords();
    let ground = q.ring().ground_ring();
    let mut cols = Vec::with_capacity(z.cols());
    for c in 0..z.cols() {
        let comps = en.map_from_coords(&z.block(0, c, z.rows(), 1));
        let at = en.lookup(&comps, 0);
        let f = ChainMapN::from_fn_unchecked(q, p, |i| at(i).remove(0))?;
        let ff = f_mor_between(&f, fq, fp)?;
        cols.push(er.coords(&|i| ff.map(i))?);
    }
    let h = er.homotopy_operator();
    let rows = h.rows();
    cols.push(h);
    let system = RingMatrix::hstack(ground, rows, &cols);
    let target = er.coords(&|i| phi.map(i))?;
    let sol = system
        .solve_ground(&target)
        .ok_or_else(|| Error::Internal("phi has no preimage up to homotopy".into()))?;
    let coeffs = sol.block(0, 0, z.cols(), 1);
    let comps = en.map_from_coords(&(&z * &coeffs));
    let at = en.lookup(&comps, 0);
    let f = ChainMapN::from_fn_unchecked(q, p, |i| at(i).remove(0))?;
    f.validate()?;
    let diff = f_mor_between(&f, fq, fp)?.sub(phi)?;
    if rep_null_homotopy(&diff)?.is_none() {
        return Err(Error::Internal("solved preimage fails its homotopy check".into()));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::f_mor;
    use crate::homotopy::random_chain_map;
    use crate::linalg::CoeffRing;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn k() -> CoeffRing {
        CoeffRing::PrimeField { p: 3 }
    }

    fn sample(n: usize) -> (NComplex, NComplex) {
        let q = NComplex::disk(n, k(), 1, n - 1, 1).unwrap().direct_sum(&NComplex::disk(n, k(), 3, 2, 1).unwrap()).unwrap();
        let p = NComplex::disk(n, k(), 0, 1, 2).unwrap().direct_sum(&NComplex::disk(n, k(), 2, n, 1).unwrap()).unwrap();
        (q, p)
    }

    /// A null-homotopic map built from a random homotopy.
    fn from_homotopy(q: &NComplex, p: &NComplex, seed: u64) -> (ChainMapN, HomotopyWitness) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = q.order() as i64;
        let (lo, hi) = q.extent().unwrap();
        let s = (lo..=hi)
            .map(|i| (i, RingMatrix::random(k(), p.dim(i - n + 1), q.dim(i), &mut rng)))
            .collect();
        let w = HomotopyWitness { s, period: None };
        (w.reconstruct(q, p), w)
    }

    #[test]
    fn zero_map_transports_to_zero() {
        let (q, p) = sample(3);
        let f = ChainMapN::zero(&q, &p).unwrap();
        let t = transport_homotopy(&f, &HomotopyWitness::zero()).unwrap();
        assert!(!t.used_fallback());
        assert!(t.value.t.values().flatten().all(RingMatrix::is_zero));
    }

    #[test]
    fn transport_and_back() {
        for n in 2..=5 {
            let (q, p) = sample(n);
            let (f, w) = from_homotopy(&q, &p, n as u64);
            let t = transport_homotopy(&f, &w).unwrap();
            assert!(!t.used_fallback(), "N = {n}: {:?}", t.discrepancy);
            let s = faithful_witness(&f, &t.value).unwrap();
            assert!(!s.used_fallback(), "N = {n}: {:?}", s.discrepancy);
            assert!(s.value.verifies(&f));
        }
    }

    #[test]
    fn preimage_of_image() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=4 {
            let (q, p) = sample(n);
            let g = random_chain_map(&q, &p, &mut rng).unwrap();
            let f = full_witness(&q, &p, &f_mor(&g).unwrap()).unwrap();
            assert!(!f.used_fallback(), "N = {n}: {:?}", f.discrepancy);
            assert!(null_homotopy(&f.value.sub(&g).unwrap()).unwrap().is_some());
        }
    }
}
