//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All checks are exact.

use std::process::ExitCode;
use std::time::Instant;

use ncx_core::acyclicity::{correspondence_check, is_n_totally_acyclic, TestBattery};
use ncx_core::campaign::{run_campaign, CampaignConfig, Property};
use ncx_core::functor::{f_mor, f_obj, generator_images, ThetaDirection};
use ncx_core::homotopy::{hom_space_dim, null_homotopy, random_chain_map};
use ncx_core::io;
use ncx_core::ncomplex::homology;
use ncx_core::random::{random_ncomplex, trial_rng, RandomConfig};
use ncx_core::{ChainMapN, CoeffRing, Elem, NComplex, RingMatrix};

const GF2: CoeffRing = CoeffRing::PrimeField { p: 2 };

struct Line {
    id: usize,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn campaign(property: Property, trials: usize, seed: u64) -> (bool, String) {
    let report = run_campaign(&CampaignConfig::new(property, trials, seed)).expect("config is valid").remove(0);
    let mut detail = format!("{}/{} trials hold, {} fallbacks", report.passes(), trials, report.fallbacks());
    if property == Property::ExactnessCorrespondence {
        let exact = report.outcomes.iter().filter(|o| o.verdict.detail.starts_with("N-exact = true")).count();
        detail.push_str(&format!(" ({exact} N-exact inputs, {} not)", trials - exact));
    }
    if property == Property::FullFaithfulness {
        let zero = report.outcomes.iter().filter(|o| o.verdict.detail == "dim = 0").count();
        detail.push_str(&format!(" ({} with nonzero Hom_K)", trials - zero));
    }
    if let Some(o) = report.outcomes.iter().find(|o| !o.verdict.holds) {
        detail.push_str(&format!("; first failure at trial {}: {}", o.trial, o.verdict.detail));
    }
    (report.holds(), detail)
}

// ---------------------------------------------------------------- 1

/// Rank-one complex on -1..6 over GF(11)[x]/(x^3) with `d^i = c_i x`,
/// `c_i` distinct units: every product of two differentials is nonzero and
/// every product of three vanishes.
fn symbolic_complex() -> NComplex {
    let ring = CoeffRing::TruncatedPoly { p: 11, m: 3 };
    let diffs = (0..7).map(|t| RingMatrix::from_elems(ring, 1, 1, vec![Elem::Poly(vec![0, t + 1, 0])]).unwrap()).collect();
    NComplex::bounded(3, ring, -1, vec![1; 8], diffs).unwrap()
}

fn worked_example() -> (bool, String) {
    let p = symbolic_complex();
    let ring = p.ring();
    let fp = f_obj(&p).unwrap();
    let d = |i: i64| p.d(i);
    let one = RingMatrix::identity(ring, 1);
    let block = |e: [[Option<RingMatrix>; 2]; 2]| {
        RingMatrix::from_blocks(ring, &[1, 1], &[1, 1], |a, b| e[a][b].clone())
    };
    let mut bad = Vec::new();
    fn expect(bad: &mut Vec<String>, what: String, got: &RingMatrix, want: &RingMatrix) {
        if got != want {
            bad.push(what);
        }
    }
    // Terms in degrees -1..3: vertex 1 is P^{-1}, P^0, P^2, P^3, P^5 and
    // vertex 2 is the sum of that term and the next one, included by (1, 0).
    let inclusion = RingMatrix::from_blocks(ring, &[1, 1], &[1], |a, _| (a == 0).then(|| one.clone()));
    for i in -1..=3 {
        let t = fp.term(i);
        if t.vdims() != [1, 2] {
            bad.push(format!("term {i} has vertex ranks {:?}", t.vdims()));
            continue;
        }
        expect(&mut bad, format!("structure map of term {i}"), t.arrow(0), &inclusion);
    }
    // Vertex-1 differentials d^{-1}, d^1 d^0, d^2, d^4 d^3.
    let top = [d(-1), &d(1) * &d(0), d(2), &d(4) * &d(3)];
    for (k, want) in top.iter().enumerate() {
        expect(&mut bad, format!("vertex-1 differential out of degree {}", k as i64 - 1), &fp.d(k as i64 - 1)[0], want);
    }
    let minus = Some(-&one);
    let lambda = |a: i64| block([[Some(d(a)), minus.clone()], [None, Some(d(a + 1))]]);
    let mu = |a: i64| block([[Some(&d(a + 1) * &d(a)), Some(d(a + 1))], [None, Some(&d(a + 2) * &d(a + 1))]]);
    expect(&mut bad, "λ out of degree -1".into(), &fp.d(-1)[1], &lambda(-1));
    expect(&mut bad, "μ out of degree 0".into(), &fp.d(0)[1], &mu(0));
    expect(&mut bad, "λ out of degree 1".into(), &fp.d(1)[1], &lambda(2));
    expect(&mut bad, "μ out of degree 2".into(), &fp.d(2)[1], &mu(3));
    // F(f) is blockwise diagonal: diag(f^{-1}, f^0), diag(f^0, f^1), ...
    let f = random_chain_map(&p, &p, &mut trial_rng(1, 0)).unwrap();
    let ff = f_mor(&f).unwrap();
    for (i, a) in [(-1, -1), (0, 0), (1, 2), (2, 3)] {
        let want = block([[Some(f.map(a)), None], [None, Some(f.map(a + 1))]]);
        expect(&mut bad, format!("F(f) at degree {i}"), &ff.map(i)[1], &want);
    }
    if (-1..5).any(|i| (&d(i + 1) * &d(i)).is_zero()) {
        bad.push("test complex has a vanishing product of two differentials".into());
    }
    (bad.is_empty(), if bad.is_empty() { "all terms and blocks match".into() } else { bad.join("; ") })
}

// ---------------------------------------------------------------- 6

fn generators() -> (bool, String, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 3..=5 {
        for g in generator_images(n, CoeffRing::Rationals, ThetaDirection::Inverse).unwrap().into_iter().take(2) {
            if !g.isomorphic {
                ok = false;
                notes.push(format!("N = {n}: {}", g.claim));
            }
        }
    }
    let literal: Vec<String> = (3..=5)
        .flat_map(|n| generator_images(n, CoeffRing::Rationals, ThetaDirection::AsDefined).unwrap().into_iter().take(2))
        .map(|g| format!("{}: {}", g.claim, if g.isomorphic { "holds" } else { "fails" }))
        .collect();
    let detail = if ok { "both isomorphisms exhibited for N = 3, 4, 5 (Θ read as Θ^{-1})".into() } else { notes.join("; ") };
    (ok, detail, literal.join("; "))
}

// ---------------------------------------------------------------- 8

const GOLDEN_DISK: &str = include_str!("golden/disk_3_gf2_1_2_1.json");
const GOLDEN_DISK_HOMOLOGY: &str = include_str!("golden/disk_3_gf2_1_2_1.homology.json");

fn disks() -> (bool, String) {
    let mut bad = Vec::new();
    for ring in [GF2, CoeffRing::PrimeField { p: 3 }, CoeffRing::Rationals, CoeffRing::TruncatedPoly { p: 2, m: 3 }] {
        for n in 2..=5 {
            for j in -2..=3 {
                let dk = NComplex::disk(n, ring, j, n, 1 + (j.rem_euclid(2)) as usize).unwrap();
                let contractible = null_homotopy(&ChainMapN::identity(&dk)).unwrap().is_some();
                let exact = homology(&dk).unwrap().is_zero();
                if !(contractible && exact) {
                    bad.push(format!("D^{j}_{n} over {ring}"));
                }
            }
        }
    }
    let small = NComplex::disk(3, GF2, 1, 2, 1).unwrap();
    let h = homology(&small).unwrap();
    let table: Vec<((i64, usize), usize)> = h.nonzero().map(|(&k, q)| (k, q.dim)).collect();
    if table != vec![((0, 2), 1), ((1, 1), 1)] {
        bad.push(format!("disk(3, k, 1, 2, 1) homology {table:?}"));
    }
    if io::complex_to_string(&small) != GOLDEN_DISK {
        bad.push("complex document differs from golden".into());
    }
    if io::to_canonical_string(&io::homology_to_value(&h)) != GOLDEN_DISK_HOMOLOGY {
        bad.push("homology document differs from golden".into());
    }
    let detail = if bad.is_empty() { "96 disks contractible and exact; goldens match".into() } else { bad.join("; ") };
    (bad.is_empty(), detail)
}

// ---------------------------------------------------------------- 9

fn flagship() -> (bool, String) {
    let ring = CoeffRing::TruncatedPoly { p: 2, m: 3 };
    let x = NComplex::x_multiplication(3, ring).unwrap();
    let bx = TestBattery::default_for(&x).unwrap();
    let tac = is_n_totally_acyclic(&x, &bx).unwrap();
    let rx = correspondence_check(&x, &bx).unwrap();
    let disk = NComplex::disk(3, GF2, 1, 2, 1).unwrap();
    let bd = TestBattery::default_for(&disk).unwrap();
    let dtac = is_n_totally_acyclic(&disk, &bd).unwrap();
    let rd = correspondence_check(&disk, &bd).unwrap();
    let ok = tac && rx.image_totally_acyclic && rx.consistent() && !dtac && !rd.image_totally_acyclic && rd.consistent();
    let detail = format!(
        "x-complex: N-totally acyclic = {tac}, image totally acyclic = {} ({} battery members); disk: {} / {}",
        rx.image_totally_acyclic,
        bx.len(),
        dtac,
        rd.image_totally_acyclic
    );
    (ok, detail)
}

// ---------------------------------------------------------------- 10

/// Ordinary chain complexes over GF(p), written from scratch: dense
/// integer matrices, Gaussian elimination, and the textbook formulas.
mod classical {
    pub type Mat = Vec<Vec<u64>>;

    pub fn rank(m: &Mat, p: u64) -> usize {
        let mut a = m.clone();
        let rows = a.len();
        let cols = a.first().map_or(0, |r| r.len());
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..rows).find(|&i| a[i][c] % p != 0) else { continue };
            a.swap(r, piv);
            let inv = pow(a[r][c], p - 2, p);
            for v in a[r].iter_mut() {
                *v = *v * inv % p;
            }
            for i in 0..rows {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for k in 0..cols {
                        a[i][k] = (a[i][k] + p * p - f * a[r][k] % p) % p;
                    }
                }
            }
            r += 1;
        }
        r
    }

    fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }

    pub fn zeros(r: usize, c: usize) -> Mat {
        vec![vec![0; c]; r]
    }

    /// A complex on degrees `lo..lo + dims.len()`.
    #[derive(Clone)]
    pub struct Cx {
        pub lo: i64,
        pub dims: Vec<usize>,
        /// `d[k]` leaves degree `lo + k`.
        pub d: Vec<Mat>,
    }

    impl Cx {
        pub fn dim(&self, i: i64) -> usize {
            let k = i - self.lo;
            if k < 0 || k as usize >= self.dims.len() {
                0
            } else {
                self.dims[k as usize]
            }
        }
        pub fn d(&self, i: i64) -> Mat {
            let k = i - self.lo;
            if k < 0 || k as usize >= self.d.len() {
                zeros(self.dim(i + 1), self.dim(i))
            } else {
                self.d[k as usize].clone()
            }
        }
        pub fn homology(&self, i: i64, p: u64) -> usize {
            self.dim(i) - rank(&self.d(i), p) - rank(&self.d(i - 1), p)
        }
    }

    /// `cone(f)^i = X^{i+1} ⊕ Y^i` with differential `[[-d_X, 0], [f, d_Y]]`.
    pub fn cone(x: &Cx, y: &Cx, f: &dyn Fn(i64) -> Mat, p: u64, lo: i64, hi: i64) -> Cx {
        let dims: Vec<usize> = (lo..=hi).map(|i| x.dim(i + 1) + y.dim(i)).collect();
        let d = (lo..=hi)
            .map(|i| {
                let (xa, ya, xb, yb) = (x.dim(i + 1), y.dim(i), x.dim(i + 2), y.dim(i + 1));
                let mut m = zeros(xb + yb, xa + ya);
                let (dx, dy, fi) = (x.d(i + 1), y.d(i), f(i + 1));
                for r in 0..xb {
                    for c in 0..xa {
                        m[r][c] = (p - dx[r][c]) % p;
                    }
                }
                for r in 0..yb {
                    for c in 0..xa {
                        m[xb + r][c] = fi[r][c];
                    }
                    for c in 0..ya {
                        m[xb + r][xa + c] = dy[r][c];
                    }
                }
                m
            })
            .collect();
        Cx { lo, dims, d }
    }

    /// `dim Hom_K(x, y)` over degrees `lo..=hi` covering both supports:
    /// cycles of the Hom complex in degree 0 modulo boundaries.
    pub fn hom_k(x: &Cx, y: &Cx, p: u64, lo: i64, hi: i64) -> usize {
        // Unknowns f^i (Y^i x X^i), equations d_Y f^i - f^{i+1} d_X.
        let mut fvars = Vec::new();
        let mut count = 0;
        for i in lo..=hi {
            fvars.push(count);
            count += y.dim(i) * x.dim(i);
        }
        let fi = |i: i64, r: usize, c: usize| fvars[(i - lo) as usize] + r * x.dim(i) + c;
        let mut eqs: Vec<Vec<u64>> = Vec::new();
        for i in lo..=hi {
            let (dy, dx) = (y.d(i), x.d(i));
            for r in 0..y.dim(i + 1) {
                for c in 0..x.dim(i) {
                    let mut row = vec![0; count];
                    for k in 0..y.dim(i) {
                        row[fi(i, k, c)] = (row[fi(i, k, c)] + dy[r][k]) % p;
                    }
                    if i < hi {
                        for k in 0..x.dim(i + 1) {
                            row[fi(i + 1, r, k)] = (row[fi(i + 1, r, k)] + p - dx[k][c]) % p;
                        }
                    }
                    eqs.push(row);
                }
            }
        }
        let cycles = count - if eqs.is_empty() { 0 } else { rank(&eqs, p) };
        // Boundaries: images of s^i: X^i -> Y^{i-1} under s -> d s + s d.
        let mut cols: Vec<Vec<u64>> = Vec::new();
        for i in lo..=hi + 1 {
            for r in 0..y.dim(i - 1) {
                for c in 0..x.dim(i) {
                    let mut v = vec![0; count];
                    // d_Y^{i-1} s^i lands in f^i.
                    if (lo..=hi).contains(&i) {
                        let dy = y.d(i - 1);
                        for k in 0..y.dim(i) {
                            v[fi(i, k, c)] = (v[fi(i, k, c)] + dy[k][r]) % p;
                        }
                    }
                    // s^i d_X^{i-1} lands in f^{i-1}.
                    if (lo..=hi).contains(&(i - 1)) {
                        let dx = x.d(i - 1);
                        for k in 0..x.dim(i - 1) {
                            v[fi(i - 1, r, k)] = (v[fi(i - 1, r, k)] + dx[c][k]) % p;
                        }
                    }
                    cols.push(v);
                }
            }
        }
        let boundaries = if cols.is_empty() { 0 } else { rank(&cols, p) };
        cycles - boundaries
    }
}

fn to_mat(m: &RingMatrix) -> classical::Mat {
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| match m.entry(r, c) {
                    Elem::Prime(v) => v,
                    other => panic!("unexpected entry {other:?}"),
                })
                .collect()
        })
        .collect()
}

fn to_cx(x: &NComplex, lo: i64, hi: i64) -> classical::Cx {
    classical::Cx {
        lo,
        dims: (lo..=hi).map(|i| x.dim(i)).collect(),
        d: (lo..=hi).map(|i| to_mat(&x.d(i))).collect(),
    }
}

fn degeneration() -> (bool, String) {
    let mut failures = Vec::new();
    let mut nontrivial = (0, 0);
    for trial in 0..100u64 {
        let p = [2u64, 3, 5][trial as usize % 3];
        let ring = CoeffRing::PrimeField { p };
        let cfg = RandomConfig::new(2, ring).with_bounds(3, 5);
        let mut rng = trial_rng(10, trial);
        let x = random_ncomplex(&cfg, &mut rng);
        let y = random_ncomplex(&cfg, &mut rng);
        let f = random_chain_map(&x, &y, &mut rng).unwrap();
        let (lo, hi) = (-2, 8);
        let (cx, cy) = (to_cx(&x, lo, hi), to_cx(&y, lo, hi));
        let mut why = Vec::new();
        let hx = homology(&x).unwrap();
        if (lo..=hi).any(|i| hx.get(i, 1).dim != cx.homology(i, p)) {
            why.push("homology");
        }
        let cone = NComplex::cone(&f);
        let ccone = classical::cone(&cx, &cy, &|i| to_mat(&f.map(i)), p, lo - 1, hi);
        let hc = homology(&cone).unwrap();
        if (lo - 1..=hi).any(|i| hc.get(i, 1).dim != ccone.homology(i, p)) || (lo - 1..=hi).any(|i| cone.dim(i) != ccone.dim(i)) {
            why.push("cone");
        }
        let hk = classical::hom_k(&cx, &cy, p, lo, hi);
        if hom_space_dim(&x, &y).unwrap().hom_k != hk {
            why.push("hom dims");
        }
        nontrivial.0 += usize::from(!hx.is_zero());
        nontrivial.1 += usize::from(hk > 0);
        // For N = 2 the functor is the identity on one-vertex complexes.
        let fx = f_obj(&x).unwrap();
        if fx.vertices() != 1 || (lo..=hi).any(|i| fx.term(i).vdims() != [x.dim(i)] || to_mat(&fx.d(i)[0]) != cx.d(i)) {
            why.push("F");
        }
        let ff = f_mor(&f).unwrap();
        if (lo..=hi).any(|i| ff.map(i)[0] != f.map(i)) {
            why.push("F on maps");
        }
        if !why.is_empty() {
            failures.push(format!("trial {trial}: {}", why.join(", ")));
        }
    }
    let detail = if failures.is_empty() { format!(
            "100/100 trials agree with the classical oracle ({} with homology, {} with nonzero Hom_K)",
            nontrivial.0, nontrivial.1
        ) } else { failures.join("; ") };
    (failures.is_empty(), detail)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut push = |id, title, (pass, detail): (bool, String)| lines.push(Line { id, title, pass, detail });
    push(1, "worked example fidelity", worked_example());
    push(2, "homotopy transport", campaign(Property::Transport, 300, 2));
    push(3, "full faithfulness (dimensions)", campaign(Property::FullFaithfulness, 200, 3));
    push(4, "exactness correspondence", campaign(Property::ExactnessCorrespondence, 200, 4));
    push(5, "suspension compatibility", campaign(Property::Suspension, 150, 5));
    let (g_ok, g_detail, literal) = generators();
    push(6, "generator images", (g_ok, g_detail));
    push(7, "homology vanishing remark", campaign(Property::HomologyRemark, 200, 7));
    push(8, "disk contractibility and goldens", disks());
    push(9, "total acyclicity flagship", flagship());
    push(10, "N = 2 degeneration", degeneration());
    let mut failed = 0;
    for l in &lines {
        println!("{} {:>2} {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.id, l.title, l.detail);
        if !l.pass {
            failed += 1;
        }
        if l.id == 6 {
            println!("INFO  6 literal Θ direction: {literal}");
        }
    }
    println!("{} of {} criteria pass ({:.1} s)", lines.len() - failed, lines.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
