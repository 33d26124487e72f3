//! Seeded property campaigns. Every trial draws its inputs from its own RNG
//! stream, so verdicts do not depend on how trials are scheduled, and every
//! falsified trial yields a document that replays the failure by itself.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::acyclicity::TestBattery;
use crate::error::{Error, Result};
use crate::functor::{f_mor, f_obj, faithful_witness, full_witness, suspension_compat, transport_homotopy};
use crate::homotopy::{hom_space_dim, null_homotopy, random_chain_map, HomotopyWitness};
use crate::io;
use crate::linalg::CoeffRing;
use crate::ncomplex::{homology, is_n_exact, ChainMapN, NComplex};
use crate::par;
use crate::quiver::{random_rep_chain_map, rep_hom_space_dim, RepChainMap};
use crate::random::{
    random_h1_free, random_mixed, random_ncomplex, random_null_homotopic, trial_rng, RandomConfig,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    /// A homotopy of `f` pushes forward to a homotopy of `F(f)`.
    Transport,
    /// `Hom_K(Q, P)` and `Hom_K(F Q, F P)` have equal dimension, and a
    /// random map between the images has a preimage up to homotopy.
    FullFaithfulness,
    /// `P` is N-exact exactly when `F(P)` is acyclic at every vertex.
    ExactnessCorrespondence,
    /// `F(ΣP)` and `F(P)[1]` are homotopy equivalent via explicit maps.
    Suspension,
    /// Vanishing of all `H_1` forces vanishing of every `H_r`.
    HomologyRemark,
    /// `F(g f) = F(g) F(f)` and `F(1) = 1`.
    Functoriality,
    /// Maps built from random homotopies are found null-homotopic, and the
    /// homotopy survives the round trip through `F`.
    SolverCompleteness,
    /// A battery of test complexes against the flagship periodic complex.
    TotalAcyclicity,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Transport,
        Property::FullFaithfulness,
        Property::ExactnessCorrespondence,
        Property::Suspension,
        Property::HomologyRemark,
        Property::Functoriality,
        Property::SolverCompleteness,
        Property::TotalAcyclicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Transport => "transport",
            Property::FullFaithfulness => "full-faithfulness",
            Property::ExactnessCorrespondence => "exactness-correspondence",
            Property::Suspension => "suspension",
            Property::HomologyRemark => "homology-remark",
            Property::Functoriality => "functoriality",
            Property::SolverCompleteness => "solver-completeness",
            Property::TotalAcyclicity => "total-acyclicity",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown property `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignConfig {
    pub seed: u64,
    pub trials: usize,
    pub orders: Vec<usize>,
    pub rings: Vec<CoeffRing>,
    pub max_rank: usize,
    /// Widest support of a generated complex; `None` means `3N`.
    pub max_width: Option<usize>,
    pub properties: Vec<Property>,
}

impl CampaignConfig {
    pub fn new(property: Property, trials: usize, seed: u64) -> Self {
        CampaignConfig {
            seed,
            trials,
            orders: vec![2, 3, 4, 5],
            rings: vec![CoeffRing::PrimeField { p: 2 }, CoeffRing::PrimeField { p: 3 }, CoeffRing::Rationals],
            max_rank: 2,
            max_width: None,
            properties: vec![property],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.orders.is_empty() || self.orders.iter().any(|&n| n < 2) {
            return bad("orders must be a non-empty list of integers at least 2");
        }
        if self.rings.is_empty() {
            return bad("ring list is empty");
        }
        if self.properties.is_empty() {
            return bad("property list is empty");
        }
        Ok(())
    }

    /// Order and ring used by trial `t`: orders cycle fastest.
    pub fn trial_params(&self, t: usize) -> (usize, CoeffRing) {
        let n = self.orders[t % self.orders.len()];
        let ring = self.rings[(t / self.orders.len()) % self.rings.len()];
        (n, ring)
    }

    fn random_config(&self, n: usize, ring: CoeffRing) -> RandomConfig {
        RandomConfig::new(n, ring).with_bounds(self.max_rank, self.max_width.unwrap_or(3 * n))
    }
}

/// The data a single trial checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrialInputs {
    Single(NComplex),
    Pair(NComplex, NComplex),
    Homotopic(ChainMapN, HomotopyWitness),
    Composable(ChainMapN, ChainMapN),
}

impl TrialInputs {
    pub fn to_value(&self) -> Value {
        match self {
            TrialInputs::Single(x) => json!({"kind": "single", "complex": io::complex_to_value(x)}),
            TrialInputs::Pair(q, p) => {
                json!({"kind": "pair", "source": io::complex_to_value(q), "target": io::complex_to_value(p)})
            }
            TrialInputs::Homotopic(f, w) => {
                json!({"kind": "homotopic", "map": io::chain_map_to_value(f), "homotopy": io::witness_to_value(w)})
            }
            TrialInputs::Composable(f, g) => {
                json!({"kind": "composable", "first": io::chain_map_to_value(f), "second": io::chain_map_to_value(g)})
            }
        }
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let doc = |e: &str| Error::Document { path: "$.inputs".into(), reason: e.into() };
        let get = |k: &str| v.get(k).ok_or_else(|| doc(&format!("missing field `{k}`")));
        match v.get("kind").and_then(Value::as_str) {
            Some("single") => Ok(TrialInputs::Single(io::complex_from_value(get("complex")?)?)),
            Some("pair") => Ok(TrialInputs::Pair(io::complex_from_value(get("source")?)?, io::complex_from_value(get("target")?)?)),
            Some("homotopic") => {
                let f = io::chain_map_from_value(get("map")?)?;
                let w = io::witness_from_value(get("homotopy")?, f.source(), f.target(), "$.inputs.homotopy")?;
                Ok(TrialInputs::Homotopic(f, w))
            }
            Some("composable") => {
                Ok(TrialInputs::Composable(io::chain_map_from_value(get("first")?)?, io::chain_map_from_value(get("second")?)?))
            }
            _ => Err(doc("unknown inputs kind")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// A closed-form construction failed its check and a solver stood in.
    pub fallback: bool,
    pub detail: String,
}

impl Verdict {
    fn pass(detail: impl Into<String>) -> Self {
        Verdict { holds: true, fallback: false, detail: detail.into() }
    }
    fn fail(detail: impl Into<String>) -> Self {
        Verdict { holds: false, fallback: false, detail: detail.into() }
    }
    fn check(holds: bool, detail: impl Into<String>) -> Self {
        Verdict { holds, fallback: false, detail: detail.into() }
    }
}

/// Draw the inputs of one trial.
pub fn generate(property: Property, cfg: &CampaignConfig, trial: usize) -> Result<TrialInputs> {
    let (n, ring) = cfg.trial_params(trial);
    let rc = cfg.random_config(n, ring);
    let mut rng = trial_rng(cfg.seed, trial as u64);
    Ok(match property {
        Property::Transport | Property::SolverCompleteness => {
            let q = random_ncomplex(&rc, &mut rng);
            let p = random_ncomplex(&rc, &mut rng);
            let (f, w) = random_null_homotopic(&q, &p, &mut rng);
            TrialInputs::Homotopic(f, w)
        }
        Property::FullFaithfulness => TrialInputs::Pair(random_ncomplex(&rc, &mut rng), random_ncomplex(&rc, &mut rng)),
        Property::ExactnessCorrespondence => TrialInputs::Single(random_mixed(&rc, &mut rng)?.0),
        Property::Suspension => TrialInputs::Single(random_ncomplex(&rc, &mut rng)),
        Property::HomologyRemark => TrialInputs::Single(random_h1_free(&rc, &mut rng)),
        Property::Functoriality => {
            let q = random_ncomplex(&rc, &mut rng);
            let p = random_ncomplex(&rc, &mut rng);
            let r = random_ncomplex(&rc, &mut rng);
            TrialInputs::Composable(random_chain_map(&q, &p, &mut rng)?, random_chain_map(&p, &r, &mut rng)?)
        }
        Property::TotalAcyclicity => TrialInputs::Single(random_ncomplex(&rc, &mut rng)),
    })
}

/// Evaluate `property` on `inputs`. Errors mean the inputs do not fit the
/// property or the computation itself broke down.
pub fn check(property: Property, inputs: &TrialInputs) -> Result<Verdict> {
    let mismatch = || Error::Config(format!("inputs do not fit property `{property}`"));
    match (property, inputs) {
        (Property::Transport, TrialInputs::Homotopic(f, w)) => {
            let t = transport_homotopy(f, w)?;
            let ff = f_mor(f)?;
            let ok = t.value.verifies(&ff);
            Ok(Verdict { holds: ok, fallback: t.used_fallback(), detail: t.discrepancy.unwrap_or_else(|| "F(f) = λt + tμ".into()) })
        }
        (Property::SolverCompleteness, TrialInputs::Homotopic(f, w)) => {
            if !w.verifies(f) {
                return Ok(Verdict::fail("the recorded homotopy does not reproduce f"));
            }
            let Some(found) = null_homotopy(f)? else { return Ok(Verdict::fail("solver reports f as not null-homotopic")) };
            let t = transport_homotopy(f, &found)?;
            let back = faithful_witness(f, &t.value)?;
            Ok(Verdict {
                holds: back.value.verifies(f),
                fallback: t.used_fallback() || back.used_fallback(),
                detail: "homotopy found and recovered through F".into(),
            })
        }
        (Property::FullFaithfulness, TrialInputs::Pair(q, p)) => {
            let (fq, fp) = (f_obj(q)?, f_obj(p)?);
            let a = hom_space_dim(q, p)?.hom_k;
            let b = rep_hom_space_dim(&fq, &fp)?.hom_k;
            if a != b {
                return Ok(Verdict::fail(format!("dim Hom_K(Q, P) = {a} but dim Hom_K(F Q, F P) = {b}")));
            }
            let phi = random_rep_chain_map(&fq, &fp, &mut trial_rng(0, 0))?;
            let g = full_witness(q, p, &phi)?;
            Ok(Verdict { holds: true, fallback: g.used_fallback(), detail: format!("dim = {a}") })
        }
        (Property::ExactnessCorrespondence, TrialInputs::Single(x)) => {
            let exact = is_n_exact(x)?;
            let acyclic = f_obj(&with_divisible_period(x)?)?.is_acyclic()?;
            Ok(Verdict::check(exact == acyclic, format!("N-exact = {exact}, F-image acyclic = {acyclic}")))
        }
        (Property::Suspension, TrialInputs::Single(p)) => match suspension_compat(p) {
            Ok(c) => Ok(Verdict { holds: true, fallback: c.discrepancy.is_some(), detail: c.discrepancy.unwrap_or_else(|| "αβ = 1, βα ≃ 1".into()) }),
            Err(Error::Witness(e)) => Ok(Verdict::fail(e)),
            Err(e) => Err(e),
        },
        (Property::HomologyRemark, TrialInputs::Single(x)) => {
            let h1 = crate::random::first_homology_vanishes(x);
            let h = homology(x)?;
            let first = h.nonzero().next().map(|(&(i, r), q)| (i, r, q.dim));
            Ok(match (h1, first) {
                (false, _) => Verdict::fail("inputs have nonzero H_1"),
                (true, None) => Verdict::pass("all H_r vanish"),
                (true, Some((i, r, dim))) => Verdict::fail(format!("H^{i}_{r} has dimension {dim}")),
            })
        }
        (Property::Functoriality, TrialInputs::Composable(f, g)) => {
            let gf = ChainMapN::compose(g, f)?;
            let lhs = f_mor(&gf)?;
            let rhs = RepChainMap::compose(&f_mor(g)?, &f_mor(f)?)?;
            let id = f_mor(&ChainMapN::identity(f.source()))? == RepChainMap::identity(&f_obj(f.source())?);
            let same = lhs.degrees().into_iter().chain(rhs.degrees()).all(|i| lhs.map(i) == rhs.map(i));
            Ok(Verdict::check(same && id, if !same { "F(g f) differs from F(g) F(f)" } else if !id { "F(1) is not 1" } else { "F(g f) = F(g) F(f)" }))
        }
        (Property::TotalAcyclicity, TrialInputs::Single(x)) => {
            let battery = TestBattery::default_for(x)?;
            let r = crate::acyclicity::correspondence_check(x, &battery)?;
            Ok(Verdict::check(r.consistent(), r.mismatch.unwrap_or_else(|| "both sides agree".into())))
        }
        _ => Err(mismatch()),
    }
}

/// `x` itself, or for periodic `x` the same complex read with a period
/// divisible by `N` so that `F` applies.
fn with_divisible_period(x: &NComplex) -> Result<NComplex> {
    let n = x.order();
    match x.period() {
        Some(p) if p % n != 0 => x.inflate(num_integer::lcm(p, n)),
        _ => Ok(x.clone()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub trial: usize,
    pub n: usize,
    pub ring: CoeffRing,
    pub verdict: Verdict,
    /// Set for falsified trials.
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignReport {
    pub property: Property,
    pub seed: u64,
    pub outcomes: Vec<TrialOutcome>,
}

impl CampaignReport {
    pub fn passes(&self) -> usize {
        self.outcomes.iter().filter(|o| o.verdict.holds).count()
    }
    pub fn failures(&self) -> usize {
        self.outcomes.len() - self.passes()
    }
    pub fn fallbacks(&self) -> usize {
        self.outcomes.iter().filter(|o| o.verdict.fallback).count()
    }
    pub fn holds(&self) -> bool {
        self.failures() == 0
    }
    /// The falsified trial with the smallest inputs, ties broken by index.
    pub fn minimal_counterexample(&self) -> Option<&Value> {
        self.outcomes
            .iter()
            .filter_map(|o| o.counterexample.as_ref().map(|c| (c.to_string().len(), o.trial, c)))
            .min_by_key(|&(size, trial, _)| (size, trial))
            .map(|(_, _, c)| c)
    }

    pub fn to_value(&self) -> Value {
        let failures: Vec<Value> = self
            .outcomes
            .iter()
            .filter(|o| !o.verdict.holds)
            .map(|o| json!({"trial": o.trial, "n": o.n, "ring": o.ring.to_string(), "detail": o.verdict.detail}))
            .collect();
        json!({
            "schema_version": io::SCHEMA_VERSION,
            "kind": "campaign_report",
            "property": self.property.name(),
            "seed": self.seed,
            "trials": self.outcomes.len(),
            "passes": self.passes(),
            "failures": failures,
            "fallbacks": self.fallbacks(),
        })
    }
}

fn counterexample(property: Property, cfg: &CampaignConfig, trial: usize, inputs: &TrialInputs, detail: &str) -> Value {
    json!({
        "schema_version": io::SCHEMA_VERSION,
        "kind": "counterexample",
        "property": property.name(),
        "seed": cfg.seed,
        "trial": trial,
        "reason": detail,
        "inputs": inputs.to_value(),
    })
}

fn run_trial(property: Property, cfg: &CampaignConfig, trial: usize) -> TrialOutcome {
    let (n, ring) = cfg.trial_params(trial);
    let (verdict, counterexample) = match generate(property, cfg, trial) {
        Ok(inputs) => {
            let verdict = check(property, &inputs).unwrap_or_else(|e| Verdict::fail(format!("error: {e}")));
            let cx = (!verdict.holds).then(|| counterexample(property, cfg, trial, &inputs, &verdict.detail));
            (verdict, cx)
        }
        Err(e) => (Verdict::fail(format!("generation failed: {e}")), None),
    };
    TrialOutcome { trial, n, ring, verdict, counterexample }
}

/// How trials are spread over threads. Results are identical either way.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schedule {
    Parallel,
    Sequential,
}

pub fn run_campaign(cfg: &CampaignConfig) -> Result<Vec<CampaignReport>> {
    run_campaign_with(cfg, Schedule::Parallel)
}

pub fn run_campaign_with(cfg: &CampaignConfig, schedule: Schedule) -> Result<Vec<CampaignReport>> {
    cfg.validate()?;
    Ok(cfg
        .properties
        .iter()
        .map(|&property| {
            let one = |t: usize| run_trial(property, cfg, t);
            let outcomes = match schedule {
                Schedule::Parallel => par::map_indexed(cfg.trials, one),
                Schedule::Sequential => par::map_indexed_sequential(cfg.trials, one),
            };
            CampaignReport { property, seed: cfg.seed, outcomes }
        })
        .collect())
}

/// Re-run the check recorded in a counterexample document.
pub fn replay(doc: &Value) -> Result<(Property, Verdict)> {
    let property: Property = doc
        .get("property")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Document { path: "$.property".into(), reason: "missing property name".into() })?
        .parse()?;
    let inputs = TrialInputs::from_value(
        doc.get("inputs").ok_or_else(|| Error::Document { path: "$.inputs".into(), reason: "missing inputs".into() })?,
    )?;
    Ok((property, check(property, &inputs)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert!("nope".parse::<Property>().is_err());
    }

    #[test]
    fn small_campaigns_hold_and_are_deterministic() {
        for p in Property::ALL.into_iter().filter(|&p| p != Property::TotalAcyclicity) {
            let mut cfg = CampaignConfig::new(p, 8, 11);
            cfg.orders = vec![2, 3];
            let a = run_campaign_with(&cfg, Schedule::Parallel).unwrap();
            let b = run_campaign_with(&cfg, Schedule::Sequential).unwrap();
            assert_eq!(a, b);
            assert!(a[0].holds(), "{p}: {:?}", a[0].to_value());
        }
    }

    #[test]
    fn inputs_round_trip_and_replay() {
        let cfg = CampaignConfig::new(Property::Transport, 1, 3);
        let inputs = generate(Property::Transport, &cfg, 0).unwrap();
        assert_eq!(TrialInputs::from_value(&inputs.to_value()).unwrap(), inputs);
        let doc = counterexample(Property::Transport, &cfg, 0, &inputs, "test");
        let (p, v) = replay(&doc).unwrap();
        assert_eq!(p, Property::Transport);
        assert!(v.holds);
    }

    #[test]
    fn detects_a_false_claim() {
        // A stalk is not N-exact; a wrong witness must be reported, not fixed.
        let k = CoeffRing::PrimeField { p: 2 };
        let x = NComplex::disk(3, k, 0, 1, 1).unwrap();
        let f = ChainMapN::identity(&x);
        let v = check(Property::SolverCompleteness, &TrialInputs::Homotopic(f, HomotopyWitness::zero())).unwrap();
        assert!(!v.holds);
        assert!(check(Property::Suspension, &TrialInputs::Pair(x.clone(), x)).is_err());
    }
}
