//! Seeded contract checks for the planners.
//!
//! Trials are split into fixed-size shards; shard `s` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` on stream `s`, so the report does not
//! depend on how shards are scheduled.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::embedding::{haefliger_h, LITERAL_RULES};
use super::fallback::FALLBACK_RULES;
use super::path::{sample_parameters, PlannedPath, Strategy};
use super::quaternion::{dot, Rotation, COINCIDENCE_TOLERANCE};
use super::plan;

const SHARD_SIZE: usize = 4096;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub trials: usize,
    pub seed: u64,
    pub strategy: Strategy,
    pub samples: usize,
    /// Size of the input perturbation used by the continuity probe.
    pub probe_delta: f64,
    /// Largest accepted ratio of path displacement to input displacement.
    pub lipschitz_threshold: f64,
    pub tolerance: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            trials: 100_000,
            seed: 0,
            strategy: Strategy::Fallback,
            samples: 64,
            probe_delta: 1e-6,
            lipschitz_threshold: 1e3,
            tolerance: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuityProbe {
    pub probes: usize,
    pub skipped_domain_change: usize,
    pub max_ratio: f64,
    pub threshold: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Contracts {
    pub coverage: bool,
    /// `None` when endpoint agreement is measured rather than promised.
    pub endpoints: Option<bool>,
    pub symmetry: bool,
    pub swap_invariance: bool,
    pub rule_count: bool,
    pub continuity: bool,
}

impl Contracts {
    pub fn all_hold(&self) -> bool {
        self.coverage
            && self.endpoints.unwrap_or(true)
            && self.symmetry
            && self.swap_invariance
            && self.rule_count
            && self.continuity
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: String,
    pub config: VerifyConfig,
    pub trials: usize,
    pub covered: usize,
    pub coverage_rate: f64,
    pub endpoint_error_max: f64,
    pub endpoint_set_matches: usize,
    pub endpoint_pass_rate: f64,
    pub symmetry_deviation_max: f64,
    pub swap_invariant: usize,
    pub swap_invariance_rate: f64,
    pub rule_histogram: Vec<usize>,
    pub distinct_rules: usize,
    pub max_rules: usize,
    pub max_sample_step: f64,
    pub continuity: ContinuityProbe,
    pub contracts: Contracts,
    pub contracts_hold: bool,
}

#[derive(Clone, Debug, Default)]
struct Tally {
    covered: usize,
    endpoint_error_max: f64,
    endpoint_set_matches: usize,
    symmetry_deviation_max: f64,
    swap_invariant: usize,
    histogram: Vec<usize>,
    max_sample_step: f64,
    probes: usize,
    skipped: usize,
    max_ratio: f64,
}

impl Tally {
    fn new(rules: usize) -> Tally {
        Tally { histogram: vec![0; rules], ..Tally::default() }
    }

    fn merge(&mut self, other: Tally) {
        self.covered += other.covered;
        self.endpoint_error_max = self.endpoint_error_max.max(other.endpoint_error_max);
        self.endpoint_set_matches += other.endpoint_set_matches;
        self.symmetry_deviation_max = self.symmetry_deviation_max.max(other.symmetry_deviation_max);
        self.swap_invariant += other.swap_invariant;
        for (h, o) in self.histogram.iter_mut().zip(other.histogram) {
            *h += o;
        }
        self.max_sample_step = self.max_sample_step.max(other.max_sample_step);
        self.probes += other.probes;
        self.skipped += other.skipped;
        self.max_ratio = self.max_ratio.max(other.max_ratio);
    }
}

fn random_pair(rng: &mut ChaCha8Rng) -> (Rotation, Rotation) {
    let a = Rotation::random(rng);
    loop {
        let b = Rotation::random(rng);
        if a.distance(&b) >= COINCIDENCE_TOLERANCE {
            return (a, b);
        }
    }
}

fn perturb(r: &Rotation, delta: f64, rng: &mut ChaCha8Rng) -> Rotation {
    let q = r.quat();
    let noise: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..=1.0));
    Rotation::new(std::array::from_fn(|k| q[k] + delta * noise[k])).expect("small perturbation of a unit vector")
}

/// Data that must agree for two nearby inputs to lie in the same local
/// domain. For the chart composite this includes the lift and order
/// conventions, whose boundaries are where the rule is discontinuous.
fn domain_key(strategy: Strategy, path: &PlannedPath) -> (usize, bool, bool) {
    match strategy {
        Strategy::Fallback => (path.rule, false, false),
        Strategy::Literal => {
            let [a, b] = path.requested;
            let h = haefliger_h(&a, &b).map(|h| h[path.rule] > 0.0).unwrap_or(false);
            (path.rule, dot(&a.quat(), &b.quat()) >= 0.0, h)
        }
    }
}

fn max_deviation(p: &[Rotation], q: &[Rotation]) -> f64 {
    p.iter().zip(q).map(|(x, y)| x.distance(y)).fold(0.0, f64::max)
}

fn run_shard(config: &VerifyConfig, shard: usize, count: usize, rules: usize) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(shard as u64);
    let mut tally = Tally::new(rules);
    let ts = sample_parameters(config.samples);
    let reversed_ts: Vec<f64> = ts.iter().rev().copied().collect();
    for _ in 0..count {
        let (a, b) = random_pair(&mut rng);
        let a2 = perturb(&a, config.probe_delta, &mut rng);
        let b2 = perturb(&b, config.probe_delta, &mut rng);
        let (forward, backward) = match (plan(&a, &b, config.strategy), plan(&b, &a, config.strategy)) {
            (Ok(p), Ok(q)) => (p, q),
            _ => continue,
        };
        tally.covered += 1;
        tally.histogram[forward.rule] += 1;
        tally.endpoint_error_max = tally.endpoint_error_max.max(forward.endpoint_error());
        tally.endpoint_set_matches += usize::from(forward.endpoint_set_match);
        tally.swap_invariant += usize::from(forward.rule == backward.rule);

        let samples: Vec<Rotation> = ts.iter().map(|t| forward.sample(*t)).collect();
        let mirrored: Vec<Rotation> = reversed_ts.iter().map(|t| backward.sample(*t)).collect();
        tally.symmetry_deviation_max = tally.symmetry_deviation_max.max(max_deviation(&samples, &mirrored));
        let step = samples.windows(2).map(|w| w[0].distance(&w[1])).fold(0.0, f64::max);
        tally.max_sample_step = tally.max_sample_step.max(step);

        if let Ok(nearby) = plan(&a2, &b2, config.strategy) {
            if domain_key(config.strategy, &nearby) != domain_key(config.strategy, &forward) {
                tally.skipped += 1;
                continue;
            }
            let moved: Vec<Rotation> = ts.iter().map(|t| nearby.sample(*t)).collect();
            let input = a.distance(&a2).max(b.distance(&b2));
            if input > 0.0 {
                tally.probes += 1;
                tally.max_ratio = tally.max_ratio.max(max_deviation(&samples, &moved) / input);
            }
        }
    }
    tally
}

fn rate(n: usize, d: usize) -> f64 {
    if d == 0 {
        0.0
    } else {
        n as f64 / d as f64
    }
}

pub fn verify_planner(config: &VerifyConfig) -> VerificationReport {
    let rules = match config.strategy {
        Strategy::Fallback => FALLBACK_RULES,
        Strategy::Literal => LITERAL_RULES,
    };
    let mut total = Tally::new(rules);
    let mut start = 0;
    let mut shard = 0;
    while start < config.trials {
        let count = SHARD_SIZE.min(config.trials - start);
        total.merge(run_shard(config, shard, count, rules));
        start += count;
        shard += 1;
    }

    let distinct_rules = total.histogram.iter().filter(|c| **c > 0).count();
    let tol = config.tolerance;
    let contracts = Contracts {
        coverage: config.trials > 0 && total.covered == config.trials,
        endpoints: match config.strategy {
            Strategy::Fallback => Some(total.endpoint_error_max < tol),
            Strategy::Literal => None,
        },
        symmetry: total.symmetry_deviation_max < tol,
        swap_invariance: total.swap_invariant == total.covered,
        rule_count: distinct_rules <= rules,
        continuity: total.max_ratio <= config.lipschitz_threshold,
    };
    VerificationReport {
        version: crate::VERSION.to_string(),
        config: config.clone(),
        trials: config.trials,
        covered: total.covered,
        coverage_rate: rate(total.covered, config.trials),
        endpoint_error_max: total.endpoint_error_max,
        endpoint_set_matches: total.endpoint_set_matches,
        endpoint_pass_rate: rate(total.endpoint_set_matches, total.covered),
        symmetry_deviation_max: total.symmetry_deviation_max,
        swap_invariant: total.swap_invariant,
        swap_invariance_rate: rate(total.swap_invariant, total.covered),
        rule_histogram: total.histogram,
        distinct_rules,
        max_rules: rules,
        max_sample_step: total.max_sample_step,
        continuity: ContinuityProbe {
            probes: total.probes,
            skipped_domain_change: total.skipped,
            max_ratio: total.max_ratio,
            threshold: config.lipschitz_threshold,
        },
        contracts_hold: contracts.all_hold(),
        contracts,
    }
}
