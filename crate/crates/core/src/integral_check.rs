//! Consistency checks between candidate integral cohomology groups and the
//! computed mod-2 data.
//!
//! Two coefficient-arithmetic consequences are used:
//!
//! * universal coefficients: `dim H^n(X; F₂) = r_n + t_n + t_{n+1}`, where `r`
//!   is the free rank and `t` counts cyclic summands of even order;
//! * the first Bockstein page (`Sq¹`-cohomology) has dimension
//!   `r_n + u_n + u_{n+1}`, where `u` counts summands `Z/2^k` with `k ≥ 2`.
//!   This page only detects the integral answer when there is no `Z/8` or
//!   higher, which is recorded in every report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bpm2_ring::{sq1_cohomology_dims_in, QuotientRing};
use crate::error::AlgebraError;

/// `H^n(X; Z) ≅ Z^free_rank ⊕ ⨁ Z/order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralGroup {
    pub degree: usize,
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DatasetError {
    #[error("torsion order {order} in degree {degree} is not a prime power > 1")]
    BadOrder { degree: usize, order: u64 },
    #[error("degree {0} listed twice")]
    DuplicateDegree(usize),
    #[error("malformed dataset: {0}")]
    Parse(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<IntegralGroup>", into = "Vec<IntegralGroup>")]
pub struct IntegralGroupList {
    groups: BTreeMap<usize, IntegralGroup>,
}

fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n % d == 0).expect("n itself divides n");
    let mut k = n;
    while k % p == 0 {
        k /= p;
    }
    k == 1
}

impl TryFrom<Vec<IntegralGroup>> for IntegralGroupList {
    type Error = DatasetError;

    fn try_from(list: Vec<IntegralGroup>) -> Result<Self, Self::Error> {
        let mut groups = BTreeMap::new();
        for g in list {
            if let Some(&order) = g.torsion.iter().find(|o| !is_prime_power(**o)) {
                return Err(DatasetError::BadOrder { degree: g.degree, order });
            }
            let degree = g.degree;
            if groups.insert(degree, g).is_some() {
                return Err(DatasetError::DuplicateDegree(degree));
            }
        }
        Ok(Self { groups })
    }
}

impl From<IntegralGroupList> for Vec<IntegralGroup> {
    fn from(list: IntegralGroupList) -> Self {
        list.groups.into_values().collect()
    }
}

impl IntegralGroupList {
    pub fn new(list: Vec<IntegralGroup>) -> Result<Self, DatasetError> {
        Self::try_from(list)
    }

    pub fn groups(&self) -> impl Iterator<Item = &IntegralGroup> {
        self.groups.values()
    }

    pub fn get(&self, degree: usize) -> Option<&IntegralGroup> {
        self.groups.get(&degree)
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.groups.keys().next_back().copied()
    }

    fn free_rank(&self, n: usize) -> usize {
        self.get(n).map_or(0, |g| g.free_rank)
    }

    fn count_torsion(&self, n: usize, pred: impl Fn(u64) -> bool) -> usize {
        self.get(n).map_or(0, |g| g.torsion.iter().filter(|o| pred(**o)).count())
    }

    fn even_torsion(&self, n: usize) -> usize {
        self.count_torsion(n, |o| o % 2 == 0)
    }

    /// Summands `Z/2^k` with `k ≥ 2`.
    fn higher_two_torsion(&self, n: usize) -> usize {
        self.count_torsion(n, |o| o % 2 == 0 && o >= 4)
    }

    /// True when some summand is `Z/2^k` with `k ≥ 3`.
    pub fn has_order_eight_or_more(&self) -> bool {
        self.groups().flat_map(|g| &g.torsion).any(|o| o % 2 == 0 && *o >= 8)
    }
}

/// `dim H^n(X; F₂)` for `n = 0..=top`.
pub fn mod2_dims_from_integral(g: &IntegralGroupList, top: usize) -> Vec<usize> {
    (0..=top)
        .map(|n| g.free_rank(n) + g.even_torsion(n) + g.even_torsion(n + 1))
        .collect()
}

/// Dimensions of the first Bockstein page, `n = 0..=top`.
pub fn bockstein_e2_dims_from_integral(g: &IntegralGroupList, top: usize) -> Vec<usize> {
    (0..=top)
        .map(|n| g.free_rank(n) + g.higher_two_torsion(n) + g.higher_two_torsion(n + 1))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Every comparison agrees but the data contains `Z/8` or higher, which
    /// the first Bockstein page cannot see.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeComparison {
    pub degree: usize,
    pub expected: usize,
    pub computed: usize,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub m: usize,
    pub mod2_dim_match: Vec<DegreeComparison>,
    pub bockstein_e2_match: Vec<DegreeComparison>,
    pub verdict: Verdict,
    pub assumptions: String,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn mismatched_degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .mod2_dim_match
            .iter()
            .chain(&self.bockstein_e2_match)
            .filter(|c| !c.matches)
            .map(|c| c.degree)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

pub const BOCKSTEIN_ASSUMPTION: &str =
    "first Bockstein page only: summands Z/2^k with k >= 3 are assumed absent (higher pages collapse). For m >= 2 this absence is a conjecture, not a theorem";

fn compare(expected: &[usize], computed: &[usize]) -> Vec<DegreeComparison> {
    expected
        .iter()
        .zip(computed)
        .enumerate()
        .map(|(degree, (&e, &c))| DegreeComparison {
            degree,
            expected: e,
            computed: c,
            matches: e == c,
        })
        .collect()
}

/// Compares a candidate `H*(B(P^m,2); Z)` with the computed mod-2 ring and its
/// `Sq¹`-cohomology, in degrees `0..=2m` (and any higher degree listed).
pub fn check(m: usize, g: &IntegralGroupList) -> Result<ConsistencyReport, AlgebraError> {
    let top = (2 * m).max(g.top_degree().unwrap_or(0));
    let ring = QuotientRing::build(m, 2 * m + 1)?;
    let computed_dims: Vec<usize> = (0..=top).map(|d| ring.dim(d)).collect::<Result<_, _>>()?;
    let mut computed_sq1 = sq1_cohomology_dims_in(&ring)?;
    computed_sq1.resize(top + 1, 0);

    let mod2_dim_match = compare(&mod2_dims_from_integral(g, top), &computed_dims);
    let bockstein_e2_match = compare(&bockstein_e2_dims_from_integral(g, top), &computed_sq1);
    let all_match = mod2_dim_match.iter().chain(&bockstein_e2_match).all(|c| c.matches);
    let verdict = match (all_match, g.has_order_eight_or_more()) {
        (false, _) => Verdict::Fail,
        (true, true) => Verdict::Inconclusive,
        (true, false) => Verdict::Pass,
    };
    Ok(ConsistencyReport {
        m,
        mod2_dim_match,
        bockstein_e2_match,
        verdict,
        assumptions: BOCKSTEIN_ASSUMPTION.to_string(),
    })
}

/// A stored integral computation together with where it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralDataset {
    pub space: String,
    pub m: usize,
    pub provenance: String,
    /// Facts about the classifying map recorded with the data, not re-derived.
    #[serde(default)]
    pub verified_metadata: Option<ClassifyingMapFact>,
    pub groups: IntegralGroupList,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyingMapFact {
    pub statement: String,
    pub integral_tcs_lower_bound: usize,
}

const B_SO3_DATASET: &str = include_str!("../data/b_so3_2_integral.json");

/// `H*(B(SO(3),2); Z) = H*(B(P³,2); Z)`.
pub fn b_so3_dataset() -> IntegralDataset {
    serde_json::from_str(B_SO3_DATASET).expect("bundled dataset is valid")
}

/// Parses either a bare group list or a full [`IntegralDataset`].
pub fn parse_groups(json: &str) -> Result<IntegralGroupList, DatasetError> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Input {
        Dataset(IntegralDataset),
        List(IntegralGroupList),
    }
    match serde_json::from_str::<Input>(json) {
        Ok(Input::Dataset(d)) => Ok(d.groups),
        Ok(Input::List(l)) => Ok(l),
        Err(_) => {
            // Re-parse as a list to surface the more specific error.
            serde_json::from_str::<IntegralGroupList>(json).map_err(|e| DatasetError::Parse(e.to_string()))
        }
    }
}

/// A candidate dataset differing from a reference in one summand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mutation {
    pub id: String,
    pub groups: IntegralGroupList,
}

/// Every change of a single 2-primary summand in degrees `0..=top`: a free
/// summand or a `Z/2` added or removed, and each `Z/2^k` replaced by
/// `Z/2^(k+1)`, `Z/2^(k−1)`, or `Z/2 ⊕ Z/2^(k−1)`. Odd torsion is invisible
/// mod 2 and is not mutated.
pub fn single_summand_mutations(g: &IntegralGroupList, top: usize) -> Vec<Mutation> {
    let mut out = Vec::new();
    let mut push = |id: String, degree: usize, edit: &dyn Fn(&mut IntegralGroup)| {
        let mut groups = g.clone();
        let entry = groups.groups.entry(degree).or_insert(IntegralGroup {
            degree,
            free_rank: 0,
            torsion: Vec::new(),
        });
        edit(entry);
        entry.torsion.sort_unstable();
        out.push(Mutation { id, groups });
    };
    for n in 0..=top {
        push(format!("H{n}: add Z"), n, &|e| e.free_rank += 1);
        if g.free_rank(n) > 0 {
            push(format!("H{n}: drop Z"), n, &|e| e.free_rank -= 1);
        }
        push(format!("H{n}: add Z/2"), n, &|e| e.torsion.push(2));
        let torsion = g.get(n).map(|e| e.torsion.clone()).unwrap_or_default();
        for (k, &o) in torsion.iter().enumerate() {
            if o % 2 != 0 {
                continue;
            }
            push(format!("H{n}: drop Z/{o}"), n, &|e| {
                e.torsion.remove(k);
            });
            push(format!("H{n}: Z/{o} -> Z/{}", 2 * o), n, &|e| e.torsion[k] = 2 * o);
            if o >= 4 {
                push(format!("H{n}: Z/{o} -> Z/{}", o / 2), n, &|e| e.torsion[k] = o / 2);
                let split = if o == 4 { "(Z/2)^2".to_string() } else { format!("Z/2 + Z/{}", o / 2) };
                push(format!("H{n}: Z/{o} -> {split}"), n, &|e| {
                    e.torsion[k] = o / 2;
                    e.torsion.push(2);
                });
            }
        }
    }
    out
}
