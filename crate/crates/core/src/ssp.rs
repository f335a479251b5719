use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{bail, Result, SspError};
use crate::set::ElementSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMeasure {
    KappaAddition,
    KappaDeletion,
    Hamming,
}

impl DistanceMeasure {
    pub const ALL: [DistanceMeasure; 3] =
        [DistanceMeasure::KappaAddition, DistanceMeasure::KappaDeletion, DistanceMeasure::Hamming];

    pub fn name(self) -> &'static str {
        match self {
            DistanceMeasure::KappaAddition => "addition",
            DistanceMeasure::KappaDeletion => "deletion",
            DistanceMeasure::Hamming => "hamming",
        }
    }

    /// Distance for sets over the same universe; no bounds checks.
    pub(crate) fn eval(self, a1: &ElementSet, a2: &ElementSet) -> usize {
        match self {
            DistanceMeasure::KappaAddition => a2.count_minus(a1),
            DistanceMeasure::KappaDeletion => a1.count_minus(a2),
            DistanceMeasure::Hamming => a2.count_minus(a1) + a1.count_minus(a2),
        }
    }
}

impl fmt::Display for DistanceMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DistanceMeasure {
    type Err = SspError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "addition" | "add" | "kappa-addition" => Ok(DistanceMeasure::KappaAddition),
            "deletion" | "del" | "kappa-deletion" => Ok(DistanceMeasure::KappaDeletion),
            "hamming" | "ham" => Ok(DistanceMeasure::Hamming),
            other => Err(SspError::Format(format!("unknown distance measure `{other}`"))),
        }
    }
}

pub fn distance(measure: DistanceMeasure, a1: &ElementSet, a2: &ElementSet) -> Result<usize> {
    if a1.universe_size() != a2.universe_size() {
        bail!(
            Domain,
            "sets live in different universes ({} vs {})",
            a1.universe_size(),
            a2.universe_size()
        );
    }
    Ok(measure.eval(a1, a2))
}

/// One universe element: its position plus a human label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElementId {
    pub index: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Universe {
    labels: Vec<String>,
}

impl Universe {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                bail!(Domain, "duplicate universe label `{l}`");
            }
        }
        Ok(Universe { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ids(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.labels.iter().enumerate().map(|(index, l)| ElementId { index, label: l.clone() })
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Partial injective map between universes `0..domain` and `0..codomain`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectiveMap {
    image: Vec<Option<usize>>,
    codomain: usize,
}

impl InjectiveMap {
    pub fn new(image: Vec<Option<usize>>, codomain: usize) -> Result<Self> {
        let mut hit = vec![false; codomain];
        for &y in image.iter().flatten() {
            if y >= codomain {
                bail!(Domain, "image {y} outside codomain of size {codomain}");
            }
            if std::mem::replace(&mut hit[y], true) {
                bail!(Precondition, "map is not injective at {y}");
            }
        }
        Ok(InjectiveMap { image, codomain })
    }

    pub fn total(image: Vec<usize>, codomain: usize) -> Result<Self> {
        Self::new(image.into_iter().map(Some).collect(), codomain)
    }

    pub fn identity(n: usize) -> Self {
        InjectiveMap { image: (0..n).map(Some).collect(), codomain: n }
    }

    pub fn domain_size(&self) -> usize {
        self.image.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.image.get(x).copied().flatten()
    }

    pub fn is_total(&self) -> bool {
        self.image.iter().all(Option::is_some)
    }

    /// Image list of a total map.
    pub fn as_vec(&self) -> Vec<usize> {
        self.image.iter().map(|y| y.expect("map is total")).collect()
    }

    pub fn image_set(&self) -> ElementSet {
        let mut s = ElementSet::empty(self.codomain);
        for &y in self.image.iter().flatten() {
            s.insert(y);
        }
        s
    }

    /// `self ∘ inner`: first apply `inner`, then `self`.
    pub fn after(&self, inner: &InjectiveMap) -> Result<InjectiveMap> {
        if inner.codomain != self.image.len() {
            bail!(
                Composition,
                "inner codomain {} does not match outer domain {}",
                inner.codomain,
                self.image.len()
            );
        }
        let image = inner.image.iter().map(|y| y.and_then(|y| self.image[y])).collect();
        InjectiveMap::new(image, self.codomain)
    }
}

pub fn relabel(f: &InjectiveMap, s: &ElementSet) -> Result<ElementSet> {
    if s.universe_size() != f.domain_size() {
        bail!(
            Domain,
            "set universe {} does not match map domain {}",
            s.universe_size(),
            f.domain_size()
        );
    }
    let mut out = ElementSet::empty(f.codomain);
    for x in s.iter() {
        match f.image[x] {
            Some(y) => out.insert(y),
            None => bail!(Domain, "element {x} is outside the map's domain"),
        }
    }
    Ok(out)
}

/// Bounds on exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_universe: usize,
    pub max_solutions: usize,
}

pub const MAX_UNIVERSE_ENV: &str = "SSPFORGE_MAX_UNIVERSE";

impl Default for Limits {
    fn default() -> Self {
        Limits { max_universe: 24, max_solutions: 1 << 20 }
    }
}

impl Limits {
    /// Practically unbounded universe; used by harnesses that rely on the
    /// structured enumerators rather than subset scans.
    pub fn wide() -> Self {
        Limits { max_universe: usize::MAX, max_solutions: 1 << 20 }
    }

    pub fn from_env() -> Result<Self> {
        let mut l = Limits::default();
        if let Ok(v) = std::env::var(MAX_UNIVERSE_ENV) {
            l.max_universe = v
                .trim()
                .parse()
                .map_err(|_| SspError::Format(format!("{MAX_UNIVERSE_ENV}={v} is not an integer")))?;
        }
        Ok(l)
    }

    pub fn check_universe(&self, n: usize) -> Result<()> {
        if n > self.max_universe {
            bail!(Capacity, "universe of {n} elements exceeds bound {}", self.max_universe);
        }
        Ok(())
    }
}

/// Linear envelope of a LOP instance: solutions are feasible sets with `d(S) <= t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LopEnvelope {
    pub cost: Vec<i64>,
    pub threshold: i64,
}

impl LopEnvelope {
    pub fn cost_of(&self, s: &ElementSet) -> i64 {
        s.iter().map(|u| self.cost[u]).sum()
    }
}
