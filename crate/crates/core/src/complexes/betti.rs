use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Homology dimensions keyed by (degree, weight). Absent keys are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(i64, Option<u32>), usize>,
}

#[derive(Serialize, Deserialize)]
struct BettiEntryJson {
    degree: i64,
    weight: Option<u32>,
    dim: usize,
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    betti: Vec<BettiEntryJson>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Unweighted table from `(degree, dim)` pairs.
    pub fn from_degrees(pairs: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let mut t = Self::new();
        for (d, n) in pairs {
            t.add(d, None, n);
        }
        t
    }

    /// Weighted table from `((degree, weight), dim)` pairs.
    pub fn from_weighted(pairs: impl IntoIterator<Item = ((i64, u32), usize)>) -> Self {
        let mut t = Self::new();
        for ((d, w), n) in pairs {
            t.add(d, Some(w), n);
        }
        t
    }

    pub fn get(&self, degree: i64, weight: Option<u32>) -> usize {
        self.entries.get(&(degree, weight)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, degree: i64, weight: Option<u32>, dim: usize) {
        if dim == 0 {
            return;
        }
        *self.entries.entry((degree, weight)).or_insert(0) += dim;
    }

    pub fn set(&mut self, degree: i64, weight: Option<u32>, dim: usize) {
        if dim == 0 {
            self.entries.remove(&(degree, weight));
        } else {
            self.entries.insert((degree, weight), dim);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero entries sorted by (degree, weight).
    pub fn iter(&self) -> impl Iterator<Item = (i64, Option<u32>, usize)> + '_ {
        self.entries.iter().map(|(&(d, w), &n)| (d, w, n))
    }

    pub fn weights(&self) -> BTreeSet<Option<u32>> {
        self.entries.keys().map(|k| k.1).collect()
    }

    /// Sums over weights, leaving an unweighted table.
    pub fn by_degree(&self) -> BettiTable {
        let mut t = BettiTable::new();
        for (d, _, n) in self.iter() {
            t.add(d, None, n);
        }
        t
    }

    /// The entries of one weight.
    pub fn weight_part(&self, weight: Option<u32>) -> BettiTable {
        self.filter(|_, w| w == weight)
    }

    pub fn filter(&self, keep: impl Fn(i64, Option<u32>) -> bool) -> BettiTable {
        let entries = self
            .entries
            .iter()
            .filter(|(&(d, w), _)| keep(d, w))
            .map(|(k, v)| (*k, *v))
            .collect();
        BettiTable { entries }
    }

    /// Moves every entry to weight `w`.
    pub fn with_weight(&self, weight: Option<u32>) -> BettiTable {
        let mut t = BettiTable::new();
        for (d, _, n) in self.iter() {
            t.add(d, weight, n);
        }
        t
    }

    pub fn shifted(&self, k: i64) -> BettiTable {
        let entries = self.entries.iter().map(|(&(d, w), &n)| ((d + k, w), n)).collect();
        BettiTable { entries }
    }

    /// Betti table of the linear dual: degrees are negated.
    pub fn dual(&self) -> BettiTable {
        let entries = self.entries.iter().map(|(&(d, w), &n)| ((-d, w), n)).collect();
        BettiTable { entries }
    }

    /// Künneth convolution: degrees add, weights add (an unweighted side
    /// counts as weight 0).
    pub fn convolve(&self, other: &BettiTable) -> BettiTable {
        let mut t = BettiTable::new();
        for (d1, w1, n1) in self.iter() {
            for (d2, w2, n2) in other.iter() {
                let w = match (w1, w2) {
                    (None, None) => None,
                    _ => Some(w1.unwrap_or(0) + w2.unwrap_or(0)),
                };
                t.add(d1 + d2, w, n1 * n2);
            }
        }
        t
    }

    /// Alternating sum of dimensions.
    pub fn euler_characteristic(&self) -> i64 {
        self.iter()
            .map(|(d, _, n)| if d.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn total_dim(&self) -> usize {
        self.entries.values().sum()
    }

    fn to_json_struct(&self) -> BettiJson {
        let betti = self
            .iter()
            .map(|(degree, weight, dim)| BettiEntryJson {
                degree,
                weight,
                dim,
            })
            .collect();
        BettiJson { betti }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json_struct()).expect("serializable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_struct()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<BettiTable, serde_json::Error> {
        let parsed: BettiJson = serde_json::from_str(text)?;
        let mut t = BettiTable::new();
        for e in parsed.betti {
            t.add(e.degree, e.weight, e.dim);
        }
        Ok(t)
    }

    /// Fixed-width text table sorted by (weight, degree).
    pub fn to_text(&self) -> String {
        let mut rows: Vec<(Option<u32>, i64, usize)> =
            self.iter().map(|(d, w, n)| (w, d, n)).collect();
        rows.sort();
        let mut out = format!("{:>8} {:>8} {:>8}\n", "weight", "degree", "dim");
        for (w, d, n) in rows {
            let w = w.map_or("-".to_string(), |w| w.to_string());
            out.push_str(&format!("{w:>8} {d:>8} {n:>8}\n"));
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .iter()
            .map(|(d, w, n)| match w {
                Some(w) => format!("({d},{w}):{n}"),
                None => format!("{d}:{n}"),
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The part of the (degree, weight) plane on which a computed table is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validity {
    /// Weights above this bound are not reported.
    pub max_weight: Option<u32>,
    /// Entries at degree ≤ this are exact in every reported weight; `None`
    /// when no degree is guaranteed.
    pub safe_degree: Option<i64>,
    /// Weights whose entries are exact in every degree.
    pub exact_weights: BTreeSet<u32>,
}

impl Validity {
    pub fn everything() -> Self {
        Validity {
            max_weight: None,
            safe_degree: Some(i64::MAX),
            exact_weights: BTreeSet::new(),
        }
    }

    pub fn covers(&self, degree: i64, weight: Option<u32>) -> bool {
        if let (Some(w), Some(m)) = (weight, self.max_weight) {
            if w > m {
                return false;
            }
        }
        if let Some(w) = weight {
            if self.exact_weights.contains(&w) {
                return true;
            }
        }
        self.safe_degree.is_some_and(|s| degree <= s)
    }

    pub fn weight_is_exact(&self, weight: Option<u32>) -> bool {
        weight.is_some_and(|w| self.exact_weights.contains(&w))
    }

    /// Region on which both validities hold.
    pub fn intersect(&self, other: &Validity) -> Validity {
        let max_weight = match (self.max_weight, other.max_weight) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let safe_degree = match (self.safe_degree, other.safe_degree) {
            (Some(a), Some(b)) => Some(a.min(b)),
            _ => None,
        };
        let exact_weights = self
            .exact_weights
            .intersection(&other.exact_weights)
            .copied()
            .collect();
        Validity {
            max_weight,
            safe_degree,
            exact_weights,
        }
    }
}

/// A Betti table together with the region on which it is exact. Entries
/// outside the region are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComputedBetti {
    pub table: BettiTable,
    pub validity: Validity,
}

impl ComputedBetti {
    pub fn new(table: BettiTable, validity: Validity) -> Self {
        let table = table.filter(|d, w| validity.covers(d, w));
        Self { table, validity }
    }

    pub fn exact(table: BettiTable) -> Self {
        Self::new(table, Validity::everything())
    }

    /// Künneth product for a disjoint union. The result is exact at
    /// (n, w) only when every contributing pair of entries is.
    pub fn kunneth(&self, other: &ComputedBetti) -> ComputedBetti {
        let lo = |t: &BettiTable| t.iter().map(|e| e.0).min().unwrap_or(0).min(0);
        let (a, b) = (&self.validity, &other.validity);
        let safe_degree = match (a.safe_degree, b.safe_degree) {
            (Some(sa), Some(sb)) => {
                Some(sa.saturating_add(lo(&other.table)).min(sb.saturating_add(lo(&self.table))))
            }
            _ => None,
        };
        let max_weight = match (a.max_weight, b.max_weight) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        let exact_weights = match max_weight {
            Some(m) => (0..=m)
                .filter(|&w| {
                    (0..=w).all(|w1| a.exact_weights.contains(&w1) && b.exact_weights.contains(&(w - w1)))
                })
                .collect(),
            None => BTreeSet::new(),
        };
        let validity = Validity {
            max_weight,
            safe_degree,
            exact_weights,
        };
        ComputedBetti::new(self.table.convolve(&other.table), validity)
    }

    /// Entries where the two computations disagree inside their common region.
    pub fn diff(&self, other: &ComputedBetti) -> Vec<(i64, Option<u32>, usize, usize)> {
        let region = self.validity.intersect(&other.validity);
        let keys: BTreeSet<(i64, Option<u32>)> = self
            .table
            .iter()
            .chain(other.table.iter())
            .map(|(d, w, _)| (d, w))
            .filter(|&(d, w)| region.covers(d, w))
            .collect();
        keys.into_iter()
            .filter_map(|(d, w)| {
                let (x, y) = (self.table.get(d, w), other.table.get(d, w));
                (x != y).then_some((d, w, x, y))
            })
            .collect()
    }
}
