use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::kernel::SmallKernel;
use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};
use crate::setops::{has_trivial_stabilizer, sigma, stabilizer, ElementSet};

/// Largest group scanned exhaustively.
pub const EXHAUSTIVE_MAX_ORDER: usize = 24;

/// One witness with its derived quantities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchRow {
    pub group: String,
    /// Element literals of the witness, ascending by index.
    pub witness: Vec<String>,
    pub card: usize,
    pub sigma_size: usize,
    /// `|Σ(A)| / |A|²`; absent for `A = ∅`.
    pub ratio: Option<f64>,
    pub stab_size: usize,
    pub bound: String,
    pub satisfied: bool,
}

impl SearchRow {
    pub(crate) fn new(a: &ElementSet, bound: &str, satisfied: bool) -> Self {
        let g = a.group();
        let span = sigma(a);
        let card = a.len();
        SearchRow {
            group: g.to_string(),
            witness: a.iter().map(|x| g.format_element(x)).collect(),
            card,
            sigma_size: span.len(),
            ratio: ratio(span.len(), card),
            stab_size: stabilizer(&span).order(),
            bound: bound.into(),
            satisfied,
        }
    }

    /// Parses the witness back into a set of `g`.
    pub fn witness_set(&self, g: &GroupSpec) -> Result<ElementSet> {
        let elements = self.witness.iter().map(|w| g.parse_element(w)).collect::<Result<Vec<_>>>()?;
        Ok(ElementSet::from_elements(g, elements))
    }

    /// Recomputes every derived field from the witness; `None` when they all agree.
    pub fn revalidate(&self) -> Result<Option<String>> {
        let g: GroupSpec = self.group.parse()?;
        let a = self.witness_set(&g)?;
        let fresh = SearchRow::new(&a, &self.bound, self.satisfied);
        Ok((fresh != *self).then(|| format!("row for {} does not recompute: {fresh:?}", self.group)))
    }
}

pub(crate) fn ratio(size: usize, card: usize) -> Option<f64> {
    (card > 0).then(|| size as f64 / (card * card) as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchMeta {
    pub kind: String,
    pub group: String,
    /// `exhaustive` or `sample`.
    pub mode: String,
    pub universe: usize,
    pub enumerated: u64,
    pub admissible: u64,
    pub violations: u64,
    pub seed: Option<u64>,
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub meta: SearchMeta,
    pub rows: Vec<SearchRow>,
}

impl SearchReport {
    /// Row with the smallest ratio (ties go to the smaller `|A|`).
    pub fn min_row(&self) -> Option<&SearchRow> {
        self.rows
            .iter()
            .filter(|r| r.ratio.is_some())
            .min_by(|a, b| a.ratio.unwrap().total_cmp(&b.ratio.unwrap()).then(a.card.cmp(&b.card)))
    }

    /// Messages for rows whose derived fields do not recompute.
    pub fn revalidate(&self) -> Result<Vec<String>> {
        Ok(self.rows.iter().map(SearchRow::revalidate).collect::<Result<Vec<_>>>()?.into_iter().flatten().collect())
    }
}

/// Per-cardinality minimum `|Σ(A)|` with tie-break on the enumeration key.
#[derive(Clone, Default)]
struct ScanStats {
    enumerated: u64,
    admissible: u64,
    violations: u64,
    best: Vec<Option<(usize, u64)>>,
}

impl ScanStats {
    fn new(slots: usize) -> Self {
        ScanStats { best: vec![None; slots], ..Default::default() }
    }

    fn record(&mut self, card: usize, size: usize, key: u64) {
        self.admissible += 1;
        if 64 * size < card * card {
            self.violations += 1;
        }
        let slot = &mut self.best[card];
        if slot.is_none_or(|b| (size, key) < b) {
            *slot = Some((size, key));
        }
    }

    fn merge(mut self, other: ScanStats) -> ScanStats {
        self.enumerated += other.enumerated;
        self.admissible += other.admissible;
        self.violations += other.violations;
        for (a, b) in self.best.iter_mut().zip(other.best) {
            *a = match (*a, b) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            };
        }
        self
    }
}

struct Walker<'a> {
    kernel: &'a SmallKernel,
    universe: &'a [usize],
    antisymmetric: bool,
}

impl Walker<'_> {
    fn dfs(&self, next: usize, mask: u64, chosen: u128, span: u128, card: usize, stats: &mut ScanStats) {
        stats.enumerated += 1;
        if self.kernel.trivial_stab(span) {
            stats.record(card, span.count_ones() as usize, mask);
        }
        for j in next..self.universe.len() {
            let u = self.universe[j];
            if self.antisymmetric && chosen >> self.kernel.neg(u) & 1 == 1 {
                continue;
            }
            let span2 = self.kernel.absorb(span, u);
            self.dfs(j + 1, mask | 1 << j, chosen | 1 << u, span2, card + 1, stats);
        }
    }
}

fn scan_universe(g: &GroupSpec, antisymmetric: bool) -> Vec<Element> {
    g.elements()
        .filter(|&x| x != g.zero() && !(antisymmetric && g.neg(x) == x))
        .collect()
}

/// Minimum `|Σ(A)|/|A|²` per `|A|` over `A ⊆ G \ {0}` whose span has trivial stabilizer,
/// optionally restricted to antisymmetric `A`.
///
/// Exhaustive for `|G| <= 24`; otherwise `sample = Some((budget, seed))` draws `budget`
/// random sets from a seeded generator.
pub fn min_ratio_scan(g: &GroupSpec, require_antisymmetric: bool, sample: Option<(u64, u64)>) -> Result<SearchReport> {
    let start = Instant::now();
    let universe = scan_universe(g, require_antisymmetric);
    let slots = universe.len() + 1;
    let (stats, mode, seed) = match sample {
        None => {
            if g.order() > EXHAUSTIVE_MAX_ORDER {
                return Err(Error::TooLarge {
                    count: 1u128 << (g.order() - 1).min(127),
                    limit: 1u128 << (EXHAUSTIVE_MAX_ORDER - 1),
                });
            }
            let kernel = SmallKernel::new(g).expect("order checked");
            let idx: Vec<usize> = universe.iter().map(|e| e.index()).collect();
            let walker = Walker { kernel: &kernel, universe: &idx, antisymmetric: require_antisymmetric };
            let mut root = ScanStats::new(slots);
            root.enumerated = 1;
            root.record(0, 1, 0);
            let stats = (0..idx.len())
                .into_par_iter()
                .map(|j| {
                    let mut st = ScanStats::new(slots);
                    let u = idx[j];
                    walker.dfs(j + 1, 1 << j, 1u128 << u, kernel.absorb(1, u), 1, &mut st);
                    st
                })
                .reduce(|| ScanStats::new(slots), ScanStats::merge)
                .merge(root);
            (stats, "exhaustive", None)
        }
        Some((budget, seed)) => (sample_scan(g, &universe, require_antisymmetric, budget, seed), "sample", Some(seed)),
    };

    let rows = stats
        .best
        .iter()
        .enumerate()
        .skip(1)
        .filter_map(|(card, b)| b.map(|(_, key)| (card, key)))
        .map(|(card, key)| {
            let a = match mode {
                "exhaustive" => ElementSet::from_elements(g, (0..universe.len()).filter(|j| key >> j & 1 == 1).map(|j| universe[j])),
                _ => sample_set(g, &universe, require_antisymmetric, seed.unwrap_or(0), key),
            };
            debug_assert_eq!(a.len(), card);
            let size = sigma(&a).len();
            SearchRow::new(&a, "thm1", 64 * size >= card * card)
        })
        .collect();

    Ok(SearchReport {
        meta: SearchMeta {
            kind: "min_ratio".into(),
            group: g.to_string(),
            mode: mode.into(),
            universe: universe.len(),
            enumerated: stats.enumerated,
            admissible: stats.admissible,
            violations: stats.violations,
            seed,
            wall_seconds: start.elapsed().as_secs_f64(),
        },
        rows,
    })
}

/// Sample number `k` of the stream seeded with `seed`; each sample has its own generator.
fn sample_set(g: &GroupSpec, universe: &[Element], antisymmetric: bool, seed: u64, k: u64) -> ElementSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    let mut a = ElementSet::empty(g);
    for &x in universe {
        if antisymmetric {
            let nx = g.neg(x);
            if x < nx && rng.gen_range(0..3) != 0 {
                a.insert(if rng.gen_bool(0.5) { x } else { nx });
            }
        } else if rng.gen_bool(0.5) {
            a.insert(x);
        }
    }
    a
}

fn sample_scan(g: &GroupSpec, universe: &[Element], antisymmetric: bool, budget: u64, seed: u64) -> ScanStats {
    let slots = universe.len() + 1;
    (0..budget)
        .into_par_iter()
        .map(|k| {
            let mut st = ScanStats::new(slots);
            st.enumerated = 1;
            let a = sample_set(g, universe, antisymmetric, seed, k);
            let span = sigma(&a);
            if has_trivial_stabilizer(&span) {
                st.record(a.len(), span.len(), k);
            }
            st
        })
        .reduce(|| ScanStats::new(slots), ScanStats::merge)
}
