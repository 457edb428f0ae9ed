//! Memoized access to charts and cohomology groups.
//!
//! Everything downstream asks the engine for `H^n(G, Z/m)` rather than
//! computing it, so that residue sweeps over many subgroups reuse work.
//! Results are keyed by the table digest, so two labellings of the same
//! table share an entry while isomorphic but relabelled groups do not.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use sha2::{Digest, Sha256};

use crate::cochain::{chart_cost, Chart, CohomologyGroup, StableCohomology};
use crate::error::{Error, Result};
use crate::exactla::ModSubquotient;
use crate::groups::FiniteGroup;

/// Default work budget for a single chart, in tuple-generator pairs.
pub const DEFAULT_CHART_BUDGET: u64 = 3_000_000;

/// Persistent storage for computed quotients, keyed by `cache_key`.
pub trait CohomologyStore: Send + Sync {
    fn load(&self, key: &str) -> Option<ModSubquotient>;
    fn save(&self, key: &str, value: &ModSubquotient);
}

/// Hex SHA-256 of the group table, degree and modulus.
pub fn cache_key(group: &FiniteGroup, degree: usize, modulus: u64) -> String {
    let mut h = Sha256::new();
    h.update(group.digest());
    h.update((degree as u64).to_le_bytes());
    h.update(modulus.to_le_bytes());
    hex::encode(h.finalize())
}

type Cell<T> = Arc<OnceLock<Result<Arc<T>>>>;

struct Memo<K, T> {
    cells: Mutex<HashMap<K, Cell<T>>>,
}

impl<K: Hash + Eq, T> Memo<K, T> {
    fn new() -> Self {
        Memo { cells: Mutex::new(HashMap::new()) }
    }

    fn get(&self, key: K, compute: impl FnOnce() -> Result<T>) -> Result<Arc<T>> {
        let cell = {
            let mut cells = self.cells.lock().expect("memo lock poisoned");
            cells.entry(key).or_default().clone()
        };
        cell.get_or_init(|| compute().map(Arc::new)).clone()
    }

    fn len(&self) -> usize {
        self.cells.lock().expect("memo lock poisoned").len()
    }
}

pub struct Engine {
    chart_budget: u64,
    store: Option<Arc<dyn CohomologyStore>>,
    charts: Memo<([u8; 32], usize), Chart>,
    groups: Memo<([u8; 32], usize, u64), CohomologyGroup>,
    stable: Memo<([u8; 32], usize, u64), StableCohomology>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

impl Engine {
    pub fn new() -> Engine {
        Engine {
            chart_budget: DEFAULT_CHART_BUDGET,
            store: None,
            charts: Memo::new(),
            groups: Memo::new(),
            stable: Memo::new(),
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Engine {
        self.chart_budget = budget;
        self
    }

    pub fn with_store(mut self, store: Arc<dyn CohomologyStore>) -> Engine {
        self.store = Some(store);
        self
    }

    pub fn budget(&self) -> u64 {
        self.chart_budget
    }

    pub fn chart(&self, group: &Arc<FiniteGroup>, degree: usize) -> Result<Arc<Chart>> {
        self.charts.get((group.digest(), degree), || {
            let cost = chart_cost(group, degree);
            if cost > self.chart_budget {
                return Err(Error::BudgetExceeded {
                    what: format!("degree {degree} cochains on a group of order {}", group.order()),
                    required: cost,
                    limit: self.chart_budget,
                });
            }
            Ok(Chart::new(group.clone(), degree))
        })
    }

    /// `H^n(G, Z/m)`.
    pub fn cohomology(&self, group: &Arc<FiniteGroup>, degree: usize, m: u64) -> Result<Arc<CohomologyGroup>> {
        self.groups.get((group.digest(), degree, m), || {
            let chart = self.chart(group, degree)?;
            let key = self.store.as_ref().map(|_| cache_key(group, degree, m));
            if let (Some(store), Some(key)) = (&self.store, &key) {
                if let Some(q) = store.load(key) {
                    if q.modulus() == m && q.ambient_dim() == chart.param_count() && q.validate().is_ok() {
                        log::debug!("cache hit for {key}");
                        return Ok(CohomologyGroup::from_parts(chart, q));
                    }
                    log::warn!("discarding corrupt cache entry {key}");
                }
            }
            let h = CohomologyGroup::compute(chart, m)?;
            if let (Some(store), Some(key)) = (&self.store, &key) {
                store.save(key, h.quotient());
            }
            Ok(h)
        })
    }

    /// `H^n(G, Q/Z)` realized as a quotient of `H^n(G, Z/m0)`.
    pub fn stable(&self, group: &Arc<FiniteGroup>, degree: usize, m0: u64) -> Result<Arc<StableCohomology>> {
        self.stable.get((group.digest(), degree, m0), || {
            let base = self.cohomology(group, degree, m0)?;
            StableCohomology::compute(base, |m| self.cohomology(group, degree, m))
        })
    }

    /// `H^n(G, Q/Z)` with the default base modulus `|G|`.
    pub fn stable_default(&self, group: &Arc<FiniteGroup>, degree: usize) -> Result<Arc<StableCohomology>> {
        self.stable(group, degree, group.order() as u64)
    }

    /// Number of memoized cohomology groups, for diagnostics.
    pub fn cached_groups(&self) -> usize {
        self.groups.len()
    }
}
