use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use crate::error::Result;
use crate::specfun::{macdonald_ladder, KLadder, QuadratureSpec};

type Key = (u64, u64, u64, usize, u64, u64, usize);

fn key(nu0: Complex64, x: f64, count: usize, q: &QuadratureSpec) -> Key {
    (
        nu0.re.to_bits(),
        nu0.im.to_bits(),
        x.to_bits(),
        count,
        q.target_rel_err.to_bits(),
        q.max_abscissa.to_bits(),
        q.nodes,
    )
}

/// Memo of Macdonald ladders keyed by the exact bits of `(ν₀, x, length)`
/// and the quadrature settings, so a hit returns exactly what a fresh
/// evaluation would. Shared across threads; when full it is simply cleared.
#[derive(Debug)]
pub struct BesselCache {
    map: RwLock<HashMap<Key, Arc<KLadder>>>,
    capacity: usize,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl Default for BesselCache {
    fn default() -> Self {
        Self::with_capacity(1 << 16)
    }
}

impl BesselCache {
    pub fn with_capacity(capacity: usize) -> Self {
        Self {
            map: RwLock::new(HashMap::new()),
            capacity: capacity.max(1),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    pub fn ladder(&self, nu0: Complex64, x: f64, count: usize, q: &QuadratureSpec) -> Result<Arc<KLadder>> {
        let k = key(nu0, x, count, q);
        if let Some(v) = self.map.read().unwrap().get(&k) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(v.clone());
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let v = Arc::new(macdonald_ladder(nu0, x, count, q)?);
        let mut map = self.map.write().unwrap();
        if map.len() >= self.capacity {
            map.clear();
        }
        // Another thread may have inserted the same key; both values are identical.
        Ok(map.entry(k).or_insert(v).clone())
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.map.write().unwrap().clear();
    }
}
