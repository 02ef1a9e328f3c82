//! Process-wide memo tables for pure functions.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

/// A lazily created, thread-safe memo table.
///
/// Values are computed outside the lock so recursive lookups cannot deadlock;
/// when two threads race on one key, the first stored value wins and both
/// callers observe it.
pub struct Memo<K, V> {
    table: OnceLock<Mutex<HashMap<K, Arc<V>>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub const fn new() -> Self {
        Self { table: OnceLock::new() }
    }

    fn table(&self) -> &Mutex<HashMap<K, Arc<V>>> {
        self.table.get_or_init(|| Mutex::new(HashMap::new()))
    }

    pub fn get_or_compute(&self, key: &K, compute: impl FnOnce() -> V) -> Arc<V> {
        if let Some(v) = self.table().lock().expect("memo poisoned").get(key) {
            return Arc::clone(v);
        }
        let value = Arc::new(compute());
        let mut guard = self.table().lock().expect("memo poisoned");
        Arc::clone(guard.entry(key.clone()).or_insert(value))
    }
}

impl<K: Eq + Hash + Clone, V> Default for Memo<K, V> {
    fn default() -> Self {
        Self::new()
    }
}
