use std::sync::RwLock;

/// Entries are added in doubling steps up to this many; draws beyond the
/// table fall back to a bracketing search on the survival function.
pub(crate) const TABLE_LIMIT: usize = 1 << 16;
const INITIAL_LEN: usize = 64;

/// Lazily grown table of `cdf(1), cdf(2), ...` shared by clones of a model.
#[derive(Debug, Default)]
pub(crate) struct CdfTable {
    entries: RwLock<Vec<f64>>,
}

pub(crate) enum Lookup {
    Found(u64),
    /// `u` exceeds every tabulated value; the table holds `cdf(1..=len)`.
    Beyond(u64),
}

impl CdfTable {
    /// Smallest tabulated `x` with `cdf(x) >= u`, extending the table as needed.
    pub(crate) fn lookup(&self, u: f64, cdf: impl Fn(u64) -> f64) -> Lookup {
        {
            let table = self.entries.read().unwrap_or_else(|e| e.into_inner());
            if let Some(found) = search(&table, u) {
                return Lookup::Found(found);
            }
            if table.len() >= TABLE_LIMIT {
                return Lookup::Beyond(table.len() as u64);
            }
        }
        let mut table = self.entries.write().unwrap_or_else(|e| e.into_inner());
        loop {
            // Another writer may have extended the table in the meantime.
            if let Some(found) = search(&table, u) {
                return Lookup::Found(found);
            }
            if table.len() >= TABLE_LIMIT {
                return Lookup::Beyond(table.len() as u64);
            }
            let start = table.len();
            let end = (start * 2).clamp(INITIAL_LEN, TABLE_LIMIT);
            table.extend((start + 1..=end).map(|x| cdf(x as u64)));
        }
    }
}

fn search(table: &[f64], u: f64) -> Option<u64> {
    match table.last() {
        Some(&last) if last >= u => Some(table.partition_point(|&c| c < u) as u64 + 1),
        _ => None,
    }
}
