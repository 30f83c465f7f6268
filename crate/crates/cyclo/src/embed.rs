use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use ball::{roots_of_unity, CBall};

/// `e^{2 pi i j/n}` for `0 <= j < n` at `prec` bits, cached per `(n, prec)`.
pub fn roots(n: u64, prec: u32) -> Arc<Vec<CBall>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<Vec<CBall>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().unwrap().get(&(n, prec)) {
        return r.clone();
    }
    let r = Arc::new(roots_of_unity(n, prec));
    cache.lock().unwrap().entry((n, prec)).or_insert(r).clone()
}
