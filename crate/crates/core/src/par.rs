//! Data-parallel helpers. With the `parallel` feature work is spread over a
//! rayon pool whose size is capped by `NCX_THREADS`; without it every helper
//! runs sequentially. Results never depend on the schedule.

/// Number of worker threads in use.
pub fn threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        pool().current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

#[cfg(feature = "parallel")]
fn pool() -> &'static rayon::ThreadPool {
    use std::sync::OnceLock;
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = std::env::var("NCX_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
            b = b.num_threads(n.max(1));
        }
        b.build().expect("thread pool")
    })
}

/// `(0..count).map(f)` in order.
pub fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        pool().install(|| (0..count).into_par_iter().map(&f).collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}

/// `items.iter().map(f)` in order.
pub fn map_slice<I, T, F>(items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    map_indexed(items.len(), |k| f(&items[k]))
}

/// Sequential reference version of [`map_indexed`], used by benchmarks.
pub fn map_indexed_sequential<T, F: Fn(usize) -> T>(count: usize, f: F) -> Vec<T> {
    (0..count).map(f).collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn order_is_preserved() {
        let v = super::map_indexed(100, |k| k * k);
        assert_eq!(v, (0..100).map(|k| k * k).collect::<Vec<_>>());
        assert!(super::threads() >= 1);
    }
}
