//! Data-parallel scan primitives with a sequential fallback.
//!
//! Every scan returns the hit with the smallest index regardless of how the
//! work is partitioned, so results are identical with and without the
//! `parallel` feature.

/// First `Some` over `lo..hi` in index order, scanned in chunks.
pub fn first_hit<T, F>(lo: i64, hi: i64, chunk: i64, f: F) -> Option<T>
where
    T: Send,
    F: Fn(i64) -> Option<T> + Sync,
{
    #[cfg(feature = "parallel")]
    {
        first_hit_par(lo, hi, chunk, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = chunk;
        first_hit_seq(lo, hi, f)
    }
}

/// Sequential variant, always available (benchmark baseline).
pub fn first_hit_seq<T, F>(lo: i64, hi: i64, f: F) -> Option<T>
where
    F: Fn(i64) -> Option<T>,
{
    (lo..hi).find_map(f)
}

#[cfg(feature = "parallel")]
pub fn first_hit_par<T, F>(lo: i64, hi: i64, chunk: i64, f: F) -> Option<T>
where
    T: Send,
    F: Fn(i64) -> Option<T> + Sync,
{
    use rayon::prelude::*;
    if hi <= lo {
        return None;
    }
    let chunk = chunk.max(1);
    let chunks = (hi - lo + chunk - 1) / chunk;
    (0..chunks).into_par_iter().find_map_first(|ci| {
        let start = lo + ci * chunk;
        let end = (start + chunk).min(hi);
        (start..end).find_map(&f)
    })
}

/// Minimum of `f` over `lo..hi` under a total order; `None` entries skipped.
pub fn min_hit<T, F>(lo: i64, hi: i64, chunk: i64, f: F) -> Option<T>
where
    T: Send + Ord,
    F: Fn(i64) -> Option<T> + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let chunk = chunk.max(1);
        if hi <= lo {
            return None;
        }
        let chunks = (hi - lo + chunk - 1) / chunk;
        (0..chunks)
            .into_par_iter()
            .filter_map(|ci| {
                let start = lo + ci * chunk;
                let end = (start + chunk).min(hi);
                (start..end).filter_map(&f).min()
            })
            .min()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = chunk;
        (lo..hi).filter_map(f).min()
    }
}

/// Sequential `min_hit`, always available (benchmark baseline).
pub fn min_hit_seq<T, F>(lo: i64, hi: i64, f: F) -> Option<T>
where
    T: Ord,
    F: Fn(i64) -> Option<T>,
{
    (lo..hi).filter_map(f).min()
}

/// Map `f` over `lo..hi` collecting results in index order.
pub fn map_range<T, F>(lo: i64, hi: i64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(i64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (lo..hi).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (lo..hi).map(f).collect()
    }
}

/// Sequential `map_range`, always available (benchmark baseline).
pub fn map_range_seq<T, F>(lo: i64, hi: i64, f: F) -> Vec<T>
where
    F: Fn(i64) -> T,
{
    (lo..hi).map(f).collect()
}
