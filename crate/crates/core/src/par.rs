//! Data-parallel sweep helpers.
//!
//! With the `parallel` feature (default) these run on the rayon pool;
//! without it they are plain sequential loops. Results are always returned
//! in index order, so reports and witnesses do not depend on scheduling.

use crate::error::Result;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `f(0), f(1), ..., f(n-1)` in index order.
#[cfg(feature = "parallel")]
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Like [`map_range`] but fallible; the reported error is the one with the
/// smallest index.
pub fn try_map_range<R, F>(n: usize, f: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(usize) -> Result<R> + Sync + Send,
{
    map_range(n, f).into_iter().collect()
}

/// Smallest `i < n` for which `pred(i)` yields `Some`, together with its payload.
#[cfg(feature = "parallel")]
pub fn find_first<R, F>(n: usize, pred: F) -> Option<(usize, R)>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    (0..n)
        .into_par_iter()
        .filter_map(|i| pred(i).map(|r| (i, r)))
        .find_first(|_| true)
}

#[cfg(not(feature = "parallel"))]
pub fn find_first<R, F>(n: usize, pred: F) -> Option<(usize, R)>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    (0..n).find_map(|i| pred(i).map(|r| (i, r)))
}

/// Fallible [`find_first`]: errors take precedence in index order as well.
pub fn try_find_first<R, F>(n: usize, pred: F) -> Result<Option<(usize, R)>>
where
    R: Send,
    F: Fn(usize) -> Result<Option<R>> + Sync + Send,
{
    match find_first(n, |i| match pred(i) {
        Ok(None) => None,
        Ok(Some(r)) => Some(Ok(r)),
        Err(e) => Some(Err(e)),
    }) {
        None => Ok(None),
        Some((i, Ok(r))) => Ok(Some((i, r))),
        Some((_, Err(e))) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn map_preserves_order() {
        let v = map_range(100, |i| i * i);
        assert_eq!(v[7], 49);
        assert_eq!(v.len(), 100);
    }

    #[test]
    fn find_first_is_minimal() {
        let hit = find_first(1000, |i| (i % 97 == 5 && i > 10).then_some(i));
        assert_eq!(hit, Some((102, 102)));
        assert_eq!(find_first(10, |_| None::<()>), None);
    }

    #[test]
    fn first_error_wins() {
        let r = try_map_range(50, |i| {
            if i >= 20 {
                Err(Error::Parse(format!("{i}")))
            } else {
                Ok(i)
            }
        });
        assert_eq!(r, Err(Error::Parse("20".into())));
    }
}
