//! Data-parallel helpers. With the `parallel` feature the work is spread over
//! rayon's pool unless the calling thread has opted into sequential mode;
//! without it everything runs in order on the caller.

use std::cell::Cell;

thread_local! {
    static SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// Run `f` with every helper in this module forced onto the calling thread.
pub fn sequential<R>(f: impl FnOnce() -> R) -> R {
    let prev = SEQUENTIAL.with(|s| s.replace(true));
    let out = f();
    SEQUENTIAL.with(|s| s.set(prev));
    out
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !SEQUENTIAL.with(|s| s.get())
}

#[cfg(feature = "parallel")]
mod imp {
    use rayon::prelude::*;

    pub fn map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
        if super::is_parallel() && items.len() > 1 {
            items.par_iter().map(f).collect()
        } else {
            items.iter().map(f).collect()
        }
    }

    pub fn map_range<U: Send>(n: usize, f: impl Fn(usize) -> U + Sync + Send) -> Vec<U> {
        if super::is_parallel() && n > 1 {
            (0..n).into_par_iter().map(f).collect()
        } else {
            (0..n).map(f).collect()
        }
    }

    pub fn any<T: Sync>(items: &[T], f: impl Fn(&T) -> bool + Sync + Send) -> bool {
        if super::is_parallel() && items.len() > 1 {
            items.par_iter().any(f)
        } else {
            items.iter().any(f)
        }
    }
}

#[cfg(not(feature = "parallel"))]
mod imp {
    pub fn map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
        items.iter().map(f).collect()
    }

    pub fn map_range<U: Send>(n: usize, f: impl Fn(usize) -> U + Sync + Send) -> Vec<U> {
        (0..n).map(f).collect()
    }

    pub fn any<T: Sync>(items: &[T], f: impl Fn(&T) -> bool + Sync + Send) -> bool {
        items.iter().any(f)
    }
}

pub use imp::{any, map, map_range};

/// Order-preserving fallible map.
pub fn try_map<T: Sync, U: Send, E: Send>(
    items: &[T],
    f: impl Fn(&T) -> Result<U, E> + Sync + Send,
) -> Result<Vec<U>, E> {
    map(items, f).into_iter().collect()
}

pub fn all<T: Sync>(items: &[T], f: impl Fn(&T) -> bool + Sync + Send) -> bool {
    !any(items, |x| !f(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let v: Vec<u64> = (0..100).collect();
        let a = map(&v, |x| x * x);
        let b = sequential(|| map(&v, |x| x * x));
        assert_eq!(a, b);
        assert!(sequential(|| !is_parallel()));
        assert!(all(&v, |x| *x < 100));
        assert!(!any(&v, |x| *x > 100));
    }
}
