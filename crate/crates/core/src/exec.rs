//! Data-parallel map/reduce over chunk indices.
//!
//! With the `parallel` feature the work is spread over the rayon pool;
//! without it, or with [`Execution::Sequential`], chunks run in order on the
//! calling thread. The reduction must be associative; it need not be
//! commutative, because chunks are always combined in index order.

use std::ops::Range;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn map_reduce<T, ID, M, R>(self, chunks: Range<u64>, identity: ID, map: M, reduce: R) -> T
    where
        T: Send,
        ID: Fn() -> T + Sync + Send,
        M: Fn(u64) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                chunks.into_par_iter().map(map).reduce(identity, reduce)
            }
            _ => chunks.map(map).fold(identity(), reduce),
        }
    }

    /// Maps every index and collects results in index order.
    pub fn map_collect<T, M>(self, range: Range<u64>, map: M) -> Vec<T>
    where
        T: Send,
        M: Fn(u64) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                range.into_par_iter().map(map).collect()
            }
            _ => range.map(map).collect(),
        }
    }
}

/// Runs `f` on a dedicated pool of `threads` workers (0 = rayon default).
#[cfg(feature = "parallel")]
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_threads<T: Send>(_threads: usize, f: impl FnOnce() -> T + Send) -> T {
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_preserving_reduce() {
        let concat = |a: Vec<u64>, b: Vec<u64>| a.into_iter().chain(b).collect::<Vec<_>>();
        for exec in [Execution::Sequential, Execution::Parallel] {
            let v = exec.map_reduce(0..100, Vec::new, |i| vec![i], concat);
            assert_eq!(v, (0..100).collect::<Vec<_>>());
        }
        assert_eq!(Execution::Parallel.map_collect(0..10, |i| i * i)[9], 81);
    }
}
