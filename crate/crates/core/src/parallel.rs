//! Data-parallel map over index ranges, with a sequential fallback.
//!
//! With the `parallel` feature disabled every [`Parallelism`] setting runs
//! sequentially. Results always come back in index order.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Parallelism {
    Sequential,
    /// Rayon's global pool, or a dedicated pool with this many workers.
    #[default]
    Parallel,
    Workers(usize),
}

impl Parallelism {
    pub fn from_workers(workers: Option<usize>) -> Parallelism {
        match workers {
            None => Parallelism::Parallel,
            Some(0 | 1) => Parallelism::Sequential,
            Some(n) => Parallelism::Workers(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("could not start worker pool: {0}")]
pub struct PoolError(pub String);

/// Maps `f` over `0..count` and collects the results in order, stopping at
/// an error.
pub fn try_map_range<T, E, F>(par: Parallelism, count: u64, f: F) -> Result<Result<Vec<T>, E>, PoolError>
where
    T: Send,
    E: Send,
    F: Fn(u64) -> Result<T, E> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        match par {
            Parallelism::Sequential => Ok((0..count).map(f).collect()),
            Parallelism::Parallel => Ok((0..count).into_par_iter().map(f).collect()),
            Parallelism::Workers(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| PoolError(e.to_string()))?;
                Ok(pool.install(|| (0..count).into_par_iter().map(f).collect()))
            }
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = par;
        Ok((0..count).map(f).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        for par in [Parallelism::Sequential, Parallelism::Parallel, Parallelism::Workers(3)] {
            let out: Vec<u64> = try_map_range(par, 1000, |i| Ok::<_, ()>(i * i)).unwrap().unwrap();
            assert_eq!(out, (0..1000).map(|i| i * i).collect::<Vec<_>>());
        }
    }

    #[test]
    fn errors_propagate() {
        let out = try_map_range(Parallelism::Sequential, 10, |i| if i == 4 { Err(i) } else { Ok(i) });
        assert_eq!(out.unwrap(), Err(4));
    }
}
