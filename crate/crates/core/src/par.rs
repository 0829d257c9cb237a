//! Data-parallel helpers. With the `parallel` feature these run on rayon;
//! without it they are plain sequential loops with the same results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn for_each_mut<T, F>(items: &mut [T], f: F)
where
    T: Send,
    F: Fn(&mut T) + Sync + Send,
{
    items.par_iter_mut().for_each(f)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn for_each_mut<T, F>(items: &mut [T], f: F)
where
    F: Fn(&mut T),
{
    items.iter_mut().for_each(f)
}

/// Fold every item into an accumulator and merge accumulators. `merge` must
/// be associative and commutative for the result to be schedule-independent.
#[cfg(feature = "parallel")]
pub(crate) fn fold_reduce<T, A, I, F, M>(items: &[T], init: I, fold: F, merge: M) -> A
where
    T: Sync,
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, &T) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    items.par_iter().fold(&init, fold).reduce(&init, merge)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn fold_reduce<T, A, I, F, M>(items: &[T], init: I, fold: F, _merge: M) -> A
where
    I: Fn() -> A,
    F: Fn(A, &T) -> A,
    M: Fn(A, A) -> A,
{
    items.iter().fold(init(), fold)
}

/// Run `f` on a pool of `workers` threads (`None`: the global pool).
pub fn with_workers<R: Send>(workers: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        match workers {
            Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build() {
                Ok(pool) => pool.install(f),
                Err(_) => f(),
            },
            None => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        f()
    }
}
