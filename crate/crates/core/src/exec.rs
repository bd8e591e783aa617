//! Task dispatch: rayon when the `parallel` feature is on, plain iteration
//! otherwise. `threads == 0` means the rayon default; `threads == 1` always
//! runs in-process sequentially so results can be compared across modes.

#[cfg(feature = "parallel")]
pub(crate) fn run_tasks<T, F>(threads: usize, tasks: Vec<T>, f: F)
where
    T: Send,
    F: Fn(T) + Sync + Send,
{
    if threads == 1 {
        tasks.into_iter().for_each(f);
        return;
    }
    use rayon::prelude::*;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if threads > 0 {
        builder = builder.num_threads(threads);
    }
    match builder.build() {
        Ok(pool) => pool.install(|| tasks.into_par_iter().for_each(&f)),
        Err(_) => tasks.into_iter().for_each(f),
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn run_tasks<T, F>(_threads: usize, tasks: Vec<T>, f: F)
where
    T: Send,
    F: Fn(T) + Sync + Send,
{
    tasks.into_iter().for_each(f);
}
