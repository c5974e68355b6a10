use std::num::NonZeroUsize;
use std::thread;

use crate::error::Result;

pub fn default_workers() -> usize {
    thread::available_parallelism().map_or(1, NonZeroUsize::get)
}

/// Splits `items` into `workers` contiguous chunks and maps each on its own
/// scoped thread. Results come back in chunk order, so any error returned is
/// the one from the lowest-index failing chunk.
pub(crate) fn map_chunks<T, R, F>(items: &[T], workers: usize, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &[T]) -> Result<R> + Sync,
{
    let workers = workers.clamp(1, items.len().max(1));
    let chunk = items.len().div_ceil(workers).max(1);
    if workers == 1 {
        return Ok(vec![f(0, items)?]);
    }
    let f = &f;
    thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .enumerate()
            .map(|(i, part)| scope.spawn(move || f(i * chunk, part)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scan worker panicked"))
            .collect()
    })
}
