use std::thread;

use crate::error::CliError;

/// Reads `RBF_THREADS`; unset or 0 means sequential.
pub fn thread_budget() -> Result<usize, CliError> {
    match std::env::var("RBF_THREADS") {
        Err(_) => Ok(0),
        Ok(s) if s.trim().is_empty() => Ok(0),
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("RBF_THREADS must be a non-negative integer, got `{s}`"))),
    }
}

/// Maps `f` over `items` on at most `threads` workers. Results come back in
/// input order whatever the scheduling.
pub fn ordered_map<T, R, F>(items: &[T], threads: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    if threads <= 1 || items.len() < 2 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    let f = &f;
    thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| s.spawn(move || c.iter().map(f).collect::<Vec<R>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let items: Vec<u64> = (0..1000).collect();
        let seq = ordered_map(&items, 0, |x| x * x);
        for t in [2, 3, 7, 64, 5000] {
            assert_eq!(ordered_map(&items, t, |x| x * x), seq);
        }
    }
}
