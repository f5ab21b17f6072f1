use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

/// Applies `f` to every item on at most `workers` scoped threads. Results come
/// back in input order; on failure the error of the lowest failing index wins,
/// so the outcome does not depend on scheduling.
pub fn par_map<T, R, E, F>(items: &[T], workers: usize, f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync,
{
    let workers = workers.max(1).min(items.len());
    if workers <= 1 {
        return items.iter().map(&f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<R, E>>>> =
        Mutex::new((0..items.len()).map(|_| None).collect());
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                let failed = r.is_err();
                slots.lock().unwrap_or_else(|e| e.into_inner())[i] = Some(r);
                if failed {
                    // Later items are no longer needed; earlier ones still run so
                    // the lowest failing index is reported.
                    next.fetch_max(items.len(), Ordering::Relaxed);
                    break;
                }
            });
        }
    });
    let slots = slots.into_inner().unwrap_or_else(|e| e.into_inner());
    let mut out = Vec::with_capacity(slots.len());
    for slot in slots {
        match slot {
            Some(Ok(r)) => out.push(r),
            Some(Err(e)) => return Err(e),
            None => unreachable!("unfilled slot before the first error"),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order() {
        let items: Vec<u32> = (0..100).collect();
        let out: Result<Vec<u32>, ()> = par_map(&items, 7, |x| Ok(x * 2));
        assert_eq!(
            out.unwrap(),
            items.iter().map(|x| x * 2).collect::<Vec<_>>()
        );
    }

    #[test]
    fn reports_first_error() {
        let items: Vec<u32> = (0..50).collect();
        for workers in [1, 4] {
            let out: Result<Vec<u32>, u32> =
                par_map(
                    &items,
                    workers,
                    |&x| if x % 10 == 3 { Err(x) } else { Ok(x) },
                );
            assert_eq!(out.unwrap_err(), 3);
        }
    }

    #[test]
    fn empty_input() {
        let out: Result<Vec<u32>, ()> = par_map(&[] as &[u32], 4, |&x| Ok(x));
        assert!(out.unwrap().is_empty());
    }
}
