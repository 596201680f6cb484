//! Order-preserving maps over slices and grids. With the `parallel` feature
//! (default) they run on the rayon thread pool; the `_sequential` variants are
//! always single-threaded. Outputs are identical either way.

/// Maps `f` over `items`, preserving order.
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_slice_sequential(items, f)
    }
}

/// Single-threaded [`map_slice`].
pub fn map_slice_sequential<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Evaluates a fallible `f` at every grid point, returning the first error
/// in grid order.
pub fn map_grid<F, U>(grid: &[f64], f: F) -> crate::Result<Vec<U>>
where
    U: Send,
    F: Fn(f64) -> crate::Result<U> + Sync + Send,
{
    map_slice(grid, |&r| f(r)).into_iter().collect()
}

/// Single-threaded [`map_grid`].
pub fn map_grid_sequential<F, U>(grid: &[f64], f: F) -> crate::Result<Vec<U>>
where
    F: Fn(f64) -> crate::Result<U>,
{
    grid.iter().map(|&r| f(r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_bitwise() {
        let grid: Vec<f64> = (1..500).map(|i| i as f64 * 0.013).collect();
        let f = |r: f64| Ok::<f64, crate::Error>(r.sin() / r);
        let a = map_grid(&grid, f).unwrap();
        let b = map_grid_sequential(&grid, f).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn first_error_wins() {
        let grid = [1.0, -1.0, -2.0];
        let e = map_grid(&grid, |r| if r < 0.0 { crate::error::domain(format!("{r}")) } else { Ok(r) }).unwrap_err();
        assert!(e.to_string().contains("-1"));
    }
}
