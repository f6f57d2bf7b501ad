//! Odometer enumeration of integer points.

use std::ops::ControlFlow;

use crate::error::{check_budget, saturating_pow, Result};
use crate::num::Int;

/// Number of points in `[lo, hi]^dims`.
pub(crate) fn grid_size<T: Int>(lo: T, hi: T, dims: usize) -> u128 {
    let width = if hi < lo {
        0
    } else {
        (hi.as_i128() - lo.as_i128() + 1) as u128
    };
    saturating_pow(width, dims)
}

/// Visits every point of `[lo, hi]^dims` in lexicographic order until `visit` breaks.
///
/// Fails with `BudgetExceeded` before visiting anything if the grid is larger than `budget`.
pub(crate) fn for_each_point<T: Int, B>(
    dims: usize,
    lo: T,
    hi: T,
    budget: u128,
    mut visit: impl FnMut(&[T]) -> ControlFlow<B>,
) -> Result<Option<B>> {
    check_budget(grid_size(lo, hi, dims), budget)?;
    if hi < lo && dims > 0 {
        return Ok(None);
    }
    let mut point = vec![lo; dims];
    loop {
        if let ControlFlow::Break(b) = visit(&point) {
            return Ok(Some(b));
        }
        let mut i = dims;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if point[i] < hi {
                point[i] = point[i] + T::one();
                break;
            }
            point[i] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn visits_in_lexicographic_order() {
        let mut seen = Vec::new();
        for_each_point::<i64, ()>(2, 0, 1, 100, |p| {
            seen.push(p.to_vec());
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn zero_dimensions_has_one_point() {
        let mut n = 0;
        for_each_point::<i64, ()>(0, 0, 5, 1, |_| {
            n += 1;
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(n, 1);
    }

    #[test]
    fn budget_checked_up_front() {
        let r = for_each_point::<i64, ()>(3, 0, 9, 999, |_| ControlFlow::Continue(()));
        assert_eq!(
            r,
            Err(Error::BudgetExceeded {
                required: 1000,
                budget: 999
            })
        );
    }
}
