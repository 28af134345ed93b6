use crate::Real;

/// Probabilists' Hermite polynomial Heₙ(x) by the three-term recurrence.
pub fn hermite_poly<T: Real>(n: usize, x: T) -> T {
    hermite_poly_pair(n, x).0
}

/// (Heₙ(x), Heₙ₋₁(x)), with He₋₁ taken as 0.
pub fn hermite_poly_pair<T: Real>(n: usize, x: T) -> (T, T) {
    let mut prev = T::zero();
    let mut cur = T::one();
    for j in 0..n {
        let next = x * cur - T::from_usize_exact(j) * prev;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}
