//! Eigenvalues of real symmetric tridiagonal matrices by Sturm-sequence
//! bisection.
//!
//! The j-th eigenvalue is bracketed by counting negative pivots of the
//! LDLᵀ factorization of T − λI, so the k lowest eigenvalues come out in
//! order and none can be skipped.

use crate::scalar::{lit, Scalar};

/// Symmetric tridiagonal matrix: `diag` has n entries, `off` has n − 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal<T> {
    pub diag: Vec<T>,
    pub off: Vec<T>,
}

impl<T: Scalar> SymTridiagonal<T> {
    pub fn new(diag: Vec<T>, off: Vec<T>) -> Self {
        assert_eq!(
            off.len() + 1,
            diag.len().max(1),
            "off-diagonal must have n − 1 entries"
        );
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `lambda`.
    pub fn count_below(&self, lambda: T) -> usize {
        let tiny = T::min_positive_value().sqrt();
        let mut count = 0;
        let mut q = T::one();
        for (i, &d) in self.diag.iter().enumerate() {
            let coupling = if i == 0 {
                T::zero()
            } else {
                let e = self.off[i - 1];
                e * e / q
            };
            q = d - lambda - coupling;
            if q == T::zero() {
                // nudge an exact zero pivot; counts it as positive
                q = tiny;
            }
            if q < T::zero() {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (T, T) {
        let n = self.len();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let left = if i > 0 {
                self.off[i - 1].abs()
            } else {
                T::zero()
            };
            let right = if i + 1 < n {
                self.off[i].abs()
            } else {
                T::zero()
            };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Absolute accuracy of eigenvalues returned by bisection: a few units of
    /// rounding in the spectral norm.
    pub fn resolution(&self) -> T {
        let (lo, hi) = self.gershgorin();
        lit::<T>(16.0) * T::epsilon() * lo.abs().max(hi.abs()).max(T::one())
    }

    /// The `k` smallest eigenvalues in ascending order.
    pub fn lowest_eigenvalues(&self, k: usize) -> Vec<T> {
        let k = k.min(self.len());
        if k == 0 {
            return Vec::new();
        }
        let (glo, ghi) = self.gershgorin();
        let norm = glo.abs().max(ghi.abs()).max(T::one());
        let pad = norm * lit(1e-12);
        let (glo, ghi) = (glo - pad, ghi + pad);
        let eps = T::epsilon();

        let mut out = Vec::with_capacity(k);
        let mut floor = glo;
        for j in 0..k {
            // Earlier eigenvalues are lower bounds for this one.
            let mut lo = floor;
            let mut hi = ghi;
            for _ in 0..256 {
                let mid = (lo + hi) / lit(2.0);
                if mid <= lo || mid >= hi {
                    break;
                }
                if self.count_below(mid) > j {
                    hi = mid;
                } else {
                    lo = mid;
                }
                let width = hi - lo;
                if width <= lit::<T>(2.0) * eps * (lo.abs().max(hi.abs())) + eps * norm {
                    break;
                }
            }
            let value = (lo + hi) / lit(2.0);
            out.push(value);
            floor = lo;
        }
        out
    }
}
