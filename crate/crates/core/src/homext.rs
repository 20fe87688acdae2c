//! Hom and Ext dimensions between indecomposable bundles via the Euler form.
//!
//! The bundle category is directed, so for indecomposables `X`, `Y` at most
//! one of `Hom(X, Y)` and `Ext^1(X, Y)` is nonzero and the Euler form
//! `<[X], [Y]>` determines both.

use crate::arq::BundlePoint;
use crate::wpl::Wpl;

impl Wpl {
    /// `<[x], [y]> = dim Hom(x, y) - dim Ext^1(x, y)`.
    pub fn euler_points(&self, x: BundlePoint, y: BundlePoint) -> i64 {
        self.euler(&self.class_of(x), &self.class_of(y))
    }

    pub fn hom_dim(&self, x: BundlePoint, y: BundlePoint) -> u64 {
        self.euler_points(x, y).max(0) as u64
    }

    pub fn ext_dim(&self, x: BundlePoint, y: BundlePoint) -> u64 {
        (-self.euler_points(x, y)).max(0) as u64
    }

    /// `Ext^1(x, y) + Ext^1(y, x) = 0`, including `x == y`.
    pub fn ext_free_pair(&self, x: BundlePoint, y: BundlePoint) -> bool {
        self.ext_dim(x, y) == 0 && self.ext_dim(y, x) == 0
    }

    /// No extensions between any two members (or a member and itself).
    pub fn extension_free(&self, points: &[BundlePoint]) -> bool {
        points
            .iter()
            .enumerate()
            .all(|(i, &x)| points[i..].iter().all(|&y| self.ext_free_pair(x, y)))
    }

    /// `dim Hom(T, x)` for `T` the direct sum of `points`.
    pub fn hom_sum(&self, points: &[BundlePoint], x: BundlePoint) -> u64 {
        points.iter().map(|&t| self.hom_dim(t, x)).sum()
    }

    /// `dim Ext^1(T, x)` for `T` the direct sum of `points`.
    pub fn ext_sum(&self, points: &[BundlePoint], x: BundlePoint) -> u64 {
        points.iter().map(|&t| self.ext_dim(t, x)).sum()
    }
}
