//! Graded pieces of `S = k[x1,x2,x3]/(x3^n - x2^2 + x1^2)`.
//!
//! Using the rewrite `x2^2 -> x1^2 + x3^n`, every graded piece `S_x` has the
//! monomials `x1^a * x2^b * x3^e` with `b in {0,1}` as a basis. For `x` in
//! normal form with `l >= 0` that gives `dim S_x = l + 1`; [`dim_s`] uses this
//! closed form and [`SDimTable::validate_box`] checks it against the monomial
//! count before anything downstream relies on it.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::lgroup::{LElement, Weight};

/// `dim_k S_x`.
pub fn dim_s(x: LElement) -> u64 {
    let (_, _, _, l) = x.components();
    if l >= 0 {
        l as u64 + 1
    } else {
        0
    }
}

/// Smallest exponent cap that [`dim_s_oracle`] accepts for `x`.
pub fn oracle_cap(x: LElement) -> u32 {
    let (_, _, _, l) = x.components();
    let n = u64::from(x.weight().n());
    let cap = 2 * (l.unsigned_abs() + 1) * n;
    cap.try_into().unwrap_or(u32::MAX)
}

/// Counts normal monomials `x1^a x2^b x3^e` (`b in {0,1}`, `a, e <= cap`) of degree `x`.
pub fn dim_s_oracle(x: LElement, exponent_cap: u32) -> Result<u64> {
    let needed = oracle_cap(x);
    if exponent_cap < needed {
        return Err(Error::CapTooSmall {
            cap: exponent_cap,
            needed,
        });
    }
    let w = x.weight();
    let cap = i64::from(exponent_cap);
    let mut count = 0;
    for a in 0..=cap {
        for b in 0..=1 {
            for e in 0..=cap {
                if LElement::normalize(w, a, b, e, 0) == x {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// `dim Hom(O(x), O(y)) = dim S_{y-x}`.
pub fn hom_dim_line(x: LElement, y: LElement) -> u64 {
    dim_s(y - x)
}

/// `dim Ext^1(O(x), O(y)) = dim S_{omega + x - y}` by Serre duality.
pub fn ext1_dim_line(x: LElement, y: LElement) -> u64 {
    dim_s(LElement::omega(x.weight()) + x - y)
}

/// Dimension table for one weight, with memoized oracle counts.
#[derive(Debug)]
pub struct SDimTable {
    weight: Weight,
    memo: RwLock<HashMap<LElement, u64>>,
}

impl SDimTable {
    pub fn new(weight: Weight) -> Self {
        SDimTable {
            weight,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn dim(&self, x: LElement) -> u64 {
        assert_eq!(x.weight(), self.weight, "degree of a different weight");
        dim_s(x)
    }

    /// Oracle count with the minimal admissible cap, memoized.
    pub fn oracle(&self, x: LElement) -> Result<u64> {
        if x.weight() != self.weight {
            return Err(Error::MixedWeights {
                left: self.weight.n(),
                right: x.weight().n(),
            });
        }
        if let Some(&v) = self.memo.read().expect("memo lock").get(&x) {
            return Ok(v);
        }
        let v = dim_s_oracle(x, oracle_cap(x))?;
        self.memo.write().expect("memo lock").insert(x, v);
        Ok(v)
    }

    /// Compares the closed form with the oracle on every normal form reached
    /// from raw tuples with all coefficients in `[-radius, radius]`.
    pub fn validate_box(&self, radius: i64) -> Result<usize> {
        let mut checked = 0;
        for x in raw_box(self.weight, radius) {
            let oracle = self.oracle(x)?;
            let closed = dim_s(x);
            if oracle != closed {
                return Err(Error::ClosedFormMismatch {
                    x: x.to_string(),
                    closed,
                    oracle,
                });
            }
            checked += 1;
        }
        Ok(checked)
    }
}

/// Normal forms of all raw tuples `(a1,a2,a3,a)` with `|a_i| <= radius`, with repetition.
pub fn raw_box(weight: Weight, radius: i64) -> impl Iterator<Item = LElement> {
    let r = radius;
    (-r..=r).flat_map(move |a1| {
        (-r..=r).flat_map(move |a2| {
            (-r..=r).flat_map(move |a3| (-r..=r).map(move |a| LElement::normalize(weight, a1, a2, a3, a)))
        })
    })
}
