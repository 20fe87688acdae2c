//! Grothendieck group coordinates and the Euler form.
//!
//! K0 has the Z-basis `[O(x)]` for `0 <= x <= c`, ordered as
//! `O, O(x1), O(x2), O(x3), O(2x3), ..., O((n-1)x3), O(c)`. Coordinates of a
//! line bundle are found by pairing it against this basis and solving with the
//! Gram matrix of the Euler form, which is unimodular.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{ext1_dim_line, hom_dim_line};
use crate::lgroup::{LElement, Weight};
use crate::linalg::{det_bareiss, inverse_integral};
use crate::wpl::Wpl;

/// The canonical basis `{x : 0 <= x <= c}` in K0 coordinate order.
pub fn basis(weight: Weight) -> Vec<LElement> {
    let n = i64::from(weight.n());
    let x3 = LElement::x3(weight);
    let mut out = vec![LElement::zero(weight), LElement::x1(weight), LElement::x2(weight)];
    out.extend((1..n).map(|k| k * x3));
    out.push(LElement::canonical(weight));
    out
}

/// Display names of the basis members, as used in the JSON header.
pub fn basis_names(weight: Weight) -> Vec<String> {
    let n = weight.n();
    let mut out = vec!["O".to_owned(), "O(x1)".to_owned(), "O(x2)".to_owned(), "O(x3)".to_owned()];
    out.extend((2..n).map(|k| format!("O({k}x3)")));
    out.push("O(c)".to_owned());
    out
}

/// `chi(O(x), O(y)) = dim Hom - dim Ext^1`.
pub fn euler_line(x: LElement, y: LElement) -> i64 {
    hom_dim_line(x, y) as i64 - ext1_dim_line(x, y) as i64
}

/// Gram matrix `E[a][b] = chi(basis_a, basis_b)` and its integral inverse.
#[derive(Clone, Debug)]
pub struct EulerMatrix {
    weight: Weight,
    entries: Vec<Vec<i64>>,
    inverse: Vec<Vec<i64>>,
    determinant: i128,
}

impl EulerMatrix {
    pub fn new(weight: Weight) -> Result<Self> {
        let b = basis(weight);
        let entries: Vec<Vec<i64>> = b
            .iter()
            .map(|&x| b.iter().map(|&y| euler_line(x, y)).collect())
            .collect();
        let determinant = det_bareiss(&entries);
        if determinant.abs() != 1 {
            return Err(Error::NotUnimodular(determinant));
        }
        let inverse = inverse_integral(&entries).ok_or(Error::NotUnimodular(determinant))?;
        Ok(EulerMatrix {
            weight,
            entries,
            inverse,
            determinant,
        })
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn determinant(&self) -> i128 {
        self.determinant
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    fn solve(&self, rhs: &[i64]) -> Vec<i64> {
        self.inverse
            .iter()
            .map(|row| row.iter().zip(rhs).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// A class in K0, as integer coordinates in the canonical basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct K0Class {
    weight: Weight,
    coords: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct K0ClassJson {
    n: u32,
    basis: Vec<String>,
    coords: Vec<i64>,
}

impl K0Class {
    pub fn zero(weight: Weight) -> Self {
        K0Class {
            weight,
            coords: vec![0; weight.rank_k0()],
        }
    }

    pub fn unit(weight: Weight, index: usize) -> Self {
        let mut z = Self::zero(weight);
        z.coords[index] = 1;
        z
    }

    pub fn from_coords(weight: Weight, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != weight.rank_k0() {
            return Err(Error::parse(
                0,
                format!("expected {} coordinates, found {}", weight.rank_k0(), coords.len()),
            ));
        }
        Ok(K0Class { weight, coords })
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&v| v == 0)
    }

    /// Rank; every basis line bundle has rank one.
    pub fn rank(&self) -> i64 {
        self.coords.iter().sum()
    }

    /// Degree; `deg O(x) = delta(x)`.
    pub fn degree(&self) -> i64 {
        basis(self.weight)
            .iter()
            .zip(&self.coords)
            .map(|(x, v)| x.delta() * v)
            .sum()
    }

    pub fn slope(&self) -> Result<Slope> {
        if self.is_zero() {
            return Err(Error::ZeroClassSlope);
        }
        let r = self.rank();
        Ok(if r == 0 {
            Slope::Infinite
        } else {
            Slope::Finite(Ratio::new(self.degree(), r))
        })
    }

    pub fn to_json(&self) -> String {
        let repr = K0ClassJson {
            n: self.weight.n(),
            basis: basis_names(self.weight),
            coords: self.coords.clone(),
        };
        serde_json::to_string(&repr).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: K0ClassJson = serde_json::from_str(s)?;
        let weight = Weight::new(i64::from(repr.n))?;
        if repr.basis != basis_names(weight) {
            return Err(Error::parse(0, "basis header does not match the canonical ordering"));
        }
        Self::from_coords(weight, repr.coords)
    }

    fn zip_with(&self, other: &K0Class, f: impl Fn(i64, i64) -> i64) -> K0Class {
        assert_eq!(self.weight, other.weight, "K0 classes of different weights");
        K0Class {
            weight: self.weight,
            coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl Add for &K0Class {
    type Output = K0Class;

    fn add(self, rhs: &K0Class) -> K0Class {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &K0Class {
    type Output = K0Class;

    fn sub(self, rhs: &K0Class) -> K0Class {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Add for K0Class {
    type Output = K0Class;

    fn add(self, rhs: K0Class) -> K0Class {
        &self + &rhs
    }
}

impl Sub for K0Class {
    type Output = K0Class;

    fn sub(self, rhs: K0Class) -> K0Class {
        &self - &rhs
    }
}

impl Neg for K0Class {
    type Output = K0Class;

    fn neg(mut self) -> K0Class {
        self.coords.iter_mut().for_each(|v| *v = -*v);
        self
    }
}

/// Slope `deg / rk`, exact; torsion classes have infinite slope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slope {
    Finite(Ratio<i64>),
    Infinite,
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Slope::Finite(a), Slope::Finite(b)) => a.cmp(b),
            (Slope::Finite(_), Slope::Infinite) => Ordering::Less,
            (Slope::Infinite, Slope::Finite(_)) => Ordering::Greater,
            (Slope::Infinite, Slope::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(r) => write!(f, "{r}"),
            Slope::Infinite => f.write_str("inf"),
        }
    }
}

impl Wpl {
    pub fn euler_line(&self, x: LElement, y: LElement) -> i64 {
        euler_line(x, y)
    }

    /// K0 coordinates of `O(x)`.
    pub fn class_of_line(&self, x: LElement) -> K0Class {
        assert_eq!(x.weight(), self.weight(), "element of a different weight");
        let rhs: Vec<i64> = basis(self.weight()).iter().map(|&b| euler_line(b, x)).collect();
        K0Class {
            weight: self.weight(),
            coords: self.euler_matrix().solve(&rhs),
        }
    }

    /// The Euler form `chi(a, b) = a^T E b`.
    pub fn euler(&self, a: &K0Class, b: &K0Class) -> i64 {
        let e = self.euler_matrix().entries();
        a.coords
            .iter()
            .enumerate()
            .filter(|(_, &va)| va != 0)
            .map(|(i, va)| va * e[i].iter().zip(&b.coords).map(|(x, y)| x * y).sum::<i64>())
            .sum()
    }

    /// Class of the simple sheaf `S_{3,k}` from `0 -> O((k-1)x3) -> O(k x3) -> S_{3,k} -> 0`.
    pub fn class_of_simple3(&self, k: i64) -> K0Class {
        let x3 = self.x3();
        &self.class_of_line(k * x3) - &self.class_of_line((k - 1) * x3)
    }
}
