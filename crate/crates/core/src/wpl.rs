use std::collections::HashMap;
use std::sync::RwLock;

use crate::arq::BundlePoint;
use crate::error::Result;
use crate::graded::SDimTable;
use crate::k0::{EulerMatrix, K0Class};
use crate::lgroup::{LElement, Weight};

/// Shared context for one weighted projective line of type (2,2,n).
///
/// Every computation that depends on `n` goes through a `Wpl`; values built
/// for one weight are rejected by a context for another.
#[derive(Debug)]
pub struct Wpl {
    weight: Weight,
    sdim: SDimTable,
    euler: EulerMatrix,
    classes: RwLock<HashMap<BundlePoint, K0Class>>,
}

impl Wpl {
    pub fn new(n: i64) -> Result<Self> {
        let weight = Weight::new(n)?;
        let sdim = SDimTable::new(weight);
        let euler = EulerMatrix::new(weight)?;
        Ok(Wpl {
            weight,
            sdim,
            euler,
            classes: RwLock::new(HashMap::new()),
        })
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn n(&self) -> u32 {
        self.weight.n()
    }

    pub fn sdim(&self) -> &SDimTable {
        &self.sdim
    }

    pub fn euler_matrix(&self) -> &EulerMatrix {
        &self.euler
    }

    pub fn zero(&self) -> LElement {
        LElement::zero(self.weight)
    }

    pub fn x1(&self) -> LElement {
        LElement::x1(self.weight)
    }

    pub fn x2(&self) -> LElement {
        LElement::x2(self.weight)
    }

    pub fn x3(&self) -> LElement {
        LElement::x3(self.weight)
    }

    pub fn c(&self) -> LElement {
        LElement::canonical(self.weight)
    }

    pub fn omega(&self) -> LElement {
        LElement::omega(self.weight)
    }

    /// The 2-torsion element `x1 - x2`.
    pub fn torsion(&self) -> LElement {
        self.x1() - self.x2()
    }

    pub(crate) fn cached_class(&self, p: BundlePoint, make: impl FnOnce() -> K0Class) -> K0Class {
        if let Some(c) = self.classes.read().expect("class cache").get(&p) {
            return c.clone();
        }
        let c = make();
        self.classes.write().expect("class cache").insert(p, c.clone());
        c
    }

    pub fn parse_element(&self, s: &str) -> Result<LElement> {
        LElement::parse(self.weight, s)
    }
}
