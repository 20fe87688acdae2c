//! The missing part `C` of a tilting bundle `T`: indecomposable bundles `X`
//! with `Hom(T, X) != 0 != Ext^1(T, X)`, and its split into `C1` and `C2`.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::arq::BundlePoint;
use crate::error::{Error, Result};
use crate::k0::K0Class;
use crate::meshcat::MeshWindow;
use crate::tilting::{ClassifiedForm, MinusTag, PlusTag, TiltingCandidate};
use crate::wpl::Wpl;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TorsionClass {
    X0,
    X1,
    Missing,
}

/// `C` together with the scan window it was computed on.
#[derive(Clone, Debug)]
pub struct MissingPart {
    pub tilting: TiltingCandidate,
    pub form: ClassifiedForm,
    pub all: Vec<BundlePoint>,
    /// `(C1, C2)` for Triple-form `T`.
    pub split: Option<(Vec<BundlePoint>, Vec<BundlePoint>)>,
    pub tau_min: i64,
    pub tau_max: i64,
}

impl MissingPart {
    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all.is_empty()
    }

    pub fn contains(&self, x: BundlePoint) -> bool {
        self.all.binary_search(&x).is_ok()
    }

    /// `[C1, C2]` when split, else `[C]`.
    pub fn components(&self) -> Vec<&[BundlePoint]> {
        match &self.split {
            Some((c1, c2)) => vec![c1, c2],
            None => vec![&self.all],
        }
    }

    fn component_of(&self, x: BundlePoint) -> Option<usize> {
        self.components().iter().position(|c| c.contains(&x))
    }
}

impl Wpl {
    pub fn torsion_class(&self, x: BundlePoint, t: &TiltingCandidate) -> TorsionClass {
        let ts: Vec<K0Class> = t.summands().iter().map(|&s| self.class_of(s)).collect();
        self.torsion_class_of(&self.class_of(x), &ts)
    }

    fn torsion_class_of(&self, x: &K0Class, summands: &[K0Class]) -> TorsionClass {
        let mut hom = false;
        let mut ext = false;
        for s in summands {
            // hom and ext never both nonzero for one pair of indecomposables
            match self.euler(s, x) {
                v if v > 0 => hom = true,
                v if v < 0 => ext = true,
                _ => {}
            }
        }
        match (hom, ext) {
            (true, true) => TorsionClass::Missing,
            (_, false) => TorsionClass::X0,
            (false, true) => TorsionClass::X1,
        }
    }

    /// Scans every point within `radius` tau-steps of the summands and fails
    /// if a missing point sits on the edge of the scan.
    pub fn missing_part(&self, t: &TiltingCandidate, radius: i64) -> Result<MissingPart> {
        let form = self.classify(t)?;
        let lo = t.summands().iter().map(|p| p.m).min().expect("nonempty") - radius;
        let hi = t.summands().iter().map(|p| p.m).max().expect("nonempty") + radius;
        let scan: Vec<BundlePoint> = self
            .orbits()
            .into_iter()
            .flat_map(|o| (lo..=hi).map(move |m| BundlePoint::new(o, m)))
            .collect();
        let ts: Vec<K0Class> = t.summands().iter().map(|&s| self.class_of(s)).collect();
        let mut all: Vec<BundlePoint> = scan
            .par_iter()
            .copied()
            .filter(|&x| self.torsion_class_of(&self.class_of(x), &ts) == TorsionClass::Missing)
            .collect();
        all.sort();
        if let Some(&p) = all.iter().find(|p| p.m == lo || p.m == hi) {
            return Err(Error::WindowInsufficient { radius, point: p });
        }
        let split = match &form {
            ClassifiedForm::Triple { sub_slice, .. } => {
                let ei = sub_slice[0];
                let ej = *sub_slice.last().expect("nonempty");
                let plus: BTreeSet<_> = self.dom_plus(ei)?.into_iter().collect();
                let minus: BTreeSet<_> = self.dom_minus(ej)?.into_iter().collect();
                let c1 = all.iter().copied().filter(|x| plus.contains(x)).collect();
                let c2 = all.iter().copied().filter(|x| minus.contains(x)).collect();
                Some((c1, c2))
            }
            ClassifiedForm::CanonicalTwist { .. } => None,
        };
        Ok(MissingPart { tilting: t.clone(), form, all, split, tau_min: lo, tau_max: hi })
    }

    /// `(C1, C2)`; only defined for Triple-form `T`.
    pub fn split<'a>(&self, mp: &'a MissingPart) -> Result<(&'a [BundlePoint], &'a [BundlePoint])> {
        mp.split.as_ref().map(|(a, b)| (a.as_slice(), b.as_slice())).ok_or(Error::NotTripleForm)
    }

    /// `Hom(L, X) != 0 != Ext^1(L((i-1) x3), X)` with `L` the first member of `T+(E_i)`.
    pub fn membership_formula_c1(&self, x: BundlePoint, form: &ClassifiedForm) -> Result<bool> {
        let ClassifiedForm::Triple { i, plus, sub_slice, .. } = form else {
            return Err(Error::NotTripleForm);
        };
        let mut l = self.upper_line(sub_slice[0])?;
        match plus {
            PlusTag::Eu => {}
            PlusTag::EuTwist => l = l + self.torsion(),
            PlusTag::El | PlusTag::ElX3 => return Err(Error::NotTripleForm),
        }
        let top = l + i64::from(i - 1) * self.x3();
        Ok(self.hom_dim(self.line_point(l), x) != 0 && self.ext_dim(self.line_point(top), x) != 0)
    }

    /// `Hom(L'(-(n-j+1) x3), X) != 0 != Ext^1(L', X)` with `L'` the first member of `T-(E_j)`.
    pub fn membership_formula_c2(&self, x: BundlePoint, form: &ClassifiedForm) -> Result<bool> {
        let ClassifiedForm::Triple { j, minus, sub_slice, .. } = form else {
            return Err(Error::NotTripleForm);
        };
        let mut l = self.lower_line(*sub_slice.last().expect("nonempty"))?;
        match minus {
            MinusTag::Ed => {}
            MinusTag::EdTwist => l = l + self.torsion(),
            MinusTag::Er | MinusTag::ErMx3 => return Err(Error::NotTripleForm),
        }
        let bottom = l - i64::from(self.n() - j + 1) * self.x3();
        Ok(self.hom_dim(self.line_point(bottom), x) != 0 && self.ext_dim(self.line_point(l), x) != 0)
    }

    /// Mesh window covering every path between points of `C`.
    pub fn missing_window(&self, mp: &MissingPart) -> Result<MeshWindow> {
        MeshWindow::new(self, mp.tau_min, mp.tau_max)
    }

    /// `dim Hom(x, y)` modulo maps through line bundles, for `x`, `y` in one component.
    pub fn factor_hom(&self, mp: &MissingPart, window: &MeshWindow, x: BundlePoint, y: BundlePoint) -> Result<u64> {
        let cx = mp.component_of(x).ok_or(Error::NotMissing(x))?;
        let cy = mp.component_of(y).ok_or(Error::NotMissing(y))?;
        if cx != cy {
            return Err(Error::MixedComponents(x, y));
        }
        window.factor_hom_dim(x, y, |p| p.is_line())
    }

    /// `dim Hom(x, y)` modulo maps through points outside `C`.
    pub fn outside_factor_hom(&self, mp: &MissingPart, window: &MeshWindow, x: BundlePoint, y: BundlePoint) -> Result<u64> {
        for p in [x, y] {
            if !mp.contains(p) {
                return Err(Error::NotMissing(p));
            }
        }
        window.factor_hom_dim(x, y, |p| !mp.contains(p))
    }

    /// Pairwise factor homs over the components concatenated: within a
    /// component modulo line bundles, across components modulo everything outside `C`.
    pub fn factor_hom_matrix(&self, mp: &MissingPart) -> Result<(Vec<BundlePoint>, Vec<Vec<u64>>)> {
        let window = self.missing_window(mp)?;
        let order: Vec<BundlePoint> = mp.components().concat();
        let rows = order
            .iter()
            .map(|&x| {
                order
                    .iter()
                    .map(|&y| match self.factor_hom(mp, &window, x, y) {
                        Err(Error::MixedComponents(..)) => self.outside_factor_hom(mp, &window, x, y),
                        r => r,
                    })
                    .collect::<Result<Vec<u64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((order, rows))
    }
}
