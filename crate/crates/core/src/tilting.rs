//! Tilting bundles: predicates, the `Br+`/`Br-` building blocks, the
//! classification normal form and an exhaustive enumerator.
//!
//! Generation of the derived category is replaced by the condition that the
//! summand classes form a Z-basis of `K0`.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::arq::{BundlePoint, OrbitId};
use crate::error::{Error, Result};
use crate::k0::K0Class;
use crate::lgroup::{LElement, Weight};
use crate::linalg::det_bareiss;
use crate::wpl::Wpl;

/// A set of pairwise distinct indecomposable bundles, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TiltingCandidate {
    weight: Weight,
    summands: Vec<BundlePoint>,
}

impl TiltingCandidate {
    pub fn new(weight: Weight, summands: impl IntoIterator<Item = BundlePoint>) -> Result<Self> {
        let mut s: Vec<BundlePoint> = summands.into_iter().collect();
        s.sort();
        if let Some(w) = s.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::NotTilting(format!("summand {} repeated", w[0])));
        }
        Ok(TiltingCandidate { weight, summands: s })
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn summands(&self) -> &[BundlePoint] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn contains(&self, p: BundlePoint) -> bool {
        self.summands.binary_search(&p).is_ok()
    }

    pub fn lines(&self) -> Vec<BundlePoint> {
        self.summands.iter().copied().filter(BundlePoint::is_line).collect()
    }

    /// Rank-two summands, by increasing length.
    pub fn rank_two(&self) -> Vec<BundlePoint> {
        self.summands.iter().copied().filter(|p| !p.is_line()).collect()
    }

    pub fn all_lines(&self) -> bool {
        self.summands.iter().all(BundlePoint::is_line)
    }

    /// `tau^steps` applied to every summand.
    pub fn tau(&self, steps: i64) -> Self {
        TiltingCandidate {
            weight: self.weight,
            summands: self.summands.iter().map(|p| p.tau(steps)).collect(),
        }
    }
}

/// Members of `Br+(E)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlusTag {
    Eu,
    EuTwist,
    El,
    ElX3,
}

/// Members of `Br-(E)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MinusTag {
    Ed,
    EdTwist,
    Er,
    ErMx3,
}

impl PlusTag {
    pub const ALL: [PlusTag; 4] = [PlusTag::Eu, PlusTag::EuTwist, PlusTag::El, PlusTag::ElX3];

    pub fn name(self) -> &'static str {
        match self {
            PlusTag::Eu => "Eu",
            PlusTag::EuTwist => "Eu_twist",
            PlusTag::El => "El",
            PlusTag::ElX3 => "El_x3",
        }
    }
}

impl MinusTag {
    pub const ALL: [MinusTag; 4] = [MinusTag::Ed, MinusTag::EdTwist, MinusTag::Er, MinusTag::ErMx3];

    pub fn name(self) -> &'static str {
        match self {
            MinusTag::Ed => "Ed",
            MinusTag::EdTwist => "Ed_twist",
            MinusTag::Er => "Er",
            MinusTag::ErMx3 => "Er_mx3",
        }
    }
}

impl fmt::Display for PlusTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for MinusTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Normal form of a tilting bundle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassifiedForm {
    /// `(+)_{0 <= x <= c} O(l + x)`.
    CanonicalTwist { l: LElement },
    /// `T+(E_i) (+) E_i (+) ... (+) E_j (+) T-(E_j)`.
    Triple {
        i: u32,
        j: u32,
        plus: PlusTag,
        sub_slice: Vec<BundlePoint>,
        minus: MinusTag,
    },
}

impl fmt::Display for ClassifiedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifiedForm::CanonicalTwist { l } if l.is_zero() => f.write_str("CanonicalTwist(L=O)"),
            ClassifiedForm::CanonicalTwist { l } => {
                let [a, b, c, d] = l.to_array();
                write!(f, "CanonicalTwist(L=O({a},{b},{c},{d}))")
            }
            ClassifiedForm::Triple { i, j, plus, sub_slice, minus } => {
                let s: Vec<String> = sub_slice.iter().map(ToString::to_string).collect();
                write!(f, "Triple(i={i}, j={j}, plus={plus}, sub_slice=[{}], minus={minus})", s.join(", "))
            }
        }
    }
}

/// Subsets of `0..len` as bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn empty(len: usize) -> Self {
        BitSet(vec![0; len.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(64 * k + b)
            })
        })
    }

    /// Members strictly greater than `i`.
    fn above(&self, i: usize) -> BitSet {
        let mut out = self.clone();
        for (k, w) in out.0.iter_mut().enumerate() {
            let lo = 64 * k;
            if i + 1 >= lo + 64 {
                *w = 0;
            } else if i + 1 > lo {
                *w &= !0u64 << (i + 1 - lo);
            }
        }
        out
    }
}

/// Ext-free cliques of prescribed size, with the optional `K0` basis check at the leaves.
struct CliqueSearch<'a> {
    wpl: &'a Wpl,
    points: Vec<BundlePoint>,
    classes: Vec<K0Class>,
    adj: Vec<BitSet>,
}

impl<'a> CliqueSearch<'a> {
    fn new(wpl: &'a Wpl, points: Vec<BundlePoint>) -> Self {
        let classes: Vec<K0Class> = points.iter().map(|&p| wpl.class_of(p)).collect();
        let mut adj = vec![BitSet::empty(points.len()); points.len()];
        for a in 0..points.len() {
            for b in a + 1..points.len() {
                let ab = wpl.euler(&classes[a], &classes[b]);
                let ba = wpl.euler(&classes[b], &classes[a]);
                if ab >= 0 && ba >= 0 {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
        }
        CliqueSearch { wpl, points, classes, adj }
    }

    fn run(&self, size: usize, fixed: &[K0Class], out: &mut Vec<Vec<BundlePoint>>) {
        let mut all = BitSet::empty(self.points.len());
        (0..self.points.len()).for_each(|i| all.insert(i));
        let mut current = Vec::with_capacity(size);
        self.extend(size, &all, &mut current, fixed, out);
    }

    fn extend(&self, size: usize, cand: &BitSet, current: &mut Vec<usize>, fixed: &[K0Class], out: &mut Vec<Vec<BundlePoint>>) {
        if current.len() == size {
            let mut rows: Vec<Vec<i64>> = fixed.iter().map(|c| c.coords().to_vec()).collect();
            rows.extend(current.iter().map(|&i| self.classes[i].coords().to_vec()));
            if det_bareiss(&rows).abs() == 1 {
                out.push(current.iter().map(|&i| self.points[i]).collect());
            }
            return;
        }
        let need = (size - current.len()) as u32;
        if cand.count() < need {
            return;
        }
        for v in cand.iter() {
            let next = cand.and(&self.adj[v]).above(v);
            if next.count() + 1 < need {
                continue;
            }
            current.push(v);
            self.extend(size, &next, current, fixed, out);
            current.pop();
        }
    }
}

impl Wpl {
    fn require_rank_two(&self, e: BundlePoint) -> Result<()> {
        if e.is_line() {
            Err(Error::NotRankTwo(e))
        } else {
            Ok(())
        }
    }

    /// `L` with `S(-> E) meets L1 = {L}`.
    pub fn upper_line(&self, e: BundlePoint) -> Result<LElement> {
        self.require_rank_two(e)?;
        let p = self.slice_to_in(e, OrbitId::L1)?;
        Ok(self.line_element(p).expect("L1 is a line orbit"))
    }

    /// `L'` with `S(E ->) meets Ln1 = {L'}`.
    pub fn lower_line(&self, e: BundlePoint) -> Result<LElement> {
        self.require_rank_two(e)?;
        let p = self.slice_from_in(e, OrbitId::Ln1)?;
        Ok(self.line_element(p).expect("Ln1 is a line orbit"))
    }

    /// `E^u = {L(k x3) : 0 <= k <= l(E) - 1}`.
    pub fn e_u(&self, e: BundlePoint) -> Result<Vec<BundlePoint>> {
        let l = self.upper_line(e)?;
        let len = i64::from(self.length(e));
        Ok((0..len).map(|k| self.line_point(l + k * self.x3())).collect())
    }

    /// `E^d = {L'(-k x3) : 0 <= k <= n - l(E) + 1}`.
    pub fn e_d(&self, e: BundlePoint) -> Result<Vec<BundlePoint>> {
        let l = self.lower_line(e)?;
        let top = i64::from(self.n()) - i64::from(self.length(e)) + 1;
        Ok((0..=top).map(|k| self.line_point(l - k * self.x3())).collect())
    }

    /// `E^l = {L, L(x1 - x2)}`, defined for `l(E) = 2`.
    pub fn e_l(&self, e: BundlePoint) -> Result<Vec<BundlePoint>> {
        self.require_length(e, 2, "e_l")?;
        let l = self.upper_line(e)?;
        Ok(vec![self.line_point(l), self.line_point(l + self.torsion())])
    }

    /// `E^r = {L', L'(x1 - x2)}`, defined for `l(E) = n`.
    pub fn e_r(&self, e: BundlePoint) -> Result<Vec<BundlePoint>> {
        self.require_length(e, self.n(), "e_r")?;
        let l = self.lower_line(e)?;
        Ok(vec![self.line_point(l), self.line_point(l + self.torsion())])
    }

    fn require_length(&self, e: BundlePoint, expected: u32, op: &'static str) -> Result<()> {
        self.require_rank_two(e)?;
        let got = self.length(e);
        if got != expected {
            return Err(Error::WrongLength { op, point: e, expected, got });
        }
        Ok(())
    }

    fn twist_all(&self, pts: &[BundlePoint], x: LElement) -> Vec<BundlePoint> {
        pts.iter().map(|&p| self.twist_line(p, x)).collect()
    }

    /// Members of `Br+(E)` by tag.
    pub fn br_plus(&self, e: BundlePoint) -> Result<Vec<(PlusTag, Vec<BundlePoint>)>> {
        let eu = self.e_u(e)?;
        let twisted = self.twist_all(&eu, self.torsion());
        let mut out = vec![(PlusTag::Eu, eu), (PlusTag::EuTwist, twisted)];
        if self.length(e) == 2 {
            let el = self.e_l(e)?;
            let shifted = self.twist_all(&el, self.x3());
            out.push((PlusTag::El, el));
            out.push((PlusTag::ElX3, shifted));
        }
        Ok(out)
    }

    /// Members of `Br-(E)` by tag.
    pub fn br_minus(&self, e: BundlePoint) -> Result<Vec<(MinusTag, Vec<BundlePoint>)>> {
        let ed = self.e_d(e)?;
        let twisted = self.twist_all(&ed, self.torsion());
        let mut out = vec![(MinusTag::Ed, ed), (MinusTag::EdTwist, twisted)];
        if self.length(e) == self.n() {
            let er = self.e_r(e)?;
            let shifted = self.twist_all(&er, -self.x3());
            out.push((MinusTag::Er, er));
            out.push((MinusTag::ErMx3, shifted));
        }
        Ok(out)
    }

    fn plus_part(&self, e: BundlePoint, tag: PlusTag) -> Result<Vec<BundlePoint>> {
        self.br_plus(e)?
            .into_iter()
            .find(|(t, _)| *t == tag)
            .map(|(_, s)| s)
            .ok_or(Error::WrongLength { op: "br_plus", point: e, expected: 2, got: self.length(e) })
    }

    fn minus_part(&self, e: BundlePoint, tag: MinusTag) -> Result<Vec<BundlePoint>> {
        let n = self.n();
        self.br_minus(e)?
            .into_iter()
            .find(|(t, _)| *t == tag)
            .map(|(_, s)| s)
            .ok_or(Error::WrongLength { op: "br_minus", point: e, expected: n, got: self.length(e) })
    }

    /// Rank-two points of consecutive lengths, each adjacent pair joined by an AR arrow.
    pub fn is_sub_slice(&self, points: &[BundlePoint]) -> bool {
        if points.is_empty() || points.iter().any(BundlePoint::is_line) {
            return false;
        }
        let mut pts = points.to_vec();
        pts.sort_by_key(|&p| self.length(p));
        pts.windows(2).all(|w| {
            self.length(w[1]) == self.length(w[0]) + 1 && (self.is_arrow(w[0], w[1]) || self.is_arrow(w[1], w[0]))
        })
    }

    /// `true` if the determinant of the summand classes is `+-1`.
    pub fn is_k0_basis(&self, points: &[BundlePoint]) -> bool {
        if points.len() != self.weight().rank_k0() {
            return false;
        }
        let rows: Vec<Vec<i64>> = points.iter().map(|&p| self.class_of(p).coords().to_vec()).collect();
        det_bareiss(&rows).abs() == 1
    }

    /// `n + 3` distinct summands, extension-free, classes a basis of `K0`.
    pub fn is_tilting(&self, t: &TiltingCandidate) -> bool {
        t.weight() == self.weight()
            && t.len() == self.weight().rank_k0()
            && self.extension_free(t.summands())
            && self.is_k0_basis(t.summands())
    }

    /// `{O(l + x) : 0 <= x <= c}`.
    pub fn canonical_tilting(&self, l: LElement) -> TiltingCandidate {
        let mut xs = vec![self.zero(), self.x1(), self.x2(), self.c()];
        xs.extend((1..i64::from(self.n())).map(|k| k * self.x3()));
        TiltingCandidate::new(self.weight(), xs.into_iter().map(|x| self.line_point(l + x))).expect("distinct summands")
    }

    /// Assembles the Triple form from its parameters.
    pub fn triple(&self, plus: PlusTag, sub_slice: &[BundlePoint], minus: MinusTag) -> Result<TiltingCandidate> {
        if !self.is_sub_slice(sub_slice) {
            return Err(Error::NotTripleForm);
        }
        let mut sub = sub_slice.to_vec();
        sub.sort_by_key(|&p| self.length(p));
        let (ei, ej) = (sub[0], *sub.last().expect("nonempty"));
        let mut all = self.plus_part(ei, plus)?;
        all.extend(self.minus_part(ej, minus)?);
        all.extend(sub);
        TiltingCandidate::new(self.weight(), all)
    }

    /// Normal form of a tilting bundle.
    pub fn classify(&self, t: &TiltingCandidate) -> Result<ClassifiedForm> {
        if !self.is_tilting(t) {
            return Err(Error::NotTilting(self.format_candidate(t)));
        }
        if t.all_lines() {
            return self.classify_lines(t);
        }
        let mut sub = t.rank_two();
        sub.sort_by_key(|&p| self.length(p));
        if !self.is_sub_slice(&sub) {
            return Err(Error::NoMatch(format!(
                "rank-two summands of {} are not a sub-slice",
                self.format_candidate(t)
            )));
        }
        let (ei, ej) = (sub[0], *sub.last().expect("nonempty"));
        let lines: BTreeSet<BundlePoint> = t.lines().into_iter().collect();
        for (pt, ps) in self.br_plus(ei)? {
            for (mt, ms) in self.br_minus(ej)? {
                let union: BTreeSet<BundlePoint> = ps.iter().chain(&ms).copied().collect();
                if union.len() == ps.len() + ms.len() && union == lines {
                    return Ok(ClassifiedForm::Triple {
                        i: self.length(ei),
                        j: self.length(ej),
                        plus: pt,
                        sub_slice: sub,
                        minus: mt,
                    });
                }
            }
        }
        Err(Error::NoMatch(self.format_candidate(t)))
    }

    fn classify_lines(&self, t: &TiltingCandidate) -> Result<ClassifiedForm> {
        let slopes: Vec<_> = t.summands().iter().map(|&p| (self.slope_of(p), p)).collect();
        let min = slopes.iter().map(|s| s.0).min().expect("nonempty");
        for &(s, p) in &slopes {
            if s != min {
                continue;
            }
            let l = self.line_element(p).expect("line summand");
            if self.canonical_tilting(l) == *t {
                return Ok(ClassifiedForm::CanonicalTwist { l });
            }
        }
        Err(Error::NoMatch(self.format_candidate(t)))
    }

    /// Every Triple with `E_i` at tau-power 0, in parameter order.
    pub fn triple_space(&self) -> Result<Vec<(ClassifiedForm, TiltingCandidate)>> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 2..=n {
            for j in i..=n {
                for bits in 0u64..1 << (j - i) {
                    let mut sub = vec![BundlePoint::e(i, 0)];
                    for k in i..j {
                        let prev = sub.last().expect("nonempty").m;
                        let step = i64::from((bits >> (k - i)) & 1 == 1);
                        sub.push(BundlePoint::e(k + 1, prev + step));
                    }
                    for plus in PlusTag::ALL {
                        if matches!(plus, PlusTag::El | PlusTag::ElX3) && i != 2 {
                            continue;
                        }
                        for minus in MinusTag::ALL {
                            if matches!(minus, MinusTag::Er | MinusTag::ErMx3) && j != n {
                                continue;
                            }
                            let cand = self.triple(plus, &sub, minus)?;
                            let form = ClassifiedForm::Triple { i, j, plus, sub_slice: sub.clone(), minus };
                            out.push((form, cand));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Points with `|m| <= radius`.
    pub fn window_points(&self, radius: i64) -> Vec<BundlePoint> {
        self.orbits()
            .into_iter()
            .flat_map(|o| (-radius..=radius).map(move |m| BundlePoint::new(o, m)))
            .collect()
    }

    /// Tilting bundles with a rank-two summand, the minimal-length one at tau-power 0.
    pub fn enumerate_rank_two(&self, radius: i64) -> Result<Vec<TiltingCandidate>> {
        let n = self.n();
        let size = self.weight().rank_k0() - 1;
        let found: Vec<Vec<Vec<BundlePoint>>> = (2..=n)
            .into_par_iter()
            .map(|i| {
                let anchor = BundlePoint::e(i, 0);
                let pts: Vec<BundlePoint> = self
                    .window_points(radius)
                    .into_iter()
                    .filter(|&p| p != anchor)
                    .filter(|&p| match p.orbit {
                        OrbitId::E(k) => k > i,
                        _ => true,
                    })
                    .filter(|&p| self.ext_free_pair(anchor, p))
                    .collect();
                let search = CliqueSearch::new(self, order_by_length(self, pts));
                let mut out = Vec::new();
                search.run(size, &[search.wpl.class_of(anchor)], &mut out);
                out.into_iter()
                    .map(|mut s| {
                        s.push(anchor);
                        s
                    })
                    .collect()
            })
            .collect();
        self.collect_candidates(found.into_iter().flatten(), radius)
    }

    /// Tilting bundles of line bundles, the minimal-slope summand twisted to `O`.
    pub fn enumerate_lines(&self, radius: i64) -> Result<Vec<TiltingCandidate>> {
        let anchor = self.line_point(self.zero());
        let pts: Vec<BundlePoint> = self
            .window_points(radius)
            .into_iter()
            .filter(|&p| p.is_line() && p != anchor)
            .filter(|&p| self.line_element(p).expect("line").delta() >= 0)
            .filter(|&p| self.ext_free_pair(anchor, p))
            .collect();
        let search = CliqueSearch::new(self, order_by_length(self, pts));
        let mut raw = Vec::new();
        search.run(self.weight().rank_k0() - 1, &[self.class_of(anchor)], &mut raw);
        let found = raw.into_iter().map(|mut s| {
            s.push(anchor);
            s
        });
        let cands = self.collect_candidates(found, radius)?;
        let normalized: BTreeSet<TiltingCandidate> = cands.iter().map(|t| self.normalize_lines(t)).collect();
        Ok(normalized.into_iter().collect())
    }

    fn collect_candidates(&self, found: impl Iterator<Item = Vec<BundlePoint>>, radius: i64) -> Result<Vec<TiltingCandidate>> {
        let mut out = BTreeSet::new();
        for s in found {
            if let Some(&p) = s.iter().find(|p| p.m.abs() >= radius) {
                return Err(Error::WindowInsufficient { radius, point: p });
            }
            out.insert(TiltingCandidate::new(self.weight(), s)?);
        }
        Ok(out.into_iter().collect())
    }

    /// Twists an all-line candidate so its least minimal-slope summand is `O`.
    pub fn normalize_lines(&self, t: &TiltingCandidate) -> TiltingCandidate {
        let elems: Vec<LElement> = t.summands().iter().map(|&p| self.line_element(p).expect("line")).collect();
        let min_delta = elems.iter().map(LElement::delta).min().expect("nonempty");
        let anchor = *elems.iter().filter(|x| x.delta() == min_delta).min().expect("nonempty");
        TiltingCandidate::new(self.weight(), elems.iter().map(|&x| self.line_point(x - anchor))).expect("twist is injective")
    }

    /// All tilting bundles inside the window `|m| <= radius`. Normalized output
    /// anchors each class as in [`Wpl::enumerate_rank_two`] and [`Wpl::enumerate_lines`];
    /// otherwise every translate that still fits in the window is listed.
    pub fn enumerate_tilting(&self, radius: i64, normalized: bool) -> Result<Vec<TiltingCandidate>> {
        let mut base = self.enumerate_lines(radius)?;
        let lines_len = base.len();
        base.extend(self.enumerate_rank_two(radius)?);
        if normalized {
            return Ok(base);
        }
        let inside = |t: &TiltingCandidate| t.summands().iter().all(|p| p.m.abs() <= radius);
        let mut out = BTreeSet::new();
        for (k, t) in base.iter().enumerate() {
            if k < lines_len {
                for q in self.window_points(radius).into_iter().filter(BundlePoint::is_line) {
                    let x = self.line_element(q).expect("line");
                    let moved = TiltingCandidate::new(self.weight(), self.twist_all(t.summands(), x))?;
                    if inside(&moved) {
                        out.insert(moved);
                    }
                }
            } else {
                for s in -2 * radius..=2 * radius {
                    let moved = t.tau(s);
                    if inside(&moved) {
                        out.insert(moved);
                    }
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    pub fn format_candidate(&self, t: &TiltingCandidate) -> String {
        let s: Vec<String> = t.summands().iter().map(|&p| self.format_point(p)).collect();
        format!("{{{}}}", s.join(", "))
    }
}

fn order_by_length(wpl: &Wpl, mut pts: Vec<BundlePoint>) -> Vec<BundlePoint> {
    pts.sort_by_key(|&p| (wpl.length(p), p.m, p.orbit));
    pts
}
