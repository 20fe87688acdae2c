//! Coordinates on the Auslander-Reiten quiver `Z Delta~` of vector bundles.
//!
//! Each indecomposable bundle is a [`BundlePoint`]: a tau-orbit together with
//! the power of tau applied to the orbit's representative in the base slice
//!
//! ```text
//!   O                       O(x1)
//!     \                   /
//!      E2 -> E3 -> ... -> En
//!     /                   \
//!   O(x3)                   O(x2)
//! ```
//!
//! with arrows `O -> E2 -> O(x3)`, `E_k -> E_{k+1}` and `En -> O(x1), O(x2)`.
//! Every base arrow `u -> v` gives arrows `(u, m) -> (v, m)` and
//! `(v, m) -> (u, m - 1)`; tau raises `m` by one and is the twist by omega.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::k0::{K0Class, Slope};
use crate::lgroup::LElement;
use crate::wpl::Wpl;

/// A tau-orbit of indecomposable bundles.
///
/// `L1`, `L1p`, `Ln1`, `Ln1p` are the line-bundle orbits of `O`, `O(x3)`,
/// `O(x1)`, `O(x2)`; `E(k)` for `2 <= k <= n` are the rank-two orbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitId {
    L1,
    L1p,
    E(u32),
    Ln1,
    Ln1p,
}

impl OrbitId {
    pub fn is_line(self) -> bool {
        !matches!(self, OrbitId::E(_))
    }
}

impl fmt::Display for OrbitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitId::L1 => f.write_str("L1"),
            OrbitId::L1p => f.write_str("L1p"),
            OrbitId::E(k) => write!(f, "E{k}"),
            OrbitId::Ln1 => f.write_str("Ln1"),
            OrbitId::Ln1p => f.write_str("Ln1p"),
        }
    }
}

/// The indecomposable bundle `tau^m` of the base-slice member of `orbit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BundlePoint {
    pub orbit: OrbitId,
    pub m: i64,
}

impl BundlePoint {
    pub fn new(orbit: OrbitId, m: i64) -> Self {
        BundlePoint { orbit, m }
    }

    pub fn e(k: u32, m: i64) -> Self {
        BundlePoint::new(OrbitId::E(k), m)
    }

    pub fn is_line(&self) -> bool {
        self.orbit.is_line()
    }

    pub fn rank(&self) -> i64 {
        if self.is_line() {
            1
        } else {
            2
        }
    }

    /// `tau^steps` of this point.
    pub fn tau(self, steps: i64) -> Self {
        BundlePoint::new(self.orbit, self.m + steps)
    }
}

/// Orbit-coordinate form, e.g. `L1p[-1]` or `E3[0]`. Use [`Wpl::format_point`]
/// for the `O(l1,l2,l3,l)` form of line bundles.
impl fmt::Display for BundlePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.orbit, self.m)
    }
}

impl Wpl {
    /// All `n + 3` orbits, in base-slice order.
    pub fn orbits(&self) -> Vec<OrbitId> {
        let mut out = vec![OrbitId::L1, OrbitId::L1p];
        out.extend((2..=self.n()).map(OrbitId::E));
        out.extend([OrbitId::Ln1, OrbitId::Ln1p]);
        out
    }

    /// Orbits in a topological order of the base slice.
    pub(crate) fn orbits_topological(&self) -> Vec<OrbitId> {
        let mut out = vec![OrbitId::L1, OrbitId::E(2), OrbitId::L1p];
        out.extend((3..=self.n()).map(OrbitId::E));
        out.extend([OrbitId::Ln1, OrbitId::Ln1p]);
        out
    }

    pub fn has_orbit(&self, orbit: OrbitId) -> bool {
        match orbit {
            OrbitId::E(k) => (2..=self.n()).contains(&k),
            _ => true,
        }
    }

    /// Arrows of the base slice `S(O ->)`.
    pub fn base_arrows(&self) -> Vec<(OrbitId, OrbitId)> {
        let n = self.n();
        let mut out = vec![(OrbitId::L1, OrbitId::E(2)), (OrbitId::E(2), OrbitId::L1p)];
        out.extend((2..n).map(|k| (OrbitId::E(k), OrbitId::E(k + 1))));
        out.extend([(OrbitId::E(n), OrbitId::Ln1), (OrbitId::E(n), OrbitId::Ln1p)]);
        out
    }

    /// Targets of AR arrows starting at `p`.
    pub fn successors(&self, p: BundlePoint) -> Vec<BundlePoint> {
        let mut out = Vec::new();
        for (u, v) in self.base_arrows() {
            if u == p.orbit {
                out.push(BundlePoint::new(v, p.m));
            }
            if v == p.orbit {
                out.push(BundlePoint::new(u, p.m - 1));
            }
        }
        out
    }

    /// Sources of AR arrows ending at `p`; these are the middle terms of the mesh ending at `p`.
    pub fn predecessors(&self, p: BundlePoint) -> Vec<BundlePoint> {
        let mut out = Vec::new();
        for (u, v) in self.base_arrows() {
            if v == p.orbit {
                out.push(BundlePoint::new(u, p.m));
            }
            if u == p.orbit {
                out.push(BundlePoint::new(v, p.m + 1));
            }
        }
        out
    }

    pub fn is_arrow(&self, a: BundlePoint, b: BundlePoint) -> bool {
        self.successors(a).contains(&b)
    }

    /// Position of the orbit across the tree: 1 for `L1`/`L1p`, `k` for `E(k)`,
    /// `n + 1` for `Ln1`/`Ln1p`.
    pub fn length(&self, p: BundlePoint) -> u32 {
        match p.orbit {
            OrbitId::L1 | OrbitId::L1p => 1,
            OrbitId::E(k) => k,
            OrbitId::Ln1 | OrbitId::Ln1p => self.n() + 1,
        }
    }

    fn line_base(&self, orbit: OrbitId) -> Option<LElement> {
        match orbit {
            OrbitId::L1 => Some(self.zero()),
            OrbitId::L1p => Some(self.x3()),
            OrbitId::Ln1 => Some(self.x1()),
            OrbitId::Ln1p => Some(self.x2()),
            OrbitId::E(_) => None,
        }
    }

    /// The point of the line bundle `O(x)`.
    pub fn line_point(&self, x: LElement) -> BundlePoint {
        assert_eq!(x.weight(), self.weight(), "element of a different weight");
        let omega = self.omega();
        let step = omega.delta();
        for orbit in [OrbitId::L1, OrbitId::L1p, OrbitId::Ln1, OrbitId::Ln1p] {
            let d = x - self.line_base(orbit).expect("line orbit");
            let (m, r) = d.delta().div_rem(&step);
            if r == 0 && m * omega == d {
                return BundlePoint::new(orbit, m);
            }
        }
        unreachable!("the four line orbits cover L / Z omega")
    }

    /// `Some(x)` with `p = O(x)` for line-bundle points.
    pub fn line_element(&self, p: BundlePoint) -> Option<LElement> {
        self.line_base(p.orbit).map(|b| b + p.m * self.omega())
    }

    /// Twist of a line-bundle point by `x`.
    pub fn twist_line(&self, p: BundlePoint, x: LElement) -> BundlePoint {
        let e = self.line_element(p).expect("twist_line on a rank-two point");
        self.line_point(e + x)
    }

    /// K0 class. A rank-two point `E(k)` at `m = 0` is the extension of
    /// `O(-omega + (k-2) x3)` by `O`; tau twists both constituents by omega.
    pub fn class_of(&self, p: BundlePoint) -> K0Class {
        self.cached_class(p, || self.compute_class(p))
    }

    fn compute_class(&self, p: BundlePoint) -> K0Class {
        match p.orbit {
            OrbitId::E(k) => {
                let shift = p.m * self.omega();
                let top = -self.omega() + i64::from(k - 2) * self.x3() + shift;
                self.class_of_line(shift) + self.class_of_line(top)
            }
            _ => self.class_of_line(self.line_element(p).expect("line orbit")),
        }
    }

    pub fn slope_of(&self, p: BundlePoint) -> Ratio<i64> {
        match self.class_of(p).slope().expect("bundles have nonzero class") {
            Slope::Finite(r) => r,
            Slope::Infinite => unreachable!("bundles have positive rank"),
        }
    }

    /// `m / k` rounded toward `-inf` or `+inf` relative to `mu(orbit, 0)`.
    fn slope_cutoff(&self, source: Ratio<i64>, orbit: OrbitId) -> Ratio<i64> {
        let base = self.slope_of(BundlePoint::new(orbit, 0));
        // slope(orbit, m) = base + m * delta(omega), delta(omega) < 0
        (base - source) / Ratio::from_integer(-self.omega().delta())
    }

    fn search_limit(&self) -> i64 {
        4 * i64::from(self.n()) + 16
    }

    /// Largest `m` with `Hom(p, (orbit, m)) != 0`.
    fn last_hom_target(&self, p: BundlePoint, orbit: OrbitId) -> Result<i64> {
        let top = self.slope_cutoff(self.slope_of(p), orbit).floor().to_integer();
        let limit = self.search_limit();
        (0..=limit)
            .map(|k| top - k)
            .find(|&m| self.hom_dim(p, BundlePoint::new(orbit, m)) != 0)
            .ok_or(Error::SearchBound { point: p, steps: limit })
    }

    /// Smallest `m` with `Hom((orbit, m), p) != 0`.
    fn first_hom_source(&self, p: BundlePoint, orbit: OrbitId) -> Result<i64> {
        let bottom = self.slope_cutoff(self.slope_of(p), orbit).ceil().to_integer();
        let limit = self.search_limit();
        (0..=limit)
            .map(|k| bottom + k)
            .find(|&m| self.hom_dim(BundlePoint::new(orbit, m), p) != 0)
            .ok_or(Error::SearchBound { point: p, steps: limit })
    }

    /// `S(p ->)`: the `Y` with `Hom(p, Y) != 0` and `Hom(p, tau^m Y) = 0` for all `m >= 1`.
    ///
    /// Rank-two sources use the one-step criterion, line bundles the full
    /// definition; the quantifier over `m` is cut off where slope forces
    /// `Hom(p, tau^m Y) = 0`.
    pub fn slice_from(&self, p: BundlePoint) -> Result<Vec<BundlePoint>> {
        if p.is_line() {
            self.slice_from_definitional(p)
        } else {
            self.slice_from_simplified(p)
        }
    }

    /// `S(-> p)`: the `Y` with `Hom(Y, p) != 0` and `Hom(tau^-m Y, p) = 0` for all `m >= 1`.
    pub fn slice_to(&self, p: BundlePoint) -> Result<Vec<BundlePoint>> {
        if p.is_line() {
            self.slice_to_definitional(p)
        } else {
            self.slice_to_simplified(p)
        }
    }

    pub fn slice_from_definitional(&self, p: BundlePoint) -> Result<Vec<BundlePoint>> {
        self.orbits()
            .into_iter()
            .map(|o| Ok(BundlePoint::new(o, self.last_hom_target(p, o)?)))
            .collect()
    }

    pub fn slice_to_definitional(&self, p: BundlePoint) -> Result<Vec<BundlePoint>> {
        self.orbits()
            .into_iter()
            .map(|o| Ok(BundlePoint::new(o, self.first_hom_source(p, o)?)))
            .collect()
    }

    /// `{Y : Hom(E, Y) != 0, Hom(E, tau Y) = 0}` for rank-two `E`, scanned
    /// over every point up to the slope cutoff.
    pub fn slice_from_simplified(&self, e: BundlePoint) -> Result<Vec<BundlePoint>> {
        if e.is_line() {
            return Err(Error::NotRankTwo(e));
        }
        let mu = self.slope_of(e);
        let mut out = Vec::new();
        for o in self.orbits() {
            let top = self.slope_cutoff(mu, o).floor().to_integer();
            for m in top - self.search_limit()..=top {
                let y = BundlePoint::new(o, m);
                if self.hom_dim(e, y) != 0 && self.hom_dim(e, y.tau(1)) == 0 {
                    out.push(y);
                }
            }
        }
        Ok(out)
    }

    /// `{Y : Hom(Y, E) != 0, Hom(tau^-1 Y, E) = 0}` for rank-two `E`.
    pub fn slice_to_simplified(&self, e: BundlePoint) -> Result<Vec<BundlePoint>> {
        if e.is_line() {
            return Err(Error::NotRankTwo(e));
        }
        let mu = self.slope_of(e);
        let mut out = Vec::new();
        for o in self.orbits() {
            let bottom = self.slope_cutoff(mu, o).ceil().to_integer();
            for m in bottom..=bottom + self.search_limit() {
                let y = BundlePoint::new(o, m);
                if self.hom_dim(y, e) != 0 && self.hom_dim(y.tau(-1), e) == 0 {
                    out.push(y);
                }
            }
        }
        Ok(out)
    }

    /// The member of `S(-> p)` in the given orbit.
    pub fn slice_to_in(&self, p: BundlePoint, orbit: OrbitId) -> Result<BundlePoint> {
        Ok(BundlePoint::new(orbit, self.first_hom_source(p, orbit)?))
    }

    /// The member of `S(p ->)` in the given orbit.
    pub fn slice_from_in(&self, p: BundlePoint, orbit: OrbitId) -> Result<BundlePoint> {
        Ok(BundlePoint::new(orbit, self.last_hom_target(p, orbit)?))
    }

    /// `Dom(p)`: the points `Y` with `tau^a Y in S(-> p)` and `tau^-b Y in S(p ->)`
    /// for some `a, b >= 0`. On each orbit this is the tau-interval between the
    /// two slices.
    pub fn dom(&self, p: BundlePoint) -> Result<Vec<BundlePoint>> {
        let from = self.slice_from(p)?;
        let to = self.slice_to(p)?;
        let mut out = Vec::new();
        for (f, t) in from.iter().zip(&to) {
            debug_assert_eq!(f.orbit, t.orbit);
            out.extend((f.m..=t.m).map(|m| BundlePoint::new(f.orbit, m)));
        }
        Ok(out)
    }

    /// `Dom+(p)`: members of `Dom(p)` of length at most `l(p)`.
    pub fn dom_plus(&self, p: BundlePoint) -> Result<Vec<BundlePoint>> {
        let l = self.length(p);
        Ok(self.dom(p)?.into_iter().filter(|y| self.length(*y) <= l).collect())
    }

    /// `Dom-(p)`: members of `Dom(p)` of length at least `l(p)`.
    pub fn dom_minus(&self, p: BundlePoint) -> Result<Vec<BundlePoint>> {
        let l = self.length(p);
        Ok(self.dom(p)?.into_iter().filter(|y| self.length(*y) >= l).collect())
    }

    /// `true` if the points meet every orbit exactly once and are connected by AR arrows.
    pub fn is_slice(&self, points: &[BundlePoint]) -> bool {
        let mut orbits: Vec<OrbitId> = points.iter().map(|p| p.orbit).collect();
        orbits.sort();
        orbits.dedup();
        if orbits.len() != points.len() || orbits.len() != self.orbits().len() {
            return false;
        }
        self.is_connected(points)
    }

    pub(crate) fn is_connected(&self, points: &[BundlePoint]) -> bool {
        if points.is_empty() {
            return true;
        }
        let mut seen = vec![false; points.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..points.len() {
                if !seen[j] && (self.is_arrow(points[i], points[j]) || self.is_arrow(points[j], points[i])) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `O(l1,l2,l3,l)` for line bundles, `E{k}[m]` for rank-two points.
    pub fn format_point(&self, p: BundlePoint) -> String {
        match self.line_element(p) {
            Some(x) => {
                let [l1, l2, l3, l] = x.to_array();
                format!("O({l1},{l2},{l3},{l})")
            }
            None => p.to_string(),
        }
    }

    /// Parses `O(l1,l2,l3,l)`, `O(<element>)`, `E{k}[m]` (or `E{k}` for `m = 0`),
    /// and the orbit forms `L1[m]`, `L1p[m]`, `Ln1[m]`, `Ln1p[m]`.
    pub fn parse_point(&self, input: &str) -> Result<BundlePoint> {
        let s = input.trim();
        let lead = input.len() - input.trim_start().len();
        if let Some(rest) = s.strip_prefix("O(") {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::parse(lead + s.len(), "expected ')'"))?;
            let x = if inner.contains(',') {
                let raw = format!("[{inner}]");
                LElement::parse(self.weight(), &raw).map_err(|e| shift_parse(e, lead + 1))?
            } else {
                LElement::parse(self.weight(), inner).map_err(|e| shift_parse(e, lead + 2))?
            };
            return Ok(self.line_point(x));
        }
        let (head, m) = match s.find('[') {
            Some(i) => {
                let tail = &s[i + 1..];
                let num = tail
                    .strip_suffix(']')
                    .ok_or_else(|| Error::parse(lead + s.len(), "expected ']'"))?;
                let m = num
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| Error::parse(lead + i + 1, "expected an integer tau-power"))?;
                (&s[..i], m)
            }
            None => (s, 0),
        };
        let orbit = match head {
            "L1" => OrbitId::L1,
            "L1p" => OrbitId::L1p,
            "Ln1" => OrbitId::Ln1,
            "Ln1p" => OrbitId::Ln1p,
            h if h.starts_with('E') => {
                let k = h[1..]
                    .parse::<u32>()
                    .map_err(|_| Error::parse(lead + 1, "expected an orbit index after 'E'"))?;
                OrbitId::E(k)
            }
            _ => return Err(Error::parse(lead, "expected O(...), E{k}[m] or an orbit name")),
        };
        if !self.has_orbit(orbit) {
            return Err(Error::UnknownOrbit(orbit.to_string()));
        }
        Ok(BundlePoint::new(orbit, m))
    }
}

fn shift_parse(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

impl FromStr for OrbitId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L1" => Ok(OrbitId::L1),
            "L1p" => Ok(OrbitId::L1p),
            "Ln1" => Ok(OrbitId::Ln1),
            "Ln1p" => Ok(OrbitId::Ln1p),
            e if e.starts_with('E') => e[1..]
                .parse()
                .map(OrbitId::E)
                .map_err(|_| Error::parse(1, "expected an orbit index")),
            _ => Err(Error::parse(0, "unknown orbit")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::raw_box;

    fn pt(o: OrbitId, m: i64) -> BundlePoint {
        BundlePoint::new(o, m)
    }

    fn sorted(mut v: Vec<BundlePoint>) -> Vec<BundlePoint> {
        v.sort();
        v
    }

    #[test]
    fn orbit_count_and_lengths() {
        for n in 2..=8 {
            let wpl = Wpl::new(n).unwrap();
            assert_eq!(wpl.orbits().len(), n as usize + 3);
            assert_eq!(wpl.length(pt(OrbitId::L1p, 4)), 1);
            assert_eq!(wpl.length(pt(OrbitId::E(2), 0)), 2);
            assert_eq!(wpl.length(pt(OrbitId::Ln1, -3)), n as u32 + 1);
        }
    }

    #[test]
    fn line_points_round_trip() {
        for n in 2..=8 {
            let wpl = Wpl::new(n).unwrap();
            for x in raw_box(wpl.weight(), 2) {
                let p = wpl.line_point(x);
                assert_eq!(wpl.line_element(p), Some(x));
            }
            assert_eq!(wpl.line_point(wpl.zero()), pt(OrbitId::L1, 0));
            assert_eq!(wpl.line_point(wpl.x3()), pt(OrbitId::L1p, 0));
            assert_eq!(wpl.line_point(wpl.x1()), pt(OrbitId::Ln1, 0));
            assert_eq!(wpl.line_point(wpl.x2()), pt(OrbitId::Ln1p, 0));
            assert_eq!(wpl.line_point(-wpl.omega()), pt(OrbitId::L1, -1));
        }
    }

    #[test]
    fn tau_is_twist_by_omega_and_free() {
        let wpl = Wpl::new(4).unwrap();
        let o = pt(OrbitId::L1, 0);
        assert_eq!(o.tau(-1), pt(OrbitId::L1, -1));
        assert_eq!(wpl.class_of(o.tau(-1)), wpl.class_of_line(-wpl.omega()));
        for k in -5..=5 {
            assert_eq!(o.tau(k) == o, k == 0);
            let e = pt(OrbitId::E(2), 1);
            let shift = (1 + k) * wpl.omega();
            let expect = wpl.class_of_line(shift) + wpl.class_of_line(-wpl.omega() + shift);
            assert_eq!(wpl.class_of(e.tau(k)), expect);
        }
    }

    #[test]
    fn rank_two_classes() {
        for n in 2..=8 {
            let wpl = Wpl::new(n).unwrap();
            let e2 = wpl.class_of(pt(OrbitId::E(2), 0));
            assert_eq!(e2, wpl.class_of_line(wpl.zero()) + wpl.class_of_line(-wpl.omega()));
            for k in 2..=n as u32 {
                for m in -2..=2 {
                    let c = wpl.class_of(pt(OrbitId::E(k), m));
                    assert_eq!(c.rank(), 2);
                    assert_eq!(wpl.euler(&c, &c), 1);
                }
            }
        }
    }

    #[test]
    fn classes_are_additive_on_meshes() {
        for n in 2..=7 {
            let wpl = Wpl::new(n).unwrap();
            for o in wpl.orbits() {
                for m in -3..=3 {
                    let x = pt(o, m);
                    let mid = wpl
                        .predecessors(x)
                        .into_iter()
                        .map(|p| wpl.class_of(p))
                        .fold(crate::k0::K0Class::zero(wpl.weight()), |a, b| a + b);
                    assert_eq!(wpl.class_of(x) + wpl.class_of(x.tau(1)), mid, "mesh at {x}");
                }
            }
        }
    }

    #[test]
    fn arrows_out_of_rank_two_points() {
        for n in 2..=7u32 {
            let wpl = Wpl::new(i64::from(n)).unwrap();
            for k in 2..=n {
                let out = wpl.successors(pt(OrbitId::E(k), 0)).len();
                let expect = match (k == 2, k == n) {
                    (true, true) => 4,
                    (true, false) | (false, true) => 3,
                    (false, false) => 2,
                };
                assert_eq!(out, expect, "E{k}");
            }
        }
    }

    #[test]
    fn n3_example_slices() {
        let wpl = Wpl::new(3).unwrap();
        let l = pt(OrbitId::L1, 0);
        let e3 = pt(OrbitId::E(3), 0);
        let from_l = ["O(0,0,0,0)", "O(1,0,0,0)", "O(0,1,0,0)", "O(0,0,1,0)", "E2[0]", "E3[0]"];
        let from_l: Vec<_> = from_l.iter().map(|s| wpl.parse_point(s).unwrap()).collect();
        assert_eq!(sorted(wpl.slice_from(l).unwrap()), sorted(from_l));

        let from_e3 = vec![
            e3,
            pt(OrbitId::E(2), -1),
            pt(OrbitId::Ln1, 0),
            pt(OrbitId::Ln1p, 0),
            pt(OrbitId::L1p, -1),
            pt(OrbitId::L1, -2),
        ];
        assert_eq!(sorted(wpl.slice_from(e3).unwrap()), sorted(from_e3));

        let to_e3 = vec![
            l,
            pt(OrbitId::Ln1, 1),
            pt(OrbitId::Ln1p, 1),
            pt(OrbitId::L1p, 1),
            pt(OrbitId::E(2), 0),
            e3,
        ];
        assert_eq!(sorted(wpl.slice_to(e3).unwrap()), sorted(to_e3));
    }

    #[test]
    fn simplified_slices_agree_with_definition() {
        for n in 2..=5 {
            let wpl = Wpl::new(n).unwrap();
            for k in 2..=n as u32 {
                let e = pt(OrbitId::E(k), 1);
                assert_eq!(
                    sorted(wpl.slice_from_simplified(e).unwrap()),
                    sorted(wpl.slice_from_definitional(e).unwrap())
                );
                assert_eq!(
                    sorted(wpl.slice_to_simplified(e).unwrap()),
                    sorted(wpl.slice_to_definitional(e).unwrap())
                );
            }
            assert!(wpl.slice_from_simplified(pt(OrbitId::L1, 0)).is_err());
        }
    }

    #[test]
    fn slices_are_slices_and_contain_source() {
        for n in 2..=6 {
            let wpl = Wpl::new(n).unwrap();
            for o in wpl.orbits() {
                let p = pt(o, 2);
                for s in [wpl.slice_from(p).unwrap(), wpl.slice_to(p).unwrap()] {
                    assert!(s.contains(&p));
                    assert!(wpl.is_slice(&s), "slice of {p}");
                }
            }
        }
    }

    #[test]
    fn n3_example_domain() {
        let wpl = Wpl::new(3).unwrap();
        let e3 = pt(OrbitId::E(3), 0);
        let expect = vec![
            pt(OrbitId::L1, 0),
            pt(OrbitId::L1, -1),
            pt(OrbitId::L1, -2),
            pt(OrbitId::L1p, 1),
            pt(OrbitId::L1p, 0),
            pt(OrbitId::L1p, -1),
            pt(OrbitId::E(2), 0),
            pt(OrbitId::E(2), -1),
            e3,
            pt(OrbitId::Ln1, 1),
            pt(OrbitId::Ln1, 0),
            pt(OrbitId::Ln1p, 1),
            pt(OrbitId::Ln1p, 0),
        ];
        assert_eq!(sorted(wpl.dom(e3).unwrap()), sorted(expect));
        let plus = wpl.dom_plus(e3).unwrap();
        let minus = wpl.dom_minus(e3).unwrap();
        assert!(plus.contains(&e3) && minus.contains(&e3));
        assert_eq!(plus.len(), 9);
        assert_eq!(minus.len(), 5);
    }

    #[test]
    fn parse_and_format_points() {
        let wpl = Wpl::new(4).unwrap();
        for s in ["E3[-2]", "E2[0]", "O(1,0,3,-2)", "O(0,0,0,0)"] {
            let p = wpl.parse_point(s).unwrap();
            assert_eq!(wpl.format_point(p), s);
        }
        assert_eq!(wpl.parse_point("E4").unwrap(), pt(OrbitId::E(4), 0));
        assert_eq!(wpl.parse_point("O(x1-x2)").unwrap(), wpl.line_point(wpl.torsion()));
        assert_eq!(wpl.parse_point("L1p[3]").unwrap(), pt(OrbitId::L1p, 3));
        assert!(matches!(wpl.parse_point("E5[0]"), Err(Error::UnknownOrbit(_))));
        assert!(matches!(wpl.parse_point("E3[x]"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(wpl.parse_point("O(1,0,q,0)"), Err(Error::Parse { .. })));
        assert!(matches!(wpl.parse_point("F2"), Err(Error::Parse { pos: 0, .. })));
    }
}
