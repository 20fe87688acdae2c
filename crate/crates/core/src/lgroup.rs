//! The rank-one abelian group L of a weighted projective line of type (2,2,n).
//!
//! L is generated by `x1`, `x2`, `x3` subject to `2*x1 = 2*x2 = n*x3 = c`.
//! Every element has a unique normal form `l1*x1 + l2*x2 + l3*x3 + l*c`
//! with `0 <= l1, l2 <= 1`, `0 <= l3 <= n-1` and `l` an arbitrary integer,
//! and [`LElement`] only ever stores that normal form. The group has torsion
//! (`x1 - x2` has order two), so it is never modelled as a free group.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The weight triple (2,2,n), identified by its third entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Weight(u32);

impl Weight {
    pub fn new(n: i64) -> Result<Self> {
        if !(2..=i64::from(u16::MAX)).contains(&n) {
            return Err(Error::InvalidWeight(n));
        }
        Ok(Weight(n as u32))
    }

    pub fn n(self) -> u32 {
        self.0
    }

    /// `lcm(2, n)`, the degree of `c`.
    pub fn lcm(self) -> i64 {
        2i64.lcm(&i64::from(self.0))
    }

    /// Number of indecomposable summands of a tilting bundle, and the rank of K0.
    pub fn rank_k0(self) -> usize {
        self.0 as usize + 3
    }
}

impl TryFrom<i64> for Weight {
    type Error = Error;

    fn try_from(n: i64) -> Result<Self> {
        Weight::new(n)
    }
}

impl From<Weight> for i64 {
    fn from(w: Weight) -> i64 {
        i64::from(w.0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(2,2,{})", self.0)
    }
}

/// An element of L in normal form.
///
/// The derived `Ord` is a total order on representatives used for sorting;
/// the group's own partial order is [`LElement::leq`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LElement {
    weight: Weight,
    l: i64,
    l1: u8,
    l2: u8,
    l3: u32,
}

impl LElement {
    /// Normal form of `a1*x1 + a2*x2 + a3*x3 + a*c`.
    pub fn normalize(weight: Weight, a1: i64, a2: i64, a3: i64, a: i64) -> Self {
        let n = i64::from(weight.n());
        let (q1, r1) = a1.div_mod_floor(&2);
        let (q2, r2) = a2.div_mod_floor(&2);
        let (q3, r3) = a3.div_mod_floor(&n);
        LElement {
            weight,
            l1: r1 as u8,
            l2: r2 as u8,
            l3: r3 as u32,
            l: a + q1 + q2 + q3,
        }
    }

    pub fn zero(weight: Weight) -> Self {
        Self::normalize(weight, 0, 0, 0, 0)
    }

    pub fn x1(weight: Weight) -> Self {
        Self::normalize(weight, 1, 0, 0, 0)
    }

    pub fn x2(weight: Weight) -> Self {
        Self::normalize(weight, 0, 1, 0, 0)
    }

    pub fn x3(weight: Weight) -> Self {
        Self::normalize(weight, 0, 0, 1, 0)
    }

    /// The canonical element `c`.
    pub fn canonical(weight: Weight) -> Self {
        Self::normalize(weight, 0, 0, 0, 1)
    }

    /// The dualizing element `omega = c - x1 - x2 - x3`.
    pub fn omega(weight: Weight) -> Self {
        Self::normalize(weight, -1, -1, -1, 1)
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    /// `(l1, l2, l3, l)`.
    pub fn components(&self) -> (i64, i64, i64, i64) {
        (
            i64::from(self.l1),
            i64::from(self.l2),
            i64::from(self.l3),
            self.l,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.l1 == 0 && self.l2 == 0 && self.l3 == 0 && self.l == 0
    }

    /// `x >= 0` iff the coefficient of `c` in normal form is non-negative.
    pub fn is_nonneg(&self) -> bool {
        self.l >= 0
    }

    /// `self <= other` in the partial order of L.
    pub fn leq(&self, other: &LElement) -> bool {
        (*other - *self).is_nonneg()
    }

    /// The degree homomorphism with `delta(x1) = delta(x2) = lcm(2,n)/2` and
    /// `delta(x3) = lcm(2,n)/n`.
    pub fn delta(&self) -> i64 {
        let lcm = self.weight.lcm();
        let n = i64::from(self.weight.n());
        (i64::from(self.l1) + i64::from(self.l2)) * (lcm / 2) + i64::from(self.l3) * (lcm / n) + self.l * lcm
    }

    pub fn checked_add(self, other: LElement) -> Result<LElement> {
        self.same_weight(&other)?;
        let (a1, a2, a3, a) = self.components();
        let (b1, b2, b3, b) = other.components();
        Ok(Self::normalize(self.weight, a1 + b1, a2 + b2, a3 + b3, a + b))
    }

    pub fn checked_sub(self, other: LElement) -> Result<LElement> {
        self.checked_add(-other)
    }

    fn same_weight(&self, other: &LElement) -> Result<()> {
        if self.weight != other.weight {
            return Err(Error::MixedWeights {
                left: self.weight.n(),
                right: other.weight.n(),
            });
        }
        Ok(())
    }

    /// `[l1, l2, l3, l]`.
    pub fn to_array(&self) -> [i64; 4] {
        let (l1, l2, l3, l) = self.components();
        [l1, l2, l3, l]
    }

    /// Accepts any integer 4-tuple and normalizes it.
    pub fn from_array(weight: Weight, raw: [i64; 4]) -> Self {
        Self::normalize(weight, raw[0], raw[1], raw[2], raw[3])
    }

    /// Parses either the textual form `l1*x1+l2*x2+l3*x3+l*c` (any integer
    /// combination of `x1`, `x2`, `x3`, `c` and `w` for omega, in any order)
    /// or a JSON-style array `[l1,l2,l3,l]`.
    pub fn parse(weight: Weight, input: &str) -> Result<Self> {
        let trimmed = input.trim_start();
        let offset = input.len() - trimmed.len();
        if trimmed.starts_with('[') {
            let raw: Vec<i64> = serde_json::from_str(trimmed)
                .map_err(|e| Error::parse(offset + e.column().saturating_sub(1), e.to_string()))?;
            let raw: [i64; 4] = raw
                .try_into()
                .map_err(|v: Vec<i64>| Error::parse(offset, format!("expected 4 entries, found {}", v.len())))?;
            return Ok(Self::from_array(weight, raw));
        }
        TermParser::new(weight, input).parse()
    }
}

struct TermParser<'a> {
    weight: Weight,
    src: &'a [u8],
    pos: usize,
}

impl<'a> TermParser<'a> {
    fn new(weight: Weight, src: &'a str) -> Self {
        TermParser {
            weight,
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<LElement> {
        let mut acc = [0i64; 4];
        let mut first = true;
        loop {
            let mut sign = 1i64;
            let mut saw_op = false;
            while let Some(ch @ (b'+' | b'-')) = self.peek() {
                if ch == b'-' {
                    sign = -sign;
                }
                saw_op = true;
                self.pos += 1;
            }
            if !first && !saw_op {
                return Err(Error::parse(self.pos, "expected '+' or '-'"));
            }
            let start = self.pos;
            let coef = self.number()?;
            if coef.is_some() && self.peek() == Some(b'*') {
                self.pos += 1;
            }
            let gen_pos = self.pos;
            let gen = self.generator().ok_or_else(|| {
                if gen_pos == start && self.peek().is_none() {
                    Error::parse(gen_pos, "unexpected end of input")
                } else {
                    Error::parse(gen_pos, "expected one of x1, x2, x3, c, w")
                }
            })?;
            let k = sign
                .checked_mul(coef.unwrap_or(1))
                .ok_or_else(|| Error::parse(start, "coefficient overflow"))?;
            match gen {
                Gen::X(i) => acc[i] += k,
                Gen::C => acc[3] += k,
                Gen::Omega => {
                    acc[0] -= k;
                    acc[1] -= k;
                    acc[2] -= k;
                    acc[3] += k;
                }
            }
            first = false;
            if self.peek().is_none() {
                break;
            }
        }
        Ok(LElement::from_array(self.weight, acc))
    }

    fn number(&mut self) -> Result<Option<i64>> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse()
            .map(Some)
            .map_err(|_| Error::parse(start, "integer out of range"))
    }

    fn generator(&mut self) -> Option<Gen> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let (gen, len) = match rest {
            [b'x', d @ b'1'..=b'3', ..] => (Gen::X((d - b'1') as usize), 2),
            [b'c', ..] => (Gen::C, 1),
            [b'w', ..] => (Gen::Omega, 1),
            _ => return None,
        };
        self.pos += len;
        Some(gen)
    }
}

enum Gen {
    X(usize),
    C,
    Omega,
}

impl fmt::Display for LElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*x1+{}*x2+{}*x3+{}*c", self.l1, self.l2, self.l3, self.l)
    }
}

impl Add for LElement {
    type Output = LElement;

    fn add(self, rhs: LElement) -> LElement {
        self.checked_add(rhs).expect("group elements of different weights")
    }
}

impl Sub for LElement {
    type Output = LElement;

    fn sub(self, rhs: LElement) -> LElement {
        self + (-rhs)
    }
}

impl Neg for LElement {
    type Output = LElement;

    fn neg(self) -> LElement {
        let (a1, a2, a3, a) = self.components();
        Self::normalize(self.weight, -a1, -a2, -a3, -a)
    }
}

impl Mul<LElement> for i64 {
    type Output = LElement;

    fn mul(self, rhs: LElement) -> LElement {
        let (a1, a2, a3, a) = rhs.components();
        LElement::normalize(rhs.weight, self * a1, self * a2, self * a3, self * a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(n: i64) -> Weight {
        Weight::new(n).unwrap()
    }

    #[test]
    fn weight_rejects_small_n() {
        assert!(matches!(Weight::new(1), Err(Error::InvalidWeight(1))));
        assert!(Weight::new(2).is_ok());
    }

    #[test]
    fn normalize_examples() {
        let w3 = w(3);
        assert_eq!(LElement::normalize(w3, 2, 0, 0, 0).to_array(), [0, 0, 0, 1]);
        assert_eq!(LElement::normalize(w3, 0, 0, 0, 0).to_array(), [0, 0, 0, 0]);
        assert_eq!(LElement::normalize(w3, 1, -1, 0, 0).to_array(), [1, 1, 0, -1]);
    }

    #[test]
    fn add_and_neg_examples() {
        for n in 2..=8 {
            let wn = w(n);
            let x3 = LElement::x3(wn);
            assert_eq!(x3 + (n - 1) * x3, LElement::canonical(wn));
            let x1 = LElement::x1(wn);
            assert_eq!((-x1).to_array(), [1, 0, 0, -1]);
            assert!((x1 + -x1).is_zero());
        }
    }

    #[test]
    fn omega_and_delta_examples() {
        let w3 = w(3);
        assert_eq!(LElement::omega(w3).to_array(), [1, 1, 2, -2]);
        assert_eq!(LElement::omega(w3).delta(), -2);
        assert_eq!(LElement::canonical(w3).to_array(), [0, 0, 0, 1]);
        let w4 = w(4);
        assert_eq!(LElement::x1(w4).delta(), 2);
        assert_eq!(LElement::x3(w4).delta(), 1);
        for n in 2..=8 {
            let wn = w(n);
            assert_eq!(LElement::zero(wn).delta(), 0);
            assert_eq!(LElement::canonical(wn).delta(), wn.lcm());
            assert_eq!(LElement::omega(wn).delta(), -wn.lcm() / n);
        }
    }

    #[test]
    fn order_examples() {
        let w3 = w(3);
        let d = LElement::x1(w3) - LElement::x2(w3);
        assert!(!d.is_nonneg());
        assert!(LElement::zero(w3).is_nonneg());
    }

    #[test]
    fn mixed_weights_rejected() {
        let a = LElement::x1(w(3));
        let b = LElement::x1(w(4));
        assert!(matches!(a.checked_add(b), Err(Error::MixedWeights { .. })));
    }

    #[test]
    fn parse_text_and_array() {
        let w3 = w(3);
        let omega = LElement::omega(w3);
        assert_eq!(LElement::parse(w3, &omega.to_string()).unwrap(), omega);
        assert_eq!(LElement::parse(w3, "w").unwrap(), omega);
        assert_eq!(LElement::parse(w3, "c - x1 - x2 - x3").unwrap(), omega);
        assert_eq!(LElement::parse(w3, "[-1,-1,-1,1]").unwrap(), omega);
        assert_eq!(LElement::parse(w3, " 3*x3 ").unwrap(), LElement::canonical(w3));
        assert_eq!(LElement::parse(w3, "-x1").unwrap(), -LElement::x1(w3));
    }

    #[test]
    fn parse_errors_report_position() {
        let w3 = w(3);
        match LElement::parse(w3, "x1+y2") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("unexpected {other:?}"),
        }
        match LElement::parse(w3, "x1 x2") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(LElement::parse(w3, "[1,2,3]").is_err());
        assert!(LElement::parse(w3, "").is_err());
    }

    fn relation_closure(n: i64, raw: [i64; 4], steps: i64) -> Vec<[i64; 4]> {
        let rels = [[2, 0, 0, -1], [0, 2, 0, -1], [0, 0, n, -1]];
        let mut out = Vec::new();
        for a in -steps..=steps {
            for b in -steps..=steps {
                for d in -steps..=steps {
                    let mut t = raw;
                    for (k, rel) in [a, b, d].iter().zip(rels.iter()) {
                        for i in 0..4 {
                            t[i] += k * rel[i];
                        }
                    }
                    out.push(t);
                }
            }
        }
        out
    }

    #[test]
    fn normal_form_of_x1_minus_x2_lies_in_its_relation_class() {
        // Brute force: (1,1,0,-1) is reachable from (1,-1,0,0) by adding relations.
        let class = relation_closure(3, [1, -1, 0, 0], 2);
        assert!(class.contains(&[1, 1, 0, -1]));
    }

    proptest! {
        #[test]
        fn normalize_is_constant_on_cosets(
            n in 2i64..=8,
            raw in proptest::array::uniform4(-20i64..=20),
            k in proptest::array::uniform3(-5i64..=5),
        ) {
            let wn = w(n);
            let base = LElement::from_array(wn, raw);
            let shifted = [
                raw[0] + 2 * k[0],
                raw[1] + 2 * k[1],
                raw[2] + n * k[2],
                raw[3] - k[0] - k[1] - k[2],
            ];
            prop_assert_eq!(LElement::from_array(wn, shifted), base);
            prop_assert_eq!(LElement::from_array(wn, base.to_array()), base);
        }

        #[test]
        fn group_axioms(
            n in 2i64..=8,
            a in proptest::array::uniform4(-9i64..=9),
            b in proptest::array::uniform4(-9i64..=9),
            c in proptest::array::uniform4(-9i64..=9),
        ) {
            let wn = w(n);
            let (a, b, c) = (LElement::from_array(wn, a), LElement::from_array(wn, b), LElement::from_array(wn, c));
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert!((a + -a).is_zero());
            prop_assert_eq!(a + LElement::zero(wn), a);
            prop_assert_eq!((a + b).delta(), a.delta() + b.delta());
        }

        #[test]
        fn text_round_trip(n in 2i64..=8, raw in proptest::array::uniform4(-50i64..=50)) {
            let wn = w(n);
            let a = LElement::from_array(wn, raw);
            prop_assert_eq!(LElement::parse(wn, &a.to_string()).unwrap(), a);
            let json = serde_json::to_string(&a.to_array()).unwrap();
            prop_assert_eq!(LElement::parse(wn, &json).unwrap(), a);
        }
    }
}
