//! Canonical-form arithmetic in the Grassmann algebra on generators
//! `xi_1..xi_N, eta_1..eta_N` and in its Clifford-type deformation where
//! `eta_i xi_j = h*delta_ij - xi_j eta_i`.
//!
//! Canonical generator order: all `xi` (ascending index) before all `eta`
//! (ascending index). Odd partial derivatives use the left convention:
//! anticommute the generator to the front, then strike it.

use crate::coeff::Coefficient;
use crate::poly::{Mono, Param, Poly};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Largest supported generator index per species.
pub const MAX_INDEX: u8 = 8;

/// One odd generator, 1-based index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum OddVar {
    Xi(u8),
    Eta(u8),
}

impl OddVar {
    fn bit(self) -> u16 {
        match self {
            OddVar::Xi(i) => {
                assert!((1..=MAX_INDEX).contains(&i), "xi index out of range");
                1 << (i - 1)
            }
            OddVar::Eta(i) => {
                assert!((1..=MAX_INDEX).contains(&i), "eta index out of range");
                1 << (MAX_INDEX + i - 1)
            }
        }
    }

    fn from_bit(pos: u32) -> OddVar {
        if pos < u32::from(MAX_INDEX) {
            OddVar::Xi(pos as u8 + 1)
        } else {
            OddVar::Eta((pos - u32::from(MAX_INDEX)) as u8 + 1)
        }
    }

    pub fn index(self) -> u8 {
        match self {
            OddVar::Xi(i) | OddVar::Eta(i) => i,
        }
    }
}

impl fmt::Display for OddVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OddVar::Xi(i) => write!(f, "x{i}"),
            OddVar::Eta(i) => write!(f, "y{i}"),
        }
    }
}

/// Square-free product of odd generators in canonical order, as a bitmask.
/// Bit positions increase in the canonical generator order, so the numeric
/// value is a valid tiebreaker for term ordering.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct OddMonomial(u16);

impl OddMonomial {
    pub const ONE: OddMonomial = OddMonomial(0);

    /// Builds from an ordered word; `None` when a generator repeats (the
    /// square is zero). The sign reorders the word into canonical form.
    pub fn from_word(word: &[OddVar]) -> Option<(i8, OddMonomial)> {
        let mut mask: u16 = 0;
        let mut sign = 1i8;
        for v in word {
            let b = v.bit();
            if mask & b != 0 {
                return None;
            }
            // transpositions needed to move v past the already-placed
            // generators that are greater than it
            let higher = mask >> v.bit().trailing_zeros() >> 1;
            if higher.count_ones() % 2 == 1 {
                sign = -sign;
            }
            mask |= b;
        }
        Some((sign, OddMonomial(mask)))
    }

    pub fn vars(self) -> impl Iterator<Item = OddVar> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let pos = rest.trailing_zeros();
                rest &= rest - 1;
                Some(OddVar::from_bit(pos))
            }
        })
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    /// True for odd parity.
    pub fn is_odd(self) -> bool {
        self.degree() % 2 == 1
    }

    pub fn contains(self, v: OddVar) -> bool {
        self.0 & v.bit() != 0
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    /// Grassmann product; `None` when a generator repeats.
    pub fn mul(self, other: OddMonomial) -> Option<(i8, OddMonomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // inversions between the two sorted masks
        let mut sign = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let pos = rest.trailing_zeros();
            sign += (self.0 >> pos >> 1).count_ones();
            rest &= rest - 1;
        }
        let m = OddMonomial(self.0 | other.0);
        Some((if sign % 2 == 0 { 1 } else { -1 }, m))
    }

    /// Left derivative by `v`: `None` when `v` is absent.
    pub fn derivative(self, v: OddVar) -> Option<(i8, OddMonomial)> {
        let b = v.bit();
        if self.0 & b == 0 {
            return None;
        }
        let before = (self.0 & (b - 1)).count_ones();
        let sign = if before % 2 == 0 { 1 } else { -1 };
        Some((sign, OddMonomial(self.0 & !b)))
    }

    /// Swaps `xi_i` with `eta_i` for every index, re-sorting with the sign.
    pub fn swap_xi_eta(self) -> (i8, OddMonomial) {
        let word: Vec<OddVar> = self
            .vars()
            .map(|v| match v {
                OddVar::Xi(i) => OddVar::Eta(i),
                OddVar::Eta(i) => OddVar::Xi(i),
            })
            .collect();
        OddMonomial::from_word(&word).expect("swap keeps generators distinct")
    }

    pub fn to_text(self) -> String {
        self.vars()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Element of the (possibly deformed) Grassmann algebra.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LambdaElement {
    terms: BTreeMap<OddMonomial, Coefficient>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParityClass {
    Even,
    Odd,
    Mixed,
}

impl LambdaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(OddMonomial::ONE)
    }

    pub fn generator(v: OddVar) -> Self {
        Self::monomial(OddMonomial::from_word(&[v]).unwrap().1)
    }

    pub fn monomial(m: OddMonomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, Coefficient::one());
        LambdaElement { terms }
    }

    pub fn scalar(c: Coefficient) -> Self {
        let mut out = LambdaElement::zero();
        out.add_term(OddMonomial::ONE, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OddMonomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: OddMonomial, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LambdaElement {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Coefficient) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        LambdaElement {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn parity(&self) -> ParityClass {
        let mut seen_even = false;
        let mut seen_odd = false;
        for m in self.terms.keys() {
            if m.is_odd() {
                seen_odd = true;
            } else {
                seen_even = true;
            }
        }
        match (seen_even, seen_odd) {
            (true, true) => ParityClass::Mixed,
            (false, true) => ParityClass::Odd,
            _ => ParityClass::Even,
        }
    }

    /// Product in the deformed algebra; the deformation parameter enters as
    /// the formal `h`.
    pub fn mul_h(&self, other: &Self) -> Self {
        let mut out = LambdaElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1 * c2;
                let word: Vec<OddVar> = m1.vars().chain(m2.vars()).collect();
                for (sign, h_pow, mono) in reduce_word(&word) {
                    let mut factor = Coefficient::from_int(i64::from(sign));
                    if h_pow > 0 {
                        factor = &factor
                            * &Coefficient::from_poly(Poly::term(
                                Scalar::one(),
                                Mono::var_pow(Param::H, h_pow),
                            ));
                    }
                    out.add_term(mono, &c * &factor);
                }
            }
        }
        out
    }

    /// Plain Grassmann product (the `h = 0` specialization).
    pub fn mul_plain(&self, other: &Self) -> Self {
        let mut out = LambdaElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((sign, m)) = m1.mul(*m2) {
                    out.add_term(m, &(c1 * c2) * &Coefficient::from_int(i64::from(sign)));
                }
            }
        }
        out
    }

    /// Left odd derivative, extended linearly.
    pub fn odd_derivative(&self, v: OddVar) -> Self {
        let mut out = LambdaElement::zero();
        for (m, c) in &self.terms {
            if let Some((sign, dm)) = m.derivative(v) {
                out.add_term(dm, c * &Coefficient::from_int(i64::from(sign)));
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    format!("{c}")
                } else if c.is_one() {
                    m.to_text()
                } else if c.needs_parens() {
                    format!("({c}) {}", m.to_text())
                } else {
                    format!("{c} {}", m.to_text())
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for LambdaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Rewrites an arbitrary word of odd generators into canonical form under
/// `xi_i xi_j = -xi_j xi_i`, `eta_i eta_j = -eta_j eta_i` and
/// `eta_i xi_j = h*delta_ij - xi_j eta_i`. Returns `(sign, h_power, mask)`
/// summands.
fn reduce_word(word: &[OddVar]) -> Vec<(i8, u32, OddMonomial)> {
    let mut out = Vec::new();
    let mut stack: Vec<(i8, u32, Vec<OddVar>)> = vec![(1, 0, word.to_vec())];
    'outer: while let Some((sign, h_pow, w)) = stack.pop() {
        for i in 0..w.len().saturating_sub(1) {
            let (u, v) = (w[i], w[i + 1]);
            if u < v {
                continue;
            }
            if u == v {
                // square of an odd generator
                continue 'outer;
            }
            // out of order: u > v
            let mut swapped = w.clone();
            swapped.swap(i, i + 1);
            stack.push((-sign, h_pow, swapped));
            if let (OddVar::Eta(a), OddVar::Xi(b)) = (u, v) {
                if a == b {
                    let mut contracted = w.clone();
                    contracted.drain(i..=i + 1);
                    stack.push((sign, h_pow + 1, contracted));
                }
            }
            continue 'outer;
        }
        // canonical: strictly ascending
        let mask = w.iter().fold(OddMonomial::ONE, |acc, v| {
            OddMonomial(acc.0 | v.bit())
        });
        out.push((sign, h_pow, mask));
    }
    out
}
