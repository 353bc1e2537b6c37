//! The Weyl algebra generated by Laurent polynomials in `t` and the Euler
//! derivation `d = t d/dt` (so `d t^n = t^n d + n t^n`), `(2|2)`-block
//! supermatrices over it, the two embeddings of the centrally extended big
//! `N = 4` family, its spinor-like representation, and the 17 matrices
//! realizing the one-parameter exceptional family.

use crate::coeff::Coefficient;
use crate::contact::{k4_cocycle, K4Label, K4_LABELS};
use crate::grassmann::{LambdaElement, OddMonomial, OddVar};
use crate::linalg::SparseVec;
use crate::poly::Param;
use crate::psymbols::PSymbol;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum WeylError {
    #[error("matrix has mixed block parity")]
    MixedParity,
    #[error("entry ({0},{1}) violates the degree-zero block shape: {2}")]
    ShapeViolation(usize, usize, String),
}

// ---------------------------------------------------------------------------
// WeylElement
// ---------------------------------------------------------------------------

/// Element in the normal form `sum c * t^a d^k` with all `d` to the right.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct WeylElement {
    terms: BTreeMap<(i64, u32), Coefficient>,
}

impl WeylElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Coefficient::one(), 0, 0)
    }

    pub fn t_pow(a: i64) -> Self {
        Self::term(Coefficient::one(), a, 0)
    }

    pub fn d() -> Self {
        Self::term(Coefficient::one(), 0, 1)
    }

    pub fn scalar(c: Coefficient) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn term(c: Coefficient, t_exp: i64, d_pow: u32) -> Self {
        let mut out = Self::zero();
        out.add_term(t_exp, d_pow, c);
        out
    }

    pub fn add_term(&mut self, t_exp: i64, d_pow: u32, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((t_exp, d_pow)) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, u32), &Coefficient)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, k), c) in &other.terms {
            out.add_term(*a, *k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        WeylElement {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Coefficient) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        WeylElement {
            terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }

    /// Normal-ordered product: `d^k t^a = t^a (d + a)^k`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((a1, k1), c1) in &self.terms {
            for ((a2, k2), c2) in &other.terms {
                // t^a1 d^k1 t^a2 d^k2 = t^(a1+a2) (d + a2)^k1 d^k2
                let c = c1 * c2;
                // binomial expansion of (d + a2)^k1
                let mut binom: i128 = 1;
                for j in 0..=*k1 {
                    // binom = C(k1, j), with the power a2^(k1-j)
                    let a_pow = (i128::from(*a2)).pow(k1 - j);
                    let factor = Coefficient::from_scalar(Scalar::from_rational(
                        num_rational::BigRational::from_integer(num_bigint::BigInt::from(
                            binom * a_pow,
                        )),
                    ));
                    out.add_term(a1 + a2, j + k2, &c * &factor);
                    if j < *k1 {
                        binom = binom * i128::from(k1 - j) / i128::from(j + 1);
                    }
                }
            }
        }
        out
    }

    /// Action on `t^m`: `t^a d^k` sends it to `m^k t^(m+a)`.
    pub fn act_on_t_pow(&self, m: i64) -> Vec<(i64, Coefficient)> {
        let mut acc: BTreeMap<i64, Coefficient> = BTreeMap::new();
        for ((a, k), c) in &self.terms {
            let factor = Coefficient::from_int(m)
                .powi(i64::from(*k))
                .expect("nonnegative power");
            let value = c * &factor;
            if value.is_zero() {
                continue;
            }
            let e = acc.entry(m + a).or_insert_with(Coefficient::zero);
            *e = &*e + &value;
        }
        acc.retain(|_, c| !c.is_zero());
        acc.into_iter().collect()
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, ((a, k), c)) in self.terms.iter().enumerate() {
            let (c, neg) = match c.fold_minus() {
                Some(p) => (p, true),
                None => (c.clone(), false),
            };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            match a {
                0 => {}
                1 => factors.push("t".into()),
                e => factors.push(format!("t^{e}")),
            }
            match k {
                0 => {}
                1 => factors.push("d".into()),
                e => factors.push(format!("d^{e}")),
            }
            if factors.is_empty() {
                s.push_str(&format!("{c}"));
            } else {
                if !c.is_one() {
                    if c.needs_parens() {
                        s.push_str(&format!("({c})*"));
                    } else {
                        s.push_str(&format!("{c}*"));
                    }
                }
                s.push_str(&factors.join(" "));
            }
        }
        s
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

// ---------------------------------------------------------------------------
// WeylSuperMatrix
// ---------------------------------------------------------------------------

/// `4x4` matrix over the Weyl algebra with `(2|2)` block parity: rows and
/// columns 1-2 even, 3-4 odd.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct WeylSuperMatrix {
    entries: [[WeylElement; 4]; 4],
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MatrixParity {
    Even,
    Odd,
    Zero,
    Mixed,
}

impl WeylSuperMatrix {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `1_{2|2}`.
    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.entries[i][i] = WeylElement::one();
        }
        m
    }

    pub fn entry(&self, row: usize, col: usize) -> &WeylElement {
        &self.entries[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, e: WeylElement) {
        self.entries[row][col] = e;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(WeylElement::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.entries[i][j] = self.entries[i][j].add(&other.entries[i][j]);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.entries[i][j] = self.entries[i][j].neg();
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Coefficient) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.entries[i][j] = self.entries[i][j].scale(s);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = WeylElement::zero();
                for k in 0..4 {
                    acc = acc.add(&self.entries[i][k].mul(&other.entries[k][j]));
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    fn pos_is_odd(i: usize, j: usize) -> bool {
        (i < 2) != (j < 2)
    }

    pub fn parity(&self) -> MatrixParity {
        let mut even = false;
        let mut odd = false;
        for i in 0..4 {
            for j in 0..4 {
                if !self.entries[i][j].is_zero() {
                    if Self::pos_is_odd(i, j) {
                        odd = true;
                    } else {
                        even = true;
                    }
                }
            }
        }
        match (even, odd) {
            (false, false) => MatrixParity::Zero,
            (true, false) => MatrixParity::Even,
            (false, true) => MatrixParity::Odd,
            (true, true) => MatrixParity::Mixed,
        }
    }

    fn parity_bit(&self) -> Result<bool, WeylError> {
        match self.parity() {
            MatrixParity::Even | MatrixParity::Zero => Ok(false),
            MatrixParity::Odd => Ok(true),
            MatrixParity::Mixed => Err(WeylError::MixedParity),
        }
    }

    /// `[M1, M2] = M1 M2 - (-1)^(p1 p2) M2 M1`.
    pub fn bracket(&self, other: &Self) -> Result<Self, WeylError> {
        let p1 = self.parity_bit()?;
        let p2 = other.parity_bit()?;
        let ab = self.mul(other);
        let ba = other.mul(self);
        Ok(if p1 && p2 { ab.add(&ba) } else { ab.sub(&ba) })
    }

    /// Sparse view keyed by `(row, col, t_exp, d_pow)`.
    pub fn to_sparse(&self) -> SparseVec<(usize, usize, i64, u32)> {
        let mut out = SparseVec::new();
        for i in 0..4 {
            for j in 0..4 {
                for ((a, k), c) in self.entries[i][j].iter() {
                    out.insert((i, j, *a, *k), c.clone());
                }
            }
        }
        out
    }

    /// Action on a window basis vector: column slot `s` (basis order
    /// `v0, v3, v1, v2`), weight `m`. Returns `(slot, new_weight) ->
    /// coefficient` contributions.
    pub fn act_on_basis(&self, s: u8, m: i64) -> Vec<((u8, i64), Coefficient)> {
        let col = slot_to_pos(s);
        let mut out = Vec::new();
        for row in 0..4 {
            for (shift, c) in self.entries[row][col].act_on_t_pow(m) {
                out.push(((pos_to_slot(row), shift), c));
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = (0..4)
            .map(|i| (0..4).map(|j| self.entries[i][j].to_text()).collect())
            .collect();
        let widths: Vec<usize> = (0..4)
            .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(1))
            .collect();
        cells
            .iter()
            .map(|row| {
                let line = row
                    .iter()
                    .enumerate()
                    .map(|(j, c)| format!("{c:>w$}", w = widths[j]))
                    .collect::<Vec<_>>()
                    .join("  ");
                format!("[ {line} ]")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Debug for WeylSuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\n{}", self.to_text())
    }
}

/// Basis slot (`0, 3, 1, 2` = `v0, v12, v1, v2`) to matrix position.
fn slot_to_pos(s: u8) -> usize {
    match s {
        0 => 0,
        3 => 1,
        1 => 2,
        2 => 3,
        _ => panic!("slot out of range"),
    }
}

fn pos_to_slot(p: usize) -> u8 {
    match p {
        0 => 0,
        1 => 3,
        2 => 1,
        3 => 2,
        _ => panic!("position out of range"),
    }
}

// ---------------------------------------------------------------------------
// The embedding I
// ---------------------------------------------------------------------------

/// First matrix embedding of the centrally extended big `N = 4` family.
pub fn embed_i(label: K4Label, n: i64) -> WeylSuperMatrix {
    let t = WeylElement::t_pow;
    let tn = t(n);
    let d = WeylElement::d();
    // d t^n and t^n d in normal form
    let dtn = d.mul(&tn);
    let tnd = tn.mul(&d);
    let mut m = WeylSuperMatrix::zero();
    match label {
        K4Label::L => {
            m.set(0, 0, dtn.clone());
            m.set(1, 1, tnd.clone());
            m.set(2, 2, tnd.clone());
            m.set(3, 3, tnd);
        }
        K4Label::G3 => {
            for i in 0..4 {
                m.set(i, i, tn.clone());
            }
        }
        K4Label::R11 => {
            m.set(1, 1, tn.clone());
            m.set(2, 2, tn);
        }
        K4Label::R22 => {
            m.set(1, 1, tn.clone());
            m.set(3, 3, tn);
        }
        K4Label::R12 => m.set(2, 3, tn),
        K4Label::R21 => m.set(3, 2, tn),
        K4Label::G0 => m.set(0, 1, tn.neg()),
        K4Label::Q => m.set(1, 0, tn),
        K4Label::Y1 => {
            m.set(0, 2, dtn);
            m.set(3, 1, tn);
        }
        K4Label::Y2 => {
            m.set(0, 3, dtn);
            m.set(2, 1, tn.neg());
        }
        K4Label::X1 => {
            m.set(1, 3, tnd);
            m.set(2, 0, tn);
        }
        K4Label::X2 => {
            m.set(1, 2, tnd.neg());
            m.set(3, 0, tn);
        }
        K4Label::G1 => m.set(0, 3, tn.neg()),
        K4Label::G2 => m.set(0, 2, tn),
        K4Label::Z1 => m.set(1, 2, tn),
        K4Label::Z2 => m.set(1, 3, tn),
    }
    m
}

/// Second matrix embedding, expressed through `embed_i` by the dictionary
/// between the two spinor-like bases (verified independently against the
/// direct symbol action).
pub fn embed_j(label: K4Label, n: i64) -> WeylSuperMatrix {
    let i = embed_i;
    let nn = &Coefficient::from_int(n);
    match label {
        K4Label::L => i(K4Label::L, n)
            .sub(&i(K4Label::G3, n).scale(nn))
            .add(&i(K4Label::R11, n).scale(nn))
            .add(&i(K4Label::R22, n).scale(nn)),
        K4Label::Q => i(K4Label::G0, n),
        K4Label::R11 => i(K4Label::G3, n).sub(&i(K4Label::R11, n)),
        K4Label::R22 => i(K4Label::G3, n).sub(&i(K4Label::R22, n)),
        K4Label::R12 => i(K4Label::R21, n).neg(),
        K4Label::R21 => i(K4Label::R12, n).neg(),
        K4Label::G0 => i(K4Label::Q, n),
        K4Label::G3 => i(K4Label::G3, n),
        K4Label::Y1 => i(K4Label::X1, n).add(&i(K4Label::Z2, n).scale(nn)),
        K4Label::Y2 => i(K4Label::X2, n).sub(&i(K4Label::Z1, n).scale(nn)),
        K4Label::X1 => i(K4Label::Y1, n).sub(&i(K4Label::G2, n).scale(nn)),
        K4Label::X2 => i(K4Label::Y2, n).add(&i(K4Label::G1, n).scale(nn)),
        K4Label::Z1 => i(K4Label::G1, n),
        K4Label::Z2 => i(K4Label::G2, n),
        K4Label::G1 => i(K4Label::Z1, n),
        K4Label::G2 => i(K4Label::Z2, n),
    }
}

// ---------------------------------------------------------------------------
// The spinor-like representation
// ---------------------------------------------------------------------------

/// Vector in the representation space: coefficients on basis symbols
/// `v^s_m`, `s = 0..3` (`v^3` is the top exterior slot), `m` integer.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct VVector {
    terms: BTreeMap<(u8, i64), Coefficient>,
}

impl fmt::Debug for VVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((s, m), c)| format!("({c})*v{s}[{m}]"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl VVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(s: u8, m: i64) -> Self {
        assert!(s < 4);
        let mut v = Self::zero();
        v.add_term(s, m, Coefficient::one());
        v
    }

    pub fn add_term(&mut self, s: u8, m: i64, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((s, m)) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u8, i64), &Coefficient)> {
        self.terms.iter()
    }

    pub fn evaluate(
        &self,
        assign: &BTreeMap<Param, Scalar>,
    ) -> Result<VVector, crate::coeff::CoeffError> {
        let mut out = VVector::zero();
        for ((s, m), c) in &self.terms {
            out.add_term(*s, *m, c.evaluate(assign)?);
        }
        Ok(out)
    }
}

/// Action of the labeled fields on the representation space, with formal or
/// assigned `mu` and the deformation scale fixed to 1. Pairs not produced
/// by the symbol action are zero; the central mode (`G3`, 0) acts as the
/// identity.
pub fn rep_action(label: K4Label, n: i64, v: &VVector, mu: &Coefficient) -> VVector {
    let mut out = VVector::zero();
    let c_int = Coefficient::from_int;
    for ((s, m), c) in v.iter() {
        let weight = &c_int(*m) + mu; // m + mu
        let nweight = &c_int(n + m) + mu; // n + m + mu
        let push = |out: &mut VVector, s2: u8, factor: Coefficient| {
            out.add_term(s2, m + n, &factor * c);
        };
        match (label, s) {
            (K4Label::L, 0) => push(&mut out, 0, nweight),
            (K4Label::L, _) => push(&mut out, *s, weight),
            (K4Label::X1, 0) => push(&mut out, 1, Coefficient::one()),
            (K4Label::X1, 2) => push(&mut out, 3, weight),
            (K4Label::X2, 0) => push(&mut out, 2, Coefficient::one()),
            (K4Label::X2, 1) => push(&mut out, 3, -weight),
            (K4Label::Q, 0) => push(&mut out, 3, Coefficient::one()),
            (K4Label::Y1, 1) => push(&mut out, 0, nweight),
            (K4Label::Y1, 3) => push(&mut out, 2, Coefficient::one()),
            (K4Label::Y2, 2) => push(&mut out, 0, nweight),
            (K4Label::Y2, 3) => push(&mut out, 1, -Coefficient::one()),
            (K4Label::R11, 1) | (K4Label::R11, 3) => push(&mut out, *s, Coefficient::one()),
            (K4Label::R22, 2) | (K4Label::R22, 3) => push(&mut out, *s, Coefficient::one()),
            (K4Label::R12, 2) => push(&mut out, 1, Coefficient::one()),
            (K4Label::R21, 1) => push(&mut out, 2, Coefficient::one()),
            (K4Label::Z1, 1) => push(&mut out, 3, Coefficient::one()),
            (K4Label::Z2, 2) => push(&mut out, 3, Coefficient::one()),
            (K4Label::G0, 3) => push(&mut out, 0, -Coefficient::one()),
            (K4Label::G1, 2) => push(&mut out, 0, -Coefficient::one()),
            (K4Label::G2, 1) => push(&mut out, 0, Coefficient::one()),
            (K4Label::G3, _) => push(&mut out, *s, Coefficient::one()),
            _ => {}
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Direct symbol action on the representation space (oracle)
// ---------------------------------------------------------------------------

/// A field in operator form: optional antiderivative prefix around a finite
/// symbol body (deformation scale fixed to 1), plus an additive constant
/// part. This is the unexpanded form of the deformed family's fields.
pub struct SymbolOp {
    parts: Vec<(Coefficient, bool, PSymbol)>,
}

fn lambda_h1(word: &[OddVar]) -> LambdaElement {
    let mut assign = BTreeMap::new();
    assign.insert(Param::H, Scalar::one());
    let e = word.iter().fold(LambdaElement::one(), |acc, v| {
        acc.mul_h(&LambdaElement::generator(*v))
    });
    let mut out = LambdaElement::zero();
    for (m, c) in e.iter() {
        out.add_term(*m, c.evaluate(&assign).expect("no pole at h = 1"));
    }
    out
}

/// The labeled field as an operator, optionally with every `xi_i`
/// exchanged with `eta_i` (the second, swapped embedding).
pub fn k4_operator(label: K4Label, n: i64, swapped: bool) -> SymbolOp {
    use OddVar::{Eta, Xi};
    let sw = |v: OddVar| {
        if !swapped {
            v
        } else {
            match v {
                Xi(i) => Eta(i),
                Eta(i) => Xi(i),
            }
        }
    };
    let body = |t_exp: i64, tau_exp: i64, word: &[OddVar]| {
        let w: Vec<OddVar> = word.iter().map(|v| sw(*v)).collect();
        let mut s = PSymbol::zero();
        for (m, c) in lambda_h1(&w).iter() {
            s = s.add(&PSymbol::term(c.clone(), t_exp, tau_exp, *m));
        }
        s
    };
    let one = Coefficient::one;
    let parts = match label {
        K4Label::L => vec![(one(), false, body(n + 1, 1, &[]))],
        K4Label::Q => vec![(one(), false, body(n + 1, 1, &[Xi(1), Xi(2)]))],
        K4Label::X1 => vec![(one(), false, body(n + 1, 1, &[Xi(1)]))],
        K4Label::X2 => vec![(one(), false, body(n + 1, 1, &[Xi(2)]))],
        K4Label::Y1 => vec![(one(), false, body(n, 0, &[Eta(1)]))],
        K4Label::Y2 => vec![(one(), false, body(n, 0, &[Eta(2)]))],
        K4Label::R11 => vec![(one(), false, body(n, 0, &[Xi(1), Eta(1)]))],
        K4Label::R12 => vec![(one(), false, body(n, 0, &[Xi(1), Eta(2)]))],
        K4Label::R21 => vec![(one(), false, body(n, 0, &[Xi(2), Eta(1)]))],
        K4Label::R22 => vec![(one(), false, body(n, 0, &[Xi(2), Eta(2)]))],
        K4Label::Z1 => vec![(one(), false, body(n, 0, &[Xi(1), Xi(2), Eta(1)]))],
        K4Label::Z2 => vec![(one(), false, body(n, 0, &[Xi(1), Xi(2), Eta(2)]))],
        K4Label::G0 => vec![(one(), true, body(n - 1, 0, &[Eta(1), Eta(2)]))],
        K4Label::G1 => vec![(one(), true, body(n - 1, 0, &[Eta(1), Eta(2), Xi(1)]))],
        K4Label::G2 => vec![(one(), true, body(n - 1, 0, &[Eta(1), Eta(2), Xi(2)]))],
        K4Label::G3 => vec![
            (
                Coefficient::from_int(n),
                true,
                body(n - 1, 0, &[Eta(1), Eta(2), Xi(1), Xi(2)]),
            ),
            (one(), false, body(n, 0, &[])),
        ],
    };
    SymbolOp { parts }
}

/// Which slots carry the `1/(m + mu)` normalization.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisStyle {
    /// `v0` normalized (first embedding's basis).
    NormalizeV0,
    /// the top slot normalized (second embedding's basis).
    NormalizeV3,
}

fn slot_mask(s: u8) -> OddMonomial {
    match s {
        0 => OddMonomial::ONE,
        1 => OddMonomial::from_word(&[OddVar::Xi(1)]).unwrap().1,
        2 => OddMonomial::from_word(&[OddVar::Xi(2)]).unwrap().1,
        3 => OddMonomial::from_word(&[OddVar::Xi(1), OddVar::Xi(2)])
            .unwrap()
            .1,
        _ => panic!("slot out of range"),
    }
}

fn mask_slot(m: OddMonomial) -> Option<u8> {
    for s in 0..4 {
        if slot_mask(s) == m {
            return Some(s);
        }
    }
    None
}

fn is_normalized(style: BasisStyle, s: u8) -> bool {
    matches!(
        (style, s),
        (BasisStyle::NormalizeV0, 0) | (BasisStyle::NormalizeV3, 3)
    )
}

impl SymbolOp {
    /// Applies the operator to the basis vector `v^s_m` with formal or
    /// assigned `mu`, in the chosen basis normalization. The underlying
    /// function is `norm * t^(m+mu) * xi-monomial`; `xi` multiplies, `eta`
    /// differentiates, nonnegative `tau` powers differentiate in `t` and
    /// the antiderivative prefix undoes one. Returns slot/weight
    /// contributions, or `None` on a genuine pole.
    pub fn act(&self, s: u8, m: i64, mu: &Coefficient, style: BasisStyle) -> Option<VVector> {
        let mut out = VVector::zero();
        let weight = |mm: i64| &Coefficient::from_int(mm) + mu;
        let in_norm = if is_normalized(style, s) {
            let w = weight(m);
            if w.is_zero() {
                return None;
            }
            w.inv().ok()?
        } else {
            Coefficient::one()
        };
        for (scale, antider, body) in &self.parts {
            for (k, c) in body.iter() {
                debug_assert!(k.tau_exp >= 0, "operator bodies are differential");
                // odd action: Lambda(h=1) product, keep eta-free monomials
                let prod = LambdaElement::monomial(k.odd)
                    .mul_h(&LambdaElement::monomial(slot_mask(s)));
                let mut assign = BTreeMap::new();
                assign.insert(Param::H, Scalar::one());
                for (mask, mc) in prod.iter() {
                    let Some(s2) = mask_slot(*mask) else { continue };
                    let mc = mc.evaluate(&assign).expect("h = 1 has no pole");
                    // tau^b on t^(m+mu): falling factorial in the weight
                    let mut even_factor = Coefficient::one();
                    for j in 0..k.tau_exp {
                        even_factor = &even_factor * &(&weight(m) - &Coefficient::from_int(j));
                    }
                    let mut new_m = m - k.tau_exp + k.t_exp;
                    let mut coeff = &(&(c * &mc) * &even_factor) * &(&in_norm * scale);
                    if *antider {
                        // t^(E) -> t^(E+1)/(E+1)
                        let div = weight(new_m + 1);
                        if div.is_zero() {
                            return None;
                        }
                        coeff = coeff.checked_div(&div).ok()?;
                        new_m += 1;
                    }
                    if is_normalized(style, s2) {
                        coeff = &coeff * &weight(new_m);
                    }
                    out.add_term(s2, new_m, coeff);
                }
            }
        }
        Some(out)
    }
}

// ---------------------------------------------------------------------------
// The 17 exceptional-family matrices
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum GammaLabel {
    E1,
    F1,
    H1,
    E2,
    F2,
    H2,
    E3,
    F3,
    H3,
    T1,
    T2,
    T3,
    T4,
    D1,
    D2,
    D3,
    D4,
}

pub const GAMMA_LABELS: [GammaLabel; 17] = [
    GammaLabel::E1,
    GammaLabel::F1,
    GammaLabel::H1,
    GammaLabel::E2,
    GammaLabel::F2,
    GammaLabel::H2,
    GammaLabel::E3,
    GammaLabel::F3,
    GammaLabel::H3,
    GammaLabel::T1,
    GammaLabel::T2,
    GammaLabel::T3,
    GammaLabel::T4,
    GammaLabel::D1,
    GammaLabel::D2,
    GammaLabel::D3,
    GammaLabel::D4,
];

impl GammaLabel {
    pub fn is_odd(self) -> bool {
        matches!(
            self,
            GammaLabel::T1
                | GammaLabel::T2
                | GammaLabel::T3
                | GammaLabel::T4
                | GammaLabel::D1
                | GammaLabel::D2
                | GammaLabel::D3
                | GammaLabel::D4
        )
    }

    pub fn parse(s: &str) -> Option<GammaLabel> {
        GAMMA_LABELS
            .into_iter()
            .find(|l| format!("{l:?}") == s)
    }
}

impl fmt::Display for GammaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Direct transcription of the 17 matrices realizing the one-parameter
/// family inside the matrix form of the extended big `N = 4` algebra.
pub fn gamma_matrix(label: GammaLabel, alpha: &Coefficient) -> WeylSuperMatrix {
    let we = WeylElement::term;
    let one = Coefficient::one;
    // t^a (d + c): the recurring entry shape
    let dshift = |a: i64, c: Coefficient| {
        let mut e = WeylElement::term(one(), a, 1);
        e.add_term(a, 0, c);
        e
    };
    let mut m = WeylSuperMatrix::zero();
    match label {
        GammaLabel::T1 => {
            m.set(0, 2, dshift(1, one()));
            m.set(3, 1, we(one(), 1, 0));
        }
        GammaLabel::T2 => {
            m.set(0, 3, dshift(1, one()));
            m.set(2, 1, we(-one(), 1, 0));
        }
        GammaLabel::D1 => {
            m.set(1, 3, dshift(-1, alpha.clone()));
            m.set(2, 0, we(one(), -1, 0));
        }
        GammaLabel::D2 => {
            m.set(1, 2, dshift(-1, alpha.clone()).neg());
            m.set(3, 0, we(one(), -1, 0));
        }
        GammaLabel::T3 => {
            m.set(1, 3, dshift(1, one()));
            m.set(2, 0, we(one(), 1, 0));
        }
        GammaLabel::T4 => {
            m.set(1, 2, dshift(1, one()).neg());
            m.set(3, 0, we(one(), 1, 0));
        }
        GammaLabel::D3 => {
            m.set(0, 2, dshift(-1, alpha.clone()));
            m.set(3, 1, we(one(), -1, 0));
        }
        GammaLabel::D4 => {
            m.set(0, 3, dshift(-1, alpha.clone()));
            m.set(2, 1, we(-one(), -1, 0));
        }
        GammaLabel::E1 => {
            let upper = dshift(2, Coefficient::from_int(2));
            let lower = dshift(2, one());
            m.set(0, 0, upper.clone());
            m.set(1, 1, upper);
            m.set(2, 2, lower.clone());
            m.set(3, 3, lower);
        }
        GammaLabel::F1 => {
            let upper = dshift(-2, &alpha.clone() - &one());
            let lower = dshift(-2, alpha.clone());
            m.set(0, 0, upper.clone());
            m.set(1, 1, upper);
            m.set(2, 2, lower.clone());
            m.set(3, 3, lower);
        }
        GammaLabel::H1 => {
            let shift = &(&one() + alpha) * &Coefficient::from_ratio(1, 2);
            let e = dshift(0, shift);
            for i in 0..4 {
                m.set(i, i, e.clone());
            }
        }
        GammaLabel::E2 => m.set(1, 0, we(one(), 0, 0)),
        GammaLabel::F2 => m.set(0, 1, we(-one(), 0, 0)),
        GammaLabel::H2 => {
            m.set(0, 0, we(-one(), 0, 0));
            m.set(1, 1, we(one(), 0, 0));
        }
        GammaLabel::E3 => m.set(2, 3, we(one(), 0, 0)),
        GammaLabel::F3 => m.set(3, 2, we(one(), 0, 0)),
        GammaLabel::H3 => {
            m.set(2, 2, we(one(), 0, 0));
            m.set(3, 3, we(-one(), 0, 0));
        }
    }
    m
}

/// The same 17 matrices as combinations of `embed_i` images (the route the
/// bracket relations dictate); must agree with `gamma_matrix` entry for
/// entry.
pub fn gamma_matrix_combined(label: GammaLabel, alpha: &Coefficient) -> WeylSuperMatrix {
    use K4Label::*;
    let i = embed_i;
    let c = WeylSuperMatrix::identity();
    match label {
        GammaLabel::T1 => i(Y1, 1),
        GammaLabel::T2 => i(Y2, 1),
        GammaLabel::T3 => i(X1, 1).add(&i(Z2, 1)),
        GammaLabel::T4 => i(X2, 1).sub(&i(Z1, 1)),
        GammaLabel::D1 => i(X1, -1).add(&i(Z2, -1).scale(alpha)),
        GammaLabel::D2 => i(X2, -1).sub(&i(Z1, -1).scale(alpha)),
        GammaLabel::D3 => {
            i(Y1, -1).add(&i(G2, -1).scale(&(alpha + &Coefficient::one())))
        }
        GammaLabel::D4 => {
            i(Y2, -1).sub(&i(G1, -1).scale(&(alpha + &Coefficient::one())))
        }
        GammaLabel::E1 => i(L, 2).add(&i(R11, 2)).add(&i(R22, 2)),
        GammaLabel::F1 => i(L, -2)
            .add(&i(G3, -2).scale(&(alpha + &Coefficient::one())))
            .sub(&i(R11, -2))
            .sub(&i(R22, -2)),
        GammaLabel::H1 => i(L, 0).add(
            &c.scale(&(&(&Coefficient::one() + alpha) * &Coefficient::from_ratio(1, 2))),
        ),
        GammaLabel::E2 => i(Q, 0),
        GammaLabel::F2 => i(G0, 0),
        GammaLabel::H2 => i(R11, 0).add(&i(R22, 0)).sub(&c),
        GammaLabel::E3 => i(R12, 0),
        GammaLabel::F3 => i(R21, 0),
        GammaLabel::H3 => i(R11, 0).sub(&i(R22, 0)),
    }
}

// ---------------------------------------------------------------------------
// Degree-zero block shape
// ---------------------------------------------------------------------------

/// Verifies the degree-zero shape: constant entries only, the `d`-part
/// confined to a uniform scalar on the diagonal plus the twisted image of
/// the lower-left block in the upper-right one, and equal traces of the
/// scalar diagonal blocks.
pub fn grading_component(m: &WeylSuperMatrix) -> Result<(), WeylError> {
    let constant_part = |e: &WeylElement, i: usize, j: usize| -> Result<(Coefficient, Coefficient), WeylError> {
        let mut c0 = Coefficient::zero();
        let mut c1 = Coefficient::zero();
        for ((a, k), c) in e.iter() {
            if *a != 0 {
                return Err(WeylError::ShapeViolation(
                    i,
                    j,
                    format!("nonzero t-degree term t^{a} d^{k}"),
                ));
            }
            match k {
                0 => c0 = c.clone(),
                1 => c1 = c.clone(),
                _ => {
                    return Err(WeylError::ShapeViolation(i, j, format!("d-power {k} > 1")));
                }
            }
        }
        Ok((c0, c1))
    };
    let mut scalar = [[Coefficient::zero(), Coefficient::zero(), Coefficient::zero(), Coefficient::zero()],
        [Coefficient::zero(), Coefficient::zero(), Coefficient::zero(), Coefficient::zero()],
        [Coefficient::zero(), Coefficient::zero(), Coefficient::zero(), Coefficient::zero()],
        [Coefficient::zero(), Coefficient::zero(), Coefficient::zero(), Coefficient::zero()]];
    let mut dpart = scalar.clone();
    for i in 0..4 {
        for j in 0..4 {
            let (c0, c1) = constant_part(m.entry(i, j), i, j)?;
            scalar[i][j] = c0;
            dpart[i][j] = c1;
        }
    }
    // diagonal d-part: uniform scalar multiple of the identity
    let c = dpart[0][0].clone();
    for i in 0..4 {
        for j in 0..4 {
            let expected_uniform = i == j;
            if expected_uniform {
                if dpart[i][j] != c {
                    return Err(WeylError::ShapeViolation(
                        i,
                        j,
                        "diagonal d-part is not a uniform multiple of the identity".into(),
                    ));
                }
            } else if !(i < 2 && j >= 2) && !dpart[i][j].is_zero() {
                return Err(WeylError::ShapeViolation(
                    i,
                    j,
                    "d-part outside the diagonal and the upper-right block".into(),
                ));
            }
        }
    }
    // upper-right d-part must be the twist of the lower-left scalar block:
    // E11 -> E22, E22 -> E11, E12 -> -E12, E21 -> -E21
    let c_block = [
        [scalar[2][0].clone(), scalar[2][1].clone()],
        [scalar[3][0].clone(), scalar[3][1].clone()],
    ];
    let twisted = [
        [c_block[1][1].clone(), -&c_block[0][1]],
        [-&c_block[1][0], c_block[0][0].clone()],
    ];
    for bi in 0..2 {
        for bj in 0..2 {
            if dpart[bi][bj + 2] != twisted[bi][bj] {
                return Err(WeylError::ShapeViolation(
                    bi,
                    bj + 2,
                    "upper-right d-part does not match the twisted lower-left block".into(),
                ));
            }
        }
    }
    // trace condition on the scalar diagonal blocks
    let tr_a = &scalar[0][0] + &scalar[1][1];
    let tr_d = &scalar[2][2] + &scalar[3][3];
    if tr_a != tr_d {
        return Err(WeylError::ShapeViolation(
            0,
            0,
            "trace of the upper diagonal block differs from the lower".into(),
        ));
    }
    Ok(())
}

/// Convenience: the cocycle value paired with `embed_i` (same table as the
/// symbol realization).
pub fn matrix_cocycle(a: K4Label, n: i64, b: K4Label, k: i64) -> Coefficient {
    k4_cocycle().eval(a, n, b, k)
}

pub fn k4_label_list() -> [K4Label; 16] {
    K4_LABELS
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_normal_form() {
        let d = WeylElement::d();
        let t = WeylElement::t_pow(1);
        // d t = t d + t
        let got = d.mul(&t);
        let mut expect = WeylElement::term(Coefficient::one(), 1, 1);
        expect.add_term(1, 0, Coefficient::one());
        assert_eq!(got, expect);
        // d t^-1 = t^-1 d - t^-1
        let got = d.mul(&WeylElement::t_pow(-1));
        let mut expect = WeylElement::term(Coefficient::one(), -1, 1);
        expect.add_term(-1, 0, Coefficient::from_int(-1));
        assert_eq!(got, expect);
        // d^2 t = t d^2 + 2 t d + t
        let got = d.mul(&d).mul(&t);
        let mut expect = WeylElement::term(Coefficient::one(), 1, 2);
        expect.add_term(1, 1, Coefficient::from_int(2));
        expect.add_term(1, 0, Coefficient::one());
        assert_eq!(got, expect);
    }

    #[test]
    fn weyl_commutator_identity() {
        // d t^n - t^n d = n t^n
        for n in -6..=6i64 {
            let tn = WeylElement::t_pow(n);
            let d = WeylElement::d();
            let got = d.mul(&tn).sub(&tn.mul(&d));
            assert_eq!(got, tn.scale(&Coefficient::from_int(n)), "n = {n}");
        }
    }

    #[test]
    fn matrix_bracket_examples() {
        // [I(R12_0), I(R21_0)] = I(R11_0) - I(R22_0)
        let got = embed_i(K4Label::R12, 0)
            .bracket(&embed_i(K4Label::R21, 0))
            .unwrap();
        let expect = embed_i(K4Label::R11, 0).sub(&embed_i(K4Label::R22, 0));
        assert_eq!(got.to_sparse(), expect.to_sparse());
        // the constant diagonal is central
        for l in K4_LABELS {
            let m = embed_i(l, 2);
            let br = embed_i(K4Label::G3, 0).bracket(&m).unwrap();
            assert!(br.is_zero(), "{l}");
        }
        // odd self-bracket doubles the square
        let y = embed_i(K4Label::Y1, 1);
        let got = y.bracket(&y).unwrap();
        let expect = y.mul(&y).scale(&Coefficient::from_int(2));
        assert_eq!(got.to_sparse(), expect.to_sparse());
    }

    #[test]
    fn embed_i_entries() {
        // G3: t^n on the whole diagonal
        let m = embed_i(K4Label::G3, 3);
        for i in 0..4 {
            assert_eq!(*m.entry(i, i), WeylElement::t_pow(3));
        }
        // L: d t^n in the first slot, t^n d after
        let m = embed_i(K4Label::L, 2);
        let mut dt2 = WeylElement::term(Coefficient::one(), 2, 1);
        dt2.add_term(2, 0, Coefficient::from_int(2));
        assert_eq!(*m.entry(0, 0), dt2);
        assert_eq!(*m.entry(1, 1), WeylElement::term(Coefficient::one(), 2, 1));
        // Q: single corner entry
        let m = embed_i(K4Label::Q, 1);
        assert_eq!(*m.entry(1, 0), WeylElement::t_pow(1));
        assert!(m.entry(0, 1).is_zero());
    }

    #[test]
    fn rep_action_examples() {
        let mu = Coefficient::mu();
        // L_n v^0_m = (n + m + mu) v^0_(m+n)
        let v = VVector::basis(0, 2);
        let got = rep_action(K4Label::L, 3, &v, &mu);
        let mut expect = VVector::zero();
        expect.add_term(0, 5, &Coefficient::from_int(5) + &mu);
        assert_eq!(got, expect);
        // G0_n v^3_m = -v^0_(m+n)
        let v = VVector::basis(3, 1);
        let got = rep_action(K4Label::G0, 2, &v, &mu);
        let mut expect = VVector::zero();
        expect.add_term(0, 3, Coefficient::from_int(-1));
        assert_eq!(got, expect);
        // R11 annihilates v^2
        let v = VVector::basis(2, 0);
        assert!(rep_action(K4Label::R11, 1, &v, &mu).is_zero());
        // the central mode acts as the identity
        let v = VVector::basis(1, -2);
        assert_eq!(rep_action(K4Label::G3, 0, &v, &mu), v);
    }

    #[test]
    fn oracle_matches_rep_table() {
        // the tabulated action equals the direct symbol action in the
        // normalized basis, with formal mu
        let mu = Coefficient::mu();
        for label in K4_LABELS {
            for n in -2..=2i64 {
                if label == K4Label::G3 && n == 0 {
                    continue;
                }
                let op = k4_operator(label, n, false);
                for s in 0..4u8 {
                    for m in -2..=2i64 {
                        let direct = op
                            .act(s, m, &mu, BasisStyle::NormalizeV0)
                            .expect("formal mu has no pole");
                        let v = VVector::basis(s, m);
                        let tabulated = rep_action(label, n, &v, &mu);
                        assert_eq!(direct, tabulated, "{label}[{n}] on v^{s}_{m}");
                    }
                }
            }
        }
    }

    #[test]
    fn rep_matches_matrix_window() {
        // tabulated action at mu = 0 equals the first embedding's matrix
        // action on the window
        let zero = Coefficient::zero();
        for label in K4_LABELS {
            for n in -2..=2i64 {
                let m = embed_i(label, n);
                for s in 0..4u8 {
                    for w in -3..=3i64 {
                        let v = VVector::basis(s, w);
                        let tab = rep_action(label, n, &v, &zero);
                        let mut mat = VVector::zero();
                        for ((s2, m2), c) in m.act_on_basis(s, w) {
                            mat.add_term(s2, m2, c);
                        }
                        assert_eq!(tab, mat, "{label}[{n}] on v^{s}_{w}");
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_matrix_matches_combination() {
        let alpha = Coefficient::alpha();
        for l in GAMMA_LABELS {
            let direct = gamma_matrix(l, &alpha);
            let combined = gamma_matrix_combined(l, &alpha);
            assert_eq!(direct.to_sparse(), combined.to_sparse(), "{l}");
        }
    }

    #[test]
    fn grading_shape_examples() {
        assert!(grading_component(&embed_i(K4Label::R12, 0)).is_ok());
        assert!(grading_component(&embed_i(K4Label::Y1, 0)).is_ok());
        assert!(grading_component(&embed_i(K4Label::X2, 0)).is_ok());
        assert!(grading_component(&embed_i(K4Label::L, 0)).is_ok());
        // trace violation
        let mut bad = WeylSuperMatrix::zero();
        bad.set(0, 0, WeylElement::one());
        assert!(matches!(
            grading_component(&bad),
            Err(WeylError::ShapeViolation(..))
        ));
    }

    #[test]
    fn embed_j_direct_action() {
        // the dictionary embedding agrees with the direct action of the
        // swapped fields in the other normalized basis: compute with formal
        // mu (the normalizations cancel symbolically), then set mu = 0
        let mu = Coefficient::mu();
        let mut at_zero = BTreeMap::new();
        at_zero.insert(Param::Mu, Scalar::zero());
        for label in K4_LABELS {
            for n in -2..=2i64 {
                if label == K4Label::G3 && n == 0 {
                    continue;
                }
                let mat = embed_j(label, n);
                let op = k4_operator(label, n, true);
                for s in 0..4u8 {
                    for w in -3..=3i64 {
                        let direct = op
                            .act(s, w, &mu, BasisStyle::NormalizeV3)
                            .expect("formal mu has no pole")
                            .evaluate(&at_zero)
                            .unwrap_or_else(|_| {
                                panic!("pole at mu=0 for {label}[{n}] v^{s}_{w}")
                            });
                        let mut mat_act = VVector::zero();
                        for ((s2, m2), c) in mat.act_on_basis(s, w) {
                            mat_act.add_term(s2, m2, c);
                        }
                        assert_eq!(direct, mat_act, "{label}[{n}] on v^{s}_{w}");
                    }
                }
            }
        }
    }
}
