//! Pseudodifferential symbols on the supercircle: Laurent terms
//! `c * t^a tau^b * (odd monomial)` with the graded Poisson bracket, the
//! associative `h`-deformed product, and its supercommutator, whose
//! first-order term in `h` contracts back to the Poisson bracket.
//!
//! Values are finite term sums. Products whose expansion does not terminate
//! are truncated at a tau-exponent cutoff and flagged inexact (`floor`);
//! comparisons then restrict to the trusted window.

use crate::coeff::{CoeffError, Coefficient};
use crate::grassmann::{LambdaElement, OddMonomial, OddVar, ParityClass, MAX_INDEX};
use crate::linalg::SparseVec;
use crate::poly::Param;
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum SymbolError {
    #[error("operand has mixed parity")]
    MixedParity,
    #[error("operand carries a truncation marker")]
    TruncatedOperand,
}

/// Key of one symbol term; ordering is lexicographic in
/// `(t_exp, tau_exp, odd mask)` and fixes the canonical printing order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TermKey {
    pub t_exp: i64,
    pub tau_exp: i64,
    pub odd: OddMonomial,
}

/// Finite sum of symbol terms. `floor = Some(f)` marks an inexact value:
/// terms with `tau_exp < f` have been discarded and are unknown.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PSymbol {
    terms: BTreeMap<TermKey, Coefficient>,
    floor: Option<i64>,
}

impl PSymbol {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Coefficient::one(), 0, 0, OddMonomial::ONE)
    }

    pub fn scalar(c: Coefficient) -> Self {
        Self::term(c, 0, 0, OddMonomial::ONE)
    }

    pub fn t_pow(a: i64) -> Self {
        Self::term(Coefficient::one(), a, 0, OddMonomial::ONE)
    }

    pub fn tau_pow(b: i64) -> Self {
        Self::term(Coefficient::one(), 0, b, OddMonomial::ONE)
    }

    pub fn xi(i: u8) -> Self {
        Self::odd_word(&[OddVar::Xi(i)])
    }

    pub fn eta(i: u8) -> Self {
        Self::odd_word(&[OddVar::Eta(i)])
    }

    /// Product of odd generators in the given order (zero on repeats).
    pub fn odd_word(word: &[OddVar]) -> Self {
        match OddMonomial::from_word(word) {
            None => Self::zero(),
            Some((sign, m)) => Self::term(Coefficient::from_int(i64::from(sign)), 0, 0, m),
        }
    }

    pub fn term(c: Coefficient, t_exp: i64, tau_exp: i64, odd: OddMonomial) -> Self {
        let mut out = Self::zero();
        out.add_term(TermKey { t_exp, tau_exp, odd }, c);
        out
    }

    pub fn from_lambda(t_exp: i64, tau_exp: i64, odd: &LambdaElement) -> Self {
        let mut out = Self::zero();
        for (m, c) in odd.iter() {
            out.add_term(
                TermKey {
                    t_exp,
                    tau_exp,
                    odd: *m,
                },
                c.clone(),
            );
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.floor.is_none()
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TermKey, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &TermKey) -> Coefficient {
        self.terms.get(key).cloned().unwrap_or_else(Coefficient::zero)
    }

    fn add_term(&mut self, key: TermKey, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        if let Some(f) = self.floor {
            if key.tau_exp < f {
                return;
            }
        }
        match self.terms.entry(key) {
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

    fn set_floor(&mut self, floor: Option<i64>) {
        self.floor = floor;
        if let Some(f) = floor {
            self.terms.retain(|k, _| k.tau_exp >= f);
        }
    }

    fn merged_floor(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (Some(x), None) | (None, Some(x)) => Some(x),
            (None, None) => None,
        }
    }

    /// Largest tau exponent that bounds every discarded term of an inexact
    /// operand from above; `None` for exact values.
    fn tau_bound(&self) -> Option<i64> {
        let present = self.terms.keys().map(|k| k.tau_exp).max();
        match (present, self.floor) {
            (Some(p), Some(f)) => Some(p.max(f)),
            (Some(p), None) => Some(p),
            (None, f) => f,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.set_floor(Self::merged_floor(self.floor, other.floor));
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        PSymbol {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
            floor: self.floor,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Coefficient) -> Self {
        if s.is_zero() {
            // zero times an unknown tail is still exactly zero
            return PSymbol::zero();
        }
        PSymbol {
            terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
            floor: self.floor,
        }
    }

    pub fn parity(&self) -> ParityClass {
        let mut even = false;
        let mut odd = false;
        for k in self.terms.keys() {
            if k.odd.is_odd() {
                odd = true;
            } else {
                even = true;
            }
        }
        match (even, odd) {
            (true, true) => ParityClass::Mixed,
            (false, true) => ParityClass::Odd,
            _ => ParityClass::Even,
        }
    }

    /// Parity bit for a homogeneous symbol (zero counts as even).
    fn parity_bit(&self) -> Result<bool, SymbolError> {
        match self.parity() {
            ParityClass::Even => Ok(false),
            ParityClass::Odd => Ok(true),
            ParityClass::Mixed => Err(SymbolError::MixedParity),
        }
    }

    // ---- derivatives ----

    pub fn d_t(&self) -> Self {
        let mut out = Self::zero();
        out.set_floor(self.floor);
        for (k, c) in &self.terms {
            if k.t_exp != 0 {
                out.add_term(
                    TermKey {
                        t_exp: k.t_exp - 1,
                        ..*k
                    },
                    c * &Coefficient::from_int(k.t_exp),
                );
            }
        }
        out
    }

    pub fn d_tau(&self) -> Self {
        // lowering tau on an inexact value shifts the trusted window down
        let mut out = Self::zero();
        out.set_floor(self.floor.map(|f| f - 1));
        for (k, c) in &self.terms {
            if k.tau_exp != 0 {
                out.add_term(
                    TermKey {
                        tau_exp: k.tau_exp - 1,
                        ..*k
                    },
                    c * &Coefficient::from_int(k.tau_exp),
                );
            }
        }
        out
    }

    /// Left derivative by an odd generator.
    pub fn d_odd(&self, v: OddVar) -> Self {
        let mut out = Self::zero();
        out.set_floor(self.floor);
        for (k, c) in &self.terms {
            if let Some((sign, m)) = k.odd.derivative(v) {
                out.add_term(
                    TermKey { odd: m, ..*k },
                    c * &Coefficient::from_int(i64::from(sign)),
                );
            }
        }
        out
    }

    /// Odd generator indices that occur anywhere in the symbol.
    fn odd_indices(&self) -> Vec<u8> {
        let mut seen = [false; MAX_INDEX as usize + 1];
        for k in self.terms.keys() {
            for v in k.odd.vars() {
                seen[v.index() as usize] = true;
            }
        }
        (1..=MAX_INDEX).filter(|i| seen[*i as usize]).collect()
    }

    // ---- products ----

    /// Supercommutative product of the undeformed algebra: Laurent parts
    /// multiply, odd parts multiply with the Grassmann sign.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        let mut floor = None;
        if let Some(fa) = self.floor {
            floor = Self::merged_floor(floor, other.tau_bound().map(|m| fa + m));
        }
        if let Some(fb) = other.floor {
            floor = Self::merged_floor(floor, self.tau_bound().map(|m| fb + m));
        }
        out.set_floor(floor);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                if let Some((sign, m)) = k1.odd.mul(k2.odd) {
                    out.add_term(
                        TermKey {
                            t_exp: k1.t_exp + k2.t_exp,
                            tau_exp: k1.tau_exp + k2.tau_exp,
                            odd: m,
                        },
                        &(c1 * c2) * &Coefficient::from_int(i64::from(sign)),
                    );
                }
            }
        }
        out
    }

    /// Associative deformed product: the Laurent parts compose through the
    /// `h`-weighted derivative series, the odd parts through the deformed
    /// Grassmann product. Pairs whose series does not terminate are cut at
    /// `tau_exp >= cutoff` and the result is flagged inexact.
    pub fn circ_h(&self, other: &Self, cutoff: i64) -> Self {
        let mut out = Self::zero();
        let mut floor = None;
        if let Some(fa) = self.floor {
            floor = Self::merged_floor(floor, other.tau_bound().map(|m| fa + m));
        }
        if let Some(fb) = other.floor {
            floor = Self::merged_floor(floor, self.tau_bound().map(|m| fb + m));
        }
        let mut truncated = false;
        let mut pieces: Vec<(TermKey, Coefficient)> = Vec::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let odd_prod =
                    LambdaElement::monomial(k1.odd).mul_h(&LambdaElement::monomial(k2.odd));
                if odd_prod.is_zero() {
                    continue;
                }
                let c12 = c1 * c2;
                let (b1, a2) = (k1.tau_exp, k2.t_exp);
                let n_end: Option<i64> = if b1 >= 0 {
                    Some(b1)
                } else if a2 >= 0 {
                    Some(a2)
                } else {
                    None
                };
                let mut n: i64 = 0;
                let mut series_factor = BigRational::one(); // fall(b1,n)*fall(a2,n)/n!
                loop {
                    if let Some(end) = n_end {
                        if n > end {
                            break;
                        }
                    } else if k1.tau_exp + k2.tau_exp - n < cutoff {
                        truncated = true;
                        break;
                    }
                    if !series_factor.is_zero() {
                        let h_pow = Coefficient::h().powi(n).expect("nonnegative power");
                        let factor =
                            &Coefficient::from_scalar(Scalar::from_rational(series_factor.clone()))
                                * &h_pow;
                        let base = &c12 * &factor;
                        for (m, mc) in odd_prod.iter() {
                            pieces.push((
                                TermKey {
                                    t_exp: k1.t_exp + k2.t_exp - n,
                                    tau_exp: k1.tau_exp + k2.tau_exp - n,
                                    odd: *m,
                                },
                                &base * mc,
                            ));
                        }
                    }
                    // advance: multiply by (b1 - n)(a2 - n)/(n + 1)
                    series_factor = series_factor
                        * BigRational::from_integer(BigInt::from(b1 - n))
                        * BigRational::from_integer(BigInt::from(a2 - n))
                        / BigRational::from_integer(BigInt::from(n + 1));
                    n += 1;
                }
            }
        }
        if truncated {
            floor = Self::merged_floor(floor, Some(cutoff));
        }
        out.set_floor(floor);
        for (k, c) in pieces {
            out.add_term(k, c);
        }
        out
    }

    /// Graded Poisson bracket. Operands must be homogeneous and exact.
    pub fn poisson_bracket(&self, other: &Self) -> Result<Self, SymbolError> {
        if !self.is_exact() || !other.is_exact() {
            return Err(SymbolError::TruncatedOperand);
        }
        let pa = self.parity_bit()?;
        other.parity_bit()?;
        let mut out = self.d_tau().mul(&other.d_t()).sub(&self.d_t().mul(&other.d_tau()));
        // (-1)^(p(A)+1): +1 for odd A, -1 for even A
        let sign = if pa {
            Coefficient::one()
        } else {
            Coefficient::from_int(-1)
        };
        let mut odd_part = Self::zero();
        for i in self.odd_indices() {
            odd_part = odd_part
                .add(&self.d_odd(OddVar::Xi(i)).mul(&other.d_odd(OddVar::Eta(i))))
                .add(&self.d_odd(OddVar::Eta(i)).mul(&other.d_odd(OddVar::Xi(i))));
        }
        out = out.add(&odd_part.scale(&sign));
        Ok(out)
    }

    /// Supercommutator for the deformed product.
    pub fn super_commutator_h(&self, other: &Self, cutoff: i64) -> Result<Self, SymbolError> {
        let pa = self.parity_bit()?;
        let pb = other.parity_bit()?;
        let ab = self.circ_h(other, cutoff);
        let ba = other.circ_h(self, cutoff);
        Ok(if pa && pb { ab.add(&ba) } else { ab.sub(&ba) })
    }

    /// Divides every coefficient by the formal `h`; `None` when some
    /// coefficient is not divisible.
    pub fn div_by_h(&self) -> Option<Self> {
        let mut out = Self::zero();
        out.set_floor(self.floor);
        for (k, c) in &self.terms {
            out.add_term(*k, c.div_by_param(&Param::H)?);
        }
        Some(out)
    }

    pub fn evaluate(&self, assign: &BTreeMap<Param, Scalar>) -> Result<Self, CoeffError> {
        let mut out = Self::zero();
        out.set_floor(self.floor);
        for (k, c) in &self.terms {
            out.add_term(*k, c.evaluate(assign)?);
        }
        Ok(out)
    }

    /// Specialization `h = 0`.
    pub fn at_h_zero(&self) -> Self {
        let mut assign = BTreeMap::new();
        assign.insert(Param::H, Scalar::zero());
        self.evaluate(&assign).expect("h = 0 cannot hit a pole of an h-polynomial")
    }

    /// The involution exchanging `xi_i` with `eta_i`.
    pub fn swap_xi_eta(&self) -> Self {
        let mut out = Self::zero();
        out.set_floor(self.floor);
        for (k, c) in &self.terms {
            let (sign, m) = k.odd.swap_xi_eta();
            out.add_term(
                TermKey { odd: m, ..*k },
                c * &Coefficient::from_int(i64::from(sign)),
            );
        }
        out
    }

    /// Exact equality for exact operands; otherwise equality of every term
    /// in the common trusted window. Returns the first differing key when
    /// unequal.
    pub fn eq_windowed(&self, other: &Self) -> Result<(), TermKey> {
        match Self::merged_floor(self.floor, other.floor) {
            None => {
                if self.terms == other.terms {
                    Ok(())
                } else {
                    let key = self
                        .terms
                        .iter()
                        .find(|(k, c)| other.terms.get(k) != Some(c))
                        .map(|(k, _)| *k)
                        .or_else(|| {
                            other
                                .terms
                                .iter()
                                .find(|(k, _)| !self.terms.contains_key(k))
                                .map(|(k, _)| *k)
                        })
                        .expect("unequal maps differ somewhere");
                    Err(key)
                }
            }
            Some(w) => {
                for (k, c) in self.terms.iter().filter(|(k, _)| k.tau_exp >= w) {
                    if other.coefficient(k) != *c {
                        return Err(*k);
                    }
                }
                for (k, c) in other.terms.iter().filter(|(k, _)| k.tau_exp >= w) {
                    if self.coefficient(k) != *c {
                        return Err(*k);
                    }
                }
                Ok(())
            }
        }
    }

    /// The windowed difference `self - other`, for residual reporting.
    pub fn residual(&self, other: &Self) -> Self {
        let mut d = self.sub(other);
        if let Some(f) = d.floor {
            d.set_floor(Some(f));
        }
        d
    }

    /// Verifies that the first-order term in `h` of the supercommutator
    /// reproduces the Poisson bracket. Operands must be `h`-free.
    pub fn contraction_first_order(
        &self,
        other: &Self,
        cutoff: i64,
    ) -> Result<ContractionReport, SymbolError> {
        assert!(
            !self.depends_on_h() && !other.depends_on_h(),
            "operands must be h-free"
        );
        let comm = self.super_commutator_h(other, cutoff)?;
        let poisson = self.poisson_bracket(other)?;
        let first_order = match comm.div_by_h() {
            Some(d) => d.at_h_zero(),
            None => {
                return Ok(ContractionReport {
                    pass: false,
                    commutator: comm.clone(),
                    poisson,
                    discrepancy: comm,
                })
            }
        };
        let pass = first_order.eq_windowed(&poisson).is_ok();
        let discrepancy = first_order.residual(&poisson);
        Ok(ContractionReport {
            pass,
            commutator: comm,
            poisson,
            discrepancy,
        })
    }

    fn depends_on_h(&self) -> bool {
        self.terms.values().any(|c| c.depends_on(&Param::H))
    }

    /// Sparse view for the linear algebra helpers.
    pub fn to_sparse(&self) -> SparseVec<TermKey> {
        self.terms.clone().into_iter().collect()
    }

    pub fn to_text(&self) -> String {
        let mut body = if self.terms.is_empty() {
            "0".to_string()
        } else {
            let mut s = String::new();
            for (i, (k, c)) in self.terms.iter().enumerate() {
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
                match k.t_exp {
                    0 => {}
                    1 => factors.push("t".into()),
                    e => factors.push(format!("t^{e}")),
                }
                match k.tau_exp {
                    0 => {}
                    1 => factors.push("tau".into()),
                    e => factors.push(format!("tau^{e}")),
                }
                for v in k.odd.vars() {
                    factors.push(v.to_string());
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
        };
        if let Some(f) = self.floor {
            body.push_str(&format!(" [truncated below tau^{f}]"));
        }
        body
    }
}

/// Outcome of a first-order contraction check.
#[derive(Clone)]
pub struct ContractionReport {
    pub pass: bool,
    pub commutator: PSymbol,
    pub poisson: PSymbol,
    pub discrepancy: PSymbol,
}

impl fmt::Debug for PSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for PSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
