//! Multivariate polynomials over the ground field, with a graded-lex
//! monomial order and an exact gcd (primitive PRS).

use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Formal parameter. Built-in parameters come first in the global order,
/// user-declared ones follow alphabetically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Param {
    Alpha,
    H,
    Mu,
    Sigma1,
    Sigma2,
    Sigma3,
    User(String),
}

impl Param {
    pub fn name(&self) -> &str {
        match self {
            Param::Alpha => "alpha",
            Param::H => "h",
            Param::Mu => "mu",
            Param::Sigma1 => "sigma1",
            Param::Sigma2 => "sigma2",
            Param::Sigma3 => "sigma3",
            Param::User(s) => s,
        }
    }

    /// Maps well-known names onto the built-in parameters.
    pub fn from_name(name: &str) -> Param {
        match name {
            "alpha" => Param::Alpha,
            "h" => Param::H,
            "mu" => Param::Mu,
            "sigma1" => Param::Sigma1,
            "sigma2" => Param::Sigma2,
            "sigma3" => Param::Sigma3,
            other => Param::User(other.to_string()),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Monomial in the parameters: sorted `(param, exponent)` pairs, exponents > 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(Vec<(Param, u32)>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(p: Param) -> Self {
        Mono(vec![(p, 1)])
    }

    pub fn var_pow(p: Param, e: u32) -> Self {
        if e == 0 {
            Mono::one()
        } else {
            Mono(vec![(p, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|(_, e)| u64::from(*e)).sum()
    }

    pub fn exponent(&self, p: &Param) -> u32 {
        self.0
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = &Param> {
        self.0.iter().map(|(p, _)| p)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Mono(out)
    }

    /// Exact monomial quotient, `None` when not divisible.
    pub fn try_div(&self, other: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (p, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < *p {
                return None; // divisor has a var absent from self
            }
            if j < other.0.len() && other.0[j].0 == *p {
                let d = other.0[j].1;
                if d > *e {
                    return None;
                }
                if *e - d > 0 {
                    out.push((p.clone(), e - d));
                }
                j += 1;
            } else {
                out.push((p.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Mono(out))
    }
}

/// Graded-lex: total degree first, then lexicographic in the global
/// parameter order (higher exponent on the earliest variable wins).
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                // self has the earlier variable with a positive exponent
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match self.0[i].1.cmp(&other.0[j].1) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    ord => return ord,
                },
            }
        }
        match (i < self.0.len(), j < other.0.len()) {
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial as a term map ordered by the graded-lex monomial order.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Poly::from_scalar(Scalar::one())
    }

    pub fn from_scalar(s: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(Mono::one(), s);
        }
        Poly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Poly::from_scalar(Scalar::from_int(n))
    }

    pub fn var(p: Param) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(p), Scalar::one());
        Poly { terms }
    }

    pub fn term(s: Scalar, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(m, s);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    /// Leading term under graded-lex.
    pub fn leading(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn vars(&self) -> BTreeSet<Param> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            out.extend(m.vars().cloned());
        }
        out
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, p: &Param) -> u32 {
        self.terms.keys().map(|m| m.exponent(p)).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Mono, c: Scalar) {
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

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn try_div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if let Some(s) = d.as_scalar() {
            let inv = s.inv()?;
            return Some(self.scale(&inv));
        }
        let mut rem = self.clone();
        let mut quo = Poly::zero();
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.clone())
        };
        let dc_inv = dc.inv().expect("nonzero leading coefficient");
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            let qm = rm.try_div(&dm)?;
            let qc = &rc * &dc_inv;
            let t = Poly::term(qc, qm);
            rem = &rem - &(&t * d);
            quo = &quo + &t;
        }
        Some(quo)
    }

    /// Substitute scalars for some parameters; unassigned parameters stay formal.
    pub fn evaluate(&self, assign: &BTreeMap<Param, Scalar>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut residue = Vec::new();
            for (p, e) in &m.0 {
                match assign.get(p) {
                    Some(v) => coeff = &coeff * &v.pow(*e),
                    None => residue.push((p.clone(), *e)),
                }
            }
            out.add_term(Mono(residue), coeff);
        }
        out
    }

    /// Leading coefficient made 1 (canonical representative up to units).
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    // ---- univariate view in a chosen main variable ----

    fn coeffs_in(&self, x: &Param) -> Vec<Poly> {
        let deg = self.degree_in(x) as usize;
        let mut out = vec![Poly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(x) as usize;
            let rest = Mono(m.0.iter().filter(|(p, _)| p != x).cloned().collect());
            out[e].add_term(rest, c.clone());
        }
        out
    }

    fn from_coeffs(coeffs: Vec<Poly>, x: &Param) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in coeffs.into_iter().enumerate() {
            let xm = Mono::var_pow(x.clone(), e as u32);
            for (m, s) in &c.terms {
                out.add_term(m.mul(&xm), s.clone());
            }
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

// ---- gcd via primitive pseudo-remainder sequences ----

fn content_in(p: &Poly, x: &Param) -> Poly {
    let mut acc = Poly::zero();
    for c in p.coeffs_in(x) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// Pseudo-remainder of `f` by `g` in the variable `x`.
fn prem(f: &Poly, g: &Poly, x: &Param) -> Poly {
    let mut fc = f.coeffs_in(x);
    let gc = g.coeffs_in(x);
    let dg = gc.len() - 1;
    let lg = gc[dg].clone();
    loop {
        while fc.last().is_some_and(Poly::is_zero) {
            fc.pop();
        }
        if fc.len() <= dg {
            return Poly::from_coeffs(fc, x);
        }
        let df = fc.len() - 1;
        let lf = fc[df].clone();
        // f := lg*f - lf * x^(df-dg) * g
        for c in fc.iter_mut() {
            *c = &*c * &lg;
        }
        for (i, gco) in gc.iter().enumerate() {
            fc[i + df - dg] = &fc[i + df - dg] - &(&lf * gco);
        }
        debug_assert!(fc[df].is_zero());
    }
}

/// Gcd, normalized monic under graded-lex. Constants collapse to 1.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    // Main variable: greatest parameter present in either operand.
    let x = a
        .vars()
        .into_iter()
        .chain(b.vars())
        .max()
        .expect("nonconstant operands have variables");

    let ca = content_in(a, &x);
    let cb = content_in(b, &x);
    let cg = gcd(&ca, &cb);
    // primitive parts, with the leading scalar normalized to 1: the scalar
    // field has only trivial units, and normalizing every remainder keeps
    // the rational coefficients from compounding across the sequence
    let pa = a.try_div_exact(&ca).expect("content divides").monic();
    let pb = b.try_div_exact(&cb).expect("content divides").monic();

    let (mut f, mut g) = if pa.degree_in(&x) >= pb.degree_in(&x) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        let r = prem(&f, &g, &x);
        if r.is_zero() {
            break;
        }
        let rc = content_in(&r, &x);
        f = g;
        g = r.try_div_exact(&rc).expect("content divides").monic();
        if g.degree_in(&x) == 0 {
            // coprime in x: the whole gcd is the content part
            return cg.monic();
        }
    }
    (&cg * &g).monic()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // descending graded-lex
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_displayed_negative();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let c_abs = if neg { -c } else { c.clone() };
            let mono_text = m
                .0
                .iter()
                .map(|(p, e)| {
                    if *e == 1 {
                        p.to_string()
                    } else {
                        format!("{p}^{e}")
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            if m.is_one() {
                write!(f, "{c_abs}")?;
            } else if c_abs.is_one() {
                f.write_str(&mono_text)?;
            } else {
                write!(f, "{c_abs}*{mono_text}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha() -> Poly {
        Poly::var(Param::Alpha)
    }

    #[test]
    fn grlex_order() {
        let a = Mono::var(Param::Alpha);
        let h = Mono::var(Param::H);
        let a2 = a.mul(&a);
        // degree dominates
        assert!(a2 > h);
        assert!(a2 > a);
        // same degree: earlier variable wins
        assert!(a > h);
        assert!(a.mul(&h) < a2);
    }

    #[test]
    fn mul_and_sub() {
        let p = &alpha() + &Poly::one(); // alpha + 1
        let q = &alpha() - &Poly::one(); // alpha - 1
        let prod = &p * &q;
        let expect = &(&alpha() * &alpha()) - &Poly::one();
        assert_eq!(prod, expect);
    }

    #[test]
    fn exact_division() {
        let p = &alpha() + &Poly::one();
        let q = &alpha() - &Poly::one();
        let prod = &p * &q;
        assert_eq!(prod.try_div_exact(&p).unwrap(), q);
        assert!(p.try_div_exact(&q).is_none());
    }

    #[test]
    fn gcd_univariate() {
        let p = &alpha() + &Poly::one();
        let a2m1 = &(&alpha() * &alpha()) - &Poly::one(); // (a+1)(a-1)
        let a2pa = &(&alpha() * &alpha()) + &alpha(); // a(a+1)
        assert_eq!(gcd(&a2m1, &a2pa), p.monic());
    }

    #[test]
    fn gcd_multivariate() {
        let a = alpha();
        let h = Poly::var(Param::H);
        let common = &a + &h;
        let f = &common * &(&a + &Poly::one());
        let g = &common * &h;
        assert_eq!(gcd(&f, &g), common.monic());
        assert_eq!(gcd(&f, &(&h + &Poly::one())), Poly::one());
    }

    #[test]
    fn evaluate_partial() {
        let p = &(&alpha() * &Poly::var(Param::H)) + &Poly::one();
        let mut assign = BTreeMap::new();
        assign.insert(Param::H, Scalar::from_int(2));
        let got = p.evaluate(&assign);
        let expect = &(&alpha() * &Poly::from_int(2)) + &Poly::one();
        assert_eq!(got, expect);
    }
}
