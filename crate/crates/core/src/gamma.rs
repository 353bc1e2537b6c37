//! The 17-dimensional family of Lie superalgebras with even part three
//! commuting `sp(2)` triples and odd part the triple tensor product of
//! 2-dimensional spaces, built from structure constants; the four concrete
//! realizations of its one-parameter specialization by symbols and
//! supermatrices; and the verifier machinery (homomorphism grids, odd
//! generation, degeneration checks).

use crate::coeff::Coefficient;
use crate::grassmann::OddVar;
use crate::linalg::{Echelon, SparseVec};
use crate::poly::Param;
use crate::psymbols::{PSymbol, TermKey};
use crate::scalar::Scalar;
use crate::weyl::{gamma_matrix, GammaLabel, WeylSuperMatrix, GAMMA_LABELS};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum GammaError {
    #[error("bracket closure did not stabilize within {0} rounds")]
    NoConvergence(usize),
}

// ---------------------------------------------------------------------------
// Abstract structure-constant model
// ---------------------------------------------------------------------------

/// Symmetric index pair into one 2-dimensional symplectic space.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum SpPair {
    UU,
    UV,
    VV,
}

/// Basis label: 9 even elements (three `sp(2)` triples) and 8 odd ones
/// (decomposable tensors with indices 1/2 in each factor).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum GammaBasis {
    Sp(u8, SpPair),
    Odd(u8, u8, u8),
}

impl GammaBasis {
    pub fn is_odd(self) -> bool {
        matches!(self, GammaBasis::Odd(..))
    }

    pub fn all() -> Vec<GammaBasis> {
        let mut out = Vec::with_capacity(17);
        for i in 1..=3 {
            for p in [SpPair::UU, SpPair::UV, SpPair::VV] {
                out.push(GammaBasis::Sp(i, p));
            }
        }
        for a in 1..=2 {
            for b in 1..=2 {
                for c in 1..=2 {
                    out.push(GammaBasis::Odd(a, b, c));
                }
            }
        }
        out
    }
}

impl fmt::Display for GammaBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaBasis::Sp(i, p) => {
                let (a, b) = match p {
                    SpPair::UU => (1, 1),
                    SpPair::UV => (1, 2),
                    SpPair::VV => (2, 2),
                };
                write!(f, "p{i}(u{a},u{b})")
            }
            GammaBasis::Odd(a, b, c) => write!(f, "e{a}*f{b}*h{c}"),
        }
    }
}

/// Vector in the abstract algebra.
pub type GammaVec = SparseVec<GammaBasis>;

fn vec_add_scaled(acc: &mut GammaVec, c: &Coefficient, b: GammaBasis) {
    if c.is_zero() {
        return;
    }
    match acc.entry(b) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = &*e.get() + c;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// The symplectic form: `psi(u1, u2) = 1`.
fn psi(a: u8, b: u8) -> i64 {
    match (a, b) {
        (1, 2) => 1,
        (2, 1) => -1,
        _ => 0,
    }
}

/// 2x2 matrix model of the even basis: `p(x, y) z = psi(y, z) x - psi(z, x) y`.
fn sp_matrix(p: SpPair) -> [[i64; 2]; 2] {
    match p {
        SpPair::UU => [[0, 2], [0, 0]],   // 2*E12
        SpPair::UV => [[-1, 0], [0, 1]],  // diag(-1, 1)
        SpPair::VV => [[0, 0], [-2, 0]],  // -2*E21
    }
}

/// Decomposes a traceless 2x2 matrix over the even basis.
fn sp_decompose(m: [[Coefficient; 2]; 2]) -> Vec<(SpPair, Coefficient)> {
    let half = Coefficient::from_ratio(1, 2);
    vec![
        (SpPair::UU, &m[0][1] * &half),
        (SpPair::UV, -&m[0][0]),
        (SpPair::VV, -&(&m[1][0] * &half)),
    ]
}

/// The 17-dimensional algebra at fixed structure parameters. The full
/// bracket table is assembled from the symplectic data; the Jacobi identity
/// holds exactly when the three parameters sum to zero.
pub struct GammaAlgebra {
    pub sigma: [Coefficient; 3],
    table: BTreeMap<(GammaBasis, GammaBasis), GammaVec>,
}

pub fn build_gamma(sigma: [Coefficient; 3]) -> GammaAlgebra {
    let basis = GammaBasis::all();
    let mut table = BTreeMap::new();
    for &a in &basis {
        for &b in &basis {
            table.insert((a, b), bracket_basis(&sigma, a, b));
        }
    }
    GammaAlgebra { sigma, table }
}

fn bracket_basis(sigma: &[Coefficient; 3], a: GammaBasis, b: GammaBasis) -> GammaVec {
    let mut out = GammaVec::new();
    match (a, b) {
        (GammaBasis::Sp(i, p), GammaBasis::Sp(j, q)) => {
            if i != j {
                return out; // the three triples commute
            }
            let (mp, mq) = (sp_matrix(p), sp_matrix(q));
            let mut comm = [
                [Coefficient::zero(), Coefficient::zero()],
                [Coefficient::zero(), Coefficient::zero()],
            ];
            for r in 0..2 {
                for c in 0..2 {
                    let mut acc = 0i64;
                    for k in 0..2 {
                        acc += mp[r][k] * mq[k][c] - mq[r][k] * mp[k][c];
                    }
                    comm[r][c] = Coefficient::from_int(acc);
                }
            }
            for (pair, c) in sp_decompose(comm) {
                vec_add_scaled(&mut out, &c, GammaBasis::Sp(i, pair));
            }
        }
        (GammaBasis::Sp(i, p), GammaBasis::Odd(a1, a2, a3)) => {
            let m = sp_matrix(p);
            let idx = [a1, a2, a3];
            let slot = (i - 1) as usize;
            let col = (idx[slot] - 1) as usize;
            for row in 0..2 {
                if m[row][col] != 0 {
                    let mut jdx = idx;
                    jdx[slot] = row as u8 + 1;
                    vec_add_scaled(
                        &mut out,
                        &Coefficient::from_int(m[row][col]),
                        GammaBasis::Odd(jdx[0], jdx[1], jdx[2]),
                    );
                }
            }
        }
        (GammaBasis::Odd(..), GammaBasis::Sp(..)) => {
            // [odd, even] = -[even, odd]
            let rev = bracket_basis(sigma, b, a);
            for (k, c) in rev {
                vec_add_scaled(&mut out, &(-&c), k);
            }
        }
        (GammaBasis::Odd(a1, a2, a3), GammaBasis::Odd(b1, b2, b3)) => {
            // sigma-weighted sum of the three symmetrized pairings
            let xs = [a1, a2, a3];
            let ys = [b1, b2, b3];
            for slot in 0..3 {
                let mut factor = 1i64;
                for other in 0..3 {
                    if other != slot {
                        factor *= psi(xs[other], ys[other]);
                    }
                }
                if factor == 0 {
                    continue;
                }
                let pair = match (xs[slot].min(ys[slot]), xs[slot].max(ys[slot])) {
                    (1, 1) => SpPair::UU,
                    (1, 2) => SpPair::UV,
                    (2, 2) => SpPair::VV,
                    _ => unreachable!(),
                };
                let c = &sigma[slot] * &Coefficient::from_int(factor);
                vec_add_scaled(&mut out, &c, GammaBasis::Sp(slot as u8 + 1, pair));
            }
        }
    }
    out
}

impl GammaAlgebra {
    pub fn bracket_basis(&self, a: GammaBasis, b: GammaBasis) -> &GammaVec {
        &self.table[&(a, b)]
    }

    pub fn bracket(&self, x: &GammaVec, y: &GammaVec) -> GammaVec {
        let mut out = GammaVec::new();
        for (a, ca) in x {
            for (b, cb) in y {
                let c = ca * cb;
                for (k, ck) in &self.table[&(*a, *b)] {
                    vec_add_scaled(&mut out, &(&c * ck), *k);
                }
            }
        }
        out
    }

    /// Exhaustive graded Jacobi scan over basis triples; returns violators.
    pub fn jacobi_check(&self) -> Vec<(GammaBasis, GammaBasis, GammaBasis)> {
        let basis = GammaBasis::all();
        let mut bad = Vec::new();
        for &a in &basis {
            for &b in &basis {
                for &c in &basis {
                    let sign = |x: GammaBasis, y: GammaBasis| {
                        if x.is_odd() && y.is_odd() {
                            Coefficient::from_int(-1)
                        } else {
                            Coefficient::one()
                        }
                    };
                    let single = |x: GammaBasis| {
                        let mut v = GammaVec::new();
                        v.insert(x, Coefficient::one());
                        v
                    };
                    // (-1)^(pa pc) [a,[b,c]] + cyclic
                    let t1 = self
                        .bracket(&single(a), &self.bracket(&single(b), &single(c)))
                        .into_iter()
                        .map(|(k, v)| (k, &v * &sign(a, c)));
                    let t2 = self
                        .bracket(&single(b), &self.bracket(&single(c), &single(a)))
                        .into_iter()
                        .map(|(k, v)| (k, &v * &sign(b, a)));
                    let t3 = self
                        .bracket(&single(c), &self.bracket(&single(a), &single(b)))
                        .into_iter()
                        .map(|(k, v)| (k, &v * &sign(c, b)));
                    let mut acc = GammaVec::new();
                    for (k, v) in t1.chain(t2).chain(t3) {
                        vec_add_scaled(&mut acc, &v, k);
                    }
                    if !acc.is_empty() {
                        bad.push((a, b, c));
                    }
                }
            }
        }
        bad
    }
}

/// Parameters of the one-parameter specialization: `(2, -1-alpha, alpha-1)`.
pub fn sigma_of_alpha(alpha: &Coefficient) -> [Coefficient; 3] {
    [
        Coefficient::from_int(2),
        &(-&Coefficient::one()) - alpha,
        alpha - &Coefficient::one(),
    ]
}

// ---------------------------------------------------------------------------
// Concrete generator variants
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GammaVariant {
    /// Undeformed symbols under the Poisson bracket.
    Poisson,
    /// Deformed symbols (differential-operator realization).
    Deformed,
    /// Deformed symbols inside the extended big `N = 4` image, with
    /// genuine inverse-`tau` prefixes.
    PseudoH,
    /// The `h -> 0` degeneration of the previous one.
    PseudoLimit,
}

impl GammaVariant {
    pub fn parse(s: &str) -> Option<GammaVariant> {
        Some(match s {
            "poisson" => GammaVariant::Poisson,
            "deformed" => GammaVariant::Deformed,
            "pseudo_h" | "pseudo-h" => GammaVariant::PseudoH,
            "pseudo_limit" | "pseudo-limit" => GammaVariant::PseudoLimit,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            GammaVariant::Poisson => "poisson",
            GammaVariant::Deformed => "deformed",
            GammaVariant::PseudoH => "pseudo_h",
            GammaVariant::PseudoLimit => "pseudo_limit",
        }
    }
}

fn word_h(word: &[OddVar]) -> PSymbol {
    let lam = word.iter().fold(
        crate::grassmann::LambdaElement::one(),
        |acc, v| acc.mul_h(&crate::grassmann::LambdaElement::generator(*v)),
    );
    PSymbol::from_lambda(0, 0, &lam)
}

/// The 17 generators of the chosen realization, symbolically in `alpha`
/// (and `h` for the deformed variants).
pub fn gamma_alpha_generators(
    alpha: &Coefficient,
    variant: GammaVariant,
    cutoff: i64,
) -> Vec<(GammaLabel, PSymbol)> {
    use GammaLabel::*;
    use OddVar::{Eta, Xi};
    let t = PSymbol::t_pow;
    let tau = PSymbol::tau_pow;
    let w = PSymbol::odd_word;
    let h = Coefficient::h;
    let one = Coefficient::one;
    let a1 = |c: &Coefficient| c + &one(); // alpha + 1
    let pieces: Vec<(GammaLabel, PSymbol)> = match variant {
        GammaVariant::Poisson => vec![
            (E1, t(2)),
            (
                F1,
                tau(2).sub(
                    &t(-2)
                        .mul(&w(&[Xi(1), Xi(2), Eta(1), Eta(2)]))
                        .scale(&(&Coefficient::from_int(2) * alpha)),
                ),
            ),
            (H1, t(1).mul(&tau(1))),
            (E2, w(&[Xi(1), Xi(2)])),
            (F2, w(&[Eta(1), Eta(2)])),
            (H2, w(&[Xi(1), Eta(1)]).add(&w(&[Xi(2), Eta(2)]))),
            (E3, w(&[Xi(1), Eta(2)])),
            (F3, w(&[Xi(2), Eta(1)])),
            (H3, w(&[Xi(1), Eta(1)]).sub(&w(&[Xi(2), Eta(2)]))),
            (T1, t(1).mul(&w(&[Eta(1)]))),
            (T2, t(1).mul(&w(&[Eta(2)]))),
            (T3, t(1).mul(&w(&[Xi(1)]))),
            (T4, t(1).mul(&w(&[Xi(2)]))),
            (
                D1,
                tau(1)
                    .mul(&w(&[Xi(1)]))
                    .add(&t(-1).mul(&w(&[Xi(1), Xi(2), Eta(2)])).scale(alpha)),
            ),
            (
                D2,
                tau(1)
                    .mul(&w(&[Xi(2)]))
                    .sub(&t(-1).mul(&w(&[Xi(1), Xi(2), Eta(1)])).scale(alpha)),
            ),
            (
                D3,
                tau(1)
                    .mul(&w(&[Eta(1)]))
                    .add(&t(-1).mul(&w(&[Xi(2), Eta(1), Eta(2)])).scale(alpha)),
            ),
            (
                D4,
                tau(1)
                    .mul(&w(&[Eta(2)]))
                    .sub(&t(-1).mul(&w(&[Xi(1), Eta(1), Eta(2)])).scale(alpha)),
            ),
        ],
        GammaVariant::Deformed => {
            let half_a1 = &a1(alpha) * &Coefficient::from_ratio(1, 2);
            vec![
                (E1, t(2)),
                (
                    H1,
                    t(1).mul(&tau(1)).add(&PSymbol::scalar(&half_a1 * &h())),
                ),
                (
                    F1,
                    tau(2).sub(
                        &t(-2)
                            .mul(&w(&[Xi(1), Xi(2), Eta(1), Eta(2)]))
                            .scale(&Coefficient::from_int(2))
                            .add(
                                &t(-2)
                                    .mul(&w(&[Xi(1), Eta(1)]).add(&w(&[Xi(2), Eta(2)])))
                                    .scale(&h()),
                            )
                            .sub(&t(-1).mul(&tau(1)).scale(&h()))
                            .scale(alpha),
                    ),
                ),
                (E2, w(&[Xi(1), Xi(2)])),
                (F2, w(&[Eta(1), Eta(2)])),
                (
                    H2,
                    w(&[Xi(1), Eta(1)])
                        .add(&w(&[Xi(2), Eta(2)]))
                        .sub(&PSymbol::scalar(h())),
                ),
                (E3, w(&[Xi(1), Eta(2)])),
                (F3, w(&[Xi(2), Eta(1)])),
                (H3, w(&[Xi(1), Eta(1)]).sub(&w(&[Xi(2), Eta(2)]))),
                (T1, t(1).mul(&w(&[Eta(1)]))),
                (T2, t(1).mul(&w(&[Eta(2)]))),
                (T3, t(1).mul(&w(&[Xi(1)]))),
                (T4, t(1).mul(&w(&[Xi(2)]))),
                (
                    D1,
                    tau(1)
                        .mul(&w(&[Xi(1)]))
                        .add(&t(-1).mul(&w(&[Xi(1), Xi(2), Eta(2)])).scale(alpha)),
                ),
                (
                    D2,
                    tau(1)
                        .mul(&w(&[Xi(2)]))
                        .sub(&t(-1).mul(&w(&[Xi(1), Xi(2), Eta(1)])).scale(alpha)),
                ),
                (
                    D3,
                    tau(1)
                        .mul(&w(&[Eta(1)]))
                        .add(&t(-1).mul(&word_h(&[Eta(1), Eta(2), Xi(2)])).scale(alpha)),
                ),
                (
                    D4,
                    tau(1)
                        .mul(&w(&[Eta(2)]))
                        .sub(&t(-1).mul(&word_h(&[Eta(1), Eta(2), Xi(1)])).scale(alpha)),
                ),
            ]
        }
        GammaVariant::PseudoH => {
            let half_a1 = &a1(alpha) * &Coefficient::from_ratio(1, 2);
            let ap1 = a1(alpha);
            vec![
                (
                    E1,
                    t(3)
                        .mul(&tau(1))
                        .add(&t(2).mul(&w(&[Xi(1), Eta(1)]).add(&w(&[Xi(2), Eta(2)])))),
                ),
                (
                    F1,
                    t(-1)
                        .mul(&tau(1))
                        .add(
                            &tau(-1)
                                .circ_h(&t(-3).mul(&word_h(&[Eta(1), Eta(2), Xi(1), Xi(2)])), cutoff)
                                .scale(&Coefficient::from_int(-2))
                                .add(&t(-2).scale(&h()))
                                .scale(&ap1),
                        )
                        .sub(&t(-2).mul(&w(&[Xi(1), Eta(1)]).add(&w(&[Xi(2), Eta(2)])))),
                ),
                (
                    H1,
                    t(1).mul(&tau(1)).add(&PSymbol::scalar(&half_a1 * &h())),
                ),
                (E2, t(1).mul(&tau(1)).mul(&w(&[Xi(1), Xi(2)]))),
                (
                    F2,
                    tau(-1).circ_h(&t(-1).mul(&word_h(&[Eta(1), Eta(2)])), cutoff),
                ),
                (
                    H2,
                    w(&[Xi(1), Eta(1)])
                        .add(&w(&[Xi(2), Eta(2)]))
                        .sub(&PSymbol::scalar(h())),
                ),
                (E3, w(&[Xi(1), Eta(2)])),
                (F3, w(&[Xi(2), Eta(1)])),
                (H3, w(&[Xi(1), Eta(1)]).sub(&w(&[Xi(2), Eta(2)]))),
                (T1, t(1).mul(&w(&[Eta(1)]))),
                (T2, t(1).mul(&w(&[Eta(2)]))),
                (
                    T3,
                    t(2).mul(&tau(1))
                        .mul(&w(&[Xi(1)]))
                        .add(&t(1).mul(&w(&[Xi(1), Xi(2), Eta(2)]))),
                ),
                (
                    T4,
                    t(2).mul(&tau(1))
                        .mul(&w(&[Xi(2)]))
                        .sub(&t(1).mul(&w(&[Xi(1), Xi(2), Eta(1)]))),
                ),
                (
                    D1,
                    tau(1)
                        .mul(&w(&[Xi(1)]))
                        .add(&t(-1).mul(&w(&[Xi(1), Xi(2), Eta(2)])).scale(alpha)),
                ),
                (
                    D2,
                    tau(1)
                        .mul(&w(&[Xi(2)]))
                        .sub(&t(-1).mul(&w(&[Xi(1), Xi(2), Eta(1)])).scale(alpha)),
                ),
                (
                    D3,
                    t(-1).mul(&w(&[Eta(1)])).add(
                        &tau(-1)
                            .circ_h(&t(-2).mul(&word_h(&[Eta(1), Eta(2), Xi(2)])), cutoff)
                            .scale(&ap1),
                    ),
                ),
                (
                    D4,
                    t(-1).mul(&w(&[Eta(2)])).sub(
                        &tau(-1)
                            .circ_h(&t(-2).mul(&word_h(&[Eta(1), Eta(2), Xi(1)])), cutoff)
                            .scale(&ap1),
                    ),
                ),
            ]
        }
        GammaVariant::PseudoLimit => {
            let ap1 = a1(alpha);
            vec![
                (
                    E1,
                    t(3)
                        .mul(&tau(1))
                        .add(&t(2).mul(&w(&[Xi(1), Eta(1)]).add(&w(&[Xi(2), Eta(2)])))),
                ),
                (
                    F1,
                    t(-1)
                        .mul(&tau(1))
                        .sub(
                            &t(-3)
                                .mul(&tau(-1))
                                .mul(&w(&[Xi(1), Xi(2), Eta(1), Eta(2)]))
                                .scale(&(&Coefficient::from_int(2) * &ap1)),
                        )
                        .sub(&t(-2).mul(&w(&[Xi(1), Eta(1)]).add(&w(&[Xi(2), Eta(2)])))),
                ),
                (H1, t(1).mul(&tau(1))),
                (E2, t(1).mul(&tau(1)).mul(&w(&[Xi(1), Xi(2)]))),
                (F2, t(-1).mul(&tau(-1)).mul(&w(&[Eta(1), Eta(2)]))),
                (H2, w(&[Xi(1), Eta(1)]).add(&w(&[Xi(2), Eta(2)]))),
                (E3, w(&[Xi(1), Eta(2)])),
                (F3, w(&[Xi(2), Eta(1)])),
                (H3, w(&[Xi(1), Eta(1)]).sub(&w(&[Xi(2), Eta(2)]))),
                (T1, t(1).mul(&w(&[Eta(1)]))),
                (T2, t(1).mul(&w(&[Eta(2)]))),
                (
                    T3,
                    t(2).mul(&tau(1))
                        .mul(&w(&[Xi(1)]))
                        .add(&t(1).mul(&w(&[Xi(1), Xi(2), Eta(2)]))),
                ),
                (
                    T4,
                    t(2).mul(&tau(1))
                        .mul(&w(&[Xi(2)]))
                        .sub(&t(1).mul(&w(&[Xi(1), Xi(2), Eta(1)]))),
                ),
                (
                    D1,
                    tau(1)
                        .mul(&w(&[Xi(1)]))
                        .add(&t(-1).mul(&w(&[Xi(1), Xi(2), Eta(2)])).scale(alpha)),
                ),
                (
                    D2,
                    tau(1)
                        .mul(&w(&[Xi(2)]))
                        .sub(&t(-1).mul(&w(&[Xi(1), Xi(2), Eta(1)])).scale(alpha)),
                ),
                (
                    D3,
                    t(-1).mul(&w(&[Eta(1)])).add(
                        &t(-2)
                            .mul(&tau(-1))
                            .mul(&w(&[Xi(2), Eta(1), Eta(2)]))
                            .scale(&ap1),
                    ),
                ),
                // the quartic coefficient here is pinned by the h -> 0
                // limit of the deformed field (see the degeneration test)
                (
                    D4,
                    t(-1).mul(&w(&[Eta(2)])).sub(
                        &t(-2)
                            .mul(&tau(-1))
                            .mul(&w(&[Xi(1), Eta(1), Eta(2)]))
                            .scale(&ap1),
                    ),
                ),
            ]
        }
    };
    debug_assert_eq!(pieces.len(), 17);
    debug_assert!(GAMMA_LABELS.iter().all(|l| pieces.iter().any(|(p, _)| p == l)));
    pieces
}

// ---------------------------------------------------------------------------
// The explicit isomorphism
// ---------------------------------------------------------------------------

/// The label-level isomorphism from the abstract basis onto the 17
/// generators: image = coefficient * labeled generator. The odd images
/// carry the factor `w` (= sqrt(2) i).
pub fn phi_label_map() -> Vec<(GammaBasis, GammaLabel, Coefficient)> {
    use GammaBasis::{Odd, Sp};
    use GammaLabel::*;
    use SpPair::*;
    let one = Coefficient::one();
    let m_one = -&one;
    let m_two = Coefficient::from_int(-2);
    let two = Coefficient::from_int(2);
    let w = Coefficient::omega();
    let m_w = -&w;
    vec![
        (Sp(1, UU), E1, m_one.clone()),
        (Sp(1, VV), F1, m_one.clone()),
        (Sp(1, UV), H1, m_one.clone()),
        (Sp(2, UU), F2, m_two.clone()),
        (Sp(2, VV), E2, m_two.clone()),
        (Sp(2, UV), H2, one.clone()),
        (Sp(3, UU), F3, m_two),
        (Sp(3, VV), E3, two),
        (Sp(3, UV), H3, one),
        (Odd(1, 1, 1), T1, w.clone()),
        (Odd(1, 1, 2), T2, w.clone()),
        (Odd(1, 2, 1), T4, m_w.clone()),
        (Odd(1, 2, 2), T3, w.clone()),
        (Odd(2, 1, 1), D3, w.clone()),
        (Odd(2, 1, 2), D4, w),
        (Odd(2, 2, 1), D2, m_w),
        (Odd(2, 2, 2), D1, Coefficient::omega()),
    ]
}

/// Composes the label map with a generator assignment, giving the images
/// of the abstract basis in the target algebra.
pub fn phi_images<E: Clone>(
    generators: &[(GammaLabel, E)],
    scale: impl Fn(&E, &Coefficient) -> E,
) -> Vec<(GammaBasis, E)> {
    phi_label_map()
        .into_iter()
        .map(|(b, l, c)| {
            let (_, g) = generators
                .iter()
                .find(|(gl, _)| *gl == l)
                .expect("all 17 labels present");
            (b, scale(g, &c))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Target algebras for homomorphism checking
// ---------------------------------------------------------------------------

/// A bracket target with exact (or windowed) equality and a sparse view for
/// independence checks.
pub trait TargetAlgebra: Sync {
    type Elem: Clone + Send + Sync;
    type Key: Ord + Clone;

    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Coefficient) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    /// `Ok` when equal (windowed for inexact values); `Err` renders the
    /// residual.
    fn check_eq(&self, a: &Self::Elem, b: &Self::Elem) -> Result<(), String>;
    fn to_sparse(&self, a: &Self::Elem) -> SparseVec<Self::Key>;
}

/// Undeformed symbols under the Poisson bracket.
pub struct PoissonTarget;

impl TargetAlgebra for PoissonTarget {
    type Elem = PSymbol;
    type Key = TermKey;

    fn bracket(&self, a: &PSymbol, b: &PSymbol) -> PSymbol {
        a.poisson_bracket(b).expect("homogeneous exact operands")
    }

    fn scale(&self, a: &PSymbol, c: &Coefficient) -> PSymbol {
        a.scale(c)
    }

    fn add(&self, a: &PSymbol, b: &PSymbol) -> PSymbol {
        a.add(b)
    }

    fn zero(&self) -> PSymbol {
        PSymbol::zero()
    }

    fn check_eq(&self, a: &PSymbol, b: &PSymbol) -> Result<(), String> {
        a.eq_windowed(b)
            .map_err(|k| format!("differs at t^{} tau^{} {}", k.t_exp, k.tau_exp, k.odd.to_text()))
    }

    fn to_sparse(&self, a: &PSymbol) -> SparseVec<TermKey> {
        a.to_sparse()
    }
}

/// Deformed symbols under the first-order bracket `(1/h) [a, b]`, which
/// carries the structure constants without the deformation scale. With an
/// assigned (nonzero) deformation value, the commutator is computed with
/// the formal parameter and then specialized.
pub struct DeformedTarget {
    pub cutoff: i64,
    pub h_value: Option<Scalar>,
}

impl DeformedTarget {
    pub fn formal(cutoff: i64) -> Self {
        DeformedTarget {
            cutoff,
            h_value: None,
        }
    }
}

impl TargetAlgebra for DeformedTarget {
    type Elem = PSymbol;
    type Key = TermKey;

    fn bracket(&self, a: &PSymbol, b: &PSymbol) -> PSymbol {
        let comm = a
            .super_commutator_h(b, self.cutoff)
            .expect("homogeneous operands");
        match &self.h_value {
            None => {
                let inv_h = Coefficient::one()
                    .checked_div(&Coefficient::h())
                    .expect("h is nonzero");
                comm.scale(&inv_h)
            }
            Some(v) => {
                assert!(!v.is_zero(), "assigned deformation value must be nonzero");
                let mut assign = BTreeMap::new();
                assign.insert(Param::H, v.clone());
                let at_v = comm.evaluate(&assign).expect("h-polynomial has no pole");
                let inv = Coefficient::from_scalar(v.clone())
                    .inv()
                    .expect("nonzero value");
                at_v.scale(&inv)
            }
        }
    }

    fn scale(&self, a: &PSymbol, c: &Coefficient) -> PSymbol {
        a.scale(c)
    }

    fn add(&self, a: &PSymbol, b: &PSymbol) -> PSymbol {
        a.add(b)
    }

    fn zero(&self) -> PSymbol {
        PSymbol::zero()
    }

    fn check_eq(&self, a: &PSymbol, b: &PSymbol) -> Result<(), String> {
        a.eq_windowed(b)
            .map_err(|k| format!("differs at t^{} tau^{} {}", k.t_exp, k.tau_exp, k.odd.to_text()))
    }

    fn to_sparse(&self, a: &PSymbol) -> SparseVec<TermKey> {
        a.to_sparse()
    }
}

/// Supermatrices over the Weyl algebra.
pub struct MatrixTarget;

impl TargetAlgebra for MatrixTarget {
    type Elem = WeylSuperMatrix;
    type Key = (usize, usize, i64, u32);

    fn bracket(&self, a: &WeylSuperMatrix, b: &WeylSuperMatrix) -> WeylSuperMatrix {
        a.bracket(b).expect("homogeneous matrices")
    }

    fn scale(&self, a: &WeylSuperMatrix, c: &Coefficient) -> WeylSuperMatrix {
        a.scale(c)
    }

    fn add(&self, a: &WeylSuperMatrix, b: &WeylSuperMatrix) -> WeylSuperMatrix {
        a.add(b)
    }

    fn zero(&self) -> WeylSuperMatrix {
        WeylSuperMatrix::zero()
    }

    fn check_eq(&self, a: &WeylSuperMatrix, b: &WeylSuperMatrix) -> Result<(), String> {
        if a == b {
            Ok(())
        } else {
            let d = a.sub(b);
            let bad = d
                .to_sparse()
                .into_iter()
                .next()
                .map(|((i, j, t, k), c)| format!("entry ({i},{j}): ({c})*t^{t} d^{k}"))
                .unwrap_or_default();
            Err(format!("matrix residual nonzero: {bad}"))
        }
    }

    fn to_sparse(&self, a: &WeylSuperMatrix) -> SparseVec<Self::Key> {
        a.to_sparse()
    }
}

/// The matrix images of the 17 labels, symbolically in `alpha`.
pub fn gamma_matrix_generators(alpha: &Coefficient) -> Vec<(GammaLabel, WeylSuperMatrix)> {
    GAMMA_LABELS
        .into_iter()
        .map(|l| (l, gamma_matrix(l, alpha)))
        .collect()
}

// ---------------------------------------------------------------------------
// Homomorphism verification
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct PairFailure {
    pub a: GammaBasis,
    pub b: GammaBasis,
    pub residual: String,
}

#[derive(Clone, Debug)]
pub struct HomReport {
    pub pairs: usize,
    pub failures: Vec<PairFailure>,
    pub images_independent: bool,
}

impl HomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.images_independent
    }
}

/// Verifies `phi([x, y]) = [phi(x), phi(y)]` over all ordered basis pairs,
/// plus linear independence of the 17 images.
pub fn hom_check<T: TargetAlgebra>(
    source: &GammaAlgebra,
    images: &[(GammaBasis, T::Elem)],
    target: &T,
) -> HomReport {
    let img = |b: GammaBasis| -> &T::Elem {
        images
            .iter()
            .find(|(x, _)| *x == b)
            .map(|(_, e)| e)
            .expect("image defined on the whole basis")
    };
    let basis = GammaBasis::all();
    let pairs: Vec<(GammaBasis, GammaBasis)> = basis
        .iter()
        .flat_map(|a| basis.iter().map(move |b| (*a, *b)))
        .collect();
    let results = crate::maybe_par_map(pairs, |(a, b)| {
        let lhs = target.bracket(img(a), img(b));
        let mut rhs = target.zero();
        for (k, c) in source.bracket_basis(a, b) {
            rhs = target.add(&rhs, &target.scale(img(*k), c));
        }
        target
            .check_eq(&lhs, &rhs)
            .err()
            .map(|residual| PairFailure { a, b, residual })
    });
    let failures: Vec<PairFailure> = results.into_iter().flatten().collect();
    let mut ech = Echelon::new();
    let mut independent = true;
    for (_, e) in images {
        if !ech.insert(target.to_sparse(e)) {
            independent = false;
        }
    }
    HomReport {
        pairs: basis.len() * basis.len(),
        failures,
        images_independent: independent,
    }
}

// ---------------------------------------------------------------------------
// Generation from the odd part
// ---------------------------------------------------------------------------

pub struct GeneratedSpan {
    pub dimension: usize,
    pub rounds: usize,
}

/// Iterated bracket closure starting from the given elements; stops when
/// the span stabilizes.
pub fn generate_from_odd(
    seeds: &[PSymbol],
    bracket: &(dyn Fn(&PSymbol, &PSymbol) -> PSymbol + Sync),
    max_rounds: usize,
) -> Result<GeneratedSpan, GammaError> {
    let mut ech: Echelon<TermKey> = Echelon::new();
    let mut basis: Vec<PSymbol> = Vec::new();
    for s in seeds {
        if ech.insert(s.to_sparse()) {
            basis.push(s.clone());
        }
    }
    for round in 1..=max_rounds {
        let pairs: Vec<(usize, usize)> = (0..basis.len())
            .flat_map(|i| (0..basis.len()).map(move |j| (i, j)))
            .collect();
        let brackets = crate::maybe_par_map(pairs, |(i, j)| bracket(&basis[i], &basis[j]));
        let mut grew = false;
        for b in brackets {
            if ech.insert(b.to_sparse()) {
                basis.push(b);
                grew = true;
            }
        }
        if !grew {
            return Ok(GeneratedSpan {
                dimension: ech.rank(),
                rounds: round,
            });
        }
    }
    Err(GammaError::NoConvergence(max_rounds))
}

// ---------------------------------------------------------------------------
// Degeneration checks
// ---------------------------------------------------------------------------

/// Compares the `h -> 0` specialization of one labeled family against an
/// undeformed one, label by label (windowed where truncated).
pub fn contraction_limit_check(
    deformed: &[(GammaLabel, PSymbol)],
    plain: &[(GammaLabel, PSymbol)],
) -> Vec<(GammaLabel, String)> {
    let mut failures = Vec::new();
    for (l, e) in deformed {
        let Some((_, p)) = plain.iter().find(|(pl, _)| pl == l) else {
            failures.push((*l, "missing label".to_string()));
            continue;
        };
        if let Err(k) = e.at_h_zero().eq_windowed(p) {
            failures.push((
                *l,
                format!("differs at t^{} tau^{} {}", k.t_exp, k.tau_exp, k.odd.to_text()),
            ));
        }
    }
    failures
}

// ---------------------------------------------------------------------------
// Degenerate parameter values
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct PslReport {
    pub closes: bool,
    pub dimension: usize,
    pub centerless: bool,
    pub quotient_sl2: bool,
    pub detail: Vec<String>,
}

impl PslReport {
    pub fn passed(&self) -> bool {
        self.closes && self.dimension == 14 && self.centerless && self.quotient_sl2
    }
}

/// At the degenerate parameter values the span of two even triples plus the
/// whole odd part closes to a 14-dimensional centerless subalgebra whose
/// quotient is a plain `sl(2)`. The selected triples: families 1 and 2 for
/// `alpha = 1`, families 1 and 3 for `alpha = -1` (for generic `alpha` the
/// first selection fails to close, which serves as the control).
pub fn psl_check(alpha: &Coefficient) -> PslReport {
    let algebra = build_gamma(sigma_of_alpha(alpha));
    let families: [u8; 2] = if *alpha == Coefficient::from_int(-1) {
        [1, 3]
    } else {
        [1, 2]
    };
    let span: Vec<GammaBasis> = GammaBasis::all()
        .into_iter()
        .filter(|b| match b {
            GammaBasis::Sp(i, _) => families.contains(i),
            GammaBasis::Odd(..) => true,
        })
        .collect();
    let in_span = |v: &GammaVec| v.keys().all(|k| span.contains(k));
    let mut detail = Vec::new();
    let mut closes = true;
    for &a in &span {
        for &b in &span {
            let br = algebra.bracket_basis(a, b);
            if !in_span(br) {
                closes = false;
                detail.push(format!("[{a}, {b}] leaves the span"));
            }
        }
    }
    // dimension of the span (basis labels, but run the rank anyway)
    let mut ech: Echelon<GammaBasis> = Echelon::new();
    for &b in &span {
        let mut v = GammaVec::new();
        v.insert(b, Coefficient::one());
        ech.insert(v);
    }
    let dimension = ech.rank();
    // trivial center: the ad-vectors of the span basis are independent
    let mut ad: Echelon<(usize, GammaBasis)> = Echelon::new();
    let mut centerless = true;
    for &a in &span {
        let mut row: SparseVec<(usize, GammaBasis)> = SparseVec::new();
        for (k, &b) in span.iter().enumerate() {
            for (key, c) in algebra.bracket_basis(a, b) {
                row.insert((k, *key), c.clone());
            }
        }
        if !ad.insert(row) {
            centerless = false;
            detail.push(format!("{a} is central in the span"));
        }
    }
    // quotient: the remaining even triple must satisfy the sp(2) table
    // [UU,UV] = 2 UU, [UU,VV] = 4 UV, [UV,VV] = 2 VV (modulo the span)
    let rest: Vec<u8> = (1..=3).filter(|i| !families.contains(i)).collect();
    let mut quotient_sl2 = closes && rest.len() == 1;
    if let [r] = rest[..] {
        let b = |p: SpPair| GammaBasis::Sp(r, p);
        let expect: [(SpPair, SpPair, SpPair, i64); 3] = [
            (SpPair::UU, SpPair::UV, SpPair::UU, 2),
            (SpPair::UU, SpPair::VV, SpPair::UV, 4),
            (SpPair::UV, SpPair::VV, SpPair::VV, 2),
        ];
        for (x, y, z, c) in expect {
            let br = algebra.bracket_basis(b(x), b(y));
            // reduce modulo the span: keep only remaining-family components
            let reduced: GammaVec = br
                .iter()
                .filter(|(k, _)| !span.contains(k))
                .map(|(k, v)| (*k, v.clone()))
                .collect();
            let mut want = GammaVec::new();
            want.insert(b(z), Coefficient::from_int(c));
            if reduced != want {
                quotient_sl2 = false;
                detail.push(format!("quotient constant [{}, {}] deviates", b(x), b(y)));
            }
        }
    }
    PslReport {
        closes,
        dimension,
        centerless,
        quotient_sl2,
        detail,
    }
}

// ---------------------------------------------------------------------------

/// Specialization map for generators: substitute a scalar for `alpha`.
pub fn specialize_generators(
    gens: &[(GammaLabel, PSymbol)],
    alpha: &Scalar,
) -> Vec<(GammaLabel, PSymbol)> {
    let mut assign = BTreeMap::new();
    assign.insert(Param::Alpha, alpha.clone());
    gens.iter()
        .map(|(l, e)| (*l, e.evaluate(&assign).expect("alpha substitution")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUT: i64 = -12;

    fn formal_alpha() -> Coefficient {
        Coefficient::alpha()
    }

    #[test]
    fn seventeen_basis_elements() {
        assert_eq!(GammaBasis::all().len(), 17);
        let odd = GammaBasis::all().iter().filter(|b| b.is_odd()).count();
        assert_eq!(odd, 8);
    }

    #[test]
    fn odd_odd_bracket_shape() {
        // [e1 f1 h1, e2 f2 h2]: every psi factor is 1, so all three
        // symplectic components appear with their sigma weights
        let s = [
            Coefficient::param(Param::Sigma1),
            Coefficient::param(Param::Sigma2),
            Coefficient::param(Param::Sigma3),
        ];
        let g = build_gamma(s.clone());
        let br = g.bracket_basis(GammaBasis::Odd(1, 1, 1), GammaBasis::Odd(2, 2, 2));
        assert_eq!(br.len(), 3);
        assert_eq!(br[&GammaBasis::Sp(1, SpPair::UV)], s[0]);
        assert_eq!(br[&GammaBasis::Sp(2, SpPair::UV)], s[1]);
        assert_eq!(br[&GammaBasis::Sp(3, SpPair::UV)], s[2]);
    }

    #[test]
    fn sp_action_example() {
        // p1(u1,u1) sends e2 -> 2 e1 in the first slot
        let g = build_gamma([
            Coefficient::from_int(1),
            Coefficient::from_int(1),
            Coefficient::from_int(-2),
        ]);
        let br = g.bracket_basis(GammaBasis::Sp(1, SpPair::UU), GammaBasis::Odd(2, 1, 1));
        let mut want = GammaVec::new();
        want.insert(GammaBasis::Odd(1, 1, 1), Coefficient::from_int(2));
        assert_eq!(*br, want);
    }

    #[test]
    fn jacobi_boundary() {
        // zero-sum parameters: clean, symbolically in sigma1, sigma2
        let s1 = Coefficient::param(Param::Sigma1);
        let s2 = Coefficient::param(Param::Sigma2);
        let s3 = -&(&s1 + &s2);
        let g = build_gamma([s1, s2, s3]);
        assert!(g.jacobi_check().is_empty());
        // the orthosymplectic point
        let g = build_gamma([
            Coefficient::from_int(2),
            Coefficient::from_int(-1),
            Coefficient::from_int(-1),
        ]);
        assert!(g.jacobi_check().is_empty());
        // all-ones parameters: violations
        let g = build_gamma([
            Coefficient::one(),
            Coefficient::one(),
            Coefficient::one(),
        ]);
        assert!(!g.jacobi_check().is_empty());
    }

    #[test]
    fn poisson_relations_ledger() {
        // the eight shifted-weight relations among the odd generators
        use GammaLabel::*;
        let alpha = formal_alpha();
        let gens = gamma_alpha_generators(&alpha, GammaVariant::Poisson, CUT);
        let get = |l: GammaLabel| {
            gens.iter()
                .find(|(x, _)| *x == l)
                .map(|(_, e)| e.clone())
                .unwrap()
        };
        let ap1 = &alpha + &Coefficient::one();
        let checks: Vec<(GammaLabel, GammaLabel, PSymbol)> = vec![
            (T1, T3, get(E1)),
            (T1, D4, get(F2).scale(&(-&ap1))),
            (T2, T4, get(E1)),
            (T2, D3, get(F2).scale(&ap1)),
            (D1, T4, get(E2).scale(&ap1)),
            (D1, D3, get(F1)),
            (D2, T3, get(E2).scale(&(-&ap1))),
            (D2, D4, get(F1)),
        ];
        for (a, b, want) in checks {
            let got = get(a).poisson_bracket(&get(b)).unwrap();
            assert!(got.eq_windowed(&want).is_ok(), "[{a}, {b}]");
        }
    }

    #[test]
    fn phi_is_a_homomorphism_symbolically() {
        let alpha = formal_alpha();
        let source = build_gamma(sigma_of_alpha(&alpha));
        let gens = gamma_alpha_generators(&alpha, GammaVariant::Poisson, CUT);
        let images = phi_images(&gens, |e, c| e.scale(c));
        let report = hom_check(&source, &images, &PoissonTarget);
        assert!(report.failures.is_empty(), "{:?}", report.failures.first());
        assert!(report.images_independent);
    }

    #[test]
    fn phi_mutation_is_rejected() {
        // flipping one sign on the T3 image must break the grid
        let alpha = formal_alpha();
        let source = build_gamma(sigma_of_alpha(&alpha));
        let gens = gamma_alpha_generators(&alpha, GammaVariant::Poisson, CUT);
        let mut images = phi_images(&gens, |e, c| e.scale(c));
        for (b, e) in images.iter_mut() {
            if *b == GammaBasis::Odd(1, 2, 2) {
                *e = e.neg();
            }
        }
        let report = hom_check(&source, &images, &PoissonTarget);
        assert!(!report.failures.is_empty());
    }

    #[test]
    fn odd_zero_modes_generate_everything() {
        let alpha = formal_alpha();
        let gens = gamma_alpha_generators(&alpha, GammaVariant::Poisson, CUT);
        let seeds: Vec<PSymbol> = gens
            .iter()
            .filter(|(l, _)| l.is_odd())
            .map(|(_, e)| e.clone())
            .collect();
        assert_eq!(seeds.len(), 8);
        let span = generate_from_odd(
            &seeds,
            &|a, b| a.poisson_bracket(b).expect("homogeneous"),
            6,
        )
        .unwrap();
        assert_eq!(span.dimension, 17);
        // a single odd element with zero self-bracket generates itself only
        let single = vec![PSymbol::t_pow(1).mul(&PSymbol::eta(1))];
        let span = generate_from_odd(
            &single,
            &|a, b| a.poisson_bracket(b).expect("homogeneous"),
            4,
        )
        .unwrap();
        assert_eq!(span.dimension, 1);
    }

    #[test]
    fn odd_generation_at_special_values_never_exceeds_17() {
        // at the degenerate values one structure parameter vanishes, so the
        // odd part generates only the 14-dimensional subalgebra; elsewhere
        // the full span appears
        for (value, expect) in [(0i64, 17usize), (1, 14), (-1, 14), (2, 17)] {
            let alpha = Coefficient::from_int(value);
            let gens = gamma_alpha_generators(&alpha, GammaVariant::Poisson, CUT);
            let seeds: Vec<PSymbol> = gens
                .iter()
                .filter(|(l, _)| l.is_odd())
                .map(|(_, e)| e.clone())
                .collect();
            let span = generate_from_odd(
                &seeds,
                &|a, b| a.poisson_bracket(b).expect("homogeneous"),
                6,
            )
            .unwrap();
            assert!(span.dimension <= 17);
            assert_eq!(span.dimension, expect, "alpha = {value}");
        }
    }

    #[test]
    fn deformed_limit_is_termwise() {
        let alpha = formal_alpha();
        let deformed = gamma_alpha_generators(&alpha, GammaVariant::Deformed, CUT);
        let plain = gamma_alpha_generators(&alpha, GammaVariant::Poisson, CUT);
        let failures = contraction_limit_check(&deformed, &plain);
        assert!(failures.is_empty(), "{failures:?}");
    }

    #[test]
    fn pseudo_limit_matches_pseudo_h() {
        let alpha = formal_alpha();
        let deformed = gamma_alpha_generators(&alpha, GammaVariant::PseudoH, CUT);
        let plain = gamma_alpha_generators(&alpha, GammaVariant::PseudoLimit, CUT);
        let failures = contraction_limit_check(&deformed, &plain);
        assert!(failures.is_empty(), "{failures:?}");
    }

    #[test]
    fn psl_degenerations() {
        let report = psl_check(&Coefficient::one());
        assert!(report.passed(), "{report:?}");
        let report = psl_check(&Coefficient::from_int(-1));
        assert!(report.passed(), "{report:?}");
        // generic control: the same span does not close
        let report = psl_check(&Coefficient::from_int(2));
        assert!(!report.closes);
    }

    #[test]
    fn scaled_parameters_are_isomorphic_for_square_scales() {
        // even part fixed, odd part scaled by 1/2 maps the family at sigma
        // onto the family at 4*sigma
        let alpha = formal_alpha();
        let sigma = sigma_of_alpha(&alpha);
        let source = build_gamma(sigma.clone());
        let four = Coefficient::from_int(4);
        let target = build_gamma([
            &sigma[0] * &four,
            &sigma[1] * &four,
            &sigma[2] * &four,
        ]);
        struct AbstractTarget(GammaAlgebra);
        impl TargetAlgebra for AbstractTarget {
            type Elem = GammaVec;
            type Key = GammaBasis;
            fn bracket(&self, a: &GammaVec, b: &GammaVec) -> GammaVec {
                self.0.bracket(a, b)
            }
            fn scale(&self, a: &GammaVec, c: &Coefficient) -> GammaVec {
                a.iter().map(|(k, v)| (*k, v * c)).collect()
            }
            fn add(&self, a: &GammaVec, b: &GammaVec) -> GammaVec {
                let mut out = a.clone();
                for (k, v) in b {
                    vec_add_scaled(&mut out, v, *k);
                }
                out
            }
            fn zero(&self) -> GammaVec {
                GammaVec::new()
            }
            fn check_eq(&self, a: &GammaVec, b: &GammaVec) -> Result<(), String> {
                if a == b {
                    Ok(())
                } else {
                    Err("differs".to_string())
                }
            }
            fn to_sparse(&self, a: &GammaVec) -> SparseVec<GammaBasis> {
                a.clone()
            }
        }
        let half = Coefficient::from_ratio(1, 2);
        let images: Vec<(GammaBasis, GammaVec)> = GammaBasis::all()
            .into_iter()
            .map(|b| {
                let mut v = GammaVec::new();
                let c = if b.is_odd() { half.clone() } else { Coefficient::one() };
                v.insert(b, c);
                (b, v)
            })
            .collect();
        let report = hom_check(&source, &images, &AbstractTarget(target));
        assert!(report.passed(), "{:?}", report.failures.first());
    }
}
