//! Exact arithmetic for monomials and polynomials in two commuting
//! variables U, V over the two-element field.
//!
//! Coefficients live in F2, so a polynomial is just a finite set of
//! monomials: addition is symmetric difference and every element is its
//! own negative. Polynomials are kept as canonically sorted term lists
//! so equality is structural and serialization is deterministic.

use serde::Serialize;
use std::fmt;

/// Largest exponent accepted by checked multiplication and the parser.
///
/// Everything at desk scale stays tiny; hitting the cap means the input
/// is malformed rather than the arithmetic being too small.
pub const DEFAULT_EXPONENT_CAP: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("exponent overflow: U^{u} V^{v} exceeds cap {cap}")]
    ExponentOverflow { u: u64, v: u64, cap: u32 },
}

/// A monomial U^a V^b with non-negative exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Monomial {
    pub u_exp: u32,
    pub v_exp: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { u_exp: 0, v_exp: 0 };

    pub fn new(u_exp: u32, v_exp: u32) -> Self {
        Monomial { u_exp, v_exp }
    }

    pub fn u(exp: u32) -> Self {
        Monomial { u_exp: exp, v_exp: 0 }
    }

    pub fn v(exp: u32) -> Self {
        Monomial { u_exp: 0, v_exp: exp }
    }

    pub fn is_one(&self) -> bool {
        self.u_exp == 0 && self.v_exp == 0
    }

    /// Total exponent a + b. A reduced differential only carries terms
    /// with positive total exponent.
    pub fn total(&self) -> u64 {
        self.u_exp as u64 + self.v_exp as u64
    }

    /// Exponentwise sum, checked against [`DEFAULT_EXPONENT_CAP`].
    pub fn checked_mul(self, other: Monomial) -> Result<Monomial, PolyError> {
        self.checked_mul_with_cap(other, DEFAULT_EXPONENT_CAP)
    }

    pub fn checked_mul_with_cap(self, other: Monomial, cap: u32) -> Result<Monomial, PolyError> {
        let u = self.u_exp as u64 + other.u_exp as u64;
        let v = self.v_exp as u64 + other.v_exp as u64;
        if u > cap as u64 || v > cap as u64 {
            return Err(PolyError::ExponentOverflow { u, v, cap });
        }
        Ok(Monomial { u_exp: u as u32, v_exp: v as u32 })
    }

    /// Whether `self` divides `other` exponentwise.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.u_exp <= other.u_exp && self.v_exp <= other.v_exp
    }

    /// Exact quotient; caller guarantees divisibility.
    pub fn quotient(&self, divisor: &Monomial) -> Monomial {
        debug_assert!(divisor.divides(self));
        Monomial {
            u_exp: self.u_exp - divisor.u_exp,
            v_exp: self.v_exp - divisor.v_exp,
        }
    }
}

/// Exponentwise sum of two monomials.
pub fn mono_mul(a: Monomial, b: Monomial) -> Result<Monomial, PolyError> {
    a.checked_mul(b)
}

impl fmt::Display for Monomial {
    /// Canonical text form: `U`, `V2`, `U2V1`-style; exponent 1 omits the
    /// digit, exponent 0 omits the variable, and the identity renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        match self.u_exp {
            0 => {}
            1 => write!(f, "U")?,
            n => write!(f, "U{n}")?,
        }
        match self.v_exp {
            0 => {}
            1 => write!(f, "V")?,
            n => write!(f, "V{n}")?,
        }
        Ok(())
    }
}

/// Which variables to kill in [`specialize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Specialization {
    SetVZero,
    SetUZero,
    SetBothZero,
}

impl Specialization {
    fn keeps(&self, m: &Monomial) -> bool {
        match self {
            Specialization::SetVZero => m.v_exp == 0,
            Specialization::SetUZero => m.u_exp == 0,
            Specialization::SetBothZero => m.is_one(),
        }
    }
}

/// A polynomial over F2 in U and V: a canonical sorted set of monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct BivariatePoly {
    terms: Vec<Monomial>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        BivariatePoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        BivariatePoly { terms: vec![Monomial::ONE] }
    }

    /// Builds from an arbitrary term list; duplicate pairs cancel mod 2.
    pub fn from_terms(mut terms: Vec<Monomial>) -> Self {
        terms.sort_unstable();
        let mut out: Vec<Monomial> = Vec::with_capacity(terms.len());
        for t in terms {
            if out.last() == Some(&t) {
                out.pop();
            } else {
                out.push(t);
            }
        }
        BivariatePoly { terms: out }
    }

    pub fn monomial(m: Monomial) -> Self {
        BivariatePoly { terms: vec![m] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    /// The single term of a monomial polynomial, if it is one.
    pub fn as_monomial(&self) -> Option<Monomial> {
        match self.terms.as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    pub fn add(&self, other: &BivariatePoly) -> BivariatePoly {
        poly_add(self, other)
    }

    pub fn mul_mono(&self, m: Monomial) -> Result<BivariatePoly, PolyError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(t.checked_mul(m)?);
        }
        // Multiplying by a fixed monomial preserves the sort order.
        Ok(BivariatePoly { terms })
    }

    pub fn specialize(&self, which: Specialization) -> BivariatePoly {
        BivariatePoly {
            terms: self.terms.iter().copied().filter(|m| which.keeps(m)).collect(),
        }
    }
}

/// Symmetric difference of term sets (addition in characteristic 2).
pub fn poly_add(p: &BivariatePoly, q: &BivariatePoly) -> BivariatePoly {
    let mut out = Vec::with_capacity(p.terms.len() + q.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < p.terms.len() && j < q.terms.len() {
        match p.terms[i].cmp(&q.terms[j]) {
            std::cmp::Ordering::Less => {
                out.push(p.terms[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(q.terms[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&p.terms[i..]);
    out.extend_from_slice(&q.terms[j..]);
    BivariatePoly { terms: out }
}

/// Drops every term with a positive exponent in the killed variable(s).
pub fn specialize(p: &BivariatePoly, which: Specialization) -> BivariatePoly {
    p.specialize(which)
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(u: u32, v: u32) -> Monomial {
        Monomial::new(u, v)
    }

    #[test]
    fn mono_mul_adds_exponents() {
        assert_eq!(mono_mul(m(2, 0), m(0, 1)).unwrap(), m(2, 1));
        assert_eq!(mono_mul(m(0, 0), m(3, 5)).unwrap(), m(3, 5));
        assert_eq!(mono_mul(m(1, 1), m(1, 1)).unwrap(), m(2, 2));
    }

    #[test]
    fn mono_mul_overflow_is_an_error() {
        let big = m(DEFAULT_EXPONENT_CAP, 0);
        assert!(matches!(
            mono_mul(big, m(1, 0)),
            Err(PolyError::ExponentOverflow { .. })
        ));
    }

    #[test]
    fn poly_add_mod_two() {
        let u = BivariatePoly::monomial(m(1, 0));
        let v = BivariatePoly::monomial(m(0, 1));
        let uv = BivariatePoly::monomial(m(1, 1));

        assert!(poly_add(&u, &u).is_zero());
        assert_eq!(poly_add(&u, &v), BivariatePoly::from_terms(vec![m(1, 0), m(0, 1)]));
        let left = BivariatePoly::from_terms(vec![m(1, 0), m(1, 1)]);
        let right = BivariatePoly::from_terms(vec![m(1, 1), m(0, 1)]);
        assert_eq!(
            poly_add(&left, &right),
            BivariatePoly::from_terms(vec![m(1, 0), m(0, 1)])
        );
        assert_eq!(poly_add(&uv, &BivariatePoly::zero()), uv);
    }

    #[test]
    fn specialize_kills_the_right_terms() {
        let p = BivariatePoly::from_terms(vec![m(1, 0), m(0, 1)]);
        assert_eq!(
            specialize(&p, Specialization::SetVZero),
            BivariatePoly::monomial(m(1, 0))
        );
        assert!(specialize(&p, Specialization::SetBothZero).is_zero());
        let v2 = BivariatePoly::monomial(m(0, 2));
        assert_eq!(specialize(&v2, Specialization::SetUZero), v2);
    }

    #[test]
    fn duplicate_terms_cancel_on_construction() {
        let p = BivariatePoly::from_terms(vec![m(1, 0), m(1, 0), m(0, 1)]);
        assert_eq!(p, BivariatePoly::monomial(m(0, 1)));
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        (0u32..6, 0u32..6).prop_map(|(u, v)| Monomial::new(u, v))
    }

    fn arb_poly() -> impl Strategy<Value = BivariatePoly> {
        prop::collection::vec(arb_mono(), 0..12).prop_map(BivariatePoly::from_terms)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn add_commutative_associative_self_inverse(
            p in arb_poly(), q in arb_poly(), r in arb_poly()
        ) {
            prop_assert_eq!(poly_add(&p, &q), poly_add(&q, &p));
            prop_assert_eq!(
                poly_add(&poly_add(&p, &q), &r),
                poly_add(&p, &poly_add(&q, &r))
            );
            prop_assert!(poly_add(&p, &p).is_zero());
        }
    }

    proptest! {
        #[test]
        fn specialize_composition(p in arb_poly()) {
            let both = specialize(&p, Specialization::SetBothZero);
            let composed = specialize(
                &specialize(&p, Specialization::SetUZero),
                Specialization::SetVZero,
            );
            prop_assert_eq!(both, composed);
        }

        #[test]
        fn mono_mul_commutative_with_identity(a in arb_mono(), b in arb_mono()) {
            prop_assert_eq!(mono_mul(a, b).unwrap(), mono_mul(b, a).unwrap());
            prop_assert_eq!(mono_mul(a, Monomial::ONE).unwrap(), a);
        }
    }
}
