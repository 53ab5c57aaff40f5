//! Integer Laurent polynomials in `l` variables whose exponents live in the
//! half-integer lattice.
//!
//! Exponents are stored doubled, so `T^{3/2}` has the doubled exponent `3`
//! and every ring operation stays in integer arithmetic.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::half::Half;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },
    #[error("exponent has {got} coordinates, expected {expected}")]
    ExponentLength { expected: usize, got: usize },
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("support of coordinate {coord} cannot be centered on the half-integer lattice")]
    NotCenterable { coord: usize },
    #[error("division is not exact")]
    InexactDivision,
    #[error("empty product: at least one variable is required")]
    EmptyProduct,
}

/// A point of `((1/2)Z)^l`, stored as the doubled integer vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(Vec<i64>);

impl Exponent {
    pub fn from_doubled(doubled: Vec<i64>) -> Self {
        Exponent(doubled)
    }

    pub fn from_halves(coords: &[Half]) -> Self {
        Exponent(coords.iter().map(|h| h.doubled()).collect())
    }

    /// Integer exponent vector, i.e. doubled coordinates `2 * a_i`.
    pub fn from_ints(coords: &[i64]) -> Self {
        Exponent(coords.iter().map(|c| 2 * c).collect())
    }

    pub fn zero(len: usize) -> Self {
        Exponent(vec![0; len])
    }

    pub fn doubled(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coord(&self, i: usize) -> Half {
        Half::from_doubled(self.0[i])
    }

    pub fn coords(&self) -> Vec<Half> {
        self.0.iter().map(|&d| Half::from_doubled(d)).collect()
    }

    /// `<self, h>` for an integer covector `h`.
    pub fn pair(&self, h: &[i64]) -> Half {
        Half::from_doubled(self.0.iter().zip(h).map(|(a, b)| a * b).sum())
    }

    /// Sum of coordinates.
    pub fn coordinate_sum(&self) -> Half {
        Half::from_doubled(self.0.iter().sum())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|d| d % 2 == 0)
    }

    pub fn scaled(&self, k: i64) -> Exponent {
        Exponent(self.0.iter().map(|d| d * k).collect())
    }
}

impl Add for &Exponent {
    type Output = Exponent;
    fn add(self, rhs: &Exponent) -> Exponent {
        debug_assert_eq!(self.0.len(), rhs.0.len());
        Exponent(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Exponent {
    type Output = Exponent;
    fn sub(self, rhs: &Exponent) -> Exponent {
        debug_assert_eq!(self.0.len(), rhs.0.len());
        Exponent(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", Half::from_doubled(*d))?;
        }
        write!(f, ")")
    }
}

/// Integer-coefficient Laurent polynomial in `nvars` variables.
///
/// Invariant: no stored coefficient is zero and every exponent has length
/// `nvars`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultivariateLaurent {
    nvars: usize,
    terms: BTreeMap<Exponent, i64>,
}

impl MultivariateLaurent {
    pub fn zero(nvars: usize) -> Self {
        MultivariateLaurent {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        let mut p = Self::zero(nvars);
        if c != 0 {
            p.terms.insert(Exponent::zero(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn monomial(exp: Exponent, c: i64) -> Self {
        let mut p = Self::zero(exp.len());
        if c != 0 {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The variable `T_i`.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 2;
        Self::monomial(Exponent(e), 1)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = (Exponent, i64)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(LaurentError::ExponentLength {
                    expected: nvars,
                    got: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exponent) -> i64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    /// Terms in increasing lexicographic order of doubled exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, i64)> + '_ {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn support(&self) -> BTreeSet<Exponent> {
        self.terms.keys().cloned().collect()
    }

    fn add_term(&mut self, e: Exponent, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_nvars(&self, other: &Self) -> Result<(), LaurentError> {
        if self.nvars != other.nvars {
            Err(LaurentError::NvarsMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_nvars(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero(self.nvars);
        }
        MultivariateLaurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Multiplies by the monomial `e^shift`.
    pub fn shift(&self, shift: &Exponent) -> Self {
        MultivariateLaurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, &c)| (e + shift, c)).collect(),
        }
    }

    /// Substitutes `T_i -> T_i^{-1}` in every variable.
    pub fn involute(&self) -> Self {
        MultivariateLaurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, &c)| (-e, c)).collect(),
        }
    }

    /// Per-coordinate `(min, max)` of the doubled support.
    pub fn bounding_box(&self) -> Option<Vec<(i64, i64)>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut bb: Vec<(i64, i64)> = first.0.iter().map(|&d| (d, d)).collect();
        for e in it {
            for (b, &d) in bb.iter_mut().zip(&e.0) {
                b.0 = b.0.min(d);
                b.1 = b.1.max(d);
            }
        }
        Some(bb)
    }

    /// Translates the support so its bounding box is centered at the origin.
    pub fn center(&self) -> Result<Self, LaurentError> {
        let bb = self.bounding_box().ok_or(LaurentError::ZeroPolynomial)?;
        let mut shift = Vec::with_capacity(self.nvars);
        for (i, (lo, hi)) in bb.into_iter().enumerate() {
            let mid = lo + hi;
            if mid % 2 != 0 {
                return Err(LaurentError::NotCenterable { coord: i });
            }
            shift.push(-mid / 2);
        }
        Ok(self.shift(&Exponent(shift)))
    }

    /// True when `involute(self) = +-self`.
    pub fn is_symmetric(&self) -> bool {
        let inv = self.involute();
        inv == *self || inv == -self
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<(&Exponent, i64)> {
        self.terms.iter().next_back().map(|(e, &c)| (e, c))
    }

    /// Lexicographically smallest term.
    pub fn trailing(&self) -> Option<(&Exponent, i64)> {
        self.terms.iter().next().map(|(e, &c)| (e, c))
    }

    /// Flips the global sign so the leading coefficient is positive.
    pub fn normalize_sign(&self) -> Self {
        match self.leading() {
            Some((_, c)) if c < 0 => -self,
            _ => self.clone(),
        }
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Uses lex-leading-term division. Every exponent of a true quotient lies
    /// in the box `[min(a) - min(b), max(a) - max(b)]` coordinatewise, so a
    /// candidate term outside that box proves the division is not exact.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, LaurentError> {
        self.check_nvars(divisor)?;
        let (lead_b, lead_c) = match divisor.leading() {
            Some((e, c)) => (e.clone(), c),
            None => return Err(LaurentError::ZeroPolynomial),
        };
        let mut quotient = Self::zero(self.nvars);
        if self.is_zero() {
            return Ok(quotient);
        }
        let bb_a = self.bounding_box().unwrap();
        let bb_b = divisor.bounding_box().unwrap();
        let lo: Vec<i64> = bb_a.iter().zip(&bb_b).map(|(a, b)| a.0 - b.0).collect();
        let hi: Vec<i64> = bb_a.iter().zip(&bb_b).map(|(a, b)| a.1 - b.1).collect();
        let mut rem = self.clone();
        while let Some((e, c)) = rem.leading() {
            if c % lead_c != 0 {
                return Err(LaurentError::InexactDivision);
            }
            let qe = e - &lead_b;
            let in_box = qe
                .0
                .iter()
                .zip(lo.iter().zip(&hi))
                .all(|(d, (l, h))| l <= d && d <= h);
            if !in_box {
                return Err(LaurentError::InexactDivision);
            }
            let qc = c / lead_c;
            for (eb, &cb) in &divisor.terms {
                rem.add_term(&qe + eb, -qc * cb);
            }
            quotient.add_term(qe, qc);
        }
        Ok(quotient)
    }

    /// Renders with the given variable names, highest lex term first.
    pub fn render(&self, names: &[&str]) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        if self.is_zero() {
            s.push('0');
            return s;
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let c = *c;
            if k == 0 {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if c < 0 { " - " } else { " + " });
            }
            let _ = write!(s, "{}", c.abs());
            let mut first = true;
            for (i, &d) in e.0.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                s.push_str(if first { " * " } else { " " });
                first = false;
                let _ = write!(s, "{}^{{{}}}", names[i], Half::from_doubled(d));
            }
        }
        s
    }
}

/// Default variable names: `T` for one variable, `X Y Z` up to three,
/// otherwise `T1 .. Tl`.
pub fn default_variable_names(nvars: usize) -> Vec<String> {
    use alloc::format;
    match nvars {
        1 => vec!["T".into()],
        2 => vec!["X".into(), "Y".into()],
        3 => vec!["X".into(), "Y".into(), "Z".into()],
        n => (1..=n).map(|i| format!("T{i}")).collect(),
    }
}

impl fmt::Display for MultivariateLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_variable_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.render(&refs))
    }
}

/// `prod_{i=1}^{l} (T_i^{1/2} - T_i^{-1/2})`.
pub fn euler_factor(nvars: usize) -> Result<MultivariateLaurent, LaurentError> {
    if nvars == 0 {
        return Err(LaurentError::EmptyProduct);
    }
    let mut out = MultivariateLaurent::one(nvars);
    for i in 0..nvars {
        let mut plus = vec![0; nvars];
        plus[i] = 1;
        let mut minus = vec![0; nvars];
        minus[i] = -1;
        let factor = MultivariateLaurent::from_terms(
            nvars,
            [(Exponent(plus), 1), (Exponent(minus), -1)],
        )?;
        out = out.checked_mul(&factor)?;
    }
    Ok(out)
}

// Operator forms panic on a variable-count mismatch; use the `checked_*`
// methods when the operands come from different sources.

impl Add for &MultivariateLaurent {
    type Output = MultivariateLaurent;
    fn add(self, rhs: &MultivariateLaurent) -> MultivariateLaurent {
        self.checked_add(rhs).expect("nvars mismatch in add")
    }
}

impl Sub for &MultivariateLaurent {
    type Output = MultivariateLaurent;
    fn sub(self, rhs: &MultivariateLaurent) -> MultivariateLaurent {
        self.checked_sub(rhs).expect("nvars mismatch in sub")
    }
}

impl Mul for &MultivariateLaurent {
    type Output = MultivariateLaurent;
    fn mul(self, rhs: &MultivariateLaurent) -> MultivariateLaurent {
        self.checked_mul(rhs).expect("nvars mismatch in mul")
    }
}

impl Neg for &MultivariateLaurent {
    type Output = MultivariateLaurent;
    fn neg(self) -> MultivariateLaurent {
        self.scale(-1)
    }
}

impl Neg for MultivariateLaurent {
    type Output = MultivariateLaurent;
    fn neg(self) -> MultivariateLaurent {
        self.scale(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn poly(nvars: usize, terms: &[(&[i64], i64)]) -> MultivariateLaurent {
        MultivariateLaurent::from_terms(
            nvars,
            terms
                .iter()
                .map(|(e, c)| (Exponent::from_doubled(e.to_vec()), *c)),
        )
        .unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = poly(1, &[(&[1], 1), (&[-1], -1)]);
        let b = poly(1, &[(&[1], 1), (&[-1], 1)]);
        assert_eq!(&a * &b, poly(1, &[(&[2], 1), (&[-2], -1)]));
    }

    #[test]
    fn involute_negates_exponents() {
        let p = poly(2, &[(&[2, 0], 1), (&[0, 1], -1)]);
        assert_eq!(p.involute(), poly(2, &[(&[-2, 0], 1), (&[0, -1], -1)]));
        assert_eq!(p.involute().involute(), p);
    }

    #[test]
    fn add_negation_is_empty() {
        let p = poly(2, &[(&[2, 0], 3), (&[0, 1], -1)]);
        let z = &p + &(-&p);
        assert!(z.is_zero());
        assert_eq!(z.nterms(), 0);
    }

    #[test]
    fn nvars_mismatch() {
        let a = MultivariateLaurent::one(1);
        let b = MultivariateLaurent::one(2);
        assert_eq!(
            a.checked_mul(&b),
            Err(LaurentError::NvarsMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn euler_factor_values() {
        assert_eq!(
            euler_factor(1).unwrap(),
            poly(1, &[(&[1], 1), (&[-1], -1)])
        );
        let f2 = euler_factor(2).unwrap();
        assert_eq!(
            f2,
            poly(
                2,
                &[(&[1, 1], 1), (&[1, -1], -1), (&[-1, 1], -1), (&[-1, -1], 1)]
            )
        );
        assert_eq!(euler_factor(3).unwrap().nterms(), 8);
        assert_eq!(euler_factor(0), Err(LaurentError::EmptyProduct));
    }

    #[test]
    fn center_and_symmetry() {
        let p = poly(1, &[(&[4], 1), (&[2], 1)]);
        assert_eq!(p.center().unwrap(), poly(1, &[(&[1], 1), (&[-1], 1)]));
        let trefoil = poly(1, &[(&[2], 1), (&[0], -1), (&[-2], 1)]);
        assert!(trefoil.is_symmetric());
        assert!(!poly(1, &[(&[2], 1), (&[0], -1)]).is_symmetric());
        assert_eq!(
            MultivariateLaurent::zero(1).center(),
            Err(LaurentError::ZeroPolynomial)
        );
        // T^{1/2} + 1 has no half-integer center.
        assert_eq!(
            poly(1, &[(&[1], 1), (&[0], 1)]).center(),
            Err(LaurentError::NotCenterable { coord: 0 })
        );
    }

    #[test]
    fn exact_division() {
        let t = MultivariateLaurent::variable(2, 0);
        let one = MultivariateLaurent::one(2);
        let tm1 = &t - &one;
        let q = poly(2, &[(&[2, 2], 3), (&[0, -2], -1), (&[-4, 0], 2)]);
        let prod = &q * &tm1;
        assert_eq!(prod.div_exact(&tm1).unwrap(), q);
        assert_eq!(one.div_exact(&tm1), Err(LaurentError::InexactDivision));
        let two = MultivariateLaurent::constant(2, 2);
        assert_eq!(one.div_exact(&two), Err(LaurentError::InexactDivision));
        assert_eq!(
            one.div_exact(&MultivariateLaurent::zero(2)),
            Err(LaurentError::ZeroPolynomial)
        );
    }

    #[test]
    fn render_half_exponents() {
        let p = poly(2, &[(&[-3, 3], -1), (&[1, 1], 4), (&[0, 0], 2)]);
        assert_eq!(p.render(&["X", "Y"]), "4 * X^{1/2} Y^{1/2} + 2 - 1 * X^{-3/2} Y^{3/2}");
        assert_eq!(MultivariateLaurent::zero(1).to_string(), "0");
    }
}
