//! Sparse integer Laurent polynomials in two variables: ring arithmetic,
//! slicing along the level sets of an affine functional, and multiplicity
//! of `1 + z^m` factors on one-dimensional supports.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::lattice::{convex_hull, AffineFunctional, Coord, Hull, LatticePoint, UnimodularAffineMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LaurentError {
    EmptyPolynomial,
    ZeroDivisor,
    NotCollinear,
    NotPrimitive,
}

impl fmt::Display for LaurentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaurentError::EmptyPolynomial => write!(f, "empty polynomial"),
            LaurentError::ZeroDivisor => write!(f, "division by the zero polynomial"),
            LaurentError::NotCollinear => {
                write!(f, "support is not collinear with the given direction")
            }
            LaurentError::NotPrimitive => write!(f, "direction vector is not primitive"),
        }
    }
}

impl core::error::Error for LaurentError {}

/// A multiplicity in `ℕ ∪ {∞}`; infinity arises as the divisibility order
/// of the zero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn finite(&self) -> Option<u64> {
        match self {
            Multiplicity::Finite(n) => Some(*n),
            Multiplicity::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Multiplicity::Infinite)
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

/// A finitely supported `Z`-linear combination of monomials `z^m`,
/// `m ∈ Z^2`. No zero coefficients are stored and iteration order is the
/// exponent order, so equality and serialization are stable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<LatticePoint, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(LatticePoint::ORIGIN, BigInt::one())
    }

    pub fn monomial(exp: LatticePoint, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    /// `1 + z^m`.
    pub fn one_plus(m: LatticePoint) -> Self {
        let mut f = LaurentPoly::one();
        f.add_term(m, BigInt::one());
        f
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (LatticePoint, BigInt)>,
    {
        let mut f = LaurentPoly::zero();
        for (exp, coeff) in terms {
            f.add_term(exp, coeff);
        }
        f
    }

    fn add_term(&mut self, exp: LatticePoint, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticePoint, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &LatticePoint) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn support(&self) -> Vec<LatticePoint> {
        self.terms.keys().copied().collect()
    }

    /// Newton polytope, the convex hull of the support.
    pub fn newton(&self) -> Result<Hull, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::EmptyPolynomial);
        }
        Ok(convex_hull(&self.support()).expect("nonempty support"))
    }

    /// Multiplies by the monomial `z^m`, shifting every exponent.
    pub fn monomial_mul(&self, m: &LatticePoint) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e + *m, c.clone())).collect(),
        }
    }

    pub fn scalar_mul(&self, k: &BigInt) -> LaurentPoly {
        if k.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Relabels exponents through an integral affine unimodular map.
    pub fn apply_map(&self, map: &UnimodularAffineMap) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (map.apply(e), c.clone())).collect(),
        }
    }

    /// Swaps the two variables.
    pub fn transpose(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (LatticePoint::new(e.y, e.x), c.clone()))
                .collect(),
        }
    }

    /// The terms lying on the level `phi = k`, as a (possibly zero)
    /// polynomial.
    pub fn slice_at(&self, phi: &AffineFunctional, k: Coord) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| phi.eval(e) == k)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }
}

impl core::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl core::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl core::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl core::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in rhs.terms.iter() {
                out.add_term(*e1 + *e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let var = |f: &mut fmt::Formatter<'_>, name: &str, e: Coord| -> fmt::Result {
            match e {
                0 => Ok(()),
                1 => write!(f, "{name}"),
                _ => write!(f, "{name}^{e}"),
            }
        };
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one();
            let constant = e.x == 0 && e.y == 0;
            if !unit_coeff || constant {
                write!(f, "{mag}")?;
                if !constant {
                    write!(f, "*")?;
                }
            }
            var(f, "x", e.x)?;
            if e.x != 0 && e.y != 0 {
                write!(f, "*")?;
            }
            var(f, "y", e.y)?;
        }
        Ok(())
    }
}

/// One level set of a polynomial under an affine functional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slice {
    pub level: Coord,
    pub poly: LaurentPoly,
}

/// Decomposes `f = Σ_k f_k` by the value of `phi` on exponents. Levels with
/// no terms are omitted; query them with [`LaurentPoly::slice_at`].
pub fn slices(f: &LaurentPoly, phi: &AffineFunctional) -> Result<Vec<Slice>, LaurentError> {
    if f.is_zero() {
        return Err(LaurentError::EmptyPolynomial);
    }
    let mut by_level: BTreeMap<Coord, LaurentPoly> = BTreeMap::new();
    for (e, c) in f.terms() {
        by_level
            .entry(phi.eval(e))
            .or_insert_with(LaurentPoly::zero)
            .add_term(*e, c.clone());
    }
    Ok(by_level.into_iter().map(|(level, poly)| Slice { level, poly }).collect())
}

/// Largest `d` such that `(1 + z^m)^d` divides `g`, for `g` supported on a
/// line with primitive direction `m`; `∞` for `g = 0`. The result does not
/// depend on the sign of `m`.
pub fn binomial_multiplicity(
    g: &LaurentPoly,
    m: &LatticePoint,
) -> Result<Multiplicity, LaurentError> {
    if !m.is_primitive() {
        return Err(LaurentError::NotPrimitive);
    }
    if g.is_zero() {
        return Ok(Multiplicity::Infinite);
    }
    let support = g.support();
    let base = support[0];
    let mut coords = Vec::with_capacity(support.len());
    for p in &support {
        let d = *p - base;
        if d.det(m) != 0 {
            return Err(LaurentError::NotCollinear);
        }
        let t = if m.x != 0 { d.x / m.x } else { d.y / m.y };
        coords.push(t);
    }
    let t_min = *coords.iter().min().unwrap();
    let t_max = *coords.iter().max().unwrap();
    let mut coeffs = alloc::vec![BigInt::zero(); (t_max - t_min + 1) as usize];
    for (p, t) in support.iter().zip(coords.iter()) {
        coeffs[(t - t_min) as usize] = g.coeff(p);
    }
    let mut mult = 0u64;
    loop {
        // Synthetic division by (T + 1): remainder is the value at T = -1.
        let mut quotient = alloc::vec![BigInt::zero(); coeffs.len().saturating_sub(1)];
        let mut carry = BigInt::zero();
        for i in (0..coeffs.len()).rev() {
            let q = &coeffs[i] - &carry;
            if i == 0 {
                if !q.is_zero() {
                    return Ok(Multiplicity::Finite(mult));
                }
            } else {
                quotient[i - 1] = q.clone();
                carry = q;
            }
        }
        mult += 1;
        while quotient.last().is_some_and(|c| c.is_zero()) {
            quotient.pop();
        }
        coeffs = quotient;
    }
}

fn grlex_key(p: &LatticePoint) -> (Coord, Coord) {
    (p.x + p.y, p.x)
}

/// Exact division: returns `q` with `q · h = f` over `Z`, or `None` when no
/// such Laurent polynomial exists.
pub fn exact_divide(f: &LaurentPoly, h: &LaurentPoly) -> Result<Option<LaurentPoly>, LaurentError> {
    if h.is_zero() {
        return Err(LaurentError::ZeroDivisor);
    }
    if f.is_zero() {
        return Ok(Some(LaurentPoly::zero()));
    }
    let bounds = |g: &LaurentPoly| {
        let s = g.support();
        let min = LatticePoint::new(
            s.iter().map(|p| p.x).min().unwrap(),
            s.iter().map(|p| p.y).min().unwrap(),
        );
        let max = LatticePoint::new(
            s.iter().map(|p| p.x).max().unwrap(),
            s.iter().map(|p| p.y).max().unwrap(),
        );
        (min, max)
    };
    let (fmin, fmax) = bounds(f);
    let (hmin, hmax) = bounds(h);
    let qmin = fmin - hmin;
    let qmax = fmax - hmax;
    if qmax.x < qmin.x || qmax.y < qmin.y {
        return Ok(None);
    }
    // Shift so the dividend and divisor live in N^2; any quotient then has
    // exponents in the nonnegative box qmax - qmin.
    let mut r = f.monomial_mul(&-fmin);
    let hh = h.monomial_mul(&-hmin);
    let h_lead = *hh.support().iter().max_by_key(|p| grlex_key(p)).unwrap();
    let h_lead_coeff = hh.coeff(&h_lead);
    let mut q = LaurentPoly::zero();
    while !r.is_zero() {
        let r_lead = *r.support().iter().max_by_key(|p| grlex_key(p)).unwrap();
        let t = r_lead - h_lead;
        if t.x < 0 || t.y < 0 {
            return Ok(None);
        }
        let c = r.coeff(&r_lead);
        if (&c % &h_lead_coeff) != BigInt::zero() {
            return Ok(None);
        }
        let scale = &c / &h_lead_coeff;
        let term = LaurentPoly::monomial(t, scale);
        r = &r - &(&term * &hh);
        q = &q + &term;
    }
    Ok(Some(q.monomial_mul(&qmin)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(x: Coord, y: Coord) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    fn poly(terms: &[(Coord, Coord, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(x, y, c)| (pt(x, y), BigInt::from(c))))
    }

    fn tom() -> LaurentPoly {
        // (1+x)^3 + 2y(1+x) + y^2
        let x = LaurentPoly::one_plus(pt(1, 0));
        let middle = LaurentPoly::monomial(pt(0, 1), BigInt::from(2));
        let top = LaurentPoly::monomial(pt(0, 2), BigInt::from(1));
        &(&x.pow(3) + &(&middle * &x)) + &top
    }

    #[test]
    fn squaring_a_binomial() {
        let f = LaurentPoly::one_plus(pt(1, 0));
        assert_eq!(&f * &f, poly(&[(0, 0, 1), (1, 0, 2), (2, 0, 1)]));
    }

    #[test]
    fn cubing_a_binomial() {
        let f = LaurentPoly::one_plus(pt(1, 0));
        assert_eq!(f.pow(3), poly(&[(0, 0, 1), (1, 0, 3), (2, 0, 3), (3, 0, 1)]));
    }

    #[test]
    fn one_is_multiplicative_identity() {
        let f = tom();
        assert_eq!(&f * &LaurentPoly::one(), f);
    }

    #[test]
    fn slices_of_tom_by_height() {
        let phi = AffineFunctional::new(pt(0, 1), 0);
        let s = slices(&tom(), &phi).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[0].level, 0);
        assert_eq!(s[0].poly, LaurentPoly::one_plus(pt(1, 0)).pow(3));
        assert_eq!(s[1].poly, poly(&[(0, 1, 2), (1, 1, 2)]));
        assert_eq!(s[2].poly, poly(&[(0, 2, 1)]));
    }

    #[test]
    fn slices_of_monomial() {
        let f = LaurentPoly::monomial(pt(3, -2), BigInt::from(5));
        let phi = AffineFunctional::new(pt(1, 1), 4);
        let s = slices(&f, &phi).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].level, 5);
    }

    #[test]
    fn slices_reject_zero_polynomial() {
        let phi = AffineFunctional::new(pt(0, 1), 0);
        assert_eq!(slices(&LaurentPoly::zero(), &phi), Err(LaurentError::EmptyPolynomial));
    }

    #[test]
    fn empty_level_is_queryable_as_zero() {
        // (1+x)^2 + x y^2 has no terms on the line y = 1.
        let f = &LaurentPoly::one_plus(pt(1, 0)).pow(2) + &poly(&[(1, 2, 1)]);
        let phi = AffineFunctional::new(pt(0, 1), 0);
        assert!(f.slice_at(&phi, 1).is_zero());
        assert_eq!(slices(&f, &phi).unwrap().iter().filter(|s| s.level == 1).count(), 0);
    }

    #[test]
    fn multiplicity_of_binomial_powers() {
        let m = pt(1, 0);
        assert_eq!(
            binomial_multiplicity(&LaurentPoly::one_plus(m).pow(3), &m).unwrap(),
            Multiplicity::Finite(3)
        );
        assert_eq!(
            binomial_multiplicity(&poly(&[(0, 0, 2), (1, 0, 2)]), &m).unwrap(),
            Multiplicity::Finite(1)
        );
        assert_eq!(
            binomial_multiplicity(&LaurentPoly::zero(), &m).unwrap(),
            Multiplicity::Infinite
        );
    }

    #[test]
    fn multiplicity_rejects_non_collinear_support() {
        assert_eq!(
            binomial_multiplicity(&tom(), &pt(1, 0)),
            Err(LaurentError::NotCollinear)
        );
    }

    #[test]
    fn exact_divide_binomial_powers() {
        let x = LaurentPoly::one_plus(pt(1, 0));
        assert_eq!(exact_divide(&x.pow(3), &x).unwrap(), Some(x.pow(2)));
    }

    #[test]
    fn exact_divide_by_monomial_shifts() {
        // (y^2 (1+y^-1)^2 + x y^2) / y^2 = (1+y^-1)^2 + x
        let inner = &LaurentPoly::one_plus(pt(0, -1)).pow(2) + &poly(&[(1, 0, 1)]);
        let f = inner.monomial_mul(&pt(0, 2));
        let y2 = LaurentPoly::monomial(pt(0, 2), BigInt::one());
        assert_eq!(exact_divide(&f, &y2).unwrap(), Some(inner));
    }

    #[test]
    fn exact_divide_detects_non_divisibility() {
        let f = poly(&[(0, 0, 1), (1, 0, 1), (0, 1, 1)]);
        let h = LaurentPoly::one_plus(pt(1, 0));
        assert_eq!(exact_divide(&f, &h).unwrap(), None);
    }

    #[test]
    fn exact_divide_rejects_zero_divisor() {
        assert_eq!(
            exact_divide(&LaurentPoly::one(), &LaurentPoly::zero()),
            Err(LaurentError::ZeroDivisor)
        );
    }

    fn arb_poly(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec(((-4i64..=4, -4i64..=4), -5i64..=5), 1..=max_terms).prop_map(
            |terms| {
                LaurentPoly::from_terms(
                    terms.into_iter().map(|((x, y), c)| (pt(x, y), BigInt::from(c))),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn slices_reassemble(f in arb_poly(8)) {
            prop_assume!(!f.is_zero());
            let phi = AffineFunctional::new(pt(1, 1), -2);
            let s = slices(&f, &phi).unwrap();
            let sum = s.iter().fold(LaurentPoly::zero(), |acc, s| &acc + &s.poly);
            prop_assert_eq!(sum, f);
        }

        #[test]
        fn multiplicity_increments_under_binomial_factor(
            coeffs in proptest::collection::vec(-5i64..=5, 1..6),
        ) {
            let m = pt(1, 1);
            let g = LaurentPoly::from_terms(
                coeffs.iter().enumerate().map(|(i, &c)| (m.scale(i as i64), BigInt::from(c))),
            );
            let before = binomial_multiplicity(&g, &m).unwrap();
            let after = binomial_multiplicity(&(&g * &LaurentPoly::one_plus(m)), &m).unwrap();
            match (before, after) {
                (Multiplicity::Finite(a), Multiplicity::Finite(b)) => prop_assert_eq!(b, a + 1),
                (Multiplicity::Infinite, Multiplicity::Infinite) => {}
                other => prop_assert!(false, "mismatch: {:?}", other),
            }
        }

        #[test]
        fn exact_divide_recovers_factor(q in arb_poly(5), h in arb_poly(5)) {
            prop_assume!(!h.is_zero() && !q.is_zero());
            let f = &q * &h;
            let got = exact_divide(&f, &h).unwrap();
            prop_assert_eq!(got, Some(q));
        }
    }
}
