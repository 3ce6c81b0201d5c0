//! Exact arithmetic in real quadratic fields `Q(sqrt(D))`.
//!
//! A [`QuadExt`] is `a + b*sqrt(D)` with rational `a`, `b` and a non-negative
//! integer radicand. Values are normalized at construction:
//!
//! * square factors are pulled out of the radicand (`sqrt(72) = 6*sqrt(2)`),
//! * a perfect-square radicand or a zero irrational part collapses the value
//!   to a pure rational, stored with `b = 0` and `D = 0`.
//!
//! Sign, comparison, floor and ceiling are decided with integer arithmetic
//! only. [`QuadExt::to_f64`] exists for display and diagnostics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cfrac::CoeffVector;
use crate::num::{exact_sqrt, floor_div, split_square, Int};

/// Exact rational over the crate's integer scalar.
pub type Rational<I> = Ratio<I>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("leading coefficient c3 is zero; not a quadratic equation")]
    ZeroLeadingCoefficient,
    #[error("discriminant {0} is negative; the quadratic has no real root")]
    NegativeDiscriminant(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different quadratic fields (radicands {0} and {1})")]
    RadicandMismatch(String, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// `rat + irr * sqrt(radicand)`.
#[derive(Debug, Clone)]
pub struct QuadExt<I: Int> {
    rat: Ratio<I>,
    irr: Ratio<I>,
    radicand: I,
}

impl<I: Int> QuadExt<I> {
    /// Builds `a + b*sqrt(d)`. Fails with `NegativeDiscriminant` for `d < 0`.
    pub fn new(a: Ratio<I>, b: Ratio<I>, d: I) -> Result<Self, FieldError> {
        if d.is_negative() {
            return Err(FieldError::NegativeDiscriminant(d.to_string()));
        }
        if b.is_zero() || d.is_zero() {
            return Ok(Self::from_rational(a));
        }
        let (square, free) = split_square(&d);
        if free.is_one() {
            return Ok(Self::from_rational(a + b * Ratio::from_integer(square)));
        }
        Ok(Self {
            rat: a,
            irr: b * Ratio::from_integer(square),
            radicand: free,
        })
    }

    pub fn from_rational(r: Ratio<I>) -> Self {
        Self {
            rat: r,
            irr: Ratio::zero(),
            radicand: I::zero(),
        }
    }

    pub fn from_int(n: I) -> Self {
        Self::from_rational(Ratio::from_integer(n))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_int(I::lit(n))
    }

    /// `sqrt(n)` for a non-negative integer `n`.
    pub fn sqrt_of(n: I) -> Result<Self, FieldError> {
        Self::new(Ratio::zero(), Ratio::one(), n)
    }

    pub fn zero() -> Self {
        Self::from_int(I::zero())
    }

    pub fn one() -> Self {
        Self::from_int(I::one())
    }

    /// The rational part `a`.
    pub fn rat_part(&self) -> &Ratio<I> {
        &self.rat
    }

    /// The irrational coefficient `b`.
    pub fn irr_part(&self) -> &Ratio<I> {
        &self.irr
    }

    /// Radicand `D`; zero for pure rationals.
    pub fn radicand(&self) -> &I {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    /// The rational value, when the element is rational.
    pub fn as_rational(&self) -> Option<&Ratio<I>> {
        self.is_rational().then_some(&self.rat)
    }

    /// Galois conjugate `a - b*sqrt(D)`.
    pub fn conj(&self) -> Self {
        Self {
            rat: self.rat.clone(),
            irr: -self.irr.clone(),
            radicand: self.radicand.clone(),
        }
    }

    /// Field norm `a^2 - b^2 D`, i.e. `x * conj(x)`.
    pub fn norm(&self) -> Ratio<I> {
        self.rat.clone() * self.rat.clone()
            - self.irr.clone() * self.irr.clone() * Ratio::from_integer(self.radicand.clone())
    }

    /// Exact sign: -1, 0 or +1.
    pub fn sign(&self) -> i8 {
        let sa = ratio_sign(&self.rat);
        let sb = ratio_sign(&self.irr);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare a^2 with b^2 D. Equality is impossible for a
        // squarefree D > 1 but is handled for completeness.
        let a2 = self.rat.clone() * self.rat.clone();
        let b2d = self.irr.clone() * self.irr.clone() * Ratio::from_integer(self.radicand.clone());
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Largest integer `n` with `n <= self`.
    pub fn floor(&self) -> I {
        // Write the value as (p + r*sqrt(D)) / q over a common denominator q > 0.
        let q = num_integer::Integer::lcm(self.rat.denom(), self.irr.denom());
        let p = self.rat.numer().clone() * (q.clone() / self.rat.denom().clone());
        let r = self.irr.numer().clone() * (q.clone() / self.irr.denom().clone());
        if r.is_zero() {
            return floor_div(&p, &q);
        }
        // floor(r*sqrt(D)) from the integer square root of r^2 D. D is not a
        // perfect square here, so r*sqrt(D) is irrational and never an integer.
        let root = (r.clone() * r.clone() * self.radicand.clone()).sqrt();
        let floor_irr = if r.is_positive() {
            root
        } else {
            -root - I::one()
        };
        // p + r*sqrt(D) lies strictly inside (p + floor_irr, p + floor_irr + 1),
        // so dividing by q cannot cross an integer boundary differently.
        floor_div(&(p + floor_irr), &q)
    }

    /// Smallest integer `n` with `n >= self`.
    pub fn ceil(&self) -> I {
        -(-self.clone()).floor()
    }

    /// Combines two values under `op`, reporting mismatched fields and division by zero.
    pub fn arith(&self, other: &Self, op: FieldOp) -> Result<Self, FieldError> {
        let (x, y, d) = align(self, other)?;
        let out = match op {
            FieldOp::Add => Self::raw(x.0 + y.0, x.1 + y.1, d),
            FieldOp::Sub => Self::raw(x.0 - y.0, x.1 - y.1, d),
            FieldOp::Mul => {
                let dd = Ratio::from_integer(d.clone());
                Self::raw(
                    x.0.clone() * y.0.clone() + x.1.clone() * y.1.clone() * dd,
                    x.0 * y.1 + x.1 * y.0,
                    d,
                )
            }
            FieldOp::Div => {
                let dd = Ratio::from_integer(d.clone());
                let den = y.0.clone() * y.0.clone() - y.1.clone() * y.1.clone() * dd.clone();
                if den.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                // x / y = x * conj(y) / norm(y)
                let re = (x.0.clone() * y.0.clone() - x.1.clone() * y.1.clone() * dd) / den.clone();
                let im = (x.1 * y.0 - x.0 * y.1) / den;
                Self::raw(re, im, d)
            }
        };
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.arith(other, FieldOp::Add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.arith(other, FieldOp::Sub)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.arith(other, FieldOp::Mul)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.arith(other, FieldOp::Div)
    }

    pub fn recip(&self) -> Result<Self, FieldError> {
        Self::one().try_div(self)
    }

    /// Exact comparison; fails only when the two values live in different fields.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, FieldError> {
        Ok(self.try_sub(other)?.sign().cmp(&0))
    }

    /// Floating-point approximation for display. Never used for decisions.
    pub fn to_f64(&self) -> f64 {
        let a = ratio_f64(&self.rat);
        let b = ratio_f64(&self.irr);
        let d = self.radicand.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }

    // Already-aligned components: squarefree radicand known, only collapse zeros.
    fn raw(rat: Ratio<I>, irr: Ratio<I>, radicand: I) -> Self {
        if irr.is_zero() || radicand.is_zero() {
            Self::from_rational(rat)
        } else {
            Self { rat, irr, radicand }
        }
    }
}

/// The larger real root of `c3 u^2 + c2 u + c1 = 0`.
pub fn make_root<I: Int>(c: &CoeffVector<I>) -> Result<QuadExt<I>, FieldError> {
    let [lo, hi] = quadratic_roots(c)?;
    debug_assert!(lo
        .try_cmp(&hi)
        .map(|o| o != Ordering::Greater)
        .unwrap_or(false));
    Ok(hi)
}

/// Both real roots of `c3 u^2 + c2 u + c1 = 0`, ascending.
pub fn quadratic_roots<I: Int>(c: &CoeffVector<I>) -> Result<[QuadExt<I>; 2], FieldError> {
    let [c1, c2, c3] = c.components();
    if c3.is_zero() {
        return Err(FieldError::ZeroLeadingCoefficient);
    }
    let disc = c2.clone() * c2.clone() - I::lit(4) * c1.clone() * c3.clone();
    if disc.is_negative() {
        return Err(FieldError::NegativeDiscriminant(disc.to_string()));
    }
    let two_c3 = I::lit(2) * c3.clone();
    let base = Ratio::new(-c2.clone(), two_c3.clone());
    // sqrt(disc) / (2 c3); the sign of c3 decides which root is larger.
    let step = Ratio::new(I::one(), two_c3.abs());
    let plus = QuadExt::new(base.clone(), step.clone(), disc.clone())?;
    let minus = QuadExt::new(base, -step, disc)?;
    Ok([minus, plus])
}

fn ratio_sign<I: Int>(r: &Ratio<I>) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn ratio_f64<I: Int>(r: &Ratio<I>) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

type Parts<I> = (Ratio<I>, Ratio<I>);

// Brings two values onto one radicand. Rationals adopt the other side's
// radicand. Distinct radicands are reconciled when their ratio is a rational
// square, which covers radicands too large for a complete square split.
fn align<I: Int>(x: &QuadExt<I>, y: &QuadExt<I>) -> Result<(Parts<I>, Parts<I>, I), FieldError> {
    let xp = (x.rat.clone(), x.irr.clone());
    let yp = (y.rat.clone(), y.irr.clone());
    if x.is_rational() {
        return Ok((xp, yp, y.radicand.clone()));
    }
    if y.is_rational() || x.radicand == y.radicand {
        return Ok((xp, yp, x.radicand.clone()));
    }
    // sqrt(Dy) = t / Dx * sqrt(Dx) when Dx * Dy = t^2.
    let prod = x.radicand.clone() * y.radicand.clone();
    match exact_sqrt(&prod) {
        Some(t) => {
            let scale = Ratio::new(t, x.radicand.clone());
            Ok((xp, (yp.0, yp.1 * scale), x.radicand.clone()))
        }
        None => Err(FieldError::RadicandMismatch(
            x.radicand.to_string(),
            y.radicand.to_string(),
        )),
    }
}

impl<I: Int> PartialEq for QuadExt<I> {
    fn eq(&self, other: &Self) -> bool {
        self.try_sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }
}

impl<I: Int> Eq for QuadExt<I> {}

impl<I: Int> PartialOrd for QuadExt<I> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl<I: Int> Neg for QuadExt<I> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            rat: -self.rat,
            irr: -self.irr,
            radicand: self.radicand,
        }
    }
}

// Operator forms panic on mismatched fields or division by zero, like integer
// division does; use `arith`/`try_*` where those can legitimately occur.
macro_rules! forward_op {
    ($trait:ident, $method:ident, $op:expr) => {
        impl<'a, I: Int> $trait<&'a QuadExt<I>> for &'a QuadExt<I> {
            type Output = QuadExt<I>;
            fn $method(self, rhs: &'a QuadExt<I>) -> QuadExt<I> {
                self.arith(rhs, $op)
                    .unwrap_or_else(|e| panic!("quadratic field arithmetic: {e}"))
            }
        }
        impl<I: Int> $trait for QuadExt<I> {
            type Output = QuadExt<I>;
            fn $method(self, rhs: QuadExt<I>) -> QuadExt<I> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, FieldOp::Add);
forward_op!(Sub, sub, FieldOp::Sub);
forward_op!(Mul, mul, FieldOp::Mul);
forward_op!(Div, div, FieldOp::Div);

impl<I: Int> fmt::Display for QuadExt<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.rat);
        }
        let b = &self.irr;
        let sqrt = format!("sqrt({})", self.radicand);
        let irr = if b.is_one() {
            sqrt
        } else if (-b.clone()).is_one() {
            format!("-{sqrt}")
        } else {
            format!("{b}*{sqrt}")
        };
        if self.rat.is_zero() {
            write!(f, "{irr}")
        } else if let Some(abs) = irr.strip_prefix('-') {
            write!(f, "{} - {}", self.rat, abs)
        } else {
            write!(f, "{} + {}", self.rat, irr)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type Q = QuadExt<BigInt>;

    fn r(n: i64, d: i64) -> Ratio<BigInt> {
        Ratio::new(BigInt::from(n), BigInt::from(d))
    }

    fn q(a: (i64, i64), b: (i64, i64), d: i64) -> Q {
        Q::new(r(a.0, a.1), r(b.0, b.1), BigInt::from(d)).unwrap()
    }

    fn coeffs(c1: i64, c2: i64, c3: i64) -> CoeffVector<BigInt> {
        CoeffVector::new(BigInt::from(c1), BigInt::from(c2), BigInt::from(c3)).unwrap()
    }

    fn phi() -> Q {
        q((1, 2), (1, 2), 5)
    }

    #[test]
    fn root_of_golden_equation() {
        assert_eq!(make_root(&coeffs(-1, -1, 1)).unwrap(), phi());
    }

    #[test]
    fn root_of_two() {
        let root = make_root(&coeffs(-2, 0, 1)).unwrap();
        assert_eq!(root, q((0, 1), (1, 1), 2));
        assert_eq!(root.radicand(), &BigInt::from(2));
    }

    #[test]
    fn root_of_thirteen_matches_continued_fraction() {
        let root = make_root(&coeffs(-3, 1, 1)).unwrap();
        assert_eq!(root, q((-1, 2), (1, 2), 13));
        // [1;3,3,3,...] evaluated by backward recursion in floating point.
        let mut x = 3.0f64;
        for _ in 0..60 {
            x = 3.0 + 1.0 / x;
        }
        let cf = 1.0 + 1.0 / x;
        assert!((root.to_f64() - cf).abs() < 1e-12);
    }

    #[test]
    fn root_with_negative_leading_coefficient_is_still_larger() {
        // -(u^2 - 2) = 0 has the same roots.
        assert_eq!(make_root(&coeffs(2, 0, -1)).unwrap(), q((0, 1), (1, 1), 2));
    }

    #[test]
    fn root_errors() {
        assert_eq!(
            make_root(&coeffs(1, 1, 0)).unwrap_err(),
            FieldError::ZeroLeadingCoefficient
        );
        assert!(matches!(
            make_root(&coeffs(1, 0, 1)).unwrap_err(),
            FieldError::NegativeDiscriminant(_)
        ));
    }

    #[test]
    fn golden_ratio_squared() {
        assert_eq!(&phi() * &phi(), q((3, 2), (1, 2), 5));
    }

    #[test]
    fn sqrt_two_squared_is_rational() {
        let s = Q::sqrt_of(BigInt::from(2)).unwrap();
        let sq = &s * &s;
        assert!(sq.is_rational());
        assert_eq!(sq.radicand(), &BigInt::from(0));
        assert_eq!(sq, Q::from_i64(2));
    }

    #[test]
    fn division_cancels_exactly() {
        let x = q((3, 1), (3, 1), 2);
        let y = q((1, 1), (1, 1), 2);
        let z = x.try_div(&y).unwrap();
        assert!(z.is_rational());
        assert_eq!(z, Q::from_i64(3));
    }

    #[test]
    fn arithmetic_errors() {
        let s2 = Q::sqrt_of(BigInt::from(2)).unwrap();
        let s3 = Q::sqrt_of(BigInt::from(3)).unwrap();
        assert!(matches!(
            s2.arith(&s3, FieldOp::Add),
            Err(FieldError::RadicandMismatch(_, _))
        ));
        assert_eq!(
            s2.arith(&Q::zero(), FieldOp::Div).unwrap_err(),
            FieldError::DivisionByZero
        );
    }

    #[test]
    fn unreduced_radicands_reconcile() {
        // sqrt(8) normalizes to 2 sqrt(2), so it shares a field with sqrt(2).
        let s8 = Q::sqrt_of(BigInt::from(8)).unwrap();
        assert_eq!(s8.radicand(), &BigInt::from(2));
        let s2 = Q::sqrt_of(BigInt::from(2)).unwrap();
        assert_eq!(&s8 / &s2, Q::from_i64(2));
    }

    #[test]
    fn sign_cases() {
        assert_eq!(Q::zero().sign(), 0);
        assert_eq!(q((-1, 1), (1, 1), 2).sign(), 1);
        assert_eq!(q((3, 1), (-2, 1), 2).sign(), 1);
        assert_eq!(q((1, 1), (-1, 1), 2).sign(), -1);
        assert_eq!(q((-3, 1), (2, 1), 2).sign(), -1);
    }

    #[test]
    fn ceilings() {
        let three = q((3, 1), (3, 1), 2).try_div(&q((1, 1), (1, 1), 2)).unwrap();
        assert_eq!(three.ceil(), BigInt::from(3));
        assert_eq!(q((7, 1), (3, 1), 2).ceil(), BigInt::from(12));
        assert_eq!(q((0, 1), (-1, 1), 2).ceil(), BigInt::from(-1));
        assert_eq!(q((0, 1), (-1, 1), 2).floor(), BigInt::from(-2));
        assert_eq!(Q::from_rational(r(-7, 2)).ceil(), BigInt::from(-3));
        assert_eq!(Q::from_rational(r(-7, 2)).floor(), BigInt::from(-4));
    }

    #[test]
    fn floor_with_denominators() {
        // (1 + sqrt(5)) / 2 = 1.618...
        assert_eq!(phi().floor(), BigInt::from(1));
        // (5 - sqrt(29)) / 3 = -0.1283...
        assert_eq!(q((5, 3), (-1, 3), 29).floor(), BigInt::from(-1));
        // 2/7 sqrt(10) + 1/3 = 1.2368...
        assert_eq!(q((1, 3), (2, 7), 10).floor(), BigInt::from(1));
    }

    #[test]
    fn works_over_machine_integers() {
        let x = QuadExt::<i64>::new(Ratio::new(1, 2), Ratio::new(1, 2), 5).unwrap();
        assert_eq!(&x * &x - x.clone(), QuadExt::<i64>::one());
        assert_eq!(x.ceil(), 2);
    }

    #[test]
    fn display_forms() {
        assert_eq!(phi().to_string(), "1/2 + 1/2*sqrt(5)");
        assert_eq!(q((0, 1), (-1, 1), 2).to_string(), "-sqrt(2)");
        assert_eq!(q((7, 1), (-3, 1), 2).to_string(), "7 - 3*sqrt(2)");
        assert_eq!(Q::from_i64(4).to_string(), "4");
    }
}
