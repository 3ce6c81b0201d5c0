//! Eventually periodic continued fractions and the integer quadratic each one satisfies.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use thiserror::Error;

use crate::exactfield::{quadratic_roots, QuadExt};
use crate::num::{gcd_all, Int};
use crate::resonance::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("the repeating period must contain at least one entry")]
    EmptyPeriod,
    #[error("entry {index} is zero; continued-fraction entries must be positive")]
    ZeroEntry { index: usize },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("head value m = {m} outside 1..={max} for this family")]
    HeadOutOfRange { m: u64, max: u64 },
    #[error("coefficient vector is identically zero")]
    ZeroVector,
}

/// `[a_0, ..., a_{h-1}, (a_h, ..., a_{h+p-1}) repeating]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CfWord {
    head: Vec<u64>,
    period: Vec<u64>,
}

impl CfWord {
    pub fn new(head: Vec<u64>, period: Vec<u64>) -> Result<Self, CfError> {
        if period.is_empty() {
            return Err(CfError::EmptyPeriod);
        }
        if let Some(index) = head.iter().chain(&period).position(|&a| a == 0) {
            return Err(CfError::ZeroEntry { index });
        }
        Ok(Self { head, period })
    }

    /// Purely periodic word `[(period) repeating]`.
    pub fn periodic(period: Vec<u64>) -> Result<Self, CfError> {
        Self::new(Vec::new(), period)
    }

    pub fn head(&self) -> &[u64] {
        &self.head
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    /// Pre-period length `h`.
    pub fn pre_period_len(&self) -> usize {
        self.head.len()
    }

    /// Period length `p`.
    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// Entry `a_k`, repeating the period as needed.
    pub fn entry(&self, k: usize) -> u64 {
        let h = self.head.len();
        if k < h {
            self.head[k]
        } else {
            self.period[(k - h) % self.period.len()]
        }
    }

    /// `a_0`, the integer part of the value.
    pub fn leading(&self) -> u64 {
        self.entry(0)
    }

    /// Minimal period, then minimal pre-period.
    pub fn canonicalize(&self) -> Self {
        let mut period = minimal_period(&self.period).to_vec();
        let mut head = self.head.clone();
        while let (Some(&last_head), Some(&last_period)) = (head.last(), period.last()) {
            if last_head != last_period {
                break;
            }
            head.pop();
            period.rotate_right(1);
        }
        Self { head, period }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize()
    }

    /// The word of the tail `xi_k = [a_k, a_{k+1}, ...]`.
    pub fn tail(&self, k: usize) -> Self {
        let h = self.head.len();
        if k < h {
            return Self {
                head: self.head[k..].to_vec(),
                period: self.period.clone(),
            };
        }
        let mut period = self.period.clone();
        let shift = (k - h) % period.len();
        period.rotate_left(shift);
        Self {
            head: Vec::new(),
            period,
        }
    }

    /// Same value written with exactly one head entry when the word is purely
    /// periodic: `[(a_0, ..., a_{p-1})]` becomes `[a_0; (a_1, ..., a_{p-1}, a_0)]`.
    /// Words that already have a head are returned unchanged.
    pub fn with_explicit_head(&self) -> Self {
        if !self.head.is_empty() {
            return self.clone();
        }
        let mut period = self.period.clone();
        period.rotate_left(1);
        Self {
            head: vec![self.period[0]],
            period,
        }
    }
}

fn minimal_period(period: &[u64]) -> &[u64] {
    let p = period.len();
    (1..=p)
        .filter(|d| p.is_multiple_of(*d))
        .find(|&d| period.iter().enumerate().all(|(i, a)| *a == period[i % d]))
        .map(|d| &period[..d])
        .unwrap_or(period)
}

impl fmt::Display for CfWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        if self.head.is_empty() {
            write!(f, "{}", join(&self.period))
        } else {
            write!(f, "{};{}", join(&self.head), join(&self.period))
        }
    }
}

impl FromStr for CfWord {
    type Err = CfError;

    /// `"m;a,b,c"` is head `m` with period `(a,b,c)`; `"a,b"` is purely periodic.
    /// The head may hold several comma-separated entries.
    fn from_str(s: &str) -> Result<Self, CfError> {
        let (head_src, period_src, period_offset) = match s.find(';') {
            Some(pos) => (Some(&s[..pos]), &s[pos + 1..], pos + 1),
            None => (None, s, 0),
        };
        if period_src.contains(';') {
            let column = period_offset + period_src.find(';').unwrap() + 1;
            return Err(CfError::Parse {
                column,
                message: "more than one ';' separator".into(),
            });
        }
        let head = match head_src {
            Some(src) => parse_entries(src, 0)?,
            None => Vec::new(),
        };
        let period = parse_entries(period_src, period_offset)?;
        Self::new(head, period)
    }
}

fn parse_entries(src: &str, offset: usize) -> Result<Vec<u64>, CfError> {
    let mut out = Vec::new();
    let mut start = 0;
    for field in src.split(',') {
        let trimmed = field.trim();
        let lead = field.len() - field.trim_start().len();
        let column = offset + start + lead + 1;
        if trimmed.is_empty() {
            return Err(CfError::Parse {
                column,
                message: "expected a positive integer".into(),
            });
        }
        let value: u64 = trimmed.parse().map_err(|_| CfError::Parse {
            column,
            message: format!("`{trimmed}` is not a positive integer"),
        })?;
        if value == 0 {
            return Err(CfError::Parse {
                column,
                message: "entries must be at least 1".into(),
            });
        }
        out.push(value);
        start += field.len() + 1;
    }
    Ok(out)
}

/// Convergent numerators `A_k` and denominators `B_k` for `k >= -2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergents<I: Int> {
    a: Vec<I>,
    b: Vec<I>,
}

impl<I: Int> Convergents<I> {
    /// `A_k`; valid for `-2 <= k <= upto`.
    pub fn a(&self, k: isize) -> &I {
        &self.a[(k + 2) as usize]
    }

    /// `B_k`; valid for `-2 <= k <= upto`.
    pub fn b(&self, k: isize) -> &I {
        &self.b[(k + 2) as usize]
    }

    /// Largest index computed.
    pub fn upto(&self) -> isize {
        self.a.len() as isize - 3
    }

    /// `A_k B_{k-1} - A_{k-1} B_k`, which alternates between +1 and -1.
    pub fn determinant(&self, k: isize) -> I {
        self.a(k).clone() * self.b(k - 1).clone() - self.a(k - 1).clone() * self.b(k).clone()
    }
}

pub fn convergents<I: Int>(w: &CfWord, upto: usize) -> Convergents<I> {
    let mut a = vec![I::zero(), I::one()];
    let mut b = vec![I::one(), I::zero()];
    for k in 0..=upto {
        let ak = I::from_entry(w.entry(k));
        let n = a.len();
        a.push(a[n - 1].clone() * ak.clone() + a[n - 2].clone());
        b.push(b[n - 1].clone() * ak + b[n - 2].clone());
    }
    Convergents { a, b }
}

/// Integer triple with `c1 + c2 u + c3 u^2 = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoeffVector<I: Int> {
    c: [I; 3],
    reduced: bool,
}

impl<I: Int> CoeffVector<I> {
    pub fn new(c1: I, c2: I, c3: I) -> Result<Self, CfError> {
        Self::from_array([c1, c2, c3])
    }

    pub fn from_array(c: [I; 3]) -> Result<Self, CfError> {
        if c.iter().all(Zero::is_zero) {
            return Err(CfError::ZeroVector);
        }
        let reduced = gcd_all(&c).is_one();
        Ok(Self { c, reduced })
    }

    pub fn from_i64(c1: i64, c2: i64, c3: i64) -> Self {
        Self::new(I::lit(c1), I::lit(c2), I::lit(c3)).expect("nonzero literal vector")
    }

    pub fn components(&self) -> &[I; 3] {
        &self.c
    }

    pub fn c1(&self) -> &I {
        &self.c[0]
    }

    pub fn c2(&self) -> &I {
        &self.c[1]
    }

    pub fn c3(&self) -> &I {
        &self.c[2]
    }

    /// True when the entries share no common factor.
    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn gcd(&self) -> I {
        gcd_all(&self.c)
    }

    /// Primitive representative: divided by the gcd and signed so that
    /// `c3 > 0` (or the first nonzero entry is positive when `c3 = 0`).
    pub fn reduce(&self) -> Self {
        let g = self.gcd();
        let lead = if self.c[2].is_zero() {
            self.c.iter().find(|x| !x.is_zero()).unwrap()
        } else {
            &self.c[2]
        };
        let g = if lead.is_negative() { -g } else { g };
        let c = self.c.clone().map(|x| x / g.clone());
        Self { c, reduced: true }
    }

    pub fn negate(&self) -> Self {
        Self {
            c: self.c.clone().map(|x| -x),
            reduced: self.reduced,
        }
    }

    /// True when `self` and `other` are integer or rational multiples of each other.
    pub fn is_proportional(&self, other: &Self) -> bool {
        self.reduce() == other.reduce()
    }

    /// `c1 + c2 u + c3 u^2`, exactly.
    pub fn evaluate(&self, u: &QuadExt<I>) -> QuadExt<I> {
        let [c1, c2, c3] = self.c.clone().map(QuadExt::from_int);
        &(&c1 + &(&c2 * u)) + &(&c3 * &(u * u))
    }
}

impl<I: Int> fmt::Display for CoeffVector<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.c[0], self.c[1], self.c[2])
    }
}

/// Output of [`quad_coeffs`]: the vector straight from the convergent
/// formulas, its primitive form, and the factor removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadCoeffs<I: Int> {
    pub raw: CoeffVector<I>,
    pub reduced: CoeffVector<I>,
    pub gcd: I,
}

/// Coefficients of the quadratic satisfied by the value of `w`, from the
/// convergents of its head and of one full period (`g = h + p`):
///
/// ```text
/// c3 = B_{h-2} B_{g-1} - B_{h-1} B_{g-2}
/// c2 = B_{h-1} A_{g-2} + A_{h-1} B_{g-2} - A_{h-2} B_{g-1} - B_{h-2} A_{g-1}
/// c1 = A_{h-2} A_{g-1} - A_{h-1} A_{g-2}
/// ```
///
/// Any valid (head, period) split works; a non-minimal split yields a
/// multiple of the same primitive vector.
pub fn quad_coeffs<I: Int>(w: &CfWord) -> QuadCoeffs<I> {
    let h = w.pre_period_len() as isize;
    let g = h + w.period_len() as isize;
    let cv = convergents::<I>(w, (g - 1) as usize);
    let (a, b) = (|k| cv.a(k).clone(), |k| cv.b(k).clone());
    let c3 = b(h - 2) * b(g - 1) - b(h - 1) * b(g - 2);
    let c2 = b(h - 1) * a(g - 2) + a(h - 1) * b(g - 2) - a(h - 2) * b(g - 1) - b(h - 2) * a(g - 1);
    let c1 = a(h - 2) * a(g - 1) - a(h - 1) * a(g - 2);
    let raw = CoeffVector::new(c1, c2, c3).expect("convergent coefficients never vanish");
    let reduced = raw.reduce();
    let gcd = raw.gcd();
    QuadCoeffs { raw, reduced, gcd }
}

/// Exact value of the word: the root of its quadratic lying in `[a_0, a_0 + 1)`.
pub fn cf_value<I: Int>(w: &CfWord) -> QuadExt<I> {
    let coeffs = quad_coeffs::<I>(w).reduced;
    let a0 = I::from_entry(w.leading());
    let roots = quadratic_roots(&coeffs).expect("a continued-fraction quadratic has real roots");
    roots
        .into_iter()
        .find(|r| r.floor() == a0)
        .expect("one root of the word's quadratic has integer part a_0")
}

/// The value recovered from the tail `xi_k`:
/// `(A_{k-1} xi_k + A_{k-2}) / (B_{k-1} xi_k + B_{k-2})`.
pub fn value_from_tail<I: Int>(w: &CfWord, k: usize) -> QuadExt<I> {
    let xi = cf_value::<I>(&w.tail(k));
    let cv = convergents::<I>(w, k.max(1));
    let k = k as isize;
    let lift = |x: &I| QuadExt::from_int(x.clone());
    let num = &(&lift(cv.a(k - 1)) * &xi) + &lift(cv.a(k - 2));
    let den = &(&lift(cv.b(k - 1)) * &xi) + &lift(cv.b(k - 2));
    &num / &den
}

/// Families with closed-form coefficient vectors. Letters follow the
/// traditional naming; the word each family describes is
///
/// * `Constant { a }`: `[m, a, a, a, ...]`, base points `m = 1..=a`
/// * `TwoPeriodic { a, b }`: `[m, a, b, a, b, ...]`, base points `m = 1..=b`
/// * `ThreePeriodic { a, b, c }`: `[m, b, c, a, b, c, a, ...]`, base points `m = 1..=a`
///
/// The other rotations of a 2- or 3-periodic chain are the same family with
/// the letters relabelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    Constant { a: u64 },
    TwoPeriodic { a: u64, b: u64 },
    ThreePeriodic { a: u64, b: u64, c: u64 },
}

impl ClosedForm {
    /// The family whose word is `[m; period]`, for periods of length 1 to 3.
    pub fn for_period(period: &[u64]) -> Option<Self> {
        match *period {
            [a] => Some(Self::Constant { a }),
            [a, b] => Some(Self::TwoPeriodic { a, b }),
            [b, c, a] => Some(Self::ThreePeriodic { a, b, c }),
            _ => None,
        }
    }

    /// Repeating part of the family's word, in word order.
    pub fn period(&self) -> Vec<u64> {
        match *self {
            Self::Constant { a } => vec![a],
            Self::TwoPeriodic { a, b } => vec![a, b],
            Self::ThreePeriodic { a, b, c } => vec![b, c, a],
        }
    }

    /// Largest head value that is a base point of the periodic chain.
    pub fn max_head(&self) -> u64 {
        *self.period().last().unwrap()
    }

    pub fn word(&self, m: u64) -> CfWord {
        CfWord::new(vec![m], self.period()).expect("family entries are positive")
    }

    /// Sign applied to `M^{-1} c` in the printed tables: the constant family is
    /// negated, the others are not.
    pub fn table_sign(&self) -> Sign {
        match self {
            Self::Constant { .. } => Sign::Minus,
            _ => Sign::Plus,
        }
    }

    /// Closed-form vector for head `m`, without the base-point range check.
    /// The formulas hold for every `m >= 1`, which pre-periodic tables use.
    pub fn coeffs_any_head<I: Int>(&self, m: u64) -> CoeffVector<I> {
        let m = I::from_entry(m);
        let e = I::from_entry;
        let one = I::one;
        let two = || I::lit(2);
        let c = match *self {
            Self::Constant { a } => {
                let a = e(a);
                [
                    m.clone() * m.clone() - a.clone() * m.clone() - one(),
                    a - two() * m,
                    one(),
                ]
            }
            Self::TwoPeriodic { a, b } => {
                let (a, b) = (e(a), e(b));
                [
                    -a.clone() * m.clone() * m.clone()
                        + a.clone() * b.clone() * m.clone()
                        + b.clone(),
                    two() * a.clone() * m - a.clone() * b,
                    -a,
                ]
            }
            Self::ThreePeriodic { a, b, c } => {
                let (a, b, c) = (e(a), e(b), e(c));
                let m2 = m.clone() * m.clone();
                let abc = a.clone() * b.clone() * c.clone();
                [
                    m2.clone() + m.clone() * c.clone() + m2 * b.clone() * c.clone()
                        - b.clone() * m.clone()
                        - a.clone() * m.clone()
                        - a.clone() * c.clone()
                        - abc.clone() * m.clone()
                        - one(),
                    abc + a + b.clone()
                        - c.clone()
                        - two() * m.clone()
                        - two() * m * b.clone() * c.clone(),
                    one() + b * c,
                ]
            }
        };
        CoeffVector::from_array(c).expect("closed-form vectors have c3 != 0")
    }
}

/// Closed-form coefficient vector for base point `m` of a family, unreduced
/// and in the family's own sign layout.
pub fn closed_form_coeffs<I: Int>(family: ClosedForm, m: u64) -> Result<CoeffVector<I>, CfError> {
    let max = family.max_head();
    if m == 0 || m > max {
        return Err(CfError::HeadOutOfRange { m, max });
    }
    Ok(family.coeffs_any_head(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type V = CoeffVector<BigInt>;

    fn word(s: &str) -> CfWord {
        s.parse().unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn fibonacci_convergents() {
        let cv = convergents::<BigInt>(&word("1"), 3);
        let a: Vec<_> = (-2..=3).map(|k| cv.a(k).clone()).collect();
        let b: Vec<_> = (-2..=3).map(|k| cv.b(k).clone()).collect();
        assert_eq!(a, ints(&[0, 1, 1, 2, 3, 5]));
        assert_eq!(b, ints(&[1, 0, 1, 1, 2, 3]));
    }

    #[test]
    fn convergents_by_hand() {
        let cv = convergents::<BigInt>(&word("2,3"), 1);
        assert_eq!(cv.a(0), &BigInt::from(2));
        assert_eq!(cv.a(1), &BigInt::from(7));
        assert_eq!(cv.b(0), &BigInt::from(1));
        assert_eq!(cv.b(1), &BigInt::from(3));
    }

    #[test]
    fn first_convergents_in_general() {
        for s in ["4;2,7", "1,5;3", "6,2", "9"] {
            let w = word(s);
            let cv = convergents::<i64>(&w, 1);
            let (a0, a1) = (w.entry(0) as i64, w.entry(1) as i64);
            assert_eq!(*cv.a(0), a0);
            assert_eq!(*cv.a(1), a0 * a1 + 1);
            assert_eq!(*cv.b(0), 1);
            assert_eq!(*cv.b(1), a1);
        }
    }

    #[test]
    fn golden_word_coefficients() {
        let q = quad_coeffs::<BigInt>(&word("1"));
        assert_eq!(q.raw, V::from_i64(-1, -1, 1));
        assert_eq!(q.reduced, V::from_i64(-1, -1, 1));
    }

    #[test]
    fn sqrt_two_word_coefficients() {
        let q = quad_coeffs::<BigInt>(&word("1;2"));
        // Head-one layout has c3 = -B_0 = -1.
        assert_eq!(q.raw, V::from_i64(2, 0, -1));
        assert_eq!(q.reduced, V::from_i64(-2, 0, 1));
        assert_eq!(
            cf_value::<BigInt>(&word("1;2")),
            QuadExt::sqrt_of(BigInt::from(2)).unwrap()
        );
    }

    #[test]
    fn two_periodic_recursion_matches_printed_vector() {
        for (m, a, b) in [(1, 2, 3), (2, 3, 5), (3, 2, 7), (4, 2, 3)] {
            let q = quad_coeffs::<i64>(&CfWord::new(vec![m], vec![a, b]).unwrap());
            let (m, a, b) = (m as i64, a as i64, b as i64);
            assert_eq!(
                q.raw,
                CoeffVector::from_i64(-a * m * m + a * b * m + b, 2 * a * m - a * b, -a)
            );
        }
    }

    #[test]
    fn closed_form_examples() {
        let c: V = closed_form_coeffs(ClosedForm::Constant { a: 3 }, 2).unwrap();
        assert_eq!(c, V::from_i64(-3, -1, 1));
        // Word [1, 3, 2, 3, 2, ...]: the "[m, b, a]" rotation with a = 2, b = 3.
        let c: V = closed_form_coeffs(ClosedForm::TwoPeriodic { a: 3, b: 2 }, 1).unwrap();
        assert_eq!(c, V::from_i64(5, 0, -3));
        let c: V = closed_form_coeffs(ClosedForm::ThreePeriodic { a: 1, b: 1, c: 2 }, 1).unwrap();
        assert_eq!(c, V::from_i64(-2, -4, 3));
        let rec = quad_coeffs::<BigInt>(&ClosedForm::ThreePeriodic { a: 1, b: 1, c: 2 }.word(1));
        assert!(rec.raw.is_proportional(&c));
    }

    #[test]
    fn closed_form_head_range() {
        let fam = ClosedForm::TwoPeriodic { a: 2, b: 3 };
        assert_eq!(
            closed_form_coeffs::<i64>(fam, 4).unwrap_err(),
            CfError::HeadOutOfRange { m: 4, max: 3 }
        );
        assert!(closed_form_coeffs::<i64>(fam, 0).is_err());
        assert!(closed_form_coeffs::<i64>(fam, 3).is_ok());
    }

    #[test]
    fn values_in_expected_intervals() {
        let phi = cf_value::<BigInt>(&word("1"));
        assert_eq!(
            phi,
            QuadExt::new(
                num_rational::Ratio::new(BigInt::from(1), BigInt::from(2)),
                num_rational::Ratio::new(BigInt::from(1), BigInt::from(2)),
                BigInt::from(5)
            )
            .unwrap()
        );
        let v = cf_value::<BigInt>(&word("2,3"));
        assert_eq!(v.floor(), BigInt::from(2));
        // backward recursion on a long prefix
        let mut x = 2.0f64;
        for i in 0..80 {
            x = if i % 2 == 0 {
                3.0 + 1.0 / x
            } else {
                2.0 + 1.0 / x
            };
        }
        assert!((v.to_f64() - x).abs() < 1e-12, "{} vs {x}", v.to_f64());
        let v = cf_value::<BigInt>(&word("5;3,2"));
        assert_eq!(v.floor(), BigInt::from(5));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(word("3,3,3").canonicalize(), word("3"));
        assert_eq!(word("2;3,2").canonicalize(), word("2,3"));
        assert_eq!(word("1,2,1,2").canonicalize(), word("1,2"));
        assert_eq!(word("3;3").canonicalize(), word("3"));
        assert_eq!(word("5;3,2").canonicalize(), word("5;3,2"));
        assert_eq!(word("2,2;2,2").canonicalize(), word("2"));
    }

    #[test]
    fn tails() {
        assert_eq!(word("7;4,9").tail(1), word("4,9"));
        assert_eq!(word("4,5,6").tail(2), word("6,4,5"));
        // a_0 = 5, a_1 = 3, a_2 = 2, a_3 = 3: xi_3 starts with 3.
        let w = word("5;3,2");
        assert_eq!(w.tail(3), word("3,2"));
        assert_eq!(w.tail(2), word("2,3"));
        assert_eq!(w.tail(0), w);
        for k in 0..8 {
            assert_eq!(w.tail(3).entry(k), w.entry(3 + k));
        }
    }

    #[test]
    fn parse_and_display() {
        let w = word("5;3,2");
        assert_eq!(w.head(), &[5]);
        assert_eq!(w.period(), &[3, 2]);
        assert_eq!(w.to_string(), "5;3,2");
        assert_eq!(word(" 2 , 3 ").to_string(), "2,3");
        assert_eq!(word("1,4;2").to_string(), "1,4;2");
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(
            "2,x".parse::<CfWord>().unwrap_err(),
            CfError::Parse {
                column: 3,
                message: "`x` is not a positive integer".into()
            }
        );
        assert!(matches!(
            "3;1,0".parse::<CfWord>(),
            Err(CfError::Parse { column: 5, .. })
        ));
        assert!(matches!(
            "".parse::<CfWord>(),
            Err(CfError::Parse { column: 1, .. })
        ));
        assert!(matches!(
            "1;".parse::<CfWord>(),
            Err(CfError::Parse { column: 3, .. })
        ));
        assert!(matches!(
            "1;2;3".parse::<CfWord>(),
            Err(CfError::Parse { column: 4, .. })
        ));
        assert_eq!(CfWord::periodic(vec![]).unwrap_err(), CfError::EmptyPeriod);
    }

    #[test]
    fn value_recovered_from_tails() {
        let w = word("4;1,1,2");
        let u = cf_value::<BigInt>(&w);
        for k in 0..6 {
            assert_eq!(value_from_tail::<BigInt>(&w, k), u, "k = {k}");
        }
    }

    fn arb_word() -> impl Strategy<Value = CfWord> {
        (
            proptest::collection::vec(1u64..=6, 0..3),
            proptest::collection::vec(1u64..=6, 1..5),
        )
            .prop_map(|(h, p)| CfWord::new(h, p).unwrap())
    }

    proptest! {
        #[test]
        fn determinant_identity(w in arb_word(), upto in 0usize..12) {
            let cv = convergents::<BigInt>(&w, upto);
            for k in -1..=upto as isize {
                let d = cv.determinant(k);
                let expected = if k % 2 == 0 { -1 } else { 1 };
                prop_assert_eq!(d, BigInt::from(expected));
            }
        }

        #[test]
        fn value_solves_its_own_quadratic(w in arb_word()) {
            let u = cf_value::<BigInt>(&w);
            prop_assert!(quad_coeffs::<BigInt>(&w).raw.evaluate(&u).is_zero());
            prop_assert!(!u.is_rational());
        }

        #[test]
        fn canonicalize_is_idempotent_and_preserves_value(w in arb_word()) {
            let c = w.canonicalize();
            prop_assert_eq!(c.canonicalize(), c.clone());
            prop_assert_eq!(cf_value::<BigInt>(&c), cf_value::<BigInt>(&w));
            for k in 0..12 {
                prop_assert_eq!(c.entry(k), w.entry(k));
            }
        }

        #[test]
        fn any_split_gives_the_same_primitive_vector(w in arb_word()) {
            let c = w.canonicalize();
            prop_assert_eq!(quad_coeffs::<BigInt>(&w).reduced, quad_coeffs::<BigInt>(&c).reduced);
        }

        #[test]
        fn explicit_head_is_the_same_number(p in proptest::collection::vec(1u64..=6, 1..5)) {
            let w = CfWord::periodic(p).unwrap();
            let e = w.with_explicit_head();
            prop_assert_eq!(e.pre_period_len(), 1);
            for k in 0..12 {
                prop_assert_eq!(e.entry(k), w.entry(k));
            }
        }
    }
}
