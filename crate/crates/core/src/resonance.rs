//! Resonance vectors `k` with `k1 lambda1 + k2 lambda2 + k3 lambda3 = 0`.
//!
//! Writing each eigenvalue as `(l1 + l2 u + l3 u^2) / (1 + u + u^2)` turns a
//! resonance into a linear condition on the quadratic `c1 + c2 u + c3 u^2 = 0`
//! satisfied by `u`. For Bianchi IX the coefficient matrix is
//!
//! ```text
//!           [ 0  1  0 ]                      [ 1 -1  1 ]
//! M = 6  *  [-1  1  1 ]     M^{-1} = 1/6  *  [ 1  0  0 ]
//!           [ 0  0  1 ]                      [ 0  0  1 ]
//! ```
//!
//! and choosing the scale `z = 6` gives the integer solution
//! `k = (c1 - c2 + c3, c1, c3)`.

use std::fmt;

use rayon::prelude::*;

use crate::cfrac::CoeffVector;
use crate::kasner::EigenTriple;
use crate::num::{gcd_all, Int};

/// Global sign applied to `M^{-1} c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn apply<I: Int>(self, x: I) -> I {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Integer resonance triple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KVector<I: Int> {
    k: [I; 3],
}

impl<I: Int> KVector<I> {
    /// `None` for the zero triple.
    pub fn new(k1: I, k2: I, k3: I) -> Option<Self> {
        let k = [k1, k2, k3];
        (!k.iter().all(|x| x.is_zero())).then_some(Self { k })
    }

    pub fn from_i64(k1: i64, k2: i64, k3: i64) -> Self {
        Self::new(I::lit(k1), I::lit(k2), I::lit(k3)).expect("nonzero literal triple")
    }

    pub fn components(&self) -> &[I; 3] {
        &self.k
    }

    pub fn gcd(&self) -> I {
        gcd_all(&self.k)
    }

    /// Divided by the gcd, keeping the sign pattern.
    pub fn reduce(&self) -> Self {
        let g = self.gcd();
        Self {
            k: self.k.clone().map(|x| x / g.clone()),
        }
    }

    pub fn negate(&self) -> Self {
        Self {
            k: self.k.clone().map(|x| -x),
        }
    }

    /// Sign-canonical form: first nonzero component positive.
    pub fn canonical_sign(&self) -> Self {
        let first = self
            .k
            .iter()
            .find(|x| !x.is_zero())
            .expect("nonzero triple");
        if first.is_negative() {
            self.negate()
        } else {
            self.clone()
        }
    }

    /// `|k1| + |k2| + |k3|` of the reduced triple.
    pub fn order(&self) -> I {
        let r = self.reduce();
        r.k.iter().fold(I::zero(), |acc, x| acc + x.abs())
    }

    /// True if the triple has any zero component; such triples make the sign
    /// condition depend on the zero-is-neutral convention.
    pub fn has_zero_component(&self) -> bool {
        self.k.iter().any(|x| x.is_zero())
    }

    /// `Some(z)` with `self = z * base` for an integer `z`.
    pub fn multiple_of(&self, base: &Self) -> Option<I> {
        let (i, b) = base.k.iter().enumerate().find(|(_, x)| !x.is_zero())?;
        if !(self.k[i].clone() % b.clone()).is_zero() {
            return None;
        }
        let z = self.k[i].clone() / b.clone();
        base.k
            .iter()
            .zip(&self.k)
            .all(|(b, s)| b.clone() * z.clone() == *s)
            .then_some(z)
    }
}

impl<I: Int> fmt::Display for KVector<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.k[0], self.k[1], self.k[2])
    }
}

/// The resonance derived from a coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resonance<I: Int> {
    /// `s * (c1 - c2 + c3, c1, c3)` as computed.
    pub raw: KVector<I>,
    /// `raw / gcd`; decisions use this one.
    pub reduced: KVector<I>,
    pub gcd: I,
    pub sign: Sign,
}

pub fn k_from_c<I: Int>(c: &CoeffVector<I>, s: Sign) -> Resonance<I> {
    let [c1, c2, c3] = c.components().clone();
    let raw = KVector::new(
        s.apply(c1.clone() - c2 + c3.clone()),
        s.apply(c1),
        s.apply(c3),
    )
    .expect("M^{-1} is invertible, so a nonzero c gives a nonzero k");
    let gcd = raw.gcd();
    Resonance {
        reduced: raw.reduce(),
        raw,
        gcd,
        sign: s,
    }
}

/// Resonance sign condition: all nonzero components share a sign, or the
/// single component whose sign differs is `+1` or `-1`.
///
/// Zero components are compatible with either sign. Invariant under negation.
pub fn rsc<I: Int>(k: &KVector<I>) -> bool {
    let pos: Vec<&I> = k.k.iter().filter(|x| x.is_positive()).collect();
    let neg: Vec<&I> = k.k.iter().filter(|x| x.is_negative()).collect();
    if pos.is_empty() || neg.is_empty() {
        return true;
    }
    (pos.len() == 1 && pos[0].is_one()) || (neg.len() == 1 && (-neg[0].clone()).is_one())
}

pub fn order<I: Int>(k: &KVector<I>) -> I {
    k.order()
}

/// Exact test of `k1 lambda1 + k2 lambda2 + k3 lambda3 = 0`.
pub fn verify_identity<I: Int>(k: &KVector<I>, eig: &EigenTriple<I>) -> bool {
    eig.combine(&k.k).is_zero()
}

/// Exhaustive search for the resonances of smallest order.
///
/// Scans every integer triple with `|k1| + |k2| + |k3| <= max_order` in
/// increasing order and returns the first order that has a hit, as a
/// sign-canonical triple; ties go to the lexicographically smallest. The scan
/// does not use coefficient vectors, only the eigenvalues.
pub fn first_resonance_oracle<I: Int>(eig: &EigenTriple<I>, max_order: u32) -> Option<KVector<I>> {
    let test = ResonanceTest::new(eig);
    (1..=max_order as i64).find_map(|l| {
        triples_of_order(l)
            .into_par_iter()
            .filter(|k| test.is_resonance(k))
            .min()
            .map(|k| KVector::from_i64(k[0], k[1], k[2]))
    })
}

/// Every sign-canonical resonance with order at most `max_order`, sorted by
/// order and then lexicographically.
pub fn oracle_hits<I: Int>(eig: &EigenTriple<I>, max_order: u32) -> Vec<KVector<I>> {
    let test = ResonanceTest::new(eig);
    (1..=max_order as i64)
        .flat_map(triples_of_order)
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|k| test.is_resonance(k))
        .map(|k| KVector::from_i64(k[0], k[1], k[2]))
        .collect()
}

// Sign-canonical triples with |k1|+|k2|+|k3| == l, in lexicographic order.
fn triples_of_order(l: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for k1 in -l..=l {
        let rest = l - k1.abs();
        for k2 in -rest..=rest {
            let r3 = rest - k2.abs();
            let k3s: &[i64] = if r3 == 0 { &[0] } else { &[-r3, r3] };
            for &k3 in k3s {
                let k = [k1, k2, k3];
                if k.iter().find(|x| **x != 0).is_some_and(|x| *x > 0) {
                    out.push(k);
                }
            }
        }
    }
    out
}

// lambda_i = (p_i + q_i sqrt(D)) / den. Since 1 and sqrt(D) are linearly
// independent over Q, k.lambda = 0 iff k.p = 0 and k.q = 0.
struct ResonanceTest<I: Int> {
    p: [I; 3],
    q: [I; 3],
    small: Option<([i128; 3], [i128; 3])>,
}

impl<I: Int> ResonanceTest<I> {
    fn new(eig: &EigenTriple<I>) -> Self {
        let (p, q) = eig.integer_form();
        let small = (|| {
            let conv = |xs: &[I; 3]| -> Option<[i128; 3]> {
                Some([xs[0].to_i128()?, xs[1].to_i128()?, xs[2].to_i128()?])
            };
            let (sp, sq) = (conv(&p)?, conv(&q)?);
            // keep products with |k| <= 2^20 well inside i128
            let fits = sp
                .iter()
                .chain(&sq)
                .all(|x| x.unsigned_abs() < 1u128 << 100);
            fits.then_some((sp, sq))
        })();
        Self { p, q, small }
    }

    fn is_resonance(&self, k: &[i64; 3]) -> bool {
        if let Some((p, q)) = &self.small {
            let dot = |v: &[i128; 3]| (0..3).map(|i| v[i] * k[i] as i128).sum::<i128>();
            return dot(p) == 0 && dot(q) == 0;
        }
        let dot = |v: &[I; 3]| (0..3).fold(I::zero(), |acc, i| acc + v[i].clone() * I::lit(k[i]));
        dot(&self.p).is_zero() && dot(&self.q).is_zero()
    }
}
