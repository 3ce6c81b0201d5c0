//! The Kasner map on continued-fraction words and the Bianchi IX eigenvalues.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cfrac::CfWord;
use crate::exactfield::QuadExt;
use crate::num::Int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KasnerError {
    #[error("u = 1 is a Taub point; the eigenvalues degenerate there")]
    TaubPoint,
    #[error("Kasner parameter {0} is below 1")]
    OutOfDomain(String),
}

/// One Kasner-map step on the word: `u - 1` for `u >= 2`, `1 / (u - 1)` for `1 < u < 2`.
///
/// On words this decrements `a_0`, or drops it when `a_0 = 1`. A word with
/// an infinite expansion never names `u = 1`, so the step is always defined.
/// The result is canonical.
pub fn kasner_step(w: &CfWord) -> CfWord {
    let w = w.with_explicit_head();
    let a0 = w.leading();
    if a0 == 1 {
        return w.tail(1).canonicalize();
    }
    let mut head = w.head().to_vec();
    head[0] -= 1;
    CfWord::new(head, w.period().to_vec())
        .expect("decremented head stays positive")
        .canonicalize()
}

/// The Kasner map on an exact value.
pub fn kasner_map<I: Int>(u: &QuadExt<I>) -> Result<QuadExt<I>, KasnerError> {
    let one = QuadExt::one();
    let two = QuadExt::from_i64(2);
    match u.try_cmp(&one).expect("rationals share every field") {
        std::cmp::Ordering::Less => return Err(KasnerError::OutOfDomain(u.to_string())),
        std::cmp::Ordering::Equal => return Err(KasnerError::TaubPoint),
        std::cmp::Ordering::Greater => {}
    }
    let shifted = u - &one;
    if u.try_cmp(&two)
        .expect("rationals share every field")
        .is_ge()
    {
        Ok(shifted)
    } else {
        Ok(shifted.recip().expect("u - 1 > 0"))
    }
}

/// Every base point of the chain with the given repeating period: for each
/// rotation whose preceding entry is `a_i`, the words `[m; rotation]` for
/// `m = 1..=a_i`. The period is reduced to its minimal length first, so the
/// list has exactly `sum(period)` distinct entries.
pub fn base_points(period: &[u64]) -> Result<Vec<CfWord>, crate::cfrac::CfError> {
    let minimal = CfWord::periodic(period.to_vec())?.canonicalize();
    let period = minimal.period();
    let mut out = Vec::new();
    for i in 0..period.len() {
        let mut rotation = period.to_vec();
        rotation.rotate_left(i + 1);
        for m in 1..=period[i] {
            out.push(CfWord::new(vec![m], rotation.clone())?);
        }
    }
    Ok(out)
}

/// Canonical words visited by iterating [`kasner_step`] from `start` until a
/// word repeats, in visiting order.
pub fn orbit(start: &CfWord) -> Vec<CfWord> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut w = start.canonicalize();
    while seen.insert(w.clone()) {
        out.push(w.clone());
        w = kasner_step(&w);
    }
    out
}

/// The three hyperbolic eigenvalues at Kasner parameter `u`:
///
/// ```text
/// lambda1 = -6u / (1 + u + u^2)
/// lambda2 = 6(1 + u) / (1 + u + u^2)
/// lambda3 = 6u(1 + u) / (1 + u + u^2)
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenTriple<I: Int> {
    pub lambda1: QuadExt<I>,
    pub lambda2: QuadExt<I>,
    pub lambda3: QuadExt<I>,
}

impl<I: Int> EigenTriple<I> {
    pub fn as_array(&self) -> [&QuadExt<I>; 3] {
        [&self.lambda1, &self.lambda2, &self.lambda3]
    }

    /// `k1 lambda1 + k2 lambda2 + k3 lambda3`.
    pub fn combine(&self, k: &[I; 3]) -> QuadExt<I> {
        self.as_array()
            .iter()
            .zip(k)
            .map(|(l, ki)| &QuadExt::from_int(ki.clone()) * l)
            .fold(QuadExt::zero(), |acc, t| &acc + &t)
    }

    /// Integer form over a shared positive denominator: returns `(p, q)` with
    /// `lambda_i = (p_i + q_i sqrt(D)) / den` for some `den > 0`.
    pub fn integer_form(&self) -> ([I; 3], [I; 3]) {
        let ls = self.as_array();
        let den = ls.iter().fold(I::one(), |acc, l| {
            let acc = num_integer::Integer::lcm(&acc, l.rat_part().denom());
            num_integer::Integer::lcm(&acc, l.irr_part().denom())
        });
        let scale =
            |r: &num_rational::Ratio<I>| r.numer().clone() * (den.clone() / r.denom().clone());
        // Radicands agree (or the value is rational), so components compare directly.
        let p = ls.map(|l| scale(l.rat_part()));
        let q = ls.map(|l| {
            if l.is_rational() {
                I::zero()
            } else {
                scale(l.irr_part())
            }
        });
        debug_assert!(den >= I::one());
        (p, q)
    }
}

pub fn eigenvalues<I: Int>(u: &QuadExt<I>) -> Result<EigenTriple<I>, KasnerError> {
    let one = QuadExt::one();
    match u.try_cmp(&one).expect("rationals share every field") {
        std::cmp::Ordering::Less => return Err(KasnerError::OutOfDomain(u.to_string())),
        std::cmp::Ordering::Equal => return Err(KasnerError::TaubPoint),
        std::cmp::Ordering::Greater => {}
    }
    let six = QuadExt::from_i64(6);
    let u_plus_one = u + &one;
    let den = &(&one + u) + &(u * u);
    let scale = &six / &den;
    Ok(EigenTriple {
        lambda1: -(&scale * u),
        lambda2: &scale * &u_plus_one,
        lambda3: &scale * &(u * &u_plus_one),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfrac::cf_value;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type Q = QuadExt<BigInt>;

    fn word(s: &str) -> CfWord {
        s.parse().unwrap()
    }

    fn words(ss: &[&str]) -> Vec<CfWord> {
        ss.iter().map(|s| word(s)).collect()
    }

    #[test]
    fn steps() {
        assert_eq!(kasner_step(&word("3;3")), word("2;3"));
        assert_eq!(kasner_step(&word("1;3")), word("3"));
        assert_eq!(kasner_step(&word("2,3")), word("1;3,2"));
        assert_eq!(kasner_step(&word("1")), word("1"));
    }

    #[test]
    fn base_point_lists() {
        assert_eq!(base_points(&[3]).unwrap(), words(&["1;3", "2;3", "3;3"]));
        assert_eq!(
            base_points(&[2, 3]).unwrap(),
            words(&["1;3,2", "2;3,2", "1;2,3", "2;2,3", "3;2,3"])
        );
        let triple = base_points(&[1, 1, 2]).unwrap();
        assert_eq!(triple.len(), 4);
        assert_eq!(triple, words(&["1;1,2,1", "1;2,1,1", "1;1,1,2", "2;1,1,2"]));
        assert_eq!(base_points(&[1]).unwrap(), words(&["1;1"]));
        // Non-minimal periods collapse first.
        assert_eq!(base_points(&[3, 3]).unwrap(), base_points(&[3]).unwrap());
    }

    #[test]
    fn golden_eigenvalues() {
        let u: Q = cf_value(&word("1"));
        let eig = eigenvalues(&u).unwrap();
        let one = Q::one();
        assert_eq!(eig.lambda1, -(&Q::from_i64(3) * &(&u / &(&u + &one))));
        assert_eq!(eig.lambda2, Q::from_i64(3));
        assert_eq!(eig.lambda3, &Q::from_i64(3) * &u);
        assert!((eig.lambda1.to_f64() + 1.854).abs() < 1e-3);
        assert_eq!(eig.lambda2, &eig.lambda1 + &eig.lambda3);
    }

    #[test]
    fn sqrt_two_eigenvalues() {
        let u = Q::sqrt_of(BigInt::from(2)).unwrap();
        let eig = eigenvalues(&u).unwrap();
        let den = &Q::from_i64(3) + &u;
        let six = Q::from_i64(6);
        assert_eq!(eig.lambda1, -(&(&six * &u) / &den));
        assert_eq!(eig.lambda2, &(&six * &(&Q::one() + &u)) / &den);
        assert_eq!(eig.lambda3, &(&Q::from_i64(12) + &(&six * &u)) / &den);
        let approx = [
            eig.lambda1.to_f64(),
            eig.lambda2.to_f64(),
            eig.lambda3.to_f64(),
        ];
        for (x, y) in approx.iter().zip([-1.922, 3.282, 4.641]) {
            assert!((x - y).abs() < 1e-3, "{x} vs {y}");
        }
    }

    #[test]
    fn taub_point_rejected() {
        assert_eq!(eigenvalues(&Q::one()).unwrap_err(), KasnerError::TaubPoint);
        assert!(matches!(
            eigenvalues(&Q::from_i64(0)),
            Err(KasnerError::OutOfDomain(_))
        ));
        assert_eq!(kasner_map(&Q::one()).unwrap_err(), KasnerError::TaubPoint);
    }

    #[test]
    fn integer_form_reconstructs_eigenvalues() {
        let u: Q = cf_value(&word("2;3"));
        let eig = eigenvalues(&u).unwrap();
        let (p, q) = eig.integer_form();
        let ratio = |i: usize| {
            &Q::from_int(p[i].clone())
                + &(&Q::from_int(q[i].clone()) * &Q::sqrt_of(u.radicand().clone()).unwrap())
        };
        // every component is the same positive multiple of its eigenvalue
        let scale = &ratio(1) / &eig.lambda2;
        assert!(scale.is_rational() && scale.is_positive());
        assert_eq!(&ratio(0) / &eig.lambda1, scale);
        assert_eq!(&ratio(2) / &eig.lambda3, scale);
    }

    fn arb_period() -> impl Strategy<Value = Vec<u64>> {
        proptest::collection::vec(1u64..=6, 1..=5)
    }

    proptest! {
        #[test]
        fn orbit_closes_on_base_points(period in arb_period()) {
            let start = CfWord::periodic(period.clone()).unwrap();
            let minimal: u64 = start.canonicalize().period().iter().sum();
            let orbit = orbit(&start);
            prop_assert_eq!(orbit.len() as u64, minimal);
            // After exactly `minimal` steps we are back at the start.
            let mut w = start.canonicalize();
            for _ in 0..minimal {
                w = kasner_step(&w);
            }
            prop_assert_eq!(w, start.canonicalize());
            let from_orbit: BTreeSet<_> = orbit.into_iter().collect();
            let listed: BTreeSet<_> = base_points(&period).unwrap().iter().map(CfWord::canonicalize).collect();
            prop_assert_eq!(from_orbit, listed);
        }

        #[test]
        fn step_matches_value_map(head in proptest::collection::vec(1u64..=5, 0..2), period in arb_period()) {
            let w = CfWord::new(head, period).unwrap();
            let u: Q = cf_value(&w);
            let stepped: Q = cf_value(&kasner_step(&w));
            prop_assert_eq!(kasner_map(&u).unwrap(), stepped);
        }

        #[test]
        fn magnitudes_are_ordered(head in 1u64..=8, period in arb_period()) {
            let u: Q = cf_value(&CfWord::new(vec![head], period).unwrap());
            let eig = eigenvalues(&u).unwrap();
            prop_assert!(eig.lambda1.is_negative());
            prop_assert!(eig.lambda2.is_positive());
            prop_assert!(eig.lambda3.is_positive());
            let (a, b, c) = (eig.lambda1.abs(), eig.lambda2.abs(), eig.lambda3.abs());
            prop_assert!(a < b && b < c);
            // lambda3 / lambda1 = -(1 + u)
            prop_assert_eq!(&eig.lambda3 / &eig.lambda1, -(&u + &Q::one()));
        }
    }
}
