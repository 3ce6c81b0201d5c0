//! Sternberg non-resonance orders and the linearization verdict per base point
//! and per chain.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::cfrac::{cf_value, quad_coeffs, CfError, CfWord, ClosedForm, CoeffVector};
use crate::exactfield::QuadExt;
use crate::kasner::{base_points, eigenvalues, orbit, EigenTriple, KasnerError};
use crate::num::Int;
use crate::resonance::{k_from_c, rsc, KVector, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SncError {
    #[error(transparent)]
    Kasner(#[from] KasnerError),
    #[error(transparent)]
    Word(#[from] CfError),
    #[error("two eigenvalue magnitudes coincide (Taub degeneracy)")]
    TaubDegeneracy,
    #[error("smoothness must be at least 1")]
    InvalidSmoothness,
}

/// Eigenvalue magnitudes sorted descending and the resulting orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SncData<I: Int> {
    /// Largest magnitude `N`.
    pub big_n: QuadExt<I>,
    /// Middle magnitude `n`.
    pub n: QuadExt<I>,
    /// Smallest magnitude `mu`.
    pub mu: QuadExt<I>,
    pub smoothness: u32,
    pub beta: I,
    pub alpha: I,
}

/// `(N, n, mu)`: largest, middle and smallest magnitude.
pub type Magnitudes<I> = (QuadExt<I>, QuadExt<I>, QuadExt<I>);

pub fn sort_magnitudes<I: Int>(eig: &EigenTriple<I>) -> Result<Magnitudes<I>, SncError> {
    let mut mags: Vec<QuadExt<I>> = eig.as_array().iter().map(|l| l.abs()).collect();
    mags.sort_by(|x, y| y.try_cmp(x).expect("eigenvalues share one field"));
    if mags[0] == mags[1] || mags[1] == mags[2] {
        return Err(SncError::TaubDegeneracy);
    }
    let mu = mags.pop().unwrap();
    let n = mags.pop().unwrap();
    let big_n = mags.pop().unwrap();
    Ok((big_n, n, mu))
}

/// `beta = ceil((N + s (mu + n)) / n)`, `alpha = ceil((mu + beta (N + mu)) / mu)`.
pub fn snc_data<I: Int>(eig: &EigenTriple<I>, smoothness: u32) -> Result<SncData<I>, SncError> {
    if smoothness == 0 {
        return Err(SncError::InvalidSmoothness);
    }
    let (big_n, n, mu) = sort_magnitudes(eig)?;
    let s = QuadExt::from_int(I::from_entry(smoothness as u64));
    let beta = (&(&big_n + &(&s * &(&mu + &n))) / &n).ceil();
    let b = QuadExt::from_int(beta.clone());
    let alpha = (&(&mu + &(&b * &(&big_n + &mu))) / &mu).ceil();
    Ok(SncData {
        big_n,
        n,
        mu,
        smoothness,
        beta,
        alpha,
    })
}

/// `(alpha, beta)`.
pub fn alpha_beta<I: Int>(eig: &EigenTriple<I>, smoothness: u32) -> Result<(I, I), SncError> {
    let d = snc_data(eig, smoothness)?;
    Ok((d.alpha, d.beta))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    RscViolated,
    OrderExceedsAlpha,
    Blocked,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::RscViolated => "RSC_VIOLATED",
            Reason::OrderExceedsAlpha => "ORDER_EXCEEDS_ALPHA",
            Reason::Blocked => "BLOCKED",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Reason::RscViolated,
            Reason::OrderExceedsAlpha,
            Reason::Blocked,
        ]
        .into_iter()
        .find(|r| r.as_str() == s)
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePointReport<I: Int> {
    pub word: CfWord,
    pub u_value: QuadExt<I>,
    pub c_raw: CoeffVector<I>,
    pub c_reduced: CoeffVector<I>,
    pub k_raw: KVector<I>,
    pub k_reduced: KVector<I>,
    pub common_factor: I,
    pub order: I,
    pub rsc_holds: bool,
    pub alpha: I,
    pub beta: I,
    pub linearizable: bool,
    pub reason: Reason,
    /// `order == alpha` with the sign condition holding; counted as blocked.
    pub boundary: bool,
    /// The reduced `k` has a zero entry, so the sign condition relied on the
    /// zero-is-neutral convention.
    pub zero_component: bool,
}

/// Coefficient vector in the layout the printed tables use, with its sign.
///
/// For a one-entry head and a period of length at most three this is the
/// closed-form family vector; otherwise the convergent formula with `s = +1`.
pub fn table_coeffs<I: Int>(w: &CfWord) -> (CfWord, CoeffVector<I>, Sign) {
    let w = w.canonicalize().with_explicit_head();
    if w.pre_period_len() == 1 {
        if let Some(family) = ClosedForm::for_period(w.period()) {
            let c = family.coeffs_any_head(w.leading());
            return (w, c, family.table_sign());
        }
    }
    let c = quad_coeffs::<I>(&w).raw;
    (w, c, Sign::Plus)
}

pub fn basepoint_verdict<I: Int>(
    w: &CfWord,
    smoothness: u32,
) -> Result<BasePointReport<I>, SncError> {
    let (w, c, s) = table_coeffs(w);
    verdict_with_coeffs(w, c, s, smoothness)
}

/// Verdict for `word` with a caller-supplied coefficient vector and sign.
pub fn verdict_with_coeffs<I: Int>(
    word: CfWord,
    c_raw: CoeffVector<I>,
    sign: Sign,
    smoothness: u32,
) -> Result<BasePointReport<I>, SncError> {
    let u = cf_value::<I>(&word);
    let eig = eigenvalues(&u)?;
    let snc = snc_data(&eig, smoothness)?;
    let res = k_from_c(&c_raw, sign);
    let order = res.reduced.order();
    let rsc_holds = rsc(&res.reduced);
    let exceeds = order > snc.alpha;
    let reason = if !rsc_holds {
        Reason::RscViolated
    } else if exceeds {
        Reason::OrderExceedsAlpha
    } else {
        Reason::Blocked
    };
    Ok(BasePointReport {
        word,
        u_value: u,
        c_reduced: c_raw.reduce(),
        c_raw,
        zero_component: res.reduced.has_zero_component(),
        k_raw: res.raw,
        k_reduced: res.reduced,
        common_factor: res.gcd,
        boundary: rsc_holds && order == snc.alpha,
        order,
        rsc_holds,
        alpha: snc.alpha,
        beta: snc.beta,
        linearizable: reason != Reason::Blocked,
        reason,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport<I: Int> {
    /// Minimal repeating period of the chain.
    pub period: Vec<u64>,
    pub smoothness: u32,
    /// Transient points first (for a start word that is not on the cycle),
    /// then the chain's base points in [`base_points`] order.
    pub base_reports: Vec<BasePointReport<I>>,
    pub transient_len: usize,
    pub admissible: bool,
    /// For a two-entry period: both entries exceed 1 and neither divides the other.
    pub two_periodic_admissible: Option<bool>,
}

impl<I: Int> ChainReport<I> {
    pub fn transient(&self) -> &[BasePointReport<I>] {
        &self.base_reports[..self.transient_len]
    }

    pub fn cycle(&self) -> &[BasePointReport<I>] {
        &self.base_reports[self.transient_len..]
    }

    pub fn blocking(&self) -> impl Iterator<Item = &BasePointReport<I>> {
        self.base_reports.iter().filter(|r| !r.linearizable)
    }
}

/// Entries `a, b > 1` with neither dividing the other.
pub fn two_periodic_admissible(a: u64, b: u64) -> bool {
    a > 1 && b > 1 && !a.is_multiple_of(b) && !b.is_multiple_of(a)
}

pub fn chain_verdict<I: Int>(period: &[u64], smoothness: u32) -> Result<ChainReport<I>, SncError> {
    let points = base_points(period)?;
    let period = CfWord::periodic(period.to_vec())?
        .canonicalize()
        .period()
        .to_vec();
    assemble(period, Vec::new(), points, smoothness)
}

/// Verdict along the whole forward orbit of `w`: the points before the orbit
/// enters its cycle, then every base point of that cycle.
pub fn word_verdict<I: Int>(w: &CfWord, smoothness: u32) -> Result<ChainReport<I>, SncError> {
    let canonical = w.canonicalize();
    let period = canonical.period().to_vec();
    let points = base_points(&period)?;
    let on_cycle: BTreeSet<CfWord> = points.iter().map(CfWord::canonicalize).collect();
    let transient: Vec<CfWord> = orbit(&canonical)
        .into_iter()
        .take_while(|x| !on_cycle.contains(x))
        .collect();
    assemble(period, transient, points, smoothness)
}

fn assemble<I: Int>(
    period: Vec<u64>,
    transient: Vec<CfWord>,
    points: Vec<CfWord>,
    smoothness: u32,
) -> Result<ChainReport<I>, SncError> {
    let transient_len = transient.len();
    let base_reports = transient
        .into_par_iter()
        .chain(points.into_par_iter())
        .map(|w| basepoint_verdict::<I>(&w, smoothness))
        .collect::<Result<Vec<_>, _>>()?;
    let admissible = base_reports.iter().all(|r| r.linearizable);
    let two_periodic_admissible = match period[..] {
        [a, b] => Some(two_periodic_admissible(a, b)),
        _ => None,
    };
    Ok(ChainReport {
        period,
        smoothness,
        base_reports,
        transient_len,
        admissible,
        two_periodic_admissible,
    })
}
