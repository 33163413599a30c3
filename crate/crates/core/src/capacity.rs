//! MDS-PIR capacities and the achievability verdict.
//!
//! For an [n,k] storage code and f files the finite capacity is
//! `C_f = (1 - k/n) / (1 - (k/n)^f)`, tending to `C_∞ = 1 - k/n`. A code is
//! certified as achieving both once an (n-k)-regular matrix of correctable
//! erasure patterns is exhibited. Failing to exhibit one proves nothing.

use std::fmt;

use num::{BigInt, BigRational, One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::ematrix::{brute_force_search, construct, validate};
use crate::error::{Error, Result};
use crate::lrc::LrcCode;
use crate::matrix::BinaryMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FileCount {
    Finite(u64),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapacityQuery {
    n: u64,
    k: u64,
    files: FileCount,
}

impl CapacityQuery {
    pub fn new(n: u64, k: u64, files: FileCount) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::InvalidParameter(format!("need 1 <= k < n, got n={n}, k={k}")));
        }
        if files == FileCount::Finite(0) {
            return Err(Error::InvalidParameter("file count must be at least 1".into()));
        }
        Ok(CapacityQuery { n, k, files })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn files(&self) -> FileCount {
        self.files
    }

    pub fn rate(&self) -> BigRational {
        BigRational::new(BigInt::from(self.k), BigInt::from(self.n))
    }

    /// C_f for finite f, C_∞ otherwise.
    pub fn capacity(&self) -> BigRational {
        match self.files {
            FileCount::Finite(f) => finite_formula(&self.rate(), f),
            FileCount::Infinite => c_asymptotic(self),
        }
    }
}

fn finite_formula(rate: &BigRational, f: u64) -> BigRational {
    let one = BigRational::one();
    let mut power = one.clone();
    for _ in 0..f {
        power *= rate;
    }
    (&one - rate) / (&one - power)
}

/// Finite capacity; `None` when the query asks for infinitely many files.
pub fn c_finite(q: &CapacityQuery) -> Option<BigRational> {
    match q.files {
        FileCount::Finite(f) => Some(finite_formula(&q.rate(), f)),
        FileCount::Infinite => None,
    }
}

pub fn c_asymptotic(q: &CapacityQuery) -> BigRational {
    BigRational::one() - q.rate()
}

/// Decimal rendering with a fixed number of fractional digits, truncated.
pub fn to_decimal(x: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (x * BigRational::from_integer(scale.clone())).trunc().to_integer();
    let neg = scaled < BigInt::from(0);
    let abs = if neg { -scaled } else { scaled };
    let int = &abs / &scale;
    let frac = (&abs % &scale).to_u128().unwrap_or(0);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac:0digits$}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessSource {
    Construction,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AchievabilityVerdict {
    Achieving {
        witness: BinaryMatrix,
        source: WitnessSource,
        c_finite: String,
        c_asymptotic: BigRational,
    },
    /// Neither construction nor an exhaustive search produced a witness.
    NotWitnessed { reason: String },
    Unknown { reason: String },
}

impl AchievabilityVerdict {
    pub fn is_achieving(&self) -> bool {
        matches!(self, AchievabilityVerdict::Achieving { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            AchievabilityVerdict::Achieving { .. } => "ACHIEVING",
            AchievabilityVerdict::NotWitnessed { .. } => "NOT_WITNESSED",
            AchievabilityVerdict::Unknown { .. } => "UNKNOWN",
        }
    }

    pub fn witness(&self) -> Option<&BinaryMatrix> {
        match self {
            AchievabilityVerdict::Achieving { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn report(&self) -> VerdictReport {
        match self {
            AchievabilityVerdict::Achieving { witness, source, c_finite, c_asymptotic } => VerdictReport {
                verdict: self.label().into(),
                source: Some(*source),
                reason: None,
                c_finite: Some(c_finite.clone()),
                c_asymptotic: Some(c_asymptotic.to_string()),
                witness: Some(witness.to_text().lines().map(str::to_owned).collect()),
            },
            AchievabilityVerdict::NotWitnessed { reason } | AchievabilityVerdict::Unknown { reason } => VerdictReport {
                verdict: self.label().into(),
                source: None,
                reason: Some(reason.clone()),
                c_finite: None,
                c_asymptotic: None,
                witness: None,
            },
        }
    }
}

impl fmt::Display for AchievabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AchievabilityVerdict::Achieving { source, c_finite, c_asymptotic, .. } => {
                write!(f, "ACHIEVING ({source:?}); C_f = {c_finite}; C_inf = {c_asymptotic}")
            }
            AchievabilityVerdict::NotWitnessed { reason } => write!(f, "NOT_WITNESSED ({reason})"),
            AchievabilityVerdict::Unknown { reason } => write!(f, "UNKNOWN ({reason})"),
        }
    }
}

/// Serializable form of a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub verdict: String,
    pub source: Option<WitnessSource>,
    pub reason: Option<String>,
    pub c_finite: Option<String>,
    pub c_asymptotic: Option<String>,
    pub witness: Option<Vec<String>>,
}

/// Runs the construction, falling back to a bounded exhaustive search.
pub fn verdict(lrc: &LrcCode, budget: u64) -> AchievabilityVerdict {
    let code = lrc.code();
    let (n, k) = (code.n() as u64, code.k() as u64);
    let achieving = |witness: BinaryMatrix, source| {
        let rate = BigRational::new(BigInt::from(k), BigInt::from(n));
        AchievabilityVerdict::Achieving {
            witness,
            source,
            c_finite: format!("(1 - {rate})/(1 - ({rate})^f)"),
            c_asymptotic: BigRational::one() - rate,
        }
    };
    let failure = match construct(lrc) {
        Ok(built) => return achieving(built.matrix.into_matrix(), WitnessSource::Construction),
        Err(e) => e,
    };
    match brute_force_search(code, budget) {
        Ok(Some(e)) if validate(&e, code).map(|r| r.verdict).unwrap_or(false) => achieving(e, WitnessSource::Search),
        Ok(Some(_)) => AchievabilityVerdict::Unknown { reason: format!("{failure}; search returned an invalid matrix") },
        Ok(None) => AchievabilityVerdict::NotWitnessed { reason: format!("{failure}; exhaustive search found no E") },
        Err(e) => AchievabilityVerdict::Unknown { reason: format!("{failure}; {e}") },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::LinearCode;
    use crate::gf::binary_field;
    use crate::lrc::{build_from_mds_parent, parity_splitting, LocalityProfile};
    use crate::matrix::MatrixGF;
    use proptest::prelude::*;

    fn q(n: u64, k: u64, f: u64) -> CapacityQuery {
        CapacityQuery::new(n, k, FileCount::Finite(f)).unwrap()
    }

    fn frac(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn finite_examples() {
        assert_eq!(c_finite(&q(7, 4, 1)).unwrap(), frac(1, 1));
        assert_eq!(c_finite(&q(7, 4, 2)).unwrap(), frac(7, 11));
        assert_eq!(c_finite(&q(2, 1, 2)).unwrap(), frac(2, 3));
        let inf = CapacityQuery::new(7, 4, FileCount::Infinite).unwrap();
        assert_eq!(c_finite(&inf), None);
        assert_eq!(inf.capacity(), frac(3, 7));
    }

    #[test]
    fn asymptotic_examples() {
        assert_eq!(c_asymptotic(&q(7, 4, 1)), frac(3, 7));
        assert_eq!(c_asymptotic(&q(4, 2, 1)), frac(1, 2));
        assert!(CapacityQuery::new(5, 0, FileCount::Infinite).is_err());
        assert!(CapacityQuery::new(5, 5, FileCount::Infinite).is_err());
        assert!(CapacityQuery::new(5, 2, FileCount::Finite(0)).is_err());
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&frac(3, 7), 6), "0.428571");
        assert_eq!(to_decimal(&frac(1, 1), 3), "1.000");
        assert_eq!(to_decimal(&frac(1, 40), 2), "0.02");
        assert_eq!(to_decimal(&frac(5, 2), 0), "2");
    }

    proptest! {
        #[test]
        fn decreasing_towards_asymptote(n in 2u64..40, k_seed in 1u64..40, f in 1u64..30) {
            let k = 1 + k_seed % (n - 1);
            let here = c_finite(&q(n, k, f)).unwrap();
            let next = c_finite(&q(n, k, f + 1)).unwrap();
            let limit = c_asymptotic(&q(n, k, f));
            prop_assert!(next < here);
            prop_assert!(next > limit);
            prop_assert_eq!(c_finite(&q(n, k, 1)).unwrap(), BigRational::one());
        }
    }

    fn pyramid() -> LrcCode {
        let f = binary_field(3).unwrap();
        let h = MatrixGF::from_strs(&f, &[&["z^3", "1", "z^3", "z", "1", "0"], &["z^4", "1", "z^5", "z^5", "0", "1"]]).unwrap();
        build_from_mds_parent(&LinearCode::from_parity_check(h).unwrap(), 2, 2).unwrap()
    }

    #[test]
    fn verdict_examples() {
        let v = verdict(&pyramid(), 1000);
        assert_eq!(v.label(), "ACHIEVING");
        match &v {
            AchievabilityVerdict::Achieving { c_asymptotic, source, .. } => {
                assert_eq!(c_asymptotic, &frac(3, 7));
                assert_eq!(*source, WitnessSource::Construction);
            }
            _ => unreachable!(),
        }
        let rep = v.report();
        assert_eq!(rep.c_asymptotic.as_deref(), Some("3/7"));
        assert_eq!(rep.witness.as_ref().map(Vec::len), Some(7));

        let f = binary_field(4).unwrap();
        assert!(verdict(&parity_splitting(&f, 5, 4, 2, 2).unwrap(), 1000).is_achieving());
    }

    #[test]
    fn corrupted_codes() {
        // local parities (0, 1): coordinate 1 is covered by no local check
        let f = binary_field(4).unwrap();
        let good = parity_splitting(&f, 5, 4, 2, 2).unwrap();
        let profile: LocalityProfile = good.profile().clone();
        let p = vec![MatrixGF::from_rows(&f, 2, &[vec![0, 1]]).unwrap(); 2];
        let bad = LrcCode::from_blocks(&f, profile, p, good.global_blocks().to_vec()).unwrap();
        assert_eq!(verdict(&bad, 1000).label(), "NOT_WITNESSED");

        // zeroed global parity: still has witnesses, but not within one node
        let lrc = pyramid();
        let zero = vec![MatrixGF::zeros(lrc.field(), 1, 2); 2];
        let bad = LrcCode::from_blocks(lrc.field(), lrc.profile().clone(), lrc.local_blocks().to_vec(), zero).unwrap();
        match verdict(&bad, 1) {
            AchievabilityVerdict::Unknown { reason } => {
                assert!(reason.contains("not a compliant"));
                assert!(reason.contains("budget"));
            }
            other => panic!("unexpected {other}"),
        }
    }
}
