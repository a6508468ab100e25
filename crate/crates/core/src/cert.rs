//! Certificate records.

use serde::{Deserialize, Serialize};

/// One checked count. Identity checks record `expected = 0` and the number
/// of nonzero residual entries as `computed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedCert {
    pub context: String,
    pub degree: usize,
    pub expected: u64,
    pub computed: u64,
    pub pass: bool,
    /// Measured but not part of the overall verdict.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub info: bool,
}

impl GradedCert {
    pub fn new(context: impl Into<String>, degree: usize, expected: u64, computed: u64) -> Self {
        GradedCert { context: context.into(), degree, expected, computed, pass: expected == computed, info: false }
    }

    /// A zero-residual identity check.
    pub fn zero(context: impl Into<String>, degree: usize, residual: usize) -> Self {
        Self::new(context, degree, 0, residual as u64)
    }

    pub fn informational(mut self, info: bool) -> Self {
        self.info = info;
        self
    }

    /// A boolean check recorded as `1 == 1`.
    pub fn holds(context: impl Into<String>, degree: usize, ok: bool) -> Self {
        Self::new(context, degree, 1, u64::from(ok))
    }
}

pub fn all_pass(certs: &[GradedCert]) -> bool {
    certs.iter().all(|c| c.pass || c.info)
}

/// `C(n, k)` as `u64`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_flag_tracks_counts() {
        assert!(GradedCert::new("x", 2, 6, 6).pass);
        assert!(!GradedCert::zero("y", 0, 3).pass);
        assert_eq!(binomial(8, 2), 28);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(6, 3), 20);
    }
}
