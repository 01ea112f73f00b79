//! Exact genus-zero engine.
//!
//! On the projective line every vector bundle is a direct sum of line
//! bundles, and all Hom and Ext dimensions between line bundles are
//! closed-form. This makes genus zero the one place where the numerical
//! engine can be checked against exact brute force, which is what the
//! `oracle` CLI subcommand exposes.

use serde::Serialize;

/// dim Hom(O(a), O(b)) = h^0(O(b - a)) = max(b - a + 1, 0).
pub fn hom_dim(a: i64, b: i64) -> u64 {
    (b - a + 1).max(0) as u64
}

/// dim Ext^1(O(a), O(b)) = h^1(O(b - a)) = max(a - b - 1, 0).
pub fn ext1_dim(a: i64, b: i64) -> u64 {
    (a - b - 1).max(0) as u64
}

/// A direct sum of shifted line bundles on the projective line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P1Object {
    summands: Vec<P1Summand>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct P1Summand {
    pub twist: i64,
    pub shift: i64,
    pub multiplicity: u32,
}

impl P1Object {
    pub fn new(summands: Vec<P1Summand>) -> Option<Self> {
        if summands.is_empty() {
            None
        } else {
            Some(P1Object { summands })
        }
    }

    pub fn line_bundle(twist: i64) -> Self {
        P1Object {
            summands: vec![P1Summand {
                twist,
                shift: 0,
                multiplicity: 1,
            }],
        }
    }

    pub fn summands(&self) -> &[P1Summand] {
        &self.summands
    }

    /// Total dimension of Ext^n(self, other) summed over all n. Since
    /// line bundles only have Ext in degrees 0 and 1, each pair of
    /// summands contributes hom and ext1 shifted by the relative shift.
    pub fn total_ext_dim(&self, other: &P1Object) -> u64 {
        let mut total = 0u64;
        for a in &self.summands {
            for b in &other.summands {
                let m = a.multiplicity as u64 * b.multiplicity as u64;
                total += m * (hom_dim(a.twist, b.twist) + ext1_dim(a.twist, b.twist));
            }
        }
        total
    }

    pub fn semiorthogonal_to(&self, other: &P1Object) -> bool {
        self.total_ext_dim(other) == 0
    }
}

/// Machine-readable result of the exhaustive Riemann-Roch cross-check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub max_degree: i64,
    pub pairs: u64,
    pub failures: u64,
}

/// For every (a, b) in the square of side 2*max_deg + 1, check that
/// hom - ext1 equals b - a + 1, the genus-zero Euler pairing of the two
/// line-bundle classes.
pub fn euler_cross_check(max_deg: i64) -> CrossCheckReport {
    assert!(max_deg >= 1);
    let mut pairs = 0;
    let mut failures = 0;
    for a in -max_deg..=max_deg {
        for b in -max_deg..=max_deg {
            pairs += 1;
            let chi = hom_dim(a, b) as i64 - ext1_dim(a, b) as i64;
            if chi != b - a + 1 {
                failures += 1;
            }
        }
    }
    CrossCheckReport {
        max_degree: max_deg,
        pairs,
        failures,
    }
}

/// All pairs (a, b) in range with Hom and Ext^1 both zero. The slope-offset
/// law at genus zero says this is exactly the diagonal b = a - 1.
pub fn semiorthogonal_pairs(max_deg: i64) -> Vec<(i64, i64)> {
    assert!(max_deg >= 1);
    let mut out = Vec::new();
    for a in -max_deg..=max_deg {
        for b in -max_deg..=max_deg {
            if hom_dim(a, b) == 0 && ext1_dim(a, b) == 0 {
                out.push((a, b));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_dim_examples() {
        assert_eq!(hom_dim(0, 0), 1);
        assert_eq!(hom_dim(0, 2), 3);
        assert_eq!(hom_dim(2, 0), 0);
    }

    #[test]
    fn ext1_dim_examples() {
        assert_eq!(ext1_dim(2, 0), 1);
        assert_eq!(ext1_dim(0, 0), 0);
        assert_eq!(ext1_dim(0, -2), 1);
    }

    #[test]
    fn serre_duality_on_the_line() {
        // ext1(a, b) = hom(b, a - 2), canonical degree -2
        for a in -10..=10 {
            for b in -10..=10 {
                assert_eq!(ext1_dim(a, b), hom_dim(b, a - 2));
            }
        }
    }

    #[test]
    fn cross_check_small() {
        let r = euler_cross_check(1);
        assert_eq!(r.pairs, 9);
        assert_eq!(r.failures, 0);
    }

    #[test]
    fn cross_check_direct_point() {
        // (a, b) = (0, -2): hom 0, ext1 1, chi = -1 = b - a + 1
        assert_eq!(hom_dim(0, -2), 0);
        assert_eq!(ext1_dim(0, -2), 1);
    }

    #[test]
    fn semiorthogonal_pairs_small() {
        let pairs = semiorthogonal_pairs(2);
        assert_eq!(pairs, vec![(-1, -2), (0, -1), (1, 0), (2, 1)]);
    }

    #[test]
    fn p1_object_ext_totals() {
        let o = P1Object::line_bundle(0);
        let l = P1Object::line_bundle(-1);
        assert!(o.semiorthogonal_to(&l));
        let l2 = P1Object::line_bundle(-2);
        assert!(!o.semiorthogonal_to(&l2));
    }
}
