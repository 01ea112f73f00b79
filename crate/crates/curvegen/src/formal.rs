//! Formal model of objects of the bounded derived category of a curve.
//!
//! Since every object on a curve splits as a direct sum of shifted
//! cohomology sheaves, an object is represented as a finite map from
//! cohomological degree to a sheaf, and each sheaf as a list of
//! semistable pieces (either genuine direct summands or Harder-Narasimhan
//! factors).

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::numerics::{ChernPair, ExtendedSlope};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormalError {
    #[error("a formal sheaf must contain at least one piece")]
    EmptySheaf,
    #[error("a formal object must have at least one graded component")]
    EmptyObject,
    #[error("h0 annotation is only allowed on positive-rank pieces")]
    AnnotationOnTorsion,
    #[error("stable flag requires positive rank")]
    StableTorsion,
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("dual and tensor require a locally free object")]
    NotLocallyFree,
    #[error("dual and tensor require Split sheaves (HN factors do not multiply pairwise)")]
    NotSplit,
}

/// One semistable summand or HN factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemistablePiece {
    pub class: ChernPair,
    pub multiplicity: u32,
    /// Dimension of global sections, when the user asserts it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h0: Option<u64>,
    /// User-asserted stability. Rank-1 pieces are implicitly stable.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub stable: bool,
    /// Opaque label for identity and assumption tracking. Pieces with
    /// equal labels and equal classes are considered isomorphic; all
    /// other pairs are presumed non-isomorphic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
}

impl SemistablePiece {
    pub fn new(class: ChernPair) -> Self {
        SemistablePiece {
            class,
            multiplicity: 1,
            h0: None,
            stable: false,
            id: None,
        }
    }

    pub fn with_multiplicity(mut self, m: u32) -> Result<Self, FormalError> {
        if m == 0 {
            return Err(FormalError::ZeroMultiplicity);
        }
        self.multiplicity = m;
        Ok(self)
    }

    pub fn with_h0(mut self, h0: u64) -> Result<Self, FormalError> {
        if self.class.is_torsion() {
            return Err(FormalError::AnnotationOnTorsion);
        }
        self.h0 = Some(h0);
        Ok(self)
    }

    pub fn with_stable(mut self) -> Result<Self, FormalError> {
        if self.class.is_torsion() {
            return Err(FormalError::StableTorsion);
        }
        self.stable = true;
        Ok(self)
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = Some(id.into());
        self
    }

    pub fn slope(&self) -> ExtendedSlope {
        self.class.slope()
    }

    /// Simple means scalar endomorphisms only: rank-1 pieces always, higher
    /// rank only when flagged stable.
    pub fn is_simple(&self) -> bool {
        self.class.rank() == 1 || self.stable
    }

    /// Pieces are isomorphic only when the user linked them with equal id
    /// labels and they carry the same class.
    pub fn isomorphic_to(&self, other: &SemistablePiece) -> bool {
        match (&self.id, &other.id) {
            (Some(a), Some(b)) => a == b && self.class == other.class,
            _ => false,
        }
    }

    /// Total class accounting for multiplicity.
    pub fn total_class(&self) -> ChernPair {
        self.class.scaled(self.multiplicity)
    }
}

/// Whether the listed pieces are genuine direct summands or only the
/// factors of the Harder-Narasimhan filtration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Splitting {
    Split,
    HNOnly,
}

/// A coherent sheaf presented as slope-sorted semistable pieces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormalSheaf {
    pieces: Vec<SemistablePiece>,
    splitting: Splitting,
}

impl FormalSheaf {
    pub fn new(pieces: Vec<SemistablePiece>, splitting: Splitting) -> Result<Self, FormalError> {
        if pieces.is_empty() {
            return Err(FormalError::EmptySheaf);
        }
        Ok(FormalSheaf { pieces, splitting })
    }

    pub fn pieces(&self) -> &[SemistablePiece] {
        &self.pieces
    }

    pub fn splitting(&self) -> Splitting {
        self.splitting
    }

    pub fn is_split(&self) -> bool {
        self.splitting == Splitting::Split
    }

    /// Canonical form: pieces of equal slope merged, sorted by strictly
    /// decreasing slope (torsion first). Merging combines ranks, degrees,
    /// lengths and multiplicities into one class; annotations survive only
    /// when they are identical across the merged group, except that the
    /// stable flag and h0 never survive an actual merge (a direct sum of
    /// stable bundles is not stable, and section counts would have to add).
    pub fn hn_normalize(&self) -> FormalSheaf {
        let mut groups: Vec<(ExtendedSlope, Vec<&SemistablePiece>)> = Vec::new();
        for p in &self.pieces {
            let s = p.slope();
            match groups.iter_mut().find(|(gs, _)| *gs == s) {
                Some((_, v)) => v.push(p),
                None => groups.push((s, vec![p])),
            }
        }
        groups.sort_by(|a, b| b.0.cmp(&a.0));
        let pieces = groups
            .into_iter()
            .map(|(_, group)| {
                if group.len() == 1 && group[0].multiplicity == 1 {
                    return group[0].clone();
                }
                let mut class = group[0].total_class();
                for p in &group[1..] {
                    class = class.sum(&p.total_class());
                }
                let first_id = &group[0].id;
                let id = if group.iter().all(|p| &p.id == first_id) {
                    first_id.clone()
                } else {
                    None
                };
                SemistablePiece {
                    class,
                    multiplicity: 1,
                    h0: None,
                    stable: false,
                    id,
                }
            })
            .collect();
        FormalSheaf {
            pieces,
            splitting: self.splitting,
        }
    }

    /// (mu_max, mu_min): slopes of the first and last piece of the
    /// normalized sheaf.
    pub fn mu_extremes(&self) -> (ExtendedSlope, ExtendedSlope) {
        let n = self.hn_normalize();
        let first = n.pieces.first().expect("sheaf is nonempty").slope();
        let last = n.pieces.last().expect("sheaf is nonempty").slope();
        (first, last)
    }

    /// Sum of all piece classes (with multiplicity).
    pub fn total_class_sum(&self) -> (u32, i64) {
        self.pieces.iter().fold((0, 0), |(r, d), p| {
            let t = p.total_class();
            (r + t.rank(), d + t.degree())
        })
    }

    pub fn has_torsion(&self) -> bool {
        self.pieces.iter().any(|p| p.class.is_torsion())
    }

    pub fn all_torsion(&self) -> bool {
        self.pieces.iter().all(|p| p.class.is_torsion())
    }
}

/// Whether the object is made of torsion sheaves, vector bundles, or both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Support {
    Torsion,
    LocallyFree,
    Mixed,
}

/// Semistability of the whole object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "slope")]
pub enum Stability {
    Semistable(ExtendedSlope),
    NotSemistable,
}

impl Stability {
    pub fn is_semistable(&self) -> bool {
        matches!(self, Stability::Semistable(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub support: Support,
    pub stability: Stability,
}

/// An object of the bounded derived category: a finite map from
/// cohomological degree to a formal sheaf.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormalObject {
    graded: BTreeMap<i64, FormalSheaf>,
}

impl FormalObject {
    pub fn new(graded: BTreeMap<i64, FormalSheaf>) -> Result<Self, FormalError> {
        if graded.is_empty() {
            return Err(FormalError::EmptyObject);
        }
        Ok(FormalObject { graded })
    }

    /// Object concentrated in degree 0.
    pub fn sheaf(s: FormalSheaf) -> Self {
        let mut graded = BTreeMap::new();
        graded.insert(0, s);
        FormalObject { graded }
    }

    pub fn graded(&self) -> &BTreeMap<i64, FormalSheaf> {
        &self.graded
    }

    pub fn pieces(&self) -> impl Iterator<Item = &SemistablePiece> {
        self.graded.values().flat_map(|s| s.pieces().iter())
    }

    pub fn normalize(&self) -> FormalObject {
        FormalObject {
            graded: self
                .graded
                .iter()
                .map(|(d, s)| (*d, s.hn_normalize()))
                .collect(),
        }
    }

    pub fn classify(&self) -> Classification {
        let mut any_torsion = false;
        let mut any_bundle = false;
        let mut slopes: Vec<ExtendedSlope> = Vec::new();
        for p in self.pieces() {
            if p.class.is_torsion() {
                any_torsion = true;
            } else {
                any_bundle = true;
            }
            let s = p.slope();
            if !slopes.contains(&s) {
                slopes.push(s);
            }
        }
        let support = match (any_torsion, any_bundle) {
            (true, false) => Support::Torsion,
            (false, true) => Support::LocallyFree,
            (true, true) => Support::Mixed,
            (false, false) => unreachable!("formal objects are nonempty"),
        };
        let stability = if slopes.len() == 1 {
            Stability::Semistable(slopes[0])
        } else {
            Stability::NotSemistable
        };
        Classification { support, stability }
    }

    /// Shift by n: degrees relabelled by -n.
    pub fn shift(&self, n: i64) -> FormalObject {
        FormalObject {
            graded: self.graded.iter().map(|(d, s)| (d - n, s.clone())).collect(),
        }
    }

    /// Twist by a degree-t line bundle: (r, d) -> (r, d + r t) on every
    /// positive-rank piece, torsion unchanged. Annotations are erased
    /// (section counts do not transform numerically).
    pub fn twist(&self, t: i64) -> FormalObject {
        FormalObject {
            graded: self
                .graded
                .iter()
                .map(|(d, s)| {
                    let pieces = s
                        .pieces()
                        .iter()
                        .map(|p| {
                            let class = if p.class.is_torsion() {
                                p.class
                            } else {
                                ChernPair::bundle(
                                    p.class.rank(),
                                    p.class.degree() + p.class.rank() as i64 * t,
                                )
                                .expect("positive rank preserved")
                            };
                            SemistablePiece {
                                class,
                                multiplicity: p.multiplicity,
                                h0: None,
                                stable: false,
                                id: None,
                            }
                        })
                        .collect();
                    (*d, FormalSheaf { pieces, splitting: s.splitting })
                })
                .collect(),
        }
    }

    fn require_locally_free_split(&self) -> Result<(), FormalError> {
        for s in self.graded.values() {
            if s.has_torsion() {
                return Err(FormalError::NotLocallyFree);
            }
            if !s.is_split() {
                return Err(FormalError::NotSplit);
            }
        }
        Ok(())
    }

    /// Dual: (r, d) -> (r, -d), grading degrees negated. Requires a
    /// locally free Split object. Annotations are erased.
    pub fn dual(&self) -> Result<FormalObject, FormalError> {
        self.require_locally_free_split()?;
        let graded = self
            .graded
            .iter()
            .map(|(d, s)| {
                let pieces = s
                    .pieces()
                    .iter()
                    .map(|p| {
                        SemistablePiece {
                            class: ChernPair::bundle(p.class.rank(), -p.class.degree())
                                .expect("positive rank"),
                            multiplicity: p.multiplicity,
                            h0: None,
                            stable: false,
                            id: None,
                        }
                    })
                    .collect();
                (-d, FormalSheaf { pieces, splitting: s.splitting })
            })
            .collect();
        Ok(FormalObject { graded })
    }

    /// Tensor product: pieces combine pairwise via
    /// (r1, d1) x (r2, d2) = (r1 r2, r1 d2 + r2 d1), grading degrees add.
    /// Requires locally free Split operands.
    pub fn tensor(&self, other: &FormalObject) -> Result<FormalObject, FormalError> {
        self.require_locally_free_split()?;
        other.require_locally_free_split()?;
        let mut graded: BTreeMap<i64, Vec<SemistablePiece>> = BTreeMap::new();
        for (da, sa) in &self.graded {
            for (db, sb) in &other.graded {
                for pa in sa.pieces() {
                    for pb in sb.pieces() {
                        let (r1, d1) = (pa.class.rank(), pa.class.degree());
                        let (r2, d2) = (pb.class.rank(), pb.class.degree());
                        let class = ChernPair::bundle(
                            r1 * r2,
                            r1 as i64 * d2 + r2 as i64 * d1,
                        )
                        .expect("positive rank product");
                        graded.entry(da + db).or_default().push(SemistablePiece {
                            class,
                            multiplicity: pa.multiplicity * pb.multiplicity,
                            h0: None,
                            stable: false,
                            id: None,
                        });
                    }
                }
            }
        }
        let graded = graded
            .into_iter()
            .map(|(d, pieces)| {
                (
                    d,
                    FormalSheaf {
                        pieces,
                        splitting: Splitting::Split,
                    },
                )
            })
            .collect();
        Ok(FormalObject { graded })
    }

    /// Pooled totals across all degrees (no signs).
    pub fn total_class_sum(&self) -> (u32, i64) {
        self.graded.values().fold((0, 0), |(r, d), s| {
            let (sr, sd) = s.total_class_sum();
            (r + sr, d + sd)
        })
    }

    /// Pooled (mu_max, mu_min) over the normalized pieces of all degrees.
    pub fn mu_extremes(&self) -> (ExtendedSlope, ExtendedSlope) {
        let mut max = None;
        let mut min = None;
        for s in self.graded.values() {
            let (hi, lo) = s.mu_extremes();
            max = Some(match max {
                None => hi,
                Some(m) if hi > m => hi,
                Some(m) => m,
            });
            min = Some(match min {
                None => lo,
                Some(m) if lo < m => lo,
                Some(m) => m,
            });
        }
        (max.expect("nonempty"), min.expect("nonempty"))
    }
}

impl fmt::Display for FormalObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, s) in &self.graded {
            for p in s.pieces() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{}", p.class)?;
                if p.multiplicity > 1 {
                    write!(f, "^{}", p.multiplicity)?;
                }
                if *d != 0 {
                    write!(f, "[{}]", -d)?;
                }
            }
        }
        Ok(())
    }
}

/// Convenience builders used by tests and the fuzz corpus.
pub mod build {
    use super::*;

    pub fn piece(rank: u32, degree: i64) -> SemistablePiece {
        SemistablePiece::new(ChernPair::new(rank, degree).expect("nonzero class"))
    }

    pub fn torsion(length: i64) -> SemistablePiece {
        SemistablePiece::new(ChernPair::torsion(length).expect("positive length"))
    }

    pub fn split_sheaf(pieces: Vec<SemistablePiece>) -> FormalSheaf {
        FormalSheaf::new(pieces, Splitting::Split).expect("nonempty")
    }

    pub fn hn_sheaf(pieces: Vec<SemistablePiece>) -> FormalSheaf {
        FormalSheaf::new(pieces, Splitting::HNOnly).expect("nonempty")
    }

    pub fn object(sheaf: FormalSheaf) -> FormalObject {
        FormalObject::sheaf(sheaf)
    }
}
