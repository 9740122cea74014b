//! The (p,q)-cabling transform on normal-form multicurves and the
//! torsion lower bound it certifies.
//!
//! Cabling draws p copies of the curve, each scaled vertically by p and
//! staggered q units below the previous copy, then translates the pegs
//! back onto one column. On normal forms that is closed-form span and
//! anchor arithmetic: a figure eight of span s becomes p eights of span
//! s*p; the line stays a single line. The deepest right excursion is
//! multiplied by p per step, which is the whole content of the bound.

use crate::complex::CfkComplex;
use crate::curve::{
    curve_from_complex, right_excursion_depths, CurveComponent, CurveError, MultiCurve,
};
use crate::split::split_ord1;
use num_integer::Integer;
use num_rational::Rational64;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PatternError {
    #[error("bad cable step `{0}`: expected `p,q` with integers")]
    BadStep(String),
    #[error("cable step ({p},{q}): longitudinal winding must satisfy p > 1")]
    WindingTooSmall { p: i64, q: i64 },
    #[error("cable step ({p},{q}): p and q must be coprime")]
    NotCoprime { p: i64, q: i64 },
    #[error("empty cable step")]
    EmptyStep,
}

/// An iterated cabling pattern: an ordered list of coprime (p, q) steps
/// with every p > 1, applied left to right.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CablePattern {
    steps: Vec<(i64, i64)>,
}

impl CablePattern {
    pub fn new(steps: Vec<(i64, i64)>) -> Result<Self, PatternError> {
        for &(p, q) in &steps {
            if p <= 1 {
                return Err(PatternError::WindingTooSmall { p, q });
            }
            if p.gcd(&q) != 1 {
                return Err(PatternError::NotCoprime { p, q });
            }
        }
        Ok(CablePattern { steps })
    }

    pub fn empty() -> Self {
        CablePattern::default()
    }

    /// Parses `p1,q1[;p2,q2...]`, e.g. `3,1` or `2,1;3,1`.
    pub fn parse(text: &str) -> Result<Self, PatternError> {
        let mut steps = Vec::new();
        for step in text.split(';') {
            if step.is_empty() {
                return Err(PatternError::EmptyStep);
            }
            let Some((ps, qs)) = step.split_once(',') else {
                return Err(PatternError::BadStep(step.to_string()));
            };
            let p: i64 = ps.trim().parse().map_err(|_| PatternError::BadStep(step.into()))?;
            let q: i64 = qs.trim().parse().map_err(|_| PatternError::BadStep(step.into()))?;
            steps.push((p, q));
        }
        CablePattern::new(steps)
    }

    pub fn steps(&self) -> &[(i64, i64)] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Product of the longitudinal windings.
    pub fn winding_product(&self) -> u64 {
        self.steps.iter().map(|(p, _)| *p as u64).product()
    }

    pub fn all_q_one(&self) -> bool {
        self.steps.iter().all(|&(_, q)| q == 1)
    }

    pub fn render(&self) -> String {
        self.steps
            .iter()
            .map(|(p, q)| format!("{p},{q}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Line offset after one cabling step: scale by p, nudged off the peg
/// if the scaled height became integral. Pure rendering convention; no
/// extracted invariant depends on it.
fn cable_line_offset(offset: Rational64, p: i64) -> Rational64 {
    let scaled = offset * Rational64::from_integer(p);
    if scaled.is_integer() {
        scaled + Rational64::new(1, 4)
    } else {
        scaled
    }
}

/// One (p,q)-cabling step.
pub fn cable(m: &MultiCurve, p: i64, q: i64) -> Result<MultiCurve, CurveError> {
    assert!(p > 1, "cable requires p > 1");
    let mut components = Vec::new();
    for c in &m.components {
        match c {
            CurveComponent::Line { height_offset } => components.push(CurveComponent::Line {
                height_offset: cable_line_offset(*height_offset, p),
            }),
            CurveComponent::TallEight { anchor, span } => {
                // Copy i is scaled by p and staggered i*q below the
                // previous copy; anchors follow the rendering convention
                // p*a - i*q with no extra offset.
                for i in 0..p {
                    components.push(CurveComponent::TallEight {
                        anchor: p * anchor - i * q,
                        span: span * p as u64,
                    });
                }
            }
            CurveComponent::RawPolyline { .. } => return Err(CurveError::RawPolylineRejected),
        }
    }
    Ok(MultiCurve { components })
}

/// Applies the pattern's steps left to right.
pub fn iterated_cable(m: &MultiCurve, pattern: &CablePattern) -> Result<MultiCurve, CurveError> {
    let mut out = m.clone();
    for &(p, q) in pattern.steps() {
        out = cable(&out, p, q)?;
    }
    Ok(out)
}

/// Torsion-order lower bound for the iterated cable of the knot whose
/// complex is `c`.
///
/// The bound applies when a unit box is certified, either by a full
/// order-one split or by a literal unit-box summand in the current
/// basis. The certified curve is cabled and the deepest right excursion
/// reported; with a box present that is the product of the windings.
/// Without a certified box the bound is vacuous and 0 is returned.
pub fn cable_torsion_bound(c: &CfkComplex, pattern: &CablePattern) -> u64 {
    let curve = match split_ord1(c) {
        Ok(d) => curve_from_complex(&d),
        Err(_) => {
            let boxes = c.find_unit_boxes();
            if boxes.is_empty() {
                return 0;
            }
            let mut components = vec![CurveComponent::Line {
                height_offset: Rational64::new(1, 4),
            }];
            for b in &boxes {
                components.push(CurveComponent::TallEight {
                    anchor: b.center_alexander as i64,
                    span: 1,
                });
            }
            MultiCurve { components }
        }
    };
    if curve.eights().next().is_none() {
        return 0;
    }
    let cabled = iterated_cable(&curve, pattern).expect("normal-form input");
    right_excursion_depths(&cabled).last().copied().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{box_sum_complex, staircase_trefoil_complex, unknot_complex};
    use crate::curve::peg_line_intersections;

    fn unit_eight_curve() -> MultiCurve {
        MultiCurve {
            components: vec![
                CurveComponent::TallEight { anchor: 0, span: 1 },
                CurveComponent::Line { height_offset: Rational64::new(1, 4) },
            ],
        }
    }

    #[test]
    fn cable_three_one_of_a_unit_eight() {
        let out = cable(&unit_eight_curve(), 3, 1).unwrap();
        let eights: Vec<_> = out.eights().collect();
        assert_eq!(eights.len(), 3);
        assert!(eights.iter().all(|&(_, s)| s == 3));
        assert_eq!(right_excursion_depths(&out), vec![3, 3, 3]);
        assert_eq!(peg_line_intersections(&out).unwrap(), 13);
    }

    #[test]
    fn cable_seven_q_spans_seven() {
        for q in [1, 2, 3] {
            let out = cable(&unit_eight_curve(), 7, q).unwrap();
            assert!(out.eights().all(|(_, s)| s == 7));
        }
    }

    #[test]
    fn cable_of_a_bare_line_is_a_line() {
        let m = MultiCurve {
            components: vec![CurveComponent::Line { height_offset: Rational64::new(1, 4) }],
        };
        let out = cable(&m, 5, 2).unwrap();
        assert_eq!(out.components.len(), 1);
        assert!(matches!(out.components[0], CurveComponent::Line { .. }));
    }

    #[test]
    fn line_offset_never_lands_on_a_peg() {
        // 4 * 1/4 would be integral without the nudge.
        let m = MultiCurve {
            components: vec![CurveComponent::Line { height_offset: Rational64::new(1, 4) }],
        };
        let out = cable(&m, 4, 1).unwrap();
        let CurveComponent::Line { height_offset } = out.components[0] else {
            panic!("expected line");
        };
        assert!(!height_offset.is_integer());
    }

    #[test]
    fn iterated_cable_multiplies_spans() {
        let pat = CablePattern::parse("2,1;3,1").unwrap();
        let out = iterated_cable(&unit_eight_curve(), &pat).unwrap();
        let eights: Vec<_> = out.eights().collect();
        assert_eq!(eights.len(), 6);
        assert!(eights.iter().all(|&(_, s)| s == 6));

        let pat3 = CablePattern::parse("2,1;2,1;2,1").unwrap();
        let out3 = iterated_cable(&unit_eight_curve(), &pat3).unwrap();
        assert_eq!(out3.eights().count(), 8);
        assert!(out3.eights().all(|(_, s)| s == 8));
    }

    #[test]
    fn empty_pattern_is_identity() {
        let out = iterated_cable(&unit_eight_curve(), &CablePattern::empty()).unwrap();
        assert_eq!(out, unit_eight_curve());
    }

    #[test]
    fn pattern_validation() {
        assert!(CablePattern::parse("3,1").is_ok());
        assert!(CablePattern::parse("7,-2").is_ok());
        assert!(matches!(
            CablePattern::parse("1,1"),
            Err(PatternError::WindingTooSmall { .. })
        ));
        assert!(matches!(
            CablePattern::parse("4,2"),
            Err(PatternError::NotCoprime { .. })
        ));
        assert!(CablePattern::parse("3;1").is_err());
        assert!(CablePattern::parse("").is_err());
    }

    #[test]
    fn torsion_bound_on_catalog_shapes() {
        let four_one = box_sum_complex("4_1", &[(0, 0, 1)]);
        let pat = CablePattern::parse("3,1").unwrap();
        assert_eq!(cable_torsion_bound(&four_one, &pat), 3);

        assert_eq!(cable_torsion_bound(&unknot_complex(), &CablePattern::parse("5,1").unwrap()), 0);

        let pat6 = CablePattern::parse("2,1;3,1").unwrap();
        let kt_shape = box_sum_complex(
            "kt",
            &[(1, 1, 1), (1, 0, 1), (0, 0, 1), (0, 0, 1)],
        );
        assert_eq!(cable_torsion_bound(&kt_shape, &pat6), 6);
    }

    #[test]
    fn torsion_bound_via_literal_box_when_split_fails() {
        // A trefoil staircase plus a unit box: the split rejects the
        // staircase, but the literal box still certifies the bound.
        let cx = staircase_trefoil_complex()
            .direct_sum(&crate::complex::unit_box_complex(["a2", "b2", "c2", "d2"], 0, 0));
        let pat = CablePattern::parse("5,1").unwrap();
        assert_eq!(cable_torsion_bound(&cx, &pat), 5);
    }

    #[test]
    fn torsion_bound_with_empty_pattern_is_one_with_a_box() {
        let four_one = box_sum_complex("4_1", &[(0, 0, 1)]);
        assert_eq!(cable_torsion_bound(&four_one, &CablePattern::empty()), 1);
    }
}
