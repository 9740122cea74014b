//! Normal-form immersed multicurves in the marked strip.
//!
//! The strip carries one peg at every integer height. Curves produced
//! by this pipeline come in two normal forms: a horizontal line at a
//! non-integer height, and a tall figure-eight whose right lobe
//! encloses a consecutive run of pegs. Components are stored
//! combinatorially (anchor and span); geometry exists only for
//! rendering, as polylines of rational points, and is never consumed by
//! invariant extraction.

use crate::split::BoxDecomposition;
use num_rational::Rational64;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("raw polyline components carry no combinatorial data and are rejected")]
    RawPolylineRejected,
    #[error("a line component must sit at a non-integer height")]
    LineOnPeg,
}

/// One component of a multicurve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum CurveComponent {
    /// A horizontal line at a non-integer height.
    Line { height_offset: Rational64 },
    /// A figure eight enclosing `span` consecutive pegs, the lowest at
    /// height `anchor`.
    TallEight { anchor: i64, span: u64 },
    /// Render-only geometry: a closed polyline of rational points.
    RawPolyline { points: Vec<(Rational64, Rational64)> },
}

/// A multiset of curve components.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct MultiCurve {
    pub components: Vec<CurveComponent>,
}

impl MultiCurve {
    pub fn line_at(offset: Rational64) -> Result<CurveComponent, CurveError> {
        if offset.is_integer() {
            return Err(CurveError::LineOnPeg);
        }
        Ok(CurveComponent::Line { height_offset: offset })
    }

    pub fn eights(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.components.iter().filter_map(|c| match c {
            CurveComponent::TallEight { anchor, span } => Some((*anchor, *span)),
            _ => None,
        })
    }

    pub fn has_raw(&self) -> bool {
        self.components
            .iter()
            .any(|c| matches!(c, CurveComponent::RawPolyline { .. }))
    }
}

/// Builds the multicurve of a split complex: one line just above peg
/// zero plus one span-one figure eight per unit box, anchored at the
/// box's Alexander center.
pub fn curve_from_complex(d: &BoxDecomposition) -> MultiCurve {
    let mut components = vec![CurveComponent::Line {
        height_offset: Rational64::new(1, 4),
    }];
    for b in &d.boxes {
        components.push(CurveComponent::TallEight {
            anchor: b.center_alexander as i64,
            span: 1,
        });
    }
    MultiCurve { components }
}

/// Number of intersections with the peg column: a line crosses once, a
/// figure eight four times.
pub fn peg_line_intersections(m: &MultiCurve) -> Result<u64, CurveError> {
    let mut total = 0;
    for c in &m.components {
        total += match c {
            CurveComponent::Line { .. } => 1,
            CurveComponent::TallEight { .. } => 4,
            CurveComponent::RawPolyline { .. } => return Err(CurveError::RawPolylineRejected),
        };
    }
    Ok(total)
}

/// Sorted multiset of right-excursion depths: the number of pegs
/// enclosed by each figure eight's right lobe. Lines contribute
/// nothing. Precondition: normal-form components only.
pub fn right_excursion_depths(m: &MultiCurve) -> Vec<u64> {
    debug_assert!(!m.has_raw(), "raw polylines are render-only");
    let mut depths: Vec<u64> = m.eights().map(|(_, span)| span).collect();
    depths.sort_unstable();
    depths
}

/// Closed outline of a figure eight as a rational polyline.
///
/// Rendering convention: the right lobes reach `span` and `span - 1/4`,
/// the left lobes reach `-1/2` and `-1/4`, with vertical clearance 1/4
/// beyond the extremal pegs. The path crosses the peg column four
/// times. All coordinates are quarter-integers.
pub fn eight_outline(anchor: i64, span: u64) -> Vec<(Rational64, Rational64)> {
    let q = |n: i64, d: i64| Rational64::new(n, d);
    let bottom = q(anchor, 1);
    let top = q(anchor + span as i64 - 1, 1);
    let s = q(span as i64, 1);
    let zero = q(0, 1);
    vec![
        // Outer right lobe.
        (zero, top + q(1, 2)),
        (s, top + q(1, 2)),
        (s, bottom - q(1, 2)),
        (zero, bottom - q(1, 2)),
        // Outer left lobe.
        (q(-1, 2), bottom - q(1, 2)),
        (q(-1, 2), top + q(1, 4)),
        (zero, top + q(1, 4)),
        // Inner right lobe.
        (s - q(1, 4), top + q(1, 4)),
        (s - q(1, 4), bottom - q(1, 4)),
        (zero, bottom - q(1, 4)),
        // Inner left lobe back to the start.
        (q(-1, 4), bottom - q(1, 4)),
        (q(-1, 4), top + q(1, 2)),
    ]
}

/// The outline of the deepest right excursion of a figure eight: the
/// outer right arc from the top crossing to the bottom crossing.
pub fn excursion_outline(anchor: i64, span: u64) -> Vec<(Rational64, Rational64)> {
    let q = |n: i64, d: i64| Rational64::new(n, d);
    let bottom = q(anchor, 1);
    let top = q(anchor + span as i64 - 1, 1);
    let s = q(span as i64, 1);
    let zero = q(0, 1);
    vec![
        (zero, top + q(1, 2)),
        (s, top + q(1, 2)),
        (s, bottom - q(1, 2)),
        (zero, bottom - q(1, 2)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::box_sum_complex;
    use crate::split::split_ord1;

    fn line() -> CurveComponent {
        CurveComponent::Line { height_offset: Rational64::new(1, 4) }
    }

    #[test]
    fn figure_eight_curve_counts() {
        let cx = box_sum_complex("4_1", &[(0, 0, 1)]);
        let curve = curve_from_complex(&split_ord1(&cx).unwrap());
        assert_eq!(curve.components.len(), 2);
        assert_eq!(peg_line_intersections(&curve).unwrap(), 5);
        assert_eq!(right_excursion_depths(&curve), vec![1]);
    }

    #[test]
    fn unknot_curve_is_a_single_line() {
        let cx = crate::complex::unknot_complex();
        let curve = curve_from_complex(&split_ord1(&cx).unwrap());
        assert_eq!(curve.components.len(), 1);
        assert_eq!(peg_line_intersections(&curve).unwrap(), 1);
        assert!(right_excursion_depths(&curve).is_empty());
    }

    #[test]
    fn eight_anchors_match_box_centers() {
        let cx = box_sum_complex("two", &[(1, 1, 1), (-1, -1, 1)]);
        let curve = curve_from_complex(&split_ord1(&cx).unwrap());
        let mut anchors: Vec<i64> = curve.eights().map(|(a, _)| a).collect();
        anchors.sort_unstable();
        assert_eq!(anchors, vec![-1, 1]);
    }

    #[test]
    fn depths_ignore_lines() {
        let m = MultiCurve {
            components: vec![CurveComponent::TallEight { anchor: 0, span: 3 }, line()],
        };
        assert_eq!(right_excursion_depths(&m), vec![3]);
    }

    #[test]
    fn raw_polyline_is_rejected_by_intersections() {
        let m = MultiCurve {
            components: vec![CurveComponent::RawPolyline { points: vec![] }],
        };
        assert_eq!(
            peg_line_intersections(&m),
            Err(CurveError::RawPolylineRejected)
        );
    }

    #[test]
    fn line_on_a_peg_is_rejected() {
        assert!(MultiCurve::line_at(Rational64::new(2, 1)).is_err());
        assert!(MultiCurve::line_at(Rational64::new(1, 4)).is_ok());
    }

    #[test]
    fn outline_crosses_the_column_four_times() {
        let pts = eight_outline(0, 3);
        // Count edges crossing x = 0 transversally (sign change on x).
        let mut crossings = 0;
        for i in 0..pts.len() {
            let (x1, _) = pts[i];
            let (x2, _) = pts[(i + 1) % pts.len()];
            if (x1 < 0.into() && x2 > 0.into()) || (x1 > 0.into() && x2 < 0.into()) {
                crossings += 1;
            }
        }
        // Vertices on the column connect a left and a right excursion.
        let on_column = pts.iter().filter(|(x, _)| *x == 0.into()).count();
        assert_eq!(crossings + on_column, 4);
    }
}
