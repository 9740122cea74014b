//! A small sound inference engine over intervals for the three fusion
//! invariants F, F_sh, F_h of a ribbon knot and its cables.
//!
//! Rules contribute one-sided bounds with provenance; closing a ledger
//! intersects the contributions, pushes bounds through the chain
//! F_h <= F_sh <= F, and reports exact values where an interval
//! collapses. When a cable pattern is present every row refers to the
//! cabled knot, with the base knot's data feeding the rules.

use crate::cable::{cable_torsion_bound, CablePattern};
use crate::complex::CfkComplex;
use crate::homology::{hat_table, torsion_order};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("inconsistent assertions: {invariant} pinned to the empty interval [{lower}, {upper}]")]
    Inconsistent { invariant: &'static str, lower: u64, upper: u64 },
    #[error("a known fusion number requires the ribbon assertion")]
    FusionWithoutRibbon,
}

/// User-supplied facts about the knot under consideration. Ribbonness
/// and the known fusion number are assertions recorded in the trace,
/// not conclusions.
#[derive(Debug, Clone, Default)]
pub struct KnotAssertions {
    pub is_ribbon: bool,
    pub known_fusion: Option<u64>,
    pub complex: Option<CfkComplex>,
    pub pattern: Option<CablePattern>,
}

impl KnotAssertions {
    pub fn validate(&self) -> Result<(), BoundsError> {
        if self.known_fusion.is_some() && !self.is_ribbon {
            return Err(BoundsError::FusionWithoutRibbon);
        }
        Ok(())
    }

    fn pattern_steps(&self) -> &[(i64, i64)] {
        self.pattern.as_ref().map(CablePattern::steps).unwrap_or(&[])
    }
}

/// The three invariants tracked by a ledger, in chain order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FusionInvariant {
    HomotopyFusion,
    StrongHomotopyFusion,
    Fusion,
}

impl FusionInvariant {
    pub fn label(&self) -> &'static str {
        match self {
            FusionInvariant::HomotopyFusion => "F_h",
            FusionInvariant::StrongHomotopyFusion => "F_sh",
            FusionInvariant::Fusion => "F",
        }
    }
}

/// One rule contribution: a single one-sided bound with provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Contribution {
    pub invariant: FusionInvariant,
    pub lower: Option<u64>,
    pub upper: Option<u64>,
    pub rule: String,
    pub citation: String,
}

/// A list of contributions from one rule evaluation.
pub type PartialLedger = Vec<Contribution>;

/// An interval `[lower, upper]`, upper `None` meaning unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lower: u64,
    pub upper: Option<u64>,
}

impl Interval {
    fn unbounded() -> Self {
        Interval { lower: 0, upper: None }
    }

    pub fn is_exact(&self) -> bool {
        self.upper == Some(self.lower)
    }

    pub fn render(&self) -> String {
        match self.upper {
            Some(u) if u == self.lower => format!("= {u} (exact)"),
            Some(u) => format!("[{}, {u}]", self.lower),
            None => format!("[{}, unbounded]", self.lower),
        }
    }
}

/// Intervals for the three invariants plus the derivation trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionLedger {
    pub homotopy_fusion: Interval,
    pub strong_homotopy_fusion: Interval,
    pub fusion: Interval,
    pub derivation: Vec<(String, String)>,
}

impl FusionLedger {
    pub fn row(&self, inv: FusionInvariant) -> Interval {
        match inv {
            FusionInvariant::HomotopyFusion => self.homotopy_fusion,
            FusionInvariant::StrongHomotopyFusion => self.strong_homotopy_fusion,
            FusionInvariant::Fusion => self.fusion,
        }
    }
}

/// Lower bound from the torsion order: for a ribbon knot the fusion
/// number dominates the torsion order; with a pattern present the
/// cabled torsion bound applies to the cabled knot.
pub fn ord_lower_rule(a: &KnotAssertions) -> PartialLedger {
    let mut out = PartialLedger::new();
    let (Some(cx), true) = (&a.complex, a.is_ribbon) else {
        return out;
    };
    match &a.pattern {
        Some(pattern) if !pattern.is_empty() => {
            let bound = cable_torsion_bound(cx, pattern);
            out.push(Contribution {
                invariant: FusionInvariant::Fusion,
                lower: Some(bound),
                upper: None,
                rule: "ord-lower-cable".into(),
                citation: format!(
                    "with a unit box, Ord_U of the ({}) iterated cable is at least {}; \
                     F >= Ord_U for ribbon knots",
                    pattern.render(),
                    pattern.winding_product()
                ),
            });
        }
        _ => {
            let ord = torsion_order(cx) as u64;
            out.push(Contribution {
                invariant: FusionInvariant::Fusion,
                lower: Some(ord),
                upper: None,
                rule: "ord-lower".into(),
                citation: "F(K) >= Ord_U(K) for a ribbon knot K".into(),
            });
        }
    }
    out
}

/// Upper bounds from the cabling handle construction: cabling a ribbon
/// disk with f bands gives F(K_{p,1}) <= p f, and the disk complement
/// keeps its two-handle count under every (p,1) step, so
/// F_sh(cable) <= f throughout.
pub fn cable_upper_rule(a: &KnotAssertions) -> PartialLedger {
    let mut out = PartialLedger::new();
    let (true, Some(f)) = (a.is_ribbon, a.known_fusion) else {
        return out;
    };
    let steps = a.pattern_steps();
    if steps.is_empty() {
        return out;
    }
    if !a.pattern.as_ref().is_some_and(CablePattern::all_q_one) {
        out.push(Contribution {
            invariant: FusionInvariant::Fusion,
            lower: None,
            upper: None,
            rule: "cable-upper".into(),
            citation: "skipped: pattern has a step with q != 1".into(),
        });
        return out;
    }
    let product: u64 = steps.iter().map(|(p, _)| *p as u64).product();
    out.push(Contribution {
        invariant: FusionInvariant::Fusion,
        lower: None,
        upper: Some(product * f),
        rule: "cable-upper".into(),
        citation: format!("F(K_(p,1)) <= p F(K), iterated: F <= {product} * {f}"),
    });
    out.push(Contribution {
        invariant: FusionInvariant::StrongHomotopyFusion,
        lower: None,
        upper: Some(f),
        rule: "cable-upper-sh".into(),
        citation: format!(
            "each (p,1) step preserves the two-handle count of the disk complement, \
             so F_sh(cable) <= F(K) = {f}"
        ),
    });
    out
}

fn meet(interval: &mut Interval, lower: Option<u64>, upper: Option<u64>) {
    if let Some(lo) = lower {
        interval.lower = interval.lower.max(lo);
    }
    if let Some(up) = upper {
        interval.upper = Some(interval.upper.map_or(up, |u| u.min(up)));
    }
}

/// Intersects the contributed intervals, adds the detection rules,
/// propagates the chain F_h <= F_sh <= F, and reports exact values.
pub fn close_ledger(
    parts: &[PartialLedger],
    a: &KnotAssertions,
) -> Result<FusionLedger, BoundsError> {
    a.validate()?;
    let mut fh = Interval::unbounded();
    let mut fsh = Interval::unbounded();
    let mut ff = Interval::unbounded();
    let mut derivation: Vec<(String, String)> = Vec::new();

    let mut apply = |fh: &mut Interval,
                     fsh: &mut Interval,
                     ff: &mut Interval,
                     derivation: &mut Vec<(String, String)>,
                     c: &Contribution| {
        let row = match c.invariant {
            FusionInvariant::HomotopyFusion => fh,
            FusionInvariant::StrongHomotopyFusion => fsh,
            FusionInvariant::Fusion => ff,
        };
        meet(row, c.lower, c.upper);
        derivation.push((c.rule.clone(), c.citation.clone()));
    };

    for part in parts {
        for c in part {
            apply(&mut fh, &mut fsh, &mut ff, &mut derivation, c);
        }
    }

    let all_q_one = a.pattern.as_ref().map_or(true, CablePattern::all_q_one);

    // The asserted fusion number pins F exactly when no cabling is applied.
    if let (Some(f), true) = (a.known_fusion, a.pattern_steps().is_empty()) {
        meet(&mut ff, Some(f), Some(f));
        derivation.push((
            "asserted-fusion".into(),
            format!("user-asserted fusion number F(K) = {f}"),
        ));
    }

    if let Some(cx) = &a.complex {
        let hat_rank = hat_table(cx).total_rank();
        if hat_rank > 1 {
            // Nontrivial base knot; a cable with p > 1 stays nontrivial.
            meet(&mut fsh, Some(1), None);
            derivation.push((
                "nontrivial-sh".into(),
                "hat homology rank exceeds one, so the knot is not the unknot and \
                 a nontrivial knot has F_sh >= 1"
                    .into(),
            ));
        } else if all_q_one {
            // Hat rank one detects the unknot; its (p,1) cables are unknots.
            for row in [&mut fh, &mut fsh, &mut ff] {
                meet(row, Some(0), Some(0));
            }
            derivation.push((
                "unknot-zero".into(),
                "hat homology rank one detects the unknot; the unknot and its (p,1) \
                 cables bound the trivial disk with zero bands"
                    .into(),
            ));
        }
    }

    // Chain propagation: uppers flow down the chain, lowers flow up.
    if let Some(u) = ff.upper {
        meet(&mut fsh, None, Some(u));
    }
    if let Some(u) = fsh.upper {
        meet(&mut fh, None, Some(u));
    }
    meet(&mut fsh, Some(fh.lower), None);
    meet(&mut ff, Some(fsh.lower), None);
    derivation.push((
        "chain".into(),
        "F_h(K) <= F_sh(K) <= F(K) for every ribbon knot".into(),
    ));

    if a.is_ribbon && a.complex.is_some() && !ff.is_exact() {
        derivation.push((
            "note".into(),
            "torsion order left slack; branched-cover lower bounds are not implemented".into(),
        ));
    }

    for (label, row) in [("F_h", &fh), ("F_sh", &fsh), ("F", &ff)] {
        if let Some(u) = row.upper {
            if row.lower > u {
                return Err(BoundsError::Inconsistent {
                    invariant: label,
                    lower: row.lower,
                    upper: u,
                });
            }
        }
    }

    Ok(FusionLedger {
        homotopy_fusion: fh,
        strong_homotopy_fusion: fsh,
        fusion: ff,
        derivation,
    })
}

/// Evaluates every rule and closes the ledger.
pub fn derive_bounds(a: &KnotAssertions) -> Result<FusionLedger, BoundsError> {
    let parts = vec![ord_lower_rule(a), cable_upper_rule(a)];
    close_ledger(&parts, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::complex::unknot_complex;

    fn assertions(name: &str, fusion: Option<u64>, pattern: Option<&str>) -> KnotAssertions {
        KnotAssertions {
            is_ribbon: true,
            known_fusion: fusion,
            complex: Some(catalog(name).unwrap().complex),
            pattern: pattern.map(|p| CablePattern::parse(p).unwrap()),
        }
    }

    #[test]
    fn kt_with_pattern_five_reproduces_the_theorem() {
        let ledger = derive_bounds(&assertions("11n42", Some(1), Some("5,1"))).unwrap();
        assert_eq!(ledger.fusion, Interval { lower: 5, upper: Some(5) });
        assert_eq!(ledger.strong_homotopy_fusion, Interval { lower: 1, upper: Some(1) });
        assert_eq!(ledger.homotopy_fusion, Interval { lower: 0, upper: Some(1) });
    }

    #[test]
    fn iterated_pattern_multiplies() {
        let ledger = derive_bounds(&assertions("6_1", Some(1), Some("2,1;3,1"))).unwrap();
        assert_eq!(ledger.fusion, Interval { lower: 6, upper: Some(6) });
        assert_eq!(ledger.strong_homotopy_fusion, Interval { lower: 1, upper: Some(1) });
    }

    #[test]
    fn unknot_rows_are_all_zero() {
        let ledger = derive_bounds(&KnotAssertions {
            is_ribbon: true,
            known_fusion: None,
            complex: Some(unknot_complex()),
            pattern: None,
        })
        .unwrap();
        for inv in [
            FusionInvariant::HomotopyFusion,
            FusionInvariant::StrongHomotopyFusion,
            FusionInvariant::Fusion,
        ] {
            assert_eq!(ledger.row(inv), Interval { lower: 0, upper: Some(0) });
        }
    }

    #[test]
    fn no_assertions_gives_vacuous_rows() {
        let ledger = derive_bounds(&KnotAssertions::default()).unwrap();
        assert_eq!(ledger.fusion, Interval { lower: 0, upper: None });
        assert_eq!(ledger.strong_homotopy_fusion.lower, 0);
        // Only the chain rule line appears.
        assert_eq!(ledger.derivation.len(), 1);
    }

    #[test]
    fn ord_lower_without_pattern() {
        let ledger = derive_bounds(&assertions("11n42", None, None)).unwrap();
        assert_eq!(ledger.fusion.lower, 1);
        assert_eq!(ledger.fusion.upper, None);
    }

    #[test]
    fn asserted_fusion_pins_f_without_pattern() {
        let ledger = derive_bounds(&assertions("11n42", Some(1), None)).unwrap();
        assert_eq!(ledger.fusion, Interval { lower: 1, upper: Some(1) });
    }

    #[test]
    fn q_not_one_skips_the_upper_rule() {
        let ledger = derive_bounds(&assertions("11n42", Some(1), Some("5,2"))).unwrap();
        assert_eq!(ledger.fusion.lower, 5);
        assert_eq!(ledger.fusion.upper, None);
        assert!(ledger
            .derivation
            .iter()
            .any(|(rule, cite)| rule == "cable-upper" && cite.contains("skipped")));
    }

    #[test]
    fn fusion_zero_on_nontrivial_knot_is_inconsistent() {
        let err = derive_bounds(&assertions("11n42", Some(0), None)).unwrap_err();
        assert!(matches!(err, BoundsError::Inconsistent { .. }));
    }

    #[test]
    fn fusion_requires_ribbon() {
        let a = KnotAssertions { known_fusion: Some(1), ..Default::default() };
        assert!(matches!(
            derive_bounds(&a),
            Err(BoundsError::FusionWithoutRibbon)
        ));
    }

    #[test]
    fn removing_any_rule_never_tightens() {
        let a = assertions("11n42", Some(1), Some("3,1"));
        let parts = vec![ord_lower_rule(&a), cable_upper_rule(&a)];
        let full = close_ledger(&parts, &a).unwrap();
        for skip in 0..parts.len() {
            let reduced: Vec<_> = parts
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, p)| p.clone())
                .collect();
            let ledger = close_ledger(&reduced, &a).unwrap();
            for inv in [
                FusionInvariant::HomotopyFusion,
                FusionInvariant::StrongHomotopyFusion,
                FusionInvariant::Fusion,
            ] {
                let f = full.row(inv);
                let r = ledger.row(inv);
                assert!(r.lower <= f.lower);
                assert!(match (r.upper, f.upper) {
                    (None, _) => true,
                    (Some(ru), Some(fu)) => ru >= fu,
                    (Some(_), None) => false,
                });
            }
        }
    }

    #[test]
    fn chain_order_always_holds() {
        for (name, fusion, pattern) in [
            ("11n42", Some(1), Some("2,1;5,1")),
            ("6_1", Some(1), None),
            ("4_1", None, Some("3,1")),
        ] {
            let a = KnotAssertions {
                is_ribbon: true,
                known_fusion: fusion,
                complex: Some(catalog(name).unwrap().complex),
                pattern: pattern.map(|p| CablePattern::parse(p).unwrap()),
            };
            let ledger = derive_bounds(&a).unwrap();
            assert!(ledger.homotopy_fusion.lower <= ledger.strong_homotopy_fusion.lower);
            assert!(ledger.strong_homotopy_fusion.lower <= ledger.fusion.lower);
            let up = |i: Interval| i.upper.unwrap_or(u64::MAX);
            assert!(up(ledger.homotopy_fusion) <= up(ledger.strong_homotopy_fusion));
            assert!(up(ledger.strong_homotopy_fusion) <= up(ledger.fusion));
        }
    }
}
