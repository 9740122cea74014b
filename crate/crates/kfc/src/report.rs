//! Plain-text report rendering shared by the command line front end.

use crate::bounds::FusionLedger;
use crate::complex::CfkComplex;
use crate::homology::{HatTable, UModuleSummary};
use crate::split::BoxDecomposition;
use std::fmt::Write as _;

/// Free rank, sorted torsion exponents, the torsion order, and the hat
/// table as an aligned grid.
pub fn homology_report(summary: &UModuleSummary, hat: &HatTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "free rank: {}", summary.free_rank);
    let exps = summary
        .torsion_exponents
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    let _ = writeln!(out, "torsion exponents: [{exps}]");
    let _ = writeln!(out, "Ord_U: {}", summary.torsion_order());
    let _ = writeln!(out, "total hat rank: {}", hat.total_rank());
    out.push_str(&hat_grid(hat));
    out
}

/// The hat table as a grid: Alexander gradings across, Maslov down.
pub fn hat_grid(hat: &HatTable) -> String {
    if hat.ranks.is_empty() {
        return "hat table: empty\n".to_string();
    }
    let a_min = hat.ranks.keys().map(|k| k.0).min().unwrap();
    let a_max = hat.ranks.keys().map(|k| k.0).max().unwrap();
    let m_min = hat.ranks.keys().map(|k| k.1).min().unwrap();
    let m_max = hat.ranks.keys().map(|k| k.1).max().unwrap();

    let mut header = vec!["".to_string()];
    for a in a_min..=a_max {
        header.push(format!("A={a}"));
    }
    let mut rows = vec![header];
    for m in (m_min..=m_max).rev() {
        let mut row = vec![format!("M={m}")];
        for a in a_min..=a_max {
            row.push(match hat.ranks.get(&(a, m)) {
                Some(r) => r.to_string(),
                None => ".".to_string(),
            });
        }
        rows.push(row);
    }
    let cols = rows[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::from("hat table:\n");
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            let _ = write!(line, "{:>width$}  ", cell, width = widths[c]);
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
    out
}

/// Three ledger rows followed by the derivation trace.
pub fn ledger_report(ledger: &FusionLedger) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "F_h : {}", ledger.homotopy_fusion.render());
    let _ = writeln!(out, "F_sh: {}", ledger.strong_homotopy_fusion.render());
    let _ = writeln!(out, "F   : {}", ledger.fusion.render());
    let _ = writeln!(out, "derivation:");
    for (rule, citation) in &ledger.derivation {
        let _ = writeln!(out, "  {rule}: {citation}");
    }
    out
}

/// The free generator, each box with its members and center, and the
/// number of recorded basis changes.
pub fn split_report(d: &BoxDecomposition) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "free generator: {}", d.free_generator);
    let _ = writeln!(out, "boxes: {}", d.boxes.len());
    for (i, b) in d.boxes.iter().enumerate() {
        let _ = writeln!(
            out,
            "  box {}: a={} b={} c={} d={} center A={} M={}",
            i + 1,
            b.a,
            b.b,
            b.c,
            b.d,
            b.center_alexander,
            b.center_maslov
        );
    }
    let _ = writeln!(out, "basis changes applied: {}", d.applied_changes.len());
    out
}

/// One line per unit box found in the current basis.
pub fn boxes_report(c: &CfkComplex) -> String {
    let boxes = c.find_unit_boxes();
    let mut out = String::new();
    let _ = writeln!(out, "unit boxes: {}", boxes.len());
    for b in &boxes {
        let _ = writeln!(
            out,
            "  a={} b={} c={} d={} center A={} M={}",
            b.a, b.b, b.c, b.d, b.center_alexander, b.center_maslov
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::box_sum_complex;
    use crate::homology::{hat_table, reduce_mod_v, u_module_homology};

    #[test]
    fn homology_report_shape() {
        let cx = box_sum_complex("4_1", &[(0, 0, 1)]);
        let report = homology_report(&u_module_homology(&reduce_mod_v(&cx)), &hat_table(&cx));
        assert!(report.contains("free rank: 1"));
        assert!(report.contains("torsion exponents: [1, 1]"));
        assert!(report.contains("Ord_U: 1"));
        assert!(report.contains("total hat rank: 5"));
        assert!(report.contains("A=0"));
        assert!(report.contains("M=-1"));
    }

    #[test]
    fn grid_is_aligned() {
        let cx = box_sum_complex("4_1", &[(0, 0, 1)]);
        let grid = hat_grid(&hat_table(&cx));
        let lines: Vec<&str> = grid.lines().skip(1).collect();
        assert_eq!(lines.len(), 4);
    }
}
