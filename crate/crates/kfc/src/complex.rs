//! Free bigraded chain complexes over F2[U,V].
//!
//! A complex stores an ordered generator list and a differential given
//! per generator as a [`Chain`]. Generators carry the bigrading
//! `(gr_u, gr_v)`; the Maslov grading is `gr_u`, the Alexander grading is
//! `(gr_u - gr_v)/2`. U acts by `(-2, 0)`, V by `(0, -2)`, and the
//! differential shifts the bigrading by `(-1, -1)`, so U lowers the
//! Alexander grading by one, V raises it by one, and the differential
//! preserves it.
//!
//! Chains are keyed by generator position rather than name; the name
//! appears only at the API boundary (files, basis-change records, error
//! messages).

use crate::poly::{poly_add, BivariatePoly, Monomial, PolyError};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

pub type GenId = String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("unknown generator id `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator id `{0}`")]
    DuplicateGenerator(String),
    #[error("basis change target `{target}` appears in its own addend")]
    TargetInAddend { target: String },
    #[error(
        "basis change on `{target}` is not grading-preserving: \
         term {monomial}.{gen} sits in bigrading ({got_u}, {got_v}), expected ({want_u}, {want_v})"
    )]
    GradingMismatch {
        target: String,
        monomial: String,
        gen: String,
        got_u: i64,
        got_v: i64,
        want_u: i64,
        want_v: i64,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A generator with its bigrading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub id: GenId,
    pub gr_u: i32,
    pub gr_v: i32,
}

impl Generator {
    pub fn new(id: impl Into<GenId>, gr_u: i32, gr_v: i32) -> Self {
        Generator { id: id.into(), gr_u, gr_v }
    }

    /// Maslov grading.
    pub fn maslov(&self) -> i32 {
        self.gr_u
    }

    /// Alexander grading `(gr_u - gr_v)/2`; meaningful when the parity
    /// invariant `gr_u = gr_v (mod 2)` holds.
    pub fn alexander(&self) -> i32 {
        (self.gr_u - self.gr_v).div_euclid(2)
    }

    /// Convenience constructor from (Alexander, Maslov).
    pub fn at(id: impl Into<GenId>, alexander: i32, maslov: i32) -> Self {
        Generator { id: id.into(), gr_u: maslov, gr_v: maslov - 2 * alexander }
    }
}

/// A formal F2[U,V]-combination of generators, keyed by generator index.
///
/// Entries never map to the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Chain {
    entries: BTreeMap<usize, BivariatePoly>,
}

impl Chain {
    pub fn zero() -> Self {
        Chain::default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coefficient(&self, gen: usize) -> BivariatePoly {
        self.entries.get(&gen).cloned().unwrap_or_default()
    }

    pub fn get(&self, gen: usize) -> Option<&BivariatePoly> {
        self.entries.get(&gen)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BivariatePoly)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, gen: usize, poly: BivariatePoly) {
        if poly.is_zero() {
            self.entries.remove(&gen);
        } else {
            self.entries.insert(gen, poly);
        }
    }

    pub fn single(gen: usize, poly: BivariatePoly) -> Self {
        let mut c = Chain::zero();
        c.insert(gen, poly);
        c
    }

    /// Adds `poly * gen` into the chain with mod-2 cancellation.
    pub fn add_term(&mut self, gen: usize, poly: &BivariatePoly) {
        let sum = poly_add(&self.coefficient(gen), poly);
        self.insert(gen, sum);
    }

    pub fn add(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        for (g, p) in other.iter() {
            out.add_term(g, p);
        }
        out
    }
}

/// `target + coeff * source`, with zero entries dropped.
pub fn chain_scale_add(target: &Chain, coeff: Monomial, source: &Chain) -> Result<Chain, PolyError> {
    let mut out = target.clone();
    for (g, p) in source.iter() {
        out.add_term(g, &p.mul_mono(coeff)?);
    }
    Ok(out)
}

/// A recorded change of basis `target -> target + addend`.
///
/// The addend is stored by generator id so that records survive
/// serialization and can be replayed on the original complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisChange {
    pub target: GenId,
    pub addend: Vec<(Monomial, GenId)>,
}

/// One invariant violation found by [`CfkComplex::validate`].
///
/// Violations are data, not failures: an invalid complex is still a
/// value that can be inspected and reported on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `gr_u` and `gr_v` differ in parity, so the Alexander grading is
    /// not an integer.
    GradingParity { gen: GenId },
    /// A differential term with unit coefficient (not in the image of U or V).
    NotReduced { source: GenId, target: GenId },
    /// A term whose monomial does not shift the bigrading by (-1, -1).
    Inhomogeneous { source: GenId, target: GenId, monomial: String },
    /// The composite differential does not vanish on this generator.
    DSquareNonzero { source: GenId, residual: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::GradingParity { gen } => {
                write!(f, "grading parity violation at {gen}: gr_u and gr_v differ mod 2")
            }
            Violation::NotReduced { source, target } => write!(
                f,
                "reduced violation at {source}: term {target} of d {source} has no U or V factor"
            ),
            Violation::Inhomogeneous { source, target, monomial } => write!(
                f,
                "homogeneity violation at {source}: term {monomial}.{target} does not shift the bigrading by (-1, -1)"
            ),
            Violation::DSquareNonzero { source, residual } => {
                write!(f, "d-squared violation at {source}: residual {residual}")
            }
        }
    }
}

/// A unit box summand: four generators with
/// `d a = U.b + V.c`, `d b = V.d`, `d c = U.d`, `d d = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitBox {
    pub a: GenId,
    pub b: GenId,
    pub c: GenId,
    pub d: GenId,
    pub center_alexander: i32,
    pub center_maslov: i32,
}

impl UnitBox {
    pub fn center(&self) -> (i32, i32) {
        (self.center_alexander, self.center_maslov)
    }
}

/// A free bigraded chain complex over F2[U,V].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfkComplex {
    name: String,
    generators: Vec<Generator>,
    index: BTreeMap<GenId, usize>,
    diff: Vec<Chain>,
}

impl CfkComplex {
    pub fn new(name: impl Into<String>, generators: Vec<Generator>) -> Result<Self, ComplexError> {
        let mut index = BTreeMap::new();
        for (i, g) in generators.iter().enumerate() {
            if index.insert(g.id.clone(), i).is_some() {
                return Err(ComplexError::DuplicateGenerator(g.id.clone()));
            }
        }
        let diff = vec![Chain::zero(); generators.len()];
        Ok(CfkComplex { name: name.into(), generators, index, diff })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator(&self, idx: usize) -> &Generator {
        &self.generators[idx]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn differential(&self, idx: usize) -> &Chain {
        &self.diff[idx]
    }

    pub fn differentials(&self) -> impl Iterator<Item = (usize, &Chain)> {
        self.diff.iter().enumerate()
    }

    /// Sets `d gen`, replacing any previous value.
    pub fn set_differential(&mut self, gen: &str, chain: Chain) -> Result<(), ComplexError> {
        let idx = self
            .index_of(gen)
            .ok_or_else(|| ComplexError::UnknownGenerator(gen.to_string()))?;
        self.diff[idx] = chain;
        Ok(())
    }

    /// Builds a chain from `(monomial, id)` pairs.
    pub fn chain_from_terms(
        &self,
        terms: &[(Monomial, &str)],
    ) -> Result<Chain, ComplexError> {
        let mut chain = Chain::zero();
        for (m, id) in terms {
            let idx = self
                .index_of(id)
                .ok_or_else(|| ComplexError::UnknownGenerator(id.to_string()))?;
            chain.add_term(idx, &BivariatePoly::monomial(*m));
        }
        Ok(chain)
    }

    /// Applies the differential to a chain: `d(sum c_i x_i) = sum c_i d(x_i)`.
    pub fn boundary_of(&self, chain: &Chain) -> Result<Chain, PolyError> {
        let mut out = Chain::zero();
        for (g, poly) in chain.iter() {
            for m in poly.terms() {
                for (t, q) in self.diff[g].iter() {
                    out.add_term(t, &q.mul_mono(*m)?);
                }
            }
        }
        Ok(out)
    }

    /// Bigrading of the term `m * gen`.
    pub fn term_grading(&self, m: Monomial, gen: usize) -> (i64, i64) {
        let g = &self.generators[gen];
        (g.gr_u as i64 - 2 * m.u_exp as i64, g.gr_v as i64 - 2 * m.v_exp as i64)
    }

    /// Checks every complex invariant and reports each violation.
    ///
    /// The report is empty exactly when the complex is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for g in &self.generators {
            if (g.gr_u - g.gr_v).rem_euclid(2) != 0 {
                out.push(Violation::GradingParity { gen: g.id.clone() });
            }
        }
        for (src, chain) in self.diff.iter().enumerate() {
            let src_id = &self.generators[src].id;
            let want = (
                self.generators[src].gr_u as i64 - 1,
                self.generators[src].gr_v as i64 - 1,
            );
            for (tgt, poly) in chain.iter() {
                for m in poly.terms() {
                    if m.is_one() {
                        out.push(Violation::NotReduced {
                            source: src_id.clone(),
                            target: self.generators[tgt].id.clone(),
                        });
                    }
                    if self.term_grading(*m, tgt) != want {
                        out.push(Violation::Inhomogeneous {
                            source: src_id.clone(),
                            target: self.generators[tgt].id.clone(),
                            monomial: m.to_string(),
                        });
                    }
                }
            }
        }
        for (src, chain) in self.diff.iter().enumerate() {
            match self.boundary_of(chain) {
                Ok(dd) if dd.is_zero() => {}
                Ok(dd) => {
                    out.push(Violation::DSquareNonzero {
                        source: self.generators[src].id.clone(),
                        residual: self.render_chain(&dd),
                    });
                }
                Err(_) => out.push(Violation::DSquareNonzero {
                    source: self.generators[src].id.clone(),
                    residual: "exponent overflow while composing".into(),
                }),
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Renders a chain as `U.b + V.c` in canonical term order.
    pub fn render_chain(&self, chain: &Chain) -> String {
        let mut parts = Vec::new();
        for (g, poly) in chain.iter() {
            for m in poly.terms() {
                parts.push((g, *m));
            }
        }
        parts.sort_by_key(|(g, m)| (*g, m.u_exp, m.v_exp));
        if parts.is_empty() {
            return "0".to_string();
        }
        parts
            .iter()
            .map(|(g, m)| {
                let id = &self.generators[*g].id;
                if m.is_one() {
                    id.clone()
                } else {
                    format!("{m}.{id}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn check_basis_change(&self, target: usize, addend: &Chain) -> Result<(), ComplexError> {
        let tgt = &self.generators[target];
        let want = (tgt.gr_u as i64, tgt.gr_v as i64);
        for (g, poly) in addend.iter() {
            if g == target {
                return Err(ComplexError::TargetInAddend { target: tgt.id.clone() });
            }
            for m in poly.terms() {
                let got = self.term_grading(*m, g);
                if got != want {
                    return Err(ComplexError::GradingMismatch {
                        target: tgt.id.clone(),
                        monomial: m.to_string(),
                        gen: self.generators[g].id.clone(),
                        got_u: got.0,
                        got_v: got.1,
                        want_u: want.0,
                        want_v: want.1,
                    });
                }
            }
        }
        Ok(())
    }

    /// In-place basis change by generator index. Replaces basis element
    /// `t` with `t' = t + addend` and rewrites the differential on both
    /// the source side (`d t' = d t + d addend`) and the target side
    /// (chains keep their t-coordinate, which now names `t'`, and gain
    /// `coeff * addend` on the other coordinates).
    pub(crate) fn apply_change_indexed(
        &mut self,
        target: usize,
        addend: &Chain,
    ) -> Result<(), ComplexError> {
        self.check_basis_change(target, addend)?;
        let d_addend = self.boundary_of(addend)?;
        self.diff[target] = self.diff[target].add(&d_addend);
        for src in 0..self.diff.len() {
            let coeff = self.diff[src].coefficient(target);
            if coeff.is_zero() {
                continue;
            }
            let mut updated = self.diff[src].clone();
            for m in coeff.terms() {
                for (g, p) in addend.iter() {
                    updated.add_term(g, &p.mul_mono(*m)?);
                }
            }
            self.diff[src] = updated;
        }
        Ok(())
    }

    pub(crate) fn change_to_indexed(&self, change: &BasisChange) -> Result<(usize, Chain), ComplexError> {
        let target = self
            .index_of(&change.target)
            .ok_or_else(|| ComplexError::UnknownGenerator(change.target.clone()))?;
        let mut addend = Chain::zero();
        for (m, id) in &change.addend {
            let idx = self
                .index_of(id)
                .ok_or_else(|| ComplexError::UnknownGenerator(id.clone()))?;
            addend.add_term(idx, &BivariatePoly::monomial(*m));
        }
        Ok((target, addend))
    }

    pub(crate) fn change_from_indexed(&self, target: usize, addend: &Chain) -> BasisChange {
        let mut terms = Vec::new();
        for (g, poly) in addend.iter() {
            for m in poly.terms() {
                terms.push((*m, self.generators[g].id.clone()));
            }
        }
        BasisChange { target: self.generators[target].id.clone(), addend: terms }
    }

    /// Returns the complex expressed in the new basis.
    pub fn apply_basis_change(&self, change: &BasisChange) -> Result<CfkComplex, ComplexError> {
        let (target, addend) = self.change_to_indexed(change)?;
        let mut out = self.clone();
        out.apply_change_indexed(target, &addend)?;
        Ok(out)
    }

    /// Replays a recorded change list in order.
    pub fn apply_basis_changes(&self, changes: &[BasisChange]) -> Result<CfkComplex, ComplexError> {
        let mut out = self.clone();
        for ch in changes {
            let (target, addend) = out.change_to_indexed(ch)?;
            out.apply_change_indexed(target, &addend)?;
        }
        Ok(out)
    }

    /// Block-diagonal direct sum. Colliding generator ids on the right
    /// summand are renamed by appending a numeric suffix.
    pub fn direct_sum(&self, other: &CfkComplex) -> CfkComplex {
        let mut generators = self.generators.clone();
        let mut index = self.index.clone();
        let mut taken: BTreeMap<GenId, usize> = index.clone();
        let offset = generators.len();
        for g in &other.generators {
            let id = if taken.contains_key(&g.id) {
                let mut n = 2usize;
                loop {
                    let candidate = format!("{}_{n}", g.id);
                    if !taken.contains_key(&candidate) {
                        break candidate;
                    }
                    n += 1;
                }
            } else {
                g.id.clone()
            };
            taken.insert(id.clone(), generators.len());
            index.insert(id.clone(), generators.len());
            generators.push(Generator { id, gr_u: g.gr_u, gr_v: g.gr_v });
        }
        let mut diff = self.diff.clone();
        for chain in &other.diff {
            let mut shifted = Chain::zero();
            for (g, p) in chain.iter() {
                shifted.insert(g + offset, p.clone());
            }
            diff.push(shifted);
        }
        CfkComplex { name: self.name.clone(), generators, index, diff }
    }

    /// Extremal Alexander gradings over the generators; `None` for the
    /// empty complex.
    pub fn alexander_span(&self) -> Option<(i32, i32)> {
        let mut it = self.generators.iter().map(Generator::alexander);
        let first = it.next()?;
        let mut lo = first;
        let mut hi = first;
        for a in it {
            lo = lo.min(a);
            hi = hi.max(a);
        }
        Some((lo, hi))
    }

    /// All quadruples satisfying the unit-box summand condition in the
    /// current basis. Basis-dependent by design: a change of basis can
    /// create or destroy literal boxes.
    pub fn find_unit_boxes(&self) -> Vec<UnitBox> {
        let mut boxes = Vec::new();
        let u1 = Monomial::u(1);
        let v1 = Monomial::v(1);
        for a in 0..self.len() {
            let da = &self.diff[a];
            if da.len() != 2 {
                continue;
            }
            let mut b = None;
            let mut c = None;
            for (g, poly) in da.iter() {
                match poly.as_monomial() {
                    Some(m) if m == u1 => b = Some(g),
                    Some(m) if m == v1 => c = Some(g),
                    _ => {}
                }
            }
            let (Some(b), Some(c)) = (b, c) else { continue };
            let db = &self.diff[b];
            let dc = &self.diff[c];
            let (Some((bd, bm)), Some((cd, cm))) = (single_term(db), single_term(dc)) else {
                continue;
            };
            if bm != v1 || cm != u1 || bd != cd {
                continue;
            }
            let d = bd;
            if !self.diff[d].is_zero() {
                continue;
            }
            let members = [a, b, c, d];
            if members.iter().collect::<std::collections::BTreeSet<_>>().len() != 4 {
                continue;
            }
            // Summand condition: no outside differential touches the quadruple.
            let outside_clean = (0..self.len()).all(|g| {
                members.contains(&g)
                    || members.iter().all(|m| self.diff[g].coefficient(*m).is_zero())
            });
            if !outside_clean {
                continue;
            }
            // Grading pattern around the center (a and d at the center,
            // b one step up, c one step down).
            let ga = &self.generators[a];
            let gd = &self.generators[d];
            let gb = &self.generators[b];
            let gc = &self.generators[c];
            let center = (ga.alexander(), ga.maslov());
            if (gd.alexander(), gd.maslov()) != center
                || (gb.alexander(), gb.maslov()) != (center.0 + 1, center.1 + 1)
                || (gc.alexander(), gc.maslov()) != (center.0 - 1, center.1 - 1)
            {
                continue;
            }
            boxes.push(UnitBox {
                a: ga.id.clone(),
                b: gb.id.clone(),
                c: gc.id.clone(),
                d: gd.id.clone(),
                center_alexander: center.0,
                center_maslov: center.1,
            });
        }
        boxes
    }
}

fn single_term(chain: &Chain) -> Option<(usize, Monomial)> {
    let mut it = chain.iter();
    let (g, poly) = it.next()?;
    if it.next().is_some() {
        return None;
    }
    poly.as_monomial().map(|m| (g, m))
}

/// The one-generator complex of the unknot: a single generator at the
/// origin with zero differential.
pub fn unknot_complex() -> CfkComplex {
    CfkComplex::new("unknot", vec![Generator::at("x", 0, 0)]).unwrap()
}

/// A four-generator `U^k` box centered at `(alexander, maslov)` with
/// `d a = Uk.b + V.c`, `d b = V.d`, `d c = Uk.d`. Exponent 1 is the unit box.
pub fn power_box_complex(
    ids: [&str; 4],
    alexander: i32,
    maslov: i32,
    exponent: u32,
) -> CfkComplex {
    assert!(exponent >= 1, "box exponent must be positive");
    let [a, b, c, d] = ids;
    let k = exponent as i32;
    let gens = vec![
        Generator { id: a.into(), gr_u: maslov, gr_v: maslov - 2 * alexander },
        Generator {
            id: b.into(),
            gr_u: maslov - 1 + 2 * k,
            gr_v: maslov - 2 * alexander - 1,
        },
        Generator { id: c.into(), gr_u: maslov - 1, gr_v: maslov - 2 * alexander + 1 },
        Generator {
            id: d.into(),
            gr_u: maslov - 2 + 2 * k,
            gr_v: maslov - 2 * alexander,
        },
    ];
    let mut cx = CfkComplex::new("box", gens).unwrap();
    let uk = Monomial::u(exponent);
    let v1 = Monomial::v(1);
    let chain_a = cx.chain_from_terms(&[(uk, b), (v1, c)]).unwrap();
    let chain_b = cx.chain_from_terms(&[(v1, d)]).unwrap();
    let chain_c = cx.chain_from_terms(&[(uk, d)]).unwrap();
    cx.set_differential(a, chain_a).unwrap();
    cx.set_differential(b, chain_b).unwrap();
    cx.set_differential(c, chain_c).unwrap();
    cx
}

/// A unit box (exponent 1) centered at `(alexander, maslov)`.
pub fn unit_box_complex(ids: [&str; 4], alexander: i32, maslov: i32) -> CfkComplex {
    power_box_complex(ids, alexander, maslov, 1)
}

/// Free generator `x` at the origin plus the listed `(alexander, maslov,
/// exponent)` boxes, with generators named `a1..d1`, `a2..d2`, ...
pub fn box_sum_complex(name: &str, boxes: &[(i32, i32, u32)]) -> CfkComplex {
    let mut cx = unknot_complex();
    for (i, (alex, maslov, exp)) in boxes.iter().enumerate() {
        let n = i + 1;
        let ids = [format!("a{n}"), format!("b{n}"), format!("c{n}"), format!("d{n}")];
        let box_cx = power_box_complex(
            [&ids[0], &ids[1], &ids[2], &ids[3]],
            *alex,
            *maslov,
            *exp,
        );
        cx = cx.direct_sum(&box_cx);
    }
    cx.renamed(name)
}

/// The three-generator staircase with `d b = U.a + V.c` (the trefoil
/// shape): torsion order one but no unit box, so order-one splitting
/// fails on it.
pub fn staircase_trefoil_complex() -> CfkComplex {
    let gens = vec![
        Generator::at("a", 1, 0),
        Generator::at("b", 0, -1),
        Generator::at("c", -1, -2),
    ];
    let mut cx = CfkComplex::new("trefoil", gens).unwrap();
    let chain = cx
        .chain_from_terms(&[(Monomial::u(1), "a"), (Monomial::v(1), "c")])
        .unwrap();
    cx.set_differential("b", chain).unwrap();
    cx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_box_is_valid() {
        let cx = unit_box_complex(["a", "b", "c", "d"], 0, 0);
        assert!(cx.validate().is_empty());
        assert_eq!(cx.generator(1).alexander(), 1);
        assert_eq!(cx.generator(1).maslov(), 1);
        assert_eq!(cx.generator(2).alexander(), -1);
    }

    #[test]
    fn validate_reports_reduced_violation() {
        let gens = vec![Generator::at("a", 0, 0), Generator::at("b", 0, -1)];
        let mut cx = CfkComplex::new("bad", gens).unwrap();
        let chain = cx.chain_from_terms(&[(Monomial::ONE, "b")]).unwrap();
        cx.set_differential("a", chain).unwrap();
        let report = cx.validate();
        assert!(report
            .iter()
            .any(|v| matches!(v, Violation::NotReduced { source, target } if source == "a" && target == "b")));
    }

    #[test]
    fn validate_reports_d_squared_violation() {
        // d a = U.b, d b = U.c composes to U^2.c.
        let gens = vec![
            Generator::at("a", 2, 0),
            Generator::at("b", 1, -1),
            Generator::at("c", 0, -2),
        ];
        let mut cx = CfkComplex::new("bad", gens).unwrap();
        let da = cx.chain_from_terms(&[(Monomial::u(1), "b")]).unwrap();
        let db = cx.chain_from_terms(&[(Monomial::u(1), "c")]).unwrap();
        cx.set_differential("a", da).unwrap();
        cx.set_differential("b", db).unwrap();
        let report = cx.validate();
        assert!(report
            .iter()
            .any(|v| matches!(v, Violation::DSquareNonzero { source, .. } if source == "a")));
    }

    #[test]
    fn identity_basis_change_is_identity() {
        let cx = unit_box_complex(["a", "b", "c", "d"], 0, 0);
        let change = BasisChange { target: "a".into(), addend: vec![] };
        assert_eq!(cx.apply_basis_change(&change).unwrap(), cx);
    }

    #[test]
    fn basis_change_is_an_involution() {
        let left = unit_box_complex(["a", "b", "c", "d"], 0, 0);
        let right = unit_box_complex(["a2", "b2", "c2", "d2"], 0, 0);
        let cx = left.direct_sum(&right);
        let change = BasisChange {
            target: "a".into(),
            addend: vec![(Monomial::ONE, "a2".into())],
        };
        let once = cx.apply_basis_change(&change).unwrap();
        assert_ne!(once, cx);
        assert!(once.validate().is_empty());
        let twice = once.apply_basis_change(&change).unwrap();
        assert_eq!(twice, cx);
    }

    #[test]
    fn basis_change_rejects_grading_mismatch() {
        let cx = unit_box_complex(["a", "b", "c", "d"], 0, 0);
        let change = BasisChange {
            target: "a".into(),
            addend: vec![(Monomial::ONE, "b".into())],
        };
        assert!(matches!(
            cx.apply_basis_change(&change),
            Err(ComplexError::GradingMismatch { .. })
        ));
    }

    #[test]
    fn direct_sum_renames_collisions() {
        let b1 = unit_box_complex(["a", "b", "c", "d"], 0, 0);
        let b2 = unit_box_complex(["a", "b", "c", "d"], 0, 0);
        let sum = b1.direct_sum(&b2);
        assert_eq!(sum.len(), 8);
        assert!(sum.index_of("a_2").is_some());
        assert!(sum.validate().is_empty());
        assert_eq!(sum.find_unit_boxes().len(), 2);
    }

    #[test]
    fn direct_sum_with_empty_is_identity() {
        let cx = unit_box_complex(["a", "b", "c", "d"], 0, 0);
        let empty = CfkComplex::new("empty", vec![]).unwrap();
        assert_eq!(cx.direct_sum(&empty), cx);
    }

    #[test]
    fn alexander_span_of_box_sum() {
        assert_eq!(unknot_complex().alexander_span(), Some((0, 0)));
        let cx = box_sum_complex("two", &[(1, 1, 1), (-1, -1, 1)]);
        assert_eq!(cx.alexander_span(), Some((-2, 2)));
    }

    #[test]
    fn find_unit_boxes_sees_assembled_boxes() {
        let cx = box_sum_complex("three", &[(0, 0, 1), (1, 0, 1), (0, 0, 1)]);
        let boxes = cx.find_unit_boxes();
        assert_eq!(boxes.len(), 3);
        let mut centers: Vec<_> = boxes.iter().map(UnitBox::center).collect();
        centers.sort();
        assert_eq!(centers, vec![(0, 0), (0, 0), (1, 0)]);
    }

    #[test]
    fn power_box_is_not_a_unit_box() {
        let cx = power_box_complex(["a", "b", "c", "d"], 0, 0, 2);
        assert!(cx.validate().is_empty());
        assert!(cx.find_unit_boxes().is_empty());
    }

    #[test]
    fn trefoil_staircase_is_valid() {
        let cx = staircase_trefoil_complex();
        assert!(cx.validate().is_empty());
        assert_eq!(cx.alexander_span(), Some((-1, 1)));
    }
}
