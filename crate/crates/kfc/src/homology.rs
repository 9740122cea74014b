//! Homology of the specializations V=0 (a module over F2[U]) and
//! U=V=0, plus the torsion order.
//!
//! After setting V=0 the complex is a free differential module over the
//! univariate polynomial ring. On a homogeneous complex every matrix
//! entry of the differential is a single monomial U^k, because the
//! exponent is pinned by the gradings of its endpoints. The module then
//! splits into free generators and two-generator pairs `d x = U^k y`:
//! repeatedly pick a nonzero entry of globally minimal exponent, clear
//! its row and column (the minimal entry divides everything, so every
//! clearing step is a legal basis change), and split the pair off. A
//! pair with k >= 1 contributes an F[U]/U^k torsion summand carried by
//! its target generator; leftover generators contribute free summands.

use crate::complex::{CfkComplex, Generator};
use crate::poly::Specialization;
use serde::Serialize;
use std::collections::BTreeMap;

/// Which variable survives a specialization to one variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UniVariable {
    U,
    V,
}

/// A univariate coefficient: a set of exponents of the surviving
/// variable (mod-2 coefficients, so set semantics).
pub type UniPoly = Vec<u32>;

/// A chain complex over F2[U] (or F2[V]), produced by killing one
/// variable of a bigraded complex.
#[derive(Debug, Clone)]
pub struct UnivariateComplex {
    pub variable: UniVariable,
    pub generators: Vec<Generator>,
    /// diff[source] maps target index to the exponent set of its coefficient.
    pub diff: Vec<BTreeMap<usize, UniPoly>>,
}

impl UnivariateComplex {
    /// Alexander grading of the basis element `U^j g` (the surviving
    /// variable lowers A for U and raises it for V).
    pub fn shifted_alexander(&self, gen: usize, power: u32) -> i64 {
        let a = self.generators[gen].alexander() as i64;
        match self.variable {
            UniVariable::U => a - power as i64,
            UniVariable::V => a + power as i64,
        }
    }
}

fn specialization_for(variable: UniVariable) -> Specialization {
    match variable {
        UniVariable::U => Specialization::SetVZero,
        UniVariable::V => Specialization::SetUZero,
    }
}

fn reduce_mod(c: &CfkComplex, variable: UniVariable) -> UnivariateComplex {
    let spec = specialization_for(variable);
    let mut diff = Vec::with_capacity(c.len());
    for (_, chain) in c.differentials() {
        let mut row: BTreeMap<usize, UniPoly> = BTreeMap::new();
        for (tgt, poly) in chain.iter() {
            let kept = poly.specialize(spec);
            if kept.is_zero() {
                continue;
            }
            let exps: UniPoly = kept
                .terms()
                .iter()
                .map(|m| match variable {
                    UniVariable::U => m.u_exp,
                    UniVariable::V => m.v_exp,
                })
                .collect();
            row.insert(tgt, exps);
        }
        diff.push(row);
    }
    UnivariateComplex { variable, generators: c.generators().to_vec(), diff }
}

/// Same generators, V-terms dropped, coefficients univariate in U.
pub fn reduce_mod_v(c: &CfkComplex) -> UnivariateComplex {
    reduce_mod(c, UniVariable::U)
}

/// Same generators, U-terms dropped, coefficients univariate in V.
pub fn reduce_mod_u(c: &CfkComplex) -> UnivariateComplex {
    reduce_mod(c, UniVariable::V)
}

/// One torsion summand F[U]/U^k, attributed to the grading of the
/// generator that survives into homology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionPart {
    pub exponent: u32,
    pub alexander: i32,
    pub maslov: i32,
    /// Grading of the partner generator consumed by the pair (its
    /// homology shadow lives arbitrarily deep in truncations).
    pub partner_alexander: i32,
    pub partner_maslov: i32,
}

/// Full decomposition of the univariate homology into free and torsion
/// parts, with grading attributions.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct UniModuleParts {
    pub free: Vec<(i32, i32)>,
    pub torsion: Vec<TorsionPart>,
}

/// Free rank plus the multiset of torsion exponents of a finitely
/// generated module over the univariate polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UModuleSummary {
    pub free_rank: u32,
    /// Sorted multiset of positive torsion exponents.
    pub torsion_exponents: Vec<u32>,
    /// (Alexander, Maslov) -> number of summands attributed there.
    pub graded_table: BTreeMap<(i32, i32), u32>,
}

impl UModuleSummary {
    /// Max torsion exponent; 0 for a torsion-free module.
    pub fn torsion_order(&self) -> u32 {
        self.torsion_exponents.last().copied().unwrap_or(0)
    }
}

impl From<&UniModuleParts> for UModuleSummary {
    fn from(parts: &UniModuleParts) -> Self {
        let mut torsion_exponents: Vec<u32> =
            parts.torsion.iter().map(|t| t.exponent).collect();
        torsion_exponents.sort_unstable();
        let mut graded_table = BTreeMap::new();
        for &(a, m) in &parts.free {
            *graded_table.entry((a, m)).or_insert(0) += 1;
        }
        for t in &parts.torsion {
            *graded_table.entry((t.alexander, t.maslov)).or_insert(0) += 1;
        }
        UModuleSummary {
            free_rank: parts.free.len() as u32,
            torsion_exponents,
            graded_table,
        }
    }
}

/// Decomposes the homology of a univariate complex with monomial
/// entries into free and torsion parts.
///
/// Precondition: the complex comes from a valid homogeneous bigraded
/// complex, so every nonzero coefficient is a single monomial and the
/// composite differential vanishes.
pub fn u_module_parts(uc: &UnivariateComplex) -> UniModuleParts {
    let n = uc.generators.len();
    // diff[src][tgt] = exponent of the monomial entry.
    let mut diff: Vec<BTreeMap<usize, u32>> = Vec::with_capacity(n);
    for row in &uc.diff {
        let mut out = BTreeMap::new();
        for (tgt, exps) in row {
            match exps.as_slice() {
                [] => {}
                [e] => {
                    out.insert(*tgt, *e);
                }
                _ => panic!(
                    "univariate differential entry is not a monomial; \
                     the source complex is not homogeneous"
                ),
            }
        }
        diff.push(out);
    }

    let mut alive: Vec<bool> = vec![true; n];
    let mut parts = UniModuleParts::default();

    loop {
        // Globally minimal exponent; ties by (target, source) index.
        let mut pivot: Option<(u32, usize, usize)> = None;
        for src in 0..n {
            if !alive[src] {
                continue;
            }
            for (&tgt, &k) in &diff[src] {
                if !alive[tgt] {
                    continue;
                }
                let key = (k, tgt, src);
                if pivot.map_or(true, |p| key < p) {
                    pivot = Some(key);
                }
            }
        }
        let Some((k, y, x)) = pivot else { break };

        // Clear row y: for every other source z hitting y, subtract the
        // right multiple of column x (the basis change z -> z + U^(m-k) x).
        let sources: Vec<(usize, u32)> = (0..n)
            .filter(|&z| alive[z] && z != x)
            .filter_map(|z| diff[z].get(&y).map(|&m| (z, m)))
            .collect();
        for (z, m) in sources {
            debug_assert!(m >= k);
            let shift = m - k;
            let col_x: Vec<(usize, u32)> =
                diff[x].iter().map(|(&t, &e)| (t, e)).collect();
            for (t, e) in col_x {
                if !alive[t] {
                    continue;
                }
                toggle_entry(&mut diff[z], t, e + shift);
            }
        }

        // Clear column x: for every other target w of d x, the basis
        // change y -> y + U^(m'-k) w adds U^(m'-k) * row_y to row_w; row
        // y now only holds the pivot, so this just cancels (w, x).
        let targets: Vec<usize> = diff[x]
            .keys()
            .copied()
            .filter(|&w| alive[w] && w != y)
            .collect();
        for w in targets {
            diff[x].remove(&w);
        }

        debug_assert!(
            (0..n).filter(|&z| alive[z]).all(|z| z == x || !diff[z].contains_key(&y)),
            "row not cleared"
        );
        // d^2 = 0 forces the row of x to be empty once y's row is clear.
        debug_assert!((0..n)
            .filter(|&z| alive[z])
            .all(|z| !diff[z].contains_key(&x)));
        debug_assert!(diff[y].keys().all(|t| !alive[*t]));

        if k >= 1 {
            let gy = &uc.generators[y];
            let gx = &uc.generators[x];
            parts.torsion.push(TorsionPart {
                exponent: k,
                alexander: gy.alexander(),
                maslov: gy.maslov(),
                partner_alexander: gx.alexander(),
                partner_maslov: gx.maslov(),
            });
        }
        alive[x] = false;
        alive[y] = false;
    }

    for (i, g) in uc.generators.iter().enumerate() {
        if alive[i] {
            parts.free.push((g.alexander(), g.maslov()));
        }
    }
    parts.free.sort_unstable();
    parts
        .torsion
        .sort_by_key(|t| (t.exponent, t.alexander, t.maslov));
    parts
}

fn toggle_entry(row: &mut BTreeMap<usize, u32>, tgt: usize, exp: u32) {
    match row.get(&tgt) {
        Some(&e) => {
            // Homogeneity forces equal exponents on the same matrix slot,
            // so the sum cancels mod 2.
            assert_eq!(e, exp, "conflicting exponents on one matrix entry");
            row.remove(&tgt);
        }
        None => {
            row.insert(tgt, exp);
        }
    }
}

/// Smith-style reduction packaged as the public summary.
pub fn u_module_homology(uc: &UnivariateComplex) -> UModuleSummary {
    UModuleSummary::from(&u_module_parts(uc))
}

/// Max torsion exponent of H(C/(V=0)); 0 when torsion-free.
pub fn torsion_order(c: &CfkComplex) -> u32 {
    u_module_homology(&reduce_mod_v(c)).torsion_order()
}

/// Homology ranks of the fully specialized complex, indexed by
/// (Alexander, Maslov). Absent keys mean zero.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct HatTable {
    pub ranks: BTreeMap<(i32, i32), u32>,
}

impl HatTable {
    pub fn total_rank(&self) -> u32 {
        self.ranks.values().sum()
    }

    /// Ranks summed per Alexander column over the inclusive span.
    pub fn column_ranks(&self, span: (i32, i32)) -> Vec<u32> {
        (span.0..=span.1)
            .map(|a| {
                self.ranks
                    .iter()
                    .filter(|((col, _), _)| *col == a)
                    .map(|(_, r)| *r)
                    .sum()
            })
            .collect()
    }
}

/// Homology of the U=V=0 specialization.
///
/// The surviving differential maps (A, M) to (A, M-1); the rank at each
/// spot is the F2 homology dimension there. For a valid reduced complex
/// the differential dies entirely and this is just the generator count
/// per bigrading.
pub fn hat_table(c: &CfkComplex) -> HatTable {
    // Unit-coefficient terms grouped into blocks (A, M) -> (A, M-1).
    let mut blocks: BTreeMap<(i32, i32), Vec<(usize, usize)>> = BTreeMap::new();
    for (src, chain) in c.differentials() {
        for (tgt, poly) in chain.iter() {
            if poly.terms().iter().any(|m| m.is_one()) {
                let g = c.generator(src);
                blocks
                    .entry((g.alexander(), g.maslov()))
                    .or_default()
                    .push((src, tgt));
            }
        }
    }
    let mut counts: BTreeMap<(i32, i32), u32> = BTreeMap::new();
    for g in c.generators() {
        *counts.entry((g.alexander(), g.maslov())).or_insert(0) += 1;
    }
    let mut rank_out: BTreeMap<(i32, i32), i64> = BTreeMap::new();
    for (key, edges) in &blocks {
        rank_out.insert(*key, f2_rank(edges));
    }
    let mut ranks = BTreeMap::new();
    for (&(a, m), &count) in &counts {
        let out = rank_out.get(&(a, m)).copied().unwrap_or(0);
        let into = rank_out.get(&(a, m + 1)).copied().unwrap_or(0);
        let h = count as i64 - out - into;
        if h > 0 {
            ranks.insert((a, m), h as u32);
        }
    }
    HatTable { ranks }
}

/// Rank over F2 of the incidence matrix given by (source, target) edges.
fn f2_rank(edges: &[(usize, usize)]) -> i64 {
    let mut cols: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut rows: BTreeMap<usize, usize> = BTreeMap::new();
    for &(src, tgt) in edges {
        let next = rows.len();
        let row = *rows.entry(tgt).or_insert(next);
        cols.entry(src).or_default().push(row);
    }
    let bits = rows.len().max(1);
    let vectors = cols.into_values().map(|rs| {
        let mut v = crate::gf2::BitVec::zeros(bits);
        for r in rs {
            v.toggle(r);
        }
        v
    });
    crate::gf2::rank(vectors) as i64
}
